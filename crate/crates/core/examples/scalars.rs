//! Exact arithmetic in ℚ(ε_N)(parameters). Parsing, q-integers and
//! substitution into rational functions.

use std::collections::BTreeMap;

use tgwa::{ParameterEnv, Result, Scalar};

fn main() -> Result<()> {
    let n = 12;
    let e = Scalar::root(n, 1);
    println!("e^12 = {}", e.pow(12)?);
    println!("e^6 = {}", e.pow(6)?);
    println!("order of e^4: {:?}", e.pow(4)?.root_of_unity_order()?);

    let q = Scalar::var("q");
    println!("[5]_q = {}", Scalar::q_integer(5, &q)?);
    println!("[-2]_q = {}", Scalar::q_integer(-2, &q)?);

    let f = Scalar::parse("(1 - lam)/(1 - q1)", n)?;
    let g = Scalar::parse("q1^2 - 1", n)?;
    println!("f·g = {}", f.mul(&g));

    let at = BTreeMap::from([("q1".to_string(), Scalar::root(n, 4)), ("lam".to_string(), Scalar::from_int(3))]);
    println!("f at q1 = e^4, lam = 3: {}", f.substitute(&at)?);

    let mut env = ParameterEnv::new(n);
    env.bind("q1", "e^4")?;
    env.bind("x", "x")?;
    env.bind("l12", "-e*x^2")?;
    println!("l12^3 in the session: {}", env.parse("l12^3")?);
    Ok(())
}
