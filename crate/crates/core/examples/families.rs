//! Every rank-two family: classify a point, build the module and print a
//! few action coefficients.

use tgwa::module::Label;
use tgwa::orbit::WeightPoint;
use tgwa::qwa::{build_module, classify_case};
use tgwa::tgwa::{Letter, QwaAlgebra};
use tgwa::{ParameterEnv, Result, Scalar};

fn main() -> Result<()> {
    let n = 12;
    let rou = QwaAlgebra::new(
        ParameterEnv::new(n),
        vec![Scalar::root(n, 4), Scalar::root(n, 3)],
        &[vec![Scalar::one(), Scalar::root(n, 2)]],
    )?;
    let generic = QwaAlgebra::new(
        ParameterEnv::new(1),
        vec![Scalar::var("q1"), Scalar::var("q2")],
        &[vec![Scalar::one(), Scalar::var("l12")]],
    )?;
    let lam = Scalar::var("lam");
    let points = [
        (&rou, WeightPoint::n0(&rou)?),
        (&rou, WeightPoint::n1(&rou, &Scalar::one())?),
        (&generic, WeightPoint::n1(&generic, &Scalar::one())?),
        (&generic, WeightPoint::n1(&generic, &generic.q[0].inv()?)?),
        (&rou, WeightPoint::n1(&rou, &lam)?),
        (&generic, WeightPoint::n1(&generic, &lam)?),
        (&generic, WeightPoint::n2(&generic, &lam)?),
        (&rou, WeightPoint::n2(&rou, &lam)?),
        (&rou, WeightPoint::new(vec![Scalar::var("a1"), Scalar::var("a2")])),
        (&generic, WeightPoint::new(vec![Scalar::from_int(2), Scalar::from_int(3)])),
    ];
    let (rho, mu) = (Scalar::var("rho"), Scalar::var("mu"));
    for (alg, pt) in points {
        let tag = classify_case(&pt, alg)?;
        let m = build_module(tag, &pt, alg, &rho, &mu, Some(2))?;
        let dim = m.dimension().map_or("infinite".to_string(), |d| d.to_string());
        println!("{tag}: dim {dim}, support {:?}", m.support);
        let v0 = Label::new(vec![0; 2], 0);
        for l in [Letter::X(0), Letter::X(1)] {
            match m.act(l, &v0)? {
                Some((t, c)) => println!("  {l} {v0} = {c} · {t}"),
                None => println!("  {l} {v0} = 0"),
            }
        }
    }
    Ok(())
}
