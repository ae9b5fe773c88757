//! The generic induced-module construction reproduces a closed-form family
//! coefficient by coefficient.

use tgwa::induced::{compare_exact, oracle_for};
use tgwa::orbit::WeightPoint;
use tgwa::qwa::{build_module, CaseTag};
use tgwa::tgwa::QwaAlgebra;
use tgwa::{ParameterEnv, Result, Scalar};

fn main() -> Result<()> {
    let n = 20;
    let alg = QwaAlgebra::new(
        ParameterEnv::new(n),
        vec![Scalar::root(n, 4), Scalar::root(n, 14)],
        &[vec![Scalar::one(), Scalar::root(n, 1)]],
    )?;
    let pt = WeightPoint::n2(&alg, &Scalar::var("lam"))?;
    let family = build_module(CaseTag::N2Rank2, &pt, &alg, &Scalar::var("rho"), &Scalar::var("mu"), None)?;
    let induced = oracle_for(&family)?;
    match compare_exact(&family, &induced, None)? {
        None => println!("{}: closed form and induced action agree on all {} basis vectors", family.name, family.labels(None)?.len()),
        Some((l, v, why)) => println!("mismatch at {l} {v}: {why}"),
    }
    Ok(())
}
