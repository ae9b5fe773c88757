//! The verifier on the two built-in fixtures and on a family module.

use tgwa::orbit::WeightPoint;
use tgwa::qwa::fixtures::{cyclic_n0_fixture, sign_flip_fixture};
use tgwa::qwa::{build_module, CaseTag};
use tgwa::tgwa::QwaAlgebra;
use tgwa::verify::{verify, VerifyOptions};
use tgwa::{ParameterEnv, Result, Scalar};

fn main() -> Result<()> {
    for m in [cyclic_n0_fixture()?, sign_flip_fixture()?] {
        print!("{}", verify(&m, &VerifyOptions::default())?.to_text());
        println!();
    }
    let n = 12;
    let alg = QwaAlgebra::new(
        ParameterEnv::new(n),
        vec![Scalar::root(n, 4), Scalar::root(n, 3)],
        &[vec![Scalar::one(), Scalar::root(n, 2)]],
    )?;
    let pt = WeightPoint::n1(&alg, &Scalar::var("lam"))?;
    let m = build_module(CaseTag::N1NobreakRou, &pt, &alg, &Scalar::var("rho"), &Scalar::var("mu"), None)?;
    print!("{}", verify(&m, &VerifyOptions { window: Some(3), npib_radius: None })?.to_text());
    Ok(())
}
