//! Weight diagrams in DOT for a finite box and an infinite strip.
//! Pipe into `dot -Tsvg` to draw them.

use tgwa::dot::emit_dot;
use tgwa::orbit::WeightPoint;
use tgwa::qwa::{build_module, CaseTag};
use tgwa::tgwa::QwaAlgebra;
use tgwa::{ParameterEnv, Result, Scalar};

fn main() -> Result<()> {
    let (rho, mu, lam) = (Scalar::var("rho"), Scalar::var("mu"), Scalar::var("lam"));
    let n = 20;
    let boxed = QwaAlgebra::new(
        ParameterEnv::new(n),
        vec![Scalar::root(n, 4), Scalar::root(n, 14)],
        &[vec![Scalar::one(), Scalar::root(n, 1)]],
    )?;
    let pt = WeightPoint::n2(&boxed, &lam)?;
    print!("{}", emit_dot(&build_module(CaseTag::N2Rank2, &pt, &boxed, &rho, &mu, None)?, None)?);

    let x = Scalar::var("x");
    let strip = QwaAlgebra::new(ParameterEnv::new(1), vec![x.clone(), x.pow(2)?.neg()], &[vec![Scalar::one(), Scalar::var("l12")]])?;
    let pt = WeightPoint::n2(&strip, &lam)?;
    print!("{}", emit_dot(&build_module(CaseTag::N2Rank1, &pt, &strip, &rho, &mu, Some(2))?, Some(2))?);
    Ok(())
}
