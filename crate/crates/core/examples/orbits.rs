//! Orbit data of the standard weight points, down to the group G_m.

use tgwa::orbit::{g_m, g_tilde, orbit_report, sigma_action, WeightPoint};
use tgwa::tgwa::QwaAlgebra;
use tgwa::{ParameterEnv, Result, Scalar};

fn main() -> Result<()> {
    let n = 12;
    let alg = QwaAlgebra::new(
        ParameterEnv::new(n),
        vec![Scalar::root(n, 4), Scalar::root(n, 3)],
        &[vec![Scalar::one(), Scalar::root(n, 2)]],
    )?;
    let lam = Scalar::var("lam");
    for (name, pt) in [
        ("n0", WeightPoint::n0(&alg)?),
        ("n1(1)", WeightPoint::n1(&alg, &Scalar::one())?),
        ("n2(lam)", WeightPoint::n2(&alg, &lam)?),
    ] {
        let rep = orbit_report(&pt, &alg)?;
        println!("{name}: gamma = {:?}", rep.gamma.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        println!("  breaks {:?}", rep.breaks);
        println!("  isotropy {:?}", rep.isotropy.rows_i64());
        let gt = g_tilde(&pt, &alg)?;
        println!("  G̃ intervals lo {:?} hi {:?}", gt.lo, gt.hi);
        println!("  G_m {:?}", g_m(&pt, &alg)?.rows_i64());
    }
    let pt = WeightPoint::new(vec![Scalar::var("a1"), Scalar::var("a2")]);
    let moved = sigma_action(&[2, -1], &pt, &alg)?;
    println!("σ^(2,-1)(a1, a2) = {:?}", moved.alpha.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    Ok(())
}
