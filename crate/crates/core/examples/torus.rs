//! Noncommutative tori. Decompose B_m and build explicit simple modules.

use tgwa::bm::{bm_presentation, satisfies_commutation, simple_torus_module, torus_decompose, TorusModuleSpec};
use tgwa::orbit::WeightPoint;
use tgwa::tgwa::{QwaAlgebra, UnitGroup};
use tgwa::{ParameterEnv, Result, Scalar};

fn main() -> Result<()> {
    let n = 20;
    let alg = QwaAlgebra::new(
        ParameterEnv::new(n),
        vec![Scalar::root(n, 4), Scalar::root(n, 14)],
        &[vec![Scalar::one(), Scalar::root(n, 1)]],
    )?;
    let pt = WeightPoint::n2(&alg, &Scalar::var("lam"))?;
    let bm = bm_presentation(&pt, &alg)?;
    println!("G_m basis {:?}, λ_12 = {}", bm.basis, bm.lambda[0][1]);
    let dec = torus_decompose(&bm.lambda, &alg.units())?;
    println!("factors {}, simple module dimension {}", dec.rank(), dec.module_dimension());

    // T_{ε6} ⊗ T_{ε6²} with symbolic (ρ, μ) per factor
    let th = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]];
    let lam: Vec<Vec<Scalar>> = th.iter().map(|r| r.iter().map(|&k| Scalar::root(6, k)).collect()).collect();
    let dec = torus_decompose(&lam, &UnitGroup::new(6))?;
    let spec = TorusModuleSpec {
        factors: vec![(Scalar::var("rho1"), Scalar::var("mu1")), (Scalar::var("rho2"), Scalar::var("mu2"))],
        laurent: vec![],
    };
    let gens = simple_torus_module(&dec, &spec)?;
    println!("T_ε6 ⊗ T_ε6²: {} generators of size {}", gens.len(), gens[0].nrows());
    println!("commutation relations hold: {}", satisfies_commutation(&gens, &lam));
    Ok(())
}
