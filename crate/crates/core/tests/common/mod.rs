//! Shared instances for the integration tests: one per family.
#![allow(dead_code)]

use tgwa::orbit::WeightPoint;
use tgwa::qwa::CaseTag;
use tgwa::tgwa::QwaAlgebra;
use tgwa::{ParameterEnv, Scalar};

pub fn rou(n: u32, q1: i64, q2: i64, l: i64) -> QwaAlgebra {
    QwaAlgebra::new(
        ParameterEnv::new(n),
        vec![Scalar::root(n, q1), Scalar::root(n, q2)],
        &[vec![Scalar::one(), Scalar::root(n, l)]],
    )
    .unwrap()
}

pub fn generic() -> QwaAlgebra {
    QwaAlgebra::new(
        ParameterEnv::new(1),
        vec![Scalar::var("q1"), Scalar::var("q2")],
        &[vec![Scalar::one(), Scalar::var("l12")]],
    )
    .unwrap()
}

/// Seed for randomized checks: `TGWA_SEED` when set, else a fixed value.
pub fn seed() -> u64 {
    std::env::var("TGWA_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0x7467_7761)
}

pub fn rng() -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed())
}

pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Default::default()
    }
}

pub fn v(s: &str) -> Scalar {
    Scalar::var(s)
}

pub fn instances() -> Vec<(CaseTag, QwaAlgebra, WeightPoint)> {
    let a12 = rou(12, 4, 3, 2);
    let g = generic();
    let mixed_q = QwaAlgebra::new(
        ParameterEnv::new(1),
        vec![v("x"), v("x").pow(2).unwrap().neg()],
        &[vec![Scalar::one(), v("l12")]],
    )
    .unwrap();
    let box20 = rou(20, 4, 14, 1);
    let q1inv = g.q[0].inv().unwrap();
    vec![
        (CaseTag::N0, a12.clone(), WeightPoint::n0(&a12).unwrap()),
        (CaseTag::N1BreakRou, a12.clone(), WeightPoint::n1(&a12, &Scalar::one()).unwrap()),
        (CaseTag::N1BreakHighest, g.clone(), WeightPoint::n1(&g, &Scalar::one()).unwrap()),
        (CaseTag::N1BreakLowest, g.clone(), WeightPoint::n1(&g, &q1inv).unwrap()),
        (CaseTag::N1NobreakRou, a12.clone(), WeightPoint::n1(&a12, &v("lam")).unwrap()),
        (CaseTag::N1NobreakGeneric, g.clone(), WeightPoint::n1(&g, &v("lam")).unwrap()),
        (CaseTag::N2Rank0, g.clone(), WeightPoint::n2(&g, &v("lam")).unwrap()),
        (CaseTag::N2Rank1, mixed_q.clone(), WeightPoint::n2(&mixed_q, &v("lam")).unwrap()),
        (CaseTag::N2Rank2, box20.clone(), WeightPoint::n2(&box20, &v("lam")).unwrap()),
        (CaseTag::GenericBothRou, a12.clone(), WeightPoint::new(vec![v("a1"), v("a2")])),
        (CaseTag::GenericOther, g.clone(), WeightPoint::new(vec![Scalar::from_int(2), Scalar::from_int(3)])),
        (CaseTag::GenericOther, a12.clone(), WeightPoint::new(vec![Scalar::zero(), v("a2")])),
    ]
}

