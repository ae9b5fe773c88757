//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons
//! are exact equalities in the scalar field; the only numeric limit is the
//! runtime budget of the relation suite.
#![allow(clippy::type_complexity, clippy::needless_range_loop)]

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use common::{generic, rng, rou, v};
use tgwa::bm::{satisfies_commutation, simple_torus_module, torus_decompose, TorusModuleSpec};
use tgwa::induced::{compare_exact, oracle_for};
use tgwa::lattice::{box_reps, normalize_rank2_basis, skew_normal_form, IntMatrix};
use tgwa::module::Support;
use tgwa::orbit::{g_m, g_tilde, sigma_action, WeightPoint};
use tgwa::qwa::constants::{
    nu_closed, nu_oracle, power_product_inv, power_product_inv_oracle, r_closed,
};
use tgwa::qwa::fixtures::{cyclic_n0_fixture, sign_flip_fixture};
use tgwa::qwa::{build_module, classify_case, CaseTag};
use tgwa::tgwa::{pair_at, QwaAlgebra, UnitGroup};
use tgwa::verify::{check_relations, verify, InnerBreak, Simplicity, VerifyOptions};
use tgwa::{ParameterEnv, Scalar};

/// Exact equality everywhere: no scalar tolerance.
const SCALAR_TOLERANCE: u32 = 0;
const RELATION_BUDGET: Duration = Duration::from_secs(60);
const RELATION_WINDOW: i64 = 4;
const ORACLE_WINDOW: i64 = 3;
const SKEW_SAMPLES: usize = 100;
const SIGMA_SAMPLES: usize = 200;
const PAIRING_BOX: i64 = 6;
const R_BOX: i64 = 4;

type Outcome = Result<String, String>;

fn fail<E: std::fmt::Debug>(what: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{what}: {e:?}")
}

/// q_1 = ε₃, q_2 = ε₄, λ_12 = ε₆ inside ℚ(ε₁₂).
fn small() -> QwaAlgebra {
    rou(12, 4, 3, 2)
}

fn mixed_q() -> QwaAlgebra {
    QwaAlgebra::new(
        ParameterEnv::new(1),
        vec![v("x"), v("x").pow(2).unwrap().neg()],
        &[vec![Scalar::one(), v("l12")]],
    )
    .unwrap()
}

/// q_1 = ε₂₀⁴, q_2 = ε₂₀¹⁴, λ_12 = ε₂₀: G_m = ℤ(2,−2) ⊕ ℤ(3,2).
fn box_algebra() -> QwaAlgebra {
    rou(20, 4, 14, 1)
}

fn relation_instances() -> Vec<(CaseTag, QwaAlgebra, WeightPoint)> {
    let a = small();
    let g = generic();
    let m = mixed_q();
    let lam = v("lam");
    let q1inv = g.q[0].inv().unwrap();
    vec![
        (CaseTag::N0, a.clone(), WeightPoint::n0(&a).unwrap()),
        (CaseTag::N1BreakRou, a.clone(), WeightPoint::n1(&a, &Scalar::one()).unwrap()),
        (CaseTag::N1BreakHighest, g.clone(), WeightPoint::n1(&g, &Scalar::one()).unwrap()),
        (CaseTag::N1BreakLowest, g.clone(), WeightPoint::n1(&g, &q1inv).unwrap()),
        (CaseTag::N1NobreakRou, a.clone(), WeightPoint::n1(&a, &lam).unwrap()),
        (CaseTag::N1NobreakGeneric, g.clone(), WeightPoint::n1(&g, &lam).unwrap()),
        (CaseTag::N2Rank0, g.clone(), WeightPoint::n2(&g, &lam).unwrap()),
        (CaseTag::N2Rank1, m.clone(), WeightPoint::n2(&m, &lam).unwrap()),
        (CaseTag::N2Rank2, a.clone(), WeightPoint::n2(&a, &lam).unwrap()),
        (CaseTag::GenericBothRou, a.clone(), WeightPoint::new(vec![v("a1"), v("a2")])),
        (CaseTag::GenericOther, g.clone(), WeightPoint::new(vec![Scalar::from_int(2), Scalar::from_int(3)])),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (tag, alg, pt) in relation_instances() {
        let found = classify_case(&pt, &alg).map_err(fail("classify"))?;
        if found != tag {
            return Err(format!("instance for {tag} classifies as {found}"));
        }
        let m = build_module(tag, &pt, &alg, &v("rho"), &v("mu"), Some(RELATION_WINDOW)).map_err(fail("build"))?;
        let window = if m.is_finite() { None } else { Some(RELATION_WINDOW) };
        let failures = check_relations(&m, window).map_err(fail("relations"))?;
        if let Some(f) = failures.first() {
            return Err(format!("{tag}: {} failures, first {f:?}", failures.len()));
        }
        checked += m.labels(window).map_err(fail("labels"))?.len();
    }
    let took = start.elapsed();
    if took > RELATION_BUDGET {
        return Err(format!("took {took:?}, budget {RELATION_BUDGET:?}"));
    }
    Ok(format!("11 families, {checked} basis vectors, {took:.1?}"))
}

fn criterion_2() -> Outcome {
    let a = small();
    let b = box_algebra();
    let m = mixed_q();
    let lam = v("lam");
    let cases = vec![
        (CaseTag::N0, a.clone(), WeightPoint::n0(&a).unwrap()),
        (CaseTag::N1BreakRou, a.clone(), WeightPoint::n1(&a, &Scalar::one()).unwrap()),
        (CaseTag::N1NobreakRou, a.clone(), WeightPoint::n1(&a, &lam).unwrap()),
        (CaseTag::N2Rank1, m.clone(), WeightPoint::n2(&m, &lam).unwrap()),
        (CaseTag::N2Rank2, a.clone(), WeightPoint::n2(&a, &lam).unwrap()),
        (CaseTag::N2Rank2, b.clone(), WeightPoint::n2(&b, &lam).unwrap()),
        (CaseTag::GenericBothRou, a.clone(), WeightPoint::new(vec![v("a1"), v("a2")])),
    ];
    let n = cases.len();
    for (tag, alg, pt) in cases {
        let fam = build_module(tag, &pt, &alg, &v("rho"), &v("mu"), Some(ORACLE_WINDOW)).map_err(fail("build"))?;
        let ind = oracle_for(&fam).map_err(fail("oracle"))?;
        if let Some(d) = compare_exact(&fam, &ind, Some(ORACLE_WINDOW)).map_err(fail("compare"))? {
            return Err(format!("{tag}: {d:?}"));
        }
    }
    Ok(format!("{n} instances agree coefficient by coefficient on window {ORACLE_WINDOW}"))
}

/// Whether a and b form a basis of the rank-two lattice.
fn spans(l: &tgwa::lattice::Lattice, a: (i64, i64), b: (i64, i64)) -> Result<bool, String> {
    let (x, y) = normalize_rank2_basis(l).map_err(fail("basis"))?;
    let det = |p: (i64, i64), q: (i64, i64)| (p.0 * q.1 - q.0 * p.1).abs();
    Ok(l.contains(&[a.0, a.1]) && l.contains(&[b.0, b.1]) && det(a, b) == det(x, y))
}

fn criterion_3() -> Outcome {
    let (a, b) = ((2, -2), (3, 2));
    let r = box_reps(a, b).map_err(fail("box"))?;
    if (r.d1, r.d2, r.s) != (5, 2, 2) {
        return Err(format!("d1, d2, s = {}, {}, {}", r.d1, r.d2, r.s));
    }
    let det = a.0 * b.1 - b.0 * a.1;
    let alg = box_algebra();
    let pt = WeightPoint::n2(&alg, &v("lam")).unwrap();
    let gm = g_m(&pt, &alg).map_err(fail("g_m"))?;
    if !spans(&gm, a, b)? {
        return Err(format!("(2,-2), (3,2) is not a basis of G_m = {:?}", gm.rows_i64()));
    }
    let (ga, gb) = normalize_rank2_basis(&gm).map_err(fail("basis"))?;
    let r2 = box_reps(ga, gb).map_err(fail("box"))?;
    if (r2.d1, r2.d2, r2.s) != (r.d1, r.d2, r.s) {
        return Err(format!("normalized basis {ga:?}, {gb:?} gives {r2:?}"));
    }
    let m = build_module(CaseTag::N2Rank2, &pt, &alg, &v("rho"), &v("mu"), None).map_err(fail("build"))?;
    let size = m.support.enumerate(None).map_err(fail("support"))?.len() as i64;
    if !matches!(m.support, Support::Box { .. }) || size != det || det != r.d1 * r.d2 {
        return Err(format!("|S| = {size}, det = {det}"));
    }
    Ok(format!("d1=5 d2=2 s=2, |S| = {size} = d1·d2 = a1b2 − b1a2"))
}

/// Rank-two points n_λ^(2) with a chosen basis of G_m (None: normalized).
fn rank2_instances() -> Vec<(&'static str, QwaAlgebra, Option<((i64, i64), (i64, i64))>)> {
    vec![
        ("box (2,-2),(3,2)", box_algebra(), Some(((2, -2), (3, 2)))),
        ("N=12", small(), None),
        ("q1=q2, N=6", rou(6, 1, 1, 2), None),
        ("N=10", rou(10, 2, 5, 3), None),
    ]
}

fn k2_basis(
    alg: &QwaAlgebra,
    pt: &WeightPoint,
    chosen: Option<((i64, i64), (i64, i64))>,
) -> Result<((i64, i64), (i64, i64)), String> {
    let l = g_m(pt, alg).map_err(fail("g_m"))?;
    if l.rank() != 2 {
        return Err(format!("G_m has rank {}", l.rank()));
    }
    match chosen {
        Some((a, b)) if spans(&l, a, b)? => Ok((a, b)),
        Some(ab) => Err(format!("{ab:?} is not a basis of G_m")),
        None => normalize_rank2_basis(&l).map_err(fail("basis")),
    }
}

fn criterion_4() -> Outcome {
    let mut done = Vec::new();
    for (name, alg, chosen) in rank2_instances() {
        let pt = WeightPoint::n2(&alg, &v("lam")).unwrap();
        let (a, b) = k2_basis(&alg, &pt, chosen)?;
        let r = box_reps(a, b).map_err(fail("box"))?;
        let lam = &pt.alpha[1];
        let (p, q) = (b.1 / r.d2, a.1 / r.d2);
        for (label, x1, x2) in [("C1", p, -q), ("C2", r.a2p, r.b2p)] {
            let closed = power_product_inv(a, x1, b, x2, lam, &alg).map_err(fail("closed"))?;
            let oracle = power_product_inv_oracle(a, x1, b, x2, &pt.alpha, &alg).map_err(fail("oracle"))?;
            if closed != oracle {
                return Err(format!("{name}: {label}⁻¹ closed {closed} ≠ oracle {oracle}"));
            }
        }
        done.push(format!("{name} a={a:?} b={b:?}"));
    }
    Ok(format!("C1, C2 match on {}", done.join("; ")))
}

fn random_skew(r: &mut impl Rng) -> IntMatrix {
    let k = r.gen_range(2..=6);
    let mut rows = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let x = r.gen_range(-9..=9);
            rows[i][j] = x;
            rows[j][i] = -x;
        }
    }
    IntMatrix::from_i64(&rows, k)
}

fn criterion_5() -> Outcome {
    let mut r = rng();
    for n in 0..SKEW_SAMPLES {
        let theta = random_skew(&mut r);
        let snf = skew_normal_form(&theta).map_err(fail("snf"))?;
        let u = &snf.u;
        if u.det().abs() != BigInt::one() {
            return Err(format!("sample {n}: det U = {}", u.det()));
        }
        if u.transpose().mul(&theta).mul(u) != snf.normal_matrix() {
            return Err(format!("sample {n}: UᵀΘU is not the block form"));
        }
        for w in snf.thetas.windows(2) {
            if w[0].is_zero() || !(&w[1] % &w[0]).is_zero() {
                return Err(format!("sample {n}: {} does not divide {}", w[0], w[1]));
            }
        }
        if snf.thetas.iter().any(|t| !t.is_positive()) || 2 * snf.thetas.len() + snf.laurent_rank != theta.nrows() {
            return Err(format!("sample {n}: bad invariants {:?}", snf.thetas));
        }
    }
    Ok(format!("{SKEW_SAMPLES} seeded matrices of size 2..6"))
}

fn random_scalar(r: &mut impl Rng, n: u32) -> Scalar {
    match r.gen_range(0..4) {
        0 => Scalar::from_ratio(r.gen_range(-7..=7), r.gen_range(1..=5)),
        1 => Scalar::root(n, r.gen_range(0..n as i64)).mul(&Scalar::from_int(r.gen_range(-3..=3))),
        2 => v("x").add(&Scalar::from_int(r.gen_range(-2..=2))),
        _ => Scalar::zero(),
    }
}

fn criterion_6() -> Outcome {
    let mut r = rng();
    let algs = [small(), generic(), box_algebra()];
    for n in 0..SIGMA_SAMPLES {
        let alg = &algs[n % algs.len()];
        let g = vec![r.gen_range(-5..=5), r.gen_range(-5..=5)];
        let pt = WeightPoint::new((0..2).map(|_| random_scalar(&mut r, alg.env.n)).collect());
        let closed = sigma_action(&g, &pt, alg).map_err(fail("sigma_action"))?;
        let iterated = alg.presentation.sigma_point(&g, &pt.alpha);
        if closed.alpha != iterated {
            return Err(format!("g={g:?} at {:?}: {:?} ≠ {iterated:?}", pt.alpha, closed.alpha));
        }
    }
    Ok(format!("{SIGMA_SAMPLES} seeded (g, point) pairs in [−5,5]²"))
}

fn criterion_7() -> Outcome {
    let a = small();
    let g = generic();
    let points = [
        ("n0", a.clone(), WeightPoint::n0(&a).unwrap()),
        ("n1 with o1=3", a.clone(), WeightPoint::n1(&a, &Scalar::one()).unwrap()),
        ("generic", g.clone(), WeightPoint::new(vec![v("a1"), v("a2")])),
    ];
    for (name, alg, pt) in &points {
        let gt = g_tilde(pt, alg).map_err(fail("g_tilde"))?;
        for i in -PAIRING_BOX..=PAIRING_BOX {
            for j in -PAIRING_BOX..=PAIRING_BOX {
                let deg = [i, j];
                let by_words = !pair_at(&deg, &pt.alpha, &alg.presentation).map_err(fail("pair"))?.is_zero();
                if gt.contains(&deg) != by_words {
                    return Err(format!("{name}: g={deg:?} intervals say {}, pairing says {by_words}", gt.contains(&deg)));
                }
            }
        }
    }
    Ok(format!("3 points on [−{PAIRING_BOX},{PAIRING_BOX}]²"))
}

fn criterion_8() -> Outcome {
    let mut done = Vec::new();
    for (name, alg, chosen) in rank2_instances() {
        let pt = WeightPoint::n2(&alg, &v("lam")).unwrap();
        let (a, b) = k2_basis(&alg, &pt, chosen)?;
        let closed = nu_closed(a, b, &alg).map_err(fail("closed"))?;
        let oracle = nu_oracle(a, b, &pt.alpha, &alg).map_err(fail("oracle"))?;
        if closed != oracle {
            return Err(format!("{name}: ν closed {closed} ≠ commutation scalar {oracle}"));
        }
        if name.starts_with("box") {
            let l = &alg.lambda[0][1];
            let want = l.pow(10).unwrap().mul(&alg.q[0].pow(4).unwrap()).mul(&alg.q[1].pow(-4).unwrap());
            if closed != want {
                return Err(format!("box instance: ν = {closed}, expected λ12^10 q1^4 q2^-4 = {want}"));
            }
        }
        done.push(format!("{name}: ν = {closed}"));
    }
    Ok(done.join("; "))
}

fn criterion_9() -> Outcome {
    let cyc = cyclic_n0_fixture().map_err(fail("cyclic"))?;
    let rep = verify(&cyc, &VerifyOptions::default()).map_err(fail("verify cyclic"))?;
    if !rep.relation_failures.is_empty() || rep.simplicity != Simplicity::Simple {
        return Err(format!("cyclic fixture: relations {:?}, {:?}", rep.relation_failures, rep.simplicity));
    }
    if !rep.proper_inner_breaks.iter().any(|b| b.g == vec![0, 1]) || rep.passes() {
        return Err("cyclic fixture: no proper inner break at degree (0,1)".into());
    }
    let sf = sign_flip_fixture().map_err(fail("sign flip"))?;
    let rep = verify(&sf, &VerifyOptions::default()).map_err(fail("verify sign flip"))?;
    if !rep.proper_inner_breaks.is_empty() || !rep.relation_failures.is_empty() {
        return Err(format!("sign flip fixture: {:?}", rep.proper_inner_breaks));
    }
    let want = InnerBreak { degree: vec![0, 0], point: vec!["0".into(), "-1".into()], direction: 1, mirror: false };
    if !rep.inner_breaks.contains(&want) {
        return Err(format!("sign flip fixture: inner breaks {:?}", rep.inner_breaks));
    }
    Ok("cyclic: proper inner break at (0,1); sign flip: NPIB holds, inner break at (0,−1)".into())
}

fn criterion_10() -> Outcome {
    let n = 6;
    let th = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]];
    let lam: Vec<Vec<Scalar>> = th.iter().map(|r| r.iter().map(|&k| Scalar::root(n, k)).collect()).collect();
    let dec = torus_decompose(&lam, &UnitGroup::new(n)).map_err(fail("decompose"))?;
    let spec = TorusModuleSpec {
        factors: vec![(v("rho1"), v("mu1")), (v("rho2"), v("mu2"))],
        laurent: vec![],
    };
    let gens = simple_torus_module(&dec, &spec).map_err(fail("module"))?;
    let dim = gens[0].nrows();
    let orders: Vec<u32> = (0..dec.thetas.len()).map(|i| dec.factor_order(i)).collect();
    if dim != 18 || dec.module_dimension() != 18 || orders != vec![6, 3] {
        return Err(format!("dim {dim}, factor orders {orders:?}"));
    }
    if !satisfies_commutation(&gens, &lam) {
        return Err("commutation relations fail".into());
    }
    Ok("T_ε6 ⊗ T_ε6²: 4 generators of size 18 = 6·3".into())
}

fn criterion_11() -> Outcome {
    let mut count = 0;
    for alg in [generic(), box_algebra()] {
        let pt = WeightPoint::n2(&alg, &v("lam")).unwrap();
        for i in -R_BOX..=R_BOX {
            for j in -R_BOX..=R_BOX {
                let g = [i, j];
                let r = r_closed(&g, &pt.alpha[1], &alg).map_err(fail("r"))?;
                let p = pair_at(&g, &pt.alpha, &alg.presentation).map_err(fail("pair"))?;
                if !r.mul(&p).is_one() {
                    return Err(format!("g={g:?}: r_g·pair = {}", r.mul(&p)));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} degrees over 2 algebras"))
}

#[test]
fn acceptance() {
    assert_eq!(SCALAR_TOLERANCE, 0);
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "relation suite", criterion_1),
        (2, "oracle equivalence", criterion_2),
        (3, "box instance", criterion_3),
        (4, "C1/C2 certification", criterion_4),
        (5, "skew normal form", criterion_5),
        (6, "closed-form orbit", criterion_6),
        (7, "G̃ and pairing", criterion_7),
        (8, "ν certification", criterion_8),
        (9, "fixtures", criterion_9),
        (10, "torus modules", criterion_10),
        (11, "r_g pairing", criterion_11),
    ];
    println!("seed {}", common::seed());
    let mut failed = Vec::new();
    for (n, name, f) in criteria {
        let start = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {n:>2} PASS {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(e) => {
                println!("criterion {n:>2} FAIL {name}: {e}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
