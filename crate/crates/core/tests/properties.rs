//! Randomized invariants. Seeds come from `TGWA_SEED` (see common).

mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::{generic, proptest_config, rou, v};
use tgwa::bm::{joint_eigenvalues_distinct, satisfies_commutation, simple_torus_module, torus_decompose, transformed_generators, TorusModuleSpec};
use tgwa::lattice::{box_reps, hnf, intersect, IntMatrix, Lattice};
use tgwa::module::{Label, WeightModuleSpec};
use tgwa::orbit::{isotropy, sigma_action, CcrOrbit, WeightPoint};
use tgwa::qwa::{build_module, CaseTag};
use tgwa::tgwa::{normalize, pair_at, reduce_word, Letter, QwaAlgebra, UnitGroup, Word};
use tgwa::Scalar;

const N: u32 = 12;

/// Σ c·ε^k·x^a·y^b over a few terms.
fn poly_scalar() -> impl Strategy<Value = Scalar> {
    poly_in(2)
}

fn poly_in(y_deg: i64) -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0i64..N as i64, 0i64..3, 0i64..y_deg), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, k, a, b)| {
            let t = Scalar::from_int(c)
                .mul(&Scalar::root(N, k))
                .mul(&v("x").pow(a).unwrap())
                .mul(&v("y").pow(b).unwrap());
            acc.add(&t)
        })
    })
}

// denominators stay univariate so triple products keep small gcds
fn scalar() -> impl Strategy<Value = Scalar> {
    (poly_scalar(), poly_in(1)).prop_map(|(n, d)| if d.is_zero() { n } else { n.div(&d).unwrap() })
}

fn int_rows(n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, n), 1..=max_rows)
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word(ls.into_iter().map(|(i, x)| if x { Letter::X(i) } else { Letter::Y(i) }).collect()))
}

fn degree2() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 2)
}

proptest! {
    #![proptest_config(proptest_config(64))]

    #[test]
    fn ring_axioms(a in poly_scalar(), b in poly_scalar(), c in poly_scalar()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn field_operations(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn substitution_is_multiplicative(a in scalar(), b in scalar(), k in 0i64..N as i64) {
        let s = BTreeMap::from([("x".to_string(), Scalar::root(N, k).add(&Scalar::from_int(2))), ("y".to_string(), v("z"))]);
        if let (Ok(sa), Ok(sb), Ok(sab)) = (a.substitute(&s), b.substitute(&s), a.mul(&b).substitute(&s)) {
            prop_assert_eq!(sab, sa.mul(&sb));
        }
    }

    #[test]
    fn root_order_is_minimal(k in 0i64..60, sign in any::<bool>()) {
        let s = Scalar::root(60, k);
        let s = if sign { s.neg() } else { s };
        let d = s.root_of_unity_order().unwrap().unwrap() as i64;
        prop_assert!(s.pow(d).unwrap().is_one());
        for e in 1..d {
            prop_assert!(!s.pow(e).unwrap().is_one());
        }
    }

    #[test]
    fn hnf_is_canonical(rows in int_rows(3, 4), seed in any::<u64>()) {
        let l = hnf(&IntMatrix::from_i64(&rows, 3));
        prop_assert_eq!(hnf(&l.basis), l.clone());
        let mut shuffled = rows.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if k > 1 {
            shuffled.swap(0, (seed as usize / 7) % k);
        }
        prop_assert_eq!(hnf(&IntMatrix::from_i64(&shuffled, 3)), l);
    }

    #[test]
    fn intersection_is_largest_common_sublattice(a in int_rows(2, 2), b in int_rows(2, 2)) {
        let (la, lb) = (Lattice::from_rows(&a, 2), Lattice::from_rows(&b, 2));
        let c = intersect(&la, &lb);
        for r in c.rows_i64() {
            prop_assert!(la.contains(&r) && lb.contains(&r));
        }
        for i in -8..=8 {
            for j in -8..=8 {
                let p = [i, j];
                prop_assert_eq!(c.contains(&p), la.contains(&p) && lb.contains(&p));
            }
        }
    }

    #[test]
    fn box_points_form_a_transversal(a0 in 0i64..5, a1 in -5i64..=5, b0 in 0i64..5, b1 in -5i64..=5) {
        prop_assume!(a0 * b1 - b0 * a1 > 0);
        let reps = box_reps((a0, a1), (b0, b1)).unwrap();
        let lat = Lattice::from_rows(&[vec![a0, a1], vec![b0, b1]], 2);
        for i in -10..=10 {
            for j in -10..=10 {
                let (x, y) = reps.reduce((i, j));
                prop_assert!((0..reps.d1).contains(&x) && (0..reps.d2).contains(&y));
                prop_assert!(lat.contains(&[i - x, j - y]));
            }
        }
        for x in 0..reps.d1 * reps.d2 {
            for y in x + 1..reps.d1 * reps.d2 {
                let (p, q) = ((x / reps.d2, x % reps.d2), (y / reps.d2, y % reps.d2));
                prop_assert!(!lat.contains(&[p.0 - q.0, p.1 - q.1]));
            }
        }
    }

    #[test]
    fn sigma_action_composes(g in degree2(), h in degree2(), a in poly_scalar(), b in poly_scalar()) {
        let alg = rou(12, 4, 3, 2);
        let pt = WeightPoint::new(vec![a, b]);
        let gh: Vec<i64> = g.iter().zip(&h).map(|(x, y)| x + y).collect();
        let lhs = sigma_action(&g, &sigma_action(&h, &pt, &alg).unwrap(), &alg).unwrap();
        prop_assert_eq!(lhs, sigma_action(&gh, &pt, &alg).unwrap());
    }

    #[test]
    fn degrees_add(u in word(2, 4), w in word(2, 4)) {
        let p = generic().presentation;
        let nu = normalize(&u, &p).unwrap();
        let nw = normalize(&w, &p).unwrap();
        let nuw = normalize(&u.concat(&w), &p).unwrap();
        let sum: Vec<i64> = nu.degree.iter().zip(&nw.degree).map(|(x, y)| x + y).collect();
        prop_assert_eq!(nuw.degree, sum);
    }

    #[test]
    fn normal_form_matches_module_action(w in word(2, 6), i in 0i64..3, j in 0i64..4) {
        // on a module, coeff·a_g·r(t) acts on v by coeff·r(point of v)·a_g
        let m = both_rou_module();
        let v0 = Label::new(vec![i, j], 0);
        let cw = normalize(&w, &m.presentation).unwrap();
        let direct = m.apply_word(&w.0, &v0).unwrap();
        let via = m.apply_word(&Word::canonical(&cw.degree).0, &v0).unwrap();
        let scale = cw.eval_at(&m.point(&v0).alpha);
        match (direct, via) {
            (Some((t1, c1)), Some((t2, c2))) => {
                prop_assert_eq!(t1, t2);
                prop_assert_eq!(c1, c2.mul(&scale));
            }
            (None, Some((_, c2))) => prop_assert!(c2.mul(&scale).is_zero()),
            (d, None) => prop_assert!(d.is_none()),
        }
    }

    #[test]
    fn reduced_word_matches_module_action(w in word(2, 6), i in 0i64..3, j in 0i64..4) {
        // w = coeff · reduced · r, so w·v = coeff · r(point of v) · reduced·v
        let m = both_rou_module();
        let v0 = Label::new(vec![i, j], 0);
        let (reduced, r, coeff) = reduce_word(&w, &m.presentation);
        let scale = coeff.mul(&r.eval(&m.point(&v0).alpha));
        let direct = m.apply_word(&w.0, &v0).unwrap();
        let via = m.apply_word(&reduced.0, &v0).unwrap();
        match (direct, via) {
            (Some((t1, c1)), Some((t2, c2))) => {
                prop_assert_eq!(t1, t2);
                prop_assert_eq!(c1, c2.mul(&scale));
            }
            (None, Some((_, c2))) => prop_assert!(c2.mul(&scale).is_zero()),
            (d, None) => prop_assert!(d.is_none()),
        }
    }

    #[test]
    fn normalize_is_multiplicative(u in word(2, 4), w in word(2, 4)) {
        // at a generic point α: N(uw)(α) = N(u)(σ^h α) · N(w)(α) · N(a_g a_h)(α)
        let p = rou(12, 4, 3, 2).presentation;
        let alpha = [v("a1"), v("a2")];
        let (nu, nw) = (normalize(&u, &p).unwrap(), normalize(&w, &p).unwrap());
        let moved = p.sigma_point(&nw.degree, &alpha);
        let ag_ah = normalize(&Word::canonical(&nu.degree).concat(&Word::canonical(&nw.degree)), &p).unwrap();
        let rhs = nu.eval_at(&moved).mul(&nw.eval_at(&alpha)).mul(&ag_ah.eval_at(&alpha));
        prop_assert_eq!(normalize(&u.concat(&w), &p).unwrap().eval_at(&alpha), rhs);
    }

    #[test]
    fn torus_modules_are_simple(t01 in 0i64..12, t02 in 0i64..12, t12 in 0i64..12, three in any::<bool>()) {
        let n = 12;
        let k = if three { 3 } else { 2 };
        let th = [[0, t01, t02], [-t01, 0, t12], [-t02, -t12, 0]];
        let lam: Vec<Vec<Scalar>> = (0..k).map(|i| (0..k).map(|j| Scalar::root(n, th[i][j])).collect()).collect();
        let dec = torus_decompose(&lam, &UnitGroup::new(n)).unwrap();
        let spec = TorusModuleSpec::ones(&dec);
        let gens = simple_torus_module(&dec, &spec).unwrap();
        let product: usize = (0..dec.thetas.len()).map(|i| dec.factor_order(i) as usize).product();
        prop_assert_eq!(gens[0].nrows(), product);
        prop_assert!(satisfies_commutation(&gens, &lam));
        prop_assert!(joint_eigenvalues_distinct(&dec, &transformed_generators(&dec, &spec).unwrap()));
    }
}

fn both_rou_module() -> WeightModuleSpec {
    let alg = rou(12, 4, 3, 2);
    let pt = WeightPoint::new(vec![v("a1"), v("a2")]);
    build_module(CaseTag::GenericBothRou, &pt, &alg, &v("rho"), &v("mu"), None).unwrap()
}

fn isotropy_matches_fixed_points(alg: &QwaAlgebra, pt: &WeightPoint) {
    let iso = isotropy(pt, alg).unwrap();
    for i in -6..=6 {
        for j in -6..=6 {
            let fixed = sigma_action(&[i, j], pt, alg).unwrap() == *pt;
            assert_eq!(iso.contains(&[i, j]), fixed, "g=({i},{j}) at {:?}", pt.alpha);
        }
    }
}

#[test]
fn isotropy_is_the_stabilizer() {
    let a = rou(12, 4, 3, 2);
    let g = generic();
    isotropy_matches_fixed_points(&a, &WeightPoint::n0(&a).unwrap());
    isotropy_matches_fixed_points(&a, &WeightPoint::n1(&a, &v("lam")).unwrap());
    isotropy_matches_fixed_points(&a, &WeightPoint::n2(&a, &v("lam")).unwrap());
    isotropy_matches_fixed_points(&a, &WeightPoint::new(vec![v("a1"), v("a2")]));
    isotropy_matches_fixed_points(&g, &WeightPoint::n0(&g).unwrap());
    isotropy_matches_fixed_points(&g, &WeightPoint::new(vec![v("a1"), v("a2")]));
}

#[test]
fn trivial_pairing_is_one() {
    let p = generic().presentation;
    assert!(pair_at(&[0, 0], &[v("a1"), v("a2")], &p).unwrap().is_one());
}

#[test]
fn ccr_intervals_match_word_pairings() {
    let n = 4;
    let e = Scalar::root(n, 1);
    let qm = vec![vec![e.clone(), e.clone()], vec![e.inv().unwrap(), Scalar::from_int(-1)]];
    let p = tgwa::tgwa::ccr(&qm).unwrap();
    let orbit = CcrOrbit::new(&tgwa::ParameterEnv::new(n), &[qm[0][0].clone(), qm[1][1].clone()]).unwrap();
    let fixed = Scalar::one().div(&Scalar::one().sub(&e)).unwrap();
    for alpha in [
        vec![Scalar::zero(), Scalar::one()],
        vec![Scalar::one(), Scalar::zero()],
        vec![fixed, v("a2")],
        vec![v("a1"), v("a2")],
    ] {
        let pt = WeightPoint::new(alpha.clone());
        let gt = orbit.g_tilde(&pt).unwrap();
        let iso = orbit.isotropy(&pt).unwrap();
        for i in -6i64..=6 {
            for j in -6i64..=6 {
                let by_words = !pair_at(&[i, j], &alpha, &p).unwrap().is_zero();
                assert_eq!(gt.contains(&[i, j]), by_words, "g=({i},{j}) at {alpha:?}");
                // σ^g through the affine maps of the presentation
                let moved = p.sigma_point(&[i, j], &alpha);
                assert_eq!(iso.contains(&[i, j]), moved == alpha, "g=({i},{j}) at {alpha:?}");
            }
        }
    }
}
