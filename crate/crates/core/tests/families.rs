//! Every family against the induced-module oracle on a window.
#![allow(clippy::needless_range_loop)]

use std::collections::HashSet;
use std::sync::Arc;

mod common;

use common::{instances, rou, v};
use tgwa::bm::{bm_presentation, torus_decompose};
use tgwa::induced::{compare_exact, compare_up_to_gauge, oracle_for};
use tgwa::orbit::WeightPoint;
use tgwa::module::Label;
use tgwa::qwa::{build_module, classify_case, zeta, CaseTag};
use tgwa::tgwa::Letter;
use tgwa::verify::{check_proper_inner_breaks, check_relations, verify, VerifyOptions};
use tgwa::Scalar;

#[test]
fn classification_of_instances() {
    for (tag, alg, pt) in instances() {
        assert_eq!(classify_case(&pt, &alg).unwrap(), tag);
    }
}

/// Exact agreement for most families; the two families whose basis is not
/// a_g·v agree after the known rescaling or up to a diagonal gauge.
#[test]
fn families_match_oracle() {
    let (rho, mu) = (v("rho"), v("mu"));
    let w = Some(3);
    for (tag, alg, pt) in instances() {
        let m = build_module(tag, &pt, &alg, &rho, &mu, w).unwrap();
        let o = oracle_for(&m).unwrap();
        match tag {
            CaseTag::GenericOther => assert_eq!(compare_up_to_gauge(&m, &o, w).unwrap(), None, "{tag}"),
            CaseTag::N1NobreakGeneric => {
                assert!(compare_exact(&m, &o, w).unwrap().is_some());
                let lam = m.params["lambda"].clone();
                let a = alg.clone();
                let r = m.rescaled(Arc::new(move |l: &Label| zeta(l.g[0], &lam, &a)?.inv()));
                assert_eq!(compare_exact(&r, &o, w).unwrap(), None);
            }
            _ => assert_eq!(compare_exact(&m, &o, w).unwrap(), None, "{tag}"),
        }
    }
}

#[test]
fn corrupted_module_is_caught() {
    let alg = rou(20, 4, 14, 1);
    let pt = WeightPoint::n2(&alg, &v("lam")).unwrap();
    let m = build_module(CaseTag::N2Rank2, &pt, &alg, &v("rho"), &v("mu"), None).unwrap();
    let bad = m.scale_generator(Letter::X(1), Scalar::from_int(2));
    let o = oracle_for(&m).unwrap();
    assert!(compare_exact(&bad, &o, None).unwrap().is_some());
}

#[test]
fn families_verify_clean() {
    let (rho, mu) = (v("rho"), v("mu"));
    for (tag, alg, pt) in instances() {
        let t = std::time::Instant::now();
        let m = build_module(tag, &pt, &alg, &rho, &mu, Some(4)).unwrap();
        let opts = VerifyOptions { window: Some(4), npib_radius: None };
        let r = verify(&m, &opts).unwrap();
        println!("{tag}: {:?} npib r={} {:?}", r.simplicity, r.npib_radius, t.elapsed());
        assert!(r.passes(), "{tag}\n{}", r.to_text());
    }
}

#[test]
fn yx_acts_as_t() {
    let (rho, mu) = (v("rho"), v("mu"));
    for (tag, alg, pt) in instances() {
        let m = build_module(tag, &pt, &alg, &rho, &mu, Some(2)).unwrap();
        for l in m.labels(Some(2)).unwrap() {
            let alpha = m.point(&l).alpha;
            for i in 0..2 {
                let got = m.apply_word(&[Letter::Y(i), Letter::X(i)], &l).unwrap();
                match got {
                    Some((t, c)) => assert!(t == l && c == alpha[i], "{tag}: Y{0}X{0} at {l}", i + 1),
                    None => assert!(alpha[i].is_zero(), "{tag}: Y{0}X{0} kills {l} but t_{0} ≠ 0", i + 1),
                }
            }
        }
    }
}

/// Distinct support degrees give distinct weight points, and the weight
/// space is a simple B_m-module of the torus dimension.
#[test]
fn support_and_dimension() {
    let (rho, mu) = (v("rho"), v("mu"));
    for (tag, alg, pt) in instances() {
        let m = build_module(tag, &pt, &alg, &rho, &mu, Some(3)).unwrap();
        let degs = m.support.enumerate(Some(3)).unwrap();
        let points: HashSet<Vec<String>> =
            degs.iter().map(|g| m.point(&Label::new(g.clone(), 0)).alpha.iter().map(|a| a.to_string()).collect()).collect();
        assert_eq!(points.len(), degs.len(), "{tag}: two support degrees share a weight point");
        let bm = bm_presentation(&pt, &alg).unwrap();
        let expected = if bm.basis.is_empty() { 1 } else { torus_decompose(&bm.lambda, &alg.units()).unwrap().module_dimension() };
        assert_eq!(m.weight_dim, expected, "{tag}");
        if let Some(d) = m.dimension() {
            assert_eq!(d, m.support.enumerate(None).unwrap().len() * expected, "{tag}");
        }
    }
}

#[test]
fn oracle_satisfies_relations() {
    let (rho, mu) = (v("rho"), v("mu"));
    for (tag, alg, pt) in instances() {
        let m = build_module(tag, &pt, &alg, &rho, &mu, Some(2)).unwrap();
        assert!(check_relations(&m, Some(2)).unwrap().is_empty());
        let o = oracle_for(&m).unwrap();
        assert!(check_relations(&o, Some(2)).unwrap().is_empty(), "{tag}: oracle fails relations");
    }
}

#[test]
fn proper_inner_breaks_grow_with_window() {
    let (rho, mu) = (v("rho"), v("mu"));
    let mut modules = vec![tgwa::qwa::fixtures::cyclic_n0_fixture().unwrap()];
    for (tag, alg, pt) in instances().into_iter().take(6) {
        modules.push(build_module(tag, &pt, &alg, &rho, &mu, Some(3)).unwrap());
    }
    for m in modules {
        let mut prev: HashSet<_> = HashSet::new();
        for w in 1..=3 {
            let now: HashSet<_> = check_proper_inner_breaks(&m, Some(w), 3)
                .unwrap()
                .into_iter()
                .map(|b| (b.degree, b.g))
                .collect();
            assert!(prev.is_subset(&now), "{}: window {w} lost a break", m.name);
            prev = now;
        }
    }
}
