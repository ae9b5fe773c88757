//! Closed-form action of X_1, X_2 for each family. Y_i is always obtained
//! from Y_iX_i = t_i, so only the X side is written out.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::constants::{induced_constants, rank1_wrap, z1_merge, z2_merge};
use super::CaseTag;
use crate::error::{Error, Result};
use crate::lattice::normalize_rank2_basis;
use crate::linalg::Matrix;
use crate::module::{ActionFn, CoordSet, Edge, Label, Support, WeightModuleSpec};
use crate::orbit::{g_tilde, gamma_sequence, isotropy, WeightPoint};
use crate::scalar::Scalar;
use crate::tgwa::{Letter, QwaAlgebra};

type XFn = Arc<dyn Fn(usize, &Label) -> Result<Edge> + Send + Sync>;

fn lbl(i: i64, j: i64, k: usize) -> Label {
    Label::new(vec![i, j], k)
}

fn order(s: &Scalar, what: &str) -> Result<i64> {
    match s.root_of_unity_order()? {
        Some(o) => Ok(o as i64),
        None => Err(Error::NoFiniteDimensionalWeightSpaces(format!("{what} = {s} is not a root of unity"))),
    }
}

fn diag_powers(base: &Scalar, r: i64, rho: &Scalar) -> Result<Matrix> {
    Ok(Matrix::diagonal((0..r).map(|k| base.pow(k).map(|p| p.mul(rho))).collect::<Result<_>>()?))
}

/// e_k ↦ e_{k+1}, e_{r−1} ↦ μe_0.
fn cyclic_shift(r: i64, mu: &Scalar) -> Matrix {
    let r = r as usize;
    let mut m = Matrix::zeros(r, r);
    for k in 0..r {
        m.rows[(k + 1) % r][k] = if k + 1 == r { mu.clone() } else { Scalar::one() };
    }
    m
}

/// B^n e_k = μ^{n'} e_{n''} with k + n = r n' + n''.
fn shift_power(k: usize, n: i64, r: i64, mu: &Scalar) -> Result<(usize, Scalar)> {
    let t = k as i64 + n;
    Ok((t.rem_euclid(r) as usize, mu.pow(t.div_euclid(r))?))
}

/// ζ_j with the N1_NOBREAK_GENERIC basis vector at degree (j,0) equal to
/// ζ_j·a_{(j,0)}v.
pub fn zeta(j: i64, lam: &Scalar, alg: &QwaAlgebra) -> Result<Scalar> {
    if j >= 0 {
        return Ok(Scalar::one());
    }
    let q1 = &alg.q[0];
    let mut den = Scalar::one();
    for m in 1..=-j {
        den = den.mul(&Scalar::one().sub(&lam.mul(&q1.pow(m)?)));
    }
    Scalar::one().sub(q1).pow(-j)?.div(&den)
}

struct Parts {
    base: WeightPoint,
    support: Support,
    dim: usize,
    gm: Vec<Vec<i64>>,
    mats: Vec<Matrix>,
    params: BTreeMap<String, Scalar>,
    x: XFn,
}

fn assemble(tag: CaseTag, alg: &QwaAlgebra, p: Parts) -> WeightModuleSpec {
    let pres = alg.presentation.clone();
    let support = p.support.clone();
    let alpha = p.base.alpha.clone();
    let dim = p.dim;
    let x = p.x.clone();
    let points: Mutex<HashMap<Vec<i64>, Vec<Scalar>>> = Mutex::new(HashMap::new());
    let action: ActionFn = Arc::new(move |l, v| match l {
        Letter::X(i) => x(i, v),
        Letter::Y(i) => {
            let mut g = v.g.clone();
            g[i] -= 1;
            let Some(h) = support.reduce(&g) else { return Ok(None) };
            let cached = points.lock().unwrap().get(&h).cloned();
            let pt = cached.unwrap_or_else(|| {
                let a = pres.sigma_point(&h, &alpha);
                points.lock().unwrap().insert(h.clone(), a.clone());
                a
            });
            let t = pt[i].clone();
            for k in 0..dim {
                let src = Label::new(h.clone(), k);
                if let Some((tgt, c)) = x(i, &src)? {
                    if tgt == *v && !c.is_zero() {
                        return Ok(Some((src, t.div(&c)?)));
                    }
                }
            }
            if t.is_zero() {
                Ok(None)
            } else {
                Err(Error::CertificationFailed(format!("no X_{} edge into {v} although t_{} ≠ 0", i + 1, i + 1)))
            }
        }
    });
    WeightModuleSpec::new(
        tag.as_str(),
        alg.presentation.clone(),
        Some(alg.clone()),
        p.base,
        p.support,
        p.dim,
        p.gm,
        p.mats,
        p.params,
        action,
    )
}

fn params(items: &[(&str, &Scalar)]) -> BTreeMap<String, Scalar> {
    items.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}

pub(super) fn build(
    tag: CaseTag,
    pt: &WeightPoint,
    alg: &QwaAlgebra,
    rho: &Scalar,
    mu: &Scalar,
) -> Result<WeightModuleSpec> {
    let parts = match tag {
        CaseTag::N0 => n0(alg, rho)?,
        CaseTag::N1BreakRou | CaseTag::N1BreakHighest => n1_break_top(tag, alg, rho)?,
        CaseTag::N1BreakLowest => n1_break_lowest(alg, rho)?,
        CaseTag::N1NobreakRou => n1_nobreak_rou(pt, alg, rho, mu)?,
        CaseTag::N1NobreakGeneric => n1_nobreak_generic(pt, alg, rho)?,
        CaseTag::N2Rank0 => n2_rank0(pt, alg)?,
        CaseTag::N2Rank1 => n2_rank1(pt, alg, rho)?,
        CaseTag::N2Rank2 => n2_rank2(pt, alg, rho, mu)?,
        CaseTag::GenericBothRou => generic_both_rou(pt, alg, rho, mu)?,
        CaseTag::GenericOther => generic_other(pt, alg, rho, mu)?,
    };
    Ok(assemble(tag, alg, parts))
}

fn n0(alg: &QwaAlgebra, rho: &Scalar) -> Result<Parts> {
    let r = rho.clone();
    Ok(Parts {
        base: WeightPoint::n0(alg)?,
        support: Support::Product { coords: vec![CoordSet::point(), CoordSet::Interval { lo: Some(0), hi: Some(0) }] },
        dim: 1,
        gm: vec![vec![1, 0]],
        mats: vec![Matrix::diagonal(vec![rho.clone()])],
        params: params(&[("rho", rho)]),
        x: Arc::new(move |i, v| Ok((i == 0).then(|| (v.clone(), r.clone())))),
    })
}

/// Break at 0 on the negative side: degrees (−j, 0), j ≥ 0.
fn n1_break_top(tag: CaseTag, alg: &QwaAlgebra, rho: &Scalar) -> Result<Parts> {
    let lo = if tag == CaseTag::N1BreakRou { Some(1 - order(&alg.q[0], "q1")?) } else { None };
    let (q1, l12, r) = (alg.q[0].clone(), alg.lambda[0][1].clone(), rho.clone());
    Ok(Parts {
        base: WeightPoint::n1(alg, &Scalar::one())?,
        support: Support::Product { coords: vec![CoordSet::Interval { lo, hi: Some(0) }, CoordSet::point()] },
        dim: 1,
        gm: vec![vec![0, 1]],
        mats: vec![Matrix::diagonal(vec![rho.clone()])],
        params: params(&[("rho", rho)]),
        x: Arc::new(move |i, v| {
            let j = -v.g[0];
            if i == 0 {
                if j == 0 {
                    return Ok(None);
                }
                Ok(Some((lbl(v.g[0] + 1, 0, 0), Scalar::q_integer(j, &q1)?)))
            } else {
                Ok(Some((v.clone(), r.mul(&l12.mul(&q1).pow(j)?))))
            }
        }),
    })
}

fn n1_break_lowest(alg: &QwaAlgebra, rho: &Scalar) -> Result<Parts> {
    let (q1, l12, r) = (alg.q[0].clone(), alg.lambda[0][1].clone(), rho.clone());
    Ok(Parts {
        base: WeightPoint::n1(alg, &alg.q[0].inv()?)?,
        support: Support::Product { coords: vec![CoordSet::Interval { lo: Some(0), hi: None }, CoordSet::point()] },
        dim: 1,
        gm: vec![vec![0, 1]],
        mats: vec![Matrix::diagonal(vec![rho.clone()])],
        params: params(&[("rho", rho)]),
        x: Arc::new(move |i, v| {
            let j = v.g[0];
            if i == 0 {
                Ok(Some((lbl(j + 1, 0, 0), Scalar::one())))
            } else {
                Ok(Some((v.clone(), r.mul(&q1.mul(&l12).pow(-j)?))))
            }
        }),
    })
}

fn n1_nobreak_rou(pt: &WeightPoint, alg: &QwaAlgebra, rho: &Scalar, mu: &Scalar) -> Result<Parts> {
    let o1 = order(&alg.q[0], "q1")?;
    let big = alg.lambda[0][1].pow(o1)?;
    let r = order(&big, "λ12^o1")?;
    let (q1, l12, rh, m) = (alg.q[0].clone(), alg.lambda[0][1].clone(), rho.clone(), mu.clone());
    let lam = gamma_sequence(pt, alg).gammas[1].clone();
    let bg = big.clone();
    Ok(Parts {
        base: pt.clone(),
        support: Support::Product { coords: vec![CoordSet::Cyclic { d: o1 }, CoordSet::point()] },
        dim: r as usize,
        gm: vec![vec![o1, 0], vec![0, 1]],
        mats: vec![diag_powers(&big, r, rho)?, cyclic_shift(r, mu)],
        params: params(&[("rho", rho), ("mu", mu), ("lambda", &lam)]),
        x: Arc::new(move |i, v| {
            let (a, k) = (v.g[0], v.k);
            if i == 0 {
                if a < o1 - 1 {
                    Ok(Some((lbl(a + 1, 0, k), Scalar::one())))
                } else {
                    Ok(Some((lbl(0, 0, k), bg.pow(k as i64)?.mul(&rh))))
                }
            } else {
                let (k2, c) = shift_power(k, 1, r, &m)?;
                Ok(Some((lbl(a, 0, k2), c.mul(&q1.mul(&l12).pow(-a)?))))
            }
        }),
    })
}

fn n1_nobreak_generic(pt: &WeightPoint, alg: &QwaAlgebra, rho: &Scalar) -> Result<Parts> {
    let (q1, l12, r) = (alg.q[0].clone(), alg.lambda[0][1].clone(), rho.clone());
    let lam = gamma_sequence(pt, alg).gammas[1].clone();
    Ok(Parts {
        base: pt.clone(),
        support: Support::Product { coords: vec![CoordSet::FULL, CoordSet::point()] },
        dim: 1,
        gm: vec![vec![0, 1]],
        mats: vec![Matrix::diagonal(vec![rho.clone()])],
        params: params(&[("rho", rho), ("lambda", &lam)]),
        x: Arc::new(move |i, v| {
            let j = v.g[0];
            if i == 0 {
                Ok(Some((lbl(j + 1, 0, 0), Scalar::one())))
            } else {
                Ok(Some((v.clone(), r.mul(&q1.mul(&l12).pow(-j)?))))
            }
        }),
    })
}

/// X_1 and X_2 on Z_1^iZ_2^j v at n_λ^(2), before any reduction.
fn n2_raw(i: usize, g: (i64, i64), lam: &Scalar, alg: &QwaAlgebra) -> Result<((i64, i64), Scalar)> {
    let (a, b) = g;
    if i == 0 {
        Ok(((a + 1, b), z1_merge(1, a, alg)?))
    } else {
        let c = alg.q[0].mul(&alg.lambda[0][1]).pow(-a)?.mul(&z2_merge(1, b, lam, alg)?);
        Ok(((a, b + 1), c))
    }
}

fn n2_rank0(pt: &WeightPoint, alg: &QwaAlgebra) -> Result<Parts> {
    let (a, lam) = (alg.clone(), pt.alpha[1].clone());
    Ok(Parts {
        base: pt.clone(),
        support: Support::Product { coords: vec![CoordSet::FULL, CoordSet::FULL] },
        dim: 1,
        gm: vec![],
        mats: vec![],
        params: params(&[("lambda", &pt.alpha[1])]),
        x: Arc::new(move |i, v| {
            let ((x, y), c) = n2_raw(i, (v.g[0], v.g[1]), &lam, &a)?;
            Ok(Some((lbl(x, y, 0), c)))
        }),
    })
}

fn n2_rank1(pt: &WeightPoint, alg: &QwaAlgebra, rho: &Scalar) -> Result<Parts> {
    let row = isotropy(pt, alg)?.rows_i64().into_iter().next().ok_or(Error::InfiniteOrder)?;
    let (mut a, mut b) = (row[0], row[1]);
    if a < 0 || (a == 0 && b < 0) {
        a = -a;
        b = -b;
    }
    let (al, lam, r) = (alg.clone(), pt.alpha[1].clone(), rho.clone());
    Ok(Parts {
        base: pt.clone(),
        support: Support::Strip { a, b },
        dim: 1,
        gm: vec![vec![a, b]],
        mats: vec![Matrix::diagonal(vec![rho.clone()])],
        params: params(&[("rho", rho), ("lambda", &pt.alpha[1])]),
        x: Arc::new(move |i, v| {
            let (x, y) = (v.g[0], v.g[1]);
            if a > 0 && i == 0 && x == a - 1 {
                return Ok(Some((lbl(0, y - b, 0), rank1_wrap(a, b, y, &lam, &al)?.mul(&r))));
            }
            if a == 0 && i == 1 && y == b - 1 {
                let c = al.q[0].mul(&al.lambda[0][1]).pow(-x)?.mul(&r);
                return Ok(Some((lbl(x, 0, 0), c)));
            }
            let ((x2, y2), c) = n2_raw(i, (x, y), &lam, &al)?;
            Ok(Some((lbl(x2, y2, 0), c)))
        }),
    })
}

fn n2_rank2(pt: &WeightPoint, alg: &QwaAlgebra, rho: &Scalar, mu: &Scalar) -> Result<Parts> {
    let (a, b) = normalize_rank2_basis(&isotropy(pt, alg)?)?;
    let c = induced_constants(a, b, &pt.alpha, alg)?;
    let r = order(&c.nu, "ν")?;
    let reps = c.reps;
    let (p, q) = (b.1 / reps.d2, a.1 / reps.d2);
    let (rh, m, nu) = (rho.clone(), mu.clone(), c.nu.clone());
    let q1l = alg.q[0].mul(&alg.lambda[0][1]);
    // Z_1^{d1} on e_k
    let z1d1 = {
        let (c1, rh, m, nu) = (c.c1.clone(), rh.clone(), m.clone(), nu.clone());
        move |k: usize| -> Result<(usize, Scalar)> {
            let (k2, s) = shift_power(k, -q, r, &m)?;
            Ok((k2, c1.mul(&nu.pow(p * k2 as i64)?).mul(&rh.pow(p)?).mul(&s)))
        }
    };
    let (c2, gen0) = (c.c2.clone(), c.gen0.clone());
    Ok(Parts {
        base: pt.clone(),
        support: Support::Box { a, b, reps },
        dim: r as usize,
        gm: vec![vec![a.0, a.1], vec![b.0, b.1]],
        mats: vec![diag_powers(&c.nu, r, rho)?, cyclic_shift(r, mu)],
        params: params(&[("rho", rho), ("mu", mu), ("lambda", &pt.alpha[1]), ("nu", &c.nu)]),
        x: Arc::new(move |i, v| {
            let (x, y, k) = (v.g[0], v.g[1], v.k);
            if i == 0 {
                if x < reps.d1 - 1 {
                    return Ok(Some((lbl(x + 1, y, k), Scalar::one())));
                }
                let (k2, s) = z1d1(k)?;
                return Ok(Some((lbl(0, y, k2), s.mul(&q1l.pow(reps.d1 * y)?))));
            }
            if y < reps.d2 - 1 {
                return Ok(Some((lbl(x, y + 1, k), q1l.pow(-x)?)));
            }
            let (k2, s) = shift_power(k, reps.b2p, r, &m)?;
            let coeff = q1l
                .pow(-x)?
                .mul(&gen0)
                .mul(&c2)
                .mul(&nu.pow(reps.a2p * k2 as i64)?)
                .mul(&rh.pow(reps.a2p)?)
                .mul(&s);
            if x + reps.s < reps.d1 {
                Ok(Some((lbl(x + reps.s, 0, k2), coeff)))
            } else {
                let (k3, s3) = z1d1(k2)?;
                Ok(Some((lbl(x + reps.s - reps.d1, 0, k3), coeff.mul(&s3))))
            }
        }),
    })
}

fn generic_both_rou(pt: &WeightPoint, alg: &QwaAlgebra, rho: &Scalar, mu: &Scalar) -> Result<Parts> {
    let o1 = order(&alg.q[0], "q1")?;
    let o2 = order(&alg.q[1], "q2")?;
    let big = alg.lambda[0][1].pow(o1 * o2)?;
    let r = order(&big, "λ12^(o1·o2)")?;
    let (l12, rh, m) = (alg.lambda[0][1].clone(), rho.clone(), mu.clone());
    let q1l = alg.q[0].mul(&l12);
    Ok(Parts {
        base: pt.clone(),
        support: Support::Product { coords: vec![CoordSet::Cyclic { d: o1 }, CoordSet::Cyclic { d: o2 }] },
        dim: r as usize,
        gm: vec![vec![o1, 0], vec![0, o2]],
        mats: vec![diag_powers(&big, r, rho)?, cyclic_shift(r, mu)],
        params: params(&[("rho", rho), ("mu", mu)]),
        x: Arc::new(move |i, v| {
            let (x, y, k) = (v.g[0], v.g[1], v.k);
            if i == 0 {
                if x < o1 - 1 {
                    Ok(Some((lbl(x + 1, y, k), Scalar::one())))
                } else {
                    Ok(Some((lbl(0, y, k), l12.pow(o1 * (o2 * k as i64 + y))?.mul(&rh))))
                }
            } else if y < o2 - 1 {
                Ok(Some((lbl(x, y + 1, k), q1l.pow(-x)?)))
            } else {
                let (k2, s) = shift_power(k, 1, r, &m)?;
                Ok(Some((lbl(x, 0, k2), q1l.pow(-x)?.mul(&s))))
            }
        }),
    })
}

fn generic_other(pt: &WeightPoint, alg: &QwaAlgebra, rho: &Scalar, mu: &Scalar) -> Result<Parts> {
    let gt = g_tilde(pt, alg)?;
    let mut coords = Vec::new();
    let mut gm = Vec::new();
    let mut mats = Vec::new();
    let mut prm = Vec::new();
    for j in 0..2 {
        if !gt.is_full(j) {
            coords.push(CoordSet::Interval { lo: gt.lo[j], hi: gt.hi[j] });
        } else if let Some(o) = alg.q[j].root_of_unity_order()? {
            let o = o as i64;
            coords.push(CoordSet::Cyclic { d: o });
            let mut s = vec![0, 0];
            s[j] = o;
            gm.push(s);
            let p = if j == 0 { rho } else { mu };
            mats.push(Matrix::diagonal(vec![p.clone()]));
            prm.push((if j == 0 { "rho" } else { "mu" }, p));
        } else {
            coords.push(CoordSet::FULL);
        }
    }
    let support = Support::Product { coords: coords.clone() };
    let (l12, rh, m) = (alg.lambda[0][1].clone(), rho.clone(), mu.clone());
    let q1l = alg.q[0].mul(&l12);
    Ok(Parts {
        base: pt.clone(),
        support: support.clone(),
        dim: 1,
        gm,
        mats,
        params: params(&prm),
        x: Arc::new(move |i, v| {
            let (x, y) = (v.g[0], v.g[1]);
            let next = if i == 0 { vec![x + 1, y] } else { vec![x, y + 1] };
            let Some(h) = support.reduce(&next) else { return Ok(None) };
            let mut c = if i == 0 { Scalar::one() } else { q1l.pow(-x)? };
            if h != next {
                c = match coords[i] {
                    CoordSet::Cyclic { d } if i == 0 => c.mul(&rh).mul(&l12.pow(d * y)?),
                    _ => c.mul(&m),
                };
            }
            Ok(Some((Label::new(h, 0), c)))
        }),
    })
}
