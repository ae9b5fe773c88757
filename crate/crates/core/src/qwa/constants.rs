//! Closed-form constants at the points n_λ^(2), each paired with a
//! brute-force evaluation through `normalize`.
//!
//! Powers of a K_2 generator with negative exponent mean powers of the
//! inverse a' = r·a^* on M_m.

use serde::Serialize;

use crate::bm::commutation_scalars;
use crate::error::{Error, Result};
use crate::lattice::{box_reps, BoxReps};
use crate::scalar::Scalar;
use crate::tgwa::{normalize, pair_at, star, QwaAlgebra, Word};

fn bar(k: i64) -> i64 {
    k.max(0)
}

fn pw(s: &Scalar, k: i64) -> Result<Scalar> {
    s.pow(k)
}

/// Z_1^k Z_1^l = z1_merge(k,l)·Z_1^{k+l} on any M_{n^(2)}.
pub fn z1_merge(k: i64, l: i64, alg: &QwaAlgebra) -> Result<Scalar> {
    if k * l >= 0 {
        return Ok(Scalar::one());
    }
    let m = k.abs().min(l.abs());
    pw(&Scalar::one().sub(&alg.q[0]), -m)
}

/// Z_2^k Z_2^l = z2_merge(k,l)·Z_2^{k+l} on M_m, m = n_λ^(2).
pub fn z2_merge(k: i64, l: i64, lam: &Scalar, alg: &QwaAlgebra) -> Result<Scalar> {
    if k * l >= 0 {
        return Ok(Scalar::one());
    }
    let m = k.abs().min(l.abs());
    let e2 = (1 - 2 * l + l.signum() * m) * m;
    debug_assert!(e2 % 2 == 0);
    Ok(pw(lam, m)?.mul(&pw(&alg.q[1], e2 / 2)?))
}

/// Z_1^k Z_2^l = swap(k,l)·Z_2^l Z_1^k.
pub fn swap(k: i64, l: i64, alg: &QwaAlgebra) -> Result<Scalar> {
    Ok(pw(&alg.q[0], k * bar(l))?.mul(&pw(&alg.lambda[0][1], k * l)?))
}

/// r_g = (1−q_1)^{|g_1|}(λ⁻¹q_2^{(g_2−1)/2})^{|g_2|}.
pub fn r_closed(g: &[i64], lam: &Scalar, alg: &QwaAlgebra) -> Result<Scalar> {
    let e2 = (g[1] - 1) * g[1].abs();
    Ok(pw(&Scalar::one().sub(&alg.q[0]), g[0].abs())?.mul(&pw(lam, -g[1].abs())?).mul(&pw(&alg.q[1], e2 / 2)?))
}

/// r_g = (a_g^* a_g)⁻¹ evaluated at the point.
pub fn r_oracle(g: &[i64], alpha: &[Scalar], alg: &QwaAlgebra) -> Result<Scalar> {
    pair_at(g, alpha, &alg.presentation)?.inv()
}

/// c(k,l) with Z_2^kZ_2^l = c(k,l)Z_2^lZ_2^k.
pub fn c_kl(k: i64, l: i64, alg: &QwaAlgebra) -> Result<Scalar> {
    if k * l >= 0 {
        return Ok(Scalar::one());
    }
    let m = k.abs().min(l.abs());
    let e = 2 * (k - l) * m - (k.signum() - l.signum()) * m * m;
    pw(&alg.q[1], e / 2)
}

/// ν = λ_12^d q_1^{a_1b̄_2 − b_1ā_2} c(a_2,b_2).
pub fn nu_closed(a: (i64, i64), b: (i64, i64), alg: &QwaAlgebra) -> Result<Scalar> {
    let d = a.0 * b.1 - b.0 * a.1;
    Ok(pw(&alg.lambda[0][1], d)?.mul(&pw(&alg.q[0], a.0 * bar(b.1) - b.0 * bar(a.1))?).mul(&c_kl(a.1, b.1, alg)?))
}

pub fn nu_oracle(a: (i64, i64), b: (i64, i64), alpha: &[Scalar], alg: &QwaAlgebra) -> Result<Scalar> {
    let lam = commutation_scalars(&[vec![a.0, a.1], vec![b.0, b.1]], alpha, &alg.presentation)?;
    Ok(lam[0][1].clone())
}

/// Scalar c with (Z^a)^p = c·Z_1^{pa_1}Z_2^{pa_2} on M_m.
fn power_coeff(a: (i64, i64), p: i64, lam: &Scalar, alg: &QwaAlgebra) -> Result<Scalar> {
    let tri = p * (p - 1) / 2;
    let l12 = pw(&alg.lambda[0][1], -a.0 * a.1 * tri)?;
    if p >= 0 {
        Ok(pw(&alg.q[0], -a.0 * bar(a.1) * tri)?.mul(&l12))
    } else {
        let r = r_closed(&[a.0, a.1], lam, alg)?;
        Ok(pw(&r, -p)?.mul(&pw(&alg.q[0], a.0 * bar(-a.1) * tri)?).mul(&l12))
    }
}

/// C⁻¹ with (Z^a)^{p1}(Z^b)^{p2} = C⁻¹·Z_1^{x}Z_2^{y} on M_m.
pub fn power_product_inv(
    a: (i64, i64),
    p1: i64,
    b: (i64, i64),
    p2: i64,
    lam: &Scalar,
    alg: &QwaAlgebra,
) -> Result<Scalar> {
    let (x1, y1) = (p1 * a.0, p1 * a.1);
    let (x2, y2) = (p2 * b.0, p2 * b.1);
    // move Z_1^{x2} left past Z_2^{y1}, then merge equal letters
    let sw = swap(x2, y1, alg)?.inv()?;
    Ok(power_coeff(a, p1, lam, alg)?
        .mul(&power_coeff(b, p2, lam, alg)?)
        .mul(&sw)
        .mul(&z1_merge(x1, x2, alg)?)
        .mul(&z2_merge(y1, y2, lam, alg)?))
}

/// Same constant from the words: normalize and evaluate at the point.
pub fn power_product_inv_oracle(
    a: (i64, i64),
    p1: i64,
    b: (i64, i64),
    p2: i64,
    alpha: &[Scalar],
    alg: &QwaAlgebra,
) -> Result<Scalar> {
    let mut w = Word::empty();
    let mut scale = Scalar::one();
    for (s, p) in [(a, p1), (b, p2)] {
        let base = Word::canonical(&[s.0, s.1]);
        if p >= 0 {
            w = w.concat(&base.pow(p as usize));
        } else {
            w = w.concat(&star(&base).pow((-p) as usize));
            scale = scale.mul(&pw(&r_oracle(&[s.0, s.1], alpha, alg)?, -p)?);
        }
    }
    let target = vec![p1 * a.0 + p2 * b.0, p1 * a.1 + p2 * b.1];
    let cw = normalize(&w, &alg.presentation)?;
    if cw.degree != target {
        return Err(Error::CertificationFailed(format!("degree {:?} ≠ {:?}", cw.degree, target)));
    }
    Ok(scale.mul(&cw.eval_at(alpha)))
}

/// X_2^{d_2} r_{(−s,d_2)} Z_2^{−d_2} Z_1^s = g0·Z_1^s on M_m.
pub fn gen0_closed(s: i64, d2: i64, alg: &QwaAlgebra) -> Result<Scalar> {
    Ok(pw(&Scalar::one().sub(&alg.q[0]), s)?.mul(&pw(&alg.q[0], -s * d2)?).mul(&pw(&alg.q[1], d2 * d2)?))
}

pub fn gen0_oracle(s: i64, d2: i64, alpha: &[Scalar], alg: &QwaAlgebra) -> Result<Scalar> {
    let w = Word::canonical(&[0, d2]).concat(&Word::canonical(&[0, -d2])).concat(&Word::canonical(&[s, 0]));
    let cw = normalize(&w, &alg.presentation)?;
    if cw.degree != vec![s, 0] {
        return Err(Error::CertificationFailed("gen0 degree".into()));
    }
    Ok(cw.eval_at(alpha).mul(&r_oracle(&[-s, d2], alpha, alg)?))
}

fn certify(name: &str, closed: Scalar, oracle: Scalar) -> Result<Scalar> {
    if closed != oracle {
        return Err(Error::CertificationFailed(format!("{name}: closed form {closed} ≠ oracle {oracle}")));
    }
    Ok(closed)
}

/// Constants of the rank-two case, all certified.
#[derive(Clone, Debug, Serialize)]
pub struct InducedConstants {
    pub a: (i64, i64),
    pub b: (i64, i64),
    pub reps: BoxReps,
    pub nu: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
    pub gen0: Scalar,
    /// r_g on [−4,4]².
    pub r_table: Vec<(Vec<i64>, Scalar)>,
}

pub const R_TABLE_RADIUS: i64 = 4;

/// Certified constants for K_2 = ℤa ⊕ ℤb at the point with t_2-value λ.
pub fn induced_constants(
    a: (i64, i64),
    b: (i64, i64),
    alpha: &[Scalar],
    alg: &QwaAlgebra,
) -> Result<InducedConstants> {
    let reps = box_reps(a, b)?;
    let lam = &alpha[1];
    let nu = certify("nu", nu_closed(a, b, alg)?, nu_oracle(a, b, alpha, alg)?)?;
    let (p, q) = (b.1 / reps.d2, a.1 / reps.d2);
    let c1inv = certify(
        "C1",
        power_product_inv(a, p, b, -q, lam, alg)?,
        power_product_inv_oracle(a, p, b, -q, alpha, alg)?,
    )?;
    let c2inv = certify(
        "C2",
        power_product_inv(a, reps.a2p, b, reps.b2p, lam, alg)?,
        power_product_inv_oracle(a, reps.a2p, b, reps.b2p, alpha, alg)?,
    )?;
    let gen0 = certify("gen0", gen0_closed(reps.s, reps.d2, alg)?, gen0_oracle(reps.s, reps.d2, alpha, alg)?)?;
    let mut r_table = Vec::new();
    for i in -R_TABLE_RADIUS..=R_TABLE_RADIUS {
        for j in -R_TABLE_RADIUS..=R_TABLE_RADIUS {
            let g = vec![i, j];
            let v = certify("r_g", r_closed(&g, lam, alg)?, r_oracle(&g, alpha, alg)?)?;
            r_table.push((g, v));
        }
    }
    Ok(InducedConstants { a, b, reps, nu, c1: c1inv.inv()?, c2: c2inv.inv()?, gen0, r_table })
}

/// Wrap coefficient of X_1 on w_{a−1,j} in the rank-one case (a > 0),
/// without ρ: λ^{−|b|}q_2^{(b−1)|b|/2} q_1^{a(j̄+(−b)‾)} λ_12^{a(j−b)} C_0.
pub fn rank1_wrap(a: i64, b: i64, j: i64, lam: &Scalar, alg: &QwaAlgebra) -> Result<Scalar> {
    let e2 = (b - 1) * b.abs();
    Ok(pw(lam, -b.abs())?
        .mul(&pw(&alg.q[1], e2 / 2)?)
        .mul(&pw(&alg.q[0], a * (bar(j) + bar(-b)))?)
        .mul(&pw(&alg.lambda[0][1], a * (j - b))?)
        .mul(&rank1_c0(j, b, lam, alg)?))
}

/// C_0 = Z_2^jZ_2^{−b} merge factor.
pub fn rank1_c0(j: i64, b: i64, lam: &Scalar, alg: &QwaAlgebra) -> Result<Scalar> {
    z2_merge(j, -b, lam, alg)
}

pub fn rank1_c0_oracle(j: i64, b: i64, alpha: &[Scalar], alg: &QwaAlgebra) -> Result<Scalar> {
    let w = Word::canonical(&[0, j]).concat(&Word::canonical(&[0, -b]));
    Ok(normalize(&w, &alg.presentation)?.eval_at(alpha))
}
