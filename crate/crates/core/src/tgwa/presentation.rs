//! TGWA presentation data and the standard presets.

use serde::Serialize;

use super::relem::{Affine, RElem};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{ParameterEnv, Scalar};

/// (n, σ, t, μ) plus optional commutation constants for the X's.
#[derive(Clone, Debug)]
pub struct TgwaPresentation {
    pub n: usize,
    pub sigma: Vec<Affine>,
    sigma_inv: Vec<Affine>,
    pub t: Vec<RElem>,
    /// μ_ij for i ≠ j; diagonal entries are ignored.
    pub mu: Vec<Vec<Scalar>>,
    pub x_commutation: Option<Vec<Vec<Scalar>>>,
    y_commutation: Option<Vec<Vec<Scalar>>>,
}

impl TgwaPresentation {
    pub fn new(
        sigma: Vec<Affine>,
        t: Vec<RElem>,
        mu: Vec<Vec<Scalar>>,
        x_commutation: Option<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let n = sigma.len();
        if t.len() != n || mu.len() != n || mu.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPresentation("dimension mismatch".into()));
        }
        if sigma.iter().any(|s| s.rank() != n) || t.iter().any(|x| x.rank() != n) {
            return Err(Error::InvalidPresentation("σ or t has the wrong rank".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && mu[i][j].is_zero() {
                    return Err(Error::InvalidPresentation(format!("μ_{}{} = 0", i + 1, j + 1)));
                }
            }
        }
        let sigma_inv = sigma.iter().map(|s| s.inverse()).collect::<Result<Vec<_>>>()?;
        let mut p = TgwaPresentation { n, sigma, sigma_inv, t, mu, x_commutation: None, y_commutation: None };
        if let Some(c) = x_commutation {
            if c.len() != n || c.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidPresentation("x_commutation has the wrong shape".into()));
            }
            let d = p.derive_y_commutation()?;
            p.x_commutation = Some(c);
            p.y_commutation = Some(d);
        }
        Ok(p)
    }

    pub fn sigma_inv(&self, i: usize) -> &Affine {
        &self.sigma_inv[i]
    }

    /// Y_iY_j = d_ij Y_jY_i, from σ_j(t_i) = d_ij μ_ij t_i.
    fn derive_y_commutation(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.n;
        let mut d = vec![vec![Scalar::one(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let img = self.sigma[j].apply(&self.t[i]);
                let k = img.ratio_to(&self.t[i]).ok_or_else(|| {
                    Error::InvalidPresentation(format!("σ_{}(t_{}) is not a multiple of t_{}", j + 1, i + 1, i + 1))
                })?;
                d[i][j] = k.div(&self.mu[i][j])?;
            }
        }
        Ok(d)
    }

    pub fn y_commutation(&self) -> Option<&Vec<Vec<Scalar>>> {
        self.y_commutation.as_ref()
    }

    pub fn is_scalar_graded(&self) -> bool {
        self.x_commutation.is_some()
    }

    /// Point of σ^g(m) for m given by `alpha`, by iterating single steps.
    pub fn sigma_point(&self, g: &[i64], alpha: &[Scalar]) -> Vec<Scalar> {
        let mut a = alpha.to_vec();
        for (i, &gi) in g.iter().enumerate() {
            // σ_i(m) has point σ_i^{-1}(t)(α)
            let step = if gi >= 0 { &self.sigma_inv[i] } else { &self.sigma[i] };
            for _ in 0..gi.unsigned_abs() {
                a = step.images().iter().map(|r| r.eval(&a)).collect();
            }
        }
        a
    }
}

/// Outcome of the presentation sanity checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ConsistencyReport {
    /// Pairs (i, j), 1-based, where σ_iσ_j ≠ σ_jσ_i.
    pub noncommuting: Vec<(usize, usize)>,
    /// Pairs (i, j), 1-based, where t_it_j ≠ μ_ijμ_ji σ_i⁻¹(t_j)σ_j⁻¹(t_i).
    pub identity_failures: Vec<(usize, usize)>,
    /// Pairs where a supplied X-commutation constant disagrees with the data.
    pub commutation_failures: Vec<(usize, usize)>,
}

impl ConsistencyReport {
    pub fn passes(&self) -> bool {
        self.noncommuting.is_empty() && self.identity_failures.is_empty() && self.commutation_failures.is_empty()
    }
}

pub fn check_consistency(p: &TgwaPresentation) -> ConsistencyReport {
    let mut rep = ConsistencyReport::default();
    for i in 0..p.n {
        for j in i + 1..p.n {
            if p.sigma[i].compose(&p.sigma[j]) != p.sigma[j].compose(&p.sigma[i]) {
                rep.noncommuting.push((i + 1, j + 1));
            }
            let lhs = p.t[i].mul(&p.t[j]);
            let rhs = p.sigma_inv[i]
                .apply(&p.t[j])
                .mul(&p.sigma_inv[j].apply(&p.t[i]))
                .scale(&p.mu[i][j].mul(&p.mu[j][i]));
            if lhs != rhs {
                rep.identity_failures.push((i + 1, j + 1));
            }
        }
    }
    if let Some(c) = &p.x_commutation {
        // X_iX_j t_i = X_jX_i μ_ji σ_j⁻¹(t_i) forces c_ij σ_j(t_i) = μ_ji t_i
        for i in 0..p.n {
            for j in 0..p.n {
                if i == j {
                    continue;
                }
                let lhs = p.sigma[j].apply(&p.t[i]).scale(&c[i][j]);
                let rhs = p.t[i].scale(&p.mu[j][i]);
                if lhs != rhs {
                    rep.commutation_failures.push((i + 1, j + 1));
                }
            }
        }
    }
    rep
}

/// Quantized Weyl algebra of rank n with parameters q_i and λ_ij (i < j);
/// λ_ji = λ_ij⁻¹.
pub fn qwa(q: &[Scalar], lambda_upper: &[Vec<Scalar>]) -> Result<TgwaPresentation> {
    let n = q.len();
    let lam = full_lambda(n, lambda_upper)?;
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        let mut lin = Matrix::identity(n);
        let mut cst = vec![Scalar::zero(); n];
        // σ_i(t_i) = 1 + q_i t_i + Σ_{k<i} (q_k − 1) t_k
        for k in 0..i {
            lin.rows[i][k] = q[k].sub(&Scalar::one());
        }
        lin.rows[i][i] = q[i].clone();
        cst[i] = Scalar::one();
        for j in i + 1..n {
            lin.rows[j][j] = q[i].clone();
        }
        sigma.push(Affine { lin, cst });
    }
    let t = (0..n).map(|i| RElem::t(n, i)).collect();
    let mut mu = vec![vec![Scalar::one(); n]; n];
    let mut c = vec![vec![Scalar::one(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            mu[i][j] = lam[j][i].clone();
            mu[j][i] = q[i].mul(&lam[i][j]);
            c[i][j] = q[i].mul(&lam[i][j]);
            c[j][i] = c[i][j].inv()?;
        }
    }
    TgwaPresentation::new(sigma, t, mu, Some(c))
}

fn full_lambda(n: usize, upper: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let mut lam = vec![vec![Scalar::one(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = upper.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Scalar::one);
            lam[j][i] = v.inv()?;
            lam[i][j] = v;
        }
    }
    Ok(lam)
}

/// QWA of rank n with parameters read from `env` as `q{i}` and `l{i}{j}`.
pub fn qwa_from_env(env: &ParameterEnv, n: usize) -> Result<TgwaPresentation> {
    let q: Vec<Scalar> = (1..=n).map(|i| env.get(&format!("q{i}"))).collect();
    let lam: Vec<Vec<Scalar>> =
        (1..=n).map(|i| (1..=n).map(|j| if i < j { env.get(&format!("l{i}{j}")) } else { Scalar::one() }).collect()).collect();
    qwa(&q, &lam)
}

/// The Q_ij-CCR algebra: σ_i(t_i) = 1 + Q_ii t_i, μ_ij = Q_ji, Q_ijQ_ji = 1.
pub fn ccr(qm: &[Vec<Scalar>]) -> Result<TgwaPresentation> {
    let n = qm.len();
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        let mut lin = Matrix::identity(n);
        lin.rows[i][i] = qm[i][i].clone();
        let mut cst = vec![Scalar::zero(); n];
        cst[i] = Scalar::one();
        sigma.push(Affine { lin, cst });
    }
    let t = (0..n).map(|i| RElem::t(n, i)).collect();
    let mut mu = vec![vec![Scalar::one(); n]; n];
    let mut c = vec![vec![Scalar::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                if !qm[i][j].mul(&qm[j][i]).is_one() {
                    return Err(Error::InvalidPresentation(format!("Q_{0}{1}·Q_{1}{0} ≠ 1", i + 1, j + 1)));
                }
                mu[i][j] = qm[j][i].clone();
                c[i][j] = qm[i][j].clone();
            }
        }
    }
    TgwaPresentation::new(sigma, t, mu, Some(c))
}

/// Rank two, σ_i(t_j) = −t_j, μ_12 = μ_21 = 1; X_1X_2 = −X_2X_1.
pub fn sign_flip_rank2() -> Result<TgwaPresentation> {
    let n = 2;
    let neg = Affine { lin: Matrix::identity(n).scale(&Scalar::from_int(-1)), cst: vec![Scalar::zero(); n] };
    let mu = vec![vec![Scalar::one(); n]; n];
    let m1 = Scalar::from_int(-1);
    let c = vec![vec![Scalar::one(), m1.clone()], vec![m1, Scalar::one()]];
    TgwaPresentation::new(vec![neg.clone(), neg], vec![RElem::t(n, 0), RElem::t(n, 1)], mu, Some(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qwa2() -> TgwaPresentation {
        qwa(&[Scalar::var("q1"), Scalar::var("q2")], &[vec![Scalar::one(), Scalar::var("l12")]]).unwrap()
    }

    #[test]
    fn presets_are_consistent() {
        assert!(check_consistency(&qwa2()).passes());
        let q3: Vec<Scalar> = (1..=3).map(|i| Scalar::var(&format!("q{i}"))).collect();
        let l: Vec<Vec<Scalar>> =
            (1..=3).map(|i| (1..=3).map(|j| Scalar::var(&format!("l{i}{j}"))).collect()).collect();
        assert!(check_consistency(&qwa(&q3, &l).unwrap()).passes());
        let qm = vec![
            vec![Scalar::var("a"), Scalar::var("b")],
            vec![Scalar::var("b").inv().unwrap(), Scalar::var("c")],
        ];
        assert!(check_consistency(&ccr(&qm).unwrap()).passes());
        assert!(check_consistency(&sign_flip_rank2().unwrap()).passes());
    }

    #[test]
    fn broken_mu_is_reported() {
        let mut p = qwa2();
        p.mu[0][1] = p.mu[0][1].mul(&Scalar::from_int(2));
        let r = check_consistency(&p);
        assert_eq!(r.identity_failures, vec![(1, 2)]);
    }

    #[test]
    fn single_step_point_action() {
        // σ_1(t_1 − α) has zero (α − 1)/q_1
        let p = qwa2();
        let a = vec![Scalar::var("a1"), Scalar::var("a2")];
        let b = p.sigma_point(&[1, 0], &a);
        let q1 = Scalar::var("q1");
        assert_eq!(b[0], a[0].sub(&Scalar::one()).div(&q1).unwrap());
        assert_eq!(p.sigma_point(&[-1, 0], &b), a);
    }
}
