//! The quantized Weyl algebra together with its parameter values.

use std::collections::BTreeMap;

use super::presentation::{qwa, TgwaPresentation};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::scalar::{ParameterEnv, Scalar};

/// QWA of rank n: parameters q_i, λ_ij (full matrix, λ_ji = λ_ij⁻¹) and the
/// induced presentation.
#[derive(Clone, Debug)]
pub struct QwaAlgebra {
    pub env: ParameterEnv,
    pub q: Vec<Scalar>,
    pub lambda: Vec<Vec<Scalar>>,
    pub presentation: TgwaPresentation,
}

impl QwaAlgebra {
    pub fn new(env: ParameterEnv, q: Vec<Scalar>, lambda_upper: &[Vec<Scalar>]) -> Result<Self> {
        if q.iter().any(|x| x.is_one()) {
            return Err(Error::QEqualsOne);
        }
        if q.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidPresentation("q_i must be nonzero".into()));
        }
        let presentation = qwa(&q, lambda_upper)?;
        let n = q.len();
        let mut lambda = vec![vec![Scalar::one(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = lambda_upper.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Scalar::one);
                lambda[j][i] = v.inv()?;
                lambda[i][j] = v;
            }
        }
        Ok(QwaAlgebra { env, q, lambda, presentation })
    }

    /// Parameters read from `env` as `q{i}` and `l{i}{j}`.
    pub fn from_env(env: ParameterEnv, n: usize) -> Result<Self> {
        let q: Vec<Scalar> = (1..=n).map(|i| env.get(&format!("q{i}"))).collect();
        let lam: Vec<Vec<Scalar>> = (1..=n)
            .map(|i| (1..=n).map(|j| if i < j { env.get(&format!("l{i}{j}")) } else { Scalar::one() }).collect())
            .collect();
        Self::new(env, q, &lam)
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn units(&self) -> UnitGroup {
        UnitGroup::new(self.env.n)
    }
}

/// The group ⟨η⟩ × ⟨free parameters⟩ of unit monomials, with η of order
/// M = lcm(2, N) generating all roots of unity in ℚ(ε_N).
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub m: u32,
    eta: Scalar,
}

impl UnitGroup {
    pub fn new(n: u32) -> Self {
        let e = Scalar::root(n, 1);
        if n.is_multiple_of(2) {
            UnitGroup { m: n, eta: e }
        } else {
            UnitGroup { m: 2 * n, eta: e.neg() }
        }
    }

    pub fn eta(&self) -> &Scalar {
        &self.eta
    }

    /// (k, exps) with s = η^k·∏ x^{exps[x]}.
    pub fn log(&self, s: &Scalar) -> Result<(i64, BTreeMap<String, i64>)> {
        let (c, exps) = s
            .unit_monomial()
            .ok_or_else(|| Error::UnsupportedParameter(format!("{s} is not a unit monomial")))?;
        let c = Scalar::from_cyclo(c);
        let mut p = Scalar::one();
        for k in 0..self.m {
            if p == c {
                return Ok((k as i64, exps));
            }
            p = p.mul(&self.eta);
        }
        Err(Error::UnsupportedParameter(format!("{s}: coefficient is not a root of unity in Q(e)")))
    }

    /// Matrices (torsion row, free rows) so that ∏ s_i^{g_i} = 1 iff
    /// torsion·g ≡ 0 mod M and free·g = 0.
    pub fn exponent_matrices(&self, s: &[Scalar]) -> Result<(IntMatrix, IntMatrix)> {
        let logs: Vec<_> = s.iter().map(|x| self.log(x)).collect::<Result<_>>()?;
        let mut vars: Vec<&String> = logs.iter().flat_map(|(_, e)| e.keys()).collect();
        vars.sort();
        vars.dedup();
        let tors = vec![logs.iter().map(|(k, _)| *k).collect::<Vec<_>>()];
        let free: Vec<Vec<i64>> =
            vars.iter().map(|v| logs.iter().map(|(_, e)| e.get(*v).copied().unwrap_or(0)).collect()).collect();
        Ok((IntMatrix::from_i64(&tors, s.len()), IntMatrix::from_i64(&free, s.len())))
    }
}
