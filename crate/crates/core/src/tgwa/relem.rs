//! Elements of R = F[t_1,…,t_n] and affine automorphisms of R.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Polynomial in t_1..t_n with [`Scalar`] coefficients; keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RElem {
    n: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl RElem {
    pub fn zero(n: usize) -> Self {
        RElem { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut r = Self::zero(n);
        if !c.is_zero() {
            r.terms.insert(vec![0; n], c);
        }
        r
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    /// The generator t_i (0-based).
    pub fn t(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut r = Self::zero(n);
        r.terms.insert(e, Scalar::one());
        r
    }

    /// Σ_k coeffs[k]·t_k + c.
    pub fn linear(coeffs: &[Scalar], c: Scalar) -> Self {
        let n = coeffs.len();
        let mut r = Self::constant(n, c);
        for (k, a) in coeffs.iter().enumerate() {
            r = r.add(&Self::t(n, k).scale(a));
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Degree ≤ 1: (coefficients of t_k, constant).
    pub fn as_linear(&self) -> Option<(Vec<Scalar>, Scalar)> {
        let mut lin = vec![Scalar::zero(); self.n];
        let mut c = Scalar::zero();
        for (e, a) in &self.terms {
            let d: u32 = e.iter().sum();
            match d {
                0 => c = a.clone(),
                1 => lin[e.iter().position(|&x| x == 1).unwrap()] = a.clone(),
                _ => return None,
            }
        }
        Some((lin, c))
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&e) {
            Some(x) => x.add(&c),
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        RElem { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(s))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Value at the point t = alpha.
    pub fn eval(&self, alpha: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = t.mul(&alpha[k].pow(x as i64).unwrap());
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// φ(self) for a ring endomorphism given by the images of the generators.
    pub fn substitute(&self, images: &[RElem]) -> Self {
        let mut acc = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut t = Self::constant(self.n, c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = t.mul(&images[k].pow(x));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// The scalar κ with self = κ·o, if any.
    pub fn ratio_to(&self, o: &Self) -> Option<Scalar> {
        let (e, c) = o.terms.iter().next()?;
        let k = self.terms.get(e)?.div(c).ok()?;
        (o.scale(&k) == *self).then_some(k)
    }
}

impl fmt::Display for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(k, &x)| if x == 1 { format!("t{}", k + 1) } else { format!("t{}^{x}", k + 1) })
                .collect();
            let cs = c.to_string();
            let simple = !cs.contains(' ') && !cs.contains('/');
            let coeff = if simple { cs } else { format!("({cs})") };
            parts.push(if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{coeff}*{}", mono.join("*"))
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Ring automorphism t_j ↦ Σ_k lin[j][k]·t_k + cst[j].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub lin: Matrix,
    pub cst: Vec<Scalar>,
}

impl Affine {
    pub fn identity(n: usize) -> Self {
        Affine { lin: Matrix::identity(n), cst: vec![Scalar::zero(); n] }
    }

    pub fn rank(&self) -> usize {
        self.cst.len()
    }

    /// Image of t_j.
    pub fn image(&self, j: usize) -> RElem {
        RElem::linear(&self.lin.rows[j], self.cst[j].clone())
    }

    pub fn images(&self) -> Vec<RElem> {
        (0..self.rank()).map(|j| self.image(j)).collect()
    }

    pub fn apply(&self, r: &RElem) -> RElem {
        r.substitute(&self.images())
    }

    /// self ∘ other: t ↦ self(other(t)).
    pub fn compose(&self, other: &Affine) -> Affine {
        let lin = other.lin.mul(&self.lin);
        let mut cst = other.lin.apply(&self.cst);
        for (c, d) in cst.iter_mut().zip(&other.cst) {
            *c = c.add(d);
        }
        Affine { lin, cst }
    }

    pub fn inverse(&self) -> Result<Affine> {
        let m = self.lin.inverse().map_err(|_| Error::InvalidPresentation("σ is not invertible".into()))?;
        let mc = m.apply(&self.cst);
        Ok(Affine { lin: m, cst: mc.into_iter().map(|x| x.neg()).collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_inverse_composes_to_identity() {
        let q = Scalar::var("q");
        let s = Affine {
            lin: Matrix { rows: vec![vec![q.clone(), Scalar::zero()], vec![Scalar::from_int(3), q.clone()]] },
            cst: vec![Scalar::one(), Scalar::from_int(2)],
        };
        let i = s.inverse().unwrap();
        assert_eq!(s.compose(&i), Affine::identity(2));
        assert_eq!(i.compose(&s), Affine::identity(2));
        let t1 = RElem::t(2, 0);
        assert_eq!(s.apply(&i.apply(&t1)), t1);
    }
}
