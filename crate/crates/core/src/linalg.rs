//! Dense matrices over [`Scalar`].

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(r: usize, c: usize) -> Self {
        Matrix { rows: vec![vec![Scalar::zero(); c]; r] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Scalar::one();
        }
        m
    }

    pub fn diagonal(d: Vec<Scalar>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.rows[i][i] = x;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let (n, k, m) = (self.nrows(), self.ncols(), o.ncols());
        assert_eq!(k, o.nrows());
        let mut out = Self::zeros(n, m);
        for i in 0..n {
            for l in 0..k {
                let a = &self.rows[i][l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = &o.rows[l][j];
                    if !b.is_zero() {
                        out.rows[i][j] = out.rows[i][j].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect()).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows.iter().map(|r| r.iter().map(|x| x.mul(s)).collect()).collect() }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows.iter().map(|r| r.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
    }

    pub fn pow(&self, k: i64) -> Result<Matrix> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity(self.nrows());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.nrows();
        assert_eq!(n, self.ncols());
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::DivisionByZero)?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].inv()?;
            for j in 0..n {
                a[c][j] = a[c][j].mul(&piv);
                inv[c][j] = inv[c][j].mul(&piv);
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    let t = f.mul(&a[c][j]);
                    a[i][j] = a[i][j].sub(&t);
                    let t = f.mul(&inv[c][j]);
                    inv[i][j] = inv[i][j].sub(&t);
                }
            }
        }
        Ok(Matrix { rows: inv })
    }
}

/// Incremental row-echelon basis for span computations.
#[derive(Clone, Debug, Default)]
pub struct EchelonSpan {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for j in 0..v.len() {
                if !r[j].is_zero() {
                    v[j] = v[j].sub(&f.mul(&r[j]));
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        // keep rows fully reduced against the new pivot
        for (_, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for j in 0..r.len() {
                if !v[j].is_zero() {
                    r[j] = r[j].sub(&f.mul(&v[j]));
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let q = Scalar::var("q");
        let m = Matrix { rows: vec![vec![q.clone(), Scalar::one()], vec![Scalar::from_int(2), Scalar::one()]] };
        let i = m.inverse().unwrap();
        assert_eq!(m.mul(&i), Matrix::identity(2));
        assert!(Matrix::zeros(2, 2).inverse().is_err());
    }

    #[test]
    fn span_dimension() {
        let mut s = EchelonSpan::new();
        assert!(s.insert(vec![Scalar::one(), Scalar::from_int(2)]));
        assert!(!s.insert(vec![Scalar::from_int(3), Scalar::from_int(6)]));
        assert!(s.insert(vec![Scalar::zero(), Scalar::one()]));
        assert_eq!(s.dim(), 2);
    }
}
