//! Integer lattices: Hermite normal form, intersections, kernels into
//! ℤ/N ⊕ ℤ^m, skew normal form, and the rank-two box transversal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    cols: usize,
}

/// JSON number when it fits in i64, decimal string otherwise.
fn int_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<serde_json::Value>> = self.rows.iter().map(|r| r.iter().map(int_json).collect()).collect();
        v.serialize(s)
    }
}

fn ser_ints<S: serde::Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(int_json).collect::<Vec<_>>().serialize(s)
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols }
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn zeros(r: usize, c: usize) -> Self {
        Self::new(vec![vec![BigInt::zero(); c]; r], c)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for i in 0..self.nrows() {
            for j in 0..self.cols {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.nrows());
        let mut out = Self::zeros(self.nrows(), o.cols);
        for i in 0..self.nrows() {
            for k in 0..self.cols {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.rows[i][j] += &self.rows[i][k] * &o.rows[k][j];
                }
            }
        }
        out
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.nrows() == self.cols
            && (0..self.cols).all(|i| (0..self.cols).all(|j| self.rows[i][j] == -&self.rows[j][i]))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.cols;
        assert_eq!(n, self.nrows());
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

/// Subgroup of ℤⁿ with its row Hermite normal form basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub ambient_rank: usize,
    pub basis: IntMatrix,
}

impl Lattice {
    pub fn full(n: usize) -> Self {
        hnf(&IntMatrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Lattice { ambient_rank: n, basis: IntMatrix::zeros(0, n) }
    }

    pub fn from_rows(rows: &[Vec<i64>], n: usize) -> Self {
        hnf(&IntMatrix::from_i64(rows, n))
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        self.basis.to_i64()
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        let mut r: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for row in self.basis.rows() {
            let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
            if r[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, rem) = r[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            for j in 0..r.len() {
                r[j] -= &q * &row[j];
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut r: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let mut out = Vec::with_capacity(self.rank());
        for row in self.basis.rows() {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            if r[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = r[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return None;
            }
            for j in 0..r.len() {
                r[j] -= &q * &row[j];
            }
            out.push(q.to_i64()?);
        }
        r.iter().all(|x| x.is_zero()).then_some(out)
    }

    /// Sublattice of vectors whose listed coordinates vanish.
    pub fn with_zero_coordinates(&self, coords: &[usize]) -> Self {
        if coords.is_empty() {
            return self.clone();
        }
        let n = self.ambient_rank;
        let rows: Vec<Vec<i64>> = (0..n)
            .filter(|j| !coords.contains(j))
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                e
            })
            .collect();
        intersect(self, &Lattice::from_rows(&rows, n))
    }
}

/// Row HNF `h` of `m` and unimodular `u` with u·m = h (h keeps zero rows).
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let nr = m.nrows();
    let nc = m.ncols();
    let mut a = m.rows.clone();
    let mut u = IntMatrix::identity(nr).rows;
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        loop {
            let piv = (r..nr).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = piv else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..nr {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in 0..nc {
                    let t = &q * &a[r][j];
                    a[i][j] -= t;
                }
                for j in 0..nr {
                    let t = &q * &u[r][j];
                    u[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in 0..nc {
                let t = &q * &a[r][j];
                a[i][j] -= t;
            }
            for j in 0..nr {
                let t = &q * &u[r][j];
                u[i][j] -= t;
            }
        }
        r += 1;
    }
    (IntMatrix::new(a, nc), IntMatrix::new(u, nr))
}

pub fn hnf(generators: &IntMatrix) -> Lattice {
    let (h, _) = hnf_with_transform(generators);
    let rows: Vec<Vec<BigInt>> = h.rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    Lattice { ambient_rank: generators.ncols(), basis: IntMatrix::new(rows, generators.ncols()) }
}

/// Basis of {u : u·m = 0}.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf_with_transform(m);
    let rows: Vec<Vec<BigInt>> = (0..h.nrows())
        .filter(|&i| h.rows[i].iter().all(|x| x.is_zero()))
        .map(|i| u.rows[i].clone())
        .collect();
    IntMatrix::new(rows, m.nrows())
}

pub fn intersect(a: &Lattice, b: &Lattice) -> Lattice {
    assert_eq!(a.ambient_rank, b.ambient_rank);
    let n = a.ambient_rank;
    if a.rank() == 0 || b.rank() == 0 {
        return Lattice::zero(n);
    }
    let mut stacked = a.basis.rows.clone();
    stacked.extend(b.basis.rows.iter().map(|r| r.iter().map(|x| -x).collect()));
    let k = left_kernel(&IntMatrix::new(stacked, n));
    let ra = a.rank();
    let mut gens = Vec::new();
    for row in k.rows() {
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in row[..ra].iter().enumerate() {
            for j in 0..n {
                v[j] += c * &a.basis.rows[i][j];
            }
        }
        gens.push(v);
    }
    hnf(&IntMatrix::new(gens, n))
}

/// {g ∈ ℤⁿ : torsion·g ≡ 0 (mod N), free·g = 0}.
pub fn kernel_of_unit_map(torsion: &IntMatrix, n_mod: i64, free: &IntMatrix) -> Lattice {
    let n = torsion.ncols().max(free.ncols());
    let p = torsion.nrows();
    let m = free.nrows();
    // rows: g-coordinates then slack variables y with torsion·g − N·y = 0
    let mut rows = Vec::with_capacity(n + p);
    for i in 0..n {
        let mut r = Vec::with_capacity(p + m);
        for t in 0..p {
            r.push(torsion.rows[t][i].clone());
        }
        for f in 0..m {
            r.push(free.rows[f][i].clone());
        }
        rows.push(r);
    }
    for t in 0..p {
        let mut r = vec![BigInt::zero(); p + m];
        r[t] = BigInt::from(-n_mod);
        rows.push(r);
    }
    if p + m == 0 {
        return Lattice::full(n);
    }
    let k = left_kernel(&IntMatrix::new(rows, p + m));
    let gens: Vec<Vec<BigInt>> = k.rows.iter().map(|r| r[..n].to_vec()).collect();
    hnf(&IntMatrix::new(gens, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewNormalForm {
    #[serde(rename = "U")]
    pub u: IntMatrix,
    #[serde(serialize_with = "ser_ints")]
    pub thetas: Vec<BigInt>,
    pub laurent_rank: usize,
}

impl SkewNormalForm {
    /// The block matrix the transform should produce.
    pub fn normal_matrix(&self) -> IntMatrix {
        let k = self.u.nrows();
        let mut m = IntMatrix::zeros(k, k);
        for (i, t) in self.thetas.iter().enumerate() {
            m.rows[2 * i][2 * i + 1] = t.clone();
            m.rows[2 * i + 1][2 * i] = -t;
        }
        m
    }
}

struct Congruence {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
}

impl Congruence {
    /// e_k ← e_k + q·e_l.
    fn addmul(&mut self, k: usize, l: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let n = self.a.len();
        for x in 0..n {
            let t = q * &self.a[x][l];
            self.a[x][k] += t;
            let t = q * &self.u[x][l];
            self.u[x][k] += t;
        }
        for x in 0..n {
            let t = q * &self.a[l][x];
            self.a[k][x] += t;
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        for r in self.u.iter_mut() {
            r.swap(i, j);
        }
    }
}

pub fn skew_normal_form(theta: &IntMatrix) -> Result<SkewNormalForm> {
    if !theta.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    let k = theta.ncols();
    let mut c = Congruence { a: theta.rows.clone(), u: IntMatrix::identity(k).rows };
    let mut thetas = Vec::new();
    let mut s = 0;
    while s + 1 < k {
        let mut best: Option<(usize, usize)> = None;
        for i in s..k {
            for j in s..k {
                if i != j && !c.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| c.a[i][j].abs() < c.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
            }
        }
        let Some((i, j)) = best else { break };
        c.swap(s, i);
        let j = if j == s { i } else { j };
        c.swap(s + 1, j);
        if c.a[s][s + 1].is_negative() {
            c.swap(s, s + 1);
        }
        let p = c.a[s][s + 1].clone();
        let mut clean = true;
        for x in s + 2..k {
            let q = -(c.a[s][x].div_floor(&p));
            c.addmul(x, s + 1, &q);
            let q = c.a[s + 1][x].div_floor(&p);
            c.addmul(x, s, &q);
            if !c.a[s][x].is_zero() || !c.a[s + 1][x].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility repair: pull a non-multiple into row s
        let bad = (s + 2..k).flat_map(|i| (s + 2..k).map(move |j| (i, j))).find(|&(i, j)| !c.a[i][j].is_multiple_of(&p));
        if let Some((i, _)) = bad {
            c.addmul(s, i, &BigInt::one());
            continue;
        }
        thetas.push(p);
        s += 2;
    }
    let r = thetas.len();
    let out = SkewNormalForm { u: IntMatrix::new(c.u, k), thetas, laurent_rank: k - 2 * r };
    debug_assert_eq!(out.u.transpose().mul(theta).mul(&out.u), out.normal_matrix());
    Ok(out)
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    use num_rational::BigRational;
    let n = m.nrows();
    let mut a: Vec<Vec<BigRational>> =
        m.rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::DegenerateBasis)?;
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].recip();
        for j in 0..n {
            a[c][j] = &a[c][j] * &piv;
            inv[c][j] = &inv[c][j] * &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                    let t = &f * &inv[c][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    if inv.iter().flatten().any(|x| !x.is_integer()) {
        return Err(Error::DegenerateBasis);
    }
    Ok(IntMatrix::new(inv.into_iter().map(|r| r.into_iter().map(|x| x.to_integer()).collect()).collect(), n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct BoxReps {
    pub d1: i64,
    pub d2: i64,
    pub s: i64,
    pub a2p: i64,
    pub b2p: i64,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Box transversal {0..d1−1}×{0..d2−1} for ℤ²/(ℤa ⊕ ℤb).
pub fn box_reps(a: (i64, i64), b: (i64, i64)) -> Result<BoxReps> {
    let d = a.0 * b.1 - b.0 * a.1;
    if d <= 0 || a.0 < 0 || b.0 < 0 {
        return Err(Error::DegenerateBasis);
    }
    let (d2, x, y) = ext_gcd(a.1, b.1);
    let d1 = d / d2;
    let s0 = -x * a.0 - y * b.0;
    // shifting (a2', b2') by p·(b2/d2, −a2/d2) changes s by −p·d1
    let p = s0.div_euclid(d1);
    let a2p = x + p * b.1 / d2;
    let b2p = y - p * a.1 / d2;
    let s = -a2p * a.0 - b2p * b.0;
    debug_assert!((0..d1).contains(&s));
    Ok(BoxReps { d1, d2, s, a2p, b2p })
}

impl BoxReps {
    /// Representative in the box of g modulo the lattice.
    pub fn reduce(&self, g: (i64, i64)) -> (i64, i64) {
        let q = g.1.div_euclid(self.d2);
        let j = g.1.rem_euclid(self.d2);
        // (0, d2) ≡ (s, 0)
        let i = (g.0 + q * self.s).rem_euclid(self.d1);
        (i, j)
    }
}

/// Choose (a, b) from a rank-two lattice with a1, b1 ≥ 0 and det > 0,
/// lexicographically smallest among sign flips and swaps of the HNF rows.
pub fn normalize_rank2_basis(l: &Lattice) -> Result<((i64, i64), (i64, i64))> {
    if l.ambient_rank != 2 || l.rank() != 2 {
        return Err(Error::DegenerateBasis);
    }
    let r = l.rows_i64();
    let r1 = (r[0][0], r[0][1]);
    let r2 = (r[1][0], r[1][1]);
    let mut cands = Vec::new();
    for (x, y) in [(r1, r2), (r2, r1)] {
        for sx in [1, -1] {
            for sy in [1, -1] {
                let a = (sx * x.0, sx * x.1);
                let b = (sy * y.0, sy * y.1);
                if a.0 >= 0 && b.0 >= 0 && a.0 * b.1 - b.0 * a.1 > 0 {
                    cands.push((a, b));
                }
            }
        }
    }
    cands.into_iter().min().ok_or(Error::DegenerateBasis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(l: &Lattice) -> Vec<Vec<i64>> {
        l.rows_i64()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(rows(&Lattice::from_rows(&[vec![2, 0], vec![0, 3]], 2)), vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(rows(&Lattice::from_rows(&[vec![2, 4], vec![1, 1]], 2)), vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(Lattice::from_rows(&[], 3).rank(), 0);
    }

    #[test]
    fn intersect_examples() {
        let a = Lattice::from_rows(&[vec![3, 0], vec![0, 1]], 2);
        let b = kernel_of_unit_map(&IntMatrix::from_i64(&[vec![1, 1]], 2), 3, &IntMatrix::zeros(0, 2));
        assert_eq!(rows(&intersect(&a, &b)), vec![vec![3, 0], vec![0, 3]]);
        assert_eq!(intersect(&Lattice::full(2), &a), a);
        assert_eq!(intersect(&a, &Lattice::zero(2)).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_of_unit_map(&IntMatrix::from_i64(&[vec![1, 0]], 2), 3, &IntMatrix::zeros(0, 2));
        assert_eq!(rows(&k), vec![vec![3, 0], vec![0, 1]]);
        let k = kernel_of_unit_map(&IntMatrix::zeros(0, 2), 1, &IntMatrix::zeros(0, 2));
        assert_eq!(k, Lattice::full(2));
        let k = kernel_of_unit_map(&IntMatrix::zeros(0, 2), 1, &IntMatrix::identity(2));
        assert_eq!(k.rank(), 0);
    }

    #[test]
    fn skew_examples() {
        let s = skew_normal_form(&IntMatrix::from_i64(&[vec![0, 2], vec![-2, 0]], 2)).unwrap();
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.thetas, vec![BigInt::from(2)]);
        let t = IntMatrix::from_i64(&[vec![0, 1, 2], vec![-1, 0, 3], vec![-2, -3, 0]], 3);
        let s = skew_normal_form(&t).unwrap();
        assert_eq!(s.thetas, vec![BigInt::one()]);
        assert_eq!(s.laurent_rank, 1);
        assert_eq!(s.u.transpose().mul(&t).mul(&s.u), s.normal_matrix());
        let s = skew_normal_form(&IntMatrix::zeros(4, 4)).unwrap();
        assert_eq!((s.thetas.len(), s.laurent_rank), (0, 4));
        assert_eq!(skew_normal_form(&IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]], 2)), Err(Error::NotSkewSymmetric));
    }

    #[test]
    fn box_examples() {
        assert_eq!(box_reps((2, -2), (3, 2)).unwrap(), BoxReps { d1: 5, d2: 2, s: 2, a2p: -1, b2p: 0 });
        let b = box_reps((1, -1), (0, 3)).unwrap();
        assert_eq!((b.d1, b.d2, b.s), (3, 1, 1));
        assert_eq!(box_reps((1, 1), (2, 2)), Err(Error::DegenerateBasis));
    }

    #[test]
    fn normalized_basis_valid() {
        let l = Lattice::from_rows(&[vec![2, -2], vec![3, 2]], 2);
        let (a, b) = normalize_rank2_basis(&l).unwrap();
        assert!(a.0 >= 0 && b.0 >= 0 && a.0 * b.1 - b.0 * a.1 == 10);
        assert!(l.contains(&[a.0, a.1]) && l.contains(&[b.0, b.1]));
    }
}
