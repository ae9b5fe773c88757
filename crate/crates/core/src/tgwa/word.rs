//! Words in the generators, the star map, reduction to Y…X·r form, and
//! normalization to coeff·Z_1^{g_1}…Z_n^{g_n}·r(t).

use std::fmt;

use serde::Serialize;

use super::presentation::TgwaPresentation;
use super::relem::RElem;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X(usize),
    Y(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::X(i) | Letter::Y(i) => i,
        }
    }

    pub fn star(self) -> Letter {
        match self {
            Letter::X(i) => Letter::Y(i),
            Letter::Y(i) => Letter::X(i),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(i) => write!(f, "X{}", i + 1),
            Letter::Y(i) => write!(f, "Y{}", i + 1),
        }
    }
}

/// A word Z_1⋯Z_k; letters use 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parse `X1 Y2 X1` (spaces optional).
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < cs.len() {
            let kind = cs[i];
            i += 1;
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let k: usize = cs[st..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse(format!("missing index in word \"{s}\"")))?;
            if k == 0 {
                return Err(Error::Parse("generator indices start at 1".into()));
            }
            out.push(match kind {
                'X' | 'x' => Letter::X(k - 1),
                'Y' | 'y' => Letter::Y(k - 1),
                _ => return Err(Error::Parse(format!("unknown generator '{kind}'"))),
            });
        }
        Ok(Word(out))
    }

    /// a_g = Z_1^{g_1}⋯Z_n^{g_n} with Z^k = X^k (k ≥ 0), Y^{−k} (k < 0).
    pub fn canonical(g: &[i64]) -> Self {
        let mut out = Vec::new();
        for (i, &k) in g.iter().enumerate() {
            let l = if k >= 0 { Letter::X(i) } else { Letter::Y(i) };
            out.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
        }
        Word(out)
    }

    pub fn degree(&self, n: usize) -> Vec<i64> {
        let mut g = vec![0; n];
        for l in &self.0 {
            match *l {
                Letter::X(i) => g[i] += 1,
                Letter::Y(i) => g[i] -= 1,
            }
        }
        g
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.iter().copied().cycle().take(self.0.len() * k).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// a* = Z_k*⋯Z_1*.
pub fn star(w: &Word) -> Word {
    Word(w.0.iter().rev().map(|l| l.star()).collect())
}

/// Working form coeff · Y_{ys} X_{xs} · ∏ r.
#[derive(Clone, Debug)]
struct Reducer<'a> {
    p: &'a TgwaPresentation,
    coeff: Scalar,
    ys: Vec<usize>,
    xs: Vec<usize>,
    r: Vec<RElem>,
}

impl<'a> Reducer<'a> {
    fn new(p: &'a TgwaPresentation) -> Self {
        Reducer { p, coeff: Scalar::one(), ys: Vec::new(), xs: Vec::new(), r: Vec::new() }
    }

    fn push(&mut self, l: Letter) {
        let p = self.p;
        match l {
            Letter::Y(j) => {
                // r·Y_j = Y_j·σ_j(r)
                for f in self.r.iter_mut() {
                    *f = p.sigma[j].apply(f);
                }
                match self.xs.iter().rposition(|&x| x == j) {
                    None => {
                        for &x in &self.xs {
                            self.coeff = self.coeff.mul(&p.mu[x][j]);
                        }
                        self.ys.push(j);
                    }
                    Some(v) => {
                        for &x in &self.xs[v + 1..] {
                            self.coeff = self.coeff.mul(&p.mu[x][j]);
                        }
                        // X_jY_j = σ_j(t_j), then carried right past the tail
                        let mut f = p.sigma[j].apply(&p.t[j]);
                        for &x in &self.xs[v + 1..] {
                            f = p.sigma_inv(x).apply(&f);
                        }
                        self.xs.remove(v);
                        self.r.push(f);
                    }
                }
            }
            Letter::X(j) => {
                // r·X_j = X_j·σ_j⁻¹(r)
                for f in self.r.iter_mut() {
                    *f = p.sigma_inv(j).apply(f);
                }
                let tail = |u: usize| self.ys[u + 1..].to_vec();
                let cancel = match self.ys.iter().rposition(|&y| y == j) {
                    // Y_j must pass later Y's, which needs their commutation constants
                    Some(u) if u + 1 == self.ys.len() || p.y_commutation().is_some() => Some(u),
                    _ => None,
                };
                match cancel {
                    None => self.xs.push(j),
                    Some(u) => {
                        // move Y_j right: past the later Y's, then past all X's;
                        // Y_jX_j = t_j then sits just left of the r-factors
                        let mut c = Scalar::one();
                        if let Some(yc) = p.y_commutation() {
                            for y in tail(u) {
                                c = c.mul(&yc[j][y]);
                            }
                        }
                        let mut d = Scalar::one();
                        for &x in &self.xs {
                            d = d.mul(&p.mu[x][j]);
                        }
                        self.coeff = self.coeff.mul(&c).div(&d).expect("μ is nonzero");
                        self.ys.remove(u);
                        self.r.push(p.t[j].clone());
                    }
                }
            }
        }
    }

    fn letters(&self) -> Vec<Letter> {
        self.ys.iter().map(|&i| Letter::Y(i)).chain(self.xs.iter().map(|&i| Letter::X(i))).collect()
    }
}

fn product(n: usize, fs: &[RElem]) -> RElem {
    fs.iter().fold(RElem::one(n), |acc, f| acc.mul(f))
}

/// Rewriting w = coeff · reduced · r with reduced of the form Y…Y X…X.
pub fn reduce_word(w: &Word, p: &TgwaPresentation) -> (Word, RElem, Scalar) {
    let mut red = Reducer::new(p);
    for &l in &w.0 {
        red.push(l);
    }
    (Word(red.letters()), product(p.n, &red.r), red.coeff)
}

/// coeff · Z_1^{g_1}⋯Z_n^{g_n} · r(t); `r_factors` multiply to r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalWord {
    pub coeff: Scalar,
    pub degree: Vec<i64>,
    pub r_factors: Vec<RElem>,
}

impl CanonicalWord {
    pub fn r_factor(&self) -> RElem {
        product(self.degree.len(), &self.r_factors)
    }

    /// coeff · r(α): the scalar by which the word acts on M_m followed by a_g.
    pub fn eval_at(&self, alpha: &[Scalar]) -> Scalar {
        let mut acc = self.coeff.clone();
        for f in &self.r_factors {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul(&f.eval(alpha));
        }
        acc
    }

    /// Same element (compared through the expanded r-factor).
    pub fn equals(&self, o: &CanonicalWord) -> bool {
        self.degree == o.degree && self.r_factor().scale(&self.coeff) == o.r_factor().scale(&o.coeff)
    }
}

impl Serialize for CanonicalWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CanonicalWord", 3)?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("r_factor", &self.r_factor().to_string())?;
        st.end()
    }
}

/// Normal form of a word in a scalar-graded presentation.
pub fn normalize(w: &Word, p: &TgwaPresentation) -> Result<CanonicalWord> {
    let (Some(xc), Some(yc)) = (&p.x_commutation, p.y_commutation()) else {
        return Err(Error::NotScalarGraded("presentation has no X-commutation constants".into()));
    };
    let mut red = Reducer::new(p);
    for &l in &w.0 {
        red.push(l);
    }
    let mut letters = red.letters();
    let mut coeff = red.coeff;
    // stable bubble sort by index
    let len = letters.len();
    for pass in 0..len {
        let mut swapped = false;
        for k in 0..len.saturating_sub(1 + pass) {
            let (a, b) = (letters[k], letters[k + 1]);
            if a.index() <= b.index() {
                continue;
            }
            let c = match (a, b) {
                (Letter::X(i), Letter::X(j)) => xc[i][j].clone(),
                (Letter::Y(i), Letter::Y(j)) => yc[i][j].clone(),
                (Letter::X(i), Letter::Y(j)) => p.mu[i][j].clone(),
                (Letter::Y(j), Letter::X(i)) => p.mu[i][j].inv()?,
            };
            coeff = coeff.mul(&c);
            letters.swap(k, k + 1);
            swapped = true;
        }
        if !swapped {
            break;
        }
    }
    let degree = Word(letters).degree(p.n);
    Ok(CanonicalWord { coeff, degree, r_factors: red.r })
}

/// Value of a_g^* a_g at the point α.
pub fn pair_at(g: &[i64], alpha: &[Scalar], p: &TgwaPresentation) -> Result<Scalar> {
    let a = Word::canonical(g);
    let cw = normalize(&star(&a).concat(&a), p)?;
    Ok(cw.eval_at(alpha))
}

#[cfg(test)]
mod tests {
    use super::super::presentation::qwa;
    use super::*;

    fn qwa2() -> TgwaPresentation {
        qwa(&[Scalar::var("q1"), Scalar::var("q2")], &[vec![Scalar::one(), Scalar::var("l12")]]).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&w("X1 X2")), w("Y2 Y1"));
        assert_eq!(star(&Word::empty()), Word::empty());
        assert_eq!(star(&w("Y1 X2")), w("Y2 X1"));
    }

    #[test]
    fn reduce_examples() {
        let p = qwa2();
        let (r, f, c) = reduce_word(&w("X1 Y1"), &p);
        assert_eq!(r, Word::empty());
        assert_eq!(f, p.sigma[0].apply(&p.t[0]));
        assert!(c.is_one());
        let (r, f, c) = reduce_word(&w("X2 Y1"), &p);
        assert_eq!(r, w("Y1 X2"));
        assert_eq!(f, RElem::one(2));
        assert_eq!(c, p.mu[1][0]);
        let (r, f, c) = reduce_word(&w("Y2 X2"), &p);
        assert_eq!((r, f, c), (Word::empty(), RElem::t(2, 1), Scalar::one()));
    }

    #[test]
    fn normalize_examples() {
        let p = qwa2();
        let l12 = Scalar::var("l12");
        let q1 = Scalar::var("q1");
        let n = normalize(&w("Y2 X1"), &p).unwrap();
        assert_eq!((n.coeff.clone(), n.degree.clone()), (l12.clone(), vec![1, -1]));
        assert_eq!(n.r_factor(), RElem::one(2));
        let n = normalize(&w("Y1 X1"), &p).unwrap();
        assert_eq!(n.degree, vec![0, 0]);
        assert_eq!(n.r_factor().scale(&n.coeff), RElem::t(2, 0));
        let n = normalize(&w("X2 X1"), &p).unwrap();
        assert_eq!(n.coeff, q1.mul(&l12).inv().unwrap());
        assert_eq!(n.degree, vec![1, 1]);
    }

    #[test]
    fn pair_examples() {
        let p = qwa2();
        let (q1, lam) = (Scalar::var("q1"), Scalar::var("lam"));
        let one = Scalar::one();
        let n2 = vec![one.sub(&q1).inv().unwrap(), lam.clone()];
        assert_eq!(pair_at(&[1, 1], &n2, &p).unwrap(), lam.div(&one.sub(&q1)).unwrap());
        let a = vec![Scalar::var("a1"), Scalar::var("a2")];
        assert_eq!(pair_at(&[1, 0], &a, &p).unwrap(), a[0]);
        assert!(pair_at(&[0, 0], &a, &p).unwrap().is_one());
        let n0 = vec![one.sub(&q1).inv().unwrap(), Scalar::zero()];
        assert!(pair_at(&[0, 1], &n0, &p).unwrap().is_zero());
    }
}

#[cfg(test)]
mod cancel_tests {
    use super::super::presentation::qwa;
    use super::*;

    #[test]
    fn cancellation_across_other_letters() {
        let p = qwa(&[Scalar::var("q1"), Scalar::var("q2")], &[vec![Scalar::one(), Scalar::var("l12")]]).unwrap();
        let a = vec![Scalar::var("a1"), Scalar::var("a2")];
        let ev = |s: &str| normalize(&Word::parse(s).unwrap(), &p).unwrap().eval_at(&a);
        let (q1, l12) = (Scalar::var("q1"), Scalar::var("l12"));
        // Y2X1X2 = λ12·X1·t2
        assert_eq!(ev("Y2 X1 X2"), l12.mul(&a[1]));
        // Y2X2X1 = t2X1 = X1·σ1⁻¹(t2)
        let n = normalize(&Word::parse("Y2 X2 X1").unwrap(), &p).unwrap();
        assert_eq!(n.degree, vec![1, 0]);
        assert_eq!(n.eval_at(&a), a[1].div(&q1).unwrap());
        // both routes to X1·t2 agree
        assert_eq!(ev("Y2 X1 X2"), q1.mul(&l12).mul(&ev("Y2 X2 X1")));
    }
}
