//! Sparse multivariate polynomials over ℚ(ε_N) with named variables.
//!
//! Terms are kept in graded-lexicographic order (variables compared by name,
//! alphabetically first is most significant). The gcd is the recursive
//! primitive-remainder-sequence algorithm over the coefficient field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::cyclo::Cyclo;

pub type Var = Arc<str>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: &str) -> Self {
        Monomial(vec![(Arc::from(v), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exp(&self, v: &str) -> u32 {
        self.0.iter().find(|(w, _)| &**w == v).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            if j == o.0.len() || (i < self.0.len() && self.0[i].0 < o.0[j].0) {
                out.push(self.0[i].clone());
                i += 1;
            } else if i == self.0.len() || o.0[j].0 < self.0[i].0 {
                out.push(o.0[j].clone());
                j += 1;
            } else {
                out.push((self.0[i].0.clone(), self.0[i].1 + o.0[j].1));
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    /// self / o if o divides self.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let mut out = Vec::new();
        let mut j = 0;
        for (v, e) in &self.0 {
            let mut d = 0;
            if j < o.0.len() && o.0[j].0 == *v {
                d = o.0[j].1;
                j += 1;
            } else if j < o.0.len() && o.0[j].0 < *v {
                return None;
            }
            if d > *e {
                return None;
            }
            if e - d > 0 {
                out.push((v.clone(), e - d));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .filter_map(|(v, e)| {
                    let f = o.exp(v);
                    (f > 0).then(|| (v.clone(), (*e).min(f)))
                })
                .collect(),
        )
    }

    fn without(&self, v: &str) -> (u32, Self) {
        let e = self.exp(v);
        (e, Monomial(self.0.iter().filter(|(w, _)| &**w != v).cloned().collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            c => return c,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((a, ea)), Some((b, eb))) => match a.cmp(b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        c => return c,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Cyclo>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Cyclo) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Cyclo::one())
    }

    pub fn var(v: &str) -> Self {
        Self::term(Monomial::var(v), Cyclo::one())
    }

    pub fn term(m: Monomial, c: Cyclo) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyclo)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Cyclo)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| v.clone())).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut big, small) = if self.len() >= o.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(n, x)| (n.mul(m), x.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    self.scale(&c.inv().unwrap())
                }
            }
        }
    }

    /// Exact quotient self / d, or `None` if d does not divide self.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        if d.len() == 1 {
            let inv = lc.inv().unwrap();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(lm)?, c.mul(&inv));
            }
            return Some(Poly { terms });
        }
        let lc_inv = lc.inv().unwrap();
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading() {
            let m = rm.div(lm)?;
            let c = rc.mul(&lc_inv);
            let t = Poly::term(m.clone(), c.clone());
            r = r.sub(&d.mul(&t));
            q.add_term(m, c);
        }
        Some(q)
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Coefficients as a univariate polynomial in `v`, index = degree.
    fn coeffs_in(&self, v: &str) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    fn from_coeffs_in(v: &str, cs: &[Poly]) -> Self {
        let mut out = Poly::zero();
        for (e, c) in cs.iter().enumerate() {
            let m = if e == 0 { Monomial::one() } else { Monomial(vec![(Arc::from(v), e as u32)]) };
            out = out.add(&c.mul_monomial(&m));
        }
        out
    }

    /// Greatest common monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_exact(&Poly::term(ma, Cyclo::one())).unwrap() };
    let b1 = if mb.is_one() { b.clone() } else { b.div_exact(&Poly::term(mb, Cyclo::one())).unwrap() };
    let core = gcd_nomono(&a1, &b1);
    core.mul_monomial(&mg).monic()
}

fn gcd_nomono(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() == 1 || b.len() == 1 {
        // a monomial without monomial content is a constant
        return Poly::one();
    }
    if a.monic() == b.monic() {
        return a.monic();
    }
    if b.div_exact(a).is_some() {
        return a.monic();
    }
    if a.div_exact(b).is_some() {
        return b.monic();
    }
    let va = a.vars();
    let vb = b.vars();
    let Some(x) = va.iter().find(|v| vb.contains(v)).cloned() else {
        return Poly::one();
    };
    let ca = a.coeffs_in(&x);
    let cb = b.coeffs_in(&x);
    let conta = content(&ca);
    let contb = content(&cb);
    let c = gcd(&conta, &contb);
    let mut p = divide_all(&ca, &conta);
    let mut q = divide_all(&cb, &contb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.len() == 1 {
            return c;
        }
        let r = prem(&p, &q);
        if r.iter().all(|t| t.is_zero()) {
            let out = Poly::from_coeffs_in(&x, &q);
            return c.mul(&out).monic();
        }
        let rc = content(&r);
        p = q;
        q = divide_all(&r, &rc);
    }
}

fn content(cs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_all(cs: &[Poly], d: &Poly) -> Vec<Poly> {
    if d.is_one() {
        return cs.to_vec();
    }
    let mut out: Vec<Poly> = cs.iter().map(|c| c.div_exact(d).expect("content divides")).collect();
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

/// A nonzero multiple of the remainder of p by q in the main variable.
fn prem(p: &[Poly], q: &[Poly]) -> Vec<Poly> {
    let mut r = p.to_vec();
    let dq = q.len() - 1;
    let lq = &q[dq];
    while r.len() > dq && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dq;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lq)).collect();
        for (j, qj) in q.iter().enumerate() {
            next[shift + j] = next[shift + j].sub(&qj.mul(&lr));
        }
        next.pop();
        while next.len() > 1 && next.last().unwrap().is_zero() {
            next.pop();
        }
        if next.is_empty() {
            next.push(Poly::zero());
        }
        r = next;
    }
    r
}
