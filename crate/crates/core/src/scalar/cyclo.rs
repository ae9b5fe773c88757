//! Elements of the cyclotomic field ℚ(ε_N) in the power basis modulo Φ_N.
//!
//! Values of different orders may be mixed freely; the smaller field is
//! embedded into ℚ(ε_L) with L the least common multiple of the two orders.
//! Values whose irrational part vanishes are demoted to order 1.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

struct Context {
    /// Φ_N with integer coefficients, lowest degree first, monic.
    phi: Vec<BigInt>,
}

fn context(n: u32) -> Arc<Context> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Context>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let ctx = Arc::new(Context { phi: cyclotomic_polynomial(n) });
    cache.lock().unwrap().insert(n, ctx.clone());
    ctx
}

/// Φ_n via x^n − 1 = ∏_{d | n} Φ_d.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut p: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_polynomial(d);
            p = div_exact_int(&p, &q);
        }
    }
    p
}

fn div_exact_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = r.len() - 1;
    let mut q = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    q
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u32,
    c: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { n: 1, c: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclo { n: 1, c: vec![r] }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(i)))
    }

    /// ε_n^k for any integer k.
    pub fn root(n: u32, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::reduce(n, raw)
    }

    /// Order of the ambient field this value is stored in (1 for rationals).
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.c[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.c[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.n == 1).then(|| &self.c[0])
    }

    fn reduce(n: u32, mut raw: Vec<BigRational>) -> Self {
        if n == 1 {
            let s = raw.into_iter().fold(BigRational::zero(), |a, b| a + b);
            return Cyclo { n: 1, c: vec![s] };
        }
        let ctx = context(n);
        let deg = ctx.phi.len() - 1;
        while raw.len() > deg {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = raw.len() - deg;
            for (j, pj) in ctx.phi.iter().enumerate().take(deg) {
                raw[shift + j] -= &top * BigRational::from_integer(pj.clone());
            }
        }
        raw.resize(deg, BigRational::zero());
        let mut out = Cyclo { n, c: raw };
        out.demote();
        out
    }

    fn demote(&mut self) {
        if self.n != 1 && self.c[1..].iter().all(|x| x.is_zero()) {
            let r = self.c[0].clone();
            self.n = 1;
            self.c = vec![r];
        }
    }

    /// Re-express in ℚ(ε_m), m a multiple of the current order.
    fn lift(&self, m: u32) -> Vec<BigRational> {
        if self.n == m {
            return self.c.clone();
        }
        let step = (m / self.n) as usize;
        let mut raw = vec![BigRational::zero(); (self.c.len() - 1) * step + 1];
        for (i, x) in self.c.iter().enumerate() {
            raw[i * step] = x.clone();
        }
        Self::reduce(m, raw).lift_exact(m)
    }

    fn lift_exact(&self, m: u32) -> Vec<BigRational> {
        if self.n == m {
            self.c.clone()
        } else {
            // demoted to a rational during reduction
            let mut v = vec![BigRational::zero(); euler_phi(m)];
            v[0] = self.c[0].clone();
            v
        }
    }

    fn common(a: &Self, b: &Self) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        let m = a.n.lcm(&b.n);
        (m, a.lift(m), b.lift(m))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.n == 1 && o.n == 1 {
            return Self::from_rational(&self.c[0] + &o.c[0]);
        }
        let (m, x, y) = Self::common(self, o);
        let raw = x.into_iter().zip(y).map(|(a, b)| a + b).collect();
        Self::reduce(m, raw)
    }

    pub fn neg(&self) -> Self {
        Cyclo { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.n == 1 {
            return o.scale(&self.c[0]);
        }
        if o.n == 1 {
            return self.scale(&o.c[0]);
        }
        let (m, x, y) = Self::common(self, o);
        let mut raw = vec![BigRational::zero(); x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::reduce(m, raw)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclo { n: self.n, c: self.c.iter().map(|x| x * r).collect() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.n == 1 {
            return Some(Self::from_rational(self.c[0].recip()));
        }
        let phi: Vec<BigRational> =
            context(self.n).phi.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let u = inverse_mod(&self.c, &phi);
        Some(Self::reduce(self.n, u))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Some(acc)
    }

    /// Least d > 0 with self^d = 1, searching up to lcm(2, N).
    pub fn root_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let bound = self.n.lcm(&2);
        let mut p = self.clone();
        for d in 1..=bound {
            if p.is_one() {
                return Some(d);
            }
            p = p.mul(self);
        }
        None
    }

    /// Sign of the leading rational coordinate, used only for display.
    fn is_single_negative(&self) -> bool {
        let nz: Vec<_> = self.c.iter().filter(|x| !x.is_zero()).collect();
        nz.len() == 1 && nz[0].is_negative()
    }

    pub fn is_single_term(&self) -> bool {
        self.c.iter().filter(|x| !x.is_zero()).count() <= 1
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    if r.len() - 1 < db || (r.len() == 1 && r[0].is_zero()) {
        return (vec![BigRational::zero()], r);
    }
    let lc = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lc;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(BigRational::zero());
        }
        if r.len() - 1 < db {
            break;
        }
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

/// u with u·a ≡ 1 (mod m), assuming gcd(a, m) = 1.
fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is a nonzero constant
    let c = r0[0].recip();
    s0.iter().map(|x| x * &c).collect()
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        if self.n == o.n {
            return self.c == o.c;
        }
        self.sub(o).is_zero()
    }
}
impl Eq for Cyclo {}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let neg = x.is_negative();
            let a = x.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let e = match i {
                0 => String::new(),
                1 => "e".to_string(),
                _ => format!("e^{i}"),
            };
            if e.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{a}*{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Cyclo {
    /// Display form suitable as a factor: parenthesized if it has several terms.
    pub fn factor_string(&self) -> (bool, String) {
        if self.is_single_term() {
            let neg = self.is_single_negative();
            let s = if neg { self.neg().to_string() } else { self.to_string() };
            (neg, s)
        } else {
            (false, format!("({self})"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        let p = cyclotomic_polynomial(12);
        let want: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(p, want);
        assert_eq!(cyclotomic_polynomial(1).len(), 2);
    }

    #[test]
    fn eps_sum_n3() {
        let s = Cyclo::root(3, 1).add(&Cyclo::root(3, 2));
        assert_eq!(s, Cyclo::from_int(-1));
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn inverse_and_orders() {
        let x = Cyclo::from_int(1).add(&Cyclo::root(7, 2));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert_eq!(Cyclo::root(6, 1).root_order(), Some(6));
        assert_eq!(Cyclo::root(3, 2).neg().root_order(), Some(6));
        assert_eq!(Cyclo::from_int(2).root_order(), None);
    }

    #[test]
    fn mixed_orders_embed() {
        // ε_4 = ε_12^3
        assert_eq!(Cyclo::root(4, 1), Cyclo::root(12, 3));
        let a = Cyclo::root(4, 1).mul(&Cyclo::root(3, 1));
        assert_eq!(a, Cyclo::root(12, 7));
    }
}
