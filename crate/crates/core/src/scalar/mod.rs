//! The exact coefficient field: rational functions in named parameters over
//! a cyclotomic number field.

mod cyclo;
mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub use cyclo::{cyclotomic_polynomial, euler_phi, Cyclo};
pub use poly::{gcd, Monomial, Poly, Var};

use crate::error::{Error, Result};

/// Element of Frac(ℚ(ε_N)[x_1,…,x_m]) in canonical form: coprime numerator
/// and denominator, denominator with leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_cyclo(Cyclo::from_int(i))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_cyclo(Cyclo::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn from_cyclo(c: Cyclo) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::one() }
    }

    /// The primitive root ε_n raised to k.
    pub fn root(n: u32, k: i64) -> Self {
        Self::from_cyclo(Cyclo::root(n, k))
    }

    /// A free (transcendental) parameter.
    pub fn var(name: &str) -> Self {
        Scalar { num: Poly::var(name), den: Poly::one() }
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (mut num, mut den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let lc = den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Scalar { num, den })
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_cyclo(&self) -> Option<Cyclo> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_cyclo().is_some()
    }

    /// Names of the parameters occurring in the value.
    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return Scalar { num: n, den: Poly::one() };
            }
            return Self::from_polys(n, self.den.clone()).unwrap();
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::from_polys(n, self.den.mul(&o.den)).unwrap()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        // cross-cancel; each factor is already reduced
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading().unwrap().1.clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::from_polys(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        if base.den.is_one() {
            return Ok(Scalar { num: base.num.pow(e as u32), den: Poly::one() });
        }
        Ok(Scalar { num: base.num.pow(e as u32), den: base.den.pow(e as u32) })
    }

    /// [k]_q = (q^k − 1)/(q − 1), valid for every integer k.
    pub fn q_integer(k: i64, q: &Scalar) -> Result<Self> {
        if q.is_one() {
            return Err(Error::QEqualsOne);
        }
        if k >= 0 {
            let mut acc = Scalar::zero();
            let mut p = Scalar::one();
            for _ in 0..k {
                acc = acc.add(&p);
                p = p.mul(q);
            }
            return Ok(acc);
        }
        // [−m]_q = −q^{−m}[m]_q
        let m = Self::q_integer(-k, q)?;
        Ok(m.mul(&q.pow(k)?).neg())
    }

    /// Least d > 0 with s^d = 1 when s is a constant root of unity.
    pub fn root_of_unity_order(&self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.as_cyclo().and_then(|c| c.root_order()))
    }

    /// Replace parameters by values; unmapped parameters stay symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<String, Scalar>) -> Result<Self> {
        if assignment.is_empty() || !self.vars().iter().any(|v| assignment.contains_key(&**v)) {
            return Ok(self.clone());
        }
        let d = eval_poly(&self.den, assignment);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        eval_poly(&self.num, assignment).div(&d)
    }

    /// Decompose a unit monomial c·∏x^e (c a nonzero constant); `None` if
    /// the value is not of that shape.
    pub fn unit_monomial(&self) -> Option<(Cyclo, BTreeMap<String, i64>)> {
        if self.num.len() != 1 || self.den.len() != 1 {
            return None;
        }
        let (mn, cn) = self.num.leading().unwrap();
        let (md, cd) = self.den.leading().unwrap();
        let c = cn.div(cd)?;
        let mut exps: BTreeMap<String, i64> = BTreeMap::new();
        for (v, e) in &mn.0 {
            *exps.entry(v.to_string()).or_default() += *e as i64;
        }
        for (v, e) in &md.0 {
            *exps.entry(v.to_string()).or_default() -= *e as i64;
        }
        exps.retain(|_, e| *e != 0);
        Some((c, exps))
    }

    /// Degree in `v` of numerator minus denominator.
    pub fn degree_in(&self, v: &str) -> i64 {
        self.num.degree_in(v) as i64 - self.den.degree_in(v) as i64
    }

    pub fn parse(s: &str, n: u32) -> Result<Self> {
        parse::parse(s, n)
    }
}

fn eval_poly(p: &Poly, a: &BTreeMap<String, Scalar>) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_cyclo(c.clone());
        for (v, e) in &m.0 {
            let f = match a.get(&**v) {
                Some(x) => x.pow(*e as i64).unwrap(),
                None => Scalar::var(v).pow(*e as i64).unwrap(),
            };
            t = t.mul(&f);
        }
        acc = acc.add(&t);
    }
    acc
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar::$m(self, o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<i64> for Scalar {
    fn from(i: i64) -> Self {
        Scalar::from_int(i)
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    m.0.iter()
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let (neg, cs) = c.factor_string();
        let body = if m.is_one() {
            cs
        } else if cs == "1" {
            fmt_monomial(m)
        } else {
            format!("{cs}*{}", fmt_monomial(m))
        };
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body)
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body)
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body)
            }
        }
    }
    out
}

fn needs_parens(p: &Poly) -> bool {
    p.len() > 1 || p.terms().next().is_some_and(|(m, c)| !c.is_single_term() && !m.is_one())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_poly(&self.num);
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let d = fmt_poly(&self.den);
        let n = if needs_parens(&self.num) { format!("({n})") } else { n };
        let d = if needs_parens(&self.den) || self.den.len() == 1 && d.contains('*') { format!("({d})") } else { d };
        write!(f, "{n}/{d}")
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Whether a rational constant is negative (display helper for callers).
pub fn is_negative_rational(s: &Scalar) -> bool {
    s.as_cyclo().and_then(|c| c.as_rational().map(|r| r.is_negative())).unwrap_or(false)
}

/// Value bound to a parameter name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binding {
    Transcendental,
    /// ±ε^k times a monomial in transcendental parameters.
    UnitMonomial(Scalar),
}

/// Cyclotomic order plus parameter bindings for one session.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterEnv {
    pub n: u32,
    bindings: BTreeMap<String, Binding>,
}

impl ParameterEnv {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        ParameterEnv { n, bindings: BTreeMap::new() }
    }

    /// Bind `name` to a parsed expression. Binding a name to itself marks it
    /// transcendental.
    pub fn bind(&mut self, name: &str, expr: &str) -> Result<()> {
        let v = self.parse(expr)?;
        if v == Scalar::var(name) {
            self.bindings.insert(name.to_string(), Binding::Transcendental);
            return Ok(());
        }
        self.bind_value(name, v)
    }

    pub fn bind_value(&mut self, name: &str, v: Scalar) -> Result<()> {
        let Some((c, exps)) = v.unit_monomial() else {
            return Err(Error::UnsupportedParameter(format!("{name} = {v} is not a unit monomial")));
        };
        if c.root_order().is_none() {
            return Err(Error::UnsupportedParameter(format!("{name} = {v}: coefficient is not ±e^k")));
        }
        for x in exps.keys() {
            if matches!(self.bindings.get(x), Some(Binding::UnitMonomial(_))) || x == name {
                return Err(Error::UnsupportedParameter(format!("{name} refers to bound parameter {x}")));
            }
        }
        self.bindings.insert(name.to_string(), Binding::UnitMonomial(v));
        Ok(())
    }

    pub fn binding(&self, name: &str) -> Option<&Binding> {
        self.bindings.get(name)
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&String, &Binding)> {
        self.bindings.iter()
    }

    /// The value of a parameter: its binding, or the free variable.
    pub fn get(&self, name: &str) -> Scalar {
        match self.bindings.get(name) {
            Some(Binding::UnitMonomial(v)) => v.clone(),
            _ => Scalar::var(name),
        }
    }

    /// Parse an expression and apply the bindings.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let raw = Scalar::parse(s, self.n)?;
        let a: BTreeMap<String, Scalar> = self
            .bindings
            .iter()
            .filter_map(|(k, b)| match b {
                Binding::UnitMonomial(v) => Some((k.clone(), v.clone())),
                _ => None,
            })
            .collect();
        raw.substitute(&a)
    }

    /// ε for this session.
    pub fn eps(&self) -> Scalar {
        Scalar::root(self.n, 1)
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn f<T: Send + Sync>() {}
    f::<Scalar>();
}

impl Scalar {
    /// Leading rational coefficient sign of a constant (for tests).
    pub fn is_positive_rational(&self) -> bool {
        self.as_cyclo().and_then(|c| c.as_rational().map(|r| r.is_positive())).unwrap_or(false)
    }

    pub fn from_bigrational(r: BigRational) -> Self {
        if r.is_one() {
            return Self::one();
        }
        Self::from_cyclo(Cyclo::from_rational(r))
    }
}
