//! Weight points of the quantized Weyl algebra, their γ-sequences, the
//! ℤⁿ-action on maximal ideals, breaks, isotropy, G̃_m and G_m.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{kernel_of_unit_map, IntMatrix, Lattice};
use crate::scalar::{ParameterEnv, Scalar};
use crate::tgwa::{pair_at, QwaAlgebra};

/// m = (t_1 − α_1, …, t_n − α_n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightPoint {
    pub alpha: Vec<Scalar>,
}

impl WeightPoint {
    pub fn new(alpha: Vec<Scalar>) -> Self {
        WeightPoint { alpha }
    }

    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    /// n_0 = (t_1 − (1−q_1)⁻¹, t_2, …, t_n).
    pub fn n0(alg: &QwaAlgebra) -> Result<Self> {
        let mut a = vec![Scalar::zero(); alg.rank()];
        a[0] = Scalar::one().sub(&alg.q[0]).inv()?;
        Ok(WeightPoint { alpha: a })
    }

    /// n_λ^(1) = (t_1 − (1−λ)(1−q_1)⁻¹, t_2 − λ(1−q_2)⁻¹).
    pub fn n1(alg: &QwaAlgebra, lam: &Scalar) -> Result<Self> {
        let one = Scalar::one();
        let a1 = one.sub(lam).div(&one.sub(&alg.q[0]))?;
        let a2 = lam.div(&one.sub(&alg.q[1]))?;
        Ok(WeightPoint { alpha: vec![a1, a2] })
    }

    /// n_λ^(2) = (t_1 − (1−q_1)⁻¹, t_2 − λ).
    pub fn n2(alg: &QwaAlgebra, lam: &Scalar) -> Result<Self> {
        let a1 = Scalar::one().sub(&alg.q[0]).inv()?;
        Ok(WeightPoint { alpha: vec![a1, lam.clone()] })
    }
}

/// γ_0 = 1, γ_j = 1 + Σ_{r≤j} (q_r − 1)α_r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaSequence {
    pub gammas: Vec<Scalar>,
}

pub fn gamma_sequence(pt: &WeightPoint, alg: &QwaAlgebra) -> GammaSequence {
    let mut g = vec![Scalar::one()];
    for (a, q) in pt.alpha.iter().zip(&alg.q) {
        let next = g.last().unwrap().add(&q.sub(&Scalar::one()).mul(a));
        g.push(next);
    }
    GammaSequence { gammas: g }
}

/// Point of σ_1^{g_1}⋯σ_n^{g_n}(m), closed form:
/// α'_j = (α_j − [g_j]_{q_j} γ_{j−1}) / (q_1^{g_1}⋯q_j^{g_j}).
pub fn sigma_action(g: &[i64], pt: &WeightPoint, alg: &QwaAlgebra) -> Result<WeightPoint> {
    let gam = gamma_sequence(pt, alg).gammas;
    let mut prefix = Scalar::one();
    let mut out = Vec::with_capacity(pt.rank());
    for j in 0..pt.rank() {
        prefix = prefix.mul(&alg.q[j].pow(g[j])?);
        let num = pt.alpha[j].sub(&Scalar::q_integer(g[j], &alg.q[j])?.mul(&gam[j]));
        out.push(num.div(&prefix)?);
    }
    Ok(WeightPoint { alpha: out })
}

/// Solutions i ∈ ℤ of γ_j = q_j^i γ_{j−1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionSet {
    Empty,
    All,
    Progression { residue: i64, modulus: i64 },
    Single { value: i64 },
}

impl SolutionSet {
    pub fn contains(&self, i: i64) -> bool {
        match *self {
            SolutionSet::Empty => false,
            SolutionSet::All => true,
            SolutionSet::Progression { residue, modulus } => (i - residue).rem_euclid(modulus) == 0,
            SolutionSet::Single { value } => i == value,
        }
    }

    /// Least solution ≥ 0.
    pub fn min_nonneg(&self) -> Option<i64> {
        match *self {
            SolutionSet::Empty => None,
            SolutionSet::All => Some(0),
            SolutionSet::Progression { residue, modulus } => Some(residue.rem_euclid(modulus)),
            SolutionSet::Single { value } => (value >= 0).then_some(value),
        }
    }

    /// Greatest solution < 0.
    pub fn max_neg(&self) -> Option<i64> {
        match *self {
            SolutionSet::Empty => None,
            SolutionSet::All => Some(-1),
            SolutionSet::Progression { residue, modulus } => Some(residue.rem_euclid(modulus) - modulus),
            SolutionSet::Single { value } => (value < 0).then_some(value),
        }
    }
}

// Bound for the exhaustive search used when q_j is a constant that is
// neither a root of unity nor a unit monomial.
const CONSTANT_SEARCH: i64 = 64;

/// Break equation for coordinate j (0-based).
pub fn break_exponents(pt: &WeightPoint, j: usize, alg: &QwaAlgebra) -> Result<SolutionSet> {
    let gam = gamma_sequence(pt, alg).gammas;
    let (lo, hi) = (&gam[j], &gam[j + 1]);
    if lo.is_zero() {
        return Ok(if hi.is_zero() { SolutionSet::All } else { SolutionSet::Empty });
    }
    if hi.is_zero() {
        return Ok(SolutionSet::Empty);
    }
    let q = &alg.q[j];
    let rho = hi.div(lo)?;
    if let Some(o) = q.root_of_unity_order()? {
        let mut p = Scalar::one();
        for i in 0..o as i64 {
            if p == rho {
                return Ok(SolutionSet::Progression { residue: i, modulus: o as i64 });
            }
            p = p.mul(q);
        }
        return Ok(SolutionSet::Empty);
    }
    let units = alg.units();
    if let Ok((_, qe)) = units.log(q) {
        if let Some((v, &e)) = qe.iter().next() {
            let Ok((_, re)) = units.log(&rho) else { return Ok(SolutionSet::Empty) };
            let r = re.get(v).copied().unwrap_or(0);
            if r % e != 0 {
                return Ok(SolutionSet::Empty);
            }
            let i = r / e;
            return Ok(if q.pow(i)? == rho { SolutionSet::Single { value: i } } else { SolutionSet::Empty });
        }
    }
    for i in -CONSTANT_SEARCH..=CONSTANT_SEARCH {
        if q.pow(i)? == rho {
            return Ok(SolutionSet::Single { value: i });
        }
    }
    Ok(SolutionSet::Empty)
}

/// ℤⁿ_ω: {g : (q_1^{g_1}⋯q_j^{g_j} − 1)γ_j = 0 for all j}.
pub fn isotropy(pt: &WeightPoint, alg: &QwaAlgebra) -> Result<Lattice> {
    let n = pt.rank();
    let gam = gamma_sequence(pt, alg).gammas;
    let units = alg.units();
    let (tors, free) = units.exponent_matrices(&alg.q)?;
    let mut t_rows = Vec::new();
    let mut f_rows = Vec::new();
    for j in 1..=n {
        if gam[j].is_zero() {
            continue;
        }
        let cut = |row: &Vec<num_bigint::BigInt>| {
            row.iter().enumerate().map(|(i, x)| if i < j { x.clone() } else { 0.into() }).collect::<Vec<_>>()
        };
        t_rows.extend(tors.rows().iter().map(cut));
        f_rows.extend(free.rows().iter().map(cut));
    }
    Ok(kernel_of_unit_map(&IntMatrix::new(t_rows, n), units.m as i64, &IntMatrix::new(f_rows, n)))
}

/// G̃_m = ∏_j [lo_j, hi_j]; `None` stands for ∓∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayIntervals {
    pub lo: Vec<Option<i64>>,
    pub hi: Vec<Option<i64>>,
}

impl RayIntervals {
    pub fn contains(&self, g: &[i64]) -> bool {
        g.iter().enumerate().all(|(j, &k)| self.lo[j].is_none_or(|l| k >= l) && self.hi[j].is_none_or(|h| k <= h))
    }

    pub fn is_full(&self, j: usize) -> bool {
        self.lo[j].is_none() && self.hi[j].is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.lo.iter().chain(&self.hi).all(|x| x.is_some())
    }
}

pub fn g_tilde(pt: &WeightPoint, alg: &QwaAlgebra) -> Result<RayIntervals> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for j in 0..pt.rank() {
        let s = break_exponents(pt, j, alg)?;
        hi.push(s.min_nonneg());
        lo.push(s.max_neg().map(|i| i + 1));
    }
    Ok(RayIntervals { lo, hi })
}

/// Box radius used to certify G_m against G̃_m ∩ ℤⁿ_ω.
pub const GM_CHECK_RADIUS: i64 = 6;

/// G_m = G̃_m ∩ ℤⁿ_ω.
pub fn g_m(pt: &WeightPoint, alg: &QwaAlgebra) -> Result<Lattice> {
    let n = pt.rank();
    let iso = isotropy(pt, alg)?;
    let gt = g_tilde(pt, alg)?;
    let bounded: Vec<usize> = (0..n).filter(|&j| !gt.is_full(j)).collect();
    let gm = iso.with_zero_coordinates(&bounded);
    // every isotropy element inside the G̃ box must already be in G_m
    let r = GM_CHECK_RADIUS;
    let mut g = vec![-r; n];
    loop {
        if gt.contains(&g) && iso.contains(&g) && !gm.contains(&g) {
            return Err(Error::GroupnessViolated(format!("{g:?} lies in G̃_m ∩ ℤⁿ_ω but not in a subgroup")));
        }
        let mut k = 0;
        while k < n && g[k] == r {
            g[k] = -r;
            k += 1;
        }
        if k == n {
            break;
        }
        g[k] += 1;
    }
    Ok(gm)
}

/// Full orbit summary of a point.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub alpha: Vec<Scalar>,
    pub gamma: Vec<Scalar>,
    pub breaks: Vec<SolutionSet>,
    pub isotropy: Lattice,
}

pub fn orbit_report(pt: &WeightPoint, alg: &QwaAlgebra) -> Result<OrbitReport> {
    Ok(OrbitReport {
        alpha: pt.alpha.clone(),
        gamma: gamma_sequence(pt, alg).gammas,
        breaks: (0..pt.rank()).map(|j| break_exponents(pt, j, alg)).collect::<Result<_>>()?,
        isotropy: isotropy(pt, alg)?,
    })
}

/// Orbit data over a Q_ij-CCR algebra. σ_i moves only t_i, by t_i ↦ 1 + Q_ii·t_i,
/// so everything splits into rank-one quantized Weyl data with q = Q_ii.
#[derive(Clone, Debug)]
pub struct CcrOrbit {
    pub factors: Vec<QwaAlgebra>,
}

/// Orbit summary over a CCR algebra (no γ-sequence: the coordinates decouple).
#[derive(Clone, Debug, Serialize)]
pub struct CcrOrbitReport {
    pub alpha: Vec<Scalar>,
    pub breaks: Vec<SolutionSet>,
    pub isotropy: Lattice,
}

impl CcrOrbit {
    pub fn new(env: &ParameterEnv, diag: &[Scalar]) -> Result<Self> {
        let factors = diag.iter().map(|q| QwaAlgebra::new(env.clone(), vec![q.clone()], &[])).collect::<Result<_>>()?;
        Ok(CcrOrbit { factors })
    }

    fn coordinate(&self, pt: &WeightPoint, i: usize) -> Result<WeightPoint> {
        if pt.rank() != self.factors.len() {
            return Err(Error::Config(format!("point of rank {} over CCR of rank {}", pt.rank(), self.factors.len())));
        }
        Ok(WeightPoint::new(vec![pt.alpha[i].clone()]))
    }

    pub fn breaks(&self, pt: &WeightPoint) -> Result<Vec<SolutionSet>> {
        (0..self.factors.len()).map(|i| break_exponents(&self.coordinate(pt, i)?, 0, &self.factors[i])).collect()
    }

    pub fn isotropy(&self, pt: &WeightPoint) -> Result<Lattice> {
        let parts = (0..self.factors.len()).map(|i| isotropy(&self.coordinate(pt, i)?, &self.factors[i])).collect::<Result<Vec<_>>>()?;
        Ok(direct_sum(&parts))
    }

    pub fn g_tilde(&self, pt: &WeightPoint) -> Result<RayIntervals> {
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        for i in 0..self.factors.len() {
            let r = g_tilde(&self.coordinate(pt, i)?, &self.factors[i])?;
            lo.push(r.lo[0]);
            hi.push(r.hi[0]);
        }
        Ok(RayIntervals { lo, hi })
    }

    pub fn g_m(&self, pt: &WeightPoint) -> Result<Lattice> {
        let parts = (0..self.factors.len()).map(|i| g_m(&self.coordinate(pt, i)?, &self.factors[i])).collect::<Result<Vec<_>>>()?;
        Ok(direct_sum(&parts))
    }

    pub fn report(&self, pt: &WeightPoint) -> Result<CcrOrbitReport> {
        Ok(CcrOrbitReport { alpha: pt.alpha.clone(), breaks: self.breaks(pt)?, isotropy: self.isotropy(pt)? })
    }
}

/// ⊕ of rank-one lattices, one per coordinate.
fn direct_sum(parts: &[Lattice]) -> Lattice {
    let n = parts.len();
    let mut rows = Vec::new();
    for (i, l) in parts.iter().enumerate() {
        for r in l.rows_i64() {
            let mut row = vec![0; n];
            row[i] = r[0];
            rows.push(row);
        }
    }
    Lattice::from_rows(&rows, n)
}

/// Whether a_g^* a_g ∉ m, computed from the words rather than the intervals.
pub fn in_g_tilde_by_words(g: &[i64], pt: &WeightPoint, alg: &QwaAlgebra) -> Result<bool> {
    Ok(!pair_at(g, &pt.alpha, &alg.presentation)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParameterEnv;

    fn generic_alg() -> QwaAlgebra {
        QwaAlgebra::new(
            ParameterEnv::new(1),
            vec![Scalar::var("q1"), Scalar::var("q2")],
            &[vec![Scalar::one(), Scalar::var("l12")]],
        )
        .unwrap()
    }

    fn rou_alg(n: u32, q1: i64, q2: i64, l: i64) -> QwaAlgebra {
        QwaAlgebra::new(
            ParameterEnv::new(n),
            vec![Scalar::root(n, q1), Scalar::root(n, q2)],
            &[vec![Scalar::one(), Scalar::root(n, l)]],
        )
        .unwrap()
    }

    #[test]
    fn gamma_examples() {
        let a = generic_alg();
        let lam = Scalar::var("lam");
        let z = Scalar::zero();
        assert_eq!(gamma_sequence(&WeightPoint::n0(&a).unwrap(), &a).gammas, vec![Scalar::one(), z.clone(), z.clone()]);
        assert_eq!(gamma_sequence(&WeightPoint::n1(&a, &lam).unwrap(), &a).gammas, vec![Scalar::one(), lam.clone(), z.clone()]);
        let g2 = lam.mul(&a.q[1].sub(&Scalar::one()));
        assert_eq!(gamma_sequence(&WeightPoint::n2(&a, &lam).unwrap(), &a).gammas, vec![Scalar::one(), z, g2]);
    }

    #[test]
    fn sigma_examples() {
        let a = generic_alg();
        let lam = Scalar::var("lam");
        let p2 = WeightPoint::n2(&a, &lam).unwrap();
        for (k, l) in [(0, 0), (1, 0), (2, -1), (-3, 2)] {
            let l2 = lam.mul(&a.q[0].pow(-k).unwrap()).mul(&a.q[1].pow(-l).unwrap());
            assert_eq!(sigma_action(&[k, l], &p2, &a).unwrap(), WeightPoint::n2(&a, &l2).unwrap());
            let p1 = WeightPoint::n1(&a, &lam).unwrap();
            let l1 = lam.mul(&a.q[0].pow(-k).unwrap());
            assert_eq!(sigma_action(&[k, l], &p1, &a).unwrap(), WeightPoint::n1(&a, &l1).unwrap());
        }
    }

    #[test]
    fn breaks_and_intervals() {
        let a = generic_alg();
        let n0 = WeightPoint::n0(&a).unwrap();
        assert_eq!(break_exponents(&n0, 0, &a).unwrap(), SolutionSet::Empty);
        assert_eq!(break_exponents(&n0, 1, &a).unwrap(), SolutionSet::All);
        let gt = g_tilde(&n0, &a).unwrap();
        assert_eq!((gt.lo.clone(), gt.hi.clone()), (vec![None, Some(0)], vec![None, Some(0)]));

        let b = rou_alg(3, 1, 1, 1);
        let p = WeightPoint::n1(&b, &Scalar::one()).unwrap();
        assert_eq!(break_exponents(&p, 0, &b).unwrap(), SolutionSet::Progression { residue: 0, modulus: 3 });
        let gt = g_tilde(&p, &b).unwrap();
        assert_eq!((gt.lo[0], gt.hi[0]), (Some(-2), Some(0)));
        assert!(gt.is_full(1));
        assert_eq!(g_m(&p, &b).unwrap().rows_i64(), vec![vec![0, 1]]);

        let g = WeightPoint::new(vec![Scalar::var("a1"), Scalar::var("a2")]);
        assert_eq!(g_tilde(&g, &a).unwrap(), RayIntervals { lo: vec![None; 2], hi: vec![None; 2] });
    }

    #[test]
    fn transcendental_break() {
        let a = generic_alg();
        // γ_1 = q1^{-2}: i = −2 is the only solution
        let a1 = a.q[0].pow(-2).unwrap().sub(&Scalar::one()).div(&a.q[0].sub(&Scalar::one())).unwrap();
        let p = WeightPoint::new(vec![a1, Scalar::var("a2")]);
        assert_eq!(break_exponents(&p, 0, &a).unwrap(), SolutionSet::Single { value: -2 });
        let gt = g_tilde(&p, &a).unwrap();
        assert_eq!((gt.lo[0], gt.hi[0]), (Some(-1), None));
    }

    #[test]
    fn isotropy_examples() {
        let a = generic_alg();
        assert_eq!(isotropy(&WeightPoint::n0(&a).unwrap(), &a).unwrap(), Lattice::full(2));
        let b = rou_alg(12, 3, 2, 1);
        let p = WeightPoint::n1(&b, &Scalar::var("lam")).unwrap();
        assert_eq!(isotropy(&p, &b).unwrap().rows_i64(), vec![vec![4, 0], vec![0, 1]]);
        let g = WeightPoint::new(vec![Scalar::var("a1"), Scalar::var("a2")]);
        assert_eq!(isotropy(&g, &b).unwrap().rows_i64(), vec![vec![4, 0], vec![0, 6]]);
        assert_eq!(g_m(&g, &b).unwrap().rows_i64(), vec![vec![4, 0], vec![0, 6]]);
        assert_eq!(g_m(&p, &b).unwrap().rows_i64(), vec![vec![4, 0], vec![0, 1]]);
    }
}
