//! The induced-module construction: action of X_i, Y_i on {a_g v_k}
//! computed only from normal forms of words and the action of the G_m
//! generators on M_m. Serves as the oracle for the closed-form families.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{ActionFn, Label, Support, WeightModuleSpec};
use crate::orbit::WeightPoint;
use crate::scalar::Scalar;
use crate::tgwa::{normalize, pair_at, star, Letter, QwaAlgebra, TgwaPresentation, Word};

/// Integer coordinates of `d` in the given basis (rows), if any.
pub fn coords_in_basis(basis: &[Vec<i64>], d: &[i64]) -> Option<Vec<i64>> {
    let k = basis.len();
    let n = d.len();
    if k == 0 {
        return d.iter().all(|&x| x == 0).then(Vec::new);
    }
    // n equations, k unknowns: Σ_i x_i basis[i][j] = d[j]
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut m: Vec<Vec<BigRational>> =
        (0..n).map(|j| (0..k).map(|i| q(basis[i][j])).chain([q(d[j])]).collect()).collect();
    let mut piv = Vec::new();
    let mut row = 0;
    for c in 0..k {
        let Some(p) = (row..n).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = BigRational::from_integer(1.into()) / m[row][c].clone();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in 0..=k {
                    let t = &f * &m[row][cc];
                    m[r][cc] -= t;
                }
            }
        }
        piv.push(c);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[k].is_zero()) || piv.len() < k {
        return None;
    }
    let mut x = vec![0i64; k];
    for (r, &c) in piv.iter().enumerate() {
        if !m[r][k].is_integer() {
            return None;
        }
        x[c] = m[r][k].to_integer().to_i64()?;
    }
    Some(x)
}

struct Oracle {
    pres: TgwaPresentation,
    alpha: Vec<Scalar>,
    support: Support,
    gm_basis: Vec<Vec<i64>>,
    mats: Vec<Matrix>,
    pair_cache: Mutex<HashMap<Vec<i64>, Scalar>>,
    ad_cache: Mutex<HashMap<Vec<i64>, Matrix>>,
}

impl Oracle {
    fn pair(&self, g: &[i64]) -> Result<Scalar> {
        if let Some(v) = self.pair_cache.lock().unwrap().get(g) {
            return Ok(v.clone());
        }
        let v = pair_at(g, &self.alpha, &self.pres)?;
        self.pair_cache.lock().unwrap().insert(g.to_vec(), v.clone());
        Ok(v)
    }

    /// Matrix of a_d on M_m for d ∈ G_m.
    fn a_d(&self, d: &[i64]) -> Result<Matrix> {
        if let Some(m) = self.ad_cache.lock().unwrap().get(d) {
            return Ok(m.clone());
        }
        let l = coords_in_basis(&self.gm_basis, d)
            .ok_or_else(|| Error::CertificationFailed(format!("{d:?} is not in G_m")))?;
        let dim = self.mats.first().map_or(1, |m| m.nrows());
        let mut word = Word::empty();
        let mut m = Matrix::identity(dim);
        let mut scale = Scalar::one();
        for (i, &li) in l.iter().enumerate() {
            if li == 0 {
                continue;
            }
            let w = Word::canonical(&self.gm_basis[i]);
            m = m.mul(&self.mats[i].pow(li)?);
            if li > 0 {
                word = word.concat(&w.pow(li as usize));
            } else {
                // a_s^* = (a_s^* a_s)(m) · a_s⁻¹ on M_m
                word = word.concat(&star(&w).pow((-li) as usize));
                scale = scale.mul(&self.pair(&self.gm_basis[i])?.pow(-li)?);
            }
        }
        let cw = normalize(&word, &self.pres)?;
        if cw.degree != d {
            return Err(Error::CertificationFailed(format!("word degree {:?} ≠ {d:?}", cw.degree)));
        }
        let val = cw.eval_at(&self.alpha);
        if val.is_zero() {
            return Err(Error::CertificationFailed(format!("a_d vanishes on M_m for d = {d:?}")));
        }
        let out = m.scale(&scale.div(&val)?);
        self.ad_cache.lock().unwrap().insert(d.to_vec(), out.clone());
        Ok(out)
    }

    fn act(&self, l: Letter, v: &Label) -> Result<Option<(Label, Scalar)>> {
        let i = l.index();
        let mut g2 = v.g.clone();
        g2[i] += if matches!(l, Letter::X(_)) { 1 } else { -1 };
        if self.pair(&g2)?.is_zero() {
            return Ok(None);
        }
        let h = self
            .support
            .reduce(&g2)
            .ok_or_else(|| Error::CertificationFailed(format!("{g2:?} ∈ G̃_m has no representative")))?;
        let d: Vec<i64> = g2.iter().zip(&h).map(|(x, y)| x - y).collect();
        let c1 = normalize(&Word(vec![l]).concat(&Word::canonical(&v.g)), &self.pres)?.eval_at(&self.alpha);
        let c2 = normalize(&Word::canonical(&h).concat(&Word::canonical(&d)), &self.pres)?.eval_at(&self.alpha);
        if c2.is_zero() {
            return Err(Error::CertificationFailed(format!("a_h a_d vanishes for h = {h:?}, d = {d:?}")));
        }
        let ad = self.a_d(&d)?;
        let nz: Vec<usize> = (0..ad.nrows()).filter(|&r| !ad.rows[r][v.k].is_zero()).collect();
        match nz.as_slice() {
            [] => Ok(None),
            [r] => Ok(Some((Label::new(h, *r), c1.div(&c2)?.mul(&ad.rows[*r][v.k])))),
            _ => Err(Error::CertificationFailed("a_d is not monomial on the chosen basis".into())),
        }
    }
}

/// Induced module on a transversal with weight space given by the matrices
/// of a_s (s in `gm_basis`) on M_m.
#[allow(clippy::too_many_arguments)]
pub fn build_generic_induced(
    name: &str,
    presentation: &TgwaPresentation,
    qwa: Option<&QwaAlgebra>,
    base: &WeightPoint,
    support: Support,
    gm_basis: Vec<Vec<i64>>,
    weight_space: Vec<Matrix>,
    params: std::collections::BTreeMap<String, Scalar>,
) -> Result<WeightModuleSpec> {
    if !presentation.is_scalar_graded() {
        return Err(Error::NotScalarGraded("induced construction needs X-commutation constants".into()));
    }
    if gm_basis.len() != weight_space.len() {
        return Err(Error::Config("one matrix per G_m generator".into()));
    }
    let dim = weight_space.first().map_or(1, |m| m.nrows());
    let o = Arc::new(Oracle {
        pres: presentation.clone(),
        alpha: base.alpha.clone(),
        support: support.clone(),
        gm_basis: gm_basis.clone(),
        mats: weight_space.clone(),
        pair_cache: Mutex::new(HashMap::new()),
        ad_cache: Mutex::new(HashMap::new()),
    });
    let action: ActionFn = Arc::new(move |l, v| o.act(l, v));
    Ok(WeightModuleSpec::new(
        name,
        presentation.clone(),
        qwa.cloned(),
        base.clone(),
        support,
        dim,
        gm_basis,
        weight_space,
        params,
        action,
    ))
}

/// Oracle with the same transversal and weight space as `m`.
pub fn oracle_for(m: &WeightModuleSpec) -> Result<WeightModuleSpec> {
    build_generic_induced(
        &format!("{}/induced", m.name),
        &m.presentation,
        m.qwa.as_ref(),
        &m.base,
        m.support.clone(),
        m.gm_basis.clone(),
        m.weight_space.clone(),
        m.params.clone(),
    )
}

/// First disagreement between two modules on the window, if any.
pub fn compare_exact(
    a: &WeightModuleSpec,
    b: &WeightModuleSpec,
    window: Option<i64>,
) -> Result<Option<(Letter, Label, String)>> {
    for v in a.labels(window)? {
        for l in a.letters() {
            let (x, y) = (a.act(l, &v)?, b.act(l, &v)?);
            if x != y {
                let show = |e: &Option<(Label, Scalar)>| match e {
                    None => "0".to_string(),
                    Some((t, c)) => format!("{c}·{t}"),
                };
                return Ok(Some((l, v, format!("{} vs {}", show(&x), show(&y)))));
            }
        }
    }
    Ok(None)
}

/// Whether the modules agree after rescaling each basis vector. Scales are
/// propagated breadth-first from the labels closest to degree 0 so that
/// they stay short products.
pub fn compare_up_to_gauge(
    a: &WeightModuleSpec,
    b: &WeightModuleSpec,
    window: Option<i64>,
) -> Result<Option<(Letter, Label, String)>> {
    let mut labels = a.labels(window)?;
    labels.sort_by_key(|l| (l.g.iter().map(|x| x.abs()).sum::<i64>(), l.clone()));
    let inside: HashSet<Label> = labels.iter().cloned().collect();
    let mut scale: HashMap<Label, Scalar> = HashMap::new();
    for root in &labels {
        if scale.contains_key(root) {
            continue;
        }
        scale.insert(root.clone(), Scalar::one());
        let mut queue = VecDeque::from([root.clone()]);
        while let Some(v) = queue.pop_front() {
            let sv = scale[&v].clone();
            for l in a.letters() {
                match (a.act(l, &v)?, b.act(l, &v)?) {
                    (None, None) => {}
                    (Some((t1, c1)), Some((t2, c2))) if t1 == t2 => {
                        // e^b = s·e^a gives c_b = c_a·s(v)/s(t)
                        let st = c1.div(&c2)?.mul(&sv);
                        match scale.get(&t1) {
                            Some(old) if *old != st => {
                                return Ok(Some((l, v, format!("inconsistent gauge at {t1}"))));
                            }
                            Some(_) => {}
                            None if inside.contains(&t1) => {
                                scale.insert(t1.clone(), st);
                                queue.push_back(t1);
                            }
                            None => {}
                        }
                    }
                    (x, y) => {
                        return Ok(Some((l, v, format!("{:?} vs {:?}", x.map(|e| e.0), y.map(|e| e.0)))));
                    }
                }
            }
        }
    }
    Ok(None)
}
