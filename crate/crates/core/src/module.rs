//! Weight modules with a monomial action on a labelled basis {a_g v_k},
//! g in a transversal S of G̃_m / G_m and v_k a basis of M_m.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::BoxReps;
use crate::linalg::Matrix;
use crate::orbit::WeightPoint;
use crate::scalar::Scalar;
use crate::tgwa::{Letter, QwaAlgebra, TgwaPresentation};

/// Basis label: the vector a_g v_k (up to the family's normalization).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub g: Vec<i64>,
    pub k: usize,
}

impl Label {
    pub fn new(g: Vec<i64>, k: usize) -> Self {
        Label { g, k }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.g.iter().map(|x| x.to_string()).collect();
        write!(f, "({};{})", g.join(","), self.k)
    }
}

/// One coordinate of a product transversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoordSet {
    /// [lo, hi], `None` meaning unbounded.
    Interval { lo: Option<i64>, hi: Option<i64> },
    /// {0, …, d−1} taken modulo d.
    Cyclic { d: i64 },
}

impl CoordSet {
    pub const FULL: CoordSet = CoordSet::Interval { lo: None, hi: None };

    pub fn point() -> Self {
        CoordSet::Cyclic { d: 1 }
    }

    fn reduce(&self, x: i64) -> Option<i64> {
        match *self {
            CoordSet::Interval { lo, hi } => {
                (lo.is_none_or(|l| x >= l) && hi.is_none_or(|h| x <= h)).then_some(x)
            }
            CoordSet::Cyclic { d } => Some(x.rem_euclid(d)),
        }
    }

    fn range(&self, window: Option<i64>) -> Result<(i64, i64)> {
        match *self {
            CoordSet::Cyclic { d } => Ok((0, d - 1)),
            CoordSet::Interval { lo, hi } => {
                let w = window;
                let l = match (lo, w) {
                    (Some(l), Some(b)) => l.max(-b),
                    (Some(l), None) => l,
                    (None, Some(b)) => -b,
                    (None, None) => return Err(Error::WindowRequired),
                };
                let h = match (hi, w) {
                    (Some(h), Some(b)) => h.min(b),
                    (Some(h), None) => h,
                    (None, Some(b)) => b,
                    (None, None) => return Err(Error::WindowRequired),
                };
                Ok((l, h))
            }
        }
    }

    fn is_finite(&self) -> bool {
        match *self {
            CoordSet::Cyclic { .. } => true,
            CoordSet::Interval { lo, hi } => lo.is_some() && hi.is_some(),
        }
    }
}

/// The transversal S together with the reduction ζ: G̃_m → S.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Support {
    Product { coords: Vec<CoordSet> },
    /// ℤ²/ℤ(a,b): S = [0,a)×ℤ when a > 0, else ℤ×[0,b).
    Strip { a: i64, b: i64 },
    /// ℤ²/(ℤa ⊕ ℤb) with the box {0..d1−1}×{0..d2−1}.
    Box { a: (i64, i64), b: (i64, i64), reps: BoxReps },
    /// An explicit finite list of degrees, no reduction.
    Explicit { degrees: Vec<Vec<i64>> },
}

impl Support {
    pub fn rank(&self) -> usize {
        match self {
            Support::Product { coords } => coords.len(),
            Support::Strip { .. } | Support::Box { .. } => 2,
            Support::Explicit { degrees } => degrees.first().map_or(0, |d| d.len()),
        }
    }

    /// ζ(g), or `None` when g lies outside G̃_m.
    pub fn reduce(&self, g: &[i64]) -> Option<Vec<i64>> {
        match self {
            Support::Product { coords } => coords.iter().zip(g).map(|(c, &x)| c.reduce(x)).collect(),
            Support::Strip { a, b } => {
                if *a > 0 {
                    let q = g[0].div_euclid(*a);
                    Some(vec![g[0] - q * a, g[1] - q * b])
                } else {
                    Some(vec![g[0], g[1].rem_euclid(*b)])
                }
            }
            Support::Box { reps, .. } => {
                let (i, j) = reps.reduce((g[0], g[1]));
                Some(vec![i, j])
            }
            Support::Explicit { degrees } => degrees.iter().any(|d| d.as_slice() == g).then(|| g.to_vec()),
        }
    }

    pub fn contains(&self, g: &[i64]) -> bool {
        self.reduce(g).is_some_and(|h| h == g)
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Support::Product { coords } => coords.iter().all(|c| c.is_finite()),
            Support::Strip { .. } => false,
            Support::Box { .. } | Support::Explicit { .. } => true,
        }
    }

    /// Elements of S, clipped to [−B, B] in unbounded directions.
    pub fn enumerate(&self, window: Option<i64>) -> Result<Vec<Vec<i64>>> {
        let ranges: Vec<(i64, i64)> = match self {
            Support::Product { coords } => coords.iter().map(|c| c.range(window)).collect::<Result<_>>()?,
            Support::Strip { a, b } => {
                let b_ = window.ok_or(Error::WindowRequired)?;
                if *a > 0 {
                    vec![(0, a - 1), (-b_, b_)]
                } else {
                    vec![(-b_, b_), (0, b - 1)]
                }
            }
            Support::Box { reps, .. } => vec![(0, reps.d1 - 1), (0, reps.d2 - 1)],
            Support::Explicit { degrees } => return Ok(degrees.clone()),
        };
        let mut out = vec![Vec::new()];
        for (lo, hi) in ranges {
            out = out.into_iter().flat_map(|p| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat())).collect();
        }
        Ok(out)
    }
}

/// X_i or Y_i applied to a basis label: at most one target.
pub type Edge = Option<(Label, Scalar)>;
pub type ActionFn = Arc<dyn Fn(Letter, &Label) -> Result<Edge> + Send + Sync>;
pub type LabelScale = Arc<dyn Fn(&Label) -> Result<Scalar> + Send + Sync>;

/// A weight module given by a transversal, a weight space M_m and a lazy
/// monomial action.
#[derive(Clone)]
pub struct WeightModuleSpec {
    pub name: String,
    pub presentation: TgwaPresentation,
    pub qwa: Option<QwaAlgebra>,
    pub base: WeightPoint,
    pub support: Support,
    pub weight_dim: usize,
    /// Basis of G_m and the matrices of the corresponding a_s on M_m.
    pub gm_basis: Vec<Vec<i64>>,
    pub weight_space: Vec<Matrix>,
    pub params: BTreeMap<String, Scalar>,
    action: ActionFn,
}

impl fmt::Debug for WeightModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightModuleSpec")
            .field("name", &self.name)
            .field("support", &self.support)
            .field("weight_dim", &self.weight_dim)
            .finish()
    }
}

impl WeightModuleSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        presentation: TgwaPresentation,
        qwa: Option<QwaAlgebra>,
        base: WeightPoint,
        support: Support,
        weight_dim: usize,
        gm_basis: Vec<Vec<i64>>,
        weight_space: Vec<Matrix>,
        params: BTreeMap<String, Scalar>,
        action: ActionFn,
    ) -> Self {
        WeightModuleSpec {
            name: name.into(),
            presentation,
            qwa,
            base,
            support,
            weight_dim,
            gm_basis,
            weight_space,
            params,
            action,
        }
    }

    pub fn rank(&self) -> usize {
        self.presentation.n
    }

    /// Image of a basis vector; zero coefficients are reported as `None`.
    pub fn act(&self, l: Letter, v: &Label) -> Result<Edge> {
        Ok((self.action)(l, v)?.filter(|(_, c)| !c.is_zero()))
    }

    pub fn labels(&self, window: Option<i64>) -> Result<Vec<Label>> {
        let degs = self.support.enumerate(window)?;
        Ok(degs.into_iter().flat_map(|g| (0..self.weight_dim).map(move |k| Label::new(g.clone(), k))).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.support.is_finite()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.is_finite().then(|| self.support.enumerate(None).map(|s| s.len() * self.weight_dim).unwrap_or(0))
    }

    /// Point of the weight space containing the label: σ^g(m).
    pub fn point(&self, v: &Label) -> WeightPoint {
        WeightPoint::new(self.presentation.sigma_point(&v.g, &self.base.alpha))
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.rank()).flat_map(|i| [Letter::X(i), Letter::Y(i)]).collect()
    }

    /// Apply a sequence of generators (rightmost first) to a vector given
    /// as a single scaled label.
    pub fn apply_word(&self, word: &[Letter], v: &Label) -> Result<Edge> {
        let mut cur = (v.clone(), Scalar::one());
        for &l in word.iter().rev() {
            match self.act(l, &cur.0)? {
                None => return Ok(None),
                Some((t, c)) => cur = (t, cur.1.mul(&c)),
            }
        }
        Ok(Some(cur))
    }

    /// Same module with every edge of one generator multiplied by `factor`.
    pub fn scale_generator(&self, letter: Letter, factor: Scalar) -> Self {
        let inner = self.action.clone();
        let mut out = self.clone();
        out.action = Arc::new(move |l, v| {
            let e = inner(l, v)?;
            Ok(if l == letter { e.map(|(t, c)| (t, c.mul(&factor))) } else { e })
        });
        out
    }

    /// Same module with a different action (used to corrupt or re-gauge).
    pub fn with_action(&self, action: ActionFn) -> Self {
        let mut out = self.clone();
        out.action = action;
        out
    }

    /// Same module in the basis e'_v = s(v)·e_v.
    pub fn rescaled(&self, s: LabelScale) -> Self {
        let inner = self.action.clone();
        self.with_action(Arc::new(move |l, v| {
            Ok(match inner(l, v)? {
                None => None,
                Some((t, c)) => {
                    let f = s(v)?.div(&s(&t)?)?;
                    Some((t, c.mul(&f)))
                }
            })
        }))
    }

    /// Direct sum of two modules on the same transversal: labels of `other`
    /// are shifted by `self.weight_dim` in k.
    pub fn direct_sum(&self, other: &WeightModuleSpec) -> Result<Self> {
        if self.support != other.support || self.base != other.base {
            return Err(Error::Config("direct sum needs a common support".into()));
        }
        let d = self.weight_dim;
        let (a, b) = (self.action.clone(), other.action.clone());
        let action: ActionFn = Arc::new(move |l, v| {
            if v.k < d {
                a(l, v)
            } else {
                let w = Label::new(v.g.clone(), v.k - d);
                Ok(b(l, &w)?.map(|(t, c)| (Label::new(t.g, t.k + d), c)))
            }
        });
        let mut out = self.clone();
        out.name = format!("{}+{}", self.name, other.name);
        out.weight_dim = d + other.weight_dim;
        out.weight_space = self
            .weight_space
            .iter()
            .zip(&other.weight_space)
            .map(|(x, y)| block_diag(x, y))
            .collect();
        out.action = action;
        Ok(out)
    }

    /// Tabulated action on the window.
    pub fn materialize(&self, window: Option<i64>) -> Result<ModuleTable> {
        let basis = self.labels(window)?;
        let mut action = BTreeMap::new();
        for l in self.letters() {
            let mut edges = Vec::new();
            for v in &basis {
                if let Some((t, c)) = self.act(l, v)? {
                    edges.push(TableEdge { from: v.clone(), to: t, coeff: c.to_string() });
                }
            }
            action.insert(l.to_string(), edges);
        }
        Ok(ModuleTable {
            case: self.name.clone(),
            support: self.support.clone(),
            base: self.base.alpha.iter().map(|s| s.to_string()).collect(),
            weight_dim: self.weight_dim,
            gm_basis: self.gm_basis.clone(),
            window,
            basis,
            action,
            params: self.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        })
    }
}

fn block_diag(x: &Matrix, y: &Matrix) -> Matrix {
    let (n, m) = (x.nrows(), y.nrows());
    let mut out = Matrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out.rows[i][j] = x.rows[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out.rows[n + i][n + j] = y.rows[i][j].clone();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEdge {
    pub from: Label,
    pub to: Label,
    pub coeff: String,
}

/// JSON form of a module on a window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleTable {
    pub case: String,
    pub support: Support,
    pub base: Vec<String>,
    pub weight_dim: usize,
    pub gm_basis: Vec<Vec<i64>>,
    pub window: Option<i64>,
    pub basis: Vec<Label>,
    pub action: BTreeMap<String, Vec<TableEdge>>,
    pub params: BTreeMap<String, String>,
}

impl ModuleTable {
    /// Module whose action is read from the table. Labels outside the
    /// tabulated window raise a config error rather than acting by zero.
    pub fn to_spec(&self, presentation: TgwaPresentation, qwa: Option<QwaAlgebra>, n: u32) -> Result<WeightModuleSpec> {
        let parse = |s: &str| Scalar::parse(s, n);
        let base = WeightPoint::new(self.base.iter().map(|s| parse(s)).collect::<Result<_>>()?);
        let letters: Vec<Letter> = (0..presentation.n).flat_map(|i| [Letter::X(i), Letter::Y(i)]).collect();
        let mut edges: HashMap<(Letter, Label), (Label, Scalar)> = HashMap::new();
        for l in &letters {
            for e in self.action.get(&l.to_string()).map(Vec::as_slice).unwrap_or_default() {
                edges.insert((*l, e.from.clone()), (e.to.clone(), parse(&e.coeff)?));
            }
        }
        let basis: HashSet<Label> = self.basis.iter().cloned().collect();
        let action: ActionFn = Arc::new(move |l, v| {
            if !basis.contains(v) {
                return Err(Error::Config(format!("label {v} lies outside the tabulated window")));
            }
            Ok(edges.get(&(l, v.clone())).cloned())
        });
        let params = self.params.iter().map(|(k, v)| Ok((k.clone(), parse(v)?))).collect::<Result<_>>()?;
        Ok(WeightModuleSpec::new(
            self.case.clone(),
            presentation,
            qwa,
            base,
            self.support.clone(),
            self.weight_dim,
            self.gm_basis.clone(),
            vec![],
            params,
            action,
        ))
    }
}
