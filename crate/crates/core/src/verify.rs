//! Independent checks on a weight module: defining relations, weight
//! grading, simplicity, inner breaks and proper inner breaks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{EchelonSpan, Matrix};
use crate::module::{Label, WeightModuleSpec};
use crate::orbit::{g_tilde, sigma_action, WeightPoint};
use crate::scalar::Scalar;
use crate::tgwa::{normalize, star, CanonicalWord, Letter, Word};

/// Sparse vector in the label basis.
pub type Vector = BTreeMap<Label, Scalar>;

fn unit(v: &Label) -> Vector {
    BTreeMap::from([(v.clone(), Scalar::one())])
}

fn axpy(acc: &mut Vector, c: &Scalar, x: &Vector) {
    for (l, s) in x {
        let e = acc.entry(l.clone()).or_insert_with(Scalar::zero);
        *e = e.add(&c.mul(s));
    }
    acc.retain(|_, s| !s.is_zero());
}

/// Apply a word (rightmost letter first) to a vector.
pub fn apply(m: &WeightModuleSpec, word: &[Letter], x: &Vector) -> Result<Vector> {
    let mut cur = x.clone();
    for &l in word.iter().rev() {
        let mut next = Vector::new();
        for (v, c) in &cur {
            if let Some((t, a)) = m.act(l, v)? {
                axpy(&mut next, &c.mul(&a), &unit(&t));
            }
        }
        cur = next;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub basis: Label,
    /// lhs − rhs, as a vector.
    pub residual: Vec<(Label, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradingFailure {
    pub letter: String,
    pub from: Label,
    pub to: Label,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Simplicity {
    Simple,
    NotSimple { witness: Vec<Label> },
    Undecided { reason: String },
    /// Infinite-dimensional modules are not tested.
    NotChecked { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InnerBreak {
    pub degree: Vec<i64>,
    pub point: Vec<String>,
    /// 1-based generator index.
    pub direction: usize,
    /// false: t_i ∈ m and σ_i(m) ∈ supp; true: σ_i(t_i) ∈ m and σ_i⁻¹(m) ∈ supp.
    pub mirror: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProperInnerBreak {
    pub degree: Vec<i64>,
    pub point: Vec<String>,
    /// Degree g of the word with a_g M_m ≠ 0 but a_g^* a_g ∈ m.
    pub g: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub module: String,
    pub window: Option<i64>,
    pub basis_size: usize,
    pub relation_failures: Vec<RelationFailure>,
    pub grading_ok: bool,
    pub grading_failures: Vec<GradingFailure>,
    pub simplicity: Simplicity,
    pub inner_breaks: Vec<InnerBreak>,
    pub npib_radius: i64,
    pub proper_inner_breaks: Vec<ProperInnerBreak>,
}

impl VerificationReport {
    /// Relations and grading hold, no proper inner break, and simplicity is
    /// not refuted.
    pub fn passes(&self) -> bool {
        self.relation_failures.is_empty()
            && self.grading_ok
            && self.proper_inner_breaks.is_empty()
            && matches!(self.simplicity, Simplicity::Simple | Simplicity::NotChecked { .. })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = self.window.map_or("full".to_string(), |b| format!("window {b}"));
        let _ = writeln!(s, "module {} ({}, {} basis vectors)", self.module, w, self.basis_size);
        let _ = writeln!(s, "relations: {} failure(s)", self.relation_failures.len());
        for f in self.relation_failures.iter().take(10) {
            let _ = writeln!(s, "  {} on {}", f.relation, f.basis);
        }
        let _ = writeln!(s, "grading: {}", if self.grading_ok { "ok" } else { "FAILED" });
        for f in &self.grading_failures {
            let _ = writeln!(s, "  {} {} -> {}", f.letter, f.from, f.to);
        }
        let simp = match &self.simplicity {
            Simplicity::Simple => "simple".to_string(),
            Simplicity::NotSimple { witness } => format!("not simple (submodule of dim {})", witness.len()),
            Simplicity::Undecided { reason } => format!("undecided: {reason}"),
            Simplicity::NotChecked { reason } => format!("not checked: {reason}"),
        };
        let _ = writeln!(s, "simplicity: {simp}");
        let _ = writeln!(s, "inner breaks: {}", self.inner_breaks.len());
        for b in &self.inner_breaks {
            let side = if b.mirror { "σ_i(t_i)" } else { "t_i" };
            let _ = writeln!(s, "  point ({}) i={} via {side}", b.point.join(", "), b.direction);
        }
        let _ = writeln!(s, "proper inner breaks (radius {}): {}", self.npib_radius, self.proper_inner_breaks.len());
        for b in self.proper_inner_breaks.iter().take(10) {
            let _ = writeln!(s, "  point ({}) g={:?}", b.point.join(", "), b.g);
        }
        let _ = writeln!(s, "result: {}", if self.passes() { "PASS" } else { "FAIL" });
        s
    }
}

fn residual(x: &Vector) -> Vec<(Label, String)> {
    x.iter().map(|(l, c)| (l.clone(), c.to_string())).collect()
}

fn point_values(m: &WeightModuleSpec, v: &Label) -> Vec<Scalar> {
    m.point(v).alpha
}

/// Every defining relation on every basis vector of the window. QWA
/// modules are checked in both the TGWA form and the original form.
pub fn check_relations(m: &WeightModuleSpec, window: Option<i64>) -> Result<Vec<RelationFailure>> {
    let p = &m.presentation;
    let n = p.n;
    let mut out = Vec::new();
    let x = |i| Letter::X(i);
    let y = |i| Letter::Y(i);
    for v in m.labels(window)? {
        let e = unit(&v);
        let alpha = point_values(m, &v);
        let mut rel = |name: String, lhs: Vector| {
            if !lhs.is_empty() {
                out.push(RelationFailure { relation: name, basis: v.clone(), residual: residual(&lhs) });
            }
        };
        // lhs − c·rhs for two words
        let diff = |a: &[Letter], c: &Scalar, b: &[Letter]| -> Result<Vector> {
            let mut r = apply(m, a, &e)?;
            axpy(&mut r, &c.neg(), &apply(m, b, &e)?);
            Ok(r)
        };
        for i in 0..n {
            let t = p.t[i].eval(&alpha);
            rel(format!("t({})", i + 1), diff(&[y(i), x(i)], &t, &[])?);
            let st = p.sigma[i].apply(&p.t[i]).eval(&alpha);
            rel(format!("st({})", i + 1), diff(&[x(i), y(i)], &st, &[])?);
            for j in 0..n {
                if i == j {
                    continue;
                }
                rel(format!("mu({},{})", i + 1, j + 1), diff(&[x(i), y(j)], &p.mu[i][j], &[y(j), x(i)])?);
                if i < j {
                    if let Some(c) = &p.x_commutation {
                        rel(format!("xx({},{})", i + 1, j + 1), diff(&[x(i), x(j)], &c[i][j], &[x(j), x(i)])?);
                    }
                    if let Some(d) = p.y_commutation() {
                        rel(format!("yy({},{})", i + 1, j + 1), diff(&[y(i), y(j)], &d[i][j], &[y(j), y(i)])?);
                    }
                }
            }
        }
        if let Some(alg) = &m.qwa {
            let (q, l) = (&alg.q, &alg.lambda);
            for i in 0..n {
                for j in i + 1..n {
                    rel(format!("qxx({},{})", i + 1, j + 1), diff(&[x(i), x(j)], &q[i].mul(&l[i][j]), &[x(j), x(i)])?);
                    rel(format!("qyy({},{})", i + 1, j + 1), diff(&[y(i), y(j)], &l[i][j], &[y(j), y(i)])?);
                    rel(format!("qxy({},{})", i + 1, j + 1), diff(&[x(i), y(j)], &l[j][i], &[y(j), x(i)])?);
                    rel(
                        format!("qxy({},{})", j + 1, i + 1),
                        diff(&[x(j), y(i)], &q[i].mul(&l[i][j]), &[y(i), x(j)])?,
                    );
                }
                // x_iy_i − q_iy_ix_i − 1 − Σ_{k<i}(q_k − 1)y_kx_k
                let mut r = diff(&[x(i), y(i)], &q[i], &[y(i), x(i)])?;
                axpy(&mut r, &Scalar::from_int(-1), &e);
                for k in 0..i {
                    let c = q[k].sub(&Scalar::one()).neg();
                    axpy(&mut r, &c, &apply(m, &[y(k), x(k)], &e)?);
                }
                rel(format!("qxy({},{})", i + 1, i + 1), r);
            }
        }
    }
    Ok(out)
}

/// X_i edges go from m to σ_i(m), Y_i edges to σ_i⁻¹(m). For QWA modules
/// the expected point comes from the closed-form orbit action.
pub fn check_weight_grading(m: &WeightModuleSpec, window: Option<i64>) -> Result<Vec<GradingFailure>> {
    let n = m.rank();
    let mut out = Vec::new();
    for v in m.labels(window)? {
        let here = m.point(&v);
        for l in m.letters() {
            let Some((t, _)) = m.act(l, &v)? else { continue };
            let mut e = vec![0; n];
            e[l.index()] = if matches!(l, Letter::X(_)) { 1 } else { -1 };
            let expect = match &m.qwa {
                Some(alg) => sigma_action(&e, &here, alg)?.alpha,
                None => m.presentation.sigma_point(&e, &here.alpha),
            };
            if m.point(&t).alpha != expect {
                out.push(GradingFailure { letter: l.to_string(), from: v.clone(), to: t });
            }
        }
    }
    Ok(out)
}

/// Labels reachable from `v` along nonzero edges.
fn reach(m: &WeightModuleSpec, v: &Label) -> Result<BTreeSet<Label>> {
    let mut seen = BTreeSet::from([v.clone()]);
    let mut stack = vec![v.clone()];
    while let Some(u) = stack.pop() {
        for l in m.letters() {
            if let Some((t, _)) = m.act(l, &u)? {
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
    }
    Ok(seen)
}

/// Matrix on the weight space at degree g of the canonical word of s.
fn loop_matrix(m: &WeightModuleSpec, g: &[i64], s: &[i64]) -> Result<Matrix> {
    let d = m.weight_dim;
    let word = Word::canonical(s).0;
    let mut mat = Matrix::zeros(d, d);
    for k in 0..d {
        if let Some((t, c)) = m.apply_word(&word, &Label::new(g.to_vec(), k))? {
            if t.g != g {
                return Err(Error::CertificationFailed(format!("loop {s:?} leaves degree {g:?}")));
            }
            mat.rows[t.k][k] = c;
        }
    }
    Ok(mat)
}

fn is_diagonal(a: &Matrix) -> bool {
    (0..a.nrows()).all(|i| (0..a.nrows()).all(|j| i == j || a.rows[i][j].is_zero()))
}

/// Dimension of the algebra generated by the matrices (closure of the span
/// under left multiplication by generators).
fn generated_algebra_dim(gens: &[Matrix]) -> usize {
    let d = gens.first().map_or(0, |g| g.nrows());
    let flat = |a: &Matrix| a.rows.iter().flatten().cloned().collect::<Vec<_>>();
    let mut span = EchelonSpan::new();
    let mut queue = vec![Matrix::identity(d)];
    span.insert(flat(&queue[0]));
    while let Some(a) = queue.pop() {
        for g in gens {
            let b = g.mul(&a);
            if span.insert(flat(&b)) {
                queue.push(b);
            }
        }
        if span.dim() == d * d {
            break;
        }
    }
    span.dim()
}

pub fn check_simplicity(m: &WeightModuleSpec) -> Result<Simplicity> {
    if !m.is_finite() {
        return Err(Error::InfiniteDimension);
    }
    let labels = m.labels(None)?;
    let all: BTreeSet<Label> = labels.iter().cloned().collect();
    for v in &labels {
        let r = reach(m, v)?;
        if r != all {
            return Ok(Simplicity::NotSimple { witness: r.into_iter().collect() });
        }
    }
    if m.weight_dim == 1 {
        return Ok(Simplicity::Simple);
    }
    let g = labels[0].g.clone();
    let mats: Vec<Matrix> = m.gm_basis.iter().map(|s| loop_matrix(m, &g, s)).collect::<Result<_>>()?;
    let diag: Vec<&Matrix> = mats.iter().filter(|a| is_diagonal(a)).collect();
    let keys: Vec<Vec<String>> =
        (0..m.weight_dim).map(|k| diag.iter().map(|a| a.rows[k][k].to_string()).collect()).collect();
    let distinct: BTreeSet<&Vec<String>> = keys.iter().collect();
    if !diag.is_empty() && distinct.len() == m.weight_dim {
        return Ok(Simplicity::Simple);
    }
    let d = m.weight_dim;
    if generated_algebra_dim(&mats) == d * d {
        return Ok(Simplicity::Simple);
    }
    Ok(Simplicity::Undecided { reason: "weight space is not shown simple over the base field".into() })
}

fn point_key(a: &[Scalar]) -> Vec<String> {
    a.iter().map(|s| s.to_string()).collect()
}

/// Inner breaks among the support points of the window.
pub fn check_inner_breaks(m: &WeightModuleSpec, window: Option<i64>) -> Result<Vec<InnerBreak>> {
    let p = &m.presentation;
    let degrees = m.support.enumerate(window)?;
    let points: Vec<Vec<Scalar>> = degrees.iter().map(|g| p.sigma_point(g, &m.base.alpha)).collect();
    let supp: BTreeSet<Vec<String>> = points.iter().map(|a| point_key(a)).collect();
    let mut out = Vec::new();
    for (g, a) in degrees.iter().zip(&points) {
        for i in 0..p.n {
            let mut e = vec![0; p.n];
            e[i] = 1;
            let fwd = p.sigma_point(&e, a);
            e[i] = -1;
            let back = p.sigma_point(&e, a);
            let t = p.t[i].eval(a);
            let st = p.sigma[i].apply(&p.t[i]).eval(a);
            for (mirror, val, nb) in [(false, t, fwd), (true, st, back)] {
                if val.is_zero() && supp.contains(&point_key(&nb)) {
                    out.push(InnerBreak { degree: g.clone(), point: point_key(a), direction: i + 1, mirror });
                }
            }
        }
    }
    Ok(out)
}

/// Box radius for the proper-inner-break scan: twice (largest finite G̃
/// bound + 1), or 4 when G̃ has no finite bound or is not available.
pub fn default_npib_radius(m: &WeightModuleSpec) -> Result<i64> {
    let fallback = 4;
    let Some(alg) = &m.qwa else { return Ok(fallback) };
    let gt = g_tilde(&WeightPoint::new(m.base.alpha.clone()), alg)?;
    let b = gt.lo.iter().chain(&gt.hi).flatten().map(|x| x.abs()).max();
    Ok(b.map_or(fallback, |b| 2 * (b + 1)))
}

/// Degrees g in [−R, R]ⁿ with a_g acting nonzero on some M_m of the window
/// while a_g^* a_g vanishes at m.
pub fn check_proper_inner_breaks(
    m: &WeightModuleSpec,
    window: Option<i64>,
    radius: i64,
) -> Result<Vec<ProperInnerBreak>> {
    let p = &m.presentation;
    if !p.is_scalar_graded() {
        return Err(Error::NotScalarGraded("proper inner breaks need normal forms".into()));
    }
    let mut pairs: HashMap<Vec<i64>, CanonicalWord> = HashMap::new();
    let mut out = Vec::new();
    for h in m.support.enumerate(window)? {
        let alpha = p.sigma_point(&h, &m.base.alpha);
        let mut acting = BTreeSet::new();
        for k in 0..m.weight_dim {
            acting_degrees(m, radius, &Label::new(h.clone(), k), &mut acting)?;
        }
        for g in acting {
            if !pairs.contains_key(&g) {
                let a = Word::canonical(&g);
                pairs.insert(g.clone(), normalize(&star(&a).concat(&a), p)?);
            }
            if pairs[&g].eval_at(&alpha).is_zero() {
                out.push(ProperInnerBreak { degree: h.clone(), point: point_key(&alpha), g });
            }
        }
    }
    Ok(out)
}

/// Degrees g in the box with a_g v ≠ 0. Since a_g = Z_1^{g_1}⋯Z_n^{g_n}
/// acts last coordinate first, each coordinate is walked outward from 0
/// reusing the previous power.
fn acting_degrees(m: &WeightModuleSpec, radius: i64, v: &Label, out: &mut BTreeSet<Vec<i64>>) -> Result<()> {
    let n = m.rank();
    let mut frontier: Vec<(Vec<i64>, Label)> = vec![(vec![0; n], v.clone())];
    for j in (0..n).rev() {
        let mut next = Vec::new();
        for (g, start) in frontier {
            next.push((g.clone(), start.clone()));
            for (l, sign) in [(Letter::X(j), 1), (Letter::Y(j), -1)] {
                let mut cur = start.clone();
                for step in 1..=radius {
                    match m.act(l, &cur)? {
                        None => break,
                        Some((t, _)) => {
                            let mut g2 = g.clone();
                            g2[j] = sign * step;
                            next.push((g2, t.clone()));
                            cur = t;
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    out.extend(frontier.into_iter().map(|(g, _)| g));
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Window for infinite modules; ignored for finite ones.
    pub window: Option<i64>,
    /// Proper-inner-break radius; `None` uses [`default_npib_radius`].
    pub npib_radius: Option<i64>,
}

pub fn verify(m: &WeightModuleSpec, opts: &VerifyOptions) -> Result<VerificationReport> {
    let window = if m.is_finite() { None } else { Some(opts.window.ok_or(Error::WindowRequired)?) };
    let grading_failures = check_weight_grading(m, window)?;
    let simplicity = match check_simplicity(m) {
        Err(Error::InfiniteDimension) => Simplicity::NotChecked { reason: "infinite-dimensional".into() },
        r => r?,
    };
    let radius = match opts.npib_radius {
        Some(r) => r,
        None => default_npib_radius(m)?,
    };
    Ok(VerificationReport {
        module: m.name.clone(),
        window,
        basis_size: m.labels(window)?.len(),
        relation_failures: check_relations(m, window)?,
        grading_ok: grading_failures.is_empty(),
        grading_failures,
        simplicity,
        inner_breaks: check_inner_breaks(m, window)?,
        npib_radius: radius,
        proper_inner_breaks: check_proper_inner_breaks(m, window, radius)?,
    })
}
