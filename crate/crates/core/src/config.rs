//! Session configuration read from TOML.
//!
//! ```toml
//! cyclotomic_order = 12
//!
//! [algebra]
//! preset = "qwa2"
//! bindings = { q1 = "e^4", q2 = "e^3", l12 = "e^2", lam = "lam" }
//!
//! [point]
//! preset = "n1(lam)"
//!
//! [module]
//! rho = "rho"
//! mu = "mu"
//!
//! [window]
//! bound = 4
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::WeightModuleSpec;
use crate::orbit::{CcrOrbit, WeightPoint};
use crate::qwa::{build_module, classify_case, fixtures, CaseTag};
use crate::scalar::{ParameterEnv, Scalar};
use crate::tgwa::{ccr, QwaAlgebra, TgwaPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraPreset {
    /// Rank-two quantized Weyl algebra, parameters q1, q2, l12.
    Qwa2,
    /// Rank-n quantized Weyl algebra, parameters q{i} and l{i}{j} (i < j).
    QwaN,
    /// Q_ij-CCR algebra, parameters Q{i}{j}.
    Ccr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub preset: AlgebraPreset,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// name → expression; binding a name to itself makes it transcendental.
    #[serde(default)]
    pub bindings: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    /// `n0`, `n1(x)`, `n2(x)` or `generic(a1,a2)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<Vec<String>>,
}

fn default_rho() -> String {
    "rho".into()
}

fn default_mu() -> String {
    "mu".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    /// Family tag; classified from the point when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(default = "default_rho")]
    pub rho: String,
    #[serde(default = "default_mu")]
    pub mu: String,
}

impl Default for ModuleConfig {
    fn default() -> Self {
        ModuleConfig { case: None, rho: default_rho(), mu: default_mu() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub npib_radius: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub cyclotomic_order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointConfig>,
    #[serde(default)]
    pub module: ModuleConfig,
    #[serde(default)]
    pub window: WindowConfig,
    /// A built-in module (`cyclic_n0` or `sign_flip`) used in place of
    /// the algebra and the module built from it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
}

/// The algebra a session works over.
#[derive(Clone, Debug)]
pub enum SessionAlgebra {
    Qwa(QwaAlgebra),
    Presentation(ParameterEnv, TgwaPresentation),
    Ccr(ParameterEnv, TgwaPresentation, CcrOrbit),
}

impl SessionAlgebra {
    pub fn presentation(&self) -> &TgwaPresentation {
        match self {
            SessionAlgebra::Qwa(a) => &a.presentation,
            SessionAlgebra::Presentation(_, p) | SessionAlgebra::Ccr(_, p, _) => p,
        }
    }

    pub fn env(&self) -> &ParameterEnv {
        match self {
            SessionAlgebra::Qwa(a) => &a.env,
            SessionAlgebra::Presentation(e, _) | SessionAlgebra::Ccr(e, _, _) => e,
        }
    }

    pub fn qwa(&self) -> Option<&QwaAlgebra> {
        match self {
            SessionAlgebra::Qwa(a) => Some(a),
            _ => None,
        }
    }

    pub fn ccr(&self) -> Option<&CcrOrbit> {
        match self {
            SessionAlgebra::Ccr(_, _, o) => Some(o),
            _ => None,
        }
    }
}

fn ctx(key: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse(m) => Error::Parse(format!("{key}: {m}")),
        Error::Config(m) => Error::Config(format!("{key}: {m}")),
        Error::UnsupportedParameter(m) => Error::UnsupportedParameter(format!("{key}: {m}")),
        other => other,
    }
}

/// Split `name(a, b)` into the name and its top-level arguments.
fn split_call(s: &str) -> Result<(String, Vec<String>)> {
    let s = s.trim();
    let Some(open) = s.find('(') else { return Ok((s.to_string(), vec![])) };
    if !s.ends_with(')') {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    let inner = &s[open + 1..s.len() - 1];
    let mut args = Vec::new();
    let (mut depth, mut cur) = (0i32, String::new());
    for c in inner.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    if !cur.trim().is_empty() {
        args.push(cur.trim().to_string());
    }
    Ok((s[..open].trim().to_string(), args))
}

impl SessionConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SessionConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.cyclotomic_order == 0 {
            return Err(Error::Config("cyclotomic_order must be positive".into()));
        }
        if let Some(b) = self.window.bound {
            if b <= 0 {
                return Err(Error::Config("window.bound must be positive".into()));
            }
        }
        if let Some(r) = self.window.npib_radius {
            if r <= 0 {
                return Err(Error::Config("window.npib_radius must be positive".into()));
            }
        }
        if self.fixture.is_none() && self.algebra.is_none() {
            return Err(Error::Config("missing [algebra] table".into()));
        }
        if let Some(p) = &self.point {
            if p.preset.is_some() == p.raw.is_some() {
                return Err(Error::Config("point: give exactly one of preset, raw".into()));
            }
        }
        Ok(())
    }

    /// Parameter environment: self-bound names first, then the unit
    /// monomials, which may only mention self-bound names.
    pub fn env(&self) -> Result<ParameterEnv> {
        let mut env = ParameterEnv::new(self.cyclotomic_order);
        let Some(alg) = &self.algebra else { return Ok(env) };
        let mut rest = Vec::new();
        for (name, expr) in &alg.bindings {
            let v = Scalar::parse(expr, self.cyclotomic_order).map_err(ctx(&format!("algebra.bindings.{name}")))?;
            if v == Scalar::var(name) {
                env.bind(name, expr)?;
            } else {
                rest.push((name, v));
            }
        }
        for (name, v) in &rest {
            if let Some(x) = v.vars().iter().map(|x| x.to_string()).find(|x| alg.bindings.contains_key(x) && x != *name) {
                if !matches!(env.binding(&x), Some(crate::scalar::Binding::Transcendental)) {
                    return Err(Error::UnsupportedParameter(format!(
                        "algebra.bindings.{name} refers to bound parameter {x}"
                    )));
                }
            }
            env.bind_value(name, v.clone()).map_err(ctx(&format!("algebra.bindings.{name}")))?;
        }
        Ok(env)
    }

    pub fn algebra(&self) -> Result<SessionAlgebra> {
        if let Some(f) = &self.fixture {
            if self.algebra.is_none() {
                return match f.as_str() {
                    "cyclic_n0" => Ok(SessionAlgebra::Qwa(fixtures::cyclic_n0_algebra()?)),
                    "sign_flip" => Ok(SessionAlgebra::Presentation(
                        ParameterEnv::new(1),
                        crate::tgwa::sign_flip_rank2()?,
                    )),
                    other => Err(Error::Config(format!("fixture: unknown fixture {other:?}"))),
                };
            }
        }
        let cfg = self.algebra.as_ref().ok_or_else(|| Error::Config("missing [algebra] table".into()))?;
        let env = self.env()?;
        match cfg.preset {
            AlgebraPreset::Qwa2 => {
                if cfg.n.is_some_and(|n| n != 2) {
                    return Err(Error::Config("algebra.n: qwa2 has rank 2".into()));
                }
                Ok(SessionAlgebra::Qwa(QwaAlgebra::from_env(env, 2)?))
            }
            AlgebraPreset::QwaN => {
                let n = cfg.n.ok_or_else(|| Error::Config("algebra.n is required for qwa_n".into()))?;
                if n == 0 {
                    return Err(Error::Config("algebra.n must be positive".into()));
                }
                Ok(SessionAlgebra::Qwa(QwaAlgebra::from_env(env, n)?))
            }
            AlgebraPreset::Ccr => {
                let n = cfg.n.ok_or_else(|| Error::Config("algebra.n is required for ccr".into()))?;
                let qm: Vec<Vec<Scalar>> = (1..=n)
                    .map(|i| {
                        (1..=n)
                            .map(|j| {
                                let key = format!("Q{i}{j}");
                                if cfg.bindings.contains_key(&key) {
                                    Ok(env.get(&key))
                                } else if i == j {
                                    Err(Error::Config(format!("algebra.bindings.{key} is required")))
                                } else {
                                    // Q_ji given instead: Q_ij = Q_ji⁻¹
                                    let other = format!("Q{j}{i}");
                                    if cfg.bindings.contains_key(&other) {
                                        env.get(&other).inv()
                                    } else {
                                        Ok(Scalar::one())
                                    }
                                }
                            })
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                let p = ccr(&qm)?;
                let diag: Vec<Scalar> = (0..n).map(|i| qm[i][i].clone()).collect();
                let orbit = CcrOrbit::new(&env, &diag)?;
                Ok(SessionAlgebra::Ccr(env, p, orbit))
            }
        }
    }

    /// Weight point of the session.
    pub fn point(&self, alg: &SessionAlgebra) -> Result<WeightPoint> {
        let p = self.point.as_ref().ok_or_else(|| Error::Config("missing [point] table".into()))?;
        let env = alg.env();
        let n = alg.presentation().n;
        if let Some(raw) = &p.raw {
            if raw.len() != n {
                return Err(Error::Config(format!("point.raw: expected {n} coordinates, got {}", raw.len())));
            }
            let alpha = raw.iter().map(|s| env.parse(s)).collect::<Result<_>>().map_err(ctx("point.raw"))?;
            return Ok(WeightPoint::new(alpha));
        }
        let preset = p.preset.as_deref().unwrap_or_default();
        let (name, args) = split_call(preset).map_err(ctx("point.preset"))?;
        let args: Vec<Scalar> = args.iter().map(|s| env.parse(s)).collect::<Result<_>>().map_err(ctx("point.preset"))?;
        let need_qwa = || {
            alg.qwa().ok_or_else(|| Error::Config(format!("point.preset: {name} needs a quantized Weyl algebra")))
        };
        match (name.as_str(), args.len()) {
            ("n0", 0) => WeightPoint::n0(need_qwa()?),
            ("n1", 1) => WeightPoint::n1(need_qwa()?, &args[0]),
            ("n2", 1) => WeightPoint::n2(need_qwa()?, &args[0]),
            ("generic", k) if k == n => Ok(WeightPoint::new(args)),
            _ => Err(Error::Config(format!("point.preset: unknown preset {preset:?}"))),
        }
    }

    pub fn case(&self, alg: &QwaAlgebra, pt: &WeightPoint) -> Result<CaseTag> {
        match &self.module.case {
            Some(c) => c.parse().map_err(ctx("module.case")),
            None => classify_case(pt, alg),
        }
    }

    /// The module of the session: a fixture or the classified family.
    pub fn module(&self) -> Result<WeightModuleSpec> {
        if let Some(f) = &self.fixture {
            return match f.as_str() {
                "cyclic_n0" => fixtures::cyclic_n0_fixture(),
                "sign_flip" => fixtures::sign_flip_fixture(),
                other => Err(Error::Config(format!("fixture: unknown fixture {other:?}"))),
            };
        }
        let alg = self.algebra()?;
        let qwa = alg.qwa().ok_or_else(|| Error::Config("module: families need a quantized Weyl algebra".into()))?;
        let pt = self.point(&alg)?;
        let tag = self.case(qwa, &pt)?;
        let rho = alg.env().parse(&self.module.rho).map_err(ctx("module.rho"))?;
        let mu = alg.env().parse(&self.module.mu).map_err(ctx("module.mu"))?;
        build_module(tag, &pt, qwa, &rho, &mu, self.window.bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N1: &str = r#"
cyclotomic_order = 12
[algebra]
preset = "qwa2"
bindings = { q1 = "e^4", q2 = "e^3", l12 = "e^2" }
[point]
preset = "n1(1)"
"#;

    #[test]
    fn parses_and_classifies() {
        let cfg = SessionConfig::from_toml(N1).unwrap();
        let alg = cfg.algebra().unwrap();
        let pt = cfg.point(&alg).unwrap();
        assert_eq!(cfg.case(alg.qwa().unwrap(), &pt).unwrap(), CaseTag::N1BreakRou);
        assert_eq!(cfg.module().unwrap().dimension(), Some(3));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SessionConfig::from_toml("cyclotomic_order = 0"), Err(Error::Config(_))));
        assert!(SessionConfig::from_toml(&N1.replace("preset = \"n1(1)\"", "preset = \"n7\"")).is_ok());
        let bad = SessionConfig::from_toml(&N1.replace("n1(1)", "n7")).unwrap();
        let alg = bad.algebra().unwrap();
        assert!(matches!(bad.point(&alg), Err(Error::Config(_))));
        let unknown = format!("{N1}\nextra = 1\n");
        assert!(matches!(SessionConfig::from_toml(&unknown), Err(Error::Config(_))));
        let chained = N1.replace("l12 = \"e^2\"", "l12 = \"q1^2\"");
        let cfg = SessionConfig::from_toml(&chained).unwrap();
        assert!(matches!(cfg.env(), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn split_calls() {
        assert_eq!(split_call("n0").unwrap(), ("n0".into(), vec![]));
        assert_eq!(split_call("generic(a1, (1+e)*x)").unwrap(), ("generic".into(), vec!["a1".into(), "(1+e)*x".into()]));
        assert!(split_call("n1(lam").is_err());
    }
}
