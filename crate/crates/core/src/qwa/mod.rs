//! Simple weight modules over the rank-two quantized Weyl algebra with
//! finite-dimensional weight spaces: case dispatch and the module families.

pub mod constants;
mod families;
pub mod fixtures;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use constants::{induced_constants, InducedConstants};
pub use families::zeta;

use crate::error::{Error, Result};
use crate::module::WeightModuleSpec;
use crate::orbit::{break_exponents, gamma_sequence, g_tilde, isotropy, SolutionSet, WeightPoint};
use crate::scalar::Scalar;
use crate::tgwa::QwaAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    N0,
    N1BreakRou,
    N1BreakHighest,
    N1BreakLowest,
    N1NobreakRou,
    N1NobreakGeneric,
    N2Rank0,
    N2Rank1,
    N2Rank2,
    GenericBothRou,
    GenericOther,
}

impl CaseTag {
    pub const ALL: [CaseTag; 11] = [
        CaseTag::N0,
        CaseTag::N1BreakRou,
        CaseTag::N1BreakHighest,
        CaseTag::N1BreakLowest,
        CaseTag::N1NobreakRou,
        CaseTag::N1NobreakGeneric,
        CaseTag::N2Rank0,
        CaseTag::N2Rank1,
        CaseTag::N2Rank2,
        CaseTag::GenericBothRou,
        CaseTag::GenericOther,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::N0 => "N0",
            CaseTag::N1BreakRou => "N1_BREAK_ROU",
            CaseTag::N1BreakHighest => "N1_BREAK_HIGHEST",
            CaseTag::N1BreakLowest => "N1_BREAK_LOWEST",
            CaseTag::N1NobreakRou => "N1_NOBREAK_ROU",
            CaseTag::N1NobreakGeneric => "N1_NOBREAK_GENERIC",
            CaseTag::N2Rank0 => "N2_RANK0",
            CaseTag::N2Rank1 => "N2_RANK1",
            CaseTag::N2Rank2 => "N2_RANK2",
            CaseTag::GenericBothRou => "GENERIC_BOTH_ROU",
            CaseTag::GenericOther => "GENERIC_OTHER",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown case tag {s}")))
    }
}

fn require_rank2(pt: &WeightPoint, alg: &QwaAlgebra) -> Result<()> {
    if alg.rank() != 2 || pt.rank() != 2 {
        return Err(Error::InvalidPresentation("the classification is for rank two".into()));
    }
    Ok(())
}

/// Which family a simple module with M_m ≠ 0 belongs to.
pub fn classify_case(pt: &WeightPoint, alg: &QwaAlgebra) -> Result<CaseTag> {
    require_rank2(pt, alg)?;
    let g = gamma_sequence(pt, alg).gammas;
    Ok(match (g[1].is_zero(), g[2].is_zero()) {
        (true, true) => CaseTag::N0,
        (false, true) => {
            let rou = alg.q[0].root_of_unity_order()?.is_some();
            match (break_exponents(pt, 0, alg)?, rou) {
                (SolutionSet::Empty, true) => CaseTag::N1NobreakRou,
                (SolutionSet::Empty, false) => CaseTag::N1NobreakGeneric,
                (_, true) => CaseTag::N1BreakRou,
                (SolutionSet::Single { value }, false) if value >= 0 => CaseTag::N1BreakHighest,
                _ => CaseTag::N1BreakLowest,
            }
        }
        (true, false) => match isotropy(pt, alg)?.rank() {
            0 => CaseTag::N2Rank0,
            1 => CaseTag::N2Rank1,
            _ => CaseTag::N2Rank2,
        },
        (false, false) => {
            let gt = g_tilde(pt, alg)?;
            let rou1 = alg.q[0].root_of_unity_order()?.is_some();
            let rou2 = alg.q[1].root_of_unity_order()?.is_some();
            if rou1 && rou2 && gt.is_full(0) && gt.is_full(1) {
                CaseTag::GenericBothRou
            } else {
                CaseTag::GenericOther
            }
        }
    })
}

/// The module of the given family at the orbit of `pt`, with weight-space
/// parameters ρ, μ. Infinite families need a window for later evaluation.
pub fn build_module(
    tag: CaseTag,
    pt: &WeightPoint,
    alg: &QwaAlgebra,
    rho: &Scalar,
    mu: &Scalar,
    window: Option<i64>,
) -> Result<WeightModuleSpec> {
    let found = classify_case(pt, alg)?;
    if found != tag {
        return Err(Error::CaseMismatch(format!("point belongs to {found}, not {tag}")));
    }
    if rho.is_zero() || mu.is_zero() {
        return Err(Error::ZeroInput);
    }
    let m = families::build(tag, pt, alg, rho, mu)?;
    if !m.is_finite() && window.is_none() {
        return Err(Error::WindowRequired);
    }
    Ok(m)
}
