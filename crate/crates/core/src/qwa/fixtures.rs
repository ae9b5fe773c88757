//! Two small hand-built modules used as fixtures for the verifier.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::linalg::Matrix;
use crate::module::{ActionFn, CoordSet, Label, Support, WeightModuleSpec};
use crate::orbit::WeightPoint;
use crate::scalar::{ParameterEnv, Scalar};
use crate::tgwa::{sign_flip_rank2, Letter, QwaAlgebra};

/// The algebra of the cyclic fixture: N = 6, q_1 = ε², q_2 = ε, λ_12 = ε.
pub fn cyclic_n0_algebra() -> Result<QwaAlgebra> {
    let n = 6;
    QwaAlgebra::new(
        ParameterEnv::new(n),
        vec![Scalar::root(n, 2), Scalar::root(n, 1)],
        &[vec![Scalar::one(), Scalar::root(n, 1)]],
    )
}

/// Two-dimensional module over n_0 where X_1 permutes v_0, v_1 and X_2 acts
/// by (q_1λ_12)^{−k} = ±1; Y_2 = 0. Simple, with a_{(0,1)} = X_2 nonzero on
/// M_m although Y_2X_2 = 0 there.
pub fn cyclic_n0_fixture() -> Result<WeightModuleSpec> {
    let alg = cyclic_n0_algebra()?;
    let base = WeightPoint::n0(&alg)?;
    let r = 2usize;
    let q1l = alg.q[0].mul(&alg.lambda[0][1]);
    let y1 = Scalar::one().sub(&alg.q[0]).inv()?;
    let mut shift = Matrix::zeros(r, r);
    for k in 0..r {
        shift.rows[(k + 1) % r][k] = Scalar::one();
    }
    let x2 = Matrix::diagonal((0..r as i64).map(|k| q1l.pow(-k)).collect::<Result<_>>()?);
    let action: ActionFn = Arc::new(move |l, v: &Label| {
        let g = v.g.clone();
        Ok(match l {
            Letter::X(0) => Some((Label::new(g, (v.k + 1) % r), Scalar::one())),
            Letter::Y(0) => Some((Label::new(g, (v.k + r - 1) % r), y1.clone())),
            Letter::X(_) => Some((v.clone(), q1l.pow(-(v.k as i64))?)),
            Letter::Y(_) => None,
        })
    });
    Ok(WeightModuleSpec::new(
        "cyclic_n0",
        alg.presentation.clone(),
        Some(alg),
        base,
        Support::Product { coords: vec![CoordSet::point(), CoordSet::point()] },
        r,
        vec![vec![1, 0], vec![0, 1]],
        vec![shift, x2],
        BTreeMap::new(),
        action,
    ))
}

/// Module over the sign-flip presentation at α = (0, −1): basis v, w with
/// X_2 swapping them, Y_2v = w, Y_2w = −v and X_1 = Y_1 = 0.
pub fn sign_flip_fixture() -> Result<WeightModuleSpec> {
    let pres = sign_flip_rank2()?;
    let base = WeightPoint::new(vec![Scalar::zero(), Scalar::from_int(-1)]);
    let v = Label::new(vec![0, 0], 0);
    let w = Label::new(vec![0, 1], 0);
    let action: ActionFn = Arc::new(move |l, x: &Label| {
        let is_v = *x == v;
        Ok(match l {
            Letter::X(1) => Some((if is_v { w.clone() } else { v.clone() }, Scalar::one())),
            Letter::Y(1) => {
                if is_v {
                    Some((w.clone(), Scalar::one()))
                } else {
                    Some((v.clone(), Scalar::from_int(-1)))
                }
            }
            _ => None,
        })
    });
    Ok(WeightModuleSpec::new(
        "sign_flip",
        pres,
        None,
        base,
        Support::Explicit { degrees: vec![vec![0, 0], vec![0, 1]] },
        1,
        vec![],
        vec![],
        BTreeMap::new(),
        action,
    ))
}
