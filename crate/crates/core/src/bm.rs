//! The weight-space-preserving subalgebra B_m^(1): commutation scalars of a
//! G_m basis, decomposition into noncommutative tori, and their simple
//! finite-dimensional modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{skew_normal_form, unimodular_inverse, IntMatrix, Lattice};
use crate::linalg::Matrix;
use crate::orbit::{g_m, isotropy, WeightPoint};
use crate::scalar::Scalar;
use crate::tgwa::{normalize, QwaAlgebra, TgwaPresentation, UnitGroup, Word};

/// λ_ij with b_ib_j = λ_ij b_jb_i for b_i = φ_m(a_{s_i}).
pub fn commutation_scalars(basis: &[Vec<i64>], alpha: &[Scalar], p: &TgwaPresentation) -> Result<Vec<Vec<Scalar>>> {
    let k = basis.len();
    let words: Vec<Word> = basis.iter().map(|s| Word::canonical(s)).collect();
    let mut lam = vec![vec![Scalar::one(); k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let ij = normalize(&words[i].concat(&words[j]), p)?.eval_at(alpha);
            let ji = normalize(&words[j].concat(&words[i]), p)?.eval_at(alpha);
            if ij.is_zero() || ji.is_zero() {
                return Err(Error::CertificationFailed(format!(
                    "a_s a_s' vanishes on the weight space for s = {:?}, s' = {:?}",
                    basis[i], basis[j]
                )));
            }
            lam[i][j] = ij.div(&ji)?;
            lam[j][i] = lam[i][j].inv()?;
        }
    }
    Ok(lam)
}

/// Degrees of ℤⁿ_ω outside G_m act by zero on M_m; kept as the pair of
/// lattices rather than a basis of B^(0).
#[derive(Clone, Debug, Serialize)]
pub struct B0Certificate {
    pub isotropy: Lattice,
    pub g_m: Lattice,
}

#[derive(Clone, Debug, Serialize)]
pub struct BmPresentation {
    pub basis: Vec<Vec<i64>>,
    pub lambda: Vec<Vec<Scalar>>,
    pub b0_degrees: B0Certificate,
}

pub fn bm_presentation(pt: &WeightPoint, alg: &QwaAlgebra) -> Result<BmPresentation> {
    let gm = g_m(pt, alg)?;
    let basis = gm.rows_i64();
    let lambda = commutation_scalars(&basis, &pt.alpha, &alg.presentation)?;
    Ok(BmPresentation { basis, lambda, b0_degrees: B0Certificate { isotropy: isotropy(pt, alg)?, g_m: gm } })
}

/// B_m^(1) ≅ T_{λ^{p_1}} ⊗ ⋯ ⊗ T_{λ^{p_r}} ⊗ L.
#[derive(Clone, Debug, Serialize)]
pub struct TorusDecomposition {
    pub lambda_root: Scalar,
    #[serde(serialize_with = "ser_big")]
    pub p: Vec<BigInt>,
    pub laurent_rank: usize,
    #[serde(rename = "U")]
    pub u: IntMatrix,
    /// ε' of order `root_order`, with λ_ij = ε'^{θ_ij}.
    pub eps_root: Scalar,
    pub root_order: u32,
    pub theta: IntMatrix,
    #[serde(serialize_with = "ser_big")]
    pub thetas: Vec<BigInt>,
}

fn ser_big<S: serde::Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

impl TorusDecomposition {
    pub fn rank(&self) -> usize {
        self.u.nrows()
    }

    /// λ_i = ε'^{θ_i} of the i-th torus factor.
    pub fn factor_lambda(&self, i: usize) -> Result<Scalar> {
        let t = self.thetas[i].mod_floor(&BigInt::from(self.root_order)).to_i64().unwrap();
        self.eps_root.pow(t)
    }

    /// Order n_i of λ_i.
    pub fn factor_order(&self, i: usize) -> u32 {
        let t = self.thetas[i].mod_floor(&BigInt::from(self.root_order)).to_u32().unwrap();
        self.root_order / self.root_order.gcd(&t)
    }

    /// Π n_i.
    pub fn module_dimension(&self) -> usize {
        (0..self.thetas.len()).map(|i| self.factor_order(i) as usize).product()
    }
}

pub fn torus_decompose(lambda: &[Vec<Scalar>], units: &UnitGroup) -> Result<TorusDecomposition> {
    let k = lambda.len();
    let mut orders = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            orders.push(lambda[i][j].root_of_unity_order()?.ok_or(Error::NotRootOfUnity)?);
        }
    }
    let p = orders.iter().fold(1u32, |a, b| a.lcm(b));
    if !units.m.is_multiple_of(p) {
        return Err(Error::NotRootOfUnity);
    }
    let step = (units.m / p) as i64;
    let eps_root = units.eta().pow(step)?;
    let mut theta = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let (e, _) = units.log(&lambda[i][j])?;
            theta[i][j] = e / step;
            theta[j][i] = -theta[i][j];
        }
    }
    let theta = IntMatrix::from_i64(&theta, k);
    let snf = skew_normal_form(&theta)?;
    let lambda_root = match snf.thetas.first() {
        Some(t) => eps_root.pow(t.mod_floor(&BigInt::from(p)).to_i64().unwrap())?,
        None => Scalar::one(),
    };
    let pdiv = snf.thetas.iter().map(|t| t / &snf.thetas[0]).collect();
    Ok(TorusDecomposition {
        lambda_root,
        p: pdiv,
        laurent_rank: snf.laurent_rank,
        u: snf.u,
        eps_root,
        root_order: p,
        theta,
        thetas: snf.thetas,
    })
}

/// (ρ_i, μ_i) per torus factor and one character per Laurent generator.
#[derive(Clone, Debug, Serialize)]
pub struct TorusModuleSpec {
    pub factors: Vec<(Scalar, Scalar)>,
    pub laurent: Vec<Scalar>,
}

impl TorusModuleSpec {
    pub fn ones(dec: &TorusDecomposition) -> Self {
        TorusModuleSpec {
            factors: vec![(Scalar::one(), Scalar::one()); dec.thetas.len()],
            laurent: vec![Scalar::one(); dec.laurent_rank],
        }
    }
}

/// Matrices of b'_1..b'_k (the transformed generators) on the tensor basis,
/// lexicographic with the first factor most significant.
pub fn transformed_generators(dec: &TorusDecomposition, spec: &TorusModuleSpec) -> Result<Vec<Matrix>> {
    let r = dec.thetas.len();
    if spec.factors.len() != r || spec.laurent.len() != dec.laurent_rank {
        return Err(Error::Config("torus module parameters do not match the decomposition".into()));
    }
    let orders: Vec<usize> = (0..r).map(|i| dec.factor_order(i) as usize).collect();
    let dim: usize = orders.iter().product();
    let mut strides = vec![1usize; r];
    for i in (0..r.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * orders[i + 1];
    }
    let digit = |idx: usize, i: usize| (idx / strides[i]) % orders[i];
    let mut gens = Vec::with_capacity(dec.rank());
    for i in 0..r {
        let lam = dec.factor_lambda(i)?;
        let (rho, mu) = &spec.factors[i];
        if rho.is_zero() || mu.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut a = Matrix::zeros(dim, dim);
        let mut b = Matrix::zeros(dim, dim);
        for idx in 0..dim {
            let j = digit(idx, i);
            a.rows[idx][idx] = lam.pow(j as i64)?.mul(rho);
            // b v_j = v_{j+1}, b v_{n−1} = μ v_0
            if j + 1 < orders[i] {
                b.rows[idx + strides[i]][idx] = Scalar::one();
            } else {
                b.rows[idx - j * strides[i]][idx] = mu.clone();
            }
        }
        gens.push(a);
        gens.push(b);
    }
    for c in &spec.laurent {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        gens.push(Matrix::identity(dim).scale(c));
    }
    Ok(gens)
}

/// Matrices of the original generators b_1..b_k: b_p = ∏_i b_i'^{V[i][p]}
/// with V = U⁻¹, up to a scalar per generator (which the relations allow).
pub fn simple_torus_module(dec: &TorusDecomposition, spec: &TorusModuleSpec) -> Result<Vec<Matrix>> {
    for i in 0..dec.thetas.len() {
        if dec.factor_order(i) == 0 {
            return Err(Error::InfiniteOrder);
        }
    }
    let tg = transformed_generators(dec, spec)?;
    let v = unimodular_inverse(&dec.u)?.to_i64();
    let k = dec.rank();
    let dim = tg.first().map_or(1, |m| m.nrows());
    let mut out = Vec::with_capacity(k);
    for p in 0..k {
        let mut m = Matrix::identity(dim);
        for i in 0..k {
            if v[i][p] != 0 {
                m = m.mul(&tg[i].pow(v[i][p])?);
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Ordered monomial b_1^{x_1}⋯b_k^{x_k} of generator matrices.
pub fn monomial(gens: &[Matrix], x: &[i64]) -> Result<Matrix> {
    let dim = gens[0].nrows();
    let mut m = Matrix::identity(dim);
    for (g, &e) in gens.iter().zip(x) {
        if e != 0 {
            m = m.mul(&g.pow(e)?);
        }
    }
    Ok(m)
}

/// Whether b_ib_j = λ_ij b_jb_i holds for all pairs.
pub fn satisfies_commutation(gens: &[Matrix], lambda: &[Vec<Scalar>]) -> bool {
    let k = gens.len();
    (0..k).all(|i| {
        (0..k).all(|j| gens[i].mul(&gens[j]) == gens[j].mul(&gens[i]).scale(&lambda[i][j]))
    })
}

/// Joint eigenvalue tuples of the diagonal a-generators are pairwise distinct.
pub fn joint_eigenvalues_distinct(dec: &TorusDecomposition, tg: &[Matrix]) -> bool {
    let r = dec.thetas.len();
    let dim = tg.first().map_or(1, |m| m.nrows());
    let tuples: Vec<Vec<Scalar>> = (0..dim).map(|d| (0..r).map(|i| tg[2 * i].rows[d][d].clone()).collect()).collect();
    (0..dim).all(|x| (x + 1..dim).all(|y| tuples[x] != tuples[y]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParameterEnv;

    fn scalar_matrix(theta: &[Vec<i64>], n: u32) -> Vec<Vec<Scalar>> {
        theta.iter().map(|r| r.iter().map(|&t| Scalar::root(n, t)).collect()).collect()
    }

    #[test]
    fn decompose_examples() {
        let u = UnitGroup::new(6);
        let d = torus_decompose(&[vec![Scalar::one()]], &u).unwrap();
        assert_eq!((d.thetas.len(), d.laurent_rank), (0, 1));
        let d = torus_decompose(&scalar_matrix(&[vec![0, 1], vec![-1, 0]], 6), &u).unwrap();
        assert_eq!((d.thetas.len(), d.laurent_rank, d.module_dimension()), (1, 0, 6));
        assert_eq!(d.lambda_root, Scalar::root(6, 1));
        let d = torus_decompose(&scalar_matrix(&vec![vec![0; 3]; 3], 6), &u).unwrap();
        assert_eq!((d.thetas.len(), d.laurent_rank), (0, 3));
        let bad = vec![vec![Scalar::one(), Scalar::var("x")], vec![Scalar::var("x").inv().unwrap(), Scalar::one()]];
        assert_eq!(torus_decompose(&bad, &u).unwrap_err(), Error::NotRootOfUnity);
    }

    #[test]
    fn sign_torus_module() {
        let u = UnitGroup::new(2);
        let lam = scalar_matrix(&[vec![0, 1], vec![-1, 0]], 2);
        let d = torus_decompose(&lam, &u).unwrap();
        let spec = TorusModuleSpec { factors: vec![(Scalar::var("rho"), Scalar::var("mu"))], laurent: vec![] };
        let g = simple_torus_module(&d, &spec).unwrap();
        assert_eq!(g[0].rows[1][1], Scalar::var("rho").neg());
        assert_eq!(g[1].rows[0][1], Scalar::var("mu"));
        assert!(satisfies_commutation(&g, &lam));
    }

    #[test]
    fn tensor_of_two_tori() {
        let u = UnitGroup::new(6);
        let th = vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 2], vec![0, 0, -2, 0]];
        let lam = scalar_matrix(&th, 6);
        let d = torus_decompose(&lam, &u).unwrap();
        assert_eq!(d.module_dimension(), 18);
        let g = simple_torus_module(&d, &TorusModuleSpec::ones(&d)).unwrap();
        assert_eq!(g[0].nrows(), 18);
        assert!(satisfies_commutation(&g, &lam));
        assert!(joint_eigenvalues_distinct(&d, &transformed_generators(&d, &TorusModuleSpec::ones(&d)).unwrap()));
    }

    #[test]
    fn generic_commutation_scalar() {
        let n = 12;
        let alg = QwaAlgebra::new(
            ParameterEnv::new(n),
            vec![Scalar::root(n, 3), Scalar::root(n, 2)],
            &[vec![Scalar::one(), Scalar::root(n, 1)]],
        )
        .unwrap();
        let pt = WeightPoint::new(vec![Scalar::var("a1"), Scalar::var("a2")]);
        let bm = bm_presentation(&pt, &alg).unwrap();
        assert_eq!(bm.basis, vec![vec![4, 0], vec![0, 6]]);
        assert_eq!(bm.lambda[0][1], Scalar::root(n, 24));
    }
}
