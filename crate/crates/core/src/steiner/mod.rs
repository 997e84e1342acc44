//! Steiner bundles `0 → S* → W ⊗ 𝒪 → I ⊗ 𝒪(1) → 0` on `𝐏ⁿ = 𝐏(V)`, given by a
//! nondegenerate tensor of format `(n+k, k, n+1)` in factor order `(W, I, V)`.

mod construct;
mod scheme;
mod segre;
mod transform;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::buchberger;
use crate::linalg::{subspace_intersect, Matrix};
use crate::minors::minors_ideal;
use crate::poly::MonomialOrder;
use crate::rng::seeded;
use crate::tensor::{hyperdet_certificate, multiplication_map, BoundaryFormat, BoundaryTensor};

pub use construct::{logarithmic, normal_crossing, normal_crossing_violation, schwarzenberger};
pub use scheme::{
    b_matrix, b_rank_floor_holds, classify, has_multiple_point, unstable_scheme, w_invariant, Classification,
    MultiplePointReport, UnstableScheme, WValue,
};
pub use segre::{segre_intersection, SegreIntersection};
pub use transform::{column_normal_form, elementary_transform, ColumnNormalForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerBundle<F> {
    tensor: BoundaryTensor<F>,
    n: usize,
    k: usize,
}

impl<F: Field> SteinerBundle<F> {
    /// Accepts a three-way tensor whose hyperdeterminant certificate is nonzero.
    pub fn new(tensor: BoundaryTensor<F>) -> Result<Self> {
        let (n, k) = tensor.require_three_way()?;
        if n == 0 {
            return Err(Error::NotBoundaryFormat(format!("format {} has a one-dimensional V", tensor.format())));
        }
        if hyperdet_certificate(&tensor)?.is_zero() {
            return Err(Error::DegenerateTensor);
        }
        let bundle = SteinerBundle { tensor, n, k };
        bundle.spot_check_rank()?;
        Ok(bundle)
    }

    /// As [`SteinerBundle::new`], also requiring the format to be that of `𝒮_{n,k}`.
    pub fn with_params(tensor: BoundaryTensor<F>, n: usize, k: usize) -> Result<Self> {
        let want = BoundaryFormat::steiner(n, k)?;
        if tensor.format() != &want {
            return Err(Error::NotBoundaryFormat(format!(
                "tensor has format {} but (n,k)=({n},{k}) needs {want} in the order (W, I, V)",
                tensor.format()
            )));
        }
        Self::new(tensor)
    }

    pub fn tensor(&self) -> &BoundaryTensor<F> {
        &self.tensor
    }

    pub fn into_tensor(self) -> BoundaryTensor<F> {
        self.tensor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Rank of the flattening at `(1, t, …, t^n)` for `t = 1, …, 2(n+k)`.
    fn spot_check_rank(&self) -> Result<()> {
        for t in 1..=2 * (self.n + self.k) as i64 {
            let x: Vec<F> = (0..=self.n as u32).map(|e| F::from_i64(t.pow(e))).collect();
            let r = self.tensor.flatten_at(&x).rank();
            if r != self.k {
                return Err(Error::Consistency(format!("flattening has rank {r} at t = {t}, expected {}", self.k)));
            }
        }
        Ok(())
    }

    /// `A(e_w) ∈ V ⊗ I`, coordinate `v·k + i`.
    pub(crate) fn image_vectors(&self) -> Vec<Vec<F>> {
        let (n, k) = (self.n, self.k);
        (0..n + k)
            .map(|w| {
                let mut u = vec![F::zero(); (n + 1) * k];
                for v in 0..=n {
                    for i in 0..k {
                        u[v * k + i] = self.tensor.at(w, i, v).clone();
                    }
                }
                u
            })
            .collect()
    }

    /// Spanning set of `ξ ⊗ I` in the same coordinates.
    pub(crate) fn hyperplane_block(&self, h: &Hyperplane<F>) -> Vec<Vec<F>> {
        let k = self.k;
        (0..k)
            .map(|i| {
                let mut u = vec![F::zero(); (self.n + 1) * k];
                for (v, c) in h.coeffs().iter().enumerate() {
                    u[v * k + i] = c.clone();
                }
                u
            })
            .collect()
    }
}

/// A hyperplane `{Σ ξ_v x_v = 0}` of `𝐏ⁿ`, stored with first nonzero
/// coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Hyperplane<F> {
    pub fn new(coeffs: Vec<F>) -> Result<Self> {
        let lead = coeffs.iter().find(|c| !c.is_zero()).cloned().ok_or(Error::ZeroHyperplane)?;
        let inv = lead.inv().expect("nonzero");
        Ok(Hyperplane { coeffs: coeffs.into_iter().map(|c| c * inv.clone()).collect() })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn ambient(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl<F: Field> std::fmt::Display for Hyperplane<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.to_strings().join(":"))
    }
}

/// True iff the `k × k` minors of the flattening vanish only at the origin.
pub fn nondegenerate_by_minors<F: Field>(a: &BoundaryTensor<F>) -> Result<bool> {
    let (n, k) = a.require_three_way()?;
    let minors = minors_ideal(&a.flatten(), k)?;
    let gb = buchberger(&minors, n + 1, MonomialOrder::Grevlex);
    Ok(gb.affine_dimension() <= 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub h0: usize,
}

/// `h0 = dim(image A ∩ ξ ⊗ I)`; the hyperplane is unstable iff `h0 ≥ 1`.
pub fn is_member<F: Field>(s: &SteinerBundle<F>, h: &Hyperplane<F>) -> Result<Membership> {
    if h.ambient() != s.n + 1 {
        return Err(Error::DimensionMismatch { expected: s.n + 1, found: h.ambient() });
    }
    let h0 = subspace_intersect(&s.image_vectors(), &s.hyperplane_block(h))?.len();
    if h0 > 1 {
        return Err(Error::Consistency(format!("h0 = {h0} at hyperplane {h}, expected at most 1")));
    }
    Ok(Membership { member: h0 == 1, h0 })
}

/// Kernel dimension of `W ⊗ S^t V → I ⊗ S^{t+1} V`.
pub fn sections_dim<F: Field>(s: &SteinerBundle<F>, t: u32) -> Result<usize> {
    let m = multiplication_map(&s.tensor, t)?;
    Ok(m.cols() - m.rank())
}

/// `(k−1)(n−1)(k+n+1) − i·[(n−1)(k−2) − 1]`, for `n ≥ 2`, `k ≥ 3`,
/// `0 ≤ i ≤ n+k+1`.
pub fn moduli_dimension(n: i64, k: i64, i: i64) -> Result<i64> {
    if n < 2 || k < 3 || i < 0 || i > n + k + 1 {
        return Err(Error::OutOfRange(format!("need n ≥ 2, k ≥ 3, 0 ≤ i ≤ n+k+1; got n={n}, k={k}, i={i}")));
    }
    Ok((k - 1) * (n - 1) * (k + n + 1) - i * ((n - 1) * (k - 2) - 1))
}

/// The 50-hyperplane deterministic sample used for the `h0 ≤ 1` check:
/// coordinate hyperplanes, the moment curve, then small integer vectors.
pub fn hyperplane_sample<F: Field>(n: usize, count: usize) -> Vec<Hyperplane<F>> {
    let mut out: Vec<Hyperplane<F>> = Vec::with_capacity(count);
    let push = |v: Vec<i64>, out: &mut Vec<Hyperplane<F>>| {
        if out.len() < count {
            if let Ok(h) = Hyperplane::from_i64(&v) {
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
    };
    for j in 0..=n {
        let mut e = vec![0; n + 1];
        e[j] = 1;
        push(e, &mut out);
    }
    for t in -3i64..=3 {
        push((0..=n as u32).map(|e| t.pow(e)).collect(), &mut out);
    }
    let mut rng = seeded(0);
    let mut attempts: i64 = 0;
    while out.len() < count {
        let radius = 3 + attempts / 64;
        attempts += 1;
        let v = (0..=n).map(|_| rng.gen_range(-radius..=radius)).collect();
        push(v, &mut out);
    }
    out
}

pub(crate) fn column_basis_change<F: Field>(
    a: &BoundaryTensor<F>,
    w_basis: &Matrix<F>,
    i_basis: &Matrix<F>,
) -> Result<BoundaryTensor<F>> {
    let nv = a.dims()[2];
    a.apply_group_element(&[w_basis.transpose(), i_basis.inverse()?, Matrix::identity(nv)])
}
