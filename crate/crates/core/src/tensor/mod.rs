//! Boundary-format tensors `A ∈ V_0 ⊗ V_1 ⊗ … ⊗ V_p` with `k_0 = k_1 + … + k_p`,
//! where `dim V_j = k_j + 1`.
//!
//! Three-way tensors used as Steiner data are stored with factor order
//! `(W, I, V)`: dimensions `(n+k, k, n+1)`, so the flattening is the `k × (n+k)`
//! matrix of linear forms in the `n+1` coordinates of `V`.

mod iso;
mod multmap;
mod stabilizer;
mod weights;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::minors::PolyMatrix;
use crate::poly::{Monomial, MonomialOrder, Poly};
use crate::rng::seeded;

pub use iso::{iso_test, IsoVerdict};
pub use multmap::{hyperdet_certificate, multiplication_map, symmetric_basis};
pub use stabilizer::{stabilizer_algebra, StabilizerKind, StabilizerReport};
pub use weights::{
    admissible_paths, canonical_weights, hm_min_weight, tom_thumb_check, DirectionTotals, TomThumbReport, WeightVector,
    PATH_LIMIT,
};

/// Dimensions `(k_0+1, …, k_p+1)` satisfying the boundary condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryFormat {
    dims: Vec<usize>,
}

impl BoundaryFormat {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.len() < 3 {
            return Err(Error::NotBoundaryFormat(format!("need at least 3 factors, found {}", dims.len())));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::NotBoundaryFormat(format!("factor {pos} has dimension 0")));
        }
        let k0 = dims[0] - 1;
        let rest: usize = dims[1..].iter().map(|d| d - 1).sum();
        if k0 != rest {
            return Err(Error::NotBoundaryFormat(format!("k0 = {k0} but k1 + ... + kp = {rest}")));
        }
        Ok(BoundaryFormat { dims: dims.to_vec() })
    }

    /// Format `(n+k, k, n+1)` of a Steiner bundle in `𝒮_{n,k}`.
    pub fn steiner(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::OutOfRange(format!("n and k must be positive, got n={n}, k={k}")));
        }
        Self::new(&[n + k, k, n + 1])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of small factors.
    pub fn p(&self) -> usize {
        self.dims.len() - 1
    }

    /// `k_j = dim V_j − 1`.
    pub fn k(&self, j: usize) -> usize {
        self.dims[j] - 1
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(n, k)` when the format is three-way.
    pub fn steiner_params(&self) -> Result<(usize, usize)> {
        if self.p() != 2 {
            return Err(Error::NotThreeWay(self.dims.len()));
        }
        Ok((self.dims[2] - 1, self.dims[1]))
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    /// All multi-indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let total = self.len();
        (0..total).map(move |mut flat| {
            let mut idx = vec![0; self.dims.len()];
            for (slot, &d) in idx.iter_mut().zip(&self.dims).rev() {
                *slot = flat % d;
                flat /= d;
            }
            idx
        })
    }
}

impl fmt::Display for BoundaryFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dense boundary-format tensor, entries row-major with `i_0` outermost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTensor<F> {
    format: BoundaryFormat,
    data: Vec<F>,
}

impl<F: Field> BoundaryTensor<F> {
    pub fn zeros(format: BoundaryFormat) -> Self {
        let data = vec![F::zero(); format.len()];
        BoundaryTensor { format, data }
    }

    pub fn from_flat(format: BoundaryFormat, data: Vec<F>) -> Result<Self> {
        if data.len() != format.len() {
            return Err(Error::DimensionMismatch { expected: format.len(), found: data.len() });
        }
        Ok(BoundaryTensor { format, data })
    }

    pub fn from_fn(format: BoundaryFormat, mut f: impl FnMut(&[usize]) -> F) -> Self {
        let data = format.indices().map(|idx| f(&idx)).collect();
        BoundaryTensor { format, data }
    }

    pub fn format(&self) -> &BoundaryFormat {
        &self.format
    }

    pub fn dims(&self) -> &[usize] {
        self.format.dims()
    }

    pub fn flat(&self) -> &[F] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> &F {
        &self.data[self.format.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: F) {
        let o = self.format.offset(idx);
        self.data[o] = v;
    }

    /// `a[w][i][v]` of a three-way tensor.
    pub fn at(&self, w: usize, i: usize, v: usize) -> &F {
        let d = &self.format.dims;
        &self.data[(w * d[1] + i) * d[2] + v]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn scale(&self, s: &F) -> Self {
        BoundaryTensor { format: self.format.clone(), data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.format != other.format {
            return Err(Error::NotBoundaryFormat(format!("cannot add {} and {}", self.format, other.format)));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(BoundaryTensor { format: self.format.clone(), data })
    }

    pub fn require_three_way(&self) -> Result<(usize, usize)> {
        self.format.steiner_params()
    }

    /// The flattening: `(k_1+1) × (k_0+1)` matrix whose entry `[i_1][i_0]` is
    /// `Σ a[i_0][i_1][i_2…i_p] x^{(2)}_{i_2} ⋯ x^{(p)}_{i_p}`. Variables of factor
    /// `j ≥ 2` occupy a consecutive block, factor 2 first.
    pub fn flatten(&self) -> PolyMatrix<F> {
        let dims = self.dims();
        let offsets: Vec<usize> = dims[2..]
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let nvars: usize = dims[2..].iter().sum();
        let order = MonomialOrder::Grevlex;
        let mut terms: Vec<Vec<Vec<(Monomial, F)>>> = vec![vec![Vec::new(); dims[0]]; dims[1]];
        for (idx, c) in self.format.indices().zip(&self.data) {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; nvars];
            for (t, &i) in idx[2..].iter().enumerate() {
                e[offsets[t] + i] += 1;
            }
            terms[idx[1]][idx[0]].push((Monomial::new(e), c.clone()));
        }
        terms.into_iter().map(|row| row.into_iter().map(|t| Poly::from_terms(nvars, order, t)).collect()).collect()
    }

    /// The flattening evaluated at a point of `V` (three-way tensors only).
    pub fn flatten_at(&self, x: &[F]) -> Matrix<F> {
        let d = self.dims();
        let mut m = Matrix::zeros(d[1], d[0]);
        for w in 0..d[0] {
            for i in 0..d[1] {
                let s = (0..d[2]).fold(F::zero(), |acc, v| acc + self.at(w, i, v).clone() * x[v].clone());
                m.set(i, w, s);
            }
        }
        m
    }

    fn diagonal_gap(idx: &[usize]) -> i64 {
        idx[0] as i64 - idx[1..].iter().sum::<usize>() as i64
    }

    /// Zero whenever `i_0 > i_1 + … + i_p`.
    pub fn is_triangular_given_basis(&self) -> bool {
        self.format.indices().zip(&self.data).all(|(idx, c)| Self::diagonal_gap(&idx) <= 0 || c.is_zero())
    }

    /// Zero whenever `i_0 ≠ i_1 + … + i_p`.
    pub fn is_diagonal_given_basis(&self) -> bool {
        self.format.indices().zip(&self.data).all(|(idx, c)| Self::diagonal_gap(&idx) == 0 || c.is_zero())
    }

    /// One when `i_0 = i_1 + … + i_p`, zero elsewhere.
    pub fn is_identity_given_basis(&self) -> bool {
        self.format.indices().zip(&self.data).all(
            |(idx, c)| {
                if Self::diagonal_gap(&idx) == 0 {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            },
        )
    }

    pub fn identity(format: BoundaryFormat) -> Self {
        Self::from_fn(format, |idx| if Self::diagonal_gap(idx) == 0 { F::one() } else { F::zero() })
    }

    /// Entries uniform in `-5..=5`.
    pub fn random(format: BoundaryFormat, seed: u64) -> Self {
        let mut rng = seeded(seed);
        Self::from_fn(format, |_| F::from_i64(rng.gen_range(-5..=5)))
    }

    /// Diagonal pattern with nonzero diagonal entries in `±(1..=5)`.
    pub fn random_diagonal(format: BoundaryFormat, seed: u64) -> Self {
        let mut rng = seeded(seed);
        Self::from_fn(format, |idx| if Self::diagonal_gap(idx) == 0 { nonzero_small(&mut rng) } else { F::zero() })
    }

    /// Triangular pattern: nonzero diagonal, random entries above it.
    pub fn random_triangular(format: BoundaryFormat, seed: u64) -> Self {
        let mut rng = seeded(seed);
        Self::from_fn(format, |idx| match Self::diagonal_gap(idx) {
            0 => nonzero_small(&mut rng),
            g if g < 0 => F::from_i64(rng.gen_range(-5..=5)),
            _ => F::zero(),
        })
    }

    /// Random tensor vanishing on `i_k ≤ β_k (k ≥ 1), i_0 ≥ β_1 + … + β_p`.
    pub fn block_zero_pattern(format: BoundaryFormat, beta: &[usize], seed: u64) -> Result<Self> {
        if beta.len() != format.p() {
            return Err(Error::DimensionMismatch { expected: format.p(), found: beta.len() });
        }
        for (t, &b) in beta.iter().enumerate() {
            if b > format.k(t + 1) {
                return Err(Error::OutOfRange(format!(
                    "beta_{} = {b} exceeds k_{} = {}",
                    t + 1,
                    t + 1,
                    format.k(t + 1)
                )));
            }
        }
        let beta0: usize = beta.iter().sum();
        let mut rng = seeded(seed);
        Ok(Self::from_fn(format, |idx| {
            let vanishes = idx[0] >= beta0 && idx[1..].iter().zip(beta).all(|(i, b)| i <= b);
            let r = F::from_i64(rng.gen_range(-5..=5));
            if vanishes {
                F::zero()
            } else {
                r
            }
        }))
    }

    /// Multilinear change of basis: `a'[j_0…j_p] = Σ Π_t g_t[j_t][i_t] · a[i_0…i_p]`.
    pub fn apply_group_element(&self, g: &[Matrix<F>]) -> Result<Self> {
        let dims = self.dims().to_vec();
        if g.len() != dims.len() {
            return Err(Error::DimensionMismatch { expected: dims.len(), found: g.len() });
        }
        for (m, &d) in g.iter().zip(&dims) {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: if m.rows() != d { m.rows() } else { m.cols() },
                });
            }
            if m.determinant()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        let mut data = self.data.clone();
        for (axis, m) in g.iter().enumerate() {
            let d = dims[axis];
            let inner: usize = dims[axis + 1..].iter().product();
            let outer: usize = dims[..axis].iter().product();
            let mut next = vec![F::zero(); data.len()];
            for o in 0..outer {
                for j in 0..d {
                    for i in 0..d {
                        let gji = m.get(j, i);
                        if gji.is_zero() {
                            continue;
                        }
                        for r in 0..inner {
                            let src = (o * d + i) * inner + r;
                            let dst = (o * d + j) * inner + r;
                            next[dst] = next[dst].clone() + gji.clone() * data[src].clone();
                        }
                    }
                }
            }
            data = next;
        }
        Ok(BoundaryTensor { format: self.format.clone(), data })
    }

    /// Exchanges the last two factors: `a'[w][v][i] = a[w][i][v]`. On Steiner
    /// data this sends `(n, k)` to `(k−1, n+1)`.
    pub fn gale(&self) -> Result<Self> {
        self.require_three_way()?;
        let d = self.dims();
        let format = BoundaryFormat::new(&[d[0], d[2], d[1]])?;
        Ok(Self::from_fn(format, |idx| self.at(idx[0], idx[2], idx[1]).clone()))
    }

    /// Three-way sub-tensor on index ranges `w ≥ w0`, `i ≥ i0` (all of `V`).
    pub(crate) fn corner(&self, w0: usize, i0: usize) -> Result<Self> {
        let d = self.dims();
        let format = BoundaryFormat::new(&[d[0] - w0, d[1] - i0, d[2]])?;
        Ok(Self::from_fn(format, |idx| self.at(idx[0] + w0, idx[1] + i0, idx[2]).clone()))
    }
}

fn nonzero_small<F: Field>(rng: &mut impl Rng) -> F {
    let v = rng.gen_range(1..=5);
    F::from_i64(if rng.gen_bool(0.5) { v } else { -v })
}

/// Seeded element of `GL_d` with small integer entries.
pub fn random_invertible<F: Field>(d: usize, rng: &mut impl Rng) -> Matrix<F> {
    loop {
        let rows: Vec<Vec<F>> = (0..d).map(|_| (0..d).map(|_| F::from_i64(rng.gen_range(-3..=3))).collect()).collect();
        let m = Matrix::from_rows(rows).expect("rectangular");
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

/// Seeded element of `SL_d`: a product of elementary matrices.
pub fn random_special_linear<F: Field>(d: usize, rng: &mut impl Rng) -> Matrix<F> {
    let mut m = Matrix::identity(d);
    if d < 2 {
        return m;
    }
    for _ in 0..3 * d {
        let r = rng.gen_range(0..d);
        let mut c = rng.gen_range(0..d - 1);
        if c >= r {
            c += 1;
        }
        let s = F::from_i64(rng.gen_range(-2..=2));
        let mut e = Matrix::identity(d);
        e.set(r, c, s);
        m = e.mul(&m).expect("square");
    }
    m
}
