//! Schwarzenberger and logarithmic bundles.

use itertools::Itertools;

use super::{is_member, Hyperplane, SteinerBundle};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::tensor::{BoundaryFormat, BoundaryTensor};

/// The identity tensor of format `(n+k, k, n+1)`; its flattening is the banded
/// matrix with rows `(0 … 0, x_0, …, x_n, 0 … 0)`.
pub fn schwarzenberger<F: Field>(n: usize, k: usize) -> Result<SteinerBundle<F>> {
    SteinerBundle::new(BoundaryTensor::identity(BoundaryFormat::steiner(n, k)?))
}

/// First subset of size `min(m, n+1)` that fails to be independent.
pub fn normal_crossing_violation<F: Field>(hyperplanes: &[Hyperplane<F>]) -> Result<Option<Vec<usize>>> {
    let Some(first) = hyperplanes.first() else {
        return Err(Error::OutOfRange("empty hyperplane list".into()));
    };
    let dim = first.ambient();
    if let Some(h) = hyperplanes.iter().find(|h| h.ambient() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: h.ambient() });
    }
    let size = hyperplanes.len().min(dim);
    for subset in (0..hyperplanes.len()).combinations(size) {
        let rows: Vec<Vec<F>> = subset.iter().map(|&j| hyperplanes[j].coeffs().to_vec()).collect();
        if Matrix::from_rows(rows)?.rank() < size {
            return Ok(Some(subset));
        }
    }
    Ok(None)
}

pub fn normal_crossing<F: Field>(hyperplanes: &[Hyperplane<F>]) -> Result<bool> {
    Ok(normal_crossing_violation(hyperplanes)?.is_none())
}

/// `Ω(log 𝓗)` for `m ≥ n+2` hyperplanes in normal crossing. With `K` the
/// `k × m` matrix of linear relations among the `ξ_j`, column `j` of the
/// flattening is `κ^j ξ_j` for `j < m`; the last hyperplane is the one
/// absorbed into the relations.
pub fn logarithmic<F: Field>(hyperplanes: &[Hyperplane<F>]) -> Result<SteinerBundle<F>> {
    if let Some(subset) = normal_crossing_violation(hyperplanes)? {
        return Err(Error::NotNormalCrossing(subset));
    }
    let m = hyperplanes.len();
    let n = hyperplanes[0].ambient() - 1;
    if n == 0 || m < n + 2 {
        return Err(Error::OutOfRange(format!("need at least n+2 = {} hyperplanes in 𝐏^{n}, got {m}", n + 2)));
    }
    let k = m - n - 1;
    let columns: Vec<Vec<F>> = hyperplanes.iter().map(|h| h.coeffs().to_vec()).collect();
    // Relations κ with Σ_j κ_j ξ_j = 0.
    let relations = Matrix::from_columns(&columns, n + 1)?.right_kernel();
    debug_assert_eq!(relations.len(), k);
    let tensor = BoundaryTensor::from_fn(BoundaryFormat::steiner(n, k)?, |idx| {
        let (w, i, v) = (idx[0], idx[1], idx[2]);
        relations[i][w].clone() * columns[w][v].clone()
    });
    let bundle = SteinerBundle::new(tensor)?;
    for h in hyperplanes {
        if !is_member(&bundle, h)?.member {
            return Err(Error::Consistency(format!("input hyperplane {h} is not unstable for the constructed bundle")));
        }
    }
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn hs(v: &[&[i64]]) -> Vec<Hyperplane<Q>> {
        v.iter().map(|c| Hyperplane::from_i64(c).unwrap()).collect()
    }

    #[test]
    fn crossing() {
        assert!(normal_crossing(&hs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap());
        assert!(!normal_crossing(&hs(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])).unwrap());
    }

    #[test]
    fn concurrent_lines_rejected() {
        let lines = hs(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert!(matches!(logarithmic(&lines), Err(Error::NotNormalCrossing(_))));
    }

    #[test]
    fn five_lines_give_k2() {
        let lines = hs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]]);
        let s = logarithmic(&lines).unwrap();
        assert_eq!((s.n(), s.k()), (2, 2));
    }
}
