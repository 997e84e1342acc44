//! Canonical one-parameter-subgroup weights, the Hilbert–Mumford weight range
//! of a tensor, and slice counts over admissible paths.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{BoundaryFormat, BoundaryTensor};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};

/// Enumeration cap on the number of admissible paths.
pub const PATH_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightVector {
    pub scale: String,
    pub weights: Vec<Vec<i64>>,
}

/// `a^0_i = N(k_0 − 2i)` and `a^j_i = N(2i − k_j)` for `j ≥ 1`. A
/// half-integer `N` is accepted only when every `k_j` is even.
pub fn canonical_weights(format: &BoundaryFormat, scale: &Rational) -> Result<WeightVector> {
    let twice = scale * Rational::from_integer(2.into());
    if !twice.is_integer() {
        return Err(Error::ParityViolation(format!("2N must be an integer, got N = {scale}")));
    }
    let all_even = (0..=format.p()).all(|j| format.k(j).is_even());
    if !scale.is_integer() && !all_even {
        return Err(Error::ParityViolation(format!(
            "N = {scale} is not an integer but the format {format} has an odd k_j"
        )));
    }
    let as_int = |r: Rational| -> Result<i64> {
        debug_assert!(r.is_integer());
        r.to_integer().to_i64().ok_or_else(|| Error::OutOfRange(format!("weight {r} does not fit in 64 bits")))
    };
    let mut weights = Vec::with_capacity(format.p() + 1);
    for j in 0..=format.p() {
        let kj = format.k(j) as i64;
        let list = (0..=kj)
            .map(|i| {
                let base = if j == 0 { kj - 2 * i } else { 2 * i - kj };
                as_int(scale * Rational::from_integer(base.into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        if list.iter().sum::<i64>() != 0 {
            return Err(Error::Consistency(format!("weights of factor {j} do not sum to zero")));
        }
        weights.push(list);
    }
    Ok(WeightVector { scale: scale.to_string(), weights })
}

/// Minimum and maximum of `Σ_j w^j_{i_j}` over the support of `a`, or `None`
/// for the zero tensor.
pub fn hm_min_weight<F: Field>(a: &BoundaryTensor<F>, weights: &[Vec<i64>]) -> Result<Option<(i64, i64)>> {
    let dims = a.dims();
    if weights.len() != dims.len() {
        return Err(Error::DimensionMismatch { expected: dims.len(), found: weights.len() });
    }
    for (w, &d) in weights.iter().zip(dims) {
        if w.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: w.len() });
        }
        if w.iter().sum::<i64>() != 0 {
            return Err(Error::OutOfRange("each weight list must sum to zero".into()));
        }
    }
    let mut range: Option<(i64, i64)> = None;
    for (idx, c) in a.format().indices().zip(a.flat()) {
        if c.is_zero() {
            continue;
        }
        let total: i64 = idx.iter().zip(weights).map(|(&i, w)| w[i]).sum();
        range = Some(match range {
            None => (total, total),
            Some((lo, hi)) => (lo.min(total), hi.max(total)),
        });
    }
    Ok(range)
}

fn multinomial(parts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for &k in parts {
        for j in 1..=k as u128 {
            n += 1;
            acc = acc * n / j;
        }
    }
    acc
}

/// All lattice paths from `0` to `(k_1, …, k_p)` with unit steps, each listed
/// as its `k_0 + 1` points.
pub fn admissible_paths(format: &BoundaryFormat) -> Result<Vec<Vec<Vec<usize>>>> {
    let target: Vec<usize> = (1..=format.p()).map(|j| format.k(j)).collect();
    let count = multinomial(&target);
    if count > PATH_LIMIT {
        return Err(Error::EnumerationGuard { count, limit: PATH_LIMIT });
    }
    fn extend(path: &mut Vec<Vec<usize>>, target: &[usize], out: &mut Vec<Vec<Vec<usize>>>) {
        let here = path.last().expect("path starts at the origin").clone();
        if here == target {
            out.push(path.clone());
            return;
        }
        for d in 0..target.len() {
            if here[d] < target[d] {
                let mut next = here.clone();
                next[d] += 1;
                path.push(next);
                extend(path, target, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::with_capacity(count as usize);
    extend(&mut vec![vec![0; target.len()]], &target, &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionTotals {
    /// Factor index `i ≥ 1`.
    pub direction: usize,
    /// `Σ_P P^i_j` for each slice `j = 0..=k_i`.
    pub totals: Vec<u64>,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TomThumbReport {
    pub dims: Vec<usize>,
    pub paths: usize,
    pub directions: Vec<DirectionTotals>,
}

impl TomThumbReport {
    pub fn holds(&self) -> bool {
        self.directions.iter().all(|d| d.balanced)
    }
}

/// Counts, for each direction and each slice of it, the points of all
/// admissible paths lying on that slice.
pub fn tom_thumb_check(format: &BoundaryFormat) -> Result<TomThumbReport> {
    let paths = admissible_paths(format)?;
    let directions = (1..=format.p())
        .map(|i| {
            let mut totals = vec![0u64; format.k(i) + 1];
            for path in &paths {
                for point in path {
                    totals[point[i - 1]] += 1;
                }
            }
            let balanced = totals.windows(2).all(|w| w[0] == w[1]);
            DirectionTotals { direction: i, totals, balanced }
        })
        .collect();
    Ok(TomThumbReport { dims: format.dims().to_vec(), paths: paths.len(), directions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    fn fmt(d: &[usize]) -> BoundaryFormat {
        BoundaryFormat::new(d).unwrap()
    }

    #[test]
    fn canonical_weight_lists() {
        let w = canonical_weights(&fmt(&[4, 2, 3]), &q(1, 1)).unwrap();
        assert_eq!(w.weights, vec![vec![3, 1, -1, -3], vec![-1, 1], vec![-2, 0, 2]]);
        let half = canonical_weights(&fmt(&[5, 3, 3]), &q(1, 2)).unwrap();
        assert_eq!(half.weights, vec![vec![2, 1, 0, -1, -2], vec![-1, 0, 1], vec![-1, 0, 1]]);
        assert!(matches!(canonical_weights(&fmt(&[4, 2, 3]), &q(1, 2)), Err(Error::ParityViolation(_))));
        assert!(matches!(canonical_weights(&fmt(&[5, 3, 3]), &q(1, 3)), Err(Error::ParityViolation(_))));
    }

    #[test]
    fn identity_has_weight_zero() {
        let f = fmt(&[5, 3, 3]);
        let id = BoundaryTensor::<Rational>::identity(f.clone());
        let w = canonical_weights(&f, &q(1, 1)).unwrap();
        assert_eq!(hm_min_weight(&id, &w.weights).unwrap(), Some((0, 0)));
        let zeros = vec![vec![0; 5], vec![0; 3], vec![0; 3]];
        let r = BoundaryTensor::<Rational>::random(f.clone(), 1);
        assert_eq!(hm_min_weight(&r, &zeros).unwrap(), Some((0, 0)));
        let t = BoundaryTensor::<Rational>::random_triangular(f, 2);
        assert!(hm_min_weight(&t, &w.weights).unwrap().unwrap().0 >= 0);
    }

    #[test]
    fn tom_thumb_small_formats() {
        let r = tom_thumb_check(&fmt(&[3, 2, 2])).unwrap();
        assert_eq!(r.paths, 2);
        assert_eq!(r.directions[0].totals, vec![3, 3]);
        assert!(r.holds());

        let r = tom_thumb_check(&fmt(&[3, 1, 3])).unwrap();
        assert_eq!(r.paths, 1);
        assert!(r.holds());

        let r = tom_thumb_check(&fmt(&[4, 2, 3])).unwrap();
        assert_eq!(r.paths, 3);
        assert_eq!(r.directions[0].totals.len(), 2);
        assert_eq!(r.directions[1].totals.len(), 3);
        assert!(r.holds());
    }

    #[test]
    fn guard() {
        let f = fmt(&[25, 7, 7, 7, 7]);
        assert!(matches!(tom_thumb_check(&f), Err(Error::EnumerationGuard { .. })));
    }
}
