//! The multiplication map `W ⊗ S^t V → I ⊗ S^{t+1} V` of a three-way tensor
//! and the determinant certificate at `t = k − 1`.

use std::collections::HashMap;

use super::BoundaryTensor;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{Monomial, MonomialOrder};

/// Monomials of degree `t` in `nvars` variables, grevlex-descending.
pub fn symmetric_basis(nvars: usize, t: u32) -> Vec<Monomial> {
    let mut m = Monomial::all_of_degree(nvars, t);
    m.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
    m
}

/// Rows are indexed by `(i, m')` with `deg m' = t+1`, columns by `(w, m)` with
/// `deg m = t`, both with the first factor major. The entry is
/// `Σ_v a[w][i][v] · [x_v · m = m']`.
pub fn multiplication_map<F: Field>(a: &BoundaryTensor<F>, t: u32) -> Result<Matrix<F>> {
    let (n, k) = a.require_three_way()?;
    let nw = n + k;
    let src = symmetric_basis(n + 1, t);
    let dst = symmetric_basis(n + 1, t + 1);
    let dst_index: HashMap<&Monomial, usize> = dst.iter().enumerate().map(|(j, m)| (m, j)).collect();
    let mut out = Matrix::<F>::zeros(k * dst.len(), nw * src.len());
    for w in 0..nw {
        for (ms, m) in src.iter().enumerate() {
            let col = w * src.len() + ms;
            for v in 0..=n {
                let target = dst_index[&m.mul(&Monomial::var(v, n + 1))];
                for i in 0..k {
                    let c = a.at(w, i, v);
                    if c.is_zero() {
                        continue;
                    }
                    let row = i * dst.len() + target;
                    let cur = out.get(row, col).clone();
                    out.set(row, col, cur + c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Determinant of the square multiplication map at `t = k − 1`. It is
/// nonzero exactly when the flattening has rank `k` at every nonzero point,
/// and it is homogeneous of degree `k · C(n+k, k)` in the entries.
pub fn hyperdet_certificate<F: Field>(a: &BoundaryTensor<F>) -> Result<F> {
    let (_, k) = a.require_three_way()?;
    multiplication_map(a, k as u32 - 1)?.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::tensor::BoundaryFormat;

    type T = BoundaryTensor<Rational>;

    fn binom(n: usize, r: usize) -> usize {
        (0..r).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn square_at_top_degree() {
        for (n, k) in [(1, 2), (2, 2), (1, 3), (2, 3), (3, 2)] {
            let a = T::random(BoundaryFormat::steiner(n, k).unwrap(), 3);
            let m = multiplication_map(&a, k as u32 - 1).unwrap();
            assert_eq!(m.rows(), k * binom(n + k, n));
            assert_eq!(m.rows(), m.cols());
        }
    }

    #[test]
    fn degree_zero_is_the_flattening() {
        let a = T::random(BoundaryFormat::steiner(2, 2).unwrap(), 8);
        let m = multiplication_map(&a, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 4));
        for w in 0..4 {
            for i in 0..2 {
                for v in 0..3 {
                    assert_eq!(m.get(i * 3 + v, w), a.at(w, i, v));
                }
            }
        }
    }

    #[test]
    fn identity_certificate_is_unit() {
        let a = T::identity(BoundaryFormat::steiner(1, 2).unwrap());
        let d = hyperdet_certificate(&a).unwrap();
        assert!(d == Rational::from_i64(1) || d == Rational::from_i64(-1));
    }

    #[test]
    fn symmetric_basis_order() {
        let names: Vec<String> = symmetric_basis(3, 2).iter().map(|m| format!("{:?}", m.exponents())).collect();
        assert_eq!(names, ["[2, 0, 0]", "[1, 1, 0]", "[0, 2, 0]", "[1, 0, 1]", "[0, 1, 1]", "[0, 0, 2]"]);
    }
}
