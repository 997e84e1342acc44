//! Matrices with polynomial entries and their minor ideals.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Row-major matrix of polynomials sharing one ring.
pub type PolyMatrix<F> = Vec<Vec<Poly<F>>>;

/// Determinant by cofactor expansion along the first row.
pub fn poly_determinant<F: Field>(m: &[Vec<Poly<F>>]) -> Poly<F> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix expected");
    let (nvars, order) = m.first().map_or((0, Default::default()), |r| (r[0].nvars(), r[0].order()));
    match n {
        0 => Poly::constant(F::one(), nvars, order),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = Poly::zero(nvars, order);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Poly<F>>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = m[0][c].mul(&poly_determinant(&sub));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// All `size × size` minors, row subsets outer and column subsets inner,
/// both in lexicographic order. Zero minors are kept.
pub fn minors_ideal<F: Field>(m: &[Vec<Poly<F>>], size: usize) -> Result<Vec<Poly<F>>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if size > rows.min(cols) {
        return Err(Error::MinorSizeTooLarge { size, rows, cols });
    }
    let mut out = Vec::new();
    for rs in (0..rows).combinations(size) {
        for cs in (0..cols).combinations(size) {
            let sub: Vec<Vec<Poly<F>>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            out.push(poly_determinant(&sub));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::{parse_poly, MonomialOrder};

    fn p(s: &str) -> Poly<Rational> {
        let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        parse_poly(s, &names, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn two_by_two_symmetric() {
        let m = vec![vec![p("x"), p("y")], vec![p("y"), p("z")]];
        assert_eq!(minors_ideal(&m, 2).unwrap(), vec![p("x*z - y^2")]);
        assert_eq!(minors_ideal(&m, 1).unwrap(), vec![p("x"), p("y"), p("y"), p("z")]);
        assert!(matches!(minors_ideal(&m, 3), Err(Error::MinorSizeTooLarge { .. })));
    }

    #[test]
    fn three_by_three_determinant() {
        let m = vec![vec![p("x"), p("1"), p("0")], vec![p("0"), p("y"), p("1")], vec![p("1"), p("0"), p("z")]];
        assert_eq!(poly_determinant(&m), p("x*y*z + 1"));
    }
}
