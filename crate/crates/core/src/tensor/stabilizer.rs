//! Infinitesimal projective stabilizer of a three-way tensor: triples of
//! trace-free endomorphisms `(X, Z, Y)` of `(W, I, V)` and a scalar `λ` with
//! `X·A + Z·A + Y·A = λA`.

use serde::Serialize;

use super::{hyperdet_certificate, BoundaryTensor};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabilizerKind {
    Trivial,
    Additive,
    Multiplicative,
    #[serde(rename = "SL2")]
    Sl2,
    /// A dimension or generator shape outside `{0, 1, 3}`; reported as found.
    Anomaly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGenerator<F> {
    pub x: Matrix<F>,
    pub z: Matrix<F>,
    pub y: Matrix<F>,
    pub lambda: F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport<F> {
    pub dimension: usize,
    pub kind: StabilizerKind,
    pub generators: Vec<StabilizerGenerator<F>>,
    /// Eigenvalues in the field of the `V` component, ascending, when the
    /// algebra is one-dimensional and semisimple.
    pub v_eigenvalues: Option<Vec<F>>,
}

fn unpack<F: Field>(v: &[F], nw: usize, k: usize, nv: usize) -> StabilizerGenerator<F> {
    let take = |start: usize, d: usize| Matrix::new(d, d, v[start..start + d * d].to_vec()).expect("sizes");
    StabilizerGenerator {
        x: take(0, nw),
        z: take(nw * nw, k),
        y: take(nw * nw + k * k, nv),
        lambda: v[nw * nw + k * k + nv * nv].clone(),
    }
}

/// The linear system whose kernel is the stabilizer algebra.
fn stabilizer_system<F: Field>(a: &BoundaryTensor<F>) -> Result<(Matrix<F>, usize, usize, usize)> {
    let (n, k) = a.require_three_way()?;
    let (nw, nv) = (n + k, n + 1);
    let ox = 0;
    let oz = nw * nw;
    let oy = oz + k * k;
    let ol = oy + nv * nv;
    let unknowns = ol + 1;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for w in 0..nw {
        for i in 0..k {
            for v in 0..nv {
                let mut r = vec![F::zero(); unknowns];
                for w2 in 0..nw {
                    r[ox + w * nw + w2] = a.at(w2, i, v).clone();
                }
                for i2 in 0..k {
                    r[oz + i * k + i2] = a.at(w, i2, v).clone();
                }
                for v2 in 0..nv {
                    r[oy + v * nv + v2] = a.at(w, i, v2).clone();
                }
                r[ol] = -a.at(w, i, v).clone();
                rows.push(r);
            }
        }
    }
    for (off, d) in [(ox, nw), (oz, k), (oy, nv)] {
        let mut r = vec![F::zero(); unknowns];
        for j in 0..d {
            r[off + j * d + j] = F::one();
        }
        rows.push(r);
    }
    Ok((Matrix::from_rows(rows)?, nw, k, nv))
}

/// Dimension and type of the stabilizer algebra of a nondegenerate tensor.
pub fn stabilizer_algebra<F: Field>(a: &BoundaryTensor<F>) -> Result<StabilizerReport<F>> {
    if hyperdet_certificate(a)?.is_zero() {
        return Err(Error::DegenerateTensor);
    }
    let (system, nw, k, nv) = stabilizer_system(a)?;
    let kernel = system.right_kernel();
    let generators: Vec<StabilizerGenerator<F>> = kernel.iter().map(|v| unpack(v, nw, k, nv)).collect();
    let dimension = generators.len();
    let mut v_eigenvalues = None;
    let kind = match dimension {
        0 => StabilizerKind::Trivial,
        3 => StabilizerKind::Sl2,
        1 => {
            let y = &generators[0].y;
            if y.is_zero() {
                StabilizerKind::Anomaly
            } else if y.pow(nv).is_zero() {
                StabilizerKind::Additive
            } else {
                let chi = y.char_poly();
                let radical = chi.squarefree_part();
                if y.eval_poly(&radical).is_zero() {
                    v_eigenvalues = Some(F::roots_of_squarefree(&radical));
                    StabilizerKind::Multiplicative
                } else {
                    StabilizerKind::Anomaly
                }
            }
        }
        _ => StabilizerKind::Anomaly,
    };
    Ok(StabilizerReport { dimension, kind, generators, v_eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::tensor::BoundaryFormat;

    type T = BoundaryTensor<Rational>;

    #[test]
    fn identity_is_sl2() {
        for (n, k) in [(1, 2), (2, 2), (2, 3)] {
            let r = stabilizer_algebra(&T::identity(BoundaryFormat::steiner(n, k).unwrap())).unwrap();
            assert_eq!((r.dimension, r.kind), (3, StabilizerKind::Sl2));
        }
    }

    #[test]
    fn generic_is_trivial() {
        let r = stabilizer_algebra(&T::random(BoundaryFormat::steiner(2, 3).unwrap(), 17)).unwrap();
        assert_eq!((r.dimension, r.kind), (0, StabilizerKind::Trivial));
    }

    #[test]
    fn diagonal_is_multiplicative() {
        let a = T::random_diagonal(BoundaryFormat::steiner(2, 3).unwrap(), 4);
        let r = stabilizer_algebra(&a).unwrap();
        assert_eq!((r.dimension, r.kind), (1, StabilizerKind::Multiplicative));
        let e = r.v_eigenvalues.unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e[0].clone() + e[2].clone(), Rational::from_i64(0));
        assert_eq!(e[1], Rational::from_i64(0));
    }

    #[test]
    fn degenerate_rejected() {
        let a = T::zeros(BoundaryFormat::steiner(1, 2).unwrap());
        assert_eq!(stabilizer_algebra(&a), Err(Error::DegenerateTensor));
    }
}
