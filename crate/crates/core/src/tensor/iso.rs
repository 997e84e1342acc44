//! Isomorphism test: the space of pairs `(P, Q)` with `M_A · P = Q · M_B`.

use super::BoundaryTensor;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict<F> {
    /// `P` acts on `W`, `Q` on `I`; both invertible.
    Iso {
        p: Matrix<F>,
        q: Matrix<F>,
    },
    NotIso,
    Indeterminate {
        nullity: usize,
    },
}

impl<F> IsoVerdict<F> {
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Iso { .. } => "Iso",
            IsoVerdict::NotIso => "NotIso",
            IsoVerdict::Indeterminate { .. } => "Indeterminate",
        }
    }
}

pub fn iso_test<F: Field>(a: &BoundaryTensor<F>, b: &BoundaryTensor<F>) -> Result<IsoVerdict<F>> {
    let (n, k) = a.require_three_way()?;
    if a.format() != b.format() {
        return Err(Error::NotBoundaryFormat(format!("formats differ: {} vs {}", a.format(), b.format())));
    }
    let (nw, nv) = (n + k, n + 1);
    let oq = nw * nw;
    let unknowns = oq + k * k;
    let mut rows = Vec::with_capacity(k * nw * nv);
    for i in 0..k {
        for w in 0..nw {
            for v in 0..nv {
                let mut r = vec![F::zero(); unknowns];
                for w2 in 0..nw {
                    r[w2 * nw + w] = a.at(w2, i, v).clone();
                }
                for i2 in 0..k {
                    r[oq + i * k + i2] = -b.at(w, i2, v).clone();
                }
                rows.push(r);
            }
        }
    }
    let kernel = Matrix::from_rows(rows)?.right_kernel();
    Ok(match kernel.len() {
        0 => IsoVerdict::NotIso,
        1 => {
            let v = &kernel[0];
            let p = Matrix::new(nw, nw, v[..oq].to_vec())?;
            let q = Matrix::new(k, k, v[oq..].to_vec())?;
            if p.determinant()?.is_zero() || q.determinant()?.is_zero() {
                IsoVerdict::Indeterminate { nullity: 1 }
            } else {
                IsoVerdict::Iso { p, q }
            }
        }
        nullity => IsoVerdict::Indeterminate { nullity },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::rng::seeded;
    use crate::tensor::{random_invertible, BoundaryFormat};

    type T = BoundaryTensor<Rational>;

    fn proportional(a: &Matrix<Rational>, b: &Matrix<Rational>) -> bool {
        let (r, c) = (0..a.rows())
            .flat_map(|r| (0..a.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| !b.get(r, c).clone().eq(&Rational::from_i64(0)))
            .unwrap();
        let s = a.get(r, c).clone() / b.get(r, c).clone();
        a == &b.scale(&s)
    }

    #[test]
    fn self_iso() {
        let a = T::random(BoundaryFormat::steiner(2, 2).unwrap(), 3);
        match iso_test(&a, &a).unwrap() {
            IsoVerdict::Iso { p, q } => {
                assert!(proportional(&p, &Matrix::identity(4)));
                assert!(proportional(&q, &Matrix::identity(2)));
            }
            other => panic!("expected Iso, got {other:?}"),
        }
    }

    #[test]
    fn recovers_group_element() {
        let f = BoundaryFormat::steiner(2, 3).unwrap();
        let a = T::random(f, 12);
        let mut rng = seeded(5);
        let g0: Matrix<Rational> = random_invertible(5, &mut rng);
        let g1: Matrix<Rational> = random_invertible(3, &mut rng);
        let b = a.apply_group_element(&[g0.clone(), g1.clone(), Matrix::identity(3)]).unwrap();
        match iso_test(&a, &b).unwrap() {
            IsoVerdict::Iso { p, q } => {
                assert!(proportional(&p, &g0.transpose()));
                assert!(proportional(&q, &g1.inverse().unwrap()));
            }
            other => panic!("expected Iso, got {other:?}"),
        }
    }

    #[test]
    fn different_bundles() {
        let f = BoundaryFormat::steiner(2, 3).unwrap();
        assert_eq!(iso_test(&T::identity(f.clone()), &T::random(f, 2)).unwrap(), IsoVerdict::NotIso);
        let g = BoundaryFormat::steiner(2, 2).unwrap();
        assert!(iso_test(&T::identity(g), &T::identity(BoundaryFormat::steiner(1, 3).unwrap())).is_err());
    }
}
