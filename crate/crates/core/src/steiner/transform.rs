//! Elementary transformations and the column normal form.

use super::{column_basis_change, is_member, Hyperplane, SteinerBundle};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{extend_to_basis, subspace_intersect, Matrix};
use crate::tensor::BoundaryTensor;

/// For an unstable hyperplane `ξ`, the vectors `α ∈ W` and `c ∈ I` with
/// `M_A · α = c · ξ(x)`.
fn unstable_direction<F: Field>(s: &SteinerBundle<F>, h: &Hyperplane<F>) -> Result<(Vec<F>, Vec<F>)> {
    let image = s.image_vectors();
    let meet = subspace_intersect(&image, &s.hyperplane_block(h))?;
    let u = match meet.as_slice() {
        [] => return Err(Error::NonMemberHyperplane(h.to_string())),
        [u] => u.clone(),
        _ => return Err(Error::Consistency(format!("h0 = {} at hyperplane {h}", meet.len()))),
    };
    let k = s.k();
    let v0 = h.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero hyperplane");
    let c: Vec<F> = (0..k).map(|i| u[v0 * k + i].clone()).collect();

    let mut cols = image;
    cols.push(u.iter().map(|x| -x.clone()).collect());
    let kernel = Matrix::from_columns(&cols, u.len())?.right_kernel();
    let last = cols.len() - 1;
    let sol = kernel
        .iter()
        .find(|v| !v[last].is_zero())
        .ok_or_else(|| Error::Consistency("intersection vector is not in the image".into()))?;
    let scale = sol[last].inv().expect("nonzero");
    let alpha = sol[..last].iter().map(|x| x.clone() * scale.clone()).collect();
    Ok((alpha, c))
}

/// `S'` in `0 → S' → S → 𝒪_H → 0`: change bases so the flattening reads
/// `[[ξ, *], [0, A']]` and return `A'`.
pub fn elementary_transform<F: Field>(s: &SteinerBundle<F>, h: &Hyperplane<F>) -> Result<SteinerBundle<F>> {
    if s.k() < 2 {
        return Err(Error::OutOfRange("elementary transformation needs k ≥ 2".into()));
    }
    let (alpha, c) = unstable_direction(s, h)?;
    let p = extend_to_basis(&[alpha], s.n() + s.k())?;
    let q = extend_to_basis(&[c], s.k())?;
    let b = column_basis_change(s.tensor(), &p, &q)?;
    for v in 0..=s.n() {
        if b.at(0, 0, v) != &h.coeffs()[v] || (1..s.k()).any(|i| !b.at(0, i, v).is_zero()) {
            return Err(Error::Consistency(format!("first column is not (ξ, 0, …, 0) after normalizing at {h}")));
        }
    }
    SteinerBundle::new(b.corner(1, 1)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnNormalForm<F> {
    pub tensor: BoundaryTensor<F>,
    /// `b^j ∈ I` with column `j` of the new flattening equal to `b^j ξ_j`.
    pub b_vectors: Vec<Vec<F>>,
}

/// Equivalent tensor whose first `s` flattening columns are `b^j ξ_j` for the
/// given unstable hyperplanes.
pub fn column_normal_form<F: Field>(
    s: &SteinerBundle<F>,
    hyperplanes: &[Hyperplane<F>],
) -> Result<ColumnNormalForm<F>> {
    let (n, k) = (s.n(), s.k());
    if hyperplanes.len() > n + k {
        return Err(Error::OutOfRange(format!("at most n+k = {} hyperplanes, got {}", n + k, hyperplanes.len())));
    }
    let mut alphas = Vec::new();
    let mut bs = Vec::new();
    for h in hyperplanes {
        if !is_member(s, h)?.member {
            return Err(Error::NonMemberHyperplane(h.to_string()));
        }
        let (alpha, c) = unstable_direction(s, h)?;
        alphas.push(alpha);
        bs.push(c);
    }
    let p = extend_to_basis(&alphas, n + k).map_err(|e| match e {
        Error::DependentVectors => {
            Error::Consistency("directions of distinct unstable hyperplanes are dependent".into())
        }
        other => other,
    })?;
    let tensor = column_basis_change(s.tensor(), &p, &Matrix::identity(k))?;
    for (j, (h, b)) in hyperplanes.iter().zip(&bs).enumerate() {
        for i in 0..k {
            for v in 0..=n {
                if *tensor.at(j, i, v) != b[i].clone() * h.coeffs()[v].clone() {
                    return Err(Error::Consistency(format!("column {j} is not b·ξ after normalization")));
                }
            }
        }
    }
    let size = hyperplanes.len().min(k);
    for subset in itertools::Itertools::combinations(0..bs.len(), size) {
        let cols: Vec<Vec<F>> = subset.iter().map(|&j| bs[j].clone()).collect();
        if Matrix::from_columns(&cols, k)?.rank() < size {
            return Err(Error::Consistency(format!("vectors b at {subset:?} are dependent")));
        }
    }
    Ok(ColumnNormalForm { tensor, b_vectors: bs })
}
