//! `Z = 𝐏(W) ∩ (𝐏(V) × 𝐏(I))`: points of `𝐏(W)` whose image is a decomposable
//! tensor `ξ ⊗ b`, and their projections to `𝐏(V)`.

use super::{is_member, Hyperplane, SteinerBundle};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::minors::{minors_ideal, PolyMatrix};
use crate::poly::{Monomial, MonomialOrder, Poly};
use crate::zerodim::{projective_length, ProjectiveVerdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreIntersection<F> {
    pub verdict: ProjectiveVerdict<F>,
    /// Distinct `ξ` of the rational points of `Z`, sorted.
    pub projected: Vec<Hyperplane<F>>,
}

pub fn segre_intersection<F: Field>(s: &SteinerBundle<F>, seed: u64) -> Result<SegreIntersection<F>> {
    let (n, k) = (s.n(), s.k());
    let nw = n + k;
    let a = s.tensor();
    let order = MonomialOrder::Grevlex;
    let m: PolyMatrix<F> = (0..=n)
        .map(|v| {
            (0..k)
                .map(|i| {
                    let terms = (0..nw).map(|w| (Monomial::var(w, nw), a.at(w, i, v).clone())).collect();
                    Poly::from_terms(nw, order, terms)
                })
                .collect()
        })
        .collect();
    let size = 2.min(n + 1).min(k);
    let verdict =
        if size < 2 { ProjectiveVerdict::Infinite } else { projective_length(&minors_ideal(&m, 2)?, nw, seed)? };
    let mut projected: Vec<Hyperplane<F>> = Vec::new();
    if let ProjectiveVerdict::Finite { points, .. } = &verdict {
        for p in points {
            let value = |v: usize, i: usize| m[v][i].eval(&p.coords);
            let column = (0..k)
                .map(|i| (0..=n).map(|v| value(v, i)).collect::<Vec<F>>())
                .find(|c| c.iter().any(|x| !x.is_zero()));
            if let Some(xi) = column {
                let h = Hyperplane::new(xi)?;
                if !is_member(s, &h)?.member {
                    return Err(Error::Consistency(format!("projected point {h} is not an unstable hyperplane")));
                }
                if !projected.contains(&h) {
                    projected.push(h);
                }
            }
        }
    }
    projected.sort_by(|a, b| crate::zerodim::cmp_coords(a.coeffs(), b.coeffs()));
    Ok(SegreIntersection { verdict, projected })
}
