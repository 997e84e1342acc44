//! The scheme `W(S)` of unstable hyperplanes as the degeneracy locus of the
//! map `ξ ⊗ I → (V ⊗ I) / A(W)` over the dual projective space.

use serde::ser::{Serialize, Serializer};

use super::{elementary_transform, is_member, Hyperplane, SteinerBundle};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::buchberger;
use crate::linalg::Matrix;
use crate::minors::{minors_ideal, PolyMatrix};
use crate::poly::{Monomial, MonomialOrder, Poly};
use crate::zerodim::{projective_length, ProjectiveVerdict};

/// `n(k−1) × k` matrix of linear forms in `y_0, …, y_n`: row `q` runs over the
/// non-pivot coordinates of the row-reduced image `A(W) ⊂ V ⊗ I` (coordinate
/// `v·k + i`), and `B[q][i] = Σ_v π(x_v ⊗ e_i)_q · y_v` with `π` the projection
/// onto those coordinates along `A(W)`.
pub fn b_matrix<F: Field>(s: &SteinerBundle<F>) -> Result<PolyMatrix<F>> {
    let (n, k) = (s.n(), s.k());
    let dim = (n + 1) * k;
    let ech = Matrix::from_rows(s.image_vectors())?.echelon();
    if ech.pivots.len() != n + k {
        return Err(Error::Consistency(format!("A has rank {} on W, expected {}", ech.pivots.len(), n + k)));
    }
    let mut pivot_row = vec![None; dim];
    for (r, &p) in ech.pivots.iter().enumerate() {
        pivot_row[p] = Some(r);
    }
    let quotient: Vec<usize> = (0..dim).filter(|&c| pivot_row[c].is_none()).collect();
    // π(e_c) restricted to the quotient coordinates.
    let project = |c: usize| -> Vec<F> {
        match pivot_row[c] {
            None => quotient.iter().map(|&q| if q == c { F::one() } else { F::zero() }).collect(),
            Some(r) => quotient.iter().map(|&q| -ech.reduced.get(r, q).clone()).collect(),
        }
    };
    let order = MonomialOrder::Grevlex;
    let mut b: PolyMatrix<F> = vec![vec![Poly::zero(n + 1, order); k]; quotient.len()];
    for i in 0..k {
        let mut terms: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); quotient.len()];
        for v in 0..=n {
            for (q, c) in project(v * k + i).into_iter().enumerate() {
                if !c.is_zero() {
                    terms[q].push((Monomial::var(v, n + 1), c));
                }
            }
        }
        for (q, t) in terms.into_iter().enumerate() {
            b[q][i] = Poly::from_terms(n + 1, order, t);
        }
    }
    Ok(b)
}

/// Whether the `(k−1)`-minors of `B` have no common projective zero.
pub fn b_rank_floor_holds<F: Field>(s: &SteinerBundle<F>) -> Result<bool> {
    let b = b_matrix(s)?;
    let minors = minors_ideal(&b, s.k() - 1)?;
    Ok(buchberger(&minors, s.n() + 1, MonomialOrder::Grevlex).affine_dimension() <= 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnstableScheme<F> {
    pub b: PolyMatrix<F>,
    /// The `k × k` minors of `B`.
    pub ideal: Vec<Poly<F>>,
    pub verdict: ProjectiveVerdict<F>,
}

impl<F: Field> UnstableScheme<F> {
    pub fn length(&self) -> Option<usize> {
        self.verdict.length()
    }

    /// Rational closed points with their multiplicities.
    pub fn rational_points(&self) -> Vec<(Hyperplane<F>, usize)> {
        match &self.verdict {
            ProjectiveVerdict::Infinite => Vec::new(),
            ProjectiveVerdict::Finite { points, .. } => points
                .iter()
                .map(|p| (Hyperplane::new(p.coords.clone()).expect("projective point"), p.multiplicity))
                .collect(),
        }
    }
}

pub fn unstable_scheme<F: Field>(s: &SteinerBundle<F>, seed: u64) -> Result<UnstableScheme<F>> {
    let b = b_matrix(s)?;
    let k = s.k();
    let ideal: Vec<Poly<F>> = if b.len() < k { Vec::new() } else { minors_ideal(&b, k)? };
    let verdict = if ideal.iter().all(Poly::is_zero) {
        ProjectiveVerdict::Infinite
    } else {
        projective_length(&ideal, s.n() + 1, seed)?
    };
    let scheme = UnstableScheme { b, ideal, verdict };
    for (h, _) in scheme.rational_points() {
        if !is_member(s, &h)?.member {
            return Err(Error::Consistency(format!("computed point {h} of W(S) fails the membership test")));
        }
    }
    Ok(scheme)
}

/// Length of `W(S)`: a count in `0..=n+k+1`, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WValue {
    Finite(usize),
    Infinite,
}

impl Serialize for WValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            WValue::Finite(v) => ser.serialize_u64(*v as u64),
            WValue::Infinite => ser.serialize_str("infinite"),
        }
    }
}

pub fn w_invariant<F: Field>(s: &SteinerBundle<F>, seed: u64) -> Result<WValue> {
    let value = match unstable_scheme(s, seed)?.length() {
        None => WValue::Infinite,
        Some(len) => WValue::Finite(len),
    };
    if let WValue::Finite(len) = value {
        if len > s.n() + s.k() + 1 {
            return Err(Error::Consistency(format!(
                "finite W(S) of length {len} exceeds n+k+1 = {}",
                s.n() + s.k() + 1
            )));
        }
    }
    Ok(value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Schwarzenberger,
    Logarithmic { length: usize },
    Plain { length: usize },
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Schwarzenberger => "Schwarzenberger",
            Classification::Logarithmic { .. } => "Logarithmic",
            Classification::Plain { .. } => "Plain",
        }
    }

    pub fn length(&self) -> Option<usize> {
        match self {
            Classification::Schwarzenberger => None,
            Classification::Logarithmic { length } | Classification::Plain { length } => Some(*length),
        }
    }
}

pub fn classify_from_length(w: WValue, n: usize, k: usize) -> Classification {
    match w {
        WValue::Infinite => Classification::Schwarzenberger,
        WValue::Finite(length) if length > n + k => Classification::Logarithmic { length },
        WValue::Finite(length) => Classification::Plain { length },
    }
}

pub fn classify<F: Field>(s: &SteinerBundle<F>, seed: u64) -> Result<Classification> {
    Ok(classify_from_length(w_invariant(s, seed)?, s.n(), s.k()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplePointReport<F> {
    /// `W(S)` is infinite.
    pub schwarzenberger: bool,
    pub points: Vec<(Hyperplane<F>, usize)>,
}

/// Points of `W(S)` with multiplicity at least 2. For each, the elementary
/// transformation at that hyperplane must still have it as an unstable
/// hyperplane; a failure is reported as an error.
pub fn has_multiple_point<F: Field>(s: &SteinerBundle<F>, seed: u64) -> Result<MultiplePointReport<F>> {
    let scheme = unstable_scheme(s, seed)?;
    if scheme.length().is_none() {
        return Ok(MultiplePointReport { schwarzenberger: true, points: Vec::new() });
    }
    let points: Vec<(Hyperplane<F>, usize)> = scheme.rational_points().into_iter().filter(|(_, m)| *m >= 2).collect();
    if s.k() >= 2 {
        for (h, _) in &points {
            let t = elementary_transform(s, h)?;
            if !is_member(&t, h)?.member {
                return Err(Error::Consistency(format!("multiple point {h} is not unstable after transforming at it")));
            }
        }
    }
    Ok(MultiplePointReport { schwarzenberger: false, points })
}
