//! Zero-dimensional ideals: length, rational points with multiplicities, and
//! the projective verdict used for unstable-hyperplane schemes.
//!
//! Points are found from multiplication matrices on the standard-monomial
//! basis. A seeded generic linear form splits the quotient into generalized
//! eigenspaces; each rational cluster is accepted only when every coordinate
//! acts on it with a single eigenvalue. If eight draws fail, the quotient is
//! split one variable at a time instead.

use std::cmp::Ordering;
use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::linalg::Matrix;
use crate::poly::{Monomial, MonomialOrder, Poly};
use crate::rng::seeded;

const LINEAR_FORM_DRAWS: usize = 8;
const COORDINATE_CHANGE_DRAWS: usize = 16;

/// A point together with its local multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoint<F> {
    pub coords: Vec<F>,
    pub multiplicity: usize,
}

/// Non-rational part of a scheme: a squarefree factor of the given degree
/// occurring with the given multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ResidualFactor {
    pub degree: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDimReport<F> {
    pub length: usize,
    pub standard_monomials: Vec<Monomial>,
    pub points: Vec<WeightedPoint<F>>,
    pub residual: Vec<ResidualFactor>,
}

impl<F: Field> ZeroDimReport<F> {
    /// `Σ point multiplicities + Σ degree·multiplicity` over the residual.
    pub fn accounted_length(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum::<usize>()
            + self.residual.iter().map(|r| r.degree * r.multiplicity).sum::<usize>()
    }
}

pub(crate) fn cmp_coords<F: Field>(a: &[F], b: &[F]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.canonical_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Multiplication-by-variable matrices on the standard-monomial basis.
fn multiplication_matrices<F: Field>(gb: &GroebnerBasis<F>, basis: &[Monomial]) -> Vec<Matrix<F>> {
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = gb.nvars();
    let d = basis.len();
    (0..n)
        .map(|v| {
            let mut m = Matrix::zeros(d, d);
            for (col, mono) in basis.iter().enumerate() {
                let shifted = Poly::from_terms(n, gb.order(), vec![(mono.mul(&Monomial::var(v, n)), F::one())]);
                let nf = gb.normal_form(&shifted);
                for (mm, c) in nf.terms() {
                    let row = *index.get(mm).expect("normal form is a combination of standard monomials");
                    m.set(row, col, c.clone());
                }
            }
            m
        })
        .collect()
}

/// Rational eigenvalue clusters `(λ, algebraic multiplicity, generalized
/// eigenspace basis as columns)` and the residual factor data of `m`.
fn eigen_clusters<F: Field>(m: &Matrix<F>) -> (Vec<(F, usize, Matrix<F>)>, Vec<ResidualFactor>) {
    let chi = m.char_poly();
    let mut clusters = Vec::new();
    let mut residual = Vec::new();
    for (factor, mult) in chi.squarefree_decomposition() {
        let roots = F::roots_of_squarefree(&factor);
        let deg = factor.degree().unwrap_or(0);
        for r in roots.iter() {
            let kernel = m.shift(r).pow(mult).right_kernel();
            debug_assert_eq!(kernel.len(), mult);
            let basis = Matrix::from_columns(&kernel, m.rows()).expect("kernel vectors match ambient");
            clusters.push((r.clone(), mult, basis));
        }
        if deg > roots.len() {
            residual.push(ResidualFactor { degree: deg - roots.len(), multiplicity: mult });
        }
    }
    (clusters, residual)
}

/// Matrix of `op` restricted to the invariant subspace spanned by the columns of `basis`.
fn restrict<F: Field>(op: &Matrix<F>, basis: &Matrix<F>) -> Matrix<F> {
    let left = basis.left_inverse().expect("basis has full column rank");
    left.mul(&op.mul(basis).expect("shapes")).expect("shapes")
}

/// If `r` has a single eigenvalue, return it.
fn single_eigenvalue<F: Field>(r: &Matrix<F>) -> Option<F> {
    let d = r.rows();
    let c = r.trace() / F::from_i64(d as i64);
    r.shift(&c).pow(d).is_zero().then_some(c)
}

fn solve_with_form<F: Field>(mats: &[Matrix<F>], coeffs: &[F]) -> Option<(Vec<WeightedPoint<F>>, Vec<ResidualFactor>)> {
    let d = mats[0].rows();
    let form =
        mats.iter().zip(coeffs).fold(Matrix::zeros(d, d), |acc, (m, c)| acc.add(&m.scale(c)).expect("same shape"));
    let (clusters, residual) = eigen_clusters(&form);
    let mut points = Vec::new();
    for (_, mult, basis) in clusters {
        let mut coords = Vec::with_capacity(mats.len());
        for m in mats {
            coords.push(single_eigenvalue(&restrict(m, &basis))?);
        }
        points.push(WeightedPoint { coords, multiplicity: mult });
    }
    Some((points, residual))
}

fn solve_by_coordinates<F: Field>(
    mats: &[Matrix<F>],
    var: usize,
    basis: Matrix<F>,
    prefix: &mut Vec<F>,
    points: &mut Vec<WeightedPoint<F>>,
    residual: &mut Vec<ResidualFactor>,
) {
    if var == mats.len() {
        points.push(WeightedPoint { coords: prefix.clone(), multiplicity: basis.cols() });
        return;
    }
    let r = restrict(&mats[var], &basis);
    let (clusters, res) = eigen_clusters(&r);
    residual.extend(res);
    for (value, _, sub) in clusters {
        prefix.push(value);
        let next = basis.mul(&sub).expect("shapes");
        solve_by_coordinates(mats, var + 1, next, prefix, points, residual);
        prefix.pop();
    }
}

/// Length, rational points with multiplicities and residual data of a
/// zero-dimensional ideal given by its reduced Gröbner basis.
pub fn zero_dim_solve<F: Field>(gb: &GroebnerBasis<F>, seed: u64) -> Result<ZeroDimReport<F>> {
    let standard = gb.standard_monomials()?;
    let length = standard.len();
    if length == 0 {
        return Ok(ZeroDimReport { length, standard_monomials: standard, points: Vec::new(), residual: Vec::new() });
    }
    let n = gb.nvars();
    let mut points = Vec::new();
    let mut residual = Vec::new();
    if n == 0 {
        points.push(WeightedPoint { coords: Vec::new(), multiplicity: length });
    } else {
        let mats = multiplication_matrices(gb, &standard);
        let mut rng = seeded(seed);
        let mut solved = None;
        for _ in 0..LINEAR_FORM_DRAWS {
            let coeffs: Vec<F> = (0..n).map(|_| F::from_i64(rng.gen_range(1..=97))).collect();
            if let Some(found) = solve_with_form(&mats, &coeffs) {
                solved = Some(found);
                break;
            }
        }
        match solved {
            Some((p, r)) => {
                points = p;
                residual = r;
            }
            None => {
                let mut prefix = Vec::new();
                solve_by_coordinates(&mats, 0, Matrix::identity(length), &mut prefix, &mut points, &mut residual);
            }
        }
    }
    points.sort_by(|a, b| cmp_coords(&a.coords, &b.coords));
    residual.sort();
    let report = ZeroDimReport { length, standard_monomials: standard, points, residual };
    if report.accounted_length() != length {
        return Err(Error::Consistency(format!(
            "eigenvalue multiplicities sum to {} but the quotient has length {length}",
            report.accounted_length()
        )));
    }
    Ok(report)
}

/// Verdict on a homogeneous ideal viewed as a projective scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveVerdict<F> {
    Infinite,
    Finite { length: usize, points: Vec<WeightedPoint<F>>, residual: Vec<ResidualFactor> },
}

impl<F> ProjectiveVerdict<F> {
    pub fn length(&self) -> Option<usize> {
        match self {
            ProjectiveVerdict::Infinite => None,
            ProjectiveVerdict::Finite { length, .. } => Some(*length),
        }
    }
}

/// Normalizes a projective point so its first nonzero coordinate is 1.
pub fn normalize_projective<F: Field>(v: &[F]) -> Option<Vec<F>> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    let inv = lead.inv().expect("nonzero");
    Some(v.iter().map(|x| x.clone() * inv.clone()).collect())
}

/// Stabilized Hilbert function of a homogeneous ideal: the first value that
/// repeats `nvars` times in a row, starting from the top generator degree.
pub fn hilbert_polynomial_constant<F: Field>(gb: &GroebnerBasis<F>, start: u32) -> Option<usize> {
    let run = gb.nvars().max(1);
    let limit = start + 80;
    let mut d = start;
    while d <= limit {
        let v = gb.hilbert_function(d);
        if (1..run as u32).all(|k| gb.hilbert_function(d + k) == v) {
            return Some(v);
        }
        d += 1;
    }
    None
}

/// Length and points of the projective scheme cut out by homogeneous
/// `generators` in `nvars` variables, or `Infinite` when it has positive
/// dimension.
pub fn projective_length<F: Field>(generators: &[Poly<F>], nvars: usize, seed: u64) -> Result<ProjectiveVerdict<F>> {
    let order = MonomialOrder::Grevlex;
    let gens: Vec<Poly<F>> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.with_order(order)).collect();
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::OutOfRange(format!("generator {g} is not homogeneous")));
    }
    let cone = buchberger(&gens, nvars, order);
    let cone_dim = cone.affine_dimension();
    if cone_dim >= 2 {
        return Ok(ProjectiveVerdict::Infinite);
    }
    if cone_dim <= 0 {
        return Ok(ProjectiveVerdict::Finite { length: 0, points: Vec::new(), residual: Vec::new() });
    }

    let mut rng = seeded(seed);
    let mut verdict = None;
    for _ in 0..COORDINATE_CHANGE_DRAWS {
        let change = loop {
            let rows: Vec<Vec<F>> =
                (0..nvars).map(|_| (0..nvars).map(|_| F::from_i64(rng.gen_range(-4..=4))).collect()).collect();
            let m = Matrix::from_rows(rows).expect("square");
            if !m.determinant().expect("square").is_zero() {
                break m;
            }
        };
        // y = change · z
        let images: Vec<Poly<F>> = (0..nvars).map(|r| Poly::linear(change.row(r), order)).collect();
        let moved: Vec<Poly<F>> = gens.iter().map(|g| g.substitute(&images)).collect();

        // No point may sit on the chart boundary z0 = 0.
        let mut boundary = moved.clone();
        boundary.push(Poly::var(0, nvars, order));
        if buchberger(&boundary, nvars, order).affine_dimension() > 0 {
            continue;
        }
        let chart: Vec<Poly<F>> = moved.iter().map(|g| g.dehomogenize(0)).collect();
        let chart_gb = buchberger(&chart, nvars - 1, order);
        let report = zero_dim_solve(&chart_gb, rng.gen())?;
        let mut points: Vec<WeightedPoint<F>> = report
            .points
            .iter()
            .map(|p| {
                let mut z = vec![F::one()];
                z.extend(p.coords.iter().cloned());
                let y = change.mul_vec(&z).expect("shape");
                WeightedPoint { coords: normalize_projective(&y).expect("nonzero point"), multiplicity: p.multiplicity }
            })
            .collect();
        points.sort_by(|a, b| cmp_coords(&a.coords, &b.coords));
        verdict = Some(ProjectiveVerdict::Finite { length: report.length, points, residual: report.residual });
        break;
    }
    let verdict = verdict.ok_or_else(|| Error::Consistency("no coordinate chart avoided every point".into()))?;

    let start = gens.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
    let stabilized = hilbert_polynomial_constant(&cone, start);
    if stabilized != verdict.length() {
        return Err(Error::Consistency(format!(
            "Hilbert function stabilizes at {stabilized:?} but the chart length is {:?}",
            verdict.length()
        )));
    }
    Ok(verdict)
}
