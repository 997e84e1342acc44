//! Buchberger's algorithm with the Gebauer–Möller pair criteria, producing
//! the unique reduced Gröbner basis, plus the ideal analytics built on it.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F> {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Poly<F>>,
    basis: Vec<Poly<F>>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `generators` in a ring of
/// `nvars` variables.
pub fn buchberger<F: Field>(generators: &[Poly<F>], nvars: usize, order: MonomialOrder) -> GroebnerBasis<F> {
    let gens: Vec<Poly<F>> = generators.iter().map(|g| g.with_order(order)).collect();
    for g in &gens {
        assert_eq!(g.nvars(), nvars, "generator from a different ring");
    }
    let mut all: Vec<Poly<F>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).map(Poly::monic).collect();
    inputs.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for f in inputs {
        let h = normal_form_in(&f, &all, &active);
        if !h.is_zero() {
            update(&mut all, &mut active, &mut pairs, h.monic());
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.lcm.degree().cmp(&q.lcm.degree()).then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&all[pair.i], &all[pair.j], &pair.lcm);
        let h = normal_form_in(&s, &all, &active);
        if !h.is_zero() {
            update(&mut all, &mut active, &mut pairs, h.monic());
        }
    }

    let basis = reduce_basis(active.iter().map(|&i| all[i].clone()).collect(), order);
    GroebnerBasis { nvars, order, generators: gens, basis }
}

fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> Poly<F> {
    let uf = lcm.div(f.leading_monomial().unwrap());
    let ug = lcm.div(g.leading_monomial().unwrap());
    f.mul_term(&uf, &F::one()).sub(&g.mul_term(&ug, &F::one()))
}

/// Gebauer–Möller update of the pair set and active basis with a new monic `h`.
fn update<F: Field>(all: &mut Vec<Poly<F>>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: Poly<F>) {
    let hi = all.len();
    let hlm = h.leading_monomial().unwrap().clone();
    all.push(h);

    let mut candidates: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&g| {
            let glm = all[g].leading_monomial().unwrap();
            (g, glm.lcm(&hlm), glm.coprime(&hlm))
        })
        .collect();

    // Chain criterion among the new pairs.
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some((g, lcm, coprime)) = candidates.pop() {
        let dominated = !coprime && candidates.iter().chain(kept.iter()).any(|(_, other, _)| other.divides(&lcm));
        if !dominated {
            kept.push((g, lcm, coprime));
        }
    }
    // Product criterion: drop coprime pairs.
    let fresh: Vec<Pair> =
        kept.into_iter().filter(|(_, _, coprime)| !coprime).map(|(g, lcm, _)| Pair { i: g, j: hi, lcm }).collect();

    pairs.retain(|p| {
        if !hlm.divides(&p.lcm) {
            return true;
        }
        let li = all[p.i].leading_monomial().unwrap().lcm(&hlm);
        let lj = all[p.j].leading_monomial().unwrap().lcm(&hlm);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(dedup_equal_lcms(fresh));

    active.retain(|&g| !hlm.divides(all[g].leading_monomial().unwrap()));
    active.push(hi);
}

/// Among fresh pairs with identical lcm only one needs to survive.
fn dedup_equal_lcms(mut fresh: Vec<Pair>) -> Vec<Pair> {
    fresh.sort_by(|a, b| a.lcm.cmp(&b.lcm).then(a.i.cmp(&b.i)));
    fresh.dedup_by(|a, b| a.lcm == b.lcm);
    fresh
}

/// Full normal form of `f` modulo the active polynomials (all monic).
fn normal_form_in<F: Field>(f: &Poly<F>, all: &[Poly<F>], active: &[usize]) -> Poly<F> {
    let divisors: Vec<&Poly<F>> = active.iter().map(|&i| &all[i]).collect();
    normal_form_by(f, &divisors)
}

pub(crate) fn normal_form_by<F: Field>(f: &Poly<F>, divisors: &[&Poly<F>]) -> Poly<F> {
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, F)> = Vec::new();
    while let Some((lm, lc)) = p.terms().first().cloned() {
        match divisors.iter().find(|g| g.leading_monomial().unwrap().divides(&lm)) {
            Some(g) => {
                let q = lm.div(g.leading_monomial().unwrap());
                let c = lc / g.leading_coeff().unwrap().clone();
                p = p.sub(&g.mul_term(&q, &c));
            }
            None => {
                remainder.push((lm.clone(), lc));
                p = p.tail();
            }
        }
    }
    Poly::from_terms(f.nvars(), f.order(), remainder)
}

fn reduce_basis<F: Field>(mut g: Vec<Poly<F>>, order: MonomialOrder) -> Vec<Poly<F>> {
    // Minimalize: drop elements whose leading monomial is divisible by another's.
    g.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    // Interreduce tails.
    let reduced: Vec<Poly<F>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<&Poly<F>> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
            normal_form_by(&minimal[i], &others).monic()
        })
        .collect();
    let mut out = reduced;
    out.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}

impl<F: Field> GroebnerBasis<F> {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    /// Reduced basis, monic, sorted ascending by leading monomial.
    pub fn basis(&self) -> &[Poly<F>] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.leading_monomial().unwrap().is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        let f = f.with_order(self.order);
        let divisors: Vec<&Poly<F>> = self.basis.iter().collect();
        normal_form_by(&f, &divisors)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Krull dimension of the quotient ring; `-1` for the unit ideal.
    pub fn affine_dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let lms = self.leading_monomials();
        let n = self.nvars;
        let mut best = 0;
        for mask in 0u32..(1u32 << n) {
            let size = mask.count_ones() as i64;
            if size <= best {
                continue;
            }
            let escapes = lms.iter().all(|m| m.support().any(|v| mask & (1 << v) == 0));
            if escapes {
                best = size;
            }
        }
        best
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        !self.basis.iter().any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// Monomials outside the leading ideal, sorted ascending. Requires a
    /// zero-dimensional ideal.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let dim = self.affine_dimension();
        if dim > 0 {
            return Err(Error::PositiveDimensional(dim));
        }
        if dim < 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut stack = vec![Monomial::one(self.nvars)];
        let mut seen = std::collections::HashSet::new();
        while let Some(m) = stack.pop() {
            if !seen.insert(m.clone()) || !self.is_standard(&m) {
                continue;
            }
            for v in 0..self.nvars {
                stack.push(m.mul(&Monomial::var(v, self.nvars)));
            }
            out.push(m);
        }
        out.sort_by(|a, b| self.order.cmp(a, b));
        Ok(out)
    }

    /// Number of standard monomials of total degree `d`; for a homogeneous
    /// ideal under a graded order this is the Hilbert function of `R/I`.
    pub fn hilbert_function(&self, d: u32) -> usize {
        Monomial::all_of_degree(self.nvars, d).iter().filter(|m| self.is_standard(m)).count()
    }
}

/// `f ∈ I` iff its normal form vanishes.
pub fn ideal_membership<F: Field>(f: &Poly<F>, gb: &GroebnerBasis<F>) -> bool {
    gb.contains(f)
}

/// Whether `g · l ∈ b` for every basis element `g` of `a` and every form `l`.
pub fn ideal_product_containment<F: Field>(
    a: &GroebnerBasis<F>,
    linear_forms: &[Poly<F>],
    b: &GroebnerBasis<F>,
) -> bool {
    a.basis().iter().all(|g| linear_forms.iter().all(|l| b.contains(&g.mul(&l.with_order(g.order())))))
}

/// Comparison of two reduced bases as ordered lists.
pub fn same_basis<F: Field>(a: &GroebnerBasis<F>, b: &GroebnerBasis<F>) -> bool {
    a.basis.len() == b.basis.len() && a.basis.iter().zip(&b.basis).all(|(x, y)| x == y)
}
