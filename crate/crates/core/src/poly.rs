//! Sparse multivariate polynomials over a [`Field`].
//!
//! A [`Poly`] keeps its terms sorted strictly descending under its
//! [`MonomialOrder`], with no zero coefficients and no repeated monomials.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn eval<F: Field>(&self, point: &[F]) -> F {
        self.0.iter().zip(point).fold(F::one(), |acc, (&e, x)| (0..e).fold(acc, |a, _| a * x.clone()))
    }

    /// All monomials of total degree `d` in `nvars` variables (unsorted).
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: usize, d: u32, out: &mut Vec<Monomial>) {
            if left == 1 {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(prefix, left - 1, d - e, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(nvars), nvars, d, &mut out);
        out
    }

    pub(crate) fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the default.
    #[default]
    Grevlex,
    /// Pure lexicographic, for elimination.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Default variable names `prefix0, prefix1, …`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<F> {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Poly { nvars, order, terms: Vec::new() }
    }

    pub fn constant(c: F, nvars: usize, order: MonomialOrder) -> Self {
        Self::from_terms(nvars, order, vec![(Monomial::one(nvars), c)])
    }

    pub fn var(i: usize, nvars: usize, order: MonomialOrder) -> Self {
        Self::from_terms(nvars, order, vec![(Monomial::var(i, nvars), F::one())])
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[F], order: MonomialOrder) -> Self {
        let n = coeffs.len();
        Self::from_terms(n, order, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i, n), c.clone())).collect())
    }

    /// Sorts, merges equal monomials and drops zeros.
    pub fn from_terms(nvars: usize, order: MonomialOrder, mut terms: Vec<(Monomial, F)>) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.clone() + c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, order, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    /// The polynomial without its leading term.
    pub fn tail(&self) -> Self {
        Poly { nvars: self.nvars, order: self.order, terms: self.terms.get(1..).unwrap_or_default().to_vec() }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| t.0.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Same polynomial, re-sorted under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::from_terms(self.nvars, order, self.terms.clone())
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &F| if negate { -c.clone() } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match ord.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), sign(&b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.1.clone() + sign(&b.1);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Poly { nvars: self.nvars, order: ord, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect(),
        }
    }

    /// `c · m · self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero(self.nvars, self.order);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero")),
        }
    }

    pub fn eval(&self, point: &[F]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (m, c)| acc + c.clone() * m.eval(point))
    }

    /// Substitutes `images[i]` for variable `i`. All images share one ring.
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars);
        let (nv, ord) = images.first().map_or((0, self.order), |p| (p.nvars, p.order));
        let mut acc = Poly::zero(nv, ord);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), nv, ord);
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Sets variable `var` to 1 and drops it from the ring.
    pub fn dehomogenize(&self, var: usize) -> Poly<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.remove(var);
                (Monomial::new(e), c.clone())
            })
            .collect();
        Poly::from_terms(self.nvars - 1, self.order, terms)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                m.fmt_with(names, &mut s).expect("string write");
            }
        }
        s
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&var_names("x", self.nvars)))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' => out.push((start, Token::Minus)),
            '*' => out.push((start, Token::Star)),
            '^' => out.push((start, Token::Caret)),
            '/' => out.push((start, Token::Slash)),
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push((start, Token::Int(lit.parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Token::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} at column {start}"))),
        }
        i += 1;
    }
    Ok(out)
}

/// Parses a polynomial in the named variables.
///
/// Grammar (whitespace between tokens is ignored):
///
/// ```text
/// poly   := sign? term (sign term)*
/// term   := factor ('*' factor)*
/// factor := INT ('/' INT)? | VAR ('^' INT)?
/// ```
///
/// Multiplication must be written with `*`; juxtaposition such as `2x` or
/// `x y` is rejected.
pub fn parse_poly<F: Field>(src: &str, names: &[String], order: MonomialOrder) -> Result<Poly<F>> {
    let toks = tokenize(src)?;
    let n = names.len();
    let err = |pos: usize, msg: &str| Error::Parse(format!("{msg} at column {pos} in {src:?}"));
    let mut terms = Vec::new();
    let mut i = 0;
    if toks.is_empty() {
        return Err(Error::Parse(format!("empty polynomial {src:?}")));
    }
    loop {
        let mut sign = F::one();
        if let Some((_, t @ (Token::Plus | Token::Minus))) = toks.get(i) {
            if *t == Token::Minus {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            let pos = toks.get(i).map_or(src.len(), |t| t.0);
            return Err(err(pos, "expected '+' or '-'"));
        }
        let mut coeff = sign;
        let mut exps = vec![0u32; n];
        loop {
            let Some((pos, tok)) = toks.get(i) else {
                return Err(err(src.len(), "expected a factor"));
            };
            match tok {
                Token::Int(num) => {
                    i += 1;
                    let mut value = BigRational::from_integer(num.clone());
                    if let Some((_, Token::Slash)) = toks.get(i) {
                        let Some((dpos, Token::Int(den))) = toks.get(i + 1) else {
                            return Err(err(*pos, "expected denominator"));
                        };
                        if den == &BigInt::from(0) {
                            return Err(err(*dpos, "zero denominator"));
                        }
                        value = BigRational::new(num.clone(), den.clone());
                        i += 2;
                    }
                    coeff = coeff * F::from_rational(&value)?;
                }
                Token::Ident(name) => {
                    i += 1;
                    let v = names
                        .iter()
                        .position(|x| x == name)
                        .ok_or_else(|| err(*pos, &format!("unknown variable {name:?}")))?;
                    let mut e = 1u32;
                    if let Some((_, Token::Caret)) = toks.get(i) {
                        let Some((epos, Token::Int(k))) = toks.get(i + 1) else {
                            return Err(err(*pos, "expected exponent"));
                        };
                        e = u32::try_from(k).map_err(|_| err(*epos, "exponent out of range"))?;
                        i += 2;
                    }
                    exps[v] += e;
                }
                _ => return Err(err(*pos, "expected a number or variable")),
            }
            match toks.get(i) {
                Some((_, Token::Star)) => i += 1,
                None | Some((_, Token::Plus | Token::Minus)) => break,
                Some((pos, _)) => return Err(err(*pos, "implicit multiplication is not allowed; use '*'")),
            }
        }
        terms.push((Monomial::new(exps), coeff));
        if i >= toks.len() {
            break;
        }
    }
    Ok(Poly::from_terms(n, order, terms))
}
