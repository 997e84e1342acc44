//! Roots of squarefree univariate polynomials lying in the base field.
//!
//! Over ℚ: reduce modulo a small prime where the polynomial stays squarefree,
//! find the residues by enumeration, Newton-lift them p-adically past the
//! coefficient bound, recover candidates by rational reconstruction and keep only
//! those that are exact roots. Over 𝔽_p: isolate the linear part with
//! `gcd(f, x^p - x)` and split it by equal-degree factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{is_prime_u64, Fp, Rational};
use crate::upoly::UniPoly;

/// Primitive integer polynomial proportional to `f` (ascending coefficients).
fn integer_primitive(f: &UniPoly<Rational>) -> Vec<BigInt> {
    let lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Rational roots of a squarefree polynomial, sorted ascending.
pub fn rational_roots(f: &UniPoly<Rational>) -> Vec<Rational> {
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut ints = integer_primitive(f);
    if ints[0].is_zero() {
        roots.push(Rational::zero());
        ints.remove(0);
    }
    if ints.len() >= 2 {
        if ints.len() == 2 {
            roots.push(BigRational::new(-ints[0].clone(), ints[1].clone()));
        } else {
            roots.extend(lifted_roots(&ints));
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn lifted_roots(ints: &[BigInt]) -> Vec<Rational> {
    let lead = ints.last().expect("nonconstant").abs();
    let constant = ints[0].abs();
    // A root num/den has |num| ≤ |a0| and den ≤ |lc|; reconstruction with a
    // symmetric bound needs the modulus above twice the larger one squared.
    let bound = lead.clone().max(constant);
    let target = BigInt::from(2) * &bound * &bound + BigInt::one();
    let df = derivative(ints);
    for p in (101u64..).filter(|&p| is_prime_u64(p)).take(5000) {
        let pb = BigInt::from(p);
        if (&lead % &pb).is_zero() {
            continue;
        }
        let reduce = |c: &BigInt| c.mod_floor(&pb).to_u64().expect("small");
        let fm: Vec<u64> = ints.iter().map(reduce).collect();
        if !squarefree_mod_small(&fm, p) {
            continue;
        }
        let mut out = Vec::new();
        for r in 0..p {
            let rb = BigInt::from(r);
            if !eval_mod(ints, &rb, &pb).is_zero() {
                continue;
            }
            let mut modulus = pb.clone();
            let mut x = rb;
            while modulus < target {
                modulus = &modulus * &modulus;
                let fx = eval_mod(ints, &x, &modulus);
                let dfx = eval_mod(&df, &x, &modulus);
                let Some(inv) = inverse_mod(&dfx, &modulus) else {
                    break;
                };
                x = (&x - fx * inv).mod_floor(&modulus);
            }
            if let Some(c) = reconstruct(&x, &modulus) {
                let fr = UniPoly::new(ints.iter().map(|c| BigRational::from_integer(c.clone())).collect());
                if fr.eval(&c).is_zero() {
                    out.push(c);
                }
            }
        }
        return out;
    }
    // A squarefree polynomial has a nonzero discriminant, which cannot be
    // divisible by thousands of distinct primes at desk-scale sizes.
    panic!("no prime keeps the polynomial squarefree");
}

fn squarefree_mod_small(f: &[u64], p: u64) -> bool {
    let mulm = |a: u64, b: u64| a * b % p;
    let inv = |a: u64| {
        let mut acc = 1u64;
        let (mut b, mut e) = (a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        acc
    };
    let trim = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let rem = |a: &[u64], b: &[u64]| {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let li = inv(b[db]);
        while r.len() > db {
            let c = mulm(*r.last().unwrap(), li);
            let shift = r.len() - 1 - db;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mulm(c, bj)) % p;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    };
    let f = trim(f.to_vec());
    let df = trim(f.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % p)).collect());
    if df.is_empty() {
        return false;
    }
    let (mut a, mut b) = (f, df);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Roots in 𝔽_p of a squarefree polynomial, sorted by residue.
pub fn fp_roots<const P: u64>(f: &UniPoly<Fp<P>>) -> Vec<Fp<P>> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = UniPoly::monomial(Fp::<P>::one(), 1);
    let xp = x.pow_mod(P, f);
    let linear = f.gcd(&xp.sub(&x));
    let mut roots = Vec::new();
    split_linear(&linear, &mut roots);
    roots.sort();
    roots
}

fn split_linear<const P: u64>(g: &UniPoly<Fp<P>>, out: &mut Vec<Fp<P>>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let c = g.coeffs();
            out.push(-(c[0] / c[1]));
        }
        Some(d) => {
            for a in 0..P {
                let shifted = UniPoly::new(vec![Fp::<P>::new(a), Fp::<P>::one()]);
                let h = shifted.pow_mod((P - 1) / 2, g).sub(&UniPoly::constant(Fp::<P>::one()));
                let h = g.gcd(&h);
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < d {
                    let rest = g.div_rem(&h).0;
                    split_linear(&h, out);
                    split_linear(&rest, out);
                    return;
                }
            }
            unreachable!("equal-degree splitting exhausted all shifts");
        }
    }
}
