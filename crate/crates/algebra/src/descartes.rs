//! Real root counting by Descartes' rule of signs with bisection
//! (Vincent–Collins–Akritas). Used where Sturm chains are too expensive,
//! e.g. for discriminants of degree in the thousands.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::sturm::ZPoly;
use crate::AlgebraError;

pub fn sign_variations(cs: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for c in cs.iter().filter(|c| !c.is_zero()) {
        let neg = c.is_negative();
        if last.is_some_and(|l| l != neg) {
            count += 1;
        }
        last = Some(neg);
    }
    count
}

/// In-place `p(x) -> p(x + 1)` on ascending coefficients.
pub fn taylor_shift_one(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
}

/// In-place `p(x) -> p(x + c)` for an integer shift.
pub fn taylor_shift(a: &mut [BigInt], c: &BigInt) {
    if c.is_zero() {
        return;
    }
    if c.is_one() {
        return taylor_shift_one(a);
    }
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * c;
            a[j] += t;
        }
    }
}

/// Upper bound (exact when 0 or 1) on the number of roots in (0, 1):
/// sign variations of `(x+1)^n p(1/(x+1))`.
pub fn descartes_bound_unit(p: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = p.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    sign_variations(&r)
}

/// `2^n p(x/2)`: the left half of the unit interval, rescaled.
fn halve(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len() - 1;
    p.iter().enumerate().map(|(i, c)| c << (n - i)).collect()
}

fn strip_zero_root(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let z = p.iter().take_while(|c| c.is_zero()).count();
    p.drain(..z);
    p
}

/// Divide by `x - 1`, assuming it is a root.
fn deflate_one(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry += &p[i + 1];
        q[i] = carry.clone();
    }
    q
}

fn count_unit(p: Vec<BigInt>, depth: usize, max_depth: usize) -> Result<usize, AlgebraError> {
    let p = strip_zero_root(p);
    if p.len() <= 1 {
        return Ok(0);
    }
    match descartes_bound_unit(&p) {
        0 => return Ok(0),
        1 => return Ok(1),
        _ => {}
    }
    if depth >= max_depth {
        return Err(AlgebraError::NotIsolated);
    }
    let mut left = halve(&p);
    let mid_root = left.iter().fold(BigInt::zero(), |s, c| s + c).is_zero();
    if mid_root {
        left = deflate_one(&left);
    }
    let mut right = left.clone();
    taylor_shift_one(&mut right);
    let a = count_unit(left, depth + 1, max_depth)?;
    let b = count_unit(right, depth + 1, max_depth)?;
    Ok(a + b + usize::from(mid_root))
}

/// Number of distinct-or-repeated real roots of `p` in the open interval
/// (lo, hi), counted by Descartes bisection. Multiple roots inside the
/// interval make the bisection fail to terminate, reported as `NotIsolated`
/// once `max_depth` is reached, so callers should pass square-free input.
pub fn count_roots(
    p: &ZPoly,
    lo: &BigRational,
    hi: &BigRational,
    max_depth: usize,
) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if lo >= hi {
        return Ok(0);
    }
    let den = lo.denom().lcm(hi.denom());
    let a = (lo * BigRational::from_integer(den.clone())).to_integer();
    let w = (hi * BigRational::from_integer(den.clone())).to_integer() - &a;
    // den^n p((a + w x)/den)
    let n = p.degree().unwrap();
    let mut cs: Vec<BigInt> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * num_traits::pow(den.clone(), n - i))
        .collect();
    taylor_shift(&mut cs, &a);
    let mut wp = BigInt::one();
    for c in cs.iter_mut() {
        *c *= &wp;
        wp *= &w;
    }
    count_unit(cs, 0, max_depth)
}
