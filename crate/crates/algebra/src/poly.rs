//! Dense univariate polynomials over an arbitrary [`Ring`].
//!
//! Coefficients are stored in ascending order with no trailing zeros, so the
//! zero polynomial is the empty vector. Nesting (`Poly<Poly<R>>`) gives
//! multivariate polynomials with the outer variable last.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::ring::{rational_gcd, QAlgebra, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| R::from_i64(c)).collect())
    }

    /// `x - r`.
    pub fn linear_root(r: R) -> Self {
        Self::new(vec![r.neg_ref(), R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    /// `self(g(x))` by Horner's rule.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let Some(n) = self.degree() else {
            return Self::zero();
        };
        if n < dd {
            return self.clone();
        }
        let b = d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = n - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let lead = r[top].clone();
            let off = top - dd;
            for c in r.iter_mut() {
                *c = c.mul_ref(&b);
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[off + i] = r[off + i].sub_ref(&lead.mul_ref(dc));
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            steps -= 1;
        }
        let mut out = Self::new(r);
        if steps > 0 {
            out = out.scale(&b.pow(steps as u32));
        }
        out
    }

    /// Long division requiring every leading-coefficient quotient to be exact.
    /// Returns `(q, r)` with `self = q * d + r` and `deg r < deg d`.
    pub fn div_rem_exact(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let b = d.lc().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![R::zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let lead = r[top].clone();
            if !lead.is_zero() {
                let t = lead.div_exact(b)?;
                let off = top - dd;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[off + i] = r[off + i].sub_ref(&t.mul_ref(dc));
                }
                q[off] = t;
            }
            r.pop();
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Exact quotient `self / d`, `None` if `d` does not divide `self`.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_exact(d)?;
        r.is_zero().then_some(q)
    }

    /// Divide every coefficient exactly by a scalar.
    pub fn div_scalar(&self, c: &R) -> Option<Self> {
        let v: Option<Vec<R>> = self.coeffs.iter().map(|a| a.div_exact(c)).collect();
        v.map(Self::new)
    }

    /// Strip the largest power of `x - r`; returns the cofactor and the multiplicity.
    pub fn deflate_root(&self, r: &R) -> (Self, usize) {
        let lin = Self::linear_root(r.clone());
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = p.div_exact_poly(&lin).expect("monic linear division is exact");
            m += 1;
        }
        (p, m)
    }

    /// Strip the largest power of a general divisor `d`.
    pub fn deflate_factor(&self, d: &Self) -> (Self, usize) {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            match p.div_exact_poly(d) {
                Some(q) => {
                    p = q;
                    m += 1;
                }
                None => break,
            }
        }
        (p, m)
    }
}

impl<R: QAlgebra> Poly<R> {
    pub fn from_rationals(cs: &[BigRational]) -> Self {
        Self::new(cs.iter().map(R::from_rational).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        Poly::constant(R::from_i64(n))
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_exact_poly(rhs)
    }
}

impl<R: QAlgebra> QAlgebra for Poly<R> {
    fn from_rational(q: &BigRational) -> Self {
        Poly::constant(R::from_rational(q))
    }
    fn scale(&self, q: &BigRational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }
    fn content(&self) -> BigRational {
        self.coeffs
            .iter()
            .fold(num_traits::Zero::zero(), |g, c| rational_gcd(&g, &c.content()))
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v)
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg_ref(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v)
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Poly::new(v)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: Poly<R>) -> Poly<R> { (&self).$m(&rhs) }
        }
        impl<R: Ring> $tr<&Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: &Poly<R>) -> Poly<R> { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

/// Swap the two variables of a bivariate polynomial `Σ c_ij x^i y^j`.
pub fn swap_vars<R: Ring>(p: &Poly<Poly<R>>) -> Poly<Poly<R>> {
    let inner = p.coeffs().iter().map(|c| c.len()).max().unwrap_or(0);
    let mut out: Vec<Vec<R>> = vec![vec![R::zero(); p.len()]; inner];
    for (j, c) in p.coeffs().iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            out[i][j] = a.clone();
        }
    }
    Poly::new(out.into_iter().map(Poly::new).collect())
}

/// Total degree of a bivariate polynomial (outer plus inner exponent).
pub fn total_degree<R: Ring>(p: &Poly<Poly<R>>) -> Option<usize> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| c.degree().map(|d| d + j))
        .max()
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}
