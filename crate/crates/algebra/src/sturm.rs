//! Real root counting over ℚ: square-free decomposition, Sturm chains and
//! bisection isolation.
//!
//! All chain arithmetic is done on primitive integer polynomials; only the
//! sign of each member matters, so every normalization keeps signs intact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::AlgebraError;

pub type ZPoly = Poly<BigInt>;
pub type QPoly = Poly<BigRational>;

/// A point of the extended real line.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    NegInf,
    At(BigRational),
    PosInf,
}

impl From<BigRational> for Point {
    fn from(q: BigRational) -> Self {
        Point::At(q)
    }
}

/// Positive integer content of an integer polynomial.
pub fn integer_content(p: &ZPoly) -> BigInt {
    p.coeffs()
        .iter()
        .fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divide out the (positive) content; sign is preserved.
pub fn primitive_part(p: &ZPoly) -> ZPoly {
    let c = integer_content(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.map(|a| a / &c)
}

/// Positive rational multiple of `p` with coprime integer coefficients.
pub fn integer_primitive(p: &QPoly) -> ZPoly {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive_part(&p.map(|c| (c * &l).to_integer()))
}

pub fn to_rational(p: &ZPoly) -> QPoly {
    p.map(|c| BigRational::from_integer(c.clone()))
}

/// `-prem(a, b)` rescaled by a positive factor to a primitive polynomial.
fn negated_remainder(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let delta = a.degree().unwrap() + 1 - b.degree().unwrap();
    let r = a.pseudo_rem(b);
    let lc_neg = b.lc().unwrap().is_negative() && delta % 2 == 1;
    let r = if lc_neg { r } else { -r };
    primitive_part(&r)
}

/// gcd over ℤ[x] via the primitive remainder sequence, normalized to a
/// positive leading coefficient.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = (primitive_part(a), primitive_part(b));
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = primitive_part(&a.pseudo_rem(&b));
        a = b;
        b = r;
    }
    if a.lc().is_some_and(|c| c.is_negative()) {
        a = -a;
    }
    a
}

pub fn gcd_q(a: &QPoly, b: &QPoly) -> QPoly {
    to_rational(&gcd(&integer_primitive(a), &integer_primitive(b)))
}

/// Yun's square-free decomposition: `p = c · Π f_i^i`. Returns the non-constant
/// factors `(f_i, i)` as primitive integer polynomials.
pub fn square_free_decomposition(p: &QPoly) -> Vec<(ZPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = to_rational(&integer_primitive(p));
    let df = f.derivative();
    let a0 = gcd_q(&f, &df);
    let mut b = f.div_exact_poly(&a0).expect("gcd divides");
    let c = df.div_exact_poly(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd_q(&b, &d);
        let bn = b.div_exact_poly(&a).expect("gcd divides");
        let cn = d.div_exact_poly(&a).expect("gcd divides");
        if a.degree().unwrap_or(0) > 0 {
            out.push((integer_primitive(&a), i));
        }
        d = &cn - &bn.derivative();
        b = bn;
        i += 1;
    }
    out
}

/// Product of the distinct irreducible factors, as a primitive integer polynomial.
pub fn square_free_part(p: &QPoly) -> ZPoly {
    let f = integer_primitive(p);
    let g = gcd(&f, &f.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return f;
    }
    primitive_part(&f.div_exact_poly(&g).expect("gcd divides"))
}

/// Sign of an integer polynomial at a rational point, by homogeneous Horner
/// evaluation (no rational arithmetic).
pub fn sign_at(p: &ZPoly, x: &Point) -> Ordering {
    let Some(n) = p.degree() else {
        return Ordering::Equal;
    };
    let lc_sign = p.lc().unwrap().sign();
    match x {
        Point::PosInf => sign_of(lc_sign),
        Point::NegInf => {
            let s = sign_of(lc_sign);
            if n % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }
        Point::At(q) => {
            let (num, den) = (q.numer(), q.denom());
            let mut acc = BigInt::zero();
            let mut dpow = BigInt::one();
            for c in p.coeffs().iter().rev() {
                acc = acc * num + c * &dpow;
                dpow *= den;
            }
            // acc = den^n · p(num/den) and den > 0
            sign_of(acc.sign())
        }
    }
}

fn sign_of(s: num_bigint::Sign) -> Ordering {
    match s {
        num_bigint::Sign::Minus => Ordering::Less,
        num_bigint::Sign::NoSign => Ordering::Equal,
        num_bigint::Sign::Plus => Ordering::Greater,
    }
}

/// A Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<ZPoly>,
}

impl SturmChain {
    /// Builds the chain of the square-free part of `p`.
    pub fn new(p: &QPoly) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(Self::from_square_free(square_free_part(p)))
    }

    pub fn from_square_free(p0: ZPoly) -> Self {
        let mut chain = vec![p0.clone()];
        if p0.degree().unwrap_or(0) > 0 {
            chain.push(primitive_part(&p0.derivative()));
            loop {
                let n = chain.len();
                if chain[n - 1].degree() == Some(0) {
                    break;
                }
                let r = negated_remainder(&chain[n - 2], &chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r);
            }
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &ZPoly {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn variations(&self, x: &Point) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.chain {
            let s = sign_at(p, x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the open interval (lo, hi).
    pub fn count_open(&self, lo: &Point, hi: &Point) -> usize {
        let v = self.variations(lo).saturating_sub(self.variations(hi));
        if sign_at(&self.chain[0], hi) == Ordering::Equal {
            v.saturating_sub(1)
        } else {
            v
        }
    }

    /// Isolating intervals `(a, b)` for every root in the open interval
    /// (lo, hi), each containing exactly one root and of width at most
    /// `max_width`. Exact rational roots are returned as `(r, r)`.
    pub fn isolate(
        &self,
        lo: &BigRational,
        hi: &BigRational,
        max_width: &BigRational,
    ) -> Vec<(BigRational, BigRational)> {
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        let two = BigRational::from_integer(BigInt::from(2));
        while let Some((a, b)) = stack.pop() {
            let n = self.count_open(&Point::At(a.clone()), &Point::At(b.clone()));
            if n == 0 {
                continue;
            }
            if n == 1 && &b - &a <= *max_width {
                out.push((a, b));
                continue;
            }
            let m = (&a + &b) / &two;
            if sign_at(&self.chain[0], &Point::At(m.clone())) == Ordering::Equal {
                out.push((m.clone(), m.clone()));
            }
            stack.push((m.clone(), b));
            stack.push((a, m));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }
}

/// Number of real roots of `p` in the open interval (lo, hi). With
/// `with_multiplicity`, roots are weighted by multiplicity and the endpoints
/// must not be roots.
pub fn sturm_count(
    p: &QPoly,
    lo: &Point,
    hi: &Point,
    with_multiplicity: bool,
) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !with_multiplicity {
        return Ok(SturmChain::new(p)?.count_open(lo, hi));
    }
    let zp = integer_primitive(p);
    for e in [lo, hi] {
        if matches!(e, Point::At(_)) && sign_at(&zp, e) == Ordering::Equal {
            return Err(AlgebraError::EndpointRoot);
        }
    }
    Ok(square_free_decomposition(p)
        .into_iter()
        .map(|(f, m)| m * SturmChain::from_square_free(f).count_open(lo, hi))
        .sum())
}
