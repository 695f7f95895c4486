//! Sylvester resultants by fraction-free elimination, plus the closed forms
//! used for quadratic eliminants and discriminants.

use crate::poly::Poly;
use crate::ring::Ring;
use crate::AlgebraError;

/// Determinant by Bareiss fraction-free elimination. Every intermediate
/// division is exact, so this works over any integral domain.
pub fn bareiss_determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return R::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let mut v = row[j].mul_ref(pivot);
                if !factor.is_zero() {
                    v = v.sub_ref(&factor.mul_ref(&pivot_row[j]));
                }
                row[j] = v
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            row[k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg_ref()
    } else {
        d
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// f followed by m shifted rows of g, coefficients in descending order.
pub fn sylvester_matrix<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Vec<Vec<R>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, copies, deg) in [(f, n, m), (g, m, n)] {
        for i in 0..copies {
            let mut row = vec![R::zero(); size];
            for (k, c) in p.coeffs().iter().enumerate() {
                row[i + deg - k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Res(f, g) = lc(f)^deg g · Π g(α) over the roots α of f.
pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Result<R, AlgebraError> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(AlgebraError::ZeroPolynomial);
    };
    if m == 0 {
        return Ok(f.coeff(0).pow(n as u32));
    }
    if n == 0 {
        return Ok(g.coeff(0).pow(m as u32));
    }
    Ok(bareiss_determinant(sylvester_matrix(f, g)))
}

/// Res(s, t) for a quadratic `s = s2 y² + s1 y + s0`, through the remainder of
/// `t` modulo `s`: with `r1 y + r0 = prem(t, s)` and m = deg t ≥ 2,
/// Res(s, t) = (s0 r1² − s1 r0 r1 + s2 r0²) / s2^(m−1).
pub fn resultant_with_quadratic<R: Ring>(s: &Poly<R>, t: &Poly<R>) -> Result<R, AlgebraError> {
    if s.degree() != Some(2) {
        return Err(AlgebraError::Degree("quadratic eliminant expected"));
    }
    let m = t.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if m == 0 {
        return Ok(t.coeff(0).pow(2));
    }
    let (s0, s1, s2) = (s.coeff(0), s.coeff(1), s.coeff(2));
    let r = if m >= 2 { t.pseudo_rem(s) } else { t.clone() };
    let (r0, r1) = (r.coeff(0), r.coeff(1));
    let num = s0
        .mul_ref(&r1.mul_ref(&r1))
        .sub_ref(&s1.mul_ref(&r0.mul_ref(&r1)))
        .add_ref(&s2.mul_ref(&r0.mul_ref(&r0)));
    if m >= 2 {
        num.div_exact(&s2.pow(m as u32 - 1))
            .ok_or(AlgebraError::InexactDivision)
    } else {
        Ok(num)
    }
}

/// Res of two quadratics without linear term, `a1 z² − b1` and `a2 z² − b2`.
pub fn resultant_even_quadratics<R: Ring>(a1: &R, b1: &R, a2: &R, b2: &R) -> R {
    let d = a1.mul_ref(b2).sub_ref(&a2.mul_ref(b1));
    d.mul_ref(&d)
}

/// Disc(f) = (−1)^(n(n−1)/2) Res(f, f′) / lc(f).
pub fn discriminant<R: Ring>(f: &Poly<R>) -> Result<R, AlgebraError> {
    let n = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if n == 0 {
        return Err(AlgebraError::Degree("discriminant of a constant"));
    }
    let res = resultant(f, &f.derivative())?;
    let d = res
        .div_exact(f.lc().unwrap())
        .ok_or(AlgebraError::InexactDivision)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { d.neg_ref() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type ZP = Poly<BigInt>;

    #[test]
    fn determinant_small() {
        let m = vec![
            vec![int(0), int(2), int(1)],
            vec![int(1), int(0), int(0)],
            vec![int(3), int(1), int(4)],
        ];
        // expansion along row 2: -1 * (2*4 - 1*1) = -7
        assert_eq!(bareiss_determinant(m), int(-7));
    }

    #[test]
    fn linear_resultant() {
        let f = ZP::from_i64s(&[-2, 1]);
        let g = ZP::from_i64s(&[-5, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), int(-3));
        assert_eq!(resultant(&g, &f).unwrap(), int(3));
        assert!(matches!(resultant(&ZP::zero(), &f), Err(AlgebraError::ZeroPolynomial)));
    }

    #[test]
    fn resultant_is_product_over_roots() {
        // f = (x-1)(x-2), g = x^2 + 1: Res = g(1) g(2) = 2*5
        let f = ZP::from_i64s(&[2, -3, 1]);
        let g = ZP::from_i64s(&[1, 0, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), int(10));
        assert_eq!(resultant_with_quadratic(&f, &g).unwrap(), int(10));
        let h = ZP::from_i64s(&[3, 1, 4, 1, 5]);
        let q = ZP::from_i64s(&[-1, 2, 3]);
        assert_eq!(
            resultant(&q, &h).unwrap(),
            resultant_with_quadratic(&q, &h).unwrap()
        );
    }

    #[test]
    fn even_quadratics_closed_form() {
        let f = ZP::from_i64s(&[-3, 0, 2]);
        let g = ZP::from_i64s(&[-7, 0, 5]);
        let r = resultant(&f, &g).unwrap();
        assert_eq!(r, resultant_even_quadratics(&int(2), &int(3), &int(5), &int(7)));
    }

    #[test]
    fn discriminant_of_quadratic() {
        let f = Poly::<BigRational>::from_i64s(&[-1, 12, 60]);
        assert_eq!(discriminant(&f).unwrap(), rat(144 + 240, 1));
    }
}
