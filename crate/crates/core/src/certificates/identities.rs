//! Exact identities the symbolic pipeline must satisfy, each reported as a
//! named check.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use chwave_algebra::poly::swap_vars;
use chwave_algebra::{rat, Poly, Ring};

use super::algfrac::mu_ell_recursion;
use super::pipeline::{defining_polynomial, involution_poly, resultant_in_z, symbolic_case, SymbolicCase, QT, ZT};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        IdentityCheck {
            name: name.into(),
            passed,
        }
    }
}

/// Fail with `IdentityMismatch` on the first failing check.
pub fn require_all(checks: &[IdentityCheck]) -> Result<()> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::IdentityMismatch(c.name.clone())),
        None => Ok(()),
    }
}

/// Product of integer polynomials in θ raised to powers, times a constant.
pub fn product(constant: i64, factors: &[(&[i64], u32)]) -> ZT {
    factors
        .iter()
        .fold(ZT::from_i64s(&[constant]), |acc, (f, e)| &acc * &ZT::from_i64s(f).pow(*e))
}

fn to_qt(p: &ZT) -> QT {
    p.map(|c| BigRational::from_integer(c.clone()))
}

/// R(x₀) for a rational x₀, as a polynomial in θ.
pub fn r_at_rational_x(case: &SymbolicCase, x: &BigRational) -> QT {
    case.r.map(to_qt).eval(&QT::constant(x.clone()))
}

/// Expected endpoint values of R in the ℓ₁ case: R(0) and R(1/3).
pub fn ell1_endpoint_values() -> (QT, QT) {
    let r0 = product(1, &[(&[1, 4], 1), (&[1, 2], 1), (&[-1, 24, 48], 1), (&[-1, 12, 60], 1)]);
    // (6θ−1)(2160θ³+2484θ²+720θ+17)(2/3+2θ)²
    let r13 = to_qt(&product(4, &[(&[-1, 6], 1), (&[17, 720, 2484, 2160], 1), (&[1, 3], 2)])).scale(&rat(1, 9));
    (to_qt(&r0), r13)
}

/// Expected endpoint values of R in the ℓ₃ case: R(0) and R(−θ).
pub fn ell3_endpoint_values() -> (ZT, ZT) {
    let theta12 = ZT::monomial(BigInt::from(1), 12);
    let r0 = &theta12
        * &product(
            2048 * 125,
            &[(&[1, 4], 1), (&[-1, 12, 60], 1), (&[-1, 24, 48], 1), (&[1, 2], 5)],
        );
    let rm = &theta12 * &product(16, &[(&[1, 3], 10), (&[1, 2], 12), (&[-1, 6], 14)]);
    (r0, rm)
}

/// Endpoint factorizations of R as identities in θ.
pub fn endpoint_factorizations(index: usize) -> Result<Vec<IdentityCheck>> {
    let case = symbolic_case(index)?;
    Ok(match index {
        1 => {
            let (r0, r13) = ell1_endpoint_values();
            vec![
                IdentityCheck::new("R(0) factorization", r_at_rational_x(case, &rat(0, 1)) == r0),
                IdentityCheck::new("R(1/3) factorization", r_at_rational_x(case, &rat(1, 3)) == r13),
            ]
        }
        3 => {
            let (r0, rm) = ell3_endpoint_values();
            vec![
                IdentityCheck::new("R(0) factorization", case.r.coeff(0) == r0),
                IdentityCheck::new("R(-theta) factorization", case.r.eval(&ZT::from_i64s(&[0, -1])) == rm),
            ]
        }
        _ => return Err(Error::Domain(format!("no endpoint factorizations for l{index}"))),
    })
}

/// Degree and prefactor identities of the pipeline for one index.
pub fn structure_checks(index: usize) -> Result<Vec<IdentityCheck>> {
    let case = symbolic_case(index)?;
    let (deg_t, strip, deg_r) = match index {
        1 => (8, 8, 8),
        3 => (32, 20, 44),
        _ => return Err(Error::Domain(format!("no structure checks for l{index}"))),
    };
    let t = &case.t_hat_xy;
    Ok(vec![
        IdentityCheck::new(format!("deg T_hat = {deg_t}"), case.deg_t_hat() == deg_t),
        IdentityCheck::new(format!("script R = (3x-1)^{strip} R"), case.strip_exponent == strip),
        IdentityCheck::new(format!("deg_x R = {deg_r}"), case.deg_r() == deg_r),
        IdentityCheck::new("T_hat symmetric", swap_vars(t) == *t),
        IdentityCheck::new("leading coefficients of S and T_hat never vanish together", lc_guard()),
    ])
}

/// s(x), the leading coefficient of S in y, is a nonzero constant, so it
/// cannot vanish together with t(x) anywhere.
pub fn lc_guard() -> bool {
    let s = involution_poly::<BigInt>();
    s.lc().is_some_and(|c| c.degree() == Some(0))
}

/// Res_z(L(x,z), L(y,z)) = c·(x−y)²T̂² with L built from the raw numerator
/// p of ℓ (c = λ⁻⁴) or from P = λp (c = λ⁴). Returns c.
pub fn resultant_prefactor(index: usize, raw: bool) -> Result<Option<BigRational>> {
    let case = symbolic_case(index)?;
    let d = &case.defining;
    let lam4 = d.lambda.pow(4);
    let c = if raw { rat(1, 1) / &lam4 } else { lam4 };
    let xy = Poly::new(vec![Poly::x(), Poly::constant(ZT::from_i64s(&[-1]))]);
    let base: Poly<Poly<ZT>> = &(&xy * &xy) * &(&case.t_hat_xy * &case.t_hat_xy);
    let base_q: Poly<Poly<QT>> = base.map(|p| p.map(to_qt)).map(|p| p.map(|q| q.scale(&c)));
    let l: Poly<Poly<QT>> = if raw {
        // a(x) y² − p(x)²
        let a = d.a.map(to_qt);
        Poly::new(vec![-(&d.p * &d.p), Poly::zero(), a])
    } else {
        d.bivariate().map(|p| p.map(to_qt))
    };
    Ok((resultant_in_z(&l) == base_q).then_some(c))
}

/// L(x, ℓ(x)) = 0 at rational sample points, with ℓ recomputed at the given θ.
pub fn defining_polynomial_vanishes(index: usize, theta: &BigRational) -> Result<IdentityCheck> {
    let (_, ells) = mu_ell_recursion(theta, index);
    let ell = &ells[index];
    let d = defining_polynomial(ell)?;
    let l = d.bivariate();
    let mut ok = true;
    for x in [rat(-1, 7), rat(1, 5), rat(2, 9), rat(-1, 13), rat(3, 10)] {
        let y2 = ell.square_at(&x).ok_or(Error::IdentityMismatch("l squared".into()))?;
        let v = l.coeff(2).eval(&x).mul_ref(&y2).add_ref(&l.coeff(0).eval(&x));
        ok &= v.is_zero();
    }
    // agrees with the symbolic numerator specialised at θ
    let case = symbolic_case(index)?;
    let p_sym = Poly::new(case.ell.num.coeffs().iter().map(|c| c.eval(theta)).collect());
    ok &= p_sym == ell.num && (case.ell.e, case.ell.j, case.ell.k) == (ell.e, ell.j, ell.k);
    Ok(IdentityCheck::new(format!("L(x, l{index}(x)) = 0"), ok))
}

/// ℓ₁′ = −N/(4(x+θ)^{3/2}(3x−1)⁴) with
/// N = (90θ+15)x² + (72θ²−66θ−20)x − 60θ² − 12θ + 1.
pub fn ell1_derivative_numerator() -> QT2 {
    Poly::new(vec![
        QT::from_rationals(&[rat(1, 1), rat(-12, 1), rat(-60, 1)]),
        QT::from_rationals(&[rat(-20, 1), rat(-66, 1), rat(72, 1)]),
        QT::from_rationals(&[rat(15, 1), rat(90, 1)]),
    ])
}

/// Polynomials in x with coefficients in ℚ[θ].
pub type QT2 = Poly<QT>;

pub fn ell1_derivative_check() -> Result<IdentityCheck> {
    let case = symbolic_case(1)?;
    let d = case.ell.derivative();
    let n = ell1_derivative_numerator();
    let ok = (d.e, d.j, d.k) == (-3, 0, 4) && d.num.scale(&QT::from_i64(-4)) == n;
    Ok(IdentityCheck::new("l1' = -N / (4 (x+theta)^(3/2) (3x-1)^4)", ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell1_identities() {
        require_all(&structure_checks(1).unwrap()).unwrap();
        require_all(&endpoint_factorizations(1).unwrap()).unwrap();
        assert_eq!(resultant_prefactor(1, false).unwrap(), Some(rat(16, 1)));
        assert!(ell1_derivative_check().unwrap().passed);
        for t in [rat(1, 6), rat(1, 5), rat(7, 3)] {
            assert!(defining_polynomial_vanishes(1, &t).unwrap().passed);
        }
    }

    #[test]
    fn ell3_sample_identity() {
        assert!(defining_polynomial_vanishes(3, &rat(1, 20)).unwrap().passed);
        require_all(&endpoint_factorizations(3).unwrap()).unwrap();
    }

    #[test]
    fn mismatch_is_reported() {
        let checks = vec![IdentityCheck::new("a", true), IdentityCheck::new("b", false)];
        assert_eq!(require_all(&checks), Err(Error::IdentityMismatch("b".into())));
    }
}
