//! Parameter algebra: (c, κ, r) ↦ (α, β) ↦ θ, the bifurcation window in r,
//! and the wave-length regime.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// θ₁ = −1/4 + √3/6, where R(0) changes sign in the ℓ₃ certificate.
pub const THETA_1: f64 = 0.038_675_134_594_812_87;
/// θ₂ = −1/10 + √6/15, positive root of 60θ² + 12θ − 1.
pub const THETA_2: f64 = 0.063_299_316_185_545_2;
/// Above this value the outer boundary of the annulus is a homoclinic loop.
pub const THETA_HOMOCLINIC: f64 = 1.0 / 6.0;

/// Default absolute tolerance for floating-point boundary membership.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChParams {
    pub c: f64,
    pub kappa: f64,
    pub r: f64,
}

impl ChParams {
    pub fn new(c: f64, kappa: f64, r: f64) -> Self {
        ChParams { c, kappa, r }
    }

    pub fn is_finite(&self) -> bool {
        self.c.is_finite() && self.kappa.is_finite() && self.r.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BifurcationWindow {
    pub r1: f64,
    pub rb1: f64,
    pub rb2: f64,
    pub r2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "none")]
    NoSmoothPeriodicTws,
    #[serde(rename = "increasing")]
    LambdaIncreasing,
    #[serde(rename = "unimodal_max")]
    LambdaUnimodalMax,
    #[serde(rename = "decreasing")]
    LambdaDecreasing,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::NoSmoothPeriodicTws => "none",
            Regime::LambdaIncreasing => "increasing",
            Regime::LambdaUnimodalMax => "unimodal_max",
            Regime::LambdaDecreasing => "decreasing",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn derive_coefficients(p: &ChParams) -> Coefficients {
    Coefficients {
        alpha: p.r - 2.0 * p.kappa * p.c - 0.5 * p.c * p.c,
        beta: -(p.c + p.kappa),
    }
}

pub fn center_exists(co: &Coefficients) -> bool {
    let a3 = 3.0 * co.alpha;
    -2.0 * co.beta * co.beta < a3 && a3 < 0.0
}

/// r_{b₂} = a + b√6, the r at which θ = θ₂. Since 6θ₂ + 1 = 2(1 + √6)/5,
/// r_{b₂} = r₂ + (c + κ)²(3 − 2√6)/6.
pub fn rb2_parts(c: f64, kappa: f64) -> (f64, f64) {
    let a = 0.5 * kappa * kappa + 3.0 * kappa * c + c * c;
    let b = -(c + kappa) * (c + kappa) / 3.0;
    (a, b)
}

pub fn bifurcation_values(c: f64, kappa: f64) -> Result<BifurcationWindow> {
    if c == -kappa {
        return Err(Error::DegenerateParameters);
    }
    let (a, b) = rb2_parts(c, kappa);
    Ok(BifurcationWindow {
        r1: -(2.0 / 3.0) * (kappa - 0.5 * c).powi(2),
        rb1: kappa * c - 0.5 * kappa * kappa,
        rb2: a + b * 6f64.sqrt(),
        r2: 2.0 * kappa * c + 0.5 * c * c,
    })
}

pub fn theta(co: &Coefficients) -> Result<f64> {
    if !center_exists(co) {
        return Err(Error::NoCenter);
    }
    let s = (4.0 * co.beta * co.beta + 6.0 * co.alpha).sqrt();
    Ok((2.0 * co.beta.abs() / s - 1.0) / 6.0)
}

/// The (α, β) pair with given β ≠ 0 whose center has parameter θ > 0.
pub fn coefficients_from_theta(theta: f64, beta: f64) -> Coefficients {
    let s = 2.0 / (6.0 * theta + 1.0);
    Coefficients {
        alpha: beta * beta * (s * s - 4.0) / 6.0,
        beta,
    }
}

/// Regime from the position of r in the bifurcation window, with the default
/// boundary tolerance.
pub fn classify_regime(p: &ChParams) -> Regime {
    classify_regime_tol(p, BOUNDARY_TOL)
}

/// Values within `tol` of a window boundary are treated as lying on it.
pub fn classify_regime_tol(p: &ChParams, tol: f64) -> Regime {
    if !p.is_finite() {
        return Regime::NoSmoothPeriodicTws;
    }
    let Ok(w) = bifurcation_values(p.c, p.kappa) else {
        return Regime::NoSmoothPeriodicTws;
    };
    let r = p.r;
    let near = |b: f64| (r - b).abs() <= tol;
    if r <= w.r1 || near(w.r1) || r >= w.r2 || near(w.r2) {
        Regime::NoSmoothPeriodicTws
    } else if r <= w.rb1 || near(w.rb1) {
        Regime::LambdaIncreasing
    } else if near(w.rb2) || r >= w.rb2 {
        Regime::LambdaDecreasing
    } else {
        Regime::LambdaUnimodalMax
    }
}

/// Regime from θ: [1/6, ∞) increasing, (θ₂, 1/6) unimodal, (0, θ₂] decreasing.
pub fn classify_by_theta(theta: f64) -> Regime {
    if !(theta > 0.0) {
        Regime::NoSmoothPeriodicTws
    } else if theta >= THETA_HOMOCLINIC {
        Regime::LambdaIncreasing
    } else if theta > THETA_2 {
        Regime::LambdaUnimodalMax
    } else {
        Regime::LambdaDecreasing
    }
}

/// Exact counterpart of [`ChParams`] for rational inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalParams {
    pub c: BigRational,
    pub kappa: BigRational,
    pub r: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalCoefficients {
    pub alpha: BigRational,
    pub beta: BigRational,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn derive_coefficients_exact(p: &RationalParams) -> RationalCoefficients {
    RationalCoefficients {
        alpha: &p.r - q(2, 1) * &p.kappa * &p.c - q(1, 2) * &p.c * &p.c,
        beta: -(&p.c + &p.kappa),
    }
}

pub fn center_exists_exact(co: &RationalCoefficients) -> bool {
    let a3 = q(3, 1) * &co.alpha;
    -q(2, 1) * &co.beta * &co.beta < a3 && a3 < BigRational::zero()
}

/// Sign of `d − b√6` for rationals d, b, decided without rounding.
fn cmp_with_sqrt6(d: &BigRational, b: &BigRational) -> Ordering {
    let lhs = d * d;
    let rhs = q(6, 1) * b * b;
    match (d.is_negative(), b.is_negative()) {
        (false, true) => Ordering::Greater,
        (true, false) => Ordering::Less,
        (false, false) => lhs.cmp(&rhs),
        (true, true) => rhs.cmp(&lhs),
    }
}

/// Exact classification for rational (c, κ, r); r_{b₂} is compared as a + b√6.
pub fn classify_regime_exact(p: &RationalParams) -> Result<Regime> {
    let (c, k, r) = (&p.c, &p.kappa, &p.r);
    if c == &-k.clone() {
        return Err(Error::DegenerateParameters);
    }
    let half = q(1, 2);
    let kmh = k - &half * c;
    let r1 = -q(2, 3) * &kmh * &kmh;
    let rb1 = k * c - &half * k * k;
    let r2 = q(2, 1) * k * c + &half * c * c;
    let a = &half * k * k + q(3, 1) * k * c + c * c;
    let ck = c + k;
    let b = -(&ck * &ck) / q(3, 1);
    let vs_rb2 = cmp_with_sqrt6(&(r - &a), &b);
    Ok(if r <= &r1 || r >= &r2 {
        Regime::NoSmoothPeriodicTws
    } else if r <= &rb1 {
        Regime::LambdaIncreasing
    } else if vs_rb2 == Ordering::Less {
        Regime::LambdaUnimodalMax
    } else {
        Regime::LambdaDecreasing
    })
}

/// Exact θ when √(4β² + 6α) is rational, `None` otherwise.
pub fn theta_exact(co: &RationalCoefficients) -> Result<Option<BigRational>> {
    if !center_exists_exact(co) {
        return Err(Error::NoCenter);
    }
    let disc = q(4, 1) * &co.beta * &co.beta + q(6, 1) * &co.alpha;
    let (n, d) = (disc.numer(), disc.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) != n || &(&sd * &sd) != d {
        return Ok(None);
    }
    let s = BigRational::new(sn, sd);
    Ok(Some((q(2, 1) * co.beta.abs() / s - q(1, 1)) / q(6, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn co(alpha: f64, beta: f64) -> Coefficients {
        Coefficients { alpha, beta }
    }

    #[test]
    fn coefficients_examples() {
        assert_eq!(derive_coefficients(&ChParams::new(1.0, 0.0, 0.0)), co(-0.5, -1.0));
        let z = derive_coefficients(&ChParams::new(0.0, 0.0, 0.0));
        assert_eq!((z.alpha, z.beta.abs()), (0.0, 0.0));
        assert_eq!(derive_coefficients(&ChParams::new(1.0, 0.0, 0.25)), co(-0.25, -1.0));
    }

    #[test]
    fn center_condition_examples() {
        assert!(center_exists(&co(-0.5, -1.0)));
        assert!(!center_exists(&co(0.0, 1.0)));
        assert!(!center_exists(&co(1.0, 1.0)));
    }

    #[test]
    fn window_examples() {
        let w = bifurcation_values(1.0, 0.0).unwrap();
        assert_relative_eq!(w.r1, -1.0 / 6.0, epsilon = 1e-15);
        assert_eq!(w.rb1, 0.0);
        assert_relative_eq!(w.rb2, (3.0 - 6f64.sqrt()) / 3.0, epsilon = 1e-15);
        assert_relative_eq!(w.rb2, 0.183503, epsilon = 1e-6);
        assert_eq!(w.r2, 0.5);
        assert_eq!(bifurcation_values(1.0, -1.0), Err(Error::DegenerateParameters));
        let w = bifurcation_values(0.0, 1.0).unwrap();
        assert_relative_eq!(w.r1, -2.0 / 3.0);
        assert_relative_eq!(w.rb1, -0.5);
        let s6 = 6f64.sqrt();
        assert_relative_eq!(w.rb2, (s6 - 3.0) / 6.0 * (s6 + 1.0), epsilon = 1e-15);
        assert_eq!(w.r2, 0.0);
    }

    #[test]
    fn rb2_is_where_theta_crosses_theta2() {
        let s6 = 6f64.sqrt();
        for (c, k) in [(1.0, 0.0), (0.3, -2.0), (-1.5, 0.7), (2.0, 2.0), (0.548, -0.398)] {
            let w = bifurcation_values(c, k).unwrap();
            let t = theta(&derive_coefficients(&ChParams::new(c, k, w.rb2))).unwrap();
            assert_relative_eq!(t, THETA_2, max_relative = 1e-9);
            assert!(w.rb1 < w.rb2 && w.rb2 < w.r2);
            // the closed form with the other κc coefficient agrees only when κc = 0
            let naive = (s6 - 3.0) / 6.0 * ((s6 + 1.0) * k * k - 2.0 * (s6 - 5.0) * k * c - 2.0 * c * c);
            if k * c == 0.0 {
                assert_relative_eq!(w.rb2, naive, epsilon = 1e-13);
            } else {
                assert!((w.rb2 - naive).abs() > 1e-3);
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_relative_eq!(theta(&co(-0.5, -1.0)).unwrap(), 1.0 / 6.0, epsilon = 1e-15);
        let t = theta(&co(-0.25, -1.0)).unwrap();
        assert_relative_eq!(t, (2.0 / 2.5f64.sqrt() - 1.0) / 6.0, epsilon = 1e-15);
        assert_relative_eq!(t, 0.044152, epsilon = 1e-6);
        assert!(theta(&co(-1e-9, -1.0)).unwrap() < 1e-9);
        assert_eq!(theta(&co(1.0, 1.0)), Err(Error::NoCenter));
    }

    #[test]
    fn theta_inverse() {
        for t in [0.01, 0.1, 1.0 / 6.0, 3.0] {
            for b in [-2.0, 0.5] {
                assert_relative_eq!(theta(&coefficients_from_theta(t, b)).unwrap(), t, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn threshold_constants() {
        assert_relative_eq!(THETA_2, -0.1 + 6f64.sqrt() / 15.0, epsilon = 1e-17);
        assert_relative_eq!(THETA_1, -0.25 + 3f64.sqrt() / 6.0, epsilon = 1e-17);
    }

    #[test]
    fn regime_examples() {
        let c = |r| classify_regime(&ChParams::new(1.0, 0.0, r));
        assert_eq!(c(-0.1), Regime::LambdaIncreasing);
        assert_eq!(c(0.1), Regime::LambdaUnimodalMax);
        assert_eq!(c(0.3), Regime::LambdaDecreasing);
        assert_eq!(c(0.6), Regime::NoSmoothPeriodicTws);
        assert_eq!(c(0.5), Regime::NoSmoothPeriodicTws);
        assert_eq!(c(-1.0 / 6.0), Regime::NoSmoothPeriodicTws);
        assert_eq!(c(0.0), Regime::LambdaIncreasing);
        assert_eq!(
            classify_regime(&ChParams::new(1.0, -1.0, 0.0)),
            Regime::NoSmoothPeriodicTws
        );
    }

    #[test]
    fn exact_rb1_is_theta_one_sixth() {
        let p = RationalParams {
            c: q(1, 1),
            kappa: q(0, 1),
            r: q(0, 1),
        };
        let co = derive_coefficients_exact(&p);
        assert_eq!(theta_exact(&co).unwrap(), Some(q(1, 6)));
        assert_eq!(classify_regime_exact(&p).unwrap(), Regime::LambdaIncreasing);
    }

    #[test]
    fn exact_classification_around_rb2() {
        // rb2 = 1 − √6/3 ≈ 0.18350341907
        let at = |n: i64, d: i64| {
            classify_regime_exact(&RationalParams {
                c: q(1, 1),
                kappa: q(0, 1),
                r: q(n, d),
            })
            .unwrap()
        };
        assert_eq!(at(18350341, 100000000), Regime::LambdaUnimodalMax);
        assert_eq!(at(18350342, 100000000), Regime::LambdaDecreasing);
        assert_eq!(at(1, 2), Regime::NoSmoothPeriodicTws);
        assert_eq!(at(-1, 6), Regime::NoSmoothPeriodicTws);
    }

    #[test]
    fn sqrt6_comparison_signs() {
        assert_eq!(cmp_with_sqrt6(&q(3, 1), &q(1, 1)), Ordering::Greater);
        assert_eq!(cmp_with_sqrt6(&q(2, 1), &q(1, 1)), Ordering::Less);
        assert_eq!(cmp_with_sqrt6(&q(-2, 1), &q(-1, 1)), Ordering::Greater);
        assert_eq!(cmp_with_sqrt6(&q(-3, 1), &q(-1, 1)), Ordering::Less);
        assert_eq!(cmp_with_sqrt6(&q(0, 1), &q(0, 1)), Ordering::Equal);
        assert_eq!(cmp_with_sqrt6(&q(-1, 1), &q(0, 1)), Ordering::Less);
    }
}
