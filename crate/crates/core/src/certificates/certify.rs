//! Certified number of critical periods at a rational θ, and the regime of
//! the period function it implies.

use std::cmp::Ordering;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use chwave_algebra::{rat, Execution};

use super::identities::{
    defining_polynomial_vanishes, ell1_derivative_check, endpoint_factorizations, lc_guard, structure_checks,
    IdentityCheck,
};
use super::pipeline::symbolic_case;
use super::zeros::{delta1_sign, delta3_sign, zero_count, zero_count_z, CertCase};
use crate::error::{Error, Result};
use crate::model::Regime;

/// Behaviour of the period function T(h) on the whole annulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodRegime {
    Increasing,
    Decreasing,
    #[serde(rename = "unimodal_max")]
    UniqueMaximum,
    #[serde(rename = "unimodal_min")]
    UniqueMinimum,
    Inconclusive,
}

impl PeriodRegime {
    /// The wave-length regime with the same shape, if there is one.
    pub fn regime(self) -> Option<Regime> {
        match self {
            PeriodRegime::Increasing => Some(Regime::LambdaIncreasing),
            PeriodRegime::Decreasing => Some(Regime::LambdaDecreasing),
            PeriodRegime::UniqueMaximum => Some(Regime::LambdaUnimodalMax),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PeriodRegime::Increasing => "increasing",
            PeriodRegime::Decreasing => "decreasing",
            PeriodRegime::UniqueMaximum => "unimodal_max",
            PeriodRegime::UniqueMinimum => "unimodal_min",
            PeriodRegime::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Degrees {
    pub ell_numerator: usize,
    pub t_hat: usize,
    pub strip_exponent: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub symbolic_seconds: f64,
    pub zero_count_seconds: f64,
    pub total_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Sign of T′ near the center, from 60θ² + 12θ − 1.
    pub slope_at_center: i8,
    /// Sign of T′ near the outer boundary of the annulus.
    pub slope_at_boundary: i8,
    pub delta3_sign: i8,
    pub leading_coefficients_ok: bool,
    /// Z for ℓ₁ and ℓ₂ on (−θ, 0) when θ < 1/6; reported, never used.
    pub lower_index_zero_counts: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub theta: String,
    pub theta_approx: f64,
    pub case: CertCase,
    pub index_i: usize,
    pub degrees: Degrees,
    #[serde(rename = "Z")]
    pub z: usize,
    /// At most this many critical periods; only set when i > Z.
    pub bound: Option<usize>,
    pub critical_periods: Option<usize>,
    pub regime: PeriodRegime,
    pub conclusive: bool,
    pub timings: Timings,
    pub identity_checks: Vec<IdentityCheck>,
    pub diagnostics: Diagnostics,
}

fn sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Combine the bound with the slope signs at both ends of the annulus. With
/// equal signs the number of critical periods is even, otherwise odd.
fn conclude(bound: Option<usize>, start: i8, end: i8) -> (PeriodRegime, Option<usize>) {
    let Some(n) = bound else {
        return (PeriodRegime::Inconclusive, None);
    };
    if start == 0 || end == 0 {
        return (PeriodRegime::Inconclusive, None);
    }
    match (n, start == end) {
        (0 | 1, true) if start > 0 => (PeriodRegime::Increasing, Some(0)),
        (0 | 1, true) => (PeriodRegime::Decreasing, Some(0)),
        (1 | 2, false) if start > 0 => (PeriodRegime::UniqueMaximum, Some(1)),
        (1 | 2, false) => (PeriodRegime::UniqueMinimum, Some(1)),
        _ => (PeriodRegime::Inconclusive, None),
    }
}

/// Full certificate at θ. Inconclusive outcomes are reported, not raised.
pub fn certify_report(theta: &BigRational) -> Result<CertificateReport> {
    let start = Instant::now();
    if *theta <= BigRational::zero() {
        return Err(Error::Domain(format!("theta = {theta} must be positive")));
    }
    let case = CertCase::for_theta(theta);
    let i = case.index();
    let sym = symbolic_case(i)?;
    let symbolic_seconds = sym.seconds;

    let mut checks = structure_checks(i)?;
    checks.extend(endpoint_factorizations(i)?);
    checks.push(defining_polynomial_vanishes(i, theta)?);
    if i == 1 {
        checks.push(ell1_derivative_check()?);
    }

    let t0 = Instant::now();
    let z = zero_count_z(theta, case)?;
    let zero_count_seconds = t0.elapsed().as_secs_f64();

    let mut lower = Vec::new();
    if case == CertCase::Ell3Regime {
        let (lo, hi) = case.interval(theta);
        for j in [1, 2] {
            lower.push((j, zero_count(j, theta, &lo, &hi)?));
        }
    }

    let slope_at_center = sign(delta1_sign(theta));
    // T → ∞ at a homoclinic loop; T′ → −∞ at the singular line
    let slope_at_boundary = if *theta >= rat(1, 6) { 1 } else { -1 };
    let guard = lc_guard();
    let bound = (i > z && guard).then_some(z);
    let (regime, critical_periods) = conclude(bound, slope_at_center, slope_at_boundary);

    Ok(CertificateReport {
        theta: format!("{}/{}", theta.numer(), theta.denom()),
        theta_approx: theta.to_f64().unwrap_or(f64::NAN),
        case,
        index_i: i,
        degrees: Degrees {
            ell_numerator: sym.ell.num.degree().unwrap_or(0),
            t_hat: sym.deg_t_hat(),
            strip_exponent: sym.strip_exponent,
            r: sym.deg_r(),
        },
        z,
        bound,
        critical_periods,
        regime,
        conclusive: regime != PeriodRegime::Inconclusive && checks.iter().all(|c| c.passed),
        timings: Timings {
            symbolic_seconds,
            zero_count_seconds,
            total_seconds: start.elapsed().as_secs_f64(),
        },
        identity_checks: checks,
        diagnostics: Diagnostics {
            slope_at_center,
            slope_at_boundary,
            delta3_sign: sign(delta3_sign(theta)),
            leading_coefficients_ok: guard,
            lower_index_zero_counts: lower,
        },
    })
}

/// Like [`certify_report`] but fails with `Inconclusive` when no regime
/// can be certified.
pub fn certify(theta: &BigRational) -> Result<CertificateReport> {
    let rep = certify_report(theta)?;
    if let Some(c) = rep.identity_checks.iter().find(|c| !c.passed) {
        return Err(Error::IdentityMismatch(c.name.clone()));
    }
    if !rep.conclusive {
        return Err(Error::Inconclusive(format!(
            "theta = {}: Z = {} with l{}",
            rep.theta, rep.z, rep.index_i
        )));
    }
    Ok(rep)
}

/// Independent certificates for several θ, one job per value.
pub fn certify_many(thetas: &[BigRational], exec: Execution) -> Vec<Result<CertificateReport>> {
    exec.map(thetas, certify_report)
}

/// Parse "p/q", an integer, or a finite decimal into an exact rational.
pub fn parse_theta(s: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("cannot read theta from {s:?}"));
    let s = s.trim();
    let q = if let Some((n, d)) = s.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        BigRational::new(n, d)
    } else if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: num_bigint::BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
        BigRational::new(digits, num_bigint::BigInt::from(10u32).pow(fp.len() as u32))
    } else {
        BigRational::from_integer(s.parse().map_err(|_| bad())?)
    };
    Ok(q)
}
