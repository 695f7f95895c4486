//! Root counts of R on the working interval, threshold polynomials in θ and
//! the discriminant analysis that makes Z(θ) locally constant.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use chwave_algebra::descartes::count_roots;
use chwave_algebra::modular::discriminant_param;
use chwave_algebra::resultant::discriminant;
use chwave_algebra::sturm::{sign_at, square_free_part, sturm_count, to_rational};
use chwave_algebra::{rat, Execution, Point, Poly, QPoly, SturmChain, ZPoly};

use super::identities::ell1_derivative_numerator;
use super::pipeline::symbolic_case;
use crate::error::{Error, Result};

/// Which ℓᵢ the certificate is built on, with its interval of x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertCase {
    /// θ ≥ 1/6: ℓ₁ on (0, 1/3).
    Ell1Regime,
    /// θ < 1/6: ℓ₃ on (−θ, 0).
    Ell3Regime,
}

impl CertCase {
    pub fn for_theta(theta: &BigRational) -> Self {
        if *theta >= rat(1, 6) {
            CertCase::Ell1Regime
        } else {
            CertCase::Ell3Regime
        }
    }

    pub fn index(self) -> usize {
        match self {
            CertCase::Ell1Regime => 1,
            CertCase::Ell3Regime => 3,
        }
    }

    pub fn interval(self, theta: &BigRational) -> (BigRational, BigRational) {
        match self {
            CertCase::Ell1Regime => (rat(0, 1), rat(1, 3)),
            CertCase::Ell3Regime => (-theta.clone(), rat(0, 1)),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CertCase::Ell1Regime => "ell1_regime",
            CertCase::Ell3Regime => "ell3_regime",
        }
    }
}

fn check_theta(theta: &BigRational) -> Result<()> {
    if *theta <= BigRational::zero() {
        return Err(Error::Domain(format!("theta = {theta} must be positive")));
    }
    Ok(())
}

/// Roots of R_i(θ, ·) in (lo, hi) counted with multiplicity. Roots sitting
/// exactly on an endpoint are divided out first: they lie outside the open
/// interval and would otherwise block the multiplicity count.
pub fn zero_count(index: usize, theta: &BigRational, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    check_theta(theta)?;
    let r = symbolic_case(index)?.r_at(theta);
    if r.is_zero() {
        return Err(chwave_algebra::AlgebraError::ZeroPolynomial.into());
    }
    let (r, _) = r.deflate_root(lo);
    let (r, _) = r.deflate_root(hi);
    Ok(sturm_count(&r, &Point::At(lo.clone()), &Point::At(hi.clone()), true)?)
}

/// Z(θ): roots of R on the interval of the given case, with multiplicity.
pub fn zero_count_z(theta: &BigRational, case: CertCase) -> Result<usize> {
    check_theta(theta)?;
    if CertCase::for_theta(theta) != case {
        return Err(Error::Domain(format!(
            "theta = {theta} is outside the range of {}",
            case.as_str()
        )));
    }
    let (lo, hi) = case.interval(theta);
    zero_count(case.index(), theta, &lo, &hi)
}

/// A root of a θ-polynomial isolated to a rational interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsolatedRoot {
    pub lo: String,
    pub hi: String,
    pub approx: f64,
}

impl IsolatedRoot {
    fn new(lo: &BigRational, hi: &BigRational) -> Self {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        IsolatedRoot {
            lo: lo.to_string(),
            hi: hi.to_string(),
            approx: 0.5 * (f(lo) + f(hi)),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let lo: f64 = parse_rational(&self.lo);
        let hi: f64 = parse_rational(&self.hi);
        lo <= x && x <= hi
    }

    pub fn width(&self) -> f64 {
        parse_rational(&self.hi) - parse_rational(&self.lo)
    }
}

fn parse_rational(s: &str) -> f64 {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().unwrap();
            let d: BigInt = d.parse().unwrap();
            BigRational::new(n, d).to_f64().unwrap()
        }
        None => s.parse::<BigInt>().unwrap().to_f64().unwrap(),
    }
}

/// Real roots of `p` in the open interval, isolated to `max_width`.
pub fn isolate_roots(p: &ZPoly, lo: &BigRational, hi: &BigRational, max_width: &BigRational) -> Result<Vec<IsolatedRoot>> {
    let chain = SturmChain::new(&to_rational(p))?;
    Ok(chain
        .isolate(lo, hi, max_width)
        .iter()
        .map(|(a, b)| IsolatedRoot::new(a, b))
        .collect())
}

/// 60θ² + 12θ − 1, whose positive root is θ₂.
pub fn theta2_polynomial() -> ZPoly {
    ZPoly::from_i64s(&[-1, 12, 60])
}

/// 48θ² + 24θ − 1, whose positive root is θ₁.
pub fn theta1_polynomial() -> ZPoly {
    ZPoly::from_i64s(&[-1, 24, 48])
}

/// Roots on (0, 1/6) of R(0) in the ℓ₃ case, as a polynomial in θ.
pub fn r0_threshold_roots(max_width: &BigRational) -> Result<Vec<IsolatedRoot>> {
    let r0 = symbolic_case(3)?.r.coeff(0);
    isolate_roots(&r0, &rat(0, 1), &rat(1, 6), max_width)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminantReport {
    pub index: usize,
    pub degree: usize,
    /// Roots on (1/6, ∞) for ℓ₁, on (0, 1/6) for ℓ₃.
    pub roots_in_range: usize,
    pub isolated: Vec<IsolatedRoot>,
    /// Multiplicity of 60θ² + 12θ − 1 as a factor.
    pub theta2_multiplicity: usize,
    pub seconds: f64,
}

/// Disc_x(R) for the ℓ₁ case by fraction-free elimination over ℤ[θ],
/// cross-checked against the multi-modular computation.
pub fn discriminant_ell1(exec: Execution) -> Result<ZPoly> {
    let r = &symbolic_case(1)?.r;
    let d = discriminant(r)?;
    let m = discriminant_param(r, exec)?;
    if d != m {
        return Err(Error::IdentityMismatch("two discriminant computations disagree".into()));
    }
    Ok(d)
}

pub fn discriminant_ell3(exec: Execution) -> Result<ZPoly> {
    Ok(discriminant_param(&symbolic_case(3)?.r, exec)?)
}

pub fn discriminant_analysis(index: usize, exec: Execution) -> Result<DiscriminantReport> {
    let start = std::time::Instant::now();
    match index {
        1 => {
            let d = discriminant_ell1(exec)?;
            let chain = SturmChain::from_square_free(square_free_part(&to_rational(&d)));
            let sixth = Point::At(rat(1, 6));
            let n = chain.count_open(&sixth, &Point::PosInf);
            // the crossing is known to sit in (0.95, 0.96)
            let isolated = chain
                .isolate(&rat(95, 100), &rat(96, 100), &rat(1, 1_000_000))
                .iter()
                .map(|(a, b)| IsolatedRoot::new(a, b))
                .collect();
            let (_, m2) = d.deflate_factor(&theta2_polynomial());
            Ok(DiscriminantReport {
                index,
                degree: d.degree().unwrap_or(0),
                roots_in_range: n,
                isolated,
                theta2_multiplicity: m2,
                seconds: start.elapsed().as_secs_f64(),
            })
        }
        3 => {
            let d = discriminant_ell3(exec)?;
            let degree = d.degree().unwrap_or(0);
            // strip the factors whose roots are known, then show the rest
            // has no root on (0, 1/6)
            let (rest, m2) = d.deflate_factor(&theta2_polynomial());
            let (rest, _) = rest.deflate_root(&BigInt::zero());
            let (rest, _) = rest.deflate_factor(&ZPoly::from_i64s(&[-1, 6]));
            let others = count_roots(&rest, &rat(0, 1), &rat(1, 6), 64)?;
            let isolated = if m2 > 0 {
                isolate_roots(&theta2_polynomial(), &rat(0, 1), &rat(1, 6), &rat(1, 1_000_000))?
            } else {
                Vec::new()
            };
            Ok(DiscriminantReport {
                index,
                degree,
                roots_in_range: others + usize::from(m2 > 0),
                isolated,
                theta2_multiplicity: m2,
                seconds: start.elapsed().as_secs_f64(),
            })
        }
        _ => Err(Error::Domain(format!("no discriminant analysis for l{index}"))),
    }
}

/// N(x) at θ = 95/100 has no root on (−1/6, 1/3), and N(−1/6), N(1/3) and
/// Disc_x(N) have no root in θ on (9/10, 1).
pub fn ell1_monotone_window_check() -> Result<bool> {
    let n = ell1_derivative_numerator();
    let at: QPoly = Poly::new(n.coeffs().iter().map(|c| c.eval(&rat(95, 100))).collect());
    let (lo, hi) = (rat(-1, 6), rat(1, 3));
    let inside = sturm_count(&at, &Point::At(lo.clone()), &Point::At(hi.clone()), false)?;
    let ends = [n.eval(&QPoly::constant(lo)), n.eval(&QPoly::constant(hi)), discriminant(&n)?];
    let window = (Point::At(rat(9, 10)), Point::At(rat(1, 1)));
    let mut clean = inside == 0;
    for e in ends {
        let chain = SturmChain::new(&e)?;
        clean &= chain.count_open(&window.0, &window.1) == 0;
        for w in [&window.0, &window.1] {
            clean &= sign_at(chain.polynomial(), w) != Ordering::Equal;
        }
    }
    Ok(clean)
}

/// Exact sign of Δ₁ = 60θ² + 12θ − 1 at a rational θ.
pub fn delta1_sign(theta: &BigRational) -> Ordering {
    sign_at(&theta2_polynomial(), &Point::At(theta.clone()))
}

/// 18240θ⁴ + 3312θ³ − 276θ² + 40θ − 5, the third period constant up to a
/// positive factor.
pub fn delta3_polynomial() -> ZPoly {
    ZPoly::from_i64s(&[-5, 40, -276, 3312, 18240])
}

/// Exact sign of Δ₃ at a rational θ.
pub fn delta3_sign(theta: &BigRational) -> Ordering {
    sign_at(&delta3_polynomial(), &Point::At(theta.clone()))
}
