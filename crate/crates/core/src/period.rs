//! The period function T(h) of the normalized center, its derivative, the
//! wave-height map and the resulting wave-length curves.
//!
//! On an orbit, h − A(x) = (x − x⁻)(x⁺ − x)(x̂ − x) and
//!
//!   T(h)  = 2 ∫ √((x+θ)/(h−A)) dx,
//!   T′(h) = (2/h) ∫ R(x) √((x+θ)/(h−A)) dx,
//!   R(x)  = x(4θ+1 − (6θ+1)x) / (4(x+θ)(3x−1)²),
//!
//! both over [x⁻, x⁺]. Substituting x = x⁻ + (x⁺−x⁻) sin²(v/2) removes the
//! two inverse square roots; each half of [0, π] is integrated from its own
//! endpoint so that the distances to x⁻ and x⁺ never suffer cancellation.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{classify_regime, derive_coefficients, ChParams, Regime, THETA_HOMOCLINIC};
use crate::planar::{annulus_geometry, normalize, NormalizedSystem, Orbit};
use crate::quadrature::{integrate, QuadOptions};
use crate::Execution;

/// Relative distance below the outer boundary at which energy-parametrized
/// evaluation is capped.
pub const BOUNDARY_CAP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeriodSample {
    pub h: f64,
    pub a: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "Tprime")]
    pub t_prime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPeriods {
    pub t0: f64,
    /// `None` when the outer boundary is a homoclinic loop (T → ∞).
    pub t1: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeriodConstants {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// Evaluate `g(x, x + θ, x̂ − x, 1/3 − x)` against dv over the orbit.
fn orbit_integral<G>(o: &Orbit, opts: &QuadOptions, g: G) -> f64
where
    G: Fn(f64, f64, f64, f64) -> f64,
{
    let w = o.width();
    let xm = o.roots.x_minus;
    let point = |dl: f64, dr: f64| g(xm + dl, o.eps + dl, o.root_gap + dr, o.saddle_gap + dr);
    let left = integrate(
        |v: f64| {
            let (s, c) = (0.5 * v).sin_cos();
            point(w * s * s, w * c * c)
        },
        0.0,
        0.5 * PI,
        opts,
    );
    let right = integrate(
        |u: f64| {
            let (s, c) = (0.5 * u).sin_cos();
            point(w * c * c, w * s * s)
        },
        0.0,
        0.5 * PI,
        opts,
    );
    left.value + right.value
}

pub fn period_of(o: &Orbit, opts: &QuadOptions) -> f64 {
    2.0 * orbit_integral(o, opts, |_, c, xh, _| (c / xh).sqrt())
}

pub fn period_derivative_of(o: &Orbit, opts: &QuadOptions) -> f64 {
    let t = o.theta;
    let (p, q) = (4.0 * t + 1.0, 6.0 * t + 1.0);
    let i = orbit_integral(o, opts, |x, c, xh, sg| {
        // R(x)·√(c/xh) with (3x − 1)² = 9 sg²
        x * (p - q * x) / (36.0 * sg * sg * (c * xh).sqrt())
    });
    2.0 * i / o.h
}

/// Period and derivative on one orbit.
pub fn sample_orbit(o: &Orbit, sys_scale: f64, opts: &QuadOptions) -> PeriodSample {
    PeriodSample {
        h: o.h,
        a: sys_scale * o.width(),
        t: period_of(o, opts),
        t_prime: period_derivative_of(o, opts),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeriodEval {
    pub value: f64,
    /// The energy was within the boundary cap and evaluation was clamped.
    pub capped: bool,
}

fn orbit_capped(h: f64, theta: f64) -> Result<(Orbit, bool)> {
    let top = annulus_geometry(theta).h_top;
    if !(h > 0.0 && h < top) {
        return Err(Error::OutOfAnnulus { h, h_top: top });
    }
    let cap = top * (1.0 - BOUNDARY_CAP);
    if h > cap {
        Ok((Orbit::from_energy_deficit(top * BOUNDARY_CAP, theta)?, true))
    } else {
        Ok((Orbit::from_energy(h, theta)?, false))
    }
}

pub fn period_eval(h: f64, theta: f64, opts: &QuadOptions) -> Result<PeriodEval> {
    let (o, capped) = orbit_capped(h, theta)?;
    Ok(PeriodEval {
        value: period_of(&o, opts),
        capped,
    })
}

pub fn period(h: f64, theta: f64) -> Result<f64> {
    Ok(period_eval(h, theta, &QuadOptions::default())?.value)
}

pub fn period_derivative(h: f64, theta: f64) -> Result<f64> {
    let (o, _) = orbit_capped(h, theta)?;
    Ok(period_derivative_of(&o, &QuadOptions::default()))
}

/// a = s*·(x⁺ − x⁻).
pub fn wave_height(h: f64, sys: &NormalizedSystem) -> Result<f64> {
    let (o, _) = orbit_capped(h, sys.theta)?;
    Ok(sys.scale * o.width())
}

/// Supremum of the wave height over the annulus.
pub fn max_wave_height(sys: &NormalizedSystem) -> f64 {
    let g = annulus_geometry(sys.theta);
    sys.scale * (g.x_right - g.x_left)
}

/// The orbit of wave height `a`, by bisection on the left turning point.
pub fn orbit_from_height(a: f64, sys: &NormalizedSystem) -> Result<Orbit> {
    let a_max = max_wave_height(sys);
    if !(a > 0.0 && a < a_max) {
        return Err(Error::OutOfRange { a, a_max });
    }
    let g = annulus_geometry(sys.theta);
    // width decreases as x⁻ moves up to 0
    let (mut lo, mut hi) = (g.x_left, 0.0f64);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let o = Orbit::from_left_root(mid, sys.theta)?;
        if sys.scale * o.width() > a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Orbit::from_left_root(x.clamp(g.x_left.next_up(), -f64::MIN_POSITIVE), sys.theta)
}

pub fn energy_from_height(a: f64, sys: &NormalizedSystem) -> Result<f64> {
    Ok(orbit_from_height(a, sys)?.h)
}

pub fn boundary_periods(theta: f64) -> BoundaryPeriods {
    let t0 = 2.0 * PI * (2.0 * theta).sqrt();
    let t1 = (theta < THETA_HOMOCLINIC).then(|| {
        let r = (theta * (1.0 + 3.0 * theta)).sqrt();
        2.0 * ((1.0 + 6.0 * theta + 4.0 * r) / ((1.0 - 6.0 * theta) * (1.0 + 2.0 * theta)).sqrt()).ln()
    });
    BoundaryPeriods { t0, t1 }
}

/// A common closed form for the outer-boundary period,
/// 2 ln((2θ+1)(1−6θ)/(1+6θ−4√(θ(1+3θ)))). It lacks a square root on the
/// numerator and does not match the limit of T; kept for comparison.
pub fn t1_naive(theta: f64) -> f64 {
    let r = (theta * (1.0 + 3.0 * theta)).sqrt();
    2.0 * ((2.0 * theta + 1.0) * (1.0 - 6.0 * theta) / (1.0 + 6.0 * theta - 4.0 * r)).ln()
}

pub fn period_constants(theta: f64) -> PeriodConstants {
    let t = theta;
    let d1 = 60.0 * t * t + 12.0 * t - 1.0;
    let d3 = (((18240.0 * t + 3312.0) * t - 276.0) * t + 40.0) * t - 5.0;
    PeriodConstants { d1, d2: -d1, d3 }
}

/// Two-sided geometric energy grid: n points ascending in h, clustered
/// toward both 0 and h_top with neighbouring spacings in ratio `ratio`.
pub fn energy_grid(theta: f64, n: usize, ratio: f64) -> Result<Vec<Orbit>> {
    if n < 2 || !(ratio > 1.0) {
        return Err(Error::Domain(format!("grid needs n >= 2 and ratio > 1 (n={n}, ratio={ratio})")));
    }
    let top = annulus_geometry(theta).h_top;
    let n_left = n / 2;
    let n_right = n - n_left;
    let mut out = Vec::with_capacity(n);
    for i in 0..n_left {
        let h = 0.5 * top * ratio.powi(-((n_left - i) as i32));
        out.push(Orbit::from_energy(h, theta)?);
    }
    for j in 0..n_right {
        let deficit = 0.5 * top * ratio.powi(-(j as i32));
        out.push(if j == 0 {
            Orbit::from_energy(0.5 * top, theta)?
        } else {
            Orbit::from_energy_deficit(deficit, theta)?
        });
    }
    Ok(out)
}

/// Grid for shape checks: half the points geometric in |x⁻| from the center,
/// half geometric in the distance to the outer boundary, reaching
/// `outer_min` (e.g. 1e−45) where the energy itself is no longer
/// representable as distinct from h_top.
pub fn deep_grid(theta: f64, n: usize, inner_min: f64, outer_min: f64) -> Result<Vec<Orbit>> {
    if n < 2 {
        return Err(Error::Domain("grid needs n >= 2".into()));
    }
    let g = annulus_geometry(theta);
    let half = -0.5 * g.x_left;
    let n_in = n / 2;
    let n_out = n - n_in;
    let mut out = Vec::with_capacity(n);
    let geo = |lo: f64, hi: f64, k: usize, m: usize| -> f64 {
        if m <= 1 {
            return hi;
        }
        lo * (hi / lo).powf(k as f64 / (m - 1) as f64)
    };
    for k in 0..n_in {
        let d = geo(inner_min * half, half * 0.999, k, n_in);
        out.push(Orbit::from_left_root(-d, theta)?);
    }
    for k in 0..n_out {
        let gap = geo(outer_min, half * 0.99, n_out - 1 - k, n_out);
        out.push(Orbit::from_outer_gap(gap, theta)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Increasing,
    Decreasing,
    UnimodalMax,
    UnimodalMin,
    Other,
}

impl Shape {
    pub fn regime(self) -> Regime {
        match self {
            Shape::Increasing => Regime::LambdaIncreasing,
            Shape::Decreasing => Regime::LambdaDecreasing,
            Shape::UnimodalMax => Regime::LambdaUnimodalMax,
            _ => Regime::NoSmoothPeriodicTws,
        }
    }
}

/// Shape of a sampled curve from the signs of its derivative.
pub fn shape_from_slopes(slopes: &[f64]) -> Shape {
    let signs: Vec<bool> = slopes.iter().map(|&d| d > 0.0).collect();
    if slopes.iter().any(|&d| d == 0.0 || !d.is_finite()) {
        return Shape::Other;
    }
    let changes: Vec<usize> = (1..signs.len()).filter(|&i| signs[i] != signs[i - 1]).collect();
    match (changes.len(), signs.first()) {
        (0, Some(true)) => Shape::Increasing,
        (0, Some(false)) => Shape::Decreasing,
        (1, Some(true)) => Shape::UnimodalMax,
        (1, Some(false)) => Shape::UnimodalMin,
        _ => Shape::Other,
    }
}

/// Shape of a sampled curve from successive differences.
pub fn shape_from_values(values: &[f64]) -> Shape {
    let d: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    shape_from_slopes(&d)
}

pub fn sample_grid(grid: &[Orbit], scale: f64, opts: &QuadOptions, exec: Execution) -> Vec<PeriodSample> {
    exec.map(grid, |o| sample_orbit(o, scale, opts))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalPeriod {
    pub h: f64,
    /// h_top − h, resolved even where h rounds to h_top.
    pub energy_deficit: f64,
    pub outer_gap: f64,
    pub period: f64,
}

/// Locate the unique critical period when T′ changes sign exactly once,
/// from + to −, on a deep grid; bisection refines it to 1e−10 relative in
/// the orbit parameter.
pub fn critical_period_with(theta: f64, opts: &QuadOptions, exec: Execution) -> Result<Option<CriticalPeriod>> {
    let grid = deep_grid(theta, 200, 1e-6, 1e-45)?;
    let d: Vec<f64> = exec.map(&grid, |o| period_derivative_of(o, opts));
    if shape_from_slopes(&d) != Shape::UnimodalMax {
        return Ok(None);
    }
    let k = (1..d.len()).find(|&i| d[i] <= 0.0).unwrap();
    let (a, b) = (&grid[k - 1], &grid[k]);
    let geo = annulus_geometry(theta);
    let half = -0.5 * geo.x_left;
    // both in gap form, or both in left-root form
    let orbit_at = |t: f64, gaps: bool| {
        if gaps {
            Orbit::from_outer_gap(t, theta)
        } else {
            Orbit::from_left_root(t, theta)
        }
    };
    let gaps = a.outer_gap() < half && b.outer_gap() < half;
    let (mut lo, mut hi) = if gaps {
        (a.outer_gap(), b.outer_gap())
    } else {
        (a.roots.x_minus, b.roots.x_minus)
    };
    // lo has T′ > 0, hi has T′ ≤ 0
    for _ in 0..200 {
        if (hi - lo).abs() <= 1e-10 * lo.abs().max(hi.abs()) {
            break;
        }
        let mid = if gaps { (lo * hi).sqrt() } else { 0.5 * (lo + hi) };
        if period_derivative_of(&orbit_at(mid, gaps)?, opts) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let o = orbit_at(if gaps { (lo * hi).sqrt() } else { 0.5 * (lo + hi) }, gaps)?;
    Ok(Some(CriticalPeriod {
        h: o.h,
        energy_deficit: o.energy_deficit(),
        outer_gap: o.outer_gap(),
        period: period_of(&o, opts),
    }))
}

pub fn critical_period(theta: f64) -> Option<CriticalPeriod> {
    critical_period_with(theta, &QuadOptions::default(), Execution::default())
        .ok()
        .flatten()
}

/// Wave length λ = T against wave height a along an energy grid.
pub fn wavelength_curve(p: &ChParams, n: usize) -> Result<Vec<PeriodSample>> {
    wavelength_curve_with(p, n, 1.05, &QuadOptions::default(), Execution::default())
}

pub fn wavelength_curve_with(
    p: &ChParams,
    n: usize,
    ratio: f64,
    opts: &QuadOptions,
    exec: Execution,
) -> Result<Vec<PeriodSample>> {
    if classify_regime(p) == Regime::NoSmoothPeriodicTws {
        return Err(Error::NoSmoothPeriodicTws);
    }
    let sys = normalize(&derive_coefficients(p))?;
    let grid = energy_grid(sys.theta, n, ratio)?;
    Ok(sample_grid(&grid, sys.scale, opts, exec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn opts() -> QuadOptions {
        QuadOptions::default()
    }

    #[test]
    fn boundary_period_examples() {
        assert_relative_eq!(boundary_periods(1.0 / 6.0).t0, 2.0 * PI / 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(boundary_periods(1.0 / 6.0).t0, 3.627599, epsilon = 1e-6);
        assert!(boundary_periods(1.0 / 6.0).t1.is_none());
        assert!(boundary_periods(1e-12).t0 < 1e-4);
        assert_relative_eq!(
            t1_naive(0.1),
            2.0 * (1.2f64 * 0.4 / (1.6 - 4.0 * 0.13f64.sqrt())).ln(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn naive_outer_limit_differs_from_corrected_one() {
        let t1 = boundary_periods(0.1).t1.unwrap();
        assert_relative_eq!(t1, 2.959_144_53, epsilon = 1e-8);
        assert!((t1 - t1_naive(0.1)).abs() > 0.5);
        // equivalent closed form
        let alt = 2.0
            * (((0.2f64 + 1.0) * 0.4).sqrt() / (1.6 - 4.0 * (0.1f64 * 1.3).sqrt())).ln();
        assert_relative_eq!(t1, alt, epsilon = 1e-13);
    }

    #[test]
    fn period_constant_examples() {
        let t2 = -0.1 + 6f64.sqrt() / 15.0;
        let c = period_constants(t2);
        assert!(c.d1.abs() < 1e-15);
        assert!(c.d3 < 0.0);
        assert_relative_eq!(period_constants(1.0 / 6.0).d1, 8.0 / 3.0, epsilon = 1e-14);
        assert_eq!(c.d2, -c.d1);
    }

    #[test]
    fn small_orbit_period_tends_to_t0() {
        for theta in [0.05, 0.1, 1.0 / 6.0, 0.2] {
            let t0 = boundary_periods(theta).t0;
            let o = Orbit::from_left_root(-1e-7, theta).unwrap();
            assert_relative_eq!(period_of(&o, &opts()), t0, max_relative = 1e-6);
        }
    }

    #[test]
    fn finite_difference_oracle_for_derivative() {
        for (theta, h) in [(0.1, 0.002), (0.2, 0.01), (0.05, 0.001), (1.0, 0.005)] {
            let d = period_derivative(h, theta).unwrap();
            let e = 1e-6 * h;
            let fd = (period(h + e, theta).unwrap() - period(h - e, theta).unwrap()) / (2.0 * e);
            assert_relative_eq!(d, fd, max_relative = 1e-5);
        }
    }

    #[test]
    fn homoclinic_period_grows_without_bound() {
        let mut last = 0.0;
        for gap in [1e-3, 1e-8, 1e-16, 1e-32] {
            let t = period_of(&Orbit::from_outer_gap(gap, 0.2).unwrap(), &opts());
            assert!(t > last);
            last = t;
        }
        assert!(last > 30.0);
    }

    #[test]
    fn derivative_diverges_to_minus_infinity_at_singular_boundary() {
        let d1 = period_derivative_of(&Orbit::from_outer_gap(1e-10, 0.1).unwrap(), &opts());
        let d2 = period_derivative_of(&Orbit::from_outer_gap(1e-30, 0.1).unwrap(), &opts());
        assert!(d1 < 0.0 && d2 < d1);
    }

    #[test]
    fn height_roundtrip() {
        let sys = normalize(&derive_coefficients(&ChParams::new(1.0, 0.0, 0.1))).unwrap();
        let top = annulus_geometry(sys.theta).h_top;
        for k in 1..20 {
            let h = top * k as f64 / 20.0;
            let a = wave_height(h, &sys).unwrap();
            assert_relative_eq!(energy_from_height(a, &sys).unwrap(), h, max_relative = 1e-10);
        }
        assert!(matches!(
            energy_from_height(max_wave_height(&sys), &sys),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn wave_height_at_homoclinic_limit() {
        let sys = normalize(&crate::model::Coefficients { alpha: -0.5, beta: -1.0 }).unwrap();
        assert_relative_eq!(max_wave_height(&sys), 1.0, epsilon = 1e-14);
        let o = Orbit::from_outer_gap(1e-300, sys.theta).unwrap();
        assert_relative_eq!(sys.scale * o.width(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn critical_period_examples() {
        let c = critical_period(0.1).expect("unique maximum");
        let top = annulus_geometry(0.1).h_top;
        assert!(c.h > 0.0 && c.h < top);
        let before = period_derivative_of(&Orbit::from_energy(c.h * 0.9, 0.1).unwrap(), &opts());
        assert!(before > 0.0);
        assert!(critical_period(0.05).is_none());
        assert!(critical_period(0.2).is_none());
    }

    #[test]
    fn shape_detection() {
        assert_eq!(shape_from_values(&[1.0, 2.0, 3.0]), Shape::Increasing);
        assert_eq!(shape_from_values(&[3.0, 2.0, 1.0]), Shape::Decreasing);
        assert_eq!(shape_from_values(&[1.0, 3.0, 2.0]), Shape::UnimodalMax);
        assert_eq!(shape_from_values(&[1.0, 3.0, 2.0, 4.0]), Shape::Other);
        assert_eq!(shape_from_values(&[1.0, 1.0]), Shape::Other);
    }

    #[test]
    fn wavelength_curve_examples() {
        let shape = |r: f64| {
            let s = wavelength_curve(&ChParams::new(1.0, 0.0, r), 200).unwrap();
            shape_from_values(&s.iter().map(|p| p.t).collect::<Vec<_>>())
        };
        assert_eq!(shape(0.3), Shape::Decreasing);
        assert_eq!(shape(0.1), Shape::UnimodalMax);
        assert_eq!(shape(-0.1), Shape::Increasing);
        assert!(matches!(
            wavelength_curve(&ChParams::new(1.0, 0.0, 0.6), 10),
            Err(Error::NoSmoothPeriodicTws)
        ));
    }
}
