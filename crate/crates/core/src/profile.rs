//! Traveling wave profiles reconstructed in the time domain by integrating
//! w′ = v, v′ = −(F′(w) + v²/2)/w, independently of the period quadrature.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{classify_regime, derive_coefficients, ChParams, Coefficients, Regime};
use crate::ode::{solve, OdeOptions, Step};
use crate::period::orbit_from_height;
use crate::planar::{normalize, NormalizedSystem, Orbit, PotentialF};

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitTrace {
    /// (s, w, v) at the accepted step ends over one revolution.
    pub samples: Vec<(f64, f64, f64)>,
    pub measured_period: f64,
    pub measured_height: f64,
    pub energy_drift: f64,
    /// Times from the start to the opposite turning point and from there back.
    pub half_periods: (f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Extremum {
    pub s: f64,
    pub phi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WaveProfile {
    pub samples: Vec<(f64, f64)>,
    pub wave_length: f64,
    pub wave_height: f64,
    pub crest: Extremum,
    pub trough: Extremum,
}

fn field(f: PotentialF) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] {
    move |_, y| [y[1], -(f.d1(y[0]) + 0.5 * y[1] * y[1]) / y[0]]
}

/// Follow the orbit from the turning point `w0` until it returns to the
/// section v = 0 on the starting side.
fn trace(w0: f64, co: &Coefficients, sys: &NormalizedSystem, tol: f64, keep: bool) -> Result<OrbitTrace> {
    let f = PotentialF::new(co);
    let energy = |y: &[f64; 2]| 0.5 * y[0] * y[1] * y[1] + f.value(y[0]);
    let e0 = energy(&[w0, 0.0]);
    let side = w0.signum();
    let near = tol * sys.scale;
    let mut samples = if keep { vec![(0.0, w0, 0.0)] } else { Vec::new() };
    let mut events: Vec<(f64, f64)> = Vec::new();
    let mut drift: f64 = 0.0;
    let opts = OdeOptions {
        h_init: 1e-3 * sys.scale.recip().min(1.0),
        ..OdeOptions::with_tol(tol)
    };
    solve(field(f), 0.0, [w0, 0.0], f64::INFINITY, &opts, |st: &Step<2>| {
        let w = st.y1[0];
        if w.signum() != side || w.abs() < near {
            return Err(Error::SingularLine);
        }
        if let Some(t) = st.locate(|y| y[1]) {
            events.push((t, st.eval(t)[0]));
        }
        if events.len() >= 2 {
            let t = events[1].0;
            if keep {
                let y = st.eval(t);
                samples.push((t, y[0], y[1]));
            }
            return Ok(false);
        }
        drift = drift.max((energy(&st.y1) - e0).abs());
        if keep {
            samples.push((st.t1(), w, st.y1[1]));
        }
        Ok(true)
    })?;
    let (t1, w1) = events[0];
    let (t2, w2) = events[1];
    Ok(OrbitTrace {
        samples,
        measured_period: t2,
        measured_height: (w1 - w0).abs().max((w1 - w2).abs()),
        energy_drift: drift,
        half_periods: (t1, t2 - t1),
    })
}

/// Integrate the orbit of normalized energy `h` from its left turning point.
pub fn integrate_orbit(h: f64, co: &Coefficients, tol: f64) -> Result<OrbitTrace> {
    let sys = normalize(co)?;
    let o = Orbit::from_energy(h, sys.theta)?;
    trace(sys.to_w(o.roots.x_minus), co, &sys, tol, true)
}

/// Wave profile of height `a`, sampled at n equally spaced points over one
/// wave length starting at the trough.
pub fn profile(p: &ChParams, a: f64, n: usize) -> Result<WaveProfile> {
    profile_with_tol(p, a, n, DEFAULT_TOL)
}

pub fn profile_with_tol(p: &ChParams, a: f64, n: usize, tol: f64) -> Result<WaveProfile> {
    if classify_regime(p) == Regime::NoSmoothPeriodicTws {
        return Err(Error::NoSmoothPeriodicTws);
    }
    if n == 0 {
        return Err(Error::TooFewSamples(n));
    }
    let co = derive_coefficients(p);
    let sys = normalize(&co)?;
    let o = orbit_from_height(a, &sys)?;
    let ends = [sys.to_w(o.roots.x_minus), sys.to_w(o.roots.x_plus)];
    let w_trough = ends[0].min(ends[1]);
    let tr = trace(w_trough, &co, &sys, tol, false)?;
    let lambda = tr.measured_period;

    // march sample to sample so every value is a step end, not an interpolant
    let f = field(PotentialF::new(&co));
    let opts = OdeOptions::with_tol(tol);
    let ds = lambda / n as f64;
    let mut y = [w_trough, 0.0];
    let mut h_next = ds;
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        samples.push((k as f64 * ds, y[0] + p.c));
        let mut last = y;
        solve(
            &f,
            k as f64 * ds,
            y,
            (k + 1) as f64 * ds,
            &OdeOptions { h_init: h_next, ..opts },
            |st| {
                last = st.y1;
                h_next = st.h.max(1e-3 * ds);
                Ok(true)
            },
        )?;
        y = last;
    }
    let crest_s = tr.half_periods.0;
    let crest_w = w_trough + tr.measured_height;
    Ok(WaveProfile {
        samples,
        wave_length: lambda,
        wave_height: tr.measured_height,
        crest: Extremum {
            s: crest_s,
            phi: crest_w + p.c,
        },
        trough: Extremum {
            s: 0.0,
            phi: w_trough + p.c,
        },
    })
}

/// Left-hand side of φ″(φ − c) + φ′²/2 + r + (c − 2κ)φ − (3/2)φ².
pub fn equation_lhs(p: &ChParams, phi: f64, d1: f64, d2: f64) -> f64 {
    d2 * (phi - p.c) + 0.5 * d1 * d1 + p.r + (p.c - 2.0 * p.kappa) * phi - 1.5 * phi * phi
}

/// Largest residual of the profile equation, with derivatives from
/// fourth-order periodic central differences.
pub fn residual_check(wp: &WaveProfile, p: &ChParams) -> Result<f64> {
    let n = wp.samples.len();
    if n < 5 {
        return Err(Error::TooFewSamples(n));
    }
    let ds = wp.wave_length / n as f64;
    let at = |k: isize| wp.samples[k.rem_euclid(n as isize) as usize].1;
    let mut worst: f64 = 0.0;
    for k in 0..n as isize {
        let (m2, m1, c0, p1, p2) = (at(k - 2), at(k - 1), at(k), at(k + 1), at(k + 2));
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * ds);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * c0 + 16.0 * p1 - p2) / (12.0 * ds * ds);
        worst = worst.max(equation_lhs(p, c0, d1, d2).abs());
    }
    Ok(worst)
}
