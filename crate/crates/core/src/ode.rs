//! Dormand–Prince 5(4) with Hairer's dense output and event location.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-12,
            atol: 1e-12,
            h_init: 1e-3,
            h_max: f64::INFINITY,
            max_steps: 1_000_000,
        }
    }
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions {
            rtol: tol,
            atol: tol,
            ..Self::default()
        }
    }
}

/// One accepted step together with its continuous extension.
#[derive(Clone, Copy, Debug)]
pub struct Step<const N: usize> {
    pub t0: f64,
    pub h: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    rcont: [[f64; N]; 5],
}

impl<const N: usize> Step<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Fourth-order interpolant on [t0, t0 + h].
    pub fn eval(&self, t: f64) -> [f64; N] {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        let r = &self.rcont;
        std::array::from_fn(|i| r[0][i] + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * r[4][i]))))
    }

    /// First root of `g` along the step, if `g` changes sign from y0 to y1.
    pub fn locate<G: Fn(&[f64; N]) -> f64>(&self, g: G) -> Option<f64> {
        let (mut a, mut b) = (self.t0, self.t1());
        let (mut ga, mut gb) = (g(&self.y0), g(&self.y1));
        if ga == 0.0 || ga.signum() == gb.signum() {
            return None;
        }
        // Illinois regula falsi
        let mut side = 0;
        for _ in 0..200 {
            let t = (a * gb - b * ga) / (gb - ga);
            let t = if t > a && t < b { t } else { 0.5 * (a + b) };
            let gt = g(&self.eval(t));
            if gt == 0.0 || (b - a).abs() <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
                return Some(t);
            }
            if gt.signum() == gb.signum() {
                b = t;
                gb = gt;
                if side == -1 {
                    ga *= 0.5;
                }
                side = -1;
            } else {
                a = t;
                ga = gt;
                if side == 1 {
                    gb *= 0.5;
                }
                side = 1;
            }
        }
        Some(0.5 * (a + b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

/// Integrate y′ = f(t, y) from (t0, y0), handing each accepted step to
/// `on_step` until it returns `false`, t reaches `t_max`, or the step budget
/// runs out.
pub fn solve<const N: usize, F, S>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t_max: f64,
    opts: &OdeOptions,
    mut on_step: S,
) -> Result<OdeStats>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    S: FnMut(&Step<N>) -> Result<bool>,
{
    let mut stats = OdeStats::default();
    let (mut t, mut y) = (t0, y0);
    let mut k1 = f(t, &y);
    stats.evaluations += 1;
    let mut h = opts.h_init.min(opts.h_max).min(t_max - t0);
    while stats.accepted + stats.rejected < opts.max_steps {
        if t >= t_max {
            return Ok(stats);
        }
        h = h.min(t_max - t);
        let k2 = f(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + C5 * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y1 = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = f(t + h, &y1);
        stats.evaluations += 6;

        let mut err = 0.0;
        for i in 0..N {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = opts.atol + opts.rtol * y[i].abs().max(y1[i].abs());
            err += (e / sc).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() {
            return Err(Error::Integration(format!("non-finite state at t = {t}")));
        }
        let fac = (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 10.0);
        if err <= 1.0 {
            let ydiff: [f64; N] = std::array::from_fn(|i| y1[i] - y[i]);
            let bspl: [f64; N] = std::array::from_fn(|i| h * k1[i] - ydiff[i]);
            let step = Step {
                t0: t,
                h,
                y0: y,
                y1,
                rcont: [
                    y,
                    ydiff,
                    bspl,
                    std::array::from_fn(|i| ydiff[i] - h * k7[i] - bspl[i]),
                    std::array::from_fn(|i| {
                        h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
                    }),
                ],
            };
            stats.accepted += 1;
            t += h;
            y = y1;
            k1 = k7;
            if !on_step(&step)? {
                return Ok(stats);
            }
            h = (h * fac).min(opts.h_max);
        } else {
            stats.rejected += 1;
            h *= fac.min(1.0);
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(Error::Integration(format!("step size underflow at t = {t}")));
            }
        }
    }
    Err(Error::Integration(format!("step budget {} exhausted", opts.max_steps)))
}
