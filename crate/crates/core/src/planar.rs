//! Geometry of the planar system w′ = v, v′ = −(F′(w) + v²/2)/w and of its
//! normalized form with first integral A(x) + (x + θ)y², A(x) = x²/2 − x³.
//!
//! In normalized coordinates the center sits at x = 0 and the saddle at
//! x = 1/3 for either sign of β; the line x = −θ is the image of w = 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{center_exists, Coefficients, THETA_HOMOCLINIC};

/// F(w) = αw + βw² − w³/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PotentialF {
    pub alpha: f64,
    pub beta: f64,
}

impl PotentialF {
    pub fn new(co: &Coefficients) -> Self {
        PotentialF {
            alpha: co.alpha,
            beta: co.beta,
        }
    }

    pub fn value(&self, w: f64) -> f64 {
        w * (self.alpha + w * (self.beta - 0.5 * w))
    }

    pub fn d1(&self, w: f64) -> f64 {
        self.alpha + 2.0 * self.beta * w - 1.5 * w * w
    }

    pub fn d2(&self, w: f64) -> f64 {
        2.0 * self.beta - 3.0 * w
    }
}

/// Saddle and center of the planar system, in that order. The equilibrium
/// (w₀, 0) is a center when F″(w₀)/w₀ > 0 and a saddle when it is negative.
pub fn critical_points(co: &Coefficients) -> Result<(f64, f64)> {
    if !center_exists(co) {
        return Err(Error::NoCenter);
    }
    let f = PotentialF::new(co);
    let s = (4.0 * co.beta * co.beta + 6.0 * co.alpha).sqrt();
    let w1 = (2.0 * co.beta + s) / 3.0;
    let w2 = (2.0 * co.beta - s) / 3.0;
    if f.d2(w1) / w1 > 0.0 {
        Ok((w2, w1))
    } else {
        Ok((w1, w2))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizedSystem {
    pub theta: f64,
    pub w_center: f64,
    /// s* = 2|β|√Δ, the length scale between x and w.
    pub scale: f64,
    /// sign β; the map is w = w_c + orientation·s*·x.
    pub orientation: f64,
    /// F(w_c), the center's energy in the original first integral.
    pub center_energy: f64,
}

impl NormalizedSystem {
    pub fn slope(&self) -> f64 {
        self.orientation * self.scale
    }

    pub fn to_w(&self, x: f64) -> f64 {
        self.w_center + self.slope() * x
    }

    pub fn to_x(&self, w: f64) -> f64 {
        (w - self.w_center) / self.slope()
    }

    /// Ĥ = ½wv² + F(w) on the orbit of normalized energy h.
    pub fn energy_to_hat(&self, h: f64) -> f64 {
        self.center_energy + 0.5 * self.slope().powi(3) * h
    }

    pub fn hat_to_energy(&self, hat: f64) -> f64 {
        2.0 * (hat - self.center_energy) / self.slope().powi(3)
    }

    pub fn geometry(&self) -> AnnulusGeometry {
        annulus_geometry(self.theta)
    }
}

/// Normalization x = (w − w_c)/(2β√Δ), y = v/(2β√Δ), Δ = 4 + 6α/β².
pub fn normalize(co: &Coefficients) -> Result<NormalizedSystem> {
    if !center_exists(co) {
        return Err(Error::NoCenter);
    }
    let delta = 4.0 + 6.0 * co.alpha / (co.beta * co.beta);
    let sd = delta.sqrt();
    let theta = (2.0 / sd - 1.0) / 6.0;
    let s = 2.0 * co.beta * sd;
    let w_center = theta * s;
    Ok(NormalizedSystem {
        theta,
        w_center,
        scale: s.abs(),
        orientation: co.beta.signum(),
        center_energy: PotentialF::new(co).value(w_center),
    })
}

pub fn normalized_potential(x: f64) -> f64 {
    x * x * (0.5 - x)
}

/// S(x, z) = 2x² + 2xz + 2z² − x − z, with A(x) − A(z) = (z − x)S(x, z)/2.
pub fn involution_s(x: f64, z: f64) -> f64 {
    2.0 * x * x + 2.0 * x * z + 2.0 * z * z - x - z
}

/// The involution pairing the two x-axis crossings of an orbit.
pub fn involution_sigma(x: f64) -> Result<f64> {
    if !(-1.0 / 6.0..=1.0 / 3.0).contains(&x) {
        return Err(Error::Domain(format!("sigma({x}) outside [-1/6, 1/3]")));
    }
    let r = ((6.0 * x + 1.0) * (1.0 - 2.0 * x)).max(0.0).sqrt();
    Ok(0.25 * (1.0 - 2.0 * x - r))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnnulusGeometry {
    pub x_left: f64,
    pub x_right: f64,
    pub h_top: f64,
}

pub fn annulus_geometry(theta: f64) -> AnnulusGeometry {
    if theta >= THETA_HOMOCLINIC {
        AnnulusGeometry {
            x_left: -1.0 / 6.0,
            x_right: 1.0 / 3.0,
            h_top: 1.0 / 54.0,
        }
    } else {
        let orbit = Orbit::build(theta, -theta, 0.0, 1.0 / 6.0 - theta);
        AnnulusGeometry {
            x_left: -theta,
            x_right: orbit.roots.x_plus,
            h_top: theta * theta * (0.5 + theta),
        }
    }
}

/// Real roots of h − A(x) = (x − x⁻)(x − x⁺)(x − x̂).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelRoots {
    pub x_minus: f64,
    pub x_plus: f64,
    pub x_hat: f64,
}

/// One periodic orbit, with the small distances that control the singular
/// behaviour of the period integrals kept separately to full relative precision.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Orbit {
    pub theta: f64,
    pub h: f64,
    pub roots: LevelRoots,
    /// x⁻ + θ: left turning point to the singular line.
    pub eps: f64,
    /// x⁻ + 1/6: left turning point to the homoclinic level's left end.
    pub g6: f64,
    /// x̂ − x⁺
    pub root_gap: f64,
    /// 1/3 − x⁺
    pub saddle_gap: f64,
}

impl Orbit {
    fn build(theta: f64, x_minus: f64, eps: f64, g6: f64) -> Orbit {
        let s = 0.5 - x_minus;
        let sq = (3.0 * s * g6).max(0.0).sqrt();
        let x_hat = 0.5 * (s + sq);
        let x_plus = x_minus * (x_minus - 0.5) / x_hat;
        Orbit {
            theta,
            h: normalized_potential(x_minus),
            roots: LevelRoots {
                x_minus,
                x_plus,
                x_hat,
            },
            eps,
            g6,
            root_gap: sq,
            saddle_gap: 0.5 * (g6 + sq),
        }
    }

    /// Orbit through the left turning point x⁻ ∈ (x_left, 0).
    pub fn from_left_root(x_minus: f64, theta: f64) -> Result<Orbit> {
        let geo = annulus_geometry(theta);
        if !(x_minus > geo.x_left && x_minus < 0.0) {
            return Err(Error::OutOfAnnulus {
                h: normalized_potential(x_minus),
                h_top: geo.h_top,
            });
        }
        Ok(Self::build(theta, x_minus, x_minus + theta, x_minus + 1.0 / 6.0))
    }

    /// Orbit whose left turning point lies `gap` inside the outer boundary.
    pub fn from_outer_gap(gap: f64, theta: f64) -> Result<Orbit> {
        let geo = annulus_geometry(theta);
        if !(gap > 0.0 && gap < -geo.x_left) {
            return Err(Error::Domain(format!("outer gap {gap} outside (0, {})", -geo.x_left)));
        }
        Ok(if theta < THETA_HOMOCLINIC {
            Self::build(theta, gap - theta, gap, (1.0 / 6.0 - theta) + gap)
        } else {
            Self::build(theta, gap - 1.0 / 6.0, (theta - 1.0 / 6.0) + gap, gap)
        })
    }

    pub fn from_energy(h: f64, theta: f64) -> Result<Orbit> {
        let geo = annulus_geometry(theta);
        if !(h > 0.0 && h < geo.h_top) {
            return Err(Error::OutOfAnnulus { h, h_top: geo.h_top });
        }
        // A is decreasing on (x_left, 0)
        let (mut lo, mut hi) = (geo.x_left, 0.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if normalized_potential(mid) > h {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x = if (normalized_potential(lo) - h).abs() < (normalized_potential(hi) - h).abs() {
            lo
        } else {
            hi
        };
        let x = x.clamp(geo.x_left.next_up(), -f64::MIN_POSITIVE);
        let mut o = Self::from_left_root(x, theta)?;
        o.h = h;
        Ok(o)
    }

    /// Orbit whose energy lies `deficit` below the outer boundary level.
    /// Works far beyond the resolution of h itself near the boundary.
    pub fn from_energy_deficit(deficit: f64, theta: f64) -> Result<Orbit> {
        let geo = annulus_geometry(theta);
        if !(deficit > 0.0 && deficit < geo.h_top) {
            return Err(Error::OutOfAnnulus {
                h: geo.h_top - deficit,
                h_top: geo.h_top,
            });
        }
        // the deficit grows monotonically with the outer gap
        let (mut lo, mut hi) = (0.0f64, -geo.x_left);
        for _ in 0..2000 {
            let mid = if lo > 0.0 && hi / lo > 4.0 {
                (lo * hi).sqrt()
            } else if lo == 0.0 && hi > 1e-300 {
                hi * 1e-3
            } else {
                0.5 * (lo + hi)
            };
            if mid <= lo || mid >= hi {
                break;
            }
            let o = Self::from_outer_gap(mid, theta)?;
            if o.energy_deficit() < deficit {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let gap = if lo > 0.0 { 0.5 * (lo + hi) } else { hi };
        Self::from_outer_gap(gap.min((-geo.x_left).next_down()), theta)
    }

    /// Distance of the orbit's energy below the outer boundary level,
    /// h_top − h, computed without cancellation.
    pub fn energy_deficit(&self) -> f64 {
        let x = self.roots.x_minus;
        if self.theta < THETA_HOMOCLINIC {
            0.5 * self.eps * involution_s(-self.theta, x)
        } else {
            0.5 * self.g6 * involution_s(-1.0 / 6.0, x)
        }
    }

    /// Distance of the left turning point from the outer boundary.
    pub fn outer_gap(&self) -> f64 {
        if self.theta < THETA_HOMOCLINIC {
            self.eps
        } else {
            self.g6
        }
    }

    /// Projection length x⁺ − x⁻.
    pub fn width(&self) -> f64 {
        self.roots.x_plus - self.roots.x_minus
    }
}

pub fn level_roots(h: f64, theta: f64) -> Result<LevelRoots> {
    Ok(Orbit::from_energy(h, theta)?.roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn co(alpha: f64, beta: f64) -> Coefficients {
        Coefficients { alpha, beta }
    }

    #[test]
    fn center_and_saddle_positions() {
        // roots (−2 ± 1)/3; F″(w)/w = (−2 − 3w)/w is 3 at w = −1/3 and −1 at w = −1
        let (saddle, center) = critical_points(&co(-0.5, -1.0)).unwrap();
        assert_relative_eq!(center, -1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(saddle, -1.0, epsilon = 1e-15);
        let (s, c) = critical_points(&co(-0.25, 1.0)).unwrap();
        let r = 2.5f64.sqrt();
        assert!(s > 0.0 && c > 0.0);
        let mut got = [s, c];
        got.sort_by(f64::total_cmp);
        assert_relative_eq!(got[0], (2.0 - r) / 3.0, epsilon = 1e-15);
        assert_relative_eq!(got[1], (2.0 + r) / 3.0, epsilon = 1e-15);
        assert_eq!(critical_points(&co(-2.0 / 3.0, 1.0)), Err(Error::NoCenter));
    }

    #[test]
    fn normalization_examples() {
        let n = normalize(&co(-0.5, -1.0)).unwrap();
        assert_relative_eq!(n.theta, 1.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(n.scale, 2.0, epsilon = 1e-15);
        assert_relative_eq!(n.w_center, -1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(n.orientation, -1.0);
        let n = normalize(&co(-0.25, -1.0)).unwrap();
        assert_relative_eq!(n.theta, 0.044152, epsilon = 1e-6);
        assert_relative_eq!(n.scale, 2.0 * 2.5f64.sqrt(), epsilon = 1e-14);
        for beta in [-3.0, -0.2, 0.7, 5.0] {
            let n = normalize(&co(-beta * beta / 2.0, beta)).unwrap();
            assert_relative_eq!(n.theta, 1.0 / 6.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn saddle_maps_to_one_third_for_both_orientations() {
        for (a, b) in [(-0.5, -1.0), (-0.25, 1.0), (-0.1, 2.0), (-1.0, -1.5)] {
            let c = co(a, b);
            let n = normalize(&c).unwrap();
            let (saddle, center) = critical_points(&c).unwrap();
            assert_relative_eq!(n.to_x(center), 0.0, epsilon = 1e-14);
            assert_relative_eq!(n.to_x(saddle), 1.0 / 3.0, epsilon = 1e-13);
            // the singular line w = 0 is x = −θ
            assert_relative_eq!(n.to_x(0.0), -n.theta, epsilon = 1e-13);
            // 2F″(w_c)/s = 1 with s the signed slope
            let f = PotentialF::new(&c);
            assert_relative_eq!(2.0 * f.d2(center) / n.slope(), 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn first_integral_maps_to_normalized_energy() {
        let c = co(-0.3, 0.8);
        let n = normalize(&c).unwrap();
        let f = PotentialF::new(&c);
        for (x, y) in [(0.05, 0.01), (-0.02, 0.03), (0.1, -0.02)] {
            let w = n.to_w(x);
            let v = n.slope() * y;
            let hat = 0.5 * w * v * v + f.value(w);
            let h = normalized_potential(x) + (x + n.theta) * y * y;
            assert_relative_eq!(n.hat_to_energy(hat), h, epsilon = 1e-13);
        }
    }

    #[test]
    fn annulus_examples() {
        let g = annulus_geometry(0.2);
        assert_eq!((g.x_left, g.x_right, g.h_top), (-1.0 / 6.0, 1.0 / 3.0, 1.0 / 54.0));
        let g = annulus_geometry(0.1);
        assert_eq!(g.x_left, -0.1);
        assert_relative_eq!(g.h_top, 0.006, epsilon = 1e-17);
        // bisection oracle for the right end
        let (mut lo, mut hi) = (0.0, 1.0 / 3.0);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if normalized_potential(m) < 0.006 {
                lo = m;
            } else {
                hi = m;
            }
        }
        assert!((g.x_right - lo).abs() < 1e-14);
        let below = annulus_geometry(1.0 / 6.0 - 1e-15);
        assert_relative_eq!(below.h_top, 1.0 / 54.0, epsilon = 1e-14);
        assert_relative_eq!(below.x_right, 1.0 / 3.0, epsilon = 1e-6);
        assert_relative_eq!(normalized_potential(-1.0 / 6.0), normalized_potential(1.0 / 3.0), epsilon = 1e-17);
    }

    #[test]
    fn level_root_examples() {
        let r = level_roots(1e-14, 0.2).unwrap();
        assert!(r.x_minus.abs() < 1e-6 && r.x_plus.abs() < 1e-6);
        assert_relative_eq!(r.x_hat, 0.5, epsilon = 1e-6);
        let o = Orbit::from_outer_gap(1e-300, 0.2).unwrap();
        assert_relative_eq!(o.roots.x_minus, -1.0 / 6.0, epsilon = 1e-16);
        assert_relative_eq!(o.roots.x_plus, 1.0 / 3.0, epsilon = 1e-16);
        assert_relative_eq!(o.roots.x_hat, 1.0 / 3.0, epsilon = 1e-16);
        let o = Orbit::from_outer_gap(1e-300, 0.1).unwrap();
        assert_eq!(o.roots.x_minus, -0.1);
        assert_relative_eq!(o.h, 0.006, epsilon = 1e-17);
        assert!(matches!(level_roots(0.0, 0.1), Err(Error::OutOfAnnulus { .. })));
        assert!(matches!(level_roots(annulus_geometry(0.1).h_top, 0.1), Err(Error::OutOfAnnulus { .. })));
    }

    #[test]
    fn deficit_matches_direct_difference() {
        let o = Orbit::from_outer_gap(1e-3, 0.1).unwrap();
        assert_relative_eq!(o.energy_deficit(), 0.006 - o.h, max_relative = 1e-10);
        let o = Orbit::from_outer_gap(1e-3, 0.3).unwrap();
        assert_relative_eq!(o.energy_deficit(), 1.0 / 54.0 - o.h, max_relative = 1e-10);
        let tiny = Orbit::from_outer_gap(1e-40, 0.1).unwrap();
        assert_relative_eq!(tiny.energy_deficit(), 0.5e-40 * involution_s(-0.1, -0.1), max_relative = 1e-12);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(involution_sigma(0.0).unwrap(), 0.0);
        assert_relative_eq!(involution_sigma(1.0 / 3.0).unwrap(), -1.0 / 6.0, epsilon = 1e-16);
        let z = involution_sigma(0.1).unwrap();
        assert!(involution_s(0.1, z).abs() < 1e-15);
        assert!(involution_sigma(0.5).is_err());
    }
}
