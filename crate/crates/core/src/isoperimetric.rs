//! Orbits of constant perimeter in the parameter domain and the
//! Weil–Petersson area they enclose.
//!
//! The perimeter enters through `E = 2(cosh(P/8) + 1)`. On the symmetry line
//! `α̃ = 0` one has `E = 4a²/((1−a²)(2a²−1))`, whose two roots `a₋ ≤ a₊`
//! bound each orbit; the orbit itself is parametrized by an angle `φ`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI, SQRT_2, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fenchel_nielsen::wp_coefficient_at;
use crate::fit::fit_quadratic_through_origin;
use crate::octagon::{b_of, perimeter, perimeter_ab, OctagonParams};
use crate::quadrature::{gauss_legendre, integrate};

/// `E = 2(cosh(P/8) + 1)`.
pub fn e_of_p(p: f64) -> f64 {
    2.0 * ((p / 8.0).cosh() + 1.0)
}

/// `P = 8 arccosh(E/2 − 1)`.
pub fn p_of_e(e: f64) -> Result<f64> {
    if !(e > 4.0) {
        return Err(Error::Domain {
            what: "E must exceed 4",
            value: e,
        });
    }
    Ok(8.0 * (e / 2.0 - 1.0).acosh())
}

/// `E_reg = 12 + 8√2`.
pub fn e_reg() -> f64 {
    12.0 + 8.0 * SQRT_2
}

/// `P_reg = 8 arccosh(5 + 4√2)`, the smallest perimeter in the family.
pub fn p_reg() -> f64 {
    8.0 * (5.0 + 4.0 * SQRT_2).acosh()
}

/// `a_reg = 2^{−1/4}`.
pub fn a_reg() -> f64 {
    2f64.powf(-0.25)
}

/// `E(a) = 4a²/((1−a²)(2a²−1))`, the value of `E` at `(a, 0)`.
pub fn e_of_a(a: f64) -> f64 {
    let a2 = a * a;
    4.0 * a2 / ((1.0 - a2) * (2.0 * a2 - 1.0))
}

/// `√(E² − 24E + 16)`, with tiny negative discriminants clamped to zero.
fn sqrt_discriminant(e: f64) -> Result<f64> {
    let disc = e * e - 24.0 * e + 16.0;
    if !(disc >= -1e-12) || e < 12.0 {
        return Err(Error::Domain {
            what: "E below E_reg",
            value: e,
        });
    }
    Ok(disc.max(0.0).sqrt())
}

/// `√(3E − 4 + c·√D)` without cancellation for `c < 0`.
fn a_numerator(e: f64, cos_phi: f64, sqrt_d: f64) -> f64 {
    let base = 3.0 * e - 4.0;
    if cos_phi >= 0.0 {
        (base + cos_phi * sqrt_d).sqrt()
    } else {
        // (3E−4)² − D = 8E²
        let sin2 = 1.0 - cos_phi * cos_phi;
        ((8.0 * e * e + sin2 * sqrt_d * sqrt_d) / (base - cos_phi * sqrt_d)).sqrt()
    }
}

/// `(a₋(E), a₊(E))`, the extreme values of `a` on the orbit, attained at `α̃ = 0`.
pub fn a_extremes(e: f64) -> Result<(f64, f64)> {
    let sd = sqrt_discriminant(e)?;
    let scale = 2.0 * e.sqrt();
    Ok((
        a_numerator(e, -1.0, sd) / scale,
        a_numerator(e, 1.0, sd) / scale,
    ))
}

/// A point `(a, α̃)` on the orbit of fixed `E` at angle `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSample {
    pub e: f64,
    pub phi: f64,
    pub a: f64,
    pub alpha_tilde: f64,
}

impl OrbitSample {
    pub fn params(&self) -> Result<OctagonParams> {
        OctagonParams::new(self.a, self.alpha_tilde)
    }

    /// Closed-form perimeter at this point.
    pub fn perimeter(&self) -> Result<f64> {
        Ok(perimeter(&self.params()?))
    }
}

/// `a(E, φ) = (2√E)⁻¹ √(3E − 4 + cos φ √D)` and
/// `α̃(E, φ) = arctan[(√2E)⁻¹ √((E−4)D) sin φ / √(E − 12 − cos φ √D)]`,
/// `D = E² − 24E + 16`.
pub fn orbit_point(e: f64, phi: f64) -> Result<OrbitSample> {
    let sd = sqrt_discriminant(e)?;
    let (s, c) = phi.sin_cos();
    let a = a_numerator(e, c, sd) / (2.0 * e.sqrt());
    // E − 12 − c√D; for c > 0 use (E−12)² − c²D = 128 + s²D
    let inner = if c > 0.0 {
        (128.0 + s * s * sd * sd) / (e - 12.0 + c * sd)
    } else {
        e - 12.0 - c * sd
    };
    assert!(inner > 0.0, "orbit radicand must be positive, got {inner}");
    let alpha_tilde = (((e - 4.0).sqrt() * sd * s) / (SQRT_2 * e * inner.sqrt())).atan();
    Ok(OrbitSample {
        e,
        phi,
        a,
        alpha_tilde,
    })
}

/// `n` samples at `φ_j = 2πj/n`.
pub fn orbit(e: f64, n: usize) -> Result<Vec<OrbitSample>> {
    (0..n)
        .map(|j| orbit_point(e, TAU * j as f64 / n as f64))
        .collect()
}

/// Large-`P` limit of the orbit: `a∞ = ½√(3 + cos φ)`,
/// `α̃∞ = arctan(sin φ / √(2(1 − cos φ)))`.
///
/// The second expression equals `arctan(cos(φ/2))` on `(0, 2π)`, which also
/// gives the limit `π/4` at `φ = 0`.
pub fn asymptotic_orbit(phi: f64) -> (f64, f64) {
    let phi = num_traits::Euclid::rem_euclid(&phi, &TAU);
    let a = 0.5 * (3.0 + phi.cos()).sqrt();
    let alpha_tilde = if phi == 0.0 {
        FRAC_PI_4
    } else {
        (phi / 2.0).cos().atan()
    };
    (a, alpha_tilde)
}

/// `f(E*, a) = √((E*−4)(1−a²)/(E*(1−a²)−4)) · √(1 − E(a)/E*)`, which equals
/// `tan α̃ / √(2a² − 1)` on the orbit.
pub fn reduced_f(e_star: f64, a: f64) -> f64 {
    let ia = 1.0 - a * a;
    let ratio = 1.0 - e_of_a(a) / e_star;
    ((e_star - 4.0) * ia / (e_star * ia - 4.0)).sqrt() * ratio.max(0.0).sqrt()
}

fn area_integrand(e_star: f64, a: f64) -> f64 {
    let f = reduced_f(e_star, a).min(1.0);
    16.0 * a / ((1.0 - a * a) * (2.0 * a * a - 1.0).sqrt()) * f.atanh()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaResult {
    pub p_star: f64,
    pub area: f64,
    pub quad_error_estimate: f64,
    pub evaluations: usize,
}

pub const AREA_TOLERANCE: f64 = 1e-8;
const AREA_MAX_INTERVALS: usize = 4000;

/// Weil–Petersson area of `{P < P*}`, as the single integral
/// `∫ 16a/((1−a²)√(2a²−1)) arctanh f(E*, a) da` over `[a₋, a₊]`.
pub fn wp_area(p_star: f64) -> Result<AreaResult> {
    wp_area_with_tolerance(p_star, AREA_TOLERANCE)
}

pub fn wp_area_with_tolerance(p_star: f64, abs_tol: f64) -> Result<AreaResult> {
    let p0 = p_reg();
    if !(p_star >= p0 - 1e-12 * p0) {
        return Err(Error::Domain {
            what: "P* below P_reg",
            value: p_star,
        });
    }
    let e_star = e_of_p(p_star);
    let (lo, hi) = a_extremes(e_star)?;
    if !(hi > lo) {
        return Ok(AreaResult {
            p_star,
            area: 0.0,
            quad_error_estimate: 0.0,
            evaluations: 0,
        });
    }
    // a = a₋ + (a₊ − a₋)(1 − cos θ)/2 removes the square-root endpoint behaviour
    let half = 0.5 * (hi - lo);
    let q = integrate(
        |theta: f64| {
            let a = lo + half * (1.0 - theta.cos());
            area_integrand(e_star, a) * half * theta.sin()
        },
        0.0,
        PI,
        abs_tol,
        AREA_MAX_INTERVALS,
    )?;
    Ok(AreaResult {
        p_star,
        area: q.value,
        quad_error_estimate: q.error_estimate,
        evaluations: q.evaluations,
    })
}

/// Root of a monotone function by bisection, `g(lo) < 0 < g(hi)`.
fn bisect<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn perimeter_or_inf(a: f64, alpha_tilde: f64) -> f64 {
    perimeter_ab(a, b_of(a, alpha_tilde)).unwrap_or(f64::INFINITY)
}

/// Independent 2-D evaluation of the area: the Weil–Petersson coefficient is
/// integrated directly over `{P(a, α̃) < P*}`.
///
/// The region boundary is located by bisection on the closed-form perimeter
/// (no use of the orbit formulas). The outer integral runs over
/// `a = a₋ + (a₊−a₋)(1−cos θ)/2` and the inner one over `[0, α̃_max(a)]`, both by
/// Gauss–Legendre rules with `n_outer` and `n_inner` nodes; the region is
/// symmetric in `α̃`.
pub fn wp_area_2d(p_star: f64, n_outer: usize, n_inner: usize) -> Result<f64> {
    let p0 = p_reg();
    if !(p_star >= p0 - 1e-12 * p0) {
        return Err(Error::Domain {
            what: "P* below P_reg",
            value: p_star,
        });
    }
    let g0 = |a: f64| perimeter_or_inf(a, 0.0) - p_star;
    let ar = a_reg();
    if !(g0(ar) < 0.0) {
        return Ok(0.0);
    }
    let lo = bisect(|a| -g0(a), 1.0 / SQRT_2, ar);
    let hi = bisect(g0, ar, 1.0);
    let half = 0.5 * (hi - lo);

    let (xo, wo) = gauss_legendre(n_outer);
    let (xi, wi) = gauss_legendre(n_inner);
    let mut total = 0.0;
    for (&x, &w) in xo.iter().zip(&wo) {
        let theta = 0.5 * PI * (x + 1.0);
        let a = lo + half * (1.0 - theta.cos());
        let edge = (1.0 / (SQRT_2 * a)).acos();
        let top = bisect(|t| perimeter_or_inf(a, t) - p_star, 0.0, edge);
        let inner: f64 = xi
            .iter()
            .zip(&wi)
            .map(|(&y, &v)| v * wp_coefficient_at(a, 0.5 * top * (y + 1.0)))
            .sum::<f64>()
            * 0.5
            * top;
        total += w * 2.0 * inner * half * theta.sin();
    }
    Ok(total * 0.5 * PI)
}

/// Least-squares fit `Area ≈ c₁ΔP² + c₂ΔP`, `ΔP = P − P_reg`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolaFit {
    pub c1: f64,
    pub c2: f64,
    pub residual_norm: f64,
    /// `max |fit − area| / area` over samples with positive area.
    pub max_rel_deviation: f64,
    /// `(P, area)` pairs used in the fit.
    pub samples: Vec<(f64, f64)>,
}

impl ParabolaFit {
    pub fn from_samples(samples: Vec<(f64, f64)>) -> Result<ParabolaFit> {
        let p0 = p_reg();
        let xs: Vec<f64> = samples.iter().map(|s| s.0 - p0).collect();
        let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
        let fit = fit_quadratic_through_origin(&xs, &ys)?;
        let max_rel_deviation = xs
            .iter()
            .zip(&ys)
            .filter(|(_, &y)| y > 0.0)
            .map(|(&x, &y)| ((fit.eval(x) - y) / y).abs())
            .fold(0.0, f64::max);
        Ok(ParabolaFit {
            c1: fit.c1,
            c2: fit.c2,
            residual_norm: fit.residual_norm,
            max_rel_deviation,
            samples,
        })
    }

    pub fn eval(&self, p: f64) -> f64 {
        let x = p - p_reg();
        self.c1 * x * x + self.c2 * x
    }
}

/// `P_min, P_min + step, …` up to `P_max`.
pub fn sample_perimeters(p_min: f64, p_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Domain {
            what: "area step",
            value: step,
        });
    }
    if !(p_max > p_min) {
        return Err(Error::Domain {
            what: "P_max must exceed P_min",
            value: p_max,
        });
    }
    let p0 = p_reg();
    if !(p_min >= p0 - 1e-12 * p0) {
        return Err(Error::Domain {
            what: "P_min below P_reg",
            value: p_min,
        });
    }
    let n = ((p_max - p_min) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| p_min + k as f64 * step).collect())
}

/// Samples `wp_area` on `[P_min, P_max]` and fits the parabola.
pub fn parabola_fit(p_min: f64, p_max: f64, step: f64) -> Result<ParabolaFit> {
    let samples = sample_perimeters(p_min, p_max, step)?
        .into_iter()
        .map(|p| wp_area(p).map(|r| (p, r.area)))
        .collect::<Result<Vec<_>>>()?;
    ParabolaFit::from_samples(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn regular_constants() {
        assert_relative_eq!(e_of_p(p_reg()), e_reg(), max_relative = 1e-14);
        let (lo, hi) = a_extremes(e_reg()).unwrap();
        assert_relative_eq!(lo, a_reg(), max_relative = 1e-7);
        assert_relative_eq!(hi, a_reg(), max_relative = 1e-7);
    }

    #[test]
    fn below_reg_is_error() {
        assert!(a_extremes(20.0).is_err());
        assert!(orbit_point(20.0, 1.0).is_err());
        assert!(wp_area(24.0).is_err());
        assert!(p_of_e(4.0).is_err());
    }

    #[test]
    fn orbit_endpoints() {
        let e = e_of_p(30.0);
        let (lo, hi) = a_extremes(e).unwrap();
        let p0 = orbit_point(e, 0.0).unwrap();
        let pi = orbit_point(e, PI).unwrap();
        assert_eq!(p0.alpha_tilde, 0.0);
        assert_relative_eq!(p0.a, hi, max_relative = 1e-15);
        assert_relative_eq!(pi.a, lo, max_relative = 1e-15);
        assert!(pi.alpha_tilde.abs() < 1e-15);
    }

    #[test]
    fn asymptote_matches_literal_form() {
        for j in 1..64 {
            let phi = TAU * j as f64 / 64.0;
            let literal = (phi.sin() / (2.0 * (1.0 - phi.cos())).sqrt()).atan();
            assert!((asymptotic_orbit(phi).1 - literal).abs() < 1e-14);
        }
        assert_eq!(asymptotic_orbit(0.0).1, FRAC_PI_4);
    }

    #[test]
    fn area_at_reg_is_zero() {
        assert!(wp_area(p_reg()).unwrap().area.abs() < 1e-10);
        assert_eq!(wp_area_2d(p_reg(), 8, 8).unwrap(), 0.0);
    }

    #[test]
    fn sample_grid() {
        let ps = sample_perimeters(25.0, 41.0, 0.5).unwrap();
        assert_eq!(ps.len(), 33);
        assert_eq!(*ps.last().unwrap(), 41.0);
        assert!(sample_perimeters(25.0, 41.0, 0.0).is_err());
    }
}
