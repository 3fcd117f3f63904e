//! The symmetric octagon fixed by `(a, α̃)`.
//!
//! Vertices are listed counterclockwise: `v₀ = a`, `v₁ = b e^{iα}`,
//! `v₂ = i a`, …, `v₇ = b e^{i(α + 3π/2)}`. Side `s_k` joins `v_k` to
//! `v_{k+1 mod 8}`; even sides lie on the "+" circles, odd sides on the "−"
//! circles, and `s_k`, `s_{k+4}` are the opposite pair glued by `g_k`.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

#[allow(unused_imports)]
use num_traits::Float;

use crate::disk::{acosh_1p, dist, Complex, DiskPoint, GeodesicArc, I};
use crate::error::{DomainBound, Error, Result};

/// Lower bound on `a` at a given `α̃`: `1/(√2 cos α̃)`.
pub fn lower_a(alpha_tilde: f64) -> f64 {
    1.0 / (SQRT_2 * alpha_tilde.cos())
}

/// `b = 1/(√2·a·cos α̃)`.
pub fn b_of(a: f64, alpha_tilde: f64) -> f64 {
    1.0 / (SQRT_2 * a * alpha_tilde.cos())
}

/// Validated point `(a, α̃)` of the parameter domain, `α̃ = α − π/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OctagonParams {
    a: f64,
    alpha_tilde: f64,
    margin: f64,
}

impl OctagonParams {
    pub fn new(a: f64, alpha_tilde: f64) -> Result<Self> {
        validate_params(a, alpha_tilde, 0.0)
    }

    pub fn with_margin(a: f64, alpha_tilde: f64, margin: f64) -> Result<Self> {
        validate_params(a, alpha_tilde, margin)
    }

    /// From the vertex angle `α` instead of `α̃`.
    pub fn from_alpha(a: f64, alpha: f64, margin: f64) -> Result<Self> {
        validate_params(a, alpha - FRAC_PI_4, margin)
    }

    /// The regular octagon, `a = b = 2^{−1/4}`, `α̃ = 0`.
    pub fn regular() -> Self {
        OctagonParams {
            a: 2f64.powf(-0.25),
            alpha_tilde: 0.0,
            margin: 0.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn alpha_tilde(&self) -> f64 {
        self.alpha_tilde
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_tilde + FRAC_PI_4
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn b(&self) -> f64 {
        b_of(self.a, self.alpha_tilde)
    }

    /// The ℤ₂ image `(b, −α̃)`; an involution of the (margin-free) domain.
    pub fn swapped(&self) -> Result<Self> {
        validate_params(self.b(), -self.alpha_tilde, 0.0)
    }
}

/// Checks `|α̃| < π/4 − margin` and `1/(√2 cos α̃) + margin < a < 1 − margin`.
pub fn validate_params(a: f64, alpha_tilde: f64, margin: f64) -> Result<OctagonParams> {
    if !(margin >= 0.0 && margin.is_finite()) {
        return Err(Error::Domain {
            what: "domain margin",
            value: margin,
        });
    }
    let alpha_bound = FRAC_PI_4 - margin;
    if !(alpha_tilde.abs() < alpha_bound) {
        return Err(Error::OutOfDomain {
            which: DomainBound::AlphaRange,
            bound: alpha_bound,
            value: alpha_tilde,
        });
    }
    let upper = 1.0 - margin;
    if !(a < upper) {
        return Err(Error::OutOfDomain {
            which: DomainBound::UpperA,
            bound: upper,
            value: a,
        });
    }
    let lower = lower_a(alpha_tilde) + margin;
    if !(a > lower) {
        return Err(Error::OutOfDomain {
            which: DomainBound::LowerA,
            bound: lower,
            value: a,
        });
    }
    Ok(OctagonParams {
        a,
        alpha_tilde,
        margin,
    })
}

/// All derived geometry of one octagon.
#[derive(Debug, Clone, PartialEq)]
pub struct OctagonGeometry {
    pub params: OctagonParams,
    pub b: f64,
    /// Interior angle at the `a`-vertices; the `b`-vertices have `π/2 − β`.
    pub beta: f64,
    pub t_plus: f64,
    pub t_minus: f64,
    /// Circle carrying side `s₀`; `s_{2j}` is this rotated by `jπ/2`.
    pub arc_plus: GeodesicArc,
    /// Circle carrying side `s₁`; `s_{2j+1}` is this rotated by `jπ/2`.
    pub arc_minus: GeodesicArc,
    pub vertices: [DiskPoint; 8],
    pub omega_plus: Complex,
    pub omega_minus: Complex,
    /// Hyperbolic midpoint of `s₀`.
    pub p_plus: DiskPoint,
    /// Hyperbolic midpoint of `s₁`.
    pub p_minus: DiskPoint,
    /// Auxiliary real parameter `2a/(1+a²)` of the matrix `M₄`.
    pub omega4: f64,
}

pub fn build_geometry(params: OctagonParams) -> OctagonGeometry {
    let a = params.a;
    let at = params.alpha_tilde;
    let alpha = params.alpha();
    let a2 = a * a;
    let b = params.b();
    let b2 = b * b;
    let tan_at = at.tan();
    let t_plus = a2 + tan_at;
    let t_minus = a2 - tan_at;
    let r_plus = (t_plus * t_plus + (1.0 - a2) * (1.0 - a2)).sqrt() / (2.0 * a);
    let r_minus = (t_minus * t_minus + (1.0 - a2) * (1.0 - a2)).sqrt() / (2.0 * a);
    let phi_plus = (t_plus / (1.0 + a2)).atan();
    // T₋ > 0 in-domain, so this stays in (0, π/2)
    let phi_minus = ((1.0 + a2) / t_minus).atan();

    let c2 = at.cos() * at.cos();
    let beta = ((1.0 - a2) * 2.0 * a2 * c2 / (2.0 * a2 * c2 - 1.0)).atan();

    let mut vertices = [DiskPoint::ORIGIN; 8];
    for k in 0..4 {
        let turn = k as f64 * FRAC_PI_2;
        vertices[2 * k] = DiskPoint::new_unchecked(Complex::from_polar(a, turn));
        vertices[2 * k + 1] = DiskPoint::new_unchecked(Complex::from_polar(b, alpha + turn));
    }

    let e_alpha = Complex::from_polar(1.0, alpha);
    let den = 1.0 - a2 * b2;
    let omega_plus = (e_alpha * (b * (1.0 - a2)) + a * (1.0 - b2)) / den;
    let omega_minus = (e_alpha * (b * (1.0 - a2)) + I * (a * (1.0 - b2))) / den;

    OctagonGeometry {
        params,
        b,
        beta,
        t_plus,
        t_minus,
        arc_plus: GeodesicArc::Circular {
            radius: r_plus,
            phi: phi_plus,
        },
        arc_minus: GeodesicArc::Circular {
            radius: r_minus,
            phi: phi_minus,
        },
        vertices,
        omega_plus,
        omega_minus,
        p_plus: midpoint_from_omega(omega_plus),
        p_minus: midpoint_from_omega(omega_minus),
        omega4: 2.0 * a / (1.0 + a2),
    }
}

/// `p = ω/(1 + √(1−|ω|²))`, the point whose half turn composed with the
/// half turn about 0 is `M(ω)·M(0)`.
pub fn midpoint_from_omega(omega: Complex) -> DiskPoint {
    DiskPoint::new_unchecked(omega / (1.0 + (1.0 - omega.norm_sqr()).sqrt()))
}

impl OctagonGeometry {
    pub fn regular() -> Self {
        build_geometry(OctagonParams::regular())
    }

    /// Supporting geodesic of side `s_k`, `k ∈ 0..8`.
    pub fn side_arc(&self, k: usize) -> GeodesicArc {
        let base = if k.is_multiple_of(2) {
            self.arc_plus
        } else {
            self.arc_minus
        };
        base.rotated((k / 2 % 4) as f64 * FRAC_PI_2)
    }

    /// Endpoints `(v_k, v_{k+1})` of side `s_k`.
    pub fn side_endpoints(&self, k: usize) -> (DiskPoint, DiskPoint) {
        (self.vertices[k % 8], self.vertices[(k + 1) % 8])
    }

    /// Labelled points `p₀…p₉`: `p₀..p₃ = (p₊, p₋, ip₊, ip₋)`,
    /// `p_{k+4} = −p_k`, and `p₈, p₉ = a, −a` on the main diagonal.
    pub fn labelled_point(&self, k: usize) -> DiskPoint {
        let base = |j: usize| -> Complex {
            match j {
                0 => self.p_plus.z(),
                1 => self.p_minus.z(),
                2 => I * self.p_plus.z(),
                _ => I * self.p_minus.z(),
            }
        };
        let z = match k {
            0..=3 => base(k),
            4..=7 => -base(k - 4),
            8 => Complex::new(self.params.a, 0.0),
            9 => Complex::new(-self.params.a, 0.0),
            _ => panic!("labelled point index {k} out of range 0..10"),
        };
        DiskPoint::new_unchecked(z)
    }

    /// Hyperbolic midpoint of side `s_k` (`p_k` for `k < 8`).
    pub fn side_midpoint(&self, k: usize) -> DiskPoint {
        self.labelled_point(k % 8)
    }

    /// Hyperbolic lengths of the eight sides from vertex distances.
    pub fn side_lengths(&self) -> [f64; 8] {
        core::array::from_fn(|k| {
            let (p, q) = self.side_endpoints(k);
            dist(p, q)
        })
    }

    /// Whether `z` lies strictly inside the octagon: outside all eight side
    /// circles (each geodesic half-plane containing the origin).
    pub fn contains(&self, z: Complex) -> bool {
        if z.norm_sqr() >= 1.0 {
            return false;
        }
        (0..8).all(|k| {
            let arc = self.side_arc(k);
            let (c, r) = (arc.center().unwrap_or_default(), arc.radius().unwrap_or(0.0));
            (z - c).norm() > r
        })
    }

    /// Euclidean distance of each vertex from the two circles it should lie
    /// on; returns the largest.
    pub fn vertex_on_arc_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..8 {
            let v = self.vertices[k].z();
            for side in [k, (k + 7) % 8] {
                let arc = self.side_arc(side);
                let c = arc.center().unwrap_or_default();
                let r = arc.radius().unwrap_or(0.0);
                worst = worst.max(((v - c).norm() - r).abs());
            }
        }
        worst
    }
}

/// Unit tangent at `at` of the circle centred at `center`, oriented toward
/// `toward` along the minor arc.
fn arc_tangent(center: Complex, at: Complex, toward: Complex) -> Complex {
    let t = I * (at - center);
    let t = t / t.norm();
    let chord = toward - at;
    if t.re * chord.re + t.im * chord.im >= 0.0 {
        t
    } else {
        -t
    }
}

fn angle_between(u: Complex, v: Complex) -> f64 {
    let cross = u.re * v.im - u.im * v.re;
    let dot = u.re * v.re + u.im * v.im;
    cross.abs().atan2(dot)
}

/// Interior angles at `v₀` (an `a`-vertex) and `v₁` (a `b`-vertex) from the
/// tangent directions of the two side circles meeting there. The disk model
/// is conformal, so these Euclidean angles are the hyperbolic ones.
pub fn interior_angles_numeric(geom: &OctagonGeometry) -> (f64, f64) {
    let angle_at = |k: usize| {
        let v = geom.vertices[k].z();
        let prev = geom.vertices[(k + 7) % 8].z();
        let next = geom.vertices[(k + 1) % 8].z();
        let c_in = geom.side_arc((k + 7) % 8).center().unwrap_or_default();
        let c_out = geom.side_arc(k).center().unwrap_or_default();
        angle_between(arc_tangent(c_in, v, prev), arc_tangent(c_out, v, next))
    };
    (angle_at(0), angle_at(1))
}

/// Hyperbolic area of a geodesic octagon with the given interior angles,
/// `6π − Σ angles`.
pub fn polygon_area(angles: &[f64; 8]) -> f64 {
    6.0 * PI - angles.iter().sum::<f64>()
}

/// Closed-form perimeter as a function of `(a, b)`; `None` outside
/// `0 < a, b < 1`.
pub fn perimeter_ab(a: f64, b: f64) -> Option<f64> {
    if !(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0) {
        return None;
    }
    let (ia, ib) = (1.0 - a * a, 1.0 - b * b);
    // arccosh(num/den) with num − den formed without cancellation
    let excess = (a * a + b * b - 2.0 * a * a * b * b + (ia * ia + ib * ib).sqrt()) / (ia * ib);
    Some(8.0 * acosh_1p(excess))
}

/// `P = 8 arccosh[(1 − a²b² + √((1−a²)² + (1−b²)²)) / ((1−a²)(1−b²))]`.
pub fn perimeter(params: &OctagonParams) -> f64 {
    perimeter_ab(params.a, params.b()).expect("validated params give 0 < a, b < 1")
}

/// Sum of the eight vertex-to-vertex distances.
pub fn perimeter_numeric(geom: &OctagonGeometry) -> f64 {
    geom.side_lengths().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn validate_examples() {
        let p = validate_params(0.8, PI / 12.0, 0.0).unwrap();
        assert_abs_diff_eq!(lower_a(PI / 12.0), 0.7320508075688773, epsilon = 1e-15);
        assert_eq!(p.a(), 0.8);
        validate_params(2f64.powf(-0.25), 0.0, 0.0).unwrap();
        match validate_params(0.70, 0.0, 0.0) {
            Err(Error::OutOfDomain {
                which: DomainBound::LowerA,
                bound,
                value,
            }) => {
                assert_abs_diff_eq!(bound, 1.0 / SQRT_2, epsilon = 1e-15);
                assert_eq!(value, 0.70);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_other_bounds() {
        assert!(matches!(
            validate_params(1.0, 0.0, 0.0),
            Err(Error::OutOfDomain {
                which: DomainBound::UpperA,
                ..
            })
        ));
        assert!(matches!(
            validate_params(0.9, FRAC_PI_4, 0.0),
            Err(Error::OutOfDomain {
                which: DomainBound::AlphaRange,
                ..
            })
        ));
        assert!(matches!(
            validate_params(0.99, 0.0, 0.02),
            Err(Error::OutOfDomain {
                which: DomainBound::UpperA,
                ..
            })
        ));
        assert!(validate_params(f64::NAN, 0.0, 0.0).is_err());
        assert!(validate_params(0.9, 0.0, -0.1).is_err());
    }

    #[test]
    fn from_alpha_matches_alpha_tilde() {
        let p = OctagonParams::from_alpha(0.8, PI / 3.0, 0.0).unwrap();
        assert_abs_diff_eq!(p.alpha_tilde(), PI / 12.0, epsilon = 1e-15);
    }

    #[test]
    fn regular_b_equals_a() {
        let g = OctagonGeometry::regular();
        assert_abs_diff_eq!(g.b, g.params.a(), epsilon = 1e-15);
        assert_abs_diff_eq!(g.beta, FRAC_PI_4, epsilon = 1e-14);
    }

    #[test]
    fn swapped_is_involution() {
        let p = OctagonParams::new(0.8, PI / 12.0).unwrap();
        let q = p.swapped().unwrap();
        assert_abs_diff_eq!(q.a(), 0.9150635094610966, epsilon = 1e-15);
        let back = q.swapped().unwrap();
        assert_abs_diff_eq!(back.a(), 0.8, epsilon = 1e-15);
        assert_eq!(back.alpha_tilde(), PI / 12.0);
    }

    #[test]
    fn contains_origin_not_vertices_outside() {
        let g = build_geometry(OctagonParams::new(0.8, PI / 12.0).unwrap());
        assert!(g.contains(Complex::new(0.0, 0.0)));
        assert!(!g.contains(Complex::new(0.99, 0.0)));
        assert!(!g.contains(Complex::new(1.5, 0.0)));
        // just inside / outside the vertex a along the diagonal
        assert!(g.contains(Complex::new(0.8 - 1e-6, 0.0)));
        assert!(!g.contains(Complex::new(0.8 + 1e-6, 0.0)));
    }

    #[test]
    #[should_panic]
    fn labelled_point_range() {
        OctagonGeometry::regular().labelled_point(10);
    }

    #[test]
    fn perimeter_ab_outside() {
        assert!(perimeter_ab(1.0, 0.5).is_none());
        assert!(perimeter_ab(0.5, 0.0).is_none());
    }
}
