//! Poincaré-disk primitives: points, distance, geodesic arcs and the
//! SU(1,1) Möbius group acting on the disk.

use core::ops::Mul;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Largest `| |u|² − |v|² − 1 |` that [`Mobius::new`] will renormalize away.
pub const SU11_RENORMALIZE_LIMIT: f64 = 1e-9;

/// Half-width of the `|Tr| = 2` band classified as parabolic.
pub const PARABOLIC_BAND: f64 = 1e-9;

pub(crate) const I: Complex = Complex { re: 0.0, im: 1.0 };

/// `arccosh(1 + x)` without the cancellation of forming `1 + x` first.
pub(crate) fn acosh_1p(x: f64) -> f64 {
    (x + (x * (x + 2.0)).sqrt()).ln_1p()
}

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex { re: 0.0, im: 0.0 });

    pub fn new(z: Complex) -> Result<Self> {
        let modulus = z.norm();
        if modulus.is_finite() && modulus < 1.0 {
            Ok(DiskPoint(z))
        } else {
            Err(Error::NotInDisk { modulus })
        }
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex::new(re, im))
    }

    /// Caller guarantees `|z| < 1`.
    pub(crate) fn new_unchecked(z: Complex) -> Self {
        debug_assert!(z.norm() < 1.0, "point {z} outside the disk");
        DiskPoint(z)
    }

    pub fn z(self) -> Complex {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn dist(self, other: DiskPoint) -> f64 {
        dist(self, other)
    }
}

/// Hyperbolic distance in the curvature −1 disk metric,
/// `arccosh(1 + 2|z−w|² / ((1−|z|²)(1−|w|²)))`.
pub fn dist(z: DiskPoint, w: DiskPoint) -> f64 {
    let num = 2.0 * (z.0 - w.0).norm_sqr();
    let den = (1.0 - z.0.norm_sqr()) * (1.0 - w.0.norm_sqr());
    acosh_1p(num / den)
}

/// A complete geodesic of the disk.
///
/// `Circular` is the arc of the circle with radius `radius` centred at
/// `√(1+R²)·e^{iφ}`; `Diameter` is the straight line through the origin in
/// direction `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesicArc {
    Circular { radius: f64, phi: f64 },
    Diameter { phi: f64 },
}

impl GeodesicArc {
    pub fn circular(radius: f64, phi: f64) -> Result<Self> {
        if radius.is_finite() && radius > 0.0 && phi.is_finite() {
            Ok(GeodesicArc::Circular { radius, phi })
        } else {
            Err(Error::InvalidArc { radius })
        }
    }

    pub fn diameter(phi: f64) -> Self {
        GeodesicArc::Diameter { phi }
    }

    /// Euclidean centre of the supporting circle; `None` for diameters.
    pub fn center(&self) -> Option<Complex> {
        match *self {
            GeodesicArc::Circular { radius, phi } => {
                Some(Complex::from_polar((1.0 + radius * radius).sqrt(), phi))
            }
            GeodesicArc::Diameter { .. } => None,
        }
    }

    pub fn radius(&self) -> Option<f64> {
        match *self {
            GeodesicArc::Circular { radius, .. } => Some(radius),
            GeodesicArc::Diameter { .. } => None,
        }
    }

    pub fn phi(&self) -> f64 {
        match *self {
            GeodesicArc::Circular { phi, .. } | GeodesicArc::Diameter { phi } => phi,
        }
    }

    /// The same geodesic rotated about the origin by `angle`.
    pub fn rotated(&self, angle: f64) -> Self {
        match *self {
            GeodesicArc::Circular { radius, phi } => GeodesicArc::Circular {
                radius,
                phi: phi + angle,
            },
            GeodesicArc::Diameter { phi } => GeodesicArc::Diameter { phi: phi + angle },
        }
    }

    /// Unit-speed parametrization; `s = 0` is the point closest to the origin.
    pub fn point(&self, s: f64) -> DiskPoint {
        geodesic_point(*self, s)
    }
}

/// Point at hyperbolic arc length `s` along `arc`.
pub fn geodesic_point(arc: GeodesicArc, s: f64) -> DiskPoint {
    match arc {
        GeodesicArc::Circular { radius, phi } => {
            let (sh, ch) = (s.sinh(), s.cosh());
            // for |s| beyond ~710 cosh overflows; the limit is a boundary point
            let z = if ch.is_finite() {
                Complex::new(ch, radius * sh)
                    / ((1.0 + radius * radius).sqrt() * ch + radius)
            } else {
                Complex::new(1.0, radius * s.signum()) / (1.0 + radius * radius).sqrt()
            };
            DiskPoint(z * Complex::from_polar(1.0, phi))
        }
        GeodesicArc::Diameter { phi } => DiskPoint(Complex::from_polar((s / 2.0).tanh(), phi)),
    }
}

/// Elliptic / parabolic / hyperbolic by `|Tr|` against 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// An element of SU(1,1), `[[u, v], [v̄, ū]]` with `|u|² − |v|² = 1`,
/// acting by `z ↦ (uz + v)/(v̄z + ū)`.
///
/// `±(u, v)` act identically; use [`Mobius::projective_distance`] or
/// [`Mobius::canonical`] to compare group elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    u: Complex,
    v: Complex,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius {
        u: Complex { re: 1.0, im: 0.0 },
        v: Complex { re: 0.0, im: 0.0 },
    };

    /// Validates and renormalizes `|u|² − |v|² = 1`.
    pub fn new(u: Complex, v: Complex) -> Result<Self> {
        let det = u.norm_sqr() - v.norm_sqr();
        let defect = det - 1.0;
        if !defect.is_finite() || defect.abs() > SU11_RENORMALIZE_LIMIT {
            return Err(Error::NotSu11 { defect });
        }
        let s = det.sqrt().recip();
        Ok(Mobius { u: u * s, v: v * s })
    }

    /// Products of valid elements; skips validation.
    pub(crate) fn from_parts(u: Complex, v: Complex) -> Self {
        Mobius { u, v }
    }

    pub fn u(&self) -> Complex {
        self.u
    }

    pub fn v(&self) -> Complex {
        self.v
    }

    /// `|u|² − |v|² − 1`.
    pub fn defect(&self) -> f64 {
        self.u.norm_sqr() - self.v.norm_sqr() - 1.0
    }

    pub fn apply(&self, z: DiskPoint) -> DiskPoint {
        DiskPoint::new_unchecked(self.apply_complex(z.0))
    }

    /// Action on an arbitrary complex number (boundary points included).
    pub fn apply_complex(&self, z: Complex) -> Complex {
        (self.u * z + self.v) / (self.v.conj() * z + self.u.conj())
    }

    /// `self ∘ other`, i.e. the matrix product `self · other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            u: self.u * other.u + self.v * other.v.conj(),
            v: self.u * other.v + self.v * other.u.conj(),
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            u: self.u.conj(),
            v: -self.v,
        }
    }

    /// Conjugate `self` by `by`: `by · self · by⁻¹`.
    pub fn conjugate_by(&self, by: &Mobius) -> Mobius {
        by.compose(self).compose(&by.inverse())
    }

    pub fn negated(&self) -> Mobius {
        Mobius {
            u: -self.u,
            v: -self.v,
        }
    }

    /// `Tr = u + ū = 2 Re u`.
    pub fn trace(&self) -> f64 {
        2.0 * self.u.re
    }

    pub fn classify(&self) -> Classification {
        let t = self.trace().abs();
        if t < 2.0 - PARABOLIC_BAND {
            Classification::Elliptic
        } else if t > 2.0 + PARABOLIC_BAND {
            Classification::Hyperbolic
        } else {
            Classification::Parabolic
        }
    }

    /// Entries as `(Re u, Im u, Re v, Im v)`.
    pub fn components(&self) -> [f64; 4] {
        [self.u.re, self.u.im, self.v.re, self.v.im]
    }

    /// The representative of `±(u, v)` whose first non-zero component of
    /// `(Re u, Im u, Re v, Im v)` is positive.
    pub fn canonical(&self) -> Mobius {
        let scale = self.u.norm().max(1.0);
        for c in self.components() {
            if c.abs() > 1e-12 * scale {
                return if c > 0.0 { *self } else { self.negated() };
            }
        }
        *self
    }

    /// Max-entry distance between `self` and `±other`, minimized over the sign.
    pub fn projective_distance(&self, other: &Mobius) -> f64 {
        let plus = max_abs_diff(self, other);
        let minus = max_abs_diff(self, &other.negated());
        plus.min(minus)
    }

    /// Max-entry distance to `+id` and to `−id`, as `(distance, sign)` for
    /// whichever is closer.
    pub fn identity_defect(&self) -> (f64, i8) {
        let plus = max_abs_diff(self, &Mobius::IDENTITY);
        let minus = max_abs_diff(self, &Mobius::IDENTITY.negated());
        if plus <= minus {
            (plus, 1)
        } else {
            (minus, -1)
        }
    }
}

fn max_abs_diff(x: &Mobius, y: &Mobius) -> f64 {
    let (a, b) = (x.components(), y.components());
    a.iter()
        .zip(b.iter())
        .fold(0.0, |m, (p, q)| m.max((p - q).abs()))
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, rhs: Mobius) -> Mobius {
        self.compose(&rhs)
    }
}

impl Mul<&Mobius> for &Mobius {
    type Output = Mobius;

    fn mul(self, rhs: &Mobius) -> Mobius {
        self.compose(rhs)
    }
}

/// `H(p) = −1/(1−|p|²)·[[1+|p|², 2p], [2p̄, 1+|p|²]]`: the half turn about
/// the origin followed by the half turn about `p`, so `H(p)[−p] = p`.
pub fn half_turn(p: DiskPoint) -> Mobius {
    let r2 = p.0.norm_sqr();
    let k = -1.0 / (1.0 - r2);
    Mobius {
        u: Complex::new(k * (1.0 + r2), 0.0),
        v: p.0 * (2.0 * k),
    }
}

/// `M(ω) = i/√(1−|ω|²)·[[1, −ω], [ω̄, −1]]`, the half turn about the
/// point with "ω-coordinate" `ω`. Trace zero, `M(ω)² = −id`.
pub fn m_half_turn(omega: Complex) -> Result<Mobius> {
    let r2 = omega.norm_sqr();
    if !(r2 < 1.0) {
        return Err(Error::NotInDisk {
            modulus: r2.sqrt(),
        });
    }
    let k = I / (1.0 - r2).sqrt();
    Ok(Mobius {
        u: k,
        v: -k * omega,
    })
}

/// `R_φ = diag(e^{iφ/2}, e^{−iφ/2})`, acting as `z ↦ e^{iφ} z`.
pub fn rotation(phi: f64) -> Mobius {
    Mobius {
        u: Complex::from_polar(1.0, phi / 2.0),
        v: Complex::new(0.0, 0.0),
    }
}
