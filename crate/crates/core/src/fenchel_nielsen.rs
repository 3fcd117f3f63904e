//! Fenchel–Nielsen data for the two pants decompositions of the surface and
//! the Weil–Petersson form they induce on the parameter domain.
//!
//! The standard decomposition cuts along `γ₁, γ₂` (through the side
//! midpoints `p₊, p₋` and their rotations) and `γ₃` (the main diagonal). The
//! primed decomposition is its image under `(a, α̃) ↦ (b, −α̃)`.
//!
//! Twists `τ₁ = τ₂` carry the sign of `α̃`; with that convention the primed
//! twists automatically have the opposite sign and both decompositions give
//! the same two-form `½ Σ dℓ_k ∧ dτ_k`.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::disk::{acosh_1p, Complex, DiskPoint, I};
use crate::error::{Error, Result};
use crate::group::m_matrices;
use crate::octagon::{build_geometry, OctagonGeometry, OctagonParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decomposition {
    Standard,
    Primed,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decomposition::Standard => "standard",
            Decomposition::Primed => "primed",
        })
    }
}

/// The trace parameters `c₁..c₃`, `d₁..d₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceParams {
    pub c: [f64; 3],
    pub d: [f64; 3],
}

impl TraceParams {
    /// `c₁² + c₂² + c₃² + 2c₁c₂c₃ − 1`.
    pub fn p_aux(&self) -> f64 {
        let [c1, c2, c3] = self.c;
        c1 * c1 + c2 * c2 + c3 * c3 + 2.0 * c1 * c2 * c3 - 1.0
    }
}

/// `c_k` and `d_k` from traces of products of the `M` matrices:
/// `c₁ = −½Tr(M₀M₁)`, `c₂ = −½Tr(M₂M₃)`, `c₃ = −½Tr(M₄M₅)`,
/// `d₁ = ½Tr²(M₀M₄M₅) − 1`, `d₂ = ½Tr²(M₂M₁M₀) − 1`, `d₃ = ½Tr²(M₅M₃M₂) − 1`.
pub fn trace_params(geom: &OctagonGeometry) -> TraceParams {
    let m = m_matrices(geom);
    let c = [
        -0.5 * (m[0] * m[1]).trace(),
        -0.5 * (m[2] * m[3]).trace(),
        -0.5 * (m[4] * m[5]).trace(),
    ];
    let half_sq = |t: f64| 0.5 * t * t - 1.0;
    let d = [
        half_sq((m[0] * m[4] * m[5]).trace()),
        half_sq((m[2] * m[1] * m[0]).trace()),
        half_sq((m[5] * m[3] * m[2]).trace()),
    ];
    TraceParams { c, d }
}

/// Closed forms: `c₁ = c₂ = a²/(1−a²)`, `c₃ = (1+a²)/(1−a²)`,
/// `d₁,₂ + 1 = 4/((1−a²)(1−b²))`, `d₃ + 1 = 2/(1−a²)²`.
pub fn trace_params_closed(params: &OctagonParams) -> TraceParams {
    let a2 = params.a() * params.a();
    let b2 = params.b() * params.b();
    let c12 = a2 / (1.0 - a2);
    let d12 = 4.0 / ((1.0 - a2) * (1.0 - b2)) - 1.0;
    TraceParams {
        c: [c12, c12, (1.0 + a2) / (1.0 - a2)],
        d: [d12, d12, 2.0 / ((1.0 - a2) * (1.0 - a2)) - 1.0],
    }
}

/// `ℓ₁ = ℓ₂ = 2 arccosh(a²/(1−a²))`, `ℓ₃ = 2 ln((1+a)/(1−a))`.
pub fn fn_lengths(params: &OctagonParams) -> Result<[f64; 3]> {
    let a = params.a();
    let a2 = a * a;
    let arg = a2 / (1.0 - a2);
    if !(arg >= 1.0) {
        return Err(Error::Domain {
            what: "length arccosh argument",
            value: arg,
        });
    }
    // arccosh(a²/(1−a²)) with the excess (2a²−1)/(1−a²) formed directly
    let l12 = 2.0 * acosh_1p((2.0 * a2 - 1.0) / (1.0 - a2));
    let l3 = 2.0 * ((1.0 + a) / (1.0 - a)).ln();
    Ok([l12, l12, l3])
}

/// The twist argument as printed, `(2a² − 1)/(a²(1 − b²)) − 1 = cosh τ₁`.
///
/// Values in `[1 − 1e−12, 1)` are clamped to 1; smaller values are an error.
pub fn twist_arccosh_argument(params: &OctagonParams) -> Result<f64> {
    let a2 = params.a() * params.a();
    let b2 = params.b() * params.b();
    let arg = (2.0 * a2 - 1.0) / (a2 * (1.0 - b2)) - 1.0;
    if arg >= 1.0 {
        Ok(arg)
    } else if arg >= 1.0 - 1e-12 {
        Ok(1.0)
    } else {
        Err(Error::Domain {
            what: "twist arccosh argument",
            value: arg,
        })
    }
}

/// `τ₁ = τ₂ = sgn(α̃)·arccosh[(2a²−1)/(a²(1−b²)) − 1]`, `τ₃ = ln((1+a)/(1−a))`.
///
/// The arccosh argument equals `1 + 2 sin²α̃/(2a²cos²α̃ − 1)`; that form is
/// used so the twist stays accurate near `α̃ = 0`.
pub fn fn_twists(params: &OctagonParams) -> Result<[f64; 3]> {
    let a = params.a();
    let at = params.alpha_tilde();
    let (s, c) = at.sin_cos();
    let den = 2.0 * a * a * c * c - 1.0;
    if !(den > 0.0) {
        return Err(Error::Domain {
            what: "twist denominator 2a²cos²α̃ − 1",
            value: den,
        });
    }
    let magnitude = acosh_1p(2.0 * s * s / den);
    let t12 = if at < 0.0 { -magnitude } else { magnitude };
    let t3 = ((1.0 + a) / (1.0 - a)).ln();
    Ok([t12, t12, t3])
}

/// Lengths as distances between side midpoints: `ℓ₁,₂ = 2 dist(p₊, p₋)`,
/// `ℓ₃ = 2 dist(0, a)`, and for the primed decomposition
/// `ℓ′₁,₂ = 2 dist(i p₊, p₋)`, `ℓ′₃ = 2 dist(0, b)`.
pub fn length_oracles(geom: &OctagonGeometry) -> ([f64; 3], [f64; 3]) {
    let (pp, pm) = (geom.p_plus, geom.p_minus);
    let on_axis = |x: f64| 2.0 * DiskPoint::ORIGIN.dist(DiskPoint::new_unchecked(Complex::new(x, 0.0)));
    let l12 = 2.0 * pp.dist(pm);
    let ip = DiskPoint::new_unchecked(pp.z() * I);
    let l12p = 2.0 * ip.dist(pm);
    (
        [l12, l12, on_axis(geom.params.a())],
        [l12p, l12p, on_axis(geom.b)],
    )
}

/// Lengths, twists and trace parameters of one pants decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsData {
    pub decomposition: Decomposition,
    pub lengths: [f64; 3],
    pub twists: [f64; 3],
    pub c: [f64; 3],
    pub d: [f64; 3],
    pub p_aux: f64,
}

impl PantsData {
    /// Worst relative residual of `d_k = p/(c_k²−1)·(1 + cosh τ_k) − 1`.
    pub fn twist_trace_residual(&self) -> f64 {
        (0..3).fold(0.0f64, |worst, k| {
            let c2 = self.c[k] * self.c[k];
            let rhs = self.p_aux / (c2 - 1.0) * (1.0 + self.twists[k].cosh()) - 1.0;
            worst.max(rel_diff(self.d[k], rhs))
        })
    }

    /// Worst relative residual of `c_k = cosh(ℓ_k/2)`.
    pub fn length_trace_residual(&self) -> f64 {
        (0..3).fold(0.0f64, |worst, k| {
            worst.max(rel_diff(self.c[k], (self.lengths[k] / 2.0).cosh()))
        })
    }
}

pub(crate) fn rel_diff(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

fn pants_data_with(params: &OctagonParams, decomposition: Decomposition) -> Result<PantsData> {
    let trace = trace_params(&build_geometry(*params));
    Ok(PantsData {
        decomposition,
        lengths: fn_lengths(params)?,
        twists: fn_twists(params)?,
        c: trace.c,
        d: trace.d,
        p_aux: trace.p_aux(),
    })
}

/// Standard decomposition, trace parameters from the `M` matrices.
pub fn pants_data(params: &OctagonParams) -> Result<PantsData> {
    pants_data_with(params, Decomposition::Standard)
}

/// The primed decomposition: every function evaluated at `(b, −α̃)`.
pub fn primed_fn(params: &OctagonParams) -> Result<PantsData> {
    pants_data_with(&params.swapped()?, Decomposition::Primed)
}

/// Relations among `L = cosh(ℓ/2)` and `T = cosh(τ/2)`; each entry is a
/// relative residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LtReport {
    /// `L₃ = 2L₁ + 1`
    pub l3: f64,
    /// `τ₃ = ℓ₃/2`
    pub tau3: f64,
    /// `L₁' = T₁²·2L₁/(L₁−1) − 1`
    pub primed_l1: f64,
    /// `T₁' = √((L₁²T₁² + L₁T₁² − L₁² + 1)/(2L₁T₁² − L₁ + 1))`
    pub primed_t1: f64,
    /// `T₁ = √((2a²−1)/(2a²(1−b²)))` and the primed analogue
    pub t1_closed: f64,
    /// Same two checks as `l3`, `tau3` for the primed decomposition.
    pub primed_l3: f64,
    pub primed_tau3: f64,
}

impl LtReport {
    pub fn max(&self) -> f64 {
        [
            self.l3,
            self.tau3,
            self.primed_l1,
            self.primed_t1,
            self.t1_closed,
            self.primed_l3,
            self.primed_tau3,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn lt_relations_check(params: &OctagonParams) -> Result<LtReport> {
    let std = pants_data(params)?;
    let pr = primed_fn(params)?;
    let (a, b) = (params.a(), params.b());
    let (a2, b2) = (a * a, b * b);
    let cosh_half = |x: f64| (x / 2.0).cosh();

    let l1 = cosh_half(std.lengths[0]);
    let t1 = cosh_half(std.twists[0]);
    let l1p = cosh_half(pr.lengths[0]);
    let t1p = cosh_half(pr.twists[0]);

    let l1p_rel = t1 * t1 * 2.0 * l1 / (l1 - 1.0) - 1.0;
    let t1p_rel = ((l1 * l1 * t1 * t1 + l1 * t1 * t1 - l1 * l1 + 1.0)
        / (2.0 * l1 * t1 * t1 - l1 + 1.0))
        .sqrt();
    let t1_closed = ((2.0 * a2 - 1.0) / (2.0 * a2 * (1.0 - b2))).sqrt();
    let t1p_closed = ((2.0 * b2 - 1.0) / (2.0 * b2 * (1.0 - a2))).sqrt();

    Ok(LtReport {
        l3: rel_diff(cosh_half(std.lengths[2]), 2.0 * l1 + 1.0),
        tau3: rel_diff(std.twists[2], std.lengths[2] / 2.0),
        primed_l1: rel_diff(l1p, l1p_rel),
        primed_t1: rel_diff(t1p, t1p_rel),
        t1_closed: rel_diff(t1, t1_closed).max(rel_diff(t1p, t1p_closed)),
        primed_l3: rel_diff(cosh_half(pr.lengths[2]), 2.0 * l1p + 1.0),
        primed_tau3: rel_diff(pr.twists[2], pr.lengths[2] / 2.0),
    })
}

/// Coefficient of `da ∧ dα̃` in the Weil–Petersson form.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WpFormValue(pub f64);

/// `ω_WP = 8a/((1−a²)(2a²cos²α̃ − 1)) da ∧ dα̃`.
pub fn wp_coefficient(params: &OctagonParams) -> WpFormValue {
    WpFormValue(wp_coefficient_at(params.a(), params.alpha_tilde()))
}

pub(crate) fn wp_coefficient_at(a: f64, alpha_tilde: f64) -> f64 {
    let c = alpha_tilde.cos();
    8.0 * a / ((1.0 - a * a) * (2.0 * a * a * c * c - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOptions {
    /// Central-difference step before scaling by `max(1, |a|, |α̃|)`.
    pub h: f64,
    /// Combine steps `h` and `h/2` by Richardson extrapolation.
    pub richardson: bool,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions {
            h: 1e-5,
            richardson: false,
        }
    }
}

/// Finite-difference evaluation of `½ Σ dℓ_k ∧ dτ_k` for both decompositions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpFdReport {
    pub closed_form: f64,
    /// `½ Σ_k (∂_aℓ_k ∂_α̃τ_k − ∂_α̃ℓ_k ∂_aτ_k)`, standard decomposition.
    pub value: f64,
    /// Per-`k` coefficients of `dℓ_k ∧ dτ_k`, standard decomposition.
    pub summands: [f64; 3],
    pub primed_value: f64,
    pub primed_summands: [f64; 3],
    /// Primed value with the primed twists' sign flipped; should be `−ω`.
    pub primed_value_flipped: f64,
    /// Step actually used.
    pub h: f64,
}

impl WpFdReport {
    pub fn relative_error(&self) -> f64 {
        ((self.value - self.closed_form) / self.closed_form).abs()
    }

    pub fn primed_relative_error(&self) -> f64 {
        ((self.primed_value - self.value) / self.value).abs()
    }

    /// `dℓ₃ ∧ dτ₃` in both decompositions, worst absolute value.
    pub fn k3_summand(&self) -> f64 {
        self.summands[2].abs().max(self.primed_summands[2].abs())
    }

    /// Relative mismatch of `dℓ₁ ∧ dτ₁` between the two decompositions.
    pub fn per_k_relative_error(&self) -> f64 {
        ((self.primed_summands[0] - self.summands[0]) / self.summands[0]).abs()
    }
}

type LengthTwist = ([f64; 3], [f64; 3]);

fn eval_lt(a: f64, at: f64, h: f64, decomposition: Decomposition) -> Result<LengthTwist> {
    let p = OctagonParams::new(a, at).map_err(|_| Error::StepTooLarge { h })?;
    let p = match decomposition {
        Decomposition::Standard => p,
        Decomposition::Primed => p.swapped().map_err(|_| Error::StepTooLarge { h })?,
    };
    Ok((fn_lengths(&p)?, fn_twists(&p)?))
}

/// Central-difference partials `(∂_a, ∂_α̃)` of lengths and twists.
fn partials(
    params: &OctagonParams,
    h: f64,
    decomposition: Decomposition,
) -> Result<[LengthTwist; 2]> {
    let (a, at) = (params.a(), params.alpha_tilde());
    let diff = |plus: LengthTwist, minus: LengthTwist| -> LengthTwist {
        (
            core::array::from_fn(|k| (plus.0[k] - minus.0[k]) / (2.0 * h)),
            core::array::from_fn(|k| (plus.1[k] - minus.1[k]) / (2.0 * h)),
        )
    };
    let da = diff(
        eval_lt(a + h, at, h, decomposition)?,
        eval_lt(a - h, at, h, decomposition)?,
    );
    let dat = diff(
        eval_lt(a, at + h, h, decomposition)?,
        eval_lt(a, at - h, h, decomposition)?,
    );
    Ok([da, dat])
}

fn richardson_partials(
    params: &OctagonParams,
    h: f64,
    decomposition: Decomposition,
) -> Result<[LengthTwist; 2]> {
    let coarse = partials(params, h, decomposition)?;
    let fine = partials(params, h / 2.0, decomposition)?;
    let mix = |f: f64, c: f64| (4.0 * f - c) / 3.0;
    Ok(core::array::from_fn(|i| {
        (
            core::array::from_fn(|k| mix(fine[i].0[k], coarse[i].0[k])),
            core::array::from_fn(|k| mix(fine[i].1[k], coarse[i].1[k])),
        )
    }))
}

fn wedge_summands(p: &[LengthTwist; 2], twist_sign: f64) -> [f64; 3] {
    let [(dl_a, dt_a), (dl_t, dt_t)] = *p;
    core::array::from_fn(|k| twist_sign * (dl_a[k] * dt_t[k] - dl_t[k] * dt_a[k]))
}

pub fn wp_fd_check(params: &OctagonParams, opts: FdOptions) -> Result<WpFdReport> {
    let scale = 1f64.max(params.a().abs()).max(params.alpha_tilde().abs());
    let h = opts.h * scale;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::StepTooLarge { h });
    }
    let get = |d| {
        if opts.richardson {
            richardson_partials(params, h, d)
        } else {
            partials(params, h, d)
        }
    };
    let std = get(Decomposition::Standard)?;
    let pr = get(Decomposition::Primed)?;
    let summands = wedge_summands(&std, 1.0);
    let primed_summands = wedge_summands(&pr, 1.0);
    let half_sum = |s: &[f64; 3]| 0.5 * s.iter().sum::<f64>();
    // flipping the primed τ₁,₂ sign negates their summands; τ₃ keeps its sign
    let flipped = wedge_summands(&pr, -1.0);
    Ok(WpFdReport {
        closed_form: wp_coefficient(params).0,
        value: half_sum(&summands),
        summands,
        primed_value: half_sum(&primed_summands),
        primed_summands,
        primed_value_flipped: 0.5 * (flipped[0] + flipped[1] + primed_summands[2]),
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::PI;

    #[test]
    fn regular_twist_is_zero() {
        let t = fn_twists(&OctagonParams::regular()).unwrap();
        assert_eq!(t[0], 0.0);
        assert_abs_diff_eq!(
            twist_arccosh_argument(&OctagonParams::regular()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn twist_sign_follows_alpha_tilde() {
        let p = OctagonParams::new(0.85, 0.2).unwrap();
        let q = OctagonParams::new(0.85, -0.2).unwrap();
        let (tp, tq) = (fn_twists(&p).unwrap(), fn_twists(&q).unwrap());
        assert!(tp[0] > 0.0);
        assert_eq!(tp[0], -tq[0]);
        assert_eq!(tp[2], tq[2]);
    }

    #[test]
    fn primed_twist_has_opposite_sign() {
        let p = OctagonParams::new(0.8, PI / 12.0).unwrap();
        let std = pants_data(&p).unwrap();
        let pr = primed_fn(&p).unwrap();
        assert!(std.twists[0] > 0.0 && pr.twists[0] < 0.0);
        assert_eq!(pr.decomposition, Decomposition::Primed);
    }

    #[test]
    fn step_too_large() {
        let p = OctagonParams::new(0.8, PI / 12.0).unwrap();
        let r = wp_fd_check(
            &p,
            FdOptions {
                h: 0.5,
                richardson: false,
            },
        );
        assert!(matches!(r, Err(Error::StepTooLarge { .. })));
        assert!(wp_fd_check(
            &p,
            FdOptions {
                h: 0.0,
                richardson: false
            }
        )
        .is_err());
    }

    #[test]
    fn richardson_agrees() {
        let p = OctagonParams::new(0.9, -0.3).unwrap();
        let r = wp_fd_check(
            &p,
            FdOptions {
                h: 1e-3,
                richardson: true,
            },
        )
        .unwrap();
        assert!(r.relative_error() < 1e-8);
    }

    #[test]
    fn closed_trace_params_at_regular() {
        let t = trace_params_closed(&OctagonParams::regular());
        assert_abs_diff_eq!(t.c[0], 1.0 + 2f64.sqrt(), epsilon = 1e-13);
    }
}
