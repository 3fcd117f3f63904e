//! The invariant suite behind `teich2 validate` and the acceptance run.
//!
//! Every check reduces to one worst-case residual compared against a named
//! tolerance. Checks are grouped by the acceptance criterion they serve
//! (1–12); module invariants without a criterion form group 0.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use teich2_core::fenchel_nielsen::{length_oracles, trace_params_closed, twist_arccosh_argument};
use teich2_core::isoperimetric::{self, a_reg, e_of_a, e_reg, p_reg, reduced_f, wp_area_2d};
use teich2_core::octagon::polygon_area;
use teich2_core::*;

use crate::error::{CliError, CliResult};

/// Reference values for the regular perimeter and the area fit.
pub const REFERENCE_P_REG: f64 = 24.45713;
pub const REFERENCE_C1: f64 = 0.05622;
pub const REFERENCE_C2: f64 = 2.62132;

/// Default orbit perimeters.
pub const ORBIT_PERIMETERS: [f64; 9] = [25.0, 27.0, 29.0, 31.0, 33.0, 35.0, 37.0, 39.0, 41.0];
pub const AREA_PERIMETERS: [f64; 4] = [25.0, 30.0, 35.0, 41.0];
/// Sphere sizes of the surface group up to radius 4.
pub const SPHERE_SIZES: [usize; 5] = [1, 8, 56, 392, 2736];

const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("p_reg_reference", 1e-4),
    ("e_reg", 1e-9),
    ("a_reg", 1e-9),
    ("tau_regular", 1e-9),
    ("relation_defect", 1e-9),
    ("generator_traces", 0.0),
    ("construction_agreement", 1e-9),
    ("rotation_identities", 1e-9),
    ("side_pairing", 1e-9),
    ("side_pairing_interior", 0.0),
    ("c_cosh_half_length", 1e-9),
    ("d_closed_vs_trace", 1e-9),
    ("dt_relation", 1e-9),
    ("length_midpoint_oracle", 1e-9),
    ("wolpert_fd", 1e-5),
    ("wolpert_k3", 1e-9),
    ("wolpert_primed", 1e-5),
    ("wolpert_primed_flipped", 1e-5),
    ("lt_relations", 1e-9),
    ("orbit_constancy", 1e-8),
    ("orbit_mirror", 0.0),
    ("orbit_mirror_2pi", 1e-12),
    ("asymptotics", 1e-3),
    ("area_reg", 1e-10),
    ("area_vs_2d", 1e-4),
    ("area_monotone", 0.0),
    ("parabola_c1", 0.10),
    ("parabola_c2", 0.03),
    ("ball_size_1", 0.0),
    ("ball_size_2", 0.0),
    ("ball_growth", 0.0),
    ("ball_deterministic", 0.0),
    ("perimeter_closed_vs_numeric", 1e-8),
    ("interior_angles", 1e-8),
    ("angle_sum", 1e-8),
    ("gauss_bonnet", 1e-8),
    ("opposite_sides", 1e-9),
    ("arc_ordering", 0.0),
    ("vertex_on_arc", 1e-9),
    ("wp_positive", 0.0),
    ("twist_literal_argument", 1e-9),
    ("reduced_f_identity", 1e-9),
    ("a_extremes_backsub", 1e-9),
    ("e_p_round_trip", 1e-12),
];

/// Named tolerances, overridable one by one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances(BTreeMap<&'static str, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances(DEFAULT_TOLERANCES.iter().copied().collect())
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    pub fn set(&mut self, name: &str, value: f64) -> CliResult<()> {
        if value.is_nan() || value < 0.0 {
            return Err(CliError::Usage(format!(
                "tolerance for {name} must be non-negative, got {value}"
            )));
        }
        match self.0.get_mut(name) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(CliError::Usage(format!("unknown tolerance name: {name}"))),
        }
    }

    /// Parses `name=value`.
    pub fn apply(&mut self, spec: &str) -> CliResult<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected name=value, got {spec:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid tolerance value in {spec:?}")))?;
        self.set(name.trim(), value)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.keys().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidateConfig {
    pub n_a: usize,
    pub n_alpha: usize,
    pub margin: f64,
    pub seed: u64,
    /// Interior points per grid node for the side-pairing check.
    pub samples: usize,
    pub ball_radius: usize,
    pub orbit_samples: usize,
    pub fd_step: f64,
    pub tolerances: Tolerances,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        ValidateConfig {
            n_a: 20,
            n_alpha: 20,
            margin: 0.02,
            seed: 0,
            samples: 64,
            ball_radius: 4,
            orbit_samples: 256,
            fd_step: 1e-5,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub criterion: u8,
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: ValidateConfig,
    pub grid_points: usize,
    pub total: usize,
    pub failed: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Largest value, with any NaN winning so that it fails the comparison.
fn worst<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, |m, x| {
        if x.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(x)
        }
    })
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

struct Builder<'a> {
    criterion: u8,
    tolerances: &'a Tolerances,
    checks: Vec<Check>,
}

impl<'a> Builder<'a> {
    fn new(criterion: u8, tolerances: &'a Tolerances) -> Self {
        Builder {
            criterion,
            tolerances,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: &'static str, max_residual: f64, samples: usize) {
        let tolerance = self.tolerances.get(name);
        self.checks.push(Check {
            name,
            criterion: self.criterion,
            max_residual,
            tolerance,
            samples,
            passed: max_residual <= tolerance,
        });
    }

    /// One check per column of a per-point residual table.
    fn push_columns<const N: usize>(&mut self, names: [&'static str; N], rows: &[[f64; N]]) {
        for (k, name) in names.into_iter().enumerate() {
            self.push(name, worst(rows.iter().map(|r| r[k])), rows.len());
        }
    }

    fn finish(self) -> Vec<Check> {
        self.checks
    }
}

fn grid_rows<const N: usize, F>(grid: &DomainGrid, f: F) -> Vec<[f64; N]>
where
    F: Fn(usize, &OctagonParams) -> [f64; N] + Sync,
{
    grid.points
        .par_iter()
        .enumerate()
        .map(|(i, p)| f(i, p))
        .collect()
}

fn or_inf<T>(r: teich2_core::Result<T>, f: impl FnOnce(T) -> f64) -> f64 {
    r.map(f).unwrap_or(f64::INFINITY)
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "regular-octagon constants"),
    (2, "group relation and hyperbolic generators"),
    (3, "three generator constructions agree"),
    (4, "side pairing"),
    (5, "Fenchel-Nielsen trace consistency"),
    (6, "Wolpert formula by finite differences"),
    (7, "L/T relations"),
    (8, "orbit constancy and mirror symmetry"),
    (9, "large-P asymptotics"),
    (10, "Weil-Petersson area"),
    (11, "Cayley ball enumeration"),
    (12, "geometry oracles"),
];

/// Runs the checks for one acceptance criterion (1–12), or the remaining
/// module invariants for `0`.
pub fn criterion(k: u8, cfg: &ValidateConfig, grid: &DomainGrid) -> CliResult<Vec<Check>> {
    let tol = &cfg.tolerances;
    let mut b = Builder::new(k, tol);
    match k {
        0 => module_invariants(&mut b, cfg, grid)?,
        1 => {
            let r = OctagonParams::regular();
            b.push("p_reg_reference", (p_reg() - REFERENCE_P_REG).abs(), 1);
            b.push("e_reg", (e_of_p(p_reg()) - e_reg()).abs(), 1);
            let a_res = rel(e_of_a(a_reg()), e_reg()).max(rel(perimeter(&r), p_reg()));
            b.push("a_reg", a_res, 1);
            b.push("tau_regular", or_inf(fn_twists(&r), |t| t[0].abs().max(t[1].abs())), 1);
        }
        2 => {
            let rows = grid_rows(grid, |_, p| {
                let g = generators(p);
                let t = g.min_abs_trace();
                [g.relation_defect().0, if t > 2.0 { 0.0 } else { 1.0 + 2.0 - t }]
            });
            b.push_columns(["relation_defect", "generator_traces"], &rows);
        }
        3 => {
            let rows = grid_rows(grid, |_, p| {
                let g = generators(p);
                [g.construction_agreement(&build_geometry(*p)), g.rotation_identity_defect()]
            });
            b.push_columns(["construction_agreement", "rotation_identities"], &rows);
        }
        4 => {
            let rows = grid_rows(grid, |i, p| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
                let r = side_pairing_check(&build_geometry(*p), &generators(p), cfg.samples, &mut rng);
                [r.max_residual(), r.interior_violations as f64]
            });
            b.push_columns(["side_pairing", "side_pairing_interior"], &rows);
        }
        5 => {
            let rows = grid_rows(grid, |_, p| fn_trace_row(p));
            b.push_columns(
                ["c_cosh_half_length", "d_closed_vs_trace", "dt_relation", "length_midpoint_oracle"],
                &rows,
            );
        }
        6 => {
            let opts = FdOptions {
                h: cfg.fd_step,
                richardson: false,
            };
            let rows = grid_rows(grid, |_, p| match wp_fd_check(p, opts) {
                Ok(r) => [
                    r.relative_error(),
                    r.k3_summand(),
                    r.primed_relative_error(),
                    ((r.primed_value_flipped + r.value) / r.value).abs(),
                ],
                Err(_) => [f64::INFINITY; 4],
            });
            b.push_columns(
                ["wolpert_fd", "wolpert_k3", "wolpert_primed", "wolpert_primed_flipped"],
                &rows,
            );
        }
        7 => {
            let rows = grid_rows(grid, |_, p| [or_inf(lt_relations_check(p), |r| r.max())]);
            b.push_columns(["lt_relations"], &rows);
        }
        8 => orbit_checks(&mut b, cfg),
        9 => {
            let e = e_of_p(200.0);
            let n = cfg.orbit_samples.max(1);
            let res = worst((0..n).map(|j| {
                let phi = TAU * (j as f64 + 0.5) / n as f64;
                let (a, t) = asymptotic_orbit(phi);
                or_inf(orbit_point(e, phi), |o| (o.a - a).abs().max((o.alpha_tilde - t).abs()))
            }));
            b.push("asymptotics", res, n);
        }
        10 => area_checks(&mut b)?,
        11 => ball_checks(&mut b, cfg)?,
        12 => {
            let rows = grid_rows(grid, |_, p| {
                let g = build_geometry(*p);
                let per = perimeter(p);
                let (beta, gamma) = interior_angles_numeric(&g);
                let angles = [beta, gamma, beta, gamma, beta, gamma, beta, gamma];
                [
                    (per - perimeter_numeric(&g)).abs() / per,
                    (beta - g.beta).abs().max((gamma - (PI / 2.0 - g.beta)).abs()),
                    (angles.iter().sum::<f64>() - TAU).abs(),
                    (polygon_area(&angles) - 4.0 * PI).abs(),
                ]
            });
            b.push_columns(
                ["perimeter_closed_vs_numeric", "interior_angles", "angle_sum", "gauss_bonnet"],
                &rows,
            );
        }
        _ => return Err(CliError::Usage(format!("no acceptance criterion {k}"))),
    }
    Ok(b.finish())
}

fn fn_trace_row(p: &OctagonParams) -> [f64; 4] {
    let (std, primed) = match (pants_data(p), primed_fn(p)) {
        (Ok(s), Ok(q)) => (s, q),
        _ => return [f64::INFINITY; 4],
    };
    let geom = build_geometry(*p);
    let traced = trace_params(&geom);
    let closed = trace_params_closed(p);
    let d_res = worst((0..3).map(|k| rel(traced.c[k], closed.c[k]).max(rel(traced.d[k], closed.d[k]))));
    let (l_std, l_primed) = length_oracles(&geom);
    let l_res = worst((0..3).map(|k| {
        rel(l_std[k], std.lengths[k]).max(rel(l_primed[k], primed.lengths[k]))
    }));
    [
        std.length_trace_residual().max(primed.length_trace_residual()),
        d_res,
        std.twist_trace_residual().max(primed.twist_trace_residual()),
        l_res,
    ]
}

fn orbit_checks(b: &mut Builder<'_>, cfg: &ValidateConfig) {
    let n = cfg.orbit_samples.max(1);
    let rows: Vec<[f64; 3]> = ORBIT_PERIMETERS
        .par_iter()
        .flat_map_iter(|&p| {
            let e = e_of_p(p);
            (0..n).map(move |j| {
                let phi = TAU * j as f64 / n as f64;
                let (o, m, m2) = match (
                    orbit_point(e, phi),
                    orbit_point(e, -phi),
                    orbit_point(e, TAU - phi),
                ) {
                    (Ok(o), Ok(m), Ok(m2)) => (o, m, m2),
                    _ => return [f64::INFINITY; 3],
                };
                let per = or_inf(o.perimeter(), |x| ((x - p) / p).abs());
                let mirror = |q: &OrbitSample| (o.a - q.a).abs().max((o.alpha_tilde + q.alpha_tilde).abs());
                [per, mirror(&m), mirror(&m2)]
            })
        })
        .collect();
    b.push_columns(["orbit_constancy", "orbit_mirror", "orbit_mirror_2pi"], &rows);
}

/// Area samples for the parabola refit, computed in parallel and assembled
/// in order.
pub fn area_table(p_min: f64, p_max: f64, step: f64) -> CliResult<Vec<AreaResult>> {
    let ps = isoperimetric::sample_perimeters(p_min, p_max, step)?;
    let out: teich2_core::Result<Vec<AreaResult>> = ps.par_iter().map(|&p| wp_area(p)).collect();
    Ok(out?)
}

fn area_checks(b: &mut Builder<'_>) -> CliResult<()> {
    b.push("area_reg", wp_area(p_reg())?.area.abs(), 1);
    let pairs: Vec<f64> = AREA_PERIMETERS
        .par_iter()
        .map(|&p| match (wp_area(p), wp_area_2d(p, 64, 32)) {
            (Ok(a), Ok(c)) => ((a.area - c) / c).abs(),
            _ => f64::INFINITY,
        })
        .collect();
    b.push("area_vs_2d", worst(pairs), AREA_PERIMETERS.len());

    let table = area_table(p_reg(), 41.0, 0.5)?;
    let monotone = table.windows(2).all(|w| w[1].area > w[0].area);
    b.push("area_monotone", flag(monotone), table.len());
    let fit = ParabolaFit::from_samples(table.iter().map(|r| (r.p_star, r.area)).collect())?;
    b.push("parabola_c1", ((fit.c1 - REFERENCE_C1) / REFERENCE_C1).abs(), table.len());
    b.push("parabola_c2", ((fit.c2 - REFERENCE_C2) / REFERENCE_C2).abs(), table.len());
    Ok(())
}

fn ball_checks(b: &mut Builder<'_>, cfg: &ValidateConfig) -> CliResult<()> {
    let params = [
        OctagonParams::regular(),
        OctagonParams::new(0.8, PI / 12.0)?,
    ];
    let opts = BallOptions::default();
    let mut size_1 = 0.0f64;
    let mut size_2 = 0.0f64;
    let mut growth = 0.0f64;
    let mut deterministic = true;
    for p in &params {
        let gens = generators(p);
        size_1 = size_1.max((ball(&gens, 1, opts)?.len() as f64 - 9.0).abs());
        let two = ball(&gens, 2, opts)?;
        size_2 = size_2.max((two.len() as f64 - 65.0).abs());
        deterministic &= ball(&gens, 2, opts)? == two;
        let r = cfg.ball_radius.min(SPHERE_SIZES.len() - 1);
        let big = ball(&gens, r, opts)?;
        growth = growth.max(flag(big.sphere_sizes[..] == SPHERE_SIZES[..=r]));
    }
    b.push("ball_size_1", size_1, params.len());
    b.push("ball_size_2", size_2, params.len());
    b.push("ball_growth", growth, params.len());
    b.push("ball_deterministic", flag(deterministic), params.len());
    Ok(())
}

fn module_invariants(b: &mut Builder<'_>, cfg: &ValidateConfig, grid: &DomainGrid) -> CliResult<()> {
    let rows = grid_rows(grid, |_, p| {
        let g = build_geometry(*p);
        let s = g.side_lengths();
        let opposite = worst((0..4).map(|k| rel(s[k], s[k + 4])));
        let (fp, fm) = (g.arc_plus.phi(), g.arc_minus.phi());
        let ordered = 0.0 < fp && fp < p.alpha() && p.alpha() < fm && fm < PI / 2.0;
        let literal = match (twist_arccosh_argument(p), fn_twists(p)) {
            (Ok(arg), Ok(t)) => rel(t[0].cosh(), arg),
            _ => f64::INFINITY,
        };
        [
            opposite,
            flag(ordered),
            g.vertex_on_arc_residual(),
            flag(wp_coefficient(p).0 > 0.0),
            literal,
        ]
    });
    b.push_columns(
        ["opposite_sides", "arc_ordering", "vertex_on_arc", "wp_positive", "twist_literal_argument"],
        &rows,
    );

    let n = cfg.orbit_samples.max(1);
    let mut f_res = 0.0f64;
    let mut back = 0.0f64;
    let mut round = 0.0f64;
    for &p in &ORBIT_PERIMETERS {
        let e = e_of_p(p);
        let (lo, hi) = a_extremes(e)?;
        back = back.max(((e_of_a(lo) - e) / e).abs()).max(((e_of_a(hi) - e) / e).abs());
        round = round.max((p_of_e(e)? - p).abs() / p);
        for j in 0..n {
            let o = orbit_point(e, TAU * j as f64 / n as f64)?;
            let rhs = o.alpha_tilde.tan().powi(2) / (2.0 * o.a * o.a - 1.0);
            f_res = worst([f_res, (reduced_f(e, o.a).powi(2) - rhs).abs()]);
        }
    }
    b.push("reduced_f_identity", f_res, ORBIT_PERIMETERS.len() * n);
    b.push("a_extremes_backsub", back, 2 * ORBIT_PERIMETERS.len());
    b.push("e_p_round_trip", round, ORBIT_PERIMETERS.len());
    Ok(())
}

/// Runs every criterion and the module invariants.
pub fn run(cfg: &ValidateConfig) -> CliResult<Report> {
    let grid = DomainGrid::new(cfg.n_a, cfg.n_alpha, cfg.margin)?;
    let mut checks = Vec::new();
    for k in 1..=12 {
        checks.extend(criterion(k, cfg, &grid)?);
    }
    checks.extend(criterion(0, cfg, &grid)?);
    let failed = checks.iter().filter(|c| !c.passed).count();
    Ok(Report {
        config: cfg.clone(),
        grid_points: grid.len(),
        total: checks.len(),
        failed,
        passed: failed == 0,
        checks,
    })
}
