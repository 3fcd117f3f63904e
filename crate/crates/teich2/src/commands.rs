use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use teich2_core::fenchel_nielsen::{trace_params_closed, TraceParams};
use teich2_core::isoperimetric::p_reg;
use teich2_core::octagon::polygon_area;
use teich2_core::*;

use crate::cli::{Command, Format, ParamArgs};
use crate::emit::{fmt_f64, write_csv, write_json, Sink};
use crate::error::{CliError, CliResult};
use crate::svg::tiling_svg;
use crate::validate::{self, ValidateConfig, REFERENCE_C1, REFERENCE_C2};

pub const MAX_MARGIN: f64 = 0.2;

fn check_margin(margin: f64) -> CliResult<()> {
    if (0.0..=MAX_MARGIN).contains(&margin) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--margin must lie in [0, {MAX_MARGIN}], got {margin}"
        )))
    }
}

impl ParamArgs {
    pub fn resolve(&self) -> CliResult<OctagonParams> {
        check_margin(self.margin)?;
        match (self.a, self.alpha, self.alpha_tilde) {
            (None, None, None) => Ok(OctagonParams::regular()),
            (Some(a), Some(alpha), None) => Ok(OctagonParams::from_alpha(a, alpha, self.margin)?),
            (Some(a), None, Some(at)) => Ok(OctagonParams::with_margin(a, at, self.margin)?),
            (None, _, _) => Err(CliError::Usage("--alpha/--alpha-tilde given without --a".into())),
            (Some(_), None, None) => {
                Err(CliError::Usage("--a needs one of --alpha or --alpha-tilde".into()))
            }
            (Some(_), Some(_), Some(_)) => Err(CliError::Usage(
                "--alpha and --alpha-tilde are mutually exclusive".into(),
            )),
        }
    }
}

type C2 = [f64; 2];

fn c2(z: Complex) -> C2 {
    [z.re, z.im]
}

#[derive(Serialize)]
struct ParamsOut {
    a: f64,
    alpha: f64,
    alpha_tilde: f64,
    b: f64,
    margin: f64,
}

impl From<&OctagonParams> for ParamsOut {
    fn from(p: &OctagonParams) -> Self {
        ParamsOut {
            a: p.a(),
            alpha: p.alpha(),
            alpha_tilde: p.alpha_tilde(),
            b: p.b(),
            margin: p.margin(),
        }
    }
}

#[derive(Serialize)]
struct ArcOut {
    radius: f64,
    phi: f64,
    center: C2,
}

fn arc_out(arc: &GeodesicArc) -> ArcOut {
    ArcOut {
        radius: arc.radius().unwrap_or(f64::INFINITY),
        phi: arc.phi(),
        center: arc.center().map(c2).unwrap_or([f64::INFINITY; 2]),
    }
}

#[derive(Serialize)]
struct AreaCheck {
    angle_sum: f64,
    polygon_area: f64,
    expected: f64,
}

#[derive(Serialize)]
struct OctagonOut {
    params: ParamsOut,
    beta: f64,
    gamma: f64,
    beta_numeric: f64,
    gamma_numeric: f64,
    t_plus: f64,
    t_minus: f64,
    arc_plus: ArcOut,
    arc_minus: ArcOut,
    vertices: Vec<C2>,
    /// `p₀..p₉`
    midpoints: Vec<C2>,
    omega_plus: C2,
    omega_minus: C2,
    omega4: f64,
    side_lengths: [f64; 8],
    perimeter: f64,
    perimeter_numeric: f64,
    area_check: AreaCheck,
}

fn octagon_out(p: &OctagonParams) -> OctagonOut {
    let g = build_geometry(*p);
    let (beta_n, gamma_n) = interior_angles_numeric(&g);
    let angles = [beta_n, gamma_n, beta_n, gamma_n, beta_n, gamma_n, beta_n, gamma_n];
    OctagonOut {
        params: p.into(),
        beta: g.beta,
        gamma: FRAC_PI_2 - g.beta,
        beta_numeric: beta_n,
        gamma_numeric: gamma_n,
        t_plus: g.t_plus,
        t_minus: g.t_minus,
        arc_plus: arc_out(&g.arc_plus),
        arc_minus: arc_out(&g.arc_minus),
        vertices: g.vertices.iter().map(|v| c2(v.z())).collect(),
        midpoints: (0..10).map(|k| c2(g.labelled_point(k).z())).collect(),
        omega_plus: c2(g.omega_plus),
        omega_minus: c2(g.omega_minus),
        omega4: g.omega4,
        side_lengths: g.side_lengths(),
        perimeter: perimeter(p),
        perimeter_numeric: perimeter_numeric(&g),
        area_check: AreaCheck {
            angle_sum: angles.iter().sum(),
            polygon_area: polygon_area(&angles),
            expected: 4.0 * PI,
        },
    }
}

#[derive(Serialize)]
struct GeneratorOut {
    name: String,
    u: C2,
    v: C2,
    trace: f64,
}

#[derive(Serialize)]
struct RelationOut {
    word: String,
    defect: f64,
    sign: i8,
}

#[derive(Serialize)]
struct PairingOut {
    endpoint_residuals: [f64; 4],
    midpoint_residuals: [f64; 4],
    max_residual: f64,
    interior_samples: usize,
    interior_violations: usize,
}

#[derive(Serialize)]
struct GroupOut {
    params: ParamsOut,
    normalization: f64,
    generators: Vec<GeneratorOut>,
    relation: RelationOut,
    min_abs_trace: f64,
    construction_agreement: f64,
    rotation_identity_defect: f64,
    side_pairing: PairingOut,
}

fn group_out(p: &OctagonParams, samples: usize, seed: u64) -> GroupOut {
    let geom = build_geometry(*p);
    let gens = generators(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = side_pairing_check(&geom, &gens, samples, &mut rng);
    let (defect, sign) = gens.relation_defect();
    GroupOut {
        params: p.into(),
        normalization: gens.normalization,
        generators: gens
            .g
            .iter()
            .enumerate()
            .map(|(k, g)| GeneratorOut {
                name: format!("g{k}"),
                u: c2(g.u()),
                v: c2(g.v()),
                trace: g.trace(),
            })
            .collect(),
        relation: RelationOut {
            word: Word::from(teich2_core::group::RELATOR.to_vec()).to_string(),
            defect,
            sign,
        },
        min_abs_trace: gens.min_abs_trace(),
        construction_agreement: gens.construction_agreement(&geom),
        rotation_identity_defect: gens.rotation_identity_defect(),
        side_pairing: PairingOut {
            max_residual: report.max_residual(),
            endpoint_residuals: report.endpoint_residuals,
            midpoint_residuals: report.midpoint_residuals,
            interior_samples: report.interior_samples,
            interior_violations: report.interior_violations,
        },
    }
}

#[derive(Serialize)]
struct PantsOut {
    lengths: [f64; 3],
    twists: [f64; 3],
    c: [f64; 3],
    d: [f64; 3],
    p_aux: f64,
    length_trace_residual: f64,
    twist_trace_residual: f64,
}

impl From<&PantsData> for PantsOut {
    fn from(d: &PantsData) -> Self {
        PantsOut {
            lengths: d.lengths,
            twists: d.twists,
            c: d.c,
            d: d.d,
            p_aux: d.p_aux,
            length_trace_residual: d.length_trace_residual(),
            twist_trace_residual: d.twist_trace_residual(),
        }
    }
}

#[derive(Serialize)]
struct TraceOut {
    c: [f64; 3],
    d: [f64; 3],
}

impl From<TraceParams> for TraceOut {
    fn from(t: TraceParams) -> Self {
        TraceOut { c: t.c, d: t.d }
    }
}

#[derive(Serialize)]
struct FdOut {
    h: f64,
    richardson: bool,
    closed_form: f64,
    value: f64,
    relative_error: f64,
    summands: [f64; 3],
    primed_value: f64,
    primed_relative_error: f64,
    primed_summands: [f64; 3],
    primed_value_flipped: f64,
}

#[derive(Serialize)]
struct LtOut {
    l3: f64,
    tau3: f64,
    primed_l1: f64,
    primed_t1: f64,
    t1_closed: f64,
    primed_l3: f64,
    primed_tau3: f64,
    max: f64,
}

#[derive(Serialize)]
struct FnOut {
    params: ParamsOut,
    standard: PantsOut,
    primed: PantsOut,
    trace_closed_form: TraceOut,
    wp_coefficient: f64,
    finite_differences: FdOut,
    lt_relations: LtOut,
}

fn fn_out(p: &OctagonParams, h: f64, richardson: bool) -> CliResult<FnOut> {
    let std = pants_data(p)?;
    let primed = primed_fn(p)?;
    let fd = wp_fd_check(p, FdOptions { h, richardson })?;
    let lt = lt_relations_check(p)?;
    Ok(FnOut {
        params: p.into(),
        standard: (&std).into(),
        primed: (&primed).into(),
        trace_closed_form: trace_params_closed(p).into(),
        wp_coefficient: wp_coefficient(p).0,
        finite_differences: FdOut {
            h: fd.h,
            richardson,
            closed_form: fd.closed_form,
            value: fd.value,
            relative_error: fd.relative_error(),
            summands: fd.summands,
            primed_value: fd.primed_value,
            primed_relative_error: fd.primed_relative_error(),
            primed_summands: fd.primed_summands,
            primed_value_flipped: fd.primed_value_flipped,
        },
        lt_relations: LtOut {
            l3: lt.l3,
            tau3: lt.tau3,
            primed_l1: lt.primed_l1,
            primed_t1: lt.primed_t1,
            t1_closed: lt.t1_closed,
            primed_l3: lt.primed_l3,
            primed_tau3: lt.primed_tau3,
            max: lt.max(),
        },
    })
}

/// Flattens a JSON value into `path,value` rows.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, rows);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&join(&i.to_string()), x, rows);
            }
        }
        Value::Number(n) => {
            let s = match (n.as_i64(), n.as_u64()) {
                (Some(i), _) => i.to_string(),
                (_, Some(u)) => u.to_string(),
                _ => fmt_f64(n.as_f64().unwrap_or(f64::NAN)),
            };
            rows.push(vec![prefix.to_string(), s]);
        }
        Value::Null => rows.push(vec![prefix.to_string(), "NaN".into()]),
        Value::Bool(b) => rows.push(vec![prefix.to_string(), b.to_string()]),
        Value::String(s) => rows.push(vec![prefix.to_string(), s.clone()]),
    }
}

fn write_record<T: Serialize>(
    w: &mut dyn Write,
    command: &str,
    format: Format,
    data: &T,
) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(w, command, data),
        _ => {
            let value = serde_json::to_value(data)?;
            let mut rows = Vec::new();
            flatten("", &value, &mut rows);
            write_csv(w, &["quantity", "value"], rows)
        }
    }
}

#[derive(Serialize)]
struct OrbitRow {
    phi: f64,
    a: f64,
    alpha_tilde: f64,
    p_check: f64,
}

#[derive(Serialize)]
struct OrbitOut {
    #[serde(rename = "P")]
    p: f64,
    #[serde(rename = "E")]
    e: f64,
    max_rel_deviation: f64,
    samples: Vec<OrbitRow>,
}

fn orbit_out(e: f64, n: usize) -> CliResult<OrbitOut> {
    let p = p_of_e(e)?;
    let samples = orbit(e, n)?
        .into_iter()
        .map(|o| {
            Ok(OrbitRow {
                phi: o.phi,
                a: o.a,
                alpha_tilde: o.alpha_tilde,
                p_check: o.perimeter()?,
            })
        })
        .collect::<teich2_core::Result<Vec<_>>>()?;
    let max_rel_deviation = samples
        .iter()
        .map(|s| ((s.p_check - p) / p).abs())
        .fold(0.0, f64::max);
    Ok(OrbitOut {
        p,
        e,
        max_rel_deviation,
        samples,
    })
}

#[derive(Serialize)]
struct AreaRow {
    #[serde(rename = "P")]
    p: f64,
    area: f64,
    quad_error_estimate: f64,
    evaluations: usize,
}

#[derive(Serialize)]
struct FitOut {
    c1: f64,
    c2: f64,
    residual_norm: f64,
    max_rel_deviation: f64,
    p_reg: f64,
    reference_c1: f64,
    reference_c2: f64,
}

#[derive(Serialize)]
struct AreaOut {
    table: Vec<AreaRow>,
    fit: Option<FitOut>,
}

#[derive(Serialize)]
struct ElementOut {
    word: String,
    u: C2,
    v: C2,
}

#[derive(Serialize)]
struct TilingOut {
    params: ParamsOut,
    radius: usize,
    size: usize,
    sphere_sizes: Vec<usize>,
    elements: Vec<ElementOut>,
}

fn svg_only_for_tiling(command: &Command, format: Format) -> CliResult<()> {
    if format == Format::Svg && !matches!(command, Command::Tiling { .. }) {
        return Err(CliError::Usage(format!(
            "--format svg is only available for tiling, not {}",
            command.name()
        )));
    }
    Ok(())
}

/// Executes one parsed command, writing its main output to `sink`.
pub fn execute(command: &Command, format: Format, sink: &Sink, out: &mut dyn Write) -> CliResult<()> {
    svg_only_for_tiling(command, format)?;
    let name = command.name();
    match command {
        Command::Octagon(args) => {
            let data = octagon_out(&args.resolve()?);
            sink.write_with(out, |w| write_record(w, name, format, &data))
        }
        Command::Group {
            params,
            samples,
            seed,
        } => {
            let data = group_out(&params.resolve()?, *samples, *seed);
            sink.write_with(out, |w| match format {
                Format::Csv => write_csv(
                    w,
                    &["name", "u_re", "u_im", "v_re", "v_im"],
                    data.generators.iter().map(|g| {
                        vec![
                            g.name.clone(),
                            fmt_f64(g.u[0]),
                            fmt_f64(g.u[1]),
                            fmt_f64(g.v[0]),
                            fmt_f64(g.v[1]),
                        ]
                    }),
                ),
                _ => write_json(w, name, &data),
            })
        }
        Command::Fn {
            params,
            h,
            richardson,
        } => {
            let data = fn_out(&params.resolve()?, *h, *richardson)?;
            sink.write_with(out, |w| write_record(w, name, format, &data))
        }
        Command::Orbit { p, e, samples } => {
            let targets: Vec<f64> = if !e.is_empty() {
                e.clone()
            } else if !p.is_empty() {
                p.iter().map(|&x| e_of_p(x)).collect()
            } else {
                validate::ORBIT_PERIMETERS.iter().map(|&x| e_of_p(x)).collect()
            };
            let orbits = targets
                .par_iter()
                .map(|&e| orbit_out(e, *samples))
                .collect::<CliResult<Vec<_>>>()?;
            sink.write_with(out, |w| match format {
                Format::Csv => write_csv(
                    w,
                    &["P", "phi", "a", "alpha_tilde", "P_check"],
                    orbits.iter().flat_map(|o| {
                        o.samples.iter().map(move |s| {
                            vec![
                                fmt_f64(o.p),
                                fmt_f64(s.phi),
                                fmt_f64(s.a),
                                fmt_f64(s.alpha_tilde),
                                fmt_f64(s.p_check),
                            ]
                        })
                    }),
                ),
                _ => write_json(w, name, &serde_json::json!({ "orbits": orbits })),
            })
        }
        Command::Area { p_min, p_max, step } => {
            let table = validate::area_table(p_min.unwrap_or_else(p_reg), *p_max, *step)?;
            let fit = ParabolaFit::from_samples(table.iter().map(|r| (r.p_star, r.area)).collect())
                .ok()
                .map(|f| FitOut {
                    c1: f.c1,
                    c2: f.c2,
                    residual_norm: f.residual_norm,
                    max_rel_deviation: f.max_rel_deviation,
                    p_reg: p_reg(),
                    reference_c1: REFERENCE_C1,
                    reference_c2: REFERENCE_C2,
                });
            let data = AreaOut {
                table: table
                    .iter()
                    .map(|r| AreaRow {
                        p: r.p_star,
                        area: r.area,
                        quad_error_estimate: r.quad_error_estimate,
                        evaluations: r.evaluations,
                    })
                    .collect(),
                fit,
            };
            sink.write_with(out, |w| match format {
                Format::Csv => write_csv(
                    w,
                    &["P", "area"],
                    data.table.iter().map(|r| vec![fmt_f64(r.p), fmt_f64(r.area)]),
                ),
                _ => write_json(w, name, &data),
            })
        }
        Command::Tiling {
            params,
            n,
            cells: cells_path,
            svg,
        } => {
            let p = params.resolve()?;
            let geom = build_geometry(p);
            let b = ball(&generators(&p), *n, BallOptions::default())?;
            let tiles = cells(&b, &geom);
            if let Some(path) = cells_path {
                Sink::File(path.clone()).write_with(out, |w| {
                    write_csv(
                        w,
                        &["word", "vertex", "re", "im"],
                        tiles.iter().flat_map(|c| {
                            c.vertices.iter().enumerate().map(|(k, z)| {
                                vec![c.word.to_string(), k.to_string(), fmt_f64(z.re), fmt_f64(z.im)]
                            })
                        }),
                    )
                })?;
            }
            if let Some(path) = svg {
                let doc = tiling_svg(&tiles);
                Sink::File(path.clone()).write_with(out, |w| w.write_all(doc.as_bytes()))?;
            }
            sink.write_with(out, |w| match format {
                Format::Svg => w.write_all(tiling_svg(&tiles).as_bytes()),
                Format::Csv => write_csv(
                    w,
                    &["word", "u_re", "u_im", "v_re", "v_im"],
                    b.elements.iter().map(|e| {
                        let (u, v) = (e.transform.u(), e.transform.v());
                        vec![
                            e.word.to_string(),
                            fmt_f64(u.re),
                            fmt_f64(u.im),
                            fmt_f64(v.re),
                            fmt_f64(v.im),
                        ]
                    }),
                ),
                Format::Json => write_json(
                    w,
                    name,
                    &TilingOut {
                        params: (&p).into(),
                        radius: b.radius,
                        size: b.len(),
                        sphere_sizes: b.sphere_sizes.clone(),
                        elements: b
                            .elements
                            .iter()
                            .map(|e| ElementOut {
                                word: e.word.to_string(),
                                u: c2(e.transform.u()),
                                v: c2(e.transform.v()),
                            })
                            .collect(),
                    },
                ),
            })
        }
        Command::Validate {
            grid,
            margin,
            seed,
            samples,
            ball_radius,
            tol,
        } => {
            check_margin(*margin)?;
            let mut cfg = ValidateConfig {
                n_a: grid[0],
                n_alpha: grid[1],
                margin: *margin,
                seed: *seed,
                samples: *samples,
                ball_radius: *ball_radius,
                ..ValidateConfig::default()
            };
            for spec in tol {
                cfg.tolerances.apply(spec)?;
            }
            let report = validate::run(&cfg)?;
            sink.write_with(out, |w| match format {
                Format::Csv => write_csv(
                    w,
                    &["name", "criterion", "max_residual", "tolerance", "samples", "passed"],
                    report.checks.iter().map(|c| {
                        vec![
                            c.name.to_string(),
                            c.criterion.to_string(),
                            fmt_f64(c.max_residual),
                            fmt_f64(c.tolerance),
                            c.samples.to_string(),
                            c.passed.to_string(),
                        ]
                    }),
                ),
                _ => write_json(w, name, &report),
            })?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Validation {
                    failed: report.failed,
                    total: report.total,
                })
            }
        }
    }
}
