#![allow(clippy::excessive_precision)]

//! Reference values computed independently at 40 significant digits and frozen here.

use core::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use approx::assert_relative_eq;
use teich2_core::fenchel_nielsen::{length_oracles, trace_params_closed, twist_arccosh_argument};
use teich2_core::isoperimetric::{e_reg, p_reg, reduced_f, wp_area_2d};
use teich2_core::octagon::lower_a;
use teich2_core::*;

fn sample() -> OctagonParams {
    OctagonParams::new(0.8, PI / 12.0).unwrap()
}

#[test]
fn geometry_at_sample_point() {
    let g = build_geometry(sample());
    assert_relative_eq!(g.b, 0.9150635094610966, max_relative = 1e-14);
    assert_relative_eq!(g.arc_plus.radius().unwrap(), 0.6104467293623503, max_relative = 1e-13);
    assert_relative_eq!(g.arc_minus.radius().unwrap(), 0.3235676389227883, max_relative = 1e-13);
    assert_relative_eq!(g.arc_plus.phi(), 0.5056240162020486, max_relative = 1e-13);
    assert_relative_eq!(g.arc_minus.phi(), 1.3477119800842571, max_relative = 1e-13);
    assert_relative_eq!(g.beta, 1.1464216745624323, max_relative = 1e-13);
    assert_relative_eq!(lower_a(PI / 12.0), 0.7320508075688773, max_relative = 1e-15);

    let (beta, gamma) = interior_angles_numeric(&g);
    assert_relative_eq!(beta, 1.1464216745624323, max_relative = 1e-10);
    assert_relative_eq!(gamma, 0.4243746522324643, max_relative = 1e-10);
}

#[test]
fn perimeter_and_side_lengths() {
    let g = build_geometry(sample());
    assert_relative_eq!(perimeter(&g.params), 27.023328706074827, max_relative = 1e-13);
    assert_relative_eq!(perimeter_numeric(&g), 27.023328706074827, max_relative = 1e-11);
    let s = g.side_lengths();
    for (k, &side) in s.iter().enumerate() {
        let expected = if k % 2 == 0 {
            3.9682403599561877
        } else {
            2.7875918165625192
        };
        assert_relative_eq!(side, expected, max_relative = 1e-10);
    }
}

#[test]
fn isoperimetric_values_at_sample_point() {
    let e = e_of_p(27.023328706074827);
    assert_relative_eq!(e, 31.343747228912957, max_relative = 1e-13);
    let (lo, hi) = a_extremes(e).unwrap();
    assert_relative_eq!(lo, 0.7700324667510908, max_relative = 1e-12);
    assert_relative_eq!(hi, 0.9182817760528484, max_relative = 1e-12);
    let o = orbit_point(e, 2.2446964410497214).unwrap();
    assert_relative_eq!(o.a, 0.8, max_relative = 1e-12);
    assert_relative_eq!(o.alpha_tilde, PI / 12.0, max_relative = 1e-11);
}

#[test]
fn fenchel_nielsen_at_sample_point() {
    let p = sample();
    let l = fn_lengths(&p).unwrap();
    assert_relative_eq!(l[0], 2.3558569217315251, max_relative = 1e-14);
    assert_relative_eq!(l[2], 4.3944491546724388, max_relative = 1e-14);
    let t = fn_twists(&p).unwrap();
    assert_relative_eq!(t[0], 1.1156889642222689, max_relative = 1e-14);
    assert_relative_eq!(t[2], 9f64.ln(), max_relative = 1e-15);
    assert_relative_eq!(
        twist_arccosh_argument(&p).unwrap().acosh(),
        t[0],
        max_relative = 1e-12
    );
    assert_relative_eq!(wp_coefficient(&p).0, 91.517142985189263, max_relative = 1e-14);

    let tr = trace_params(&build_geometry(p));
    let closed = trace_params_closed(&p);
    for (x, y) in tr.c.iter().zip(closed.c) {
        assert_relative_eq!(*x, y, max_relative = 1e-12);
    }
    assert_relative_eq!(tr.c[0], 1.7777777777777778, max_relative = 1e-12);
    assert_relative_eq!(tr.c[2], 4.5555555555555556, max_relative = 1e-12);
    assert_relative_eq!(tr.d[0] + 1.0, 68.309325476854400, max_relative = 1e-12);
    assert_relative_eq!(tr.d[1] + 1.0, 68.309325476854400, max_relative = 1e-12);
    assert_relative_eq!(tr.d[2] + 1.0, 15.432098765432099, max_relative = 1e-12);

    let (std, primed) = length_oracles(&build_geometry(p));
    assert_relative_eq!(std[0], l[0], max_relative = 1e-12);
    assert_relative_eq!(std[2], l[2], max_relative = 1e-12);
    let lp = primed_fn(&p).unwrap().lengths;
    assert_relative_eq!(primed[0], lp[0], max_relative = 1e-12);
    assert_relative_eq!(primed[2], lp[2], max_relative = 1e-12);
}

#[test]
fn regular_point() {
    let r = OctagonParams::regular();
    assert_relative_eq!(wp_coefficient(&r).0, 55.449656048184171, max_relative = 1e-14);
    assert_relative_eq!(p_reg(), 24.457134711695971, max_relative = 1e-14);
    assert!((p_reg() - 24.45713).abs() < 1e-4);
    assert_relative_eq!(e_reg(), 12.0 + 8.0 * SQRT_2, max_relative = 1e-15);
    assert_relative_eq!(fn_lengths(&r).unwrap()[0], 3.0571418389619963, max_relative = 1e-14);
    assert_eq!(fn_twists(&r).unwrap()[0], 0.0);
    let g = generators(&r);
    assert_relative_eq!(g.normalization, -2.8709999455101502, max_relative = 1e-14);
    let u = g.g[0].u();
    assert_relative_eq!(u.re, -(1.0 + SQRT_2), max_relative = 1e-14);
    assert!(u.im.abs() < 1e-14);
    let geom = build_geometry(r);
    let s = geom.side_lengths();
    for x in s {
        assert_relative_eq!(x, s[0], max_relative = 1e-12);
    }
}

#[test]
fn asymptotic_examples() {
    let (a, t) = asymptotic_orbit(FRAC_PI_2);
    assert_relative_eq!(a, 3f64.sqrt() / 2.0, max_relative = 1e-15);
    assert_relative_eq!(t, 0.6154797086703873, max_relative = 1e-14);
    let (a, t) = asymptotic_orbit(PI);
    assert_relative_eq!(a, 1.0 / SQRT_2, max_relative = 1e-15);
    assert!(t.abs() < 1e-15);
}

#[test]
fn area_values() {
    let cases = [
        (25.0, 1.4494758683755176),
        (30.0, 16.276818821240823),
        (35.0, 33.86522857298922),
        (41.0, 58.76775543273923),
    ];
    for (p, expected) in cases {
        let r = wp_area(p).unwrap();
        assert_relative_eq!(r.area, expected, max_relative = 1e-8);
        assert!(r.quad_error_estimate <= 1e-8);
        let two_d = wp_area_2d(p, 64, 32).unwrap();
        assert_relative_eq!(two_d, expected, max_relative = 1e-8);
    }
}

#[test]
fn reduced_f_matches_orbit() {
    for p in [25.0, 33.0, 41.0] {
        let e = e_of_p(p);
        for j in 1..16 {
            let o = orbit_point(e, PI * j as f64 / 16.0).unwrap();
            let lhs = reduced_f(e, o.a);
            let rhs = o.alpha_tilde.tan() / (2.0 * o.a * o.a - 1.0).sqrt();
            assert!((lhs - rhs).abs() <= 1e-9, "P={p} j={j}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn parabola_refit() {
    let fit = parabola_fit(p_reg(), 41.0, 0.5).unwrap();
    assert!(((fit.c1 - 0.05622) / 0.05622).abs() <= 0.10, "c1 = {}", fit.c1);
    assert!(((fit.c2 - 2.62132) / 2.62132).abs() <= 0.03, "c2 = {}", fit.c2);
    assert_relative_eq!(fit.c1, 0.056033, max_relative = 1e-4);
    assert_relative_eq!(fit.c2, 2.62321, max_relative = 1e-5);
}
