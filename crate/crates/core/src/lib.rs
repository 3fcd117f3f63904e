//! Numerics for the two-parameter family of symmetric genus-2 hyperbolic
//! octagons in the Poincaré disk.
//!
//! An octagon is fixed by a pair `(a, α̃)`: vertices sit at `a·iᵏ` and
//! `b·e^{i(α + kπ/2)}` with `α = α̃ + π/4` and `b = 1/(√2·a·cos α̃)`. From that
//! pair the crate builds
//!
//! * the octagon geometry (side circles, angles, midpoints, perimeter),
//! * the side-pairing Fuchsian group and balls in its Cayley graph,
//! * Fenchel–Nielsen lengths and twists for two pants decompositions,
//! * the Weil–Petersson symplectic form on the parameter domain,
//! * isoperimetric orbits `P = const` and the Weil–Petersson area they enclose.
//!
//! Most quantities come with a second, independent route (matrix traces,
//! vertex distances, finite differences, 2-D quadrature) so that every closed
//! form can be cross-checked numerically.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod disk;
pub mod error;
pub mod fenchel_nielsen;
pub mod fit;
pub mod grid;
pub mod group;
pub mod isoperimetric;
pub mod octagon;
pub mod quadrature;

pub use disk::{
    dist, geodesic_point, half_turn, m_half_turn, rotation, Classification, Complex, DiskPoint,
    GeodesicArc, Mobius,
};
pub use error::{DomainBound, Error, Result};
pub use fenchel_nielsen::{
    fn_lengths, fn_twists, length_oracles, lt_relations_check, pants_data, primed_fn,
    trace_params, trace_params_closed, twist_arccosh_argument, wp_coefficient, wp_fd_check,
    Decomposition, FdOptions, LtReport, PantsData, TraceParams, WpFdReport, WpFormValue,
};
pub use grid::DomainGrid;
pub use group::{
    ball, cells, generators, side_pairing_check, Ball, BallElement, BallOptions, Cell,
    GeneratorSet, Letter, SidePairingReport, Word,
};
pub use isoperimetric::{
    a_extremes, a_reg, asymptotic_orbit, e_of_a, e_of_p, e_reg, orbit, orbit_point, p_of_e,
    p_reg, parabola_fit, reduced_f, sample_perimeters, wp_area, wp_area_2d, AreaResult,
    OrbitSample, ParabolaFit,
};
pub use octagon::{
    build_geometry, interior_angles_numeric, perimeter, perimeter_numeric, validate_params,
    OctagonGeometry, OctagonParams,
};
