//! Rectangular-ish sampling grids over the parameter domain.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, SQRT_2};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::octagon::{lower_a, OctagonParams};

/// `n_alpha` cell-centred values of `α̃` and, for each, `n_a` cell-centred
/// values of `a` between the domain bounds shrunk by `margin`.
///
/// Points are ordered by `α̃` first, then `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainGrid {
    pub n_a: usize,
    pub n_alpha: usize,
    pub margin: f64,
    pub points: Vec<OctagonParams>,
}

impl DomainGrid {
    pub fn new(n_a: usize, n_alpha: usize, margin: f64) -> Result<DomainGrid> {
        if n_a == 0 || n_alpha == 0 {
            return Err(Error::InvalidGrid {
                reason: "grid dimensions must be positive",
            });
        }
        if !(0.0..0.5).contains(&margin) {
            return Err(Error::InvalidGrid {
                reason: "margin must lie in [0, 0.5)",
            });
        }
        // a-range [lower(α̃) + m, 1 − m] is non-empty iff cos α̃ > 1/(√2(1 − 2m))
        let arg = 1.0 / (SQRT_2 * (1.0 - 2.0 * margin));
        if arg >= 1.0 {
            return Err(Error::InvalidGrid {
                reason: "margin leaves no admissible points",
            });
        }
        let limit = (FRAC_PI_4 - margin).min(arg.acos());
        if !(limit > 0.0) {
            return Err(Error::InvalidGrid {
                reason: "margin leaves no admissible points",
            });
        }
        let mut points = Vec::with_capacity(n_a * n_alpha);
        for j in 0..n_alpha {
            let at = -limit + 2.0 * limit * (j as f64 + 0.5) / n_alpha as f64;
            let lo = lower_a(at) + margin;
            let hi = 1.0 - margin;
            for i in 0..n_a {
                let a = lo + (hi - lo) * (i as f64 + 0.5) / n_a as f64;
                if let Ok(p) = OctagonParams::with_margin(a, at, margin) {
                    points.push(p);
                }
            }
        }
        if points.is_empty() {
            return Err(Error::InvalidGrid {
                reason: "no admissible points",
            });
        }
        Ok(DomainGrid {
            n_a,
            n_alpha,
            margin,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_grid_in_domain() {
        let g = DomainGrid::new(20, 20, 0.02).unwrap();
        assert_eq!(g.len(), 400);
        let g0 = DomainGrid::new(5, 7, 0.0).unwrap();
        assert_eq!(g0.len(), 35);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(DomainGrid::new(0, 3, 0.0).is_err());
        assert!(DomainGrid::new(3, 3, 0.3).is_err());
        assert!(DomainGrid::new(3, 3, f64::NAN).is_err());
    }
}
