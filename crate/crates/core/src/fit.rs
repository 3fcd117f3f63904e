//! Least squares for `y ≈ c₁x² + c₂x` (no constant term).

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    /// Coefficient of `x²`.
    pub c1: f64,
    /// Coefficient of `x`.
    pub c2: f64,
    /// Euclidean norm of the residual vector.
    pub residual_norm: f64,
}

impl QuadraticFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.c1 * x * x + self.c2 * x
    }
}

/// Solves the two-column problem by modified Gram–Schmidt (thin QR).
pub fn fit_quadratic_through_origin(xs: &[f64], ys: &[f64]) -> Result<QuadraticFit> {
    let n = xs.len().min(ys.len());
    if n < 3 {
        return Err(Error::InsufficientSamples { got: n, needed: 3 });
    }
    let col1: Vec<f64> = xs[..n].iter().map(|x| x * x).collect();
    let col2: Vec<f64> = xs[..n].to_vec();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(p, q)| p * q).sum::<f64>();

    let r11 = dot(&col1, &col1).sqrt();
    let q1: Vec<f64> = col1.iter().map(|x| x / r11).collect();
    let r12 = dot(&q1, &col2);
    let w: Vec<f64> = col2.iter().zip(&q1).map(|(c, q)| c - r12 * q).collect();
    let r22 = dot(&w, &w).sqrt();
    if !(r11 > 0.0 && r22 > 1e-14 * r11.max(1.0)) {
        return Err(Error::InsufficientSamples { got: n, needed: 3 });
    }
    let q2: Vec<f64> = w.iter().map(|x| x / r22).collect();
    let y = &ys[..n];
    let b1 = dot(&q1, y);
    let b2 = dot(&q2, y);
    let c2 = b2 / r22;
    let c1 = (b1 - r12 * c2) / r11;
    let fit = QuadraticFit {
        c1,
        c2,
        residual_norm: 0.0,
    };
    let residual_norm = xs[..n]
        .iter()
        .zip(y)
        .map(|(&x, &y)| (y - fit.eval(x)).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(QuadraticFit {
        residual_norm,
        ..fit
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_parabola() {
        let xs: Vec<f64> = (0..34).map(|k| k as f64 * 0.5).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.05622 * x * x + 2.62132 * x).collect();
        let fit = fit_quadratic_through_origin(&xs, &ys).unwrap();
        assert!((fit.c1 - 0.05622).abs() < 1e-12);
        assert!((fit.c2 - 2.62132).abs() < 1e-12);
        assert!(fit.residual_norm < 1e-11);
    }

    #[test]
    fn too_few_samples() {
        assert_eq!(
            fit_quadratic_through_origin(&[1.0, 2.0], &[1.0, 2.0]),
            Err(Error::InsufficientSamples { got: 2, needed: 3 })
        );
    }

    #[test]
    fn degenerate_columns() {
        // all x equal: x and x² are parallel
        assert!(fit_quadratic_through_origin(&[2.0; 5], &[1.0; 5]).is_err());
    }
}
