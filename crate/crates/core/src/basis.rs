//! Scaled monomial basis of the local linear polynomial space and its
//! moment matrices.
//!
//! On a cell with centroid `(x_P, y_P)` and diameter `h_P` the basis
//! is `m_1 = 1`, `m_2 = (x - x_P)/h_P`, `m_3 = (y - y_P)/h_P`. The
//! matrices built here are
//!
//! * `H`, with `H_ij = ∫_P m_i m_j`, integrated exactly with the
//!   degree-2 fan rule,
//! * `G`, with `G_ij = ∫_P ∇m_i·∇m_j`, assembled in closed form from
//!   the constant gradients.

use crate::geometry::{ElementGeometry, Point2};
use crate::quadrature::{PolygonQuadrature, TriangleRule};
use nalgebra::Matrix3;

/// Monomial scaling data of one element.
#[derive(Debug, Clone, Copy)]
pub struct ScaledMonomialBasis {
    pub centroid: Point2,
    pub h_scale: f64,
}

impl ScaledMonomialBasis {
    pub fn from_geometry(geo: &ElementGeometry) -> Self {
        assert!(geo.diameter > 0.0, "degenerate element");
        Self { centroid: geo.centroid, h_scale: geo.diameter }
    }

    /// Evaluates `m_k` at `p`; `k` is the 1-based basis index.
    ///
    /// Panics if `k` is not 1, 2 or 3.
    pub fn eval(&self, k: usize, p: Point2) -> f64 {
        match k {
            1 => 1.0,
            2 => (p.x - self.centroid.x) / self.h_scale,
            3 => (p.y - self.centroid.y) / self.h_scale,
            _ => panic!("monomial index {k} out of range 1..=3"),
        }
    }

    /// Constant gradient of `m_k` over the element.
    ///
    /// Panics if `k` is not 1, 2 or 3.
    pub fn gradient(&self, k: usize) -> (f64, f64) {
        match k {
            1 => (0.0, 0.0),
            2 => (1.0 / self.h_scale, 0.0),
            3 => (0.0, 1.0 / self.h_scale),
            _ => panic!("monomial index {k} out of range 1..=3"),
        }
    }
}

/// Exact integral of a polynomial of total degree ≤ 2 given by its
/// coefficients against `(m_1, m_2, m_3, m_2², m_2·m_3, m_3²)`.
pub fn integrate_scaled_poly(
    basis: &ScaledMonomialBasis,
    points: &[Point2],
    coeffs: &[f64; 6],
) -> f64 {
    let quad = PolygonQuadrature::from_fan(points, basis.centroid, TriangleRule::Degree2);
    quad.integrate(|x, y| {
        let p = Point2::new(x, y);
        let m2 = basis.eval(2, p);
        let m3 = basis.eval(3, p);
        coeffs[0] + coeffs[1] * m2 + coeffs[2] * m3
            + coeffs[3] * m2 * m2
            + coeffs[4] * m2 * m3
            + coeffs[5] * m3 * m3
    })
}

/// Moment matrix `H_ij = ∫_P m_i m_j`. Symmetric positive definite
/// with `H_11 = |P|`.
pub fn build_h(basis: &ScaledMonomialBasis, points: &[Point2]) -> Matrix3<f64> {
    let quad = PolygonQuadrature::from_fan(points, basis.centroid, TriangleRule::Degree2);
    let mut h = Matrix3::zeros();
    for (p, &w) in quad.points.iter().zip(&quad.weights) {
        let m = [1.0, basis.eval(2, *p), basis.eval(3, *p)];
        for i in 0..3 {
            for j in i..3 {
                h[(i, j)] += w * m[i] * m[j];
            }
        }
    }
    for i in 0..3 {
        for j in 0..i {
            h[(i, j)] = h[(j, i)];
        }
    }
    h
}

/// Gradient moment matrix `G_ij = ∫_P ∇m_i·∇m_j`, in closed form:
/// zero first row and column and `G_22 = G_33 = |P|/h_P²`.
pub fn build_g(basis: &ScaledMonomialBasis, area: f64) -> Matrix3<f64> {
    let s = area / (basis.h_scale * basis.h_scale);
    Matrix3::new(0.0, 0.0, 0.0, 0.0, s, 0.0, 0.0, 0.0, s)
}
