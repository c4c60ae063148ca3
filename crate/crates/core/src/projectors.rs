//! Element-local projection operators onto linear polynomials.
//!
//! Both projectors act on vertex dof vectors and return coefficients
//! in the scaled monomial basis:
//!
//! * the oblique projector `Π̃ = (DᵀD)⁻¹Dᵀ`, orthogonal for the
//!   discrete vertex-value inner product and the operator behind the
//!   mass bilinear form and the load functional,
//! * the elliptic projector `Π∇`, orthogonal for the H¹ seminorm,
//!   with the constant mode fixed by the boundary mean; all of its
//!   boundary integrals are exact trapezoid sums because edge traces
//!   are linear.

use crate::basis::ScaledMonomialBasis;
use crate::geometry::Point2;
use nalgebra::{DMatrix, Matrix3, Vector3};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProjectorError {
    #[error("singular element: vertices are collinear")]
    SingularElement,
}

/// Dof matrix `D`: row `i` holds `(m_1(x_i), m_2(x_i), m_3(x_i))`.
pub fn build_d(basis: &ScaledMonomialBasis, points: &[Point2]) -> DMatrix<f64> {
    let n = points.len();
    let mut d = DMatrix::zeros(n, 3);
    for (i, &p) in points.iter().enumerate() {
        d[(i, 0)] = 1.0;
        d[(i, 1)] = basis.eval(2, p);
        d[(i, 2)] = basis.eval(3, p);
    }
    d
}

/// Condition number of the 3×3 normal matrix `DᵀD`, for diagnostics.
pub fn normal_matrix_condition(d: &DMatrix<f64>) -> f64 {
    let dtd = d.transpose() * d;
    let sv = dtd.svd(false, false).singular_values;
    let smin = sv[2];
    if smin > 0.0 {
        sv[0] / smin
    } else {
        f64::INFINITY
    }
}

/// Oblique projector `Π̃ = (DᵀD)⁻¹Dᵀ` (3×N), mapping vertex dofs to
/// monomial coefficients. The normal equations are solved by pivoted
/// LU of the 3×3 normal matrix.
pub fn build_oblique_projector(d: &DMatrix<f64>) -> Result<DMatrix<f64>, ProjectorError> {
    let dtd: Matrix3<f64> = nalgebra::convert(d.transpose() * d);
    let lu = dtd.lu();
    let inv = lu.try_inverse().ok_or(ProjectorError::SingularElement)?;
    let n = d.nrows();
    let mut proj = DMatrix::zeros(3, n);
    let dt = d.transpose();
    for col in 0..n {
        let rhs = Vector3::new(dt[(0, col)], dt[(1, col)], dt[(2, col)]);
        let sol = inv * rhs;
        for row in 0..3 {
            proj[(row, col)] = sol[row];
        }
    }
    Ok(proj)
}

/// Elliptic projector `Π∇` (3×N).
///
/// Rows 2 and 3 of the defining system are the seminorm orthogonality
/// conditions `∫_P ∇(Π∇v)·∇m_k = ∫_∂P v ∂m_k/∂n` (the test monomials
/// are harmonic); row 1 pins the constant mode by the boundary mean.
/// Because edge traces of both dofs and monomials are linear, every
/// boundary integral is an exact trapezoid sum over edges.
pub fn build_elliptic_projector(
    basis: &ScaledMonomialBasis,
    points: &[Point2],
    g: &Matrix3<f64>,
) -> Result<DMatrix<f64>, ProjectorError> {
    let n = points.len();
    let mut perimeter = 0.0;
    let mut edge_len = vec![0.0; n];
    for i in 0..n {
        edge_len[i] = points[i].distance(&points[(i + 1) % n]);
        perimeter += edge_len[i];
    }

    // System matrix: boundary means of the monomials on the first
    // row, gradient moments below.
    let mut sys = *g;
    for k in 0..3 {
        let mut bmean = 0.0;
        for i in 0..n {
            let a = points[i];
            let b = points[(i + 1) % n];
            bmean += edge_len[i] * 0.5 * (basis.eval(k + 1, a) + basis.eval(k + 1, b));
        }
        sys[(0, k)] = bmean / perimeter;
    }

    let mut rhs = DMatrix::zeros(3, n);
    for j in 0..n {
        let prev = (j + n - 1) % n;
        // Boundary-mean weight of the hat function at vertex j.
        rhs[(0, j)] = 0.5 * (edge_len[prev] + edge_len[j]) / perimeter;
        // ∫_∂P φ_j ∂m_k/∂n collapses to the averaged outward edge
        // normals of the two incident edges.
        let before = points[prev];
        let after = points[(j + 1) % n];
        let nx = 0.5 * (after.y - before.y);
        let ny = 0.5 * (before.x - after.x);
        for k in 1..3 {
            let grad = basis.gradient(k + 1);
            rhs[(k, j)] = grad.0 * nx + grad.1 * ny;
        }
    }

    let inv = sys.lu().try_inverse().ok_or(ProjectorError::SingularElement)?;
    let mut proj = DMatrix::zeros(3, n);
    for col in 0..n {
        let r = Vector3::new(rhs[(0, col)], rhs[(1, col)], rhs[(2, col)]);
        let sol = inv * r;
        for row in 0..3 {
            proj[(row, col)] = sol[row];
        }
    }
    Ok(proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::build_g;
    use crate::geometry::polygon_geometry;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn operators(pts: &[Point2]) -> (ScaledMonomialBasis, DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
        let geo = polygon_geometry(pts);
        let basis = ScaledMonomialBasis::from_geometry(&geo);
        let d = build_d(&basis, pts);
        let oblique = build_oblique_projector(&d).unwrap();
        let g = build_g(&basis, geo.area);
        let elliptic = build_elliptic_projector(&basis, pts, &g).unwrap();
        (basis, d, oblique, elliptic)
    }

    fn square() -> Vec<Point2> {
        vec![
            Point2::new(-1.0, -1.0),
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 1.0),
            Point2::new(-1.0, 1.0),
        ]
    }

    #[test]
    fn d_matrix_square_entries() {
        let pts = square();
        let geo = polygon_geometry(&pts);
        let basis = ScaledMonomialBasis::from_geometry(&geo);
        let d = build_d(&basis, &pts);
        // Centroid at origin, h = 2√2: scaled coordinates ±1/(2√2).
        let v = 1.0 / (2.0 * 2f64.sqrt());
        for i in 0..4 {
            assert_eq!(d[(i, 0)], 1.0);
            assert_relative_eq!(d[(i, 1)].abs(), v, max_relative = 1e-15);
            assert_relative_eq!(d[(i, 2)].abs(), v, max_relative = 1e-15);
        }
    }

    #[test]
    fn oblique_recovers_monomial_coefficients() {
        let pts = square();
        let (_, d, oblique, _) = operators(&pts);
        // Dofs of m_2 are the second column of D.
        let m2_dofs = d.column(1).into_owned();
        let zeta = &oblique * m2_dofs;
        assert_relative_eq!(zeta[0], 0.0, epsilon = 1e-14);
        assert_relative_eq!(zeta[1], 1.0, epsilon = 1e-14);
        assert_relative_eq!(zeta[2], 0.0, epsilon = 1e-14);

        let ones = nalgebra::DVector::from_element(4, 1.0);
        let zeta = &oblique * ones;
        assert_relative_eq!(zeta[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(zeta[1], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn projectors_invert_d_on_triangles() {
        let pts = vec![
            Point2::new(0.2, -0.1),
            Point2::new(1.3, 0.4),
            Point2::new(0.5, 1.2),
        ];
        let (_, d, oblique, elliptic) = operators(&pts);
        let d_inv = nalgebra::convert::<_, Matrix3<f64>>(d.clone())
            .try_inverse()
            .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(oblique[(i, j)], d_inv[(i, j)], epsilon = 1e-12);
                assert_relative_eq!(elliptic[(i, j)], d_inv[(i, j)], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn collinear_vertices_are_singular() {
        let pts = vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.5, 0.0),
            Point2::new(1.0, 0.0),
        ];
        let geo = crate::geometry::ElementGeometry {
            centroid: Point2::new(0.5, 0.0),
            diameter: 1.0,
            area: 0.0,
            n_vertices: 3,
        };
        let basis = ScaledMonomialBasis::from_geometry(&geo);
        let d = build_d(&basis, &pts);
        assert!(matches!(
            build_oblique_projector(&d),
            Err(ProjectorError::SingularElement)
        ));
    }

    #[test]
    fn discrete_inner_product_weight_cancels() {
        // Building the normal equations with the |P|-weighted discrete
        // inner product gives the same projector.
        let pts = vec![
            Point2::new(0.1, 0.0),
            Point2::new(1.2, 0.3),
            Point2::new(0.9, 1.4),
            Point2::new(-0.2, 0.8),
            Point2::new(-0.4, 0.2),
        ];
        let geo = polygon_geometry(&pts);
        let basis = ScaledMonomialBasis::from_geometry(&geo);
        let d = build_d(&basis, &pts);
        let plain = build_oblique_projector(&d).unwrap();

        let w = geo.area;
        let dtd_w: Matrix3<f64> = nalgebra::convert(d.transpose() * &d * w);
        let inv = dtd_w.try_inverse().unwrap();
        let weighted = {
            let mut p = DMatrix::zeros(3, pts.len());
            let dt = d.transpose() * w;
            for col in 0..pts.len() {
                let sol = inv * Vector3::new(dt[(0, col)], dt[(1, col)], dt[(2, col)]);
                for row in 0..3 {
                    p[(row, col)] = sol[row];
                }
            }
            p
        };
        for i in 0..3 {
            for j in 0..pts.len() {
                assert_relative_eq!(plain[(i, j)], weighted[(i, j)], epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn elliptic_gradient_orthogonality() {
        // For each dof basis vector φ and k = 2,3 the boundary
        // integral of φ against ∂m_k/∂n equals row k of G·Π∇φ.
        let pts = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.1, -0.1),
            Point2::new(1.4, 0.9),
            Point2::new(0.6, 1.3),
            Point2::new(-0.3, 0.7),
        ];
        let geo = polygon_geometry(&pts);
        let basis = ScaledMonomialBasis::from_geometry(&geo);
        let g = build_g(&basis, geo.area);
        let elliptic = build_elliptic_projector(&basis, &pts, &g).unwrap();
        let n = pts.len();
        for j in 0..n {
            let mut phi = nalgebra::DVector::zeros(n);
            phi[j] = 1.0;
            let g_pi = g * Vector3::from_iterator((&elliptic * &phi).iter().copied());
            for k in 1..3 {
                // Trapezoid boundary integral of the hat function.
                let prev = (j + n - 1) % n;
                let before = pts[prev];
                let after = pts[(j + 1) % n];
                let nx = 0.5 * (after.y - before.y);
                let ny = 0.5 * (before.x - after.x);
                let grad = basis.gradient(k + 1);
                let boundary = grad.0 * nx + grad.1 * ny;
                assert_relative_eq!(g_pi[k], boundary, epsilon = 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn projector_identities_on_random_cells(
            pts in crate::basis::tests::star_polygon_strategy()
        ) {
            let geo = polygon_geometry(&pts);
            prop_assume!(geo.area > 1e-3);
            let (_, d, oblique, elliptic) = operators(&pts);
            let n = pts.len();

            let id3 = &oblique * &d;
            let id3e = &elliptic * &d;
            for i in 0..3 {
                for j in 0..3 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((id3[(i, j)] - expect).abs() < 1e-11);
                    prop_assert!((id3e[(i, j)] - expect).abs() < 1e-11);
                }
            }

            // Idempotence of the dof-space projection D·Π̃.
            let p = &d * &oblique;
            let p2 = &p * &p;
            for i in 0..n {
                for j in 0..n {
                    prop_assert!((p2[(i, j)] - p[(i, j)]).abs() < 1e-11);
                }
            }
        }
    }
}
