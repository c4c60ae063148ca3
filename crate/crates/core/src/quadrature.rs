//! Quadrature over polygons by signed fan triangulation.
//!
//! A polygon is split into the triangle fan spanned from an apex
//! (normally the centroid) and a symmetric triangle rule is applied
//! to each fan triangle with its signed area. Signed areas make the
//! fan exact for polynomial integrands from any apex; for general
//! integrands the apex must see the whole cell, which the generated
//! mesh families guarantee.

use crate::geometry::Point2;

/// Symmetric triangle rules by polynomial exactness degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleRule {
    /// Edge midpoints, 3 points.
    Degree2,
    /// 6-point rule.
    Degree4,
    /// 12-point rule, used for oracle integrals.
    Degree6,
}

impl TriangleRule {
    /// Barycentric points and weights; weights sum to one.
    pub fn data(&self) -> (&'static [[f64; 3]], &'static [f64]) {
        match self {
            TriangleRule::Degree2 => (&DEG2_POINTS, &DEG2_WEIGHTS),
            TriangleRule::Degree4 => (&DEG4_POINTS, &DEG4_WEIGHTS),
            TriangleRule::Degree6 => (&DEG6_POINTS, &DEG6_WEIGHTS),
        }
    }
}

const DEG2_POINTS: [[f64; 3]; 3] = [[0.5, 0.5, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5]];
const DEG2_WEIGHTS: [f64; 3] = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];

const DEG4_A1: f64 = 0.445948490915965;
const DEG4_A2: f64 = 0.091576213509771;
const DEG4_W1: f64 = 0.223381589678011;
const DEG4_W2: f64 = 0.109951743655322;
const DEG4_POINTS: [[f64; 3]; 6] = [
    [DEG4_A1, DEG4_A1, 1.0 - 2.0 * DEG4_A1],
    [DEG4_A1, 1.0 - 2.0 * DEG4_A1, DEG4_A1],
    [1.0 - 2.0 * DEG4_A1, DEG4_A1, DEG4_A1],
    [DEG4_A2, DEG4_A2, 1.0 - 2.0 * DEG4_A2],
    [DEG4_A2, 1.0 - 2.0 * DEG4_A2, DEG4_A2],
    [1.0 - 2.0 * DEG4_A2, DEG4_A2, DEG4_A2],
];
const DEG4_WEIGHTS: [f64; 6] = [DEG4_W1, DEG4_W1, DEG4_W1, DEG4_W2, DEG4_W2, DEG4_W2];

const DEG6_A1: f64 = 0.249286745170910;
const DEG6_A2: f64 = 0.063089014491502;
const DEG6_B1: f64 = 0.310352451033785;
const DEG6_B2: f64 = 0.053145049844816;
const DEG6_B3: f64 = 1.0 - DEG6_B1 - DEG6_B2;
const DEG6_W1: f64 = 0.116786275726379;
const DEG6_W2: f64 = 0.050844906370207;
const DEG6_W3: f64 = 0.082851075618374;
const DEG6_POINTS: [[f64; 3]; 12] = [
    [DEG6_A1, DEG6_A1, 1.0 - 2.0 * DEG6_A1],
    [DEG6_A1, 1.0 - 2.0 * DEG6_A1, DEG6_A1],
    [1.0 - 2.0 * DEG6_A1, DEG6_A1, DEG6_A1],
    [DEG6_A2, DEG6_A2, 1.0 - 2.0 * DEG6_A2],
    [DEG6_A2, 1.0 - 2.0 * DEG6_A2, DEG6_A2],
    [1.0 - 2.0 * DEG6_A2, DEG6_A2, DEG6_A2],
    [DEG6_B1, DEG6_B2, DEG6_B3],
    [DEG6_B2, DEG6_B1, DEG6_B3],
    [DEG6_B1, DEG6_B3, DEG6_B2],
    [DEG6_B2, DEG6_B3, DEG6_B1],
    [DEG6_B3, DEG6_B1, DEG6_B2],
    [DEG6_B3, DEG6_B2, DEG6_B1],
];
const DEG6_WEIGHTS: [f64; 12] = [
    DEG6_W1, DEG6_W1, DEG6_W1, DEG6_W2, DEG6_W2, DEG6_W2,
    DEG6_W3, DEG6_W3, DEG6_W3, DEG6_W3, DEG6_W3, DEG6_W3,
];

/// Physical quadrature points and weights for one polygon.
///
/// Weights carry the signed triangle areas, so they sum to the
/// polygon area.
#[derive(Debug, Clone)]
pub struct PolygonQuadrature {
    pub points: Vec<Point2>,
    pub weights: Vec<f64>,
}

impl PolygonQuadrature {
    /// Builds the fan rule from `apex` over the vertex loop `pts`.
    pub fn from_fan(pts: &[Point2], apex: Point2, rule: TriangleRule) -> Self {
        let (bary, wts) = rule.data();
        let n = pts.len();
        let mut points = Vec::with_capacity(n * bary.len());
        let mut weights = Vec::with_capacity(n * bary.len());
        for i in 0..n {
            let b = pts[i];
            let c = pts[(i + 1) % n];
            let signed_area =
                0.5 * ((b.x - apex.x) * (c.y - apex.y) - (b.y - apex.y) * (c.x - apex.x));
            for (lambda, &w) in bary.iter().zip(wts) {
                points.push(Point2::new(
                    lambda[0] * apex.x + lambda[1] * b.x + lambda[2] * c.x,
                    lambda[0] * apex.y + lambda[1] * b.y + lambda[2] * c.y,
                ));
                weights.push(w * signed_area);
            }
        }
        Self { points, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, &w)| w * f(p.x, p.y))
            .sum()
    }
}

/// One-off integral of `f` over the polygon with the fan spanned from
/// the polygon centroid.
pub fn integrate_over_polygon(pts: &[Point2], rule: TriangleRule, f: impl Fn(f64, f64) -> f64) -> f64 {
    let apex = crate::geometry::polygon_geometry(pts).centroid;
    PolygonQuadrature::from_fan(pts, apex, rule).integrate(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_square() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ]
    }

    #[test]
    fn constant_over_unit_square() {
        for rule in [TriangleRule::Degree2, TriangleRule::Degree4, TriangleRule::Degree6] {
            assert_relative_eq!(
                integrate_over_polygon(&unit_square(), rule, |_, _| 1.0),
                1.0,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn rectangle_monomials_closed_form() {
        // ∫ x^a y^b over [0,2]×[0,1] = 2^(a+1)/(a+1) · 1/(b+1).
        let rect = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let cases: [(u32, u32, TriangleRule); 6] = [
            (1, 0, TriangleRule::Degree2),
            (2, 0, TriangleRule::Degree2),
            (1, 1, TriangleRule::Degree2),
            (3, 1, TriangleRule::Degree4),
            (2, 2, TriangleRule::Degree4),
            (4, 2, TriangleRule::Degree6),
        ];
        for (a, b, rule) in cases {
            let exact = 2f64.powi(a as i32 + 1) / f64::from(a + 1) / f64::from(b + 1);
            let got = integrate_over_polygon(&rect, rule, |x, y| {
                x.powi(a as i32) * y.powi(b as i32)
            });
            assert_relative_eq!(got, exact, max_relative = 1e-13);
        }
    }

    #[test]
    fn signed_fan_is_exact_from_outside_apex() {
        // Integrating a polynomial with the fan spanned from a point
        // far outside the square still gives the exact value.
        let apex = Point2::new(10.0, -3.0);
        let quad = PolygonQuadrature::from_fan(&unit_square(), apex, TriangleRule::Degree2);
        assert_relative_eq!(quad.integrate(|x, y| x * y), 0.25, max_relative = 1e-12);
        assert_relative_eq!(quad.weights.iter().sum::<f64>(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn random_hexagon_matches_monte_carlo() {
        // Degree-2 integrand over a convex hexagon vs rejection-sampled
        // Monte Carlo.
        let pts = vec![
            Point2::new(1.1, 0.0),
            Point2::new(0.6, 0.9),
            Point2::new(-0.5, 1.0),
            Point2::new(-1.0, 0.1),
            Point2::new(-0.6, -0.8),
            Point2::new(0.4, -0.9),
        ];
        let f = |x: f64, y: f64| 0.3 + 1.7 * x - 0.4 * y + 0.9 * x * x - 1.1 * x * y + 0.2 * y * y;
        let exact = integrate_over_polygon(&pts, TriangleRule::Degree2, f);

        let inside = |x: f64, y: f64| {
            let n = pts.len();
            (0..n).all(|i| {
                let a = pts[i];
                let b = pts[(i + 1) % n];
                (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) >= 0.0
            })
        };
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n_samples = 10_000;
        let (mut sum, mut sum_sq, mut hits) = (0.0, 0.0, 0usize);
        for _ in 0..n_samples {
            let x = rng.random_range(-1.1..1.2);
            let y = rng.random_range(-1.0..1.1);
            if inside(x, y) {
                let v = f(x, y);
                sum += v;
                sum_sq += v * v;
                hits += 1;
            }
        }
        let box_area = 2.3 * 2.1;
        let p = hits as f64 / n_samples as f64;
        let mean = sum / hits as f64;
        let mc = box_area * p * mean;
        // Rough standard error of the box estimator.
        let var_f = (sum_sq / hits as f64 - mean * mean).max(0.0);
        let se = box_area * ((p * var_f + mean * mean * p * (1.0 - p)) / n_samples as f64).sqrt();
        assert!((mc - exact).abs() <= 3.0 * se, "mc {mc}, exact {exact}, se {se}");
    }
}
