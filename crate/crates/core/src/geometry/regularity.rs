//! Mesh quality report: shortest-edge ratio and a star-shapedness
//! estimate per cell.

use super::{polygon_geometry, Point2, PolygonalMesh};

/// Worst-case shape quality over all cells.
///
/// `star_shaped_estimate` is the radius of the largest ball contained
/// in the cell's kernel (the intersection of the inner half-planes of
/// its edges) divided by the cell diameter. For convex cells this is
/// the ordinary Chebyshev inradius ratio; for nonconvex cells it is a
/// valid star-shapedness radius. It is an estimate of mesh quality,
/// not a sharp regularity constant.
#[derive(Debug, Clone, Copy)]
pub struct RegularityReport {
    pub min_edge_to_diameter_ratio: f64,
    pub star_shaped_estimate: f64,
    pub worst_cell_id: usize,
}

/// Scans all cells and reports the worst edge ratio and kernel-ball
/// ratio. `worst_cell_id` is the cell attaining the smaller of the
/// two per-cell quality numbers.
pub fn check_regularity(mesh: &PolygonalMesh) -> RegularityReport {
    let mut min_edge_ratio = f64::INFINITY;
    let mut min_star = f64::INFINITY;
    let mut worst_cell_id = 0;
    let mut worst_quality = f64::INFINITY;

    for cell_id in 0..mesh.n_cells() {
        let pts = mesh.cell_points(cell_id);
        let geo = polygon_geometry(&pts);
        let h = geo.diameter;

        let n = pts.len();
        let mut min_edge = f64::INFINITY;
        for i in 0..n {
            min_edge = min_edge.min(pts[i].distance(&pts[(i + 1) % n]));
        }
        let edge_ratio = min_edge / h;
        let star_ratio = kernel_chebyshev_radius(&pts) / h;

        min_edge_ratio = min_edge_ratio.min(edge_ratio);
        min_star = min_star.min(star_ratio);
        let quality = edge_ratio.min(star_ratio);
        if quality < worst_quality {
            worst_quality = quality;
            worst_cell_id = cell_id;
        }
    }

    RegularityReport {
        min_edge_to_diameter_ratio: min_edge_ratio,
        star_shaped_estimate: min_star,
        worst_cell_id,
    }
}

/// Radius of the largest ball inside the polygon kernel.
///
/// The kernel of a simple polygon is the intersection of the inner
/// half-planes of its edges, so the largest inscribed ball solves the
/// small linear program max ρ s.t. n_e·p − d_e ≥ ρ for all edges.
/// With at most a handful of edges per cell the optimum is found by
/// enumerating active constraint triples.
pub fn kernel_chebyshev_radius(pts: &[Point2]) -> f64 {
    let n = pts.len();
    // Inner unit normal and offset of each edge line: n·p ≥ d inside.
    let mut normals = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let len = a.distance(&b);
        // CCW loop: inner normal is the left normal of the edge.
        let nx = -(b.y - a.y) / len;
        let ny = (b.x - a.x) / len;
        normals.push((nx, ny));
        offsets.push(nx * a.x + ny * a.y);
    }

    let feasible_radius = |px: f64, py: f64| -> f64 {
        let mut r = f64::INFINITY;
        for k in 0..n {
            r = r.min(normals[k].0 * px + normals[k].1 * py - offsets[k]);
        }
        r
    };

    let mut best: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                // Active set {i,j,k}: solve n_e·p − ρ = d_e.
                let m = nalgebra::Matrix3::new(
                    normals[i].0, normals[i].1, -1.0,
                    normals[j].0, normals[j].1, -1.0,
                    normals[k].0, normals[k].1, -1.0,
                );
                let rhs = nalgebra::Vector3::new(offsets[i], offsets[j], offsets[k]);
                if let Some(sol) = m.lu().solve(&rhs) {
                    let rho = feasible_radius(sol.x, sol.y);
                    best = best.max(rho);
                }
            }
        }
    }
    best.max(0.0)
}
