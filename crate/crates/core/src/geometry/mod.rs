//! Polygonal mesh representation, element geometry and mesh quality.
//!
//! A mesh is a flat list of vertices plus cells given as
//! counterclockwise vertex index loops. Meshes are immutable after
//! construction; [`PolygonalMesh::new`] validates every structural
//! invariant (simple positively-oriented cells, conforming edges,
//! exact coverage of the domain rectangle) and derives boundary flags
//! and the mesh size.

mod generators;
mod io;
mod regularity;

pub use generators::{
    generate_distorted_quad_mesh, generate_nonconvex_mesh, generate_triangle_mesh,
    generate_voronoi_mesh,
};
pub use io::{read_mesh, write_mesh, MeshIoError};
pub use regularity::{check_regularity, RegularityReport};

use std::collections::HashMap;
use thiserror::Error;

/// Relative tolerance for the cell-areas-cover-the-domain invariant.
pub const COVERAGE_RTOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("cell {cell}: fewer than 3 vertices")]
    TooFewVertices { cell: usize },
    #[error("cell {cell}: vertex index {index} out of range")]
    DanglingVertexIndex { cell: usize, index: usize },
    #[error("cell {cell}: consecutive vertices coincide")]
    RepeatedVertex { cell: usize },
    #[error("cell {cell}: degenerate (zero or negative area)")]
    DegenerateCell { cell: usize },
    #[error("cell {cell}: boundary self-intersects")]
    SelfIntersection { cell: usize },
    #[error("edge ({a},{b}) is shared by more than two cells or repeats an orientation")]
    NonConformingEdge { a: usize, b: usize },
    #[error("cell areas sum to {sum} but the domain area is {expected}")]
    CoverageMismatch { sum: f64, expected: f64 },
    #[error("invalid argument: {0}")]
    InvalidParameter(String),
    #[error("mesh generation failed: {0}")]
    GenerationFailed(String),
}

/// A point of the plane, in domain length units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Axis-aligned rectangular domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl Rect {
    pub fn new(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Self {
        assert!(xmax > xmin && ymax > ymin, "empty rectangle");
        Self { xmin, ymin, xmax, ymax }
    }

    /// The unit test domain used throughout: `[-1,1]²`.
    pub fn symmetric_unit() -> Self {
        Self::new(-1.0, -1.0, 1.0, 1.0)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }
}

/// One polygonal cell as a counterclockwise loop of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonalCell {
    pub vertex_ids: Vec<usize>,
}

impl PolygonalCell {
    pub fn new(vertex_ids: Vec<usize>) -> Self {
        Self { vertex_ids }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    /// Edges as (tail, head) vertex index pairs, in loop order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertex_ids.len();
        (0..n).map(move |i| (self.vertex_ids[i], self.vertex_ids[(i + 1) % n]))
    }
}

/// Centroid, diameter, area and vertex count of one cell.
#[derive(Debug, Clone, Copy)]
pub struct ElementGeometry {
    pub centroid: Point2,
    pub diameter: f64,
    pub area: f64,
    pub n_vertices: usize,
}

/// An immutable conforming polygonal mesh of a rectangular domain.
#[derive(Debug, Clone)]
pub struct PolygonalMesh {
    vertices: Vec<Point2>,
    cells: Vec<PolygonalCell>,
    boundary_vertex_flags: Vec<bool>,
    mesh_size_h: f64,
    domain: Rect,
}

impl PolygonalMesh {
    /// Builds a mesh and checks every structural invariant.
    pub fn new(
        vertices: Vec<Point2>,
        cells: Vec<PolygonalCell>,
        domain: Rect,
    ) -> Result<Self, GeometryError> {
        for p in &vertices {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(GeometryError::InvalidParameter(
                    "non-finite vertex coordinate".into(),
                ));
            }
        }

        let mut area_sum = 0.0;
        let mut mesh_size_h: f64 = 0.0;
        for (cell_id, cell) in cells.iter().enumerate() {
            validate_cell(&vertices, cell, cell_id)?;
            let geo = element_geometry_unchecked(&vertices, cell);
            area_sum += geo.area;
            mesh_size_h = mesh_size_h.max(geo.diameter);
        }

        // Edge conformity: every directed edge occurs once, and its
        // reverse occurs at most once (interior edge) or never (boundary).
        let mut directed: HashMap<(usize, usize), u8> = HashMap::new();
        for cell in &cells {
            for (a, b) in cell.edges() {
                let count = directed.entry((a, b)).or_insert(0);
                *count += 1;
                if *count > 1 {
                    return Err(GeometryError::NonConformingEdge { a, b });
                }
            }
        }
        let mut boundary_vertex_flags = vec![false; vertices.len()];
        for (&(a, b), _) in directed.iter() {
            if !directed.contains_key(&(b, a)) {
                boundary_vertex_flags[a] = true;
                boundary_vertex_flags[b] = true;
            }
        }

        let expected = domain.area();
        if (area_sum - expected).abs() > COVERAGE_RTOL * expected {
            return Err(GeometryError::CoverageMismatch { sum: area_sum, expected });
        }

        Ok(Self { vertices, cells, boundary_vertex_flags, mesh_size_h, domain })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn cells(&self) -> &[PolygonalCell] {
        &self.cells
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn boundary_vertex_flags(&self) -> &[bool] {
        &self.boundary_vertex_flags
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex_flags[v]
    }

    /// Maximum element diameter.
    pub fn mesh_size_h(&self) -> f64 {
        self.mesh_size_h
    }

    pub fn domain(&self) -> Rect {
        self.domain
    }

    /// Vertex coordinates of one cell, in loop order.
    pub fn cell_points(&self, cell_id: usize) -> Vec<Point2> {
        self.cells[cell_id]
            .vertex_ids
            .iter()
            .map(|&v| self.vertices[v])
            .collect()
    }
}

/// Computes centroid, area, diameter and vertex count of one cell.
///
/// Area is the shoelace formula, the centroid the standard polygon
/// centroid, and the diameter the maximum pairwise vertex distance.
pub fn compute_element_geometry(
    mesh: &PolygonalMesh,
    cell_id: usize,
) -> Result<ElementGeometry, GeometryError> {
    let cell = mesh
        .cells
        .get(cell_id)
        .ok_or(GeometryError::InvalidParameter(format!("no cell {cell_id}")))?;
    let geo = element_geometry_unchecked(&mesh.vertices, cell);
    if geo.area <= 0.0 {
        return Err(GeometryError::DegenerateCell { cell: cell_id });
    }
    Ok(geo)
}

/// Same as [`compute_element_geometry`] but for a bare point loop.
pub fn polygon_geometry(points: &[Point2]) -> ElementGeometry {
    let ids: Vec<usize> = (0..points.len()).collect();
    element_geometry_unchecked(points, &PolygonalCell::new(ids))
}

fn element_geometry_unchecked(vertices: &[Point2], cell: &PolygonalCell) -> ElementGeometry {
    let pts: Vec<Point2> = cell.vertex_ids.iter().map(|&v| vertices[v]).collect();
    let n = pts.len();

    let mut twice_area = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        let cross = p.x * q.y - q.x * p.y;
        twice_area += cross;
        cx += (p.x + q.x) * cross;
        cy += (p.y + q.y) * cross;
    }
    let area = 0.5 * twice_area;
    let centroid = if area.abs() > 0.0 {
        Point2::new(cx / (6.0 * area), cy / (6.0 * area))
    } else {
        Point2::new(f64::NAN, f64::NAN)
    };

    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            diameter = diameter.max(pts[i].distance(&pts[j]));
        }
    }

    ElementGeometry { centroid, diameter, area, n_vertices: n }
}

fn validate_cell(
    vertices: &[Point2],
    cell: &PolygonalCell,
    cell_id: usize,
) -> Result<(), GeometryError> {
    let n = cell.vertex_ids.len();
    if n < 3 {
        return Err(GeometryError::TooFewVertices { cell: cell_id });
    }
    for &v in &cell.vertex_ids {
        if v >= vertices.len() {
            return Err(GeometryError::DanglingVertexIndex { cell: cell_id, index: v });
        }
    }
    let pts: Vec<Point2> = cell.vertex_ids.iter().map(|&v| vertices[v]).collect();
    for i in 0..n {
        let q = pts[(i + 1) % n];
        if pts[i].x == q.x && pts[i].y == q.y {
            return Err(GeometryError::RepeatedVertex { cell: cell_id });
        }
    }

    let geo = element_geometry_unchecked(vertices, cell);
    if !(geo.area > 0.0) {
        return Err(GeometryError::DegenerateCell { cell: cell_id });
    }

    // Simplicity: no two non-adjacent edges may intersect.
    for i in 0..n {
        let (a1, b1) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 1)..n {
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (a2, b2) = (pts[j], pts[(j + 1) % n]);
            if segments_intersect(a1, b1, a2, b2) {
                return Err(GeometryError::SelfIntersection { cell: cell_id });
            }
        }
    }
    Ok(())
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Closed-segment intersection test via orientation signs.
fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Point2, q: Point2, r: Point2| -> bool {
        orient(p, q, r) == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(c, d, a) || on(c, d, b) || on(a, b, c) || on(a, b, d)
}
