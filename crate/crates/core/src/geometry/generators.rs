//! The three mesh families of the benchmark plus a triangulated grid.
//!
//! All generators are deterministic functions of their arguments
//! including the seed, and every produced mesh passes the full
//! [`PolygonalMesh::new`] validation.

use super::{polygon_geometry, GeometryError, Point2, PolygonalCell, PolygonalMesh, Rect};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::str::FromStr;

/// The mesh families used by the convergence studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFamily {
    Distorted,
    Nonconvex,
    Voronoi,
}

impl MeshFamily {
    pub const ALL: [MeshFamily; 3] =
        [MeshFamily::Distorted, MeshFamily::Nonconvex, MeshFamily::Voronoi];

    pub fn name(&self) -> &'static str {
        match self {
            MeshFamily::Distorted => "distorted",
            MeshFamily::Nonconvex => "nonconvex",
            MeshFamily::Voronoi => "voronoi",
        }
    }

    /// Generates a mesh of this family at the given resolution with
    /// the family presets: distortion 0.3 for distorted quads and 50
    /// Lloyd iterations with `resolution²` seeds for Voronoi.
    pub fn generate(
        &self,
        rect: Rect,
        resolution: usize,
        seed: u64,
    ) -> Result<PolygonalMesh, GeometryError> {
        match self {
            MeshFamily::Distorted => generate_distorted_quad_mesh(rect, resolution, 0.3, seed),
            MeshFamily::Nonconvex => generate_nonconvex_mesh(rect, resolution),
            MeshFamily::Voronoi => {
                generate_voronoi_mesh(rect, resolution * resolution, 50, seed)
            }
        }
    }
}

impl FromStr for MeshFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "distorted" => Ok(MeshFamily::Distorted),
            "nonconvex" => Ok(MeshFamily::Nonconvex),
            "voronoi" => Ok(MeshFamily::Voronoi),
            other => Err(format!(
                "unknown mesh family `{other}` (expected distorted, nonconvex or voronoi)"
            )),
        }
    }
}

/// Uniform `n × n` quadrilateral grid with seeded interior distortion.
///
/// Interior vertices are displaced by an offset drawn uniformly from
/// a disk of radius `distortion · cell_width / 4`; boundary vertices
/// stay on the rectangle. The quarter factor keeps every displacement
/// inside its grid cell, so cells stay simple and positively oriented
/// and the mesh size stays within a few percent of the undistorted
/// `√2 · cell_width`.
pub fn generate_distorted_quad_mesh(
    rect: Rect,
    n_per_side: usize,
    distortion: f64,
    seed: u64,
) -> Result<PolygonalMesh, GeometryError> {
    if n_per_side < 2 {
        return Err(GeometryError::InvalidParameter("n_per_side must be >= 2".into()));
    }
    if !(0.0..0.5).contains(&distortion) {
        return Err(GeometryError::InvalidParameter(
            "distortion must lie in [0, 0.5)".into(),
        ));
    }

    let n = n_per_side;
    let wx = rect.width() / n as f64;
    let wy = rect.height() / n as f64;
    let radius = distortion * wx.min(wy) / 4.0;

    for attempt in 0..32u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            for i in 0..=n {
                let mut p = Point2::new(rect.xmin + i as f64 * wx, rect.ymin + j as f64 * wy);
                if i > 0 && i < n && j > 0 && j < n && radius > 0.0 {
                    let (dx, dy) = sample_unit_disk(&mut rng);
                    p.x += radius * dx;
                    p.y += radius * dy;
                }
                vertices.push(p);
            }
        }
        let mut cells = Vec::with_capacity(n * n);
        let id = |i: usize, j: usize| j * (n + 1) + i;
        for j in 0..n {
            for i in 0..n {
                cells.push(PolygonalCell::new(vec![
                    id(i, j),
                    id(i + 1, j),
                    id(i + 1, j + 1),
                    id(i, j + 1),
                ]));
            }
        }
        match PolygonalMesh::new(vertices, cells, rect) {
            Ok(mesh) => return Ok(mesh),
            Err(_) if attempt + 1 < 32 => continue,
            Err(e) => {
                return Err(GeometryError::GenerationFailed(format!(
                    "distorted grid invalid after 32 attempts: {e}"
                )))
            }
        }
    }
    unreachable!()
}

fn sample_unit_disk(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let dx: f64 = rng.random_range(-1.0..=1.0);
        let dy: f64 = rng.random_range(-1.0..=1.0);
        if dx * dx + dy * dy <= 1.0 {
            return (dx, dy);
        }
    }
}

/// Deterministic tiling by pentagons, half of them nonconvex.
///
/// Each of the `n × n` square tiles is split by the broken line
/// `(0, 1/2) → (1/2, 1/4) → (1, 1/2)` (tile coordinates) into a lower
/// pentagon with a reflex vertex at the notch and an upper convex
/// pentagon. Both pieces contain their centroid in their kernel, so
/// centroid-fan quadrature stays exact on this family.
pub fn generate_nonconvex_mesh(
    rect: Rect,
    n_per_side: usize,
) -> Result<PolygonalMesh, GeometryError> {
    if n_per_side < 2 {
        return Err(GeometryError::InvalidParameter("n_per_side must be >= 2".into()));
    }
    let n = n_per_side;
    let wx = rect.width() / n as f64;
    let wy = rect.height() / n as f64;

    // Vertex layout: grid corners, then side midpoints on the vertical
    // lines, then one notch vertex per tile.
    let n_corner = (n + 1) * (n + 1);
    let n_sidemid = (n + 1) * n;
    let corner = |i: usize, j: usize| j * (n + 1) + i;
    let sidemid = |i: usize, j: usize| n_corner + j * (n + 1) + i;
    let notch = |i: usize, j: usize| n_corner + n_sidemid + j * n + i;

    let mut vertices = vec![Point2::new(0.0, 0.0); n_corner + n_sidemid + n * n];
    for j in 0..=n {
        for i in 0..=n {
            vertices[corner(i, j)] =
                Point2::new(rect.xmin + i as f64 * wx, rect.ymin + j as f64 * wy);
        }
    }
    for j in 0..n {
        for i in 0..=n {
            vertices[sidemid(i, j)] =
                Point2::new(rect.xmin + i as f64 * wx, rect.ymin + (j as f64 + 0.5) * wy);
        }
    }
    for j in 0..n {
        for i in 0..n {
            vertices[notch(i, j)] = Point2::new(
                rect.xmin + (i as f64 + 0.5) * wx,
                rect.ymin + (j as f64 + 0.25) * wy,
            );
        }
    }

    let mut cells = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            // Lower piece: reflex vertex at the notch.
            cells.push(PolygonalCell::new(vec![
                corner(i, j),
                corner(i + 1, j),
                sidemid(i + 1, j),
                notch(i, j),
                sidemid(i, j),
            ]));
            // Upper piece: convex.
            cells.push(PolygonalCell::new(vec![
                sidemid(i, j),
                notch(i, j),
                sidemid(i + 1, j),
                corner(i + 1, j + 1),
                corner(i, j + 1),
            ]));
        }
    }

    PolygonalMesh::new(vertices, cells, rect)
}

/// Clipped Voronoi tessellation of seeded random points with Lloyd
/// centroid smoothing.
pub fn generate_voronoi_mesh(
    rect: Rect,
    n_seeds: usize,
    lloyd_iterations: usize,
    seed: u64,
) -> Result<PolygonalMesh, GeometryError> {
    if n_seeds < 4 {
        return Err(GeometryError::InvalidParameter("n_seeds must be >= 4".into()));
    }
    for attempt in 0..8u64 {
        let sub_seed = seed.wrapping_add(attempt.wrapping_mul(0xD1B5_4A32_D192_ED03));
        let seeds = sample_seed_points(rect, n_seeds, sub_seed);
        let seeds = lloyd_relax(&seeds, rect, lloyd_iterations);
        match voronoi_mesh_from_seeds(&seeds, rect) {
            Ok(mesh) => return Ok(mesh),
            Err(_) if attempt + 1 < 8 => continue,
            Err(e) => {
                return Err(GeometryError::GenerationFailed(format!(
                    "voronoi generation failed after 8 attempts: {e}"
                )))
            }
        }
    }
    unreachable!()
}

/// Seeded uniform sample of generator points, rejecting near-duplicates.
pub fn sample_seed_points(rect: Rect, n_seeds: usize, seed: u64) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_sep = 1e-9 * rect.width().max(rect.height());
    let mut pts: Vec<Point2> = Vec::with_capacity(n_seeds);
    while pts.len() < n_seeds {
        let p = Point2::new(
            rng.random_range(rect.xmin..rect.xmax),
            rng.random_range(rect.ymin..rect.ymax),
        );
        if pts.iter().all(|q| q.distance(&p) > min_sep) {
            pts.push(p);
        }
    }
    pts
}

/// Moves every seed to the centroid of its clipped Voronoi cell,
/// `iterations` times.
pub fn lloyd_relax(seeds: &[Point2], rect: Rect, iterations: usize) -> Vec<Point2> {
    let mut seeds = seeds.to_vec();
    for _ in 0..iterations {
        let cells = voronoi_cell_polygons(&seeds, rect);
        for (s, cell) in seeds.iter_mut().zip(cells.iter()) {
            if cell.len() >= 3 {
                *s = polygon_geometry(cell).centroid;
            }
        }
    }
    seeds
}

/// The clipped Voronoi cell polygon of every seed, in seed order.
///
/// Each cell starts from the domain rectangle and is cut by the
/// perpendicular bisector against nearby seeds, visited outward from
/// a uniform bucket grid until no further seed can reach the cell.
pub fn voronoi_cell_polygons(seeds: &[Point2], rect: Rect) -> Vec<Vec<Point2>> {
    let n = seeds.len();
    let bucket = (rect.area() / n as f64).sqrt();
    let nx = ((rect.width() / bucket).ceil() as usize).max(1);
    let ny = ((rect.height() / bucket).ceil() as usize).max(1);
    let bx = rect.width() / nx as f64;
    let by = rect.height() / ny as f64;
    let bucket_of = |p: &Point2| -> (usize, usize) {
        let i = (((p.x - rect.xmin) / bx) as usize).min(nx - 1);
        let j = (((p.y - rect.ymin) / by) as usize).min(ny - 1);
        (i, j)
    };
    let mut grid: Vec<Vec<usize>> = vec![Vec::new(); nx * ny];
    for (idx, p) in seeds.iter().enumerate() {
        let (i, j) = bucket_of(p);
        grid[j * nx + i].push(idx);
    }

    let rect_poly = vec![
        Point2::new(rect.xmin, rect.ymin),
        Point2::new(rect.xmax, rect.ymin),
        Point2::new(rect.xmax, rect.ymax),
        Point2::new(rect.xmin, rect.ymax),
    ];

    let max_ring = nx.max(ny);
    let mut cells = Vec::with_capacity(n);
    for (i_seed, s) in seeds.iter().enumerate() {
        let mut poly = rect_poly.clone();
        let mut reach = poly.iter().map(|v| v.distance(s)).fold(0.0, f64::max);
        let (bi, bj) = bucket_of(s);

        'rings: for ring in 0..=max_ring {
            // A seed in this ring is at least (ring - 1) buckets away.
            let ring_min = (ring as f64 - 1.0).max(0.0) * bx.min(by);
            if ring > 0 && ring_min > 2.0 * reach {
                break;
            }
            let mut candidates: Vec<(f64, usize)> = Vec::new();
            for (ci, cj) in ring_buckets(bi, bj, ring, nx, ny) {
                for &j_seed in &grid[cj * nx + ci] {
                    if j_seed != i_seed {
                        candidates.push((s.distance(&seeds[j_seed]), j_seed));
                    }
                }
            }
            candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            for (dist, j_seed) in candidates {
                if dist > 2.0 * reach {
                    break;
                }
                poly = clip_by_bisector(&poly, s, &seeds[j_seed]);
                if poly.len() < 3 {
                    break 'rings;
                }
                reach = poly.iter().map(|v| v.distance(s)).fold(0.0, f64::max);
            }
        }
        cells.push(poly);
    }
    cells
}

fn ring_buckets(
    bi: usize,
    bj: usize,
    ring: usize,
    nx: usize,
    ny: usize,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let (bi, bj, ring) = (bi as isize, bj as isize, ring as isize);
    let mut push = |i: isize, j: isize| {
        if i >= 0 && j >= 0 && (i as usize) < nx && (j as usize) < ny {
            out.push((i as usize, j as usize));
        }
    };
    if ring == 0 {
        push(bi, bj);
        return out;
    }
    for i in (bi - ring)..=(bi + ring) {
        push(i, bj - ring);
        push(i, bj + ring);
    }
    for j in (bj - ring + 1)..=(bj + ring - 1) {
        push(bi - ring, j);
        push(bi + ring, j);
    }
    out
}

/// Keeps the half of the plane closer to `s` than to `t`.
fn clip_by_bisector(poly: &[Point2], s: &Point2, t: &Point2) -> Vec<Point2> {
    let mx = 0.5 * (s.x + t.x);
    let my = 0.5 * (s.y + t.y);
    let dx = t.x - s.x;
    let dy = t.y - s.y;
    let g = |p: &Point2| (p.x - mx) * dx + (p.y - my) * dy;

    let mut out = Vec::with_capacity(poly.len() + 1);
    for k in 0..poly.len() {
        let a = poly[k];
        let b = poly[(k + 1) % poly.len()];
        let (ga, gb) = (g(&a), g(&b));
        if ga <= 0.0 {
            out.push(a);
        }
        if (ga < 0.0 && gb > 0.0) || (ga > 0.0 && gb < 0.0) {
            let t = ga / (ga - gb);
            out.push(Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
        }
    }
    out
}

/// Welds per-seed cell polygons into a conforming mesh.
fn voronoi_mesh_from_seeds(seeds: &[Point2], rect: Rect) -> Result<PolygonalMesh, GeometryError> {
    let polys = voronoi_cell_polygons(seeds, rect);

    let tol = 1e-7 * rect.width().max(rect.height());
    let box_size = 4.0 * tol;
    let mut vertices: Vec<Point2> = Vec::new();
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let key = |p: &Point2| ((p.x / box_size).floor() as i64, (p.y / box_size).floor() as i64);

    let mut weld = |p: Point2| -> usize {
        let (kx, ky) = key(&p);
        let mut best: Option<(f64, usize)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = buckets.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        let d = vertices[id].distance(&p);
                        if d <= tol && best.map_or(true, |(bd, _)| d < bd) {
                            best = Some((d, id));
                        }
                    }
                }
            }
        }
        if let Some((_, id)) = best {
            return id;
        }
        let id = vertices.len();
        vertices.push(p);
        buckets.entry((kx, ky)).or_default().push(id);
        id
    };

    let mut cells = Vec::with_capacity(polys.len());
    for poly in &polys {
        if poly.len() < 3 {
            return Err(GeometryError::GenerationFailed("empty voronoi cell".into()));
        }
        let mut ids: Vec<usize> = poly.iter().map(|&p| weld(p)).collect();
        ids.dedup();
        while ids.len() > 1 && ids[0] == *ids.last().unwrap() {
            ids.pop();
        }
        if ids.len() < 3 {
            return Err(GeometryError::GenerationFailed("voronoi cell collapsed".into()));
        }
        cells.push(PolygonalCell::new(ids));
    }

    PolygonalMesh::new(vertices, cells, rect)
}

/// `2·n·n` right triangles from an `n × n` grid, each square split
/// along its main diagonal. Used by the finite element reduction
/// checks, where the virtual element operators must coincide with
/// linear finite elements.
pub fn generate_triangle_mesh(rect: Rect, n_per_side: usize) -> Result<PolygonalMesh, GeometryError> {
    if n_per_side < 1 {
        return Err(GeometryError::InvalidParameter("n_per_side must be >= 1".into()));
    }
    let n = n_per_side;
    let wx = rect.width() / n as f64;
    let wy = rect.height() / n as f64;
    let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            vertices.push(Point2::new(rect.xmin + i as f64 * wx, rect.ymin + j as f64 * wy));
        }
    }
    let id = |i: usize, j: usize| j * (n + 1) + i;
    let mut cells = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            cells.push(PolygonalCell::new(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]));
            cells.push(PolygonalCell::new(vec![id(i, j), id(i + 1, j + 1), id(i, j + 1)]));
        }
    }
    PolygonalMesh::new(vertices, cells, rect)
}
