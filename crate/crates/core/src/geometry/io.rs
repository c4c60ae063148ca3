//! Plain-text mesh files.
//!
//! Line-oriented format, trivially diffable and language-neutral:
//!
//! ```text
//! polymesh 1
//! vertices <n>
//! <x> <y> <boundary_flag>     (n lines, 17 significant digits)
//! cells <m>
//! <k> <v1> ... <vk>           (m lines)
//! ```
//!
//! The domain rectangle is the bounding box of the vertices. Vertex
//! coordinates round-trip bit-exactly.

use super::{GeometryError, Point2, PolygonalCell, PolygonalMesh, Rect};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshIoError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("mesh invalid: {0}")]
    Invalid(#[from] GeometryError),
}

pub fn write_mesh(mesh: &PolygonalMesh, path: &Path) -> Result<(), MeshIoError> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "polymesh 1")?;
    writeln!(w, "vertices {}", mesh.n_vertices())?;
    for (p, &flag) in mesh.vertices().iter().zip(mesh.boundary_vertex_flags()) {
        writeln!(w, "{:.16e} {:.16e} {}", p.x, p.y, u8::from(flag))?;
    }
    writeln!(w, "cells {}", mesh.n_cells())?;
    for cell in mesh.cells() {
        write!(w, "{}", cell.n_vertices())?;
        for &v in &cell.vertex_ids {
            write!(w, " {v}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_mesh(path: &Path) -> Result<PolygonalMesh, MeshIoError> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();

    let mut next_line = |expect: &str| -> Result<(usize, String), MeshIoError> {
        loop {
            match lines.next() {
                Some((idx, line)) => {
                    let line = line?;
                    if !line.trim().is_empty() {
                        return Ok((idx + 1, line));
                    }
                }
                None => {
                    return Err(MeshIoError::Parse {
                        line: 0,
                        message: format!("unexpected end of file, expected {expect}"),
                    })
                }
            }
        }
    };

    let (lineno, header) = next_line("header")?;
    if header.trim() != "polymesh 1" {
        return Err(MeshIoError::Parse {
            line: lineno,
            message: format!("expected header `polymesh 1`, got `{}`", header.trim()),
        });
    }

    let (lineno, count_line) = next_line("vertex count")?;
    let n_vertices = parse_count(&count_line, "vertices", lineno)?;

    let mut vertices = Vec::with_capacity(n_vertices);
    let mut flags = Vec::with_capacity(n_vertices);
    for _ in 0..n_vertices {
        let (lineno, line) = next_line("vertex line")?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(MeshIoError::Parse {
                line: lineno,
                message: format!("expected `x y flag`, got `{line}`"),
            });
        }
        let x: f64 = toks[0].parse().map_err(|_| MeshIoError::Parse {
            line: lineno,
            message: format!("bad x coordinate `{}`", toks[0]),
        })?;
        let y: f64 = toks[1].parse().map_err(|_| MeshIoError::Parse {
            line: lineno,
            message: format!("bad y coordinate `{}`", toks[1]),
        })?;
        let flag = match toks[2] {
            "0" => false,
            "1" => true,
            other => {
                return Err(MeshIoError::Parse {
                    line: lineno,
                    message: format!("bad boundary flag `{other}` (expected 0 or 1)"),
                })
            }
        };
        vertices.push(Point2::new(x, y));
        flags.push(flag);
    }

    let (lineno, count_line) = next_line("cell count")?;
    let n_cells = parse_count(&count_line, "cells", lineno)?;

    let mut cells = Vec::with_capacity(n_cells);
    for _ in 0..n_cells {
        let (lineno, line) = next_line("cell line")?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            return Err(MeshIoError::Parse { line: lineno, message: "empty cell line".into() });
        }
        let k: usize = toks[0].parse().map_err(|_| MeshIoError::Parse {
            line: lineno,
            message: format!("bad vertex count `{}`", toks[0]),
        })?;
        if toks.len() != k + 1 {
            return Err(MeshIoError::Parse {
                line: lineno,
                message: format!("cell declares {k} vertices but lists {}", toks.len() - 1),
            });
        }
        let mut ids = Vec::with_capacity(k);
        for tok in &toks[1..] {
            let v: usize = tok.parse().map_err(|_| MeshIoError::Parse {
                line: lineno,
                message: format!("bad vertex index `{tok}`"),
            })?;
            if v >= n_vertices {
                return Err(MeshIoError::Parse {
                    line: lineno,
                    message: format!("vertex index {v} out of range (mesh has {n_vertices})"),
                });
            }
            ids.push(v);
        }
        cells.push(PolygonalCell::new(ids));
    }

    if vertices.is_empty() {
        return Err(MeshIoError::Parse { line: 0, message: "mesh has no vertices".into() });
    }
    let (mut xmin, mut ymin) = (f64::INFINITY, f64::INFINITY);
    let (mut xmax, mut ymax) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &vertices {
        xmin = xmin.min(p.x);
        ymin = ymin.min(p.y);
        xmax = xmax.max(p.x);
        ymax = ymax.max(p.y);
    }

    let mesh = PolygonalMesh::new(vertices, cells, Rect::new(xmin, ymin, xmax, ymax))?;
    if mesh.boundary_vertex_flags() != flags.as_slice() {
        return Err(MeshIoError::Parse {
            line: 0,
            message: "boundary flags in file do not match mesh topology".into(),
        });
    }
    Ok(mesh)
}

fn parse_count(line: &str, keyword: &str, lineno: usize) -> Result<usize, MeshIoError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != keyword {
        return Err(MeshIoError::Parse {
            line: lineno,
            message: format!("expected `{keyword} <count>`, got `{line}`"),
        });
    }
    toks[1].parse().map_err(|_| MeshIoError::Parse {
        line: lineno,
        message: format!("bad count `{}`", toks[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate_voronoi_mesh, MeshFamily};
    use std::io::Write as _;

    fn tmp_path(name: &str) -> std::path::PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("vem_obstacle_io_{}_{name}", std::process::id()));
        p
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let rect = Rect::symmetric_unit();
        for family in MeshFamily::ALL {
            let mesh = family.generate(rect, 5, 9).unwrap();
            let path = tmp_path(&format!("rt_{}.txt", family.name()));
            write_mesh(&mesh, &path).unwrap();
            let back = read_mesh(&path).unwrap();
            assert_eq!(mesh.n_vertices(), back.n_vertices());
            assert_eq!(mesh.cells(), back.cells());
            for (p, q) in mesh.vertices().iter().zip(back.vertices().iter()) {
                assert_eq!(p.x.to_bits(), q.x.to_bits());
                assert_eq!(p.y.to_bits(), q.y.to_bits());
            }
            assert_eq!(mesh.boundary_vertex_flags(), back.boundary_vertex_flags());
            std::fs::remove_file(&path).ok();
        }
    }

    #[test]
    fn dangling_index_names_the_index() {
        let path = tmp_path("dangling.txt");
        let mut f = File::create(&path).unwrap();
        writeln!(f, "polymesh 1").unwrap();
        writeln!(f, "vertices 3").unwrap();
        writeln!(f, "0.0 0.0 1").unwrap();
        writeln!(f, "1.0 0.0 1").unwrap();
        writeln!(f, "0.0 1.0 1").unwrap();
        writeln!(f, "cells 1").unwrap();
        writeln!(f, "3 0 1 7").unwrap();
        drop(f);
        let err = read_mesh(&path).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('7'), "message should name the index: {msg}");
        assert!(msg.contains("line 7"), "message should carry a line number: {msg}");
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        let path = tmp_path("empty.txt");
        File::create(&path).unwrap();
        assert!(matches!(read_mesh(&path), Err(MeshIoError::Parse { .. })));
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn voronoi_round_trip_structurally_identical() {
        let mesh = generate_voronoi_mesh(Rect::symmetric_unit(), 30, 10, 4).unwrap();
        let path = tmp_path("voronoi.txt");
        write_mesh(&mesh, &path).unwrap();
        let back = read_mesh(&path).unwrap();
        assert_eq!(mesh.cells(), back.cells());
        std::fs::remove_file(&path).ok();
    }
}
