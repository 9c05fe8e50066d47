//! Wavefront OBJ subset: `v x y z` and triangular `f i j k` records, 1-based.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use nalgebra::Vector3;
use thiserror::Error;

use super::{MeshError, Realization, SurfaceMesh};

#[derive(Debug, Error)]
pub enum ObjError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Mesh(#[from] MeshError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn parse_err(line: usize, message: impl Into<String>) -> ObjError {
    ObjError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses OBJ text into a realization. Texture and normal indices
/// (`f 1/1/1 ...`) are ignored; negative indices count from the end.
pub fn parse_obj(text: &str) -> Result<Realization, ObjError> {
    let mut positions = Vec::new();
    let mut faces = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let coords: Vec<f64> = tokens
                    .take(3)
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|e| parse_err(line, format!("bad coordinate {t:?}: {e}")))
                    })
                    .collect::<Result<_, _>>()?;
                if coords.len() != 3 {
                    return Err(parse_err(line, "vertex needs three coordinates"));
                }
                positions.push(Vector3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let idx: Vec<usize> = tokens
                    .map(|t| {
                        let head = t.split('/').next().unwrap_or("");
                        let i: i64 = head
                            .parse()
                            .map_err(|e| parse_err(line, format!("bad index {t:?}: {e}")))?;
                        let n = positions.len() as i64;
                        let resolved = if i > 0 { i - 1 } else { n + i };
                        if i == 0 || resolved < 0 {
                            return Err(parse_err(line, format!("index {i} out of range")));
                        }
                        Ok(resolved as usize)
                    })
                    .collect::<Result<_, _>>()?;
                if idx.len() != 3 {
                    return Err(parse_err(
                        line,
                        format!("only triangles are supported, got {} vertices", idx.len()),
                    ));
                }
                faces.push([idx[0], idx[1], idx[2]]);
            }
            _ => {}
        }
    }
    let mesh = SurfaceMesh::new(positions.len(), &faces)?;
    Ok(Realization::new(Arc::new(mesh), positions)?)
}

/// Reads an OBJ file; the path `-` reads standard input.
pub fn read_obj(path: impl AsRef<Path>) -> Result<Realization, ObjError> {
    let path = path.as_ref();
    let io_err = |source| ObjError::Io {
        path: path.display().to_string(),
        source,
    };
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io_err)?
    };
    parse_obj(&text)
}

/// Serializes positions and faces; floats use the shortest round-trip form.
pub fn write_obj_string(r: &Realization) -> String {
    let mut out = String::new();
    for p in r.positions() {
        // adding zero turns -0 into 0
        writeln!(out, "v {} {} {}", p.x + 0.0, p.y + 0.0, p.z + 0.0).unwrap();
    }
    for t in r.mesh().faces() {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).unwrap();
    }
    out
}

pub fn write_obj(r: &Realization, path: impl AsRef<Path>) -> Result<(), ObjError> {
    let path = path.as_ref();
    std::fs::write(path, write_obj_string(r)).map_err(|source| ObjError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TETRA: &str =
        "# tetra\nv 1 1 1\nv 1 -1 -1\nv -1 1 -1\nv -1 -1 1\nf 1 2 3\nf 1 3 4\nf 1 4 2\nf 2 4 3\n";

    #[test]
    fn parses_and_round_trips() {
        let r = parse_obj(TETRA).unwrap();
        assert_eq!(r.mesh().face_count(), 4);
        let s = write_obj_string(&r);
        let again = write_obj_string(&parse_obj(&s).unwrap());
        assert_eq!(s, again);
    }

    #[test]
    fn slash_and_negative_indices() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3/1 2/2/2 3//3\n";
        let r = parse_obj(text).unwrap();
        assert_eq!(r.mesh().face(0), [0, 1, 2]);
    }

    #[test]
    fn quads_are_rejected_with_line() {
        let text = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n";
        match parse_obj(text) {
            Err(ObjError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
    }
}
