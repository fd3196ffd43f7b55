//! Text format for polytopes, plus OFF export in dimension 3.
//!
//! ```text
//! polytope v1
//! ambient_dim 2
//! vertices 3
//! 0 0
//! 0 1
//! 1 0
//! facets 3
//! -1 -1 | 1
//! 0 1 | 0
//! 1 0 | 0
//! equations 0
//! ```
//!
//! Coordinates and offsets are exact fractions (`p` or `p/q`). On read the
//! vertex list is authoritative; a facet or equation section, when present,
//! must match the canonical description recomputed from the vertices.

use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};

use super::{Halfspace, RationalPolytope};
use crate::error::{Error, Result};
use crate::linalg::{parse_int_list, parse_rat, parse_rat_list, Rat};

pub const POLYTOPE_HEADER: &str = "polytope v1";

pub fn write_polytope(p: &RationalPolytope) -> String {
    let mut s = String::new();
    writeln!(s, "{POLYTOPE_HEADER}").unwrap();
    writeln!(s, "ambient_dim {}", p.ambient_dim()).unwrap();
    writeln!(s, "vertices {}", p.vertex_count()).unwrap();
    for v in p.vertices() {
        writeln!(s, "{}", join(v)).unwrap();
    }
    writeln!(s, "facets {}", p.facet_count()).unwrap();
    for f in p.facets() {
        writeln!(s, "{}", halfspace_line(f)).unwrap();
    }
    writeln!(s, "equations {}", p.equations().len()).unwrap();
    for e in p.equations() {
        writeln!(s, "{}", halfspace_line(e)).unwrap();
    }
    s
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn halfspace_line(h: &Halfspace) -> String {
    format!("{} | {}", join(&h.normal), h.offset)
}

pub fn parse_polytope(text: &str) -> Result<RationalPolytope> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| perr("empty polytope file"))?;
    if header != POLYTOPE_HEADER {
        return Err(perr(&format!("unsupported header {header:?}")));
    }
    let dim = keyed_count(lines.next(), "ambient_dim")?;
    let nv = keyed_count(lines.next(), "vertices")?;
    let mut verts = Vec::with_capacity(nv);
    for _ in 0..nv {
        let l = lines.next().ok_or_else(|| perr("missing vertex line"))?;
        let v = parse_rat_list(l).ok_or_else(|| perr(&format!("bad vertex {l:?}")))?;
        if v.len() != dim {
            return Err(perr(&format!("vertex {l:?} has wrong length")));
        }
        verts.push(v);
    }
    let p = RationalPolytope::from_vertices(dim, &verts)?;
    if p.vertex_count() != nv {
        return Err(perr("vertex list contains non-extreme points"));
    }
    {
        let mut sections = [("facets", p.facets()), ("equations", p.equations())].into_iter();
        while let Some(line) = lines.next() {
            let (key, expected) = sections
                .next()
                .ok_or_else(|| perr(&format!("unexpected line {line:?}")))?;
            let n = keyed_count(Some(line), key)?;
            let mut got = Vec::with_capacity(n);
            for _ in 0..n {
                let l = lines.next().ok_or_else(|| perr("missing halfspace line"))?;
                got.push(parse_halfspace(l)?);
            }
            got.sort();
            if got != expected {
                return Err(perr(&format!("{key} do not match the vertex description")));
            }
        }
    }
    Ok(p)
}

fn parse_halfspace(l: &str) -> Result<Halfspace> {
    let (n, o) = l
        .split_once('|')
        .ok_or_else(|| perr(&format!("halfspace {l:?} lacks '|'")))?;
    let normal = parse_int_list(n).ok_or_else(|| perr(&format!("bad normal {n:?}")))?;
    let offset = parse_rat(o).ok_or_else(|| perr(&format!("bad offset {o:?}")))?;
    Ok(Halfspace::new(normal, offset))
}

fn keyed_count(line: Option<&str>, key: &str) -> Result<usize> {
    let line = line.ok_or_else(|| perr(&format!("missing {key}")))?;
    let mut it = line.split_whitespace();
    if it.next() != Some(key) {
        return Err(perr(&format!("expected {key:?}, got {line:?}")));
    }
    it.next()
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| perr(&format!("bad count in {line:?}")))
}

fn perr(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

/// OFF export of a full-dimensional 3-polytope. Faces are oriented
/// counter-clockwise seen from outside. Coordinates are written as decimals.
pub fn write_off(p: &RationalPolytope) -> Result<String> {
    if p.ambient_dim() != 3 || !p.is_full_dimensional() {
        return Err(Error::InvalidInput(
            "OFF export needs a full-dimensional 3-polytope".into(),
        ));
    }
    let verts = p.vertices();
    let edges = p.edges();
    let mut faces = Vec::new();
    for (fi, f) in p.facets().iter().enumerate() {
        let on: Vec<usize> = (0..verts.len()).filter(|&v| p.incidence()[fi][v]).collect();
        let mut cycle = vec![on[0]];
        while cycle.len() < on.len() {
            let last = *cycle.last().unwrap();
            let next = on
                .iter()
                .copied()
                .find(|&w| {
                    !cycle.contains(&w)
                        && edges
                            .iter()
                            .any(|&(a, b)| (a, b) == (last.min(w), last.max(w)))
                })
                .ok_or_else(|| Error::Internal("facet boundary is not a cycle".into()))?;
            cycle.push(next);
        }
        // Inner normal n: counter-clockwise from outside means
        // (v1-v0)x(v2-v0) . n < 0.
        let d1: Vec<Rat> = (0..3)
            .map(|k| &verts[cycle[1]][k] - &verts[cycle[0]][k])
            .collect();
        let d2: Vec<Rat> = (0..3)
            .map(|k| &verts[cycle[2]][k] - &verts[cycle[0]][k])
            .collect();
        let cross = [
            &d1[1] * &d2[2] - &d1[2] * &d2[1],
            &d1[2] * &d2[0] - &d1[0] * &d2[2],
            &d1[0] * &d2[1] - &d1[1] * &d2[0],
        ];
        let dot = crate::linalg::pair(&f.normal, &cross);
        if dot > Rat::zero() {
            cycle.reverse();
        }
        faces.push(cycle);
    }
    let mut s = String::from("OFF\n");
    writeln!(s, "{} {} {}", verts.len(), faces.len(), edges.len()).unwrap();
    for v in verts {
        let c: Vec<String> = v
            .iter()
            .map(|x| format!("{}", x.to_f64().unwrap_or(f64::NAN)))
            .collect();
        writeln!(s, "{}", c.join(" ")).unwrap();
    }
    for f in faces {
        writeln!(s, "{} {}", f.len(), join(&f)).unwrap();
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rats;

    fn cube() -> RationalPolytope {
        let pts: Vec<Vec<Rat>> = (0..8)
            .map(|i| rats(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]))
            .collect();
        RationalPolytope::from_vertices(3, &pts).unwrap()
    }

    #[test]
    fn roundtrip() {
        let p = crate::polytope::scale(&cube(), &crate::linalg::rat(1, 3)).unwrap();
        let text = write_polytope(&p);
        assert_eq!(parse_polytope(&text).unwrap(), p);
    }

    #[test]
    fn tampered_facets_rejected() {
        let text = write_polytope(&cube()).replace("1 0 0 | 0", "1 0 0 | 1");
        assert!(matches!(parse_polytope(&text), Err(Error::Parse(_))));
    }

    #[test]
    fn off_cube() {
        let off = write_off(&cube()).unwrap();
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        assert_eq!(lines.next(), Some("8 6 12"));
        assert_eq!(off.lines().filter(|l| l.starts_with("4 ")).count(), 6);
    }
}
