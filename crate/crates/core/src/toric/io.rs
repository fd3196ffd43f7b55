//! Text format for fans.
//!
//! ```text
//! fan v1
//! lattice_dim 2
//! rays 3
//! 1 0
//! 0 1
//! -1 -1
//! max_cones 3
//! 0 1
//! 1 2
//! 0 2
//! ```

use std::fmt::Write as _;

use super::Fan;
use crate::error::{Error, Result};
use crate::linalg::parse_int_list;

pub const FAN_HEADER: &str = "fan v1";

pub fn write_fan(f: &Fan) -> String {
    let mut s = String::new();
    writeln!(s, "{FAN_HEADER}").unwrap();
    writeln!(s, "lattice_dim {}", f.dim()).unwrap();
    writeln!(s, "rays {}", f.rays().len()).unwrap();
    for r in f.rays() {
        writeln!(s, "{}", join(r)).unwrap();
    }
    writeln!(s, "max_cones {}", f.cones().len()).unwrap();
    for c in f.cones() {
        writeln!(s, "{}", join(c)).unwrap();
    }
    s
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn perr(msg: String) -> Error {
    Error::Parse(msg)
}

fn keyed(line: Option<&str>, key: &str) -> Result<usize> {
    let line = line.ok_or_else(|| perr(format!("missing {key}")))?;
    let mut it = line.split_whitespace();
    if it.next() != Some(key) {
        return Err(perr(format!("expected {key:?}, got {line:?}")));
    }
    it.next()
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| perr(format!("bad count in {line:?}")))
}

/// Parses and validates a fan.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    match lines.next() {
        Some(FAN_HEADER) => {}
        other => return Err(perr(format!("unsupported header {other:?}"))),
    }
    let dim = keyed(lines.next(), "lattice_dim")?;
    let nr = keyed(lines.next(), "rays")?;
    let mut rays = Vec::with_capacity(nr);
    for _ in 0..nr {
        let l = lines
            .next()
            .ok_or_else(|| perr("missing ray line".into()))?;
        rays.push(parse_int_list(l).ok_or_else(|| perr(format!("bad ray {l:?}")))?);
    }
    let nc = keyed(lines.next(), "max_cones")?;
    let mut cones = Vec::with_capacity(nc);
    for _ in 0..nc {
        let l = lines
            .next()
            .ok_or_else(|| perr("missing cone line".into()))?;
        let c: Vec<usize> = l
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| perr(format!("bad cone {l:?}"))))
            .collect::<Result<_>>()?;
        cones.push(c);
    }
    if let Some(l) = lines.next() {
        return Err(perr(format!("trailing line {l:?}")));
    }
    Fan::new(dim, rays, cones)
}
