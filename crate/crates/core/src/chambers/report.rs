use std::fmt::Write as _;

use super::{classify_wall, ChamberDecomposition};
use crate::error::Result;
use crate::toric::ToricVariety;

fn vec_str<T: ToString>(v: &[T]) -> String {
    format!(
        "({})",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// Ray classes, chambers with generators and flags, and the adjacency graph
/// with the wall type seen when crossing from the lower to the higher index.
pub fn write_chambers(x: &ToricVariety, sf: &ChamberDecomposition) -> Result<String> {
    let mut s = String::new();
    writeln!(s, "chambers v1").unwrap();
    writeln!(s, "class_dim {}", sf.class_dim).unwrap();
    writeln!(s, "ray_classes {}", sf.ray_classes.len()).unwrap();
    for (i, c) in sf.ray_classes.iter().enumerate() {
        writeln!(s, "D{} {}", i + 1, vec_str(c)).unwrap();
    }
    writeln!(s, "movable_cone {}", gens(sf.movable.rays())).unwrap();
    writeln!(s, "chambers {}", sf.len()).unwrap();
    for (i, c) in sf.chambers.iter().enumerate() {
        let mut flags = Vec::new();
        if c.nef {
            flags.push("nef");
        }
        if c.movable {
            flags.push("movable");
        }
        writeln!(
            s,
            "N{} generators {} sample {} divisor ({}){}{}",
            i + 1,
            gens(c.generators()),
            vec_str(&c.sample),
            c.divisor,
            if flags.is_empty() { "" } else { " " },
            flags.join(" ")
        )
        .unwrap();
    }
    writeln!(s, "walls {}", sf.adjacency.len()).unwrap();
    for &(i, j) in &sf.adjacency {
        let pa = x.moment_polytope(&sf.chambers[i].divisor)?;
        let pb = x.moment_polytope(&sf.chambers[j].divisor)?;
        let t = match classify_wall(&pa, &pb)? {
            Some(t) => t.key(),
            None => "unrecognized",
        };
        writeln!(s, "N{} N{} {}", i + 1, j + 1, t).unwrap();
    }
    Ok(s)
}

fn gens(rays: &[Vec<crate::linalg::Int>]) -> String {
    format!(
        "[{}]",
        rays.iter()
            .map(|r| vec_str(r))
            .collect::<Vec<_>>()
            .join(" ")
    )
}
