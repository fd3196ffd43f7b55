//! Toric varieties from primitive relations.
//!
//! File format:
//!
//! ```text
//! primitive-relations v1
//! rays 7
//! dim 4
//! v1 + v7 = 0
//! v2 + v3 + v4 = v1
//! v4 + v5 + v6 = 2v1
//! ```
//!
//! `rays` and `dim` are optional; the ray count defaults to the largest
//! symbol used. Coefficients may be written `2v1`, `2 v1` or `2*v1`.

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{Fan, ToricVariety};
use crate::error::{Error, Result};
use crate::linalg::{dot_int, integer_kernel, Int, IntegerMatrix};

/// `sum lhs = sum rhs` with 0-based ray symbols. The support of `lhs` is the
/// primitive collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveRelation {
    pub lhs: Vec<(Int, usize)>,
    pub rhs: Vec<(Int, usize)>,
}

impl PrimitiveRelation {
    /// The relation as a single row `lhs - rhs` over `k` symbols.
    pub fn row(&self, k: usize) -> Vec<Int> {
        let mut r = vec![Int::zero(); k];
        for (c, i) in &self.lhs {
            r[*i] += c;
        }
        for (c, i) in &self.rhs {
            r[*i] -= c;
        }
        r
    }

    pub fn collection(&self) -> Vec<usize> {
        self.lhs.iter().map(|(_, i)| *i).sorted().dedup().collect()
    }

    fn max_symbol(&self) -> Option<usize> {
        self.lhs.iter().chain(&self.rhs).map(|(_, i)| *i).max()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveRelations {
    pub rays: usize,
    pub dim: Option<usize>,
    pub relations: Vec<PrimitiveRelation>,
}

impl PrimitiveRelations {
    pub fn new(relations: Vec<PrimitiveRelation>) -> Self {
        let rays = relations
            .iter()
            .filter_map(PrimitiveRelation::max_symbol)
            .max()
            .map_or(0, |m| m + 1);
        Self {
            rays,
            dim: None,
            relations,
        }
    }
}

/// Rays from a saturated, Hermite-reduced kernel of the relation matrix;
/// maximal cones are the `n`-subsets containing no primitive collection.
pub fn from_primitive_relations(pr: &PrimitiveRelations) -> Result<ToricVariety> {
    let k = pr.rays;
    let bad = |m: String| Err(Error::InconsistentRelations(m));
    if pr.relations.is_empty() {
        return bad("no relations given".into());
    }
    for r in &pr.relations {
        if r.max_symbol().is_some_and(|m| m >= k) {
            return bad(format!(
                "symbol v{} beyond ray count {k}",
                r.max_symbol().unwrap() + 1
            ));
        }
        if r.lhs.is_empty() {
            return bad("relation with empty left-hand side".into());
        }
    }
    let rows: Vec<Vec<Int>> = pr.relations.iter().map(|r| r.row(k)).collect();
    let kernel = integer_kernel(&IntegerMatrix::from_rows(&rows, k));
    let n = kernel.len();
    if let Some(d) = pr.dim {
        if d != n {
            return bad(format!("relations leave a rank {n} lattice, expected {d}"));
        }
    }
    if n == 0 {
        return bad("relations leave no lattice".into());
    }
    let rays: Vec<Vec<Int>> = (0..k)
        .map(|i| kernel.iter().map(|b| b[i].clone()).collect())
        .collect();
    for row in &rows {
        for j in 0..n {
            let col: Vec<Int> = rays.iter().map(|r| r[j].clone()).collect();
            if !dot_int(row, &col).is_zero() {
                return Err(Error::Internal("kernel does not satisfy relations".into()));
            }
        }
    }
    if rays.iter().any(|r| !crate::linalg::is_primitive(r)) {
        return bad("relations force a zero or non-primitive ray".into());
    }
    let collections: Vec<Vec<usize>> = pr.relations.iter().map(|r| r.collection()).collect();
    let cones: Vec<Vec<usize>> = (0..k)
        .combinations(n)
        .filter(|c| !collections.iter().any(|p| p.iter().all(|i| c.contains(i))))
        .collect();
    let fan = Fan::new(n, rays, cones).map_err(|e| match e {
        Error::InvalidFan(m) => Error::InconsistentRelations(m),
        e => e,
    })?;
    let x = ToricVariety::new(fan);
    if !x.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(x)
}

pub const RELATIONS_HEADER: &str = "primitive-relations v1";

pub fn parse_primitive_relations(text: &str) -> Result<PrimitiveRelations> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    match lines.next() {
        Some(RELATIONS_HEADER) => {}
        other => return Err(Error::Parse(format!("unsupported header {other:?}"))),
    }
    let mut rays = None;
    let mut dim = None;
    let mut relations = Vec::new();
    for line in lines {
        if let Some(v) = line.strip_prefix("rays ") {
            rays = Some(parse_count(v)?);
        } else if let Some(v) = line.strip_prefix("dim ") {
            dim = Some(parse_count(v)?);
        } else {
            relations.push(parse_relation(line)?);
        }
    }
    let mut pr = PrimitiveRelations::new(relations);
    if let Some(r) = rays {
        if r < pr.rays {
            return Err(Error::Parse(format!(
                "ray count {r} smaller than symbols used"
            )));
        }
        pr.rays = r;
    }
    pr.dim = dim;
    Ok(pr)
}

fn parse_count(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad count {s:?}")))
}

/// Parses `a v_i + ... = b v_j + ...`; either side may be `0`.
pub fn parse_relation(line: &str) -> Result<PrimitiveRelation> {
    let (l, r) = line
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("relation {line:?} lacks '='")))?;
    Ok(PrimitiveRelation {
        lhs: parse_side(l)?,
        rhs: parse_side(r)?,
    })
}

fn parse_side(s: &str) -> Result<Vec<(Int, usize)>> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in s.split('+') {
        let t: String = term
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        let pos = t
            .find('v')
            .ok_or_else(|| Error::Parse(format!("term {term:?} has no ray symbol")))?;
        let coeff = match &t[..pos] {
            "" => Int::one(),
            c => c
                .parse::<Int>()
                .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?,
        };
        let idx: usize = t[pos + 1..]
            .parse()
            .map_err(|_| Error::Parse(format!("bad ray symbol in {term:?}")))?;
        if idx == 0 {
            return Err(Error::Parse("ray symbols start at v1".into()));
        }
        if coeff <= Int::zero() {
            return Err(Error::Parse(format!(
                "coefficient in {term:?} must be positive"
            )));
        }
        out.push((coeff, idx - 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BATYREV: &str = "primitive-relations v1
        rays 7
        dim 4
        v1 + v7 = 0
        v2 + v3 + v4 = v1
        v4 + v5 + v6 = 2v1
        v5 + v6 + v7 = v2 + v3
        v1 + v2 + v3 = v5 + v6";

    #[test]
    fn plane_from_one_relation() {
        let pr = parse_primitive_relations("primitive-relations v1\nv1 + v2 + v3 = 0").unwrap();
        let x = from_primitive_relations(&pr).unwrap();
        assert_eq!(x.dim(), 2);
        assert_eq!(x.fan().cones().len(), 3);
        assert!(x.is_smooth() && x.is_fano());
        assert_eq!(x.class_group().rank(), 1);
    }

    #[test]
    fn product_of_lines() {
        let pr = parse_primitive_relations("primitive-relations v1\nv1+v2=0\nv3+v4=0").unwrap();
        let x = from_primitive_relations(&pr).unwrap();
        assert!(x.is_smooth() && x.is_fano());
        assert_eq!(x.fan().cones().len(), 4);
    }

    #[test]
    fn batyrev_relations_hold() {
        let pr = parse_primitive_relations(BATYREV).unwrap();
        let x = from_primitive_relations(&pr).unwrap();
        assert_eq!(x.ray_count(), 7);
        assert!(x.is_complete() && x.is_simplicial() && x.is_smooth() && x.is_fano());
        for r in &pr.relations {
            let row = r.row(7);
            for j in 0..4 {
                let col: Vec<Int> = x.rays().iter().map(|v| v[j].clone()).collect();
                assert!(dot_int(&row, &col).is_zero());
            }
        }
    }

    #[test]
    fn wrong_dimension() {
        let mut pr = parse_primitive_relations("primitive-relations v1\nv1+v2+v3=0").unwrap();
        pr.dim = Some(3);
        assert!(matches!(
            from_primitive_relations(&pr),
            Err(Error::InconsistentRelations(_))
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_relation("v1 + v2").is_err());
        assert!(parse_relation("v0 = 0").is_err());
        assert!(parse_relation("x1 = 0").is_err());
        let r = parse_relation("v4 + v5 + v6 = 2 * v1").unwrap();
        assert_eq!(r.rhs, vec![(Int::from(2), 0)]);
    }
}
