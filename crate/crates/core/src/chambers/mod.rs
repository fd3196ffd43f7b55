//! Mori chambers in divisor class space.
//!
//! Classes are free coordinates from [`crate::toric::ClassGroup`]. The
//! secondary fan is found by cutting the effective cone with every hyperplane
//! spanned by ray classes and gluing cells whose sample divisors are Mori
//! equivalent.

mod report;

pub use report::write_chambers;

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, rat_from_int, rational_kernel, Int, Rat};
use crate::polytope::{self, PolyhedralCone, RationalPolytope};
use crate::toric::{divisor_with_class, ToricVariety, TorusDivisor};

/// Upper bound on candidate divisors tried by [`modify`].
pub const MODIFY_ATTEMPTS: usize = 1000;

fn class_space(x: &ToricVariety) -> Result<(usize, Vec<Vec<Int>>)> {
    let cg = x.class_group();
    if !cg.is_free() {
        return Err(Error::TorsionClassGroup(
            cg.torsion_orders().iter().map(|d| d.to_string()).collect(),
        ));
    }
    let classes = (0..x.ray_count()).map(|i| cg.ray_class(i)).collect();
    Ok((cg.rank(), classes))
}

/// Positive hull of all ray classes.
pub fn effective_cone(x: &ToricVariety) -> Result<PolyhedralCone> {
    let (rho, classes) = class_space(x)?;
    Ok(PolyhedralCone::from_generators(rho, &classes))
}

/// Intersection over all rays of the hull of the remaining ray classes.
pub fn movable_cone(x: &ToricVariety) -> Result<PolyhedralCone> {
    let (rho, classes) = class_space(x)?;
    let mut cone = PolyhedralCone::from_generators(rho, &classes);
    for i in 0..classes.len() {
        let others: Vec<Vec<Int>> = classes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c.clone())
            .collect();
        let c = if others.is_empty() {
            PolyhedralCone::from_generators(rho, &[vec![Int::zero(); rho]])
        } else {
            PolyhedralCone::from_generators(rho, &others)
        };
        cone = cone.intersection(&c);
    }
    Ok(cone)
}

/// A maximal Mori chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub cone: PolyhedralCone,
    /// An integral class in the interior.
    pub sample: Vec<Int>,
    /// A divisor of class `sample`.
    pub divisor: TorusDivisor,
    pub movable: bool,
    pub nef: bool,
}

impl Chamber {
    pub fn generators(&self) -> &[Vec<Int>] {
        self.cone.rays()
    }

    pub fn contains_in_interior(&self, class: &[Rat]) -> bool {
        self.cone.relative_interior_contains(&scaled_class(class))
    }
}

fn scaled_class(class: &[Rat]) -> Vec<Int> {
    let l = rat_from_int(&linalg::lcm_of_denominators(class));
    class.iter().map(|c| (c * &l).to_integer()).collect()
}

/// The secondary fan restricted to the effective cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberDecomposition {
    pub class_dim: usize,
    pub ray_classes: Vec<Vec<Int>>,
    pub effective: PolyhedralCone,
    pub movable: PolyhedralCone,
    pub chambers: Vec<Chamber>,
    /// Pairs `(i, j)`, `i < j`, of chambers sharing a wall.
    pub adjacency: Vec<(usize, usize)>,
}

impl ChamberDecomposition {
    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn movable_count(&self) -> usize {
        self.chambers.iter().filter(|c| c.movable).count()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = (i.min(j), i.max(j));
        self.adjacency.contains(&(a, b))
    }

    /// Chamber whose interior contains the class, if any.
    pub fn chamber_of(&self, class: &[Rat]) -> Option<usize> {
        self.chambers
            .iter()
            .position(|c| c.contains_in_interior(class))
    }

    /// All distinct extreme rays of the chambers.
    pub fn rays(&self) -> Vec<Vec<Int>> {
        self.chambers
            .iter()
            .flat_map(|c| c.generators().iter().cloned())
            .sorted()
            .dedup()
            .collect()
    }
}

fn split(cell: &PolyhedralCone, h: &[Int]) -> Option<(PolyhedralCone, PolyhedralCone)> {
    let dim = cell.ambient_dim();
    let mut plus = cell.inequalities();
    plus.push(h.to_vec());
    let mut minus = cell.inequalities();
    minus.push(h.iter().map(|x| -x).collect());
    let p = PolyhedralCone::from_inequalities(dim, &plus);
    let m = PolyhedralCone::from_inequalities(dim, &minus);
    (p.is_full_dimensional() && m.is_full_dimensional()).then_some((p, m))
}

/// Hyperplanes spanned by linearly independent `(rho-1)`-subsets of classes.
fn candidate_walls(rho: usize, classes: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if rho < 2 {
        return Vec::new();
    }
    let distinct: Vec<Vec<Int>> = classes.iter().cloned().sorted().dedup().collect();
    let mut walls: Vec<Vec<Int>> = distinct
        .iter()
        .combinations(rho - 1)
        .filter_map(|sub| {
            let rows: Vec<Vec<Int>> = sub.into_iter().cloned().collect();
            if linalg::rank_int(&rows) != rho - 1 {
                return None;
            }
            let k = rational_kernel(&rows, rho);
            let n = linalg::primitive(&k[0]);
            let first = n
                .iter()
                .find(|x| !x.is_zero())
                .cloned()
                .unwrap_or_else(Int::one);
            Some(if first < Int::zero() {
                n.iter().map(|x| -x).collect()
            } else {
                n
            })
        })
        .collect();
    walls.sort();
    walls.dedup();
    walls
}

fn fan_key(x: &ToricVariety, class: &[Int]) -> Result<(TorusDivisor, Vec<Vec<Vec<Int>>>)> {
    let c: Vec<Rat> = class.iter().map(rat_from_int).collect();
    let d = divisor_with_class(x, &c)?;
    let p = x.moment_polytope(&d)?;
    let key = polytope::vertex_normal_cones(&p);
    if !p.is_full_dimensional() {
        return Err(Error::NotBig);
    }
    Ok((d, key))
}

/// Chambers of the effective cone, ordered nef first, then movable, then the
/// rest; ties broken by generators.
pub fn secondary_fan(x: &ToricVariety) -> Result<ChamberDecomposition> {
    if !x.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    if !x.is_complete() {
        return Err(Error::NotComplete);
    }
    let (rho, classes) = class_space(x)?;
    let effective = PolyhedralCone::from_generators(rho, &classes);
    let movable = movable_cone(x)?;

    let mut cells = vec![effective.clone()];
    for h in candidate_walls(rho, &classes) {
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            match split(&c, &h) {
                Some((p, m)) => {
                    next.push(p);
                    next.push(m);
                }
                None => next.push(c),
            }
        }
        cells = next;
    }

    // Cells with the same normal fan of P_D belong to one chamber.
    let mut groups: BTreeMap<Vec<Vec<Vec<Int>>>, Vec<usize>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        let (_, key) = fan_key(x, &c.interior_point())?;
        groups.entry(key).or_default().push(i);
    }

    let mut chambers = Vec::with_capacity(groups.len());
    for members in groups.values() {
        let gens: Vec<Vec<Int>> = members
            .iter()
            .flat_map(|&i| cells[i].rays().iter().cloned())
            .collect();
        let cone = PolyhedralCone::from_generators(rho, &gens);
        let sample = cone.interior_point();
        let (divisor, key) = fan_key(x, &sample)?;
        if groups.get(&key) != Some(members) {
            return Err(Error::Internal(
                "union of Mori-equivalent cells is not convex".into(),
            ));
        }
        let nef = x.is_ample(&divisor)?;
        let movable_flag = movable.relative_interior_contains(&sample);
        chambers.push(Chamber {
            cone,
            sample,
            divisor,
            movable: movable_flag,
            nef,
        });
    }
    chambers.sort_by(|a, b| {
        (!a.nef, !a.movable, a.cone.rays()).cmp(&(!b.nef, !b.movable, b.cone.rays()))
    });

    for (i, c) in cells.iter().enumerate() {
        let inside = chambers
            .iter()
            .filter(|ch| ch.cone.relative_interior_contains(&c.interior_point()))
            .count();
        if inside != 1 {
            return Err(Error::Internal(format!(
                "cell {i} lies in {inside} chamber interiors"
            )));
        }
    }

    let mut adjacency = Vec::new();
    for i in 0..chambers.len() {
        for j in i + 1..chambers.len() {
            let meet = chambers[i].cone.intersection(&chambers[j].cone);
            if meet.dim() + 1 == rho {
                adjacency.push((i, j));
            }
        }
    }

    Ok(ChamberDecomposition {
        class_dim: rho,
        ray_classes: classes,
        effective,
        movable,
        chambers,
        adjacency,
    })
}

fn big_polytope(x: &ToricVariety, d: &TorusDivisor) -> Result<RationalPolytope> {
    match x.moment_polytope(d) {
        Ok(p) if p.is_full_dimensional() => Ok(p),
        Ok(_) | Err(Error::Empty) => Err(Error::NotBig),
        Err(e) => Err(e),
    }
}

/// `P_A + P_B` is combinatorially equivalent to both `P_A` and `P_B`.
///
/// The normal fan of the sum is the common refinement, so this holds exactly
/// when `P_A` and `P_B` have the same normal fan; the sum is never built.
pub fn same_chamber(x: &ToricVariety, a: &TorusDivisor, b: &TorusDivisor) -> Result<bool> {
    let pa = big_polytope(x, a)?;
    let pb = big_polytope(x, b)?;
    Ok(polytope::combinatorially_equivalent(&pa, &pb))
}

/// A different divisor in the chamber of `a`: one coefficient moved by
/// `+-1/2^j`, with `j` increasing until the move stays in the chamber.
/// Deterministic for a fixed seed (ChaCha8 stream).
pub fn modify(x: &ToricVariety, a: &TorusDivisor, seed: u64) -> Result<TorusDivisor> {
    big_polytope(x, a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while attempts < MODIFY_ATTEMPTS {
        let i = rng.gen_range(0..a.len());
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut step = Rat::from_integer(Int::from(sign));
        for _ in 0..16 {
            attempts += 1;
            let mut c = a.coeffs().to_vec();
            c[i] += &step;
            let b = TorusDivisor::new(c);
            match same_chamber(x, a, &b) {
                Ok(true) => return Ok(b),
                Ok(false) | Err(Error::NotBig) => {}
                Err(e) => return Err(e),
            }
            if attempts >= MODIFY_ATTEMPTS {
                break;
            }
            step /= Rat::from_integer(Int::from(2));
        }
    }
    Err(Error::ExhaustedAttempts(MODIFY_ATTEMPTS))
}

/// Elementary birational types of a wall crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WallType {
    Flip,
    DivisorialContraction,
    DivisorialExtraction,
}

impl WallType {
    /// Identifier used in structured output.
    pub fn key(self) -> &'static str {
        match self {
            WallType::Flip => "flip",
            WallType::DivisorialContraction => "divisorial_contraction",
            WallType::DivisorialExtraction => "divisorial_extraction",
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            WallType::Flip => WallType::Flip,
            WallType::DivisorialContraction => WallType::DivisorialExtraction,
            WallType::DivisorialExtraction => WallType::DivisorialContraction,
        }
    }
}

impl fmt::Display for WallType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallType::Flip => "flip",
            WallType::DivisorialContraction => "divisorial contraction",
            WallType::DivisorialExtraction => "divisorial extraction",
        })
    }
}

/// Facet counts of `P_A`, `P_B` and `P_A + P_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetCounts {
    pub a: usize,
    pub b: usize,
    pub sum: usize,
}

impl FacetCounts {
    pub fn of(pa: &RationalPolytope, pb: &RationalPolytope) -> Result<Self> {
        if !pa.is_full_dimensional() || !pb.is_full_dimensional() {
            return Err(Error::LowerDimensional);
        }
        if polytope::combinatorially_equivalent(pa, pb) {
            return Err(Error::SameChamber);
        }
        let s = polytope::minkowski_sum(pa, pb)?;
        Ok(Self {
            a: pa.facet_count(),
            b: pb.facet_count(),
            sum: s.facet_count(),
        })
    }

    /// Counts compatible with crossing a single wall. A divisorial wall adds
    /// no facet to the sum (one fan refines the other); a flip wall adds
    /// exactly one, the ray through the circuit relation.
    pub fn is_wall_crossing(&self) -> bool {
        let flip = usize::from(self.a == self.b);
        self.a.abs_diff(self.b) <= 1 && self.sum == self.a.max(self.b) + flip
    }

    /// Type read off the facet counts alone, regardless of adjacency: fewer
    /// facets means a divisor was contracted.
    pub fn coarse_type(&self) -> WallType {
        use std::cmp::Ordering::*;
        match self.b.cmp(&self.a) {
            Equal => WallType::Flip,
            Less => WallType::DivisorialContraction,
            Greater => WallType::DivisorialExtraction,
        }
    }
}

/// `|f_A - f_B| <= 1` and `f_S = max(f_A, f_B)`, plus one when `f_A = f_B`.
pub fn is_wall_crossing(pa: &RationalPolytope, pb: &RationalPolytope) -> Result<bool> {
    Ok(FacetCounts::of(pa, pb)?.is_wall_crossing())
}

/// Type of the crossing, or `None` when the chambers share no wall.
pub fn classify_wall(pa: &RationalPolytope, pb: &RationalPolytope) -> Result<Option<WallType>> {
    let c = FacetCounts::of(pa, pb)?;
    Ok(c.is_wall_crossing().then(|| c.coarse_type()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ints, rats};
    use crate::toric::{projective_bundle, Fan};

    fn hirzebruch(a: i64) -> ToricVariety {
        let rays = vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, a]), ints(&[0, -1])];
        let cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
        ToricVariety::new(Fan::new(2, rays, cones).unwrap())
    }

    #[test]
    fn plane_has_one_chamber() {
        let x = ToricVariety::projective_space(2);
        let sf = secondary_fan(&x).unwrap();
        assert_eq!(sf.len(), 1);
        assert!(sf.chambers[0].nef && sf.chambers[0].movable);
        assert_eq!(movable_cone(&x).unwrap(), effective_cone(&x).unwrap());
    }

    #[test]
    fn first_hirzebruch_surface() {
        let x = hirzebruch(1);
        let sf = secondary_fan(&x).unwrap();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf.movable_count(), 1);
        assert!(sf.chambers[0].nef);
        assert_eq!(sf.adjacency, vec![(0, 1)]);
        let pa = x.moment_polytope(&sf.chambers[0].divisor).unwrap();
        let pb = x.moment_polytope(&sf.chambers[1].divisor).unwrap();
        assert_eq!(
            classify_wall(&pa, &pb).unwrap(),
            Some(WallType::DivisorialContraction)
        );
        assert_eq!(
            classify_wall(&pb, &pa).unwrap(),
            Some(WallType::DivisorialExtraction)
        );
    }

    #[test]
    fn product_of_lines_is_one_quadrant() {
        let x = hirzebruch(0);
        let sf = secondary_fan(&x).unwrap();
        assert_eq!(sf.len(), 1);
        assert_eq!(movable_cone(&x).unwrap(), sf.effective);
    }

    #[test]
    fn scaling_stays_in_chamber() {
        let x = ToricVariety::projective_space(2);
        let a = TorusDivisor::from_ints(&[1, 0, 0]);
        assert!(same_chamber(&x, &a, &a.scaled(&Rat::from_integer(2.into()))).unwrap());
        assert_eq!(
            same_chamber(&x, &a, &TorusDivisor::zero(3)),
            Err(Error::NotBig)
        );
    }

    #[test]
    fn modify_is_deterministic() {
        let x = hirzebruch(1);
        let a = TorusDivisor::from_ints(&[1, 1, 0, 0]);
        let b = modify(&x, &a, 7).unwrap();
        assert_ne!(a, b);
        assert!(same_chamber(&x, &a, &b).unwrap());
        assert_eq!(b, modify(&x, &a, 7).unwrap());
    }

    #[test]
    fn bundle_movable_cone() {
        let p2 = ToricVariety::projective_space(2);
        let m = vec![rats(&[0, 0, 0]), rats(&[0, 0, 1]), rats(&[0, 0, 1])];
        let y = projective_bundle(&p2, &m).unwrap();
        let mov = movable_cone(&y).unwrap();
        let cg = y.class_group();
        let mut expected = vec![cg.ray_class(0), cg.ray_class(2)];
        expected.sort();
        assert_eq!(mov.rays(), expected.as_slice());
        assert_eq!(secondary_fan(&y).unwrap().len(), 2);
    }

    #[test]
    fn same_chamber_rejected_by_wall_test() {
        let x = ToricVariety::projective_space(2);
        let p = x
            .moment_polytope(&TorusDivisor::from_ints(&[1, 0, 0]))
            .unwrap();
        assert_eq!(is_wall_crossing(&p, &p), Err(Error::SameChamber));
    }
}
