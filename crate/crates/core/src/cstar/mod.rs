//! C*-actions on polarized toric varieties, read off the moment polytope.
//!
//! The subtorus is given by a primitive functional `u` on `M`; the weight of
//! a vertex `v` is `<v, u>`. The coordinate case `u = e_j` is
//! [`ActionContext::coordinate`].

mod report;

pub use report::{ActionReport, Transition, TransitionKind, VarietyFlags};

use num_traits::{One, Zero};

use crate::chambers::FacetCounts;
use crate::error::{Error, Result};
use crate::linalg::{self, pair, Int, Rat};
use crate::polytope::{self, RationalPolytope};
use crate::toric::ToricVariety;

/// A full-dimensional polytope with a primitive functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionContext {
    p: RationalPolytope,
    u: Vec<Int>,
}

/// Vertices of one connected fixed-point component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    pub weight: Rat,
    pub vertices: Vec<usize>,
}

impl ActionContext {
    pub fn new(p: RationalPolytope, u: Vec<Int>) -> Result<Self> {
        if u.len() != p.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: p.ambient_dim(),
                got: u.len(),
            });
        }
        if !linalg::is_primitive(&u) {
            return Err(Error::InvalidInput(
                "functional must be primitive and nonzero".into(),
            ));
        }
        if !p.is_full_dimensional() {
            return Err(Error::LowerDimensional);
        }
        Ok(Self { p, u })
    }

    /// The action through coordinate `j` (0-based).
    pub fn coordinate(p: RationalPolytope, j: usize) -> Result<Self> {
        let n = p.ambient_dim();
        if j >= n {
            return Err(Error::InvalidInput(format!(
                "coordinate {j} out of range for dimension {n}"
            )));
        }
        let mut u = vec![Int::zero(); n];
        u[j] = Int::one();
        Self::new(p, u)
    }

    /// The action through the last coordinate.
    pub fn last_coordinate(p: RationalPolytope) -> Result<Self> {
        let n = p.ambient_dim();
        if n == 0 {
            return Err(Error::LowerDimensional);
        }
        Self::coordinate(p, n - 1)
    }

    pub fn polytope(&self) -> &RationalPolytope {
        &self.p
    }

    pub fn functional(&self) -> &[Int] {
        &self.u
    }

    fn weight_of(&self, v: &[Rat]) -> Rat {
        pair(&self.u, v)
    }

    /// Sorted distinct values of `<v, u>` over the vertices.
    pub fn weights(&self) -> Vec<Rat> {
        let mut w: Vec<Rat> = self
            .p
            .vertices()
            .iter()
            .map(|v| self.weight_of(v))
            .collect();
        w.sort();
        w.dedup();
        w
    }

    pub fn criticality(&self) -> usize {
        self.weights().len() - 1
    }

    /// Number of vertices at each weight, in weight order.
    pub fn fixed_vertex_counts(&self) -> Vec<usize> {
        let verts = self.p.vertices();
        self.weights()
            .iter()
            .map(|w| verts.iter().filter(|v| &self.weight_of(v) == w).count())
            .collect()
    }

    /// Maximal faces on which `u` is constant: connected components of the
    /// graph of `u`-constant edges. Sorted by weight, then vertex list.
    pub fn fixed_components(&self) -> Vec<FixedComponent> {
        let verts = self.p.vertices();
        let w: Vec<Rat> = verts.iter().map(|v| self.weight_of(v)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut c = i;
            while p[c] != r {
                let n = p[c];
                p[c] = r;
                c = n;
            }
            r
        }
        for (a, b) in self.p.edges() {
            if w[a] == w[b] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comps: Vec<FixedComponent> = Vec::new();
        for (i, wi) in w.iter().enumerate().take(verts.len()) {
            let r = find(&mut parent, i);
            match comps.iter_mut().find(|c| c.vertices[0] == r) {
                Some(c) => c.vertices.push(i),
                None => comps.push(FixedComponent {
                    weight: wi.clone(),
                    vertices: vec![i],
                }),
            }
        }
        comps.sort_by(|a, b| (&a.weight, &a.vertices).cmp(&(&b.weight, &b.vertices)));
        comps
    }

    fn check_range(&self, t: &Rat) -> Result<()> {
        let w = self.weights();
        let (lo, hi) = (&w[0], &w[w.len() - 1]);
        if t < lo || t > hi {
            return Err(Error::OutOfRange {
                value: t.to_string(),
                min: lo.to_string(),
                max: hi.to_string(),
            });
        }
        Ok(())
    }

    /// Moment polytope of the pruning `X(a, b)`: the slab `a <= u <= b`.
    pub fn pruning(&self, a: &Rat, b: &Rat) -> Result<RationalPolytope> {
        polytope::slab(&self.p, &self.u, a, b)
    }

    /// GIT quotient at `t`: the slice `u = t`, projected to `u^⊥`.
    pub fn quotient(&self, t: &Rat) -> Result<RationalPolytope> {
        self.check_range(t)?;
        let slice = polytope::slab(&self.p, &self.u, t, t)?;
        polytope::project_out(&slice, &self.u)
    }

    /// Sample values: midpoints of consecutive weights.
    pub fn quotient_parameters(&self) -> Vec<Rat> {
        let two = Rat::from_integer(Int::from(2));
        self.weights()
            .windows(2)
            .map(|w| (&w[0] + &w[1]) / &two)
            .collect()
    }

    /// One geometric quotient per open interval between consecutive weights.
    pub fn geometric_quotients(&self) -> Result<Vec<RationalPolytope>> {
        self.quotient_parameters()
            .iter()
            .map(|t| self.quotient(t))
            .collect()
    }

    /// Types of the maps between consecutive geometric quotients.
    pub fn transitions(&self) -> Result<Vec<Transition>> {
        let q = self.geometric_quotients()?;
        q.windows(2)
            .enumerate()
            .map(|(i, pair)| Transition::between(i, &pair[0], &pair[1]))
            .collect()
    }

    pub fn action_info(&self) -> Result<ActionReport> {
        let x = ToricVariety::from_normal_fan(&self.p)?;
        Ok(ActionReport {
            criticality: self.criticality(),
            weights: self.weights(),
            fixed_vertex_counts: self.fixed_vertex_counts(),
            components: self.fixed_components(),
            transitions: self.transitions()?,
            flags: VarietyFlags::of(&x),
        })
    }
}

impl Transition {
    fn between(index: usize, a: &RationalPolytope, b: &RationalPolytope) -> Result<Self> {
        match FacetCounts::of(a, b) {
            Ok(counts) => {
                let kind = if counts.is_wall_crossing() {
                    TransitionKind::Wall(counts.coarse_type())
                } else {
                    TransitionKind::NonElementary(counts.coarse_type())
                };
                Ok(Self {
                    index,
                    kind,
                    counts: Some(counts),
                })
            }
            Err(Error::SameChamber) => Ok(Self {
                index,
                kind: TransitionKind::Isomorphism,
                counts: None,
            }),
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::WallType;
    use crate::linalg::{ints, rat, rats};

    fn cube(n: usize, side: i64) -> RationalPolytope {
        let pts: Vec<Vec<Rat>> = (0..1usize << n)
            .map(|m| {
                (0..n)
                    .map(|i| Rat::from_integer(Int::from(side * ((m >> i) & 1) as i64)))
                    .collect()
            })
            .collect();
        RationalPolytope::from_vertices(n, &pts).unwrap()
    }

    fn simplex2(s: i64) -> RationalPolytope {
        RationalPolytope::from_vertices(2, &[rats(&[0, 0]), rats(&[s, 0]), rats(&[0, s])]).unwrap()
    }

    #[test]
    fn cube_weights() {
        let a = ActionContext::coordinate(cube(3, 1), 1).unwrap();
        assert_eq!(a.weights(), rats(&[0, 1]));
        assert_eq!(a.criticality(), 1);
        assert_eq!(a.fixed_vertex_counts(), vec![4, 4]);
    }

    #[test]
    fn square_components_are_edges() {
        let a = ActionContext::coordinate(cube(2, 1), 0).unwrap();
        let comps = a.fixed_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.vertices.len() == 2));
    }

    #[test]
    fn diagonal_action_on_square() {
        let a = ActionContext::new(cube(2, 1), ints(&[1, 1])).unwrap();
        assert_eq!(a.weights(), rats(&[0, 1, 2]));
        assert_eq!(a.fixed_vertex_counts(), vec![1, 2, 1]);
        assert_eq!(a.fixed_components().len(), 4);
    }

    #[test]
    fn pruning_of_square() {
        let a = ActionContext::coordinate(cube(2, 3), 0).unwrap();
        let p = a.pruning(&rat(1, 1), &rat(2, 1)).unwrap();
        let expected = RationalPolytope::from_vertices(
            2,
            &[rats(&[1, 0]), rats(&[2, 0]), rats(&[1, 3]), rats(&[2, 3])],
        )
        .unwrap();
        assert_eq!(p, expected);
        assert_eq!(a.pruning(&rat(0, 1), &rat(3, 1)).unwrap(), cube(2, 3));
    }

    #[test]
    fn simplex_quotient_is_segment() {
        let a = ActionContext::coordinate(simplex2(2), 0).unwrap();
        let q = a.quotient(&rat(1, 1)).unwrap();
        assert_eq!(q.vertices(), &[rats(&[0]), rats(&[1])]);
        assert!(matches!(
            a.quotient(&rat(3, 1)),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn quotients_of_hirzebruch_polytope() {
        // Trapezoid of F1: weights 0..2 along y, quotients are segments.
        let p = RationalPolytope::from_vertices(
            2,
            &[rats(&[0, 0]), rats(&[2, 0]), rats(&[0, 1]), rats(&[1, 1])],
        )
        .unwrap();
        let a = ActionContext::coordinate(p, 1).unwrap();
        assert_eq!(a.criticality(), 1);
        assert_eq!(a.geometric_quotients().unwrap().len(), 1);
        assert!(a.transitions().unwrap().is_empty());
    }

    #[test]
    fn extraction_then_contraction() {
        // Square sliced by the diagonal: both quotients are segments.
        let a = ActionContext::new(cube(2, 1), ints(&[1, 1])).unwrap();
        let t = a.transitions().unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].kind, TransitionKind::Isomorphism);
        // Cube sliced by the diagonal: triangle, then hexagon.
        let a = ActionContext::new(cube(3, 1), ints(&[1, 1, 1])).unwrap();
        let t = a.transitions().unwrap();
        let kinds: Vec<_> = t.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                TransitionKind::NonElementary(WallType::DivisorialExtraction),
                TransitionKind::NonElementary(WallType::DivisorialContraction),
            ]
        );
    }

    #[test]
    fn rejects_bad_functional() {
        assert!(ActionContext::new(cube(2, 1), ints(&[2, 0])).is_err());
        assert!(ActionContext::new(cube(2, 1), ints(&[0, 0])).is_err());
    }
}
