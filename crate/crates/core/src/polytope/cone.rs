use num_traits::{Signed, Zero};

use super::dd;
use crate::linalg::{self, dot_int, Int};

/// A rational polyhedral cone with generators and inequalities both stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyhedralCone {
    ambient_dim: usize,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

impl PolyhedralCone {
    pub fn from_generators(ambient_dim: usize, gens: &[Vec<Int>]) -> Self {
        let hull = dd::cone_hull(ambient_dim, gens);
        let mut rows = hull.facets.clone();
        for e in &hull.equations {
            rows.push(e.clone());
            rows.push(e.iter().map(|x| -x).collect());
        }
        let v = dd::extreme_rays(ambient_dim, &rows);
        Self {
            ambient_dim,
            rays: v.rays,
            lineality: v.lineality,
            facets: hull.facets,
            equations: hull.equations,
        }
    }

    /// `{x : a . x >= 0}` for each row `a`.
    pub fn from_inequalities(ambient_dim: usize, rows: &[Vec<Int>]) -> Self {
        let v = dd::extreme_rays(ambient_dim, rows);
        let mut gens = v.rays.clone();
        for l in &v.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        let hull = dd::cone_hull(ambient_dim, &gens);
        Self {
            ambient_dim,
            rays: v.rays,
            lineality: v.lineality,
            facets: hull.facets,
            equations: hull.equations,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vec<Int>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// All defining inequalities, equations expanded into pairs.
    pub fn inequalities(&self) -> Vec<Vec<Int>> {
        let mut rows = self.facets.clone();
        for e in &self.equations {
            rows.push(e.clone());
            rows.push(e.iter().map(|x| -x).collect());
        }
        rows
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.facets.iter().all(|f| !dot_int(f, x).is_negative())
            && self.equations.iter().all(|e| dot_int(e, x).is_zero())
    }

    /// Strictly inside the relative interior.
    pub fn relative_interior_contains(&self, x: &[Int]) -> bool {
        self.facets.iter().all(|f| dot_int(f, x).is_positive())
            && self.equations.iter().all(|e| dot_int(e, x).is_zero())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut rows = self.inequalities();
        rows.extend(other.inequalities());
        Self::from_inequalities(self.ambient_dim, &rows)
    }

    /// Sum of the extreme rays: a relative-interior point of a pointed cone.
    pub fn interior_point(&self) -> Vec<Int> {
        let mut s = vec![Int::zero(); self.ambient_dim];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        linalg::primitive(&s)
    }

    /// Does `self` contain `other`?
    pub fn contains_cone(&self, other: &Self) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| {
                self.contains(l) && self.contains(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }
}
