//! Incremental double description over the integers.
//!
//! A cone `{x : a_i . x >= 0}` is converted to its extreme rays (plus a
//! lineality basis). Rays are kept as primitive integer vectors, so every
//! intermediate combination stays exact without rational arithmetic.

use num_traits::{Signed, Zero};

use crate::linalg::{self, dot_int, integer_kernel, primitive, Int, IntegerMatrix, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn and(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct ConeRays {
    /// Basis of the lineality space (canonical Hermite basis).
    pub lineality: Vec<Vec<Int>>,
    /// Extreme rays of the cone intersected with the row space of the
    /// constraints, sorted and primitive.
    pub rays: Vec<Vec<Int>>,
}

/// Extreme rays of `{x in R^dim : c . x >= 0 for c in constraints}`.
pub(crate) fn extreme_rays(dim: usize, constraints: &[Vec<Int>]) -> ConeRays {
    let mut rows: Vec<Vec<Int>> = constraints
        .iter()
        .filter(|c| !linalg::is_zero_vec(c))
        .map(|c| primitive(c))
        .collect();
    rows.sort();
    rows.dedup();

    let lineality = if rows.is_empty() {
        integer_kernel(&IntegerMatrix::zeros(0, dim))
    } else {
        integer_kernel(&IntegerMatrix::from_rows(&rows, dim))
    };
    if rows.is_empty() {
        return ConeRays {
            lineality,
            rays: Vec::new(),
        };
    }

    // Parametrize the orthogonal complement of the lineality space by a basis
    // of the row space; the cone is pointed there.
    let basis: Vec<Vec<Int>> = linalg::independent_rows(&rows)
        .into_iter()
        .map(|i| rows[i].clone())
        .collect();
    let reduced: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| basis.iter().map(|b| dot_int(r, b)).collect())
        .collect();

    let rays_y = pointed_dd(basis.len(), &reduced);
    let mut rays: Vec<Vec<Int>> = rays_y
        .iter()
        .map(|y| {
            let x: Vec<Int> = (0..dim)
                .map(|j| {
                    y.iter()
                        .zip(&basis)
                        .fold(Int::zero(), |acc, (c, b)| acc + c * &b[j])
                })
                .collect();
            primitive(&x)
        })
        .collect();
    rays.sort();
    rays.dedup();
    ConeRays { lineality, rays }
}

struct Ray {
    v: Vec<Int>,
    zeros: BitSet,
}

/// Double description for a pointed cone given by constraints of full column
/// rank `r`.
fn pointed_dd(r: usize, rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let m = rows.len();
    let init = linalg::independent_rows(rows);
    debug_assert_eq!(init.len(), r);

    let c0: Vec<Vec<Int>> = init.iter().map(|&i| rows[i].clone()).collect();
    let inv = RationalMatrix::from_int_rows(&c0)
        .inverse()
        .expect("initial constraints are independent");
    let mut rays: Vec<Ray> = (0..r)
        .map(|k| {
            let col: Vec<_> = (0..r).map(|i| inv[(i, k)].clone()).collect();
            let v = linalg::clear_denominators(&col);
            let mut zeros = BitSet::new(m);
            for (j, &ci) in init.iter().enumerate() {
                if j != k {
                    zeros.insert(ci);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    let mut is_init = vec![false; m];
    for &i in &init {
        is_init[i] = true;
    }

    for k in (0..m).filter(|&k| !is_init[k]) {
        let vals: Vec<Int> = rays.iter().map(|ray| dot_int(&rows[k], &ray.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (ray, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    ray.zeros.insert(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut created: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() + 2 < r {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|w| w == p || w == n || !common.is_subset(&rays[w].zeros));
                if !adjacent {
                    continue;
                }
                let v: Vec<Int> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(a, b)| &vals[p] * a - &vals[n] * b)
                    .collect();
                let mut zeros = common;
                zeros.insert(k);
                created.push(Ray {
                    v: primitive(&v),
                    zeros,
                });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut ray, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                ray.zeros.insert(k);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// Facet description of the cone generated by `gens`.
#[derive(Clone, Debug)]
pub(crate) struct ConeHull {
    /// Basis of the linear forms vanishing on all generators.
    pub equations: Vec<Vec<Int>>,
    /// Inner facet normals, chosen inside the span of the generators.
    pub facets: Vec<Vec<Int>>,
}

pub(crate) fn cone_hull(dim: usize, gens: &[Vec<Int>]) -> ConeHull {
    let dual = extreme_rays(dim, gens);
    ConeHull {
        equations: dual.lineality,
        facets: dual.rays,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;

    #[test]
    fn positive_orthant() {
        let c = extreme_rays(3, &[ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
        assert!(c.lineality.is_empty());
        assert_eq!(
            c.rays,
            vec![ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]
        );
    }

    #[test]
    fn halfplane_has_lineality() {
        let c = extreme_rays(2, &[ints(&[1, 0])]);
        assert_eq!(c.lineality.len(), 1);
        assert_eq!(c.rays, vec![ints(&[1, 0])]);
    }

    #[test]
    fn square_cone() {
        // Homogenized unit square: 0 <= x,y <= t.
        let c = extreme_rays(
            3,
            &[
                ints(&[1, 0, 0]),
                ints(&[0, 1, 0]),
                ints(&[-1, 0, 1]),
                ints(&[0, -1, 1]),
                ints(&[0, 0, 1]),
            ],
        );
        assert_eq!(c.rays.len(), 4);
        assert!(c.rays.contains(&ints(&[1, 1, 1])));
    }

    #[test]
    fn hull_of_quadrant_generators() {
        let h = cone_hull(2, &[ints(&[1, 0]), ints(&[1, 1])]);
        assert!(h.equations.is_empty());
        assert_eq!(h.facets, vec![ints(&[0, 1]), ints(&[1, -1])]);
    }

    #[test]
    fn hull_of_single_ray() {
        let h = cone_hull(2, &[ints(&[1, 1])]);
        // The apex is the only proper face; its normal lies in the span.
        assert_eq!(h.equations, vec![ints(&[1, -1])]);
        assert_eq!(h.facets, vec![ints(&[1, 1])]);
    }
}
