//! Fans, toric varieties and torus-invariant divisors.

mod bundle;
mod io;
mod relations;

pub use bundle::{proj_rays, projective_bundle};
pub use io::{parse_fan, write_fan};
pub use relations::{
    from_primitive_relations, parse_primitive_relations, PrimitiveRelation, PrimitiveRelations,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    self, pair, rat_from_int, smith_normal_form, solve_integer, solve_rational, Int, IntegerMatrix,
    Rat,
};
use crate::polytope::{self, Halfspace, PolyhedralCone, RationalPolytope};

/// A fan given by primitive rays and maximal cones (as ray-index sets).
///
/// Ray order is significant for divisors (coefficient `i` belongs to ray
/// `i`), but equality compares the fans as sets of cones.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<Int>>,
    cones: Vec<Vec<usize>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.cone_key() == other.cone_key()
    }
}

impl Eq for Fan {}

impl Fan {
    /// Validated constructor: rays primitive and distinct, cones strongly
    /// convex and generated by their listed rays, and any two cones meet in a
    /// common face.
    pub fn new(dim: usize, rays: Vec<Vec<Int>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidFan(m));
        for r in &rays {
            if r.len() != dim {
                return bad(format!("ray {r:?} has wrong length"));
            }
            if !linalg::is_primitive(r) {
                return bad(format!("ray {r:?} is not primitive"));
            }
        }
        let distinct: BTreeSet<&Vec<Int>> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return bad("rays are not distinct".into());
        }
        let mut cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        cones.sort();
        cones.dedup();
        let fan = Self { dim, rays, cones };
        let geo: Vec<PolyhedralCone> = fan
            .cones
            .iter()
            .map(|c| {
                if c.iter().any(|&i| i >= fan.rays.len()) {
                    return Err(Error::InvalidFan(format!("cone {c:?} out of range")));
                }
                Ok(fan.cone(c))
            })
            .collect::<Result<_>>()?;
        for (c, g) in fan.cones.iter().zip(&geo) {
            if c.is_empty() {
                return bad("empty cone".into());
            }
            if !g.is_pointed() {
                return bad(format!("cone {c:?} is not strongly convex"));
            }
            if g.rays().len() != c.len() {
                return bad(format!("cone {c:?} lists a non-extreme ray"));
            }
        }
        for i in 0..fan.cones.len() {
            for j in i + 1..fan.cones.len() {
                let common: Vec<usize> = fan.cones[i]
                    .iter()
                    .copied()
                    .filter(|r| fan.cones[j].contains(r))
                    .collect();
                let inter = geo[i].intersection(&geo[j]);
                let expected = fan.cone(&common);
                if inter.rays() != expected.rays()
                    || !is_face(&geo[i], &fan, &fan.cones[i], &common)
                    || !is_face(&geo[j], &fan, &fan.cones[j], &common)
                {
                    return bad(format!(
                        "cones {:?} and {:?} do not meet in a common face",
                        fan.cones[i], fan.cones[j]
                    ));
                }
            }
        }
        Ok(fan)
    }

    /// For fans that are correct by construction (normal fans).
    pub(crate) fn from_parts_unchecked(
        dim: usize,
        rays: Vec<Vec<Int>>,
        cones: Vec<Vec<usize>>,
    ) -> Self {
        Self { dim, rays, cones }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    fn cone(&self, idx: &[usize]) -> PolyhedralCone {
        let gens: Vec<Vec<Int>> = idx.iter().map(|&i| self.rays[i].clone()).collect();
        if gens.is_empty() {
            return PolyhedralCone::from_generators(self.dim, &[vec![Int::zero(); self.dim]]);
        }
        PolyhedralCone::from_generators(self.dim, &gens)
    }

    /// The fan as a set of cones, each a sorted list of ray vectors.
    pub fn cone_key(&self) -> BTreeSet<Vec<Vec<Int>>> {
        self.cones
            .iter()
            .map(|c| {
                let mut v: Vec<Vec<Int>> = c.iter().map(|&i| self.rays[i].clone()).collect();
                v.sort();
                v
            })
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.len() == self.dim)
            && self.cones.iter().all(|c| {
                let rows: Vec<Vec<Int>> = c.iter().map(|&i| self.rays[i].clone()).collect();
                linalg::rank_int(&rows) == self.dim
            })
    }

    pub fn is_smooth(&self) -> bool {
        self.is_simplicial()
            && self.cones.iter().all(|c| {
                let rows: Vec<Vec<Int>> = c.iter().map(|&i| self.rays[i].clone()).collect();
                linalg::abs_det_int(&rows).is_one()
            })
    }

    /// Every maximal cone is full-dimensional and every ridge lies in exactly
    /// two maximal cones.
    pub fn is_complete(&self) -> bool {
        if self.cones.is_empty() {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        let mut walls: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in &self.cones {
            let g = self.cone(c);
            if !g.is_full_dimensional() {
                return false;
            }
            for f in g.facets() {
                let on: Vec<usize> = c
                    .iter()
                    .copied()
                    .filter(|&i| linalg::dot_int(f, &self.rays[i]).is_zero())
                    .collect();
                *walls.entry(on).or_default() += 1;
            }
        }
        walls.values().all(|&n| n == 2)
    }

    /// Ray-index sets of the codimension-one faces of maximal cones, with the
    /// number of maximal cones containing each.
    pub fn walls(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut walls: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in &self.cones {
            let g = self.cone(c);
            for f in g.facets() {
                let on: Vec<usize> = c
                    .iter()
                    .copied()
                    .filter(|&i| linalg::dot_int(f, &self.rays[i]).is_zero())
                    .collect();
                *walls.entry(on).or_default() += 1;
            }
        }
        walls
    }
}

fn is_face(g: &PolyhedralCone, fan: &Fan, cone: &[usize], sub: &[usize]) -> bool {
    let supporting: Vec<&Vec<Int>> = g
        .facets()
        .iter()
        .filter(|f| {
            sub.iter()
                .all(|&i| linalg::dot_int(f, &fan.rays[i]).is_zero())
        })
        .collect();
    let tight: Vec<usize> = cone
        .iter()
        .copied()
        .filter(|&i| {
            supporting
                .iter()
                .all(|f| linalg::dot_int(f, &fan.rays[i]).is_zero())
        })
        .collect();
    // With no supporting facet the only face containing `sub` is the whole cone.
    tight == sub
        || (sub.is_empty() && tight.len() == cone.len() && supporting.is_empty() && cone.is_empty())
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_fan(self))
    }
}

/// A torus-invariant Q-divisor, one coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusDivisor {
    coeffs: Vec<Rat>,
}

impl TorusDivisor {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(linalg::rats(v))
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![Rat::zero(); len])
    }

    /// The prime divisor `D_i`.
    pub fn prime(len: usize, i: usize) -> Self {
        let mut c = vec![Rat::zero(); len];
        c[i] = Rat::one();
        Self::new(c)
    }

    pub fn parse(s: &str) -> Result<Self> {
        linalg::parse_rat_list(s)
            .map(Self::new)
            .ok_or_else(|| Error::Parse(format!("bad divisor literal {s:?}")))
    }

    /// Either a comma list or a sum of prime divisors such as `D1+2D6-1/2D7`
    /// (1-based indices), on a variety with `len` rays.
    pub fn parse_for(s: &str, len: usize) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !t.contains('D') {
            let d = Self::parse(&t)?;
            if d.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    got: d.len(),
                });
            }
            return Ok(d);
        }
        let bad = || Error::Parse(format!("bad divisor literal {s:?}"));
        let mut coeffs = vec![Rat::zero(); len];
        let mut rest = t.as_str();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if rest.len() == t.len() => (false, rest),
                _ => return Err(bad()),
            };
            let end = body[1..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (c, idx) = term.split_once('D').ok_or_else(bad)?;
            let c = c.trim_end_matches('*');
            let mut q = if c.is_empty() {
                Rat::one()
            } else {
                linalg::parse_rat(c).ok_or_else(bad)?
            };
            if neg {
                q = -q;
            }
            let i: usize = idx.parse().map_err(|_| bad())?;
            if i == 0 || i > len {
                return Err(Error::Parse(format!("D{i} out of range 1..={len}")));
            }
            coeffs[i - 1] += q;
        }
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scaled(&self, q: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Appends coefficients (pullback to a bundle whose extra rays come last).
    pub fn extended(&self, extra: &[Rat]) -> Self {
        let mut c = self.coeffs.clone();
        c.extend_from_slice(extra);
        Self::new(c)
    }

    pub fn denominator_lcm(&self) -> Int {
        linalg::lcm_of_denominators(&self.coeffs)
    }
}

impl fmt::Display for TorusDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl Add for &TorusDivisor {
    type Output = TorusDivisor;
    fn add(self, rhs: &TorusDivisor) -> TorusDivisor {
        assert_eq!(self.len(), rhs.len(), "divisors on different varieties");
        TorusDivisor::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &TorusDivisor {
    type Output = TorusDivisor;
    fn sub(self, rhs: &TorusDivisor) -> TorusDivisor {
        assert_eq!(self.len(), rhs.len(), "divisors on different varieties");
        TorusDivisor::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &TorusDivisor {
    type Output = TorusDivisor;
    fn neg(self) -> TorusDivisor {
        TorusDivisor::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul<&TorusDivisor> for &Rat {
    type Output = TorusDivisor;
    fn mul(self, rhs: &TorusDivisor) -> TorusDivisor {
        rhs.scaled(self)
    }
}

/// Presentation of the class group `Z^rays / M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    /// Rows map a divisor to its free class coordinates.
    free: IntegerMatrix,
    /// Torsion coordinates with their moduli.
    torsion: Vec<(Vec<Int>, Int)>,
}

impl ClassGroup {
    fn new(rays: &[Vec<Int>], dim: usize) -> Self {
        let k = rays.len();
        // Principal divisors: m -> (<rho_i, m>)_i, i.e. the k x n ray matrix.
        let vt = IntegerMatrix::from_rows(rays, dim);
        let snf = smith_normal_form(&vt);
        let r = snf.rank();
        let free_rows: Vec<Vec<Int>> = (r..k).map(|i| snf.u.row(i)).collect();
        let free = IntegerMatrix::from_rows(&free_rows, k);
        let torsion = (0..r)
            .filter(|&i| snf.d[(i, i)] > Int::one())
            .map(|i| (snf.u.row(i), snf.d[(i, i)].clone()))
            .collect();
        Self { free, torsion }
    }

    pub fn rank(&self) -> usize {
        self.free.rows()
    }

    pub fn torsion_orders(&self) -> Vec<Int> {
        self.torsion.iter().map(|(_, d)| d.clone()).collect()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Free class coordinates (over Q).
    pub fn free_class(&self, d: &TorusDivisor) -> Vec<Rat> {
        (0..self.free.rows())
            .map(|i| pair(&self.free.row(i), d.coeffs()))
            .collect()
    }

    /// Torsion coordinates of an integral divisor.
    pub fn torsion_class(&self, d: &TorusDivisor) -> Option<Vec<Int>> {
        if !d.is_integral() {
            return None;
        }
        let c: Vec<Int> = d.coeffs().iter().map(|x| x.to_integer()).collect();
        Some(
            self.torsion
                .iter()
                .map(|(row, m)| num_integer::Integer::mod_floor(&linalg::dot_int(row, &c), m))
                .collect(),
        )
    }

    /// Class of the prime divisor `D_i` in free coordinates.
    pub fn ray_class(&self, i: usize) -> Vec<Int> {
        self.free.col(i)
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.free
    }
}

/// A toric variety: a fan plus cached properties and its class group.
#[derive(Clone, Debug)]
pub struct ToricVariety {
    fan: Fan,
    complete: bool,
    simplicial: bool,
    smooth: bool,
    class_group: ClassGroup,
}

impl PartialEq for ToricVariety {
    fn eq(&self, other: &Self) -> bool {
        self.fan == other.fan
    }
}

impl ToricVariety {
    pub fn new(fan: Fan) -> Self {
        let complete = fan.is_complete();
        let simplicial = fan.is_simplicial();
        let smooth = simplicial && fan.is_smooth();
        let class_group = ClassGroup::new(&fan.rays, fan.dim);
        Self {
            fan,
            complete,
            simplicial,
            smooth,
            class_group,
        }
    }

    /// Toric variety of the normal fan of a full-dimensional polytope.
    pub fn from_normal_fan(p: &RationalPolytope) -> Result<Self> {
        Ok(Self::new(polytope::normal_fan(p)?))
    }

    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<Vec<Int>> = (0..n)
            .map(|i| {
                let mut r = vec![Int::zero(); n];
                r[i] = Int::one();
                r
            })
            .collect();
        rays.push(vec![-Int::one(); n]);
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Self::new(Fan::new(n, rays, cones).expect("projective space fan"))
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.fan.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.fan.rays
    }

    pub fn ray_count(&self) -> usize {
        self.fan.rays.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Simplicial fan, i.e. Q-factorial variety.
    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn class_group(&self) -> &ClassGroup {
        &self.class_group
    }

    fn check_len(&self, d: &TorusDivisor) -> Result<()> {
        if d.len() != self.ray_count() {
            return Err(Error::DimensionMismatch {
                expected: self.ray_count(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// `{m : <rho_i, m> + b_i >= 0}`.
    pub fn moment_polytope(&self, d: &TorusDivisor) -> Result<RationalPolytope> {
        self.check_len(d)?;
        moment_polytope_of_rays(self.dim(), self.rays(), d)
    }

    pub fn anticanonical(&self) -> TorusDivisor {
        TorusDivisor::new(vec![Rat::one(); self.ray_count()])
    }

    pub fn principal_divisor(&self, m: &[Rat]) -> TorusDivisor {
        TorusDivisor::new(self.rays().iter().map(|r| pair(r, m)).collect())
    }

    /// Free class coordinates of `d`.
    pub fn divisor_class(&self, d: &TorusDivisor) -> Result<Vec<Rat>> {
        self.check_len(d)?;
        Ok(self.class_group.free_class(d))
    }

    /// Equal classes; torsion parts are compared when both are integral.
    pub fn linearly_equivalent(&self, a: &TorusDivisor, b: &TorusDivisor) -> Result<bool> {
        if self.divisor_class(a)? != self.divisor_class(b)? {
            return Ok(false);
        }
        match (
            self.class_group.torsion_class(a),
            self.class_group.torsion_class(b),
        ) {
            (Some(x), Some(y)) => Ok(x == y),
            _ => Ok(true),
        }
    }

    fn cone_system(&self, cone: &[usize]) -> IntegerMatrix {
        let rows: Vec<Vec<Int>> = cone.iter().map(|&i| self.fan.rays[i].clone()).collect();
        IntegerMatrix::from_rows(&rows, self.dim())
    }

    /// Some multiple of `d` is Cartier.
    pub fn is_q_cartier(&self, d: &TorusDivisor) -> Result<bool> {
        self.check_len(d)?;
        Ok(self.fan.cones.iter().all(|c| {
            let a = self.cone_system(c).to_rational();
            let b: Vec<Rat> = c.iter().map(|&i| -d.coeffs()[i].clone()).collect();
            solve_rational(&a, &b).is_some()
        }))
    }

    /// On every maximal cone there is an integral `m` with `<rho, m> = -b_rho`.
    pub fn is_cartier(&self, d: &TorusDivisor) -> Result<bool> {
        self.check_len(d)?;
        if !d.is_integral() {
            return Ok(false);
        }
        Ok(self.fan.cones.iter().all(|c| {
            let a = self.cone_system(c);
            let b: Vec<Int> = c.iter().map(|&i| -d.coeffs()[i].to_integer()).collect();
            solve_integer(&a, &b).is_some()
        }))
    }

    /// Q-Cartier and the normal fan of `P_D` is the fan of the variety.
    pub fn is_ample(&self, d: &TorusDivisor) -> Result<bool> {
        if !self.is_q_cartier(d)? {
            return Ok(false);
        }
        let p = match self.moment_polytope(d) {
            Ok(p) => p,
            Err(Error::Empty) | Err(Error::Unbounded) => return Ok(false),
            Err(e) => return Err(e),
        };
        if !p.is_full_dimensional() {
            return Ok(false);
        }
        Ok(polytope::normal_fan(&p)? == self.fan)
    }

    /// `P_D` is full-dimensional.
    pub fn is_big(&self, d: &TorusDivisor) -> Result<bool> {
        match self.moment_polytope(d) {
            Ok(p) => Ok(p.is_full_dimensional()),
            Err(Error::Empty) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn is_fano(&self) -> bool {
        self.is_ample(&self.anticanonical()).unwrap_or(false)
    }

    /// Smallest integer multiple of `d` that is Cartier, if one exists below
    /// `cap`.
    pub fn cartier_index(&self, d: &TorusDivisor, cap: u64) -> Result<Option<Int>> {
        let base = d.denominator_lcm();
        for k in 1..=cap {
            let m = &base * Int::from(k);
            if self.is_cartier(&d.scaled(&rat_from_int(&m)))? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

/// Moment polytope from rays alone; the fan structure plays no role.
pub fn moment_polytope_of_rays(
    dim: usize,
    rays: &[Vec<Int>],
    d: &TorusDivisor,
) -> Result<RationalPolytope> {
    if rays.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: rays.len(),
            got: d.len(),
        });
    }
    let hs: Vec<Halfspace> = rays
        .iter()
        .zip(d.coeffs())
        .map(|(r, b)| Halfspace::new(r.clone(), b.clone()))
        .collect();
    RationalPolytope::from_halfspaces(dim, &hs)
}

/// Rows of the class matrix as rational vectors, one per prime divisor.
pub fn ray_classes(x: &ToricVariety) -> Vec<Vec<Int>> {
    (0..x.ray_count())
        .map(|i| x.class_group().ray_class(i))
        .collect()
}

/// Some divisor with the given free class (when the class group is free, any
/// two such divisors are linearly equivalent).
pub fn divisor_with_class(x: &ToricVariety, class: &[Rat]) -> Result<TorusDivisor> {
    let q = x.class_group().matrix().to_rational();
    let sol = solve_rational(&q, class)
        .ok_or_else(|| Error::Internal("class map is not surjective".into()))?;
    Ok(TorusDivisor::new(sol))
}
