//! Exact rational polytopes with both descriptions kept in canonical form.

mod cone;
pub(crate) mod dd;
mod io;

pub use cone::PolyhedralCone;
pub use io::{parse_polytope, write_off, write_polytope};

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    self, gcd_slice, lcm_of_denominators, pair, primitive, rat_from_int, Int, IntegerMatrix, Rat,
};
use crate::toric::Fan;
use dd::BitSet;

/// The inequality `<normal, m> + offset >= 0` (or `= 0` for an equation).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: Vec<Int>, offset: Rat) -> Self {
        Self { normal, offset }
    }

    pub fn eval(&self, m: &[Rat]) -> Rat {
        pair(&self.normal, m) + &self.offset
    }

    /// Homogenized integer row `(l*normal, l*offset)`, primitive.
    fn homogenized(&self) -> Vec<Int> {
        let l = self.offset.denom().clone();
        let mut row: Vec<Int> = self.normal.iter().map(|a| a * &l).collect();
        row.push(self.offset.numer().clone());
        primitive(&row)
    }

    fn from_homogenized(row: &[Int]) -> Self {
        let (normal, last) = row.split_at(row.len() - 1);
        let g = gcd_slice(normal);
        let g = if g.is_zero() { Int::one() } else { g };
        Self {
            normal: normal.iter().map(|a| a / &g).collect(),
            offset: Rat::new(last[0].clone(), g),
        }
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n: Vec<String> = self.normal.iter().map(|x| x.to_string()).collect();
        write!(f, "<({}), m> + {} >= 0", n.join(","), self.offset)
    }
}

/// A nonempty rational polytope.
///
/// Vertices and facets are both stored, sorted lexicographically; facet
/// normals are primitive integer vectors. For lower-dimensional polytopes the
/// affine hull is kept as a list of equations and facet normals are chosen in
/// the linear span of the homogenized vertices, which makes them unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Rat>>,
    facets: Vec<Halfspace>,
    equations: Vec<Halfspace>,
    incidence: Vec<Vec<bool>>,
}

impl RationalPolytope {
    /// Convex hull of a finite point set.
    pub fn from_vertices(ambient_dim: usize, points: &[Vec<Rat>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        for p in points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let pts = drop_interior(ambient_dim, pts);

        let gens: Vec<Vec<Int>> = pts.iter().map(|p| homogenize(p)).collect();
        let hull = dd::cone_hull(ambient_dim + 1, &gens);

        // The apex facet of a single-ray cone is no face of the polytope.
        let mut facets: Vec<Halfspace> = hull
            .facets
            .iter()
            .filter(|f| gens.iter().any(|g| linalg::dot_int(f, g).is_zero()))
            .map(|f| Halfspace::from_homogenized(f))
            .collect();
        facets.sort();

        let mut equations: Vec<Halfspace> = hull
            .equations
            .iter()
            .map(|e| Halfspace::from_homogenized(e))
            .collect();
        equations.sort();

        let tight: Vec<BitSet> = pts
            .iter()
            .map(|p| {
                let mut s = BitSet::new(facets.len());
                for (i, f) in facets.iter().enumerate() {
                    if f.eval(p).is_zero() {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        // A point is a vertex iff no other point lies on all of its facets.
        let vertices: Vec<Vec<Rat>> = (0..pts.len())
            .filter(|&i| (0..pts.len()).all(|j| j == i || !tight[i].is_subset(&tight[j])))
            .map(|i| pts[i].clone())
            .collect();

        Ok(Self::assemble(ambient_dim, vertices, facets, equations))
    }

    /// Intersection of halfspaces `<normal, m> + offset >= 0`.
    pub fn from_halfspaces(ambient_dim: usize, halfspaces: &[Halfspace]) -> Result<Self> {
        for h in halfspaces {
            if h.normal.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: h.normal.len(),
                });
            }
        }
        let mut rows: Vec<Vec<Int>> = halfspaces.iter().map(Halfspace::homogenized).collect();
        let mut t_row = vec![Int::zero(); ambient_dim + 1];
        t_row[ambient_dim] = Int::one();
        rows.push(t_row);

        let cone = dd::extreme_rays(ambient_dim + 1, &rows);
        let (finite, infinite): (Vec<_>, Vec<_>) =
            cone.rays.iter().partition(|r| r[ambient_dim].is_positive());
        if finite.is_empty() {
            return Err(Error::Empty);
        }
        if !infinite.is_empty() || !cone.lineality.is_empty() {
            return Err(Error::Unbounded);
        }
        let points: Vec<Vec<Rat>> = finite
            .iter()
            .map(|r| {
                let t = &r[ambient_dim];
                r[..ambient_dim]
                    .iter()
                    .map(|x| Rat::new(x.clone(), t.clone()))
                    .collect()
            })
            .collect();
        Self::from_vertices(ambient_dim, &points)
    }

    fn assemble(
        ambient_dim: usize,
        vertices: Vec<Vec<Rat>>,
        facets: Vec<Halfspace>,
        equations: Vec<Halfspace>,
    ) -> Self {
        let incidence = facets
            .iter()
            .map(|f| vertices.iter().map(|v| f.eval(v).is_zero()).collect())
            .collect();
        Self {
            ambient_dim,
            vertices,
            facets,
            equations,
            incidence,
        }
    }

    pub fn point(p: Vec<Rat>) -> Self {
        let d = p.len();
        Self::from_vertices(d, &[p]).expect("single point")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    /// Facet-by-vertex incidence matrix.
    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// All inequalities, with each equation expanded into two.
    pub fn inequalities(&self) -> Vec<Halfspace> {
        let mut out = self.facets.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(Halfspace::new(
                e.normal.iter().map(|x| -x).collect(),
                -e.offset.clone(),
            ));
        }
        out
    }

    pub fn contains(&self, m: &[Rat]) -> bool {
        self.facets.iter().all(|f| !f.eval(m).is_negative())
            && self.equations.iter().all(|e| e.eval(m).is_zero())
    }

    /// Indices of facets through vertex `v`.
    pub fn facets_at_vertex(&self, v: usize) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| self.incidence[f][v])
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        let d = self.dim();
        (0..self.vertices.len()).all(|v| self.facets_at_vertex(v).len() == d)
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_integer())
    }

    /// Pairs of vertex indices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let sets: Vec<BitSet> = (0..n)
            .map(|v| {
                let mut s = BitSet::new(self.facets.len());
                for f in self.facets_at_vertex(v) {
                    s.insert(f);
                }
                s
            })
            .collect();
        let mut out = Vec::new();
        if self.dim() == 1 && n == 2 {
            return vec![(0, 1)];
        }
        for i in 0..n {
            for j in i + 1..n {
                let common = sets[i].and(&sets[j]);
                if common.count() + 1 < self.dim() {
                    continue;
                }
                if (0..n).all(|k| k == i || k == j || !common.is_subset(&sets[k])) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn translate(&self, t: &[Rat]) -> Self {
        let pts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        Self::from_vertices(self.ambient_dim, &pts).expect("translation of nonempty polytope")
    }
}

/// Points with at most this many candidates go straight to the hull.
const PRUNE_THRESHOLD: usize = 24;

/// Remove points that lie in the hull of a few certified vertices.
///
/// The maximizers of small integer directions (lexicographically largest
/// among ties) are vertices; any other point inside their hull is not.
fn drop_interior(dim: usize, pts: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    if pts.len() <= PRUNE_THRESHOLD || dim == 0 {
        return pts;
    }
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    if dim <= 4 {
        let total = 3usize.pow(dim as u32);
        for code in 0..total {
            let mut c = code;
            let v: Vec<i64> = (0..dim)
                .map(|_| {
                    let x = (c % 3) as i64 - 1;
                    c /= 3;
                    x
                })
                .collect();
            if v.iter().any(|&x| x != 0) {
                dirs.push(v);
            }
        }
    } else {
        for i in 0..dim {
            for s in [-1, 1] {
                let mut v = vec![0; dim];
                v[i] = s;
                dirs.push(v);
            }
        }
    }
    let mut seeds: Vec<usize> = dirs
        .iter()
        .map(|c| {
            let val = |p: &Vec<Rat>| -> Rat {
                p.iter().zip(c).fold(Rat::zero(), |acc, (x, &k)| {
                    acc + x * Rat::from_integer(Int::from(k))
                })
            };
            let mut best = 0;
            let mut bv = val(&pts[0]);
            for (i, p) in pts.iter().enumerate().skip(1) {
                let v = val(p);
                // `pts` is sorted, so a later tie is lexicographically larger.
                if v >= bv {
                    best = i;
                    bv = v;
                }
            }
            best
        })
        .collect();
    seeds.sort_unstable();
    seeds.dedup();
    if seeds.len() < 2 || seeds.len() == pts.len() {
        return pts;
    }
    let gens: Vec<Vec<Int>> = seeds.iter().map(|&i| homogenize(&pts[i])).collect();
    let hull = dd::cone_hull(dim + 1, &gens);
    let inside = |p: &[Rat]| {
        let h = homogenize(p);
        hull.equations
            .iter()
            .all(|e| linalg::dot_int(e, &h).is_zero())
            && hull
                .facets
                .iter()
                .all(|f| !linalg::dot_int(f, &h).is_negative())
    };
    pts.into_iter()
        .enumerate()
        .filter(|(i, p)| seeds.binary_search(i).is_ok() || !inside(p))
        .map(|(_, p)| p)
        .collect()
}

fn homogenize(p: &[Rat]) -> Vec<Int> {
    let l = lcm_of_denominators(p);
    let lr = rat_from_int(&l);
    let mut row: Vec<Int> = p.iter().map(|x| (x * &lr).to_integer()).collect();
    row.push(l);
    row
}

/// Hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &RationalPolytope, q: &RationalPolytope) -> Result<RationalPolytope> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim,
            got: q.ambient_dim,
        });
    }
    let mut sums = Vec::with_capacity(p.vertex_count() * q.vertex_count());
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<Rat>>());
        }
    }
    RationalPolytope::from_vertices(p.ambient_dim, &sums)
}

/// `P ∩ {a <= <m,u> <= b}`.
pub fn slab(p: &RationalPolytope, u: &[Int], a: &Rat, b: &Rat) -> Result<RationalPolytope> {
    if a > b {
        return Err(Error::InvalidInput(format!("slab bounds {a} > {b}")));
    }
    let mut hs = p.inequalities();
    hs.push(Halfspace::new(u.to_vec(), -a.clone()));
    hs.push(Halfspace::new(u.iter().map(|x| -x).collect(), b.clone()));
    RationalPolytope::from_halfspaces(p.ambient_dim, &hs)
}

/// Image under deletion of coordinate `j`.
pub fn project_coordinate(p: &RationalPolytope, j: usize) -> Result<RationalPolytope> {
    let pts: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect();
    RationalPolytope::from_vertices(p.ambient_dim - 1, &pts)
}

/// Unimodular matrix whose last row is the primitive vector `u`. For a
/// coordinate vector `e_j` this is the permutation moving coordinate `j` last,
/// so the remaining coordinates keep their order.
pub fn unimodular_completion(u: &[Int]) -> Result<IntegerMatrix> {
    let n = u.len();
    if !linalg::is_primitive(u) {
        return Err(Error::InvalidInput("functional must be primitive".into()));
    }
    let nonzero: Vec<usize> = (0..n).filter(|&i| !u[i].is_zero()).collect();
    if nonzero.len() == 1 && u[nonzero[0]].abs().is_one() {
        let j = nonzero[0];
        let mut q = IntegerMatrix::zeros(n, n);
        for (r, i) in (0..n).filter(|&i| i != j).enumerate() {
            q[(r, i)] = Int::one();
        }
        q[(n - 1, j)] = u[j].clone();
        return Ok(q);
    }
    // u V = ±e_1, so the first row of V^{-1} is ±u.
    let snf = linalg::smith_normal_form(&IntegerMatrix::from_rows(&[u.to_vec()], n));
    let vinv = snf
        .v
        .to_rational()
        .inverse()
        .ok_or_else(|| Error::Internal("singular unimodular matrix".into()))?;
    let mut q = IntegerMatrix::zeros(n, n);
    for i in 0..n {
        let src = if i == n - 1 { 0 } else { i + 1 };
        for j in 0..n {
            q[(i, j)] = vinv[(src, j)].to_integer();
        }
    }
    if q.row(n - 1) != u {
        q.negate_row(n - 1);
    }
    debug_assert_eq!(q.row(n - 1), u);
    Ok(q)
}

/// Image of `P` under `m -> (first n-1 coordinates of Q m)`, where `Q` is
/// [`unimodular_completion`] of `u`. The lattice `u^⊥ ∩ M` maps onto `Z^{n-1}`.
pub fn project_out(p: &RationalPolytope, u: &[Int]) -> Result<RationalPolytope> {
    let q = unimodular_completion(u)?.to_rational();
    let n = p.ambient_dim;
    let pts: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| {
            let mut w = q.mul_vec(v);
            w.truncate(n - 1);
            w
        })
        .collect();
    RationalPolytope::from_vertices(n - 1, &pts)
}

/// Projection along coordinate `j` by Fourier–Motzkin elimination on the
/// inequality description. Independent of [`project_coordinate`].
pub fn fourier_motzkin(p: &RationalPolytope, j: usize) -> Result<RationalPolytope> {
    let hs = p.inequalities();
    let mut out: Vec<Halfspace> = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for h in &hs {
        let c = &h.normal[j];
        if c.is_zero() {
            out.push(drop_coord(h, j));
        } else if c.is_positive() {
            pos.push(h);
        } else {
            neg.push(h);
        }
    }
    for a in &pos {
        for b in &neg {
            // |b_j| * a + a_j * b eliminates coordinate j.
            let ka = b.normal[j].abs();
            let kb = a.normal[j].clone();
            let normal: Vec<Int> = a
                .normal
                .iter()
                .zip(&b.normal)
                .map(|(x, y)| x * &ka + y * &kb)
                .collect();
            let offset = &a.offset * rat_from_int(&ka) + &b.offset * rat_from_int(&kb);
            out.push(drop_coord(&Halfspace::new(normal, offset), j));
        }
    }
    RationalPolytope::from_halfspaces(p.ambient_dim - 1, &out)
}

fn drop_coord(h: &Halfspace, j: usize) -> Halfspace {
    let normal = h
        .normal
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, x)| x.clone())
        .collect();
    Halfspace::new(normal, h.offset.clone())
}

pub fn scale(p: &RationalPolytope, factor: &Rat) -> Result<RationalPolytope> {
    if !factor.is_positive() {
        return Err(Error::InvalidInput("scale factor must be positive".into()));
    }
    let pts: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| v.iter().map(|x| x * factor).collect())
        .collect();
    RationalPolytope::from_vertices(p.ambient_dim, &pts)
}

/// Least positive integer `m` such that `m P` is a lattice polytope.
pub fn lattice_scale_factor(p: &RationalPolytope) -> Int {
    lcm_of_denominators(p.vertices.iter().flatten())
}

/// Normal fan: one maximal cone per vertex, spanned by the inner normals of
/// the facets through it.
pub fn normal_fan(p: &RationalPolytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::LowerDimensional);
    }
    let rays: Vec<Vec<Int>> = p.facets.iter().map(|f| f.normal.clone()).collect();
    let mut cones: Vec<Vec<usize>> = (0..p.vertex_count())
        .map(|v| p.facets_at_vertex(v))
        .collect();
    cones.sort();
    Ok(Fan::from_parts_unchecked(p.ambient_dim, rays, cones))
}

/// Equality of normal fans. This is stricter than face-lattice isomorphism,
/// which is what Mori equivalence of torus-invariant divisors needs.
/// Lower-dimensional inputs compare equal only when both are points.
pub fn combinatorially_equivalent(p: &RationalPolytope, q: &RationalPolytope) -> bool {
    if p.ambient_dim != q.ambient_dim {
        return false;
    }
    match (normal_fan(p), normal_fan(q)) {
        (Ok(a), Ok(b)) => a == b,
        _ => p.dim() == 0 && q.dim() == 0,
    }
}

/// Vertex cones keyed by facet normals; used to compare polytopes whose facet
/// lists are indexed differently.
pub fn vertex_normal_cones(p: &RationalPolytope) -> Vec<Vec<Vec<Int>>> {
    let mut out: Vec<Vec<Vec<Int>>> = (0..p.vertex_count())
        .map(|v| {
            p.facets_at_vertex(v)
                .into_iter()
                .map(|f| p.facets[f].normal.clone())
                .collect()
        })
        .collect();
    out.sort();
    out
}
