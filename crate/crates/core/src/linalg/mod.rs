//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`Int`]) and
//! rationals ([`Rat`]). There is no floating point anywhere in the crate.

mod matrix;
mod normal_form;

pub use matrix::{IntegerMatrix, RationalMatrix};
pub use normal_form::{
    hermite_normal_form, integer_kernel, smith_normal_form, solve_integer, HermiteForm, SmithForm,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Pairing of an integer functional with a rational point.
pub fn pair(u: &[Int], m: &[Rat]) -> Rat {
    u.iter().zip(m).fold(Rat::zero(), |acc, (x, y)| acc + y * x)
}

pub fn gcd_slice(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_slice(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_primitive(v: &[Int]) -> bool {
    gcd_slice(v).is_one()
}

pub fn lcm_of_denominators<'a>(v: impl IntoIterator<Item = &'a Rat>) -> Int {
    v.into_iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

/// Scales a rational vector by a positive integer so that it becomes integral
/// and primitive. Direction is preserved.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let l = lcm_of_denominators(v);
    let scaled: Vec<Int> = v
        .iter()
        .map(|x| (x * rat_from_int(&l)).to_integer())
        .collect();
    primitive(&scaled)
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Rank over Q of a list of integer row vectors.
pub fn rank_int(rows: &[Vec<Int>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    RationalMatrix::from_int_rows(rows).rank()
}

pub fn abs_det_int(rows: &[Vec<Int>]) -> Int {
    RationalMatrix::from_int_rows(rows)
        .determinant()
        .abs()
        .to_integer()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

/// Parses a comma- or whitespace-separated list of fractions.
pub fn parse_rat_list(s: &str) -> Option<Vec<Rat>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_rat)
        .collect()
}

pub fn parse_int_list(s: &str) -> Option<Vec<Int>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Int>().ok())
        .collect()
}

/// Solves `A x = b` over Q. Returns `None` when the system is inconsistent.
/// Free variables are set to zero, so the answer is one particular solution.
pub fn solve_rational(a: &RationalMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let cols = a.cols();
    let mut aug = RationalMatrix::zeros(a.rows(), cols + 1);
    for i in 0..a.rows() {
        for j in 0..cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, cols)] = b[i].clone();
    }
    let pivots = aug.rref_in_place();
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, cols)].clone();
    }
    Some(x)
}

/// Basis (over Q) of the right kernel, scaled to primitive integer vectors.
pub fn rational_kernel(rows: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    let mut m = if rows.is_empty() {
        RationalMatrix::zeros(0, cols)
    } else {
        RationalMatrix::from_int_rows(rows)
    };
    let pivots = m.rref_in_place();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[(r, free)].clone();
        }
        basis.push(clear_denominators(&v));
    }
    basis
}

/// Maximal linearly independent subset of the rows, returned as indices in
/// the order they were accepted (greedy, first to last).
pub fn independent_rows(rows: &[Vec<Int>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Int>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        basis.push(r.clone());
        if rank_int(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}
