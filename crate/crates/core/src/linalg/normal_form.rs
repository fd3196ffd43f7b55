use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, IntegerMatrix};

/// `u * a * v == d`, with `d` diagonal and `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        (0..self.d.rows().min(self.d.cols()))
            .take_while(|&i| !self.d[(i, i)].is_zero())
            .count()
    }

    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivot rule: the nonzero entry of smallest absolute value in the active
/// submatrix, ties broken by lowest (row, col). The output is therefore
/// deterministic for a given input.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_pivot(&d, t) else {
                return finish(d, u, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let p = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(d, u, v)
}

fn finish(d: IntegerMatrix, u: IntegerMatrix, v: IntegerMatrix) -> SmithForm {
    SmithForm { d, u, v }
}

fn smallest_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// `u * a == h` with `h` in row Hermite normal form.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    pub pivots: Vec<usize>,
}

/// Row-style Hermite normal form: positive pivots, entries above a pivot
/// reduced into `[0, pivot)`, zero rows last.
pub fn hermite_normal_form(a: &IntegerMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()).then(i.cmp(&j)));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, c)] / &h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&p);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm { h, u, pivots }
}

/// Z-basis of `{x in Z^cols : a x = 0}`. The basis is saturated and returned
/// Hermite-reduced (as rows), so the output is canonical.
pub fn integer_kernel(a: &IntegerMatrix) -> Vec<Vec<Int>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let basis: Vec<Vec<Int>> = (r..a.cols()).map(|j| snf.v.col(j)).collect();
    if basis.is_empty() {
        return basis;
    }
    let hnf = hermite_normal_form(&IntegerMatrix::from_rows(&basis, a.cols()));
    hnf.h.to_rows().into_iter().take(basis.len()).collect()
}

/// Integer solution of `a x = b`, if any.
pub fn solve_integer(a: &IntegerMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![Int::zero(); a.cols()];
    for i in 0..r {
        let (q, rem) = c[i].div_rem(&snf.d[(i, i)]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(snf.v.mul_vec(&y))
}
