//! Projectivized split bundles `P_X(O(D_1) + ... + O(D_t))`.

use num_traits::{One, Zero};

use super::{Fan, ToricVariety};
use crate::error::{Error, Result};
use crate::linalg::{Int, Rat};

/// Rays of the bundle fan: each base ray `rho_i` lifted to
/// `(rho_i, M[1][i]-M[0][i], ..., M[t-1][i]-M[0][i])`, in base order, then the
/// fiber rays `-(e_1+...+e_{t-1}), e_1, ..., e_{t-1}`.
///
/// The first row of `m` is the reference summand. Differences of rows must be
/// integral.
pub fn proj_rays(rays: &[Vec<Int>], m: &[Vec<Rat>]) -> Result<Vec<Vec<Int>>> {
    let t = m.len();
    if t == 0 {
        return Err(Error::InvalidInput(
            "bundle needs at least one summand".into(),
        ));
    }
    for row in m {
        if row.len() != rays.len() {
            return Err(Error::DimensionMismatch {
                expected: rays.len(),
                got: row.len(),
            });
        }
    }
    let mut out = Vec::with_capacity(rays.len() + t);
    for (i, r) in rays.iter().enumerate() {
        let mut v = r.clone();
        for row in &m[1..] {
            let d = &row[i] - &m[0][i];
            if !d.is_integer() {
                return Err(Error::NotCartier(format!(
                    "twist {d} on ray {i} is not integral"
                )));
            }
            v.push(d.to_integer());
        }
        out.push(v);
    }
    let n = rays.first().map_or(0, Vec::len);
    let fiber = t - 1;
    let mut neg = vec![Int::zero(); n + fiber];
    for x in &mut neg[n..] {
        *x = -Int::one();
    }
    out.push(neg);
    for j in 0..fiber {
        let mut e = vec![Int::zero(); n + fiber];
        e[n + j] = Int::one();
        out.push(e);
    }
    Ok(out)
}

/// Maximal cones of the bundle fan in the ray order of [`proj_rays`].
pub(crate) fn bundle_cones(base: &Fan, t: usize) -> Vec<Vec<usize>> {
    let k = base.rays().len();
    let mut cones = Vec::new();
    for c in base.cones() {
        for skip in 0..t {
            let mut cone = c.clone();
            cone.extend((0..t).filter(|&j| j != skip).map(|j| k + j));
            cones.push(cone);
        }
    }
    cones
}

/// The bundle as a toric variety, rays sorted lexicographically ascending.
pub fn projective_bundle(x: &ToricVariety, m: &[Vec<Rat>]) -> Result<ToricVariety> {
    let rays = proj_rays(x.rays(), m)?;
    let cones = bundle_cones(x.fan(), m.len());
    let mut order: Vec<usize> = (0..rays.len()).collect();
    order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
    let mut pos = vec![0; rays.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let sorted: Vec<Vec<Int>> = order.iter().map(|&i| rays[i].clone()).collect();
    let cones = cones
        .into_iter()
        .map(|c| c.into_iter().map(|i| pos[i]).collect())
        .collect();
    let dim = x.dim() + m.len() - 1;
    Ok(ToricVariety::new(Fan::new(dim, sorted, cones)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ints, rats};

    #[test]
    fn bundle_over_plane() {
        let p2 = ToricVariety::projective_space(2);
        let m = vec![rats(&[0, 0, 0]), rats(&[0, 0, 1]), rats(&[0, 0, 1])];
        let y = projective_bundle(&p2, &m).unwrap();
        assert_eq!(
            y.rays(),
            &[
                ints(&[-1, -1, 1, 1]),
                ints(&[0, 0, -1, -1]),
                ints(&[0, 0, 0, 1]),
                ints(&[0, 0, 1, 0]),
                ints(&[0, 1, 0, 0]),
                ints(&[1, 0, 0, 0]),
            ]
        );
        assert!(y.is_complete() && y.is_smooth() && y.is_fano());
        assert_eq!(y.fan().cones().len(), 9);
    }

    #[test]
    fn hirzebruch_surface() {
        let p1 = ToricVariety::projective_space(1);
        let m = vec![rats(&[0, 0]), rats(&[2, 0])];
        let r = proj_rays(p1.rays(), &m).unwrap();
        assert_eq!(
            r,
            vec![ints(&[1, 2]), ints(&[-1, 0]), ints(&[0, -1]), ints(&[0, 1])]
        );
        let f2 = projective_bundle(&p1, &m).unwrap();
        assert!(f2.is_smooth() && f2.is_complete() && !f2.is_fano());
    }

    #[test]
    fn fractional_twist_rejected() {
        let p1 = ToricVariety::projective_space(1);
        let m = vec![
            rats(&[0, 0]),
            vec![Rat::new(1.into(), 2.into()), Rat::zero()],
        ];
        assert!(matches!(
            proj_rays(p1.rays(), &m),
            Err(Error::NotCartier(_))
        ));
    }
}
