//! Geometric realizations of toric birational maps, their unprunings and the
//! Fano variant.
//!
//! Every construction goes through the `P^1`-bundle `W = P_Y(O(E) + O(F))`
//! built by [`proj_rays`]; the action is along the last coordinate.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chambers::modify;
use crate::cstar::{ActionContext, ActionReport};
use crate::error::{Error, Result};
use crate::linalg::{self, rat_from_int, Int, Rat};
use crate::polytope::{self, RationalPolytope};
use crate::toric::{moment_polytope_of_rays, proj_rays, ToricVariety, TorusDivisor};

/// Cap on `modify` rounds in [`sharp_realization`].
pub const SHARP_ATTEMPTS: usize = 64;

/// Cap on the scan in [`compute_m`].
pub const COMPUTE_M_CAP: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Geometric {
        a: TorusDivisor,
        b: TorusDivisor,
        ell: Int,
    },
    Sharp {
        a: TorusDivisor,
        b: TorusDivisor,
        seed: u64,
        modifications: usize,
    },
    Unpruning {
        e: TorusDivisor,
        f: TorusDivisor,
        a: Int,
        b: Int,
    },
    Fano {
        h: TorusDivisor,
        m: u64,
    },
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Geometric { a, b, ell } => {
                write!(f, "geometric A=({a}) B=({b}) ell={ell}")
            }
            Construction::Sharp {
                a,
                b,
                seed,
                modifications,
            } => write!(
                f,
                "sharp A=({a}) B=({b}) seed={seed} modifications={modifications}"
            ),
            Construction::Unpruning { e, f: ff, a, b } => {
                write!(f, "unpruning E=({e}) F=({ff}) a={a} b={b}")
            }
            Construction::Fano { h, m } => write!(f, "fano H=({h}) m={m}"),
        }
    }
}

/// A polarized toric `C*`-variety given by its moment polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub polytope: RationalPolytope,
    /// Scale applied to `P_D`: the lcm of the denominators of its weights.
    pub scale: Int,
    /// Rays of `W` in [`proj_rays`] order.
    pub w_rays: Vec<Vec<Int>>,
    /// The unscaled divisor on `W`.
    pub divisor: TorusDivisor,
    pub construction: Construction,
}

impl Realization {
    pub fn functional(&self) -> Vec<Int> {
        let n = self.polytope.ambient_dim();
        let mut u = vec![Int::zero(); n];
        u[n - 1] = Int::one();
        u
    }

    pub fn action(&self) -> Result<ActionContext> {
        ActionContext::last_coordinate(self.polytope.clone())
    }

    pub fn action_info(&self) -> Result<ActionReport> {
        self.action()?.action_info()
    }

    pub fn is_sharp(&self) -> Result<bool> {
        is_sharp(&self.action()?)
    }

    /// The polytope further scaled until every vertex is integral.
    pub fn lattice_polytope(&self) -> Result<RationalPolytope> {
        let k = polytope::lattice_scale_factor(&self.polytope);
        polytope::scale(&self.polytope, &rat_from_int(&k))
    }
}

fn big(y: &ToricVariety, d: &TorusDivisor) -> Result<()> {
    if d.len() != y.ray_count() {
        return Err(Error::DimensionMismatch {
            expected: y.ray_count(),
            got: d.len(),
        });
    }
    if !y.is_big(d)? {
        return Err(Error::NotBig);
    }
    Ok(())
}

fn indicator(n: usize, i: usize) -> TorusDivisor {
    TorusDivisor::prime(n, i)
}

/// Scale `P_D` so that all weights (last coordinates) are integers.
fn integral_model(
    dim: usize,
    w_rays: Vec<Vec<Int>>,
    divisor: TorusDivisor,
    construction: Construction,
) -> Result<Realization> {
    let p = moment_polytope_of_rays(dim, &w_rays, &divisor)?;
    if !p.is_full_dimensional() {
        return Err(Error::LowerDimensional);
    }
    let last: Vec<Rat> = p.vertices().iter().map(|v| v[dim - 1].clone()).collect();
    let scale = linalg::lcm_of_denominators(&last);
    let polytope = polytope::scale(&p, &rat_from_int(&scale))?;
    Ok(Realization {
        polytope,
        scale,
        w_rays,
        divisor,
        construction,
    })
}

/// `P_{m(l L + pi^* A)}` on `W = P_Y(O + O(H))`, `H = (B - A)/l`.
pub fn geometric_realization(
    y: &ToricVariety,
    a: &TorusDivisor,
    b: &TorusDivisor,
    ell: &Int,
) -> Result<Realization> {
    if ell <= &Int::zero() {
        return Err(Error::InvalidInput(format!(
            "l must be positive, got {ell}"
        )));
    }
    big(y, a)?;
    // B may sit on the boundary of the effective cone.
    if b.len() != y.ray_count() {
        return Err(Error::DimensionMismatch {
            expected: y.ray_count(),
            got: b.len(),
        });
    }
    y.moment_polytope(b)?;
    let ell_q = rat_from_int(ell);
    let h = (b - a).scaled(&(Rat::one() / &ell_q));
    if !h.is_integral() || !y.is_cartier(&h)? {
        return Err(Error::NotCartier(format!("(B-A)/l = ({h})")));
    }
    let w_rays = proj_rays(y.rays(), &[vec![Rat::zero(); h.len()], h.coeffs().to_vec()])?;
    let n = w_rays.len();
    let zero2 = [Rat::zero(), Rat::zero()];
    let d = &(&ell_q * &indicator(n, n - 2)) + &a.extended(&zero2);
    integral_model(
        y.dim() + 1,
        w_rays,
        d,
        Construction::Geometric {
            a: a.clone(),
            b: b.clone(),
            ell: ell.clone(),
        },
    )
}

/// Every step between consecutive geometric quotients is an elementary wall
/// crossing. Criticality one is sharp by definition.
pub fn is_sharp(action: &ActionContext) -> Result<bool> {
    if action.criticality() <= 1 {
        return Ok(true);
    }
    Ok(action.transitions()?.iter().all(|t| t.kind.is_elementary()))
}

/// Move `A` inside its chamber until the realization with `l = 1` is sharp.
/// A fractional `A` is cleared together with `B` by a common integer factor,
/// which changes neither chamber.
pub fn sharp_realization(
    y: &ToricVariety,
    a: &TorusDivisor,
    b: &TorusDivisor,
    seed: u64,
) -> Result<Realization> {
    let mut cur = a.clone();
    for n in 0..=SHARP_ATTEMPTS {
        if n > 0 {
            cur = modify(y, &cur, seed.wrapping_add(n as u64 - 1))?;
        }
        let k = cur.denominator_lcm().lcm(&b.denominator_lcm());
        let kq = rat_from_int(&k);
        let (ak, bk) = (cur.scaled(&kq), b.scaled(&kq));
        let g = match geometric_realization(y, &ak, &bk, &Int::one()) {
            Ok(g) => g,
            Err(Error::NotCartier(_)) => continue,
            Err(e) => return Err(e),
        };
        if g.is_sharp()? {
            return Ok(Realization {
                construction: Construction::Sharp {
                    a: cur,
                    b: b.clone(),
                    seed,
                    modifications: n,
                },
                ..g
            });
        }
    }
    Err(Error::ExhaustedAttempts(SHARP_ATTEMPTS))
}

/// `P_{L + a D_1 + b D_2}` on `W = P_Y(O(E) + O(F))`, where `D_1`, `D_2` are
/// the two sections and `L = pi^* E + D_1`.
pub fn unpruning(
    y: &ToricVariety,
    e: &TorusDivisor,
    f: &TorusDivisor,
    a: &Int,
    b: &Int,
) -> Result<Realization> {
    if a < &Int::zero() || b < &Int::zero() {
        return Err(Error::InvalidInput(
            "unpruning coefficients must be nonnegative".into(),
        ));
    }
    for d in [e, f] {
        if d.len() != y.ray_count() {
            return Err(Error::DimensionMismatch {
                expected: y.ray_count(),
                got: d.len(),
            });
        }
    }
    let w_rays = proj_rays(y.rays(), &[e.coeffs().to_vec(), f.coeffs().to_vec()])?;
    let n = w_rays.len();
    let d1 = indicator(n, n - 2);
    let d2 = indicator(n, n - 1);
    let l = &e.extended(&[Rat::zero(), Rat::zero()]) + &d1;
    let d = &(&l + &(&rat_from_int(a) * &d1)) + &(&rat_from_int(b) * &d2);
    integral_model(
        y.dim() + 1,
        w_rays,
        d,
        Construction::Unpruning {
            e: e.clone(),
            f: f.clone(),
            a: a.clone(),
            b: b.clone(),
        },
    )
}

/// Which divisor [`compute_m`] tests for ampleness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MConvention {
    /// `-m K_Y + H`, as in the reference implementation.
    #[default]
    Code,
    /// `-(m K_Y + H) = -m K_Y - H`, as in the prose.
    Prose,
}

/// Least `m >= 1` with `-m K_Y + H` (or `-m K_Y - H`) ample.
pub fn compute_m(y: &ToricVariety, h: &TorusDivisor, convention: MConvention) -> Result<u64> {
    if !y.is_fano() {
        return Err(Error::NotFano);
    }
    if h.len() != y.ray_count() {
        return Err(Error::DimensionMismatch {
            expected: y.ray_count(),
            got: h.len(),
        });
    }
    let k = y.anticanonical();
    let h = match convention {
        MConvention::Code => h.clone(),
        MConvention::Prose => -h,
    };
    for m in 1..=COMPUTE_M_CAP {
        let d = &k.scaled(&Rat::from_integer(Int::from(m))) + &h;
        if y.is_ample(&d)? {
            return Ok(m);
        }
    }
    Err(Error::NoSuchM(COMPUTE_M_CAP))
}

/// The unpruning `unpruning(Y, -mK - H, -mK, m - 1, m)`, whose total space is
/// the anticanonical model of `W`.
pub fn fano_realization(
    y: &ToricVariety,
    h: &TorusDivisor,
    convention: MConvention,
) -> Result<Realization> {
    let m = compute_m(y, h, convention)?;
    let mk = y.anticanonical().scaled(&Rat::from_integer(Int::from(m)));
    let e = &mk - h;
    big(y, &e)?;
    big(y, &mk)?;
    let r = unpruning(y, &e, &mk, &Int::from(m - 1), &Int::from(m))?;
    Ok(Realization {
        construction: Construction::Fano { h: h.clone(), m },
        ..r
    })
}

/// Whether the polytope of a realization is a lattice polytope.
pub fn is_lattice(r: &Realization) -> bool {
    r.polytope
        .vertices()
        .iter()
        .all(|v| linalg::lcm_of_denominators(v).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rats;
    use crate::toric::{projective_bundle, ToricVariety};

    fn bundle53() -> ToricVariety {
        let p2 = ToricVariety::projective_space(2);
        projective_bundle(&p2, &[rats(&[0, 0, 0]), rats(&[0, 0, 1]), rats(&[0, 0, 1])]).unwrap()
    }

    #[test]
    fn p2_to_itself() {
        // A = B: the product P^2 x P^1, criticality one.
        let y = ToricVariety::projective_space(2);
        let a = TorusDivisor::from_ints(&[0, 0, 1]);
        let g = geometric_realization(&y, &a, &a, &Int::one()).unwrap();
        assert_eq!(g.polytope.vertex_count(), 6);
        assert!(is_lattice(&g));
        let info = g.action_info().unwrap();
        assert_eq!(info.criticality, 1);
        assert!(g.is_sharp().unwrap());
    }

    #[test]
    fn non_cartier_difference() {
        let y = ToricVariety::projective_space(2);
        let a = TorusDivisor::from_ints(&[0, 0, 1]);
        let b = TorusDivisor::from_ints(&[0, 0, 2]);
        assert!(matches!(
            geometric_realization(&y, &a, &b, &Int::from(2)),
            Err(Error::NotCartier(_))
        ));
        assert!(geometric_realization(&y, &a, &b, &Int::one()).is_ok());
    }

    #[test]
    fn not_big_rejected() {
        let y = ToricVariety::projective_space(2);
        let a = TorusDivisor::from_ints(&[0, 0, 1]);
        let z = TorusDivisor::zero(3);
        assert!(matches!(
            geometric_realization(&y, &z, &a, &Int::one()),
            Err(Error::NotBig)
        ));
    }

    #[test]
    fn compute_m_on_plane() {
        let y = ToricVariety::projective_space(2);
        assert_eq!(
            compute_m(&y, &TorusDivisor::zero(3), MConvention::Code).unwrap(),
            1
        );
        let h = TorusDivisor::from_ints(&[-2, 0, 0]);
        assert_eq!(compute_m(&y, &h, MConvention::Code).unwrap(), 1);
        let h = TorusDivisor::from_ints(&[-4, 0, 0]);
        assert_eq!(compute_m(&y, &h, MConvention::Code).unwrap(), 2);
        assert_eq!(compute_m(&y, &h, MConvention::Prose).unwrap(), 1);
    }

    #[test]
    fn unpruning_of_equal_summands_is_product() {
        let y = ToricVariety::projective_space(2);
        let e = TorusDivisor::from_ints(&[1, 0, 0]);
        let r = unpruning(&y, &e, &e, &Int::zero(), &Int::zero()).unwrap();
        // Triangle times segment.
        assert_eq!(r.polytope.vertex_count(), 6);
        assert_eq!(r.polytope.facet_count(), 5);
        let fan = polytope::normal_fan(&r.polytope).unwrap();
        assert!(fan.is_smooth());
    }

    #[test]
    fn bundle_example_flip() {
        let y = bundle53();
        let a = TorusDivisor::from_ints(&[2, 2, 0, 0, 0, 0]);
        let b = TorusDivisor::from_ints(&[-1, 2, 0, 0, 0, 0]);
        let g = geometric_realization(&y, &a, &b, &Int::from(3)).unwrap();
        let info = g.action_info().unwrap();
        assert_eq!(info.criticality, 2);
    }
}
