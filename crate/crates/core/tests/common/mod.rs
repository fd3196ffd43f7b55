//! Strategies and property bodies shared by the property suite and the
//! acceptance harness.
#![allow(dead_code)]

pub mod fixtures;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

use toric_realize::chambers::{classify_wall, is_wall_crossing, modify, same_chamber};
use toric_realize::cstar::ActionContext;
use toric_realize::linalg::{self, Int, Rat};
use toric_realize::polytope::{self, RationalPolytope};
use toric_realize::toric::{ToricVariety, TorusDivisor};

pub const CASES: u32 = 200;

pub fn q(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Full-dimensional lattice polytopes in dimensions 2 to 4.
pub fn polytope() -> impl Strategy<Value = RationalPolytope> {
    (2usize..=4).prop_flat_map(polytope_in)
}

/// Two polytopes of the same dimension.
pub fn polytope_pair() -> impl Strategy<Value = (RationalPolytope, RationalPolytope)> {
    (2usize..=4).prop_flat_map(|d| (polytope_in(d), polytope_in(d)))
}

pub fn polytope_in(d: usize) -> impl Strategy<Value = RationalPolytope> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, d), d + 1..d + 7).prop_filter_map(
        "lower-dimensional sample",
        move |pts| {
            let pts: Vec<Vec<Rat>> = pts
                .iter()
                .map(|p| p.iter().map(|&x| q(x)).collect())
                .collect();
            RationalPolytope::from_vertices(d, &pts)
                .ok()
                .filter(|p| p.is_full_dimensional())
        },
    )
}

/// A primitive nonzero functional of the given length.
pub fn functional(d: usize) -> impl Strategy<Value = Vec<Int>> {
    prop::collection::vec(-2i64..=2, d).prop_filter_map("not primitive", |u| {
        let u: Vec<Int> = u.into_iter().map(Int::from).collect();
        linalg::is_primitive(&u).then_some(u)
    })
}

pub fn polytope_with_functional() -> impl Strategy<Value = (RationalPolytope, Vec<Int>)> {
    polytope().prop_flat_map(|p| {
        let d = p.ambient_dim();
        (Just(p), functional(d))
    })
}

/// The normal-fan variety of `p` with the divisor cutting out `p` itself.
pub fn variety_with_ample(p: &RationalPolytope) -> (ToricVariety, TorusDivisor) {
    let x = ToricVariety::from_normal_fan(p).expect("full-dimensional");
    let d = TorusDivisor::new(
        x.rays()
            .iter()
            .map(|r| {
                p.facets()
                    .iter()
                    .find(|f| &f.normal == r)
                    .expect("facet for every ray")
                    .offset
                    .clone()
            })
            .collect(),
    );
    (x, d)
}

pub fn dual_roundtrip(p: &RationalPolytope) -> Result<(), TestCaseError> {
    let back = RationalPolytope::from_halfspaces(p.ambient_dim(), &p.inequalities())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, p);
    let again = RationalPolytope::from_vertices(p.ambient_dim(), back.vertices())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&again, p);
    Ok(())
}

pub fn normal_fan_of_ample(
    p: &RationalPolytope,
    k: i64,
    shift: &[i64],
) -> Result<(), TestCaseError> {
    let (x, d) = variety_with_ample(p);
    let m: Vec<Rat> = shift.iter().take(x.dim()).map(|&s| q(s)).collect();
    let dk = &d.scaled(&q(k)) + &x.principal_divisor(&m);
    let pk = x
        .moment_polytope(&dk)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let fan = polytope::normal_fan(&pk).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(&fan == x.fan());
    prop_assert!(x.is_ample(&dk).unwrap());
    Ok(())
}

pub fn same_chamber_scaling(p: &RationalPolytope, k: i64, den: i64) -> Result<(), TestCaseError> {
    let (x, d) = variety_with_ample(p);
    let s = Rat::new(Int::from(k), Int::from(den));
    let ds = d.scaled(&s);
    prop_assert!(same_chamber(&x, &d, &ds).unwrap());
    prop_assert!(same_chamber(&x, &ds, &d).unwrap());
    Ok(())
}

fn weight_range(p: &RationalPolytope, u: &[Int]) -> (Rat, Rat) {
    let w = ActionContext::new(p.clone(), u.to_vec()).unwrap().weights();
    (w[0].clone(), w[w.len() - 1].clone())
}

/// Four parameters in the weight range, from fractions `t/8`.
fn params(p: &RationalPolytope, u: &[Int], t: [u8; 4]) -> [Rat; 4] {
    let (lo, hi) = weight_range(p, u);
    t.map(|x| &lo + (&hi - &lo) * Rat::new(Int::from(x), Int::from(8)))
}

pub fn pruning_composition(
    p: &RationalPolytope,
    u: &[Int],
    t: [u8; 4],
) -> Result<(), TestCaseError> {
    let [a0, b0, a1, b1] = params(p, u, t);
    let (a, b) = if a0 <= b0 { (a0, b0) } else { (b0, a0) };
    let (a1, b1) = if a1 <= b1 { (a1, b1) } else { (b1, a1) };
    let ctx = ActionContext::new(p.clone(), u.to_vec()).unwrap();
    let outer = ctx.pruning(&a, &b).unwrap();
    let lo = std::cmp::max(a.clone(), a1.clone());
    let hi = std::cmp::min(b.clone(), b1.clone());
    let twice = polytope::slab(&outer, u, &a1, &b1);
    if lo > hi {
        prop_assert!(twice.is_err());
        return Ok(());
    }
    let direct = ctx.pruning(&lo, &hi).unwrap();
    prop_assert_eq!(twice.unwrap(), direct);
    Ok(())
}

pub fn criticality_monotone(
    p: &RationalPolytope,
    u: &[Int],
    t: [u8; 4],
) -> Result<(), TestCaseError> {
    let [a, b, _, _] = params(p, u, t);
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    prop_assume!(a < b);
    let ctx = ActionContext::new(p.clone(), u.to_vec()).unwrap();
    let pruned = ctx.pruning(&a, &b).unwrap();
    let sub = ActionContext::new(pruned, u.to_vec()).unwrap();
    prop_assert!(sub.criticality() <= ctx.criticality());
    Ok(())
}

pub fn wall_antisymmetry(p: &RationalPolytope, r: &RationalPolytope) -> Result<(), TestCaseError> {
    if polytope::combinatorially_equivalent(p, r) {
        prop_assert!(classify_wall(p, r).is_err());
        return Ok(());
    }
    let ab = classify_wall(p, r).unwrap();
    let ba = classify_wall(r, p).unwrap();
    prop_assert_eq!(ab.map(|t| t.reversed()), ba);
    prop_assert_eq!(
        is_wall_crossing(p, r).unwrap(),
        is_wall_crossing(r, p).unwrap()
    );
    Ok(())
}

pub fn reports_reproducible(
    p: &RationalPolytope,
    u: &[Int],
    seed: u64,
) -> Result<(), TestCaseError> {
    let ctx = ActionContext::new(p.clone(), u.to_vec()).unwrap();
    let r1 = ctx.action_info().unwrap();
    let r2 = ActionContext::new(p.clone(), u.to_vec())
        .unwrap()
        .action_info()
        .unwrap();
    prop_assert_eq!(r1.text(), r2.text());
    prop_assert_eq!(r1.structured(), r2.structured());
    if !p.is_simple() {
        return Ok(());
    }
    let (x, d) = variety_with_ample(p);
    let m1 = modify(&x, &d, seed);
    let m2 = modify(&x, &d, seed);
    prop_assert_eq!(&m1, &m2);
    if let Ok(m) = m1 {
        prop_assert!(m != d);
        prop_assert!(same_chamber(&x, &d, &m).unwrap());
    }
    Ok(())
}

/// Every property, each on its own thread through a fixed-config runner.
/// `Err` carries the failing case and its message.
pub fn run_all() -> Vec<(&'static str, Result<(), String>)> {
    fn runner() -> TestRunner {
        TestRunner::new(Config {
            cases: CASES,
            failure_persistence: None,
            ..Config::default()
        })
    }
    fn fmt<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
        r.map_err(|e| e.to_string())
    }
    type Job = (&'static str, fn() -> Result<(), String>);
    let jobs: [Job; 7] = [
        ("dual-description roundtrip", || {
            fmt(runner().run(&polytope(), |p| dual_roundtrip(&p)))
        }),
        ("normal fan of an ample moment polytope", || {
            fmt(runner().run(
                &(polytope(), 1i64..4, prop::collection::vec(-3i64..=3, 4)),
                |(p, k, s)| normal_fan_of_ample(&p, k, &s),
            ))
        }),
        ("same_chamber scaling invariance", || {
            fmt(runner().run(&(polytope(), 1i64..6, 1i64..4), |(p, k, d)| {
                same_chamber_scaling(&p, k, d)
            }))
        }),
        ("pruning composition", || {
            fmt(runner().run(
                &(polytope_with_functional(), prop::array::uniform4(0u8..=8)),
                |((p, u), t)| pruning_composition(&p, &u, t),
            ))
        }),
        ("criticality monotone under pruning", || {
            fmt(runner().run(
                &(polytope_with_functional(), prop::array::uniform4(0u8..=8)),
                |((p, u), t)| criticality_monotone(&p, &u, t),
            ))
        }),
        ("classify_wall antisymmetry", || {
            fmt(runner().run(&polytope_pair(), |(p, r)| wall_antisymmetry(&p, &r)))
        }),
        ("reproducible reports", || {
            fmt(runner().run(
                &(polytope_with_functional(), any::<u64>()),
                |((p, u), s)| reports_reproducible(&p, &u, s),
            ))
        }),
    ];
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(name, job)| (name, s.spawn(job)))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| {
                let r = h
                    .join()
                    .unwrap_or_else(|_| Err("property panicked".to_string()));
                (name, r)
            })
            .collect()
    })
}
