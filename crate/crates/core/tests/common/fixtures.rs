//! The worked examples: Batyrev's Fano 4-fold #33, the P^1-bundle over P^2
//! and the truncated hypercube.

use toric_realize::linalg::{ints, rats, Int, Rat};
use toric_realize::toric::{
    from_primitive_relations, parse_primitive_relations, projective_bundle, PrimitiveRelations,
};
use toric_realize::{Halfspace, RationalPolytope, ToricVariety, TorusDivisor};

pub const BATYREV_PR: &str = include_str!("../../../../data/batyrev33.pr");

pub const RUN1: &str = "\
The criticality of the action is 3
The weights are [0,4,9,12]
The polytopes of fixed point components have [8,1,1,8] vertices
The map GX_0 --> GX_1 is a flip
The map GX_1 --> GX_2 is a flip
The variety is complete, is Q-factorial, is not smooth, is Fano
";

pub const RUN2: &str = "\
The criticality of the action is 5
The weights are [0,2,5,7,8,12]
The polytopes of fixed point components have [8,2,1,1,2,8] vertices
The map GX_0 --> GX_1 is a divisorial extraction
The map GX_1 --> GX_2 is a flip
The map GX_2 --> GX_3 is a flip
The map GX_3 --> GX_4 is a divisorial contraction
The variety is complete, is Q-factorial, is not smooth, is not Fano
";

pub const FANO_RUN: &str = "\
The criticality of the action is 4
The weights are [-12,-1,7,9,12]
The polytopes of fixed point components have [12,1,2,1,8] vertices
The map GX_0 --> GX_1 is a flip
The map GX_1 --> GX_2 is a divisorial contraction
The map GX_2 --> GX_3 is a flip
The variety is complete, is Q-factorial, is not smooth, is Fano
";

pub const BUNDLE_RUN_B: &str = "\
The criticality of the action is 2
The weights are [0,2,3]
The polytopes of fixed point components have [9,1,8] vertices
The map GX_0 --> GX_1 is a flip
The variety is complete, is Q-factorial, is smooth, is not Fano
";

pub const BUNDLE_RUN_C: &str = "\
The criticality of the action is 2
The weights are [0,2,4]
The polytopes of fixed point components have [9,1,2] vertices
The map GX_0 --> GX_1 is a flip
The variety is complete, is Q-factorial, is smooth, is Fano
";

pub fn batyrev_relations() -> PrimitiveRelations {
    parse_primitive_relations(BATYREV_PR).expect("bundled relations parse")
}

pub fn batyrev() -> ToricVariety {
    from_primitive_relations(&batyrev_relations()).expect("relations define a fan")
}

pub fn divisor(s: &str, len: usize) -> TorusDivisor {
    TorusDivisor::parse_for(s, len).expect("valid literal")
}

/// `P(O + O(D_3) + O(D_3))` over the plane, rays sorted.
pub fn bundle() -> ToricVariety {
    let p2 = ToricVariety::projective_space(2);
    projective_bundle(&p2, &[rats(&[0, 0, 0]), rats(&[0, 0, 1]), rats(&[0, 0, 1])])
        .expect("integral twists")
}

pub fn bundle_rays() -> Vec<Vec<Int>> {
    [
        [-1, -1, 1, 1],
        [0, 0, -1, -1],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [1, 0, 0, 0],
    ]
    .iter()
    .map(|r| ints(r))
    .collect()
}

/// `[0,3]^4` with both diagonal corners cut at depth one.
pub fn truncated_hypercube() -> RationalPolytope {
    let q = |v: i64| Rat::from_integer(Int::from(v));
    let mut hs = Vec::new();
    for i in 0..4 {
        let mut e = vec![0i64; 4];
        e[i] = 1;
        hs.push(Halfspace::new(ints(&e), q(0)));
        e[i] = -1;
        hs.push(Halfspace::new(ints(&e), q(3)));
    }
    hs.push(Halfspace::new(ints(&[1, 1, 1, 1]), q(-1)));
    hs.push(Halfspace::new(ints(&[-1, -1, -1, -1]), q(11)));
    RationalPolytope::from_halfspaces(4, &hs).expect("nonempty")
}
