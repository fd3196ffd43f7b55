use std::fmt::{self, Write as _};

use super::FixedComponent;
use crate::chambers::{FacetCounts, WallType};
use crate::linalg::Rat;
use crate::toric::ToricVariety;

/// How consecutive geometric quotients are related.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionKind {
    /// An elementary wall crossing.
    Wall(WallType),
    /// Facet counts fail the wall test; the coarse type is still recorded.
    NonElementary(WallType),
    /// Same normal fan on both sides.
    Isomorphism,
}

impl TransitionKind {
    pub fn is_elementary(self) -> bool {
        matches!(self, TransitionKind::Wall(_))
    }

    pub fn wall_type(self) -> Option<WallType> {
        match self {
            TransitionKind::Wall(t) | TransitionKind::NonElementary(t) => Some(t),
            TransitionKind::Isomorphism => None,
        }
    }

    fn key(self) -> String {
        match self {
            TransitionKind::Wall(t) => t.key().to_string(),
            TransitionKind::NonElementary(t) => format!("non_elementary:{}", t.key()),
            TransitionKind::Isomorphism => "isomorphism".to_string(),
        }
    }
}

/// The map `GX_index --> GX_{index+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub index: usize,
    pub kind: TransitionKind,
    pub counts: Option<FacetCounts>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarietyFlags {
    pub complete: bool,
    pub q_factorial: bool,
    pub smooth: bool,
    pub fano: bool,
}

impl VarietyFlags {
    pub fn of(x: &ToricVariety) -> Self {
        Self {
            complete: x.is_complete(),
            q_factorial: x.is_simplicial(),
            smooth: x.is_smooth(),
            fano: x.is_fano(),
        }
    }
}

impl fmt::Display for VarietyFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let is = |b: bool| if b { "is" } else { "is not" };
        write!(
            f,
            "{} complete, {} Q-factorial, {} smooth, {} Fano",
            is(self.complete),
            is(self.q_factorial),
            is(self.smooth),
            is(self.fano)
        )
    }
}

/// What the action tells about the induced factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub criticality: usize,
    pub weights: Vec<Rat>,
    pub fixed_vertex_counts: Vec<usize>,
    pub components: Vec<FixedComponent>,
    pub transitions: Vec<Transition>,
    pub flags: VarietyFlags,
}

fn bracket<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl ActionReport {
    /// True when every step is an elementary wall crossing.
    pub fn is_sharp(&self) -> bool {
        self.transitions.iter().all(|t| t.kind.is_elementary())
    }

    pub fn wall_types(&self) -> Vec<Option<WallType>> {
        self.transitions
            .iter()
            .map(|t| t.kind.wall_type())
            .collect()
    }

    /// The printout in the shape of the original `action_info`.
    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "The criticality of the action is {}", self.criticality).unwrap();
        writeln!(s, "The weights are {}", bracket(&self.weights)).unwrap();
        writeln!(
            s,
            "The polytopes of fixed point components have {} vertices",
            bracket(&self.fixed_vertex_counts)
        )
        .unwrap();
        for t in &self.transitions {
            let what = match t.kind {
                TransitionKind::Wall(w) => format!("is a {w}"),
                TransitionKind::NonElementary(w) => {
                    format!("is not an elementary wall crossing (facet counts of a {w})")
                }
                TransitionKind::Isomorphism => "is an isomorphism".to_string(),
            };
            writeln!(s, "The map GX_{} --> GX_{} {}", t.index, t.index + 1, what).unwrap();
        }
        writeln!(s, "The variety {}", self.flags).unwrap();
        s
    }

    /// Line-oriented machine-readable variant.
    pub fn structured(&self) -> String {
        let mut s = String::new();
        writeln!(s, "action-report v1").unwrap();
        writeln!(s, "criticality {}", self.criticality).unwrap();
        writeln!(s, "weights {}", bracket(&self.weights)).unwrap();
        writeln!(
            s,
            "fixed_vertex_counts {}",
            bracket(&self.fixed_vertex_counts)
        )
        .unwrap();
        writeln!(s, "components {}", self.components.len()).unwrap();
        for c in &self.components {
            writeln!(s, "component {} {}", c.weight, bracket(&c.vertices)).unwrap();
        }
        writeln!(s, "transitions {}", self.transitions.len()).unwrap();
        for t in &self.transitions {
            let counts = match t.counts {
                Some(c) => format!(" {} {} {}", c.a, c.b, c.sum),
                None => String::new(),
            };
            writeln!(
                s,
                "GX_{} GX_{} {}{}",
                t.index,
                t.index + 1,
                t.kind.key(),
                counts
            )
            .unwrap();
        }
        let f = &self.flags;
        writeln!(
            s,
            "flags complete={} q_factorial={} smooth={} fano={}",
            f.complete, f.q_factorial, f.smooth, f.fano
        )
        .unwrap();
        s
    }
}

impl fmt::Display for ActionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rats;

    #[test]
    fn text_shape() {
        let r = ActionReport {
            criticality: 3,
            weights: rats(&[0, 4, 9, 12]),
            fixed_vertex_counts: vec![8, 1, 1, 8],
            components: Vec::new(),
            transitions: vec![
                Transition {
                    index: 0,
                    kind: TransitionKind::Wall(WallType::Flip),
                    counts: None,
                },
                Transition {
                    index: 1,
                    kind: TransitionKind::Wall(WallType::DivisorialContraction),
                    counts: None,
                },
            ],
            flags: VarietyFlags {
                complete: true,
                q_factorial: true,
                smooth: false,
                fano: true,
            },
        };
        assert_eq!(
            r.text(),
            "The criticality of the action is 3\n\
             The weights are [0,4,9,12]\n\
             The polytopes of fixed point components have [8,1,1,8] vertices\n\
             The map GX_0 --> GX_1 is a flip\n\
             The map GX_1 --> GX_2 is a divisorial contraction\n\
             The variety is complete, is Q-factorial, is not smooth, is Fano\n"
        );
        assert!(r.is_sharp());
        assert!(r
            .structured()
            .contains("GX_1 GX_2 divisorial_contraction\n"));
    }
}
