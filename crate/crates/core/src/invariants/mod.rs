//! Linking number and the second Conway coefficient of certified diagrams,
//! plus stick-number rules for polygonal curves.

pub mod braid;
pub mod gauss;
pub mod skein;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::combinatorics::{Cycle, DisjointCyclePair};
use crate::geometry::diagram::LinkDiagram;

pub use gauss::{a2_gauss_formula, ArrowPattern, A2_PATTERN};
pub use skein::{conway_coefficient, conway_polynomial, conway_skein_oracle, ConwayPolynomial, DEFAULT_ORACLE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("expected a diagram with {expected} component(s), got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("diagram has {crossings} crossings, above the oracle limit {limit}")]
    OracleLimitExceeded { crossings: usize, limit: usize },
}

/// Half the signed count of crossings between the two components.
pub fn linking_number(d: &LinkDiagram) -> Result<i64, InvariantError> {
    if d.component_count() != 2 {
        return Err(InvariantError::ComponentCount {
            expected: 2,
            got: d.component_count(),
        });
    }
    let twice: i64 = d
        .crossings()
        .iter()
        .filter(|c| c.over.component != c.under.component)
        .map(|c| c.sign as i64)
        .sum();
    debug_assert!(twice % 2 == 0);
    Ok(twice / 2)
}

/// `a₂` of a one-component diagram.
pub fn a2_of_diagram(d: &LinkDiagram) -> Result<i64, InvariantError> {
    let g = crate::geometry::diagram::gauss_diagram(d).map_err(|_| InvariantError::ComponentCount {
        expected: 1,
        got: d.component_count(),
    })?;
    Ok(a2_gauss_formula(&g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleLinkClass {
    SplitOrTrivial,
    Hopf,
    /// Outside the six-stick classification; for a rectilinear pair this is
    /// a contract violation.
    Other,
}

/// Type of a triangle-triangle link from its linking number. Only
/// rectilinear pairs (six sticks) are classified.
pub fn classify_triangle_triangle(lk: i64, rectilinear: bool) -> TriangleLinkClass {
    match (rectilinear, lk.abs()) {
        (true, 0) => TriangleLinkClass::SplitOrTrivial,
        (true, 1) => TriangleLinkClass::Hopf,
        _ => TriangleLinkClass::Other,
    }
}

/// `⌊(s−3)²(s−4)²/32⌋`, an upper bound for `a₂` of a knot with `s ≥ 3` sticks.
pub fn stick_bound_a2(sticks: u64) -> u64 {
    assert!(sticks >= 3, "a polygon has at least three sticks");
    let s = sticks as i128;
    ((s - 3).pow(2) * (s - 4).pow(2) / 32) as u64
}

/// Every value `a₂` takes on knots with at most `sticks` sticks, when known.
pub fn admissible_a2(sticks: u64) -> Option<&'static [i64]> {
    match sticks {
        0..=5 => Some(&[0]),
        6 => Some(&[0, 1]),
        7 => Some(&[-1, 0, 1]),
        8 => Some(&[-2, -1, 0, 1, 2, 3, 5]),
        _ => None,
    }
}

/// What an invariant was computed for.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subject {
    Cycle(Cycle),
    Pair(DisjointCyclePair),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Cycle(c) => c.fmt(f),
            Subject::Pair(p) => p.fmt(f),
        }
    }
}

impl Serialize for Subject {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `a₂` of a cycle or `lk` of a pair, with the diagram it was read from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub subject: Subject,
    pub value: i64,
    pub crossing_count: usize,
    pub frame_index: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::diagram::{DiagramCrossing, StrandPoint};
    use crate::geometry::frame::FrameSequence;
    use crate::geometry::projection::project;
    use crate::geometry::rational::RationalPoint3;
    use num_rational::BigRational;

    fn tri(pts: [[i64; 3]; 3]) -> Vec<RationalPoint3> {
        pts.iter()
            .map(|p| RationalPoint3::from_ints(p[0], p[1], p[2]))
            .collect()
    }

    fn hopf() -> Vec<Vec<RationalPoint3>> {
        vec![
            tri([[0, 0, 0], [4, 0, 0], [0, 4, 0]]),
            tri([[1, 1, -2], [1, 1, 2], [-3, 5, 0]]),
        ]
    }

    fn first_generic(curves: &[Vec<RationalPoint3>], seed: u64) -> LinkDiagram {
        FrameSequence::new(seed)
            .take(64)
            .find_map(|(_, f)| project(curves, &f).ok())
            .unwrap()
    }

    #[test]
    fn split_triangles_have_zero_lk() {
        let curves = vec![
            tri([[0, 0, 0], [4, 0, 0], [0, 4, 0]]),
            tri([[50, 0, 1], [54, 0, 3], [50, 4, 2]]),
        ];
        assert_eq!(linking_number(&first_generic(&curves, 1)).unwrap(), 0);
    }

    #[test]
    fn hopf_triangles_have_unit_lk() {
        for seed in 0..5 {
            let d = first_generic(&hopf(), seed);
            assert_eq!(linking_number(&d).unwrap(), 1);
            assert_eq!(conway_skein_oracle(&d).unwrap().coefficients, vec![0, 1]);
            assert_eq!(linking_number(&d.with_reversed_component(1)).unwrap(), -1);
        }
    }

    #[test]
    fn lk_needs_two_components() {
        let d = LinkDiagram::new(vec![3], Vec::new());
        assert_eq!(
            linking_number(&d),
            Err(InvariantError::ComponentCount { expected: 2, got: 1 })
        );
    }

    #[test]
    fn lk_ignores_self_crossings() {
        let p = |c, s, t: i64| StrandPoint {
            component: c,
            segment: s,
            param: BigRational::new(t.into(), 10.into()),
        };
        let crossings = vec![
            DiagramCrossing {
                over: p(0, 0, 2),
                under: p(0, 2, 5),
                sign: 1,
            },
            DiagramCrossing {
                over: p(0, 1, 5),
                under: p(1, 0, 5),
                sign: -1,
            },
            DiagramCrossing {
                over: p(1, 1, 5),
                under: p(0, 3, 5),
                sign: -1,
            },
        ];
        let d = LinkDiagram::new(vec![4, 3], crossings);
        assert_eq!(linking_number(&d).unwrap(), -1);
    }

    #[test]
    fn triangle_classification() {
        assert_eq!(classify_triangle_triangle(0, true), TriangleLinkClass::SplitOrTrivial);
        assert_eq!(classify_triangle_triangle(1, true), TriangleLinkClass::Hopf);
        assert_eq!(classify_triangle_triangle(-1, true), TriangleLinkClass::Hopf);
        assert_eq!(classify_triangle_triangle(2, true), TriangleLinkClass::Other);
        assert_eq!(classify_triangle_triangle(0, false), TriangleLinkClass::Other);
    }

    #[test]
    fn stick_bounds() {
        assert_eq!(stick_bound_a2(6), 1);
        assert_eq!(stick_bound_a2(7), 4);
        assert_eq!(stick_bound_a2(8), 12);
        assert_eq!(stick_bound_a2(5), 0);
        assert_eq!(admissible_a2(8).unwrap().iter().max(), Some(&5));
        for s in 3..=8 {
            let top = *admissible_a2(s).unwrap().iter().max().unwrap();
            assert!(top as u64 <= stick_bound_a2(s));
        }
    }
}
