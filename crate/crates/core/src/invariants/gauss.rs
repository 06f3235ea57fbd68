//! Second Conway coefficient from a based Gauss diagram.
//!
//! `a₂` is the signed count of interleaved arrow pairs `α, β` whose
//! endpoints, read from the basepoint, occur as `α β α β` with the first
//! endpoint of `α` an over-passage and the first endpoint of `β` an
//! under-passage.

use crate::geometry::diagram::{Arrow, GaussDiagram};

/// Which passage kind (over = `true`) opens each arrow of an interleaved pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrowPattern {
    pub first_opens_over: bool,
    pub second_opens_over: bool,
}

pub const A2_PATTERN: ArrowPattern = ArrowPattern {
    first_opens_over: true,
    second_opens_over: false,
};

fn span(a: &Arrow) -> (usize, usize, bool) {
    if a.over < a.under {
        (a.over, a.under, true)
    } else {
        (a.under, a.over, false)
    }
}

/// Signed count of interleaved pairs matching `pattern`.
pub fn pattern_count(g: &GaussDiagram, pattern: ArrowPattern) -> i64 {
    let spans: Vec<(usize, usize, bool, i64)> = g
        .arrows()
        .iter()
        .map(|a| {
            let (lo, hi, o) = span(a);
            (lo, hi, o, a.sign as i64)
        })
        .collect();
    let mut total = 0;
    for &(lo_a, hi_a, open_a, s_a) in &spans {
        if open_a != pattern.first_opens_over {
            continue;
        }
        for &(lo_b, hi_b, open_b, s_b) in &spans {
            if open_b == pattern.second_opens_over && lo_a < lo_b && lo_b < hi_a && hi_a < hi_b {
                total += s_a * s_b;
            }
        }
    }
    total
}

pub fn a2_gauss_formula(g: &GaussDiagram) -> i64 {
    pattern_count(g, A2_PATTERN)
}
