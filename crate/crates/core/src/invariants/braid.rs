//! Signed Gauss codes of braid closures, a supply of diagrams with known
//! topology.

use crate::geometry::diagram::{Passage, SignedGaussCode};

/// Closure of a braid word on `strands` strands. Letter `i > 0` is the
/// generator σ_i (the strand moving from position `i` to `i - 1` passes over,
/// sign +1); `-i` is its inverse. Components start at the lowest unvisited
/// top position, crossings are numbered by letter.
pub fn braid_closure(strands: usize, word: &[i32]) -> SignedGaussCode {
    assert!(strands >= 1);
    assert!(
        word.iter().all(|&g| g != 0 && (g.unsigned_abs() as usize) < strands),
        "generator out of range"
    );
    let signs: Vec<i8> = word.iter().map(|&g| if g > 0 { 1 } else { -1 }).collect();
    let mut visited = vec![false; strands];
    let mut components = Vec::new();
    for start in 0..strands {
        if visited[start] {
            continue;
        }
        let mut pos = start;
        let mut list = Vec::new();
        loop {
            visited[pos] = true;
            for (k, &g) in word.iter().enumerate() {
                let i = g.unsigned_abs() as usize;
                if pos == i - 1 {
                    list.push(Passage {
                        crossing: k,
                        over: g < 0,
                    });
                    pos = i;
                } else if pos == i {
                    list.push(Passage {
                        crossing: k,
                        over: g > 0,
                    });
                    pos = i - 1;
                }
            }
            if pos == start {
                break;
            }
        }
        components.push(list);
    }
    SignedGaussCode { components, signs }
}

pub fn trefoil() -> SignedGaussCode {
    braid_closure(2, &[1, 1, 1])
}

pub fn figure_eight() -> SignedGaussCode {
    braid_closure(3, &[1, -2, 1, -2])
}

pub fn torus_2_5() -> SignedGaussCode {
    braid_closure(2, &[1, 1, 1, 1, 1])
}

pub fn positive_hopf() -> SignedGaussCode {
    braid_closure(2, &[1, 1])
}
