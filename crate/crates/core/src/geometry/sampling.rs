//! Seeded random embeddings with integer coordinates in general position.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::embedding::{EmbeddingError, SpatialEmbedding};
use super::rational::RationalPoint3;
use crate::combinatorics::{complete_graph, k331_graph, SimpleGraph};

/// Largest accepted coordinate range; keeps every determinant inside i128.
pub const MAX_RANGE: i64 = 1_000_000_000;
const TRIES_PER_POINT: usize = 256;
const RESTARTS: usize = 32;

#[derive(Debug, Error)]
pub enum SamplingError {
    #[error("no general-position sample of {points} points found in [-{range}, {range}]^3 after {attempts} attempts")]
    SamplingExhausted { points: usize, range: i64, attempts: usize },
    #[error("coordinate range must be in 1..={MAX_RANGE}, got {0}")]
    BadRange(i64),
    #[error("at least 3 vertices are required, got {0}")]
    TooFewVertices(usize),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

type P = [i128; 3];

fn diff(a: &P, b: &P) -> P {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn crossp(a: &P, b: &P) -> P {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn fits(chosen: &[P], p: &P) -> bool {
    for (i, a) in chosen.iter().enumerate() {
        if a == p {
            return false;
        }
        let ap = diff(p, a);
        for (j, b) in chosen.iter().enumerate().skip(i + 1) {
            let normal = crossp(&diff(b, a), &ap);
            if normal == [0, 0, 0] {
                return false;
            }
            for c in &chosen[j + 1..] {
                let ab = diff(b, a);
                let ac = diff(c, a);
                let n = crossp(&ab, &ac);
                if n[0] * ap[0] + n[1] * ap[1] + n[2] * ap[2] == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Extends `base` by `count` random points keeping the whole set free of
/// collinear triples and coplanar quadruples.
fn extend_general_position(rng: &mut ChaCha8Rng, base: &[P], count: usize, range: i64) -> Option<Vec<P>> {
    let r = range as i128;
    let mut chosen = base.to_vec();
    for _ in 0..count {
        let mut placed = false;
        for _ in 0..TRIES_PER_POINT {
            let p = [rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)];
            if fits(&chosen, &p) {
                chosen.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return None;
        }
    }
    Some(chosen)
}

fn check_args(n: usize, range: i64) -> Result<(), SamplingError> {
    if n < 3 {
        return Err(SamplingError::TooFewVertices(n));
    }
    if !(1..=MAX_RANGE).contains(&range) {
        return Err(SamplingError::BadRange(range));
    }
    Ok(())
}

/// `n` integer points in `[-range, range]^3`, no four coplanar. Deterministic
/// in `seed`.
pub fn general_position_points(n: usize, seed: u64, range: i64) -> Result<Vec<[i64; 3]>, SamplingError> {
    check_args(n, range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESTARTS {
        if let Some(pts) = extend_general_position(&mut rng, &[], n, range) {
            return Ok(pts.iter().map(to_i64).collect());
        }
    }
    Err(SamplingError::SamplingExhausted {
        points: n,
        range,
        attempts: RESTARTS,
    })
}

fn to_i64(p: &P) -> [i64; 3] {
    [p[0] as i64, p[1] as i64, p[2] as i64]
}

fn to_rational(p: &[i64; 3]) -> RationalPoint3 {
    RationalPoint3::from_ints(p[0], p[1], p[2])
}

fn rectilinear_on(graph: SimpleGraph, seed: u64, range: i64) -> Result<SpatialEmbedding, SamplingError> {
    let pts = general_position_points(graph.vertex_count(), seed, range)?;
    Ok(SpatialEmbedding::rectilinear(
        graph,
        pts.iter().map(to_rational).collect(),
    )?)
}

/// Rectilinear K_n with vertices in general position.
pub fn random_rectilinear_embedding(n: usize, seed: u64, range: i64) -> Result<SpatialEmbedding, SamplingError> {
    check_args(n, range)?;
    rectilinear_on(complete_graph(n).map_err(EmbeddingError::from)?, seed, range)
}

/// Rectilinear K_{3,3,1} with vertices in general position.
pub fn random_k331_embedding(seed: u64, range: i64) -> Result<SpatialEmbedding, SamplingError> {
    rectilinear_on(k331_graph(), seed, range)
}

/// K_n whose edges are polylines with `0..=max_bends` random interior
/// points each. Vertices and bend points together are in general position.
pub fn random_polyline_embedding(
    n: usize,
    seed: u64,
    range: i64,
    max_bends: usize,
) -> Result<SpatialEmbedding, SamplingError> {
    check_args(n, range)?;
    let graph = complete_graph(n).map_err(EmbeddingError::from)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bends: Vec<usize> = graph.edges().iter().map(|_| rng.gen_range(0..=max_bends)).collect();
    let total: usize = n + bends.iter().sum::<usize>();
    for _ in 0..RESTARTS {
        let Some(pts) = extend_general_position(&mut rng, &[], total, range) else {
            continue;
        };
        let positions: Vec<RationalPoint3> = pts[..n].iter().map(|p| to_rational(&to_i64(p))).collect();
        let mut paths = BTreeMap::new();
        let mut next = n;
        for (&edge, &k) in graph.edges().iter().zip(&bends) {
            if k > 0 {
                let interior = pts[next..next + k].iter().map(|p| to_rational(&to_i64(p))).collect();
                paths.insert(edge, interior);
                next += k;
            }
        }
        return Ok(SpatialEmbedding::new(graph, positions, paths)?);
    }
    Err(SamplingError::SamplingExhausted {
        points: total,
        range,
        attempts: RESTARTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::embedding::validate_embedding;
    use crate::geometry::rational::orient3d;

    #[test]
    fn deterministic_in_seed() {
        let a = random_rectilinear_embedding(7, 11, 100).unwrap();
        let b = random_rectilinear_embedding(7, 11, 100).unwrap();
        assert_eq!(a.positions(), b.positions());
        let c = random_rectilinear_embedding(7, 12, 100).unwrap();
        assert_ne!(a.positions(), c.positions());
    }

    #[test]
    fn samples_are_in_general_position() {
        for seed in 0..10 {
            let e = random_rectilinear_embedding(6, seed, 20).unwrap();
            let p = &e.model().points;
            for a in 0..6 {
                for b in a + 1..6 {
                    for c in b + 1..6 {
                        for d in c + 1..6 {
                            assert_ne!(orient3d(&p[a], &p[b], &p[c], &p[d]), 0);
                        }
                    }
                }
            }
            assert!(validate_embedding(&e).is_ok());
        }
    }

    #[test]
    fn triangles_always_accepted() {
        for seed in 0..20 {
            assert!(random_rectilinear_embedding(3, seed, 1).is_ok());
        }
    }

    #[test]
    fn unit_range_cannot_hold_nine_points() {
        // {-1,0,1}^3 holds at most 8 points with no four coplanar.
        for seed in 0..3 {
            assert!(matches!(
                random_rectilinear_embedding(9, seed, 1),
                Err(SamplingError::SamplingExhausted { .. })
            ));
        }
    }

    #[test]
    fn polyline_samples_validate() {
        for seed in 0..3 {
            let e = random_polyline_embedding(6, seed, 50, 2).unwrap();
            assert!(validate_embedding(&e).is_ok());
        }
    }

    #[test]
    fn k331_samples_validate() {
        let e = random_k331_embedding(5, 100).unwrap();
        assert_eq!(e.graph().edge_count(), 15);
        assert!(validate_embedding(&e).is_ok());
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(
            random_rectilinear_embedding(2, 0, 10),
            Err(SamplingError::TooFewVertices(2))
        ));
        assert!(matches!(
            random_rectilinear_embedding(6, 0, 0),
            Err(SamplingError::BadRange(0))
        ));
    }
}
