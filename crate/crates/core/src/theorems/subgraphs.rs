//! `K_{3,3,1}` subgraphs of an embedded `K_7`.

use std::collections::BTreeMap;

use crate::combinatorics::{k331_graph, GraphKind};
use crate::geometry::embedding::{EmbeddingError, SpatialEmbedding};

/// The seventy `K_{3,3,1}` subgraphs of an embedded `K_7`, each relabeled onto
/// the standard vertex order (black, white alternating, apex last).
pub fn k331_subembeddings(e: &SpatialEmbedding) -> Result<Vec<SpatialEmbedding>, EmbeddingError> {
    let g = e.graph();
    assert!(
        g.kind() == GraphKind::Complete && g.vertex_count() == 7,
        "needs an embedded K_7"
    );
    let mut out = Vec::with_capacity(70);
    for apex in 0..7 {
        let rest: Vec<usize> = (0..7).filter(|&v| v != apex).collect();
        // The part containing rest[0] is black; this counts each split once.
        for mask in 0u32..64 {
            if mask & 1 == 0 || mask.count_ones() != 3 {
                continue;
            }
            let black: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| rest[i]).collect();
            let white: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 0).map(|i| rest[i]).collect();
            let old = [black[0], white[0], black[1], white[1], black[2], white[2], apex];
            let sub = k331_graph();
            let mut paths = BTreeMap::new();
            for &(a, b) in sub.edges() {
                let (oa, ob) = (old[a], old[b]);
                let idx = g.edge_index(oa, ob).expect("K_7 has every edge");
                let stored = e.edge_path(idx);
                if stored.is_empty() {
                    continue;
                }
                let path = if oa < ob {
                    stored.to_vec()
                } else {
                    stored.iter().rev().cloned().collect()
                };
                paths.insert((a, b), path);
            }
            let positions = old.iter().map(|&v| e.positions()[v].clone()).collect();
            out.push(SpatialEmbedding::new(sub, positions, paths)?);
        }
    }
    Ok(out)
}
