//! Per-cycle and per-pair invariants of one embedding, each read in two
//! independent generic frames.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::TheoremError;
use crate::combinatorics::{enumerate_cycles, enumerate_disjoint_pairs, Cycle, DisjointCyclePair, SimpleGraph};
use crate::geometry::diagram::{gauss_diagram, LinkDiagram};
use crate::geometry::embedding::SpatialEmbedding;
use crate::geometry::frame::{FrameSequence, ProjectionFrame, DEFAULT_FRAME_RETRIES};
use crate::geometry::projection::{embedding_table, CrossingTable};
use crate::invariants::{a2_gauss_formula, linking_number, InvariantRecord, Subject};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub frame_retries: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: 0,
            frame_retries: DEFAULT_FRAME_RETRIES,
        }
    }
}

/// A frame accepted for the whole embedding, with its position in the
/// seeded frame sequence.
#[derive(Debug, Clone, Serialize)]
pub struct AcceptedFrame {
    pub index: usize,
    pub frame: ProjectionFrame,
    #[serde(skip)]
    table: CrossingTable,
}

impl AcceptedFrame {
    pub fn table(&self) -> &CrossingTable {
        &self.table
    }
}

/// Which cycles a cached record list covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Scope {
    Whole,
    H,
}

type Records = Arc<Vec<InvariantRecord>>;

pub struct Analyzer {
    embedding: SpatialEmbedding,
    frames: [AcceptedFrame; 2],
    h: Option<SimpleGraph>,
    cycles: Mutex<HashMap<(Scope, usize), Records>>,
    pairs: Mutex<HashMap<(usize, usize), Records>>,
}

/// The first two frames of the seeded sequence that are generic for every
/// segment of `e`.
pub fn choose_frames(e: &SpatialEmbedding, opts: AnalysisOptions) -> Result<[AcceptedFrame; 2], TheoremError> {
    let mut seq = FrameSequence::new(opts.seed);
    let mut found = Vec::new();
    let mut failures = 0;
    while found.len() < 2 {
        let (index, frame) = seq.next_frame();
        match embedding_table(e, &frame) {
            Ok(table) => found.push(AcceptedFrame { index, frame, table }),
            Err(err) => {
                failures += 1;
                if failures >= opts.frame_retries {
                    return Err(TheoremError::FramesExhausted {
                        attempts: failures,
                        last: err,
                    });
                }
            }
        }
    }
    let second = found.pop().expect("two frames");
    let first = found.pop().expect("two frames");
    Ok([first, second])
}

impl Analyzer {
    pub fn new(embedding: SpatialEmbedding, opts: AnalysisOptions) -> Result<Self, TheoremError> {
        let frames = choose_frames(&embedding, opts)?;
        let h = embedding.graph().h_subgraph();
        Ok(Analyzer {
            embedding,
            frames,
            h,
            cycles: Mutex::new(HashMap::new()),
            pairs: Mutex::new(HashMap::new()),
        })
    }

    pub fn embedding(&self) -> &SpatialEmbedding {
        &self.embedding
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.embedding.graph()
    }

    /// Primary frame first, then the verification frame.
    pub fn frames(&self) -> &[AcceptedFrame; 2] {
        &self.frames
    }

    pub fn knot_diagram(&self, c: &Cycle, frame: usize) -> LinkDiagram {
        self.frames[frame].table.diagram(&[self.embedding.cycle_segments(c)])
    }

    pub fn link_diagram(&self, p: &DisjointCyclePair, frame: usize) -> LinkDiagram {
        self.frames[frame].table.diagram(&[
            self.embedding.cycle_segments(p.first()),
            self.embedding.cycle_segments(p.second()),
        ])
    }

    fn cycle_a2(&self, c: &Cycle) -> Result<InvariantRecord, TheoremError> {
        let mut values = [0i64; 2];
        let mut crossings = 0;
        for (i, v) in values.iter_mut().enumerate() {
            let d = self.knot_diagram(c, i);
            if i == 0 {
                crossings = d.crossing_count();
            }
            *v = a2_gauss_formula(&gauss_diagram(&d).expect("cycles give one-component diagrams"));
        }
        let subject = Subject::Cycle(c.clone());
        if values[0] != values[1] {
            return Err(TheoremError::FrameDisagreement {
                subject: subject.to_string(),
                primary: values[0],
                check: values[1],
            });
        }
        Ok(InvariantRecord {
            subject,
            value: values[0],
            crossing_count: crossings,
            frame_index: self.frames[0].index,
        })
    }

    fn pair_lk(&self, p: &DisjointCyclePair) -> Result<InvariantRecord, TheoremError> {
        let mut values = [0i64; 2];
        let mut crossings = 0;
        for (i, v) in values.iter_mut().enumerate() {
            let d = self.link_diagram(p, i);
            if i == 0 {
                crossings = d.crossing_count();
            }
            *v = linking_number(&d).expect("pairs give two-component diagrams");
        }
        let subject = Subject::Pair(p.clone());
        if values[0] != values[1] {
            return Err(TheoremError::FrameDisagreement {
                subject: subject.to_string(),
                primary: values[0],
                check: values[1],
            });
        }
        Ok(InvariantRecord {
            subject,
            value: values[0],
            crossing_count: crossings,
            frame_index: self.frames[0].index,
        })
    }

    fn records_for(&self, scope: Scope, k: usize) -> Result<Records, TheoremError> {
        if let Some(r) = self.cycles.lock().expect("cache lock").get(&(scope, k)) {
            return Ok(r.clone());
        }
        let graph = match scope {
            Scope::Whole => self.graph(),
            Scope::H => self
                .h
                .as_ref()
                .ok_or_else(|| TheoremError::NotApplicable("the graph has no K_{3,3} part".into()))?,
        };
        let cycles = if k >= 3 && k <= graph.vertex_count() {
            enumerate_cycles(graph, k)
        } else {
            Vec::new()
        };
        let records: Vec<InvariantRecord> = cycles.par_iter().map(|c| self.cycle_a2(c)).collect::<Result<_, _>>()?;
        let records = Arc::new(records);
        self.cycles
            .lock()
            .expect("cache lock")
            .insert((scope, k), records.clone());
        Ok(records)
    }

    /// `a₂` of every `k`-cycle, in canonical order.
    pub fn cycle_records(&self, k: usize) -> Result<Records, TheoremError> {
        self.records_for(Scope::Whole, k)
    }

    /// `a₂` of every `k`-cycle of the `K_{3,3}` part of `K_{3,3,1}`.
    pub fn h_cycle_records(&self, k: usize) -> Result<Records, TheoremError> {
        self.records_for(Scope::H, k)
    }

    /// `lk` of every pair in `Γ_{k,l}`, in canonical order.
    pub fn pair_records(&self, k: usize, l: usize) -> Result<Records, TheoremError> {
        let key = (k.min(l), k.max(l));
        if let Some(r) = self.pairs.lock().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let pairs = if key.0 >= 3 && key.0 + key.1 <= self.graph().vertex_count() {
            enumerate_disjoint_pairs(self.graph(), key.0, key.1)
        } else {
            Vec::new()
        };
        let records: Vec<InvariantRecord> = pairs.par_iter().map(|p| self.pair_lk(p)).collect::<Result<_, _>>()?;
        let records = Arc::new(records);
        self.pairs.lock().expect("cache lock").insert(key, records.clone());
        Ok(records)
    }

    pub fn sum_a2(&self, k: usize) -> Result<BigInt, TheoremError> {
        Ok(self.cycle_records(k)?.iter().map(|r| BigInt::from(r.value)).sum())
    }

    pub fn sum_a2_h(&self, k: usize) -> Result<BigInt, TheoremError> {
        Ok(self.h_cycle_records(k)?.iter().map(|r| BigInt::from(r.value)).sum())
    }

    pub fn sum_lk_sq(&self, k: usize, l: usize) -> Result<BigInt, TheoremError> {
        Ok(self
            .pair_records(k, l)?
            .iter()
            .map(|r| BigInt::from(r.value * r.value))
            .sum())
    }

    pub fn sum_lk(&self, k: usize, l: usize) -> Result<BigInt, TheoremError> {
        Ok(self.pair_records(k, l)?.iter().map(|r| BigInt::from(r.value)).sum())
    }
}
