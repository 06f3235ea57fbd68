//! Projection frames and the seeded sequence they are drawn from.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::rational::{det3, IPoint};

/// Frame retries before a projection gives up.
pub const DEFAULT_FRAME_RETRIES: usize = 64;
const DIRECTION_RANGE: i64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("frame axes are linearly dependent")]
pub struct DegenerateFrame;

/// Projection along `direction` onto the plane spanned by `axis_u`, `axis_v`.
///
/// Coordinates of a point `p` are taken in the basis `(u, v, d)` and scaled by
/// `det(u, v, d) > 0`: `(det(p,v,d), det(u,p,d))` in the plane and
/// `det(u,v,p)` as height. Larger height means closer to the viewer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionFrame {
    #[serde(serialize_with = "ser_vec")]
    pub direction: IPoint,
    #[serde(serialize_with = "ser_vec")]
    pub axis_u: IPoint,
    #[serde(serialize_with = "ser_vec")]
    pub axis_v: IPoint,
}

fn ser_vec<S: serde::Serializer>(v: &IPoint, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for c in v {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

impl ProjectionFrame {
    /// The basis `(u, v, d)` is right-handed; axes are swapped if needed.
    pub fn new(direction: IPoint, axis_u: IPoint, axis_v: IPoint) -> Result<Self, DegenerateFrame> {
        let det = det3(&axis_u, &axis_v, &direction);
        if det.is_zero() {
            return Err(DegenerateFrame);
        }
        Ok(if det.is_positive() {
            ProjectionFrame {
                direction,
                axis_u,
                axis_v,
            }
        } else {
            ProjectionFrame {
                direction,
                axis_u: axis_v,
                axis_v: axis_u,
            }
        })
    }

    /// Completes `direction` with the two coordinate axes orthogonal to its
    /// largest component.
    pub fn from_direction(direction: IPoint) -> Result<Self, DegenerateFrame> {
        let k = (0..3).max_by_key(|&i| direction[i].abs()).unwrap_or(2);
        let unit = |i: usize| {
            let mut v: IPoint = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
            v[i] = BigInt::from(1);
            v
        };
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        ProjectionFrame::new(direction, unit(i), unit(j))
    }

    /// Plane coordinates and height of `p`, scaled by the frame determinant.
    pub fn coords(&self, p: &IPoint) -> ([BigInt; 2], BigInt) {
        let a = det3(p, &self.axis_v, &self.direction);
        let b = det3(&self.axis_u, p, &self.direction);
        let c = det3(&self.axis_u, &self.axis_v, p);
        ([a, b], c)
    }
}

/// Deterministic stream of frames derived from one seed.
#[derive(Debug, Clone)]
pub struct FrameSequence {
    rng: ChaCha8Rng,
    index: usize,
}

impl FrameSequence {
    pub fn new(seed: u64) -> Self {
        FrameSequence {
            rng: ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15),
            index: 0,
        }
    }

    /// Next frame and its position in the sequence.
    pub fn next_frame(&mut self) -> (usize, ProjectionFrame) {
        loop {
            let d: IPoint = [
                BigInt::from(self.rng.gen_range(-DIRECTION_RANGE..=DIRECTION_RANGE)),
                BigInt::from(self.rng.gen_range(-DIRECTION_RANGE..=DIRECTION_RANGE)),
                BigInt::from(self.rng.gen_range(-DIRECTION_RANGE..=DIRECTION_RANGE)),
            ];
            let idx = self.index;
            self.index += 1;
            if let Ok(frame) = ProjectionFrame::from_direction(d) {
                return (idx, frame);
            }
        }
    }
}

impl Iterator for FrameSequence {
    type Item = (usize, ProjectionFrame);

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_frame())
    }
}
