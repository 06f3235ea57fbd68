//! Certified-generic projections of polygonal curves.
//!
//! A [`CrossingTable`] holds every crossing between projected segments of a
//! segment set under one frame. Diagrams of individual knots and links are
//! then read off the table without further geometry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::diagram::{DiagramCrossing, LinkDiagram, StrandPoint};
use super::embedding::{SegRef, SpatialEmbedding};
use super::frame::ProjectionFrame;
use super::rational::{det3, sign, sub, to_common_integer_scale, IPoint, RationalPoint3};

/// A violated genericity condition, naming the segments involved.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenericityFailure {
    #[error("segment {0} is parallel to the projection direction")]
    ParallelToDirection(usize),
    #[error("a projected endpoint of segment {0} or {1} lies on the other")]
    VertexOnSegment(usize, usize),
    #[error("projections of segments {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("three strands meet at one projected point on segment {0}")]
    TriplePoint(usize),
    #[error("segments {0} and {1} meet in space")]
    CurvesMeet(usize, usize),
}

#[derive(Debug, Error)]
pub enum ProjectError {
    #[error("a closed polygon needs at least three corners")]
    TooFewCorners,
    #[error(transparent)]
    Genericity(#[from] GenericityFailure),
}

/// Crossing of segments `a < b` with parameters along their stored
/// orientation; `sign` is for that orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCrossing {
    pub a: usize,
    pub b: usize,
    pub t_a: BigRational,
    pub t_b: BigRational,
    pub a_over: bool,
    pub sign: i8,
}

#[derive(Debug, Clone)]
struct ProjectedSegment {
    p0: [BigInt; 2],
    p1: [BigInt; 2],
    h0: BigInt,
    h1: BigInt,
    dir: IPoint,
}

fn cross2(a: &[BigInt; 2], b: &[BigInt; 2]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn sub2(a: &[BigInt; 2], b: &[BigInt; 2]) -> [BigInt; 2] {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn dot2(a: &[BigInt; 2], b: &[BigInt; 2]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1]
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct CrossingTable {
    segment_count: usize,
    index: Vec<u32>,
    crossings: Vec<RawCrossing>,
}

impl CrossingTable {
    /// Projects all segments and certifies genericity of the whole picture:
    /// no segment parallel to the direction, segments sharing an endpoint
    /// meet only there, other pairs meet only at transverse interior points
    /// at distinct heights, and no point of the plane carries three strands.
    pub fn build(
        points: &[IPoint],
        segments: &[(usize, usize)],
        frame: &ProjectionFrame,
    ) -> Result<CrossingTable, GenericityFailure> {
        let projected: Vec<([BigInt; 2], BigInt)> = points.iter().map(|p| frame.coords(p)).collect();
        let mut segs = Vec::with_capacity(segments.len());
        for (i, &(a, b)) in segments.iter().enumerate() {
            let s = ProjectedSegment {
                p0: projected[a].0.clone(),
                p1: projected[b].0.clone(),
                h0: projected[a].1.clone(),
                h1: projected[b].1.clone(),
                dir: sub(&points[b], &points[a]),
            };
            if s.p0 == s.p1 {
                return Err(GenericityFailure::ParallelToDirection(i));
            }
            segs.push(s);
        }
        let n = segs.len();
        let mut index = vec![NONE; n * n];
        let mut crossings: Vec<RawCrossing> = Vec::new();
        let mut params: Vec<Vec<BigRational>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = segments[i];
                let (c, d) = segments[j];
                let shared = a == c || a == d || b == c || b == d;
                let found = if shared {
                    check_adjacent(&segs[i], &segs[j], (a, b), (c, d), i, j)?;
                    None
                } else {
                    crossing(&segs[i], &segs[j], i, j, &frame.direction)?
                };
                if let Some(x) = found {
                    params[i].push(x.t_a.clone());
                    params[j].push(x.t_b.clone());
                    index[i * n + j] = crossings.len() as u32;
                    index[j * n + i] = crossings.len() as u32;
                    crossings.push(x);
                }
            }
        }
        for (i, list) in params.iter_mut().enumerate() {
            list.sort();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(GenericityFailure::TriplePoint(i));
            }
        }
        Ok(CrossingTable {
            segment_count: n,
            index,
            crossings,
        })
    }

    pub fn crossing_between(&self, s: usize, t: usize) -> Option<&RawCrossing> {
        match self.index[s * self.segment_count + t] {
            NONE => None,
            k => Some(&self.crossings[k as usize]),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Diagram of the closed curves given as oriented segment sequences.
    pub fn diagram(&self, components: &[Vec<SegRef>]) -> LinkDiagram {
        let mut slots = Vec::new();
        for (c, comp) in components.iter().enumerate() {
            for (pos, r) in comp.iter().enumerate() {
                slots.push((c, pos, *r));
            }
        }
        let one = BigRational::one();
        let mut out = Vec::new();
        for x in 0..slots.len() {
            for y in x + 1..slots.len() {
                let (cx, px, rx) = slots[x];
                let (cy, py, ry) = slots[y];
                let Some(raw) = self.crossing_between(rx.seg, ry.seg) else {
                    continue;
                };
                let (t_x, t_y, x_over) = if raw.a == rx.seg {
                    (&raw.t_a, &raw.t_b, raw.a_over)
                } else {
                    (&raw.t_b, &raw.t_a, !raw.a_over)
                };
                let orient = |t: &BigRational, reversed: bool| if reversed { &one - t } else { t.clone() };
                let px_point = StrandPoint {
                    component: cx,
                    segment: px,
                    param: orient(t_x, rx.reversed),
                };
                let py_point = StrandPoint {
                    component: cy,
                    segment: py,
                    param: orient(t_y, ry.reversed),
                };
                let flips = (rx.reversed as i8) + (ry.reversed as i8);
                let sign = if flips == 1 { -raw.sign } else { raw.sign };
                let (over, under) = if x_over {
                    (px_point, py_point)
                } else {
                    (py_point, px_point)
                };
                out.push(DiagramCrossing { over, under, sign });
            }
        }
        LinkDiagram::new(components.iter().map(Vec::len).collect(), out)
    }
}

/// Segments sharing endpoint ids may only touch there: a fold-back in the
/// projection is a degeneracy.
fn check_adjacent(
    s: &ProjectedSegment,
    t: &ProjectedSegment,
    (a, b): (usize, usize),
    (c, d): (usize, usize),
    i: usize,
    j: usize,
) -> Result<(), GenericityFailure> {
    if (a == c && b == d) || (a == d && b == c) {
        return Err(GenericityFailure::Overlap(i, j));
    }
    // Orient both segments away from the shared point.
    let (from_s, to_s) = if a == c || a == d {
        (&s.p0, &s.p1)
    } else {
        (&s.p1, &s.p0)
    };
    let to_t = if c == a || c == b { &t.p1 } else { &t.p0 };
    let u = sub2(to_s, from_s);
    let v = sub2(to_t, from_s);
    if cross2(&u, &v).is_zero() && dot2(&u, &v).is_positive() {
        return Err(GenericityFailure::Overlap(i, j));
    }
    Ok(())
}

fn crossing(
    s: &ProjectedSegment,
    t: &ProjectedSegment,
    i: usize,
    j: usize,
    direction: &IPoint,
) -> Result<Option<RawCrossing>, GenericityFailure> {
    let r = sub2(&s.p1, &s.p0);
    let q = sub2(&t.p1, &t.p0);
    let w = sub2(&t.p0, &s.p0);
    let mut denom = cross2(&r, &q);
    if denom.is_zero() {
        if !cross2(&w, &r).is_zero() {
            return Ok(None);
        }
        // Collinear in the plane: compare the projections onto r.
        let rr = dot2(&r, &r);
        let t0 = dot2(&w, &r);
        let t1 = dot2(&sub2(&t.p1, &s.p0), &r);
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        if hi < BigInt::zero() || lo > rr {
            return Ok(None);
        }
        return Err(GenericityFailure::Overlap(i, j));
    }
    let mut tn = cross2(&w, &q);
    let mut un = cross2(&w, &r);
    if denom.is_negative() {
        denom = -denom;
        tn = -tn;
        un = -un;
    }
    let zero = BigInt::zero();
    if tn < zero || tn > denom || un < zero || un > denom {
        return Ok(None);
    }
    if tn.is_zero() || tn == denom || un.is_zero() || un == denom {
        return Err(GenericityFailure::VertexOnSegment(i, j));
    }
    let hs = &s.h0 * &denom + &tn * (&s.h1 - &s.h0);
    let ht = &t.h0 * &denom + &un * (&t.h1 - &t.h0);
    if hs == ht {
        return Err(GenericityFailure::CurvesMeet(i, j));
    }
    let a_over = hs > ht;
    let (o, u) = if a_over { (&s.dir, &t.dir) } else { (&t.dir, &s.dir) };
    let sg = sign(&det3(o, u, direction));
    debug_assert!(sg != 0);
    Ok(Some(RawCrossing {
        a: i,
        b: j,
        t_a: BigRational::new(tn, denom.clone()),
        t_b: BigRational::new(un, denom),
        a_over,
        sign: sg,
    }))
}

/// Projects closed polygons (corner lists) to a certified-generic diagram.
pub fn project(curves: &[Vec<RationalPoint3>], frame: &ProjectionFrame) -> Result<LinkDiagram, ProjectError> {
    if curves.iter().any(|c| c.len() < 3) {
        return Err(ProjectError::TooFewCorners);
    }
    let points = to_common_integer_scale(curves.iter().flatten());
    let mut segments = Vec::new();
    let mut components = Vec::new();
    let mut base = 0;
    for c in curves {
        let k = c.len();
        let mut comp = Vec::new();
        for i in 0..k {
            comp.push(SegRef {
                seg: segments.len(),
                reversed: false,
            });
            segments.push((base + i, base + (i + 1) % k));
        }
        components.push(comp);
        base += k;
    }
    let table = CrossingTable::build(&points, &segments, frame)?;
    Ok(table.diagram(&components))
}

/// Crossing table for every segment of an embedding.
pub fn embedding_table(e: &SpatialEmbedding, frame: &ProjectionFrame) -> Result<CrossingTable, GenericityFailure> {
    let m = e.model();
    CrossingTable::build(&m.points, &m.segments, frame)
}
