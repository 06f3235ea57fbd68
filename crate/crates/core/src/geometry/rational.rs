//! Exact points and the integer predicates everything else is built on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer lattice point. Embeddings are rescaled to a common denominator
/// before any predicate runs, so all geometry below works on these.
pub type IPoint = [BigInt; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint3 {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl RationalPoint3 {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        RationalPoint3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        RationalPoint3::new(r(x), r(y), r(z))
    }

    pub fn coords(&self) -> [&BigRational; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        RationalPoint3::new(&self.x * k, &self.y * k, &self.z * k)
    }
}

impl fmt::Display for RationalPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Multiplies every point by the lcm of all denominators.
pub fn to_common_integer_scale<'a>(points: impl IntoIterator<Item = &'a RationalPoint3> + Clone) -> Vec<IPoint> {
    let mut lcm = BigInt::one();
    for p in points.clone() {
        for c in p.coords() {
            lcm = lcm.lcm(c.denom());
        }
    }
    points
        .into_iter()
        .map(|p| {
            let s = |c: &BigRational| c.numer() * (&lcm / c.denom());
            [s(&p.x), s(&p.y), s(&p.z)]
        })
        .collect()
}

pub fn sub(a: &IPoint, b: &IPoint) -> IPoint {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn cross(a: &IPoint, b: &IPoint) -> IPoint {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &IPoint, b: &IPoint) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn det3(a: &IPoint, b: &IPoint, c: &IPoint) -> BigInt {
    dot(a, &cross(b, c))
}

pub fn is_zero(v: &IPoint) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Sign of the volume of tetrahedron `abcd`.
pub fn orient3d(a: &IPoint, b: &IPoint, c: &IPoint, d: &IPoint) -> i8 {
    sign(&det3(&sub(b, a), &sub(c, a), &sub(d, a)))
}

pub fn collinear(a: &IPoint, b: &IPoint, c: &IPoint) -> bool {
    is_zero(&cross(&sub(b, a), &sub(c, a)))
}

pub fn sign(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

type P2<'a> = [&'a BigInt; 2];

fn orient2d(a: P2, b: P2, c: P2) -> i8 {
    let v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    sign(&v)
}

fn within(a: &BigInt, b: &BigInt, x: &BigInt) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

fn on_segment_2d(a: P2, b: P2, p: P2) -> bool {
    within(a[0], b[0], p[0]) && within(a[1], b[1], p[1])
}

fn closed_segments_meet_2d(a: P2, b: P2, c: P2, d: P2) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment_2d(a, b, c))
        || (o2 == 0 && on_segment_2d(a, b, d))
        || (o3 == 0 && on_segment_2d(c, d, a))
        || (o4 == 0 && on_segment_2d(c, d, b))
}

/// Whether closed segments `ab` and `cd` share at least one point.
pub fn closed_segments_meet(a: &IPoint, b: &IPoint, c: &IPoint, d: &IPoint) -> bool {
    if orient3d(a, b, c, d) != 0 {
        return false;
    }
    let mut normal = cross(&sub(b, a), &sub(c, a));
    if is_zero(&normal) {
        normal = cross(&sub(b, a), &sub(d, a));
    }
    if is_zero(&normal) {
        normal = cross(&sub(d, c), &sub(a, c));
    }
    if is_zero(&normal) {
        // All four points collinear: compare along the dominant axis of the line.
        let dir = if a != b { sub(b, a) } else { sub(d, c) };
        let axis = (0..3).max_by_key(|&i| dir[i].abs()).unwrap_or(0);
        let (lo1, hi1) = min_max(&a[axis], &b[axis]);
        let (lo2, hi2) = min_max(&c[axis], &d[axis]);
        return lo1 <= hi2 && lo2 <= hi1;
    }
    let drop = (0..3).max_by_key(|&i| normal[i].abs()).unwrap_or(2);
    let (i, j) = match drop {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    closed_segments_meet_2d([&a[i], &a[j]], [&b[i], &b[j]], [&c[i], &c[j]], [&d[i], &d[j]])
}

/// Whether `p` lies on closed segment `ab`.
pub fn point_on_segment(p: &IPoint, a: &IPoint, b: &IPoint) -> bool {
    collinear(a, b, p) && (0..3).all(|i| within(&a[i], &b[i], &p[i]))
}

fn min_max<'a>(a: &'a BigInt, b: &'a BigInt) -> (&'a BigInt, &'a BigInt) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn ipoint(x: i64, y: i64, z: i64) -> IPoint {
    [BigInt::from(x), BigInt::from(y), BigInt::from(z)]
}
