//! Conway polynomial by the skein relation, the independent oracle for the
//! fast invariants.
//!
//! `∇(L) = ∇(L') + ε·z·∇(L₀)` where `L'` switches the first crossing met on
//! its under-strand and `L₀` smooths it. A diagram with no such crossing is
//! descending, hence an unlink.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::InvariantError;
use crate::geometry::diagram::{LinkDiagram, SignedGaussCode};

pub const DEFAULT_ORACLE_LIMIT: usize = 20;

/// Coefficients indexed by the power of `z`, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConwayPolynomial {
    pub coefficients: Vec<i64>,
}

impl ConwayPolynomial {
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        ConwayPolynomial { coefficients }
    }

    pub fn coefficient(&self, power: usize) -> i64 {
        self.coefficients.get(power).copied().unwrap_or(0)
    }

    pub fn a2(&self) -> i64 {
        self.coefficient(2)
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (sep, mag) = match (first, c < 0) {
                (true, true) => ("-", -c),
                (true, false) => ("", c),
                (false, true) => (" - ", -c),
                (false, false) => (" + ", c),
            };
            write!(f, "{sep}")?;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "z")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Crossings numbered by first appearance, so equal diagrams share a key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    components: Vec<Vec<(u16, bool)>>,
    signs: Vec<i8>,
}

impl State {
    fn from_code(code: &SignedGaussCode) -> State {
        let comps = code
            .components
            .iter()
            .map(|c| c.iter().map(|p| (p.crossing as u16, p.over)).collect())
            .collect();
        State::canonical(comps, &code.signs)
    }

    fn canonical(components: Vec<Vec<(u16, bool)>>, signs: &[i8]) -> State {
        let mut map = vec![u16::MAX; signs.len()];
        let mut new_signs = Vec::new();
        let components = components
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|(x, o)| {
                        if map[x as usize] == u16::MAX {
                            map[x as usize] = new_signs.len() as u16;
                            new_signs.push(signs[x as usize]);
                        }
                        (map[x as usize], o)
                    })
                    .collect()
            })
            .collect();
        State {
            components,
            signs: new_signs,
        }
    }

    /// First crossing whose first visit, walking the components in order,
    /// is on the under-strand.
    fn first_ascending(&self) -> Option<u16> {
        let mut seen = vec![false; self.signs.len()];
        for &(x, over) in self.components.iter().flatten() {
            if !seen[x as usize] {
                seen[x as usize] = true;
                if !over {
                    return Some(x);
                }
            }
        }
        None
    }

    fn switched(&self, x: u16) -> State {
        let components = self
            .components
            .iter()
            .map(|c| c.iter().map(|&(y, o)| (y, if y == x { !o } else { o })).collect())
            .collect();
        let mut signs = self.signs.clone();
        signs[x as usize] = -signs[x as usize];
        State { components, signs }
    }

    fn smoothed(&self, x: u16) -> State {
        let hits: Vec<(usize, usize)> = self
            .components
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| {
                c.iter()
                    .enumerate()
                    .filter(|p| p.1 .0 == x)
                    .map(move |(pi, _)| (ci, pi))
            })
            .collect();
        let (c0, p0) = hits[0];
        let (c1, p1) = hits[1];
        let mut comps: Vec<Vec<(u16, bool)>> = Vec::new();
        if c0 == c1 {
            let c = &self.components[c0];
            for (i, comp) in self.components.iter().enumerate() {
                if i == c0 {
                    comps.push(c[p0 + 1..p1].to_vec());
                    let mut rest = c[p1 + 1..].to_vec();
                    rest.extend_from_slice(&c[..p0]);
                    comps.push(rest);
                } else {
                    comps.push(comp.clone());
                }
            }
        } else {
            let rot = |c: &[(u16, bool)], p: usize| {
                let mut r = c[p + 1..].to_vec();
                r.extend_from_slice(&c[..p]);
                r
            };
            for (i, comp) in self.components.iter().enumerate() {
                if i == c0 {
                    let mut merged = rot(comp, p0);
                    merged.extend(rot(&self.components[c1], p1));
                    comps.push(merged);
                } else if i != c1 {
                    comps.push(comp.clone());
                }
            }
        }
        State::canonical(comps, &self.signs)
    }
}

struct Oracle {
    memo: HashMap<(State, usize), Vec<i64>>,
}

impl Oracle {
    /// Coefficients of `z^0..=z^degree`.
    fn eval(&mut self, s: State, degree: usize) -> Vec<i64> {
        let mut out = vec![0; degree + 1];
        let knot = s.components.len() == 1;
        if !knot && s.components.iter().any(Vec::is_empty) {
            return out;
        }
        if degree == 0 {
            out[0] = knot as i64;
            return out;
        }
        let key = (s, degree);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let s = &key.0;
        match s.first_ascending() {
            None => out[0] = knot as i64,
            Some(x) => {
                let sign = s.signs[x as usize] as i64;
                out = self.eval(s.switched(x), degree);
                let sm = self.eval(s.smoothed(x), degree - 1);
                for (i, c) in sm.into_iter().enumerate() {
                    out[i + 1] += sign * c;
                }
            }
        }
        self.memo.insert(key, out.clone());
        out
    }
}

fn check_limit(code: &SignedGaussCode, limit: usize) -> Result<(), InvariantError> {
    if code.crossing_count() > limit {
        return Err(InvariantError::OracleLimitExceeded {
            crossings: code.crossing_count(),
            limit,
        });
    }
    Ok(())
}

/// Full Conway polynomial of a signed Gauss code.
pub fn conway_polynomial(code: &SignedGaussCode, limit: usize) -> Result<ConwayPolynomial, InvariantError> {
    check_limit(code, limit)?;
    let degree = code.crossing_count().max(1);
    let mut oracle = Oracle { memo: HashMap::new() };
    Ok(ConwayPolynomial::new(oracle.eval(State::from_code(code), degree)))
}

/// Coefficient of `z^power` alone; the recursion never expands smoothings
/// past that degree.
pub fn conway_coefficient(code: &SignedGaussCode, power: usize, limit: usize) -> Result<i64, InvariantError> {
    check_limit(code, limit)?;
    let mut oracle = Oracle { memo: HashMap::new() };
    Ok(oracle.eval(State::from_code(code), power)[power])
}

pub fn conway_skein_oracle(d: &LinkDiagram) -> Result<ConwayPolynomial, InvariantError> {
    conway_polynomial(&d.gauss_code(), DEFAULT_ORACLE_LIMIT)
}
