//! Link diagrams with exact crossing data, their signed Gauss codes, and
//! Gauss diagrams of knot diagrams.

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("expected a diagram with {expected} component(s), got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("malformed Gauss code: {0}")]
    Malformed(String),
}

/// A point on a strand: segment `segment` of component `component`, at
/// parameter `param` in (0, 1) along the traversal direction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StrandPoint {
    pub component: usize,
    pub segment: usize,
    pub param: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramCrossing {
    pub over: StrandPoint,
    pub under: StrandPoint,
    pub sign: i8,
}

/// One visit of a component to a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    segment_counts: Vec<usize>,
    crossings: Vec<DiagramCrossing>,
    passages: Vec<Vec<Passage>>,
}

impl LinkDiagram {
    /// Builds the diagram and derives per-component passage lists ordered by
    /// strand position.
    pub fn new(segment_counts: Vec<usize>, crossings: Vec<DiagramCrossing>) -> Self {
        let mut per: Vec<Vec<(&StrandPoint, Passage)>> = vec![Vec::new(); segment_counts.len()];
        for (i, c) in crossings.iter().enumerate() {
            per[c.over.component].push((
                &c.over,
                Passage {
                    crossing: i,
                    over: true,
                },
            ));
            per[c.under.component].push((
                &c.under,
                Passage {
                    crossing: i,
                    over: false,
                },
            ));
        }
        let passages = per
            .into_iter()
            .map(|mut list| {
                list.sort_by(|a, b| (a.0.segment, &a.0.param).cmp(&(b.0.segment, &b.0.param)));
                list.into_iter().map(|(_, p)| p).collect()
            })
            .collect();
        LinkDiagram {
            segment_counts,
            crossings,
            passages,
        }
    }

    pub fn component_count(&self) -> usize {
        self.segment_counts.len()
    }

    pub fn segment_counts(&self) -> &[usize] {
        &self.segment_counts
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[DiagramCrossing] {
        &self.crossings
    }

    pub fn passages(&self, component: usize) -> &[Passage] {
        &self.passages[component]
    }

    pub fn is_inter_component(&self, crossing: usize) -> bool {
        let c = &self.crossings[crossing];
        c.over.component != c.under.component
    }

    pub fn gauss_code(&self) -> SignedGaussCode {
        SignedGaussCode {
            components: self.passages.clone(),
            signs: self.crossings.iter().map(|c| c.sign).collect(),
        }
    }

    /// The same diagram with component `k` traversed backwards.
    pub fn with_reversed_component(&self, k: usize) -> LinkDiagram {
        let flip = |p: &StrandPoint| {
            if p.component != k {
                return p.clone();
            }
            let m = self.segment_counts[k];
            StrandPoint {
                component: k,
                segment: m - 1 - p.segment,
                param: BigRational::from_integer(1.into()) - &p.param,
            }
        };
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let touched = (c.over.component == k) as i8 + (c.under.component == k) as i8;
                DiagramCrossing {
                    over: flip(&c.over),
                    under: flip(&c.under),
                    sign: if touched == 1 { -c.sign } else { c.sign },
                }
            })
            .collect();
        LinkDiagram::new(self.segment_counts.clone(), crossings)
    }
}

/// Combinatorial shadow of a diagram: per-component passage sequences read
/// from each component's basepoint, plus crossing signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignedGaussCode {
    pub components: Vec<Vec<Passage>>,
    pub signs: Vec<i8>,
}

impl SignedGaussCode {
    /// Parses a knot or link code like `O1+ U2+ O3+ U1+ O2+ U3+`, components
    /// separated by `|`. Each crossing's sign may be written on either visit.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut signs: Vec<Option<i8>> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        let mut components = Vec::new();
        for comp in text.split('|') {
            let mut list = Vec::new();
            for tok in comp.split_whitespace() {
                let over = match tok.as_bytes()[0] {
                    b'O' | b'o' => true,
                    b'U' | b'u' => false,
                    _ => return Err(DiagramError::Malformed(tok.into())),
                };
                let body = &tok[1..];
                let (name, sign) = match body.chars().last() {
                    Some('+') => (&body[..body.len() - 1], Some(1)),
                    Some('-') => (&body[..body.len() - 1], Some(-1)),
                    _ => (body, None),
                };
                let id = match labels.iter().position(|l| l == name) {
                    Some(i) => i,
                    None => {
                        labels.push(name.to_string());
                        signs.push(None);
                        labels.len() - 1
                    }
                };
                if sign.is_some() {
                    signs[id] = sign;
                }
                list.push(Passage { crossing: id, over });
            }
            components.push(list);
        }
        let signs = signs
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| DiagramError::Malformed(format!("no sign for {}", labels[i]))))
            .collect::<Result<Vec<_>, _>>()?;
        let code = SignedGaussCode { components, signs };
        code.check()?;
        Ok(code)
    }

    fn check(&self) -> Result<(), DiagramError> {
        let mut seen = vec![(0u8, 0u8); self.signs.len()];
        for p in self.components.iter().flatten() {
            if p.over {
                seen[p.crossing].0 += 1;
            } else {
                seen[p.crossing].1 += 1;
            }
        }
        if seen.iter().any(|&s| s != (1, 1)) {
            return Err(DiagramError::Malformed(
                "each crossing needs one over and one under visit".into(),
            ));
        }
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }
}

/// An arrow of a Gauss diagram, given by the positions of its over- and
/// under-passage on the circle, and the crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub over: usize,
    pub under: usize,
    pub sign: i8,
}

/// Gauss diagram of a knot diagram: `2c` points read from the basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussDiagram {
    points: usize,
    arrows: Vec<Arrow>,
}

impl GaussDiagram {
    pub fn from_code(code: &SignedGaussCode) -> Result<Self, DiagramError> {
        if code.components.len() != 1 {
            return Err(DiagramError::ComponentCount {
                expected: 1,
                got: code.components.len(),
            });
        }
        let seq = &code.components[0];
        let mut over = vec![usize::MAX; code.signs.len()];
        let mut under = vec![usize::MAX; code.signs.len()];
        for (pos, p) in seq.iter().enumerate() {
            if p.over {
                over[p.crossing] = pos;
            } else {
                under[p.crossing] = pos;
            }
        }
        let arrows = (0..code.signs.len())
            .map(|i| Arrow {
                over: over[i],
                under: under[i],
                sign: code.signs[i],
            })
            .collect();
        Ok(GaussDiagram {
            points: seq.len(),
            arrows,
        })
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Moves the basepoint forward past `shift` arrow endpoints.
    pub fn rebased(&self, shift: usize) -> GaussDiagram {
        if self.points == 0 {
            return self.clone();
        }
        let m = self.points;
        let mv = |p: usize| (p + m - shift % m) % m;
        GaussDiagram {
            points: m,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    over: mv(a.over),
                    under: mv(a.under),
                    sign: a.sign,
                })
                .collect(),
        }
    }
}

/// Gauss diagram of a one-component link diagram, based at the start of its
/// first segment.
pub fn gauss_diagram(d: &LinkDiagram) -> Result<GaussDiagram, DiagramError> {
    if d.component_count() != 1 {
        return Err(DiagramError::ComponentCount {
            expected: 1,
            got: d.component_count(),
        });
    }
    GaussDiagram::from_code(&d.gauss_code())
}
