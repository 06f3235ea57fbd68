//! Checks of one embedding against every applicable identity or bound.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::analyzer::{AcceptedFrame, Analyzer};
use super::arith::{binomial, factorial, general_lower_bound, hamiltonian_residue, rectilinear_upper_bound};
use super::{TheoremError, DEFAULT_N_CEILING};
use crate::combinatorics::GraphKind;
use crate::invariants::{admissible_a2, classify_triangle_triangle, stick_bound_a2, TriangleLinkClass};

/// Witnesses kept per report; the total is reported alongside.
pub const WITNESS_CAP: usize = 32;

pub(crate) fn ser_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_q<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_opt_q<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

fn ser_sums<S: Serializer>(v: &BTreeMap<String, BigInt>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(v.iter().map(|(k, x)| (k, x.to_string())))
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn q(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

macro_rules! check_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum CheckId { $($variant),* }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(CheckId::$variant => $name),* }
            }
        }

        impl FromStr for CheckId {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                match s.trim() {
                    $($name => Ok(CheckId::$variant),)*
                    other => Err(format!("unknown check {other:?}")),
                }
            }
        }
    };
}

check_ids! {
    Main => "main-identity",
    K6 => "k6-identity",
    SixCycle => "six-cycle-identity",
    Lk34 => "lk34-identity",
    K7 => "k7-identity",
    K7Lk34 => "k7-lk34",
    K7K331Sum => "k7-k331-sum",
    K7SixCycleLk34 => "k7-six-cycle-lk34",
    K331 => "k331-identity",
    Rectilinear => "rectilinear-identity",
    K6LkParity => "k6-lk-parity",
    K7A2Parity => "k7-a2-parity",
    HamiltonianResidue => "hamiltonian-residue",
    LkSquareParity => "lk-square-parity",
    GeneralLowerBound => "general-lower-bound",
    RectilinearSandwich => "rectilinear-sandwich",
    StickBound => "stick-bound",
    SixStickLinks => "six-stick-links",
    AdmissibleA2 => "admissible-a2",
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A nonzero term of a sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub sum: String,
    pub subject: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: CheckId,
    pub n: usize,
    #[serde(serialize_with = "ser_sums")]
    pub sums: BTreeMap<String, BigInt>,
    #[serde(serialize_with = "ser_q")]
    pub lhs: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub rhs: BigRational,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
    pub witness_total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub id: CheckId,
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub value: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub modulus: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub residue: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub expected: BigInt,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub id: String,
    pub n: usize,
    #[serde(serialize_with = "ser_q")]
    pub value: BigRational,
    #[serde(serialize_with = "ser_opt_q")]
    pub lower: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_q")]
    pub upper: Option<BigRational>,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

impl BoundCheck {
    pub fn new(
        id: impl Into<String>,
        n: usize,
        value: BigRational,
        lower: Option<BigRational>,
        upper: Option<BigRational>,
    ) -> Self {
        let pass = lower.as_ref().is_none_or(|l| &value >= l) && upper.as_ref().is_none_or(|u| &value <= u);
        BoundCheck {
            id: id.into(),
            n,
            value,
            lower,
            upper,
            pass,
            witnesses: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Identity(IdentityReport),
    Congruence(CongruenceReport),
    Bound(BoundCheck),
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        match self {
            CheckOutcome::Identity(r) => r.pass,
            CheckOutcome::Congruence(r) => r.pass,
            CheckOutcome::Bound(r) => r.pass,
        }
    }
}

/// Checks that hold on every embedding of the analyzed graph.
pub fn applicable_checks(an: &Analyzer) -> Vec<CheckId> {
    use CheckId::*;
    let g = an.graph();
    let n = g.vertex_count();
    let rect = an.embedding().is_rectilinear();
    let mut out = Vec::new();
    match g.kind() {
        GraphKind::Complete => {
            if n >= 6 {
                out.extend([Main, SixCycle, LkSquareParity, GeneralLowerBound]);
            }
            if n == 6 {
                out.extend([K6, K6LkParity]);
            }
            if n >= 7 {
                out.extend([Lk34, HamiltonianResidue]);
            }
            if n == 7 {
                out.extend([K7, K7Lk34, K7K331Sum, K7SixCycleLk34, K7A2Parity]);
            }
            if rect && n >= 6 {
                out.extend([Rectilinear, RectilinearSandwich, SixStickLinks]);
            }
            if rect && n >= 3 {
                out.push(StickBound);
            }
            if rect && (3..=8).contains(&n) {
                out.push(AdmissibleA2);
            }
        }
        GraphKind::K331 => {
            out.push(K331);
            if rect {
                out.extend([StickBound, AdmissibleA2]);
            }
        }
        GraphKind::Other => {}
    }
    out.sort();
    out
}

/// Accumulates named sums and their nonzero terms.
struct Sums<'a> {
    an: &'a Analyzer,
    map: BTreeMap<String, BigInt>,
    witnesses: Vec<Witness>,
    total: usize,
}

impl<'a> Sums<'a> {
    fn new(an: &'a Analyzer) -> Self {
        Sums {
            an,
            map: BTreeMap::new(),
            witnesses: Vec::new(),
            total: 0,
        }
    }

    fn record(&mut self, name: String, records: &[crate::invariants::InvariantRecord], square: bool) -> BigInt {
        let mut sum = BigInt::zero();
        for r in records {
            let v = if square { r.value * r.value } else { r.value };
            sum += v;
            if r.value != 0 {
                self.total += 1;
                if self.witnesses.len() < WITNESS_CAP {
                    self.witnesses.push(Witness {
                        sum: name.clone(),
                        subject: r.subject.to_string(),
                        value: r.value,
                    });
                }
            }
        }
        self.map.insert(name, sum.clone());
        sum
    }

    fn a2(&mut self, k: usize) -> Result<BigRational, TheoremError> {
        let recs = self.an.cycle_records(k)?;
        Ok(q(&self.record(format!("a2[{k}]"), &recs, false)))
    }

    fn a2_h(&mut self, k: usize) -> Result<BigRational, TheoremError> {
        let recs = self.an.h_cycle_records(k)?;
        Ok(q(&self.record(format!("a2_h[{k}]"), &recs, false)))
    }

    fn lk2(&mut self, k: usize, l: usize) -> Result<BigRational, TheoremError> {
        let recs = self.an.pair_records(k, l)?;
        Ok(q(&self.record(format!("lk2[{k},{l}]"), &recs, true)))
    }

    fn finish(self, id: CheckId, lhs: BigRational, rhs: BigRational, extra_ok: bool) -> IdentityReport {
        IdentityReport {
            identity_id: id,
            n: self.an.graph().vertex_count(),
            sums: self.map,
            pass: lhs == rhs && extra_ok,
            lhs,
            rhs,
            witnesses: self.witnesses,
            witness_total: self.total,
        }
    }
}

fn congruence(an: &Analyzer, id: CheckId, value: BigInt, modulus: BigInt, expected: BigInt) -> CongruenceReport {
    let residue = value.mod_floor(&modulus);
    let expected = expected.mod_floor(&modulus);
    CongruenceReport {
        id,
        n: an.graph().vertex_count(),
        pass: residue == expected,
        value,
        modulus,
        residue,
        expected,
    }
}

pub fn run_check(an: &Analyzer, id: CheckId) -> Result<CheckOutcome, TheoremError> {
    use CheckId::*;
    if !applicable_checks(an).contains(&id) {
        return Err(TheoremError::NotApplicable(format!(
            "{id} does not apply to this embedding"
        )));
    }
    let n = an.graph().vertex_count();
    let nu = n as u64;
    let mut s = Sums::new(an);
    let out = match id {
        Main | Rectilinear => {
            let f = q(&factorial(nu - 5));
            let hn = s.a2(n)?;
            let h5 = s.a2(5)?;
            let l33 = s.lk2(3, 3)?;
            let rhs = &f / int(2) * (l33 - q(&binomial(nu - 1, 5)));
            if id == Main {
                let lhs = hn - f * h5;
                CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
            } else {
                let five_zero = h5.is_zero();
                CheckOutcome::Identity(s.finish(id, hn, rhs, five_zero))
            }
        }
        K6 => {
            let lhs = int(2) * s.a2(6)? - int(2) * s.a2(5)?;
            let rhs = s.lk2(3, 3)? - int(1);
            CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
        }
        SixCycle => {
            let lhs = int(2) * s.a2(6)? - int(2 * (n as i64 - 5)) * s.a2(5)?;
            let rhs = s.lk2(3, 3)? - q(&binomial(nu, 6));
            CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
        }
        Lk34 => {
            let lhs = s.lk2(3, 4)?;
            let rhs = int(2 * (n as i64 - 6)) * s.lk2(3, 3)?;
            CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
        }
        K7 => {
            let lhs = int(7) * s.a2(7)? - int(6) * s.a2(6)? - int(2) * s.a2(5)?;
            let rhs = int(2) * s.lk2(3, 4)? - int(21);
            CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
        }
        K7Lk34 => {
            let lhs = s.lk2(3, 4)?;
            let rhs = int(2) * s.lk2(3, 3)?;
            CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
        }
        K7K331Sum => {
            let lhs = int(7) * s.a2(7)? - int(2) * s.a2(6)? - int(10) * s.a2(5)?;
            let rhs = int(3) * s.lk2(3, 4)? - int(35);
            CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
        }
        K7SixCycleLk34 => {
            let lhs = int(4) * s.a2(6)? - int(8) * s.a2(5)?;
            let rhs = s.lk2(3, 4)? - int(14);
            CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
        }
        K331 => {
            let lhs = int(2) * s.a2(7)? - int(4) * s.a2_h(6)? - int(2) * s.a2(5)?;
            let rhs = s.lk2(3, 4)? - int(1);
            CheckOutcome::Identity(s.finish(id, lhs, rhs, true))
        }
        K6LkParity => CheckOutcome::Congruence(congruence(an, id, an.sum_lk(3, 3)?, 2.into(), 1.into())),
        K7A2Parity => CheckOutcome::Congruence(congruence(an, id, an.sum_a2(7)?, 2.into(), 1.into())),
        HamiltonianResidue => CheckOutcome::Congruence(congruence(
            an,
            id,
            an.sum_a2(n)?,
            factorial(nu - 5),
            hamiltonian_residue(nu),
        )),
        LkSquareParity => CheckOutcome::Congruence(congruence(an, id, an.sum_lk_sq(3, 3)?, 2.into(), binomial(nu, 6))),
        GeneralLowerBound => {
            let value = q(&an.sum_a2(n)?) - q(&factorial(nu - 5)) * q(&an.sum_a2(5)?);
            CheckOutcome::Bound(BoundCheck::new(
                id.name(),
                n,
                value,
                Some(general_lower_bound(nu)),
                None,
            ))
        }
        RectilinearSandwich => CheckOutcome::Bound(BoundCheck::new(
            id.name(),
            n,
            q(&an.sum_a2(n)?),
            Some(general_lower_bound(nu)),
            Some(rectilinear_upper_bound(nu)),
        )),
        StickBound => {
            let recs = an.cycle_records(n)?;
            let bound = stick_bound_a2(nu) as i64;
            let max = recs.iter().map(|r| r.value).max().unwrap_or(0);
            let mut check = BoundCheck::new(id.name(), n, int(max), None, Some(int(bound)));
            check.witnesses = recs
                .iter()
                .filter(|r| r.value > bound)
                .take(WITNESS_CAP)
                .map(|r| Witness {
                    sum: format!("a2[{n}]"),
                    subject: r.subject.to_string(),
                    value: r.value,
                })
                .collect();
            CheckOutcome::Bound(check)
        }
        SixStickLinks => {
            let recs = an.pair_records(3, 3)?;
            let max = recs.iter().map(|r| r.value.abs()).max().unwrap_or(0);
            let mut check = BoundCheck::new(id.name(), n, int(max), None, Some(int(1)));
            check.witnesses = recs
                .iter()
                .filter(|r| classify_triangle_triangle(r.value, true) == TriangleLinkClass::Other)
                .take(WITNESS_CAP)
                .map(|r| Witness {
                    sum: "lk[3,3]".into(),
                    subject: r.subject.to_string(),
                    value: r.value,
                })
                .collect();
            CheckOutcome::Bound(check)
        }
        AdmissibleA2 => {
            let mut offenders = Vec::new();
            for k in 3..=n {
                let allowed = admissible_a2(k as u64).expect("k <= 8");
                for r in an.cycle_records(k)?.iter() {
                    if !allowed.contains(&r.value) {
                        offenders.push(Witness {
                            sum: format!("a2[{k}]"),
                            subject: r.subject.to_string(),
                            value: r.value,
                        });
                    }
                }
            }
            let mut check = BoundCheck::new(id.name(), n, int(offenders.len() as i64), None, Some(int(0)));
            offenders.truncate(WITNESS_CAP);
            check.witnesses = offenders;
            CheckOutcome::Bound(check)
        }
    };
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameInfo {
    pub index: usize,
    pub frame: crate::geometry::frame::ProjectionFrame,
}

impl From<&AcceptedFrame> for FrameInfo {
    fn from(f: &AcceptedFrame) -> Self {
        FrameInfo {
            index: f.index,
            frame: f.frame.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub graph: &'static str,
    pub n: usize,
    pub rectilinear: bool,
    pub frames: Vec<FrameInfo>,
    pub identities: Vec<IdentityReport>,
    pub congruences: Vec<CongruenceReport>,
    pub bounds: Vec<BoundCheck>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn identity(&self, id: CheckId) -> Option<&IdentityReport> {
        self.identities.iter().find(|r| r.identity_id == id)
    }

    pub fn congruence(&self, id: CheckId) -> Option<&CongruenceReport> {
        self.congruences.iter().find(|r| r.id == id)
    }

    pub fn bound(&self, id: CheckId) -> Option<&BoundCheck> {
        self.bounds.iter().find(|r| r.id == id.name())
    }

    /// Names of failed checks.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .identities
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.identity_id.to_string())
            .collect();
        out.extend(self.congruences.iter().filter(|r| !r.pass).map(|r| r.id.to_string()));
        out.extend(self.bounds.iter().filter(|r| !r.pass).map(|r| r.id.clone()));
        out
    }
}

pub(crate) fn graph_name(kind: GraphKind) -> &'static str {
    match kind {
        GraphKind::Complete => "complete",
        GraphKind::K331 => "k331",
        GraphKind::Other => "other",
    }
}

/// Runs `selection` (default: every applicable check).
pub fn verify(an: &Analyzer, selection: Option<&[CheckId]>, allow_large: bool) -> Result<VerifyReport, TheoremError> {
    let n = an.graph().vertex_count();
    if n > DEFAULT_N_CEILING && !allow_large {
        return Err(TheoremError::TooLarge {
            n,
            ceiling: DEFAULT_N_CEILING,
        });
    }
    let mut ids: Vec<CheckId> = match selection {
        Some(sel) => sel.to_vec(),
        None => applicable_checks(an),
    };
    ids.sort();
    ids.dedup();
    let mut report = VerifyReport {
        graph: graph_name(an.graph().kind()),
        n,
        rectilinear: an.embedding().is_rectilinear(),
        frames: an.frames().iter().map(FrameInfo::from).collect(),
        identities: Vec::new(),
        congruences: Vec::new(),
        bounds: Vec::new(),
        pass: true,
    };
    for id in ids {
        let outcome = run_check(an, id)?;
        report.pass &= outcome.pass();
        match outcome {
            CheckOutcome::Identity(r) => report.identities.push(r),
            CheckOutcome::Congruence(r) => report.congruences.push(r),
            CheckOutcome::Bound(r) => report.bounds.push(r),
        }
    }
    Ok(report)
}
