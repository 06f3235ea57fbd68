//! Counts of nontrivial Hamiltonian knots and triangle-triangle links.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::analyzer::Analyzer;
use super::arith::{binomial, factorial, general_lower_bound, r_n, rectilinear_upper_bound};
use super::checks::{graph_name, ser_big, BoundCheck, Witness, WITNESS_CAP};
use super::{TheoremError, DEFAULT_N_CEILING};
use crate::combinatorics::GraphKind;

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub graph: &'static str,
    pub n: usize,
    pub rectilinear: bool,
    pub hamiltonian_cycles: usize,
    pub positive_a2_hamiltonian: usize,
    pub a2_histogram: BTreeMap<i64, usize>,
    pub hopf_count: usize,
    #[serde(serialize_with = "ser_big")]
    pub lk_square_sum: BigInt,
    pub lk_histogram: BTreeMap<i64, usize>,
    pub bounds: Vec<BoundCheck>,
    pub info: BTreeMap<String, String>,
    pub positive_a2_witnesses: Vec<Witness>,
    pub hopf_witnesses: Vec<Witness>,
    pub pass: bool,
}

fn int(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn census(an: &Analyzer, allow_large: bool) -> Result<CensusReport, TheoremError> {
    let g = an.graph();
    let n = g.vertex_count();
    if n > DEFAULT_N_CEILING && !allow_large {
        return Err(TheoremError::TooLarge {
            n,
            ceiling: DEFAULT_N_CEILING,
        });
    }
    let nu = n as u64;
    let rect = an.embedding().is_rectilinear();
    let complete = g.kind() == GraphKind::Complete;
    let ham = an.cycle_records(n)?;
    let tt = an.pair_records(3, 3)?;

    let mut a2_histogram = BTreeMap::new();
    for r in ham.iter() {
        *a2_histogram.entry(r.value).or_insert(0) += 1;
    }
    let mut lk_histogram = BTreeMap::new();
    for r in tt.iter() {
        *lk_histogram.entry(r.value).or_insert(0) += 1;
    }
    let positive: Vec<_> = ham.iter().filter(|r| r.value > 0).collect();
    let hopf: Vec<_> = tt.iter().filter(|r| r.value.abs() == 1).collect();
    let lk_square_sum: BigInt = tt.iter().map(|r| BigInt::from(r.value * r.value)).sum();
    let witness = |sum: &str, r: &crate::invariants::InvariantRecord| Witness {
        sum: sum.to_string(),
        subject: r.subject.to_string(),
        value: r.value,
    };

    let mut bounds = Vec::new();
    let mut info = BTreeMap::new();
    if rect {
        bounds.push(BoundCheck::new(
            "hopf-count-equals-lk-square-sum",
            n,
            int(hopf.len()),
            Some(BigRational::from_integer(lk_square_sum.clone())),
            Some(BigRational::from_integer(lk_square_sum.clone())),
        ));
    }
    if complete && n >= 6 {
        let h5: BigInt = an.sum_a2(5)?;
        let hn: BigInt = ham.iter().map(|r| BigInt::from(r.value)).sum();
        bounds.push(BoundCheck::new(
            "general-lower-bound",
            n,
            BigRational::from_integer(&hn - factorial(nu - 5) * h5),
            Some(general_lower_bound(nu)),
            None,
        ));
        if rect {
            bounds.push(BoundCheck::new(
                "rectilinear-sandwich",
                n,
                BigRational::from_integer(hn),
                Some(general_lower_bound(nu)),
                Some(rectilinear_upper_bound(nu)),
            ));
            bounds.push(BoundCheck::new(
                "hopf-count-lower",
                n,
                int(hopf.len()),
                Some(BigRational::from_integer(binomial(nu, 6))),
                None,
            ));
        }
    }
    if complete && n >= 7 {
        let rn = r_n(nu);
        info.insert("r_n".into(), rn.to_string());
        if rect {
            bounds.push(BoundCheck::new(
                "positive-a2-lower",
                n,
                int(positive.len()),
                Some(BigRational::from_integer(rn)),
                None,
            ));
        }
    }
    if complete && n == 8 {
        info.insert("positive_a2_lower_eight_sticks".into(), "5".into());
        info.insert("positive_a2_lower_k3311".into(), "8".into());
    }
    let pass = bounds.iter().all(|b| b.pass);
    Ok(CensusReport {
        graph: graph_name(g.kind()),
        n,
        rectilinear: rect,
        hamiltonian_cycles: ham.len(),
        positive_a2_hamiltonian: positive.len(),
        a2_histogram,
        hopf_count: hopf.len(),
        lk_square_sum,
        lk_histogram,
        bounds,
        info,
        positive_a2_witnesses: positive
            .iter()
            .take(WITNESS_CAP)
            .map(|r| witness(&format!("a2[{n}]"), r))
            .collect(),
        hopf_witnesses: hopf.iter().take(WITNESS_CAP).map(|r| witness("lk[3,3]", r)).collect(),
        pass,
    })
}

impl CensusReport {
    /// Histogram rows `kind,value,count`.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("kind,value,count\n");
        for (v, c) in &self.a2_histogram {
            out.push_str(&format!("a2,{v},{c}\n"));
        }
        for (v, c) in &self.lk_histogram {
            out.push_str(&format!("lk,{v},{c}\n"));
        }
        out
    }
}
