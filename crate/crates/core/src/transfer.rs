//! The transfer operation and stabilization.
//!
//! For distinct entries `i, j` of `α = a_i^{m_i} a_j^{m_j} ρ`, the ordered pair
//! `(i, j)` is unstable when there are `1 <= u <= m_i + 1`, `1 <= v <= m_j - 1`
//! with `u·a_i = v·a_j` and either `u > v`, or `u = v > m_j - m_i`. The transfer
//! replaces `α` by `a_i^{m_i+u} a_j^{m_j-v} ρ`; it never enlarges `Σ*(α)`,
//! keeps the support, and strictly increases `(|α|, |α|_2)` lexicographically.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::error::{validation, Error, Result};
use crate::group::Element;
use crate::limits::Limits;
use crate::report::Check;
use crate::sequence::{Sequence, SequenceStats};
use crate::sumset::{progression, set_add, subsequence_sums};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: u64,
    pub v: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairStatus {
    pub i: usize,
    pub j: usize,
    pub stable: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub i: usize,
    pub j: usize,
    pub u: u64,
    pub v: u64,
    pub n_after: u64,
    pub n2_after: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationTrace {
    pub steps: Vec<TraceStep>,
    pub initial: SequenceStats,
    pub final_stats: SequenceStats,
}

impl Serialize for StabilizationTrace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.steps.serialize(s)
    }
}

fn instability_holds(mi: u64, mj: u64, w: Witness) -> bool {
    w.u > w.v || (w.u == w.v && (w.v as i128) > mj as i128 - mi as i128)
}

fn check_pair(seq: &Sequence, i: usize, j: usize) -> Result<()> {
    let s = seq.support_size();
    if i >= s || j >= s || i == j {
        return Err(validation(format!(
            "pair ({i}, {j}) is not a pair of distinct entries of a sequence with {s} terms"
        )));
    }
    Ok(())
}

/// Minimal-v-then-minimal-u instability witness for the ordered pair `(i, j)`.
fn find_witness(seq: &Sequence, i: usize, j: usize) -> Result<Option<Witness>> {
    let group = seq.group();
    let (ai, mi) = (seq.term(i), seq.mult(i));
    let (aj, mj) = (seq.term(j), seq.mult(j));
    if mj < 2 {
        return Ok(None);
    }
    // smallest u in [1, m_i + 1] reaching each multiple of a_i
    let mut first_u: HashMap<Element, u64> = HashMap::new();
    let mut x = group.zero();
    for u in 1..=mi + 1 {
        x = group.add_unchecked(&x, ai);
        if first_u.contains_key(&x) {
            break;
        }
        first_u.insert(x.clone(), u);
    }
    let period = group.element_order(ai)?.finite();
    let mut y = group.zero();
    for v in 1..mj {
        y = group.add_unchecked(&y, aj);
        let Some(&u0) = first_u.get(&y) else {
            continue;
        };
        // every u with u·a_i = v·a_j is u0 + k·ord(a_i); want the least valid one
        let lo = if (v as i128) > mj as i128 - mi as i128 { v } else { v + 1 };
        let u = if u0 >= lo {
            Some(u0)
        } else {
            period.map(|p| u0 + (lo - u0).div_ceil(p) * p)
        };
        if let Some(u) = u.filter(|&u| u <= mi + 1) {
            return Ok(Some(Witness { u, v }));
        }
    }
    Ok(None)
}

pub fn pair_status(seq: &Sequence, i: usize, j: usize) -> Result<PairStatus> {
    check_pair(seq, i, j)?;
    let witness = find_witness(seq, i, j)?;
    Ok(PairStatus {
        i,
        j,
        stable: witness.is_none(),
        witness,
    })
}

/// `true` when both `(i, j)` and `(j, i)` are stable.
pub fn is_stable_set(seq: &Sequence, i: usize, j: usize) -> Result<bool> {
    Ok(pair_status(seq, i, j)?.stable && pair_status(seq, j, i)?.stable)
}

/// First unstable ordered pair in lexicographic order, with its minimal witness.
pub fn first_unstable_pair(seq: &Sequence) -> Result<Option<(usize, usize, Witness)>> {
    let s = seq.support_size();
    for i in 0..s {
        for j in 0..s {
            if i == j {
                continue;
            }
            if let Some(w) = find_witness(seq, i, j)? {
                return Ok(Some((i, j, w)));
            }
        }
    }
    Ok(None)
}

/// Sequences with fewer than two terms have no pairs and are stable.
pub fn is_stable(seq: &Sequence) -> Result<bool> {
    Ok(first_unstable_pair(seq)?.is_none())
}

pub fn apply_transfer(seq: &Sequence, i: usize, j: usize, u: u64, v: u64) -> Result<Sequence> {
    check_pair(seq, i, j)?;
    let group = seq.group();
    let (mi, mj) = (seq.mult(i), seq.mult(j));
    let w = Witness { u, v };
    if !(1..=mi + 1).contains(&u) || !(1..mj).contains(&v) {
        return Err(validation(format!(
            "witness (u, v) = ({u}, {v}) outside 1 <= u <= {}, 1 <= v <= {}",
            mi + 1,
            mj.saturating_sub(1)
        )));
    }
    if !instability_holds(mi, mj, w) {
        return Err(validation(format!(
            "witness (u, v) = ({u}, {v}) needs u > v, or u = v > m_j - m_i"
        )));
    }
    let ua = group.scale(u as i64, seq.term(i))?;
    let va = group.scale(v as i64, seq.term(j))?;
    if ua != va {
        return Err(validation(format!("u·a_i = {ua} differs from v·a_j = {va}")));
    }
    let grown = seq.with_mult(i, mi + u)?;
    grown.with_mult(j, mj - v)
}

/// Applies transfers until stable, always taking the first unstable pair and its minimal witness.
pub fn stabilize(seq: &Sequence, limits: &Limits) -> Result<(Sequence, StabilizationTrace)> {
    let sums = subsequence_sums(seq, limits)?;
    if !sums.zero_sum_free {
        return Err(validation("stabilization needs a zero-sum-free sequence"));
    }
    let cap = (sums.sigma.len() as u128).pow(3);
    let initial = seq.stats();
    let mut current = seq.clone();
    let mut steps = Vec::new();
    while let Some((i, j, w)) = first_unstable_pair(&current)? {
        if steps.len() as u128 >= cap {
            return Err(Error::Internal(format!(
                "stabilization exceeded {cap} steps"
            )));
        }
        current = apply_transfer(&current, i, j, w.u, w.v)?;
        let st = current.stats();
        steps.push(TraceStep {
            i,
            j,
            u: w.u,
            v: w.v,
            n_after: st.n,
            n2_after: st.n2,
        });
    }
    let final_stats = current.stats();
    Ok((
        current,
        StabilizationTrace {
            steps,
            initial,
            final_stats,
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StablePairReport {
    /// Entry with the larger multiplicity.
    pub i: usize,
    pub j: usize,
    pub m_i: u64,
    pub m_j: u64,
    pub sigma_size: usize,
    pub records: Vec<Check>,
}

impl StablePairReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(Check::passes)
    }
}

/// Evaluates the stable-pair consequences for `{i, j}`: `P_i ∩ P_j' = {0}`,
/// `|P_i + P_j'| = (m_i + 1) m_j <= |Σ|`, and, when `m_i = h_1` and `m_j = h_2`,
/// `|Σ| - 2n >= (m_i - 2)(m_j - 2) - 2`.
pub fn stable_pair_report(seq: &Sequence, i: usize, j: usize, limits: &Limits) -> Result<StablePairReport> {
    check_pair(seq, i, j)?;
    let sums = subsequence_sums(seq, limits)?;
    if !sums.zero_sum_free {
        return Err(validation("stable pair report needs a zero-sum-free sequence"));
    }
    if !is_stable_set(seq, i, j)? {
        return Err(validation(format!("{{{i}, {j}}} is not a stable pair")));
    }
    let (i, j) = if seq.mult(i) >= seq.mult(j) { (i, j) } else { (j, i) };
    let group = seq.group();
    let (mi, mj) = (seq.mult(i), seq.mult(j));
    let p_i = progression(group, seq.term(i), 0, mi as i64)?;
    let p_j = progression(group, seq.term(j), 0, mj as i64 - 1)?;
    let sigma = sums.sigma.len();

    let meet = p_i.intersection(&p_j);
    let zeroint = Check::evaluated(
        "zeroint",
        meet.len() == 1 && meet.contains(&group.zero()),
        meet.len() as f64,
        1.0,
    );

    let sum_size = set_add(&p_i, &p_j, limits)?.len() as u64;
    let predicted = (mi + 1) * mj;
    let pipj = Check::evaluated(
        "PiPj",
        sum_size == predicted && (predicted as usize) <= sigma,
        sum_size as f64,
        predicted as f64,
    )
    .with_detail(format!("|Σ| = {sigma}"));

    let stats = seq.stats();
    let tbl = if mi == stats.h(1) && mj == stats.h(2) {
        let lhs = sigma as i128 - 2 * stats.n as i128;
        let rhs = (mi as i128 - 2) * (mj as i128 - 2) - 2;
        Check::evaluated("TBL", lhs >= rhs, lhs as f64, rhs as f64)
    } else {
        Check::inapplicable("TBL", "pair multiplicities are not (h1, h2)")
    };

    Ok(StablePairReport {
        i,
        j,
        m_i: mi,
        m_j: mj,
        sigma_size: sigma,
        records: vec![zeroint, pipj, tbl],
    })
}
