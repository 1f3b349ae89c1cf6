//! Brute-force subsequence sums by enumerating every exponent vector
//! `(m_1', ..., m_s')` with `0 <= m_i' <= m_i`.
//!
//! Deliberately naive: each sum is recomputed from scratch with scalar
//! multiplication, sharing nothing with the incremental engine in `sumset`.

use crate::error::{resource, Result};
use crate::limits::Limits;
use crate::sequence::Sequence;
use crate::sumset::SumSet;

/// Number of exponent vectors, `∏(m_i + 1)`, or `None` on overflow.
pub fn enumeration_size(seq: &Sequence) -> Option<u64> {
    seq.entries()
        .iter()
        .try_fold(1u64, |acc, e| acc.checked_mul(e.mult.checked_add(1)?))
}

/// `(Σ(α), Σ*(α))` by full enumeration.
pub fn brute_sums(seq: &Sequence, limits: &Limits) -> Result<(SumSet, SumSet)> {
    let budget = limits.oracle_budget;
    match enumeration_size(seq) {
        Some(count) if count <= budget => {}
        _ => {
            return Err(resource(format!(
                "oracle enumeration exceeds the budget of {budget} exponent vectors"
            )))
        }
    }
    let group = seq.group();
    let mults: Vec<u64> = seq.entries().iter().map(|e| e.mult).collect();
    let mut exps = vec![0u64; mults.len()];
    let mut all = SumSet::new(group.clone());
    let mut proper = SumSet::new(group.clone());
    loop {
        let mut total = group.zero();
        for (e, &k) in seq.entries().iter().zip(&exps) {
            let part = group.scale(k as i64, &e.term)?;
            total = group.add(&total, &part)?;
        }
        if exps.iter().any(|&k| k > 0) {
            proper.insert(total.clone());
        }
        all.insert(total);

        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok((all, proper));
            }
            if exps[i] < mults[i] {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}
