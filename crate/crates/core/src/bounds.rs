//! Exact checks of the lower bounds on `|Σ(α)|` for zero-sum-free `α` and of
//! the multiplicity inequalities that follow from them.
//!
//! Every verdict is decided in integer arithmetic; irrational right-hand sides
//! are compared by squaring. Inequalities whose hypotheses fail are recorded
//! as inapplicable, never asserted.

use serde::Serialize;

use crate::error::{validation, Result};
use crate::limits::Limits;
use crate::report::{sqrt_gt, sqrt_lt, Check};
use crate::sequence::Sequence;
use crate::sumset::{subsequence_sums, sum_set};
use crate::transfer::{is_stable, is_stable_set};

fn require_zero_sum_free(seq: &Sequence, limits: &Limits) -> Result<usize> {
    let sums = subsequence_sums(seq, limits)?;
    if !sums.zero_sum_free {
        return Err(validation("sequence is not zero-sum-free"));
    }
    Ok(sums.sigma.len())
}

/// `|Σ(α)| >= 2|α| - h(α) + 1` (`sf1`) and `2|α| - h(α) + 1 >= |α| + |supp α|` (`sf2`).
pub fn check_sf(seq: &Sequence, limits: &Limits) -> Result<Vec<Check>> {
    let sigma = require_zero_sum_free(seq, limits)? as i128;
    let st = seq.stats();
    let mid = 2 * st.n as i128 - st.h(1) as i128 + 1;
    let low = st.n as i128 + st.s as i128;
    Ok(vec![
        Check::evaluated("sf1", sigma >= mid, sigma as f64, mid as f64),
        Check::evaluated("sf2", mid >= low, mid as f64, low as f64),
    ])
}

/// `|Σ(α)| >= Σ_k |Σ(α_k)| - (k - 1)` for a factorization `α = α_1 ⋯ α_k`.
pub fn check_ben(seq: &Sequence, parts: &[Sequence], limits: &Limits) -> Result<Check> {
    let sigma = require_zero_sum_free(seq, limits)? as i128;
    if parts.is_empty() {
        return Err(validation("factorization needs at least one part"));
    }
    let mut product = Sequence::empty(seq.group().clone());
    for p in parts {
        product = product.concat(p)?;
    }
    if &product != seq {
        return Err(validation("parts do not multiply to the sequence"));
    }
    let mut rhs = -(parts.len() as i128 - 1);
    for p in parts {
        rhs += sum_set(p, limits)?.len() as i128;
    }
    Ok(Check::evaluated("ben", sigma >= rhs, sigma as f64, rhs as f64)
        .with_detail(format!("k = {}", parts.len())))
}

/// `|Σ(A)| >= 1 + |A|²/6` for a zero-sum-free set `A`.
pub fn check_hui(set: &Sequence, limits: &Limits) -> Result<Check> {
    if set.entries().iter().any(|e| e.mult > 1) {
        return Err(validation("hui bound applies to sets: every multiplicity must be 1"));
    }
    let sigma = require_zero_sum_free(set, limits)? as u128;
    let a = set.support_size() as u128;
    // 6(|Σ| - 1) >= |A|²
    let holds = 6 * (sigma - 1) >= a * a;
    Ok(Check::evaluated(
        "hui",
        holds,
        sigma as f64,
        1.0 + (a * a) as f64 / 6.0,
    ))
}

/// `|Σ| < Cn - C²√(6n)`, exactly.
pub fn below_theorem_threshold(n: u64, sigma: usize, c: u64) -> bool {
    let margin = c as i128 * n as i128 - sigma as i128;
    // C²√(6n) < margin  ⇔  √(6 n C⁴) < margin
    let c2 = c as u128 * c as u128;
    match (6 * n as u128).checked_mul(c2 * c2) {
        Some(x) => sqrt_lt(x, margin),
        None => false,
    }
}

pub fn theorem_threshold(n: u64, c: u64) -> f64 {
    c as f64 * n as f64 - (c * c) as f64 * (6.0 * n as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: u64,
    pub sigma_size: usize,
    pub h1: u64,
    pub h2: u64,
    #[serde(rename = "C")]
    pub c: u64,
    pub records: Vec<Check>,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(Check::passes)
    }

    pub fn record(&self, name: &str) -> Option<&Check> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Multiplicity inequalities for a zero-sum-free `α` with `n >= 2`.
///
/// `lbii` and `lbiii` need `|Σ| < Cn` (and `lbiii` needs a second term, since
/// its bound divides by `h_2`); `newb` and `bounds` additionally need `α`
/// stable, `n >= (4C)³` and `|Σ| < Cn - C²√(6n)`. `TBL` is evaluated on the
/// pair of largest multiplicities whenever that pair is stable.
pub fn multiplicity_bounds_report(seq: &Sequence, c: u64, limits: &Limits) -> Result<BoundsReport> {
    if c < 2 {
        return Err(validation("C must be an integer >= 2"));
    }
    let sigma = require_zero_sum_free(seq, limits)?;
    let st = seq.stats();
    let n = st.n;
    if n < 2 {
        return Err(validation("multiplicity bounds need |α| >= 2"));
    }
    let (h1, h2) = (st.h(1), st.h(2));
    let (nn, sg, cc) = (n as u128, sigma as u128, c as u128);
    let below_cn = sg < cc * nn;
    let mut records = Vec::new();

    if below_cn {
        // h1 > n²/(6|Σ|) > n/(6C)
        let holds = 6 * h1 as u128 * sg > nn * nn && cc * nn > sg;
        records.push(Check::evaluated(
            "lbii",
            holds,
            h1 as f64,
            (nn * nn) as f64 / (6.0 * sg as f64),
        ));
    } else {
        records.push(Check::inapplicable("lbii", "|Σ| < Cn fails"));
    }

    if !below_cn {
        records.push(Check::inapplicable("lbiii", "|Σ| < Cn fails"));
    } else if h2 == 0 {
        records.push(Check::inapplicable("lbiii", "h2 >= 1 fails"));
    } else {
        // h1 > n - √(6 h2 |Σ|) + h2  ⇔  √(6 h2 |Σ|) > n + h2 - h1
        let first = sqrt_gt(6 * h2 as u128 * sg, n as i128 + h2 as i128 - h1 as i128);
        // n - √(6h2|Σ|) + h2 > n - √(6Cn h2) + h2  ⇔  |Σ| < Cn, with h2 > 0
        let second = cc * nn * h2 as u128 > sg * h2 as u128;
        let rhs = n as f64 - (6.0 * h2 as f64 * sg as f64).sqrt() + h2 as f64;
        records.push(Check::evaluated("lbiii", first && second, h1 as f64, rhs));
    }

    let stable = is_stable(seq)?;
    let long = (n as u128) >= (4 * cc).pow(3);
    let thin = below_theorem_threshold(n, sigma, c);
    let reason = if !below_cn {
        Some("|Σ| < Cn fails")
    } else if !stable {
        Some("stable fails")
    } else if !long {
        Some("n >= (4C)^3 fails")
    } else if !thin {
        Some("|Σ| < Cn - C^2 sqrt(6n) fails")
    } else {
        None
    };
    match reason {
        Some(why) => {
            records.push(Check::inapplicable("newb", why));
            records.push(Check::inapplicable("bounds", why));
        }
        None => {
            records.push(Check::evaluated("newb", h2 < c, h2 as f64, (c - 1) as f64));
            // h1 > n - C√(6n) + 1  ⇔  √(6n C²) > n + 1 - h1
            let holds = sqrt_gt(6 * nn * cc * cc, n as i128 + 1 - h1 as i128);
            let rhs = n as f64 - c as f64 * (6.0 * n as f64).sqrt() + 1.0;
            records.push(Check::evaluated("bounds", holds, h1 as f64, rhs));
        }
    }

    records.push(tbl_record(seq, sigma)?);

    Ok(BoundsReport {
        n,
        sigma_size: sigma,
        h1,
        h2,
        c,
        records,
    })
}

/// `|Σ| - 2n >= (h1 - 2)(h2 - 2) - 2` on the (canonically first) pair of largest multiplicities.
fn tbl_record(seq: &Sequence, sigma: usize) -> Result<Check> {
    if seq.support_size() < 2 {
        return Ok(Check::inapplicable("TBL", "two terms needed"));
    }
    let mut order: Vec<usize> = (0..seq.support_size()).collect();
    order.sort_by(|&x, &y| seq.mult(y).cmp(&seq.mult(x)).then(x.cmp(&y)));
    let (i, j) = (order[0], order[1]);
    if !is_stable_set(seq, i, j)? {
        return Ok(Check::inapplicable("TBL", "max-multiplicity pair is not stable"));
    }
    let (mi, mj) = (seq.mult(i) as i128, seq.mult(j) as i128);
    let lhs = sigma as i128 - 2 * seq.len() as i128;
    let rhs = (mi - 2) * (mj - 2) - 2;
    Ok(Check::evaluated("TBL", lhs >= rhs, lhs as f64, rhs as f64))
}
