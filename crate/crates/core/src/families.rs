//! Extremal sequence families with closed-form `|Σ(α)|`.
//!
//! All families live in free groups `Z^d`, so "independent" and "of
//! sufficiently large order" hold exactly.

use serde::Serialize;

use crate::error::{validation, Result};
use crate::group::GroupSpec;
use crate::sequence::Sequence;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub sequence: Sequence,
    pub predicted_sigma: u64,
}

fn too_big() -> crate::error::Error {
    validation("predicted |Σ| overflows u64")
}

fn as_mult(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| validation("multiplicity exceeds i64"))
}

/// `e_0^{n-s} e_1 ⋯ e_s` over `Z^{s+1}`, with `|Σ| = 2^s (n - s + 1)`.
pub fn gen_cube(s: u64, n: u64) -> Result<Family> {
    if s < 1 || n <= s {
        return Err(validation("cube family needs s >= 1 and n > s"));
    }
    let rank = usize::try_from(s + 1).map_err(|_| validation("s too large"))?;
    let group = GroupSpec::free(rank)?;
    let mut raw = vec![(group.basis(0)?, as_mult(n - s)?)];
    for i in 1..rank {
        raw.push((group.basis(i)?, 1));
    }
    let predicted = 1u64
        .checked_shl(u32::try_from(s).map_err(|_| too_big())?)
        .filter(|_| s < 64)
        .and_then(|p| p.checked_mul(n - s + 1))
        .ok_or_else(too_big)?;
    Ok(Family {
        sequence: Sequence::build(group, raw)?,
        predicted_sigma: predicted,
    })
}

/// `g_1^{n-C+1} g_2^{C-1}` over `Z^2`, with `|Σ| = Cn - (C-1)² + 1`.
pub fn gen_two_gen(c: u64, n: u64) -> Result<Family> {
    if c < 2 || n < c {
        return Err(validation("two-generator family needs C >= 2 and n > C - 1"));
    }
    let group = GroupSpec::free(2)?;
    let raw = vec![
        (group.basis(0)?, as_mult(n - c + 1)?),
        (group.basis(1)?, as_mult(c - 1)?),
    ];
    let predicted = c
        .checked_mul(n)
        .and_then(|cn| cn.checked_add(1))
        .and_then(|x| x.checked_sub((c - 1) * (c - 1)))
        .ok_or_else(too_big)?;
    Ok(Family {
        sequence: Sequence::build(group, raw)?,
        predicted_sigma: predicted,
    })
}

/// `(g · 2g ⋯ sg)^k` over `Z` with `g = 1`, with `|Σ| = 1 + s(s+1)k/2`.
pub fn gen_ap_power(s: u64, k: u64) -> Result<Family> {
    if s < 1 || k < 1 {
        return Err(validation("progression-power family needs s >= 1 and k >= 1"));
    }
    let group = GroupSpec::free(1)?;
    let mut raw = Vec::new();
    for t in 1..=s {
        raw.push((group.element(vec![as_mult(t)?])?, as_mult(k)?));
    }
    let predicted = s
        .checked_mul(s + 1)
        .map(|x| x / 2)
        .and_then(|x| x.checked_mul(k))
        .and_then(|x| x.checked_add(1))
        .ok_or_else(too_big)?;
    Ok(Family {
        sequence: Sequence::build(group, raw)?,
        predicted_sigma: predicted,
    })
}
