//! Finite sets of group elements and the subsequence-sum sets `Σ(α)`, `Σ*(α)`.
//!
//! `Σ(α)` is built one entry at a time: starting from `{0}`, each entry
//! `a^m` replaces `S` by `S + {0, a, ..., ma}`. Over a single cyclic factor
//! `Z/n` the set lives in a bit array and each step costs `O(log m)`
//! rotations; elsewhere a hash set is walked along each coset line.

use std::collections::{BTreeSet, HashSet};

use serde::{Serialize, Serializer};

use crate::bits::CyclicBits;
use crate::error::{resource, structural, validation, Result};
use crate::group::{Element, GroupSpec};
use crate::limits::Limits;
use crate::sequence::Sequence;

/// Largest modulus handled by the bit-array path (64 MiB of bits).
const MAX_BITSET_MODULUS: u64 = 1 << 29;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSet {
    group: GroupSpec,
    elems: BTreeSet<Element>,
}

impl SumSet {
    pub fn new(group: GroupSpec) -> Self {
        SumSet {
            group,
            elems: BTreeSet::new(),
        }
    }

    pub fn from_elements(group: GroupSpec, elems: impl IntoIterator<Item = Element>) -> Self {
        SumSet {
            group,
            elems: elems.into_iter().collect(),
        }
    }

    pub fn zero(group: GroupSpec) -> Self {
        let z = group.zero();
        Self::from_elements(group, [z])
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elems.contains(x)
    }

    /// Elements in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Element> + '_ {
        self.elems.iter()
    }

    pub fn insert(&mut self, x: Element) -> bool {
        debug_assert!(self.group.contains(&x));
        self.elems.insert(x)
    }

    pub fn remove(&mut self, x: &Element) -> bool {
        self.elems.remove(x)
    }

    pub fn is_subset(&self, other: &SumSet) -> bool {
        self.elems.is_subset(&other.elems)
    }

    /// First element (canonical order) of `self` that is missing from `other`.
    pub fn first_missing_from(&self, other: &SumSet) -> Option<&Element> {
        self.elems.iter().find(|x| !other.contains(x))
    }

    pub fn intersection(&self, other: &SumSet) -> SumSet {
        SumSet {
            group: self.group.clone(),
            elems: self.elems.intersection(&other.elems).cloned().collect(),
        }
    }

    pub fn coords(&self) -> Vec<Vec<i64>> {
        self.elems.iter().map(|e| e.coords().to_vec()).collect()
    }
}

impl Serialize for SumSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elems.iter())
    }
}

/// `Σ(α)` together with whether some nonempty subsequence sums to zero.
#[derive(Debug, Clone)]
pub struct SubsequenceSums {
    pub sigma: SumSet,
    pub zero_sum_free: bool,
}

impl SubsequenceSums {
    /// `Σ*(α)`: equal to `Σ(α) ∖ {0}` exactly when `α` is zero-sum-free.
    pub fn proper(&self) -> SumSet {
        let mut out = self.sigma.clone();
        if self.zero_sum_free {
            out.remove(&self.sigma.group.zero());
        }
        out
    }
}

fn cap_error(limit: usize) -> crate::error::Error {
    resource(format!("sum set exceeds the cap of {limit} elements"))
}

pub fn subsequence_sums(seq: &Sequence, limits: &Limits) -> Result<SubsequenceSums> {
    let group = seq.group();
    match group.single_cyclic() {
        Some(n) if n <= MAX_BITSET_MODULUS => cyclic_sums(seq, n as usize, limits),
        _ => general_sums(seq, limits),
    }
}

fn cyclic_sums(seq: &Sequence, n: usize, limits: &Limits) -> Result<SubsequenceSums> {
    let mut bits = CyclicBits::new(n);
    bits.set(0);
    let mut zero_sum_free = true;
    for e in seq.entries() {
        let a = e.term.coords()[0] as usize;
        let m = e.mult;
        if zero_sum_free {
            // a new zero sum appears iff -t*a is already in S for some 1 <= t <= m
            let mut neg = 0usize;
            let steps = m.min(n as u64);
            for _ in 0..steps {
                neg = (neg + n - a) % n;
                if bits.get(neg) {
                    zero_sum_free = false;
                    break;
                }
            }
        }
        // invariant: bits = S + {0, a, ..., covered * a}
        let mut covered = 0u64;
        while covered < m {
            let step = (covered + 1).min(m - covered);
            let shift = ((step as u128 * a as u128) % n as u128) as usize;
            bits.or_rotated(shift);
            covered += step;
            if bits.count() == n {
                break;
            }
        }
        if bits.count() > limits.max_sumset {
            return Err(cap_error(limits.max_sumset));
        }
    }
    let group = seq.group().clone();
    let elems = bits
        .iter_ones()
        .map(|i| group.element_at(i))
        .collect::<BTreeSet<_>>();
    Ok(SubsequenceSums {
        sigma: SumSet { group, elems },
        zero_sum_free,
    })
}

fn general_sums(seq: &Sequence, limits: &Limits) -> Result<SubsequenceSums> {
    let group = seq.group();
    let mut current: HashSet<Element> = HashSet::from([group.zero()]);
    let mut zero_sum_free = true;
    for e in seq.entries() {
        let a = &e.term;
        let m = e.mult;
        if zero_sum_free {
            let neg_a = group.neg(a)?;
            let mut probe = group.zero();
            for _ in 0..m {
                probe = group.add_unchecked(&probe, &neg_a);
                if current.contains(&probe) {
                    zero_sum_free = false;
                    break;
                }
                if probe.is_zero() {
                    break;
                }
            }
        }
        // Walk x, x+a, ..., x+ma from every x, stopping at the first point
        // already in S: that point's own walk covers the rest of the line.
        let mut next = current.clone();
        for x in &current {
            let mut y = x.clone();
            for _ in 0..m {
                y = group.add_unchecked(&y, a);
                if current.contains(&y) {
                    break;
                }
                next.insert(y.clone());
            }
            if next.len() > limits.max_sumset {
                return Err(cap_error(limits.max_sumset));
            }
        }
        current = next;
    }
    Ok(SubsequenceSums {
        sigma: SumSet::from_elements(group.clone(), current),
        zero_sum_free,
    })
}

/// `Σ(α)`, including the empty subsequence.
pub fn sum_set(seq: &Sequence, limits: &Limits) -> Result<SumSet> {
    Ok(subsequence_sums(seq, limits)?.sigma)
}

/// `Σ*(α)`, nonempty subsequences only.
pub fn proper_sum_set(seq: &Sequence, limits: &Limits) -> Result<SumSet> {
    Ok(subsequence_sums(seq, limits)?.proper())
}

pub fn is_zero_sum_free(seq: &Sequence, limits: &Limits) -> Result<bool> {
    Ok(subsequence_sums(seq, limits)?.zero_sum_free)
}

/// Nonempty, `σ(α) = 0`, and removing one copy of any term leaves a zero-sum-free sequence.
pub fn is_minimal_zero_sum(seq: &Sequence, limits: &Limits) -> Result<bool> {
    if seq.is_empty() || !seq.sigma()?.is_zero() {
        return Ok(false);
    }
    for i in 0..seq.support_size() {
        if !is_zero_sum_free(&seq.remove_one(i)?, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_group(a: &SumSet, b: &SumSet) -> Result<()> {
    if a.group != b.group {
        return Err(structural(format!(
            "sets live in different groups ({} and {})",
            a.group, b.group
        )));
    }
    Ok(())
}

/// `A + B`.
pub fn set_add(a: &SumSet, b: &SumSet, limits: &Limits) -> Result<SumSet> {
    same_group(a, b)?;
    let mut elems = HashSet::new();
    for x in &a.elems {
        for y in &b.elems {
            elems.insert(a.group.add_unchecked(x, y));
        }
        if elems.len() > limits.max_sumset {
            return Err(cap_error(limits.max_sumset));
        }
    }
    Ok(SumSet::from_elements(a.group.clone(), elems))
}

/// `A - B`.
pub fn set_sub(a: &SumSet, b: &SumSet, limits: &Limits) -> Result<SumSet> {
    same_group(a, b)?;
    let neg_b = SumSet::from_elements(
        b.group.clone(),
        b.elems.iter().map(|y| b.group.neg(y)).collect::<Result<Vec<_>>>()?,
    );
    set_add(a, &neg_b, limits)
}

/// `{lo·a, (lo+1)·a, ..., hi·a}` as a set.
pub fn progression(group: &GroupSpec, a: &Element, lo: i64, hi: i64) -> Result<SumSet> {
    if lo > hi {
        return Err(validation(format!("empty progression range [{lo}, {hi}]")));
    }
    let mut steps = (hi as i128 - lo as i128 + 1) as u128;
    if let Some(o) = group.element_order(a)?.finite() {
        steps = steps.min(o as u128);
    }
    let mut x = group.scale(lo, a)?;
    let mut elems = BTreeSet::new();
    for _ in 0..steps {
        let next = group.add(&x, a)?;
        elems.insert(x);
        x = next;
    }
    Ok(SumSet {
        group: group.clone(),
        elems,
    })
}
