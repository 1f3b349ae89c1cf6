//! Davenport constants of small finite groups by exhaustive search, and the
//! Olson–White lower bound check.
//!
//! The search walks multisets of nonzero elements in nondecreasing canonical
//! order. A branch dies as soon as its sum set would contain a nonempty zero
//! sum, which is detected as `-g ∈ Σ` before appending `g`. Sum sets are bit
//! masks over the group (at most 128 elements), and the best extension from a
//! given `(Σ, next candidate)` state is memoized.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{validation, Result};
use crate::group::{Element, GroupSpec};
use crate::limits::Limits;
use crate::report::Check;
use crate::sequence::Sequence;
use crate::sumset::{progression, subsequence_sums, SumSet};

/// Width of the bit masks used by the search.
pub const MAX_SEARCH_ORDER: u64 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DavenportResult {
    pub d: u64,
    /// A zero-sum-free sequence of length `d - 1`.
    pub witness: Sequence,
}

struct Search {
    order: usize,
    /// `plus[g][x]` is the index of `x + g`.
    plus: Vec<Vec<u8>>,
    neg: Vec<u8>,
    memo: HashMap<(u128, u8), u8>,
}

impl Search {
    fn translate(&self, mask: u128, g: usize) -> u128 {
        let mut out = 0u128;
        let mut m = mask;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1u128 << self.plus[g][x];
        }
        out
    }

    fn extend(&self, sums: u128, g: usize) -> Option<u128> {
        if sums >> self.neg[g] & 1 == 1 {
            None
        } else {
            Some(sums | self.translate(sums, g))
        }
    }

    /// Longest zero-sum-free extension using candidates `start..order`.
    fn best(&mut self, sums: u128, start: usize) -> u8 {
        if let Some(&v) = self.memo.get(&(sums, start as u8)) {
            return v;
        }
        let mut best = 0u8;
        for g in start.max(1)..self.order {
            if let Some(next) = self.extend(sums, g) {
                best = best.max(1 + self.best(next, g));
            }
        }
        self.memo.insert((sums, start as u8), best);
        best
    }
}

pub fn davenport_constant(group: &GroupSpec, limits: &Limits) -> Result<DavenportResult> {
    let order = group
        .order()
        .ok_or_else(|| validation(format!("{group} is not finite")))?;
    if order > limits.davenport_max_order {
        return Err(validation(format!(
            "|G| = {order} exceeds the Davenport search cap {}",
            limits.davenport_max_order
        )));
    }
    if order > MAX_SEARCH_ORDER {
        return Err(validation(format!(
            "|G| = {order} exceeds the search width {MAX_SEARCH_ORDER}"
        )));
    }
    let elems = group.elements()?;
    let n = elems.len();
    let mut plus = vec![vec![0u8; n]; n];
    for (gi, g) in elems.iter().enumerate() {
        for (xi, x) in elems.iter().enumerate() {
            plus[gi][xi] = group.index_of(&group.add(g, x)?) as u8;
        }
    }
    let neg = elems
        .iter()
        .map(|g| group.neg(g).map(|ng| group.index_of(&ng) as u8))
        .collect::<Result<Vec<_>>>()?;
    let mut search = Search {
        order: n,
        plus,
        neg,
        memo: HashMap::new(),
    };
    let root = 1u128;
    let longest = search.best(root, 1);

    // walk the memo back down to recover one optimal sequence
    let mut terms: Vec<(Element, i64)> = Vec::new();
    let (mut sums, mut start, mut left) = (root, 1usize, longest);
    while left > 0 {
        let step = (start..n).find_map(|g| {
            let next = search.extend(sums, g)?;
            (1 + search.best(next, g) == left).then_some((g, next))
        });
        let Some((g, next)) = step else {
            return Err(crate::error::Error::Internal(
                "Davenport witness reconstruction lost the optimum".into(),
            ));
        };
        terms.push((elems[g].clone(), 1));
        sums = next;
        start = g;
        left -= 1;
    }
    Ok(DavenportResult {
        d: longest as u64 + 1,
        witness: Sequence::build(group.clone(), terms)?,
    })
}

/// All noncyclic finite abelian groups of order at most `max_order`, one per
/// isomorphism class, in invariant-factor form `Z/d1 x ... x Z/dk` with `d1 | d2 | ...`, `k >= 2`.
pub fn noncyclic_groups_up_to(max_order: u64) -> Vec<GroupSpec> {
    fn grow(factors: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        if factors.len() >= 2 {
            out.push(factors.clone());
        }
        let last = *factors.last().unwrap_or(&1);
        let mut next = if factors.is_empty() { 2 } else { last };
        while product * next <= max {
            if next % last == 0 {
                factors.push(next);
                grow(factors, product * next, max, out);
                factors.pop();
            }
            next += if factors.is_empty() { 1 } else { last };
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 1, max_order, &mut out);
    out.sort_by_key(|f| (f.iter().product::<u64>(), f.clone()));
    out.into_iter()
        .map(|f| GroupSpec::new(f, 0).expect("invariant factors are >= 2"))
        .collect()
}

/// The subgroup generated by `supp(α)` in a finite group.
pub fn generated_subgroup(seq: &Sequence, limits: &Limits) -> Result<SumSet> {
    let group = seq.group();
    if !group.is_finite() {
        return Err(validation("generated subgroup needs a finite group"));
    }
    let mut h = SumSet::zero(group.clone());
    for e in seq.entries() {
        let ord = group.element_order(&e.term)?.finite().expect("finite group");
        let cyclic = progression(group, &e.term, 0, ord as i64 - 1)?;
        h = crate::sumset::set_add(&h, &cyclic, limits)?;
    }
    Ok(h)
}

/// `|Σ(α)| >= 2|α|` whenever `⟨supp α⟩` is not cyclic.
pub fn check_olson_white(seq: &Sequence, limits: &Limits) -> Result<Check> {
    if !seq.group().is_finite() {
        return Err(validation("Olson–White check needs a finite group"));
    }
    let sums = subsequence_sums(seq, limits)?;
    if !sums.zero_sum_free {
        return Err(validation("sequence is not zero-sum-free"));
    }
    let h = generated_subgroup(seq, limits)?;
    let group = seq.group();
    let mut cyclic = false;
    for x in h.iter() {
        if group.element_order(x)?.finite() == Some(h.len() as u64) {
            cyclic = true;
            break;
        }
    }
    if cyclic {
        return Ok(Check::inapplicable("olson_white", "generated subgroup is cyclic"));
    }
    let sigma = sums.sigma.len() as u64;
    let n = seq.len();
    Ok(Check::evaluated(
        "olson_white",
        sigma >= 2 * n,
        sigma as f64,
        2.0 * n as f64,
    )
    .with_detail(format!("|⟨supp α⟩| = {}", h.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sumset::is_zero_sum_free;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        let l = Limits::default();
        assert_eq!(davenport_constant(&g("Z/6"), &l).unwrap().d, 6);
        assert_eq!(davenport_constant(&g("Z/2 x Z/2"), &l).unwrap().d, 3);
        assert_eq!(davenport_constant(&g("Z/3 x Z/3"), &l).unwrap().d, 5);
    }

    #[test]
    fn witness_is_zero_sum_free_of_length_d_minus_1() {
        let l = Limits::default();
        for spec in ["Z/7", "Z/2 x Z/4", "Z/2 x Z/2 x Z/2", "Z/3 x Z/6"] {
            let r = davenport_constant(&g(spec), &l).unwrap();
            assert_eq!(r.witness.len(), r.d - 1);
            assert!(is_zero_sum_free(&r.witness, &l).unwrap());
        }
    }

    #[test]
    fn rejects_infinite_and_oversized() {
        let l = Limits::default();
        assert!(davenport_constant(&g("Z"), &l).is_err());
        assert!(davenport_constant(&g("Z/65"), &l).is_err());
    }

    #[test]
    fn noncyclic_group_list() {
        let names: Vec<String> = noncyclic_groups_up_to(16).iter().map(|g| g.to_string()).collect();
        assert_eq!(
            names,
            vec![
                "Z/2 x Z/2",
                "Z/2 x Z/2 x Z/2",
                "Z/2 x Z/4",
                "Z/3 x Z/3",
                "Z/2 x Z/6",
                "Z/2 x Z/2 x Z/2 x Z/2",
                "Z/2 x Z/2 x Z/4",
                "Z/2 x Z/8",
                "Z/4 x Z/4",
            ]
        );
    }

    fn seq(group: &GroupSpec, terms: &[(&[i64], i64)]) -> Sequence {
        Sequence::build(
            group.clone(),
            terms.iter().map(|(c, m)| (group.element(c.to_vec()).unwrap(), *m)),
        )
        .unwrap()
    }

    #[test]
    fn olson_white_examples() {
        let l = Limits::default();
        let z33 = g("Z/3 x Z/3");
        let r = check_olson_white(&seq(&z33, &[(&[1, 0], 2), (&[0, 1], 1)]), &l).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Some(6.0), Some(6.0), Some(true)));
        let z7 = g("Z/7");
        assert!(!check_olson_white(&seq(&z7, &[(&[1], 3)]), &l).unwrap().applicable);
        let z23 = g("Z/2 x Z/3");
        assert!(!check_olson_white(&seq(&z23, &[(&[1, 0], 1), (&[0, 1], 1)]), &l).unwrap().applicable);
        assert!(check_olson_white(&seq(&z7, &[(&[1], 7)]), &l).is_err());
    }
}
