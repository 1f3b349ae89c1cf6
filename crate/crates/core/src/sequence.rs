//! Finite sequences over an abelian group, stored as `a_1^{m_1} ... a_s^{m_s}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{structural, validation, Result};
use crate::group::{Element, GroupSpec};
use crate::sumset::SumSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entry {
    #[serde(rename = "elem")]
    pub term: Element,
    pub mult: u64,
}

/// An unordered multiset of group elements. Entries are kept sorted by
/// canonical element order with pairwise distinct terms and positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    group: GroupSpec,
    entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceStats {
    /// `|α|`
    pub n: u64,
    /// `|α|_2`
    pub n2: u64,
    /// `|supp α|`
    pub s: usize,
    /// Multiplicities in descending order.
    pub hk: Vec<u64>,
}

impl SequenceStats {
    /// `h_k(α)`, 1-based; zero past the support size.
    pub fn h(&self, k: usize) -> u64 {
        assert!(k >= 1, "h_k is 1-based");
        self.hk.get(k - 1).copied().unwrap_or(0)
    }
}

impl Sequence {
    /// Builds a sequence, merging repeated terms. Multiplicities must be positive.
    pub fn build<I>(group: GroupSpec, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, i64)>,
    {
        let mut merged: BTreeMap<Element, u64> = BTreeMap::new();
        for (term, mult) in raw {
            group.check(&term)?;
            if mult < 1 {
                return Err(validation(format!("multiplicity {mult} of term {term} is not positive")));
            }
            let slot = merged.entry(term).or_insert(0);
            *slot = slot
                .checked_add(mult as u64)
                .ok_or_else(|| validation("multiplicity overflow"))?;
        }
        let entries = merged
            .into_iter()
            .map(|(term, mult)| Entry { term, mult })
            .collect();
        Self::from_entries(group, entries)
    }

    /// The empty sequence ε.
    pub fn empty(group: GroupSpec) -> Self {
        Sequence {
            group,
            entries: Vec::new(),
        }
    }

    /// Entries must already be sorted, distinct, valid and positive.
    pub(crate) fn from_entries(group: GroupSpec, entries: Vec<Entry>) -> Result<Self> {
        debug_assert!(entries.windows(2).all(|w| w[0].term < w[1].term));
        debug_assert!(entries.iter().all(|e| e.mult >= 1));
        let mut n = 0u64;
        let mut n2 = 0u64;
        for e in &entries {
            n = n
                .checked_add(e.mult)
                .ok_or_else(|| validation("sequence length overflows u64"))?;
            n2 = e
                .mult
                .checked_mul(e.mult)
                .and_then(|sq| n2.checked_add(sq))
                .ok_or_else(|| validation("|α|_2 overflows u64"))?;
        }
        Ok(Sequence { group, entries })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn term(&self, i: usize) -> &Element {
        &self.entries[i].term
    }

    pub fn mult(&self, i: usize) -> u64 {
        self.entries[i].mult
    }

    /// `|α|`
    pub fn len(&self) -> u64 {
        self.entries.iter().map(|e| e.mult).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn stats(&self) -> SequenceStats {
        let mut hk: Vec<u64> = self.entries.iter().map(|e| e.mult).collect();
        hk.sort_unstable_by(|a, b| b.cmp(a));
        SequenceStats {
            n: hk.iter().sum(),
            n2: hk.iter().map(|m| m * m).sum(),
            s: hk.len(),
            hk,
        }
    }

    /// `ν_α(a)`
    pub fn multiplicity(&self, a: &Element) -> u64 {
        self.position(a).map_or(0, |i| self.entries[i].mult)
    }

    /// Index of `a` among the entries, if it is a term.
    pub fn position(&self, a: &Element) -> Option<usize> {
        self.entries.binary_search_by(|e| e.term.cmp(a)).ok()
    }

    /// `A_k`: the terms of multiplicity at least `k`.
    pub fn level_set(&self, k: u64) -> Result<SumSet> {
        if k < 1 {
            return Err(validation("level sets are indexed from 1"));
        }
        Ok(SumSet::from_elements(
            self.group.clone(),
            self.entries
                .iter()
                .filter(|e| e.mult >= k)
                .map(|e| e.term.clone()),
        ))
    }

    /// The set `supp(α)`.
    pub fn support(&self) -> SumSet {
        SumSet::from_elements(self.group.clone(), self.entries.iter().map(|e| e.term.clone()))
    }

    /// `supp(α)` viewed as a sequence with every multiplicity 1.
    pub fn support_sequence(&self) -> Sequence {
        Sequence {
            group: self.group.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| Entry {
                    term: e.term.clone(),
                    mult: 1,
                })
                .collect(),
        }
    }

    /// `σ(α)`, the sum of all terms counted with multiplicity.
    pub fn sigma(&self) -> Result<Element> {
        let mut acc = self.group.zero();
        for e in &self.entries {
            let mult = i64::try_from(e.mult).map_err(|_| validation("multiplicity exceeds i64"))?;
            let part = self.group.scale(mult, &e.term)?;
            acc = self.group.add(&acc, &part)?;
        }
        Ok(acc)
    }

    /// The product sequence `αβ`.
    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        if self.group != other.group {
            return Err(structural(format!(
                "cannot concatenate sequences over {} and {}",
                self.group, other.group
            )));
        }
        let raw = self
            .entries
            .iter()
            .chain(&other.entries)
            .map(|e| (e.term.clone(), e.mult as i64));
        Sequence::build(self.group.clone(), raw)
    }

    /// Copy with the multiplicity of entry `i` replaced. A new multiplicity of zero drops the term.
    pub(crate) fn with_mult(&self, i: usize, mult: u64) -> Result<Sequence> {
        let mut entries = self.entries.clone();
        if mult == 0 {
            entries.remove(i);
        } else {
            entries[i].mult = mult;
        }
        Self::from_entries(self.group.clone(), entries)
    }

    /// `α` with one copy of entry `i` removed.
    pub fn remove_one(&self, i: usize) -> Result<Sequence> {
        if i >= self.entries.len() {
            return Err(validation(format!("entry index {i} out of range")));
        }
        self.with_mult(i, self.entries[i].mult - 1)
    }

    /// Parses the JSON sequence format.
    pub fn from_json(text: &str) -> Result<Sequence> {
        serde_json::from_str(text).map_err(|e| validation(format!("bad sequence JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence serialization is infallible")
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceWire {
    group: GroupSpec,
    terms: Vec<WireTerm>,
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    elem: Vec<i64>,
    mult: i64,
}

impl Serialize for Sequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SequenceWire {
            group: self.group.clone(),
            terms: self
                .entries
                .iter()
                .map(|e| WireTerm {
                    elem: e.term.coords().to_vec(),
                    mult: e.mult as i64,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = SequenceWire::deserialize(d)?;
        let group = wire.group;
        let mut raw = Vec::with_capacity(wire.terms.len());
        for t in wire.terms {
            let elem = group.element(t.elem).map_err(D::Error::custom)?;
            raw.push((elem, t.mult));
        }
        Sequence::build(group, raw).map_err(D::Error::custom)
    }
}
