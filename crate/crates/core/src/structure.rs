//! Structure certificates for zero-sum-free sequences with few subsequence sums.
//!
//! For an integer `C >= 2` and a zero-sum-free `α` with `n = |α| >= (4C)³` and
//! `|Σ(α)| < Cn - C²√(6n)`, extraction stabilizes `α`, takes a term `a` of
//! maximal multiplicity `h'` in the stable sequence, sets `h = h' - 1` and
//! `P = {a, 2a, ..., ha}`, and greedily grows `X ⊆ Σ(supp α)` from `{0}` so
//! that the translates `x + P` stay pairwise disjoint.
//!
//! [`verify_certificate`] rechecks every claim directly from `α` and the
//! certificate, without reusing the extraction path.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bounds::{below_theorem_threshold, theorem_threshold};
use crate::error::{resource, validation, Result};
use crate::group::{Element, Order};
use crate::limits::Limits;
use crate::report::{sqrt_gt, Check};
use crate::sequence::Sequence;
use crate::sumset::{progression, set_add, subsequence_sums, sum_set, SumSet};
use crate::transfer::{stabilize, StabilizationTrace};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesesReport {
    pub n: u64,
    pub sigma_size: usize,
    pub threshold: f64,
    pub records: Vec<Check>,
}

impl HypothesesReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds == Some(true))
    }

    pub fn failed(&self) -> Vec<&str> {
        self.records
            .iter()
            .filter(|r| r.holds != Some(true))
            .map(|r| r.name.as_str())
            .collect()
    }
}

/// Evaluates each hypothesis separately; failures are report entries, not errors.
pub fn check_hypotheses(seq: &Sequence, c: u64, limits: &Limits) -> Result<HypothesesReport> {
    let sums = subsequence_sums(seq, limits)?;
    let n = seq.len();
    let sigma = sums.sigma.len();
    let min_len = (4 * c as u128).pow(3);
    let records = vec![
        Check::evaluated("C_at_least_2", c >= 2, c as f64, 2.0),
        Check::evaluated(
            "zero_sum_free",
            sums.zero_sum_free,
            sums.zero_sum_free as u8 as f64,
            1.0,
        ),
        Check::evaluated("length", n as u128 >= min_len, n as f64, min_len as f64),
        Check::evaluated(
            "sigma_below_threshold",
            below_theorem_threshold(n, sigma, c),
            sigma as f64,
            theorem_threshold(n, c),
        ),
    ];
    Ok(HypothesesReport {
        n,
        sigma_size: sigma,
        threshold: theorem_threshold(n, c),
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureCertificate {
    pub a: Element,
    pub h: u64,
    #[serde(skip)]
    pub p: SumSet,
    #[serde(rename = "X")]
    pub x: SumSet,
    pub stabilized: Sequence,
    pub trace: StabilizationTrace,
}

/// The part of a certificate a third party needs to supply for verification.
#[derive(Debug, Clone, Deserialize)]
pub struct CertificateClaim {
    pub a: Vec<i64>,
    pub h: u64,
    #[serde(rename = "X")]
    pub x: Vec<Vec<i64>>,
}

/// `Σ(supp α)`, guarded by the support-size cap.
pub fn support_sum_set(seq: &Sequence, limits: &Limits) -> Result<SumSet> {
    if seq.support_size() > limits.max_support {
        return Err(resource(format!(
            "support size {} exceeds the cap of {} for Σ(supp α)",
            seq.support_size(),
            limits.max_support
        )));
    }
    sum_set(&seq.support_sequence(), limits)
}

pub fn extract_certificate(seq: &Sequence, c: u64, limits: &Limits) -> Result<StructureCertificate> {
    let hyp = check_hypotheses(seq, c, limits)?;
    if !hyp.all_hold() {
        return Err(validation(format!(
            "hypotheses fail: {}",
            hyp.failed().join(", ")
        )));
    }
    let support_sums = support_sum_set(seq, limits)?;
    let (stabilized, trace) = stabilize(seq, limits)?;
    let h_top = stabilized.stats().h(1);
    // ties go to the canonically first term
    let top = (0..stabilized.support_size())
        .find(|&i| stabilized.mult(i) == h_top)
        .expect("nonempty stable sequence");
    let a = stabilized.term(top).clone();
    let h = h_top - 1;
    let group = seq.group();
    let p = progression(group, &a, 1, h as i64)?;

    let mut x = SumSet::zero(group.clone());
    let mut occupied: HashSet<Element> = p.iter().cloned().collect();
    for g in support_sums.iter() {
        if g.is_zero() {
            continue;
        }
        let shifted: Vec<Element> = p.iter().map(|q| group.add_unchecked(g, q)).collect();
        if shifted.iter().all(|y| !occupied.contains(y)) {
            occupied.extend(shifted);
            x.insert(g.clone());
        }
    }

    Ok(StructureCertificate {
        a,
        h,
        p,
        x,
        stabilized,
        trace,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<Check>,
    /// `h < n`; reported but not part of the verdict.
    pub h_below_length: bool,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.holds == Some(true))
    }

    pub fn record(&self, name: &str) -> Option<&Check> {
        self.records.iter().find(|r| r.name == name)
    }
}

fn verdict(name: &str, counterexample: Option<&Element>, lhs: f64, rhs: f64) -> Check {
    let check = Check::evaluated(name, counterexample.is_none(), lhs, rhs);
    match counterexample {
        Some(w) => check.with_detail(format!("counterexample {w}")),
        None => check,
    }
}

impl StructureCertificate {
    /// Rebuilds a certificate from a claim, checking shape only.
    pub fn from_claim(seq: &Sequence, claim: &CertificateClaim) -> Result<StructureCertificate> {
        let group = seq.group();
        let a = group.element(claim.a.clone())?;
        if claim.h == 0 || claim.h > i64::MAX as u64 {
            return Err(validation("certificate h must be a positive integer"));
        }
        let p = progression(group, &a, 1, claim.h as i64)?;
        let mut x = SumSet::new(group.clone());
        for coords in &claim.x {
            x.insert(group.element(coords.clone())?);
        }
        Ok(StructureCertificate {
            a,
            h: claim.h,
            p,
            x,
            stabilized: seq.clone(),
            trace: StabilizationTrace {
                steps: Vec::new(),
                initial: seq.stats(),
                final_stats: seq.stats(),
            },
        })
    }
}

/// Rechecks every structural claim about `cert` from scratch.
pub fn verify_certificate(
    seq: &Sequence,
    c: u64,
    cert: &StructureCertificate,
    limits: &Limits,
) -> Result<VerificationReport> {
    let group = seq.group();
    group.check(&cert.a)?;
    if cert.h == 0 || cert.h > i64::MAX as u64 {
        return Err(validation("certificate h must be a positive integer"));
    }
    if cert.x.group() != group || cert.p.group() != group {
        return Err(validation("certificate sets live in a different group"));
    }
    // P is recomputed, never trusted
    let p = progression(group, &cert.a, 1, cert.h as i64)?;
    if p != cert.p {
        return Err(validation("certificate P is not {a, 2a, ..., ha}"));
    }
    let n = seq.len();
    let h = cert.h;
    let mut records = Vec::new();

    // h > n - C√(6n)  ⇔  √(6n C²) > n - h
    let h_ok = sqrt_gt(
        6 * n as u128 * c as u128 * c as u128,
        n as i128 - h as i128,
    );
    records.push(Check::evaluated(
        "h_lower_bound",
        h_ok,
        h as f64,
        n as f64 - c as f64 * (6.0 * n as f64).sqrt(),
    ));

    let in_support = seq.position(&cert.a).is_some();
    records.push(verdict(
        "a_in_support",
        (!in_support).then_some(&cert.a),
        in_support as u8 as f64,
        1.0,
    ));

    let ord = group.element_order(&cert.a)?;
    let ord_value = match ord {
        Order::Finite(o) => o as f64,
        Order::Infinite => f64::INFINITY,
    };
    records.push(
        Check::evaluated("order_bound", ord.exceeds(h + 1), ord_value, (h + 1) as f64)
            .with_detail(format!("ord(a) = {ord}")),
    );

    let support_sums = support_sum_set(seq, limits)?;
    let proper = subsequence_sums(seq, limits)?.proper();
    let shifted = set_add(&support_sums, &p, limits)?;
    records.push(verdict(
        "translate_inclusion",
        shifted.first_missing_from(&proper),
        shifted.len() as f64,
        proper.len() as f64,
    ));

    records.push(Check::evaluated(
        "X_size",
        (cert.x.len() as u128) < c as u128,
        cert.x.len() as f64,
        c as f64 - 1.0,
    ));

    let zero = group.zero();
    let membership_witness = if !cert.x.contains(&zero) {
        Some(&zero)
    } else {
        cert.x.first_missing_from(&support_sums)
    };
    records.push(verdict(
        "X_membership",
        membership_witness,
        cert.x.len() as f64,
        support_sums.len() as f64,
    ));

    // P - P = {t·a : |t| <= h - 1}
    let diff = progression(group, &cert.a, -(h as i64 - 1), h as i64 - 1)?;
    let cover = set_add(&cert.x, &diff, limits)?;
    records.push(verdict(
        "covering",
        support_sums.first_missing_from(&cover),
        support_sums.len() as f64,
        cover.len() as f64,
    ));

    // each term as x + t·a with x ∈ X, |t| <= h - 1, by direct search
    let mut undecomposed = None;
    'terms: for e in seq.entries() {
        for x in cert.x.iter() {
            let target = group.sub(&e.term, x)?;
            let mut probe = group.scale(-(h as i64 - 1), &cert.a)?;
            for _ in 0..(2 * h - 1) {
                if probe == target {
                    continue 'terms;
                }
                probe = group.add(&probe, &cert.a)?;
            }
        }
        undecomposed = Some(&e.term);
        break;
    }
    records.push(verdict(
        "term_decomposition",
        undecomposed,
        seq.support_size() as f64,
        seq.support_size() as f64,
    ));

    let mut seen: HashSet<Element> = HashSet::new();
    let mut clash = None;
    'outer: for x in cert.x.iter() {
        for q in p.iter() {
            let y = group.add(x, q)?;
            if !seen.insert(y.clone()) {
                clash = Some(y);
                break 'outer;
            }
        }
    }
    records.push(verdict(
        "disjoint_translates",
        clash.as_ref(),
        seen.len() as f64,
        (cert.x.len() * p.len()) as f64,
    ));

    Ok(VerificationReport {
        records,
        h_below_length: h < n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::group::GroupSpec;

    fn cube1(n: i64) -> Sequence {
        let g = GroupSpec::free(2).unwrap();
        Sequence::build(
            g.clone(),
            [
                (g.element(vec![1, 0]).unwrap(), n - 1),
                (g.element(vec![0, 1]).unwrap(), 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn hypotheses_examples() {
        let l = Limits::default();
        let r = check_hypotheses(&cube1(1728), 3, &l).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.sigma_size, 3456);
        assert!((r.threshold - 4267.58).abs() < 0.01);

        let z5 = GroupSpec::cyclic(5).unwrap();
        let four = Sequence::build(z5.clone(), [(z5.element(vec![1]).unwrap(), 4)]).unwrap();
        assert_eq!(check_hypotheses(&four, 2, &l).unwrap().failed(), vec!["length", "sigma_below_threshold"]);
        let five = Sequence::build(z5.clone(), [(z5.element(vec![1]).unwrap(), 5)]).unwrap();
        assert!(check_hypotheses(&five, 2, &l).unwrap().failed().contains(&"zero_sum_free"));
    }

    #[test]
    fn cube_certificate() {
        let l = Limits::default();
        let alpha = cube1(1728);
        let cert = extract_certificate(&alpha, 3, &l).unwrap();
        let g = alpha.group();
        assert_eq!(cert.a, g.element(vec![1, 0]).unwrap());
        assert_eq!(cert.h, 1726);
        assert_eq!(cert.x.coords(), vec![vec![0, 0], vec![0, 1]]);
        assert!(cert.trace.steps.is_empty());
        let report = verify_certificate(&alpha, 3, &cert, &l).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert!(report.h_below_length);
    }

    #[test]
    fn tampered_certificates_fail() {
        let l = Limits::default();
        let alpha = cube1(1728);
        let g = alpha.group().clone();
        let cert = extract_certificate(&alpha, 3, &l).unwrap();

        let mut narrow = cert.clone();
        narrow.x = SumSet::zero(g.clone());
        let r = verify_certificate(&alpha, 3, &narrow, &l).unwrap();
        let cover = r.record("covering").unwrap();
        assert_eq!(cover.holds, Some(false));
        assert_eq!(cover.detail.as_deref(), Some("counterexample (0,1)"));

        let mut long = cert.clone();
        long.h = 1728;
        long.p = progression(&g, &long.a, 1, 1728).unwrap();
        let r = verify_certificate(&alpha, 3, &long, &l).unwrap();
        assert_eq!(r.record("h_lower_bound").unwrap().holds, Some(true));
        assert_eq!(r.record("translate_inclusion").unwrap().holds, Some(false));
        assert!(!r.h_below_length);

        let mut bad_p = cert;
        bad_p.p = SumSet::zero(g);
        assert!(matches!(verify_certificate(&alpha, 3, &bad_p, &l), Err(Error::Validation(_))));
    }

    #[test]
    fn extraction_requires_hypotheses() {
        let l = Limits::default();
        assert!(matches!(extract_certificate(&cube1(100), 3, &l), Err(Error::Validation(_))));
    }

    #[test]
    fn claim_round_trip() {
        let l = Limits::default();
        let alpha = cube1(1728);
        let claim: CertificateClaim =
            serde_json::from_str(r#"{"a":[1,0],"h":1726,"X":[[0,0],[0,1]]}"#).unwrap();
        let cert = StructureCertificate::from_claim(&alpha, &claim).unwrap();
        assert!(verify_certificate(&alpha, 3, &cert, &l).unwrap().all_pass());
        let bad: CertificateClaim = serde_json::from_str(r#"{"a":[1],"h":3,"X":[]}"#).unwrap();
        assert!(StructureCertificate::from_claim(&alpha, &bad).is_err());
    }
}
