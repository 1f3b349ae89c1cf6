//! End-to-end checks of certificate extraction, sharpness examples and Davenport values.

use zerosum::bounds::multiplicity_bounds_report;
use zerosum::davenport::{davenport_constant, noncyclic_groups_up_to};
use zerosum::families::{gen_ap_power, gen_cube, gen_two_gen};
use zerosum::structure::{check_hypotheses, extract_certificate, support_sum_set, verify_certificate};
use zerosum::sumset::{is_zero_sum_free, set_add, sum_set};
use zerosum::{GroupSpec, Limits, Sequence};

#[test]
fn cube_certificates_verify() {
    let limits = Limits::default();
    for (n, c) in [(1728u64, 3u64), (2000, 3), (4096, 4)] {
        let seq = gen_cube(1, n).unwrap().sequence;
        assert!(check_hypotheses(&seq, c, &limits).unwrap().all_hold(), "n={n} C={c}");
        let cert = extract_certificate(&seq, c, &limits).unwrap();
        let report = verify_certificate(&seq, c, &cert, &limits).unwrap();
        assert!(report.all_pass(), "n={n} C={c}: {:?}", report.records);
        assert!(report.h_below_length);

        // the translates x + P are pairwise disjoint, so |X + P| = |X||P|
        let sigma = sum_set(&seq, &limits).unwrap();
        let xp = set_add(&cert.x, &cert.p, &limits).unwrap();
        assert_eq!(xp.len(), cert.x.len() * cert.p.len());
        assert!(xp.len() <= sigma.len());
        assert!((cert.x.len() as u64) < c);

        // maximality: every y + P meets X + P
        for y in support_sum_set(&seq, &limits).unwrap().iter() {
            let shifted = set_add(
                &zerosum::SumSet::from_elements(seq.group().clone(), [y.clone()]),
                &cert.p,
                &limits,
            )
            .unwrap();
            assert!(shifted.iter().any(|z| xp.contains(z)), "y = {y}");
        }
    }
}

#[test]
fn cube_bounds_report_passes() {
    let limits = Limits::default();
    let seq = gen_cube(1, 1728).unwrap().sequence;
    let report = multiplicity_bounds_report(&seq, 3, &limits).unwrap();
    assert!(report.all_pass(), "{:?}", report.records);
    assert!(report.record("bounds").unwrap().applicable);
    assert_eq!((report.h1, report.h2), (1727, 1));
}

#[test]
fn larger_cubes_and_two_gen_fail_the_hypotheses() {
    let limits = Limits::default();
    let cube2 = gen_cube(2, 1728).unwrap().sequence;
    assert_eq!(check_hypotheses(&cube2, 3, &limits).unwrap().failed(), ["sigma_below_threshold"]);
    let two = gen_two_gen(2, 512).unwrap().sequence;
    assert_eq!(check_hypotheses(&two, 2, &limits).unwrap().failed(), ["sigma_below_threshold"]);
    assert!(extract_certificate(&two, 2, &limits).is_err());
    let two3 = gen_two_gen(3, 1728).unwrap().sequence;
    assert_eq!(check_hypotheses(&two3, 3, &limits).unwrap().failed(), ["sigma_below_threshold"]);
}

#[test]
fn product_with_small_factor_fails_the_hypotheses() {
    let limits = Limits::default();
    let g = GroupSpec::new(vec![2000, 5], 0).unwrap();
    let seq = Sequence::build(
        g.clone(),
        [(g.element(vec![1, 0]).unwrap(), 1726), (g.element(vec![0, 1]).unwrap(), 2)],
    )
    .unwrap();
    let hyp = check_hypotheses(&seq, 3, &limits).unwrap();
    assert_eq!(hyp.sigma_size, 3 * 1727);
    assert_eq!(hyp.failed(), ["sigma_below_threshold"]);
    assert!(extract_certificate(&seq, 3, &limits).is_err());
}

/// `(g · 2g ⋯ sg)^k` with `s = 2(C - 1)` has `|Σ| < Cn` and `h = n / (2C - 2)`.
#[test]
fn ap_power_sharpness() {
    let limits = Limits::default();
    let big = GroupSpec::cyclic(100_003).unwrap();
    for (c, k) in [(2u64, 5u64), (3, 4)] {
        let s = 2 * (c - 1);
        let fam = gen_ap_power(s, k).unwrap();
        let st = fam.sequence.stats();
        assert_eq!(st.n, s * k);
        assert!(fam.predicted_sigma < c * st.n);
        assert_eq!(st.h(1), st.n / (2 * c - 2));
        assert_eq!(sum_set(&fam.sequence, &limits).unwrap().len() as u64, fam.predicted_sigma);

        let cyclic = Sequence::build(
            big.clone(),
            (1..=s as i64).map(|t| (big.element(vec![t]).unwrap(), k as i64)),
        )
        .unwrap();
        assert!(is_zero_sum_free(&cyclic, &limits).unwrap());
        assert_eq!(sum_set(&cyclic, &limits).unwrap().len() as u64, fam.predicted_sigma);
    }
}

#[test]
fn cyclic_davenport_is_the_order() {
    let limits = Limits::default();
    for n in 2..=12 {
        let r = davenport_constant(&GroupSpec::cyclic(n).unwrap(), &limits).unwrap();
        assert_eq!(r.d, n);
        assert!(is_zero_sum_free(&r.witness, &limits).unwrap());
    }
}

#[test]
fn noncyclic_zero_sum_free_length_is_at_most_half_the_order() {
    let limits = Limits::default();
    for g in noncyclic_groups_up_to(36) {
        let r = davenport_constant(&g, &limits).unwrap();
        assert!(2 * r.witness.len() <= g.order().unwrap(), "{g}: {}", r.d);
    }
}

#[test]
fn rank_two_values_match_m_plus_n_minus_one() {
    let limits = Limits::default();
    for g in noncyclic_groups_up_to(36) {
        let f = g.cyclic_orders();
        if f.len() == 2 {
            assert_eq!(davenport_constant(&g, &limits).unwrap().d, f[0] + f[1] - 1, "{g}");
        }
    }
}
