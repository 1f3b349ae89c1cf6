//! Seeded random groups and sequences for randomized test suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::group::{Element, GroupSpec};
use crate::limits::Limits;
use crate::oracle::enumeration_size;
use crate::sequence::Sequence;
use crate::sumset::is_zero_sum_free;

/// A finite group of order at most `max_order` (one to three cyclic factors),
/// or, with probability `free_prob`, `Z^r` with `r` in `1..=2`.
pub fn random_group<R: Rng>(rng: &mut R, max_order: u64, free_prob: f64) -> GroupSpec {
    if rng.gen_bool(free_prob) {
        return GroupSpec::free(rng.gen_range(1..=2)).expect("rank >= 1");
    }
    loop {
        let k = rng.gen_range(1..=3);
        let factors: Vec<u64> = (0..k).map(|_| rng.gen_range(2..=max_order.max(2))).collect();
        if factors.iter().product::<u64>() <= max_order {
            return GroupSpec::new(factors, 0).expect("factors >= 2");
        }
    }
}

pub fn random_element<R: Rng>(rng: &mut R, group: &GroupSpec, free_span: i64) -> Element {
    let mut coords: Vec<i64> = group
        .cyclic_orders()
        .iter()
        .map(|&n| rng.gen_range(0..n as i64))
        .collect();
    coords.extend((0..group.free_rank()).map(|_| rng.gen_range(-free_span..=free_span)));
    group.element(coords).expect("coordinates match rank")
}

/// Up to `max_support` distinct terms with random multiplicities, keeping
/// `∏(m_i + 1) <= max_enumeration`.
pub fn random_sequence<R: Rng>(
    rng: &mut R,
    group: &GroupSpec,
    max_support: usize,
    max_mult: u64,
    max_enumeration: u64,
) -> Sequence {
    let target = rng.gen_range(0..=max_support);
    let mut raw: Vec<(Element, i64)> = Vec::new();
    let mut budget = 1u64;
    for _ in 0..target * 4 {
        if raw.len() == target {
            break;
        }
        let x = random_element(rng, group, 6);
        if raw.iter().any(|(y, _)| *y == x) {
            continue;
        }
        let m = rng.gen_range(1..=max_mult);
        if budget * (m + 1) > max_enumeration {
            continue;
        }
        budget *= m + 1;
        raw.push((x, m as i64));
    }
    Sequence::build(group.clone(), raw).expect("valid random sequence")
}

/// Grows a zero-sum-free sequence term by term, rejecting any addition that
/// creates a zero sum, until it reaches a random length in `1..=max_len` or stalls.
pub fn random_zero_sum_free<R: Rng>(
    rng: &mut R,
    group: &GroupSpec,
    max_len: u64,
    limits: &Limits,
) -> Result<Sequence> {
    let target = rng.gen_range(1..=max_len);
    let mut seq = Sequence::empty(group.clone());
    let mut misses = 0;
    // free groups: pick a sign pattern so that some zero-sum-free growth is likely
    let signs: Vec<i64> = (0..group.free_rank())
        .map(|_| *[1i64, 1, -1].choose(rng).unwrap())
        .collect();
    while seq.len() < target && misses < 40 {
        let mut x = random_element(rng, group, 4);
        if group.free_rank() > 0 && rng.gen_bool(0.7) {
            let k = group.cyclic_orders().len();
            let mut coords = x.into_coords();
            for (c, s) in coords[k..].iter_mut().zip(&signs) {
                *c = c.abs() * s;
            }
            x = group.element(coords)?;
        }
        let room = target - seq.len();
        let m = rng.gen_range(1..=room.min(4));
        let candidate = seq.concat(&Sequence::build(group.clone(), [(x, m as i64)])?)?;
        if is_zero_sum_free(&candidate, limits)? {
            seq = candidate;
        } else {
            misses += 1;
        }
    }
    Ok(seq)
}

/// Random factorization `α = α_1 ⋯ α_k` into `k` (possibly empty) parts.
pub fn random_factorization<R: Rng>(rng: &mut R, seq: &Sequence, parts: usize) -> Result<Vec<Sequence>> {
    let mut raw: Vec<Vec<(Element, i64)>> = vec![Vec::new(); parts.max(1)];
    for e in seq.entries() {
        for _ in 0..e.mult {
            let slot = rng.gen_range(0..raw.len());
            raw[slot].push((e.term.clone(), 1));
        }
    }
    raw.into_iter()
        .map(|r| Sequence::build(seq.group().clone(), r))
        .collect()
}

/// `true` when the brute-force oracle can afford `seq` within `budget`.
pub fn within_budget(seq: &Sequence, budget: u64) -> bool {
    enumeration_size(seq).is_some_and(|c| c <= budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_values_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l = Limits::default();
        for _ in 0..200 {
            let g = random_group(&mut rng, 30, 0.3);
            if let Some(order) = g.order() {
                assert!(order <= 30);
            } else {
                assert!(g.free_rank() <= 2);
            }
            let s = random_sequence(&mut rng, &g, 5, 8, 100_000);
            assert!(s.support_size() <= 5);
            assert!(within_budget(&s, 100_000));
            let z = random_zero_sum_free(&mut rng, &g, 14, &l).unwrap();
            assert!(z.len() <= 14);
            assert!(is_zero_sum_free(&z, &l).unwrap());
            let parts = random_factorization(&mut rng, &z, 3).unwrap();
            let mut prod = Sequence::empty(g.clone());
            for p in &parts {
                prod = prod.concat(p).unwrap();
            }
            assert_eq!(prod, z);
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let a = random_group(&mut ChaCha8Rng::seed_from_u64(3), 30, 0.5);
        let b = random_group(&mut ChaCha8Rng::seed_from_u64(3), 30, 0.5);
        assert_eq!(a, b);
    }
}
