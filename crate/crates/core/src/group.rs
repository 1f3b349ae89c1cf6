//! Finitely generated abelian groups `Z/n1 x ... x Z/nk x Z^r`.
//!
//! Elements are integer coordinate vectors with the cyclic coordinates first.
//! Cyclic coordinates are always stored reduced into `[0, n_i)`, so structural
//! equality of [`Element`]s is group equality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{resource, structural, validation, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    cyclic_orders: Vec<u64>,
    free_rank: usize,
}

/// A group element in canonical form. Ordering is lexicographic on coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<i64>);

/// Order of an element. `Infinite` is a sentinel and compares above every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    /// `true` when the order is strictly larger than `bound`.
    pub fn exceeds(self, bound: u64) -> bool {
        match self {
            Order::Finite(o) => o > bound,
            Order::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(o) => Some(o),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(o) => write!(f, "{o}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(o) => s.serialize_u64(*o),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl Element {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    (a / gcd(a, b)).checked_mul(b)
}

impl GroupSpec {
    pub fn new(cyclic_orders: Vec<u64>, free_rank: usize) -> Result<Self> {
        if cyclic_orders.is_empty() && free_rank == 0 {
            return Err(validation("group needs at least one factor"));
        }
        if let Some(&bad) = cyclic_orders.iter().find(|&&n| n < 2) {
            return Err(validation(format!("cyclic order {bad} is below 2")));
        }
        if cyclic_orders.iter().any(|&n| n > i64::MAX as u64) {
            return Err(validation("cyclic order does not fit in a signed 64-bit coordinate"));
        }
        Ok(GroupSpec {
            cyclic_orders,
            free_rank,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n], 0)
    }

    pub fn free(rank: usize) -> Result<Self> {
        Self::new(Vec::new(), rank)
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of coordinates, `k + r`.
    pub fn rank(&self) -> usize {
        self.cyclic_orders.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `|G|` for finite groups; `None` when infinite or when the order overflows `u64`.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.cyclic_orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    /// The single modulus when the group is exactly `Z/n`.
    pub fn single_cyclic(&self) -> Option<u64> {
        match (self.cyclic_orders.as_slice(), self.free_rank) {
            ([n], 0) => Some(*n),
            _ => None,
        }
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    /// The `i`-th coordinate unit vector.
    pub fn basis(&self, i: usize) -> Result<Element> {
        if i >= self.rank() {
            return Err(structural(format!("basis index {i} out of range for rank {}", self.rank())));
        }
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        Ok(Element(coords))
    }

    /// Builds an element, reducing cyclic coordinates.
    pub fn element(&self, mut coords: Vec<i64>) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(structural(format!(
                "element has {} coordinates, group {self} needs {}",
                coords.len(),
                self.rank()
            )));
        }
        for (c, &n) in coords.iter_mut().zip(&self.cyclic_orders) {
            *c = c.rem_euclid(n as i64);
        }
        Ok(Element(coords))
    }

    /// `true` when `x` has the right dimension and is in canonical form.
    pub fn contains(&self, x: &Element) -> bool {
        x.0.len() == self.rank()
            && x
                .0
                .iter()
                .zip(&self.cyclic_orders)
                .all(|(&c, &n)| c >= 0 && (c as u64) < n)
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else if x.0.len() != self.rank() {
            Err(structural(format!(
                "element {x} has {} coordinates, group {self} needs {}",
                x.0.len(),
                self.rank()
            )))
        } else {
            Err(validation(format!("element {x} is not reduced in {self}")))
        }
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let k = self.cyclic_orders.len();
        let mut out = Vec::with_capacity(self.rank());
        for (i, (&a, &b)) in x.0.iter().zip(&y.0).enumerate() {
            if i < k {
                let n = self.cyclic_orders[i] as i128;
                out.push(((a as i128 + b as i128) % n) as i64);
            } else {
                out.push(a.checked_add(b).ok_or_else(overflow)?);
            }
        }
        Ok(Element(out))
    }

    pub fn neg(&self, x: &Element) -> Result<Element> {
        self.scale(-1, x)
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element> {
        let ny = self.neg(y)?;
        self.add(x, &ny)
    }

    /// `t * x` for any integer `t`.
    pub fn scale(&self, t: i64, x: &Element) -> Result<Element> {
        self.check(x)?;
        let k = self.cyclic_orders.len();
        let mut out = Vec::with_capacity(self.rank());
        for (i, &a) in x.0.iter().enumerate() {
            if i < k {
                let n = self.cyclic_orders[i] as i128;
                out.push((t as i128 * a as i128).rem_euclid(n) as i64);
            } else {
                out.push(t.checked_mul(a).ok_or_else(overflow)?);
            }
        }
        Ok(Element(out))
    }

    /// Least `t >= 1` with `t * x = 0`, via per-coordinate orders and lcm.
    pub fn element_order(&self, x: &Element) -> Result<Order> {
        self.check(x)?;
        let k = self.cyclic_orders.len();
        if x.0[k..].iter().any(|&c| c != 0) {
            return Ok(Order::Infinite);
        }
        let mut ord = 1u64;
        for (&c, &n) in x.0[..k].iter().zip(&self.cyclic_orders) {
            let coord_order = n / gcd(n, c as u64);
            ord = lcm(ord, coord_order).ok_or_else(overflow)?;
        }
        Ok(Order::Finite(ord))
    }

    /// All elements of a finite group in canonical order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let order = self
            .order()
            .ok_or_else(|| validation(format!("{self} is not finite")))?;
        let order = usize::try_from(order).map_err(|_| resource("group too large to enumerate"))?;
        let mut out = Vec::with_capacity(order);
        for idx in 0..order {
            out.push(self.element_at(idx));
        }
        Ok(out)
    }

    /// Mixed-radix index of an element of a finite group, consistent with [`Self::elements`].
    pub fn index_of(&self, x: &Element) -> usize {
        debug_assert!(self.is_finite());
        x.0.iter()
            .zip(&self.cyclic_orders)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Element {
        debug_assert!(self.is_finite());
        let mut coords = vec![0i64; self.rank()];
        for (c, &n) in coords.iter_mut().zip(&self.cyclic_orders).rev() {
            *c = (idx % n as usize) as i64;
            idx /= n as usize;
        }
        Element(coords)
    }

    /// Addition without validation, for hot loops over elements already known to be canonical.
    pub(crate) fn add_unchecked(&self, x: &Element, y: &Element) -> Element {
        let k = self.cyclic_orders.len();
        let coords = x
            .0
            .iter()
            .zip(&y.0)
            .enumerate()
            .map(|(i, (&a, &b))| {
                if i < k {
                    let n = self.cyclic_orders[i] as i64;
                    let s = a + b;
                    if s >= n {
                        s - n
                    } else {
                        s
                    }
                } else {
                    a + b
                }
            })
            .collect();
        Element(coords)
    }
}

fn overflow() -> Error {
    resource("free coordinate overflowed 64 bits")
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in &self.cyclic_orders {
            if !first {
                f.write_str(" x ")?;
            }
            write!(f, "Z/{n}")?;
            first = false;
        }
        if self.free_rank > 0 {
            if !first {
                f.write_str(" x ")?;
            }
            write!(f, "Z^{}", self.free_rank)?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `"Z/6 x Z/2 x Z^2"`. Factors are separated by `x`, case-insensitively;
    /// a bare `Z` means `Z^1`, and the free factor may appear at most once.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        if compact.is_empty() {
            return Err(validation("empty group spec"));
        }
        let mut cyclic = Vec::new();
        let mut free: Option<usize> = None;
        for factor in compact.split('x') {
            let rest = factor
                .strip_prefix('z')
                .ok_or_else(|| validation(format!("bad group factor {factor:?} in {s:?}")))?;
            if let Some(n) = rest.strip_prefix('/') {
                let n: u64 = n
                    .parse()
                    .map_err(|_| validation(format!("bad cyclic order {n:?} in {s:?}")))?;
                cyclic.push(n);
            } else {
                let r = if rest.is_empty() {
                    1
                } else if let Some(r) = rest.strip_prefix('^') {
                    r.parse()
                        .map_err(|_| validation(format!("bad free rank {r:?} in {s:?}")))?
                } else {
                    return Err(validation(format!("bad group factor {factor:?} in {s:?}")));
                };
                if r == 0 {
                    return Err(validation("free rank in Z^r must be at least 1"));
                }
                if free.replace(r).is_some() {
                    return Err(validation(format!("Z^r appears more than once in {s:?}")));
                }
            }
        }
        GroupSpec::new(cyclic, free.unwrap_or(0))
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(g: &GroupSpec, c: &[i64]) -> Element {
        g.element(c.to_vec()).unwrap()
    }

    #[test]
    fn add_examples() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        assert_eq!(z12.add(&el(&z12, &[7]), &el(&z12, &[8])).unwrap(), el(&z12, &[3]));
        let z = GroupSpec::free(1).unwrap();
        assert_eq!(z.add(&el(&z, &[5]), &el(&z, &[-3])).unwrap(), el(&z, &[2]));
        let mixed: GroupSpec = "Z/2 x Z^1".parse().unwrap();
        assert_eq!(
            mixed.add(&el(&mixed, &[1, 4]), &el(&mixed, &[1, 1])).unwrap(),
            el(&mixed, &[0, 5])
        );
    }

    #[test]
    fn add_dimension_mismatch() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let bad = Element(vec![1, 2]);
        assert!(matches!(z12.add(&bad, &z12.zero()), Err(Error::Structural(_))));
        assert!(matches!(z12.element(vec![1, 2]), Err(Error::Structural(_))));
    }

    #[test]
    fn scale_examples() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        assert_eq!(z12.scale(3, &el(&z12, &[4])).unwrap(), z12.zero());
        assert_eq!(z12.scale(-1, &el(&z12, &[5])).unwrap(), el(&z12, &[7]));
        let z = GroupSpec::free(1).unwrap();
        assert_eq!(z.scale(4, &el(&z, &[2])).unwrap(), el(&z, &[8]));
    }

    #[test]
    fn order_examples() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        assert_eq!(z12.element_order(&el(&z12, &[4])).unwrap(), Order::Finite(3));
        assert_eq!(z12.element_order(&z12.zero()).unwrap(), Order::Finite(1));
        let z = GroupSpec::free(1).unwrap();
        assert_eq!(z.element_order(&el(&z, &[1])).unwrap(), Order::Infinite);
        let g: GroupSpec = "Z/4 x Z/6".parse().unwrap();
        assert_eq!(g.element_order(&el(&g, &[1, 2])).unwrap(), Order::Finite(12));
        assert!(Order::Infinite.exceeds(u64::MAX));
        assert!(!Order::Finite(5).exceeds(5));
    }

    #[test]
    fn parse_and_display() {
        let g: GroupSpec = "z/6 X Z/2 x Z^2".parse().unwrap();
        assert_eq!(g.cyclic_orders(), &[6, 2]);
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.to_string(), "Z/6 x Z/2 x Z^2");
        assert_eq!("Z".parse::<GroupSpec>().unwrap(), GroupSpec::free(1).unwrap());
        assert_eq!("Z^2 x Z/3".parse::<GroupSpec>().unwrap().to_string(), "Z/3 x Z^2");
        for bad in ["", "Z/1", "Z^2 x Z^1", "Q/3", "Z/x", "Z^0", "Z/3 x"] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn enumeration_round_trips_index() {
        let g: GroupSpec = "Z/2 x Z/3 x Z/4".parse().unwrap();
        let all = g.elements().unwrap();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in all.iter().enumerate() {
            assert_eq!(g.index_of(x), i);
        }
    }

    fn small_group() -> impl Strategy<Value = GroupSpec> {
        (prop::collection::vec(2u64..10, 0..3), 0usize..3)
            .prop_filter("nonempty", |(c, r)| !c.is_empty() || *r > 0)
            .prop_map(|(c, r)| GroupSpec::new(c, r).unwrap())
    }

    fn group_and_elems(count: usize) -> impl Strategy<Value = (GroupSpec, Vec<Element>)> {
        small_group().prop_flat_map(move |g| {
            let rank = g.rank();
            let g2 = g.clone();
            prop::collection::vec(prop::collection::vec(-60i64..60, rank), count)
                .prop_map(move |raw| {
                    let elems = raw.into_iter().map(|c| g2.element(c).unwrap()).collect();
                    (g2.clone(), elems)
                })
        })
    }

    proptest! {
        #[test]
        fn add_is_abelian_group_law((g, xs) in group_and_elems(3)) {
            let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
            prop_assert_eq!(g.add(x, y).unwrap(), g.add(y, x).unwrap());
            let left = g.add(&g.add(x, y).unwrap(), z).unwrap();
            let right = g.add(x, &g.add(y, z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(&g.add(x, &g.zero()).unwrap(), x);
            prop_assert_eq!(g.add_unchecked(x, y), g.add(x, y).unwrap());
        }

        #[test]
        fn scale_is_repeated_addition((g, xs) in group_and_elems(1), t in 0i64..=50) {
            let x = &xs[0];
            let mut acc = g.zero();
            for _ in 0..t {
                acc = g.add(&acc, x).unwrap();
            }
            prop_assert_eq!(g.scale(t, x).unwrap(), acc);
        }

        #[test]
        fn finite_order_is_least_annihilator((g, xs) in group_and_elems(1)) {
            let x = &xs[0];
            if let Order::Finite(o) = g.element_order(x).unwrap() {
                prop_assert!(g.scale(o as i64, x).unwrap().is_zero());
                for t in 1..o {
                    prop_assert!(!g.scale(t as i64, x).unwrap().is_zero());
                }
            } else {
                prop_assert!(g.free_rank() > 0);
            }
        }
    }
}
