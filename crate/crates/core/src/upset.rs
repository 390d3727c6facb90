//! Ultimately periodic subsets of `ω = {1, 2, 3, …}`.
//!
//! A set is stored as a finite exceptional part below a threshold `N` and a
//! residue pattern modulo a period `p` that governs every `x > N`. The
//! representation is kept canonical (minimal period, then minimal
//! threshold), so structural equality is set equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{divisors, first_in_class_after, gcd, lcm};
use crate::pap::{PapError, PapInj};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UpSet {
    threshold: i64,
    exceptional: Vec<i64>,
    period: i64,
    residues: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpSetError {
    MalformedLiteral(String),
}

impl fmt::Display for UpSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpSetError::MalformedLiteral(msg) => write!(f, "malformed set literal: {msg}"),
        }
    }
}

impl core::error::Error for UpSetError {}

/// Size classification of a subset of `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetClass {
    Finite(u64),
    /// Complement is finite with the given cardinality.
    Cofinite(u64),
    BiInfinite,
}

impl UpSet {
    /// Builds a set from raw fields, validating them and canonicalizing.
    pub fn new(
        threshold: i64,
        exceptional: &[i64],
        period: i64,
        residues: &[i64],
    ) -> Result<UpSet, UpSetError> {
        if threshold < 0 {
            return Err(UpSetError::MalformedLiteral("threshold must be >= 0".into()));
        }
        if period < 1 {
            return Err(UpSetError::MalformedLiteral("period must be >= 1".into()));
        }
        if let Some(x) = exceptional.iter().find(|&&x| x < 1 || x > threshold) {
            return Err(UpSetError::MalformedLiteral(alloc::format!(
                "exceptional element {x} outside 1..={threshold}"
            )));
        }
        if let Some(r) = residues.iter().find(|&&r| r < 0 || r >= period) {
            return Err(UpSetError::MalformedLiteral(alloc::format!(
                "residue {r} outside 0..{period}"
            )));
        }
        let mut pattern = vec![false; period as usize];
        for &r in residues {
            pattern[r as usize] = true;
        }
        let mut exc: Vec<i64> = exceptional.to_vec();
        exc.sort_unstable();
        exc.dedup();
        Ok(UpSet {
            threshold,
            exceptional: exc,
            period,
            residues: pattern,
        }
        .canonical())
    }

    /// Builds a set from a membership predicate that is known to be
    /// `period`-periodic above `threshold`.
    pub fn from_membership(threshold: i64, period: i64, member: impl Fn(i64) -> bool) -> UpSet {
        assert!(threshold >= 0 && period >= 1);
        let exceptional = (1..=threshold).filter(|&x| member(x)).collect();
        let residues = (0..period)
            .map(|r| member(first_in_class_after(threshold, r, period)))
            .collect();
        UpSet {
            threshold,
            exceptional,
            period,
            residues,
        }
        .canonical()
    }

    /// Builds a set from a membership mask on `1..=threshold` and a residue
    /// mask for the tail.
    pub(crate) fn from_masks(head: &[bool], residues: Vec<bool>) -> UpSet {
        let threshold = head.len() as i64;
        let exceptional = (1..=threshold).filter(|&x| head[(x - 1) as usize]).collect();
        UpSet {
            threshold,
            exceptional,
            period: residues.len() as i64,
            residues,
        }
        .canonical()
    }

    pub fn empty() -> UpSet {
        UpSet {
            threshold: 0,
            exceptional: Vec::new(),
            period: 1,
            residues: vec![false],
        }
    }

    pub fn omega() -> UpSet {
        UpSet {
            threshold: 0,
            exceptional: Vec::new(),
            period: 1,
            residues: vec![true],
        }
    }

    pub fn finite<I: IntoIterator<Item = i64>>(elements: I) -> UpSet {
        let mut exc: Vec<i64> = elements.into_iter().filter(|&x| x >= 1).collect();
        exc.sort_unstable();
        exc.dedup();
        let threshold = exc.last().copied().unwrap_or(0);
        UpSet {
            threshold,
            exceptional: exc,
            period: 1,
            residues: vec![false],
        }
        .canonical()
    }

    /// `{x ∈ ω : x mod p ∈ residues}`.
    pub fn residue_class(period: i64, residues: &[i64]) -> Result<UpSet, UpSetError> {
        UpSet::new(0, &[], period, residues)
    }

    pub fn evens() -> UpSet {
        UpSet::residue_class(2, &[0]).unwrap()
    }

    pub fn odds() -> UpSet {
        UpSet::residue_class(2, &[1]).unwrap()
    }

    /// The arithmetic progression `{start + step·t : t ≥ 0}`; a single point
    /// when `step == 0`.
    pub fn progression(start: i64, step: i64) -> UpSet {
        assert!(start >= 1 && step >= 0);
        if step == 0 {
            return UpSet::finite([start]);
        }
        UpSet::from_membership(start - 1, step, |x| x >= start && (x - start) % step == 0)
    }

    /// `{x : x > n}`.
    pub fn greater_than(n: i64) -> UpSet {
        UpSet::from_membership(n.max(0), 1, |x| x > n)
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn exceptional(&self) -> &[i64] {
        &self.exceptional
    }

    pub fn residues(&self) -> Vec<i64> {
        (0..self.period)
            .filter(|&r| self.residues[r as usize])
            .collect()
    }

    /// Whether the residue `r` (mod the period) belongs to the tail.
    pub fn contains_residue(&self, r: i64) -> bool {
        self.residues[r.rem_euclid(self.period) as usize]
    }

    /// Number of residues in the periodic tail.
    pub fn tail_density(&self) -> i64 {
        self.residues.iter().filter(|&&b| b).count() as i64
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 1 {
            false
        } else if x <= self.threshold {
            self.exceptional.binary_search(&x).is_ok()
        } else {
            self.residues[x.rem_euclid(self.period) as usize]
        }
    }

    fn canonical(mut self) -> UpSet {
        let p = self.period;
        for d in divisors(p) {
            if d == p {
                break;
            }
            if (0..p).all(|r| self.residues[r as usize] == self.residues[(r % d) as usize]) {
                self.residues.truncate(d as usize);
                self.period = d;
                break;
            }
        }
        while self.threshold > 0 {
            let n = self.threshold;
            let in_exc = self.exceptional.last() == Some(&n);
            if in_exc != self.residues[n.rem_euclid(self.period) as usize] {
                break;
            }
            if in_exc {
                self.exceptional.pop();
            }
            self.threshold -= 1;
        }
        self
    }

    fn combine(&self, other: &UpSet, op: impl Fn(bool, bool) -> bool) -> UpSet {
        let threshold = self.threshold.max(other.threshold);
        let period = lcm(self.period, other.period);
        UpSet::from_membership(threshold, period, |x| op(self.contains(x), other.contains(x)))
    }

    pub fn union(&self, other: &UpSet) -> UpSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &UpSet) -> UpSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &UpSet) -> UpSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> UpSet {
        UpSet {
            threshold: self.threshold,
            exceptional: (1..=self.threshold)
                .filter(|x| self.exceptional.binary_search(x).is_err())
                .collect(),
            period: self.period,
            residues: self.residues.iter().map(|b| !b).collect(),
        }
        .canonical()
    }

    pub fn union_all<S: core::borrow::Borrow<UpSet>, I: IntoIterator<Item = S>>(sets: I) -> UpSet {
        sets.into_iter()
            .fold(UpSet::empty(), |acc, s| acc.union(s.borrow()))
    }

    pub fn is_empty(&self) -> bool {
        self.exceptional.is_empty() && self.residues.iter().all(|b| !b)
    }

    pub fn is_subset(&self, other: &UpSet) -> bool {
        let t = self.threshold.max(other.threshold);
        if (1..=t).any(|x| self.contains(x) && !other.contains(x)) {
            return false;
        }
        // Above t, the class r mod p lies in `other` iff every class of
        // `other` meeting it is a member.
        let g = gcd(self.period, other.period);
        let mut full = vec![true; g as usize];
        for r in 0..other.period {
            if !other.residues[r as usize] {
                full[(r % g) as usize] = false;
            }
        }
        self.residues()
            .iter()
            .all(|&r| full[(r % g) as usize])
    }

    pub fn is_disjoint(&self, other: &UpSet) -> bool {
        let t = self.threshold.max(other.threshold);
        if (1..=t).any(|x| self.contains(x) && other.contains(x)) {
            return false;
        }
        // Classes r mod p and s mod q meet iff r ≡ s mod gcd(p, q).
        let g = gcd(self.period, other.period);
        let mut hit = vec![false; g as usize];
        for r in other.residues() {
            hit[(r % g) as usize] = true;
        }
        self.residues().iter().all(|&r| !hit[(r % g) as usize])
    }

    pub fn is_finite(&self) -> bool {
        self.residues.iter().all(|b| !b)
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    /// Infinite complement in `ω`.
    pub fn is_coinfinite(&self) -> bool {
        self.residues.iter().any(|b| !b)
    }

    pub fn cardinality(&self) -> Option<u64> {
        self.is_finite().then(|| self.exceptional.len() as u64)
    }

    /// Size of the complement, when finite.
    pub fn cosize(&self) -> Option<u64> {
        self.complement().cardinality()
    }

    pub fn classify(&self) -> SetClass {
        if let Some(n) = self.cardinality() {
            SetClass::Finite(n)
        } else if let Some(n) = self.cosize() {
            SetClass::Cofinite(n)
        } else {
            SetClass::BiInfinite
        }
    }

    /// `|S ∩ {1, …, x}|`.
    pub fn rank(&self, x: i64) -> i64 {
        if x < 1 {
            return 0;
        }
        let n = self.threshold;
        if x <= n {
            return self.exceptional.partition_point(|&e| e <= x) as i64;
        }
        let p = self.period;
        let tail: i64 = (0..p)
            .filter(|&r| self.residues[r as usize])
            .map(|r| (x - r).div_euclid(p) - (n - r).div_euclid(p))
            .sum();
        self.exceptional.len() as i64 + tail
    }

    /// The `k`-th smallest element (1-based).
    pub fn nth(&self, k: i64) -> Option<i64> {
        if k < 1 {
            return None;
        }
        let c = self.exceptional.len() as i64;
        if k <= c {
            return Some(self.exceptional[(k - 1) as usize]);
        }
        let m = self.tail_density();
        if m == 0 {
            return None;
        }
        let j = k - c - 1;
        let (q, idx) = (j / m, j % m);
        let base = (self.threshold + 1..=self.threshold + self.period)
            .filter(|&x| self.contains(x))
            .nth(idx as usize)?;
        Some(base + q * self.period)
    }

    pub fn min(&self) -> Option<i64> {
        self.nth(1)
    }

    /// Elements up to and including `bound`, in increasing order.
    pub fn elements_upto(&self, bound: i64) -> impl Iterator<Item = i64> + '_ {
        (1..=bound).filter(move |&x| self.contains(x))
    }

    /// The order-preserving bijection `ω → S`.
    pub fn enumerator(&self) -> Result<PapInj, PapError> {
        PapInj::enumerate(self)
    }

    /// The explicit `up{N=…, exc=[…], p=…, res=[…]}` literal.
    pub fn full_literal(&self) -> String {
        alloc::format!(
            "up{{N={}, exc={}, p={}, res={}}}",
            self.threshold,
            list(&self.exceptional),
            self.period,
            list(&self.residues())
        )
    }
}

fn list(xs: &[i64]) -> String {
    let mut s = String::from("[");
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&alloc::format!("{x}"));
    }
    s.push(']');
    s
}

/// Prints the shortest accepted literal: `up{finite=[…]}` for finite sets,
/// `up{mod p in […]}` for purely periodic sets, the full form otherwise.
impl fmt::Display for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "up{{finite={}}}", list(&self.exceptional))
        } else if self.threshold == 0 {
            write!(f, "up{{mod {} in {}}}", self.period, list(&self.residues()))
        } else {
            f.write_str(&self.full_literal())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn brute(s: &UpSet, bound: i64) -> Vec<i64> {
        (1..=bound).filter(|&x| s.contains(x)).collect()
    }

    #[test]
    fn canonical_examples() {
        let evens = UpSet::new(4, &[2, 4], 2, &[0]).unwrap();
        assert_eq!(evens.threshold(), 0);
        assert_eq!(evens, UpSet::evens());
        let reduced = UpSet::new(0, &[], 4, &[0, 2]).unwrap();
        assert_eq!(reduced.period(), 2);
        assert_eq!(reduced.residues(), vec![0]);
        let fixed = UpSet::new(3, &[1], 1, &[]).unwrap();
        assert_eq!(fixed.threshold(), 1);
        assert_eq!(fixed, UpSet::finite([1]));
    }

    #[test]
    fn malformed_rejected() {
        assert!(UpSet::new(2, &[3], 1, &[]).is_err());
        assert!(UpSet::new(2, &[], 2, &[2]).is_err());
        assert!(UpSet::new(0, &[], 0, &[]).is_err());
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(UpSet::evens().complement(), UpSet::odds());
        assert_eq!(UpSet::evens().union(&UpSet::odds()), UpSet::omega());
        let a5 = UpSet::evens().intersect(&UpSet::greater_than(9));
        assert_eq!(brute(&a5, 20), vec![10, 12, 14, 16, 18, 20]);
        assert_eq!(a5.full_literal(), "up{N=8, exc=[], p=2, res=[0]}");
    }

    #[test]
    fn classify_examples() {
        assert_eq!(UpSet::finite([1]).classify(), SetClass::Finite(1));
        assert_eq!(UpSet::evens().classify(), SetClass::BiInfinite);
        assert_eq!(UpSet::greater_than(1).classify(), SetClass::Cofinite(1));
        assert!(UpSet::evens().is_coinfinite());
        assert!(!UpSet::greater_than(1).is_coinfinite());
    }

    #[test]
    fn rank_and_nth() {
        let s = UpSet::new(5, &[2, 3], 4, &[1, 3]).unwrap();
        let elems = brute(&s, 200);
        for (i, &x) in elems.iter().enumerate() {
            assert_eq!(s.nth(i as i64 + 1), Some(x));
            assert_eq!(s.rank(x), i as i64 + 1);
        }
        assert_eq!(UpSet::finite([4]).nth(2), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(UpSet::evens().to_string(), "up{mod 2 in [0]}");
        assert_eq!(UpSet::finite([3, 1]).to_string(), "up{finite=[1, 3]}");
        assert_eq!(UpSet::empty().to_string(), "up{finite=[]}");
        assert_eq!(
            UpSet::greater_than(1).to_string(),
            "up{N=1, exc=[], p=1, res=[0]}"
        );
    }

    prop_compose! {
        fn arb_upset()(threshold in 0i64..9, period in 1i64..13)
            (exc in proptest::collection::vec(1..=threshold.max(1), 0..5),
             res in proptest::collection::vec(0..period, 0..(period as usize + 1)),
             threshold in Just(threshold), period in Just(period)) -> UpSet {
            let exc: Vec<i64> = exc.into_iter().filter(|&x| x <= threshold).collect();
            UpSet::new(threshold, &exc, period, &res).unwrap()
        }
    }

    proptest! {
        #[test]
        fn boolean_ops_match_pointwise(s in arb_upset(), t in arb_upset()) {
            let bound = s.threshold() + t.threshold() + 2 * lcm(s.period(), t.period()) + 2;
            let u = s.union(&t);
            let i = s.intersect(&t);
            let c = s.complement();
            for x in 1..=bound {
                prop_assert_eq!(u.contains(x), s.contains(x) || t.contains(x));
                prop_assert_eq!(i.contains(x), s.contains(x) && t.contains(x));
                prop_assert_eq!(c.contains(x), !s.contains(x));
            }
        }

        #[test]
        fn double_complement(s in arb_upset()) {
            prop_assert_eq!(s.complement().complement(), s);
        }

        #[test]
        fn canonical_form_is_unique(s in arb_upset(), extra_threshold in 0i64..10, mult in 1i64..4) {
            // Re-expanding with a larger threshold and period must canonicalize back.
            let n = s.threshold() + extra_threshold;
            let p = s.period() * mult;
            let exc: Vec<i64> = (1..=n).filter(|&x| s.contains(x)).collect();
            let res: Vec<i64> = (0..p).filter(|&r| s.contains(crate::arith::first_in_class_after(n, r, p))).collect();
            prop_assert_eq!(UpSet::new(n, &exc, p, &res).unwrap(), s);
        }

        #[test]
        fn enumerator_hits_exactly(s in arb_upset()) {
            prop_assume!(s.is_infinite());
            let e = s.enumerator().unwrap();
            prop_assert_eq!(e.image(&UpSet::omega()), s.clone());
            for k in 1..60 {
                prop_assert_eq!(e.eval(k), s.nth(k).unwrap());
            }
        }
    }
}
