//! Piecewise-arithmetic maps `ω → ℤ` and the injections among them.
//!
//! A [`PapMap`] is a finite table on `{1, …, N}` followed by affine pieces
//! indexed by `x mod P`: for `x > N` with `x = qP + r` the value is
//! `base_r + step_r · q`. The representation is canonical (minimal period,
//! then minimal threshold), so derived equality is functional equality.
//!
//! Evaluation at `x ≤ 0` returns `0`. Maps that are only meaningful on a
//! subset of `ω` use `0` as the "undefined" marker, and composition carries
//! it through.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{div_ceil, divisors, first_in_class_after, gcd, lcm, least_solution};
use crate::upset::UpSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Piece {
    pub step: i64,
    pub base: i64,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PapMap {
    threshold: i64,
    table: Vec<i64>,
    period: i64,
    pieces: Vec<Piece>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PapError {
    NotInjective { x: i64, y: i64 },
    NotPositive { x: i64 },
    MalformedLiteral(String),
    NotCoinfinite,
    FiniteSet,
    OverlappingComponents { i: usize, j: usize },
}

impl fmt::Display for PapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PapError::NotInjective { x, y } => write!(f, "not injective: {x} and {y} collide"),
            PapError::NotPositive { x } => write!(f, "value at {x} is not a positive integer"),
            PapError::MalformedLiteral(m) => write!(f, "malformed map literal: {m}"),
            PapError::NotCoinfinite => f.write_str("set is not co-infinite"),
            PapError::FiniteSet => f.write_str("set is finite"),
            PapError::OverlappingComponents { i, j } => {
                write!(f, "components {i} and {j} have overlapping images")
            }
        }
    }
}

impl core::error::Error for PapError {}

impl PapMap {
    /// Samples `f` into a map, given a threshold and a period above which
    /// `f` is known to be quasi-affine. Panics if a third sample point
    /// contradicts that claim.
    pub fn from_fn(threshold: i64, period: i64, f: impl Fn(i64) -> i64) -> PapMap {
        assert!(threshold >= 0 && period >= 1);
        let table = (1..=threshold).map(&f).collect();
        let pieces = (0..period)
            .map(|r| {
                let x1 = first_in_class_after(threshold, r, period);
                let (v1, v2, v3) = (f(x1), f(x1 + period), f(x1 + 2 * period));
                let step = v2 - v1;
                assert!(
                    v3 - v2 == step,
                    "not quasi-affine with period {period} above {threshold} (class {r})"
                );
                assert!(step >= 0, "negative step on class {r}");
                Piece {
                    step,
                    base: v1 - step * (x1 / period),
                }
            })
            .collect();
        PapMap {
            threshold,
            table,
            period,
            pieces,
        }
        .canonical()
    }

    /// Builds a map from an explicit table on `1..=table.len()` and pieces.
    pub fn from_parts(table: Vec<i64>, period: i64, pieces: Vec<Piece>) -> Result<PapMap, PapError> {
        if period < 1 || pieces.len() != period as usize {
            return Err(PapError::MalformedLiteral(alloc::format!(
                "expected exactly {period} pieces"
            )));
        }
        if pieces.iter().any(|p| p.step < 0) {
            return Err(PapError::MalformedLiteral("slopes must be non-negative".into()));
        }
        Ok(PapMap {
            threshold: table.len() as i64,
            table,
            period,
            pieces,
        }
        .canonical())
    }

    pub fn zero() -> PapMap {
        PapMap {
            threshold: 0,
            table: Vec::new(),
            period: 1,
            pieces: vec![Piece { step: 0, base: 0 }],
        }
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn table(&self) -> &[i64] {
        &self.table
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn eval(&self, x: i64) -> i64 {
        if x < 1 {
            0
        } else if x <= self.threshold {
            self.table[(x - 1) as usize]
        } else {
            let p = &self.pieces[x.rem_euclid(self.period) as usize];
            p.base + p.step * x.div_euclid(self.period)
        }
    }

    fn tail_eval(&self, x: i64) -> i64 {
        let p = &self.pieces[x.rem_euclid(self.period) as usize];
        p.base + p.step * x.div_euclid(self.period)
    }

    fn canonical(mut self) -> PapMap {
        let big = self.period;
        for d in divisors(big) {
            if d == big {
                break;
            }
            let t = self.threshold;
            let candidate: Vec<Piece> = (0..d)
                .map(|s| {
                    let x1 = first_in_class_after(t, s, d);
                    let v1 = self.eval(x1);
                    let step = self.eval(x1 + d) - v1;
                    Piece {
                        step,
                        base: v1 - step * (x1 / d),
                    }
                })
                .collect();
            let at = |y: i64| {
                let p = &candidate[y.rem_euclid(d) as usize];
                p.base + p.step * y.div_euclid(d)
            };
            let fits = (0..big).all(|r| {
                let y = first_in_class_after(t, r, big);
                at(y) == self.eval(y) && at(y + big) == self.eval(y + big)
            });
            if fits {
                self.period = d;
                self.pieces = candidate;
                break;
            }
        }
        while self.threshold > 0 {
            let n = self.threshold;
            if self.table[(n - 1) as usize] != self.tail_eval(n) {
                break;
            }
            self.table.pop();
            self.threshold -= 1;
        }
        self
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PapMap) -> PapMap {
        let mut threshold = inner.threshold;
        for r in 0..inner.period {
            let piece = inner.pieces[r as usize];
            if piece.step == 0 {
                continue;
            }
            let x1 = first_in_class_after(inner.threshold, r, inner.period);
            let v1 = inner.eval(x1);
            if v1 <= self.threshold {
                let t = div_ceil(self.threshold + 1 - v1, piece.step);
                threshold = threshold.max(x1 + inner.period * t - 1);
            }
        }
        // A class of `inner` with step s re-enters the same class of `self`
        // once s·k is a multiple of its period.
        let q = self.period;
        let k = inner.pieces.iter().fold(1, |acc, pc| lcm(acc, q / gcd(pc.step, q)));
        PapMap::from_fn(threshold, inner.period * k, |x| self.eval(inner.eval(x)))
    }

    /// `x ↦ on(x)` for `x ∈ sel`, `off(x)` otherwise.
    pub fn piecewise(sel: &UpSet, on: &PapMap, off: &PapMap) -> PapMap {
        let threshold = sel.threshold().max(on.threshold).max(off.threshold);
        let period = lcm(lcm(sel.period(), on.period), off.period);
        PapMap::from_fn(threshold, period, |x| {
            if sel.contains(x) {
                on.eval(x)
            } else {
                off.eval(x)
            }
        })
    }

    /// Agrees with `self` on `domain` and is `0` elsewhere.
    pub fn restrict_to(&self, domain: &UpSet) -> PapMap {
        PapMap::piecewise(domain, self, &PapMap::zero())
    }

    /// `x ↦ e_C(σ(rank_S(x)))`, where `e_C` enumerates `target` in order.
    ///
    /// On `source` this sends the `k`-th element of `source` to the
    /// `σ(k)`-th element of `target`; with `σ` injective the result is an
    /// injection `source → target`.
    pub fn transport(source: &UpSet, target: &UpSet, sigma: Option<&PapInj>) -> Result<PapMap, PapError> {
        let e = PapInj::enumerate(target)?;
        let (sig_t, sig_p) = sigma.map_or((0, 1), |s| (s.0.threshold, s.0.period));
        let k = sig_t + sig_p * (e.0.threshold + 1);
        let threshold = source.threshold() + source.period() * (k + 1);
        let period = transport_period(source, e.0.period, sigma);
        let (n, p, c) = (source.threshold(), source.period(), source.tail_density());
        // prefix[r] counts tail residues below r
        let mut prefix = vec![0i64; p as usize + 1];
        for r in 0..p {
            prefix[r as usize + 1] = prefix[r as usize] + i64::from(source.contains_residue(r));
        }
        let upto = |x: i64| x.div_euclid(p) * c + prefix[(x.rem_euclid(p) + 1) as usize];
        let below = source.exceptional().len() as i64 - upto(n);
        let rank = |x: i64| if x <= n { source.rank(x) } else { below + upto(x) };
        Ok(PapMap::from_fn(threshold, period, |x| {
            let r = rank(x);
            let idx = sigma.map_or(r, |s| s.0.eval(r));
            e.0.eval(idx)
        }))
    }

    /// The period [`PapMap::transport`] would use, before reduction.
    pub fn transport_period(source: &UpSet, target: &UpSet, sigma: Option<&PapInj>) -> Result<i64, PapError> {
        let e = PapInj::enumerate(target)?;
        Ok(transport_period(source, e.0.period, sigma))
    }

    /// Period above which [`PapMap::pairing`] switches to [`PapMap::embed`].
    pub const PAIRING_MAX_PERIOD: i64 = 4096;

    /// Like [`PapMap::transport`] without `sigma`, unless the order-preserving
    /// pairing would have a period above `max_period`; then an injection of
    /// `source` into `target` with the period of `source` is used instead.
    pub fn pairing(source: &UpSet, target: &UpSet, max_period: i64) -> Result<PapMap, PapError> {
        if PapMap::transport_period(source, target, None)? <= max_period {
            PapMap::transport(source, target, None)
        } else {
            PapMap::embed(source, target)
        }
    }

    /// An injection of `source` into the infinite set `target` whose period
    /// is that of `source`: the head of `source` goes to the least elements
    /// of `target`, and each tail class to its own refined tail class above
    /// them.
    pub fn embed(source: &UpSet, target: &UpSet) -> Result<PapMap, PapError> {
        if !target.is_infinite() {
            return Err(PapError::FiniteSet);
        }
        let (n, p) = (source.threshold(), source.period());
        let head: Vec<i64> = source.exceptional().to_vec();
        let tails = source.residues();
        let (tp, tres) = (target.period(), target.residues());
        let least: Vec<i64> = (1..).filter(|&y| target.contains(y)).take(head.len()).collect();
        let floor = target.threshold().max(least.last().copied().unwrap_or(0));
        let m = div_ceil((tails.len() as i64).max(1), tres.len() as i64);
        let modulus = tp * m;
        let classes = (0..m).flat_map(|j| tres.iter().map(move |&r| r + tp * j));
        let mut table: Vec<i64> = (1..=n).collect();
        for (&x, &y) in head.iter().zip(&least) {
            table[(x - 1) as usize] = y;
        }
        let mut pieces: Vec<Piece> = (0..p).map(|r| Piece { step: p, base: r }).collect();
        for (&r, s) in tails.iter().zip(classes) {
            let x1 = first_in_class_after(n, r, p);
            let y1 = first_in_class_after(floor, s, modulus);
            pieces[r as usize] = Piece {
                step: modulus,
                base: y1 - modulus * x1.div_euclid(p),
            };
        }
        Ok(PapMap {
            threshold: n,
            table,
            period: p,
            pieces,
        }
        .canonical())
    }

    /// The image of `s`.
    pub fn image_of(&self, s: &UpSet) -> UpSet {
        let m = self.threshold.max(s.threshold());
        let l = lcm(self.period, s.period());
        let mut points: Vec<i64> = (1..=m)
            .filter(|&x| s.contains(x))
            .map(|x| self.eval(x))
            .filter(|&v| v >= 1)
            .collect();
        let mut progressions: Vec<(i64, i64)> = Vec::new();
        for rho in 0..l {
            let x1 = first_in_class_after(m, rho, l);
            if !s.contains(x1) {
                continue;
            }
            let v1 = self.eval(x1);
            let step = self.eval(x1 + l) - v1;
            if step == 0 {
                if v1 >= 1 {
                    points.push(v1);
                }
            } else {
                debug_assert!(v1 >= 1);
                progressions.push((v1, step));
            }
        }
        let threshold = points
            .iter()
            .copied()
            .chain(progressions.iter().map(|&(a, _)| a))
            .max()
            .unwrap_or(0);
        let period = progressions.iter().fold(1, |acc, &(_, st)| lcm(acc, st));
        let mut head = vec![false; threshold as usize];
        let mut residues = vec![false; period as usize];
        for &y in &points {
            head[(y - 1) as usize] = true;
        }
        for &(a, st) in &progressions {
            for y in (a..=threshold).step_by(st as usize) {
                head[(y - 1) as usize] = true;
            }
            // every tail point above the threshold lies above a
            for r in (a.rem_euclid(st)..period).step_by(st as usize) {
                residues[r as usize] = true;
            }
        }
        UpSet::from_masks(&head, residues)
    }

    /// `{x : self(x) ∈ t}`.
    pub fn preimage(&self, t: &UpSet) -> UpSet {
        let mut threshold = self.threshold;
        for r in 0..self.period {
            let piece = self.pieces[r as usize];
            if piece.step == 0 {
                continue;
            }
            let x1 = first_in_class_after(self.threshold, r, self.period);
            let v1 = self.eval(x1);
            if v1 <= t.threshold() {
                let k = div_ceil(t.threshold() + 1 - v1, piece.step);
                threshold = threshold.max(x1 + self.period * k - 1);
            }
        }
        // On a class with step s, membership repeats once s·k is a multiple
        // of the period of t.
        let q = t.period();
        let k = self.pieces.iter().fold(1, |acc, pc| lcm(acc, q / gcd(pc.step, q)));
        UpSet::from_membership(threshold, self.period * k, |x| t.contains(self.eval(x)))
    }

    /// `{x : self(x) ≠ other(x)}`.
    pub fn disagreement(&self, other: &PapMap) -> UpSet {
        let l = lcm(self.period, other.period);
        let m = self.threshold.max(other.threshold);
        let mut threshold = m;
        for rho in 0..l {
            let x1 = first_in_class_after(m, rho, l);
            let d1 = self.eval(x1) - other.eval(x1);
            let dd = (self.eval(x1 + l) - other.eval(x1 + l)) - d1;
            if dd != 0 && d1 % dd == 0 && -d1 / dd >= 0 {
                threshold = threshold.max(x1 + l * (-d1 / dd));
            }
        }
        UpSet::from_membership(threshold, l, |x| self.eval(x) != other.eval(x))
    }

    /// Whether `self` and `other` agree on `a` (`all_of_a`) or on all but
    /// finitely many points of `a`. Decided per residue class: on a class
    /// the difference is affine in the class index, so it either vanishes
    /// identically or has at most one zero.
    fn agree_on(&self, other: &PapMap, a: &UpSet, all_of_a: bool) -> bool {
        let l = lcm(lcm(self.period, other.period), a.period());
        let m = self.threshold.max(other.threshold).max(a.threshold());
        if all_of_a && !(1..=m).all(|x| !a.contains(x) || self.eval(x) == other.eval(x)) {
            return false;
        }
        (0..l).all(|rho| {
            let x1 = first_in_class_after(m, rho, l);
            !a.contains(x1) || (self.eval(x1) == other.eval(x1) && self.eval(x1 + l) == other.eval(x1 + l))
        })
    }

    pub fn equal_on(&self, other: &PapMap, a: &UpSet) -> bool {
        self.agree_on(other, a, true)
    }

    /// Whether `self` and `other` differ at only finitely many points of `a`.
    pub fn almost_equal_on(&self, other: &PapMap, a: &UpSet) -> bool {
        self.agree_on(other, a, false)
    }

    /// Slope and offset of piece `r` as reduced fractions
    /// `((num, den), (num, den))`, so that `value = slope·x + offset`.
    pub fn slope_offset(&self, r: i64) -> ((i64, i64), (i64, i64)) {
        let p = self.pieces[r as usize];
        let slope = reduce(p.step, self.period);
        let offset = reduce(p.base * self.period - p.step * r, self.period);
        (slope, offset)
    }

    /// Builds pieces from `(residue, slope, offset)` triples with rational
    /// slope and offset.
    pub fn pieces_from_rationals(
        period: i64,
        rows: &[(i64, (i64, i64), (i64, i64))],
    ) -> Result<Vec<Piece>, PapError> {
        let mut pieces: Vec<Option<Piece>> = vec![None; period.max(0) as usize];
        for &(r, (sn, sd), (on, od)) in rows {
            if r < 0 || r >= period || sd <= 0 || od <= 0 {
                return Err(PapError::MalformedLiteral(alloc::format!("bad piece for residue {r}")));
            }
            if (sn * period) % sd != 0 {
                return Err(PapError::MalformedLiteral(alloc::format!(
                    "slope {sn}/{sd} times period {period} is not integral"
                )));
            }
            let step = sn * period / sd;
            // base = slope·r + offset must be an integer
            let num = sn * r * od + on * sd;
            let den = sd * od;
            if num % den != 0 {
                return Err(PapError::MalformedLiteral(alloc::format!(
                    "piece for residue {r} does not take integer values"
                )));
            }
            if pieces[r as usize].is_some() {
                return Err(PapError::MalformedLiteral(alloc::format!("duplicate residue {r}")));
            }
            pieces[r as usize] = Some(Piece { step, base: num / den });
        }
        pieces
            .into_iter()
            .enumerate()
            .map(|(r, p)| p.ok_or_else(|| PapError::MalformedLiteral(alloc::format!("missing residue {r}"))))
            .collect()
    }
}

/// Period of the order-preserving pairing of `source` with a set whose
/// enumerator has period `ep`, optionally reindexed by `sigma`. Ranks
/// advance by the tail density per source period, and the composite
/// repeats once that advance is absorbed by the later periods.
fn transport_period(source: &UpSet, ep: i64, sigma: Option<&PapInj>) -> i64 {
    let (p, c) = (source.period(), source.tail_density());
    if c == 0 {
        return p;
    }
    let sig_p = sigma.map_or(1, |s| s.0.period);
    let k1 = sig_p / gcd(c, sig_p);
    let m0 = c * k1 / sig_p;
    let need = sigma.map_or(ep, |s| s.0.pieces.iter().fold(1, |acc, pc| lcm(acc, ep / gcd(ep, pc.step))));
    p * k1 * (lcm(m0, need) / m0)
}

fn reduce(num: i64, den: i64) -> (i64, i64) {
    let g = gcd(num, den).max(1);
    (num / g, den / g)
}

fn fmt_frac(f: &mut fmt::Formatter<'_>, (n, d): (i64, i64), always_den: bool) -> fmt::Result {
    if d == 1 && !always_den {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

impl fmt::Display for PapMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("pap{")?;
        if self.threshold > 0 {
            f.write_str("table={")?;
            for (i, v) in self.table.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}:{}", i + 1, v)?;
            }
            write!(f, "}}, N={}, ", self.threshold)?;
        }
        write!(f, "p={}, pieces=[", self.period)?;
        for r in 0..self.period {
            if r > 0 {
                f.write_str(", ")?;
            }
            let (slope, offset) = self.slope_offset(r);
            write!(f, "({r}, ")?;
            fmt_frac(f, slope, true)?;
            f.write_str(", ")?;
            fmt_frac(f, offset, false)?;
            f.write_str(")")?;
        }
        f.write_str("]}")
    }
}

/// An injective piecewise-arithmetic self-map of `ω`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PapInj(PapMap);

impl PapInj {
    /// Checks positivity and global injectivity, reporting the smallest
    /// colliding pair found.
    pub fn validate(map: PapMap) -> Result<PapInj, PapError> {
        for (i, &v) in map.table.iter().enumerate() {
            if v < 1 {
                return Err(PapError::NotPositive { x: i as i64 + 1 });
            }
        }
        let n = map.threshold;
        let p = map.period;
        let firsts: Vec<i64> = (0..p).map(|r| first_in_class_after(n, r, p)).collect();
        for &x1 in &firsts {
            if map.eval(x1) < 1 {
                return Err(PapError::NotPositive { x: x1 });
            }
        }
        // A constant class collides with itself by `x1 + p`, so the first
        // collision lies below that and a scan finds it.
        if let Some(limit) = (0..p as usize).filter(|&r| map.pieces[r].step == 0).map(|r| firsts[r] + p).min() {
            let mut seen: BTreeMap<i64, i64> = BTreeMap::new();
            for y in 1..=limit {
                if let Some(&x) = seen.get(&map.eval(y)) {
                    return Err(PapError::NotInjective { x, y });
                }
                seen.insert(map.eval(y), y);
            }
        }
        let mut collisions: Vec<(i64, i64)> = Vec::new();
        let mut seen: Vec<(i64, i64)> = map.table.iter().enumerate().map(|(i, &v)| (v, i as i64 + 1)).collect();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0].0 == w[1].0 {
                collisions.push((w[0].1.min(w[1].1), w[0].1.max(w[1].1)));
            }
        }
        // Table values against tails: a value can only lie on classes whose
        // start agrees with it modulo their step.
        let mut starts: BTreeMap<i64, BTreeMap<i64, Vec<usize>>> = BTreeMap::new();
        for r in 0..p as usize {
            let st = map.pieces[r].step;
            if st > 0 {
                starts.entry(st).or_default().entry(map.eval(firsts[r]).rem_euclid(st)).or_default().push(r);
            }
        }
        let (m, fs) = (&map, &firsts);
        for (i, &v) in map.table.iter().enumerate() {
            let tail = starts.iter().flat_map(|(&st, buckets)| {
                buckets.get(&v.rem_euclid(st)).into_iter().flatten().filter_map(move |&r| {
                    let v1 = m.eval(fs[r]);
                    (v >= v1).then(|| fs[r] + p * ((v - v1) / st))
                })
            });
            if let Some(x) = tail.min() {
                collisions.push((i as i64 + 1, x));
            }
        }
        // Tails of classes with steps s, s2 meet iff their starts agree
        // modulo gcd(s, s2); bucket by step, then by that residue.
        let mut by_step: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for r in 0..p as usize {
            by_step.entry(map.pieces[r].step).or_default().push(r);
        }
        let groups: Vec<(i64, Vec<usize>)> = by_step.into_iter().collect();
        for (gi, (s, rs)) in groups.iter().enumerate() {
            for (s2, rs2) in &groups[gi..] {
                let g = gcd(*s, *s2);
                let mut buckets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
                for &r in rs {
                    buckets.entry(map.eval(firsts[r]).rem_euclid(g)).or_default().push(r);
                }
                for &r2 in rs2 {
                    let Some(cands) = buckets.get(&map.eval(firsts[r2]).rem_euclid(g)) else {
                        continue;
                    };
                    for &r1 in cands.iter().filter(|&&r1| r1 < r2 || *s != *s2) {
                        if r1 == r2 {
                            continue;
                        }
                        let (a, s) = (map.eval(firsts[r1]), map.pieces[r1].step);
                        let (b, s2) = (map.eval(firsts[r2]), map.pieces[r2].step);
                        let t0 = if b > a { div_ceil(b - a, s) } else { 0 };
                        if let Some(y) = least_solution(a, s, b, s2, t0).map(|t| a + s * t) {
                            let x = firsts[r1] + p * ((y - a) / s);
                            let x2 = firsts[r2] + p * ((y - b) / s2);
                            collisions.push((x.min(x2), x.max(x2)));
                        }
                    }
                }
            }
        }
        // Report the first point at which injectivity fails.
        match collisions.into_iter().min_by_key(|&(x, y)| (y, x)) {
            Some((x, y)) => Err(PapError::NotInjective { x, y }),
            None => Ok(PapInj(map)),
        }
    }

    pub(crate) fn trusted(map: PapMap) -> PapInj {
        debug_assert!(PapInj::validate(map.clone()).is_ok(), "trusted map is not injective: {map}");
        PapInj(map)
    }

    pub fn as_map(&self) -> &PapMap {
        &self.0
    }

    pub fn into_map(self) -> PapMap {
        self.0
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.0.eval(x)
    }

    pub fn identity() -> PapInj {
        PapInj::affine(1, 0)
    }

    /// `x ↦ x + 1`.
    pub fn succ() -> PapInj {
        PapInj::affine(1, 1)
    }

    /// `x ↦ 2x`.
    pub fn double() -> PapInj {
        PapInj::affine(2, 0)
    }

    /// `x ↦ a·x + b` with `a ≥ 1` and `a + b ≥ 1`.
    pub fn affine(a: i64, b: i64) -> PapInj {
        assert!(a >= 1 && a + b >= 1);
        PapInj(PapMap::from_fn(0, 1, |x| a * x + b))
    }

    /// Transposes `a` and `b`, fixing everything else.
    pub fn swap(a: i64, b: i64) -> PapInj {
        assert!(a >= 1 && b >= 1);
        PapInj(PapMap::from_fn(a.max(b), 1, |x| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        }))
    }

    /// The `j`-th strand (1-based) of the standard `n`-fold interleaving,
    /// `x ↦ n·x − (j − 1)`.
    pub fn interleave(n: i64, j: i64) -> PapInj {
        assert!(n >= 1 && (1..=n).contains(&j));
        PapInj::affine(n, -(j - 1))
    }

    /// Extends a finite injective table by `x ↦ x + shift` beyond it, with
    /// `shift` large enough to avoid the table's values.
    pub fn from_finite_table(table: &[(i64, i64)]) -> Result<PapInj, PapError> {
        let n = table.iter().map(|&(x, _)| x).max().unwrap_or(0);
        let top = table.iter().map(|&(_, y)| y).max().unwrap_or(0);
        let shift = top.max(n);
        let map = PapMap::from_fn(n, 1, |x| {
            table.iter().find(|&&(a, _)| a == x).map_or(x + shift, |&(_, y)| y)
        });
        PapInj::validate(map)
    }

    /// The increasing enumeration `ω → s` of an infinite set.
    pub fn enumerate(s: &UpSet) -> Result<PapInj, PapError> {
        if s.is_finite() {
            return Err(PapError::FiniteSet);
        }
        let c = s.exceptional().len() as i64;
        let (n, p) = (s.threshold(), s.period());
        let firsts: Vec<i64> = (n + 1..=n + p).filter(|&x| s.contains(x)).collect();
        let m = firsts.len() as i64;
        Ok(PapInj::trusted(PapMap::from_fn(c, m, |k| {
            if k <= c {
                s.exceptional()[(k - 1) as usize]
            } else {
                let j = k - c - 1;
                firsts[(j % m) as usize] + p * (j / m)
            }
        })))
    }

    pub fn compose(&self, inner: &PapInj) -> PapInj {
        PapInj::trusted(self.0.compose(&inner.0))
    }

    pub fn image(&self, s: &UpSet) -> UpSet {
        self.0.image_of(s)
    }

    pub fn range(&self) -> UpSet {
        self.0.image_of(&UpSet::omega())
    }

    pub fn preimage(&self, t: &UpSet) -> UpSet {
        self.0.preimage(t)
    }

    pub fn equal_on(&self, other: &PapInj, a: &UpSet) -> bool {
        self.0.equal_on(&other.0, a)
    }

    /// Membership in `ℳ_A`.
    pub fn fixes_pointwise(&self, a: &UpSet) -> bool {
        self.0.equal_on(&PapInj::identity().0, a)
    }

    pub fn is_bijective(&self) -> bool {
        self.range() == UpSet::omega()
    }

    /// The unique `x` with `self(x) = y`, if any.
    pub fn preimage_point(&self, y: i64) -> Option<i64> {
        let m = &self.0;
        if let Some(i) = m.table.iter().position(|&v| v == y) {
            return Some(i as i64 + 1);
        }
        (0..m.period).find_map(|r| {
            let x1 = first_in_class_after(m.threshold, r, m.period);
            let v1 = m.eval(x1);
            let st = m.pieces[r as usize].step;
            (y >= v1 && (y - v1) % st == 0).then(|| x1 + m.period * ((y - v1) / st))
        })
    }

    /// The inverse on the image, `0` off the image.
    pub fn partial_inverse(&self) -> PapMap {
        let m = &self.0;
        let mut threshold = m.table.iter().copied().max().unwrap_or(0);
        let mut period = 1;
        for r in 0..m.period {
            let x1 = first_in_class_after(m.threshold, r, m.period);
            threshold = threshold.max(m.eval(x1));
            period = lcm(period, m.pieces[r as usize].step);
        }
        let by_value: BTreeMap<i64, i64> = m.table.iter().enumerate().map(|(i, &v)| (v, i as i64 + 1)).collect();
        // The tails are disjoint progressions, so each residue mod the lcm of
        // the steps belongs to at most one class.
        let mut owner: Vec<Option<(i64, i64, i64)>> = vec![None; period as usize];
        for r in 0..m.period {
            let st = m.pieces[r as usize].step;
            if st == 0 {
                continue;
            }
            let x1 = first_in_class_after(m.threshold, r, m.period);
            let v1 = m.eval(x1);
            for rho in (v1.rem_euclid(st)..period).step_by(st as usize) {
                owner[rho as usize] = Some((x1, v1, st));
            }
        }
        PapMap::from_fn(threshold, period, |y| {
            if let Some(&x) = by_value.get(&y) {
                return x;
            }
            match owner[y.rem_euclid(period) as usize] {
                Some((x1, v1, st)) if y >= v1 => x1 + m.period * ((y - v1) / st),
                _ => 0,
            }
        })
    }

    /// A bijection `h` agreeing with `self` on the co-infinite set `a`:
    /// `self` on `a`, and the order-preserving bijection
    /// `ω∖a → ω∖self(a)` elsewhere.
    pub fn agreeing_bijection(&self, a: &UpSet) -> Result<PapInj, PapError> {
        if !a.is_coinfinite() {
            return Err(PapError::NotCoinfinite);
        }
        let rest = self.image(a).complement();
        let off = PapMap::transport(&a.complement(), &rest, None)?;
        Ok(PapInj::trusted(PapMap::piecewise(a, &self.0, &off)))
    }
}

impl fmt::Display for PapInj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of `Inj(n × ω, ω)`, stored as `n` injections with pairwise
/// disjoint images; `(j, t) ↦ components[j](t)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InjN {
    components: Vec<PapInj>,
}

impl InjN {
    pub fn new(components: Vec<PapInj>) -> Result<InjN, PapError> {
        let images: Vec<UpSet> = components.iter().map(PapInj::range).collect();
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if !images[i].is_disjoint(&images[j]) {
                    return Err(PapError::OverlappingComponents { i, j });
                }
            }
        }
        Ok(InjN { components })
    }

    pub(crate) fn trusted(components: Vec<PapInj>) -> InjN {
        InjN { components }
    }

    /// The operad unit.
    pub fn identity() -> InjN {
        InjN {
            components: vec![PapInj::identity()],
        }
    }

    /// The standard `n`-fold interleaving.
    pub fn interleave(n: i64) -> InjN {
        InjN {
            components: (1..=n).map(|j| PapInj::interleave(n, j)).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    /// `f ∘ ι_j` (0-based `j`).
    pub fn component(&self, j: usize) -> &PapInj {
        &self.components[j]
    }

    pub fn components(&self) -> &[PapInj] {
        &self.components
    }

    /// Operadic composition: the `(j, i)`-th component of the result is
    /// `outer_j ∘ inner_j,i`, listed in lexicographic order.
    pub fn operad_compose(&self, inners: &[InjN]) -> InjN {
        assert_eq!(inners.len(), self.arity(), "one inner operation per input");
        let components = self
            .components
            .iter()
            .zip(inners)
            .flat_map(|(outer, inner)| inner.components.iter().map(move |c| outer.compose(c)))
            .collect();
        InjN::trusted(components)
    }

    /// `f ∘ (u_1 ⊔ … ⊔ u_n)`.
    pub fn precompose(&self, us: &[PapInj]) -> InjN {
        assert_eq!(us.len(), self.arity());
        InjN::trusted(self.components.iter().zip(us).map(|(c, u)| c.compose(u)).collect())
    }

    /// `g ∘ f`.
    pub fn postcompose(&self, g: &PapInj) -> InjN {
        InjN::trusted(self.components.iter().map(|c| g.compose(c)).collect())
    }
}

impl fmt::Display for InjN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("injn[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn agreement_matches_disagreement_set() {
        let maps = [
            PapInj::identity(),
            PapInj::succ(),
            PapInj::swap(2, 4),
            PapInj::affine(2, 0),
            PapInj::double().compose(&PapInj::swap(1, 3)),
        ];
        let sets = [UpSet::evens(), UpSet::odds(), UpSet::finite([1, 2, 3]), UpSet::greater_than(5)];
        for u in &maps {
            for v in &maps {
                let d = u.as_map().disagreement(v.as_map());
                for a in &sets {
                    assert_eq!(u.equal_on(v, a), d.is_disjoint(a));
                    assert_eq!(u.as_map().almost_equal_on(v.as_map(), a), d.intersect(a).is_finite());
                }
            }
        }
        // x and 2x - 1000 cross at 1000 only
        let far = PapMap::from_fn(0, 1, |x| 2 * x - 1000);
        let id = PapInj::identity();
        assert!(!id.as_map().equal_on(&far, &UpSet::greater_than(0)));
        assert!(!id.as_map().almost_equal_on(&far, &UpSet::evens()));
        assert!(id.as_map().equal_on(&far, &UpSet::finite([1000])));
    }

    #[test]
    fn validate_examples() {
        assert!(PapInj::validate(PapInj::double().into_map()).is_ok());
        let bad = PapMap::from_parts(vec![1, 1], 1, vec![Piece { step: 1, base: 0 }]).unwrap();
        assert_eq!(PapInj::validate(bad), Err(PapError::NotInjective { x: 1, y: 2 }));
        // 2x on evens, 2x - 2 on odds past the table {1 ↦ 1}: 2·2 = 2·3 − 2.
        let pieces = vec![Piece { step: 4, base: 0 }, Piece { step: 4, base: 0 }];
        let clash = PapMap::from_parts(vec![1], 2, pieces).unwrap();
        assert_eq!(clash.eval(2), 4);
        assert_eq!(clash.eval(3), 4);
        assert_eq!(PapInj::validate(clash), Err(PapError::NotInjective { x: 2, y: 3 }));
    }

    #[test]
    fn compose_examples() {
        let c = PapInj::double().compose(&PapInj::succ());
        assert_eq!(c, PapInj::affine(2, 2));
        assert_eq!(c.to_string(), "pap{p=1, pieces=[(0, 2/1, 2)]}");
        let u = PapInj::swap(1, 2).compose(&PapInj::succ());
        for x in 1..=100 {
            let expected = if x == 1 { 1 } else { x + 1 };
            assert_eq!(u.eval(x), expected);
        }
        assert_eq!(u.as_map().threshold(), 1);
        assert_eq!(PapInj::identity().compose(&u), u);
    }

    #[test]
    fn image_examples() {
        assert_eq!(PapInj::double().range(), UpSet::evens());
        assert_eq!(PapInj::succ().range(), UpSet::greater_than(1));
        let img = PapInj::double().image(&UpSet::odds());
        let expected = UpSet::residue_class(4, &[2]).unwrap();
        assert_eq!(img, expected);
        for x in (1..=199).step_by(2) {
            assert!(img.contains(2 * x));
        }
    }

    #[test]
    fn equal_on_examples() {
        assert!(PapInj::identity().equal_on(&PapInj::succ(), &UpSet::empty()));
        assert!(PapInj::double().equal_on(&PapInj::double(), &UpSet::omega()));
        // swap(1, 2) moves 2, which is even.
        assert!(!PapInj::identity().equal_on(&PapInj::swap(1, 2), &UpSet::evens()));
        let disagree: alloc::vec::Vec<i64> = (1..=50)
            .filter(|&x| x % 2 == 0 && PapInj::swap(1, 2).eval(x) != x)
            .collect();
        assert_eq!(disagree, alloc::vec![2]);
    }

    #[test]
    fn enumerator_examples() {
        assert_eq!(UpSet::evens().enumerator().unwrap(), PapInj::double());
        assert_eq!(UpSet::omega().enumerator().unwrap(), PapInj::identity());
        let s = UpSet::residue_class(4, &[3]).unwrap();
        let e = s.enumerator().unwrap();
        assert_eq!(e, PapInj::affine(4, -1));
        let brute: alloc::vec::Vec<i64> = (1..=400).filter(|x| x % 4 == 3).take(100).collect();
        for (k, &v) in brute.iter().enumerate() {
            assert_eq!(e.eval(k as i64 + 1), v);
        }
        assert_eq!(UpSet::finite([1]).enumerator(), Err(PapError::FiniteSet));
    }

    #[test]
    fn agreeing_bijection_examples() {
        let h = PapInj::identity().agreeing_bijection(&UpSet::evens()).unwrap();
        assert_eq!(h, PapInj::identity());
        let h = PapInj::double().agreeing_bijection(&UpSet::evens()).unwrap();
        assert!(h.is_bijective());
        assert_eq!(h.eval(1), 1);
        for k in 1..=100 {
            assert_eq!(h.eval(2 * k), 4 * k);
        }
        let mut seen = std::collections::BTreeSet::new();
        for x in 1..=200 {
            assert!(seen.insert(h.eval(x)));
        }
        assert_eq!(h.image(&UpSet::odds()), UpSet::residue_class(4, &[0]).unwrap().complement());
        let h = PapInj::succ().agreeing_bijection(&UpSet::empty()).unwrap();
        assert_eq!(h, PapInj::identity());
        assert_eq!(
            PapInj::succ().agreeing_bijection(&UpSet::greater_than(3)),
            Err(PapError::NotCoinfinite)
        );
    }

    #[test]
    fn operad_examples() {
        let w = InjN::interleave(3);
        assert_eq!(InjN::identity().operad_compose(&[w.clone()]), w);
        let two = InjN::interleave(2);
        assert_eq!(two.component(0), &PapInj::double());
        assert_eq!(two.component(1), &PapInj::affine(2, -1));
        assert_eq!(two.operad_compose(&[InjN::identity(), InjN::identity()]), two);
        let c = two.operad_compose(&[two.clone(), InjN::identity()]);
        let expect = [PapInj::affine(4, 0), PapInj::affine(4, -2), PapInj::affine(2, -1)];
        for (j, e) in expect.iter().enumerate() {
            for x in 1..=50 {
                assert_eq!(c.component(j).eval(x), e.eval(x));
            }
        }
        assert!(InjN::new(vec![PapInj::identity(), PapInj::double()]).is_err());
    }

    #[test]
    fn partial_inverse_roundtrip() {
        let u = PapInj::enumerate(&UpSet::residue_class(5, &[1, 4]).unwrap()).unwrap().compose(&PapInj::swap(2, 7));
        let inv = u.partial_inverse();
        for x in 1..200 {
            assert_eq!(inv.eval(u.eval(x)), x);
        }
        let img = u.range();
        for y in 1..300 {
            if !img.contains(y) {
                assert_eq!(inv.eval(y), 0);
            }
        }
    }

    #[test]
    fn literal_offsets() {
        let e = PapInj::enumerate(&UpSet::residue_class(4, &[0, 2, 3]).unwrap()).unwrap();
        // slope 4/3 on every class
        for r in 0..e.as_map().period() {
            assert_eq!(e.as_map().slope_offset(r).0, (4, 3));
        }
        let rows: alloc::vec::Vec<_> = (0..e.as_map().period())
            .map(|r| {
                let (s, o) = e.as_map().slope_offset(r);
                (r, s, o)
            })
            .collect();
        let pieces = PapMap::pieces_from_rationals(e.as_map().period(), &rows).unwrap();
        let rebuilt = PapMap::from_parts(e.as_map().table().to_vec(), e.as_map().period(), pieces).unwrap();
        assert_eq!(&rebuilt, e.as_map());
    }
}
