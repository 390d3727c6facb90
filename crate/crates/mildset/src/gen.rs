//! Seeded random generators for sets, injections and elements.
//!
//! Injections have threshold at most 16 and period at most the period
//! bound; sets have threshold at most 8.

use mildset_core::mset::InjElt;
use mildset_core::{MElt, PapInj, PapMap, Simplex, UpSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_SET_THRESHOLD: i64 = 8;
pub const MAX_MAP_THRESHOLD: i64 = 16;

/// Largest period accepted for a random map fixing a set.
const MAX_FIXING_PERIOD: i64 = 2048;

/// The kinds of `ℳ`-set element drawn by [`Gen::elt`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EltKind {
    /// `Inj({1,…,a}, ω)` with values at most the entry bound.
    FiniteInj(usize),
    /// `Inj(D, ω)` for a random infinite `D`.
    InfiniteInj,
    /// `ℳ` acting on itself, restricted to maps with co-infinite image.
    SelfMild,
    /// `ℳ` acting on itself.
    SelfAny,
    Warn,
    /// Pairs of mild elements.
    Pair,
}

pub const MILD_KINDS: [EltKind; 5] = [
    EltKind::FiniteInj(1),
    EltKind::FiniteInj(2),
    EltKind::InfiniteInj,
    EltKind::SelfMild,
    EltKind::Pair,
];

pub struct Gen {
    rng: ChaCha8Rng,
    pub period_bound: i64,
    pub entry_bound: i64,
}

impl Gen {
    pub fn new(seed: u64, period_bound: i64, entry_bound: i64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            period_bound: period_bound.max(1),
            entry_bound: entry_bound.max(4),
        }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.index(xs.len())]
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        xs.shuffle(&mut self.rng);
    }

    pub fn upset(&mut self) -> UpSet {
        let n = self.range(0, MAX_SET_THRESHOLD);
        let p = self.range(1, self.period_bound);
        let exc: Vec<i64> = (1..=n).filter(|_| self.coin()).collect();
        let res: Vec<i64> = (0..p).filter(|_| self.coin()).collect();
        UpSet::new(n, &exc, p, &res).expect("generated fields are well formed")
    }

    pub fn finite_set(&mut self, max_elem: i64, max_size: usize) -> UpSet {
        let size = self.index(max_size + 1);
        UpSet::finite((0..size).map(|_| self.range(1, max_elem)))
    }

    fn set_where(&mut self, ok: impl Fn(&UpSet) -> bool) -> UpSet {
        loop {
            let s = self.upset();
            if ok(&s) {
                return s;
            }
        }
    }

    pub fn infinite_set(&mut self) -> UpSet {
        self.set_where(UpSet::is_infinite)
    }

    pub fn coinfinite_set(&mut self) -> UpSet {
        self.set_where(UpSet::is_coinfinite)
    }

    /// Infinite with infinite complement.
    pub fn bi_infinite_set(&mut self) -> UpSet {
        self.set_where(|s| s.is_infinite() && s.is_coinfinite())
    }

    /// A permutation of `{1,…,8}` moving a handful of points.
    pub fn finite_perm(&mut self) -> PapInj {
        let k = self.index(5) + 2;
        let mut pts: Vec<i64> = (1..=8).collect();
        self.shuffle(&mut pts);
        let from: Vec<i64> = pts[..k].to_vec();
        let mut to = from.clone();
        self.shuffle(&mut to);
        let map = PapMap::from_fn(8, 1, |x| match from.iter().position(|&p| p == x) {
            Some(i) => to[i],
            None => x,
        });
        PapInj::validate(map).expect("a permutation")
    }

    pub fn affine(&mut self) -> PapInj {
        let a = self.range(1, 4);
        let b = self.range(0, 8);
        PapInj::affine(a, b)
    }

    fn simple_inj(&mut self) -> PapInj {
        match self.index(5) {
            0 => self.affine(),
            1 => {
                let s = self.infinite_set();
                PapInj::enumerate(&s).expect("infinite")
            }
            2 => {
                let (p, u) = (self.finite_perm(), self.affine());
                if self.coin() {
                    p.compose(&u)
                } else {
                    u.compose(&p)
                }
            }
            3 => {
                let u = self.affine();
                let a = self.coinfinite_set();
                u.agreeing_bijection(&a).expect("co-infinite")
            }
            _ => {
                let a = self.coinfinite_set();
                self.fixing(&a)
            }
        }
    }

    fn bounded(&self, u: &PapInj) -> bool {
        u.as_map().period() <= self.period_bound && u.as_map().threshold() <= MAX_MAP_THRESHOLD
    }

    pub fn inj(&mut self) -> PapInj {
        loop {
            let u = if self.chance(0.3) {
                let (a, b) = (self.simple_inj(), self.simple_inj());
                a.compose(&b)
            } else {
                self.simple_inj()
            };
            if self.bounded(&u) {
                return u;
            }
        }
    }

    /// An injection whose image is co-infinite.
    pub fn mild_inj(&mut self) -> PapInj {
        loop {
            let u = self.inj();
            if u.range().is_coinfinite() {
                return u;
            }
            let s = self.bi_infinite_set();
            let v = PapInj::enumerate(&s).expect("infinite").compose(&u);
            if self.bounded(&v) {
                return v;
            }
        }
    }

    /// A bijection of `ω`.
    pub fn bijection(&mut self) -> PapInj {
        loop {
            let u = match self.index(3) {
                0 => self.finite_perm(),
                1 => {
                    let (u, a) = (self.inj(), self.coinfinite_set());
                    u.agreeing_bijection(&a).expect("co-infinite")
                }
                _ => {
                    let s = self.bi_infinite_set();
                    let sc = s.complement();
                    PapInj::validate(PapMap::piecewise(
                        &s,
                        &PapMap::transport(&s, &sc, None).expect("infinite"),
                        &PapMap::transport(&sc, &s, None).expect("infinite"),
                    ))
                    .expect("exchanging a set with its complement")
                }
            };
            if self.bounded(&u) && u.is_bijective() {
                return u;
            }
        }
    }

    /// A random element of `ℳ_A`.
    pub fn fixing(&mut self, a: &UpSet) -> PapInj {
        let ac = a.complement();
        if ac.is_empty() {
            return PapInj::identity();
        }
        if ac.is_finite() {
            let pts = ac.exceptional().to_vec();
            let mut to = pts.clone();
            self.shuffle(&mut to);
            let n = *pts.last().unwrap();
            let map = PapMap::from_fn(n, 1, |x| match pts.iter().position(|&p| p == x) {
                Some(i) => to[i],
                None => x,
            });
            return PapInj::validate(map).expect("a permutation of the complement");
        }
        if ac.period() > MAX_FIXING_PERIOD || ac.threshold() > MAX_FIXING_PERIOD {
            // Enumerating such a complement is too costly; permute a few of
            // its early points instead.
            let pts: Vec<i64> = (1..=6).filter_map(|k| ac.nth(k)).collect();
            let mut to = pts.clone();
            self.shuffle(&mut to);
            let n = *pts.last().unwrap();
            let map = PapMap::from_fn(n, 1, |x| match pts.iter().position(|&p| p == x) {
                Some(i) => to[i],
                None => x,
            });
            return PapInj::validate(map).expect("a permutation of early points");
        }
        for attempt in 0.. {
            let plain = attempt >= 20;
            let target = if plain || self.coin() {
                ac.clone()
            } else {
                let t = ac.intersect(&self.infinite_set());
                if t.is_finite() {
                    continue;
                }
                t
            };
            let sigma = if plain || self.coin() { None } else { Some(self.inj()) };
            let off = PapMap::transport(&ac, &target, sigma.as_ref()).expect("infinite target");
            // Periods multiply under transport; keep the result usable.
            if !plain && off.period() > MAX_FIXING_PERIOD {
                continue;
            }
            let g = PapInj::validate(PapMap::piecewise(a, PapInj::identity().as_map(), &off))
                .expect("disjoint pieces are injective");
            if plain || self.bounded(&g) || self.chance(0.2) {
                return g;
            }
        }
        unreachable!()
    }

    /// An injection `{1,…,a} → {1,…,entry_bound}`.
    pub fn finite_inj(&mut self, a: usize) -> InjElt {
        let mut vals: Vec<i64> = (1..=self.entry_bound).collect();
        self.shuffle(&mut vals);
        let table: Vec<(i64, i64)> = (1..=a as i64).zip(vals).collect();
        InjElt::from_table(&table).expect("distinct values")
    }

    pub fn elt(&mut self, kind: EltKind) -> MElt {
        match kind {
            EltKind::FiniteInj(a) => MElt::Inj(self.finite_inj(a)),
            EltKind::InfiniteInj => {
                let d = self.infinite_set();
                let u = self.inj();
                MElt::Inj(InjElt::new(d, u.as_map()).expect("restriction of an injection"))
            }
            EltKind::SelfMild => MElt::SelfM(self.mild_inj()),
            EltKind::SelfAny => {
                if self.chance(0.3) {
                    MElt::SelfM(self.bijection())
                } else {
                    MElt::SelfM(self.inj())
                }
            }
            EltKind::Warn => MElt::Warn(self.inj()),
            EltKind::Pair => {
                let k1 = *self.pick(&MILD_KINDS[..4]);
                let k2 = *self.pick(&MILD_KINDS[..4]);
                MElt::Tuple(vec![self.elt(k1), self.elt(k2)])
            }
        }
    }

    pub fn mild_elt(&mut self) -> MElt {
        let k = *self.pick(&MILD_KINDS);
        self.elt(k)
    }

    /// A simplex of the given degree with coordinates of one kind.
    pub fn simplex(&mut self, kind: EltKind, degree: usize) -> Simplex {
        Simplex::new((0..=degree).map(|_| self.elt(kind)).collect())
    }

    pub fn injs(&mut self, n: usize) -> Vec<PapInj> {
        (0..n).map(|_| self.inj()).collect()
    }

    /// A co-infinite set containing `s`, when `s` is co-infinite.
    pub fn coinfinite_superset(&mut self, s: &UpSet) -> Option<UpSet> {
        if !s.is_coinfinite() {
            return None;
        }
        // Keep the period near that of `s`, so that maps built from the
        // superset stay small.
        let cap = s.period().max(self.period_bound);
        for _ in 0..20 {
            let t = s.union(&self.upset());
            if t.is_coinfinite() && t.period() <= cap {
                return Some(t);
            }
        }
        Some(s.clone())
    }
}
