//! Truncated families `E Inj(A, ω)` and `E ℳ` with bounded element pools,
//! as used by the `*`-module check.

use std::fmt;

use mildset_core::emss::{bounded_injections, simplices_over, Filter};
use mildset_core::operadic::{phi_inverse_of, star_module_check, StarModuleReport};
use mildset_core::{MElt, OperadicClass, PapInj, Simplex, UpSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    /// `Inj(A, ω)` for a finite `A`.
    Inj(Vec<i64>),
    SelfM,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub base: Base,
    pub degree: usize,
    pub filter: Option<Filter>,
}

/// The bounded pool of `ℳ` used wherever `E ℳ` is enumerated: the maps
/// `x ↦ ax + b` for `1 ≤ a ≤ 3`, `0 ≤ b ≤ 2`, and two finite twists.
pub fn selfm_pool() -> Vec<PapInj> {
    let mut out = Vec::new();
    for a in 1..=3 {
        for b in 0..=2 {
            out.push(PapInj::affine(a, b));
        }
    }
    let sw = PapInj::swap(1, 2);
    out.push(sw.clone());
    out.push(sw.compose(&PapInj::double()));
    out
}

impl FamilySpec {
    pub fn pool(&self, entry_bound: i64) -> Vec<MElt> {
        let all: Vec<MElt> = match &self.base {
            Base::Inj(a) => bounded_injections(a, entry_bound).into_iter().map(MElt::Inj).collect(),
            Base::SelfM => selfm_pool().into_iter().map(MElt::SelfM).collect(),
        };
        all.into_iter()
            .filter(|x| match self.filter {
                None => true,
                Some(Filter::Mu) => x.is_mild(),
                Some(Filter::Tau) => x.classify() == mildset_core::Classification::Tame,
            })
            .collect()
    }

    /// All simplices of degree at most `self.degree` over the pool.
    pub fn simplices(&self, entry_bound: i64) -> Vec<Simplex> {
        let pool = self.pool(entry_bound);
        if pool.is_empty() {
            return Vec::new();
        }
        (0..=self.degree).flat_map(|n| simplices_over(&pool, n)).collect()
    }

    /// Runs the `*`-module check on every simplex of the family within the
    /// bounds. Pairs of classes with equal `Φ`-image come from the defining
    /// relation applied to the `Φ⁻¹`-preimage of each mild sample.
    pub fn star_module(&self, entry_bound: i64) -> StarModuleReport {
        let samples = self.simplices(entry_bound);
        let mut classes: Vec<OperadicClass> = Vec::new();
        for x in samples.iter().filter(|x| x.is_coinfinitely_supported()) {
            let star = Simplex::constant(MElt::Point, x.degree());
            let Ok(c) = phi_inverse_of(&[x.clone(), star]) else {
                continue;
            };
            let us: Vec<Vec<PapInj>> = (0..=x.degree())
                .map(|k| vec![PapInj::affine(2, k as i64 % 2), PapInj::succ()])
                .collect();
            classes.push(c.precompose_frame(&us));
            classes.push(c.act_payload(&us));
        }
        star_module_check(&samples, &classes)
    }

    /// Default entry bound for enumerating the pool.
    pub fn default_bound(&self) -> i64 {
        match &self.base {
            Base::Inj(a) if a.len() > 1 => 6,
            _ => 10,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Base::Inj(a) => write!(f, "EInj{{A={}, D={}}}", UpSet::finite(a.iter().copied()), self.degree)?,
            Base::SelfM => write!(f, "ESelfM{{D={}}}", self.degree)?,
        }
        match self.filter {
            None => Ok(()),
            Some(Filter::Mu) => f.write_str("^mu"),
            Some(Filter::Tau) => f.write_str("^tau"),
        }
    }
}
