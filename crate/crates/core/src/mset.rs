//! Built-in `ℳ`-sets, their action, and exact support decisions.
//!
//! Every element carries a [`SupportProfile`]: a *strict* set that any
//! supporting set must contain, and a *loose* set that a supporting set
//! must contain up to finitely many points. For all families here,
//! `x` is supported on `A` iff `|ω∖A| ≤ 1`, or `strict ⊆ A` and
//! `loose ∖ A` is finite.
//!
//! * `Inj(D, ω)` and `ℳ` acting on itself: strict = image, loose = ∅.
//!   A point `y` of the image outside `A` is moved by a cycle or shift of
//!   `ω∖A` whenever `|ω∖A| ≥ 2`; if `|ω∖A| ≤ 1` then `ℳ_A = {id}`.
//! * The quotient `ℳ/∼` (agreement on almost all even arguments):
//!   strict = ∅, loose = `u(evens)`. `g.[u] = [u]` iff `g` fixes almost
//!   all of `u(evens)`, and a shift along an infinite `ω∖A` moves every
//!   point of it.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::pap::{PapError, PapInj, PapMap};
use crate::upset::UpSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MSetError {
    Pap(PapError),
    NotInjectiveOnDomain { x: i64, y: i64 },
    NotPositive { x: i64 },
    PreconditionFailed(&'static str),
    VerificationFailed(String),
    SearchExhausted(i64),
}

impl fmt::Display for MSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MSetError::Pap(e) => e.fmt(f),
            MSetError::NotInjectiveOnDomain { x, y } => {
                write!(f, "not injective on its domain: {x} and {y} collide")
            }
            MSetError::NotPositive { x } => write!(f, "value at {x} is not positive"),
            MSetError::PreconditionFailed(what) => write!(f, "precondition failed: {what}"),
            MSetError::VerificationFailed(what) => write!(f, "verification failed: {what}"),
            MSetError::SearchExhausted(depth) => {
                write!(f, "search exhausted up to period {depth}")
            }
        }
    }
}

impl core::error::Error for MSetError {}

impl From<PapError> for MSetError {
    fn from(e: PapError) -> Self {
        MSetError::Pap(e)
    }
}

/// An injection `D → ω` for an ultimately periodic domain `D`, stored as a
/// map that is `0` off `D`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InjElt {
    domain: UpSet,
    map: PapMap,
}

impl InjElt {
    pub fn new(domain: UpSet, map: &PapMap) -> Result<InjElt, MSetError> {
        let map = map.restrict_to(&domain);
        if domain.is_finite() {
            let pts = domain.exceptional();
            for (i, &x) in pts.iter().enumerate() {
                if map.eval(x) < 1 {
                    return Err(MSetError::NotPositive { x });
                }
                if let Some(&y) = pts[..i].iter().find(|&&y| map.eval(y) == map.eval(x)) {
                    return Err(MSetError::NotInjectiveOnDomain { x: y, y: x });
                }
            }
        } else {
            let e = PapInj::enumerate(&domain)?;
            match PapInj::validate(map.compose(e.as_map())) {
                Ok(_) => {}
                Err(PapError::NotInjective { x, y }) => {
                    return Err(MSetError::NotInjectiveOnDomain {
                        x: e.eval(x),
                        y: e.eval(y),
                    })
                }
                Err(PapError::NotPositive { x }) => return Err(MSetError::NotPositive { x: e.eval(x) }),
                Err(other) => return Err(other.into()),
            }
        }
        Ok(InjElt { domain, map })
    }

    /// An injection with finite domain given by its graph.
    pub fn from_table(table: &[(i64, i64)]) -> Result<InjElt, MSetError> {
        let domain = UpSet::finite(table.iter().map(|&(x, _)| x));
        if domain.cardinality() != Some(table.len() as u64) {
            return Err(MSetError::PreconditionFailed("repeated domain point"));
        }
        let n = domain.threshold();
        let map = PapMap::from_fn(n, 1, |x| {
            table.iter().find(|&&(a, _)| a == x).map_or(0, |&(_, y)| y)
        });
        InjElt::new(domain, &map)
    }

    pub fn domain(&self) -> &UpSet {
        &self.domain
    }

    pub fn map(&self) -> &PapMap {
        &self.map
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.map.eval(x)
    }

    pub fn image(&self) -> UpSet {
        self.map.image_of(&self.domain)
    }

    pub fn postcompose(&self, f: &PapInj) -> InjElt {
        InjElt {
            domain: self.domain.clone(),
            map: f.as_map().compose(&self.map),
        }
    }

    /// The finite graph, if the domain is finite.
    pub fn table(&self) -> Option<Vec<(i64, i64)>> {
        self.domain
            .is_finite()
            .then(|| self.domain.exceptional().iter().map(|&x| (x, self.eval(x))).collect())
    }
}

impl fmt::Display for InjElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.table() {
            Some(t) => {
                f.write_str("inj{A=[")?;
                for (i, (x, _)) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("], table={")?;
                for (i, (x, y)) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}:{y}")?;
                }
                f.write_str("}}")
            }
            None => write!(f, "inj{{A={}, map={}}}", self.domain, self.map),
        }
    }
}

/// An element of one of the built-in `ℳ`-sets.
#[derive(Clone, Debug)]
pub enum MElt {
    Inj(InjElt),
    SelfM(PapInj),
    /// A class of `ℳ/∼`, by representative.
    Warn(PapInj),
    /// The unique element of the terminal `ℳ`-set.
    Point,
    Tuple(Vec<MElt>),
}

impl PartialEq for MElt {
    fn eq(&self, other: &MElt) -> bool {
        match (self, other) {
            (MElt::Inj(a), MElt::Inj(b)) => a == b,
            (MElt::SelfM(a), MElt::SelfM(b)) => a == b,
            (MElt::Warn(a), MElt::Warn(b)) => warn_equivalent(a, b),
            (MElt::Point, MElt::Point) => true,
            (MElt::Tuple(a), MElt::Tuple(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for MElt {}

/// `u ∼ v` iff they agree on all but finitely many even numbers.
pub fn warn_equivalent(u: &PapInj, v: &PapInj) -> bool {
    u.as_map().almost_equal_on(v.as_map(), &UpSet::evens())
}

impl fmt::Display for MElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MElt::Inj(i) => i.fmt(f),
            MElt::SelfM(u) => write!(f, "selfm{{{u}}}"),
            MElt::Warn(u) => write!(f, "warn{{{u}}}"),
            MElt::Point => f.write_str("*"),
            MElt::Tuple(xs) => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    x.fmt(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportProfile {
    pub strict: UpSet,
    pub loose: UpSet,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Support {
    Least(UpSet),
    NoMinimal,
}

impl Support {
    pub fn least(&self) -> Option<&UpSet> {
        match self {
            Support::Least(s) => Some(s),
            Support::NoMinimal => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Tame,
    MildNotTame,
    NotMild,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Tame => "Tame",
            Classification::MildNotTame => "MildNotTame",
            Classification::NotMild => "NotMild",
        })
    }
}

impl MElt {
    pub fn inj(table: &[(i64, i64)]) -> Result<MElt, MSetError> {
        InjElt::from_table(table).map(MElt::Inj)
    }

    pub fn act(&self, f: &PapInj) -> MElt {
        match self {
            MElt::Inj(i) => MElt::Inj(i.postcompose(f)),
            MElt::SelfM(u) => MElt::SelfM(f.compose(u)),
            MElt::Warn(u) => MElt::Warn(f.compose(u)),
            MElt::Point => MElt::Point,
            MElt::Tuple(xs) => MElt::Tuple(xs.iter().map(|x| x.act(f)).collect()),
        }
    }

    pub fn profile(&self) -> SupportProfile {
        match self {
            MElt::Inj(i) => SupportProfile {
                strict: i.image(),
                loose: UpSet::empty(),
            },
            MElt::SelfM(u) => SupportProfile {
                strict: u.range(),
                loose: UpSet::empty(),
            },
            MElt::Warn(u) => SupportProfile {
                strict: UpSet::empty(),
                loose: u.image(&UpSet::evens()),
            },
            MElt::Point => SupportProfile {
                strict: UpSet::empty(),
                loose: UpSet::empty(),
            },
            MElt::Tuple(xs) => {
                let mut strict = UpSet::empty();
                let mut loose = UpSet::empty();
                for p in xs.iter().map(MElt::profile) {
                    strict = strict.union(&p.strict);
                    loose = loose.union(&p.loose);
                }
                SupportProfile { strict, loose }
            }
        }
    }

    /// Whether `ℳ_A` fixes `self`.
    pub fn is_supported_on(&self, a: &UpSet) -> bool {
        if a.cosize().is_some_and(|c| c <= 1) {
            return true;
        }
        let p = self.profile();
        p.strict.is_subset(a) && p.loose.difference(a).is_finite()
    }

    /// The least supporting set among those with at least two points
    /// outside. For elements supported only on sets with `|ω∖A| ≤ 1`
    /// (such as bijections in `ℳ`) this reports the strict part of the
    /// profile, e.g. `ω` for the identity.
    pub fn minimal_support(&self) -> Support {
        let p = self.profile();
        if p.loose.difference(&p.strict).is_finite() {
            Support::Least(p.strict.union(&p.loose))
        } else {
            Support::NoMinimal
        }
    }

    pub fn classify(&self) -> Classification {
        let p = self.profile();
        let k = p.strict.union(&p.loose);
        if k.is_finite() {
            Classification::Tame
        } else if k.is_coinfinite() {
            Classification::MildNotTame
        } else {
            Classification::NotMild
        }
    }

    pub fn is_mild(&self) -> bool {
        self.classify() != Classification::NotMild
    }

    /// An element of `ℳ_A` that moves `self`, when `self` is not supported
    /// on `A`.
    pub fn unsupport_witness(&self, a: &UpSet) -> Option<PapInj> {
        if self.is_supported_on(a) {
            return None;
        }
        let g = move_all(&a.complement());
        debug_assert!(self.act(&g) != *self);
        Some(g)
    }
}

/// A map fixing `ω∖c` pointwise and moving every point of `c`
/// (`|c| ≥ 2`): a cycle if `c` is finite, a shift along `c` otherwise.
pub fn move_all(c: &UpSet) -> PapInj {
    if c.is_finite() {
        let pts = c.exceptional();
        assert!(pts.len() >= 2);
        let n = *pts.last().unwrap();
        PapInj::validate(PapMap::from_fn(n, 1, |x| match pts.iter().position(|&p| p == x) {
            Some(i) => pts[(i + 1) % pts.len()],
            None => x,
        }))
        .expect("cycle is injective")
    } else {
        let shift = PapMap::transport(c, c, Some(&PapInj::succ())).expect("infinite target");
        PapInj::validate(PapMap::piecewise(&c.complement(), PapInj::identity().as_map(), &shift))
            .expect("shift is injective")
    }
}

/// The `ℳ`-sets with built-in structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MSetFamily {
    /// `Inj(D, ω)`.
    Inj(UpSet),
    SelfM,
    Warning,
    Terminal,
    Product(Vec<MSetFamily>),
    /// Elements of the base family admitting a finite support.
    Tau(Box<MSetFamily>),
    /// Elements of the base family admitting a co-infinite support.
    Mu(Box<MSetFamily>),
}

impl MSetFamily {
    pub fn contains(&self, x: &MElt) -> bool {
        match (self, x) {
            (MSetFamily::Inj(d), MElt::Inj(i)) => i.domain() == d,
            (MSetFamily::SelfM, MElt::SelfM(_)) => true,
            (MSetFamily::Warning, MElt::Warn(_)) => true,
            (MSetFamily::Terminal, MElt::Point) => true,
            (MSetFamily::Product(fs), MElt::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            (MSetFamily::Tau(b), x) => b.contains(x) && x.classify() == Classification::Tame,
            (MSetFamily::Mu(b), x) => b.contains(x) && x.is_mild(),
            _ => false,
        }
    }
}

impl fmt::Display for MSetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MSetFamily::Inj(d) => write!(f, "Inj({d})"),
            MSetFamily::SelfM => f.write_str("SelfM"),
            MSetFamily::Warning => f.write_str("Warning"),
            MSetFamily::Terminal => f.write_str("Terminal"),
            MSetFamily::Product(fs) => {
                f.write_str("Product(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    x.fmt(f)?;
                }
                f.write_str(")")
            }
            MSetFamily::Tau(b) => write!(f, "{b}^tau"),
            MSetFamily::Mu(b) => write!(f, "{b}^mu"),
        }
    }
}

/// The chain of maps showing `f.x = x` for `f ∈ ℳ_{A∩B}` when `x` is
/// supported on co-infinite `A` and `B`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WitnessChain {
    /// `A^c ∖ f(A)` infinite: `f.x = f₁.x = f₂.x = x`.
    Case1 { f1: PapInj, f2: PapInj },
    /// Otherwise: `f.x = g₁.x = g₂.x = g₃.x = x`.
    Case2 { g1: PapInj, g2: PapInj, g3: PapInj },
}

impl WitnessChain {
    pub fn maps(&self) -> Vec<&PapInj> {
        match self {
            WitnessChain::Case1 { f1, f2 } => alloc::vec![f1, f2],
            WitnessChain::Case2 { g1, g2, g3 } => alloc::vec![g1, g2, g3],
        }
    }
}

fn check(ok: bool, what: &str) -> Result<(), MSetError> {
    if ok {
        Ok(())
    } else {
        Err(MSetError::VerificationFailed(String::from(what)))
    }
}

pub fn intersection_support_witness(
    x: &MElt,
    a: &UpSet,
    b: &UpSet,
    f: &PapInj,
) -> Result<WitnessChain, MSetError> {
    if !a.is_coinfinite() {
        return Err(MSetError::PreconditionFailed("A is not co-infinite"));
    }
    if !b.is_coinfinite() {
        return Err(MSetError::PreconditionFailed("B is not co-infinite"));
    }
    if !x.is_supported_on(a) {
        return Err(MSetError::PreconditionFailed("x is not supported on A"));
    }
    if !x.is_supported_on(b) {
        return Err(MSetError::PreconditionFailed("x is not supported on B"));
    }
    if !f.fixes_pointwise(&a.intersect(b)) {
        return Err(MSetError::PreconditionFailed("f does not fix A ∩ B pointwise"));
    }
    let id = PapInj::identity();
    let ac = a.complement();
    let bc = b.complement();
    let fx = x.act(f);
    let free = ac.difference(&f.image(a));
    let chain = if free.is_infinite() {
        let f1 = PapInj::validate(PapMap::piecewise(a, f.as_map(), &PapMap::pairing(&ac, &free, PapMap::PAIRING_MAX_PERIOD)?))?;
        let f2 = PapInj::validate(PapMap::piecewise(a, id.as_map(), f1.as_map()))?;
        check(f1.equal_on(f, a), "f1 agrees with f on A")?;
        check(f1.image(&ac).is_subset(&ac), "f1(A^c) ⊆ A^c")?;
        check(f2.equal_on(&f1, b), "f2 agrees with f1 on B")?;
        check(f2.fixes_pointwise(a), "f2 fixes A")?;
        check(x.act(&f1) == fx, "f1.x = f.x")?;
        check(x.act(&f2) == x.act(&f1), "f2.x = f1.x")?;
        check(x.act(&f2) == *x, "f2.x = x")?;
        WitnessChain::Case1 { f1, f2 }
    } else {
        let dom = bc.union(&b.difference(a));
        let target = ac.difference(&f.image(b));
        if !target.is_infinite() {
            return Err(MSetError::VerificationFailed("A^c ∖ f(B) is finite".into()));
        }
        let psi = PapMap::pairing(&dom, &target, PapMap::PAIRING_MAX_PERIOD)?;
        let g1 = PapInj::validate(PapMap::piecewise(b, f.as_map(), &psi))?;
        let g2 = PapInj::validate(PapMap::piecewise(&b.difference(a), &psi, g1.as_map()))?;
        let g3 = PapInj::validate(PapMap::piecewise(a, id.as_map(), g2.as_map()))?;
        check(g1.equal_on(f, b), "g1 agrees with f on B")?;
        check(g1.image(&bc).is_subset(&ac), "g1(B^c) ⊆ A^c")?;
        check(g2.equal_on(&g1, a), "g2 agrees with g1 on A")?;
        check(g2.preimage(a).is_subset(a), "g2^-1(A) ⊆ A")?;
        check(g3.fixes_pointwise(a), "g3 fixes A")?;
        check(g3.equal_on(&g2, b), "g3 agrees with g2 on B")?;
        check(x.act(&g1) == fx, "g1.x = f.x")?;
        check(x.act(&g2) == x.act(&g1), "g2.x = g1.x")?;
        check(x.act(&g3) == x.act(&g2), "g3.x = g2.x")?;
        check(x.act(&g3) == *x, "g3.x = x")?;
        WitnessChain::Case2 { g1, g2, g3 }
    };
    check(fx == *x, "f.x = x")?;
    Ok(chain)
}

/// A `χ ∈ ℳ_A` with `⋃ₖ uₖχ(ω)` co-infinite, found by searching
/// sub-progressions of the complement of `⋃ₖ uₖ(A)` by increasing period.
pub fn stabilizing_chi(a: &UpSet, us: &[PapInj], max_period: i64) -> Result<PapInj, MSetError> {
    if !a.is_coinfinite() {
        return Err(MSetError::PreconditionFailed("A is not co-infinite"));
    }
    let covered = UpSet::union_all(us.iter().map(|u| u.image(a)));
    if !covered.is_coinfinite() {
        return Err(MSetError::PreconditionFailed("union of u_k(A) is not co-infinite"));
    }
    let ac = a.complement();
    let ew = PapInj::enumerate(&covered.complement())?;
    for q in 1..=max_period {
        for r in 1..=q {
            let avoid = ew.image(&UpSet::progression(r, q));
            let hit = UpSet::union_all(us.iter().map(|u| u.preimage(&avoid)));
            let target = ac.difference(&hit);
            if !target.is_infinite() {
                continue;
            }
            let chi = PapInj::validate(PapMap::piecewise(
                a,
                PapInj::identity().as_map(),
                &PapMap::transport(&ac, &target, None)?,
            ))?;
            check(chi.fixes_pointwise(a), "chi fixes A")?;
            let total = UpSet::union_all(us.iter().map(|u| u.compose(&chi).range()));
            check(total.is_coinfinite(), "union of images of u_k chi is co-infinite")?;
            return Ok(chi);
        }
    }
    Err(MSetError::SearchExhausted(max_period))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EqualModMA {
    Equal,
    Unknown,
}

/// Decides the sufficient criterion for `[u₀,…,uₙ] = [v₀,…,vₙ]` in
/// `ℳ^{1+n}/ℳ_A`: pairwise agreement on `A` and `⋃ uₖ(A)` co-infinite.
pub fn equal_mod_ma(a: &UpSet, us: &[PapInj], vs: &[PapInj]) -> Result<EqualModMA, MSetError> {
    if !a.is_coinfinite() {
        return Err(MSetError::PreconditionFailed("A is not co-infinite"));
    }
    if us.len() != vs.len() {
        return Err(MSetError::PreconditionFailed("tuples have different lengths"));
    }
    let agree = us.iter().zip(vs).all(|(u, v)| u.equal_on(v, a));
    let covered = UpSet::union_all(us.iter().map(|u| u.image(a)));
    Ok(if agree && covered.is_coinfinite() {
        EqualModMA::Equal
    } else {
        EqualModMA::Unknown
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn act_examples() {
        let x = MElt::inj(&[(1, 1)]).unwrap();
        assert_eq!(x.act(&PapInj::double()), MElt::inj(&[(1, 2)]).unwrap());
        let w = MElt::Warn(PapInj::identity());
        assert_ne!(w.act(&PapInj::succ()), w);
        assert_eq!(w.act(&PapInj::identity()), w);
        // agreeing off finitely many evens
        assert_eq!(MElt::Warn(PapInj::swap(2, 4)), w);
        assert_eq!(x.to_string(), "inj{A=[1], table={1:1}}");
    }

    #[test]
    fn support_examples() {
        let x = MElt::inj(&[(1, 1), (2, 2)]).unwrap();
        assert!(x.is_supported_on(&UpSet::finite([1, 2])));
        assert!(!x.is_supported_on(&UpSet::finite([1])));
        assert!(MElt::SelfM(PapInj::double()).is_supported_on(&UpSet::evens()));
        let w = MElt::Warn(PapInj::identity());
        for n in 0..=10 {
            let an = UpSet::evens().intersect(&UpSet::greater_than(2 * n - 1));
            assert!(w.is_supported_on(&an), "A_{n}");
        }
        assert!(!w.is_supported_on(&UpSet::empty()));
        assert!(MElt::SelfM(PapInj::identity()).is_supported_on(&UpSet::greater_than(1)));
    }

    #[test]
    fn minimal_support_examples() {
        assert_eq!(MElt::SelfM(PapInj::double()).minimal_support(), Support::Least(UpSet::evens()));
        assert_eq!(MElt::inj(&[(1, 3)]).unwrap().minimal_support(), Support::Least(UpSet::finite([3])));
        assert_eq!(MElt::Warn(PapInj::identity()).minimal_support(), Support::NoMinimal);
        assert_eq!(MElt::SelfM(PapInj::identity()).minimal_support(), Support::Least(UpSet::omega()));
        let t = MElt::Tuple(vec![MElt::Warn(PapInj::identity()), MElt::SelfM(PapInj::identity())]);
        assert_eq!(t.minimal_support(), Support::Least(UpSet::omega()));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(MElt::inj(&[(1, 5), (3, 2)]).unwrap().classify(), Classification::Tame);
        assert_eq!(MElt::SelfM(PapInj::double()).classify(), Classification::MildNotTame);
        assert_eq!(MElt::SelfM(PapInj::swap(1, 5)).classify(), Classification::NotMild);
        assert_eq!(MElt::Warn(PapInj::double()).classify(), Classification::MildNotTame);
        assert_eq!(MElt::Point.classify(), Classification::Tame);
    }

    #[test]
    fn unsupport_witness_moves() {
        let x = MElt::SelfM(PapInj::double());
        let g = x.unsupport_witness(&UpSet::residue_class(4, &[0]).unwrap()).unwrap();
        assert!(g.fixes_pointwise(&UpSet::residue_class(4, &[0]).unwrap()));
        assert_ne!(x.act(&g), x);
        let y = MElt::inj(&[(1, 3)]).unwrap();
        let a = UpSet::finite([3, 5]).complement();
        let g = y.unsupport_witness(&a).unwrap();
        assert_eq!(g.eval(3), 5);
        assert_eq!(g.eval(5), 3);
        assert!(y.unsupport_witness(&UpSet::finite([1, 2]).complement()).is_none());
        assert!(y.unsupport_witness(&UpSet::finite([3])).is_none());
    }

    #[test]
    fn cap_supp_example_period_six() {
        let x = MElt::SelfM(PapInj::affine(6, 0));
        let a = UpSet::residue_class(2, &[0]).unwrap();
        let b = UpSet::residue_class(3, &[0]).unwrap();
        let f = PapInj::validate(PapMap::from_fn(0, 6, |t| match t % 6 {
            1 => t + 1,
            2 => t - 1,
            _ => t,
        }))
        .unwrap();
        assert!(f.fixes_pointwise(&UpSet::residue_class(6, &[0]).unwrap()));
        let chain = intersection_support_witness(&x, &a, &b, &f).unwrap();
        assert!(!chain.maps().is_empty());
        let same = intersection_support_witness(&x, &a, &a, &PapInj::swap(1, 3)).unwrap();
        assert!(!same.maps().is_empty());
    }

    #[test]
    fn cap_supp_example_composed() {
        let x = MElt::SelfM(PapInj::affine(6, 0));
        let a = UpSet::evens();
        let b = UpSet::residue_class(3, &[0]).unwrap();
        let ab = a.intersect(&b);
        let f = PapInj::identity().agreeing_bijection(&ab).unwrap().compose(&PapInj::swap(1, 5));
        assert!(f.fixes_pointwise(&ab));
        intersection_support_witness(&x, &a, &b, &f).unwrap();
        assert!(matches!(
            intersection_support_witness(&x, &UpSet::odds(), &b, &f),
            Err(MSetError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn cap_supp_second_case() {
        let x = MElt::SelfM(PapInj::affine(6, 0));
        let a = UpSet::evens();
        let b = UpSet::residue_class(3, &[0]).unwrap();
        let ab = a.intersect(&b);
        let rest = UpSet::residue_class(6, &[2, 4]).unwrap();
        let on_a = PapMap::piecewise(
            &ab,
            PapInj::identity().as_map(),
            &PapMap::transport(&a.difference(&b), &UpSet::odds(), None).unwrap(),
        );
        let off_a = PapMap::transport(&UpSet::odds(), &rest, None).unwrap();
        let f = PapInj::validate(PapMap::piecewise(&a, &on_a, &off_a)).unwrap();
        assert!(f.is_bijective());
        assert!(a.complement().difference(&f.image(&a)).is_finite());
        let chain = intersection_support_witness(&x, &a, &b, &f).unwrap();
        assert!(matches!(chain, WitnessChain::Case2 { .. }));
    }

    #[test]
    fn chi_examples() {
        let chi = stabilizing_chi(&UpSet::evens(), &[PapInj::identity()], 64).unwrap();
        for k in 1..=100 {
            assert_eq!(chi.eval(2 * k - 1), 4 * k - 1);
            assert_eq!(chi.eval(2 * k), 2 * k);
        }
        assert_eq!(chi.range().complement(), UpSet::residue_class(4, &[1]).unwrap());
        let chi = stabilizing_chi(&UpSet::empty(), &[PapInj::double()], 64).unwrap();
        assert!(PapInj::double().compose(&chi).range().is_coinfinite());
        let chi = stabilizing_chi(&UpSet::evens(), &[PapInj::double()], 64).unwrap();
        assert!(chi.fixes_pointwise(&UpSet::evens()));
        assert!(PapInj::double().compose(&chi).range().is_coinfinite());
    }

    #[test]
    fn equal_mod_examples() {
        let a = UpSet::evens();
        let h = PapInj::identity().agreeing_bijection(&a).unwrap();
        assert_eq!(equal_mod_ma(&a, &[PapInj::identity()], &[h]).unwrap(), EqualModMA::Equal);
        assert_eq!(
            equal_mod_ma(&a, &[PapInj::identity()], &[PapInj::succ()]).unwrap(),
            EqualModMA::Unknown
        );
    }
}
