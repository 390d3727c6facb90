//! The operadic product `E Inj(n×ω, ω) ×_{Eℳⁿ} (X₁ × … × Xₙ)` and the
//! comparison map `Φ` into the cartesian product.
//!
//! A class `[f₀,…,f_m; x₁,…,xₙ]` is stored by one representative. The
//! defining relation is `[f∘(u₁⊔…⊔uₙ); x] = [f; (u₁.x₁,…,uₙ.xₙ)]`, applied
//! levelwise.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::boxprod::{box_membership, BoxError, BoxOutcome, BoxWitness};
use crate::emss::Simplex;
use crate::mset::{MElt, Support};
use crate::pap::{InjN, PapError, PapInj, PapMap};
use crate::upset::UpSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperadicError {
    ArityMismatch(String),
    NoMinimalSupport { strand: usize, level: usize },
    NotCoinfinite { strand: usize, level: usize },
    WitnessInvalid(String),
    CertificateFailed(String),
    Pap(PapError),
    Box(BoxError),
}

impl fmt::Display for OperadicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperadicError::ArityMismatch(what) => write!(f, "arity mismatch: {what}"),
            OperadicError::NoMinimalSupport { strand, level } => {
                write!(f, "payload {strand} has no minimal {level}-support")
            }
            OperadicError::NotCoinfinite { strand, level } => {
                write!(f, "payload {strand} is not co-infinitely {level}-supported")
            }
            OperadicError::WitnessInvalid(what) => write!(f, "invalid witness: {what}"),
            OperadicError::CertificateFailed(what) => write!(f, "certificate failed: {what}"),
            OperadicError::Pap(e) => e.fmt(f),
            OperadicError::Box(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for OperadicError {}

impl From<PapError> for OperadicError {
    fn from(e: PapError) -> Self {
        OperadicError::Pap(e)
    }
}

impl From<BoxError> for OperadicError {
    fn from(e: BoxError) -> Self {
        OperadicError::Box(e)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperadicClass {
    frame: Vec<InjN>,
    payload: Vec<Simplex>,
}

impl OperadicClass {
    pub fn new(frame: Vec<InjN>, payload: Vec<Simplex>) -> Result<OperadicClass, OperadicError> {
        let n = payload.len();
        if n == 0 {
            return Err(OperadicError::ArityMismatch("empty payload".into()));
        }
        let m = payload[0].degree();
        if payload.iter().any(|s| s.degree() != m) {
            return Err(OperadicError::ArityMismatch("payload simplices differ in degree".into()));
        }
        if frame.len() != m + 1 {
            return Err(OperadicError::ArityMismatch(format!(
                "frame has {} levels, payload has degree {m}",
                frame.len()
            )));
        }
        if frame.iter().any(|f| f.arity() != n) {
            return Err(OperadicError::ArityMismatch(format!("frame arity differs from {n}")));
        }
        Ok(OperadicClass { frame, payload })
    }

    pub fn frame(&self) -> &[InjN] {
        &self.frame
    }

    pub fn payload(&self) -> &[Simplex] {
        &self.payload
    }

    pub fn arity(&self) -> usize {
        self.payload.len()
    }

    pub fn degree(&self) -> usize {
        self.frame.len() - 1
    }

    /// `Φ[f; x]`: coordinate `j` is `(f₀ιⱼ,…,f_mιⱼ).xⱼ`.
    pub fn phi(&self) -> Vec<Simplex> {
        (0..self.arity())
            .map(|j| {
                let us: Vec<PapInj> = self.frame.iter().map(|f| f.component(j).clone()).collect();
                self.payload[j].em_act(&us).expect("degrees checked on construction")
            })
            .collect()
    }

    /// `[f∘(u₁⊔…⊔uₙ); x]`, with `us[k][j]` the map at level `k`, strand `j`.
    pub fn precompose_frame(&self, us: &[Vec<PapInj>]) -> OperadicClass {
        OperadicClass {
            frame: self.frame.iter().zip(us).map(|(f, u)| f.precompose(u)).collect(),
            payload: self.payload.clone(),
        }
    }

    /// `[f; (u₁.x₁,…,uₙ.xₙ)]`, with `us[k][j]` as in
    /// [`OperadicClass::precompose_frame`].
    pub fn act_payload(&self, us: &[Vec<PapInj>]) -> OperadicClass {
        let payload = (0..self.arity())
            .map(|j| {
                let strand: Vec<PapInj> = us.iter().map(|u| u[j].clone()).collect();
                self.payload[j].em_act(&strand).expect("degrees checked on construction")
            })
            .collect();
        OperadicClass {
            frame: self.frame.clone(),
            payload,
        }
    }
}

impl fmt::Display for OperadicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("class{frame=[")?;
        for (i, x) in self.frame.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            x.fmt(f)?;
        }
        f.write_str("], payload=[")?;
        for (i, x) in self.payload.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            x.fmt(f)?;
        }
        f.write_str("]}")
    }
}

/// The frame level used by [`phi_inverse`]: strand `j` is the identity on
/// `sets[j]` and sends the rest to the `j`-th strand of the `n`-fold
/// interleaving of `ω ∖ ⋃ sets`. When that order-preserving map would have
/// a huge period, the rest is embedded into the same strand instead.
pub fn inverse_frame_level(sets: &[UpSet]) -> Result<InjN, OperadicError> {
    let n = sets.len() as i64;
    let rest = UpSet::union_all(sets).complement();
    let comps = sets
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let strand = PapInj::interleave(n, j as i64 + 1);
            let ac = a.complement();
            let off = if PapMap::transport_period(&ac, &rest, Some(&strand))? <= PapMap::PAIRING_MAX_PERIOD {
                PapMap::transport(&ac, &rest, Some(&strand))?
            } else {
                let lane = PapInj::enumerate(&rest)?.image(&strand.range());
                PapMap::embed(&ac, &lane)?
            };
            Ok(PapInj::validate(PapMap::piecewise(a, PapInj::identity().as_map(), &off))?)
        })
        .collect::<Result<Vec<_>, OperadicError>>()?;
    InjN::new(comps).map_err(|e| OperadicError::WitnessInvalid(format!("{e}")))
}

/// The preimage of a box simplex under `Φ`, built from a box witness.
pub fn phi_inverse(xs: &[Simplex], witness: &BoxWitness) -> Result<OperadicClass, OperadicError> {
    crate::boxprod::verify_witness(xs, witness).map_err(|e| OperadicError::WitnessInvalid(format!("{e}")))?;
    let frame = witness
        .levels
        .iter()
        .map(|sets| inverse_frame_level(sets))
        .collect::<Result<Vec<_>, _>>()?;
    let class = OperadicClass::new(frame, xs.to_vec())?;
    if class.phi() != xs {
        return Err(OperadicError::WitnessInvalid("phi does not return the input".into()));
    }
    Ok(class)
}

/// [`phi_inverse`] with the witness from [`box_membership`].
pub fn phi_inverse_of(xs: &[Simplex]) -> Result<OperadicClass, OperadicError> {
    match box_membership(xs)? {
        BoxOutcome::In(w) => phi_inverse(xs, &w),
        BoxOutcome::NotIn { level, violation } => Err(OperadicError::WitnessInvalid(format!(
            "not in the box product ({violation}, k={level})"
        ))),
    }
}

fn coinfinite_support(x: &MElt, strand: usize, level: usize) -> Result<UpSet, OperadicError> {
    match x.minimal_support() {
        Support::NoMinimal => Err(OperadicError::NoMinimalSupport { strand, level }),
        Support::Least(a) if a.is_coinfinite() => Ok(a),
        Support::Least(_) => Err(OperadicError::NotCoinfinite { strand, level }),
    }
}

/// The connecting maps `s_k⁽ʲ⁾` with `g_k ∘ (s_k⁽¹⁾ ⊔ …) = f_k` on the
/// payload supports of `c1` and `s.x = y` on payloads.
pub fn connecting_maps(c1: &OperadicClass, c2: &OperadicClass) -> Result<Vec<Vec<PapInj>>, OperadicError> {
    let mut out = Vec::with_capacity(c1.degree() + 1);
    for k in 0..=c1.degree() {
        let mut level = Vec::with_capacity(c1.arity());
        for j in 0..c1.arity() {
            let x = c1.payload[j].coord(k);
            let y = c2.payload[j].coord(k);
            let a1 = coinfinite_support(x, j, k)?;
            let b1 = coinfinite_support(y, j, k)?;
            let f = c1.frame[k].component(j);
            let g = c2.frame[k].component(j);
            let c = f.image(&a1).intersect(&g.image(&b1));
            let a = f.preimage(&c);
            let b = g.preimage(&c);
            let on_a = g.partial_inverse().compose(f.as_map());
            let off_a = PapMap::pairing(&a.complement(), &b.complement(), PapMap::PAIRING_MAX_PERIOD)?;
            let s = PapInj::validate(PapMap::piecewise(&a, &on_a, &off_a))?;
            if !g.compose(&s).equal_on(f, &a) {
                return Err(OperadicError::CertificateFailed(format!("g s = f fails on A (level {k}, strand {j})")));
            }
            if x.act(&s) != *y {
                return Err(OperadicError::CertificateFailed(format!("s.x = y fails (level {k}, strand {j})")));
            }
            level.push(s);
        }
        out.push(level);
    }
    Ok(out)
}

/// Decides equality of classes whose payloads have co-infinite minimal
/// supports. Equal `Φ`-images are certified by [`connecting_maps`].
pub fn class_equal(c1: &OperadicClass, c2: &OperadicClass) -> Result<bool, OperadicError> {
    if c1.arity() != c2.arity() || c1.degree() != c2.degree() {
        return Err(OperadicError::ArityMismatch("classes differ in arity or degree".into()));
    }
    for (j, s) in c1.payload.iter().chain(&c2.payload).enumerate() {
        for k in 0..=s.degree() {
            coinfinite_support(s.coord(k), j % c1.arity(), k)?;
        }
    }
    if c1.phi() != c2.phi() {
        return Ok(false);
    }
    let s = connecting_maps(c1, c2)?;
    let moved = c2.precompose_frame(&s);
    for k in 0..=c1.degree() {
        for j in 0..c1.arity() {
            let a = c1.payload[j].k_support(k);
            let a = a.least().expect("checked above");
            if !moved.frame[k].component(j).equal_on(c1.frame[k].component(j), a) {
                return Err(OperadicError::CertificateFailed(format!(
                    "frames disagree on the support (level {k}, strand {j})"
                )));
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct UnhitWitness {
    pub simplex: Simplex,
    pub level: usize,
    pub support: Support,
}

#[derive(Clone, Debug, Default)]
pub struct StarModuleReport {
    pub classes: usize,
    pub phi_equal_pairs: usize,
    pub injectivity_failures: Vec<String>,
    pub samples: usize,
    pub hit: usize,
    pub round_trip_failures: Vec<String>,
    pub unhit: Vec<UnhitWitness>,
    /// `Φ` outputs that fail to be co-infinitely supported; the argument
    /// that non-mild simplices are never hit relies on there being none.
    pub image_not_mild: Vec<String>,
}

impl StarModuleReport {
    pub fn passes(&self) -> bool {
        self.injectivity_failures.is_empty()
            && self.round_trip_failures.is_empty()
            && self.unhit.is_empty()
            && self.image_not_mild.is_empty()
    }
}

/// Evidence that `Φ: E Inj(2×ω, ω) ×_{Eℳ²} (X × *) → X × *` is a bijection:
/// injectivity on `classes` (whose payloads must be mild), and
/// surjectivity on `samples` of `X`.
pub fn star_module_check(samples: &[Simplex], classes: &[OperadicClass]) -> StarModuleReport {
    let mut report = StarModuleReport {
        classes: classes.len(),
        samples: samples.len(),
        ..StarModuleReport::default()
    };
    let images: Vec<Vec<Simplex>> = classes.iter().map(OperadicClass::phi).collect();
    for (c, img) in classes.iter().zip(&images) {
        if !img[0].is_coinfinitely_supported() {
            report.image_not_mild.push(format!("{c}"));
        }
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if images[i] != images[j] {
                continue;
            }
            report.phi_equal_pairs += 1;
            match class_equal(&classes[i], &classes[j]) {
                Ok(true) => {}
                Ok(false) => report.injectivity_failures.push(format!("{} vs {}", classes[i], classes[j])),
                Err(e) => report.injectivity_failures.push(format!("{} vs {}: {e}", classes[i], classes[j])),
            }
        }
    }
    for x in samples {
        if x.is_coinfinitely_supported() {
            let xs = [x.clone(), Simplex::constant(MElt::Point, x.degree())];
            match phi_inverse_of(&xs) {
                Ok(c) if c.phi() == xs => report.hit += 1,
                Ok(_) => report.round_trip_failures.push(format!("{x}")),
                Err(e) => report.round_trip_failures.push(format!("{x}: {e}")),
            }
        } else {
            let level = (0..=x.degree()).find(|&k| !x.coord(k).is_mild()).expect("some level is not mild");
            report.unhit.push(UnhitWitness {
                simplex: x.clone(),
                level,
                support: x.k_support(level),
            });
        }
    }
    report
}

#[derive(Clone, Debug)]
pub struct MuRealization {
    /// `[f; x, *]`.
    pub original: OperadicClass,
    /// `[g; d.x, *]` with `d(t) = 2t`.
    pub normalized: OperadicClass,
}

/// Rewrites `[f; x, *]` as `[g; (d,…,d).x, *]` where `d(t) = 2t`, so the
/// payload lies in `X^μ`. Strand 1 of `g_k` is `t ↦ f_k(1, t/2)` on evens
/// and sends odds onto `f_k(2, odds)`, which `f_k ∘ (id ⊔ d)` leaves free;
/// strand 2 is `t ↦ f_k(2, 2t)`.
pub fn mu_via_operadic(x: &Simplex, frame: Option<&[InjN]>) -> Result<MuRealization, OperadicError> {
    let n = x.degree();
    let frame: Vec<InjN> = match frame {
        Some(f) => f.to_vec(),
        None => vec![InjN::interleave(2); n + 1],
    };
    let star = Simplex::constant(MElt::Point, n);
    let original = OperadicClass::new(frame.clone(), vec![x.clone(), star.clone()])?;
    if original.arity() != 2 {
        return Err(OperadicError::ArityMismatch("frame must have arity 2".into()));
    }
    let d = PapInj::double();
    let id = PapInj::identity();
    let evens = UpSet::evens();
    let odds = UpSet::odds();
    let halve = PapMap::from_fn(0, 2, |t| if t % 2 == 0 { t / 2 } else { 0 });
    let mut g = Vec::with_capacity(n + 1);
    for f in &frame {
        let (f1, f2) = (f.component(0), f.component(1));
        let vacated = f2.image(&odds);
        let phi_j = PapMap::transport(&odds, &vacated, None)?;
        let g1 = PapInj::validate(PapMap::piecewise(&evens, &f1.as_map().compose(&halve), &phi_j))?;
        let g2 = f2.compose(&d);
        let gk = InjN::new(vec![g1, g2]).map_err(|e| OperadicError::CertificateFailed(format!("{e}")))?;
        if gk.precompose(&[d.clone(), id.clone()]) != f.precompose(&[id.clone(), d.clone()]) {
            return Err(OperadicError::CertificateFailed("g (d ⊔ id) ≠ f (id ⊔ d)".into()));
        }
        g.push(gk);
    }
    let dx = x.em_act(&vec![d.clone(); n + 1]).expect("arity matches");
    if !(0..=n).all(|k| dx.is_k_supported_on(k, &evens)) {
        return Err(OperadicError::CertificateFailed("d.x is not supported on the evens".into()));
    }
    let normalized = OperadicClass::new(g, vec![dx, star])?;
    if normalized.phi() != original.phi() {
        return Err(OperadicError::CertificateFailed("phi changed under normalization".into()));
    }
    Ok(MuRealization { original, normalized })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(y: i64) -> Simplex {
        Simplex::vertex(MElt::inj(&[(1, y)]).unwrap())
    }

    #[test]
    fn phi_examples() {
        let c = OperadicClass::new(vec![InjN::new(vec![PapInj::double()]).unwrap()], vec![v(1)]).unwrap();
        assert_eq!(c.phi(), vec![v(2)]);
        let star = Simplex::vertex(MElt::Point);
        let c = OperadicClass::new(vec![InjN::interleave(2)], vec![v(3), star.clone()]).unwrap();
        assert_eq!(c.phi()[1], star);
    }

    #[test]
    fn phi_inverse_examples() {
        let xs = [v(1), v(2)];
        let c = phi_inverse_of(&xs).unwrap();
        let f0 = &c.frame()[0];
        assert_eq!(f0.component(0).eval(1), 1);
        assert_eq!(f0.component(1).eval(2), 2);
        assert_eq!(c.phi(), xs);
        let one = [Simplex::vertex(MElt::SelfM(PapInj::double()))];
        let c = phi_inverse_of(&one).unwrap();
        assert_eq!(c.frame()[0].component(0), &PapInj::identity());
        let mixed = [v(4), Simplex::vertex(MElt::Point)];
        assert_eq!(phi_inverse_of(&mixed).unwrap().phi(), mixed);
    }

    #[test]
    fn class_equal_examples() {
        let c = phi_inverse_of(&[v(1), v(2)]).unwrap();
        assert!(class_equal(&c, &c).unwrap());
        let us = vec![vec![PapInj::succ(), PapInj::double()]];
        let lhs = c.precompose_frame(&us);
        let rhs = c.act_payload(&us);
        assert!(class_equal(&lhs, &rhs).unwrap());
        let other = phi_inverse_of(&[v(1), v(3)]).unwrap();
        assert!(!class_equal(&c, &other).unwrap());
    }

    #[test]
    fn mu_examples() {
        let id = Simplex::vertex(MElt::SelfM(PapInj::identity()));
        let r = mu_via_operadic(&id, None).unwrap();
        assert_eq!(r.normalized.payload()[0], Simplex::vertex(MElt::SelfM(PapInj::double())));
        assert_eq!(r.normalized.payload()[0].k_support(0), Support::Least(UpSet::evens()));
        let r = mu_via_operadic(&v(1), None).unwrap();
        assert_eq!(r.normalized.payload()[0], v(2));
    }

    #[test]
    fn star_module_examples() {
        let mild = [Simplex::vertex(MElt::SelfM(PapInj::double()))];
        let classes = [phi_inverse_of(&[mild[0].clone(), Simplex::vertex(MElt::Point)]).unwrap()];
        assert!(star_module_check(&mild, &classes).passes());
        let bad = [Simplex::vertex(MElt::SelfM(PapInj::identity()))];
        let r = star_module_check(&bad, &classes);
        assert!(!r.passes());
        assert_eq!(r.unhit[0].support, Support::Least(UpSet::omega()));
    }
}
