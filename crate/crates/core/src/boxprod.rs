//! The box product of mild `Eℳ`-simplicial sets.
//!
//! A tuple of `n`-simplices `(x⁽¹⁾,…,x⁽ᵐ⁾)` lies in the box product if for
//! every level `k` there are pairwise disjoint sets `A_k⁽ⁱ⁾` with co-infinite
//! union such that `x⁽ⁱ⁾` is `k`-supported on `A_k⁽ⁱ⁾`. When every
//! coordinate has a least supporting set, those sets form a witness
//! whenever any witness exists.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::emss::{bounded_injections, simplices_over, Simplex};
use crate::mset::{InjElt, MElt, Support};
use crate::upset::UpSet;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoxWitness {
    /// `levels[k][i]` supports coordinate `k` of the `i`-th simplex.
    pub levels: Vec<Vec<UpSet>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoxViolation {
    Overlap { i: usize, j: usize },
    UnionNotCoinfinite,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoxOutcome {
    In(BoxWitness),
    NotIn { level: usize, violation: BoxViolation },
}

impl BoxOutcome {
    pub fn is_in(&self) -> bool {
        matches!(self, BoxOutcome::In(_))
    }

    pub fn witness(&self) -> Option<&BoxWitness> {
        match self {
            BoxOutcome::In(w) => Some(w),
            BoxOutcome::NotIn { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxError {
    NoMinimalSupport { index: usize, level: usize },
    DegreeMismatch,
    Empty,
    VerificationFailed(String),
}

impl fmt::Display for BoxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxError::NoMinimalSupport { index, level } => {
                write!(f, "simplex {index} has no minimal {level}-support")
            }
            BoxError::DegreeMismatch => f.write_str("simplices have different degrees"),
            BoxError::Empty => f.write_str("no simplices given"),
            BoxError::VerificationFailed(what) => write!(f, "verification failed: {what}"),
        }
    }
}

impl core::error::Error for BoxError {}

impl fmt::Display for BoxViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxViolation::Overlap { .. } => f.write_str("disjointness"),
            BoxViolation::UnionNotCoinfinite => f.write_str("co-infinite union"),
        }
    }
}

impl fmt::Display for BoxOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxOutcome::In(w) => {
                f.write_str("InBox(")?;
                for (k, sets) in w.levels.iter().enumerate() {
                    if k > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "k={k}: ")?;
                    for (i, s) in sets.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        s.fmt(f)?;
                    }
                }
                f.write_str(")")
            }
            BoxOutcome::NotIn { level, violation } => write!(f, "NotInBox({violation}, k={level})"),
        }
    }
}

fn common_degree(xs: &[Simplex]) -> Result<usize, BoxError> {
    let first = xs.first().ok_or(BoxError::Empty)?;
    if xs.iter().any(|s| s.degree() != first.degree()) {
        return Err(BoxError::DegreeMismatch);
    }
    Ok(first.degree())
}

fn check_level(sets: &[UpSet]) -> Option<BoxViolation> {
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if !sets[i].is_disjoint(&sets[j]) {
                return Some(BoxViolation::Overlap { i, j });
            }
        }
    }
    (!UpSet::union_all(sets).is_coinfinite()).then_some(BoxViolation::UnionNotCoinfinite)
}

/// Decides membership of `xs` in the (unbiased) box product.
pub fn box_membership(xs: &[Simplex]) -> Result<BoxOutcome, BoxError> {
    let n = common_degree(xs)?;
    let mut levels = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut sets = Vec::with_capacity(xs.len());
        for (i, s) in xs.iter().enumerate() {
            match s.k_support(k) {
                Support::Least(a) => sets.push(a),
                Support::NoMinimal => return Err(BoxError::NoMinimalSupport { index: i, level: k }),
            }
        }
        if let Some(violation) = check_level(&sets) {
            return Ok(BoxOutcome::NotIn { level: k, violation });
        }
        levels.push(sets);
    }
    let w = BoxWitness { levels };
    verify_witness(xs, &w)?;
    Ok(BoxOutcome::In(w))
}

/// Checks every condition a witness must satisfy.
pub fn verify_witness(xs: &[Simplex], w: &BoxWitness) -> Result<(), BoxError> {
    let n = common_degree(xs)?;
    if w.levels.len() != n + 1 || w.levels.iter().any(|l| l.len() != xs.len()) {
        return Err(BoxError::VerificationFailed("witness has the wrong shape".into()));
    }
    for (k, sets) in w.levels.iter().enumerate() {
        if let Some(v) = check_level(sets) {
            return Err(BoxError::VerificationFailed(format!("level {k}: {v}")));
        }
        for (i, s) in xs.iter().enumerate() {
            if !s.is_k_supported_on(k, &sets[i]) {
                return Err(BoxError::VerificationFailed(format!(
                    "simplex {i} is not {k}-supported on {}",
                    sets[i]
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Refined {
    pub a: Vec<UpSet>,
    pub b: Vec<UpSet>,
    pub d: Vec<UpSet>,
}

/// Shrinks supports `A_k` of `x` and `B_k` of `y` into a support `D_k` of
/// the pair, so that afterwards `A_k ∪ B_k = D_k`.
pub fn refine_supports(
    x: &Simplex,
    y: &Simplex,
    a: &[UpSet],
    b: &[UpSet],
    d: &[UpSet],
) -> Result<Refined, BoxError> {
    let n = common_degree(&[x.clone(), y.clone()])?;
    if a.len() != n + 1 || b.len() != n + 1 || d.len() != n + 1 {
        return Err(BoxError::VerificationFailed("support lists have the wrong length".into()));
    }
    let pair = Simplex::zip(&[x.clone(), y.clone()]).map_err(|_| BoxError::DegreeMismatch)?;
    let fail = |what: String| Err(BoxError::VerificationFailed(what));
    for k in 0..=n {
        if !(a[k].is_coinfinite() && b[k].is_coinfinite() && d[k].is_coinfinite()) {
            return fail(format!("level {k}: supports must be co-infinite"));
        }
        if !a[k].is_disjoint(&b[k]) {
            return fail(format!("level {k}: A and B overlap"));
        }
        if !x.is_k_supported_on(k, &a[k]) || !y.is_k_supported_on(k, &b[k]) || !pair.is_k_supported_on(k, &d[k]) {
            return fail(format!("level {k}: input support claim is false"));
        }
    }
    let ra: Vec<UpSet> = a.iter().zip(d).map(|(a, d)| a.intersect(d)).collect();
    let rb: Vec<UpSet> = b.iter().zip(d).map(|(b, d)| b.intersect(d)).collect();
    let rd: Vec<UpSet> = ra.iter().zip(&rb).map(|(a, b)| a.union(b)).collect();
    for k in 0..=n {
        if !x.is_k_supported_on(k, &ra[k]) {
            return fail(format!("level {k}: x is not supported on A ∩ D"));
        }
        if !y.is_k_supported_on(k, &rb[k]) {
            return fail(format!("level {k}: y is not supported on B ∩ D"));
        }
        if !pair.is_k_supported_on(k, &rd[k]) || !rd[k].is_subset(&d[k]) {
            return fail(format!("level {k}: the pair is not supported on A' ∪ B'"));
        }
    }
    Ok(Refined { a: ra, b: rb, d: rd })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonoidalCheck {
    /// The hypothesis side is not in the box product.
    NotApplicable,
    Holds,
}

fn expect_in(xs: &[Simplex], what: &str) -> Result<BoxWitness, BoxError> {
    match box_membership(xs)? {
        BoxOutcome::In(w) => Ok(w),
        BoxOutcome::NotIn { level, violation } => Err(BoxError::VerificationFailed(format!(
            "{what} is not in the box product ({violation}, k={level})"
        ))),
    }
}

fn column(w: &BoxWitness, i: usize) -> Vec<UpSet> {
    w.levels.iter().map(|l| l[i].clone()).collect()
}

/// `((x, y), z) ∈ (X⊠Y)⊠Z ⇒ (x, (y, z)) ∈ X⊠(Y⊠Z)`, transporting the
/// witness through [`refine_supports`] and rechecking membership directly.
pub fn associativity(x: &Simplex, y: &Simplex, z: &Simplex) -> Result<MonoidalCheck, BoxError> {
    let xy = Simplex::zip(&[x.clone(), y.clone()]).map_err(|_| BoxError::DegreeMismatch)?;
    let inner = box_membership(&[x.clone(), y.clone()])?;
    let outer = box_membership(&[xy, z.clone()])?;
    let (Some(wi), Some(wo)) = (inner.witness(), outer.witness()) else {
        return Ok(MonoidalCheck::NotApplicable);
    };
    let refined = refine_supports(x, y, &column(wi, 0), &column(wi, 1), &column(wo, 0))?;
    let c = column(wo, 1);
    let n = x.degree();
    let yz = Simplex::zip(&[y.clone(), z.clone()]).map_err(|_| BoxError::DegreeMismatch)?;
    let w_yz = BoxWitness {
        levels: (0..=n).map(|k| vec![refined.b[k].clone(), c[k].clone()]).collect(),
    };
    verify_witness(&[y.clone(), z.clone()], &w_yz)?;
    let w_x_yz = BoxWitness {
        levels: (0..=n)
            .map(|k| vec![refined.a[k].clone(), refined.b[k].union(&c[k])])
            .collect(),
    };
    verify_witness(&[x.clone(), yz.clone()], &w_x_yz)?;
    expect_in(&[y.clone(), z.clone()], "(y, z)")?;
    expect_in(&[x.clone(), yz], "(x, (y, z))")?;
    Ok(MonoidalCheck::Holds)
}

/// `(x, y) ∈ X⊠Y ⇒ (y, x) ∈ Y⊠X` with the swapped witness.
pub fn symmetry(x: &Simplex, y: &Simplex) -> Result<MonoidalCheck, BoxError> {
    let Some(w) = box_membership(&[x.clone(), y.clone()])?.witness().cloned() else {
        return Ok(MonoidalCheck::NotApplicable);
    };
    let swapped = BoxWitness {
        levels: w.levels.iter().map(|l| vec![l[1].clone(), l[0].clone()]).collect(),
    };
    verify_witness(&[y.clone(), x.clone()], &swapped)?;
    expect_in(&[y.clone(), x.clone()], "(y, x)")?;
    Ok(MonoidalCheck::Holds)
}

/// For co-infinitely supported `x`, `(x, *) ∈ X⊠*`, with `*` supported
/// on `∅` at every level.
pub fn unit(x: &Simplex) -> Result<MonoidalCheck, BoxError> {
    if !x.is_coinfinitely_supported() {
        return Ok(MonoidalCheck::NotApplicable);
    }
    let star = Simplex::constant(MElt::Point, x.degree());
    let w = expect_in(&[x.clone(), star.clone()], "(x, *)")?;
    if w.levels.iter().any(|l| !l[1].is_empty()) {
        return Err(BoxError::VerificationFailed("* is not supported on the empty set".into()));
    }
    Ok(MonoidalCheck::Holds)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoproductLevel {
    pub degree: usize,
    /// Simplices of `E Inj(A ⊔ B, ω)` with entries in the bound.
    pub left: usize,
    /// Pairs of simplices of `E Inj(A, ω)` and `E Inj(B, ω)` with entries
    /// in the bound.
    pub pairs: usize,
    /// Those pairs lying in the box product.
    pub right: usize,
    pub injective: bool,
    pub lands_in_box: bool,
    pub surjective: bool,
}

impl CoproductLevel {
    pub fn is_bijection(&self) -> bool {
        self.left == self.right && self.injective && self.lands_in_box && self.surjective
    }
}

fn restrict(u: &InjElt, to: &[i64]) -> MElt {
    let table: Vec<(i64, i64)> = to.iter().map(|&x| (x, u.eval(x))).collect();
    MElt::inj(&table).expect("restriction of an injection")
}

fn values(s: &Simplex, dom: &[i64]) -> Vec<Vec<i64>> {
    s.coords()
        .iter()
        .map(|x| match x {
            MElt::Inj(u) => dom.iter().map(|&d| u.eval(d)).collect(),
            _ => unreachable!("finite injection families only"),
        })
        .collect()
}

/// Compares `E Inj(A ⊔ B, ω)^μ` with `E Inj(A, ω)^μ ⊠ E Inj(B, ω)^μ` on
/// simplices with entries at most `bound`, for finite disjoint `A`, `B`.
pub fn inj_coproduct_iso(a: &[i64], b: &[i64], max_degree: usize, bound: i64) -> Vec<CoproductLevel> {
    assert!(a.iter().all(|x| !b.contains(x)), "A and B must be disjoint");
    let ab: Vec<i64> = a.iter().chain(b).copied().collect();
    let pool = |dom: &[i64]| -> Vec<MElt> { bounded_injections(dom, bound).into_iter().map(MElt::Inj).collect() };
    let (pool_ab, pool_a, pool_b) = (pool(&ab), pool(a), pool(b));
    (0..=max_degree)
        .map(|n| {
            let left = simplices_over(&pool_ab, n);
            let mut images: Vec<(Vec<Vec<i64>>, Vec<Vec<i64>>)> = Vec::with_capacity(left.len());
            let mut lands_in_box = true;
            for s in &left {
                let part = |dom: &[i64]| {
                    Simplex::new(
                        s.coords()
                            .iter()
                            .map(|x| match x {
                                MElt::Inj(u) => restrict(u, dom),
                                _ => unreachable!(),
                            })
                            .collect(),
                    )
                };
                let (sa, sb) = (part(a), part(b));
                lands_in_box &= s.is_coinfinitely_supported()
                    && box_membership(&[sa.clone(), sb.clone()]).is_ok_and(|o| o.is_in());
                images.push((values(&sa, a), values(&sb, b)));
            }
            images.sort();
            let before = images.len();
            images.dedup();
            let injective = images.len() == before;
            let right_a = simplices_over(&pool_a, n);
            let right_b = simplices_over(&pool_b, n);
            let mut right = 0;
            let mut surjective = true;
            for sa in &right_a {
                for sb in &right_b {
                    if box_membership(&[sa.clone(), sb.clone()]).is_ok_and(|o| o.is_in()) {
                        right += 1;
                        let key = (values(sa, a), values(sb, b));
                        surjective &= images.binary_search(&key).is_ok();
                    }
                }
            }
            CoproductLevel {
                degree: n,
                left: left.len(),
                pairs: right_a.len() * right_b.len(),
                right,
                injective,
                lands_in_box,
                surjective,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pap::PapInj;
    use alloc::string::ToString;

    fn v(y: i64) -> Simplex {
        Simplex::vertex(MElt::inj(&[(1, y)]).unwrap())
    }

    fn selfm(u: PapInj) -> Simplex {
        Simplex::vertex(MElt::SelfM(u))
    }

    #[test]
    fn membership_examples() {
        let o = box_membership(&[v(1), v(2)]).unwrap();
        assert_eq!(
            o.witness().unwrap().levels,
            vec![vec![UpSet::finite([1]), UpSet::finite([2])]]
        );
        let o = box_membership(&[v(1), v(1)]).unwrap();
        assert_eq!(o.to_string(), "NotInBox(disjointness, k=0)");
        let o = box_membership(&[selfm(PapInj::double()), selfm(PapInj::affine(2, 1))]).unwrap();
        assert_eq!(
            o,
            BoxOutcome::NotIn {
                level: 0,
                violation: BoxViolation::UnionNotCoinfinite
            }
        );
        let o = box_membership(&[selfm(PapInj::double()), selfm(PapInj::affine(4, 1))]).unwrap();
        assert!(o.is_in());
        let w = Simplex::vertex(MElt::Warn(PapInj::identity()));
        assert_eq!(
            box_membership(&[w, v(1)]),
            Err(BoxError::NoMinimalSupport { index: 0, level: 0 })
        );
    }

    #[test]
    fn refine_examples() {
        let x = selfm(PapInj::double());
        let y = selfm(PapInj::affine(4, -3));
        let a = UpSet::evens();
        let b = UpSet::residue_class(4, &[1]).unwrap();
        let d = UpSet::residue_class(4, &[3]).unwrap().complement();
        let r = refine_supports(&x, &y, &[a.clone()], &[b.clone()], &[d]).unwrap();
        assert_eq!(r.a, vec![a.clone()]);
        assert_eq!(r.b, vec![b.clone()]);
        assert_eq!(r.d, vec![a.union(&b)]);
        let again = refine_supports(&x, &y, &r.a, &r.b, &r.d).unwrap();
        assert_eq!(again, r);

        let x = selfm(PapInj::affine(4, 0));
        let m4 = UpSet::residue_class(4, &[0]).unwrap();
        let r = refine_supports(&x, &Simplex::vertex(MElt::Point), &[UpSet::evens()], &[UpSet::empty()], &[m4.clone()]).unwrap();
        assert_eq!(r.a, vec![m4]);
    }

    #[test]
    fn monoidal_examples() {
        assert_eq!(associativity(&v(1), &v(2), &v(3)).unwrap(), MonoidalCheck::Holds);
        assert_eq!(associativity(&v(1), &v(1), &v(3)).unwrap(), MonoidalCheck::NotApplicable);
        assert_eq!(symmetry(&v(1), &v(5)).unwrap(), MonoidalCheck::Holds);
        assert_eq!(unit(&selfm(PapInj::double())).unwrap(), MonoidalCheck::Holds);
        assert_eq!(unit(&selfm(PapInj::identity())).unwrap(), MonoidalCheck::NotApplicable);
    }

    #[test]
    fn coproduct_counts() {
        let levels = inj_coproduct_iso(&[1], &[2], 1, 8);
        assert_eq!(levels[0].left, 56);
        assert_eq!(levels[1].left, 3136);
        for l in &levels {
            assert!(l.is_bijection(), "{l:?}");
        }
        let levels = inj_coproduct_iso(&[1], &[], 1, 5);
        assert_eq!(levels[1].left, 25);
        assert!(levels.iter().all(CoproductLevel::is_bijection));
    }
}
