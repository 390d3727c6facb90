//! Degree-truncated `Eℳ`-simplicial sets `EX` over the built-in families.
//!
//! An `n`-simplex is a `(1+n)`-tuple of elements; faces delete and
//! degeneracies duplicate coordinates, and `(u₀,…,uₙ)` acts coordinatewise.
//! Coordinate `k` of a simplex is `k`-supported on `A` iff it is supported
//! on `A` as an element of `X`, so every `k`-support question reduces to
//! the structural decisions of [`crate::mset`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{FinGroup, UniversalEmbedding};
use crate::mset::{Classification, InjElt, MElt, MSetFamily, Support};
use crate::pap::PapInj;
use crate::upset::UpSet;

pub const DEFAULT_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmssError {
    IndexOutOfRange { index: usize, degree: usize },
    TruncationExceeded { degree: usize, max: usize },
    ArityMismatch { expected: usize, got: usize },
    NotMonotone,
    NotInFamily,
    NotAHomomorphism,
    UnsupportedFamily,
}

impl fmt::Display for EmssError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmssError::IndexOutOfRange { index, degree } => {
                write!(f, "index {index} out of range for degree {degree}")
            }
            EmssError::TruncationExceeded { degree, max } => {
                write!(f, "degree {degree} exceeds truncation degree {max}")
            }
            EmssError::ArityMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            EmssError::NotMonotone => f.write_str("structure map is not monotone"),
            EmssError::NotInFamily => f.write_str("simplex does not belong to the family"),
            EmssError::NotAHomomorphism => f.write_str("phi is not a homomorphism"),
            EmssError::UnsupportedFamily => f.write_str("family does not support this operation"),
        }
    }
}

impl core::error::Error for EmssError {}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Simplex {
    coords: Vec<MElt>,
}

impl Simplex {
    pub fn new(coords: Vec<MElt>) -> Simplex {
        assert!(!coords.is_empty(), "a simplex has at least one coordinate");
        Simplex { coords }
    }

    pub fn vertex(x: MElt) -> Simplex {
        Simplex { coords: vec![x] }
    }

    /// The constant `n`-simplex `(x, …, x)`.
    pub fn constant(x: MElt, n: usize) -> Simplex {
        Simplex {
            coords: vec![x; n + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[MElt] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &MElt {
        &self.coords[k]
    }

    pub fn face(&self, i: usize) -> Result<Simplex, EmssError> {
        let n = self.degree();
        if i > n {
            return Err(EmssError::IndexOutOfRange { index: i, degree: n });
        }
        if n == 0 {
            return Err(EmssError::IndexOutOfRange { index: i, degree: n });
        }
        let mut coords = self.coords.clone();
        coords.remove(i);
        Ok(Simplex { coords })
    }

    pub fn degeneracy(&self, i: usize) -> Result<Simplex, EmssError> {
        let n = self.degree();
        if i > n {
            return Err(EmssError::IndexOutOfRange { index: i, degree: n });
        }
        let mut coords = self.coords.clone();
        coords.insert(i, self.coords[i].clone());
        Ok(Simplex { coords })
    }

    /// `f*(self)` for a monotone `f: [m] → [n]` given by its values.
    pub fn pullback(&self, f: &[usize]) -> Result<Simplex, EmssError> {
        if f.is_empty() || f.windows(2).any(|w| w[0] > w[1]) {
            return Err(EmssError::NotMonotone);
        }
        if let Some(&bad) = f.iter().find(|&&j| j > self.degree()) {
            return Err(EmssError::IndexOutOfRange {
                index: bad,
                degree: self.degree(),
            });
        }
        Ok(Simplex {
            coords: f.iter().map(|&j| self.coords[j].clone()).collect(),
        })
    }

    pub fn em_act(&self, us: &[PapInj]) -> Result<Simplex, EmssError> {
        if us.len() != self.coords.len() {
            return Err(EmssError::ArityMismatch {
                expected: self.coords.len(),
                got: us.len(),
            });
        }
        Ok(Simplex {
            coords: self.coords.iter().zip(us).map(|(x, u)| x.act(u)).collect(),
        })
    }

    /// `i_k(u)`: `u` in slot `k`, identities elsewhere.
    pub fn slot_tuple(n: usize, k: usize, u: &PapInj) -> Vec<PapInj> {
        (0..=n)
            .map(|j| if j == k { u.clone() } else { PapInj::identity() })
            .collect()
    }

    pub fn k_support(&self, k: usize) -> Support {
        self.coords[k].minimal_support()
    }

    pub fn is_k_supported_on(&self, k: usize, a: &UpSet) -> bool {
        self.coords[k].is_supported_on(a)
    }

    /// Every coordinate has a finite supporting set.
    pub fn is_finitely_supported(&self) -> bool {
        self.coords.iter().all(|x| x.classify() == Classification::Tame)
    }

    /// Every coordinate has a co-infinite supporting set.
    pub fn is_coinfinitely_supported(&self) -> bool {
        self.coords.iter().all(MElt::is_mild)
    }

    pub fn zip(simplices: &[Simplex]) -> Result<Simplex, EmssError> {
        let n = simplices[0].degree();
        if let Some(s) = simplices.iter().find(|s| s.degree() != n) {
            return Err(EmssError::ArityMismatch {
                expected: n + 1,
                got: s.degree() + 1,
            });
        }
        Ok(Simplex {
            coords: (0..=n)
                .map(|k| MElt::Tuple(simplices.iter().map(|s| s.coords[k].clone()).collect()))
                .collect(),
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            x.fmt(f)?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Filter {
    Tau,
    Mu,
}

/// `EX` truncated at degree `max_degree`, optionally filtered to
/// `(EX)^τ` or `(EX)^μ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncEmss {
    pub family: MSetFamily,
    pub max_degree: usize,
    pub filter: Option<Filter>,
}

impl TruncEmss {
    pub fn new(family: MSetFamily) -> TruncEmss {
        TruncEmss {
            family,
            max_degree: DEFAULT_DEGREE,
            filter: None,
        }
    }

    pub fn with_degree(mut self, d: usize) -> TruncEmss {
        self.max_degree = d;
        self
    }

    pub fn filtered(mut self, which: Filter) -> TruncEmss {
        self.filter = Some(which);
        self
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        s.degree() <= self.max_degree
            && s.coords.iter().all(|x| self.family.contains(x))
            && match self.filter {
                None => true,
                Some(Filter::Tau) => s.is_finitely_supported(),
                Some(Filter::Mu) => s.is_coinfinitely_supported(),
            }
    }

    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Result<Simplex, EmssError> {
        if s.degree() + 1 > self.max_degree {
            return Err(EmssError::TruncationExceeded {
                degree: s.degree() + 1,
                max: self.max_degree,
            });
        }
        s.degeneracy(i)
    }
}

/// All monotone maps `[m] → [n]`, as value lists.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, lo: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(len, v, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m + 1, 0, n, &mut Vec::new(), &mut out);
    out
}

/// All injections `domain → {1, …, bound}`, in lexicographic order of
/// their value lists.
pub fn bounded_injections(domain: &[i64], bound: i64) -> Vec<InjElt> {
    fn go(domain: &[i64], bound: i64, cur: &mut Vec<(i64, i64)>, out: &mut Vec<InjElt>) {
        if cur.len() == domain.len() {
            out.push(InjElt::from_table(cur).expect("distinct values"));
            return;
        }
        for y in 1..=bound {
            if cur.iter().all(|&(_, v)| v != y) {
                cur.push((domain[cur.len()], y));
                go(domain, bound, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(domain, bound, &mut Vec::new(), &mut out);
    out
}

/// All `n`-simplices whose coordinates come from `pool`.
pub fn simplices_over(pool: &[MElt], n: usize) -> Vec<Simplex> {
    let mut out = vec![Vec::new()];
    for _ in 0..=n {
        out = out
            .into_iter()
            .flat_map(|c: Vec<MElt>| {
                pool.iter().map(move |x| {
                    let mut c = c.clone();
                    c.push(x.clone());
                    c
                })
            })
            .collect();
    }
    out.into_iter().map(Simplex::new).collect()
}

/// `E Inj({1,…,a}, ω)` with a finite group `G` permuting the domain, and a
/// graph subgroup `Γ_{H,φ}` with `H` embedded in `ℳ`.
pub struct GraphFixedPoints<'a> {
    pub domain_size: usize,
    pub group: &'a FinGroup,
    /// `rho[g][i]` is the image of `i + 1` under `g`, 1-based.
    pub rho: Vec<Vec<i64>>,
    pub embedding: &'a UniversalEmbedding,
    /// `phi[h]` for `h ∈ H`.
    pub phi: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FixedPointReport {
    pub vertices: Vec<InjElt>,
    pub simplices: Vec<Simplex>,
    pub entry_bound: i64,
    /// Some `emb(h)` sends a point within the bound outside it, so fixed
    /// points using entries near the bound may be missed.
    pub boundary_effects: bool,
}

impl GraphFixedPoints<'_> {
    pub fn validate(&self) -> Result<(), EmssError> {
        let h_order = self.embedding.group().order();
        if self.phi.len() != h_order || self.rho.len() != self.group.order() {
            return Err(EmssError::ArityMismatch {
                expected: h_order,
                got: self.phi.len(),
            });
        }
        for a in 0..h_order {
            for b in 0..h_order {
                let ab = self.embedding.group().mul(a, b);
                if self.phi[ab] != self.group.mul(self.phi[a], self.phi[b]) {
                    return Err(EmssError::NotAHomomorphism);
                }
            }
        }
        Ok(())
    }

    /// Whether `(emb(h), φ(h)).u = u` for all `h`, i.e.
    /// `emb(h)(u(i)) = u(ρ(φ(h))(i))` on the domain.
    pub fn is_fixed(&self, u: &InjElt) -> bool {
        (0..self.phi.len()).all(|h| {
            let e = self.embedding.map(h);
            let r = &self.rho[self.phi[h]];
            (1..=self.domain_size as i64).all(|i| e.eval(u.eval(i)) == u.eval(r[(i - 1) as usize]))
        })
    }

    pub fn fixed_points(&self, n: usize, entry_bound: i64) -> Result<FixedPointReport, EmssError> {
        self.validate()?;
        let domain: Vec<i64> = (1..=self.domain_size as i64).collect();
        let vertices: Vec<InjElt> = bounded_injections(&domain, entry_bound)
            .into_iter()
            .filter(|u| self.is_fixed(u))
            .collect();
        let pool: Vec<MElt> = vertices.iter().cloned().map(MElt::Inj).collect();
        let simplices = if pool.is_empty() { Vec::new() } else { simplices_over(&pool, n) };
        let boundary_effects = (0..self.phi.len())
            .any(|h| (1..=entry_bound).any(|x| self.embedding.map(h).eval(x) > entry_bound));
        Ok(FixedPointReport {
            vertices,
            simplices,
            entry_bound,
            boundary_effects,
        })
    }
}

/// Permutations of `{1,…,a}` in the element order of
/// [`FinGroup::symmetric`].
pub fn permutation_lists(a: usize) -> Vec<Vec<i64>> {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 0..k {
            for rest in perms(k - 1) {
                let mut p = vec![first];
                p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
                out.push(p);
            }
        }
        out
    }
    perms(a)
        .into_iter()
        .map(|p| p.into_iter().map(|x| x as i64 + 1).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    fn v(y: i64) -> MElt {
        MElt::inj(&[(1, y)]).unwrap()
    }

    #[test]
    fn face_degeneracy_examples() {
        let ab = Simplex::new(vec![v(1), v(2)]);
        assert_eq!(ab.face(0).unwrap(), Simplex::vertex(v(2)));
        assert_eq!(Simplex::vertex(v(1)).degeneracy(0).unwrap(), Simplex::new(vec![v(1), v(1)]));
        assert_eq!(ab.degeneracy(0).unwrap().face(0).unwrap(), ab);
        assert!(ab.face(2).is_err());
        let x = TruncEmss::new(MSetFamily::Inj(UpSet::finite([1]))).with_degree(1);
        assert!(matches!(x.degeneracy(&ab, 0), Err(EmssError::TruncationExceeded { .. })));
    }

    #[test]
    fn act_and_support_examples() {
        let s = Simplex::vertex(v(1));
        assert_eq!(s.em_act(&[PapInj::double()]).unwrap(), Simplex::vertex(v(2)));
        assert_eq!(s.em_act(&[PapInj::identity()]).unwrap(), s);
        let e = Simplex::new(vec![v(3), v(7)]);
        assert_eq!(e.k_support(0), Support::Least(UpSet::finite([3])));
        assert_eq!(e.k_support(1), Support::Least(UpSet::finite([7])));
        let d = Simplex::vertex(MElt::SelfM(PapInj::double()));
        assert_eq!(d.k_support(0), Support::Least(UpSet::evens()));
        let id = Simplex::vertex(MElt::SelfM(PapInj::identity()));
        assert_eq!(id.k_support(0), Support::Least(UpSet::omega()));
        assert!(!id.is_k_supported_on(0, &UpSet::evens()));
    }

    #[test]
    fn filters() {
        let x = TruncEmss::new(MSetFamily::SelfM);
        let mu = x.clone().filtered(Filter::Mu);
        let tau = x.filtered(Filter::Tau);
        assert!(mu.contains(&Simplex::vertex(MElt::SelfM(PapInj::double()))));
        assert!(!mu.contains(&Simplex::vertex(MElt::SelfM(PapInj::identity()))));
        assert!(!tau.contains(&Simplex::vertex(MElt::SelfM(PapInj::double()))));
    }

    #[test]
    fn monotone_map_counts() {
        // binomial(m + n + 1, m + 1)
        assert_eq!(monotone_maps(1, 1).len(), 3);
        assert_eq!(monotone_maps(2, 3).len(), 20);
        assert_eq!(monotone_maps(0, 3).len(), 4);
    }

    #[test]
    fn fixed_points_c2() {
        let h = FinGroup::cyclic(2);
        let emb = h.universal_embedding(DEFAULT_MAX_ORDER).unwrap();
        let g = FinGroup::symmetric(2);
        let problem = GraphFixedPoints {
            domain_size: 2,
            group: &g,
            rho: permutation_lists(2),
            embedding: &emb,
            phi: vec![0, 1],
        };
        let report = problem.fixed_points(0, 30).unwrap();
        assert!(!report.boundary_effects);
        let mut expected = Vec::new();
        for k in 0..10 {
            expected.push((3 * k + 1, 3 * k + 2));
            expected.push((3 * k + 2, 3 * k + 1));
        }
        expected.sort_unstable();
        let mut got: Vec<(i64, i64)> = report.vertices.iter().map(|u| (u.eval(1), u.eval(2))).collect();
        got.sort_unstable();
        assert_eq!(got, expected);

        let trivial = GraphFixedPoints {
            phi: vec![0, 0],
            ..problem
        };
        let report = trivial.fixed_points(0, 30).unwrap();
        assert_eq!(report.vertices.len(), 10 * 9);
        assert!(report.vertices.iter().all(|u| u.eval(1) % 3 == 0 && u.eval(2) % 3 == 0));
    }
}
