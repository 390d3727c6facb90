//! Small finite groups, their subgroup lattices, and embeddings into `ℳ`
//! that make `ω` a complete `H`-set universe.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::pap::{PapInj, PapMap};

/// Largest group order accepted by [`FinGroup::universal_embedding`].
pub const DEFAULT_MAX_ORDER: usize = 24;

/// A finite group given by its multiplication table; element `0` is the
/// identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinGroup {
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    NotAGroup(&'static str),
    GroupTooLarge { order: usize, max: usize },
    NotAHomomorphism { g: usize, h: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotAGroup(why) => write!(f, "not a group: {why}"),
            GroupError::GroupTooLarge { order, max } => {
                write!(f, "group of order {order} exceeds the bound {max}")
            }
            GroupError::NotAHomomorphism { g, h } => {
                write!(f, "embedding fails the homomorphism law at ({g}, {h})")
            }
        }
    }
}

impl core::error::Error for GroupError {}

/// A subgroup as a bitmask over element indices.
pub type Subgroup = u64;

impl FinGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FinGroup, GroupError> {
        let n = table.len();
        if n == 0 || n > 64 {
            return Err(GroupError::NotAGroup("order must be between 1 and 64"));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GroupError::NotAGroup("table is not square over the elements"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(GroupError::NotAGroup("element 0 is not an identity"));
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == 0) {
                return Err(GroupError::NotAGroup("missing inverse"));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAGroup("not associative"));
                    }
                }
            }
        }
        Ok(FinGroup { table })
    }

    pub fn trivial() -> FinGroup {
        FinGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> FinGroup {
        assert!(n >= 1);
        FinGroup {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    /// The symmetric group on `{0, …, k−1}`, elements in lexicographic
    /// order of their permutation lists (so the identity comes first).
    pub fn symmetric(k: usize) -> FinGroup {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&(0..k).map(|i| a[b[i]]).collect()))
                    .collect()
            })
            .collect();
        FinGroup { table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).unwrap()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    fn closure(&self, gens: Subgroup) -> Subgroup {
        let mut h: Subgroup = 1 | gens;
        loop {
            let mut next = h;
            for a in bits(h) {
                for b in bits(h) {
                    next |= 1 << self.mul(a, b);
                }
            }
            if next == h {
                return h;
            }
            h = next;
        }
    }

    /// All subgroups, by increasing order then bitmask.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found = vec![1 as Subgroup];
        let mut i = 0;
        while i < found.len() {
            let h = found[i];
            for g in self.elements() {
                if h & (1 << g) == 0 {
                    let k = self.closure(h | (1 << g));
                    if !found.contains(&k) {
                        found.push(k);
                    }
                }
            }
            i += 1;
        }
        found.sort_by_key(|&h| (h.count_ones(), h));
        found
    }

    pub fn conjugate(&self, h: Subgroup, g: usize) -> Subgroup {
        let gi = self.inverse(g);
        bits(h).fold(0, |acc, x| acc | 1 << self.mul(self.mul(g, x), gi))
    }

    /// One representative per conjugacy class of subgroups, ordered by
    /// increasing order (so the trivial subgroup comes first).
    pub fn subgroup_classes(&self) -> Vec<Subgroup> {
        let mut reps: Vec<Subgroup> = Vec::new();
        for h in self.subgroups() {
            let seen = reps
                .iter()
                .any(|&r| self.elements().any(|g| self.conjugate(r, g) == h));
            if !seen {
                reps.push(h);
            }
        }
        reps
    }

    /// Left cosets `gK` in order of first appearance.
    pub fn cosets(&self, k: Subgroup) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = Vec::new();
        for g in self.elements() {
            let c = bits(k).fold(0, |acc, x| acc | 1 << self.mul(g, x));
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    pub fn is_subgroup_conjugate(&self, a: Subgroup, b: Subgroup) -> bool {
        self.elements().any(|g| self.conjugate(a, g) == b)
    }

    /// Embeds the group into the bijections of `ω`: `ω` is cut into
    /// consecutive blocks, each holding one copy of `H/K` for every
    /// conjugacy class of subgroups `K`, and `h` acts by left
    /// multiplication on cosets inside every block.
    pub fn universal_embedding(&self, max_order: usize) -> Result<UniversalEmbedding, GroupError> {
        if self.order() > max_order {
            return Err(GroupError::GroupTooLarge {
                order: self.order(),
                max: max_order,
            });
        }
        let mut segments = Vec::new();
        let mut offset = 0;
        for k in self.subgroup_classes() {
            let cosets = self.cosets(k);
            let len = cosets.len();
            segments.push(Segment {
                subgroup: k,
                offset,
                cosets,
            });
            offset += len;
        }
        let block = offset as i64;
        let maps = self
            .elements()
            .map(|h| {
                let perm: Vec<i64> = segments
                    .iter()
                    .flat_map(|s| {
                        s.cosets.iter().map(move |&c| {
                            let hc = bits(c).fold(0, |acc, x| acc | 1 << self.mul(h, x));
                            (s.offset + s.cosets.iter().position(|&d| d == hc).unwrap()) as i64
                        })
                    })
                    .collect();
                let map = PapMap::from_fn(0, block, |x| {
                    let i = (x - 1).rem_euclid(block);
                    x - i + perm[i as usize]
                });
                PapInj::validate(map).expect("block permutation")
            })
            .collect();
        let emb = UniversalEmbedding {
            group: self.clone(),
            block,
            segments,
            maps,
        };
        emb.check_homomorphism()?;
        Ok(emb)
    }
}

#[derive(Clone, Debug)]
pub struct Segment {
    pub subgroup: Subgroup,
    /// Position of the first point of this orbit inside a block (0-based).
    pub offset: usize,
    pub cosets: Vec<Subgroup>,
}

#[derive(Clone, Debug)]
pub struct UniversalEmbedding {
    group: FinGroup,
    block: i64,
    segments: Vec<Segment>,
    maps: Vec<PapInj>,
}

impl UniversalEmbedding {
    pub fn block_size(&self) -> i64 {
        self.block
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn map(&self, h: usize) -> &PapInj {
        &self.maps[h]
    }

    pub fn check_homomorphism(&self) -> Result<(), GroupError> {
        let g = &self.group;
        for a in g.elements() {
            for b in g.elements() {
                if self.maps[a].compose(&self.maps[b]) != self.maps[g.mul(a, b)] {
                    return Err(GroupError::NotAHomomorphism { g: a, h: b });
                }
            }
        }
        Ok(())
    }

    /// The orbit of `x` and its stabilizer, computed pointwise.
    pub fn orbit_and_stabilizer(&self, x: i64) -> (Vec<i64>, Subgroup) {
        let mut orbit: Vec<i64> = self.maps.iter().map(|m| m.eval(x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        let stab = self
            .group
            .elements()
            .filter(|&h| self.maps[h].eval(x) == x)
            .fold(0, |acc, h| acc | 1 << h);
        (orbit, stab)
    }

    /// Number of blocks among the first `blocks` whose segment for the
    /// subgroup class `k` is an orbit with stabilizer conjugate to `k`.
    pub fn blocks_with_orbit_type(&self, k: Subgroup, blocks: i64) -> i64 {
        let seg = self
            .segments
            .iter()
            .find(|s| self.group.is_subgroup_conjugate(s.subgroup, k))
            .expect("every subgroup class has a segment");
        (0..blocks)
            .filter(|&b| {
                let start = b * self.block + seg.offset as i64 + 1;
                let expected: Vec<i64> = (start..start + seg.cosets.len() as i64).collect();
                let (orbit, stab) = self.orbit_and_stabilizer(start);
                orbit == expected && self.group.is_subgroup_conjugate(stab, k)
            })
            .count() as i64
    }
}

fn bits(mask: Subgroup) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask & (1 << i) != 0)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..k {
        for rest in permutations(k - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts() {
        assert_eq!(FinGroup::cyclic(4).subgroups().len(), 3);
        assert_eq!(FinGroup::symmetric(3).subgroups().len(), 6);
        assert_eq!(FinGroup::symmetric(3).subgroup_classes().len(), 4);
        assert_eq!(FinGroup::symmetric(4).subgroups().len(), 30);
        assert_eq!(FinGroup::symmetric(4).subgroup_classes().len(), 11);
        let c2xc2 = FinGroup::from_table(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        assert_eq!(c2xc2.subgroups().len(), 5);
    }

    #[test]
    fn embedding_trivial_and_c2() {
        let e = FinGroup::trivial().universal_embedding(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.map(0), &PapInj::identity());
        let e = FinGroup::cyclic(2).universal_embedding(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.block_size(), 3);
        let h = e.map(1);
        for k in 0..50 {
            assert_eq!(h.eval(3 * k + 1), 3 * k + 2);
            assert_eq!(h.eval(3 * k + 2), 3 * k + 1);
            assert_eq!(h.eval(3 * k + 3), 3 * k + 3);
        }
        assert_eq!(h.compose(h), PapInj::identity());
    }

    #[test]
    fn embedding_s3() {
        let g = FinGroup::symmetric(3);
        let e = g.universal_embedding(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.block_size(), 6 + 3 + 2 + 1);
        for k in g.subgroup_classes() {
            assert_eq!(e.blocks_with_orbit_type(k, 5), 5);
        }
        assert!(FinGroup::symmetric(5).universal_embedding(DEFAULT_MAX_ORDER).is_err());
    }
}
