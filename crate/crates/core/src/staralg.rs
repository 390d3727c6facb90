//! The free commutative `*`-algebra on a point.
//!
//! An `n`-simplex of weight `m` is a `Σ_m`-orbit of `(1+n)`-tuples of
//! injections `{1,…,m} → ω`. It is stored as `m` columns, column `i`
//! holding the values of point `i` at levels `0,…,n`, sorted
//! lexicographically. The partial sum juxtaposes columns and is defined
//! when the two operands have disjoint images at every level.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::boxprod::{box_membership, BoxOutcome, BoxViolation};
use crate::emss::Simplex;
use crate::mset::MElt;
use crate::pap::{InjN, PapInj};
use crate::upset::UpSet;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ConfigSimplex {
    degree: usize,
    cols: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarError {
    Malformed(&'static str),
    DegreeMismatch,
    ArityMismatch { expected: usize, got: usize },
    NotSummable { level: usize, violation: BoxViolation },
}

impl fmt::Display for StarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarError::Malformed(why) => write!(f, "malformed configuration: {why}"),
            StarError::DegreeMismatch => f.write_str("degrees differ"),
            StarError::ArityMismatch { expected, got } => {
                write!(f, "expected {expected} operands, got {got}")
            }
            StarError::NotSummable { level, violation } => {
                write!(f, "not summable at level {level} ({violation})")
            }
        }
    }
}

impl core::error::Error for StarError {}

impl ConfigSimplex {
    pub fn new(degree: usize, mut cols: Vec<Vec<i64>>) -> Result<ConfigSimplex, StarError> {
        if cols.iter().any(|c| c.len() != degree + 1) {
            return Err(StarError::Malformed("every column needs one value per level"));
        }
        if cols.iter().flatten().any(|&v| v < 1) {
            return Err(StarError::Malformed("values must be positive"));
        }
        for k in 0..=degree {
            let mut level: Vec<i64> = cols.iter().map(|c| c[k]).collect();
            level.sort_unstable();
            if level.windows(2).any(|w| w[0] == w[1]) {
                return Err(StarError::Malformed("values at a level must be distinct"));
            }
        }
        cols.sort();
        Ok(ConfigSimplex { degree, cols })
    }

    /// The weight-0 simplex, the unit in every degree.
    pub fn unit(degree: usize) -> ConfigSimplex {
        ConfigSimplex {
            degree,
            cols: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[Vec<i64>] {
        &self.cols
    }

    pub fn level_image(&self, k: usize) -> UpSet {
        UpSet::finite(self.cols.iter().map(|c| c[k]))
    }

    /// The least `k`-support: the image at level `k`.
    pub fn k_support(&self, k: usize) -> UpSet {
        self.level_image(k)
    }

    /// Coordinate `k` as an element of `Inj({1,…,m}, ω)`, using this
    /// representative of the orbit.
    pub fn as_simplex(&self) -> Simplex {
        Simplex::new(
            (0..=self.degree)
                .map(|k| {
                    let table: Vec<(i64, i64)> =
                        self.cols.iter().enumerate().map(|(i, c)| (i as i64 + 1, c[k])).collect();
                    MElt::inj(&table).expect("distinct level values")
                })
                .collect(),
        )
    }

    fn first_clash(&self, other: &ConfigSimplex) -> Option<usize> {
        (0..=self.degree).find(|&k| self.cols.iter().any(|c| other.cols.iter().any(|d| d[k] == c[k])))
    }

    pub fn is_summable(&self, other: &ConfigSimplex) -> bool {
        self.degree == other.degree && self.first_clash(other).is_none()
    }

    /// Summability decided through box-product membership of the two
    /// representatives.
    pub fn summable_via_box(&self, other: &ConfigSimplex) -> Result<(), StarError> {
        if self.degree != other.degree {
            return Err(StarError::DegreeMismatch);
        }
        match box_membership(&[self.as_simplex(), other.as_simplex()]) {
            Ok(BoxOutcome::In(_)) => Ok(()),
            Ok(BoxOutcome::NotIn { level, violation }) => Err(StarError::NotSummable { level, violation }),
            Err(_) => unreachable!("finite injections have least supports"),
        }
    }

    pub fn sum(&self, other: &ConfigSimplex) -> Result<ConfigSimplex, StarError> {
        if self.degree != other.degree {
            return Err(StarError::DegreeMismatch);
        }
        if let Some(level) = self.first_clash(other) {
            return Err(StarError::NotSummable {
                level,
                violation: BoxViolation::Overlap { i: 0, j: 1 },
            });
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        cols.sort();
        Ok(ConfigSimplex {
            degree: self.degree,
            cols,
        })
    }

    pub fn face(&self, i: usize) -> Option<ConfigSimplex> {
        (self.degree > 0 && i <= self.degree).then(|| {
            let mut cols: Vec<Vec<i64>> = self
                .cols
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.remove(i);
                    c
                })
                .collect();
            cols.sort();
            ConfigSimplex {
                degree: self.degree - 1,
                cols,
            }
        })
    }

    pub fn degeneracy(&self, i: usize) -> Option<ConfigSimplex> {
        (i <= self.degree).then(|| {
            let mut cols: Vec<Vec<i64>> = self
                .cols
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.insert(i, c[i]);
                    c
                })
                .collect();
            cols.sort();
            ConfigSimplex {
                degree: self.degree + 1,
                cols,
            }
        })
    }

    /// `(u₀,…,uₙ).self`: level `k` is postcomposed with `u_k`.
    pub fn em_act(&self, us: &[PapInj]) -> Result<ConfigSimplex, StarError> {
        if us.len() != self.degree + 1 {
            return Err(StarError::ArityMismatch {
                expected: self.degree + 1,
                got: us.len(),
            });
        }
        let mut cols: Vec<Vec<i64>> = self
            .cols
            .iter()
            .map(|c| c.iter().zip(us).map(|(&v, u)| u.eval(v)).collect())
            .collect();
        cols.sort();
        Ok(ConfigSimplex {
            degree: self.degree,
            cols,
        })
    }

    /// Applies a permutation of the points and renormalizes.
    pub fn permuted(&self, perm: &[usize]) -> ConfigSimplex {
        let mut cols: Vec<Vec<i64>> = perm.iter().map(|&p| self.cols[p].clone()).collect();
        cols.sort();
        ConfigSimplex {
            degree: self.degree,
            cols,
        }
    }
}

/// The `𝓘`-algebra structure: operand `j` is moved by `f_k ι_j` at level
/// `k`, and the results are juxtaposed.
pub fn i_action(frame: &[InjN], operands: &[ConfigSimplex]) -> Result<ConfigSimplex, StarError> {
    let Some(first) = operands.first() else {
        return Err(StarError::ArityMismatch { expected: 1, got: 0 });
    };
    let n = first.degree;
    if operands.iter().any(|o| o.degree != n) {
        return Err(StarError::DegreeMismatch);
    }
    if frame.len() != n + 1 {
        return Err(StarError::ArityMismatch {
            expected: n + 1,
            got: frame.len(),
        });
    }
    if let Some(f) = frame.iter().find(|f| f.arity() != operands.len()) {
        return Err(StarError::ArityMismatch {
            expected: f.arity(),
            got: operands.len(),
        });
    }
    let mut cols = Vec::new();
    for (j, o) in operands.iter().enumerate() {
        for c in &o.cols {
            cols.push(c.iter().enumerate().map(|(k, &v)| frame[k].component(j).eval(v)).collect());
        }
    }
    ConfigSimplex::new(n, cols)
}

impl fmt::Display for ConfigSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cfg{{m={}, cols=[", self.weight())?;
        for (i, c) in self.cols.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (k, v) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]}")
    }
}

/// All simplices of the given degree and weight with entries at most
/// `bound`, one per orbit.
pub fn bounded_configs(degree: usize, weight: usize, bound: i64) -> Vec<ConfigSimplex> {
    let columns: Vec<Vec<i64>> = {
        let mut out = vec![Vec::new()];
        for _ in 0..=degree {
            out = out
                .into_iter()
                .flat_map(|c: Vec<i64>| {
                    (1..=bound).map(move |v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        out
    };
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(
        columns: &[Vec<i64>],
        degree: usize,
        weight: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<ConfigSimplex>,
    ) {
        if chosen.len() == weight {
            let cols: Vec<Vec<i64>> = chosen.iter().map(|&i| columns[i].clone()).collect();
            out.push(ConfigSimplex { degree, cols });
            return;
        }
        for i in start..columns.len() {
            let c = &columns[i];
            if chosen.iter().all(|&p| (0..=degree).all(|k| columns[p][k] != c[k])) {
                chosen.push(i);
                go(columns, degree, weight, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    go(&columns, degree, weight, 0, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn vtx(vals: &[i64]) -> ConfigSimplex {
        ConfigSimplex::new(0, vals.iter().map(|&v| vec![v]).collect()).unwrap()
    }

    #[test]
    fn sum_examples() {
        let s = vtx(&[1]).sum(&vtx(&[2])).unwrap();
        assert_eq!(s, vtx(&[1, 2]));
        assert_eq!(s.to_string(), "cfg{m=2, cols=[[1], [2]]}");
        assert_eq!(vtx(&[1]).sum(&ConfigSimplex::unit(0)).unwrap(), vtx(&[1]));
        assert!(matches!(vtx(&[1]).sum(&vtx(&[1])), Err(StarError::NotSummable { level: 0, .. })));
        assert!(vtx(&[1]).summable_via_box(&vtx(&[1])).is_err());
        assert!(vtx(&[1]).summable_via_box(&vtx(&[2])).is_ok());
    }

    #[test]
    fn i_action_examples() {
        let s = i_action(&[InjN::interleave(2)], &[vtx(&[1]), vtx(&[1])]).unwrap();
        assert_eq!(s, vtx(&[2, 1]));
        assert_eq!(s.cols(), &[vec![1], vec![2]]);
        let a = ConfigSimplex::new(1, vec![vec![3, 5], vec![4, 1]]).unwrap();
        assert_eq!(i_action(&[InjN::identity(), InjN::identity()], &[a.clone()]).unwrap(), a);
    }

    #[test]
    fn normal_form_and_faces() {
        let a = ConfigSimplex::new(1, vec![vec![3, 1], vec![1, 3]]).unwrap();
        assert_eq!(a.permuted(&[1, 0]), a);
        assert_eq!(a.face(0).unwrap(), vtx(&[1, 3]));
        assert_eq!(a.degeneracy(0).unwrap().face(0).unwrap(), a);
        assert!(ConfigSimplex::new(1, vec![vec![1, 2], vec![1, 3]]).is_err());
    }

    #[test]
    fn bounded_counts() {
        // orbits of injections {1,2} -> {1..4}: 12 / 2
        assert_eq!(bounded_configs(0, 2, 4).len(), 6);
        // pairs of columns with distinct entries at both levels: (16 * 9) / 2
        assert_eq!(bounded_configs(1, 2, 4).len(), 72);
        assert_eq!(bounded_configs(2, 0, 8).len(), 1);
    }
}
