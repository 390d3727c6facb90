//! Named constants and functions of the expression language.

use mildset_core::boxprod::box_membership;
use mildset_core::mset::{equal_mod_ma, intersection_support_witness, stabilizing_chi, EqualModMA};
use mildset_core::operadic::{class_equal, mu_via_operadic, phi_inverse_of};
use mildset_core::staralg::i_action;
use mildset_core::{InjN, MElt, OperadicClass, PapInj, PapMap, SetClass, Simplex, UpSet};

use crate::parse::ExprError;
use crate::value::Value;

/// Period bound for the search behind `chi`.
pub const CHI_MAX_PERIOD: i64 = 64;

fn err(col: usize, msg: impl std::fmt::Display) -> ExprError {
    ExprError::Eval {
        col,
        msg: msg.to_string(),
    }
}

pub fn constant(name: &str, col: usize) -> Result<Value, ExprError> {
    Ok(match name {
        "id" => Value::Inj(PapInj::identity()),
        "succ" => Value::Inj(PapInj::succ()),
        "double" => Value::Inj(PapInj::double()),
        "omega" => Value::Set(UpSet::omega()),
        "evens" => Value::Set(UpSet::evens()),
        "odds" => Value::Set(UpSet::odds()),
        "empty" => Value::Set(UpSet::empty()),
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => return Err(err(col, format!("unknown name '{name}'"))),
    })
}

struct Args {
    name: String,
    col: usize,
    items: Vec<(usize, Value)>,
}

impl Args {
    fn arity(&self, lo: usize, hi: usize) -> Result<(), ExprError> {
        let n = self.items.len();
        if n < lo || n > hi {
            let want = if lo == hi { format!("{lo}") } else if hi == usize::MAX { format!("at least {lo}") } else { format!("{lo} to {hi}") };
            return Err(err(self.col, format!("{} takes {want} arguments, got {n}", self.name)));
        }
        Ok(())
    }

    fn wrong(&self, i: usize, want: &str) -> ExprError {
        let (c, v) = &self.items[i];
        err(*c, format!("{}: expected {want}, found {}", self.name, v.kind()))
    }

    fn int(&self, i: usize) -> Result<i64, ExprError> {
        match &self.items[i].1 {
            Value::Int(n) => Ok(*n),
            _ => Err(self.wrong(i, "an integer")),
        }
    }

    fn index(&self, i: usize) -> Result<usize, ExprError> {
        usize::try_from(self.int(i)?).map_err(|_| self.wrong(i, "a natural number"))
    }

    fn set(&self, i: usize) -> Result<UpSet, ExprError> {
        match &self.items[i].1 {
            Value::Set(s) => Ok(s.clone()),
            _ => Err(self.wrong(i, "a set")),
        }
    }

    fn inj(&self, i: usize) -> Result<PapInj, ExprError> {
        match &self.items[i].1 {
            Value::Inj(u) => Ok(u.clone()),
            Value::Elt(MElt::SelfM(u)) => Ok(u.clone()),
            _ => Err(self.wrong(i, "a pap map")),
        }
    }

    fn map(&self, i: usize) -> Result<PapMap, ExprError> {
        match &self.items[i].1 {
            Value::Inj(u) => Ok(u.as_map().clone()),
            Value::Map(m) => Ok(m.clone()),
            _ => Err(self.wrong(i, "a map")),
        }
    }

    fn injs(&self, i: usize) -> Result<Vec<PapInj>, ExprError> {
        match &self.items[i].1 {
            Value::Tuple(vs) | Value::Seq(vs) => vs
                .iter()
                .map(|v| match v {
                    Value::Inj(u) => Ok(u.clone()),
                    _ => Err(self.wrong(i, "a list of pap maps")),
                })
                .collect(),
            Value::Inj(u) => Ok(vec![u.clone()]),
            _ => Err(self.wrong(i, "a list of pap maps")),
        }
    }

    fn elt(&self, i: usize) -> Result<MElt, ExprError> {
        self.items[i].1.to_elt().ok_or_else(|| self.wrong(i, "an element"))
    }

    fn simplex(&self, i: usize) -> Result<Simplex, ExprError> {
        self.items[i].1.to_simplex().ok_or_else(|| self.wrong(i, "a simplex"))
    }

    fn class(&self, i: usize) -> Result<OperadicClass, ExprError> {
        match &self.items[i].1 {
            Value::Class(c) => Ok(c.clone()),
            _ => Err(self.wrong(i, "a class")),
        }
    }

    fn frame(&self, i: usize) -> Result<Vec<InjN>, ExprError> {
        match &self.items[i].1 {
            Value::InjN(f) => Ok(vec![f.clone()]),
            Value::Seq(vs) => vs
                .iter()
                .map(|v| match v {
                    Value::InjN(f) => Ok(f.clone()),
                    _ => Err(self.wrong(i, "a frame of injn values")),
                })
                .collect(),
            _ => Err(self.wrong(i, "a frame of injn values")),
        }
    }

    fn is_simplex_like(&self, i: usize) -> bool {
        matches!(self.items[i].1, Value::Simplex(_) | Value::Seq(_) | Value::Config(_))
    }
}

fn set_class(s: &UpSet) -> String {
    match s.classify() {
        SetClass::Finite(n) => format!("Finite({n})"),
        SetClass::Cofinite(n) => format!("Cofinite({n})"),
        SetClass::BiInfinite => "Bi-infinite".into(),
    }
}

pub fn call(name: &str, items: Vec<(usize, Value)>, col: usize) -> Result<Value, ExprError> {
    let a = Args {
        name: name.to_string(),
        col,
        items,
    };
    let here = |e: &dyn std::fmt::Display| err(col, e);
    Ok(match name {
        "swap" => {
            a.arity(2, 2)?;
            let (x, y) = (a.int(0)?, a.int(1)?);
            if x < 1 || y < 1 {
                return Err(err(col, "swap needs points of ω"));
            }
            Value::Inj(PapInj::swap(x, y))
        }
        "affine" => {
            a.arity(2, 2)?;
            let (m, b) = (a.int(0)?, a.int(1)?);
            if m < 1 || m + b < 1 {
                return Err(err(col, "affine(a, b) needs a ≥ 1 and a + b ≥ 1"));
            }
            Value::Inj(PapInj::affine(m, b))
        }
        "interleave" => {
            a.arity(1, 2)?;
            let n = a.int(0)?;
            if n < 1 {
                return Err(a.wrong(0, "a positive arity"));
            }
            if a.items.len() == 1 {
                Value::InjN(InjN::interleave(n))
            } else {
                let j = a.int(1)?;
                if j < 1 || j > n {
                    return Err(a.wrong(1, "a strand in 1..=n"));
                }
                Value::Inj(PapInj::interleave(n, j))
            }
        }
        "progression" => {
            a.arity(2, 2)?;
            let (s, q) = (a.int(0)?, a.int(1)?);
            if s < 1 || q < 1 {
                return Err(err(col, "progression needs positive start and step"));
            }
            Value::Set(UpSet::progression(s, q))
        }
        "greater_than" => {
            a.arity(1, 1)?;
            Value::Set(UpSet::greater_than(a.int(0)?.max(0)))
        }
        "compose" => {
            a.arity(2, usize::MAX)?;
            if a.items.iter().all(|(_, v)| matches!(v, Value::Inj(_))) {
                let mut acc = a.inj(a.items.len() - 1)?;
                for i in (0..a.items.len() - 1).rev() {
                    acc = a.inj(i)?.compose(&acc);
                }
                Value::Inj(acc)
            } else {
                let mut acc = a.map(a.items.len() - 1)?;
                for i in (0..a.items.len() - 1).rev() {
                    acc = a.map(i)?.compose(&acc);
                }
                Value::Map(acc)
            }
        }
        "apply" => {
            a.arity(2, 2)?;
            let x = a.int(1)?;
            if x < 1 {
                return Err(a.wrong(1, "a point of ω"));
            }
            Value::Int(a.map(0)?.eval(x))
        }
        "image" => {
            a.arity(1, 2)?;
            match (&a.items[0].1, a.items.len()) {
                (Value::Elt(MElt::Inj(i)), 1) => Value::Set(i.image()),
                (_, 1) => Value::Set(a.inj(0)?.range()),
                _ => Value::Set(a.map(0)?.image_of(&a.set(1)?)),
            }
        }
        "preimage" => {
            a.arity(2, 2)?;
            Value::Set(a.map(0)?.preimage(&a.set(1)?))
        }
        "union" | "intersect" => {
            a.arity(1, usize::MAX)?;
            let mut acc = a.set(0)?;
            for i in 1..a.items.len() {
                acc = if name == "union" { acc.union(&a.set(i)?) } else { acc.intersect(&a.set(i)?) };
            }
            Value::Set(acc)
        }
        "difference" => {
            a.arity(2, 2)?;
            Value::Set(a.set(0)?.difference(&a.set(1)?))
        }
        "complement" => {
            a.arity(1, 1)?;
            Value::Set(a.set(0)?.complement())
        }
        "contains" => {
            a.arity(2, 2)?;
            Value::Bool(a.set(0)?.contains(a.int(1)?))
        }
        "subset" => {
            a.arity(2, 2)?;
            Value::Bool(a.set(0)?.is_subset(&a.set(1)?))
        }
        "is_coinfinite" => {
            a.arity(1, 1)?;
            Value::Bool(a.set(0)?.is_coinfinite())
        }
        "full" => {
            a.arity(1, 1)?;
            Value::Text(a.set(0)?.full_literal())
        }
        "classify" => {
            a.arity(1, 1)?;
            match &a.items[0].1 {
                Value::Set(s) => Value::Text(set_class(s)),
                Value::Inj(u) => Value::Text(MElt::SelfM(u.clone()).classify().to_string()),
                _ => Value::Text(a.elt(0)?.classify().to_string()),
            }
        }
        "enumerator" => {
            a.arity(1, 1)?;
            Value::Inj(PapInj::enumerate(&a.set(0)?).map_err(|e| here(&e))?)
        }
        "equal_on" => {
            a.arity(3, 3)?;
            Value::Bool(a.map(0)?.equal_on(&a.map(1)?, &a.set(2)?))
        }
        "fixes" => {
            a.arity(2, 2)?;
            Value::Bool(a.inj(0)?.fixes_pointwise(&a.set(1)?))
        }
        "is_bijective" => {
            a.arity(1, 1)?;
            Value::Bool(a.inj(0)?.is_bijective())
        }
        "partial_inverse" => {
            a.arity(1, 1)?;
            Value::Map(a.inj(0)?.partial_inverse())
        }
        "agreeing_bijection" => {
            a.arity(2, 2)?;
            Value::Inj(a.inj(0)?.agreeing_bijection(&a.set(1)?).map_err(|e| here(&e))?)
        }
        "operad_compose" => {
            a.arity(2, usize::MAX)?;
            let outer = match &a.items[0].1 {
                Value::InjN(f) => f.clone(),
                _ => return Err(a.wrong(0, "an injn")),
            };
            let inner = (1..a.items.len())
                .map(|i| match &a.items[i].1 {
                    Value::InjN(f) => Ok(f.clone()),
                    Value::Inj(u) => InjN::new(vec![u.clone()]).map_err(|e| here(&e)),
                    _ => Err(a.wrong(i, "an injn")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if inner.len() != outer.arity() {
                return Err(err(col, format!("outer arity {} needs {} inner operations", outer.arity(), outer.arity())));
            }
            Value::InjN(outer.operad_compose(&inner))
        }
        "act" => {
            a.arity(2, 2)?;
            let f = a.inj(0)?;
            if let Value::Config(c) = &a.items[1].1 {
                Value::Config(c.em_act(&vec![f; c.degree() + 1]).map_err(|e| here(&e))?)
            } else if a.is_simplex_like(1) {
                let s = a.simplex(1)?;
                Value::Simplex(s.em_act(&vec![f; s.degree() + 1]).map_err(|e| here(&e))?)
            } else {
                Value::Elt(a.elt(1)?.act(&f))
            }
        }
        "em_act" => {
            a.arity(2, 2)?;
            let us = a.injs(0)?;
            if let Value::Config(c) = &a.items[1].1 {
                Value::Config(c.em_act(&us).map_err(|e| here(&e))?)
            } else {
                Value::Simplex(a.simplex(1)?.em_act(&us).map_err(|e| here(&e))?)
            }
        }
        "support" | "minimal_support" => {
            a.arity(1, 2)?;
            if a.items.len() == 2 {
                let s = a.simplex(0)?;
                let k = a.index(1)?;
                if k > s.degree() {
                    return Err(a.wrong(1, "a level of the simplex"));
                }
                Value::Support(s.k_support(k))
            } else {
                Value::Support(a.elt(0)?.minimal_support())
            }
        }
        "supported_on" => {
            a.arity(2, 3)?;
            if a.items.len() == 3 {
                let s = a.simplex(0)?;
                let k = a.index(1)?;
                if k > s.degree() {
                    return Err(a.wrong(1, "a level of the simplex"));
                }
                Value::Bool(s.is_k_supported_on(k, &a.set(2)?))
            } else {
                Value::Bool(a.elt(0)?.is_supported_on(&a.set(1)?))
            }
        }
        "witness" => {
            a.arity(4, 4)?;
            let chain = intersection_support_witness(&a.elt(0)?, &a.set(1)?, &a.set(2)?, &a.inj(3)?)
                .map_err(|e| here(&e))?;
            Value::Chain(chain)
        }
        "chi" => {
            a.arity(2, usize::MAX)?;
            let us = (1..a.items.len()).map(|i| a.inj(i)).collect::<Result<Vec<_>, _>>()?;
            Value::Inj(stabilizing_chi(&a.set(0)?, &us, CHI_MAX_PERIOD).map_err(|e| here(&e))?)
        }
        "equal_mod" => {
            a.arity(3, 3)?;
            match equal_mod_ma(&a.set(0)?, &a.injs(1)?, &a.injs(2)?).map_err(|e| here(&e))? {
                EqualModMA::Equal => Value::Text("Equal".into()),
                EqualModMA::Unknown => Value::Text("Unknown".into()),
            }
        }
        "face" | "degeneracy" => {
            a.arity(2, 2)?;
            let i = a.index(1)?;
            if let Value::Config(c) = &a.items[0].1 {
                let r = if name == "face" { c.face(i) } else { c.degeneracy(i) };
                Value::Config(r.ok_or_else(|| a.wrong(1, "an index within the degree"))?)
            } else {
                let s = a.simplex(0)?;
                let r = if name == "face" { s.face(i) } else { s.degeneracy(i) };
                Value::Simplex(r.map_err(|e| here(&e))?)
            }
        }
        "box" => {
            a.arity(1, usize::MAX)?;
            let xs = (0..a.items.len()).map(|i| a.simplex(i)).collect::<Result<Vec<_>, _>>()?;
            Value::Box(box_membership(&xs).map_err(|e| here(&e))?)
        }
        "phi" => {
            a.arity(1, 1)?;
            Value::Tuple(a.class(0)?.phi().into_iter().map(Value::Simplex).collect())
        }
        "phi_inv" => {
            a.arity(1, usize::MAX)?;
            let xs = (0..a.items.len()).map(|i| a.simplex(i)).collect::<Result<Vec<_>, _>>()?;
            Value::Class(phi_inverse_of(&xs).map_err(|e| here(&e))?)
        }
        "class_eq" => {
            a.arity(2, 2)?;
            Value::Bool(class_equal(&a.class(0)?, &a.class(1)?).map_err(|e| here(&e))?)
        }
        "mu" => {
            a.arity(1, 2)?;
            let frame = if a.items.len() == 2 { Some(a.frame(1)?) } else { None };
            let r = mu_via_operadic(&a.simplex(0)?, frame.as_deref()).map_err(|e| here(&e))?;
            Value::Class(r.normalized)
        }
        "psum" => {
            a.arity(2, 2)?;
            let (x, y) = match (&a.items[0].1, &a.items[1].1) {
                (Value::Config(x), Value::Config(y)) => (x.clone(), y.clone()),
                (Value::Config(_), _) => return Err(a.wrong(1, "a cfg")),
                _ => return Err(a.wrong(0, "a cfg")),
            };
            Value::Config(x.sum(&y).map_err(|e| here(&e))?)
        }
        "i_action" => {
            a.arity(2, usize::MAX)?;
            let frame = a.frame(0)?;
            let ops = (1..a.items.len())
                .map(|i| match &a.items[i].1 {
                    Value::Config(c) => Ok(c.clone()),
                    _ => Err(a.wrong(i, "a cfg")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Value::Config(i_action(&frame, &ops).map_err(|e| here(&e))?)
        }
        _ => return Err(err(col, format!("unknown function '{name}'"))),
    })
}

#[cfg(test)]
mod tests {
    use crate::parse::evaluate;

    fn ev(s: &str) -> String {
        evaluate(s).unwrap_or_else(|e| panic!("{s}: {e}")).to_string()
    }

    #[test]
    fn documented_outputs() {
        assert_eq!(ev("compose(double, succ)"), "pap{p=1, pieces=[(0, 2/1, 2)]}");
        assert_eq!(ev("support(selfm{double})"), "up{mod 2 in [0]}");
        assert_eq!(
            ev("box? [inj{A=[1],table={1:1}}; inj{A=[1],table={1:1}}]"),
            "NotInBox(disjointness, k=0)"
        );
    }

    #[test]
    fn set_functions() {
        assert_eq!(ev("complement(evens)"), "up{mod 2 in [1]}");
        assert_eq!(ev("classify(up{finite=[1]})"), "Finite(1)");
        assert_eq!(ev("classify(complement(up{finite=[1]}))"), "Cofinite(1)");
        assert_eq!(ev("classify(evens)"), "Bi-infinite");
        assert_eq!(ev("enumerator(up{mod 4 in [3]})"), "pap{p=1, pieces=[(0, 4/1, -1)]}");
        assert_eq!(ev("intersect(evens, greater_than(9))"), "up{N=8, exc=[], p=2, res=[0]}");
    }

    #[test]
    fn map_functions() {
        assert_eq!(ev("equal_on(id, swap(1, 2), evens)"), "false");
        assert_eq!(ev("equal_on(id, succ, empty)"), "true");
        assert_eq!(ev("image(double, odds)"), "up{mod 4 in [2]}");
        assert_eq!(ev("agreeing_bijection(id, evens)"), ev("id"));
        assert_eq!(ev("operad_compose(interleave(2), interleave(1), interleave(1))"), ev("interleave(2)"));
    }

    #[test]
    fn element_functions() {
        assert_eq!(ev("act(double, inj{A=[1], table={1:1}})"), "inj{A=[1], table={1:2}}");
        assert_eq!(ev("classify(selfm{double})"), "MildNotTame");
        assert_eq!(ev("classify(selfm{id})"), "NotMild");
        assert_eq!(ev("support(warn{id})"), "NoMinimal");
        assert_eq!(ev("supported_on(warn{id}, empty)"), "false");
        assert_eq!(ev("support([inj{A=[1], table={1:3}}; inj{A=[1], table={1:7}}], 1)"), "up{finite=[7]}");
    }

    #[test]
    fn operadic_functions() {
        let c = ev("phi_inv(inj{A=[1], table={1:1}}, inj{A=[2], table={2:2}})");
        assert!(c.starts_with("class{"));
        assert_eq!(ev(&format!("class_eq({c}, {c})")), "true");
        assert_eq!(
            ev(&format!("phi({c})")),
            "([inj{A=[1], table={1:1}}], [inj{A=[2], table={2:2}}])"
        );
        assert_eq!(ev("mu(selfm{id})").contains("selfm{pap{p=1, pieces=[(0, 2/1, 0)]}}"), true);
    }

    #[test]
    fn star_algebra_functions() {
        assert_eq!(ev("psum(cfg{m=1, cols=[[1]]}, cfg{m=1, cols=[[2]]})"), "cfg{m=2, cols=[[1], [2]]}");
        assert!(evaluate("psum(cfg{m=1, cols=[[1]]}, cfg{m=1, cols=[[1]]})").is_err());
        assert_eq!(
            ev("i_action(interleave(2), cfg{m=1, cols=[[1]]}, cfg{m=1, cols=[[1]]})"),
            "cfg{m=2, cols=[[1], [2]]}"
        );
    }
}
