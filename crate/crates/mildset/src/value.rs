//! Runtime values of the expression language.

use std::fmt;

use mildset_core::boxprod::BoxOutcome;
use mildset_core::mset::WitnessChain;
use mildset_core::{ConfigSimplex, InjN, MElt, OperadicClass, PapInj, PapMap, Simplex, Support, UpSet};
use serde_json::json;

use crate::family::FamilySpec;

#[derive(Clone, Debug)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Set(UpSet),
    Inj(PapInj),
    /// A map that need not be injective, such as a partial inverse.
    Map(PapMap),
    InjN(InjN),
    Elt(MElt),
    Simplex(Simplex),
    Tuple(Vec<Value>),
    Seq(Vec<Value>),
    Config(ConfigSimplex),
    Class(OperadicClass),
    Support(Support),
    Box(BoxOutcome),
    Chain(WitnessChain),
    Family(FamilySpec),
    Text(String),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Bool(_) => "bool",
            Value::Set(_) => "set",
            Value::Inj(_) => "pap",
            Value::Map(_) => "map",
            Value::InjN(_) => "injn",
            Value::Elt(_) => "element",
            Value::Simplex(_) => "simplex",
            Value::Tuple(_) => "tuple",
            Value::Seq(_) => "sequence",
            Value::Config(_) => "cfg",
            Value::Class(_) => "class",
            Value::Support(_) => "support",
            Value::Box(_) => "box",
            Value::Chain(_) => "chain",
            Value::Family(_) => "family",
            Value::Text(_) => "text",
        }
    }

    /// The value as an element of an `ℳ`-set, if it is one.
    pub fn to_elt(&self) -> Option<MElt> {
        match self {
            Value::Elt(x) => Some(x.clone()),
            Value::Tuple(vs) => vs.iter().map(Value::to_elt).collect::<Option<Vec<_>>>().map(MElt::Tuple),
            _ => None,
        }
    }

    pub fn to_simplex(&self) -> Option<Simplex> {
        match self {
            Value::Simplex(s) => Some(s.clone()),
            Value::Config(c) => Some(c.as_simplex()),
            Value::Seq(vs) => vs
                .iter()
                .map(Value::to_elt)
                .collect::<Option<Vec<_>>>()
                .filter(|c| !c.is_empty())
                .map(Simplex::new),
            other => other.to_elt().map(Simplex::vertex),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut out = json!({ "kind": self.kind(), "value": self.to_string() });
        match self {
            Value::Bool(b) => out["bool"] = json!(b),
            Value::Int(n) => out["int"] = json!(n),
            Value::Box(b) => out["in_box"] = json!(b.is_in()),
            _ => {}
        }
        out
    }
}

fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T], sep: &str) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        x.fmt(f)?;
    }
    Ok(())
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Set(s) => s.fmt(f),
            Value::Inj(u) => u.fmt(f),
            Value::Map(m) => m.fmt(f),
            Value::InjN(n) => n.fmt(f),
            Value::Elt(x) => x.fmt(f),
            Value::Simplex(s) => s.fmt(f),
            Value::Tuple(vs) => {
                f.write_str("(")?;
                join(f, vs, ", ")?;
                f.write_str(")")
            }
            Value::Seq(vs) => {
                f.write_str("[")?;
                join(f, vs, "; ")?;
                f.write_str("]")
            }
            Value::Config(c) => c.fmt(f),
            Value::Class(c) => c.fmt(f),
            Value::Support(Support::Least(s)) => s.fmt(f),
            Value::Support(Support::NoMinimal) => f.write_str("NoMinimal"),
            Value::Box(b) => b.fmt(f),
            Value::Chain(WitnessChain::Case1 { f1, f2 }) => write!(f, "case1{{f1={f1}, f2={f2}}}"),
            Value::Chain(WitnessChain::Case2 { g1, g2, g3 }) => {
                write!(f, "case2{{g1={g1}, g2={g2}, g3={g3}}}")
            }
            Value::Family(fam) => fam.fmt(f),
            Value::Text(t) => f.write_str(t),
        }
    }
}
