//! The registry of statement checks and the report they produce.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gen::Gen;

mod algebra;
mod boxes;
mod operad;
mod simplicial;
mod support;

pub const SCHEMA: &str = "mildset.report/1";

/// Failures kept verbatim in a report; the rest are only counted.
pub const MAX_LISTED_FAILURES: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSpec {
    pub id: String,
    pub trials: usize,
    pub seed: u64,
    pub degree: usize,
    pub entry_bound: i64,
    pub period_bound: i64,
}

impl CheckSpec {
    pub const DEFAULT_TRIALS: usize = 300;
    pub const DEFAULT_SEED: u64 = 42;
    pub const DEFAULT_DEGREE: usize = 3;
    pub const DEFAULT_ENTRY_BOUND: i64 = 8;
    pub const DEFAULT_PERIOD_BOUND: i64 = 12;

    pub fn new(id: &str) -> CheckSpec {
        CheckSpec {
            id: id.to_string(),
            trials: Self::DEFAULT_TRIALS,
            seed: Self::DEFAULT_SEED,
            degree: Self::DEFAULT_DEGREE,
            entry_bound: Self::DEFAULT_ENTRY_BOUND,
            period_bound: Self::DEFAULT_PERIOD_BOUND,
        }
    }

    pub fn with_id(&self, id: &str) -> CheckSpec {
        CheckSpec {
            id: id.to_string(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Randomized,
    /// Exhaustive over bounded pools plus randomized trials.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub degree: usize,
    pub entry_bound: i64,
    pub period_bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub id: String,
    pub statement: &'static str,
    pub mode: Mode,
    pub trials: usize,
    pub seed: u64,
    pub bounds: Bounds,
    pub failures: Vec<String>,
    pub failure_count: usize,
    /// Named tallies, such as instances checked or cases hit.
    pub counts: BTreeMap<String, u64>,
    pub notes: Vec<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }
}

/// State threaded through a running check.
pub struct Ctx {
    pub spec: CheckSpec,
    pub gen: Gen,
    failures: Vec<String>,
    failure_count: usize,
    counts: BTreeMap<String, u64>,
    notes: Vec<String>,
}

impl Ctx {
    pub fn new(spec: &CheckSpec) -> Ctx {
        Ctx {
            gen: Gen::new(spec.seed, spec.period_bound, spec.entry_bound),
            spec: spec.clone(),
            failures: Vec::new(),
            failure_count: 0,
            counts: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn fail(&mut self, what: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(what.into());
        }
    }

    /// Records a failure built by `what` unless `ok`.
    pub fn require(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if !ok {
            self.fail(what());
        }
        ok
    }

    pub fn tally(&mut self, key: &str) {
        self.add(key, 1);
    }

    pub fn add(&mut self, key: &str, n: u64) {
        *self.counts.entry(key.to_string()).or_default() += n;
    }

    pub fn set(&mut self, key: &str, n: u64) {
        self.counts.insert(key.to_string(), n);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn trials(&self) -> usize {
        self.spec.trials
    }
}

pub struct Entry {
    pub id: &'static str,
    pub statement: &'static str,
    pub mode: Mode,
    run: fn(&mut Ctx),
}

macro_rules! entry {
    ($id:literal, $mode:ident, $run:path, $stmt:literal) => {
        Entry {
            id: $id,
            statement: $stmt,
            mode: Mode::$mode,
            run: $run,
        }
    };
}

pub static REGISTRY: &[Entry] = &[
    entry!("agreeSupp1", Randomized, support::agree_supp_1,
        "maps agreeing on a co-infinite support of x act equally on x"),
    entry!("agreeSupp2", Randomized, support::agree_supp_2,
        "f.x is supported on f(A) when x is supported on A"),
    entry!("agreeSupp3", Randomized, support::agree_supp_3,
        "if f.x is supported on f(A') with A' inside a co-infinite support A of x, then x is supported on A'"),
    entry!("capSupp", Randomized, support::cap_supp,
        "supports on two co-infinite sets give a support on their intersection, with the explicit chain of maps"),
    entry!("injAct", Mixed, support::inj_act,
        "on a mild M-set every map acts injectively"),
    entry!("complement", Mixed, support::complement,
        "the complement of a sub-M-set of a mild M-set is again a sub-M-set"),
    entry!("ksupp", Randomized, simplicial::ksupp,
        "(u_0,...,u_n).x is k-supported on u_k(A) when x is k-supported on A"),
    entry!("fksupp", Mixed, simplicial::fksupp,
        "f*(x) is k-supported on A when x is f(k)-supported on A"),
    entry!("kfsupp", Randomized, simplicial::kfsupp,
        "x is k-supported on A when (u_0,...,u_n).x is k-supported on u_k(A) and x is co-infinitely supported"),
    entry!("infiniteCompl", Randomized, support::infinite_compl,
        "some chi fixing A makes the union of the images of u_k chi co-infinite"),
    entry!("equalModMA", Randomized, support::equal_mod_ma_check,
        "tuples agreeing on A with co-infinite union of images are equal modulo M_A"),
    entry!("tauMuFunctor", Exhaustive, simplicial::tau_mu_functor,
        "(EX)^mu = E(X^mu) and (EX)^tau = E(X^tau) degreewise, with (E M)^tau empty"),
    entry!("boxAssoc", Randomized, boxes::box_assoc,
        "box membership is transported along the associator, with support refinement"),
    entry!("boxSymm", Randomized, boxes::box_symm,
        "box membership is transported along the symmetry"),
    entry!("boxUnit", Randomized, boxes::box_unit,
        "the terminal object is a unit for the box product"),
    entry!("injCoproduct", Exhaustive, boxes::inj_coproduct,
        "E Inj(A u B, w)^mu is isomorphic to E Inj(A, w)^mu box E Inj(B, w)^mu"),
    entry!("tameStrongMonoidal", Mixed, boxes::tame_strong_monoidal,
        "X^tau box Y^tau = (X box Y)^tau"),
    entry!("operadRoundTrip", Mixed, operad::operad_round_trip,
        "Phi is a bijection from the operadic product onto the box product"),
    entry!("classEqRelation", Randomized, operad::class_eq_relation,
        "the defining relation of the operadic product holds and is decided by class equality"),
    entry!("starModMild", Exhaustive, operad::star_mod_mild,
        "mild EM-simplicial sets are *-modules"),
    entry!("starModNonMild", Exhaustive, operad::star_mod_non_mild,
        "an EM-simplicial set that is not mild is not a *-module"),
    entry!("muViaOperadic", Randomized, operad::mu_via_operadic_check,
        "the operadic product with the point realizes X^mu for arbitrary X"),
    entry!("warningQuotient", Mixed, support::warning_quotient,
        "in M modulo agreement on almost all even numbers, [id] is supported on every A_n but not on the empty set"),
    entry!("factorizationCounterexample", Randomized, support::factorization,
        "composites of maps fixing A or its complement map A into A, so succ is not such a composite"),
    entry!("freeSigmaAction", Mixed, boxes::free_sigma_action,
        "Sigma_n acts freely on n-fold box powers without empty-supported vertices"),
    entry!("universalEmbedding", Exhaustive, simplicial::universal_embedding,
        "finite groups embed into M as universal subgroups"),
    entry!("fixedPoints", Exhaustive, simplicial::fixed_points,
        "graph-subgroup fixed points of E Inj(A, w) at truncation"),
    entry!("cmonAxioms", Mixed, algebra::cmon_axioms,
        "the free commutative *-algebra on a point satisfies the partial commutative monoid axioms and its I-action recovers the sum"),
];

pub fn find(id: &str) -> Option<&'static Entry> {
    REGISTRY.iter().find(|e| e.id == id)
}

pub fn run_check(spec: &CheckSpec) -> Result<Report, CheckError> {
    let entry = find(&spec.id).ok_or_else(|| CheckError::UnknownCheck(spec.id.clone()))?;
    if spec.entry_bound < 4 {
        return Err(CheckError::InvalidParameter("entry bound must be at least 4".into()));
    }
    if spec.period_bound < 1 {
        return Err(CheckError::InvalidParameter("period bound must be at least 1".into()));
    }
    let start = Instant::now();
    let mut ctx = Ctx::new(spec);
    (entry.run)(&mut ctx);
    Ok(Report {
        schema: SCHEMA,
        id: entry.id.to_string(),
        statement: entry.statement,
        mode: entry.mode,
        trials: spec.trials,
        seed: spec.seed,
        bounds: Bounds {
            degree: spec.degree,
            entry_bound: spec.entry_bound,
            period_bound: spec.period_bound,
        },
        passed: ctx.failure_count == 0,
        failures: ctx.failures,
        failure_count: ctx.failure_count,
        counts: ctx.counts,
        notes: ctx.notes,
        elapsed_ms: Some(start.elapsed().as_millis()),
    })
}

/// Runs every registry entry with the shared parameters of `base`, in
/// parallel, returning reports in registry order.
pub fn verify_all(base: &CheckSpec) -> Vec<Report> {
    REGISTRY
        .par_iter()
        .map(|e| run_check(&base.with_id(e.id)).expect("registry ids are known"))
        .collect()
}
