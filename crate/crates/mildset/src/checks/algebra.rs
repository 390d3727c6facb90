//! Checks on the free commutative `*`-algebra on a point.

use mildset_core::emss::permutation_lists;
use mildset_core::operadic::phi_inverse_of;
use mildset_core::staralg::{bounded_configs, i_action};
use mildset_core::{ConfigSimplex, InjN, PapInj, UpSet};

use super::Ctx;

/// Configurations with the given weights whose level images are pairwise
/// disjoint, or overlapping with small probability.
fn dealt(ctx: &mut Ctx, degree: usize, weights: &[usize]) -> Vec<ConfigSimplex> {
    let total: usize = weights.iter().sum();
    let span = (2 * total as i64).max(ctx.spec.entry_bound);
    let mut levels: Vec<Vec<i64>> = (0..=degree)
        .map(|_| {
            let mut v: Vec<i64> = (1..=span).collect();
            ctx.gen.shuffle(&mut v);
            v
        })
        .collect();
    if ctx.gen.chance(0.1) {
        for l in &mut levels {
            l[1] = l[0];
        }
    }
    let mut next = 0;
    weights
        .iter()
        .map(|&w| {
            let cols: Vec<Vec<i64>> = (next..next + w).map(|i| levels.iter().map(|l| l[i]).collect()).collect();
            next += w;
            // Duplicates inside one operand make it malformed; fall back to
            // a fresh one.
            ConfigSimplex::new(degree, cols).unwrap_or_else(|_| ConfigSimplex::unit(degree))
        })
        .collect()
}

fn same_outcome(ctx: &mut Ctx, a: &ConfigSimplex, b: &ConfigSimplex) {
    let ab = a.sum(b);
    let ba = b.sum(a);
    ctx.require(ab.is_ok() == ba.is_ok() && ab.as_ref().ok() == ba.as_ref().ok(), || {
        format!("psum({a}, {b}) and psum({b}, {a}) differ")
    });
    ctx.require(a.is_summable(b) == a.summable_via_box(b).is_ok(), || {
        format!("summability of {a} and {b} differs from box membership")
    });
    if let Ok(s) = &ab {
        for k in 0..=a.degree() {
            ctx.require(s.k_support(k) == a.k_support(k).union(&b.k_support(k)), || {
                format!("support of psum({a}, {b}) at level {k} is not the union")
            });
        }
    }
}

pub(super) fn cmon_axioms(ctx: &mut Ctx) {
    let bound = ctx.spec.entry_bound;
    let top = ctx.spec.degree.min(2);
    // Unit, exhaustively up to weight 2.
    for n in 0..=top {
        let e = ConfigSimplex::unit(n);
        for m in 0..=2 {
            for a in bounded_configs(n, m, bound) {
                let ok = a.sum(&e).as_ref() == Ok(&a) && e.sum(&a).as_ref() == Ok(&a);
                ctx.require(ok, || format!("{a} + unit is not {a}"));
                ctx.require(a.permuted(&(0..m).rev().collect::<Vec<_>>()) == a, || {
                    format!("reordering the points of {a} changes it")
                });
                if m > 0 && n == 0 {
                    ctx.require(!a.k_support(0).is_empty(), || format!("{a} is supported on the empty set"));
                }
                ctx.tally("unit instances");
            }
        }
        // Commutativity on every pair of total weight 2.
        let ones = bounded_configs(n, 1, bound);
        for a in &ones {
            for b in &ones {
                same_outcome(ctx, a, b);
            }
        }
        ctx.add("commutativity pairs", (ones.len() * ones.len()) as u64);
    }
    let mut summable = 0;
    for _ in 0..20 * ctx.trials() {
        if summable == ctx.trials() {
            break;
        }
        let n = ctx.gen.index(top + 1);
        let ws: Vec<usize> = (0..3).map(|_| ctx.gen.index(3)).collect();
        let xs = dealt(ctx, n, &ws);
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        same_outcome(ctx, a, b);
        let left = a.sum(b).and_then(|ab| ab.sum(c));
        let right = b.sum(c).and_then(|bc| a.sum(&bc));
        ctx.require(left.as_ref().ok() == right.as_ref().ok(), || format!("psum is not associative at {a}, {b}, {c}"));
        if let Ok(s) = &left {
            summable += 1;
            ctx.tally("associativity instances");
            let perm = {
                let ps = permutation_lists(s.weight().min(5));
                let p = ctx.gen.pick(&ps).clone();
                let mut perm: Vec<usize> = p.iter().map(|&i| (i - 1) as usize).collect();
                perm.extend(perm.len()..s.weight());
                perm
            };
            ctx.require(s.permuted(&perm) == *s, || format!("{s} is not stable under reordering"));
        }
    }
    let mut done = 0;
    for _ in 0..4000 {
        if done == 200 {
            break;
        }
        let n = ctx.gen.index(top + 1);
        let ws = [ctx.gen.index(3), ctx.gen.index(3)];
        let xs = dealt(ctx, n, &ws);
        let (a, b) = (&xs[0], &xs[1]);
        if !a.is_summable(b) {
            continue;
        }
        let sum = a.sum(b).unwrap();
        match phi_inverse_of(&[a.as_simplex(), b.as_simplex()]) {
            Ok(c) => {
                let got = i_action(c.frame(), &[a.clone(), b.clone()]);
                ctx.require(got.as_ref() == Ok(&sum), || format!("i_action(phi_inv frame, {a}, {b}) is not psum"));
            }
            Err(e) => ctx.fail(format!("phi_inv([{a}, {b}]): {e}")),
        }
        // Equivariance: i_action(f (u1 ⊔ u2), x) = i_action(f, u.x).
        let f: Vec<InjN> = (0..=n).map(|_| InjN::interleave(2).postcompose(&ctx.gen.inj())).collect();
        let us: Vec<Vec<PapInj>> = (0..=n).map(|_| ctx.gen.injs(2)).collect();
        let fu: Vec<InjN> = f.iter().zip(&us).map(|(fk, u)| fk.precompose(u)).collect();
        let strand = |j: usize| -> Vec<PapInj> { us.iter().map(|u| u[j].clone()).collect() };
        let moved = [a.em_act(&strand(0)).unwrap(), b.em_act(&strand(1)).unwrap()];
        ctx.require(i_action(&fu, &[a.clone(), b.clone()]) == i_action(&f, &moved), || {
            format!("i_action is not compatible with precomposition at {a}, {b}")
        });
        // Faces, degeneracies and the action distribute over the sum.
        for i in 0..=n {
            if n > 0 {
                let lhs = sum.face(i).unwrap();
                let rhs = a.face(i).unwrap().sum(&b.face(i).unwrap());
                ctx.require(rhs.as_ref() == Ok(&lhs), || format!("face {i} does not distribute over psum({a}, {b})"));
            }
            let lhs = sum.degeneracy(i).unwrap();
            let rhs = a.degeneracy(i).unwrap().sum(&b.degeneracy(i).unwrap());
            ctx.require(rhs.as_ref() == Ok(&lhs), || format!("degeneracy {i} does not distribute over psum({a}, {b})"));
        }
        let vs = ctx.gen.injs(n + 1);
        let rhs = a.em_act(&vs).unwrap().sum(&b.em_act(&vs).unwrap());
        ctx.require(rhs.as_ref() == Ok(&sum.em_act(&vs).unwrap()), || {
            format!("the action does not distribute over psum({a}, {b})")
        });
        let union = UpSet::union_all((0..=n).map(|k| sum.k_support(k)));
        ctx.require(union.is_finite(), || format!("psum({a}, {b}) is not finitely supported"));
        ctx.tally("I-action instances");
        done += 1;
    }
}
