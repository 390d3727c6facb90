//! Checks about the box product.

use mildset_core::boxprod::{associativity, box_membership, inj_coproduct_iso, refine_supports, symmetry, unit, MonoidalCheck};
use mildset_core::emss::{bounded_injections, permutation_lists, simplices_over};
use mildset_core::{MElt, PapInj, Simplex, UpSet};

use super::Ctx;
use crate::family::selfm_pool;
use crate::gen::{EltKind, MILD_KINDS};

/// Enumerator of the residue class `i mod 4`; lanes 0, 1 and 2 are
/// disjoint and leave lane 3 free.
fn lane(i: i64) -> PapInj {
    PapInj::enumerate(&UpSet::residue_class(4, &[i]).expect("valid residue")).expect("infinite")
}

fn in_lane(s: &Simplex, i: i64) -> Simplex {
    s.em_act(&vec![lane(i); s.degree() + 1]).expect("matching arity")
}

/// Simplices of the same degree, pushed into distinct lanes with the given
/// probability.
fn operands(ctx: &mut Ctx, count: usize, p_lanes: f64) -> Vec<Simplex> {
    let n = ctx.gen.index(ctx.spec.degree.min(2) + 1);
    let lanes = ctx.gen.chance(p_lanes);
    (0..count)
        .map(|i| {
            let kind = *ctx.gen.pick(&MILD_KINDS);
            let s = ctx.gen.simplex(kind, n);
            if lanes {
                in_lane(&s, i as i64)
            } else {
                s
            }
        })
        .collect()
}

fn least(s: &Simplex, k: usize) -> UpSet {
    s.k_support(k).least().cloned().expect("mild elements have least supports")
}

pub(super) fn box_assoc(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let xs = operands(ctx, 3, 0.7);
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        match associativity(x, y, z) {
            Ok(MonoidalCheck::Holds) => ctx.tally("holds"),
            Ok(MonoidalCheck::NotApplicable) => ctx.tally("not applicable"),
            Err(e) => ctx.fail(format!("associativity({x}, {y}, {z}): {e}")),
        }
        if !box_membership(&[x.clone(), y.clone()]).is_ok_and(|o| o.is_in()) {
            continue;
        }
        // Refinement from supports larger than the least ones.
        let n = x.degree();
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut d = Vec::new();
        for k in 0..=n {
            let extra_a = ctx.gen.finite_set(40, 3).intersect(&UpSet::residue_class(4, &[0]).unwrap());
            let extra_b = ctx.gen.finite_set(40, 3).intersect(&UpSet::residue_class(4, &[1]).unwrap());
            let ak = least(x, k).union(&extra_a).difference(&least(y, k));
            let bk = least(y, k).union(&extra_b).difference(&ak);
            let dk = least(x, k).union(&least(y, k)).union(&ctx.gen.finite_set(40, 3));
            a.push(ak);
            b.push(bk);
            d.push(dk);
        }
        match refine_supports(x, y, &a, &b, &d) {
            Ok(r) => {
                for k in 0..=n {
                    let ok = r.a[k].is_subset(&a[k])
                        && r.b[k].is_subset(&b[k])
                        && r.d[k] == r.a[k].union(&r.b[k])
                        && r.d[k].is_subset(&d[k])
                        && x.is_k_supported_on(k, &r.a[k])
                        && y.is_k_supported_on(k, &r.b[k]);
                    ctx.require(ok, || format!("refine_supports({x}, {y}): bad refinement at level {k}"));
                }
                ctx.tally("refinements");
            }
            Err(e) => ctx.fail(format!("refine_supports({x}, {y}): {e}")),
        }
    }
}

pub(super) fn box_symm(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let xs = operands(ctx, 2, 0.6);
        let (x, y) = (&xs[0], &xs[1]);
        match symmetry(x, y) {
            Ok(MonoidalCheck::Holds) => ctx.tally("holds"),
            Ok(MonoidalCheck::NotApplicable) => ctx.tally("not applicable"),
            Err(e) => ctx.fail(format!("symmetry({x}, {y}): {e}")),
        }
        let inside = match box_membership(&xs) {
            Ok(o) => o.is_in(),
            Err(e) => {
                ctx.fail(format!("box? [{x}, {y}]: {e}"));
                continue;
            }
        };
        if !inside {
            continue;
        }
        // The box product is a sub-EM-simplicial set of the product.
        let n = x.degree();
        let us = ctx.gen.injs(n + 1);
        let moved: Vec<Simplex> = xs.iter().map(|s| s.em_act(&us).unwrap()).collect();
        ctx.require(box_membership(&moved).is_ok_and(|o| o.is_in()), || {
            format!("the diagonal action moves [{x}, {y}] out of the box product")
        });
        for i in 0..=n {
            if n > 0 {
                let faces: Vec<Simplex> = xs.iter().map(|s| s.face(i).unwrap()).collect();
                ctx.require(box_membership(&faces).is_ok_and(|o| o.is_in()), || {
                    format!("face {i} moves [{x}, {y}] out of the box product")
                });
            }
            let degs: Vec<Simplex> = xs.iter().map(|s| s.degeneracy(i).unwrap()).collect();
            ctx.require(box_membership(&degs).is_ok_and(|o| o.is_in()), || {
                format!("degeneracy {i} moves [{x}, {y}] out of the box product")
            });
        }
        ctx.tally("closure instances");
    }
}

pub(super) fn box_unit(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let n = ctx.gen.index(ctx.spec.degree.min(2) + 1);
        let kind = if ctx.gen.chance(0.3) { EltKind::SelfAny } else { *ctx.gen.pick(&MILD_KINDS) };
        let x = ctx.gen.simplex(kind, n);
        let star = Simplex::constant(MElt::Point, n);
        let mild = x.is_coinfinitely_supported();
        match unit(&x) {
            Ok(MonoidalCheck::Holds) => {
                ctx.require(mild, || format!("unit({x}) holds for a simplex that is not mild"));
                ctx.tally("holds");
            }
            Ok(MonoidalCheck::NotApplicable) => {
                ctx.require(!mild, || format!("unit({x}) not applicable to a mild simplex"));
                let out = box_membership(&[x.clone(), star]);
                ctx.require(out.is_ok_and(|o| !o.is_in()), || format!("({x}, *) lies in the box product"));
                ctx.tally("not mild");
            }
            Err(e) => ctx.fail(format!("unit({x}): {e}")),
        }
    }
}

fn falling(bound: i64, k: usize) -> usize {
    (0..k as i64).map(|i| (bound - i) as usize).product()
}

pub(super) fn inj_coproduct(ctx: &mut Ctx) {
    let eb = ctx.spec.entry_bound;
    let cases: [(&[i64], &[i64], i64); 3] = [(&[1], &[2], eb), (&[1, 2], &[3], 6), (&[1], &[], eb)];
    for (a, b, bound) in cases {
        for level in inj_coproduct_iso(a, b, 1, bound) {
            let expect = falling(bound, a.len() + b.len()).pow(level.degree as u32 + 1);
            let label = format!("A = {a:?}, B = {b:?}, entries <= {bound}, degree {}", level.degree);
            ctx.require(level.left == expect && level.right == expect, || {
                format!("{label}: counts {} and {}, oracle {expect}", level.left, level.right)
            });
            ctx.require(level.is_bijection(), || format!("{label}: not a bijection"));
            ctx.add("simplices compared", level.left as u64);
        }
    }
}

fn coproduct_pool(ctx: &mut Ctx) -> Vec<MElt> {
    let mut pool: Vec<MElt> = bounded_injections(&[1], 5).into_iter().map(MElt::Inj).collect();
    pool.extend(selfm_pool().into_iter().map(MElt::SelfM).filter(MElt::is_mild));
    pool.extend((0..2).map(|_| ctx.gen.elt(EltKind::InfiniteInj)));
    pool
}

fn tame_sides(ctx: &mut Ctx, x: &Simplex, y: &Simplex) {
    let xs = [x.clone(), y.clone()];
    let inside = match box_membership(&xs) {
        Ok(o) => o.is_in(),
        Err(e) => {
            ctx.fail(format!("box? [{x}, {y}]: {e}"));
            return;
        }
    };
    let lhs = inside && x.is_finitely_supported() && y.is_finitely_supported();
    let rhs = inside && Simplex::zip(&xs).unwrap().is_finitely_supported();
    ctx.require(lhs == rhs, || format!("[{x}, {y}]: tame box membership {lhs}, box of tame parts {rhs}"));
    ctx.tally(if lhs { "tame pairs" } else { "other pairs" });
}

pub(super) fn tame_strong_monoidal(ctx: &mut Ctx) {
    let pool = coproduct_pool(ctx);
    for n in 0..=1 {
        let simplices = simplices_over(&pool, n);
        for x in &simplices {
            for y in &simplices {
                tame_sides(ctx, x, y);
            }
        }
    }
    for _ in 0..ctx.trials() {
        let pick = |ctx: &mut Ctx| Simplex::new((0..3).map(|_| ctx.gen.pick(&pool).clone()).collect());
        let (x, y) = (pick(ctx), pick(ctx));
        tame_sides(ctx, &x, &y);
    }
}

fn check_free(ctx: &mut Ctx, xs: &[Simplex]) {
    match box_membership(xs) {
        Ok(o) if o.is_in() => {
            for perm in permutation_lists(xs.len()).into_iter().skip(1) {
                let moved: Vec<&Simplex> = perm.iter().map(|&i| &xs[(i - 1) as usize]).collect();
                if moved.iter().zip(xs).all(|(a, b)| *a == b) {
                    let shown: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
                    ctx.fail(format!("permutation {perm:?} fixes [{}]", shown.join(", ")));
                }
            }
            ctx.tally("tuples in the box power");
        }
        Ok(_) => ctx.tally("tuples outside"),
        Err(e) => ctx.fail(format!("box?: {e}")),
    }
}

pub(super) fn free_sigma_action(ctx: &mut Ctx) {
    let singles: Vec<Simplex> = bounded_injections(&[1], 6)
        .into_iter()
        .map(|u| Simplex::vertex(MElt::Inj(u)))
        .collect();
    let mut mixed: Vec<Simplex> = bounded_injections(&[1], 4)
        .into_iter()
        .map(|u| Simplex::vertex(MElt::Inj(u)))
        .collect();
    mixed.extend(selfm_pool().into_iter().map(MElt::SelfM).filter(MElt::is_mild).map(Simplex::vertex));
    for pool in [&singles, &mixed] {
        for n in 2..=3 {
            let mut idx = vec![0usize; n];
            loop {
                let xs: Vec<Simplex> = idx.iter().map(|&i| pool[i].clone()).collect();
                check_free(ctx, &xs);
                let mut pos = 0;
                while pos < n && idx[pos] + 1 == pool.len() {
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
                idx[pos] += 1;
            }
        }
    }
    for _ in 0..ctx.trials() {
        let count = 2 + ctx.gen.index(2);
        let xs = operands(ctx, count, 0.8);
        check_free(ctx, &xs);
    }
    // With an empty-supported vertex the action is not free.
    let star = Simplex::vertex(MElt::Point);
    let pair = [star.clone(), star];
    ctx.require(box_membership(&pair).is_ok_and(|o| o.is_in()), || "(*, *) is not in the box product".into());
}
