//! Checks about supports of elements of `ℳ`-sets.

use mildset_core::mset::{equal_mod_ma, intersection_support_witness, stabilizing_chi, warn_equivalent, EqualModMA, WitnessChain};
use mildset_core::{MElt, PapInj, PapMap, Support, UpSet};

use super::Ctx;
use crate::eval::CHI_MAX_PERIOD;
use crate::family::selfm_pool;
use crate::gen::EltKind;

/// Points scanned by pointwise oracles.
const SCAN: i64 = 200;

pub(super) fn profile_union(x: &MElt) -> UpSet {
    let p = x.profile();
    p.strict.union(&p.loose)
}

/// A random element of a mild family, or occasionally a class of the
/// warning quotient.
pub(super) fn some_elt(ctx: &mut Ctx) -> MElt {
    if ctx.gen.chance(0.15) {
        ctx.gen.elt(EltKind::Warn)
    } else {
        ctx.gen.mild_elt()
    }
}

/// A random co-infinite set on which `x` is supported.
pub(super) fn support_superset(ctx: &mut Ctx, x: &MElt) -> Option<UpSet> {
    ctx.gen.coinfinite_superset(&profile_union(x))
}

/// A map agreeing with `f` on the co-infinite set `a`: off `a` it shifts
/// the complement into itself past a few dropped points, optionally swaps
/// two of the early ones, then applies `f`.
pub(super) fn agreeing_variant(ctx: &mut Ctx, f: &PapInj, a: &UpSet) -> PapInj {
    let ac = a.complement();
    let early: Vec<i64> = (1..=6).filter_map(|k| ac.nth(k)).collect();
    let drop: Vec<i64> = early.iter().copied().filter(|_| ctx.gen.coin()).collect();
    let kept: Vec<i64> = early.iter().copied().filter(|e| !drop.contains(e)).collect();
    let dropped = UpSet::new(early[early.len() - 1], &drop, 1, &[]).expect("finite set");
    let mut off = PapMap::transport(&ac, &ac.difference(&dropped), None).expect("complement is infinite");
    if kept.len() >= 2 && ctx.gen.coin() {
        let i = ctx.gen.index(kept.len());
        let j = (i + 1 + ctx.gen.index(kept.len() - 1)) % kept.len();
        off = PapInj::swap(kept[i], kept[j]).as_map().compose(&off);
    }
    let off = f.as_map().compose(&off);
    PapInj::validate(PapMap::piecewise(a, f.as_map(), &off)).expect("disjoint pieces")
}

/// Checks the structural support decision for `x` on `a` against maps
/// in `ℳ_A`: sampled maps must fix `x` when it is claimed supported, and
/// the reported witness must lie in `ℳ_A` and move `x` otherwise.
pub(super) fn cross_validate(ctx: &mut Ctx, x: &MElt, a: &UpSet, samples: usize) {
    if x.is_supported_on(a) {
        for _ in 0..samples {
            let g = ctx.gen.fixing(a);
            ctx.require(x.act(&g) == *x, || {
                format!("act({g}, {x}) differs from {x} although supported_on({x}, {a}) = true")
            });
        }
        ctx.add("sampled maps fixing supported elements", samples as u64);
    } else {
        match x.unsupport_witness(a) {
            Some(g) => {
                ctx.require(g.fixes_pointwise(a) && x.act(&g) != *x, || {
                    format!("witness {g} does not show that {x} is not supported on {a}")
                });
            }
            None => ctx.fail(format!("no witness for supported_on({x}, {a}) = false")),
        }
        ctx.tally("unsupport witnesses verified");
    }
}

fn pointwise_agree(u: &PapInj, v: &PapInj, a: &UpSet) -> bool {
    a.elements_upto(SCAN).all(|x| u.eval(x) == v.eval(x))
}

pub(super) fn agree_supp_1(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let x = some_elt(ctx);
        let Some(a) = support_superset(ctx, &x) else {
            ctx.tally("skipped: no co-infinite support");
            continue;
        };
        if !ctx.require(x.is_supported_on(&a), || format!("supported_on({x}, {a}) = false for a superset of its support")) {
            continue;
        }
        let f = ctx.gen.inj();
        let g = agreeing_variant(ctx, &f, &a);
        ctx.require(g.equal_on(&f, &a) && pointwise_agree(&f, &g, &a), || {
            format!("equal_on({f}, {g}, {a}) = false for a constructed agreeing map")
        });
        ctx.require(x.act(&f) == x.act(&g), || {
            format!("act({f}, {x}) differs from act({g}, {x}) while both agree on {a}")
        });
        cross_validate(ctx, &x, &a, 2);
        ctx.tally("instances");
    }
}

pub(super) fn agree_supp_2(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let x = some_elt(ctx);
        let Some(a) = support_superset(ctx, &x) else {
            ctx.tally("skipped: no co-infinite support");
            continue;
        };
        let f = ctx.gen.inj();
        let y = x.act(&f);
        let fa = f.image(&a);
        ctx.require(y.is_supported_on(&fa), || {
            format!("supported_on(act({f}, {x}), image({f}, {a})) = false")
        });
        cross_validate(ctx, &y, &fa, 2);
        ctx.tally("instances");
    }
}

pub(super) fn agree_supp_3(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let x = some_elt(ctx);
        let Some(a) = support_superset(ctx, &x) else {
            ctx.tally("skipped: no co-infinite support");
            continue;
        };
        let cut = ctx.gen.upset();
        let a1 = if ctx.gen.coin() {
            profile_union(&x).union(&a.intersect(&cut))
        } else {
            a.intersect(&cut)
        };
        let f = ctx.gen.inj();
        let y = x.act(&f);
        if y.is_supported_on(&f.image(&a1)) {
            ctx.tally("antecedent held");
            ctx.require(x.is_supported_on(&a1), || {
                format!("supported_on(act({f}, {x}), image({f}, {a1})) = true but supported_on({x}, {a1}) = false")
            });
            cross_validate(ctx, &x, &a1, 2);
        } else {
            ctx.tally("antecedent failed");
        }
        ctx.tally("instances");
    }
}

/// A map in `ℳ_{A∩B}` exchanging `A∖B` with `A^c`, so that `f(A) ⊇ A^c`.
fn exchanging_map(a: &UpSet, b: &UpSet) -> Option<PapInj> {
    let ab = a.difference(b);
    let ac = a.complement();
    if ab.is_finite() || ac.is_finite() {
        return None;
    }
    let swap = PapMap::piecewise(
        &ab,
        &PapMap::transport(&ab, &ac, None).ok()?,
        &PapMap::transport(&ac, &ab, None).ok()?,
    );
    PapInj::validate(PapMap::piecewise(&a.intersect(b), PapInj::identity().as_map(), &swap)).ok()
}

fn verify_chain(ctx: &mut Ctx, chain: &WitnessChain, x: &MElt, a: &UpSet, b: &UpSet, f: &PapInj) {
    let (ac, bc) = (a.complement(), b.complement());
    let id = PapInj::identity();
    let label = format!("witness({x}, {a}, {b}, {f})");
    match chain {
        WitnessChain::Case1 { f1, f2 } => {
            ctx.tally("case 1");
            let props = [
                (f1.equal_on(f, a) && pointwise_agree(f1, f, a), "f1 agrees with f on A"),
                (f1.image(&ac).is_subset(&ac), "f1(A^c) lies in A^c"),
                (f2.equal_on(f1, b) && pointwise_agree(f2, f1, b), "f2 agrees with f1 on B"),
                (f2.fixes_pointwise(a) && pointwise_agree(f2, &id, a), "f2 fixes A"),
                (x.act(f1) == x.act(f) && x.act(f2) == x.act(f1), "f.x = f1.x = f2.x"),
                (x.act(f2) == *x, "f2.x = x"),
            ];
            for (ok, what) in props {
                ctx.require(ok, || format!("{label}: {what} fails"));
            }
        }
        WitnessChain::Case2 { g1, g2, g3 } => {
            ctx.tally("case 2");
            let props = [
                (g1.equal_on(f, b) && pointwise_agree(g1, f, b), "g1 agrees with f on B"),
                (g1.image(&bc).is_subset(&ac), "g1(B^c) lies in A^c"),
                (g2.equal_on(g1, a) && pointwise_agree(g2, g1, a), "g2 agrees with g1 on A"),
                (g2.preimage(a).is_subset(a), "g2^-1(A) lies in A"),
                (g3.fixes_pointwise(a) && pointwise_agree(g3, &id, a), "g3 fixes A"),
                (g3.equal_on(g2, b) && pointwise_agree(g3, g2, b), "g3 agrees with g2 on B"),
                (
                    x.act(g1) == x.act(f) && x.act(g2) == x.act(g1) && x.act(g3) == x.act(g2),
                    "f.x = g1.x = g2.x = g3.x",
                ),
                (x.act(g3) == *x, "g3.x = x"),
            ];
            for (ok, what) in props {
                ctx.require(ok, || format!("{label}: {what} fails"));
            }
        }
    }
    ctx.require(x.act(f) == *x, || format!("{label}: act(f, x) differs from x"));
    ctx.require(x.is_supported_on(&a.intersect(b)), || {
        format!("supported_on({x}, intersect({a}, {b})) = false")
    });
}

pub(super) fn cap_supp(ctx: &mut Ctx) {
    // Resample until the requested number of instances has been checked.
    let mut t = 0;
    for _ in 0..20 * ctx.trials() {
        if t == ctx.trials() {
            break;
        }
        let x = some_elt(ctx);
        let (Some(a), Some(b)) = (support_superset(ctx, &x), support_superset(ctx, &x)) else {
            ctx.tally("resampled: no co-infinite support");
            continue;
        };
        t += 1;
        let f = match (t % 2 == 0).then(|| exchanging_map(&a, &b)).flatten() {
            Some(f) => f,
            None => ctx.gen.fixing(&a.intersect(&b)),
        };
        match intersection_support_witness(&x, &a, &b, &f) {
            Ok(chain) => verify_chain(ctx, &chain, &x, &a, &b, &f),
            Err(e) => ctx.fail(format!("witness({x}, {a}, {b}, {f}): {e}")),
        }
        ctx.tally("instances");
    }
}

fn inj_pools(ctx: &mut Ctx) -> Vec<Vec<MElt>> {
    let bound = ctx.spec.entry_bound.min(6);
    let finite: Vec<MElt> = mildset_core::emss::bounded_injections(&[1, 2], bound)
        .into_iter()
        .map(MElt::Inj)
        .collect();
    let selfm: Vec<MElt> = selfm_pool().into_iter().map(MElt::SelfM).filter(MElt::is_mild).collect();
    let infinite: Vec<MElt> = (0..12).map(|_| ctx.gen.elt(EltKind::InfiniteInj)).collect();
    let pairs: Vec<MElt> = finite
        .iter()
        .take(6)
        .flat_map(|x| selfm.iter().take(3).map(move |y| MElt::Tuple(vec![x.clone(), y.clone()])))
        .collect();
    vec![finite, selfm, infinite, pairs]
}

pub(super) fn inj_act(ctx: &mut Ctx) {
    let pools = inj_pools(ctx);
    ctx.set("pool elements", pools.iter().map(|p| p.len() as u64).sum());
    for pool in &pools {
        for x in pool {
            ctx.require(x.is_mild(), || format!("pool element {x} is not mild"));
        }
    }
    for _ in 0..ctx.trials() {
        let f = ctx.gen.inj();
        for pool in &pools {
            let moved: Vec<MElt> = pool.iter().map(|x| x.act(&f)).collect();
            for i in 0..pool.len() {
                for j in i + 1..pool.len() {
                    if pool[i] != pool[j] && moved[i] == moved[j] {
                        ctx.fail(format!("act({f}, {}) = act({f}, {})", pool[i], pool[j]));
                    }
                }
            }
            ctx.add("pairs compared", (pool.len() * (pool.len() - 1) / 2) as u64);
        }
    }
}

pub(super) fn complement(ctx: &mut Ctx) {
    let bound = ctx.spec.entry_bound;
    let singles: Vec<MElt> = mildset_core::emss::bounded_injections(&[1], bound)
        .into_iter()
        .map(MElt::Inj)
        .collect();
    let selfm: Vec<MElt> = selfm_pool().into_iter().map(MElt::SelfM).filter(MElt::is_mild).collect();
    let value_at_1 = |x: &MElt| match x {
        MElt::Inj(i) => i.eval(1),
        MElt::SelfM(u) => u.eval(1),
        _ => unreachable!("pool elements"),
    };
    let diagonal: Vec<(MElt, MElt)> = singles
        .iter()
        .flat_map(|u| singles.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    let graph: Vec<(MElt, MElt)> = selfm
        .iter()
        .flat_map(|u| singles.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    ctx.set("diagonal pool", diagonal.len() as u64);
    ctx.set("graph pool", graph.len() as u64);
    for _ in 0..ctx.trials() {
        let f = ctx.gen.inj();
        for (u, v) in &diagonal {
            let before = u == v;
            let (fu, fv) = (u.act(&f), v.act(&f));
            ctx.require(before == (fu == fv), || {
                format!("act({f}, ({u}, {v})) changes membership in the diagonal")
            });
        }
        for (u, v) in &graph {
            let before = value_at_1(u) == value_at_1(v);
            let (fu, fv) = (u.act(&f), v.act(&f));
            ctx.require(before == (value_at_1(&fu) == value_at_1(&fv)), || {
                format!("act({f}, ({u}, {v})) changes membership in the graph sub-M-set")
            });
        }
        ctx.tally("maps");
    }
}

pub(super) fn warning_quotient(ctx: &mut Ctx) {
    let id = MElt::Warn(PapInj::identity());
    for n in 0..=10 {
        let an = UpSet::evens().intersect(&UpSet::greater_than(2 * n - 1));
        ctx.require(id.is_supported_on(&an), || format!("supported_on(warn{{id}}, {an}) = false (n = {n})"));
        for _ in 0..50 {
            let g = ctx.gen.fixing(&an);
            ctx.require(warn_equivalent(&g, &PapInj::identity()), || {
                format!("{g} fixes {an} but moves warn{{id}}")
            });
        }
        ctx.tally("sets A_n");
    }
    let empty = UpSet::empty();
    ctx.require(!id.is_supported_on(&empty), || "supported_on(warn{id}, empty) = true".into());
    cross_validate(ctx, &id, &empty, 0);
    ctx.require(id.minimal_support() == Support::NoMinimal, || "support(warn{id}) is not NoMinimal".into());
    ctx.require(id.act(&PapInj::succ()) != id, || "act(succ, warn{id}) = warn{id}".into());
    let big = ctx.trials() / 6;
    for t in 0..ctx.trials() {
        let x = ctx.gen.elt(EltKind::Warn);
        let a = if ctx.gen.coin() {
            profile_union(&x).union(&ctx.gen.finite_set(12, 3)).difference(&ctx.gen.finite_set(12, 3))
        } else {
            ctx.gen.upset()
        };
        let samples = if t < big { 50 } else { 5 };
        let supported = x.is_supported_on(&a);
        ctx.tally(if supported { "random queries supported" } else { "random queries not supported" });
        cross_validate(ctx, &x, &a, samples);
    }
}

/// An element of `ℳ_A` whose period is at most 4.
fn small_fixing(ctx: &mut Ctx, a: &UpSet) -> PapInj {
    for _ in 0..64 {
        let g = ctx.gen.fixing(a);
        if g.as_map().period() <= 4 {
            return g;
        }
    }
    mildset_core::mset::move_all(&a.complement())
}

pub(super) fn factorization(ctx: &mut Ctx) {
    let a = UpSet::evens();
    let ac = a.complement();
    for _ in 0..ctx.trials() {
        let len = ctx.gen.index(5) + 1;
        let mut word = Vec::with_capacity(len);
        let mut c = PapInj::identity();
        for _ in 0..len {
            let g = if ctx.gen.coin() { small_fixing(ctx, &a) } else { small_fixing(ctx, &ac) };
            c = c.compose(&g);
            word.push(g);
        }
        let into = c.image(&a).is_subset(&a) && a.elements_upto(SCAN).all(|x| c.eval(x) % 2 == 0);
        ctx.require(into, || {
            let w: Vec<String> = word.iter().map(|g| g.to_string()).collect();
            format!("compose({}) does not map evens into evens", w.join(", "))
        });
        ctx.tally("composites");
    }
    let s = PapInj::succ();
    ctx.require(!s.image(&a).is_subset(&a) && s.eval(2) % 2 == 1, || "succ maps evens into evens".into());
}

pub(super) fn infinite_compl(ctx: &mut Ctx) {
    let mut done = 0;
    while done < ctx.trials() {
        let a = ctx.gen.coinfinite_set();
        let n = ctx.gen.index(3) + 1;
        let us: Vec<PapInj> = (0..n)
            .map(|_| if ctx.gen.coin() { ctx.gen.mild_inj() } else { ctx.gen.inj() })
            .collect();
        if !UpSet::union_all(us.iter().map(|u| u.image(&a))).is_coinfinite() {
            ctx.tally("resampled: hypothesis fails");
            continue;
        }
        done += 1;
        let args: Vec<String> = us.iter().map(|u| u.to_string()).collect();
        let label = format!("chi({a}, {})", args.join(", "));
        match stabilizing_chi(&a, &us, CHI_MAX_PERIOD) {
            Ok(chi) => {
                ctx.require(chi.fixes_pointwise(&a) && a.elements_upto(SCAN).all(|x| chi.eval(x) == x), || {
                    format!("{label} = {chi} does not fix A")
                });
                let total = UpSet::union_all(us.iter().map(|u| u.compose(&chi).range()));
                ctx.require(total.is_coinfinite(), || format!("{label} = {chi}: union of images is not co-infinite"));
                ctx.require(
                    (1..=100).all(|x| us.iter().all(|u| total.contains(u.eval(chi.eval(x))))),
                    || format!("{label} = {chi}: union of images misses a computed value"),
                );
            }
            Err(e) => ctx.fail(format!("{label}: {e}")),
        }
        ctx.tally("instances");
    }
}

pub(super) fn equal_mod_ma_check(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let a = ctx.gen.coinfinite_set();
        let n = ctx.gen.index(3) + 1;
        let us: Vec<PapInj> = (0..n).map(|_| ctx.gen.inj()).collect();
        let vs: Vec<PapInj> = us.iter().map(|u| agreeing_variant(ctx, u, &a)).collect();
        let covered = UpSet::union_all(us.iter().map(|u| u.image(&a)));
        let expect = if covered.is_coinfinite() { EqualModMA::Equal } else { EqualModMA::Unknown };
        let agree = us.iter().zip(&vs).all(|(u, v)| pointwise_agree(u, v, &a));
        ctx.require(agree, || format!("constructed tuples disagree on {a}"));
        match equal_mod_ma(&a, &us, &vs) {
            Ok(got) => {
                ctx.require(got == expect, || format!("equal_mod({a}, ...) = {got:?}, expected {expect:?}"));
                ctx.tally(if got == EqualModMA::Equal { "equal" } else { "unknown: union not co-infinite" });
            }
            Err(e) => ctx.fail(format!("equal_mod({a}, ...): {e}")),
        }
        if let Some(x) = UpSet::min(&a) {
            let mut ws = vs.clone();
            ws[0] = PapInj::succ().compose(&ws[0]);
            ctx.require(matches!(equal_mod_ma(&a, &us, &ws), Ok(EqualModMA::Unknown)), || {
                format!("tuples disagreeing at {x} in {a} reported equal")
            });
        }
        ctx.require(matches!(equal_mod_ma(&a, &us, &us), Ok(got) if got == expect), || {
            format!("equal_mod({a}, us, us) is not {expect:?}")
        });
        ctx.tally("instances");
    }
}
