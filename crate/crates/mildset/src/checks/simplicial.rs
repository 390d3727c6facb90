//! Checks about EM-simplicial sets, their supports and filtrations.

use mildset_core::emss::{bounded_injections, monotone_maps, permutation_lists, simplices_over, Filter, GraphFixedPoints};
use mildset_core::mset::MSetFamily;
use mildset_core::{FinGroup, MElt, PapInj, Simplex, TruncEmss, UpSet};

use super::support::{cross_validate, support_superset};
use super::Ctx;
use crate::family::selfm_pool;
use crate::gen::{EltKind, MILD_KINDS};

fn random_simplex(ctx: &mut Ctx, max_degree: usize) -> Simplex {
    let n = ctx.gen.index(max_degree + 1);
    let kind = *ctx.gen.pick(&MILD_KINDS);
    ctx.gen.simplex(kind, n)
}

pub(super) fn ksupp(ctx: &mut Ctx) {
    let d = ctx.spec.degree;
    for _ in 0..ctx.trials() {
        let s = random_simplex(ctx, d);
        let n = s.degree();
        let k = ctx.gen.index(n + 1);
        let Some(a) = support_superset(ctx, s.coord(k)) else {
            ctx.tally("skipped: no co-infinite support");
            continue;
        };
        let us = ctx.gen.injs(n + 1);
        let y = s.em_act(&us).expect("matching arity");
        ctx.require(*y.coord(k) == s.coord(k).act(&us[k]), || {
            format!("coordinate {k} of em_act on {s} is not act of u_{k}")
        });
        let uka = us[k].image(&a);
        ctx.require(y.is_k_supported_on(k, &uka), || {
            format!("em_act(..., {s}) is not {k}-supported on image({}, {a})", us[k])
        });
        let yk = y.coord(k).clone();
        cross_validate(ctx, &yk, &uka, 1);
        ctx.tally("instances");
    }
}

pub(super) fn fksupp(ctx: &mut Ctx) {
    let d = ctx.spec.degree;
    for _ in 0..ctx.trials() {
        let s = random_simplex(ctx, d);
        let n = s.degree();
        let supports: Vec<Option<UpSet>> = (0..=n).map(|j| support_superset(ctx, s.coord(j))).collect();
        let us = ctx.gen.injs(n + 1);
        let moved = s.em_act(&us).expect("matching arity");
        for m in 0..=d {
            for f in monotone_maps(m, n) {
                let pulled = s.pullback(&f).expect("monotone map into [n]");
                for (k, &fk) in f.iter().enumerate() {
                    if let Some(a) = &supports[fk] {
                        ctx.require(pulled.is_k_supported_on(k, a), || {
                            format!("pullback {f:?} of {s} is not {k}-supported on {a}")
                        });
                    }
                }
                // f*(u.x) = (u∘f).(f*x)
                let uf: Vec<PapInj> = f.iter().map(|&j| us[j].clone()).collect();
                let lhs = moved.pullback(&f).expect("monotone map into [n]");
                ctx.require(lhs == pulled.em_act(&uf).expect("matching arity"), || {
                    format!("pullback {f:?} does not commute with the action on {s}")
                });
                ctx.tally("monotone maps");
            }
        }
        if n > 0 {
            for i in 0..=n {
                let mut rest = us.clone();
                rest.remove(i);
                let lhs = moved.face(i).expect("positive degree");
                ctx.require(lhs == s.face(i).unwrap().em_act(&rest).unwrap(), || {
                    format!("face {i} does not commute with the action on {s}")
                });
            }
        }
        ctx.tally("instances");
    }
}

pub(super) fn kfsupp(ctx: &mut Ctx) {
    let d = ctx.spec.degree;
    for _ in 0..ctx.trials() {
        let s = random_simplex(ctx, d);
        let n = s.degree();
        let k = ctx.gen.index(n + 1);
        let cut = ctx.gen.upset();
        let a = match support_superset(ctx, s.coord(k)) {
            Some(sup) if ctx.gen.coin() => sup.intersect(&cut.union(&ctx.gen.finite_set(12, 4))),
            _ => ctx.gen.coinfinite_set(),
        };
        let us = ctx.gen.injs(n + 1);
        let y = s.em_act(&us).expect("matching arity");
        if y.is_k_supported_on(k, &us[k].image(&a)) {
            ctx.tally("antecedent held");
            ctx.require(s.is_k_supported_on(k, &a), || {
                format!("em_act(..., {s}) is {k}-supported on image({}, {a}) but {s} is not {k}-supported on {a}", us[k])
            });
            let sk = s.coord(k).clone();
            cross_validate(ctx, &sk, &a, 1);
        } else {
            ctx.tally("antecedent failed");
        }
        ctx.tally("instances");
    }
}

pub(super) fn tau_mu_functor(ctx: &mut Ctx) {
    let top = ctx.spec.degree.min(3);
    let pool: Vec<MElt> = selfm_pool().into_iter().map(MElt::SelfM).collect();
    let e = TruncEmss::new(MSetFamily::SelfM).with_degree(top);
    let (e_mu, e_tau) = (e.clone().filtered(Filter::Mu), e.clone().filtered(Filter::Tau));
    let mu = MSetFamily::Mu(Box::new(MSetFamily::SelfM));
    let tau = MSetFamily::Tau(Box::new(MSetFamily::SelfM));
    for n in 0..=top {
        for s in simplices_over(&pool, n) {
            let degreewise = s.coords().iter().all(|x| mu.contains(x));
            ctx.require(e_mu.contains(&s) == degreewise, || {
                format!("{s}: membership in (E M)^mu differs from E(M^mu)")
            });
            let tame = s.coords().iter().all(|x| tau.contains(x));
            ctx.require(e_tau.contains(&s) == tame && !tame, || format!("{s} lies in (E M)^tau"));
            if degreewise {
                ctx.tally("mild simplices");
                for i in 0..=n {
                    if n > 0 {
                        ctx.require(e_mu.contains(&s.face(i).unwrap()), || format!("a face of {s} leaves (E M)^mu"));
                    }
                    if n < top {
                        ctx.require(e_mu.contains(&s.degeneracy(i).unwrap()), || {
                            format!("a degeneracy of {s} leaves (E M)^mu")
                        });
                    }
                }
            }
            ctx.tally("simplices");
        }
    }
    for _ in 0..ctx.trials() {
        let n = ctx.gen.index(top + 1);
        let s = ctx.gen.simplex(EltKind::SelfMild, n);
        let us = ctx.gen.injs(s.degree() + 1);
        let y = s.em_act(&us).unwrap();
        ctx.require(e_mu.contains(&y), || format!("em_act(..., {s}) leaves (E M)^mu"));
        ctx.tally("sampled actions");
    }
    // Finite injections are tame, so (E Inj({1}, w))^tau is everything.
    let singles: Vec<MElt> = bounded_injections(&[1], 4).into_iter().map(MElt::Inj).collect();
    let inj_tau = TruncEmss::new(MSetFamily::Inj(UpSet::finite([1]))).with_degree(top).filtered(Filter::Tau);
    for s in simplices_over(&singles, top) {
        ctx.require(inj_tau.contains(&s), || format!("{s} is missing from (E Inj)^tau"));
    }
    // Co-infinitely supported at every level, yet the supports cover w.
    let edge = Simplex::new(vec![MElt::SelfM(PapInj::double()), MElt::SelfM(PapInj::affine(2, 1))]);
    let cover = UpSet::evens().union(&UpSet::odds());
    ctx.require(edge.is_coinfinitely_supported() && !cover.is_coinfinite(), || {
        format!("{edge} should be co-infinitely supported with supports covering w")
    });
}

pub(super) fn universal_embedding(ctx: &mut Ctx) {
    let cases = [
        ("trivial", FinGroup::trivial(), 1),
        ("C2", FinGroup::cyclic(2), 3),
        ("C3", FinGroup::cyclic(3), 4),
        ("C4", FinGroup::cyclic(4), 7),
        ("S3", FinGroup::symmetric(3), 12),
    ];
    for (name, g, block) in cases {
        let emb = match g.universal_embedding(24) {
            Ok(e) => e,
            Err(e) => {
                ctx.fail(format!("{name}: {e}"));
                continue;
            }
        };
        ctx.require(emb.block_size() == block, || {
            format!("{name}: block size {} but expected {block}", emb.block_size())
        });
        let span = 3 * emb.block_size();
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                let ok = (1..=span).all(|x| emb.map(a).eval(emb.map(b).eval(x)) == emb.map(ab).eval(x));
                ctx.require(ok, || format!("{name}: emb({a}) emb({b}) differs from emb({ab}) pointwise"));
            }
            ctx.require(emb.map(a).is_bijective(), || format!("{name}: emb({a}) is not a bijection"));
        }
        ctx.require((1..=span).all(|x| emb.map(0).eval(x) == x), || format!("{name}: emb(e) is not the identity"));
        for k in g.subgroup_classes() {
            ctx.require(emb.blocks_with_orbit_type(k, 5) == 5, || {
                format!("{name}: some block lacks an orbit with stabilizer conjugate to {k:#b}")
            });
        }
        // Each block holds exactly one orbit per subgroup class.
        for blk in 0..5 {
            let mut stabs = Vec::new();
            let mut x = blk * emb.block_size() + 1;
            while x <= (blk + 1) * emb.block_size() {
                let (orbit, stab) = emb.orbit_and_stabilizer(x);
                stabs.push(stab);
                x += orbit.len() as i64;
            }
            let classes = g.subgroup_classes();
            let matched = classes
                .iter()
                .all(|&k| stabs.iter().filter(|&&s| g.is_subgroup_conjugate(s, k)).count() == 1);
            ctx.require(stabs.len() == classes.len() && matched, || {
                format!("{name}: block {blk} does not realize each orbit type once")
            });
        }
        ctx.tally("groups");
    }
    let big = FinGroup::symmetric(5);
    ctx.require(big.universal_embedding(24).is_err(), || "a group of order 120 was accepted".into());
}

fn c2_swap(x: i64) -> i64 {
    match x % 3 {
        1 => x + 1,
        2 => x - 1,
        _ => x,
    }
}

pub(super) fn fixed_points(ctx: &mut Ctx) {
    const BOUND: i64 = 30;
    let g = FinGroup::symmetric(2);
    let emb = FinGroup::cyclic(2).universal_embedding(24).expect("small group");
    let rho = permutation_lists(2);
    let all: Vec<(i64, i64)> = (1..=BOUND)
        .flat_map(|a| (1..=BOUND).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let cases: [(&str, Vec<usize>, Box<dyn Fn(i64, i64) -> bool>); 3] = [
        ("phi = id", vec![0, 1], Box::new(|a, b| c2_swap(a) == b && c2_swap(b) == a)),
        ("phi trivial", vec![0, 0], Box::new(|a, b| c2_swap(a) == a && c2_swap(b) == b)),
        ("H trivial", vec![0], Box::new(|_, _| true)),
    ];
    let trivial = FinGroup::trivial().universal_embedding(24).expect("small group");
    for (name, phi, oracle) in cases {
        let embedding = if phi.len() == 1 { &trivial } else { &emb };
        let gfp = GraphFixedPoints {
            domain_size: 2,
            group: &g,
            rho: rho.clone(),
            embedding,
            phi,
        };
        let report = match gfp.fixed_points(1, BOUND) {
            Ok(r) => r,
            Err(e) => {
                ctx.fail(format!("{name}: {e}"));
                continue;
            }
        };
        let mut got: Vec<(i64, i64)> = report.vertices.iter().map(|u| (u.eval(1), u.eval(2))).collect();
        got.sort_unstable();
        let expected: Vec<(i64, i64)> = all.iter().copied().filter(|&(a, b)| oracle(a, b)).collect();
        ctx.require(got == expected, || {
            format!("{name}: {} fixed vertices, oracle gives {}", got.len(), expected.len())
        });
        ctx.require(report.simplices.len() == expected.len().pow(2), || {
            format!("{name}: wrong number of fixed 1-simplices")
        });
        ctx.require(!report.boundary_effects, || format!("{name}: unexpected boundary effects at bound {BOUND}"));
        ctx.set(&format!("fixed vertices, {name}"), got.len() as u64);
    }
}
