//! Checks about the operadic product and `Φ`.

use mildset_core::boxprod::box_membership;
use mildset_core::emss::{bounded_injections, simplices_over, Filter};
use mildset_core::operadic::{class_equal, mu_via_operadic, phi_inverse_of};
use mildset_core::{InjN, MElt, OperadicClass, PapInj, Simplex, Support, UpSet};
use rayon::prelude::*;

use super::Ctx;
use crate::family::{Base, FamilySpec};
use crate::gen::{EltKind, MILD_KINDS};

/// Outcome of the exhaustive round trip for one `x`.
#[derive(Default)]
struct Trip {
    pairs: u64,
    in_box: u64,
    failures: Vec<String>,
}

fn round_trip_one(x: &Simplex, ys: &[Simplex]) -> Trip {
    let mut t = Trip::default();
    let n = x.degree();
    for y in ys {
        t.pairs += 1;
        let xs = [x.clone(), y.clone()];
        match box_membership(&xs) {
            Ok(o) if o.is_in() => t.in_box += 1,
            Ok(_) => continue,
            Err(e) => {
                t.failures.push(format!("box? [{x}, {y}]: {e}"));
                continue;
            }
        }
        match phi_inverse_of(&xs) {
            Ok(c) if c.phi() == xs => {}
            Ok(c) => t.failures.push(format!("phi(phi_inv([{x}, {y}])) = phi({c}) differs")),
            Err(e) => t.failures.push(format!("phi_inv([{x}, {y}]): {e}")),
        }
        // The other way round, from a class whose image is (2x, 2y - 1).
        let c = OperadicClass::new(vec![InjN::interleave(2); n + 1], xs.to_vec()).expect("matching degrees");
        let back = phi_inverse_of(&c.phi()).and_then(|b| class_equal(&b, &c));
        if !matches!(back, Ok(true)) {
            t.failures.push(format!("phi_inv(phi({c})) is not {c}: {back:?}"));
        }
    }
    t
}

fn random_frame(ctx: &mut Ctx, arity: usize, levels: usize) -> Vec<InjN> {
    (0..levels)
        .map(|_| {
            let base = InjN::interleave(arity as i64);
            let g = ctx.gen.inj();
            let f = base.postcompose(&g);
            if ctx.gen.coin() {
                f
            } else {
                f.precompose(&ctx.gen.injs(arity))
            }
        })
        .collect()
}

fn random_class(ctx: &mut Ctx) -> OperadicClass {
    let n = ctx.gen.index(ctx.spec.degree.min(2) + 1);
    let arity = 1 + ctx.gen.index(3);
    // Pairs of mild elements can have cofinite supports; classes are only
    // compared when every payload is co-infinitely supported.
    let payload: Vec<Simplex> = (0..arity)
        .map(|_| loop {
            let kind = *ctx.gen.pick(&MILD_KINDS);
            let s = ctx.gen.simplex(kind, n);
            if s.is_coinfinitely_supported() {
                break s;
            }
        })
        .collect();
    let frame = random_frame(ctx, arity, n + 1);
    OperadicClass::new(frame, payload).expect("consistent shapes")
}

pub(super) fn operad_round_trip(ctx: &mut Ctx) {
    let bound = ctx.spec.entry_bound;
    let ones: Vec<MElt> = bounded_injections(&[1], bound).into_iter().map(MElt::Inj).collect();
    let twos: Vec<MElt> = bounded_injections(&[2], bound).into_iter().map(MElt::Inj).collect();
    for n in 0..=ctx.spec.degree.min(2) {
        let xs = simplices_over(&ones, n);
        let ys = simplices_over(&twos, n);
        let trips: Vec<Trip> = xs.par_iter().map(|x| round_trip_one(x, &ys)).collect();
        let mut in_box = 0;
        for t in trips {
            ctx.add(&format!("pairs at degree {n}"), t.pairs);
            in_box += t.in_box;
            for f in t.failures {
                ctx.fail(f);
            }
        }
        ctx.set(&format!("box simplices at degree {n}"), in_box);
        let expect = ((bound * (bound - 1)) as u64).pow(n as u32 + 1);
        ctx.require(in_box == expect, || format!("degree {n}: {in_box} box simplices, oracle {expect}"));
    }
    for _ in 0..ctx.trials() {
        let c = random_class(ctx);
        let image = c.phi();
        ctx.require(box_membership(&image).is_ok_and(|o| o.is_in()), || format!("phi({c}) is not in the box product"));
        match phi_inverse_of(&image).and_then(|b| class_equal(&b, &c).map(|eq| (b, eq))) {
            Ok((b, eq)) => {
                ctx.require(eq && b.phi() == image, || format!("phi_inv(phi({c})) = {b} is a different class"));
            }
            Err(e) => ctx.fail(format!("phi_inv(phi({c})): {e}")),
        }
        ctx.tally("random classes");
    }
}

pub(super) fn class_eq_relation(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let c = random_class(ctx);
        let us: Vec<Vec<PapInj>> = (0..=c.degree()).map(|_| ctx.gen.injs(c.arity())).collect();
        let (lhs, rhs) = (c.precompose_frame(&us), c.act_payload(&us));
        match class_equal(&lhs, &rhs) {
            Ok(eq) => {
                ctx.require(eq, || format!("{lhs} and {rhs} are reported different"));
            }
            Err(e) => ctx.fail(format!("class_eq({lhs}, {rhs}): {e}")),
        }
        let vs: Vec<Vec<PapInj>> = (0..=c.degree()).map(|_| ctx.gen.injs(c.arity())).collect();
        let other = c.act_payload(&vs);
        let same_image = other.phi() == c.phi();
        match (class_equal(&c, &other), class_equal(&other, &c)) {
            (Ok(a), Ok(b)) => {
                ctx.require(a == b && a == same_image, || {
                    format!("class_eq({c}, {other}) = {a}, reversed {b}, equal images {same_image}")
                });
                ctx.tally(if same_image { "equal images" } else { "different images" });
            }
            (a, b) => ctx.fail(format!("class_eq({c}, {other}): {a:?} / {b:?}")),
        }
        ctx.tally("instances");
    }
    operad_laws(ctx);
}

fn random_injn(ctx: &mut Ctx, arity: usize) -> InjN {
    let g = ctx.gen.inj();
    if arity == 1 {
        InjN::new(vec![g]).expect("a single component")
    } else {
        InjN::interleave(arity as i64).postcompose(&g)
    }
}

fn pointwise_eq(u: &PapInj, v: &PapInj) -> bool {
    (1..=200).all(|x| u.eval(x) == v.eval(x))
}

fn operad_laws(ctx: &mut Ctx) {
    for _ in 0..100 {
        let f = random_injn(ctx, 2);
        let (g1, g2) = (random_injn(ctx, 2), random_injn(ctx, 1));
        let fg = f.operad_compose(&[g1.clone(), g2.clone()]);
        let expect = [
            f.component(0).compose(g1.component(0)),
            f.component(0).compose(g1.component(1)),
            f.component(1).compose(g2.component(0)),
        ];
        let ok = fg.arity() == 3 && (0..3).all(|j| *fg.component(j) == expect[j] && pointwise_eq(fg.component(j), &expect[j]));
        ctx.require(ok, || format!("components of {f} composed with ({g1}, {g2}) are wrong"));
        let hs: Vec<InjN> = (0..3).map(|_| random_injn(ctx, 1)).collect();
        let left = fg.operad_compose(&hs);
        let right = f.operad_compose(&[g1.operad_compose(&hs[..2]), g2.operad_compose(&hs[2..])]);
        ctx.require(left == right, || format!("operad composition is not associative at {f}"));
        let id = InjN::identity();
        ctx.require(
            f.operad_compose(&[id.clone(), id.clone()]) == f && id.operad_compose(&[f.clone()]) == f,
            || format!("the identity is not a unit at {f}"),
        );
        // Phi of a composite frame is juxtaposition of the parts.
        let xs: Vec<Simplex> = (0..3).map(|_| Simplex::vertex(ctx.gen.mild_elt())).collect();
        let c = OperadicClass::new(vec![fg.clone()], xs.clone()).expect("arity 3");
        let parts = [
            OperadicClass::new(vec![g1.clone()], xs[..2].to_vec()).unwrap().phi(),
            OperadicClass::new(vec![g2.clone()], xs[2..].to_vec()).unwrap().phi(),
        ];
        let outer = [
            Simplex::vertex(parts[0][0].coord(0).act(f.component(0))),
            Simplex::vertex(parts[0][1].coord(0).act(f.component(0))),
            Simplex::vertex(parts[1][0].coord(0).act(f.component(1))),
        ];
        ctx.require(c.phi() == outer, || format!("phi of the composite frame {fg} is not the juxtaposition"));
        ctx.tally("operad law instances");
    }
}

fn mild_families() -> Vec<(FamilySpec, i64)> {
    vec![
        (
            FamilySpec {
                base: Base::SelfM,
                degree: 2,
                filter: Some(Filter::Mu),
            },
            10,
        ),
        (
            FamilySpec {
                base: Base::Inj(vec![1]),
                degree: 1,
                filter: Some(Filter::Mu),
            },
            10,
        ),
        (
            FamilySpec {
                base: Base::Inj(vec![1, 2]),
                degree: 1,
                filter: Some(Filter::Mu),
            },
            5,
        ),
    ]
}

pub(super) fn star_mod_mild(ctx: &mut Ctx) {
    for (fam, bound) in mild_families() {
        let fam = FamilySpec {
            degree: fam.degree.min(ctx.spec.degree),
            ..fam
        };
        let r = fam.star_module(bound);
        ctx.require(r.passes(), || {
            format!(
                "{fam}: {} injectivity failures, {} round trip failures, {} unhit",
                r.injectivity_failures.len(),
                r.round_trip_failures.len(),
                r.unhit.len()
            )
        });
        for f in r.injectivity_failures.iter().chain(&r.round_trip_failures).take(5) {
            ctx.fail(format!("{fam}: {f}"));
        }
        ctx.require(r.hit == r.samples && r.phi_equal_pairs > 0, || {
            format!("{fam}: hit {} of {} with {} equal-image pairs", r.hit, r.samples, r.phi_equal_pairs)
        });
        ctx.add("samples", r.samples as u64);
        ctx.add("equal-image pairs", r.phi_equal_pairs as u64);
    }
}

pub(super) fn star_mod_non_mild(ctx: &mut Ctx) {
    let fam = FamilySpec {
        base: Base::SelfM,
        degree: ctx.spec.degree.min(1),
        filter: None,
    };
    let r = fam.star_module(10);
    ctx.require(!r.passes(), || format!("{fam} passes the *-module check"));
    ctx.require(r.injectivity_failures.is_empty() && r.round_trip_failures.is_empty(), || {
        format!("{fam}: the mild part fails")
    });
    let id = Simplex::vertex(MElt::SelfM(PapInj::identity()));
    let found = r.unhit.iter().find(|w| w.simplex == id);
    ctx.require(
        found.is_some_and(|w| w.level == 0 && w.support == Support::Least(UpSet::omega())),
        || format!("{fam}: the vertex {id} is not reported unhit with support w"),
    );
    for w in &r.unhit {
        let coinfinite = matches!(&w.support, Support::Least(a) if a.is_coinfinite());
        ctx.require(!coinfinite && !w.simplex.is_coinfinitely_supported(), || {
            format!("{fam}: {} is reported unhit but is mild", w.simplex)
        });
    }
    if let Some(w) = found {
        ctx.note(format!("unhit witness {} at level {}, least support {}", w.simplex, w.level, UpSet::omega()));
    }
    ctx.set("unhit", r.unhit.len() as u64);
    ctx.set("hit", r.hit as u64);
}

pub(super) fn mu_via_operadic_check(ctx: &mut Ctx) {
    for _ in 0..ctx.trials() {
        let n = ctx.gen.index(ctx.spec.degree.min(2) + 1);
        let kind = *ctx.gen.pick(&[
            EltKind::SelfAny,
            EltKind::SelfMild,
            EltKind::FiniteInj(1),
            EltKind::InfiniteInj,
            EltKind::Pair,
        ]);
        let x = ctx.gen.simplex(kind, n);
        let frame = ctx.gen.coin().then(|| random_frame(ctx, 2, n + 1));
        let r = match mu_via_operadic(&x, frame.as_deref()) {
            Ok(r) => r,
            Err(e) => {
                ctx.fail(format!("mu({x}): {e}"));
                continue;
            }
        };
        let dx = &r.normalized.payload()[0];
        let evens = UpSet::evens();
        ctx.require(
            dx.is_coinfinitely_supported() && (0..=n).all(|k| dx.is_k_supported_on(k, &evens)),
            || format!("mu({x}): payload {dx} is not supported on the evens"),
        );
        ctx.require(r.normalized.phi() == r.original.phi(), || format!("mu({x}): phi changed"));
        if x.is_coinfinitely_supported() {
            ctx.require(matches!(class_equal(&r.original, &r.normalized), Ok(true)), || {
                format!("mu({x}): {} and {} are different classes", r.original, r.normalized)
            });
            ctx.tally("mild inputs");
        } else {
            ctx.tally("inputs that are not mild");
        }
    }
}
