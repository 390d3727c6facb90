//! Set and map algebra against pointwise brute force.

use mildset_core::pap::Piece;
use mildset_core::{PapInj, PapMap, SetClass, UpSet};
use proptest::prelude::*;

const SCAN: i64 = 300;

fn upset() -> impl Strategy<Value = UpSet> {
    (0i64..10, 1i64..9, any::<u16>(), any::<u16>()).prop_map(|(n, p, exc, res)| {
        let exc: Vec<i64> = (1..=n).filter(|x| exc & (1 << (x - 1)) != 0).collect();
        let res: Vec<i64> = (0..p).filter(|r| res & (1 << r) != 0).collect();
        UpSet::new(n, &exc, p, &res).unwrap()
    })
}

fn members(s: &UpSet) -> Vec<i64> {
    (1..=SCAN).filter(|&x| s.contains(x)).collect()
}

/// Maps `x ↦ base_r + step_r·⌊x/p⌋` with a short table in front; not
/// necessarily injective.
fn pap_map() -> impl Strategy<Value = PapMap> {
    (
        proptest::collection::vec(1i64..30, 0..5),
        1i64..5,
        proptest::collection::vec((0i64..7, 0i64..12), 4),
    )
        .prop_map(|(table, p, raw)| {
            let pieces = (0..p as usize)
                .map(|r| Piece {
                    step: raw[r].0,
                    base: raw[r].1 + r as i64 + 1,
                })
                .collect();
            PapMap::from_parts(table, p, pieces).unwrap()
        })
}

fn injection() -> impl Strategy<Value = PapInj> {
    prop_oneof![
        (1i64..5, 0i64..6).prop_map(|(a, b)| PapInj::affine(a, b)),
        (1i64..9, 1i64..9).prop_filter("distinct", |(a, b)| a != b).prop_map(|(a, b)| PapInj::swap(a, b)),
        upset().prop_filter("infinite", UpSet::is_infinite).prop_map(|s| PapInj::enumerate(&s).unwrap()),
        (2i64..4, 1i64..4).prop_filter("strand", |(n, j)| j <= n).prop_map(|(n, j)| PapInj::interleave(n, j)),
    ]
}

proptest! {
    #[test]
    fn boolean_operations_are_pointwise(a in upset(), b in upset()) {
        for x in 1..=SCAN {
            prop_assert_eq!(a.union(&b).contains(x), a.contains(x) || b.contains(x));
            prop_assert_eq!(a.intersect(&b).contains(x), a.contains(x) && b.contains(x));
            prop_assert_eq!(a.difference(&b).contains(x), a.contains(x) && !b.contains(x));
            prop_assert_eq!(a.complement().contains(x), !a.contains(x));
        }
        prop_assert_eq!(a.is_subset(&b), a.difference(&b).is_empty());
        prop_assert_eq!(a.is_disjoint(&b), a.intersect(&b).is_empty());
    }

    #[test]
    fn canonical_form_is_unique(a in upset(), b in upset()) {
        prop_assert_eq!(members(&a) == members(&b), a == b);
    }

    #[test]
    fn classification_counts_points(a in upset()) {
        let inside = members(&a).len() as u64;
        match a.classify() {
            SetClass::Finite(n) => prop_assert_eq!(n, inside),
            SetClass::Cofinite(n) => prop_assert_eq!(n, SCAN as u64 - inside),
            SetClass::BiInfinite => {
                prop_assert!(a.is_infinite() && a.is_coinfinite());
            }
        }
    }

    #[test]
    fn enumeration_lists_members_in_order(a in upset().prop_filter("infinite", UpSet::is_infinite)) {
        let e = PapInj::enumerate(&a).unwrap();
        let listed: Vec<i64> = (1..=40).map(|k| e.eval(k)).collect();
        let expected: Vec<i64> = (1..).filter(|&x| a.contains(x)).take(40).collect();
        prop_assert_eq!(listed, expected);
    }

    #[test]
    fn validation_agrees_with_collision_search(m in pap_map()) {
        match PapInj::validate(m.clone()) {
            Ok(_) => {
                let mut vals: Vec<i64> = (1..=600).map(|x| m.eval(x)).collect();
                vals.sort_unstable();
                prop_assert!(vals.windows(2).all(|w| w[0] != w[1]));
            }
            Err(mildset_core::pap::PapError::NotInjective { x, y }) => {
                prop_assert!(x < y && m.eval(x) == m.eval(y));
                // reported pair is the least colliding pair
                for y2 in 1..y {
                    for x2 in 1..y2 {
                        prop_assert!(m.eval(x2) != m.eval(y2));
                    }
                }
            }
            Err(_) => {}
        }
    }

    #[test]
    fn composition_is_pointwise(u in injection(), v in injection()) {
        let c = u.compose(&v);
        for x in 1..=SCAN {
            prop_assert_eq!(c.eval(x), u.eval(v.eval(x)));
        }
    }

    #[test]
    fn images_and_preimages_are_pointwise(u in injection(), s in upset()) {
        let img = u.image(&s);
        let pre = u.preimage(&s);
        for x in 1..=SCAN {
            if s.contains(x) {
                prop_assert!(img.contains(u.eval(x)));
            }
            prop_assert_eq!(pre.contains(x), s.contains(u.eval(x)));
        }
        for y in 1..=60 {
            let back = (1..=SCAN).find(|&x| u.eval(x) == y);
            prop_assert_eq!(img.contains(y), back.is_some_and(|x| s.contains(x)));
        }
    }

    #[test]
    fn agreement_is_pointwise(u in injection(), v in injection(), s in upset()) {
        let pointwise = (1..=SCAN).all(|x| !s.contains(x) || u.eval(x) == v.eval(x));
        // a disagreement beyond the scan would still be reported
        if u.equal_on(&v, &s) {
            prop_assert!(pointwise);
        }
        prop_assert_eq!(u.equal_on(&v, &s), u.as_map().disagreement(v.as_map()).is_disjoint(&s));
    }

    #[test]
    fn partial_inverse_undoes(u in injection()) {
        let inv = u.partial_inverse();
        for x in 1..=SCAN {
            prop_assert_eq!(inv.eval(u.eval(x)), x);
        }
    }

    #[test]
    fn agreeing_bijection_is_bijective(u in injection(), s in upset().prop_filter("co-infinite", UpSet::is_coinfinite)) {
        let b = u.agreeing_bijection(&s).unwrap();
        prop_assert!(b.is_bijective());
        prop_assert!(b.equal_on(&u, &s));
        let mut vals: Vec<i64> = (1..=SCAN * 4).map(|x| b.eval(x)).collect();
        vals.sort_unstable();
        // every small value is hit
        prop_assert!((1..=40).all(|y| vals.binary_search(&y).is_ok()));
    }

    #[test]
    fn embedding_is_injective_into_target(a in upset(), b in upset().prop_filter("infinite", UpSet::is_infinite)) {
        let e = PapMap::embed(&a, &b).unwrap();
        let mut seen = Vec::new();
        for x in (1..=SCAN).filter(|&x| a.contains(x)) {
            let y = e.eval(x);
            prop_assert!(b.contains(y), "{} goes to {} outside the target", x, y);
            seen.push(y);
        }
        seen.sort_unstable();
        prop_assert!(seen.windows(2).all(|w| w[0] != w[1]));
        prop_assert!(e.period() <= a.period());
    }

    #[test]
    fn transport_is_order_preserving(a in upset().prop_filter("infinite", UpSet::is_infinite), b in upset().prop_filter("infinite", UpSet::is_infinite)) {
        let t = PapMap::transport(&a, &b, None).unwrap();
        let src: Vec<i64> = (1..=SCAN).filter(|&x| a.contains(x)).collect();
        let dst: Vec<i64> = (1..).filter(|&y| b.contains(y)).take(src.len()).collect();
        let got: Vec<i64> = src.iter().map(|&x| t.eval(x)).collect();
        prop_assert_eq!(got, dst);
    }
}
