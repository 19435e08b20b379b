mod common;

use common::brute_force_components;
use finspace::format::{poset_from_json, poset_to_json};
use finspace::group::{self, groups_isomorphic, validate_generating_set, DEFAULT_ISO_LIMIT};
use finspace::homotopy::{core, core_with, RemovalOrder};
use finspace::iso::are_isomorphic;
use finspace::poset::{BasePoint, Extremity, PointLabel, SKind, TKind};
use finspace::{FinitePoset, PosetMap};
use proptest::prelude::*;

/// Random posets on up to 12 points: relations only go from lower to higher
/// index, so any choice is acyclic.
fn arb_poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=12)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(proptest::bool::weighted(0.25), pairs))
        })
        .prop_map(|(n, bits)| {
            let mut rels = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        rels.push((a, b));
                    }
                    k += 1;
                }
            }
            let labels = (0..n).map(|i| PointLabel::named(format!("q{i}"))).collect();
            FinitePoset::from_relations(labels, rels).unwrap()
        })
}

fn arb_poset_with_perm() -> impl Strategy<Value = (FinitePoset, Vec<usize>)> {
    arb_poset().prop_flat_map(|p| {
        let perm: Vec<usize> = (0..p.len()).collect();
        (Just(p), Just(perm).prop_shuffle())
    })
}

fn arb_base() -> impl Strategy<Value = BasePoint> {
    (0usize..300, -1i32..20).prop_map(|(e, l)| BasePoint::new(e, l))
}

fn arb_label() -> impl Strategy<Value = PointLabel> {
    prop_oneof![
        arb_base().prop_map(PointLabel::Base),
        (0usize..4, arb_base()).prop_map(|(k, base)| PointLabel::GadgetS { kind: SKind::ALL[k], base }),
        (0usize..6, arb_base()).prop_map(|(k, base)| PointLabel::GadgetT { kind: TKind::ALL[k], base }),
        (any::<bool>(), 1u32..50, arb_base()).prop_map(|(mx, index, base)| PointLabel::GadgetTn {
            kind: if mx { Extremity::Max } else { Extremity::Min },
            index,
            base,
        }),
        Just(PointLabel::Star),
        "[a-z][a-z0-9_]{0,8}".prop_map(PointLabel::named),
    ]
}

/// Reflexive-transitive closure computed from scratch over the Hasse edges.
fn naive_leq(p: &FinitePoset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in p.hasse_edges() {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Size of the subgroup generated by `s`, by repeated right multiplication.
fn closure_size(table: &[Vec<usize>], e: usize, s: &[usize]) -> usize {
    let mut seen = vec![false; table.len()];
    seen[e] = true;
    let mut stack = vec![e];
    while let Some(x) = stack.pop() {
        for &g in s {
            let y = table[x][g];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().filter(|&&b| b).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn components_match_brute_force(p in arb_poset()) {
        prop_assert_eq!(p.components().len(), brute_force_components(&p));
        prop_assert_eq!(p.is_path_connected(), brute_force_components(&p) <= 1);
        let mut all: Vec<usize> = p.components().concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..p.len()).collect::<Vec<_>>());
    }

    #[test]
    fn order_is_the_closure_of_the_hasse_diagram(p in arb_poset()) {
        let r = naive_leq(&p);
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(p.leq(a, b), r[a][b]);
            }
        }
        // Rebuilding from the covers is a fixed point.
        let q = FinitePoset::from_hasse(p.labels().to_vec(), p.hasse_edges()).unwrap();
        prop_assert_eq!(&q, &p);
        // No Hasse edge is implied by a longer path.
        for &(a, b) in p.hasse_edges() {
            prop_assert!((0..p.len()).all(|c| c == a || c == b || !(p.lt(a, c) && p.lt(c, b))));
        }
    }

    #[test]
    fn minimal_open_set_is_the_down_set(p in arb_poset()) {
        for x in 0..p.len() {
            let u = p.minimal_open_set(x).unwrap();
            let expect: Vec<usize> = (0..p.len()).filter(|&y| p.leq(y, x)).collect();
            prop_assert_eq!(&u, &expect);
            // Open: closed under going down.
            for &y in &u {
                prop_assert!((0..p.len()).all(|z| !p.leq(z, y) || u.contains(&z)));
            }
        }
    }

    #[test]
    fn isomorphism_is_invariant_under_relabelling((p, perm) in arb_poset_with_perm()) {
        let q = p.permuted(&perm).unwrap();
        let f = are_isomorphic(&p, &q).unwrap().expect("a relabelled copy is isomorphic");
        prop_assert!(f.is_isomorphism(&p, &q));
        let g = are_isomorphic(&q, &p).unwrap().expect("symmetric");
        prop_assert!(g.is_isomorphism(&q, &p));
        prop_assert!(f.inverse().unwrap().is_isomorphism(&q, &p));
        // The relabelling itself is an isomorphism q -> p.
        prop_assert!(PosetMap::new(perm.clone()).is_isomorphism(&q, &p));
    }

    #[test]
    fn adding_a_relation_breaks_isomorphism(p in arb_poset()) {
        // A proper extension has more comparable pairs, so it is never isomorphic.
        let n = p.len();
        if let Some((a, b)) = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| !p.comparable(a, b)) {
            let mut rels = p.hasse_edges().to_vec();
            rels.push((a, b));
            let q = FinitePoset::from_relations(p.labels().to_vec(), rels).unwrap();
            prop_assert!(are_isomorphic(&p, &q).unwrap().is_none());
        }
    }

    #[test]
    fn cores_are_beat_point_free_and_retracts(p in arb_poset()) {
        for order in [RemovalOrder::LowestIndex, RemovalOrder::HighestIndex] {
            let red = core_with(&p, order);
            prop_assert!(red.core.is_core());
            prop_assert_eq!(red.core.len() + red.trace.len(), p.len());
            prop_assert!(red.retraction.is_order_preserving(&p, &red.core));
            prop_assert!(red.inclusion().is_order_preserving(&red.core, &p));
            let ri = red.retraction.compose(&red.inclusion());
            prop_assert!(ri.is_identity());
        }
        // Different removal orders give isomorphic cores.
        let a = core(&p).core;
        let b = core_with(&p, RemovalOrder::HighestIndex).core;
        prop_assert!(are_isomorphic(&a, &b).unwrap().is_some());
    }

    #[test]
    fn poset_json_round_trip(p in arb_poset()) {
        let text = poset_to_json(&p);
        let q = poset_from_json(&text).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(poset_to_json(&q), text);
    }

    #[test]
    fn label_ids_round_trip(l in arb_label()) {
        let s = l.to_string();
        let back: PointLabel = s.parse().unwrap();
        prop_assert_eq!(back, l);
    }

    #[test]
    fn generating_set_check_ignores_order(
        family in 0usize..4,
        picks in proptest::collection::vec(0usize..24, 1..4),
    ) {
        let g = match family {
            0 => group::cyclic(6).unwrap(),
            1 => group::dihedral(4).unwrap(),
            2 => group::symmetric(4).unwrap(),
            _ => group::quaternion8().unwrap(),
        };
        let mut s: Vec<usize> = picks.iter().map(|&i| i % g.order()).collect();
        s.sort_unstable();
        s.dedup();
        // The identity is rejected on its own grounds.
        let has_identity = s.contains(&g.identity());
        let generates = !has_identity && closure_size(g.cayley(), g.identity(), &s) == g.order();
        let forward = validate_generating_set(&g, &s);
        s.reverse();
        let backward = validate_generating_set(&g, &s);
        prop_assert_eq!(forward.is_ok(), generates);
        prop_assert_eq!(backward.is_ok(), generates);
    }

    #[test]
    fn group_isomorphism_is_reflexive_and_symmetric(a in 0usize..7, b in 0usize..7) {
        let pick = |k: usize| match k {
            0 => group::cyclic(4).unwrap(),
            1 => group::klein4().unwrap(),
            2 => group::cyclic(8).unwrap(),
            3 => group::dihedral(4).unwrap(),
            4 => group::quaternion8().unwrap(),
            5 => group::cyclic(6).unwrap(),
            _ => group::symmetric(3).unwrap(),
        };
        let (g, h) = (pick(a), pick(b));
        prop_assert!(groups_isomorphic(&g, &g, DEFAULT_ISO_LIMIT).unwrap());
        let gh = groups_isomorphic(&g, &h, DEFAULT_ISO_LIMIT).unwrap();
        let hg = groups_isomorphic(&h, &g, DEFAULT_ISO_LIMIT).unwrap();
        prop_assert_eq!(gh, hg);
        prop_assert_eq!(gh, a == b);
    }
}
