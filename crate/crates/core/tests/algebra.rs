mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use quasimix::field::FieldParams;
use quasimix::semidirect::{check_axioms, AxiomCheck, SdpElement};

use common::{g0, motion_mul};

#[test]
fn field_axioms_exhaustive_small_orders() {
    for q in [3u32, 5, 7, 9, 11, 13, 25, 27] {
        let f = FieldParams::from_order(q).unwrap();
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els.len(), q as usize);
        for &a in &els {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.mul(a, f.one()), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if a != f.zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one(), "q={q}");
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
    for q in [9u32, 25, 27, 49, 81] {
        let f = FieldParams::from_order(q).unwrap();
        let has_generator = f.elements().skip(1).any(|g| {
            let mut x = g;
            let mut order = 1;
            while x != f.one() {
                x = f.mul(x, g);
                order += 1;
            }
            order == q - 1
        });
        assert!(has_generator, "q={q}");
    }
}

#[test]
fn epsilon_and_circle_of_minus_one() {
    for q in [3u32, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27] {
        let f = FieldParams::from_order(q).unwrap();
        let expected = if q % 4 == 1 { 1 } else { -1 };
        assert_eq!(f.epsilon_q(), expected);
        assert_eq!(f.is_square(f.neg(f.one())), expected == 1);
    }
}

proptest! {
    #[test]
    fn field_laws_sampled(q in prop::sample::select(vec![3u32, 9, 27, 49, 81, 101]), a in 0usize..101, b in 0usize..101, c in 0usize..101) {
        let f = FieldParams::from_order(q).unwrap();
        let n = q as usize;
        let (a, b, c) = (f.element(a % n).unwrap(), f.element(b % n).unwrap(), f.element(c % n).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.pow(a, q as u64), a);
        prop_assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % f.p());
    }
}

#[test]
fn rigid_motion_group_axioms_exhaustive_q3() {
    let g = g0(3);
    check_axioms(g.group(), AxiomCheck::Exhaustive).unwrap();
}

#[test]
fn rigid_motion_group_axioms_sampled() {
    for q in [5, 7, 9, 11] {
        let g = g0(q);
        check_axioms(g.group(), AxiomCheck::Sampled { samples: 20_000, seed: q as u64 }).unwrap();
        g.group().check_normal_kernel().unwrap();
    }
}

#[test]
fn group_law_matches_field_arithmetic() {
    for q in [3, 5, 9] {
        let g = g0(q);
        let group = g.group();
        for a in group.elements() {
            for b in group.elements().step_by(7) {
                assert_eq!(group.mul(a, b), motion_mul(&g, a, b));
            }
            assert_eq!(group.mul(a, group.inv(a)), group.identity());
        }
    }
}

#[test]
fn orders_and_parameters() {
    for (q, eps, order) in [(3u32, -1, 36usize), (5, 1, 100), (7, -1, 392), (9, 1, 648), (11, -1, 1452)] {
        let g = g0(q);
        assert_eq!(g.epsilon(), eps);
        assert_eq!(g.order(), order);
        assert_eq!(g.big_q() + g.q_prime(), 2 * q as usize);
    }
}

#[test]
fn so2_acts_simply_transitively_on_circles() {
    for q in [3, 5, 7, 9] {
        let g = g0(q);
        let f = g.field();
        for t in f.elements().skip(1) {
            let circle = g.circle(t);
            assert_eq!(circle.len(), g.big_q());
            let start = circle[0];
            let mut hits: Vec<_> = (0..g.big_q()).map(|j| g.rotate(j, start)).collect();
            hits.sort();
            let mut sorted = circle.clone();
            sorted.sort();
            assert_eq!(hits, sorted, "q={q} t={t:?}");
        }
    }
}

#[test]
fn motions_preserve_distance() {
    let g = g0(3);
    for m in g.group().elements() {
        for x in g.points() {
            for y in g.points() {
                assert_eq!(
                    g.norm_pair(g.apply_motion(m, x), g.apply_motion(m, y)),
                    g.norm_pair(x, y)
                );
            }
        }
    }
    for q in [5, 7, 9] {
        let g = g0(q);
        let mut rng = quasimix::rng::trial_rng(q as u64, 0);
        use rand::Rng;
        for _ in 0..2000 {
            let m = g.group().element(rng.gen_range(0..g.order()));
            let x = g.point(rng.gen_range(0..g.n_points())).unwrap();
            let y = g.point(rng.gen_range(0..g.n_points())).unwrap();
            assert_eq!(
                g.norm_pair(g.apply_motion(m, x), g.apply_motion(m, y)),
                g.norm_pair(x, y)
            );
        }
    }
}

/// Classes by brute force: the orbit of each element under all conjugations.
fn oracle_class_sizes(q: u32) -> BTreeMap<usize, usize> {
    let g = g0(q);
    let group = g.group();
    let mut seen = vec![false; group.order()];
    let mut sizes = BTreeMap::new();
    for a in 0..group.order() {
        if seen[a] {
            continue;
        }
        let ae = group.element(a);
        let mut orbit: Vec<usize> = group
            .elements()
            .map(|w| group.index(motion_mul(&g, motion_mul(&g, w, ae), group.inv(w))))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &c in &orbit {
            seen[c] = true;
        }
        *sizes.entry(orbit.len()).or_insert(0) += 1;
    }
    sizes
}

#[test]
fn conjugacy_classes_match_oracle_and_closed_form() {
    for q in [3u32, 5, 7, 9] {
        let g = g0(q);
        let classes = g.group().conjugacy_classes(100_000).unwrap();
        let mut sizes = BTreeMap::new();
        for c in &classes {
            *sizes.entry(c.len()).or_insert(0) += 1;
        }
        assert_eq!(sizes, oracle_class_sizes(q), "q={q}");
        let (big_q, q_prime, qq) = (g.big_q(), g.q_prime(), (q * q) as usize);
        let expected: BTreeMap<usize, usize> = [(1, 1), (big_q, q_prime), (qq, big_q - 1)].into();
        assert_eq!(sizes, expected);
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
    }
}

#[test]
fn example_subgroups_are_subgroups() {
    for q in [3, 5, 7] {
        let g = g0(q);
        let big_q = g.big_q();
        for k in (1..=big_q).filter(|k| big_q.is_multiple_of(*k)) {
            let x = quasimix::counting::example1_subset(&g, k, big_q / k).unwrap();
            assert!(g.group().is_subgroup(&x));
        }
        let half = quasimix::counting::random_subset_seeded(g.order(), 0.5, 1).unwrap();
        assert!(!g.group().is_subgroup(&half));
    }
}

#[test]
fn identity_element_is_zero_translation_and_trivial_rotation() {
    let g = g0(5);
    assert_eq!(g.group().identity(), SdpElement::new(0, 0));
    assert_eq!(g.group().n_group().order(), 25);
    assert_eq!(g.group().h_group().order(), 4);
}
