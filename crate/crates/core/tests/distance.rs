mod common;

use quasimix::distance::*;
use quasimix::rigid_motion::Point;
use quasimix::semidirect::SdpElement;

use common::g0;

#[test]
fn segment_motion_unique_exhaustive_q5() {
    let g = g0(5);
    let pts: Vec<Point> = g.points().collect();
    let anchors = [(pts[0], pts[1]), (pts[3], pts[17]), (pts[24], pts[8])];
    for &(u0, v0) in &anchors {
        let t = g.norm_pair(u0, v0);
        if t == g.field().zero() {
            continue;
        }
        for &x in &pts {
            for &y in &pts {
                if g.norm_pair(x, y) != t {
                    continue;
                }
                // Independent scan of the whole group for motions doing the job.
                let hits: Vec<SdpElement> = g
                    .group()
                    .elements()
                    .filter(|&m| g.apply_motion(m, x) == u0 && g.apply_motion(m, y) == v0)
                    .collect();
                assert_eq!(hits.len(), 1);
                assert_eq!(segment_motion(&g, x, y, u0, v0).unwrap(), hits[0]);
            }
        }
    }
}

#[test]
fn xt_size_equals_segment_count_on_random_sets() {
    for q in [5, 7] {
        let g = g0(q);
        for trial in 0..25 {
            let mut rng = quasimix::rng::trial_rng(q as u64, trial);
            let p = PointSet::random(&g, 0.2 + 0.6 * (trial as f64 / 25.0), &mut rng).unwrap();
            let counts = segment_counts(&g, &p);
            assert_eq!(counts.iter().sum::<u64>(), (p.len() as u64).pow(2));
            for t in g.field().elements().skip(1) {
                let n_t = count_segments(&g, &p, t);
                assert_eq!(n_t, counts[t.index()]);
                match build_xt(&g, &p, t, None).unwrap() {
                    Some(xt) => assert_eq!(xt.motions.len() as u64, n_t),
                    None => assert_eq!(n_t, 0),
                }
            }
        }
    }
}

#[test]
fn changing_the_anchor_conjugates_xt() {
    let g = g0(7);
    let mut rng = quasimix::rng::trial_rng(4, 0);
    let p = PointSet::random(&g, 0.5, &mut rng).unwrap();
    let t = g.field().one();
    let first = build_xt(&g, &p, t, None).unwrap().unwrap();
    let pts: Vec<Point> = p.points(&g).collect();
    let other = pts
        .iter()
        .flat_map(|&x| pts.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| g.norm_pair(x, y) == t)
        .nth(5)
        .map(|(x, y)| Segment::new(&g, x, y))
        .unwrap();
    let second = build_xt(&g, &p, t, Some(other)).unwrap().unwrap();
    assert_eq!(first.motions.len(), second.motions.len());
    let group = g.group();
    let sq = |s: &quasimix::counting::GroupSubset| quasimix::counting::product_set(group, &[s, s]).unwrap().len();
    assert_eq!(sq(&first.motions), sq(&second.motions));
}

#[test]
fn anchor_must_have_length_t_and_lie_in_p() {
    let g = g0(5);
    let p = PointSet::from_indices(&g, [0, 1, 2]).unwrap();
    let far = g.point(24).unwrap();
    let bad = Segment::new(&g, g.point(0).unwrap(), far);
    assert!(build_xt(&g, &p, bad.length, Some(bad)).is_err());
}

#[test]
fn distance_checks_pass_on_random_and_structured_sets() {
    for q in [5, 7] {
        let g = g0(q);
        for trial in 0..10 {
            let mut rng = quasimix::rng::trial_rng(77, trial);
            let p = PointSet::random(&g, 0.6, &mut rng).unwrap();
            for t in g.field().elements().skip(1) {
                let rep = verify_distance_growth(&g, &p, t, None, u64::MAX).unwrap();
                assert!(rep.pass, "{rep:?}");
            }
        }
        // Two parallel lines x₁ ∈ {0, 1}.
        let lines = PointSet::from_indices(&g, 0..2 * g.q()).unwrap();
        for t in g.field().elements().skip(1) {
            let rep = verify_distance_growth(&g, &lines, t, None, u64::MAX).unwrap();
            assert!(rep.pass);
        }
    }
}

#[test]
fn q_to_the_1_7_points_at_q7() {
    let g = g0(7);
    // |P| ≈ 7^1.7 ≈ 27 out of 49.
    let mut rng = quasimix::rng::trial_rng(17, 0);
    let p = PointSet::random(&g, 27.0 / 49.0, &mut rng).unwrap();
    let rep = verify_distance_growth(&g, &p, g.field().one(), None, u64::MAX).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.details["n2_dot_ok"], true);
    assert_eq!(rep.details["growth_ok"], true);
}

#[test]
fn point_set_file_round_trip() {
    let g = g0(7);
    let p = PointSet::from_indices(&g, [1, 5, 9, 48]).unwrap();
    let json = serde_json::to_string(&p.to_file()).unwrap();
    let back: PointSetFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_point_set(&g).unwrap(), p);
    let wrong = PointSetFile { q: 5, points: vec![] };
    assert!(wrong.to_point_set(&g).is_err());
}
