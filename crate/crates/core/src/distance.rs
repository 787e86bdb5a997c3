//! Distances in `F_q²`: point sets, segments of a given length, and the set
//! `X_t ⊆ G₀` of rigid motions carrying length-`t` segments onto a fixed one.

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::counting::{
    count_nk_dot, count_value, growth_bound, product_profile_within, GroupSubset, VerificationReport,
};
use crate::error::{param, structural, Result};
use crate::field::FieldElement;
use crate::rigid_motion::{Point, RigidMotionGroup};
use crate::semidirect::SdpElement;

/// A subset of the plane, by point index `x₁·q + x₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    q: u32,
    bits: Vec<bool>,
    size: usize,
}

impl PointSet {
    pub fn from_indices(g0: &RigidMotionGroup, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = vec![false; g0.n_points()];
        for i in indices {
            if i >= bits.len() {
                return param(format!("point index {i} out of range for q = {}", g0.q()));
            }
            bits[i] = true;
        }
        Ok(Self::from_bits(g0, bits))
    }

    fn from_bits(g0: &RigidMotionGroup, bits: Vec<bool>) -> Self {
        let size = bits.iter().filter(|&&b| b).count();
        PointSet {
            q: g0.field().q(),
            bits,
            size,
        }
    }

    pub fn from_points(g0: &RigidMotionGroup, points: &[Point]) -> Result<Self> {
        Self::from_indices(g0, points.iter().map(|&p| g0.point_index(p)))
    }

    pub fn full_plane(g0: &RigidMotionGroup) -> Self {
        Self::from_bits(g0, vec![true; g0.n_points()])
    }

    /// Each point independently with probability `density`.
    pub fn random(g0: &RigidMotionGroup, density: f64, rng: &mut impl Rng) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return param(format!("density must lie in [0, 1], got {density}"));
        }
        let bits = (0..g0.n_points()).map(|_| rng.gen_bool(density)).collect();
        Ok(Self::from_bits(g0, bits))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bits.get(i).copied().unwrap_or(false)
    }

    pub fn contains(&self, g0: &RigidMotionGroup, x: Point) -> bool {
        self.contains_index(g0.point_index(x))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn points<'a>(&'a self, g0: &'a RigidMotionGroup) -> impl Iterator<Item = Point> + 'a {
        self.indices().map(|i| g0.point(i).expect("index in range"))
    }

    pub fn to_file(&self) -> PointSetFile {
        PointSetFile {
            q: self.q,
            points: self.indices().collect(),
        }
    }
}

/// JSON point-set file: `{q, points}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub q: u32,
    pub points: Vec<usize>,
}

impl PointSetFile {
    pub fn to_point_set(&self, g0: &RigidMotionGroup) -> Result<PointSet> {
        if self.q != g0.field().q() {
            return param(format!("point file is for q = {}, group has q = {}", self.q, g0.field().q()));
        }
        PointSet::from_indices(g0, self.points.iter().copied())
    }
}

/// An ordered pair of points with its length `‖x − y‖`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub x: Point,
    pub y: Point,
    pub length: FieldElement,
}

impl Segment {
    pub fn new(g0: &RigidMotionGroup, x: Point, y: Point) -> Self {
        Segment {
            x,
            y,
            length: g0.norm_pair(x, y),
        }
    }
}

/// `X_t` together with the anchor segment it was built from.
#[derive(Clone, Debug)]
pub struct MotionSet {
    pub motions: GroupSubset,
    pub anchor: Segment,
    pub t: FieldElement,
}

/// `n_t = #{(x, y) ∈ P × P : ‖x − y‖ = t}`.
pub fn count_segments(g0: &RigidMotionGroup, p: &PointSet, t: FieldElement) -> u64 {
    let pts: Vec<Point> = p.points(g0).collect();
    pts.iter()
        .map(|&x| pts.iter().filter(|&&y| g0.norm_pair(x, y) == t).count() as u64)
        .sum()
}

/// `n_t` for every `t ∈ F_q`, indexed by field element.
pub fn segment_counts(g0: &RigidMotionGroup, p: &PointSet) -> Vec<u64> {
    let pts: Vec<Point> = p.points(g0).collect();
    let mut counts = vec![0u64; g0.q()];
    for &x in &pts {
        for &y in &pts {
            counts[g0.norm_pair(x, y).index()] += 1;
        }
    }
    counts
}

/// The unique `(z, h) ∈ G₀` with `(z, h)x = u₀` and `(z, h)y = v₀`.
pub fn segment_motion(g0: &RigidMotionGroup, x: Point, y: Point, u0: Point, v0: Point) -> Result<SdpElement> {
    let t = g0.norm_pair(x, y);
    if t != g0.norm_pair(u0, v0) {
        return param("segments have different lengths");
    }
    if t == g0.field().zero() {
        return param("segment length must be nonzero");
    }
    let from = g0.sub_points(x, y);
    let to = g0.sub_points(u0, v0);
    let mut found = (0..g0.big_q()).filter(|&j| g0.rotate(j, from) == to);
    let j = match (found.next(), found.next()) {
        (Some(j), None) => j,
        (None, _) => return structural("no rotation carries the segment onto the anchor"),
        (Some(_), Some(_)) => return structural("more than one rotation carries the segment onto the anchor"),
    };
    let z = g0.sub_points(u0, g0.rotate(j, x));
    let g = g0.motion(z, j);
    if g0.apply_motion(g, x) != u0 || g0.apply_motion(g, y) != v0 {
        return structural("computed motion does not map the segment onto the anchor");
    }
    Ok(g)
}

/// The first length-`t` segment of `P × P` in point-index order.
pub fn default_anchor(g0: &RigidMotionGroup, p: &PointSet, t: FieldElement) -> Option<Segment> {
    p.points(g0)
        .flat_map(|x| p.points(g0).map(move |y| (x, y)))
        .find(|&(x, y)| g0.norm_pair(x, y) == t)
        .map(|(x, y)| Segment::new(g0, x, y))
}

/// `X_t`: one motion per length-`t` segment of `P`, each carrying it onto
/// the anchor. `Ok(None)` when `P` has no length-`t` segment.
pub fn build_xt(
    g0: &RigidMotionGroup,
    p: &PointSet,
    t: FieldElement,
    anchor: Option<Segment>,
) -> Result<Option<MotionSet>> {
    if t == g0.field().zero() {
        return param("t must be nonzero");
    }
    let anchor = match anchor {
        Some(a) => {
            if g0.norm_pair(a.x, a.y) != t || a.length != t {
                return param("anchor segment does not have length t");
            }
            if !p.contains(g0, a.x) || !p.contains(g0, a.y) {
                return param("anchor endpoints must lie in the point set");
            }
            a
        }
        None => match default_anchor(g0, p, t) {
            Some(a) => a,
            None => return Ok(None),
        },
    };
    let group = g0.group();
    let mut motions = Vec::new();
    for x in p.points(g0) {
        for y in p.points(g0) {
            if g0.norm_pair(x, y) == t {
                motions.push(group.index(segment_motion(g0, x, y, anchor.x, anchor.y)?));
            }
        }
    }
    let n = motions.len();
    let set = GroupSubset::from_indices(group.order(), motions)?;
    if set.len() != n {
        return structural("two segments produced the same motion");
    }
    Ok(Some(MotionSet { motions: set, anchor, t }))
}

/// `δ(α) = min{2 − α, 2α − 3}`.
pub fn delta_exponent(alpha: f64) -> f64 {
    (2.0 - alpha).min(2.0 * alpha - 3.0)
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// Checks `Ṅ₂(X_t) ≤ |X_t|³|P|` and the product-growth bound for `X_tX_t`,
/// and reports the distance-count ratio and growth exponent.
pub fn verify_distance_growth(
    g0: &RigidMotionGroup,
    p: &PointSet,
    t: FieldElement,
    anchor: Option<Segment>,
    budget: u64,
) -> Result<VerificationReport> {
    let q = g0.q();
    let n_t = count_segments(g0, p, t);
    let xt = build_xt(g0, p, t, anchor)?;
    let group = g0.group();
    let d = g0.big_q();
    let size_p = p.len();

    let (xt_size, xtxt_size, nk_dot, n2_ok, growth_ok, bound) = match &xt {
        None => (0usize, 0usize, 0u128, true, true, 0.0),
        Some(ms) => {
            let x = &ms.motions;
            if x.len() as u64 != n_t {
                return structural(format!("|X_t| = {} but n_t = {n_t}", x.len()));
            }
            let r = product_profile_within(group, &[x, x], budget)?;
            let xx = r.iter().filter(|&&c| c > 0).count();
            let nk_dot = count_nk_dot(group, &[x, x])?;
            let n2_ok = nk_dot <= (x.len() as u128).pow(3) * size_p as u128;
            let (_, _, half_min) = growth_bound(group, &[x, x], nk_dot, d);
            let growth_ok = num_rational::BigRational::from_integer(xx.into()) >= half_min;
            let bound = num_traits::ToPrimitive::to_f64(&half_min).unwrap_or(f64::NAN);
            (x.len(), xx, nk_dot, n2_ok, growth_ok, bound)
        }
    };

    let qf = q as f64;
    let pf = size_p as f64;
    let alpha = pf.ln() / qf.ln();
    let ratio_ir = n_t as f64 * qf / (pf * pf);
    let exponent = (xtxt_size as f64).ln() / (xt_size as f64).ln();
    let ir_target = (qf * pf).min(pf.powi(4) / qf.powi(4));

    let mut report = VerificationReport {
        theorem: "distance".into(),
        q: Some(g0.field().q()),
        k: 2,
        sizes: vec![xt_size, xt_size],
        seed: None,
        lhs: xtxt_size as f64,
        rhs: bound,
        slack: xtxt_size as f64 - bound,
        pass: n2_ok && growth_ok,
        details: Default::default(),
    };
    let mut put = |k: &str, v: Value| {
        report.details.insert(k.to_string(), v);
    };
    put("t", json!(t.index()));
    put("point_set_size", json!(size_p));
    put("n_t", json!(n_t));
    put("xt_size", json!(xt_size));
    put("xtxt_size", json!(xtxt_size));
    put("n2_dot", count_value(nk_dot));
    put("n2_dot_bound", count_value((xt_size as u128).pow(3) * size_p as u128));
    put("n2_dot_ok", json!(n2_ok));
    put("growth_ok", json!(growth_ok));
    put("ratio_ir", finite_or_null(ratio_ir));
    put("empirical_exponent", finite_or_null(exponent));
    put("alpha", finite_or_null(alpha));
    put("delta_alpha", finite_or_null(delta_exponent(alpha)));
    put("distance_target", finite_or_null(ir_target));
    if let Some(ms) = &xt {
        put(
            "anchor",
            json!([g0.point_index(ms.anchor.x), g0.point_index(ms.anchor.y)]),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(q: u32) -> RigidMotionGroup {
        RigidMotionGroup::from_order(q).unwrap()
    }

    #[test]
    fn full_plane_counts() {
        for q in [5, 7] {
            let g0 = g(q);
            let p = PointSet::full_plane(&g0);
            let f = g0.field();
            for t in f.elements().skip(1) {
                assert_eq!(count_segments(&g0, &p, t), (g0.n_points() * g0.big_q()) as u64);
            }
            assert_eq!(segment_counts(&g0, &p).iter().sum::<u64>(), (g0.n_points() as u64).pow(2));
        }
    }

    #[test]
    fn singleton_has_no_segments() {
        let g0 = g(5);
        let p = PointSet::from_indices(&g0, [7]).unwrap();
        assert_eq!(count_segments(&g0, &p, g0.field().one()), 0);
        assert!(build_xt(&g0, &p, g0.field().one(), None).unwrap().is_none());
    }

    #[test]
    fn identity_motion_on_anchor() {
        let g0 = g(7);
        let x = g0.point(3).unwrap();
        let y = g0.point(10).unwrap();
        let m = segment_motion(&g0, x, y, x, y).unwrap();
        assert_eq!(m, g0.group().identity());
    }

    #[test]
    fn segment_motion_errors() {
        let g0 = g(5);
        let o = g0.point(0).unwrap();
        let e1 = g0.point(5).unwrap(); // (1, 0)
        let two = g0.point(10).unwrap(); // (2, 0)
        assert!(segment_motion(&g0, o, e1, o, two).is_err());
        assert!(segment_motion(&g0, o, o, o, o).is_err());
    }

    #[test]
    fn two_point_set() {
        let g0 = g(7);
        let u = g0.point(0).unwrap();
        let v = g0.point(1).unwrap();
        let p = PointSet::from_points(&g0, &[u, v]).unwrap();
        let t = g0.norm_pair(u, v);
        let xt = build_xt(&g0, &p, t, None).unwrap().unwrap();
        assert_eq!(xt.motions.len(), 2);
    }

    #[test]
    fn full_plane_gives_whole_group() {
        let g0 = g(7);
        let p = PointSet::full_plane(&g0);
        let xt = build_xt(&g0, &p, g0.field().one(), None).unwrap().unwrap();
        assert_eq!(xt.motions.len(), 392);
        let rep = verify_distance_growth(&g0, &p, g0.field().one(), None, u64::MAX).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.details["xtxt_size"], json!(392));
    }

    #[test]
    fn zero_length_rejected() {
        let g0 = g(5);
        let p = PointSet::full_plane(&g0);
        assert!(build_xt(&g0, &p, g0.field().zero(), None).is_err());
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_exponent(1.75), 0.25);
        assert!((delta_exponent(1.6) - 0.2).abs() < 1e-12);
    }
}
