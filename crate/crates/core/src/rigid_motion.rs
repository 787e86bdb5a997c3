//! The rigid-motion group `G₀ = F_q² ⋊ SO₂(F_q)`.
//!
//! Rotations are stored in generator-power order `γ⁰, γ¹, …, γ^{Q−1}`, so the
//! `H`-component of an [`SdpElement`] of `G₀` is the exponent `j` of `γ`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{param, structural, Error, Result};
use crate::field::{FieldElement, FieldParams};
use crate::semidirect::{FiniteGroup, GroupAction, GroupTable, SdpElement, SdpGroup};

/// Default ceiling on `|G₀|`; admits every `q ≤ 29`.
pub const DEFAULT_GROUP_CEILING: usize = 25_000;

/// A point of the plane `F_q²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x1: FieldElement,
    pub x2: FieldElement,
}

impl Point {
    pub fn new(x1: FieldElement, x2: FieldElement) -> Self {
        Point { x1, x2 }
    }
}

/// The rotation `[[a, −b], [b, a]]` with `a² + b² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rotation {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl Rotation {
    pub fn identity(f: &FieldParams) -> Self {
        Rotation { a: f.one(), b: f.zero() }
    }

    pub fn compose(self, other: Rotation, f: &FieldParams) -> Rotation {
        // [[a,-b],[b,a]] [[c,-d],[d,c]] = [[ac-bd, -(ad+bc)], [ad+bc, ac-bd]]
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        Rotation {
            a: f.sub(f.mul(a, c), f.mul(b, d)),
            b: f.add(f.mul(a, d), f.mul(b, c)),
        }
    }

    pub fn transpose(self, f: &FieldParams) -> Rotation {
        Rotation { a: self.a, b: f.neg(self.b) }
    }

    pub fn apply(self, x: Point, f: &FieldParams) -> Point {
        Point {
            x1: f.sub(f.mul(self.a, x.x1), f.mul(self.b, x.x2)),
            x2: f.add(f.mul(self.b, x.x1), f.mul(self.a, x.x2)),
        }
    }

    pub fn is_valid(self, f: &FieldParams) -> bool {
        f.add(f.square(self.a), f.square(self.b)) == f.one()
    }

    /// `det(1 − h) = 2(1 − a)`.
    pub fn det_one_minus(self, f: &FieldParams) -> FieldElement {
        f.mul(f.from_int(2), f.sub(f.one(), self.a))
    }

    /// Multiplicative order.
    pub fn order(self, f: &FieldParams) -> usize {
        let id = Rotation::identity(f);
        let mut acc = self;
        let mut k = 1;
        while acc != id {
            acc = acc.compose(self, f);
            k += 1;
        }
        k
    }
}

/// All rotations `(a, b)` with `a² + b² = 1`, sorted by `(idx a, idx b)`.
pub fn so2_enumerate(f: &FieldParams) -> Vec<Rotation> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            let r = Rotation { a, b };
            if r.is_valid(f) {
                out.push(r);
            }
        }
    }
    out
}

/// The first rotation in canonical order whose order equals `|elements|`.
pub fn find_generator(elements: &[Rotation], f: &FieldParams) -> Result<Rotation> {
    elements
        .iter()
        .copied()
        .find(|r| r.order(f) == elements.len())
        .ok_or_else(|| Error::Structural(format!("SO2(F_{}) has no generator", f.q())))
}

/// The cyclic group `SO₂(F_q)` listed as powers of a fixed generator.
#[derive(Clone, Debug)]
pub struct RotationGroup {
    generator: Rotation,
    powers: Vec<Rotation>,
    exponent: Vec<u32>,
    q: usize,
}

impl RotationGroup {
    pub fn new(f: &FieldParams) -> Result<Self> {
        let elements = so2_enumerate(f);
        let expected = (f.q() as i64 - f.epsilon_q() as i64) as usize;
        if elements.len() != expected {
            return structural(format!(
                "|SO2(F_{})| = {} but q - eps_q = {expected}",
                f.q(),
                elements.len()
            ));
        }
        let generator = find_generator(&elements, f)?;
        let q = f.order();
        let mut powers = Vec::with_capacity(elements.len());
        let mut exponent = vec![u32::MAX; q * q];
        let mut acc = Rotation::identity(f);
        for j in 0..elements.len() {
            exponent[acc.a.index() * q + acc.b.index()] = j as u32;
            powers.push(acc);
            acc = acc.compose(generator, f);
        }
        Ok(RotationGroup {
            generator,
            powers,
            exponent,
            q,
        })
    }

    pub fn generator(&self) -> Rotation {
        self.generator
    }

    /// `Q = q − ε_q`.
    pub fn order(&self) -> usize {
        self.powers.len()
    }

    /// `γ^j`, exponent taken mod `Q`.
    pub fn power(&self, j: usize) -> Rotation {
        self.powers[j % self.powers.len()]
    }

    pub fn powers(&self) -> &[Rotation] {
        &self.powers
    }

    /// The exponent `j` with `γ^j = r`, if `r` is a rotation.
    pub fn exponent_of(&self, r: Rotation) -> Option<usize> {
        match self.exponent[r.a.index() * self.q + r.b.index()] {
            u32::MAX => None,
            j => Some(j as usize),
        }
    }
}

/// `(F_q², +)` as a finite group on point indices.
#[derive(Clone)]
pub struct PlaneGroup {
    field: Arc<FieldParams>,
}

impl fmt::Debug for PlaneGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneGroup(F_{}^2)", self.field.q())
    }
}

impl PlaneGroup {
    fn split(&self, z: usize) -> (FieldElement, FieldElement) {
        let q = self.field.order();
        (
            self.field.element(z / q).expect("point index"),
            self.field.element(z % q).expect("point index"),
        )
    }

    fn join(&self, a: FieldElement, b: FieldElement) -> usize {
        a.index() * self.field.order() + b.index()
    }
}

impl FiniteGroup for PlaneGroup {
    fn order(&self) -> usize {
        self.field.order() * self.field.order()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let f = &self.field;
        let ((a1, a2), (b1, b2)) = (self.split(a), self.split(b));
        self.join(f.add(a1, b1), f.add(a2, b2))
    }

    fn inv(&self, a: usize) -> usize {
        let (a1, a2) = self.split(a);
        self.join(self.field.neg(a1), self.field.neg(a2))
    }

    fn label(&self, a: usize) -> String {
        let (a1, a2) = self.split(a);
        format!("({a1},{a2})")
    }
}

/// `G₀ = F_q² ⋊ SO₂(F_q)` together with its field and rotation data.
#[derive(Clone, Debug)]
pub struct RigidMotionGroup {
    field: Arc<FieldParams>,
    rotations: RotationGroup,
    group: SdpGroup,
}

impl RigidMotionGroup {
    /// Builds `G₀` with the default order ceiling.
    pub fn new(field: FieldParams) -> Result<Self> {
        Self::with_ceiling(field, DEFAULT_GROUP_CEILING)
    }

    pub fn with_ceiling(field: FieldParams, ceiling: usize) -> Result<Self> {
        let q = field.order();
        let big_q = (field.q() as i64 - field.epsilon_q() as i64) as usize;
        if q * q * big_q > ceiling {
            return Err(Error::Resource(format!(
                "|G0| = {} for q = {} exceeds the ceiling {ceiling}",
                q * q * big_q,
                field.q()
            )));
        }
        let field = Arc::new(field);
        let rotations = RotationGroup::new(&field)?;
        let plane = PlaneGroup {
            field: Arc::clone(&field),
        };
        let h = GroupTable::cyclic(rotations.order())?
            .with_labels((0..rotations.order()).map(|j| format!("g^{j}")).collect())?;
        let action = {
            let f = &field;
            let rot = &rotations;
            GroupAction::from_fn(&h, &plane, |j, z| {
                let (a, b) = plane.split(z);
                let w = rot.power(j).apply(Point::new(a, b), f);
                plane.join(w.x1, w.x2)
            })?
        };
        let group = SdpGroup::new(Arc::new(plane), Arc::new(h), action);
        Ok(RigidMotionGroup {
            field,
            rotations,
            group,
        })
    }

    /// Builds `G₀` over the field of order `q`.
    pub fn from_order(q: u32) -> Result<Self> {
        Self::new(FieldParams::from_order(q)?)
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn rotations(&self) -> &RotationGroup {
        &self.rotations
    }

    pub fn group(&self) -> &SdpGroup {
        &self.group
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn epsilon(&self) -> i32 {
        self.field.epsilon_q()
    }

    /// `Q = q − ε_q = |H₀|`.
    pub fn big_q(&self) -> usize {
        self.rotations.order()
    }

    /// `Q′ = q + ε_q`.
    pub fn q_prime(&self) -> usize {
        (self.q() as i64 + self.epsilon() as i64) as usize
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn n_points(&self) -> usize {
        self.q() * self.q()
    }

    pub fn point(&self, idx: usize) -> Result<Point> {
        let q = self.q();
        if idx >= q * q {
            return param(format!("point index {idx} out of range"));
        }
        Ok(Point::new(
            self.field.element(idx / q)?,
            self.field.element(idx % q)?,
        ))
    }

    pub fn point_index(&self, x: Point) -> usize {
        x.x1.index() * self.q() + x.x2.index()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.n_points()).map(|i| self.point(i).expect("in range"))
    }

    /// The motion `(z, γ^j)`.
    pub fn motion(&self, z: Point, j: usize) -> SdpElement {
        SdpElement::new(self.point_index(z), j % self.big_q())
    }

    pub fn rotate(&self, j: usize, x: Point) -> Point {
        self.rotations.power(j).apply(x, &self.field)
    }

    pub fn add_points(&self, x: Point, y: Point) -> Point {
        let f = &self.field;
        Point::new(f.add(x.x1, y.x1), f.add(x.x2, y.x2))
    }

    pub fn sub_points(&self, x: Point, y: Point) -> Point {
        let f = &self.field;
        Point::new(f.sub(x.x1, y.x1), f.sub(x.x2, y.x2))
    }

    /// `(z, h)x = z + hx`.
    pub fn apply_motion(&self, g: SdpElement, x: Point) -> Point {
        let z = self.point(g.ddot).expect("motion translation in range");
        self.add_points(z, self.rotate(g.dot, x))
    }

    /// `‖x‖ = x₁² + x₂²`.
    pub fn norm(&self, x: Point) -> FieldElement {
        let f = &self.field;
        f.add(f.square(x.x1), f.square(x.x2))
    }

    /// `‖x − y‖`.
    pub fn norm_pair(&self, x: Point, y: Point) -> FieldElement {
        self.norm(self.sub_points(x, y))
    }

    /// `{w : ‖w‖ = t}`, in index order.
    pub fn circle(&self, t: FieldElement) -> Vec<Point> {
        self.points().filter(|&w| self.norm(w) == t).collect()
    }
}
