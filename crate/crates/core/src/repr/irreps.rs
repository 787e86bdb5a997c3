//! The irreducible representations of `G₀`.
//!
//! Type I representations are the `Q` characters of the cyclic quotient
//! `H₀`, lifted to `G₀`. Type II representations are induced from the
//! additive characters `ψ_a(z) = e^{2πi Tr(a·z)/p}` of the translation
//! subgroup, one for each `H₀`-orbit of nonzero labels `a`, using the coset
//! transversal `{(0, γ^m)}`. Both kinds evaluate to monomial matrices, which
//! is what [`Monomial`] stores.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{param, structural, Result};
use crate::rigid_motion::{Point, RigidMotionGroup};
use crate::semidirect::SdpElement;

/// Which family a representation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepType {
    /// Trivial on the translations; factors through `H`.
    I,
    /// Nontrivial on some translation.
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum IrrepLabel {
    /// `ρ_r(z, γ^j) = e^{2πi rj/Q}`.
    TypeI { r: usize },
    /// Induced from `ψ_a`, `a` the minimal point index of its dual orbit.
    TypeII { orbit_rep: usize },
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::TypeI { r } => write!(f, "I[{r}]"),
            IrrepLabel::TypeII { orbit_rep } => write!(f, "II[{orbit_rep}]"),
        }
    }
}

/// A matrix with exactly one nonzero entry per column: `(rows[j], j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub rows: Vec<usize>,
    pub values: Vec<Complex64>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = self.degree();
        let mut m = ComplexMatrix::zeros(d, d);
        for (j, (&i, &v)) in self.rows.iter().zip(&self.values).enumerate() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.rows
            .iter()
            .zip(&self.values)
            .enumerate()
            .filter(|(j, (&i, _))| i == *j)
            .map(|(_, (_, &v))| v)
            .sum()
    }
}

#[derive(Clone, Debug)]
enum Model {
    Lifted {
        roots: Arc<Vec<Complex64>>,
        r: usize,
    },
    Induced {
        n_order: usize,
        /// `psi[m·|N| + z] = ψ_a(γ^{−m} z)`.
        psi: Vec<Complex64>,
    },
}

/// An irreducible unitary representation of `G₀`.
#[derive(Clone, Debug)]
pub struct Irrep {
    label: IrrepLabel,
    degree: usize,
    model: Model,
}

impl Irrep {
    pub fn label(&self) -> IrrepLabel {
        self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomial(&self, g: SdpElement) -> Monomial {
        match &self.model {
            Model::Lifted { roots, r } => Monomial {
                rows: vec![0],
                values: vec![roots[(r * g.dot) % roots.len()]],
            },
            Model::Induced { n_order, psi } => {
                let q = self.degree;
                let mut rows = Vec::with_capacity(q);
                let mut values = Vec::with_capacity(q);
                for n in 0..q {
                    let m = (g.dot + n) % q;
                    rows.push(m);
                    values.push(psi[m * n_order + g.ddot]);
                }
                Monomial { rows, values }
            }
        }
    }

    pub fn matrix_of(&self, g: SdpElement) -> ComplexMatrix {
        self.monomial(g).to_matrix()
    }

    pub fn character(&self, g: SdpElement) -> Complex64 {
        match &self.model {
            Model::Lifted { roots, r } => roots[(r * g.dot) % roots.len()],
            // only the diagonal survives, and it is nonzero iff g is a translation
            Model::Induced { n_order, psi } => {
                if g.dot != 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    (0..self.degree).map(|m| psi[m * n_order + g.ddot]).sum()
                }
            }
        }
    }
}

fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// `ψ_a(z) = exp(2πi Tr(a₁z₁ + a₂z₂)/p)`.
pub fn additive_character(g0: &RigidMotionGroup, a: Point, z: Point) -> Complex64 {
    let f = g0.field();
    let dot = f.add(f.mul(a.x1, z.x1), f.mul(a.x2, z.x2));
    let p = f.p() as f64;
    Complex64::from_polar(1.0, 2.0 * PI * f.trace(dot) as f64 / p)
}

/// The `Q` degree-one representations lifted from `H₀`, in order of `r`.
pub fn type1_irreps(g0: &RigidMotionGroup) -> Vec<Irrep> {
    let q = g0.big_q();
    let roots = Arc::new(unit_roots(q));
    (0..q)
        .map(|r| Irrep {
            label: IrrepLabel::TypeI { r },
            degree: 1,
            model: Model::Lifted {
                roots: Arc::clone(&roots),
                r,
            },
        })
        .collect()
}

/// Orbits of `H₀` acting on nonzero labels by `a ↦ hᵀa`, each sorted by
/// point index, listed by their minimal element.
pub fn dual_orbit_partition(g0: &RigidMotionGroup) -> Vec<Vec<usize>> {
    let f = g0.field();
    let mut seen = vec![false; g0.n_points()];
    seen[0] = true;
    let mut orbits = Vec::new();
    for a in 1..g0.n_points() {
        if seen[a] {
            continue;
        }
        let pa = g0.point(a).expect("in range");
        let mut orbit: Vec<usize> = g0
            .rotations()
            .powers()
            .iter()
            .map(|h| g0.point_index(h.transpose(f).apply(pa, f)))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &b in &orbit {
            seen[b] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

/// Minimal representatives of the dual orbits.
pub fn dual_orbits(g0: &RigidMotionGroup) -> Vec<usize> {
    dual_orbit_partition(g0).into_iter().map(|o| o[0]).collect()
}

/// The representation induced from `ψ_a`, `a` given as a point index.
pub fn type2_irrep(g0: &RigidMotionGroup, a: usize) -> Result<Irrep> {
    if a == 0 {
        return param("the zero label gives a type I character, not a type II irrep");
    }
    let pa = g0.point(a)?;
    let q = g0.big_q();
    let n = g0.n_points();
    let mut psi = Vec::with_capacity(q * n);
    for m in 0..q {
        let inv_power = (q - m) % q;
        for z in g0.points() {
            psi.push(additive_character(g0, pa, g0.rotate(inv_power, z)));
        }
    }
    Ok(Irrep {
        label: IrrepLabel::TypeII { orbit_rep: a },
        degree: q,
        model: Model::Induced { n_order: n, psi },
    })
}

/// The full census: `Q` type I irreps followed by `Q′` type II irreps.
pub fn all_irreps(g0: &RigidMotionGroup) -> Result<Vec<Irrep>> {
    let mut irreps = type1_irreps(g0);
    let reps = dual_orbits(g0);
    for a in &reps {
        irreps.push(type2_irrep(g0, *a)?);
    }
    let (q, q_prime) = (g0.big_q(), g0.q_prime());
    if reps.len() != q_prime {
        return structural(format!("found {} type II irreps, expected {q_prime}", reps.len()));
    }
    let sum_sq: usize = irreps.iter().map(|r| r.degree * r.degree).sum();
    if sum_sq != g0.order() || irreps.len() != q + q_prime {
        return structural(format!(
            "census mismatch: sum of squared degrees {sum_sq} vs |G0| = {}",
            g0.order()
        ));
    }
    Ok(irreps)
}

/// Classifies `ρ` by testing it on an additive generating set of the
/// translations: `(x^i e₁, 1)` and `(x^i e₂, 1)` for `i < n`.
pub fn classify_type(rho: &Irrep, g0: &RigidMotionGroup) -> RepType {
    let f = g0.field();
    let n = f.n() as usize;
    let id = ComplexMatrix::identity(rho.degree());
    let mut generators = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = 1;
        let basis = f.from_coeffs(&c).expect("basis coefficient vector");
        generators.push(Point::new(basis, f.zero()));
        generators.push(Point::new(f.zero(), basis));
    }
    let trivial = generators
        .into_iter()
        .all(|z| rho.matrix_of(g0.motion(z, 0)).max_abs_diff(&id) < 1e-9);
    if trivial {
        RepType::I
    } else {
        RepType::II
    }
}

/// The smallest type II degree, or `None` when there are no type II
/// irreps (the normal subgroup acts trivially in every irrep).
pub fn quasirandom_degree(irreps: &[Irrep]) -> Option<usize> {
    irreps
        .iter()
        .filter(|r| matches!(r.label, IrrepLabel::TypeII { .. }))
        .map(Irrep::degree)
        .min()
}

/// Character values on conjugacy class representatives.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group_order: usize,
    pub irreps: Vec<IrrepLabel>,
    pub degrees: Vec<usize>,
    /// Canonical index of the smallest member of each class.
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// `entries[i][c] = [re, im]` of `χ_i` on class `c`.
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl CharacterTable {
    pub fn build(g0: &RigidMotionGroup, irreps: &[Irrep], classes: &[Vec<usize>]) -> Self {
        let group = g0.group();
        let class_reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let entries = irreps
            .iter()
            .map(|rho| {
                class_reps
                    .iter()
                    .map(|&g| {
                        let chi = rho.character(group.element(g));
                        [chi.re, chi.im]
                    })
                    .collect()
            })
            .collect();
        CharacterTable {
            group_order: group.order(),
            irreps: irreps.iter().map(Irrep::label).collect(),
            degrees: irreps.iter().map(Irrep::degree).collect(),
            class_reps,
            class_sizes: classes.iter().map(Vec::len).collect(),
            entries,
        }
    }

    /// `⟨χ_i, χ_j⟩ = E_x χ_i(x) conj(χ_j(x))`.
    pub fn inner(&self, i: usize, j: usize) -> Complex64 {
        let sum: Complex64 = self
            .class_sizes
            .iter()
            .zip(self.entries[i].iter().zip(&self.entries[j]))
            .map(|(&size, (a, b))| {
                Complex64::new(a[0], a[1]) * Complex64::new(b[0], -b[1]) * size as f64
            })
            .sum();
        sum / self.group_order as f64
    }

    /// `max_{i,j} |⟨χ_i, χ_j⟩ − δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.irreps.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.inner(i, j) - target).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type1_value_at_generator() {
        let g0 = RigidMotionGroup::from_order(5).unwrap();
        let reps = type1_irreps(&g0);
        let v = reps[1].character(SdpElement::new(0, 1));
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        for g in g0.group().elements() {
            assert!((reps[0].character(g) - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn type2_at_identity_is_identity_matrix() {
        let g0 = RigidMotionGroup::from_order(5).unwrap();
        for a in dual_orbits(&g0) {
            let rho = type2_irrep(&g0, a).unwrap();
            let m = rho.matrix_of(g0.group().identity());
            assert!(m.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
            assert!((rho.character(g0.group().identity()) - 4.0).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_label_rejected() {
        let g0 = RigidMotionGroup::from_order(3).unwrap();
        assert!(type2_irrep(&g0, 0).is_err());
    }

    #[test]
    fn monomial_trace_matches_dense() {
        let g0 = RigidMotionGroup::from_order(7).unwrap();
        let rho = type2_irrep(&g0, dual_orbits(&g0)[2]).unwrap();
        for g in g0.group().elements().step_by(7) {
            let m = rho.monomial(g);
            assert!((m.trace() - m.to_matrix().trace()).norm() < 1e-12);
            assert!((rho.character(g) - m.trace()).norm() < 1e-12);
        }
    }

    #[test]
    fn census_counts() {
        for (q, n1, n2, d) in [(3, 4, 2, 4), (5, 4, 6, 4), (7, 8, 6, 8)] {
            let g0 = RigidMotionGroup::from_order(q).unwrap();
            let irreps = all_irreps(&g0).unwrap();
            assert_eq!(irreps.iter().filter(|r| r.degree() == 1).count(), n1);
            assert_eq!(irreps.iter().filter(|r| r.degree() == d).count(), n2);
            assert_eq!(quasirandom_degree(&irreps), Some(d));
        }
    }

    #[test]
    fn classification() {
        let g0 = RigidMotionGroup::from_order(9).unwrap();
        for rho in all_irreps(&g0).unwrap() {
            let expected = match rho.label() {
                IrrepLabel::TypeI { .. } => RepType::I,
                IrrepLabel::TypeII { .. } => RepType::II,
            };
            assert_eq!(classify_type(&rho, &g0), expected);
        }
    }

    #[test]
    fn empty_type_ii_gives_none() {
        let g0 = RigidMotionGroup::from_order(3).unwrap();
        assert_eq!(quasirandom_degree(&type1_irreps(&g0)), None);
    }
}
