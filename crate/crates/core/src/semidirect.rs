//! Finite semidirect products `G = N ⋊_φ H`.
//!
//! Elements are pairs `(z, h)` with `z ∈ N`, `h ∈ H`, multiplied by
//! `(z₁, h₁)(z₂, h₂) = (z₁ φ_{h₁}(z₂), h₁h₂)`. The canonical index of
//! `(z, h)` is `h·|N| + z`, so the normal copy of `N` occupies indices
//! `0..|N|` and each fiber over `h` is a contiguous block.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::counting::GroupSubset;
use crate::error::{param, structural, Error, Result};

/// A finite group on the index set `0..order()`.
pub trait FiniteGroup: Send + Sync + fmt::Debug {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn label(&self, a: usize) -> String {
        a.to_string()
    }
}

/// A group given by its full Cayley table.
#[derive(Clone, Debug)]
pub struct GroupTable {
    size: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    id: usize,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Tabulates `op` on `0..size`, locating the identity and inverses.
    ///
    /// Fails if `op` has no two-sided identity or some element lacks an
    /// inverse. Associativity is not checked here; see [`check_axioms`].
    pub fn from_fn(size: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if size == 0 {
            return param("a group needs at least one element");
        }
        let mut mul = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                let c = op(a, b);
                if c >= size {
                    return structural(format!("operation left the index range: {a}*{b} = {c}"));
                }
                mul.push(c as u32);
            }
        }
        let at = |a: usize, b: usize| mul[a * size + b] as usize;
        let id = (0..size)
            .find(|&e| (0..size).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::Structural("no identity element".into()))?;
        let mut inv = Vec::with_capacity(size);
        for a in 0..size {
            let b = (0..size)
                .find(|&b| at(a, b) == id && at(b, a) == id)
                .ok_or_else(|| Error::Structural(format!("element {a} has no inverse")))?;
            inv.push(b as u32);
        }
        Ok(GroupTable {
            size,
            mul,
            inv,
            id,
            labels: None,
        })
    }

    /// The cyclic group `Z/n`, written multiplicatively with generator `1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return param("label count must match group order");
        }
        self.labels = Some(labels);
        Ok(self)
    }
}

impl FiniteGroup for GroupTable {
    fn order(&self) -> usize {
        self.size
    }

    fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }
}

/// How thoroughly to test associativity.
#[derive(Clone, Copy, Debug)]
pub enum AxiomCheck {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

/// Checks identity, inverse and associativity laws.
pub fn check_axioms(g: &dyn FiniteGroup, mode: AxiomCheck) -> Result<()> {
    let n = g.order();
    let e = g.identity();
    for a in 0..n {
        if g.mul(e, a) != a || g.mul(a, e) != a {
            return structural(format!("identity law fails at {a}"));
        }
        let b = g.inv(a);
        if g.mul(a, b) != e || g.mul(b, a) != e {
            return structural(format!("inverse law fails at {a}"));
        }
    }
    let assoc = |a: usize, b: usize, c: usize| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
    match mode {
        AxiomCheck::Exhaustive => {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return structural(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        }
        AxiomCheck::Sampled { samples, seed } => {
            let mut rng = crate::rng::trial_rng(seed, 0);
            for _ in 0..samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return structural(format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}

/// A homomorphism `φ: H → Aut(N)`, tabulated as `φ_h(z)` for all `h`, `z`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    n_order: usize,
    table: Vec<u32>,
}

impl GroupAction {
    /// Tabulates `act(h, z) = φ_h(z)` and checks that every `φ_h` is an
    /// automorphism and that `h ↦ φ_h` is a homomorphism.
    pub fn from_fn(
        base: &dyn FiniteGroup,
        target: &dyn FiniteGroup,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let (nh, nn) = (base.order(), target.order());
        let mut table = Vec::with_capacity(nh * nn);
        for h in 0..nh {
            let mut seen = vec![false; nn];
            for z in 0..nn {
                let w = act(h, z);
                if w >= nn || seen[w] {
                    return structural(format!("phi_{h} is not a bijection of N"));
                }
                seen[w] = true;
                table.push(w as u32);
            }
        }
        let action = GroupAction { n_order: nn, table };
        for h in 0..nh {
            for a in 0..nn {
                for b in 0..nn {
                    if action.apply(h, target.mul(a, b))
                        != target.mul(action.apply(h, a), action.apply(h, b))
                    {
                        return structural(format!("phi_{h} is not a homomorphism of N"));
                    }
                }
            }
        }
        for h1 in 0..nh {
            for h2 in 0..nh {
                let h12 = base.mul(h1, h2);
                for z in 0..nn {
                    if action.apply(h12, z) != action.apply(h1, action.apply(h2, z)) {
                        return structural(format!("phi is not a homomorphism at ({h1},{h2})"));
                    }
                }
            }
        }
        Ok(action)
    }

    /// The trivial action.
    pub fn trivial(base: &dyn FiniteGroup, target: &dyn FiniteGroup) -> Result<Self> {
        Self::from_fn(base, target, |_, z| z)
    }

    #[inline]
    pub fn apply(&self, h: usize, z: usize) -> usize {
        self.table[h * self.n_order + z] as usize
    }
}

/// An element `(g̈, ġ)` of a semidirect product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SdpElement {
    /// The `N`-component.
    pub ddot: usize,
    /// The `H`-component.
    pub dot: usize,
}

impl SdpElement {
    pub fn new(ddot: usize, dot: usize) -> Self {
        SdpElement { ddot, dot }
    }
}

/// The semidirect product `N ⋊_φ H`.
#[derive(Clone, Debug)]
pub struct SdpGroup {
    n_group: Arc<dyn FiniteGroup>,
    h_group: Arc<dyn FiniteGroup>,
    action: GroupAction,
    inverses: Vec<u32>,
}

impl SdpGroup {
    pub fn new(
        n_group: Arc<dyn FiniteGroup>,
        h_group: Arc<dyn FiniteGroup>,
        action: GroupAction,
    ) -> Self {
        let mut g = SdpGroup {
            n_group,
            h_group,
            action,
            inverses: Vec::new(),
        };
        g.inverses = (0..g.order())
            .map(|i| g.index(g.inv(g.element(i))) as u32)
            .collect();
        g
    }

    pub fn n_group(&self) -> &dyn FiniteGroup {
        self.n_group.as_ref()
    }

    pub fn h_group(&self) -> &dyn FiniteGroup {
        self.h_group.as_ref()
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn n_order(&self) -> usize {
        self.n_group.order()
    }

    pub fn h_order(&self) -> usize {
        self.h_group.order()
    }

    pub fn order(&self) -> usize {
        self.n_order() * self.h_order()
    }

    pub fn identity(&self) -> SdpElement {
        SdpElement::new(self.n_group.identity(), self.h_group.identity())
    }

    pub fn identity_index(&self) -> usize {
        self.index(self.identity())
    }

    #[inline]
    pub fn index(&self, g: SdpElement) -> usize {
        g.dot * self.n_order() + g.ddot
    }

    #[inline]
    pub fn element(&self, idx: usize) -> SdpElement {
        let n = self.n_order();
        SdpElement::new(idx % n, idx / n)
    }

    pub fn elements(&self) -> impl Iterator<Item = SdpElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    #[inline]
    pub fn mul(&self, g1: SdpElement, g2: SdpElement) -> SdpElement {
        SdpElement::new(
            self.n_group
                .mul(g1.ddot, self.action.apply(g1.dot, g2.ddot)),
            self.h_group.mul(g1.dot, g2.dot),
        )
    }

    /// `(z, h)⁻¹ = (φ_{h⁻¹}(z⁻¹), h⁻¹)`.
    #[inline]
    pub fn inv(&self, g: SdpElement) -> SdpElement {
        let h_inv = self.h_group.inv(g.dot);
        SdpElement::new(self.action.apply(h_inv, self.n_group.inv(g.ddot)), h_inv)
    }

    #[inline]
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index(self.mul(self.element(a), self.element(b)))
    }

    #[inline]
    pub fn inv_index(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn dot_proj(&self, g: SdpElement) -> usize {
        g.dot
    }

    pub fn ddot_proj(&self, g: SdpElement) -> usize {
        g.ddot
    }

    /// The element `(z, 1_H)` of the normal copy of `N`.
    pub fn embed_n(&self, z: usize) -> SdpElement {
        SdpElement::new(z, self.h_group.identity())
    }

    pub fn conjugate(&self, by: SdpElement, g: SdpElement) -> SdpElement {
        self.mul(self.mul(by, g), self.inv(by))
    }

    /// Partitions the group into conjugacy classes by orbit closure.
    ///
    /// Classes are listed in order of their smallest member; each class is
    /// sorted. Fails with a resource error above `ceiling` elements.
    pub fn conjugacy_classes(&self, ceiling: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.order();
        if n > ceiling {
            return Err(Error::Resource(format!(
                "group of order {n} exceeds the enumeration ceiling {ceiling}"
            )));
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let ge = self.element(g);
            let mut members = Vec::new();
            for w in self.elements() {
                let c = self.index(self.conjugate(w, ge));
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    members.push(c);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(classes)
    }

    /// True iff `x` is non-empty and closed under multiplication and inverses.
    pub fn is_subgroup(&self, x: &GroupSubset) -> bool {
        if x.group_order() != self.order() || x.is_empty() {
            return false;
        }
        x.iter().all(|a| x.contains(self.inv_index(a)))
            && x.iter()
                .all(|a| x.iter().all(|b| x.contains(self.mul_index(a, b))))
    }

    /// Checks that `Ñ = {(z, 1_H)}` is closed under conjugation.
    pub fn check_normal_kernel(&self) -> Result<()> {
        let e_h = self.h_group.identity();
        for g in self.elements() {
            for z in 0..self.n_order() {
                if self.conjugate(g, self.embed_n(z)).dot != e_h {
                    return structural("the copy of N is not normal");
                }
            }
        }
        Ok(())
    }
}

/// A semidirect product viewed as a [`FiniteGroup`] on canonical indices.
impl FiniteGroup for SdpGroup {
    fn order(&self) -> usize {
        SdpGroup::order(self)
    }

    fn identity(&self) -> usize {
        self.identity_index()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_index(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.inv_index(a)
    }

    fn label(&self, a: usize) -> String {
        let g = self.element(a);
        format!("({}, {})", self.n_group.label(g.ddot), self.h_group.label(g.dot))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(n: usize) -> SdpGroup {
        // Z/n ⋊ Z/2 with the inversion action
        let nz: Arc<dyn FiniteGroup> = Arc::new(GroupTable::cyclic(n).unwrap());
        let h: Arc<dyn FiniteGroup> = Arc::new(GroupTable::cyclic(2).unwrap());
        let action =
            GroupAction::from_fn(h.as_ref(), nz.as_ref(), |s, z| if s == 0 { z } else { (n - z) % n })
                .unwrap();
        SdpGroup::new(nz, h, action)
    }

    #[test]
    fn dihedral_axioms_and_classes() {
        let d5 = dihedral(5);
        assert_eq!(d5.order(), 10);
        check_axioms(&d5, AxiomCheck::Exhaustive).unwrap();
        d5.check_normal_kernel().unwrap();
        let classes = d5.conjugacy_classes(1000).unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 5]);
    }

    #[test]
    fn abelian_h_alone_has_singleton_classes() {
        let trivial: Arc<dyn FiniteGroup> = Arc::new(GroupTable::trivial());
        let h: Arc<dyn FiniteGroup> = Arc::new(GroupTable::cyclic(6).unwrap());
        let action = GroupAction::trivial(h.as_ref(), trivial.as_ref()).unwrap();
        let g = SdpGroup::new(trivial, h, action);
        let classes = g.conjugacy_classes(100).unwrap();
        assert_eq!(classes.len(), 6);
        assert!(classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn ceiling_is_enforced() {
        let d = dihedral(7);
        assert!(matches!(d.conjugacy_classes(10), Err(Error::Resource(_))));
    }

    #[test]
    fn rejects_non_automorphism() {
        let nz = GroupTable::cyclic(4).unwrap();
        let h = GroupTable::cyclic(2).unwrap();
        // doubling is not injective on Z/4
        let bad = GroupAction::from_fn(&h, &nz, |s, z| if s == 0 { z } else { (2 * z) % 4 });
        assert!(bad.is_err());
    }

    #[test]
    fn inverse_formula() {
        let d = dihedral(6);
        for g in d.elements() {
            assert_eq!(d.mul(g, d.inv(g)), d.identity());
            assert_eq!(d.mul(d.inv(g), g), d.identity());
        }
        let z = d.embed_n(2);
        assert_eq!(d.inv(z), d.embed_n(4));
    }

    #[test]
    fn subgroups() {
        let d = dihedral(4);
        let id = GroupSubset::from_indices(d.order(), [d.identity_index()]).unwrap();
        assert!(d.is_subgroup(&id));
        let one = GroupSubset::from_indices(d.order(), [1]).unwrap();
        assert!(!d.is_subgroup(&one));
        let kernel = GroupSubset::from_indices(d.order(), 0..4).unwrap();
        assert!(d.is_subgroup(&kernel));
        assert!(!d.is_subgroup(&GroupSubset::empty(d.order())));
    }
}
