//! Independent brute-force oracles shared by the integration tests.
//!
//! Everything here works on explicit pairs `(z, h)` and the public group
//! operations, never on the convolution or fiber counters under test.

#![allow(dead_code)]

use num_complex::Complex64;
use quasimix::counting::GroupSubset;
use quasimix::repr::{ComplexMatrix, Fourier};
use quasimix::rigid_motion::{Point, RigidMotionGroup};
use quasimix::semidirect::{SdpElement, SdpGroup};
use rand::Rng;

pub fn g0(q: u32) -> RigidMotionGroup {
    RigidMotionGroup::from_order(q).unwrap()
}

/// `(z₁, h₁)(z₂, h₂) = (z₁ + h₁z₂, h₁h₂)` computed from field arithmetic.
pub fn motion_mul(g0: &RigidMotionGroup, a: SdpElement, b: SdpElement) -> SdpElement {
    let z1 = g0.point(a.ddot).unwrap();
    let z2 = g0.point(b.ddot).unwrap();
    let rot = g0.rotations().power(a.dot).apply(z2, g0.field());
    let f = g0.field();
    let z = Point::new(f.add(z1.x1, rot.x1), f.add(z1.x2, rot.x2));
    let h1 = g0.rotations().power(a.dot);
    let h2 = g0.rotations().power(b.dot);
    let h = h1.compose(h2, f);
    SdpElement::new(g0.point_index(z), g0.rotations().exponent_of(h).unwrap())
}

/// `M_k` by nested loops over explicit elements.
pub fn brute_mk(group: &SdpGroup, x0: &GroupSubset, xs: &[&GroupSubset]) -> u128 {
    fn go(group: &SdpGroup, x0: &GroupSubset, xs: &[&GroupSubset], acc: SdpElement) -> u128 {
        match xs.split_first() {
            None => x0.contains(group.index(acc)) as u128,
            Some((x, rest)) => x
                .iter()
                .map(|y| go(group, x0, rest, group.mul(acc, group.element(y))))
                .sum(),
        }
    }
    go(group, x0, xs, group.identity())
}

fn dot_products(group: &SdpGroup, xs: &[&GroupSubset]) -> Vec<usize> {
    let h = group.h_group();
    let mut out = vec![h.identity()];
    for x in xs {
        out = out
            .iter()
            .flat_map(|&a| x.iter().map(move |g| (a, g)))
            .map(|(a, g)| h.mul(a, group.element(g).dot))
            .collect();
    }
    out
}

/// `Ṁ_k`: every tuple `(x₀, x₁, …, x_k)` checked on its `H`-parts.
pub fn brute_mk_dot(group: &SdpGroup, x0: &GroupSubset, xs: &[&GroupSubset]) -> u128 {
    let prods = dot_products(group, xs);
    x0.iter()
        .map(|g| {
            let h0 = group.element(g).dot;
            prods.iter().filter(|&&p| p == h0).count() as u128
        })
        .sum()
}

/// `Ṅ_k`: all pairs of tuples compared on their `H`-parts.
pub fn brute_nk_dot(group: &SdpGroup, xs: &[&GroupSubset]) -> u128 {
    let prods = dot_products(group, xs);
    let mut n = 0u128;
    for a in &prods {
        for b in &prods {
            n += (a == b) as u128;
        }
    }
    n
}

/// `E(X, Y)` by the quadruple loop.
pub fn brute_energy(group: &SdpGroup, x: &GroupSubset, y: &GroupSubset) -> u128 {
    let mut n = 0u128;
    for x1 in x.iter() {
        for y1 in y.iter() {
            let p = group.mul(group.element(x1), group.element(y1));
            for x2 in x.iter() {
                for y2 in y.iter() {
                    n += (group.mul(group.element(x2), group.element(y2)) == p) as u128;
                }
            }
        }
    }
    n
}

/// `E(X, Y)` on `H`-parts by the quadruple loop.
pub fn brute_energy_dot(group: &SdpGroup, x: &GroupSubset, y: &GroupSubset) -> u128 {
    let h = group.h_group();
    let dots = |s: &GroupSubset| s.iter().map(|g| group.element(g).dot).collect::<Vec<_>>();
    let (dx, dy) = (dots(x), dots(y));
    let mut n = 0u128;
    for &a1 in &dx {
        for &b1 in &dy {
            let p = h.mul(a1, b1);
            for &a2 in &dx {
                for &b2 in &dy {
                    n += (h.mul(a2, b2) == p) as u128;
                }
            }
        }
    }
    n
}

/// `{xy : x ∈ X, y ∈ Y}` by listing products.
pub fn brute_product_set(group: &SdpGroup, x: &GroupSubset, y: &GroupSubset) -> GroupSubset {
    let idx = x
        .iter()
        .flat_map(|a| y.iter().map(move |b| (a, b)))
        .map(|(a, b)| group.index(group.mul(group.element(a), group.element(b))));
    GroupSubset::from_indices(group.order(), idx).unwrap()
}

/// `f̂(ρ) = |G|⁻¹ Σ_x f(x) ρ(x)` with dense matrices.
pub fn naive_transform(fourier: &Fourier, f: &[Complex64]) -> Vec<ComplexMatrix> {
    let group = fourier.group();
    let n = group.order() as f64;
    fourier
        .irreps()
        .iter()
        .map(|rho| {
            let d = rho.degree();
            let mut acc = ComplexMatrix::zeros(d, d);
            for (x, &c) in f.iter().enumerate() {
                acc = &acc + &rho.matrix_of(group.element(x)).scale(c);
            }
            acc.scale(Complex64::new(1.0 / n, 0.0))
        })
        .collect()
}

pub fn random_function(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn random_set(rng: &mut impl Rng, order: usize) -> GroupSubset {
    let density = rng.gen_range(0.05..0.95);
    quasimix::counting::random_subset(order, density, rng).unwrap()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
