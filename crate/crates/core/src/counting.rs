//! Exact counting of product equations in semidirect products, and checkers
//! for the mixing, `L²`, energy, product-growth and Fourier-bias inequalities.
//!
//! All counts are exact integers. Three routes compute `M_k`:
//!
//! * tuple enumeration ([`count_mk_bruteforce`]), cost `|X₁|⋯|X_k|`;
//! * the integer convolution profile ([`product_profile`]), cost about
//!   `k·|G|·max|X_i|`, which the checkers use;
//! * the spectral route ([`count_mk_spectral`]), rounded to an integer.
//!
//! Dot counts (`Ṁ_k`, `Ṅ_k`, `Ė`) only depend on how many elements of each
//! set lie over each `h ∈ H`, so they are computed by convolving those fiber
//! counts over `H`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{param, Error, Result};
use crate::repr::{Fourier, IrrepLabel};
use crate::rigid_motion::RigidMotionGroup;
use crate::semidirect::SdpGroup;

/// Default brute-force budget in elementary steps.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "QUASIMIX_BUDGET";

/// Relative slack granted to floating-point bounds.
pub const REL_TOL: f64 = 1e-9;

/// Type I coefficients at most this far above `M` still count as `≤ M`.
pub const COEFF_TOL: f64 = 1e-12;

/// Maximum distance from an integer tolerated when rounding spectral counts.
pub const ROUNDING_TOL: f64 = 1e-6;

/// The budget from `QUASIMIX_BUDGET`, or the default.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// A subset of a finite group, stored as a membership bitmap plus the
/// sorted list of members.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    bits: Vec<bool>,
    members: Vec<usize>,
}

impl GroupSubset {
    pub fn empty(order: usize) -> Self {
        GroupSubset {
            bits: vec![false; order],
            members: Vec::new(),
        }
    }

    pub fn full(order: usize) -> Self {
        GroupSubset {
            bits: vec![true; order],
            members: (0..order).collect(),
        }
    }

    pub fn from_indices(order: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = vec![false; order];
        for i in indices {
            if i >= order {
                return param(format!("element index {i} out of range for group of order {order}"));
            }
            bits[i] = true;
        }
        Ok(Self::from_bits(bits))
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        let members = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        GroupSubset { bits, members }
    }

    pub fn group_order(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.bits.get(g).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Each element independently with probability `density`.
pub fn random_subset(order: usize, density: f64, rng: &mut impl Rng) -> Result<GroupSubset> {
    if !(0.0..=1.0).contains(&density) {
        return param(format!("density must lie in [0, 1], got {density}"));
    }
    Ok(GroupSubset::from_bits(
        (0..order).map(|_| rng.gen_bool(density)).collect(),
    ))
}

/// [`random_subset`] driven by `trial_rng(seed, 0)`.
pub fn random_subset_seeded(order: usize, density: f64, seed: u64) -> Result<GroupSubset> {
    random_subset(order, density, &mut crate::rng::trial_rng(seed, 0))
}

/// Named subsets of `G₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructuredSpec {
    Empty,
    Full,
    Identity,
    Translations,
    /// `{(t, γ^{kj}) : t ∈ F_q², 0 ≤ j < l}` with `kl = Q`.
    Example1 { k: usize, l: usize },
}

impl FromStr for StructuredSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "empty" => return Ok(StructuredSpec::Empty),
            "full" => return Ok(StructuredSpec::Full),
            "identity" => return Ok(StructuredSpec::Identity),
            "translations" => return Ok(StructuredSpec::Translations),
            _ => {}
        }
        let bad = || Error::Parameter(format!("unknown subset spec {s:?}"));
        let args = s
            .strip_prefix("example1(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (k, l) = args.split_once(',').ok_or_else(bad)?;
        Ok(StructuredSpec::Example1 {
            k: k.trim().parse().map_err(|_| bad())?,
            l: l.trim().parse().map_err(|_| bad())?,
        })
    }
}

pub fn structured_subset(g0: &RigidMotionGroup, spec: StructuredSpec) -> Result<GroupSubset> {
    let group = g0.group();
    let order = group.order();
    match spec {
        StructuredSpec::Empty => Ok(GroupSubset::empty(order)),
        StructuredSpec::Full => Ok(GroupSubset::full(order)),
        StructuredSpec::Identity => GroupSubset::from_indices(order, [group.identity_index()]),
        StructuredSpec::Translations => GroupSubset::from_indices(order, 0..group.n_order()),
        StructuredSpec::Example1 { k, l } => example1_subset(g0, k, l),
    }
}

/// The subgroup `{(t, a^j) : t ∈ F_q², 0 ≤ j < l}` with `a = γ^k`, `kl = Q`.
pub fn example1_subset(g0: &RigidMotionGroup, k: usize, l: usize) -> Result<GroupSubset> {
    let big_q = g0.big_q();
    if k * l != big_q {
        return param(format!("k*l must equal Q = {big_q}, got {k}*{l}"));
    }
    let group = g0.group();
    let n = group.n_order();
    let idx = (0..l).flat_map(|j| {
        let dot = (k * j) % big_q;
        (0..n).map(move |z| dot * n + z)
    });
    GroupSubset::from_indices(group.order(), idx)
}

/// JSON set file: `{q, field, elements}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetFile {
    pub q: u32,
    pub field: String,
    pub elements: Vec<usize>,
}

impl SetFile {
    pub fn from_subset(g0: &RigidMotionGroup, x: &GroupSubset) -> Self {
        SetFile {
            q: g0.field().q(),
            field: g0.field().to_string(),
            elements: x.indices().to_vec(),
        }
    }

    pub fn to_subset(&self, g0: &RigidMotionGroup) -> Result<GroupSubset> {
        if self.q != g0.field().q() {
            return param(format!("set file is for q = {}, group has q = {}", self.q, g0.field().q()));
        }
        GroupSubset::from_indices(g0.order(), self.elements.iter().copied())
    }
}

fn check_same_group(group: &SdpGroup, sets: &[&GroupSubset]) -> Result<()> {
    match sets.iter().find(|x| x.group_order() != group.order()) {
        Some(x) => param(format!(
            "subset over a group of order {} used with a group of order {}",
            x.group_order(),
            group.order()
        )),
        None => Ok(()),
    }
}

/// Steps [`product_profile`] will take.
pub fn profile_cost(group: &SdpGroup, xs: &[&GroupSubset]) -> u64 {
    let n = group.order() as u64;
    xs.iter().skip(1).map(|x| n * x.len() as u64).sum()
}

/// `r(g) = #{(x₁,…,x_k) ∈ X₁×⋯×X_k : x₁⋯x_k = g}` for every `g`.
pub fn product_profile(group: &SdpGroup, xs: &[&GroupSubset]) -> Result<Vec<u128>> {
    if xs.is_empty() {
        return param("at least one set is required");
    }
    check_same_group(group, xs)?;
    let n = group.order();
    let mut r = vec![0u128; n];
    for g in xs[0].iter() {
        r[g] = 1;
    }
    for x in &xs[1..] {
        let mut next = vec![0u128; n];
        for (w, &c) in r.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for y in x.iter() {
                next[group.mul_index(w, y)] += c;
            }
        }
        r = next;
    }
    Ok(r)
}

/// Profile with a budget check.
pub fn product_profile_within(group: &SdpGroup, xs: &[&GroupSubset], budget: u64) -> Result<Vec<u128>> {
    let cost = profile_cost(group, xs);
    if cost > budget {
        return Err(Error::Resource(format!(
            "convolution needs {cost} steps, budget is {budget}; use a smaller q or k"
        )));
    }
    product_profile(group, xs)
}

/// `M_k` by enumerating all tuples of `X₁×⋯×X_k`.
pub fn count_mk_bruteforce(group: &SdpGroup, x0: &GroupSubset, xs: &[&GroupSubset]) -> Result<u128> {
    if xs.is_empty() {
        return param("at least one factor set is required");
    }
    check_same_group(group, xs)?;
    check_same_group(group, &[x0])?;
    fn walk(group: &SdpGroup, x0: &GroupSubset, rest: &[&GroupSubset], acc: usize) -> u128 {
        match rest.split_first() {
            None => x0.contains(acc) as u128,
            Some((x, tail)) => x
                .iter()
                .map(|y| walk(group, x0, tail, group.mul_index(acc, y)))
                .sum(),
        }
    }
    Ok(walk(group, x0, xs, group.identity_index()))
}

pub fn bruteforce_cost(xs: &[&GroupSubset]) -> u64 {
    xs.iter()
        .map(|x| x.len() as u64)
        .try_fold(1u64, |acc, n| acc.checked_mul(n))
        .unwrap_or(u64::MAX)
}

/// `M_k = |G|^k ⟨1_{X₁} ∗ ⋯ ∗ 1_{X_k}, 1_{X₀}⟩`, evaluated through the
/// Fourier coefficients and rounded.
pub fn count_mk_spectral(fourier: &Fourier, x0: &GroupSubset, xs: &[&GroupSubset]) -> Result<u128> {
    if xs.is_empty() {
        return param("at least one factor set is required");
    }
    let mut acc = fourier.transform_indicator(xs[0])?;
    for x in &xs[1..] {
        acc = acc.product(&fourier.transform_indicator(x)?)?;
    }
    let target = fourier.transform_indicator(x0)?;
    let inner = fourier.spectral_inner(&acc, &target)?;
    let scale = (fourier.group().order() as f64).powi(xs.len() as i32);
    let value = inner.re * scale;
    let rounded = value.round();
    if (value - rounded).abs() > ROUNDING_TOL || inner.im.abs() * scale > ROUNDING_TOL || rounded < 0.0 {
        return Err(Error::NumericIntegrity(format!(
            "spectral count {value} (imaginary part {}) is not within {ROUNDING_TOL} of a non-negative integer",
            inner.im * scale
        )));
    }
    Ok(rounded as u128)
}

/// `M_k`: tuple enumeration when it fits the budget, else the spectral route.
pub fn count_mk(
    fourier: &Fourier,
    x0: &GroupSubset,
    xs: &[&GroupSubset],
    budget: u64,
) -> Result<u128> {
    if bruteforce_cost(xs) <= budget {
        count_mk_bruteforce(fourier.group(), x0, xs)
    } else {
        count_mk_spectral(fourier, x0, xs)
    }
}

/// `fiber[h] = #{x ∈ X : ẋ = h}`.
pub fn dot_fibers(group: &SdpGroup, x: &GroupSubset) -> Vec<u128> {
    let mut fib = vec![0u128; group.h_order()];
    for g in x.iter() {
        fib[group.element(g).dot] += 1;
    }
    fib
}

/// `c(h) = #{(x₁,…,x_k) : ẋ₁⋯ẋ_k = h}`.
pub fn dot_profile(group: &SdpGroup, xs: &[&GroupSubset]) -> Result<Vec<u128>> {
    if xs.is_empty() {
        return param("at least one set is required");
    }
    check_same_group(group, xs)?;
    let h = group.h_group();
    let mut c = dot_fibers(group, xs[0]);
    for x in &xs[1..] {
        let fib = dot_fibers(group, x);
        let mut next = vec![0u128; h.order()];
        for (a, &ca) in c.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &fb) in fib.iter().enumerate() {
                next[h.mul(a, b)] += ca * fb;
            }
        }
        c = next;
    }
    Ok(c)
}

/// `Ṁ_k = #{(x₀,…,x_k) : ẋ₁⋯ẋ_k = ẋ₀}`.
pub fn count_mk_dot(group: &SdpGroup, x0: &GroupSubset, xs: &[&GroupSubset]) -> Result<u128> {
    check_same_group(group, &[x0])?;
    let c = dot_profile(group, xs)?;
    let f0 = dot_fibers(group, x0);
    Ok(c.iter().zip(&f0).map(|(a, b)| a * b).sum())
}

/// `Ṅ_k = #{(x, y) ∈ (X₁×⋯×X_k)² : ẋ₁⋯ẋ_k = ẏ₁⋯ẏ_k} = Σ_h c(h)²`.
pub fn count_nk_dot(group: &SdpGroup, xs: &[&GroupSubset]) -> Result<u128> {
    Ok(dot_profile(group, xs)?.iter().map(|c| c * c).sum())
}

/// `E(X, Y) = #{x₁y₁ = x₂y₂} = Σ_g r(g)²`.
pub fn energy(group: &SdpGroup, x: &GroupSubset, y: &GroupSubset) -> Result<u128> {
    Ok(product_profile(group, &[x, y])?.iter().map(|r| r * r).sum())
}

/// `Ė(X, Y) = #{ẋ₁ẏ₁ = ẋ₂ẏ₂}`.
pub fn energy_dot(group: &SdpGroup, x: &GroupSubset, y: &GroupSubset) -> Result<u128> {
    count_nk_dot(group, &[x, y])
}

/// `X₁X₂⋯X_k`, the support of the convolution profile.
pub fn product_set(group: &SdpGroup, xs: &[&GroupSubset]) -> Result<GroupSubset> {
    let r = product_profile(group, xs)?;
    Ok(GroupSubset::from_bits(r.iter().map(|&c| c > 0).collect()))
}

/// Outcome of checking one inequality instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub q: Option<u32>,
    pub k: usize,
    pub sizes: Vec<usize>,
    pub seed: Option<u64>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    #[serde(flatten)]
    pub details: BTreeMap<String, Value>,
}

impl VerificationReport {
    fn new(theorem: &str, k: usize, sizes: Vec<usize>, lhs: f64, rhs: f64, pass: bool) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            q: None,
            k,
            sizes,
            seed: None,
            lhs,
            rhs,
            slack: rhs - lhs,
            pass,
            details: BTreeMap::new(),
        }
    }

    /// For lower bounds `lhs ≥ rhs`: slack becomes `lhs − rhs`.
    pub fn lower_bound(mut self) -> Self {
        self.slack = self.lhs - self.rhs;
        self
    }

    pub fn with_q(mut self, q: u32) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

/// JSON number when it fits in `u64`, decimal string otherwise.
pub fn count_value(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn big(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

fn big_pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

fn product_of_sizes(sets: &[&GroupSubset]) -> BigInt {
    sets.iter().map(|x| BigInt::from(x.len())).product()
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + REL_TOL * rhs.abs().max(f64::MIN_POSITIVE)
}

/// Mixing: `|M_k − Ṁ_k/|N|| ≤ √(|G|^{k−1}|X₀|⋯|X_k| / D^{k−1})`.
///
/// Compared exactly after squaring; the floating comparison with an
/// absolute slack of `1e−9` is accepted as well.
pub fn verify_mixing(
    group: &SdpGroup,
    x0: &GroupSubset,
    xs: &[&GroupSubset],
    d: usize,
    budget: u64,
) -> Result<VerificationReport> {
    let k = xs.len();
    if k < 2 {
        return param("mixing needs k >= 2");
    }
    check_same_group(group, &[x0])?;
    let r = product_profile_within(group, xs, budget)?;
    let m: u128 = x0.iter().map(|g| r[g]).sum();
    let m_dot = count_mk_dot(group, x0, xs)?;

    let n = group.n_order();
    let g = group.order();
    let mut all: Vec<&GroupSubset> = vec![x0];
    all.extend_from_slice(xs);
    let sizes_prod = product_of_sizes(&all);

    let diff = (big(m) * big(n) - big(m_dot)).magnitude().clone();
    let diff = BigInt::from(diff);
    let lhs_sq = &diff * &diff * big_pow(d, k - 1);
    let rhs_sq = big(n) * big(n) * big_pow(g, k - 1) * &sizes_prod;
    let exact = lhs_sq <= rhs_sq;

    let lhs = ratio_f64(&BigRational::new(diff, big(n)));
    let rhs = ratio_f64(&BigRational::new(big_pow(g, k - 1) * &sizes_prod, big_pow(d, k - 1))).sqrt();
    let pass = exact || lhs <= rhs + 1e-9;
    Ok(
        VerificationReport::new("mixing", k, all.iter().map(|x| x.len()).collect(), lhs, rhs, pass)
            .detail("m_k", count_value(m))
            .detail("m_k_dot", count_value(m_dot))
            .detail("main_term", m_dot as f64 / n as f64)
            .detail("d", d),
    )
}

/// `L²` sandwich:
/// `|H|Ṅ_k/|G|^{2k} ≤ ‖1_{X₁}∗⋯∗1_{X_k}‖₂² ≤ |H|Ṅ_k/|G|^{2k} + |X₁|⋯|X_k|/(D^{k−1}|G|^k)`.
///
/// The middle term is `Σ_g r(g)² / |G|^{2k−1}`, all sides compared exactly.
pub fn verify_l2(group: &SdpGroup, xs: &[&GroupSubset], d: usize, budget: u64) -> Result<VerificationReport> {
    let k = xs.len();
    if k < 2 {
        return param("the L2 bound needs k >= 2");
    }
    let r = product_profile_within(group, xs, budget)?;
    let sum_sq: BigInt = r.iter().map(|&c| big(c) * big(c)).sum();
    let nk_dot = count_nk_dot(group, xs)?;
    let (g, h) = (group.order(), group.h_order());
    let sizes_prod = product_of_sizes(xs);

    let lower_ok = big(h) * big(nk_dot) <= big(g) * &sum_sq;
    let dk = big_pow(d, k - 1);
    let upper_ok = &dk * big(g) * &sum_sq <= &dk * big(h) * big(nk_dot) + &sizes_prod * big_pow(g, k);

    let middle = BigRational::new(sum_sq.clone(), big_pow(g, 2 * k - 1));
    let lower = BigRational::new(big(h) * big(nk_dot), big_pow(g, 2 * k));
    let upper = &lower + BigRational::new(sizes_prod, dk * big_pow(g, k));
    Ok(VerificationReport::new(
        "l2",
        k,
        xs.iter().map(|x| x.len()).collect(),
        ratio_f64(&middle),
        ratio_f64(&upper),
        lower_ok && upper_ok,
    )
    .detail("lower", ratio_f64(&lower))
    .detail("lower_ok", lower_ok)
    .detail("upper_ok", upper_ok)
    .detail("sum_r_squared", sum_sq.to_string())
    .detail("n_k_dot", count_value(nk_dot))
    .detail("d", d))
}

/// Energy: `(|H|/|G|)Ė ≤ E ≤ (|H|/|G|)Ė + (|G|/D)|X||Y|`, exactly.
pub fn verify_energy(
    group: &SdpGroup,
    x: &GroupSubset,
    y: &GroupSubset,
    d: usize,
    budget: u64,
) -> Result<VerificationReport> {
    let r = product_profile_within(group, &[x, y], budget)?;
    let e: u128 = r.iter().map(|c| c * c).sum();
    let e_dot = energy_dot(group, x, y)?;
    let (g, h) = (group.order(), group.h_order());
    let lower_ok = big(h) * big(e_dot) <= big(g) * big(e);
    let upper_ok = big(d) * big(g) * big(e)
        <= big(d) * big(h) * big(e_dot) + big(g) * big(g) * big(x.len()) * big(y.len());
    let lower = BigRational::new(big(h) * big(e_dot), big(g));
    let upper = &lower + BigRational::new(big(g) * big(x.len()) * big(y.len()), big(d));
    Ok(VerificationReport::new(
        "energy",
        2,
        vec![x.len(), y.len()],
        e as f64,
        ratio_f64(&upper),
        lower_ok && upper_ok,
    )
    .detail("energy", count_value(e))
    .detail("energy_dot", count_value(e_dot))
    .detail("lower", ratio_f64(&lower))
    .detail("lower_ok", lower_ok)
    .detail("upper_ok", upper_ok)
    .detail("d", d))
}

/// The two terms of the product-growth bound, `|N|Π|X_i|²/Ṅ_k` and
/// `D^{k−1}Π|X_i|/|G|^{k−1}`, and their half-minimum.
pub fn growth_bound(group: &SdpGroup, xs: &[&GroupSubset], nk_dot: u128, d: usize) -> (BigRational, BigRational, BigRational) {
    let k = xs.len();
    let sizes_prod = product_of_sizes(xs);
    let spread = if nk_dot == 0 {
        BigRational::zero()
    } else {
        BigRational::new(big(group.n_order()) * &sizes_prod * &sizes_prod, big(nk_dot))
    };
    let quasi = BigRational::new(big_pow(d, k - 1) * &sizes_prod, big_pow(group.order(), k - 1));
    let half_min = spread.clone().min(quasi.clone()) / BigRational::from_integer(big(2));
    (spread, quasi, half_min)
}

/// Product growth: `|X₁⋯X_k| ≥ ½ min{|N|Π|X_i|²/Ṅ_k, D^{k−1}Π|X_i|/|G|^{k−1}}`.
pub fn verify_product_growth(
    group: &SdpGroup,
    xs: &[&GroupSubset],
    d: usize,
    budget: u64,
) -> Result<VerificationReport> {
    let k = xs.len();
    if k < 2 {
        return param("product growth needs k >= 2");
    }
    let r = product_profile_within(group, xs, budget)?;
    let prod_size = r.iter().filter(|&&c| c > 0).count();
    let nk_dot = count_nk_dot(group, xs)?;
    let (spread, quasi, bound) = growth_bound(group, xs, nk_dot, d);
    let pass = BigRational::from_integer(big(prod_size)) >= bound;
    Ok(VerificationReport::new(
        "growth",
        k,
        xs.iter().map(|x| x.len()).collect(),
        prod_size as f64,
        ratio_f64(&bound),
        pass,
    )
    .lower_bound()
    .detail("product_size", prod_size)
    .detail("n_k_dot", count_value(nk_dot))
    .detail("spread_term", ratio_f64(&spread))
    .detail("quasirandom_term", ratio_f64(&quasi))
    .detail("d", d))
}

/// Fourier-bias chain for `X ⊆ G₀`:
///
/// `‖1_X∗1_X‖₂² = Σ₀ + Σ₁ + Σ₂ ≤ k|X|⁴/|G₀|⁴ + (Q−k)M⁴ + |X|²/(D|G₀|²)`
///
/// and the support bound `|XX| ≥ |G₀|‖f‖₁²/‖f‖₂² = |X|⁴/E(X,X)`.
///
/// `Γ₀` is the `k` type I indices with the largest coefficients; every
/// other coefficient must be at most `m`.
pub fn verify_bias(fourier: &Fourier, x: &GroupSubset, m: f64, k: usize, budget: u64) -> Result<VerificationReport> {
    let g0 = fourier.g0();
    let group = g0.group();
    let big_q = g0.big_q();
    if k > big_q {
        return param(format!("exception count {k} exceeds Q = {big_q}"));
    }
    if m.is_nan() || m < 0.0 {
        return param("threshold M must be non-negative");
    }
    let coeffs = fourier.transform_indicator(x)?;
    let profile = fourier.type1_profile(&coeffs);
    let above = profile.iter().filter(|&&c| c > m + COEFF_TOL).count();
    if above > k {
        return param(format!("{above} type I coefficients exceed M, but only {k} exceptions allowed"));
    }
    let mut order: Vec<usize> = (0..big_q).collect();
    order.sort_by(|&a, &b| profile[b].total_cmp(&profile[a]).then(a.cmp(&b)));
    let gamma0: Vec<usize> = {
        let mut g = order[..k].to_vec();
        g.sort_unstable();
        g
    };
    let sigma0: f64 = gamma0.iter().map(|&r| profile[r].powi(4)).sum();
    let sigma1: f64 = (0..big_q)
        .filter(|r| !gamma0.contains(r))
        .map(|r| profile[r].powi(4))
        .sum();
    let sigma2: f64 = coeffs
        .labels()
        .iter()
        .zip(coeffs.matrices())
        .filter(|(l, _)| matches!(l, IrrepLabel::TypeII { .. }))
        .map(|(_, f)| (f * f).hs_norm_sqr() * f.rows() as f64)
        .sum();

    let d = crate::repr::quasirandom_degree(fourier.irreps())
        .ok_or_else(|| Error::Structural("G0 has no type II irreps".into()))?;
    let n = group.order() as f64;
    let size = x.len() as f64;
    let density = size / n;
    let sigma0_bound = k as f64 * density.powi(4);
    let sigma1_bound = (big_q - k) as f64 * m.powi(4);
    let sigma2_bound = density * density / d as f64;
    let bound = sigma0_bound + sigma1_bound + sigma2_bound;

    let r = product_profile_within(group, &[x, x], budget)?;
    let e: u128 = r.iter().map(|c| c * c).sum();
    let xx = r.iter().filter(|&&c| c > 0).count();
    let l2 = BigRational::new(big(e), big_pow(group.order(), 3));
    let l2f = ratio_f64(&l2);

    // Each part is measured on the scale of the whole bound, so rounding
    // residue in coefficients that vanish exactly does not count against M = 0.
    let part_ok = |v: f64, b: f64| v <= b + REL_TOL * bound;
    let parts_ok = part_ok(sigma0, sigma0_bound) && part_ok(sigma1, sigma1_bound) && part_ok(sigma2, sigma2_bound);
    let parseval_ok = (sigma0 + sigma1 + sigma2 - l2f).abs() <= REL_TOL * l2f.max(f64::MIN_POSITIVE);
    let chain_ok = within(l2f, bound);
    let support_bound = if e == 0 {
        BigRational::zero()
    } else {
        BigRational::new(big_pow(x.len(), 4), big(e))
    };
    let support_ok = BigRational::from_integer(big(xx)) >= support_bound;

    Ok(VerificationReport::new(
        "bias",
        k,
        vec![x.len()],
        l2f,
        bound,
        parts_ok && parseval_ok && chain_ok && support_ok,
    )
    .detail("threshold_m", m)
    .detail("gamma0", gamma0)
    .detail("sigma0", sigma0)
    .detail("sigma1", sigma1)
    .detail("sigma2", sigma2)
    .detail("sigma0_bound", sigma0_bound)
    .detail("sigma1_bound", sigma1_bound)
    .detail("sigma2_bound", sigma2_bound)
    .detail("parts_ok", parts_ok)
    .detail("parseval_ok", parseval_ok)
    .detail("product_size", xx)
    .detail("support_bound", ratio_f64(&support_bound))
    .detail("support_ok", support_ok)
    .detail("d", d))
}

/// `(k, M)` pairs covering every split of the type I coefficient profile:
/// for each `k`, `M` is the `(k+1)`-th largest magnitude (0 when `k = Q`).
pub fn bias_thresholds(profile: &[f64]) -> Vec<(usize, f64)> {
    let mut sorted = profile.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    (0..=sorted.len())
        .map(|k| (k, sorted.get(k).copied().unwrap_or(0.0)))
        .collect()
}

/// Helper for tests and reports: `|1̂_X(ρ)|` for the type I irreps.
pub fn type1_magnitudes(fourier: &Fourier, x: &GroupSubset) -> Result<Vec<f64>> {
    Ok(fourier.type1_profile(&fourier.transform_indicator(x)?))
}

/// `1_X` as complex values, for callers that want the dense function.
pub fn indicator_values(x: &GroupSubset) -> Vec<Complex64> {
    crate::repr::indicator(x)
}
