//! Non-abelian Fourier analysis on `G₀`, with expectation-normalised
//! conventions:
//!
//! * `f̂(ρ) = E_x f(x) ρ(x)`
//! * `f(x) = Σ_ρ d_ρ ⟨f̂(ρ), ρ(x)⟩_HS`
//! * `(f₁ ∗ f₂)(x) = E_y f₁(xy⁻¹) f₂(y)`, so `(f₁ ∗ f₂)^ = f̂₁ f̂₂`
//! * `⟨f, g⟩ = E_x f(x) conj(g(x))`, `‖f‖_p = (E_x |f(x)|^p)^{1/p}`
//!
//! Functions on a group are slices indexed by canonical element index.

use num_complex::Complex64;
use rayon::prelude::*;

use super::irreps::{all_irreps, Irrep, IrrepLabel};
use super::matrix::ComplexMatrix;
use crate::counting::GroupSubset;
use crate::error::{param, Result};
use crate::rigid_motion::RigidMotionGroup;
use crate::semidirect::SdpGroup;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `ρ ↦ f̂(ρ)`, aligned with an irrep list.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoefficients {
    labels: Vec<IrrepLabel>,
    matrices: Vec<ComplexMatrix>,
}

impl FourierCoefficients {
    pub fn new(labels: Vec<IrrepLabel>, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if labels.len() != matrices.len() {
            return param("one coefficient matrix per irrep label is required");
        }
        Ok(FourierCoefficients { labels, matrices })
    }

    pub fn labels(&self) -> &[IrrepLabel] {
        &self.labels
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn get(&self, label: IrrepLabel) -> Option<&ComplexMatrix> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|i| &self.matrices[i])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Pointwise matrix product `f̂₁(ρ) f̂₂(ρ)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.labels != other.labels {
            return param("coefficient sets are over different irreps");
        }
        Ok(FourierCoefficients {
            labels: self.labels.clone(),
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        FourierCoefficients {
            labels: self.labels.clone(),
            matrices: self.matrices.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.labels != other.labels {
            return param("coefficient sets are over different irreps");
        }
        Ok(FourierCoefficients {
            labels: self.labels.clone(),
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// `G₀` together with its full irrep census.
#[derive(Clone, Debug)]
pub struct Fourier {
    g0: RigidMotionGroup,
    irreps: Vec<Irrep>,
}

impl Fourier {
    pub fn new(g0: RigidMotionGroup) -> Result<Self> {
        let irreps = all_irreps(&g0)?;
        Ok(Fourier { g0, irreps })
    }

    pub fn from_order(q: u32) -> Result<Self> {
        Self::new(RigidMotionGroup::from_order(q)?)
    }

    pub fn g0(&self) -> &RigidMotionGroup {
        &self.g0
    }

    pub fn group(&self) -> &SdpGroup {
        self.g0.group()
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn labels(&self) -> Vec<IrrepLabel> {
        self.irreps.iter().map(Irrep::label).collect()
    }

    fn check_len(&self, f: &[Complex64]) -> Result<()> {
        if f.len() != self.group().order() {
            return param(format!(
                "function has {} values, group has {} elements",
                f.len(),
                self.group().order()
            ));
        }
        Ok(())
    }

    fn transform_sparse(&self, terms: &[(usize, Complex64)]) -> FourierCoefficients {
        let group = self.group();
        let norm = 1.0 / group.order() as f64;
        let matrices = self
            .irreps
            .par_iter()
            .map(|rho| {
                let d = rho.degree();
                let mut acc = ComplexMatrix::zeros(d, d);
                for &(x, c) in terms {
                    let m = rho.monomial(group.element(x));
                    for (n, (&row, &v)) in m.rows.iter().zip(&m.values).enumerate() {
                        acc[(row, n)] += c * v;
                    }
                }
                acc.scale(Complex64::new(norm, 0.0))
            })
            .collect();
        FourierCoefficients {
            labels: self.labels(),
            matrices,
        }
    }

    /// `f̂(ρ) = E_x f(x) ρ(x)` for every irrep.
    pub fn transform(&self, f: &[Complex64]) -> Result<FourierCoefficients> {
        self.check_len(f)?;
        let terms: Vec<(usize, Complex64)> = f
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != ZERO)
            .map(|(x, &c)| (x, c))
            .collect();
        Ok(self.transform_sparse(&terms))
    }

    /// Transform of the indicator function `1_X`.
    pub fn transform_indicator(&self, x: &GroupSubset) -> Result<FourierCoefficients> {
        if x.group_order() != self.group().order() {
            return param("subset belongs to a group of different order");
        }
        let terms: Vec<(usize, Complex64)> =
            x.iter().map(|g| (g, Complex64::new(1.0, 0.0))).collect();
        Ok(self.transform_sparse(&terms))
    }

    /// `f(x) = Σ_ρ d_ρ ⟨f̂(ρ), ρ(x)⟩_HS`.
    pub fn invert(&self, coeffs: &FourierCoefficients) -> Result<Vec<Complex64>> {
        let mut ordered = Vec::with_capacity(self.irreps.len());
        for rho in &self.irreps {
            match coeffs.get(rho.label()) {
                Some(m) if m.rows() == rho.degree() && m.cols() == rho.degree() => ordered.push(m),
                Some(_) => return param(format!("coefficient for {} has the wrong shape", rho.label())),
                None => return param(format!("missing coefficient for irrep {}", rho.label())),
            }
        }
        let group = self.group();
        Ok((0..group.order())
            .into_par_iter()
            .map(|x| {
                let g = group.element(x);
                let mut total = ZERO;
                for (rho, fhat) in self.irreps.iter().zip(&ordered) {
                    let m = rho.monomial(g);
                    let hs: Complex64 = m
                        .rows
                        .iter()
                        .zip(&m.values)
                        .enumerate()
                        .map(|(n, (&row, v))| fhat[(row, n)] * v.conj())
                        .sum();
                    total += hs * rho.degree() as f64;
                }
                total
            })
            .collect())
    }

    /// Convolution through the spectrum: invert `f̂₁ f̂₂`.
    pub fn convolve_spectral(&self, f1: &[Complex64], f2: &[Complex64]) -> Result<Vec<Complex64>> {
        let c = self.transform(f1)?.product(&self.transform(f2)?)?;
        self.invert(&c)
    }

    /// `Σ_ρ d_ρ ⟨F₁(ρ), F₂(ρ)⟩_HS`.
    pub fn spectral_inner(&self, a: &FourierCoefficients, b: &FourierCoefficients) -> Result<Complex64> {
        if a.labels() != b.labels() {
            return param("coefficient sets are over different irreps");
        }
        Ok(a.matrices()
            .iter()
            .zip(b.matrices())
            .map(|(x, y)| x.hs_inner(y) * x.rows() as f64)
            .sum())
    }

    /// Magnitudes `|1̂_X(ρ_r)|` of the type I coefficients, indexed by `r`.
    pub fn type1_profile(&self, coeffs: &FourierCoefficients) -> Vec<f64> {
        coeffs
            .labels()
            .iter()
            .zip(coeffs.matrices())
            .filter(|(l, _)| matches!(l, IrrepLabel::TypeI { .. }))
            .map(|(_, m)| m[(0, 0)].norm())
            .collect()
    }
}

/// Direct convolution `(f₁ ∗ f₂)(x) = E_y f₁(xy⁻¹) f₂(y)`.
pub fn convolve_direct(group: &SdpGroup, f1: &[Complex64], f2: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = group.order();
    if f1.len() != n || f2.len() != n {
        return param("function length does not match group order");
    }
    let support: Vec<usize> = (0..n).filter(|&y| f2[y] != ZERO).collect();
    let norm = 1.0 / n as f64;
    Ok((0..n)
        .into_par_iter()
        .map(|x| {
            support
                .iter()
                .map(|&y| f1[group.mul_index(x, group.inv_index(y))] * f2[y])
                .sum::<Complex64>()
                * norm
        })
        .collect())
}

/// `⟨f, g⟩ = E_x f(x) conj(g(x))`.
pub fn inner(f: &[Complex64], g: &[Complex64]) -> Result<Complex64> {
    if f.len() != g.len() || f.is_empty() {
        return param("functions must be non-empty and of equal length");
    }
    Ok(f.iter().zip(g).map(|(a, b)| a * b.conj()).sum::<Complex64>() / f.len() as f64)
}

/// `‖f‖_p = (E_x |f(x)|^p)^{1/p}` for `p ≥ 1`.
pub fn lp_norm(f: &[Complex64], p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return param(format!("lp norm needs p >= 1, got {p}"));
    }
    if f.is_empty() {
        return param("norm of a function on an empty set");
    }
    let mean = f.iter().map(|v| v.norm().powf(p)).sum::<f64>() / f.len() as f64;
    Ok(mean.powf(1.0 / p))
}

/// `1_X` as a complex function.
pub fn indicator(x: &GroupSubset) -> Vec<Complex64> {
    (0..x.group_order())
        .map(|g| if x.contains(g) { Complex64::new(1.0, 0.0) } else { ZERO })
        .collect()
}
