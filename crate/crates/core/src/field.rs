//! Arithmetic in finite fields of odd order `q = p^n`.
//!
//! Elements are stored by their canonical index `Σ c_i p^i`, where `c_i` are
//! the coefficients of the polynomial representative modulo the field's
//! defining polynomial. All operations go through lookup tables built once in
//! [`FieldParams::new`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, structural, Error, Result};

/// Hard ceiling on the field order.
pub const MAX_Q: u32 = 101;

/// An element of a finite field, identified by its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field `F_q`, `q = p^n`, with precomputed operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldParams {
    p: u32,
    n: u32,
    q: u32,
    /// Monic defining polynomial, constant term first (length `n + 1`).
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    square: Vec<bool>,
    trace: Vec<u32>,
}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.n)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` divided by the monic polynomial `m` over `F_p`
/// (coefficients constant term first).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `code`, constant term first.
fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    let mut rest = code;
    for _ in 0..deg {
        c.push(rest % p);
        rest /= p;
    }
    c.push(1);
    c
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let divisor = monic_from_code(code, d, p);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree `n`,
/// comparing coefficient tuples from the constant term upward.
fn find_modulus(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let total = p.pow(n);
    for rank in 0..total {
        // rank's most significant base-p digit is the constant term
        let mut coeffs = vec![0u32; n as usize];
        let mut rest = rank;
        for i in (0..n as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldParams {
    /// Builds `F_{p^n}` for an odd prime `p`.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if p.is_multiple_of(2) {
            return param(format!("characteristic must be odd, got p = {p}"));
        }
        if !is_prime(p) {
            return param(format!("p = {p} is not prime"));
        }
        if n < 1 {
            return param("extension degree must be at least 1");
        }
        let q = match p.checked_pow(n) {
            Some(q) if q <= MAX_Q => q,
            _ => return param(format!("field order {p}^{n} exceeds the ceiling q <= {MAX_Q}")),
        };
        let modulus = find_modulus(p, n);
        let qs = q as usize;
        let nn = n as usize;

        let coeffs_of = |idx: u32| -> Vec<u32> {
            let mut c = Vec::with_capacity(nn);
            let mut rest = idx;
            for _ in 0..nn {
                c.push(rest % p);
                rest /= p;
            }
            c
        };
        let index_of = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..q {
            let ca = coeffs_of(a);
            for b in 0..q {
                let cb = coeffs_of(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = index_of(&sum);

                let mut prod = vec![0u32; 2 * nn - 1];
                for (i, x) in ca.iter().enumerate() {
                    for (j, y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = if n == 1 { prod } else { poly_rem(&prod, &modulus, p) };
                red.resize(nn, 0);
                mul[a as usize * qs + b as usize] = index_of(&red);
            }
        }

        let mut neg = vec![0u32; qs];
        let mut inv = vec![u32::MAX; qs];
        let mut square = vec![false; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u32;
                }
            }
            square[mul[a * qs + a] as usize] = true;
        }

        let mut field = FieldParams {
            p,
            n,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            square,
            trace: Vec::new(),
        };

        // absolute trace: a + a^p + ... + a^(p^(n-1)), always in the prime subfield
        let mut trace = Vec::with_capacity(qs);
        for a in field.elements() {
            let mut acc = field.zero();
            let mut frob = a;
            for _ in 0..n {
                acc = field.add(acc, frob);
                frob = field.pow(frob, p as u64);
            }
            if acc.0 >= p {
                return structural(format!("trace of {a} left the prime subfield"));
            }
            trace.push(acc.0);
        }
        field.trace = trace;

        let by_residue = if q % 4 == 1 { 1 } else { -1 };
        let by_square = if field.is_square(field.neg(field.one())) { 1 } else { -1 };
        if by_residue != by_square {
            return structural(format!(
                "quadratic character of -1 disagrees with q mod 4 for q = {q}"
            ));
        }
        Ok(field)
    }

    /// Builds the field of order `q`, factoring `q` as an odd prime power.
    pub fn from_order(q: u32) -> Result<Self> {
        if q < 3 {
            return param(format!("q = {q} is not an odd prime power"));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut rest = q;
        let mut n = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            n += 1;
        }
        if rest != 1 {
            return param(format!("q = {q} is not a prime power"));
        }
        Self::new(p, n)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.q as usize
    }

    /// Defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Element with canonical index `idx`.
    pub fn element(&self, idx: usize) -> Result<FieldElement> {
        if idx >= self.order() {
            return param(format!("index {idx} out of range for F_{}", self.q));
        }
        Ok(FieldElement(idx as u32))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return param(format!("bad coefficient vector {coeffs:?} for {self}"));
        }
        Ok(FieldElement(
            coeffs.iter().rev().fold(0, |acc, &d| acc * self.p + d),
        ))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut rest = a.0;
        (0..self.n)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        match self.inv[a.0 as usize] {
            u32::MAX => Err(Error::DivisionByZero),
            b => Ok(FieldElement(b)),
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// True iff `a = b²` for some `b` (zero counts).
    pub fn is_square(&self, a: FieldElement) -> bool {
        self.square[a.0 as usize]
    }

    /// The quadratic character of −1: `+1` if `q ≡ 1 (mod 4)`, else `−1`.
    pub fn epsilon_q(&self) -> i32 {
        if self.q % 4 == 1 {
            1
        } else {
            -1
        }
    }

    /// Absolute trace to the prime field, as an integer in `[0, p)`.
    pub fn trace(&self, a: FieldElement) -> u32 {
        self.trace[a.0 as usize]
    }
}

impl FromStr for FieldParams {
    type Err = Error;

    /// Accepts `"p^n"` or a bare order `"q"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parameter(format!("cannot parse field spec {s:?}"));
        match s.split_once('^') {
            Some((p, n)) => {
                let p = p.trim().parse().map_err(|_| bad())?;
                let n = n.trim().parse().map_err(|_| bad())?;
                FieldParams::new(p, n)
            }
            None => FieldParams::from_order(s.parse().map_err(|_| bad())?),
        }
    }
}
