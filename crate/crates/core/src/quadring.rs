//! Exact arithmetic in `Z[√2, √3, φ]`.
//!
//! Every value `2cos(π/m)` for `m ∈ {2, 3, 4, 5, 6, ∞}` lives in this ring, so
//! it is enough to carry the root coordinates of every Coxeter graph the engine
//! supports. Elements are stored as eight integer coordinates over the basis
//! `{1, √2, √3, √6, φ, √2φ, √3φ, √6φ}`; basis index `i` has bit 0 set for a
//! `√2` factor, bit 1 for `√3` and bit 2 for `φ`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::EdgeLabel;

pub const RANK: usize = 8;

const BASIS_NAMES: [&str; RANK] = ["", "√2", "√3", "√6", "φ", "√2φ", "√3φ", "√6φ"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("integer overflow in exact ring arithmetic")]
    Overflow,
    #[error("unsupported edge label {0} (supported: 2, 3, 4, 5, 6, ∞)")]
    UnsupportedLabel(EdgeLabel),
}

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Product table of the basis: `e_i · e_j = k · (e_a [+ e_b])`.
#[derive(Clone, Copy)]
struct BasisProduct {
    factor: i64,
    first: usize,
    // φ·φ = φ + 1 produces a second term.
    second: Option<usize>,
}

const fn basis_product(i: usize, j: usize) -> BasisProduct {
    let mut factor = 1;
    if i & 1 != 0 && j & 1 != 0 {
        factor *= 2;
    }
    if i & 2 != 0 && j & 2 != 0 {
        factor *= 3;
    }
    let radical = (i ^ j) & 3;
    if i & 4 != 0 && j & 4 != 0 {
        BasisProduct {
            factor,
            first: radical,
            second: Some(radical | 4),
        }
    } else {
        BasisProduct {
            factor,
            first: radical | ((i | j) & 4),
            second: None,
        }
    }
}

const fn build_table() -> [[BasisProduct; RANK]; RANK] {
    let mut table = [[BasisProduct {
        factor: 0,
        first: 0,
        second: None,
    }; RANK]; RANK];
    let mut i = 0;
    while i < RANK {
        let mut j = 0;
        while j < RANK {
            table[i][j] = basis_product(i, j);
            j += 1;
        }
        i += 1;
    }
    table
}

const MUL_TABLE: [[BasisProduct; RANK]; RANK] = build_table();

/// An exact element of `Z[√2, √3, φ]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadScalar {
    coeffs: [i64; RANK],
}

impl QuadScalar {
    pub const ZERO: QuadScalar = QuadScalar { coeffs: [0; RANK] };
    pub const ONE: QuadScalar = QuadScalar::basis(0);
    pub const SQRT2: QuadScalar = QuadScalar::basis(1);
    pub const SQRT3: QuadScalar = QuadScalar::basis(2);
    pub const SQRT6: QuadScalar = QuadScalar::basis(3);
    pub const PHI: QuadScalar = QuadScalar::basis(4);

    pub const fn basis(index: usize) -> QuadScalar {
        let mut coeffs = [0; RANK];
        coeffs[index] = 1;
        QuadScalar { coeffs }
    }

    pub const fn from_coeffs(coeffs: [i64; RANK]) -> QuadScalar {
        QuadScalar { coeffs }
    }

    pub const fn from_int(value: i64) -> QuadScalar {
        let mut coeffs = [0; RANK];
        coeffs[0] = value;
        QuadScalar { coeffs }
    }

    pub fn coeffs(&self) -> &[i64; RANK] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `2cos(π/m)`, with `m = ∞` mapped to `2`.
    pub fn from_label(label: EdgeLabel) -> Result<QuadScalar, QuadError> {
        match label {
            EdgeLabel::Finite(2) => Ok(QuadScalar::ZERO),
            EdgeLabel::Finite(3) => Ok(QuadScalar::ONE),
            EdgeLabel::Finite(4) => Ok(QuadScalar::SQRT2),
            EdgeLabel::Finite(5) => Ok(QuadScalar::PHI),
            EdgeLabel::Finite(6) => Ok(QuadScalar::SQRT3),
            EdgeLabel::Infinite => Ok(QuadScalar::from_int(2)),
            other => Err(QuadError::UnsupportedLabel(other)),
        }
    }

    pub fn checked_add(&self, other: &QuadScalar) -> Result<QuadScalar, QuadError> {
        let mut coeffs = [0; RANK];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeffs[k].checked_add(other.coeffs[k]).ok_or(QuadError::Overflow)?;
        }
        Ok(QuadScalar { coeffs })
    }

    pub fn checked_sub(&self, other: &QuadScalar) -> Result<QuadScalar, QuadError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<QuadScalar, QuadError> {
        let mut coeffs = [0; RANK];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeffs[k].checked_neg().ok_or(QuadError::Overflow)?;
        }
        Ok(QuadScalar { coeffs })
    }

    pub fn checked_mul(&self, other: &QuadScalar) -> Result<QuadScalar, QuadError> {
        let mut acc = [0i64; RANK];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let entry = MUL_TABLE[i][j];
                let term = a
                    .checked_mul(b)
                    .and_then(|ab| ab.checked_mul(entry.factor))
                    .ok_or(QuadError::Overflow)?;
                acc[entry.first] = acc[entry.first].checked_add(term).ok_or(QuadError::Overflow)?;
                if let Some(second) = entry.second {
                    acc[second] = acc[second].checked_add(term).ok_or(QuadError::Overflow)?;
                }
            }
        }
        Ok(QuadScalar { coeffs: acc })
    }

    /// `self + factor · other`, the workhorse of reflection updates.
    pub fn checked_add_mul(&self, factor: &QuadScalar, other: &QuadScalar) -> Result<QuadScalar, QuadError> {
        if factor.is_zero() || other.is_zero() {
            return Ok(*self);
        }
        self.checked_add(&factor.checked_mul(other)?)
    }

    /// Floating-point value, for display and estimates.
    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .zip(basis_values().iter())
            .map(|(&c, &b)| c as f64 * b)
            .sum()
    }

    /// Certified enclosure `lo / 2^bits ≤ self ≤ hi / 2^bits`.
    pub fn enclosure(&self, bits: u32) -> (BigInt, BigInt) {
        let bounds = basis_bounds(bits);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            let (bl, bh) = &bounds[k];
            if c.is_positive() {
                lo += &c * bl;
                hi += &c * bh;
            } else {
                lo += &c * bh;
                hi += &c * bl;
            }
        }
        (lo, hi)
    }

    /// Midpoint of [`QuadScalar::enclosure`] as a float.
    pub fn enclosure_midpoint(&self, bits: u32) -> f64 {
        let (lo, hi) = self.enclosure(bits);
        let mid = (lo + hi).to_f64().unwrap_or(f64::NAN) / 2.0;
        mid / 2f64.powi(bits as i32)
    }

    pub fn sign(&self) -> Sign {
        let mut any_pos = false;
        let mut any_neg = false;
        for &c in &self.coeffs {
            match c.cmp(&0) {
                Ordering::Greater => any_pos = true,
                Ordering::Less => any_neg = true,
                Ordering::Equal => {}
            }
        }
        match (any_pos, any_neg) {
            (false, false) => return Sign::Zero,
            (true, false) => return Sign::Positive,
            (false, true) => return Sign::Negative,
            _ => {}
        }
        // Float estimate: relative rounding error is below 16ε of the sum of
        // absolute terms, so anything past 1e-12 of that sum is decided here.
        let values = basis_values();
        let mut estimate = 0.0;
        let mut magnitude = 0.0;
        for (&c, &b) in self.coeffs.iter().zip(values.iter()) {
            let term = c as f64 * b;
            estimate += term;
            magnitude += term.abs();
        }
        if estimate.abs() > 1e-12 * magnitude {
            return if estimate > 0.0 { Sign::Positive } else { Sign::Negative };
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }
}

fn basis_values() -> [f64; RANK] {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = [0.0; RANK];
    for (i, v) in out.iter_mut().enumerate() {
        let radicand = (if i & 1 != 0 { 2.0 } else { 1.0 }) * (if i & 2 != 0 { 3.0 } else { 1.0 });
        *v = f64::sqrt(radicand) * if i & 4 != 0 { phi } else { 1.0 };
    }
    out
}

fn sqrt_floor_scaled(radicand: u64, bits: u32) -> BigInt {
    let scaled = BigUint::from(radicand) << (2 * bits as usize);
    BigInt::from(scaled.sqrt())
}

/// Integer bounds on `b_i · 2^bits` for each basis element.
fn basis_bounds(bits: u32) -> Vec<(BigInt, BigInt)> {
    (0..RANK)
        .map(|i| {
            let d: u64 = (if i & 1 != 0 { 2 } else { 1 }) * (if i & 2 != 0 { 3 } else { 1 });
            let root_lo = sqrt_floor_scaled(d, bits);
            let root_exact = d == 1;
            let root_hi = if root_exact { root_lo.clone() } else { &root_lo + 1 };
            if i & 4 == 0 {
                (root_lo, root_hi)
            } else {
                // √d·φ = (√d + √(5d)) / 2, and √(5d) is never rational.
                let five_lo = sqrt_floor_scaled(5 * d, bits);
                let five_hi = &five_lo + 1;
                let lo = (&root_lo + &five_lo) >> 1usize;
                let hi = (&root_hi + &five_hi + 1) >> 1usize;
                (lo, hi)
            }
        })
        .collect()
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = BASIS_NAMES[k];
            let magnitude = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            if name.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{magnitude}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
