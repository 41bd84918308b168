//! Quadratic enhancements (pin- structures) and the Brown invariant.
//!
//! An enhancement is a function `e: H_1(F; Z/2) -> Z/4` with
//! `e(x + y) = e(x) + e(y) + 2 (x.y)`. Setting `x = y` gives
//! `e(v) = v.v (mod 2)`, so each basis vector has exactly two legal values.
//! The Brown invariant is read off the integer Gauss sum
//! `sum_x i^{e(x)} = (e0 - e2) + i (e1 - e3)`, which always has modulus
//! `2^{n/2}` and points along one of the eight octant rays.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{low_mask, parity, H1Class, IntersectionForm, SurfaceKind, ENUMERATION_LIMIT};
use crate::refinement::Refinement;

/// An element of Z/8, kept as its representative in `0..8`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BrownClass(u8);

impl BrownClass {
    pub const fn new(value: i64) -> Self {
        BrownClass(value.rem_euclid(8) as u8)
    }

    pub const fn value(self) -> u8 {
        self.0
    }
}

impl Add for BrownClass {
    type Output = BrownClass;
    fn add(self, rhs: BrownClass) -> BrownClass {
        BrownClass((self.0 + rhs.0) % 8)
    }
}

impl Sub for BrownClass {
    type Output = BrownClass;
    fn sub(self, rhs: BrownClass) -> BrownClass {
        BrownClass((self.0 + 8 - rhs.0) % 8)
    }
}

impl Neg for BrownClass {
    type Output = BrownClass;
    fn neg(self) -> BrownClass {
        BrownClass((8 - self.0) % 8)
    }
}

impl Mul<BrownClass> for u8 {
    type Output = BrownClass;
    fn mul(self, rhs: BrownClass) -> BrownClass {
        BrownClass(((u16::from(self) * u16::from(rhs.0)) % 8) as u8)
    }
}

impl fmt::Display for BrownClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How many classes take each value in Z/4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValueHistogram {
    pub counts: [u64; 4],
}

impl ValueHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Real and imaginary parts of the Gauss sum, `(e0 - e2, e1 - e3)`.
    pub fn gauss_sum(&self) -> (i64, i64) {
        let [e0, e1, e2, e3] = self.counts.map(|c| c as i64);
        (e0 - e2, e1 - e3)
    }
}

impl fmt::Display for ValueHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [e0, e1, e2, e3] = self.counts;
        write!(f, "{e0},{e1},{e2},{e3}")
    }
}

/// Octant ray for each Brown value, as an integer direction.
const OCTANT_RAYS: [(i64, i64); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

/// `(sign(e0 - e2), sign(e1 - e3))` to Brown value.
pub const COMPASS: [((i8, i8), u8); 8] = [
    ((1, 0), 0),
    ((1, 1), 1),
    ((0, 1), 2),
    ((-1, 1), 3),
    ((-1, 0), 4),
    ((-1, -1), 5),
    ((0, -1), 6),
    ((1, -1), 7),
];

/// Brown value of an integer Gauss sum `(real, imag)` over a form of
/// dimension `dim`.
pub fn brown_from_gauss_sum(real: i64, imag: i64, dim: usize) -> Result<BrownClass> {
    let norm = i128::from(real) * i128::from(real) + i128::from(imag) * i128::from(imag);
    if norm != 1i128 << dim {
        return Err(Error::GaussNorm {
            real,
            imag,
            norm,
            dim,
        });
    }
    OCTANT_RAYS
        .iter()
        .position(|&(dx, dy)| real * dy == imag * dx && real * dx + imag * dy > 0)
        .map(|beta| BrownClass(beta as u8))
        .ok_or(Error::NotOnOctant { real, imag })
}

/// Brown value from the signs of `(e0 - e2, e1 - e3)` alone.
pub fn brown_from_signs(real: i64, imag: i64) -> Result<BrownClass> {
    let signs = (real.signum() as i8, imag.signum() as i8);
    COMPASS
        .iter()
        .find(|(key, _)| *key == signs)
        .map(|&(_, beta)| BrownClass(beta))
        .ok_or(Error::NotOnOctant { real, imag })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enhancement {
    /// Bit `i` is the low bit of `e(v_i)`; always equals the form's diagonal.
    low: u64,
    /// Bit `i` is the high bit of `e(v_i)`.
    high: u64,
    form: Arc<IntersectionForm>,
}

impl Enhancement {
    /// `values[i]` is `e(v_i)` in `0..4` and must have the parity of
    /// `v_i.v_i`.
    pub fn new(form: Arc<IntersectionForm>, values: &[u8]) -> Result<Self> {
        if values.len() != form.dim() {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                actual: values.len(),
            });
        }
        let mut low = 0u64;
        let mut high = 0u64;
        for (index, &value) in values.iter().enumerate() {
            if value > 3 {
                return Err(Error::OutOfRange {
                    index,
                    value,
                    modulus: 4,
                });
            }
            let parity = form.entry(index, index);
            if value & 1 != parity {
                return Err(Error::IllegalValue {
                    index,
                    value,
                    parity,
                });
            }
            low |= u64::from(value & 1) << index;
            high |= u64::from(value >> 1) << index;
        }
        Ok(Self { low, high, form })
    }

    /// The enhancement whose basis value `i` is `v_i.v_i + 2 * bit_i(choice)`.
    pub fn from_choice(form: Arc<IntersectionForm>, choice: u64) -> Result<Self> {
        if choice & !low_mask(form.dim()) != 0 {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                actual: 64 - choice.leading_zeros() as usize,
            });
        }
        Ok(Self {
            low: form.diagonal(),
            high: choice,
            form,
        })
    }

    pub fn form(&self) -> &Arc<IntersectionForm> {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// The high bits of the basis values; together with the form this
    /// determines the enhancement.
    pub fn choice(&self) -> u64 {
        self.high
    }

    pub fn value_on_basis(&self, index: usize) -> u8 {
        (((self.low >> index) & 1) | (((self.high >> index) & 1) << 1)) as u8
    }

    pub fn values(&self) -> Vec<u8> {
        (0..self.dim()).map(|i| self.value_on_basis(i)).collect()
    }

    #[inline]
    pub(crate) fn eval_bits(&self, x: u64) -> u8 {
        let linear = (x & self.low).count_ones() + 2 * (x & self.high).count_ones();
        ((linear + 2 * self.form.upper_pairs(x)) & 3) as u8
    }

    pub fn evaluate(&self, x: &H1Class) -> Result<u8> {
        self.form.check_class(x)?;
        Ok(self.eval_bits(x.bits()))
    }

    /// Counts of each value over all `2^n` classes.
    pub fn histogram(&self) -> Result<ValueHistogram> {
        let dim = self.dim();
        if dim > ENUMERATION_LIMIT {
            return Err(Error::SizeLimit {
                dim,
                limit: ENUMERATION_LIMIT,
            });
        }
        // Gray-code walk: e(x + v_i) = e(x) + e(v_i) + 2 (x.v_i)
        let mut counts = [1u64, 0, 0, 0];
        let mut x = 0u64;
        let mut value = 0u8;
        for step in 1..(1u64 << dim) {
            let i = step.trailing_zeros() as usize;
            value = (value + self.value_on_basis(i) + 2 * parity(self.form.row(i) & x)) & 3;
            x ^= 1 << i;
            counts[value as usize] += 1;
        }
        Ok(ValueHistogram { counts })
    }

    pub fn brown_gauss(&self) -> Result<BrownClass> {
        let (real, imag) = self.histogram()?.gauss_sum();
        brown_from_gauss_sum(real, imag, self.dim())
    }

    pub fn brown_compass(&self) -> Result<BrownClass> {
        let (real, imag) = self.histogram()?.gauss_sum();
        brown_from_signs(real, imag)
    }

    /// Enhancement on the block sum of the two forms.
    pub fn direct_sum(&self, other: &Enhancement) -> Result<Enhancement> {
        let form = self.form.direct_sum(&other.form)?;
        let offset = self.dim();
        Ok(Enhancement {
            low: self.low | (other.low << offset),
            high: self.high | (other.high << offset),
            form: Arc::new(form),
        })
    }

    /// The enhancement `2q` induced by a spin structure.
    pub fn from_refinement(q: &Refinement) -> Result<Enhancement> {
        if !q.form().is_alternating() {
            return Err(Error::NotOrientable);
        }
        Ok(Enhancement {
            low: 0,
            high: q.bits(),
            form: Arc::clone(q.form()),
        })
    }

    /// Deletes the `index`-th projective-plane summand of `N_k` and caps
    /// the boundary with a disk. Returns the structure on `N_{k-1}` and the
    /// value the removed summand carried.
    pub fn remove_summand_and_cap(&self, index: usize) -> Result<(Enhancement, u8)> {
        let k = match self.form.standard_kind() {
            Some(SurfaceKind::Nonorientable(k)) => k,
            _ => return Err(Error::NotNonorientable),
        };
        if k < 2 {
            return Err(Error::GenusTooSmall { genus: k, min: 2 });
        }
        if index >= k {
            return Err(Error::IndexOutOfRange { index, dim: k });
        }
        let removed = self.value_on_basis(index);
        let below = low_mask(index);
        let squeeze = |bits: u64| (bits & below) | ((bits >> 1) & !below);
        let capped = Enhancement {
            low: squeeze(self.low) & low_mask(k - 1),
            high: squeeze(self.high) & low_mask(k - 1),
            form: Arc::new(IntersectionForm::identity(k - 1)?),
        };
        Ok((capped, removed))
    }

    /// Packs the basis values into a hashable key.
    pub fn key(&self) -> u128 {
        (u128::from(self.high) << 64) | u128::from(self.low)
    }
}

pub fn evaluate_enhancement(e: &Enhancement, x: &H1Class) -> Result<u8> {
    e.evaluate(x)
}

/// All `2^n` enhancements, ordered by [`Enhancement::choice`].
pub fn enumerate_enhancements(form: &Arc<IntersectionForm>) -> Result<Vec<Enhancement>> {
    let dim = form.dim();
    if dim > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            dim,
            limit: ENUMERATION_LIMIT,
        });
    }
    let low = form.diagonal();
    Ok((0..1u64 << dim)
        .map(|high| Enhancement {
            low,
            high,
            form: Arc::clone(form),
        })
        .collect())
}

pub fn value_histogram(e: &Enhancement) -> Result<ValueHistogram> {
    e.histogram()
}

pub fn brown_gauss(e: &Enhancement) -> Result<BrownClass> {
    e.brown_gauss()
}

pub fn brown_compass(e: &Enhancement) -> Result<BrownClass> {
    e.brown_compass()
}

pub fn direct_sum_enhancement(e1: &Enhancement, e2: &Enhancement) -> Result<Enhancement> {
    e1.direct_sum(e2)
}

pub fn from_refinement(q: &Refinement) -> Result<Enhancement> {
    Enhancement::from_refinement(q)
}

pub fn remove_summand_and_cap(e: &Enhancement, index: usize) -> Result<(Enhancement, u8)> {
    e.remove_summand_and_cap(index)
}
