//! Quadratic refinements of the intersection form (spin structures) and
//! the Arf invariant.
//!
//! A refinement is a function `q: H_1(F; Z/2) -> Z/2` with
//! `q(x + y) = q(x) + q(y) + x.y`. It is stored by its values on the basis;
//! for `x = sum_{i in S} v_i` the identity forces
//! `q(x) = sum_{i in S} q(v_i) + sum_{i < j in S} v_i.v_j`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::census::{Census, CENSUS_LIMIT};
use crate::error::{Error, Result};
use crate::forms::{low_mask, parity, H1Class, IntersectionForm, SurfaceKind, ENUMERATION_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Refinement {
    values: u64,
    form: Arc<IntersectionForm>,
}

impl Refinement {
    /// `values[i]` is `q(v_i)` and must be 0 or 1.
    pub fn new(form: Arc<IntersectionForm>, values: &[u8]) -> Result<Self> {
        if values.len() != form.dim() {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                actual: values.len(),
            });
        }
        let mut bits = 0u64;
        for (index, &value) in values.iter().enumerate() {
            if value > 1 {
                return Err(Error::OutOfRange {
                    index,
                    value,
                    modulus: 2,
                });
            }
            bits |= u64::from(value) << index;
        }
        Ok(Self { values: bits, form })
    }

    /// Basis values packed as bits, bit `i` being `q(v_i)`.
    pub fn from_bits(form: Arc<IntersectionForm>, bits: u64) -> Result<Self> {
        if bits & !low_mask(form.dim()) != 0 {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                actual: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(Self { values: bits, form })
    }

    pub fn bits(&self) -> u64 {
        self.values
    }

    pub fn values(&self) -> Vec<u8> {
        (0..self.dim())
            .map(|i| ((self.values >> i) & 1) as u8)
            .collect()
    }

    pub fn form(&self) -> &Arc<IntersectionForm> {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    #[inline]
    pub(crate) fn eval_bits(&self, x: u64) -> u8 {
        parity(x & self.values) ^ (self.form.upper_pairs(x) & 1) as u8
    }

    pub fn evaluate(&self, x: &H1Class) -> Result<u8> {
        self.form.check_class(x)?;
        Ok(self.eval_bits(x.bits()))
    }

    /// Number of classes taking value 0 and value 1, over all `2^n` classes.
    pub fn value_counts(&self) -> Result<[u64; 2]> {
        let dim = self.dim();
        if dim > ENUMERATION_LIMIT {
            return Err(Error::SizeLimit {
                dim,
                limit: ENUMERATION_LIMIT,
            });
        }
        // Gray-code walk: q(x + v_i) = q(x) + q(v_i) + x.v_i
        let mut counts = [1u64, 0];
        let mut x = 0u64;
        let mut value = 0u8;
        for step in 1..(1u64 << dim) {
            let i = step.trailing_zeros() as usize;
            value ^= ((self.values >> i) & 1) as u8 ^ parity(self.form.row(i) & x);
            x ^= 1 << i;
            counts[value as usize] += 1;
        }
        Ok(counts)
    }

    /// The value with the larger preimage.
    pub fn arf_majority(&self) -> Result<u8> {
        if !self.form.is_alternating() {
            return Err(Error::NotOrientable);
        }
        let [zeros, ones] = self.value_counts()?;
        match zeros.cmp(&ones) {
            std::cmp::Ordering::Greater => Ok(0),
            std::cmp::Ordering::Less => Ok(1),
            std::cmp::Ordering::Equal => Err(Error::ArfTie { count: zeros }),
        }
    }

    /// `sum q(a_i) q(b_i)` over the standard symplectic basis.
    pub fn arf_symplectic(&self) -> Result<u8> {
        match self.form.standard_kind() {
            Some(SurfaceKind::Orientable(_)) => {}
            Some(SurfaceKind::Nonorientable(_)) => return Err(Error::NotOrientable),
            None => return Err(Error::NotStandard),
        }
        let a_values = self.values & 0x5555_5555_5555_5555;
        let b_values = (self.values >> 1) & 0x5555_5555_5555_5555;
        Ok(parity(a_values & b_values))
    }
}

pub fn evaluate_refinement(q: &Refinement, x: &H1Class) -> Result<u8> {
    q.evaluate(x)
}

/// All `2^n` refinements ordered by the integer encoding of their basis
/// values.
pub fn enumerate_refinements(form: &Arc<IntersectionForm>) -> Result<Vec<Refinement>> {
    let dim = form.dim();
    if dim > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            dim,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok((0..1u64 << dim)
        .map(|values| Refinement {
            values,
            form: Arc::clone(form),
        })
        .collect())
}

pub fn arf_majority(q: &Refinement) -> Result<u8> {
    q.arf_majority()
}

pub fn arf_symplectic(q: &Refinement) -> Result<u8> {
    q.arf_symplectic()
}

/// Closed-form spin census: `2^{g-1}(2^g + 1)` structures with Arf 0 and
/// `2^{g-1}(2^g - 1)` with Arf 1.
pub fn spin_census_closed_form(genus: usize) -> Result<Census> {
    if genus == 0 {
        return Err(Error::GenusTooSmall { genus, min: 1 });
    }
    let half = 1u64 << (genus - 1);
    let full = 1u64 << genus;
    Ok(Census::from_pairs(2, [(0, half * (full + 1)), (1, half * (full - 1))]))
}

/// Arf census of `Sigma_g` by exhaustive enumeration of refinements.
pub fn spin_census_enumerated(genus: usize) -> Result<Census> {
    let dim = 2 * genus;
    if dim > CENSUS_LIMIT {
        return Err(Error::SizeLimit {
            dim,
            limit: CENSUS_LIMIT,
        });
    }
    let form = Arc::new(IntersectionForm::hyperbolic(genus)?);
    let arfs = (0..1u64 << dim)
        .into_par_iter()
        .map(|values| {
            Refinement {
                values,
                form: Arc::clone(&form),
            }
            .arf_majority()
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(Census::from_values(2, arfs))
}

/// Enumerated census, checked against the closed form.
pub fn spin_census(genus: usize) -> Result<Census> {
    let closed = spin_census_closed_form(genus)?;
    let enumerated = spin_census_enumerated(genus)?;
    for value in 0..2 {
        if closed.get(value) != enumerated.get(value) {
            return Err(Error::CensusMismatch {
                value,
                enumerated: enumerated.get(value),
                closed_form: closed.get(value),
            });
        }
    }
    Ok(enumerated)
}
