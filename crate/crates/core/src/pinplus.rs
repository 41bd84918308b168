//! Pin+ structures as Z/2-valued quadratic functions on mod-4 homology.
//!
//! `H_1(F; Z/4)` is presented by generators and 2-torsion relations: no
//! relations for `Sigma_g`, and the single relation `2(x_1 + ... + x_k)` for
//! `N_k`. A function is given by its values on the generators and extended
//! by `q(x + y) = q(x) + q(y) + x.y`, where the pairing of two mod-4 classes
//! is the mod-2 intersection of their reductions. It descends to homology
//! exactly when it vanishes on every relation, which happens for `N_k` iff
//! `k` is even.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forms::{low_mask, IntersectionForm, Surface, SurfaceKind, ENUMERATION_LIMIT};

/// Samples per relation used by the translation-invariance check.
const TRANSLATION_SAMPLES: usize = 32;
const TRANSLATION_SEED: u64 = 0x005e_ed0f_91a5;

/// Generators and relations for `H_1(F; Z/4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4HomologyModel {
    form: Arc<IntersectionForm>,
    relations: Vec<Vec<u8>>,
}

impl Z4HomologyModel {
    pub fn of_surface(surface: &Surface) -> Self {
        let relations = match surface.kind() {
            SurfaceKind::Orientable(_) => Vec::new(),
            SurfaceKind::Nonorientable(k) => vec![vec![2; k]],
        };
        Self {
            form: Arc::clone(surface.form()),
            relations,
        }
    }

    /// Relations must be 2-torsion: every coefficient in `{0, 2}`.
    pub fn new(form: Arc<IntersectionForm>, relations: Vec<Vec<u8>>) -> Result<Self> {
        for relation in &relations {
            if relation.len() != form.dim() {
                return Err(Error::DimensionMismatch {
                    expected: form.dim(),
                    actual: relation.len(),
                });
            }
            if let Some((index, &value)) = relation
                .iter()
                .enumerate()
                .find(|(_, &c)| c != 0 && c != 2)
            {
                return Err(Error::OutOfRange {
                    index,
                    value,
                    modulus: 2,
                });
            }
        }
        Ok(Self { form, relations })
    }

    pub fn generator_count(&self) -> usize {
        self.form.dim()
    }

    pub fn relations(&self) -> &[Vec<u8>] {
        &self.relations
    }

    pub fn form(&self) -> &Arc<IntersectionForm> {
        &self.form
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinPlusForm {
    values: u64,
    model: Arc<Z4HomologyModel>,
}

/// Outcome of the well-definedness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WellDefinedness {
    WellDefined,
    /// `q` is nonzero on relation `relation`, or changes under translation
    /// by it at `sample`.
    Violated {
        relation: usize,
        value: u8,
        sample: Option<Vec<u8>>,
    },
}

impl WellDefinedness {
    pub fn holds(&self) -> bool {
        matches!(self, WellDefinedness::WellDefined)
    }
}

impl PinPlusForm {
    pub fn new(model: Arc<Z4HomologyModel>, values: &[u8]) -> Result<Self> {
        if values.len() != model.generator_count() {
            return Err(Error::DimensionMismatch {
                expected: model.generator_count(),
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
        Ok(Self {
            values: bits,
            model,
        })
    }

    pub fn generator_values(&self) -> Vec<u8> {
        (0..self.model.generator_count())
            .map(|i| ((self.values >> i) & 1) as u8)
            .collect()
    }

    pub fn model(&self) -> &Arc<Z4HomologyModel> {
        &self.model
    }

    /// Extends the generator values to `x = sum c_i g_i`, `c_i` in Z/4.
    ///
    /// Writing `x` as a sum of `c_i` copies of each `g_i` and applying the
    /// identity to the list of summands gives
    /// `q(x) = sum c_i q(g_i) + sum C(c_i, 2) g_i.g_i + sum_{i<j} c_i c_j g_i.g_j`.
    pub fn evaluate(&self, x: &[u8]) -> Result<u8> {
        let n = self.model.generator_count();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: x.len(),
            });
        }
        let form = &self.model.form;
        let mut total = 0u32;
        for (i, &raw) in x.iter().enumerate() {
            let c = u32::from(raw % 4);
            total += c * ((self.values >> i) & 1) as u32;
            total += c * c.saturating_sub(1) / 2 * u32::from(form.entry(i, i));
            for (j, &other) in x.iter().enumerate().skip(i + 1) {
                total += c * u32::from(other % 4) * u32::from(form.entry(i, j));
            }
        }
        Ok((total & 1) as u8)
    }

    /// Checks `q(r) = 0` and `q(x + r) = q(x)` for every relation `r` and
    /// a fixed pseudorandom sample of `x`.
    pub fn is_well_defined(&self) -> WellDefinedness {
        let n = self.model.generator_count();
        let mut rng = ChaCha8Rng::seed_from_u64(TRANSLATION_SEED);
        for (index, relation) in self.model.relations.iter().enumerate() {
            let value = self.evaluate(relation).expect("relation length checked");
            if value != 0 {
                return WellDefinedness::Violated {
                    relation: index,
                    value,
                    sample: None,
                };
            }
            for _ in 0..TRANSLATION_SAMPLES {
                let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..4)).collect();
                let shifted: Vec<u8> = x
                    .iter()
                    .zip(relation)
                    .map(|(a, b)| (a + b) % 4)
                    .collect();
                let before = self.evaluate(&x).expect("sample length");
                let after = self.evaluate(&shifted).expect("sample length");
                if before != after {
                    return WellDefinedness::Violated {
                        relation: index,
                        value: before ^ after,
                        sample: Some(x),
                    };
                }
            }
        }
        WellDefinedness::WellDefined
    }
}

pub fn evaluate_pinplus(q: &PinPlusForm, x: &[u8]) -> Result<u8> {
    q.evaluate(x)
}

pub fn is_well_defined(q: &PinPlusForm) -> WellDefinedness {
    q.is_well_defined()
}

/// Every assignment of generator values that descends to homology.
pub fn enumerate_pinplus(surface: &Surface) -> Result<Vec<PinPlusForm>> {
    let n = surface.dim();
    if n > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            dim: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let model = Arc::new(Z4HomologyModel::of_surface(surface));
    Ok((0..1u64 << n)
        .map(|values| PinPlusForm {
            values: values & low_mask(n),
            model: Arc::clone(&model),
        })
        .filter(|q| q.is_well_defined().holds())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(kind: SurfaceKind) -> Arc<Z4HomologyModel> {
        Arc::new(Z4HomologyModel::of_surface(&Surface::new(kind).unwrap()))
    }

    #[test]
    fn evaluation_examples() {
        let n2 = model(SurfaceKind::Nonorientable(2));
        for values in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            let q = PinPlusForm::new(Arc::clone(&n2), &values).unwrap();
            assert_eq!(q.evaluate(&[0, 0]), Ok(0));
            assert_eq!(q.evaluate(&[2, 0]), Ok(1));
            // q(3v) = q(v) + v.v
            assert_eq!(q.evaluate(&[3, 0]), Ok(values[0] ^ 1));
        }
        let s1 = model(SurfaceKind::Orientable(1));
        let q = PinPlusForm::new(s1, &[1, 1]).unwrap();
        assert_eq!(q.evaluate(&[2, 0]), Ok(0));
        assert_eq!(q.evaluate(&[3, 0]), Ok(1));
        assert!(matches!(
            q.evaluate(&[1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn odd_genus_has_no_pin_plus() {
        let n3 = model(SurfaceKind::Nonorientable(3));
        for bits in 0..8u8 {
            let values: Vec<u8> = (0..3).map(|i| (bits >> i) & 1).collect();
            let q = PinPlusForm::new(Arc::clone(&n3), &values).unwrap();
            assert_eq!(q.evaluate(&[2, 2, 2]), Ok(1));
            assert_eq!(
                q.is_well_defined(),
                WellDefinedness::Violated {
                    relation: 0,
                    value: 1,
                    sample: None
                }
            );
        }
    }

    #[test]
    fn even_genus_and_orientable_are_well_defined() {
        let n2 = model(SurfaceKind::Nonorientable(2));
        let q = PinPlusForm::new(n2, &[1, 0]).unwrap();
        assert_eq!(q.evaluate(&[2, 2]), Ok(0));
        assert!(q.is_well_defined().holds());

        let s2 = model(SurfaceKind::Orientable(2));
        assert!(s2.relations().is_empty());
        let q = PinPlusForm::new(s2, &[1, 0, 1, 1]).unwrap();
        assert!(q.is_well_defined().holds());
    }

    #[test]
    fn enumeration_counts() {
        let count = |kind| enumerate_pinplus(&Surface::new(kind).unwrap()).unwrap().len();
        assert_eq!(count(SurfaceKind::Nonorientable(2)), 4);
        assert_eq!(count(SurfaceKind::Nonorientable(3)), 0);
        assert_eq!(count(SurfaceKind::Orientable(1)), 4);
        assert_eq!(count(SurfaceKind::Nonorientable(1)), 0);
    }

    #[test]
    fn relations_must_be_two_torsion() {
        let form = Arc::new(IntersectionForm::identity(2).unwrap());
        assert!(Z4HomologyModel::new(Arc::clone(&form), vec![vec![2, 0]]).is_ok());
        assert!(matches!(
            Z4HomologyModel::new(Arc::clone(&form), vec![vec![1, 0]]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            Z4HomologyModel::new(form, vec![vec![2]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
