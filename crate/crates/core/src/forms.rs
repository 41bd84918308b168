//! Surfaces in standard form, mod-2 first homology and the intersection
//! pairing.
//!
//! A class is a bit vector over a fixed ordered basis: bit `i` of the
//! encoding is the coefficient of basis vector `i`. Orientable surfaces use
//! the symplectic basis `a_1, b_1, ..., a_g, b_g` (so `a_i` is bit `2i - 2`
//! and `b_i` is bit `2i - 1`); nonorientable surfaces use the cores
//! `x_1, ..., x_k` of the projective-plane summands.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension a form can have; classes are packed into a `u64`.
pub const MAX_DIM: usize = 64;

/// Largest dimension for which [`enumerate_classes`] will run.
pub const ENUMERATION_LIMIT: usize = 24;

#[inline]
pub(crate) fn parity(word: u64) -> u8 {
    (word.count_ones() & 1) as u8
}

#[inline]
pub(crate) fn low_mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// A class in `H_1(F; Z/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct H1Class {
    bits: u64,
    dim: usize,
}

impl H1Class {
    pub fn new(dim: usize, bits: u64) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::SizeLimit { dim, limit: MAX_DIM });
        }
        if bits & !low_mask(dim) != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(Self { bits, dim })
    }

    pub fn zero(dim: usize) -> Self {
        Self { bits: 0, dim }
    }

    /// The `i`-th basis vector.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        Ok(Self {
            bits: 1 << index,
            dim,
        })
    }

    /// Builds a class from its coefficients, each reduced mod 2.
    pub fn from_coeffs(coeffs: &[u8]) -> Result<Self> {
        if coeffs.len() > MAX_DIM {
            return Err(Error::SizeLimit {
                dim: coeffs.len(),
                limit: MAX_DIM,
            });
        }
        let bits = coeffs
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (u64::from(c & 1) << i));
        Ok(Self {
            bits,
            dim: coeffs.len(),
        })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, index: usize) -> u8 {
        ((self.bits >> index) & 1) as u8
    }

    pub fn coeffs(&self) -> Vec<u8> {
        (0..self.dim).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }
}

/// Componentwise XOR. Panics if the dimensions differ.
impl Add for H1Class {
    type Output = H1Class;

    fn add(self, rhs: H1Class) -> H1Class {
        assert_eq!(self.dim, rhs.dim, "adding classes of different dimension");
        H1Class {
            bits: self.bits ^ rhs.bits,
            dim: self.dim,
        }
    }
}

/// Symmetric nondegenerate bilinear form over Z/2, stored row by row:
/// bit `j` of `rows[i]` is the entry `M[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionForm {
    rows: Vec<u64>,
}

impl IntersectionForm {
    /// Validates symmetry and invertibility.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let dim = rows.len();
        if dim > MAX_DIM {
            return Err(Error::SizeLimit {
                dim,
                limit: MAX_DIM,
            });
        }
        let mask = low_mask(dim);
        for (i, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: 64 - row.leading_zeros() as usize,
                });
            }
            for (j, &other) in rows.iter().enumerate() {
                if (row >> j) & 1 != (other >> i) & 1 {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        if rank(&rows) != dim {
            return Err(Error::Degenerate);
        }
        Ok(Self { rows })
    }

    /// Builds a form from a dense 0/1 matrix.
    pub fn from_matrix(matrix: &[Vec<u8>]) -> Result<Self> {
        let dim = matrix.len();
        let mut rows = Vec::with_capacity(dim);
        for row in matrix {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &v)| acc | (u64::from(v & 1) << j)),
            );
        }
        Self::from_rows(rows)
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    /// `g` hyperbolic blocks `[[0,1],[1,0]]` on `a_1, b_1, ..., a_g, b_g`.
    pub fn hyperbolic(genus: usize) -> Result<Self> {
        let dim = 2 * genus;
        if dim > MAX_DIM {
            return Err(Error::SizeLimit {
                dim,
                limit: MAX_DIM,
            });
        }
        let rows = (0..dim).map(|i| 1u64 << (i ^ 1)).collect();
        Ok(Self { rows })
    }

    /// The `k x k` identity on the projective-plane cores.
    pub fn identity(k: usize) -> Result<Self> {
        if k > MAX_DIM {
            return Err(Error::SizeLimit {
                dim: k,
                limit: MAX_DIM,
            });
        }
        Ok(Self {
            rows: (0..k).map(|i| 1u64 << i).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        ((self.rows[i] >> j) & 1) as u8
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Bit `i` is the self-intersection of basis vector `i`.
    pub fn diagonal(&self) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| acc | (r & (1 << i)))
    }

    /// True when every class has self-intersection zero.
    pub fn is_alternating(&self) -> bool {
        self.diagonal() == 0
    }

    /// `x^T M y` on raw encodings. No dimension checks.
    #[inline]
    pub fn pair(&self, x: u64, y: u64) -> u8 {
        let mut acc = 0u64;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc ^= self.rows[i] & y;
            rest &= rest - 1;
        }
        parity(acc)
    }

    /// Sum of `M[i][j]` over pairs `i < j` in the support of `x`.
    #[inline]
    pub(crate) fn upper_pairs(&self, x: u64) -> u32 {
        let mut total = 0u32;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += (self.rows[i] & rest).count_ones();
        }
        total
    }

    pub fn intersection(&self, x: &H1Class, y: &H1Class) -> Result<u8> {
        self.check_class(x)?;
        self.check_class(y)?;
        Ok(self.pair(x.bits, y.bits))
    }

    pub(crate) fn check_class(&self, x: &H1Class) -> Result<()> {
        if x.dim != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.dim,
            });
        }
        Ok(())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntersectionForm) -> Result<IntersectionForm> {
        let offset = self.dim();
        let dim = offset + other.dim();
        if dim > MAX_DIM {
            return Err(Error::SizeLimit {
                dim,
                limit: MAX_DIM,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << offset));
        Ok(Self { rows })
    }

    /// Recognizes the two standard shapes. The empty form is the sphere.
    pub fn standard_kind(&self) -> Option<SurfaceKind> {
        let dim = self.dim();
        if dim % 2 == 0 && Self::hyperbolic(dim / 2).ok().as_ref() == Some(self) {
            return Some(SurfaceKind::Orientable(dim / 2));
        }
        if dim >= 1 && Self::identity(dim).ok().as_ref() == Some(self) {
            return Some(SurfaceKind::Nonorientable(dim));
        }
        None
    }
}

/// Rank over Z/2 of a square bit matrix given by rows.
pub(crate) fn rank(rows: &[u64]) -> usize {
    let mut work = rows.to_vec();
    let mut rank = 0;
    for col in 0..64 {
        let bit = 1u64 << col;
        let Some(pivot) = (rank..work.len()).find(|&r| work[r] & bit != 0) else {
            continue;
        };
        work.swap(rank, pivot);
        let pivot_row = work[rank];
        for (r, row) in work.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Topological type of a closed surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceKind {
    /// Genus `g >= 0` orientable surface.
    Orientable(usize),
    /// Connected sum of `k >= 1` projective planes.
    Nonorientable(usize),
}

impl SurfaceKind {
    pub fn dim(&self) -> usize {
        match *self {
            SurfaceKind::Orientable(g) => 2 * g,
            SurfaceKind::Nonorientable(k) => k,
        }
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, SurfaceKind::Orientable(_))
    }
}

/// `S:<g>` or `N:<k>`.
impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Orientable(g) => write!(f, "S:{g}"),
            SurfaceKind::Nonorientable(k) => write!(f, "N:{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid surface `{0}`: expected S:<genus> or N:<genus>")]
pub struct ParseSurfaceError(pub String);

impl FromStr for SurfaceKind {
    type Err = ParseSurfaceError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = || ParseSurfaceError(s.to_string());
        let (tag, genus) = s.trim().split_once(':').ok_or_else(err)?;
        let genus: usize = genus.trim().parse().map_err(|_| err())?;
        match tag.trim() {
            "S" | "s" => Ok(SurfaceKind::Orientable(genus)),
            "N" | "n" if genus >= 1 => Ok(SurfaceKind::Nonorientable(genus)),
            _ => Err(err()),
        }
    }
}

/// A closed surface with its standard intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    kind: SurfaceKind,
    form: Arc<IntersectionForm>,
}

impl Surface {
    pub fn new(kind: SurfaceKind) -> Result<Self> {
        let form = match kind {
            SurfaceKind::Orientable(g) => IntersectionForm::hyperbolic(g)?,
            SurfaceKind::Nonorientable(0) => return Err(Error::ZeroNonorientableGenus),
            SurfaceKind::Nonorientable(k) => IntersectionForm::identity(k)?,
        };
        Ok(Self {
            kind,
            form: Arc::new(form),
        })
    }

    pub fn orientable(genus: usize) -> Result<Self> {
        Self::new(SurfaceKind::Orientable(genus))
    }

    pub fn nonorientable(genus: usize) -> Result<Self> {
        Self::new(SurfaceKind::Nonorientable(genus))
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn form(&self) -> &Arc<IntersectionForm> {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }
}

/// Shorthand for [`Surface::new`].
pub fn make_surface(kind: SurfaceKind) -> Result<Surface> {
    Surface::new(kind)
}

/// All `2^n` classes in ascending order of their integer encoding.
pub fn enumerate_classes(
    form: &IntersectionForm,
) -> Result<impl ExactSizeIterator<Item = H1Class>> {
    let dim = form.dim();
    if dim > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            dim,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok((0..1u32 << dim).map(move |bits| H1Class {
        bits: u64::from(bits),
        dim,
    }))
}
