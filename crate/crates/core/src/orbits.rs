//! Isometries of the intersection form, their action on structures, and
//! orbit partitions.
//!
//! An isometry acts on a structure by precomposition with its inverse,
//! `(A.s)(x) = s(A^{-1} x)`. Over Z/2 the orthogonal group of the identity
//! form is irregular, so the full group is computed by exhaustion at small
//! dimension and by closure of a generating set beyond that.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::enhancement::Enhancement;
use crate::error::{Error, Result};
use crate::forms::{low_mask, rank, H1Class, IntersectionForm};
use crate::refinement::Refinement;

/// Largest dimension for which the group is found by filtering all of
/// `M_n(Z/2)`.
pub const BRUTE_LIMIT: usize = 4;
/// Largest dimension for which generators are built.
pub const GENERATED_LIMIT: usize = 10;
/// Default cap on the order of a generated group closure.
pub const MAX_GROUP_ORDER: usize = 2_000_000;

/// An invertible linear map preserving the form, stored by the images of
/// the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    columns: Vec<u64>,
    inverse: Vec<u64>,
    form: Arc<IntersectionForm>,
}

impl Isometry {
    /// `columns[j]` is the encoding of `A v_j`.
    pub fn new(form: Arc<IntersectionForm>, columns: Vec<u64>) -> Result<Self> {
        let n = form.dim();
        if columns.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: columns.len(),
            });
        }
        if columns.iter().any(|&c| c & !low_mask(n) != 0) {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: n + 1,
            });
        }
        if !preserves(&form, &columns) {
            return Err(Error::NotIsometry);
        }
        let inverse = invert(&columns).ok_or(Error::Degenerate)?;
        Ok(Self {
            columns,
            inverse,
            form,
        })
    }

    /// `matrix[i][j]` is the coefficient of `v_i` in `A v_j`.
    pub fn from_matrix(form: Arc<IntersectionForm>, matrix: &[Vec<u8>]) -> Result<Self> {
        let n = form.dim();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: matrix.len(),
            });
        }
        let columns = (0..n)
            .map(|j| (0..n).fold(0u64, |acc, i| acc | (u64::from(matrix[i][j] & 1) << i)))
            .collect();
        Self::new(form, columns)
    }

    pub fn identity(form: Arc<IntersectionForm>) -> Self {
        let columns: Vec<u64> = (0..form.dim()).map(|j| 1u64 << j).collect();
        Self {
            inverse: columns.clone(),
            columns,
            form,
        }
    }

    /// Permutation of the basis: `v_j -> v_{perm[j]}`.
    pub fn permutation(form: Arc<IntersectionForm>, perm: &[usize]) -> Result<Self> {
        let n = form.dim();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::IndexOutOfRange { index: p, dim: n });
            }
        }
        Self::new(form, perm.iter().map(|&p| 1u64 << p).collect())
    }

    pub fn form(&self) -> &Arc<IntersectionForm> {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| ((self.columns[j] >> i) & 1) as u8).collect())
            .collect()
    }

    #[inline]
    pub(crate) fn apply_bits(&self, x: u64) -> u64 {
        apply(&self.columns, x)
    }

    #[inline]
    pub(crate) fn apply_inverse_bits(&self, x: u64) -> u64 {
        apply(&self.inverse, x)
    }

    pub fn apply(&self, x: &H1Class) -> Result<H1Class> {
        self.form.check_class(x)?;
        H1Class::new(self.dim(), self.apply_bits(x.bits()))
    }

    pub fn apply_inverse(&self, x: &H1Class) -> Result<H1Class> {
        self.form.check_class(x)?;
        H1Class::new(self.dim(), self.apply_inverse_bits(x.bits()))
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            columns: self.inverse.clone(),
            inverse: self.columns.clone(),
            form: Arc::clone(&self.form),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.form != other.form {
            return Err(Error::FormMismatch);
        }
        Ok(Isometry {
            columns: other.columns.iter().map(|&c| self.apply_bits(c)).collect(),
            inverse: self.inverse.iter().map(|&c| other.apply_inverse_bits(c)).collect(),
            form: Arc::clone(&self.form),
        })
    }

    /// `A^T M A = M`, recomputed from scratch.
    pub fn preserves_form(&self) -> bool {
        preserves(&self.form, &self.columns)
    }
}

#[inline]
fn apply(columns: &[u64], x: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = x;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        out ^= columns[j];
        rest &= rest - 1;
    }
    out
}

fn preserves(form: &IntersectionForm, columns: &[u64]) -> bool {
    let n = columns.len();
    (0..n).all(|i| (i..n).all(|j| form.pair(columns[i], columns[j]) == form.entry(i, j)))
}

/// Gauss-Jordan inverse of the matrix with the given columns.
fn invert(columns: &[u64]) -> Option<Vec<u64>> {
    let n = columns.len();
    if rank(columns) != n {
        return None;
    }
    // Row-reduce [A | I] working on rows of A.
    let mut rows: Vec<u64> = (0..n)
        .map(|i| (0..n).fold(0u64, |acc, j| acc | (((columns[j] >> i) & 1) << j)))
        .collect();
    let mut aug: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| (rows[r] >> col) & 1 == 1)?;
        rows.swap(col, pivot);
        aug.swap(col, pivot);
        for r in 0..n {
            if r != col && (rows[r] >> col) & 1 == 1 {
                rows[r] ^= rows[col];
                aug[r] ^= aug[col];
            }
        }
    }
    // aug now holds the rows of A^{-1}; transpose back to columns.
    Some(
        (0..n)
            .map(|j| (0..n).fold(0u64, |acc, i| acc | (((aug[i] >> j) & 1) << i)))
            .collect(),
    )
}

/// `x -> x + (x.v) v`. Requires `v != 0` and `v.v = 0`; when `v.v = 1` the
/// map sends `v` to zero.
pub fn transvection(form: &Arc<IntersectionForm>, v: &H1Class) -> Result<Isometry> {
    form.check_class(v)?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let v = v.bits();
    if form.pair(v, v) == 1 {
        return Err(Error::NonInvertibleTransvection);
    }
    let columns = (0..form.dim())
        .map(|j| {
            let e = 1u64 << j;
            if form.pair(e, v) == 1 {
                e ^ v
            } else {
                e
            }
        })
        .collect();
    Isometry::new(Arc::clone(form), columns)
}

/// Interchanges summands `i` and `j` of `N_k` (or any two basis vectors the
/// form treats alike).
pub fn summand_swap(form: &Arc<IntersectionForm>, i: usize, j: usize) -> Result<Isometry> {
    let n = form.dim();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, dim: n });
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i, j);
    Isometry::permutation(Arc::clone(form), &perm)
}

/// An isometry of `N_k` (`k >= 4`) taking `x_1` to the banded curve
/// `x_1 + x_2 + x_3`. Column `j` of the first four is the sum of the three
/// cores other than `x_{j-1}` (indices mod 4); the remaining summands are
/// fixed.
pub fn banding_isometry(k: usize) -> Result<Isometry> {
    if k < 4 {
        return Err(Error::GenusTooSmall { genus: k, min: 4 });
    }
    let form = Arc::new(IntersectionForm::identity(k)?);
    let mut columns: Vec<u64> = (0..k).map(|j| 1u64 << j).collect();
    for (j, column) in columns.iter_mut().take(4).enumerate() {
        *column = 0b1111 ^ (1 << ((j + 3) % 4));
    }
    Isometry::new(form, columns)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupMethod {
    /// Filter every matrix in `M_n(Z/2)`.
    Brute,
    /// Close up permutations and transvections under composition.
    Generated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupLimits {
    pub brute_dim: usize,
    pub generated_dim: usize,
    pub max_order: usize,
}

impl Default for GroupLimits {
    fn default() -> Self {
        Self {
            brute_dim: BRUTE_LIMIT,
            generated_dim: GENERATED_LIMIT,
            max_order: MAX_GROUP_ORDER,
        }
    }
}

/// Basis transpositions preserving the form, then transvections along
/// every nonzero isotropic vector, without duplicates.
pub fn generators(form: &Arc<IntersectionForm>, limits: &GroupLimits) -> Result<Vec<Isometry>> {
    let n = form.dim();
    if n > limits.generated_dim {
        return Err(Error::SizeLimit {
            dim: n,
            limit: limits.generated_dim,
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Ok(swap) = summand_swap(form, i, j) {
                if seen.insert(swap.columns.clone()) {
                    out.push(swap);
                }
            }
        }
    }
    for v in 1..(1u64 << n) {
        if form.pair(v, v) == 0 {
            let t = transvection(form, &H1Class::new(n, v)?)?;
            if seen.insert(t.columns.clone()) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// The full isometry group, sorted by column encoding.
pub fn isometry_group(form: &Arc<IntersectionForm>, method: GroupMethod) -> Result<Vec<Isometry>> {
    isometry_group_with_limits(form, method, &GroupLimits::default())
}

pub fn isometry_group_with_limits(
    form: &Arc<IntersectionForm>,
    method: GroupMethod,
    limits: &GroupLimits,
) -> Result<Vec<Isometry>> {
    let n = form.dim();
    let mut group = match method {
        GroupMethod::Brute => {
            if n > limits.brute_dim || n > 5 {
                return Err(Error::SizeLimit {
                    dim: n,
                    limit: limits.brute_dim.min(5),
                });
            }
            let column_space = 1u64 << n;
            let total = 1u64 << (n * n);
            let mut group = Vec::new();
            for code in 0..total {
                let columns: Vec<u64> = (0..n)
                    .map(|j| (code >> (j * n)) & (column_space - 1))
                    .collect();
                if let Ok(iso) = Isometry::new(Arc::clone(form), columns) {
                    group.push(iso);
                }
            }
            group
        }
        GroupMethod::Generated => {
            let gens = generators(form, limits)?;
            let identity = Isometry::identity(Arc::clone(form));
            let mut seen: HashSet<Vec<u64>> = HashSet::new();
            seen.insert(identity.columns.clone());
            let mut group = vec![identity];
            let mut cursor = 0;
            while cursor < group.len() {
                let element = group[cursor].clone();
                cursor += 1;
                for g in &gens {
                    let next = g.compose(&element)?;
                    if seen.insert(next.columns.clone()) {
                        if group.len() >= limits.max_order {
                            return Err(Error::GroupTooLarge {
                                limit: limits.max_order,
                            });
                        }
                        group.push(next);
                    }
                }
            }
            group
        }
    };
    for element in &group {
        assert!(element.preserves_form(), "group element fails A^T M A = M");
    }
    group.sort_by(|a, b| a.columns.cmp(&b.columns));
    Ok(group)
}

/// Structures an isometry can act on.
pub trait Actable: Sized {
    fn form(&self) -> &Arc<IntersectionForm>;
    /// `x -> self(A^{-1} x)`, stored by basis values.
    fn act_by(&self, a: &Isometry) -> Result<Self>;
    /// Hashable encoding of the basis values.
    fn key(&self) -> u128;
}

impl Actable for Refinement {
    fn form(&self) -> &Arc<IntersectionForm> {
        Refinement::form(self)
    }

    fn act_by(&self, a: &Isometry) -> Result<Self> {
        if a.form.as_ref() != self.form().as_ref() {
            return Err(Error::FormMismatch);
        }
        let bits = a
            .inverse
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &pre)| acc | (u64::from(self.eval_bits(pre)) << i));
        Refinement::from_bits(Arc::clone(self.form()), bits)
    }

    fn key(&self) -> u128 {
        u128::from(self.bits())
    }
}

impl Actable for Enhancement {
    fn form(&self) -> &Arc<IntersectionForm> {
        Enhancement::form(self)
    }

    fn act_by(&self, a: &Isometry) -> Result<Self> {
        if a.form.as_ref() != self.form().as_ref() {
            return Err(Error::FormMismatch);
        }
        let choice = a
            .inverse
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &pre)| acc | (u64::from(self.eval_bits(pre) >> 1) << i));
        Enhancement::from_choice(Arc::clone(self.form()), choice)
    }

    fn key(&self) -> u128 {
        Enhancement::key(self)
    }
}

pub fn act<S: Actable>(a: &Isometry, s: &S) -> Result<S> {
    s.act_by(a)
}

/// Orbits as sorted index lists into the input, ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Groups indices by a label, in order of first appearance.
    pub fn level_sets<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut index: HashMap<&T, usize> = HashMap::new();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for (i, label) in labels.iter().enumerate() {
            let slot = *index.entry(label).or_insert_with(|| {
                orbits.push(Vec::new());
                orbits.len() - 1
            });
            orbits[slot].push(i);
        }
        Self { orbits }
    }

    /// True if every part of `self` lies inside a part of `coarser`.
    pub fn refines(&self, coarser: &OrbitPartition) -> bool {
        let mut owner = HashMap::new();
        for (p, part) in coarser.orbits.iter().enumerate() {
            for &i in part {
                owner.insert(i, p);
            }
        }
        self.orbits.iter().all(|part| {
            let first = owner.get(&part[0]);
            first.is_some() && part.iter().all(|i| owner.get(i) == first)
        })
    }
}

/// BFS closure of each structure under `generators`. The structure set must
/// be closed under the action.
pub fn orbit_partition<S: Actable>(generators: &[Isometry], structures: &[S]) -> Result<OrbitPartition> {
    let index: HashMap<u128, usize> = structures
        .iter()
        .enumerate()
        .map(|(i, s)| (s.key(), i))
        .collect();
    let mut owner = vec![usize::MAX; structures.len()];
    let mut orbits = Vec::new();
    for start in 0..structures.len() {
        if owner[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        owner[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(current) = queue.pop_front() {
            for g in generators {
                let image = structures[current].act_by(g)?;
                let &next = index.get(&image.key()).ok_or(Error::FormMismatch)?;
                if owner[next] == usize::MAX {
                    owner[next] = id;
                    members.push(next);
                    queue.push_back(next);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(OrbitPartition { orbits })
}

/// Orbits under the full group (brute) or under the generating set.
pub fn orbit_partition_by<S: Actable>(
    form: &Arc<IntersectionForm>,
    method: GroupMethod,
    limits: &GroupLimits,
    structures: &[S],
) -> Result<OrbitPartition> {
    let acting = match method {
        GroupMethod::Brute => isometry_group_with_limits(form, method, limits)?,
        GroupMethod::Generated => generators(form, limits)?,
    };
    orbit_partition(&acting, structures)
}
