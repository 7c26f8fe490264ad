use std::fmt;

use serde::Serialize;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::gfp::PrimeField;

/// A point of ℙ^N(GF(p)), stored as its normalized representative: the
/// first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ProjPoint {
    coords: Vec<u32>,
}

impl ProjPoint {
    /// Normalizes `coords` (reduced mod p). Fails on the zero vector.
    pub fn new(field: PrimeField, coords: Vec<u32>) -> Result<Self> {
        let p = field.modulus();
        let mut coords: Vec<u32> = coords.into_iter().map(|c| c % p).collect();
        let lead = *coords.iter().find(|&&c| c != 0).ok_or(Error::ZeroVector)?;
        if lead != 1 {
            let inv = field.inv(lead).expect("nonzero");
            for c in coords.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
        Ok(ProjPoint { coords })
    }

    /// The `i`-th standard basis point of ℙ^N.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n + 1];
        coords[i] = 1;
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    /// Projective dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A projective subspace of ℙ^N(GF(p)), held as the reduced row-echelon
/// basis of its underlying linear subspace. Equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjSubspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// An operand of [`span`].
#[derive(Debug, Clone, Copy)]
pub enum Operand<'a> {
    Point(&'a ProjPoint),
    Subspace(&'a ProjSubspace),
}

impl ProjSubspace {
    pub fn empty(field: PrimeField, ambient_dim: usize) -> Self {
        ProjSubspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim + 1),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: PrimeField, ambient_dim: usize) -> Self {
        ProjSubspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim + 1),
            pivots: (0..=ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent, possibly zero) vectors of
    /// length `ambient_dim + 1`.
    pub fn from_vectors<V: AsRef<[u32]>>(
        field: PrimeField,
        ambient_dim: usize,
        vectors: &[V],
    ) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient_dim + 1, vectors)?;
        Ok(Self::from_matrix(m))
    }

    pub fn from_points(
        field: PrimeField,
        ambient_dim: usize,
        points: &[&ProjPoint],
    ) -> Result<Self> {
        let rows: Vec<&[u32]> = points.iter().map(|p| p.coords()).collect();
        Self::from_vectors(field, ambient_dim, &rows)
    }

    pub fn point(field: PrimeField, p: &ProjPoint) -> Self {
        Self::from_vectors(field, p.ambient_dim(), &[p.coords()]).expect("consistent length")
    }

    /// Row space of `m`.
    pub fn from_matrix(mut m: Matrix) -> Self {
        let ambient_dim = m.cols() - 1;
        let pivots = m.rref_in_place();
        let basis = m.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        ProjSubspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Vector-space dimension of the underlying linear subspace.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Projective dimension; −1 for the empty subspace.
    pub fn dim(&self) -> isize {
        self.pivots.len() as isize - 1
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim + 1 - self.rank()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its components along the basis; zero iff `v` lies in the
    /// linear span.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut v = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let coef = v[pc];
            if coef == 0 {
                continue;
            }
            let neg = f.neg(coef);
            for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                if b != 0 {
                    *x = f.mul_add(*x, neg, b);
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        v.len() == self.ambient_dim + 1 && self.residual(v).iter().all(|&x| x == 0)
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.contains_vector(p.coords())
    }

    pub fn contains(&self, other: &ProjSubspace) -> bool {
        other.ambient_dim == self.ambient_dim
            && (0..other.rank()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace. For an echelon basis these are the entries at the
    /// pivot columns.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains_vector(v)
            .then(|| self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// The vector `Σ coords[i] · basis[i]`.
    pub fn combine(&self, coords: &[u32]) -> Result<Vec<u32>> {
        self.basis.vec_mul(coords)
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &ProjSubspace) -> Result<ProjSubspace> {
        self.compatible(other)?;
        Ok(Self::from_matrix(self.basis.vstack(&other.basis)?))
    }

    pub fn join_point(&self, p: &ProjPoint) -> Result<ProjSubspace> {
        if p.coords().len() != self.ambient_dim + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim + 1,
                found: p.coords().len(),
            });
        }
        let extra = Matrix::from_rows(self.field(), self.ambient_dim + 1, &[p.coords()])?;
        Ok(Self::from_matrix(self.basis.vstack(&extra)?))
    }

    /// Intersection by the Zassenhaus algorithm: reduce `[A A; B 0]` and
    /// read the intersection off the rows whose left half vanishes.
    pub fn intersect(&self, other: &ProjSubspace) -> Result<ProjSubspace> {
        self.compatible(other)?;
        let f = self.field();
        let w = self.ambient_dim + 1;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(f, self.ambient_dim));
        }
        let mut m = Matrix::zeros(f, self.rank() + other.rank(), 2 * w);
        for i in 0..self.rank() {
            for (c, &v) in self.basis.row(i).iter().enumerate() {
                m.set(i, c, v);
                m.set(i, w + c, v);
            }
        }
        for i in 0..other.rank() {
            for (c, &v) in other.basis.row(i).iter().enumerate() {
                m.set(self.rank() + i, c, v);
            }
        }
        let pivots = m.rref_in_place();
        let rows: Vec<Vec<u32>> = pivots
            .iter()
            .enumerate()
            .filter(|&(_, &pc)| pc >= w)
            .map(|(i, _)| m.row(i)[w..].to_vec())
            .collect();
        Self::from_vectors(f, self.ambient_dim, &rows)
    }

    fn compatible(&self, other: &ProjSubspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field().modulus(),
                right: other.field().modulus(),
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Coordinate subspace spanned by the standard basis vectors at the
    /// non-pivot columns; always complementary to `self`.
    pub fn complement(&self) -> ProjSubspace {
        let mut is_pivot = vec![false; self.ambient_dim + 1];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let rows: Vec<Vec<u32>> = (0..=self.ambient_dim)
            .filter(|&c| !is_pivot[c])
            .map(|c| ProjPoint::basis(self.ambient_dim, c).into_coords())
            .collect();
        Self::from_vectors(self.field(), self.ambient_dim, &rows).expect("consistent length")
    }

    /// All points of the subspace, in lexicographic order of their
    /// normalized coordinates with respect to the echelon basis.
    pub fn points(&self) -> Vec<ProjPoint> {
        let f = self.field();
        if self.is_empty() {
            return Vec::new();
        }
        projective_points(f, self.rank() - 1)
            .into_iter()
            .map(|c| {
                let v = self.combine(c.coords()).expect("rank-length coordinates");
                ProjPoint::new(f, v).expect("independent basis")
            })
            .collect()
    }
}

impl fmt::Debug for ProjSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProjSubspace(dim {} in P^{}: ",
            self.dim(),
            self.ambient_dim
        )?;
        f.debug_list()
            .entries((0..self.rank()).map(|i| self.basis.row(i)))
            .finish()?;
        write!(f, ")")
    }
}

/// Smallest subspace containing every operand.
pub fn span(
    field: PrimeField,
    ambient_dim: usize,
    operands: &[Operand<'_>],
) -> Result<ProjSubspace> {
    let mut rows: Vec<&[u32]> = Vec::new();
    for op in operands {
        match op {
            Operand::Point(p) => {
                if p.ambient_dim() != ambient_dim {
                    return Err(Error::DimensionMismatch {
                        expected: ambient_dim,
                        found: p.ambient_dim(),
                    });
                }
                rows.push(p.coords());
            }
            Operand::Subspace(s) => {
                if s.ambient_dim() != ambient_dim {
                    return Err(Error::DimensionMismatch {
                        expected: ambient_dim,
                        found: s.ambient_dim(),
                    });
                }
                if s.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field.modulus(),
                        right: s.field().modulus(),
                    });
                }
                rows.extend((0..s.rank()).map(|i| s.basis().row(i)));
            }
        }
    }
    ProjSubspace::from_vectors(field, ambient_dim, &rows)
}

/// All points of ℙ^n(GF(p)) in canonical order: grouped by the position of
/// the leading 1 (first coordinate first), then lexicographically.
pub fn projective_points(field: PrimeField, n: usize) -> Vec<ProjPoint> {
    let p = field.modulus();
    let mut out = Vec::new();
    for lead in 0..=n {
        let free = n - lead;
        let count = (p as u64).pow(free as u32);
        for mut k in 0..count {
            let mut coords = vec![0u32; n + 1];
            coords[lead] = 1;
            for slot in (lead + 1..=n).rev() {
                coords[slot] = (k % p as u64) as u32;
                k /= p as u64;
            }
            out.push(ProjPoint { coords });
        }
    }
    out
}

/// All subspaces of ℙ^n(GF(p)) with underlying vector dimension `rank`,
/// enumerated by pivot pattern and then by free entries.
pub fn subspaces(field: PrimeField, n: usize, rank: usize) -> Vec<ProjSubspace> {
    use itertools::Itertools;
    let p = field.modulus() as u64;
    let width = n + 1;
    let mut out = Vec::new();
    if rank > width {
        return out;
    }
    for pivots in (0..width).combinations(rank) {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..width)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let count = p.pow(slots.len() as u32);
        for mut k in 0..count {
            let mut data = vec![0u32; rank * width];
            for (r, &pc) in pivots.iter().enumerate() {
                data[r * width + pc] = 1;
            }
            for &(r, c) in slots.iter().rev() {
                data[r * width + c] = (k % p) as u32;
                k /= p;
            }
            let basis = Matrix::new(field, rank, width, data).expect("sized");
            out.push(ProjSubspace {
                ambient_dim: n,
                basis,
                pivots: pivots.clone(),
            });
        }
    }
    out
}

/// Number of points of ℙ^m(GF(q)); zero for m < 0.
pub fn point_count(q: u64, m: isize) -> u64 {
    if m < 0 {
        0
    } else {
        (0..=m as u32).map(|i| q.pow(i)).sum()
    }
}
