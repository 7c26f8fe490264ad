use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gfp::PrimeField;
use crate::projlin::{Matrix, ProjPoint};

/// Field automorphism part of a collineation. Prime fields have only the
/// identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldAutomorphism {
    Identity,
}

/// A collineation of ℙ^N(GF(p)): an invertible matrix up to scalars, stored
/// with its first nonzero entry equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Collineation {
    matrix: Matrix,
    automorphism: FieldAutomorphism,
}

impl Collineation {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || !matrix.is_invertible() {
            return Err(Error::InvalidArgument(
                "collineation matrix must be square and invertible".into(),
            ));
        }
        Ok(Collineation {
            matrix: matrix.canonical_scaling(),
            automorphism: FieldAutomorphism::Identity,
        })
    }

    pub fn identity(field: PrimeField, dim: usize) -> Self {
        Collineation {
            matrix: Matrix::identity(field, dim + 1),
            automorphism: FieldAutomorphism::Identity,
        }
    }

    /// A uniformly random element of PGL(N+1, p).
    pub fn random<R: Rng + ?Sized>(field: PrimeField, dim: usize, rng: &mut R) -> Self {
        let k = dim + 1;
        loop {
            let data = (0..k * k)
                .map(|_| rng.gen_range(0..field.modulus()))
                .collect();
            let m = Matrix::new(field, k, k, data).expect("sized");
            if m.is_invertible() {
                return Collineation::new(m).expect("invertible");
            }
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn automorphism(&self) -> FieldAutomorphism {
        self.automorphism
    }

    /// Projective dimension of the space acted on.
    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn apply(&self, x: &ProjPoint) -> Result<ProjPoint> {
        ProjPoint::new(self.matrix.field(), self.matrix.mul_vec(x.coords())?)
    }

    pub fn inverse(&self) -> Self {
        Collineation::new(self.matrix.inverse().expect("invertible")).expect("invertible")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Collineation) -> Result<Self> {
        Collineation::new(self.matrix.mul(&other.matrix)?)
    }
}

impl Serialize for Collineation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Collineation", 2)?;
        st.serialize_field("matrix", &self.matrix.row_vecs())?;
        st.serialize_field("automorphism", &self.automorphism)?;
        st.end()
    }
}
