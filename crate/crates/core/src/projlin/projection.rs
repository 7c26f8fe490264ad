use super::matrix::Matrix;
use super::subspace::{ProjPoint, ProjSubspace};
use crate::error::{Error, Result};

/// Projection from a center onto a complementary screen inside an ambient
/// subspace (the whole space by default).
///
/// A point `x` of the ambient decomposes uniquely as `x = c + s` with `c`
/// in the center and `s` in the screen; the image is `s`.
#[derive(Debug, Clone)]
pub struct Projection {
    center: ProjSubspace,
    screen: ProjSubspace,
    /// Rows: center basis followed by screen basis.
    frame: Matrix,
    /// Columns of `frame` on which it is invertible.
    solve_cols: Vec<usize>,
    solve_inv: Matrix,
}

impl Projection {
    pub fn new(center: &ProjSubspace, screen: &ProjSubspace) -> Result<Self> {
        let whole = ProjSubspace::whole(center.field(), center.ambient_dim());
        Self::within(&whole, center, screen)
    }

    pub fn within(
        ambient: &ProjSubspace,
        center: &ProjSubspace,
        screen: &ProjSubspace,
    ) -> Result<Self> {
        if !ambient.contains(center) || !ambient.contains(screen) {
            return Err(Error::NotComplementary);
        }
        if !center.intersect(screen)?.is_empty() || center.rank() + screen.rank() != ambient.rank()
        {
            return Err(Error::NotComplementary);
        }
        let frame = center.basis().vstack(screen.basis())?;
        let solve_cols = ProjSubspace::from_matrix(frame.clone()).pivots().to_vec();
        let solve_inv = frame
            .select_columns(&solve_cols)
            .inverse()
            .ok_or(Error::NotComplementary)?;
        Ok(Projection {
            center: center.clone(),
            screen: screen.clone(),
            frame,
            solve_cols,
            solve_inv,
        })
    }

    pub fn center(&self) -> &ProjSubspace {
        &self.center
    }

    pub fn screen(&self) -> &ProjSubspace {
        &self.screen
    }

    /// Image of a vector; `None` if it lies in the center.
    pub fn apply_vector(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        let f = self.frame.field();
        let rhs: Vec<u32> = self.solve_cols.iter().map(|&c| v[c]).collect();
        let lambda = self.solve_inv.vec_mul(&rhs)?;
        if self.frame.vec_mul(&lambda)? != v {
            return Err(Error::PointOutsideAmbient);
        }
        let k = self.center.rank();
        let s = self.screen.combine(&lambda[k..])?;
        debug_assert!(s.iter().all(|&x| x < f.modulus()));
        Ok(s.iter().any(|&x| x != 0).then_some(s))
    }

    pub fn apply(&self, x: &ProjPoint) -> Result<ProjPoint> {
        let s = self.apply_vector(x.coords())?.ok_or(Error::PointInCenter)?;
        ProjPoint::new(self.frame.field(), s)
    }

    /// Image of a subspace; the span of the images of its basis vectors.
    pub fn apply_subspace(&self, sub: &ProjSubspace) -> Result<ProjSubspace> {
        let mut rows = Vec::new();
        for i in 0..sub.rank() {
            if let Some(v) = self.apply_vector(sub.basis().row(i))? {
                rows.push(v);
            }
        }
        ProjSubspace::from_vectors(self.frame.field(), self.center.ambient_dim(), &rows)
    }
}

/// One-shot projection of `x` from `center` onto `screen`.
pub fn project_from(
    center: &ProjSubspace,
    screen: &ProjSubspace,
    x: &ProjPoint,
) -> Result<ProjPoint> {
    Projection::new(center, screen)?.apply(x)
}
