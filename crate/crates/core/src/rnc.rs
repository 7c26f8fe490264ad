//! Rational normal curves: the standard curve ν(s,t) = (s^d, s^{d-1}t, …, t^d),
//! its projective images, recognition from a point set, tangent lines and
//! the cross-ratio on curve points.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::{crossratio_params, PrimeField, ProjParam};
use crate::projlin::{fit_projective_map, Matrix, ProjPoint, ProjSubspace, ProjectiveFit};

/// A rational normal curve of degree `d` in a `d`-dimensional subspace of ℙ^N.
#[derive(Debug, Clone)]
pub struct RationalNormalCurve {
    field: PrimeField,
    degree: usize,
    ambient: ProjSubspace,
    /// Standard coordinates to coordinates relative to `ambient`'s echelon basis.
    transform: Matrix,
    /// Standard coordinates to ℙ^N coordinates.
    embedding: Matrix,
    points: Vec<(ProjParam, ProjPoint)>,
    lookup: HashMap<ProjPoint, ProjParam>,
}

/// Why a point set failed recognition. Indices refer to the input slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotAnRnc {
    AmbientDimension { expected: usize, found: isize },
    OutsideAmbient { index: usize },
    DuplicatePoint { first: usize, second: usize },
    WrongCardinality { expected: usize, found: usize },
    DependentSubset { indices: Vec<usize> },
    NoProjectiveFit,
}

impl std::fmt::Display for NotAnRnc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotAnRnc::AmbientDimension { expected, found } => {
                write!(f, "ambient has dimension {found}, expected {expected}")
            }
            NotAnRnc::OutsideAmbient { index } => {
                write!(f, "point {index} lies outside the ambient")
            }
            NotAnRnc::DuplicatePoint { first, second } => {
                write!(f, "points {first} and {second} coincide")
            }
            NotAnRnc::WrongCardinality { expected, found } => {
                write!(f, "{found} points, a curve has {expected}")
            }
            NotAnRnc::DependentSubset { indices } => {
                write!(f, "points {indices:?} are linearly dependent")
            }
            NotAnRnc::NoProjectiveFit => {
                f.write_str("no projective image of the standard curve matches")
            }
        }
    }
}

/// `ν(s, t)` for the homogeneous parameter `(s, t)`.
pub fn standard_vector(field: PrimeField, degree: usize, param: ProjParam) -> Vec<u32> {
    let [s, t] = param.homogeneous(field);
    (0..=degree)
        .map(|k| field.mul(field.pow(s, (degree - k) as u64), field.pow(t, k as u64)))
        .collect()
}

impl RationalNormalCurve {
    /// The standard curve in ℙ^d. Requires `p + 1 ≥ d + 3` so that a
    /// recognition frame exists.
    pub fn standard(field: PrimeField, degree: usize) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        if field.line_size() < degree + 3 {
            return Err(Error::FieldTooSmall {
                p: field.modulus(),
                degree,
                reason: "need p + 1 >= d + 3 curve points",
            });
        }
        Self::standard_unchecked(field, degree)
    }

    /// The standard curve without the field-size requirement. Tangent lines
    /// are still defined algebraically, but recognition and the cross-ratio
    /// may be degenerate.
    pub fn standard_unchecked(field: PrimeField, degree: usize) -> Result<Self> {
        Self::from_embedding(field, Matrix::identity(field, degree + 1))
    }

    /// The curve `t ↦ embedding · ν(t)`; `embedding` is `(N+1) × (d+1)` of
    /// full column rank.
    pub fn from_embedding(field: PrimeField, embedding: Matrix) -> Result<Self> {
        let degree = embedding
            .cols()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidArgument("empty embedding".into()))?;
        let ambient = ProjSubspace::from_matrix(embedding.transpose());
        if ambient.rank() != degree + 1 {
            return Err(Error::Invariant(format!(
                "embedding of rank {} for a degree-{degree} curve",
                ambient.rank()
            )));
        }
        let columns: Vec<Vec<u32>> = (0..=degree)
            .map(|j| {
                ambient
                    .coordinates(&embedding.column(j))
                    .expect("column in its own span")
            })
            .collect();
        let transform = Matrix::from_columns(field, degree + 1, &columns)?;
        let mut points = Vec::with_capacity(field.line_size());
        let mut lookup = HashMap::with_capacity(field.line_size());
        for t in ProjParam::all(field) {
            let v = embedding.mul_vec(&standard_vector(field, degree, t))?;
            let pt = ProjPoint::new(field, v)?;
            if lookup.insert(pt.clone(), t).is_some() {
                return Err(Error::Invariant("curve points are not distinct".into()));
            }
            points.push((t, pt));
        }
        Ok(RationalNormalCurve {
            field,
            degree,
            ambient,
            transform,
            embedding,
            points,
            lookup,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient(&self) -> &ProjSubspace {
        &self.ambient
    }

    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    pub fn embedding(&self) -> &Matrix {
        &self.embedding
    }

    /// The `p + 1` points with their parameters, ordered `0, 1, …, p-1, ∞`.
    pub fn points(&self) -> &[(ProjParam, ProjPoint)] {
        &self.points
    }

    pub fn param_of(&self, x: &ProjPoint) -> Option<ProjParam> {
        self.lookup.get(x).copied()
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.lookup.contains_key(x)
    }

    pub fn point_at(&self, t: ProjParam) -> &ProjPoint {
        let idx = match t {
            ProjParam::Finite(v) => v.value() as usize,
            ProjParam::Infinity => self.field.modulus() as usize,
        };
        &self.points[idx].1
    }

    /// Tangent line at `x`: the span of `x` and both formal partial
    /// derivatives of the parametrization at `x`'s parameter.
    pub fn tangent_line(&self, x: &ProjPoint) -> Result<ProjSubspace> {
        let t = self.param_of(x).ok_or(Error::NotOnCurve)?;
        let f = self.field;
        let d = self.degree;
        let [s, t] = t.homogeneous(f);
        let mut ds = vec![0u32; d + 1];
        let mut dt = vec![0u32; d + 1];
        for k in 0..=d {
            let es = d - k;
            if es >= 1 {
                let c = f.reduce(es as i64);
                ds[k] = f.mul(c, f.mul(f.pow(s, es as u64 - 1), f.pow(t, k as u64)));
            }
            if k >= 1 {
                let c = f.reduce(k as i64);
                dt[k] = f.mul(c, f.mul(f.pow(s, es as u64), f.pow(t, k as u64 - 1)));
            }
        }
        let rows = [
            x.coords().to_vec(),
            self.embedding.mul_vec(&ds)?,
            self.embedding.mul_vec(&dt)?,
        ];
        let line = ProjSubspace::from_vectors(f, self.ambient.ambient_dim(), &rows)?;
        if line.dim() != 1 {
            return Err(Error::Invariant(format!(
                "tangent span at {x:?} has dimension {}",
                line.dim()
            )));
        }
        Ok(line)
    }

    /// Cross-ratio of four distinct curve points via their parameters.
    pub fn crossratio_points(&self, pts: [&ProjPoint; 4]) -> Result<ProjParam> {
        let mut params = [ProjParam::Infinity; 4];
        for (slot, x) in params.iter_mut().zip(pts) {
            *slot = self.param_of(x).ok_or(Error::NotOnCurve)?;
        }
        crossratio_params(self.field, params)
    }

    /// Projective dimension of the span of the tangent lines at
    /// `tangent_pts` together with `plain_pts`.
    pub fn span_dimension_profile(
        &self,
        tangent_pts: &[ProjPoint],
        plain_pts: &[ProjPoint],
    ) -> Result<isize> {
        let mut seen = HashSet::new();
        for x in tangent_pts.iter().chain(plain_pts) {
            if !self.contains(x) {
                return Err(Error::NotOnCurve);
            }
            if !seen.insert(x) {
                return Err(Error::InvalidArgument(format!("point {x:?} listed twice")));
            }
        }
        let mut rows: Vec<Vec<u32>> = plain_pts.iter().map(|x| x.coords().to_vec()).collect();
        for x in tangent_pts {
            let line = self.tangent_line(x)?;
            rows.extend(line.basis().row_vecs());
        }
        Ok(ProjSubspace::from_vectors(self.field, self.ambient.ambient_dim(), &rows)?.dim())
    }

    /// Every `(d+1)`-subset of curve points is independent (exhaustive).
    pub fn check_independence(&self) -> std::result::Result<(), Vec<usize>> {
        let n = self.ambient.ambient_dim();
        for subset in (0..self.points.len()).combinations(self.degree + 1) {
            let rows: Vec<&[u32]> = subset.iter().map(|&i| self.points[i].1.coords()).collect();
            let rank = ProjSubspace::from_vectors(self.field, n, &rows)
                .expect("sized")
                .rank();
            if rank != self.degree + 1 {
                return Err(subset);
            }
        }
        Ok(())
    }
}

/// Decides whether `points` is a rational normal curve of degree `d` in
/// `ambient`, and if so returns a parametrization.
///
/// The first three points receive the parameters ∞, 0, 1; every assignment
/// of distinct parameters to the next `d` points is tried, the transform is
/// fitted on those `d + 3` correspondences and accepted once it carries the
/// whole standard curve onto `points`.
pub fn recognize_rnc(
    field: PrimeField,
    points: &[ProjPoint],
    ambient: &ProjSubspace,
    degree: usize,
) -> std::result::Result<RationalNormalCurve, NotAnRnc> {
    if ambient.dim() != degree as isize || ambient.field() != field || degree == 0 {
        return Err(NotAnRnc::AmbientDimension {
            expected: degree,
            found: ambient.dim(),
        });
    }
    let mut local = Vec::with_capacity(points.len());
    let mut seen: HashMap<ProjPoint, usize> = HashMap::new();
    for (i, x) in points.iter().enumerate() {
        let coords = ambient
            .coordinates(x.coords())
            .ok_or(NotAnRnc::OutsideAmbient { index: i })?;
        if let Some(&first) = seen.get(x) {
            return Err(NotAnRnc::DuplicatePoint { first, second: i });
        }
        seen.insert(x.clone(), i);
        local.push(ProjPoint::new(field, coords).expect("nonzero coordinates of a point"));
    }
    if points.len() != field.line_size() {
        return Err(NotAnRnc::WrongCardinality {
            expected: field.line_size(),
            found: points.len(),
        });
    }
    for subset in (0..points.len()).combinations(degree + 1) {
        let rows: Vec<&[u32]> = subset.iter().map(|&i| local[i].coords()).collect();
        let rank = ProjSubspace::from_vectors(field, degree, &rows)
            .expect("sized")
            .rank();
        if rank != degree + 1 {
            return Err(NotAnRnc::DependentSubset { indices: subset });
        }
    }

    let target: HashSet<&ProjPoint> = local.iter().collect();
    let std_vectors: Vec<Vec<u32>> = ProjParam::all(field)
        .map(|t| standard_vector(field, degree, t))
        .collect();
    let maps_onto = |m: &Matrix| -> bool {
        m.is_invertible()
            && std_vectors.iter().all(|v| {
                let img = m.mul_vec(v).expect("sized");
                ProjPoint::new(field, img).is_ok_and(|q| target.contains(&q))
            })
    };

    let frame_len = (degree + 3).min(points.len());
    let fixed = [
        ProjParam::Infinity,
        ProjParam::Finite(field.zero()),
        ProjParam::Finite(field.one()),
    ];
    let free: Vec<ProjParam> = (2..field.modulus())
        .map(|v| ProjParam::Finite(field.elem(v as i64)))
        .collect();
    let std_point =
        |t: ProjParam| ProjPoint::new(field, standard_vector(field, degree, t)).expect("nonzero");
    let extra = frame_len.saturating_sub(3);
    for assignment in free.iter().copied().permutations(extra) {
        let pairs: Vec<(ProjPoint, ProjPoint)> = fixed
            .iter()
            .copied()
            .chain(assignment)
            .take(frame_len)
            .enumerate()
            .map(|(i, t)| (std_point(t), local[i].clone()))
            .collect();
        let fit = match fit_projective_map(field, &pairs, degree, degree) {
            Ok(fit) => fit,
            Err(_) => continue,
        };
        let candidate = match fit {
            ProjectiveFit::Unique(m) => Some(m),
            ProjectiveFit::Underdetermined { basis, .. } => search_span(field, &basis, &maps_onto),
            ProjectiveFit::Infeasible => None,
        };
        if let Some(m) = candidate.filter(|m| maps_onto(m)) {
            let embedding = ambient.basis().transpose().mul(&m).expect("sized");
            return RationalNormalCurve::from_embedding(field, embedding)
                .map_err(|_| NotAnRnc::NoProjectiveFit);
        }
    }
    Err(NotAnRnc::NoProjectiveFit)
}

// Small solution spaces only arise for tiny fields; enumerate them.
fn search_span(
    field: PrimeField,
    basis: &[Matrix],
    accept: &dyn Fn(&Matrix) -> bool,
) -> Option<Matrix> {
    const LIMIT: u64 = 1 << 14;
    let p = field.modulus() as u64;
    let total = p.checked_pow(basis.len() as u32).filter(|&t| t <= LIMIT)?;
    for mut k in 1..total {
        let mut acc = Matrix::zeros(field, basis[0].rows(), basis[0].cols());
        for b in basis {
            let c = (k % p) as u32;
            k /= p;
            if c != 0 {
                let data: Vec<u32> = acc
                    .data()
                    .iter()
                    .zip(b.data())
                    .map(|(&a, &x)| field.mul_add(a, c, x))
                    .collect();
                acc = Matrix::new(field, acc.rows(), acc.cols(), data).expect("sized");
            }
        }
        if accept(&acc) {
            return Some(acc);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn pt(f: PrimeField, c: &[u32]) -> ProjPoint {
        ProjPoint::new(f, c.to_vec()).unwrap()
    }

    pub(crate) fn random_invertible(f: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let m = Matrix::new(
                f,
                n,
                n,
                (0..n * n).map(|_| rng.gen_range(0..f.modulus())).collect(),
            )
            .unwrap();
            if m.is_invertible() {
                return m;
            }
        }
    }

    #[test]
    fn standard_conic_points() {
        let f = gf(5);
        let c = RationalNormalCurve::standard(f, 2).unwrap();
        let got: Vec<&[u32]> = c.points().iter().map(|(_, x)| x.coords()).collect();
        let want: Vec<&[u32]> = vec![
            &[1, 0, 0],
            &[1, 1, 1],
            &[1, 2, 4],
            &[1, 3, 4],
            &[1, 4, 1],
            &[0, 0, 1],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn standard_twisted_cubic_points() {
        let f = gf(7);
        let c = RationalNormalCurve::standard(f, 3).unwrap();
        assert_eq!(c.points().len(), 8);
        for (t, x) in c.points() {
            match t {
                ProjParam::Finite(v) => {
                    let v = v.value();
                    assert_eq!(x.coords(), &[1, v, f.pow(v, 2), f.pow(v, 3)]);
                }
                ProjParam::Infinity => assert_eq!(x.coords(), &[0, 0, 0, 1]),
            }
        }
    }

    #[test]
    fn small_field_rejected() {
        assert!(matches!(
            RationalNormalCurve::standard(gf(3), 2),
            Err(Error::FieldTooSmall { .. })
        ));
    }

    #[test]
    fn conic_tangent_at_origin() {
        let f = gf(5);
        let c = RationalNormalCurve::standard(f, 2).unwrap();
        let t = c.tangent_line(&pt(f, &[1, 0, 0])).unwrap();
        let want = ProjSubspace::from_vectors(f, 2, &[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(t, want);
        assert_eq!(c.tangent_line(&pt(f, &[0, 1, 0])), Err(Error::NotOnCurve));
    }

    #[test]
    fn char_two_conic_tangents_meet_in_nucleus() {
        let f = gf(2);
        let c = RationalNormalCurve::standard_unchecked(f, 2).unwrap();
        let nucleus = pt(f, &[0, 1, 0]);
        for (_, x) in c.points() {
            assert!(c.tangent_line(x).unwrap().contains_point(&nucleus));
        }
    }

    #[test]
    fn tangents_meet_curve_once() {
        for (d, p) in [(2, 5), (3, 7), (2, 7), (4, 11)] {
            let f = gf(p);
            let c = RationalNormalCurve::standard(f, d).unwrap();
            for (_, x) in c.points() {
                let t = c.tangent_line(x).unwrap();
                let hits: Vec<_> = c
                    .points()
                    .iter()
                    .filter(|(_, y)| t.contains_point(y))
                    .collect();
                assert_eq!(hits.len(), 1);
                assert_eq!(&hits[0].1, x);
            }
        }
    }

    #[test]
    fn twisted_cubic_tangent_at_one() {
        // ν = (1,1,1,1); ∂s ν = (3,2,1,0); ∂t ν = (0,1,2,3).
        let f = gf(7);
        let c = RationalNormalCurve::standard(f, 3).unwrap();
        let x = pt(f, &[1, 1, 1, 1]);
        let want = ProjSubspace::from_vectors(f, 3, &[[1, 1, 1, 1], [3, 2, 1, 0]]).unwrap();
        assert_eq!(c.tangent_line(&x).unwrap(), want);
    }

    #[test]
    fn recognizes_random_images() {
        let f = gf(5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let std = RationalNormalCurve::standard(f, 2).unwrap();
        for _ in 0..20 {
            let m = random_invertible(f, 3, &mut rng);
            let image: Vec<ProjPoint> = std
                .points()
                .iter()
                .map(|(_, x)| pt(f, &m.mul_vec(x.coords()).unwrap()))
                .collect();
            let whole = ProjSubspace::whole(f, 2);
            let c = recognize_rnc(f, &image, &whole, 2).unwrap();
            let got: HashSet<_> = c.points().iter().map(|(_, x)| x.clone()).collect();
            let want: HashSet<_> = image.iter().cloned().collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn collinear_triple_is_witnessed() {
        let f = gf(5);
        let pts: Vec<ProjPoint> = [
            [1, 0, 0],
            [0, 1, 0],
            [1, 1, 0],
            [0, 0, 1],
            [1, 2, 3],
            [1, 3, 1],
        ]
        .iter()
        .map(|c| pt(f, c))
        .collect();
        let err = recognize_rnc(f, &pts, &ProjSubspace::whole(f, 2), 2).unwrap_err();
        assert_eq!(
            err,
            NotAnRnc::DependentSubset {
                indices: vec![0, 1, 2]
            }
        );
    }

    #[test]
    fn wrong_cardinality_and_outside() {
        let f = gf(5);
        let c = RationalNormalCurve::standard(f, 2).unwrap();
        let pts: Vec<ProjPoint> = c.points().iter().take(5).map(|(_, x)| x.clone()).collect();
        assert_eq!(
            recognize_rnc(f, &pts, &ProjSubspace::whole(f, 2), 2).unwrap_err(),
            NotAnRnc::WrongCardinality {
                expected: 6,
                found: 5
            }
        );
        let line = ProjSubspace::from_vectors(f, 2, &[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert!(matches!(
            recognize_rnc(f, &pts, &line, 2),
            Err(NotAnRnc::AmbientDimension { .. })
        ));
    }

    #[test]
    fn replacing_a_conic_point_breaks_the_arc() {
        // Over odd GF(p) every (p+1)-arc is a conic, so a modified conic
        // must contain a collinear triple.
        let f = gf(7);
        let std = RationalNormalCurve::standard(f, 2).unwrap();
        let whole = ProjSubspace::whole(f, 2);
        for z in crate::projlin::projective_points(f, 2)
            .into_iter()
            .filter(|z| !std.contains(z))
        {
            let mut pts: Vec<ProjPoint> = std.points().iter().map(|(_, x)| x.clone()).collect();
            pts[7] = z;
            assert!(matches!(
                recognize_rnc(f, &pts, &whole, 2),
                Err(NotAnRnc::DependentSubset { .. })
            ));
        }
    }

    #[test]
    fn span_dimensions_small() {
        let f = gf(5);
        let c = RationalNormalCurve::standard(f, 2).unwrap();
        let pts: Vec<ProjPoint> = c.points().iter().take(3).map(|(_, x)| x.clone()).collect();
        assert_eq!(c.span_dimension_profile(&[], &pts).unwrap(), 2);

        let f = gf(7);
        let c = RationalNormalCurve::standard(f, 3).unwrap();
        let p: Vec<ProjPoint> = c.points().iter().map(|(_, x)| x.clone()).collect();
        assert_eq!(c.span_dimension_profile(&p[..1], &p[1..2]).unwrap(), 2);
        assert_eq!(c.span_dimension_profile(&p[..2], &[]).unwrap(), 3);
    }
}
