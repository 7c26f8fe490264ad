use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::cap::AbstractSpace;
use crate::gfp::PrimeField;
use crate::projlin::{point_count, ProjPoint, ProjSubspace};
use crate::rnc::RationalNormalCurve;

/// An incidence isomorphism from an abstract projective space onto
/// ℙ^n(GF(p)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinatization {
    field: PrimeField,
    dim: usize,
    images: Vec<ProjPoint>,
    inverse: HashMap<ProjPoint, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoordinatizationDefect {
    WrongPointCount {
        expected: u64,
        found: usize,
    },
    /// No point outside the coordinate hyperplanes of the chosen basis.
    NoUnitPoint {
        basis: Vec<usize>,
    },
    /// Two known lines of the space whose coordinate lines do not meet in a
    /// single point although the lines themselves meet.
    InconsistentMeet {
        lines: [usize; 2],
    },
    /// A known line meets a face of the basis simplex in one point, but
    /// its coordinate line does not.
    InconsistentFace {
        line: usize,
    },
    Collision {
        points: [usize; 2],
    },
    Unreached {
        point: usize,
    },
    LineNotMapped {
        line: usize,
    },
}

/// Failure of [`coordinatize`], with the assignment built so far.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinatizationFailure {
    pub defect: CoordinatizationDefect,
    pub assigned: Vec<(usize, ProjPoint)>,
}

impl Coordinatization {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of abstract point `i`.
    pub fn image(&self, i: usize) -> &ProjPoint {
        &self.images[i]
    }

    pub fn images(&self) -> &[ProjPoint] {
        &self.images
    }

    pub fn preimage(&self, x: &ProjPoint) -> Option<usize> {
        self.inverse.get(x).copied()
    }

    /// Checks that `images` is a bijection onto ℙ^n carrying every line of
    /// `space` onto a line.
    pub fn from_images(
        field: PrimeField,
        space: &AbstractSpace,
        images: Vec<ProjPoint>,
    ) -> Result<Self, CoordinatizationFailure> {
        let dim = images.first().map_or(0, |x| x.ambient_dim());
        let fail = |defect, images: &[ProjPoint]| CoordinatizationFailure {
            defect,
            assigned: images.iter().cloned().enumerate().collect(),
        };
        let expected = point_count(field.modulus() as u64, dim as isize);
        if images.len() != space.num_points() || images.len() as u64 != expected {
            return Err(fail(
                CoordinatizationDefect::WrongPointCount {
                    expected,
                    found: space.num_points(),
                },
                &images,
            ));
        }
        let mut inverse = HashMap::with_capacity(images.len());
        for (i, x) in images.iter().enumerate() {
            if let Some(j) = inverse.insert(x.clone(), i) {
                return Err(fail(
                    CoordinatizationDefect::Collision { points: [j, i] },
                    &images,
                ));
            }
        }
        for (l, line) in space.lines().iter().enumerate() {
            let rows: Vec<&[u32]> = line.iter().map(|&i| images[i].coords()).collect();
            let span = ProjSubspace::from_vectors(field, dim, &rows).expect("sized");
            if span.dim() != 1 {
                return Err(fail(
                    CoordinatizationDefect::LineNotMapped { line: l },
                    &images,
                ));
            }
        }
        Ok(Coordinatization {
            field,
            dim,
            images,
            inverse,
        })
    }

    /// Coordinates on a single curve: the point with parameter `t/s` goes
    /// to `(s, t)`. Used when the associated space is a line, where incidence
    /// alone carries no information.
    pub fn from_curve(
        curve: &RationalNormalCurve,
        point_ids: &[usize],
        points: &[ProjPoint],
    ) -> Option<Self> {
        let field = curve.field();
        let mut images = vec![ProjPoint::basis(1, 0); points.len()];
        let mut inverse = HashMap::new();
        for &i in point_ids {
            let t = curve.param_of(&points[i])?;
            let [s, t] = t.homogeneous(field);
            let img = ProjPoint::new(field, vec![s, t]).expect("nonzero");
            inverse.insert(img.clone(), i);
            images[i] = img;
        }
        (inverse.len() == points.len()).then_some(Coordinatization {
            field,
            dim: 1,
            images,
            inverse,
        })
    }
}

/// Finds an incidence isomorphism from `space` onto ℙ^n(GF(p)), where `n`
/// is the dimension of `space`.
///
/// A basis `e_0, …, e_n` and a unit point are sent to the standard frame;
/// every other point is then forced, either as the meet of two lines that
/// already carry two coordinatized points, or as the meet of such a line
/// with a face spanned by some of the `e_i`. Over a prime field the frame
/// generates the whole space this way, and the isomorphism fixing a frame
/// is unique, so no search is needed: the result is checked line by line.
pub fn coordinatize(
    space: &AbstractSpace,
    field: PrimeField,
) -> Result<Coordinatization, CoordinatizationFailure> {
    let n = space.dimension();
    let p = field.modulus() as u64;
    let np = space.num_points();
    let expected = point_count(p, n as isize);
    if np as u64 != expected {
        return Err(CoordinatizationFailure {
            defect: CoordinatizationDefect::WrongPointCount {
                expected,
                found: np,
            },
            assigned: Vec::new(),
        });
    }
    if n == 0 {
        return Coordinatization::from_images(field, space, vec![ProjPoint::basis(0, 0)]);
    }

    let mut basis = vec![0usize];
    let mut closed = space.closure(&basis);
    while basis.len() <= n {
        let next = (0..np)
            .find(|x| closed.binary_search(x).is_err())
            .expect("dimension n");
        basis.push(next);
        closed = space.closure(&basis);
    }
    let faces: Vec<Vec<usize>> = (0..=n)
        .map(|i| {
            let others: Vec<usize> = basis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &b)| b)
                .collect();
            space.closure(&others)
        })
        .collect();
    let unit = (0..np).find(|x| faces.iter().all(|f| f.binary_search(x).is_err()));
    let Some(unit) = unit else {
        return Err(CoordinatizationFailure {
            defect: CoordinatizationDefect::NoUnitPoint { basis },
            assigned: Vec::new(),
        });
    };

    let mut state = Propagation::new(space, field, n);
    for k in 2..=n {
        for subset in (0..=n).combinations(k) {
            let pts: Vec<usize> = subset.iter().map(|&i| basis[i]).collect();
            let mut member = vec![false; np];
            for z in space.closure(&pts) {
                member[z] = true;
            }
            let axes: Vec<ProjPoint> = subset.iter().map(|&i| ProjPoint::basis(n, i)).collect();
            let coords = ProjSubspace::from_points(field, n, &axes.iter().collect::<Vec<_>>())
                .expect("sized");
            state.faces.push((member, coords));
        }
    }
    for (i, &b) in basis.iter().enumerate() {
        state
            .assign(b, ProjPoint::basis(n, i))
            .map_err(|d| state.failure(d))?;
    }
    state
        .assign(
            unit,
            ProjPoint::new(field, vec![1; n + 1]).expect("nonzero"),
        )
        .map_err(|d| state.failure(d))?;
    state.run().map_err(|d| state.failure(d))?;

    if let Some(point) = state.images.iter().position(Option::is_none) {
        return Err(state.failure(CoordinatizationDefect::Unreached { point }));
    }
    let images = state
        .images
        .into_iter()
        .map(|x| x.expect("all assigned"))
        .collect();
    Coordinatization::from_images(field, space, images)
}

struct Propagation<'a> {
    space: &'a AbstractSpace,
    field: PrimeField,
    n: usize,
    images: Vec<Option<ProjPoint>>,
    used: HashMap<ProjPoint, usize>,
    line_points: Vec<Vec<usize>>,
    line_coords: Vec<Option<ProjSubspace>>,
    known_lines: Vec<usize>,
    queue: Vec<usize>,
    /// Membership and coordinate span of faces of the basis simplex.
    faces: Vec<(Vec<bool>, ProjSubspace)>,
}

impl<'a> Propagation<'a> {
    fn new(space: &'a AbstractSpace, field: PrimeField, n: usize) -> Self {
        Propagation {
            space,
            field,
            n,
            images: vec![None; space.num_points()],
            used: HashMap::new(),
            line_points: vec![Vec::new(); space.num_lines()],
            line_coords: vec![None; space.num_lines()],
            known_lines: Vec::new(),
            queue: Vec::new(),
            faces: Vec::new(),
        }
    }

    fn failure(&self, defect: CoordinatizationDefect) -> CoordinatizationFailure {
        CoordinatizationFailure {
            defect,
            assigned: self
                .images
                .iter()
                .enumerate()
                .filter_map(|(i, x)| x.clone().map(|x| (i, x)))
                .collect(),
        }
    }

    fn assign(&mut self, x: usize, img: ProjPoint) -> Result<(), CoordinatizationDefect> {
        if let Some(&other) = self.used.get(&img) {
            return Err(CoordinatizationDefect::Collision { points: [other, x] });
        }
        self.used.insert(img.clone(), x);
        self.images[x] = Some(img);
        for &l in self.space.lines_through(x) {
            self.line_points[l].push(x);
            if self.line_points[l].len() == 2 {
                let pts: Vec<&ProjPoint> = self.line_points[l]
                    .iter()
                    .map(|&z| self.images[z].as_ref().expect("assigned"))
                    .collect();
                self.line_coords[l] =
                    Some(ProjSubspace::from_points(self.field, self.n, &pts).expect("sized"));
                self.known_lines.push(l);
                self.queue.push(l);
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), CoordinatizationDefect> {
        while let Some(l) = self.queue.pop() {
            let mut i = 0;
            while i < self.known_lines.len() {
                let m = self.known_lines[i];
                i += 1;
                if m == l {
                    continue;
                }
                let Some(z) = self.space.meet(l, m) else {
                    continue;
                };
                if self.images[z].is_some() {
                    continue;
                }
                let a = self.line_coords[l].as_ref().expect("known");
                let b = self.line_coords[m].as_ref().expect("known");
                let meet = a.intersect(b).expect("same ambient");
                if meet.dim() != 0 {
                    return Err(CoordinatizationDefect::InconsistentMeet { lines: [l, m] });
                }
                let img =
                    ProjPoint::new(self.field, meet.basis().row(0).to_vec()).expect("nonzero");
                self.assign(z, img)?;
            }
            for f in 0..self.faces.len() {
                let (member, face) = &self.faces[f];
                let inside: Vec<usize> = self
                    .space
                    .line(l)
                    .iter()
                    .copied()
                    .filter(|&z| member[z])
                    .collect();
                let [z] = inside[..] else { continue };
                if self.images[z].is_some() {
                    continue;
                }
                let a = self.line_coords[l].as_ref().expect("known");
                let meet = a.intersect(face).expect("same ambient");
                if meet.dim() != 0 {
                    return Err(CoordinatizationDefect::InconsistentFace { line: l });
                }
                let img =
                    ProjPoint::new(self.field, meet.basis().row(0).to_vec()).expect("nonzero");
                self.assign(z, img)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_isomorphism(space: &AbstractSpace, c: &Coordinatization) {
        let pts = crate::projlin::projective_points(c.field(), c.dim());
        let index: HashMap<&ProjPoint, usize> =
            pts.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut lines: Vec<Vec<usize>> = space
            .lines()
            .iter()
            .map(|l| {
                let mut v: Vec<usize> = l.iter().map(|&i| index[c.image(i)]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        lines.sort();
        let mut want = AbstractSpace::projective(c.field(), c.dim())
            .lines()
            .to_vec();
        want.sort();
        assert_eq!(lines, want);
    }

    #[test]
    fn fano_plane() {
        let f = PrimeField::new(2).unwrap();
        let lines = vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        let s = AbstractSpace::from_incidence(7, lines).unwrap();
        let c = coordinatize(&s, f).unwrap();
        check_isomorphism(&s, &c);
    }

    #[test]
    fn relabelled_projective_spaces() {
        for (p, n) in [(3u64, 2usize), (5, 2), (3, 3), (2, 4)] {
            let f = PrimeField::new(p).unwrap();
            let base = AbstractSpace::projective(f, n);
            // Reverse the point labels.
            let np = base.num_points();
            let lines: Vec<Vec<usize>> = base
                .lines()
                .iter()
                .map(|l| l.iter().map(|&x| np - 1 - x).collect())
                .collect();
            let s = AbstractSpace::from_incidence(np, lines).unwrap();
            let c = coordinatize(&s, f).unwrap();
            check_isomorphism(&s, &c);
        }
    }

    #[test]
    fn wrong_order_is_reported() {
        let s = AbstractSpace::projective(PrimeField::new(3).unwrap(), 2);
        let err = coordinatize(&s, PrimeField::new(5).unwrap()).unwrap_err();
        assert_eq!(
            err.defect,
            CoordinatizationDefect::WrongPointCount {
                expected: 31,
                found: 13
            }
        );
    }

    #[test]
    fn bad_images_are_rejected() {
        let f = PrimeField::new(3).unwrap();
        let s = AbstractSpace::projective(f, 2);
        let mut images = crate::projlin::projective_points(f, 2);
        images.swap(0, 5);
        images.swap(1, 7);
        let r = Coordinatization::from_images(f, &s, images);
        assert!(matches!(
            r.map_err(|e| e.defect),
            Err(CoordinatizationDefect::LineNotMapped { .. })
        ));
    }
}
