use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{binom, bounds_check, BoundsReport};
use super::space::{AbstractSpace, SpaceDefect};
use super::VeroneseanCap;
use crate::error::{Error, Result};
use crate::projlin::{point_count, ProjPoint, ProjSubspace};
use crate::rnc::{recognize_rnc, NotAnRnc, RationalNormalCurve};

const NONE: u32 = u32::MAX;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass { checked: u64 },
    Fail { witness: Witness },
    Skipped { reason: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }

    fn from_result(checked: u64, r: std::result::Result<(), Witness>) -> Self {
        match r {
            Ok(()) => Verdict::Pass { checked },
            Err(witness) => Verdict::Fail { witness },
        }
    }
}

/// A concrete reason for a failed check. Point and space numbers index
/// the cap's point list and rational-space list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    DuplicatePoint {
        first: usize,
        second: usize,
    },
    NotSpanning {
        dim: isize,
    },
    /// `culprit`, if present, is a listed point whose removal brings the
    /// span down to the right dimension.
    SpaceDimension {
        space: usize,
        dim: isize,
        culprit: Option<usize>,
    },
    UnlistedPoints {
        space: usize,
        points: Vec<usize>,
    },
    CurveMismatch {
        space: usize,
    },
    NotRationalNormalCurve {
        space: usize,
        reason: NotAnRnc,
    },
    TangentLine {
        space: usize,
        point: usize,
        reason: String,
    },
    PairNotCovered {
        points: [usize; 2],
    },
    PairInSeveralSpaces {
        points: [usize; 2],
        spaces: [usize; 2],
    },
    IntersectionOutsideCap {
        spaces: [usize; 2],
        point: ProjPoint,
    },
    TangentPlane {
        point: usize,
        space: usize,
        dim: isize,
    },
    TangentSpaceNotUnion {
        point: usize,
        outside: ProjPoint,
    },
    IndexNotConstant {
        points: [usize; 2],
        dims: [isize; 2],
    },
    AmbientDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    AssociatedSpace {
        defect: SpaceDefect,
    },
    AssociatedDimension {
        index: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionTable {
    pub ambient_dim: usize,
    /// `C(n+d, d) − 1` for the computed index `n`.
    pub expected_ambient_dim: Option<usize>,
    pub rational_space_dim: usize,
    pub associated_space_dim: Option<usize>,
    pub declared_index: Option<usize>,
}

/// Per-check verdicts, in the order the checks run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub p: u32,
    pub d: usize,
    pub points: usize,
    pub spaces: usize,
    pub structure: Verdict,
    pub curves: Verdict,
    pub v1: Verdict,
    pub v2: Verdict,
    pub v3: Verdict,
    pub tangent_spaces: Verdict,
    pub associated_space: Verdict,
    pub index: Option<usize>,
    pub dimensions: DimensionTable,
    pub bounds: Option<BoundsReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.stages().iter().all(|(_, v)| v.passed())
    }

    pub fn stages(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("structure", &self.structure),
            ("curves", &self.curves),
            ("v1", &self.v1),
            ("v2", &self.v2),
            ("v3", &self.v3),
            ("tangent_spaces", &self.tangent_spaces),
            ("associated_space", &self.associated_space),
        ]
    }

    /// The first failing check and its witness.
    pub fn first_failure(&self) -> Option<(&'static str, &Witness)> {
        self.stages()
            .into_iter()
            .find_map(|(name, v)| v.witness().map(|w| (name, w)))
    }
}

/// Verification state of one cap. Checks must run in order: structure,
/// curves, (V1), (V2), (V3), tangent spaces, associated space; each later
/// check reuses tables built by the earlier ones.
#[derive(Debug, Clone)]
pub struct CapAnalysis<'a> {
    cap: &'a VeroneseanCap,
    curves: Option<Vec<RationalNormalCurve>>,
    tangents: Option<Vec<Vec<ProjSubspace>>>,
    pairs: Option<Vec<u32>>,
    through: Vec<Vec<usize>>,
    index: Option<usize>,
    space: Option<AbstractSpace>,
}

impl<'a> CapAnalysis<'a> {
    pub fn new(cap: &'a VeroneseanCap) -> Self {
        let mut through = vec![Vec::new(); cap.points.len()];
        for (s, space) in cap.spaces.iter().enumerate() {
            for &x in &space.point_ids {
                through[x].push(s);
            }
        }
        CapAnalysis {
            cap,
            curves: None,
            tangents: None,
            pairs: None,
            through,
            index: None,
            space: None,
        }
    }

    pub fn cap(&self) -> &'a VeroneseanCap {
        self.cap
    }

    /// Distinct points, spanning, every space of dimension `d`, and every
    /// point of X inside a space listed by it.
    pub fn check_structure(&self) -> Verdict {
        let cap = self.cap;
        let result = (|| {
            let mut seen: HashMap<&ProjPoint, usize> = HashMap::new();
            for (i, x) in cap.points.iter().enumerate() {
                if let Some(&first) = seen.get(x) {
                    return Err(Witness::DuplicatePoint { first, second: i });
                }
                seen.insert(x, i);
            }
            let all = ProjSubspace::from_vectors(
                cap.field,
                cap.ambient_dim,
                &cap.points.iter().map(|x| x.coords()).collect::<Vec<_>>(),
            )
            .expect("sized");
            if all.rank() != cap.ambient_dim + 1 {
                return Err(Witness::NotSpanning { dim: all.dim() });
            }
            let per_space: Vec<std::result::Result<(), Witness>> = cap
                .spaces
                .par_iter()
                .enumerate()
                .map(|(s, space)| self.check_space(s, &space.subspace, &space.point_ids))
                .collect();
            per_space
                .into_iter()
                .collect::<std::result::Result<(), Witness>>()
        })();
        Verdict::from_result((cap.points.len() + cap.spaces.len()) as u64, result)
    }

    fn check_space(
        &self,
        s: usize,
        sub: &ProjSubspace,
        ids: &[usize],
    ) -> std::result::Result<(), Witness> {
        let cap = self.cap;
        let d = cap.degree as isize;
        if sub.dim() != d {
            let culprit = if sub.dim() == d + 1 {
                ids.iter().copied().find(|&drop| {
                    let rows: Vec<&[u32]> = ids
                        .iter()
                        .filter(|&&i| i != drop)
                        .map(|&i| cap.points[i].coords())
                        .collect();
                    ProjSubspace::from_vectors(cap.field, cap.ambient_dim, &rows)
                        .expect("sized")
                        .dim()
                        == d
                })
            } else {
                None
            };
            return Err(Witness::SpaceDimension {
                space: s,
                dim: sub.dim(),
                culprit,
            });
        }
        let unlisted: Vec<usize> = cap
            .points
            .iter()
            .enumerate()
            .filter(|(i, x)| ids.binary_search(i).is_err() && sub.contains_point(x))
            .map(|(i, _)| i)
            .collect();
        if !unlisted.is_empty() {
            return Err(Witness::UnlistedPoints {
                space: s,
                points: unlisted,
            });
        }
        Ok(())
    }

    /// Recognizes (or checks the attached) rational normal curve of every
    /// space, then tabulates tangent lines.
    pub fn recognize_curves(&mut self) -> Verdict {
        let cap = self.cap;
        let d = cap.degree;
        let curves: Vec<std::result::Result<RationalNormalCurve, Witness>> = cap
            .spaces
            .par_iter()
            .enumerate()
            .map(|(s, space)| {
                let pts: Vec<ProjPoint> = space
                    .point_ids
                    .iter()
                    .map(|&i| cap.points[i].clone())
                    .collect();
                match &space.curve {
                    Some(c) => {
                        let listed: HashSet<&ProjPoint> = pts.iter().collect();
                        let ok = c.ambient() == &space.subspace
                            && c.points().len() == listed.len()
                            && c.points().iter().all(|(_, x)| listed.contains(x));
                        if ok {
                            Ok(c.clone())
                        } else {
                            Err(Witness::CurveMismatch { space: s })
                        }
                    }
                    None => recognize_rnc(cap.field, &pts, &space.subspace, d).map_err(|reason| {
                        Witness::NotRationalNormalCurve {
                            space: s,
                            reason: remap(reason, &space.point_ids),
                        }
                    }),
                }
            })
            .collect();
        let curves = match curves
            .into_iter()
            .collect::<std::result::Result<Vec<_>, _>>()
        {
            Ok(c) => c,
            Err(witness) => return Verdict::Fail { witness },
        };
        let tangents: Vec<std::result::Result<Vec<ProjSubspace>, Witness>> = curves
            .par_iter()
            .enumerate()
            .map(|(s, c)| {
                cap.spaces[s]
                    .point_ids
                    .iter()
                    .map(|&x| {
                        c.tangent_line(&cap.points[x])
                            .map_err(|e| Witness::TangentLine {
                                space: s,
                                point: x,
                                reason: e.to_string(),
                            })
                    })
                    .collect()
            })
            .collect();
        let tangents = match tangents
            .into_iter()
            .collect::<std::result::Result<Vec<_>, _>>()
        {
            Ok(t) => t,
            Err(witness) => return Verdict::Fail { witness },
        };
        self.curves = Some(curves);
        self.tangents = Some(tangents);
        Verdict::Pass {
            checked: cap.spaces.len() as u64,
        }
    }

    /// (V1): every two points lie in exactly one rational space.
    pub fn check_v1(&mut self) -> Verdict {
        let cap = self.cap;
        let n = cap.points.len();
        let mut table = vec![NONE; n * n];
        for (s, space) in cap.spaces.iter().enumerate() {
            let ids = &space.point_ids;
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    let slot = table[a * n + b];
                    if slot != NONE {
                        return Verdict::Fail {
                            witness: Witness::PairInSeveralSpaces {
                                points: [a, b],
                                spaces: [slot as usize, s],
                            },
                        };
                    }
                    table[a * n + b] = s as u32;
                    table[b * n + a] = s as u32;
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if table[a * n + b] == NONE {
                    return Verdict::Fail {
                        witness: Witness::PairNotCovered { points: [a, b] },
                    };
                }
            }
        }
        self.pairs = Some(table);
        Verdict::Pass {
            checked: (n * n.saturating_sub(1) / 2) as u64,
        }
    }

    /// (V2): any two rational spaces meet inside X.
    pub fn check_v2(&self) -> Verdict {
        let cap = self.cap;
        let index = cap.point_index();
        let m = cap.spaces.len();
        let failure = (0..m).into_par_iter().find_map_first(|i| {
            let si = &cap.spaces[i].subspace;
            for j in i + 1..m {
                let sj = &cap.spaces[j].subspace;
                let stacked = si.basis().vstack(sj.basis()).expect("same width");
                if stacked.rank() == si.rank() + sj.rank() {
                    continue;
                }
                let meet = si.intersect(sj).expect("same ambient");
                if let Some(z) = meet.points().into_iter().find(|z| !index.contains_key(z)) {
                    return Some(Witness::IntersectionOutsideCap {
                        spaces: [i, j],
                        point: z,
                    });
                }
            }
            None
        });
        let checked = (m * m.saturating_sub(1) / 2) as u64;
        Verdict::from_result(checked, failure.map_or(Ok(()), Err))
    }

    /// (V3): for `x` off `ξ`, the tangent lines at `x` of the curves joining
    /// `x` to the points of `ξ` span a plane.
    pub fn check_v3(&self) -> Result<Verdict> {
        self.require_tables()?;
        let cap = self.cap;
        let failure = (0..cap.points.len()).into_par_iter().find_map_first(|x| {
            for (s, space) in cap.spaces.iter().enumerate() {
                if space.point_ids.binary_search(&x).is_ok() {
                    continue;
                }
                let plane = self.tangent_plane_unchecked(x, s);
                if plane.dim() != 2 {
                    return Some(Witness::TangentPlane {
                        point: x,
                        space: s,
                        dim: plane.dim(),
                    });
                }
            }
            None
        });
        let checked: u64 = (0..cap.points.len())
            .map(|x| (cap.spaces.len() - self.through[x].len()) as u64)
            .sum();
        Ok(Verdict::from_result(checked, failure.map_or(Ok(()), Err)))
    }

    fn require_tables(&self) -> Result<()> {
        if self.tangents.is_none() {
            return Err(Error::VerificationOrder("curves must be recognized first"));
        }
        if self.pairs.is_none() {
            return Err(Error::VerificationOrder("(V1) must pass first"));
        }
        Ok(())
    }

    fn tangent_plane_unchecked(&self, x: usize, s: usize) -> ProjSubspace {
        let cap = self.cap;
        let mut rows: Vec<&[u32]> = Vec::new();
        for &y in &cap.spaces[s].point_ids {
            let z = self.space_through(x, y).expect("V1 table");
            let t = self.tangent_line(z, x).expect("x on z");
            rows.extend((0..t.rank()).map(|r| t.basis().row(r)));
        }
        ProjSubspace::from_vectors(cap.field, cap.ambient_dim, &rows).expect("sized")
    }

    /// The plane `T(x, ξ)` for a point `x` off the space `ξ`.
    pub fn tangent_plane(&self, x: usize, space: usize) -> Result<ProjSubspace> {
        self.require_tables()?;
        if self.cap.spaces[space].point_ids.binary_search(&x).is_ok() {
            return Err(Error::InvalidArgument(format!(
                "point {x} lies on space {space}"
            )));
        }
        Ok(self.tangent_plane_unchecked(x, space))
    }

    /// Span of all tangent lines at `x`.
    pub fn tangent_space(&self, x: usize) -> Result<ProjSubspace> {
        let tangents = self
            .tangents
            .as_ref()
            .ok_or(Error::VerificationOrder("curves must be recognized first"))?;
        let cap = self.cap;
        let mut rows: Vec<&[u32]> = Vec::new();
        for &s in &self.through[x] {
            let pos = cap.spaces[s].point_ids.binary_search(&x).expect("listed");
            let t = &tangents[s][pos];
            rows.extend((0..t.rank()).map(|r| t.basis().row(r)));
        }
        ProjSubspace::from_vectors(cap.field, cap.ambient_dim, &rows)
    }

    /// Tangent spaces are unions of tangent lines, of constant dimension
    /// (the index `n`), and the ambient has dimension `C(n+d, d) − 1`.
    pub fn check_tangent_spaces(&mut self) -> Result<Verdict> {
        let tangents = self
            .tangents
            .as_ref()
            .ok_or(Error::VerificationOrder("curves must be recognized first"))?;
        let cap = self.cap;
        let p = cap.field.modulus() as u64;
        let dims: Vec<std::result::Result<isize, Witness>> = (0..cap.points.len())
            .into_par_iter()
            .map(|x| {
                let ts = self.tangent_space(x).expect("tables");
                let lines: HashSet<&ProjSubspace> = self.through[x]
                    .iter()
                    .map(|&s| {
                        let pos = cap.spaces[s].point_ids.binary_search(&x).expect("listed");
                        &tangents[s][pos]
                    })
                    .collect();
                let union = 1 + lines.len() as u64 * p;
                if union != point_count(p, ts.dim()) {
                    let outside = ts
                        .points()
                        .into_iter()
                        .find(|z| !lines.iter().any(|l| l.contains_point(z)))
                        .expect("count mismatch implies a point outside the union");
                    return Err(Witness::TangentSpaceNotUnion { point: x, outside });
                }
                Ok(ts.dim())
            })
            .collect();
        let mut index: Option<isize> = None;
        for (x, r) in dims.into_iter().enumerate() {
            let dim = match r {
                Ok(d) => d,
                Err(witness) => return Ok(Verdict::Fail { witness }),
            };
            match index {
                None => index = Some(dim),
                Some(first) if first != dim => {
                    return Ok(Verdict::Fail {
                        witness: Witness::IndexNotConstant {
                            points: [0, x],
                            dims: [first, dim],
                        },
                    })
                }
                _ => {}
            }
        }
        let n = index.unwrap_or(0).max(0) as usize;
        let expected = binom((n + cap.degree) as i64, cap.degree as i64) as usize - 1;
        if expected != cap.ambient_dim {
            return Ok(Verdict::Fail {
                witness: Witness::AmbientDimension {
                    index: n,
                    expected,
                    found: cap.ambient_dim,
                },
            });
        }
        self.index = Some(n);
        Ok(Verdict::Pass {
            checked: cap.points.len() as u64,
        })
    }

    /// Builds the associated projective space (points X, lines Ξ) and
    /// checks that its dimension equals the index.
    pub fn check_associated_space(&mut self) -> Result<Verdict> {
        if self.pairs.is_none() {
            return Err(Error::VerificationOrder("(V1) must pass first"));
        }
        let index = self
            .index
            .ok_or(Error::VerificationOrder("the index must be computed first"))?;
        let cap = self.cap;
        let space = match AbstractSpace::from_incidence(cap.points.len(), cap.space_point_ids()) {
            Ok(s) => s,
            Err(defect) => {
                return Ok(Verdict::Fail {
                    witness: Witness::AssociatedSpace { defect },
                })
            }
        };
        if space.dimension() != index {
            return Ok(Verdict::Fail {
                witness: Witness::AssociatedDimension {
                    index,
                    found: space.dimension(),
                },
            });
        }
        self.space = Some(space);
        Ok(Verdict::Pass {
            checked: cap.spaces.len() as u64,
        })
    }

    /// The rational space through two distinct points (after (V1)).
    pub fn space_through(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.cap.points.len();
        match self.pairs.as_ref()?[x * n + y] {
            NONE => None,
            s => Some(s as usize),
        }
    }

    pub fn spaces_through(&self, x: usize) -> &[usize] {
        &self.through[x]
    }

    /// The parametrization of a space's curve (after curve recognition).
    pub fn curve(&self, space: usize) -> Option<&RationalNormalCurve> {
        self.curves.as_ref().map(|c| &c[space])
    }

    /// Tangent line at `x` to the curve of `space`.
    pub fn tangent_line(&self, space: usize, x: usize) -> Option<&ProjSubspace> {
        let pos = self.cap.spaces[space].point_ids.binary_search(&x).ok()?;
        self.tangents.as_ref().map(|t| &t[space][pos])
    }

    pub fn index(&self) -> Option<usize> {
        self.index
    }

    pub fn abstract_space(&self) -> Option<&AbstractSpace> {
        self.space.as_ref()
    }

    /// Runs every check in order; later checks are skipped after a failure.
    pub fn run(&mut self) -> VerificationReport {
        let cap = self.cap;
        let skipped = || Verdict::Skipped {
            reason: "an earlier check failed".into(),
        };
        let structure = self.check_structure();
        let curves = if structure.passed() {
            self.recognize_curves()
        } else {
            skipped()
        };
        let v1 = if curves.passed() {
            self.check_v1()
        } else {
            skipped()
        };
        let v2 = if v1.passed() {
            self.check_v2()
        } else {
            skipped()
        };
        let v3 = if v2.passed() {
            self.check_v3().expect("tables ready")
        } else {
            skipped()
        };
        let tangent_spaces = if v3.passed() {
            self.check_tangent_spaces().expect("tables ready")
        } else {
            skipped()
        };
        let associated_space = if tangent_spaces.passed() {
            self.check_associated_space().expect("tables ready")
        } else {
            skipped()
        };
        let index = self.index;
        VerificationReport {
            p: cap.field.modulus(),
            d: cap.degree,
            points: cap.points.len(),
            spaces: cap.spaces.len(),
            structure,
            curves,
            v1,
            v2,
            v3,
            tangent_spaces,
            associated_space,
            index,
            dimensions: DimensionTable {
                ambient_dim: cap.ambient_dim,
                expected_ambient_dim: index
                    .map(|n| binom((n + cap.degree) as i64, cap.degree as i64) as usize - 1),
                rational_space_dim: cap.degree,
                associated_space_dim: self.space.as_ref().map(|s| s.dimension()),
                declared_index: cap.n_hint,
            },
            bounds: index
                .and_then(|n| bounds_check(n, cap.degree, cap.field.modulus() as u64).ok()),
        }
    }
}

fn remap(reason: NotAnRnc, ids: &[usize]) -> NotAnRnc {
    match reason {
        NotAnRnc::OutsideAmbient { index } => NotAnRnc::OutsideAmbient { index: ids[index] },
        NotAnRnc::DuplicatePoint { first, second } => NotAnRnc::DuplicatePoint {
            first: ids[first],
            second: ids[second],
        },
        NotAnRnc::DependentSubset { indices } => NotAnRnc::DependentSubset {
            indices: indices.into_iter().map(|i| ids[i]).collect(),
        },
        other => other,
    }
}

/// Runs the full verification pipeline.
pub fn verify(cap: &VeroneseanCap) -> VerificationReport {
    CapAnalysis::new(cap).run()
}
