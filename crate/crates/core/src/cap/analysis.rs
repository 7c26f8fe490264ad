use itertools::Itertools;
use serde::Serialize;

use super::bounds::{binom, bounds_check};
use super::space::AbstractSpace;
use super::VeroneseanCap;
use crate::error::{Error, Result};
use crate::gfp::{PrimeField, ProjParam};
use crate::projlin::{point_count, ProjPoint, ProjSubspace};
use crate::rnc::standard_vector;

/// Hyperplanes of ℙ^n dual to points of the standard rational normal curve:
/// `Σ_k s^{n-k} t^k x_k = 0` for each parameter `(s, t)`. `coords[i]` gives
/// the coordinates of point `i`; each hyperplane is returned as the sorted
/// list of point ids it contains.
pub fn dual_rnc_hyperplanes(
    field: PrimeField,
    coords: &[ProjPoint],
    params: &[ProjParam],
) -> Vec<Vec<usize>> {
    let n = coords.first().map_or(0, |c| c.ambient_dim());
    params
        .iter()
        .map(|&t| {
            let normal = standard_vector(field, n, t);
            coords
                .iter()
                .enumerate()
                .filter(|(_, x)| {
                    x.coords()
                        .iter()
                        .zip(&normal)
                        .fold(0, |acc, (&a, &b)| field.mul_add(acc, a, b))
                        == 0
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

/// Checks that every `k` of the hyperplanes meet in a subspace of
/// dimension `n − k` (empty when `k > n`).
fn check_general_position(space: &AbstractSpace, p: u64, hyperplanes: &[Vec<usize>]) -> Result<()> {
    let n = space.dimension() as isize;
    for (i, h) in hyperplanes.iter().enumerate() {
        if !space.is_subspace(h) || space.span_dimension(h) != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "hyperplane {i} is not a hyperplane of the associated space"
            )));
        }
    }
    for k in 2..=hyperplanes.len() {
        for subset in (0..hyperplanes.len()).combinations(k) {
            let meet = subset[1..]
                .iter()
                .fold(hyperplanes[subset[0]].clone(), |acc, &j| {
                    intersect_sorted(&acc, &hyperplanes[j])
                });
            if meet.len() as u64 != point_count(p, n - k as isize) {
                return Err(Error::NotGeneralPosition { subset });
            }
        }
    }
    Ok(())
}

/// Codimensions of the spans of the subcaps on a hyperplane family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodimProfile {
    /// `codims[i-1]` = codimension of `⟨π_1, …, π_i⟩` in the ambient.
    pub codims: Vec<usize>,
    /// `C(n+d−i, d−i)`.
    pub expected: Vec<usize>,
    /// `identity[i-1]`: `π_i ∩ ⟨π_1, …, π_{i−1}⟩ = ⟨π_i ∩ π_1, …, π_i ∩ π_{i−1}⟩`.
    pub identity: Vec<bool>,
}

impl CodimProfile {
    pub fn holds(&self) -> bool {
        self.codims == self.expected && self.identity.iter().all(|&b| b)
    }
}

/// For hyperplanes `π̄_1, …, π̄_k` of the associated space in general
/// position, the codimension of each partial span `⟨π_1, …, π_i⟩` of the
/// corresponding subcaps, together with the intersection identity.
pub fn codim_profile(
    cap: &VeroneseanCap,
    space: &AbstractSpace,
    hyperplanes: &[Vec<usize>],
) -> Result<CodimProfile> {
    let field = cap.field();
    let p = field.modulus() as u64;
    let hs: Vec<Vec<usize>> = hyperplanes
        .iter()
        .map(|h| h.iter().copied().sorted().dedup().collect())
        .collect();
    check_general_position(space, p, &hs)?;
    let n = space.dimension();
    let d = cap.degree();
    let big_n = cap.ambient_dim();
    let spans: Vec<ProjSubspace> = hs
        .iter()
        .map(|h| {
            let rows: Vec<&[u32]> = h.iter().map(|&i| cap.points()[i].coords()).collect();
            ProjSubspace::from_vectors(field, big_n, &rows)
        })
        .collect::<Result<_>>()?;
    let mut codims = Vec::new();
    let mut expected = Vec::new();
    let mut identity = Vec::new();
    let mut acc = ProjSubspace::empty(field, big_n);
    for (i, pi) in spans.iter().enumerate() {
        let lhs = pi.intersect(&acc)?;
        let mut rhs = ProjSubspace::empty(field, big_n);
        for pj in &spans[..i] {
            rhs = rhs.join(&pi.intersect(pj)?)?;
        }
        identity.push(lhs == rhs);
        acc = acc.join(pi)?;
        codims.push(big_n - acc.dim() as usize);
        let k = i as i64 + 1;
        expected.push(binom(n as i64 + d as i64 - k, d as i64 - k) as usize);
    }
    Ok(CodimProfile {
        codims,
        expected,
        identity,
    })
}

/// Lines through a point that avoid triple intersections of a hyperplane
/// family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecantReport {
    pub point: usize,
    pub lines_through: usize,
    /// Lines through `point` each of whose points lies in at most two of
    /// the hyperplanes.
    pub qualifying: Vec<usize>,
    /// Points lying in three or more hyperplanes.
    pub heavy_points: usize,
    /// `2 + Σ_{i=2}^{min(n−1,d)} (−1)^i C(d+1, i+1) (p^{n−i} − 1)/(p − 1)`.
    pub inclusion_exclusion: i128,
}

impl SecantReport {
    /// Each heavy point spoils at most one line through `point`, and two
    /// qualifying lines exist whenever the counting inequality holds.
    pub fn consistent(&self) -> bool {
        let enough =
            (self.lines_through as i128) < self.inclusion_exclusion || self.qualifying.len() >= 2;
        self.qualifying.len() >= self.lines_through.saturating_sub(self.heavy_points) && enough
    }
}

/// The lines through `x` all of whose points lie in at most two of the
/// `d + 1` hyperplanes.
pub fn secant_lines(
    space: &AbstractSpace,
    p: u64,
    hyperplanes: &[Vec<usize>],
    x: usize,
) -> Result<SecantReport> {
    if hyperplanes.is_empty() {
        return Err(Error::InvalidArgument("empty hyperplane family".into()));
    }
    let hs: Vec<Vec<usize>> = hyperplanes
        .iter()
        .map(|h| h.iter().copied().sorted().dedup().collect())
        .collect();
    check_general_position(space, p, &hs)?;
    if hs.iter().any(|h| h.binary_search(&x).is_ok()) {
        return Err(Error::InvalidArgument(format!(
            "point {x} lies on a hyperplane of the family"
        )));
    }
    let mut mult = vec![0usize; space.num_points()];
    for h in &hs {
        for &z in h {
            mult[z] += 1;
        }
    }
    let through = space.lines_through(x);
    let qualifying: Vec<usize> = through
        .iter()
        .copied()
        .filter(|&l| space.line(l).iter().all(|&z| mult[z] <= 2))
        .collect();
    let n = space.dimension();
    let inclusion_exclusion = bounds_check(n, hs.len() - 1, p)?.inequality.rhs;
    Ok(SecantReport {
        point: x,
        lines_through: through.len(),
        qualifying,
        heavy_points: mult.iter().filter(|&&m| m >= 3).count(),
        inclusion_exclusion,
    })
}
