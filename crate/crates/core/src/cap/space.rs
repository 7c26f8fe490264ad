use rayon::prelude::*;
use serde::Serialize;

use crate::gfp::PrimeField;
use crate::projlin::{projective_points, subspaces};

const NONE: u32 = u32::MAX;

/// Why an incidence structure is not a projective space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceDefect {
    PointOutOfRange {
        line: usize,
        point: usize,
    },
    ThinLine {
        line: usize,
    },
    PairUncovered {
        points: [usize; 2],
    },
    PairOnSeveralLines {
        points: [usize; 2],
        lines: [usize; 2],
    },
    /// Lines `ab` and `cd` meet, but `ac` and `bd` do not.
    VeblenYoung {
        points: [usize; 4],
    },
}

/// A point-line incidence structure in which every two points lie on a
/// unique line, every line has at least three points and the Veblen–Young
/// axiom holds; that is, a projective space.
#[derive(Debug, Clone)]
pub struct AbstractSpace {
    num_points: usize,
    lines: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
    pair_line: Vec<u32>,
    meet: Vec<u32>,
    dimension: usize,
}

impl AbstractSpace {
    /// Checks the axioms; `lines` are lists of point ids in `0..num_points`.
    pub fn from_incidence(num_points: usize, lines: Vec<Vec<usize>>) -> Result<Self, SpaceDefect> {
        let lines: Vec<Vec<usize>> = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        let mut point_lines = vec![Vec::new(); num_points];
        let mut pair_line = vec![NONE; num_points * num_points];
        for (li, line) in lines.iter().enumerate() {
            if let Some(&bad) = line.iter().find(|&&x| x >= num_points) {
                return Err(SpaceDefect::PointOutOfRange {
                    line: li,
                    point: bad,
                });
            }
            if line.len() < 3 {
                return Err(SpaceDefect::ThinLine { line: li });
            }
            for (i, &a) in line.iter().enumerate() {
                point_lines[a].push(li);
                for &b in &line[i + 1..] {
                    let slot = &mut pair_line[a * num_points + b];
                    if *slot != NONE {
                        return Err(SpaceDefect::PairOnSeveralLines {
                            points: [a, b],
                            lines: [*slot as usize, li],
                        });
                    }
                    *slot = li as u32;
                    pair_line[b * num_points + a] = li as u32;
                }
            }
        }
        for a in 0..num_points {
            for b in a + 1..num_points {
                if pair_line[a * num_points + b] == NONE {
                    return Err(SpaceDefect::PairUncovered { points: [a, b] });
                }
            }
        }
        let nl = lines.len();
        let mut meet = vec![NONE; nl * nl];
        for (x, through) in point_lines.iter().enumerate() {
            for (i, &l1) in through.iter().enumerate() {
                for &l2 in &through[i + 1..] {
                    meet[l1 * nl + l2] = x as u32;
                    meet[l2 * nl + l1] = x as u32;
                }
            }
        }
        let mut space = AbstractSpace {
            num_points,
            lines,
            point_lines,
            pair_line,
            meet,
            dimension: 0,
        };
        if let Some(points) = space.veblen_young_violation() {
            return Err(SpaceDefect::VeblenYoung { points });
        }
        space.dimension = space.greedy_dimension();
        Ok(space)
    }

    /// ℙ^n(GF(p)) with points in [`projective_points`] order.
    pub fn projective(field: PrimeField, n: usize) -> Self {
        let pts = projective_points(field, n);
        let index: std::collections::HashMap<_, _> =
            pts.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let lines = if n == 0 {
            Vec::new()
        } else {
            subspaces(field, n, 2)
                .iter()
                .map(|l| l.points().iter().map(|x| index[x]).collect())
                .collect()
        };
        Self::from_incidence(pts.len(), lines).expect("ℙ^n is a projective space")
    }

    // Lines ab and cd through a common point o: ac and bd must meet.
    fn veblen_young_violation(&self) -> Option<[usize; 4]> {
        (0..self.num_points).into_par_iter().find_map_first(|o| {
            let through = &self.point_lines[o];
            for (i, &l1) in through.iter().enumerate() {
                for &l2 in &through[i + 1..] {
                    let first: Vec<usize> =
                        self.lines[l1].iter().copied().filter(|&x| x != o).collect();
                    let second: Vec<usize> =
                        self.lines[l2].iter().copied().filter(|&x| x != o).collect();
                    for (ia, &a) in first.iter().enumerate() {
                        for &b in &first[ia + 1..] {
                            for &c in &second {
                                for &d in &second {
                                    if c == d {
                                        continue;
                                    }
                                    let ac = self.line_through(a, c).expect("covered");
                                    let bd = self.line_through(b, d).expect("covered");
                                    if self.meet(ac, bd).is_none() {
                                        return Some([a, b, c, d]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            None
        })
    }

    fn greedy_dimension(&self) -> usize {
        if self.num_points == 0 {
            return 0;
        }
        let mut basis = vec![0];
        let mut closed = self.closure(&basis);
        while closed.len() < self.num_points {
            let mut member = vec![false; self.num_points];
            for &x in &closed {
                member[x] = true;
            }
            let next = (0..self.num_points)
                .find(|&x| !member[x])
                .expect("proper closure");
            basis.push(next);
            closed = self.closure(&basis);
        }
        basis.len() - 1
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    pub fn lines_through(&self, x: usize) -> &[usize] {
        &self.point_lines[x]
    }

    /// The line joining two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        match self.pair_line[a * self.num_points + b] {
            NONE => None,
            l => Some(l as usize),
        }
    }

    /// The common point of two distinct lines, if they meet.
    pub fn meet(&self, l1: usize, l2: usize) -> Option<usize> {
        match self.meet[l1 * self.lines.len() + l2] {
            NONE => None,
            x => Some(x as usize),
        }
    }

    /// Projective dimension: length of a maximal chain of subspaces
    /// obtained by adding one point at a time.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The smallest subspace containing `seed`, sorted.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.num_points];
        let mut members = Vec::new();
        let mut queue = Vec::new();
        for &x in seed {
            if !member[x] {
                member[x] = true;
                queue.push(x);
            }
        }
        while let Some(q) = queue.pop() {
            for &r in &members {
                let l = self.line_through(q, r).expect("covered");
                for &z in &self.lines[l] {
                    if !member[z] {
                        member[z] = true;
                        queue.push(z);
                    }
                }
            }
            members.push(q);
        }
        members.sort_unstable();
        members
    }

    /// Whether `pts` is closed under joining lines.
    pub fn is_subspace(&self, pts: &[usize]) -> bool {
        let mut member = vec![false; self.num_points];
        for &x in pts {
            if x >= self.num_points {
                return false;
            }
            member[x] = true;
        }
        pts.iter().enumerate().all(|(i, &a)| {
            pts[i + 1..].iter().filter(|&&b| b != a).all(|&b| {
                self.lines[self.line_through(a, b).expect("covered")]
                    .iter()
                    .all(|&z| member[z])
            })
        })
    }

    /// Projective dimension of the subspace generated by `pts`.
    pub fn span_dimension(&self, pts: &[usize]) -> isize {
        let mut basis: Vec<usize> = Vec::new();
        let mut closed: Vec<usize> = Vec::new();
        for &x in pts {
            if closed.binary_search(&x).is_err() {
                basis.push(x);
                closed = self.closure(&basis);
            }
        }
        basis.len() as isize - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ]
    }

    #[test]
    fn fano_plane() {
        let s = AbstractSpace::from_incidence(7, fano()).unwrap();
        assert_eq!(s.dimension(), 2);
        assert_eq!(s.closure(&[0, 1]), vec![0, 1, 2]);
        assert_eq!(s.closure(&[0, 1, 3]).len(), 7);
    }

    #[test]
    fn projective_counts() {
        let f = PrimeField::new(3).unwrap();
        let s = AbstractSpace::projective(f, 3);
        assert_eq!(s.num_points(), 40);
        assert_eq!(s.num_lines(), 130);
        assert_eq!(s.dimension(), 3);
        assert!(s.lines().iter().all(|l| l.len() == 4));
        let plane = s.closure(&[0, 1, 2]);
        assert!(plane.len() == 13 || plane.len() == 4);
        assert!(s.is_subspace(&plane));
        assert!(!s.is_subspace(&[0, 1]));
    }

    #[test]
    fn single_line_has_dimension_one() {
        let s = AbstractSpace::from_incidence(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(s.dimension(), 1);
    }

    #[test]
    fn defects_are_witnessed() {
        let mut lines = fano();
        lines.pop();
        assert_eq!(
            AbstractSpace::from_incidence(7, lines).unwrap_err(),
            SpaceDefect::PairUncovered { points: [2, 4] }
        );
        let mut lines = fano();
        lines.push(vec![0, 1, 2]);
        assert!(matches!(
            AbstractSpace::from_incidence(7, lines),
            Err(SpaceDefect::PairOnSeveralLines { .. })
        ));
        assert_eq!(
            AbstractSpace::from_incidence(2, vec![vec![0, 1]]).unwrap_err(),
            SpaceDefect::ThinLine { line: 0 }
        );
    }

    #[test]
    fn linear_space_without_veblen_young() {
        // AG(2,3): a linear space whose parallel lines do not meet.
        let ag: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![3, 4, 5],
            vec![6, 7, 8],
            vec![0, 3, 6],
            vec![1, 4, 7],
            vec![2, 5, 8],
            vec![0, 4, 8],
            vec![1, 5, 6],
            vec![2, 3, 7],
            vec![0, 5, 7],
            vec![1, 3, 8],
            vec![2, 4, 6],
        ];
        assert!(matches!(
            AbstractSpace::from_incidence(9, ag),
            Err(SpaceDefect::VeblenYoung { .. })
        ));
    }
}
