//! Incidence data model and the linear-space axioms.
//!
//! A linear space is a finite point set E (|E| = n >= 3) together with a
//! family of lines, each a proper subset of E with at least 2 points, such
//! that every unordered pair of distinct points lies on exactly one line.
//! Everything downstream (certificates, classification, exact linear algebra)
//! starts from the validated [`LinearSpace`] built here.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Raw points-and-lines input, unvalidated. Point indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    /// Number of points n; valid indices are 0..n.
    #[serde(rename = "points")]
    pub point_count: usize,
    /// Ordered list of lines, each a list of point indices.
    pub lines: Vec<Vec<usize>>,
}

/// Errors for inputs that are not linear spaces (or misuse of an operation).
/// These are properties of the *input*, never of the library; the CLI maps
/// them to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("too few points: n = {n}, need n >= 3")]
    TooFewPoints { n: usize },
    #[error("line {line} contains point index {index}, out of range for n = {n}")]
    BadPointIndex { line: usize, index: usize, n: usize },
    #[error("pair {{{x}, {y}}} is covered by no line")]
    PairUncovered { x: usize, y: usize },
    #[error("pair {{{x}, {y}}} is covered by lines {line_a} and {line_b}")]
    PairMultiplyCovered {
        x: usize,
        y: usize,
        line_a: usize,
        line_b: usize,
    },
    #[error("line {line} equals the whole point set")]
    LineEqualsWholeSet { line: usize },
    #[error("point {point} is not a point of the space")]
    PointNotInSpace { point: usize },
    #[error("index out of range: {what}")]
    IndexOutOfRange { what: String },
    #[error("{what} is out of the supported range")]
    OutOfRange { what: String },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("pair {{{x}, {y}}} is covered by {count} lines, expected exactly {lambda}")]
    PairCoverageNotLambda {
        x: usize,
        y: usize,
        count: usize,
        lambda: usize,
    },
    #[error("point/degree slot {index} has degree {degree}, not above lambda = {lambda}")]
    DegreeNotAboveLambda {
        index: usize,
        degree: usize,
        lambda: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// A theorem-grade invariant failed. This is never a property of valid
/// input: if one of these surfaces, the library contradicted a theorem and
/// has a bug. The CLI maps it to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("theorem invariant violated: {0}")]
pub struct TheoremViolation(pub String);

/// Validated linear space with cached pair->line map, degrees and sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSpace {
    structure: IncidenceStructure,
    /// pair_index(x, y) -> index of the unique line through {x, y}.
    pair_line: Vec<usize>,
    degrees: Vec<usize>,
    sizes: Vec<usize>,
}

/// Per-point degrees, per-line sizes, and the min-degree point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    /// k[z] = number of lines through point z.
    pub k: Vec<usize>,
    /// s[l] = number of points on line l.
    pub s: Vec<usize>,
    /// Point u attaining the minimum degree; ties broken by lowest index.
    pub min_degree_point: usize,
}

/// Both sides of the double-count identity sum_l s_l = sum_z k_z.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCount {
    pub sum_s: u64,
    pub sum_k: u64,
    pub equal: bool,
}

/// One non-incident pair (l, z) with the inequality s_l <= k_z.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DbeRow {
    pub line: usize,
    pub point: usize,
    pub s: usize,
    pub k: usize,
    pub holds: bool,
}

/// All de Bruijn–Erdős rows; `all_hold` must be true for every valid space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DbeReport {
    pub rows: Vec<DbeRow>,
    pub all_hold: bool,
}

/// Index of the unordered pair {x, y} (x != y) in a flat triangular array.
pub fn pair_index(x: usize, y: usize) -> usize {
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    b * (b - 1) / 2 + a
}

/// Sort and dedup each line (lines are sets), drop lines with <= 1 point.
/// Order of surviving lines is preserved; idempotent.
pub fn normalize(raw: &IncidenceStructure) -> IncidenceStructure {
    let lines = raw
        .lines
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l
        })
        .filter(|l| l.len() >= 2)
        .collect();
    IncidenceStructure {
        point_count: raw.point_count,
        lines,
    }
}

/// Check the linear-space axioms and build the caches. Applies [`normalize`]
/// first, so 0/1-point lines never cause rejection.
pub fn validate(raw: &IncidenceStructure) -> Result<LinearSpace, ValidationError> {
    let n = raw.point_count;
    if n < 3 {
        return Err(ValidationError::TooFewPoints { n });
    }
    for (li, l) in raw.lines.iter().enumerate() {
        for &z in l {
            if z >= n {
                return Err(ValidationError::BadPointIndex {
                    line: li,
                    index: z,
                    n,
                });
            }
        }
    }
    let structure = normalize(raw);
    for (li, l) in structure.lines.iter().enumerate() {
        if l.len() >= n {
            return Err(ValidationError::LineEqualsWholeSet { line: li });
        }
    }
    let mut pair_line = vec![usize::MAX; n * (n - 1) / 2];
    for (li, l) in structure.lines.iter().enumerate() {
        for (i, &x) in l.iter().enumerate() {
            for &y in &l[i + 1..] {
                let slot = &mut pair_line[pair_index(x, y)];
                if *slot != usize::MAX {
                    return Err(ValidationError::PairMultiplyCovered {
                        x,
                        y,
                        line_a: *slot,
                        line_b: li,
                    });
                }
                *slot = li;
            }
        }
    }
    for y in 1..n {
        for x in 0..y {
            if pair_line[pair_index(x, y)] == usize::MAX {
                return Err(ValidationError::PairUncovered { x, y });
            }
        }
    }
    let mut degrees = vec![0usize; n];
    let mut sizes = vec![0usize; structure.lines.len()];
    for (li, l) in structure.lines.iter().enumerate() {
        sizes[li] = l.len();
        for &z in l {
            degrees[z] += 1;
        }
    }
    Ok(LinearSpace {
        structure,
        pair_line,
        degrees,
        sizes,
    })
}

impl LinearSpace {
    /// Number of points n.
    pub fn n(&self) -> usize {
        self.structure.point_count
    }

    /// Number of lines m.
    pub fn m(&self) -> usize {
        self.structure.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.structure.lines
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.structure.lines[l]
    }

    /// k_z for every point z.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// s_l for every line l.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    /// The unique line through the pair {x, y}.
    pub fn line_through(&self, x: usize, y: usize) -> usize {
        debug_assert!(x != y);
        self.pair_line[pair_index(x, y)]
    }

    /// Whether point z lies on line l (lines are sorted).
    pub fn incident(&self, l: usize, z: usize) -> bool {
        self.structure.lines[l].binary_search(&z).is_ok()
    }

    /// Line indices through point z, in input order.
    pub fn lines_through(&self, z: usize) -> Vec<usize> {
        (0..self.m()).filter(|&l| self.incident(l, z)).collect()
    }
}

pub fn degree_profile(ls: &LinearSpace) -> DegreeProfile {
    let k = ls.degrees().to_vec();
    let s = ls.sizes().to_vec();
    let min_degree_point = (0..ls.n()).min_by_key(|&z| (k[z], z)).expect("n >= 3");
    DegreeProfile {
        k,
        s,
        min_degree_point,
    }
}

/// Both sides of sum_l s_l = sum_z k_z (counting incidences two ways).
pub fn double_count_check(ls: &LinearSpace) -> DoubleCount {
    let sum_s: u64 = ls.sizes().iter().map(|&s| s as u64).sum();
    let sum_k: u64 = ls.degrees().iter().map(|&k| k as u64).sum();
    DoubleCount {
        sum_s,
        sum_k,
        equal: sum_s == sum_k,
    }
}

/// One row per non-incident pair (l, z): s_l <= k_z. `all_hold` false is an
/// assertion-grade failure, never a property of a valid space.
pub fn dbe_inequalities(ls: &LinearSpace) -> DbeReport {
    let mut rows = Vec::new();
    let mut all_hold = true;
    for l in 0..ls.m() {
        for z in 0..ls.n() {
            if !ls.incident(l, z) {
                let s = ls.sizes()[l];
                let k = ls.degrees()[z];
                let holds = s <= k;
                all_hold &= holds;
                rows.push(DbeRow {
                    line: l,
                    point: z,
                    s,
                    k,
                    holds,
                });
            }
        }
    }
    DbeReport { rows, all_hold }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> LinearSpace {
        validate(&IncidenceStructure {
            point_count: 3,
            lines: vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        })
        .unwrap()
    }

    #[test]
    fn normalize_drops_small_lines() {
        let raw = IncidenceStructure {
            point_count: 3,
            lines: vec![vec![0, 1], vec![2], vec![], vec![0, 2], vec![1, 2]],
        };
        let norm = normalize(&raw);
        assert_eq!(norm.lines, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(normalize(&norm), norm);
    }

    #[test]
    fn triangle_validates() {
        let ls = triangle();
        assert_eq!(ls.n(), 3);
        assert_eq!(ls.m(), 3);
        assert_eq!(ls.degrees(), &[2, 2, 2]);
        assert_eq!(ls.sizes(), &[2, 2, 2]);
    }

    #[test]
    fn uncovered_pair_rejected() {
        let raw = IncidenceStructure {
            point_count: 4,
            lines: vec![vec![0, 1, 2], vec![0, 3], vec![1, 3]],
        };
        assert_eq!(
            validate(&raw),
            Err(ValidationError::PairUncovered { x: 2, y: 3 })
        );
    }

    #[test]
    fn double_covered_pair_rejected() {
        let raw = IncidenceStructure {
            point_count: 3,
            lines: vec![vec![0, 1, 2], vec![0, 1]],
        };
        // Note [0,1,2] also trips LineEqualsWholeSet; use n = 4.
        let raw2 = IncidenceStructure {
            point_count: 4,
            lines: vec![vec![0, 1, 2], vec![0, 1], vec![0, 3], vec![1, 3], vec![2, 3]],
        };
        assert!(matches!(
            validate(&raw2),
            Err(ValidationError::PairMultiplyCovered { x: 0, y: 1, .. })
        ));
        assert!(validate(&raw).is_err());
    }

    #[test]
    fn whole_set_line_rejected() {
        let raw = IncidenceStructure {
            point_count: 3,
            lines: vec![vec![0, 1, 2]],
        };
        assert_eq!(
            validate(&raw),
            Err(ValidationError::LineEqualsWholeSet { line: 0 })
        );
    }

    #[test]
    fn too_few_points_rejected() {
        for n in 0..3 {
            let raw = IncidenceStructure {
                point_count: n,
                lines: vec![],
            };
            assert_eq!(validate(&raw), Err(ValidationError::TooFewPoints { n }));
        }
    }

    #[test]
    fn bad_index_rejected() {
        let raw = IncidenceStructure {
            point_count: 3,
            lines: vec![vec![0, 7]],
        };
        assert!(matches!(
            validate(&raw),
            Err(ValidationError::BadPointIndex { index: 7, .. })
        ));
    }

    #[test]
    fn triangle_profile_and_counts() {
        let ls = triangle();
        let prof = degree_profile(&ls);
        assert_eq!(prof.min_degree_point, 0);
        let dc = double_count_check(&ls);
        assert_eq!((dc.sum_s, dc.sum_k, dc.equal), (6, 6, true));
        let dbe = dbe_inequalities(&ls);
        assert!(dbe.all_hold);
        assert_eq!(dbe.rows.len(), 3); // one off point per line
    }
}
