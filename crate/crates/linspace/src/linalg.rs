//! Exact linear algebra over big integers/rationals: incidence and Gram
//! matrices, the closed-form Gram determinant, an independent fraction-free
//! elimination determinant, rank, the Sylvester positive-definiteness test,
//! and the lambda-design (Ryser) generalization.
//!
//! No floating point anywhere: the argument is about exact signs and ranks.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use crate::incidence::{
    normalize, IncidenceStructure, LinearSpace, TheoremViolation, ValidationError,
};
use crate::util::{ser_bigint, ser_ratio};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .into_iter()
            .flatten()
            .map(BigInt::from)
            .collect();
        ExactMatrix { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

/// 0/1 incidence matrix, rows = points, columns = lines. Row sums are the
/// degrees k, column sums the sizes s.
pub fn incidence_matrix(ls: &LinearSpace) -> ExactMatrix {
    let mut mat = ExactMatrix::zeros(ls.n(), ls.m());
    for (l, line) in ls.lines().iter().enumerate() {
        for &z in line {
            mat.set(z, l, BigInt::one());
        }
    }
    mat
}

fn gram_of(mat: &ExactMatrix) -> ExactMatrix {
    let mut g = ExactMatrix::zeros(mat.rows, mat.rows);
    for i in 0..mat.rows {
        for j in i..mat.rows {
            let mut acc = BigInt::zero();
            for l in 0..mat.cols {
                acc += mat.get(i, l) * mat.get(j, l);
            }
            g.set(i, j, acc.clone());
            g.set(j, i, acc);
        }
    }
    g
}

/// M * M^T, computed from the incidence matrix, then checked against the
/// structure diag(k_j - 1) + J: the diagonal holds the degrees and every
/// off-diagonal entry must be 1 (this re-proves pair uniqueness rather than
/// assuming it).
pub fn gram_matrix(ls: &LinearSpace) -> Result<ExactMatrix, TheoremViolation> {
    let g = gram_of(&incidence_matrix(ls));
    check_gram_structure(&g, ls.degrees(), 1)?;
    Ok(g)
}

fn check_gram_structure(
    g: &ExactMatrix,
    degrees: &[usize],
    lambda: usize,
) -> Result<(), TheoremViolation> {
    let lam = BigInt::from(lambda);
    for i in 0..g.rows {
        if *g.get(i, i) != BigInt::from(degrees[i]) {
            return Err(TheoremViolation(format!(
                "gram diagonal {i} is {} but the degree is {}",
                g.get(i, i),
                degrees[i]
            )));
        }
        for j in 0..g.rows {
            if i != j && *g.get(i, j) != lam {
                return Err(TheoremViolation(format!(
                    "gram entry ({i},{j}) = {}, expected lambda = {lambda}",
                    g.get(i, j)
                )));
            }
        }
    }
    Ok(())
}

/// Closed-form determinant of diag(k_j - lambda) + lambda*J:
/// prod m_j * (1 + lambda * sum 1/m_j) with m_j = k_j - lambda.
/// Strictly positive whenever every k_j > lambda.
pub fn gram_det_closed_form(
    degrees: &[usize],
    lambda: usize,
) -> Result<BigRational, ValidationError> {
    let mut product = BigRational::one();
    let mut inv_sum = BigRational::zero();
    for (j, &k) in degrees.iter().enumerate() {
        if k <= lambda {
            return Err(ValidationError::DegreeNotAboveLambda {
                index: j,
                degree: k,
                lambda,
            });
        }
        let mj = BigInt::from(k - lambda);
        product *= BigRational::from_integer(mj.clone());
        inv_sum += BigRational::new(BigInt::one(), mj);
    }
    let factor = BigRational::one() + BigRational::from_integer(BigInt::from(lambda)) * inv_sum;
    Ok(product * factor)
}

/// Exact determinant via Bareiss single-step fraction-free elimination with
/// row pivoting. Independent of the closed form above by construction.
pub fn det_fraction_free(mat: &ExactMatrix) -> Result<BigInt, ValidationError> {
    if mat.rows != mat.cols {
        return Err(ValidationError::NotSquare {
            rows: mat.rows,
            cols: mat.cols,
        });
    }
    let n = mat.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = mat.clone();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev); // exact by Bareiss' identity
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Exact rank via fraction-free elimination with full pivoting.
pub fn rank(mat: &ExactMatrix) -> usize {
    let mut a = mat.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut r = 0usize;
    while r < rows && r < cols {
        // full pivot search in the remaining submatrix
        let pivot = (r..rows)
            .flat_map(|i| (r..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a.get(i, j).is_zero());
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        if pi != r {
            a.swap_rows(r, pi);
        }
        if pj != r {
            a.swap_cols(r, pj);
        }
        for i in r + 1..rows {
            for j in r + 1..cols {
                let num = a.get(i, j) * a.get(r, r) - a.get(i, r) * a.get(r, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, r, BigInt::zero());
        }
        prev = a.get(r, r).clone();
        r += 1;
    }
    r
}

/// Sylvester criterion over exact arithmetic: symmetric and all leading
/// principal minors strictly positive. The Bareiss pivots (no pivoting)
/// are exactly those minors.
pub fn positive_definite(mat: &ExactMatrix) -> Result<bool, ValidationError> {
    if mat.rows != mat.cols {
        return Err(ValidationError::NotSquare {
            rows: mat.rows,
            cols: mat.cols,
        });
    }
    if !mat.is_symmetric() {
        return Err(ValidationError::NotSymmetric);
    }
    let n = mat.rows;
    let mut a = mat.clone();
    let mut prev = BigInt::one();
    for k in 0..n {
        if !a.get(k, k).is_positive() {
            return Ok(false); // leading principal minor of order k+1 is <= 0
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    Ok(true)
}

/// A validated lambda-design: every pair of distinct points on exactly
/// lambda common lines, every point on more than lambda lines. lambda = 1
/// coincides with the linear-space axioms (minus line properness, which the
/// degree condition subsumes here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaDesign {
    pub structure: IncidenceStructure,
    pub lambda: usize,
    pub degrees: Vec<usize>,
    pub sizes: Vec<usize>,
}

pub fn ryser_validate(
    raw: &IncidenceStructure,
    lambda: usize,
) -> Result<LambdaDesign, ValidationError> {
    assert!(lambda >= 1, "lambda must be >= 1");
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
    let mut cover = vec![0usize; n * (n - 1) / 2];
    for l in &structure.lines {
        for (i, &x) in l.iter().enumerate() {
            for &y in &l[i + 1..] {
                cover[crate::incidence::pair_index(x, y)] += 1;
            }
        }
    }
    for y in 1..n {
        for x in 0..y {
            let count = cover[crate::incidence::pair_index(x, y)];
            if count != lambda {
                return Err(ValidationError::PairCoverageNotLambda {
                    x,
                    y,
                    count,
                    lambda,
                });
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
    if let Some(z) = (0..n).find(|&z| degrees[z] <= lambda) {
        return Err(ValidationError::DegreeNotAboveLambda {
            index: z,
            degree: degrees[z],
            lambda,
        });
    }
    Ok(LambdaDesign {
        structure,
        lambda,
        degrees,
        sizes,
    })
}

/// Exact determinant (two independent routes), rank, and definiteness of the
/// Gram matrix. The two determinant routes are cross-asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramReport {
    pub n: usize,
    pub m: usize,
    pub lambda: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub det_closed_form: BigRational,
    #[serde(serialize_with = "ser_bigint")]
    pub det_elimination: BigInt,
    pub rank: usize,
    pub positive_definite: bool,
    /// The theorem's conclusion, re-derived from rank: rank(M M^T) = n
    /// forces rank(M) = n, hence m >= n.
    pub m_ge_n: bool,
}

fn gram_report_from(
    incidence: &ExactMatrix,
    degrees: &[usize],
    lambda: usize,
) -> Result<GramReport, TheoremViolation> {
    let g = gram_of(incidence);
    check_gram_structure(&g, degrees, lambda)?;
    let det_closed_form = gram_det_closed_form(degrees, lambda)
        .map_err(|e| TheoremViolation(format!("closed form on validated design: {e}")))?;
    let det_elimination = det_fraction_free(&g).expect("gram is square");
    if det_closed_form != BigRational::from_integer(det_elimination.clone()) {
        return Err(TheoremViolation(format!(
            "determinant routes disagree: closed form {det_closed_form}, elimination {det_elimination}"
        )));
    }
    let gram_rank = rank(&g);
    let pd = positive_definite(&g).expect("gram is square and symmetric");
    let n = incidence.rows;
    let m = incidence.cols;
    if !pd || gram_rank != n {
        return Err(TheoremViolation(format!(
            "gram must be positive definite of full rank: pd = {pd}, rank = {gram_rank}, n = {n}"
        )));
    }
    Ok(GramReport {
        n,
        m,
        lambda,
        det_closed_form,
        det_elimination,
        rank: gram_rank,
        positive_definite: pd,
        m_ge_n: m >= n,
    })
}

/// Full Gram report for a linear space (lambda = 1).
pub fn gram_report(ls: &LinearSpace) -> Result<GramReport, TheoremViolation> {
    gram_report_from(&incidence_matrix(ls), ls.degrees(), 1)
}

/// Full Gram report for a lambda-design (Ryser's generalization of m >= n).
pub fn ryser_report(design: &LambdaDesign) -> Result<GramReport, TheoremViolation> {
    let mut mat = ExactMatrix::zeros(design.structure.point_count, design.structure.lines.len());
    for (l, line) in design.structure.lines.iter().enumerate() {
        for &z in line {
            mat.set(z, l, BigInt::one());
        }
    }
    gram_report_from(&mat, &design.degrees, design.lambda)
}
