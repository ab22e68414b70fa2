//! Hanani's pencil argument: quantities around a longest line L, the
//! per-point lemma, the pencil lower bounds, the p = n equality case, and
//! the simplified min-degree branch bounds.

use num::{BigInt, BigRational};
use serde::Serialize;

use crate::classify::{classify, Classification};
use crate::incidence::{LinearSpace, TheoremViolation};
use crate::matching::IneqSides;
use crate::util::ser_ratio;

/// One per-point lemma row: for x on L, k_x - 1 >= (n - a)/(b - 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaRow {
    pub point: usize,
    pub lhs: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: BigRational,
    pub holds: bool,
}

/// Longest line L (size a), second-longest K (size b), and the pencil of
/// lines meeting L (L included), of cardinality p. Ties break to the lowest
/// line index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HananiReport {
    pub l_line: usize,
    pub a: usize,
    pub k_line: usize,
    pub b: usize,
    pub pencil: Vec<usize>,
    pub p: usize,
    pub lemma_rows: Vec<LemmaRow>,
    pub lemma_all_hold: bool,
}

fn rational(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn longest_line(ls: &LinearSpace) -> usize {
    (0..ls.m())
        .max_by(|&x, &y| ls.sizes()[x].cmp(&ls.sizes()[y]).then(y.cmp(&x)))
        .expect("m >= 3")
}

fn lines_meeting(ls: &LinearSpace, l_line: usize) -> Vec<usize> {
    (0..ls.m())
        .filter(|&l| {
            l == l_line || ls.line(l).iter().any(|&z| ls.incident(l_line, z))
        })
        .collect()
}

fn lemma_rows(ls: &LinearSpace, l_line: usize, a: usize, b: usize) -> (Vec<LemmaRow>, bool) {
    let n = ls.n() as i128;
    let rhs = rational(n - a as i128, b as i128 - 1);
    let mut all = true;
    let rows = ls
        .line(l_line)
        .iter()
        .map(|&x| {
            let lhs = (ls.degrees()[x] - 1) as u64;
            let holds = BigRational::from_integer(BigInt::from(lhs)) >= rhs;
            all &= holds;
            LemmaRow {
                point: x,
                lhs,
                rhs: rhs.clone(),
                holds,
            }
        })
        .collect();
    (rows, all)
}

/// Compute L, a, K, b, the pencil and p; asserts the pencil theorem p >= n.
pub fn hanani_quantities(ls: &LinearSpace) -> Result<HananiReport, TheoremViolation> {
    let l_line = longest_line(ls);
    let a = ls.sizes()[l_line];
    let k_line = (0..ls.m())
        .filter(|&l| l != l_line)
        .max_by(|&x, &y| ls.sizes()[x].cmp(&ls.sizes()[y]).then(y.cmp(&x)))
        .expect("m >= 3 so a second line exists");
    let b = ls.sizes()[k_line];
    let pencil = lines_meeting(ls, l_line);
    let p = pencil.len();
    if p < ls.n() {
        return Err(TheoremViolation(format!(
            "pencil theorem violated: p = {p} < n = {}",
            ls.n()
        )));
    }
    let (rows, lemma_all_hold) = lemma_rows(ls, l_line, a, b);
    if !lemma_all_hold {
        return Err(TheoremViolation("per-point pencil lemma row failed".into()));
    }
    Ok(HananiReport {
        l_line,
        a,
        k_line,
        b,
        pencil,
        p,
        lemma_rows: rows,
        lemma_all_hold,
    })
}

/// The per-point lemma on its own (no p >= n assertion).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub l_line: usize,
    pub rows: Vec<LemmaRow>,
    pub all_hold: bool,
}

pub fn hanani_lemma(ls: &LinearSpace) -> LemmaReport {
    let l_line = longest_line(ls);
    let a = ls.sizes()[l_line];
    let b = (0..ls.m())
        .filter(|&l| l != l_line)
        .map(|l| ls.sizes()[l])
        .max()
        .expect("m >= 3");
    let (rows, all_hold) = lemma_rows(ls, l_line, a, b);
    LemmaReport {
        l_line,
        rows,
        all_hold,
    }
}

/// A derived-step diagnostic: both sides evaluated, flagged only when the
/// hypotheses under which the step was derived actually hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub lhs: u64,
    pub rhs: u64,
    /// None when the hypotheses (p = n and not a near-pencil) fail.
    pub holds: Option<bool>,
}

/// The p = n equality case: the pencil is all of the line set and the space
/// classifies as near-pencil / projective plane / both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityCase {
    pub pencil_is_all_lines: bool,
    /// Every pencil line has exactly a points, or the space is a near-pencil.
    pub sizes_or_near_pencil: bool,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HananiBounds {
    pub p: usize,
    /// Unconditional lower bound 1 + a(n-a)/(b-1) on p.
    #[serde(serialize_with = "ser_ratio")]
    pub lb_pencil: BigRational,
    pub lb_pencil_holds: bool,
    pub p_ge_n: bool,
    pub equality_case: Option<EqualityCase>,
    /// a(a-1) >= (n-1)(a-b+1), derived under "p = n, not a near-pencil".
    pub diag_upper: Diagnostic,
    /// n-1 >= (a-1)b under the same hypotheses.
    pub diag_lower: Diagnostic,
}

pub fn hanani_bounds(ls: &LinearSpace) -> Result<HananiBounds, TheoremViolation> {
    let rep = hanani_quantities(ls)?;
    let n = ls.n();
    let (a, b, p) = (rep.a as i128, rep.b as i128, rep.p);
    let lb_pencil = rational(1, 1) + rational(a, 1) * rational(n as i128 - a, b - 1);
    let lb_pencil_holds = BigRational::from_integer(BigInt::from(p)) >= lb_pencil;
    if !lb_pencil_holds {
        return Err(TheoremViolation(format!(
            "unconditional pencil bound failed: p = {p} < 1 + a(n-a)/(b-1)"
        )));
    }
    let p_ge_n = p >= n;
    let classification = classify(ls)?;
    let near_pencil = matches!(
        classification,
        Classification::NearPencil { .. } | Classification::Both { .. }
    );
    let equality_case = if p == n {
        let pencil_is_all_lines = rep.pencil.len() == ls.m();
        let sizes_all_a = rep.pencil.iter().all(|&l| ls.sizes()[l] == rep.a);
        let sizes_or_near_pencil = sizes_all_a || near_pencil;
        let classified = matches!(
            classification,
            Classification::NearPencil { .. }
                | Classification::ProjectivePlane { .. }
                | Classification::Both { .. }
        );
        if !(pencil_is_all_lines && sizes_or_near_pencil && classified) {
            return Err(TheoremViolation(format!(
                "p = n equality case failed: all_lines = {pencil_is_all_lines}, sizes/near-pencil = {sizes_or_near_pencil}, classification = {classification:?}"
            )));
        }
        Some(EqualityCase {
            pencil_is_all_lines,
            sizes_or_near_pencil,
            classification,
        })
    } else {
        None
    };
    let hypotheses = p == n && !near_pencil;
    let du_lhs = (a * (a - 1)) as u64;
    let du_rhs = ((n as i128 - 1) * (a - b + 1)).max(0) as u64;
    let dl_lhs = (n - 1) as u64;
    let dl_rhs = ((a - 1) * b) as u64;
    let diag_upper = Diagnostic {
        lhs: du_lhs,
        rhs: du_rhs,
        holds: hypotheses.then(|| du_lhs >= du_rhs),
    };
    let diag_lower = Diagnostic {
        lhs: dl_lhs,
        rhs: dl_rhs,
        holds: hypotheses.then(|| dl_lhs >= dl_rhs),
    };
    if let (Some(false), _) | (_, Some(false)) = (diag_upper.holds, diag_lower.holds) {
        return Err(TheoremViolation(
            "derived-step diagnostic failed under its hypotheses".into(),
        ));
    }
    Ok(HananiBounds {
        p,
        lb_pencil,
        lb_pencil_holds,
        p_ge_n,
        equality_case,
        diag_upper,
        diag_lower,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Minimum degree at least the longest line size.
    KGeA,
    /// Minimum degree below the longest line size; forces u onto L.
    KLtA,
}

/// Simplified pencil bounds driven by the minimum-degree point u.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section7Report {
    pub u: usize,
    pub k: usize,
    pub l_line: usize,
    pub a: usize,
    pub branch: Branch,
    /// In the k < a branch: the largest line through u other than L
    /// (lowest index on ties) and its size a'.
    pub m_line: Option<usize>,
    pub a_prime: Option<usize>,
    /// Point-count upper bound for the branch.
    pub ineq_n: IneqSides,
    /// Pencil lower bound for the branch (rhs side is p, so lhs <= rhs).
    pub ineq_p: IneqSides,
}

pub fn section7_bounds(ls: &LinearSpace) -> Result<Section7Report, TheoremViolation> {
    let n = ls.n() as u64;
    let deg = ls.degrees();
    let u = (0..ls.n()).min_by_key(|&z| (deg[z], z)).expect("n >= 3");
    let k = deg[u] as u64;
    let l_line = longest_line(ls);
    let a = ls.sizes()[l_line] as u64;
    let p = lines_meeting(ls, l_line).len() as u64;

    if k >= a {
        let ineq_n = IneqSides {
            lhs: n,
            rhs: 1 + k * (a - 1),
            holds: n <= 1 + k * (a - 1),
            equal: n == 1 + k * (a - 1),
        };
        let lb = 1 + a * (k - 1);
        let ineq_p = IneqSides {
            lhs: lb,
            rhs: p,
            holds: lb <= p,
            equal: lb == p,
        };
        if !(ineq_n.holds && ineq_p.holds) {
            return Err(TheoremViolation(
                "branch k >= a counting bound failed".into(),
            ));
        }
        Ok(Section7Report {
            u,
            k: k as usize,
            l_line,
            a: a as usize,
            branch: Branch::KGeA,
            m_line: None,
            a_prime: None,
            ineq_n,
            ineq_p,
        })
    } else {
        if !ls.incident(l_line, u) {
            // off L, the de Bruijn–Erdős inequality would give k >= a
            return Err(TheoremViolation(
                "k < a but the min-degree point is off the longest line".into(),
            ));
        }
        let m_line = ls
            .lines_through(u)
            .into_iter()
            .filter(|&l| l != l_line)
            .max_by(|&x, &y| ls.sizes()[x].cmp(&ls.sizes()[y]).then(y.cmp(&x)))
            .expect("k >= 2 so a second line through u exists");
        let a_prime = ls.sizes()[m_line] as u64;
        let shared = ls
            .line(m_line)
            .iter()
            .filter(|&&z| ls.incident(l_line, z))
            .count();
        if shared != 1 {
            return Err(TheoremViolation(
                "second line through u meets L in more than the point u".into(),
            ));
        }
        let ineq_n = IneqSides {
            lhs: n,
            rhs: a + (k - 1) * (a_prime - 1),
            holds: n <= a + (k - 1) * (a_prime - 1),
            equal: n == a + (k - 1) * (a_prime - 1),
        };
        let lb = k + (a - 1) * (a_prime - 1);
        let ineq_p = IneqSides {
            lhs: lb,
            rhs: p,
            holds: lb <= p,
            equal: lb == p,
        };
        if !(ineq_n.holds && ineq_p.holds) {
            return Err(TheoremViolation("branch k < a counting bound failed".into()));
        }
        Ok(Section7Report {
            u,
            k: k as usize,
            l_line,
            a: a as usize,
            branch: Branch::KLtA,
            m_line: Some(m_line),
            a_prime: Some(a_prime as usize),
            ineq_n,
            ineq_p,
        })
    }
}
