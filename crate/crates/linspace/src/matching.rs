//! Combinatorial certificates of m >= n: Hall condition on line complements,
//! systems of distinct representatives via augmenting-path matching, the
//! min-degree proof trace, the cyclic certificate, and the weighted-sum
//! (ratio / shifted) verifier.

use num::{BigInt, BigRational};
use serde::Serialize;

use crate::incidence::{LinearSpace, ValidationError};
use crate::util::ser_ratio;

/// Injective choice of an off-line representative point for every line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SdrCertificate {
    /// assignment[l] = a(l), a point with a(l) not on line l.
    pub assignment: Vec<usize>,
}

/// A subset of lines whose complements union to fewer points than there are
/// lines in the subset. Only constructed when Hall's condition fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallWitness {
    pub line_subset: Vec<usize>,
    pub union_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "hall", rename_all = "snake_case")]
pub enum HallOutcome {
    Ok,
    Fail(HallWitness),
}

/// Result of the line -> off-line-point maximum matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SdrOutcome {
    Complete(SdrCertificate),
    /// No full SDR; the maximum matching found, line -> point.
    Partial {
        matching: Vec<(usize, usize)>,
        size: usize,
    },
}

/// Kuhn augmenting-path matcher on the bipartite graph lines x points with
/// edges (l, z) iff z is not on l. Deterministic: lines in index order,
/// candidate points in index order.
struct ComplementMatcher<'a> {
    ls: &'a LinearSpace,
    /// mt[z] = line matched to point z.
    mt: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl<'a> ComplementMatcher<'a> {
    fn new(ls: &'a LinearSpace) -> Self {
        ComplementMatcher {
            ls,
            mt: vec![None; ls.n()],
            used: vec![false; ls.m()],
        }
    }

    fn try_kuhn(&mut self, l: usize) -> bool {
        if self.used[l] {
            return false;
        }
        self.used[l] = true;
        for z in 0..self.ls.n() {
            if !self.ls.incident(l, z) {
                if self.mt[z].is_none() || self.try_kuhn(self.mt[z].unwrap()) {
                    self.mt[z] = Some(l);
                    return true;
                }
            }
        }
        false
    }

    fn run(mut self) -> Vec<Option<usize>> {
        for l in 0..self.ls.m() {
            self.used = vec![false; self.ls.m()];
            self.try_kuhn(l);
        }
        self.mt
    }
}

fn max_matching(ls: &LinearSpace) -> Vec<Option<usize>> {
    ComplementMatcher::new(ls).run()
}

/// Decide whether the family l -> E \ l admits an SDR, via matching
/// deficiency. On failure, returns a violating subset of lines found by
/// alternating-path reachability from the unmatched lines.
pub fn hall_check(ls: &LinearSpace) -> HallOutcome {
    let mt = max_matching(ls);
    let m = ls.m();
    let n = ls.n();
    let mut line_of: Vec<Option<usize>> = vec![None; m];
    for z in 0..n {
        if let Some(l) = mt[z] {
            line_of[l] = Some(z);
        }
    }
    if line_of.iter().all(|x| x.is_some()) {
        return HallOutcome::Ok;
    }
    // Alternating BFS from unmatched lines: line -> adjacent point ->
    // matched line. The reachable lines form a Hall violator.
    let mut line_seen = vec![false; m];
    let mut point_seen = vec![false; n];
    let mut queue: Vec<usize> = (0..m).filter(|&l| line_of[l].is_none()).collect();
    for &l in &queue {
        line_seen[l] = true;
    }
    while let Some(l) = queue.pop() {
        for z in 0..n {
            if !ls.incident(l, z) && !point_seen[z] {
                point_seen[z] = true;
                if let Some(l2) = mt[z] {
                    if !line_seen[l2] {
                        line_seen[l2] = true;
                        queue.push(l2);
                    }
                }
            }
        }
    }
    let line_subset: Vec<usize> = (0..m).filter(|&l| line_seen[l]).collect();
    let mut in_union = vec![false; n];
    for &l in &line_subset {
        for z in 0..n {
            if !ls.incident(l, z) {
                in_union[z] = true;
            }
        }
    }
    let union_size = in_union.iter().filter(|&&b| b).count();
    debug_assert!(union_size < line_subset.len());
    HallOutcome::Fail(HallWitness {
        line_subset,
        union_size,
    })
}

/// Exhaustive 2^m oracle for the Hall condition; m <= 20 only. Returns the
/// lowest-bitmask violating subset when one exists.
pub fn hall_exhaustive(ls: &LinearSpace) -> Result<HallOutcome, ValidationError> {
    let m = ls.m();
    if m > 20 {
        return Err(ValidationError::OutOfRange {
            what: format!("exhaustive Hall scan with m = {m} > 20"),
        });
    }
    let n = ls.n();
    // complement bitmask per line
    let comps: Vec<u64> = (0..m)
        .map(|l| {
            (0..n)
                .filter(|&z| !ls.incident(l, z))
                .fold(0u64, |acc, z| acc | (1 << z))
        })
        .collect();
    for mask in 1u32..(1u32 << m) {
        let mut union = 0u64;
        let mut cnt = 0usize;
        for l in 0..m {
            if mask & (1 << l) != 0 {
                union |= comps[l];
                cnt += 1;
            }
        }
        if (union.count_ones() as usize) < cnt {
            let line_subset = (0..m).filter(|&l| mask & (1 << l) != 0).collect();
            return Ok(HallOutcome::Fail(HallWitness {
                line_subset,
                union_size: union.count_ones() as usize,
            }));
        }
    }
    Ok(HallOutcome::Ok)
}

/// Maximum matching between lines and off-line points; a full matching is a
/// system of distinct representatives. For every linear space with m = n a
/// full certificate exists.
pub fn find_sdr(ls: &LinearSpace) -> SdrOutcome {
    let mt = max_matching(ls);
    let mut assignment: Vec<Option<usize>> = vec![None; ls.m()];
    for z in 0..ls.n() {
        if let Some(l) = mt[z] {
            assignment[l] = Some(z);
        }
    }
    if assignment.iter().all(|a| a.is_some()) {
        SdrCertificate {
            assignment: assignment.into_iter().map(|a| a.unwrap()).collect(),
        }
        .into()
    } else {
        let matching: Vec<(usize, usize)> = assignment
            .iter()
            .enumerate()
            .filter_map(|(l, a)| a.map(|z| (l, z)))
            .collect();
        let size = matching.len();
        SdrOutcome::Partial { matching, size }
    }
}

impl From<SdrCertificate> for SdrOutcome {
    fn from(c: SdrCertificate) -> Self {
        SdrOutcome::Complete(c)
    }
}

/// Pure re-check of a certificate, independent of the matcher: indices in
/// range, a(l) off line l, assignment injective.
pub fn check_sdr(ls: &LinearSpace, cert: &SdrCertificate) -> Result<bool, ValidationError> {
    if cert.assignment.len() != ls.m() {
        return Err(ValidationError::IndexOutOfRange {
            what: format!(
                "certificate has {} entries for {} lines",
                cert.assignment.len(),
                ls.m()
            ),
        });
    }
    let mut taken = vec![false; ls.n()];
    for (l, &z) in cert.assignment.iter().enumerate() {
        if z >= ls.n() {
            return Err(ValidationError::IndexOutOfRange {
                what: format!("representative {z} of line {l}"),
            });
        }
        if ls.incident(l, z) || taken[z] {
            return Ok(false);
        }
        taken[z] = true;
    }
    Ok(true)
}

/// The summed SDR chain: sum_l s_l <= sum_l k_{a(l)} <= sum_z k_z, with all
/// three equal (and per-line s_l = k_{a(l)}) when m = n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SdrSums {
    pub sum_s: u64,
    pub sum_k_assigned: u64,
    pub sum_k_all: u64,
    pub chain_holds: bool,
    /// Some(..) iff m = n; true iff the sums coincide and every line has
    /// s_l = k_{a(l)}.
    pub all_equal_when_square: Option<bool>,
}

pub fn sdr_sum_argument(
    ls: &LinearSpace,
    cert: &SdrCertificate,
) -> Result<SdrSums, ValidationError> {
    if !check_sdr(ls, cert)? {
        return Err(ValidationError::IndexOutOfRange {
            what: "certificate fails SDR invariants".into(),
        });
    }
    let sum_s: u64 = ls.sizes().iter().map(|&s| s as u64).sum();
    let sum_k_assigned: u64 = cert
        .assignment
        .iter()
        .map(|&z| ls.degrees()[z] as u64)
        .sum();
    let sum_k_all: u64 = ls.degrees().iter().map(|&k| k as u64).sum();
    let chain_holds = sum_s <= sum_k_assigned && sum_k_assigned <= sum_k_all;
    let all_equal_when_square = (ls.m() == ls.n()).then(|| {
        sum_s == sum_k_assigned
            && sum_k_assigned == sum_k_all
            && cert
                .assignment
                .iter()
                .enumerate()
                .all(|(l, &z)| ls.sizes()[l] == ls.degrees()[z])
    });
    Ok(SdrSums {
        sum_s,
        sum_k_assigned,
        sum_k_all,
        chain_holds,
        all_equal_when_square,
    })
}

/// Evaluated sides of one inequality lhs <= rhs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IneqSides {
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub equal: bool,
}

impl IneqSides {
    fn new(lhs: u64, rhs: u64) -> Self {
        IneqSides {
            lhs,
            rhs,
            holds: lhs <= rhs,
            equal: lhs == rhs,
        }
    }
}

/// Extra checks performed only when m = n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareTrace {
    /// (m - p) k_u <= sum over Y = E \ U of k_z.
    pub ineq5: IneqSides,
    /// sum_l s_l <= sum over Z = E of k_z.
    pub ineq6: IneqSides,
    /// k_u = k_z for every z outside U.
    pub min_degree_spread_equal: bool,
    /// s_l = k_u for every line outside the pencil.
    pub off_pencil_sizes_equal: bool,
}

/// The min-degree proof trace: pencil through the min-degree point u, one
/// representative per pencil line, and the evaluated inequality chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub u: usize,
    /// Number of lines through u (the trace's p).
    pub p_sec2: usize,
    pub pencil_lines: Vec<usize>,
    /// representatives[i] = lowest-index point of pencil_lines[i] other
    /// than u; these form the set U.
    pub representatives: Vec<usize>,
    /// sum over lines off the pencil of s_l <= (m - p) k_u.
    pub ineq2: IneqSides,
    /// sum over pencil lines of (p-1) s_l <= sum over U of (p-1) k_z.
    pub ineq3: IneqSides,
    /// sum over pencil lines of s_l <= sum over U of k_z.
    pub ineq4: IneqSides,
    pub square: Option<SquareTrace>,
}

pub fn proof_trace_min_degree(ls: &LinearSpace) -> ProofTrace {
    let n = ls.n();
    let m = ls.m();
    let k = ls.degrees();
    let s = ls.sizes();
    let u = (0..n).min_by_key(|&z| (k[z], z)).expect("n >= 3");
    let pencil_lines = ls.lines_through(u);
    let p = pencil_lines.len();
    debug_assert_eq!(p, k[u]);
    let representatives: Vec<usize> = pencil_lines
        .iter()
        .map(|&l| *ls.line(l).iter().find(|&&z| z != u).expect("line size >= 2"))
        .collect();

    let in_pencil = {
        let mut b = vec![false; m];
        for &l in &pencil_lines {
            b[l] = true;
        }
        b
    };
    let off_pencil_s: u64 = (0..m).filter(|&l| !in_pencil[l]).map(|l| s[l] as u64).sum();
    let ineq2 = IneqSides::new(off_pencil_s, ((m - p) as u64) * (k[u] as u64));

    let pencil_s: u64 = pencil_lines.iter().map(|&l| s[l] as u64).sum();
    let reps_k: u64 = representatives.iter().map(|&z| k[z] as u64).sum();
    let ineq3 = IneqSides::new(((p - 1) as u64) * pencil_s, ((p - 1) as u64) * reps_k);
    let ineq4 = IneqSides::new(pencil_s, reps_k);

    let square = (m == n).then(|| {
        let in_u = {
            let mut b = vec![false; n];
            for &z in &representatives {
                b[z] = true;
            }
            b
        };
        // Y = E \ U has exactly m - p points since |U| = p and u is not in U.
        let y_k: u64 = (0..n).filter(|&z| !in_u[z]).map(|z| k[z] as u64).sum();
        let ineq5 = IneqSides::new(((m - p) as u64) * (k[u] as u64), y_k);
        let all_s: u64 = s.iter().map(|&x| x as u64).sum();
        let all_k: u64 = k.iter().map(|&x| x as u64).sum();
        let ineq6 = IneqSides::new(all_s, all_k);
        let min_degree_spread_equal = (0..n).filter(|&z| !in_u[z]).all(|z| k[z] == k[u]);
        let off_pencil_sizes_equal = (0..m).filter(|&l| !in_pencil[l]).all(|l| s[l] == k[u]);
        SquareTrace {
            ineq5,
            ineq6,
            min_degree_spread_equal,
            off_pencil_sizes_equal,
        }
    });

    ProofTrace {
        u,
        p_sec2: p,
        pencil_lines,
        representatives,
        ineq2,
        ineq3,
        ineq4,
        square,
    }
}

/// One row of the cyclic certificate: line i against the representative of
/// the next pencil line (cyclically).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicRow {
    pub line: usize,
    pub s: usize,
    pub next_rep: usize,
    pub k_next: usize,
    pub holds: bool,
    pub equal: bool,
}

/// Cyclic certificate around a point u: pencil lines in input order treated
/// cyclically, s_i <= k of the next line's representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicCertificate {
    pub u: usize,
    pub order: Vec<usize>,
    pub reps: Vec<usize>,
    pub rows: Vec<CyclicRow>,
    pub sum_lhs: u64,
    pub sum_rhs: u64,
    pub sum_holds: bool,
    pub all_rows_hold: bool,
    pub all_equal: bool,
}

/// Build the cyclic certificate around `u` (defaults to the min-degree
/// point). The row inequalities hold for *every* valid point, not only the
/// min-degree one.
pub fn cyclic_certificate(
    ls: &LinearSpace,
    u: Option<usize>,
) -> Result<CyclicCertificate, ValidationError> {
    let k = ls.degrees();
    let u = match u {
        Some(u) if u >= ls.n() => return Err(ValidationError::PointNotInSpace { point: u }),
        Some(u) => u,
        None => (0..ls.n()).min_by_key(|&z| (k[z], z)).expect("n >= 3"),
    };
    let order = ls.lines_through(u);
    let p = order.len();
    let reps: Vec<usize> = order
        .iter()
        .map(|&l| *ls.line(l).iter().find(|&&z| z != u).expect("line size >= 2"))
        .collect();
    let mut rows = Vec::with_capacity(p);
    let mut all_rows_hold = true;
    let mut all_equal = true;
    for i in 0..p {
        let line = order[i];
        let s = ls.sizes()[line];
        let next_rep = reps[(i + 1) % p];
        let k_next = k[next_rep];
        let holds = s <= k_next;
        let equal = s == k_next;
        all_rows_hold &= holds;
        all_equal &= equal;
        rows.push(CyclicRow {
            line,
            s,
            next_rep,
            k_next,
            holds,
            equal,
        });
    }
    let sum_lhs: u64 = order.iter().map(|&l| ls.sizes()[l] as u64).sum();
    let sum_rhs: u64 = reps.iter().map(|&z| k[z] as u64).sum();
    Ok(CyclicCertificate {
        u,
        order,
        reps,
        rows,
        sum_lhs,
        sum_rhs,
        sum_holds: sum_lhs <= sum_rhs,
        all_rows_hold,
        all_equal,
    })
}

/// Which weight family to use in the weighted-sum verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BkcVariant {
    /// F(s) = s/(n-s), G(k) = k/(m-k).
    Ratio,
    /// F(s) = n/(n-s), G(k) = m/(m-k).
    Shifted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BkcRow {
    pub line: usize,
    pub point: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub f: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub g: BigRational,
    /// F <= G; only asserted when m <= n.
    pub holds: Option<bool>,
}

/// Exact-rational sums along the weighted-count chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BkcChain {
    /// sum_z (m - k_z) * 1/(m - k_z), which must equal n.
    #[serde(serialize_with = "ser_ratio")]
    pub point_identity: BigRational,
    pub point_identity_ok: bool,
    /// sum over non-incident pairs of 1/(m - k_z).
    #[serde(serialize_with = "ser_ratio")]
    pub pair_sum_k: BigRational,
    /// sum over non-incident pairs of 1/(m - s_l).
    #[serde(serialize_with = "ser_ratio")]
    pub pair_sum_s: BigRational,
    /// pair_sum_k >= pair_sum_s (from s_l <= k_z pairwise).
    pub first_ineq_holds: bool,
}

/// Equality checks available only when m = n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BkcSquare {
    pub all_pairwise_equal: bool,
    /// sum over non-incident pairs of F(s_l).
    #[serde(serialize_with = "ser_ratio")]
    pub sum_f: BigRational,
    /// sum over non-incident pairs of G(k_z).
    #[serde(serialize_with = "ser_ratio")]
    pub sum_g: BigRational,
    pub sums_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BkcReport {
    pub variant: BkcVariant,
    pub pairwise_rows: Vec<BkcRow>,
    /// Some(..) iff m <= n.
    pub pairwise_all_hold: Option<bool>,
    pub chain: BkcChain,
    pub square: Option<BkcSquare>,
}

fn ratio(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Weighted-sum verifier. All arithmetic over exact rationals; denominators
/// n - s_l and m - k_z are positive for every valid space (lines are proper
/// and no point is on every line).
pub fn bkc_verify(ls: &LinearSpace, variant: BkcVariant) -> BkcReport {
    let n = ls.n() as i128;
    let m = ls.m() as i128;
    let f = |s: i128| match variant {
        BkcVariant::Ratio => ratio(s, n - s),
        BkcVariant::Shifted => ratio(n, n - s),
    };
    let g = |k: i128| match variant {
        BkcVariant::Ratio => ratio(k, m - k),
        BkcVariant::Shifted => ratio(m, m - k),
    };
    let assert_pairwise = m <= n;
    let mut pairwise_rows = Vec::new();
    let mut pairwise_all = true;
    let zero = BigRational::from_integer(BigInt::from(0));
    let mut pair_sum_k = zero.clone();
    let mut pair_sum_s = zero.clone();
    let mut sum_f = zero.clone();
    let mut sum_g = zero.clone();
    let mut all_pairwise_equal = true;
    for l in 0..ls.m() {
        for z in 0..ls.n() {
            if ls.incident(l, z) {
                continue;
            }
            let s = ls.sizes()[l] as i128;
            let k = ls.degrees()[z] as i128;
            let fv = f(s);
            let gv = g(k);
            let holds = assert_pairwise.then(|| fv <= gv);
            if let Some(h) = holds {
                pairwise_all &= h;
            }
            all_pairwise_equal &= fv == gv;
            pair_sum_k += ratio(1, m - k);
            pair_sum_s += ratio(1, m - s);
            sum_f += &fv;
            sum_g += &gv;
            pairwise_rows.push(BkcRow {
                line: l,
                point: z,
                f: fv,
                g: gv,
                holds,
            });
        }
    }
    let point_identity: BigRational = (0..ls.n())
        .map(|z| {
            let k = ls.degrees()[z] as i128;
            ratio(m - k, 1) * ratio(1, m - k)
        })
        .sum();
    let point_identity_ok = point_identity == BigRational::from_integer(BigInt::from(n));
    let first_ineq_holds = pair_sum_k >= pair_sum_s;
    let square = (ls.m() == ls.n()).then(|| BkcSquare {
        all_pairwise_equal,
        sums_equal: sum_f == sum_g,
        sum_f,
        sum_g,
    });
    BkcReport {
        variant,
        pairwise_rows,
        pairwise_all_hold: assert_pairwise.then_some(pairwise_all),
        chain: BkcChain {
            point_identity,
            point_identity_ok,
            pair_sum_k,
            pair_sum_s,
            first_ineq_holds,
        },
        square,
    }
}
