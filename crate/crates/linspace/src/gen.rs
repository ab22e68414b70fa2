//! Instance generators: near-pencils, projective planes over prime fields,
//! exhaustive labeled enumeration of all linear spaces on small ground sets,
//! and an exhaustive-refinement canonical form for isomorphism reduction.

use crate::incidence::{
    pair_index, validate, IncidenceStructure, LinearSpace, ValidationError,
};
use crate::util::is_prime;

/// One line {0, ..., n-2} plus the 2-lines {i, n-1}; m = n.
pub fn near_pencil(n: usize) -> Result<LinearSpace, ValidationError> {
    if n < 3 {
        return Err(ValidationError::TooFewPoints { n });
    }
    let mut lines = vec![(0..n - 1).collect::<Vec<_>>()];
    for i in 0..n - 1 {
        lines.push(vec![i, n - 1]);
    }
    validate(&IncidenceStructure {
        point_count: n,
        lines,
    })
}

/// Projective plane over the prime field GF(p) in homogeneous coordinates:
/// points and lines are the p^2+p+1 nonzero triples normalized so the first
/// nonzero coordinate is 1; point z lies on line l iff their dot product is
/// 0 mod p. Prime powers are rejected — only mod-p arithmetic is used.
pub fn projective_plane(p: u64) -> Result<LinearSpace, ValidationError> {
    if !is_prime(p) {
        return Err(ValidationError::NotPrime { p });
    }
    let mut triples: Vec<[u64; 3]> = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let t = [a, b, c];
                let first = t.iter().find(|&&x| x != 0);
                if first == Some(&1) {
                    triples.push(t);
                }
            }
        }
    }
    let n = (p * p + p + 1) as usize;
    debug_assert_eq!(triples.len(), n);
    let lines = triples
        .iter()
        .map(|line| {
            (0..n)
                .filter(|&z| {
                    let pt = &triples[z];
                    (line[0] * pt[0] + line[1] * pt[1] + line[2] * pt[2]) % p == 0
                })
                .collect::<Vec<_>>()
        })
        .collect();
    validate(&IncidenceStructure {
        point_count: n,
        lines,
    })
}

fn check_enum_range(n: usize) -> Result<(), ValidationError> {
    if !(3..=8).contains(&n) {
        return Err(ValidationError::OutOfRange {
            what: format!("enumeration with n = {n} (supported: 3..=8)"),
        });
    }
    Ok(())
}

/// Smallest uncovered pair, in lexicographic (x, y) order.
fn first_uncovered(n: usize, covered: u64) -> Option<(usize, usize)> {
    for x in 0..n {
        for y in x + 1..n {
            if covered & (1 << pair_index(x, y)) == 0 {
                return Some((x, y));
            }
        }
    }
    None
}

/// All candidate lines through the pair {x, y} whose internal pairs are all
/// currently uncovered, as proper subsets of the point set, in the
/// deterministic subset order of the compatible-point list.
fn candidate_lines(n: usize, covered: u64, x: usize, y: usize) -> Vec<(Vec<usize>, u64)> {
    let compatible: Vec<usize> = (0..n)
        .filter(|&c| {
            c != x
                && c != y
                && covered & (1 << pair_index(x, c)) == 0
                && covered & (1 << pair_index(y, c)) == 0
        })
        .collect();
    let mut out = Vec::new();
    'subset: for mask in 0u32..(1u32 << compatible.len()) {
        let extra: Vec<usize> = compatible
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &c)| c)
            .collect();
        if extra.len() + 2 >= n {
            continue; // line must be a proper subset
        }
        let mut mark = 0u64;
        let mut line = vec![x, y];
        line.extend_from_slice(&extra);
        line.sort_unstable();
        for (i, &u) in line.iter().enumerate() {
            for &v in &line[i + 1..] {
                let bit = 1u64 << pair_index(u, v);
                if covered & bit != 0 {
                    continue 'subset; // an internal pair is already covered
                }
                mark |= bit;
            }
        }
        out.push((line, mark));
    }
    out
}

fn enum_rec(
    n: usize,
    covered: u64,
    lines: &mut Vec<Vec<usize>>,
    sink: &mut dyn FnMut(&LinearSpace),
) -> u64 {
    let (x, y) = match first_uncovered(n, covered) {
        Some(p) => p,
        None => {
            let ls = validate(&IncidenceStructure {
                point_count: n,
                lines: lines.clone(),
            })
            .expect("complete cover is a linear space");
            sink(&ls);
            return 1;
        }
    };
    let mut count = 0;
    for (line, mark) in candidate_lines(n, covered, x, y) {
        lines.push(line);
        count += enum_rec(n, covered | mark, lines, sink);
        lines.pop();
    }
    count
}

/// Emit every labeled linear space on {0, ..., n-1} exactly once (3 <= n <= 8).
/// Each space determines its own branch choices (the smallest uncovered pair
/// lies on a unique line), so no deduplication is needed.
pub fn enumerate_linear_spaces(
    n: usize,
    sink: &mut dyn FnMut(&LinearSpace),
) -> Result<u64, ValidationError> {
    check_enum_range(n)?;
    Ok(enum_rec(n, 0, &mut Vec::new(), sink))
}

/// Convenience: collect the whole labeled census.
pub fn enumerate_all(n: usize) -> Result<Vec<LinearSpace>, ValidationError> {
    let mut out = Vec::new();
    enumerate_linear_spaces(n, &mut |ls| out.push(ls.clone()))?;
    Ok(out)
}

/// Parallel census: top-level branches (the choices of the line through the
/// pair {0, 1}) are dealt round-robin to `jobs` workers; results are merged
/// back in branch order, so the output order matches the sequential one.
pub fn enumerate_all_jobs(n: usize, jobs: usize) -> Result<Vec<LinearSpace>, ValidationError> {
    check_enum_range(n)?;
    let jobs = jobs.max(1);
    let branches = candidate_lines(n, 0, 0, 1);
    if jobs == 1 || branches.len() <= 1 {
        return enumerate_all(n);
    }
    let mut per_worker: Vec<Vec<usize>> = vec![Vec::new(); jobs];
    for i in 0..branches.len() {
        per_worker[i % jobs].push(i);
    }
    let branches = &branches;
    let mut results: Vec<(usize, Vec<LinearSpace>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = per_worker
            .into_iter()
            .map(|ids| {
                scope.spawn(move || {
                    ids.into_iter()
                        .map(|bi| {
                            let (line, mark) = &branches[bi];
                            let mut lines = vec![line.clone()];
                            let mut out = Vec::new();
                            enum_rec(n, *mark, &mut lines, &mut |ls| out.push(ls.clone()));
                            (bi, out)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    results.sort_by_key(|&(bi, _)| bi);
    Ok(results.into_iter().flat_map(|(_, v)| v).collect())
}

/// Point invariant used to prune the relabeling search: degree plus the
/// multiset of incident line sizes.
fn point_invariant(ls: &LinearSpace, z: usize) -> (usize, Vec<usize>) {
    let mut sizes: Vec<usize> = ls
        .lines_through(z)
        .into_iter()
        .map(|l| ls.sizes()[l])
        .collect();
    sizes.sort_unstable();
    (ls.degrees()[z], sizes)
}

fn encode(n: usize, lines: &mut Vec<Vec<usize>>) -> String {
    for l in lines.iter_mut() {
        l.sort_unstable();
    }
    lines.sort();
    let body: Vec<String> = lines
        .iter()
        .map(|l| {
            l.iter()
                .map(|z| z.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("{n}:{}", body.join("|"))
}

/// Enumerate all relabelings that send the points of each invariant class
/// onto that class's block of new labels (blocks in invariant order). Any
/// isomorphism preserves invariants, so this restriction loses no labelings
/// relevant to canonical-form equality.
fn perms_within_classes(
    classes: &[Vec<usize>],
    offsets: &[usize],
    ci: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if ci == classes.len() {
        visit(perm);
        return;
    }
    fn rec(
        class: &[usize],
        start: usize,
        idx: usize,
        classes: &[Vec<usize>],
        offsets: &[usize],
        ci: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if idx == class.len() {
            perms_within_classes(classes, offsets, ci + 1, perm, used, visit);
            return;
        }
        let z = class[idx];
        for label in start..start + class.len() {
            if !used[label] {
                used[label] = true;
                perm[z] = label;
                rec(class, start, idx + 1, classes, offsets, ci, perm, used, visit);
                used[label] = false;
            }
        }
    }
    rec(
        &classes[ci],
        offsets[ci],
        0,
        classes,
        offsets,
        ci,
        perm,
        used,
        visit,
    );
}

/// Minimal encoding of the sorted line list over all invariant-respecting
/// point relabelings (n <= 8). Two spaces are isomorphic iff their canonical
/// forms are equal.
pub fn canonical_form(ls: &LinearSpace) -> Result<String, ValidationError> {
    let n = ls.n();
    if n > 8 {
        return Err(ValidationError::OutOfRange {
            what: format!("canonical form with n = {n} (supported: n <= 8)"),
        });
    }
    // group points by invariant
    let mut tagged: Vec<(usize, (usize, Vec<usize>))> =
        (0..n).map(|z| (z, point_invariant(ls, z))).collect();
    tagged.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (z, inv) in tagged {
        match classes.last_mut() {
            Some(last) if point_invariant(ls, last[0]) == inv => last.push(z),
            _ => classes.push(vec![z]),
        }
    }
    let mut offsets = Vec::with_capacity(classes.len());
    let mut acc = 0;
    for c in &classes {
        offsets.push(acc);
        acc += c.len();
    }
    let mut best: Option<String> = None;
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n];
    perms_within_classes(&classes, &offsets, 0, &mut perm, &mut used, &mut |perm| {
        let mut lines: Vec<Vec<usize>> = ls
            .lines()
            .iter()
            .map(|l| l.iter().map(|&z| perm[z]).collect())
            .collect();
        let enc = encode(n, &mut lines);
        if best.as_ref().map_or(true, |b| enc < *b) {
            best = Some(enc);
        }
    });
    Ok(best.expect("at least the identity relabeling"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, Classification};

    #[test]
    fn near_pencil_shapes() {
        let np = near_pencil(5).unwrap();
        assert_eq!(np.sizes(), &[4, 2, 2, 2, 2]);
        assert_eq!(np.degrees(), &[2, 2, 2, 2, 4]);
        assert_eq!(near_pencil(3).unwrap().m(), 3);
        assert!(matches!(
            near_pencil(2),
            Err(ValidationError::TooFewPoints { n: 2 })
        ));
    }

    #[test]
    fn fano_from_gf2() {
        let fano = projective_plane(2).unwrap();
        assert_eq!((fano.n(), fano.m()), (7, 7));
        assert!(fano.sizes().iter().all(|&s| s == 3));
        assert!(fano.degrees().iter().all(|&k| k == 3));
        assert_eq!(
            classify(&fano).unwrap(),
            Classification::ProjectivePlane { k: 3, order: 2 }
        );
    }

    #[test]
    fn plane_13_and_nonprime() {
        let p3 = projective_plane(3).unwrap();
        assert_eq!((p3.n(), p3.m()), (13, 13));
        assert_eq!(
            classify(&p3).unwrap(),
            Classification::ProjectivePlane { k: 4, order: 3 }
        );
        assert!(matches!(
            projective_plane(4),
            Err(ValidationError::NotPrime { p: 4 })
        ));
    }

    #[test]
    fn tiny_census_counts() {
        assert_eq!(enumerate_all(3).unwrap().len(), 1);
        let c4 = enumerate_all(4).unwrap();
        assert_eq!(c4.len(), 5);
        let squares = c4
            .iter()
            .filter(|ls| ls.m() == ls.n())
            .count();
        assert_eq!(squares, 4); // the 4 labeled near-pencils
        assert!(matches!(
            enumerate_all(9),
            Err(ValidationError::OutOfRange { .. })
        ));
    }

    #[test]
    fn parallel_census_matches_sequential() {
        let seq = enumerate_all(5).unwrap();
        let par = enumerate_all_jobs(5, 3).unwrap();
        assert_eq!(seq.len(), par.len());
        assert_eq!(seq, par);
    }

    #[test]
    fn canonical_forms_merge_isomorphs() {
        let c4 = enumerate_all(4).unwrap();
        let mut forms: Vec<String> = c4
            .iter()
            .filter(|ls| ls.m() == ls.n())
            .map(|ls| canonical_form(ls).unwrap())
            .collect();
        forms.dedup();
        forms.sort();
        forms.dedup();
        assert_eq!(forms.len(), 1); // all labeled near-pencils are isomorphic
    }
}
