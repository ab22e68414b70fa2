//! Report builders shared by the CLI and the C ABI. Each builder returns the
//! JSON report body plus an "all must-hold flags hold" verdict; callers decide
//! how to present a failing verdict (exit code 2 for the CLI, a status code
//! for the ABI).

use serde_json::{json, Value};

use crate::classify::{classify, lemma1_check, lemma2_check, pairwise_intersections};
use crate::hanani::{hanani_bounds, hanani_quantities, section7_bounds};
use crate::incidence::{
    dbe_inequalities, degree_profile, double_count_check, validate, IncidenceStructure,
    LinearSpace, TheoremViolation, ValidationError,
};
use crate::io::fingerprint;
use crate::linalg::{gram_report, ryser_report, ryser_validate};
use crate::matching::{
    bkc_verify, check_sdr, cyclic_certificate, find_sdr, hall_check, proof_trace_min_degree,
    sdr_sum_argument, BkcVariant, HallOutcome, SdrOutcome,
};

/// Either the input is not a linear space, or a theorem-level invariant
/// failed while building the report (the latter is a library bug).
#[derive(Debug)]
pub enum ReportError {
    Input(ValidationError),
    Theorem(TheoremViolation),
}

impl From<ValidationError> for ReportError {
    fn from(e: ValidationError) -> Self {
        ReportError::Input(e)
    }
}

impl From<TheoremViolation> for ReportError {
    fn from(e: TheoremViolation) -> Self {
        ReportError::Theorem(e)
    }
}

pub fn instance_echo(ls: &LinearSpace) -> Value {
    json!({
        "n": ls.n(),
        "m": ls.m(),
        "hash": fingerprint(ls.structure()),
    })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serialization cannot fail")
}

pub fn validate_report(ls: &LinearSpace) -> (Value, bool) {
    let prof = degree_profile(ls);
    (json!({ "profile": to_value(&prof) }), true)
}

/// Double count, inequality table, Hall/SDR, proof trace, cyclic certificate.
pub fn certify_report(ls: &LinearSpace) -> Result<(Value, bool), ReportError> {
    let square = ls.m() == ls.n();
    let mut ok = ls.m() >= ls.n();

    let dc = double_count_check(ls);
    ok &= dc.equal;
    let dbe = dbe_inequalities(ls);
    ok &= dbe.all_hold;
    let dbe_summary = json!({
        "rows": dbe.rows.len(),
        "all_hold": dbe.all_hold,
    });

    let hall = hall_check(ls);
    if square {
        ok &= matches!(hall, HallOutcome::Ok);
    }
    let sdr_value;
    match find_sdr(ls) {
        SdrOutcome::Complete(cert) => {
            let recheck = check_sdr(ls, &cert)?;
            let sums = sdr_sum_argument(ls, &cert)?;
            ok &= recheck && sums.chain_holds;
            if square {
                ok &= sums.all_equal_when_square == Some(true);
            }
            sdr_value = json!({
                "complete": true,
                "assignment": cert.assignment,
                "recheck": recheck,
                "sums": to_value(&sums),
            });
        }
        SdrOutcome::Partial { matching, size } => {
            if square {
                ok = false; // m = n guarantees a full SDR
            }
            ok &= size == ls.n().min(ls.m());
            sdr_value = json!({
                "complete": false,
                "max_matching": matching,
                "size": size,
            });
        }
    }

    let trace = proof_trace_min_degree(ls);
    ok &= trace.ineq2.holds && trace.ineq3.holds && trace.ineq4.holds;
    if let Some(sq) = &trace.square {
        ok &= sq.ineq5.holds
            && sq.ineq6.holds
            && sq.ineq5.equal
            && sq.ineq6.equal
            && sq.min_degree_spread_equal
            && sq.off_pencil_sizes_equal;
    }

    let cyclic = cyclic_certificate(ls, None)?;
    ok &= cyclic.all_rows_hold && cyclic.sum_holds;
    if square {
        ok &= cyclic.all_equal;
    }

    let report = json!({
        "double_count": to_value(&dc),
        "dbe": dbe_summary,
        "hall": to_value(&hall),
        "sdr": sdr_value,
        "proof_trace": to_value(&trace),
        "cyclic": to_value(&cyclic),
    });
    Ok((report, ok))
}

pub fn classify_report(ls: &LinearSpace) -> Result<(Value, bool), ReportError> {
    let c = classify(ls)?;
    let l1 = lemma1_check(ls)?;
    let l2 = lemma2_check(ls)?;
    let meets = pairwise_intersections(ls);
    let ok = ls.m() > ls.n() || meets.all_meet;
    let report = json!({
        "classification": to_value(&c),
        "lemma1_uniform": l1,
        "lemma2": to_value(&l2),
        "pairwise_intersections": { "all_meet": meets.all_meet },
    });
    Ok((report, ok))
}

/// Gram report on an already-validated space (lambda = 1) or a raw structure
/// validated against the lambda-design axioms.
pub fn gram_report_value(
    raw: &IncidenceStructure,
    lambda: usize,
) -> Result<(Value, bool), ReportError> {
    let report = if lambda == 1 {
        gram_report(&validate(raw)?)?
    } else {
        ryser_report(&ryser_validate(raw, lambda)?)?
    };
    let ok = report.positive_definite && report.m_ge_n && report.rank == report.n;
    Ok((to_value(&report), ok))
}

pub fn hanani_report_value(ls: &LinearSpace) -> Result<(Value, bool), ReportError> {
    let q = hanani_quantities(ls)?;
    let bounds = hanani_bounds(ls)?;
    let s7 = section7_bounds(ls)?;
    let ok = q.lemma_all_hold
        && bounds.lb_pencil_holds
        && bounds.p_ge_n
        && s7.ineq_n.holds
        && s7.ineq_p.holds;
    let report = json!({
        "quantities": to_value(&q),
        "bounds": to_value(&bounds),
        "section7": to_value(&s7),
    });
    Ok((report, ok))
}

pub fn bkc_report_value(ls: &LinearSpace, variant: BkcVariant) -> (Value, bool) {
    let report = bkc_verify(ls, variant);
    let mut ok = report.chain.point_identity_ok && report.chain.first_ineq_holds;
    if let Some(all) = report.pairwise_all_hold {
        ok &= all;
    }
    if let Some(sq) = &report.square {
        ok &= sq.all_pairwise_equal && sq.sums_equal;
    }
    (to_value(&report), ok)
}

/// Wrap a report body in the standard output document.
pub fn document(command: &str, instance: Value, report: Value, ok: bool) -> Value {
    json!({
        "command": command,
        "instance": instance,
        "report": report,
        "verdict": if ok { "ok" } else { "internal-assertion-failure" },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::projective_plane;

    #[test]
    fn certify_ok_on_fano() {
        let f = projective_plane(2).unwrap();
        let (body, ok) = certify_report(&f).unwrap();
        assert!(ok);
        assert_eq!(body["sdr"]["complete"], true);
        assert_eq!(body["cyclic"]["all_equal"], true);
    }

    #[test]
    fn document_shape() {
        let f = projective_plane(2).unwrap();
        let (body, ok) = classify_report(&f).unwrap();
        let doc = document("classify", instance_echo(&f), body, ok);
        assert_eq!(doc["verdict"], "ok");
        assert_eq!(doc["instance"]["n"], 7);
    }
}
