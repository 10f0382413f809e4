use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::spec::{CheckKind, ExpectedPair, JobSpec};
use super::{CheckResult, CheckStatus, Report, RunOptions};
use crate::certkit::{
    algebraically_independent, presentation_ideal, rank_upper_bound_witness, verify_kernel_certificate,
};
use crate::derivation::{jacobian_derivation, Derivation, Nilpotency};
use crate::dixmier::{dixmier_map, slice_kernel_generators, slice_taylor_identity};
use crate::error::Result;
use crate::groebner::{classify_pair, ideal_membership, is_principal_generated_by, subalgebra_membership, PairClass};
use crate::linalg::complete_unimodular_row;
use crate::poly::Polynomial;

/// Runs every check of the job. Checks run concurrently; the report keeps
/// job order. Mathematical failures and exhausted budgets become failed
/// checks, never errors.
pub fn run_job(job: &JobSpec, opts: RunOptions) -> Report {
    let checks = job
        .checks
        .par_iter()
        .map(|check| {
            let start = Instant::now();
            let (pass, detail) = match run_check(job, &check.kind, opts) {
                Ok(r) => r,
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            CheckResult {
                name: check.name.clone(),
                status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
                detail,
                ms: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    Report::new(job.name.clone(), checks)
}

fn strs(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn images(d: &Derivation) -> Value {
    let map: serde_json::Map<String, Value> =
        d.ring_images().into_iter().map(|(v, p)| (v.to_string(), json!(p.to_string()))).collect();
    Value::Object(map)
}

fn run_check(job: &JobSpec, kind: &CheckKind, opts: RunOptions) -> Result<(bool, Value)> {
    let d = &job.derivation;
    let cap_or = |c: &Option<u32>| c.unwrap_or(opts.cap);
    Ok(match kind {
        CheckKind::LocallyNilpotent { cap, expect_indices, expect_certified } => {
            let cert = d.certify_locally_nilpotent(cap_or(cap));
            let mut pass = cert.is_certified() == *expect_certified;
            if let Some(want) = expect_indices {
                pass &= want.iter().all(|(v, &n)| cert.index_of(v) == Some(n));
            }
            (pass, serde_json::to_value(&cert).expect("serializable"))
        }
        CheckKind::NilpotencyIndex { poly, cap, expect } => {
            let got = d.nilpotency_index(poly, cap_or(cap))?;
            let got = match got {
                Nilpotency::Index(n) => Some(n),
                Nilpotency::ExceededCap => None,
            };
            (got == *expect, json!({ "poly": poly.to_string(), "index": got }))
        }
        CheckKind::QuasiNice { expect_vars, expect_nice } => {
            let prof = d.quasi_nice_profile();
            let mut pass = true;
            if let Some(v) = expect_vars {
                pass &= *v == prof.vars;
            }
            if let Some(n) = expect_nice {
                pass &= *n == prof.is_nice;
            }
            (pass, serde_json::to_value(&prof).expect("serializable"))
        }
        CheckKind::Irreducible { expect } => {
            let got = d.is_irreducible()?;
            (got == *expect, json!({ "irreducible": got }))
        }
        CheckKind::FixedPointFree { expect } => {
            let got = d.is_fixed_point_free(opts.budget)?;
            (got == *expect, json!({ "fixed_point_free": got, "images": images(d) }))
        }
        CheckKind::Identity { lhs, rhs } => {
            let diff = lhs - rhs;
            (diff.is_zero(), json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string(), "difference": diff.to_string() }))
        }
        CheckKind::Kernel { polys, expect } => {
            let mut out = Vec::new();
            let mut all = true;
            for p in polys {
                let dp = d.apply(p)?;
                all &= dp.is_zero();
                out.push(json!({ "poly": p.to_string(), "image": dp.to_string() }));
            }
            (all == *expect, json!({ "in_kernel": all, "images": out }))
        }
        CheckKind::ClassifyPair { f, g, expect } => {
            let got = classify_pair(f, g, opts.budget)?;
            let want = match expect {
                ExpectedPair::CommonFactor => PairClass::CommonFactor,
                ExpectedPair::Comaximal => PairClass::Comaximal,
                ExpectedPair::RegularSequence => PairClass::RegularSequence,
            };
            (got == want, json!({ "f": f.to_string(), "g": g.to_string(), "class": got }))
        }
        CheckKind::IdealMembership { poly, gens, expect } => {
            let got = ideal_membership(poly, gens, opts.budget)?;
            (got == *expect, json!({ "member": got }))
        }
        CheckKind::SubalgebraMembership { poly, gens, inverted, expect } => {
            let m = subalgebra_membership(poly, gens, inverted.as_ref(), opts.budget)?;
            let rep = m.representation.map(|r| r.to_string());
            (m.member == *expect, json!({ "member": m.member, "representation": rep }))
        }
        CheckKind::Presentation { generators, presentation } => {
            let elim = presentation_ideal(generators, presentation, opts.budget)?;
            let relation = presentation.relation.to_context(&presentation.context().free())?;
            let pass = is_principal_generated_by(&elim, &relation);
            (pass, json!({ "elimination_ideal": strs(&elim), "relation": relation.to_string() }))
        }
        CheckKind::AlgebraicallyIndependent { polys, expect } => {
            let got = algebraically_independent(polys)?;
            (got == *expect, json!({ "independent": got }))
        }
        CheckKind::KernelCertificate { certificate, cap, expect, expect_failed_step } => {
            let report = verify_kernel_certificate(certificate, cap_or(cap), opts.budget);
            let mut pass = report.overall == *expect;
            if let Some(step) = expect_failed_step {
                pass &= report.first_failure().map(|s| s.name) == Some(step.as_str());
            }
            (pass, serde_json::to_value(&report).expect("serializable"))
        }
        CheckKind::Dixmier { slice, targets, expect, cap } => {
            let cap = cap_or(cap);
            let mut values = Vec::new();
            let mut pass = true;
            for (i, t) in targets.iter().enumerate() {
                let pi = dixmier_map(d, slice, t, cap)?;
                // the extension of D to the localization kills pi_r(f)
                let annihilated = pi.derive(d)?.is_zero();
                pass &= annihilated;
                if let Some(want) = expect.as_ref().and_then(|e| e.get(i)) {
                    pass &= *pi.numerator() == want.0 && pi.exponent() == want.1;
                }
                values.push(json!({
                    "target": t.to_string(),
                    "value": pi.to_string(),
                    "numerator": pi.numerator().to_string(),
                    "exponent": pi.exponent(),
                    "annihilated": annihilated,
                }));
            }
            if let Some(e) = expect {
                pass &= e.len() == targets.len();
            }
            let mut detail = json!({ "base": d.apply(slice)?.to_string(), "values": values });
            if d.apply(slice)?.is_one() {
                let gens = slice_kernel_generators(d, slice, cap)?;
                let mut killed = true;
                for g in &gens {
                    killed &= d.apply(g)?.is_zero();
                }
                let mut taylor = true;
                for t in targets {
                    taylor &= slice_taylor_identity(d, slice, t, cap)?;
                }
                pass &= killed && taylor;
                detail["slice_kernel_generators"] = json!(strs(&gens));
                detail["taylor_identity"] = json!(taylor);
            }
            (pass, detail)
        }
        CheckKind::RankUpperBound { matrix, expect } => {
            let got = rank_upper_bound_witness(d, matrix)?;
            (got == *expect, json!({ "rank_upper_bound": got, "matrix": matrix.rows() }))
        }
        CheckKind::JacobianDerivation { f, alpha, expect } => {
            let got = jacobian_derivation(f, alpha)?;
            let kills = got.kernel_membership(f)?;
            (got == *expect && kills, json!({ "images": images(&got), "kills_f": kills }))
        }
        CheckKind::UnimodularCompletion { row } => {
            let m = complete_unimodular_row(row)?;
            let det = m.det();
            let first_row = m.row(0) == row.as_slice();
            let unit = det.is_constant() && !det.is_zero();
            (first_row && unit, json!({ "matrix": m.rows(), "det": det.to_string() }))
        }
    })
}
