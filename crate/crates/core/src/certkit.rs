//! Kernel certificates, Jacobian rank and rank upper-bound witnesses.
//!
//! A certificate claims `Ker D = R[g_1, ..., g_k]` and is checked in the
//! usual pattern: the generators are in the kernel, a local slice `r` with
//! `Dr = f` shows the two algebras agree after inverting `f`, and the
//! images modulo `f` have the expected transcendence degree.

use serde::Serialize;

use crate::derivation::Derivation;
use crate::dixmier::{dixmier_map, local_slice_base};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, is_principal_generated_by, Budget, GroebnerBasis, MonomialOrder, Subalgebra};
use crate::linalg::PolyMatrix;
use crate::poly::{Polynomial, VarContext};

/// Rank of the Jacobian matrix `(d p_i / d w_j)` over the fraction field,
/// by fraction-free (Bareiss) elimination.
pub fn jacobian_rank(polys: &[Polynomial], wrt: &[&str]) -> Result<usize> {
    let Some(first) = polys.first() else {
        return Ok(0);
    };
    let ctx = first.context();
    if ctx.is_quotient() {
        return Err(Error::QuotientContext("jacobian rank"));
    }
    let mut cols = Vec::with_capacity(wrt.len());
    for w in wrt {
        cols.push(ctx.require(w)?);
    }
    let mut m = Vec::with_capacity(polys.len());
    for p in polys {
        ctx.check_same(p.context())?;
        m.push(cols.iter().map(|&j| p.derivative_index(j)).collect::<Vec<_>>());
    }
    Ok(bareiss_rank(m))
}

fn bareiss_rank(mut m: Vec<Vec<Polynomial>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let Some(ctx) = m.first().and_then(|r| r.first()).map(|p| p.context().clone()) else {
        return 0;
    };
    let mut prev = Polynomial::one(&ctx);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let pivot = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero());
        let Some((pi, pj)) = pivot else {
            break;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        rank += 1;
        for i in k + 1..rows {
            for j in k + 1..cols {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(&ctx);
        }
        prev = m[k][k].clone();
    }
    rank
}

/// Jacobian criterion with respect to the ring variables: the polynomials
/// are algebraically independent over the fraction field of the
/// coefficient ring.
pub fn algebraically_independent(polys: &[Polynomial]) -> Result<bool> {
    let Some(first) = polys.first() else {
        return Ok(true);
    };
    let ring = first.context().ring_names();
    Ok(jacobian_rank(polys, &ring)? == polys.len())
}

/// A claimed presentation `R[T_1..T_k]/(relation)` of the kernel, with
/// `T_i` mapping to the i-th generator.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub tags: Vec<String>,
    /// Lives in [`Presentation::context`].
    pub relation: Polynomial,
}

impl Presentation {
    /// Context of coefficient variables (with their relations) followed by
    /// the tag variables.
    pub fn context_for(ctx: &VarContext, tags: &[&str]) -> Result<VarContext> {
        VarContext::over(&ctx.coeff_names(), tags)?.with_relation_polys(&ctx.relations())
    }

    pub fn parse(ctx: &VarContext, tags: &[&str], relation: &str) -> Result<Self> {
        let pc = Presentation::context_for(ctx, tags)?;
        Ok(Presentation {
            tags: tags.iter().map(|s| s.to_string()).collect(),
            relation: Polynomial::parse(relation, &pc)?,
        })
    }

    pub fn context(&self) -> &VarContext {
        self.relation.context()
    }
}

#[derive(Debug, Clone)]
pub struct KernelCertificate {
    pub derivation: Derivation,
    pub generators: Vec<Polynomial>,
    /// Localizing element `f`, required to equal `D(local_slice)`.
    pub localizing: Polynomial,
    pub local_slice: Polynomial,
    pub presentation: Option<Presentation>,
    /// Transcendence degree of the generators modulo `f`, over the
    /// fraction field of the coefficient ring.
    pub expected_mod_f_trdeg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "reason", rename_all = "snake_case")]
pub enum StepStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

impl StepStatus {
    pub fn is_pass(&self) -> bool {
        matches!(self, StepStatus::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, StepStatus::Fail(_))
    }

    fn from_check(ok: StepResult) -> Self {
        match ok {
            Ok(()) => StepStatus::Pass,
            Err(StepError(e)) => StepStatus::Fail(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertStep {
    pub name: &'static str,
    pub status: StepStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub steps: Vec<CertStep>,
    pub overall: bool,
}

impl CertReport {
    pub fn step(&self, name: &str) -> Option<&StepStatus> {
        self.steps.iter().find(|s| s.name == name).map(|s| &s.status)
    }

    /// First failing step, if any.
    pub fn first_failure(&self) -> Option<&CertStep> {
        self.steps.iter().find(|s| s.status.is_fail())
    }
}

/// Steps that must pass for the certificate to hold.
const REQUIRED: [&str; 5] = ["lnd", "S1", "S2", "S3", "S4"];

pub fn verify_kernel_certificate(cert: &KernelCertificate, cap: u32, budget: Budget) -> CertReport {
    let d = &cert.derivation;
    let lnd = if cert.generators.is_empty() {
        StepStatus::Fail("no generators".into())
    } else if cert.localizing.is_zero() {
        StepStatus::Fail("localizing element is zero".into())
    } else {
        let nil = d.certify_locally_nilpotent(cap);
        if nil.is_certified() {
            StepStatus::Pass
        } else {
            StepStatus::Fail(format!("nilpotency not certified within cap {cap}"))
        }
    };
    let ready = lnd.is_pass();
    let gate = |f: &dyn Fn() -> StepResult| {
        if ready {
            StepStatus::from_check(f())
        } else {
            StepStatus::Skipped("precondition failed".into())
        }
    };

    let ((s1, s2, s4), (s3, s5)) = rayon::join(
        || {
            (
                gate(&|| step_kernel_containment(cert)),
                gate(&|| step_local_slice(cert, budget)),
                gate(&|| step_mod_f(cert, budget)),
            )
        },
        || {
            let s3 = gate(&|| step_localized_surjectivity(cert, cap, budget));
            let s5 = match &cert.presentation {
                None => StepStatus::Skipped("no presentation supplied".into()),
                Some(p) => gate(&|| step_presentation(cert, p, budget)),
            };
            (s3, s5)
        },
    );
    let steps = vec![
        CertStep { name: "lnd", status: lnd },
        CertStep { name: "S1", status: s1 },
        CertStep { name: "S2", status: s2 },
        CertStep { name: "S3", status: s3 },
        CertStep { name: "S4", status: s4 },
        CertStep { name: "S5", status: s5 },
        CertStep { name: "domain", status: StepStatus::Skipped("domain-assumed".into()) },
    ];
    let overall = steps.iter().all(|s| !s.status.is_fail())
        && steps.iter().filter(|s| REQUIRED.contains(&s.name)).all(|s| s.status.is_pass());
    CertReport { steps, overall }
}

/// Why a certificate step did not pass.
struct StepError(String);

impl From<Error> for StepError {
    fn from(e: Error) -> Self {
        StepError(e.to_string())
    }
}

type StepResult = std::result::Result<(), StepError>;

fn fail(msg: String) -> StepResult {
    Err(StepError(msg))
}

fn step_kernel_containment(cert: &KernelCertificate) -> StepResult {
    for (i, g) in cert.generators.iter().enumerate() {
        let dg = cert.derivation.apply(g)?;
        if !dg.is_zero() {
            return fail(format!("D(generator {}) = {dg}", i + 1));
        }
    }
    Ok(())
}

fn step_local_slice(cert: &KernelCertificate, budget: Budget) -> StepResult {
    let dr = local_slice_base(&cert.derivation, &cert.local_slice)?;
    if dr != cert.localizing {
        return fail(format!("D(r) = {dr}, expected {}", cert.localizing));
    }
    let ctx = cert.derivation.context();
    let alg = Subalgebra::new(&cert.generators, None, ctx, budget)?;
    if !alg.contains(&cert.localizing)?.member {
        return fail(format!("{} is not in the algebra of the generators", cert.localizing));
    }
    Ok(())
}

fn step_localized_surjectivity(cert: &KernelCertificate, cap: u32, budget: Budget) -> StepResult {
    let d = &cert.derivation;
    let ctx = d.context();
    let alg = Subalgebra::new(&cert.generators, Some(&cert.localizing), ctx, budget)?;
    for name in ctx.ring_names() {
        let v = Polynomial::var(ctx, name)?;
        let pi = dixmier_map(d, &cert.local_slice, &v, cap)?;
        if !alg.contains(pi.numerator())?.member {
            return fail(format!("pi_r({name}) = {pi} is not in the localized algebra"));
        }
    }
    Ok(())
}

/// Images of the generators modulo `f`, taken as normal forms under an
/// order with the ring variables above the coefficient variables.
fn mod_f_images(cert: &KernelCertificate, budget: Budget) -> Result<Vec<Polynomial>> {
    let ctx = cert.derivation.context();
    let order = MonomialOrder::elimination(&ctx.ring_indices(), &ctx.coeff_indices())?;
    let gb = GroebnerBasis::compute(ctx, std::slice::from_ref(&cert.localizing), &order, budget)?;
    cert.generators.iter().map(|g| gb.reduce(g)).collect()
}

fn step_mod_f(cert: &KernelCertificate, budget: Budget) -> StepResult {
    let ctx = cert.derivation.context();
    let images = mod_f_images(cert, budget)?;
    let free = ctx.free();
    let images: Vec<Polynomial> = images.iter().map(|p| p.to_context(&free)).collect::<Result<_>>()?;
    let rank = jacobian_rank(&images, &free.ring_names())?;
    if rank != cert.expected_mod_f_trdeg {
        return fail(format!("images modulo f have Jacobian rank {rank}, expected {}", cert.expected_mod_f_trdeg));
    }
    if let Some(p) = &cert.presentation {
        // f as a polynomial in the tags, then the relation modulo it
        let alg = Subalgebra::new(&cert.generators, None, ctx, budget)?;
        let rep = alg
            .contains(&cert.localizing)?
            .representation
            .ok_or_else(|| StepError("f is not in the algebra of the generators".into()))?;
        let pc = p.context();
        let tag_vars: Vec<String> = (1..=p.tags.len()).map(|i| format!("_T{i}")).collect();
        let assignment: Vec<(&str, Polynomial)> = tag_vars
            .iter()
            .zip(&p.tags)
            .map(|(v, t)| Ok((v.as_str(), Polynomial::var(pc, t)?)))
            .collect::<Result<_>>()?;
        let f_in_tags = rep.substitute(&assignment)?;
        let gb = GroebnerBasis::compute(pc, &[f_in_tags], &MonomialOrder::grevlex(pc.len()), budget)?;
        if gb.contains(&p.relation)? {
            return fail("presentation relation vanishes modulo f".into());
        }
    }
    Ok(())
}

fn step_presentation(cert: &KernelCertificate, p: &Presentation, budget: Budget) -> StepResult {
    if p.tags.len() != cert.generators.len() {
        return fail(format!("{} tags for {} generators", p.tags.len(), cert.generators.len()));
    }
    let elim = presentation_ideal(&cert.generators, p, budget)?;
    let relation = p.relation.to_context(&p.context().free())?;
    if !is_principal_generated_by(&elim, &relation) {
        let shown: Vec<String> = elim.iter().map(|g| g.to_string()).collect();
        return fail(format!("elimination ideal is generated by [{}]", shown.join(", ")));
    }
    Ok(())
}

/// Generators of the kernel of `R[T_1..T_k] -> B, T_i -> g_i`, by
/// eliminating the ring variables from `(T_i - g_i)`. The result lives in
/// the free version of the presentation context.
pub fn presentation_ideal(generators: &[Polynomial], p: &Presentation, budget: Budget) -> Result<Vec<Polynomial>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let ctx = first.context();
    if p.tags.len() != generators.len() {
        return Err(Error::DimensionMismatch(format!("{} tags for {} generators", p.tags.len(), generators.len())));
    }
    let names: Vec<&str> = ctx.ring_names().into_iter().chain(p.tags.iter().map(String::as_str)).collect();
    let big = VarContext::over(&ctx.coeff_names(), &names)?.with_relation_polys(&ctx.relations())?;
    let mut gens = Vec::new();
    for (t, g) in p.tags.iter().zip(generators) {
        gens.push(&Polynomial::var(&big, t)? - &g.to_context(&big)?);
    }
    let keep: Vec<&str> = ctx.coeff_names().into_iter().chain(p.tags.iter().map(String::as_str)).collect();
    let pc = p.context().free();
    eliminate(&gens, &keep, budget)?.iter().map(|g| g.to_context(&pc)).collect()
}

/// Upper bound for the rank of `D`: the number of ring variables minus the
/// number of new coordinates `M * (X, ...)` that `D` kills. The order of the
/// coordinates does not matter, since they can always be permuted.
pub fn rank_upper_bound_witness(d: &Derivation, m: &PolyMatrix) -> Result<usize> {
    let ctx = d.context();
    let ring = ctx.ring_names();
    let fresh: Vec<String> = (1..=ring.len()).map(|i| fresh_name(ctx, i)).collect();
    let names: Vec<&str> = fresh.iter().map(String::as_str).collect();
    let e = d.change_coordinates(m, &names)?;
    let zeros = e.ring_images().iter().filter(|(_, p)| p.is_zero()).count();
    Ok(ring.len() - zeros)
}

fn fresh_name(ctx: &VarContext, i: usize) -> String {
    let mut name = format!("C{i}");
    while ctx.index_of(&name).is_some() {
        name.push('_');
    }
    name
}
