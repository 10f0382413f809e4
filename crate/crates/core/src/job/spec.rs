//! Job file schema and validation.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use crate::certkit::{KernelCertificate, Presentation};
use crate::derivation::Derivation;
use crate::error::Error;
use crate::linalg::PolyMatrix;
use crate::poly::{parse_with_bindings, Polynomial, VarContext};

use super::JobError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRing {
    #[serde(default)]
    pub coefficients: Vec<String>,
    pub variables: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawJob {
    #[serde(default)]
    pub name: Option<String>,
    pub ring: RawRing,
    /// Named polynomials, in order; later ones may use earlier ones.
    #[serde(default)]
    pub definitions: serde_json::Map<String, serde_json::Value>,
    #[serde(default)]
    pub derivation: BTreeMap<String, String>,
    #[serde(default)]
    pub checks: Vec<RawCheck>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawCheck {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(flatten)]
    pub kind: RawKind,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawPresentation {
    pub tags: Vec<String>,
    pub relation: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawLocalized {
    pub numerator: String,
    #[serde(default)]
    pub exponent: u32,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RawKind {
    LocallyNilpotent {
        #[serde(default)]
        cap: Option<u32>,
        #[serde(default)]
        expect_indices: Option<BTreeMap<String, u32>>,
        #[serde(default = "yes")]
        expect_certified: bool,
    },
    NilpotencyIndex {
        poly: String,
        #[serde(default)]
        cap: Option<u32>,
        /// `null` expects the cap to be exceeded.
        expect: Option<u32>,
    },
    QuasiNice {
        #[serde(default)]
        expect_vars: Option<Vec<String>>,
        #[serde(default)]
        expect_nice: Option<bool>,
    },
    Irreducible {
        #[serde(default = "yes")]
        expect: bool,
    },
    FixedPointFree {
        #[serde(default = "yes")]
        expect: bool,
    },
    Identity {
        lhs: String,
        rhs: String,
    },
    Kernel {
        polys: Vec<String>,
        #[serde(default = "yes")]
        expect: bool,
    },
    ClassifyPair {
        f: String,
        g: String,
        expect: String,
    },
    IdealMembership {
        poly: String,
        gens: Vec<String>,
        #[serde(default = "yes")]
        expect: bool,
    },
    SubalgebraMembership {
        poly: String,
        gens: Vec<String>,
        #[serde(default)]
        inverted: Option<String>,
        #[serde(default = "yes")]
        expect: bool,
    },
    Presentation {
        generators: Vec<String>,
        tags: Vec<String>,
        relation: String,
    },
    AlgebraicallyIndependent {
        polys: Vec<String>,
        #[serde(default = "yes")]
        expect: bool,
    },
    KernelCertificate {
        generators: Vec<String>,
        localizing: String,
        local_slice: String,
        #[serde(default)]
        presentation: Option<RawPresentation>,
        trdeg: usize,
        #[serde(default)]
        cap: Option<u32>,
        #[serde(default = "yes")]
        expect: bool,
        /// For negative controls: the first step expected to fail.
        #[serde(default)]
        expect_failed_step: Option<String>,
    },
    Dixmier {
        slice: String,
        targets: Vec<String>,
        #[serde(default)]
        expect: Option<Vec<RawLocalized>>,
        #[serde(default)]
        cap: Option<u32>,
    },
    RankUpperBound {
        matrix: Vec<Vec<String>>,
        expect: usize,
    },
    JacobianDerivation {
        f: String,
        #[serde(default)]
        alpha: Option<String>,
        /// Expected images; when absent the job's derivation is expected.
        #[serde(default)]
        expect: Option<BTreeMap<String, String>>,
    },
    UnimodularCompletion {
        row: Vec<String>,
    },
}

impl RawKind {
    pub fn type_name(&self) -> &'static str {
        match self {
            RawKind::LocallyNilpotent { .. } => "locally_nilpotent",
            RawKind::NilpotencyIndex { .. } => "nilpotency_index",
            RawKind::QuasiNice { .. } => "quasi_nice",
            RawKind::Irreducible { .. } => "irreducible",
            RawKind::FixedPointFree { .. } => "fixed_point_free",
            RawKind::Identity { .. } => "identity",
            RawKind::Kernel { .. } => "kernel",
            RawKind::ClassifyPair { .. } => "classify_pair",
            RawKind::IdealMembership { .. } => "ideal_membership",
            RawKind::SubalgebraMembership { .. } => "subalgebra_membership",
            RawKind::Presentation { .. } => "presentation",
            RawKind::AlgebraicallyIndependent { .. } => "algebraically_independent",
            RawKind::KernelCertificate { .. } => "kernel_certificate",
            RawKind::Dixmier { .. } => "dixmier",
            RawKind::RankUpperBound { .. } => "rank_upper_bound",
            RawKind::JacobianDerivation { .. } => "jacobian_derivation",
            RawKind::UnimodularCompletion { .. } => "unimodular_completion",
        }
    }
}

/// Expected outcome of a pair classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedPair {
    CommonFactor,
    Comaximal,
    RegularSequence,
}

/// A validated check with every polynomial parsed.
#[derive(Debug, Clone)]
pub enum CheckKind {
    LocallyNilpotent {
        cap: Option<u32>,
        expect_indices: Option<BTreeMap<String, u32>>,
        expect_certified: bool,
    },
    NilpotencyIndex {
        poly: Polynomial,
        cap: Option<u32>,
        expect: Option<u32>,
    },
    QuasiNice {
        expect_vars: Option<Vec<String>>,
        expect_nice: Option<bool>,
    },
    Irreducible {
        expect: bool,
    },
    FixedPointFree {
        expect: bool,
    },
    Identity {
        lhs: Polynomial,
        rhs: Polynomial,
    },
    Kernel {
        polys: Vec<Polynomial>,
        expect: bool,
    },
    ClassifyPair {
        f: Polynomial,
        g: Polynomial,
        expect: ExpectedPair,
    },
    IdealMembership {
        poly: Polynomial,
        gens: Vec<Polynomial>,
        expect: bool,
    },
    SubalgebraMembership {
        poly: Polynomial,
        gens: Vec<Polynomial>,
        inverted: Option<Polynomial>,
        expect: bool,
    },
    Presentation {
        generators: Vec<Polynomial>,
        presentation: Presentation,
    },
    AlgebraicallyIndependent {
        polys: Vec<Polynomial>,
        expect: bool,
    },
    KernelCertificate {
        certificate: Box<KernelCertificate>,
        cap: Option<u32>,
        expect: bool,
        expect_failed_step: Option<String>,
    },
    Dixmier {
        slice: Polynomial,
        targets: Vec<Polynomial>,
        expect: Option<Vec<(Polynomial, u32)>>,
        cap: Option<u32>,
    },
    RankUpperBound {
        matrix: PolyMatrix,
        expect: usize,
    },
    JacobianDerivation {
        f: Polynomial,
        alpha: Polynomial,
        expect: Derivation,
    },
    UnimodularCompletion {
        row: Vec<Polynomial>,
    },
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
}

/// A validated job: ring, named polynomials, derivation and checks.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub name: String,
    pub context: VarContext,
    pub definitions: Vec<(String, Polynomial)>,
    pub derivation: Derivation,
    pub checks: Vec<Check>,
}

impl RawRing {
    pub fn context(&self) -> Result<VarContext, Error> {
        let ctx = VarContext::over(&self.coefficients, &self.variables)?;
        if self.relations.is_empty() {
            Ok(ctx)
        } else {
            ctx.with_relations(&self.relations)
        }
    }
}

struct Parser<'a> {
    ctx: &'a VarContext,
    bindings: &'a HashMap<String, Polynomial>,
    check: Option<usize>,
}

impl Parser<'_> {
    fn err(&self, field: &str, error: Error) -> JobError {
        JobError::Parse { check: self.check, field: field.to_string(), error }
    }

    fn poly(&self, field: &str, text: &str) -> Result<Polynomial, JobError> {
        parse_with_bindings(text, self.ctx, self.bindings).map_err(|e| self.err(field, e))
    }

    fn polys(&self, field: &str, texts: &[String]) -> Result<Vec<Polynomial>, JobError> {
        texts.iter().enumerate().map(|(i, t)| self.poly(&format!("{field}[{i}]"), t)).collect()
    }
}

/// Ring, named polynomials and derivation of a job, without its checks.
#[derive(Debug, Clone)]
pub struct JobSetup {
    pub context: VarContext,
    pub definitions: Vec<(String, Polynomial)>,
    pub bindings: HashMap<String, Polynomial>,
    pub derivation: Derivation,
}

impl JobSetup {
    /// Validates the ring, definitions and derivation of a raw job.
    pub fn from_raw(raw: &RawJob) -> Result<Self, JobError> {
        validate_setup(raw)
    }

    /// Parses `text` in the job ring, with the job's definitions in scope.
    pub fn parse(&self, text: &str) -> Result<Polynomial, Error> {
        parse_with_bindings(text, &self.context, &self.bindings)
    }
}

pub(super) fn validate_setup(raw: &RawJob) -> Result<JobSetup, JobError> {
    let ctx = raw.ring.context().map_err(JobError::Ring)?;
    let mut bindings = HashMap::new();
    let mut definitions = Vec::new();
    for (name, value) in &raw.definitions {
        let field = format!("definitions.{name}");
        let text = value
            .as_str()
            .ok_or_else(|| JobError::Schema { path: field.clone(), message: "expected a polynomial string".into() })?;
        if ctx.index_of(name).is_some() || name.starts_with('_') {
            return Err(JobError::Parse {
                check: None,
                field,
                error: Error::InvalidContext(format!(
                    "definition name `{name}` clashes with a variable or is reserved"
                )),
            });
        }
        let p = Parser { ctx: &ctx, bindings: &bindings, check: None }.poly(&field, text)?;
        bindings.insert(name.clone(), p.clone());
        definitions.push((name.clone(), p));
    }

    let top = Parser { ctx: &ctx, bindings: &bindings, check: None };
    let mut images = Vec::new();
    for (v, text) in &raw.derivation {
        images.push((v.as_str(), top.poly(&format!("derivation.{v}"), text)?));
    }
    let derivation = Derivation::new(&ctx, &images).map_err(|e| top.err("derivation", e))?;
    Ok(JobSetup { context: ctx, definitions, bindings, derivation })
}

pub(super) fn validate(raw: RawJob, default_name: &str) -> Result<JobSpec, JobError> {
    let JobSetup { context: ctx, definitions, bindings, derivation } = validate_setup(&raw)?;
    if raw.checks.is_empty() {
        return Err(JobError::Schema { path: "checks".into(), message: "at least one check is required".into() });
    }
    let mut checks = Vec::new();
    for (i, rc) in raw.checks.iter().enumerate() {
        let p = Parser { ctx: &ctx, bindings: &bindings, check: Some(i) };
        let kind = validate_check(&p, &rc.kind, &ctx, &derivation)?;
        let name = rc.name.clone().unwrap_or_else(|| rc.kind.type_name().to_string());
        checks.push(Check { name, kind });
    }
    Ok(JobSpec {
        name: raw.name.unwrap_or_else(|| default_name.to_string()),
        context: ctx,
        definitions,
        derivation,
        checks,
    })
}

fn validate_check(p: &Parser<'_>, raw: &RawKind, ctx: &VarContext, d: &Derivation) -> Result<CheckKind, JobError> {
    Ok(match raw.clone() {
        RawKind::LocallyNilpotent { cap, expect_indices, expect_certified } => {
            if let Some(idx) = &expect_indices {
                for v in idx.keys() {
                    ctx.require(v).map_err(|e| p.err("expect_indices", e))?;
                }
            }
            CheckKind::LocallyNilpotent { cap, expect_indices, expect_certified }
        }
        RawKind::NilpotencyIndex { poly, cap, expect } => {
            CheckKind::NilpotencyIndex { poly: p.poly("poly", &poly)?, cap, expect }
        }
        RawKind::QuasiNice { expect_vars, expect_nice } => CheckKind::QuasiNice { expect_vars, expect_nice },
        RawKind::Irreducible { expect } => CheckKind::Irreducible { expect },
        RawKind::FixedPointFree { expect } => CheckKind::FixedPointFree { expect },
        RawKind::Identity { lhs, rhs } => CheckKind::Identity { lhs: p.poly("lhs", &lhs)?, rhs: p.poly("rhs", &rhs)? },
        RawKind::Kernel { polys, expect } => CheckKind::Kernel { polys: p.polys("polys", &polys)?, expect },
        RawKind::ClassifyPair { f, g, expect } => {
            let expect = match expect.as_str() {
                "common_factor" => ExpectedPair::CommonFactor,
                "comaximal" => ExpectedPair::Comaximal,
                "regular_sequence" => ExpectedPair::RegularSequence,
                other => {
                    return Err(JobError::Schema {
                        path: format!("checks[{}].expect", p.check.unwrap_or(0)),
                        message: format!(
                            "unknown pair class `{other}`, expected common_factor, comaximal or regular_sequence"
                        ),
                    })
                }
            };
            CheckKind::ClassifyPair { f: p.poly("f", &f)?, g: p.poly("g", &g)?, expect }
        }
        RawKind::IdealMembership { poly, gens, expect } => {
            CheckKind::IdealMembership { poly: p.poly("poly", &poly)?, gens: p.polys("gens", &gens)?, expect }
        }
        RawKind::SubalgebraMembership { poly, gens, inverted, expect } => CheckKind::SubalgebraMembership {
            poly: p.poly("poly", &poly)?,
            gens: p.polys("gens", &gens)?,
            inverted: inverted.map(|s| p.poly("inverted", &s)).transpose()?,
            expect,
        },
        RawKind::Presentation { generators, tags, relation } => {
            let generators = p.polys("generators", &generators)?;
            let tags: Vec<&str> = tags.iter().map(String::as_str).collect();
            let presentation = Presentation::parse(ctx, &tags, &relation).map_err(|e| p.err("relation", e))?;
            CheckKind::Presentation { generators, presentation }
        }
        RawKind::AlgebraicallyIndependent { polys, expect } => {
            CheckKind::AlgebraicallyIndependent { polys: p.polys("polys", &polys)?, expect }
        }
        RawKind::KernelCertificate {
            generators,
            localizing,
            local_slice,
            presentation,
            trdeg,
            cap,
            expect,
            expect_failed_step,
        } => {
            let presentation = match presentation {
                None => None,
                Some(rp) => {
                    let tags: Vec<&str> = rp.tags.iter().map(String::as_str).collect();
                    Some(Presentation::parse(ctx, &tags, &rp.relation).map_err(|e| p.err("presentation.relation", e))?)
                }
            };
            let certificate = KernelCertificate {
                derivation: d.clone(),
                generators: p.polys("generators", &generators)?,
                localizing: p.poly("localizing", &localizing)?,
                local_slice: p.poly("local_slice", &local_slice)?,
                presentation,
                expected_mod_f_trdeg: trdeg,
            };
            CheckKind::KernelCertificate { certificate: Box::new(certificate), cap, expect, expect_failed_step }
        }
        RawKind::Dixmier { slice, targets, expect, cap } => CheckKind::Dixmier {
            slice: p.poly("slice", &slice)?,
            targets: p.polys("targets", &targets)?,
            expect: expect
                .map(|es| {
                    es.iter()
                        .enumerate()
                        .map(|(i, e)| Ok((p.poly(&format!("expect[{i}].numerator"), &e.numerator)?, e.exponent)))
                        .collect::<Result<Vec<_>, JobError>>()
                })
                .transpose()?,
            cap,
        },
        RawKind::RankUpperBound { matrix, expect } => {
            let rows = matrix
                .iter()
                .enumerate()
                .map(|(i, r)| p.polys(&format!("matrix[{i}]"), r))
                .collect::<Result<Vec<_>, _>>()?;
            let matrix = PolyMatrix::new(ctx, rows).map_err(|e| p.err("matrix", e))?;
            CheckKind::RankUpperBound { matrix, expect }
        }
        RawKind::JacobianDerivation { f, alpha, expect } => {
            let alpha = match alpha {
                Some(a) => p.poly("alpha", &a)?,
                None => Polynomial::one(ctx),
            };
            let expect = match expect {
                None => d.clone(),
                Some(map) => {
                    let mut images = Vec::new();
                    for (v, text) in &map {
                        images.push((v.as_str(), p.poly(&format!("expect.{v}"), text)?));
                    }
                    Derivation::new(ctx, &images).map_err(|e| p.err("expect", e))?
                }
            };
            CheckKind::JacobianDerivation { f: p.poly("f", &f)?, alpha, expect }
        }
        RawKind::UnimodularCompletion { row } => CheckKind::UnimodularCompletion { row: p.polys("row", &row)? },
    })
}
