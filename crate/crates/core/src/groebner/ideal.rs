use serde::Serialize;

use super::{Budget, GroebnerBasis, MonomialOrder};
use crate::error::{Error, Result};
use crate::poly::{gcd, Polynomial, VarContext};

/// True iff `p` lies in the ideal generated by `gens` (and the context
/// relations).
pub fn ideal_membership(p: &Polynomial, gens: &[Polynomial], budget: Budget) -> Result<bool> {
    let ctx = p.context();
    let gb = GroebnerBasis::compute(ctx, gens, &MonomialOrder::grevlex(ctx.len()), budget)?;
    gb.contains(p)
}

/// How two nonzero polynomials of a polynomial ring sit relative to each
/// other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairClass {
    /// They share a nonconstant factor.
    CommonFactor,
    /// They generate the unit ideal.
    Comaximal,
    /// Coprime but not comaximal; in a UFD this makes them a regular sequence.
    RegularSequence,
}

pub fn classify_pair(f: &Polynomial, g: &Polynomial, budget: Budget) -> Result<PairClass> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("classify_pair"));
    }
    if f.context().is_quotient() {
        return Err(Error::QuotientContext("classify_pair"));
    }
    if !gcd(f, g)?.is_constant() {
        return Ok(PairClass::CommonFactor);
    }
    let one = Polynomial::one(f.context());
    if ideal_membership(&one, &[f.clone(), g.clone()], budget)? {
        Ok(PairClass::Comaximal)
    } else {
        Ok(PairClass::RegularSequence)
    }
}

/// Generators of the intersection of the ideal with the subring in the
/// `keep` variables, from a block order with the kept variables lowest.
pub fn eliminate(gens: &[Polynomial], keep: &[&str], budget: Budget) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ctx = first.context();
    let mut kept = Vec::with_capacity(keep.len());
    for name in keep {
        kept.push(ctx.require(name)?);
    }
    let eliminated: Vec<usize> = (0..ctx.len()).filter(|i| !kept.contains(i)).collect();
    let order = MonomialOrder::elimination(&eliminated, &kept)?;
    let gb = GroebnerBasis::compute(ctx, gens, &order, budget)?;
    let mut out = Vec::new();
    for g in gb.basis() {
        if g.support().iter().all(|i| kept.contains(i)) {
            let g = g.to_context(ctx)?;
            if !g.is_zero() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// True when `gens` is a single generator equal to `relation` up to a
/// nonzero rational factor.
pub fn is_principal_generated_by(gens: &[Polynomial], relation: &Polynomial) -> bool {
    matches!(gens, [g] if !relation.is_zero() && g.monic() == relation.monic())
}

/// Outcome of a subalgebra membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// For members, an expression in the tag variables `_T1.._Tk`, the
    /// coefficient variables and (when an element was inverted) `_s`,
    /// living in the extended context.
    pub representation: Option<Polynomial>,
}

/// The Q-algebra generated by some polynomials, the coefficient variables
/// and optionally the inverse of one element, prepared for repeated
/// membership queries.
///
/// Tag variables `_Ti` carry the relations `_Ti - g_i`; the inverse uses a
/// variable `_s` with `_s * f - 1`. A polynomial is a member iff its normal
/// form under an order eliminating the ring variables involves only tags,
/// `_s` and coefficient variables.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    ctx: VarContext,
    ext: VarContext,
    gb: GroebnerBasis,
    allowed: Vec<bool>,
}

pub const TAG_PREFIX: &str = "_T";
pub const RABINOWITSCH_VAR: &str = "_s";

impl Subalgebra {
    pub fn new(gens: &[Polynomial], inverted: Option<&Polynomial>, ctx: &VarContext, budget: Budget) -> Result<Self> {
        for g in gens {
            ctx.check_same(g.context())?;
        }
        if let Some(f) = inverted {
            ctx.check_same(f.context())?;
            let plain = Subalgebra::new(gens, None, ctx, budget)?;
            if !plain.contains(f)?.member {
                return Err(Error::InvertedNotInSubalgebra);
            }
        }
        let mut extra: Vec<String> = (1..=gens.len()).map(|i| format!("{TAG_PREFIX}{i}")).collect();
        if inverted.is_some() {
            extra.push(RABINOWITSCH_VAR.to_string());
        }
        let ext = ctx.extended(&extra)?;
        let n0 = ctx.len();
        let mut ideal = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let tag = Polynomial::var_index(&ext, n0 + i);
            ideal.push(&tag - &g.to_context(&ext)?);
        }
        if let Some(f) = inverted {
            let s = Polynomial::var_index(&ext, n0 + gens.len());
            ideal.push(&(&s * &f.to_context(&ext)?) - &Polynomial::one(&ext));
        }
        let ring: Vec<usize> = ctx.ring_indices();
        let allowed: Vec<bool> = (0..ext.len()).map(|i| !ring.contains(&i)).collect();
        let kept: Vec<usize> = (0..ext.len()).filter(|&i| allowed[i]).collect();
        let order = MonomialOrder::elimination(&ring, &kept)?;
        let gb = GroebnerBasis::compute(&ext, &ideal, &order, budget)?;
        Ok(Subalgebra { ctx: ctx.clone(), ext, gb, allowed })
    }

    /// The context of the representations (original variables, tags, `_s`).
    pub fn extended_context(&self) -> &VarContext {
        &self.ext
    }

    pub fn contains(&self, p: &Polynomial) -> Result<Membership> {
        self.ctx.check_same(p.context())?;
        let nf = self.gb.reduce(&p.to_context(&self.ext)?)?;
        let member = nf.support().iter().all(|&i| self.allowed[i]);
        Ok(Membership { member, representation: member.then_some(nf) })
    }
}

/// Decides `p` in Q[coefficient variables, gens, 1/inverted].
pub fn subalgebra_membership(
    p: &Polynomial,
    gens: &[Polynomial],
    inverted: Option<&Polynomial>,
    budget: Budget,
) -> Result<Membership> {
    Subalgebra::new(gens, inverted, p.context(), budget)?.contains(p)
}
