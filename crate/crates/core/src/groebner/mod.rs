//! Groebner bases and the ideal-theoretic queries built on them.

pub(crate) mod buchberger;
mod ideal;
mod order;

pub use buchberger::DEFAULT_STEP_BUDGET;
pub use ideal::{
    classify_pair, eliminate, ideal_membership, is_principal_generated_by, subalgebra_membership, Membership,
    PairClass, Subalgebra,
};
pub use order::{MonomialOrder, OrderKind};

use buchberger::{StepCounter, Term};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarContext};

/// Environment variable that overrides [`DEFAULT_STEP_BUDGET`] in the CLI.
pub const BUDGET_ENV: &str = "LND_BUDGET";

/// Maximum number of single-term reduction steps for one basis computation
/// or reduction. Exhaustion is a hard [`Error::BudgetExhausted`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_STEP_BUDGET)
    }
}

impl Budget {
    /// The default budget, unless `LND_BUDGET` holds a positive integer.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
            .map(Budget)
            .unwrap_or_default()
    }

    fn counter(self) -> StepCounter {
        StepCounter::new(self.0)
    }
}

/// Reduced Groebner basis of an ideal together with its monomial order.
///
/// In a quotient context the relations are folded in as extra generators
/// and the basis lives in the free context.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ctx: VarContext,
    order: MonomialOrder,
    basis: Vec<Polynomial>,
    raw: Vec<Vec<Term>>,
    budget: Budget,
}

impl GroebnerBasis {
    pub fn compute(ctx: &VarContext, gens: &[Polynomial], order: &MonomialOrder, budget: Budget) -> Result<Self> {
        if order.nvars() != ctx.len() {
            return Err(Error::InvalidOrder(format!(
                "order has {} variables, context has {}",
                order.nvars(),
                ctx.len()
            )));
        }
        let free = ctx.free();
        let mut raw_gens = Vec::new();
        for r in ctx.relations() {
            raw_gens.push(r.to_sorted(order));
        }
        for g in gens {
            ctx.check_same(g.context())?;
            raw_gens.push(g.to_context(&free)?.to_sorted(order));
        }
        let raw = buchberger::buchberger(raw_gens, order, &mut budget.counter())?;
        let basis = raw.iter().map(|g| Polynomial::from_sorted(&free, g.clone())).collect();
        Ok(GroebnerBasis { ctx: ctx.clone(), order: order.clone(), basis, raw, budget })
    }

    /// The context the ideal was generated in.
    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by increasing leading monomial. They
    /// belong to the free version of the context.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.raw.len() == 1 && self.raw[0][0].0.is_one()
    }

    /// The normal form of `p`, returned in `p`'s context.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ctx.check_same(p.context())?;
        let free = self.ctx.free();
        let sorted = p.to_context(&free)?.to_sorted(&self.order);
        let nf = buchberger::reduce_full(sorted, &self.raw, &self.order, &mut self.budget.counter())?;
        Polynomial::from_sorted(&free, nf).to_context(&self.ctx)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

/// Reduced Groebner basis of the ideal generated by a nonempty list.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder, budget: Budget) -> Result<GroebnerBasis> {
    let ctx = gens.first().ok_or(Error::ZeroInput("buchberger (empty generator list)"))?.context().clone();
    GroebnerBasis::compute(&ctx, gens, order, budget)
}

/// Normal form of `p` modulo `gb`.
pub fn reduce(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.reduce(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> VarContext {
        VarContext::over(&["t"], &["X", "Y", "Z"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &ctx()).unwrap()
    }

    #[test]
    fn principal_ideal_is_monic() {
        let gb = buchberger(&[p("2*X")], &MonomialOrder::grevlex(4), Budget::default()).unwrap();
        assert_eq!(gb.basis(), &[p("X")]);
    }

    #[test]
    fn two_linear_forms() {
        let gb = buchberger(&[p("X - t"), p("X + t")], &MonomialOrder::grevlex(4), Budget::default()).unwrap();
        // leading monomials increase: X < t in grevlex with t listed first
        assert_eq!(gb.basis(), &[p("X"), p("t")]);
        assert!(gb.reduce(&p("1")).unwrap().is_one());
        assert!(gb.contains(&p("X*Y + t^2")).unwrap());
    }

    #[test]
    fn quotient_relations_folded_in() {
        let q = VarContext::over(&["a", "b"], &["X"]).unwrap().with_relations(&["a^2+b^2-1"]).unwrap();
        let free = q.free();
        let rel = Polynomial::parse("a^2 + b^2 - 1", &free).unwrap();
        let gb = GroebnerBasis::compute(&free, &[rel], &MonomialOrder::grevlex(3), Budget::default()).unwrap();
        let s = Polynomial::parse("a^2 + b^2", &free).unwrap();
        assert!(gb.reduce(&s).unwrap().is_one());
        // in the quotient context itself the empty ideal is the zero ideal
        let gb = GroebnerBasis::compute(&q, &[], &MonomialOrder::lex(3), Budget::default()).unwrap();
        let x = Polynomial::parse("X*(a^2 + b^2)", &q).unwrap();
        assert_eq!(gb.reduce(&x).unwrap(), Polynomial::parse("X", &q).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let gens = [p("X^3 - Y*Z*t"), p("Y^3 - X*Z - t"), p("Z^3 - X*Y - 1")];
        let r = buchberger(&gens, &MonomialOrder::lex(4), Budget(5));
        assert_eq!(r.unwrap_err(), Error::BudgetExhausted(5));
    }

    #[test]
    fn order_size_checked() {
        assert!(buchberger(&[p("X")], &MonomialOrder::grevlex(3), Budget::default()).is_err());
    }
}
