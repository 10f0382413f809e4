use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::buchberger::{self, StepCounter, Term};
use crate::groebner::MonomialOrder;
use crate::rational::Rational;

/// Ordered variable names, the subset that generates the coefficient ring,
/// and optional relations among coefficient variables.
///
/// Contexts are cheap to clone and compare. Two contexts are equal when they
/// have the same names, coefficient flags and relations.
#[derive(Clone)]
pub struct VarContext {
    inner: Arc<Inner>,
}

#[derive(PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    coeff: Vec<bool>,
    relations: Vec<BTreeMap<Monomial, Rational>>,
    /// Reduced basis of the relation ideal under `relation_order`.
    relation_basis: Vec<Vec<Term>>,
    relation_order: MonomialOrder,
}

fn valid_user_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    /// Context over `vars`, with `coeff_vars` (a subset) generating the
    /// coefficient ring.
    pub fn new<S: AsRef<str>>(vars: &[S], coeff_vars: &[S]) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.starts_with('_') {
                return Err(Error::InvalidContext(format!("`{n}` uses the reserved `_` prefix")));
            }
            if !valid_user_name(n) {
                return Err(Error::InvalidContext(format!("`{n}` is not a valid identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidContext(format!("duplicate variable `{n}`")));
            }
        }
        let mut coeff = vec![false; names.len()];
        for c in coeff_vars {
            let c = c.as_ref();
            match names.iter().position(|n| n == c) {
                Some(i) => coeff[i] = true,
                None => {
                    return Err(Error::InvalidContext(format!("coefficient variable `{c}` is not a context variable")))
                }
            }
        }
        Ok(Self::from_parts(names, coeff))
    }

    /// Coefficient variables first, then ring variables.
    pub fn over<S: AsRef<str>>(coeff_vars: &[S], ring_vars: &[S]) -> Result<Self> {
        let all: Vec<&str> = coeff_vars.iter().chain(ring_vars).map(|s| s.as_ref()).collect();
        let coeff: Vec<&str> = coeff_vars.iter().map(|s| s.as_ref()).collect();
        Self::new(&all, &coeff)
    }

    fn from_parts(names: Vec<String>, coeff: Vec<bool>) -> Self {
        let relation_order = relation_order(&coeff);
        VarContext {
            inner: Arc::new(Inner { names, coeff, relations: Vec::new(), relation_basis: Vec::new(), relation_order }),
        }
    }

    /// The same context with the quotient by the given relations, which may
    /// only involve coefficient variables.
    pub fn with_relations<S: AsRef<str>>(&self, relations: &[S]) -> Result<Self> {
        let free = self.free();
        let polys = relations.iter().map(|r| Polynomial::parse(r.as_ref(), &free)).collect::<Result<Vec<_>>>()?;
        self.with_relation_polys(&polys)
    }

    pub fn with_relation_polys(&self, relations: &[Polynomial]) -> Result<Self> {
        let free = self.free();
        let mut maps = Vec::new();
        for r in relations {
            let r = r.to_context(&free)?;
            if let Some(v) = r.support().into_iter().find(|&v| !self.is_coeff(v)) {
                return Err(Error::InvalidContext(format!(
                    "relation `{r}` involves non-coefficient variable `{}`",
                    self.name(v)
                )));
            }
            if !r.is_zero() {
                maps.push(r.terms_map().clone());
            }
        }
        let order = relation_order(&self.inner.coeff);
        let gens: Vec<Vec<Term>> = maps
            .iter()
            .map(|m| buchberger::sort_terms(m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(), &order))
            .collect();
        let basis = if gens.is_empty() {
            Vec::new()
        } else {
            buchberger::buchberger(gens, &order, &mut StepCounter::unlimited())?
        };
        if basis.iter().any(|g| g[0].0.is_one()) {
            return Err(Error::InvalidContext("relations generate the unit ideal".into()));
        }
        Ok(VarContext {
            inner: Arc::new(Inner {
                names: self.inner.names.clone(),
                coeff: self.inner.coeff.clone(),
                relations: maps,
                relation_basis: basis,
                relation_order: order,
            }),
        })
    }

    /// Appends ring variables, which may use the reserved `_` prefix.
    pub(crate) fn extended(&self, extra: &[String]) -> Result<Self> {
        let mut names = self.inner.names.clone();
        for e in extra {
            if names.contains(e) {
                return Err(Error::InvalidContext(format!("duplicate variable `{e}`")));
            }
            names.push(e.clone());
        }
        let n = names.len();
        let mut coeff = self.inner.coeff.clone();
        coeff.resize(n, false);
        let order = relation_order(&coeff);
        let pad = |m: &BTreeMap<Monomial, Rational>| -> BTreeMap<Monomial, Rational> {
            m.iter().map(|(k, v)| (k.extended(n), v.clone())).collect()
        };
        let relations: Vec<_> = self.inner.relations.iter().map(pad).collect();
        let relation_basis = self
            .inner
            .relation_basis
            .iter()
            .map(|g| g.iter().map(|(k, v)| (k.extended(n), v.clone())).collect())
            .collect();
        Ok(VarContext { inner: Arc::new(Inner { names, coeff, relations, relation_basis, relation_order: order }) })
    }

    /// Same variables with ring variable `index` renamed (coefficient
    /// variables and relations are untouched).
    pub(crate) fn renamed(&self, renames: &[(usize, String)]) -> Result<Self> {
        let mut names = self.inner.names.clone();
        for (i, new) in renames {
            if self.is_coeff(*i) {
                return Err(Error::InvalidContext(format!("cannot rename coefficient variable `{}`", names[*i])));
            }
            if !valid_user_name(new) {
                return Err(Error::InvalidContext(format!("`{new}` is not a valid identifier")));
            }
            names[*i] = new.clone();
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidContext(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarContext {
            inner: Arc::new(Inner {
                names,
                coeff: self.inner.coeff.clone(),
                relations: self.inner.relations.clone(),
                relation_basis: self.inner.relation_basis.clone(),
                relation_order: self.inner.relation_order.clone(),
            }),
        })
    }

    /// The context without its relations.
    pub fn free(&self) -> Self {
        if !self.is_quotient() {
            return self.clone();
        }
        Self::from_parts(self.inner.names.clone(), self.inner.coeff.clone())
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.inner.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn is_coeff(&self, index: usize) -> bool {
        self.inner.coeff[index]
    }

    pub fn coeff_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_coeff(i)).collect()
    }

    /// Indices of the non-coefficient variables, in context order.
    pub fn ring_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.is_coeff(i)).collect()
    }

    pub fn coeff_names(&self) -> Vec<&str> {
        self.coeff_indices().into_iter().map(|i| self.name(i)).collect()
    }

    pub fn ring_names(&self) -> Vec<&str> {
        self.ring_indices().into_iter().map(|i| self.name(i)).collect()
    }

    pub fn is_quotient(&self) -> bool {
        !self.inner.relations.is_empty()
    }

    /// The relations as polynomials of the free context.
    pub fn relations(&self) -> Vec<Polynomial> {
        let free = self.free();
        self.inner.relations.iter().map(|m| Polynomial::from_canonical(&free, m.clone())).collect()
    }

    pub(crate) fn same(&self, other: &VarContext) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }

    pub(crate) fn check_same(&self, other: &VarContext) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Canonical representative modulo the relations.
    pub(crate) fn reduce_terms(&self, terms: BTreeMap<Monomial, Rational>) -> BTreeMap<Monomial, Rational> {
        if self.inner.relation_basis.is_empty() {
            return terms;
        }
        let order = &self.inner.relation_order;
        let sorted = buchberger::sort_terms(terms.into_iter().collect(), order);
        let reduced = buchberger::reduce_full(sorted, &self.inner.relation_basis, order, &mut StepCounter::unlimited())
            .expect("unlimited budget");
        reduced.into_iter().collect()
    }
}

/// Lex with coefficient variables most significant.
fn relation_order(coeff: &[bool]) -> MonomialOrder {
    let perm: Vec<usize> =
        (0..coeff.len()).filter(|&i| coeff[i]).chain((0..coeff.len()).filter(|&i| !coeff[i])).collect();
    MonomialOrder::new(crate::groebner::OrderKind::Lex, perm).expect("valid permutation")
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for VarContext {}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarContext(")?;
        for (i, n) in self.inner.names.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if self.inner.coeff[i] {
                write!(f, "{n}*")?;
            } else {
                write!(f, "{n}")?;
            }
        }
        if self.is_quotient() {
            let rels: Vec<String> = self.relations().iter().map(|r| r.to_string()).collect();
            write!(f, " / ({})", rels.join(", "))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(VarContext::over(&["t"], &["X", "X"]).is_err());
        assert!(VarContext::over(&["t"], &["_T1"]).is_err());
        assert!(VarContext::over(&["t"], &["1X"]).is_err());
        assert!(VarContext::new(&["X"], &["t"]).is_err());
    }

    #[test]
    fn relations_must_be_coefficient_only() {
        let ctx = VarContext::over(&["a", "b"], &["X"]).unwrap();
        assert!(ctx.with_relations(&["a^2+b^2-1"]).is_ok());
        assert!(ctx.with_relations(&["a*X-1"]).is_err());
        assert!(ctx.with_relations(&["a", "a-1"]).is_err());
    }

    #[test]
    fn equality_is_structural() {
        let a = VarContext::over(&["t"], &["X", "Y"]).unwrap();
        let b = VarContext::over(&["t"], &["X", "Y"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, VarContext::over(&["t"], &["Y", "X"]).unwrap());
        assert_ne!(a, VarContext::new(&["t", "X", "Y"], &[]).unwrap());
    }
}
