use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Monomial, VarContext};
use crate::error::{Error, Result};
use crate::groebner::buchberger::{self, Term};
use crate::groebner::MonomialOrder;
use crate::rational::{self, Rational};

/// Sparse polynomial with exact rational coefficients.
///
/// The term map never stores zero coefficients and, in a quotient context,
/// is always the normal form modulo the context relations, so `==` is ring
/// equality.
#[derive(Clone)]
pub struct Polynomial {
    ctx: VarContext,
    terms: BTreeMap<Monomial, Rational>,
}

/// The binary operations of [`Polynomial::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

impl Polynomial {
    pub fn zero(ctx: &VarContext) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &VarContext, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ctx.len()), c);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn from_int(ctx: &VarContext, n: i64) -> Self {
        Self::constant(ctx, rational::int(n))
    }

    pub fn var(ctx: &VarContext, name: &str) -> Result<Self> {
        Ok(Self::var_index(ctx, ctx.require(name)?))
    }

    pub(crate) fn var_index(ctx: &VarContext, index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ctx.len(), index, 1), Rational::one());
        Polynomial { ctx: ctx.clone(), terms }.normalized()
    }

    pub fn parse(text: &str, ctx: &VarContext) -> Result<Self> {
        super::parse::parse_poly(text, ctx)
    }

    /// Builds a polynomial from arbitrary terms, reducing modulo the context
    /// relations.
    pub fn from_terms<I>(ctx: &VarContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ctx.len(), "monomial length must match the context");
            accumulate(&mut map, m, c);
        }
        Polynomial { ctx: ctx.clone(), terms: map }.normalized()
    }

    /// Wraps a term map that is already canonical.
    pub(crate) fn from_canonical(ctx: &VarContext, terms: BTreeMap<Monomial, Rational>) -> Self {
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub(crate) fn from_sorted(ctx: &VarContext, terms: Vec<Term>) -> Self {
        Self::from_terms(ctx, terms)
    }

    pub(crate) fn to_sorted(&self, order: &MonomialOrder) -> Vec<Term> {
        buchberger::sort_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect(), order)
    }

    fn normalized(mut self) -> Self {
        if self.ctx.is_quotient() {
            let terms = std::mem::take(&mut self.terms);
            self.terms = self.ctx.reduce_terms(terms);
        }
        self
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.ctx.len())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0)).collect()
    }

    /// True when only coefficient variables occur.
    pub fn is_coefficient(&self) -> bool {
        self.support().into_iter().all(|i| self.ctx.is_coeff(i))
    }

    /// Leading term under graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        let order = MonomialOrder::grevlex(self.ctx.len());
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Scaled so the grevlex leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn arith(op: ArithOp, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        match op {
            ArithOp::Add => p.checked_add(q),
            ArithOp::Sub => p.checked_sub(q),
            ArithOp::Mul => p.checked_mul(q),
            ArithOp::ExactDiv => p.exact_div(q),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms }.normalized())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Multiplication by a monomial.
    pub(crate) fn shift(&self, m: &Monomial) -> Polynomial {
        Polynomial { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
            .normalized()
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `h` with `self = q * h`; fails unless `q` divides `self` exactly.
    pub fn exact_div(&self, q: &Polynomial) -> Result<Polynomial> {
        self.ctx.check_same(&q.ctx)?;
        if self.ctx.is_quotient() {
            return Err(Error::QuotientContext("exact division"));
        }
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = MonomialOrder::grevlex(self.ctx.len());
        let qs = q.to_sorted(&order);
        let mut p = self.to_sorted(&order);
        let mut quotient = Vec::new();
        while let Some((lm, lc)) = p.first() {
            let m = lm.div(&qs[0].0).ok_or(Error::InexactDivision)?;
            let c = lc / &qs[0].1;
            p = buchberger::sub_scaled(&p, &c, &m, &qs, &order);
            quotient.push((m, c));
        }
        Ok(Polynomial::from_canonical(&self.ctx, quotient.into_iter().collect()))
    }

    /// True when `q` divides `self` in the free polynomial ring.
    pub fn divisible_by(&self, q: &Polynomial) -> Result<bool> {
        match self.exact_div(q) {
            Ok(_) => Ok(true),
            Err(Error::InexactDivision) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.ctx.require(var)?;
        if self.ctx.is_quotient() && self.ctx.is_coeff(i) {
            return Err(Error::QuotientContext("differentiation by a coefficient variable"));
        }
        Ok(self.derivative_index(i))
    }

    /// Formal derivative in variable `index`. In a quotient context only
    /// ring variables give a well-defined result.
    pub(crate) fn derivative_index(&self, index: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e > 0 {
                accumulate(&mut terms, m.with_exponent(index, e - 1), c * rational::int(e as i64));
            }
        }
        Polynomial { ctx: self.ctx.clone(), terms }.normalized()
    }

    /// Simultaneous substitution. Assigned variables map to the given
    /// polynomials, which share one target context; every other variable
    /// that occurs maps to the variable of the same name in that context.
    pub fn substitute(&self, assignment: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let target = match assignment.first() {
            Some((_, p)) => p.ctx.clone(),
            None => return Ok(self.clone()),
        };
        let mut images: Vec<Option<Polynomial>> = vec![None; self.ctx.len()];
        for (name, p) in assignment {
            target.check_same(&p.ctx)?;
            images[self.ctx.require(name)?] = Some(p.clone());
        }
        let support = self.support();
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| match img {
                Some(p) => Ok(p),
                None if support.contains(&i) => Polynomial::var(&target, self.ctx.name(i)),
                None => Ok(Polynomial::zero(&target)),
            })
            .collect::<Result<Vec<_>>>()?;
        self.substitute_all(&images, &target)
    }

    /// `images[i]` replaces variable `i`; all images live in `target`.
    pub(crate) fn substitute_all(&self, images: &[Polynomial], target: &VarContext) -> Result<Polynomial> {
        for p in images {
            target.check_same(&p.ctx)?;
        }
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// The same polynomial read in another context, matching variables by
    /// name. Every variable that occurs must exist in `target`.
    pub fn to_context(&self, target: &VarContext) -> Result<Polynomial> {
        if self.ctx.same(target) {
            return Ok(self.clone());
        }
        let support = self.support();
        let mut map = vec![usize::MAX; self.ctx.len()];
        for &i in &support {
            map[i] = target.require(self.ctx.name(i))?;
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; target.len()];
            for &i in &support {
                e[map[i]] = m.exponent(i);
            }
            (Monomial::from_exponents(e), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Coefficients with respect to variable `index`; entry `k` multiplies
    /// `var^k` and is free of that variable.
    pub fn coefficients_in(&self, index: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(index) as usize;
        let mut out: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let k = m.exponent(index) as usize;
            out[k].insert(m.with_exponent(index, 0), c.clone());
        }
        out.into_iter().map(|t| Polynomial::from_canonical(&self.ctx, t)).collect()
    }

    /// Leading coefficient with respect to variable `index`.
    pub fn leading_coefficient_in(&self, index: usize) -> Polynomial {
        self.coefficients_in(index).pop().unwrap_or_else(|| Polynomial::zero(&self.ctx))
    }

    /// Canonical text, terms in decreasing grevlex order. Parses back to the
    /// same polynomial.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let order = MonomialOrder::grevlex(self.ctx.len());
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = rational::is_negative(c);
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(rational::format(&abs));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ctx.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator impls panic on mismatched contexts; use the `checked_*` methods
// when operands come from untrusted input.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different contexts")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different contexts")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different contexts")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
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
    fn additive_inverse() {
        assert!((&p("X") + &p("-X")).is_zero());
    }

    #[test]
    fn quotient_context_reduces() {
        let ctx = VarContext::over(&["a", "b"], &["X", "Y", "Z"]).unwrap().with_relations(&["a^2+b^2-1"]).unwrap();
        let q = Polynomial::parse("a^2 + b^2", &ctx).unwrap();
        assert!(q.is_one());
        let one = Polynomial::one(&ctx);
        assert_eq!(&q * &one, one);
        for n in 1..=5 {
            assert!(q.pow(n).is_one());
        }
    }

    #[test]
    fn exact_division_recovers_factor() {
        let f = p("-(t*Z + X^2)*X + t*Y");
        let g = p("t*Z + X^2");
        let h = p("t*Y^2 - 2*t*X^2*Z^2 - 2*t*X*Y*Z - 2*X^3*Y - X^4*Z - t^2*Z^3");
        let lhs = &f.pow(2) - &g.pow(3);
        assert_eq!(lhs.exact_div(&p("t")).unwrap(), h);
        assert_eq!(p("X^2 + 1").exact_div(&p("X")), Err(Error::InexactDivision));
        assert_eq!(p("X").exact_div(&p("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn exact_div_rejected_in_quotient_context() {
        let ctx = VarContext::over(&["a", "b"], &["X"]).unwrap().with_relations(&["a^2+b^2-1"]).unwrap();
        let a = Polynomial::parse("a", &ctx).unwrap();
        assert_eq!(a.exact_div(&a), Err(Error::QuotientContext("exact division")));
    }

    #[test]
    fn partial_derivatives() {
        let f = p("X*Z - 1/2*Y^2");
        assert_eq!(f.partial_derivative("Y").unwrap(), p("-Y"));
        assert_eq!(f.partial_derivative("Z").unwrap(), p("X"));
        assert!(p("7/3").partial_derivative("X").unwrap().is_zero());
        assert_eq!(f.partial_derivative("W"), Err(Error::UnknownVariable("W".into())));
    }

    #[test]
    fn substitution() {
        let ab = VarContext::over(&["a", "b"], &["U", "V", "W", "X", "Y", "Z"]).unwrap();
        let q = |s: &str| Polynomial::parse(s, &ab).unwrap();
        let u = q("a*X + b*Y");
        assert_eq!(q("U^2").substitute(&[("U", u.clone())]).unwrap(), q("a^2*X^2 + 2*a*b*X*Y + b^2*Y^2"));
        let f = q("b*W - a*V - U^2");
        assert_eq!(f.substitute(&[]).unwrap(), f);
        let v = q("b*Z - (a*X + b*Y)*X");
        let w = q("a*Z + (a*X + b*Y)*Y");
        assert!(f.substitute(&[("U", u), ("V", v), ("W", w)]).unwrap().is_zero());
    }

    #[test]
    fn display_is_grevlex_and_parses_back() {
        let f = p("X*Z - 1/2*Y^2 + 3 - t^3");
        assert_eq!(f.to_string(), "-t^3 - 1/2*Y^2 + X*Z + 3");
        assert_eq!(p(&f.to_string()), f);
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn mismatched_contexts() {
        let other = VarContext::over(&["s"], &["X"]).unwrap();
        let x = Polynomial::var(&other, "X").unwrap();
        assert_eq!(p("X").checked_add(&x), Err(Error::ContextMismatch));
        assert_eq!(Polynomial::arith(ArithOp::Mul, &p("X"), &x), Err(Error::ContextMismatch));
    }
}
