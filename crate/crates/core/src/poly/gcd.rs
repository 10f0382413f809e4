//! Multivariate gcd over Q by recursive content / primitive-part splitting
//! and a primitive pseudo-remainder sequence in the main variable.

use super::Polynomial;
use crate::error::{Error, Result};

/// Greatest common divisor in the free polynomial ring, normalized to have
/// grevlex leading coefficient 1. `gcd(0, q)` is `q` normalized.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.context().check_same(q.context())?;
    if p.context().is_quotient() {
        return Err(Error::QuotientContext("gcd"));
    }
    Ok(gcd_rec(p, q).monic())
}

/// Iterated gcd of a list; the gcd of the empty list is zero.
pub fn gcd_all<'a, I>(polys: I) -> Result<Option<Polynomial>>
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut acc: Option<Polynomial> = None;
    for p in polys {
        acc = Some(match acc {
            None => gcd(p, p)?,
            Some(a) => gcd(&a, p)?,
        });
    }
    Ok(acc)
}

fn gcd_rec(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(p.context());
    }
    let var = main_variable(p, q);
    match (p.degree_in(var), q.degree_in(var)) {
        (0, _) => gcd_rec(p, &content(q, var)),
        (_, 0) => gcd_rec(&content(p, var), q),
        _ => {
            let cp = content(p, var);
            let cq = content(q, var);
            let pp = p.exact_div(&cp).expect("content divides");
            let qq = q.exact_div(&cq).expect("content divides");
            let c = gcd_rec(&cp, &cq);
            &c * &primitive_gcd(pp, qq, var)
        }
    }
}

fn main_variable(p: &Polynomial, q: &Polynomial) -> usize {
    let sp = p.support();
    let sq = q.support();
    sp.into_iter().chain(sq).min().expect("nonconstant input")
}

/// gcd of the coefficients with respect to `var`.
fn content(p: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.context());
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c).monic();
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &Polynomial, var: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    p.exact_div(&content(p, var)).expect("content divides").monic()
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var);
    let lb = b.leading_coefficient_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.leading_coefficient_in(var);
        let shift = super::Monomial::var(r.context().len(), var, dr - db);
        r = &(&lb * &r) - &(&lr * &b.shift(&shift));
    }
    r
}

fn primitive_gcd(a: Polynomial, b: Polynomial, var: usize) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_part(&b, var);
        }
        if r.degree_in(var) == 0 {
            return Polynomial::one(a.context());
        }
        a = b;
        b = primitive_part(&r, var);
    }
}
