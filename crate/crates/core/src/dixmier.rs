//! Local slices and the Dixmier map `pi_r : B -> B_{Dr}`.

use std::fmt;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// `numerator / base^exponent`. Normalized: when `exponent > 0`, `base`
/// does not divide `numerator`, so equal elements have equal fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedElement {
    numerator: Polynomial,
    base: Polynomial,
    exponent: u32,
}

impl LocalizedElement {
    pub fn new(numerator: Polynomial, base: Polynomial, exponent: u32) -> Result<Self> {
        numerator.context().check_same(base.context())?;
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if base.context().is_quotient() {
            return Err(Error::QuotientContext("localized elements"));
        }
        let mut e = LocalizedElement { numerator, base, exponent };
        e.normalize()?;
        Ok(e)
    }

    pub fn from_polynomial(p: Polynomial, base: Polynomial) -> Result<Self> {
        LocalizedElement::new(p, base, 0)
    }

    fn normalize(&mut self) -> Result<()> {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return Ok(());
        }
        while self.exponent > 0 {
            match self.numerator.exact_div(&self.base) {
                Ok(q) => {
                    self.numerator = q;
                    self.exponent -= 1;
                }
                Err(Error::InexactDivision) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The element as a polynomial, if the denominator has cancelled.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        (self.exponent == 0).then_some(&self.numerator)
    }

    fn check_base(&self, other: &LocalizedElement) -> Result<()> {
        if self.base != other.base {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn lift(&self, exponent: u32) -> Polynomial {
        &self.numerator * &self.base.pow(exponent - self.exponent)
    }

    pub fn add(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.check_base(other)?;
        let e = self.exponent.max(other.exponent);
        LocalizedElement::new(&self.lift(e) + &other.lift(e), self.base.clone(), e)
    }

    pub fn neg(&self) -> LocalizedElement {
        LocalizedElement { numerator: -&self.numerator, ..self.clone() }
    }

    pub fn sub(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.check_base(other)?;
        LocalizedElement::new(&self.numerator * &other.numerator, self.base.clone(), self.exponent + other.exponent)
    }

    /// `D(n / b^e) = (D(n) b - e n D(b)) / b^(e+1)`.
    pub fn derive(&self, d: &Derivation) -> Result<LocalizedElement> {
        let dn = d.apply(&self.numerator)?;
        let db = d.apply(&self.base)?;
        let e = Rational::from_integer(self.exponent.into());
        let num = &(&dn * &self.base) - &(&self.numerator * &db).scale(&e);
        LocalizedElement::new(num, self.base.clone(), self.exponent + 1)
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({})/({})", self.numerator, self.base),
            e => write!(f, "({})/({})^{e}", self.numerator, self.base),
        }
    }
}

/// Checks that `r` is a local slice of `D` and returns `Dr`.
pub fn local_slice_base(d: &Derivation, r: &Polynomial) -> Result<Polynomial> {
    let dr = d.apply(r)?;
    if dr.is_zero() {
        return Err(Error::NotLocalSlice(format!("D({r}) = 0")));
    }
    if !d.apply(&dr)?.is_zero() {
        return Err(Error::NotLocalSlice(format!("D({r}) = {dr} is not in the kernel")));
    }
    Ok(dr)
}

/// `pi_r(f) = sum_i (-1)^i / i! * D^i f * r^i / (Dr)^i`, put over
/// `(Dr)^nu` with `nu` the nilpotency index of `f`.
pub fn dixmier_map(d: &Derivation, r: &Polynomial, f: &Polynomial, cap: u32) -> Result<LocalizedElement> {
    let base = local_slice_base(d, r)?;
    let orbit = d.orbit(f, cap)?.ok_or(Error::CapExceeded { cap })?;
    let nu = orbit.len() as u32 - 1;
    let mut num = Polynomial::zero(f.context());
    let mut r_pow = Polynomial::one(f.context());
    for (i, dif) in orbit.iter().enumerate() {
        let i = i as u32;
        let mut c = rational::factorial(i).recip();
        if i % 2 == 1 {
            c = -c;
        }
        let term = &(dif * &r_pow) * &base.pow(nu - i);
        num = &num + &term.scale(&c);
        r_pow = &r_pow * r;
    }
    LocalizedElement::new(num, base, nu)
}

/// `pi_s(v)` for every ring variable `v`, for an exact slice `Ds = 1`.
pub fn slice_kernel_generators(d: &Derivation, s: &Polynomial, cap: u32) -> Result<Vec<Polynomial>> {
    require_slice(d, s)?;
    let ctx = d.context();
    let mut out = Vec::new();
    for name in ctx.ring_names() {
        let v = Polynomial::var(ctx, name)?;
        let pi = dixmier_map(d, s, &v, cap)?;
        out.push(pi.as_polynomial().expect("slice has unit base").clone());
    }
    Ok(out)
}

/// True iff `f = sum_i pi_s(D^i f) s^i / i!`.
pub fn slice_taylor_identity(d: &Derivation, s: &Polynomial, f: &Polynomial, cap: u32) -> Result<bool> {
    require_slice(d, s)?;
    let orbit = d.orbit(f, cap)?.ok_or(Error::CapExceeded { cap })?;
    let mut acc = Polynomial::zero(f.context());
    let mut s_pow = Polynomial::one(f.context());
    for (i, dif) in orbit.iter().enumerate() {
        let pi = dixmier_map(d, s, dif, cap)?;
        let coeff = pi.as_polynomial().expect("slice has unit base");
        acc = &acc + &(coeff * &s_pow).scale(&rational::factorial(i as u32).recip());
        s_pow = &s_pow * s;
    }
    Ok(acc == *f)
}

fn require_slice(d: &Derivation, s: &Polynomial) -> Result<()> {
    let ds = d.apply(s)?;
    if !ds.is_one() {
        return Err(Error::NotSlice(format!("D({s}) = {ds}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::DEFAULT_NILPOTENCY_CAP as CAP;
    use crate::poly::VarContext;

    fn tctx() -> VarContext {
        VarContext::over(&["t"], &["X", "Y", "Z"]).unwrap()
    }

    fn qctx() -> VarContext {
        VarContext::new(&["X", "Y", "Z"], &[]).unwrap()
    }

    fn p(s: &str, c: &VarContext) -> Polynomial {
        Polynomial::parse(s, c).unwrap()
    }

    fn rank1() -> Derivation {
        Derivation::parse(&qctx(), &[("Z", "1")]).unwrap()
    }

    #[test]
    fn slice_maps_itself_to_zero() {
        let c = qctx();
        let pi = dixmier_map(&rank1(), &p("Z", &c), &p("Z", &c), CAP).unwrap();
        assert!(pi.is_zero());
        let pi = dixmier_map(&rank1(), &p("Z", &c), &p("X", &c), CAP).unwrap();
        assert_eq!(pi.as_polynomial(), Some(&p("X", &c)));
    }

    #[test]
    fn pidex_local_slice() {
        let c = tctx();
        let d = Derivation::parse(&c, &[("Y", "X - t"), ("Z", "X + t")]).unwrap();
        let pi = dixmier_map(&d, &p("Y", &c), &p("Z", &c), CAP).unwrap();
        assert_eq!(pi.numerator(), &p("(X-t)*Z - (X+t)*Y", &c));
        assert_eq!(pi.base(), &p("X - t", &c));
        assert_eq!(pi.exponent(), 1);
        assert!(pi.derive(&d).unwrap().is_zero());
        assert!(matches!(dixmier_map(&d, &p("X", &c), &p("Z", &c), CAP), Err(Error::NotLocalSlice(_))));
    }

    #[test]
    fn normalization_cancels_base() {
        let c = tctx();
        let e = LocalizedElement::new(p("t^2*X + t^3", &c), p("t", &c), 3).unwrap();
        assert_eq!((e.numerator().clone(), e.exponent()), (p("X + t", &c), 1));
        assert_eq!(e.to_string(), "(t + X)/(t)");
        let z = LocalizedElement::new(p("0", &c), p("t", &c), 4).unwrap();
        assert_eq!(z.exponent(), 0);
    }

    #[test]
    fn two_var_images() {
        let c = tctx();
        let d = Derivation::parse(&c, &[("X", "t"), ("Y", "t*Z + X^2"), ("Z", "-2*X")]).unwrap();
        let pi = dixmier_map(&d, &p("X", &c), &p("Y", &c), CAP).unwrap();
        assert_eq!(pi.numerator(), &p("-(t*Z + X^2)*X + t*Y", &c));
        assert_eq!(pi.exponent(), 1);
        let pi = dixmier_map(&d, &p("X", &c), &p("Z", &c), CAP).unwrap();
        assert_eq!(pi.numerator(), &p("t*Z + X^2", &c));
    }

    #[test]
    fn kernel_generators_from_slice() {
        let c = qctx();
        let gens = slice_kernel_generators(&rank1(), &p("Z", &c), CAP).unwrap();
        assert_eq!(gens, vec![p("X", &c), p("Y", &c), p("0", &c)]);
        let x = VarContext::new(&["X"], &[]).unwrap();
        let dx = Derivation::parse(&x, &[("X", "1")]).unwrap();
        assert!(slice_kernel_generators(&dx, &p("X", &x), CAP).unwrap()[0].is_zero());
        assert!(matches!(slice_kernel_generators(&rank1(), &p("2*Z", &c), CAP), Err(Error::NotSlice(_))));
    }

    #[test]
    fn taylor_reconstruction() {
        let c = qctx();
        assert!(slice_taylor_identity(&rank1(), &p("Z", &c), &p("X*Z^2", &c), CAP).unwrap());
        assert!(slice_taylor_identity(&rank1(), &p("Z", &c), &p("X^2 - Y", &c), CAP).unwrap());
        let d = Derivation::parse(&c, &[("X", "1"), ("Y", "X"), ("Z", "X*Y")]).unwrap();
        assert!(slice_taylor_identity(&d, &p("X", &c), &p("Z^2 + Y*X", &c), CAP).unwrap());
    }

    #[test]
    fn cap_is_reported() {
        let c = qctx();
        let d = Derivation::parse(&c, &[("X", "1"), ("Y", "X"), ("Z", "Y")]).unwrap();
        assert_eq!(dixmier_map(&d, &p("X", &c), &p("Z", &c), 2), Err(Error::CapExceeded { cap: 2 }));
    }
}
