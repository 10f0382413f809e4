//! Small square matrices over the coefficient ring, with the Euclidean
//! machinery needed to complete unimodular rows over Q and Q[t].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarContext};
use crate::rational::Rational;

pub const MAX_DIM: usize = 4;

/// Square matrix whose entries involve only coefficient variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ctx: VarContext,
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ctx: &VarContext, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionMismatch(format!("matrix dimension {n} outside 1..={MAX_DIM}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!("row of length {} in a {n}x{n} matrix", row.len())));
            }
            for e in row {
                ctx.check_same(e.context())?;
                if !e.is_coefficient() {
                    return Err(Error::NotCoefficient(e.to_string()));
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { ctx: ctx.clone(), n, entries })
    }

    pub fn parse<S: AsRef<str>>(ctx: &VarContext, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| Polynomial::parse(s.as_ref(), ctx)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        PolyMatrix::new(ctx, rows)
    }

    pub fn identity(ctx: &VarContext, n: usize) -> Result<Self> {
        let rows = (0..n).map(|i| (0..n).map(|j| Polynomial::from_int(ctx, (i == j) as i64)).collect()).collect();
        PolyMatrix::new(ctx, rows)
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| self.row(i).iter().map(|p| p.to_string()).collect()).collect()
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ctx.check_same(&other.ctx)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        let n = self.n;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Polynomial::zero(&self.ctx), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(&self.ctx, rows)
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Polynomial {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        match rows.len() {
            0 => Polynomial::one(&self.ctx),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = Polynomial::zero(&self.ctx);
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.minor_det(&rows[1..], &sub_cols);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Inverse of a matrix whose determinant is a nonzero rational, via the
    /// adjugate.
    pub fn inverse_unimodular(&self) -> Result<PolyMatrix> {
        let det = self.det();
        let d = match det.constant_value() {
            Some(d) if !d.is_zero() => d,
            _ => return Err(Error::NonUnitDeterminant(det.to_string())),
        };
        let inv = d.recip();
        let n = self.n;
        let all: Vec<usize> = (0..n).collect();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        // adj[i][j] = (-1)^(i+j) * minor(j, i)
                        let r: Vec<usize> = all.iter().copied().filter(|&x| x != j).collect();
                        let c: Vec<usize> = all.iter().copied().filter(|&x| x != i).collect();
                        let m = self.minor_det(&r, &c).scale(&inv);
                        if (i + j) % 2 == 0 {
                            m
                        } else {
                            -&m
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(&self.ctx, rows)
    }
}

pub fn det(m: &PolyMatrix) -> Polynomial {
    m.det()
}

pub fn inverse_unimodular(m: &PolyMatrix) -> Result<PolyMatrix> {
    m.inverse_unimodular()
}

/// Dense univariate view: coefficient `k` of `var^k`.
fn to_dense(p: &Polynomial, var: Option<usize>) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.total_degree().map_or(0, |d| d as usize + 1)];
    for (m, c) in p.terms() {
        let k = var.map_or(0, |v| m.exponent(v) as usize);
        out[k] = c.clone();
    }
    trim(&mut out);
    out
}

fn from_dense(ctx: &VarContext, var: Option<usize>, coeffs: &[Rational]) -> Polynomial {
    let terms = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
        let m = match var {
            Some(v) => crate::poly::Monomial::var(ctx.len(), v, k as u32),
            None => crate::poly::Monomial::one(ctx.len()),
        };
        (m, c.clone())
    });
    Polynomial::from_terms(ctx, terms)
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_sub_mul(a: &[Rational], b: &[Rational], c: &[Rational]) -> Vec<Rational> {
    // a - b * c
    let mut out = a.to_vec();
    let len = (b.len() + c.len()).saturating_sub(1).max(a.len());
    out.resize(len, Rational::zero());
    for (i, x) in b.iter().enumerate() {
        for (j, y) in c.iter().enumerate() {
            out[i + j] = &out[i + j] - x * y;
        }
    }
    trim(&mut out);
    out
}

fn dense_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![Rational::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / lb;
        for (i, x) in b.iter().enumerate() {
            r[i + k] = &r[i + k] - &c * x;
        }
        q[k] = c;
        // the top coefficient cancels exactly
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// The single variable shared by the inputs, if any. Only coefficient
/// variables of a free context qualify.
fn common_variable(polys: &[&Polynomial]) -> Result<Option<usize>> {
    let ctx = polys[0].context();
    if ctx.is_quotient() {
        return Err(Error::QuotientContext("Euclidean algorithm"));
    }
    let mut var = None;
    for p in polys {
        ctx.check_same(p.context())?;
        for v in p.support() {
            if !ctx.is_coeff(v) || var.is_some_and(|w| w != v) {
                return Err(Error::NotUnivariate(p.to_string()));
            }
            var = Some(v);
        }
    }
    Ok(var)
}

/// `(g, x, y)` with `x*a + y*b = g`, `g` the monic gcd.
pub fn extended_gcd(a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
    let var = common_variable(&[a, b])?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("extended_gcd"));
    }
    let ctx = a.context();
    let (mut r0, mut r1) = (to_dense(a, var), to_dense(b, var));
    let one = vec![Rational::one()];
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = dense_div_rem(&r0, &r1);
        let s = dense_sub_mul(&s0, &q, &s1);
        let t = dense_sub_mul(&t0, &q, &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let lead = r0.last().expect("nonzero gcd").recip();
    let scale = |v: &[Rational]| -> Vec<Rational> { v.iter().map(|c| c * &lead).collect() };
    Ok((from_dense(ctx, var, &scale(&r0)), from_dense(ctx, var, &scale(&s0)), from_dense(ctx, var, &scale(&t0))))
}

/// Completes a unimodular row of length at most 3 over Q or Q[t] to a
/// matrix with that first row and nonzero rational determinant.
pub fn complete_unimodular_row(row: &[Polynomial]) -> Result<PolyMatrix> {
    if row.is_empty() || row.len() > 3 {
        return Err(Error::DimensionMismatch(format!("row length {} outside 1..=3", row.len())));
    }
    let refs: Vec<&Polynomial> = row.iter().collect();
    common_variable(&refs)?;
    let ctx = row[0].context();
    let zero = || Polynomial::zero(ctx);
    let one = || Polynomial::one(ctx);

    let g = crate::poly::gcd_all(row)?.unwrap_or_else(zero);
    if !(g.is_constant() && !g.is_zero()) {
        return Err(Error::NotUnimodular(g.to_string()));
    }

    let rows = match row {
        [a] => vec![vec![a.clone()]],
        [a, b] => {
            let (_, x, y) = extended_gcd(a, b)?;
            vec![vec![a.clone(), b.clone()], vec![-&y, x]]
        }
        [a, b, c] if a.is_zero() && b.is_zero() => {
            vec![vec![zero(), zero(), c.clone()], vec![one(), zero(), zero()], vec![zero(), one(), zero()]]
        }
        [a, b, c] => {
            let (g, x, y) = extended_gcd(a, b)?;
            let (_, u, w) = extended_gcd(&g, c)?;
            let a1 = a.exact_div(&g)?;
            let b1 = b.exact_div(&g)?;
            vec![vec![a.clone(), b.clone(), c.clone()], vec![-&y, x, zero()], vec![-&(&a1 * &w), -&(&b1 * &w), u]]
        }
        _ => unreachable!(),
    };
    PolyMatrix::new(ctx, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ctx() -> VarContext {
        VarContext::over(&["t"], &["X", "Y", "Z"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &ctx()).unwrap()
    }

    #[test]
    fn extended_gcd_examples() {
        assert_eq!(extended_gcd(&p("t"), &p("t^2")).unwrap(), (p("t"), p("1"), p("0")));
        assert_eq!(extended_gcd(&p("t - 1"), &p("t + 1")).unwrap(), (p("1"), p("-1/2"), p("1/2")));
        assert_eq!(extended_gcd(&p("0"), &p("t")).unwrap(), (p("t"), p("0"), p("1")));
        assert_eq!(extended_gcd(&p("6"), &p("4")).unwrap().0, p("1"));
    }

    #[test]
    fn extended_gcd_rejects_multivariate() {
        assert!(matches!(extended_gcd(&p("X"), &p("t")), Err(Error::NotUnivariate(_))));
        let ab = VarContext::over(&["a", "b"], &["X"]).unwrap();
        let q = |s: &str| Polynomial::parse(s, &ab).unwrap();
        assert!(matches!(extended_gcd(&q("a"), &q("b")), Err(Error::NotUnivariate(_))));
        assert_eq!(extended_gcd(&p("0"), &p("0")), Err(Error::ZeroInput("extended_gcd")));
    }

    #[test]
    fn completions() {
        let id = complete_unimodular_row(&[p("1"), p("0"), p("0")]).unwrap();
        assert_eq!(id, PolyMatrix::identity(&ctx(), 3).unwrap());

        let m = complete_unimodular_row(&[p("2"), p("3")]).unwrap();
        assert_eq!(m.row(0), &[p("2"), p("3")]);
        assert!(m.det().constant_value().is_some_and(|d| !d.is_zero()));

        let m = complete_unimodular_row(&[p("t"), p("1 - t^2"), p("0")]).unwrap();
        assert_eq!(m.row(0), &[p("t"), p("1 - t^2"), p("0")]);
        assert!(m.det().is_one());

        let m = complete_unimodular_row(&[p("0"), p("0"), p("5")]).unwrap();
        assert_eq!(m.det().constant_value(), Some(ratio(5, 1)));
    }

    #[test]
    fn non_unimodular_rows() {
        assert!(matches!(complete_unimodular_row(&[p("t"), p("t^2 + t"), p("0")]), Err(Error::NotUnimodular(_))));
        assert!(matches!(complete_unimodular_row(&[p("0"), p("0"), p("0")]), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn determinant_and_inverse() {
        let c = ctx();
        assert!(PolyMatrix::identity(&c, 3).unwrap().det().is_one());
        let n =
            PolyMatrix::parse(&c, &[vec!["t", "t + 1", "0"], vec!["t - 1", "t", "0"], vec!["0", "0", "1"]]).unwrap();
        assert!(n.det().is_one());
        let inv = n.inverse_unimodular().unwrap();
        assert_eq!(n.mul(&inv).unwrap(), PolyMatrix::identity(&c, 3).unwrap());
        assert_eq!(inv.inverse_unimodular().unwrap(), n);

        let singular = PolyMatrix::parse(&c, &[vec!["t", "0"], vec!["0", "1"]]).unwrap();
        assert!(matches!(singular.inverse_unimodular(), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn entries_must_be_coefficients() {
        let r = PolyMatrix::parse(&ctx(), &[vec!["X"]]);
        assert!(matches!(r, Err(Error::NotCoefficient(_))));
        let r = PolyMatrix::parse(&ctx(), &[vec!["1", "0"]]);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }
}
