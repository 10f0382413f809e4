#![allow(dead_code)]

use lnd::linalg::PolyMatrix;
use lnd::poly::Monomial;
use lnd::rational::ratio;
use lnd::{Derivation, Polynomial, VarContext};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Exponent vector, numerator, denominator.
pub type RawTerm = (Vec<u32>, i64, i64);

pub fn build(ctx: &VarContext, raw: &[RawTerm]) -> Polynomial {
    Polynomial::from_terms(ctx, raw.iter().map(|(e, n, d)| (Monomial::from_exponents(e.clone()), ratio(*n, *d))))
}

pub fn terms(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=4), 0..=max_terms)
}

pub fn qctx() -> VarContext {
    VarContext::new(&["X", "Y", "Z"], &[]).unwrap()
}

pub fn tctx() -> VarContext {
    VarContext::over(&["t"], &["X", "Y", "Z"]).unwrap()
}

pub fn p(s: &str, ctx: &VarContext) -> Polynomial {
    Polynomial::parse(s, ctx).unwrap()
}

pub fn small_rational<R: Rng>(rng: &mut R) -> lnd::Rational {
    let mut n = rng.gen_range(-6..=6);
    if n == 0 {
        n = 1;
    }
    ratio(n, rng.gen_range(1..=3))
}

/// Random polynomial in the variables `vars` (indices into `ctx`) with
/// total degree at most `max_deg`.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    ctx: &VarContext,
    vars: &[usize],
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    let nterms = rng.gen_range(0..=max_terms);
    let mut out = Vec::new();
    for _ in 0..nterms {
        let mut exps = vec![0u32; ctx.len()];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            if let Some(&v) = vars.choose(rng) {
                exps[v] += 1;
            }
        }
        out.push((Monomial::from_exponents(exps), small_rational(rng)));
    }
    Polynomial::from_terms(ctx, out)
}

pub fn nonzero_poly<R: Rng>(
    rng: &mut R,
    ctx: &VarContext,
    vars: &[usize],
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    loop {
        let q = random_poly(rng, ctx, vars, max_terms, max_deg);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Triangular derivation on Q[X, Y, Z] with a slice: after a random
/// relabelling `(A, B, C)` of the variables, `DA = 1`, `DB = p(A)`,
/// `DC = q(A, B)` with `deg p, deg q <= 3`. Returns the derivation and the
/// slice `A + c`.
pub fn triangular_with_slice<R: Rng>(rng: &mut R) -> (Derivation, Polynomial) {
    let ctx = qctx();
    let mut order = [0usize, 1, 2];
    order.shuffle(rng);
    let [a, b, c] = order;
    let db = random_poly(rng, &ctx, &[a], 3, 3);
    let dc = random_poly(rng, &ctx, &[a, b], 4, 3);
    let d =
        Derivation::new(&ctx, &[(ctx.name(a), Polynomial::one(&ctx)), (ctx.name(b), db), (ctx.name(c), dc)]).unwrap();
    let shift = Polynomial::constant(&ctx, small_rational(rng));
    let s = &Polynomial::var(&ctx, ctx.name(a)).unwrap() + &shift;
    (d, s)
}

/// Derivation on Q[t][X, Y, Z] with `DX = 0`, `DY = h(t, X) != 0` and
/// `DZ = q(t, X, Y)`, so `Y` is a local slice.
pub fn triangular_with_local_slice<R: Rng>(rng: &mut R) -> (Derivation, Polynomial) {
    let ctx = tctx();
    let (t, x, y) = (0, 1, 2);
    let h = nonzero_poly(rng, &ctx, &[t, x], 3, 2);
    let q = random_poly(rng, &ctx, &[t, x, y], 3, 2);
    let d = Derivation::new(&ctx, &[("Y", h), ("Z", q)]).unwrap();
    (d, p("Y", &ctx))
}

/// Random 3x3 matrix over Q[t] with nonzero rational determinant, as a
/// product of elementary and diagonal matrices.
pub fn random_unimodular<R: Rng>(rng: &mut R, ctx: &VarContext) -> PolyMatrix {
    let t = ctx.coeff_indices();
    let mut m = PolyMatrix::identity(ctx, 3).unwrap();
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..3);
        if j == i {
            j = (i + 1) % 3;
        }
        let c = random_poly(rng, ctx, &t, 2, 2);
        let mut rows: Vec<Vec<Polynomial>> =
            (0..3).map(|r| (0..3).map(|k| Polynomial::from_int(ctx, (r == k) as i64)).collect()).collect();
        rows[i][j] = c;
        m = PolyMatrix::new(ctx, rows).unwrap().mul(&m).unwrap();
    }
    let rows: Vec<Vec<Polynomial>> = (0..3)
        .map(|r| {
            (0..3)
                .map(|k| if r == k { Polynomial::constant(ctx, small_rational(rng)) } else { Polynomial::zero(ctx) })
                .collect()
        })
        .collect();
    PolyMatrix::new(ctx, rows).unwrap().mul(&m).unwrap()
}
