//! Buchberger's algorithm on sorted term lists.
//!
//! Everything here works on `Vec<Term>` kept in strictly decreasing order
//! under a fixed [`MonomialOrder`]; the public wrappers in `groebner` convert
//! to and from [`Polynomial`](crate::poly::Polynomial).

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::poly::Monomial;
use crate::rational::Rational;

pub(crate) type Term = (Monomial, Rational);

/// Default number of single-term reduction steps a computation may take.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// Counts reduction steps against a hard limit.
#[derive(Debug, Clone)]
pub struct StepCounter {
    used: u64,
    limit: u64,
}

impl StepCounter {
    pub fn new(limit: u64) -> Self {
        StepCounter { used: 0, limit }
    }

    pub fn unlimited() -> Self {
        StepCounter::new(u64::MAX)
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExhausted(self.limit));
        }
        Ok(())
    }
}

pub(crate) fn sort_terms(mut terms: Vec<Term>, order: &MonomialOrder) -> Vec<Term> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    terms
}

/// `p - c * m * g`.
pub(crate) fn sub_scaled(p: &[Term], c: &Rational, m: &Monomial, g: &[Term], order: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let next_g = |j: usize| -> Term { (g[j].0.mul(m), -(c * &g[j].1)) };
    let mut pending: Option<Term> = if g.is_empty() { None } else { Some(next_g(0)) };
    while i < p.len() || pending.is_some() {
        match (&pending, p.get(i)) {
            (Some(gt), Some(pt)) => match order.cmp(&pt.0, &gt.0) {
                Ordering::Greater => {
                    out.push(pt.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = (j < g.len()).then(|| next_g(j));
                }
                Ordering::Equal => {
                    let s = &pt.1 + &gt.1;
                    if !s.is_zero() {
                        out.push((pt.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    pending = (j < g.len()).then(|| next_g(j));
                }
            },
            (Some(_), None) => {
                out.push(pending.take().unwrap());
                j += 1;
                pending = (j < g.len()).then(|| next_g(j));
            }
            (None, Some(pt)) => {
                out.push(pt.clone());
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub(crate) fn make_monic(p: &mut [Term]) {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for t in p.iter_mut() {
                t.1 = &t.1 * &inv;
            }
        }
    }
}

/// Full normal form of `p` modulo `basis` (each element monic or not).
pub(crate) fn reduce_full(
    p: Vec<Term>,
    basis: &[Vec<Term>],
    order: &MonomialOrder,
    steps: &mut StepCounter,
) -> Result<Vec<Term>> {
    let mut rem = Vec::new();
    let mut p = p;
    let mut pos = 0;
    while pos < p.len() {
        let (lm, lc) = &p[pos];
        let divisor = basis.iter().filter(|g| !g.is_empty()).find_map(|g| lm.div(&g[0].0).map(|q| (g, q)));
        match divisor {
            Some((g, q)) => {
                steps.tick()?;
                let c = lc / &g[0].1;
                p = sub_scaled(&p[pos..], &c, &q, g, order);
                pos = 0;
            }
            None => {
                rem.push(p[pos].clone());
                pos += 1;
            }
        }
    }
    Ok(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Pairs are pruned with the Gebauer-Moeller criteria and selected by the
/// normal strategy (smallest lcm, ties broken by insertion order). The output
/// is monic, inter-reduced and sorted by increasing leading monomial.
pub(crate) fn buchberger(
    gens: Vec<Vec<Term>>,
    order: &MonomialOrder,
    steps: &mut StepCounter,
) -> Result<Vec<Vec<Term>>> {
    let mut polys: Vec<Vec<Term>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        let mut h = reduce_full(g, &polys, order, steps)?;
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        update(&mut pairs, &polys, &h);
        polys.push(h);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm, order);
        let mut h = reduce_full(s, &polys, order, steps)?;
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h[0].0.is_one() {
            return Ok(vec![h]);
        }
        update(&mut pairs, &polys, &h);
        polys.push(h);
    }

    interreduce(polys, order, steps)
}

fn s_polynomial(f: &[Term], g: &[Term], lcm: &Monomial, order: &MonomialOrder) -> Vec<Term> {
    let mf = lcm.div(&f[0].0).expect("lcm divisible");
    let mg = lcm.div(&g[0].0).expect("lcm divisible");
    let lifted: Vec<Term> = f.iter().map(|(m, c)| (m.mul(&mf), c / &f[0].1)).collect();
    sub_scaled(&lifted, &g[0].1.recip(), &mg, g, order)
}

/// Gebauer-Moeller update for a new element `h` (index `polys.len()`).
fn update(pairs: &mut Vec<Pair>, polys: &[Vec<Term>], h: &[Term]) {
    let hidx = polys.len();
    let lh = &h[0].0;

    let candidates: Vec<(usize, Monomial)> = (0..polys.len()).map(|i| (i, lh.lcm(&polys[i][0].0))).collect();

    // Keep a new pair unless another new pair has a strictly useful lcm dividing it.
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (k, (i, l)) in candidates.iter().enumerate() {
        let coprime = lh.coprime(&polys[*i][0].0);
        let dominated =
            candidates.iter().enumerate().any(|(k2, (_, l2))| k2 != k && l2.divides(l) && (l2 != l || k2 < k));
        if coprime || !dominated {
            kept.push((*i, l.clone()));
        }
    }
    // Drop pairs whose lcm equals that of a coprime pair (product criterion),
    // including all pairs with the same lcm as one that is coprime.
    let coprime_lcms: Vec<Monomial> =
        kept.iter().filter(|(i, _)| lh.coprime(&polys[*i][0].0)).map(|(_, l)| l.clone()).collect();
    kept.retain(|(i, l)| !lh.coprime(&polys[*i][0].0) && !coprime_lcms.contains(l));

    // Chain criterion on old pairs.
    pairs.retain(|p| !(lh.divides(&p.lcm) && lh.lcm(&polys[p.i][0].0) != p.lcm && lh.lcm(&polys[p.j][0].0) != p.lcm));

    for (i, lcm) in kept {
        pairs.push(Pair { i, j: hidx, lcm });
    }
}

fn interreduce(polys: Vec<Vec<Term>>, order: &MonomialOrder, steps: &mut StepCounter) -> Result<Vec<Vec<Term>>> {
    let mut minimal: Vec<Vec<Term>> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let lm = &p[0].0;
        let redundant =
            polys.iter().enumerate().any(|(k2, q)| k2 != k && q[0].0.divides(lm) && (q[0].0 != *lm || k2 < k));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let head = minimal[k][0].clone();
        let tail = minimal[k][1..].to_vec();
        let others: Vec<Vec<Term>> =
            minimal.iter().enumerate().filter(|(k2, _)| *k2 != k).map(|(_, q)| q.clone()).collect();
        let mut r = vec![head];
        r.extend(reduce_full(tail, &others, order, steps)?);
        make_monic(&mut r);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    Ok(reduced)
}
