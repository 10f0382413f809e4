use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Two grevlex blocks; the first `split` variables of the permutation form
    /// the block being eliminated and compare first.
    Elimination {
        split: usize,
    },
}

/// A monomial order over the context variables, read through a permutation.
///
/// `perm[0]` is the most significant variable. For grevlex the last entry of
/// `perm` is the one whose exponent breaks ties first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidOrder("permutation is not a bijection".into()));
            }
            seen[p] = true;
        }
        if let OrderKind::Elimination { split } = kind {
            if split > n {
                return Err(Error::InvalidOrder(format!("split {split} exceeds {n} variables")));
            }
        }
        Ok(MonomialOrder { kind, perm })
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: (0..nvars).collect() }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, perm: (0..nvars).collect() }
    }

    /// Block order with `eliminated` above `kept`; both lists together must
    /// cover every variable exactly once.
    pub fn elimination(eliminated: &[usize], kept: &[usize]) -> Result<Self> {
        let perm: Vec<usize> = eliminated.iter().chain(kept).copied().collect();
        MonomialOrder::new(OrderKind::Elimination { split: eliminated.len() }, perm)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => lex(&self.perm, a, b),
            OrderKind::Grevlex => grevlex(&self.perm, a, b),
            OrderKind::Elimination { split } => {
                let (hi, lo) = self.perm.split_at(split);
                grevlex(hi, a, b).then_with(|| grevlex(lo, a, b))
            }
        }
    }
}

fn lex(perm: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    for &i in perm {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex(perm: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = perm.iter().map(|&i| a[i]).sum();
    let db: u32 = perm.iter().map(|&i| b[i]).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for &i in perm.iter().rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
