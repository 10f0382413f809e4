//! Derivations of `B = R[X, Y, ...]` that vanish on the coefficient ring.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{ideal_membership, Budget};
use crate::linalg::PolyMatrix;
use crate::poly::{gcd_all, Polynomial, VarContext};

/// Iteration cap used when none is given.
pub const DEFAULT_NILPOTENCY_CAP: u32 = 128;

/// An R-derivation, stored as the image of every context variable.
/// Coefficient variables always map to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ctx: VarContext,
    images: Vec<Polynomial>,
}

/// Result of iterating a derivation on one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nilpotency {
    /// Least `n` with `D^(n+1) f = 0`.
    Index(u32),
    ExceededCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertStatus {
    Certified,
    ExceededCap,
}

/// Per-variable nilpotency indices of a derivation, found within `cap`
/// iterations. `ExceededCap` is not a disproof of local nilpotency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyCertificate {
    pub indices: Vec<(String, Option<u32>)>,
    pub cap: u32,
    pub status: CertStatus,
}

impl NilpotencyCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::Certified
    }

    pub fn index_of(&self, var: &str) -> Option<u32> {
        self.indices.iter().find(|(n, _)| n == var).and_then(|(_, i)| *i)
    }
}

/// Variables whose second iterate vanishes, in the given coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiNiceProfile {
    pub vars: Vec<String>,
    pub is_nice: bool,
    pub m_quasi: usize,
}

impl Derivation {
    /// Derivation with the given images; ring variables not listed map to 0.
    pub fn new(ctx: &VarContext, images: &[(&str, Polynomial)]) -> Result<Self> {
        let mut all = vec![Polynomial::zero(ctx); ctx.len()];
        for (name, p) in images {
            let i = ctx.require(name)?;
            ctx.check_same(p.context())?;
            if ctx.is_coeff(i) {
                if !p.is_zero() {
                    return Err(Error::CoefficientImage(name.to_string()));
                }
                continue;
            }
            all[i] = p.clone();
        }
        Ok(Derivation { ctx: ctx.clone(), images: all })
    }

    pub fn parse(ctx: &VarContext, images: &[(&str, &str)]) -> Result<Self> {
        let parsed = images.iter().map(|(v, s)| Ok((*v, Polynomial::parse(s, ctx)?))).collect::<Result<Vec<_>>>()?;
        Derivation::new(ctx, &parsed)
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn image(&self, var: &str) -> Result<&Polynomial> {
        Ok(&self.images[self.ctx.require(var)?])
    }

    /// `(name, D(name))` for every ring variable, in context order.
    pub fn ring_images(&self) -> Vec<(&str, &Polynomial)> {
        self.ctx.ring_indices().into_iter().map(|i| (self.ctx.name(i), &self.images[i])).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// `D(f) = sum over ring variables v of (df/dv) * D(v)`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ctx.check_same(f.context())?;
        let mut acc = Polynomial::zero(&self.ctx);
        for i in self.ctx.ring_indices() {
            let img = &self.images[i];
            if img.is_zero() || f.degree_in(i) == 0 {
                continue;
            }
            acc = &acc + &(&f.derivative_index(i) * img);
        }
        Ok(acc)
    }

    pub fn apply_n(&self, f: &Polynomial, n: u32) -> Result<Polynomial> {
        let mut g = f.clone();
        for _ in 0..n {
            if g.is_zero() {
                break;
            }
            g = self.apply(&g)?;
        }
        Ok(g)
    }

    /// `f, D f, ..., D^k f` up to the last nonzero iterate, or `None` when
    /// `cap` applications do not reach zero.
    pub fn orbit(&self, f: &Polynomial, cap: u32) -> Result<Option<Vec<Polynomial>>> {
        self.ctx.check_same(f.context())?;
        let mut out = vec![f.clone()];
        if f.is_zero() {
            return Ok(Some(out));
        }
        for _ in 0..cap {
            let next = self.apply(out.last().unwrap())?;
            if next.is_zero() {
                return Ok(Some(out));
            }
            out.push(next);
        }
        Ok(None)
    }

    /// Least `n` with `D^(n+1) f = 0`, searched over at most `cap`
    /// applications.
    pub fn nilpotency_index(&self, f: &Polynomial, cap: u32) -> Result<Nilpotency> {
        Ok(match self.orbit(f, cap)? {
            Some(orbit) => Nilpotency::Index(orbit.len() as u32 - 1),
            None => Nilpotency::ExceededCap,
        })
    }

    /// Certifies local nilpotency by bounding each ring variable's index.
    ///
    /// Testing generators suffices: the elements killed by some power of D
    /// form a subalgebra (Leibniz rule), it contains R, and the variables
    /// generate B.
    pub fn certify_locally_nilpotent(&self, cap: u32) -> NilpotencyCertificate {
        let mut indices = Vec::new();
        let mut status = CertStatus::Certified;
        for i in self.ctx.ring_indices() {
            let v = Polynomial::var_index(&self.ctx, i);
            let idx = match self.nilpotency_index(&v, cap).expect("same context") {
                Nilpotency::Index(n) => Some(n),
                Nilpotency::ExceededCap => {
                    status = CertStatus::ExceededCap;
                    None
                }
            };
            indices.push((self.ctx.name(i).to_string(), idx));
        }
        NilpotencyCertificate { indices, cap, status }
    }

    pub fn quasi_nice_profile(&self) -> QuasiNiceProfile {
        let ring = self.ctx.ring_indices();
        let vars: Vec<String> = ring
            .iter()
            .filter(|&&i| self.apply(&self.images[i]).expect("same context").is_zero())
            .map(|&i| self.ctx.name(i).to_string())
            .collect();
        QuasiNiceProfile { is_nice: vars.len() == ring.len(), m_quasi: vars.len(), vars }
    }

    /// True iff no non-unit divides every image. Only defined over a free
    /// polynomial ring.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.ctx.is_quotient() {
            return Err(Error::QuotientContext("irreducibility"));
        }
        if self.is_zero() {
            return Err(Error::ZeroDerivation);
        }
        let g = gcd_all(self.images.iter().filter(|p| !p.is_zero()))?.expect("nonzero image");
        Ok(g.is_constant())
    }

    /// True iff the images generate the unit ideal.
    pub fn is_fixed_point_free(&self, budget: Budget) -> Result<bool> {
        let one = Polynomial::one(&self.ctx);
        let images: Vec<Polynomial> = self.images.iter().filter(|p| !p.is_zero()).cloned().collect();
        if images.is_empty() {
            return Ok(false);
        }
        ideal_membership(&one, &images, budget)
    }

    pub fn kernel_membership(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.apply(f)?.is_zero())
    }

    /// The same derivation in the coordinates `new = M * old` (ring
    /// variables only), with the new ring variables named `new_names`.
    pub fn change_coordinates(&self, m: &PolyMatrix, new_names: &[&str]) -> Result<Derivation> {
        let change = CoordinateChange::new(&self.ctx, m, new_names)?;
        let ring = self.ctx.ring_indices();
        let new_ring = change.context.ring_indices();
        let mut images = vec![Polynomial::zero(&change.context); change.context.len()];
        for (k, form) in change.new_in_old.iter().enumerate() {
            images[new_ring[k]] = change.pull(&self.apply(form)?)?;
        }
        debug_assert_eq!(ring.len(), new_ring.len());
        Ok(Derivation { ctx: change.context, images })
    }
}

/// A linear change of ring coordinates with coefficients in R.
#[derive(Debug, Clone)]
pub struct CoordinateChange {
    /// Context of the new coordinates (coefficient variables unchanged).
    pub context: VarContext,
    /// The new coordinates as linear forms in the old ones.
    pub new_in_old: Vec<Polynomial>,
    /// Image of every old variable in the new context.
    pub old_in_new: Vec<Polynomial>,
}

impl CoordinateChange {
    pub fn new(ctx: &VarContext, m: &PolyMatrix, new_names: &[&str]) -> Result<Self> {
        ctx.check_same(m.context())?;
        let ring = ctx.ring_indices();
        let n = ring.len();
        if m.dim() != n || new_names.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} ring variables, {}x{} matrix, {} new names",
                m.dim(),
                m.dim(),
                new_names.len()
            )));
        }
        let inv = m.inverse_unimodular()?;
        let renames: Vec<(usize, String)> = ring.iter().zip(new_names).map(|(&i, s)| (i, s.to_string())).collect();
        let new_ctx = ctx.renamed(&renames)?;

        let vars: Vec<Polynomial> = ring.iter().map(|&i| Polynomial::var_index(ctx, i)).collect();
        let new_vars: Vec<Polynomial> = ring.iter().map(|&i| Polynomial::var_index(&new_ctx, i)).collect();

        let new_in_old =
            (0..n).map(|r| (0..n).fold(Polynomial::zero(ctx), |acc, c| &acc + &(m.get(r, c) * &vars[c]))).collect();

        let mut old_in_new: Vec<Polynomial> = (0..ctx.len()).map(|i| Polynomial::var_index(&new_ctx, i)).collect();
        for (r, &i) in ring.iter().enumerate() {
            let mut acc = Polynomial::zero(&new_ctx);
            for (c, nv) in new_vars.iter().enumerate() {
                let coeff = inv.get(r, c).to_context(&new_ctx)?;
                acc = &acc + &(&coeff * nv);
            }
            old_in_new[i] = acc;
        }
        Ok(CoordinateChange { context: new_ctx, new_in_old, old_in_new })
    }

    /// Rewrites a polynomial in the old variables in terms of the new ones.
    pub fn pull(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute_all(&self.old_in_new, &self.context)
    }
}

/// `D = alpha * (dF/dY d/dX - dF/dX d/dY)` on a ring with exactly two ring
/// variables `(X, Y)`; it always kills `F`.
pub fn jacobian_derivation(f: &Polynomial, alpha: &Polynomial) -> Result<Derivation> {
    let ctx = f.context();
    ctx.check_same(alpha.context())?;
    let ring = ctx.ring_indices();
    if ring.len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "jacobian derivation needs exactly two ring variables, context has {}",
            ring.len()
        )));
    }
    if alpha.is_zero() {
        return Err(Error::ZeroInput("jacobian_derivation (alpha)"));
    }
    let (x, y) = (ring[0], ring[1]);
    let dx = alpha * &f.derivative_index(y);
    let dy = -&(alpha * &f.derivative_index(x));
    Derivation::new(ctx, &[(ctx.name(x), dx), (ctx.name(y), dy)])
}
