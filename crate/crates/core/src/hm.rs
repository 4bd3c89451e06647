//! The group `H_m` of m-tuples under substitution, isomorphic to the
//! automorphism group of `k[x]/(x^(m+1))`.

use thiserror::Error;

use crate::exactmath::{Field, MathError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HmError {
    #[error("an element needs at least one coordinate")]
    Empty,
    #[error("the first coordinate must be nonzero")]
    ZeroLeading,
    #[error("elements have lengths {0} and {1}")]
    MismatchedLength(usize, usize),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// `(α₁, …, α_m)` with `α₁ ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HmElement<F> {
    coeffs: Vec<F>,
}

impl<F: Field> HmElement<F> {
    pub fn new(coeffs: Vec<F>) -> Result<Self, HmError> {
        match coeffs.first() {
            None => Err(HmError::Empty),
            Some(a) if a.is_zero() => Err(HmError::ZeroLeading),
            Some(_) => Ok(HmElement { coeffs }),
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut coeffs = vec![F::zero(); m];
        coeffs[0] = F::one();
        HmElement { coeffs }
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// The automorphism `x ↦ α₁x + ⋯ + α_m x^m`.
    pub fn to_map(&self) -> TruncatedPolyMap<F> {
        TruncatedPolyMap {
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn in_torus(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn in_unipotent(&self) -> bool {
        self.coeffs[0] == F::one()
    }
}

/// Sum over ordered compositions `k₁ + ⋯ + k_i = l` (parts ≥ 1) of
/// `β_{k₁} ⋯ β_{k_i}`.
fn composition_sum<F: Field>(beta: &[F], l: usize, i: usize) -> F {
    if i == 0 {
        return if l == 0 { F::one() } else { F::zero() };
    }
    let mut total = F::zero();
    for k in 1..=l.saturating_sub(i - 1) {
        let rest = composition_sum(beta, l - k, i - 1);
        if !rest.is_zero() {
            total = total + beta[k - 1].clone() * rest;
        }
    }
    total
}

/// `(β∗α)_l = Σ_{i=1}^{l} α_i Σ_{k₁+⋯+k_i=l} β_{k₁}⋯β_{k_i}`.
fn product_coeffs<F: Field>(beta: &[F], alpha: &[F]) -> Vec<F> {
    (1..=alpha.len())
        .map(|l| {
            (1..=l).fold(F::zero(), |acc, i| {
                acc + alpha[i - 1].clone() * composition_sum(beta, l, i)
            })
        })
        .collect()
}

/// `β∗α`. As automorphisms this is `φ_β ∘ φ_α`, whose polynomial is the
/// substitution `α(β(x))`.
pub fn hm_mul<F: Field>(b: &HmElement<F>, a: &HmElement<F>) -> Result<HmElement<F>, HmError> {
    if a.m() != b.m() {
        return Err(HmError::MismatchedLength(b.m(), a.m()));
    }
    HmElement::new(product_coeffs(&b.coeffs, &a.coeffs))
}

/// Two-sided inverse, solved one coordinate at a time: the `l`-th
/// coordinate of `β∗α` is `α₁β_l` plus terms in `β₁, …, β_(l-1)`.
pub fn hm_inv<F: Field>(a: &HmElement<F>) -> Result<HmElement<F>, HmError> {
    let m = a.m();
    let lead_inv = a.coeffs[0].inv()?;
    let mut beta = vec![F::zero(); m];
    for l in 0..m {
        let current = product_coeffs(&beta[..=l], &a.coeffs[..=l])[l].clone();
        let wanted = if l == 0 { F::one() } else { F::zero() };
        beta[l] = (wanted - current) * lead_inv.clone();
    }
    HmElement::new(beta)
}

/// An endomorphism `x ↦ f₁x + ⋯ + f_m x^m` of `k[x]/(x^(m+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedPolyMap<F> {
    pub coeffs: Vec<F>,
}

impl<F: Field> TruncatedPolyMap<F> {
    pub fn identity(m: usize) -> Self {
        HmElement::<F>::identity(m).to_map()
    }

    pub fn is_automorphism(&self) -> bool {
        self.coeffs.first().is_some_and(|c| !c.is_zero())
    }
}

/// Truncated product of polynomials given by coefficients of `x^0..=x^m`.
fn poly_mul<F: Field>(p: &[F], q: &[F], m: usize) -> Vec<F> {
    let mut out = vec![F::zero(); m + 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            if i + j <= m {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
    }
    out
}

/// `f ∘ g`: `f` applied after `g`, i.e. `Σ_j f_j g(x)^j` truncated at
/// degree `m`.
pub fn hm_oracle_compose<F: Field>(
    f: &TruncatedPolyMap<F>,
    g: &TruncatedPolyMap<F>,
) -> Result<TruncatedPolyMap<F>, HmError> {
    let m = f.coeffs.len();
    if g.coeffs.len() != m {
        return Err(HmError::MismatchedLength(f.coeffs.len(), g.coeffs.len()));
    }
    let mut gx = vec![F::zero(); m + 1];
    gx[1..].clone_from_slice(&g.coeffs);
    let mut power = vec![F::zero(); m + 1];
    power[0] = F::one();
    let mut out = vec![F::zero(); m + 1];
    for fj in &f.coeffs {
        power = poly_mul(&power, &gx, m);
        for (o, p) in out.iter_mut().zip(&power) {
            *o = o.clone() + fj.clone() * p.clone();
        }
    }
    Ok(TruncatedPolyMap {
        coeffs: out[1..].to_vec(),
    })
}

/// Which side the torus factor goes on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecompositionOrder {
    /// `a = u ∗ t`
    #[default]
    UnipotentTorus,
    /// `a = t ∗ u`
    TorusUnipotent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<F> {
    pub torus: HmElement<F>,
    pub unipotent: HmElement<F>,
}

/// Split `a` into `t = (α₁, 0, …, 0)` and a unipotent `u` with first
/// coordinate 1. `u ∗ t` has coordinates `α₁u_l`; `t ∗ u` has `α₁^l u_l`.
pub fn hm_decompose<F: Field>(
    a: &HmElement<F>,
    order: DecompositionOrder,
) -> Result<Decomposition<F>, HmError> {
    let m = a.m();
    let lead = a.coeffs[0].clone();
    let lead_inv = lead.inv()?;
    let mut torus = vec![F::zero(); m];
    torus[0] = lead;
    let mut scale = F::one();
    let unipotent = a
        .coeffs
        .iter()
        .map(|c| {
            scale = match order {
                DecompositionOrder::UnipotentTorus => lead_inv.clone(),
                DecompositionOrder::TorusUnipotent => scale.clone() * lead_inv.clone(),
            };
            c.clone() * scale.clone()
        })
        .collect();
    Ok(Decomposition {
        torus: HmElement::new(torus)?,
        unipotent: HmElement::new(unipotent)?,
    })
}

/// Recombine a decomposition in the given order.
pub fn hm_recombine<F: Field>(
    d: &Decomposition<F>,
    order: DecompositionOrder,
) -> Result<HmElement<F>, HmError> {
    match order {
        DecompositionOrder::UnipotentTorus => hm_mul(&d.unipotent, &d.torus),
        DecompositionOrder::TorusUnipotent => hm_mul(&d.torus, &d.unipotent),
    }
}
