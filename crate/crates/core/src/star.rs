//! Graded homotopy computations over the Brauer star algebra.
//!
//! The grading of a Brauer tree algebra is re-derived here from first
//! principles: the Green-walk tilting complex over the star algebra is built
//! summand by summand, and the degree of each arrow `i -> j` is read off as
//! the lowest internal degree in which `Hom(T_j, T_i)` is nonzero in the
//! homotopy category.
//!
//! Conventions. The star projective `P_i` is uniserial of length `me + 1`
//! with radical layer `d` isomorphic to `S_(i - d mod e)`. A basis map
//! `P_i -> P_j` sends the top of `P_i` to layer `d` of `P_j` (its *drop*);
//! it exists iff `d <= me` and `d ≡ j - i (mod e)`. Each projective copy in
//! a complex carries the internal degree of its top, and a map of drop `d`
//! from a copy with top `τ_a` to one with top `τ_b` is homogeneous of degree
//! `τ_b + d - τ_a`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{rank, solve_linear, ExactMatrix, Field, MathError, Rational, Ring};
use crate::green::GreenNumbering;
use crate::quiver::{GradedQuiver, Quiver};
use crate::tree::BrauerTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("no morphism in any degree for arrow {from}->{to}")]
    NoMorphism { from: usize, to: usize },
    #[error(transparent)]
    Math(#[from] MathError),
}

/// The star algebra of type `(m, e)` with its tight grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarAlgebra {
    pub multiplicity: u32,
    pub edges: usize,
}

impl StarAlgebra {
    pub fn new(multiplicity: u32, edges: usize) -> Self {
        assert!(multiplicity >= 1 && edges >= 1);
        StarAlgebra {
            multiplicity,
            edges,
        }
    }

    /// Index of the socle layer, `me`.
    pub fn socle_layer(&self) -> usize {
        self.multiplicity as usize * self.edges
    }

    /// Composition factor of `P_i` in layer `d`.
    pub fn layer_factor(&self, i: usize, d: usize) -> usize {
        (i as i64 - 1 - d as i64).rem_euclid(self.edges as i64) as usize + 1
    }

    pub fn admissible(&self, source: usize, target: usize, drop: usize) -> bool {
        drop <= self.socle_layer() && self.layer_factor(target, drop) == source
    }

    /// All admissible drops `P_source -> P_target`, ascending.
    pub fn drops(&self, source: usize, target: usize) -> Vec<usize> {
        (0..=self.socle_layer())
            .filter(|&d| self.admissible(source, target, d))
            .collect()
    }

    /// Drop of the maximal-rank map `P_source -> P_target` that is not an
    /// isomorphism: the smallest admissible positive drop.
    pub fn differential_drop(&self, source: usize, target: usize) -> usize {
        (target as i64 - source as i64 - 1).rem_euclid(self.edges as i64) as usize + 1
    }
}

/// A basis map between star projectives, scaled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarHom {
    pub source: usize,
    pub target: usize,
    pub drop: usize,
    #[serde(skip)]
    pub coeff: Rational,
}

impl StarHom {
    /// `self` followed by `next`; zero when the drops overflow the socle.
    pub fn then(&self, next: &StarHom, star: &StarAlgebra) -> Option<StarHom> {
        assert_eq!(self.target, next.source, "maps must compose");
        let drop = self.drop + next.drop;
        (drop <= star.socle_layer()).then(|| StarHom {
            source: self.source,
            target: next.target,
            drop,
            coeff: self.coeff.clone() * next.coeff.clone(),
        })
    }
}

/// One projective in a complex: homological position, which `P_i`, and the
/// internal degree of its top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Term {
    pub hom_degree: i64,
    pub projective: usize,
    pub top: i64,
}

/// Summand `T_x` of the Green-walk tilting complex: the stalk `P_x` when
/// `x` is at the exceptional vertex, otherwise `P_j -> P_x` with `j` the
/// predecessor of `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TiltingSummand {
    pub edge: usize,
    pub terms: Vec<Term>,
    pub differential: Option<StarHom>,
}

impl TiltingSummand {
    pub fn is_stalk(&self) -> bool {
        self.terms.len() == 1
    }

    fn term_at(&self, p: i64) -> Option<&Term> {
        self.terms.iter().find(|t| t.hom_degree == p)
    }

    /// Drop of the differential leaving homological degree `p`.
    fn differential_from(&self, p: i64) -> Option<usize> {
        match (&self.differential, self.terms.first()) {
            (Some(d), Some(first)) if first.hom_degree == p => Some(d.drop),
            _ => None,
        }
    }
}

/// Build `T_1, ..., T_e` in Green-index order.
///
/// The copy of `P_j` inside `T_x` sits one socle length above the copy
/// ending `T_j`, so that its socle is level with that copy's top.
pub fn build_tilting(tree: &BrauerTree, numbering: &GreenNumbering) -> Vec<TiltingSummand> {
    let star = StarAlgebra::new(tree.multiplicity(), tree.edge_count());
    let me = star.socle_layer() as i64;
    let mut out: Vec<TiltingSummand> = Vec::with_capacity(tree.edge_count());
    for x in 1..=tree.edge_count() {
        let summand = match numbering.predecessor(x) {
            None => TiltingSummand {
                edge: x,
                terms: vec![Term {
                    hom_degree: 0,
                    projective: x,
                    top: 0,
                }],
                differential: None,
            },
            Some(j) => {
                let last = *out[j - 1].terms.last().expect("summand has a term");
                let drop = star.differential_drop(j, x);
                let top = last.top - me;
                TiltingSummand {
                    edge: x,
                    terms: vec![
                        Term {
                            hom_degree: last.hom_degree,
                            projective: j,
                            top,
                        },
                        Term {
                            hom_degree: last.hom_degree + 1,
                            projective: x,
                            top: top - drop as i64,
                        },
                    ],
                    differential: Some(StarHom {
                        source: j,
                        target: x,
                        drop,
                        coeff: Rational::one(),
                    }),
                }
            }
        };
        out.push(summand);
    }
    out
}

/// Linear-algebra data for one internal degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreePart {
    pub degree: i64,
    /// Dimension of the space of chain maps.
    pub chain_dim: usize,
    /// Number of homotopy parameters.
    pub homotopy_dim: usize,
    /// Homotopies that give the zero map.
    pub homotopy_kernel_dim: usize,
    /// Dimension of the null-homotopic chain maps.
    pub null_dim: usize,
}

impl DegreePart {
    pub fn dim(&self) -> usize {
        self.chain_dim - self.null_dim
    }
}

/// Graded `Hom(a, b)` in the homotopy category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedHomSpace {
    pub source: usize,
    pub target: usize,
    pub parts: Vec<DegreePart>,
}

impl GradedHomSpace {
    /// `degree -> dimension`, nonzero dimensions only.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.parts
            .iter()
            .filter(|p| p.dim() > 0)
            .map(|p| (p.degree, p.dim()))
            .collect()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().map(DegreePart::dim).sum()
    }

    pub fn lowest_degree(&self) -> Option<i64> {
        self.dims().keys().next().copied()
    }

    pub fn lowest_positive_degree(&self) -> Option<i64> {
        self.dims().keys().copied().find(|&d| d > 0)
    }
}

/// `Hom(a, b)` over the rationals.
pub fn hom_complex(
    star: &StarAlgebra,
    a: &TiltingSummand,
    b: &TiltingSummand,
) -> Result<GradedHomSpace, MathError> {
    hom_complex_over::<Rational>(star, a, b)
}

/// `Hom(a, b)` over any exact field.
pub fn hom_complex_over<F: Field>(
    star: &StarAlgebra,
    a: &TiltingSummand,
    b: &TiltingSummand,
) -> Result<GradedHomSpace, MathError> {
    let mut degrees = BTreeSet::new();
    for ta in &a.terms {
        if let Some(tb) = b.term_at(ta.hom_degree) {
            for d in star.drops(ta.projective, tb.projective) {
                degrees.insert(tb.top + d as i64 - ta.top);
            }
        }
    }
    let parts = degrees
        .into_iter()
        .map(|s| degree_part::<F>(star, a, b, s))
        .collect::<Result<_, _>>()?;
    Ok(GradedHomSpace {
        source: a.edge,
        target: b.edge,
        parts,
    })
}

/// Drop of a degree-`s` map from `from` to `to`, if one exists.
fn drop_for(star: &StarAlgebra, from: &Term, to: &Term, s: i64) -> Option<usize> {
    let d = s + from.top - to.top;
    (d >= 0 && star.admissible(from.projective, to.projective, d as usize)).then_some(d as usize)
}

fn degree_part<F: Field>(
    star: &StarAlgebra,
    a: &TiltingSummand,
    b: &TiltingSummand,
    s: i64,
) -> Result<DegreePart, MathError> {
    let me = star.socle_layer();
    let survives = |d1: usize, d2: usize| d1 + d2 <= me;

    // component maps f^p : a^p -> b^p
    let mut f_vars: Vec<(i64, usize)> = Vec::new();
    for ta in &a.terms {
        if let Some(tb) = b.term_at(ta.hom_degree) {
            if let Some(d) = drop_for(star, ta, tb, s) {
                f_vars.push((ta.hom_degree, d));
            }
        }
    }
    let f_index = |p: i64| f_vars.iter().position(|&(q, _)| q == p);

    // chain condition on every a^p -> b^(p+1)
    let mut equations: Vec<Vec<F>> = Vec::new();
    for ta in &a.terms {
        let p = ta.hom_degree;
        if b.term_at(p + 1).is_none() {
            continue;
        }
        let mut row = vec![F::zero(); f_vars.len()];
        if let (Some(k), Some(db)) = (f_index(p), b.differential_from(p)) {
            if survives(f_vars[k].1, db) {
                row[k] = row[k].clone() + F::one();
            }
        }
        if let (Some(da), Some(k)) = (a.differential_from(p), f_index(p + 1)) {
            if survives(da, f_vars[k].1) {
                row[k] = row[k].clone() - F::one();
            }
        }
        if row.iter().any(|x| !x.is_zero()) {
            equations.push(row);
        }
    }
    let chain_dim = if f_vars.is_empty() {
        0
    } else if equations.is_empty() {
        f_vars.len()
    } else {
        let eq = ExactMatrix::from_rows(equations)?;
        let zeros = vec![F::zero(); eq.rows()];
        solve_linear(&eq, &zeros)?
            .kernel_dim()
            .expect("homogeneous system is consistent")
    };

    // homotopies h^p : a^p -> b^(p-1)
    let mut h_vars: Vec<(i64, usize)> = Vec::new();
    for ta in &a.terms {
        if let Some(tb) = b.term_at(ta.hom_degree - 1) {
            if let Some(d) = drop_for(star, ta, tb, s) {
                h_vars.push((ta.hom_degree, d));
            }
        }
    }
    let mut image = ExactMatrix::<F>::zeros(f_vars.len(), h_vars.len());
    for (col, &(p, dh)) in h_vars.iter().enumerate() {
        // h^p followed by the differential of b lands in f^p
        if let (Some(db), Some(k)) = (b.differential_from(p - 1), f_index(p)) {
            if survives(dh, db) {
                image.set(k, col, image.get(k, col).clone() + F::one());
            }
        }
        // the differential of a followed by h^p lands in f^(p-1)
        if let (Some(da), Some(k)) = (a.differential_from(p - 1), f_index(p - 1)) {
            if survives(da, dh) {
                image.set(k, col, image.get(k, col).clone() + F::one());
            }
        }
    }
    let (null_dim, homotopy_kernel_dim) = if h_vars.is_empty() || f_vars.is_empty() {
        (0, h_vars.len())
    } else {
        let zeros = vec![F::zero(); image.rows()];
        let kernel = solve_linear(&image, &zeros)?
            .kernel_dim()
            .expect("homogeneous system is consistent");
        (rank(&image)?, kernel)
    };
    Ok(DegreePart {
        degree: s,
        chain_dim,
        homotopy_dim: h_vars.len(),
        homotopy_kernel_dim,
        null_dim,
    })
}

/// Arrow degrees of `q` read off the homotopy category: arrow `i -> j` gets
/// the lowest degree of `Hom(T_j, T_i)`, positive for loops.
pub fn derive_graded_quiver(
    q: &Quiver,
    star: &StarAlgebra,
    summands: &[TiltingSummand],
) -> Result<GradedQuiver, StarError> {
    let degrees = q
        .arrows()
        .iter()
        .map(|arrow| {
            let space = hom_complex(
                star,
                &summands[arrow.target - 1],
                &summands[arrow.source - 1],
            )?;
            let lowest = if arrow.source == arrow.target {
                space.lowest_positive_degree()
            } else {
                space.lowest_degree()
            };
            lowest.ok_or(StarError::NoMorphism {
                from: arrow.source,
                to: arrow.target,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(GradedQuiver {
        quiver: q.clone(),
        degrees,
    })
}

/// Entry `(i, j)` is `dim Hom(T_j, T_i)`, the number of paths `i -> j` in
/// the tree algebra.
pub fn hom_dimension_table(
    star: &StarAlgebra,
    summands: &[TiltingSummand],
) -> Result<ExactMatrix<i64>, MathError> {
    let e = summands.len();
    let mut table = ExactMatrix::zeros(e, e);
    for i in 0..e {
        for j in 0..e {
            let space = hom_complex(star, &summands[j], &summands[i])?;
            table.set(i, j, space.total() as i64);
        }
    }
    Ok(table)
}

/// Expected Hom dimensions: 0 off-cycle, 1 on a shared ordinary cycle, `m`
/// on the exceptional cycle, and `2` or `m + 1` on the diagonal.
pub fn expected_hom_table(q: &Quiver, multiplicity: u32) -> ExactMatrix<i64> {
    let m = multiplicity as i64;
    let e = q.vertex_count();
    ExactMatrix::from_fn(e, e, |r, c| {
        let (i, j) = (r + 1, c + 1);
        let exceptional = |v| q.on_exceptional(v);
        if i == j {
            if exceptional(i) {
                m + 1
            } else {
                2
            }
        } else if !q.shares_cycle(i, j) {
            0
        } else if exceptional(i) && exceptional(j) {
            m
        } else {
            1
        }
    })
}
