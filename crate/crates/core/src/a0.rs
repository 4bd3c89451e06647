//! The degree-zero subalgebra A₀: rooted-tree components with quadratic
//! zero relations, recovery of the whole quiver, Cartan matrix, global
//! dimension, and the trivial extension of a Brauer line.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::TreeAlgebra;
use crate::exactmath::{rank, ExactMatrix, MathError, Rational, Ring};
use crate::green::{default_start, green_number};
use crate::quiver::{
    green_graded_quiver, relations_for, CycleSpec, GradedQuiver, Quiver, RelationSet,
};
use crate::tree::BrauerTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum A0Error {
    #[error("not a rooted tree: {0}")]
    NotRootedTree(String),
    #[error("two longest nonzero paths end at vertex {0}")]
    AmbiguousPath(usize),
    #[error("arrow {0}->{1} lies on no recovered cycle")]
    Unrecovered(usize, usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("no unique degree-zero element from {from} to {to}")]
    NoDualPartner { from: usize, to: usize },
    #[error(transparent)]
    Math(#[from] MathError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A0Arrow {
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A0Component {
    pub root: usize,
    /// Vertices, ascending.
    pub vertices: Vec<usize>,
    /// Indices into [`A0Algebra::arrows`].
    pub arrows: Vec<usize>,
}

impl A0Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// A product of rooted-tree monomial algebras. Components are listed in the
/// cyclic order of their roots, which is ascending root index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A0Algebra {
    pub vertex_count: usize,
    pub multiplicity: u32,
    pub arrows: Vec<A0Arrow>,
    /// `(a, b)` with `ab = 0`, as indices into `arrows`.
    pub zero: Vec<(usize, usize)>,
    pub components: Vec<A0Component>,
    /// `levels[v - 1]`; roots are at level 0.
    pub levels: Vec<u32>,
}

impl A0Algebra {
    pub fn new(
        vertex_count: usize,
        multiplicity: u32,
        arrows: Vec<A0Arrow>,
        zero: Vec<(usize, usize)>,
    ) -> Result<Self, A0Error> {
        let mut out: Vec<Option<usize>> = vec![None; vertex_count];
        let mut indegree = vec![0usize; vertex_count];
        for (k, a) in arrows.iter().enumerate() {
            if !(1..=vertex_count).contains(&a.source) || !(1..=vertex_count).contains(&a.target) {
                return Err(A0Error::NotRootedTree(format!(
                    "arrow {}->{} leaves the vertex range",
                    a.source, a.target
                )));
            }
            if out[a.source - 1].replace(k).is_some() {
                return Err(A0Error::NotRootedTree(format!(
                    "vertex {} has two outgoing arrows",
                    a.source
                )));
            }
            indegree[a.target - 1] += 1;
        }
        for &(a, b) in &zero {
            if arrows
                .get(a)
                .zip(arrows.get(b))
                .is_none_or(|(x, y)| x.target != y.source)
            {
                return Err(A0Error::NotRootedTree(format!(
                    "relation ({a}, {b}) is not a path"
                )));
            }
        }
        let mut levels = vec![0u32; vertex_count];
        let mut root_of = vec![0usize; vertex_count];
        for v in 1..=vertex_count {
            let mut x = v;
            let mut level = 0u32;
            while let Some(k) = out[x - 1] {
                x = arrows[k].target;
                level += 1;
                if level as usize > vertex_count {
                    return Err(A0Error::NotRootedTree(format!("cycle through vertex {v}")));
                }
            }
            levels[v - 1] = level;
            root_of[v - 1] = x;
        }
        for v in 1..=vertex_count {
            let bound = if out[v - 1].is_none() { 1 } else { 2 };
            if indegree[v - 1] > bound {
                return Err(A0Error::NotRootedTree(format!(
                    "vertex {v} is the target of {} arrows",
                    indegree[v - 1]
                )));
            }
        }
        let components = (1..=vertex_count)
            .filter(|&v| out[v - 1].is_none())
            .map(|root| A0Component {
                root,
                vertices: (1..=vertex_count)
                    .filter(|&v| root_of[v - 1] == root)
                    .collect(),
                arrows: (0..arrows.len())
                    .filter(|&k| root_of[arrows[k].source - 1] == root)
                    .collect(),
            })
            .collect();
        Ok(A0Algebra {
            vertex_count,
            multiplicity,
            arrows,
            zero,
            components,
            levels,
        })
    }

    pub fn level(&self, v: usize) -> u32 {
        self.levels[v - 1]
    }

    pub fn max_level(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    pub fn outgoing(&self, v: usize) -> Option<usize> {
        self.arrows.iter().position(|a| a.source == v)
    }

    pub fn is_zero(&self, a: usize, b: usize) -> bool {
        self.zero.contains(&(a, b))
    }

    /// Nonzero paths from `v`, as arrow sequences, shortest first
    /// (the trivial path included).
    pub fn paths_from(&self, v: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut path: Vec<usize> = Vec::new();
        let mut x = v;
        while let Some(k) = self.outgoing(x) {
            if path.last().is_some_and(|&prev| self.is_zero(prev, k)) {
                break;
            }
            path.push(k);
            out.push(path.clone());
            x = self.arrows[k].target;
        }
        out
    }

    fn path_target(&self, v: usize, path: &[usize]) -> usize {
        path.last().map_or(v, |&k| self.arrows[k].target)
    }

    /// Quasi-hereditary order: `S_j < S_i` iff there is a path `j -> i`.
    pub fn precedes(&self, j: usize, i: usize) -> bool {
        if i == j {
            return false;
        }
        let mut x = j;
        while let Some(k) = self.outgoing(x) {
            x = self.arrows[k].target;
            if x == i {
                return true;
            }
        }
        false
    }

    /// Every relation is a path of length two, so it is homogeneous of
    /// degree 2 once all arrows are put in degree 1.
    pub fn tightly_graded(&self) -> bool {
        self.zero
            .iter()
            .all(|&(a, b)| self.arrows[a].target == self.arrows[b].source)
    }
}

/// The degree-0 arrows of a Green-walk grading and the relations among them.
pub fn extract_a0(gq: &GradedQuiver, relations: &RelationSet) -> Result<A0Algebra, A0Error> {
    let q = &gq.quiver;
    let kept: Vec<usize> = (0..q.arrows().len())
        .filter(|&a| gq.degree(a) == 0)
        .collect();
    let position: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let arrows = kept
        .iter()
        .map(|&a| A0Arrow {
            source: q.arrow(a).source,
            target: q.arrow(a).target,
        })
        .collect();
    let zero = relations
        .zero
        .iter()
        .filter_map(|(a, b)| Some((*position.get(a)?, *position.get(b)?)))
        .collect();
    let multiplicity = q.exceptional_cycle().map_or(1, |c| q.cycle(c).multiplicity);
    A0Algebra::new(q.vertex_count(), multiplicity, arrows, zero)
}

/// Output of [`recover_quiver`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovery {
    pub graded: GradedQuiver,
    pub relations: RelationSet,
    /// Closing arrows added to non-exceptional cycles, in the order found.
    pub added: Vec<(usize, usize)>,
}

/// Rebuild the graded quiver and relations of the whole algebra from A₀.
pub fn recover_quiver(a: &A0Algebra) -> Result<Recovery, A0Error> {
    let e = a.vertex_count;
    let me = a.multiplicity as i64 * e as i64;
    let mut used = vec![false; a.arrows.len()];
    let mut order: Vec<usize> = (1..=e).collect();
    order.sort_by_key(|&v| (a.level(v), v));
    let mut specs = Vec::new();
    let mut added = Vec::new();
    for v in order {
        while let Some(first) = (0..a.arrows.len()).find(|&k| !used[k] && a.arrows[k].target == v) {
            // extend backwards while the composition stays nonzero
            let mut path = vec![first];
            loop {
                let head = path[0];
                let x = a.arrows[head].source;
                let candidates: Vec<usize> = (0..a.arrows.len())
                    .filter(|&k| {
                        !used[k]
                            && !path.contains(&k)
                            && a.arrows[k].target == x
                            && !a.is_zero(k, head)
                    })
                    .collect();
                match candidates[..] {
                    [] => break,
                    [k] => path.insert(0, k),
                    _ => return Err(A0Error::AmbiguousPath(v)),
                }
            }
            for &k in &path {
                used[k] = true;
            }
            let mut ccw = vec![v];
            ccw.extend(path.iter().rev().map(|&k| a.arrows[k].source));
            added.push((v, a.arrows[path[0]].source));
            specs.push(CycleSpec {
                ccw,
                exceptional: false,
                multiplicity: 1,
            });
        }
    }
    if let Some(k) = used.iter().position(|u| !u) {
        return Err(A0Error::Unrecovered(a.arrows[k].source, a.arrows[k].target));
    }
    let roots: Vec<usize> = a.components.iter().map(|c| c.root).collect();
    if roots.len() >= 2 || a.multiplicity > 1 || e == 1 {
        specs.push(CycleSpec {
            ccw: roots,
            exceptional: true,
            multiplicity: a.multiplicity,
        });
    }
    let q = Quiver::from_cycles(e, specs);
    let size_at = |v: usize| {
        a.components
            .iter()
            .find(|c| c.root == v)
            .map_or(0, A0Component::size) as i64
    };
    let degrees = q
        .arrows()
        .iter()
        .map(|arrow| {
            if q.cycle(arrow.cycle).exceptional {
                size_at(arrow.target)
            } else if a
                .arrows
                .iter()
                .any(|x| x.source == arrow.source && x.target == arrow.target)
            {
                0
            } else {
                me
            }
        })
        .collect();
    let relations = relations_for(&q);
    Ok(Recovery {
        graded: GradedQuiver { quiver: q, degrees },
        relations,
        added,
    })
}

/// Entry `(i, j)` counts nonzero paths `i -> j` in A₀.
pub fn a0_cartan(a: &A0Algebra) -> ExactMatrix<i64> {
    let mut c = ExactMatrix::zeros(a.vertex_count, a.vertex_count);
    for v in 1..=a.vertex_count {
        for path in a.paths_from(v) {
            let t = a.path_target(v, &path);
            let entry = *c.get(v - 1, t - 1);
            c.set(v - 1, t - 1, entry + 1);
        }
    }
    c
}

/// Projective dimension of every simple module; the global dimension is
/// their maximum. Modules are the uniserial quotients `U(v, k)` of the
/// projectives `P_v`; the kernel of `P_v -> U(v, k)` is `U(w, len P_v - k)`
/// with `w` the vertex reached after `k` steps.
pub fn simple_projective_dimensions(a: &A0Algebra) -> Vec<u32> {
    let len = |v: usize| a.paths_from(v).len();
    let after = |v: usize, k: usize| {
        let paths = a.paths_from(v);
        a.path_target(v, &paths[k])
    };
    (1..=a.vertex_count)
        .map(|v| {
            let (mut x, mut k, mut pd) = (v, 1usize, 0u32);
            while k < len(x) {
                let w = after(x, k);
                k = len(x) - k;
                x = w;
                pd += 1;
            }
            pd
        })
        .collect()
}

pub fn a0_global_dimension(a: &A0Algebra) -> u32 {
    simple_projective_dimensions(a)
        .into_iter()
        .max()
        .unwrap_or(0)
}

/// Result of comparing `T(A₀)` with the graded tree algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialExtensionReport {
    pub a0_dim: usize,
    pub extension_dim: usize,
    pub algebra_dim: usize,
    pub rank: usize,
    pub products_checked: usize,
    pub product_failures: usize,
    pub grading_failures: usize,
}

impl TrivialExtensionReport {
    pub fn passed(&self) -> bool {
        self.extension_dim == self.algebra_dim
            && self.rank == self.algebra_dim
            && self.product_failures == 0
            && self.grading_failures == 0
    }
}

/// `A₀ ⊕ A₀*` with `(x, f)(y, g) = (xy, xg + fy)`, on the path basis of A₀
/// and its dual basis. Vectors have the A₀ part first.
struct TrivialExtension<'a> {
    a0: &'a A0Algebra,
    /// `(start, arrows)` for every nonzero path.
    basis: Vec<(usize, Vec<usize>)>,
    index: BTreeMap<(usize, Vec<usize>), usize>,
}

impl<'a> TrivialExtension<'a> {
    fn new(a0: &'a A0Algebra) -> Self {
        let basis: Vec<(usize, Vec<usize>)> = (1..=a0.vertex_count)
            .flat_map(|v| a0.paths_from(v).into_iter().map(move |p| (v, p)))
            .collect();
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, b)| (b, k))
            .collect();
        TrivialExtension { a0, basis, index }
    }

    fn n(&self) -> usize {
        self.basis.len()
    }

    fn a0_mul(&self, x: usize, y: usize) -> Option<usize> {
        let (sx, px) = &self.basis[x];
        let (sy, py) = &self.basis[y];
        if self.a0.path_target(*sx, px) != *sy {
            return None;
        }
        if let (Some(&l), Some(&f)) = (px.last(), py.first()) {
            if self.a0.is_zero(l, f) {
                return None;
            }
        }
        let mut joined = px.clone();
        joined.extend(py);
        self.index.get(&(*sx, joined)).copied()
    }

    fn mul(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.n();
        let mut out = vec![0i64; 2 * n];
        for x in 0..n {
            for y in 0..n {
                // (x, 0)(y, 0) = (xy, 0)
                let c = u[x] * v[y];
                if c != 0 {
                    if let Some(xy) = self.a0_mul(x, y) {
                        out[xy] += c;
                    }
                }
                // (x, 0)(0, y*): z ↦ y*(z x)
                let c = u[x] * v[n + y];
                if c != 0 {
                    for z in 0..n {
                        if self.a0_mul(z, x) == Some(y) {
                            out[n + z] += c;
                        }
                    }
                }
                // (0, x*)(y, 0): z ↦ x*(y z)
                let c = u[n + x] * v[y];
                if c != 0 {
                    for z in 0..n {
                        if self.a0_mul(y, z) == Some(x) {
                            out[n + z] += c;
                        }
                    }
                }
            }
        }
        out
    }

    fn unit_vector(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; 2 * self.n()];
        v[k] = 1;
        v
    }
}

/// Verify `T(A₀) ≅ A_Γ` for a Brauer line with multiplicity 1 and the
/// exceptional vertex at an end: A₀ arrows go to `(a, 0)`, a positive arrow
/// `s -> t` goes to `(0, ψ*)` with `ψ` the A₀ element from `t` to `s`.
pub fn trivial_extension_check(tree: &BrauerTree) -> Result<TrivialExtensionReport, A0Error> {
    if !tree.is_line() {
        return Err(A0Error::Unsupported("the tree is not a line".into()));
    }
    if tree.multiplicity() != 1 {
        return Err(A0Error::Unsupported("multiplicity must be 1".into()));
    }
    if tree.degree(tree.exceptional()) != 1 {
        return Err(A0Error::Unsupported(
            "the exceptional vertex must be an end of the line".into(),
        ));
    }
    let numbering = green_number(tree, default_start(tree)).expect("default start is valid");
    let (gq, relations) = green_graded_quiver(tree, &numbering);
    let e = tree.edge_count() as i64;
    let algebra = TreeAlgebra::new(&gq);
    let a0 = extract_a0(&gq, &relations)?;
    let t = TrivialExtension::new(&a0);
    let n = t.n();

    let q = &gq.quiver;
    let mut images = Vec::with_capacity(q.arrows().len());
    for (k, arrow) in q.arrows().iter().enumerate() {
        if gq.degree(k) == 0 {
            let j = a0
                .arrows
                .iter()
                .position(|x| x.source == arrow.source && x.target == arrow.target)
                .expect("degree-0 arrow lies in A0");
            images.push(t.unit_vector(t.index[&(arrow.source, vec![j])]));
        } else {
            let partners: Vec<usize> = (0..n)
                .filter(|&z| {
                    let (s, p) = &t.basis[z];
                    *s == arrow.target && a0.path_target(*s, p) == arrow.source
                })
                .collect();
            match partners[..] {
                [z] => images.push(t.unit_vector(n + z)),
                _ => {
                    return Err(A0Error::NoDualPartner {
                        from: arrow.target,
                        to: arrow.source,
                    })
                }
            }
        }
    }
    let image_of = |b| -> Vec<i64> {
        let word = algebra.word(b);
        match word.split_first() {
            None => {
                let v = algebra.source(b);
                t.unit_vector(t.index[&(v, Vec::new())])
            }
            Some((&first, rest)) => rest
                .iter()
                .fold(images[first].clone(), |acc, &a| t.mul(&acc, &images[a])),
        }
    };
    let basis = algebra.basis().to_vec();
    let mapped: Vec<Vec<i64>> = basis.iter().map(|&b| image_of(b)).collect();

    let matrix = ExactMatrix::from_fn(mapped.len(), 2 * n, |r, c| Rational::from_i64(mapped[r][c]));
    let rank = rank(&matrix)?;

    let mut grading_failures = 0;
    for (k, &b) in basis.iter().enumerate() {
        let low = mapped[k][..n].iter().any(|&c| c != 0);
        let high = mapped[k][n..].iter().any(|&c| c != 0);
        let ok = match (low, high) {
            (true, false) => algebra.degree(b) == 0,
            (false, true) => algebra.degree(b) == e,
            _ => false,
        };
        if !ok {
            grading_failures += 1;
        }
    }

    let mut product_failures = 0;
    let mut products_checked = 0;
    let zero = vec![0i64; 2 * n];
    for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate() {
            products_checked += 1;
            let expected = match algebra.mul(x, y) {
                Some(xy) => &mapped[algebra.index_of(xy).expect("basis element")],
                None => &zero,
            };
            if t.mul(&mapped[i], &mapped[j]) != *expected {
                product_failures += 1;
            }
        }
    }

    Ok(TrivialExtensionReport {
        a0_dim: n,
        extension_dim: 2 * n,
        algebra_dim: algebra.dim(),
        rank,
        products_checked,
        product_failures,
        grading_failures,
    })
}
