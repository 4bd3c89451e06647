//! The quiver with relations of a Brauer tree algebra and its Green-walk
//! grading.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::green::{Component, GreenNumbering};
use crate::tree::BrauerTree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub cycle: usize,
}

/// One cycle of the quiver, read as a closed path from its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    /// Arrow indices in path order.
    pub arrows: Vec<usize>,
    pub exceptional: bool,
    /// `m` for the exceptional cycle, 1 otherwise.
    pub multiplicity: u32,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Length of the socle word `(cycle)^multiplicity`.
    pub fn socle_length(&self) -> usize {
        self.arrows.len() * self.multiplicity as usize
    }
}

/// A cycle before canonical ordering: the vertices around one tree vertex in
/// counter-clockwise order. Arrows run from each vertex to the previous one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpec {
    pub ccw: Vec<usize>,
    pub exceptional: bool,
    pub multiplicity: u32,
}

/// Quiver on vertices `1..=vertex_count`; every vertex lies on one or two
/// cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    cycles: Vec<Cycle>,
}

impl Quiver {
    /// Canonical form: the exceptional cycle first, the rest by smallest
    /// vertex; each cycle's arrows start at its smallest vertex.
    pub fn from_cycles(vertex_count: usize, mut specs: Vec<CycleSpec>) -> Quiver {
        for spec in &mut specs {
            let k = spec
                .ccw
                .iter()
                .enumerate()
                .min_by_key(|(_, &v)| v)
                .map(|(k, _)| k)
                .expect("cycle has a vertex");
            spec.ccw.rotate_left(k);
        }
        specs.sort_by_key(|s| (!s.exceptional, s.ccw[0]));
        let mut arrows = Vec::new();
        let mut cycles = Vec::new();
        for (c, spec) in specs.iter().enumerate() {
            let ccw = &spec.ccw;
            let r = ccw.len();
            let mut ids = Vec::with_capacity(r);
            // l0 -> l_r, l_r -> l_(r-1), ..., l1 -> l0
            for step in 0..r {
                let source = ccw[(r - step) % r];
                let target = ccw[(2 * r - step - 1) % r];
                ids.push(arrows.len());
                arrows.push(Arrow {
                    source,
                    target,
                    cycle: c,
                });
            }
            cycles.push(Cycle {
                arrows: ids,
                exceptional: spec.exceptional,
                multiplicity: spec.multiplicity,
            });
        }
        Quiver {
            vertex_count,
            arrows,
            cycles,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle(&self, c: usize) -> &Cycle {
        &self.cycles[c]
    }

    pub fn exceptional_cycle(&self) -> Option<usize> {
        self.cycles.iter().position(|c| c.exceptional)
    }

    /// Cycles through vertex `v`, exceptional first.
    pub fn cycles_at(&self, v: usize) -> Vec<usize> {
        (0..self.cycles.len())
            .filter(|&c| self.outgoing_in(v, c).is_some())
            .collect()
    }

    /// The arrow leaving `v` on cycle `c`.
    pub fn outgoing_in(&self, v: usize, c: usize) -> Option<usize> {
        self.cycles[c]
            .arrows
            .iter()
            .copied()
            .find(|&a| self.arrows[a].source == v)
    }

    /// Vertices of cycle `c` in path order from its smallest vertex.
    pub fn cycle_vertices(&self, c: usize) -> Vec<usize> {
        self.cycles[c]
            .arrows
            .iter()
            .map(|&a| self.arrows[a].source)
            .collect()
    }

    /// The path of `length` arrows along cycle `c` starting at `v`.
    pub fn walk(&self, c: usize, v: usize, length: usize) -> Vec<usize> {
        let cyc = &self.cycles[c].arrows;
        let start = cyc
            .iter()
            .position(|&a| self.arrows[a].source == v)
            .expect("vertex on cycle");
        (0..length).map(|k| cyc[(start + k) % cyc.len()]).collect()
    }

    pub fn find_arrow(&self, source: usize, target: usize) -> Option<usize> {
        self.arrows
            .iter()
            .position(|a| a.source == source && a.target == target)
    }

    pub fn shares_cycle(&self, i: usize, j: usize) -> bool {
        let ci = self.cycles_at(i);
        self.cycles_at(j).iter().any(|c| ci.contains(c))
    }

    /// Does `v` lie on the exceptional cycle?
    pub fn on_exceptional(&self, v: usize) -> bool {
        self.exceptional_cycle()
            .is_some_and(|c| self.outgoing_in(v, c).is_some())
    }
}

/// A full cycle word read from a vertex, raised to a power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleWord {
    pub cycle: usize,
    pub power: u32,
}

/// `first = second` at a vertex on two cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleEquality {
    pub vertex: usize,
    pub first: CycleWord,
    pub second: CycleWord,
}

/// `word · (next arrow of the cycle) = 0` at a vertex on one cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub vertex: usize,
    pub word: CycleWord,
}

/// Relations of a Brauer tree algebra. Paths compose left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RelationSet {
    /// `(a, b)` with `ab = 0`: composable arrows on different cycles.
    pub zero: Vec<(usize, usize)>,
    pub equalities: Vec<CycleEquality>,
    pub truncations: Vec<Truncation>,
}

impl RelationSet {
    pub fn is_zero_pair(&self, a: usize, b: usize) -> bool {
        self.zero.contains(&(a, b))
    }
}

/// Relations determined by the cycle structure.
pub fn relations_for(q: &Quiver) -> RelationSet {
    let mut zero = Vec::new();
    for (a, arrow_a) in q.arrows().iter().enumerate() {
        for (b, arrow_b) in q.arrows().iter().enumerate() {
            if arrow_a.target == arrow_b.source && arrow_a.cycle != arrow_b.cycle {
                zero.push((a, b));
            }
        }
    }
    let mut equalities = Vec::new();
    let mut truncations = Vec::new();
    for v in 1..=q.vertex_count() {
        let word = |c: usize| CycleWord {
            cycle: c,
            power: q.cycle(c).multiplicity,
        };
        match q.cycles_at(v)[..] {
            [c] => truncations.push(Truncation {
                vertex: v,
                word: word(c),
            }),
            [c1, c2] => equalities.push(CycleEquality {
                vertex: v,
                first: word(c1),
                second: word(c2),
            }),
            _ => {}
        }
    }
    RelationSet {
        zero,
        equalities,
        truncations,
    }
}

/// Does the exceptional vertex carry a cycle? It does when it has two or
/// more edges, and as a loop when it has one edge and either `m > 1` or the
/// tree is a single edge (where the loop squares to zero).
fn exceptional_has_cycle(tree: &BrauerTree) -> bool {
    tree.degree(tree.exceptional()) >= 2 || tree.multiplicity() > 1 || tree.edge_count() == 1
}

/// The quiver and relations of the basic algebra of `tree`, with vertices
/// labelled by Green index.
pub fn build_quiver(tree: &BrauerTree, numbering: &GreenNumbering) -> (Quiver, RelationSet) {
    let mut specs = Vec::new();
    for v in 0..tree.vertex_count() {
        let is_exceptional = v == tree.exceptional();
        if tree.degree(v) < 2 && !(is_exceptional && exceptional_has_cycle(tree)) {
            continue;
        }
        specs.push(CycleSpec {
            ccw: tree
                .rotation(v)
                .iter()
                .map(|&e| numbering.index_of(e))
                .collect(),
            exceptional: is_exceptional,
            multiplicity: if is_exceptional {
                tree.multiplicity()
            } else {
                1
            },
        });
    }
    let q = Quiver::from_cycles(tree.edge_count(), specs);
    let r = relations_for(&q);
    (q, r)
}

/// A quiver with an integer degree on every arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedQuiver {
    pub quiver: Quiver,
    pub degrees: Vec<i64>,
}

impl GradedQuiver {
    pub fn degree(&self, a: usize) -> i64 {
        self.degrees[a]
    }

    /// Degree of one traversal of cycle `c`.
    pub fn cycle_degree(&self, c: usize) -> i64 {
        self.quiver
            .cycle(c)
            .arrows
            .iter()
            .map(|&a| self.degrees[a])
            .sum()
    }

    /// Degree of the socle word `(cycle)^multiplicity`.
    pub fn socle_degree(&self, c: usize) -> i64 {
        self.cycle_degree(c) * self.quiver.cycle(c).multiplicity as i64
    }

    pub fn path_degree(&self, path: &[usize]) -> i64 {
        path.iter().map(|&a| self.degrees[a]).sum()
    }
}

/// Closed-form Green-walk grading. Exceptional arrow `i -> j` gets
/// `((i - j - 1) mod e) + 1`; on every other cycle the arrow from the
/// smallest to the largest vertex gets `m e` and the rest get 0.
pub fn assign_degrees(q: &Quiver, multiplicity: u32) -> GradedQuiver {
    let e = q.vertex_count() as i64;
    let me = multiplicity as i64 * e;
    let degrees = q
        .arrows()
        .iter()
        .map(|a| {
            let cycle = q.cycle(a.cycle);
            if cycle.exceptional {
                (a.source as i64 - a.target as i64 - 1).rem_euclid(e) + 1
            } else {
                let vs = q.cycle_vertices(a.cycle);
                let lo = *vs.iter().min().unwrap();
                let hi = *vs.iter().max().unwrap();
                if a.source == lo && a.target == hi {
                    me
                } else {
                    0
                }
            }
        })
        .collect();
    GradedQuiver {
        quiver: q.clone(),
        degrees,
    }
}

/// Green-walk graded quiver of a tree from a given start edge.
pub fn green_graded_quiver(
    tree: &BrauerTree,
    numbering: &GreenNumbering,
) -> (GradedQuiver, RelationSet) {
    let (q, r) = build_quiver(tree, numbering);
    (assign_degrees(&q, tree.multiplicity()), r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalDegreeEntry {
    pub arrow: usize,
    pub target: usize,
    pub degree: i64,
    pub component_size: usize,
    pub pass: bool,
}

/// Compare each exceptional arrow's degree with the size of the component
/// of its target.
pub fn exceptional_degree_check(
    gq: &GradedQuiver,
    components: &[Component],
) -> Vec<ExceptionalDegreeEntry> {
    let Some(c) = gq.quiver.exceptional_cycle() else {
        return Vec::new();
    };
    gq.quiver
        .cycle(c)
        .arrows
        .iter()
        .map(|&a| {
            let target = gq.quiver.arrow(a).target;
            let size = components
                .iter()
                .find(|comp| comp.root == target)
                .map_or(0, Component::size);
            ExceptionalDegreeEntry {
                arrow: a,
                target,
                degree: gq.degree(a),
                component_size: size,
                pass: gq.degree(a) == size as i64,
            }
        })
        .collect()
}

/// Structural facts every Green-walk grading satisfies. Returns one message
/// per violation.
pub fn grading_violations(gq: &GradedQuiver) -> Vec<String> {
    let q = &gq.quiver;
    let e = q.vertex_count() as i64;
    let mut out = Vec::new();
    let me = e * q
        .exceptional_cycle()
        .map_or(1, |c| q.cycle(c).multiplicity as i64);
    for (a, arrow) in q.arrows().iter().enumerate() {
        let d = gq.degree(a);
        if d < 0 {
            out.push(format!(
                "arrow {}->{} has negative degree {d}",
                arrow.source, arrow.target
            ));
        }
        if d == 0 && arrow.source <= arrow.target {
            out.push(format!(
                "degree-0 arrow {}->{} does not decrease the index",
                arrow.source, arrow.target
            ));
        }
    }
    for (c, cycle) in q.cycles().iter().enumerate() {
        let positive = cycle.arrows.iter().filter(|&&a| gq.degree(a) > 0).count();
        if cycle.exceptional {
            if positive != cycle.len() {
                out.push("exceptional cycle has a degree-0 arrow".to_string());
            }
            if gq.cycle_degree(c) != e {
                out.push(format!(
                    "exceptional cycle sum {} != e = {e}",
                    gq.cycle_degree(c)
                ));
            }
        } else if positive != 1 {
            out.push(format!("cycle {c} has {positive} positive arrows"));
        }
        if gq.socle_degree(c) != me {
            out.push(format!(
                "socle word of cycle {c} has degree {}",
                gq.socle_degree(c)
            ));
        }
    }
    out
}

/// `"<source edge id>-><target edge id>"`
pub fn arrow_id(tree: &BrauerTree, numbering: &GreenNumbering, q: &Quiver, a: usize) -> String {
    let arrow = q.arrow(a);
    format!(
        "{}->{}",
        tree.edge_id(numbering.edge(arrow.source)),
        tree.edge_id(numbering.edge(arrow.target))
    )
}

/// Degree function keyed by arrow id; independent of the numbering.
pub fn degrees_by_id(
    tree: &BrauerTree,
    numbering: &GreenNumbering,
    gq: &GradedQuiver,
) -> BTreeMap<String, i64> {
    (0..gq.quiver.arrows().len())
        .map(|a| (arrow_id(tree, numbering, &gq.quiver, a), gq.degree(a)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::green::{default_start, green_number};
    use proptest::prelude::*;

    const SIX_EDGE: &str = include_str!("../fixtures/six_edge.json");
    const ELEVEN_EDGE: &str = include_str!("../fixtures/eleven_edge.json");

    fn graded(tree: &BrauerTree) -> (GreenNumbering, GradedQuiver, RelationSet) {
        let n = green_number(tree, default_start(tree)).unwrap();
        let (gq, r) = green_graded_quiver(tree, &n);
        (n, gq, r)
    }

    fn degree_of(gq: &GradedQuiver, s: usize, t: usize) -> i64 {
        gq.degree(
            gq.quiver
                .find_arrow(s, t)
                .unwrap_or_else(|| panic!("arrow {s}->{t}")),
        )
    }

    #[test]
    fn six_edge_quiver_and_degrees() {
        let t = BrauerTree::parse(SIX_EDGE).unwrap();
        let (_, gq, r) = graded(&t);
        assert_eq!(gq.quiver.arrows().len(), 8);
        let expected = [
            ((2, 1), 1),
            ((3, 2), 1),
            ((1, 3), 4),
            ((3, 5), 6),
            ((5, 4), 0),
            ((4, 3), 0),
            ((5, 6), 6),
            ((6, 5), 0),
        ];
        for ((s, tg), d) in expected {
            assert_eq!(degree_of(&gq, s, tg), d, "S{s}->S{tg}");
        }
        // S3 and S5 lie on two cycles each
        assert_eq!(r.equalities.len(), 2);
        assert!(grading_violations(&gq).is_empty());
    }

    #[test]
    fn eleven_edge_degrees() {
        let t = BrauerTree::parse(ELEVEN_EDGE).unwrap();
        let (n, gq, _) = graded(&t);
        assert_eq!(degree_of(&gq, 9, 1), 8);
        assert_eq!(degree_of(&gq, 1, 9), 3);
        for (a, arrow) in gq.quiver.arrows().iter().enumerate() {
            if !gq.quiver.cycle(arrow.cycle).exceptional {
                let expected = if arrow.source < arrow.target { 11 } else { 0 };
                assert_eq!(gq.degree(a), expected);
            }
        }
        let report = exceptional_degree_check(&gq, &n.components());
        assert_eq!(report.len(), 2);
        assert!(report.iter().all(|r| r.pass));
    }

    #[test]
    fn single_edge_cases() {
        let (_, gq, r) = graded(&BrauerTree::star(2, 1));
        assert_eq!(gq.quiver.arrows().len(), 1);
        assert_eq!(gq.degree(0), 1);
        assert_eq!(r.truncations.len(), 1);
        assert_eq!(r.truncations[0].word.power, 2);

        // k[x]/(x^2): a loop squaring to zero
        let (_, gq, r) = graded(&BrauerTree::star(1, 1));
        assert_eq!(gq.quiver.arrows().len(), 1);
        assert_eq!(r.truncations[0].word.power, 1);
    }

    #[test]
    fn brauer_line_without_loop() {
        let t = BrauerTree::line(1, 3, 0);
        let (_, gq, _) = graded(&t);
        assert_eq!(gq.quiver.arrows().len(), 4);
        assert!(gq.quiver.exceptional_cycle().is_none());
        assert_eq!(degree_of(&gq, 1, 2), 3);
        assert_eq!(degree_of(&gq, 2, 1), 0);
    }

    #[test]
    fn brauer_line_with_loop() {
        let t = BrauerTree::line(3, 4, 0);
        let (_, gq, _) = graded(&t);
        assert_eq!(degree_of(&gq, 1, 1), 4);
        for i in 1..4 {
            assert_eq!(degree_of(&gq, i, i + 1), 12);
            assert_eq!(degree_of(&gq, i + 1, i), 0);
        }
    }

    #[test]
    fn star_exceptional_degrees_are_one() {
        let t = BrauerTree::star(2, 5);
        let (n, gq, _) = graded(&t);
        assert!(gq.degrees.iter().all(|&d| d == 1));
        assert!(exceptional_degree_check(&gq, &n.components())
            .iter()
            .all(|r| r.pass));
    }

    proptest! {
        #[test]
        fn grading_structure(seed in any::<u64>(), e in 1usize..12, m in 1u32..4) {
            let t = corpus::random_tree(seed, e, m);
            let (n, gq, r) = graded(&t);
            prop_assert!(grading_violations(&gq).is_empty(), "{:?}", grading_violations(&gq));
            prop_assert!(exceptional_degree_check(&gq, &n.components()).iter().all(|x| x.pass));
            for v in 1..=e {
                prop_assert!((1..=2).contains(&gq.quiver.cycles_at(v).len()));
            }
            for &(a, b) in &r.zero {
                prop_assert_eq!(gq.quiver.arrow(a).target, gq.quiver.arrow(b).source);
            }
        }

        #[test]
        fn start_edge_independence(seed in any::<u64>(), e in 1usize..12, m in 1u32..4) {
            let t = corpus::random_tree(seed, e, m);
            let starts = t.rotation(t.exceptional()).to_vec();
            let by_id = |s| {
                let n = green_number(&t, s).unwrap();
                let (gq, _) = green_graded_quiver(&t, &n);
                degrees_by_id(&t, &n, &gq)
            };
            let first = by_id(starts[0]);
            for &s in &starts[1..] {
                prop_assert_eq!(by_id(s), first.clone());
            }
        }
    }
}
