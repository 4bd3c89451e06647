//! Acceptance criteria 1 to 9, one line of output each.

use std::collections::BTreeMap;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use greengrade_core::a0::{
    a0_cartan, a0_global_dimension, extract_a0, recover_quiver, trivial_extension_check, A0Algebra,
};
use greengrade_core::cartan::{
    at_one, cartan_closed_form, cartan_determinant, cartan_from_paths, constant_terms,
    expected_determinant,
};
use greengrade_core::corpus::{random_corpus, stars_and_lines};
use greengrade_core::exactmath::{rational, Rational};
use greengrade_core::green::{default_start, green_number, GreenNumbering};
use greengrade_core::hm::{
    hm_decompose, hm_inv, hm_mul, hm_oracle_compose, hm_recombine, DecompositionOrder, HmElement,
};
use greengrade_core::quiver::{degrees_by_id, green_graded_quiver, GradedQuiver, RelationSet};
use greengrade_core::regrading::{
    apply_shifts, morita_solve, positive_shifts, rescale, shifts_by_edge, ShiftVector,
};
use greengrade_core::star::{
    build_tilting, derive_graded_quiver, expected_hom_table, hom_dimension_table, StarAlgebra,
};
use greengrade_core::tree::BrauerTree;

const SIX_EDGE: &str = include_str!("../fixtures/six_edge.json");
const ELEVEN_EDGE: &str = include_str!("../fixtures/eleven_edge.json");
const GAMMA: &str = include_str!("../fixtures/four_edge_gamma.json");
const DELTA: &str = include_str!("../fixtures/four_edge_delta.json");

struct Graded {
    tree: BrauerTree,
    n: GreenNumbering,
    gq: GradedQuiver,
    r: RelationSet,
}

fn graded(tree: &BrauerTree) -> Graded {
    let n = green_number(tree, default_start(tree)).unwrap();
    let (gq, r) = green_graded_quiver(tree, &n);
    Graded {
        tree: tree.clone(),
        n,
        gq,
        r,
    }
}

fn corpus() -> Vec<BrauerTree> {
    let mut trees: Vec<BrauerTree> = [SIX_EDGE, ELEVEN_EDGE, GAMMA, DELTA]
        .iter()
        .map(|s| BrauerTree::parse(s).unwrap())
        .collect();
    trees.extend(stars_and_lines(6, 3));
    trees.extend(random_corpus(20_240_917, 50, 9, 3));
    trees
}

fn label(t: &BrauerTree) -> String {
    format!(
        "tree (m={}, e={}, exceptional {})",
        t.multiplicity(),
        t.edge_count(),
        t.vertex_id(t.exceptional())
    )
}

/// Collects failures for one criterion.
#[derive(Default)]
struct Outcome(Vec<String>);

impl Outcome {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

fn degree(g: &Graded, s: usize, t: usize) -> Option<i64> {
    g.gq.quiver.find_arrow(s, t).map(|a| g.gq.degree(a))
}

fn criterion_1(out: &mut Outcome) {
    let g = graded(&BrauerTree::parse(SIX_EDGE).unwrap());
    for i in 1..=6 {
        out.require(g.tree.edge_id(g.n.edge(i)) == format!("S{i}"), || {
            format!("Green index {i} is {}", g.tree.edge_id(g.n.edge(i)))
        });
    }
    let summands = build_tilting(&g.tree, &g.n);
    let shapes: Vec<Vec<(usize, i64)>> = summands
        .iter()
        .map(|s| {
            s.terms
                .iter()
                .map(|t| (t.projective, t.hom_degree))
                .collect()
        })
        .collect();
    let expected: Vec<Vec<(usize, i64)>> = vec![
        vec![(1, 0)],
        vec![(2, 0)],
        vec![(3, 0)],
        vec![(3, 0), (4, 1)],
        vec![(3, 0), (5, 1)],
        vec![(5, 1), (6, 2)],
    ];
    out.require(shapes == expected, || {
        format!("tilting summands {shapes:?}")
    });
    let degrees = [
        ((2, 1), 1),
        ((3, 2), 1),
        ((1, 3), 4),
        ((3, 5), 6),
        ((5, 4), 0),
        ((4, 3), 0),
        ((5, 6), 6),
        ((6, 5), 0),
    ];
    out.require(g.gq.quiver.arrows().len() == 8, || {
        format!("{} arrows", g.gq.quiver.arrows().len())
    });
    for ((s, t), d) in degrees {
        out.require(degree(&g, s, t) == Some(d), || {
            format!("S{s}->S{t} has degree {:?}, expected {d}", degree(&g, s, t))
        });
    }
}

fn relation_pairs(a: &A0Algebra, component: usize) -> Vec<((usize, usize), (usize, usize))> {
    let c = &a.components[component];
    let mut pairs: Vec<_> = a
        .zero
        .iter()
        .filter(|(x, _)| c.arrows.contains(x))
        .map(|&(x, y)| {
            let (p, q) = (&a.arrows[x], &a.arrows[y]);
            ((p.source, p.target), (q.source, q.target))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

fn criterion_2(out: &mut Outcome) {
    let g = graded(&BrauerTree::parse(ELEVEN_EDGE).unwrap());
    out.require(degree(&g, 9, 1) == Some(8), || {
        "S9->S1 is not of degree 8".into()
    });
    out.require(degree(&g, 1, 9) == Some(3), || {
        "S1->S9 is not of degree 3".into()
    });
    for (a, arrow) in g.gq.quiver.arrows().iter().enumerate() {
        if g.gq.quiver.cycle(arrow.cycle).exceptional {
            continue;
        }
        let expected = if arrow.source < arrow.target { 11 } else { 0 };
        out.require(g.gq.degree(a) == expected, || {
            format!(
                "S{}->S{} has degree {}",
                arrow.source,
                arrow.target,
                g.gq.degree(a)
            )
        });
    }
    let a = match extract_a0(&g.gq, &g.r) {
        Ok(a) => a,
        Err(err) => return out.require(false, || err.to_string()),
    };
    let sizes: Vec<usize> = a.components.iter().map(|c| c.size()).collect();
    out.require(sizes == [8, 3], || format!("component sizes {sizes:?}"));
    if sizes != [8, 3] {
        return;
    }
    // b2 b0, b5 b2, b4 b1 in the first component
    let first = relation_pairs(&a, 0);
    out.require(
        first == [((3, 2), (2, 1)), ((4, 3), (3, 2)), ((7, 6), (6, 2))],
        || format!("first component relations {first:?}"),
    );
    // a1 a2 in the second
    let second = relation_pairs(&a, 1);
    out.require(second == [((11, 10), (10, 9))], || {
        format!("second component relations {second:?}")
    });
    match recover_quiver(&a) {
        Ok(rec) => {
            out.require(rec.graded == g.gq && rec.relations == g.r, || {
                "recovered quiver differs".into()
            });
            // v1 -> v5, v2 -> v4, v3 -> v6, v4 -> v8 with
            // v1..v8 = S1, S2, S6, S3, S8, S7, S4, S5
            let mut added: Vec<_> = rec.added.iter().copied().filter(|&(v, _)| v <= 8).collect();
            added.sort_unstable();
            out.require(added == [(1, 8), (2, 3), (3, 5), (6, 7)], || {
                format!("added arrows {added:?}")
            });
        }
        Err(err) => out.require(false, || err.to_string()),
    }
}

fn criterion_3(out: &mut Outcome, trees: &[BrauerTree]) {
    for t in trees {
        let g = graded(t);
        let star = StarAlgebra::new(t.multiplicity(), t.edge_count());
        let summands = build_tilting(t, &g.n);
        match derive_graded_quiver(&g.gq.quiver, &star, &summands) {
            Ok(derived) => out.require(derived == g.gq, || format!("{}: degrees differ", label(t))),
            Err(err) => out.require(false, || format!("{}: {err}", label(t))),
        }
        match hom_dimension_table(&star, &summands) {
            Ok(table) => {
                let expected = expected_hom_table(&g.gq.quiver, t.multiplicity());
                out.require(table == expected, || {
                    format!("{}: hom totals differ", label(t))
                });
            }
            Err(err) => out.require(false, || format!("{}: {err}", label(t))),
        }
    }
}

fn criterion_4(out: &mut Outcome, trees: &[BrauerTree]) {
    for t in trees {
        let g = graded(t);
        let m = t.multiplicity();
        let closed = cartan_closed_form(&g.gq, m);
        match cartan_from_paths(&g.gq, &g.r) {
            Ok(paths) => out.require(paths == closed, || {
                format!("{}: path count differs", label(t))
            }),
            Err(err) => out.require(false, || format!("{}: {err}", label(t))),
        }
        let expected = expected_determinant(m, t.edge_count());
        match cartan_determinant(&closed, m) {
            Ok(det) => out.require(det == expected, || format!("{}: det {det}", label(t))),
            Err(err) => out.require(false, || format!("{}: {err}", label(t))),
        }
        match extract_a0(&g.gq, &g.r) {
            Ok(a) => {
                let c0 = a0_cartan(&a);
                out.require(c0 == constant_terms(&closed), || {
                    format!("{}: constant term differs from A0 Cartan", label(t))
                });
                out.require(c0.determinant() == Ok(1), || {
                    format!("{}: A0 Cartan determinant {:?}", label(t), c0.determinant())
                });
            }
            Err(err) => out.require(false, || format!("{}: {err}", label(t))),
        }
        let star = StarAlgebra::new(m, t.edge_count());
        match hom_dimension_table(&star, &build_tilting(t, &g.n)) {
            Ok(table) => out.require(table == at_one(&closed), || {
                format!("{}: C(1) differs", label(t))
            }),
            Err(err) => out.require(false, || format!("{}: {err}", label(t))),
        }
    }
}

fn criterion_5(out: &mut Outcome, trees: &[BrauerTree]) {
    for t in trees {
        let g = graded(t);
        let q = &g.gq.quiver;
        let me = i64::from(t.multiplicity()) * t.edge_count() as i64;
        out.require(g.gq.degrees.iter().all(|&d| d >= 0), || {
            format!("{}: negative degree", label(t))
        });
        for (c, cycle) in q.cycles().iter().enumerate() {
            let arrows: Vec<usize> = (0..q.arrows().len())
                .filter(|&a| q.arrow(a).cycle == c)
                .collect();
            let sum: i64 = arrows.iter().map(|&a| g.gq.degree(a)).sum();
            if cycle.exceptional {
                let power = i64::from(t.multiplicity()) * sum;
                out.require(power == me, || {
                    format!("{}: exceptional socle degree {power}", label(t))
                });
            } else {
                out.require(sum == me, || {
                    format!("{}: cycle {c} socle degree {sum}", label(t))
                });
                let positive = arrows.iter().filter(|&&a| g.gq.degree(a) > 0).count();
                out.require(positive == 1, || {
                    format!("{}: cycle {c} has {positive} positive arrows", label(t))
                });
            }
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            if g.gq.degree(a) == 0 {
                out.require(arrow.source > arrow.target, || {
                    format!(
                        "{}: degree-0 arrow {}->{}",
                        label(t),
                        arrow.source,
                        arrow.target
                    )
                });
            }
        }
        let reference = degrees_by_id(t, &g.n, &g.gq);
        for &start in t.rotation(t.exceptional()) {
            let other = green_number(t, start).unwrap();
            out.require(other.delta(other.index_of(start)) == 1, || {
                format!("{}: start edge not at distance 1", label(t))
            });
            let (og, _) = green_graded_quiver(t, &other);
            out.require(degrees_by_id(t, &other, &og) == reference, || {
                format!(
                    "{}: start {} changes the grading",
                    label(t),
                    t.edge_id(start)
                )
            });
        }
    }
}

fn criterion_6(out: &mut Outcome) {
    let gamma = graded(&BrauerTree::parse(GAMMA).unwrap());
    let delta = graded(&BrauerTree::parse(DELTA).unwrap());
    let n_by_id: BTreeMap<String, i64> = [("S1", 3), ("S2", 7), ("S3", 1), ("S4", 0)]
        .iter()
        .map(|&(k, v)| (k.to_string(), v))
        .collect();
    match shifts_by_edge(&gamma.tree, &gamma.n, &n_by_id) {
        Some(n) => {
            let shifted = apply_shifts(&gamma.gq, &n).unwrap();
            let got = degrees_by_id(&gamma.tree, &gamma.n, &shifted);
            let want = degrees_by_id(&delta.tree, &delta.n, &delta.gq);
            out.require(got == want, || {
                format!("shifted Γ grading {got:?} vs Δ grading {want:?}")
            });
        }
        None => out.require(false, || "shift vector does not cover every edge".into()),
    }

    let g = graded(&BrauerTree::parse(ELEVEN_EDGE).unwrap());
    let a = extract_a0(&g.gq, &g.r).unwrap();
    let n = positive_shifts(&a);
    out.require(n.0 == [1, 2, 3, 4, 5, 3, 4, 4, 1, 2, 3], || {
        format!("positive shifts {:?}", n.0)
    });
    let shifted = apply_shifts(&g.gq, &n).unwrap();
    out.require(shifted.degrees.iter().all(|&d| d > 0), || {
        format!("shifted degrees {:?}", shifted.degrees)
    });

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let e = rng.gen_range(1..=9);
        let m = rng.gen_range(1..=3);
        let t = greengrade_core::corpus::random_tree(rng.gen(), e, m);
        let g = graded(&t);
        let k: i64 = rng.gen_range(1..=4);
        let scaled = GradedQuiver {
            quiver: g.gq.quiver.clone(),
            degrees: g.gq.degrees.iter().map(|d| k * d).collect(),
        };
        let n = ShiftVector((0..e).map(|_| rng.gen_range(-20..=20)).collect());
        let target = apply_shifts(&rescale(&scaled, k).unwrap(), &n).unwrap();
        match morita_solve(&scaled, &target, true) {
            Some(sol) => out.require(
                sol.scale == rational(1, k) && sol.shifts == n.normalized(),
                || {
                    format!(
                        "{}: solved scale {} shifts {:?}",
                        label(&t),
                        sol.scale_string(),
                        sol.shifts.0
                    )
                },
            ),
            None => out.require(false, || format!("{}: no solution", label(&t))),
        }
    }
}

fn criterion_7(out: &mut Outcome) {
    for e in 1..=6 {
        let t = BrauerTree::line(1, e, 0);
        match trivial_extension_check(&t) {
            Ok(report) => out.require(report.passed(), || format!("line e={e}: {report:?}")),
            Err(err) => out.require(false, || format!("line e={e}: {err}")),
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, m: usize) -> HmElement<Rational> {
    let mut coeffs = Vec::with_capacity(m);
    let lead: i64 = rng.gen_range(1..=9) * if rng.gen() { 1 } else { -1 };
    coeffs.push(rational(lead, rng.gen_range(1..=4)));
    for _ in 1..m {
        coeffs.push(rational(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
    }
    HmElement::new(coeffs).unwrap()
}

fn criterion_8(out: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=6);
        let (a, b, c) = (
            random_element(&mut rng, m),
            random_element(&mut rng, m),
            random_element(&mut rng, m),
        );
        let id = HmElement::identity(m);
        let ok = hm_mul(&id, &a).unwrap() == a
            && hm_mul(&a, &id).unwrap() == a
            && {
                let inv = hm_inv(&a).unwrap();
                hm_mul(&inv, &a).unwrap() == id && hm_mul(&a, &inv).unwrap() == id
            }
            && hm_mul(&hm_mul(&a, &b).unwrap(), &c).unwrap()
                == hm_mul(&a, &hm_mul(&b, &c).unwrap()).unwrap();
        out.require(ok, || format!("group axioms fail at {a:?}, {b:?}, {c:?}"));
    }
    for m in 1..=6 {
        for _ in 0..100 {
            let (a, b) = (random_element(&mut rng, m), random_element(&mut rng, m));
            let product = hm_mul(&b, &a).unwrap().to_map();
            let composed = hm_oracle_compose(&a.to_map(), &b.to_map()).unwrap();
            out.require(product == composed, || {
                format!("oracle differs at {b:?} ∗ {a:?}")
            });
        }
    }

    let q = |v: [i64; 3]| HmElement::new(v.iter().map(|&x| rational(x, 1)).collect()).unwrap();
    let (a1, a2, a3, b1, b2, b3) = (2, 3, 5, 7, 11, 13);
    let expected = q([
        a1 * b1,
        a1 * b2 + a2 * b1 * b1,
        a1 * b3 + 2 * a2 * b1 * b2 + a3 * b1 * b1 * b1,
    ]);
    out.require(
        hm_mul(&q([b1, b2, b3]), &q([a1, a2, a3])).unwrap() == expected,
        || "m = 3 product formula".into(),
    );

    for _ in 0..200 {
        let m = rng.gen_range(1..=6);
        let (a, b) = (random_element(&mut rng, m), random_element(&mut rng, m));
        for order in [
            DecompositionOrder::UnipotentTorus,
            DecompositionOrder::TorusUnipotent,
        ] {
            let d = hm_decompose(&a, order).unwrap();
            out.require(
                d.torus.in_torus()
                    && d.unipotent.in_unipotent()
                    && hm_recombine(&d, order).unwrap() == a,
                || format!("{order:?} decomposition of {a:?}"),
            );
            let ab = hm_decompose(&hm_mul(&a, &b).unwrap(), order).unwrap().torus;
            let parts = hm_mul(
                &hm_decompose(&a, order).unwrap().torus,
                &hm_decompose(&b, order).unwrap().torus,
            )
            .unwrap();
            out.require(ab == parts, || {
                format!("torus part not multiplicative at {a:?}, {b:?}")
            });
        }
    }
}

fn criterion_9(out: &mut Outcome, trees: &[BrauerTree]) {
    for t in trees {
        let g = graded(t);
        let a = match extract_a0(&g.gq, &g.r) {
            Ok(a) => a,
            Err(err) => {
                out.require(false, || format!("{}: {err}", label(t)));
                continue;
            }
        };
        let c = a0_cartan(&a);
        let e = t.edge_count();
        let unit = (0..e).all(|i| *c.get(i, i) == 1);
        out.require(c.is_lower_triangular() && unit, || {
            format!("{}: A0 Cartan not unitriangular", label(t))
        });
        for i in 0..e {
            for j in 0..e {
                if i != j && *c.get(i, j) != 0 {
                    out.require(a.level(i + 1) > a.level(j + 1), || {
                        format!(
                            "{}: entry ({}, {}) against the level order",
                            label(t),
                            i + 1,
                            j + 1
                        )
                    });
                }
            }
        }
        let gl = a0_global_dimension(&a);
        out.require(gl <= a.max_level(), || {
            format!("{}: gl.dim {gl} > {}", label(t), a.max_level())
        });
        if t.is_line() {
            out.require(gl == a.max_level(), || {
                format!(
                    "{}: line has gl.dim {gl}, max level {}",
                    label(t),
                    a.max_level()
                )
            });
        }
    }
}

type Criterion<'a> = (&'static str, Box<dyn Fn(&mut Outcome) + 'a>);

fn main() -> ExitCode {
    let trees = corpus();
    let criteria: Vec<Criterion> = vec![
        (
            "6-edge walk, tilting summands and degrees",
            Box::new(criterion_1),
        ),
        (
            "11-edge degrees, A0 components and recovery",
            Box::new(criterion_2),
        ),
        (
            "homotopy oracle equals closed form",
            Box::new(|o| criterion_3(o, &trees)),
        ),
        ("Cartan identities", Box::new(|o| criterion_4(o, &trees))),
        ("grading structure", Box::new(|o| criterion_5(o, &trees))),
        ("shift calculus", Box::new(criterion_6)),
        ("trivial extension isomorphism", Box::new(criterion_7)),
        ("H_m group structure", Box::new(criterion_8)),
        (
            "quasi-hereditary checks",
            Box::new(|o| criterion_9(o, &trees)),
        ),
    ];
    println!("acceptance corpus: {} trees", trees.len());
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let mut outcome = Outcome::default();
        run(&mut outcome);
        if outcome.0.is_empty() {
            println!("criterion {}: PASS {name}", k + 1);
        } else {
            failed += 1;
            println!(
                "criterion {}: FAIL {name} ({} problems)",
                k + 1,
                outcome.0.len()
            );
            for problem in outcome.0.iter().take(5) {
                println!("    {problem}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
