//! Cross-checks of every construction on a single tree.

use serde::Serialize;

use crate::a0::{
    a0_cartan, a0_global_dimension, extract_a0, recover_quiver, trivial_extension_check,
};
use crate::cartan::{
    at_one, cartan_closed_form, cartan_determinant, cartan_from_paths, constant_terms,
};
use crate::exactmath::ExactMatrix;
use crate::green::{default_start, green_number, GreenNumbering};
use crate::quiver::{
    arrow_id, degrees_by_id, exceptional_degree_check, grading_violations, green_graded_quiver,
    GradedQuiver,
};
use crate::regrading::{apply_shifts, morita_solve, positive_shifts};
use crate::star::{
    build_tilting, derive_graded_quiver, expected_hom_table, hom_dimension_table, StarAlgebra,
};
use crate::tree::BrauerTree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// `PASS name` / `FAIL name: detail`, one line each.
    pub fn to_text(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                if c.pass {
                    format!("PASS {}\n", c.name)
                } else {
                    format!("FAIL {}: {}\n", c.name, c.detail)
                }
            })
            .collect()
    }
}

fn check(name: &'static str, failure: Option<String>) -> Check {
    Check {
        name,
        pass: failure.is_none(),
        detail: failure.unwrap_or_default(),
    }
}

fn first_entry_mismatch<T: Clone + PartialEq + std::fmt::Display>(
    n: &GreenNumbering,
    tree: &BrauerTree,
    left: &ExactMatrix<T>,
    right: &ExactMatrix<T>,
) -> Option<String> {
    for i in 0..left.rows() {
        for j in 0..left.cols() {
            if left.get(i, j) != right.get(i, j) {
                return Some(format!(
                    "entry ({}, {}): {} vs {}",
                    tree.edge_id(n.edge(i + 1)),
                    tree.edge_id(n.edge(j + 1)),
                    left.get(i, j),
                    right.get(i, j)
                ));
            }
        }
    }
    None
}

fn first_degree_mismatch(
    tree: &BrauerTree,
    n: &GreenNumbering,
    left: &GradedQuiver,
    right: &GradedQuiver,
) -> Option<String> {
    (0..left.degrees.len())
        .find(|&a| left.degree(a) != right.degree(a))
        .map(|a| {
            format!(
                "arrow {}: {} vs {}",
                arrow_id(tree, n, &left.quiver, a),
                left.degree(a),
                right.degree(a)
            )
        })
}

/// Run every check on `tree` with the default start edge.
pub fn verify_tree(tree: &BrauerTree) -> VerifyReport {
    let m = tree.multiplicity();
    let e = tree.edge_count();
    let n = green_number(tree, default_start(tree)).expect("default start is valid");
    let (gq, relations) = green_graded_quiver(tree, &n);
    let mut checks = Vec::new();

    let mut problems = grading_violations(&gq);
    problems.extend(
        exceptional_degree_check(&gq, &n.components())
            .into_iter()
            .filter(|r| !r.pass)
            .map(|r| {
                format!(
                    "exceptional arrow {} has degree {}, component size {}",
                    arrow_id(tree, &n, &gq.quiver, r.arrow),
                    r.degree,
                    r.component_size
                )
            }),
    );
    checks.push(check("grading structure", problems.into_iter().next()));

    let star = StarAlgebra::new(m, e);
    let summands = build_tilting(tree, &n);
    checks.push(check(
        "homotopy grading equals closed form",
        match derive_graded_quiver(&gq.quiver, &star, &summands) {
            Ok(derived) => first_degree_mismatch(tree, &n, &derived, &gq),
            Err(err) => Some(err.to_string()),
        },
    ));

    let closed = cartan_closed_form(&gq, m);
    let hom_table = hom_dimension_table(&star, &summands);
    checks.push(check(
        "hom dimensions match case table and C(1)",
        match hom_table {
            Ok(table) => first_entry_mismatch(&n, tree, &table, &expected_hom_table(&gq.quiver, m))
                .or_else(|| first_entry_mismatch(&n, tree, &table, &at_one(&closed))),
            Err(err) => Some(err.to_string()),
        },
    ));

    checks.push(check(
        "cartan paths equal closed form",
        match cartan_from_paths(&gq, &relations) {
            Ok(paths) => first_entry_mismatch(&n, tree, &paths, &closed),
            Err(err) => Some(err.to_string()),
        },
    ));
    checks.push(check(
        "cartan determinant",
        cartan_determinant(&closed, m)
            .err()
            .map(|err| err.to_string()),
    ));

    match extract_a0(&gq, &relations) {
        Ok(a0) => {
            let c0 = a0_cartan(&a0);
            let failure =
                first_entry_mismatch(&n, tree, &c0, &constant_terms(&closed)).or_else(|| {
                    let unit = (0..e).all(|i| *c0.get(i, i) == 1);
                    (!c0.is_lower_triangular() || !unit || c0.determinant() != Ok(1))
                        .then(|| "A0 Cartan matrix is not unitriangular".to_string())
                });
            checks.push(check("A0 cartan is constant term", failure));
            checks.push(check(
                "A0 recovers the quiver",
                match recover_quiver(&a0) {
                    Ok(rec) if rec.graded == gq && rec.relations == relations => None,
                    Ok(rec) if rec.graded.quiver != gq.quiver => {
                        Some("recovered quiver differs".to_string())
                    }
                    Ok(rec) if rec.graded != gq => {
                        first_degree_mismatch(tree, &n, &rec.graded, &gq)
                    }
                    Ok(_) => Some("recovered relations differ".to_string()),
                    Err(err) => Some(err.to_string()),
                },
            ));
            let gl = a0_global_dimension(&a0);
            checks.push(check(
                "A0 global dimension bound",
                (gl > a0.max_level())
                    .then(|| format!("gl.dim {gl} > max level {}", a0.max_level())),
            ));
            let shifts = positive_shifts(&a0);
            let shifted = apply_shifts(&gq, &shifts).expect("one shift per vertex");
            checks.push(check(
                "positive after level shifts",
                (0..shifted.degrees.len())
                    .find(|&a| shifted.degree(a) < 1)
                    .map(|a| {
                        format!(
                            "arrow {} has degree {}",
                            arrow_id(tree, &n, &gq.quiver, a),
                            shifted.degree(a)
                        )
                    })
                    .or_else(|| {
                        morita_solve(&gq, &shifted, false)
                            .is_none()
                            .then(|| "shifted grading not recovered".to_string())
                    }),
            ));
        }
        Err(err) => checks.push(check("A0 extraction", Some(err.to_string()))),
    }

    let reference = degrees_by_id(tree, &n, &gq);
    let mismatch = tree.rotation(tree.exceptional()).iter().find_map(|&start| {
        let other = green_number(tree, start).expect("start at the exceptional vertex");
        let (og, _) = green_graded_quiver(tree, &other);
        let by_id = degrees_by_id(tree, &other, &og);
        (by_id != reference).then(|| {
            format!(
                "start edge {} gives a different grading",
                tree.edge_id(start)
            )
        })
    });
    checks.push(check("start-edge independence", mismatch));

    if tree.is_line() && m == 1 && tree.degree(tree.exceptional()) == 1 {
        checks.push(check(
            "trivial extension isomorphism",
            match trivial_extension_check(tree) {
                Ok(report) if report.passed() => None,
                Ok(report) => Some(format!("{report:?}")),
                Err(err) => Some(err.to_string()),
            },
        ));
    }

    VerifyReport { checks }
}
