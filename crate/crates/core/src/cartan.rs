//! Graded Cartan matrices: closed forms, path enumeration and the
//! determinant identity.

use thiserror::Error;

use crate::exactmath::{laurent_det, ExactMatrix, LaurentPoly, MathError};
use crate::quiver::{GradedQuiver, RelationSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("determinant differs from 1 + q^e + ... + q^(me^2) by {residual}")]
    DeterminantMismatch {
        determinant: LaurentPoly,
        residual: LaurentPoly,
    },
    #[error("relations do not decide whether a path from vertex {vertex} vanishes")]
    UndecidedPath { vertex: usize },
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Entry `(i, j)` (0-based storage of Green indices `i + 1`, `j + 1`) is the
/// graded multiplicity of `S_i` in `P_j`: the sum of `q^deg` over nonzero
/// paths from `i` to `j`.
pub type GradedCartanMatrix = ExactMatrix<LaurentPoly>;

/// Closed-form graded Cartan matrix of a Green-walk grading.
pub fn cartan_closed_form(gq: &GradedQuiver, multiplicity: u32) -> GradedCartanMatrix {
    let q = &gq.quiver;
    let e = q.vertex_count() as i64;
    let m = multiplicity as i64;
    let me = m * e;
    ExactMatrix::from_fn(e as usize, e as usize, |r, c| {
        let (i, j) = (r as i64 + 1, c as i64 + 1);
        let (vi, vj) = (r + 1, c + 1);
        let exceptional = q.on_exceptional(vi) && q.on_exceptional(vj);
        if i == j {
            if exceptional {
                LaurentPoly::geometric(0, e, m as usize + 1)
            } else {
                LaurentPoly::from_terms([(0, 1), (me, 1)])
            }
        } else if !q.shares_cycle(vi, vj) {
            LaurentPoly::zero()
        } else if exceptional {
            if i > j {
                LaurentPoly::geometric(i - j, e, m as usize)
            } else {
                LaurentPoly::geometric(e - (j - i), e, m as usize)
            }
        } else if i > j {
            LaurentPoly::one()
        } else {
            LaurentPoly::q_pow(me)
        }
    })
}

/// Graded Cartan matrix by enumerating the nonzero paths of the algebra
/// presented by `gq` and `relations`.
pub fn cartan_from_paths(
    gq: &GradedQuiver,
    relations: &RelationSet,
) -> Result<GradedCartanMatrix, CartanError> {
    let q = &gq.quiver;
    let e = q.vertex_count();
    let mut c = ExactMatrix::zeros(e, e);
    let bump = |c: &mut GradedCartanMatrix, i: usize, j: usize, deg: i64| {
        let mut entry = c.get(i - 1, j - 1).clone();
        entry.add_term(deg, 1);
        c.set(i - 1, j - 1, entry);
    };
    for start in 1..=e {
        bump(&mut c, start, start, 0);
        let equality = relations.equalities.iter().find(|r| r.vertex == start);
        // depth-first over paths from `start`
        let mut stack: Vec<Vec<usize>> = q
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.source == start)
            .map(|(k, _)| vec![k])
            .collect();
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            let cycle = q.arrow(last).cycle;
            let socle = q.cycle(cycle).socle_length();
            let target = q.arrow(last).target;
            if path.len() < socle {
                bump(&mut c, start, target, gq.path_degree(&path));
            } else if path.len() == socle {
                // identified socle words count once, from the first cycle
                let counted = equality.is_none_or(|r| r.first.cycle == cycle);
                if counted {
                    bump(&mut c, start, target, gq.path_degree(&path));
                }
            } else {
                // one arrow past the socle word
                let next = *path.last().unwrap();
                let vanishes = if relations
                    .truncations
                    .iter()
                    .any(|t| t.vertex == start && t.word.cycle == cycle)
                {
                    true
                } else if let Some(r) = equality {
                    let other = if r.first.cycle == cycle {
                        &r.second
                    } else {
                        &r.first
                    };
                    let other_len = q.cycle(other.cycle).len() * other.power as usize;
                    let other_last = *q.walk(other.cycle, start, other_len).last().unwrap();
                    relations.is_zero_pair(other_last, next)
                } else {
                    false
                };
                if !vanishes {
                    return Err(CartanError::UndecidedPath { vertex: start });
                }
                continue;
            }
            for (b, arrow) in q.arrows().iter().enumerate() {
                if arrow.source == target && !relations.is_zero_pair(last, b) {
                    let mut longer = path.clone();
                    longer.push(b);
                    stack.push(longer);
                }
            }
        }
    }
    Ok(c)
}

/// `1 + q^e + q^(2e) + ... + q^(me·e)`
pub fn expected_determinant(multiplicity: u32, e: usize) -> LaurentPoly {
    let e = e as i64;
    LaurentPoly::geometric(0, e, (multiplicity as i64 * e + 1) as usize)
}

/// Exact determinant, checked against the closed form.
pub fn cartan_determinant(
    c: &GradedCartanMatrix,
    multiplicity: u32,
) -> Result<LaurentPoly, CartanError> {
    let det = laurent_det(c)?;
    let expected = expected_determinant(multiplicity, c.rows());
    if det == expected {
        Ok(det)
    } else {
        Err(CartanError::DeterminantMismatch {
            residual: &det - &expected,
            determinant: det,
        })
    }
}

/// Coefficient of `q^0` in every entry.
pub fn constant_terms(c: &GradedCartanMatrix) -> ExactMatrix<i64> {
    c.map(|p| p.coeff(0))
}

/// Evaluation at `q = 1`: the ungraded Cartan matrix.
pub fn at_one(c: &GradedCartanMatrix) -> ExactMatrix<i64> {
    c.map(LaurentPoly::eval_at_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::green::{default_start, green_number};
    use crate::quiver::green_graded_quiver;
    use crate::tree::BrauerTree;
    use proptest::prelude::*;

    const SIX_EDGE: &str = include_str!("../fixtures/six_edge.json");

    fn matrices(t: &BrauerTree) -> (GradedCartanMatrix, GradedCartanMatrix) {
        let n = green_number(t, default_start(t)).unwrap();
        let (gq, r) = green_graded_quiver(t, &n);
        (
            cartan_closed_form(&gq, t.multiplicity()),
            cartan_from_paths(&gq, &r).unwrap(),
        )
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn brauer_line_entries() {
        let (m, e) = (2u32, 4usize);
        let (closed, paths) = matrices(&BrauerTree::line(m, e, 0));
        assert_eq!(closed, paths);
        assert_eq!(*closed.get(0, 0), LaurentPoly::geometric(0, 4, 3));
        for i in 0..e - 1 {
            assert_eq!(*closed.get(i, i + 1), LaurentPoly::q_pow(8));
            assert_eq!(*closed.get(i + 1, i), LaurentPoly::one());
        }
        assert!(closed.get(0, 2).is_zero());
    }

    #[test]
    fn two_edge_star() {
        let (closed, paths) = matrices(&BrauerTree::star(1, 2));
        let expected = ExactMatrix::from_rows(vec![
            vec![lp(&[(0, 1), (2, 1)]), lp(&[(1, 1)])],
            vec![lp(&[(1, 1)]), lp(&[(0, 1), (2, 1)])],
        ])
        .unwrap();
        assert_eq!(closed, expected);
        assert_eq!(paths, expected);
    }

    #[test]
    fn six_edge_entries() {
        let (closed, paths) = matrices(&BrauerTree::parse(SIX_EDGE).unwrap());
        assert_eq!(closed, paths);
        assert_eq!(*paths.get(4, 3), LaurentPoly::one());
        assert_eq!(*paths.get(3, 4), LaurentPoly::q_pow(6));
        assert_eq!(*paths.get(0, 2), LaurentPoly::q_pow(4));
        assert!(paths.get(0, 5).is_zero());
    }

    #[test]
    fn determinants() {
        let (c, _) = matrices(&BrauerTree::line(1, 2, 0));
        assert_eq!(
            cartan_determinant(&c, 1).unwrap(),
            lp(&[(0, 1), (2, 1), (4, 1)])
        );
        let (c, _) = matrices(&BrauerTree::star(1, 3));
        assert_eq!(
            cartan_determinant(&c, 1).unwrap(),
            lp(&[(0, 1), (3, 1), (6, 1), (9, 1)])
        );
        let (c, _) = matrices(&BrauerTree::line(2, 3, 1));
        assert_eq!(
            cartan_determinant(&c, 2).unwrap(),
            LaurentPoly::geometric(0, 3, 7)
        );
    }

    #[test]
    fn determinant_mismatch_reports_residual() {
        let (c, _) = matrices(&BrauerTree::star(1, 2));
        match cartan_determinant(&c, 2) {
            Err(CartanError::DeterminantMismatch { residual, .. }) => {
                assert_eq!(residual, lp(&[(6, -1), (8, -1)]));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn paths_match_closed_form(seed in any::<u64>(), e in 1usize..10, m in 1u32..4) {
            let t = corpus::random_tree(seed, e, m);
            let (closed, paths) = matrices(&t);
            prop_assert_eq!(&closed, &paths);
            prop_assert!(cartan_determinant(&closed, m).is_ok());
            let me = (m as usize * e) as i64;
            for row in closed.to_rows() {
                for entry in row {
                    prop_assert!(entry.terms().all(|(x, c)| c > 0 && (0..=me).contains(&x)));
                }
            }
        }
    }
}
