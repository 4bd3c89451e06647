//! Changing a grading by shifting projective summands and by rescaling.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::a0::A0Algebra;
use crate::exactmath::{format_rational, rational, rational_to_i64, Rational};
use crate::green::GreenNumbering;
use crate::quiver::{arrow_id, GradedQuiver};
use crate::tree::BrauerTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegradingError {
    #[error("arrow {source_vertex}->{target_vertex} has degree {degree}, not divisible by {k}")]
    NotDivisible {
        source_vertex: usize,
        target_vertex: usize,
        degree: i64,
        k: i64,
    },
    #[error("rescaling factor must be positive, got {0}")]
    NonPositiveFactor(i64),
    #[error("shift vector has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("grading has no arrow `{0}`")]
    UnknownArrow(String),
    #[error("grading is missing arrow `{0}`")]
    MissingArrow(String),
}

/// `n[i - 1]` is the shift of the summand at vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftVector(pub Vec<i64>);

impl ShiftVector {
    pub fn zero(e: usize) -> Self {
        ShiftVector(vec![0; e])
    }

    pub fn get(&self, v: usize) -> i64 {
        self.0[v - 1]
    }

    /// Subtract a constant so that vertex 1 has shift 0.
    pub fn normalized(&self) -> Self {
        let base = self.0.first().copied().unwrap_or(0);
        ShiftVector(self.0.iter().map(|n| n - base).collect())
    }
}

/// `deg'(α) = deg(α) + n_source - n_target`.
pub fn apply_shifts(gq: &GradedQuiver, n: &ShiftVector) -> Result<GradedQuiver, RegradingError> {
    let e = gq.quiver.vertex_count();
    if n.0.len() != e {
        return Err(RegradingError::WrongLength {
            expected: e,
            found: n.0.len(),
        });
    }
    let degrees = gq
        .quiver
        .arrows()
        .iter()
        .zip(&gq.degrees)
        .map(|(a, d)| d + n.get(a.source) - n.get(a.target))
        .collect();
    Ok(GradedQuiver {
        quiver: gq.quiver.clone(),
        degrees,
    })
}

/// `n_i = 1 + level(i)`: makes every arrow degree positive.
pub fn positive_shifts(a0: &A0Algebra) -> ShiftVector {
    ShiftVector(a0.levels.iter().map(|&l| 1 + l as i64).collect())
}

pub fn rescale(gq: &GradedQuiver, k: i64) -> Result<GradedQuiver, RegradingError> {
    if k <= 0 {
        return Err(RegradingError::NonPositiveFactor(k));
    }
    let degrees = gq
        .quiver
        .arrows()
        .iter()
        .zip(&gq.degrees)
        .map(|(a, &d)| {
            if d % k == 0 {
                Ok(d / k)
            } else {
                Err(RegradingError::NotDivisible {
                    source_vertex: a.source,
                    target_vertex: a.target,
                    degree: d,
                    k,
                })
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(GradedQuiver {
        quiver: gq.quiver.clone(),
        degrees,
    })
}

/// `d2 = scale · d1` shifted by `shifts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaSolution {
    pub scale: Rational,
    /// Normalized so that vertex 1 has shift 0.
    pub shifts: ShiftVector,
}

impl MoritaSolution {
    pub fn scale_string(&self) -> String {
        format_rational(&self.scale)
    }
}

/// Find `(r, n)` with `d2(α) = r·d1(α) + n_source - n_target` on every
/// arrow, with integer `n`. Without `allow_rescale`, `r` must be 1. Cycle
/// sums are shift invariants, so `r` is fixed by one cycle with nonzero
/// `d1` sum (the exceptional cycle when there is one); `n` is propagated
/// along a spanning tree from vertex 1 and then checked on every arrow.
pub fn morita_solve(
    d1: &GradedQuiver,
    d2: &GradedQuiver,
    allow_rescale: bool,
) -> Option<MoritaSolution> {
    let q = &d1.quiver;
    if *q != d2.quiver {
        return None;
    }
    let scale = if allow_rescale {
        let mut order: Vec<usize> = q.exceptional_cycle().into_iter().collect();
        order.extend(0..q.cycles().len());
        match order.into_iter().find(|&c| d1.cycle_degree(c) != 0) {
            Some(c) => rational(d2.cycle_degree(c), d1.cycle_degree(c)),
            None => Rational::one(),
        }
    } else {
        Rational::one()
    };
    if scale <= Rational::zero() {
        return None;
    }
    // target[a] = d2 - r·d1 must equal n_source - n_target
    let target: Vec<Rational> = (0..q.arrows().len())
        .map(|a| rational(d2.degree(a), 1) - &scale * rational(d1.degree(a), 1))
        .collect();
    let e = q.vertex_count();
    let mut n: Vec<Option<Rational>> = vec![None; e];
    n[0] = Some(Rational::zero());
    let mut queue = VecDeque::from([1usize]);
    while let Some(v) = queue.pop_front() {
        let nv = n[v - 1].clone().expect("visited");
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (other, value) = if arrow.source == v {
                (arrow.target, &nv - &target[a])
            } else if arrow.target == v {
                (arrow.source, &nv + &target[a])
            } else {
                continue;
            };
            if n[other - 1].is_none() {
                n[other - 1] = Some(value);
                queue.push_back(other);
            }
        }
    }
    let n: Vec<Rational> = n.into_iter().collect::<Option<_>>()?;
    for (a, arrow) in q.arrows().iter().enumerate() {
        if &n[arrow.source - 1] - &n[arrow.target - 1] != target[a] {
            return None;
        }
    }
    let shifts = n.iter().map(rational_to_i64).collect::<Option<Vec<_>>>()?;
    Some(MoritaSolution {
        scale,
        shifts: ShiftVector(shifts),
    })
}

/// Read a grading keyed by arrow id onto the quiver of `gq`.
pub fn grading_from_ids(
    tree: &BrauerTree,
    numbering: &GreenNumbering,
    gq: &GradedQuiver,
    degrees: &BTreeMap<String, i64>,
) -> Result<GradedQuiver, RegradingError> {
    let q = &gq.quiver;
    let ids: Vec<String> = (0..q.arrows().len())
        .map(|a| arrow_id(tree, numbering, q, a))
        .collect();
    if let Some(unknown) = degrees.keys().find(|k| !ids.contains(k)) {
        return Err(RegradingError::UnknownArrow(unknown.clone()));
    }
    let degrees = ids
        .iter()
        .map(|id| {
            degrees
                .get(id)
                .copied()
                .ok_or_else(|| RegradingError::MissingArrow(id.clone()))
        })
        .collect::<Result<_, _>>()?;
    Ok(GradedQuiver {
        quiver: q.clone(),
        degrees,
    })
}

/// Shift vector given by edge id, in the Green order of `numbering`.
pub fn shifts_by_edge(
    tree: &BrauerTree,
    numbering: &GreenNumbering,
    by_edge: &BTreeMap<String, i64>,
) -> Option<ShiftVector> {
    (1..=numbering.edge_count())
        .map(|i| by_edge.get(tree.edge_id(numbering.edge(i))).copied())
        .collect::<Option<Vec<_>>>()
        .map(ShiftVector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a0::extract_a0;
    use crate::corpus;
    use crate::green::{default_start, green_number};
    use crate::quiver::{degrees_by_id, green_graded_quiver};
    use proptest::prelude::*;

    const SIX_EDGE: &str = include_str!("../fixtures/six_edge.json");
    const ELEVEN_EDGE: &str = include_str!("../fixtures/eleven_edge.json");
    const GAMMA: &str = include_str!("../fixtures/four_edge_gamma.json");
    const DELTA: &str = include_str!("../fixtures/four_edge_delta.json");

    fn graded(t: &BrauerTree) -> (GreenNumbering, GradedQuiver, A0Algebra) {
        let n = green_number(t, default_start(t)).unwrap();
        let (gq, r) = green_graded_quiver(t, &n);
        let a = extract_a0(&gq, &r).unwrap();
        (n, gq, a)
    }

    fn ids(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn exceptional_vertex_change_is_a_shift() {
        let gamma = BrauerTree::parse(GAMMA).unwrap();
        let delta = BrauerTree::parse(DELTA).unwrap();
        let (ng, gg, _) = graded(&gamma);
        let (nd, gd, _) = graded(&delta);
        let n = shifts_by_edge(
            &gamma,
            &ng,
            &ids(&[("S1", 3), ("S2", 7), ("S3", 1), ("S4", 0)]),
        )
        .unwrap();
        let shifted = apply_shifts(&gg, &n).unwrap();
        let expected = ids(&[
            ("S1->S4", 4),
            ("S4->S3", 0),
            ("S3->S1", 0),
            ("S1->S2", 0),
            ("S2->S1", 4),
        ]);
        assert_eq!(degrees_by_id(&gamma, &ng, &shifted), expected);
        assert_eq!(degrees_by_id(&delta, &nd, &gd), expected);
    }

    #[test]
    fn zero_shift_is_identity() {
        let (_, gq, _) = graded(&BrauerTree::parse(SIX_EDGE).unwrap());
        assert_eq!(apply_shifts(&gq, &ShiftVector::zero(6)).unwrap(), gq);
        assert_eq!(rescale(&gq, 1).unwrap(), gq);
    }

    #[test]
    fn exceptional_sum_is_shift_invariant() {
        let (_, gq, _) = graded(&BrauerTree::parse(SIX_EDGE).unwrap());
        let c = gq.quiver.exceptional_cycle().unwrap();
        let shifted = apply_shifts(&gq, &ShiftVector(vec![5, -2, 9, 0, 1, 3])).unwrap();
        assert_eq!(shifted.cycle_degree(c), 6);
    }

    #[test]
    fn eleven_edge_positive_shifts() {
        let (_, gq, a) = graded(&BrauerTree::parse(ELEVEN_EDGE).unwrap());
        let n = positive_shifts(&a);
        assert_eq!(n.0, vec![1, 2, 3, 4, 5, 3, 4, 4, 1, 2, 3]);
        let shifted = apply_shifts(&gq, &n).unwrap();
        assert_eq!(shifted.degrees.len(), 17);
        assert!(shifted.degrees.iter().all(|&d| d > 0));
        let solved = morita_solve(&gq, &shifted, false).unwrap();
        assert_eq!(solved.scale, Rational::one());
        let levels: Vec<i64> = a.levels.iter().map(|&l| l as i64).collect();
        assert_eq!(solved.shifts, ShiftVector(levels));
    }

    #[test]
    fn star_needs_no_shift() {
        let (_, gq, a) = graded(&BrauerTree::star(2, 4));
        let n = positive_shifts(&a);
        assert_eq!(n.0, vec![1; 4]);
        assert_eq!(apply_shifts(&gq, &n).unwrap(), gq);
    }

    #[test]
    fn rescaling() {
        let (_, gq, _) = graded(&BrauerTree::line(1, 4, 0));
        let tight = rescale(&gq, 4).unwrap();
        assert!(tight.degrees.iter().all(|&d| d == 0 || d == 1));
        let (_, gq, _) = graded(&BrauerTree::parse(SIX_EDGE).unwrap());
        match rescale(&gq, 2) {
            Err(RegradingError::NotDivisible { degree, k, .. }) => {
                assert_eq!((degree, k), (1, 2));
            }
            other => panic!("expected a divisibility error, got {other:?}"),
        }
        assert_eq!(rescale(&gq, 0), Err(RegradingError::NonPositiveFactor(0)));
    }

    #[test]
    fn morita_identity_and_failure() {
        let (_, gq, _) = graded(&BrauerTree::parse(SIX_EDGE).unwrap());
        let same = morita_solve(&gq, &gq, true).unwrap();
        assert_eq!(same.shifts, ShiftVector::zero(6));
        assert_eq!(same.scale_string(), "1");
        let mut broken = gq.clone();
        broken.degrees[0] += 1;
        assert_eq!(morita_solve(&gq, &broken, true), None);
        let doubled = GradedQuiver {
            quiver: gq.quiver.clone(),
            degrees: gq.degrees.iter().map(|d| 2 * d).collect(),
        };
        assert_eq!(morita_solve(&gq, &doubled, false), None);
        assert_eq!(
            morita_solve(&gq, &doubled, true).unwrap().scale,
            rational(2, 1)
        );
    }

    #[test]
    fn grading_json_round_trip() {
        let t = BrauerTree::parse(SIX_EDGE).unwrap();
        let (n, gq, _) = graded(&t);
        let by_id = degrees_by_id(&t, &n, &gq);
        assert_eq!(grading_from_ids(&t, &n, &gq, &by_id).unwrap(), gq);
        let mut extra = by_id.clone();
        extra.insert("S9->S1".into(), 3);
        assert_eq!(
            grading_from_ids(&t, &n, &gq, &extra),
            Err(RegradingError::UnknownArrow("S9->S1".into()))
        );
    }

    proptest! {
        #[test]
        fn shifts_preserve_cycle_sums(seed in any::<u64>(), e in 1usize..10, m in 1u32..4,
                                      shifts in proptest::collection::vec(-20i64..20, 10)) {
            let (_, gq, _) = graded(&corpus::random_tree(seed, e, m));
            let n = ShiftVector(shifts[..e].to_vec());
            let shifted = apply_shifts(&gq, &n).unwrap();
            for c in 0..gq.quiver.cycles().len() {
                prop_assert_eq!(shifted.cycle_degree(c), gq.cycle_degree(c));
            }
        }

        #[test]
        fn positive_after_level_shifts(seed in any::<u64>(), e in 1usize..12, m in 1u32..4) {
            let (_, gq, a) = graded(&corpus::random_tree(seed, e, m));
            let n = positive_shifts(&a);
            prop_assert!(n.0.iter().all(|&x| x >= 1));
            let shifted = apply_shifts(&gq, &n).unwrap();
            prop_assert!(shifted.degrees.iter().all(|&d| d >= 1));
        }

        #[test]
        fn morita_round_trip(seed in any::<u64>(), e in 1usize..10, m in 1u32..4,
                             k in 1i64..4, shifts in proptest::collection::vec(-20i64..20, 10)) {
            let (_, gq, _) = graded(&corpus::random_tree(seed, e, m));
            let scaled = GradedQuiver {
                quiver: gq.quiver.clone(),
                degrees: gq.degrees.iter().map(|d| k * d).collect(),
            };
            let n = ShiftVector(shifts[..e].to_vec());
            let target = apply_shifts(&rescale(&scaled, k).unwrap(), &n).unwrap();
            let solved = morita_solve(&scaled, &target, true).unwrap();
            prop_assert_eq!(solved.scale, rational(1, k));
            prop_assert_eq!(solved.shifts, n.normalized());
        }
    }
}
