//! An explicit graded basis of a Brauer tree algebra and its multiplication.

use std::collections::BTreeMap;

use crate::quiver::{GradedQuiver, Quiver};

/// Basis elements of the algebra presented by a Brauer quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisElement {
    Idempotent(usize),
    /// `length` arrows along `cycle` from `start`, shorter than the socle word.
    Path {
        cycle: usize,
        start: usize,
        length: usize,
    },
    /// The socle element at a vertex; identifies all socle words there.
    Socle(usize),
}

/// The algebra with its basis listed in a fixed order.
#[derive(Debug, Clone)]
pub struct TreeAlgebra {
    graded: GradedQuiver,
    basis: Vec<BasisElement>,
    index: BTreeMap<BasisElement, usize>,
}

impl TreeAlgebra {
    pub fn new(graded: &GradedQuiver) -> Self {
        let q = &graded.quiver;
        let mut basis = Vec::new();
        for v in 1..=q.vertex_count() {
            basis.push(BasisElement::Idempotent(v));
            for c in q.cycles_at(v) {
                for length in 1..q.cycle(c).socle_length() {
                    basis.push(BasisElement::Path {
                        cycle: c,
                        start: v,
                        length,
                    });
                }
            }
            basis.push(BasisElement::Socle(v));
        }
        let index = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        TreeAlgebra {
            graded: graded.clone(),
            basis,
            index,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.graded.quiver
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn index_of(&self, b: BasisElement) -> Option<usize> {
        self.index.get(&b).copied()
    }

    /// Start vertex (left idempotent).
    pub fn source(&self, b: BasisElement) -> usize {
        match b {
            BasisElement::Idempotent(v) | BasisElement::Socle(v) => v,
            BasisElement::Path { start, .. } => start,
        }
    }

    /// End vertex (right idempotent).
    pub fn target(&self, b: BasisElement) -> usize {
        match b {
            BasisElement::Idempotent(v) | BasisElement::Socle(v) => v,
            BasisElement::Path {
                cycle,
                start,
                length,
            } => {
                let path = self.quiver().walk(cycle, start, length);
                self.quiver().arrow(*path.last().unwrap()).target
            }
        }
    }

    /// A word of arrows representing `b`; socles use their first cycle.
    pub fn word(&self, b: BasisElement) -> Vec<usize> {
        let q = self.quiver();
        match b {
            BasisElement::Idempotent(_) => Vec::new(),
            BasisElement::Path {
                cycle,
                start,
                length,
            } => q.walk(cycle, start, length),
            BasisElement::Socle(v) => match q.cycles_at(v).first() {
                Some(&c) => q.walk(c, v, q.cycle(c).socle_length()),
                None => Vec::new(),
            },
        }
    }

    pub fn degree(&self, b: BasisElement) -> i64 {
        self.graded.path_degree(&self.word(b))
    }

    /// The basis element for an arrow.
    pub fn arrow_element(&self, a: usize) -> BasisElement {
        let arrow = self.quiver().arrow(a);
        if self.quiver().cycle(arrow.cycle).socle_length() == 1 {
            BasisElement::Socle(arrow.source)
        } else {
            BasisElement::Path {
                cycle: arrow.cycle,
                start: arrow.source,
                length: 1,
            }
        }
    }

    /// Product `x y` (x first, then y); `None` when it vanishes.
    pub fn mul(&self, x: BasisElement, y: BasisElement) -> Option<BasisElement> {
        use BasisElement::*;
        if self.target(x) != self.source(y) {
            return None;
        }
        match (x, y) {
            (Idempotent(_), other) | (other, Idempotent(_)) => Some(other),
            (Socle(_), _) | (_, Socle(_)) => None,
            (
                Path {
                    cycle: c1,
                    start,
                    length: l1,
                },
                Path {
                    cycle: c2,
                    length: l2,
                    ..
                },
            ) => {
                if c1 != c2 {
                    return None;
                }
                let length = l1 + l2;
                let socle = self.quiver().cycle(c1).socle_length();
                match length.cmp(&socle) {
                    std::cmp::Ordering::Less => Some(Path {
                        cycle: c1,
                        start,
                        length,
                    }),
                    std::cmp::Ordering::Equal => Some(Socle(start)),
                    std::cmp::Ordering::Greater => None,
                }
            }
        }
    }

    /// Product of a word of arrows, or `None` if it vanishes.
    pub fn eval_word(&self, word: &[usize]) -> Option<BasisElement> {
        let (&first, rest) = word.split_first()?;
        rest.iter().try_fold(self.arrow_element(first), |acc, &a| {
            self.mul(acc, self.arrow_element(a))
        })
    }
}
