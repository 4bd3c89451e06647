//! Green's walk: numbering the edges of a Brauer tree.

use thiserror::Error;

use crate::tree::BrauerTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreenError {
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("start edge `{0}` is not adjacent to the exceptional vertex")]
    StartNotAdjacent(String),
}

/// Edge numbering `1..=e` produced by Green's walk. Green indices are
/// 1-based everywhere in the public API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenNumbering {
    /// `edge_at[i - 1]` is the tree edge with index `i`.
    edge_at: Vec<usize>,
    /// `index_of[edge]` is the Green index of a tree edge.
    index_of: Vec<usize>,
    delta: Vec<u32>,
    predecessor: Vec<Option<usize>>,
}

/// The subtree hanging off one edge at the exceptional vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Green index of the edge at the exceptional vertex.
    pub root: usize,
    /// Green indices in the component, ascending.
    pub members: Vec<usize>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The δ=1 edge whose id sorts first.
pub fn default_start(tree: &BrauerTree) -> usize {
    tree.rotation(tree.exceptional())
        .iter()
        .copied()
        .min_by(|&a, &b| tree.edge_id(a).cmp(tree.edge_id(b)))
        .expect("exceptional vertex has an edge")
}

/// Resolve an optional start edge id to a tree edge.
pub fn resolve_start(tree: &BrauerTree, start: Option<&str>) -> Result<usize, GreenError> {
    match start {
        None => Ok(default_start(tree)),
        Some(id) => {
            let edge = tree
                .edge_index(id)
                .ok_or_else(|| GreenError::UnknownEdge(id.to_string()))?;
            if tree.ends(edge).contains(&tree.exceptional()) {
                Ok(edge)
            } else {
                Err(GreenError::StartNotAdjacent(id.to_string()))
            }
        }
    }
}

/// Number edges depth-first: on arriving at a vertex through an edge, visit
/// the remaining edges counter-clockwise after it. At the exceptional
/// vertex, start from `start` and go counter-clockwise.
pub fn green_number(tree: &BrauerTree, start: usize) -> Result<GreenNumbering, GreenError> {
    let ex = tree.exceptional();
    if !tree.ends(start).contains(&ex) {
        return Err(GreenError::StartNotAdjacent(
            tree.edge_id(start).to_string(),
        ));
    }
    let e = tree.edge_count();
    let mut edge_at = Vec::with_capacity(e);
    let mut index_of = vec![0; e];
    let mut delta = Vec::with_capacity(e);
    let mut predecessor = Vec::with_capacity(e);

    // (vertex, edges still to visit, depth, index of the arrival edge)
    let mut stack: Vec<(usize, Vec<usize>, u32, Option<usize>)> = Vec::new();
    stack.push((ex, tree.rotation_from(ex, start), 1, None));
    while let Some((vertex, pending, depth, arrival)) = stack.last_mut() {
        if pending.is_empty() {
            stack.pop();
            continue;
        }
        let edge = pending.remove(0);
        let (vertex, depth, arrival) = (*vertex, *depth, *arrival);
        edge_at.push(edge);
        let index = edge_at.len();
        index_of[edge] = index;
        delta.push(depth);
        predecessor.push(arrival);
        let far = tree.other_end(edge, vertex);
        let mut onward = tree.rotation_from(far, edge);
        onward.remove(0);
        stack.push((far, onward, depth + 1, Some(index)));
    }
    debug_assert_eq!(edge_at.len(), e);
    Ok(GreenNumbering {
        edge_at,
        index_of,
        delta,
        predecessor,
    })
}

impl GreenNumbering {
    pub fn edge_count(&self) -> usize {
        self.edge_at.len()
    }

    /// Tree edge carrying Green index `i`.
    pub fn edge(&self, i: usize) -> usize {
        self.edge_at[i - 1]
    }

    pub fn index_of(&self, edge: usize) -> usize {
        self.index_of[edge]
    }

    pub fn delta(&self, i: usize) -> u32 {
        self.delta[i - 1]
    }

    pub fn predecessor(&self, i: usize) -> Option<usize> {
        self.predecessor[i - 1]
    }

    /// The start edge (index 1).
    pub fn start(&self) -> usize {
        self.edge_at[0]
    }

    /// Index of the δ=1 ancestor of `i`.
    pub fn root_of(&self, mut i: usize) -> usize {
        while let Some(p) = self.predecessor(i) {
            i = p;
        }
        i
    }

    /// Green indices of the δ=1 edges, ascending (counter-clockwise order).
    pub fn roots(&self) -> Vec<usize> {
        (1..=self.edge_count())
            .filter(|&i| self.delta(i) == 1)
            .collect()
    }

    pub fn components(&self) -> Vec<Component> {
        self.roots()
            .into_iter()
            .map(|root| Component {
                root,
                members: (1..=self.edge_count())
                    .filter(|&i| self.root_of(i) == root)
                    .collect(),
            })
            .collect()
    }

    /// Tree vertex shared by edges `i` and `j` (Green indices), if any.
    pub fn shared_vertex(&self, tree: &BrauerTree, i: usize, j: usize) -> Option<usize> {
        let a = tree.ends(self.edge(i));
        let b = tree.ends(self.edge(j));
        a.iter().copied().find(|v| b.contains(v))
    }
}
