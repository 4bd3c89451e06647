//! Brauer trees: planar trees with a rotation system, an exceptional vertex
//! and a multiplicity.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("malformed tree document: {0}")]
    Malformed(String),
    #[error("tree has no edges")]
    Empty,
    #[error("multiplicity must be at least 1, got {0}")]
    InvalidMultiplicity(i64),
    #[error("unknown exceptional vertex `{0}`")]
    UnknownExceptional(String),
    #[error("edge `{edge}` has unknown endpoint `{vertex}`")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error("vertex `{vertex}` lists dangling edge id `{edge}`")]
    DanglingEdge { vertex: String, edge: String },
    #[error("edge `{edge}` is a loop at `{vertex}`")]
    SelfLoop { edge: String, vertex: String },
    #[error("rotation at `{vertex}` does not match the endpoints of edge `{edge}`")]
    RotationMismatch { vertex: String, edge: String },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has a cycle: {edges} edges on {vertices} vertices")]
    NotATree { edges: usize, vertices: usize },
}

/// On-disk JSON form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocument {
    pub multiplicity: i64,
    pub exceptional: String,
    pub vertices: BTreeMap<String, Vec<String>>,
    pub edges: BTreeMap<String, [String; 2]>,
}

/// A validated Brauer tree. Vertices and edges are addressed by dense
/// indices; ids are kept for input/output. Rotation lists are stored
/// counter-clockwise with an arbitrary starting element.
#[derive(Debug, Clone)]
pub struct BrauerTree {
    multiplicity: u32,
    exceptional: usize,
    vertex_ids: Vec<String>,
    edge_ids: Vec<String>,
    ends: Vec<[usize; 2]>,
    rotation: Vec<Vec<usize>>,
}

/// Distance of each edge from the exceptional vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDistance {
    /// `delta[edge]`, 1 for edges at the exceptional vertex.
    pub delta: Vec<u32>,
    /// Previous edge on the path to the exceptional vertex.
    pub predecessor: Vec<Option<usize>>,
    /// Endpoint closer to the exceptional vertex.
    pub near: Vec<usize>,
}

impl BrauerTree {
    pub fn from_document(doc: TreeDocument) -> Result<Self, TreeError> {
        if doc.multiplicity < 1 || doc.multiplicity > u32::MAX as i64 {
            return Err(TreeError::InvalidMultiplicity(doc.multiplicity));
        }
        if doc.edges.is_empty() {
            return Err(TreeError::Empty);
        }
        let vertex_ids: Vec<String> = doc.vertices.keys().cloned().collect();
        let vindex: HashMap<&str, usize> = vertex_ids
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let exceptional = *vindex
            .get(doc.exceptional.as_str())
            .ok_or_else(|| TreeError::UnknownExceptional(doc.exceptional.clone()))?;
        let edge_ids: Vec<String> = doc.edges.keys().cloned().collect();
        let eindex: HashMap<&str, usize> = edge_ids
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();

        let mut ends = Vec::with_capacity(edge_ids.len());
        for (id, [a, b]) in &doc.edges {
            let lookup = |v: &String| {
                vindex
                    .get(v.as_str())
                    .copied()
                    .ok_or_else(|| TreeError::UnknownEndpoint {
                        edge: id.clone(),
                        vertex: v.clone(),
                    })
            };
            let (a, b) = (lookup(a)?, lookup(b)?);
            if a == b {
                return Err(TreeError::SelfLoop {
                    edge: id.clone(),
                    vertex: vertex_ids[a].clone(),
                });
            }
            ends.push([a, b]);
        }

        let mut rotation = Vec::with_capacity(vertex_ids.len());
        for (vid, list) in &doc.vertices {
            let v = vindex[vid.as_str()];
            let mut rot = Vec::with_capacity(list.len());
            for eid in list {
                let e = *eindex
                    .get(eid.as_str())
                    .ok_or_else(|| TreeError::DanglingEdge {
                        vertex: vid.clone(),
                        edge: eid.clone(),
                    })?;
                if !ends[e].contains(&v) || rot.contains(&e) {
                    return Err(TreeError::RotationMismatch {
                        vertex: vid.clone(),
                        edge: eid.clone(),
                    });
                }
                rot.push(e);
            }
            rotation.push(rot);
        }
        for (e, [a, b]) in ends.iter().enumerate() {
            for &v in [a, b] {
                if !rotation[v].contains(&e) {
                    return Err(TreeError::RotationMismatch {
                        vertex: vertex_ids[v].clone(),
                        edge: edge_ids[e].clone(),
                    });
                }
            }
        }

        let tree = BrauerTree {
            multiplicity: doc.multiplicity as u32,
            exceptional,
            vertex_ids,
            edge_ids,
            ends,
            rotation,
        };
        tree.check_tree_shape()?;
        Ok(tree)
    }

    fn check_tree_shape(&self) -> Result<(), TreeError> {
        let n = self.vertex_ids.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.exceptional]);
        seen[self.exceptional] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.rotation[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TreeError::NotConnected);
        }
        if self.edge_ids.len() + 1 != n {
            return Err(TreeError::NotATree {
                edges: self.edge_ids.len(),
                vertices: n,
            });
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let doc: TreeDocument =
            serde_json::from_str(text).map_err(|e| TreeError::Malformed(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn to_document(&self) -> TreeDocument {
        TreeDocument {
            multiplicity: self.multiplicity as i64,
            exceptional: self.vertex_ids[self.exceptional].clone(),
            vertices: self
                .rotation
                .iter()
                .enumerate()
                .map(|(v, rot)| {
                    (
                        self.vertex_ids[v].clone(),
                        rot.iter().map(|&e| self.edge_ids[e].clone()).collect(),
                    )
                })
                .collect(),
            edges: self
                .ends
                .iter()
                .enumerate()
                .map(|(e, [a, b])| {
                    (
                        self.edge_ids[e].clone(),
                        [self.vertex_ids[*a].clone(), self.vertex_ids[*b].clone()],
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("tree document serializes")
    }

    /// Brauer star: `e` leaves around the exceptional centre `c`, edges
    /// `S1..Se` counter-clockwise.
    pub fn star(multiplicity: u32, e: usize) -> Self {
        assert!(multiplicity >= 1 && e >= 1, "star needs m, e >= 1");
        let mut vertices = BTreeMap::new();
        let mut edges = BTreeMap::new();
        vertices.insert("c".to_string(), (1..=e).map(|k| format!("S{k}")).collect());
        for k in 1..=e {
            vertices.insert(format!("l{k}"), vec![format!("S{k}")]);
            edges.insert(format!("S{k}"), ["c".to_string(), format!("l{k}")]);
        }
        Self::from_document(TreeDocument {
            multiplicity: multiplicity as i64,
            exceptional: "c".to_string(),
            vertices,
            edges,
        })
        .expect("star is a valid tree")
    }

    /// Brauer line `p0 - p1 - ... - pe` with edge `Sk` joining `p(k-1)` and
    /// `pk`; the exceptional vertex is `p{position}`.
    pub fn line(multiplicity: u32, e: usize, position: usize) -> Self {
        assert!(multiplicity >= 1 && e >= 1 && position <= e, "invalid line");
        let mut vertices = BTreeMap::new();
        let mut edges = BTreeMap::new();
        for k in 0..=e {
            let mut rot = Vec::new();
            if k > 0 {
                rot.push(format!("S{k}"));
            }
            if k < e {
                rot.push(format!("S{}", k + 1));
            }
            vertices.insert(format!("p{k}"), rot);
        }
        for k in 1..=e {
            edges.insert(format!("S{k}"), [format!("p{}", k - 1), format!("p{k}")]);
        }
        Self::from_document(TreeDocument {
            multiplicity: multiplicity as i64,
            exceptional: format!("p{position}"),
            vertices,
            edges,
        })
        .expect("line is a valid tree")
    }

    /// Same planar tree and multiplicity, different exceptional vertex.
    pub fn with_exceptional(&self, vertex: usize) -> Self {
        assert!(vertex < self.vertex_ids.len());
        BrauerTree {
            exceptional: vertex,
            ..self.clone()
        }
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn exceptional(&self) -> usize {
        self.exceptional
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edge_ids[e]
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_ids.iter().position(|e| e == id)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Counter-clockwise rotation at `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// Rotation at `v` read counter-clockwise starting from edge `e`.
    pub fn rotation_from(&self, v: usize, e: usize) -> Vec<usize> {
        let rot = &self.rotation[v];
        let k = rot.iter().position(|&x| x == e).expect("edge at vertex");
        rot[k..].iter().chain(&rot[..k]).copied().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// A line: every vertex has degree at most 2.
    pub fn is_line(&self) -> bool {
        self.rotation.iter().all(|r| r.len() <= 2)
    }

    pub fn distances(&self) -> EdgeDistance {
        let e = self.edge_count();
        let mut delta = vec![0; e];
        let mut predecessor = vec![None; e];
        let mut near = vec![usize::MAX; e];
        let mut queue = VecDeque::new();
        for &edge in &self.rotation[self.exceptional] {
            delta[edge] = 1;
            near[edge] = self.exceptional;
            queue.push_back(edge);
        }
        while let Some(edge) = queue.pop_front() {
            let far = self.other_end(edge, near[edge]);
            for &next in &self.rotation[far] {
                if next != edge {
                    delta[next] = delta[edge] + 1;
                    predecessor[next] = Some(edge);
                    near[next] = far;
                    queue.push_back(next);
                }
            }
        }
        EdgeDistance {
            delta,
            predecessor,
            near,
        }
    }

    /// Equality of the underlying planar trees, comparing rotation lists
    /// cyclically and everything else by id.
    pub fn same_embedding(&self, other: &BrauerTree) -> bool {
        let a = self.to_document();
        let b = other.to_document();
        if a.multiplicity != b.multiplicity
            || a.exceptional != b.exceptional
            || a.edges.len() != b.edges.len()
            || a.vertices.len() != b.vertices.len()
        {
            return false;
        }
        let same_ends = a.edges.iter().all(|(id, [x, y])| {
            b.edges
                .get(id)
                .is_some_and(|[u, v]| (x == u && y == v) || (x == v && y == u))
        });
        same_ends
            && a.vertices.iter().all(|(id, rot)| {
                b.vertices
                    .get(id)
                    .is_some_and(|other| cyclically_equal(rot, other))
            })
    }
}

fn cyclically_equal<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|shift| (0..a.len()).all(|k| a[k] == b[(k + shift) % b.len()]))
}
