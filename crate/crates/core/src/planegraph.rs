//! Simple graphs carrying a rotation system (cyclic neighbor order per
//! vertex). The rotation determines the faces, hence the embedding, purely
//! combinatorially; no coordinates are ever stored.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(VertexId, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("neighbor {1} repeated in rotation of {0}")]
    RepeatedNeighbor(VertexId, VertexId),
    #[error("asymmetric adjacency: {0} lists {1} but not vice versa")]
    Asymmetric(VertexId, VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertices {0} and {1} are already adjacent")]
    AlreadyAdjacent(VertexId, VertexId),
    #[error("vertex {0} does not occur on the given face")]
    NotOnFace(VertexId),
    #[error("cannot add edge from {0} to itself")]
    ChordLoop(VertexId),
    #[error("label count {0} does not match vertex count {1}")]
    LabelCount(usize, usize),
    #[error("graph json: {0}")]
    Json(String),
}

/// A directed edge side; the face walk advances dart by dart.
pub type Dart = (VertexId, VertexId);

/// A face as its directed boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices in walk order (origin of each dart).
    pub fn vertices(&self) -> Vec<VertexId> {
        self.darts.iter().map(|d| d.0).collect()
    }
}

/// Simple graph plus rotation system and free-form vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotations: Vec<Vec<VertexId>>,
    labels: Vec<String>,
}

impl PlaneGraph {
    /// Builds and validates a graph from per-vertex rotations. Each rotation
    /// is normalized to start at its smallest neighbor, which fixes a
    /// canonical representative of the cyclic order.
    pub fn new(rotations: Vec<Vec<VertexId>>, labels: Vec<String>) -> Result<Self, GraphError> {
        let n = rotations.len();
        if labels.len() != n {
            return Err(GraphError::LabelCount(labels.len(), n));
        }
        for (v, rot) in rotations.iter().enumerate() {
            for &u in rot {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange(u, n));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
            }
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(GraphError::RepeatedNeighbor(v, pair[0]));
                }
            }
        }
        for (v, rot) in rotations.iter().enumerate() {
            for &u in rot {
                if !rotations[u].contains(&v) {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        let mut graph = PlaneGraph { rotations, labels };
        graph.normalize();
        Ok(graph)
    }

    pub fn unlabeled(rotations: Vec<Vec<VertexId>>) -> Result<Self, GraphError> {
        let n = rotations.len();
        Self::new(rotations, vec![String::new(); n])
    }

    fn normalize(&mut self) {
        for rot in &mut self.rotations {
            if let Some(pos) = rot.iter().enumerate().min_by_key(|(_, &u)| u).map(|(i, _)| i) {
                rot.rotate_left(pos);
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotations[v]
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotations[v]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rotations[u].contains(&v)
    }

    /// Sorted neighbor set of `v`, for set-style comparisons.
    pub fn neighborhood_sorted(&self, v: VertexId) -> Vec<VertexId> {
        let mut nbrs = self.rotations[v].clone();
        nbrs.sort_unstable();
        nbrs
    }

    /// All edges as ordered pairs (u < v), sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, rot) in self.rotations.iter().enumerate() {
            for &u in rot {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.rotations[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    fn succ(&self, v: VertexId, u: VertexId) -> VertexId {
        let rot = &self.rotations[v];
        let pos = rot
            .iter()
            .position(|&x| x == u)
            .expect("successor query for a non-neighbor");
        rot[(pos + 1) % rot.len()]
    }

    /// Next dart of the face walk: after traversing u -> v, the walk leaves
    /// v along the rotation successor of u.
    pub fn next_dart(&self, dart: Dart) -> Dart {
        let (u, v) = dart;
        (v, self.succ(v, u))
    }

    /// Traces every face of the embedding. Each dart belongs to exactly one
    /// face; the sum of face lengths is 2|E|.
    pub fn trace_faces(&self) -> Vec<Face> {
        let mut seen: Vec<Vec<bool>> = self
            .rotations
            .iter()
            .map(|rot| vec![false; rot.len()])
            .collect();
        let mut faces = Vec::new();
        for v in 0..self.vertex_count() {
            for i in 0..self.rotations[v].len() {
                if seen[v][i] {
                    continue;
                }
                let start = (v, self.rotations[v][i]);
                let mut darts = Vec::new();
                let mut dart = start;
                loop {
                    let (a, b) = dart;
                    let pos = self.rotations[a].iter().position(|&x| x == b).unwrap();
                    debug_assert!(!seen[a][pos], "dart visited twice during face trace");
                    seen[a][pos] = true;
                    darts.push(dart);
                    dart = self.next_dart(dart);
                    if dart == start {
                        break;
                    }
                }
                faces.push(Face { darts });
            }
        }
        faces
    }

    /// Traces the single face containing the given dart.
    pub fn face_of_dart(&self, start: Dart) -> Face {
        let mut darts = Vec::new();
        let mut dart = start;
        loop {
            darts.push(dart);
            dart = self.next_dart(dart);
            if dart == start {
                break;
            }
        }
        Face { darts }
    }

    /// The face sitting in the corner (v, z, v'): the one that traverses
    /// v -> z and then z -> v', where v' is the rotation successor of v at z.
    pub fn face_at_corner(&self, z: VertexId, v: VertexId) -> Face {
        self.face_of_dart((v, z))
    }

    /// True iff the rotation system describes a genus-0 (planar) embedding,
    /// certified by Euler's relation V - E + F = 2.
    pub fn is_planar_embedding(&self) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let v = self.vertex_count() as i64;
        let e = self.edge_count() as i64;
        let f = self.trace_faces().len() as i64;
        Ok(v - e + f == 2)
    }

    /// True iff this is a plane triangulation: planar and every face
    /// (including the outer one) has length 3.
    pub fn is_triangulation(&self) -> Result<bool, GraphError> {
        if self.vertex_count() < 3 {
            return Ok(false);
        }
        if !self.is_planar_embedding()? {
            return Ok(false);
        }
        let ok = self.trace_faces().iter().all(|f| f.len() == 3);
        if ok {
            // Forced by Euler's relation once every face is a triangle.
            assert_eq!(
                self.edge_count(),
                3 * self.vertex_count() - 6,
                "triangulation must have 3V - 6 edges"
            );
        }
        Ok(ok)
    }

    pub fn common_neighbors(&self, a: VertexId, b: VertexId) -> Vec<VertexId> {
        assert_ne!(a, b, "common_neighbors needs two distinct vertices");
        let mut out: Vec<VertexId> = self.rotations[a]
            .iter()
            .copied()
            .filter(|u| self.rotations[b].contains(u))
            .collect();
        out.sort_unstable();
        out
    }

    /// Inserts the chord (a, b) so that it splits face `f` in two. The
    /// occurrences used are the dart at `idx_a` (leaving a) and the dart at
    /// `idx_b` (leaving b) of the face walk.
    pub fn add_edge_in_face_at(
        &mut self,
        f: &Face,
        idx_a: usize,
        idx_b: usize,
    ) -> Result<(), GraphError> {
        let (a, x) = f.darts[idx_a];
        let (b, y) = f.darts[idx_b];
        if a == b {
            return Err(GraphError::ChordLoop(a));
        }
        if self.has_edge(a, b) {
            return Err(GraphError::AlreadyAdjacent(a, b));
        }
        // New faces close up when b precedes x in the rotation of a and a
        // precedes y in the rotation of b.
        let pos_x = self.rotations[a].iter().position(|&u| u == x).unwrap();
        self.rotations[a].insert(pos_x, b);
        let pos_y = self.rotations[b].iter().position(|&u| u == y).unwrap();
        self.rotations[b].insert(pos_y, a);
        self.normalize();
        Ok(())
    }

    /// Convenience form resolving (a, b) to their first occurrences on `f`.
    pub fn add_edge_in_face(&mut self, f: &Face, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::ChordLoop(a));
        }
        let idx_a = f
            .darts
            .iter()
            .position(|d| d.0 == a)
            .ok_or(GraphError::NotOnFace(a))?;
        let idx_b = f
            .darts
            .iter()
            .position(|d| d.0 == b)
            .ok_or(GraphError::NotOnFace(b))?;
        self.add_edge_in_face_at(f, idx_a, idx_b)
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) {
        self.labels[v] = label.into();
    }

    /// Graphviz export: undirected, one edge per unordered pair.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            if self.labels[v].is_empty() {
                out.push_str(&format!("  {};\n", v));
            } else {
                out.push_str(&format!("  {} [label=\"{}\"];\n", v, self.labels[v]));
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {} -- {};\n", u, v));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.vertex_count(),
            rotations: self.rotations.clone(),
            labels: self.labels.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        if doc.rotations.len() != doc.n {
            return Err(GraphError::Json(format!(
                "rotations length {} does not match n = {}",
                doc.rotations.len(),
                doc.n
            )));
        }
        PlaneGraph::new(doc.rotations, doc.labels)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    rotations: Vec<Vec<VertexId>>,
    labels: Vec<String>,
}

/// Builder for assembling a graph adjacency first and rotations later.
/// Rotations default to insertion order, which is only meaningful once an
/// embedding pass reorders them.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    rotations: Vec<Vec<VertexId>>,
    labels: Vec<String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> VertexId {
        self.rotations.push(Vec::new());
        self.labels.push(label.into());
        self.rotations.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert_ne!(u, v, "no self-loops");
        assert!(
            !self.rotations[u].contains(&v),
            "edge ({u}, {v}) added twice"
        );
        self.rotations[u].push(v);
        self.rotations[v].push(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rotations[u].contains(&v)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotations[v]
    }

    pub fn build(self) -> Result<PlaneGraph, GraphError> {
        PlaneGraph::new(self.rotations, self.labels)
    }
}
