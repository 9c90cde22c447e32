//! Stable nodal curves as genus-weighted multigraphs.
//!
//! A vertex is an irreducible component with its geometric genus; an edge is
//! a node of the curve (loops encode self-nodes of irreducible components).
//! Blow-ups subdivide chosen edges by exceptional genus-0 vertices, and the
//! graph `Sigma_X` records how the non-exceptional part reassembles.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

/// One irreducible component of the curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
}

/// Genus-weighted multigraph of a connected nodal curve.
///
/// Edge ids are assigned by insertion order; the node `p_{i+1}` of the curve
/// is the edge with id `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
struct CurveFile {
    vertices: Vec<Vertex>,
    edges: Vec<[String; 2]>,
}

impl DualGraph {
    /// Build a graph from vertices and edges given by vertex ids.
    pub fn new(vertices: Vec<Vertex>, edges: &[(&str, &str)]) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        let mut resolved = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let ui = *index.get(*u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
            let vi = *index.get(*v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
            resolved.push([ui, vi]);
        }
        let g = DualGraph { vertices, edges: resolved };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Two smooth components of genera `g1`, `g2` joined by `delta` nodes.
    pub fn two_component(g1: u32, g2: u32, delta: usize) -> Result<Self> {
        let vertices = vec![
            Vertex { id: "C1".into(), genus: g1 },
            Vertex { id: "C2".into(), genus: g2 },
        ];
        let edges: Vec<(&str, &str)> = std::iter::repeat(("C1", "C2")).take(delta).collect();
        DualGraph::new(vertices, &edges)
    }

    /// Parse the curve spec JSON format:
    /// `{"vertices":[{"id":"C1","genus":1},...],"edges":[["C1","C2"],...]}`.
    ///
    /// Edge order in the file defines the node indices.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CurveFile =
            serde_json::from_str(text).map_err(|e| Error::CurveFile(e.to_string()))?;
        let edges: Vec<(&str, &str)> =
            file.edges.iter().map(|[u, v]| (u.as_str(), v.as_str())).collect();
        DualGraph::new(file.vertices, &edges)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn is_connected(&self) -> bool {
        components(self.vertices.len(), self.edges.iter().copied()).len() == 1
    }

    /// Valence of a vertex; a loop contributes 2.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|e| e.iter().filter(|&&x| x == v).count()).sum()
    }

    /// Arithmetic genus: sum of vertex genera plus the first Betti number.
    pub fn genus(&self) -> u32 {
        let b1 = self.edges.len() as i64 - self.vertices.len() as i64 + 1;
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + b1 as u32
    }

    /// Stability: every genus-0 vertex has valence at least 3.
    pub fn is_stable(&self) -> bool {
        self.vertices
            .iter()
            .enumerate()
            .all(|(i, v)| v.genus > 0 || self.valence(i) >= 3)
    }

    /// Multidegree of the dualizing sheaf: `2 g_v - 2 + valence(v)`.
    ///
    /// The entries sum to `2 g - 2`.
    pub fn canonical_multidegree(&self) -> Vec<i64> {
        (0..self.vertices.len())
            .map(|v| 2 * self.vertices[v].genus as i64 - 2 + self.valence(v) as i64)
            .collect()
    }

    /// Blow up the nodes in `delta` (a set of edge ids).
    pub fn blow_up(&self, delta: &BTreeSet<usize>) -> Result<BlowUpGraph> {
        if let Some(&bad) = delta.iter().find(|&&e| e >= self.edges.len()) {
            return Err(Error::UnknownEdge(bad));
        }
        Ok(BlowUpGraph { base: self.clone(), blown: delta.clone() })
    }

    /// True when the graph is two loop-free vertices joined by `delta` edges.
    pub fn is_two_component(&self) -> bool {
        self.vertices.len() == 2 && self.edges.iter().all(|e| e[0] != e[1])
    }
}

/// Connected components of a multigraph on `n` vertices.
fn components(n: usize, edges: impl Iterator<Item = [usize; 2]>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for [u, v] in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

/// Blow-up of a dual graph at a subset of its nodes.
///
/// Each blown edge `(u, v)` is subdivided by a new exceptional genus-0
/// vertex `E` of valence exactly 2; removing the exceptional vertices and
/// re-fusing recovers the base graph.
#[derive(Clone, Debug)]
pub struct BlowUpGraph {
    base: DualGraph,
    blown: BTreeSet<usize>,
}

impl BlowUpGraph {
    pub fn base(&self) -> &DualGraph {
        &self.base
    }

    pub fn blown(&self) -> &BTreeSet<usize> {
        &self.blown
    }

    pub fn exceptional_count(&self) -> usize {
        self.blown.len()
    }

    /// Genus of the total blown-up graph, computed on the subdivided
    /// multigraph. Blowing up preserves arithmetic genus.
    pub fn total_genus(&self) -> u32 {
        let v = self.base.vertices.len() + self.blown.len();
        let e = self.base.edges.len() + self.blown.len();
        let b1 = e as i64 - v as i64 + 1;
        self.base.vertices.iter().map(|x| x.genus).sum::<u32>() + b1 as u32
    }

    /// Connected components of the non-exceptional part `X~`: base vertices
    /// joined by the non-blown edges only.
    pub fn tilde_components(&self) -> Vec<Vec<usize>> {
        let kept = self
            .base
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.blown.contains(i))
            .map(|(_, e)| *e);
        components(self.base.vertices.len(), kept)
    }

    /// Number of `X~`-components.
    pub fn tilde_component_count(&self) -> usize {
        self.tilde_components().len()
    }

    /// First Betti number of one `X~`-component given as a vertex list.
    pub fn tilde_component_b1(&self, comp: &[usize]) -> u32 {
        let in_comp: BTreeSet<usize> = comp.iter().copied().collect();
        let e = self
            .base
            .edges
            .iter()
            .enumerate()
            .filter(|(i, edge)| !self.blown.contains(i) && in_comp.contains(&edge[0]))
            .count();
        (e as i64 - comp.len() as i64 + 1) as u32
    }

    /// The graph with the `X~`-components as vertices and the exceptional
    /// components as edges.
    pub fn sigma_graph(&self) -> SigmaGraph {
        let comps = self.tilde_components();
        let mut which = vec![0usize; self.base.vertices.len()];
        for (ci, comp) in comps.iter().enumerate() {
            for &v in comp {
                which[v] = ci;
            }
        }
        let edges: Vec<[usize; 2]> = self
            .blown
            .iter()
            .map(|&e| {
                let [u, v] = self.base.edges[e];
                [which[u], which[v]]
            })
            .collect();
        SigmaGraph { vertex_count: comps.len(), edges }
    }
}

/// The graph `Sigma_X`: vertices are components of `X~`, edges are the
/// exceptional components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaGraph {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
}

impl SigmaGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn component_count(&self) -> usize {
        components(self.vertex_count, self.edges.iter().copied()).len()
    }

    /// `b1 = #edges - #vertices + #components`.
    pub fn b1(&self) -> u32 {
        (self.edges.len() as i64 - self.vertex_count as i64 + self.component_count() as i64)
            as u32
    }
}
