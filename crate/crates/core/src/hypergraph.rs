//! The hypergraph model.
//!
//! Vertices are the dense indices `0..n`. Edges keep their input order and
//! are stored as strictly increasing vertex lists, so edge indices are stable
//! across every derived report.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::gf2::BitMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("edge {edge} contains vertex {vertex} more than once")]
    RepeatedVertex { edge: usize, vertex: usize },
    #[error("vertex {vertex} in edge {edge} is out of range for {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {second} duplicates edge {first}")]
    DuplicateEdge { first: usize, second: usize },
    #[error("vertex {vertex} lies in no edge")]
    IsolatedVertex { vertex: usize },
    #[error("edge index {edge} out of range for {m} edges")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("selection of edges is empty")]
    EmptyEdgeSelection,
    #[error("selection of vertices is empty")]
    EmptyVertexSelection,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Result of [`Hypergraph::dual`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualResult {
    pub dual: Hypergraph,
    /// Some two vertices had identical stars; only the first copy was kept.
    pub had_duplicate_stars: bool,
}

/// An edge-induced sub-hypergraph with its relabelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeInduced {
    pub graph: Hypergraph,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[new] = old`.
    pub edge_map: Vec<usize>,
}

/// One step of a walk: the edge used and the vertex reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkStep {
    pub edge: usize,
    pub vertex: usize,
}

impl Hypergraph {
    /// Validates and builds a hypergraph with no isolated vertices.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        Self::build(n, edges, false)
    }

    /// Validates and builds a hypergraph; `allow_isolated` admits vertices in
    /// no edge (used for intermediate objects such as `G - e`).
    pub fn build(
        n: usize,
        edges: Vec<Vec<usize>>,
        allow_isolated: bool,
    ) -> Result<Self, HypergraphError> {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(edges.len());
        let mut covered = vec![false; n];
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge { edge: i });
            }
            e.sort_unstable();
            if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex {
                    edge: i,
                    vertex: w[0],
                });
            }
            if let Some(&v) = e.last().filter(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge: i, vertex: v, n });
            }
            for &v in &e {
                covered[v] = true;
            }
            if let Some(&first) = seen.get(&e) {
                return Err(HypergraphError::DuplicateEdge { first, second: i });
            }
            seen.insert(e.clone(), i);
            sorted_edges.push(e);
        }
        if !allow_isolated {
            if let Some(vertex) = covered.iter().position(|&c| !c) {
                return Err(HypergraphError::IsolatedVertex { vertex });
            }
        }
        Ok(Self {
            n,
            edges: sorted_edges,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn is_square(&self) -> bool {
        self.n == self.m()
    }

    /// Edge-vertex incidence matrix `B_G`: row `e` is the indicator of edge `e`.
    pub fn incidence(&self) -> BitMatrix {
        BitMatrix::from_row_supports(self.n, &self.edges)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// The common edge size, if every edge has the same size.
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == k).then_some(k)
    }

    /// The common vertex degree, if every vertex has the same degree.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degrees();
        let first = *d.first()?;
        d.iter().all(|&x| x == first).then_some(first)
    }

    pub fn all_edges_even(&self) -> bool {
        self.edges.iter().all(|e| e.len() % 2 == 0)
    }

    pub fn all_degrees_even(&self) -> bool {
        self.degrees().iter().all(|d| d % 2 == 0)
    }

    /// Edge indices containing each vertex.
    pub fn stars(&self) -> Vec<Vec<usize>> {
        let mut stars = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                stars[v].push(i);
            }
        }
        stars
    }

    /// The dual hypergraph: vertices are the edges of `self`, edges are the
    /// vertex stars. Coinciding stars are kept once and flagged.
    pub fn dual(&self) -> DualResult {
        let mut seen = HashSet::new();
        let mut had_duplicate_stars = false;
        let mut dual_edges = Vec::with_capacity(self.n);
        for star in self.stars() {
            if star.is_empty() {
                continue;
            }
            if seen.insert(star.clone()) {
                dual_edges.push(star);
            } else {
                had_duplicate_stars = true;
            }
        }
        let dual = Hypergraph::build(self.m(), dual_edges, true)
            .expect("stars are non-empty, in range and deduplicated");
        DualResult {
            dual,
            had_duplicate_stars,
        }
    }

    /// `G - e`, keeping all `n` vertices (some may become isolated).
    pub fn delete_edge(&self, edge: usize) -> Result<Hypergraph, HypergraphError> {
        if edge >= self.m() {
            return Err(HypergraphError::EdgeOutOfRange { edge, m: self.m() });
        }
        let mut edges = self.edges.clone();
        edges.remove(edge);
        Ok(Hypergraph { n: self.n, edges })
    }

    /// Sub-hypergraph on the union of the selected edges, relabelled compactly.
    pub fn edge_induced(&self, selection: &[usize]) -> Result<EdgeInduced, HypergraphError> {
        if selection.is_empty() {
            return Err(HypergraphError::EmptyEdgeSelection);
        }
        let mut edge_map: Vec<usize> = selection.to_vec();
        edge_map.sort_unstable();
        edge_map.dedup();
        if let Some(&bad) = edge_map.iter().find(|&&i| i >= self.m()) {
            return Err(HypergraphError::EdgeOutOfRange {
                edge: bad,
                m: self.m(),
            });
        }
        let mut used = vec![false; self.n];
        for &i in &edge_map {
            for &v in &self.edges[i] {
                used[v] = true;
            }
        }
        let vertex_map: Vec<usize> = (0..self.n).filter(|&v| used[v]).collect();
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in vertex_map.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = edge_map
            .iter()
            .map(|&i| self.edges[i].iter().map(|&v| relabel[v]).collect())
            .collect();
        Ok(EdgeInduced {
            graph: Hypergraph {
                n: vertex_map.len(),
                edges,
            },
            vertex_map,
            edge_map,
        })
    }

    /// `G|_U`: for every edge meeting `U`, its origin index and `e ∩ U`.
    /// Coinciding intersections stay separate entries.
    pub fn vertex_induced(
        &self,
        subset: &[usize],
    ) -> Result<Vec<(usize, Vec<usize>)>, HypergraphError> {
        if subset.is_empty() {
            return Err(HypergraphError::EmptyVertexSelection);
        }
        let mut inside = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return Err(HypergraphError::VertexOutOfRange {
                    edge: usize::MAX,
                    vertex: v,
                    n: self.n,
                });
            }
            inside[v] = true;
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let cut: Vec<usize> = e.iter().copied().filter(|&v| inside[v]).collect();
                (!cut.is_empty()).then_some((i, cut))
            })
            .collect())
    }

    /// Connected components of the vertex set, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let alive = vec![true; self.n];
        components_of(self.n, &alive, self.edges.iter().map(Vec::as_slice))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A walk `u = v0, e1, v1, ..., et, vt = v`, or `None` if no walk exists.
    pub fn walk(&self, from: usize, to: usize) -> Option<Vec<WalkStep>> {
        assert!(from < self.n && to < self.n);
        let stars = self.stars();
        let mut prev: Vec<Option<WalkStep>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &e in &stars[u] {
                for &w in &self.edges[e] {
                    if !seen[w] {
                        seen[w] = true;
                        prev[w] = Some(WalkStep { edge: e, vertex: u });
                        queue.push_back(w);
                    }
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut steps = Vec::new();
        let mut cur = to;
        while let Some(step) = prev[cur] {
            steps.push(WalkStep {
                edge: step.edge,
                vertex: cur,
            });
            cur = step.vertex;
        }
        steps.reverse();
        Some(steps)
    }

    /// Vertices `v` for which `G|_{V \ {v}}` is disconnected.
    pub fn cut_vertices(&self) -> Vec<usize> {
        if !self.is_connected() {
            return Vec::new();
        }
        (0..self.n)
            .filter(|&v| {
                let mut alive = vec![true; self.n];
                alive[v] = false;
                let restricted = self
                    .edges
                    .iter()
                    .map(|e| e.iter().copied().filter(|&w| w != v).collect::<Vec<_>>())
                    .filter(|e| !e.is_empty())
                    .collect::<Vec<_>>();
                components_of(self.n, &alive, restricted.iter().map(Vec::as_slice)).len() > 1
            })
            .collect()
    }

    /// Edges whose deletion disconnects `G` (isolated vertices count as
    /// components of the remainder).
    pub fn cut_edges(&self) -> Vec<usize> {
        if !self.is_connected() {
            return Vec::new();
        }
        (0..self.m())
            .filter(|&i| {
                let alive = vec![true; self.n];
                let rest = self
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, e)| e.as_slice());
                components_of(self.n, &alive, rest).len() > 1
            })
            .collect()
    }
}

/// Components of the live vertices under the given edges (union-find).
fn components_of<'a>(
    n: usize,
    alive: &[bool],
    edges: impl Iterator<Item = &'a [usize]>,
) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let Some((&first, rest)) = e.split_first() else {
            continue;
        };
        let root = find(&mut parent, first);
        for &v in rest {
            let r = find(&mut parent, v);
            if r != root {
                parent[r] = root;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut order = Vec::new();
    for v in (0..n).filter(|&v| alive[v]) {
        let r = find(&mut parent, v);
        groups
            .entry(r)
            .or_insert_with(|| {
                order.push(r);
                Vec::new()
            })
            .push(v);
    }
    order
        .into_iter()
        .map(|r| groups.remove(&r).unwrap())
        .collect()
}
