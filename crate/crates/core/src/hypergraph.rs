//! Weighted hypergraphs, vertex subsets, and conductance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_sum::{exact_sum, ExactSum};

pub type VertexId = usize;

/// A weighted hyperedge. Members are kept sorted once the edge belongs to a
/// [`Hypergraph`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperedge {
    weight: f64,
    members: Vec<VertexId>,
}

impl Hyperedge {
    pub fn new(weight: f64, members: impl Into<Vec<VertexId>>) -> Self {
        Self { weight, members: members.into() }
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// An immutable weighted hypergraph with a vertex→edge incidence index.
///
/// Every vertex has positive degree. Degrees and the total volume are
/// correctly rounded sums of the incident weights.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
    incidence_offsets: Vec<usize>,
    incidence: Vec<usize>,
    degrees: Vec<f64>,
    volume: ExactSum,
    volume_value: f64,
    w_min: f64,
    w_max: f64,
    total_size: usize,
    max_degree: f64,
}

impl Hypergraph {
    /// Validates and indexes `edges` over the vertex set `0..n`.
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        let edges = normalize_edges(n, edges)?;
        Self::index(n, edges)
    }

    /// Like [`Hypergraph::new`], but vertices of degree zero are removed and
    /// the rest renumbered densely in increasing order. Returns the id map
    /// `old → Some(new)`.
    pub fn new_dropping_isolated(n: usize, edges: Vec<Hyperedge>) -> Result<(Self, Vec<Option<VertexId>>)> {
        let edges = normalize_edges(n, edges)?;
        let mut used = vec![false; n];
        for e in &edges {
            for &v in &e.members {
                used[v] = true;
            }
        }
        let mut map = vec![None; n];
        let mut next = 0;
        for (v, &u) in used.iter().enumerate() {
            if u {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = edges
            .into_iter()
            .map(|e| Hyperedge {
                weight: e.weight,
                members: e.members.iter().map(|&v| map[v].expect("member is used")).collect(),
            })
            .collect();
        Ok((Self::index(next, edges)?, map))
    }

    fn index(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut counts = vec![0usize; n + 1];
        for e in &edges {
            for &v in &e.members {
                counts[v + 1] += 1;
            }
        }
        for v in 0..n {
            counts[v + 1] += counts[v];
        }
        let incidence_offsets = counts.clone();
        let mut fill = counts;
        let mut incidence = vec![0usize; incidence_offsets[n]];
        for (id, e) in edges.iter().enumerate() {
            for &v in &e.members {
                incidence[fill[v]] = id;
                fill[v] += 1;
            }
        }

        let mut degrees = Vec::with_capacity(n);
        for v in 0..n {
            let inc = &incidence[incidence_offsets[v]..incidence_offsets[v + 1]];
            let d = exact_sum(inc.iter().map(|&id| edges[id].weight));
            if d <= 0.0 {
                return Err(Error::IsolatedVertex(v));
            }
            degrees.push(d);
        }
        let volume: ExactSum = degrees.iter().copied().collect();
        let volume_value = volume.value();
        let w_min = edges.iter().map(|e| e.weight).fold(f64::INFINITY, f64::min);
        let w_max = edges.iter().map(|e| e.weight).fold(0.0, f64::max);
        let total_size = edges.iter().map(|e| e.members.len()).sum();
        let max_degree = degrees.iter().copied().fold(0.0, f64::max);
        Ok(Self {
            n,
            edges,
            incidence_offsets,
            incidence,
            degrees,
            volume,
            volume_value,
            w_min,
            w_max,
            total_size,
            max_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Hyperedge {
        &self.edges[id]
    }

    /// Ids of the edges containing `v`, ascending.
    pub fn incident_edges(&self, v: VertexId) -> &[usize] {
        &self.incidence[self.incidence_offsets[v]..self.incidence_offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> f64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// vol(V).
    pub fn volume(&self) -> f64 {
        self.volume_value
    }

    pub fn w_min(&self) -> f64 {
        self.w_min
    }

    pub fn w_max(&self) -> f64 {
        self.w_max
    }

    /// Σ_e |e|.
    pub fn total_size(&self) -> usize {
        self.total_size
    }

    pub fn max_degree(&self) -> f64 {
        self.max_degree
    }

    /// True when every edge has exactly two members.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.members.len() == 2)
    }

    pub(crate) fn volume_accumulator(&self) -> &ExactSum {
        &self.volume
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: len });
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Sub-hypergraph on `keep`, retaining the edges that lie entirely inside
    /// it. Returns the new→old vertex map.
    pub fn restrict_to(&self, keep: &VertexSubset) -> Result<(Hypergraph, Vec<VertexId>)> {
        self.check_len(keep.universe())?;
        let mut map = vec![usize::MAX; self.n];
        let old_ids: Vec<VertexId> = keep.members().to_vec();
        for (new, &old) in old_ids.iter().enumerate() {
            map[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.members.iter().all(|&v| keep.contains(v)))
            .map(|e| Hyperedge { weight: e.weight, members: e.members.iter().map(|&v| map[v]).collect() })
            .collect();
        Ok((Hypergraph::index(old_ids.len(), edges)?, old_ids))
    }

    /// Sub-hypergraph on the largest connected component.
    pub fn largest_component(&self) -> (Hypergraph, Vec<VertexId>) {
        let comps = connectivity(self);
        self.restrict_to(&comps.largest).expect("a connected component induces a valid hypergraph")
    }
}

fn normalize_edges(n: usize, edges: Vec<Hyperedge>) -> Result<Vec<Hyperedge>> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    let mut out = Vec::with_capacity(edges.len());
    for (id, mut e) in edges.into_iter().enumerate() {
        if !(e.weight.is_finite() && e.weight > 0.0) {
            return Err(Error::NonPositiveWeight { edge: id, weight: e.weight });
        }
        if e.members.is_empty() {
            return Err(Error::EmptyEdge(id));
        }
        e.members.sort_unstable();
        for w in e.members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateMember { edge: id, vertex: w[0] });
            }
        }
        if let Some(&v) = e.members.last() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        out.push(e);
    }
    Ok(out)
}

/// A set of vertices out of a universe `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSubset {
    mask: Vec<bool>,
    members: Vec<VertexId>,
}

/// Serializes as the sorted member list.
impl Serialize for VertexSubset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

impl VertexSubset {
    pub fn new<I: IntoIterator<Item = VertexId>>(n: usize, vertices: I) -> Result<Self> {
        let mut mask = vec![false; n];
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            mask[v] = true;
        }
        Ok(Self::from_mask(mask))
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect();
        Self { mask, members }
    }

    pub fn empty(n: usize) -> Self {
        Self { mask: vec![false; n], members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self { mask: vec![true; n], members: (0..n).collect() }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn complement(&self) -> Self {
        Self::from_mask(self.mask.iter().map(|b| !b).collect())
    }

    pub fn volume(&self, h: &Hypergraph) -> f64 {
        exact_sum(self.members.iter().map(|&v| h.degree(v)))
    }
}

/// Volume, cut and conductance of a proper subset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measure {
    pub volume: f64,
    pub cut: f64,
    pub conductance: f64,
}

/// Σ w(e) over edges with members on both sides of `s`.
pub fn cut(h: &Hypergraph, s: &VertexSubset) -> f64 {
    let mut seen = vec![false; h.m()];
    let mut acc = ExactSum::new();
    for &v in s.members() {
        for &id in h.incident_edges(v) {
            if seen[id] {
                continue;
            }
            seen[id] = true;
            let e = h.edge(id);
            if e.members.iter().any(|&u| !s.contains(u)) {
                acc.add(e.weight);
            }
        }
    }
    acc.value()
}

/// vol(S), cut(S) and φ_H(S) = cut(S) / min(vol(S), vol(V∖S)).
///
/// The result for `s` and for its complement is bit-identical.
pub fn measure(h: &Hypergraph, s: &VertexSubset) -> Result<Measure> {
    h.check_len(s.universe())?;
    if s.is_empty() || s.len() == h.n() {
        return Err(Error::DegenerateSubset);
    }
    let mut inside = ExactSum::new();
    let mut outside = h.volume_accumulator().clone();
    for &v in s.members() {
        inside.add(h.degree(v));
        outside.sub(h.degree(v));
    }
    let volume = inside.value();
    let cut = cut(h, s);
    let conductance = cut / volume.min(outside.value());
    Ok(Measure { volume, cut, conductance })
}

/// Vertices of `s` that belong to no boundary edge.
pub fn interior(h: &Hypergraph, s: &VertexSubset) -> VertexSubset {
    let mask = (0..h.n())
        .map(|v| {
            s.contains(v) && h.incident_edges(v).iter().all(|&id| h.edge(id).members.iter().all(|&u| s.contains(u)))
        })
        .collect();
    VertexSubset::from_mask(mask)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Components {
    /// Each component sorted; components ordered by their smallest vertex.
    pub components: Vec<Vec<VertexId>>,
    /// Most vertices; ties go to the component with the smallest vertex.
    pub largest: VertexSubset,
}

impl Components {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

pub fn connectivity(h: &Hypergraph) -> Components {
    let mut parent: Vec<usize> = (0..h.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in h.edges() {
        let first = e.members[0];
        for &v in &e.members[1..] {
            let (a, b) = (find(&mut parent, first), find(&mut parent, v));
            if a != b {
                // keep the smaller id as root so roots are component minima
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut slot = vec![usize::MAX; h.n()];
    let mut components: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..h.n() {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = components.len();
            components.push(Vec::new());
        }
        components[slot[r]].push(v);
    }
    let mut best = 0;
    for (i, c) in components.iter().enumerate() {
        if c.len() > components[best].len() {
            best = i;
        }
    }
    let largest = VertexSubset::new(h.n(), components[best].iter().copied()).expect("component vertices are in range");
    Components { components, largest }
}

/// π_S: d_v / vol(S) on S, zero elsewhere.
pub fn pi(h: &Hypergraph, s: &VertexSubset) -> Result<Vec<f64>> {
    h.check_len(s.universe())?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let vol = s.volume(h);
    Ok((0..h.n()).map(|v| if s.contains(v) { h.degree(v) / vol } else { 0.0 }).collect())
}

/// χ_v.
pub fn indicator(n: usize, v: VertexId) -> Vec<f64> {
    let mut x = vec![0.0; n];
    x[v] = 1.0;
    x
}

/// x(S) = Σ_{v∈S} x(v).
pub fn mass(x: &[f64], s: &VertexSubset) -> f64 {
    exact_sum(s.members().iter().map(|&v| x[v]))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub avg_edge_size: f64,
}

impl std::fmt::Display for Stats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} m={} avg_deg={} avg_size={}", self.n, self.m, self.avg_degree, self.avg_edge_size)
    }
}

pub fn stats(h: &Hypergraph) -> Stats {
    Stats {
        n: h.n(),
        m: h.m(),
        avg_degree: h.volume() / h.n() as f64,
        avg_edge_size: if h.m() == 0 { 0.0 } else { h.total_size() as f64 / h.m() as f64 },
    }
}
