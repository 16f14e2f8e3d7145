//! Simple graphs, graphical building sets, and graph associahedra.
//!
//! Vertices are 1..n externally, 0-based bitmask positions internally. The
//! weighted enumerator of the graph associahedron is computed directly from
//! per-subset component counts (independent of the building-set machinery,
//! which serves as a cross-check), and also by a restriction recurrence and
//! a vertex-deletion recurrence at q = 0.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::building_set::BuildingSet;
use crate::error::{Error, Result};
use crate::flags::Flag;
use crate::invariants::{fq_from_provider, RankProvider};
use crate::qsym::{Composition, QPolynomial, QSymExpr};
use crate::util::{for_each_grouped_permutation, mask_elements};

/// Canonical graph identifier: vertex count plus relabel-minimal encoded
/// edge list.
pub type GraphKey = (usize, Vec<u32>);

/// A finite simple graph on {1..n}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    /// Build a graph from 1-based endpoint pairs. Loops are rejected and
    /// duplicate edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidGraph(format!("unsupported vertex count {n}")));
        }
        let mut adj = vec![0u32; n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) outside vertex range 1..={n}"
                )));
            }
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn full_mask(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// Edges as sorted 1-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut higher = self.adj[u] & !(((1u64 << (u + 1)) - 1) as u32);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                out.push((u + 1, v + 1));
                higher &= higher - 1;
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Degree of a 1-based vertex.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    /// Remove one edge (1-based endpoints); absent edges are an error.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidArgument(format!("no edge ({u}, {v})")));
        }
        let mut g = self.clone();
        g.adj[u - 1] &= !(1 << (v - 1));
        g.adj[v - 1] &= !(1 << (u - 1));
        Ok(g)
    }

    /// Induced subgraph on a vertex bitmask, relabeled order-preservingly
    /// onto {1..|mask|}.
    pub fn induced(&self, mask: u32) -> Result<Graph> {
        if mask == 0 {
            return Err(Error::InvalidArgument("empty induced subgraph".into()));
        }
        if mask & !self.full_mask() != 0 {
            return Err(Error::InvalidArgument(
                "induced set is not a subset of the vertices".into(),
            ));
        }
        let verts = mask_elements(mask);
        let mut edges = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        Graph::new(verts.len(), &edges)
    }

    /// Components of the induced subgraph on a bitmask, as bitmasks in the
    /// original labels, sorted by lowest vertex.
    pub fn subset_components(&self, mask: u32) -> Vec<u32> {
        let mut remaining = mask;
        let mut out = Vec::new();
        while remaining != 0 {
            let mut comp = remaining & remaining.wrapping_neg();
            loop {
                let mut grow = comp;
                let mut scan = comp;
                while scan != 0 {
                    let v = scan.trailing_zeros() as usize;
                    grow |= self.adj[v] & mask;
                    scan &= scan - 1;
                }
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            out.push(comp);
            remaining &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<u32> {
        self.subset_components(self.full_mask())
    }

    pub fn connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Whether a vertex bitmask induces a connected subgraph (a tube).
    pub fn is_tube(&self, mask: u32) -> bool {
        mask != 0 && self.subset_components(mask).len() == 1
    }

    /// All tubes as bitmasks, ascending.
    pub fn tubes(&self) -> Vec<u32> {
        (1..=self.full_mask())
            .filter(|&m| self.is_tube(m))
            .collect()
    }

    /// Contraction through a vertex set: on `V \ I` (relabeled), vertices
    /// are adjacent when they already were, or both neighbor a common
    /// component of the induced subgraph on `I`.
    pub fn contract_through(&self, i_mask: u32) -> Result<Graph> {
        let full = self.full_mask();
        if i_mask & !full != 0 {
            return Err(Error::InvalidArgument(
                "contraction set is not a subset of the vertices".into(),
            ));
        }
        if i_mask == full {
            return Err(Error::InvalidArgument(
                "contraction through every vertex".into(),
            ));
        }
        let comps = self.subset_components(i_mask);
        let keep = mask_elements(full & !i_mask);
        let mut edges = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                let joined = self.has_edge(a, b)
                    || comps.iter().any(|&c| {
                        self.adj[a - 1] & c != 0 && self.adj[b - 1] & c != 0
                    });
                if joined {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        Graph::new(keep.len(), &edges)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut edges = self.edges();
        for (u, v) in other.edges() {
            edges.push((u + self.n, v + self.n));
        }
        Graph::new(n, &edges)
    }

    /// The graphical building set: all tubes.
    pub fn building_set(&self) -> Result<BuildingSet> {
        BuildingSet::from_masks(self.full_mask(), self.tubes())
    }

    /// Weighted enumerator of the graph associahedron, as a flag sum with
    /// ranks from per-subset component counts.
    pub fn fq(&self) -> Result<QSymExpr> {
        let provider = GraphProvider::new(self);
        fq_from_provider(&provider)
    }

    /// Weighted enumerator via the induced-subgraph recurrence, memoized
    /// under canonical relabeling.
    pub fn fq_recurrence(&self) -> Result<QSymExpr> {
        let mut memo = HashMap::new();
        Ok(fq_recurrence_impl(self, &mut memo))
    }

    /// The q = 0 part of the enumerator via vertex deletion:
    /// `F_0(G) = sum over vertices v of (F_0(G - v))_1` for connected `G`,
    /// multiplicative over components.
    pub fn f0_deletion(&self) -> QSymExpr {
        let mut memo = HashMap::new();
        f0_deletion_impl(self, &mut memo)
    }

    /// Canonical key: the lexicographically least sorted encoded edge list
    /// over degree-respecting relabelings.
    pub fn canonical_key(&self) -> GraphKey {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (self.adj[v].count_ones(), v));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut prev_degree = u32::MAX;
        for v in order {
            let d = self.adj[v].count_ones();
            if d == prev_degree {
                groups.last_mut().unwrap().push(v);
            } else {
                groups.push(vec![v]);
                prev_degree = d;
            }
        }
        let raw_edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (u - 1, v - 1))
            .collect();
        let mut best: Option<Vec<u32>> = None;
        for_each_grouped_permutation(&groups, &mut |perm| {
            let mut encoded: Vec<u32> = raw_edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u] as u32, perm[v] as u32);
                    if a < b {
                        (a << 5) | b
                    } else {
                        (b << 5) | a
                    }
                })
                .collect();
            encoded.sort_unstable();
            if best.as_ref().is_none_or(|cur| encoded < *cur) {
                best = Some(encoded);
            }
        });
        (self.n, best.unwrap_or_default())
    }

    /// Canonical edge list as 1-based pairs.
    pub fn canonical_edges(&self) -> (usize, Vec<(usize, usize)>) {
        let (n, encoded) = self.canonical_key();
        (
            n,
            encoded
                .iter()
                .map(|&e| ((e >> 5) as usize + 1, (e & 31) as usize + 1))
                .collect(),
        )
    }

    pub fn isomorphic(&self, other: &Graph) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Degree histogram of the dual 1-skeleton of the graph associahedron
    /// boundary, sorted by descending degree.
    pub fn dual_skeleton_degrees(&self) -> Result<Vec<(usize, usize)>> {
        Ok(self
            .building_set()?
            .nested_complex_skeleton()?
            .degree_histogram())
    }

    /// Parse the text format: first line `n`, then one edge `u v` per line.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: "empty input".into(),
            })?;
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("expected vertex count, found {first:?}"),
        })?;
        let mut edges = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected an edge `u v`, found {line:?}"),
                });
            }
            let parse_tok = |tok: &str| -> Result<usize> {
                tok.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("expected vertex id, found {tok:?}"),
                })
            };
            edges.push((parse_tok(toks[0])?, parse_tok(toks[1])?));
        }
        Graph::new(n, &edges)
    }

    /// First member of the smallest known enumerator-collision pair.
    pub fn gamma1() -> Graph {
        Graph::new(
            6,
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (3, 4),
                (4, 5),
                (2, 6),
                (3, 6),
                (4, 6),
                (5, 6),
            ],
        )
        .expect("static edge list")
    }

    /// Second member of the smallest known enumerator-collision pair.
    pub fn gamma2() -> Graph {
        Graph::new(
            6,
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (3, 4),
                (4, 5),
                (2, 6),
                (3, 6),
                (5, 6),
            ],
        )
        .expect("static edge list")
    }

    /// All isomorphism classes of graphs on exactly `n` vertices, built by
    /// repeated vertex extension with canonical-form deduplication.
    pub fn enumerate_iso_classes(n: usize, connected_only: bool) -> Result<Vec<Graph>> {
        if n == 0 || n > 7 {
            return Err(Error::SizeOutOfRange { n, max: 7 });
        }
        let mut classes = vec![Graph::new(1, &[])?];
        for k in 1..n {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for g in &classes {
                let base_edges = g.edges();
                for attach in 0u32..(1 << k) {
                    let mut edges = base_edges.clone();
                    let mut scan = attach;
                    while scan != 0 {
                        let v = scan.trailing_zeros() as usize;
                        edges.push((v + 1, k + 1));
                        scan &= scan - 1;
                    }
                    let h = Graph::new(k + 1, &edges)?;
                    if seen.insert(h.canonical_key()) {
                        next.push(h);
                    }
                }
            }
            classes = next;
        }
        if connected_only {
            classes.retain(Graph::connected);
        }
        Ok(classes)
    }

    /// Sweep all isomorphism classes on `n` vertices for enumerator
    /// collisions, reported separately for the connected classes and for
    /// all classes.
    pub fn collision_search(n: usize, grouping: CollisionGrouping) -> Result<CollisionReport> {
        let classes = Graph::enumerate_iso_classes(n, false)?;
        let enumerators: Vec<QSymExpr> =
            classes.iter().map(Graph::fq).collect::<Result<_>>()?;
        let universe = |connected: bool| -> UniverseReport {
            let indices: Vec<usize> = (0..classes.len())
                .filter(|&i| !connected || classes[i].connected())
                .collect();
            let mut buckets: BTreeMap<String, Vec<usize>> = BTreeMap::new();
            for &i in &indices {
                let key = match grouping {
                    CollisionGrouping::FullFq => enumerators[i].to_string(),
                    CollisionGrouping::FZero => {
                        let at0 = enumerators[i].eval_q(0);
                        at0.iter()
                            .map(|(alpha, c)| format!("{alpha}:{c}"))
                            .collect::<Vec<_>>()
                            .join(";")
                    }
                };
                buckets.entry(key).or_default().push(i);
            }
            let mut groups = Vec::new();
            let mut pair_count = 0usize;
            for members in buckets.values().filter(|m| m.len() > 1) {
                pair_count += members.len() * (members.len() - 1) / 2;
                let fq_equal = members
                    .iter()
                    .all(|&i| enumerators[i] == enumerators[members[0]]);
                groups.push(CollisionGroup {
                    members: members.iter().map(|&i| classes[i].edges()).collect(),
                    fq_equal,
                });
            }
            UniverseReport {
                class_count: indices.len(),
                groups,
                pair_count,
            }
        };
        Ok(CollisionReport {
            n,
            grouping: match grouping {
                CollisionGrouping::FullFq => "full-fq".into(),
                CollisionGrouping::FZero => "f0".into(),
            },
            connected: universe(true),
            all_graphs: universe(false),
        })
    }
}

/// Which invariant groups classes in a collision sweep.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CollisionGrouping {
    /// Group by the full weighted enumerator.
    FullFq,
    /// Group by the q = 0 part (vertex counts per type).
    FZero,
}

/// A set of pairwise nonisomorphic graphs sharing the grouping invariant.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CollisionGroup {
    /// Edge lists of the members.
    pub members: Vec<Vec<(usize, usize)>>,
    /// Whether the full enumerators of all members agree.
    pub fq_equal: bool,
}

/// Collision summary over one universe of graph classes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UniverseReport {
    pub class_count: usize,
    pub groups: Vec<CollisionGroup>,
    /// Number of unordered colliding pairs.
    pub pair_count: usize,
}

/// Result of `Graph::collision_search`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CollisionReport {
    pub n: usize,
    pub grouping: String,
    pub connected: UniverseReport,
    pub all_graphs: UniverseReport,
}

fn fq_recurrence_impl(g: &Graph, memo: &mut HashMap<GraphKey, QSymExpr>) -> QSymExpr {
    let key = g.canonical_key();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let comps = g.components();
    let n = g.n;
    let result = if comps.len() > 1 {
        let mut acc = QSymExpr::unit();
        for comp in comps {
            let part = fq_recurrence_impl(&g.induced(comp).expect("component"), memo);
            acc = acc.quasi_shuffle(&part);
        }
        acc
    } else if n == 1 {
        QSymExpr::monomial(Composition::single(1))
    } else {
        let full = g.full_mask();
        let mut acc = QSymExpr::zero();
        let mut s = (full - 1) & full;
        loop {
            let co_size = (n - s.count_ones() as usize) as u32;
            let inner = if s == 0 {
                QSymExpr::unit()
            } else {
                fq_recurrence_impl(&g.induced(s).expect("submask"), memo)
            };
            let shifted = inner.shift(co_size).expect("positive shift");
            acc = acc.add(&shifted.scale(&QPolynomial::q_power(co_size as usize - 1)));
            if s == 0 {
                break;
            }
            s = (s - 1) & full;
        }
        acc
    };
    memo.insert(key, result.clone());
    result
}

fn f0_deletion_impl(g: &Graph, memo: &mut HashMap<GraphKey, QSymExpr>) -> QSymExpr {
    let key = g.canonical_key();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let comps = g.components();
    let n = g.n;
    let result = if comps.len() > 1 {
        let mut acc = QSymExpr::unit();
        for comp in comps {
            let part = f0_deletion_impl(&g.induced(comp).expect("component"), memo);
            acc = acc.quasi_shuffle(&part);
        }
        acc
    } else if n == 1 {
        QSymExpr::monomial(Composition::single(1))
    } else {
        let full = g.full_mask();
        let mut acc = QSymExpr::zero();
        for v in 0..n {
            let rest = full & !(1 << v);
            let part = f0_deletion_impl(&g.induced(rest).expect("nonempty"), memo);
            acc = acc.add(&part.shift(1).expect("positive shift"));
        }
        acc
    };
    memo.insert(key, result.clone());
    result
}

/// Flag-rank oracle for a graph associahedron, from breadth-first component
/// counts per vertex subset.
pub struct GraphProvider<'a> {
    g: &'a Graph,
    component_count: Vec<Vec<u32>>,
}

impl<'a> GraphProvider<'a> {
    pub fn new(g: &'a Graph) -> Self {
        let full = g.full_mask();
        let mut component_count = Vec::with_capacity(full as usize + 1);
        for s in 0..=full {
            component_count.push(g.subset_components(s));
        }
        GraphProvider { g, component_count }
    }
}

impl RankProvider for GraphProvider<'_> {
    fn degree(&self) -> usize {
        self.g.n
    }

    fn rank(&self, flag: &Flag) -> usize {
        let mut prefix = 0u32;
        let mut rank = 0usize;
        for &block in flag.block_masks() {
            prefix |= block;
            let meeting = self.component_count[prefix as usize]
                .iter()
                .filter(|&&c| c & block != 0)
                .count();
            rank += block.count_ones() as usize - meeting;
        }
        rank
    }
}
