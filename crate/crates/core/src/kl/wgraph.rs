//! W-graphs and the cells they determine.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use super::table::KlTable;
use crate::coxeter::Side;

/// Directed μ-graph on the ball: `v → w` iff `μ ≠ 0` for the pair and the
/// `side` descents of `v` are not contained in those of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WGraph {
    pub side: Side,
    pub vertices: usize,
    /// Sorted edge list.
    pub edges: Vec<(u32, u32)>,
}

impl WGraph {
    pub fn new(table: &KlTable, side: Side) -> Self {
        let ball = table.ball();
        let n = ball.len();
        let mut edges: Vec<(u32, u32)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|w| {
                let mut out = Vec::new();
                for &v in table.lower_ideal(w) {
                    let v = v as usize;
                    if v == w || table.mu(v, w) == 0 {
                        continue;
                    }
                    let dv = ball.element(v).descents(side);
                    let dw = ball.element(w).descents(side);
                    if !dv.is_subset(dw) {
                        out.push((v as u32, w as u32));
                    }
                    if !dw.is_subset(dv) {
                        out.push((w as u32, v as u32));
                    }
                }
                out
            })
            .collect();
        edges.sort_unstable();
        WGraph {
            side,
            vertices: n,
            edges,
        }
    }

    pub fn from_edges(side: Side, vertices: usize, mut edges: Vec<(u32, u32)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        WGraph {
            side,
            vertices,
            edges,
        }
    }

    /// Strongly connected components.
    pub fn cells(&self) -> Partition {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.vertices, self.edges.len());
        for _ in 0..self.vertices {
            g.add_node(());
        }
        for &(a, b) in &self.edges {
            g.add_edge(NodeIndex::new(a as usize), NodeIndex::new(b as usize), ());
        }
        let mut labels = vec![0u32; self.vertices];
        for (c, comp) in tarjan_scc(&g).iter().enumerate() {
            for v in comp {
                labels[v.index()] = c as u32;
            }
        }
        Partition::from_labels(&labels)
    }
}

/// A partition of `0..n` with blocks numbered by their least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<u32>,
    blocks: Vec<Vec<u32>>,
}

impl Partition {
    pub fn from_labels(raw: &[u32]) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (i, &r) in raw.iter().enumerate() {
            let id = *renumber.entry(r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() as u32 - 1
            });
            labels.push(id);
            blocks[id as usize].push(i as u32);
        }
        Partition { labels, blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_labels(&(0..n as u32).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> &[u32] {
        &self.blocks[self.labels[v] as usize]
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            b.iter()
                .all(|&v| other.labels[v as usize] == other.labels[b[0] as usize])
        })
    }

    /// Finest partition coarser than both.
    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.len(), other.len(), "partitions of different sets");
        let mut uf: UnionFind<u32> = UnionFind::new(self.len());
        for p in [self, other] {
            for b in &p.blocks {
                for &v in &b[1..] {
                    uf.union(b[0], v);
                }
            }
        }
        let roots: Vec<u32> = (0..self.len() as u32).map(|v| uf.find(v)).collect();
        Partition::from_labels(&roots)
    }
}

/// Two-sided cells: the join of the left and right cell partitions.
pub fn two_sided_cells(left: &Partition, right: &Partition) -> Partition {
    left.join(right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_and_join() {
        let g = WGraph::from_edges(Side::Left, 5, vec![(0, 1), (1, 0), (2, 3), (3, 4)]);
        let p = g.cells();
        assert_eq!(p.blocks().len(), 4);
        assert_eq!(p.label(0), p.label(1));
        let q = Partition::from_labels(&[0, 1, 2, 2, 3]);
        let j = two_sided_cells(&p, &q);
        assert_eq!(j.blocks(), &[vec![0, 1], vec![2, 3], vec![4]]);
        assert!(p.refines(&j) && q.refines(&j));
        assert_eq!(j, two_sided_cells(&q, &p));
        let s = Partition::singletons(4);
        assert_eq!(s.join(&s), s);
    }
}
