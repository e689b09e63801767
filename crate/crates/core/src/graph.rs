//! Small graph utilities: union-find and biconnected components of an
//! undirected multigraph.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Blocks of a multigraph: maximal 2-connected pieces, bridges counted as
/// single-edge blocks. Parallel edges share a block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub cut_vertices: Vec<usize>,
    /// Edge ids of each block, sorted.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    /// Vertices touched by block `k`.
    pub fn block_vertices(&self, k: usize, edges: &[(usize, usize)]) -> Vec<usize> {
        let mut vs: Vec<usize> = self.blocks[k].iter().flat_map(|&e| [edges[e].0, edges[e].1]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// Tarjan's biconnected components over `n` vertices and the given edge
/// list. Self-loops are rejected by callers; isolated vertices belong to
/// no block.
pub fn blocks(n: usize, edges: &[(usize, usize)]) -> BlockDecomposition {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    let mut estack: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // Frames: (vertex, edge used to enter it, next adjacency index).
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&(v, pe, idx)) = stack.last() {
            if idx < adj[v].len() {
                let top = stack.len() - 1;
                stack[top].2 += 1;
                let (w, eid) = adj[v][idx];
                if eid == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push(eid);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, eid, 0));
                } else if disc[w] < disc[v] {
                    estack.push(eid);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    out.sort();
    BlockDecomposition { cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(), blocks: out }
}

/// Connected components of the vertices, as a label per vertex.
pub fn component_labels(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for v in 0..n {
        let r = uf.find(v);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        out[v] = label[r];
    }
    out
}
