//! Undirected multigraph utilities: components, blocks, simple cycles and
//! paths. Loops and parallel edges are allowed; edges are indices.

use std::collections::BTreeSet;

/// An undirected multigraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (k, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((k, b));
            if a != b {
                adj[b].push((k, a));
            }
        }
        Multigraph { n, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(edge, other endpoint)` for the edges at `v`; a loop appears once.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Connected components of the topological realization with the
    /// vertices in `removed` deleted. Open edges count as points, so a loop
    /// at a removed vertex is a component of its own.
    pub fn components_without(&self, removed: &[usize]) -> usize {
        let gone = |v: usize| removed.contains(&v);
        let mut uf = UnionFind::new(self.n + self.edges.len());
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            for v in [a, b] {
                if !gone(v) {
                    uf.union(self.n + k, v);
                }
            }
        }
        let roots: BTreeSet<usize> = (0..self.n)
            .filter(|&v| !gone(v))
            .chain(self.n..self.n + self.edges.len())
            .map(|x| uf.find(x))
            .collect();
        roots.len()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components_without(&[]) == 1
    }

    /// The blocks (biconnected components) as edge sets. Every loop is a
    /// block of its own and every bridge a block of one edge.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                out.push(vec![k]);
            }
        }
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut time = 0;
        let mut estack: Vec<usize> = Vec::new();
        // Frames: (vertex, next adjacency index, edge used to reach it).
        let mut frames: Vec<(usize, usize, Option<usize>)> = Vec::new();
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            frames.push((root, 0, None));
            while let Some(&mut (v, ref mut i, pe)) = frames.last_mut() {
                if *i < self.adj[v].len() {
                    let (e, w) = self.adj[v][*i];
                    *i += 1;
                    if Some(e) == pe || w == v {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        estack.push(e);
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        frames.push((w, 0, Some(e)));
                    } else if disc[w] < disc[v] {
                        estack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    frames.pop();
                    if let (Some(pe), Some(&(u, _, _))) = (pe, frames.last()) {
                        low[u] = low[u].min(low[v]);
                        if low[v] >= disc[u] {
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
        }
        out
    }

    /// The vertices touched by a set of edges.
    pub fn vertices_of(&self, edges: &[usize]) -> BTreeSet<usize> {
        edges.iter().flat_map(|&k| [self.edges[k].0, self.edges[k].1]).collect()
    }

    /// Whether a block is a single cycle (a loop, two parallel edges, or a
    /// longer polygon).
    pub fn is_simple_cycle(&self, block: &[usize]) -> bool {
        match block {
            [] => false,
            [k] => self.edges[*k].0 == self.edges[*k].1,
            _ => self.vertices_of(block).len() == block.len(),
        }
    }

    /// All simple cycles as sorted edge sets, or `None` past `cap`.
    pub fn simple_cycles(&self, cap: usize) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for block in self.blocks() {
            if self.is_simple_cycle(&block) {
                out.push(block);
            } else if block.len() > 1 {
                out.extend(self.cycles_in_block(&block, cap.saturating_sub(out.len()))?);
            }
            if out.len() > cap {
                return None;
            }
        }
        out.sort();
        Some(out)
    }

    fn cycles_in_block(&self, block: &[usize], cap: usize) -> Option<Vec<Vec<usize>>> {
        let allowed: BTreeSet<usize> = block.iter().copied().collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &first in block {
            let (a, b) = self.edges[first];
            // Cycles whose least edge is `first`: paths from b back to a
            // through larger edges.
            let usable: BTreeSet<usize> = allowed.iter().copied().filter(|&e| e > first).collect();
            let paths = self.paths_within(b, a, &usable, cap.saturating_sub(found.len()))?;
            for mut p in paths {
                p.push(first);
                p.sort_unstable();
                found.insert(p);
            }
            if found.len() > cap {
                return None;
            }
        }
        Some(found.into_iter().collect())
    }

    /// All simple paths from `s` to `t` as edge sequences, or `None` past
    /// `cap`. For `s == t` the only path is the empty one.
    pub fn simple_paths(&self, s: usize, t: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
        let all: BTreeSet<usize> = (0..self.edges.len()).collect();
        self.paths_within(s, t, &all, cap)
    }

    fn paths_within(&self, s: usize, t: usize, usable: &BTreeSet<usize>, cap: usize) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        if s == t {
            out.push(Vec::new());
            return Some(out);
        }
        let mut on_path = vec![false; self.n];
        on_path[s] = true;
        let mut path: Vec<usize> = Vec::new();
        // Frames: (vertex, next adjacency index).
        let mut frames: Vec<(usize, usize)> = vec![(s, 0)];
        while let Some(&mut (v, ref mut i)) = frames.last_mut() {
            if *i >= self.adj[v].len() {
                frames.pop();
                on_path[v] = false;
                path.pop();
                continue;
            }
            let (e, w) = self.adj[v][*i];
            *i += 1;
            if w == v || !usable.contains(&e) || on_path[w] {
                continue;
            }
            if w == t {
                let mut p = path.clone();
                p.push(e);
                out.push(p);
                if out.len() > cap {
                    return None;
                }
                continue;
            }
            on_path[w] = true;
            path.push(e);
            frames.push((w, 0));
        }
        Some(out)
    }

    /// The number of blocks containing `v`: for a connected graph, the
    /// number of components of the realization minus `v`.
    pub fn block_count_at(&self, blocks: &[Vec<usize>], v: usize) -> usize {
        blocks
            .iter()
            .filter(|b| b.iter().any(|&k| self.edges[k].0 == v || self.edges[k].1 == v))
            .count()
    }

    /// Orders a cycle's edges along the cycle, returning the edges and the
    /// vertices visited.
    pub fn cycle_order(&self, cycle: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let Some(&first) = cycle.iter().min() else {
            return (Vec::new(), Vec::new());
        };
        let (start, mut cur) = self.edges[first];
        let mut edges = vec![first];
        let mut verts = vec![start];
        let mut left: BTreeSet<usize> = cycle.iter().copied().filter(|&e| e != first).collect();
        while !left.is_empty() {
            verts.push(cur);
            let Some(&e) = left.iter().find(|&&e| self.edges[e].0 == cur || self.edges[e].1 == cur) else {
                break;
            };
            left.remove(&e);
            edges.push(e);
            let (a, b) = self.edges[e];
            cur = if a == cur { b } else { a };
        }
        verts.push(cur);
        (edges, verts)
    }
}
