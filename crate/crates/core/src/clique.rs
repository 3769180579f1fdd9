//! Exact maximum clique by branch and bound with greedy colouring bounds
//! over bitset adjacency rows.

use crate::error::{CwcError, Result};

#[derive(Clone)]
struct Bits {
    limbs: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits { limbs: vec![0; n.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.limbs[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.limbs[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    fn first(&self) -> Option<usize> {
        self.limbs.iter().enumerate().find(|(_, &l)| l != 0).map(|(i, &l)| i * 64 + l.trailing_zeros() as usize)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits { limbs: self.limbs.iter().zip(&other.limbs).map(|(a, b)| a & b).collect() }
    }

    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a &= !b;
        }
    }
}

/// An undirected graph for clique search.
pub struct Graph {
    n: usize,
    adj: Vec<Bits>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: vec![Bits::new(n); n] }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].set(b);
            self.adj[b].set(a);
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].limbs.iter().map(|l| l.count_ones()).sum()
    }

    /// Size and members of a maximum clique. Fails once more than
    /// `node_budget` search nodes have been expanded.
    pub fn max_clique(&self, node_budget: u64) -> Result<Vec<usize>> {
        if self.n == 0 {
            return Ok(Vec::new());
        }
        let (found, _) = self.max_clique_above(0, usize::MAX, node_budget)?;
        Ok(found.expect("a non-empty graph has a clique of size 1"))
    }

    /// A maximum clique if it has more than `floor` vertices, else `None`,
    /// together with the number of search nodes used. The search stops at
    /// the first clique of size `enough`, which the caller knows cannot be
    /// beaten.
    pub fn max_clique_above(&self, floor: usize, enough: usize, node_budget: u64) -> Result<(Option<Vec<usize>>, u64)> {
        if self.n <= floor {
            return Ok((None, 0));
        }
        // Relabel by non-increasing degree; colouring then packs high-degree
        // vertices into early classes.
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        let mut relabeled = Graph::new(self.n);
        let mut pos = vec![0; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for v in 0..self.n {
            for u in 0..self.n {
                if self.adj[v].limbs[u / 64] >> (u % 64) & 1 == 1 {
                    relabeled.adj[pos[v]].set(pos[u]);
                }
            }
        }
        let mut search = Search {
            graph: &relabeled,
            best: Vec::new(),
            floor,
            enough,
            current: Vec::new(),
            nodes: 0,
            budget: node_budget,
        };
        let mut all = Bits::new(self.n);
        for v in 0..self.n {
            all.set(v);
        }
        search.expand(all)?;
        if search.best.len() <= floor {
            return Ok((None, search.nodes));
        }
        let mut members: Vec<usize> = search.best.iter().map(|&v| order[v]).collect();
        members.sort_unstable();
        Ok((Some(members), search.nodes))
    }
}

struct Search<'a> {
    graph: &'a Graph,
    best: Vec<usize>,
    /// Cliques of this size or smaller are not worth reporting.
    floor: usize,
    enough: usize,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn bar(&self) -> usize {
        self.best.len().max(self.floor)
    }

    fn expand(&mut self, mut cand: Bits) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CwcError::SearchLimit(format!("maximum clique search exceeded {} nodes", self.budget)));
        }
        let (verts, colours) = self.colour_sort(&cand);
        for k in (0..verts.len()).rev() {
            if self.current.len() + colours[k] <= self.bar() || self.best.len() >= self.enough {
                return Ok(());
            }
            let v = verts[k];
            let next = cand.and(&self.graph.adj[v]);
            self.current.push(v);
            if next.is_empty() {
                if self.current.len() > self.bar() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            cand.clear(v);
        }
        Ok(())
    }

    /// Greedy sequential colouring. Returns vertices in colour order with
    /// the colour number of each; vertices whose colour cannot lead to a
    /// larger clique are omitted.
    fn colour_sort(&self, cand: &Bits) -> (Vec<usize>, Vec<usize>) {
        let min_useful = (self.bar() + 1).saturating_sub(self.current.len()).max(1);
        let mut uncoloured = cand.clone();
        let mut verts = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut class = uncoloured.clone();
            while let Some(v) = class.first() {
                class.clear(v);
                class.and_not_assign(&self.graph.adj[v]);
                uncoloured.clear(v);
                if colour >= min_useful {
                    verts.push(v);
                    colours.push(colour);
                }
            }
        }
        (verts, colours)
    }
}
