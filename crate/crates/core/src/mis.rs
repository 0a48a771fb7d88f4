//! Exact maximum clique by branch and bound with greedy-colouring bounds.
//! Maximum independent sets are obtained by running it on the complement.

use crate::bitset::Bitset;

pub(crate) struct CliqueSolver {
    adj: Vec<Bitset>,
}

impl CliqueSolver {
    /// `adj[i]` lists the neighbours of vertex `i`; it must be symmetric and
    /// must not contain `i` itself.
    pub(crate) fn new(adj: Vec<Bitset>) -> Self {
        Self { adj }
    }

    pub(crate) fn len(&self) -> usize {
        self.adj.len()
    }

    /// A maximum clique inside `candidates`, sorted ascending.
    pub(crate) fn max_clique_in(&self, candidates: &Bitset) -> Vec<usize> {
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.expand(&mut current, candidates.clone(), &mut best);
        best.sort_unstable();
        best
    }

    pub(crate) fn max_clique(&self) -> Vec<usize> {
        self.max_clique_in(&Bitset::full(self.len()))
    }

    /// The lexicographically smallest maximum clique (as a sorted index list).
    pub(crate) fn canonical_max_clique(&self) -> Vec<usize> {
        let target = self.max_clique().len();
        let mut chosen = Vec::with_capacity(target);
        let mut cand = Bitset::full(self.len());
        for v in 0..self.len() {
            if chosen.len() == target {
                break;
            }
            if !cand.contains(v) {
                continue;
            }
            let mut rest = cand.clone();
            rest.intersect_with(&self.adj[v]);
            for u in 0..=v {
                rest.remove(u);
            }
            if chosen.len() + 1 + self.max_clique_in(&rest).len() >= target {
                chosen.push(v);
                cand = rest;
            } else {
                cand.remove(v);
            }
        }
        chosen
    }

    fn expand(&self, current: &mut Vec<usize>, mut cand: Bitset, best: &mut Vec<usize>) {
        let (order, colours) = self.colour(&cand);
        for idx in (0..order.len()).rev() {
            if current.len() + colours[idx] <= best.len() {
                return;
            }
            let v = order[idx];
            current.push(v);
            let mut next = cand.clone();
            next.intersect_with(&self.adj[v]);
            if next.is_empty() {
                if current.len() > best.len() {
                    best.clone_from(current);
                }
            } else {
                self.expand(current, next, best);
            }
            current.pop();
            cand.remove(v);
        }
    }

    // Sequential greedy colouring; colour classes are independent sets, so the
    // number of colours bounds any clique in `cand`.
    fn colour(&self, cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = cand.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                uncoloured.remove(v);
                q.difference_with(&self.adj[v]);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}
