//! Subgroup membership through Stallings foldings.
//!
//! Each generator word is attached to a base vertex as a petal loop, then
//! edges with the same label leaving the same vertex are identified until
//! the labelled graph is deterministic. A reduced word lies in the subgroup
//! iff reading it from the base vertex succeeds and returns there.

use std::collections::{BTreeMap, VecDeque};

use super::{Letter, Word};

#[derive(Clone, Debug)]
pub struct SubgroupGraph {
    /// Union-find parent pointers over vertices.
    parent: Vec<usize>,
    /// Outgoing edges keyed by signed letter; reverse edges stored with the
    /// inverse letter.
    out: Vec<BTreeMap<Letter, usize>>,
    base: usize,
}

impl SubgroupGraph {
    pub fn new(generators: &[Word]) -> Self {
        let mut g = SubgroupGraph {
            parent: vec![0],
            out: vec![BTreeMap::new()],
            base: 0,
        };
        let mut pending = VecDeque::new();
        for w in generators {
            if w.is_identity() {
                continue;
            }
            let mut at = g.base;
            let n = w.len();
            for (i, l) in w.letters().iter().enumerate() {
                let to = if i + 1 == n { g.base } else { g.add_vertex() };
                g.add_edge(at, *l, to, &mut pending);
                at = to;
            }
        }
        g.fold(pending);
        g
    }

    fn add_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.out.push(BTreeMap::new());
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn find_const(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn add_edge(
        &mut self,
        from: usize,
        l: Letter,
        to: usize,
        pending: &mut VecDeque<(usize, usize)>,
    ) {
        let from = self.find(from);
        let to = self.find(to);
        for (a, letter, b) in [(from, l, to), (to, l.inverse(), from)] {
            match self.out[a].get(&letter) {
                Some(&existing) => pending.push_back((existing, b)),
                None => {
                    self.out[a].insert(letter, b);
                }
            }
        }
    }

    fn fold(&mut self, mut pending: VecDeque<(usize, usize)>) {
        while let Some((a, b)) = pending.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            // merge the smaller edge map into the larger
            let (keep, gone) = if self.out[a].len() >= self.out[b].len() {
                (a, b)
            } else {
                (b, a)
            };
            self.parent[gone] = keep;
            if gone == self.base {
                self.base = keep;
            }
            let moved = std::mem::take(&mut self.out[gone]);
            for (l, target) in moved {
                match self.out[keep].get(&l) {
                    Some(&existing) => pending.push_back((existing, target)),
                    None => {
                        self.out[keep].insert(l, target);
                    }
                }
            }
        }
    }

    /// Number of vertices after folding.
    pub fn vertex_count(&self) -> usize {
        (0..self.parent.len())
            .filter(|&v| self.find_const(v) == v)
            .count()
    }

    pub fn contains(&self, w: &Word) -> bool {
        let mut at = self.find_const(self.base);
        for l in w.letters() {
            match self.out[at].get(l) {
                Some(&next) => at = self.find_const(next),
                None => return false,
            }
        }
        at == self.find_const(self.base)
    }
}

/// True iff `w` lies in the subgroup generated by `generators`.
pub fn stallings_member(generators: &[Word], w: &Word) -> bool {
    SubgroupGraph::new(generators).contains(w)
}
