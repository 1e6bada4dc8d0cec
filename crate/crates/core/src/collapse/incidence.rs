//! Mutable face/coface incidence used by the collapsing procedures.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::complex::{Cell, CellComplex};

/// Cells of a complex indexed by position, with live coface counts.
#[derive(Clone, Debug)]
pub struct Incidence<T: Ord + Clone> {
    elems: Vec<T>,
    rank: Vec<usize>,
    id: BTreeMap<T, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    alive: Vec<bool>,
    upcount: Vec<usize>,
    live: usize,
}

impl<C: Cell> Incidence<C> {
    pub fn from_complex(c: &CellComplex<C>) -> Self {
        let elems: Vec<C> = c.faces().iter().cloned().collect();
        let rank = elems.iter().map(|e| e.dim()).collect();
        let id: BTreeMap<C, usize> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let down: Vec<Vec<usize>> = elems.iter().map(|e| e.boundary().iter().map(|b| id[b]).collect()).collect();
        Self::assemble(elems, rank, id, down)
    }

    pub fn to_complex(&self) -> CellComplex<C> {
        CellComplex::from_closed_set(self.alive_elems().cloned().collect())
    }
}

impl<T: Ord + Clone> Incidence<T> {
    /// Builds from an explicit graded poset: `down[i]` lists the elements
    /// covered by element `i`.
    pub fn from_poset(elems: Vec<T>, rank: Vec<usize>, down: Vec<Vec<usize>>) -> Self {
        let id = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Self::assemble(elems, rank, id, down)
    }

    fn assemble(elems: Vec<T>, rank: Vec<usize>, id: BTreeMap<T, usize>, down: Vec<Vec<usize>>) -> Self {
        let n = elems.len();
        let mut up = alloc::vec![Vec::new(); n];
        for (i, d) in down.iter().enumerate() {
            for &j in d {
                up[j].push(i);
            }
        }
        let upcount = up.iter().map(|u| u.len()).collect();
        Incidence {
            elems,
            rank,
            id,
            up,
            down,
            alive: alloc::vec![true; n],
            upcount,
            live: n,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn live(&self) -> usize {
        self.live
    }

    pub fn elem(&self, i: usize) -> &T {
        &self.elems[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn index(&self, t: &T) -> Option<usize> {
        self.id.get(t).copied()
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    pub fn down(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn alive_elems(&self) -> impl Iterator<Item = &T> {
        self.elems.iter().zip(&self.alive).filter(|(_, a)| **a).map(|(e, _)| e)
    }

    pub fn alive_bits(&self) -> Vec<u64> {
        let mut bits = alloc::vec![0u64; self.elems.len().div_ceil(64)];
        for (i, a) in self.alive.iter().enumerate() {
            if *a {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        bits
    }

    /// The unique live coface of `i` when `i` is free.
    pub fn free_partner(&self, i: usize) -> Option<usize> {
        if !self.alive[i] || self.upcount[i] != 1 {
            return None;
        }
        let j = *self.up[i].iter().find(|&&j| self.alive[j])?;
        (self.upcount[j] == 0).then_some(j)
    }

    /// Removes a maximal element.
    pub fn remove(&mut self, i: usize) {
        debug_assert!(self.alive[i] && self.upcount[i] == 0);
        self.alive[i] = false;
        self.live -= 1;
        for k in 0..self.down[i].len() {
            let d = self.down[i][k];
            self.upcount[d] -= 1;
        }
    }

    pub fn restore(&mut self, i: usize) {
        debug_assert!(!self.alive[i]);
        self.alive[i] = true;
        self.live += 1;
        for k in 0..self.down[i].len() {
            let d = self.down[i][k];
            self.upcount[d] += 1;
        }
    }

    /// Removes the free pair `(i, j)`.
    pub fn collapse(&mut self, i: usize, j: usize) {
        self.remove(j);
        self.remove(i);
    }

    pub fn uncollapse(&mut self, i: usize, j: usize) {
        self.restore(i);
        self.restore(j);
    }

    /// All current free pairs, higher dimension first.
    pub fn free_pairs(&self, protected: &[bool]) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.elems.len())
            .filter(|&i| !protected[i])
            .filter_map(|i| self.free_partner(i).map(|j| (i, j)))
            .filter(|&(_, j)| !protected[j])
            .collect();
        out.sort_by_key(|&(i, _)| (Reverse(self.rank[i]), i));
        out
    }

    /// Collapses free pairs greedily, highest-dimensional free face first,
    /// ties broken by `priority` (smaller first). Never touches protected
    /// elements. Returns the pairs removed.
    pub fn greedy(&mut self, protected: &[bool], priority: &[u64]) -> Vec<(usize, usize)> {
        let mut cand: BTreeSet<(Reverse<usize>, u64, usize)> =
            (0..self.elems.len()).filter(|&i| self.alive[i]).map(|i| (Reverse(self.rank[i]), priority[i], i)).collect();
        let mut steps = Vec::new();
        while let Some((_, _, i)) = cand.pop_first() {
            if protected[i] {
                continue;
            }
            let Some(j) = self.free_partner(i) else {
                continue;
            };
            if protected[j] {
                continue;
            }
            self.collapse(i, j);
            steps.push((i, j));
            let mut touched: Vec<usize> = Vec::new();
            for &x in self.down[j].iter().chain(self.down[i].iter()) {
                touched.push(x);
                touched.extend_from_slice(&self.down[x]);
            }
            for x in touched {
                if self.alive[x] {
                    cand.insert((Reverse(self.rank[x]), priority[x], x));
                }
            }
        }
        steps
    }

    /// Collapses along a prescribed matching (free face → coface) for as long
    /// as some matched face is free with its partner.
    pub fn follow_matching(&mut self, partner: &BTreeMap<usize, usize>) -> Vec<(usize, usize)> {
        let mut cand: BTreeSet<(Reverse<usize>, usize)> =
            partner.keys().filter(|&&i| self.alive[i]).map(|&i| (Reverse(self.rank[i]), i)).collect();
        let mut steps = Vec::new();
        while let Some((_, i)) = cand.pop_first() {
            let Some(j) = self.free_partner(i) else { continue };
            if partner.get(&i) != Some(&j) {
                continue;
            }
            self.collapse(i, j);
            steps.push((i, j));
            let mut touched: Vec<usize> = Vec::new();
            for &x in self.down[j].iter().chain(self.down[i].iter()) {
                touched.push(x);
                touched.extend_from_slice(&self.down[x]);
            }
            for x in touched {
                if self.alive[x] && partner.contains_key(&x) {
                    cand.insert((Reverse(self.rank[x]), x));
                }
            }
        }
        steps
    }
}
