//! Consecutive-ones property for the columns of a 0-1 matrix.
//!
//! The test works on overlap components: two rows overlap when they
//! intersect and neither contains the other. Inside an overlap-connected
//! component the arrangement of the component's columns is forced up to
//! reversal and up to permutations inside "blocks" of columns that no row of
//! the component distinguishes. Rows are therefore added in BFS order of the
//! overlap graph, and each new row either refines the current block sequence
//! in exactly one way or proves the matrix is not C1P.
//!
//! Distinct components have unions that are disjoint or nested, and a nested
//! component always falls inside a single block of its parent, so the final
//! order is assembled by placing every component inside its parent's block.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::set::IndexSet;

/// A dense 0-1 matrix stored row by row as bit sets over the columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<IndexSet>,
}

impl BinaryMatrix {
    pub fn new(cols: usize) -> Self {
        BinaryMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_sets(cols: usize, rows: Vec<IndexSet>) -> Self {
        assert!(rows.iter().all(|r| r.universe() == cols));
        BinaryMatrix { cols, rows }
    }

    /// Builds a matrix from the column indices of the ones in each row.
    pub fn from_rows(cols: usize, rows: &[Vec<usize>]) -> Self {
        BinaryMatrix {
            cols,
            rows: rows
                .iter()
                .map(|r| IndexSet::from_indices(cols, r.iter().copied()))
                .collect(),
        }
    }

    /// Parses rows written as strings of `0`/`1`.
    pub fn from_bit_strings(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let sets = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged bit-string rows");
                IndexSet::from_indices(
                    cols,
                    r.bytes()
                        .enumerate()
                        .filter(|(_, b)| *b == b'1')
                        .map(|(i, _)| i),
                )
            })
            .collect();
        BinaryMatrix { cols, rows: sets }
    }

    pub fn push_row(&mut self, row: IndexSet) {
        assert_eq!(row.universe(), self.cols);
        self.rows.push(row);
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &IndexSet {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].contains(c)
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t: Vec<IndexSet> = (0..self.cols)
            .map(|_| IndexSet::empty(self.rows.len()))
            .collect();
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter() {
                t[c].insert(r);
            }
        }
        BinaryMatrix {
            cols: self.rows.len(),
            rows: t,
        }
    }

    /// This matrix with the rowwise complement of every row appended.
    pub fn with_complements(&self) -> BinaryMatrix {
        let mut rows = self.rows.clone();
        rows.extend(self.rows.iter().map(IndexSet::complement));
        BinaryMatrix {
            cols: self.cols,
            rows,
        }
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let err = Error::MalformedPermutation {
        len: perm.len(),
        expected: n,
    };
    if perm.len() != n {
        return Err(err);
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(err);
        }
        seen[p] = true;
    }
    Ok(())
}

/// True iff every row's ones are contiguous when columns are laid out in
/// the order `perm` (so `perm[0]` is the leftmost column).
pub fn verify_c1p(m: &BinaryMatrix, perm: &[usize]) -> Result<bool> {
    check_permutation(perm, m.cols)?;
    let mut pos = vec![0usize; m.cols];
    for (p, &c) in perm.iter().enumerate() {
        pos[c] = p;
    }
    Ok(m.rows.iter().all(|row| {
        let (mut lo, mut hi, mut count) = (usize::MAX, 0usize, 0usize);
        for c in row.iter() {
            lo = lo.min(pos[c]);
            hi = hi.max(pos[c]);
            count += 1;
        }
        count == 0 || hi - lo + 1 == count
    }))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

const NONE: usize = usize::MAX;

/// Incremental block sequence for one overlap component.
struct Arrangement<'a> {
    block_of: &'a mut [usize],
    members: Vec<Vec<usize>>,
    order: Vec<usize>,
    pos: Vec<usize>,
    count: Vec<usize>,
}

impl<'a> Arrangement<'a> {
    fn new(block_of: &'a mut [usize]) -> Self {
        Arrangement {
            block_of,
            members: Vec::new(),
            order: Vec::new(),
            pos: Vec::new(),
            count: Vec::new(),
        }
    }

    fn new_block(&mut self, cols: Vec<usize>) -> usize {
        let id = self.members.len();
        for &c in &cols {
            self.block_of[c] = id;
        }
        self.members.push(cols);
        self.pos.push(NONE);
        self.count.push(0);
        id
    }

    fn reindex(&mut self) {
        for (p, &b) in self.order.iter().enumerate() {
            self.pos[b] = p;
        }
    }

    /// Splits block `b` by membership in `row`; the part inside the row goes
    /// on the `inside_right` side.
    fn split(&mut self, b: usize, row: &HashSet<usize>, inside_right: bool) {
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            self.members[b].iter().partition(|c| row.contains(c));
        if inside.is_empty() || outside.is_empty() {
            return;
        }
        self.members[b] = outside;
        let nb = self.new_block(inside);
        let p = self.pos[b];
        let at = if inside_right { p + 1 } else { p };
        self.order.insert(at, nb);
        self.reindex();
    }

    /// Adds a row that overlaps an already placed row (or is the first row).
    fn add_row(&mut self, row: &[usize]) -> bool {
        let mut fresh = Vec::new();
        let mut touched = Vec::new();
        for &c in row {
            let b = self.block_of[c];
            if b == NONE {
                fresh.push(c);
            } else {
                if self.count[b] == 0 {
                    touched.push(b);
                }
                self.count[b] += 1;
            }
        }
        let ok = self.place(row, &fresh, &touched);
        for b in touched {
            self.count[b] = 0;
        }
        ok
    }

    fn place(&mut self, row: &[usize], fresh: &[usize], touched: &[usize]) -> bool {
        if touched.is_empty() {
            debug_assert!(self.order.is_empty());
            let b = self.new_block(fresh.to_vec());
            self.order.push(b);
            self.reindex();
            return true;
        }
        let i = touched.iter().map(|&b| self.pos[b]).min().unwrap();
        let j = touched.iter().map(|&b| self.pos[b]).max().unwrap();
        if touched.len() != j - i + 1 {
            return false;
        }
        let full = |s: &Self, p: usize| {
            let b = s.order[p];
            s.count[b] == s.members[b].len()
        };
        if (i + 1..j).any(|p| !full(self, p)) {
            return false;
        }
        let in_row: HashSet<usize> = row.iter().copied().collect();
        let (bi, bj) = (self.order[i], self.order[j]);
        let last = self.order.len() - 1;
        if fresh.is_empty() {
            // A row inside one block cannot overlap any placed row.
            debug_assert!(i < j || full(self, i));
            self.split(bi, &in_row, true);
            self.split(bj, &in_row, false);
            return true;
        }
        if j == last && (i == j || full(self, j)) {
            self.split(bi, &in_row, true);
            let nb = self.new_block(fresh.to_vec());
            self.order.push(nb);
            self.reindex();
            true
        } else if i == 0 && (i == j || full(self, i)) {
            self.split(bj, &in_row, false);
            let nb = self.new_block(fresh.to_vec());
            self.order.insert(0, nb);
            self.reindex();
            true
        } else {
            false
        }
    }

    fn into_blocks(self) -> Vec<Vec<usize>> {
        let mut members = self.members;
        self.order
            .iter()
            .map(|&b| {
                let mut cols = std::mem::take(&mut members[b]);
                cols.sort_unstable();
                cols
            })
            .collect()
    }
}

struct Component {
    rows: Vec<usize>,
    union: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

/// Returns a column order under which every row's ones are contiguous, or
/// `None` if no such order exists. The result is a pure function of the
/// input matrix.
pub fn c1p_column_order(m: &BinaryMatrix) -> Option<Vec<usize>> {
    let cols = m.cols;
    // Rows with at most one 1 constrain nothing; duplicates add nothing.
    let mut seen = HashSet::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for r in &m.rows {
        let v = r.to_vec();
        if v.len() >= 2 && seen.insert(v.clone()) {
            rows.push(v);
        }
    }
    let nr = rows.len();

    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row {
            col_rows[c].push(r);
        }
    }

    // Overlap graph.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nr];
    let mut uf = UnionFind::new(nr);
    let mut shared = vec![0usize; nr];
    let mut touched = Vec::new();
    for r in 0..nr {
        for &c in &rows[r] {
            for &r2 in &col_rows[c] {
                if r2 > r {
                    if shared[r2] == 0 {
                        touched.push(r2);
                    }
                    shared[r2] += 1;
                }
            }
        }
        for &r2 in &touched {
            let s = shared[r2];
            if s < rows[r].len() && s < rows[r2].len() {
                adj[r].push(r2);
                adj[r2].push(r);
                uf.union(r, r2);
            }
            shared[r2] = 0;
        }
        touched.clear();
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }

    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); nr];
    for r in 0..nr {
        let root = uf.find(r);
        by_root[root].push(r);
    }

    let mut block_of = vec![NONE; cols];
    let mut comps: Vec<Component> = Vec::new();
    let mut visited = vec![false; nr];
    for members in by_root.into_iter().filter(|v| !v.is_empty()) {
        let start = members[0];
        let mut queue = VecDeque::from([start]);
        visited[start] = true;
        let mut arr = Arrangement::new(&mut block_of);
        while let Some(r) = queue.pop_front() {
            if !arr.add_row(&rows[r]) {
                return None;
            }
            for &nb in &adj[r] {
                if !visited[nb] {
                    visited[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
        let blocks = arr.into_blocks();
        let mut union: Vec<usize> = blocks.iter().flatten().copied().collect();
        union.sort_unstable();
        for &c in &union {
            block_of[c] = NONE;
        }
        comps.push(Component {
            rows: members,
            union,
            blocks,
        });
    }

    // Nest components: larger unions first; on equal unions the single-row
    // component is the parent.
    let mut idx: Vec<usize> = (0..comps.len()).collect();
    idx.sort_by(|&a, &b| {
        comps[b]
            .union
            .len()
            .cmp(&comps[a].union.len())
            .then(comps[a].rows.len().cmp(&comps[b].rows.len()))
            .then(comps[a].rows[0].cmp(&comps[b].rows[0]))
    });
    let mut slot: Vec<(usize, usize)> = vec![(NONE, NONE); cols];
    let mut children: Vec<Vec<Vec<usize>>> = comps
        .iter()
        .map(|c| vec![Vec::new(); c.blocks.len()])
        .collect();
    let mut top = Vec::new();
    for &ci in &idx {
        let (parent, block) = slot[comps[ci].union[0]];
        debug_assert!(comps[ci].union.iter().all(|&c| slot[c] == (parent, block)));
        if parent == NONE {
            top.push(ci);
        } else {
            children[parent][block].push(ci);
        }
        for (bi, b) in comps[ci].blocks.iter().enumerate() {
            for &c in b {
                slot[c] = (ci, bi);
            }
        }
    }

    enum Task {
        Comp(usize),
        Rest(usize, usize),
    }
    let mut out = Vec::with_capacity(cols);
    let mut emitted = vec![false; cols];
    let mut stack: Vec<Task> = top.iter().rev().map(|&c| Task::Comp(c)).collect();
    while let Some(task) = stack.pop() {
        match task {
            Task::Comp(ci) => {
                for bi in (0..comps[ci].blocks.len()).rev() {
                    stack.push(Task::Rest(ci, bi));
                    stack.extend(children[ci][bi].iter().rev().map(|&c| Task::Comp(c)));
                }
            }
            Task::Rest(ci, bi) => {
                for &c in &comps[ci].blocks[bi] {
                    if !emitted[c] {
                        emitted[c] = true;
                        out.push(c);
                    }
                }
            }
        }
    }
    for (c, done) in emitted.iter().enumerate() {
        if !done {
            out.push(c);
        }
    }
    Some(out)
}
