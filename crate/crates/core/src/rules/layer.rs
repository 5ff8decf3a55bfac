use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;

/// One stage of a forward dynamic program over hashed states, keeping the
/// best value per state and a backpointer `(previous state, choice)`.
/// States are stored in insertion order so iteration is deterministic.
pub(super) struct Layer<K, C> {
    pub keys: Vec<K>,
    pub vals: Vec<BigInt>,
    pub back: Vec<(usize, C)>,
    index: HashMap<K, usize>,
}

impl<K: Hash + Eq + Clone, C> Layer<K, C> {
    pub fn new() -> Self {
        Layer {
            keys: Vec::new(),
            vals: Vec::new(),
            back: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Keeps the first of equally good arrivals.
    pub fn relax(&mut self, key: K, val: BigInt, back: (usize, C)) {
        match self.index.get(&key) {
            Some(&i) => {
                if val > self.vals[i] {
                    self.vals[i] = val;
                    self.back[i] = back;
                }
            }
            None => {
                self.index.insert(key.clone(), self.keys.len());
                self.keys.push(key);
                self.vals.push(val);
                self.back.push(back);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    /// Index of the best state satisfying `pred`.
    pub fn best_where(&self, pred: impl Fn(&K) -> bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..self.len() {
            if pred(&self.keys[i]) && best.is_none_or(|b| self.vals[i] > self.vals[b]) {
                best = Some(i);
            }
        }
        best
    }
}

/// Backpointers of finished stages, for walking back from a final state.
pub(super) struct Trace<C> {
    stages: Vec<Vec<(usize, C)>>,
}

impl<C: Clone> Trace<C> {
    pub fn new() -> Self {
        Trace { stages: Vec::new() }
    }

    pub fn push<K>(&mut self, layer: Layer<K, C>) {
        self.stages.push(layer.back);
    }

    /// Choices along the path ending at state `idx` of the last pushed
    /// stage, first stage first.
    pub fn walk(&self, mut idx: usize) -> Vec<C> {
        let mut out = Vec::with_capacity(self.stages.len());
        for stage in self.stages.iter().rev() {
            let (prev, c) = stage[idx].clone();
            out.push(c);
            idx = prev;
        }
        out.reverse();
        out
    }
}
