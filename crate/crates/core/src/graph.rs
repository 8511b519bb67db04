//! Indexed De Bruijn functional graph.
//!
//! Every distinct `(k-1)`-mer is interned once into a fixed-stride arena and
//! receives a dense [`NodeIndex`] in first-seen order. Edges live in a
//! one-dimensional successor table (at most one outgoing edge per node) and a
//! parallel table of "possible initial" flags that starts `true` for every
//! node and is cleared the first time the node is the target of an edge.
//!
//! | operation                        | cost             |
//! |----------------------------------|------------------|
//! | mer -> index, index -> mer       | O(1) (amortized) |
//! | successor, initial flag          | O(1)             |
//! | all initial nodes                | O(V)             |

use std::fmt::{self, Write as _};
use std::hash::{BuildHasher, RandomState};

use hashbrown::HashTable;
use thiserror::Error;

use crate::sequence::{is_base, KmerParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node index {index} out of range for graph with {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected a node label of length {expected}, got length {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("node label contains a byte outside A/C/G/T")]
    InvalidBase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIndex(u32);

impl NodeIndex {
    pub fn new(index: usize) -> Self {
        NodeIndex(u32::try_from(index).expect("node index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// What `add_edge` does when a node already has a different successor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ConflictPolicy {
    #[default]
    KeepFirst,
    OverwriteLast,
}

impl std::str::FromStr for ConflictPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "keep-first" => Ok(ConflictPolicy::KeepFirst),
            "overwrite-last" => Ok(ConflictPolicy::OverwriteLast),
            other => Err(format!("unknown conflict policy {other:?}")),
        }
    }
}

/// Bidirectional map between fixed-width labels and dense indices. Label
/// bytes are stored once, in `arena`; the hash table holds indices only.
#[derive(Clone)]
struct MerInterner {
    width: usize,
    arena: Vec<u8>,
    table: HashTable<u32>,
    hasher: RandomState,
}

impl MerInterner {
    fn new(width: usize) -> Self {
        MerInterner {
            width,
            arena: Vec::new(),
            table: HashTable::new(),
            hasher: RandomState::new(),
        }
    }

    #[inline]
    fn label(arena: &[u8], width: usize, i: u32) -> &[u8] {
        let start = i as usize * width;
        &arena[start..start + width]
    }

    fn get(&self, mer: &[u8]) -> Option<u32> {
        let hash = self.hasher.hash_one(mer);
        let (arena, width) = (&self.arena, self.width);
        self.table
            .find(hash, |&i| Self::label(arena, width, i) == mer)
            .copied()
    }

    /// Returns the index and whether it was newly assigned.
    fn intern(&mut self, mer: &[u8]) -> (u32, bool) {
        debug_assert_eq!(mer.len(), self.width);
        let hash = self.hasher.hash_one(mer);
        let MerInterner {
            width,
            arena,
            table,
            hasher,
        } = self;
        let width = *width;
        let entry = table.entry(
            hash,
            |&i| Self::label(arena, width, i) == mer,
            |&i| hasher.hash_one(Self::label(arena, width, i)),
        );
        match entry {
            hashbrown::hash_table::Entry::Occupied(e) => (*e.get(), false),
            hashbrown::hash_table::Entry::Vacant(e) => {
                let idx = u32::try_from(arena.len() / width).expect("node count exceeds u32");
                e.insert(idx);
                arena.extend_from_slice(mer);
                (idx, true)
            }
        }
    }

    fn resolve(&self, i: u32) -> &[u8] {
        Self::label(&self.arena, self.width, i)
    }
}

#[derive(Clone)]
pub struct DeBruijnGraph {
    params: KmerParams,
    interner: MerInterner,
    successor: Vec<Option<NodeIndex>>,
    initial: Vec<bool>,
    policy: ConflictPolicy,
}

impl fmt::Debug for DeBruijnGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeBruijnGraph")
            .field("node_len", &self.node_len())
            .field("nodes", &self.len())
            .field("policy", &self.policy)
            .finish()
    }
}

impl DeBruijnGraph {
    pub fn new(params: KmerParams) -> Self {
        Self::with_policy(params, ConflictPolicy::default())
    }

    pub fn with_policy(params: KmerParams, policy: ConflictPolicy) -> Self {
        DeBruijnGraph {
            params,
            interner: MerInterner::new(params.node_len()),
            successor: Vec::new(),
            initial: Vec::new(),
            policy,
        }
    }

    pub fn params(&self) -> KmerParams {
        self.params
    }

    /// Length of every node label (`k - 1`).
    pub fn node_len(&self) -> usize {
        self.interner.width
    }

    pub fn policy(&self) -> ConflictPolicy {
        self.policy
    }

    /// Number of distinct `(k-1)`-mers stored.
    pub fn len(&self) -> usize {
        self.successor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successor.is_empty()
    }

    fn check(&self, idx: NodeIndex) -> Result<usize, GraphError> {
        let i = idx.index();
        if i < self.len() {
            Ok(i)
        } else {
            Err(GraphError::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }

    /// Index of `mer`, assigning the next free index on first sight.
    pub fn intern(&mut self, mer: &[u8]) -> Result<NodeIndex, GraphError> {
        if mer.len() != self.node_len() {
            return Err(GraphError::WidthMismatch {
                expected: self.node_len(),
                found: mer.len(),
            });
        }
        if !mer.iter().all(|&b| is_base(b)) {
            return Err(GraphError::InvalidBase);
        }
        Ok(self.intern_trusted(mer))
    }

    /// `mer` must already be a validated label of the right width.
    #[inline]
    pub(crate) fn intern_trusted(&mut self, mer: &[u8]) -> NodeIndex {
        let (idx, fresh) = self.interner.intern(mer);
        if fresh {
            self.successor.push(None);
            self.initial.push(true);
        }
        NodeIndex(idx)
    }

    /// Looks up `mer` without inserting it.
    pub fn get(&self, mer: &[u8]) -> Option<NodeIndex> {
        if mer.len() != self.node_len() {
            return None;
        }
        self.interner.get(mer).map(NodeIndex)
    }

    pub fn resolve(&self, idx: NodeIndex) -> Result<&[u8], GraphError> {
        self.check(idx)?;
        Ok(self.interner.resolve(idx.0))
    }

    pub fn resolve_str(&self, idx: NodeIndex) -> Result<&str, GraphError> {
        self.resolve(idx)
            .map(|b| std::str::from_utf8(b).expect("labels are ASCII"))
    }

    /// Records `left -> right`. The target always loses its initial flag;
    /// returns whether the successor table now holds exactly this edge.
    pub fn add_edge(&mut self, left: NodeIndex, right: NodeIndex) -> Result<bool, GraphError> {
        let l = self.check(left)?;
        let r = self.check(right)?;
        self.initial[r] = false;
        let slot = &mut self.successor[l];
        Ok(match *slot {
            None => {
                *slot = Some(right);
                true
            }
            Some(existing) if existing == right => true,
            Some(_) => match self.policy {
                ConflictPolicy::KeepFirst => false,
                ConflictPolicy::OverwriteLast => {
                    *slot = Some(right);
                    true
                }
            },
        })
    }

    pub fn successor(&self, idx: NodeIndex) -> Result<Option<NodeIndex>, GraphError> {
        let i = self.check(idx)?;
        Ok(self.successor[i])
    }

    pub fn is_initial(&self, idx: NodeIndex) -> Result<bool, GraphError> {
        let i = self.check(idx)?;
        Ok(self.initial[i])
    }

    /// Raw flag table, indexed by node.
    pub fn initial_flags(&self) -> &[bool] {
        &self.initial
    }

    /// Every node never targeted by an edge, ascending.
    pub fn initials(&self) -> Vec<NodeIndex> {
        self.initial
            .iter()
            .enumerate()
            .filter(|(_, &flag)| flag)
            .map(|(i, _)| NodeIndex::new(i))
            .collect()
    }

    /// Follows successors from `start` until a node has none or the next
    /// node is already on the path.
    pub fn walk_from(&self, start: NodeIndex) -> Result<Vec<NodeIndex>, GraphError> {
        self.check(start)?;
        let mut scratch = WalkScratch::default();
        let mut path = Vec::new();
        scratch.walk(self, start, &mut path);
        Ok(path)
    }

    /// One line per node: `index<TAB>mer<TAB>successor or -<TAB>T|F`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            let idx = NodeIndex::new(i);
            let mer = self.resolve_str(idx).unwrap();
            let next = match self.successor[i] {
                Some(n) => n.to_string(),
                None => "-".to_string(),
            };
            let flag = if self.initial[i] { 'T' } else { 'F' };
            writeln!(out, "{i}\t{mer}\t{next}\t{flag}").unwrap();
        }
        out
    }
}

/// Reusable visited-marks for repeated walks over one graph. Marks are
/// epoch-stamped so a new walk costs nothing to reset.
#[derive(Debug, Default)]
pub struct WalkScratch {
    stamp: Vec<u32>,
    epoch: u32,
}

impl WalkScratch {
    /// Clears `path` and fills it with the walk from `start`.
    pub fn walk(&mut self, graph: &DeBruijnGraph, start: NodeIndex, path: &mut Vec<NodeIndex>) {
        if self.stamp.len() < graph.len() {
            self.stamp.resize(graph.len(), 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        path.clear();
        let mut current = start;
        loop {
            self.stamp[current.index()] = self.epoch;
            path.push(current);
            match graph.successor[current.index()] {
                Some(next) if self.stamp[next.index()] != self.epoch => current = next,
                _ => break,
            }
        }
    }
}
