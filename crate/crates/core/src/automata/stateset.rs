use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

/// Index of a state in an automaton's state table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        StateId(u32::try_from(i).expect("state table fits in u32"))
    }

    /// The id this state gets after `offset` states are placed before it.
    pub fn shifted(self, offset: usize) -> Self {
        StateId::from_index(self.index() + offset)
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

impl Serialize for StateId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A set of states, as a fixed-width bit-set over one automaton's table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(FixedBitSet);

impl StateSet {
    pub fn empty(width: usize) -> Self {
        StateSet(FixedBitSet::with_capacity(width))
    }

    pub fn singleton(width: usize, q: StateId) -> Self {
        let mut s = Self::empty(width);
        s.insert(q);
        s
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        s.0.insert_range(..);
        s
    }

    pub fn from_ids<I: IntoIterator<Item = StateId>>(width: usize, ids: I) -> Self {
        let mut s = Self::empty(width);
        for q in ids {
            s.insert(q);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, q: StateId) -> bool {
        !self.0.put(q.index())
    }

    pub fn remove(&mut self, q: StateId) {
        self.0.set(q.index(), false);
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.contains(q.index())
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.ones().map(StateId::from_index)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        self.0.union_with(&other.0);
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.0.intersect_with(&other.0);
        s
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// The same members in a wider table.
    pub fn widened(&self, width: usize) -> StateSet {
        let mut s = self.0.clone();
        s.grow(width);
        StateSet(s)
    }

    /// Members shifted by `offset` in a table of `width` states.
    pub fn shifted(&self, offset: usize, width: usize) -> StateSet {
        StateSet::from_ids(width, self.iter().map(|q| q.shifted(offset)))
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", q)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for StateSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
