//! Eventually constant sequences indexed by `k >= 1`.
//!
//! A germ stores finitely many exceptional values and one generic value used for every
//! other index. Everything built on top of infinite products runs once per exceptional
//! index and once for the generic value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A position in a germ: a specific index, or "every index that is not exceptional".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    At(u64),
    Generic,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::At(k) => write!(f, "component {k}"),
            Index::Generic => write!(f, "generic component"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Germ<T> {
    exceptional: BTreeMap<u64, T>,
    generic: T,
}

impl<T: fmt::Debug> fmt::Debug for Germ<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Germ{{")?;
        for (k, v) in &self.exceptional {
            write!(f, "{k}: {v:?}, ")?;
        }
        write!(f, "_: {:?}}}", self.generic)
    }
}

impl<T: Default + Clone + PartialEq> Default for Germ<T> {
    fn default() -> Self {
        Germ::constant(T::default())
    }
}

impl<T: Clone + PartialEq> Germ<T> {
    pub fn constant(v: T) -> Self {
        Germ {
            exceptional: BTreeMap::new(),
            generic: v,
        }
    }

    /// Builds a germ and restores normal form; index `0` is rejected.
    pub fn new(exceptional: BTreeMap<u64, T>, generic: T) -> Self {
        assert!(!exceptional.contains_key(&0), "germ indices start at 1");
        let exceptional = exceptional.into_iter().filter(|(_, v)| *v != generic).collect();
        Germ { exceptional, generic }
    }

    /// `value` at `k`, `generic` elsewhere.
    pub fn single(k: u64, value: T, generic: T) -> Self {
        Germ::new(BTreeMap::from([(k, value)]), generic)
    }

    pub fn at(&self, k: u64) -> &T {
        self.exceptional.get(&k).unwrap_or(&self.generic)
    }

    pub fn get(&self, i: Index) -> &T {
        match i {
            Index::At(k) => self.at(k),
            Index::Generic => &self.generic,
        }
    }

    pub fn generic(&self) -> &T {
        &self.generic
    }

    pub fn exceptional(&self) -> &BTreeMap<u64, T> {
        &self.exceptional
    }

    pub fn set(&mut self, k: u64, v: T) {
        assert!(k >= 1, "germ indices start at 1");
        if v == self.generic {
            self.exceptional.remove(&k);
        } else {
            self.exceptional.insert(k, v);
        }
    }

    pub fn set_index(&mut self, i: Index, v: T) {
        match i {
            Index::At(k) => self.set(k, v),
            Index::Generic => {
                self.generic = v;
                let g = self.generic.clone();
                self.exceptional.retain(|_, x| *x != g);
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.exceptional.is_empty()
    }

    /// The exceptional indices, in increasing order.
    pub fn indices(&self) -> Vec<u64> {
        self.exceptional.keys().copied().collect()
    }

    /// Exceptional indices followed by `Generic`.
    pub fn positions(&self) -> Vec<Index> {
        self.exceptional
            .keys()
            .map(|&k| Index::At(k))
            .chain(std::iter::once(Index::Generic))
            .collect()
    }

    /// The least `N` with the value generic for all `k >= N`.
    pub fn bound(&self) -> u64 {
        self.exceptional.keys().next_back().map_or(1, |k| k + 1)
    }

    pub fn map<U: Clone + PartialEq>(&self, f: impl Fn(&T) -> U) -> Germ<U> {
        Germ::new(self.exceptional.iter().map(|(&k, v)| (k, f(v))).collect(), f(&self.generic))
    }

    /// Maps with knowledge of the position.
    pub fn map_indexed<U: Clone + PartialEq>(&self, f: impl Fn(Index, &T) -> U) -> Germ<U> {
        Germ::new(
            self.exceptional.iter().map(|(&k, v)| (k, f(Index::At(k), v))).collect(),
            f(Index::Generic, &self.generic),
        )
    }

    pub fn try_map<U: Clone + PartialEq, E>(&self, f: impl Fn(Index, &T) -> Result<U, E>) -> Result<Germ<U>, E> {
        let mut exc = BTreeMap::new();
        for (&k, v) in &self.exceptional {
            exc.insert(k, f(Index::At(k), v)?);
        }
        Ok(Germ::new(exc, f(Index::Generic, &self.generic)?))
    }

    pub fn zip<U: Clone + PartialEq, V: Clone + PartialEq>(
        &self,
        other: &Germ<U>,
        f: impl Fn(&T, &U) -> V,
    ) -> Germ<V> {
        let idx = union_indices(&[&self.indices(), &other.indices()]);
        Germ::new(
            idx.into_iter().map(|k| (k, f(self.at(k), other.at(k)))).collect(),
            f(&self.generic, &other.generic),
        )
    }

    pub fn try_zip<U: Clone + PartialEq, V: Clone + PartialEq, E>(
        &self,
        other: &Germ<U>,
        f: impl Fn(Index, &T, &U) -> Result<V, E>,
    ) -> Result<Germ<V>, E> {
        let idx = union_indices(&[&self.indices(), &other.indices()]);
        let mut exc = BTreeMap::new();
        for k in idx {
            exc.insert(k, f(Index::At(k), self.at(k), other.at(k))?);
        }
        Ok(Germ::new(exc, f(Index::Generic, &self.generic, &other.generic)?))
    }

    /// Builds a germ by evaluating `f` at the given exceptional indices and generically.
    pub fn tabulate(indices: &[u64], f: impl Fn(Index) -> T) -> Germ<T> {
        Germ::new(
            indices.iter().map(|&k| (k, f(Index::At(k)))).collect(),
            f(Index::Generic),
        )
    }

    pub fn try_tabulate<E>(indices: &[u64], f: impl Fn(Index) -> Result<T, E>) -> Result<Germ<T>, E> {
        let mut exc = BTreeMap::new();
        for &k in indices {
            exc.insert(k, f(Index::At(k))?);
        }
        Ok(Germ::new(exc, f(Index::Generic)?))
    }

    /// Whether the germ agrees with `other` at every index.
    pub fn all_zip<U: Clone + PartialEq>(&self, other: &Germ<U>, f: impl Fn(&T, &U) -> bool) -> bool {
        let idx = union_indices(&[&self.indices(), &other.indices()]);
        idx.into_iter().all(|k| f(self.at(k), other.at(k))) && f(&self.generic, &other.generic)
    }

    /// Values at `1..=n`.
    pub fn truncate(&self, n: u64) -> Vec<T> {
        (1..=n).map(|k| self.at(k).clone()).collect()
    }
}

/// Sorted union of exceptional index lists.
pub fn union_indices(lists: &[&[u64]]) -> Vec<u64> {
    let set: BTreeSet<u64> = lists.iter().flat_map(|l| l.iter().copied()).collect();
    set.into_iter().collect()
}

/// Index sets for idempotent surgery: a finite set, or the complement of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSet {
    Finite(BTreeSet<u64>),
    Cofinite(BTreeSet<u64>),
}

impl IndexSet {
    pub fn all() -> Self {
        IndexSet::Cofinite(BTreeSet::new())
    }

    pub fn empty() -> Self {
        IndexSet::Finite(BTreeSet::new())
    }

    pub fn contains(&self, k: u64) -> bool {
        match self {
            IndexSet::Finite(s) => s.contains(&k),
            IndexSet::Cofinite(s) => !s.contains(&k),
        }
    }

    /// Whether the generic index belongs to the set.
    pub fn contains_generic(&self) -> bool {
        matches!(self, IndexSet::Cofinite(_))
    }

    pub fn contains_index(&self, i: Index) -> bool {
        match i {
            Index::At(k) => self.contains(k),
            Index::Generic => self.contains_generic(),
        }
    }

    /// Indices whose membership differs from the generic one.
    pub fn listed(&self) -> Vec<u64> {
        match self {
            IndexSet::Finite(s) | IndexSet::Cofinite(s) => s.iter().copied().collect(),
        }
    }

    pub fn intersect(&self, other: &IndexSet) -> IndexSet {
        use IndexSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.intersection(b).copied().collect()),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Finite(a.difference(b).copied().collect()),
            (Cofinite(a), Cofinite(b)) => Cofinite(a.union(b).copied().collect()),
        }
    }
}
