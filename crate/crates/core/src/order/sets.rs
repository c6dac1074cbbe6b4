use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest universe a [`Subset`] mask can address.
pub const MAX_POINTS: usize = 64;

/// Subset of a point universe, stored as a bitmask where bit `i` is the
/// `i`-th label in canonical order.
///
/// `Ord` is the canonical family order: by cardinality, then by mask value.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole universe of `n` points.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1u64 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_POINTS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Complement relative to a universe of `n` points.
    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).difference(self)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest member index, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Image of `self` under the map `point i -> point map[i]`.
    pub fn image(self, map: &[usize]) -> Subset {
        Subset::from_indices(self.iter().map(|i| map[i]))
    }

    /// Preimage of `self` under `map`, as a subset of `0..map.len()`.
    pub fn preimage(self, map: &[usize]) -> Subset {
        Subset::from_indices((0..map.len()).filter(|&i| self.contains(map[i])))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ordered set of distinct point labels.
///
/// Labels are kept in sorted order; the position of a label is the bit it
/// occupies in every [`Subset`] over this universe.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PointUniverse {
    labels: Vec<String>,
}

impl PointUniverse {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("duplicate label `{}`", w[0])));
        }
        if labels.len() > MAX_POINTS {
            return Err(Error::SizeCap {
                what: "point universe",
                size: labels.len(),
                cap: MAX_POINTS,
            });
        }
        Ok(Self { labels })
    }

    /// Universe `x1, ..., xn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::UnknownPoint(label.to_string()))
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = Subset::EMPTY;
        for l in labels {
            s.insert(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: Subset) -> Vec<&str> {
        s.iter().map(|i| self.label(i)).collect()
    }

    /// `{a,b,c}` rendering of a subset.
    pub fn format_subset(&self, s: Subset) -> String {
        format!("{{{}}}", self.labels_of(s).join(","))
    }

    /// Universe made of the labels in `s`, in the same relative order.
    pub fn restrict(&self, s: Subset) -> PointUniverse {
        PointUniverse {
            labels: s.iter().map(|i| self.labels[i].clone()).collect(),
        }
    }
}

/// Deduplicated family of subsets of an `n`-point universe, kept in
/// canonical order (cardinality, then mask).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SetFamily {
    n: usize,
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn new(n: usize, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::SizeCap {
                what: "set family universe",
                size: n,
                cap: MAX_POINTS,
            });
        }
        let full = Subset::full(n);
        let mut members: Vec<Subset> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| !s.is_subset(full)) {
            return Err(Error::Input(format!(
                "subset {bad:?} leaves a universe of {n} points"
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { n, members })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Position of `s` in canonical order.
    pub fn position(&self, s: Subset) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn intersection_closure(&self) -> SetFamily {
        intersection_closure(self)
    }
}

/// Smallest superfamily closed under all intersections, the empty
/// intersection (the whole universe) included.
pub fn intersection_closure(family: &SetFamily) -> SetFamily {
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut all: Vec<Subset> = Vec::new();
    let mut queue: Vec<Subset> = Vec::new();
    for s in std::iter::once(Subset::full(family.n)).chain(family.iter()) {
        if seen.insert(s) {
            queue.push(s);
        }
    }
    while let Some(s) = queue.pop() {
        for &u in &all {
            let t = s.intersection(u);
            if seen.insert(t) {
                queue.push(t);
            }
        }
        all.push(s);
    }
    SetFamily {
        n: family.n,
        members: {
            all.sort_unstable();
            all
        },
    }
}
