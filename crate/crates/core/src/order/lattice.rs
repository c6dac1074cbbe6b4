use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Finite bounded lattice given by an explicit order relation.
///
/// Meet and join tables are computed once at construction; nothing about
/// them is taken from the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `down[a]` holds every `b` with `b <= a`.
    down: Vec<FixedBitSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// Checks the poset axioms and the existence of all binary meets and joins.
pub fn validate_lattice<S: AsRef<str>>(elements: &[S], leq: &[(S, S)]) -> ValidationReport {
    match FiniteLattice::new(elements, leq) {
        Ok(_) => ValidationReport::new(),
        Err(report) => report,
    }
}

impl FiniteLattice {
    /// Validates `(elements, leq)` and materializes the lattice. `leq` must
    /// list the full relation, reflexive pairs included.
    pub fn new<S: AsRef<str>>(
        elements: &[S],
        leq: &[(S, S)],
    ) -> std::result::Result<Self, ValidationReport> {
        let mut report = ValidationReport::new();
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        if names.is_empty() {
            report.push("nonempty", "lattice has no elements", []);
            return Err(report);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                report.push(
                    "distinct-elements",
                    format!("element `{name}` listed twice"),
                    [name.clone()],
                );
                return Err(report);
            }
        }
        let n = names.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, b) in leq {
            let (a, b) = (a.as_ref(), b.as_ref());
            match (index.get(a), index.get(b)) {
                (Some(&ia), Some(&ib)) => down[ib].insert(ia),
                _ => {
                    let bad = if index.contains_key(a) { b } else { a };
                    report.push(
                        "known-elements",
                        format!("order pair ({a}, {b}) names unknown element `{bad}`"),
                        [a.to_string(), b.to_string()],
                    );
                    return Err(report);
                }
            }
        }
        Self::from_down_sets(names, down)
    }

    /// Builds a lattice from the reflexive-transitive closure of `covers`.
    pub fn from_covers<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> std::result::Result<Self, ValidationReport> {
        let names: Vec<&str> = elements.iter().map(AsRef::as_ref).collect();
        let pos = |s: &str| names.iter().position(|n| *n == s);
        let n = names.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let (Some(a), Some(b)) = (pos(a.as_ref()), pos(b.as_ref())) else {
                let mut report = ValidationReport::new();
                report.push(
                    "known-elements",
                    format!(
                        "cover ({}, {}) names an unknown element",
                        a.as_ref(),
                        b.as_ref()
                    ),
                    [a.as_ref().to_string(), b.as_ref().to_string()],
                );
                return Err(report);
            };
            reach[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let row = reach[k].clone();
                    for (r, via) in reach[i].iter_mut().zip(row) {
                        *r |= via;
                    }
                }
            }
        }
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if reach[i][j] {
                    pairs.push((names[i], names[j]));
                }
            }
        }
        Self::new(&names, &pairs)
    }

    /// Builds a lattice from an order given as a predicate `leq(a, b)` over
    /// element indices.
    pub fn from_order(
        names: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> std::result::Result<Self, ValidationReport> {
        let n = names.len();
        if n == 0 {
            let mut report = ValidationReport::new();
            report.push("nonempty", "lattice has no elements", []);
            return Err(report);
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
            let mut report = ValidationReport::new();
            report.push(
                "distinct-elements",
                format!("element `{dup}` listed twice"),
                [dup.clone()],
            );
            return Err(report);
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (b, d) in down.iter_mut().enumerate() {
            for a in 0..n {
                if leq(a, b) {
                    d.insert(a);
                }
            }
        }
        Self::from_down_sets(names, down)
    }

    fn from_down_sets(
        names: Vec<String>,
        down: Vec<FixedBitSet>,
    ) -> std::result::Result<Self, ValidationReport> {
        let n = names.len();
        let mut report = ValidationReport::new();
        let leq = |a: usize, b: usize| down[b].contains(a);

        if let Some(a) = (0..n).find(|&a| !leq(a, a)) {
            report.push(
                "reflexive",
                format!("missing ({0}, {0})", names[a]),
                [names[a].clone()],
            );
        }
        'anti: for a in 0..n {
            for b in a + 1..n {
                if leq(a, b) && leq(b, a) {
                    report.push(
                        "antisymmetric",
                        format!(
                            "{} <= {} and {} <= {}",
                            names[a], names[b], names[b], names[a]
                        ),
                        [names[a].clone(), names[b].clone()],
                    );
                    break 'anti;
                }
            }
        }
        'trans: for a in 0..n {
            for b in 0..n {
                if a == b || !leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if leq(b, c) && !leq(a, c) {
                        report.push(
                            "transitive",
                            format!(
                                "{} <= {} <= {} but not {} <= {}",
                                names[a], names[b], names[c], names[a], names[c]
                            ),
                            [names[a].clone(), names[b].clone(), names[c].clone()],
                        );
                        break 'trans;
                    }
                }
            }
        }
        if !report.passed() {
            return Err(report);
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (b, d) in down.iter().enumerate() {
            for a in d.ones() {
                up[a].insert(b);
            }
        }
        let meet = bound_table(&down, &names, "meet", "no meet", &mut report);
        let join = bound_table(&up, &names, "join", "no join", &mut report);
        if !report.passed() {
            return Err(report);
        }
        // Finite, nonempty and closed under binary bounds, so bounded.
        let bottom = (1..n).fold(0, |acc, e| meet[acc * n + e]);
        let top = (1..n).fold(0, |acc, e| join[acc * n + e]);
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(Self {
            names,
            index,
            down,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn check_index(&self, e: usize) -> Result<usize> {
        if e < self.len() {
            Ok(e)
        } else {
            Err(Error::ElementIndex(e))
        }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    /// Greatest lower bound; the empty meet is the top.
    pub fn meet_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems
            .into_iter()
            .fold(self.top, |acc, e| self.meet2(acc, e))
    }

    /// Least upper bound; the empty join is the bottom.
    pub fn join_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems
            .into_iter()
            .fold(self.bottom, |acc, e| self.join2(acc, e))
    }

    pub fn meet<S: AsRef<str>>(&self, elems: &[S]) -> Result<usize> {
        let idx = self.lookup(elems)?;
        Ok(self.meet_all(idx))
    }

    pub fn join<S: AsRef<str>>(&self, elems: &[S]) -> Result<usize> {
        let idx = self.lookup(elems)?;
        Ok(self.join_all(idx))
    }

    fn lookup<S: AsRef<str>>(&self, elems: &[S]) -> Result<Vec<usize>> {
        elems.iter().map(|e| self.index_of(e.as_ref())).collect()
    }

    /// Every `(a, b)` with `a <= b`, in index order.
    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect()
    }

    /// Elements `e` with `lo <= e <= hi`, in index order.
    pub fn interval_elements(&self, lo: usize, hi: usize) -> Result<Vec<usize>> {
        self.check_index(lo)?;
        self.check_index(hi)?;
        if !self.leq(lo, hi) {
            return Err(Error::NotBelow {
                lo: self.name(lo).to_string(),
                hi: self.name(hi).to_string(),
            });
        }
        Ok(self.down[hi].ones().filter(|&e| self.leq(lo, e)).collect())
    }

    /// The interval `[lo, hi]` as a lattice in its own right.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<FiniteLattice> {
        let elems = self.interval_elements(lo, hi)?;
        self.induced(&elems).map_err(Error::Invalid)
    }

    /// Subposet on `elems` (sorted by index) with the inherited order,
    /// validated as a lattice. Its bounds need not agree with the ambient
    /// ones.
    pub fn induced(&self, elems: &[usize]) -> std::result::Result<FiniteLattice, ValidationReport> {
        let mut elems = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        Self::from_order(names, |i, j| self.leq(elems[i], elems[j]))
    }
}

/// Greatest element of `sets[a] ∩ sets[b]` for every pair, where "greatest"
/// means its own set contains the whole intersection.
fn bound_table(
    sets: &[FixedBitSet],
    names: &[String],
    axiom: &str,
    what: &str,
    report: &mut ValidationReport,
) -> Vec<usize> {
    let n = sets.len();
    let mut table = vec![usize::MAX; n * n];
    for a in 0..n {
        for b in a..n {
            let mut common = sets[a].clone();
            common.intersect_with(&sets[b]);
            let found = common.ones().find(|&c| common.is_subset(&sets[c]));
            match found {
                Some(c) => {
                    table[a * n + b] = c;
                    table[b * n + a] = c;
                }
                None => {
                    if !report.has(axiom) {
                        report.push(
                            axiom,
                            format!("{what} for ({}, {})", names[a], names[b]),
                            [names[a].clone(), names[b].clone()],
                        );
                    }
                }
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(names: &[&str]) -> FiniteLattice {
        let covers: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        FiniteLattice::from_covers(names, &covers).unwrap()
    }

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["0", "a", "b", "I"],
            &[("0", "a"), ("0", "b"), ("a", "I"), ("b", "I")],
        )
        .unwrap()
    }

    #[test]
    fn three_chain_is_lattice() {
        let l = chain(&["0", "a", "I"]);
        assert_eq!(l.name(l.bottom()), "0");
        assert_eq!(l.name(l.top()), "I");
        assert_eq!(l.meet(&["a", "I"]).unwrap(), l.index_of("a").unwrap());
        assert_eq!(l.join(&["0", "a"]).unwrap(), l.index_of("a").unwrap());
    }

    #[test]
    fn diamond_bounds() {
        let l = diamond();
        assert_eq!(l.name(l.meet(&["a", "b"]).unwrap()), "0");
        assert_eq!(l.name(l.join(&["a", "b"]).unwrap()), "I");
        let empty: [&str; 0] = [];
        assert_eq!(l.name(l.meet(&empty).unwrap()), "I");
        assert_eq!(l.name(l.join(&empty).unwrap()), "0");
    }

    #[test]
    fn antichain_has_no_join() {
        let report = validate_lattice(&["a", "b"], &[("a", "a"), ("b", "b")]);
        assert!(!report.passed());
        let v = report
            .violations
            .iter()
            .find(|v| v.axiom == "join")
            .unwrap();
        assert_eq!(v.message, "no join for (a, b)");
    }

    #[test]
    fn poset_axiom_failures_reported() {
        let r = validate_lattice(&["a", "b"], &[("a", "a")]);
        assert!(r.has("reflexive"));
        let r = validate_lattice(
            &["a", "b"],
            &[("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")],
        );
        assert!(r.has("antisymmetric"));
        let r = validate_lattice(
            &["a", "b", "c"],
            &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")],
        );
        assert!(r.has("transitive"));
        let r = validate_lattice(&["a"], &[("a", "z")]);
        assert!(r.has("known-elements"));
        let r = validate_lattice::<&str>(&[], &[]);
        assert!(r.has("nonempty"));
    }

    #[test]
    fn unknown_element_is_input_error() {
        assert_eq!(
            diamond().meet(&["a", "q"]),
            Err(Error::UnknownElement("q".into()))
        );
    }

    #[test]
    fn intervals() {
        let d = diamond();
        let a = d.index_of("a").unwrap();
        let sub = d.interval(d.bottom(), a).unwrap();
        assert_eq!(sub.names(), ["0", "a"]);
        let whole = d.interval(d.bottom(), d.top()).unwrap();
        assert_eq!(whole, d);

        let c = chain(&["0", "a", "b", "I"]);
        let (ia, ib) = (c.index_of("a").unwrap(), c.index_of("b").unwrap());
        let sub = c.interval(ia, ib).unwrap();
        assert_eq!(sub.names(), ["a", "b"]);
        assert_eq!(sub.name(sub.bottom()), "a");
        assert!(matches!(c.interval(ib, ia), Err(Error::NotBelow { .. })));
    }

    #[test]
    fn lattice_laws_on_diamond_and_chain() {
        for l in [diamond(), chain(&["0", "a", "b", "I"])] {
            let n = l.len();
            for a in 0..n {
                assert_eq!(l.meet2(a, a), a);
                assert_eq!(l.join2(a, a), a);
                assert_eq!(l.meet2(a, l.top()), a);
                assert_eq!(l.join2(a, l.bottom()), a);
                for b in 0..n {
                    assert_eq!(l.meet2(a, b), l.meet2(b, a));
                    assert_eq!(l.join2(a, l.meet2(a, b)), a);
                    assert_eq!(l.meet2(a, l.join2(a, b)), a);
                    for c in 0..n {
                        assert_eq!(l.meet2(l.meet2(a, b), c), l.meet2(a, l.meet2(b, c)));
                        assert_eq!(l.join2(l.join2(a, b), c), l.join2(a, l.join2(b, c)));
                    }
                }
            }
        }
    }
}
