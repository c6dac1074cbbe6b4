//! Finite closure spaces: a point set with a family of closed subsets that
//! contains the empty set and the whole space and is closed under
//! intersection.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{intersection_closure, PointUniverse, SetFamily, Subset};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteClosureSpace {
    universe: PointUniverse,
    closed: SetFamily,
}

/// Total check of the closure-space axioms. The universe must be nonempty
/// and the whole space must itself be closed.
pub fn validate_closure_space(universe: &PointUniverse, family: &SetFamily) -> ValidationReport {
    let mut report = ValidationReport::new();
    if universe.is_empty() {
        report.push("nonempty", "closure space has no points", []);
        return report;
    }
    if family.universe_size() != universe.len() {
        report.push(
            "universe-size",
            format!(
                "family is over {} points but universe has {}",
                family.universe_size(),
                universe.len()
            ),
            [],
        );
        return report;
    }
    if !family.contains(Subset::EMPTY) {
        report.push("empty-closed", "∅ not closed", ["{}".to_string()]);
    }
    if !family.contains(universe.full()) {
        report.push(
            "full-closed",
            "X not closed",
            [universe.format_subset(universe.full())],
        );
    }
    let members = family.members();
    'outer: for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let c = a.intersection(b);
            if !family.contains(c) {
                report.push(
                    "intersection-closed",
                    format!(
                        "{} missing ({} ∩ {})",
                        universe.format_subset(c),
                        universe.format_subset(a),
                        universe.format_subset(b)
                    ),
                    [
                        universe.format_subset(a),
                        universe.format_subset(b),
                        universe.format_subset(c),
                    ],
                );
                break 'outer;
            }
        }
    }
    report
}

impl FiniteClosureSpace {
    pub fn new(universe: PointUniverse, closed: SetFamily) -> Result<Self> {
        validate_closure_space(&universe, &closed).into_result()?;
        Ok(Self { universe, closed })
    }

    /// Builds a space from point labels and closed sets given as label lists.
    pub fn from_labels<S: AsRef<str>>(points: &[S], closed: &[Vec<S>]) -> Result<Self> {
        let universe = PointUniverse::new(points.iter().map(|p| p.as_ref().to_string()))?;
        let sets = closed
            .iter()
            .map(|c| universe.subset(c))
            .collect::<Result<Vec<_>>>()?;
        let family = SetFamily::new(universe.len(), sets)?;
        Self::new(universe, family)
    }

    /// Discrete space on `x1..xn`: every subset closed.
    pub fn discrete(n: usize) -> Result<Self> {
        let universe = PointUniverse::numbered(n)?;
        if n > 16 {
            return Err(Error::SizeCap {
                what: "discrete space",
                size: n,
                cap: 16,
            });
        }
        let family = SetFamily::new(n, (0..1u64 << n).map(Subset::from_bits))?;
        Self::new(universe, family)
    }

    /// Indiscrete space on `x1..xn`: only ∅ and X closed.
    pub fn indiscrete(n: usize) -> Result<Self> {
        let universe = PointUniverse::numbered(n)?;
        let family = SetFamily::new(n, [Subset::EMPTY, Subset::full(n)])?;
        Self::new(universe, family)
    }

    pub fn universe(&self) -> &PointUniverse {
        &self.universe
    }

    pub fn closed(&self) -> &SetFamily {
        &self.closed
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn full(&self) -> Subset {
        self.universe.full()
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        self.closed.contains(a)
    }

    pub fn is_open(&self, a: Subset) -> bool {
        self.closed.contains(a.complement(self.len()))
    }

    pub fn is_clopen(&self, a: Subset) -> bool {
        self.is_closed(a) && self.is_open(a)
    }

    /// Smallest closed superset of `a`.
    pub fn closure_of(&self, a: Subset) -> Subset {
        self.closed
            .iter()
            .filter(|f| a.is_subset(*f))
            .fold(self.full(), Subset::intersection)
    }

    pub fn clopen_sets(&self) -> SetFamily {
        let n = self.len();
        SetFamily::new(n, self.closed.iter().filter(|&a| self.is_open(a)))
            .expect("members come from a valid family")
    }

    /// Closed under pairwise unions, i.e. the closed sets form a topology.
    pub fn is_topological(&self) -> bool {
        let m = self.closed.members();
        m.iter()
            .enumerate()
            .all(|(i, &a)| m[i + 1..].iter().all(|&b| self.is_closed(a.union(b))))
    }

    pub fn is_connected(&self) -> bool {
        self.first_proper_clopen_in(self.full()).is_none()
    }

    /// Subspace on `a` with closed sets `{F ∩ a}`, relabeled to `a`'s points.
    pub fn induced_subspace(&self, a: Subset) -> Result<FiniteClosureSpace> {
        if a.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !a.is_subset(self.full()) {
            return Err(Error::Input(format!("{a:?} is not a subset of the space")));
        }
        let universe = self.universe.restrict(a);
        let family = SetFamily::new(
            a.len(),
            self.closed.iter().map(|f| compress(f.intersection(a), a)),
        )?;
        Self::new(universe, family)
    }

    /// First proper nonempty clopen of the subspace on `a`, expressed in the
    /// ambient universe. Traces are scanned in canonical order.
    fn first_proper_clopen_in(&self, a: Subset) -> Option<Subset> {
        let traces = SetFamily::new(self.len(), self.closed.iter().map(|f| f.intersection(a)))
            .expect("traces stay inside the universe");
        let found = traces
            .iter()
            .filter(|t| !t.is_empty() && *t != a)
            .find(|&t| traces.contains(a.difference(t)));
        found
    }

    /// Partition into connection components by recursive clopen splitting.
    pub fn components(&self) -> Partition {
        let mut blocks = Vec::new();
        let mut stack = vec![self.full()];
        while let Some(a) = stack.pop() {
            match self.first_proper_clopen_in(a) {
                None => blocks.push(a),
                Some(t) => {
                    stack.push(a.difference(t));
                    stack.push(t);
                }
            }
        }
        Partition::new(self.len(), blocks).expect("clopen splitting yields a partition")
    }

    pub fn is_totally_disconnected(&self) -> bool {
        self.components().blocks().iter().all(|b| b.len() == 1)
    }

    /// Quotient by `partition`: a set of blocks is closed iff its union is
    /// closed. Blocks are labeled `{a,b,...}` by their members.
    pub fn quotient_space(&self, partition: &Partition) -> Result<FiniteClosureSpace> {
        Ok(self.quotient_with_projection(partition)?.0)
    }

    /// Quotient together with the canonical surjection, as point indices of
    /// the quotient.
    pub fn quotient_with_projection(
        &self,
        partition: &Partition,
    ) -> Result<(FiniteClosureSpace, Vec<usize>)> {
        if partition.universe_size() != self.len() {
            return Err(Error::Input(format!(
                "partition is over {} points, space has {}",
                partition.universe_size(),
                self.len()
            )));
        }
        let labels: Vec<String> = partition
            .blocks()
            .iter()
            .map(|&b| self.universe.format_subset(b))
            .collect();
        let universe = PointUniverse::new(labels.clone())?;
        // block index -> quotient point index
        let block_point: Vec<usize> = labels
            .iter()
            .map(|l| universe.index_of(l))
            .collect::<Result<_>>()?;
        let projection: Vec<usize> = (0..self.len())
            .map(|p| block_point[partition.block_of(p)])
            .collect();
        let closed = self
            .closed
            .iter()
            .filter(|&f| partition.is_saturated(f))
            .map(|f| f.image(&projection));
        let family = SetFamily::new(universe.len(), closed)?;
        Ok((Self::new(universe, family)?, projection))
    }

    pub fn is_zero_dimensional(&self) -> bool {
        let core = intersection_closure(&self.clopen_sets());
        self.closed.iter().all(|f| core.contains(f))
    }

    /// Same points, closed sets = all intersections of clopens.
    pub fn zero_dimensional_core(&self) -> FiniteClosureSpace {
        let family = intersection_closure(&self.clopen_sets());
        Self::new(self.universe.clone(), family)
            .expect("intersections of clopens form a closure family")
    }

    pub fn format_subset(&self, s: Subset) -> String {
        self.universe.format_subset(s)
    }
}

impl fmt::Display for FiniteClosureSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.closed.iter().map(|s| self.format_subset(s)).collect();
        write!(
            f,
            "({}; {})",
            self.format_subset(self.full()),
            sets.join(", ")
        )
    }
}

/// Bits of `s` renumbered to their rank inside `within`.
pub(crate) fn compress(s: Subset, within: Subset) -> Subset {
    Subset::from_indices(
        within
            .iter()
            .enumerate()
            .filter(|&(_, p)| s.contains(p))
            .map(|(j, _)| j),
    )
}

/// Partition of an `n`-point universe into nonempty disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: SetFamily,
    owner: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let blocks: Vec<Subset> = blocks.into_iter().collect();
        let count = blocks.len();
        let blocks = SetFamily::new(n, blocks)?;
        if blocks.len() != count || blocks.iter().any(Subset::is_empty) {
            return Err(Error::Input(
                "partition blocks must be nonempty and distinct".into(),
            ));
        }
        let mut owner = vec![usize::MAX; n];
        for (bi, b) in blocks.iter().enumerate() {
            for p in b.iter() {
                if owner[p] != usize::MAX {
                    return Err(Error::Input(format!("point {p} lies in two blocks")));
                }
                owner[p] = bi;
            }
        }
        if let Some(p) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Input(format!("point {p} is in no block")));
        }
        Ok(Self { blocks, owner })
    }

    pub fn universe_size(&self) -> usize {
        self.owner.len()
    }

    pub fn blocks(&self) -> &[Subset] {
        self.blocks.members()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index (in canonical block order) of the block holding point `p`.
    pub fn block_of(&self, p: usize) -> usize {
        self.owner[p]
    }

    /// True if `s` is a union of blocks.
    pub fn is_saturated(&self, s: Subset) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_subset(s) || b.is_disjoint(s))
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks()
            .iter()
            .all(|&b| coarser.blocks().iter().any(|&c| b.is_subset(c)))
    }
}

/// Map between closure spaces under which every closed preimage is closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    domain: FiniteClosureSpace,
    codomain: FiniteClosureSpace,
    mapping: Vec<usize>,
}

/// True iff every closed set of `codomain` pulls back to a closed set of
/// `domain`.
pub fn is_continuous(
    mapping: &[usize],
    domain: &FiniteClosureSpace,
    codomain: &FiniteClosureSpace,
) -> Result<bool> {
    if mapping.len() != domain.len() {
        return Err(Error::Input(format!(
            "map has {} entries for {} domain points",
            mapping.len(),
            domain.len()
        )));
    }
    if let Some(&bad) = mapping.iter().find(|&&q| q >= codomain.len()) {
        return Err(Error::Input(format!("map target {bad} outside codomain")));
    }
    Ok(codomain
        .closed()
        .iter()
        .all(|b| domain.is_closed(b.preimage(mapping))))
}

impl ContinuousMap {
    pub fn new(
        domain: FiniteClosureSpace,
        codomain: FiniteClosureSpace,
        mapping: Vec<usize>,
    ) -> Result<Self> {
        if !is_continuous(&mapping, &domain, &codomain)? {
            return Err(Error::Input("map is not continuous".into()));
        }
        Ok(Self {
            domain,
            codomain,
            mapping,
        })
    }

    /// Map given as `(domain label, codomain label)` pairs covering the
    /// domain.
    pub fn from_labels<S: AsRef<str>>(
        domain: FiniteClosureSpace,
        codomain: FiniteClosureSpace,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut mapping = vec![usize::MAX; domain.len()];
        for (a, b) in pairs {
            let i = domain.universe().index_of(a.as_ref())?;
            mapping[i] = codomain.universe().index_of(b.as_ref())?;
        }
        if let Some(p) = mapping.iter().position(|&m| m == usize::MAX) {
            return Err(Error::Input(format!(
                "map undefined on `{}`",
                domain.universe().label(p)
            )));
        }
        Self::new(domain, codomain, mapping)
    }

    pub fn identity(space: FiniteClosureSpace) -> Self {
        let mapping = (0..space.len()).collect();
        Self {
            domain: space.clone(),
            codomain: space,
            mapping,
        }
    }

    pub fn domain(&self) -> &FiniteClosureSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteClosureSpace {
        &self.codomain
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn preimage(&self, b: Subset) -> Subset {
        b.preimage(&self.mapping)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ContinuousMap) -> Result<ContinuousMap> {
        if self.codomain != other.domain {
            return Err(Error::Input("maps do not compose".into()));
        }
        let mapping = self.mapping.iter().map(|&q| other.mapping[q]).collect();
        Self::new(self.domain.clone(), other.codomain.clone(), mapping)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e1, e2, e3, e4, e5, one_point};

    fn sets(space: &FiniteClosureSpace, sets: &[&[&str]]) -> SetFamily {
        SetFamily::new(
            space.len(),
            sets.iter()
                .map(|s| space.universe().subset(s.iter()).unwrap()),
        )
        .unwrap()
    }

    fn sub(space: &FiniteClosureSpace, labels: &[&str]) -> Subset {
        space.universe().subset(labels).unwrap()
    }

    #[test]
    fn validation_examples() {
        let u = PointUniverse::numbered(3).unwrap();
        assert!(validate_closure_space(e1().universe(), e1().closed()).passed());

        let missing_x = SetFamily::new(
            3,
            [Subset::EMPTY, Subset::singleton(0), Subset::singleton(1)],
        )
        .unwrap();
        let r = validate_closure_space(&u, &missing_x);
        assert!(r.has("full-closed"));
        assert_eq!(r.violations[0].message, "X not closed");

        let not_closed = SetFamily::new(
            3,
            [
                Subset::EMPTY,
                Subset::from_indices([0, 1]),
                Subset::from_indices([1, 2]),
                Subset::full(3),
            ],
        )
        .unwrap();
        let r = validate_closure_space(&u, &not_closed);
        assert!(r.has("intersection-closed"));
        assert!(r.violations[0].message.starts_with("{x2} missing"));

        let missing_empty = SetFamily::new(3, [Subset::full(3)]).unwrap();
        assert!(validate_closure_space(&u, &missing_empty).has("empty-closed"));

        let empty = PointUniverse::new(Vec::<String>::new()).unwrap();
        let r = validate_closure_space(&empty, &SetFamily::new(0, [Subset::EMPTY]).unwrap());
        assert!(r.has("nonempty"));
    }

    #[test]
    fn closure_examples() {
        let s3 = e3();
        assert_eq!(s3.closure_of(sub(&s3, &["x1", "x2"])), s3.full());
        let s1 = e1();
        assert_eq!(
            s1.closure_of(sub(&s1, &["x1", "x2"])),
            sub(&s1, &["x1", "x2"])
        );
        assert_eq!(s1.closure_of(Subset::EMPTY), Subset::EMPTY);
    }

    #[test]
    fn clopen_examples() {
        let s2 = e2();
        assert_eq!(
            s2.clopen_sets(),
            sets(&s2, &[&[], &["x1"], &["x2", "x3"], &["x1", "x2", "x3"]])
        );
        let s3 = e3();
        assert_eq!(s3.clopen_sets(), sets(&s3, &[&[], &["x1", "x2", "x3"]]));
        assert_eq!(e4().clopen_sets().len(), 4);
    }

    #[test]
    fn topological_examples() {
        assert!(e1().is_topological());
        assert!(!e3().is_topological());
        assert!(e4().is_topological());
    }

    #[test]
    fn connected_examples() {
        assert!(e3().is_connected());
        assert!(!e2().is_connected());
        assert!(one_point().is_connected());
    }

    #[test]
    fn induced_examples() {
        let s2 = e2();
        let a = s2.induced_subspace(sub(&s2, &["x2", "x3"])).unwrap();
        assert_eq!(a.universe().labels(), ["x2", "x3"]);
        assert_eq!(a.closed().members(), [Subset::EMPTY, Subset::full(2)]);

        assert_eq!(s2.induced_subspace(s2.full()).unwrap(), s2);

        let s1 = e1();
        let b = s1.induced_subspace(sub(&s1, &["x1", "x3"])).unwrap();
        assert_eq!(b.universe().labels(), ["x1", "x3"]);
        assert_eq!(
            b.closed().members(),
            [Subset::EMPTY, Subset::singleton(0), Subset::full(2)]
        );
        assert_eq!(s1.induced_subspace(Subset::EMPTY), Err(Error::EmptySubset));
    }

    #[test]
    fn component_examples() {
        let s2 = e2();
        assert_eq!(
            s2.components().blocks(),
            [sub(&s2, &["x1"]), sub(&s2, &["x2", "x3"])]
        );
        assert_eq!(e3().components().blocks(), [e3().full()]);
        assert_eq!(
            e4().components().blocks(),
            [Subset::singleton(0), Subset::singleton(1)]
        );
    }

    #[test]
    fn quotient_examples() {
        let s2 = e2();
        let q = s2.quotient_space(&s2.components()).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.closed().len(), 4);
        assert_eq!(q.universe().labels(), ["{x1}", "{x2,x3}"]);

        let one = Partition::new(3, [Subset::full(3)]).unwrap();
        let q = e1().quotient_space(&one).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.closed().members(), [Subset::EMPTY, Subset::full(1)]);

        let s1 = e1();
        let p = Partition::new(3, [sub(&s1, &["x1"]), sub(&s1, &["x2", "x3"])]).unwrap();
        let (q, proj) = s1.quotient_with_projection(&p).unwrap();
        let b1 = Subset::singleton(proj[0]);
        assert_eq!(q.closed().members(), [Subset::EMPTY, b1, Subset::full(2)]);
    }

    #[test]
    fn totally_disconnected_examples() {
        assert!(e4().is_totally_disconnected());
        assert!(!e3().is_totally_disconnected());
        let s2 = e2();
        assert!(s2
            .quotient_space(&s2.components())
            .unwrap()
            .is_totally_disconnected());
    }

    #[test]
    fn zero_dimensional_examples() {
        assert!(e4().is_zero_dimensional());
        assert!(!e5().is_zero_dimensional());
        assert!(e2().is_zero_dimensional());
        assert_eq!(
            e5().zero_dimensional_core().closed().members(),
            [Subset::EMPTY, Subset::full(3)]
        );
        assert_eq!(e4().zero_dimensional_core(), e4());
        assert_eq!(e2().zero_dimensional_core(), e2());
    }

    #[test]
    fn continuity_examples() {
        assert!(is_continuous(&[0, 1, 2], &e1(), &e1()).unwrap());
        assert!(is_continuous(&[0, 0, 0], &e3(), &e4()).unwrap());
        // preimages of ∅, {x1}, {x1,x2}, X are ∅, {x1}, {x1}, X: all closed in E4
        assert!(is_continuous(&[0, 2], &e4(), &e5()).unwrap());
        // swapping x1 and x2 pulls {x1} back to {x2}
        assert!(!is_continuous(&[1, 0, 2], &e5(), &e5()).unwrap());
        assert!(is_continuous(&[0, 5], &e4(), &e5()).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, [Subset::singleton(0)]).is_err());
        assert!(Partition::new(2, [Subset::full(2), Subset::singleton(0)]).is_err());
        assert!(Partition::new(2, [Subset::EMPTY, Subset::full(2)]).is_err());
    }

    #[test]
    fn compress_renumbers_within() {
        let within = Subset::from_indices([1, 3, 4]);
        assert_eq!(
            compress(Subset::from_indices([3, 4]), within),
            Subset::from_indices([1, 2])
        );
        assert_eq!(
            compress(Subset::from_indices([0, 1]), within),
            Subset::singleton(0)
        );
    }
}
