//! State property systems `(Σ, L, ξ)`: states, a complete lattice of
//! properties, and for each state the set of properties actual in it.

use std::collections::HashMap;

use crate::closure::FiniteClosureSpace;
use crate::error::{Error, Result};
use crate::order::{FiniteLattice, PointUniverse, SetFamily, Subset};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePropertySystem {
    states: PointUniverse,
    lattice: FiniteLattice,
    /// `kappa[a]`: states in which property `a` is actual. This is ξ stored
    /// column-wise; nothing is inferred from it during validation.
    kappa: Vec<Subset>,
    kappa_inv: HashMap<Subset, usize>,
}

/// Checks the three axioms on `xi` (indexed by state, listing element
/// indices) together with the derived facts that each ξ(p) is an up-set and
/// that the Cartan map is injective.
pub fn validate_sps(
    states: &PointUniverse,
    lattice: &FiniteLattice,
    xi: &[Vec<usize>],
) -> ValidationReport {
    let mut report = ValidationReport::new();
    if states.is_empty() {
        report.push("nonempty", "no states", []);
        return report;
    }
    if xi.len() != states.len() {
        report.push(
            "xi-total",
            format!("ξ given for {} of {} states", xi.len(), states.len()),
            [],
        );
        return report;
    }
    let n_props = lattice.len();
    for (p, props) in xi.iter().enumerate() {
        if let Some(&bad) = props.iter().find(|&&a| a >= n_props) {
            report.push(
                "xi-total",
                format!("ξ({}) names element index {bad}", states.label(p)),
                [states.label(p).to_string()],
            );
            return report;
        }
    }
    let kappa = kappa_from_xi(lattice, xi);
    let actual = |a: usize, p: usize| kappa[a].contains(p);
    let st = |p: usize| states.label(p).to_string();
    let el = |a: usize| lattice.name(a).to_string();

    if let Some(p) = (0..states.len()).find(|&p| actual(lattice.bottom(), p)) {
        report.push(
            "bottom-not-actual",
            format!("0 ∈ ξ({})", st(p)),
            [st(p), el(lattice.bottom())],
        );
    }

    'meet: for p in 0..states.len() {
        if !actual(lattice.top(), p) {
            report.push(
                "meet-closed",
                format!("I ∉ ξ({}) (empty meet)", st(p)),
                [st(p), el(lattice.top())],
            );
            break;
        }
        for a in 0..n_props {
            for b in a + 1..n_props {
                if actual(a, p) && actual(b, p) && !actual(lattice.meet2(a, b), p) {
                    let m = lattice.meet2(a, b);
                    report.push(
                        "meet-closed",
                        format!("{} ∧ {} = {} ∉ ξ({})", el(a), el(b), el(m), st(p)),
                        [st(p), el(a), el(b)],
                    );
                    break 'meet;
                }
            }
        }
    }

    'order: for a in 0..n_props {
        for b in 0..n_props {
            let le = lattice.leq(a, b);
            let incl = kappa[a].is_subset(kappa[b]);
            if le != incl {
                let message = if le {
                    format!("{} ≤ {} but κ({}) ⊄ κ({})", el(a), el(b), el(a), el(b))
                } else {
                    format!("κ({}) ⊆ κ({}) but {} ≰ {}", el(a), el(b), el(a), el(b))
                };
                report.push("order-cartan", message, [el(a), el(b)]);
                break 'order;
            }
        }
    }

    'up: for p in 0..states.len() {
        for a in 0..n_props {
            if !actual(a, p) {
                continue;
            }
            if let Some(b) = (0..n_props).find(|&b| lattice.leq(a, b) && !actual(b, p)) {
                report.push(
                    "upward-closed",
                    format!(
                        "{} ∈ ξ({}) and {} ≤ {} but {} ∉ ξ({})",
                        el(a),
                        st(p),
                        el(a),
                        el(b),
                        el(b),
                        st(p)
                    ),
                    [st(p), el(a), el(b)],
                );
                break 'up;
            }
        }
    }

    let mut seen: HashMap<Subset, usize> = HashMap::new();
    for (a, &k) in kappa.iter().enumerate() {
        if let Some(&b) = seen.get(&k) {
            report.push(
                "cartan-injective",
                format!("κ({}) = κ({})", el(b), el(a)),
                [el(b), el(a)],
            );
            break;
        }
        seen.insert(k, a);
    }
    report
}

fn kappa_from_xi(lattice: &FiniteLattice, xi: &[Vec<usize>]) -> Vec<Subset> {
    let mut kappa = vec![Subset::EMPTY; lattice.len()];
    for (p, props) in xi.iter().enumerate() {
        for &a in props {
            kappa[a].insert(p);
        }
    }
    kappa
}

impl StatePropertySystem {
    pub fn new(states: PointUniverse, lattice: FiniteLattice, xi: Vec<Vec<usize>>) -> Result<Self> {
        validate_sps(&states, &lattice, &xi).into_result()?;
        let kappa = kappa_from_xi(&lattice, &xi);
        let kappa_inv = kappa.iter().enumerate().map(|(a, &k)| (k, a)).collect();
        Ok(Self {
            states,
            lattice,
            kappa,
            kappa_inv,
        })
    }

    /// Builds a system from `(state, actual properties)` label lists.
    pub fn from_labels<S: AsRef<str>>(lattice: FiniteLattice, xi: &[(S, Vec<S>)]) -> Result<Self> {
        let states = PointUniverse::new(xi.iter().map(|(s, _)| s.as_ref().to_string()))?;
        let mut table = vec![Vec::new(); states.len()];
        for (s, props) in xi {
            let p = states.index_of(s.as_ref())?;
            table[p] = props
                .iter()
                .map(|a| lattice.index_of(a.as_ref()))
                .collect::<Result<_>>()?;
        }
        Self::new(states, lattice, table)
    }

    pub fn states(&self) -> &PointUniverse {
        &self.states
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn property_count(&self) -> usize {
        self.lattice.len()
    }

    pub fn property(&self, name: &str) -> Result<usize> {
        self.lattice.index_of(name)
    }

    pub fn state(&self, label: &str) -> Result<usize> {
        self.states.index_of(label)
    }

    pub fn is_actual(&self, a: usize, p: usize) -> bool {
        self.kappa[a].contains(p)
    }

    /// ξ(p) as element indices in lattice order.
    pub fn xi(&self, p: usize) -> Vec<usize> {
        (0..self.property_count())
            .filter(|&a| self.is_actual(a, p))
            .collect()
    }

    /// The Cartan map κ(a): states in which `a` is actual.
    pub fn cartan(&self, a: usize) -> Subset {
        self.kappa[a]
    }

    pub fn cartan_named(&self, name: &str) -> Result<Subset> {
        Ok(self.cartan(self.property(name)?))
    }

    /// The unique property with Cartan image `s`, if any.
    pub fn cartan_inverse(&self, s: Subset) -> Option<usize> {
        self.kappa_inv.get(&s).copied()
    }

    /// κ(L) in canonical order.
    pub fn cartan_image(&self) -> SetFamily {
        SetFamily::new(self.state_count(), self.kappa.iter().copied()).expect("κ(a) lies inside Σ")
    }

    /// `(Σ, κ(L))`.
    pub fn closure_space(&self) -> FiniteClosureSpace {
        FiniteClosureSpace::new(self.states.clone(), self.cartan_image())
            .expect("Cartan image of a valid system is a closure family")
    }

    /// s_ξ(p) = ∧ξ(p), the strongest property actual in `p`.
    pub fn strongest_property(&self, p: usize) -> usize {
        self.lattice.meet_all(self.xi(p))
    }

    pub fn strongest_property_named(&self, label: &str) -> Result<usize> {
        Ok(self.strongest_property(self.state(label)?))
    }

    /// Superselection by definition: whenever `a ∨ b` is actual, `a` or `b`
    /// is.
    pub fn ssr(&self, a: usize, b: usize) -> bool {
        let j = self.lattice.join2(a, b);
        (0..self.state_count())
            .all(|p| !self.is_actual(j, p) || self.is_actual(a, p) || self.is_actual(b, p))
    }

    /// Superselection via κ(a ∨ b) = κ(a) ∪ κ(b).
    pub fn ssr_via_cartan(&self, a: usize, b: usize) -> bool {
        self.cartan(self.lattice.join2(a, b)) == self.cartan(a).union(self.cartan(b))
    }

    pub fn ssr_named(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.ssr(self.property(a)?, self.property(b)?))
    }

    /// Every pair of properties is separated by a superselection rule.
    pub fn is_classical_sps(&self) -> bool {
        let n = self.property_count();
        (0..n).all(|a| (a + 1..n).all(|b| self.ssr(a, b)))
    }

    /// First `c` (in lattice order) with `a ∨ c = I`, `a ∧ c = 0` and
    /// `a ssr c`.
    pub fn classical_complement(&self, a: usize) -> Option<usize> {
        let l = &self.lattice;
        (0..l.len())
            .find(|&c| l.join2(a, c) == l.top() && l.meet2(a, c) == l.bottom() && self.ssr(a, c))
    }

    pub fn is_classical_property(&self, name: &str) -> Result<Option<usize>> {
        Ok(self.classical_complement(self.property(name)?))
    }

    /// Classical properties in lattice order.
    pub fn classical_properties(&self) -> Vec<usize> {
        (0..self.property_count())
            .filter(|&a| self.classical_complement(a).is_some())
            .collect()
    }

    /// 0 and I are the only classical properties.
    pub fn is_pure_nonclassical(&self) -> bool {
        let l = &self.lattice;
        self.classical_properties()
            .iter()
            .all(|&a| a == l.bottom() || a == l.top())
    }
}

/// Morphism `(m, n): source → target` with `m` on states (forward) and `n`
/// on properties (backward, from the target lattice to the source lattice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpsMorphism {
    source: StatePropertySystem,
    target: StatePropertySystem,
    state_map: Vec<usize>,
    property_map: Vec<usize>,
}

/// Checks `a ∈ ξ(m(p')) ⟺ n(a) ∈ ξ'(p')` for every target property `a`
/// and source state `p'`.
pub fn validate_morphism(
    state_map: &[usize],
    property_map: &[usize],
    source: &StatePropertySystem,
    target: &StatePropertySystem,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    if state_map.len() != source.state_count()
        || state_map.iter().any(|&q| q >= target.state_count())
    {
        report.push("state-map-total", "state map is not a function Σ' → Σ", []);
    }
    if property_map.len() != target.property_count()
        || property_map.iter().any(|&b| b >= source.property_count())
    {
        report.push(
            "property-map-total",
            "property map is not a function L → L'",
            [],
        );
    }
    if !report.passed() {
        return report;
    }
    for (a, &na) in property_map.iter().enumerate() {
        for (p, &mp) in state_map.iter().enumerate() {
            let lhs = target.is_actual(a, mp);
            let rhs = source.is_actual(na, p);
            if lhs != rhs {
                let (pa, pp) = (target.lattice().name(a), source.states().label(p));
                let message = format!(
                    "a = {pa}, p' = {pp}: a {} ξ(m(p')) but n(a) = {} {} ξ'(p')",
                    if lhs { "∈" } else { "∉" },
                    source.lattice().name(na),
                    if rhs { "∈" } else { "∉" },
                );
                report.push("morphism", message, [pa.to_string(), pp.to_string()]);
                return report;
            }
        }
    }
    report
}

impl SpsMorphism {
    pub fn new(
        source: StatePropertySystem,
        target: StatePropertySystem,
        state_map: Vec<usize>,
        property_map: Vec<usize>,
    ) -> Result<Self> {
        validate_morphism(&state_map, &property_map, &source, &target).into_result()?;
        Ok(Self {
            source,
            target,
            state_map,
            property_map,
        })
    }

    pub fn identity(sps: StatePropertySystem) -> Self {
        Self {
            state_map: (0..sps.state_count()).collect(),
            property_map: (0..sps.property_count()).collect(),
            source: sps.clone(),
            target: sps,
        }
    }

    pub fn source(&self) -> &StatePropertySystem {
        &self.source
    }

    pub fn target(&self) -> &StatePropertySystem {
        &self.target
    }

    pub fn state_map(&self) -> &[usize] {
        &self.state_map
    }

    pub fn property_map(&self) -> &[usize] {
        &self.property_map
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.state_map.iter().enumerate().all(|(i, &j)| i == j)
            && self.property_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `other ∘ self`: states go through `self` first, properties through
    /// `other` first.
    pub fn then(&self, other: &SpsMorphism) -> Result<SpsMorphism> {
        if self.target != other.source {
            return Err(Error::Input("morphisms do not compose".into()));
        }
        let state_map = self.state_map.iter().map(|&q| other.state_map[q]).collect();
        let property_map = other
            .property_map
            .iter()
            .map(|&b| self.property_map[b])
            .collect();
        Self::new(
            self.source.clone(),
            other.target.clone(),
            state_map,
            property_map,
        )
    }
}
