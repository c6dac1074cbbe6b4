//! Splitting a state property system along the connection components of
//! its closure space: one pure nonclassical system per component, a totally
//! classical system over the set of components, and the classical part.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::closure::Partition;
use crate::equivalence::{functor_f, functor_g, sps_isomorphic};
use crate::error::{Error, Result};
use crate::order::{PointUniverse, Subset};
use crate::report::{Evidence, ValidationReport, Verdict};
use crate::sps::StatePropertySystem;

/// The system living on one component `omega`, with lattice `[0, s(ω)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSystem {
    pub omega: Subset,
    pub s_omega: usize,
    pub sps: StatePropertySystem,
}

/// Why the quotient system over the components could not be built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    /// Two states of one component disagree on a property of `C`.
    IllDefined {
        state: String,
        other: String,
        property: String,
    },
    /// `C` with the inherited order is not a lattice.
    NotALattice { report: ValidationReport },
    /// `(Ω, C, η)` violates an axiom.
    Axioms { report: ValidationReport },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::IllDefined {
                state,
                other,
                property,
            } => write!(
                f,
                "{state} and {other} share a component but disagree on {property}"
            ),
            Counterexample::NotALattice { report } => write!(f, "C is not a lattice: {report}"),
            Counterexample::Axioms { report } => write!(f, "quotient system invalid: {report}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TotallyClassical {
    System(StatePropertySystem),
    Counterexample(Counterexample),
}

impl TotallyClassical {
    pub fn system(&self) -> Option<&StatePropertySystem> {
        match self {
            TotallyClassical::System(s) => Some(s),
            TotallyClassical::Counterexample(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub source: StatePropertySystem,
    pub omegas: Partition,
    pub components: Vec<ComponentSystem>,
    pub totally_classical: TotallyClassical,
    pub via_quotient: StatePropertySystem,
    pub classical_part: StatePropertySystem,
    pub evidence: Evidence,
}

/// Connection components of `F(sps)`.
pub fn components_of(sps: &StatePropertySystem) -> Partition {
    functor_f(sps).components()
}

/// The property whose Cartan image is the block `omega`.
pub fn component_property(sps: &StatePropertySystem, omega: Subset) -> Result<usize> {
    sps.cartan_inverse(omega).ok_or_else(|| {
        Error::Internal(format!(
            "{} is not the Cartan image of any property",
            sps.states().format_subset(omega)
        ))
    })
}

/// Restriction of `sps` to the states in `states` and the properties in
/// `elems` (with inherited order), with `ξ(p) ∩ elems`.
fn restrict(
    sps: &StatePropertySystem,
    states: Subset,
    elems: &BTreeSet<usize>,
) -> Result<StatePropertySystem> {
    let elems: Vec<usize> = elems.iter().copied().collect();
    let lattice = sps.lattice().induced(&elems).map_err(Error::Invalid)?;
    let universe = sps.states().restrict(states);
    let xi = states
        .iter()
        .map(|p| {
            elems
                .iter()
                .enumerate()
                .filter(|&(_, &a)| sps.is_actual(a, p))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    StatePropertySystem::new(universe, lattice, xi)
}

/// Sub-system over `[0, c]` with states `κ(c)`.
pub fn segment_system(sps: &StatePropertySystem, c: usize) -> Result<StatePropertySystem> {
    let l = sps.lattice();
    l.check_index(c)?;
    if c == l.bottom() {
        return Err(Error::Input("the segment over 0 has no states".into()));
    }
    let states = sps.cartan(c);
    if states.is_empty() {
        return Err(Error::Internal(format!(
            "κ({}) is empty although {} is not 0",
            l.name(c),
            l.name(c)
        )));
    }
    let elems = l.interval_elements(l.bottom(), c)?.into_iter().collect();
    restrict(sps, states, &elems)
}

pub fn component_systems(sps: &StatePropertySystem) -> Result<Vec<ComponentSystem>> {
    components_of(sps)
        .blocks()
        .iter()
        .map(|&omega| {
            let s_omega = component_property(sps, omega)?;
            Ok(ComponentSystem {
                omega,
                s_omega,
                sps: segment_system(sps, s_omega)?,
            })
        })
        .collect()
}

/// `(Ω, C, η)` where `C` holds every join of component properties and
/// `η(ω(p)) = ξ(p) ∩ C`. Every step is checked; a failure comes back as a
/// counterexample instead of a system.
pub fn totally_classical_system(sps: &StatePropertySystem) -> Result<TotallyClassical> {
    let omegas = components_of(sps);
    let l = sps.lattice();
    let generators = omegas
        .blocks()
        .iter()
        .map(|&w| component_property(sps, w))
        .collect::<Result<Vec<_>>>()?;
    let mut joins = BTreeSet::from([l.bottom()]);
    for &g in &generators {
        let next: Vec<usize> = joins.iter().map(|&x| l.join2(x, g)).collect();
        joins.extend(next);
    }
    let c: Vec<usize> = joins.into_iter().collect();

    for block in omegas.blocks() {
        let mut members = block.iter();
        let rep = members.next().expect("blocks are nonempty");
        for q in members {
            if let Some(&a) = c
                .iter()
                .find(|&&a| sps.is_actual(a, rep) != sps.is_actual(a, q))
            {
                return Ok(TotallyClassical::Counterexample(
                    Counterexample::IllDefined {
                        state: sps.states().label(rep).to_string(),
                        other: sps.states().label(q).to_string(),
                        property: l.name(a).to_string(),
                    },
                ));
            }
        }
    }

    let lattice = match l.induced(&c) {
        Ok(lat) => lat,
        Err(report) => {
            return Ok(TotallyClassical::Counterexample(
                Counterexample::NotALattice { report },
            ))
        }
    };
    let labels: Vec<String> = omegas
        .blocks()
        .iter()
        .map(|&b| sps.states().format_subset(b))
        .collect();
    let states = PointUniverse::new(labels.clone())?;
    let mut eta = vec![Vec::new(); states.len()];
    for (label, block) in labels.iter().zip(omegas.blocks()) {
        let rep = block.first().expect("blocks are nonempty");
        eta[states.index_of(label)?] = c
            .iter()
            .enumerate()
            .filter(|&(_, &a)| sps.is_actual(a, rep))
            .map(|(i, _)| i)
            .collect();
    }
    match StatePropertySystem::new(states, lattice, eta) {
        Ok(system) => Ok(TotallyClassical::System(system)),
        Err(Error::Invalid(report)) => {
            Ok(TotallyClassical::Counterexample(Counterexample::Axioms {
                report,
            }))
        }
        Err(e) => Err(e),
    }
}

/// `G` of the quotient of `F(sps)` by its components.
pub fn totally_classical_via_quotient(sps: &StatePropertySystem) -> Result<StatePropertySystem> {
    let space = functor_f(sps);
    let quotient = space.quotient_space(&space.components())?;
    Ok(functor_g(&quotient))
}

/// `(Σ, C', ξ ∩ C')` where `C'` holds every meet of classical properties.
pub fn classical_part(sps: &StatePropertySystem) -> Result<StatePropertySystem> {
    let l = sps.lattice();
    let mut meets = BTreeSet::from([l.top()]);
    for a in sps.classical_properties() {
        let next: Vec<usize> = meets.iter().map(|&x| l.meet2(x, a)).collect();
        meets.extend(next);
    }
    restrict(sps, sps.states().full(), &meets)
}

/// Runs every construction and records the cross-checks that tie them
/// together.
pub fn decompose(sps: &StatePropertySystem) -> Result<Decomposition> {
    let space = functor_f(sps);
    let omegas = space.components();
    let components = component_systems(sps)?;
    let totally_classical = totally_classical_system(sps)?;
    let via_quotient = totally_classical_via_quotient(sps)?;
    let classical = classical_part(sps)?;
    let l = sps.lattice();
    let st = sps.states();
    let mut ev = Evidence::default();

    ev.check(
        "components-closed",
        omegas.blocks().iter().all(|&b| space.is_closed(b)),
        || "a component is not closed".into(),
    );

    for cs in &components {
        let name = st.format_subset(cs.omega);
        ev.check(
            format!("component-pure {name}"),
            cs.sps.is_pure_nonclassical(),
            || format!("component {name} has a proper classical property"),
        );
        let induced = space.induced_subspace(cs.omega)?;
        ev.check(
            format!("component-matches-trace {name}"),
            sps_isomorphic(&cs.sps, &functor_g(&induced)).is_some(),
            || format!("component {name} is not isomorphic to G of its induced subspace"),
        );
    }

    let mut trace_failure = None;
    let mut recon_failure = None;
    for a in 0..l.len() {
        for cs in &components {
            if sps.cartan(a).intersection(cs.omega) != sps.cartan(l.meet2(a, cs.s_omega)) {
                trace_failure.get_or_insert_with(|| {
                    format!("a = {}, ω = {}", l.name(a), st.format_subset(cs.omega))
                });
            }
        }
        let rebuilt = l.join_all(components.iter().map(|cs| l.meet2(a, cs.s_omega)));
        if rebuilt != a {
            recon_failure
                .get_or_insert_with(|| format!("a = {} rebuilt as {}", l.name(a), l.name(rebuilt)));
        }
    }
    ev.record("trace-identity", verdict_of(trace_failure));
    ev.record("reconstruction", verdict_of(recon_failure));

    match &totally_classical {
        TotallyClassical::System(tc) => {
            let mut bad = None;
            for cs in &components {
                let s = tc.property(l.name(cs.s_omega))?;
                let seg = segment_system(tc, s)?;
                if seg.property_count() != 2 {
                    bad.get_or_insert_with(|| {
                        format!(
                            "segment over {} has {} properties",
                            l.name(cs.s_omega),
                            seg.property_count()
                        )
                    });
                }
            }
            ev.record("totally-classical-segments-trivial", verdict_of(bad));
            ev.check(
                "totally-classical-matches-quotient",
                sps_isomorphic(tc, &via_quotient).is_some(),
                || "(Ω, C, η) is not isomorphic to G of the quotient".into(),
            );
        }
        TotallyClassical::Counterexample(cx) => {
            let reason = format!("construction refuted: {cx:?}");
            ev.record(
                "totally-classical-segments-trivial",
                Verdict::NotApplicable {
                    reason: reason.clone(),
                },
            );
            ev.record(
                "totally-classical-matches-quotient",
                Verdict::NotApplicable { reason },
            );
        }
    }
    ev.check(
        "quotient-totally-disconnected",
        functor_f(&via_quotient).is_totally_disconnected(),
        || "quotient by the components has a nontrivial component".into(),
    );

    let core = space.zero_dimensional_core();
    let classical_space = functor_f(&classical);
    ev.check(
        "classical-part-equals-core",
        classical_space == core,
        || format!("κ(C') = {classical_space} but core = {core}"),
    );
    ev.check(
        "classical-part-zero-dimensional",
        classical_space.is_zero_dimensional(),
        || "F(classical part) is not zero-dimensional".into(),
    );
    ev.check(
        "clopens-preserved",
        space
            .clopen_sets()
            .iter()
            .all(|c| classical_space.is_clopen(c)),
        || "a clopen of F(S) is not clopen in the classical part".into(),
    );
    ev.check(
        "classical-part-idempotent",
        sps_isomorphic(&classical_part(&classical)?, &classical).is_some(),
        || "classical part of the classical part differs".into(),
    );

    let classicals = sps.classical_properties();
    let agree = omegas.blocks().iter().all(|b| {
        let rep = b.first().expect("nonempty");
        b.iter().all(|q| {
            classicals
                .iter()
                .all(|&a| sps.is_actual(a, rep) == sps.is_actual(a, q))
        })
    });
    ev.check("classical-properties-constant-on-components", agree, || {
        "two states of one component disagree on a classical property".into()
    });

    if sps.is_classical_sps() && space.is_totally_disconnected() {
        let iso = totally_classical
            .system()
            .is_some_and(|tc| sps_isomorphic(tc, sps).is_some());
        ev.check("totally-classical-input-fixed", iso, || {
            "classical, totally disconnected input not reproduced".into()
        });
    } else {
        ev.record(
            "totally-classical-input-fixed",
            Verdict::NotApplicable {
                reason: "input not classical and totally disconnected".into(),
            },
        );
    }

    Ok(Decomposition {
        source: sps.clone(),
        omegas,
        components,
        totally_classical,
        via_quotient,
        classical_part: classical,
        evidence: ev,
    })
}

fn verdict_of(failure: Option<String>) -> Verdict {
    match failure {
        None => Verdict::Pass,
        Some(witness) => Verdict::Fail { witness },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e1, e2, e3, e4, e5};

    fn prop(s: &StatePropertySystem, labels: &[&str]) -> usize {
        s.cartan_inverse(s.states().subset(labels).unwrap())
            .unwrap()
    }

    fn names(s: &StatePropertySystem) -> Vec<&str> {
        s.lattice().names().iter().map(String::as_str).collect()
    }

    #[test]
    fn component_property_examples() {
        let s2 = functor_g(&e2());
        let x1 = s2.states().subset(["x1"]).unwrap();
        assert_eq!(component_property(&s2, x1).unwrap(), prop(&s2, &["x1"]));
        let s3 = functor_g(&e3());
        assert_eq!(
            component_property(&s3, s3.states().full()).unwrap(),
            s3.lattice().top()
        );
        let s4 = functor_g(&e4());
        let x2 = s4.states().subset(["x2"]).unwrap();
        assert_eq!(component_property(&s4, x2).unwrap(), prop(&s4, &["x2"]));
        let bad = s3.states().subset(["x2", "x3"]).unwrap();
        assert!(matches!(
            component_property(&s3, bad),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn component_system_examples() {
        let cs = component_systems(&functor_g(&e2())).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].sps.states().labels(), ["x1"]);
        assert_eq!(names(&cs[0].sps), ["{}", "{x1}"]);
        assert_eq!(cs[1].sps.states().labels(), ["x2", "x3"]);
        assert_eq!(names(&cs[1].sps), ["{}", "{x2,x3}"]);
        assert!(cs.iter().all(|c| c.sps.is_pure_nonclassical()));

        let s3 = functor_g(&e3());
        let cs = component_systems(&s3).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].sps, s3);

        let cs = component_systems(&functor_g(&e4())).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs
            .iter()
            .all(|c| c.sps.property_count() == 2 && c.sps.state_count() == 1));
    }

    #[test]
    fn totally_classical_examples() {
        let TotallyClassical::System(tc) = totally_classical_system(&functor_g(&e2())).unwrap()
        else {
            panic!("E2 should give a system");
        };
        assert_eq!(tc.state_count(), 2);
        assert_eq!(names(&tc), ["{}", "{x1}", "{x2,x3}", "{x1,x2,x3}"]);
        let w1 = tc.state("{x1}").unwrap();
        let eta: Vec<&str> = tc.xi(w1).iter().map(|&a| tc.lattice().name(a)).collect();
        assert_eq!(eta, ["{x1}", "{x1,x2,x3}"]);

        let tc3 = totally_classical_system(&functor_g(&e3())).unwrap();
        let tc3 = tc3.system().unwrap();
        assert_eq!(tc3.state_count(), 1);
        assert_eq!(tc3.property_count(), 2);

        let s4 = functor_g(&e4());
        let tc4 = totally_classical_system(&s4).unwrap();
        assert!(sps_isomorphic(tc4.system().unwrap(), &s4).is_some());
    }

    #[test]
    fn quotient_route_examples() {
        let q = totally_classical_via_quotient(&functor_g(&e2())).unwrap();
        assert!(functor_f(&q).is_topological());
        assert_eq!(q.property_count(), 4);
        assert_eq!(
            totally_classical_via_quotient(&functor_g(&e3()))
                .unwrap()
                .state_count(),
            1
        );
        assert_eq!(
            totally_classical_via_quotient(&functor_g(&e1()))
                .unwrap()
                .state_count(),
            1
        );
    }

    #[test]
    fn segment_examples() {
        let s2 = functor_g(&e2());
        let seg = segment_system(&s2, prop(&s2, &["x1"])).unwrap();
        assert_eq!(seg.state_count(), 1);
        assert_eq!(names(&seg), ["{}", "{x1}"]);
        assert_eq!(segment_system(&s2, s2.lattice().top()).unwrap(), s2);
        assert!(matches!(
            segment_system(&s2, s2.lattice().bottom()),
            Err(Error::Input(_))
        ));

        let tc = totally_classical_system(&functor_g(&e4())).unwrap();
        let tc = tc.system().unwrap();
        let s1 = tc.property("{x1}").unwrap();
        let seg = segment_system(tc, s1).unwrap();
        assert_eq!(names(&seg), ["{}", "{x1}"]);
    }

    #[test]
    fn classical_part_examples() {
        let cp = classical_part(&functor_g(&e5())).unwrap();
        assert_eq!(names(&cp), ["{}", "{x1,x2,x3}"]);
        let s2 = functor_g(&e2());
        assert_eq!(classical_part(&s2).unwrap(), s2);
        let s4 = functor_g(&e4());
        assert_eq!(classical_part(&s4).unwrap(), s4);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&functor_g(&e2())).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.totally_classical.system().unwrap().state_count(), 2);
        assert_eq!(d.classical_part.property_count(), 4);
        assert!(d.evidence.all_passed(), "{:?}", d.evidence);

        let d = decompose(&functor_g(&e3())).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.classical_part.property_count(), 2);
        assert!(d.evidence.all_passed(), "{:?}", d.evidence);

        let s4 = functor_g(&e4());
        let d = decompose(&s4).unwrap();
        assert_eq!(d.components.len(), 2);
        assert!(sps_isomorphic(d.totally_classical.system().unwrap(), &s4).is_some());
        assert!(d.evidence.all_passed(), "{:?}", d.evidence);
    }

    #[test]
    fn fixtures_decompose_cleanly() {
        for (name, space) in crate::fixtures::named() {
            let d = decompose(&functor_g(&space)).unwrap();
            assert!(d.totally_classical.system().is_some(), "{name}");
            assert!(d.evidence.all_passed(), "{name}: {:?}", d.evidence);
        }
    }
}
