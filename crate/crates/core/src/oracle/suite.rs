use rayon::prelude::*;
use serde::Serialize;

use super::{brute_classical, brute_components, quasi_components, MAX_BRUTE_POINTS};
use crate::closure::{ContinuousMap, FiniteClosureSpace, Partition};
use crate::decomposition::{decompose, Counterexample, TotallyClassical};
use crate::equivalence::{
    counit_check, functor_f, functor_f_mor, functor_g, functor_g_mor, unit_iso,
};
use crate::error::{Error, Result};
use crate::order::Subset;
use crate::report::{Check, Evidence, Verdict};
use crate::sps::{SpsMorphism, StatePropertySystem};

/// Largest space whose every subset is scanned for the closure-operator laws.
const MAX_SUBSET_SCAN: usize = 10;

#[derive(Debug, Clone)]
pub enum Instance {
    Space(FiniteClosureSpace),
    Sps(StatePropertySystem),
}

impl Instance {
    pub fn to_sps(&self) -> StatePropertySystem {
        match self {
            Instance::Space(s) => functor_g(s),
            Instance::Sps(s) => s.clone(),
        }
    }

    pub fn to_space(&self) -> FiniteClosureSpace {
        match self {
            Instance::Space(s) => s.clone(),
            Instance::Sps(s) => functor_f(s),
        }
    }
}

/// Verdicts of every cross-check on one instance, plus any counterexamples
/// and observations from the open-question probes.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub instance: String,
    pub checks: Vec<Check>,
    pub counterexamples: Vec<Counterexample>,
    pub findings: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.verdict.is_fail())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict.is_fail())
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.verdict)
    }
}

/// Runs [`theorem_suite`] over a corpus, on `threads` workers when more
/// than one is requested. Output order follows the input.
pub fn run_corpus(instances: &[(String, Instance)], threads: usize) -> Result<Vec<TheoremReport>> {
    if threads <= 1 {
        return instances
            .iter()
            .map(|(id, inst)| theorem_suite(id, inst))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    pool.install(|| {
        instances
            .par_iter()
            .map(|(id, inst)| theorem_suite(id, inst))
            .collect()
    })
}

pub fn theorem_suite(id: &str, instance: &Instance) -> Result<TheoremReport> {
    let sps = instance.to_sps();
    let space = instance.to_space();
    let mut ev = Evidence::default();
    let mut findings = Vec::new();
    let mut counterexamples = Vec::new();

    equivalence_checks(&sps, &space, &mut ev)?;
    cartan_checks(&sps, &space, &mut ev);
    classicality_checks(&sps, &space, &mut ev);
    closure_checks(&space, &mut ev);
    component_checks(&space, &mut ev, &mut findings)?;

    let d = decompose(&sps)?;
    if let TotallyClassical::Counterexample(cx) = &d.totally_classical {
        findings.push(format!("totally classical construction refuted: {cx}"));
        counterexamples.push(cx.clone());
    }
    ev.record("totally-classical-probe", Verdict::Pass);
    for c in d.evidence.checks {
        ev.record(format!("decomposition: {}", c.name), c.verdict);
    }

    Ok(TheoremReport {
        instance: id.to_string(),
        checks: ev.checks,
        counterexamples,
        findings,
    })
}

fn equivalence_checks(
    sps: &StatePropertySystem,
    space: &FiniteClosureSpace,
    ev: &mut Evidence,
) -> Result<()> {
    ev.check("counit", counit_check(space), || {
        format!("F(G(X)) differs from {space}")
    });
    let unit = unit_iso(sps);
    ev.check(
        "unit-iso",
        unit.as_ref().is_ok_and(|w| w.composites_are_identities()),
        || format!("{unit:?}"),
    );

    let id_space = ContinuousMap::identity(space.clone());
    let id_sps = SpsMorphism::identity(sps.clone());
    ev.check(
        "identities",
        functor_g_mor(&id_space)?.is_identity()
            && functor_f_mor(&id_sps)? == ContinuousMap::identity(functor_f(sps)),
        || "a functor does not preserve identities".into(),
    );

    // constant maps are always continuous
    let n = space.len();
    let mut composition_ok = true;
    for p in 0..n.min(3) {
        let q = (p + 1) % n;
        let f = ContinuousMap::new(space.clone(), space.clone(), vec![p; n])?;
        let g = ContinuousMap::new(space.clone(), space.clone(), vec![q; n])?;
        for (a, b) in [(&f, &id_space), (&id_space, &g), (&f, &g)] {
            let gab = functor_g_mor(&a.then(b)?)?;
            let ga_gb = functor_g_mor(a)?.then(&functor_g_mor(b)?)?;
            composition_ok &= gab == ga_gb;
            composition_ok &= functor_f_mor(&ga_gb)? == a.then(b)?;
        }
    }
    ev.check("composition", composition_ok, || {
        "a functor does not preserve composition".into()
    });
    Ok(())
}

fn cartan_checks(sps: &StatePropertySystem, space: &FiniteClosureSpace, ev: &mut Evidence) {
    let l = sps.lattice();
    let n = l.len();
    let mut meet_bad = None;
    let mut join_bad = None;
    let mut order_bad = None;
    let mut ssr_bad = None;
    for a in 0..n {
        for b in 0..n {
            let (ka, kb) = (sps.cartan(a), sps.cartan(b));
            if sps.cartan(l.meet2(a, b)) != ka.intersection(kb) {
                meet_bad.get_or_insert((a, b));
            }
            if sps.cartan(l.join2(a, b)) != space.closure_of(ka.union(kb)) {
                join_bad.get_or_insert((a, b));
            }
            if l.leq(a, b) != ka.is_subset(kb) {
                order_bad.get_or_insert((a, b));
            }
            if sps.ssr(a, b) != sps.ssr_via_cartan(a, b) {
                ssr_bad.get_or_insert((a, b));
            }
        }
    }
    let pair = |p: Option<(usize, usize)>| match p {
        None => Verdict::Pass,
        Some((a, b)) => Verdict::Fail {
            witness: format!("({}, {})", l.name(a), l.name(b)),
        },
    };
    ev.record("kappa-meet", pair(meet_bad));
    ev.record("kappa-join-is-closure", pair(join_bad));
    ev.record("kappa-order-iso", pair(order_bad));
    ev.check(
        "kappa-bijective",
        sps.cartan_image().len() == n && *space.closed() == sps.cartan_image(),
        || "κ(L) has fewer sets than L".into(),
    );
    ev.record("ssr-criterion", pair(ssr_bad));

    // joins in G(F(S)) are closures of unions
    let g = functor_g(space);
    let gl = g.lattice();
    let closed = space.closed().members();
    let all_join = gl.join_all(0..gl.len());
    let mut g_ok =
        closed[all_join] == space.closure_of(closed.iter().fold(Subset::EMPTY, |u, &c| u.union(c)));
    for a in 0..gl.len() {
        for b in 0..gl.len() {
            g_ok &= closed[gl.join2(a, b)] == space.closure_of(closed[a].union(closed[b]));
        }
    }
    ev.check("g-join-is-closure", g_ok, || {
        "a join in G(X) is not the closure of the union".into()
    });
}

fn classicality_checks(sps: &StatePropertySystem, space: &FiniteClosureSpace, ev: &mut Evidence) {
    let l = sps.lattice();
    ev.check(
        "classical-iff-topological",
        sps.is_classical_sps() == space.is_topological(),
        || {
            format!(
                "classical = {}, topological = {}",
                sps.is_classical_sps(),
                space.is_topological()
            )
        },
    );

    let mut clopen_bad = None;
    for a in 0..l.len() {
        let search = sps.classical_complement(a);
        let brute = brute_classical(sps, a);
        let clopen = space.is_clopen(sps.cartan(a));
        let witness_ok = search.is_none_or(|c| {
            l.join2(a, c) == l.top() && l.meet2(a, c) == l.bottom() && sps.ssr(a, c)
        });
        if search.is_some() != clopen || brute.is_some() != clopen || !witness_ok {
            clopen_bad.get_or_insert_with(|| {
                format!(
                    "{}: search {:?}, brute {:?}, clopen {clopen}",
                    l.name(a),
                    search,
                    brute
                )
            });
        }
    }
    ev.record(
        "classical-iff-clopen",
        clopen_bad.map_or(Verdict::Pass, |witness| Verdict::Fail { witness }),
    );

    ev.check(
        "pure-iff-connected",
        sps.is_pure_nonclassical() == space.is_connected(),
        || {
            format!(
                "pure = {}, connected = {}",
                sps.is_pure_nonclassical(),
                space.is_connected()
            )
        },
    );
}

fn closure_checks(space: &FiniteClosureSpace, ev: &mut Evidence) {
    let n = space.len();
    let full = space.full();
    let clopens = space.clopen_sets();
    ev.check(
        "clopens-complement-closed",
        clopens.contains(Subset::EMPTY)
            && clopens.contains(full)
            && clopens.iter().all(|c| clopens.contains(c.complement(n))),
        || "clopen family not closed under complement".into(),
    );

    if n <= MAX_SUBSET_SCAN {
        let mut ok = true;
        let subsets: Vec<Subset> = (0..1u64 << n).map(Subset::from_bits).collect();
        for &a in &subsets {
            let ca = space.closure_of(a);
            ok &= a.is_subset(ca) && space.closure_of(ca) == ca;
            ok &= (ca == a) == space.is_closed(a);
        }
        for &a in subsets.iter().step_by(3) {
            for &b in subsets.iter().step_by(5) {
                if a.is_subset(b) {
                    ok &= space.closure_of(a).is_subset(space.closure_of(b));
                }
            }
        }
        ev.check("closure-operator-laws", ok, || {
            "closure_of is not a closure operator".into()
        });
    } else {
        ev.record(
            "closure-operator-laws",
            Verdict::NotApplicable {
                reason: format!("{n} points exceeds subset scan cap {MAX_SUBSET_SCAN}"),
            },
        );
    }

    let core = space.zero_dimensional_core();
    ev.check(
        "zero-dimensional-core",
        core.is_zero_dimensional()
            && core.zero_dimensional_core() == core
            && clopens.iter().all(|c| core.is_clopen(c)),
        || format!("core {core} misbehaves"),
    );
    ev.check(
        "zero-dimensional-iff-core-fixed",
        space.is_zero_dimensional() == (core == *space),
        || "zero-dimensionality disagrees with the core".into(),
    );
}

fn component_checks(
    space: &FiniteClosureSpace,
    ev: &mut Evidence,
    findings: &mut Vec<String>,
) -> Result<()> {
    let show = |p: &Partition| {
        p.blocks()
            .iter()
            .map(|&b| space.format_subset(b))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let comps = space.components();
    if space.len() <= MAX_BRUTE_POINTS {
        let brute = brute_components(space)?;
        ev.check("components-match-brute", brute == comps, || {
            format!("split {} vs brute {}", show(&comps), show(&brute))
        });
    } else {
        ev.record(
            "components-match-brute",
            Verdict::NotApplicable {
                reason: format!("{} points exceeds cap {MAX_BRUTE_POINTS}", space.len()),
            },
        );
    }
    ev.check(
        "components-closed",
        comps.blocks().iter().all(|&b| space.is_closed(b)),
        || "a component is not closed".into(),
    );
    let mut connected = true;
    let mut maximal = true;
    for &b in comps.blocks() {
        connected &= space.induced_subspace(b)?.is_connected();
        for y in b.complement(space.len()).iter() {
            let mut bigger = b;
            bigger.insert(y);
            maximal &= !space.induced_subspace(bigger)?.is_connected();
        }
    }
    ev.check("components-connected", connected, || {
        "a component is disconnected".into()
    });
    ev.check("components-maximal", maximal, || {
        "a component extends to a connected set".into()
    });
    ev.check(
        "quotient-totally-disconnected",
        space.quotient_space(&comps)?.is_totally_disconnected(),
        || "quotient by components is not totally disconnected".into(),
    );

    let quasi = quasi_components(space);
    ev.check("components-refine-quasi", comps.refines(&quasi), || {
        "a component straddles two quasi-components".into()
    });
    if quasi != comps {
        findings.push(format!(
            "quasi-components {} differ from components {}",
            show(&quasi),
            show(&comps)
        ));
    }
    if space.is_topological() {
        ev.check("quasi-equal-on-topological", quasi == comps, || {
            "topological space with quasi-components ≠ components".into()
        });
    } else {
        ev.record(
            "quasi-equal-on-topological",
            Verdict::NotApplicable {
                reason: "not topological".into(),
            },
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e1, e2, e3};

    #[test]
    fn fixtures_pass_every_check() {
        for (name, space) in [("e1", e1()), ("e2", e2()), ("e3", e3())] {
            let r = theorem_suite(name, &Instance::Space(space)).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
            assert!(r.counterexamples.is_empty());
        }
    }

    #[test]
    fn branches_taken() {
        let r = theorem_suite("e1", &Instance::Space(e1())).unwrap();
        assert_eq!(r.verdict("classical-iff-topological"), Some(&Verdict::Pass));
        assert!(functor_g(&e1()).is_classical_sps());
        assert!(functor_g(&e3()).is_pure_nonclassical());
        let r = theorem_suite("e2", &Instance::Space(e2())).unwrap();
        assert_eq!(r.verdict("totally-classical-probe"), Some(&Verdict::Pass));
        assert_eq!(
            r.verdict("decomposition: totally-classical-segments-trivial"),
            Some(&Verdict::Pass)
        );
    }
}
