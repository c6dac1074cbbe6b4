//! The functors between state property systems and closure spaces, on
//! objects and on morphisms, with explicit isomorphism witnesses.

use crate::closure::{ContinuousMap, FiniteClosureSpace};
use crate::error::{Error, Result};
use crate::order::FiniteLattice;
use crate::sps::{SpsMorphism, StatePropertySystem};

/// `F(Σ, L, ξ) = (Σ, κ(L))`.
pub fn functor_f(sps: &StatePropertySystem) -> FiniteClosureSpace {
    sps.closure_space()
}

/// `F(m, n) = m`.
pub fn functor_f_mor(morphism: &SpsMorphism) -> Result<ContinuousMap> {
    ContinuousMap::new(
        functor_f(morphism.source()),
        functor_f(morphism.target()),
        morphism.state_map().to_vec(),
    )
    .map_err(|e| Error::Internal(format!("state map of a morphism is not continuous: {e}")))
}

/// `G(X, F) = (X, F, ξ̄)` with `F` ordered by inclusion and
/// `ξ̄(p) = {F | p ∈ F}`. Properties are named after their closed sets.
pub fn functor_g(space: &FiniteClosureSpace) -> StatePropertySystem {
    let closed = space.closed().members();
    let names = closed.iter().map(|&c| space.format_subset(c)).collect();
    let lattice = FiniteLattice::from_order(names, |a, b| closed[a].is_subset(closed[b]))
        .expect("closed sets ordered by inclusion form a lattice");
    let xi = (0..space.len())
        .map(|p| {
            (0..closed.len())
                .filter(|&i| closed[i].contains(p))
                .collect()
        })
        .collect();
    StatePropertySystem::new(space.universe().clone(), lattice, xi)
        .expect("G of a closure space satisfies the axioms")
}

/// `G(f) = (f, f⁻¹)`.
pub fn functor_g_mor(f: &ContinuousMap) -> Result<SpsMorphism> {
    let source = functor_g(f.domain());
    let target = functor_g(f.codomain());
    let property_map = f
        .codomain()
        .closed()
        .iter()
        .map(|b| {
            f.domain()
                .closed()
                .position(f.preimage(b))
                .ok_or_else(|| Error::Internal("preimage of a closed set is not closed".into()))
        })
        .collect::<Result<_>>()?;
    SpsMorphism::new(source, target, f.mapping().to_vec(), property_map)
}

/// Mutually inverse morphisms `forward: A → B` and `backward: B → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub forward: SpsMorphism,
    pub backward: SpsMorphism,
}

impl IsoWitness {
    /// Both composites are identities, checked pointwise.
    pub fn composites_are_identities(&self) -> bool {
        let round = |a: &SpsMorphism, b: &SpsMorphism| a.then(b).map(|m| m.is_identity());
        matches!(round(&self.forward, &self.backward), Ok(true))
            && matches!(round(&self.backward, &self.forward), Ok(true))
    }
}

/// Witness for `S ≅ G(F(S))`: identity on states, κ and κ⁻¹ on properties.
pub fn unit_iso(sps: &StatePropertySystem) -> Result<IsoWitness> {
    let space = functor_f(sps);
    let gfs = functor_g(&space);
    let family = space.closed();
    let kappa: Vec<usize> = (0..sps.property_count())
        .map(|a| {
            family
                .position(sps.cartan(a))
                .ok_or_else(|| Error::Internal("κ(a) missing from κ(L)".into()))
        })
        .collect::<Result<_>>()?;
    let kappa_inv: Vec<usize> = family
        .iter()
        .map(|k| {
            sps.cartan_inverse(k)
                .ok_or_else(|| Error::Internal("closed set without a property".into()))
        })
        .collect::<Result<_>>()?;
    let ids: Vec<usize> = (0..sps.state_count()).collect();
    let forward = SpsMorphism::new(sps.clone(), gfs.clone(), ids.clone(), kappa_inv)?;
    let backward = SpsMorphism::new(gfs, sps.clone(), ids, kappa)?;
    Ok(IsoWitness { forward, backward })
}

/// `F(G(X, F)) = (X, F)` exactly.
pub fn counit_check(space: &FiniteClosureSpace) -> bool {
    functor_f(&functor_g(space)) == *space
}

/// Isomorphism-invariant fingerprint used to reject pairs before search.
#[derive(Debug, PartialEq, Eq)]
struct Fingerprint {
    states: usize,
    properties: usize,
    ssr_degrees: Vec<usize>,
    cartan_sizes: Vec<usize>,
    xi_sizes: Vec<usize>,
    clopens: usize,
}

fn fingerprint(s: &StatePropertySystem) -> Fingerprint {
    let n = s.property_count();
    let mut ssr_degrees: Vec<usize> = (0..n)
        .map(|a| (0..n).filter(|&b| s.ssr_via_cartan(a, b)).count())
        .collect();
    ssr_degrees.sort_unstable();
    let mut cartan_sizes: Vec<usize> = (0..n).map(|a| s.cartan(a).len()).collect();
    cartan_sizes.sort_unstable();
    let mut xi_sizes: Vec<usize> = (0..s.state_count()).map(|p| s.xi(p).len()).collect();
    xi_sizes.sort_unstable();
    Fingerprint {
        states: s.state_count(),
        properties: n,
        ssr_degrees,
        cartan_sizes,
        xi_sizes,
        clopens: s.closure_space().clopen_sets().len(),
    }
}

/// Searches for an isomorphism `s1 → s2`. State bijections are tried in
/// lexicographic order, so the witness returned is the first one.
pub fn sps_isomorphic(s1: &StatePropertySystem, s2: &StatePropertySystem) -> Option<IsoWitness> {
    if fingerprint(s1) != fingerprint(s2) {
        return None;
    }
    let n = s1.state_count();
    // co[p][q]: number of properties actual in both p and q
    let co = |s: &StatePropertySystem| -> Vec<Vec<usize>> {
        (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| {
                        (0..s.property_count())
                            .filter(|&a| s.is_actual(a, p) && s.is_actual(a, q))
                            .count()
                    })
                    .collect()
            })
            .collect()
    };
    let (co1, co2) = (co(s1), co(s2));
    let mut m = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(&co1, &co2, &mut m, &mut used, &mut |m| complete(s1, s2, m))
}

fn search(
    co1: &[Vec<usize>],
    co2: &[Vec<usize>],
    m: &mut Vec<usize>,
    used: &mut [bool],
    finish: &mut dyn FnMut(&[usize]) -> Option<IsoWitness>,
) -> Option<IsoWitness> {
    let p = m.len();
    if p == co1.len() {
        return finish(m);
    }
    for q in 0..co2.len() {
        if used[q] || co1[p][p] != co2[q][q] {
            continue;
        }
        if m.iter().enumerate().any(|(r, &mr)| co1[p][r] != co2[q][mr]) {
            continue;
        }
        used[q] = true;
        m.push(q);
        if let Some(w) = search(co1, co2, m, used, finish) {
            return Some(w);
        }
        m.pop();
        used[q] = false;
    }
    None
}

/// Given a state bijection, derives the property maps and validates both
/// directions.
fn complete(s1: &StatePropertySystem, s2: &StatePropertySystem, m: &[usize]) -> Option<IsoWitness> {
    let mut m_inv = vec![0; m.len()];
    for (p, &q) in m.iter().enumerate() {
        m_inv[q] = p;
    }
    // n: L2 -> L1 with κ1(n(a)) = m⁻¹(κ2(a))
    let n: Vec<usize> = (0..s2.property_count())
        .map(|a| s1.cartan_inverse(s2.cartan(a).preimage(m)))
        .collect::<Option<_>>()?;
    let mut n_inv = vec![0; n.len()];
    for (a, &b) in n.iter().enumerate() {
        n_inv[b] = a;
    }
    let forward = SpsMorphism::new(s1.clone(), s2.clone(), m.to_vec(), n).ok()?;
    let backward = SpsMorphism::new(s2.clone(), s1.clone(), m_inv, n_inv).ok()?;
    Some(IsoWitness { forward, backward })
}
