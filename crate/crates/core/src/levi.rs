//! Standard Levi subgroups `M ⊂ P ⊂ G` of an admissible datum: the monoids
//! `Λ⁺_{M,S}`, `Λ̌⁺_{M,S}`, `π₁⁺(M)` and the degree-one level
//! `Λ^{+,θ}_{M,S}`, with the decomposition certificate and the vanishing
//! bound `c(P)`.

use crate::admissible::AdmissibleDatum;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::{self, IntMatrix};
use crate::rep::Reps;
use crate::root_datum::{pair, AbelianQuotient, Coweight, RootDatum, Weight, WeylElement, ORBIT_CAP};
use crate::semigroup;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

#[derive(Clone, Debug)]
pub struct LeviDatum {
    parent: AdmissibleDatum,
    subset: Vec<usize>,
    levi: RootDatum,
    two_rho_check_m: Weight,
    quotient: AbelianQuotient,
    w0_m: WeylElement,
}

/// The Levi attached to a Dynkin subset `𝐈_M`.
pub fn restrict_to_levi(a: &AdmissibleDatum, subset: &[usize]) -> Result<LeviDatum> {
    let d = a.datum();
    d.check_subset(subset)?;
    let mut subset = subset.to_vec();
    subset.sort();
    let levi = d.sub_datum(&subset)?;
    let coroots: Vec<Vec<i64>> = subset.iter().map(|&i| d.simple_coroots()[i].0.clone()).collect();
    let quotient = AbelianQuotient::of_span(d.rank(), &coroots);
    let w0_m = d.longest_element(Some(&subset))?;
    Ok(LeviDatum {
        parent: a.clone(),
        two_rho_check_m: levi.two_rho_check(),
        subset,
        levi,
        quotient,
        w0_m,
    })
}

impl LeviDatum {
    pub fn parent(&self) -> &AdmissibleDatum {
        &self.parent
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// The root datum of `M` (same lattices, simple roots in `𝐈_M`).
    pub fn levi(&self) -> &RootDatum {
        &self.levi
    }

    /// `2ρ̌_M`.
    pub fn two_rho_check_m(&self) -> &Weight {
        &self.two_rho_check_m
    }

    /// `Λ_{G,P} = Λ / ℤ⟨α_i : i ∈ 𝐈_M⟩`.
    pub fn quotient(&self) -> &AbelianQuotient {
        &self.quotient
    }

    pub fn w0_m(&self) -> &WeylElement {
        &self.w0_m
    }

    pub fn is_proper(&self) -> bool {
        self.subset.len() < self.parent.datum().num_simple()
    }

    pub fn is_m_dominant(&self, lambda: &Coweight) -> bool {
        self.levi.is_dominant(lambda)
    }

    pub fn project(&self, lambda: &Coweight) -> Vec<i64> {
        self.quotient.project(&lambda.0)
    }

    /// Degree of an element of `Λ_{G,P}` (the `π₁(G)`-degree factors through).
    pub fn degree_of_class(&self, class: &[i64]) -> i64 {
        self.parent.degree(&Coweight(self.quotient.lift(class)))
    }

    fn require_m_dominant(&self, lambda: &Coweight) -> Result<()> {
        self.parent.datum().check_coweight(lambda)?;
        if !self.is_m_dominant(lambda) {
            return Err(Error::NotLeviDominant(lambda.0.clone()));
        }
        Ok(())
    }

    /// `λ ∈ Λ⁺_{M,S}`: some `W`-conjugate lies in `Λ⁺_{G,S}`.
    pub fn contains_m_s(&self, lambda: &Coweight) -> Result<bool> {
        self.require_m_dominant(lambda)?;
        let dom = self.parent.datum().dominant_conjugate(lambda);
        semigroup::contains(&self.parent, &dom)
    }

    /// `λ̌ ∈ Λ̌⁺_{M,S}`: `M`-dominant with some `W`-conjugate in `Λ̌⁺_S`.
    pub fn contains_weight_m_s(&self, check: &Weight) -> bool {
        if !self.levi.is_dominant_weight(check) {
            return false;
        }
        let d = self.parent.datum();
        let mut w = check.clone();
        while let Some(i) = (0..d.num_simple()).find(|&i| pair(&d.simple_coroots()[i], &w) < 0) {
            w = d.reflect_weight(i, &w);
        }
        semigroup::contains_weight(&self.parent, &w)
    }

    /// `M`-dominant elements of `Wλ` for each `λ` in the list.
    fn m_dominant_conjugates(&self, list: &[Coweight]) -> Result<Vec<Coweight>> {
        let d = self.parent.datum();
        let mut out = BTreeSet::new();
        for l in list {
            for w in d.orbit_with(l, None, ORBIT_CAP, Exec::Sequential)? {
                if self.is_m_dominant(&w) {
                    out.insert(w);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// `Λ⁺_{M,S}` in degree `k`, sorted.
    pub fn level(&self, k: u32) -> Result<Vec<Coweight>> {
        self.m_dominant_conjugates(&semigroup::level_set(&self.parent, k).elements)
    }

    /// `π₁⁺(M)` in degree `k`, sorted.
    pub fn pi1_plus_level(&self, k: u32) -> Result<Vec<Vec<i64>>> {
        let set: BTreeSet<Vec<i64>> = self.level(k)?.iter().map(|l| self.project(l)).collect();
        Ok(set.into_iter().collect())
    }

    pub fn in_pi1_plus(&self, class: &[i64]) -> Result<bool> {
        let d = self.degree_of_class(class);
        if d < 0 {
            return Ok(false);
        }
        Ok(self.pi1_plus_level(d as u32)?.iter().any(|c| c == class))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaLevel {
    /// `M`-dominant elements of `Wγ`, sorted.
    pub elements: Vec<Coweight>,
    /// Their images in `π₁(M) = Λ_{G,P}`.
    pub images: Vec<Vec<i64>>,
    pub m_minuscule: bool,
    pub bijective: bool,
    pub orbit_count: usize,
}

impl ThetaLevel {
    pub fn verified(&self) -> bool {
        self.m_minuscule && self.bijective && self.orbit_count == self.elements.len()
    }

    /// The element of `Λ^{+,θ}_{M,S}` over a class of `π₁^θ(M)`.
    pub fn lift(&self, class: &[i64]) -> Option<&Coweight> {
        self.images.iter().position(|c| c == class).map(|i| &self.elements[i])
    }
}

/// `Λ^{+,θ}_{M,S}` with its certificates: `M`-minuscule, bijective onto
/// `π₁^θ(M)`, and as many elements as `W_M`-orbits on `Wγ`.
pub fn theta_level(l: &LeviDatum) -> Result<ThetaLevel> {
    let orbit = l.parent.orbit();
    let elements: Vec<Coweight> = orbit.iter().filter(|w| l.is_m_dominant(w)).cloned().collect();
    let images: Vec<Vec<i64>> = elements.iter().map(|e| l.project(e)).collect();
    let reps = Reps::new(&l.levi);
    let mut m_minuscule = true;
    for e in &elements {
        let pairings_ok = l.levi.positive_roots().iter().all(|r| pair(e, r).abs() <= 1);
        let chr = reps.character(e)?;
        let m_orbit = l.levi.orbit_with(e, None, ORBIT_CAP, Exec::Sequential)?;
        let weights_ok = chr.is_multiplicity_free() && chr.weights().keys().cloned().collect::<Vec<_>>() == m_orbit;
        m_minuscule &= pairings_ok && weights_ok;
    }
    let distinct: HashSet<&Vec<i64>> = images.iter().collect();
    let bijective = distinct.len() == images.len();
    // W_M-orbits on Wγ
    let mut seen: HashSet<Coweight> = HashSet::new();
    let mut orbit_count = 0;
    for w in orbit {
        if seen.contains(w) {
            continue;
        }
        orbit_count += 1;
        seen.extend(l.parent.datum().orbit_with(w, Some(&l.subset), ORBIT_CAP, Exec::Sequential)?);
    }
    Ok(ThetaLevel { elements, images, m_minuscule, bijective, orbit_count })
}

/// Finds `λ₁, …, λ_d ∈ Λ^{+,θ}_{M,S}` with `λ ≤_M λ₁ + … + λ_d`, where `d` is
/// the degree of `λ`. Failure to find one is reported as a lemma violation.
pub fn decompose_certificate(l: &LeviDatum, lambda: &Coweight) -> Result<Vec<Coweight>> {
    if !l.contains_m_s(lambda)? {
        return Err(Error::Precondition(format!("{lambda} is not in the Levi monoid")));
    }
    let d = l.parent.degree(lambda);
    let theta = theta_level(l)?;
    let t = theta.elements.len();
    let mut idx = vec![0usize; d as usize];
    loop {
        let sum = idx
            .iter()
            .fold(Coweight::zero(lambda.len()), |acc, &i| &acc + &theta.elements[i]);
        if l.levi.pos_part_decompose(&(&sum - lambda)).is_some() {
            return Ok(idx.iter().map(|&i| theta.elements[i].clone()).collect());
        }
        // next nondecreasing index tuple
        let Some(p) = (0..idx.len()).rev().find(|&p| idx[p] + 1 < t) else {
            break;
        };
        let v = idx[p] + 1;
        for q in p..idx.len() {
            idx[q] = v;
        }
    }
    Err(Error::LemmaViolation(format!(
        "no {d} elements of the degree-one Levi level dominate {lambda} in the Levi order"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTerm {
    pub lambda: Coweight,
    pub dim: u128,
    /// `r(2g−2)·dim U^λ`.
    pub threshold: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingBound {
    pub genus: u32,
    pub r: u32,
    pub terms: Vec<BoundTerm>,
    /// `c(P) = Σ r(2g−2)·dim U^λ` over `Λ^{+,θ}_{M,S}`.
    pub c: u128,
}

/// Pigeonhole bound: a general-position decomposition of degree `d > c(P)`
/// has some `n_k > r(2g−2)·dim U^{λ_k}`.
pub fn vanishing_bound(l: &LeviDatum, genus: u32, r: u32) -> Result<VanishingBound> {
    if !l.is_proper() {
        return Err(Error::Precondition("the parabolic must be proper".into()));
    }
    if genus < 2 {
        return Err(Error::Precondition(format!("genus {genus} < 2: the bound needs 2g - 2 > 0")));
    }
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    let theta = theta_level(l)?;
    let reps = Reps::new(&l.levi);
    let factor = r as u128 * (2 * genus as u128 - 2);
    let mut terms = Vec::new();
    for e in &theta.elements {
        let dim = reps.weyl_dimension(e)?;
        terms.push(BoundTerm { lambda: e.clone(), dim, threshold: factor * dim });
    }
    let c = terms.iter().map(|t| t.threshold).sum();
    Ok(VanishingBound { genus, r, terms, c })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub coweights_checked: usize,
    pub weights_checked: usize,
    pub violations: Vec<String>,
}

/// Test data for the four Levi identities.
struct IdentityData {
    /// Weights spanning `Λ̌⁺_S` as a cone.
    dual_basis: Vec<Weight>,
    /// `M`-dominant conjugates of a spanning set of `Λ̌⁺_S`-box elements.
    levi_weights: Vec<Weight>,
    /// Cone generators of `Λ⁺_{G,S}` and all their `W`-conjugates.
    conjugated_generators: Vec<Coweight>,
    /// A finite part of `Λ⁺_{M,S}`.
    levi_coweights: Vec<Coweight>,
}

/// Evaluates the four characterizations of `Λ⁺_{M,S}` and `Λ̌⁺_{M,S}` on
/// test data and reports every disagreement with the definitions.
///
/// Coweights tested: all `M`-dominant `λ` of degree `0..=max_degree` whose
/// simple-root pairings lie in `[−bound, bound]`. Weights tested: `M`-dominant
/// weights with coordinates in `[−bound, bound]` in the basis `ω̌₀, ω̌_i`.
pub fn check_identities(l: &LeviDatum, max_degree: u32, bound: i64) -> Result<IdentityReport> {
    let a = &l.parent;
    let d = a.datum();
    let rank = d.rank();
    let n = d.num_simple();

    let generator_degree = (a.d_omega() as u32).max(max_degree) + 1;
    let generators = semigroup::hilbert_basis(a, generator_degree)?.generator_set();
    let mut conjugated_generators = Vec::new();
    for g in &generators {
        conjugated_generators.extend(d.weyl_orbit(g)?);
    }
    let mut levi_coweights = Vec::new();
    for k in 0..=generator_degree {
        levi_coweights.extend(l.level(k)?);
    }
    let basis = a.weight_basis();
    let mut levi_weights = BTreeSet::new();
    for coeffs in box_points(basis.len(), 0, bound) {
        let w = combine(&basis, &coeffs, rank);
        for x in d.weight_orbit(&w)? {
            if l.levi.is_dominant_weight(&x) {
                levi_weights.insert(x);
            }
        }
    }
    let data = IdentityData {
        dual_basis: basis.clone(),
        levi_weights: levi_weights.into_iter().collect(),
        conjugated_generators,
        levi_coweights,
    };

    let mut report = IdentityReport::default();

    // coweights, from pairings and degree
    let mut rows: Vec<Vec<i64>> = d.simple_roots().iter().map(|r| r.0.clone()).collect();
    rows.push(degree_row(a));
    let system = IntMatrix::from_rows(rank, &rows);
    for k in 0..=max_degree as i64 {
        for p in box_points(n, -bound, bound) {
            let mut rhs = p.clone();
            rhs.push(k);
            let Some(sol) = lattice::solve_rational(&system, &rhs) else { continue };
            let Some(v) = lattice::integral(&sol) else { continue };
            let lambda = Coweight(v);
            if !l.is_m_dominant(&lambda) {
                continue;
            }
            report.coweights_checked += 1;
            let definition = l.contains_m_s(&lambda)?;
            let first = d
                .orbit_with(&lambda, None, ORBIT_CAP, Exec::Sequential)?
                .iter()
                .all(|wl| data.dual_basis.iter().all(|b| pair(wl, b) >= 0));
            let w0m = l.w0_m.act(&lambda);
            let second = data.levi_weights.iter().all(|b| pair(&w0m, b) >= 0);
            if definition != first || definition != second {
                report.violations.push(format!(
                    "coweight {lambda}: definition {definition}, all-w test {first}, w0^M test {second}"
                ));
            }
        }
    }

    // weights
    let w0m_coweights: Vec<Coweight> = data.levi_coweights.iter().map(|c| l.w0_m.act(c)).collect();
    for coeffs in box_points(basis.len(), -bound, bound) {
        let w = combine(&basis, &coeffs, rank);
        if !l.levi.is_dominant_weight(&w) {
            continue;
        }
        report.weights_checked += 1;
        let definition = l.contains_weight_m_s(&w);
        let third = data.conjugated_generators.iter().all(|c| pair(c, &w) >= 0);
        let fourth = w0m_coweights.iter().all(|c| pair(c, &w) >= 0);
        if definition != third || definition != fourth {
            report.violations.push(format!(
                "weight {w}: definition {definition}, all-w test {third}, w0^M test {fourth}"
            ));
        }
    }
    Ok(report)
}

fn degree_row(a: &AdmissibleDatum) -> Vec<i64> {
    let rank = a.datum().rank();
    (0..rank).map(|k| a.degree(&Coweight::basis(rank, k))).collect()
}

fn combine(basis: &[Weight], coeffs: &[i64], rank: usize) -> Weight {
    basis
        .iter()
        .zip(coeffs)
        .fold(Weight::zero(rank), |acc, (b, &c)| &acc + &b.scale(c))
}

/// All integer vectors of length `len` with entries in `[lo, hi]`.
fn box_points(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn gsp4() -> AdmissibleDatum {
        let c = catalog::gsp(2).unwrap();
        AdmissibleDatum::new(c.datum, c.gamma).unwrap()
    }

    #[test]
    fn extreme_levis() {
        let a = gsp4();
        let g = restrict_to_levi(&a, &[0, 1]).unwrap();
        assert_eq!(theta_level(&g).unwrap().elements, vec![a.gamma().clone()]);
        assert!(g.quotient().is_free_rank_one());
        let t = restrict_to_levi(&a, &[]).unwrap();
        let th = theta_level(&t).unwrap();
        assert_eq!(th.elements.len(), 4);
        assert!(th.verified());
        assert_eq!(t.quotient().free_rank, 3);
        assert_eq!(restrict_to_levi(&a, &[1]).unwrap().quotient().free_rank, 2);
        assert!(restrict_to_levi(&a, &[2]).is_err());
    }

    #[test]
    fn maximal_levis_of_gsp4() {
        let a = gsp4();
        for s in [[0usize], [1]] {
            let l = restrict_to_levi(&a, &s).unwrap();
            let th = theta_level(&l).unwrap();
            assert!(th.verified(), "{s:?}");
        }
    }

    #[test]
    fn certificates_and_bound() {
        let a = gsp4();
        let l = restrict_to_levi(&a, &[1]).unwrap();
        assert_eq!(decompose_certificate(&l, a.gamma()).unwrap(), vec![a.gamma().clone()]);
        let two = a.gamma().scale(2);
        let cert = decompose_certificate(&l, &two).unwrap();
        assert_eq!(cert.len(), 2);
        let t = restrict_to_levi(&a, &[]).unwrap();
        assert_eq!(vanishing_bound(&t, 2, 4).unwrap().c, 4 * 4 * 2);
        assert!(vanishing_bound(&t, 1, 4).is_err());
        let g = restrict_to_levi(&a, &[0, 1]).unwrap();
        assert!(vanishing_bound(&g, 2, 4).is_err());
    }

    #[test]
    fn identities_gsp4() {
        let a = gsp4();
        for s in [vec![], vec![0], vec![1], vec![0, 1]] {
            let l = restrict_to_levi(&a, &s).unwrap();
            let r = check_identities(&l, 3, 2).unwrap();
            assert!(r.violations.is_empty(), "{s:?}: {:?}", &r.violations[..r.violations.len().min(3)]);
            assert!(r.coweights_checked > 0 && r.weights_checked > 0);
        }
    }
}
