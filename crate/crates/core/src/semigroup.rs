//! The graded monoid `Λ⁺_{G,S} = ⋃_k {μ ∈ Λ⁺ : μ ≤ kγ}` and its dual cone.

use crate::admissible::AdmissibleDatum;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::root_datum::{pair, Coweight, Weight};
use serde::Serialize;
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedLevelSet {
    pub k: u32,
    /// Sorted by coordinates.
    pub elements: Vec<Coweight>,
}

/// All dominant `μ ≤ kγ`.
pub fn level_set(a: &AdmissibleDatum, k: u32) -> GradedLevelSet {
    level_set_with(a, k, Exec::default())
}

pub fn level_set_with(a: &AdmissibleDatum, k: u32, exec: Exec) -> GradedLevelSet {
    let top = a.gamma().scale(k as i64);
    GradedLevelSet { k, elements: a.datum().dominant_below_with(&top, exec) }
}

/// Membership in `Λ⁺_{G,S}` by the finite basis test
/// `⟨w₀μ, ω̌⟩ ≥ 0` for `ω̌ ∈ {ω̌₀, ω̌_i}`.
pub fn contains(a: &AdmissibleDatum, mu: &Coweight) -> Result<bool> {
    a.datum().check_coweight(mu)?;
    if !a.datum().is_dominant(mu) {
        return Err(Error::NotDominant(mu.0.clone()));
    }
    Ok(pairs_nonnegative(a, mu, &a.weight_basis()))
}

fn pairs_nonnegative(a: &AdmissibleDatum, mu: &Coweight, basis: &[Weight]) -> bool {
    let w0mu = a.w0().act(mu);
    basis.iter().all(|w| pair(&w0mu, w) >= 0)
}

/// Membership of a weight in `Λ̌⁺_S`: nonnegative coordinates in the basis
/// `ω̌₀, ω̌_i`.
pub fn contains_weight(a: &AdmissibleDatum, check: &Weight) -> bool {
    weight_coordinates(a, check).iter().all(|&c| c >= 0)
}

/// Coordinates of a weight in the basis `ω̌₀, ω̌_1, …, ω̌_n`: pairings with
/// `w₀γ, α_1, …, α_n`.
pub fn weight_coordinates(a: &AdmissibleDatum, check: &Weight) -> Vec<i64> {
    let mut c = vec![pair(&a.w0().act(a.gamma()), check)];
    c.extend(a.datum().simple_coroots().iter().map(|al| pair(al, check)));
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualConeVerdict {
    pub verified: bool,
    pub k_max: u32,
    pub checked_coweights: usize,
    pub checked_weights: usize,
    pub counterexamples: Vec<String>,
}

/// Box half-width for the weight search in [`dual_cone_verify`].
fn weight_box(rank: usize) -> i64 {
    match rank {
        0..=4 => 3,
        5..=6 => 2,
        _ => 1,
    }
}

/// Checks the dual description of `Λ⁺_{G,S}` against a claimed basis of
/// `Λ̌⁺_S` on enumerated data:
/// (a) every basis weight pairs nonnegatively with `w₀λ` for `λ` in the level
/// sets up to `k_max`;
/// (b) every dominant weight in a box that satisfies those inequalities is a
/// `ℤ₊`-combination of the basis;
/// (c) the basis membership test agrees with level-set enumeration.
pub fn dual_cone_verify(a: &AdmissibleDatum, k_max: u32, basis: &[Weight]) -> DualConeVerdict {
    let d = a.datum();
    let mut counterexamples = Vec::new();
    let levels: Vec<GradedLevelSet> = (0..=k_max).map(|k| level_set(a, k)).collect();
    let coweights: Vec<Coweight> = levels.iter().flat_map(|l| l.elements.iter().cloned()).collect();
    let w0_coweights: Vec<Coweight> = coweights.iter().map(|l| a.w0().act(l)).collect();

    for (lambda, w0l) in coweights.iter().zip(&w0_coweights) {
        for (j, b) in basis.iter().enumerate() {
            if pair(w0l, b) < 0 {
                counterexamples.push(format!("basis weight #{j} {b} pairs negatively with w0({lambda})"));
            }
        }
    }

    // (b): the box is taken in coordinates of the certified basis so that a
    // corrupted claimed basis is still tested on the true lattice
    let true_basis = a.weight_basis();
    let rank = d.rank();
    let bound = weight_box(rank);
    let claimed = crate::lattice::IntMatrix::from_cols(rank, &basis.iter().map(|w| w.0.clone()).collect::<Vec<_>>());
    let claimed_ok = basis.len() == rank && claimed.det() != 0;
    let side = (2 * bound + 1) as usize;
    let total = side.pow(rank as u32);
    let candidates: Vec<usize> = (0..total).collect();
    let failures: Vec<String> = Exec::default()
        .map(&candidates, |&idx| {
            let mut rest = idx;
            let mut w = Weight::zero(rank);
            for b in &true_basis {
                let c = (rest % side) as i64 - bound;
                rest /= side;
                w = &w + &b.scale(c);
            }
            if !d.is_dominant_weight(&w) || w0_coweights.iter().any(|l| pair(l, &w) < 0) {
                return None;
            }
            let expressible = claimed_ok
                && crate::lattice::solve_rational(&claimed, &w.0)
                    .and_then(|x| crate::lattice::integral(&x))
                    .is_some_and(|x| x.iter().all(|&c| c >= 0));
            (!expressible).then(|| format!("weight {w} satisfies the inequalities but is not a Z+-combination of the basis"))
        })
        .into_iter()
        .flatten()
        .collect();
    let checked_weights = total;
    counterexamples.extend(failures);

    // (c): candidates of degree k are ν − ω with ν ≤ (k + d_ω)γ; this covers
    // the whole level set plus dominant elements outside it
    let enumerated: HashSet<&Coweight> = coweights.iter().collect();
    for k in 1..=k_max as i64 {
        let top = a.gamma().scale(k + a.d_omega());
        for nu in d.dominant_below(&top) {
            let mu = &nu - a.omega();
            if d.is_dominant(&mu) && pairs_nonnegative(a, &mu, basis) != enumerated.contains(&mu) {
                counterexamples.push(format!("basis test and enumeration disagree on {mu}"));
            }
        }
    }

    DualConeVerdict {
        verified: counterexamples.is_empty(),
        k_max,
        checked_coweights: coweights.len(),
        checked_weights,
        counterexamples,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub coweight: Coweight,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBasisReport {
    pub generators: Vec<Generator>,
    pub verified_up_to: u32,
    pub elements_checked: usize,
    pub is_free: bool,
    /// Elements with no representation in the generators.
    pub representation_failures: Vec<Coweight>,
    /// Elements with more than one representation.
    pub non_unique: Vec<Coweight>,
}

impl HilbertBasisReport {
    pub fn generator_set(&self) -> Vec<Coweight> {
        let mut v: Vec<Coweight> = self.generators.iter().map(|g| g.coweight.clone()).collect();
        v.sort();
        v
    }
}

/// Irreducible elements of `Λ⁺_{G,S}` of degree at most `k_max`, and a
/// bounded freeness certificate.
pub fn hilbert_basis(a: &AdmissibleDatum, k_max: u32) -> Result<HilbertBasisReport> {
    hilbert_basis_with(a, k_max, Exec::default())
}

pub fn hilbert_basis_with(a: &AdmissibleDatum, k_max: u32, exec: Exec) -> Result<HilbertBasisReport> {
    if k_max == 0 {
        return Err(Error::Precondition("degree bound must be at least 1".into()));
    }
    let levels: Vec<Vec<Coweight>> = (0..=k_max).map(|k| level_set_with(a, k, exec).elements).collect();
    let sets: Vec<HashSet<&Coweight>> = levels.iter().map(|l| l.iter().collect()).collect();
    let mut generators = Vec::new();
    for k in 1..=k_max as usize {
        let irreducible = exec.filter(levels[k].clone(), |mu| {
            !(1..k).any(|j| levels[j].iter().any(|nu| sets[k - j].contains(&(mu - nu))))
        });
        generators.extend(irreducible.into_iter().map(|c| Generator { coweight: c, degree: k as u32 }));
    }
    let gens: Vec<Coweight> = generators.iter().map(|g| g.coweight.clone()).collect();
    let (failures, non_unique, checked) = representation_census(a, &levels, &gens, exec);
    Ok(HilbertBasisReport {
        is_free: failures.is_empty() && non_unique.is_empty(),
        generators,
        verified_up_to: k_max,
        elements_checked: checked,
        representation_failures: failures,
        non_unique,
    })
}

/// Checks that every element of the given levels has exactly one
/// representation as a `ℤ₊`-combination of `generators`.
pub fn verify_generators(a: &AdmissibleDatum, generators: &[Coweight], k_max: u32) -> HilbertBasisReport {
    let levels: Vec<Vec<Coweight>> = (0..=k_max).map(|k| level_set(a, k).elements).collect();
    let (failures, non_unique, checked) = representation_census(a, &levels, generators, Exec::default());
    HilbertBasisReport {
        generators: generators
            .iter()
            .map(|g| Generator { coweight: g.clone(), degree: a.degree(g).max(0) as u32 })
            .collect(),
        verified_up_to: k_max,
        elements_checked: checked,
        is_free: failures.is_empty() && non_unique.is_empty(),
        representation_failures: failures,
        non_unique,
    }
}

fn representation_census(
    a: &AdmissibleDatum,
    levels: &[Vec<Coweight>],
    generators: &[Coweight],
    exec: Exec,
) -> (Vec<Coweight>, Vec<Coweight>, usize) {
    let all: Vec<Coweight> = levels.iter().flatten().cloned().collect();
    let counts = exec.map(&all, |mu| count_representations(a, mu, generators, 2));
    let mut failures = Vec::new();
    let mut non_unique = Vec::new();
    for (mu, c) in all.iter().zip(counts) {
        match c {
            0 => failures.push(mu.clone()),
            1 => {}
            _ => non_unique.push(mu.clone()),
        }
    }
    (failures, non_unique, all.len())
}

/// Number of ways (capped at `cap`) to write `mu` as a `ℤ₊`-combination of
/// the generators. Generators must have positive degree.
pub fn count_representations(a: &AdmissibleDatum, mu: &Coweight, generators: &[Coweight], cap: u64) -> u64 {
    let degrees: Vec<i64> = generators.iter().map(|g| a.degree(g)).collect();
    if degrees.iter().any(|&d| d <= 0) {
        return 0;
    }
    let mut memo: HashMap<(Coweight, usize), u64> = HashMap::new();
    count_from(a, mu, 0, generators, cap, &mut memo)
}

fn count_from(
    a: &AdmissibleDatum,
    mu: &Coweight,
    idx: usize,
    generators: &[Coweight],
    cap: u64,
    memo: &mut HashMap<(Coweight, usize), u64>,
) -> u64 {
    if mu.is_zero() {
        return 1;
    }
    if idx == generators.len() || a.degree(mu) <= 0 {
        return 0;
    }
    if let Some(&c) = memo.get(&(mu.clone(), idx)) {
        return c;
    }
    let mut total = 0;
    let mut rest = mu.clone();
    loop {
        total += count_from(a, &rest, idx + 1, generators, cap, memo);
        if total >= cap {
            total = cap;
            break;
        }
        rest = &rest - &generators[idx];
        if a.degree(&rest) < 0 {
            break;
        }
    }
    memo.insert((mu.clone(), idx), total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn adm(c: &catalog::CatalogDatum) -> AdmissibleDatum {
        AdmissibleDatum::new(c.datum.clone(), c.gamma.clone()).unwrap()
    }

    #[test]
    fn small_levels() {
        let c = catalog::gl(3).unwrap();
        let a = adm(&c);
        assert_eq!(level_set(&a, 0).elements, vec![Coweight::zero(3)]);
        assert_eq!(level_set(&a, 1).elements, vec![c.gamma.clone()]);
        let g = catalog::gsp(2).unwrap();
        let a = adm(&g);
        let l2 = level_set(&a, 2).elements;
        for x in [g.gamma.scale(2), g.named_omega().unwrap(), g.named_gamma(1).unwrap()] {
            assert!(l2.contains(&x));
        }
    }

    #[test]
    fn membership() {
        let g = catalog::gsp(2).unwrap();
        let a = adm(&g);
        assert!(contains(&a, &g.gamma).unwrap());
        assert!(contains(&a, &g.named_omega().unwrap()).unwrap());
        let c = catalog::gl(3).unwrap();
        let a = adm(&c);
        // dominant, degree 1, but not below γ
        assert!(!contains(&a, &Coweight(vec![1, 1, -1])).unwrap());
        assert!(contains(&a, &Coweight(vec![0, 1, 0])).is_err());
    }

    #[test]
    fn gl3_basis_is_free() {
        let c = catalog::gl(3).unwrap();
        let a = adm(&c);
        let r = hilbert_basis(&a, 4).unwrap();
        assert_eq!(r.generator_set(), {
            let mut v = c.expected_generators().unwrap();
            v.sort();
            v
        });
        assert!(r.is_free);
    }

    #[test]
    fn corrupted_dual_basis_is_caught() {
        let c = catalog::gl(3).unwrap();
        let a = adm(&c);
        assert!(dual_cone_verify(&a, 3, &a.weight_basis()).verified);
        let mut bad = a.weight_basis();
        bad[1] = Weight(vec![1, -1, 0]);
        let v = dual_cone_verify(&a, 3, &bad);
        assert!(!v.verified && !v.counterexamples.is_empty());
    }
}
