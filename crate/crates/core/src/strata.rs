//! Dimension and support bookkeeping for the stratifications: partitions
//! `τ` of `dγ + w₀μ`, decompositions `𝔄(μ)`, orbit and fibration strata,
//! Whittaker support, and Hecke transitions.

use crate::admissible::AdmissibleDatum;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::levi::{theta_level, LeviDatum};
use crate::root_datum::{pair, Coweight, WeylElement, ORBIT_CAP};
use crate::semigroup;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

/// `const + d_N·[d_N] + d_G·[d_G] + d_M·[d_M]` with opaque symbols.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AffineDim {
    pub constant: i64,
    pub d_n: i64,
    pub d_g: i64,
    pub d_m: i64,
}

impl AffineDim {
    pub fn constant(c: i64) -> Self {
        AffineDim { constant: c, ..Default::default() }
    }

    pub fn same_symbols(&self, other: &AffineDim) -> bool {
        (self.d_n, self.d_g, self.d_m) == (other.d_n, other.d_g, other.d_m)
    }
}

impl PartialOrd for AffineDim {
    /// Defined only when the symbolic parts agree.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.same_symbols(other).then(|| self.constant.cmp(&other.constant))
    }
}

impl Add for AffineDim {
    type Output = AffineDim;
    fn add(self, o: AffineDim) -> AffineDim {
        AffineDim {
            constant: self.constant + o.constant,
            d_n: self.d_n + o.d_n,
            d_g: self.d_g + o.d_g,
            d_m: self.d_m + o.d_m,
        }
    }
}

impl Sub for AffineDim {
    type Output = AffineDim;
    fn sub(self, o: AffineDim) -> AffineDim {
        AffineDim {
            constant: self.constant - o.constant,
            d_n: self.d_n - o.d_n,
            d_g: self.d_g - o.d_g,
            d_m: self.d_m - o.d_m,
        }
    }
}

impl Serialize for AffineDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("const", &self.constant)?;
        for (name, c) in [("d_N", self.d_n), ("d_G", self.d_g), ("d_M", self.d_m)] {
            if c != 0 {
                m.serialize_entry(name, &c)?;
            }
        }
        m.end()
    }
}

impl fmt::Display for AffineDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (name, c) in [("d_N", self.d_n), ("d_G", self.d_g), ("d_M", self.d_m)] {
            match c {
                0 => {}
                1 => write!(f, " + {name}")?,
                c => write!(f, " + {c}*{name}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauPart {
    pub d: u64,
    pub mu: Coweight,
    /// `dγ + w₀μ`, a nonzero element of `Λ⁺_{G,S}`.
    pub value: Coweight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauPartition {
    pub d: u64,
    pub mu: Coweight,
    pub parts: Vec<TauPart>,
    pub dim: AffineDim,
}

impl TauPartition {
    pub fn m(&self) -> usize {
        self.parts.len()
    }
}

/// `dim ^τY = m + d_N + ⟨dγ − μ, 2ρ̌⟩`.
pub fn y_dimension(a: &AdmissibleDatum, d: u64, mu: &Coweight, m: usize) -> AffineDim {
    let shifted = &a.gamma().scale(d as i64) - mu;
    AffineDim {
        constant: m as i64 + pair(&shifted, &a.datum().two_rho_check()),
        d_n: 1,
        ..Default::default()
    }
}

/// All presentations of `dγ + w₀μ` as a sum of nonzero elements of
/// `Λ⁺_{G,S}`, parts ordered by degree and then reverse-lexicographically.
pub fn tau_partitions(a: &AdmissibleDatum, d: u64, mu: &Coweight) -> Result<Vec<TauPartition>> {
    tau_partitions_with(a, d, mu, Exec::default())
}

pub fn tau_partitions_with(a: &AdmissibleDatum, d: u64, mu: &Coweight, exec: Exec) -> Result<Vec<TauPartition>> {
    let datum = a.datum();
    datum.check_coweight(mu)?;
    if datum.pos_part_decompose(mu).is_none() {
        return Err(Error::Precondition(format!("{mu} is not in the positive coroot cone")));
    }
    let target = &a.gamma().scale(d as i64) + &a.w0().act(mu);
    if !datum.is_dominant(&target) {
        return Err(Error::NotDominant(target.0));
    }
    let mut candidates: Vec<Coweight> = Vec::new();
    for k in 1..=d as u32 {
        let mut level = semigroup::level_set(a, k).elements;
        level.retain(|x| !x.is_zero());
        level.sort_by(|x, y| y.cmp(x));
        candidates.extend(level);
    }
    let first: Vec<usize> = (0..candidates.len()).collect();
    let found: Vec<Vec<usize>> = exec.flat_map(&first, |&i| {
        let rest = &target - &candidates[i];
        let mut out = Vec::new();
        if semigroup::contains(a, &rest).unwrap_or(false) {
            let mut stack = vec![i];
            extend_partitions(a, &candidates, &rest, &mut stack, &mut out);
        }
        out
    });
    let w0 = a.w0();
    let gamma = a.gamma();
    Ok(found
        .into_iter()
        .map(|idx| {
            let parts: Vec<TauPart> = idx
                .iter()
                .map(|&i| {
                    let value = candidates[i].clone();
                    let k = a.degree(&value);
                    TauPart { d: k as u64, mu: w0.act(&(&value - &gamma.scale(k))), value }
                })
                .collect();
            let dim = y_dimension(a, d, mu, parts.len());
            TauPartition { d, mu: mu.clone(), parts, dim }
        })
        .collect())
}

fn extend_partitions(
    a: &AdmissibleDatum,
    candidates: &[Coweight],
    rest: &Coweight,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if rest.is_zero() {
        out.push(stack.clone());
        return;
    }
    let last = *stack.last().expect("stack starts nonempty");
    for j in last..candidates.len() {
        let next = rest - &candidates[j];
        if semigroup::contains(a, &next).unwrap_or(false) {
            stack.push(j);
            extend_partitions(a, candidates, &next, stack, out);
            stack.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuPart {
    pub n: u64,
    pub class: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuDecomposition {
    pub mu: Vec<i64>,
    pub parts: Vec<MuPart>,
    pub general_position: bool,
}

/// Every way to write `μ ∈ π₁⁺(M)` as `Σ n_k μ_k` with distinct nonzero
/// `μ_k ∈ π₁⁺(M)`.
pub fn mu_decompositions(l: &LeviDatum, mu: &[i64]) -> Result<Vec<MuDecomposition>> {
    if mu.len() != l.quotient().width() {
        return Err(Error::RankMismatch { expected: l.quotient().width(), got: mu.len() });
    }
    if !l.in_pi1_plus(mu)? {
        return Err(Error::Precondition(format!("{mu:?} is not in the positive part of pi_1(M)")));
    }
    let d = l.degree_of_class(mu) as u32;
    let mut levels: Vec<Vec<Vec<i64>>> = Vec::new();
    for k in 0..=d {
        levels.push(l.pi1_plus_level(k)?);
    }
    let candidates: Vec<Vec<i64>> = levels[1..].iter().flatten().cloned().collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    decompose_rec(l, &levels, &candidates, mu, 0, &mut stack, &mut out);
    Ok(out
        .into_iter()
        .map(|idx| {
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            for i in idx {
                *counts.entry(i).or_default() += 1;
            }
            let parts: Vec<MuPart> =
                counts.into_iter().map(|(i, n)| MuPart { n, class: candidates[i].clone() }).collect();
            let total: u64 = parts.iter().map(|p| p.n).sum();
            MuDecomposition { mu: mu.to_vec(), parts, general_position: total == d as u64 }
        })
        .collect())
}

fn decompose_rec(
    l: &LeviDatum,
    levels: &[Vec<Vec<i64>>],
    candidates: &[Vec<i64>],
    rest: &[i64],
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if rest.iter().all(|&x| x == 0) {
        out.push(stack.clone());
        return;
    }
    for j in start..candidates.len() {
        let next: Vec<i64> = rest.iter().zip(&candidates[j]).map(|(x, y)| x - y).collect();
        let k = l.degree_of_class(&next);
        if k < 0 || !levels[k as usize].contains(&next) {
            continue;
        }
        stack.push(j);
        decompose_rec(l, levels, candidates, &next, j, stack, out);
        stack.pop();
    }
}

/// All general-position decompositions of total degree `d`.
///
/// Nonzero elements of `π₁⁺(M)` have positive degree, so `Σ n_k = d` forces
/// every part into `π₁^θ(M)`: these are the compositions of `d` over the
/// degree-one classes.
pub fn general_position_decompositions(l: &LeviDatum, d: u64) -> Result<Vec<MuDecomposition>> {
    let classes = theta_level(l)?.images;
    let width = l.quotient().width();
    let mut out = Vec::new();
    let mut counts = vec![0u64; classes.len()];
    compositions(d, 0, &mut counts, &mut |c| {
        let mut mu = vec![0i64; width];
        let mut parts = Vec::new();
        for (n, class) in c.iter().zip(&classes) {
            if *n > 0 {
                for (m, x) in mu.iter_mut().zip(class) {
                    *m += *n as i64 * x;
                }
                parts.push(MuPart { n: *n, class: class.clone() });
            }
        }
        out.push(MuDecomposition { mu, parts, general_position: true });
    });
    Ok(out)
}

fn compositions(rest: u64, i: usize, counts: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if counts.is_empty() {
        return;
    }
    if i + 1 == counts.len() {
        counts[i] = rest;
        f(counts);
        return;
    }
    for n in 0..=rest {
        counts[i] = n;
        compositions(rest - n, i + 1, counts, f);
    }
}

fn half(doubled: i64, what: &str) -> Result<i64> {
    if doubled % 2 != 0 {
        return Err(Error::LemmaViolation(format!("{what} = {doubled}/2 is not an integer")));
    }
    Ok(doubled / 2)
}

fn require_orbit(a: &AdmissibleDatum, w_gamma: &Coweight) -> Result<()> {
    if a.orbit().binary_search(w_gamma).is_err() {
        return Err(Error::NotInOrbit(w_gamma.0.clone()));
    }
    Ok(())
}

/// `⟨γ + wγ, ρ̌⟩`, the dimension of the affine cell through `wγ`.
pub fn orbit_stratum_dim(a: &AdmissibleDatum, w: &WeylElement) -> Result<i64> {
    orbit_stratum_dim_at(a, &w.act(a.gamma()))
}

pub fn orbit_stratum_dim_at(a: &AdmissibleDatum, w_gamma: &Coweight) -> Result<i64> {
    require_orbit(a, w_gamma)?;
    let v = pair(&(a.gamma() + w_gamma), &a.datum().two_rho_check());
    half(v, "<gamma + w gamma, rho>")
}

/// Cells `⟨γ + w₁wγ, ρ̌⟩` over `w₁ ∈ W_M`, with their maximum, which is
/// attained at the `M`-dominant conjugate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviOrbitDims {
    pub cells: Vec<(Coweight, i64)>,
    pub max: i64,
    pub m_dominant: Coweight,
}

pub fn levi_orbit_dims(l: &LeviDatum, w_gamma: &Coweight) -> Result<LeviOrbitDims> {
    let a = l.parent();
    require_orbit(a, w_gamma)?;
    let m_orbit = a.datum().orbit_with(w_gamma, Some(l.subset()), ORBIT_CAP, Exec::Sequential)?;
    let mut cells = Vec::new();
    for v in m_orbit {
        let dim = orbit_stratum_dim_at(a, &v)?;
        cells.push((v, dim));
    }
    let max = cells.iter().map(|c| c.1).max().expect("orbit is nonempty");
    let m_dominant = cells
        .iter()
        .find(|(v, _)| l.is_m_dominant(v))
        .map(|c| c.0.clone())
        .expect("every orbit has a dominant element");
    let at_dominant = orbit_stratum_dim_at(a, &m_dominant)?;
    if at_dominant != max {
        return Err(Error::LemmaViolation(format!(
            "maximum {max} over the Levi orbit of {w_gamma} differs from {at_dominant} at {m_dominant}"
        )));
    }
    Ok(LeviOrbitDims { cells, max, m_dominant })
}

/// `⟨γ + wγ, ρ̌⟩ + ⟨γ − wγ, ρ̌⟩ = ⟨2γ, ρ̌⟩`, each side halved separately.
pub fn telescoping_holds(a: &AdmissibleDatum, w_gamma: &Coweight) -> Result<bool> {
    let tr = a.datum().two_rho_check();
    let plus = orbit_stratum_dim_at(a, w_gamma)?;
    let minus = half(pair(&(a.gamma() - w_gamma), &tr), "<gamma - w gamma, rho>")?;
    let total = pair(a.gamma(), &tr);
    Ok(plus + minus == total)
}

/// One `W_M\W/W_J` stratum of `Gr^γ_G`, indexed by the `M`-dominant `wγ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationStratum {
    pub m_dominant: Coweight,
    /// `⟨γ + wγ, ρ̌⟩`.
    pub total_dim: i64,
    /// `⟨wγ, 2ρ̌_M⟩`, the dimension of the `M`-orbit.
    pub m_flag_dim: i64,
    /// `⟨γ + wγ, ρ̌⟩ − ⟨wγ, 2ρ̌_M⟩`.
    pub fiber_dim: i64,
    /// Every cell `⟨γ + w₁wγ, ρ̌⟩` equals the fiber plus the `M`-cell
    /// `⟨wγ + w₁wγ, ρ̌_M⟩`.
    pub cells_consistent: bool,
}

pub fn fibration_strata(l: &LeviDatum) -> Result<Vec<FibrationStratum>> {
    let tr_m = l.two_rho_check_m();
    let mut out = Vec::new();
    for lam in theta_level(l)?.elements {
        let dims = levi_orbit_dims(l, &lam)?;
        let total_dim = dims.max;
        let m_flag_dim = pair(&lam, tr_m);
        let fiber_dim = total_dim - m_flag_dim;
        let mut cells_consistent = true;
        for (v, dim) in &dims.cells {
            let m_cell = half(pair(&(&lam + v), tr_m), "<lambda + w1 lambda, rho_M>")?;
            cells_consistent &= *dim == fiber_dim + m_cell;
        }
        out.push(FibrationStratum { m_dominant: lam, total_dim, m_flag_dim, fiber_dim, cells_consistent });
    }
    Ok(out)
}

/// `a(𝔄) = ⟨dγ, ρ̌⟩ + Σ ⟨n_k λ_k, ρ̌ − 2ρ̌_M⟩`.
pub fn convolution_dim(l: &LeviDatum, decomposition: &MuDecomposition) -> Result<i64> {
    if !decomposition.general_position {
        return Err(Error::Precondition("decomposition is not in general position".into()));
    }
    let a = l.parent();
    let theta = theta_level(l)?;
    let tr = a.datum().two_rho_check();
    let tr_m = l.two_rho_check_m();
    let d: u64 = decomposition.parts.iter().map(|p| p.n).sum();
    let mut doubled = d as i64 * pair(a.gamma(), &tr);
    for p in &decomposition.parts {
        let lam = theta
            .lift(&p.class)
            .ok_or_else(|| Error::Precondition(format!("class {:?} is not of degree one", p.class)))?;
        doubled += p.n as i64 * (pair(lam, &tr) - 2 * pair(lam, tr_m));
    }
    let value = half(doubled, "a(A)")?;
    if value < 0 {
        return Err(Error::LemmaViolation(format!("a(A) = {value} is negative")));
    }
    Ok(value)
}

/// Every `ν_k = −w₀(γ)d_k − μ_k` is dominant.
pub fn whittaker_support(a: &AdmissibleDatum, parts: &[(u64, Coweight)]) -> bool {
    let minus_w0_gamma = -a.w0().act(a.gamma());
    parts
        .iter()
        .all(|(d, mu)| a.datum().is_dominant(&(&minus_w0_gamma.scale(*d as i64) - mu)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeTransition {
    pub mu_prime: Coweight,
    pub contributes: bool,
}

/// `μ′ = μ + w₀wγ − w₀γ`; the point contributes when `−w₀(γ)d_x − μ_x` and
/// `γd_x + w₀μ_x + wγ` are both dominant.
pub fn hecke_transition(
    a: &AdmissibleDatum,
    mu: &Coweight,
    w: &WeylElement,
    d_x: u64,
    mu_x: &Coweight,
) -> Result<HeckeTransition> {
    hecke_transition_at(a, mu, &w.act(a.gamma()), d_x, mu_x)
}

pub fn hecke_transition_at(
    a: &AdmissibleDatum,
    mu: &Coweight,
    w_gamma: &Coweight,
    d_x: u64,
    mu_x: &Coweight,
) -> Result<HeckeTransition> {
    let datum = a.datum();
    datum.check_coweight(mu)?;
    datum.check_coweight(mu_x)?;
    require_orbit(a, w_gamma)?;
    for v in [mu, mu_x] {
        if datum.pos_part_decompose(v).is_none() {
            return Err(Error::Precondition(format!("{v} is not in the positive coroot cone")));
        }
    }
    let w0 = a.w0();
    let mu_prime = &(mu + &w0.act(w_gamma)) - &w0.act(a.gamma());
    let d = d_x as i64;
    let nu = &(-w0.act(a.gamma())).scale(d) - mu_x;
    let local = &(&a.gamma().scale(d) + &w0.act(mu_x)) + w_gamma;
    let contributes = datum.is_dominant(&nu) && datum.is_dominant(&local);
    if datum.pos_part_decompose(&mu_prime).is_none() {
        return Err(Error::LemmaViolation(format!("transition {mu_prime} left the positive cone")));
    }
    Ok(HeckeTransition { mu_prime, contributes })
}
