//! Characters of the dual group.
//!
//! Representations `V^λ` of `Ǧ` have weights in `Λ`, and the roots of `Ǧ` are
//! the coroots of `G`, so everything here runs directly on the `G` datum:
//! dominance is `⟨λ, α̌_i⟩ ≥ 0` and the order is the `Λ^{pos}` order.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::root_datum::{pair, Coweight, RootDatum, ORBIT_CAP};
use num::{BigInt, ToPrimitive};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

pub const DEFAULT_DIM_CAP: u128 = 1_000_000;

/// Environment variable overriding [`DEFAULT_DIM_CAP`].
pub const DIM_CAP_ENV: &str = "MINUSCULE_DIM_CAP";

/// Largest partition size accepted by the Schur functor routines.
pub const PARTITION_SIZE_CAP: u32 = 12;

pub fn dimension_cap() -> u128 {
    std::env::var(DIM_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

/// A finite weight multiset, with integer (possibly negative, for virtual
/// characters) multiplicities. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Character {
    weights: BTreeMap<Coweight, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    pub fn trivial(rank: usize) -> Self {
        Self::from_map(BTreeMap::from([(Coweight::zero(rank), 1)]))
    }

    pub fn from_map(mut weights: BTreeMap<Coweight, i64>) -> Self {
        weights.retain(|_, m| *m != 0);
        Character { weights }
    }

    pub fn weights(&self) -> &BTreeMap<Coweight, i64> {
        &self.weights
    }

    pub fn multiplicity(&self, mu: &Coweight) -> i64 {
        self.weights.get(mu).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.weights.values().sum()
    }

    fn abs_dim(&self) -> u128 {
        self.weights.values().map(|m| m.unsigned_abs() as u128).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.weights.values().all(|&m| m == 1)
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut w = self.weights.clone();
        for (k, v) in &other.weights {
            *w.entry(k.clone()).or_insert(0) += v;
        }
        Character::from_map(w)
    }

    pub fn sub(&self, other: &Character) -> Character {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Character {
        Character::from_map(self.weights.iter().map(|(w, m)| (w.clone(), k * m)).collect())
    }

    /// The Adams operation `μ ↦ kμ`.
    pub fn adams(&self, k: i64) -> Character {
        Character::from_map(self.weights.iter().map(|(w, m)| (w.scale(k), *m)).collect())
    }

    /// Product of characters (tensor product of representations).
    pub fn mul(&self, other: &Character, exec: Exec, cap: u128) -> Result<Character> {
        let dim = self.abs_dim().saturating_mul(other.abs_dim());
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        let left: Vec<(&Coweight, &i64)> = self.weights.iter().collect();
        let partials = exec.map(&left, |(a, ma)| {
            other
                .weights
                .iter()
                .map(|(b, mb)| (*a + b, **ma * mb))
                .collect::<Vec<_>>()
        });
        let mut out = BTreeMap::new();
        for part in partials {
            for (w, m) in part {
                *out.entry(w).or_insert(0) += m;
            }
        }
        Ok(Character::from_map(out))
    }

    /// Restriction to dominant weights.
    pub fn dominant_part(&self, datum: &RootDatum) -> BTreeMap<Coweight, i64> {
        self.weights
            .iter()
            .filter(|(w, _)| datum.is_dominant(w))
            .map(|(w, m)| (w.clone(), *m))
            .collect()
    }

    pub fn is_weyl_invariant(&self, datum: &RootDatum) -> bool {
        self.weights.iter().all(|(w, m)| {
            (0..datum.num_simple()).all(|i| self.multiplicity(&datum.reflect(i, w)) == *m)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub highest_weight: Coweight,
    pub multiplicity: i64,
    pub dim: u128,
}

/// Irreducible decomposition, sorted by highest weight in decreasing
/// lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn multiplicity_of(&self, lambda: &Coweight) -> i64 {
        self.summands
            .iter()
            .find(|s| &s.highest_weight == lambda)
            .map_or(0, |s| s.multiplicity)
    }

    pub fn total_dim(&self) -> u128 {
        self.summands.iter().map(|s| s.multiplicity as u128 * s.dim).sum()
    }

    pub fn highest_weights(&self) -> Vec<Coweight> {
        self.summands.iter().map(|s| s.highest_weight.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

/// A partition `ν₁ ≥ … ≥ ν_ℓ > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("partition {parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// All partitions of `d`, in decreasing lexicographic order.
    pub fn all(d: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(acc.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                acc.push(p);
                go(rest - p, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(d, d, &mut vec![], &mut out);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    Exterior,
    Symmetric,
}

type Multiplicities = Arc<BTreeMap<Coweight, i64>>;

/// Representation theory of `Ǧ` for a fixed datum, with a cache of dominant
/// weight multiplicities.
pub struct Reps {
    datum: RootDatum,
    exec: Exec,
    cap: u128,
    /// `⟨α, α̌'⟩` for each positive coroot `α` against every positive root `α̌'`.
    coroot_pairings: Vec<Vec<i64>>,
    cache: Mutex<HashMap<Coweight, Multiplicities>>,
}

impl Reps {
    pub fn new(datum: &RootDatum) -> Self {
        let coroot_pairings = datum
            .positive_coroots()
            .iter()
            .map(|a| datum.positive_roots().iter().map(|r| pair(a, r)).collect())
            .collect();
        Reps {
            datum: datum.clone(),
            exec: Exec::default(),
            cap: dimension_cap(),
            coroot_pairings,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    fn require_dominant(&self, lambda: &Coweight) -> Result<()> {
        self.datum.check_coweight(lambda)?;
        if !self.datum.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        Ok(())
    }

    /// Weyl dimension formula
    /// `∏_{α̌>0} (2⟨λ,α̌⟩ + ⟨2ρ,α̌⟩) / ⟨2ρ,α̌⟩`.
    pub fn weyl_dimension(&self, lambda: &Coweight) -> Result<u128> {
        self.require_dominant(lambda)?;
        let two_rho = self.datum.two_rho();
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for r in self.datum.positive_roots() {
            let base = pair(&two_rho, r);
            num *= 2 * pair(lambda, r) + base;
            den *= base;
        }
        let q = &num / &den;
        debug_assert_eq!(&q * &den, num);
        q.to_u128().ok_or(Error::DimensionCap { dim: u128::MAX, cap: self.cap })
    }

    fn form_with_coroot(&self, v: &Coweight, k: usize) -> i64 {
        self.datum
            .positive_roots()
            .iter()
            .zip(&self.coroot_pairings[k])
            .map(|(r, p)| pair(v, r) * p)
            .sum()
    }

    fn form(&self, x: &Coweight, y: &Coweight) -> i64 {
        self.datum.positive_roots().iter().map(|r| pair(x, r) * pair(y, r)).sum()
    }

    /// Multiplicities of the dominant weights of `V^λ` (Freudenthal).
    pub fn dominant_multiplicities(&self, lambda: &Coweight) -> Result<Multiplicities> {
        self.require_dominant(lambda)?;
        if let Some(m) = self.cache.lock().expect("cache lock").get(lambda) {
            return Ok(m.clone());
        }
        let dim = self.weyl_dimension(lambda)?;
        if dim > self.cap {
            return Err(Error::DimensionCap { dim, cap: self.cap });
        }
        let m = Arc::new(self.freudenthal(lambda));
        self.cache.lock().expect("cache lock").insert(lambda.clone(), m.clone());
        Ok(m)
    }

    fn freudenthal(&self, lambda: &Coweight) -> BTreeMap<Coweight, i64> {
        let d = &self.datum;
        let two_rho = d.two_rho();
        let mut order: Vec<(i64, Coweight)> = d
            .dominant_below(lambda)
            .into_iter()
            .map(|mu| {
                let h: i64 = d.coroot_coordinates(&(lambda - &mu)).expect("below λ").iter().sum();
                (h, mu)
            })
            .collect();
        order.sort();
        let mut mult: HashMap<Coweight, i64> = HashMap::new();
        mult.insert(lambda.clone(), 1);
        let lookup = |mult: &HashMap<Coweight, i64>, v: &Coweight| -> i64 {
            mult.get(&d.dominant_conjugate(v)).copied().unwrap_or(0)
        };
        let sum_lr = lambda + &two_rho;
        for (_, mu) in order.iter().skip(1) {
            let coef = self.form(&(lambda - mu), &(&sum_lr + mu));
            let mut total = 0i64;
            for (k, alpha) in d.positive_coroots().iter().enumerate() {
                let mut v = mu + alpha;
                loop {
                    let m = lookup(&mult, &v);
                    if m == 0 {
                        break;
                    }
                    total += self.form_with_coroot(&v, k) * m;
                    v = &v + alpha;
                }
            }
            assert!(coef > 0 && (2 * total) % coef == 0, "Freudenthal recursion is not integral at {mu:?}");
            mult.insert(mu.clone(), 2 * total / coef);
        }
        mult.into_iter().filter(|(_, m)| *m != 0).collect()
    }

    /// The full character of `V^λ`.
    pub fn character(&self, lambda: &Coweight) -> Result<Character> {
        let dom = self.dominant_multiplicities(lambda)?;
        let entries: Vec<(&Coweight, &i64)> = dom.iter().collect();
        let orbits = self.exec.map(&entries, |(mu, m)| {
            self.datum
                .orbit_with(mu, None, ORBIT_CAP, Exec::Sequential)
                .map(|orbit| orbit.into_iter().map(|w| (w, **m)).collect::<Vec<_>>())
        });
        let mut out = BTreeMap::new();
        for orbit in orbits {
            out.extend(orbit?);
        }
        Ok(Character::from_map(out))
    }

    pub fn tensor_character(&self, a: &Character, b: &Character) -> Result<Character> {
        a.mul(b, self.exec, self.cap)
    }

    pub fn tensor_decompose(&self, lambda: &Coweight, mu: &Coweight) -> Result<Decomposition> {
        let a = self.character(lambda)?;
        let b = self.character(mu)?;
        self.peel(&self.tensor_character(&a, &b)?)
    }

    /// Decomposes a character into irreducibles by repeatedly removing the
    /// character of a highest remaining dominant weight (largest `⟨ν, 2ρ̌⟩`,
    /// ties broken by coordinates).
    pub fn peel(&self, chr: &Character) -> Result<Decomposition> {
        let two_rho_check = self.datum.two_rho_check();
        let mut rest = chr.dominant_part(&self.datum);
        let mut summands = Vec::new();
        loop {
            rest.retain(|_, m| *m != 0);
            let Some(top) = rest.keys().max_by_key(|nu| (pair(nu, &two_rho_check), (*nu).clone())).cloned() else {
                break;
            };
            let m = rest[&top];
            if m < 0 {
                return Err(Error::Precondition(format!(
                    "character is virtual: weight {top} has multiplicity {m} after peeling"
                )));
            }
            for (nu, k) in self.dominant_multiplicities(&top)?.iter() {
                *rest.entry(nu.clone()).or_insert(0) -= m * k;
            }
            summands.push(Summand { dim: self.weyl_dimension(&top)?, highest_weight: top, multiplicity: m });
        }
        summands.sort_by(|a, b| b.highest_weight.cmp(&a.highest_weight));
        Ok(Decomposition { summands })
    }

    /// `[e_0, …, e_k]` (or `[h_0, …, h_k]`) of a character, by Newton's
    /// identities from Adams operations.
    fn power_sequence(&self, chr: &Character, k: usize, kind: PowerKind) -> Result<Vec<Character>> {
        let rank = self.datum.rank();
        let adams: Vec<Character> = (0..=k).map(|i| chr.adams(i as i64)).collect();
        let mut seq = vec![Character::trivial(rank)];
        for j in 1..=k {
            let mut acc = Character::zero();
            for i in 1..=j {
                let term = self.tensor_character(&seq[j - i], &adams[i])?;
                let sign = if kind == PowerKind::Exterior && i % 2 == 0 { -1 } else { 1 };
                acc = acc.add(&term.scale(sign));
            }
            let mut divided = BTreeMap::new();
            for (w, m) in acc.weights() {
                if m % j as i64 != 0 {
                    return Err(Error::LemmaViolation(format!("Newton identity not divisible by {j} at {w}")));
                }
                divided.insert(w.clone(), m / j as i64);
            }
            seq.push(Character::from_map(divided));
        }
        Ok(seq)
    }

    pub fn exterior_power(&self, chr: &Character, k: usize) -> Result<Character> {
        Ok(self.power_sequence(chr, k, PowerKind::Exterior)?.pop().expect("k+1 terms"))
    }

    pub fn symmetric_power(&self, chr: &Character, k: usize) -> Result<Character> {
        Ok(self.power_sequence(chr, k, PowerKind::Symmetric)?.pop().expect("k+1 terms"))
    }

    pub fn wedge_sym_decompose(&self, lambda: &Coweight, k: usize, kind: PowerKind) -> Result<Decomposition> {
        if k == 0 {
            return Err(Error::Precondition("power must be at least 1".into()));
        }
        let chr = self.character(lambda)?;
        let p = match kind {
            PowerKind::Exterior => self.exterior_power(&chr, k)?,
            PowerKind::Symmetric => self.symmetric_power(&chr, k)?,
        };
        self.peel(&p)
    }

    /// Character of the Schur functor `S_ν` applied to `chr`, from the dual
    /// Jacobi–Trudi determinant `det(e_{ν'_i − i + j})`.
    pub fn schur(&self, chr: &Character, nu: &Partition) -> Result<Character> {
        if nu.size() > PARTITION_SIZE_CAP {
            return Err(Error::Precondition(format!(
                "partition size {} exceeds the cap {PARTITION_SIZE_CAP}",
                nu.size()
            )));
        }
        let rank = self.datum.rank();
        if nu.is_empty() {
            return Ok(Character::trivial(rank));
        }
        if nu.len() as i64 > chr.dim() {
            return Ok(Character::zero());
        }
        let conj = nu.conjugate();
        let m = conj.len();
        let max_index = conj.parts()[0] as usize + m;
        let e = self.power_sequence(chr, max_index, PowerKind::Exterior)?;
        let entry = |i: usize, j: usize| -> Option<&Character> {
            let idx = conj.parts()[i] as i64 - i as i64 + j as i64;
            (idx >= 0).then(|| &e[idx as usize])
        };
        let mut memo: HashMap<(usize, u32), Character> = HashMap::new();
        self.minor(0, (1u32 << m) - 1, m, &entry, &mut memo)
    }

    fn minor<'a, F>(
        &self,
        row: usize,
        cols: u32,
        m: usize,
        entry: &F,
        memo: &mut HashMap<(usize, u32), Character>,
    ) -> Result<Character>
    where
        F: Fn(usize, usize) -> Option<&'a Character>,
    {
        if row == m {
            return Ok(Character::trivial(self.datum.rank()));
        }
        if let Some(c) = memo.get(&(row, cols)) {
            return Ok(c.clone());
        }
        let mut acc = Character::zero();
        let mut position = 0;
        for c in 0..m {
            if cols & (1 << c) == 0 {
                continue;
            }
            if let Some(x) = entry(row, c) {
                if !x.is_zero() {
                    let rest = self.minor(row + 1, cols & !(1 << c), m, entry, memo)?;
                    let term = self.tensor_character(x, &rest)?;
                    acc = acc.add(&term.scale(if position % 2 == 0 { 1 } else { -1 }));
                }
            }
            position += 1;
        }
        memo.insert((row, cols), acc.clone());
        Ok(acc)
    }

    pub fn schur_decompose(&self, chr: &Character, nu: &Partition) -> Result<Decomposition> {
        self.peel(&self.schur(chr, nu)?)
    }

    /// Multiplicity of `V^λ` in a character.
    pub fn hom_multiplicity(&self, lambda: &Coweight, target: &Character) -> Result<i64> {
        self.require_dominant(lambda)?;
        Ok(self.peel(target)?.multiplicity_of(lambda))
    }

    /// For `parts = [(a_i, λ_i)]`, the multiplicity of `V^ν` with
    /// `ν = Σ a_i λ_i` in `⊗_i Sym^{a_i} V^{λ_i}`. This is always at least one.
    pub fn cartan_component(&self, parts: &[(usize, Coweight)]) -> Result<(Coweight, i64)> {
        let rank = self.datum.rank();
        let mut chr = Character::trivial(rank);
        let mut nu = Coweight::zero(rank);
        for (a, lambda) in parts {
            let base = self.character(lambda)?;
            let sym = if *a == 0 { Character::trivial(rank) } else { self.symmetric_power(&base, *a)? };
            chr = self.tensor_character(&chr, &sym)?;
            nu = &nu + &lambda.scale(*a as i64);
        }
        let mult = self.hom_multiplicity(&nu, &chr)?;
        if mult < 1 {
            return Err(Error::LemmaViolation(format!("Cartan component V^{nu} missing")));
        }
        Ok((nu, mult))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Weight;

    fn gl(n: usize) -> RootDatum {
        let v = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        };
        RootDatum::new(
            n,
            (0..n - 1).map(|i| Weight(v(i))).collect(),
            (0..n - 1).map(|i| Coweight(v(i))).collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn gl3_adjoint() {
        let reps = Reps::new(&gl(3));
        let adj = Coweight(vec![1, 0, -1]);
        assert_eq!(reps.weyl_dimension(&adj).unwrap(), 8);
        let ch = reps.character(&adj).unwrap();
        assert_eq!(ch.dim(), 8);
        assert_eq!(ch.multiplicity(&Coweight(vec![0, 0, 0])), 2);
        assert!(ch.is_weyl_invariant(reps.datum()));
    }

    #[test]
    fn gl3_tensor_and_powers() {
        let reps = Reps::new(&gl(3));
        let std = Coweight(vec![1, 0, 0]);
        let t = reps.tensor_decompose(&std, &std).unwrap();
        assert_eq!(t.highest_weights(), vec![Coweight(vec![2, 0, 0]), Coweight(vec![1, 1, 0])]);
        let w = reps.wedge_sym_decompose(&std, 3, PowerKind::Exterior).unwrap();
        assert_eq!(w.highest_weights(), vec![Coweight(vec![1, 1, 1])]);
        let s = reps.wedge_sym_decompose(&std, 2, PowerKind::Symmetric).unwrap();
        assert_eq!(s.highest_weights(), vec![Coweight(vec![2, 0, 0])]);
        let four = reps.wedge_sym_decompose(&std, 4, PowerKind::Exterior).unwrap();
        assert!(four.is_empty());
    }

    #[test]
    fn schur_shapes() {
        let reps = Reps::new(&gl(3));
        let ch = reps.character(&Coweight(vec![1, 0, 0])).unwrap();
        let s21 = reps.schur_decompose(&ch, &Partition::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(s21.highest_weights(), vec![Coweight(vec![2, 1, 0])]);
        assert_eq!(s21.total_dim(), 8);
        let s1111 = reps.schur(&ch, &Partition::new(vec![1, 1, 1, 1]).unwrap()).unwrap();
        assert!(s1111.is_zero());
    }

    #[test]
    fn partitions() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::new(vec![3, 1]).unwrap().conjugate(), Partition(vec![2, 1, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn rejects_non_dominant_and_cap() {
        let reps = Reps::new(&gl(3)).with_cap(5);
        assert!(matches!(reps.character(&Coweight(vec![0, 1, 0])), Err(Error::NotDominant(_))));
        assert!(matches!(reps.character(&Coweight(vec![1, 0, -1])), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn cartan_component_present() {
        let reps = Reps::new(&gl(3));
        let (nu, m) = reps
            .cartan_component(&[(2, Coweight(vec![1, 0, 0])), (1, Coweight(vec![1, 1, 0]))])
            .unwrap();
        assert_eq!(nu, Coweight(vec![3, 1, 0]));
        assert_eq!(m, 1);
    }
}
