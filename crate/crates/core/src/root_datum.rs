//! Based root data over `ℤ^N` with the dot-product pairing, Weyl group
//! elements, orbits and the two lattice quotients (π₁ and the character
//! group of the center).

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::{self, dot, IntMatrix, Rational, SmithForm};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Default safety cap on orbit sizes. E7's full Weyl group (2 903 040) fits.
pub const ORBIT_CAP: usize = 10_000_000;

const POSITIVE_ROOT_CAP: usize = 20_000;

macro_rules! lattice_vector {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            pub fn scale(&self, k: i64) -> Self {
                $name(self.0.iter().map(|x| k * x).collect())
            }

            pub fn basis(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i] = 1;
                $name(v)
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(v: Vec<i64>) -> Self {
                $name(v)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, x) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }
    };
}

lattice_vector!(Coweight);
lattice_vector!(Weight);

/// The perfect pairing `Λ × Λ̌ → ℤ`.
pub fn pair(lambda: &Coweight, check: &Weight) -> i64 {
    dot(&lambda.0, &check.0)
}

/// Solves `v = Σ c_i b_i` for a fixed family of linearly independent vectors
/// `b_i`, using a precomputed inverse of a maximal invertible row block.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
    inverse_num: IntMatrix,
    inverse_den: i64,
}

impl CoordinateSolver {
    fn new(dim: usize, vectors: &[Vec<i64>]) -> Option<Self> {
        let basis = IntMatrix::from_cols(dim, vectors);
        let n = vectors.len();
        // greedy choice of independent rows
        let mut pivot_rows = Vec::new();
        for r in 0..dim {
            let mut trial: Vec<Vec<i64>> = pivot_rows.iter().map(|&p| basis.row(p).to_vec()).collect();
            trial.push(basis.row(r).to_vec());
            if IntMatrix::from_rows(n, &trial).rank() == trial.len() {
                pivot_rows.push(r);
            }
            if pivot_rows.len() == n {
                break;
            }
        }
        if pivot_rows.len() < n {
            return None;
        }
        let block: Vec<Vec<i64>> = pivot_rows.iter().map(|&p| basis.row(p).to_vec()).collect();
        let block = IntMatrix::from_rows(n, &block);
        let inv = lattice::rational_inverse(&block)?;
        let den = inv
            .iter()
            .flatten()
            .fold(1i128, |acc, q| num::integer::lcm(acc, *q.denom()));
        let rows: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| row.iter().map(|q| (q * Rational::from_integer(den)).to_integer() as i64).collect())
            .collect();
        Some(CoordinateSolver {
            basis,
            pivot_rows,
            inverse_num: IntMatrix::from_rows(n, &rows),
            inverse_den: den as i64,
        })
    }

    /// Rational coordinates, or `None` when `v` is outside the rational span.
    pub fn rational(&self, v: &[i64]) -> Option<Vec<Rational>> {
        let picked: Vec<i64> = self.pivot_rows.iter().map(|&r| v[r]).collect();
        let num = self.inverse_num.mul_vec(&picked);
        let coords: Vec<Rational> = num
            .iter()
            .map(|&x| Rational::new(x as i128, self.inverse_den as i128))
            .collect();
        // verify the full system, not only the pivot block
        for r in 0..self.basis.rows() {
            let lhs: Rational = self
                .basis
                .row(r)
                .iter()
                .zip(&coords)
                .map(|(&b, c)| c * Rational::from_integer(b as i128))
                .sum();
            if lhs != Rational::from_integer(v[r] as i128) {
                return None;
            }
        }
        Some(coords)
    }

    /// Integral coordinates, or `None` when `v` is not in the ℤ-span.
    pub fn integral(&self, v: &[i64]) -> Option<Vec<i64>> {
        let picked: Vec<i64> = self.pivot_rows.iter().map(|&r| v[r]).collect();
        let num = self.inverse_num.mul_vec(&picked);
        if num.iter().any(|x| x % self.inverse_den != 0) {
            return None;
        }
        let coords: Vec<i64> = num.iter().map(|x| x / self.inverse_den).collect();
        (self.basis.mul_vec(&coords) == v).then_some(coords)
    }
}

/// A Weyl group element, stored as its matrix on `Λ` together with a word in
/// the simple reflections. `word[0]` is the leftmost factor. Equality compares
/// matrices only.
#[derive(Clone, Debug, Serialize)]
pub struct WeylElement {
    #[serde(serialize_with = "ser_matrix")]
    matrix: IntMatrix,
    #[serde(skip)]
    dual_matrix: IntMatrix,
    word: Vec<usize>,
}

fn ser_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { matrix: IntMatrix::identity(rank), dual_matrix: IntMatrix::identity(rank), word: vec![] }
    }

    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(datum.rank);
        for &i in word.iter().rev() {
            if i >= datum.num_simple() {
                return Err(Error::InvalidIndex(i));
            }
            w = datum.reflection(i).compose(&w);
        }
        Ok(w)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            matrix: self.matrix.mul(&other.matrix),
            dual_matrix: self.dual_matrix.mul(&other.dual_matrix),
            word,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement {
            matrix: self.dual_matrix.transpose(),
            dual_matrix: self.matrix.transpose(),
            word,
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn act(&self, lambda: &Coweight) -> Coweight {
        Coweight(self.matrix.mul_vec(&lambda.0))
    }

    pub fn act_weight(&self, check: &Weight) -> Weight {
        Weight(self.dual_matrix.mul_vec(&check.0))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// A finitely generated abelian quotient `ℤ^N / L`, in Smith coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianQuotient {
    /// Invariant factors greater than one.
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
    /// Rows of `U` (from `U·G·V = D`) that survive in the quotient: torsion
    /// rows first, then free rows.
    #[serde(skip)]
    rows: IntMatrix,
    #[serde(skip)]
    moduli: Vec<i64>,
    #[serde(skip)]
    kept: Vec<usize>,
    #[serde(skip)]
    u_inverse: IntMatrix,
}

impl AbelianQuotient {
    /// Quotient of `ℤ^dim` by the span of `generators`.
    pub fn of_span(dim: usize, generators: &[Vec<i64>]) -> Self {
        let g = if generators.is_empty() {
            IntMatrix::zeros(dim, 0)
        } else {
            IntMatrix::from_cols(dim, generators)
        };
        let SmithForm { u, diagonal, .. } = lattice::smith_normal_form(&g);
        let rank = diagonal.len();
        let mut kept = Vec::new();
        let mut moduli = Vec::new();
        let mut invariant_factors = Vec::new();
        for (r, &d) in diagonal.iter().enumerate() {
            if d != 1 {
                kept.push(r);
                moduli.push(d);
                invariant_factors.push(d);
            }
        }
        for r in rank..dim {
            kept.push(r);
            moduli.push(0);
        }
        let rows: Vec<Vec<i64>> = kept.iter().map(|&r| u.row(r).to_vec()).collect();
        let u_inverse = u.unimodular_inverse().expect("Smith transform is unimodular");
        AbelianQuotient {
            invariant_factors,
            free_rank: dim - rank,
            rows: IntMatrix::from_rows(dim, &rows),
            moduli,
            kept,
            u_inverse,
        }
    }

    /// Number of coordinates of a projected element.
    pub fn width(&self) -> usize {
        self.moduli.len()
    }

    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        let y = self.rows.mul_vec(x);
        y.iter()
            .zip(&self.moduli)
            .map(|(&v, &m)| if m == 0 { v } else { v.rem_euclid(m) })
            .collect()
    }

    /// Some preimage of a quotient element.
    pub fn lift(&self, coords: &[i64]) -> Vec<i64> {
        let mut y = vec![0; self.u_inverse.rows()];
        for (&r, &c) in self.kept.iter().zip(coords) {
            y[r] = c;
        }
        self.u_inverse.mul_vec(&y)
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn is_free_rank_one(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 1
    }

    /// Order of an element (`None` if it has infinite order).
    pub fn order(&self, x: &[i64]) -> Option<u64> {
        let p = self.project(x);
        let mut order: i64 = 1;
        for (v, &m) in p.iter().zip(&self.moduli) {
            if m == 0 {
                if *v != 0 {
                    return None;
                }
            } else {
                let g = num::integer::gcd(*v, m);
                order = num::integer::lcm(order, m / g);
            }
        }
        Some(order as u64)
    }

    /// Flips the free coordinate so that `x` projects to a positive value.
    pub(crate) fn orient_free_positive(&mut self, x: &[i64]) {
        if let Some(idx) = self.moduli.iter().position(|&m| m == 0) {
            if self.project(x)[idx] < 0 {
                let cols = self.rows.cols();
                let mut rows = self.rows.to_rows();
                rows[idx].iter_mut().for_each(|v| *v = -*v);
                self.rows = IntMatrix::from_rows(cols, &rows);
                // keep lift consistent: negate the matching column of U⁻¹
                let r = self.kept[idx];
                let mut inv = self.u_inverse.clone();
                for i in 0..inv.rows() {
                    inv[(i, r)] = -inv[(i, r)];
                }
                self.u_inverse = inv;
            }
        }
    }
}

/// JSON on-disk form of a root datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumFile {
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

/// A based root datum. Coweights and weights both live in `ℤ^rank` and pair
/// by the dot product. Simple coroots are the `α_i`, simple roots the `α̌_i`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Coweight>,
    labels: Vec<String>,
    /// `cartan[(i, j)] = ⟨α_i, α̌_j⟩`.
    cartan: IntMatrix,
    positive_roots: Vec<Weight>,
    /// Paired index-wise with `positive_roots`.
    positive_coroots: Vec<Coweight>,
    /// Coefficients of each positive coroot in the simple coroots.
    coroot_coefficients: Vec<Vec<i64>>,
    root_coefficients: Vec<Vec<i64>>,
    coroot_solver: Option<CoordinateSolver>,
    root_solver: Option<CoordinateSolver>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    pub fn new(
        rank: usize,
        simple_roots: Vec<Weight>,
        simple_coroots: Vec<Coweight>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::RankMismatch { expected: 1, got: 0 });
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::Precondition(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        for v in simple_roots.iter().map(|r| r.len()).chain(simple_coroots.iter().map(|c| c.len())) {
            if v != rank {
                return Err(Error::RankMismatch { expected: rank, got: v });
            }
        }
        let n = simple_roots.len();
        let labels = match labels {
            Some(l) if !l.is_empty() => {
                if l.len() != n {
                    return Err(Error::Precondition(format!("{} labels for {} simple roots", l.len(), n)));
                }
                l
            }
            _ => (1..=n).map(|i| i.to_string()).collect(),
        };
        let mut cartan = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                cartan[(i, j)] = pair(&simple_coroots[i], &simple_roots[j]);
            }
        }
        for i in 0..n {
            if cartan[(i, i)] != 2 {
                return Err(Error::InvalidCartan { i, j: i, value: cartan[(i, i)] });
            }
            for j in 0..n {
                if i != j && (cartan[(i, j)] > 0 || (cartan[(i, j)] == 0) != (cartan[(j, i)] == 0)) {
                    return Err(Error::InvalidCartan { i, j, value: cartan[(i, j)] });
                }
            }
        }
        let root_vecs: Vec<Vec<i64>> = simple_roots.iter().map(|r| r.0.clone()).collect();
        let coroot_vecs: Vec<Vec<i64>> = simple_coroots.iter().map(|c| c.0.clone()).collect();
        let (root_solver, coroot_solver) = if n == 0 {
            (None, None)
        } else {
            let rs = CoordinateSolver::new(rank, &root_vecs).ok_or(Error::DependentSimple { what: "roots" })?;
            let cs =
                CoordinateSolver::new(rank, &coroot_vecs).ok_or(Error::DependentSimple { what: "coroots" })?;
            (Some(rs), Some(cs))
        };

        let mut datum = RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            labels,
            cartan,
            positive_roots: vec![],
            positive_coroots: vec![],
            coroot_coefficients: vec![],
            root_coefficients: vec![],
            coroot_solver,
            root_solver,
        };
        datum.enumerate_positive_roots()?;
        Ok(datum)
    }

    pub fn from_file(file: &DatumFile) -> Result<Self> {
        let labels = (!file.labels.is_empty()).then(|| file.labels.clone());
        Self::new(
            file.rank,
            file.simple_roots.iter().cloned().map(Weight).collect(),
            file.simple_coroots.iter().cloned().map(Coweight).collect(),
            labels,
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DatumFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> DatumFile {
        DatumFile {
            rank: self.rank,
            simple_roots: self.simple_roots.iter().map(|r| r.0.clone()).collect(),
            simple_coroots: self.simple_coroots.iter().map(|c| c.0.clone()).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Positive roots by closure of the simple roots under simple reflections,
    /// tracked in simple-root coefficients. A runaway count means the Cartan
    /// matrix is not of finite type.
    fn enumerate_positive_roots(&mut self) -> Result<()> {
        let n = self.num_simple();
        let a = &self.cartan;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut roots: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            roots.push((e.clone(), e));
        }
        let mut head = 0;
        while head < roots.len() {
            let (c, d) = roots[head].clone();
            head += 1;
            for i in 0..n {
                let root_pair: i64 = (0..n).map(|j| c[j] * a[(i, j)]).sum();
                if root_pair == 0 {
                    continue;
                }
                let mut c2 = c.clone();
                c2[i] -= root_pair;
                if c2.iter().any(|&x| x < 0) || c2.iter().all(|&x| x == 0) {
                    continue;
                }
                if seen.insert(c2.clone()) {
                    let coroot_pair: i64 = (0..n).map(|j| d[j] * a[(j, i)]).sum();
                    let mut d2 = d.clone();
                    d2[i] -= coroot_pair;
                    roots.push((c2, d2));
                    if roots.len() > POSITIVE_ROOT_CAP {
                        return Err(Error::InfiniteWeylGroup { cap: POSITIVE_ROOT_CAP });
                    }
                }
            }
        }
        roots.sort();
        for (c, d) in roots {
            let mut r = vec![0; self.rank];
            let mut cr = vec![0; self.rank];
            for i in 0..n {
                for k in 0..self.rank {
                    r[k] += c[i] * self.simple_roots[i].0[k];
                    cr[k] += d[i] * self.simple_coroots[i].0[k];
                }
            }
            if d.iter().any(|&x| x < 0) {
                return Err(Error::InfiniteWeylGroup { cap: POSITIVE_ROOT_CAP });
            }
            self.positive_roots.push(Weight(r));
            self.positive_coroots.push(Coweight(cr));
            self.root_coefficients.push(c);
            self.coroot_coefficients.push(d);
        }
        // a finite root system pairs each root with its coroot to 2
        for (r, c) in self.positive_roots.iter().zip(&self.positive_coroots) {
            if pair(c, r) != 2 {
                return Err(Error::InfiniteWeylGroup { cap: POSITIVE_ROOT_CAP });
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots (semisimple rank).
    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Coweight] {
        &self.simple_coroots
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.positive_coroots
    }

    /// Height of each positive coroot (sum of its simple-coroot coefficients).
    pub fn coroot_heights(&self) -> Vec<i64> {
        self.coroot_coefficients.iter().map(|c| c.iter().sum()).collect()
    }

    pub fn root_coefficients(&self) -> &[Vec<i64>] {
        &self.root_coefficients
    }

    /// `2ρ` in `Λ`: the sum of positive coroots.
    pub fn two_rho(&self) -> Coweight {
        self.positive_coroots.iter().fold(Coweight::zero(self.rank), |acc, c| &acc + c)
    }

    /// `2ρ̌` in `Λ̌`: the sum of positive roots.
    pub fn two_rho_check(&self) -> Weight {
        self.positive_roots.iter().fold(Weight::zero(self.rank), |acc, r| &acc + r)
    }

    pub fn dual(&self) -> RootDatum {
        RootDatum::new(
            self.rank,
            self.simple_coroots.iter().map(|c| Weight(c.0.clone())).collect(),
            self.simple_roots.iter().map(|r| Coweight(r.0.clone())).collect(),
            Some(self.labels.clone()),
        )
        .expect("dual of a valid datum is valid")
    }

    /// The datum of the Levi subgroup cut out by a Dynkin subset.
    pub fn sub_datum(&self, subset: &[usize]) -> Result<RootDatum> {
        self.check_subset(subset)?;
        RootDatum::new(
            self.rank,
            subset.iter().map(|&i| self.simple_roots[i].clone()).collect(),
            subset.iter().map(|&i| self.simple_coroots[i].clone()).collect(),
            Some(subset.iter().map(|&i| self.labels[i].clone()).collect()),
        )
    }

    pub fn check_subset(&self, subset: &[usize]) -> Result<()> {
        let mut seen = HashSet::new();
        for &i in subset {
            if i >= self.num_simple() || !seen.insert(i) {
                return Err(Error::InvalidIndex(i));
            }
        }
        Ok(())
    }

    pub fn check_coweight(&self, lambda: &Coweight) -> Result<()> {
        if lambda.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: lambda.len() });
        }
        Ok(())
    }

    /// `⟨λ, α̌_i⟩` for every simple root.
    pub fn simple_pairings(&self, lambda: &Coweight) -> Vec<i64> {
        self.simple_roots.iter().map(|r| pair(lambda, r)).collect()
    }

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|r| pair(lambda, r) >= 0)
    }

    pub fn is_dominant_weight(&self, check: &Weight) -> bool {
        self.simple_coroots.iter().all(|c| pair(c, check) >= 0)
    }

    pub fn reflect(&self, i: usize, lambda: &Coweight) -> Coweight {
        let k = pair(lambda, &self.simple_roots[i]);
        lambda - &self.simple_coroots[i].scale(k)
    }

    pub fn reflect_weight(&self, i: usize, check: &Weight) -> Weight {
        let k = pair(&self.simple_coroots[i], check);
        check - &self.simple_roots[i].scale(k)
    }

    pub fn reflection(&self, i: usize) -> WeylElement {
        let n = self.rank;
        let mut m = IntMatrix::identity(n);
        let mut dm = IntMatrix::identity(n);
        let (a, ac) = (&self.simple_coroots[i].0, &self.simple_roots[i].0);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] -= a[r] * ac[c];
                dm[(r, c)] -= ac[r] * a[c];
            }
        }
        WeylElement { matrix: m, dual_matrix: dm, word: vec![i] }
    }

    /// Returns `(λ⁺, w)` with `wλ = λ⁺` dominant.
    pub fn dominantize(&self, lambda: &Coweight) -> (Coweight, WeylElement) {
        self.dominantize_in(lambda, None)
    }

    /// Dominantization for the Levi generated by `subset` (all of 𝐈 if `None`).
    pub fn dominantize_in(&self, lambda: &Coweight, subset: Option<&[usize]>) -> (Coweight, WeylElement) {
        let all: Vec<usize> = (0..self.num_simple()).collect();
        let subset = subset.unwrap_or(&all);
        let mut current = lambda.clone();
        let mut applied = Vec::new();
        while let Some(&i) = subset.iter().find(|&&i| pair(&current, &self.simple_roots[i]) < 0) {
            current = self.reflect(i, &current);
            applied.push(i);
        }
        applied.reverse();
        let w = WeylElement::from_word(self, &applied).expect("indices come from the datum");
        (current, w)
    }

    /// The dominant element of `Wλ`, without tracking the Weyl element.
    pub fn dominant_conjugate(&self, lambda: &Coweight) -> Coweight {
        let mut v = lambda.clone();
        loop {
            let Some(i) = (0..self.num_simple()).find(|&i| pair(&v, &self.simple_roots[i]) < 0) else {
                return v;
            };
            let k = pair(&v, &self.simple_roots[i]);
            for (x, a) in v.0.iter_mut().zip(&self.simple_coroots[i].0) {
                *x -= k * a;
            }
        }
    }

    pub fn weyl_orbit(&self, lambda: &Coweight) -> Result<Vec<Coweight>> {
        self.orbit_with(lambda, None, ORBIT_CAP, Exec::default())
    }

    /// Orbit under the subgroup generated by `subset` (all of `W` if `None`),
    /// returned in sorted order.
    pub fn orbit_with(
        &self,
        lambda: &Coweight,
        subset: Option<&[usize]>,
        cap: usize,
        exec: Exec,
    ) -> Result<Vec<Coweight>> {
        let all: Vec<usize> = (0..self.num_simple()).collect();
        let gens = subset.unwrap_or(&all);
        let mut seen: HashSet<Coweight> = HashSet::new();
        seen.insert(lambda.clone());
        let mut frontier = vec![lambda.clone()];
        while !frontier.is_empty() {
            let next = exec.flat_map(&frontier, |v| {
                gens.iter()
                    .filter(|&&i| pair(v, &self.simple_roots[i]) != 0)
                    .map(|&i| self.reflect(i, v))
                    .collect()
            });
            frontier.clear();
            for v in next {
                if seen.len() >= cap && !seen.contains(&v) {
                    return Err(Error::OrbitCap { cap });
                }
                if seen.insert(v.clone()) {
                    frontier.push(v);
                }
            }
        }
        let mut out: Vec<Coweight> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Orbit of a weight (element of `Λ̌`) under `W`, sorted.
    pub fn weight_orbit(&self, check: &Weight) -> Result<Vec<Weight>> {
        let mut seen: HashSet<Weight> = HashSet::new();
        seen.insert(check.clone());
        let mut stack = vec![check.clone()];
        while let Some(v) = stack.pop() {
            for i in 0..self.num_simple() {
                let u = self.reflect_weight(i, &v);
                if seen.insert(u.clone()) {
                    if seen.len() > ORBIT_CAP {
                        return Err(Error::OrbitCap { cap: ORBIT_CAP });
                    }
                    stack.push(u);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Order of `W_M` for the given subset, as the orbit size of a regular
    /// element (`2ρ_M`).
    pub fn weyl_group_order(&self, subset: Option<&[usize]>) -> Result<usize> {
        let sub = match subset {
            Some(s) => self.sub_datum(s)?,
            None => self.clone(),
        };
        Ok(self.orbit_with(&sub.two_rho(), subset, ORBIT_CAP, Exec::default())?.len())
    }

    /// Longest element of `W_M` (of `W` when `subset` is `None`).
    pub fn longest_element(&self, subset: Option<&[usize]>) -> Result<WeylElement> {
        let all: Vec<usize> = (0..self.num_simple()).collect();
        let subset = subset.unwrap_or(&all);
        self.check_subset(subset)?;
        if subset.is_empty() {
            return Ok(WeylElement::identity(self.rank));
        }
        let sub = self.sub_datum(subset)?;
        // drive a regular M-dominant vector to the antidominant chamber
        let mut v = sub.two_rho();
        let mut applied = Vec::new();
        while let Some(&i) = subset.iter().find(|&&i| pair(&v, &self.simple_roots[i]) > 0) {
            v = self.reflect(i, &v);
            applied.push(i);
        }
        applied.reverse();
        WeylElement::from_word(self, &applied)
    }

    /// `(π₁, X*(Z))` as `Λ/ℤ⟨coroots⟩` and `Λ̌/ℤ⟨roots⟩`.
    pub fn lattice_quotients(&self) -> (AbelianQuotient, AbelianQuotient) {
        let coroots: Vec<Vec<i64>> = self.simple_coroots.iter().map(|c| c.0.clone()).collect();
        let roots: Vec<Vec<i64>> = self.simple_roots.iter().map(|r| r.0.clone()).collect();
        (AbelianQuotient::of_span(self.rank, &coroots), AbelianQuotient::of_span(self.rank, &roots))
    }

    /// Nonnegative integer coefficients `c` with `μ = Σ c_i α_i`, or `None`
    /// when `μ ∉ Λ^{pos}`.
    pub fn pos_part_decompose(&self, mu: &Coweight) -> Option<Vec<i64>> {
        let c = self.coroot_coordinates(mu)?;
        c.iter().all(|&x| x >= 0).then_some(c)
    }

    /// Integer coefficients in the simple coroots, if `μ` lies in their span.
    pub fn coroot_coordinates(&self, mu: &Coweight) -> Option<Vec<i64>> {
        match &self.coroot_solver {
            None => mu.is_zero().then(Vec::new),
            Some(s) => s.integral(&mu.0),
        }
    }

    pub fn coroot_coordinates_rational(&self, mu: &Coweight) -> Option<Vec<Rational>> {
        match &self.coroot_solver {
            None => mu.is_zero().then(Vec::new),
            Some(s) => s.rational(&mu.0),
        }
    }

    /// Integer coefficients of a weight in the simple roots, if in their span.
    pub fn root_coordinates(&self, check: &Weight) -> Option<Vec<i64>> {
        match &self.root_solver {
            None => check.is_zero().then(Vec::new),
            Some(s) => s.integral(&check.0),
        }
    }

    /// `μ ≤ ν` in the dominance order (`ν − μ ∈ Λ^{pos}`).
    pub fn le(&self, mu: &Coweight, nu: &Coweight) -> bool {
        self.pos_part_decompose(&(nu - mu)).is_some()
    }

    /// All dominant `μ ≤ λ`, sorted.
    ///
    /// Between two comparable dominant coweights there is a chain of dominant
    /// coweights whose steps are positive coroots, so a search that subtracts
    /// positive coroots and keeps dominant results is exhaustive.
    pub fn dominant_below(&self, lambda: &Coweight) -> Vec<Coweight> {
        self.dominant_below_with(lambda, Exec::Sequential)
    }

    /// [`Self::dominant_below`] with frontier-parallel search.
    pub fn dominant_below_with(&self, lambda: &Coweight, exec: Exec) -> Vec<Coweight> {
        let mut seen: HashSet<Coweight> = HashSet::new();
        seen.insert(lambda.clone());
        let mut frontier = vec![lambda.clone()];
        while !frontier.is_empty() {
            let next = exec.flat_map(&frontier, |v| {
                self.positive_coroots
                    .iter()
                    .map(|c| v - c)
                    .filter(|u| self.is_dominant(u))
                    .collect()
            });
            frontier.clear();
            for u in next {
                if seen.insert(u.clone()) {
                    frontier.push(u);
                }
            }
        }
        let mut out: Vec<Coweight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// The highest positive root of each irreducible component.
    pub fn highest_roots(&self) -> Vec<Weight> {
        self.positive_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                // maximal: adding any simple root leaves the root set
                (0..self.num_simple()).all(|i| {
                    let s = *r + &self.simple_roots[i];
                    !self.positive_roots.contains(&s)
                })
            })
            .map(|(_, r)| r.clone())
            .collect()
    }

    /// Connected components of the Dynkin diagram.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_simple();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut k = 0;
            while k < members.len() {
                let i = members[k];
                k += 1;
                for j in 0..n {
                    if comp[j] == usize::MAX && self.cartan[(i, j)] != 0 {
                        comp[j] = id;
                        members.push(j);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// SHA-256 of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_string(&self.to_file()).expect("datum serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}
