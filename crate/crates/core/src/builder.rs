//! The construction `G = (H × G_m)/μ_h` from a simply connected simple group
//! `H` with cyclic center of order `h` and a coweight `γ_H` of `H_ad`.
//!
//! Coweights of `H_ad` are written in fundamental-coweight coordinates, so
//! `Q_H = ℤ^n`, the simple root `α̌_j` reads off coordinate `j` and the simple
//! coroot `α_i` is row `i` of the Cartan matrix. The `(1/h)ℤ` coordinate of
//! `Λ ⊂ Q_H × (1/h)ℤ` is stored multiplied by `h`.

use crate::admissible::{check_one_admissible, is_minuscule, AdmissibilityReport, AdmissibleDatum};
use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::root_datum::{pair, AbelianQuotient, Coweight, RootDatum, Weight};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            other => return Err(Error::Parse(format!("unknown Cartan type {other:?}"))),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A simply connected simple group with cyclic center, or the trivial group
/// (`n = 0`).
#[derive(Clone, Debug, Serialize)]
pub struct SimplyConnectedDatum {
    pub cartan_type: CartanType,
    pub n: usize,
    /// `A_ij = ⟨α_i, α̌_j⟩`, Bourbaki numbering.
    pub cartan: Vec<Vec<i64>>,
    /// Order of the center, `|Q_H / Λ_H|`.
    pub h: i64,
    #[serde(skip)]
    center: AbelianQuotient,
}

impl SimplyConnectedDatum {
    /// The trivial group `H = 1`.
    pub fn trivial() -> Self {
        SimplyConnectedDatum {
            cartan_type: CartanType::A,
            n: 0,
            cartan: vec![],
            h: 1,
            center: AbelianQuotient::of_span(0, &[]),
        }
    }

    pub fn name(&self) -> String {
        if self.n == 0 {
            "1".into()
        } else {
            format!("{}{}", self.cartan_type, self.n)
        }
    }

    /// `H_ad` on `Q_H`: coroots are the rows of the Cartan matrix, roots the
    /// coordinate functionals. `None` for the trivial group.
    pub fn adjoint(&self) -> Option<RootDatum> {
        if self.n == 0 {
            return None;
        }
        let n = self.n;
        let roots = (0..n).map(|j| Weight::basis(n, j)).collect();
        let coroots = self.cartan.iter().map(|r| Coweight(r.clone())).collect();
        Some(RootDatum::new(n, roots, coroots, None).expect("catalog Cartan matrices are valid"))
    }

    /// Order of `λ ∈ Q_H` in `Q_H/Λ_H`.
    pub fn class_order(&self, lambda: &[i64]) -> u64 {
        self.center.order(lambda).expect("the center is finite")
    }

    /// Fundamental coweight `ϖ^∨_k` (1-based Bourbaki index).
    pub fn fundamental_coweight(&self, k: usize) -> Result<Vec<i64>> {
        if k == 0 || k > self.n {
            return Err(Error::InvalidIndex(k));
        }
        let mut v = vec![0; self.n];
        v[k - 1] = 1;
        Ok(v)
    }
}

fn cartan_matrix(t: CartanType, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::Unsupported(format!("{t}{n}"));
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t {
        CartanType::A | CartanType::B | CartanType::C => {
            if n == 0 {
                return Err(bad());
            }
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            if n >= 2 {
                match t {
                    CartanType::B => a[n - 1][n - 2] = -2,
                    CartanType::C => a[n - 2][n - 1] = -2,
                    _ => {}
                }
            }
        }
        CartanType::D => {
            if n < 3 {
                return Err(bad());
            }
            for i in 1..n - 1 {
                link(&mut a, i - 1, i);
            }
            link(&mut a, n - 3, n - 1);
        }
        CartanType::E => {
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 3..n {
                link(&mut a, i - 1, i);
            }
        }
        CartanType::F | CartanType::G => {
            if (t, n) != (CartanType::F, 4) && (t, n) != (CartanType::G, 2) {
                return Err(bad());
            }
            return Err(Error::Unsupported(format!("{t}{n} has trivial center")));
        }
    }
    Ok(a)
}

/// The simply connected group of the given type.
pub fn catalog_simply_connected(t: CartanType, n: usize) -> Result<SimplyConnectedDatum> {
    let cartan = cartan_matrix(t, n)?;
    let center = AbelianQuotient::of_span(n, &cartan);
    if center.free_rank != 0 {
        return Err(Error::InvalidCartan { i: 0, j: 0, value: 0 });
    }
    if center.invariant_factors.len() > 1 {
        return Err(Error::Unsupported(format!(
            "{t}{n}: center has invariant factors {:?} and is not cyclic",
            center.invariant_factors
        )));
    }
    let h = center.invariant_factors.first().copied().unwrap_or(1);
    if h == 1 {
        return Err(Error::Unsupported(format!("{t}{n} has trivial center")));
    }
    Ok(SimplyConnectedDatum { cartan_type: t, n, cartan, h, center })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaVerdict {
    /// `H = 1` and `γ_H = 0`.
    pub degenerate: bool,
    pub minuscule: bool,
    /// Order of `γ_H` in `Q_H/Λ_H`.
    pub class_order: u64,
    pub generates: bool,
    /// The weights of `V^{γ_H}` generate `Q_H`.
    pub faithful: bool,
}

impl GammaVerdict {
    pub fn passed(&self) -> bool {
        self.degenerate || (self.minuscule && self.generates && self.faithful)
    }
}

/// The three conditions on `γ_H`: minuscule for `H_ad`, generating
/// `Q_H/Λ_H`, and `V^{γ_H}` faithful.
pub fn validate_gamma_h(h: &SimplyConnectedDatum, gamma_h: &[i64]) -> Result<GammaVerdict> {
    if gamma_h.len() != h.n {
        return Err(Error::RankMismatch { expected: h.n, got: gamma_h.len() });
    }
    let Some(adj) = h.adjoint() else {
        return Ok(GammaVerdict { degenerate: true, minuscule: false, class_order: 1, generates: true, faithful: true });
    };
    let g = Coweight(gamma_h.to_vec());
    if !adj.is_dominant(&g) {
        return Err(Error::NotDominant(g.0));
    }
    let minuscule = is_minuscule(&adj, &g)?.minuscule;
    let class_order = h.class_order(gamma_h);
    let orbit: Vec<Vec<i64>> = adj.weyl_orbit(&g)?.into_iter().map(|c| c.0).collect();
    let faithful = lattice::sublattice_index(h.n, &orbit) == Some(1);
    Ok(GammaVerdict { degenerate: false, minuscule, class_order, generates: class_order == h.h as u64, faithful })
}

#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub h: SimplyConnectedDatum,
    pub gamma_h: Vec<i64>,
    pub verdict: GammaVerdict,
    /// Basis of `Λ` in `(q, h·b)` coordinates (Hermite normal form rows).
    pub basis: Vec<Vec<i64>>,
    pub admissible: AdmissibleDatum,
}

impl BuiltGroup {
    pub fn datum(&self) -> &RootDatum {
        self.admissible.datum()
    }

    pub fn gamma(&self) -> &Coweight {
        self.admissible.gamma()
    }

    pub fn report(&self) -> &AdmissibilityReport {
        self.admissible.report()
    }

    /// `(λ, h·b)` of a coweight.
    pub fn to_display(&self, x: &Coweight) -> Vec<i64> {
        let mut out = vec![0; self.h.n + 1];
        for (c, b) in x.0.iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += c * v;
            }
        }
        out
    }

    /// Inverse of [`BuiltGroup::to_display`]; fails off the lattice.
    pub fn from_display(&self, v: &[i64]) -> Result<Coweight> {
        let m = IntMatrix::from_cols(self.h.n + 1, &self.basis);
        let sol = lattice::solve_rational(&m, v).ok_or_else(|| Error::NonIntegral(format!("{v:?}")))?;
        lattice::integral(&sol)
            .map(Coweight)
            .ok_or_else(|| Error::NonIntegral(format!("{v:?} does not satisfy the congruence")))
    }
}

/// `G = (H × G_m)/μ_h` with `γ = (γ_H, 1/h)`, certified 1-admissible.
pub fn build_admissible_group(h: &SimplyConnectedDatum, gamma_h: &[i64]) -> Result<BuiltGroup> {
    let verdict = validate_gamma_h(h, gamma_h)?;
    if !verdict.passed() {
        return Err(Error::Precondition(format!("gamma_H = {gamma_h:?} is not admissible for {}: {verdict:?}", h.name())));
    }
    let n = h.n;
    let hh = h.h;
    // t : Q_H → ℤ/h with t(γ_H) = 1
    let t = |q: &[i64]| -> i64 {
        if hh == 1 {
            return 0;
        }
        let c = h.center.project(gamma_h)[0];
        let inv = lattice::mod_inverse(c, hh).expect("gamma_H generates the center");
        (h.center.project(q)[0] * inv).rem_euclid(hh)
    };
    let mut gens: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut v = vec![0; n + 1];
            v[j] = 1;
            v[n] = t(&v[..n]);
            v
        })
        .collect();
    let mut last = vec![0; n + 1];
    last[n] = hh;
    gens.push(last);
    let basis = lattice::hermite_basis(n + 1, &gens);
    debug_assert_eq!(basis.len(), n + 1);
    let bmat = IntMatrix::from_cols(n + 1, &basis);
    let coords = |v: &[i64]| -> Result<Coweight> {
        let sol = lattice::solve_rational(&bmat, v).ok_or_else(|| Error::NonIntegral(format!("{v:?}")))?;
        lattice::integral(&sol)
            .map(Coweight)
            .ok_or_else(|| Error::LemmaViolation(format!("{v:?} is not in the built lattice")))
    };
    let mut coroots = Vec::new();
    for row in &h.cartan {
        let mut v = row.clone();
        v.push(0);
        coroots.push(coords(&v)?);
    }
    // a weight is recorded by its pairings with the basis; α̌_j reads coordinate j
    let roots: Vec<Weight> = (0..n).map(|j| Weight(basis.iter().map(|b| b[j]).collect())).collect();
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let datum = RootDatum::new(n + 1, roots, coroots, Some(labels))?;
    let mut g = gamma_h.to_vec();
    g.push(1);
    let gamma = coords(&g)?;
    let report = check_one_admissible(&datum, &gamma)?;
    if !report.overall {
        return Err(Error::LemmaViolation(format!(
            "built group for {} with gamma_H = {gamma_h:?} fails: {:?}",
            h.name(),
            report.failures()
        )));
    }
    let admissible = AdmissibleDatum::new(datum, gamma)?;
    Ok(BuiltGroup { h: h.clone(), gamma_h: gamma_h.to_vec(), verdict, basis, admissible })
}

/// The torus `G_m` from `H = 1`, `γ_H = 0`.
pub fn build_torus() -> Result<BuiltGroup> {
    build_admissible_group(&SimplyConnectedDatum::trivial(), &[])
}

/// An explicit isomorphism of based root data: `g` on coweights and a
/// Dynkin-diagram permutation with `g(α_i) = α'_{σ(i)}` and
/// `α̌'_{σ(i)} ∘ g = α̌_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumIsomorphism {
    pub matrix: IntMatrix,
    pub permutation: Vec<usize>,
}

impl DatumIsomorphism {
    pub fn apply(&self, x: &Coweight) -> Coweight {
        Coweight(self.matrix.mul_vec(&x.0))
    }
}

/// A coweight whose class generates `π₁ ≅ ℤ`, if `π₁` is free of rank one.
pub fn pi1_generator(d: &RootDatum) -> Option<Coweight> {
    let (pi1, _) = d.lattice_quotients();
    pi1.is_free_rank_one().then(|| Coweight(pi1.lift(&[1])))
}

/// Searches for an isomorphism between two data with `π₁ ≅ ℤ`. With
/// `gamma = Some((γ, γ'))` it must also send `γ` to `γ'`.
///
/// Such a `Λ` is `ℤx ⊕ ℤ⟨α_i⟩` for any `x` generating `π₁`, and an
/// isomorphism sends `x` to `±x'` modulo coroots, so trying every
/// diagram permutation and both signs is exhaustive.
pub fn find_isomorphism(
    d1: &RootDatum,
    d2: &RootDatum,
    gamma: Option<(&Coweight, &Coweight)>,
) -> Option<DatumIsomorphism> {
    if d1.rank() != d2.rank() || d1.num_simple() != d2.num_simple() {
        return None;
    }
    let n = d1.num_simple();
    let x1 = pi1_generator(d1)?;
    let x2 = pi1_generator(d2)?;
    if let Some((g1, g2)) = gamma {
        if d1.lattice_quotients().0.project(&g1.0)[0].abs() != 1 {
            return None;
        }
        // γ₁ itself generates, so it completes the coroots to a basis
        return permutations(d1.cartan(), d2.cartan())
            .into_iter()
            .find_map(|sigma| try_map(d1, d2, &sigma, g1, g2));
    }
    for sigma in permutations(d1.cartan(), d2.cartan()) {
        for eps in [1i64, -1] {
            // u = ε x₂ + Σ c_j α'_j with ⟨u, α̌'_{σ(i)}⟩ = ⟨x₁, α̌_i⟩
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for i in 0..n {
                let target = d2.simple_roots()[sigma[i]].clone();
                rows.push((0..n).map(|j| pair(&d2.simple_coroots()[j], &target)).collect::<Vec<_>>());
                rhs.push(pair(&x1, &d1.simple_roots()[i]) - eps * pair(&x2, &target));
            }
            let c = if n == 0 {
                vec![]
            } else {
                let Some(sol) = lattice::solve_rational(&IntMatrix::from_rows(n, &rows), &rhs) else { continue };
                let Some(c) = lattice::integral(&sol) else { continue };
                c
            };
            let mut u = x2.scale(eps);
            for (j, cj) in c.iter().enumerate() {
                u = &u + &d2.simple_coroots()[j].scale(*cj);
            }
            if let Some(iso) = try_map(d1, d2, &sigma, &x1, &u) {
                return Some(iso);
            }
        }
    }
    None
}

/// The linear map sending `α_i ↦ α'_{σ(i)}` and `x ↦ y`, if it is an
/// isomorphism of root data.
fn try_map(d1: &RootDatum, d2: &RootDatum, sigma: &[usize], x: &Coweight, y: &Coweight) -> Option<DatumIsomorphism> {
    let rank = d1.rank();
    let mut src: Vec<Vec<i64>> = d1.simple_coroots().iter().map(|c| c.0.clone()).collect();
    src.push(x.0.clone());
    let mut dst: Vec<Vec<i64>> = sigma.iter().map(|&s| d2.simple_coroots()[s].0.clone()).collect();
    dst.push(y.0.clone());
    let s = IntMatrix::from_cols(rank, &src);
    let inv = s.unimodular_inverse()?;
    let g = IntMatrix::from_cols(rank, &dst).mul(&inv);
    if g.det().abs() != 1 {
        return None;
    }
    // α̌'_{σ(i)} ∘ g = α̌_i on every basis vector
    for (i, &s) in sigma.iter().enumerate() {
        let r2 = &d2.simple_roots()[s];
        for k in 0..rank {
            let gx = Coweight(g.col(k));
            if pair(&gx, r2) != d1.simple_roots()[i].0[k] {
                return None;
            }
        }
    }
    Some(DatumIsomorphism { matrix: g, permutation: sigma.to_vec() })
}

/// Bijections `σ` with `A'_{σ(i)σ(j)} = A_ij`.
fn permutations(a: &IntMatrix, b: &IntMatrix) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; n];
    fn rec(a: &IntMatrix, b: &IntMatrix, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == a.rows() {
            out.push(cur.clone());
            return;
        }
        for s in 0..a.rows() {
            if used[s] {
                continue;
            }
            let ok = (0..i).all(|j| a[(i, j)] == b[(s, cur[j])] && a[(j, i)] == b[(cur[j], s)]) && a[(i, i)] == b[(s, s)];
            if ok {
                used[s] = true;
                cur.push(s);
                rec(a, b, cur, used, out);
                cur.pop();
                used[s] = false;
            }
        }
    }
    rec(a, b, &mut current, &mut used, &mut out);
    out
}

/// One of the worked examples of the construction.
#[derive(Clone, Debug, Serialize)]
pub struct AppendixExample {
    pub example: u32,
    pub name: String,
    pub cartan_type: CartanType,
    pub n: usize,
    /// 1-based index `k` of `γ_H = ϖ^∨_k`.
    pub fundamental: usize,
}

/// The appendix examples at the given size `n` (clamped to the valid range
/// of each family): GL, GSp, GSpin, Spin_{2m} for odd `m` (both spin
/// coweights), E6 (both choices) and E7.
pub fn appendix_examples(n: usize) -> Vec<AppendixExample> {
    let n = n.max(2);
    let odd = if n % 2 == 1 { n.max(3) } else { n + 1 };
    let ex = |example, name: String, cartan_type, n, fundamental| AppendixExample { example, name, cartan_type, n, fundamental };
    vec![
        ex(1, format!("GL{n}"), CartanType::A, n - 1, 1),
        ex(2, format!("GSp{}", 2 * n), CartanType::C, n, n),
        ex(3, format!("GSpin{}", 2 * n + 1), CartanType::B, n, 1),
        ex(4, format!("GSpin{}+", 2 * odd), CartanType::D, odd, odd),
        ex(4, format!("GSpin{}-", 2 * odd), CartanType::D, odd, odd - 1),
        ex(5, "E6 (1)".into(), CartanType::E, 6, 1),
        ex(5, "E6 (6)".into(), CartanType::E, 6, 6),
        ex(6, "E7".into(), CartanType::E, 7, 7),
    ]
}

impl AppendixExample {
    pub fn build(&self) -> Result<BuiltGroup> {
        let h = catalog_simply_connected(self.cartan_type, self.n)?;
        let g = h.fundamental_coweight(self.fundamental)?;
        build_admissible_group(&h, &g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn centers() {
        assert_eq!(catalog_simply_connected(CartanType::D, 5).unwrap().h, 4);
        assert_eq!(catalog_simply_connected(CartanType::E, 7).unwrap().h, 2);
        assert_eq!(catalog_simply_connected(CartanType::E, 6).unwrap().h, 3);
        assert_eq!(catalog_simply_connected(CartanType::A, 1).unwrap().h, 2);
        assert!(matches!(catalog_simply_connected(CartanType::D, 4), Err(Error::Unsupported(_))));
        assert!(catalog_simply_connected(CartanType::E, 8).is_err());
        assert!(catalog_simply_connected(CartanType::G, 2).is_err());
        assert!(catalog_simply_connected(CartanType::F, 4).is_err());
    }

    #[test]
    fn gamma_verdicts() {
        let spin10 = catalog_simply_connected(CartanType::D, 5).unwrap();
        let v = validate_gamma_h(&spin10, &spin10.fundamental_coweight(1).unwrap()).unwrap();
        assert!(v.minuscule && !v.generates && v.class_order == 2);
        let spin6 = catalog_simply_connected(CartanType::D, 3).unwrap();
        assert!(validate_gamma_h(&spin6, &spin6.fundamental_coweight(3).unwrap()).unwrap().passed());
        let v = validate_gamma_h(&SimplyConnectedDatum::trivial(), &[]).unwrap();
        assert!(v.degenerate && v.passed());
        let torus = build_torus().unwrap();
        assert_eq!(torus.datum().rank(), 1);
        assert_eq!(torus.datum().num_simple(), 0);
    }

    #[test]
    fn gl_round_trip() {
        for n in 2..=4 {
            let h = catalog_simply_connected(CartanType::A, n - 1).unwrap();
            let b = build_admissible_group(&h, &h.fundamental_coweight(1).unwrap()).unwrap();
            let c = catalog::gl(n).unwrap();
            let iso = find_isomorphism(b.datum(), &c.datum, Some((b.gamma(), &c.gamma)));
            assert!(iso.is_some(), "GL{n}");
            assert_eq!(b.to_display(b.gamma()), {
                let mut v = h.fundamental_coweight(1).unwrap();
                v.push(1);
                v
            });
            assert_eq!(&b.from_display(&b.to_display(b.gamma())).unwrap(), b.gamma());
        }
    }

    #[test]
    fn non_edge_type_a() {
        let sl4 = catalog_simply_connected(CartanType::A, 3).unwrap();
        assert!(build_admissible_group(&sl4, &sl4.fundamental_coweight(2).unwrap()).is_err());
        let sl5 = catalog_simply_connected(CartanType::A, 4).unwrap();
        let b = build_admissible_group(&sl5, &sl5.fundamental_coweight(2).unwrap()).unwrap();
        let gl5 = catalog::gl(5).unwrap();
        assert!(find_isomorphism(b.datum(), &gl5.datum, None).is_none());
        let edge = build_admissible_group(&sl5, &sl5.fundamental_coweight(1).unwrap()).unwrap();
        assert!(find_isomorphism(edge.datum(), &gl5.datum, None).is_some());
    }

    #[test]
    fn gsp_gspin_duality() {
        for n in 2..=3 {
            let sp = catalog_simply_connected(CartanType::C, n).unwrap();
            let gsp = build_admissible_group(&sp, &sp.fundamental_coweight(n).unwrap()).unwrap();
            let spin = catalog_simply_connected(CartanType::B, n).unwrap();
            let gspin = build_admissible_group(&spin, &spin.fundamental_coweight(1).unwrap()).unwrap();
            assert!(find_isomorphism(gsp.datum(), &gspin.datum().dual(), None).is_some());
            let c = catalog::gsp(n).unwrap();
            assert!(find_isomorphism(gsp.datum(), &c.datum, Some((gsp.gamma(), &c.gamma))).is_some());
            let c = catalog::gspin(n).unwrap();
            assert!(find_isomorphism(gspin.datum(), &c.datum, Some((gspin.gamma(), &c.gamma))).is_some());
        }
    }

    #[test]
    fn appendix_examples_build() {
        for ex in appendix_examples(3) {
            let b = ex.build().unwrap_or_else(|e| panic!("{}: {e}", ex.name));
            assert!(b.report().overall, "{}", ex.name);
            if ex.name == "E7" {
                assert_eq!(b.admissible.orbit().len(), 56);
            }
        }
    }
}
