//! Named data for the command line and the end-to-end reproduction of the
//! worked examples (`GL_n`, `GSp_2n`, `GSpin_2n+1`, `GSpin_4m+2`, `E6`,
//! `E7`).

use crate::admissible::{check_one_admissible, AdmissibilityReport, AdmissibleDatum};
use crate::builder::{self, find_isomorphism, AppendixExample, CartanType};
use crate::catalog::{self, Adapter, CatalogDatum, Family};
use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::rep::{PowerKind, Reps};
use crate::root_datum::{Coweight, RootDatum, Weight};
use crate::semigroup;
use serde::Serialize;
use std::collections::BTreeSet;

/// Names accepted by [`lookup`].
pub const NAMES: [&str; 8] = ["gl", "gsp", "gspin", "sp", "spin", "spin-", "e6", "e7"];

/// A named datum with its distinguished coweight, display coordinates and
/// named coweights.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub n: usize,
    pub datum: RootDatum,
    pub gamma: Coweight,
    pub coweights: Adapter,
    pub weights: Adapter,
    /// Named coweights (`gamma`, `gammaI`, `omega`) in internal coordinates.
    pub named: Vec<(String, Coweight)>,
    /// Names of a free basis of `Λ⁺_{G,S}`, when one is listed.
    pub generators: Vec<String>,
}

fn from_catalog(name: &str, c: CatalogDatum) -> Result<Entry> {
    let mut named = vec![("gamma".to_string(), c.gamma.clone())];
    let mut generators = Vec::new();
    if c.family != Family::Sp {
        let top = if c.family == Family::GSp { c.n - 1 } else { c.n };
        for i in 1..=top {
            named.push((format!("gamma{i}"), c.named_gamma(i)?));
        }
        named.push(("omega".into(), c.named_omega()?));
        generators = match c.family {
            Family::GL => (1..=c.n).map(|i| format!("gamma{i}")).collect(),
            Family::GSp => std::iter::once("gamma".to_string())
                .chain((1..c.n).map(|i| format!("gamma{i}")))
                .chain(std::iter::once("omega".to_string()))
                .collect(),
            _ => (1..=c.n).map(|i| format!("gamma{i}")).chain(std::iter::once("omega".to_string())).collect(),
        };
    }
    Ok(Entry {
        name: name.into(),
        n: c.n,
        datum: c.datum,
        gamma: c.gamma,
        coweights: c.coweights,
        weights: c.weights,
        named,
        generators,
    })
}

fn from_built(name: &str, n: usize, t: CartanType, rank: usize, k: usize) -> Result<Entry> {
    let h = builder::catalog_simply_connected(t, rank)?;
    let b = builder::build_admissible_group(&h, &h.fundamental_coweight(k)?)?;
    let a = &b.admissible;
    Ok(Entry {
        name: name.into(),
        n,
        datum: a.datum().clone(),
        gamma: a.gamma().clone(),
        coweights: Adapter::Identity,
        weights: Adapter::Identity,
        named: vec![("gamma".into(), a.gamma().clone()), ("omega".into(), a.omega().clone())],
        generators: vec![],
    })
}

/// Looks up a named datum. `n` is ignored by `e6` and `e7`; `spin` takes the
/// odd rank `m` of `D_m`.
pub fn lookup(name: &str, n: usize) -> Result<Entry> {
    let require = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{name} is not defined for n = {n}")))
        }
    };
    match name {
        "gl" => from_catalog(name, catalog::gl(n)?),
        "gsp" => from_catalog(name, catalog::gsp(n)?),
        "gspin" => from_catalog(name, catalog::gspin(n)?),
        "sp" => from_catalog(name, catalog::sp(n)?),
        "spin" => {
            require(n >= 3 && n % 2 == 1)?;
            from_built(name, n, CartanType::D, n, n)
        }
        "spin-" => {
            require(n >= 3 && n % 2 == 1)?;
            from_built(name, n, CartanType::D, n, n - 1)
        }
        "e6" => from_built(name, 6, CartanType::E, 6, 1),
        "e7" => from_built(name, 7, CartanType::E, 7, 7),
        other => Err(Error::Parse(format!("unknown datum {other:?}; known: {}", NAMES.join(", ")))),
    }
}

impl Entry {
    /// An entry for a user-supplied datum and `γ` (internal coordinates).
    pub fn from_datum(name: &str, datum: RootDatum, gamma: Coweight) -> Result<Entry> {
        datum.check_coweight(&gamma)?;
        let mut named = vec![("gamma".to_string(), gamma.clone())];
        if let Ok(a) = AdmissibleDatum::new(datum.clone(), gamma.clone()) {
            named.push(("omega".into(), a.omega().clone()));
        }
        Ok(Entry {
            name: name.into(),
            n: datum.num_simple(),
            datum,
            gamma,
            coweights: Adapter::Identity,
            weights: Adapter::Identity,
            named,
            generators: vec![],
        })
    }

    pub fn check(&self) -> Result<AdmissibilityReport> {
        check_one_admissible(&self.datum, &self.gamma)
    }

    pub fn admissible(&self) -> Result<AdmissibleDatum> {
        AdmissibleDatum::new(self.datum.clone(), self.gamma.clone())
    }

    pub fn named(&self, name: &str) -> Option<&Coweight> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    /// Parses a coweight given either as a comma-separated vector in display
    /// coordinates or as a sum of named terms such as `2*gamma+omega`.
    pub fn parse_coweight(&self, s: &str) -> Result<Coweight> {
        let s = s.trim();
        if s.chars().any(|c| c.is_ascii_alphabetic()) {
            let mut acc = Coweight::zero(self.datum.rank());
            for term in s.split('+') {
                let term = term.trim();
                let (k, name) = match term.split_once('*') {
                    Some((k, name)) => (
                        k.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?,
                        name.trim(),
                    ),
                    None => (1, term),
                };
                let c = self.named(name).ok_or_else(|| {
                    let known: Vec<&str> = self.named.iter().map(|(n, _)| n.as_str()).collect();
                    Error::Parse(format!("unknown name {name:?}; known: {}", known.join(", ")))
                })?;
                acc = &acc + &c.scale(k);
            }
            return Ok(acc);
        }
        let v = parse_vector(s)?;
        Ok(Coweight(self.coweights.from_display(&v)?))
    }

    pub fn parse_weight(&self, s: &str) -> Result<Weight> {
        Ok(Weight(self.weights.from_display(&parse_vector(s)?)?))
    }

    pub fn display_coweight(&self, c: &Coweight) -> Vec<i64> {
        self.coweights.to_display(&c.0)
    }

    pub fn display_weight(&self, w: &Weight) -> Vec<i64> {
        self.weights.to_display(&w.0)
    }

    /// `c` as a nonnegative combination of the listed generators, e.g.
    /// `gamma2 + omega`.
    pub fn describe(&self, c: &Coweight) -> Option<String> {
        if self.generators.is_empty() {
            return None;
        }
        let cols: Vec<Vec<i64>> = self.generators.iter().map(|g| self.named(g).expect("named").0.clone()).collect();
        let m = IntMatrix::from_cols(self.datum.rank(), &cols);
        if m.rows() != m.cols() {
            return None;
        }
        let x = lattice::integral(&lattice::solve_rational(&m, &c.0)?)?;
        if x.iter().any(|&v| v < 0) {
            return None;
        }
        let terms: Vec<String> = x
            .iter()
            .zip(&self.generators)
            .filter(|(k, _)| **k != 0)
            .map(|(k, g)| if *k == 1 { g.clone() } else { format!("{k}*{g}") })
            .collect();
        Some(if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }
}

pub fn parse_vector(s: &str) -> Result<Vec<i64>> {
    let s = s.trim().trim_start_matches('(').trim_start_matches('[').trim_end_matches(')').trim_end_matches(']');
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub example: u32,
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub claims: Vec<Claim>,
    pub passed: bool,
}

impl AppendixReport {
    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| !c.passed).collect()
    }
}

/// Groups accepted by `only`.
pub const SECTIONS: [&str; 6] = ["gl", "gsp", "gspin", "spin", "e6", "e7"];

struct Claims(Vec<Claim>);

impl Claims {
    fn push(&mut self, example: u32, id: String, passed: bool, detail: String) {
        self.0.push(Claim { example, id, passed, detail });
    }

    fn record(&mut self, example: u32, id: String, r: Result<(bool, String)>) {
        match r {
            Ok((passed, detail)) => self.push(example, id, passed, detail),
            Err(e) => self.push(example, id, false, format!("error: {e}")),
        }
    }
}

fn names_of(e: &Entry, list: &[Coweight]) -> Vec<String> {
    list.iter().map(|c| e.describe(c).unwrap_or_else(|| format!("{:?}", e.display_coweight(c)))).collect()
}

fn check_basis(e: &Entry, a: &AdmissibleDatum, k_max: u32) -> Result<(bool, String)> {
    let report = semigroup::hilbert_basis(a, k_max)?;
    let found: BTreeSet<Coweight> = report.generator_set().into_iter().collect();
    let expected: BTreeSet<Coweight> = e.generators.iter().map(|g| e.named(g).expect("named").clone()).collect();
    let ok = found == expected && report.is_free;
    let list: Vec<Coweight> = found.into_iter().collect();
    Ok((
        ok,
        format!("generators {{{}}}, free = {}", names_of(e, &list).join(", "), report.is_free),
    ))
}

fn admissible_claim(claims: &mut Claims, example: u32, e: &Entry) -> Option<AdmissibleDatum> {
    let id = format!("{}{}: admissible", e.name, e.n);
    match e.check() {
        Ok(r) if r.overall => {
            claims.push(example, id, true, "all four conditions hold".into());
            e.admissible().ok()
        }
        Ok(r) => {
            claims.push(example, id, false, format!("failed: {:?}", r.failures()));
            None
        }
        Err(err) => {
            claims.push(example, id, false, format!("error: {err}"));
            None
        }
    }
}

fn built_iso_claim(claims: &mut Claims, example: u32, e: &Entry, t: CartanType, rank: usize, k: usize) {
    let id = format!("{}{}: construction matches", e.name, e.n);
    let r = (|| -> Result<(bool, String)> {
        let h = builder::catalog_simply_connected(t, rank)?;
        let b = builder::build_admissible_group(&h, &h.fundamental_coweight(k)?)?;
        let iso = find_isomorphism(b.datum(), &e.datum, Some((b.gamma(), &e.gamma)));
        Ok((iso.is_some(), format!("{}{rank} with fundamental coweight {k}, h = {}", t, h.h)))
    })();
    claims.record(example, id, r);
}

fn gl_claims(claims: &mut Claims, n: usize) {
    let Ok(e) = lookup("gl", n) else { return };
    let Some(a) = admissible_claim(claims, 1, &e) else { return };
    claims.record(1, format!("gl{n}: Hilbert basis gamma1..gamma{n}"), check_basis(&e, &a, n as u32 + 1));
    built_iso_claim(claims, 1, &e, CartanType::A, n - 1, 1);
}

fn gsp_claims(claims: &mut Claims, n: usize) {
    let Ok(e) = lookup("gsp", n) else { return };
    let Some(a) = admissible_claim(claims, 2, &e) else { return };
    let reps = Reps::new(&e.datum);
    let g = |name: &str| e.named(name).expect("named").clone();
    let gamma = g("gamma");
    let omega = g("omega");
    claims.record(
        2,
        format!("gsp{n}: dim V^gamma = 2^{n}"),
        reps.weyl_dimension(&gamma).map(|d| (d == 1 << n, format!("{d}"))),
    );
    claims.record(
        2,
        format!("gsp{n}: dim V^gamma1 = {}", 2 * n + 1),
        reps.weyl_dimension(&g("gamma1")).map(|d| (d == 2 * n as u128 + 1, format!("{d}"))),
    );
    claims.record(2, format!("gsp{n}: tensor square of V^gamma"), (|| {
        let dec = reps.tensor_decompose(&gamma, &gamma)?;
        let mut expected: BTreeSet<Coweight> = [gamma.scale(2), omega.clone()].into_iter().collect();
        for i in 1..n {
            expected.insert(g(&format!("gamma{i}")));
        }
        let found: BTreeSet<Coweight> = dec.highest_weights().into_iter().collect();
        let ok = found == expected && dec.summands.iter().all(|s| s.multiplicity == 1);
        Ok((ok, names_of(&e, &dec.highest_weights()).join(" + ")))
    })());
    for i in 1..=n {
        let expected = if i < n {
            &g(&format!("gamma{i}")) + &omega.scale(i as i64 - 1)
        } else {
            &gamma.scale(2) + &omega.scale(n as i64 - 1)
        };
        claims.record(2, format!("gsp{n}: exterior power {i} of V^gamma1"), (|| {
            let dec = reps.wedge_sym_decompose(&g("gamma1"), i, PowerKind::Exterior)?;
            let ok = dec.summands.len() == 1 && dec.summands[0].multiplicity == 1 && dec.summands[0].highest_weight == expected;
            Ok((ok, names_of(&e, &dec.highest_weights()).join(" + ")))
        })());
    }
    claims.record(2, format!("gsp{n}: Hilbert basis gamma, gamma_i, omega"), check_basis(&e, &a, 3));
    built_iso_claim(claims, 2, &e, CartanType::C, n, n);
}

fn gspin_claims(claims: &mut Claims, n: usize) {
    let Ok(e) = lookup("gspin", n) else { return };
    let Some(a) = admissible_claim(claims, 3, &e) else { return };
    let reps = Reps::new(&e.datum);
    let g = |name: &str| e.named(name).expect("named").clone();
    claims.record(3, format!("gspin{n}: second exterior power of V^gamma"), (|| {
        let dec = reps.wedge_sym_decompose(&g("gamma"), 2, PowerKind::Exterior)?;
        let expected: BTreeSet<Coweight> = [g("gamma2"), g("omega")].into_iter().collect();
        let found: BTreeSet<Coweight> = dec.highest_weights().into_iter().collect();
        let ok = found == expected && dec.summands.iter().all(|s| s.multiplicity == 1);
        Ok((ok, names_of(&e, &dec.highest_weights()).join(" + ")))
    })());
    claims.record(3, format!("gspin{n}: Hilbert basis gamma_i, omega"), check_basis(&e, &a, 3));
    built_iso_claim(claims, 3, &e, CartanType::B, n, 1);
    claims.record(3, format!("gspin{n}: dual to the GSp{} construction", 2 * n), (|| {
        let sp = builder::catalog_simply_connected(CartanType::C, n)?;
        let gsp = builder::build_admissible_group(&sp, &sp.fundamental_coweight(n)?)?;
        let spin = builder::catalog_simply_connected(CartanType::B, n)?;
        let gspin = builder::build_admissible_group(&spin, &spin.fundamental_coweight(1)?)?;
        let iso = find_isomorphism(gsp.datum(), &gspin.datum().dual(), None);
        Ok((iso.is_some(), "roots and coroots exchanged".into()))
    })());
}

fn built_claims(claims: &mut Claims, ex: &AppendixExample) {
    let id = format!("{}: build and certify", ex.name);
    let r = ex.build().map(|b| {
        let orbit = b.admissible.orbit().len();
        let ok = b.report().overall && (ex.name != "E7" || orbit == 56);
        (ok, format!("h = {}, |W gamma| = {orbit}, d_omega = {}", b.h.h, b.admissible.d_omega()))
    });
    claims.record(ex.example, id, r);
}

/// Runs every claim of the worked examples, optionally restricted to one
/// section (see [`SECTIONS`]) and one size `n`.
pub fn reproduce_appendix(only: Option<&str>, n: Option<usize>) -> Result<AppendixReport> {
    if let Some(s) = only {
        if !SECTIONS.contains(&s) {
            return Err(Error::Parse(format!("unknown section {s:?}; known: {}", SECTIONS.join(", "))));
        }
    }
    let wants = |s: &str| only.is_none_or(|o| o == s);
    let sizes = |default: std::ops::RangeInclusive<usize>| -> Vec<usize> {
        match n {
            Some(n) => vec![n],
            None => default.collect(),
        }
    };
    let mut claims = Claims(Vec::new());
    if wants("gl") {
        for k in sizes(2..=4) {
            gl_claims(&mut claims, k);
        }
    }
    if wants("gsp") {
        for k in sizes(2..=3) {
            gsp_claims(&mut claims, k);
        }
    }
    if wants("gspin") {
        for k in sizes(2..=3) {
            gspin_claims(&mut claims, k);
        }
    }
    if wants("spin") {
        for k in sizes(3..=5).into_iter().filter(|k| k % 2 == 1 && *k >= 3) {
            for ex in builder::appendix_examples(k).into_iter().filter(|e| e.example == 4) {
                built_claims(&mut claims, &ex);
            }
        }
    }
    for (section, example) in [("e6", 5), ("e7", 6)] {
        if wants(section) {
            for ex in builder::appendix_examples(3).into_iter().filter(|e| e.example == example) {
                built_claims(&mut claims, &ex);
            }
        }
    }
    if claims.0.is_empty() {
        return Err(Error::Precondition("no claims selected for these options".into()));
    }
    let passed = claims.0.iter().all(|c| c.passed);
    Ok(AppendixReport { claims: claims.0, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_entries() {
        for name in NAMES {
            let n = if name.starts_with("spin") { 3 } else { 2 };
            let e = lookup(name, n).unwrap();
            assert_eq!(e.check().unwrap().overall, name != "sp", "{name}");
        }
        assert!(lookup("spin", 4).is_err());
        assert!(lookup("g2", 2).is_err());
    }

    #[test]
    fn parsing_and_naming() {
        let e = lookup("gsp", 2).unwrap();
        let x = e.parse_coweight("2*gamma+omega").unwrap();
        assert_eq!(e.describe(&x).unwrap(), "2*gamma + omega");
        let g = e.parse_coweight(&format!("{:?}", e.display_coweight(&e.gamma))).unwrap();
        assert_eq!(g, e.gamma);
        assert!(e.parse_coweight("delta").is_err());
        assert!(e.parse_coweight("1,2").is_err());
    }

    #[test]
    fn small_sections() {
        let r = reproduce_appendix(Some("gl"), Some(2)).unwrap();
        assert!(r.passed, "{:?}", r.failures());
        let r = reproduce_appendix(Some("e7"), None).unwrap();
        assert!(r.passed && r.claims[0].detail.contains("56"));
        assert!(reproduce_appendix(Some("f4"), None).is_err());
    }
}
