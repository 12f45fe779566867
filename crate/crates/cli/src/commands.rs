use crate::DatumArgs;
use minuscule::appendix::{self, Entry};
use minuscule::builder::{self, CartanType};
use minuscule::levi::{self, restrict_to_levi};
use minuscule::strata;
use minuscule::{semigroup, Coweight, Decomposition, Partition, PowerKind, Reps, RootDatum};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::{self, Write};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<minuscule::Error> for CliError {
    fn from(e: minuscule::Error) -> Self {
        match e {
            minuscule::Error::LemmaViolation(_) => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Serialize)]
pub struct DatumInfo {
    name: String,
    n: usize,
    fingerprint: String,
    gamma: Vec<i64>,
}

pub struct Outcome {
    pub datum: Option<DatumInfo>,
    pub result: Value,
    pub text: String,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct Report {
    command: Vec<String>,
    datum: Option<DatumInfo>,
    passed: bool,
    result: Value,
}

impl Report {
    pub fn new(command: Vec<String>, datum: Option<DatumInfo>, result: Value, passed: bool) -> Self {
        Report { command, datum, passed, result }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn load(d: &DatumArgs) -> Result<Entry> {
    let mut entry = match (&d.name, &d.file) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let datum = RootDatum::from_json(&text)?;
            let gamma = d
                .gamma
                .as_deref()
                .ok_or_else(|| CliError::Usage("--gamma is required with --file".into()))?;
            let gamma = Coweight(appendix::parse_vector(gamma)?);
            let name = path.file_stem().map_or("file".into(), |s| s.to_string_lossy().into_owned());
            return Ok(Entry::from_datum(&name, datum, gamma)?);
        }
        (Some(name), None) => appendix::lookup(name, d.n)?,
        (None, None) => return Err(CliError::Usage("give a catalog name or --file".into())),
    };
    if let Some(g) = &d.gamma {
        let gamma = entry.parse_coweight(g)?;
        entry.gamma = gamma.clone();
        entry.named.retain(|(n, _)| n != "gamma");
        entry.named.insert(0, ("gamma".into(), gamma));
    }
    Ok(entry)
}

fn info(e: &Entry) -> DatumInfo {
    DatumInfo {
        name: e.name.clone(),
        n: e.n,
        fingerprint: e.datum.fingerprint(),
        gamma: e.display_coweight(&e.gamma),
    }
}

fn show(e: &Entry, c: &Coweight) -> String {
    let v = e.display_coweight(c);
    match e.describe(c) {
        Some(name) => format!("{v:?} = {name}"),
        None => format!("{v:?}"),
    }
}

fn coweight_json(e: &Entry, c: &Coweight) -> Value {
    json!({ "coords": e.display_coweight(c), "name": e.describe(c) })
}

fn subset(s: &str, n: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "none" {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            let i: usize = t.trim().parse().map_err(|_| CliError::Usage(format!("bad Dynkin index {t:?}")))?;
            if i == 0 || i > n {
                return Err(CliError::Usage(format!("Dynkin index {i} outside 1..={n}")));
            }
            Ok(i - 1)
        })
        .collect()
}

fn outcome(e: &Entry, result: Value, text: String, passed: bool) -> Result<Outcome> {
    Ok(Outcome { datum: Some(info(e)), result, text, passed })
}

pub fn admissible_check(d: &DatumArgs) -> Result<Outcome> {
    let e = load(d)?;
    let r = e.check()?;
    let mut text = format!("{}{}: gamma = {}\n", e.name, e.n, show(&e, &e.gamma));
    for c in r.conditions() {
        let _ = writeln!(text, "  {:<22} {}  {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.witness);
    }
    let mut result = to_value(&r);
    if r.overall {
        if let Ok(a) = e.admissible() {
            let _ = writeln!(text, "  omega = {}, d_omega = {}", show(&e, a.omega()), a.d_omega());
            result["omega"] = coweight_json(&e, a.omega());
            result["d_omega"] = json!(a.d_omega());
        }
    }
    outcome(&e, result, text, r.overall)
}

pub fn semigroup_levels(d: &DatumArgs, k: u32) -> Result<Outcome> {
    let e = load(d)?;
    let a = e.admissible()?;
    let level = semigroup::level_set(&a, k);
    let mut text = format!("degree {k}: {} elements\n", level.elements.len());
    for c in &level.elements {
        let _ = writeln!(text, "  {}", show(&e, c));
    }
    let elements: Vec<Value> = level.elements.iter().map(|c| coweight_json(&e, c)).collect();
    outcome(&e, json!({ "k": k, "elements": elements }), text, true)
}

pub fn semigroup_basis(d: &DatumArgs, max_degree: u32) -> Result<Outcome> {
    let e = load(d)?;
    let a = e.admissible()?;
    let r = semigroup::hilbert_basis(&a, max_degree)?;
    let mut text = format!("Hilbert basis up to degree {max_degree}:\n");
    for g in &r.generators {
        let _ = writeln!(text, "  degree {}: {}", g.degree, show(&e, &g.coweight));
    }
    let _ = writeln!(text, "free: {} ({} elements checked)", r.is_free, r.elements_checked);
    let generators: Vec<Value> = r
        .generators
        .iter()
        .map(|g| json!({ "degree": g.degree, "coweight": coweight_json(&e, &g.coweight) }))
        .collect();
    let result = json!({
        "generators": generators,
        "is_free": r.is_free,
        "verified_up_to": r.verified_up_to,
        "elements_checked": r.elements_checked,
        "representation_failures": r.representation_failures.len(),
    });
    outcome(&e, result, text, r.representation_failures.is_empty())
}

pub fn levi_theta(d: &DatumArgs, parabolic: &str) -> Result<Outcome> {
    let e = load(d)?;
    let a = e.admissible()?;
    let l = restrict_to_levi(&a, &subset(parabolic, e.datum.num_simple())?)?;
    let t = levi::theta_level(&l)?;
    let mut text = format!("Levi {:?}: {} degree-one elements\n", parabolic, t.elements.len());
    for (c, img) in t.elements.iter().zip(&t.images) {
        let _ = writeln!(text, "  {}  ->  {img:?}", show(&e, c));
    }
    let _ = writeln!(
        text,
        "Levi-minuscule: {}, degree map injective: {}, orbit count: {}",
        t.m_minuscule, t.bijective, t.orbit_count
    );
    let elements: Vec<Value> = t
        .elements
        .iter()
        .zip(&t.images)
        .map(|(c, img)| json!({ "coweight": coweight_json(&e, c), "class": img }))
        .collect();
    let result = json!({
        "subset": parabolic,
        "elements": elements,
        "m_minuscule": t.m_minuscule,
        "bijective": t.bijective,
        "orbit_count": t.orbit_count,
    });
    outcome(&e, result, text, t.verified())
}

pub fn levi_bound(d: &DatumArgs, parabolic: &str, genus: u32, r: Option<u32>) -> Result<Outcome> {
    let e = load(d)?;
    let a = e.admissible()?;
    let l = restrict_to_levi(&a, &subset(parabolic, e.datum.num_simple())?)?;
    let r = match r {
        Some(r) => r,
        None => Reps::new(&e.datum).weyl_dimension(&e.gamma)? as u32,
    };
    let b = levi::vanishing_bound(&l, genus, r)?;
    let mut text = format!("genus {genus}, r = {r}: c(P) = {}\n", b.c);
    for t in &b.terms {
        let _ = writeln!(text, "  {}: dim {} threshold {}", show(&e, &t.lambda), t.dim, t.threshold);
    }
    outcome(&e, to_value(&b), text, true)
}

fn lambda_or_gamma(e: &Entry, s: Option<&str>) -> Result<Coweight> {
    Ok(match s {
        Some(s) => e.parse_coweight(s)?,
        None => e.gamma.clone(),
    })
}

fn decomposition_outcome(e: &Entry, title: String, dec: &Decomposition) -> Result<Outcome> {
    let mut text = format!("{title}\n");
    for s in &dec.summands {
        let _ = writeln!(text, "  {} x V^{}  (dim {})", s.multiplicity, show(e, &s.highest_weight), s.dim);
    }
    let _ = writeln!(text, "total dimension {}", dec.total_dim());
    let summands: Vec<Value> = dec
        .summands
        .iter()
        .map(|s| json!({ "highest_weight": coweight_json(e, &s.highest_weight), "multiplicity": s.multiplicity, "dim": s.dim.to_string() }))
        .collect();
    outcome(e, json!({ "summands": summands, "total_dim": dec.total_dim().to_string() }), text, true)
}

pub fn rep_dim(d: &DatumArgs, lambda: Option<&str>) -> Result<Outcome> {
    let e = load(d)?;
    let l = lambda_or_gamma(&e, lambda)?;
    let dim = Reps::new(&e.datum).weyl_dimension(&l)?;
    let text = format!("dim V^{} = {dim}\n", show(&e, &l));
    outcome(&e, json!({ "lambda": coweight_json(&e, &l), "dim": dim.to_string() }), text, true)
}

pub fn rep_char(d: &DatumArgs, lambda: Option<&str>) -> Result<Outcome> {
    let e = load(d)?;
    let l = lambda_or_gamma(&e, lambda)?;
    let reps = Reps::new(&e.datum);
    let mults = reps.dominant_multiplicities(&l)?;
    let dim = reps.weyl_dimension(&l)?;
    let mut text = format!("V^{}: dim {dim}, dominant weights:\n", show(&e, &l));
    let mut weights = Vec::new();
    for (w, m) in mults.iter().rev() {
        let _ = writeln!(text, "  {m} x {}", show(&e, w));
        weights.push(json!({ "weight": coweight_json(&e, w), "multiplicity": m }));
    }
    outcome(&e, json!({ "lambda": coweight_json(&e, &l), "dim": dim.to_string(), "dominant_weights": weights }), text, true)
}

pub fn rep_tensor(d: &DatumArgs, lambda: Option<&str>, mu: Option<&str>) -> Result<Outcome> {
    let e = load(d)?;
    let l = lambda_or_gamma(&e, lambda)?;
    let m = lambda_or_gamma(&e, mu)?;
    let dec = Reps::new(&e.datum).tensor_decompose(&l, &m)?;
    decomposition_outcome(&e, format!("V^{} (x) V^{}:", show(&e, &l), show(&e, &m)), &dec)
}

pub fn rep_power(d: &DatumArgs, lambda: Option<&str>, k: usize, exterior: bool) -> Result<Outcome> {
    let e = load(d)?;
    let l = lambda_or_gamma(&e, lambda)?;
    let kind = if exterior { PowerKind::Exterior } else { PowerKind::Symmetric };
    let dec = Reps::new(&e.datum).wedge_sym_decompose(&l, k, kind)?;
    let op = if exterior { "Wedge" } else { "Sym" };
    decomposition_outcome(&e, format!("{op}^{k} V^{}:", show(&e, &l)), &dec)
}

pub fn rep_schur(d: &DatumArgs, lambda: Option<&str>, partition: &str) -> Result<Outcome> {
    let e = load(d)?;
    let l = lambda_or_gamma(&e, lambda)?;
    let parts: Vec<u32> = appendix::parse_vector(partition)?
        .into_iter()
        .map(|p| u32::try_from(p).map_err(|_| CliError::Usage(format!("bad part {p}"))))
        .collect::<Result<_>>()?;
    let nu = Partition::new(parts)?;
    let reps = Reps::new(&e.datum);
    let chr = reps.character(&l)?;
    let dec = reps.schur_decompose(&chr, &nu)?;
    decomposition_outcome(&e, format!("S_{:?} V^{}:", nu.parts(), show(&e, &l)), &dec)
}

pub fn strata_tau(d: &DatumArgs, deg: u64, mu: Option<&str>) -> Result<Outcome> {
    let e = load(d)?;
    let a = e.admissible()?;
    let mu = match mu {
        Some(s) => e.parse_coweight(s)?,
        None => Coweight::zero(e.datum.rank()),
    };
    let parts = strata::tau_partitions(&a, deg, &mu)?;
    let open = strata::y_dimension(&a, deg, &Coweight::zero(e.datum.rank()), deg as usize);
    let mut strict = true;
    let mut text = format!("d = {deg}, mu = {}: {} partitions, open stratum {open}\n", show(&e, &mu), parts.len());
    let mut list = Vec::new();
    for t in &parts {
        let top = mu.is_zero() && t.m() == deg as usize;
        strict &= if top { t.dim == open } else { t.dim < open };
        let values: Vec<String> = t.parts.iter().map(|p| show(&e, &p.value)).collect();
        let _ = writeln!(text, "  m = {}  dim {}  [{}]", t.m(), t.dim, values.join(", "));
        let parts_json: Vec<Value> = t
            .parts
            .iter()
            .map(|p| json!({ "d": p.d, "mu": e.display_coweight(&p.mu), "value": coweight_json(&e, &p.value) }))
            .collect();
        list.push(json!({ "m": t.m(), "dim": to_value(&t.dim), "parts": parts_json }));
    }
    let result = json!({ "d": deg, "mu": e.display_coweight(&mu), "open_dim": to_value(&open), "partitions": list, "strict": strict });
    outcome(&e, result, text, strict)
}

pub fn strata_dims(d: &DatumArgs, levi_subset: &str) -> Result<Outcome> {
    let e = load(d)?;
    let a = e.admissible()?;
    let l = restrict_to_levi(&a, &subset(levi_subset, e.datum.num_simple())?)?;
    let mut passed = true;
    let mut text = String::from("orbit cells <gamma + w gamma, rho>:\n");
    let mut cells = Vec::new();
    for w in a.orbit() {
        let dim = strata::orbit_stratum_dim_at(&a, w)?;
        let tele = strata::telescoping_holds(&a, w)?;
        passed &= tele && dim >= 0;
        let _ = writeln!(text, "  {}: {dim}", show(&e, w));
        cells.push(json!({ "w_gamma": coweight_json(&e, w), "dim": dim, "telescoping": tele }));
    }
    let _ = writeln!(text, "fibration over the Levi {levi_subset:?}:");
    let mut fib = Vec::new();
    for f in strata::fibration_strata(&l)? {
        passed &= f.fiber_dim >= 0 && f.cells_consistent;
        let _ = writeln!(
            text,
            "  {}: total {} = fiber {} + Levi orbit {}",
            show(&e, &f.m_dominant),
            f.total_dim,
            f.fiber_dim,
            f.m_flag_dim
        );
        fib.push(json!({
            "m_dominant": coweight_json(&e, &f.m_dominant),
            "total_dim": f.total_dim,
            "fiber_dim": f.fiber_dim,
            "m_flag_dim": f.m_flag_dim,
            "cells_consistent": f.cells_consistent,
        }));
    }
    outcome(&e, json!({ "cells": cells, "fibration": fib }), text, passed)
}

fn built_json(b: &builder::BuiltGroup) -> Value {
    json!({
        "h": b.h.name(),
        "center_order": b.h.h,
        "gamma_h": b.gamma_h,
        "verdict": to_value(&b.verdict),
        "basis": b.basis,
        "datum": to_value(&b.datum().to_file()),
        "gamma": b.gamma(),
        "orbit_size": b.admissible.orbit().len(),
        "d_omega": b.admissible.d_omega(),
        "report": to_value(b.report()),
    })
}

fn built_text(b: &builder::BuiltGroup) -> String {
    format!(
        "H = {} (center of order {}), gamma_H = {:?}: rank {}, gamma = {}, |W gamma| = {}, admissible = {}\n",
        b.h.name(),
        b.h.h,
        b.gamma_h,
        b.datum().rank(),
        b.gamma(),
        b.admissible.orbit().len(),
        b.report().overall
    )
}

pub fn build(cartan_type: Option<&str>, n: Option<usize>, gamma_h: Option<&str>) -> Result<Outcome> {
    let (Some(t), Some(n)) = (cartan_type, n) else {
        return Err(CliError::Usage("build needs --type and --n (or the appendix-catalog subcommand)".into()));
    };
    let t: CartanType = t.parse()?;
    let h = builder::catalog_simply_connected(t, n)?;
    let g = match gamma_h.unwrap_or("1") {
        "spin+" if t == CartanType::D => h.fundamental_coweight(n)?,
        "spin-" if t == CartanType::D => h.fundamental_coweight(n - 1)?,
        s if s.contains(',') => appendix::parse_vector(s)?,
        s => {
            let k: usize = s.parse().map_err(|_| CliError::Usage(format!("bad --gamma-h {s:?}")))?;
            h.fundamental_coweight(k)?
        }
    };
    let verdict = builder::validate_gamma_h(&h, &g)?;
    if !verdict.passed() {
        let text = format!("gamma_H = {g:?} rejected for {}: {verdict:?}\n", h.name());
        return Ok(Outcome { datum: None, result: json!({ "gamma_h": g, "verdict": to_value(&verdict) }), text, passed: false });
    }
    let b = builder::build_admissible_group(&h, &g)?;
    let datum = DatumInfo {
        name: h.name(),
        n,
        fingerprint: b.datum().fingerprint(),
        gamma: b.gamma().0.clone(),
    };
    Ok(Outcome { datum: Some(datum), result: built_json(&b), text: built_text(&b), passed: b.report().overall })
}

pub fn build_catalog(n: usize) -> Result<Outcome> {
    let mut text = String::new();
    let mut list = Vec::new();
    let mut passed = true;
    for ex in builder::appendix_examples(n) {
        match ex.build() {
            Ok(b) => {
                passed &= b.report().overall;
                let _ = write!(text, "[{}] {}: {}", ex.example, ex.name, built_text(&b));
                list.push(json!({ "example": ex.example, "name": ex.name, "group": built_json(&b) }));
            }
            Err(err) => {
                passed = false;
                let _ = writeln!(text, "[{}] {}: FAILED {err}", ex.example, ex.name);
                list.push(json!({ "example": ex.example, "name": ex.name, "error": err.to_string() }));
            }
        }
    }
    Ok(Outcome { datum: None, result: json!({ "examples": list }), text, passed })
}

pub fn reproduce(only: Option<&str>, n: Option<usize>) -> Result<Outcome> {
    let r = appendix::reproduce_appendix(only, n)?;
    let mut text = String::new();
    for c in &r.claims {
        let _ = writeln!(text, "{} [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.example, c.id, c.detail);
    }
    let _ = writeln!(text, "{} of {} claims hold", r.claims.len() - r.failures().len(), r.claims.len());
    Ok(Outcome { datum: None, result: to_value(&r), text, passed: r.passed })
}
