//! Minuscule coweights and certification of 1-admissible data.

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix, Rational};
use crate::rep::Reps;
use crate::root_datum::{pair, AbelianQuotient, Coweight, RootDatum, Weight, WeylElement};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinusculeVerdict {
    pub minuscule: bool,
    /// A dominant `μ < γ`, when one exists.
    pub smaller: Option<Coweight>,
}

/// Decides whether a dominant `γ` is minuscule (a nonzero minimal element of
/// `Λ⁺`). A positive answer is cross-checked: all root pairings lie in
/// `{0, ±1}` and the weights of `V^γ` are exactly `Wγ`, each once.
pub fn is_minuscule(datum: &RootDatum, gamma: &Coweight) -> Result<MinusculeVerdict> {
    datum.check_coweight(gamma)?;
    if !datum.is_dominant(gamma) {
        return Err(Error::NotDominant(gamma.0.clone()));
    }
    if gamma.is_zero() {
        return Ok(MinusculeVerdict { minuscule: false, smaller: None });
    }
    let smaller = datum.dominant_below(gamma).into_iter().find(|mu| mu != gamma);
    if smaller.is_some() {
        return Ok(MinusculeVerdict { minuscule: false, smaller });
    }
    if let Some(r) = datum.positive_roots().iter().find(|r| pair(gamma, r).abs() > 1) {
        return Err(Error::LemmaViolation(format!("minuscule {gamma} pairs to {} with root {r}", pair(gamma, r))));
    }
    let chr = Reps::new(datum).character(gamma)?;
    let orbit = datum.weyl_orbit(gamma)?;
    if !chr.is_multiplicity_free() || chr.weights().keys().cloned().collect::<Vec<_>>() != orbit {
        return Err(Error::LemmaViolation(format!("weights of V^{gamma} differ from its Weyl orbit")));
    }
    Ok(MinusculeVerdict { minuscule: true, smaller: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityCheck {
    /// Minuscule dominant coweights of degree one.
    pub degree_one_minuscule: Vec<Coweight>,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub gamma: Coweight,
    pub center: Condition,
    pub fundamental_group: Condition,
    pub minuscule_generating: Condition,
    pub faithful: Condition,
    pub injectivity: Option<InjectivityCheck>,
    pub overall: bool,
}

impl AdmissibilityReport {
    pub fn conditions(&self) -> [&Condition; 4] {
        [&self.center, &self.fundamental_group, &self.minuscule_generating, &self.faithful]
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.conditions().iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

fn describe(q: &AbelianQuotient) -> String {
    let mut parts: Vec<String> = q.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
    parts.extend(std::iter::repeat_n("Z".to_string(), q.free_rank));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Evaluates the four conditions of 1-admissibility for `(datum, γ)`.
pub fn check_one_admissible(datum: &RootDatum, gamma: &Coweight) -> Result<AdmissibilityReport> {
    datum.check_coweight(gamma)?;
    if !datum.is_dominant(gamma) {
        return Err(Error::NotDominant(gamma.0.clone()));
    }
    let (pi1, center) = datum.lattice_quotients();

    let center_ok = center.is_free_rank_one();
    let center_c = Condition {
        name: "center",
        passed: center_ok,
        witness: format!("character group of the center is {}", describe(&center)),
    };
    let pi1_ok = pi1.is_free_rank_one();
    let pi1_c = Condition {
        name: "fundamental_group",
        passed: pi1_ok,
        witness: format!("pi_1 is {}", describe(&pi1)),
    };

    let minuscule = is_minuscule(datum, gamma)?;
    let theta = pi1.project(&gamma.0);
    let generates = pi1_ok && theta[0].abs() == 1;
    let witness = match (&minuscule.smaller, minuscule.minuscule, generates) {
        (Some(mu), _, _) => format!("dominant {mu} lies strictly below gamma"),
        (None, false, _) => "gamma is zero".to_string(),
        (None, true, false) => format!("image of gamma in pi_1 is {theta:?}, not a generator"),
        (None, true, true) => "gamma is minuscule and its class generates pi_1".to_string(),
    };
    let min_c = Condition { name: "minuscule_generating", passed: minuscule.minuscule && generates, witness };

    let orbit = datum.weyl_orbit(gamma)?;
    let span: Vec<Vec<i64>> = orbit.iter().map(|c| c.0.clone()).collect();
    let index = lattice::sublattice_index(datum.rank(), &span);
    let faithful_c = Condition {
        name: "faithful",
        passed: index == Some(1),
        witness: match index {
            Some(1) => format!("the {} weights of V^gamma span the coweight lattice", orbit.len()),
            Some(k) => format!("weights of V^gamma span a sublattice of index {k}"),
            None => "weights of V^gamma span a sublattice of lower rank".to_string(),
        },
    };

    let overall = center_c.passed && pi1_c.passed && min_c.passed && faithful_c.passed;
    let injectivity = if pi1_ok { Some(degree_one_injectivity(datum, &pi1, gamma)?) } else { None };
    Ok(AdmissibilityReport {
        gamma: gamma.clone(),
        center: center_c,
        fundamental_group: pi1_c,
        minuscule_generating: min_c,
        faithful: faithful_c,
        injectivity,
        overall,
    })
}

/// A minuscule dominant coweight pairs to 0 or 1 with every simple root, and
/// is determined by those pairings together with its `π₁`-degree. Solving for
/// each 0/1 pattern in the degree of `γ` lists the whole fibre.
fn degree_one_injectivity(datum: &RootDatum, pi1: &AbelianQuotient, gamma: &Coweight) -> Result<InjectivityCheck> {
    let n = datum.num_simple();
    let rank = datum.rank();
    let degree_row: Vec<i64> = (0..rank).map(|k| pi1.project(&Coweight::basis(rank, k).0)[0]).collect();
    let mut rows: Vec<Vec<i64>> = datum.simple_roots().iter().map(|r| r.0.clone()).collect();
    rows.push(degree_row);
    let a = IntMatrix::from_rows(rank, &rows);
    let target = pi1.project(&gamma.0)[0];
    let mut found = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut rhs: Vec<i64> = (0..n).map(|i| i64::from(mask >> i & 1 == 1)).collect();
        rhs.push(target);
        let Some(sol) = lattice::solve_rational(&a, &rhs) else { continue };
        let Some(lambda) = lattice::integral(&sol) else { continue };
        let lambda = Coweight(lambda);
        if is_minuscule(datum, &lambda)?.minuscule {
            found.push(lambda);
        }
    }
    found.sort();
    let injective = found.len() <= 1;
    Ok(InjectivityCheck { degree_one_minuscule: found, injective })
}

/// A certified 1-admissible datum and its distinguished weights.
#[derive(Clone, Debug)]
pub struct AdmissibleDatum {
    datum: RootDatum,
    gamma: Coweight,
    /// `π₁(G)` with its free coordinate normalized so that `γ ↦ 1`.
    pi1: AbelianQuotient,
    w0: WeylElement,
    omega0: Weight,
    omega_i: Vec<Weight>,
    omega: Coweight,
    d_omega: i64,
    j: Vec<usize>,
    orbit: Vec<Coweight>,
    report: AdmissibilityReport,
}

impl AdmissibleDatum {
    pub fn new(datum: RootDatum, gamma: Coweight) -> Result<Self> {
        let report = check_one_admissible(&datum, &gamma)?;
        if !report.overall {
            let failed: Vec<String> = report
                .conditions()
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{} ({})", c.name, c.witness))
                .collect();
            return Err(Error::NotAdmissible(failed.join("; ")));
        }
        let (mut pi1, _) = datum.lattice_quotients();
        pi1.orient_free_positive(&gamma.0);
        debug_assert_eq!(pi1.project(&gamma.0), vec![1]);
        let w0 = datum.longest_element(None)?;
        let (omega0, omega_i) = special_weight_basis(&datum, &gamma, &w0)?;
        let (omega, d_omega) = central_coweight(&datum, &pi1, &gamma)?;
        let j = (0..datum.num_simple())
            .filter(|&i| pair(&gamma, &datum.simple_roots()[i]) == 0)
            .collect();
        let orbit = datum.weyl_orbit(&gamma)?;
        let a = AdmissibleDatum { datum, gamma, pi1, w0, omega0, omega_i, omega, d_omega, j, orbit, report };
        a.audit()?;
        Ok(a)
    }

    fn audit(&self) -> Result<()> {
        let d = &self.datum;
        let w0g = self.w0.act(&self.gamma);
        for (i, oi) in self.omega_i.iter().enumerate() {
            if pair(&w0g, oi) != 0 || pair(&self.gamma, oi) <= 0 {
                return Err(Error::LemmaViolation(format!("fundamental weight {} misbehaves on gamma", i + 1)));
            }
            for (j, a) in d.simple_coroots().iter().enumerate() {
                if pair(a, oi) != i64::from(i == j) {
                    return Err(Error::LemmaViolation(format!("<alpha_{}, omega_{}> != delta", j + 1, i + 1)));
                }
            }
        }
        if pair(&self.gamma, &self.omega0) != 1 || d.simple_coroots().iter().any(|a| pair(a, &self.omega0) != 0) {
            return Err(Error::LemmaViolation("omega_0 is not the normalized central character".into()));
        }
        // each highest root pairs to 1 with gamma
        for r in d.highest_roots() {
            if pair(&self.gamma, &r) != 1 {
                return Err(Error::LemmaViolation(format!("highest root {r} pairs {} with gamma", pair(&self.gamma, &r))));
            }
        }
        Ok(())
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn gamma(&self) -> &Coweight {
        &self.gamma
    }

    pub fn pi1(&self) -> &AbelianQuotient {
        &self.pi1
    }

    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }

    pub fn omega0(&self) -> &Weight {
        &self.omega0
    }

    pub fn omega_i(&self) -> &[Weight] {
        &self.omega_i
    }

    pub fn omega(&self) -> &Coweight {
        &self.omega
    }

    pub fn d_omega(&self) -> i64 {
        self.d_omega
    }

    /// `J = {i : ⟨γ, α̌_i⟩ = 0}`.
    pub fn j(&self) -> &[usize] {
        &self.j
    }

    /// `Wγ`, sorted.
    pub fn orbit(&self) -> &[Coweight] {
        &self.orbit
    }

    pub fn report(&self) -> &AdmissibilityReport {
        &self.report
    }

    /// Degree in `π₁(G) ≅ ℤ`, normalized by `γ ↦ 1`.
    pub fn degree(&self, lambda: &Coweight) -> i64 {
        self.pi1.project(&lambda.0)[0]
    }

    /// The datum `{−w₀γ}`.
    pub fn dual_gamma(&self) -> Coweight {
        -self.w0.act(&self.gamma)
    }

    /// The basis `ω̌₀, ω̌_1, …, ω̌_n` of `Λ̌` as a list.
    pub fn weight_basis(&self) -> Vec<Weight> {
        let mut v = vec![self.omega0.clone()];
        v.extend(self.omega_i.iter().cloned());
        v
    }
}

/// Solves for `ω̌₀` and `ω̌_i`: the dual basis to `(α_1, …, α_n, w₀γ)`.
/// The columns of the inverse are `ω̌_1, …, ω̌_n` and `ω̌₀`.
pub fn special_weight_basis(datum: &RootDatum, gamma: &Coweight, w0: &WeylElement) -> Result<(Weight, Vec<Weight>)> {
    let n = datum.num_simple();
    if datum.rank() != n + 1 {
        return Err(Error::Precondition(format!(
            "special weight basis needs rank = semisimple rank + 1, got {} and {n}",
            datum.rank()
        )));
    }
    let mut rows: Vec<Vec<i64>> = datum.simple_coroots().iter().map(|c| c.0.clone()).collect();
    rows.push(w0.act(gamma).0);
    let a = IntMatrix::from_rows(n + 1, &rows);
    let det = a.det();
    let inv = lattice::rational_inverse(&a).ok_or_else(|| Error::NonIntegral("coroots and w0(gamma) are dependent".into()))?;
    if det.abs() != 1 {
        let col: Vec<Rational> = inv.iter().map(|row| row[n]).collect();
        return Err(Error::NonIntegral(format!("determinant {det}; omega_0 would be {col:?}")));
    }
    let column = |j: usize| -> Weight {
        Weight(inv.iter().map(|row| row[j].to_integer() as i64).collect())
    };
    Ok((column(n), (0..n).map(column).collect()))
}

/// The primitive coweight `ω` orthogonal to all roots, oriented so that its
/// degree `d_ω` is positive. Checks `d_ω γ − ω ∈ Λ^{pos}`.
pub fn central_coweight(datum: &RootDatum, pi1: &AbelianQuotient, gamma: &Coweight) -> Result<(Coweight, i64)> {
    let rank = datum.rank();
    let kernel = if datum.num_simple() == 0 {
        vec![vec![1; rank]; usize::from(rank == 1)]
    } else {
        let rows: Vec<Vec<i64>> = datum.simple_roots().iter().map(|r| r.0.clone()).collect();
        lattice::integer_kernel(&IntMatrix::from_rows(rank, &rows))
    };
    if kernel.len() != 1 {
        return Err(Error::NotAdmissible(format!("coweights orthogonal to all roots have rank {}", kernel.len())));
    }
    let mut omega = Coweight(kernel[0].clone());
    let mut d = pi1.project(&omega.0)[0];
    if d < 0 {
        omega = -omega;
        d = -d;
    }
    if d == 0 {
        return Err(Error::LemmaViolation("central coweight has degree zero".into()));
    }
    if datum.pos_part_decompose(&(&gamma.scale(d) - &omega)).is_none() {
        return Err(Error::LemmaViolation(format!("{d}*gamma - omega is not in the positive coroot cone")));
    }
    Ok((omega, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn gl_weights() {
        let c = catalog::gl(4).unwrap();
        let a = AdmissibleDatum::new(c.datum, c.gamma).unwrap();
        assert_eq!(a.omega0(), &Weight(vec![1, 1, 1, 1]));
        assert_eq!(a.omega_i()[1], Weight(vec![1, 1, 0, 0]));
        assert_eq!(a.omega(), &Coweight(vec![1, 1, 1, 1]));
        assert_eq!(a.d_omega(), 4);
        assert_eq!(a.j(), &[1, 2]);
        assert_eq!(a.report().injectivity.as_ref().unwrap().degree_one_minuscule, vec![a.gamma().clone()]);
    }

    #[test]
    fn gsp4_weights_in_textbook_form() {
        let c = catalog::gsp(2).unwrap();
        let a = AdmissibleDatum::new(c.datum.clone(), c.gamma.clone()).unwrap();
        assert_eq!(a.omega0(), &c.weight(&[1, 0, 1, 0]).unwrap());
        assert_eq!(a.omega_i()[1], c.weight(&[1, 1, 0, 0]).unwrap());
        assert_eq!(a.omega(), &c.coweight(&[1, 1, 1, 1]).unwrap());
        assert_eq!(a.d_omega(), 2);
    }

    #[test]
    fn gspin5_central_coweight() {
        let c = catalog::gspin(2).unwrap();
        let a = AdmissibleDatum::new(c.datum.clone(), c.gamma.clone()).unwrap();
        assert_eq!(a.omega(), &c.coweight(&[1, 0, 1, 0]).unwrap());
        // ω pairs 2 with ω̌₀ = (1,1,1,1), so its degree is 2
        assert_eq!(a.d_omega(), 2);
        assert_eq!(a.omega0(), &c.weight(&[1, 1, 1, 1]).unwrap());
    }

    #[test]
    fn minuscule_cases() {
        let c = catalog::gsp(2).unwrap();
        assert!(is_minuscule(&c.datum, &c.gamma).unwrap().minuscule);
        assert!(!is_minuscule(&c.datum, &Coweight::zero(3)).unwrap().minuscule);
        let omega = c.named_omega().unwrap();
        // a central translate of a minuscule coweight is minuscule
        assert!(is_minuscule(&c.datum, &(&c.gamma + &omega)).unwrap().minuscule);
        let v = is_minuscule(&c.datum, &c.gamma.scale(2)).unwrap();
        assert!(!v.minuscule && v.smaller.is_some());
        assert!(is_minuscule(&c.datum, &Coweight(vec![0, 1, 0])).is_err());
    }

    #[test]
    fn sp4_fails_fundamental_group() {
        let c = catalog::sp(2).unwrap();
        let r = check_one_admissible(&c.datum, &c.gamma).unwrap();
        assert!(!r.fundamental_group.passed && !r.overall);
        assert!(AdmissibleDatum::new(c.datum, c.gamma).is_err());
    }
}
