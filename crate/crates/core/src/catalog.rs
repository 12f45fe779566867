//! Standard data: `GL_n`, `GSp_2n`, `GSpin_2n+1` and the simply connected
//! `Sp_2n`, with adapters between internal coordinates and the usual
//! presentations of their lattices.
//!
//! `GSp_2n`: coweights are `(a_1..a_2n)` with `a_i + a_{n+i}` independent of
//! `i`, stored as `(a_1..a_n, c)`; weights are classes in `ℤ^{2n}` modulo
//! `ε_i + ε_{n+i} − ε_j − ε_{n+j}`, stored as
//! `(b_1 − b_{n+1}, …, b_n − b_{2n}, Σ b_{n+i})`. `GSpin_2n+1` swaps the two.

use crate::error::{Error, Result};
use crate::root_datum::{Coweight, RootDatum, Weight};

/// Conversion between internal coordinates and the textbook presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adapter {
    Identity,
    /// The sublattice `{a : a_i + a_{n+i} constant}` of `ℤ^{2n}`.
    Sublattice { n: usize },
    /// The quotient of `ℤ^{2n}` by `ε_i + ε_{n+i} − ε_j − ε_{n+j}`.
    Quotient { n: usize },
}

impl Adapter {
    pub fn from_display(&self, v: &[i64]) -> Result<Vec<i64>> {
        match *self {
            Adapter::Identity => Ok(v.to_vec()),
            Adapter::Sublattice { n } => {
                check_len(v, 2 * n)?;
                let c = v[0] + v[n];
                if (0..n).any(|i| v[i] + v[n + i] != c) {
                    return Err(Error::Precondition(format!("{v:?} is not in the sublattice a_i + a_(n+i) = const")));
                }
                let mut x = v[..n].to_vec();
                x.push(c);
                Ok(x)
            }
            Adapter::Quotient { n } => {
                check_len(v, 2 * n)?;
                let mut y: Vec<i64> = (0..n).map(|i| v[i] - v[n + i]).collect();
                y.push(v[n..].iter().sum());
                Ok(y)
            }
        }
    }

    /// Canonical textbook representative.
    pub fn to_display(&self, x: &[i64]) -> Vec<i64> {
        match *self {
            Adapter::Identity => x.to_vec(),
            Adapter::Sublattice { n } => {
                let c = x[n];
                let mut v = x[..n].to_vec();
                v.extend(x[..n].iter().map(|a| c - a));
                v
            }
            Adapter::Quotient { n } => {
                let mut v = vec![0; 2 * n];
                v[..n].copy_from_slice(&x[..n]);
                v[0] += x[n];
                v[n] = x[n];
                v
            }
        }
    }
}

fn check_len(v: &[i64], len: usize) -> Result<()> {
    if v.len() != len {
        return Err(Error::RankMismatch { expected: len, got: v.len() });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    GL,
    GSp,
    GSpin,
    Sp,
}

/// A catalog datum with its distinguished coweight and coordinate adapters.
#[derive(Clone, Debug)]
pub struct CatalogDatum {
    pub family: Family,
    pub n: usize,
    pub datum: RootDatum,
    pub gamma: Coweight,
    pub coweights: Adapter,
    pub weights: Adapter,
}

impl CatalogDatum {
    pub fn coweight(&self, v: &[i64]) -> Result<Coweight> {
        Ok(Coweight(self.coweights.from_display(v)?))
    }

    pub fn weight(&self, v: &[i64]) -> Result<Weight> {
        Ok(Weight(self.weights.from_display(v)?))
    }

    pub fn coweight_to_display(&self, c: &Coweight) -> Vec<i64> {
        self.coweights.to_display(&c.0)
    }

    pub fn weight_to_display(&self, w: &Weight) -> Vec<i64> {
        self.weights.to_display(&w.0)
    }

    /// The named elements `γ_i` in textbook coordinates (`GL`, `GSp`, `GSpin`).
    pub fn named_gamma(&self, i: usize) -> Result<Coweight> {
        let n = self.n;
        match self.family {
            Family::GL if (1..=n).contains(&i) => {
                Ok(Coweight((0..n).map(|k| i64::from(k < i)).collect()))
            }
            Family::GSp if (1..n).contains(&i) => {
                let mut v = vec![0; 2 * n];
                for k in 0..n {
                    v[k] = if k < i { 2 } else { 1 };
                    v[n + k] = if k < i { 0 } else { 1 };
                }
                self.coweight(&v)
            }
            Family::GSpin if (1..=n).contains(&i) => {
                let v: Vec<i64> = (0..2 * n).map(|k| i64::from(k < i)).collect();
                self.coweight(&v)
            }
            _ => Err(Error::InvalidIndex(i)),
        }
    }

    /// The central coweight `ω` in textbook form.
    pub fn named_omega(&self) -> Result<Coweight> {
        let n = self.n;
        match self.family {
            Family::GL => Ok(Coweight(vec![1; n])),
            Family::GSp => self.coweight(&vec![1; 2 * n]),
            Family::GSpin => {
                let mut v = vec![0; 2 * n];
                v[0] = 1;
                v[n] = 1;
                self.coweight(&v)
            }
            Family::Sp => Err(Error::Unsupported("Sp has no central coweight".into())),
        }
    }

    /// The generators of `Λ⁺_{G,S}` as listed for the family.
    pub fn expected_generators(&self) -> Result<Vec<Coweight>> {
        let n = self.n;
        let mut out = Vec::new();
        match self.family {
            Family::GL => {
                for i in 1..=n {
                    out.push(self.named_gamma(i)?);
                }
            }
            Family::GSp => {
                out.push(self.gamma.clone());
                for i in 1..n {
                    out.push(self.named_gamma(i)?);
                }
                out.push(self.named_omega()?);
            }
            Family::GSpin => {
                for i in 1..=n {
                    out.push(self.named_gamma(i)?);
                }
                out.push(self.named_omega()?);
            }
            Family::Sp => return Err(Error::Unsupported("Sp is not 1-admissible".into())),
        }
        Ok(out)
    }
}

fn unit(len: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

fn diff(len: usize, i: usize) -> Vec<i64> {
    let mut v = unit(len, i);
    v[i + 1] = -1;
    v
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn gl(n: usize) -> Result<CatalogDatum> {
    if n == 0 {
        return Err(Error::Precondition("GL_n needs n >= 1".into()));
    }
    let datum = RootDatum::new(
        n,
        (0..n - 1).map(|i| Weight(diff(n, i))).collect(),
        (0..n - 1).map(|i| Coweight(diff(n, i))).collect(),
        Some(labels(n - 1)),
    )?;
    Ok(CatalogDatum {
        family: Family::GL,
        n,
        datum,
        gamma: Coweight(unit(n, 0)),
        coweights: Adapter::Identity,
        weights: Adapter::Identity,
    })
}

/// Simple coroots `e_i − e_{i+1}`, `e_n` and simple roots `e_i − e_{i+1}`,
/// `2e_n − e_{n+1}` on `ℤ^{n+1}`.
fn gsp_lists(n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let len = n + 1;
    let mut coroots: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(len, i)).collect();
    coroots.push(unit(len, n - 1));
    let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(len, i)).collect();
    let mut last = vec![0; len];
    last[n - 1] = 2;
    last[n] = -1;
    roots.push(last);
    (roots, coroots)
}

pub fn gsp(n: usize) -> Result<CatalogDatum> {
    if n == 0 {
        return Err(Error::Precondition("GSp_2n needs n >= 1".into()));
    }
    let (roots, coroots) = gsp_lists(n);
    let datum = RootDatum::new(
        n + 1,
        roots.into_iter().map(Weight).collect(),
        coroots.into_iter().map(Coweight).collect(),
        Some(labels(n)),
    )?;
    Ok(CatalogDatum {
        family: Family::GSp,
        n,
        datum,
        gamma: Coweight(vec![1; n + 1]),
        coweights: Adapter::Sublattice { n },
        weights: Adapter::Quotient { n },
    })
}

pub fn gspin(n: usize) -> Result<CatalogDatum> {
    if n == 0 {
        return Err(Error::Precondition("GSpin_2n+1 needs n >= 1".into()));
    }
    let (roots, coroots) = gsp_lists(n);
    let datum = RootDatum::new(
        n + 1,
        coroots.into_iter().map(Weight).collect(),
        roots.into_iter().map(Coweight).collect(),
        Some(labels(n)),
    )?;
    Ok(CatalogDatum {
        family: Family::GSpin,
        n,
        datum,
        gamma: Coweight(unit(n + 1, 0)),
        coweights: Adapter::Quotient { n },
        weights: Adapter::Sublattice { n },
    })
}

/// Simply connected `Sp_2n`: coweights `ℤ^n` spanned by the coroots
/// `e_i − e_{i+1}`, `e_n`; roots `e_i − e_{i+1}`, `2e_n`. It has no
/// minuscule coweight; `gamma` is the dominant coweight `e_1`.
pub fn sp(n: usize) -> Result<CatalogDatum> {
    if n == 0 {
        return Err(Error::Precondition("Sp_2n needs n >= 1".into()));
    }
    let mut coroots: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i)).collect();
    coroots.push(unit(n, n - 1));
    let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i)).collect();
    roots.push(unit(n, n - 1).iter().map(|x| 2 * x).collect());
    let datum = RootDatum::new(
        n,
        roots.into_iter().map(Weight).collect(),
        coroots.into_iter().map(Coweight).collect(),
        Some(labels(n)),
    )?;
    Ok(CatalogDatum {
        family: Family::Sp,
        n,
        datum,
        gamma: Coweight(unit(n, 0)),
        coweights: Adapter::Identity,
        weights: Adapter::Identity,
    })
}

pub fn by_family(family: Family, n: usize) -> Result<CatalogDatum> {
    match family {
        Family::GL => gl(n),
        Family::GSp => gsp(n),
        Family::GSpin => gspin(n),
        Family::Sp => sp(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::pair;

    #[test]
    fn gsp4_cartan_is_c2() {
        let c = gsp(2).unwrap();
        // entries <α_i, α̌_j>; the second simple root ε_2 − ε_4 is long
        assert_eq!(c.datum.cartan().to_rows(), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(c.datum.positive_roots().len(), 4);
    }

    #[test]
    fn gsp_pairing_matches_textbook() {
        let c = gsp(3).unwrap();
        let a = [2, 1, 0, -1, 0, 1];
        let b = [3, -1, 2, 0, 5, 1];
        let expected: i64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        assert_eq!(pair(&c.coweight(&a).unwrap(), &c.weight(&b).unwrap()), expected);
        // round trips
        assert_eq!(c.coweight_to_display(&c.coweight(&a).unwrap()), a.to_vec());
        let w = c.weight(&b).unwrap();
        assert_eq!(c.weight(&c.weight_to_display(&w)).unwrap(), w);
    }

    #[test]
    fn gsp_textbook_roots() {
        let c = gsp(2).unwrap();
        // coroot β_22 = e_2 − e_4 and root β̌_22 = ε_2 − ε_4
        assert_eq!(c.coweight(&[0, 1, 0, -1]).unwrap(), c.datum.simple_coroots()[1]);
        assert_eq!(c.weight(&[0, 1, 0, -1]).unwrap(), c.datum.simple_roots()[1]);
        assert_eq!(c.coweight(&[1, 1, 0, 0]).unwrap(), c.gamma);
        assert!(c.coweight(&[1, 0, 0, 0]).is_err());
    }

    #[test]
    fn gspin_is_dual_of_gsp() {
        for n in 1..4 {
            assert_eq!(gspin(n).unwrap().datum, gsp(n).unwrap().datum.dual());
        }
        let c = gspin(2).unwrap();
        assert_eq!(c.coweight(&[1, 0, 0, 0]).unwrap(), c.gamma);
        assert_eq!(c.named_omega().unwrap(), Coweight(vec![0, 0, 1]));
    }

    #[test]
    fn sp_is_simply_connected() {
        let (pi1, _) = sp(2).unwrap().datum.lattice_quotients();
        assert!(pi1.is_trivial());
    }
}
