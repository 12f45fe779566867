//! Independent reference implementations used by the integration tests.
//! Only the simple roots and coroots of a datum are read from the library.

#![allow(dead_code)]

use minuscule::{Coweight, RootDatum};
use std::collections::{BTreeMap, HashMap};

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(basis: &[Vec<i64>], coeffs: &[i64], rank: usize) -> Vec<i64> {
    let mut out = vec![0; rank];
    for (b, c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Positive roots in simple-root coefficients, by root strings. `cartan[i][j]`
/// is the pairing of simple coroot `i` with simple root `j`, and the roots
/// enumerated are the ones indexed by `j`.
fn positive_coefficients(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            // ⟨α_i^∨, β⟩
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            let mut p = 0;
            loop {
                let mut down = beta.clone();
                down[i] -= p + 1;
                if roots.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if !roots.contains(&up) {
                    roots.push(up);
                }
            }
        }
        k += 1;
    }
    roots
}

pub struct Oracle {
    pub rank: usize,
    pub simple_coroots: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub positive_coroots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub two_rho: Vec<i64>,
    pub two_rho_check: Vec<i64>,
}

impl Oracle {
    pub fn new(d: &RootDatum) -> Self {
        let rank = d.rank();
        let coroots: Vec<Vec<i64>> = d.simple_coroots().iter().map(|c| c.0.clone()).collect();
        let roots: Vec<Vec<i64>> = d.simple_roots().iter().map(|r| r.0.clone()).collect();
        let n = roots.len();
        // coroot strings use ⟨β, α̌_i⟩ with β a combination of coroots
        let for_coroots: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| dot(&coroots[j], &roots[i])).collect()).collect();
        let for_roots: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| dot(&coroots[i], &roots[j])).collect()).collect();
        let positive_coroots: Vec<Vec<i64>> =
            positive_coefficients(&for_coroots).iter().map(|c| combine(&coroots, c, rank)).collect();
        let positive_roots: Vec<Vec<i64>> =
            positive_coefficients(&for_roots).iter().map(|c| combine(&roots, c, rank)).collect();
        let two_rho = positive_coroots.iter().fold(vec![0; rank], |acc, c| acc.iter().zip(c).map(|(a, b)| a + b).collect());
        let two_rho_check =
            positive_roots.iter().fold(vec![0; rank], |acc, c| acc.iter().zip(c).map(|(a, b)| a + b).collect());
        Oracle { rank, simple_coroots: coroots, simple_roots: roots, positive_coroots, positive_roots, two_rho, two_rho_check }
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.simple_roots.iter().all(|r| dot(x, r) >= 0)
    }

    fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.positive_roots.iter().map(|r| dot(x, r) * dot(y, r)).sum()
    }

    /// Full weight multiset of `V^λ` by Freudenthal's formula over the whole
    /// weight diagram.
    pub fn character(&self, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
        let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
        let top = dot(lambda, &self.two_rho_check);
        let mut queue: BTreeMap<(u64, Vec<i64>), ()> = BTreeMap::new();
        queue.insert((0, lambda.to_vec()), ());
        while let Some(((h, mu), ())) = queue.pop_first() {
            if mult.contains_key(&mu) {
                continue;
            }
            let m = if h == 0 {
                1
            } else {
                let diff: Vec<i64> = lambda.iter().zip(&mu).map(|(a, b)| a - b).collect();
                let sum: Vec<i64> = lambda.iter().zip(&mu).zip(&self.two_rho).map(|((a, b), r)| a + b + r).collect();
                let denom = self.form(&diff, &sum);
                let mut num = 0;
                for a in &self.positive_coroots {
                    let mut k = 1;
                    loop {
                        let up: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                        if dot(&up, &self.two_rho_check) > top {
                            break;
                        }
                        num += 2 * self.form(&up, a) * mult.get(&up).copied().unwrap_or(0);
                        k += 1;
                    }
                }
                if num == 0 {
                    0
                } else {
                    assert!(denom > 0 && num % denom == 0, "Freudenthal division failed at {mu:?} in {lambda:?}: {num}/{denom}");
                    num / denom
                }
            };
            mult.insert(mu.clone(), m);
            if m != 0 {
                for c in &self.simple_coroots {
                    let down: Vec<i64> = mu.iter().zip(c).map(|(x, y)| x - y).collect();
                    if !mult.contains_key(&down) {
                        queue.insert((h + 1, down), ());
                    }
                }
            }
        }
        mult.into_iter().filter(|(_, m)| *m != 0).collect()
    }

    fn product(&self, a: &BTreeMap<Vec<i64>, i64>, b: &BTreeMap<Vec<i64>, i64>) -> BTreeMap<Vec<i64>, i64> {
        let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (x, m) in a {
            for (y, n) in b {
                let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                *out.entry(s).or_default() += m * n;
            }
        }
        out.retain(|_, m| *m != 0);
        out
    }

    /// Forward peeling: repeatedly remove the highest dominant weight.
    pub fn peel_tensor(&self, lambda: &[i64], mu: &[i64]) -> BTreeMap<Vec<i64>, i64> {
        let mut rest = self.product(&self.character(lambda), &self.character(mu));
        let mut out = BTreeMap::new();
        loop {
            let top = rest
                .iter()
                .filter(|(w, _)| self.is_dominant(w))
                .max_by_key(|(w, _)| dot(w, &self.two_rho_check))
                .map(|(w, m)| (w.clone(), *m));
            let Some((w, m)) = top else { break };
            assert!(m > 0, "negative multiplicity while peeling");
            out.insert(w.clone(), m);
            for (x, k) in self.character(&w) {
                let e = rest.entry(x.clone()).or_default();
                *e -= m * k;
                if *e == 0 {
                    rest.remove(&x);
                }
            }
        }
        assert!(rest.is_empty(), "non-dominant remainder after peeling");
        out
    }

    /// Brauer–Klimyk, computed on doubled coordinates `2(λ+ν) + 2ρ`.
    pub fn brauer_klimyk(&self, lambda: &[i64], mu: &[i64]) -> BTreeMap<Vec<i64>, i64> {
        let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (nu, m) in self.character(mu) {
            let mut x: Vec<i64> = lambda.iter().zip(&nu).zip(&self.two_rho).map(|((a, b), r)| 2 * (a + b) + r).collect();
            let mut sign = 1;
            let mut singular = false;
            loop {
                let Some(i) = (0..self.simple_roots.len()).find(|&i| dot(&x, &self.simple_roots[i]) <= 0) else {
                    break;
                };
                let p = dot(&x, &self.simple_roots[i]);
                if p == 0 {
                    singular = true;
                    break;
                }
                for (xv, c) in x.iter_mut().zip(&self.simple_coroots[i]) {
                    *xv -= p * c;
                }
                sign = -sign;
            }
            if singular {
                continue;
            }
            let top: Vec<i64> = x
                .iter()
                .zip(&self.two_rho)
                .map(|(a, r)| {
                    assert_eq!((a - r) % 2, 0);
                    (a - r) / 2
                })
                .collect();
            *out.entry(top).or_default() += sign * m;
        }
        out.retain(|_, m| *m != 0);
        out
    }

    /// Dominant coweights `μ ≤ λ`, by a box search over coroot coefficients.
    pub fn dominant_below_box(&self, lambda: &[i64], bound: i64) -> Vec<Coweight> {
        let n = self.simple_coroots.len();
        let mut out = Vec::new();
        let mut c = vec![0i64; n];
        loop {
            let mu: Vec<i64> = lambda
                .iter()
                .zip(combine(&self.simple_coroots, &c, self.rank))
                .map(|(a, b)| a - b)
                .collect();
            if self.is_dominant(&mu) {
                out.push(Coweight(mu));
            }
            let mut i = 0;
            while i < n {
                c[i] += 1;
                if c[i] <= bound {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        out.sort();
        out
    }
}
