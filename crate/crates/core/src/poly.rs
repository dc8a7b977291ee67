//! Truncated multivariate polynomials over ℚ in length symbols `l1..lk` and
//! the formal symbol `eta`, all of degree one.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::graph::Q;

pub fn big(q: &Q) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub fn big_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn fmt_big(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Exponent vector: one entry per length symbol, then one for `eta`.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolynomial {
    nvars: usize,
    trunc: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

fn degree(m: &Monomial) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl GradedPolynomial {
    pub fn zero(nvars: usize, trunc: usize) -> Self {
        GradedPolynomial {
            nvars,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, trunc: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars, trunc);
        p.add_term(vec![0; nvars + 1], c);
        p
    }

    pub fn one(nvars: usize, trunc: usize) -> Self {
        Self::constant(nvars, trunc, BigRational::one())
    }

    /// Variable `i`; `i == nvars` is `eta`.
    pub fn var(nvars: usize, trunc: usize, i: usize) -> Self {
        let mut m = vec![0; nvars + 1];
        m[i] = 1;
        let mut p = Self::zero(nvars, trunc);
        p.add_term(m, BigRational::one());
        p
    }

    pub fn eta(nvars: usize, trunc: usize) -> Self {
        Self::var(nvars, trunc, nvars)
    }

    /// `Σ c_i l_i`.
    pub fn linear(trunc: usize, coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n, trunc);
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n + 1];
            m[i] = 1;
            p.add_term(m, big(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        let mut p = Self::zero(self.nvars, trunc);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.len(), self.nvars + 1);
        if degree(&m) > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.nvars + 1])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut p = Self::zero(self.nvars, self.trunc.min(o.trunc));
        for (m, c) in self.terms.iter().chain(o.terms.iter()) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero(self.nvars, self.trunc);
        for (m, v) in &self.terms {
            p.add_term(m.clone(), v * c);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut p = Self::zero(self.nvars, self.trunc.min(o.trunc));
        for (m1, c1) in &self.terms {
            let d1 = degree(m1);
            for (m2, c2) in &o.terms {
                if d1 + degree(m2) > p.trunc {
                    continue;
                }
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                p.add_term(m, c1 * c2);
            }
        }
        p
    }

    /// Truncated `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Self {
        assert!(
            self.constant_term().is_zero(),
            "exp of a series with nonzero constant term"
        );
        let mut out = Self::one(self.nvars, self.trunc);
        let mut power = Self::one(self.nvars, self.trunc);
        for n in 1..=self.trunc {
            power = power
                .mul(self)
                .scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        out
    }

    /// Homogeneous part of degree `d`.
    pub fn part(&self, d: usize) -> Self {
        let mut p = Self::zero(self.nvars, self.trunc);
        for (m, c) in &self.terms {
            if degree(m) == d {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn monomial_name(&self, m: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if i == self.nvars {
                "eta".to_string()
            } else {
                format!("l{}", i + 1)
            };
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Sorted `monomial → "p/q"` map.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (m, c) in &self.terms {
            map.insert(self.monomial_name(m), Value::String(fmt_big(c)));
        }
        Value::Object(map)
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})*{}", c, self.monomial_name(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bq(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn exp_of_linear_form() {
        let x = GradedPolynomial::var(1, 3, 0);
        let e = x.exp();
        assert_eq!(e.coeff(&[3, 0]), bq(1, 6));
        assert_eq!(e.coeff(&[2, 0]), bq(1, 2));
        // exp(x)·exp(−x) = 1
        assert_eq!(e.mul(&x.neg().exp()), GradedPolynomial::one(1, 3));
    }

    #[test]
    fn truncation_and_names() {
        let x = GradedPolynomial::var(2, 2, 0);
        let eta = GradedPolynomial::eta(2, 2);
        let p = x.mul(&eta).mul(&x);
        assert!(p.is_zero());
        let q = x.mul(&eta).add(&GradedPolynomial::one(2, 2));
        let j = q.to_json();
        assert_eq!(j["l1*eta"], "1/1");
        assert_eq!(j["1"], "1/1");
        assert_eq!(x.mul(&x).monomial_name(&[2, 0, 0]), "l1^2");
    }
}
