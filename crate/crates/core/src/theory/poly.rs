use std::fmt;

use crate::sexpr::{Sexpr, SexprError};

/// Polynomial in the input length with natural coefficients, lowest degree
/// first. Trailing zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<u64>);

impl Poly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: u64) -> Self {
        Poly::new(vec![c])
    }

    /// `a·n + b`
    pub fn linear(a: u64, b: u64) -> Self {
        Poly::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.len().saturating_sub(1) as u32
    }

    pub fn eval(&self, n: u64) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, &c| acc.saturating_mul(n).saturating_add(c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        Poly::new(
            (0..len)
                .map(|i| self.0.get(i).copied().unwrap_or(0).saturating_add(other.0.get(i).copied().unwrap_or(0)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::default();
        }
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].saturating_add(a.saturating_mul(b));
            }
        }
        Poly::new(out)
    }

    /// `self(inner(n))`
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.0.iter().rev().fold(Poly::default(), |acc, &c| acc.mul(inner).add(&Poly::constant(c)))
    }

    /// Collapses to `a·n^k + b`: `k` is the degree, `a` the sum of the
    /// non-constant coefficients, `b` the constant term. The collapsed form
    /// bounds the polynomial from above at every `n ≥ 0`.
    pub fn summary(&self) -> (u64, u32, u64) {
        let b = self.0.first().copied().unwrap_or(0);
        let a = self.0.iter().skip(1).fold(0u64, |s, &c| s.saturating_add(c));
        (a, if a == 0 { 0 } else { self.degree() }, b)
    }

    pub fn to_sexpr(&self) -> Sexpr {
        Sexpr::tagged("p", self.0.iter().map(|c| Sexpr::atom(c.to_string())))
    }

    pub fn from_sexpr(e: &Sexpr) -> Result<Poly, SexprError> {
        match e.as_tagged()? {
            ("p", cs) => {
                let coeffs = cs.iter().map(Sexpr::as_u64).collect::<Result<Vec<_>, _>>()?;
                if coeffs.last() == Some(&0) {
                    return Err(crate::sexpr::shape("trimmed polynomial", e));
                }
                Ok(Poly(coeffs))
            }
            _ => Err(crate::sexpr::shape("polynomial", e)),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}n"),
                _ => format!("{c}n^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
