use std::fmt;

use serde::{Deserialize, Serialize};

/// A power product `x_1^e_1 * ... * x_n^e_n`.
///
/// The derived `Ord` is plain lexicographic order on the exponent vector and
/// only exists so terms can key ordered maps. Use [`TermOrdering`] for the
/// algebraic term order.
///
/// [`TermOrdering`]: super::TermOrdering
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Term(Vec<u32>);

impl Term {
    pub fn new(exponents: Vec<u32>) -> Self {
        Term(exponents)
    }

    /// The constant term `1` in `nvars` indeterminates.
    pub fn one(nvars: usize) -> Self {
        Term(vec![0; nvars])
    }

    /// The indeterminate `x_k` (zero-based `k`).
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Term(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn partial_degree(&self, k: usize) -> u32 {
        self.0[k]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Term) -> Term {
        debug_assert_eq!(self.nvars(), other.nvars());
        Term(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, k: usize) -> Term {
        let mut e = self.0.clone();
        e[k] += 1;
        Term(e)
    }

    /// `self / x_k`, if `x_k` divides `self`.
    pub fn div_var(&self, k: usize) -> Option<Term> {
        if self.0[k] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[k] -= 1;
        Some(Term(e))
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Term) -> Option<Term> {
        if self.divides(other) {
            Some(Term(
                other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Term) -> Term {
        Term(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// All terms obtained by lowering one exponent by one.
    pub fn predecessors(&self) -> impl Iterator<Item = Term> + '_ {
        (0..self.nvars()).filter_map(move |k| self.div_var(k))
    }

    /// Value at a point; `point.len()` must equal `nvars()`.
    pub fn eval(&self, point: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(point)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, &p)| p.powi(e as i32))
            .product()
    }

    /// `d/dx_k` of the term as `(multiplier, term)`; `None` when it vanishes.
    pub fn derivative(&self, k: usize) -> Option<(u32, Term)> {
        let e = self.0[k];
        self.div_var(k).map(|t| (e, t))
    }

    /// Renders as `x^2*y` using the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (k, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[k].clone()),
                _ => parts.push(format!("{}^{}", names[k], e)),
            }
        }
        parts.join("*")
    }
}

/// `x, y, z` for up to three variables, `x1, x2, ...` otherwise.
pub fn default_variable_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=nvars).map(|k| format!("x{k}")).collect()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_variable_names(self.nvars())))
    }
}
