use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{default_variable_names, Term, TermOrdering};

/// Relative threshold below which coefficients are removed after arithmetic.
pub const DROP_TOLERANCE: f64 = 1e-14;

/// Sparse real polynomial in a fixed number of indeterminates.
///
/// Only nonzero coefficients are stored. Arithmetic operators prune
/// coefficients smaller than [`DROP_TOLERANCE`] times the largest one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "PolynomialRepr", try_from = "PolynomialRepr")]
pub struct Polynomial {
    nvars: usize,
    coeffs: BTreeMap<Term, f64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Self::monomial(Term::one(nvars), c)
    }

    pub fn monomial(term: Term, c: f64) -> Self {
        let mut p = Polynomial::zero(term.nvars());
        if c != 0.0 {
            p.coeffs.insert(term, c);
        }
        p
    }

    /// Builds from `(term, coefficient)` pairs, summing repeated terms and
    /// skipping exact zeros. No relative pruning is applied.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Term, f64)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (t, c) in terms {
            assert_eq!(t.nvars(), nvars, "term dimension mismatch");
            p.add_term(t, c);
        }
        p.coeffs.retain(|_, c| *c != 0.0);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeff(&self, t: &Term) -> f64 {
        self.coeffs.get(t).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, f64)> {
        self.coeffs.iter().map(|(t, c)| (t, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> {
        self.coeffs.keys()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(Term::degree).max()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, a: f64) -> Polynomial {
        let mut p = Polynomial {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|(t, c)| (t.clone(), c * a))
                .collect(),
        };
        p.coeffs.retain(|_, c| *c != 0.0);
        p
    }

    /// `c * t * self`.
    pub fn mul_term(&self, t: &Term, c: f64) -> Polynomial {
        let mut p = Polynomial {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(s, a)| (s.mul(t), a * c)).collect(),
        };
        p.coeffs.retain(|_, c| *c != 0.0);
        p
    }

    pub fn eval_at(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        self.coeffs.iter().map(|(t, c)| c * t.eval(point)).sum()
    }

    /// Exact partial derivative with respect to `x_k`.
    pub fn partial(&self, k: usize) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for (t, c) in &self.coeffs {
            if let Some((e, dt)) = t.derivative(k) {
                p.add_term(dt, c * e as f64);
            }
        }
        p.coeffs.retain(|_, c| *c != 0.0);
        p
    }

    /// Removes coefficients below `DROP_TOLERANCE * max |c|`.
    pub fn prune(&mut self) {
        let cutoff = DROP_TOLERANCE * self.max_abs_coeff();
        self.coeffs.retain(|_, c| c.abs() >= cutoff && *c != 0.0);
    }

    /// Sets the coefficient of `t`, removing it when `c == 0`.
    pub fn set_coeff(&mut self, t: Term, c: f64) {
        assert_eq!(t.nvars(), self.nvars, "term dimension mismatch");
        if c == 0.0 {
            self.coeffs.remove(&t);
        } else {
            self.coeffs.insert(t, c);
        }
    }

    fn add_term(&mut self, t: Term, c: f64) {
        *self.coeffs.entry(t).or_insert(0.0) += c;
    }

    fn combine(&self, other: &Polynomial, sign: f64) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomial dimension mismatch");
        let mut p = self.clone();
        for (t, c) in &other.coeffs {
            p.add_term(t.clone(), sign * c);
        }
        p.prune();
        p
    }

    /// Terms in decreasing `ord` order, coefficients with `sig` significant
    /// digits, e.g. `0.2222*x^2 + 0.4444*x - 1.778`.
    pub fn render(&self, ord: &TermOrdering, names: &[String], sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&Term> = self.coeffs.keys().collect();
        terms.sort_by(|a, b| ord.compare(b, a));
        let mut out = String::new();
        for (i, t) in terms.into_iter().enumerate() {
            let c = self.coeffs[t];
            let mag = format_significant(c.abs(), sig);
            if i == 0 {
                if c < 0.0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0.0 { " - " } else { " + " });
            }
            out.push_str(&mag);
            if !t.is_one() {
                out.push('*');
                out.push_str(&t.render(names));
            }
        }
        out
    }
}

/// Formats `x` with `sig` significant digits, switching to scientific
/// notation for very large or very small magnitudes.
pub fn format_significant(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        return format!("{:.*e}", sig - 1, x);
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = TermOrdering::degrevlex(self.nvars);
        f.write_str(&self.render(&ord, &default_variable_names(self.nvars), 4))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut p = Polynomial::zero(self.nvars);
        for (s, a) in &self.coeffs {
            for (t, b) in &rhs.coeffs {
                p.add_term(s.mul(t), a * b);
            }
        }
        p.prune();
        p
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    nvars: usize,
    terms: Vec<(Term, f64)>,
}

impl From<Polynomial> for PolynomialRepr {
    fn from(p: Polynomial) -> Self {
        PolynomialRepr {
            nvars: p.nvars,
            terms: p.coeffs.into_iter().collect(),
        }
    }
}

impl TryFrom<PolynomialRepr> for Polynomial {
    type Error = String;
    fn try_from(r: PolynomialRepr) -> Result<Self, String> {
        if let Some((t, _)) = r.terms.iter().find(|(t, _)| t.nvars() != r.nvars) {
            return Err(format!("term {t:?} does not have {} exponents", r.nvars));
        }
        Ok(Polynomial::from_terms(r.nvars, r.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::monomial(Term::var(2, 0), 1.0)
    }
    fn y() -> Polynomial {
        Polynomial::monomial(Term::var(2, 1), 1.0)
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Polynomial::zero(2).degree(), None);
        assert_eq!(Polynomial::constant(2, 3.0).degree(), Some(0));
    }

    #[test]
    fn product_of_linear_factors() {
        // (x - 2)(x + 4) = x^2 + 2x - 8
        let a = &x() - &Polynomial::constant(2, 2.0);
        let b = &x() + &Polynomial::constant(2, 4.0);
        let p = &a * &b;
        assert_eq!(p.coeff(&Term::new(vec![2, 0])), 1.0);
        assert_eq!(p.coeff(&Term::var(2, 0)), 2.0);
        assert_eq!(p.coeff(&Term::one(2)), -8.0);
        assert_eq!(p.len(), 3);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &(&x() + &y()) - &x();
        assert_eq!(p, y());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn prune_drops_relative_noise() {
        let p = Polynomial::from_terms(2, [(Term::var(2, 0), 1.0), (Term::var(2, 1), 1e-16)]);
        assert_eq!(p.len(), 2);
        let q = &p + &Polynomial::zero(2);
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn partial_derivatives() {
        let p = Polynomial::from_terms(
            2,
            [(Term::new(vec![2, 1]), 3.0), (Term::new(vec![0, 2]), -1.0)],
        );
        let px = p.partial(0);
        assert_eq!(px.coeff(&Term::new(vec![1, 1])), 6.0);
        assert_eq!(px.len(), 1);
        let py = p.partial(1);
        assert_eq!(py.coeff(&Term::new(vec![2, 0])), 3.0);
        assert_eq!(py.coeff(&Term::new(vec![0, 1])), -2.0);
    }

    #[test]
    fn rendering_uses_decreasing_order_and_four_digits() {
        let g = Polynomial::from_terms(
            2,
            [
                (Term::new(vec![2, 0]), 0.222222),
                (Term::var(2, 0), 0.444444),
                (Term::one(2), -1.777777),
            ],
        );
        assert_eq!(g.to_string(), "0.2222*x^2 + 0.4444*x - 1.778");
        assert_eq!(format_significant(1234567.0, 4), "1.235e6");
        assert_eq!(format_significant(0.00001234, 3), "1.23e-5");
    }

    #[test]
    fn serde_round_trip() {
        let g = &(&x() * &y()) - &Polynomial::constant(2, 0.5);
        let json = serde_json::to_string(&g).unwrap();
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(g, back);
        assert!(serde_json::from_str::<Polynomial>(r#"{"nvars":2,"terms":[[[1],1.0]]}"#).is_err());
    }
}
