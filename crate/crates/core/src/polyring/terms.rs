use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{PolyError, Term, TermOrdering};

/// Ordered list of distinct terms. Order is insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Term>", into = "Vec<Term>")]
pub struct TermList {
    terms: Vec<Term>,
    #[serde(skip)]
    index: HashSet<Term>,
}

impl TermList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: Vec<Term>) -> Result<Self, PolyError> {
        let mut list = TermList::new();
        for t in terms {
            if let Some(first) = list.terms.first() {
                if first.nvars() != t.nvars() {
                    return Err(PolyError::DimensionMismatch {
                        expected: first.nvars(),
                        found: t.nvars(),
                    });
                }
            }
            if !list.push(t.clone()) {
                return Err(PolyError::DuplicateTerm(t));
            }
        }
        Ok(list)
    }

    /// Appends `t`; returns false (and leaves the list unchanged) if present.
    pub fn push(&mut self, t: Term) -> bool {
        if !self.index.insert(t.clone()) {
            return false;
        }
        self.terms.push(t);
        true
    }

    /// Inserts `t` at the front; returns false if present.
    pub fn push_front(&mut self, t: Term) -> bool {
        if !self.index.insert(t.clone()) {
            return false;
        }
        self.terms.insert(0, t);
        true
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.index.contains(t)
    }

    pub fn position(&self, t: &Term) -> Option<usize> {
        self.terms.iter().position(|s| s == t)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Term> {
        self.terms.iter()
    }

    pub fn as_slice(&self) -> &[Term] {
        &self.terms
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(Term::nvars)
    }
}

impl TryFrom<Vec<Term>> for TermList {
    type Error = PolyError;
    fn try_from(v: Vec<Term>) -> Result<Self, PolyError> {
        TermList::from_terms(v)
    }
}

impl From<TermList> for Vec<Term> {
    fn from(l: TermList) -> Self {
        l.terms
    }
}

impl<'a> IntoIterator for &'a TermList {
    type Item = &'a Term;
    type IntoIter = std::slice::Iter<'a, Term>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// `(x_1 O ∪ ... ∪ x_n O) \ O`, sorted increasingly by `ord`.
pub fn border(inner: &TermList, ord: &TermOrdering) -> TermList {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in inner {
        for k in 0..t.nvars() {
            let b = t.mul_var(k);
            if !inner.contains(&b) && seen.insert(b.clone()) {
                out.push(b);
            }
        }
    }
    ord.sort(&mut out);
    TermList::from_terms(out).expect("border terms are distinct")
}

/// Degree-`d` border terms of `inner` in increasing `ord` order.
pub fn trial_terms(inner: &TermList, d: u32, ord: &TermOrdering) -> TermList {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in inner.iter().filter(|t| t.degree() + 1 == d) {
        for k in 0..t.nvars() {
            let b = t.mul_var(k);
            if !inner.contains(&b) && seen.insert(b.clone()) {
                out.push(b);
            }
        }
    }
    ord.sort(&mut out);
    TermList::from_terms(out).expect("trial terms are distinct")
}

/// True iff every divisor of every member is a member.
pub fn is_order_ideal(terms: &TermList) -> bool {
    // closure under x_k-division of each member implies closure under all divisors
    terms
        .iter()
        .all(|t| t.predecessors().all(|p| terms.contains(&p)))
}

/// True iff `1` is present and every other member is `x_k * t` for a member `t`.
pub fn is_connected_to_1(terms: &TermList) -> bool {
    let Some(n) = terms.nvars() else {
        return false;
    };
    if !terms.contains(&Term::one(n)) {
        return false;
    }
    terms
        .iter()
        .filter(|t| !t.is_one())
        .all(|t| t.predecessors().any(|p| terms.contains(&p)))
}
