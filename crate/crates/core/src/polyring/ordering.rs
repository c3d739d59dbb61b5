use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{PolyError, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    DegRevLex,
    DegLex,
}

/// A degree-compatible term ordering with an explicit variable precedence.
///
/// `precedence[0]` is the index of the greatest indeterminate. The default
/// precedence is declaration order, so in two variables `(x, y)` we get
/// `y < x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrdering {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl TermOrdering {
    pub fn degrevlex(nvars: usize) -> Self {
        TermOrdering {
            kind: OrderKind::DegRevLex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn deglex(nvars: usize) -> Self {
        TermOrdering {
            kind: OrderKind::DegLex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self, PolyError> {
        let mut seen = vec![false; precedence.len()];
        for &k in &precedence {
            if k >= seen.len() || seen[k] {
                return Err(PolyError::InvalidPrecedence(precedence));
            }
            seen[k] = true;
        }
        Ok(TermOrdering { kind, precedence })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn compare(&self, s: &Term, t: &Term) -> Ordering {
        debug_assert_eq!(s.nvars(), self.nvars());
        debug_assert_eq!(t.nvars(), self.nvars());
        match s.degree().cmp(&t.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        let (se, te) = (s.exponents(), t.exponents());
        match self.kind {
            // first differing exponent, greatest variable first; larger wins
            OrderKind::DegLex => self
                .precedence
                .iter()
                .map(|&k| se[k].cmp(&te[k]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
            // first differing exponent, smallest variable first; smaller wins
            OrderKind::DegRevLex => self
                .precedence
                .iter()
                .rev()
                .map(|&k| te[k].cmp(&se[k]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
        }
    }

    /// Sorts into increasing order.
    pub fn sort(&self, terms: &mut [Term]) {
        terms.sort_by(|a, b| self.compare(a, b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec())
    }

    #[test]
    fn degrevlex_two_variables() {
        let ord = TermOrdering::degrevlex(2);
        assert_eq!(ord.compare(&t(&[0, 1]), &t(&[1, 0])), Ordering::Less);
        assert_eq!(ord.compare(&t(&[1, 0]), &t(&[1, 1])), Ordering::Less);
        assert_eq!(ord.compare(&t(&[1, 1]), &t(&[1, 1])), Ordering::Equal);
        let mut deg2 = vec![t(&[2, 0]), t(&[0, 2]), t(&[1, 1])];
        ord.sort(&mut deg2);
        assert_eq!(deg2, vec![t(&[0, 2]), t(&[1, 1]), t(&[2, 0])]);
    }

    #[test]
    fn degrevlex_differs_from_deglex_in_three_variables() {
        let xz = t(&[1, 0, 1]);
        let y2 = t(&[0, 2, 0]);
        assert_eq!(TermOrdering::deglex(3).compare(&xz, &y2), Ordering::Greater);
        assert_eq!(TermOrdering::degrevlex(3).compare(&xz, &y2), Ordering::Less);
    }

    #[test]
    fn precedence_reverses_variables() {
        let ord = TermOrdering::with_precedence(OrderKind::DegRevLex, vec![1, 0]).unwrap();
        assert_eq!(ord.compare(&t(&[1, 0]), &t(&[0, 1])), Ordering::Less);
        assert!(TermOrdering::with_precedence(OrderKind::DegLex, vec![0, 0]).is_err());
        assert!(TermOrdering::with_precedence(OrderKind::DegLex, vec![0, 2]).is_err());
    }

    #[test]
    fn one_is_minimal() {
        let ord = TermOrdering::degrevlex(3);
        for e in [[1, 0, 0], [0, 0, 1], [0, 3, 0]] {
            assert_eq!(ord.compare(&Term::one(3), &t(&e)), Ordering::Less);
        }
    }
}
