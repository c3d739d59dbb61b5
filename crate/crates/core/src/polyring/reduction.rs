use std::collections::HashMap;

use super::{PolyError, Polynomial, Term, TermList};

/// Next-door (`b_j = x_k b_i`) or across-the-street (`x_k b_i = x_l b_j`)
/// neighbors. Equal terms count as neighbors.
pub fn are_neighbors(bi: &Term, bj: &Term) -> bool {
    if bi.nvars() != bj.nvars() {
        return false;
    }
    let l = bi.lcm(bj);
    l.degree() - bi.degree() <= 1 && l.degree() - bj.degree() <= 1
}

/// `(lcm / (c_i b_i)) g_i - (lcm / (c_j b_j)) g_j` where `c_i`, `c_j` are the
/// border coefficients. The lcm term cancels exactly.
pub fn s_polynomial(
    gi: &Polynomial,
    gj: &Polynomial,
    bi: &Term,
    bj: &Term,
) -> Result<Polynomial, PolyError> {
    if gi.nvars() != gj.nvars() {
        return Err(PolyError::DimensionMismatch {
            expected: gi.nvars(),
            found: gj.nvars(),
        });
    }
    if !are_neighbors(bi, bj) {
        return Err(PolyError::NotNeighbors(bi.clone(), bj.clone()));
    }
    let ci = gi.coeff(bi);
    let cj = gj.coeff(bj);
    if ci <= 0.0 {
        return Err(PolyError::NonPositiveBorderCoefficient(bi.clone()));
    }
    if cj <= 0.0 {
        return Err(PolyError::NonPositiveBorderCoefficient(bj.clone()));
    }
    let l = bi.lcm(bj);
    let qi = bi.quotient_of(&l).expect("b_i divides lcm");
    let qj = bj.quotient_of(&l).expect("b_j divides lcm");
    let mut s = &gi.mul_term(&qi, 1.0 / ci) - &gj.mul_term(&qj, 1.0 / cj);
    s.set_coeff(l, 0.0);
    Ok(s)
}

/// Reduces `f` to an `O`-supported polynomial by subtracting multiples of the
/// prebasis polynomials `(b, g_b)`.
pub fn normal_remainder<'a, I>(
    f: &Polynomial,
    inner: &TermList,
    prebasis: I,
) -> Result<Polynomial, PolyError>
where
    I: IntoIterator<Item = (&'a Term, &'a Polynomial)>,
{
    let lookup: HashMap<&Term, &Polynomial> = prebasis.into_iter().collect();
    let mut r = f.clone();
    loop {
        let Some(b) = r.support().find(|t| !inner.contains(t)).cloned() else {
            return Ok(r);
        };
        let g = lookup
            .get(&b)
            .ok_or_else(|| PolyError::MissingBorderPolynomial(b.clone()))?;
        let cb = g.coeff(&b);
        if cb <= 0.0 {
            return Err(PolyError::NonPositiveBorderCoefficient(b));
        }
        if let Some(t) = g.support().find(|t| **t != b && !inner.contains(t)) {
            return Err(PolyError::NotSupportedByInner(t.clone()));
        }
        let factor = r.coeff(&b) / cb;
        let mut next = r.clone();
        for (t, c) in g.terms() {
            next.set_coeff(t.clone(), next.coeff(t) - factor * c);
        }
        next.set_coeff(b, 0.0);
        r = next;
    }
}
