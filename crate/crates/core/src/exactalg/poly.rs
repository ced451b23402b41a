use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Exponent tuple of a monomial.
///
/// Ordered by total degree first; within one degree the tuple with the larger
/// leading exponents comes first (`t1^2 < t1*t2 < t2^2`). Iterating a
/// polynomial therefore lists terms by ascending degree in lexicographic
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(vars: usize) -> Self {
        Self(vec![0; vars])
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All monomials in `vars` variables of total degree exactly `degree`,
    /// in the canonical order.
    pub fn all_of_degree(vars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(vars: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == vars {
                prefix.push(remaining);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=remaining).rev() {
                prefix.push(e);
                rec(vars, remaining - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if vars == 0 {
            if degree == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(vars, degree, &mut Vec::with_capacity(vars), &mut out);
        out
    }

    /// All monomials of total degree at most `degree`.
    pub fn all_up_to_degree(vars: usize, degree: u32) -> Vec<Monomial> {
        (0..=degree)
            .flat_map(|d| Monomial::all_of_degree(vars, d))
            .collect()
    }

    /// Standard graded-lex comparison (higher degree wins, then lex).
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars), c);
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::var(vars, i), Rational::one());
        p
    }

    /// `constant + Σ coeffs[i] t_i`.
    pub fn affine_linear(constant: Rational, coeffs: &[Rational]) -> Self {
        let vars = coeffs.len();
        let mut p = Self::constant(vars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(vars, i), c.clone());
        }
        p
    }

    /// Homogeneous linear form `Σ coeffs[i] t_i`.
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let vars = coeffs.len();
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(vars, i), c.clone());
        }
        p
    }

    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            if m.vars() != vars {
                return Err(Error::DimensionMismatch {
                    expected: vars,
                    found: m.vars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Polynomial from a coefficient vector over a monomial basis.
    pub fn from_coefficients(vars: usize, basis: &[Monomial], coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in basis.iter().zip(coeffs) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Coefficient vector over `basis`; terms outside the basis are ignored.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.vars))
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Term that is largest in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, t: &[Rational]) -> Result<Rational> {
        if t.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                found: t.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in t.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Inserts a new variable `t0` in front and pads every term to total
    /// degree `nominal_degree`.
    pub fn homogenize(&self, nominal_degree: u32) -> Result<Self> {
        if let Some(actual) = self.total_degree() {
            if actual > nominal_degree {
                return Err(Error::DegreeTooLow {
                    nominal: nominal_degree,
                    actual,
                });
            }
        }
        let mut out = Self::zero(self.vars + 1);
        for (m, c) in &self.terms {
            let mut e = Vec::with_capacity(self.vars + 1);
            e.push(nominal_degree - m.degree());
            e.extend_from_slice(m.exponents());
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sets the first variable to one and drops it.
    pub fn dehomogenize(&self) -> Self {
        let mut out = Self::zero(self.vars.saturating_sub(1));
        for (m, c) in &self.terms {
            out.add_term(Monomial(m.exponents()[1..].to_vec()), c.clone());
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Substitutes `t_i -> images[i]`; all images share one variable count.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<Self> {
        if images.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, MultiPoly::vars);
        if let Some(bad) = images.iter().find(|p| p.vars != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                found: bad.vars,
            });
        }
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(p.vars), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Homogeneous translation `t_i -> t_i - shift_i t_0` of a polynomial in
    /// `t_0..t_n`; maps a polynomial written in translated coordinates back.
    pub fn translate_homogeneous(&self, shift: &[Rational]) -> Result<Self> {
        if shift.len() + 1 != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                found: shift.len() + 1,
            });
        }
        let n = self.vars;
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let mut p = MultiPoly::var(n, i);
                if i > 0 {
                    p.add_term(Monomial::var(n, 0), -shift[i - 1].clone());
                }
                p
            })
            .collect();
        self.compose(&images)
    }

    /// Rescaled copy with coprime integer coefficients and a positive
    /// leading (graded-lex largest) coefficient.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, x| acc.gcd(&(x * &lcm).to_integer()));
        let mut factor = Rational::new(lcm, gcd);
        if self.leading_term().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// `self = λ other` for some nonzero rational λ.
    pub fn is_proportional(&self, other: &MultiPoly) -> bool {
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.is_zero() {
            return other.is_zero();
        }
        let (m0, a0) = self.terms.iter().next().unwrap();
        let Some(b0) = other.terms.get(m0) else {
            return false;
        };
        self.terms.iter().all(|(m, a)| match other.terms.get(m) {
            Some(b) => a * b0 == b * a0,
            None => false,
        })
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product keeping only terms of total degree at most `max_degree`.
    pub fn mul_truncated(&self, other: &MultiPoly, max_degree: u32) -> Self {
        let mut out = Self::zero(self.vars);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > max_degree {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() <= max_degree {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        out
    }

    pub fn to_record(&self) -> PolyRecord {
        PolyRecord {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRecord {
                    exp: m.exponents().to_vec(),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &PolyRecord) -> Result<Self> {
        let mut p = Self::zero(record.vars);
        for term in &record.terms {
            if term.exp.len() != record.vars {
                return Err(Error::DimensionMismatch {
                    expected: record.vars,
                    found: term.exp.len(),
                });
            }
            p.add_term(Monomial(term.exp.clone()), parse_rational(&term.coef)?);
        }
        Ok(p)
    }

    /// Human readable rendering with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{}", names[v], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", format_rational(&abs), mono.join("*")));
            }
        }
        out
    }

    /// Compact rendering with juxtaposed factors, e.g. `1-15t_1+2t_1^2t_2`.
    /// Terms are listed in canonical order.
    pub fn display_compact(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let abs = c.abs();
            let mono: String = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { names[v].clone() } else { format!("{}^{}", names[v], e) })
                .collect();
            if mono.is_empty() || !abs.is_one() {
                out.push_str(&format_rational(&abs));
            }
            out.push_str(&mono);
        }
        out
    }

    pub fn variable_names(prefix: &str, vars: usize, first: usize) -> Vec<String> {
        (0..vars).map(|i| format!("{prefix}{}", i + first)).collect()
    }
}

impl fmt::Display for MultiPoly {
    /// Affine names `t1..tn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&MultiPoly::variable_names("t", self.vars, 1)))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

/// Serialized form of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub vars: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use proptest::prelude::*;

    fn t(vars: usize, i: usize) -> MultiPoly {
        MultiPoly::var(vars, i)
    }

    #[test]
    fn evaluation() {
        let p = &MultiPoly::one(2) - &(&t(2, 0) + &t(2, 1));
        assert_eq!(p.eval(&[int(1), int(0)]).unwrap(), int(0));
        let q = &t(2, 0) * &t(2, 1);
        assert_eq!(q.eval(&[rat(2, 3), rat(3, 4)]).unwrap(), rat(1, 2));
        assert!(q.eval(&[int(1)]).is_err());
    }

    #[test]
    fn homogenize_examples() {
        let p = MultiPoly::affine_linear(int(1), &[rat(-1, 2), rat(-1, 2)]);
        let h = p.homogenize(1).unwrap();
        let expected = MultiPoly::linear_form(&[int(1), rat(-1, 2), rat(-1, 2)]);
        assert_eq!(h, expected);
        let c = MultiPoly::constant(2, int(8)).homogenize(1).unwrap();
        assert_eq!(c, MultiPoly::linear_form(&[int(8), int(0), int(0)]));
        let sq = &t(2, 0) * &t(2, 0);
        assert!(matches!(sq.homogenize(1), Err(Error::DegreeTooLow { .. })));
    }

    #[test]
    fn canonical_order_lists_ascending_degree() {
        let p = MultiPoly::from_terms(
            2,
            vec![
                (Monomial::new(vec![0, 2]), int(95)),
                (Monomial::new(vec![1, 1]), int(212)),
                (Monomial::new(vec![2, 0]), int(71)),
                (Monomial::new(vec![0, 0]), int(1)),
                (Monomial::new(vec![0, 1]), int(-22)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "1 - 22*t2 + 71*t1^2 + 212*t1*t2 + 95*t2^2");
        assert_eq!(p.leading_term().unwrap().0, &Monomial::new(vec![2, 0]));
    }

    #[test]
    fn monomials_of_degree() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], Monomial::new(vec![2, 0, 0]));
        let mut sorted = ms.clone();
        sorted.sort();
        assert_eq!(ms, sorted);
    }

    #[test]
    fn translate_then_evaluate() {
        // f(x0, x1) = x1 in coordinates shifted by c = 3: f'(x) = x1 - 3 x0
        let f = t(2, 1);
        let g = f.translate_homogeneous(&[int(3)]).unwrap();
        assert_eq!(g.eval(&[int(1), int(5)]).unwrap(), int(2));
    }

    #[test]
    fn normalization() {
        let p = MultiPoly::affine_linear(rat(1, 2), &[rat(-3, 4)]);
        let n = p.primitive_normalized();
        assert_eq!(n, MultiPoly::affine_linear(int(-2), &[int(3)]));
        assert!(p.is_proportional(&n));
        assert!(!p.is_proportional(&MultiPoly::affine_linear(int(1), &[int(1)])));
    }

    fn arb_poly(vars: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, vars), -5i64..6, 1i64..4),
            0..6,
        )
        .prop_map(move |terms| {
            let mut p = MultiPoly::zero(vars);
            for (e, n, d) in terms {
                p.add_term(Monomial::new(e), rat(n, d));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn record_roundtrip(p in arb_poly(3)) {
            let json = serde_json::to_string(&p.to_record()).unwrap();
            let back: PolyRecord = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(MultiPoly::from_record(&back).unwrap(), p);
        }

        #[test]
        fn homogenize_dehomogenize(p in arb_poly(2), a in -4i64..5, b in 1i64..4, c in -3i64..3) {
            let deg = p.total_degree().unwrap_or(0) + 1;
            let h = p.homogenize(deg).unwrap();
            prop_assert!(h.is_homogeneous());
            let pt = vec![rat(a, b), int(c)];
            let mut hp = vec![int(1)];
            hp.extend(pt.iter().cloned());
            prop_assert_eq!(h.eval(&hp).unwrap(), p.eval(&pt).unwrap());
            prop_assert_eq!(h.dehomogenize(), p);
        }
    }
}
