//! Sparse multivariate polynomials with exact integer coefficients over the
//! edge-weight indeterminates.
//!
//! Variable order is fixed so renderings are stable: first the lower-case
//! b's by label (negative root labels sort before b0), then the upper-case
//! B's, then the placeholder lam, then the ascent weights a(i,j) in
//! lexicographic order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

/// An edge-weight indeterminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// b_j; j may be negative for forest roots.
    B(i32),
    /// B_j, the loop-tracking upper-case weight.
    UpperB(i32),
    /// The placeholder indeterminate occupying the root corner.
    Lambda,
    /// a(i, j): the weight of the ascent i -> j, j > i >= 1.
    A(u16, u16),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::B(j) => write!(f, "b{j}"),
            Var::UpperB(j) => write!(f, "B{j}"),
            Var::Lambda => write!(f, "lam"),
            Var::A(i, j) => write!(f, "a{i}_{j}"),
        }
    }
}

/// A monomial: variables with positive exponents, sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Mono(vec![(v, 1)])
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial with integer coefficients; zero terms are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, i64>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::var(v), 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, i64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn add_term(&mut self, mono: Mono, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let c = o.get().checked_add(coeff).expect("coefficient overflow");
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.checked_neg().expect("coefficient overflow"));
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::zero().sub(self)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero();
        for (m, c0) in self.terms() {
            out.add_term(m.clone(), c0.checked_mul(c).expect("coefficient overflow"));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Sum of a slice of variables.
    pub fn sum_of(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut p = Self::zero();
        for v in vars {
            p.add_term(Mono::var(v), 1);
        }
        p
    }

    /// Sum of all coefficients: the number of monomials counted with
    /// multiplicity when every coefficient is positive.
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Replaces one variable by a polynomial.
    pub fn substitute(&self, var: Var, replacement: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let mut rest = Mono::one();
            let mut power = 0u32;
            for (v, e) in m.vars() {
                if v == var {
                    power = e;
                } else {
                    rest = rest.mul(&Mono::from(vec![(v, e)]));
                }
            }
            let mut term = MultiPoly::zero();
            term.add_term(rest, c);
            if power > 0 {
                term = term.mul(&replacement.pow(power));
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact evaluation at an integer point.
    pub fn eval<F: Fn(Var) -> BigInt>(&self, point: F) -> BigInt {
        let mut acc = BigInt::from(0);
        for (m, c) in self.terms() {
            let mut t = BigInt::from(c);
            for (v, e) in m.vars() {
                t *= point(v).pow(e);
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{a}*{m}")?;
            } else {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl From<Vec<(Var, u32)>> for Mono {
    fn from(mut v: Vec<(Var, u32)>) -> Self {
        v.sort_unstable_by_key(|&(var, _)| var);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            if e == 0 {
                continue;
            }
            if let Some(last) = out.last_mut() {
                if last.0 == var {
                    last.1 += e;
                    continue;
                }
            }
            out.push((var, e));
        }
        Mono(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(j: i32) -> MultiPoly {
        MultiPoly::var(Var::B(j))
    }

    #[test]
    fn variable_order_is_b_then_upper_then_lambda_then_a() {
        assert!(Var::B(-1) < Var::B(0));
        assert!(Var::B(5) < Var::UpperB(0));
        assert!(Var::UpperB(9) < Var::Lambda);
        assert!(Var::Lambda < Var::A(1, 2));
        assert!(Var::A(1, 9) < Var::A(2, 3));
    }

    #[test]
    fn arithmetic_cancels_exactly() {
        let p = b(1).add(&b(2));
        let q = p.mul(&p);
        assert_eq!(q.num_terms(), 3); // b1^2 + 2 b1 b2 + b2^2
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.pow(3).coefficient_sum(), 8);
    }

    #[test]
    fn substitution_splits_a_variable() {
        // b0^2 with b0 -> b(-1) + b(-2)
        let p = b(0).pow(2);
        let s = p.substitute(Var::B(0), &b(-1).add(&b(-2)));
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.coefficient_sum(), 4);
    }

    #[test]
    fn rendering_is_stable() {
        let p = b(0).mul(&b(0)).add(&b(1).scale(-2));
        assert_eq!(p.to_string(), "b0^2 - 2*b1");
    }

    #[test]
    fn evaluation_is_exact() {
        let p = b(0).mul(&b(1)).add(&MultiPoly::constant(7));
        let v = p.eval(|v| match v {
            Var::B(0) => BigInt::from(1u64 << 40),
            Var::B(1) => BigInt::from(3),
            _ => BigInt::from(0),
        });
        assert_eq!(v, BigInt::from(3 * (1u128 << 40) + 7));
    }
}
