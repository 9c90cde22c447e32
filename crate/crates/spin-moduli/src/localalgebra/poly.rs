//! Sparse multivariate polynomials over the rationals, with graded-lex
//! term order for deterministic printing and comparison.
//!
//! The variable universe is fixed by the local model: deformation
//! coordinates `t_i`, quotient invariants `w_ij` (`i <= j`), and blow-up
//! chart slopes `a_is` (`i != s`).

use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{rat, Rational};

/// A variable of the local model.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// Deformation coordinate `t_i`, 1-based.
    T(usize),
    /// Invariant `w_ij = t_i t_j`, `1 <= i <= j`.
    W(usize, usize),
    /// Chart slope `a_is`, `i != s`.
    Alpha(usize, usize),
}

impl Var {
    pub fn w(i: usize, j: usize) -> Var {
        if i <= j {
            Var::W(i, j)
        } else {
            Var::W(j, i)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(i) => write!(f, "t{}", i),
            Var::W(i, j) => write!(f, "w{}{}", i, j),
            Var::Alpha(i, s) => write!(f, "a{}{}", i, s),
        }
    }
}

/// Exponent vector, graded-lex ordered.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial(BTreeMap::from([(v, 1)]))
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (&v, &e) in &other.0 {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // lex tie-break: the first (smallest) variable where the exponents
        // differ decides, larger exponent wins
        let mut a = self.0.iter();
        let mut b = other.0.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {}
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&v, &e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over the rationals; no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(rat(1), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Monomial in the given variables with exponent 1 each (repeats allowed).
    pub fn monomial(vars: &[Var]) -> Self {
        let mut m = Monomial::one();
        for &v in vars {
            m = m.mul(&Monomial::var(v));
        }
        Poly::term(rat(1), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Coefficient of the degree-1 term in `v` (for the Jacobian at the
    /// origin this is the partial derivative evaluated at zero).
    pub fn linear_coefficient(&self, v: Var) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.total_degree() == 1 && m.exponent(v) == 1)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| rat(0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(|| rat(0))
    }

    /// Substitute every variable for which `map` returns a polynomial;
    /// variables not in the map are kept.
    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            for (v, e) in m.vars() {
                let base = map(v).unwrap_or_else(|| Poly::var(v));
                for _ in 0..e {
                    acc = acc.mul(&base);
                }
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest term first
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c < &rat(0) { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            if mag == rat(1) && m.total_degree() > 0 {
                write!(f, "{}", m)?;
            } else if m.total_degree() == 0 {
                write!(f, "{}", mag)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}
