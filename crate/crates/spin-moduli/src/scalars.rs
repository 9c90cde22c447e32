//! Exact arithmetic substrate: arbitrary-precision rationals, odd prime
//! fields `F_q`, and the quadratic extension `F_{q^2} = F_q(u)` with
//! `u^2 = n` for the smallest positive non-residue `n`.
//!
//! Every nonzero element of `F_q` has exactly two square roots in
//! `F_{q^2}`, which is what makes the line limits on the exceptional
//! projective space computable over a finite stand-in for the complex
//! numbers.

use crate::{Error, Result};

/// Exact rational numbers, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn is_odd_prime(q: u64) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// An element of the prime field `F_q`, `q` an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    value: u64,
    q: u64,
}

impl std::fmt::Debug for FqElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.q)
    }
}

impl std::fmt::Display for FqElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FqElem {
    pub fn new(value: u64, q: u64) -> Result<Self> {
        if !is_odd_prime(q) {
            return Err(Error::NotOddPrime(q));
        }
        Ok(FqElem { value: value % q, q })
    }

    /// Unchecked constructor for callers that already validated `q`.
    pub(crate) fn raw(value: u64, q: u64) -> Self {
        FqElem { value: value % q, q }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.q, other.q, "mixed moduli {} and {}", self.q, other.q);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        FqElem::raw(self.value + other.value, self.q)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        FqElem::raw(self.value + self.q - other.value, self.q)
    }

    pub fn neg(&self) -> Self {
        FqElem::raw(self.q - self.value, self.q)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        FqElem::raw(
            ((self.value as u128 * other.value as u128) % self.q as u128) as u64,
            self.q,
        )
    }

    pub fn pow(&self, exp: u64) -> Self {
        FqElem::raw(pow_mod(self.value, exp, self.q), self.q)
    }

    pub fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        self.pow(self.q - 2)
    }

    /// Euler criterion: `a^((q-1)/2) = 1` exactly for the nonzero squares.
    pub fn is_square(&self) -> Result<bool> {
        if self.value == 0 {
            return Err(Error::ZeroSquareCheck);
        }
        Ok(self.pow((self.q - 1) / 2).value == 1)
    }
}

/// The smallest positive quadratic non-residue modulo `q`.
pub fn smallest_nonresidue(q: u64) -> Result<u64> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    for n in 2..q {
        if pow_mod(n, (q - 1) / 2, q) == q - 1 {
            return Ok(n);
        }
    }
    unreachable!("odd prime field has a non-residue")
}

/// The quadratic extension `F_{q^2}`, with a fixed generator `u`, `u^2 = n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fq2 {
    q: u64,
    nonres: u64,
}

impl Fq2 {
    pub fn new(q: u64) -> Result<Self> {
        let nonres = smallest_nonresidue(q)?;
        Ok(Fq2 { q, nonres })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonres
    }

    pub fn embed(&self, a: FqElem) -> Fq2Elem {
        assert_eq!(a.q, self.q);
        Fq2Elem { a, b: FqElem::raw(0, self.q), nonres: self.nonres }
    }

    pub fn from_parts(&self, a: u64, b: u64) -> Fq2Elem {
        Fq2Elem {
            a: FqElem::raw(a, self.q),
            b: FqElem::raw(b, self.q),
            nonres: self.nonres,
        }
    }

    pub fn zero(&self) -> Fq2Elem {
        self.from_parts(0, 0)
    }

    pub fn one(&self) -> Fq2Elem {
        self.from_parts(1, 0)
    }

    /// All `q^2` elements, in lexicographic `(a, b)` order.
    pub fn elements(&self) -> impl Iterator<Item = Fq2Elem> + '_ {
        let q = self.q;
        (0..q).flat_map(move |a| (0..q).map(move |b| self.from_parts(a, b)))
    }
}

/// `a + b*u` in `F_{q^2}`, `u^2 = n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq2Elem {
    a: FqElem,
    b: FqElem,
    nonres: u64,
}

impl std::fmt::Debug for Fq2Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for Fq2Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}u", self.b)
        } else {
            write!(f, "{}+{}u", self.a, self.b)
        }
    }
}

impl Fq2Elem {
    pub fn parts(&self) -> (u64, u64) {
        (self.a.value, self.b.value)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the element lies in the base field `F_q`.
    pub fn is_in_base(&self) -> bool {
        self.b.is_zero()
    }

    pub fn base_part(&self) -> FqElem {
        self.a
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.a.q, other.a.q, "mixed moduli");
        assert_eq!(self.nonres, other.nonres, "mixed extensions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        Fq2Elem { a: self.a.add(&other.a), b: self.b.add(&other.b), nonres: self.nonres }
    }

    pub fn neg(&self) -> Self {
        Fq2Elem { a: self.a.neg(), b: self.b.neg(), nonres: self.nonres }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = FqElem::raw(self.nonres, self.a.q);
        // (a + bu)(c + du) = (ac + n bd) + (ad + bc) u
        Fq2Elem {
            a: self.a.mul(&other.a).add(&n.mul(&self.b.mul(&other.b))),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.a)),
            nonres: self.nonres,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        // (a + bu)^-1 = (a - bu) / (a^2 - n b^2)
        let n = FqElem::raw(self.nonres, self.a.q);
        let norm = self.a.mul(&self.a).sub(&n.mul(&self.b.mul(&self.b)));
        let ninv = norm.inv();
        Fq2Elem { a: self.a.mul(&ninv), b: self.b.neg().mul(&ninv), nonres: self.nonres }
    }
}

/// The two square roots of a nonzero `a` in `F_{q^2}`, canonical root
/// (lexicographically smaller `(a, b)` representation) first.
pub fn sqrt_in_ext(a: FqElem) -> Result<(Fq2Elem, Fq2Elem)> {
    if a.is_zero() {
        return Err(Error::DegenerateDirection);
    }
    let ext = Fq2::new(a.q)?;
    let r = if a.is_square()? {
        // q is small here; direct search is its own proof.
        let root = (1..a.q)
            .find(|r| FqElem::raw(*r, a.q).mul(&FqElem::raw(*r, a.q)) == a)
            .expect("residue has a root in F_q");
        ext.from_parts(root, 0)
    } else {
        // a = n * (a/n) with a/n a residue, so sqrt(a) = sqrt(a/n) * u.
        let n = FqElem::raw(ext.nonres, a.q);
        let quotient = a.mul(&n.inv());
        let root = (1..a.q)
            .find(|r| FqElem::raw(*r, a.q).mul(&FqElem::raw(*r, a.q)) == quotient)
            .expect("residue has a root in F_q");
        ext.from_parts(0, root)
    };
    let minus = r.neg();
    if r.parts() <= minus.parts() {
        Ok((r, minus))
    } else {
        Ok((minus, r))
    }
}

/// The canonical square root: the one with lexicographically smaller parts.
pub fn canonical_sqrt(a: FqElem) -> Result<Fq2Elem> {
    sqrt_in_ext(a).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn fq(v: u64, q: u64) -> FqElem {
        FqElem::new(v, q).unwrap()
    }

    #[test]
    fn euler_criterion_examples() {
        assert!(fq(4, 5).is_square().unwrap());
        assert!(!fq(2, 5).is_square().unwrap());
        assert!(fq(1, 13).is_square().unwrap());
        assert!(matches!(fq(0, 5).is_square(), Err(Error::ZeroSquareCheck)));
    }

    #[test]
    fn is_square_by_exhaustion_mod_5() {
        // squares mod 5: 1^2=1, 2^2=4, 3^2=4, 4^2=1
        let squares: Vec<bool> = (1..5).map(|a| fq(a, 5).is_square().unwrap()).collect();
        assert_eq!(squares, vec![true, false, false, true]);
    }

    #[test]
    fn sqrt_of_residue_stays_in_base() {
        let (r, minus) = sqrt_in_ext(fq(4, 5)).unwrap();
        let vals: Vec<u64> = [r, minus].iter().map(|x| x.parts().0).collect();
        assert_eq!(vals, vec![2, 3]);
        assert!(r.is_in_base() && minus.is_in_base());
    }

    #[test]
    fn sqrt_of_nonresidue_is_pure_u() {
        // n = 2 is the smallest non-residue mod 5, so sqrt(2) = +-u.
        let (r, minus) = sqrt_in_ext(fq(2, 5)).unwrap();
        assert_eq!(r.parts(), (0, 1));
        assert_eq!(minus.parts(), (0, 4));
        let two = Fq2::new(5).unwrap().from_parts(2, 0);
        assert_eq!(r.square(), two);
    }

    #[test]
    fn sqrt_mod_13_against_exhaustive_search() {
        // Oracle: scan all 169 elements of F_169 for roots of 10.
        let ext = Fq2::new(13).unwrap();
        let ten = ext.from_parts(10, 0);
        let brute: Vec<Fq2Elem> = ext.elements().filter(|x| x.square() == ten).collect();
        assert_eq!(brute.len(), 2);
        let (r, minus) = sqrt_in_ext(fq(10, 13)).unwrap();
        assert!(brute.contains(&r) && brute.contains(&minus));
        assert_eq!(minus, r.neg());
    }

    #[test]
    fn sqrt_exhaustive_small_fields() {
        for q in [5u64, 13] {
            let ext = Fq2::new(q).unwrap();
            for a in 1..q {
                let a = fq(a, q);
                let (r, minus) = sqrt_in_ext(a).unwrap();
                assert_ne!(r, minus);
                assert_eq!(r.square(), ext.embed(a));
                assert_eq!(minus.square(), ext.embed(a));
                let all: Vec<_> = ext.elements().filter(|x| x.square() == ext.embed(a)).collect();
                assert_eq!(all.len(), 2);
            }
        }
    }

    #[test]
    fn is_square_multiplicative() {
        for q in [5u64, 13] {
            for a in 1..q {
                for b in 1..q {
                    let lhs = fq(a, q).mul(&fq(b, q)).is_square().unwrap();
                    let rhs = fq(a, q).is_square().unwrap() == fq(b, q).is_square().unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn nonresidue_choice() {
        assert_eq!(smallest_nonresidue(5).unwrap(), 2);
        assert_eq!(smallest_nonresidue(13).unwrap(), 2);
        assert_eq!(smallest_nonresidue(7).unwrap(), 3);
        assert!(matches!(smallest_nonresidue(9), Err(Error::NotOddPrime(9))));
        assert!(matches!(smallest_nonresidue(2), Err(Error::NotOddPrime(2))));
    }

    #[test]
    fn fq2_field_axioms_mod_5() {
        let ext = Fq2::new(5).unwrap();
        for x in ext.elements() {
            if !x.is_zero() {
                assert_eq!(x.mul(&x.inv()), ext.one());
            }
            for y in ext.elements() {
                assert_eq!(x.mul(&y), y.mul(&x));
                assert_eq!(x.add(&y).sub(&y), x);
            }
        }
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = Rational::new(1.into(), 3.into());
        let c = Rational::new(7.into(), 11.into());
        assert_eq!((a.clone() + c.clone()) - c, a);
        assert!((rat(2) / rat(4) - Rational::new(1.into(), 2.into())).is_zero());
    }
}
