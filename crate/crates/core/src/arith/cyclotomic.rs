//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element is stored as its coordinate vector in the power basis
//! `1, zeta, ..., zeta^(phi(n)-1)`, i.e. reduced modulo the cyclotomic
//! polynomial `Phi_n`. That basis is a `Q`-basis, so two reduced elements of
//! the same order are equal iff their coordinates agree. Elements of
//! different orders are compared by lifting both into `Q(zeta_lcm)`.
//!
//! Rational elements are always normalized to order 1, which keeps the
//! common all-rational case (kernel, ordered Hamming and binary schemes)
//! cheap.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::race::OnceBox;

use super::Rational;

const PHI_CACHE_LEN: usize = 256;

static PHI_CACHE: [OnceBox<Vec<i64>>; PHI_CACHE_LEN] = [const { OnceBox::new() }; PHI_CACHE_LEN];

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients of `Phi_n`, lowest degree first.
fn compute_cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = div_monic(&num, &den);
    }
    num
}

/// Exact division of `num` by the monic polynomial `den`; the remainder is
/// assumed to be zero.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (t, &dc) in den.iter().enumerate() {
                rem[k + t] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Coefficients of the `n`-th cyclotomic polynomial (cached for small `n`).
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if (n as usize) < PHI_CACHE_LEN {
        PHI_CACHE[n as usize]
            .get_or_init(|| alloc::boxed::Box::new(compute_cyclotomic_poly(n)))
            .clone()
    } else {
        compute_cyclotomic_poly(n)
    }
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    cyclotomic_poly(n).len() as u32 - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An element of `Q(zeta_order)` in reduced power-basis coordinates.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `zeta_order^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let mut counts = vec![0i64; order as usize];
        counts[k.rem_euclid(order as i64) as usize] = 1;
        Self::from_exponent_counts(order, &counts)
    }

    /// `sum_k counts[k] * zeta_order^k`.
    pub fn from_exponent_counts(order: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), order as usize);
        let poly: Vec<Rational> = counts
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        Self::reduce(order, poly)
    }

    /// `sum_k poly[k] * zeta_order^k` for an arbitrary-length rational
    /// polynomial.
    pub fn from_poly(order: u32, poly: Vec<Rational>) -> Self {
        Self::reduce(order, poly)
    }

    /// Build from already-reduced coordinates (length `phi(order)`).
    pub fn from_coordinates(order: u32, coords: Vec<Rational>) -> Option<Self> {
        if order == 0 || coords.len() != totient(order) as usize {
            return None;
        }
        Some(Self::reduce(order, coords))
    }

    fn reduce(order: u32, poly: Vec<Rational>) -> Self {
        let order = order.max(1);
        let mut out = Cyclotomic {
            order,
            coeffs: Self::reduce_coords(order, poly),
        };
        out.normalize_rational();
        out
    }

    /// Coordinates of `poly(zeta_order)` in the power basis of length
    /// `phi(order)`.
    fn reduce_coords(order: u32, mut poly: Vec<Rational>) -> Vec<Rational> {
        // Work modulo x^order - 1 first, then modulo Phi_order.
        if poly.len() > order as usize {
            let tail: Vec<Rational> = poly.split_off(order as usize);
            for (k, c) in tail.into_iter().enumerate() {
                poly[k % order as usize] += c;
            }
        }
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        while poly.len() > deg {
            let c = poly.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (t, &pc) in phi.iter().take(deg).enumerate() {
                if pc != 0 {
                    poly[shift + t] -= &c * Rational::from_integer(BigInt::from(pc));
                }
            }
        }
        poly.resize(deg, Rational::zero());
        poly
    }

    fn normalize_rational(&mut self) {
        if self.order == 1 {
            return;
        }
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            let c0 = self.coeffs.first().cloned().unwrap_or_else(Rational::zero);
            self.order = 1;
            self.coeffs = vec![c0];
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Reduced power-basis coordinates, length `phi(order)`.
    pub fn coordinates(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.order == 1 {
            self.coeffs.first()
        } else {
            None
        }
    }

    /// Re-express in `Q(zeta_target)`; `self.order` must divide `target`.
    pub fn lift(&self, target: u32) -> Self {
        assert!(target.is_multiple_of(self.order), "lift to a non-multiple order");
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Cyclotomic {
            order: target,
            coeffs: Self::reduce_coords(target, poly),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self, u32) {
        if a.order == b.order {
            return (a.clone(), b.clone(), a.order);
        }
        let n = lcm(a.order, b.order);
        (a.lift(n), b.lift(n), n)
    }

    /// Complex conjugate (`zeta -> zeta^-1`).
    pub fn conj(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut poly = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(n - k) % n] += c;
        }
        Self::reduce(self.order, poly)
    }

    /// `(z + conj z) / 2`.
    pub fn real_part(&self) -> Self {
        let two = Rational::from_integer(BigInt::from(2));
        let s = self + &self.conj();
        s.scale(&(Rational::one() / two))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        let mut out = Cyclotomic {
            order: self.order,
            coeffs,
        };
        out.normalize_rational();
        out
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let cf = rational_to_f64(c);
            if cf == 0.0 {
                continue;
            }
            let theta = 2.0 * core::f64::consts::PI * (k as f64) / n;
            acc += Complex64::new(cf * libm::cos(theta), cf * libm::sin(theta));
        }
        acc
    }

    /// Total order used for canonical sorting: by the floating
    /// approximation (real part, then imaginary part), exact coordinates as
    /// a tie-break.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let a = self.to_complex();
        let b = other.to_complex();
        let by_float = a
            .re
            .partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal));
        if by_float != Ordering::Equal && ((a.re - b.re).abs() > 1e-12 || (a.im - b.im).abs() > 1e-12)
        {
            return by_float;
        }
        let (x, y, _) = Self::common(self, other);
        for (p, q) in x.coeffs.iter().zip(y.coeffs.iter()) {
            match p.cmp(q) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Very large numerator/denominator: scale down by bit length.
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift_n = (nb - 60).max(0) as usize;
            let shift_d = (db - 60).max(0) as usize;
            let n = (r.numer().abs() >> shift_n).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
            let sign = if r.is_negative() { -1.0 } else { 1.0 };
            sign * n / d * libm::pow(2.0, shift_n as f64 - shift_d as f64)
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let (a, b, n) = Cyclotomic::common(self, rhs);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        let mut out = Cyclotomic { order: n, coeffs };
        out.normalize_rational();
        out
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b, n) = Cyclotomic::common(self, rhs);
        let (an, ad) = integer_coords(&a.coeffs);
        let (bn, bd) = integer_coords(&b.coeffs);
        let mut poly = vec![BigInt::zero(); an.len() + bn.len()];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        let den = ad * bd;
        let coeffs = reduce_integer(n, poly)
            .into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect();
        let mut out = Cyclotomic { order: n, coeffs };
        out.normalize_rational();
        out
    }
}

/// Integer numerators over the least common denominator.
fn integer_coords(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
    let nums = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Reduce an integer polynomial in `zeta_order` to power-basis coordinates.
/// `Phi_order` is monic, so the reduction stays integral.
fn reduce_integer(order: u32, mut poly: Vec<BigInt>) -> Vec<BigInt> {
    if poly.len() > order as usize {
        let tail: Vec<BigInt> = poly.split_off(order as usize);
        for (k, c) in tail.into_iter().enumerate() {
            poly[k % order as usize] += c;
        }
    }
    let phi = cyclotomic_poly(order);
    let deg = phi.len() - 1;
    while poly.len() > deg {
        let c = poly.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = poly.len() - deg;
        for (t, &pc) in phi.iter().take(deg).enumerate() {
            if pc != 0 {
                poly[shift + t] -= &c * pc;
            }
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", super::format_rational(&self.coeffs[0]));
        }
        write!(f, "zeta_{}[", self.order)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", super::format_rational(c))?;
        }
        write!(f, "]")
    }
}
