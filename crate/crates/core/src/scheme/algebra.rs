use alloc::vec;
use alloc::vec::Vec;

use super::{Scheme, SchemeId};
use crate::arith::{Rational, Scalar};
use crate::error::{Error, Result};

/// An element `sum_i c_i A_i` of the Bose–Mesner algebra of one scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    scheme: SchemeId,
    coeffs: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn new(scheme: &Scheme, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != scheme.rank() {
            return Err(Error::InvalidInput(alloc::format!(
                "{} coefficients for {} relations",
                coeffs.len(),
                scheme.rank()
            )));
        }
        Ok(AlgebraElement {
            scheme: scheme.id(),
            coeffs,
        })
    }

    pub(crate) fn from_parts(scheme: SchemeId, coeffs: Vec<Scalar>) -> Self {
        AlgebraElement { scheme, coeffs }
    }

    pub fn zero(scheme: &Scheme) -> Self {
        Self::from_parts(scheme.id(), vec![Scalar::zero(); scheme.rank()])
    }

    /// The adjacency matrix `A_i`.
    pub fn basis(scheme: &Scheme, i: usize) -> Self {
        let mut c = vec![Scalar::zero(); scheme.rank()];
        c[i] = Scalar::one();
        Self::from_parts(scheme.id(), c)
    }

    /// The all-ones matrix `J_X`, unit of the Hadamard product.
    pub fn all_ones(scheme: &Scheme) -> Self {
        Self::from_parts(scheme.id(), vec![Scalar::one(); scheme.rank()])
    }

    /// `E_X = |X| A_{i0}`, unit of the normalized convolution.
    pub fn convolution_unit(scheme: &Scheme) -> Self {
        let mut c = vec![Scalar::zero(); scheme.rank()];
        c[scheme.identity()] = Scalar::from_integer(scheme.len() as i64);
        Self::from_parts(scheme.id(), c)
    }

    pub fn scheme_id(&self) -> SchemeId {
        self.scheme
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self::from_parts(
            self.scheme,
            self.coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self::from_parts(
            self.scheme,
            self.coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_parts(self.scheme, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// All coefficients zero (exactly, or within `tol` on the float path).
    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_within(tol))
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.scheme != other.scheme || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::SchemeMismatch);
        }
        Ok(())
    }

    fn check(&self, scheme: &Scheme) -> Result<()> {
        if self.scheme != scheme.id() {
            return Err(Error::SchemeMismatch);
        }
        Ok(())
    }

    /// Dense `|X| x |X|` matrix, `M(x,y) = c_{R(x,y)}`.
    pub fn to_matrix(&self, scheme: &Scheme) -> Result<Vec<Vec<Scalar>>> {
        self.check(scheme)?;
        let n = scheme.len();
        Ok((0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.coeffs[scheme.relation(x, y)].clone())
                    .collect()
            })
            .collect())
    }
}

impl Scheme {
    /// Entrywise product; `A_i o A_j = delta_ij A_i`, so coefficients multiply.
    pub fn hadamard(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        a.check(self)?;
        b.check(self)?;
        Ok(AlgebraElement::from_parts(
            self.id(),
            a.coeffs
                .iter()
                .zip(b.coeffs.iter())
                .map(|(x, y)| x * y)
                .collect(),
        ))
    }

    /// Normalized convolution `(1/|X|) A B`, via
    /// `A_i A_j = sum_k p_ij^k A_k`.
    pub fn convolve(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        a.check(self)?;
        b.check(self)?;
        let r = self.rank();
        let mut out = vec![Scalar::zero(); r];
        for i in 0..r {
            if a.coeffs[i].is_zero_within(0.0) {
                continue;
            }
            for j in 0..r {
                if b.coeffs[j].is_zero_within(0.0) {
                    continue;
                }
                let ab = &a.coeffs[i] * &b.coeffs[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    let p = self.intersection_number(i, j, k);
                    if p != 0 {
                        *slot = &*slot + &ab.scale(&crate::arith::int(p as i64));
                    }
                }
            }
        }
        let inv = Rational::new(1.into(), (self.len() as i64).into());
        Ok(AlgebraElement::from_parts(
            self.id(),
            out.iter().map(|c| c.scale(&inv)).collect(),
        ))
    }

    /// `(A . h)(x) = (1/|X|) sum_y A(x,y) h(y)`.
    pub fn act(&self, a: &AlgebraElement, h: &[Scalar]) -> Result<Vec<Scalar>> {
        a.check(self)?;
        let n = self.len();
        if h.len() != n {
            return Err(Error::InvalidInput(alloc::format!(
                "function has {} values for {} points",
                h.len(),
                n
            )));
        }
        let inv = Rational::new(1.into(), (n as i64).into());
        let r = self.rank();
        Ok((0..n)
            .map(|x| {
                // Group h by relation first so each coefficient multiplies once.
                let mut by_rel = vec![Scalar::zero(); r];
                for (y, hy) in h.iter().enumerate() {
                    let i = self.relation(x, y);
                    by_rel[i] = &by_rel[i] + hy;
                }
                by_rel
                    .iter()
                    .zip(a.coeffs.iter())
                    .map(|(s, c)| s * c)
                    .sum::<Scalar>()
                    .scale(&inv)
            })
            .collect())
    }
}
