//! Kernel schemes `k(n, v)`: words of length `n` over `Z_v`, related by the
//! first position at which they differ.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arith::{int, rational_pow, Scalar};
use crate::error::{Error, Result};
use crate::morphism::{verify_morphism, SchemeMorphism};
use crate::scheme::{AbelianGroup, EigData, Scheme};

use super::{translation_scheme, TranslationSpec};

/// `k(n, v)`. Relations are labeled `1..n` and `inf` (the identity, last);
/// idempotents `0..n`, with the closed-form spectral data preinstalled.
pub fn kernel_scheme(n: usize, v: u32) -> Result<Scheme> {
    if n == 0 {
        return Err(Error::InvalidInput("kernel scheme needs n >= 1".into()));
    }
    if v < 2 {
        return Err(Error::InvalidInput("kernel scheme needs v >= 2".into()));
    }
    let group = AbelianGroup::elementary(v, n)?;
    let mut relations: Vec<String> = (1..=n).map(|i| alloc::format!("{i}")).collect();
    relations.push(String::from("inf"));
    // bot(a): first nonzero digit, 0-based; n for a = 0.
    let sphere: Vec<u32> = (0..group.order())
        .map(|a| {
            let c = group.coords(a);
            c.iter().position(|&d| d != 0).unwrap_or(n) as u32
        })
        .collect();
    let scheme = translation_scheme(TranslationSpec { group, relations, sphere })?;
    let eig = kernel_closed_form(&scheme, n, v)?;
    scheme.seed_spectral(eig);
    Ok(scheme)
}

/// The closed-form eigenmatrices of `k(n, v)`, attached to `scheme`.
///
/// Relation index `i - 1` is `i` and index `n` is `inf`; idempotent index
/// `j` is `j`.
pub fn kernel_closed_form(scheme: &Scheme, n: usize, v: u32) -> Result<EigData> {
    if scheme.rank() != n + 1 || scheme.len() as u64 != (v as u64).pow(n as u32) {
        return Err(Error::InvalidInput("scheme is not k(n, v)".into()));
    }
    let v = v as i64;
    // Relation position as in the formulas: 1..n, and inf as n + 1.
    let pos = |i: usize| i + 1;
    let inf = n + 1;
    let p: Vec<Vec<Scalar>> = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let i = pos(i);
                    let r = if i == inf {
                        rational_pow(v, -(n as i64))
                    } else if j < i {
                        int(v - 1) * rational_pow(v, -(i as i64))
                    } else if j == i {
                        -rational_pow(v, -(i as i64))
                    } else {
                        int(0)
                    };
                    Scalar::from_rational(r)
                })
                .collect()
        })
        .collect();
    let q: Vec<Vec<Scalar>> = (0..=n)
        .map(|j| {
            (0..=n)
                .map(|i| {
                    let i = pos(i);
                    let r = if j == 0 {
                        int(1)
                    } else if j < i {
                        int(v - 1) * rational_pow(v, j as i64 - 1)
                    } else if j == i {
                        -rational_pow(v, j as i64 - 1)
                    } else {
                        int(0)
                    };
                    Scalar::from_rational(r)
                })
                .collect()
        })
        .collect();
    let m: Vec<u64> = (0..=n)
        .map(|j| if j == 0 { 1 } else { (v as u64 - 1) * (v as u64).pow(j as u32 - 1) })
        .collect();
    let labels = (0..=n).map(|j| alloc::format!("{j}")).collect();
    EigData::from_tables(scheme, labels, 0, p, q, m)
}

/// The digit drop `k(n + 1, v) -> k(n, v)`: `f` deletes the last digit,
/// `g` fixes `1..n` and sends `n + 1` and `inf` to `inf`.
pub fn kernel_truncation(upper: Arc<Scheme>, lower: Arc<Scheme>, v: u32) -> Result<SchemeMorphism> {
    let n = lower.rank() - 1;
    if upper.rank() != n + 2 {
        return Err(Error::InvalidInput("levels are not consecutive".into()));
    }
    let f = (0..upper.len()).map(|x| x / v as usize).collect();
    let g = (0..upper.rank()).map(|i| i.min(n)).collect();
    verify_morphism(upper, lower, f, g)
}
