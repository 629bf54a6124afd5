use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite abelian group `Z_{o_1} x ... x Z_{o_r}`.
///
/// Elements are indexed in mixed radix with the first factor most
/// significant, so for `Z_v^n` the index of `(x_1, ..., x_n)` is the base-`v`
/// number `x_1 x_2 ... x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u32>,
    size: usize,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidInput("cyclic factor of order 0".into()));
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &o| acc.checked_mul(o as usize))
            .ok_or_else(|| Error::InvalidInput("group order overflows".into()))?;
        Ok(AbelianGroup { orders, size })
    }

    /// `Z_v^n`.
    pub fn elementary(v: u32, n: usize) -> Result<Self> {
        Self::new(alloc::vec![v; n])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1u32, |acc, &o| acc.lcm(&o))
    }

    pub fn coords(&self, mut index: usize) -> Vec<u32> {
        let mut out = alloc::vec![0u32; self.orders.len()];
        for (slot, &o) in out.iter_mut().zip(self.orders.iter()).rev() {
            *slot = (index % o as usize) as u32;
            index /= o as usize;
        }
        out
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(self.orders.iter())
            .fold(0usize, |acc, (&c, &o)| acc * o as usize + (c % o) as usize)
    }

    /// Index of `a - b`.
    pub fn sub(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0usize;
        let mut place = 1usize;
        for &o in self.orders.iter().rev() {
            let o = o as usize;
            let (da, db) = (a % o, b % o);
            out += ((da + o - db) % o) * place;
            place *= o;
            a /= o;
            b /= o;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.sub(a, self.neg(b))
    }

    fn compact_labels(&self) -> bool {
        self.orders.iter().all(|&o| o <= 10)
    }

    pub fn label(&self, index: usize) -> String {
        let coords = self.coords(index);
        if self.compact_labels() {
            coords
                .iter()
                .map(|&c| char::from_digit(c, 10).unwrap())
                .collect()
        } else {
            let parts: Vec<String> = coords.iter().map(|c| alloc::format!("{c}")).collect();
            parts.join(".")
        }
    }

    pub fn parse_label(&self, label: &str) -> Option<usize> {
        let coords: Vec<u32> = if self.compact_labels() {
            label
                .chars()
                .map(|c| c.to_digit(10))
                .collect::<Option<Vec<u32>>>()?
        } else {
            label
                .split('.')
                .map(|p| p.parse().ok())
                .collect::<Option<Vec<u32>>>()?
        };
        if coords.len() != self.orders.len()
            || coords.iter().zip(self.orders.iter()).any(|(&c, &o)| c >= o)
        {
            return None;
        }
        Some(self.index(&coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_arithmetic() {
        let g = AbelianGroup::new(alloc::vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.coords(5), alloc::vec![1, 2]);
        assert_eq!(g.index(&[1, 2]), 5);
        // (1,2) - (0,2) = (1,0)
        assert_eq!(g.sub(5, 2), 3);
        // -(1,1) = (1,2)
        assert_eq!(g.neg(4), 5);
        assert_eq!(g.add(4, 5), g.index(&[0, 0]));
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.label(5), "12");
        assert_eq!(g.parse_label("12"), Some(5));
        assert_eq!(g.parse_label("13"), None);
        let big = AbelianGroup::new(alloc::vec![12]).unwrap();
        assert_eq!(big.label(11), "11");
        assert_eq!(big.parse_label("11"), Some(11));
    }
}
