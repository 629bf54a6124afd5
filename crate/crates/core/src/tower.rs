//! Finite truncations of profinite association schemes.
//!
//! A [`Tower`] is a projective system `X_1 <- X_2 <- ...` of schemes with
//! surjective structure morphisms, built lazily up to the requested depth.
//! Applying the `J` functor to each step gives the chain of partial
//! surjections `J_{l+1} -> J_l` from which isolation of elements of the
//! limit `J` is decided.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arith::Rational;
use crate::construct::{kernel_scheme, kernel_truncation, ordered_hamming, ordered_hamming_truncation};
use crate::error::{Error, Result};
use crate::morphism::{compose_partial, functor_j, PartialSurjection, SchemeMorphism};
use crate::scheme::Scheme;

/// A user-supplied level and step generator. Levels start at 1.
pub trait TowerFamily: Send + Sync {
    fn name(&self) -> String;

    fn level(&self, lambda: usize) -> Result<Scheme>;

    /// The structure morphism `X_{lambda + 1} -> X_lambda`.
    fn step(&self, upper: Arc<Scheme>, lower: Arc<Scheme>, lambda: usize) -> Result<SchemeMorphism>;
}

pub enum TowerKind {
    /// `k(n, v)` at level `n`.
    Kernel { v: u32 },
    /// `H(s, n, v)` at level `n`.
    OrderedHamming { s: usize, v: u32 },
    Custom(Box<dyn TowerFamily>),
}

impl core::fmt::Debug for TowerKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TowerKind::Kernel { v } => write!(f, "Kernel {{ v: {v} }}"),
            TowerKind::OrderedHamming { s, v } => write!(f, "OrderedHamming {{ s: {s}, v: {v} }}"),
            TowerKind::Custom(c) => write!(f, "Custom({})", c.name()),
        }
    }
}

impl TowerKind {
    fn level(&self, lambda: usize) -> Result<Scheme> {
        match self {
            TowerKind::Kernel { v } => kernel_scheme(lambda, *v),
            TowerKind::OrderedHamming { s, v } => ordered_hamming(*s, lambda, *v),
            TowerKind::Custom(c) => c.level(lambda),
        }
    }

    fn step(&self, upper: Arc<Scheme>, lower: Arc<Scheme>, lambda: usize) -> Result<SchemeMorphism> {
        match self {
            TowerKind::Kernel { v } => kernel_truncation(upper, lower, *v),
            TowerKind::OrderedHamming { v, .. } => ordered_hamming_truncation(upper, lower, *v),
            TowerKind::Custom(c) => c.step(upper, lower, lambda),
        }
    }
}

/// A projective system realized to some depth. Level `l` is stored at
/// index `l - 1`; `steps[l - 1]` is `X_{l+1} -> X_l`.
#[derive(Debug)]
pub struct Tower {
    kind: TowerKind,
    levels: Vec<Arc<Scheme>>,
    steps: Vec<SchemeMorphism>,
    chain: Vec<PartialSurjection>,
}

/// Build a tower through level `depth`, verifying every step.
pub fn build_tower(kind: TowerKind, depth: usize) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::InvalidInput("tower depth must be at least 1".into()));
    }
    let mut t = Tower {
        kind,
        levels: Vec::new(),
        steps: Vec::new(),
        chain: Vec::new(),
    };
    t.realize(depth)?;
    Ok(t)
}

impl Tower {
    pub fn kind(&self) -> &TowerKind {
        &self.kind
    }

    /// Deepest realized level.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Construct and verify levels through `depth`.
    pub fn realize(&mut self, depth: usize) -> Result<()> {
        while self.levels.len() < depth {
            let lambda = self.levels.len() + 1;
            let scheme = Arc::new(self.kind.level(lambda)?);
            if let Some(lower) = self.levels.last() {
                let m = self.kind.step(scheme.clone(), lower.clone(), lambda - 1)?;
                if !m.is_surjective() {
                    return Err(Error::NotSurjective);
                }
                if !Arc::ptr_eq(m.source(), &scheme) || !Arc::ptr_eq(m.target(), lower) {
                    return Err(Error::InvalidInput(alloc::format!(
                        "step at level {lambda} does not join the generated levels"
                    )));
                }
                self.steps.push(m);
            }
            self.levels.push(scheme);
        }
        Ok(())
    }

    /// Level `lambda >= 1`, realizing it if needed.
    pub fn level(&mut self, lambda: usize) -> Result<Arc<Scheme>> {
        if lambda == 0 {
            return Err(Error::InvalidInput("levels start at 1".into()));
        }
        self.realize(lambda)?;
        Ok(self.levels[lambda - 1].clone())
    }

    /// A level that is already built.
    pub fn built_level(&self, lambda: usize) -> Option<&Arc<Scheme>> {
        lambda.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    /// The structure morphism `X_{lambda + 1} -> X_lambda`.
    pub fn step(&mut self, lambda: usize) -> Result<&SchemeMorphism> {
        self.level(lambda + 1)?;
        Ok(&self.steps[lambda - 1])
    }

    /// The composed morphism `X_mu -> X_lambda` for `mu >= lambda`.
    pub fn morphism(&mut self, mu: usize, lambda: usize) -> Result<SchemeMorphism> {
        if lambda == 0 || mu < lambda {
            return Err(Error::InvalidInput(alloc::format!("no morphism from level {mu} to level {lambda}")));
        }
        self.realize(mu)?;
        let mut m = SchemeMorphism::identity(self.levels[mu - 1].clone());
        for l in (lambda..mu).rev() {
            m = m.then(&self.steps[l - 1])?;
        }
        Ok(m)
    }

    /// `mu(pr^{-1}(i))` for relation `i` of level `lambda`: `k_i / |X_lambda|`.
    pub fn ball_measure(&mut self, lambda: usize, i: usize) -> Result<Rational> {
        let x = self.level(lambda)?;
        if i >= x.rank() {
            return Err(Error::InvalidInput(alloc::format!("no relation {i} at level {lambda}")));
        }
        Ok(Rational::new((x.valency(i) as i64).into(), (x.len() as i64).into()))
    }

    fn realize_chain(&mut self, depth: usize) -> Result<()> {
        self.realize(depth)?;
        while self.chain.len() + 1 < depth {
            let p = functor_j(&self.steps[self.chain.len()])?;
            self.chain.push(p);
        }
        Ok(())
    }

    /// `J_{mu} -> J_lambda`, composed along the chain.
    pub fn j_map(&mut self, mu: usize, lambda: usize) -> Result<PartialSurjection> {
        if lambda == 0 || mu < lambda {
            return Err(Error::InvalidInput(alloc::format!("no map from J_{mu} to J_{lambda}")));
        }
        self.realize_chain(mu)?;
        let labels = self.levels[mu - 1].spectral_data()?.labels().to_vec();
        let mut p = PartialSurjection::identity(labels);
        for l in (lambda..mu).rev() {
            p = compose_partial(&p, &self.chain[l - 1])?;
        }
        Ok(p)
    }
}

/// `J_{l+1} -> J_l` for `l = 1..depth`: index 0 is `J_2 -> J_1`.
pub fn j_chain(tower: &mut Tower, depth: usize) -> Result<Vec<PartialSurjection>> {
    if depth == 0 {
        return Err(Error::InvalidInput("tower depth must be at least 1".into()));
    }
    tower.realize_chain(depth)?;
    Ok(tower.chain[..depth - 1].to_vec())
}

/// Where an element of the limit `J` becomes isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolationRecord {
    pub j: String,
    pub isolated_at: usize,
    /// Label of the image of `j` in `J_{isolated_at}`.
    pub j_lambda: String,
    /// `m_{j_lambda}`: the measure of `j` and the dimension bound on every
    /// preimage of `j_lambda`.
    pub multiplicity: u64,
    /// Deepest level at which the singleton preimage was checked.
    pub checked_through: usize,
}

/// The least `lambda < max_depth` such that the image `j_lambda` of `j`
/// has a one-element preimage in every `J_mu`, `lambda < mu <= max_depth`.
///
/// `j` is the label of an element at the first level where the label
/// occurs; its images below follow the chain and its continuation above
/// keeps the same label or is the unique preimage. `Ok(None)` means not
/// isolated within the depth.
pub fn isolate(tower: &mut Tower, label: &str, max_depth: usize) -> Result<Option<IsolationRecord>> {
    if max_depth == 0 {
        return Err(Error::InvalidInput("tower depth must be at least 1".into()));
    }
    tower.realize_chain(max_depth)?;
    let index_at = |t: &Tower, l: usize| -> Result<Option<usize>> {
        Ok(t.levels[l - 1].spectral_data()?.index_of(label))
    };
    let mut first = None;
    for l in 1..=max_depth {
        if let Some(j) = index_at(tower, l)? {
            first = Some((l, j));
            break;
        }
    }
    let Some((l1, j1)) = first else {
        return Err(Error::InvalidInput(alloc::format!(
            "`{label}` is not a J label at any level through {max_depth}"
        )));
    };
    // The family of j: images below l1, continuation above.
    let mut family: Vec<Option<usize>> = alloc::vec![None; max_depth + 1];
    family[l1] = Some(j1);
    for l in (1..l1).rev() {
        family[l] = family[l + 1].and_then(|j| tower.chain[l - 1].get(j));
    }
    for l in (l1 + 1)..=max_depth {
        let prev = family[l - 1].expect("continuation is total");
        let pre = tower.chain[l - 2].preimage(prev);
        let same = pre.iter().copied().find(|&j| tower.levels[l - 1].spectral_data().map(|e| e.labels()[j] == label).unwrap_or(false));
        family[l] = match (same, pre.as_slice()) {
            (Some(j), _) => Some(j),
            (None, [j]) => Some(*j),
            _ => {
                return Err(Error::InvalidInput(alloc::format!(
                    "`{label}` has no unique continuation to level {l}"
                )))
            }
        };
    }
    for lambda in 1..max_depth {
        let Some(jl) = family[lambda] else { continue };
        let mut isolated = true;
        for mu in (lambda + 1)..=max_depth {
            if tower.j_map(mu, lambda)?.preimage(jl).len() != 1 {
                isolated = false;
                break;
            }
        }
        if isolated {
            let eig = tower.levels[lambda - 1].spectral_data()?;
            return Ok(Some(IsolationRecord {
                j: label.into(),
                isolated_at: lambda,
                j_lambda: eig.labels()[jl].clone(),
                multiplicity: eig.multiplicity(jl),
                checked_through: max_depth,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_chain_is_identity_on_old_labels() {
        let mut t = build_tower(TowerKind::Kernel { v: 2 }, 4).unwrap();
        let chain = j_chain(&mut t, 4).unwrap();
        assert_eq!(chain.len(), 3);
        for (l, p) in chain.iter().enumerate() {
            let n = l + 1;
            for j in 0..=n + 1 {
                let img = p.get(j).map(|k| p.target()[k].clone());
                let want = (j <= n).then(|| alloc::format!("{j}"));
                assert_eq!(p.source()[j], alloc::format!("{j}"));
                assert_eq!(img, want);
            }
        }
    }

    #[test]
    fn depth_one() {
        let mut t = build_tower(TowerKind::Kernel { v: 3 }, 1).unwrap();
        assert!(j_chain(&mut t, 1).unwrap().is_empty());
        assert_eq!(isolate(&mut t, "0", 1).unwrap(), None);
    }

    #[test]
    fn kernel_isolation() {
        let mut t = build_tower(TowerKind::Kernel { v: 2 }, 5).unwrap();
        let r = isolate(&mut t, "3", 5).unwrap().unwrap();
        assert_eq!((r.isolated_at, r.j_lambda.as_str()), (3, "3"));
        assert_eq!(r.multiplicity, 4);
        assert_eq!(isolate(&mut t, "0", 5).unwrap().unwrap().isolated_at, 1);
        assert_eq!(isolate(&mut t, "5", 5).unwrap(), None);
    }

    #[test]
    fn composed_morphism_and_measure() {
        let mut t = build_tower(TowerKind::Kernel { v: 2 }, 3).unwrap();
        let m = t.morphism(3, 1).unwrap();
        assert_eq!(m.fiber_size(), Some(4));
        assert_eq!(t.ball_measure(2, 0).unwrap(), Rational::new(2.into(), 4.into()));
    }
}
