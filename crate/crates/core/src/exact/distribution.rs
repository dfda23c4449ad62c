use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::VertexSubset;
use crate::scalar::Scalar;

/// Finite distribution over vertex subsets: distinct atoms in ascending
/// canonical order, each with positive probability.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<T> {
    universe: usize,
    atoms: Vec<(VertexSubset, T)>,
}

impl<T: Scalar> Distribution<T> {
    /// Normalises non-negative weights; repeated atoms are merged and
    /// zero-weight atoms dropped.
    pub fn from_weights(universe: usize, weights: Vec<(VertexSubset, T)>) -> Self {
        let mut merged: BTreeMap<VertexSubset, T> = BTreeMap::new();
        for (s, w) in weights {
            assert_eq!(s.universe_size(), universe, "atom over the wrong universe");
            assert!(w >= T::zero(), "negative weight");
            let slot = merged.entry(s).or_insert_with(T::zero);
            *slot = slot.clone() + w;
        }
        let total = merged.values().fold(T::zero(), |a, w| a + w.clone());
        assert!(total > T::zero(), "distribution needs positive total weight");
        let atoms = merged
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(s, w)| (s, w / total.clone()))
            .collect();
        Self { universe, atoms }
    }

    pub fn point_mass(set: VertexSubset) -> Self {
        Self {
            universe: set.universe_size(),
            atoms: vec![(set, T::one())],
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn atoms(&self) -> &[(VertexSubset, T)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total(&self) -> T {
        self.atoms.iter().fold(T::zero(), |a, (_, p)| a + p.clone())
    }

    pub fn probability(&self, set: &VertexSubset) -> T {
        match self.atoms.binary_search_by(|(s, _)| s.cmp(set)) {
            Ok(i) => self.atoms[i].1.clone(),
            Err(_) => T::zero(),
        }
    }

    /// `E[f(S)]`.
    pub fn expectation(&self, mut f: impl FnMut(&VertexSubset) -> T) -> T {
        self.atoms.iter().fold(T::zero(), |a, (s, p)| a + p.clone() * f(s))
    }

    /// `P(v ∈ S)`.
    pub fn marginal(&self, v: usize) -> T {
        self.event_probability(|s| s.contains(v))
    }

    pub fn event_probability(&self, mut event: impl FnMut(&VertexSubset) -> bool) -> T {
        self.atoms
            .iter()
            .filter(|(s, _)| event(s))
            .fold(T::zero(), |a, (_, p)| a + p.clone())
    }

    /// Largest atom-wise absolute difference over the union of supports.
    pub fn max_abs_difference(&self, other: &Self) -> Result<T> {
        let mut worst = T::zero();
        merge_atoms(self, other, |p, q| {
            let d = (p - q).abs();
            if d > worst {
                worst = d;
            }
        })?;
        Ok(worst)
    }
}

/// Walks the union of two sorted supports, calling `f(p, q)` per atom.
fn merge_atoms<T: Scalar>(a: &Distribution<T>, b: &Distribution<T>, mut f: impl FnMut(T, T)) -> Result<()> {
    if a.universe != b.universe {
        return Err(Error::UniverseMismatch {
            expected: a.universe,
            found: b.universe,
        });
    }
    let (mut i, mut j) = (0, 0);
    while i < a.atoms.len() || j < b.atoms.len() {
        let order = match (a.atoms.get(i), b.atoms.get(j)) {
            (Some((x, _)), Some((y, _))) => x.cmp(y),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match order {
            Ordering::Less => {
                f(a.atoms[i].1.clone(), T::zero());
                i += 1;
            }
            Ordering::Greater => {
                f(T::zero(), b.atoms[j].1.clone());
                j += 1;
            }
            Ordering::Equal => {
                f(a.atoms[i].1.clone(), b.atoms[j].1.clone());
                i += 1;
                j += 1;
            }
        }
    }
    Ok(())
}

/// Half the ℓ₁ distance between two distributions.
pub fn tv_distance<T: Scalar>(mu: &Distribution<T>, nu: &Distribution<T>) -> Result<T> {
    let mut sum = T::zero();
    merge_atoms(mu, nu, |p, q| sum = sum.clone() + (p - q).abs())?;
    Ok(sum / T::from_count(2))
}
