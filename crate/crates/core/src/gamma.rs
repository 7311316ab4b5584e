//! Groups with a left action of a finite group Γ by automorphisms.

use crate::error::{Error, Result};
use crate::group::{compose, FiniteGroup};

/// A finite group together with a left Γ-action, written `^γ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGroup {
    gamma: FiniteGroup,
    group: FiniteGroup,
    action: Vec<Vec<usize>>,
}

impl GammaGroup {
    /// Checks that every `action[γ]` is an automorphism of `group` and that
    /// γ ↦ action[γ] is a homomorphism Γ → Aut(group).
    pub fn new(gamma: FiniteGroup, group: FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != gamma.order() {
            return Err(Error::NotAnAction(format!(
                "{} permutations for Γ of order {}",
                action.len(),
                gamma.order()
            )));
        }
        for (g, perm) in action.iter().enumerate() {
            if !group.is_automorphism(perm) {
                let witness =
                    if perm.len() == group.order() && perm.iter().all(|&p| p < group.order()) {
                        group
                            .automorphism_violation(perm)
                            .map(|(x, y)| format!(" (fails at x={x}, y={y})"))
                            .unwrap_or_else(|| " (not a bijection)".into())
                    } else {
                        " (not a permutation)".into()
                    };
                return Err(Error::NotAnAction(format!(
                    "γ = {} does not act by an automorphism{witness}",
                    gamma.name(g)
                )));
            }
        }
        for s in gamma.elements() {
            for t in gamma.elements() {
                let lhs = &action[gamma.mul(s, t)];
                let rhs = compose(&action[s], &action[t]);
                if *lhs != rhs {
                    return Err(Error::NotAnAction(format!(
                        "^({}·{}) ≠ ^{} ∘ ^{}",
                        gamma.name(s),
                        gamma.name(t),
                        gamma.name(s),
                        gamma.name(t)
                    )));
                }
            }
        }
        Ok(Self {
            gamma,
            group,
            action,
        })
    }

    pub fn trivial_action(gamma: FiniteGroup, group: FiniteGroup) -> Self {
        let id: Vec<usize> = group.elements().collect();
        let action = vec![id; gamma.order()];
        Self {
            gamma,
            group,
            action,
        }
    }

    /// Action pulled back along a homomorphism Γ → Aut(group) given by images
    /// of each Γ element, without re-validation.
    pub(crate) fn from_parts_trusted(
        gamma: FiniteGroup,
        group: FiniteGroup,
        action: Vec<Vec<usize>>,
    ) -> Self {
        Self {
            gamma,
            group,
            action,
        }
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    #[inline]
    pub fn act(&self, gamma: usize, x: usize) -> usize {
        self.action[gamma][x]
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&x| self.gamma.elements().all(|s| self.act(s, x) == x))
            .collect()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }

    /// Restriction of the action to a subgroup of Γ, given as a sorted list
    /// of Γ elements.
    pub fn restrict(&self, sub: &[usize]) -> Result<GammaGroup> {
        let (sub_group, emb) = self.gamma.subgroup(sub)?;
        let action = emb.iter().map(|&s| self.action[s].clone()).collect();
        Ok(GammaGroup::from_parts_trusted(
            sub_group,
            self.group.clone(),
            action,
        ))
    }

    /// Component-wise action on a direct product over the same Γ.
    pub fn direct_product(left: &GammaGroup, right: &GammaGroup) -> Result<GammaGroup> {
        if left.gamma != right.gamma {
            return Err(Error::Malformed("direct product over different Γ".into()));
        }
        let group = FiniteGroup::direct_product(&left.group, &right.group);
        let m = right.group.order();
        let action = left
            .gamma
            .elements()
            .map(|s| {
                group
                    .elements()
                    .map(|x| left.act(s, x / m) * m + right.act(s, x % m))
                    .collect()
            })
            .collect();
        Ok(GammaGroup::from_parts_trusted(
            left.gamma.clone(),
            group,
            action,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_action_is_valid() {
        let g = GammaGroup::trivial_action(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
        let again = GammaGroup::new(g.gamma().clone(), g.group().clone(), g.action().to_vec());
        assert!(again.is_ok());
    }

    #[test]
    fn non_hom_permutation_rejected() {
        let gamma = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        // swaps 0 and 1: not an automorphism
        let err = GammaGroup::new(gamma, z3, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)));
    }

    #[test]
    fn action_must_be_homomorphism() {
        // ℤ/2 acting on ℤ/5 by x ↦ 2x is not an action (2² = 4 ≠ 1 mod 5).
        let gamma = FiniteGroup::cyclic(2);
        let z5 = FiniteGroup::cyclic(5);
        let double: Vec<usize> = (0..5).map(|x| (2 * x) % 5).collect();
        let err = GammaGroup::new(gamma, z5, vec![(0..5).collect(), double]).unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)));
    }

    #[test]
    fn z8_with_units_five_and_minus_one() {
        // Γ = ⟨σ, τ⟩ ≅ (ℤ/2)², index 2a+b ↔ σ^a τ^b.
        let gamma = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let z8 = FiniteGroup::cyclic(8);
        let unit = |u: usize| -> Vec<usize> { (0..8).map(|b| (u * b) % 8).collect() };
        let action = vec![unit(1), unit(7), unit(5), unit(35 % 8)];
        let g = GammaGroup::new(gamma, z8, action).unwrap();
        assert_eq!(g.act(2, 1), 5);
        assert_eq!(g.act(1, 1), 7);
    }
}
