//! Hypercochains of degree 0 and 1 as plain tables, plus the enumeration
//! budget shared by every exhaustive search.

use serde::{Deserialize, Serialize};

/// Default budget on enumeration work (search nodes or table entries).
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Name of the environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "CROSSEDCOH_BUDGET";

/// The enumeration budget in effect: `CROSSEDCOH_BUDGET` if set and valid,
/// otherwise [`DEFAULT_BUDGET`].
pub fn default_budget() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// `(φ, g)` with `φ: Γ → A` and `g ∈ G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cochain0 {
    pub phi: Vec<usize>,
    pub g: usize,
}

impl Cochain0 {
    pub fn identity(gamma_order: usize, a_identity: usize, g_identity: usize) -> Self {
        Self {
            phi: vec![a_identity; gamma_order],
            g: g_identity,
        }
    }
}

/// `(u, ψ)` with `u: Γ × Γ → A` stored row-major (`u[σ·|Γ| + τ]`) and
/// `ψ: Γ → G`. The derived order is lexicographic on `(u, ψ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cochain1 {
    pub u: Vec<usize>,
    pub psi: Vec<usize>,
}

impl Cochain1 {
    pub fn identity(gamma_order: usize, a_identity: usize, g_identity: usize) -> Self {
        Self {
            u: vec![a_identity; gamma_order * gamma_order],
            psi: vec![g_identity; gamma_order],
        }
    }

    /// `(u ≡ 1, ψ)`
    pub fn from_psi(psi: Vec<usize>, a_identity: usize) -> Self {
        let n = psi.len();
        Self {
            u: vec![a_identity; n * n],
            psi,
        }
    }

    pub fn gamma_order(&self) -> usize {
        self.psi.len()
    }

    #[inline]
    pub fn u(&self, sigma: usize, tau: usize) -> usize {
        self.u[sigma * self.psi.len() + tau]
    }

    pub fn u_rows(&self) -> Vec<Vec<usize>> {
        self.u
            .chunks(self.psi.len().max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn from_rows(u: Vec<Vec<usize>>, psi: Vec<usize>) -> Self {
        Self {
            u: u.into_iter().flatten().collect(),
            psi,
        }
    }

    pub fn is_two_neutral(&self, a_identity: usize) -> bool {
        self.u.iter().all(|&x| x == a_identity)
    }
}
