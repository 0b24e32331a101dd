//! Finite-window certificates: a system that covers enough consecutive
//! integers at least (exactly) `m` times is an m-cover (exact m-cover).
//!
//! The local side scans the window pointwise and the global side tabulates
//! the whole period; neither consults the other.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{divisors, euler_phi};
use crate::error::{CoverError, Result};
use crate::system::CoverSystem;
use crate::unitfrac::SubsetSums;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowVerdict {
    pub window_start: i64,
    pub window_length: u64,
    pub local_holds: bool,
    pub global_holds: bool,
}

impl WindowVerdict {
    /// The implication under test: a passing window certifies the whole line.
    pub fn consistent(&self) -> bool {
        !self.local_holds || self.global_holds
    }
}

/// Number of distinct fractional parts of the `2^k` subset sums of `1/n_s`.
pub fn window_bound_cover(system: &CoverSystem, limits: &Limits) -> Result<u64> {
    let sums = SubsetSums::enumerate(&system.moduli(), &[], limits)?;
    Ok(sums.fractional_numerators().len() as u64)
}

/// `|⋃_s {r/n_s : 0 <= r < n_s}|`. Reduced, these are the fractions whose
/// denominator divides some `n_s`, so the count is `Σ φ(d)` over that set of
/// denominators.
pub fn window_bound_exact(system: &CoverSystem) -> Result<u64> {
    if system.is_empty() {
        return Err(CoverError::NoModuli);
    }
    let denominators: BTreeSet<u64> = system
        .moduli()
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .flat_map(divisors)
        .collect();
    Ok(denominators.into_iter().map(euler_phi).sum())
}

fn window(system: &CoverSystem, x0: i64, len: u64, pred: impl Fn(u32) -> bool) -> bool {
    (0..len as i64).all(|i| pred(system.covering_count(x0 + i)))
}

/// Does covering `[x0, x0 + bound)` at least `m` times agree with being an m-cover?
pub fn check_local_global_cover(system: &CoverSystem, m: u32, x0: i64, limits: &Limits) -> Result<WindowVerdict> {
    let window_length = window_bound_cover(system, limits)?;
    let table = system.tabulate(limits)?;
    Ok(WindowVerdict {
        window_start: x0,
        window_length,
        local_holds: window(system, x0, window_length, |w| w >= m),
        global_holds: table.multiplicity() >= m,
    })
}

/// Exact variant: covering `[x0, x0 + bound)` exactly `m` times versus being
/// an exact m-cover.
pub fn check_local_global_exact(system: &CoverSystem, m: u32, x0: i64, limits: &Limits) -> Result<WindowVerdict> {
    let window_length = window_bound_exact(system)?;
    let table = system.tabulate(limits)?;
    Ok(WindowVerdict {
        window_start: x0,
        window_length,
        local_holds: window(system, x0, window_length, |w| w == m),
        global_holds: table.is_constant(m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gensearch::erdos_example;
    use crate::Fraction;

    fn sys(pairs: &[(i64, u64)]) -> CoverSystem {
        CoverSystem::from_pairs(pairs).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn cover_bound_examples() {
        assert_eq!(window_bound_cover(&erdos_example(), &lim()).unwrap(), 12);
        assert_eq!(window_bound_cover(&sys(&[(0, 2)]), &lim()).unwrap(), 2);
        assert_eq!(window_bound_cover(&CoverSystem::default(), &lim()).unwrap(), 1);
    }

    #[test]
    fn exact_bound_examples() {
        assert_eq!(window_bound_exact(&erdos_example()).unwrap(), 12);
        assert_eq!(window_bound_exact(&sys(&[(0, 2), (1, 2)])).unwrap(), 2);
        assert_eq!(window_bound_exact(&sys(&[(0, 1)])).unwrap(), 1);
        assert_eq!(window_bound_exact(&CoverSystem::default()), Err(CoverError::NoModuli));
    }

    #[test]
    fn exact_bound_matches_fraction_union() {
        for moduli in [vec![2, 3, 4, 6, 12], vec![5, 7, 10], vec![9, 6, 4, 4, 1], vec![30, 42]] {
            let mut union = BTreeSet::new();
            for &n in &moduli {
                for r in 0..n {
                    union.insert(Fraction::new(r, n));
                }
            }
            let s = CoverSystem::from_pairs(&moduli.iter().map(|&n| (0, n)).collect::<Vec<_>>()).unwrap();
            assert_eq!(window_bound_exact(&s).unwrap(), union.len() as u64, "{moduli:?}");
        }
    }

    #[test]
    fn cover_verdicts() {
        let v = check_local_global_cover(&erdos_example(), 1, 0, &lim()).unwrap();
        assert!(v.local_holds && v.global_holds);
        assert_eq!(v.window_length, 12);

        let v = check_local_global_cover(&sys(&[(0, 2)]), 1, 0, &lim()).unwrap();
        assert!(!v.local_holds && !v.global_holds);

        for x0 in [-7, 0, 3, 1000] {
            let v = check_local_global_cover(&sys(&[(0, 1)]), 1, x0, &lim()).unwrap();
            assert!(v.local_holds && v.global_holds);
        }
    }

    #[test]
    fn exact_verdicts() {
        let v = check_local_global_exact(&sys(&[(0, 2), (1, 2)]), 1, 5, &lim()).unwrap();
        assert!(v.local_holds && v.global_holds);
        assert_eq!(v.window_length, 2);

        let v = check_local_global_exact(&erdos_example(), 1, 0, &lim()).unwrap();
        assert!(!v.local_holds && !v.global_holds);

        let v = check_local_global_exact(&sys(&[(0, 1)]), 1, 0, &lim()).unwrap();
        assert!(v.local_holds && v.global_holds);
    }
}
