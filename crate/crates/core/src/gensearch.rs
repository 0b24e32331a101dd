//! Instance generation: the classical cover, covering-function-preserving class
//! splits, seeded random systems and exhaustive residue search.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::lcm_all;
use crate::error::{CoverError, Result};
use crate::system::{CoverSystem, ResidueClass};
use crate::Limits;

/// `{0(2), 0(3), 1(4), 5(6), 7(12)}`, a cover with distinct moduli and `m = 1`.
pub fn erdos_example() -> CoverSystem {
    CoverSystem::from_pairs(&[(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)]).expect("valid moduli")
}

/// Replaces class `index` (1-based) `a(n)` by the `p` classes
/// `a + j·n (p·n)`, `j = 0..p`, in place. The covering function is unchanged.
pub fn split_class(system: &CoverSystem, index: usize, p: u64) -> Result<CoverSystem> {
    let class = *system.class(index)?;
    if p < 2 {
        return Err(CoverError::InvalidArgument(format!(
            "split factor {p} must be at least 2"
        )));
    }
    let n = class.modulus();
    let modulus = n
        .checked_mul(p)
        .ok_or_else(|| CoverError::InvalidArgument("split modulus overflows".into()))?;
    let mut classes = system.classes().to_vec();
    let parts = (0..p).map(|j| ResidueClass::new((class.residue() + j * n) as i64, modulus).expect("positive modulus"));
    classes.splice(index - 1..index, parts);
    Ok(CoverSystem::new(classes))
}

/// SplitMix64: 64-bit state, increment `0x9E3779B97F4A7C15`, output mix with
/// multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB` and shifts 30/27/31.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)` by rejection. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let r = self.next_u64();
            if r >= threshold {
                return r % bound;
            }
        }
    }
}

/// `k` classes with moduli uniform in `[1, max_modulus]` and residues uniform
/// in `[0, n)`, drawn from [`SplitMix64`] seeded with `seed`.
pub fn random_system(k: usize, max_modulus: u64, seed: u64, limits: &Limits) -> Result<CoverSystem> {
    if k > limits.classes {
        return Err(CoverError::TooManyClasses {
            count: k,
            cap: limits.classes,
        });
    }
    if max_modulus == 0 {
        return Err(CoverError::InvalidModulus(0));
    }
    let mut rng = SplitMix64::new(seed);
    let classes = (0..k)
        .map(|_| {
            let n = 1 + rng.below(max_modulus);
            let a = rng.below(n);
            ResidueClass::new(a as i64, n).expect("positive modulus")
        })
        .collect();
    Ok(CoverSystem::new(classes))
}

/// Applies up to `steps` random splits (factor 2 or 3) to `system`, never
/// letting it grow past `max_len` classes. The covering function is preserved.
pub fn random_refinement(system: &CoverSystem, steps: usize, max_len: usize, rng: &mut SplitMix64) -> CoverSystem {
    let mut current = system.clone();
    for _ in 0..steps {
        if current.is_empty() {
            break;
        }
        let p = 2 + rng.below(2);
        if current.len() + p as usize - 1 > max_len {
            continue;
        }
        let index = 1 + rng.below(current.len() as u64) as usize;
        if let Ok(next) = split_class(&current, index, p) {
            current = next;
        }
    }
    current
}

/// Concatenation of two systems; covering functions add.
pub fn union(a: &CoverSystem, b: &CoverSystem) -> CoverSystem {
    CoverSystem::new(a.classes().iter().chain(b.classes()).copied().collect())
}

/// Fixed moduli whose residues `find_covers` searches over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub moduli: Vec<u64>,
    pub target_multiplicity: u32,
    pub exact: bool,
}

impl SearchSpec {
    pub fn system(&self, residues: &[u64]) -> CoverSystem {
        CoverSystem::new(
            residues
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &n)| ResidueClass::new(a as i64, n).expect("positive modulus"))
                .collect(),
        )
    }
}

/// Every residue tuple (in mixed-radix order) that turns `spec.moduli` into an
/// m-cover, or an exact m-cover when `spec.exact`.
pub fn find_covers(spec: &SearchSpec, limits: &Limits) -> Result<Vec<Vec<u64>>> {
    if spec.moduli.is_empty() {
        return Err(CoverError::NoModuli);
    }
    if let Some(&bad) = spec.moduli.iter().find(|&&n| n == 0) {
        return Err(CoverError::InvalidModulus(bad as i128));
    }
    if spec.target_multiplicity == 0 {
        return Err(CoverError::InvalidArgument(
            "target multiplicity must be positive".into(),
        ));
    }
    let size = spec.moduli.iter().fold(BigUint::from(1u32), |acc, &n| acc * n);
    if size > BigUint::from(limits.search) {
        return Err(CoverError::SearchTooLarge {
            size,
            cap: limits.search,
        });
    }
    let lcm = lcm_all(spec.moduli.iter().copied())
        .and_then(|l| l.to_u64())
        .filter(|&l| l <= limits.table)
        .ok_or_else(|| CoverError::PeriodTooLarge {
            lcm: spec.moduli.iter().fold(BigUint::from(1u32), |acc, &n| {
                num_integer::Integer::lcm(&acc, &BigUint::from(n))
            }),
            cap: limits.table,
        })?;
    let len = lcm as usize;
    let m = spec.target_multiplicity;

    // capacity[i]: how many points classes i.. can still cover, counted with multiplicity
    let mut capacity = vec![0u64; spec.moduli.len() + 1];
    for i in (0..spec.moduli.len()).rev() {
        capacity[i] = capacity[i + 1] + lcm / spec.moduli[i];
    }
    if spec.exact && capacity[0] != m as u64 * lcm {
        return Ok(Vec::new());
    }

    let mut search = Search {
        moduli: &spec.moduli,
        m,
        exact: spec.exact,
        capacity,
        counts: vec![0; len],
        deficit: m as u64 * lcm,
        residues: Vec::with_capacity(spec.moduli.len()),
        found: Vec::new(),
    };
    search.descend(0);
    Ok(search.found)
}

struct Search<'a> {
    moduli: &'a [u64],
    m: u32,
    exact: bool,
    capacity: Vec<u64>,
    counts: Vec<u32>,
    // Σ_x max(0, m - counts[x])
    deficit: u64,
    residues: Vec<u64>,
    found: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize) {
        if depth == self.moduli.len() {
            if self.deficit == 0 {
                self.found.push(self.residues.clone());
            }
            return;
        }
        let n = self.moduli[depth];
        for a in 0..n {
            let overshoot = self.stamp(a, n);
            let feasible = if self.exact {
                !overshoot
            } else {
                self.deficit <= self.capacity[depth + 1]
            };
            if feasible {
                self.residues.push(a);
                self.descend(depth + 1);
                self.residues.pop();
            }
            self.unstamp(a, n);
        }
    }

    /// Adds class `a(n)`; reports whether some count went above `m`.
    fn stamp(&mut self, a: u64, n: u64) -> bool {
        let mut overshoot = false;
        for x in (a as usize..self.counts.len()).step_by(n as usize) {
            if self.counts[x] < self.m {
                self.deficit -= 1;
            } else {
                overshoot = true;
            }
            self.counts[x] += 1;
        }
        overshoot
    }

    fn unstamp(&mut self, a: u64, n: u64) {
        for x in (a as usize..self.counts.len()).step_by(n as usize) {
            self.counts[x] -= 1;
            if self.counts[x] < self.m {
                self.deficit += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn erdos_example_shape() {
        let b = erdos_example();
        assert_eq!(b.len(), 5);
        assert_eq!(b.lcm().unwrap(), BigUint::from(12u32));
        assert_eq!(b.covering_multiplicity().unwrap(), 1);
        assert_eq!(b.minimal_period().unwrap(), 12);
    }

    #[test]
    fn split_examples() {
        let s = CoverSystem::from_pairs(&[(0, 1)]).unwrap();
        assert_eq!(
            split_class(&s, 1, 2).unwrap(),
            CoverSystem::from_pairs(&[(0, 2), (1, 2)]).unwrap()
        );
        let b = erdos_example();
        let split = split_class(&b, 1, 3).unwrap();
        assert_eq!(split.len(), 7);
        assert_eq!(split.covering_table().unwrap(), b.covering_table().unwrap());
        assert_eq!(
            split.classes()[0..3],
            CoverSystem::from_pairs(&[(0, 6), (2, 6), (4, 6)]).unwrap().classes()[..]
        );
        assert_eq!(split.classes()[3], b.classes()[1]);
    }

    #[test]
    fn split_errors() {
        let b = erdos_example();
        assert!(matches!(split_class(&b, 6, 2), Err(CoverError::BadIndex { .. })));
        assert!(matches!(split_class(&b, 1, 1), Err(CoverError::InvalidArgument(_))));
    }

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0, as published with the generator
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(rng.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(rng.next_u64(), 0x06C45D188009454F);
    }

    #[test]
    fn random_system_is_deterministic() {
        let a = random_system(3, 6, 42, &lim()).unwrap();
        let b = random_system(3, 6, 42, &lim()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert!(a.moduli().iter().all(|&n| (1..=6).contains(&n)));
        assert_ne!(
            random_system(8, 50, 1, &lim()).unwrap(),
            random_system(8, 50, 2, &lim()).unwrap()
        );
    }

    #[test]
    fn random_system_with_unit_moduli() {
        let s = random_system(7, 1, 99, &lim()).unwrap();
        assert!(s.classes().iter().all(|c| c.modulus() == 1 && c.residue() == 0));
        assert_eq!(s.covering_multiplicity().unwrap(), 7);
    }

    #[test]
    fn random_system_caps() {
        assert!(matches!(
            random_system(31, 6, 0, &lim()),
            Err(CoverError::TooManyClasses { .. })
        ));
        assert!(random_system(3, 0, 0, &lim()).is_err());
    }

    #[test]
    fn find_covers_erdos_moduli() {
        let spec = SearchSpec {
            moduli: vec![2, 3, 4, 6, 12],
            target_multiplicity: 1,
            exact: false,
        };
        let found = find_covers(&spec, &lim()).unwrap();
        assert!(found.contains(&vec![0, 0, 1, 5, 7]));
        for residues in &found {
            assert!(spec.system(residues).is_m_cover(1).unwrap());
        }
    }

    #[test]
    fn find_covers_small_cases() {
        let spec = SearchSpec {
            moduli: vec![2, 2],
            target_multiplicity: 1,
            exact: false,
        };
        assert_eq!(find_covers(&spec, &lim()).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        let spec = SearchSpec {
            moduli: vec![2, 3],
            target_multiplicity: 1,
            exact: false,
        };
        assert!(find_covers(&spec, &lim()).unwrap().is_empty());
    }

    #[test]
    fn find_covers_matches_brute_force() {
        for (moduli, m, exact) in [
            (vec![2, 3, 4, 6, 12], 1, false),
            (vec![2, 2, 3, 3, 3, 6], 2, false),
            (vec![2, 4, 4, 3, 6, 6], 1, true),
            (vec![1, 2, 2, 4, 4], 2, true),
            (vec![2, 3, 6, 4, 4], 1, false),
        ] {
            let spec = SearchSpec {
                moduli: moduli.clone(),
                target_multiplicity: m,
                exact,
            };
            let found = find_covers(&spec, &lim()).unwrap();
            let mut brute = Vec::new();
            let total: u64 = moduli.iter().product();
            for code in 0..total {
                let mut rest = code;
                let mut residues = vec![0; moduli.len()];
                for i in (0..moduli.len()).rev() {
                    residues[i] = rest % moduli[i];
                    rest /= moduli[i];
                }
                let table = spec.system(&residues).covering_table().unwrap();
                let ok = if exact {
                    table.iter().all(|&w| w == m)
                } else {
                    table.iter().all(|&w| w >= m)
                };
                if ok {
                    brute.push(residues);
                }
            }
            assert_eq!(found, brute, "moduli {moduli:?} m={m} exact={exact}");
        }
    }

    #[test]
    fn find_covers_caps() {
        let spec = SearchSpec {
            moduli: vec![100; 4],
            target_multiplicity: 1,
            exact: false,
        };
        let limits = Limits { search: 1000, ..lim() };
        assert!(matches!(
            find_covers(&spec, &limits),
            Err(CoverError::SearchTooLarge { .. })
        ));
    }
}
