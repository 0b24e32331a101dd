//! Instance generators shared by the integration suites.
#![allow(dead_code)]

pub mod oracle;

use covers::gensearch::{erdos_example, find_covers, random_refinement, union, SearchSpec, SplitMix64};
use covers::{CoverSystem, Limits};

pub fn sys(pairs: &[(i64, u64)]) -> CoverSystem {
    CoverSystem::from_pairs(pairs).unwrap()
}

/// Small m-covers to refine from: classical covers, search output over a few
/// moduli sets, and pairwise unions (multiplicity 2).
pub fn base_covers() -> Vec<CoverSystem> {
    let limits = Limits::default();
    let mut covers = vec![
        erdos_example(),
        sys(&[(0, 1)]),
        sys(&[(0, 2), (1, 2)]),
        sys(&[(0, 3), (1, 3), (2, 3)]),
        sys(&[(0, 2), (1, 4), (3, 4)]),
        sys(&[(0, 2), (0, 3), (1, 6), (5, 6)]),
        sys(&[(1, 2), (0, 4), (2, 8), (6, 8)]),
        sys(&[(0, 2), (1, 2), (2, 3)]),
    ];
    for moduli in [vec![2, 3, 4, 6, 12], vec![2, 3, 6, 6], vec![2, 4, 4, 3, 3, 6]] {
        let spec = SearchSpec {
            moduli,
            target_multiplicity: 1,
            exact: false,
        };
        let found = find_covers(&spec, &limits).unwrap();
        covers.extend(found.iter().step_by(7).map(|r| spec.system(r)));
    }
    let singles = covers.len().min(8);
    for i in 0..singles {
        for j in i..singles {
            covers.push(union(&covers[i], &covers[j]));
        }
    }
    covers
}

/// `(system, m, t)` with the system an m-cover, class `t` irredundant and
/// `n_t` a period of the covering function, at most `max_len` classes.
pub fn theorem_instances(count: usize, max_len: usize, seed: u64) -> Vec<(CoverSystem, u32, usize)> {
    let mut rng = SplitMix64::new(seed);
    let bases: Vec<CoverSystem> = base_covers().into_iter().filter(|c| c.len() <= max_len).collect();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut round = 0;
    while out.len() < count && round < 100 * count {
        let base = &bases[round % bases.len()];
        round += 1;
        let steps = rng.below(4) as usize;
        let system = random_refinement(base, steps, max_len, &mut rng);
        let table = system.tabulate(&Limits::default()).unwrap();
        let m = table.multiplicity();
        for t in table.irredundant_indices(&system, m).unwrap() {
            if table.is_period(system.classes()[t - 1].modulus()) && seen.insert((system.clone(), t)) {
                out.push((system.clone(), m, t));
            }
        }
    }
    out.truncate(count);
    out
}

/// Exact m-covers (m <= 3) built by splitting copies of `0(1)` and unions of
/// small exact covers.
pub fn exact_covers(count: usize, max_len: usize, seed: u64) -> Vec<(CoverSystem, u32)> {
    let mut rng = SplitMix64::new(seed);
    let starts = [
        (sys(&[(0, 1)]), 1),
        (sys(&[(0, 1), (0, 1)]), 2),
        (sys(&[(0, 1), (0, 1), (0, 1)]), 3),
        (sys(&[(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]), 2),
        (sys(&[(0, 2), (1, 4), (3, 4), (0, 1)]), 2),
        (sys(&[(0, 1), (0, 2), (1, 2)]), 2),
    ];
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut round = 0;
    while out.len() < count && round < 100 * count {
        let (start, m) = &starts[round % starts.len()];
        round += 1;
        let steps = 1 + rng.below(5) as usize;
        let system = random_refinement(start, steps, max_len, &mut rng);
        if seen.insert(system.clone()) {
            out.push((system, *m));
        }
    }
    out
}
