//! Brute-force references that share no code path with the library's
//! stamping and Gray-code enumeration.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use covers::CoverSystem;

/// `w_A(x)` for `x in 0..len`, by testing every class at every point.
pub fn naive_table(system: &CoverSystem, len: u64) -> Vec<u32> {
    (0..len)
        .map(|x| {
            system
                .classes()
                .iter()
                .filter(|c| (x as i128 - c.residue() as i128) % c.modulus() as i128 == 0)
                .count() as u32
        })
        .collect()
}

pub fn naive_lcm(moduli: &[u64]) -> u64 {
    moduli.iter().fold(1u64, |acc, &n| acc.lcm(&n))
}

/// Recomputes `Σ_{s∈I} 1/n_s` from scratch for one subset.
pub fn subset_sum(moduli: &[u64], mask: u64) -> BigRational {
    (0..moduli.len())
        .filter(|&s| mask >> s & 1 == 1)
        .map(|s| BigRational::new(BigInt::from(1), BigInt::from(moduli[s])))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Profile rows keyed by `r`: `(floors, count)`, plus the unmatched count.
pub fn naive_profile(system: &CoverSystem, t: usize) -> (BTreeMap<u64, (BTreeSet<u64>, u64)>, u64) {
    let nt = system.classes()[t - 1].modulus();
    let others: Vec<u64> = system
        .classes()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != t)
        .map(|(_, c)| c.modulus())
        .collect();
    let mut rows: BTreeMap<u64, (BTreeSet<u64>, u64)> = (0..nt).map(|r| (r, (BTreeSet::new(), 0))).collect();
    let mut unmatched = 0;
    for mask in 0..1u64 << others.len() {
        let v = subset_sum(&others, mask);
        let floor = v.floor();
        let frac = &v - &floor;
        let r = frac * BigRational::from_integer(BigInt::from(nt));
        if r.is_integer() {
            let row = rows.get_mut(&r.to_integer().to_u64().unwrap()).unwrap();
            row.0.insert(floor.to_integer().to_u64().unwrap());
            row.1 += 1;
        } else {
            unmatched += 1;
        }
    }
    (rows, unmatched)
}

/// All distinct subset sums.
pub fn naive_sum_set(moduli: &[u64]) -> BTreeSet<BigRational> {
    (0..1u64 << moduli.len()).map(|mask| subset_sum(moduli, mask)).collect()
}
