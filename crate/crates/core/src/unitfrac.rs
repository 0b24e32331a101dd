//! Exact enumeration of unit-fraction subset sums `Σ_{s∈I} 1/n_s` and the
//! subset-sum statements about covers built on top of it.
//!
//! Every subset sum is kept as an integer numerator over a common scale (the
//! lcm of all denominators involved), so comparisons are exact and cheap.
//! Enumeration walks subsets in Gray-code order, doing one addition or
//! subtraction per subset. Past [`Limits::gray_code_max`] classes the list is
//! split in two halves whose sum histograms are combined pairwise.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{binom, lcm_all};
use crate::error::{CoverError, Result};
use crate::fraction::Fraction;
use crate::system::CoverSystem;
use crate::Limits;

/// Largest scale accepted for enumeration; keeps every numerator well inside `u128`.
const MAX_SCALE: u128 = 1 << 100;
/// Histograms with at most this many possible numerators use a dense vector.
const DENSE_LIMIT: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Gray code up to `Limits::gray_code_max` classes, meet-in-the-middle beyond.
    Auto,
    GrayCode,
    MeetInTheMiddle,
}

/// Multiset of the `2^k` subset sums of `1/n_1, ..., 1/n_k`, each stored as
/// `numerator / scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSums {
    scale: u128,
    len: usize,
    // sorted by numerator, counts > 0
    entries: Vec<(u128, u64)>,
}

impl SubsetSums {
    /// Enumerates all subset sums of the unit fractions `1/moduli[i]`. The
    /// common scale also absorbs `extra_denominators`, so that fractions like
    /// `r/n_t` can be compared against the sums exactly.
    pub fn enumerate(moduli: &[u64], extra_denominators: &[u64], limits: &Limits) -> Result<Self> {
        Self::enumerate_with(moduli, extra_denominators, limits, Strategy::Auto)
    }

    pub fn enumerate_with(
        moduli: &[u64],
        extra_denominators: &[u64],
        limits: &Limits,
        strategy: Strategy,
    ) -> Result<Self> {
        if moduli.len() > limits.classes {
            return Err(CoverError::TooManyClasses {
                count: moduli.len(),
                cap: limits.classes,
            });
        }
        if let Some(&bad) = moduli.iter().chain(extra_denominators).find(|&&n| n == 0) {
            return Err(CoverError::InvalidModulus(bad as i128));
        }
        let scale = lcm_all(moduli.iter().chain(extra_denominators).copied())
            .filter(|&s| s <= MAX_SCALE)
            .ok_or(CoverError::ScaleOverflow)?;
        let weights: Vec<u128> = moduli.iter().map(|&n| scale / n as u128).collect();
        let use_mitm = match strategy {
            Strategy::Auto => moduli.len() > limits.gray_code_max,
            Strategy::GrayCode => false,
            Strategy::MeetInTheMiddle => true,
        };
        let entries = if use_mitm {
            let (left, right) = weights.split_at(weights.len() / 2);
            combine(&gray_code_histogram(left), &gray_code_histogram(right))
        } else {
            gray_code_histogram(&weights)
        };
        Ok(SubsetSums {
            scale,
            len: moduli.len(),
            entries,
        })
    }

    pub fn scale(&self) -> u128 {
        self.scale
    }

    /// Number of unit fractions enumerated over.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `(numerator, number of subsets)` pairs in increasing numerator order.
    pub fn entries(&self) -> &[(u128, u64)] {
        &self.entries
    }

    /// How many subsets sum to exactly `numerator / scale`.
    pub fn count_of(&self, numerator: u128) -> u64 {
        self.entries
            .binary_search_by_key(&numerator, |&(x, _)| x)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn total_subsets(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| c).sum()
    }

    pub fn to_fraction(&self, numerator: u128) -> Fraction {
        Fraction::new(numerator, self.scale)
    }

    /// Distinct values as reduced fractions.
    pub fn values(&self) -> BTreeSet<Fraction> {
        self.entries.iter().map(|&(x, _)| self.to_fraction(x)).collect()
    }

    /// Distinct fractional parts, as numerators over the scale.
    pub fn fractional_numerators(&self) -> BTreeSet<u128> {
        self.entries.iter().map(|&(x, _)| x % self.scale).collect()
    }
}

fn gray_code_histogram(weights: &[u128]) -> Vec<(u128, u64)> {
    let total: u128 = weights.iter().sum();
    let subsets: u64 = 1 << weights.len();
    let mut included = vec![false; weights.len()];
    let mut sum = 0u128;
    if total < DENSE_LIMIT {
        let mut counts = vec![0u64; total as usize + 1];
        counts[0] = 1;
        for i in 1..subsets {
            let bit = i.trailing_zeros() as usize;
            included[bit] = !included[bit];
            if included[bit] {
                sum += weights[bit];
            } else {
                sum -= weights[bit];
            }
            counts[sum as usize] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(x, c)| (x as u128, c))
            .collect()
    } else {
        let mut counts: HashMap<u128, u64> = HashMap::new();
        counts.insert(0, 1);
        for i in 1..subsets {
            let bit = i.trailing_zeros() as usize;
            included[bit] = !included[bit];
            if included[bit] {
                sum += weights[bit];
            } else {
                sum -= weights[bit];
            }
            *counts.entry(sum).or_insert(0) += 1;
        }
        let mut entries: Vec<_> = counts.into_iter().collect();
        entries.sort_unstable();
        entries
    }
}

fn combine(left: &[(u128, u64)], right: &[(u128, u64)]) -> Vec<(u128, u64)> {
    let mut counts: BTreeMap<u128, u64> = BTreeMap::new();
    for &(x, c) in left {
        for &(y, d) in right {
            *counts.entry(x + y).or_insert(0) += c * d;
        }
    }
    counts.into_iter().collect()
}

/// The set `{ Σ_{n∈S} 1/n : S ⊆ moduli }`.
pub fn subset_sum_set(moduli: &[u64], limits: &Limits) -> Result<BTreeSet<Fraction>> {
    Ok(SubsetSums::enumerate(moduli, &[], limits)?.values())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub r: u64,
    pub floors: BTreeSet<u64>,
    pub count: u64,
}

/// Subset sums over `I ⊆ [1,k] \ {t}` grouped by fractional part `r/n_t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetSumProfile {
    pub modulus: u64,
    pub excluded_index: usize,
    /// Row `r` collects the subsets whose sum has fractional part `r/n_t`.
    pub rows: Vec<ProfileRow>,
    /// Subsets whose fractional part is not a multiple of `1/n_t`.
    pub unmatched: u64,
}

impl SubsetSumProfile {
    pub fn build(system: &CoverSystem, t: usize, limits: &Limits) -> Result<Self> {
        system.check_index(t)?;
        let modulus = system.classes()[t - 1].modulus();
        let others: Vec<u64> = system
            .classes()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != t)
            .map(|(_, c)| c.modulus())
            .collect();
        let sums = SubsetSums::enumerate(&others, &[modulus], limits)?;
        let scale = sums.scale();
        let step = scale / modulus as u128;
        let mut rows: Vec<ProfileRow> = (0..modulus)
            .map(|r| ProfileRow {
                r,
                floors: BTreeSet::new(),
                count: 0,
            })
            .collect();
        let mut unmatched = 0;
        for &(x, count) in sums.entries() {
            let frac = x % scale;
            if frac % step != 0 {
                unmatched += count;
                continue;
            }
            let row = &mut rows[(frac / step) as usize];
            row.floors.insert((x / scale) as u64);
            row.count += count;
        }
        Ok(SubsetSumProfile {
            modulus,
            excluded_index: t,
            rows,
            unmatched,
        })
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// One `r=<r> floors=[..] count=<c>` line per row.
impl fmt::Display for SubsetSumProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "r={} floors=[{}] count={}", row.r, join(&row.floors), row.count)?;
        }
        Ok(())
    }
}

/// Checks the hypotheses shared by the results about an irredundant class `t`
/// of an m-cover whose modulus is a period of the covering function.
pub(crate) fn check_irredundant_period(
    system: &CoverSystem,
    m: u32,
    t: usize,
    require_period: bool,
    limits: &Limits,
) -> Result<crate::system::CoveringTable> {
    system.check_index(t)?;
    let table = system.tabulate(limits)?;
    let irredundant = table.irredundant_indices(system, m)?;
    if !irredundant.contains(&t) {
        return Err(CoverError::RedundantClass { index: t, m });
    }
    let modulus = system.classes()[t - 1].modulus();
    if require_period && !table.is_period(modulus) {
        return Err(CoverError::NotAPeriod {
            modulus,
            minimal_period: table.minimal_period(),
        });
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Row {
    pub r: u64,
    pub floors: Vec<u64>,
    pub count: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub index: usize,
    pub modulus: u64,
    pub m: u32,
    pub rows: Vec<Theorem1Row>,
}

impl Theorem1Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// For an m-cover with class `t` irredundant and `n_t` a period of `w_A`,
/// reports for every `r ∈ [0, n_t)` how many distinct integer parts occur among
/// the subset sums over `[1,k] \ {t}` with fractional part `r/n_t`, and whether
/// there are at least `m` of them.
pub fn theorem1_check(system: &CoverSystem, m: u32, t: usize, limits: &Limits) -> Result<Theorem1Report> {
    check_irredundant_period(system, m, t, true, limits)?;
    let profile = SubsetSumProfile::build(system, t, limits)?;
    let rows = profile
        .rows
        .into_iter()
        .map(|row| Theorem1Row {
            r: row.r,
            pass: row.floors.len() >= m as usize,
            floors: row.floors.into_iter().collect(),
            count: row.count,
        })
        .collect();
    Ok(Theorem1Report {
        index: t,
        modulus: profile.modulus,
        m,
        rows,
    })
}

impl fmt::Display for Theorem1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(
                f,
                "r={} floors=[{}] count={} {}",
                row.r,
                join(&row.floors),
                row.count,
                verdict(row.pass)
            )?;
        }
        Ok(())
    }
}

pub(crate) fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub a: u64,
    pub count: u64,
    pub bound: u128,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactBoundReport {
    pub index: usize,
    pub modulus: u64,
    pub m: u32,
    pub rows: Vec<BoundRow>,
}

impl ExactBoundReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

impl fmt::Display for ExactBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(
                f,
                "a={} count={} bound={} {}",
                row.a,
                row.count,
                row.bound,
                verdict(row.pass)
            )?;
        }
        Ok(())
    }
}

/// For an exact m-cover, compares `|{I ⊆ [1,k] \ {t} : Σ 1/n_s = a/n_t}|`
/// against `binom(m-1, ⌊a/n_t⌋)` for every `a` up to `n_t · Σ_{s≠t} 1/n_s`.
/// `t` defaults to the last class.
pub fn exact_cover_bound_check(
    system: &CoverSystem,
    m: u32,
    t: Option<usize>,
    limits: &Limits,
) -> Result<ExactBoundReport> {
    if m == 0 {
        return Err(CoverError::InvalidArgument("m must be positive".into()));
    }
    if system.is_empty() {
        return Err(CoverError::NotExactCover { m });
    }
    let t = t.unwrap_or(system.len());
    system.check_index(t)?;
    let table = system.tabulate(limits)?;
    if !table.is_constant(m) {
        return Err(CoverError::NotExactCover { m });
    }
    let modulus = system.classes()[t - 1].modulus();
    let others: Vec<u64> = system
        .classes()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != t)
        .map(|(_, c)| c.modulus())
        .collect();
    let sums = SubsetSums::enumerate(&others, &[modulus], limits)?;
    let step = sums.scale() / modulus as u128;
    let max_numerator = sums.entries().last().map_or(0, |&(x, _)| x);
    let max_a = (max_numerator / step).to_u64().ok_or(CoverError::ScaleOverflow)?;
    let rows = (0..=max_a)
        .map(|a| {
            let count = sums.count_of(a as u128 * step);
            let bound = binom(m as u64 - 1, a / modulus);
            BoundRow {
                a,
                count,
                bound,
                pass: count as u128 >= bound,
            }
        })
        .collect();
    Ok(ExactBoundReport {
        index: t,
        modulus,
        m,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corollary1Report {
    pub period: u64,
    /// The unique residue in `[0, period)` where `w_A` attains `m(A)`.
    pub minimum_at: u64,
    pub multiplicity: u32,
    /// Values of `r` for which `r/period` is not attained.
    pub missing: Vec<u64>,
    pub holds: bool,
}

/// Checks that the fractional parts of subset sums over all of `[1,k]`, with
/// integer part outside `excluded`, include every `r/n_0` for the period
/// `n_0` (the minimal period unless given). Requires a unique minimiser of
/// `w_A` in `[0, n_0)` and `|excluded| = m(A)`.
pub fn corollary1_check(
    system: &CoverSystem,
    excluded: &BTreeSet<i64>,
    period: Option<u64>,
    limits: &Limits,
) -> Result<Corollary1Report> {
    let table = system.tabulate(limits)?;
    let period = match period {
        Some(p) if !table.is_period(p) => {
            return Err(CoverError::NotAPeriod {
                modulus: p,
                minimal_period: table.minimal_period(),
            })
        }
        Some(p) => p,
        None => table.minimal_period(),
    };
    let multiplicity = table.multiplicity();
    let minima: Vec<u64> = (0..period).filter(|&x| table.get(x as i64) == multiplicity).collect();
    if minima.len() != 1 {
        return Err(CoverError::MinimumNotUnique {
            value: multiplicity,
            count: minima.len(),
            period,
        });
    }
    if excluded.len() != multiplicity as usize {
        return Err(CoverError::ExcludedSetSize {
            got: excluded.len(),
            expected: multiplicity,
        });
    }
    let sums = SubsetSums::enumerate(&system.moduli(), &[period], limits)?;
    let scale = sums.scale();
    let step = scale / period as u128;
    let mut attained = vec![false; period as usize];
    for &(x, _) in sums.entries() {
        let floor = (x / scale) as i64;
        let frac = x % scale;
        if !excluded.contains(&floor) && frac % step == 0 {
            attained[(frac / step) as usize] = true;
        }
    }
    let missing: Vec<u64> = (0..period).filter(|&r| !attained[r as usize]).collect();
    Ok(Corollary1Report {
        period,
        minimum_at: minima[0],
        multiplicity,
        holds: missing.is_empty(),
        missing,
    })
}
