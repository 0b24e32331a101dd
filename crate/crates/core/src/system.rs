//! Residue classes, finite systems of them, and the covering function.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::divisors;
use crate::error::{CoverError, Result};
use crate::Limits;

/// The residue class `a(n) = { x : x ≡ a (mod n) }`, stored with `0 <= a < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResidueClass {
    residue: u64,
    modulus: u64,
}

impl ResidueClass {
    /// Builds `a(n)`, reducing `a` into `[0, n)`.
    pub fn new(residue: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(CoverError::InvalidModulus(0));
        }
        let residue = (residue as i128).rem_euclid(modulus as i128) as u64;
        Ok(ResidueClass { residue, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, x: i64) -> bool {
        (x as i128 - self.residue as i128).rem_euclid(self.modulus as i128) == 0
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.residue, self.modulus)
    }
}

/// An ordered list of residue classes. Indices in the public API are 1-based
/// and duplicates are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CoverSystem {
    classes: Vec<ResidueClass>,
}

impl CoverSystem {
    pub fn new(classes: Vec<ResidueClass>) -> Self {
        CoverSystem { classes }
    }

    /// Convenience constructor from `(residue, modulus)` pairs.
    pub fn from_pairs(pairs: &[(i64, u64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(a, n)| ResidueClass::new(a, n))
            .collect::<Result<Vec<_>>>()
            .map(CoverSystem::new)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ResidueClass] {
        &self.classes
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.modulus).collect()
    }

    pub fn push(&mut self, class: ResidueClass) {
        self.classes.push(class);
    }

    /// Class at 1-based `index`.
    pub fn class(&self, index: usize) -> Result<&ResidueClass> {
        self.check_index(index)?;
        Ok(&self.classes[index - 1])
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.classes.len() {
            return Err(CoverError::BadIndex {
                index,
                len: self.classes.len(),
            });
        }
        Ok(())
    }

    /// The system with the class at 1-based `index` removed.
    pub fn without(&self, index: usize) -> Result<CoverSystem> {
        self.check_index(index)?;
        let mut classes = self.classes.clone();
        classes.remove(index - 1);
        Ok(CoverSystem { classes })
    }

    /// `w_A(x)`: how many classes contain `x`.
    pub fn covering_count(&self, x: i64) -> u32 {
        self.classes.iter().filter(|c| c.contains(x)).count() as u32
    }

    /// `N_A`, the lcm of the moduli, in arbitrary precision.
    pub fn lcm(&self) -> Result<BigUint> {
        if self.classes.is_empty() {
            return Err(CoverError::NoModuli);
        }
        Ok(self
            .classes
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.modulus))))
    }

    /// Tabulates the covering function over one period, subject to `limits.table`.
    pub fn tabulate(&self, limits: &Limits) -> Result<CoveringTable> {
        CoveringTable::build(self, limits.table)
    }

    pub fn covering_table(&self) -> Result<Vec<u32>> {
        Ok(self.tabulate(&Limits::default())?.values)
    }

    pub fn covering_multiplicity(&self) -> Result<u32> {
        Ok(self.tabulate(&Limits::default())?.multiplicity())
    }

    pub fn minimal_period(&self) -> Result<u64> {
        Ok(self.tabulate(&Limits::default())?.minimal_period())
    }

    pub fn is_m_cover(&self, m: u32) -> Result<bool> {
        Ok(self.tabulate(&Limits::default())?.multiplicity() >= m)
    }

    pub fn irredundant_indices(&self, m: u32) -> Result<Vec<usize>> {
        self.tabulate(&Limits::default())?.irredundant_indices(self, m)
    }

    /// Full analysis record. Irredundancy is reported for `m` when given,
    /// otherwise for `m(A)` when that is positive.
    pub fn report(&self, m: Option<u32>, limits: &Limits) -> Result<CoverReport> {
        let table = self.tabulate(limits)?;
        let multiplicity = table.multiplicity();
        let m = m.or((multiplicity > 0).then_some(multiplicity));
        let irredundant = match m {
            Some(m) if m <= multiplicity => Some(table.irredundant_indices(self, m)?),
            _ => None,
        };
        Ok(CoverReport {
            lcm: table.lcm(),
            multiplicity,
            minimal_period: table.minimal_period(),
            m,
            irredundant,
            table: table.values,
        })
    }
}

impl fmt::Display for CoverSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// `w_A(0), ..., w_A(N_A - 1)`. The empty system tabulates as `[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringTable {
    values: Vec<u32>,
}

impl CoveringTable {
    fn build(system: &CoverSystem, cap: u64) -> Result<Self> {
        let lcm = if system.is_empty() {
            BigUint::one()
        } else {
            system.lcm()?
        };
        let len = match lcm.to_u64() {
            Some(len) if len <= cap => len as usize,
            _ => return Err(CoverError::PeriodTooLarge { lcm, cap }),
        };
        let mut values = vec![0u32; len];
        // stamp each class as an arithmetic progression over [0, N_A)
        for class in system.classes() {
            let step = class.modulus as usize;
            let mut x = class.residue as usize;
            while x < len {
                values[x] += 1;
                x += step;
            }
        }
        Ok(CoveringTable { values })
    }

    pub fn lcm(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// `w_A(x)` for any integer `x`, by periodicity.
    pub fn get(&self, x: i64) -> u32 {
        let idx = (x as i128).rem_euclid(self.values.len() as i128) as usize;
        self.values[idx]
    }

    pub fn multiplicity(&self) -> u32 {
        self.values.iter().copied().min().unwrap_or(0)
    }

    pub fn is_constant(&self, m: u32) -> bool {
        self.values.iter().all(|&w| w == m)
    }

    fn shift_invariant(&self, d: usize) -> bool {
        let len = self.values.len();
        (0..len).all(|x| self.values[x] == self.values[(x + d) % len])
    }

    /// Smallest positive period, searched among the divisors of `N_A`.
    pub fn minimal_period(&self) -> u64 {
        let len = self.lcm();
        divisors(len)
            .into_iter()
            .find(|&d| self.shift_invariant(d as usize))
            .unwrap_or(len)
    }

    /// Whether `d` is a period of `w_A`, i.e. the minimal period divides `d`.
    pub fn is_period(&self, d: u64) -> bool {
        d > 0 && d.is_multiple_of(self.minimal_period())
    }

    /// Indices `t` such that dropping class `t` leaves something that is no
    /// longer an m-cover. Fails if the system is not an m-cover to begin with.
    pub fn irredundant_indices(&self, system: &CoverSystem, m: u32) -> Result<Vec<usize>> {
        let actual = self.multiplicity();
        if actual < m {
            return Err(CoverError::NotMCover { required: m, actual });
        }
        let len = self.values.len();
        Ok(system
            .classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                (c.residue as usize..len)
                    .step_by(c.modulus as usize)
                    .any(|x| self.values[x] == m)
            })
            .map(|(i, _)| i + 1)
            .collect())
    }
}

/// Analysis record: `N_A`, the covering table, `m(A)`, the minimal period and,
/// for the chosen `m`, the irredundant classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub lcm: u64,
    pub table: Vec<u32>,
    pub multiplicity: u32,
    pub minimal_period: u64,
    pub m: Option<u32>,
    pub irredundant: Option<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gensearch::erdos_example;

    fn sys(pairs: &[(i64, u64)]) -> CoverSystem {
        CoverSystem::from_pairs(pairs).unwrap()
    }

    #[test]
    fn normalizes_residues() {
        let c = ResidueClass::new(-1, 4).unwrap();
        assert_eq!(c.residue(), 3);
        assert!(c.contains(-5));
        assert!(c.contains(7));
        assert!(!c.contains(0));
        assert_eq!(ResidueClass::new(3, 0), Err(CoverError::InvalidModulus(0)));
    }

    #[test]
    fn covering_count_examples() {
        let b = erdos_example();
        assert_eq!(b.covering_count(0), 2);
        assert_eq!(b.covering_count(1), 1);
        assert_eq!(CoverSystem::default().covering_count(17), 0);
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(erdos_example().lcm().unwrap(), BigUint::from(12u32));
        assert_eq!(sys(&[(0, 1)]).lcm().unwrap(), BigUint::from(1u32));
        assert_eq!(sys(&[(0, 4), (1, 6)]).lcm().unwrap(), BigUint::from(12u32));
        assert_eq!(CoverSystem::default().lcm(), Err(CoverError::NoModuli));
    }

    #[test]
    fn lcm_is_arbitrary_precision() {
        let primes = [
            1_000_000_007u64,
            1_000_000_009,
            998_244_353,
            1_000_000_021,
            1_000_000_033,
        ];
        let s = CoverSystem::new(primes.iter().map(|&p| ResidueClass::new(0, p).unwrap()).collect());
        let expected = primes.iter().fold(BigUint::one(), |acc, &p| acc * p);
        assert_eq!(s.lcm().unwrap(), expected);
        assert!(matches!(s.covering_table(), Err(CoverError::PeriodTooLarge { .. })));
        // pointwise evaluation has no cap
        assert_eq!(s.covering_count(0), 5);
    }

    #[test]
    fn covering_table_examples() {
        assert_eq!(
            erdos_example().covering_table().unwrap(),
            vec![2, 1, 1, 1, 1, 2, 2, 1, 1, 2, 1, 1]
        );
        assert_eq!(sys(&[(0, 1)]).covering_table().unwrap(), vec![1]);
        assert_eq!(sys(&[(0, 2)]).covering_table().unwrap(), vec![1, 0]);
        assert_eq!(CoverSystem::default().covering_table().unwrap(), vec![0]);
    }

    #[test]
    fn table_cap_is_configurable() {
        let limits = Limits {
            table: 11,
            ..Limits::default()
        };
        assert!(matches!(
            erdos_example().tabulate(&limits),
            Err(CoverError::PeriodTooLarge { cap: 11, .. })
        ));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(erdos_example().covering_multiplicity().unwrap(), 1);
        assert_eq!(sys(&[(0, 1), (0, 2), (1, 2)]).covering_multiplicity().unwrap(), 2);
        assert_eq!(sys(&[(0, 2)]).covering_multiplicity().unwrap(), 0);
        assert_eq!(CoverSystem::default().covering_multiplicity().unwrap(), 0);
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(erdos_example().minimal_period().unwrap(), 12);
        assert_eq!(sys(&[(0, 2), (1, 2)]).minimal_period().unwrap(), 1);
        assert_eq!(sys(&[(0, 1)]).minimal_period().unwrap(), 1);
        // {0(2), 0(4), 2(4)}: w = 2 on evens, 0 on odds
        assert_eq!(sys(&[(0, 2), (0, 4), (2, 4)]).minimal_period().unwrap(), 2);
    }

    #[test]
    fn m_cover_examples() {
        let b = erdos_example();
        assert!(b.is_m_cover(1).unwrap());
        assert!(!b.is_m_cover(2).unwrap());
        assert!(!sys(&[(0, 2)]).is_m_cover(1).unwrap());
    }

    #[test]
    fn irredundant_examples() {
        assert_eq!(
            sys(&[(0, 2), (1, 2), (2, 3)]).irredundant_indices(1).unwrap(),
            vec![1, 2]
        );
        assert_eq!(erdos_example().irredundant_indices(1).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(sys(&[(0, 1)]).irredundant_indices(1).unwrap(), vec![1]);
        assert_eq!(
            sys(&[(0, 2)]).irredundant_indices(1),
            Err(CoverError::NotMCover { required: 1, actual: 0 })
        );
    }

    #[test]
    fn irredundant_matches_definition() {
        let s = sys(&[(0, 2), (1, 2), (2, 3), (0, 3), (1, 6), (5, 6)]);
        let m = s.covering_multiplicity().unwrap();
        let fast = s.irredundant_indices(m).unwrap();
        let slow: Vec<usize> = (1..=s.len())
            .filter(|&t| !s.without(t).unwrap().is_m_cover(m).unwrap())
            .collect();
        assert_eq!(fast, slow);
    }

    #[test]
    fn report_for_erdos_example() {
        let r = erdos_example().report(None, &Limits::default()).unwrap();
        assert_eq!(r.lcm, 12);
        assert_eq!(r.multiplicity, 1);
        assert_eq!(r.minimal_period, 12);
        assert_eq!(r.irredundant, Some(vec![1, 2, 3, 4, 5]));
    }

    #[test]
    fn bad_index() {
        let b = erdos_example();
        assert_eq!(b.class(0), Err(CoverError::BadIndex { index: 0, len: 5 }));
        assert_eq!(b.class(6), Err(CoverError::BadIndex { index: 6, len: 5 }));
        assert_eq!(b.class(5).unwrap().to_string(), "7(12)");
    }
}
