//! Root-of-unity sums and products attached to a system of residue classes.
//!
//! Every exponent is carried as an exact fraction of a turn ([`UnityPhase`])
//! and only converted to a complex number at the very end, so `e^{2πi·0}` is
//! exactly `1` and cancellations that should be exact are exact. The sums and
//! products themselves are compared in `f64` against a tolerance.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{binom, lcm_all};
use crate::error::{CoverError, Result};
use crate::fraction::Fraction;
use crate::system::CoverSystem;
use crate::unitfrac::check_irredundant_period;
use crate::Limits;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A point `e^{2πi·value}` on the unit circle with `value ∈ [0, 1)` exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnityPhase {
    value: Fraction,
}

impl UnityPhase {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        UnityPhase {
            value: Fraction::new(num, den).fract(),
        }
    }

    pub fn zero() -> Self {
        UnityPhase {
            value: Fraction::zero(),
        }
    }

    pub fn value(&self) -> &Fraction {
        &self.value
    }

    pub fn add(&self, other: &UnityPhase) -> UnityPhase {
        UnityPhase {
            value: (&self.value + &other.value).fract(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.value == Fraction::zero() {
            return Complex64::new(1.0, 0.0);
        }
        let turns = self.value.numer().to_f64().unwrap_or(0.0) / self.value.denom().to_f64().unwrap_or(1.0);
        Complex64::from_polar(1.0, TAU * turns)
    }
}

/// Polynomial in `vars` variables with complex coefficients, stored sparsely
/// by exponent vector. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparsePolynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl SparsePolynomial {
    pub fn new(vars: usize) -> Self {
        SparsePolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Complex64) -> Self {
        let mut p = SparsePolynomial::new(vars);
        p.add_term(vec![0; vars], c).expect("length matches");
        p
    }

    /// `c · Π_{s∈indices} x_s` for 1-based `indices`.
    pub fn squarefree_monomial(vars: usize, indices: &[usize], c: Complex64) -> Result<Self> {
        let mut exps = vec![0; vars];
        for &s in indices {
            if s == 0 || s > vars {
                return Err(CoverError::BadIndex { index: s, len: vars });
            }
            exps[s - 1] += 1;
        }
        let mut p = SparsePolynomial::new(vars);
        p.add_term(exps, c)?;
        Ok(p)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Complex64) -> Result<()> {
        if exponents.len() != self.vars {
            return Err(CoverError::LengthMismatch {
                expected: self.vars,
                got: exponents.len(),
            });
        }
        let entry = self.terms.entry(exponents).or_insert(Complex64::zero());
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    /// Largest total degree of a stored term; `0` for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Complex64 {
        self.terms.get(exponents).copied().unwrap_or(Complex64::zero())
    }

    /// Value at the 0/1 point whose coordinate `s` is `1` iff bit `s` of `mask` is set.
    pub fn eval_indicator(&self, mask: u64) -> Complex64 {
        self.terms
            .iter()
            .filter(|(e, _)| e.iter().enumerate().all(|(s, &j)| j == 0 || mask >> s & 1 == 1))
            .map(|(_, &c)| c)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    /// Left and right sides as `(re, im)`.
    pub lhs: (f64, f64),
    pub rhs: (f64, f64),
    /// `|lhs - rhs| / (1 + |rhs|)`.
    pub residual: f64,
    pub pass: bool,
}

impl IdentityCheck {
    fn compare(lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let residual = (lhs - rhs).norm() / (1.0 + rhs.norm());
        IdentityCheck {
            lhs: (lhs.re, lhs.im),
            rhs: (rhs.re, rhs.im),
            residual,
            pass: residual <= tol,
        }
    }
}

fn check_enumerable(k: usize, limits: &Limits) -> Result<()> {
    if k > limits.classes {
        return Err(CoverError::TooManyClasses {
            count: k,
            cap: limits.classes,
        });
    }
    Ok(())
}

/// Phase of `(a - z)·mult / n` in turns, exact.
fn class_phase(a: u64, n: u64, z: i64, mult: i64) -> UnityPhase {
    let num = (a as i128 - z as i128).rem_euclid(n as i128) * mult as i128;
    UnityPhase::new(BigInt::from(num), BigInt::from(n))
}

/// Phases `(a_s - z_s)·mult_s / n_s` as numerators over a common scale, so a
/// subset's total phase is one modular sum.
struct ScaledPhases {
    scale: u128,
    numerators: Vec<u128>,
}

impl ScaledPhases {
    fn new(terms: impl Iterator<Item = (u64, u64, i64, i64)> + Clone) -> Result<Self> {
        let scale = lcm_all(terms.clone().map(|(_, n, _, _)| n)).ok_or(CoverError::ScaleOverflow)?;
        let numerators = terms
            .map(|(a, n, z, mult)| {
                let n = n as i128;
                let turns = ((a as i128 - z as i128).rem_euclid(n) * (mult as i128).rem_euclid(n)).rem_euclid(n);
                turns as u128 * (scale / n as u128)
            })
            .collect();
        Ok(ScaledPhases { scale, numerators })
    }

    fn subset(&self, members: impl Iterator<Item = usize>) -> UnityPhase {
        let total = members.fold(0u128, |acc, s| (acc + self.numerators[s]) % self.scale);
        UnityPhase::new(BigInt::from(total), BigInt::from(self.scale))
    }
}

/// Compares the alternating subset sum
/// `Σ_I (-1)^{|I|} f(1_I) e^{2πi Σ_{s∈I} (a_s - z) m_s / n_s}` with
/// `(-1)^k c(I_z) Π_{s∉I_z} (e^{2πi (a_s - z) m_s / n_s} - 1)`, where
/// `I_z` is the set of classes containing `z` and `c(I_z)` the coefficient of
/// `Π_{s∈I_z} x_s` in `f`. Needs `deg f <= m(A)`.
pub fn lemma1_check(
    system: &CoverSystem,
    mults: &[i64],
    f: &SparsePolynomial,
    z: i64,
    tol: f64,
    limits: &Limits,
) -> Result<IdentityCheck> {
    let k = system.len();
    if mults.len() != k {
        return Err(CoverError::LengthMismatch {
            expected: k,
            got: mults.len(),
        });
    }
    if f.vars() != k {
        return Err(CoverError::LengthMismatch {
            expected: k,
            got: f.vars(),
        });
    }
    check_enumerable(k, limits)?;
    let multiplicity = system.tabulate(limits)?.multiplicity();
    if f.degree() > multiplicity {
        return Err(CoverError::DegreeExceedsMultiplicity {
            degree: f.degree(),
            multiplicity,
        });
    }
    lemma1_sides(system, mults, f, z, tol)
}

/// Both sides of the alternating-sum identity without the degree gate. The
/// equality still holds whenever `deg f <= w_A(z)`; callers pass lengths
/// matching the system.
pub fn lemma1_sides(
    system: &CoverSystem,
    mults: &[i64],
    f: &SparsePolynomial,
    z: i64,
    tol: f64,
) -> Result<IdentityCheck> {
    let k = system.len();
    let scaled = ScaledPhases::new(
        system
            .classes()
            .iter()
            .zip(mults)
            .map(|(c, &ms)| (c.residue(), c.modulus(), z, ms)),
    )?;
    let phases: Vec<UnityPhase> = system
        .classes()
        .iter()
        .zip(mults)
        .map(|(c, &ms)| class_phase(c.residue(), c.modulus(), z, ms))
        .collect();

    let mut lhs = Complex64::zero();
    for mask in 0..1u64 << k {
        let value = f.eval_indicator(mask);
        if value.is_zero() {
            continue;
        }
        let phase = scaled.subset((0..k).filter(|&s| mask >> s & 1 == 1));
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        lhs += value * phase.to_complex() * sign;
    }

    let in_iz: Vec<bool> = system.classes().iter().map(|c| c.contains(z)).collect();
    let iz_exponents: Vec<u32> = in_iz.iter().map(|&b| b as u32).collect();
    let mut rhs = f.coefficient(&iz_exponents);
    if k % 2 == 1 {
        rhs = -rhs;
    }
    for s in (0..k).filter(|&s| !in_iz[s]) {
        rhs *= phases[s].to_complex() - 1.0;
    }
    Ok(IdentityCheck::compare(lhs, rhs, tol))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstancyReport {
    /// Distinct `α` values that occurred.
    pub alphas: Vec<Fraction>,
    /// `max_α max_r |C_r(α) - C_0(α)|`.
    pub max_deviation: f64,
    pub pass: bool,
}

/// Groups the subsets `I ⊆ [1,k] \ {t}` by `{Σ m_s/n_s} = (α + r)/n_t` and
/// checks that `C_r(α) = Σ (-1)^{|I|} binom(⌊Σ m_s/n_s⌋, m-1)
/// e^{2πi Σ (a_s - a_t) m_s/n_s}` does not depend on `r`.
///
/// `mults` lists `m_s` for the classes other than `t`, in order.
pub fn lemma2_constancy_check(
    system: &CoverSystem,
    m: u32,
    t: usize,
    mults: &[u64],
    tol: f64,
    limits: &Limits,
) -> Result<ConstancyReport> {
    if m == 0 {
        return Err(CoverError::InvalidArgument("m must be positive".into()));
    }
    check_irredundant_period(system, m, t, false, limits)?;
    let k = system.len();
    if mults.len() != k - 1 {
        return Err(CoverError::LengthMismatch {
            expected: k - 1,
            got: mults.len(),
        });
    }
    if mults.contains(&0) {
        return Err(CoverError::InvalidArgument("multipliers must be positive".into()));
    }
    check_enumerable(k - 1, limits)?;

    let target = system.classes()[t - 1];
    let nt = target.modulus() as u128;
    let others: Vec<_> = system
        .classes()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != t)
        .map(|(_, c)| *c)
        .collect();
    let scale = lcm_all(system.moduli()).ok_or(CoverError::ScaleOverflow)?;
    let value_weights: Vec<u128> = others
        .iter()
        .zip(mults)
        .map(|(c, &ms)| (scale / c.modulus() as u128).checked_mul(ms as u128))
        .collect::<Option<_>>()
        .ok_or(CoverError::ScaleOverflow)?;
    let phases = ScaledPhases::new(
        others
            .iter()
            .zip(mults)
            .map(|(c, &ms)| (c.residue(), c.modulus(), target.residue() as i64, ms as i64)),
    )?;

    let mut groups: BTreeMap<Fraction, Vec<Complex64>> = BTreeMap::new();
    for mask in 0..1u64 << others.len() {
        let members = (0..others.len()).filter(|&s| mask >> s & 1 == 1);
        let total: u128 = members.clone().map(|s| value_weights[s]).sum();
        let floor = (total / scale) as u64;
        let scaled_frac = (total % scale) * nt;
        let r = (scaled_frac / scale) as usize;
        let alpha = Fraction::new(scaled_frac % scale, scale);
        let phase = phases.subset(members);
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let weight = binom(floor, m as u64 - 1) as f64 * sign;
        let row = groups
            .entry(alpha)
            .or_insert_with(|| vec![Complex64::zero(); nt as usize]);
        row[r] += phase.to_complex() * weight;
    }

    let max_deviation = groups
        .values()
        .flat_map(|row| row.iter().map(move |c| (c - row[0]).norm()))
        .fold(0.0, f64::max);
    Ok(ConstancyReport {
        alphas: groups.into_keys().collect(),
        max_deviation,
        pass: max_deviation <= tol,
    })
}

/// For `z` in the irredundant class `t` (whose modulus is a period of `w_A`),
/// compares `Π_{s∉I_z} (1 - e^{2πi (a_s - z)/n_s})` with
/// `Π_{s∈I_z} n_s · Π_{j=1}^{n_t} (1 - e^{2πi (j - a_t)/n_t})^{w_A(j) - m}`.
pub fn lemma3_check(
    system: &CoverSystem,
    m: u32,
    t: usize,
    z: i64,
    tol: f64,
    limits: &Limits,
) -> Result<IdentityCheck> {
    let table = check_irredundant_period(system, m, t, true, limits)?;
    let target = system.classes()[t - 1];
    if !target.contains(z) {
        return Err(CoverError::NotInClass { z, index: t });
    }
    let mut lhs = Complex64::new(1.0, 0.0);
    let mut rhs = Complex64::new(1.0, 0.0);
    for c in system.classes() {
        if c.contains(z) {
            rhs *= c.modulus() as f64;
        } else {
            lhs *= 1.0 - class_phase(c.residue(), c.modulus(), z, 1).to_complex();
        }
    }
    let nt = target.modulus();
    for j in 1..=nt {
        let exponent = table.get(j as i64) as i64 - m as i64;
        let base = 1.0 - UnityPhase::new(j as i64 - target.residue() as i64, nt).to_complex();
        if base.is_zero() {
            // only at j ≡ a_t, where w_A(j) = m under the hypotheses
            if exponent != 0 {
                return Err(CoverError::VanishingFactor { j, exponent });
            }
            continue;
        }
        rhs *= base.powi(exponent as i32);
    }
    Ok(IdentityCheck::compare(lhs, rhs, tol))
}

/// Sample points for [`product_identity_check`], all inside the unit disk.
pub fn default_samples() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(-1.0 / 3.0, 0.0),
        Complex64::new(0.0, 0.7),
        Complex64::from_polar(0.9, TAU / 7.0),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductIdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Compares `Π_s (1 - y^{N/n_s} e^{2πi a_s/n_s})` with
/// `Π_{j=1}^{n_t} (1 - y^{N/n_t} e^{2πi j/n_t})^{w_A(j)}` at each sample `y`,
/// `N = N_A`. The equality needs `n_t` to be a period of `w_A`; with
/// `require_period = false` that gate is skipped, which is how a failing
/// instance can be observed.
pub fn product_identity_check(
    system: &CoverSystem,
    t: usize,
    samples: &[Complex64],
    tol: f64,
    require_period: bool,
    limits: &Limits,
) -> Result<ProductIdentityReport> {
    let target = *system.class(t)?;
    let table = system.tabulate(limits)?;
    let nt = target.modulus();
    if require_period && !table.is_period(nt) {
        return Err(CoverError::NotAPeriod {
            modulus: nt,
            minimal_period: table.minimal_period(),
        });
    }
    let lcm = table.lcm();
    let power = |n: u64| -> Result<u32> { u32::try_from(lcm / n).map_err(|_| CoverError::ScaleOverflow) };
    let checks = samples
        .iter()
        .map(|&y| -> Result<IdentityCheck> {
            let mut lhs = Complex64::new(1.0, 0.0);
            for c in system.classes() {
                let root = UnityPhase::new(c.residue(), c.modulus()).to_complex();
                lhs *= 1.0 - y.powu(power(c.modulus())?) * root;
            }
            let yt = y.powu(power(nt)?);
            let mut rhs = Complex64::new(1.0, 0.0);
            for j in 1..=nt {
                let w = table.get(j as i64);
                if w > 0 {
                    rhs *= (1.0 - yt * UnityPhase::new(j, nt).to_complex()).powu(w);
                }
            }
            Ok(IdentityCheck::compare(lhs, rhs, tol))
        })
        .collect::<Result<Vec<_>>>()?;
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(ProductIdentityReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
        max_residual,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AverageEquality {
    /// `(1/N_A) Σ_{x<N_A} w_A(x)`.
    pub mean: Fraction,
    /// `Σ_s 1/n_s`.
    pub reciprocal_sum: Fraction,
    pub holds: bool,
}

/// Mean of the covering function over a period versus `Σ 1/n_s`, exactly.
pub fn average_equality_check(system: &CoverSystem, limits: &Limits) -> Result<AverageEquality> {
    let table = system.tabulate(limits)?;
    let total: u64 = table.values().iter().map(|&w| w as u64).sum();
    let mean = Fraction::new(total, table.lcm());
    let reciprocal_sum: Fraction = system.moduli().into_iter().map(Fraction::unit).sum();
    Ok(AverageEquality {
        holds: mean == reciprocal_sum,
        mean,
        reciprocal_sum,
    })
}
