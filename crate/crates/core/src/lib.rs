//! Finite systems of residue classes `a_s(n_s)` and the arithmetic around
//! their covering function `w_A(x) = |{s : x ≡ a_s (mod n_s)}|`.
//!
//! - [`system`]: classes, systems, covering tables, multiplicity, periods and
//!   irredundant classes.
//! - [`unitfrac`]: exact subset sums of `1/n_s` and the subset-sum statements
//!   about m-covers (integer parts per fractional class, the binomial bound for
//!   exact m-covers, the unique-minimum corollary).
//! - [`identities`]: root-of-unity sums and products evaluated with exact
//!   phases and compared in floating point.
//! - [`localglobal`]: finite-window certificates for (exact) m-covers.
//! - [`gensearch`]: the classical cover `{0(2), 0(3), 1(4), 5(6), 7(12)}`,
//!   class splitting, seeded random systems and exhaustive residue search.
//!
//! Everything is a pure function of its inputs.

pub mod arith;
pub mod error;
pub mod format;
pub mod fraction;
pub mod gensearch;
pub mod identities;
pub mod localglobal;
pub mod system;
pub mod unitfrac;

pub use error::{CoverError, Result};
pub use format::{parse_system, write_system};
pub use fraction::Fraction;
pub use system::{CoverReport, CoverSystem, CoveringTable, ResidueClass};

/// Size guards for the exhaustive parts of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `N_A` for which the covering function is tabulated.
    pub table: u64,
    /// Most unit fractions a subset-sum enumeration accepts.
    pub classes: usize,
    /// Above this many fractions enumeration switches to meet-in-the-middle.
    pub gray_code_max: usize,
    /// Largest number of residue assignments `find_covers` will scan.
    pub search: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table: 10_000_000,
            classes: 30,
            gray_code_max: 24,
            search: 10_000_000,
        }
    }
}
