//! The extremal families.

use crate::error::{Error, Result};
use crate::lattice::{full_mask, level_family, popcount, Mask, SetFamily, MAX_ENUM_N};

/// Which pair of middle levels to take for even `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MiddleVariant {
    /// Levels `⌊n/2⌋` and `⌊n/2⌋+1`.
    #[default]
    Low,
    /// Levels `⌈n/2⌉-1` and `⌈n/2⌉`.
    High,
}

impl std::str::FromStr for MiddleVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "low" => Ok(MiddleVariant::Low),
            "high" => Ok(MiddleVariant::High),
            _ => Err(Error::BadParameter(format!("variant must be low or high, got `{s}`"))),
        }
    }
}

fn need(op: &'static str, n: usize, min: usize) -> Result<()> {
    crate::error::check_dimension(op, n, min, MAX_ENUM_N)
}

/// The two middle levels: the butterfly-free family with the most 2-chains.
pub fn middle_two_levels(n: usize, variant: MiddleVariant) -> Result<SetFamily> {
    need("middle_two_levels", n, 2)?;
    let lo = match variant {
        MiddleVariant::Low => n / 2,
        MiddleVariant::High => n.div_ceil(2) - 1,
    };
    level_family(n, &[lo, lo + 1])
}

/// `{∅} ∪ ([n] choose ⌊n/2⌋)`. At n = 1 the middle level is taken as `{1}`
/// so the family still has its single containment.
pub fn n_free_construction(n: usize) -> Result<SetFamily> {
    need("n_free_construction", n, 1)?;
    level_family(n, &[0, (n / 2).max(1)])
}

/// Sets whose trace on `[n-2]` has exactly `⌊(n-2)/2⌋` elements.
pub fn p5_construction(n: usize) -> Result<SetFamily> {
    need("p5_construction", n, 4)?;
    let trace = full_mask(n - 2);
    let want = (n - 2) / 2;
    let masks: Vec<Mask> = (0..=full_mask(n))
        .filter(|&m| popcount(m & trace) == want)
        .collect();
    SetFamily::new(n, masks)
}

/// `{∅} ∪ ([n] choose ⌊n/2⌋) ∪ {[n]}`.
pub fn p6_construction(n: usize) -> Result<SetFamily> {
    need("p6_construction", n, 2)?;
    level_family(n, &[0, n / 2, n])
}

/// Names accepted by [`construct`].
pub const CONSTRUCTION_NAMES: &[&str] = &["middle", "nfree", "p5", "p6"];

/// Construction by name, for the command line.
pub fn construct(name: &str, n: usize, variant: MiddleVariant) -> Result<SetFamily> {
    match name.to_ascii_lowercase().as_str() {
        "middle" | "middle_two_levels" | "butterfly" => middle_two_levels(n, variant),
        "nfree" | "n_free" | "n" => n_free_construction(n),
        "p5" => p5_construction(n),
        "p6" => p6_construction(n),
        _ => Err(Error::BadParameter(format!(
            "unknown construction `{name}` (expected one of {CONSTRUCTION_NAMES:?})"
        ))),
    }
}
