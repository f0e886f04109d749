//! Resource guards shared by enumeration-heavy operations.

use crate::error::{Error, Result};

/// Environment variable that overrides [`Limits::max_enum`].
pub const MAX_ENUM_ENV: &str = "SIDON_LATTICE_MAX_ENUM";

pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of points/cosets any single enumeration may visit.
    pub max_enum: u64,
    /// Maximum finite-field order `p^m`.
    pub field_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: DEFAULT_MAX_ENUM,
            field_bound: DEFAULT_FIELD_BOUND,
        }
    }
}

impl Limits {
    /// Defaults, with `max_enum` taken from `SIDON_LATTICE_MAX_ENUM` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(MAX_ENUM_ENV) {
            limits.max_enum = raw.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{MAX_ENUM_ENV}={raw:?} is not a positive integer"))
            })?;
        }
        Ok(limits)
    }

    pub(crate) fn check_enum(&self, requested: impl Into<u128>) -> Result<()> {
        let requested = requested.into();
        if requested > self.max_enum as u128 {
            return Err(Error::EnumerationLimit {
                requested: requested.to_string(),
                limit: self.max_enum,
            });
        }
        Ok(())
    }
}
