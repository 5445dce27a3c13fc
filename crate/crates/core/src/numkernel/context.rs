use crate::error::{Error, Result};

/// Smallest working precision accepted, in decimal digits.
pub const MIN_DIGITS: u32 = 30;

/// Working precision used when `TOUCHARD_DIGITS` is unset.
pub const DEFAULT_DIGITS: u32 = 120;

/// Environment variable holding the default working precision.
pub const DIGITS_ENV: &str = "TOUCHARD_DIGITS";

const DEFAULT_MAX_ESCALATIONS: u32 = 5;

// Binary guard bits carried on top of the decimal request.
const GUARD_BITS: u32 = 16;

/// Decimal working precision plus the cap on precision-doubling retries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    max_escalations: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidPrecision {
                digits,
                minimum: MIN_DIGITS,
            });
        }
        Ok(Self {
            digits,
            max_escalations: DEFAULT_MAX_ESCALATIONS,
        })
    }

    /// Reads `TOUCHARD_DIGITS`, falling back to [`DEFAULT_DIGITS`].
    pub fn from_env() -> Result<Self> {
        match std::env::var(DIGITS_ENV) {
            Ok(raw) => {
                let digits = raw.trim().parse::<u32>().map_err(|_| {
                    Error::Parse(format!("{DIGITS_ENV}={raw:?} is not a positive integer"))
                })?;
                Self::new(digits)
            }
            Err(_) => Self::new(DEFAULT_DIGITS),
        }
    }

    pub fn with_max_escalations(self, max_escalations: u32) -> Result<Self> {
        if max_escalations == 0 {
            return Err(Error::Domain("max_escalations must be positive".into()));
        }
        Ok(Self {
            max_escalations,
            ..self
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn max_escalations(&self) -> u32 {
        self.max_escalations
    }

    /// Binary precision handed to MPFR.
    pub fn bits(&self) -> u32 {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// Same escalation cap, `factor` times the digits.
    pub fn scaled(&self, factor: u32) -> Self {
        Self {
            digits: self.digits * factor,
            ..*self
        }
    }

    /// Same escalation cap, `extra` more digits.
    pub fn widened(&self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
            ..*self
        }
    }

    pub(crate) fn max(self, other: Self) -> Self {
        if other.digits > self.digits {
            other
        } else {
            self
        }
    }
}

/// Builds a context, rejecting anything under [`MIN_DIGITS`].
pub fn mk_context(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits)
}
