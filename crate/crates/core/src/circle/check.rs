use std::fmt::Display;

use serde::Serialize;

/// Relative slack allowed when a bound is compared through `f64` magnitudes.
pub const REL_TOL: f64 = 1e-9;

/// One inequality or identity, as reported: both sides and the verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    /// `lhs <= rhs` between exact values.
    pub fn exact_le<T: Display + PartialOrd>(name: impl Into<String>, lhs: &T, rhs: &T) -> Check {
        Check {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs <= rhs,
        }
    }

    /// `lhs == rhs` between exact values.
    pub fn exact_eq<T: Display + PartialEq>(name: impl Into<String>, lhs: &T, rhs: &T) -> Check {
        Check {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }

    /// `lhs <= rhs` in double precision; within `REL_TOL` of equality passes.
    pub fn approx_le(name: impl Into<String>, lhs: f64, rhs: f64) -> Check {
        let slack = REL_TOL * lhs.abs().max(rhs.abs());
        Check {
            name: name.into(),
            lhs: format!("{lhs:.12e}"),
            rhs: format!("{rhs:.12e}"),
            pass: lhs <= rhs + slack,
        }
    }

    /// `exp(log_lhs) <= exp(log_rhs)` compared on the log scale, so that huge
    /// powers do not overflow; reported sides are the exponentiated values.
    pub fn log_le(name: impl Into<String>, log_lhs: f64, log_rhs: f64) -> Check {
        Check {
            name: name.into(),
            lhs: format!("{:.12e}", log_lhs.exp()),
            rhs: format!("{:.12e}", log_rhs.exp()),
            pass: log_lhs == f64::NEG_INFINITY || log_lhs <= log_rhs + REL_TOL.ln_1p(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_admits_equality() {
        assert!(Check::approx_le("eq", 1.0 + 1e-12, 1.0).pass);
        assert!(!Check::approx_le("gt", 1.0 + 1e-6, 1.0).pass);
        assert!(Check::log_le("log", 10.0, 10.0).pass);
        assert!(Check::log_le("zero", f64::NEG_INFINITY, f64::NEG_INFINITY).pass);
        assert!(!Check::log_le("gt", 10.0 + 1e-6, 10.0).pass);
        assert!(Check::exact_le("int", &3u32, &3u32).pass);
    }
}
