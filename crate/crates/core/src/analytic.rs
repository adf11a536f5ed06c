//! Probability that a message combined from `c` independently corrupted
//! binary transmissions is decoded wrongly.

use crate::error::{Error, Result};
use std::fmt::Write;

/// Largest `c` the exact binomial sum supports.
pub const MAX_ORACLE_COUNT: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorParams {
    /// Per-transmission error probability.
    pub p: f64,
    /// Number of transmissions combined.
    pub c: u32,
}

impl ErrorParams {
    pub fn new(p: f64, c: u32) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "error probability {p} is outside [0, 1]"
            )));
        }
        if c == 0 {
            return Err(Error::InvalidArgument("transmission count must be at least 1".into()));
        }
        Ok(ErrorParams { p, c })
    }
}

/// `(1 - (1 - 2p)^c) / 2`: an odd number of the `c` transmissions flipped.
pub fn message_error_prob(params: ErrorParams) -> f64 {
    (1.0 - (1.0 - 2.0 * params.p).powi(params.c as i32)) / 2.0
}

/// `1/2 - message_error_prob`, i.e. `(1 - 2p)^c / 2`. Keeps full relative
/// precision where the probability itself rounds to `0.5`.
pub fn margin_to_half(params: ErrorParams) -> f64 {
    (1.0 - 2.0 * params.p).powi(params.c as i32) / 2.0
}

/// Direct sum over odd `i` of `C(c, i) p^i (1-p)^(c-i)`.
pub fn binomial_oracle(params: ErrorParams) -> Result<f64> {
    let ErrorParams { p, c } = params;
    if c > MAX_ORACLE_COUNT {
        return Err(Error::InvalidArgument(format!(
            "binomial sum supports c <= {MAX_ORACLE_COUNT}, got {c}"
        )));
    }
    let mut binom: u128 = 1;
    let mut sum = 0.0;
    for i in 0..=c {
        if i > 0 {
            binom = binom * (c - i + 1) as u128 / i as u128;
        }
        if i % 2 == 1 {
            sum += binom as f64 * p.powi(i as i32) * (1.0 - p).powi((c - i) as i32);
        }
    }
    Ok(sum)
}

/// CSV rows `p,c,probability` over the given grid.
pub fn tabulate(ps: &[f64], cs: &[u32]) -> Result<String> {
    let mut s = String::from("p,c,probability\n");
    for &p in ps {
        for &c in cs {
            let prob = message_error_prob(ErrorParams::new(p, c)?);
            let _ = writeln!(s, "{p},{c},{prob:.12e}");
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pe(p: f64, c: u32) -> f64 {
        message_error_prob(ErrorParams::new(p, c).unwrap())
    }

    #[test]
    fn endpoints() {
        for c in 1..10 {
            assert_eq!(pe(0.0, c), 0.0);
            assert_eq!(pe(0.5, c), 0.5);
        }
    }

    #[test]
    fn hand_values() {
        assert!((pe(0.1, 3) - 0.244).abs() < 1e-12);
        let o = |p, c| binomial_oracle(ErrorParams::new(p, c).unwrap()).unwrap();
        assert!((o(0.1, 3) - 0.244).abs() < 1e-12);
        assert!((o(0.1, 1) - 0.1).abs() < 1e-15);
        assert!((o(0.2, 2) - 0.32).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_sum() {
        for k in 0..25 {
            let p = 0.01 + 0.02 * k as f64;
            for c in 1..=32 {
                let o = binomial_oracle(ErrorParams::new(p, c).unwrap()).unwrap();
                assert!((pe(p, c) - o).abs() <= 1e-12, "p={p} c={c}");
            }
        }
    }

    #[test]
    fn increment_in_c() {
        for p in [0.01, 0.1, 0.3, 0.49] {
            for c in 1..40 {
                let d = pe(p, c + 1) - pe(p, c);
                assert!(d >= 0.0);
                assert!((d - (1.0 - 2.0 * p).powi(c as i32) * p).abs() < 1e-14);
                let m = |c| margin_to_half(ErrorParams::new(p, c).unwrap());
                assert!(m(c + 1) < m(c));
                assert!((m(c) - m(c + 1) - (1.0 - 2.0 * p).powi(c as i32) * p).abs() <= 1e-15 * m(c));
            }
        }
    }

    #[test]
    fn increasing_in_p() {
        for c in 1..10 {
            let mut prev = -1.0;
            for k in 0..=50 {
                let v = pe(k as f64 / 100.0, c);
                assert!(v >= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ErrorParams::new(-0.1, 1).is_err());
        assert!(ErrorParams::new(1.1, 1).is_err());
        assert!(ErrorParams::new(0.1, 0).is_err());
        assert!(binomial_oracle(ErrorParams::new(0.1, 65).unwrap()).is_err());
    }

    #[test]
    fn table_rows() {
        let t = tabulate(&[0.1], &[1, 3]).unwrap();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "p,c,probability");
        assert!(lines[2].starts_with("0.1,3,2.44"));
    }
}
