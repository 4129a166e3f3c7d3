//! Flat `key = value` run configuration shared by the verification
//! drivers and the command line front end.
//!
//! ```text
//! # sampling
//! n = 16384
//! x = 64
//! k = 64
//! seed = 7
//! tolerance.locality = 1e-6
//! ```
//!
//! Inner-function specifications use the same shape with a complex list:
//!
//! ```text
//! zeros = [0+1i, 0.5+2i]
//! t = 0.3
//! sign = +1
//! ```

use crate::inner::{InnerError, SymmetricInnerFunction};
use crate::real::C;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {0}: expected `key = value`, got `{1}`")]
    BadLine(usize, String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: `{value}`")]
    BadValue { key: String, value: String },
    #[error("not a complex literal: `{0}`")]
    BadComplex(String),
    #[error("{0}")]
    Validation(String),
    #[error("inner function: {0}")]
    Inner(#[from] InnerError),
}

/// Numerical resolution and seeding for a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Line grid size; a power of two.
    pub n: usize,
    /// Line window half-width.
    pub x: f64,
    /// Torus mode cutoff.
    pub k: usize,
    pub seed: u64,
    /// Per-check tolerance overrides, keyed by check id.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 1 << 14,
            x: 64.0,
            k: 64,
            seed: 7,
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for (key, value, line_no) in kv_lines(text)? {
            match key.as_str() {
                "n" => cfg.n = parse_num(&key, &value)?,
                "x" => cfg.x = parse_num(&key, &value)?,
                "k" => cfg.k = parse_num(&key, &value)?,
                "seed" => cfg.seed = parse_num(&key, &value)?,
                _ => {
                    if let Some(check) = key.strip_prefix("tolerance.") {
                        let tol: f64 = parse_num(&key, &value)?;
                        cfg.tolerances.insert(check.to_string(), tol);
                    } else {
                        let _ = line_no;
                        return Err(ConfigError::UnknownKey(key));
                    }
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Apply a `check=value` tolerance override (the CLI flag form).
    pub fn override_tolerance(&mut self, spec: &str) -> Result<(), ConfigError> {
        let (check, value) = spec
            .split_once('=')
            .ok_or_else(|| ConfigError::BadLine(0, spec.to_string()))?;
        let tol: f64 = parse_num(check.trim(), value.trim())?;
        self.tolerances.insert(check.trim().to_string(), tol);
        Ok(())
    }

    pub fn tolerance_or(&self, check: &str, default: f64) -> f64 {
        self.tolerances.get(check).copied().unwrap_or(default)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n < 8 || !self.n.is_power_of_two() {
            return Err(ConfigError::Validation(format!(
                "n must be a power of two at least 8, got {}",
                self.n
            )));
        }
        if !(self.x > 0.0 && self.x.is_finite()) {
            return Err(ConfigError::Validation(format!(
                "x must be positive and finite, got {}",
                self.x
            )));
        }
        if self.k == 0 {
            return Err(ConfigError::Validation("k must be positive".into()));
        }
        if self.n < 4 * self.k {
            return Err(ConfigError::Validation(format!(
                "n = {} too small for mode cutoff k = {}; need n >= 4k",
                self.n, self.k
            )));
        }
        Ok(())
    }
}

/// Parsed description of a symmetric inner function.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerSpec {
    pub zeros: Vec<C<f64>>,
    pub singular_t: f64,
    pub sign: i8,
}

impl Default for InnerSpec {
    fn default() -> Self {
        InnerSpec { zeros: Vec::new(), singular_t: 0.0, sign: 1 }
    }
}

impl InnerSpec {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut spec = InnerSpec::default();
        for (key, value, _) in kv_lines(text)? {
            match key.as_str() {
                "zeros" => spec.zeros = parse_complex_list(&value)?,
                "t" => spec.singular_t = parse_num(&key, &value)?,
                "sign" => {
                    spec.sign = match value.trim() {
                        "+1" | "1" => 1,
                        "-1" => -1,
                        other => {
                            return Err(ConfigError::BadValue {
                                key,
                                value: other.to_string(),
                            })
                        }
                    }
                }
                _ => return Err(ConfigError::UnknownKey(key)),
            }
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<SymmetricInnerFunction<f64>, ConfigError> {
        Ok(SymmetricInnerFunction::new(
            self.zeros.clone(),
            self.singular_t,
            self.sign,
        )?)
    }
}

fn kv_lines(text: &str) -> Result<Vec<(String, String, usize)>, ConfigError> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = match raw.split_once('#') {
            Some((head, _)) => head,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::BadLine(no + 1, raw.to_string()))?;
        out.push((key.trim().to_string(), value.trim().to_string(), no + 1));
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

/// `[a+bi, c-di, ...]`; an empty list is `[]`.
pub fn parse_complex_list(text: &str) -> Result<Vec<C<f64>>, ConfigError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| ConfigError::BadComplex(text.to_string()))?
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|tok| parse_complex(tok.trim())).collect()
}

/// Complex literal: `2`, `-0.5`, `i`, `-i`, `3i`, `1+2i`, `0.5-1e-3i`.
pub fn parse_complex(text: &str) -> Result<C<f64>, ConfigError> {
    let bad = || ConfigError::BadComplex(text.to_string());
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some(body) = s.strip_suffix('i') {
        // locate the sign separating real and imaginary parts, skipping a
        // leading sign and exponent signs
        let mut split = None;
        for (idx, ch) in body.char_indices().skip(1) {
            if (ch == '+' || ch == '-')
                && !matches!(body.as_bytes()[idx - 1], b'e' | b'E')
            {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].parse().map_err(|_| bad())?;
                let im = parse_signed_coefficient(&body[idx..]).ok_or_else(bad)?;
                Ok(C::new(re, im))
            }
            None => {
                let im = parse_signed_coefficient(body).ok_or_else(bad)?;
                Ok(C::new(0.0, im))
            }
        }
    } else {
        Ok(C::new(s.parse().map_err(|_| bad())?, 0.0))
    }
}

fn parse_signed_coefficient(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        other => other.parse().ok(),
    }
}
