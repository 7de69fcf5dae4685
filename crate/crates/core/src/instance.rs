//! Instance files (TOML) and curve files.
//!
//! ```toml
//! variables = ["x", "y"]
//! f = "x + x^2*y"
//! constraints = ["x*y - 1"]
//! family_parameter = "t"        # optional
//!
//! [options]
//! budget_pairs = 200000
//! tolerance = 1e-12
//! samples = ["0", "1/2", "1"]
//! ```

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::family::{default_samples, FamilyPolynomial};
use crate::parse::{parse_polynomial, IMAGINARY_UNIT};
use crate::poly::{ComplexPoint, Polynomial, Ring};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceOptions {
    pub budget_pairs: Option<usize>,
    pub tolerance: Option<f64>,
    pub samples: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub variables: Vec<String>,
    pub f: String,
    #[serde(default)]
    pub constraints: Vec<String>,
    pub family_parameter: Option<String>,
    #[serde(default)]
    pub options: InstanceOptions,
}

/// A parsed, validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub file: InstanceFile,
    pub ring: Ring,
    /// `f` itself, or the generic support of the family.
    pub f: Polynomial,
    pub family: Option<FamilyPolynomial>,
    pub constraints: Vec<Polynomial>,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn located(what: &str, e: Error) -> Error {
    Error::Instance(format!("{what}: {e}"))
}

impl InstanceFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Instance(e.message().to_string()))
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.variables.is_empty() {
            return Err(Error::Instance("at least one variable is required".into()));
        }
        for v in self.variables.iter().chain(&self.family_parameter) {
            if !valid_identifier(v) || v == IMAGINARY_UNIT {
                return Err(Error::Instance(format!("`{v}` is not a usable variable name")));
            }
        }
        let ring = Ring::new(&self.variables)?;
        let constraints = self
            .constraints
            .iter()
            .enumerate()
            .map(|(j, s)| parse_polynomial(s, &ring).map_err(|e| located(&format!("constraint {}", j + 1), e)))
            .collect::<Result<Vec<_>>>()?;
        let (f, family) = match &self.family_parameter {
            None => (parse_polynomial(&self.f, &ring).map_err(|e| located("f", e))?, None),
            Some(t) => {
                if self.variables.contains(t) {
                    return Err(Error::Instance(format!("family parameter `{t}` is also a variable")));
                }
                let big = ring.extended(&[t])?;
                let full = parse_polynomial(&self.f, &big).map_err(|e| located("f", e))?;
                let family = FamilyPolynomial::new(&full, ring.nvars())?;
                (family.generic(), Some(family))
            }
        };
        if f.is_zero() {
            return Err(Error::Instance("f is identically zero".into()));
        }
        Ok(Instance { file: self.clone(), ring, f, family, constraints })
    }

    pub fn config(&self) -> Config {
        let mut cfg = Config::default();
        if let Some(b) = self.options.budget_pairs {
            cfg.max_pairs = b;
        }
        if let Some(t) = self.options.tolerance {
            cfg.root_tolerance = t;
        }
        cfg
    }

    pub fn samples(&self) -> Result<Vec<BigRational>> {
        match &self.options.samples {
            None => Ok(default_samples()),
            Some(v) => v.iter().map(|s| parse_sample(s)).collect(),
        }
    }
}

/// Reads an exact rational: `3`, `-1/2` or a decimal such as `0.25`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Instance(format!("`{text}` is not a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// A parameter value in `[0, 1]`.
pub fn parse_sample(text: &str) -> Result<BigRational> {
    let t = parse_rational(text)?;
    if t < BigRational::zero() || t > BigRational::one() {
        return Err(Error::Instance(format!("sample `{text}` lies outside [0, 1]")));
    }
    Ok(t)
}

/// Comma-separated sample list as given on the command line.
pub fn parse_samples(text: &str) -> Result<Vec<BigRational>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_sample).collect()
}

/// One point per line; coordinates separated by whitespace, each either
/// `re` or `re,im`. Blank lines and `#` comments are ignored.
pub fn parse_curve(text: &str, nvars: usize) -> Result<Vec<ComplexPoint>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Instance(format!("curve line {}: {msg}", lineno + 1));
        let mut point = Vec::with_capacity(nvars);
        for tok in line.split_whitespace() {
            let (re, im) = tok.split_once(',').unwrap_or((tok, "0"));
            let re: f64 = re.parse().map_err(|_| bad(&format!("bad number `{re}`")))?;
            let im: f64 = im.parse().map_err(|_| bad(&format!("bad number `{im}`")))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(bad("non-finite coordinate"));
            }
            point.push(Complex64::new(re, im));
        }
        if point.len() != nvars {
            return Err(bad(&format!("expected {nvars} coordinates, found {}", point.len())));
        }
        out.push(point);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_plain_instance() {
        let file = InstanceFile::from_toml("variables = [\"x\", \"y\"]\nf = \"x + x^2*y\"\n").unwrap();
        let inst = file.to_instance().unwrap();
        assert_eq!(inst.f.to_string(), "x^2*y + x");
        assert!(inst.constraints.is_empty() && inst.family.is_none());
    }

    #[test]
    fn reads_a_family() {
        let text = "variables = [\"x\", \"y\"]\nf = \"x + (1 + t)*x^2*y\"\nfamily_parameter = \"t\"\n";
        let inst = InstanceFile::from_toml(text).unwrap().to_instance().unwrap();
        assert_eq!(inst.f.to_string(), "x^2*y + x");
        assert!(inst.family.is_some());
    }

    #[test]
    fn rejects_bad_instances() {
        let e = InstanceFile::from_toml("variables = [\"x\", \"x\"]\nf = \"x\"\n").unwrap().to_instance();
        assert!(e.is_err());
        let e = InstanceFile::from_toml("variables = [\"x\"]\nf = \"x + z\"\n").unwrap().to_instance().unwrap_err();
        assert!(e.to_string().contains("unknown variable `z`"), "{e}");
        let e = InstanceFile::from_toml("variables = [\"x\"]\nf = \"x\"\nfamily_parameter = \"x\"\n")
            .unwrap()
            .to_instance();
        assert!(e.is_err());
        assert!(InstanceFile::from_toml("variables = [\"x\"]\nf = \"x\"\nbogus = 1\n").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-3").unwrap(), BigRational::from_integer((-3).into()));
        assert!(parse_rational("abc").is_err());
        assert!(parse_sample("2").is_err());
        assert_eq!(parse_samples("0,1/2,1").unwrap().len(), 3);
    }

    #[test]
    fn curves() {
        let c = parse_curve("# header\n-0.05 10\n1,2 3,-4  # trailing\n", 2).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1][1], Complex64::new(3.0, -4.0));
        assert!(parse_curve("1 2 3\n", 2).is_err());
    }
}
