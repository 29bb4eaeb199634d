//! Truncated integer power series and the degree combinatorics of a type
//! `(n; d_1, ..., d_r)`.
//!
//! Everything here is exact: coefficients are arbitrary-precision integers,
//! since binomial-type values overflow machine words quickly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A power series known exactly in degrees `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(bound: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); bound + 1],
        }
    }

    pub fn one(bound: usize) -> Self {
        let mut s = Self::zero(bound);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything beyond `bound` is dropped.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>, bound: usize) -> Self {
        let mut s = Self::zero(bound);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    /// `1 / (1 - z) = 1 + z + z^2 + ...`
    pub fn geometric(bound: usize) -> Self {
        Self {
            coeffs: vec![BigInt::one(); bound + 1],
        }
    }

    /// `1 - z^d`, truncated.
    pub fn one_minus_power(d: usize, bound: usize) -> Self {
        let mut s = Self::one(bound);
        if d <= bound {
            s.coeffs[d] -= 1;
        }
        s
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Index of the last nonzero coefficient, if any.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Coefficients as `i64`, or `None` if one does not fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Re-truncates (or zero-extends) to a new bound.
    pub fn with_bound(&self, bound: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().cloned(), bound)
    }

    /// Cauchy product truncated at the shared bound.
    pub fn mul_truncated(&self, other: &Self) -> Result<Self> {
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch {
                left: self.bound(),
                right: other.bound(),
            });
        }
        let bound = self.bound();
        let mut out = Self::zero(bound);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=bound - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by `1 / (1 - z)`, i.e. takes prefix sums.
    pub fn divide_by_one_minus_z(&self) -> Self {
        let mut acc = BigInt::zero();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplies by `1 - z`.
    pub fn times_one_minus_z(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for i in (1..coeffs.len()).rev() {
            coeffs[i] = &self.coeffs[i] - &self.coeffs[i - 1];
        }
        Self { coeffs }
    }

    /// The ceiling operator: keep `a_i` while every `a_j` with `j <= i` is
    /// positive, zero from the first non-positive coefficient onward.
    pub fn ceiling(&self) -> Self {
        let cut = self
            .coeffs
            .iter()
            .position(|c| !c.is_positive())
            .unwrap_or(self.coeffs.len());
        let mut out = Self::zero(self.bound());
        out.coeffs[..cut].clone_from_slice(&self.coeffs[..cut]);
        out
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            bound: usize,
            coeffs: Vec<serde_json::Number>,
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                serde_json::Number::from_str(&c.to_string()).map_err(serde::ser::Error::custom)
            })
            .collect::<std::result::Result<_, _>>()?;
        Repr {
            bound: self.bound(),
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            bound: usize,
            coeffs: Vec<serde_json::Number>,
        }
        let repr = Repr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.bound + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, got {}",
                repr.bound + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(D::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { coeffs })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A type `(n; d_1, ..., d_r)`: `n` variables and `r` forms of the given
/// degrees, kept sorted non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeType {
    n: usize,
    degrees: Vec<u32>,
}

impl DegreeType {
    pub fn new(n: usize, mut degrees: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidType("need at least one variable".into()));
        }
        if degrees.is_empty() {
            return Err(Error::InvalidType("need at least one form".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidType("form degrees must be positive".into()));
        }
        degrees.sort_unstable();
        Ok(Self { n, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        *self.degrees.last().expect("non-empty")
    }

    /// Drops the last form and the last variable: `(n; d_1..d_r)` becomes
    /// `(n-1; d_1..d_{r-1})`.
    pub fn truncate_last(&self) -> Result<Self> {
        Self::new(self.n - 1, self.degrees[..self.r() - 1].to_vec())
    }

    /// `(n; d_1..d_r)` with the first `k` forms in the same `n` variables.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        Self::new(self.n, self.degrees[..k].to_vec())
    }

    /// Truncation bound used when nothing else is requested:
    /// `(sum d_i - n) + max d_i + 2`.
    pub fn default_bound(&self) -> usize {
        let sum: i64 = self.degrees.iter().map(|&d| i64::from(d)).sum();
        let top = sum - self.n as i64 + i64::from(self.max_degree()) + 2;
        top.max(0) as usize
    }
}

impl fmt::Display for DegreeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DegreeType {
    type Err = Error;

    /// Parses `"n:d1,d2,...,dr"`, e.g. `"4:2,3,3,4"`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |position: usize, message: &str| Error::ParseType {
            position,
            message: message.to_string(),
        };
        let colon = s.find(':').ok_or_else(|| err(s.len(), "missing ':'"))?;
        let head = &s[..colon];
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| err(0, "variable count is not a non-negative integer"))?;
        let mut degrees = Vec::new();
        let mut offset = colon + 1;
        for part in s[colon + 1..].split(',') {
            let d: u32 = part
                .trim()
                .parse()
                .map_err(|_| err(offset, "degree is not a non-negative integer"))?;
            degrees.push(d);
            offset += part.len() + 1;
        }
        DegreeType::new(n, degrees).map_err(|e| match e {
            Error::InvalidType(msg) => err(0, &msg),
            other => other,
        })
    }
}

impl Serialize for DegreeType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DegreeType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// `delta_i = d_1 + ... + d_i - i` and `sigma_i = min(delta_{i-1}, floor(delta_i / 2))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaProfile {
    /// `delta[k]` is `delta_{k+1}`.
    pub delta: Vec<i64>,
    /// `sigma[k]` is `sigma_{k+2}`.
    pub sigma: Vec<i64>,
}

impl SigmaProfile {
    /// `delta_i` for `0 <= i <= r`, with `delta_0 = 0`.
    pub fn delta_at(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.delta[i - 1]
        }
    }

    /// `sigma_i` for `2 <= i <= r`.
    pub fn sigma_at(&self, i: usize) -> Option<i64> {
        i.checked_sub(2).and_then(|k| self.sigma.get(k).copied())
    }

    /// Socle degree `delta = delta_r`.
    pub fn top_delta(&self) -> i64 {
        *self.delta.last().expect("non-empty")
    }

    /// `delta* = delta_{r-1}`.
    pub fn top_delta_star(&self) -> i64 {
        self.delta_at(self.delta.len() - 1)
    }

    /// `sigma = sigma_r`; undefined for a single form.
    pub fn top_sigma(&self) -> Option<i64> {
        self.sigma.last().copied()
    }
}

pub fn sigma_profile(t: &DegreeType) -> SigmaProfile {
    let mut delta = Vec::with_capacity(t.r());
    let mut acc = 0i64;
    for (i, &d) in t.degrees().iter().enumerate() {
        acc += i64::from(d);
        delta.push(acc - (i as i64 + 1));
    }
    let sigma = (1..delta.len())
        .map(|k| delta[k - 1].min(delta[k].div_euclid(2)))
        .collect();
    SigmaProfile { delta, sigma }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition1Entry {
    /// 1-based form index `i >= 4`.
    pub index: usize,
    pub degree: i64,
    pub sigma_prev: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition1Report {
    pub holds: bool,
    pub entries: Vec<Condition1Entry>,
}

/// `d_i >= sigma_{i-1}` for every `4 <= i <= r`; vacuous when `r <= 3`.
pub fn condition1_check(t: &DegreeType) -> Condition1Report {
    let profile = sigma_profile(t);
    let entries: Vec<_> = (4..=t.r())
        .map(|i| {
            let degree = i64::from(t.degrees()[i - 1]);
            let sigma_prev = profile.sigma_at(i - 1).expect("i - 1 >= 3");
            Condition1Entry {
                index: i,
                degree,
                sigma_prev,
                pass: degree >= sigma_prev,
            }
        })
        .collect();
    Condition1Report {
        holds: entries.iter().all(|e| e.pass),
        entries,
    }
}

/// `prod (1 - z^{d_i}) / (1 - z)^n` before the ceiling, truncated at `bound`.
pub fn raw_froberg_series(t: &DegreeType, bound: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(bound);
    for &d in t.degrees() {
        s = s
            .mul_truncated(&TruncatedSeries::one_minus_power(d as usize, bound))
            .expect("same bound");
    }
    for _ in 0..t.n() {
        s = s.divide_by_one_minus_z();
    }
    s
}

/// The conjectured generic Hilbert series `ceil(prod (1 - z^{d_i}) / (1 - z)^n)`.
pub fn froberg_series(t: &DegreeType, bound: usize) -> TruncatedSeries {
    raw_froberg_series(t, bound).ceiling()
}

/// Hilbert series of a complete intersection of type `(n; d_1..d_n)`: the
/// polynomial `prod (1 + z + ... + z^{d_i - 1})` of degree `delta`.
pub fn ci_series(t: &DegreeType) -> Result<TruncatedSeries> {
    if t.r() != t.n() {
        return Err(Error::NotSquare { n: t.n(), r: t.r() });
    }
    let delta = sigma_profile(t).top_delta() as usize;
    let mut s = TruncatedSeries::one(delta);
    for &d in t.degrees() {
        let factor = TruncatedSeries::from_coeffs(vec![1; d as usize], delta);
        s = s.mul_truncated(&factor)?;
    }
    Ok(s)
}
