//! Monomials in at most [`MAX_VARS`] variables with small exponents, ordered
//! by degree reverse lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 16;

/// `x_1^{e_1} ... x_n^{e_n}`. Exponent slots past `n` are always zero, so the
/// derived `Eq`/`Hash` are structural.
///
/// `Ord` is degrevlex: higher degree first, and between equal degrees the
/// monomial whose last differing exponent is smaller is the larger one.
/// Comparing monomials with different variable counts panics; use
/// [`degrevlex_cmp`] for a checked comparison.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    nvars: u8,
    degree: u16,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        Self {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            degree: 0,
        }
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: exps.len(),
                max: MAX_VARS,
            });
        }
        let mut m = Self::one(exps.len());
        let mut degree = 0u32;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).map_err(|_| Error::ExponentOverflow(e))?;
            degree += e;
        }
        m.degree = u16::try_from(degree).map_err(|_| Error::ExponentOverflow(degree))?;
        Ok(m)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        u32::from(self.degree)
    }

    #[inline]
    pub fn exponents(&self) -> &[u8] {
        &self.exps[..self.nvars()]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        u32::from(self.exps[i])
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// 0-based index of the last variable with a positive exponent.
    pub fn last_var(&self) -> Option<usize> {
        self.exponents().iter().rposition(|&e| e > 0)
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self.exps[..self.nvars()]
                .iter()
                .zip(&other.exps[..self.nvars()])
                .all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        out.degree = self.degree + other.degree;
        out
    }

    /// `self / other`, if `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] -= other.exps[i];
        }
        out.degree = self.degree - other.degree;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut degree = 0u16;
        for i in 0..self.nvars() {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            degree += u16::from(out.exps[i]);
        }
        out.degree = degree;
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Multiplies by `x_{i+1}^e`.
    pub fn times_var_pow(&self, i: usize, e: u32) -> Monomial {
        let mut out = *self;
        out.exps[i] = u8::try_from(u32::from(out.exps[i]) + e).expect("exponent overflow");
        out.degree += e as u16;
        out
    }

    /// The same exponents in a ring with `nvars` variables; extra variables
    /// get exponent zero. Shrinking requires the dropped exponents to be zero.
    pub fn with_nvars(&self, nvars: usize) -> Option<Monomial> {
        if nvars > MAX_VARS
            || self.exps[nvars.min(self.nvars())..self.nvars()]
                .iter()
                .any(|&e| e > 0)
        {
            return None;
        }
        let mut out = *self;
        out.nvars = nvars as u8;
        Some(out)
    }

    fn revlex_tail(&self, other: &Monomial) -> Ordering {
        for i in (0..self.nvars()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

/// Checked degrevlex comparison.
pub fn degrevlex_cmp(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    Ok(a.cmp(b))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(
            self.nvars, other.nvars,
            "comparing monomials of different rings"
        );
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.revlex_tail(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.exponents())
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let exps = Vec::<u32>::deserialize(deserializer)?;
        Monomial::new(&exps).map_err(D::Error::custom)
    }
}

/// All monomials of degree `degree` in `nvars` variables, in decreasing
/// degrevlex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = Monomial::one(nvars);
    fill(&mut out, &mut current, 0, degree);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Monomial, var: usize, left: u32) {
    let n = current.nvars();
    if n == 0 {
        if left == 0 {
            out.push(*current);
        }
        return;
    }
    if var == n - 1 {
        let m = current.times_var_pow(var, left);
        out.push(m);
        return;
    }
    for e in 0..=left {
        let saved = *current;
        *current = current.times_var_pow(var, e);
        fill(out, current, var + 1, left - e);
        *current = saved;
    }
}

/// `binom(n - 1 + t, t)`, the number of degree-`t` monomials in `n` variables.
pub fn count_monomials(nvars: usize, degree: u32) -> u64 {
    if nvars == 0 {
        return u64::from(degree == 0);
    }
    let k = (nvars - 1) as u64;
    let mut acc = 1u64;
    for i in 1..=k {
        acc = acc * (u64::from(degree) + i) / i;
    }
    acc
}

/// Dense positions of monomials within one degree: `rank(m)` is the index
/// of `m` in [`monomials_of_degree`] for its degree.
///
/// Decreasing degrevlex lists the degree-`t` monomials by ascending
/// exponent of the last variable, then recursively on the rest, so the
/// rank is a sum of monomial counts.
#[derive(Clone, Debug)]
pub struct MonomialIndexer {
    nvars: usize,
    // counts[v][t] = number of degree-t monomials in v variables
    counts: Vec<Vec<u64>>,
}

impl MonomialIndexer {
    pub fn new(nvars: usize, max_degree: u32) -> Self {
        let top = max_degree as usize;
        let mut counts = vec![vec![0u64; top + 1]; nvars + 1];
        counts[0][0] = 1;
        for v in 1..=nvars {
            let (done, rest) = counts.split_at_mut(v);
            let mut acc = 0;
            for (slot, &prev) in rest[0].iter_mut().zip(&done[v - 1]) {
                acc += prev;
                *slot = acc;
            }
        }
        Self { nvars, counts }
    }

    pub fn max_degree(&self) -> u32 {
        (self.counts[0].len() - 1) as u32
    }

    pub fn count(&self, degree: u32) -> usize {
        self.counts[self.nvars][degree as usize] as usize
    }

    #[inline]
    pub fn rank(&self, m: &Monomial) -> usize {
        debug_assert_eq!(m.nvars(), self.nvars);
        let mut t = m.degree() as usize;
        let mut r = 0u64;
        for v in (1..=self.nvars).rev() {
            let e = m.exps[v - 1] as usize;
            r += self.counts[v][t] - self.counts[v][t - e];
            t -= e;
        }
        r as usize
    }
}
