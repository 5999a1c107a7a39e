use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 16;

/// Exponent vector of a monomial in at most [`MAX_VARS`] variables.
/// Unused slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u32]) -> Result<Self> {
        Self::from_u32_slice(e)
    }

    pub(crate) fn from_u32_slice(e: &[u32]) -> Result<Self> {
        if e.len() > MAX_VARS {
            return Err(Error::DimensionMismatch {
                expected: MAX_VARS,
                got: e.len(),
            });
        }
        let mut m = Monomial::one();
        for (slot, &x) in m.exps.iter_mut().zip(e) {
            *slot = u16::try_from(x)
                .map_err(|_| Error::ResourceLimit(format!("exponent {x} exceeds 65535")))?;
        }
        Ok(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut out = *self;
        out.exps[i] = out.exps[i].checked_add(1).expect("exponent overflow");
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::one();
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i].checked_sub(self.exps[i])?;
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
        }
        out
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Reverse lexicographic comparison: the larger monomial has the smaller
    /// exponent in the last variable where they differ.
    pub fn revlex_cmp(&self, other: &Monomial, nvars: usize) -> Ordering {
        for i in (0..nvars).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Set the exponents of the given variables to zero.
    pub fn restrict_away(&self, vars: &[usize]) -> Monomial {
        let mut out = *self;
        for &v in vars {
            out.exps[v] = 0;
        }
        out
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String, nvars: usize) -> String {
        let parts: Vec<String> = (0..nvars)
            .filter(|&i| self.exps[i] > 0)
            .map(|i| {
                if self.exps[i] == 1 {
                    names(i)
                } else {
                    format!("{}^{}", names(i), self.exps[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        write!(f, "{}", self.fmt_with(&|i| format!("x{i}"), last))
    }
}
