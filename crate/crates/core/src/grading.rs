//! Gradings of the polynomial ring: positive weight vectors (the Z-graded
//! case) and integer degree matrices (class-group gradings of Cox rings).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MAX_VARS};

/// A degree in Z^rho. Ordered lexicographically by coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Degree(pub SmallVec<[i64; 2]>);

impl Degree {
    pub fn zero(rank: usize) -> Self {
        Degree(SmallVec::from_elem(0, rank))
    }

    pub fn scalar(d: i64) -> Self {
        Degree(SmallVec::from_slice(&[d]))
    }

    pub fn from_slice(v: &[i64]) -> Self {
        Degree(SmallVec::from_slice(v))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// The single coordinate of a Z-degree.
    pub fn value(&self) -> i64 {
        debug_assert_eq!(self.0.len(), 1);
        self.0[0]
    }

    pub fn scale(&self, lambda: i64) -> Self {
        Degree(self.0.iter().map(|x| x * lambda).collect())
    }

    pub fn dot(&self, functional: &[i64]) -> i64 {
        self.0.iter().zip(functional).map(|(a, b)| a * b).sum()
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Degree) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        Degree(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Degree {
    type Output = Degree;
    fn sub(self, rhs: &Degree) -> Degree {
        Degree(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, x) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        }
    }
}

/// The degree structure of `k[x_0..x_n]`.
///
/// In the Z-graded case the variables are re-sorted so that the weights
/// ascend; `original_index` maps back to the caller's numbering.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grading {
    degrees: Vec<Degree>,
    rank: usize,
    /// A functional positive on every variable degree.
    functional: Vec<i64>,
    /// `functional` evaluated on each variable.
    order_weights: Vec<i64>,
    /// `perm[sorted] = original`.
    perm: Vec<usize>,
}

impl Grading {
    /// Positive weights; sorted ascending on construction.
    pub fn weighted(weights: &[i64]) -> Result<Self> {
        check_var_count(weights.len())?;
        if let Some(w) = weights.iter().find(|&&w| w < 1) {
            return Err(Error::InvalidGrading(format!(
                "weights must be positive integers, found {w}"
            )));
        }
        let mut perm: Vec<usize> = (0..weights.len()).collect();
        perm.sort_by_key(|&i| (weights[i], i));
        let degrees = perm.iter().map(|&i| Degree::scalar(weights[i])).collect();
        let order_weights = perm.iter().map(|&i| weights[i]).collect();
        Ok(Grading {
            degrees,
            rank: 1,
            functional: vec![1],
            order_weights,
            perm,
        })
    }

    /// Standard grading on `nvars` variables.
    pub fn standard(nvars: usize) -> Result<Self> {
        Self::weighted(&vec![1; nvars])
    }

    /// An arbitrary degree matrix, one column per variable (given here as
    /// one row per variable). Rank-one input is routed to [`Grading::weighted`].
    pub fn multigraded(degrees: &[Vec<i64>]) -> Result<Self> {
        check_var_count(degrees.len())?;
        let rank = degrees
            .first()
            .map(|d| d.len())
            .ok_or_else(|| Error::InvalidGrading("no variables".into()))?;
        if rank == 0 {
            return Err(Error::InvalidGrading("degree vectors are empty".into()));
        }
        if let Some(bad) = degrees.iter().find(|d| d.len() != rank) {
            return Err(Error::InvalidGrading(format!(
                "degree vector {bad:?} has length {} (expected {rank})",
                bad.len()
            )));
        }
        if rank == 1 {
            let w: Vec<i64> = degrees.iter().map(|d| d[0]).collect();
            return Self::weighted(&w);
        }
        if let Some(i) = degrees.iter().position(|d| d.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidGrading(format!(
                "variable {i} has degree zero; graded pieces would be infinite"
            )));
        }
        let functional = positive_functional(degrees).ok_or_else(|| {
            Error::InvalidGrading(
                "degree semigroup is not pointed: no functional is positive on all variables"
                    .into(),
            )
        })?;
        let degrees: Vec<Degree> = degrees.iter().map(|d| Degree::from_slice(d)).collect();
        let order_weights = degrees.iter().map(|d| d.dot(&functional)).collect();
        Ok(Grading {
            perm: (0..degrees.len()).collect(),
            degrees,
            rank,
            functional,
            order_weights,
        })
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_z_graded(&self) -> bool {
        self.rank == 1
    }

    pub fn var_degree(&self, i: usize) -> &Degree {
        &self.degrees[i]
    }

    pub fn var_degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// Sorted weights (Z-graded case only).
    pub fn weights(&self) -> Option<Vec<i64>> {
        self.is_z_graded()
            .then(|| self.degrees.iter().map(|d| d.value()).collect())
    }

    pub fn functional(&self) -> &[i64] {
        &self.functional
    }

    pub fn order_weights(&self) -> &[i64] {
        &self.order_weights
    }

    /// A positive integer proxy for a degree, used to process homogeneous
    /// computations degree by degree.
    pub fn order_value(&self, d: &Degree) -> i64 {
        d.dot(&self.functional)
    }

    pub fn original_index(&self, sorted: usize) -> usize {
        self.perm[sorted]
    }

    pub fn sorted_index(&self, original: usize) -> usize {
        self.perm
            .iter()
            .position(|&p| p == original)
            .expect("index in range")
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn zero_degree(&self) -> Degree {
        Degree::zero(self.rank)
    }

    /// Degree of the monomial `x^e`.
    pub fn degree_of(&self, m: &Monomial) -> Degree {
        let mut out = SmallVec::from_elem(0i64, self.rank);
        for (i, d) in self.degrees.iter().enumerate() {
            let e = m.exponent(i) as i64;
            if e != 0 {
                for (o, x) in out.iter_mut().zip(d.0.iter()) {
                    *o += e * x;
                }
            }
        }
        Degree(out)
    }

    pub fn order_degree_of(&self, m: &Monomial) -> i64 {
        self.order_weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * m.exponent(i) as i64)
            .sum()
    }

    /// All monomials of exactly degree `d`, in descending monomial order.
    pub fn monomials_of_degree(&self, d: &Degree) -> Vec<Monomial> {
        if d.rank() != self.rank {
            return Vec::new();
        }
        let target = self.order_value(d);
        let mut out = Vec::new();
        if target < 0 {
            return out;
        }
        let mut exps = [0u32; MAX_VARS];
        enumerate_weighted(&self.order_weights, 0, target, &mut exps, &mut |e| {
            let m = Monomial::from_u32_slice(&e[..self.nvars()]).expect("exponent range");
            if self.rank == 1 || self.degree_of(&m) == *d {
                out.push(m);
            }
        });
        out.sort_by(|a, b| self.cmp_monomials(b, a));
        out
    }

    /// Rescale every variable degree by `lambda`.
    pub fn rescaled(&self, lambda: i64) -> Result<Self> {
        if lambda < 1 {
            return Err(Error::InvalidGrading("rescaling factor must be positive".into()));
        }
        let mut g = self.clone();
        for d in &mut g.degrees {
            *d = d.scale(lambda);
        }
        for w in &mut g.order_weights {
            *w *= lambda;
        }
        Ok(g)
    }

    /// Order value of the degree, then (for rho > 1) the degree coordinates,
    /// then reverse lexicographic on exponents.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.order_degree_of(a).cmp(&self.order_degree_of(b)) {
            Ordering::Equal => {}
            o => return o,
        }
        if self.rank > 1 {
            match self.degree_of(a).cmp(&self.degree_of(b)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        a.revlex_cmp(b, self.nvars())
    }

    /// Subring grading on the variables in `keep` (sorted indices).
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let degs: Vec<Vec<i64>> = keep.iter().map(|&i| self.degrees[i].0.to_vec()).collect();
        if self.rank == 1 {
            let w: Vec<i64> = degs.iter().map(|d| d[0]).collect();
            let mut g = Self::weighted(&w)?;
            // keep[] is already ascending in weight, so perm is the identity here
            g.perm = (0..keep.len()).collect();
            return Ok(g);
        }
        let mut g = Self::multigraded(&degs)?;
        g.functional = self.functional.clone();
        g.order_weights = g.degrees.iter().map(|d| d.dot(&g.functional)).collect();
        Ok(g)
    }
}

fn check_var_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidGrading("ring needs at least one variable".into()));
    }
    if n > MAX_VARS {
        return Err(Error::InvalidGrading(format!(
            "at most {MAX_VARS} variables are supported, got {n}"
        )));
    }
    Ok(())
}

fn enumerate_weighted(
    weights: &[i64],
    idx: usize,
    remaining: i64,
    exps: &mut [u32; MAX_VARS],
    emit: &mut dyn FnMut(&[u32; MAX_VARS]),
) {
    if idx + 1 == weights.len() {
        if remaining % weights[idx] == 0 {
            exps[idx] = (remaining / weights[idx]) as u32;
            emit(exps);
        }
        exps[idx] = 0;
        return;
    }
    let w = weights[idx];
    let mut e = 0i64;
    while e * w <= remaining {
        exps[idx] = e as u32;
        enumerate_weighted(weights, idx + 1, remaining - e * w, exps, emit);
        e += 1;
    }
    exps[idx] = 0;
}

/// Find an integer functional strictly positive on every row. Small boxes are
/// searched first (preferring small values on the variables); a perceptron
/// run is the fallback.
fn positive_functional(degrees: &[Vec<i64>]) -> Option<Vec<i64>> {
    let rank = degrees[0].len();
    let eval = |l: &[i64]| -> Option<i64> {
        let mut worst = 0;
        for d in degrees {
            let v: i64 = d.iter().zip(l).map(|(a, b)| a * b).sum();
            if v <= 0 {
                return None;
            }
            worst = worst.max(v);
        }
        Some(worst)
    };
    if rank <= 4 {
        for bound in 1..=6i64 {
            let mut best: Option<(i64, Vec<i64>)> = None;
            let mut l = vec![-bound; rank];
            loop {
                if let Some(score) = eval(&l) {
                    if best.as_ref().is_none_or(|(s, _)| score < *s) {
                        best = Some((score, l.clone()));
                    }
                }
                let mut k = 0;
                while k < rank {
                    if l[k] < bound {
                        l[k] += 1;
                        break;
                    }
                    l[k] = -bound;
                    k += 1;
                }
                if k == rank {
                    break;
                }
            }
            if let Some((_, l)) = best {
                return Some(l);
            }
        }
    }
    let mut l = vec![0i64; rank];
    for _ in 0..100_000 {
        match degrees
            .iter()
            .find(|d| d.iter().zip(&l).map(|(a, b)| a * b).sum::<i64>() <= 0)
        {
            None => return Some(l),
            Some(d) => {
                for (x, y) in l.iter_mut().zip(d) {
                    *x += y;
                }
            }
        }
    }
    None
}

/// The invariants `w_i`, `w^i` and `sigma` of a positive weight vector.
///
/// `w_i` is the sum of the `i` smallest weights and `w^i` the sum of the `i`
/// largest; they are the extremal generator degrees of the `i`-th Koszul
/// module. Both equal `-1` at `i = -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulBounds {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl KoszulBounds {
    pub fn new(g: &Grading) -> Result<Self> {
        let w = g.weights().ok_or_else(|| {
            Error::Unsupported("Koszul degree bounds need a Z-grading".into())
        })?;
        Ok(Self::from_weights(&w))
    }

    pub fn from_weights(weights: &[i64]) -> Self {
        let mut w = weights.to_vec();
        w.sort_unstable();
        let mut lower = vec![0];
        let mut upper = vec![0];
        for i in 0..w.len() {
            lower.push(lower[i] + w[i]);
            upper.push(upper[i] + w[w.len() - 1 - i]);
        }
        KoszulBounds { lower, upper }
    }

    pub fn nvars(&self) -> usize {
        self.lower.len() - 1
    }

    /// `w_i` for `-1 <= i`; indices beyond `n+1` saturate at the full sum.
    pub fn lower(&self, i: i64) -> i64 {
        if i < 0 {
            -1
        } else {
            self.lower[(i as usize).min(self.nvars())]
        }
    }

    /// `w^i` for `-1 <= i`; indices beyond `n+1` saturate at the full sum.
    pub fn upper(&self, i: i64) -> i64 {
        if i < 0 {
            -1
        } else {
            self.upper[(i as usize).min(self.nvars())]
        }
    }

    pub fn lower_seq(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper_seq(&self) -> &[i64] {
        &self.upper
    }

    pub fn total(&self) -> i64 {
        *self.upper.last().unwrap()
    }
}

/// `sigma = sum (d_i - 1)`.
pub fn sigma(g: &Grading) -> Result<i64> {
    let w = g
        .weights()
        .ok_or_else(|| Error::Unsupported("sigma needs a Z-grading".into()))?;
    Ok(w.iter().map(|d| d - 1).sum())
}

/// Number of monomials of degree exactly `d`.
pub fn graded_piece_dim(g: &Grading, d: &Degree) -> usize {
    if d.rank() != g.rank() {
        return 0;
    }
    let target = g.order_value(d);
    if target < 0 {
        return 0;
    }
    if g.is_z_graded() {
        // counting only; avoids materializing monomials
        let w = g.order_weights();
        let mut ways = vec![0usize; target as usize + 1];
        ways[0] = 1;
        for &wi in w {
            for t in wi as usize..=target as usize {
                ways[t] += ways[t - wi as usize];
            }
        }
        return ways[target as usize];
    }
    g.monomials_of_degree(d).len()
}
