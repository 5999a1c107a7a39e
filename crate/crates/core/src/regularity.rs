//! Ext modules, local cohomology degree support via local duality, Koszul
//! and weighted regularity, and checks of the Betti number bounds.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::free_module::FreeModule;
use crate::grading::{sigma, Grading, KoszulBounds};
use crate::module::PresentedModule;
use crate::poly::Polynomial;
use crate::resolution::{
    depth, free_resolution, homology_module, krull_dimension, minimal_free_resolution, BettiTable, ChainComplex,
};

fn weights_of(g: &Grading) -> Result<Vec<i64>> {
    g.weights()
        .ok_or_else(|| Error::Unsupported("regularity is defined for Z-gradings only".into()))
}

/// `Ext^j_S(M, S)` for `j = 0..=n+1`, as homology of the dual of a minimal
/// free resolution.
pub fn ext_modules<F: Field>(m: &PresentedModule<F>) -> Result<Vec<PresentedModule<F>>> {
    let res = minimal_free_resolution(m)?;
    ext_from_resolution(&res)
}

pub fn ext_from_resolution<F: Field>(res: &ChainComplex<F>) -> Result<Vec<PresentedModule<F>>> {
    let ring = res.ring();
    let n1 = ring.nvars();
    let mut out = Vec::with_capacity(n1 + 1);
    for j in 0..=n1 {
        let fj = res.module(j);
        if fj.rank() == 0 {
            out.push(PresentedModule::new(ring, FreeModule::zero(), Vec::new())?);
            continue;
        }
        let out_map = res.differential(j + 1).transpose(ring);
        let in_map = (j > 0).then(|| res.differential(j).transpose(ring));
        out.push(homology_module(ring, &fj.dual().twists, Some(&out_map), in_map.as_ref())?);
    }
    Ok(out)
}

/// `max{d : H^i_m(M)_d ≠ 0}` for each `i = 0..=n+1`, `None` for `-∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomologySupport {
    pub max_degree: Vec<Option<i64>>,
}

impl LocalCohomologySupport {
    pub fn get(&self, i: usize) -> Option<i64> {
        self.max_degree.get(i).copied().flatten()
    }

    pub fn is_zero(&self) -> bool {
        self.max_degree.iter().all(|d| d.is_none())
    }
}

/// Local cohomology support from Ext: `H^i_m(M) = Ext^{n+1-i}(M, S(-w))^*`,
/// so the top degree is `-w - (least generator degree of the Ext module)`.
pub fn local_cohomology_via_ext<F: Field>(m: &PresentedModule<F>) -> Result<LocalCohomologySupport> {
    let w = weights_of(&m.ring().grading)?;
    let total: i64 = w.iter().sum();
    let n1 = w.len();
    let ext = ext_modules(m)?;
    let mut max_degree = vec![None; n1 + 1];
    for (i, slot) in max_degree.iter_mut().enumerate() {
        let e = &ext[n1 - i];
        *slot = e.min_generator_degree().map(|d| -total - d.value());
    }
    Ok(LocalCohomologySupport { max_degree })
}

fn variables<F: Field>(m: &PresentedModule<F>) -> Vec<Polynomial<F>> {
    (0..m.ring().nvars()).map(|i| m.ring().variable(i)).collect()
}

/// `H^0_m(M)` as a presented module.
pub fn zeroth_local_cohomology<F: Field>(m: &PresentedModule<F>) -> Result<PresentedModule<F>> {
    m.torsion_module(&variables(m))
}

/// Top nonzero degree of a finite length module, from its Hilbert series
/// `K(t) / Π (1 - t^{d_i})`, which is a polynomial.
pub fn top_degree_finite_length<F: Field>(t: &PresentedModule<F>) -> Result<Option<i64>> {
    if t.num_generators() == 0 {
        return Ok(None);
    }
    let g = &t.ring().grading;
    let w = weights_of(g)?;
    let betti = free_resolution(t, None)?.betti_table();
    let num = betti.hilbert_numerator(g);
    if num.is_empty() {
        return Ok(None);
    }
    let lo = *num.keys().next().unwrap();
    let hi = *num.keys().last().unwrap();
    let mut p: Vec<i64> = (lo..=hi).map(|e| num.get(&e).copied().unwrap_or(0)).collect();
    // divide by (1 - t^d) for each weight: q_k = p_k + q_{k-d}
    for d in &w {
        let d = *d as usize;
        let len = p.len().checked_sub(d).ok_or_else(|| {
            Error::Unsupported("module is not of finite length".into())
        })?;
        let mut q = vec![0i64; len];
        for k in 0..len {
            q[k] = p[k] + if k >= d { q[k - d] } else { 0 };
        }
        // remainder must vanish
        for k in len..p.len() {
            let back = if k >= d && k - d < len { q[k - d] } else { 0 };
            if p[k] + back != 0 {
                return Err(Error::Unsupported("module is not of finite length".into()));
            }
        }
        p = q;
    }
    Ok(p.iter().rposition(|&c| c != 0).map(|k| lo + k as i64))
}

/// Local cohomology support, with `i = 0` computed from the torsion
/// submodule and the rest through local duality.
pub fn local_cohomology<F: Field>(m: &PresentedModule<F>) -> Result<LocalCohomologySupport> {
    let mut s = local_cohomology_via_ext(m)?;
    let t = zeroth_local_cohomology(m)?;
    s.max_degree[0] = top_degree_finite_length(&t)?;
    Ok(s)
}

/// `max{d : H^i_m(M)_d ≠ 0}`, or `None` for `-∞`.
pub fn local_cohomology_maxdeg<F: Field>(m: &PresentedModule<F>, i: usize) -> Result<Option<i64>> {
    if m.is_zero()? {
        return Err(Error::ZeroModule);
    }
    if i == 0 {
        let t = zeroth_local_cohomology(m)?;
        return top_degree_finite_length(&t);
    }
    Ok(local_cohomology_via_ext(m)?.get(i))
}

/// A regularity value with the cohomological index and top degree that
/// realize it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub value: i64,
    pub index: usize,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub koszul: Witness,
    pub weighted: Witness,
    pub support: LocalCohomologySupport,
}

fn best(support: &LocalCohomologySupport, shift: impl Fn(usize) -> i64) -> Result<Witness> {
    support
        .max_degree
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.map(|d| Witness {
            value: d + shift(i),
            index: i,
            degree: d,
        }))
        .max_by(|a, b| a.value.cmp(&b.value).then(b.index.cmp(&a.index)))
        .ok_or(Error::ZeroModule)
}

/// Both regularities from a precomputed support.
pub fn regularity_from_support(g: &Grading, support: &LocalCohomologySupport) -> Result<RegularityReport> {
    let kb = KoszulBounds::new(g)?;
    let koszul = best(support, |i| kb.upper(i as i64 - 1) + 1)?;
    let weighted = best(support, |i| i as i64)?;
    Ok(RegularityReport {
        koszul,
        weighted,
        support: support.clone(),
    })
}

pub fn regularity<F: Field>(m: &PresentedModule<F>) -> Result<RegularityReport> {
    let support = local_cohomology(m)?;
    regularity_from_support(&m.ring().grading, &support)
}

/// Least `r` with `H^i_m(M)_d = 0` for all `d ≥ r - w^{i-1}`.
pub fn koszul_regularity<F: Field>(m: &PresentedModule<F>) -> Result<i64> {
    Ok(regularity(m)?.koszul.value)
}

/// Least `r` with `H^i_m(M)_j = 0` for all `j > r - i`.
pub fn weighted_regularity<F: Field>(m: &PresentedModule<F>) -> Result<i64> {
    Ok(regularity(m)?.weighted.value)
}

/// Everything the bound checks need, computed once.
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub betti: BettiTable,
    pub depth: usize,
    pub krull_dimension: usize,
    pub regularity: RegularityReport,
    pub bounds: KoszulBounds,
    pub sigma: i64,
}

impl ModuleData {
    pub fn compute<F: Field>(m: &PresentedModule<F>) -> Result<Self> {
        let g = &m.ring().grading;
        let res = minimal_free_resolution(m)?;
        let betti = res.betti_table();
        if betti.is_empty() {
            return Err(Error::ZeroModule);
        }
        let ext = ext_from_resolution(&res)?;
        let w = weights_of(g)?;
        let total: i64 = w.iter().sum();
        let n1 = w.len();
        let mut max_degree: Vec<Option<i64>> = (0..=n1)
            .map(|i| ext[n1 - i].min_generator_degree().map(|d| -total - d.value()))
            .collect();
        max_degree[0] = top_degree_finite_length(&zeroth_local_cohomology(m)?)?;
        let support = LocalCohomologySupport { max_degree };
        Ok(ModuleData {
            depth: depth(&betti, g)?,
            krull_dimension: krull_dimension(&betti, g)?,
            regularity: regularity_from_support(g, &support)?,
            bounds: KoszulBounds::new(g)?,
            sigma: sigma(g)?,
            betti,
        })
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.depth == self.krull_dimension
    }
}

/// A Betti number sitting in a degree a bound forbids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiViolation {
    pub i: usize,
    pub degree: i64,
    pub mult: usize,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub i: usize,
    /// Betti numbers must vanish in degrees `≥ bound`.
    pub bound: i64,
    pub max_realized: Option<i64>,
    /// `bound - max_realized`; one means the bound is attained.
    pub slack: Option<i64>,
}

impl BoundRow {
    pub fn max_allowed(&self) -> i64 {
        self.bound - 1
    }

    pub fn is_sharp(&self) -> bool {
        self.slack == Some(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    pub regularity: i64,
    pub depth: usize,
    pub rows: Vec<BoundRow>,
    pub violations: Vec<BettiViolation>,
}

impl TheoremAReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// With `r` the Koszul regularity and `e` the depth, every `β_{i,j}` with
/// `j ≥ r + w^{i+e} - w^{e-1}` must vanish.
pub fn check_betti_bound(d: &ModuleData) -> TheoremAReport {
    let r = d.regularity.koszul.value;
    let e = d.depth as i64;
    let kb = &d.bounds;
    let top = d.betti.max_index().unwrap_or(0);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for i in 0..=top {
        let bound = r + kb.upper(i as i64 + e) - kb.upper(e - 1);
        let max_realized = d.betti.max_degree(i);
        for (a, mult) in d.betti.degrees_at(i) {
            if a.value() >= bound {
                violations.push(BettiViolation {
                    i,
                    degree: a.value(),
                    mult,
                    bound,
                });
            }
        }
        rows.push(BoundRow {
            i,
            bound,
            max_realized,
            slack: max_realized.map(|m| bound - m),
        });
    }
    TheoremAReport {
        regularity: r,
        depth: d.depth,
        rows,
        violations,
    }
}

pub fn verify_theorem_a<F: Field>(m: &PresentedModule<F>) -> Result<TheoremAReport> {
    Ok(check_betti_bound(&ModuleData::compute(m)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub i: usize,
    /// `H^i_m(M)_d` must vanish for `d ≥ threshold`.
    pub threshold: i64,
    pub max_degree: Option<i64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremBReport {
    pub cohen_macaulay: bool,
    pub depth: usize,
    pub krull_dimension: usize,
    pub koszul_regularity: i64,
    /// Least `r` with `β_{i,j} = 0` for `j ≥ r + w^{i+e} - w^{e-1}`.
    pub betti_regularity: i64,
    /// For Cohen–Macaulay modules: Koszul regularity is at most
    /// `betti_regularity`.
    pub converse: Option<bool>,
    /// Least `r` with `β_{i,j} = 0` for `j ≥ r + w^{i+1}`.
    pub general_regularity: i64,
    pub rows: Vec<CohomologyRow>,
}

impl TheoremBReport {
    pub fn holds(&self) -> bool {
        self.converse != Some(false) && self.rows.iter().all(|r| r.holds)
    }
}

/// Checks that Betti vanishing forces cohomology vanishing: the full
/// converse for Cohen–Macaulay modules, and the `w_{i-1}` version always.
pub fn check_cohomology_bound(d: &ModuleData) -> TheoremBReport {
    let kb = &d.bounds;
    let e = d.depth as i64;
    let least = |shift: &dyn Fn(usize) -> i64| -> i64 {
        d.betti
            .entries()
            .map(|(i, a, _)| a.value() - shift(i) + 1)
            .max()
            .unwrap()
    };
    let betti_regularity = least(&|i| kb.upper(i as i64 + e) - kb.upper(e - 1));
    let general_regularity = least(&|i| kb.upper(i as i64 + 1));
    let cm = d.is_cohen_macaulay();
    let koszul = d.regularity.koszul.value;
    let rows = d
        .regularity
        .support
        .max_degree
        .iter()
        .enumerate()
        .map(|(i, md)| {
            let threshold = general_regularity - kb.lower(i as i64 - 1);
            CohomologyRow {
                i,
                threshold,
                max_degree: *md,
                holds: md.is_none_or(|x| x < threshold),
            }
        })
        .collect();
    TheoremBReport {
        cohen_macaulay: cm,
        depth: d.depth,
        krull_dimension: d.krull_dimension,
        koszul_regularity: koszul,
        betti_regularity,
        converse: cm.then_some(koszul <= betti_regularity),
        general_regularity,
        rows,
    }
}

pub fn verify_theorem_b<F: Field>(m: &PresentedModule<F>) -> Result<TheoremBReport> {
    Ok(check_cohomology_bound(&ModuleData::compute(m)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymondsReport {
    pub sigma: i64,
    pub weighted_regularity: i64,
    /// Least `r` with `Tor_i(M,k)_j = 0` for all `j > r + i + σ`.
    pub betti_rows: i64,
}

impl SymondsReport {
    /// Weighted `r`-regularity is equivalent to the Tor vanishing for every
    /// `r` exactly when the two least values coincide.
    pub fn holds(&self) -> bool {
        self.sigma >= 0 && self.weighted_regularity == self.betti_rows
    }
}

pub fn check_symonds(d: &ModuleData) -> SymondsReport {
    let betti_rows = d
        .betti
        .entries()
        .map(|(i, a, _)| a.value() - i as i64 - d.sigma)
        .max()
        .unwrap();
    SymondsReport {
        sigma: d.sigma,
        weighted_regularity: d.regularity.weighted.value,
        betti_rows,
    }
}

pub fn verify_symonds<F: Field>(m: &PresentedModule<F>) -> Result<SymondsReport> {
    Ok(check_symonds(&ModuleData::compute(m)?))
}

/// Search ceiling for [`min_koszul_zero_regular_truncation`], as a multiple
/// of `w^{n+1}` above the least generator degree.
pub const TRUNCATION_SEARCH_FACTOR: i64 = 10;

/// Koszul regularity of `M_{≥r}(r)`, with the zero module counting as
/// regular in every degree.
fn truncated_regularity<F: Field>(m: &PresentedModule<F>, r: i64) -> Result<Option<i64>> {
    let t = m.truncate_twist(r)?;
    if t.is_zero()? {
        return Ok(None);
    }
    Ok(Some(koszul_regularity(&t)?))
}

/// Least `r ≥` (least generator degree) with `M_{≥r}(r)` Koszul
/// 0-regular, by increasing search.
pub fn min_koszul_zero_regular_truncation<F: Field>(m: &PresentedModule<F>) -> Result<i64> {
    let w = weights_of(&m.ring().grading)?;
    let total: i64 = w.iter().sum();
    let start = m.min_generator_degree().ok_or(Error::ZeroModule)?.value();
    let ceiling = start + TRUNCATION_SEARCH_FACTOR * total;
    for r in start..=ceiling {
        if truncated_regularity(m, r)?.is_none_or(|k| k <= 0) {
            return Ok(r);
        }
    }
    Err(Error::ResourceLimit(format!(
        "no Koszul 0-regular truncation found for r up to {ceiling}"
    )))
}

/// Least `r` at or above the Koszul 0-regular one where `M_{≥r}(r)` is
/// also free of `H^0_m`, so its depth is positive.
pub fn min_positive_depth_regular_truncation<F: Field>(m: &PresentedModule<F>) -> Result<i64> {
    let w = weights_of(&m.ring().grading)?;
    let total: i64 = w.iter().sum();
    let start = min_koszul_zero_regular_truncation(m)?;
    let ceiling = m.min_generator_degree().ok_or(Error::ZeroModule)?.value() + TRUNCATION_SEARCH_FACTOR * total;
    for r in start..=ceiling {
        let t = m.truncate_twist(r)?;
        if t.is_zero()? {
            return Ok(r);
        }
        if koszul_regularity(&t)? <= 0 && zeroth_local_cohomology(&t)?.is_zero()? {
            return Ok(r);
        }
    }
    Err(Error::ResourceLimit(format!(
        "no Koszul 0-regular truncation of positive depth found for r up to {ceiling}"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationSupport {
    pub r: i64,
    pub betti: Vec<(usize, i64, usize)>,
    /// Entries outside `w_i ≤ j < w^{i+1}`.
    pub violations: Vec<(usize, i64)>,
}

impl TruncationSupport {
    fn of<F: Field>(m: &PresentedModule<F>, r: i64) -> Result<Self> {
        let kb = KoszulBounds::new(&m.ring().grading)?;
        let t = m.truncate_twist(r)?;
        let betti = minimal_free_resolution(&t)?.betti_table();
        let mut entries = Vec::new();
        let mut violations = Vec::new();
        for (i, a, mult) in betti.entries() {
            let j = a.value();
            entries.push((i, j, mult));
            if j < kb.lower(i as i64) || j >= kb.upper(i as i64 + 1) {
                violations.push((i, j));
            }
        }
        Ok(TruncationSupport {
            r,
            betti: entries,
            violations,
        })
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationReport {
    /// At the least Koszul 0-regular truncation.
    pub least: TruncationSupport,
    /// At the least such truncation that also has positive depth.
    pub positive_depth: TruncationSupport,
}

impl TruncationReport {
    /// The support bound where it is guaranteed: positive depth.
    pub fn holds(&self) -> bool {
        self.positive_depth.holds()
    }
}

/// Betti degrees of `M_{≥r}(r)` in index `i` against `[w_i, w^{i+1})`, at
/// the least Koszul 0-regular `r` and at the least one of positive depth.
/// A truncation of depth 0 can reach `j = w^{n+1}` in index `n+1`.
pub fn verify_truncation_support<F: Field>(m: &PresentedModule<F>) -> Result<TruncationReport> {
    let r = min_koszul_zero_regular_truncation(m)?;
    let least = TruncationSupport::of(m, r)?;
    let rp = min_positive_depth_regular_truncation(m)?;
    let positive_depth = if rp == r {
        least.clone()
    } else {
        TruncationSupport::of(m, rp)?
    };
    Ok(TruncationReport { least, positive_depth })
}

/// Classical regularity read off the Betti table: `max (j - i)`.
pub fn betti_row_regularity(b: &BettiTable) -> Option<i64> {
    b.entries().map(|(i, a, _)| a.value() - i as i64).max()
}

/// Multiplicities of a table grouped by `j - i`, for quick comparisons.
pub fn betti_rows(b: &BettiTable) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (i, a, m) in b.entries() {
        *out.entry(a.value() - i as i64).or_insert(0) += m;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Degree;
    use crate::field::Rationals;
    use crate::poly::PolyRing;

    fn ring(w: &[i64]) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, Grading::weighted(w).unwrap())
    }

    #[test]
    fn ext_of_complete_intersection() {
        let r = ring(&[2, 3, 5, 7]);
        let m = PresentedModule::quotient_ring(&r, &[r.variable(2), r.variable(3)]).unwrap();
        let ext = ext_modules(&m).unwrap();
        for (j, e) in ext.iter().enumerate() {
            if j == 2 {
                assert_eq!(e.twists(), &[Degree::scalar(-12)]);
                assert_eq!(e.relations().len(), 2);
            } else {
                assert!(e.is_zero().unwrap(), "Ext^{j} should vanish");
            }
        }
        let s = local_cohomology(&m).unwrap();
        assert_eq!(s.max_degree, vec![None, None, Some(-5), None, None]);
        let reg = regularity(&m).unwrap();
        assert_eq!(reg.weighted.value, 2 - 5);
        assert_eq!(reg.koszul.value, 7 - 5 + 1);
    }

    #[test]
    fn free_module_regularities() {
        let r = ring(&[2, 3, 5]);
        let s = PresentedModule::free(&r, vec![Degree::scalar(0)]).unwrap();
        let reg = regularity(&s).unwrap();
        assert_eq!(reg.support.max_degree, vec![None, None, None, Some(-10)]);
        assert_eq!(reg.koszul.value, -1);
        assert_eq!(reg.weighted.value, -7);
    }

    #[test]
    fn torsion_route_matches_ext_route() {
        let r = ring(&[1, 2]);
        // S/(x0^2, x0*x1): torsion generated by x0 in degree 1
        let x = r.variable(0);
        let y = r.variable(1);
        let m = PresentedModule::quotient_ring(&r, &[x.mul(&r, &x), x.mul(&r, &y)]).unwrap();
        let ext = local_cohomology_via_ext(&m).unwrap();
        let direct = local_cohomology(&m).unwrap();
        assert_eq!(ext, direct);
        assert_eq!(direct.get(0), Some(1));
    }

    #[test]
    fn maximal_ideal_bounds_are_sharp() {
        let r = ring(&[2, 3, 5]);
        let vars: Vec<_> = (0..3).map(|i| r.variable(i)).collect();
        let m = PresentedModule::ideal(&r, &vars).unwrap();
        let rep = verify_theorem_a(&m).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.regularity, 1);
        assert_eq!(rep.depth, 1);
        let allowed: Vec<i64> = rep.rows.iter().map(|r| r.max_allowed()).collect();
        assert_eq!(allowed, vec![5, 8, 10]);
        assert!(rep.rows.iter().all(|r| r.is_sharp()));
        assert!(verify_symonds(&m).unwrap().holds());
        assert!(verify_theorem_b(&m).unwrap().holds());
    }

    #[test]
    fn finite_length_top_degree() {
        let r = ring(&[1, 2]);
        let k = PresentedModule::residue_field(&r).unwrap();
        assert_eq!(top_degree_finite_length(&k).unwrap(), Some(0));
        let x = r.variable(0);
        let y = r.variable(1);
        let m = PresentedModule::quotient_ring(&r, &[x.pow(&r, 3), y.pow(&r, 2)]).unwrap();
        // top monomial x^2 y^1: degree 2 + 2
        assert_eq!(top_degree_finite_length(&m).unwrap(), Some(4));
        assert_eq!(min_koszul_zero_regular_truncation(&m).unwrap(), 4);
    }

    #[test]
    fn truncation_search_on_free_module() {
        let r = ring(&[2, 3, 5]);
        let s = PresentedModule::free(&r, vec![Degree::scalar(0)]).unwrap();
        assert_eq!(min_koszul_zero_regular_truncation(&s).unwrap(), 0);
        assert!(verify_truncation_support(&s).unwrap().holds());
    }
}
