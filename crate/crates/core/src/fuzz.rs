//! Fixed-seed randomized checks over monomial quotients.
//!
//! Instances are generated sequentially from one seeded stream and then
//! evaluated in parallel, so results do not depend on the worker count.
//! `GSW_THREADS` sets the number of workers.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::grading::{Degree, Grading, KoszulBounds};
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::regularity::{
    betti_row_regularity, check_betti_bound, check_cohomology_bound, check_symonds, regularity,
    verify_truncation_support, ModuleData,
};
use crate::resolution::{minimal_free_resolution, tor_via_koszul};
use crate::toric::{check_containment, multigraded_truncate, CoxData, Fan};

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Betti vanishing above the Koszul regularity bound.
    TheoremA,
    /// Converse for Cohen-Macaulay modules and the general cohomology bound.
    TheoremB,
    /// Weighted regularity against the Betti table shifted by sigma.
    Symonds,
    /// Betti support of the least Koszul 0-regular truncation.
    Cor17,
    /// Betti tables from resolutions, Koszul homology and BGG.
    Triple,
    /// All weights one: both regularities equal the classical one.
    Standard,
    /// Rescaling weights and twists by 2 and 3.
    Rescale,
    /// Betti polytope containment over the Hirzebruch surface of type 3.
    Toric,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::TheoremA,
        Suite::TheoremB,
        Suite::Symonds,
        Suite::Cor17,
        Suite::Triple,
        Suite::Standard,
        Suite::Rescale,
        Suite::Toric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremA => "a",
            Suite::TheoremB => "b",
            Suite::Symonds => "symonds",
            Suite::Cor17 => "cor17",
            Suite::Triple => "triple",
            Suite::Standard => "standard",
            Suite::Rescale => "rescale",
            Suite::Toric => "toric",
        }
    }

    pub fn params(self) -> InstanceParams {
        match self {
            Suite::Triple => InstanceParams {
                max_vars: 3,
                max_weight: 4,
                max_degree: 12,
                ..InstanceParams::default()
            },
            Suite::Standard => InstanceParams {
                max_weight: 1,
                max_degree: 6,
                ..InstanceParams::default()
            },
            Suite::Rescale => InstanceParams {
                max_vars: 3,
                ..InstanceParams::default()
            },
            _ => InstanceParams::default(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown fuzz suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceParams {
    pub max_vars: usize,
    pub max_weight: i64,
    pub max_degree: i64,
    pub max_generators: usize,
    pub max_twist: i64,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            max_vars: 4,
            max_weight: 6,
            max_degree: 20,
            max_generators: 4,
            max_twist: 3,
        }
    }
}

/// `(S/I)(-twist)` for a monomial ideal `I`; exponents follow the order of
/// `weights`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialInstance {
    pub weights: Vec<i64>,
    pub generators: Vec<Vec<u32>>,
    pub twist: i64,
}

fn random_exponents<R: Rng>(rng: &mut R, weights: &[i64], max_degree: i64) -> Vec<u32> {
    let n = weights.len();
    let target = rng.gen_range((max_degree / 2).max(1)..=max_degree);
    let mut e = vec![0u32; n];
    let mut left = target;
    loop {
        let fits: Vec<usize> = (0..n).filter(|&i| weights[i] <= left).collect();
        let Some(&i) = fits.choose(rng) else { break };
        e[i] += 1;
        left -= weights[i];
    }
    if e.iter().all(|&x| x == 0) {
        e[rng.gen_range(0..n)] = 1;
    }
    e
}

impl MonomialInstance {
    pub fn random<R: Rng>(rng: &mut R, p: &InstanceParams) -> Self {
        let n = rng.gen_range(p.max_vars.min(2)..=p.max_vars);
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=p.max_weight)).collect();
        let k = rng.gen_range(1..=p.max_generators);
        let generators = (0..k).map(|_| random_exponents(rng, &weights, p.max_degree)).collect();
        let twist = rng.gen_range(-p.max_twist..=p.max_twist);
        MonomialInstance {
            weights,
            generators,
            twist,
        }
    }

    pub fn ring<F: Field>(&self, field: F) -> Result<PolyRing<F>> {
        Ok(PolyRing::new(field, Grading::weighted(&self.weights)?))
    }

    pub fn ideal<F: Field>(&self, ring: &PolyRing<F>) -> Result<Vec<Polynomial<F>>> {
        let g = &ring.grading;
        self.generators
            .iter()
            .map(|e| {
                let mut sorted = vec![0u32; e.len()];
                for (i, &x) in e.iter().enumerate() {
                    sorted[g.sorted_index(i)] = x;
                }
                Ok(Polynomial::monomial(ring, Monomial::from_exponents(&sorted)?, ring.field.one()))
            })
            .collect()
    }

    pub fn module<F: Field>(&self, ring: &PolyRing<F>) -> Result<PresentedModule<F>> {
        let q = PresentedModule::quotient_ring(ring, &self.ideal(ring)?)?;
        Ok(q.twist(&Degree::scalar(-self.twist)))
    }

    /// Weights and twist multiplied by `lambda`.
    pub fn rescaled(&self, lambda: i64) -> Self {
        MonomialInstance {
            weights: self.weights.iter().map(|w| w * lambda).collect(),
            generators: self.generators.clone(),
            twist: self.twist * lambda,
        }
    }
}

impl fmt::Display for MonomialInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|e| {
                let parts: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| if x == 1 { format!("x{i}") } else { format!("x{i}^{x}") })
                    .collect();
                parts.join("*")
            })
            .collect();
        write!(f, "weights {:?} (S/({}))({})", self.weights, gens.join(", "), -self.twist)
    }
}

/// Monomial quotients of the Cox ring of the Hirzebruch surface of type 3,
/// truncated at (3,3).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricInstance {
    /// Exponents indexed by ray.
    pub generators: Vec<Vec<u32>>,
}

impl ToricInstance {
    pub const TRUNCATION: [i64; 2] = [3, 3];

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let k = rng.gen_range(1..=3);
        let generators = (0..k)
            .map(|_| loop {
                let e: Vec<u32> = (0..4).map(|_| rng.gen_range(0..=2)).collect();
                if e.iter().any(|&x| x > 0) {
                    break e;
                }
            })
            .collect();
        ToricInstance { generators }
    }
}

impl fmt::Display for ToricInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hirzebruch(3) S/{:?} truncated at {:?}", self.generators, Self::TRUNCATION)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub index: usize,
    pub instance: String,
    pub passed: bool,
    pub detail: String,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub outcomes: Vec<Outcome>,
}

impl FuzzReport {
    pub fn violations(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.passed && o.error.is_none())
    }

    pub fn errors(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.error.is_some())
    }

    pub fn holds(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn summary(&self) -> String {
        format!(
            "suite {} seed {} count {}: {} passed, {} violations, {} errors",
            self.suite,
            self.seed,
            self.count,
            self.outcomes.iter().filter(|o| o.passed).count(),
            self.violations().count(),
            self.errors().count()
        )
    }
}

/// Worker pool sized by `GSW_THREADS` when set.
pub fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("GSW_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        b = b.num_threads(n.max(1));
    }
    b.build().expect("thread pool")
}

/// The first `count` instances of a suite's stream.
pub fn instances(suite: Suite, seed: u64, count: usize) -> Vec<MonomialInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = suite.params();
    (0..count).map(|_| MonomialInstance::random(&mut rng, &p)).collect()
}

pub fn toric_instances(seed: u64, count: usize) -> Vec<ToricInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| ToricInstance::random(&mut rng)).collect()
}

type Check = (bool, String);

pub fn run(suite: Suite, seed: u64, count: usize) -> FuzzReport {
    let described: Vec<(String, Box<dyn Fn() -> Result<Check> + Send + Sync>)> = if suite == Suite::Toric {
        let cox = std::sync::Arc::new(
            Fan::hirzebruch(3)
                .and_then(CoxData::new)
                .expect("Cox data of the Hirzebruch surface"),
        );
        toric_instances(seed, count)
            .into_iter()
            .map(|t| {
                let text = t.to_string();
                let cox = cox.clone();
                let f: Box<dyn Fn() -> Result<Check> + Send + Sync> = Box::new(move || check_toric(&cox, &t));
                (text, f)
            })
            .collect()
    } else {
        instances(suite, seed, count)
            .into_iter()
            .map(|inst| {
                let text = inst.to_string();
                let f: Box<dyn Fn() -> Result<Check> + Send + Sync> = Box::new(move || check_instance(suite, &inst));
                (text, f)
            })
            .collect()
    };
    let pool = thread_pool();
    let outcomes = pool.install(|| {
        described
            .par_iter()
            .enumerate()
            .map(|(index, (instance, f))| match f() {
                Ok((passed, detail)) => Outcome {
                    index,
                    instance: instance.clone(),
                    passed,
                    detail,
                    error: None,
                },
                Err(e) => Outcome {
                    index,
                    instance: instance.clone(),
                    passed: false,
                    detail: String::new(),
                    error: Some(e.to_string()),
                },
            })
            .collect()
    });
    FuzzReport {
        suite,
        seed,
        count,
        outcomes,
    }
}

fn check_instance(suite: Suite, inst: &MonomialInstance) -> Result<Check> {
    let ring = inst.ring(Rationals)?;
    let m = inst.module(&ring)?;
    match suite {
        Suite::TheoremA => {
            let r = check_betti_bound(&ModuleData::compute(&m)?);
            Ok((r.holds(), format!("{:?}", r.violations)))
        }
        Suite::TheoremB => {
            let r = check_cohomology_bound(&ModuleData::compute(&m)?);
            Ok((r.holds(), format!("converse {:?}, rows {:?}", r.converse, r.rows)))
        }
        Suite::Symonds => {
            let r = check_symonds(&ModuleData::compute(&m)?);
            Ok((r.holds(), format!("{r:?}")))
        }
        Suite::Cor17 => {
            let r = verify_truncation_support(&m)?;
            Ok((
                r.holds(),
                format!(
                    "least r = {} violations {:?}; positive depth r = {} violations {:?}",
                    r.least.r, r.least.violations, r.positive_depth.r, r.positive_depth.violations
                ),
            ))
        }
        Suite::Triple => triple_oracle(&m),
        Suite::Standard => {
            let d = ModuleData::compute(&m)?;
            let classical = betti_row_regularity(&d.betti).ok_or(Error::ZeroModule)?;
            let (k, w) = (d.regularity.koszul.value, d.regularity.weighted.value);
            Ok((k == classical && w == classical, format!("koszul {k}, weighted {w}, betti {classical}")))
        }
        Suite::Rescale => rescaling(inst),
        Suite::Toric => Err(Error::Unsupported("toric instances are not monomial quotients".into())),
    }
}

/// Betti numbers from a minimal resolution, from Koszul homology and from
/// the BGG differential module, on every degree where any of them can be
/// nonzero.
pub fn triple_oracle<F: Field>(m: &PresentedModule<F>) -> Result<Check> {
    let g = &m.ring().grading;
    let betti = minimal_free_resolution(m)?.betti_table();
    let w: i64 = g.weights().ok_or_else(|| Error::Unsupported("needs a Z-grading".into()))?.iter().sum();
    let lo = m.min_generator_degree().ok_or(Error::ZeroModule)?.value();
    let hi = (0..=g.nvars()).filter_map(|i| betti.max_degree(i)).max().unwrap_or(lo) + 1;
    let bgg = crate::bgg::bgg_r(m, lo - w, hi + w)?;
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for a in lo..=hi {
        for j in 0..=g.nvars() {
            let b = betti.get_z(j, a);
            let k = tor_via_koszul(m, j, &Degree::scalar(a));
            let h = bgg.homology(a, j as i64)?;
            checked += 1;
            if b != k || b != h {
                mismatches.push((j, a, b, k, h));
            }
        }
    }
    Ok((
        mismatches.is_empty(),
        format!("{checked} bidegrees, mismatches (j, a, betti, koszul, bgg) {mismatches:?}"),
    ))
}

/// `M` is Koszul `r`-regular exactly when its rescaling is Koszul
/// `λr`-regular, so the rescaled local cohomology support is `λ` times the
/// original and the least regular value becomes `λ(r - 1) + 1` unless the
/// binding index is 0.
fn rescaling(inst: &MonomialInstance) -> Result<Check> {
    let ring = inst.ring(Rationals)?;
    let base = regularity(&inst.module(&ring)?)?;
    let mut details = Vec::new();
    let mut ok = true;
    for lambda in [2, 3] {
        let scaled_inst = inst.rescaled(lambda);
        let sring = scaled_inst.ring(Rationals)?;
        let scaled = regularity(&scaled_inst.module(&sring)?)?;
        let expected: Vec<Option<i64>> = base.support.max_degree.iter().map(|d| d.map(|d| d * lambda)).collect();
        let support_ok = scaled.support.max_degree == expected;
        let kb = KoszulBounds::new(&sring.grading)?;
        let regular_at = |r: i64| {
            scaled
                .support
                .max_degree
                .iter()
                .enumerate()
                .all(|(i, d)| d.is_none_or(|d| d < r - kb.upper(i as i64 - 1)))
        };
        let r = base.koszul.value;
        let iff = regular_at(lambda * r) && !regular_at(lambda * (r - 1));
        ok &= support_ok && iff;
        details.push(format!(
            "lambda {lambda}: koszul {} -> {}, weighted {} -> {}",
            r, scaled.koszul.value, base.weighted.value, scaled.weighted.value
        ));
    }
    Ok((ok, details.join("; ")))
}

fn check_toric(cox: &CoxData, t: &ToricInstance) -> Result<Check> {
    let ring = cox.ring(Rationals);
    let gens = t
        .generators
        .iter()
        .map(|e| {
            let mut sorted = vec![0u32; e.len()];
            for (i, &x) in e.iter().enumerate() {
                sorted[cox.variable(i)] = x;
            }
            Ok(Polynomial::monomial(&ring, Monomial::from_exponents(&sorted)?, ring.field.one()))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = PresentedModule::quotient_ring(&ring, &gens)?;
    let m = multigraded_truncate(&n, &Degree::from_slice(&ToricInstance::TRUNCATION))?.module;
    if m.is_zero()? {
        return Ok((true, "truncation is zero".into()));
    }
    let report = check_containment(&m, cox, true)?;
    // a violation only counts when the hypothesis is not already refuted
    let refuted = !report.hypothesis_failures.is_empty();
    Ok((
        report.holds() || refuted,
        format!(
            "B-torsion free {}, hypothesis refuted {refuted}, violations {:?}",
            report.torsion_free, report.violations
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        assert_eq!(instances(Suite::TheoremA, 7, 20), instances(Suite::TheoremA, 7, 20));
        assert_ne!(instances(Suite::TheoremA, 7, 5), instances(Suite::TheoremA, 8, 5));
    }

    #[test]
    fn instances_respect_bounds() {
        for inst in instances(Suite::TheoremA, 1, 200) {
            assert!((1..=4).contains(&inst.weights.len()));
            assert!(inst.weights.iter().all(|w| (1..=6).contains(w)));
            for e in &inst.generators {
                let deg: i64 = e.iter().zip(&inst.weights).map(|(&x, w)| x as i64 * w).sum();
                assert!((1..=20).contains(&deg), "{inst}");
            }
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_is_clean() {
        let r = run(Suite::TheoremA, 3, 6);
        assert!(r.holds(), "{}", r.summary());
    }
}
