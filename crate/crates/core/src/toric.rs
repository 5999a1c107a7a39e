//! Simplicial fans, their Cox rings and primitive collections, and the
//! polytope constraints on multigraded Betti numbers.
//!
//! Rays and variables share the caller's numbering. For a class group of
//! rank one the grading sorts its variables by weight, so ray `i` is the
//! variable `grading.sorted_index(i)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::{Degree, Grading};
use crate::groebner::GroebnerBasis;
use crate::lattice::{
    hermite_normal_form, mat_mul, primitive_integer_vector, rational_rank, smith_normal_form, solve_rational,
    transpose, unimodular_inverse, Matrix,
};
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::poly::{ModuleElement, PolyRing, Polynomial};
use crate::resolution::{minimal_free_resolution, subsets_of_size, BettiTable, ChainComplex};

/// Rays and maximal cones of a simplicial fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    rays: Matrix,
    cones: Vec<Vec<usize>>,
}

fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

impl Fan {
    /// Checks that every cone is simplicial and full-dimensional, that every
    /// ray lies in a cone, and that no ray lies inside a cone it does not
    /// span.
    pub fn new(rays: Matrix, cones: Vec<Vec<usize>>) -> Result<Self> {
        let dim = rays
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::InvalidFan("no rays".into()))?;
        if rays.len() > crate::monomial::MAX_VARS {
            return Err(Error::InvalidFan(format!("at most {} rays are supported", crate::monomial::MAX_VARS)));
        }
        if let Some(r) = rays.iter().find(|r| r.len() != dim) {
            return Err(Error::InvalidFan(format!("ray {r:?} has the wrong length")));
        }
        if rays.iter().any(|r| r.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidFan("zero ray".into()));
        }
        if rational_rank(&rays) != dim {
            return Err(Error::InvalidFan("rays do not span the ambient space".into()));
        }
        let mut sorted = Vec::with_capacity(cones.len());
        for c in cones {
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone refers to missing ray {bad}")));
            }
            if c.len() != dim {
                return Err(Error::InvalidFan(format!("cone {c:?} is not full-dimensional and simplicial")));
            }
            let gens: Matrix = c.iter().map(|&i| rays[i].clone()).collect();
            if rational_rank(&gens) != dim {
                return Err(Error::InvalidFan(format!("cone {c:?} is not simplicial")));
            }
            sorted.push(c);
        }
        for i in 0..rays.len() {
            if !sorted.iter().any(|c| c.contains(&i)) {
                return Err(Error::InvalidFan(format!("ray {i} lies in no cone")));
            }
        }
        let fan = Fan { rays, cones: sorted };
        for c in &fan.cones {
            for i in 0..fan.rays.len() {
                if !c.contains(&i) && fan.cone_coefficients(c, &fan.rays[i]).is_some() {
                    return Err(Error::InvalidFan(format!("ray {i} lies in cone {c:?}")));
                }
            }
        }
        Ok(fan)
    }

    /// The Hirzebruch surface of type `a`.
    pub fn hirzebruch(a: i64) -> Result<Self> {
        Fan::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
    }

    pub fn projective_space(n: usize) -> Result<Self> {
        let mut rays: Matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; n]);
        let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
        Fan::new(rays, cones)
    }

    pub fn rays(&self) -> &Matrix {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn nrays(&self) -> usize {
        self.rays.len()
    }

    pub fn dim(&self) -> usize {
        self.rays[0].len()
    }

    /// Nonnegative coordinates of `v` in the rays of `cone`, if `v` lies in it.
    pub fn cone_coefficients(&self, cone: &[usize], v: &[i64]) -> Option<Vec<BigRational>> {
        let a: Matrix = (0..self.dim())
            .map(|r| cone.iter().map(|&i| self.rays[i][r]).collect())
            .collect();
        let c = solve_rational(&a, v)?;
        c.iter().all(|x| !x.is_negative()).then_some(c)
    }

    /// Whether the rays in `mask` all lie in one cone.
    pub fn spans_face(&self, mask: u32) -> bool {
        self.cones.iter().any(|c| mask & !mask_of(c) == 0)
    }
}

/// Cox ring data of a fan.
#[derive(Clone, Debug)]
pub struct CoxData {
    pub fan: Fan,
    /// One row per class group coordinate, one column per ray.
    pub degree_matrix: Matrix,
    pub grading: Grading,
    /// Minimal generators of `B`, as masks of variables.
    pub irrelevant: Vec<u32>,
    pub collections: Vec<PrimitiveCollection>,
}

/// The class group grading: the rows of the last block of `U` in the Smith
/// form `U P V = D` of the ray matrix `P` span the relations among the rays.
/// Normalized so the last `rho` columns form the identity when possible,
/// otherwise brought to Hermite form; in rank one the weights are positive.
pub fn class_group_degrees(fan: &Fan) -> Result<Matrix> {
    let smith = smith_normal_form(&fan.rays)?;
    let torsion = smith.torsion();
    if !torsion.is_empty() {
        return Err(Error::TorsionClassGroup(torsion));
    }
    let m = smith.rank();
    let n1 = fan.nrays();
    let rho = n1 - m;
    if rho == 0 {
        return Err(Error::InvalidFan("class group is trivial".into()));
    }
    let d: Matrix = smith.left[m..].to_vec();
    let last: Matrix = d.iter().map(|r| r[n1 - rho..].to_vec()).collect();
    let mut out = match unimodular_inverse(&last) {
        Some(inv) => mat_mul(&inv, &d),
        None => hermite_normal_form(&d)?,
    };
    if rho == 1 && out[0].iter().any(|&x| x < 0) {
        out[0].iter_mut().for_each(|x| *x = -*x);
    }
    Ok(out)
}

pub fn class_group_grading(fan: &Fan) -> Result<Grading> {
    let d = class_group_degrees(fan)?;
    Grading::multigraded(&transpose(&d))
}

/// `B = (Π_{i∉σ} x_i : σ a maximal cone)`, minimal generators as masks.
pub fn irrelevant_ideal(fan: &Fan) -> Vec<u32> {
    let all = (1u32 << fan.nrays()) - 1;
    let gens: Vec<u32> = fan.cones.iter().map(|c| all & !mask_of(c)).collect();
    minimize_squarefree(gens)
}

fn minimize_squarefree(mut gens: Vec<u32>) -> Vec<u32> {
    gens.sort_by_key(|m| (m.count_ones(), *m));
    gens.dedup();
    let mut out: Vec<u32> = Vec::new();
    for g in gens {
        if !out.iter().any(|&h| h & !g == 0) {
            out.push(g);
        }
    }
    out.sort_unstable();
    out
}

/// Minimal subsets of rays that lie in no cone.
pub fn primitive_collections(fan: &Fan) -> Vec<u32> {
    let n = fan.nrays();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if fan.spans_face(mask) {
            continue;
        }
        if members(mask).iter().all(|&i| fan.spans_face(mask & !(1 << i))) {
            out.push(mask);
        }
    }
    out
}

/// `∩_I (x_i : i ∈ I)` for squarefree primes, as minimal generators.
pub fn intersect_primes(primes: &[u32]) -> Vec<u32> {
    let mut current = vec![0u32];
    for &p in primes {
        let mut next = Vec::new();
        for &g in &current {
            if g & p != 0 {
                next.push(g);
            } else {
                next.extend(members(p).into_iter().map(|i| g | (1 << i)));
            }
        }
        current = minimize_squarefree(next);
    }
    current
}

/// A primitive collection `I` with its degree vector `b` (`deg_I(x_i) = b_i`)
/// and the functional `ℓ` on the class group with `ℓ · deg(x_i) = b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveCollection {
    pub members: Vec<usize>,
    pub b: Vec<i64>,
    pub functional: Vec<i64>,
}

impl PrimitiveCollection {
    pub fn mask(&self) -> u32 {
        mask_of(&self.members)
    }

    pub fn deg(&self, a: &Degree) -> i64 {
        a.dot(&self.functional)
    }

    /// Largest sum of `j` values `deg_I(x_i)`, `i ∈ I`; the full sum once
    /// `j ≥ #I`.
    pub fn w(&self, j: usize) -> i64 {
        let mut vals: Vec<i64> = self.members.iter().map(|&i| self.b[i]).collect();
        vals.sort_unstable_by(|a, b| b.cmp(a));
        vals.iter().take(j).sum()
    }
}

/// `deg_I`: write `Σ_{i∈I} v_i = Σ_{k∈σ} c_k v_k` in a cone containing it,
/// take `1_I - c`, clear denominators minimally, then express it through
/// the degree matrix.
pub fn deg_functional(fan: &Fan, degrees: &Matrix, mask: u32) -> Result<PrimitiveCollection> {
    let n1 = fan.nrays();
    let set = members(mask);
    let mut s = vec![0i64; fan.dim()];
    for &i in &set {
        for (x, y) in s.iter_mut().zip(&fan.rays[i]) {
            *x += y;
        }
    }
    let (cone, coeffs) = fan
        .cones
        .iter()
        .find_map(|c| fan.cone_coefficients(c, &s).map(|k| (c.clone(), k)))
        .ok_or_else(|| Error::IncompleteFan(format!("the ray sum {s:?} of {set:?} lies in no cone")))?;
    let mut b: Vec<BigRational> = (0..n1)
        .map(|i| {
            if mask & (1 << i) != 0 {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        })
        .collect();
    for (k, &i) in cone.iter().enumerate() {
        b[i] = &b[i] - &coeffs[k];
    }
    let b = primitive_integer_vector(&b);
    for i in 0..n1 {
        let inside = mask & (1 << i) != 0;
        if (inside && b[i] <= 0) || (!inside && b[i] > 0) {
            return Err(Error::InvalidFan(format!(
                "degree vector {b:?} of {set:?} has the wrong signs"
            )));
        }
    }
    // ℓ^T D = b
    let dt = transpose(degrees);
    let l = solve_rational(&dt, &b).ok_or_else(|| {
        Error::InvalidFan(format!("{b:?} is not a functional on the class group"))
    })?;
    if l.iter().any(|x| !x.is_integer()) {
        return Err(Error::InvalidFan(format!("{b:?} is not an integral functional")));
    }
    let functional = l.iter().map(|x| x.to_integer().try_into().expect("small")).collect();
    Ok(PrimitiveCollection {
        members: set,
        b,
        functional,
    })
}

impl CoxData {
    pub fn new(fan: Fan) -> Result<Self> {
        let degree_matrix = class_group_degrees(&fan)?;
        let grading = Grading::multigraded(&transpose(&degree_matrix))?;
        let irrelevant = irrelevant_ideal(&fan);
        let prims = primitive_collections(&fan);
        if intersect_primes(&prims) != irrelevant {
            return Err(Error::InvalidFan(
                "primitive collections do not cut out the irrelevant ideal".into(),
            ));
        }
        let collections = prims
            .iter()
            .map(|&m| deg_functional(&fan, &degree_matrix, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoxData {
            fan,
            degree_matrix,
            grading,
            irrelevant,
            collections,
        })
    }

    /// Position of ray `i` among the ring variables.
    pub fn variable(&self, ray: usize) -> usize {
        self.grading.sorted_index(ray)
    }

    pub fn ring<F: Field>(&self, field: F) -> PolyRing<F> {
        PolyRing::new(field, self.grading.clone())
    }

    /// Squarefree monomial from a mask of rays.
    pub fn monomial(&self, mask: u32) -> Monomial {
        members(mask)
            .into_iter()
            .fold(Monomial::one(), |m, i| m.mul_var(self.variable(i)))
    }

    pub fn irrelevant_generators<F: Field>(&self, ring: &PolyRing<F>) -> Vec<Polynomial<F>> {
        self.irrelevant
            .iter()
            .map(|&m| Polynomial::monomial(ring, self.monomial(m), ring.field.one()))
            .collect()
    }

    pub fn betti_polytope(&self, i: usize) -> BettiPolytope {
        BettiPolytope {
            i,
            facets: self
                .collections
                .iter()
                .map(|c| Facet {
                    collection: c.members.clone(),
                    normal: c.functional.clone(),
                    bound: c.w(i + 1),
                })
                .collect(),
        }
    }
}

/// `ℓ · a < bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub collection: Vec<usize>,
    pub normal: Vec<i64>,
    pub bound: i64,
}

/// `{a : deg_I(a) < w_I^{i+1} for every primitive collection I}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiPolytope {
    pub i: usize,
    pub facets: Vec<Facet>,
}

impl BettiPolytope {
    pub fn violated_facet(&self, a: &Degree) -> Option<&Facet> {
        self.facets.iter().find(|f| a.dot(&f.normal) >= f.bound)
    }

    pub fn contains(&self, a: &Degree) -> bool {
        self.violated_facet(a).is_none()
    }

    /// Text plot of a two-dimensional slice: `#` inside, `.` outside, `*`
    /// for points of `marks` (inside), `!` for marks outside.
    pub fn plot(&self, marks: &[Degree], x: (i64, i64), y: (i64, i64)) -> String {
        let mut out = String::new();
        for yy in (y.0..=y.1).rev() {
            for xx in x.0..=x.1 {
                let a = Degree::from_slice(&[xx, yy]);
                let inside = self.contains(&a);
                let c = match (marks.contains(&a), inside) {
                    (true, true) => '*',
                    (true, false) => '!',
                    (false, true) => '#',
                    (false, false) => '.',
                };
                out.push(c);
            }
            out.push('\n');
        }
        out
    }
}

/// Whether `H^0_B(M)` vanishes.
pub fn irrelevant_torsion_vanishes<F: Field>(m: &PresentedModule<F>, cox: &CoxData) -> Result<bool> {
    Ok(m.torsion_submodule(&cox.irrelevant_generators(m.ring()))?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentViolation {
    pub i: usize,
    pub degree: Vec<i64>,
    pub collection: Vec<usize>,
    pub value: i64,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub torsion_free: bool,
    /// The local cohomology hypothesis is not computed; it is taken from
    /// the caller.
    pub hypothesis_asserted: bool,
    pub polytopes: Vec<BettiPolytope>,
    pub points: Vec<(usize, Vec<i64>, usize)>,
    pub violations: Vec<ContainmentViolation>,
    /// Failures of a consequence of the local cohomology hypothesis; when
    /// nonempty the hypothesis does not hold.
    pub hypothesis_failures: Vec<ContainmentViolation>,
}

impl ContainmentReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every multigraded Betti degree in index `i` must satisfy
/// `deg_I(a) < w_I^{i+1}` for all primitive collections.
pub fn check_containment<F: Field>(
    m: &PresentedModule<F>,
    cox: &CoxData,
    hypothesis_asserted: bool,
) -> Result<ContainmentReport> {
    if m.ring().grading != cox.grading {
        return Err(Error::AmbientMismatch("module is not over this Cox ring".into()));
    }
    let torsion_free = irrelevant_torsion_vanishes(m, cox)?;
    let res = minimal_free_resolution(m)?;
    let betti = res.betti_table();
    let top = betti.max_index().unwrap_or(0);
    let polytopes: Vec<BettiPolytope> = (0..=top).map(|i| cox.betti_polytope(i)).collect();
    let mut points = Vec::new();
    let mut violations = Vec::new();
    for (i, a, mult) in betti.entries() {
        points.push((i, a.as_slice().to_vec(), mult));
        if let Some(f) = polytopes[i].violated_facet(a) {
            violations.push(ContainmentViolation {
                i,
                degree: a.as_slice().to_vec(),
                collection: f.collection.clone(),
                value: a.dot(&f.normal),
                bound: f.bound,
            });
        }
    }
    let hypothesis_failures = if violations.is_empty() {
        Vec::new()
    } else {
        quotient_tor_bounds(&res, cox)?
    };
    Ok(ContainmentReport {
        torsion_free,
        hypothesis_asserted,
        polytopes,
        points,
        violations,
        hypothesis_failures,
    })
}

/// The local cohomology hypothesis for `I` makes `Tor^{S_I}(M_I, k)`, that
/// is `Tor^S(M, S_J)`, vanish in `deg_I ≥ w_I^{ℓ+1}`. Every variable of
/// `S_J` has `deg_I ≤ 0`, so it is enough to look at minimal generators.
/// Returns the generators that break this; collections with `J` empty
/// are skipped since there the statement is the containment itself.
pub fn quotient_tor_bounds<F: Field>(res: &ChainComplex<F>, cox: &CoxData) -> Result<Vec<ContainmentViolation>> {
    let n = res.ring().nvars();
    let mut out = Vec::new();
    for c in &cox.collections {
        if c.members.len() == n {
            continue;
        }
        let mut ivars: Vec<usize> = c.members.iter().map(|&r| cox.variable(r)).collect();
        ivars.sort_unstable();
        let q = tor_quotient_of(res, &ivars)?;
        for l in 0..=res.length() {
            let bound = c.w(l + 1);
            for a in q.module(l)?.twists() {
                let value = c.deg(a);
                if value >= bound {
                    out.push(ContainmentViolation {
                        i: l,
                        degree: a.as_slice().to_vec(),
                        collection: c.members.clone(),
                        value,
                        bound,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Doublings of the generator window before giving up.
pub const TRUNCATION_DOUBLINGS: usize = 3;

/// `M_{≥a}(a)` for a multigrading, with the window that was used.
#[derive(Clone, Debug)]
pub struct MultigradedTruncation<F: Field> {
    pub module: PresentedModule<F>,
    pub window: Vec<i64>,
    pub doublings: usize,
    /// Stabilization is a heuristic: no new generators were needed in the
    /// two shells past the window.
    pub heuristic: bool,
}

/// Degrees `c` with `a ≤ c ≤ a + k` componentwise.
fn box_degrees(a: &Degree, k: &[i64]) -> Vec<Degree> {
    let mut out = vec![Vec::new()];
    for (i, &ki) in k.iter().enumerate() {
        let mut next = Vec::new();
        for prefix in &out {
            for t in 0..=ki {
                let mut p: Vec<i64> = prefix.clone();
                p.push(a.as_slice()[i] + t);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(|v| Degree::from_slice(&v)).collect()
}

/// The submodule of `M` generated by `⊕_{c ≥ a} M_c`, twisted by `a`.
///
/// Generators are taken from the pieces in a box `[a, a + K]` with
/// `K_i = Σ_j max(0, deg(x_j)_i) + 2`. The box is accepted once every
/// element of the next two shells already lies in the generated
/// submodule; otherwise `K` is doubled, at most three times.
pub fn multigraded_truncate<F: Field>(m: &PresentedModule<F>, a: &Degree) -> Result<MultigradedTruncation<F>> {
    let ring = m.ring();
    let g = &ring.grading;
    if a.rank() != g.rank() {
        return Err(Error::DimensionMismatch {
            expected: g.rank(),
            got: a.rank(),
        });
    }
    let gb = m.groebner()?;
    let twists = m.twists().to_vec();
    let piece = |c: &Degree| -> Vec<(ModuleElement<F>, Degree)> {
        gb.standard_monomials(c)
            .into_iter()
            .map(|(p, mon)| (ModuleElement::term(ring, mon, p, ring.field.one()), c.clone()))
            .collect()
    };
    let mut k: Vec<i64> = (0..g.rank())
        .map(|i| {
            (0..g.nvars())
                .map(|j| g.var_degree(j).as_slice()[i].max(0))
                .sum::<i64>()
                + 2
        })
        .collect();
    for doublings in 0..=TRUNCATION_DOUBLINGS {
        let inner = box_degrees(a, &k);
        let mut gens = Vec::new();
        let mut degs = Vec::new();
        for c in &inner {
            for (v, d) in piece(c) {
                gens.push(v);
                degs.push(d);
            }
        }
        let mut all = m.relations().to_vec();
        all.extend(gens.iter().cloned());
        let span = GroebnerBasis::compute(ring, &twists, &all)?;
        let outer: Vec<i64> = k.iter().map(|x| x + 2).collect();
        let stable = box_degrees(a, &outer)
            .iter()
            .filter(|c| !inner.contains(c))
            .all(|c| piece(c).iter().all(|(v, _)| span.contains(v)));
        if stable {
            let sub = PresentedModule::submodule(ring, &twists, &gens, &degs, m.relations())?;
            return Ok(MultigradedTruncation {
                module: sub.twist(a),
                window: k,
                doublings,
                heuristic: true,
            });
        }
        k.iter_mut().for_each(|x| *x *= 2);
    }
    Err(Error::ResourceLimit(format!(
        "truncation generators did not stabilize; last window {k:?} above {a}"
    )))
}

/// `Tor^S_ℓ(M, S/(x_i : i ∈ I))` as the homology of a resolution of `M`
/// with the variables of `I` set to zero, over the ring on the rest.
pub struct TorQuotient<F: Field> {
    pub complex: ChainComplex<F>,
}

impl<F: Field> TorQuotient<F> {
    pub fn dim(&self, l: usize, b: &Degree) -> usize {
        self.complex.homology_dim(l, b)
    }

    /// The homology module in index `l`, over the quotient ring.
    pub fn module(&self, l: usize) -> Result<PresentedModule<F>> {
        let c = &self.complex;
        let out = (l > 0).then(|| c.differential(l));
        let inc = c.differential(l + 1);
        crate::resolution::homology_module(c.ring(), &c.module(l).twists, out.as_ref(), Some(&inc))
    }
}

/// `I` is given as sorted variable indices.
pub fn tor_s_quotient<F: Field>(m: &PresentedModule<F>, vars: &[usize]) -> Result<TorQuotient<F>> {
    let res = minimal_free_resolution(m)?;
    tor_quotient_of(&res, vars)
}

fn tor_quotient_of<F: Field>(res: &ChainComplex<F>, vars: &[usize]) -> Result<TorQuotient<F>> {
    Ok(TorQuotient {
        complex: res.kill_variables(vars)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaRow {
    pub j: usize,
    pub degree: Vec<i64>,
    pub tor: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub collection: Vec<usize>,
    pub rows: Vec<LemmaRow>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.tor <= r.bound)
    }
}

/// `dim Tor_j(M,k)_a ≤ Σ_ℓ Σ_{K ⊆ J, |K| = j-ℓ} dim Tor_ℓ(M, S_J)_{a - deg K}`
/// for every Betti degree `(j, a)`, where `S_J = S/(x_i : i ∈ I)` and
/// `J` is the complement of `I`. `collection` lists rays.
pub fn lemma_technical_check<F: Field>(
    m: &PresentedModule<F>,
    cox: &CoxData,
    collection: &[usize],
) -> Result<LemmaReport> {
    let res = minimal_free_resolution(m)?;
    let betti = res.betti_table();
    lemma_check_with(&res, &betti, &m.ring().grading, cox, collection)
}

fn lemma_check_with<F: Field>(
    res: &ChainComplex<F>,
    betti: &BettiTable,
    g: &Grading,
    cox: &CoxData,
    collection: &[usize],
) -> Result<LemmaReport> {
    let mut ivars: Vec<usize> = collection.iter().map(|&r| cox.variable(r)).collect();
    ivars.sort_unstable();
    let jvars: Vec<usize> = (0..g.nvars()).filter(|v| !ivars.contains(v)).collect();
    let quotient = if jvars.is_empty() { None } else { Some(tor_quotient_of(res, &ivars)?) };
    let mut cache: BTreeMap<(usize, Degree), usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for (j, a, tor) in betti.entries() {
        let mut bound = 0;
        for l in 0..=j {
            let size = j - l;
            if size > jvars.len() {
                continue;
            }
            for sub in subsets_of_size(jvars.len(), size) {
                let mut shift = g.zero_degree();
                for (k, &v) in jvars.iter().enumerate() {
                    if sub & (1 << k) != 0 {
                        shift = &shift + g.var_degree(v);
                    }
                }
                let b = a - &shift;
                let d = match &quotient {
                    Some(q) => *cache.entry((l, b.clone())).or_insert_with(|| q.dim(l, &b)),
                    // J empty: S_J = k and Tor_ℓ(M, k) is the Betti table itself
                    None => betti.get(l, &b),
                };
                bound += d;
            }
        }
        rows.push(LemmaRow {
            j,
            degree: a.as_slice().to_vec(),
            tor,
            bound,
        });
    }
    Ok(LemmaReport {
        collection: collection.to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hirzebruch_cox_data() {
        let cox = CoxData::new(Fan::hirzebruch(3).unwrap()).unwrap();
        assert_eq!(cox.degree_matrix, vec![vec![1, -3, 1, 0], vec![0, 1, 0, 1]]);
        assert_eq!(cox.irrelevant, vec![0b0011, 0b0110, 0b1001, 0b1100]);
        let masks: Vec<u32> = cox.collections.iter().map(|c| c.mask()).collect();
        assert_eq!(masks, vec![0b0101, 0b1010]);
        assert_eq!(cox.collections[0].functional, vec![1, 0]);
        assert_eq!(cox.collections[1].functional, vec![0, 1]);
        for c in &cox.collections {
            for j in 0..6 {
                assert!(c.w(j) <= 2);
            }
        }
    }

    #[test]
    fn projective_space_single_collection() {
        let cox = CoxData::new(Fan::projective_space(2).unwrap()).unwrap();
        assert_eq!(cox.grading.weights(), Some(vec![1, 1, 1]));
        assert_eq!(cox.collections.len(), 1);
        assert_eq!(cox.collections[0].b, vec![1, 1, 1]);
        assert_eq!(cox.collections[0].functional, vec![1]);
    }

    #[test]
    fn weighted_projective_plane_recovers_weights() {
        let fan = Fan::new(
            vec![vec![1, 3], vec![1, -2], vec![-1, 0]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let cox = CoxData::new(fan).unwrap();
        assert_eq!(cox.degree_matrix, vec![vec![2, 3, 5]]);
        assert_eq!(cox.collections[0].b, vec![2, 3, 5]);
        assert_eq!(cox.collections[0].w(2), 8);
    }

    #[test]
    fn torsion_is_rejected() {
        // P^2 / (Z/3)
        let fan = Fan::new(
            vec![vec![1, 0], vec![1, 3], vec![-2, -3]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert!(matches!(CoxData::new(fan), Err(Error::TorsionClassGroup(_))));
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let r = Fan::new(
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 3], vec![3, 0]],
        );
        assert!(matches!(r, Err(Error::InvalidFan(_))));
    }

    #[test]
    fn hirzebruch_truncation_resolution() {
        use crate::field::Rationals;
        let cox = CoxData::new(Fan::hirzebruch(3).unwrap()).unwrap();
        let ring = cox.ring(Rationals);
        let q = ring.field.one();
        let f = Polynomial::monomial(&ring, cox.monomial(0b0011), q);
        let n = PresentedModule::quotient_ring(&ring, &[f]).unwrap();
        let t = multigraded_truncate(&n, &Degree::from_slice(&[2, 3])).unwrap();
        let betti = minimal_free_resolution(&t.module).unwrap().betti_table();
        let d = |x: i64, y: i64| Degree::from_slice(&[x, y]);
        let expect = [
            (0, d(0, 0), 6),
            (1, d(-3, 1), 2),
            (1, d(0, 1), 3),
            (1, d(1, 0), 5),
            (2, d(-2, 1), 1),
            (2, d(1, 1), 3),
        ];
        let got: Vec<(usize, Degree, usize)> = betti.entries().map(|(i, a, m)| (i, a.clone(), m)).collect();
        assert_eq!(got.len(), expect.len(), "{betti}");
        for e in &expect {
            assert!(got.contains(e), "{e:?} missing from {betti}");
        }
        let report = check_containment(&t.module, &cox, true).unwrap();
        assert!(report.torsion_free);
        assert!(report.holds(), "{:?}", report.violations);
        for c in &cox.collections {
            assert!(lemma_technical_check(&t.module, &cox, &c.members).unwrap().holds());
        }
        let res = minimal_free_resolution(&t.module).unwrap();
        assert_eq!(quotient_tor_bounds(&res, &cox).unwrap(), vec![]);
    }
}
