//! Homogeneous Buchberger algorithm for submodules of twisted free modules,
//! with syzygy tracking.
//!
//! Everything is processed degree by degree (in the order value of the
//! grading). Inputs come in two kinds: *counted* generators, whose
//! representations are tracked so that syzygies among them can be read off,
//! and *uncounted* ones that only enlarge the submodule. With uncounted
//! inputs `N`, the syzygies returned are relations among the counted
//! generators modulo `N`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::free_module::{check_homogeneous, FreeModule, ModuleMap};
use crate::grading::Degree;
use crate::monomial::Monomial;
use crate::poly::{ModuleElement, PolyRing, Polynomial};

/// Ceiling on the number of S-pairs processed in one computation.
pub const DEFAULT_MAX_PAIRS: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    pub max_pairs: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

/// Monic elements with an index of lead terms by position.
#[derive(Clone, Debug)]
struct Reducer<F: Field> {
    elems: Vec<ModuleElement<F>>,
    reps: Vec<ModuleElement<F>>,
    leads: Vec<(u32, Monomial)>,
    by_pos: Vec<Vec<usize>>,
}

impl<F: Field> Reducer<F> {
    fn new(rank: usize) -> Self {
        Reducer {
            elems: Vec::new(),
            reps: Vec::new(),
            leads: Vec::new(),
            by_pos: vec![Vec::new(); rank],
        }
    }

    fn push(&mut self, v: ModuleElement<F>, rep: ModuleElement<F>) -> usize {
        let t = v.lead().expect("nonzero element");
        let (pos, mon) = (t.pos, t.mon);
        let k = self.elems.len();
        self.elems.push(v);
        self.reps.push(rep);
        self.leads.push((pos, mon));
        self.by_pos[pos as usize].push(k);
        k
    }

    #[inline]
    fn find_divisor(&self, pos: u32, mon: &Monomial) -> Option<usize> {
        self.by_pos[pos as usize]
            .iter()
            .copied()
            .find(|&k| self.leads[k].1.divides(mon))
    }

    /// Full reduction; `rep` receives the same combination of representations.
    fn reduce(
        &self,
        ring: &PolyRing<F>,
        mut f: ModuleElement<F>,
        mut rep: Option<&mut ModuleElement<F>>,
        skip: Option<usize>,
    ) -> ModuleElement<F> {
        let mut start = 0;
        while start < f.len() {
            let t = &f.terms()[start];
            let found = self.by_pos[t.pos as usize]
                .iter()
                .copied()
                .find(|&k| Some(k) != skip && self.leads[k].1.divides(&t.mon));
            match found {
                Some(k) => {
                    let q = self.leads[k].1.quotient_of(&t.mon).expect("divides");
                    let c = ring.field.neg(&t.coeff);
                    f.add_multiple_from(start, ring, &self.elems[k], &q, &c);
                    if let Some(r) = rep.as_deref_mut() {
                        r.add_multiple(ring, &self.reps[k], &q, &c);
                    }
                }
                None => start += 1,
            }
        }
        f
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// One generator handed to [`Builder`].
struct Input<F: Field> {
    vec: ModuleElement<F>,
    degree: Degree,
    counted: Option<usize>,
}

/// Result of a tracked Buchberger run.
#[derive(Clone, Debug)]
pub struct SyzygyRun<F: Field> {
    /// A Gröbner basis of the submodule generated by all inputs.
    pub basis: GroebnerBasis<F>,
    /// Counted generators with nonzero normal form at the time they were
    /// processed: a minimal generating set modulo the uncounted inputs.
    pub minimal: Vec<usize>,
    /// Degrees of the counted generators.
    pub degrees: Vec<Degree>,
    /// Syzygies from S-pairs; they only involve the minimal generators.
    pub pair_syzygies: Vec<ModuleElement<F>>,
    /// For each non-minimal counted generator, the relation expressing it
    /// through earlier ones.
    pub redundant: Vec<(usize, ModuleElement<F>)>,
}

impl<F: Field> SyzygyRun<F> {
    /// All syzygies of the counted generators (modulo the uncounted ones).
    pub fn all_syzygies(&self) -> Vec<ModuleElement<F>> {
        let mut out = self.pair_syzygies.clone();
        out.extend(self.redundant.iter().map(|(_, s)| s.clone()));
        out
    }

    /// Syzygies among the minimal generators, reindexed to `0..minimal.len()`.
    pub fn minimal_syzygies(&self, ring: &PolyRing<F>) -> Vec<ModuleElement<F>> {
        let mut map = vec![None; self.degrees.len()];
        for (new, &old) in self.minimal.iter().enumerate() {
            map[old] = Some(new);
        }
        self.pair_syzygies
            .iter()
            .map(|s| s.reindex(ring, &map))
            .filter(|s| !s.is_zero())
            .collect()
    }
}

struct Builder<'a, F: Field> {
    ring: &'a PolyRing<F>,
    twist_values: Vec<i64>,
    track: bool,
    limits: GbLimits,
    red: Reducer<F>,
    single_pos: Vec<bool>,
    pairs: BTreeMap<i64, Vec<Pair>>,
    processed: usize,
    pair_syzygies: Vec<ModuleElement<F>>,
}

impl<'a, F: Field> Builder<'a, F> {
    fn pair_degree(&self, lcm: &Monomial, pos: u32) -> i64 {
        self.ring.grading.order_degree_of(lcm) + self.twist_values[pos as usize]
    }

    fn insert(&mut self, mut v: ModuleElement<F>, mut rep: ModuleElement<F>) {
        let f = &self.ring.field;
        let lc = v.lead().expect("nonzero").coeff.clone();
        if !f.is_one(&lc) {
            let inv = f.inv(&lc);
            v = v.scale(self.ring, &inv);
            if self.track {
                rep = rep.scale(self.ring, &inv);
            }
        }
        let (pos, mk) = {
            let t = v.lead().unwrap();
            (t.pos, t.mon)
        };
        // drop pending pairs made redundant by the new lead term
        for list in self.pairs.values_mut() {
            list.retain(|p| {
                let (pi, mi) = &self.red.leads[p.i];
                if *pi != pos || !mk.divides(&p.lcm) {
                    return true;
                }
                let mj = &self.red.leads[p.j].1;
                mi.lcm(&mk) == p.lcm || mj.lcm(&mk) == p.lcm
            });
        }
        let single = v.terms().iter().all(|t| t.pos == pos);
        let k = self.red.push(v, rep);
        self.single_pos.push(single);
        let others: Vec<usize> = self.red.by_pos[pos as usize]
            .iter()
            .copied()
            .filter(|&i| i != k)
            .collect();
        for i in others {
            let lcm = self.red.leads[i].1.lcm(&mk);
            let d = self.pair_degree(&lcm, pos);
            self.pairs.entry(d).or_default().push(Pair { i, j: k, lcm });
        }
    }

    fn process_pair(&mut self, p: Pair) -> Result<()> {
        self.processed += 1;
        if self.processed > self.limits.max_pairs {
            return Err(Error::ResourceLimit(format!(
                "more than {} S-pairs",
                self.limits.max_pairs
            )));
        }
        let ring = self.ring;
        let f = &ring.field;
        let (mi, mj) = (self.red.leads[p.i].1, self.red.leads[p.j].1);
        if self.single_pos[p.i] && self.single_pos[p.j] && mi.coprime(&mj) {
            if self.track {
                let pos = self.red.leads[p.i].0 as usize;
                let gi = self.red.elems[p.i].coordinate(pos);
                let gj = self.red.elems[p.j].coordinate(pos);
                let syz = self.red.reps[p.i]
                    .mul_poly(ring, &gj)
                    .sub(ring, &self.red.reps[p.j].mul_poly(ring, &gi));
                if !syz.is_zero() {
                    self.pair_syzygies.push(syz);
                }
            }
            return Ok(());
        }
        let qi = mi.quotient_of(&p.lcm).expect("lcm");
        let qj = mj.quotient_of(&p.lcm).expect("lcm");
        let one = f.one();
        let minus = f.neg(&one);
        let mut s = self.red.elems[p.i].mul_term(ring, &qi, &one);
        s.add_multiple(ring, &self.red.elems[p.j], &qj, &minus);
        let mut rep = ModuleElement::zero();
        if self.track {
            rep = self.red.reps[p.i].mul_term(ring, &qi, &one);
            rep.add_multiple(ring, &self.red.reps[p.j], &qj, &minus);
        }
        let nf = self
            .red
            .reduce(ring, s, self.track.then_some(&mut rep), None);
        if nf.is_zero() {
            if self.track && !rep.is_zero() {
                self.pair_syzygies.push(rep);
            }
        } else {
            self.insert(nf, rep);
        }
        Ok(())
    }
}

fn run<F: Field>(
    ring: &PolyRing<F>,
    twists: &[Degree],
    inputs: Vec<Input<F>>,
    ncounted: usize,
    track: bool,
    limits: GbLimits,
) -> Result<SyzygyRun<F>> {
    let g = &ring.grading;
    let mut b = Builder {
        ring,
        twist_values: twists.iter().map(|t| g.order_value(t)).collect(),
        track,
        limits,
        red: Reducer::new(twists.len()),
        single_pos: Vec::new(),
        pairs: BTreeMap::new(),
        processed: 0,
        pair_syzygies: Vec::new(),
    };
    let mut degrees = vec![g.zero_degree(); ncounted];
    let mut pending: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut minimal = Vec::new();
    let mut redundant = Vec::new();
    for (idx, inp) in inputs.iter().enumerate() {
        inp.vec.check_rank(twists.len())?;
        check_homogeneous(ring, &inp.vec, twists, &inp.degree)?;
        if let Some(k) = inp.counted {
            degrees[k] = inp.degree.clone();
            if inp.vec.is_zero() {
                if track {
                    redundant.push((k, ModuleElement::basis(ring, k)));
                }
                continue;
            }
        } else if inp.vec.is_zero() {
            continue;
        }
        pending
            .entry(g.order_value(&inp.degree))
            .or_default()
            .push(idx);
    }
    let mut inputs: Vec<Option<Input<F>>> = inputs.into_iter().map(Some).collect();
    loop {
        let dp = b.pairs.keys().next().copied();
        let di = pending.keys().next().copied();
        let d = match (dp, di) {
            (None, None) => break,
            (Some(x), None) | (None, Some(x)) => x,
            (Some(x), Some(y)) => x.min(y),
        };
        if let Some(mut list) = b.pairs.remove(&d) {
            list.sort_by(|p, q| {
                g.cmp_monomials(&p.lcm, &q.lcm)
                    .then(p.j.cmp(&q.j))
                    .then(p.i.cmp(&q.i))
            });
            for p in list {
                b.process_pair(p)?;
            }
        }
        if let Some(list) = pending.remove(&d) {
            let (unc, cnt): (Vec<usize>, Vec<usize>) = list
                .into_iter()
                .partition(|&i| inputs[i].as_ref().unwrap().counted.is_none());
            for i in unc.into_iter().chain(cnt) {
                let inp = inputs[i].take().unwrap();
                let mut rep = match (track, inp.counted) {
                    (true, Some(k)) => ModuleElement::basis(ring, k),
                    _ => ModuleElement::zero(),
                };
                // an uncounted input that reduces to zero still yields a
                // relation among the counted generators through `rep`
                let nf = b.red.reduce(ring, inp.vec, track.then_some(&mut rep), None);
                match (nf.is_zero(), inp.counted) {
                    (true, Some(k)) => {
                        if track {
                            redundant.push((k, rep));
                        }
                    }
                    (true, None) => {
                        if track && !rep.is_zero() {
                            b.pair_syzygies.push(rep);
                        }
                    }
                    (false, counted) => {
                        if let Some(k) = counted {
                            minimal.push(k);
                        }
                        b.insert(nf, rep);
                    }
                }
            }
        }
    }
    minimal.sort_unstable();
    let basis = GroebnerBasis {
        ring: ring.clone(),
        twists: twists.to_vec(),
        red: Reducer {
            reps: vec![ModuleElement::zero(); b.red.elems.len()],
            ..b.red
        },
        reduced: false,
    };
    Ok(SyzygyRun {
        basis,
        minimal,
        degrees,
        pair_syzygies: b.pair_syzygies,
        redundant,
    })
}

/// Tracked run: `gens` are counted with the given degrees, `modulo` is
/// uncounted.
pub fn syzygy_run<F: Field>(
    ring: &PolyRing<F>,
    twists: &[Degree],
    gens: &[ModuleElement<F>],
    gen_degrees: &[Degree],
    modulo: &[ModuleElement<F>],
    limits: GbLimits,
) -> Result<SyzygyRun<F>> {
    if gens.len() != gen_degrees.len() {
        return Err(Error::DimensionMismatch {
            expected: gens.len(),
            got: gen_degrees.len(),
        });
    }
    let mut inputs = Vec::with_capacity(gens.len() + modulo.len());
    for v in modulo {
        if let Some(d) = v.degree(&ring.grading, twists) {
            inputs.push(Input {
                vec: v.clone(),
                degree: d,
                counted: None,
            });
        }
    }
    for (k, (v, d)) in gens.iter().zip(gen_degrees).enumerate() {
        inputs.push(Input {
            vec: v.clone(),
            degree: d.clone(),
            counted: Some(k),
        });
    }
    run(ring, twists, inputs, gens.len(), true, limits)
}

/// A Gröbner basis of a homogeneous submodule of `⊕ S(-a_j)` under the
/// position-over-term order (lower position index is larger).
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    twists: Vec<Degree>,
    red: Reducer<F>,
    reduced: bool,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.twists == other.twists && self.red.elems == other.red.elems
    }
}

impl<F: Field> GroebnerBasis<F> {
    /// The reduced Gröbner basis of the submodule generated by `gens`.
    pub fn compute(ring: &PolyRing<F>, twists: &[Degree], gens: &[ModuleElement<F>]) -> Result<Self> {
        Self::compute_with(ring, twists, gens, GbLimits::default())
    }

    pub fn compute_with(
        ring: &PolyRing<F>,
        twists: &[Degree],
        gens: &[ModuleElement<F>],
        limits: GbLimits,
    ) -> Result<Self> {
        let mut inputs = Vec::with_capacity(gens.len());
        for v in gens {
            v.check_rank(twists.len())?;
            if let Some(d) = v.degree(&ring.grading, twists) {
                inputs.push(Input {
                    vec: v.clone(),
                    degree: d,
                    counted: None,
                });
            }
        }
        Ok(run(ring, twists, inputs, 0, false, limits)?.basis.into_reduced())
    }

    /// Tail-reduce every element and sort; the result is canonical for the
    /// submodule.
    pub fn into_reduced(mut self) -> Self {
        if self.reduced {
            return self;
        }
        let ring = self.ring.clone();
        let n = self.red.elems.len();
        let mut elems = Vec::with_capacity(n);
        for k in 0..n {
            let v = self.red.elems[k].clone();
            let lead = v.lead().unwrap().clone();
            let tail = ModuleElement::from_sorted_terms(v.terms()[1..].to_vec());
            let tail = self.red.reduce(&ring, tail, None, Some(k));
            let mut terms = vec![lead];
            terms.extend(tail.into_terms());
            elems.push(ModuleElement::from_sorted_terms(terms));
        }
        elems.sort_by(|a, b| {
            let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
            ring.cmp_terms(tb.pos, &tb.mon, ta.pos, &ta.mon)
        });
        let mut red = Reducer::new(self.twists.len());
        for v in elems {
            red.push(v, ModuleElement::zero());
        }
        self.red = red;
        self.reduced = true;
        self
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn twists(&self) -> &[Degree] {
        &self.twists
    }

    pub fn ambient(&self) -> FreeModule {
        FreeModule::new(self.twists.clone())
    }

    pub fn elements(&self) -> &[ModuleElement<F>] {
        &self.red.elems
    }

    pub fn len(&self) -> usize {
        self.red.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.red.elems.is_empty()
    }

    /// `(position, monomial)` of every lead term.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.red
            .leads
            .iter()
            .map(|(p, m)| (*p as usize, *m))
            .collect()
    }

    pub fn normal_form(&self, v: &ModuleElement<F>) -> Result<ModuleElement<F>> {
        v.check_rank(self.twists.len())?;
        Ok(self.red.reduce(&self.ring, v.clone(), None, None))
    }

    pub fn contains(&self, v: &ModuleElement<F>) -> bool {
        self.normal_form(v).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Whether `(position, monomial)` lies in the lead-term module.
    pub fn is_lead_multiple(&self, pos: usize, m: &Monomial) -> bool {
        self.red.find_divisor(pos as u32, m).is_some()
    }

    /// Monomial basis `m * e_p` of the quotient in degree `d`, in
    /// descending order.
    pub fn standard_monomials(&self, d: &Degree) -> Vec<(usize, Monomial)> {
        let g = &self.ring.grading;
        let mut out = Vec::new();
        for (p, t) in self.twists.iter().enumerate() {
            for m in g.monomials_of_degree(&(d - t)) {
                if !self.is_lead_multiple(p, &m) {
                    out.push((p, m));
                }
            }
        }
        out
    }

    /// `dim (F/N)_d`.
    pub fn quotient_dim(&self, d: &Degree) -> usize {
        self.standard_monomials(d).len()
    }

    /// Every S-pair reduces to zero.
    pub fn certify(&self) -> bool {
        let ring = &self.ring;
        let one = ring.field.one();
        let minus = ring.field.neg(&one);
        for j in 0..self.len() {
            for i in 0..j {
                let (pi, mi) = self.red.leads[i];
                let (pj, mj) = self.red.leads[j];
                if pi != pj {
                    continue;
                }
                let l = mi.lcm(&mj);
                let mut s = self.red.elems[i].mul_term(ring, &mi.quotient_of(&l).unwrap(), &one);
                s.add_multiple(ring, &self.red.elems[j], &mj.quotient_of(&l).unwrap(), &minus);
                if !self.red.reduce(ring, s, None, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Generators of the kernel of a homogeneous map, as a map into its source.
pub fn kernel<F: Field>(ring: &PolyRing<F>, f: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    kernel_with(ring, f, GbLimits::default())
}

pub fn kernel_with<F: Field>(
    ring: &PolyRing<F>,
    f: &ModuleMap<F>,
    limits: GbLimits,
) -> Result<ModuleMap<F>> {
    let r = syzygy_run(
        ring,
        &f.target().twists,
        f.columns(),
        &f.source().twists,
        &[],
        limits,
    )?;
    let cols = r.all_syzygies();
    let twists = cols
        .iter()
        .map(|c| c.degree(&ring.grading, &f.source().twists).unwrap())
        .collect();
    Ok(ModuleMap::new_unchecked(
        FreeModule::new(twists),
        f.source().clone(),
        cols,
    ))
}

/// Syzygies of the given generators, in the free module whose twists are
/// the generator degrees.
pub fn syzygies<F: Field>(
    ring: &PolyRing<F>,
    twists: &[Degree],
    gens: &[ModuleElement<F>],
) -> Result<ModuleMap<F>> {
    let degrees = gens
        .iter()
        .map(|g| {
            g.degree(&ring.grading, twists).ok_or_else(|| {
                Error::Unsupported("zero generator has no degree; use kernel instead".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let f = ModuleMap::new(ring, FreeModule::new(degrees), FreeModule::new(twists.to_vec()), gens.to_vec())?;
    kernel(ring, &f)
}

/// `(N :_F J) = { v : f v ∈ N for all f ∈ J }`.
pub fn colon<F: Field>(
    ring: &PolyRing<F>,
    twists: &[Degree],
    n: &[ModuleElement<F>],
    j: &[Polynomial<F>],
    limits: GbLimits,
) -> Result<Vec<ModuleElement<F>>> {
    let g = &ring.grading;
    let s = twists.len();
    let j: Vec<&Polynomial<F>> = j.iter().filter(|p| !p.is_zero()).collect();
    if j.is_empty() {
        return Ok((0..s).map(|p| ModuleElement::basis(ring, p)).collect());
    }
    for f in &j {
        if !f.is_homogeneous(g) {
            return Err(Error::NotHomogeneous(f.format(ring)));
        }
    }
    let mut amb = Vec::with_capacity(s * j.len());
    for f in &j {
        let df = f.degree(g).unwrap();
        for t in twists {
            amb.push(t - &df);
        }
    }
    let gens: Vec<ModuleElement<F>> = (0..s)
        .map(|p| {
            let mut v = ModuleElement::zero();
            for (k, f) in j.iter().enumerate() {
                let col = ModuleElement::from(Polynomial::clone(f)).shifted(k * s + p);
                v.add_scaled(ring, &col, &ring.field.one());
            }
            v
        })
        .collect();
    let mut modulo = Vec::with_capacity(n.len() * j.len());
    for k in 0..j.len() {
        for v in n {
            modulo.push(v.shifted(k * s));
        }
    }
    let r = syzygy_run(ring, &amb, &gens, twists, &modulo, limits)?;
    Ok(r.all_syzygies())
}

/// Result of iterated colons `N : J^t`.
#[derive(Clone, Debug)]
pub struct Saturation<F: Field> {
    pub basis: GroebnerBasis<F>,
    /// Least `t` with `N : J^t = N : J^{t+1}`.
    pub steps: usize,
}

/// Saturation loop cap.
pub const MAX_SATURATION_STEPS: usize = 64;

/// `N : J^∞`, iterating colons until the reduced Gröbner basis is stable.
pub fn saturation<F: Field>(
    ring: &PolyRing<F>,
    twists: &[Degree],
    n: &[ModuleElement<F>],
    j: &[Polynomial<F>],
    limits: GbLimits,
) -> Result<Saturation<F>> {
    let mut current = GroebnerBasis::compute_with(ring, twists, n, limits)?;
    for t in 0..MAX_SATURATION_STEPS {
        let next_gens = colon(ring, twists, current.elements(), j, limits)?;
        let next = GroebnerBasis::compute_with(ring, twists, &next_gens, limits)?;
        if next == current {
            return Ok(Saturation {
                basis: current,
                steps: t,
            });
        }
        current = next;
    }
    Err(Error::ResourceLimit(format!(
        "saturation did not stabilize within {MAX_SATURATION_STEPS} colon steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::grading::Grading;

    fn ring(w: &[i64]) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, Grading::weighted(w).unwrap())
    }

    fn ideal_gens(r: &PolyRing<Rationals>, ps: &[Polynomial<Rationals>]) -> Vec<ModuleElement<Rationals>> {
        let _ = r;
        ps.iter().cloned().map(ModuleElement::from).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&[1, 1, 1, 1]);
        let gens = ideal_gens(&r, &[r.variable(2), r.variable(3)]);
        let gb = GroebnerBasis::compute(&r, &[Degree::scalar(0)], &gens).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.certify());
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = ring(&[1, 2]);
        let gens = ideal_gens(&r, &[r.variable(0), r.variable(1)]);
        let k = syzygies(&r, &[Degree::scalar(0)], &gens).unwrap();
        assert_eq!(k.ncols(), 1);
        assert_eq!(k.source().twists, vec![Degree::scalar(3)]);
        let col = k.column(0);
        let img = col.apply(&r, &gens);
        assert!(img.is_zero());
    }

    #[test]
    fn normal_form_of_cube() {
        // u^3 mod (u^2 - v) is u v
        let r = ring(&[1, 2]);
        let u = r.variable(0);
        let v = r.variable(1);
        let f = u.mul(&r, &u).sub(&r, &v);
        let gb = GroebnerBasis::compute(&r, &[Degree::scalar(0)], &[f.into()]).unwrap();
        let nf = gb.normal_form(&u.pow(&r, 3).into()).unwrap();
        assert_eq!(nf, u.mul(&r, &v).into());
        let one: ModuleElement<Rationals> = Polynomial::constant(&r, r.field.one()).into();
        assert_eq!(gb.normal_form(&one).unwrap(), one);
    }

    #[test]
    fn saturation_of_embedded_component() {
        // (x^2, xy) : (x,y)^∞ = (x)
        let r = ring(&[1, 1]);
        let x = r.variable(0);
        let y = r.variable(1);
        let n = ideal_gens(&r, &[x.mul(&r, &x), x.mul(&r, &y)]);
        let sat = saturation(&r, &[Degree::scalar(0)], &n, &[x.clone(), y], GbLimits::default()).unwrap();
        assert_eq!(sat.basis.elements(), &[ModuleElement::from(x)]);
        assert!(sat.steps >= 1 && sat.steps <= 5);
    }
}
