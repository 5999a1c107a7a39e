//! Finitely presented graded modules `M = coker(φ: F_1 → F_0)`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::free_module::{FreeModule, ModuleMap};
use crate::grading::Degree;
use crate::groebner::{saturation, syzygy_run, GbLimits, GroebnerBasis};
use crate::linalg::Echelon;
use crate::monomial::Monomial;
use crate::poly::{ModuleElement, PolyRing, Polynomial};

/// A graded module given by generators (the twists of `F_0`) and relations
/// (the columns of the presentation matrix).
#[derive(Clone, Debug)]
pub struct PresentedModule<F: Field> {
    ring: PolyRing<F>,
    gens: FreeModule,
    relations: Vec<ModuleElement<F>>,
    gb: OnceLock<Arc<GroebnerBasis<F>>>,
}

impl<F: Field> PresentedModule<F> {
    /// Generators are re-sorted by degree; relations are checked for
    /// homogeneity and zero relations are dropped.
    pub fn new(ring: &PolyRing<F>, gens: FreeModule, relations: Vec<ModuleElement<F>>) -> Result<Self> {
        let g = &ring.grading;
        for t in &gens.twists {
            if t.rank() != g.rank() {
                return Err(Error::DimensionMismatch {
                    expected: g.rank(),
                    got: t.rank(),
                });
            }
        }
        let mut order: Vec<usize> = (0..gens.rank()).collect();
        order.sort_by(|&a, &b| {
            let (ta, tb) = (&gens.twists[a], &gens.twists[b]);
            g.order_value(ta).cmp(&g.order_value(tb)).then(ta.cmp(tb))
        });
        let mut map = vec![None; gens.rank()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = Some(new);
        }
        let sorted = FreeModule::new(order.iter().map(|&i| gens.twists[i].clone()).collect());
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            r.check_rank(gens.rank())?;
            if r.is_zero() {
                continue;
            }
            let r = r.reindex(ring, &map);
            if !r.is_homogeneous(g, &sorted.twists) {
                return Err(Error::NotHomogeneous(r.format(ring, sorted.rank())));
            }
            rels.push(r);
        }
        Ok(PresentedModule {
            ring: ring.clone(),
            gens: sorted,
            relations: rels,
            gb: OnceLock::new(),
        })
    }

    /// The cokernel of a map.
    pub fn cokernel(ring: &PolyRing<F>, phi: &ModuleMap<F>) -> Result<Self> {
        Self::new(ring, phi.target().clone(), phi.columns().to_vec())
    }

    /// The free module `⊕ S(-a_j)`.
    pub fn free(ring: &PolyRing<F>, twists: Vec<Degree>) -> Result<Self> {
        Self::new(ring, FreeModule::new(twists), Vec::new())
    }

    /// `S / I`.
    pub fn quotient_ring(ring: &PolyRing<F>, ideal: &[Polynomial<F>]) -> Result<Self> {
        let rels = ideal.iter().cloned().map(ModuleElement::from).collect();
        Self::new(ring, FreeModule::standard(&ring.grading, 1), rels)
    }

    /// The residue field `k = S / m`.
    pub fn residue_field(ring: &PolyRing<F>) -> Result<Self> {
        let vars: Vec<Polynomial<F>> = (0..ring.nvars()).map(|i| ring.variable(i)).collect();
        Self::quotient_ring(ring, &vars)
    }

    /// The ideal `I` as a module, presented by its generators and their
    /// syzygies. Zero generators are ignored.
    pub fn ideal(ring: &PolyRing<F>, gens: &[Polynomial<F>]) -> Result<Self> {
        let g = &ring.grading;
        let gens: Vec<&Polynomial<F>> = gens.iter().filter(|p| !p.is_zero()).collect();
        for p in &gens {
            if !p.is_homogeneous(g) {
                return Err(Error::NotHomogeneous(p.format(ring)));
            }
        }
        let elems: Vec<ModuleElement<F>> = gens.iter().map(|p| ModuleElement::from((*p).clone())).collect();
        let degrees: Vec<Degree> = gens.iter().map(|p| p.degree(g).unwrap()).collect();
        Self::submodule(ring, &[g.zero_degree()], &elems, &degrees, &[])
    }

    /// The submodule of `F/N` generated by `gens` (elements of `F`),
    /// presented on a minimal subset of the generators.
    pub fn submodule(
        ring: &PolyRing<F>,
        ambient: &[Degree],
        gens: &[ModuleElement<F>],
        degrees: &[Degree],
        modulo: &[ModuleElement<F>],
    ) -> Result<Self> {
        let run = syzygy_run(ring, ambient, gens, degrees, modulo, GbLimits::default())?;
        let twists = run.minimal.iter().map(|&k| degrees[k].clone()).collect();
        Self::new(ring, FreeModule::new(twists), run.minimal_syzygies(ring))
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &FreeModule {
        &self.gens
    }

    pub fn twists(&self) -> &[Degree] {
        &self.gens.twists
    }

    pub fn relations(&self) -> &[ModuleElement<F>] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.gens.rank()
    }

    /// The presentation map `F_1 -> F_0`.
    pub fn presentation(&self) -> ModuleMap<F> {
        let g = &self.ring.grading;
        let src = self
            .relations
            .iter()
            .map(|r| r.degree(g, &self.gens.twists).unwrap())
            .collect();
        ModuleMap::new_unchecked(FreeModule::new(src), self.gens.clone(), self.relations.clone())
    }

    /// Reduced Gröbner basis of the relation module (cached).
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(
            &self.ring,
            &self.gens.twists,
            &self.relations,
        )?);
        Ok(self.gb.get_or_init(|| gb).clone())
    }

    /// `dim_k M_a`.
    pub fn hilbert_function(&self, a: &Degree) -> Result<usize> {
        Ok(self.groebner()?.quotient_dim(a))
    }

    /// Whether `M = 0`.
    pub fn is_zero(&self) -> Result<bool> {
        let gb = self.groebner()?;
        Ok((0..self.gens.rank()).all(|p| gb.is_lead_multiple(p, &Monomial::one())))
    }

    /// Least generator degree in the order value, if any generator exists.
    pub fn min_generator_degree(&self) -> Option<&Degree> {
        self.gens.twists.first()
    }

    pub fn max_generator_degree(&self) -> Option<&Degree> {
        self.gens.twists.last()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ring.grading != other.ring.grading {
            return Err(Error::AmbientMismatch("summands live over different rings".into()));
        }
        let offset = self.gens.rank();
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| r.shifted(offset)));
        Self::new(&self.ring, self.gens.direct_sum(&other.gens), rels)
    }

    /// `M(a)`: every generator degree shifted by `-a`.
    pub fn twist(&self, a: &Degree) -> Self {
        PresentedModule {
            ring: self.ring.clone(),
            gens: self.gens.shifted(a),
            relations: self.relations.clone(),
            gb: OnceLock::new(),
        }
    }

    /// A presentation on a minimal set of generators with a minimal set of
    /// relations.
    pub fn minimal_presentation(&self) -> Result<Self> {
        let g = &self.ring.grading;
        let rank = self.gens.rank();
        let gens: Vec<ModuleElement<F>> = (0..rank).map(|p| ModuleElement::basis(&self.ring, p)).collect();
        // minimal generators modulo the relations
        let run = syzygy_run(&self.ring, &self.gens.twists, &gens, &self.gens.twists, &self.relations, GbLimits::default())?;
        if run.minimal.len() == rank {
            // only the relations can be redundant
            let degs: Vec<Degree> = self
                .relations
                .iter()
                .map(|r| r.degree(g, &self.gens.twists).unwrap())
                .collect();
            let rr = syzygy_run(&self.ring, &self.gens.twists, &self.relations, &degs, &[], GbLimits::default())?;
            let rels = rr.minimal.iter().map(|&k| self.relations[k].clone()).collect();
            return Self::new(&self.ring, self.gens.clone(), rels);
        }
        Self::submodule(&self.ring, &self.gens.twists, &gens, &self.gens.twists, &self.relations)
    }

    /// Generators of `H^0_I(M) = (0 :_M I^∞)` as elements of `F_0`, reduced
    /// modulo the relations; empty iff the torsion vanishes.
    pub fn torsion_submodule(&self, ideal: &[Polynomial<F>]) -> Result<Torsion<F>> {
        let sat = saturation(&self.ring, &self.gens.twists, &self.relations, ideal, GbLimits::default())?;
        let gb = self.groebner()?;
        let mut gens = Vec::new();
        for v in sat.basis.elements() {
            let r = gb.normal_form(v)?;
            if !r.is_zero() {
                gens.push(r);
            }
        }
        Ok(Torsion {
            generators: gens,
            saturated: sat.basis,
            steps: sat.steps,
        })
    }

    /// The torsion submodule as a presented module.
    pub fn torsion_module(&self, ideal: &[Polynomial<F>]) -> Result<Self> {
        let t = self.torsion_submodule(ideal)?;
        let g = &self.ring.grading;
        let degs: Vec<Degree> = t
            .generators
            .iter()
            .map(|v| v.degree(g, &self.gens.twists).unwrap())
            .collect();
        Self::submodule(&self.ring, &self.gens.twists, &t.generators, &degs, &self.relations)
    }

    /// A `k`-basis of `M_a` together with the action of the variables,
    /// computed from the Gröbner basis of the relations.
    pub fn gb_pieces(&self) -> Result<GbPieces<F>> {
        Ok(GbPieces {
            module: self.clone(),
            gb: self.groebner()?,
        })
    }

    /// The same data computed by plain linear algebra on the presentation,
    /// independent of Gröbner bases.
    pub fn linear_pieces(&self) -> LinearPieces<F> {
        LinearPieces {
            module: self.clone(),
            cache: std::collections::HashMap::new(),
        }
    }

    /// Standard-monomial basis of the truncation `M_{≥r}` in degrees
    /// `[max(r, min generator degree), hi]`, used as generators.
    fn truncation_generators(&self, lo: i64, hi: i64) -> Result<(Vec<ModuleElement<F>>, Vec<Degree>)> {
        let gb = self.groebner()?;
        let mut gens = Vec::new();
        let mut degs = Vec::new();
        for d in lo..=hi {
            let deg = Degree::scalar(d);
            for (p, m) in gb.standard_monomials(&deg) {
                gens.push(ModuleElement::term(&self.ring, m, p, self.ring.field.one()));
                degs.push(deg.clone());
            }
        }
        Ok((gens, degs))
    }

    /// `M_{≥r}` for a Z-grading, presented on a minimal generating set.
    pub fn truncate(&self, r: i64) -> Result<Self> {
        let g = &self.ring.grading;
        let w = g
            .weights()
            .ok_or_else(|| Error::Unsupported("truncation at an integer needs a Z-grading".into()))?;
        let Some(min_gen) = self.min_generator_degree().map(|d| d.value()) else {
            return Ok(self.clone());
        };
        let max_gen = self.max_generator_degree().unwrap().value();
        let maxw = *w.last().unwrap();
        let lo = r.max(min_gen);
        // generators of M in degree above r + maxw - 1 are needed as well
        let hi = (r + maxw - 1).max(max_gen);
        let (gens, degs) = self.truncation_generators(lo, hi)?;
        Self::submodule(&self.ring, &self.gens.twists, &gens, &degs, &self.relations)
    }

    /// `M_{≥r}(r)`.
    pub fn truncate_twist(&self, r: i64) -> Result<Self> {
        Ok(self.truncate(r)?.twist(&Degree::scalar(r)))
    }

    /// The same presentation over a ring whose degrees are all multiplied by
    /// `lambda`; generator twists are multiplied as well.
    pub fn rescaled(&self, lambda: i64) -> Result<Self> {
        let ring = PolyRing::new(self.ring.field.clone(), self.ring.grading.rescaled(lambda)?);
        let twists = self.gens.twists.iter().map(|t| t.scale(lambda)).collect();
        Self::new(&ring, FreeModule::new(twists), self.relations.clone())
    }
}

/// Torsion data returned by [`PresentedModule::torsion_submodule`].
#[derive(Clone, Debug)]
pub struct Torsion<F: Field> {
    pub generators: Vec<ModuleElement<F>>,
    /// Gröbner basis of the saturated relation module.
    pub saturated: GroebnerBasis<F>,
    pub steps: usize,
}

impl<F: Field> Torsion<F> {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Degreewise models of a module: a basis of each graded piece and the
/// matrices of multiplication by the variables.
pub trait Pieces<F: Field> {
    fn field(&self) -> &F;
    fn dim(&mut self, a: &Degree) -> usize;
    /// Matrix of `x_i : M_a -> M_{a + deg x_i}`, as columns: entry
    /// `[c][r]` is the `r`-th coordinate of `x_i` times basis vector `c`.
    fn multiplication(&mut self, i: usize, a: &Degree) -> Vec<Vec<F::Elem>>;
}

/// Pieces read off from standard monomials.
pub struct GbPieces<F: Field> {
    module: PresentedModule<F>,
    gb: Arc<GroebnerBasis<F>>,
}

impl<F: Field> Pieces<F> for GbPieces<F> {
    fn field(&self) -> &F {
        &self.module.ring.field
    }

    fn dim(&mut self, a: &Degree) -> usize {
        self.gb.quotient_dim(a)
    }

    fn multiplication(&mut self, i: usize, a: &Degree) -> Vec<Vec<F::Elem>> {
        let ring = &self.module.ring;
        let src = self.gb.standard_monomials(a);
        let b = a + ring.grading.var_degree(i);
        let dst = self.gb.standard_monomials(&b);
        let index: std::collections::HashMap<(usize, Monomial), usize> =
            dst.iter().enumerate().map(|(k, pm)| (*pm, k)).collect();
        src.iter()
            .map(|&(p, m)| {
                let v = ModuleElement::term(ring, m.mul_var(i), p, ring.field.one());
                let nf = self.gb.normal_form(&v).expect("rank");
                let mut col = vec![ring.field.zero(); dst.len()];
                for t in nf.terms() {
                    col[index[&(t.pos as usize, t.mon)]] = t.coeff.clone();
                }
                col
            })
            .collect()
    }
}

/// Pieces computed by row reduction of the relation span in each degree.
pub struct LinearPieces<F: Field> {
    module: PresentedModule<F>,
    cache: std::collections::HashMap<Degree, Arc<LinearPiece<F>>>,
}

struct LinearPiece<F: Field> {
    monomials: Vec<(usize, Monomial)>,
    index: std::collections::HashMap<(usize, Monomial), usize>,
    relations: Echelon<F>,
    free: Vec<usize>,
}

impl<F: Field> LinearPieces<F> {
    fn piece(&mut self, a: &Degree) -> Arc<LinearPiece<F>> {
        if let Some(p) = self.cache.get(a) {
            return p.clone();
        }
        let p = Arc::new(self.build_piece(a));
        self.cache.insert(a.clone(), p.clone());
        p
    }

    fn build_piece(&self, a: &Degree) -> LinearPiece<F> {
        let ring = &self.module.ring;
        let g = &ring.grading;
        let mut monomials = Vec::new();
        for (p, t) in self.module.gens.twists.iter().enumerate() {
            for m in g.monomials_of_degree(&(a - t)) {
                monomials.push((p, m));
            }
        }
        let index: std::collections::HashMap<(usize, Monomial), usize> =
            monomials.iter().enumerate().map(|(k, pm)| (*pm, k)).collect();
        let mut ech = Echelon::new(ring.field.clone(), monomials.len());
        for r in &self.module.relations {
            let d = r.degree(g, &self.module.gens.twists).unwrap();
            for m in g.monomials_of_degree(&(a - &d)) {
                let mut row = vec![ring.field.zero(); monomials.len()];
                for t in r.terms() {
                    row[index[&(t.pos as usize, t.mon.mul(&m))]] = t.coeff.clone();
                }
                ech.insert(row);
            }
        }
        let free = ech.free_columns();
        LinearPiece {
            monomials,
            index,
            relations: ech,
            free,
        }
    }
}

impl<F: Field> Pieces<F> for LinearPieces<F> {
    fn field(&self) -> &F {
        &self.module.ring.field
    }

    fn dim(&mut self, a: &Degree) -> usize {
        self.piece(a).free.len()
    }

    fn multiplication(&mut self, i: usize, a: &Degree) -> Vec<Vec<F::Elem>> {
        let b = a + self.module.ring.grading.var_degree(i);
        let src = self.piece(a);
        let dst = self.piece(&b);
        let f = &self.module.ring.field;
        src.free
            .iter()
            .map(|&c| {
                let (p, m) = src.monomials[c];
                let mut v = vec![f.zero(); dst.monomials.len()];
                v[dst.index[&(p, m.mul_var(i))]] = f.one();
                dst.relations.reduce(&mut v);
                dst.free.iter().map(|&k| v[k].clone()).collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::grading::{graded_piece_dim, Grading};

    fn ring(w: &[i64]) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, Grading::weighted(w).unwrap())
    }

    #[test]
    fn hilbert_function_of_free_module() {
        let r = ring(&[2, 3, 5]);
        let s = PresentedModule::free(&r, vec![Degree::scalar(0)]).unwrap();
        for a in 0..20 {
            assert_eq!(
                s.hilbert_function(&Degree::scalar(a)).unwrap(),
                graded_piece_dim(&r.grading, &Degree::scalar(a))
            );
        }
    }

    #[test]
    fn quotient_by_two_variables() {
        let r = ring(&[2, 3, 5, 7]);
        let m = PresentedModule::quotient_ring(&r, &[r.variable(2), r.variable(3)]).unwrap();
        // only x0*x1 survives in degree 5; degree 6 has x0^3 and x1^2
        assert_eq!(m.hilbert_function(&Degree::scalar(5)).unwrap(), 1);
        assert_eq!(m.hilbert_function(&Degree::scalar(6)).unwrap(), 2);
    }

    #[test]
    fn truncations_of_one_ten() {
        let r = ring(&[1, 10]);
        let s = PresentedModule::free(&r, vec![Degree::scalar(0)]).unwrap();
        let t1 = s.truncate_twist(1).unwrap();
        assert_eq!(t1.twists(), &[Degree::scalar(0), Degree::scalar(9)]);
        let t7 = s.truncate_twist(7).unwrap();
        assert_eq!(t7.twists(), &[Degree::scalar(0), Degree::scalar(3)]);
    }

    #[test]
    fn pieces_agree() {
        let r = ring(&[1, 2]);
        let x = r.variable(0);
        let y = r.variable(1);
        let m = PresentedModule::quotient_ring(&r, &[x.mul(&r, &x).sub(&r, &y), x.mul(&r, &y)]).unwrap();
        let mut gp = m.gb_pieces().unwrap();
        let mut lp = m.linear_pieces();
        for a in 0..8 {
            let d = Degree::scalar(a);
            assert_eq!(gp.dim(&d), lp.dim(&d));
        }
    }

    #[test]
    fn ideal_module_of_maximal_ideal() {
        let r = ring(&[2, 3, 5]);
        let vars: Vec<_> = (0..3).map(|i| r.variable(i)).collect();
        let m = PresentedModule::ideal(&r, &vars).unwrap();
        assert_eq!(m.num_generators(), 3);
        assert_eq!(m.relations().len(), 3);
    }
}
