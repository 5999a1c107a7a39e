//! The bigraded exterior algebra, its graded dual `ω_E`, and the BGG
//! differential module `R(M)` on a finite window of degrees.
//!
//! Exterior monomials `e_J` are indexed by bitmasks `J`. The dual basis
//! element `e_J^*` has bidegree `(Σ_{j∈J} deg x_j; |J|)` and the action is
//!
//! | product            | result                                         |
//! |--------------------|------------------------------------------------|
//! | `e_i · e_J^*`, i∉J | 0                                              |
//! | `e_i · e_J^*`, i∈J | `(-1)^{#{j ∈ J : j > i}} e_{J∖i}^*`            |
//!
//! i.e. `(e_i · φ)(u) = φ(u ∧ e_i)`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::{Degree, Grading};
use crate::linalg::rank;
use crate::module::{GbPieces, Pieces, PresentedModule};
use crate::resolution::subsets_of_size;

/// `Λ(e_0, …, e_n)` with `deg e_i = (-deg x_i; -1)`.
#[derive(Clone, Debug)]
pub struct ExteriorAlgebra {
    degrees: Vec<Degree>,
}

impl ExteriorAlgebra {
    pub fn new(g: &Grading) -> Self {
        ExteriorAlgebra {
            degrees: g.var_degrees().to_vec(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.nvars()
    }

    /// Bidegree of `e_J`.
    pub fn bidegree(&self, mask: u32) -> (Degree, i64) {
        let d = self.mask_degree(mask);
        (-&d, -(mask.count_ones() as i64))
    }

    fn mask_degree(&self, mask: u32) -> Degree {
        let mut d = Degree::zero(self.degrees[0].rank());
        for (i, di) in self.degrees.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d = &d + di;
            }
        }
        d
    }

    /// `e_a ∧ e_b` as a sign and a mask, or `None` when they share an index.
    pub fn wedge(&self, a: u32, b: u32) -> Option<(i32, u32)> {
        if a & b != 0 {
            return None;
        }
        // sign of sorting the concatenation: count pairs (i in a, j in b) with i > j
        let mut inversions = 0;
        for i in 0..self.nvars() {
            if a & (1 << i) != 0 {
                inversions += (b & ((1u32 << i) - 1)).count_ones();
            }
        }
        Some((if inversions % 2 == 0 { 1 } else { -1 }, a | b))
    }
}

/// `ω_E = Hom_k(E, k)`, as its dual basis.
#[derive(Clone, Debug)]
pub struct OmegaE {
    algebra: ExteriorAlgebra,
}

impl OmegaE {
    pub fn new(g: &Grading) -> Self {
        OmegaE {
            algebra: ExteriorAlgebra::new(g),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Bidegree of `e_J^*`.
    pub fn bidegree(&self, mask: u32) -> (Degree, usize) {
        (self.algebra.mask_degree(mask), mask.count_ones() as usize)
    }

    /// The generator `e_{0..n}^*`, in bidegree `(w; n+1)`.
    pub fn generator_bidegree(&self) -> (Degree, usize) {
        self.bidegree((1u32 << self.algebra.nvars()) - 1)
    }

    /// The socle `e_∅^*`, in bidegree `(0; 0)`.
    pub fn socle_bidegree(&self) -> (Degree, usize) {
        self.bidegree(0)
    }

    /// All basis elements with their bidegrees.
    pub fn basis(&self) -> Vec<(u32, Degree, usize)> {
        (0..self.dim() as u32)
            .map(|m| {
                let (d, j) = self.bidegree(m);
                (m, d, j)
            })
            .collect()
    }

    /// `e_i · e_J^*`.
    pub fn act(&self, i: usize, mask: u32) -> Option<(i32, u32)> {
        if mask & (1 << i) == 0 {
            return None;
        }
        let above = (mask >> (i + 1)).count_ones();
        Some((if above % 2 == 0 { 1 } else { -1 }, mask & !(1 << i)))
    }

    /// Number of basis elements in bidegree `(d; j)`.
    pub fn piece_dim(&self, d: &Degree, j: usize) -> usize {
        subsets_of_size(self.algebra.nvars(), j)
            .into_iter()
            .filter(|&m| &self.algebra.mask_degree(m) == d)
            .count()
    }
}

/// `R(M) = ⊕_a M_a ⊗ ω_E(-a; 0)` for `a` in a window `[lo, hi]`, with
/// differential `m ⊗ f ↦ Σ x_i m ⊗ e_i f`.
pub struct DifferentialModuleWindow<F: Field> {
    field: F,
    weights: Vec<i64>,
    lo: i64,
    hi: i64,
    /// `dim M_a` for `a` in the window.
    dims: BTreeMap<i64, usize>,
    /// Multiplication by `x_i` from `M_a`, as columns.
    mult: HashMap<(usize, i64), Vec<Vec<F::Elem>>>,
}

/// A summand `M_a ⊗ e_J^*` of a piece of `R(M)`.
#[derive(Clone, Copy, Debug)]
struct Block {
    mask: u32,
    a: i64,
    dim: usize,
}

impl<F: Field> DifferentialModuleWindow<F> {
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// `w^{n+1}`.
    pub fn margin(&self) -> i64 {
        self.weights.iter().sum()
    }

    fn mask_weight(&self, mask: u32) -> i64 {
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| w)
            .sum()
    }

    fn blocks(&self, a: i64, j: usize) -> Vec<Block> {
        subsets_of_size(self.weights.len(), j)
            .into_iter()
            .filter_map(|mask| {
                let s = a - self.mask_weight(mask);
                let dim = self.dims.get(&s).copied().unwrap_or(0);
                (dim > 0).then_some(Block { mask, a: s, dim })
            })
            .collect()
    }

    /// Dimension of the `(a; j)` piece inside the window.
    pub fn piece_dim(&self, a: i64, j: usize) -> usize {
        self.blocks(a, j).iter().map(|b| b.dim).sum()
    }

    /// Matrix of `∂ : R_{(a;j)} -> R_{(a;j-1)}` as rows indexed by the
    /// source basis.
    fn differential_rows(&self, a: i64, j: usize) -> (Vec<Vec<F::Elem>>, usize) {
        let f = &self.field;
        let src = self.blocks(a, j);
        let dst = if j == 0 { Vec::new() } else { self.blocks(a, j - 1) };
        let ncols: usize = dst.iter().map(|b| b.dim).sum();
        let mut offset = HashMap::new();
        let mut o = 0;
        for b in &dst {
            offset.insert(b.mask, o);
            o += b.dim;
        }
        let mut rows = Vec::new();
        for b in &src {
            let mut block_rows = vec![vec![f.zero(); ncols]; b.dim];
            for i in 0..self.weights.len() {
                if b.mask & (1 << i) == 0 {
                    continue;
                }
                let above = (b.mask >> (i + 1)).count_ones();
                let target = b.mask & !(1 << i);
                let Some(&off) = offset.get(&target) else { continue };
                let Some(m) = self.mult.get(&(i, b.a)) else { continue };
                for (c, col) in m.iter().enumerate() {
                    for (r, x) in col.iter().enumerate() {
                        if !f.is_zero(x) {
                            block_rows[c][off + r] = if above % 2 == 0 { x.clone() } else { f.neg(x) };
                        }
                    }
                }
            }
            rows.extend(block_rows);
        }
        (rows, ncols)
    }

    fn reliable(&self, a: i64) -> Result<()> {
        let w = self.margin();
        if a - w < self.lo || a + w > self.hi {
            return Err(Error::WindowTooNarrow {
                degree: a,
                margin: w,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }

    /// `∂ ∘ ∂ = 0` on the `(a; j)` piece.
    pub fn square_zero_at(&self, a: i64, j: usize) -> bool {
        if j < 2 {
            return true;
        }
        let f = &self.field;
        let (d1, n1) = self.differential_rows(a, j);
        let (d2, n2) = self.differential_rows(a, j - 1);
        for row in &d1 {
            let mut out = vec![f.zero(); n2];
            for (k, x) in row.iter().enumerate().take(n1) {
                if f.is_zero(x) {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&d2[k]) {
                    if !f.is_zero(y) {
                        *o = f.add(o, &f.mul(x, y));
                    }
                }
            }
            if out.iter().any(|x| !f.is_zero(x)) {
                return false;
            }
        }
        true
    }

    /// `∂² = 0` on every piece whose degree is at least `margin` inside.
    pub fn is_square_zero(&self) -> bool {
        let w = self.margin();
        let n1 = self.weights.len();
        (self.lo + w..=self.hi - w).all(|a| (0..=n1).all(|j| self.square_zero_at(a, j)))
    }

    /// `dim H(R(M))_{(a; j)}`; errors when `a` is within `w^{n+1}` of
    /// either end of the window.
    pub fn homology(&self, a: i64, j: i64) -> Result<usize> {
        self.reliable(a)?;
        if j < 0 || j as usize > self.weights.len() {
            return Ok(0);
        }
        let j = j as usize;
        let dim = self.piece_dim(a, j);
        if dim == 0 {
            return Ok(0);
        }
        let (out_rows, out_cols) = self.differential_rows(a, j);
        let out_rank = rank(&self.field, out_cols, out_rows);
        let in_rank = if j < self.weights.len() {
            let (rows, cols) = self.differential_rows(a, j + 1);
            rank(&self.field, cols, rows)
        } else {
            0
        };
        Ok(dim - out_rank - in_rank)
    }
}

/// Build `R(M)` from `M_a`, `a ∈ [lo, hi]`.
pub fn bgg_r<F: Field>(m: &PresentedModule<F>, lo: i64, hi: i64) -> Result<DifferentialModuleWindow<F>> {
    let g = &m.ring().grading;
    if !g.is_z_graded() {
        return Err(Error::Unsupported("the BGG window needs a Z-grading".into()));
    }
    let weights: Vec<i64> = (0..g.nvars()).map(|i| g.var_degree(i).value()).collect();
    let mut pieces: GbPieces<F> = m.gb_pieces()?;
    let mut dims = BTreeMap::new();
    for a in lo..=hi {
        let d = pieces.dim(&Degree::scalar(a));
        if d > 0 {
            dims.insert(a, d);
        }
    }
    let mut mult = HashMap::new();
    for (&a, _) in &dims {
        for (i, w) in weights.iter().enumerate() {
            if a + w <= hi && dims.contains_key(&(a + w)) {
                mult.insert((i, a), pieces.multiplication(i, &Degree::scalar(a)));
            }
        }
    }
    Ok(DifferentialModuleWindow {
        field: m.ring().field.clone(),
        weights,
        lo,
        hi,
        dims,
        mult,
    })
}

/// `dim H(R(M))_{(a; j)}` on the smallest reliable window around `a`.
pub fn tor_via_bgg<F: Field>(m: &PresentedModule<F>, j: i64, a: i64) -> Result<usize> {
    let w: i64 = m
        .ring()
        .grading
        .weights()
        .ok_or_else(|| Error::Unsupported("the BGG window needs a Z-grading".into()))?
        .iter()
        .sum();
    bgg_r(m, a - w, a + w)?.homology(a, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::PolyRing;

    fn ring(w: &[i64]) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, Grading::weighted(w).unwrap())
    }

    #[test]
    fn omega_bidegrees() {
        let g = Grading::weighted(&[1, 2]).unwrap();
        let o = OmegaE::new(&g);
        assert_eq!(o.dim(), 4);
        assert_eq!(o.generator_bidegree(), (Degree::scalar(3), 2));
        assert_eq!(o.socle_bidegree(), (Degree::scalar(0), 0));
    }

    #[test]
    fn wedge_signs() {
        let e = ExteriorAlgebra::new(&Grading::weighted(&[1, 1, 1]).unwrap());
        assert_eq!(e.wedge(0b001, 0b010), Some((1, 0b011)));
        assert_eq!(e.wedge(0b010, 0b001), Some((-1, 0b011)));
        assert_eq!(e.wedge(0b011, 0b010), None);
    }

    #[test]
    fn action_is_anticommutative() {
        let o = OmegaE::new(&Grading::weighted(&[1, 2, 3]).unwrap());
        for mask in 0..8u32 {
            for i in 0..3 {
                for k in 0..3 {
                    let ik = o.act(k, mask).and_then(|(s, m)| o.act(i, m).map(|(t, m2)| (s * t, m2)));
                    let ki = o.act(i, mask).and_then(|(s, m)| o.act(k, m).map(|(t, m2)| (s * t, m2)));
                    match (ik, ki) {
                        (Some((a, m1)), Some((b, m2))) => {
                            assert_eq!(m1, m2);
                            assert_eq!(a, -b);
                        }
                        (None, None) => {}
                        _ => panic!("asymmetric action"),
                    }
                }
            }
        }
    }

    #[test]
    fn residue_field_homology() {
        let r = ring(&[1, 2]);
        let k = PresentedModule::residue_field(&r).unwrap();
        let d = bgg_r(&k, -3, 8).unwrap();
        assert!(d.is_square_zero());
        assert_eq!(d.homology(0, 0).unwrap(), 1);
        assert_eq!(d.homology(2, 1).unwrap(), 1);
        assert_eq!(d.homology(3, 2).unwrap(), 1);
        assert_eq!(d.homology(3, 1).unwrap(), 0);
        assert!(matches!(d.homology(7, 0), Err(Error::WindowTooNarrow { .. })));
    }

    #[test]
    fn free_module_is_acyclic_away_from_zero() {
        let r = ring(&[1, 2]);
        let s = PresentedModule::free(&r, vec![Degree::scalar(0)]).unwrap();
        let d = bgg_r(&s, -3, 12).unwrap();
        for a in 0..=9 {
            for j in 0..=2 {
                let expected = usize::from(a == 0 && j == 0);
                assert_eq!(d.homology(a, j).unwrap(), expected, "({a};{j})");
            }
        }
        assert_eq!(d.homology(4, -1).unwrap(), 0);
    }
}
