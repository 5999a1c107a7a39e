//! Twisted free modules and homogeneous maps between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::{Degree, Grading};
use crate::poly::{ModuleElement, PolyRing, Polynomial, Term};

/// `⊕_j S(-a_j)`, recorded by its generator degrees `a_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeModule {
    pub twists: Vec<Degree>,
}

impl FreeModule {
    pub fn new(twists: Vec<Degree>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        FreeModule { twists: Vec::new() }
    }

    /// `S^r` with all generators in degree zero.
    pub fn standard(g: &Grading, r: usize) -> Self {
        FreeModule {
            twists: vec![g.zero_degree(); r],
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twist(&self, i: usize) -> &Degree {
        &self.twists[i]
    }

    /// Generator degrees shifted by `-a`, i.e. `F(a)`.
    pub fn shifted(&self, a: &Degree) -> Self {
        FreeModule {
            twists: self.twists.iter().map(|t| t - a).collect(),
        }
    }

    /// `Hom(F, S)`: generator degrees negated.
    pub fn dual(&self) -> Self {
        FreeModule {
            twists: self.twists.iter().map(|t| -t).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FreeModule) -> Self {
        let mut twists = self.twists.clone();
        twists.extend(other.twists.iter().cloned());
        FreeModule { twists }
    }
}

/// A homogeneous map of degree zero between twisted free modules, stored by
/// columns: column `c` is the image of the `c`-th source generator.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    source: FreeModule,
    target: FreeModule,
    columns: Vec<ModuleElement<F>>,
}

impl<F: Field> PartialEq for ModuleMap<F> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.columns == other.columns
    }
}

impl<F: Field> ModuleMap<F> {
    /// Checks that every column lies in the target and is homogeneous of
    /// the corresponding source degree.
    pub fn new(
        ring: &PolyRing<F>,
        source: FreeModule,
        target: FreeModule,
        columns: Vec<ModuleElement<F>>,
    ) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::DimensionMismatch {
                expected: source.rank(),
                got: columns.len(),
            });
        }
        for (c, col) in columns.iter().enumerate() {
            col.check_rank(target.rank())?;
            check_homogeneous(ring, col, &target.twists, &source.twists[c])?;
        }
        Ok(ModuleMap {
            source,
            target,
            columns,
        })
    }

    pub(crate) fn new_unchecked(
        source: FreeModule,
        target: FreeModule,
        columns: Vec<ModuleElement<F>>,
    ) -> Self {
        debug_assert_eq!(source.rank(), columns.len());
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    /// Build from a matrix of polynomials given by rows; the source degrees
    /// are taken from `source`.
    pub fn from_rows(
        ring: &PolyRing<F>,
        source: FreeModule,
        target: FreeModule,
        rows: &[Vec<Polynomial<F>>],
    ) -> Result<Self> {
        if rows.len() != target.rank() {
            return Err(Error::DimensionMismatch {
                expected: target.rank(),
                got: rows.len(),
            });
        }
        let ncols = source.rank();
        let mut cols: Vec<Vec<Term<F::Elem>>> = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            for (c, p) in row.iter().enumerate() {
                for (m, a) in p.terms() {
                    cols[c].push(Term {
                        mon: *m,
                        pos: r as u32,
                        coeff: a.clone(),
                    });
                }
            }
        }
        let columns = cols
            .into_iter()
            .map(|t| ModuleElement::from_terms(ring, t))
            .collect();
        Self::new(ring, source, target, columns)
    }

    pub fn zero_map(source: FreeModule, target: FreeModule) -> Self {
        let columns = vec![ModuleElement::zero(); source.rank()];
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    pub fn identity(ring: &PolyRing<F>, f: &FreeModule) -> Self {
        let columns = (0..f.rank())
            .map(|i| ModuleElement::basis(ring, i))
            .collect();
        ModuleMap {
            source: f.clone(),
            target: f.clone(),
            columns,
        }
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[ModuleElement<F>] {
        &self.columns
    }

    pub fn column(&self, c: usize) -> &ModuleElement<F> {
        &self.columns[c]
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> Polynomial<F> {
        self.columns[c].coordinate(r)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Rows of the matrix as polynomials.
    pub fn rows(&self) -> Vec<Vec<Polynomial<F>>> {
        let mut rows = vec![vec![Polynomial::zero(); self.ncols()]; self.nrows()];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, p) in col.coordinates(self.nrows()).into_iter().enumerate() {
                rows[r][c] = p;
            }
        }
        rows
    }

    pub fn apply(&self, ring: &PolyRing<F>, v: &ModuleElement<F>) -> ModuleElement<F> {
        v.apply(ring, &self.columns)
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &PolyRing<F>, other: &ModuleMap<F>) -> Result<ModuleMap<F>> {
        if other.target != self.source {
            return Err(Error::AmbientMismatch(
                "maps are not composable: twists differ".into(),
            ));
        }
        let columns = other
            .columns
            .iter()
            .map(|c| self.apply(ring, c))
            .collect();
        Ok(ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            columns,
        })
    }

    /// `Hom(-, S)` of the map: `target^* -> source^*`.
    pub fn transpose(&self, ring: &PolyRing<F>) -> ModuleMap<F> {
        let mut cols: Vec<Vec<Term<F::Elem>>> = vec![Vec::new(); self.nrows()];
        for (c, col) in self.columns.iter().enumerate() {
            for t in col.terms() {
                cols[t.pos as usize].push(Term {
                    mon: t.mon,
                    pos: c as u32,
                    coeff: t.coeff.clone(),
                });
            }
        }
        ModuleMap {
            source: self.target.dual(),
            target: self.source.dual(),
            columns: cols
                .into_iter()
                .map(|t| ModuleElement::from_terms(ring, t))
                .collect(),
        }
    }

    /// The same matrix between the twisted modules `F(a) -> G(a)`.
    pub fn shifted(&self, a: &Degree) -> ModuleMap<F> {
        ModuleMap {
            source: self.source.shifted(a),
            target: self.target.shifted(a),
            columns: self.columns.clone(),
        }
    }
}

pub(crate) fn check_homogeneous<F: Field>(
    ring: &PolyRing<F>,
    v: &ModuleElement<F>,
    twists: &[Degree],
    expected: &Degree,
) -> Result<()> {
    for t in v.terms() {
        let d = &ring.grading.degree_of(&t.mon) + &twists[t.pos as usize];
        if &d != expected {
            return Err(Error::NotHomogeneous(format!(
                "term {}*{} in position {} has degree {d}, expected {expected}",
                ring.field.format(&t.coeff),
                t.mon.fmt_with(&|i| ring.var_name(i), ring.nvars()),
                t.pos
            )));
        }
    }
    Ok(())
}
