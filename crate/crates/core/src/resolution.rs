//! Free resolutions, minimization, Betti tables, Koszul complexes and the
//! invariants read off from them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::free_module::{FreeModule, ModuleMap};
use crate::grading::{Degree, Grading};
use crate::groebner::{syzygy_run, GbLimits};
use crate::linalg::rank;
use crate::module::{Pieces, PresentedModule};
use crate::poly::{ModuleElement, PolyRing, Polynomial};

/// `F_0 <- F_1 <- ... <- F_l`; `maps[i-1]` is `∂_i : F_i -> F_{i-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    ring: PolyRing<F>,
    modules: Vec<FreeModule>,
    maps: Vec<ModuleMap<F>>,
}

impl<F: Field> ChainComplex<F> {
    /// Build from differentials; `F_0` is the target of the first map.
    pub fn new(ring: &PolyRing<F>, f0: FreeModule, maps: Vec<ModuleMap<F>>) -> Result<Self> {
        let mut modules = vec![f0];
        for m in &maps {
            if m.target() != modules.last().unwrap() {
                return Err(Error::AmbientMismatch(
                    "differential target does not match the previous module".into(),
                ));
            }
            modules.push(m.source().clone());
        }
        Ok(ChainComplex {
            ring: ring.clone(),
            modules,
            maps,
        })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> FreeModule {
        self.modules.get(i).cloned().unwrap_or_default()
    }

    /// `∂_i`, or a zero map outside the stored range.
    pub fn differential(&self, i: usize) -> ModuleMap<F> {
        if i >= 1 && i <= self.maps.len() {
            self.maps[i - 1].clone()
        } else {
            ModuleMap::zero_map(self.module(i), self.module(i.wrapping_sub(1)))
        }
    }

    pub fn differentials(&self) -> &[ModuleMap<F>] {
        &self.maps
    }

    /// Index of the last nonzero module (0 for the zero complex).
    pub fn length(&self) -> usize {
        self.modules.iter().rposition(|m| m.rank() > 0).unwrap_or(0)
    }

    /// `∂_i ∘ ∂_{i+1} = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| {
            w[0].compose(&self.ring, &w[1])
                .map(|c| c.is_zero())
                .unwrap_or(false)
        })
    }

    /// No differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.columns().iter().all(|c| c.terms().iter().all(|t| !t.mon.is_one())))
    }

    /// Every differential entry is homogeneous of the right degree.
    pub fn is_homogeneous(&self) -> bool {
        let g = &self.ring.grading;
        self.maps.iter().all(|m| {
            m.columns()
                .iter()
                .enumerate()
                .all(|(c, col)| col.is_zero() || (col.is_homogeneous(g, &m.target().twists) && col.degree(g, &m.target().twists).as_ref() == Some(m.source().twist(c))))
        })
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable::new(self.ring.field.kind(), self.ring.rank());
        for (i, m) in self.modules.iter().enumerate() {
            for a in &m.twists {
                t.add(i, a.clone(), 1);
            }
        }
        t
    }

    /// Direct sum with another complex over the same ring.
    pub fn direct_sum(&self, other: &ChainComplex<F>) -> Result<Self> {
        let len = self.maps.len().max(other.maps.len());
        let f0 = self.module(0).direct_sum(&other.module(0));
        let mut maps = Vec::with_capacity(len);
        for i in 1..=len {
            let (a, b) = (self.differential(i), other.differential(i));
            let shift = a.target().rank();
            let mut cols = a.columns().to_vec();
            cols.extend(b.columns().iter().map(|c| c.shifted(shift)));
            maps.push(ModuleMap::new_unchecked(
                a.source().direct_sum(b.source()),
                a.target().direct_sum(b.target()),
                cols,
            ));
        }
        ChainComplex::new(&self.ring, f0, maps)
    }

    /// The complex with `x_i` set to zero for `i` in `vars`, viewed over
    /// the subring on the remaining variables.
    pub fn kill_variables(&self, vars: &[usize]) -> Result<ChainComplex<F>> {
        let keep: Vec<usize> = (0..self.ring.nvars()).filter(|i| !vars.contains(i)).collect();
        if keep.is_empty() {
            return Err(Error::Unsupported("cannot set every variable to zero".into()));
        }
        let sub = PolyRing::new(self.ring.field.clone(), self.ring.grading.restrict(&keep)?);
        let mut map = vec![0usize; self.ring.nvars()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let cols = m
                    .columns()
                    .iter()
                    .map(|c| c.kill_vars(vars).remap_vars(&sub, &map))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ModuleMap::new_unchecked(m.source().clone(), m.target().clone(), cols))
            })
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(&sub, self.module(0), maps)
    }

    /// `dim_k H_i(C)_a` by linear algebra on the graded pieces.
    pub fn homology_dim(&self, i: usize, a: &Degree) -> usize {
        let basis = |f: &FreeModule| -> Vec<(usize, crate::monomial::Monomial)> {
            let mut out = Vec::new();
            for (p, t) in f.twists.iter().enumerate() {
                for m in self.ring.grading.monomials_of_degree(&(a - t)) {
                    out.push((p, m));
                }
            }
            out
        };
        let bi = basis(&self.module(i));
        if bi.is_empty() {
            return 0;
        }
        let rank_of = |j: usize, src: &[(usize, crate::monomial::Monomial)], dst: &[(usize, crate::monomial::Monomial)]| -> usize {
            if src.is_empty() || dst.is_empty() || j == 0 || j > self.maps.len() {
                return 0;
            }
            let d = &self.maps[j - 1];
            let index: HashMap<_, _> = dst.iter().enumerate().map(|(k, pm)| (*pm, k)).collect();
            let rows = src.iter().map(|&(p, m)| {
                let mut row = vec![self.ring.field.zero(); dst.len()];
                for t in d.column(p).terms() {
                    row[index[&(t.pos as usize, t.mon.mul(&m))]] = t.coeff.clone();
                }
                row
            });
            rank(&self.ring.field, dst.len(), rows)
        };
        let out_rank = if i == 0 { 0 } else { rank_of(i, &bi, &basis(&self.module(i - 1))) };
        let in_rank = rank_of(i + 1, &basis(&self.module(i + 1)), &bi);
        bi.len() - out_rank - in_rank
    }
}

/// A free resolution built from iterated syzygies. At every step a minimal
/// generating subset of the syzygy module is kept, so only the first
/// differential can carry unit entries.
pub fn free_resolution<F: Field>(m: &PresentedModule<F>, max_length: Option<usize>) -> Result<ChainComplex<F>> {
    free_resolution_with(m, max_length, GbLimits::default())
}

pub fn free_resolution_with<F: Field>(
    m: &PresentedModule<F>,
    max_length: Option<usize>,
    limits: GbLimits,
) -> Result<ChainComplex<F>> {
    let ring = m.ring();
    let g = &ring.grading;
    let cap = max_length.unwrap_or(ring.nvars() + 1);
    let f0 = m.generators().clone();
    let mut maps: Vec<ModuleMap<F>> = Vec::new();
    let mut target = f0.clone();
    let mut cols: Vec<ModuleElement<F>> = m.relations().to_vec();
    let mut degs: Vec<Degree> = cols
        .iter()
        .map(|c| c.degree(g, &target.twists).unwrap())
        .collect();
    for _ in 0..cap {
        if cols.is_empty() {
            break;
        }
        let run = syzygy_run(ring, &target.twists, &cols, &degs, &[], limits)?;
        let kept: Vec<ModuleElement<F>> = run.minimal.iter().map(|&k| cols[k].clone()).collect();
        let kept_degs: Vec<Degree> = run.minimal.iter().map(|&k| degs[k].clone()).collect();
        let source = FreeModule::new(kept_degs);
        maps.push(ModuleMap::new_unchecked(source.clone(), target.clone(), kept));
        cols = run.minimal_syzygies(ring);
        degs = cols
            .iter()
            .map(|c| c.degree(g, &source.twists).unwrap())
            .collect();
        target = source;
    }
    ChainComplex::new(ring, f0, maps)
}

/// Remove every unit entry by cancelling the corresponding pair of free
/// summands, lowest degree first. The result is quasi-isomorphic to the
/// input and has all differential entries in the maximal ideal.
pub fn minimize<F: Field>(c: &ChainComplex<F>) -> ChainComplex<F> {
    let ring = &c.ring;
    let g = &ring.grading;
    let f = &ring.field;
    let mut modules = c.modules.clone();
    let mut maps = c.maps.clone();
    loop {
        // (order value, degree, i, c, r)
        let mut best: Option<(i64, Degree, usize, usize, usize)> = None;
        for (k, m) in maps.iter().enumerate() {
            for (col, v) in m.columns().iter().enumerate() {
                for t in v.terms() {
                    if t.mon.is_one() {
                        let d = m.source().twist(col).clone();
                        let key = (g.order_value(&d), d, k + 1, col, t.pos as usize);
                        if best.as_ref().is_none_or(|b| key < *b) {
                            best = Some(key);
                        }
                    }
                }
            }
        }
        let Some((_, _, i, cc, r)) = best else { break };
        let d = &maps[i - 1];
        let unit_col = d.column(cc).clone();
        let u = unit_col
            .terms()
            .iter()
            .find(|t| t.pos as usize == r && t.mon.is_one())
            .unwrap()
            .coeff
            .clone();
        let uinv = f.inv(&u);
        // rows: drop r; columns: drop cc, and clear row r from the others
        let mut row_map: Vec<Option<usize>> = (0..d.nrows()).map(Some).collect();
        row_map[r] = None;
        for x in row_map.iter_mut().skip(r + 1) {
            *x = x.map(|v| v - 1);
        }
        let mut new_cols = Vec::with_capacity(d.ncols() - 1);
        for (k, col) in d.columns().iter().enumerate() {
            if k == cc {
                continue;
            }
            let coeff = col.coordinate(r);
            let mut v = col.clone();
            if !coeff.is_zero() {
                let factor = coeff.scale(ring, &f.neg(&uinv));
                v = v.add(ring, &unit_col.mul_poly(ring, &factor));
            }
            new_cols.push(v.reindex(ring, &row_map));
        }
        let mut src = modules[i].clone();
        src.twists.remove(cc);
        let mut tgt = modules[i - 1].clone();
        tgt.twists.remove(r);
        maps[i - 1] = ModuleMap::new_unchecked(src.clone(), tgt.clone(), new_cols);
        // ∂_{i+1}: delete row cc
        if i < maps.len() {
            let nx = &maps[i];
            let mut rm: Vec<Option<usize>> = (0..nx.nrows()).map(Some).collect();
            rm[cc] = None;
            for x in rm.iter_mut().skip(cc + 1) {
                *x = x.map(|v| v - 1);
            }
            let cols = nx.columns().iter().map(|v| v.reindex(ring, &rm)).collect();
            maps[i] = ModuleMap::new_unchecked(nx.source().clone(), src.clone(), cols);
        }
        // ∂_{i-1}: delete column r
        if i >= 2 {
            let pv = &maps[i - 2];
            let mut cols = pv.columns().to_vec();
            cols.remove(r);
            maps[i - 2] = ModuleMap::new_unchecked(tgt.clone(), pv.target().clone(), cols);
        }
        modules[i] = src;
        modules[i - 1] = tgt;
    }
    // trailing zero modules are dropped
    while maps.last().is_some_and(|m| m.source().rank() == 0) {
        maps.pop();
        modules.pop();
    }
    ChainComplex {
        ring: ring.clone(),
        modules,
        maps,
    }
}

/// The minimal free resolution of `M`.
pub fn minimal_free_resolution<F: Field>(m: &PresentedModule<F>) -> Result<ChainComplex<F>> {
    Ok(minimize(&free_resolution(m, None)?))
}

/// Graded Betti numbers `β_{i,a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    field: FieldKind,
    rank: usize,
    entries: BTreeMap<(usize, Degree), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    degree: Vec<i64>,
    mult: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    field: String,
    betti: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn new(field: FieldKind, rank: usize) -> Self {
        BettiTable {
            field,
            rank,
            entries: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn add(&mut self, i: usize, a: Degree, mult: usize) {
        if mult > 0 {
            *self.entries.entry((i, a)).or_insert(0) += mult;
        }
    }

    pub fn get(&self, i: usize, a: &Degree) -> usize {
        self.entries.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    /// `β_{i,j}` for a Z-grading.
    pub fn get_z(&self, i: usize, j: i64) -> usize {
        self.get(i, &Degree::scalar(j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Degree, usize)> {
        self.entries.iter().map(|((i, a), m)| (*i, a, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological index with a nonzero entry.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// Degrees appearing in homological index `i`, with multiplicities.
    pub fn degrees_at(&self, i: usize) -> Vec<(Degree, usize)> {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|((_, a), m)| (a.clone(), *m))
            .collect()
    }

    /// Largest degree in index `i` (Z-grading).
    pub fn max_degree(&self, i: usize) -> Option<i64> {
        self.degrees_at(i).iter().map(|(a, _)| a.value()).max()
    }

    pub fn min_degree(&self, i: usize) -> Option<i64> {
        self.degrees_at(i).iter().map(|(a, _)| a.value()).min()
    }

    pub fn total(&self, i: usize) -> usize {
        self.degrees_at(i).iter().map(|(_, m)| m).sum()
    }

    /// The numerator `Σ (-1)^i β_{i,a} t^{ℓ(a)}` of the Hilbert series in
    /// the order value `ℓ`, as exponent → coefficient.
    pub fn hilbert_numerator(&self, g: &Grading) -> BTreeMap<i64, i64> {
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for ((i, a), m) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(g.order_value(a)).or_insert(0) += s * *m as i64;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn to_json(&self) -> String {
        let j = BettiJson {
            field: self.field.to_string(),
            betti: self
                .entries
                .iter()
                .map(|((i, a), m)| BettiEntry {
                    i: *i,
                    degree: a.as_slice().to_vec(),
                    mult: *m,
                })
                .collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: BettiJson = serde_json::from_str(s)
            .map_err(|e| Error::Unsupported(format!("malformed Betti JSON: {e}")))?;
        let field = parse_field_kind(&j.field)?;
        let rank = j.betti.first().map_or(1, |e| e.degree.len());
        let mut t = BettiTable::new(field, rank);
        for e in j.betti {
            if e.degree.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: e.degree.len(),
                });
            }
            t.add(e.i, Degree::from_slice(&e.degree), e.mult);
        }
        Ok(t)
    }
}

pub fn parse_field_kind(s: &str) -> Result<FieldKind> {
    let s = s.trim();
    if s == "QQ" {
        return Ok(FieldKind::Rationals);
    }
    if let Some(p) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let p: u32 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad characteristic in {s}")))?;
        return FieldKind::prime(p);
    }
    Err(Error::InvalidField(format!("unknown field {s}")))
}

impl fmt::Display for BettiTable {
    /// For a Z-grading: rows are `j - i`, columns `i`, dots for zeros.
    /// Otherwise one `i: degree^mult` line per entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "0");
        }
        if self.rank != 1 {
            for ((i, a), m) in &self.entries {
                writeln!(f, "{i}: {a}^{m}")?;
            }
            return Ok(());
        }
        let imax = self.max_index().unwrap();
        let rows: Vec<i64> = {
            let lo = self.entries.keys().map(|(i, a)| a.value() - *i as i64).min().unwrap();
            let hi = self.entries.keys().map(|(i, a)| a.value() - *i as i64).max().unwrap();
            (lo..=hi).collect()
        };
        let label_w = rows.iter().map(|r| r.to_string().len()).max().unwrap() + 1;
        let col_w: Vec<usize> = (0..=imax)
            .map(|i| {
                let mut w = i.to_string().len();
                for r in &rows {
                    w = w.max(self.get_z(i, r + i as i64).to_string().len());
                }
                w
            })
            .collect();
        let mut header = " ".repeat(label_w);
        for (i, w) in col_w.iter().enumerate() {
            header.push_str(&format!(" {i:>w$}"));
        }
        writeln!(f, "{header}")?;
        for r in rows {
            let mut line = format!("{:>w$}", format!("{r}:"), w = label_w);
            for (i, w) in col_w.iter().enumerate() {
                let v = self.get_z(i, r + i as i64);
                let s = if v == 0 { ".".to_string() } else { v.to_string() };
                line.push_str(&format!(" {s:>w$}"));
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Betti table of the minimal free resolution.
pub fn betti_table<F: Field>(m: &PresentedModule<F>) -> Result<BettiTable> {
    Ok(minimal_free_resolution(m)?.betti_table())
}

/// Index sets of size `k` in `0..n`, as bitmasks in increasing order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << n)).filter(|s| s.count_ones() as usize == k).collect()
}

fn mask_degree(g: &Grading, mask: u32) -> Degree {
    let mut d = g.zero_degree();
    for i in 0..g.nvars() {
        if mask & (1 << i) != 0 {
            d = &d + g.var_degree(i);
        }
    }
    d
}

/// The Koszul complex on the variables; `K_i` has one generator per
/// `i`-subset `J` in degree `Σ_{j∈J} deg x_j`, subsets ordered by their
/// binary encoding. `∂(e_J) = Σ_k (-1)^k x_{j_k} e_{J∖j_k}`.
pub fn koszul_complex<F: Field>(ring: &PolyRing<F>) -> ChainComplex<F> {
    let g = &ring.grading;
    let n = ring.nvars();
    let f = &ring.field;
    let mut maps = Vec::new();
    let level = |k: usize| -> (Vec<u32>, FreeModule) {
        let s = subsets_of_size(n, k);
        let fm = FreeModule::new(s.iter().map(|&m| mask_degree(g, m)).collect());
        (s, fm)
    };
    let (mut prev_sets, f0) = level(0);
    let mut prev_mod = f0.clone();
    for k in 1..=n {
        let (sets, fm) = level(k);
        let index: HashMap<u32, usize> = prev_sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let cols = sets
            .iter()
            .map(|&mask| {
                let mut v = ModuleElement::zero();
                let mut pos = 0;
                for j in 0..n {
                    if mask & (1 << j) == 0 {
                        continue;
                    }
                    let sign = if pos % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                    let term = ModuleElement::term(ring, crate::monomial::Monomial::var(j), index[&(mask & !(1 << j))], sign);
                    v = v.add(ring, &term);
                    pos += 1;
                }
                v
            })
            .collect();
        maps.push(ModuleMap::new_unchecked(fm.clone(), prev_mod.clone(), cols));
        prev_sets = sets;
        prev_mod = fm;
    }
    ChainComplex::new(ring, f0, maps).expect("consistent")
}

/// `dim_k H_i(M ⊗ K)_a` computed from a degreewise model of `M`.
pub fn koszul_homology_dim<F: Field, P: Pieces<F>>(pieces: &mut P, g: &Grading, i: usize, a: &Degree) -> usize {
    let n = g.nvars();
    if i > n {
        return 0;
    }
    // blocks of (M ⊗ K_k)_a
    let blocks = |pieces: &mut P, k: usize| -> Vec<(u32, Degree, usize)> {
        subsets_of_size(n, k)
            .into_iter()
            .map(|mask| {
                let d = a - &mask_degree(g, mask);
                let dim = pieces.dim(&d);
                (mask, d, dim)
            })
            .filter(|b| b.2 > 0)
            .collect()
    };
    let ci = blocks(pieces, i);
    let dim_i: usize = ci.iter().map(|b| b.2).sum();
    if dim_i == 0 {
        return 0;
    }
    let field = pieces.field().clone();
    // rank of ∂ : (M⊗K_k)_a -> (M⊗K_{k-1})_a
    let rank_at = |pieces: &mut P, src: &[(u32, Degree, usize)], dst: &[(u32, Degree, usize)]| -> usize {
        let ncols: usize = dst.iter().map(|b| b.2).sum();
        if ncols == 0 || src.is_empty() {
            return 0;
        }
        let mut offset = HashMap::new();
        let mut o = 0;
        for b in dst {
            offset.insert(b.0, o);
            o += b.2;
        }
        let mut rows = Vec::new();
        for (mask, d, dim) in src {
            let mut block_rows = vec![vec![field.zero(); ncols]; *dim];
            let mut pos = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let target = mask & !(1 << j);
                let negate = pos % 2 == 1;
                pos += 1;
                let Some(&off) = offset.get(&target) else { continue };
                let mult = pieces.multiplication(j, d);
                for (c, col) in mult.iter().enumerate() {
                    for (r, x) in col.iter().enumerate() {
                        if !field.is_zero(x) {
                            block_rows[c][off + r] = if negate { field.neg(x) } else { x.clone() };
                        }
                    }
                }
            }
            rows.extend(block_rows);
        }
        rank(&field, ncols, rows)
    };
    let out_rank = if i == 0 { 0 } else {
        let cim1 = blocks(pieces, i - 1);
        rank_at(pieces, &ci, &cim1)
    };
    let in_rank = if i == n { 0 } else {
        let cip1 = blocks(pieces, i + 1);
        rank_at(pieces, &cip1, &ci)
    };
    dim_i - out_rank - in_rank
}

/// `dim Tor_i^S(M, k)_a` as Koszul homology, using only linear algebra on
/// the presentation (no Gröbner bases).
pub fn tor_via_koszul<F: Field>(m: &PresentedModule<F>, i: usize, a: &Degree) -> usize {
    let mut p = m.linear_pieces();
    koszul_homology_dim(&mut p, &m.ring().grading, i, a)
}

/// Projective dimension; errors for the zero module.
pub fn projective_dimension(b: &BettiTable) -> Result<usize> {
    b.max_index().ok_or(Error::ZeroModule)
}

/// `depth = n + 1 - pd` (Auslander–Buchsbaum).
pub fn depth(b: &BettiTable, g: &Grading) -> Result<usize> {
    Ok(g.nvars() - projective_dimension(b)?)
}

/// Krull dimension: the order of the pole at `t = 1` of the Hilbert series
/// `K(t) / Π (1 - t^{ℓ(deg x_i)})`.
pub fn krull_dimension(b: &BettiTable, g: &Grading) -> Result<usize> {
    let num = b.hilbert_numerator(g);
    if num.is_empty() {
        return Err(Error::ZeroModule);
    }
    let lo = *num.keys().next().unwrap();
    let hi = *num.keys().last().unwrap();
    let mut coeffs: Vec<i64> = (lo..=hi).map(|e| num.get(&e).copied().unwrap_or(0)).collect();
    let mut mult = 0;
    // divide by (1 - t) while t = 1 is a root
    while coeffs.iter().sum::<i64>() == 0 && !coeffs.is_empty() {
        // q(t) with q(t)(1 - t) = p(t): q_k = Σ_{l ≤ k} p_l
        let mut q = Vec::with_capacity(coeffs.len() - 1);
        let mut acc = 0;
        for &c in &coeffs[..coeffs.len() - 1] {
            acc += c;
            q.push(acc);
        }
        coeffs = q;
        mult += 1;
    }
    Ok(g.nvars() - mult)
}

/// `Σ_i (-1)^i Σ_a β_{i,a} dim S_{d-a}`.
pub fn euler_characteristic(b: &BettiTable, g: &Grading, d: &Degree) -> i64 {
    b.entries()
        .map(|(i, a, m)| {
            let s = if i % 2 == 0 { 1 } else { -1 };
            s * (m * crate::grading::graded_piece_dim(g, &(d - a))) as i64
        })
        .sum()
}

/// `ker(outgoing) / im(incoming)` inside the free module with the given
/// twists, presented on minimal generators.
pub fn homology_module<F: Field>(
    ring: &PolyRing<F>,
    twists: &[Degree],
    outgoing: Option<&ModuleMap<F>>,
    incoming: Option<&ModuleMap<F>>,
) -> Result<PresentedModule<F>> {
    let (z, zdeg): (Vec<ModuleElement<F>>, Vec<Degree>) = match outgoing {
        Some(d) if !d.is_zero() => {
            let k = crate::groebner::kernel(ring, d)?;
            (k.columns().to_vec(), k.source().twists.clone())
        }
        _ => (
            (0..twists.len()).map(|p| ModuleElement::basis(ring, p)).collect(),
            twists.to_vec(),
        ),
    };
    let b: Vec<ModuleElement<F>> = incoming.map(|d| d.columns().to_vec()).unwrap_or_default();
    PresentedModule::submodule(ring, twists, &z, &zdeg, &b)
}

/// Polynomial coordinates of a map, handy for printing.
pub fn matrix_rows<F: Field>(m: &ModuleMap<F>) -> Vec<Vec<Polynomial<F>>> {
    m.rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring(w: &[i64]) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, Grading::weighted(w).unwrap())
    }

    fn maximal_ideal(r: &PolyRing<Rationals>) -> PresentedModule<Rationals> {
        let vars: Vec<_> = (0..r.nvars()).map(|i| r.variable(i)).collect();
        PresentedModule::ideal(r, &vars).unwrap()
    }

    #[test]
    fn resolution_of_maximal_ideal_235() {
        let r = ring(&[2, 3, 5]);
        let c = minimal_free_resolution(&maximal_ideal(&r)).unwrap();
        assert!(c.is_complex());
        assert!(c.is_minimal());
        let tw = |i: usize| -> Vec<i64> { c.module(i).twists.iter().map(|d| d.value()).collect() };
        assert_eq!(tw(0), vec![2, 3, 5]);
        let mut t1 = tw(1);
        t1.sort();
        assert_eq!(t1, vec![5, 7, 8]);
        assert_eq!(tw(2), vec![10]);
        assert_eq!(c.length(), 2);
    }

    #[test]
    fn betti_table_display() {
        let r = ring(&[1, 2]);
        let b = betti_table(&maximal_ideal(&r)).unwrap();
        assert_eq!(b.to_string(), "   0 1\n1: 1 .\n2: 1 1\n");
        let back = BettiTable::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn koszul_complex_degrees() {
        let r = ring(&[2, 3, 5]);
        let k = koszul_complex(&r);
        assert!(k.is_complex());
        let mut d2: Vec<i64> = k.module(2).twists.iter().map(|d| d.value()).collect();
        d2.sort();
        assert_eq!(d2, vec![5, 7, 8]);
        assert_eq!(k.module(0).twists, vec![Degree::scalar(0)]);
    }

    #[test]
    fn minimize_removes_identity_cone() {
        let r = ring(&[1, 2]);
        let m = maximal_ideal(&r);
        let c = minimal_free_resolution(&m).unwrap();
        let id = ChainComplex::new(
            &r,
            FreeModule::new(vec![Degree::scalar(4)]),
            vec![ModuleMap::identity(&r, &FreeModule::new(vec![Degree::scalar(4)]))],
        )
        .unwrap();
        let big = c.direct_sum(&id).unwrap();
        assert!(!big.is_minimal());
        let small = minimize(&big);
        assert!(small.is_minimal());
        assert_eq!(small.betti_table(), c.betti_table());
    }

    #[test]
    fn tor_oracle_matches_residue_field() {
        let r = ring(&[1, 2]);
        let k = PresentedModule::residue_field(&r).unwrap();
        assert_eq!(tor_via_koszul(&k, 0, &Degree::scalar(0)), 1);
        assert_eq!(tor_via_koszul(&k, 1, &Degree::scalar(1)), 1);
        assert_eq!(tor_via_koszul(&k, 1, &Degree::scalar(2)), 1);
        assert_eq!(tor_via_koszul(&k, 2, &Degree::scalar(3)), 1);
        assert_eq!(tor_via_koszul(&k, 1, &Degree::scalar(3)), 0);
    }

    #[test]
    fn depth_and_dimension() {
        let r = ring(&[2, 3, 5, 7]);
        let m = PresentedModule::quotient_ring(&r, &[r.variable(2), r.variable(3)]).unwrap();
        let b = betti_table(&m).unwrap();
        assert_eq!(projective_dimension(&b).unwrap(), 2);
        assert_eq!(depth(&b, &r.grading).unwrap(), 2);
        assert_eq!(krull_dimension(&b, &r.grading).unwrap(), 2);
        let s = PresentedModule::free(&r, vec![Degree::scalar(0)]).unwrap();
        assert_eq!(depth(&betti_table(&s).unwrap(), &r.grading).unwrap(), 4);
    }
}
