//! Polynomials and elements of twisted free modules.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::{Degree, Grading};
use crate::monomial::Monomial;

/// A polynomial ring `k[x_0..x_n]` with its grading.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub field: F,
    pub grading: Grading,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, grading: Grading) -> Self {
        PolyRing { field, grading }
    }

    pub fn nvars(&self) -> usize {
        self.grading.nvars()
    }

    pub fn rank(&self) -> usize {
        self.grading.rank()
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("x{}", self.grading.original_index(i))
    }

    /// Position-over-term: lower position index is larger; within a
    /// position, the monomial order of the grading.
    #[inline]
    pub fn cmp_terms(&self, ap: u32, am: &Monomial, bp: u32, bm: &Monomial) -> Ordering {
        match bp.cmp(&ap) {
            Ordering::Equal => self.grading.cmp_monomials(am, bm),
            o => o,
        }
    }

    pub fn variable(&self, i: usize) -> Polynomial<F> {
        Polynomial::monomial(self, Monomial::var(i), self.field.one())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term<E> {
    pub mon: Monomial,
    pub pos: u32,
    pub coeff: E,
}

/// A polynomial, stored as nonzero terms in descending monomial order.
#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ring: &PolyRing<F>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn monomial(ring: &PolyRing<F>, m: Monomial, c: F::Elem) -> Self {
        if ring.field.is_zero(&c) {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &PolyRing<F>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        terms.sort_by(|a, b| ring.grading.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = ring.field.add(lc, &c),
                _ => out.push((m, c)),
            }
            if let Some((_, lc)) = out.last() {
                if ring.field.is_zero(lc) {
                    out.pop();
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant coefficient when the polynomial is a nonzero constant.
    pub fn as_constant(&self) -> Option<&F::Elem> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Degree of a homogeneous polynomial; `None` for zero.
    pub fn degree(&self, g: &Grading) -> Option<Degree> {
        self.terms.first().map(|(m, _)| g.degree_of(m))
    }

    pub fn is_homogeneous(&self, g: &Grading) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = g.degree_of(m0);
                self.terms.iter().all(|(m, _)| g.degree_of(m) == d)
            }
        }
    }

    pub fn add(&self, ring: &PolyRing<F>, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(ring, terms)
    }

    pub fn sub(&self, ring: &PolyRing<F>, other: &Self) -> Self {
        self.add(ring, &other.scale(ring, &ring.field.neg(&ring.field.one())))
    }

    pub fn scale(&self, ring: &PolyRing<F>, c: &F::Elem) -> Self {
        if ring.field.is_zero(c) {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, ring.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ring: &PolyRing<F>, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), ring.field.mul(c1, c2)));
            }
        }
        Self::from_terms(ring, terms)
    }

    pub fn mul_monomial(&self, ring: &PolyRing<F>, m: &Monomial, c: &F::Elem) -> Self {
        if ring.field.is_zero(c) {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), ring.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, ring: &PolyRing<F>, e: u32) -> Self {
        let mut acc = Self::constant(ring, ring.field.one());
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Substitute zero for the given variables.
    pub fn kill_vars(&self, ring: &PolyRing<F>, vars: &[usize]) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exponent(v) == 0))
                .cloned()
                .collect(),
        }
        .resorted(ring)
    }

    fn resorted(mut self, ring: &PolyRing<F>) -> Self {
        self.terms
            .sort_by(|a, b| ring.grading.cmp_monomials(&b.0, &a.0));
        self
    }

    /// Rename variables through `map[old] = new` into the ring `target`.
    pub fn remap(&self, target: &PolyRing<F>, map: &[usize]) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (old, &new) in map.iter().enumerate() {
                e[new] += m.exponent(old);
            }
            terms.push((Monomial::from_exponents(&e)?, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    pub fn format(&self, ring: &PolyRing<F>) -> String {
        format_terms(
            ring,
            self.terms.iter().map(|(m, c)| (m, c)),
        )
    }
}

fn format_terms<'a, F: Field>(
    ring: &PolyRing<F>,
    terms: impl Iterator<Item = (&'a Monomial, &'a F::Elem)>,
) -> String
where
    F::Elem: 'a,
{
    let names = |i: usize| ring.var_name(i);
    let n = ring.nvars();
    let mut out = String::new();
    for (k, (m, c)) in terms.enumerate() {
        let neg = ring.field.is_negative_repr(c);
        let abs = if neg { ring.field.neg(c) } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mon = m.fmt_with(&names, n);
        if ring.field.is_one(&abs) {
            out.push_str(&mon);
        } else if m.is_one() {
            out.push_str(&ring.field.format(&abs));
        } else {
            out.push_str(&format!("{}*{}", ring.field.format(&abs), mon));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An element of a free module `S^r`, stored as terms `c * m * e_pos` in
/// descending position-over-term order.
#[derive(Clone, Debug)]
pub struct ModuleElement<F: Field> {
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> PartialEq for ModuleElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Default for ModuleElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> ModuleElement<F> {
    pub fn zero() -> Self {
        ModuleElement { terms: Vec::new() }
    }

    pub fn basis(ring: &PolyRing<F>, pos: usize) -> Self {
        Self::term(ring, Monomial::one(), pos, ring.field.one())
    }

    pub fn term(ring: &PolyRing<F>, mon: Monomial, pos: usize, coeff: F::Elem) -> Self {
        if ring.field.is_zero(&coeff) {
            return Self::zero();
        }
        ModuleElement {
            terms: vec![Term {
                mon,
                pos: pos as u32,
                coeff,
            }],
        }
    }

    /// Build from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &PolyRing<F>, mut terms: Vec<Term<F::Elem>>) -> Self {
        terms.sort_by(|a, b| ring.cmp_terms(b.pos, &b.mon, a.pos, &a.mon));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mon == t.mon => {
                    l.coeff = ring.field.add(&l.coeff, &t.coeff)
                }
                _ => out.push(t),
            }
            if out.last().is_some_and(|l| ring.field.is_zero(&l.coeff)) {
                out.pop();
            }
        }
        ModuleElement { terms: out }
    }

    /// Terms already in descending order with nonzero coefficients.
    pub(crate) fn from_sorted_terms(terms: Vec<Term<F::Elem>>) -> Self {
        ModuleElement { terms }
    }

    pub fn from_polys(ring: &PolyRing<F>, coords: &[Polynomial<F>]) -> Self {
        let mut terms = Vec::new();
        for (p, poly) in coords.iter().enumerate() {
            for (m, c) in poly.terms() {
                terms.push(Term {
                    mon: *m,
                    pos: p as u32,
                    coeff: c.clone(),
                });
            }
        }
        Self::from_terms(ring, terms)
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F::Elem>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    /// Coordinate `pos` as a polynomial.
    pub fn coordinate(&self, pos: usize) -> Polynomial<F> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|t| t.pos as usize == pos)
                .map(|t| (t.mon, t.coeff.clone()))
                .collect(),
        }
    }

    pub fn coordinates(&self, rank: usize) -> Vec<Polynomial<F>> {
        let mut out: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            out[t.pos as usize].push((t.mon, t.coeff.clone()));
        }
        out.into_iter().map(|terms| Polynomial { terms }).collect()
    }

    pub fn max_position(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos as usize).max()
    }

    /// Degree of a homogeneous element in the free module with the given twists.
    pub fn degree(&self, g: &Grading, twists: &[Degree]) -> Option<Degree> {
        self.terms
            .first()
            .map(|t| &g.degree_of(&t.mon) + &twists[t.pos as usize])
    }

    pub fn is_homogeneous(&self, g: &Grading, twists: &[Degree]) -> bool {
        match self.degree(g, twists) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| &g.degree_of(&t.mon) + &twists[t.pos as usize] == d),
        }
    }

    pub fn scale(&self, ring: &PolyRing<F>, c: &F::Elem) -> Self {
        if ring.field.is_zero(c) {
            return Self::zero();
        }
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon,
                    pos: t.pos,
                    coeff: ring.field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn neg(&self, ring: &PolyRing<F>) -> Self {
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon,
                    pos: t.pos,
                    coeff: ring.field.neg(&t.coeff),
                })
                .collect(),
        }
    }

    /// `c * m * self`; order is preserved by multiplicativity.
    pub fn mul_term(&self, ring: &PolyRing<F>, m: &Monomial, c: &F::Elem) -> Self {
        if ring.field.is_zero(c) {
            return Self::zero();
        }
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.mul(m),
                    pos: t.pos,
                    coeff: ring.field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, ring: &PolyRing<F>, p: &Polynomial<F>) -> Self {
        let mut acc = Self::zero();
        for (m, c) in p.terms() {
            acc.add_scaled(ring, &self.mul_term(ring, m, c), &ring.field.one());
        }
        acc
    }

    /// `self += c * other`, merging sorted term lists.
    pub fn add_scaled(&mut self, ring: &PolyRing<F>, other: &Self, c: &F::Elem) {
        self.add_multiple(ring, other, &Monomial::one(), c);
    }

    /// `self += c * m * other`.
    pub fn add_multiple(&mut self, ring: &PolyRing<F>, other: &Self, m: &Monomial, c: &F::Elem) {
        self.add_multiple_from(0, ring, other, m, c);
    }

    /// `self += c * m * other`, where every term of `c * m * other` is known
    /// to be no larger than the term at index `start`; earlier terms are
    /// left untouched.
    pub(crate) fn add_multiple_from(
        &mut self,
        start: usize,
        ring: &PolyRing<F>,
        other: &Self,
        m: &Monomial,
        c: &F::Elem,
    ) {
        if other.is_zero() || ring.field.is_zero(c) {
            return;
        }
        let shift = !m.is_one();
        let a = self.terms.split_off(start);
        let mut out = std::mem::take(&mut self.terms);
        out.reserve(a.len() + other.terms.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = other.terms.iter().peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(ia.next().unwrap()),
                (None, Some(_)) => {
                    let t = ib.next().unwrap();
                    out.push(Term {
                        mon: if shift { t.mon.mul(m) } else { t.mon },
                        pos: t.pos,
                        coeff: ring.field.mul(&t.coeff, c),
                    });
                }
                (Some(ta), Some(tb)) => {
                    let mb = if shift { tb.mon.mul(m) } else { tb.mon };
                    match ring.cmp_terms(ta.pos, &ta.mon, tb.pos, &mb) {
                        Ordering::Greater => out.push(ia.next().unwrap()),
                        Ordering::Less => {
                            let tb = ib.next().unwrap();
                            out.push(Term {
                                mon: mb,
                                pos: tb.pos,
                                coeff: ring.field.mul(&tb.coeff, c),
                            });
                        }
                        Ordering::Equal => {
                            let mut ta = ia.next().unwrap();
                            let tb = ib.next().unwrap();
                            let prod = ring.field.mul(&tb.coeff, c);
                            ta.coeff = ring.field.add(&ta.coeff, &prod);
                            if !ring.field.is_zero(&ta.coeff) {
                                out.push(ta);
                            }
                        }
                    }
                }
            }
        }
        self.terms = out;
    }

    pub fn add(&self, ring: &PolyRing<F>, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(ring, other, &ring.field.one());
        out
    }

    pub fn sub(&self, ring: &PolyRing<F>, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(ring, other, &ring.field.neg(&ring.field.one()));
        out
    }

    /// Make the leading coefficient one.
    pub fn make_monic(&mut self, ring: &PolyRing<F>) {
        if let Some(t) = self.terms.first() {
            if !ring.field.is_one(&t.coeff) {
                let inv = ring.field.inv(&t.coeff);
                for t in &mut self.terms {
                    t.coeff = ring.field.mul(&t.coeff, &inv);
                }
            }
        }
    }

    /// Reindex positions through `map[old] = Some(new)`; terms mapped to
    /// `None` are dropped.
    pub fn reindex(&self, ring: &PolyRing<F>, map: &[Option<usize>]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                map[t.pos as usize].map(|p| Term {
                    mon: t.mon,
                    pos: p as u32,
                    coeff: t.coeff.clone(),
                })
            })
            .collect();
        Self::from_terms(ring, terms)
    }

    /// Shift all positions by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon,
                    pos: t.pos + offset as u32,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Keep only positions `< n`.
    pub fn truncated_positions(&self, n: usize) -> Self {
        ModuleElement {
            terms: self
                .terms
                .iter()
                .filter(|t| (t.pos as usize) < n)
                .cloned()
                .collect(),
        }
    }

    /// Apply the linear map whose `j`-th column is `columns[j]` to this
    /// element, viewed as a coefficient vector.
    pub fn apply(&self, ring: &PolyRing<F>, columns: &[ModuleElement<F>]) -> Self {
        let mut acc = Self::zero();
        for t in &self.terms {
            acc.add_multiple(ring, &columns[t.pos as usize], &t.mon, &t.coeff);
        }
        acc
    }

    /// Substitute zero for the given variables.
    pub fn kill_vars(&self, vars: &[usize]) -> Self {
        ModuleElement {
            terms: self
                .terms
                .iter()
                .filter(|t| vars.iter().all(|&v| t.mon.exponent(v) == 0))
                .cloned()
                .collect(),
        }
    }

    /// Move to another ring with variables renamed through `map[old] = new`.
    pub fn remap_vars(&self, target: &PolyRing<F>, map: &[usize]) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.len());
        for t in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (old, &new) in map.iter().enumerate() {
                e[new] += t.mon.exponent(old);
            }
            terms.push(Term {
                mon: Monomial::from_exponents(&e)?,
                pos: t.pos,
                coeff: t.coeff.clone(),
            });
        }
        Ok(Self::from_terms(target, terms))
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.max_position() {
            Some(p) if p >= rank => Err(Error::AmbientMismatch(format!(
                "element uses position {p} in a free module of rank {rank}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn format(&self, ring: &PolyRing<F>, rank: usize) -> String {
        let coords: Vec<String> = self
            .coordinates(rank)
            .iter()
            .map(|p| p.format(ring))
            .collect();
        format!("[{}]", coords.join(", "))
    }
}

impl<F: Field> From<Polynomial<F>> for ModuleElement<F> {
    fn from(p: Polynomial<F>) -> Self {
        ModuleElement {
            terms: p
                .terms
                .into_iter()
                .map(|(mon, coeff)| Term { mon, pos: 0, coeff })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, Grading::weighted(&[1, 2]).unwrap())
    }

    #[test]
    fn polynomial_arithmetic() {
        let r = ring();
        let u = r.variable(0);
        let v = r.variable(1);
        let f = u.mul(&r, &u).sub(&r, &v); // u^2 - v
        assert!(f.is_homogeneous(&r.grading));
        assert_eq!(f.format(&r), "x0^2 - x1");
        let g = f.mul(&r, &u);
        assert_eq!(g.format(&r), "x0^3 - x0*x1");
        assert!(f.sub(&r, &f).is_zero());
        assert!(!u.add(&r, &v).is_homogeneous(&r.grading));
    }

    #[test]
    fn module_element_merge() {
        let r = ring();
        let f = r.field.one();
        let a = ModuleElement::from_terms(
            &r,
            vec![
                Term { mon: Monomial::var(0), pos: 1, coeff: f.clone() },
                Term { mon: Monomial::var(1), pos: 0, coeff: f.clone() },
            ],
        );
        // position 0 dominates
        assert_eq!(a.lead().unwrap().pos, 0);
        let b = a.scale(&r, &r.field.from_i64(-1));
        assert!(a.add(&r, &b).is_zero());
        let twists = vec![Degree::scalar(0), Degree::scalar(1)];
        assert!(a.is_homogeneous(&r.grading, &twists));
        assert_eq!(a.degree(&r.grading, &twists), Some(Degree::scalar(2)));
    }
}
