//! Runs a parsed session against the core library.

use std::any::Any;
use std::collections::HashMap;
use std::fmt::Write as _;

use gsw_core::bgg::bgg_r;
use gsw_core::regularity::{
    local_cohomology, regularity, verify_symonds, verify_theorem_a, verify_theorem_b, verify_truncation_support,
};
use gsw_core::resolution::{free_resolution, minimal_free_resolution, minimize, ChainComplex};
use gsw_core::toric::{
    check_containment, class_group_grading, lemma_technical_check, multigraded_truncate, CoxData, Fan,
};
use gsw_core::{
    Degree, Error, Field, FieldKind, FreeModule, Grading, ModuleElement, Monomial, PolyRing, Polynomial,
    PresentedModule, PrimeField, Rationals,
};
use serde_json::{json, Value};

use crate::parse::{
    Command, FanDecl, GradingSpec, IdealDecl, ModuleDecl, ModuleExpr, Poly, Pos, RegularityKind, RingDecl, Session,
    Statement, Theorem,
};

#[derive(Debug)]
pub struct ComputeError {
    pub pos: Pos,
    pub error: Error,
}

impl std::fmt::Display for ComputeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.pos, self.error)
    }
}

impl std::error::Error for ComputeError {}

/// Output of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    pub json: Value,
    /// A checked statement failed.
    pub violation: bool,
}

impl CommandOutput {
    fn plain(text: String, json: Value) -> Self {
        CommandOutput {
            text,
            json,
            violation: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Transcript {
    pub outputs: Vec<CommandOutput>,
}

impl Transcript {
    pub fn text(&self) -> String {
        self.outputs.iter().map(|o| o.text.as_str()).collect()
    }

    pub fn json(&self) -> Value {
        Value::Array(self.outputs.iter().map(|o| o.json.clone()).collect())
    }

    pub fn violation(&self) -> bool {
        self.outputs.iter().any(|o| o.violation)
    }
}

#[derive(Default)]
struct Env {
    rings: HashMap<String, RingDecl>,
    fans: HashMap<String, FanDecl>,
    ideals: HashMap<String, IdealDecl>,
    modules: HashMap<String, ModuleDecl>,
    /// Built modules, keyed by name; values are `PresentedModule<F>`.
    cache: HashMap<String, Box<dyn Any>>,
}

pub fn execute(session: &Session) -> Result<Transcript, ComputeError> {
    let mut env = Env::default();
    let mut out = Transcript::default();
    for (pos, st) in &session.statements {
        let at = |error| ComputeError { pos: *pos, error };
        match st {
            Statement::Ring(r) => {
                env.rings.insert(r.name.clone(), r.clone());
            }
            Statement::Fan(f) => {
                env.fans.insert(f.name.clone(), f.clone());
            }
            Statement::Ideal(i) => {
                env.ideals.insert(i.name.clone(), i.clone());
            }
            Statement::Module(m) => {
                env.modules.insert(m.name.clone(), m.clone());
            }
            Statement::Use(_) => {}
            Statement::Command(c) => out.outputs.push(env.command(c).map_err(at)?),
        }
    }
    Ok(out)
}

fn field_of(env: &Env, ring: &str) -> FieldKind {
    env.rings[ring].field
}

fn fmt_degree(d: &[i64]) -> String {
    if d.len() == 1 {
        d[0].to_string()
    } else {
        let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

fn fmt_opt(d: Option<i64>) -> String {
    d.map_or_else(|| "-inf".to_string(), |d| d.to_string())
}

impl Env {
    fn ring_of(&self, name: &str) -> &str {
        if let Some(m) = self.modules.get(name) {
            &m.ring
        } else {
            &self.ideals[name].ring
        }
    }

    fn fan(&self, name: &str) -> Result<Fan, Error> {
        let f = &self.fans[name];
        Fan::new(f.rays.clone(), f.cones.clone())
    }

    fn grading(&self, ring: &str) -> Result<Grading, Error> {
        match &self.rings[ring].grading {
            GradingSpec::Weights(w) => Grading::weighted(w),
            GradingSpec::Degrees(d) => Grading::multigraded(d),
            GradingSpec::Fan(f) => class_group_grading(&self.fan(f)?),
        }
    }

    fn poly_ring<F: Field>(&self, ring: &str, field: F) -> Result<PolyRing<F>, Error> {
        Ok(PolyRing::new(field, self.grading(ring)?))
    }

    fn command(&mut self, c: &Command) -> Result<CommandOutput, Error> {
        let ring = match c {
            Command::Betti { module }
            | Command::Resolve { module, .. }
            | Command::Regularity { module, .. }
            | Command::Cohomology { module }
            | Command::Truncate { module, .. }
            | Command::Verify { module, .. }
            | Command::ToricCheck { module, .. }
            | Command::BggCheck { module, .. } => Some(self.ring_of(module).to_string()),
            Command::Dump { name, presentation: true } => Some(self.ring_of(name).to_string()),
            Command::ToricPolytope { .. } | Command::Dump { .. } => None,
        };
        match ring.map(|r| field_of(self, &r)) {
            None => self.untyped(c),
            Some(FieldKind::Rationals) => self.typed(c, Rationals),
            Some(FieldKind::Prime(p)) => self.typed(c, PrimeField::new(p)?),
        }
    }

    fn untyped(&self, c: &Command) -> Result<CommandOutput, Error> {
        match c {
            Command::ToricPolytope { fan, i, plot } => {
                let cox = CoxData::new(self.fan(fan)?)?;
                let poly = cox.betti_polytope(*i);
                let mut text = String::new();
                for f in &poly.facets {
                    writeln!(
                        text,
                        "collection {:?}: {} . a < {}",
                        f.collection,
                        fmt_degree(&f.normal),
                        f.bound
                    )
                    .unwrap();
                }
                if *plot {
                    if cox.degree_matrix.len() == 2 {
                        let r = poly.facets.iter().map(|f| f.bound.abs()).max().unwrap_or(0) + 2;
                        text.push_str(&poly.plot(&[], (-r, r), (-r, r)));
                    } else {
                        text.push_str("(plot needs a rank 2 class group)\n");
                    }
                }
                Ok(CommandOutput::plain(text, json!({"command": "toric polytope", "polytope": poly})))
            }
            Command::Dump { name, .. } => {
                let text = self.dump_decl(name);
                Ok(CommandOutput::plain(
                    format!("{text}\n"),
                    json!({"command": "dump", "name": name, "text": text}),
                ))
            }
            _ => unreachable!("typed command"),
        }
    }

    fn dump_decl(&self, name: &str) -> String {
        if let Some(r) = self.rings.get(name) {
            dump_ring(r)
        } else if let Some(f) = self.fans.get(name) {
            dump_fan(f)
        } else if let Some(i) = self.ideals.get(name) {
            dump_ideal(i)
        } else {
            dump_module(&self.modules[name])
        }
    }

    fn module<F: Field>(&mut self, name: &str, ring: &PolyRing<F>) -> Result<PresentedModule<F>, Error> {
        if let Some(m) = self.cache.get(name).and_then(|b| b.downcast_ref::<PresentedModule<F>>()) {
            return Ok(m.clone());
        }
        let m = if let Some(ideal) = self.ideals.get(name) {
            PresentedModule::ideal(ring, &ideal_polys(ring, &ideal.gens)?)?
        } else {
            let decl = self.modules[name].clone();
            self.build(&decl.expr, ring)?
        };
        self.cache.insert(name.to_string(), Box::new(m.clone()));
        Ok(m)
    }

    fn build<F: Field>(&mut self, e: &ModuleExpr, ring: &PolyRing<F>) -> Result<PresentedModule<F>, Error> {
        let g = &ring.grading;
        match e {
            ModuleExpr::Coker { rows, twists } => {
                let width = rows.first().map_or(0, |r| r.len());
                let mut rels = Vec::with_capacity(width);
                for col in 0..width {
                    let coords = rows
                        .iter()
                        .map(|r| to_poly(ring, &r[col]))
                        .collect::<Result<Vec<_>, _>>()?;
                    rels.push(ModuleElement::from_polys(ring, &coords));
                }
                let twists = twists.iter().map(|t| Degree::from_slice(t)).collect();
                PresentedModule::new(ring, FreeModule::new(twists), rels)
            }
            ModuleExpr::Quotient(i) => PresentedModule::quotient_ring(ring, &ideal_polys(ring, &self.ideals[i].gens)?),
            ModuleExpr::Ideal(i) => self.module(i, ring),
            ModuleExpr::Free(d) => PresentedModule::free(ring, d.iter().map(|t| Degree::from_slice(t)).collect()),
            ModuleExpr::Residue => PresentedModule::residue_field(ring),
            ModuleExpr::Sum(parts) => {
                let mut acc = PresentedModule::free(ring, Vec::new())?;
                for p in parts {
                    acc = acc.direct_sum(&self.module(p, ring)?)?;
                }
                Ok(acc)
            }
            ModuleExpr::Twist(m, d) => Ok(self.module(m, ring)?.twist(&Degree::from_slice(d))),
            ModuleExpr::Truncate(m, d) => {
                let m = self.module(m, ring)?;
                if g.is_z_graded() {
                    m.truncate_twist(d[0])
                } else {
                    Ok(multigraded_truncate(&m, &Degree::from_slice(d))?.module)
                }
            }
        }
    }

    fn typed<F: Field>(&mut self, c: &Command, field: F) -> Result<CommandOutput, Error> {
        let name = match c {
            Command::Betti { module }
            | Command::Resolve { module, .. }
            | Command::Regularity { module, .. }
            | Command::Cohomology { module }
            | Command::Truncate { module, .. }
            | Command::Verify { module, .. }
            | Command::ToricCheck { module, .. }
            | Command::BggCheck { module, .. } => module,
            Command::Dump { name, .. } => name,
            Command::ToricPolytope { .. } => unreachable!(),
        };
        let ring_name = self.ring_of(name).to_string();
        let ring = self.poly_ring(&ring_name, field)?;
        let m = self.module(name, &ring)?;
        let kind = ring.field.kind();
        match c {
            Command::Betti { .. } => {
                let b = minimal_free_resolution(&m)?.betti_table();
                let json: Value = serde_json::from_str(&b.to_json()).expect("valid json");
                Ok(CommandOutput::plain(b.to_string(), json!({"command": "betti", "module": name, "table": json})))
            }
            Command::Resolve { length, .. } => {
                let res = match length {
                    Some(l) => minimize(&free_resolution(&m, Some(*l))?),
                    None => minimal_free_resolution(&m)?,
                };
                Ok(resolution_output(name, &res))
            }
            Command::Regularity { kind: which, .. } => {
                let r = regularity(&m)?;
                let mut text = String::new();
                if matches!(which, RegularityKind::Koszul | RegularityKind::Both) {
                    writeln!(
                        text,
                        "koszul regularity {} (H^{} in degree {})",
                        r.koszul.value, r.koszul.index, r.koszul.degree
                    )
                    .unwrap();
                }
                if matches!(which, RegularityKind::Weighted | RegularityKind::Both) {
                    writeln!(
                        text,
                        "weighted regularity {} (H^{} in degree {})",
                        r.weighted.value, r.weighted.index, r.weighted.degree
                    )
                    .unwrap();
                }
                let json = match which {
                    RegularityKind::Koszul => json!({"koszul": r.koszul}),
                    RegularityKind::Weighted => json!({"weighted": r.weighted}),
                    RegularityKind::Both => json!({"koszul": r.koszul, "weighted": r.weighted}),
                };
                Ok(CommandOutput::plain(
                    text,
                    json!({"command": "regularity", "module": name, "field": kind, "regularity": json}),
                ))
            }
            Command::Cohomology { .. } => {
                let s = local_cohomology(&m)?;
                let mut text = String::new();
                for (i, d) in s.max_degree.iter().enumerate() {
                    match d {
                        Some(d) => writeln!(text, "H^{i}: top degree {d}").unwrap(),
                        None => writeln!(text, "H^{i}: 0").unwrap(),
                    }
                }
                Ok(CommandOutput::plain(
                    text,
                    json!({"command": "cohomology", "module": name, "max_degree": s.max_degree}),
                ))
            }
            Command::Truncate { at, twist, .. } => {
                let a = Degree::from_slice(at);
                let (t, note) = if ring.grading.is_z_graded() {
                    let t = if *twist { m.truncate_twist(at[0])? } else { m.truncate(at[0])? };
                    (t, None)
                } else {
                    let t = multigraded_truncate(&m, &a)?;
                    let module = if *twist { t.module } else { t.module.twist(&a.scale(-1)) };
                    (module, Some(t.window))
                };
                let b = minimal_free_resolution(&t)?.betti_table();
                let mut text = format!("{}\n", dump_presentation(&ring, &t, "T"));
                if let Some(w) = &note {
                    writeln!(text, "generator window {} (stabilization heuristic)", fmt_degree(w)).unwrap();
                }
                text.push_str(&b.to_string());
                let betti: Value = serde_json::from_str(&b.to_json()).expect("valid json");
                Ok(CommandOutput::plain(
                    text,
                    json!({"command": "truncate", "module": name, "at": at, "twist": twist,
                           "presentation": dump_presentation(&ring, &t, "T"), "window": note, "table": betti}),
                ))
            }
            Command::Verify { theorem, .. } => verify(name, &m, *theorem),
            Command::ToricCheck {
                fan, assume_hypothesis, ..
            } => {
                let cox = CoxData::new(self.fan(fan)?)?;
                let report = check_containment(&m, &cox, *assume_hypothesis)?;
                let mut text = String::new();
                writeln!(text, "torsion-free: {}", report.torsion_free).unwrap();
                writeln!(text, "hypothesis asserted: {}", report.hypothesis_asserted).unwrap();
                for (i, a, mult) in &report.points {
                    let ok = report.violations.iter().all(|v| v.i != *i || &v.degree != a);
                    writeln!(text, "F{i}: {} x{mult} {}", fmt_degree(a), if ok { "inside" } else { "OUTSIDE" }).unwrap();
                }
                for v in &report.hypothesis_failures {
                    writeln!(
                        text,
                        "hypothesis fails: Tor_{} over collection {:?} in degree {} has deg {} >= {}",
                        v.i,
                        v.collection,
                        fmt_degree(&v.degree),
                        v.value,
                        v.bound
                    )
                    .unwrap();
                }
                let mut lemmas = Vec::new();
                let mut lemma_ok = true;
                for col in &cox.collections {
                    let l = lemma_technical_check(&m, &cox, &col.members)?;
                    writeln!(text, "bound for collection {:?}: {}", col.members, if l.holds() { "holds" } else { "FAILS" })
                        .unwrap();
                    lemma_ok &= l.holds();
                    lemmas.push(l);
                }
                let counterexample = !report.holds()
                    && report.torsion_free
                    && report.hypothesis_asserted
                    && report.hypothesis_failures.is_empty();
                let verdict = if report.holds() {
                    "containment holds"
                } else if counterexample {
                    "containment FAILS"
                } else {
                    "containment fails, hypotheses not met"
                };
                writeln!(text, "{verdict}").unwrap();
                Ok(CommandOutput {
                    text,
                    json: json!({"command": "toric check", "module": name, "report": report, "lemmas": lemmas}),
                    violation: counterexample || !lemma_ok,
                })
            }
            Command::BggCheck { lo, hi, .. } => {
                let r = bgg_r(&m, *lo, *hi)?;
                let w = r.margin();
                if hi - lo < 2 * w {
                    return Err(Error::WindowTooNarrow {
                        degree: lo + (hi - lo) / 2,
                        margin: w,
                        lo: *lo,
                        hi: *hi,
                    });
                }
                let b = minimal_free_resolution(&m)?.betti_table();
                let n = ring.nvars();
                let mut text = String::new();
                let mut mismatches = Vec::new();
                let mut checked = 0;
                for a in lo + w..=hi - w {
                    for j in 0..=n {
                        let h = r.homology(a, j as i64)?;
                        let beta = b.get_z(j, a);
                        checked += 1;
                        if h != beta {
                            mismatches.push(json!({"j": j, "degree": a, "homology": h, "betti": beta}));
                            writeln!(text, "mismatch at (j, a) = ({j}, {a}): homology {h}, betti {beta}").unwrap();
                        }
                    }
                }
                writeln!(
                    text,
                    "square zero: {}; {checked} bidegrees in [{}, {}], {} mismatches",
                    r.is_square_zero(),
                    lo + w,
                    hi - w,
                    mismatches.len()
                )
                .unwrap();
                Ok(CommandOutput {
                    text,
                    violation: !mismatches.is_empty() || !r.is_square_zero(),
                    json: json!({"command": "bgg check", "module": name, "window": [lo, hi],
                                 "square_zero": r.is_square_zero(), "checked": checked, "mismatches": mismatches}),
                })
            }
            Command::Dump { .. } => {
                let text = dump_presentation(&ring, &m, name);
                Ok(CommandOutput::plain(
                    format!("{text}\n"),
                    json!({"command": "dump", "name": name, "text": text}),
                ))
            }
            Command::ToricPolytope { .. } => unreachable!(),
        }
    }
}

fn verify<F: Field>(name: &str, m: &PresentedModule<F>, theorem: Theorem) -> Result<CommandOutput, Error> {
    let mut text = String::new();
    let (holds, report) = match theorem {
        Theorem::A => {
            let r = verify_theorem_a(m)?;
            writeln!(text, "koszul regularity {}, depth {}", r.regularity, r.depth).unwrap();
            for row in &r.rows {
                writeln!(
                    text,
                    "F{}: max degree {}, bound {}",
                    row.i,
                    fmt_opt(row.max_realized),
                    row.max_allowed()
                )
                .unwrap();
            }
            (r.holds(), serde_json::to_value(&r))
        }
        Theorem::B => {
            let r = verify_theorem_b(m)?;
            writeln!(
                text,
                "koszul regularity {}, betti regularity {}, depth {}, dimension {}",
                r.koszul_regularity, r.betti_regularity, r.depth, r.krull_dimension
            )
            .unwrap();
            for row in &r.rows {
                writeln!(text, "H^{}: top degree {}, vanishes from {}", row.i, fmt_opt(row.max_degree), row.threshold)
                    .unwrap();
            }
            (r.holds(), serde_json::to_value(&r))
        }
        Theorem::Symonds => {
            let r = verify_symonds(m)?;
            writeln!(
                text,
                "sigma {}, weighted regularity {}, from betti rows {}",
                r.sigma, r.weighted_regularity, r.betti_rows
            )
            .unwrap();
            (r.holds(), serde_json::to_value(&r))
        }
        Theorem::Cor17 => {
            let r = verify_truncation_support(m)?;
            for (label, s) in [("least 0-regular", &r.least), ("least 0-regular of positive depth", &r.positive_depth)] {
                writeln!(text, "{label} truncation at r = {}: {} entries outside the bounds", s.r, s.violations.len())
                    .unwrap();
            }
            (r.holds(), serde_json::to_value(&r))
        }
    };
    writeln!(text, "{}", if holds { "PASS" } else { "FAIL" }).unwrap();
    Ok(CommandOutput {
        text,
        violation: !holds,
        json: json!({"command": "verify", "module": name, "theorem": theorem, "holds": holds,
                     "report": report.expect("serializable")}),
    })
}

fn resolution_output<F: Field>(name: &str, res: &ChainComplex<F>) -> CommandOutput {
    let ring = res.ring();
    let mut text = String::new();
    let mut modules = Vec::new();
    for (i, f) in res.modules().iter().enumerate() {
        let degs: Vec<String> = f.twists.iter().map(|d| fmt_degree(d.as_slice())).collect();
        writeln!(text, "F{i}: {}", degs.join(" ")).unwrap();
        modules.push(f.twists.iter().map(|d| d.as_slice().to_vec()).collect::<Vec<_>>());
    }
    let mut maps = Vec::new();
    for (i, d) in res.differentials().iter().enumerate() {
        let rows: Vec<Vec<String>> = d
            .rows()
            .iter()
            .map(|r| r.iter().map(|p| p.format(ring)).collect())
            .collect();
        writeln!(text, "d{}:", i + 1).unwrap();
        for r in &rows {
            writeln!(text, "  [{}]", r.join(", ")).unwrap();
        }
        maps.push(rows);
    }
    CommandOutput::plain(
        text,
        json!({"command": "resolve", "module": name, "field": ring.field.kind(),
               "degrees": modules, "differentials": maps}),
    )
}

fn to_poly<F: Field>(ring: &PolyRing<F>, p: &Poly) -> Result<Polynomial<F>, Error> {
    let g = &ring.grading;
    let mut terms = Vec::with_capacity(p.0.len());
    for (e, c) in &p.0 {
        let mut sorted = vec![0u32; e.len()];
        for (i, &x) in e.iter().enumerate() {
            sorted[g.sorted_index(i)] = x;
        }
        let c = ring.field.from_ratio(c.numer(), c.denom())?;
        if !ring.field.is_zero(&c) {
            terms.push((Monomial::from_exponents(&sorted)?, c));
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn ideal_polys<F: Field>(ring: &PolyRing<F>, gens: &[Poly]) -> Result<Vec<Polynomial<F>>, Error> {
    gens.iter().map(|p| to_poly(ring, p)).collect()
}

fn int_row(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn int_matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| int_row(r)).collect();
    format!("[{}]", rows.join(","))
}

fn dump_field(f: FieldKind) -> String {
    match f {
        FieldKind::Rationals => String::new(),
        p => format!(" field {p}"),
    }
}

/// Declarations of a session in canonical form, one per line.
pub fn dump_session(s: &Session) -> String {
    let mut out = String::new();
    for st in s.declarations() {
        let line = match st {
            Statement::Ring(r) => dump_ring(r),
            Statement::Fan(f) => dump_fan(f),
            Statement::Ideal(i) => dump_ideal(i),
            Statement::Module(m) => dump_module(m),
            Statement::Use(r) => format!("use {r}"),
            Statement::Command(_) => unreachable!(),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn dump_ring(r: &RingDecl) -> String {
    let g = match &r.grading {
        GradingSpec::Weights(w) => {
            let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            format!("weights {}", ws.join(" "))
        }
        GradingSpec::Degrees(d) => format!("degrees {}", int_matrix(d)),
        GradingSpec::Fan(f) => format!("fan {f}"),
    };
    format!("ring {} {g}{}", r.name, dump_field(r.field))
}

pub fn dump_fan(f: &FanDecl) -> String {
    let cones: Vec<Vec<i64>> = f.cones.iter().map(|c| c.iter().map(|&i| i as i64).collect()).collect();
    format!("fan {} rays {} cones {}", f.name, int_matrix(&f.rays), int_matrix(&cones))
}

pub fn dump_ideal(i: &IdealDecl) -> String {
    let gens: Vec<String> = i.gens.iter().map(|p| p.to_string()).collect();
    format!("ideal {} = {}", i.name, gens.join(", "))
}

fn dump_degrees(d: &[Vec<i64>]) -> String {
    d.iter().map(|x| format!(" {}", fmt_degree(x))).collect()
}

pub fn dump_module(m: &ModuleDecl) -> String {
    let e = match &m.expr {
        ModuleExpr::Coker { rows, twists } => {
            let rows: Vec<String> = rows
                .iter()
                .map(|r| {
                    let r: Vec<String> = r.iter().map(|p| p.to_string()).collect();
                    format!("[{}]", r.join(", "))
                })
                .collect();
            format!("coker [{}] twists{}", rows.join(", "), dump_degrees(twists))
        }
        ModuleExpr::Quotient(i) => format!("quotient {i}"),
        ModuleExpr::Ideal(i) => format!("ideal {i}"),
        ModuleExpr::Free(d) => format!("free{}", dump_degrees(d)),
        ModuleExpr::Residue => "residue".to_string(),
        ModuleExpr::Sum(p) => format!("sum {}", p.join(" ")),
        ModuleExpr::Twist(n, d) => format!("twist {n} {}", fmt_degree(d)),
        ModuleExpr::Truncate(n, d) => format!("truncate {n} at {}", fmt_degree(d)),
    };
    format!("module {} = {e}", m.name)
}

/// The presentation of `m` as a `coker` declaration.
pub fn dump_presentation<F: Field>(ring: &PolyRing<F>, m: &PresentedModule<F>, name: &str) -> String {
    let rows: Vec<String> = m
        .presentation()
        .rows()
        .iter()
        .map(|r| {
            let r: Vec<String> = r.iter().map(|p| p.format(ring)).collect();
            format!("[{}]", r.join(", "))
        })
        .collect();
    let twists: Vec<Vec<i64>> = m.twists().iter().map(|d| d.as_slice().to_vec()).collect();
    format!("module {name} = coker [{}] twists{}", rows.join(", "), dump_degrees(&twists))
}
