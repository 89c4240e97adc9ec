//! Executes a parsed session. Sequences are emitted as CSV (or JSON with
//! `--json`), everything else as one JSON object per line.

use std::collections::HashMap;
use std::io::Write;

use hkforge_core::lengths::{finite_colength_length, gamma_length};
use hkforge_core::sequences::{
    self, ambient_dimension, boundedness_check, SequenceReport, CSV_HEADER,
};
use hkforge_core::{
    verify_construction, verify_katzman_with_config, Error as CoreError, Ideal, MonomialOrder,
    Polynomial, Ring,
};
use serde_json::{json, Value};

use crate::session::{
    ColonArg, Command, IdealItem, IdealRef, ParseError, SeqKind, Session, Statement,
};

/// Default number of Frobenius steps for `seq`.
pub const DEFAULT_E_MAX: u32 = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Print sequences as JSON instead of CSV.
    pub json: bool,
    /// Allow Katzman checks with `e ≥ 2`.
    pub slow: bool,
    /// Scaling exponent for sequences that do not set `d=`.
    pub d: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    /// Some `verify` command reported a failed claim.
    pub verification_failed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.verification_failed {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("line {line}: {command}: {source}")]
    Engine {
        line: usize,
        command: String,
        #[source]
        source: CoreError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Engine { .. } | CliError::Io(_) => 1,
        }
    }
}

/// Parses and runs `text`, writing results to `out`.
pub fn run_text(
    text: &str,
    options: &RunOptions,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let session = crate::session::parse_session(text)?;
    run(&session, options, out)
}

pub fn run(
    session: &Session,
    options: &RunOptions,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let mut state = State {
        ring: session.ring.clone(),
        relations: Vec::new(),
        ideals: HashMap::new(),
        options,
    };
    let mut outcome = Outcome::default();
    for (stmt, &line) in session.statements.iter().zip(&session.lines) {
        let wrap = |source: CoreError| CliError::Engine {
            line,
            command: stmt.to_string().trim_end_matches(';').to_string(),
            source,
        };
        match stmt {
            Statement::Quotient(rels) => state.relations = rels.clone(),
            Statement::Poly { .. } => {}
            Statement::Ideal { name, items } => {
                let ideal = state.build(items).map_err(wrap)?;
                state.ideals.insert(name.clone(), ideal);
            }
            Statement::Command(cmd) => {
                let text = state.execute(cmd, &mut outcome).map_err(wrap)?;
                out.write_all(text.as_bytes())?;
            }
        }
    }
    out.flush()?;
    Ok(outcome)
}

struct State<'a> {
    ring: Option<Ring>,
    relations: Vec<Polynomial>,
    ideals: HashMap<String, Ideal>,
    options: &'a RunOptions,
}

fn line(v: Value) -> String {
    let mut s = serde_json::to_string(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn basis(ideal: &Ideal, order: &MonomialOrder) -> Result<Vec<String>, CoreError> {
    let gb = ideal.groebner_basis_in(order)?;
    Ok(gb.elements().iter().map(|g| g.to_string()).collect())
}

impl State<'_> {
    fn ring(&self) -> &Ring {
        self.ring
            .as_ref()
            .expect("parser requires a ring before commands")
    }

    fn lift(&self, ideal: Ideal) -> Result<Ideal, CoreError> {
        ideal.with_relations(self.relations.iter().cloned())
    }

    fn resolve(&self, r: &IdealRef) -> Result<Ideal, CoreError> {
        match r {
            IdealRef::Maximal => self.lift(Ideal::maximal(self.ring())),
            IdealRef::Named(n) => Ok(self.ideals[n].clone()),
        }
    }

    fn generators(&self, items: &[IdealItem]) -> Result<Vec<Polynomial>, CoreError> {
        let mut gens = Vec::new();
        for item in items {
            match item {
                IdealItem::Poly(p) => gens.push(p.clone()),
                IdealItem::Ideal { ideal, power } => {
                    gens.extend(self.resolve(ideal)?.power(*power).gens().iter().cloned())
                }
                IdealItem::Power { items, power } => {
                    let base = Ideal::new(self.ring(), self.generators(items)?)?;
                    gens.extend(base.power(*power).gens().iter().cloned());
                }
            }
        }
        Ok(gens)
    }

    fn build(&self, items: &[IdealItem]) -> Result<Ideal, CoreError> {
        self.lift(Ideal::new(self.ring(), self.generators(items)?)?)
    }

    fn bind(&mut self, bind: &Option<String>, ideal: &Ideal) {
        if let Some(name) = bind {
            self.ideals.insert(name.clone(), ideal.clone());
        }
    }

    fn ideal_result(
        &mut self,
        cmd: &str,
        ideal: Ideal,
        bind: &Option<String>,
        extra: Value,
    ) -> Result<String, CoreError> {
        let order = self.ring().order().clone();
        let mut v = json!({
            "command": cmd,
            "order": order.to_string(),
            "basis": basis(&ideal, &order)?,
        });
        if let (Value::Object(dst), Value::Object(src)) = (&mut v, extra) {
            dst.extend(src);
        }
        if let Some(name) = bind {
            v["bound"] = json!(name);
        }
        self.bind(bind, &ideal);
        Ok(line(v))
    }

    fn sequence_output(&self, reports: &[SequenceReport], extra: Value) -> String {
        if self.options.json {
            let mut v =
                json!({ "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>() });
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, extra) {
                dst.extend(src);
            }
            line(v)
        } else {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in reports {
                s.push_str(&r.to_csv(false));
            }
            s
        }
    }

    fn execute(&mut self, cmd: &Command, outcome: &mut Outcome) -> Result<String, CoreError> {
        match cmd {
            Command::Gb { ideal, order } => {
                let order = order.clone().unwrap_or_else(|| self.ring().order().clone());
                let i = self.resolve(ideal)?;
                Ok(line(json!({
                    "command": "gb",
                    "ideal": ideal.to_string(),
                    "order": order.to_string(),
                    "basis": basis(&i, &order)?,
                })))
            }
            Command::Nf { poly, ideal } => {
                let i = self.resolve(ideal)?;
                let gb = i.groebner_basis_in(self.ring().order())?;
                Ok(line(json!({
                    "command": "nf",
                    "ideal": ideal.to_string(),
                    "normal_form": gb.reduce(poly).to_string(),
                })))
            }
            Command::Member { poly, ideal } => {
                let i = self.resolve(ideal)?;
                Ok(line(json!({
                    "command": "member",
                    "ideal": ideal.to_string(),
                    "member": i.contains(poly),
                })))
            }
            Command::Colon { ideal, by, bind } => {
                let i = self.resolve(ideal)?;
                let result = match by {
                    ColonArg::Poly(p) => i.colon_element(p)?,
                    ColonArg::Ideal(r) => i.colon_ideal(&self.resolve(r)?)?,
                };
                self.ideal_result("colon", result, bind, json!({}))
            }
            Command::Saturate { ideal, by, bind } => {
                let i = self.resolve(ideal)?;
                let (result, steps) = match by {
                    ColonArg::Poly(p) => i.saturate_element(p)?,
                    ColonArg::Ideal(r) => i.saturate(&self.resolve(r)?)?,
                };
                self.ideal_result("saturate", result, bind, json!({ "steps": steps }))
            }
            Command::Intersect { a, b, bind } => {
                let result = self.resolve(a)?.intersect(&self.resolve(b)?)?;
                self.ideal_result("intersect", result, bind, json!({}))
            }
            Command::Bracket { ideal, e, bind } => {
                let result = self.resolve(ideal)?.bracket_power(*e)?;
                self.ideal_result("bracket", result, bind, json!({ "e": e }))
            }
            Command::Length { ideal } => {
                let len = finite_colength_length(&self.resolve(ideal)?);
                let mut v = serde_json::to_value(&len).expect("length serializes");
                v["command"] = json!("length");
                Ok(line(v))
            }
            Command::GammaLength { j, i } => {
                let len = gamma_length(&self.resolve(j)?, &self.resolve(i)?)?;
                let mut v = serde_json::to_value(&len).expect("length serializes");
                v["command"] = json!("gamma_length");
                Ok(line(v))
            }
            Command::Seq {
                kind,
                ideals,
                e_max,
                d,
            } => self.seq(*kind, ideals, *e_max, *d),
            Command::Sandwich { j, i, n } => {
                let rec = sequences::check_sandwich(&self.resolve(j)?, &self.resolve(i)?, *n)?;
                let mut v = serde_json::to_value(rec).expect("record serializes");
                v["command"] = json!("sandwich");
                v["holds"] = json!(rec.holds());
                Ok(line(v))
            }
            Command::VerifyConstruction { p, m } => {
                let report = verify_construction(*p, *m)?;
                outcome.verification_failed |= !report.fully_passed();
                Ok(line(report.to_json()))
            }
            Command::VerifyKatzman { p, e, slow } => {
                if *e >= 2 && !(*slow || self.options.slow) {
                    return Err(CoreError::Precondition(
                        "katzman checks with e ≥ 2 are slow; pass --slow or add 'slow'".into(),
                    ));
                }
                let report = verify_katzman_with_config(*p, *e, self.ring().config())?;
                outcome.verification_failed |= !report.fully_passed();
                Ok(line(report.to_json()))
            }
        }
    }

    fn seq(
        &self,
        kind: SeqKind,
        refs: &[IdealRef],
        e_max: Option<u32>,
        d: Option<u32>,
    ) -> Result<String, CoreError> {
        let ideals = refs
            .iter()
            .map(|r| self.resolve(r))
            .collect::<Result<Vec<_>, _>>()?;
        let e_max = e_max.unwrap_or(DEFAULT_E_MAX);
        let cap = self.ring().config().e_cap;
        if e_max > cap {
            return Err(CoreError::ExponentCap { e: e_max, cap });
        }
        let d = match d.or(self.options.d) {
            Some(d) => d,
            None => ambient_dimension(&ideals[0])?,
        };
        let mut reports = match kind {
            SeqKind::Hk => vec![sequences::hk_function(&ideals[0], e_max, d)?],
            SeqKind::Rjj => vec![sequences::rjj_sequence(&ideals[0], &ideals[1], e_max, d)?],
            SeqKind::Sjj => vec![sequences::sjj_sequence(&ideals[0], &ideals[1], e_max, d)?],
            SeqKind::Vjj => vec![sequences::vjj_sequence(&ideals[0], &ideals[1], e_max, d)?],
            SeqKind::Lf => {
                let lf = sequences::lf_sequences(&ideals[0], e_max)?;
                vec![lf.l_report(d), lf.f_report(d)]
            }
            SeqKind::Fdiff => {
                vec![sequences::f_difference_sequence(
                    &ideals[0], &ideals[1], e_max, d,
                )?]
            }
        };
        let names: Vec<String> = refs.iter().map(|r| r.to_string()).collect();
        for r in &mut reports {
            r.metadata.insert("ring".into(), self.ring().to_string());
            r.metadata.insert("ideals".into(), names.join(" "));
            for (name, ideal) in names.iter().zip(&ideals) {
                r.metadata
                    .insert(format!("ideal:{name}"), ideal.to_string());
            }
        }
        let extra = match kind {
            SeqKind::Rjj | SeqKind::Sjj | SeqKind::Vjj => {
                json!({ "boundedness": boundedness_check(&reports[0]) })
            }
            _ => json!({}),
        };
        Ok(self.sequence_output(&reports, extra))
    }
}
