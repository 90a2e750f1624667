use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;
use serde_json::{json, Value};

use semik::bmod::{self, BoolSemimodule};
use semik::bratteli::{self, eventual_rank, IsoOptions};
use semik::io;
use semik::kflow::{self, LimitElement};
use semik::lab::{self, LabOptions};
use semik::semiring::SemiMatrix;
use semik::trop::{self, Freeness, FreenessOptions};
use semik::Exec;

use crate::report::{digest, object, RunReport};
use crate::{BmodCmd, BratteliCmd, Command, LimitCmd, MatrixCmd, SemiringCmd, TropCmd};

#[derive(Debug)]
pub enum Failure {
    Read(PathBuf, std::io::Error),
    Input(PathBuf, semik::Error),
    Element(String, String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Read(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            Failure::Input(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Element(s, why) => write!(f, "bad element {s:?}: {why}"),
        }
    }
}

type Outcome = Result<RunReport, Failure>;

struct Input {
    path: PathBuf,
    text: String,
}

impl Input {
    fn read(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Read(path.to_owned(), e))?;
        Ok(Input { path: path.to_owned(), text })
    }

    fn parse<T>(&self, f: impl FnOnce(&str) -> semik::Result<T>) -> Result<T, Failure> {
        f(&self.text).map_err(|e| self.fail(e))
    }

    fn fail(&self, e: semik::Error) -> Failure {
        Failure::Input(self.path.clone(), e)
    }
}

fn report(subcommand: &str, inputs: &[&Input], extra: &[&str], params: Value, result: Value) -> RunReport {
    let mut bytes: Vec<&[u8]> = inputs.iter().map(|i| i.text.as_bytes()).collect();
    bytes.extend(extra.iter().map(|s| s.as_bytes()));
    RunReport {
        subcommand: subcommand.to_owned(),
        inputs_digest: digest(&bytes),
        params,
        result,
        elapsed: Duration::ZERO,
    }
}

pub fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Bmod(BmodCmd::Analyze { file }) => bmod_analyze(file),
        Command::Trop(TropCmd::Span { file, probe_depth, no_fallback }) => trop_span(file, *probe_depth, !no_fallback),
        Command::Bratteli(BratteliCmd::Sk0 { file }) => bratteli_sk0(file),
        Command::Bratteli(BratteliCmd::Iso { left, right, depth, entry_bound }) => {
            bratteli_iso(left, right, *depth, *entry_bound)
        }
        Command::Limit(LimitCmd::Eq { file, left, right, depth }) => limit_eq(file, left, right, depth.depth),
        Command::Limit(LimitCmd::Pos { file, element, depth }) => limit_pos(file, element, depth.depth),
        Command::Semiring(SemiringCmd::Classify { file, order_limit }) => semiring_classify(file, *order_limit),
        Command::Matrix(MatrixCmd::Check { file }) => matrix_check(file),
    }
}

fn element_json(m: &BoolSemimodule, x: usize) -> Value {
    match m.coords() {
        Some(c) => json!(c[x]),
        None => json!(x),
    }
}

fn bmod_analyze(file: &Path) -> Outcome {
    let input = Input::read(file)?;
    let m = input.parse(io::read_module)?;
    let atoms: Vec<Value> = m.atoms().into_iter().map(|a| element_json(&m, a)).collect();
    let irreducibles: Vec<Value> = m.join_irreducibles().into_iter().map(|a| element_json(&m, a)).collect();
    let failure = bmod::distributivity_failure(&m, Exec::Parallel);
    let result = object(vec![
        ("cardinality", json!(bmod::cardinality_class(&m))),
        ("projective", json!(failure.is_none())),
        ("distributivity_failure", json!(failure.map(|(x, y, z)| [x, y, z]))),
        ("free_rank", json!(bmod::is_free_bool(&m))),
        ("atoms", json!(atoms)),
        ("join_irreducibles", json!(irreducibles)),
        ("weak_dimension", json!(m.weak_dimension())),
    ]);
    Ok(report("bmod analyze", &[&input], &[], json!({}), result))
}

fn trop_span(file: &Path, probe_depth: u32, fallback: bool) -> Outcome {
    let input = Input::read(file)?;
    let sp = input.parse(io::read_span)?;
    let opts = FreenessOptions { probe_depth, analytic_fallback: fallback, ..Default::default() };
    let extremals = trop::extremal_generators(&sp);
    let freeness = trop::is_free_trop_with(&sp, &opts);
    let mut result = object(vec![
        ("extremals", io::span_to_json(&extremals)["generators"].clone()),
        ("extremal_indices", json!(trop::extremal_indices(&sp))),
        ("dim_w", json!(trop::weak_dimension(&sp))),
        ("freeness", json!(freeness.label())),
    ]);
    match &freeness {
        Freeness::Free { rank } => result["rank"] = json!(rank),
        Freeness::NotFree { witness } => result["witness"] = serde_json::to_value(witness).expect("plain data"),
        Freeness::Unknown => {}
    }
    let params = json!({ "probe_depth": probe_depth, "analytic_fallback": fallback });
    Ok(report("trop span", &[&input], &[], params, result))
}

fn bratteli_sk0(file: &Path) -> Outcome {
    let input = Input::read(file)?;
    let p = input.parse(io::read_diagram)?;
    let sys = bratteli::sk0_ultramatricial(&p);
    let stages: Vec<Value> = sys.groups().iter().map(|g| json!({ "rank": g.rank(), "unit": g.unit() })).collect();
    let mut result = object(vec![
        ("field", json!(p.field.to_string())),
        ("stages", json!(stages)),
        ("maps", json!(sys.maps().iter().map(|m| m.matrix()).collect::<Vec<_>>())),
        ("period", json!(sys.period())),
        ("tail_start", json!(sys.tail_start())),
        ("eventual_rank", json!(eventual_rank(&sys))),
    ]);
    if let Some(sn) = bratteli::supernatural_of(&sys) {
        result["supernatural"] = json!(sn.to_string());
    }
    Ok(report("bratteli sk0", &[&input], &[], json!({}), result))
}

fn bratteli_iso(left: &Path, right: &Path, depth: usize, entry_bound: Option<u64>) -> Outcome {
    let (a, b) = (Input::read(left)?, Input::read(right)?);
    let (pa, pb) = (a.parse(io::read_diagram)?, b.parse(io::read_diagram)?);
    let opts = IsoOptions { depth, entry_bound, ..Default::default() };
    let verdict = bratteli::iso_ultramatricial(&pa, &pb, &opts);
    let result = serde_json::to_value(&verdict).expect("plain data");
    Ok(report("bratteli iso", &[&a, &b], &[], json!({ "depth": depth, "entry_bound": entry_bound }), result))
}

fn parse_element(s: &str) -> Result<LimitElement, Failure> {
    let bad = |why: &str| Failure::Element(s.to_owned(), why.to_owned());
    let (stage, vector) = s.split_once(':').ok_or_else(|| bad("expected STAGE:v1,v2,..."))?;
    let stage = stage.trim().parse().map_err(|_| bad("stage must be a nonnegative integer"))?;
    let vector = vector
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| bad("entries must be integers")))
        .collect::<Result<_, _>>()?;
    Ok(LimitElement::new(stage, vector))
}

fn limit_eq(file: &Path, left: &str, right: &str, depth: usize) -> Outcome {
    let input = Input::read(file)?;
    let sys = input.parse(io::read_system)?;
    let (x, y) = (parse_element(left)?, parse_element(right)?);
    let v = kflow::limit_equal(&sys, &x, &y, depth).map_err(|e| input.fail(e))?;
    let params = json!({ "depth": depth, "left": left, "right": right });
    Ok(report("limit eq", &[&input], &[left, right], params, serde_json::to_value(v).expect("plain data")))
}

fn limit_pos(file: &Path, element: &str, depth: usize) -> Outcome {
    let input = Input::read(file)?;
    let sys = input.parse(io::read_system)?;
    let x = parse_element(element)?;
    let v = kflow::limit_positive(&sys, &x, depth).map_err(|e| input.fail(e))?;
    let params = json!({ "depth": depth, "element": element });
    Ok(report("limit pos", &[&input], &[element], params, serde_json::to_value(v).expect("plain data")))
}

fn semiring_classify(file: &Path, order_limit: usize) -> Outcome {
    let input = Input::read(file)?;
    let t = input.parse(io::read_table)?;
    let opts = LabOptions { order_limit, exec: Exec::Parallel };
    let r = lab::analyze_table(&t, &opts).map_err(|e| input.fail(e))?;
    let result = serde_json::to_value(&r).expect("plain data");
    Ok(report("semiring classify", &[&input], &[], json!({ "order_limit": order_limit }), result))
}

fn matrix_check(file: &Path) -> Outcome {
    let input = Input::read(file)?;
    let m: SemiMatrix = input.parse(io::read_matrix)?;
    let k = m.kernel();
    let flags = k.flags().map_err(|e| input.fail(e))?;
    let wc = k.weak_cancellation();
    let idempotent = if m.is_square() { Some(m.is_idempotent().map_err(|e| input.fail(e))?) } else { None };
    let complement = match idempotent {
        Some(true) => Some(m.strong_idempotent_complement().map_err(|e| input.fail(e))?),
        _ => None,
    };
    let mut result = object(vec![
        ("kernel", json!(k.name())),
        ("rows", json!(m.rows())),
        ("cols", json!(m.cols())),
        ("idempotent", json!(idempotent)),
        ("flags", serde_json::to_value(flags).expect("plain data")),
        (
            "weakly_cancellative",
            json!({
                "cancellative": wc.cancellative,
                "witness": wc.witness.map(|(a, b)| [a.to_string(), b.to_string()]),
            }),
        ),
    ]);
    if let Some(c) = complement {
        result["strong_complement"] = c.map_or(Value::Null, |f| io::matrix_to_json(&f));
    }
    Ok(report("matrix check", &[&input], &[], json!({}), result))
}
