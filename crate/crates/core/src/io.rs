//! JSON formats for matrices, Boolean semimodules, tropical spans, direct
//! systems, Bratteli diagrams and semiring tables.
//!
//! Readers report problems as [`Error::Malformed`] naming the offending
//! field; syntax errors carry serde_json's line and column.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bmod::BoolSemimodule;
use crate::bratteli::{BratteliPresentation, FieldTag};
use crate::error::{Error, Result};
use crate::kflow::{DirectLimitSystem, PositiveMorphism, SimplicialOrderedGroup};
use crate::lab::FiniteSemiringTable;
use crate::semiring::{Element, Kernel, SemiMatrix, Trop};
use crate::trop::TropSpan;

fn malformed(field: &str, detail: impl std::fmt::Display) -> Error {
    Error::Malformed(format!("{field}: {detail}"))
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed("json", e))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| malformed(what, e))
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| malformed(name, "missing field"))
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?.as_u64().map(|x| x as usize).ok_or_else(|| malformed(name, "expected a nonnegative integer"))
}

/// Resolves the table names produced by the built-in constructors:
/// `B`, `Zn`, `GFq`, `Mn(X)` and products `XxY`.
pub fn builtin_table(name: &str) -> Result<FiniteSemiringTable> {
    let unknown = || Error::InvalidTable(format!("unknown table name {name:?}"));
    let mut depth = 0;
    for (i, c) in name.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => return builtin_table(&name[..i])?.product(&builtin_table(&name[i + 1..])?),
            _ => {}
        }
    }
    if name == "B" {
        return Ok(FiniteSemiringTable::boolean());
    }
    if let Some(q) = name.strip_prefix("GF") {
        return FiniteSemiringTable::gf(q.parse().map_err(|_| unknown())?);
    }
    if let Some(n) = name.strip_prefix('Z') {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if !(1..=crate::lab::MAX_TABLE_ORDER).contains(&n) {
            return Err(unknown());
        }
        return Ok(FiniteSemiringTable::zmod(n));
    }
    if let Some(rest) = name.strip_prefix('M') {
        let open = rest.find('(').ok_or_else(unknown)?;
        let n: usize = rest[..open].parse().map_err(|_| unknown())?;
        let inner = rest[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
        return builtin_table(inner)?.matrix_semiring(n);
    }
    Err(unknown())
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    order: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

fn table_from_file(f: TableFile) -> Result<FiniteSemiringTable> {
    if f.add.len() != f.order {
        return Err(malformed("add", format!("expected {} rows, found {}", f.order, f.add.len())));
    }
    let t = FiniteSemiringTable::new(f.name.unwrap_or_else(|| "S".into()), f.add, f.mul, f.zero, f.one)?;
    t.validate().map_err(|v| Error::InvalidTable(v.to_string()))?;
    Ok(t)
}

/// Reads `{"order", "add", "mul", "zero", "one", "name"?}` and checks the
/// semiring axioms.
pub fn read_table(text: &str) -> Result<FiniteSemiringTable> {
    table_from_file(from_value(parse_value(text)?, "table")?)
}

pub fn table_to_json(t: &FiniteSemiringTable) -> Value {
    serde_json::to_value(TableFile {
        name: Some(t.name().to_owned()),
        order: t.order(),
        add: t.add_table(),
        mul: t.mul_table(),
        zero: t.zero(),
        one: t.one(),
    })
    .expect("plain data")
}

fn parse_kernel(v: &Value) -> Result<Kernel> {
    let tag = field(v, "kernel")?.as_str().ok_or_else(|| malformed("kernel", "expected a string"))?;
    Ok(match tag {
        "BOOL" => Kernel::Bool,
        "TROP" => Kernel::Trop,
        "NAT" => Kernel::Nat,
        _ => {
            let name =
                tag.strip_prefix("TABLE:").ok_or_else(|| malformed("kernel", format!("unknown kernel {tag:?}")))?;
            match v.get("table") {
                Some(t) => {
                    let t = table_from_file(from_value(t.clone(), "table")?)?;
                    Kernel::table(t.with_name(name))
                }
                None => Kernel::table(builtin_table(name)?),
            }
        }
    })
}

fn parse_entry(kernel: &Kernel, v: &Value, idx: usize) -> Result<Element> {
    let at = format!("entries[{idx}]");
    let bad = |what: &str| malformed(&at, format!("expected {what}, found {v}"));
    let e = match kernel {
        Kernel::Bool => match v {
            Value::Bool(b) => Element::Bool(*b),
            Value::Number(n) if n.as_u64() == Some(0) || n.as_u64() == Some(1) => Element::Bool(n.as_u64() == Some(1)),
            _ => return Err(bad("0 or 1")),
        },
        Kernel::Trop => match v {
            Value::String(s) => Element::Trop(s.parse::<Trop>().map_err(|e| malformed(&at, e))?),
            Value::Number(n) => Element::Trop(Trop::int(n.as_i64().ok_or_else(|| bad("an integer or \"p/q\""))?)),
            _ => return Err(bad("\"p/q\" or \"-inf\"")),
        },
        Kernel::Nat => match v {
            Value::Number(n) => Element::Nat(BigUint::from(n.as_u64().ok_or_else(|| bad("a nonnegative integer"))?)),
            Value::String(s) => Element::Nat(s.parse().map_err(|_| bad("a nonnegative integer"))?),
            _ => return Err(bad("a nonnegative integer")),
        },
        Kernel::Table(_) => Element::Table(v.as_u64().ok_or_else(|| bad("an element index"))? as usize),
    };
    kernel.check(&e).map_err(|err| malformed(&at, err))?;
    Ok(e)
}

/// Reads `{"kernel", "rows", "cols", "entries"}`; entries may be flat
/// (row-major) or nested by rows.
pub fn read_matrix(text: &str) -> Result<SemiMatrix> {
    matrix_from_value(&parse_value(text)?)
}

pub fn matrix_from_value(v: &Value) -> Result<SemiMatrix> {
    let kernel = parse_kernel(v)?;
    let (rows, cols) = (usize_field(v, "rows")?, usize_field(v, "cols")?);
    let raw = field(v, "entries")?.as_array().ok_or_else(|| malformed("entries", "expected an array"))?;
    let flat: Vec<&Value> = if raw.iter().all(Value::is_array) && !raw.is_empty() {
        raw.iter().flat_map(|r| r.as_array().expect("checked").iter()).collect()
    } else {
        raw.iter().collect()
    };
    if flat.len() != rows * cols {
        return Err(malformed("entries", format!("expected {} entries, found {}", rows * cols, flat.len())));
    }
    let entries = flat.iter().enumerate().map(|(i, e)| parse_entry(&kernel, e, i)).collect::<Result<_>>()?;
    SemiMatrix::new(kernel, rows, cols, entries)
}

fn entry_to_json(e: &Element) -> Value {
    match e {
        Element::Bool(b) => json!(u8::from(*b)),
        Element::Trop(t) => json!(t.to_string()),
        Element::Nat(n) => match u64::try_from(n) {
            Ok(x) => json!(x),
            Err(_) => json!(n.to_string()),
        },
        Element::Table(i) => json!(i),
    }
}

/// Canonical form: flat entries, `TROP` entries as strings, `NAT` entries as
/// numbers unless they exceed 64 bits. Tables that are not built-in are
/// embedded under `"table"`.
pub fn matrix_to_json(m: &SemiMatrix) -> Value {
    let mut out = json!({
        "kernel": m.kernel().name(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(entry_to_json).collect::<Vec<_>>(),
    });
    if let Kernel::Table(t) = m.kernel() {
        if builtin_table(t.name()).ok().as_ref() != Some(t.as_ref()) {
            out["table"] = table_to_json(t);
        }
    }
    out
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ModuleFile {
    Coords { coords: Vec<Vec<u8>> },
    Table { n: usize, join: Vec<Vec<usize>>, bottom: usize },
}

/// Reads `{"coords": [...]}` (the generated sub-semilattice is closed on
/// load) or `{"n", "join", "bottom"}`, and validates the axioms.
pub fn read_module(text: &str) -> Result<BoolSemimodule> {
    let m = match from_value::<ModuleFile>(parse_value(text)?, "module (expected coords, or n/join/bottom)")? {
        ModuleFile::Coords { coords } => BoolSemimodule::from_coords(&coords)?,
        ModuleFile::Table { n, join, bottom } => {
            if join.len() != n {
                return Err(malformed("join", format!("expected {n} rows, found {}", join.len())));
            }
            BoolSemimodule::new(join, bottom)?
        }
    };
    m.validate().map_err(|v| malformed("join", v))?;
    Ok(m)
}

pub fn module_to_json(m: &BoolSemimodule) -> Value {
    match m.coords() {
        Some(c) => json!({ "coords": c }),
        None => json!({ "n": m.len(), "join": m.join_table(), "bottom": m.bottom() }),
    }
}

/// Reads `{"ambient": n, "generators": [["0", "-1/2", "-inf"], ...]}`;
/// integer entries are accepted as well.
pub fn read_span(text: &str) -> Result<TropSpan> {
    let v = parse_value(text)?;
    let ambient = usize_field(&v, "ambient")?;
    let gens = field(&v, "generators")?.as_array().ok_or_else(|| malformed("generators", "expected an array"))?;
    let mut out = Vec::with_capacity(gens.len());
    for (j, g) in gens.iter().enumerate() {
        let at = format!("generators[{j}]");
        let g = g.as_array().ok_or_else(|| malformed(&at, "expected an array"))?;
        let col = g
            .iter()
            .map(|x| match parse_entry(&Kernel::Trop, x, 0) {
                Ok(Element::Trop(t)) => Ok(t),
                _ => Err(malformed(&at, format!("bad tropical entry {x}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(col);
    }
    TropSpan::new(ambient, out)
}

pub fn span_to_json(sp: &TropSpan) -> Value {
    let gens: Vec<Vec<String>> = sp.generators().iter().map(|g| g.iter().map(ToString::to_string).collect()).collect();
    json!({ "ambient": sp.ambient(), "generators": gens })
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    units: Vec<Vec<u64>>,
    #[serde(default)]
    maps: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<usize>,
}

/// Reads `{"units": [[...], ...], "maps": [[[...]], ...], "period": p?}`.
pub fn read_system(text: &str) -> Result<DirectLimitSystem> {
    let f: SystemFile = from_value(parse_value(text)?, "system")?;
    let groups = f.units.into_iter().map(SimplicialOrderedGroup::new).collect::<Result<_>>()?;
    let maps = f.maps.into_iter().map(PositiveMorphism::new).collect::<Result<_>>()?;
    DirectLimitSystem::new(groups, maps, f.period)
}

pub fn system_to_json(sys: &DirectLimitSystem) -> Value {
    serde_json::to_value(SystemFile {
        units: sys.groups().iter().map(|g| g.unit().to_vec()).collect(),
        maps: sys.maps().iter().map(|m| m.matrix().to_vec()).collect(),
        period: sys.period(),
    })
    .expect("plain data")
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    #[serde(default)]
    field: FieldTag,
    levels: Vec<Vec<u64>>,
    #[serde(default)]
    steps: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<usize>,
}

/// Reads `{"field", "levels", "steps", "period"?}`.
pub fn read_diagram(text: &str) -> Result<BratteliPresentation> {
    let f: DiagramFile = from_value(parse_value(text)?, "diagram")?;
    let steps = f.steps.into_iter().map(PositiveMorphism::new).collect::<Result<_>>()?;
    BratteliPresentation::new(f.field, f.levels, steps, f.period)
}

pub fn diagram_to_json(p: &BratteliPresentation) -> Value {
    serde_json::to_value(DiagramFile {
        field: p.field.clone(),
        levels: p.levels().to_vec(),
        steps: p.steps().iter().map(|m| m.matrix().to_vec()).collect(),
        period: p.period(),
    })
    .expect("plain data")
}
