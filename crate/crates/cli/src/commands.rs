//! One function per subcommand. Each returns a [`Report`]; anything that
//! stops a command from running is a [`CmdError`].

use fole::base::{Table, TableMorphism, TblA};
use fole::diagrams::{check_database_morphism, Database};
use fole::elem::{FinSet, SetFn};
use fole::fincat::{Bridge, Category, FinCategory, Passage, SetCat};
use fole::univ::{
    colimit_in_listx, colimit_in_set, grothendieck, join_general, lan, limit_in_set, ran, signature_diagram, sum_general,
    Convention, LimitResult,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::workspace::{Db, Workspace};

#[derive(Debug, Error)]
pub enum CmdError {
    #[error("no {wanted} named `{name}`")]
    Unknown { wanted: &'static str, name: String },
    #[error("{0}")]
    Input(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    fn new(check: &str, pass: bool, detail: Option<String>) -> Self {
        Verdict { check: check.into(), pass, detail }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub verdicts: Vec<Verdict>,
    pub result: Value,
    /// The table behind `result`, for CSV export.
    #[serde(skip)]
    pub table: Option<Table>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Schema,
    Key,
    Data,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GrothConvention {
    Fibration,
    Opfibration,
}

fn input(e: impl ToString) -> CmdError {
    CmdError::Input(e.to_string())
}

fn lookup<'a, T>(map: &'a std::collections::BTreeMap<String, T>, wanted: &'static str, name: &str) -> Result<&'a T, CmdError> {
    map.get(name).ok_or_else(|| CmdError::Unknown { wanted, name: name.into() })
}

fn elems(s: &FinSet) -> Vec<String> {
    s.iter().map(|e| e.to_string()).collect()
}

fn pairs(f: &SetFn) -> Vec<[String; 2]> {
    f.pairs().map(|(a, b)| [a.to_string(), b.to_string()]).collect()
}

pub fn table_json(t: &Table) -> Value {
    let sig = t.signature();
    let attrs: Vec<[String; 2]> = pairs(sig.sort_fn());
    let rows: Vec<Value> = t
        .keys()
        .iter()
        .zip(t.rows())
        .map(|(k, row)| {
            let vals: Vec<[String; 2]> = sig
                .arity()
                .iter()
                .zip(row.as_tuple().expect("rows are tuples"))
                .map(|(a, v)| [a.to_string(), v.to_string()])
                .collect();
            json!({ "key": k.to_string(), "values": vals })
        })
        .collect();
    json!({ "signature": attrs, "rows": rows })
}

fn leg_json(shape: &FinCategory, x: usize, m: &TableMorphism) -> Value {
    json!({ "object": shape.obj_name(fole::fincat::ObjId(x)), "h": pairs(m.h()), "k": pairs(m.keys()) })
}

/// The CSV form of a table: a `key` column, then one column per attribute.
pub fn table_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["key".to_string()];
    header.extend(elems(t.signature().arity()));
    w.write_record(&header).expect("in-memory write");
    for (k, row) in t.keys().iter().zip(t.rows()) {
        let mut rec = vec![k.to_string()];
        rec.extend(row.as_tuple().expect("rows are tuples").iter().map(|v| v.to_string()));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
}

fn mediates_identity<T: Category + 'static>(r: &LimitResult<T>) -> Verdict
where
    T::Mor: PartialEq,
{
    let id = r.diagram.target().identity(r.vertex());
    match r.mediate(&r.cone) {
        Ok(m) if m == id => Verdict::new("own cone mediates by the identity", true, None),
        Ok(_) => Verdict::new("own cone mediates by the identity", false, Some("a non-identity mediator".into())),
        Err(e) => Verdict::new("own cone mediates by the identity", false, Some(e.to_string())),
    }
}

fn tbl_result(cmd: Vec<String>, db: &Database<TblA>, r: LimitResult<TblA>, join: bool) -> Result<Report, CmdError> {
    let mut verdicts = vec![mediates_identity(&r)];
    if join {
        let reference = colimit_in_listx(&signature_diagram(db)).map_err(input)?;
        let ok = r.vertex().signature() == reference.vertex();
        verdicts.push(Verdict::new("signature equals the reference signature", ok, None));
    }
    let legs: Vec<Value> = r.legs().iter().enumerate().map(|(x, m)| leg_json(db.shape(), x, m)).collect();
    let mut result = table_json(r.vertex());
    result["legs"] = json!(legs);
    Ok(Report { command: cmd, verdicts, result, table: Some(r.vertex().clone()) })
}

pub fn cmd_join(ws: &Workspace, name: &str) -> Result<Report, CmdError> {
    let db = lookup(&ws.databases, "database", name)?.general();
    let r = join_general(&db).map_err(input)?;
    let fixed = fixed_of(&r, &db);
    tbl_result(vec!["join".into(), name.into()], &fixed, r, true)
}

pub fn cmd_sum(ws: &Workspace, name: &str) -> Result<Report, CmdError> {
    let db = lookup(&ws.databases, "database", name)?.general();
    let r = sum_general(&db).map_err(input)?;
    let fixed = fixed_of(&r, &db);
    tbl_result(vec!["sum".into(), name.into()], &fixed, r, false)
}

/// The fixed-type-domain database a join or sum was computed over.
fn fixed_of(r: &LimitResult<TblA>, db: &Database<fole::base::TblCat>) -> Database<TblA> {
    Database::new(db.shape().clone(), r.diagram.clone()).expect("the result's own diagram")
}

pub fn cmd_project(ws: &Workspace, name: &str, which: Which) -> Result<Report, CmdError> {
    let db = lookup(&ws.databases, "database", name)?.general();
    let shape = db.shape();
    let arrows = shape.non_identity_morphisms();
    let result = match which {
        Which::Schema => {
            let objects: Vec<Value> = shape
                .objects()
                .map(|x| json!({ "object": shape.obj_name(x), "signature": pairs(db.table(x).signature().sort_fn()) }))
                .collect();
            let arrows: Vec<Value> =
                arrows.map(|m| json!({ "arrow": shape.mor_name(m), "h": pairs(db.arrow(m).h()) })).collect();
            json!({ "objects": objects, "arrows": arrows })
        }
        Which::Key => {
            let objects: Vec<Value> =
                shape.objects().map(|x| json!({ "object": shape.obj_name(x), "keys": elems(db.table(x).keys()) })).collect();
            let arrows: Vec<Value> =
                arrows.map(|m| json!({ "arrow": shape.mor_name(m), "k": pairs(db.arrow(m).keys()) })).collect();
            json!({ "objects": objects, "arrows": arrows })
        }
        Which::Data => {
            let objects: Vec<Value> = shape
                .objects()
                .map(|x| {
                    let a = db.table(x).type_domain();
                    let inc: Vec<[String; 2]> = a.incidence().iter().map(|(v, s)| [v.to_string(), s.to_string()]).collect();
                    json!({ "object": shape.obj_name(x), "sorts": elems(a.sorts()), "values": elems(a.values()), "incidence": inc })
                })
                .collect();
            let arrows: Vec<Value> = arrows
                .map(|m| {
                    let i = db.arrow(m).dom().info();
                    json!({ "arrow": shape.mor_name(m), "f": pairs(i.f()), "g": pairs(i.g()) })
                })
                .collect();
            json!({ "objects": objects, "arrows": arrows })
        }
    };
    let which = match which {
        Which::Schema => "schema",
        Which::Key => "key",
        Which::Data => "data",
    };
    Ok(Report { command: vec!["project".into(), name.into(), which.into()], verdicts: vec![], result, table: None })
}

fn set_diagram_json(d: &Passage<SetCat>) -> Value {
    let shape = d.source();
    let sets: Vec<Value> = shape.objects().map(|x| json!([shape.obj_name(x), elems(d.obj(x))])).collect();
    let maps: Vec<Value> = shape
        .non_identity_morphisms()
        .map(|m| json!({ "arrow": shape.mor_name(m), "pairs": pairs(d.mor(m)) }))
        .collect();
    json!({ "sets": sets, "maps": maps })
}

fn bridge_json(b: &Bridge<SetCat>) -> Value {
    let shape = b.source().source();
    let comps: Vec<Value> =
        shape.objects().map(|x| json!({ "object": shape.obj_name(x), "pairs": pairs(b.component(x)) })).collect();
    json!(comps)
}

fn set_universal(cmd: &str, ws: &Workspace, name: &str, limit: bool) -> Result<Report, CmdError> {
    let d = lookup(&ws.diagrams, "diagram", name)?;
    let r = if limit { limit_in_set(d) } else { colimit_in_set(d) };
    let shape = d.source();
    let commutes = r.cone.check_over(d);
    let verdicts = vec![
        Verdict::new("legs commute", commutes.is_ok(), commutes.err().map(|e| e.to_string())),
        mediates_identity(&r),
    ];
    let legs: Vec<Value> =
        shape.objects().map(|x| json!({ "object": shape.obj_name(x), "pairs": pairs(&r.legs()[x.0]) })).collect();
    let result = json!({ "vertex": elems(r.vertex()), "legs": legs });
    Ok(Report { command: vec![cmd.into(), name.into()], verdicts, result, table: None })
}

pub fn cmd_limit(ws: &Workspace, name: &str) -> Result<Report, CmdError> {
    set_universal("limit", ws, name, true)
}

pub fn cmd_colimit(ws: &Workspace, name: &str) -> Result<Report, CmdError> {
    set_universal("colimit", ws, name, false)
}

pub fn cmd_kan(ws: &Workspace, direction: Direction, k: &str, s: &str) -> Result<Report, CmdError> {
    let kp = lookup(&ws.passages, "passage", k)?;
    let sd = lookup(&ws.diagrams, "diagram", s)?;
    let ext = match direction {
        Direction::Left => lan(kp, sd),
        Direction::Right => ran(kp, sd),
    }
    .map_err(input)?;
    let natural = ext.bridge.validate();
    let own = ext.factor(&ext.extension, &ext.bridge);
    let own_ok = matches!(&own, Ok(b) if *b == Bridge::identity(&ext.extension));
    let verdicts = vec![
        Verdict::new("bridge is natural", natural.is_ok(), natural.err().map(|e| e.to_string())),
        Verdict::new("own bridge factors through the identity", own_ok, own.err().map(|e| e.to_string())),
    ];
    let dir = match direction {
        Direction::Left => "left",
        Direction::Right => "right",
    };
    let result = json!({ "extension": set_diagram_json(&ext.extension), "bridge": bridge_json(&ext.bridge) });
    Ok(Report { command: vec!["kan".into(), dir.into(), k.into(), s.into()], verdicts, result, table: None })
}

pub fn cmd_check(ws: &Workspace, name: &str) -> Result<Report, CmdError> {
    let m = lookup(&ws.morphisms, "morphism", name)?;
    let rep = check_database_morphism(m);
    let verdicts = vec![
        Verdict::new(
            "naturality",
            rep.naturality_failures.is_empty(),
            (!rep.naturality_failures.is_empty()).then(|| format!("fails at {}", rep.naturality_failures.join(", "))),
        ),
        Verdict::new(
            "projection condition",
            rep.condition_failures.is_empty(),
            (!rep.condition_failures.is_empty()).then(|| {
                let at: Vec<String> = rep.condition_failures.iter().map(|(o, k)| format!("{o} (key {k})")).collect();
                format!("fails at {}", at.join(", "))
            }),
        ),
    ];
    let cond: Vec<[String; 2]> = rep.condition_failures.iter().map(|(o, k)| [o.clone(), k.to_string()]).collect();
    let result = json!({ "naturality_failures": rep.naturality_failures, "condition_failures": cond });
    Ok(Report { command: vec!["check".into(), name.into()], verdicts, result, table: None })
}

pub fn cmd_groth(ws: &Workspace, name: &str, convention: Option<GrothConvention>) -> Result<Report, CmdError> {
    let ix = lookup(&ws.indexed, "indexed", name)?;
    let conv = match convention {
        Some(GrothConvention::Fibration) => Convention::Fibration,
        Some(GrothConvention::Opfibration) => Convention::Opfibration,
        None if ix.has_acute() => Convention::Opfibration,
        None => Convention::Fibration,
    };
    let total = grothendieck(ix, conv).map_err(input)?;
    let c = &total.category;
    let laws = c.check_laws();
    let proj = total.projection.validate();
    let verdicts = vec![
        Verdict::new("category laws", laws.is_ok(), laws.err().map(|e| e.to_string())),
        Verdict::new("projection is a passage", proj.is_ok(), proj.err().map(|e| e.to_string())),
    ];
    let objects: Vec<&str> = c.objects().map(|x| c.obj_name(x)).collect();
    let morphisms: Vec<[&str; 3]> =
        c.morphisms().map(|m| [c.mor_name(m), c.obj_name(c.src(m)), c.obj_name(c.tgt(m))]).collect();
    let conv = match conv {
        Convention::Fibration => "fibration",
        Convention::Opfibration => "opfibration",
    };
    let result = json!({ "convention": conv, "objects": objects, "morphisms": morphisms });
    Ok(Report { command: vec!["groth".into(), name.into(), conv.into()], verdicts, result, table: None })
}

/// Loading already validated everything; this re-runs the checks that
/// report rather than reject and names what was checked.
pub fn cmd_validate(ws: &Workspace, name: &str) -> Result<Report, CmdError> {
    let kind = ws.kind_of(name).ok_or_else(|| CmdError::Unknown { wanted: "entity", name: name.into() })?;
    let mut verdicts = vec![Verdict::new("loads", true, None)];
    match kind {
        "database" => {
            let db = ws.databases[name].general();
            let bad = db.arrow_violations();
            verdicts.push(Verdict::new("arrows are table morphisms", bad.is_empty(), (!bad.is_empty()).then(|| bad.join(", "))));
            let tb = db.tuple_bridge();
            verdicts.push(Verdict::new("tuple bridge is natural", tb.is_ok(), tb.err().map(|e| e.to_string())));
        }
        "morphism" => {
            let rep = check_database_morphism(&ws.morphisms[name]);
            verdicts.push(Verdict::new("database morphism", rep.passed(), (!rep.passed()).then(|| format!("{rep:?}"))));
        }
        "shape" => {
            let laws = ws.shapes[name].check_laws();
            verdicts.push(Verdict::new("category laws", laws.is_ok(), laws.err().map(|e| e.to_string())));
        }
        _ => {}
    }
    let fixed = matches!(ws.databases.get(name), Some(Db::Fixed(_)));
    let mut result = json!({ "kind": kind, "name": name });
    if kind == "database" {
        result["fixed_type_domain"] = json!(fixed);
    }
    Ok(Report { command: vec!["validate".into(), name.into()], verdicts, result, table: None })
}
