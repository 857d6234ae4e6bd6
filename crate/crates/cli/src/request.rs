//! Requests as they appear in batch files, and their evaluation.
//!
//! Single commands on the command line are turned into a [`Request`] too, so
//! both paths share one evaluator and produce the same result objects.

use std::fmt;

use hirz_core::ampleness::{ample_status, ample_status_p2, AmpleStatus, AmpleVerdict};
use hirz_core::gaeta::{find_all, find_l, GaetaResolution, GaetaSearch, SearchRegion};
use hirz_core::general_betti::{betti, is_special};
use hirz_core::global_generation::{gg_hirzebruch_with, gg_p2_with, GgOptions, GgVerdict, P2Character, Ruling};
use hirz_core::line_cohomology::{cohomology, format_trace};
use hirz_core::rational::{parse_rational, Q};
use hirz_core::{ChernCharacter, DivisorClass, Error, ErrorClass, Surface};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SurfaceSpec {
    Fe { e: u32 },
    P2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum C1Spec {
    Pair([i64; 2]),
    Single(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub cmd: String,
    pub surface: SurfaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<i64>,
    pub c1: C1Spec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ch2: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub all: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub lenient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input, before any character exists.
    Parse(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Core(err) => match err.class() {
                ErrorClass::Invalid => 1,
                ErrorClass::Unsupported => 2,
                ErrorClass::Internal => 3,
            },
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "Parse",
            CliError::Core(err) => err.label(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.label(), "message": self.to_string() } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => f.write_str(msg),
            CliError::Core(err) => write!(f, "{err}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

/// A result object with a fixed key order, used for both JSON and tables.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record(pub Vec<(String, Value)>);

impl Record {
    fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.0.iter().cloned().collect::<Map<String, Value>>())
    }
}

fn big(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn rat(x: &Q) -> Value {
    Value::String(x.to_string())
}

impl Request {
    fn rank(&self) -> Result<i64, CliError> {
        self.rank.ok_or_else(|| CliError::Parse(format!("{}: missing rank", self.cmd)))
    }

    fn ch2(&self) -> Result<Q, CliError> {
        let raw = self.ch2.as_deref().ok_or_else(|| CliError::Parse(format!("{}: missing ch2", self.cmd)))?;
        parse_rational(raw).map_err(|e| CliError::Parse(format!("ch2: {e}")))
    }

    fn pair(&self) -> Result<(i64, i64), CliError> {
        match self.c1 {
            C1Spec::Pair([a, b]) => Ok((a, b)),
            C1Spec::Single(_) => Err(CliError::Parse("c1 on F_e must be a pair K,L".into())),
        }
    }

    fn fe(&self) -> Result<Surface, CliError> {
        match self.surface {
            SurfaceSpec::Fe { e } => Ok(Surface::new(e)),
            SurfaceSpec::P2 => Err(CliError::Parse(format!("{} is only available on F_e", self.cmd))),
        }
    }

    fn character(&self) -> Result<(Surface, ChernCharacter), CliError> {
        let s = self.fe()?;
        let (k, l) = self.pair()?;
        Ok((s, ChernCharacter::from_parts(self.rank()?, k, l, self.ch2()?)))
    }

    fn p2_character(&self) -> Result<P2Character, CliError> {
        let d = match self.c1 {
            C1Spec::Single(d) => d,
            C1Spec::Pair(_) => return Err(CliError::Parse("c1 on P2 must be a single integer".into())),
        };
        Ok(P2Character::new(self.rank()?, d, self.ch2()?))
    }
}

pub fn evaluate(req: &Request) -> Result<Record, CliError> {
    match req.cmd.as_str() {
        "lb" => line_bundle(req),
        "betti" => betti_record(req),
        "special" => special_record(req),
        "gaeta" => gaeta_record(req),
        "gg" => gg_record(req),
        "ample" => ample_record(req),
        other => Err(CliError::Parse(format!("unknown command {other:?}"))),
    }
}

fn line_bundle(req: &Request) -> Result<Record, CliError> {
    let s = req.fe()?;
    let (a, b) = req.pair()?;
    let t = cohomology(s, DivisorClass::new(a, b));
    let mut r = Record::default();
    r.push("h0", big(&t.h0));
    r.push("h1", big(&t.h1));
    r.push("h2", big(&t.h2));
    r.push("chi", big(&t.euler_characteristic()));
    r.push("trace", format_trace(&t.trace));
    Ok(r)
}

fn betti_record(req: &Request) -> Result<Record, CliError> {
    let (s, v) = req.character()?;
    let b = betti(s, &v)?;
    let mut r = Record::default();
    r.push("h0", big(&b.triple.h0));
    r.push("h1", big(&b.triple.h1));
    r.push("h2", big(&b.triple.h2));
    r.push("chi", big(&v.chi(s)));
    r.push("delta", rat(&v.delta(s)));
    r.push("trace", format_trace(&b.triple.trace));
    Ok(r)
}

fn special_record(req: &Request) -> Result<Record, CliError> {
    let (s, v) = req.character()?;
    let sp = is_special(s, &v)?;
    let mut r = Record::default();
    r.push("verdict", format!("{:?}", sp.verdict));
    r.push("clause", sp.clause.label());
    r.push("m", sp.m.map_or(Value::Null, Value::from));
    r.push("serre_dual", sp.via_serre_dual);
    Ok(r)
}

fn region_json(g: &SearchRegion) -> Value {
    json!({
        "x": [g.x_range.0, g.x_range.1],
        "y": [g.y_range.0, g.y_range.1],
        "center": [g.center.a.to_string(), g.center.b.to_string()],
        "asymptote_slope": g.asymptote_slope.to_string(),
    })
}

fn resolution_json(s: Surface, g: &GaetaResolution) -> Value {
    let x = &g.exponents;
    json!({
        "L": [g.l.a, g.l.b],
        "exponents": [big(&x.alpha), big(&x.beta), big(&x.gamma), big(&x.delta)],
        "resolution": g.render(s),
    })
}

fn gaeta_record(req: &Request) -> Result<Record, CliError> {
    let (s, v) = req.character()?;
    let mut r = Record::default();
    if req.all {
        let (region, all) = find_all(s, &v)?;
        r.push("verdict", if all.is_empty() { "Infeasible" } else { "Found" });
        r.push("guaranteed", hirz_core::gaeta::threshold_met(s, &v.delta(s)));
        r.push("count", all.len());
        r.push("region", region_json(&region));
        r.push("twists", all.iter().map(|g| resolution_json(s, g)).collect::<Vec<_>>());
        return Ok(r);
    }
    match find_l(s, &v)? {
        GaetaSearch::Found { resolution, region } => {
            r.push("verdict", "Found");
            r.push("guaranteed", resolution.guaranteed);
            if let Value::Object(fields) = resolution_json(s, &resolution) {
                for (k, val) in fields {
                    r.push(&k, val);
                }
            }
            r.push("region", region_json(&region));
        }
        GaetaSearch::Infeasible { guaranteed, region } => {
            r.push("verdict", "Infeasible");
            r.push("guaranteed", guaranteed);
            r.push("region", region_json(&region));
        }
    }
    Ok(r)
}

fn gg_json(g: &GgVerdict) -> Record {
    let mut r = Record::default();
    r.push("verdict", g.verdict.to_string());
    r.push("clause", g.clause.map_or(Value::Null, |c| Value::from(c.number())));
    r.push("clause_name", g.clause.map_or(Value::Null, |c| Value::from(c.name())));
    r.push(
        "witness",
        g.witness.map_or(Value::Null, |w| {
            let ruling = match w.ruling {
                Ruling::F => "F",
                Ruling::E => "E",
            };
            json!({ "ruling": ruling, "a": w.a, "m": w.m })
        }),
    );
    r.push("trace", g.trace.join(" > "));
    r
}

fn gg_record(req: &Request) -> Result<Record, CliError> {
    let opts = GgOptions { lenient: req.lenient };
    let g = match req.surface {
        SurfaceSpec::P2 => gg_p2_with(&req.p2_character()?, opts)?,
        SurfaceSpec::Fe { .. } => {
            let (s, v) = req.character()?;
            gg_hirzebruch_with(s, &v, opts)?
        }
    };
    Ok(gg_json(&g))
}

fn ample_json(st: &AmpleStatus) -> Record {
    let mut r = Record::default();
    r.push("verdict", st.verdict.name());
    match &st.verdict {
        AmpleVerdict::NecessaryFailed(reasons) => {
            r.push("reasons", reasons.iter().map(ToString::to_string).collect::<Vec<_>>());
        }
        AmpleVerdict::Sufficient { clause, extended } => {
            r.push("clause", clause.number());
            r.push("extended", *extended);
        }
        AmpleVerdict::Unknown { reason } => {
            r.push("reason", reason.clone().map_or(Value::Null, Value::from));
        }
    }
    r.push("star_lhs", rat(&st.star_lhs));
    r.push("star_rhs", rat(&st.star_rhs));
    r.push("star_holds", st.star_holds());
    r
}

fn ample_record(req: &Request) -> Result<Record, CliError> {
    let st = match req.surface {
        SurfaceSpec::P2 => ample_status_p2(&req.p2_character()?)?,
        SurfaceSpec::Fe { .. } => {
            let (s, v) = req.character()?;
            ample_status(s, &v)?
        }
    };
    Ok(ample_json(&st))
}

/// The response object of a batch item: the request's fields plus `result`.
pub fn respond(item: &Value) -> Value {
    let result = serde_json::from_value::<Request>(item.clone())
        .map_err(|e| CliError::Parse(format!("bad request: {e}")))
        .and_then(|req| evaluate(&req));
    let mut out = match item {
        Value::Object(m) => m.clone(),
        other => {
            let mut m = Map::new();
            m.insert("request".into(), other.clone());
            m
        }
    };
    let result = match result {
        Ok(rec) => rec.to_json(),
        Err(err) => err.to_json(),
    };
    out.insert("result".into(), result);
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(cmd: &str, e: u32, r: i64, k: i64, l: i64, ch2: &str) -> Request {
        Request {
            cmd: cmd.into(),
            surface: SurfaceSpec::Fe { e },
            rank: Some(r),
            c1: C1Spec::Pair([k, l]),
            ch2: Some(ch2.into()),
            all: false,
            lenient: false,
        }
    }

    fn field<'a>(r: &'a Record, key: &str) -> &'a Value {
        &r.0.iter().find(|(k, _)| k == key).unwrap().1
    }

    #[test]
    fn request_schema() {
        let v: Request = serde_json::from_str(
            r#"{"cmd":"gg","surface":{"type":"fe","e":1},"rank":2,"c1":[2,2],"ch2":"-2"}"#,
        )
        .unwrap();
        assert_eq!(v, req("gg", 1, 2, 2, 2, "-2"));
        let p: Request =
            serde_json::from_str(r#"{"cmd":"gg","surface":{"type":"p2"},"rank":3,"c1":2,"ch2":"-2"}"#).unwrap();
        assert_eq!(p.c1, C1Spec::Single(2));
    }

    #[test]
    fn gg_result_fields() {
        let r = evaluate(&req("gg", 1, 2, 2, 2, "-2")).unwrap();
        assert_eq!(field(&r, "verdict"), "GloballyGenerated");
        assert_eq!(field(&r, "clause"), 4);
    }

    #[test]
    fn error_classes() {
        let e = evaluate(&req("betti", 1, 2, 1, 0, "1/3")).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let e = evaluate(&req("gg", 1, 1, 0, 0, "0")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = evaluate(&req("nope", 1, 1, 0, 0, "0")).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn batch_item_mirrors_request() {
        let item: Value = serde_json::from_str(r#"{"cmd":"lb","surface":{"type":"fe","e":2},"c1":[1,0]}"#).unwrap();
        let out = respond(&item);
        assert_eq!(out["cmd"], "lb");
        assert_eq!(out["result"]["h1"], 1);
        let bad = respond(&json!({"cmd": "lb"}));
        assert_eq!(bad["result"]["error"]["kind"], "Parse");
    }
}
