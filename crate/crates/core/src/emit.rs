//! Serialization of characters, reports and tableaux as text, JSON and LaTeX.
//!
//! JSON terms have the form
//! `{"coeff": "<decimal>", "monomial": [{"node", "a", "phase", "q", "exp"}]}`
//! with rationals as `[numerator, denominator]`, sorted canonically.

use crate::engine::EngineReport;
use crate::symalg::{CharPoly, Coeff, FiniteChar, Lattice, Monomial, SpectralParam, Var, Q};
use crate::tableaux::{fmt_letter, parse_letter, Tableau};
use crate::{Error, Result};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::Parse(format!("format `{s}`"))),
        }
    }
}

fn bad(what: &str) -> Error {
    Error::Parse(format!("json: {what}"))
}

fn q_json(x: &Q) -> Value {
    json!([x.numer(), x.denom()])
}

fn q_from(v: &Value) -> Result<Q> {
    let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("rational"))?;
    let n = a[0].as_i64().ok_or_else(|| bad("rational"))?;
    let d = a[1].as_i64().filter(|&d| d != 0).ok_or_else(|| bad("rational"))?;
    Ok(Q::new(n, d))
}

fn coeff_from(v: &Value) -> Result<Coeff> {
    v.as_str().ok_or_else(|| bad("coeff"))?.parse()
}

pub fn monomial_json(m: &Monomial) -> Value {
    Value::Array(
        m.factors()
            .iter()
            .map(|(v, e)| {
                json!({
                    "node": v.node,
                    "a": q_json(&v.param.a_pow()),
                    "phase": q_json(&v.param.phase()),
                    "q": q_json(&v.param.q_pow()),
                    "exp": e,
                })
            })
            .collect(),
    )
}

pub fn monomial_from_json(v: &Value) -> Result<Monomial> {
    let mut out = Vec::new();
    for f in v.as_array().ok_or_else(|| bad("monomial"))? {
        let node = f["node"].as_u64().and_then(|x| u8::try_from(x).ok()).ok_or_else(|| bad("node"))?;
        let p = SpectralParam::new(q_from(&f["a"])?, q_from(&f["phase"])?, q_from(&f["q"])?);
        let e = f["exp"].as_i64().and_then(|x| i32::try_from(x).ok()).ok_or_else(|| bad("exp"))?;
        out.push((Var::new(node, p), e));
    }
    Ok(Monomial::from_factors(out))
}

fn terms_json(p: &CharPoly) -> Value {
    Value::Array(
        p.sorted_terms()
            .iter()
            .map(|(m, c)| json!({"coeff": c.to_string(), "monomial": monomial_json(m)}))
            .collect(),
    )
}

pub fn char_json(p: &CharPoly) -> Value {
    json!({ "terms": terms_json(p) })
}

pub fn char_from_json(v: &Value) -> Result<CharPoly> {
    let mut p = CharPoly::zero();
    for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
        p.add_term(monomial_from_json(&t["monomial"])?, &coeff_from(&t["coeff"])?);
    }
    Ok(p)
}

fn lattice_name(l: Lattice) -> &'static str {
    match l {
        Lattice::Tilde => "tilde",
        Lattice::Bar => "bar",
    }
}

pub fn finite_json(c: &FiniteChar) -> Value {
    let terms: Vec<Value> = c.iter().map(|(w, x)| json!({"coeff": x.to_string(), "weight": w})).collect();
    json!({"lattice": lattice_name(c.lattice), "dim": c.dim, "terms": terms})
}

pub fn finite_from_json(v: &Value) -> Result<FiniteChar> {
    let lattice = match v["lattice"].as_str() {
        Some("tilde") => Lattice::Tilde,
        Some("bar") => Lattice::Bar,
        _ => return Err(bad("lattice")),
    };
    let dim = v["dim"].as_u64().ok_or_else(|| bad("dim"))? as usize;
    let mut c = FiniteChar::zero(lattice, dim);
    for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
        let w: Vec<i32> = t["weight"]
            .as_array()
            .ok_or_else(|| bad("weight"))?
            .iter()
            .map(|x| x.as_i64().map(|y| y as i32).ok_or_else(|| bad("weight")))
            .collect::<Result<_>>()?;
        if w.len() != dim {
            return Err(bad("weight length"));
        }
        c.add_term(w, &coeff_from(&t["coeff"])?);
    }
    Ok(c)
}

pub fn tableau_json(t: &Tableau) -> Value {
    let rows: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(|&l| fmt_letter(l)).collect()).collect();
    json!({ "rows": rows })
}

pub fn tableau_from_json(v: &Value) -> Result<Tableau> {
    let rows = v["rows"]
        .as_array()
        .ok_or_else(|| bad("rows"))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("row"))?
                .iter()
                .map(|l| parse_letter(l.as_str().ok_or_else(|| bad("letter"))?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Tableau { rows })
}

pub fn report_json(r: &EngineReport) -> Value {
    let dom: Vec<Value> = r.dominant_list.iter().map(|(m, c)| json!({"coeff": c.to_string(), "monomial": monomial_json(m)})).collect();
    json!({
        "engine": r.engine.name(),
        "dimension": r.dimension.to_string(),
        "distinct_monomials": r.distinct_monomials,
        "special": r.special,
        "dominant": dom,
        "terms": terms_json(&r.character),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn parse(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("json: {e}")))
}

/// One term per line, `coeff * monomial`.
pub fn char_text(p: &CharPoly) -> String {
    let mut s = String::new();
    for (m, c) in p.sorted_terms() {
        s.push_str(&format!("{c} * {m}\n"));
    }
    s
}

pub fn finite_text(c: &FiniteChar) -> String {
    let mut s = String::new();
    for (w, x) in c.iter() {
        let coords: Vec<String> = w.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("{x} * e[{}]\n", coords.join(", ")));
    }
    s
}

pub fn tableau_text(t: &Tableau) -> String {
    t.rows.iter().map(|r| r.iter().map(|&l| fmt_letter(l)).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(" / ")
}

fn latex_q(x: &Q) -> String {
    if x.denom() == &1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn latex_pow(base: &str, x: &Q) -> String {
    if *x == Q::from_integer(0) {
        String::new()
    } else if *x == Q::from_integer(1) {
        base.to_string()
    } else {
        format!("{base}^{}", braced(&latex_q(x)))
    }
}

fn braced(s: &str) -> String {
    if s.chars().count() == 1 {
        s.to_string()
    } else {
        format!("{{{s}}}")
    }
}

/// `-aq^2`, `\zeta_3 a^{1/3}q`, ...
pub fn latex_param(p: &SpectralParam) -> String {
    let ph = p.phase();
    let sign = if ph == Q::new(1, 2) { "-" } else { "" };
    let root = if ph == Q::from_integer(0) || ph == Q::new(1, 2) {
        String::new()
    } else {
        latex_pow(&format!("\\zeta_{{{}}}", ph.denom()), &Q::from_integer(*ph.numer()))
    };
    let body = format!("{root}{}{}", latex_pow("a", &p.a_pow()), latex_pow("q", &p.q_pow()));
    format!("{sign}{}", if body.is_empty() { "1".into() } else { body })
}

pub fn monomial_latex(m: &Monomial, letter: char) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.factors()
        .iter()
        .map(|(v, e)| {
            let pw = if *e == 1 { String::new() } else { format!("^{}", braced(&e.to_string())) };
            format!("{letter}_{{{},{}}}{pw}", v.node, latex_param(&v.param))
        })
        .collect()
}

pub fn char_latex(p: &CharPoly, letter: char) -> String {
    let mut s = String::new();
    for (m, c) in p.sorted_terms() {
        let neg = c.is_negative();
        let abs = if neg { -&c } else { c.clone() };
        if s.is_empty() {
            s.push_str(if neg { "-" } else { "" });
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_latex(&m, letter);
        match (abs.is_one(), m.is_one()) {
            (true, _) => s.push_str(&mono),
            (false, true) => s.push_str(&abs.to_string()),
            (false, false) => s.push_str(&format!("{abs}{mono}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn finite_latex(c: &FiniteChar) -> String {
    let var = match c.lattice {
        Lattice::Tilde => "z",
        Lattice::Bar => "\\bar z",
    };
    let mut s = String::new();
    for (w, x) in c.iter() {
        let neg = x.is_negative();
        let abs = if neg { -x } else { x.clone() };
        s.push_str(match (s.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        let mono: String = w
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { format!("{var}_{i}") } else { format!("{var}_{i}^{}", braced(&e.to_string())) })
            .collect();
        match (abs.is_one(), mono.is_empty()) {
            (true, true) => s.push('1'),
            (true, false) => s.push_str(&mono),
            (false, _) => s.push_str(&format!("{abs}{mono}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Engine, EngineKind};
    use crate::symalg::{beta_bar_char, q};
    use crate::TypeSpec;
    use std::collections::BTreeSet;

    fn a4_v1() -> CharPoly {
        let e = Engine::new(TypeSpec::parse("A4-2").unwrap());
        e.kr_char(EngineKind::Fold, 1, 1, SpectralParam::base()).unwrap()
    }

    #[test]
    fn empty_character() {
        assert_eq!(serde_json::to_string(&char_json(&CharPoly::zero())).unwrap(), r#"{"terms":[]}"#);
        assert_eq!(char_latex(&CharPoly::zero(), 'Z'), "0");
    }

    #[test]
    fn single_variable_round_trip() {
        let m = Monomial::var_pow(2, SpectralParam::base().neg().shift_q(q(3)), -1);
        let p = CharPoly::from_monomial(m.clone());
        let back = char_from_json(&parse(&to_string(&char_json(&p))).unwrap()).unwrap();
        assert_eq!(back, p);
        assert_eq!(monomial_from_json(&monomial_json(&m)).unwrap(), m);
        assert_eq!(Monomial::parse_text(&m.to_text('Z')).unwrap(), m);
    }

    #[test]
    fn characters_round_trip() {
        let e = Engine::new(TypeSpec::parse("D4-3").unwrap());
        let p = e.kr_char(EngineKind::Fold, 2, 1, SpectralParam::base().shift_q(q(1))).unwrap();
        let s = to_string(&char_json(&p));
        assert_eq!(char_from_json(&parse(&s).unwrap()).unwrap(), p);
        let mut neg = p.scale(&Coeff::from(-3));
        neg.add_int(Monomial::one(), 7);
        assert_eq!(char_from_json(&char_json(&neg)).unwrap(), neg);
        let f = beta_bar_char(&e.t, &p);
        assert_eq!(finite_from_json(&parse(&to_string(&finite_json(&f))).unwrap()).unwrap(), f);
    }

    #[test]
    fn tableaux_round_trip() {
        let t = Tableau { rows: vec![vec![1, 2, -3], vec![3, -4, -1]] };
        assert_eq!(tableau_from_json(&tableau_json(&t)).unwrap(), t);
        assert!(tableau_from_json(&json!({"rows": [["1", "~"]]})).is_err());
    }

    #[test]
    fn deterministic() {
        let p = a4_v1();
        assert_eq!(to_string(&char_json(&p)), to_string(&char_json(&p.clone())));
    }

    fn tokens(s: &str) -> BTreeSet<BTreeSet<String>> {
        s.split(" + ")
            .map(|t| {
                let mut out = BTreeSet::new();
                let mut rest = t.trim();
                while let Some(i) = rest[1..].find("Z_").map(|i| i + 1) {
                    out.insert(rest[..i].to_string());
                    rest = &rest[i..];
                }
                out.insert(rest.to_string());
                out
            })
            .collect()
    }

    #[test]
    fn a4_fundamental_latex() {
        let printed = "Z_{1,a} + Z_{1,aq^2}^{-1}Z_{0,aq} + Z_{0,aq^3}^{-1}Z_{0,-aq^2} + Z_{0,-aq^4}^{-1}Z_{1,-aq^3} + Z_{1,-aq^5}^{-1}";
        let ours = char_latex(&a4_v1(), 'Z');
        assert_eq!(tokens(&ours), tokens(printed), "{ours}");
    }

    #[test]
    fn finite_latex_form() {
        let mut c = FiniteChar::zero(Lattice::Tilde, 2);
        c.add_int(vec![1, 0], 1);
        c.add_int(vec![0, 0], -2);
        c.add_int(vec![-1, 2], 1);
        assert_eq!(finite_latex(&c), "z_0^{-1}z_1^2 - 2 + z_0");
    }
}
