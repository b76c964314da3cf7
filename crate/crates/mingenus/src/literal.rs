//! JSON class literals and textual move literals.
//!
//! Product classes: `{"g":2,"handles":[[a,b,c,d],[a,b,c,d]],"e":1,"f":0}`.
//! Twisted classes: `{"g":1,"m":5,"handles":[[a,b,c,d]],"fiber":3}`.
//! Integers may be JSON numbers of any size or decimal strings.
//! Moves: `Rz(1)`, `Rzx(1,2)^-1`, `Dxy(2)^5`, `Fy`, `SignFlip(-1,+1)`, `MirrorH`.

use std::str::FromStr;

use mingenus_core::twisted::{TwistedClass, TwistedContext};
use mingenus_core::{ClassH2, GeneratorMove, GenusContext, MoveKind, MoveWord};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ParseError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

pub fn int_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer is a JSON number"))
}

fn parse_int(v: &Value, what: &str) -> Result<BigInt, ParseError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_owned(),
        _ => return err(format!("{what}: expected an integer, found {v}")),
    };
    BigInt::from_str(&text).map_err(|_| ParseError(format!("{what}: {text} is not an integer")))
}

fn parse_usize(v: &Value, what: &str) -> Result<usize, ParseError> {
    parse_int(v, what)?.to_usize().ok_or_else(|| ParseError(format!("{what}: expected a non-negative integer")))
}

fn object<'a>(v: &'a Value, allowed: &[&str]) -> Result<&'a Map<String, Value>, ParseError> {
    let Value::Object(map) = v else {
        return err("class literal must be a JSON object");
    };
    if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return err(format!("unknown key {k:?}"));
    }
    Ok(map)
}

fn field<'a>(map: &'a Map<String, Value>, key: &str) -> Result<&'a Value, ParseError> {
    map.get(key).ok_or_else(|| ParseError(format!("missing key {key:?}")))
}

fn parse_handles(map: &Map<String, Value>) -> Result<(usize, Vec<BigInt>), ParseError> {
    let Value::Array(rows) = field(map, "handles")? else {
        return err("\"handles\" must be an array");
    };
    let mut flat = Vec::with_capacity(4 * rows.len());
    for (i, row) in rows.iter().enumerate() {
        match row {
            Value::Array(h) if h.len() == 4 => {
                for x in h {
                    flat.push(parse_int(x, &format!("handle {}", i + 1))?);
                }
            }
            _ => return err(format!("handle {} must be an array of 4 integers", i + 1)),
        }
    }
    let g = match map.get("g") {
        Some(v) => parse_usize(v, "g")?,
        None => rows.len(),
    };
    if g != rows.len() {
        return err(format!("g = {g} but {} handles given", rows.len()));
    }
    if g == 0 {
        return err("g must be positive");
    }
    Ok((g, flat))
}

fn parse_json(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError(format!("invalid JSON: {e}")))
}

pub fn parse_class(text: &str) -> Result<ClassH2, ParseError> {
    class_from_value(&parse_json(text)?)
}

pub fn class_from_value(v: &Value) -> Result<ClassH2, ParseError> {
    let map = object(v, &["g", "handles", "e", "f"])?;
    let (g, mut coords) = parse_handles(map)?;
    coords.push(parse_int(field(map, "e")?, "e")?);
    coords.push(parse_int(field(map, "f")?, "f")?);
    let ctx = GenusContext::new(g).map_err(|e| ParseError(e.to_string()))?;
    ClassH2::from_coords(ctx, coords).map_err(|e| ParseError(e.to_string()))
}

pub fn class_to_value(sigma: &ClassH2) -> Value {
    let handles = sigma
        .tensor_part()
        .chunks(4)
        .map(|h| Value::Array(h.iter().map(int_value).collect()))
        .collect();
    let mut map = Map::new();
    map.insert("g".into(), Value::from(sigma.g()));
    map.insert("handles".into(), Value::Array(handles));
    map.insert("e".into(), int_value(sigma.e()));
    map.insert("f".into(), int_value(sigma.f()));
    Value::Object(map)
}

pub fn class_to_string(sigma: &ClassH2) -> String {
    class_to_value(sigma).to_string()
}

pub fn parse_twisted(text: &str) -> Result<TwistedClass, ParseError> {
    twisted_from_value(&parse_json(text)?)
}

pub fn twisted_from_value(v: &Value) -> Result<TwistedClass, ParseError> {
    let map = object(v, &["g", "m", "handles", "fiber"])?;
    let (g, handles) = parse_handles(map)?;
    let m = parse_int(field(map, "m")?, "m")?.to_i64().ok_or_else(|| ParseError("m out of range".into()))?;
    let fiber = parse_int(field(map, "fiber")?, "fiber")?;
    let ctx = TwistedContext::new(g, m).map_err(|e| ParseError(e.to_string()))?;
    TwistedClass::new(ctx, handles, fiber).map_err(|e| ParseError(e.to_string()))
}

pub fn twisted_to_value(sigma: &TwistedClass) -> Value {
    let handles = sigma.handles().chunks(4).map(|h| Value::Array(h.iter().map(int_value).collect())).collect();
    let mut map = Map::new();
    map.insert("g".into(), Value::from(sigma.ctx().g()));
    map.insert("m".into(), Value::from(sigma.ctx().m()));
    map.insert("handles".into(), Value::Array(handles));
    map.insert("fiber".into(), int_value(sigma.fiber()));
    Value::Object(map)
}

fn parse_index_list(args: &str) -> Result<Vec<usize>, ParseError> {
    args.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| ParseError(format!("bad handle index {s:?}"))))
        .collect()
}

fn parse_kind(name: &str, args: Option<&str>) -> Result<MoveKind, ParseError> {
    let indices = |n: usize| -> Result<Vec<usize>, ParseError> {
        let list = match args {
            Some(a) => parse_index_list(a)?,
            None => Vec::new(),
        };
        if list.len() != n {
            return err(format!("{name} takes {n} index argument(s)"));
        }
        Ok(list)
    };
    let no_args = || -> Result<(), ParseError> {
        match args {
            None => Ok(()),
            Some(_) => err(format!("{name} takes no arguments")),
        }
    };
    Ok(match name {
        "Rz" => MoveKind::Rz(indices(1)?[0]),
        "Rx" => MoveKind::Rx(indices(1)?[0]),
        "Rzz" => {
            let v = indices(2)?;
            MoveKind::Rzz(v[0], v[1])
        }
        "Rzx" => {
            let v = indices(2)?;
            MoveKind::Rzx(v[0], v[1])
        }
        "Dxy" => MoveKind::Dxy(indices(1)?[0]),
        "Dzt" => MoveKind::Dzt(indices(1)?[0]),
        "Dxt" => MoveKind::Dxt(indices(1)?[0]),
        "Dzy" => MoveKind::Dzy(indices(1)?[0]),
        "Fy" => {
            no_args()?;
            MoveKind::Fy
        }
        "Ft" => {
            no_args()?;
            MoveKind::Ft
        }
        "MirrorH" => {
            no_args()?;
            MoveKind::MirrorH
        }
        "SignFlip" => {
            let Some(a) = args else {
                return err("SignFlip needs a sign list");
            };
            let signs = a
                .split(',')
                .map(|s| match s.trim() {
                    "+1" | "1" | "+" => Ok(1i8),
                    "-1" | "-" => Ok(-1i8),
                    other => err(format!("bad sign {other:?}")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            MoveKind::SignFlip(signs)
        }
        other => return err(format!("unknown move {other:?}")),
    })
}

/// Parses `Name`, `Name(args)` or either followed by `^k` with `k ≠ 0`.
pub fn parse_move(text: &str) -> Result<GeneratorMove, ParseError> {
    let text = text.trim();
    let (head, exponent) = match text.split_once('^') {
        Some((h, e)) => {
            let k = BigInt::from_str(e.trim()).map_err(|_| ParseError(format!("bad exponent in {text:?}")))?;
            (h.trim(), k)
        }
        None => (text, BigInt::from(1)),
    };
    let (name, args) = match head.split_once('(') {
        Some((n, rest)) => {
            let Some(inner) = rest.strip_suffix(')') else {
                return err(format!("unbalanced parentheses in {text:?}"));
            };
            (n.trim(), Some(inner))
        }
        None => (head, None),
    };
    let kind = parse_kind(name, args)?;
    GeneratorMove::with_exponent(kind, exponent).map_err(|e| ParseError(e.to_string()))
}

/// A JSON array of move literals, applied left to right.
pub fn parse_word(text: &str) -> Result<MoveWord, ParseError> {
    let Value::Array(items) = parse_json(text)? else {
        return err("a word must be a JSON array of move strings");
    };
    items
        .iter()
        .map(|v| match v {
            Value::String(s) => parse_move(s),
            other => err(format!("move literal must be a string, found {other}")),
        })
        .collect()
}

pub fn word_to_value(w: &MoveWord) -> Value {
    Value::Array(w.moves().iter().map(|m| Value::String(m.to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_literal_round_trip() {
        let text = r#"{"g":2,"handles":[[1,2,3,4],[5,6,7,8]],"e":9,"f":-10}"#;
        let c = parse_class(text).unwrap();
        assert_eq!(c, ClassH2::from_i64s(&[1, 2, 3, 4, 5, 6, 7, 8, 9, -10]).unwrap());
        assert_eq!(class_to_string(&c), text);
    }

    #[test]
    fn huge_integers_survive() {
        let text = r#"{"g":1,"handles":[[123456789012345678901234567890,0,0,0]],"e":"-5","f":0}"#;
        let c = parse_class(text).unwrap();
        assert_eq!(c.a(1).to_string(), "123456789012345678901234567890");
        assert_eq!(parse_class(&class_to_string(&c)).unwrap(), c);
    }

    #[test]
    fn malformed_literals() {
        for bad in [
            "",
            "[]",
            r#"{"g":2,"handles":[[0,0,0,0]],"e":0,"f":0}"#,
            r#"{"handles":[[0,0,0]],"e":0,"f":0}"#,
            r#"{"handles":[[0,0,0,0]],"e":0}"#,
            r#"{"handles":[[0,0,0,0]],"e":1.5,"f":0}"#,
            r#"{"handles":[],"e":0,"f":0}"#,
            r#"{"handles":[[0,0,0,0]],"e":0,"f":0,"x":1}"#,
        ] {
            assert!(parse_class(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn twisted_literal() {
        let t = parse_twisted(r#"{"g":1,"m":7,"handles":[[2,3,1,-1]],"fiber":12}"#).unwrap();
        assert_eq!(t.fiber(), &BigInt::from(5));
        assert_eq!(twisted_to_value(&t).to_string(), r#"{"g":1,"m":7,"handles":[[2,3,1,-1]],"fiber":5}"#);
        assert!(parse_twisted(r#"{"g":1,"m":0,"handles":[[0,0,0,0]],"fiber":0}"#).is_err());
    }

    #[test]
    fn move_literals() {
        for text in ["Rz(1)", "Rzx(1,2)^-1", "Dxy(2)^5", "Fy", "Ft^-3", "SignFlip(-1,+1)", "MirrorH"] {
            let m = parse_move(text).unwrap();
            assert_eq!(m.to_string(), text);
        }
        assert_eq!(parse_move(" Rzz( 1 , 2 ) ^ 2 ").unwrap().to_string(), "Rzz(1,2)^2");
        for bad in ["", "Rq(1)", "Rz", "Rz(1", "Rz(1)^0", "Fy(1)", "SignFlip(2)", "Rzz(1)"] {
            assert!(parse_move(bad).is_err(), "{bad}");
        }
        let w = parse_word(r#"["Dxy(1)", "Rx(1)^-1", "Rz(1)^-1"]"#).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(word_to_value(&w).to_string(), r#"["Dxy(1)","Rx(1)^-1","Rz(1)^-1"]"#);
    }
}
