//! Output documents: JSON objects and commented CSV, both carrying the tool
//! version and the resolved configuration. Numbers are written in
//! scientific notation with 17 significant digits.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use hardcore::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

pub const TOOL: &str = "hardcore";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `x` with 17 significant digits, e.g. `1.5000000000000000e0`.
pub fn sci(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Exact rational rounded half-up to 17 significant digits, in the same
/// layout as [`sci`]; works far outside the `f64` range.
pub fn rational_sci(q: &Rational) -> String {
    if q.is_zero() {
        return sci(0.0);
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let num = q.numer().abs();
    let den = q.denom().clone();
    let ten = BigInt::from(10);
    let digits = |x: &BigInt| x.to_string().len() as i64;
    // 10^e ≤ num/den < 10^(e+1)
    let mut e = digits(&num) - digits(&den);
    let scaled = |e: i64| -> (BigInt, BigInt) {
        if e >= 0 {
            (num.clone(), &den * ten.pow(e as u32))
        } else {
            (&num * ten.pow((-e) as u32), den.clone())
        }
    };
    let (a, b) = scaled(e);
    if a < b {
        e -= 1;
    }
    let (a, b) = scaled(e - 16);
    let mut mantissa: BigInt = (&a * 2 + &b) / (&b * 2);
    if mantissa >= ten.pow(17) {
        mantissa /= 10;
        e += 1;
    }
    let m = mantissa.to_string();
    format!("{sign}{}.{}e{e}", &m[..1], &m[1..])
}

/// A JSON number from already formatted text; non-finite values become null.
pub fn number_value(text: &str) -> Value {
    serde_json::from_str::<serde_json::Number>(text).map_or(Value::Null, Value::Number)
}

pub fn num(x: f64) -> Value {
    number_value(&sci(x))
}

/// Scalars the harness can print.
pub trait Emit: Scalar {
    fn text(&self) -> String;

    /// Exact representation, for scalars that have one.
    fn exact(&self) -> Option<String>;

    fn value(&self) -> Value {
        number_value(&self.text())
    }
}

impl Emit for f64 {
    fn text(&self) -> String {
        sci(*self)
    }

    fn exact(&self) -> Option<String> {
        None
    }
}

impl Emit for Rational {
    fn text(&self) -> String {
        rational_sci(self)
    }

    fn exact(&self) -> Option<String> {
        Some(self.to_string())
    }
}

/// Inserts `key` (formatted) and, in exact mode, `key_exact`.
pub fn put<T: Emit>(obj: &mut serde_json::Map<String, Value>, key: &str, x: &T) {
    obj.insert(key.to_string(), x.value());
    if let Some(s) = x.exact() {
        obj.insert(format!("{key}_exact"), Value::String(s));
    }
}

pub fn json_document(command: &str, config: Value, result: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "config": config,
        "result": result,
    })
}

/// CSV preceded by `#` lines naming the tool, command and configuration.
pub fn csv_document(command: &str, config: &Value, header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut out = Vec::new();
    writeln!(out, "# {TOOL} {VERSION}")?;
    writeln!(out, "# command: {command}")?;
    writeln!(out, "# config: {}", serde_json::to_string(config)?)?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(String::from_utf8(out)?)
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn pretty(doc: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}
