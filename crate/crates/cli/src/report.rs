//! Hand-rolled JSON rendering with a fixed floating-point format so that
//! identical configs give byte-identical reports. Objects keep insertion
//! order; every float carries 17 significant digits.

use std::fs;
use std::path::Path;

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("\"{x}\"")
    }
}

pub fn int<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

pub fn boolean(b: bool) -> String {
    b.to_string()
}

pub fn string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn array<I: IntoIterator<Item = String>>(items: I) -> String {
    let inner: Vec<String> = items.into_iter().collect();
    format!("[{}]", inner.join(","))
}

pub fn reals(v: &[f64]) -> String {
    array(v.iter().map(|&x| num(x)))
}

pub fn complex(z: mmtop::C64) -> String {
    array([num(z.re), num(z.im)])
}

#[derive(Default)]
pub struct Obj {
    fields: Vec<String>,
}

impl Obj {
    pub fn new() -> Self {
        Obj::default()
    }

    pub fn field(mut self, key: &str, rendered: impl Into<String>) -> Self {
        self.fields.push(format!("{}:{}", string(key), rendered.into()));
        self
    }

    pub fn finish(self) -> String {
        format!("{{{}}}", self.fields.join(","))
    }
}

/// Standard report wrapper shared by the subcommands.
pub fn wrap(command: &str, config: String, results: String) -> String {
    Obj::new()
        .field("version", string(mmtop::version()))
        .field("command", string(command))
        .field("config", config)
        .field("results", results)
        .finish()
}

/// Prints the payload on stdout and mirrors it to `out` when given.
pub fn emit(payload: &str, out: Option<&Path>) -> Result<(), String> {
    println!("{payload}");
    if let Some(path) = out {
        fs::write(path, format!("{payload}\n"))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}
