//! JSON and CSV writers with fixed formatting.
//!
//! JSON objects come out with sorted keys and every float in `{:.16e}` form
//! (17 significant digits), so identical runs give identical bytes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};
use sg_tadpole::{Grid, Params};

use crate::CliError;

/// Pretty printer with fixed-width floats.
struct FixedFloats<'a>(PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident),*) => {
        $(fn $name<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
            self.0.$name(w)
        })*
    };
}

impl Formatter for FixedFloats<'_> {
    delegate!(begin_array, end_array, begin_object, end_object, begin_object_value, end_array_value, end_object_value);

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{}", fmt_float(v))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

/// `{:.16e}`, the format shared by JSON and CSV output.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serializes through [`Value`], whose maps keep keys sorted.
pub fn to_json_string<S: Serialize>(v: &S) -> Result<String, CliError> {
    let value = serde_json::to_value(v).map_err(|e| CliError::Io(e.to_string()))?;
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser).map_err(|e| CliError::Io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))
}

pub fn write_json<S: Serialize>(path: &Path, v: &S) -> Result<(), CliError> {
    fs::write(path, to_json_string(v)?).map_err(|e| CliError::io(path, e))
}

/// Writes a header and rows of floats and labels with LF line endings.
pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    w.write_record(header).map_err(|e| CliError::Io(e.to_string()))?;
    for r in rows {
        w.write_record(&r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Defaults and the grid actually used, recorded in every JSON output.
pub fn metadata(g: Option<&Params>, d: Option<&Grid>, tol_zero: Option<f64>) -> Value {
    let mut m = json!({
        "tool": "sg-tadpole",
        "version": env!("CARGO_PKG_VERSION"),
        "defaults": {
            "grid_h": "1e-3 * min(L, c2)",
            "grid_R": "40 * c2",
            "tol_zero": "max(1e-8, 5 h^2 sup|V|)",
            "near_edge": "[edge - 10 h, edge)",
            "extrapolation": "(4 lambda(h/2) - lambda(h)) / 3",
        },
    });
    if let Some(g) = g {
        m["strength_bound"] = json!(g.strength_bound());
    }
    if let Some(d) = d {
        m["grid"] = json!({
            "h": d.h,
            "radius": d.radius,
            "n_loop": d.n_loop,
            "n_tail": d.n_tail,
        });
    }
    if let Some(t) = tol_zero {
        m["tol_zero"] = json!(t);
    }
    m
}
