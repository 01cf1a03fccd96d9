use quotient_codes::{CodeMatrix, FMatrix, Poly, QuotRing};
use serde_json::{json, Value};

/// Ascending coefficients with trailing zeros stripped; zero is `[0]`.
pub fn poly(p: &Poly) -> Value {
    if p.is_zero() {
        json!([0])
    } else {
        json!(p.coeffs())
    }
}

pub fn rows(m: &CodeMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(poly).collect()))
            .collect(),
    )
}

pub fn header(r: &QuotRing) -> serde_json::Map<String, Value> {
    let mut obj = serde_json::Map::new();
    obj.insert("q".into(), json!(r.q()));
    obj.insert("f".into(), poly(r.modulus()));
    obj
}

pub fn matrix(m: &CodeMatrix) -> Value {
    let mut obj = header(m.ring());
    obj.insert("rows".into(), rows(m));
    Value::Object(obj)
}

pub fn text(m: &CodeMatrix) -> String {
    if m.nrows() == 0 {
        "# zero code\n".into()
    } else {
        m.to_text()
    }
}

/// `F`-matrix rows with each block of `m` coordinates separated by `|`.
pub fn fmatrix_text(fm: &FMatrix, m: usize) -> String {
    let mut out = String::new();
    for row in fm.rows() {
        let blocks: Vec<String> = row
            .chunks(m)
            .map(|b| {
                b.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push_str(&blocks.join(" | "));
        out.push('\n');
    }
    out
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
