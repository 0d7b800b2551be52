//! Module file format.
//!
//! ```text
//! quiver: n4.quiver
//! dim: 1 2 3 1
//! arrow a: 1 0
//! arrow b: 1 0; 0 1; 0 0
//! ```
//!
//! Matrices are row-major with rows separated by `;`. The quiver path is
//! resolved relative to the module file by the caller.

use std::sync::Arc;

use super::Representation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{parse::parse_scalar, BoundQuiver};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message: message.into(),
    }
}

/// The `quiver:` header of a module file, if present.
pub fn module_quiver_ref(text: &str) -> Option<String> {
    text.lines().find_map(|l| {
        let l = l.split('#').next()?.trim();
        l.strip_prefix("quiver:").map(|r| r.trim().to_string())
    })
}

pub fn parse_module(text: &str, quiver: Arc<BoundQuiver>) -> Result<Representation> {
    let mut dims = None;
    let mut maps: Vec<Option<Matrix>> = vec![None; quiver.arrows().len()];
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(syntax(line_no, "expected `key: value`"));
        };
        let key = key.trim();
        if key == "quiver" {
            continue;
        } else if key == "dim" {
            let ds = value
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| syntax(line_no, format!("bad dimension `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            dims = Some(quiver.dim_vector(&ds)?);
        } else if let Some(id) = key.strip_prefix("arrow") {
            let a = quiver.arrow_index(id.trim())?;
            let dims = dims.as_ref().ok_or_else(|| syntax(line_no, "`dim:` must precede arrows"))?;
            let arrow = &quiver.arrows()[a];
            let (r, c) = (dims.0[arrow.target], dims.0[arrow.source]);
            let mut data = Vec::with_capacity(r * c);
            let value = value.trim();
            let rows: Vec<&str> = if value.is_empty() { Vec::new() } else { value.split(';').collect() };
            if r * c > 0 && rows.len() != r {
                return Err(syntax(line_no, format!("arrow {} needs {r} rows", arrow.id)));
            }
            for row in &rows {
                let entries: Vec<&str> = row.split_whitespace().collect();
                if entries.len() != c {
                    return Err(syntax(line_no, format!("arrow {} needs {c} columns", arrow.id)));
                }
                for e in entries {
                    data.push(parse_scalar(e).ok_or_else(|| syntax(line_no, format!("bad scalar `{e}`")))?);
                }
            }
            if data.len() != r * c {
                return Err(syntax(line_no, format!("arrow {} needs a {r}x{c} matrix", arrow.id)));
            }
            if maps[a].is_some() {
                return Err(Error::DuplicateId(arrow.id.clone()));
            }
            maps[a] = Some(Matrix::from_vec(r, c, data));
        } else {
            return Err(syntax(line_no, format!("unknown key `{key}`")));
        }
    }
    let dims = dims.ok_or_else(|| syntax(1, "missing `dim:` line"))?;
    let maps = maps
        .into_iter()
        .zip(quiver.arrows())
        .map(|(m, a)| m.unwrap_or_else(|| Matrix::zeros(dims.0[a.target], dims.0[a.source])))
        .collect();
    Representation::new(quiver, dims, maps)
}

/// Canonical text; every arrow is listed, in declaration order.
pub fn write_module(m: &Representation, quiver_ref: &str) -> String {
    let mut out = format!("quiver: {quiver_ref}\ndim:");
    for d in &m.dims().0 {
        out.push_str(&format!(" {d}"));
    }
    out.push('\n');
    for (a, mat) in m.quiver().arrows().iter().zip(m.maps()) {
        out.push_str(&format!("arrow {}:", a.id));
        let rows: Vec<String> = (0..mat.rows())
            .map(|r| mat.row(r).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        if mat.rows() > 0 && mat.cols() > 0 {
            out.push(' ');
            out.push_str(&rows.join("; "));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip() {
        let q = Arc::new(fixtures::n4());
        let text = "quiver: n4.quiver\ndim: 1 2 1 0\narrow a: 1; -1/2\narrow b: 0 0\narrow c:\n";
        let m = parse_module(text, q.clone()).unwrap();
        assert_eq!(m.map(0)[(1, 0)], parse_scalar("-1/2").unwrap());
        let canon = write_module(&m, "n4.quiver");
        assert_eq!(canon, text);
        assert_eq!(parse_module(&canon, q).unwrap(), m);
        assert_eq!(module_quiver_ref(text).as_deref(), Some("n4.quiver"));
    }

    #[test]
    fn omitted_arrows_are_zero_and_relations_checked() {
        let q = Arc::new(fixtures::a3r());
        let m = parse_module("dim: 1 1 1\narrow a: 1\n", q.clone()).unwrap();
        assert!(m.map(1).is_zero());
        let err = parse_module("dim: 1 1 1\narrow a: 1\narrow b: 1\n", q.clone()).unwrap_err();
        assert_eq!(err, Error::RelationViolated("b*a".into()));
        assert!(matches!(
            parse_module("dim: 1 1 1\narrow a: 1 2\n", q).unwrap_err(),
            Error::Syntax { line: 2, .. }
        ));
    }
}
