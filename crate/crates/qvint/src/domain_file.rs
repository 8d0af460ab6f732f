//! Plain-text domain files.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! q=2^2 n=3 modulus=1,1,1
//! 1,0,0
//! 1,0:1,1:1
//! ```
//!
//! The header names the field (`q=<q>` or `q=<p>^<r>`, optional `modulus=`
//! coefficients with the constant first) and the dimension. Each further line
//! is one vector in the syntax of [`crate::config::parse_vector`].

use std::fs;
use std::path::Path;

use qvint_core::Domain;

use crate::config::{format_vector, parse_vector, FieldSpec};
use crate::error::{usage, Result};

pub fn parse(text: &str) -> Result<Domain> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| usage("domain file has no header"))?;

    let (mut q, mut n, mut modulus) = (None, None, None);
    for item in header.split_whitespace() {
        match item.split_once('=') {
            Some(("q", v)) => q = Some(v),
            Some(("n", v)) => {
                n = Some(
                    v.parse::<usize>()
                        .map_err(|_| usage(format!("invalid dimension {v:?}")))?,
                )
            }
            Some(("modulus", v)) => modulus = Some(v),
            _ => return Err(usage(format!("unknown header item {item:?}"))),
        }
    }
    let q = q.ok_or_else(|| usage("domain file header needs q=..."))?;
    let n = n.ok_or_else(|| usage("domain file header needs n=..."))?;
    let field = FieldSpec::parse(q, modulus)?.build()?;

    let mut vectors = Vec::new();
    for (line_no, line) in lines {
        let v = parse_vector(&field, line)
            .map_err(|e| usage(format!("line {line_no}: {e}")))?;
        if v.len() != n {
            return Err(usage(format!(
                "line {line_no}: vector has {} entries, header says n={n}",
                v.len()
            )));
        }
        vectors.push(v);
    }
    Ok(Domain::explicit(&field, vectors)?)
}

pub fn read(path: &Path) -> Result<Domain> {
    parse(&fs::read_to_string(path)?)
}

pub fn render(domain: &Domain) -> String {
    let field = domain.field();
    let params = field.params();
    let modulus: Vec<String> = params.modulus().iter().map(|c| c.to_string()).collect();
    let mut out = format!(
        "q={}^{} n={} modulus={}\n",
        params.p(),
        params.r(),
        domain.dim(),
        modulus.join(",")
    );
    for v in domain.vectors() {
        out.push_str(&format_vector(field, v));
        out.push('\n');
    }
    out
}

pub fn write(path: &Path, domain: &Domain) -> Result<()> {
    fs::write(path, render(domain))?;
    Ok(())
}
