//! Loading command arguments: inline text, inline JSON or `@path` files.

use std::fs;

use mvduality::algebra::{chain, product, FiniteMVAlgebra};
use mvduality::json::Json;
use mvduality::mcnaughton::{compile, PlFunction};
use mvduality::terms::{parse_relation, parse_term, Presentation, Term};

use crate::CliError;

/// Reads `@path` from disk; anything else is returned as is.
pub fn text(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// A JSON document given inline or as `@path`.
pub fn json<T: Json>(arg: &str) -> Result<T, CliError> {
    let body = text(arg)?;
    T::from_json_str(&body).map_err(|e| match arg.strip_prefix('@') {
        Some(path) if e.is_input_error() => CliError::Input(format!("{path}: {e}")),
        _ => e.into(),
    })
}

pub fn term(arg: &str) -> Result<Term, CliError> {
    Ok(parse_term(text(arg)?.trim())?)
}

/// A McNaughton function: `@path` holds its JSON, anything else is a term.
pub fn function(arg: &str, arity: usize) -> Result<PlFunction, CliError> {
    if arg.starts_with('@') {
        json(arg)
    } else {
        Ok(compile(&term(arg)?, arity)?)
    }
}

/// Arity of a function argument, 0 for files (their arity is recorded).
pub fn function_arity(arg: &str) -> Result<usize, CliError> {
    if arg.starts_with('@') {
        Ok(json::<PlFunction>(arg)?.arity())
    } else {
        Ok(term(arg)?.arity())
    }
}

pub fn presentation(arity: Option<usize>, rels: &[String], file: Option<&str>) -> Result<Presentation, CliError> {
    if let Some(f) = file {
        return json(f);
    }
    let pairs = rels.iter().map(|r| parse_relation(r)).collect::<Result<Vec<_>, _>>()?;
    let needed = pairs.iter().map(|(s, t)| s.arity().max(t.arity())).max().unwrap_or(0);
    let n = match arity {
        Some(n) => n,
        None if needed == 0 && rels.is_empty() => {
            return Err(CliError::Input("give --arity or at least one --rel".into()));
        }
        None => needed,
    };
    Ok(Presentation::new(n, pairs)?)
}

/// Operands in command-line order of kind: every `--chain` first, then every
/// `--algebra`.
pub fn algebras(chains: &[usize], files: &[String]) -> Result<Vec<FiniteMVAlgebra>, CliError> {
    let mut out = chains.iter().map(|&n| chain(n)).collect::<Result<Vec<_>, _>>()?;
    for f in files {
        out.push(json(f)?);
    }
    Ok(out)
}

pub fn one_algebra(chains: &[usize], files: &[String]) -> Result<FiniteMVAlgebra, CliError> {
    let all = algebras(chains, files)?;
    let mut it = all.into_iter();
    let first = it.next().ok_or_else(|| CliError::Input("give --chain or --algebra".into()))?;
    Ok(it.fold(first, |a, b| product(&a, &b)))
}

pub fn two_algebras(chains: &[usize], files: &[String]) -> Result<(FiniteMVAlgebra, FiniteMVAlgebra), CliError> {
    let all = algebras(chains, files)?;
    match <[FiniteMVAlgebra; 2]>::try_from(all) {
        Ok([a, b]) => Ok((a, b)),
        Err(v) => Err(CliError::Input(format!("expected two algebras, got {}", v.len()))),
    }
}

pub fn indices(arg: &str) -> Result<Vec<usize>, CliError> {
    if arg.trim().is_empty() {
        return Ok(Vec::new());
    }
    arg.split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Input(format!("bad index {s:?}"))))
        .collect()
}
