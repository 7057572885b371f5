use std::fs;
use std::io::Read;
use std::path::Path;

use turex_core::{make_catalog_tree, make_t, FamilyParams, Graph, RootedGraph};

use crate::Failure;

/// Reads a path, or stdin for `-`.
pub fn read_source(src: &str) -> Result<String, Failure> {
    if src == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read_to_string(Path::new(src)).map_err(|e| Failure::input(format!("reading {src}: {e}")))
}

/// `s,t,s'` as used by `--t`.
pub fn parse_params(spec: &str) -> Result<FamilyParams, Failure> {
    let nums: Vec<u64> = spec
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::input(format!("expected s,t,s' but got {spec:?}")))?;
    match nums[..] {
        [s, t, sp] => Ok(FamilyParams::new(s, t, sp)?),
        _ => Err(Failure::input(format!(
            "expected three numbers, got {spec:?}"
        ))),
    }
}

/// A rooted graph from `--t`, `--catalog`, or a JSON file (stdin by default).
pub fn rooted(
    file: Option<&str>,
    t: Option<&str>,
    catalog: Option<&str>,
) -> Result<RootedGraph, Failure> {
    if let Some(t) = t {
        return Ok(make_t(parse_params(t)?)?);
    }
    if let Some(kind) = catalog {
        return Ok(make_catalog_tree(kind.parse()?)?);
    }
    Ok(RootedGraph::from_json_str(&read_source(
        file.unwrap_or("-"),
    )?)?)
}

/// A host graph: a built-in name when one matches, else a JSON file.
pub fn graph(spec: &str) -> Result<Graph, Failure> {
    if let Some(g) = Graph::named(spec) {
        return Ok(g);
    }
    if spec != "-" && !Path::new(spec).exists() {
        return Err(Failure::input(format!(
            "{spec:?} is neither a built-in graph nor a file"
        )));
    }
    Ok(Graph::from_json_str(&read_source(spec)?)?)
}

/// A rooted pattern: a JSON file, or a built-in name (unrooted).
pub fn pattern(spec: &str) -> Result<RootedGraph, Failure> {
    if spec == "-" || Path::new(spec).exists() {
        return Ok(RootedGraph::from_json_str(&read_source(spec)?)?);
    }
    Graph::named(spec)
        .map(RootedGraph::unrooted)
        .ok_or_else(|| Failure::input(format!("{spec:?} is neither a file nor a built-in graph")))
}

/// `v:w,v:w,...` pairs for a partial assignment.
pub fn pairs(spec: &str) -> Result<Vec<(usize, usize)>, Failure> {
    spec.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (v, w) = p
                .split_once(':')
                .ok_or_else(|| Failure::input(format!("expected v:w, got {p:?}")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Failure::input(format!("bad vertex in {p:?}")))?;
            let w = w
                .trim()
                .parse()
                .map_err(|_| Failure::input(format!("bad image in {p:?}")))?;
            Ok((v, w))
        })
        .collect()
}
