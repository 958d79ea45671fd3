use std::fmt::Write;

use crate::calculus::Variance;

use super::{Arg, Item, StructureFile, Value};

fn list(names: &[String]) -> String {
    format!("[{}]", names.join(", "))
}

/// Canonical text for a structure file; zero entries are omitted.
pub fn serialize(file: &StructureFile) -> String {
    let mut out = String::new();
    for item in &file.items {
        match item {
            Item::Algebroid { name, algebroid: a } => {
                let coords: Vec<String> = a.coords().iter().map(|c| c.to_string()).collect();
                writeln!(out, "algebroid {name} {{").unwrap();
                writeln!(out, "  base = {};", list(&coords)).unwrap();
                writeln!(out, "  rank = {};", a.rank()).unwrap();
                for i in 0..a.rank() {
                    for (k, x) in coords.iter().enumerate() {
                        let v = a.anchor_entry(i, k);
                        if !v.is_zero() {
                            writeln!(out, "  anchor[{}, {x}] = {v};", i + 1).unwrap();
                        }
                    }
                }
                for i in 0..a.rank() {
                    for j in i + 1..a.rank() {
                        let terms: Vec<String> = (0..a.rank())
                            .filter(|&k| !a.structure(i, j, k).is_zero())
                            .map(|k| format!("({})*e{}", a.structure(i, j, k), k + 1))
                            .collect();
                        if !terms.is_empty() {
                            writeln!(out, "  bracket[{}, {}] = {};", i + 1, j + 1, terms.join(" + ")).unwrap();
                        }
                    }
                }
                writeln!(out, "}}").unwrap();
            }
            Item::Tensor { name, on, section } => {
                let variance = match section.variance() {
                    Variance::Multivector => "multivector",
                    Variance::Form => "form",
                };
                writeln!(out, "tensor {name} on {on} {variance} degree {} {{", section.degree()).unwrap();
                for (idx, v) in section.terms() {
                    let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                    writeln!(out, "  ({}) = {v};", idx.join(", ")).unwrap();
                }
                writeln!(out, "}}").unwrap();
            }
            Item::Endo { name, on, endo } => {
                writeln!(out, "endo {name} on {on} {{").unwrap();
                for (i, row) in endo.rows().iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            writeln!(out, "  [{}, {}] = {v};", i + 1, j + 1).unwrap();
                        }
                    }
                }
                writeln!(out, "}}").unwrap();
            }
            Item::Morphism {
                name,
                source,
                target,
                morphism,
            } => {
                writeln!(out, "morphism {name} : {source} -> {target} {{").unwrap();
                for (y, v) in morphism.target().coords().iter().zip(morphism.base_map()) {
                    writeln!(out, "  base[{y}] = {v};").unwrap();
                }
                for (i, row) in morphism.matrix().iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            writeln!(out, "  matrix[{}, {}] = {v};", i + 1, j + 1).unwrap();
                        }
                    }
                }
                writeln!(out, "}}").unwrap();
            }
            Item::Paired {
                name, on, n, pi, sigma, ..
            } => {
                writeln!(out, "paired {name} on {on} {{ N = {n}; pi = {pi}; sigma = {sigma}; }}").unwrap();
            }
            Item::Task(t) => {
                let mut line = format!("task {}", t.name);
                for a in &t.args {
                    match a {
                        Arg::Positional(n) => write!(line, " {n}").unwrap(),
                        Arg::Keyed(k, Value::Name(n)) => write!(line, " {k}={n}").unwrap(),
                        Arg::Keyed(k, Value::List(ns)) => write!(line, " {k}={}", list(ns)).unwrap(),
                    }
                }
                writeln!(out, "{line};").unwrap();
            }
        }
    }
    out
}
