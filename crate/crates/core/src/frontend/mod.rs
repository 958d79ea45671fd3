//! The `.alg` structure-file format: parsing, serialization and the task
//! runner.

mod run;
mod write;

use std::collections::HashMap;

use crate::calculus::{Algebroid, BundleMorphism, Endo, GradedSection, Variance};
use crate::coeff::{RationalFunction, Var};
use crate::error::{Error, Result};
use crate::paired::PairedOperator;
use crate::syntax::{parse_expr, tokenize, Cursor};

pub use run::{run, RunConfig};
pub use write::serialize;

type RF = RationalFunction;

pub const TASKS: [&str; 16] = [
    "check-axioms",
    "check-twisted-poisson",
    "check-compatible",
    "check-pqn",
    "build-qlb",
    "check-qlb",
    "check-qlb-morphism",
    "verify-lemma-tnstar",
    "verify-courant",
    "check-generalized-dirac",
    "check-split-dirac",
    "build-morphism-graph",
    "check-paired",
    "check-torsion-blocks",
    "check-gc",
    "build-deformed-double",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Name(String),
    List(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Positional(String),
    Keyed(String, Value),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub name: String,
    pub args: Vec<Arg>,
}

impl Task {
    pub fn positional(&self) -> Vec<&str> {
        self.args
            .iter()
            .filter_map(|a| match a {
                Arg::Positional(n) => Some(n.as_str()),
                Arg::Keyed(..) => None,
            })
            .collect()
    }

    pub fn keyed(&self, key: &str) -> Option<&Value> {
        self.args.iter().find_map(|a| match a {
            Arg::Keyed(k, v) if k == key => Some(v),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Algebroid {
        name: String,
        algebroid: Algebroid,
    },
    Tensor {
        name: String,
        on: String,
        section: GradedSection,
    },
    Endo {
        name: String,
        on: String,
        endo: Endo,
    },
    Morphism {
        name: String,
        source: String,
        target: String,
        morphism: BundleMorphism,
    },
    Paired {
        name: String,
        on: String,
        n: String,
        pi: String,
        sigma: String,
        op: PairedOperator,
    },
    Task(Task),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebroid,
    Tensor,
    Endo,
    Morphism,
    Paired,
    Qlb,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureFile {
    pub items: Vec<Item>,
}

impl StructureFile {
    pub fn tasks(&self) -> impl Iterator<Item = &Task> {
        self.items.iter().filter_map(|i| match i {
            Item::Task(t) => Some(t),
            _ => None,
        })
    }

    pub fn algebroid(&self, name: &str) -> Option<&Algebroid> {
        self.items.iter().find_map(|i| match i {
            Item::Algebroid { name: n, algebroid } if n == name => Some(algebroid),
            _ => None,
        })
    }

    /// A tensor together with the name of its algebroid.
    pub fn tensor(&self, name: &str) -> Option<(&str, &GradedSection)> {
        self.items.iter().find_map(|i| match i {
            Item::Tensor { name: n, on, section } if n == name => Some((on.as_str(), section)),
            _ => None,
        })
    }

    pub fn endo(&self, name: &str) -> Option<(&str, &Endo)> {
        self.items.iter().find_map(|i| match i {
            Item::Endo { name: n, on, endo } if n == name => Some((on.as_str(), endo)),
            _ => None,
        })
    }

    pub fn morphism(&self, name: &str) -> Option<&BundleMorphism> {
        self.items.iter().find_map(|i| match i {
            Item::Morphism { name: n, morphism, .. } if n == name => Some(morphism),
            _ => None,
        })
    }

    pub fn paired(&self, name: &str) -> Option<(&str, &PairedOperator)> {
        self.items.iter().find_map(|i| match i {
            Item::Paired { name: n, on, op, .. } if n == name => Some((on.as_str(), op)),
            _ => None,
        })
    }
}

fn semantic(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Semantic(format!("line {line}: {msg}"))
}

struct Parser<'a> {
    cur: Cursor<'a>,
    kinds: HashMap<String, Kind>,
    file: StructureFile,
}

/// Parses a structure file. Syntax errors carry a line and column; unknown
/// names, out-of-range indices and ill-formed declarations are semantic
/// errors.
pub fn parse(text: &str) -> Result<StructureFile> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        cur: Cursor::new(&toks),
        kinds: HashMap::new(),
        file: StructureFile::default(),
    };
    while !p.cur.at_eof() {
        p.item()?;
    }
    Ok(p.file)
}

fn is_frame_name(s: &str) -> Option<usize> {
    s.strip_prefix('e')
        .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
        .and_then(|d| d.parse().ok())
}

impl<'a> Parser<'a> {
    fn line(&self) -> usize {
        self.cur.peek().line
    }

    fn item(&mut self) -> Result<()> {
        let line = self.line();
        let kw = self.cur.expect_ident().map_err(|_| {
            self.cur
                .error("'algebroid', 'tensor', 'endo', 'morphism', 'paired' or 'task'")
        })?;
        match kw.as_str() {
            "algebroid" => self.algebroid(),
            "tensor" => self.tensor(),
            "endo" => self.endo(),
            "morphism" => self.morphism(),
            "paired" => self.paired(),
            "task" => self.task(),
            _ => Err(Error::Parse {
                line,
                column: self.cur.peek().col,
                expected: "'algebroid', 'tensor', 'endo', 'morphism', 'paired' or 'task'".into(),
            }),
        }
    }

    fn declare(&mut self, line: usize, name: &str, kind: Kind) -> Result<()> {
        if self.kinds.contains_key(name) {
            return Err(semantic(line, format_args!("`{name}` is already declared")));
        }
        self.kinds.insert(name.to_string(), kind);
        Ok(())
    }

    fn lookup(&self, line: usize, name: &str, kind: Kind) -> Result<()> {
        match self.kinds.get(name) {
            Some(k) if *k == kind => Ok(()),
            Some(k) => Err(semantic(line, format_args!("`{name}` is a {k:?}, expected a {kind:?}"))),
            None => Err(semantic(line, format_args!("`{name}` is not declared"))),
        }
    }

    fn algebroid_named(&self, line: usize, name: &str) -> Result<Algebroid> {
        self.lookup(line, name, Kind::Algebroid)?;
        Ok(self.file.algebroid(name).expect("declared").clone())
    }

    /// An expression over `coords`, with e1..e`frame` as extra formal symbols.
    fn expr(&mut self, coords: &[Var], frame: usize) -> Result<RF> {
        let line = self.line();
        let resolve = |name: &str| {
            if coords.iter().any(|c| c.as_ref() == name) {
                return Some(RF::var(name));
            }
            is_frame_name(name).filter(|k| (1..=frame).contains(k)).map(|_| RF::var(name))
        };
        parse_expr(&mut self.cur, &resolve).map_err(|e| match e {
            Error::UnknownCoordinate(n) => semantic(line, format_args!("unknown name `{n}` in expression")),
            other => other,
        })
    }

    fn index(&mut self, bound: usize) -> Result<usize> {
        let line = self.line();
        let k = self.cur.expect_usize()?;
        if k == 0 || k > bound {
            return Err(semantic(line, format_args!("index {k} is outside 1..{bound}")));
        }
        Ok(k - 1)
    }

    fn names(&mut self) -> Result<Vec<String>> {
        self.cur.expect_sym("[")?;
        let mut out = Vec::new();
        if !self.cur.is_sym("]") {
            out.push(self.cur.expect_ident()?);
            while self.cur.is_sym(",") {
                self.cur.advance();
                out.push(self.cur.expect_ident()?);
            }
        }
        self.cur.expect_sym("]")?;
        Ok(out)
    }

    fn algebroid(&mut self) -> Result<()> {
        let line = self.line();
        let name = self.cur.expect_ident()?;
        self.cur.expect_sym("{")?;
        self.cur.expect_keyword("base")?;
        self.cur.expect_sym("=")?;
        let base = self.names()?;
        self.cur.expect_sym(";")?;
        for (i, b) in base.iter().enumerate() {
            if is_frame_name(b).is_some() {
                return Err(semantic(line, format_args!("coordinate `{b}` clashes with a frame name")));
            }
            if base[..i].contains(b) {
                return Err(semantic(line, format_args!("coordinate `{b}` is repeated")));
            }
        }
        self.cur.expect_keyword("rank")?;
        self.cur.expect_sym("=")?;
        let rline = self.line();
        let rank = self.cur.expect_usize()?;
        if rank == 0 {
            return Err(semantic(rline, "rank must be at least 1"));
        }
        self.cur.expect_sym(";")?;
        let coords: Vec<Var> = base.iter().map(|s| Var::from(s.as_str())).collect();
        let mut anchor = vec![vec![RF::zero(); coords.len()]; rank];
        while self.cur.is_ident("anchor") {
            self.cur.advance();
            self.cur.expect_sym("[")?;
            let i = self.index(rank)?;
            self.cur.expect_sym(",")?;
            let l = self.line();
            let x = self.cur.expect_ident()?;
            let a = base
                .iter()
                .position(|b| *b == x)
                .ok_or_else(|| semantic(l, format_args!("`{x}` is not a coordinate of `{name}`")))?;
            self.cur.expect_sym("]")?;
            self.cur.expect_sym("=")?;
            anchor[i][a] = self.expr(&coords, 0)?;
            self.cur.expect_sym(";")?;
        }
        let mut entries = Vec::new();
        while self.cur.is_ident("bracket") {
            self.cur.advance();
            let l = self.line();
            self.cur.expect_sym("[")?;
            let i = self.index(rank)?;
            self.cur.expect_sym(",")?;
            let j = self.index(rank)?;
            self.cur.expect_sym("]")?;
            self.cur.expect_sym("=")?;
            if i == j {
                return Err(semantic(l, "bracket of a frame element with itself is zero"));
            }
            let comb = self.expr(&coords, rank)?;
            self.cur.expect_sym(";")?;
            let coeffs = frame_coefficients(&comb, rank).map_err(|m| semantic(l, m))?;
            for (k, c) in coeffs.into_iter().enumerate() {
                if i < j {
                    entries.push((i, j, k, c));
                } else {
                    entries.push((j, i, k, -c));
                }
            }
        }
        self.cur.expect_sym("}")?;
        let algebroid = Algebroid::from_upper(coords, anchor, entries).map_err(|e| semantic(line, e))?;
        self.declare(line, &name, Kind::Algebroid)?;
        self.file.items.push(Item::Algebroid { name, algebroid });
        Ok(())
    }

    fn tensor(&mut self) -> Result<()> {
        let line = self.line();
        let name = self.cur.expect_ident()?;
        self.cur.expect_keyword("on")?;
        let on = self.cur.expect_ident()?;
        let a = self.algebroid_named(line, &on)?;
        let variance = if self.cur.is_ident("multivector") {
            Variance::Multivector
        } else if self.cur.is_ident("form") {
            Variance::Form
        } else {
            return Err(self.cur.error("'multivector' or 'form'"));
        };
        self.cur.advance();
        self.cur.expect_keyword("degree")?;
        let dline = self.line();
        let degree = self.cur.expect_usize()?;
        if degree > a.rank() {
            return Err(semantic(dline, format_args!("degree {degree} exceeds rank {}", a.rank())));
        }
        self.cur.expect_sym("{")?;
        let mut section = GradedSection::zero(variance, a.rank(), degree);
        while self.cur.is_sym("(") {
            let l = self.line();
            self.cur.advance();
            let mut idx = Vec::new();
            if !self.cur.is_sym(")") {
                idx.push(self.index(a.rank())?);
                while self.cur.is_sym(",") {
                    self.cur.advance();
                    idx.push(self.index(a.rank())?);
                }
            }
            self.cur.expect_sym(")")?;
            self.cur.expect_sym("=")?;
            let v = self.expr(a.coords(), 0)?;
            self.cur.expect_sym(";")?;
            if idx.len() != degree {
                return Err(semantic(l, format_args!("expected {degree} indices, found {}", idx.len())));
            }
            let sorted = crate::calculus::section::sort_sign(&idx)
                .ok_or_else(|| semantic(l, "repeated index in an alternating tensor"))?;
            section.add_to(&sorted.1, &(&v * &RF::integer(sorted.0)));
        }
        self.cur.expect_sym("}")?;
        self.declare(line, &name, Kind::Tensor)?;
        self.file.items.push(Item::Tensor { name, on, section });
        Ok(())
    }

    fn endo(&mut self) -> Result<()> {
        let line = self.line();
        let name = self.cur.expect_ident()?;
        self.cur.expect_keyword("on")?;
        let on = self.cur.expect_ident()?;
        let a = self.algebroid_named(line, &on)?;
        let r = a.rank();
        self.cur.expect_sym("{")?;
        let mut m = vec![vec![RF::zero(); r]; r];
        while self.cur.is_sym("[") {
            self.cur.advance();
            let i = self.index(r)?;
            self.cur.expect_sym(",")?;
            let j = self.index(r)?;
            self.cur.expect_sym("]")?;
            self.cur.expect_sym("=")?;
            m[i][j] = self.expr(a.coords(), 0)?;
            self.cur.expect_sym(";")?;
        }
        self.cur.expect_sym("}")?;
        self.declare(line, &name, Kind::Endo)?;
        self.file.items.push(Item::Endo {
            name,
            on,
            endo: Endo::new(m),
        });
        Ok(())
    }

    fn morphism(&mut self) -> Result<()> {
        let line = self.line();
        let name = self.cur.expect_ident()?;
        self.cur.expect_sym(":")?;
        let source = self.cur.expect_ident()?;
        self.cur.expect_sym("->")?;
        let target = self.cur.expect_ident()?;
        let a = self.algebroid_named(line, &source)?;
        let b = self.algebroid_named(line, &target)?;
        self.cur.expect_sym("{")?;
        let mut base_map: Vec<Option<RF>> = vec![None; b.base_dim()];
        while self.cur.is_ident("base") {
            self.cur.advance();
            self.cur.expect_sym("[")?;
            let l = self.line();
            let y = self.cur.expect_ident()?;
            let k = b
                .coords()
                .iter()
                .position(|c| c.as_ref() == y)
                .ok_or_else(|| semantic(l, format_args!("`{y}` is not a coordinate of `{target}`")))?;
            self.cur.expect_sym("]")?;
            self.cur.expect_sym("=")?;
            base_map[k] = Some(self.expr(a.coords(), 0)?);
            self.cur.expect_sym(";")?;
        }
        let mut matrix = vec![vec![RF::zero(); a.rank()]; b.rank()];
        while self.cur.is_ident("matrix") {
            self.cur.advance();
            self.cur.expect_sym("[")?;
            let i = self.index(b.rank())?;
            self.cur.expect_sym(",")?;
            let j = self.index(a.rank())?;
            self.cur.expect_sym("]")?;
            self.cur.expect_sym("=")?;
            matrix[i][j] = self.expr(a.coords(), 0)?;
            self.cur.expect_sym(";")?;
        }
        self.cur.expect_sym("}")?;
        // Unspecified base entries map a coordinate to its namesake.
        let mut base = Vec::new();
        for (k, v) in base_map.into_iter().enumerate() {
            let y = &b.coords()[k];
            match v {
                Some(v) => base.push(v),
                None if a.coords().contains(y) => base.push(RF::var(y)),
                None => return Err(semantic(line, format_args!("no base map given for `{y}`"))),
            }
        }
        let morphism = BundleMorphism::new(a, b, base, matrix).map_err(|e| semantic(line, e))?;
        self.declare(line, &name, Kind::Morphism)?;
        self.file.items.push(Item::Morphism {
            name,
            source,
            target,
            morphism,
        });
        Ok(())
    }

    fn field(&mut self, key: &str) -> Result<String> {
        self.cur.expect_keyword(key)?;
        self.cur.expect_sym("=")?;
        let v = self.cur.expect_ident()?;
        self.cur.expect_sym(";")?;
        Ok(v)
    }

    fn paired(&mut self) -> Result<()> {
        let line = self.line();
        let name = self.cur.expect_ident()?;
        self.cur.expect_keyword("on")?;
        let on = self.cur.expect_ident()?;
        self.algebroid_named(line, &on)?;
        self.cur.expect_sym("{")?;
        let n = self.field("N")?;
        let pi = self.field("pi")?;
        let sigma = self.field("sigma")?;
        self.cur.expect_sym("}")?;
        self.lookup(line, &n, Kind::Endo)?;
        self.lookup(line, &pi, Kind::Tensor)?;
        self.lookup(line, &sigma, Kind::Tensor)?;
        let (n_on, endo) = self.file.endo(&n).expect("declared");
        let (pi_on, pi_s) = self.file.tensor(&pi).expect("declared");
        let (s_on, s_s) = self.file.tensor(&sigma).expect("declared");
        if [n_on, pi_on, s_on].iter().any(|o| *o != on) {
            return Err(semantic(line, format_args!("N, pi and sigma must all live on `{on}`")));
        }
        let op = PairedOperator::new(endo.clone(), pi_s.clone(), s_s.clone()).map_err(|e| semantic(line, e))?;
        self.declare(line, &name, Kind::Paired)?;
        self.file.items.push(Item::Paired {
            name,
            on,
            n,
            pi,
            sigma,
            op,
        });
        Ok(())
    }

    fn task(&mut self) -> Result<()> {
        let line = self.line();
        let name = self.cur.expect_word()?;
        if !TASKS.contains(&name.as_str()) {
            return Err(semantic(line, format_args!("unknown task `{name}`")));
        }
        let mut args = Vec::new();
        while !self.cur.is_sym(";") {
            let key = self.cur.expect_ident().map_err(|_| self.cur.error("a name or ';'"))?;
            if self.cur.is_sym("=") {
                self.cur.advance();
                let v = if self.cur.is_sym("[") {
                    Value::List(self.names()?)
                } else {
                    Value::Name(self.cur.expect_ident()?)
                };
                args.push(Arg::Keyed(key, v));
            } else {
                args.push(Arg::Positional(key));
            }
        }
        self.cur.expect_sym(";")?;
        let task = Task { name, args };
        self.check_task(line, &task)?;
        self.file.items.push(Item::Task(task));
        Ok(())
    }

    /// Argument shapes per task. Names are resolved here; values that only
    /// exist at run time (built quasi-Lie bialgebroids) are checked by kind.
    fn check_task(&mut self, line: usize, t: &Task) -> Result<()> {
        let pos = t.positional();
        let want = |n: usize| -> Result<()> {
            if pos.len() != n {
                return Err(semantic(
                    line,
                    format_args!("`{}` takes {n} positional argument(s), found {}", t.name, pos.len()),
                ));
            }
            Ok(())
        };
        let mut allowed: Vec<&str> = Vec::new();
        match t.name.as_str() {
            "check-axioms" => {
                want(1)?;
                self.lookup(line, pos[0], Kind::Algebroid)?;
            }
            "check-twisted-poisson" | "check-compatible" => {
                want(3)?;
                self.lookup(line, pos[0], Kind::Algebroid)?;
                self.lookup(line, pos[1], Kind::Tensor)?;
                let k = if t.name == "check-compatible" { Kind::Endo } else { Kind::Tensor };
                self.lookup(line, pos[2], k)?;
            }
            "check-pqn" | "verify-lemma-tnstar" => {
                if pos.len() != 3 {
                    want(4)?;
                    self.lookup(line, pos[3], Kind::Tensor)?;
                }
                self.lookup(line, pos[0], Kind::Algebroid)?;
                self.lookup(line, pos[1], Kind::Tensor)?;
                self.lookup(line, pos[2], Kind::Endo)?;
            }
            "build-qlb" => {
                want(1)?;
                self.lookup(line, pos[0], Kind::Algebroid)?;
                allowed = vec!["pi", "N", "phi", "as"];
                for k in ["pi", "phi"] {
                    if let Some(v) = t.keyed(k) {
                        self.lookup(line, name_of(line, k, v)?, Kind::Tensor)?;
                    }
                }
                if let Some(v) = t.keyed("N") {
                    self.lookup(line, name_of(line, "N", v)?, Kind::Endo)?;
                }
                match t.keyed("as") {
                    Some(v) => {
                        let q = name_of(line, "as", v)?.to_string();
                        self.declare(line, &q, Kind::Qlb)?;
                    }
                    None => return Err(semantic(line, "`build-qlb` needs `as=NAME`")),
                }
            }
            "check-qlb" => {
                want(1)?;
                self.lookup(line, pos[0], Kind::Qlb)?;
            }
            "check-qlb-morphism" | "build-morphism-graph" => {
                want(3)?;
                self.lookup(line, pos[0], Kind::Morphism)?;
                self.lookup(line, pos[1], Kind::Qlb)?;
                self.lookup(line, pos[2], Kind::Qlb)?;
            }
            "verify-courant" | "check-generalized-dirac" => {
                want(1)?;
                match self.kinds.get(pos[0]) {
                    Some(Kind::Algebroid) => {
                        allowed.push("twist");
                        if let Some(v) = t.keyed("twist") {
                            self.lookup(line, name_of(line, "twist", v)?, Kind::Tensor)?;
                        }
                    }
                    Some(Kind::Qlb) => {}
                    _ => {
                        return Err(semantic(
                            line,
                            format_args!("`{}` is not an algebroid or quasi-Lie bialgebroid", pos[0]),
                        ))
                    }
                }
                if t.name == "check-generalized-dirac" {
                    allowed.extend(["conormal", "graph"]);
                    match (t.keyed("conormal"), t.keyed("graph")) {
                        (Some(Value::List(_)), None) => {}
                        (None, Some(v)) => self.lookup(line, name_of(line, "graph", v)?, Kind::Tensor)?,
                        _ => return Err(semantic(line, "give exactly one of `conormal=[..]` or `graph=NAME`")),
                    }
                }
            }
            "check-split-dirac" => {
                want(1)?;
                self.lookup(line, pos[0], Kind::Qlb)?;
                allowed = vec!["L", "support"];
                match t.keyed("L") {
                    Some(Value::List(ls)) => {
                        for l in ls {
                            self.lookup(line, l, Kind::Tensor)?;
                        }
                    }
                    _ => return Err(semantic(line, "`check-split-dirac` needs `L=[..]`")),
                }
                if let Some(v) = t.keyed("support") {
                    if !matches!(v, Value::List(_)) {
                        return Err(semantic(line, "`support` takes a list of coordinates"));
                    }
                }
            }
            "check-paired" | "check-gc" => {
                want(1)?;
                self.lookup(line, pos[0], Kind::Paired)?;
            }
            "check-torsion-blocks" | "build-deformed-double" => {
                want(1)?;
                self.lookup(line, pos[0], Kind::Paired)?;
                allowed.push("twist");
                if let Some(v) = t.keyed("twist") {
                    self.lookup(line, name_of(line, "twist", v)?, Kind::Tensor)?;
                }
            }
            _ => unreachable!("task names are checked first"),
        }
        for a in &t.args {
            if let Arg::Keyed(k, _) = a {
                if !allowed.contains(&k.as_str()) {
                    return Err(semantic(line, format_args!("`{}` does not take `{k}=`", t.name)));
                }
            }
        }
        Ok(())
    }
}

fn name_of<'v>(line: usize, key: &str, v: &'v Value) -> Result<&'v str> {
    match v {
        Value::Name(n) => Ok(n),
        Value::List(_) => Err(semantic(line, format_args!("`{key}` takes a single name"))),
    }
}

/// Coefficients of a linear combination of e1..e`rank`.
fn frame_coefficients(comb: &RF, rank: usize) -> std::result::Result<Vec<RF>, String> {
    let names: Vec<String> = (1..=rank).map(|k| format!("e{k}")).collect();
    let coeffs: Vec<RF> = names.iter().map(|n| comb.differentiate(n)).collect();
    let mut rest = comb.clone();
    for (n, c) in names.iter().zip(&coeffs) {
        if c.vars().iter().any(|v| names.iter().any(|m| m == v.as_ref())) {
            return Err("bracket values must be linear in the frame".into());
        }
        rest = &rest - &(c * &RF::var(n));
    }
    if !rest.is_zero() {
        return Err("bracket values must be combinations of frame elements".into());
    }
    Ok(coeffs)
}
