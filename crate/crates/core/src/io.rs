//! Line-oriented text formats for algebras, modules, morphisms, short exact sequences and
//! subcategories. `#` starts a comment; vertices are 1-based.

use std::fmt::Write as _;
use std::path::Path as FsPath;
use std::sync::Arc;

use crate::algebra::{Algebra, Arrow, Quiver, Relation};
use crate::approx::Subcat;
use crate::error::{Error, Result};
use crate::exactla::{Fp, Matrix};
use crate::homological::Ses;
use crate::rep::{Rep, RepMap, Rng};

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, t)| !t.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let r = self.items.get(self.pos).cloned();
        self.pos += 1;
        r
    }

    fn last_line(&self) -> usize {
        self.items.last().map(|(l, _)| *l).unwrap_or(0)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, format!("expected a number, found {:?}", tok)))
}

fn expect_len(line: usize, toks: &[&str], n: usize) -> Result<()> {
    if toks.len() != n {
        return Err(perr(line, format!("expected {} fields after {:?}", n - 1, toks[0])));
    }
    Ok(())
}

/// Parses an algebra file; `prime` overrides the `field` line.
pub fn parse_algebra(text: &str, prime: Option<u32>) -> Result<Arc<Algebra>> {
    let mut lines = Lines::new(text);
    let mut fp = None;
    let mut n = None;
    let mut arrows = Vec::new();
    let mut raw_rels: Vec<(usize, String)> = Vec::new();
    while let Some((ln, t)) = lines.next() {
        match t[0] {
            "field" => {
                expect_len(ln, &t, 2)?;
                fp = Some(num::<u32>(ln, t[1])?);
            }
            "vertices" => {
                expect_len(ln, &t, 2)?;
                n = Some(num::<usize>(ln, t[1])?);
            }
            "arrow" => {
                expect_len(ln, &t, 4)?;
                let (s, e) = (num::<usize>(ln, t[2])?, num::<usize>(ln, t[3])?);
                if s == 0 || e == 0 {
                    return Err(perr(ln, "vertices are numbered from 1"));
                }
                arrows.push(Arrow {
                    name: t[1].to_string(),
                    source: s - 1,
                    target: e - 1,
                });
            }
            "rel" => raw_rels.push((ln, t[1..].join(" "))),
            other => return Err(perr(ln, format!("unknown keyword {:?}", other))),
        }
    }
    let p = prime.or(fp).ok_or_else(|| perr(1, "missing field line"))?;
    let fp = Fp::new(p)?;
    let n = n.ok_or_else(|| perr(1, "missing vertices line"))?;
    let quiver = Quiver::new(n, arrows)?;
    let mut rels = Vec::new();
    for (ln, r) in raw_rels {
        rels.push(parse_relation(ln, &r, &quiver, fp)?);
    }
    Algebra::new(fp, quiver, rels)
}

fn parse_relation(ln: usize, text: &str, q: &Quiver, fp: Fp) -> Result<Relation> {
    let normalized = text.replace(" - ", " + -");
    let mut terms = Vec::new();
    for term in normalized.split('+') {
        let term: String = term.split_whitespace().collect();
        if term.is_empty() {
            return Err(perr(ln, "empty relation term"));
        }
        let (coeff, path) = match term.split_once('*') {
            Some((c, p)) => (num::<i64>(ln, c)?, p.to_string()),
            None if term.starts_with('-') => (-1, term[1..].to_string()),
            None => (1, term),
        };
        let mut arrows = Vec::new();
        for name in path.split('.').rev() {
            arrows.push(q.arrow_index(name).ok_or_else(|| perr(ln, format!("unknown arrow {:?}", name)))?);
        }
        terms.push((fp.reduce(coeff), arrows));
    }
    Ok(Relation { terms })
}

pub fn write_algebra(alg: &Algebra) -> String {
    let mut s = String::new();
    let q = alg.quiver();
    writeln!(s, "field {}", alg.field().p()).unwrap();
    writeln!(s, "vertices {}", alg.vertices()).unwrap();
    for a in alg.arrows() {
        writeln!(s, "arrow {} {} {}", a.name, a.source + 1, a.target + 1).unwrap();
    }
    for r in alg.relations() {
        writeln!(s, "rel {}", r.written(q)).unwrap();
    }
    s
}

fn read_matrix(lines: &mut Lines, fp: Fp, rows: usize, cols: usize) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows * cols);
    if cols > 0 {
        for _ in 0..rows {
            let (ln, t) = lines.next().ok_or_else(|| perr(lines.last_line(), "matrix ended early"))?;
            if t.len() != cols {
                return Err(perr(ln, format!("expected {} entries, found {}", cols, t.len())));
            }
            for x in t {
                data.push(fp.reduce(num::<i64>(ln, x)?));
            }
        }
    }
    Ok(Matrix::from_vec(fp, rows, cols, data))
}

fn write_matrix(s: &mut String, m: &Matrix) {
    if m.cols() == 0 {
        return;
    }
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
}

fn read_module(lines: &mut Lines, alg: &Arc<Algebra>) -> Result<(String, Rep)> {
    let (ln, t) = lines.next().ok_or_else(|| perr(lines.last_line(), "expected a module block"))?;
    if t[0] != "module" || t.len() != 2 {
        return Err(perr(ln, "expected `module <name>`"));
    }
    let name = t[1].to_string();
    let (ln, t) = lines.next().ok_or_else(|| perr(ln, "missing dim line"))?;
    if t[0] != "dim" || t.len() != alg.vertices() + 1 {
        return Err(perr(ln, format!("expected `dim` with {} entries", alg.vertices())));
    }
    let dims: Vec<usize> = t[1..].iter().map(|x| num(ln, x)).collect::<Result<_>>()?;
    let fp = alg.field();
    let mut maps: Vec<Option<Matrix>> = vec![None; alg.arrows().len()];
    while let Some((ln, t)) = lines.peek().cloned() {
        if t[0] != "map" {
            break;
        }
        lines.next();
        expect_len(ln, &t, 4)?;
        let a = alg
            .quiver()
            .arrow_index(t[1])
            .ok_or_else(|| perr(ln, format!("unknown arrow {:?}", t[1])))?;
        let (r, c) = (num::<usize>(ln, t[2])?, num::<usize>(ln, t[3])?);
        let arrow = &alg.arrows()[a];
        if r != dims[arrow.target] || c != dims[arrow.source] {
            return Err(perr(ln, format!("map {} must be {}x{}", t[1], dims[arrow.target], dims[arrow.source])));
        }
        if maps[a].is_some() {
            return Err(perr(ln, format!("map {} given twice", t[1])));
        }
        maps[a] = Some(read_matrix(lines, fp, r, c)?);
    }
    let maps = maps
        .into_iter()
        .zip(alg.arrows())
        .map(|(m, a)| m.unwrap_or_else(|| Matrix::zeros(fp, dims[a.target], dims[a.source])))
        .collect();
    Rep::new(alg.clone(), dims, maps).map(|m| (name, m)).map_err(|e| match e {
        Error::RelationViolated(msg) => perr(ln, format!("relations fail: {}", msg)),
        e => e,
    })
}

pub fn write_module(name: &str, m: &Rep) -> String {
    let mut s = String::new();
    writeln!(s, "module {}", name).unwrap();
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    writeln!(s, "dim {}", dims.join(" ")).unwrap();
    for (a, mat) in m.algebra().arrows().iter().zip(m.maps()) {
        writeln!(s, "map {} {} {}", a.name, mat.rows(), mat.cols()).unwrap();
        write_matrix(&mut s, mat);
    }
    s
}

pub fn write_morphism(name: &str, source: &str, target: &str, f: &RepMap) -> String {
    let mut s = String::new();
    writeln!(s, "morphism {} {} {}", name, source, target).unwrap();
    for (v, c) in f.comps().iter().enumerate() {
        writeln!(s, "at {} {} {}", v + 1, c.rows(), c.cols()).unwrap();
        write_matrix(&mut s, c);
    }
    s
}

/// Modules and morphisms between them, in file order.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub modules: Vec<(String, Rep)>,
    pub morphisms: Vec<(String, RepMap)>,
}

impl Document {
    pub fn module(&self, name: &str) -> Option<&Rep> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn morphism(&self, name: &str) -> Option<&RepMap> {
        self.morphisms.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn single_module(&self) -> Result<&Rep> {
        match self.modules.as_slice() {
            [(_, m)] => Ok(m),
            _ => Err(Error::Invalid(format!("expected one module, found {}", self.modules.len()))),
        }
    }
}

pub fn parse_document(text: &str, alg: &Arc<Algebra>) -> Result<Document> {
    let mut lines = Lines::new(text);
    let mut doc = Document::default();
    let fp = alg.field();
    while let Some((ln, t)) = lines.peek().cloned() {
        match t[0] {
            "module" => {
                let (name, m) = read_module(&mut lines, alg)?;
                if doc.module(&name).is_some() {
                    return Err(perr(ln, format!("module {} defined twice", name)));
                }
                doc.modules.push((name, m));
            }
            "morphism" => {
                lines.next();
                expect_len(ln, &t, 4)?;
                let src = doc.module(t[2]).ok_or_else(|| perr(ln, format!("unknown module {:?}", t[2])))?.clone();
                let tgt = doc.module(t[3]).ok_or_else(|| perr(ln, format!("unknown module {:?}", t[3])))?.clone();
                let mut comps: Vec<Option<Matrix>> = vec![None; alg.vertices()];
                while let Some((ln, t)) = lines.peek().cloned() {
                    if t[0] != "at" {
                        break;
                    }
                    lines.next();
                    expect_len(ln, &t, 4)?;
                    let v = num::<usize>(ln, t[1])?;
                    if v == 0 || v > alg.vertices() {
                        return Err(perr(ln, format!("vertex {} out of range", v)));
                    }
                    let (r, c) = (num::<usize>(ln, t[2])?, num::<usize>(ln, t[3])?);
                    if r != tgt.dim_at(v - 1) || c != src.dim_at(v - 1) {
                        return Err(perr(ln, format!("component at {} has the wrong shape", v)));
                    }
                    comps[v - 1] = Some(read_matrix(&mut lines, fp, r, c)?);
                }
                let comps = comps
                    .into_iter()
                    .enumerate()
                    .map(|(v, c)| c.unwrap_or_else(|| Matrix::zeros(fp, tgt.dim_at(v), src.dim_at(v))))
                    .collect();
                let f = RepMap::new(src, tgt, comps).map_err(|e| perr(ln, e.to_string()))?;
                doc.morphisms.push((t[1].to_string(), f));
            }
            other => return Err(perr(ln, format!("unknown keyword {:?}", other))),
        }
    }
    Ok(doc)
}

pub fn parse_module(text: &str, alg: &Arc<Algebra>) -> Result<Rep> {
    parse_document(text, alg)?.single_module().cloned()
}

/// Three module blocks `X`, `Y`, `Z` and morphisms `g: X -> Y`, `f: Y -> Z`.
pub fn write_ses(s: &Ses) -> String {
    let mut out = String::new();
    out += &write_module("X", s.left());
    out += &write_module("Y", s.middle());
    out += &write_module("Z", s.right());
    out += &write_morphism("g", "X", "Y", &s.g);
    out += &write_morphism("f", "Y", "Z", &s.f);
    out
}

pub fn parse_ses(text: &str, alg: &Arc<Algebra>) -> Result<Ses> {
    let doc = parse_document(text, alg)?;
    let (g, f) = match doc.morphisms.as_slice() {
        [(_, g), (_, f)] => (g.clone(), f.clone()),
        _ => return Err(Error::Invalid("a sequence file needs exactly two morphisms".into())),
    };
    Ses::new(g, f)
}

/// Parsed subcategory description; module paths are relative to `base`.
pub fn parse_subcat(text: &str, alg: &Arc<Algebra>, base: &FsPath, rng: &mut Rng) -> Result<Subcat> {
    let mut lines = Lines::new(text);
    let (ln, t) = lines.next().ok_or_else(|| perr(1, "empty subcategory file"))?;
    if t[0] != "subcat" || t.len() < 2 {
        return Err(perr(ln, "expected `subcat <kind>`"));
    }
    let cap = || -> Result<usize> {
        if t.len() != 4 || t[2] != "cap" {
            return Err(perr(ln, format!("expected `subcat {} cap <d>`", t[1])));
        }
        num(ln, t[3])
    };
    let sub = match t[1] {
        "finite" => {
            let mut gens = Vec::new();
            while let Some((ln, t)) = lines.next() {
                for file in t {
                    let path = base.join(file);
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| perr(ln, format!("cannot read {}: {}", path.display(), e)))?;
                    for (name, m) in parse_document(&text, alg)?.modules {
                        gens.push((name, m));
                    }
                }
            }
            Subcat::finite(alg, gens, rng)?
        }
        "postprojective" => Subcat::postprojective(alg, cap()?, rng)?,
        "preinjective" => Subcat::preinjective(alg, cap()?, rng)?,
        "whole" => Subcat::whole(alg, cap()?, rng)?,
        other => return Err(perr(ln, format!("unknown subcategory kind {:?}", other))),
    };
    if t[1] != "finite" {
        if let Some((ln, _)) = lines.next() {
            return Err(perr(ln, "unexpected content after a family subcategory line"));
        }
    }
    Ok(sub)
}

/// Writes a finite subcategory as `subcat finite` plus one module file per generator into `dir`.
pub fn write_finite_subcat(sub: &Subcat, dir: &FsPath, stem: &str) -> Result<String> {
    let mut s = String::from("subcat finite\n");
    for (i, (name, m)) in sub.names.iter().zip(&sub.members).enumerate() {
        let file = format!("{}{}.mod", stem, i + 1);
        std::fs::write(dir.join(&file), write_module(&sanitize(name), m))?;
        writeln!(s, "{}", file).unwrap();
    }
    Ok(s)
}

/// A module name usable in the file formats.
pub fn sanitize(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| if c.is_whitespace() || c == '#' { '_' } else { c })
        .collect();
    if s.is_empty() {
        "M".into()
    } else {
        s
    }
}
