//! Line-oriented text formats for categories, posets, set functors,
//! functors and diagrams of categories.
//!
//! A file is a sequence of sections, each opened by a header line
//! `category|poset|setfun|functor|diagram <name>`; `#` starts a comment
//! and `include <path>` loads another file relative to the current one.
//!
//! ```text
//! category P
//! objects: x
//! mor p : x -> x
//! compose p p = p
//!
//! poset V
//! elements: o a b
//! le: o<=a o<=b
//!
//! setfun X
//! on: P
//! variance: presheaf
//! value x: a b
//! map p: a->a b->a
//!
//! functor g
//! from: V
//! to: P
//! obj o -> x
//! mor o<=a -> p
//!
//! diagram D
//! index: V
//! fiber a: P
//! transition o<=a: g
//! ```
//!
//! Identities are implicit and named `id_<object>`; composition tables
//! list non-identity composites only.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use kancalc::category::{product, validate_category, RawCategory};
use kancalc::grothendieck::CatDiagram;
use kancalc::poset::Poset;
use kancalc::presheaf::{SetFunctor, Variance};
use kancalc::{CatRef, FinCat, FinFunctor};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{path}:{line}:{column}: {message}")]
pub struct ParseError {
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {kind} {name}: {message}")]
    Validation { path: String, kind: Kind, name: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Lookup(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Category,
    Poset,
    SetFun,
    Functor,
    Diagram,
}

impl Kind {
    fn keyword(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::Poset => "poset",
            Kind::SetFun => "setfun",
            Kind::Functor => "functor",
            Kind::Diagram => "diagram",
        }
    }

    fn from_keyword(s: &str) -> Option<Kind> {
        [Kind::Category, Kind::Poset, Kind::SetFun, Kind::Functor, Kind::Diagram].into_iter().find(|k| k.keyword() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Debug)]
pub struct SetFunEntry {
    pub value: SetFunctor,
    pub base: String,
}

#[derive(Clone, Debug)]
pub struct FunctorEntry {
    pub value: FinFunctor,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug)]
pub struct DiagramEntry {
    pub value: CatDiagram,
    pub index: String,
    /// Fiber category name per index element.
    pub fibers: Vec<String>,
    /// `(j, j′, functor)` for `j < j′`.
    pub transitions: Vec<(String, String, String)>,
}

/// Everything loaded so far, by kind and name.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: BTreeMap<String, CatRef>,
    pub posets: BTreeMap<String, Poset>,
    pub setfuns: BTreeMap<String, SetFunEntry>,
    pub functors: BTreeMap<String, FunctorEntry>,
    pub diagrams: BTreeMap<String, DiagramEntry>,
    /// Entities in load order with the file they came from.
    pub order: Vec<(Kind, String, PathBuf)>,
    loaded: HashSet<PathBuf>,
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

struct Cursor<'a> {
    path: &'a str,
}

impl Cursor<'_> {
    fn err(&self, line: &Line, at: &str, message: impl Into<String>) -> ParseError {
        let column = substr_offset(line.text, at).map_or(1, |k| k + 1);
        ParseError { path: self.path.to_string(), line: line.no, column, message: message.into() }
    }
}

/// Byte offset of `part` inside `whole` when it is a subslice, else by search.
fn substr_offset(whole: &str, part: &str) -> Option<usize> {
    let (w, p) = (whole.as_ptr() as usize, part.as_ptr() as usize);
    if p >= w && p <= w + whole.len() {
        Some(p - w)
    } else {
        whole.find(part)
    }
}

fn strip_comment(s: &str) -> &str {
    s.split('#').next().unwrap_or("").trim_end()
}

/// Splits `key: rest` or `key rest`.
fn split_key(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    let end = s.find(|c: char| c.is_whitespace() || c == ':').unwrap_or(s.len());
    let (key, rest) = s.split_at(end);
    let rest = rest.trim_start();
    let rest = rest.strip_prefix(':').unwrap_or(rest);
    (key, rest.trim())
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || c == ':' || c == '#') && !s.contains("->")
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    /// Loads a file; loading the same file twice is a no-op.
    pub fn load(&mut self, path: &Path) -> Result<(), LoadError> {
        let canon = path.canonicalize().unwrap_or_else(|_| path.to_path_buf());
        if self.loaded.contains(&canon) {
            return Ok(());
        }
        let text =
            std::fs::read_to_string(path).map_err(|e| LoadError::Io { path: path.display().to_string(), source: e })?;
        self.loaded.insert(canon);
        self.load_str(&text, path)
    }

    /// Loads text as if it came from `path`; includes resolve relative to it.
    pub fn load_str(&mut self, text: &str, path: &Path) -> Result<(), LoadError> {
        let display = path.display().to_string();
        let cur = Cursor { path: &display };
        let lines: Vec<Line> = text.lines().enumerate().map(|(k, t)| Line { no: k + 1, text: t }).collect();
        let mut k = 0;
        while k < lines.len() {
            let line = &lines[k];
            let body = strip_comment(line.text).trim();
            k += 1;
            if body.is_empty() {
                continue;
            }
            let (key, rest) = split_key(body);
            if key == "include" {
                let target = rest.trim_matches('"');
                if target.is_empty() {
                    return Err(cur.err(line, body, "include needs a path").into());
                }
                let base = path.parent().unwrap_or(Path::new("."));
                self.load(&base.join(target))?;
                continue;
            }
            let Some(kind) = Kind::from_keyword(key) else {
                return Err(cur.err(line, key, format!("expected a section header, found `{key}`")).into());
            };
            let name = rest;
            if !is_identifier(name) {
                return Err(cur.err(line, body, format!("{kind} needs a single identifier as its name")).into());
            }
            let start = k;
            while k < lines.len() {
                let (key, _) = split_key(strip_comment(lines[k].text));
                if Kind::from_keyword(key).is_some() || key == "include" {
                    break;
                }
                k += 1;
            }
            if self.contains(kind, name) {
                return Err(cur.err(line, name, format!("duplicate {kind} `{name}`")).into());
            }
            let section = &lines[start..k];
            let invalid = |message: String| LoadError::Validation { path: display.clone(), kind, name: name.to_string(), message };
            match kind {
                Kind::Category => {
                    let raw = parse_category(&cur, section)?;
                    let c = validate_category(&raw).map_err(|e| invalid(e.to_string()))?;
                    self.categories.insert(name.to_string(), Arc::new(c));
                }
                Kind::Poset => {
                    let p = self.parse_poset(&cur, section).map_err(|e| match e {
                        SectionError::Parse(p) => LoadError::Parse(p),
                        SectionError::Invalid(m) => invalid(m),
                    })?;
                    self.posets.insert(name.to_string(), p);
                }
                Kind::SetFun => {
                    let x = self.parse_setfun(&cur, line, section).map_err(|e| e.into_load(&invalid))?;
                    self.setfuns.insert(name.to_string(), x);
                }
                Kind::Functor => {
                    let f = self.parse_functor(&cur, line, section).map_err(|e| e.into_load(&invalid))?;
                    self.functors.insert(name.to_string(), f);
                }
                Kind::Diagram => {
                    let d = self.parse_diagram(&cur, line, section).map_err(|e| e.into_load(&invalid))?;
                    self.diagrams.insert(name.to_string(), d);
                }
            }
            self.order.push((kind, name.to_string(), path.to_path_buf()));
        }
        Ok(())
    }

    pub fn contains(&self, kind: Kind, name: &str) -> bool {
        match kind {
            Kind::Category => self.categories.contains_key(name),
            Kind::Poset => self.posets.contains_key(name),
            Kind::SetFun => self.setfuns.contains_key(name),
            Kind::Functor => self.functors.contains_key(name),
            Kind::Diagram => self.diagrams.contains_key(name),
        }
    }

    /// A category by name: a category, a poset viewed as a category, or a
    /// product `A x B`.
    pub fn category(&self, name: &str) -> Option<CatRef> {
        let parts: Vec<&str> = name.split_whitespace().collect();
        if parts.len() == 3 && parts[1] == "x" {
            return Some(product(&self.category(parts[0])?, &self.category(parts[2])?).cat);
        }
        if parts.len() != 1 {
            return None;
        }
        self.categories.get(name).cloned().or_else(|| self.posets.get(name).map(|p| p.as_category_ref()))
    }

    /// The last entity of `kind` loaded from `path`, or the one named `name`.
    pub fn pick(&self, kind: Kind, path: &Path, name: Option<&str>) -> Result<String, LoadError> {
        if let Some(n) = name {
            return if self.contains(kind, n) { Ok(n.to_string()) } else { Err(LoadError::Lookup(format!("no {kind} named `{n}`"))) };
        }
        self.order
            .iter()
            .rev()
            .find(|(k, _, p)| *k == kind && p == path)
            .map(|(_, n, _)| n.clone())
            .ok_or_else(|| LoadError::Lookup(format!("{} defines no {kind}", path.display())))
    }

    fn parse_poset(&self, cur: &Cursor, section: &[Line]) -> Result<Poset, SectionError> {
        let mut elements: Vec<String> = Vec::new();
        let mut gens: Vec<(&Line, &str, &str, &str)> = Vec::new();
        for line in section {
            let body = strip_comment(line.text);
            if body.trim().is_empty() {
                continue;
            }
            let (key, rest) = split_key(body);
            match key {
                "elements" => elements.extend(rest.split_whitespace().map(str::to_string)),
                "le" => {
                    for tok in rest.split_whitespace() {
                        let Some((a, b)) = tok.split_once("<=") else {
                            return Err(cur.err(line, tok, format!("expected `a<=b`, found `{tok}`")).into());
                        };
                        gens.push((line, tok, a, b));
                    }
                }
                _ => return Err(cur.err(line, key, format!("unknown poset line `{key}`")).into()),
            }
        }
        let index: HashMap<&str, usize> = elements.iter().enumerate().map(|(k, e)| (e.as_str(), k)).collect();
        if index.len() != elements.len() {
            return Err(SectionError::Invalid("duplicate element".into()));
        }
        let mut pairs = Vec::new();
        for (line, tok, a, b) in gens {
            let look = |e: &str| index.get(e).copied().ok_or_else(|| cur.err(line, tok, format!("unknown element `{e}`")));
            pairs.push((look(a)?, look(b)?));
        }
        Poset::from_generators(elements, &pairs).map_err(|e| SectionError::Invalid(e.to_string()))
    }

    fn parse_setfun(&self, cur: &Cursor, header: &Line, section: &[Line]) -> Result<SetFunEntry, SectionError> {
        let mut base_name = None;
        let mut variance = Variance::Contravariant;
        let mut values: Vec<(&Line, &str, Vec<String>)> = Vec::new();
        let mut maps: Vec<(&Line, &str, Vec<(&str, &str, &str)>)> = Vec::new();
        let mut constant: Option<Vec<String>> = None;
        for line in section {
            let body = strip_comment(line.text);
            if body.trim().is_empty() {
                continue;
            }
            let (key, rest) = split_key(body);
            match key {
                "on" => base_name = Some((line, rest)),
                "variance" => {
                    variance = match rest {
                        "presheaf" | "contravariant" => Variance::Contravariant,
                        "covariant" => Variance::Covariant,
                        _ => return Err(cur.err(line, rest, "variance is `presheaf` or `covariant`").into()),
                    }
                }
                "constant" => constant = Some(rest.split_whitespace().map(str::to_string).collect()),
                "value" | "map" => {
                    let Some((what, atoms)) = rest.rsplit_once(':') else {
                        return Err(cur.err(line, rest, format!("expected `{key} <name>: ...`")).into());
                    };
                    let what = what.trim();
                    if key == "value" {
                        values.push((line, what, atoms.split_whitespace().map(str::to_string).collect()));
                    } else {
                        let mut pairs = Vec::new();
                        for tok in atoms.split_whitespace() {
                            let Some((a, b)) = tok.split_once("->") else {
                                return Err(cur.err(line, tok, format!("expected `a->b`, found `{tok}`")).into());
                            };
                            pairs.push((tok, a, b));
                        }
                        maps.push((line, what, pairs));
                    }
                }
                _ => return Err(cur.err(line, key, format!("unknown setfun line `{key}`")).into()),
            }
        }
        let Some((on_line, base_name)) = base_name else {
            return Err(cur.err(header, header.text, "setfun needs an `on:` line").into());
        };
        let base = self.category(base_name).ok_or_else(|| cur.err(on_line, base_name, format!("unknown category `{base_name}`")))?;
        let n = base.num_objects();
        if let Some(atoms) = constant {
            if !values.is_empty() || !maps.is_empty() {
                return Err(cur.err(header, header.text, "`constant:` excludes value and map lines").into());
            }
            return Ok(SetFunEntry { value: SetFunctor::constant(&base, variance, &atoms), base: base_name.to_string() });
        }
        let mut labels: Vec<Option<Vec<String>>> = vec![None; n];
        for (line, what, atoms) in values {
            let o = base.object_index(what).ok_or_else(|| cur.err(line, what, format!("unknown object `{what}`")))?;
            if labels[o].replace(atoms).is_some() {
                return Err(cur.err(line, what, format!("second value line for `{what}`")).into());
            }
        }
        let labels: Vec<Vec<String>> = labels.into_iter().map(Option::unwrap_or_default).collect();
        let ends = |f: usize| match variance {
            Variance::Covariant => (base.src(f), base.tgt(f)),
            Variance::Contravariant => (base.tgt(f), base.src(f)),
        };
        let from = |f: usize| ends(f).0;
        let to = |f: usize| ends(f).1;
        let mut act: Vec<Option<Vec<usize>>> =
            (0..base.num_morphisms()).map(|f| base.is_identity(f).then(|| (0..labels[from(f)].len()).collect())).collect();
        for (line, what, pairs) in maps {
            let f = base.morphism_index(what).ok_or_else(|| cur.err(line, what, format!("unknown morphism `{what}`")))?;
            if base.is_identity(f) {
                return Err(cur.err(line, what, "identities act trivially and take no map line").into());
            }
            let (s, t) = (from(f), to(f));
            let mut table = vec![None; labels[s].len()];
            for (tok, a, b) in pairs {
                let ia = labels[s].iter().position(|x| x == a).ok_or_else(|| cur.err(line, tok, format!("`{a}` is not an atom of the source")))?;
                let ib = labels[t].iter().position(|x| x == b).ok_or_else(|| cur.err(line, tok, format!("`{b}` is not an atom of the target")))?;
                if table[ia].replace(ib).is_some() {
                    return Err(cur.err(line, tok, format!("`{a}` mapped twice")).into());
                }
            }
            if let Some(k) = table.iter().position(Option::is_none) {
                return Err(cur.err(line, what, format!("`{}` is not mapped", labels[s][k])).into());
            }
            if act[f].replace(table.into_iter().map(Option::unwrap).collect()).is_some() {
                return Err(cur.err(line, what, format!("second map line for `{what}`")).into());
            }
        }
        if let Some(f) = act.iter().position(Option::is_none) {
            return Err(SectionError::Invalid(format!("no map line for `{}`", base.morphism_name(f))));
        }
        let act = act.into_iter().map(Option::unwrap).collect();
        let value = SetFunctor::new(base, variance, labels, act).map_err(|e| SectionError::Invalid(e.to_string()))?;
        Ok(SetFunEntry { value, base: base_name.to_string() })
    }

    fn parse_functor(&self, cur: &Cursor, header: &Line, section: &[Line]) -> Result<FunctorEntry, SectionError> {
        let (mut from, mut to) = (None, None);
        let mut objs = Vec::new();
        let mut mors = Vec::new();
        for line in section {
            let body = strip_comment(line.text);
            if body.trim().is_empty() {
                continue;
            }
            let (key, rest) = split_key(body);
            match key {
                "from" => from = Some((line, rest)),
                "to" => to = Some((line, rest)),
                "obj" | "mor" => {
                    let Some((a, b)) = rest.split_once("->") else {
                        return Err(cur.err(line, rest, format!("expected `{key} a -> b`")).into());
                    };
                    let entry = (line, a.trim(), b.trim());
                    if key == "obj" {
                        objs.push(entry)
                    } else {
                        mors.push(entry)
                    }
                }
                _ => return Err(cur.err(line, key, format!("unknown functor line `{key}`")).into()),
            }
        }
        let lookup = |slot: Option<(&Line, &str)>, what: &str| -> Result<(String, CatRef), SectionError> {
            let (line, name) = slot.ok_or_else(|| cur.err(header, header.text, format!("functor needs a `{what}:` line")))?;
            let c = self.category(name).ok_or_else(|| cur.err(line, name, format!("unknown category `{name}`")))?;
            Ok((name.to_string(), c))
        };
        let (from_name, dom) = lookup(from, "from")?;
        let (to_name, cod) = lookup(to, "to")?;
        let mut obj_map = vec![None; dom.num_objects()];
        for (line, a, b) in objs {
            let ia = dom.object_index(a).ok_or_else(|| cur.err(line, a, format!("unknown object `{a}`")))?;
            let ib = cod.object_index(b).ok_or_else(|| cur.err(line, b, format!("unknown object `{b}`")))?;
            if obj_map[ia].replace(ib).is_some() {
                return Err(cur.err(line, a, format!("`{a}` mapped twice")).into());
            }
        }
        if let Some(o) = obj_map.iter().position(Option::is_none) {
            return Err(SectionError::Invalid(format!("object `{}` is not mapped", dom.object_name(o))));
        }
        let obj_map: Vec<usize> = obj_map.into_iter().map(Option::unwrap).collect();
        let mut mor_map: Vec<Option<usize>> =
            (0..dom.num_morphisms()).map(|f| dom.is_identity(f).then(|| cod.identity(obj_map[dom.src(f)]))).collect();
        for (line, a, b) in mors {
            let ia = dom.morphism_index(a).ok_or_else(|| cur.err(line, a, format!("unknown morphism `{a}`")))?;
            let ib = cod.morphism_index(b).ok_or_else(|| cur.err(line, b, format!("unknown morphism `{b}`")))?;
            if dom.is_identity(ia) || mor_map[ia].replace(ib).is_some() {
                return Err(cur.err(line, a, format!("`{a}` mapped twice")).into());
            }
        }
        if let Some(f) = mor_map.iter().position(Option::is_none) {
            return Err(SectionError::Invalid(format!("morphism `{}` is not mapped", dom.morphism_name(f))));
        }
        let mor_map = mor_map.into_iter().map(Option::unwrap).collect();
        let value = FinFunctor::new(dom, cod, obj_map, mor_map).map_err(|e| SectionError::Invalid(e.to_string()))?;
        Ok(FunctorEntry { value, from: from_name, to: to_name })
    }

    fn parse_diagram(&self, cur: &Cursor, header: &Line, section: &[Line]) -> Result<DiagramEntry, SectionError> {
        let mut index = None;
        let mut fibers = Vec::new();
        let mut transitions = Vec::new();
        for line in section {
            let body = strip_comment(line.text);
            if body.trim().is_empty() {
                continue;
            }
            let (key, rest) = split_key(body);
            let (what, target) = rest.rsplit_once(':').map_or(("", rest), |(a, b)| (a.trim(), b.trim()));
            match key {
                "index" => index = Some((line, rest)),
                "fiber" => fibers.push((line, what, target)),
                "transition" => transitions.push((line, what, target)),
                _ => return Err(cur.err(line, key, format!("unknown diagram line `{key}`")).into()),
            }
        }
        let (line, index_name) = index.ok_or_else(|| cur.err(header, header.text, "diagram needs an `index:` line"))?;
        let poset = self.posets.get(index_name).ok_or_else(|| cur.err(line, index_name, format!("unknown poset `{index_name}`")))?;
        let mut at: Vec<Option<(String, CatRef)>> = vec![None; poset.len()];
        for (line, j, c) in fibers {
            let k = poset.index_of(j).ok_or_else(|| cur.err(line, j, format!("unknown index element `{j}`")))?;
            let cat = self.category(c).ok_or_else(|| cur.err(line, c, format!("unknown category `{c}`")))?;
            if at[k].replace((c.to_string(), cat)).is_some() {
                return Err(cur.err(line, j, format!("second fiber for `{j}`")).into());
            }
        }
        if let Some(k) = at.iter().position(Option::is_none) {
            return Err(SectionError::Invalid(format!("no fiber for `{}`", poset.name(k))));
        }
        let (fiber_names, cats): (Vec<String>, Vec<CatRef>) = at.into_iter().map(Option::unwrap).unzip();
        let mut act = Vec::new();
        let mut names = Vec::new();
        for (line, pair, f) in transitions {
            let Some((a, b)) = pair.split_once("<=") else {
                return Err(cur.err(line, pair, "expected `transition a<=b: functor`").into());
            };
            let ia = poset.index_of(a).ok_or_else(|| cur.err(line, a, format!("unknown index element `{a}`")))?;
            let ib = poset.index_of(b).ok_or_else(|| cur.err(line, b, format!("unknown index element `{b}`")))?;
            let entry = self.functors.get(f).ok_or_else(|| cur.err(line, f, format!("unknown functor `{f}`")))?;
            act.push(((ia, ib), entry.value.clone()));
            names.push((a.to_string(), b.to_string(), f.to_string()));
        }
        let value = CatDiagram::new(poset.clone(), cats, act).map_err(|e| SectionError::Invalid(e.to_string()))?;
        Ok(DiagramEntry { value, index: index_name.to_string(), fibers: fiber_names, transitions: names })
    }

    /// Canonical text of every loaded entity, sorted by kind and name.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut first = true;
        let mut section = |s: String| {
            if !first {
                out.push('\n');
            }
            first = false;
            out.push_str(&s);
        };
        for (name, c) in &self.categories {
            section(serialize_category(name, c));
        }
        for (name, p) in &self.posets {
            section(serialize_poset(name, p));
        }
        for (name, x) in &self.setfuns {
            section(serialize_setfun(name, x));
        }
        for (name, f) in &self.functors {
            section(serialize_functor(name, f));
        }
        for (name, d) in &self.diagrams {
            section(serialize_diagram(name, d));
        }
        out
    }
}

enum SectionError {
    Parse(ParseError),
    Invalid(String),
}

impl From<ParseError> for SectionError {
    fn from(e: ParseError) -> Self {
        SectionError::Parse(e)
    }
}

impl SectionError {
    fn into_load(self, invalid: &dyn Fn(String) -> LoadError) -> LoadError {
        match self {
            SectionError::Parse(p) => LoadError::Parse(p),
            SectionError::Invalid(m) => invalid(m),
        }
    }
}

fn parse_category(cur: &Cursor, section: &[Line]) -> Result<RawCategory, ParseError> {
    let mut raw = RawCategory::default();
    for line in section {
        let body = strip_comment(line.text);
        if body.trim().is_empty() {
            continue;
        }
        let (key, rest) = split_key(body);
        match key {
            "objects" => raw.objects.extend(rest.split_whitespace().map(str::to_string)),
            "mor" => {
                let Some((name, ends)) = rest.split_once(':') else {
                    return Err(cur.err(line, rest, "expected `mor f : a -> b`"));
                };
                let Some((s, t)) = ends.split_once("->") else {
                    return Err(cur.err(line, ends, "expected `a -> b` after the colon"));
                };
                let (name, s, t) = (name.trim(), s.trim(), t.trim());
                for part in [name, s, t] {
                    if !is_identifier(part) {
                        return Err(cur.err(line, if part.is_empty() { rest } else { part }, format!("`{part}` is not an identifier")));
                    }
                }
                raw.morphisms.push((name.to_string(), s.to_string(), t.to_string()));
            }
            "compose" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 4 || toks[2] != "=" {
                    return Err(cur.err(line, if rest.is_empty() { body } else { rest }, "expected `compose g f = h`"));
                }
                raw.composites.push((toks[0].to_string(), toks[1].to_string(), toks[3].to_string()));
            }
            _ => return Err(cur.err(line, key, format!("unknown category line `{key}`"))),
        }
    }
    Ok(raw)
}

pub fn serialize_category(name: &str, c: &FinCat) -> String {
    let raw = c.to_raw();
    let mut s = format!("category {name}\nobjects: {}\n", raw.objects.join(" "));
    for (m, a, b) in &raw.morphisms {
        let _ = writeln!(s, "mor {m} : {a} -> {b}");
    }
    for (g, f, h) in &raw.composites {
        let _ = writeln!(s, "compose {g} {f} = {h}");
    }
    s
}

pub fn serialize_poset(name: &str, p: &Poset) -> String {
    let mut elements: Vec<&str> = p.elements().iter().map(String::as_str).collect();
    elements.sort();
    let mut covers: Vec<(&str, &str)> = p.covers().iter().map(|&(a, b)| (p.name(a), p.name(b))).collect();
    covers.sort();
    let mut s = format!("poset {name}\nelements: {}\n", elements.join(" "));
    if !covers.is_empty() {
        let rel: Vec<String> = covers.iter().map(|(a, b)| format!("{a}<={b}")).collect();
        let _ = writeln!(s, "le: {}", rel.join(" "));
    }
    s
}

pub fn serialize_setfun(name: &str, x: &SetFunEntry) -> String {
    let v = &x.value;
    let c = v.base();
    let variance = match v.variance() {
        Variance::Contravariant => "presheaf",
        Variance::Covariant => "covariant",
    };
    let mut s = format!("setfun {name}\non: {}\nvariance: {variance}\n", x.base);
    let mut objs: Vec<usize> = (0..c.num_objects()).collect();
    objs.sort_by(|&a, &b| c.object_name(a).cmp(c.object_name(b)));
    for &o in &objs {
        let mut atoms: Vec<&str> = v.labels(o).iter().map(String::as_str).collect();
        atoms.sort();
        let line = format!("value {}: {}", c.object_name(o), atoms.join(" "));
        let _ = writeln!(s, "{}", line.trim_end());
    }
    let mut mors: Vec<usize> = c.non_identity_morphisms().collect();
    mors.sort_by(|&a, &b| c.morphism_name(a).cmp(c.morphism_name(b)));
    for f in mors {
        let (from, to) = (v.from(f), v.to(f));
        let mut pairs: Vec<(&str, &str)> = (0..v.size(from)).map(|a| (v.label(from, a), v.label(to, v.apply(f, a)))).collect();
        pairs.sort();
        let body: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        let line = format!("map {}: {}", c.morphism_name(f), body.join(" "));
        let _ = writeln!(s, "{}", line.trim_end());
    }
    s
}

pub fn serialize_functor(name: &str, f: &FunctorEntry) -> String {
    let g = &f.value;
    let (dom, cod) = (g.dom(), g.cod());
    let mut s = format!("functor {name}\nfrom: {}\nto: {}\n", f.from, f.to);
    let mut objs: Vec<(&str, &str)> = (0..dom.num_objects()).map(|o| (dom.object_name(o), cod.object_name(g.ob(o)))).collect();
    objs.sort();
    for (a, b) in objs {
        let _ = writeln!(s, "obj {a} -> {b}");
    }
    let mut mors: Vec<(&str, &str)> =
        dom.non_identity_morphisms().map(|m| (dom.morphism_name(m), cod.morphism_name(g.mor(m)))).collect();
    mors.sort();
    for (a, b) in mors {
        let _ = writeln!(s, "mor {a} -> {b}");
    }
    s
}

pub fn serialize_diagram(name: &str, d: &DiagramEntry) -> String {
    let index = d.value.index();
    let mut s = format!("diagram {name}\nindex: {}\n", d.index);
    let mut fibers: Vec<(&str, &str)> = (0..index.len()).map(|j| (index.name(j), d.fibers[j].as_str())).collect();
    fibers.sort();
    for (j, c) in fibers {
        let _ = writeln!(s, "fiber {j}: {c}");
    }
    let mut trans = d.transitions.clone();
    trans.sort();
    for (a, b, f) in trans {
        let _ = writeln!(s, "transition {a}<={b}: {f}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<Workspace, LoadError> {
        let mut ws = Workspace::new();
        ws.load_str(text, Path::new("t.fc"))?;
        Ok(ws)
    }

    #[test]
    fn projector_category() {
        let ws = load("category P\nobjects: x\nmor p : x -> x\ncompose p p = p\n").unwrap();
        let p = &ws.categories["P"];
        assert_eq!(p.num_objects(), 1);
        assert_eq!(p.num_morphisms(), 2);
        let m = p.morphism_index("p").unwrap();
        assert_eq!(p.compose(m, m), m);
    }

    #[test]
    fn poset_generators_close_transitively() {
        let ws = load("poset C\nelements: 0 1 2\nle: 0<=1 1<=2\n").unwrap();
        let c = &ws.posets["C"];
        assert!(c.le(c.index_of("0").unwrap(), c.index_of("2").unwrap()));
    }

    #[test]
    fn malformed_compose_has_location() {
        match load("category P\nobjects: x\nmor p : x -> x\ncompose p p\n") {
            Err(LoadError::Parse(e)) => assert_eq!((e.line, e.path.as_str()), (4, "t.fc")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_composite_is_a_validation_error() {
        assert!(matches!(load("category P\nobjects: x\nmor p : x -> x\n"), Err(LoadError::Validation { .. })));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(load("category A\nobjects: x\n\ncategory A\nobjects: y\n").is_err());
    }

    #[test]
    fn serialization_is_a_fixpoint() {
        let text = "# comment\nposet V\nelements: o b a\nle: o<=a o<=b\n\ncategory P\nobjects: x\nmor p : x -> x\ncompose p p = p\n\nsetfun X\non: P\nvalue x: u v\nmap p: u->u v->u\n";
        let once = load(text).unwrap().serialize();
        let twice = load(&once).unwrap().serialize();
        assert_eq!(once, twice);
    }
}
