//! Subcommands.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kancalc::category::{colimit, karoubi_closure, limit, Cone};
use kancalc::filtered::{check_con_le, filt_commute_check, find_cone, is_filtered_exact};
use kancalc::grothendieck::{colax_limit, lax_limit, twisted_arrows};
use kancalc::harness::{run_suite, Limits, Suite};
use kancalc::ind::{ind_hom, is_ind_object, obstruction, karoubi_identification, pullback_failure_demo, IndPresentation, Obstruction};
use kancalc::nerve::{nerve, v_replacement, VPoint};
use kancalc::presheaf::{check_cofinal, colim_set, elements, kan_left, kan_right, lim_set, Flavor, SetFunctor, Variance};
use kancalc::{Budget, CatRef, FinCat, FinFunctor};
use serde_json::{json, Value};

use crate::dot;
use crate::format::{Kind, LoadError, Workspace};
use crate::report::{CliError, Report};

#[derive(Debug, Parser)]
#[command(name = "kancalc", version, about = "Finite category theory calculator")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print Graphviz output where the command has a graph.
    #[arg(long, global = true)]
    pub dot: bool,
    /// Enumeration step ceiling.
    #[arg(long, global = true, env = "KANCALC_BUDGET")]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

/// An entity reference `path` or `path@name`.
#[derive(Clone, Debug)]
pub struct EntityRef {
    pub path: PathBuf,
    pub name: Option<String>,
}

impl std::str::FromStr for EntityRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.rsplit_once('@') {
            Some((p, n)) if !n.is_empty() && !n.contains('/') => Ok(EntityRef { path: p.into(), name: Some(n.to_string()) }),
            _ => Ok(EntityRef { path: s.into(), name: None }),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load files and print their canonical serialization.
    Show { files: Vec<EntityRef> },
    /// Decide a property; exit 0 when it holds, 1 with a witness when not.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Colimit of a diagram `-d` in a finite category, or of a set functor `-X`.
    Colim(DiagramArgs),
    /// Limit of a diagram `-d` in a finite category, or of a set functor `-X`.
    Lim(DiagramArgs),
    /// The category of elements of a set functor.
    Elements {
        #[arg(short = 'X')]
        x: EntityRef,
    },
    /// Left (or right) Kan extension of a set functor along a functor.
    Kan {
        #[arg(short = 'g')]
        gamma: EntityRef,
        #[arg(short = 'X')]
        x: EntityRef,
        #[arg(long)]
        right: bool,
    },
    /// The Karoubi closure of a category.
    Karoubi { file: EntityRef },
    /// Chain counts of the truncated nerve.
    Nerve {
        file: EntityRef,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// The replacement poset V(C).
    Vc { file: EntityRef },
    /// The lax limit (or co-lax limit) of a diagram of categories.
    LaxLimit {
        file: EntityRef,
        #[arg(long)]
        colax: bool,
    },
    /// The twisted arrow category.
    Tw { file: EntityRef },
    /// Ind-objects given by presentations.
    #[command(subcommand)]
    Ind(IndCommand),
    /// Run a lemma suite over the bounded corpus.
    Harness(HarnessArgs),
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[arg(short = 'd', conflicts_with = "x", required_unless_present = "x")]
    pub diagram: Option<EntityRef>,
    #[arg(short = 'X')]
    pub x: Option<EntityRef>,
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// A cone over the identity exists.
    Filtered { file: EntityRef },
    /// Every comma fiber `i′ ∖ I` is nonempty and connected.
    Cofinal { file: EntityRef },
    /// Over a filtered base: the covariant elements category is filtered
    /// iff the colimit is a point.
    ConLe {
        #[arg(short = 'X')]
        x: EntityRef,
    },
    /// The comparison colim_I lim_J X → lim_J colim_I X is a bijection.
    Commute {
        #[arg(short = 'I')]
        i: EntityRef,
        #[arg(short = 'J')]
        j: EntityRef,
        #[arg(short = 'X')]
        x: EntityRef,
    },
}

#[derive(Debug, Subcommand)]
pub enum IndCommand {
    /// Hom set between presentations given as functors `J → C`.
    Hom {
        #[arg(short = 'a')]
        a: EntityRef,
        #[arg(short = 'b')]
        b: EntityRef,
    },
    /// Decide whether a presheaf is an Ind-object.
    Recognize {
        #[arg(short = 'X')]
        x: EntityRef,
    },
    /// Split idempotents versus compact presheaves.
    KaroubiId {
        file: EntityRef,
        #[arg(long, default_value_t = 2)]
        size_bound: usize,
        #[arg(long, default_value_t = 3)]
        shape_bound: usize,
    },
    /// Even and odd embeddings into the chain [N].
    ProdDemo { n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shapes {
    Dim1,
}

#[derive(Debug, Args)]
pub struct HarnessArgs {
    /// p-le, v-le, con-le, filt-prop, cof-le, cone-le, dim1-le, yo-ind,
    /// ka-ka, lax-ind, kan, elements, posets or groth.
    pub suite: String,
    #[arg(long)]
    pub max_obj: Option<usize>,
    #[arg(long)]
    pub max_mor: Option<usize>,
    #[arg(long)]
    pub target_obj: Option<usize>,
    #[arg(long)]
    pub target_mor: Option<usize>,
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long)]
    pub max_values: Option<usize>,
    /// Diagram shapes; only dimension ≤ 1 posets are enumerated.
    #[arg(long, value_enum)]
    pub shapes: Option<Shapes>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
}

impl Command {
    pub fn kind(&self) -> String {
        match self {
            Command::Show { .. } => "show".into(),
            Command::Check(c) => format!(
                "check {}",
                match c {
                    CheckCommand::Filtered { .. } => "filtered",
                    CheckCommand::Cofinal { .. } => "cofinal",
                    CheckCommand::ConLe { .. } => "con-le",
                    CheckCommand::Commute { .. } => "commute",
                }
            ),
            Command::Colim(_) => "colim".into(),
            Command::Lim(_) => "lim".into(),
            Command::Elements { .. } => "elements".into(),
            Command::Kan { .. } => "kan".into(),
            Command::Karoubi { .. } => "karoubi".into(),
            Command::Nerve { .. } => "nerve".into(),
            Command::Vc { .. } => "vc".into(),
            Command::LaxLimit { .. } => "lax-limit".into(),
            Command::Tw { .. } => "tw".into(),
            Command::Ind(c) => format!(
                "ind {}",
                match c {
                    IndCommand::Hom { .. } => "hom",
                    IndCommand::Recognize { .. } => "recognize",
                    IndCommand::KaroubiId { .. } => "karoubi-id",
                    IndCommand::ProdDemo { .. } => "prod-demo",
                }
            ),
            Command::Harness(h) => format!("harness {}", h.suite),
        }
    }
}

struct Ctx {
    ws: Workspace,
    budget: u64,
    dot: bool,
}

impl Ctx {
    fn budget(&self) -> Budget {
        Budget::new(self.budget)
    }

    fn load(&mut self, r: &EntityRef) -> Result<(), CliError> {
        self.ws.load(&r.path)?;
        Ok(())
    }

    fn pick(&mut self, kind: Kind, r: &EntityRef) -> Result<String, CliError> {
        self.load(r)?;
        Ok(self.ws.pick(kind, &r.path, r.name.as_deref())?)
    }

    /// A category or poset from the file, preferring categories.
    fn category(&mut self, r: &EntityRef) -> Result<(String, CatRef), CliError> {
        self.load(r)?;
        let name = self
            .ws
            .pick(Kind::Category, &r.path, r.name.as_deref())
            .or_else(|_| self.ws.pick(Kind::Poset, &r.path, r.name.as_deref()))?;
        let c = self.ws.category(&name).ok_or_else(|| LoadError::Lookup(format!("no category `{name}`")))?;
        Ok((name, c))
    }

    fn setfun(&mut self, r: &EntityRef) -> Result<(String, SetFunctor), CliError> {
        let name = self.pick(Kind::SetFun, r)?;
        Ok((name.clone(), self.ws.setfuns[&name].value.clone()))
    }

    fn functor(&mut self, r: &EntityRef) -> Result<(String, FinFunctor), CliError> {
        let name = self.pick(Kind::Functor, r)?;
        Ok((name.clone(), self.ws.functors[&name].value.clone()))
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut ctx = Ctx { ws: Workspace::new(), budget: cli.budget.unwrap_or(kancalc::budget::DEFAULT_BUDGET), dot: cli.dot };
    let kind = cli.command.kind();
    match &cli.command {
        Command::Show { files } => show(&mut ctx, &kind, files),
        Command::Check(c) => check(&mut ctx, &kind, c),
        Command::Colim(d) => colim_or_lim(&mut ctx, &kind, d, true),
        Command::Lim(d) => colim_or_lim(&mut ctx, &kind, d, false),
        Command::Elements { x } => elements_cmd(&mut ctx, &kind, x),
        Command::Kan { gamma, x, right } => kan(&mut ctx, &kind, gamma, x, *right),
        Command::Karoubi { file } => karoubi(&mut ctx, &kind, file),
        Command::Nerve { file, max_dim } => nerve_cmd(&mut ctx, &kind, file, *max_dim),
        Command::Vc { file } => vc(&mut ctx, &kind, file),
        Command::LaxLimit { file, colax } => lax(&mut ctx, &kind, file, *colax),
        Command::Tw { file } => tw(&mut ctx, &kind, file),
        Command::Ind(c) => ind(&mut ctx, &kind, c),
        Command::Harness(h) => harness(&ctx, &kind, h),
    }
}

fn show(ctx: &mut Ctx, kind: &str, files: &[EntityRef]) -> Result<Report, CliError> {
    for f in files {
        ctx.load(f)?;
    }
    let mut r = Report::new(kind, true);
    let text = ctx.ws.serialize();
    r.data = json!({ "text": text });
    r.lines = text.lines().map(str::to_string).collect();
    if ctx.dot {
        let target = files.last().ok_or_else(|| CliError::Usage("--dot needs a file".into()))?;
        if let Ok(name) = ctx.ws.pick(Kind::Poset, &target.path, target.name.as_deref()) {
            r.dot = Some(dot::poset(&name, &ctx.ws.posets[&name]));
        } else {
            let (name, c) = ctx.category(target)?;
            r.dot = Some(dot::category(&name, &c));
        }
    }
    Ok(r)
}

fn cone_json(c: &FinCat, cone: &Cone) -> Value {
    json!({
        "vertex": c.object_name(cone.vertex),
        "legs": cone.legs.iter().map(|&l| c.morphism_name(l)).collect::<Vec<_>>(),
    })
}

fn cone_text(c: &FinCat, cone: &Cone) -> String {
    let legs: Vec<&str> = cone.legs.iter().map(|&l| c.morphism_name(l)).collect();
    format!("vertex {}, legs {}", c.object_name(cone.vertex), legs.join(" "))
}

fn obstruction_json(c: &FinCat, o: Option<&Obstruction>) -> Value {
    match o {
        Some(Obstruction::Empty) => json!({ "empty": true }),
        Some(&Obstruction::Disjoint(a, b)) => json!({ "disjoint": [c.object_name(a), c.object_name(b)] }),
        Some(&Obstruction::Parallel(f, g)) => json!({ "parallel": [c.morphism_name(f), c.morphism_name(g)] }),
        None => Value::Null,
    }
}

fn check(ctx: &mut Ctx, kind: &str, c: &CheckCommand) -> Result<Report, CliError> {
    let budget = ctx.budget();
    match c {
        CheckCommand::Filtered { file } => {
            let (name, cat) = ctx.category(file)?;
            let cone = find_cone(&FinFunctor::identity(&cat), &budget)?;
            let mut r = Report::new(kind, cone.is_some());
            match &cone {
                Some(k) => {
                    r.witness = Some(cone_json(&cat, k));
                    r.line(format!("{name} is filtered"));
                    r.line(format!("cone over the identity: {}", cone_text(&cat, k)));
                }
                None => {
                    let why = obstruction_json(&cat, obstruction(&cat).as_ref());
                    r.line(format!("{name} is not filtered: {why}"));
                    r.witness = Some(why);
                }
            }
            r.data = json!({ "category": name, "objects": cat.num_objects(), "morphisms": cat.num_morphisms() });
            Ok(r)
        }
        CheckCommand::Cofinal { file } => {
            let (name, g) = ctx.functor(file)?;
            let rep = check_cofinal(&g);
            let mut r = Report::new(kind, rep.holds);
            if let Some(t) = rep.witness {
                let obj = g.cod().object_name(t).to_string();
                r.witness = Some(json!({ "object": obj, "components": rep.components }));
                r.line(format!("{name} is not cofinal: the fiber under {obj} has {} components", rep.components));
            } else {
                r.line(format!("{name} is cofinal"));
            }
            Ok(r)
        }
        CheckCommand::ConLe { x } => {
            let (name, x) = ctx.setfun(x)?;
            let rep = check_con_le(&x, &budget)?;
            let mut r = Report::new(kind, rep.agree());
            r.data = json!({ "elements_filtered": rep.elements_filtered, "colim_size": rep.colim_size });
            r.line(format!("{name}: elements filtered: {}", rep.elements_filtered));
            r.line(format!("{name}: colimit size: {}", rep.colim_size));
            if !rep.agree() {
                r.witness = Some(r.data.clone());
            }
            Ok(r)
        }
        CheckCommand::Commute { i, j, x } => {
            let (_, ci) = ctx.category(i)?;
            let (_, cj) = ctx.category(j)?;
            let (name, x) = ctx.setfun(x)?;
            let rep = filt_commute_check(&ci, &cj, &x, &budget)?;
            let mut r = Report::new(kind, rep.bijective);
            r.data = json!({
                "i_filtered": rep.i_filtered,
                "left": rep.left,
                "right": rep.right,
                "comparison": rep.comparison,
            });
            r.line(format!("{name}: colim lim has {} elements, lim colim has {}", rep.left, rep.right));
            r.line(format!("I filtered: {}", rep.i_filtered));
            match &rep.witness {
                Some(w) => {
                    r.witness = Some(json!({ "left": rep.left, "right": rep.right, "detail": w }));
                    r.line(format!("not a bijection: {w}"));
                }
                None => {
                    r.line("the comparison is a bijection");
                }
            }
            Ok(r)
        }
    }
}

fn atoms_json(x: &SetFunctor) -> Value {
    let c = x.base();
    Value::Object((0..c.num_objects()).map(|o| (c.object_name(o).to_string(), json!(x.labels(o)))).collect())
}

fn colim_or_lim(ctx: &mut Ctx, kind: &str, d: &DiagramArgs, co: bool) -> Result<Report, CliError> {
    let budget = ctx.budget();
    let word = if co { "colimit" } else { "limit" };
    if let Some(dref) = &d.diagram {
        let (name, e) = ctx.functor(dref)?;
        let cone = if co { colimit(&e, &budget)? } else { limit(&e, &budget)? };
        let mut r = Report::new(kind, cone.is_some());
        match cone {
            Some(k) => {
                r.witness = Some(cone_json(e.cod(), &k));
                r.line(format!("{word} of {name}: {}", cone_text(e.cod(), &k)));
            }
            None => {
                r.line(format!("{name} has no {word} in {}", ctx.ws.functors[&name].to));
            }
        }
        return Ok(r);
    }
    let xref = d.x.as_ref().ok_or_else(|| CliError::Usage("give -d or -X".into()))?;
    let (name, x) = ctx.setfun(xref)?;
    // colimits of presheaves are over the opposite category
    let covariant = if x.variance() == Variance::Covariant { x.clone() } else { x.to_opposite() };
    let mut r = Report::new(kind, true);
    if co {
        let cl = colim_set(&covariant);
        let classes: Vec<Vec<String>> = cl
            .classes
            .iter()
            .map(|members| members.iter().map(|&(o, a)| format!("{}:{}", x.base().object_name(o), x.label(o, a))).collect())
            .collect();
        r.line(format!("colimit of {name}: {} elements", classes.len()));
        for (k, c) in classes.iter().enumerate() {
            r.line(format!("  [{k}] {}", c.join(" ")));
        }
        r.data = json!({ "size": classes.len(), "classes": classes });
    } else {
        let sections = lim_set(&covariant, &budget)?;
        let named: Vec<Vec<String>> = sections
            .iter()
            .map(|s| s.iter().enumerate().map(|(o, &a)| format!("{}:{}", x.base().object_name(o), x.label(o, a))).collect())
            .collect();
        r.line(format!("limit of {name}: {} elements", named.len()));
        for (k, s) in named.iter().enumerate() {
            r.line(format!("  ({k}) {}", s.join(" ")));
        }
        r.data = json!({ "size": named.len(), "sections": named });
    }
    Ok(r)
}

fn elements_cmd(ctx: &mut Ctx, kind: &str, x: &EntityRef) -> Result<Report, CliError> {
    let (name, x) = ctx.setfun(x)?;
    let flavor = if x.variance() == Variance::Covariant { Flavor::Covariant } else { Flavor::Presheaf };
    let el = elements(&x, flavor)?;
    let mut r = Report::new(kind, true);
    let c = &el.cat;
    r.line(format!("elements of {name}: {} objects, {} morphisms", c.num_objects(), c.num_morphisms()));
    for o in 0..c.num_objects() {
        r.line(format!("  {}", c.object_name(o)));
    }
    r.data = json!({
        "objects": c.objects(),
        "morphisms": c.non_identity_morphisms().map(|m| c.morphism_name(m).to_string()).collect::<Vec<_>>(),
    });
    if ctx.dot {
        r.dot = Some(dot::category(&format!("elements of {name}"), c));
    }
    Ok(r)
}

fn kan(ctx: &mut Ctx, kind: &str, gamma: &EntityRef, x: &EntityRef, right: bool) -> Result<Report, CliError> {
    let (gname, g) = ctx.functor(gamma)?;
    let (xname, x) = ctx.setfun(x)?;
    let value = if right { kan_right(&g, &x, &ctx.budget())?.value } else { kan_left(&g, &x)?.value };
    let mut r = Report::new(kind, true);
    let side = if right { "right" } else { "left" };
    r.line(format!("{side} Kan extension of {xname} along {gname}"));
    let c = value.base();
    for o in 0..c.num_objects() {
        r.line(format!("  {}: {} [{}]", c.object_name(o), value.size(o), value.labels(o).join(" ")));
    }
    r.data = json!({ "side": side, "values": atoms_json(&value) });
    Ok(r)
}

fn karoubi(ctx: &mut Ctx, kind: &str, file: &EntityRef) -> Result<Report, CliError> {
    let (name, c) = ctx.category(file)?;
    let k = karoubi_closure(&c);
    let terminal = k.cat.terminal_object();
    let mut r = Report::new(kind, true);
    r.line(format!("Karoubi closure of {name}: {} objects, {} morphisms", k.cat.num_objects(), k.cat.num_morphisms()));
    for (o, &(carrier, p)) in k.projectors.iter().enumerate() {
        r.line(format!("  {} = ({}, {})", k.cat.object_name(o), c.object_name(carrier), c.morphism_name(p)));
    }
    match terminal {
        Some(t) => r.line(format!("terminal object: {}", k.cat.object_name(t))),
        None => r.line("no terminal object"),
    };
    r.data = json!({
        "objects": k.cat.objects(),
        "terminal": terminal.map(|t| k.cat.object_name(t).to_string()),
    });
    if ctx.dot {
        r.dot = Some(dot::category(&format!("Karoubi closure of {name}"), &k.cat));
    }
    Ok(r)
}

fn nerve_cmd(ctx: &mut Ctx, kind: &str, file: &EntityRef, max_dim: usize) -> Result<Report, CliError> {
    if max_dim == 0 {
        return Err(CliError::Usage("--max-dim must be at least 1".into()));
    }
    let (name, c) = ctx.category(file)?;
    let n = nerve(&c, max_dim, &ctx.budget())?;
    let (all, nondeg) = (n.chain_counts(), n.nondegenerate_counts());
    let mut r = Report::new(kind, true);
    r.line(format!("nerve of {name} up to dimension {max_dim}"));
    for k in 0..=max_dim {
        r.line(format!("  N_{k}: {} chains, {} nondegenerate", all[k], nondeg[k]));
    }
    r.data = json!({ "chains": all, "nondegenerate": nondeg });
    Ok(r)
}

fn vc(ctx: &mut Ctx, kind: &str, file: &EntityRef) -> Result<Report, CliError> {
    let (name, c) = ctx.category(file)?;
    let v = v_replacement(&c)?;
    let mut r = Report::new(kind, true);
    let label = |p: &VPoint| match *p {
        VPoint::Zero(o) => format!("<0,{}>", c.object_name(o)),
        VPoint::One(o) => format!("<1,{}>", c.object_name(o)),
        VPoint::Arrow(f) => format!("<o,{}>", c.morphism_name(f)),
    };
    let points: Vec<String> = v.points.iter().map(label).collect();
    r.line(format!("V({name}): {} points, {} relations", v.vposet.len(), v.vcat.num_morphisms() - v.vposet.len()));
    for p in &points {
        r.line(format!("  {p}"));
    }
    r.data = json!({ "points": points, "covers": v.vposet.covers().len() });
    if ctx.dot {
        r.dot = Some(dot::poset(&format!("V({name})"), &v.vposet));
    }
    Ok(r)
}

fn lax(ctx: &mut Ctx, kind: &str, file: &EntityRef, colax: bool) -> Result<Report, CliError> {
    let name = ctx.pick(Kind::Diagram, file)?;
    let d = ctx.ws.diagrams[&name].value.clone();
    let budget = ctx.budget();
    let sc = if colax { colax_limit(&d, &budget)? } else { lax_limit(&d, &budget)? };
    let filtered = is_filtered_exact(&sc.cat, &budget)?;
    let mut r = Report::new(kind, true);
    let word = if colax { "co-lax" } else { "lax" };
    r.line(format!("{word} limit of {name}: {} sections, {} morphisms", sc.cat.num_objects(), sc.cat.num_morphisms()));
    let total = &sc.total;
    let mut sections = Vec::new();
    for (k, s) in sc.sections.iter().enumerate() {
        let objs: Vec<&str> = s.obj_map().iter().map(|&o| total.object_name(o)).collect();
        r.line(format!("  {}: {}", sc.cat.object_name(k), objs.join(" ")));
        sections.push(objs.iter().map(|o| o.to_string()).collect::<Vec<_>>());
    }
    r.line(format!("filtered: {filtered}"));
    r.data = json!({ "colax": colax, "sections": sections, "morphisms": sc.cat.num_morphisms(), "filtered": filtered });
    if ctx.dot {
        r.dot = Some(dot::category(&format!("{word} limit of {name}"), &sc.cat));
    }
    Ok(r)
}

fn tw(ctx: &mut Ctx, kind: &str, file: &EntityRef) -> Result<Report, CliError> {
    let (name, c) = ctx.category(file)?;
    let t = twisted_arrows(&c);
    let mut r = Report::new(kind, true);
    r.line(format!("twisted arrows of {name}: {} objects, {} morphisms", t.cat.num_objects(), t.cat.num_morphisms()));
    for o in 0..t.cat.num_objects() {
        r.line(format!("  {}", t.cat.object_name(o)));
    }
    r.data = json!({ "objects": t.cat.objects(), "morphisms": t.cat.num_morphisms() });
    if ctx.dot {
        r.dot = Some(dot::category(&format!("tw({name})"), &t.cat));
    }
    Ok(r)
}

fn ind(ctx: &mut Ctx, kind: &str, c: &IndCommand) -> Result<Report, CliError> {
    let budget = ctx.budget();
    match c {
        IndCommand::Hom { a, b } => {
            let (an, fa) = ctx.functor(a)?;
            let (bn, fb) = ctx.functor(b)?;
            let pa = IndPresentation::new(fa, &budget)?;
            let pb = IndPresentation::new(fb, &budget)?;
            let hom = ind_hom(&pa, &pb, &budget)?;
            let target = pa.target().clone();
            let mut r = Report::new(kind, true);
            r.line(format!("Hom({an}, {bn}) has {} elements", hom.len()));
            let mut elements = Vec::new();
            for e in 0..hom.len() {
                let comps: Vec<String> = (0..pa.index().num_objects())
                    .map(|j| {
                        let (jp, h) = hom.representative(e, j);
                        format!("{}->[{}@{}]", pa.index().object_name(j), target.morphism_name(h), pb.index().object_name(jp))
                    })
                    .collect();
                r.line(format!("  {}", comps.join(" ")));
                elements.push(comps);
            }
            r.data = json!({ "size": hom.len(), "elements": elements });
            Ok(r)
        }
        IndCommand::Recognize { x } => {
            let (name, x) = ctx.setfun(x)?;
            let rec = is_ind_object(&x, &budget)?;
            let mut r = Report::new(kind, rec.is_ind);
            if rec.is_ind {
                r.line(format!("{name} is an Ind-object presented by its category of elements"));
                r.line(format!("canonical comparison is an isomorphism: {}", rec.canonical_iso));
            } else {
                let el = kancalc::presheaf::elements_of(&x);
                let why = obstruction_json(&el.cat, rec.obstruction.as_ref());
                r.line(format!("{name} is not an Ind-object: its category of elements is not filtered ({why})"));
                r.witness = Some(why);
            }
            r.data = json!({ "is_ind": rec.is_ind, "canonical_iso": rec.canonical_iso });
            Ok(r)
        }
        IndCommand::KaroubiId { file, size_bound, shape_bound } => {
            let (name, c) = ctx.category(file)?;
            let rep = karoubi_identification(&c, *size_bound, *shape_bound, &budget)?;
            let mut r = Report::new(kind, rep.holds());
            r.line(format!("{name}: Karoubi closure has {} objects in {} isomorphism classes", rep.karoubi_objects, rep.iso_classes));
            r.line(format!("split idempotents fully faithful: {}", rep.fully_faithful));
            r.line(format!(
                "swept {} presheaves with value sets <= {}, {} in the image, {} recognizer mismatches, {} terminal-object mismatches",
                rep.swept,
                rep.size_bound,
                rep.in_image,
                rep.mismatches.len(),
                rep.terminal_mismatches.len()
            ));
            r.data = json!({
                "karoubi_objects": rep.karoubi_objects,
                "iso_classes": rep.iso_classes,
                "fully_faithful": rep.fully_faithful,
                "size_bound": rep.size_bound,
                "shape_bound": rep.shape_bound,
                "swept": rep.swept,
                "in_image": rep.in_image,
                "mismatches": rep.mismatches.len(),
                "terminal_mismatches": rep.terminal_mismatches.len(),
            });
            if let Some(x) = rep.mismatches.first().or(rep.terminal_mismatches.first()) {
                r.witness = Some(atoms_json(x));
            }
            Ok(r)
        }
        IndCommand::ProdDemo { n } => {
            let rep = pullback_failure_demo(*n)?;
            let top_even = *n % 2 == 0;
            let ok = rep.fiber_product_objects == 0
                && rep.lax_fiber_product_objects > 0
                && rep.even_cofinal == top_even
                && rep.odd_cofinal == !top_even;
            let mut r = Report::new(kind, ok);
            r.line(format!("[{n}]: evens {:?}, odds {:?}", rep.evens, rep.odds));
            r.line(format!("strict fiber product: {} objects", rep.fiber_product_objects));
            r.line(format!("lax fiber product: {} objects", rep.lax_fiber_product_objects));
            r.line(format!("evens cofinal: {}, odds cofinal: {}", rep.even_cofinal, rep.odd_cofinal));
            r.data = json!({
                "n": n,
                "fiber_product_objects": rep.fiber_product_objects,
                "lax_fiber_product_objects": rep.lax_fiber_product_objects,
                "even_cofinal": rep.even_cofinal,
                "odd_cofinal": rep.odd_cofinal,
            });
            Ok(r)
        }
    }
}

fn harness(ctx: &Ctx, kind: &str, h: &HarnessArgs) -> Result<Report, CliError> {
    let suite = Suite::from_name(&h.suite).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        CliError::Usage(format!("unknown suite `{}`; expected one of {}", h.suite, names.join(", ")))
    })?;
    let d = suite.default_limits();
    let limits = Limits {
        max_objects: h.max_obj.unwrap_or(d.max_objects),
        max_morphisms: h.max_mor.unwrap_or(d.max_morphisms),
        target_objects: h.target_obj.unwrap_or(d.target_objects),
        target_morphisms: h.target_mor.unwrap_or(d.target_morphisms),
        max_size: h.max_size.unwrap_or(d.max_size),
        max_values: h.max_values.unwrap_or(d.max_values),
        budget: ctx.budget,
        time_limit: h.time_limit.map(Duration::from_secs_f64),
    };
    let rep = run_suite(suite, &limits)?;
    let mut r = Report::new(kind, rep.passed());
    r.incomplete = !rep.complete;
    let status = if rep.passed() {
        "pass"
    } else if !rep.complete {
        "incomplete"
    } else {
        "fail"
    };
    r.line(format!("{suite}: {status}, {} instances checked, {} failures", rep.instances, rep.failures));
    for n in &rep.notes {
        r.line(format!("  {n}"));
    }
    if let Some(cx) = &rep.counterexample {
        r.line(format!("first counterexample: {cx}"));
        r.witness = Some(json!(cx));
    }
    r.data = json!({
        "suite": suite.name(),
        "instances": rep.instances,
        "failures": rep.failures,
        "complete": rep.complete,
        "notes": rep.notes,
        "limits": {
            "max_obj": limits.max_objects,
            "max_mor": limits.max_morphisms,
            "target_obj": limits.target_objects,
            "target_mor": limits.target_morphisms,
            "max_size": limits.max_size,
            "max_values": limits.max_values,
        },
    });
    eprintln!("{suite}: {:.2}s", rep.elapsed.as_secs_f64());
    Ok(r)
}
