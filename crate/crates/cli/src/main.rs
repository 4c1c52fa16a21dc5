//! `orecomp`: collision counting, Jordan forms, censuses and explicit
//! collisions for additive polynomials over finite fields.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orecomp::census::{
    self, additive_census, bluher_counts, decompose_given_h, general_census,
    indecomposable_count, irreducible_count, predicted_counts, predicted_n_i,
    restriction_counts, CensusTable, CountMethod, Variant,
};
use orecomp::construct::{
    build_collision, enumerate_t, has_indecomposable_certificate, recover_params,
    sample_indecomposable_counted, sample_with_collision_count,
};
use orecomp::frobenius::{
    brute_right_component_count, collision_count_r2, find_jordan, partition_count,
    possible_collision_sizes, projective_poly, projective_roots_direct,
    projective_roots_via_components, right_component_count,
};
use orecomp::text::{
    format_additive, format_list_element, format_poly, parse_additive, parse_element,
    parse_field, parse_poly,
};
use orecomp::{AdditivePoly, Error, FieldCtx};
use serde_json::{json, Map, Value};

use report::{int, Report, Table};

#[derive(Parser)]
#[command(name = "orecomp", version, about = "Decompositions and collisions of additive polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    /// Field, e.g. `p=3,d0=1,d=3,mod=1,-1,0,1`.
    #[arg(long)]
    field: Option<String>,
    /// Seed for random moduli, factoring and sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for enumerations; 0 picks a default.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Re-verify the result with an independent method.
    #[arg(long)]
    check: bool,
}

impl Common {
    fn field(&self) -> Result<FieldCtx, Error> {
        let spec = self
            .field
            .as_deref()
            .ok_or_else(|| Error::Parse("--field is required".into()))?;
        parse_field(spec, self.seed)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Algorithm,
    Brute,
    Projective,
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Algorithm => CountMethod::Algorithm,
            Method::Brute => CountMethod::BruteForce,
            Method::Projective => CountMethod::ProjectiveRoots,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    All,
    BNonzero,
    AbNonzero,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::All => Variant::All,
            VariantArg::BNonzero => Variant::BNonzero,
            VariantArg::AbNonzero => Variant::AbNonzero,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SampleKind {
    Collisions,
    Indecomposable,
}

#[derive(Subcommand)]
enum Command {
    /// Number of degree-r right components; at skew degree 2 this is the collision count.
    Collisions {
        #[command(flatten)]
        common: Common,
        /// `add:c0,c1,…` or an ordinary polynomial in sparse or dense form.
        #[arg(long)]
        poly: String,
    },
    /// Rational Jordan form of the Frobenius on the roots of a squarefree polynomial.
    Jordan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
    },
    /// Roots in F_q of x^(1+r+…+r^(m-1)) + ax + b.
    ProjRoots {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Possible maximal collision sizes at degree r^m.
    Sizes {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: u32,
        /// Use this r instead of the one of --field.
        #[arg(long)]
        r: Option<u64>,
    },
    /// Closed-form counts for the field of --field.
    Counts {
        #[command(flatten)]
        common: Common,
        /// Degree r^m for the restriction relations.
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Largest skew degree for indecomposable counts.
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// Exhaustive census of x^(r^m) + ax^r + bx.
    Census {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, value_enum, default_value = "all")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "algorithm")]
        method: Method,
    },
    /// All compositions of monic original degree-p polynomials, with collisions classified.
    CensusGeneral {
        #[command(flatten)]
        common: Common,
    },
    /// The collision {(g, h) : t ∈ T} of the family F(ε, u, ℓ, s) shifted by w.
    Construct {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        eps: u8,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        ell: u64,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        w: String,
    },
    /// Random additive polynomial with a prescribed property.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: SampleKind,
        /// Collision count for `collisions`.
        #[arg(long)]
        i: Option<u64>,
        /// Skew degree for `indecomposable`.
        #[arg(long)]
        n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Collisions { common, .. }
        | Command::Jordan { common, .. }
        | Command::ProjRoots { common, .. }
        | Command::Sizes { common, .. }
        | Command::Counts { common, .. }
        | Command::Census { common, .. }
        | Command::CensusGeneral { common }
        | Command::Construct { common, .. }
        | Command::Sample { common, .. } => common.clone(),
    };
    match run(&cli.command).and_then(|r| emit(&common, &r)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GuardExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn emit(common: &Common, report: &Report) -> Result<(), Error> {
    let text = report.render(common.format);
    match &common.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Collisions { common, poly } => collisions(common, poly),
        Command::Jordan { common, poly } => jordan(common, poly),
        Command::ProjRoots { common, m, a, b } => proj_roots(common, *m, a, b),
        Command::Sizes { common, m, r } => sizes(common, *m, *r),
        Command::Counts { common, m, n } => counts(common, *m, *n),
        Command::Census {
            common,
            m,
            variant,
            method,
        } => census_cmd(common, *m, (*variant).into(), (*method).into()),
        Command::CensusGeneral { common } => census_general(common),
        Command::Construct {
            common,
            eps,
            u,
            ell,
            s,
            w,
        } => construct(common, *eps, u, *ell, s, w),
        Command::Sample { common, kind, i, n } => sample(common, *kind, *i, *n),
    }
}

fn with_field(command: &str, ctx: &FieldCtx) -> Report {
    let mut r = Report::new(command);
    r.set("field", ctx.spec_string());
    r.set("p", ctx.p()).set("r", ctx.r()).set("q", ctx.q());
    r
}

fn read_additive(ctx: &FieldCtx, s: &str) -> Result<AdditivePoly, Error> {
    if s.trim_start().starts_with("add:") {
        parse_additive(ctx, s)
    } else {
        ctx.ore().to_additive(&parse_poly(ctx, s)?)
    }
}

fn mismatch(what: &str, a: impl std::fmt::Display, b: impl std::fmt::Display) -> Error {
    Error::RouteMismatch(format!("{what}: {a} vs {b}"))
}

fn collisions(common: &Common, poly: &str) -> Result<Report, Error> {
    let ctx = common.field()?;
    let f = read_additive(&ctx, poly)?;
    let n = f.skew_degree().ok_or(Error::ZeroPolynomial)?;
    let (count, method) = if n == 2 {
        (u128::from(collision_count_r2(&ctx, &f)?), "collision_counting")
    } else {
        (right_component_count(&ctx, &f)?, "find_jordan")
    };
    let mut r = with_field("collisions", &ctx);
    r.set("poly", format_additive(&ctx, &f));
    r.set("skew_degree", n);
    r.set("method", method);
    r.set("count", int(count));
    if common.check {
        let brute = brute_right_component_count(&ctx, &f)?;
        if brute != count {
            return Err(mismatch("right components", count, brute));
        }
        r.set("check", json!({"method": "trial_division", "count": int(brute), "ok": true}));
    }
    Ok(r)
}

fn jordan(common: &Common, poly: &str) -> Result<Report, Error> {
    let ctx = common.field()?;
    let f = read_additive(&ctx, poly)?;
    let form = find_jordan(&ctx, &f)?;
    let lines = form.invariant_line_count(ctx.r());
    let blocks: Vec<Value> = form
        .blocks
        .iter()
        .map(|b| json!({"factor": format_poly(&ctx, &b.factor), "mults": b.mults}))
        .collect();
    let mut r = with_field("jordan", &ctx);
    r.set("poly", format_additive(&ctx, &f));
    r.set("blocks", blocks);
    r.set("dim", form.dim);
    r.set("invariant_lines", int(lines));
    if common.check {
        let brute = brute_right_component_count(&ctx, &f)?;
        if brute != lines {
            return Err(mismatch("invariant lines", lines, brute));
        }
        r.set("check", json!({"method": "trial_division", "count": int(brute), "ok": true}));
    }
    Ok(r)
}

fn proj_roots(common: &Common, m: u32, a: &str, b: &str) -> Result<Report, Error> {
    let ctx = common.field()?;
    if m < 2 {
        return Err(Error::InvalidParams("m must be at least 2".into()));
    }
    let (a, b) = (parse_element(&ctx, a)?, parse_element(&ctx, b)?);
    let via = projective_roots_via_components(&ctx, m, a, b)?;
    let mut r = with_field("proj-roots", &ctx);
    r.set("m", m);
    r.set("a", format_list_element(&ctx, a));
    r.set("b", format_list_element(&ctx, b));
    r.set("roots", via);
    if common.check {
        let direct = projective_roots_direct(&ctx, m, a, b)?;
        let psi = projective_poly(&ctx, m, a, b)?;
        let pr = ctx.poly();
        let evaluated = ctx.elements().filter(|&x| pr.eval(&psi, x).is_zero()).count() as u64;
        if direct != via || evaluated != via {
            return Err(mismatch("projective roots", via, format!("{direct}/{evaluated}")));
        }
        r.set("check", json!({"method": "root_finding_and_evaluation", "count": direct, "ok": true}));
    }
    Ok(r)
}

fn sizes(common: &Common, m: u32, r_override: Option<u64>) -> Result<Report, Error> {
    let r = match r_override {
        Some(r) => r,
        None => common.field()?.r(),
    };
    let set = possible_collision_sizes(m, r)?;
    let bound: u128 = (0..=m).map(partition_count).sum();
    let mut rep = Report::new("sizes");
    rep.set("r", r).set("m", m);
    rep.set("sizes", set.sizes.iter().map(|&s| int(s)).collect::<Vec<_>>());
    rep.set("count", set.sizes.len());
    rep.set("partition_bound", int(bound));
    rep.table = Some(Table {
        header: vec!["size".into()],
        rows: set.sizes.iter().map(|s| vec![s.to_string()]).collect(),
    });
    if common.check && r > u64::from(m) && set.sizes.len() as u128 != bound {
        return Err(mismatch("|S_m|", set.sizes.len(), bound));
    }
    Ok(rep)
}

fn rows_value(t: &CensusTable) -> Value {
    Value::Object(
        t.rows
            .iter()
            .map(|(i, c)| (i.to_string(), int(*c)))
            .collect::<Map<_, _>>(),
    )
}

fn table_value(t: &CensusTable) -> Value {
    json!({
        "p": t.p, "r": t.r, "q": t.q, "m": t.m,
        "variant": t.variant.name(),
        "rows": rows_value(t),
    })
}

fn counts(common: &Common, m: u32, n: u32) -> Result<Report, Error> {
    let ctx = common.field()?;
    let (q, r) = (ctx.q(), ctx.r());
    let mut rep = with_field("counts", &ctx);
    rep.set("colcounts", rows_value(&predicted_counts(q, r)?));
    rep.set("bluher", rows_value(&bluher_counts(q, r)?));
    let rel = restriction_counts(q, r, m)?;
    rep.set(
        "restriction",
        json!({"m": m, "gamma": int(rel.gamma), "gamma_prev": int(rel.gamma_prev)}),
    );
    let n_i: Map<String, Value> = predicted_n_i(q, r)?
        .into_iter()
        .map(|(i, c)| (i.to_string(), int(c)))
        .collect();
    rep.set("n_i", Value::Object(n_i));
    let mut indec = Map::new();
    let mut irred = Map::new();
    for k in 1..=n {
        indec.insert(k.to_string(), int(indecomposable_count(q, r, k)?));
        irred.insert(k.to_string(), int(irreducible_count(r, k)?));
    }
    rep.set("indecomposable", Value::Object(indec));
    rep.set("irreducible_over_fr", Value::Object(irred));
    if common.check {
        let observed = additive_census(&ctx, 2, Variant::All, CountMethod::Algorithm, common.jobs)?;
        let predicted = predicted_counts(q, r)?;
        if observed.rows != predicted.rows {
            return Err(mismatch("census", format!("{:?}", observed.rows), format!("{:?}", predicted.rows)));
        }
        rep.set("check", json!({"method": "exhaustive_census", "ok": true}));
    }
    Ok(rep)
}

fn predicted_for(ctx: &FieldCtx, m: u32, variant: Variant) -> Result<Option<CensusTable>, Error> {
    if m != 2 {
        return Ok(None);
    }
    let (q, r) = (ctx.q(), ctx.r());
    let ab = bluher_counts(q, r)?;
    let rel = restriction_counts(q, r, 2)?;
    Ok(Some(match variant {
        Variant::All => predicted_counts(q, r)?,
        Variant::AbNonzero => ab,
        Variant::BNonzero => rel.lift_to_b_nonzero(&ab),
    }))
}

fn census_cmd(common: &Common, m: u32, variant: Variant, method: CountMethod) -> Result<Report, Error> {
    let ctx = common.field()?;
    let observed = additive_census(&ctx, m, variant, method, common.jobs)?;
    let predicted = predicted_for(&ctx, m, variant)?;
    let mut rep = Report::new("census");
    rep.set("field", ctx.spec_string());
    rep.set("p", ctx.p()).set("r", ctx.r()).set("q", ctx.q());
    rep.set("m", m).set("variant", variant.name());
    rep.set("method", serde_json::to_value(method).expect("enum serializes"));
    rep.set("observed", table_value(&observed));
    rep.set("predicted", predicted.as_ref().map_or(Value::Null, table_value));
    if let Some(p) = &predicted {
        rep.set("match", p.rows == observed.rows);
    }
    rep.table = Some(Table {
        header: vec!["i".into(), "count".into()],
        rows: observed
            .rows
            .iter()
            .map(|(i, c)| vec![i.to_string(), c.to_string()])
            .collect(),
    });
    if common.check {
        for other in [CountMethod::Algorithm, CountMethod::BruteForce, CountMethod::ProjectiveRoots] {
            let t = additive_census(&ctx, m, variant, other, common.jobs)?;
            if t.rows != observed.rows {
                return Err(mismatch("census methods", format!("{other:?}"), format!("{method:?}")));
            }
        }
        rep.set("check", json!({"method": "all_three_counting_routes", "ok": true}));
    }
    Ok(rep)
}

fn census_general(common: &Common) -> Result<Report, Error> {
    let ctx = common.field()?;
    let report = general_census(&ctx, common.jobs)?;
    let classes: Vec<Value> = report
        .classes
        .iter()
        .map(|c| {
            json!({
                "f": format_poly(&ctx, &c.f),
                "size": c.size(),
                "classification": c.classification,
                "k": c.k,
                "violations": c.violations,
                "decompositions": c.decompositions.iter().map(|(g, h)| json!({
                    "g": format_poly(&ctx, g),
                    "h": format_poly(&ctx, h),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut by_class = Map::new();
    for c in [
        census::Classification::Frobenius,
        census::Classification::ConstructedFamily,
        census::Classification::Unexplained,
    ] {
        let key = serde_json::to_value(c).expect("enum serializes");
        by_class.insert(key.as_str().expect("string").to_string(), report.count(c).into());
    }
    let mut rep = with_field("census-general", &ctx);
    rep.set("pairs", int(report.pairs));
    rep.set("class_count", report.classes.len());
    rep.set("predicted_total", int(report.predicted_total));
    rep.set("by_classification", Value::Object(by_class));
    rep.set(
        "by_size",
        Value::Object(
            report
                .by_size()
                .into_iter()
                .map(|(s, c)| (s.to_string(), c.into()))
                .collect(),
        ),
    );
    rep.set("k_values", report.k_values().into_iter().collect::<Vec<_>>());
    rep.set("violations", report.violation_count());
    rep.set("classes", classes);
    if common.check {
        for c in &report.classes {
            for (g, h) in &c.decompositions {
                if decompose_given_h(&ctx, &c.f, h).as_ref() != Some(g) {
                    return Err(mismatch("decomposition", format_poly(&ctx, &c.f), format_poly(&ctx, h)));
                }
            }
        }
        rep.set("check", json!({"method": "triangular_solve_per_h", "ok": true}));
    }
    Ok(rep)
}

fn construct(common: &Common, eps: u8, u: &str, ell: u64, s: &str, w: &str) -> Result<Report, Error> {
    let ctx = common.field()?;
    let (u, s, w) = (parse_element(&ctx, u)?, parse_element(&ctx, s)?, parse_element(&ctx, w)?);
    let members = build_collision(&ctx, eps, u, ell, s, w)?;
    let t_set = enumerate_t(&ctx, eps, u)?;
    let f = orecomp::construct::family_f(&ctx, eps, u, ell, s, w)?;
    let m = (ctx.r() - 1) / ell;
    let pr = ctx.poly();
    let pairs: Vec<Value> = members
        .iter()
        .map(|d| json!({"g": format_poly(&ctx, &d.g), "h": format_poly(&ctx, &d.h)}))
        .collect();
    let mut rep = with_field("construct", &ctx);
    rep.set("f", format_poly(&ctx, &f));
    rep.set("pairs", pairs);
    rep.set(
        "params",
        json!({
            "epsilon": eps,
            "u": format_list_element(&ctx, u),
            "ell": ell,
            "m": m,
            "s": format_list_element(&ctx, s),
            "w": format_list_element(&ctx, w),
            "t_set": t_set.iter().map(|&t| format_list_element(&ctx, t)).collect::<Vec<_>>(),
        }),
    );
    rep.set("size", members.len());
    if common.check {
        for d in &members {
            if pr.compose(&d.g, &d.h) != f || decompose_given_h(&ctx, &f, &d.h).as_ref() != Some(&d.g) {
                return Err(Error::RouteMismatch("member does not recompose".into()));
            }
        }
        let class = recover_params(&ctx, &f)
            .ok_or_else(|| Error::RouteMismatch("parameters not recoverable from f".into()))?;
        if class.members != members {
            return Err(Error::RouteMismatch("recovered family differs".into()));
        }
        rep.set("check", json!({"method": "recomposition_and_parameter_recovery", "ok": true}));
    }
    Ok(rep)
}

fn sample(common: &Common, kind: SampleKind, i: Option<u64>, n: Option<usize>) -> Result<Report, Error> {
    let ctx = common.field()?;
    let mut rep = with_field("sample", &ctx);
    rep.set("seed", common.seed);
    match kind {
        SampleKind::Collisions => {
            let i = i.ok_or_else(|| Error::InvalidParams("--i is required".into()))?;
            let f = sample_with_collision_count(&ctx, i, common.seed)?;
            rep.set("kind", "collisions").set("i", i);
            rep.set("poly", format_additive(&ctx, &f));
            if common.check {
                let brute = brute_right_component_count(&ctx, &f)?;
                if brute != u128::from(i) {
                    return Err(mismatch("collision count", i, brute));
                }
                rep.set("check", json!({"method": "trial_division", "count": int(brute), "ok": true}));
            }
        }
        SampleKind::Indecomposable => {
            let n = n.ok_or_else(|| Error::InvalidParams("--n is required".into()))?;
            let (f, tries) = sample_indecomposable_counted(&ctx, n, common.seed)?;
            rep.set("kind", "indecomposable").set("n", n);
            rep.set("poly", format_additive(&ctx, &f));
            rep.set("tries", tries);
            if common.check {
                let certified = has_indecomposable_certificate(&ctx, &f)?;
                let components = if n > 1 { brute_right_component_count(&ctx, &f)? } else { 0 };
                if !certified || components != 0 {
                    return Err(Error::RouteMismatch("sample is decomposable".into()));
                }
                rep.set("check", json!({"method": "certificate_and_trial_division", "ok": true}));
            }
        }
    }
    Ok(rep)
}
