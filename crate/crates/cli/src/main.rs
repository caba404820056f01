mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use macaulay_core::constructions::Family;
use macaulay_core::export::{export_cube, export_hasse, export_order, to_json_string, Format};
use macaulay_core::field::{Field, FieldSpec, PrimeField, Rationals};
use macaulay_core::hilbert::{
    check_hypotheses, hilbert_function, initial_monomial_data, initial_segment_space,
    is_macaulay_ring, poset_witness_to_ring, random_ideals, ring_witness_to_poset,
    segment_is_ideal, Ideal, IdealSpec, LeveledMonomialBasis, Mode, RingCheckOptions,
};
use macaulay_core::order::OrderTable;
use macaulay_core::par::Parallelism;
use macaulay_core::poset::RankedPoset;
use macaulay_core::ring::{recognize_tree_ring, RingModel};
use macaulay_core::verify::{
    is_macaulay_with, search_macaulay_order, Direction, Failure, MacaulayVerdict, SearchOutcome,
    VerifyOptions, DEFAULT_MAX_SUBSETS,
};
use serde_json::json;

use input::{resolve_ideal, resolve_order, resolve_poset, resolve_ring, RingInput};
use report::{InputRef, RunReport};

const EXIT_FAILS: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_RESOURCE: i32 = 3;
const EXIT_HYPOTHESIS: i32 = 4;

/// Build ranked posets and graded quotient rings, and verify the Macaulay
/// property exhaustively.
#[derive(Parser)]
#[command(name = "macaulay", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the run report as JSON instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for `report.json` and exported files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Coefficient field: `q` or `p:<prime>`. Defaults to the ring's own.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Cap on subsets enumerated per level.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SUBSETS)]
    max_subsets: u64,
    /// Report every failure instead of stopping at the first.
    #[arg(long, global = true)]
    all_failures: bool,
    /// Run the subset scan on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Verify that a total order is Macaulay on a ranked poset.
    CheckPoset {
        #[arg(long)]
        poset: String,
        #[arg(long, default_value = "lex")]
        order: String,
        #[arg(long, default_value = "lower")]
        direction: Direction,
        /// Check the dual poset with the dual order instead.
        #[arg(long)]
        dual: bool,
    },
    /// Verify that a quotient ring is Macaulay, on monomial ideals, on the
    /// poset of monomials, or both.
    CheckRing {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "lex")]
        order: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Truncation degree override.
        #[arg(long)]
        degree: Option<usize>,
        /// Largest generator degree of enumerated monomial ideals.
        #[arg(long)]
        max_gen_degree: Option<usize>,
    },
    /// Classes, Hilbert function, level linear independence, tree shape.
    RingInfo {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        degree: Option<usize>,
        /// Also check whether this order is a monomial order.
        #[arg(long)]
        order: Option<String>,
    },
    /// Hilbert functions of an ideal, its initial monomial space and ideal,
    /// and its initial segment space.
    Hilbert {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "lex")]
        order: String,
        #[arg(long)]
        degree: Option<usize>,
        /// Ideal as JSON or a JSON file. Defaults to the example's ideal.
        #[arg(long)]
        ideal: Option<String>,
        /// Use this many seeded random ideals instead.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Export a Hasse diagram, an order enumeration, or cube coordinates.
    Export {
        #[arg(long)]
        poset: String,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        #[arg(long)]
        order: Option<String>,
    },
    /// Backtracking search for a Macaulay order.
    SearchOrder {
        #[arg(long)]
        poset: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    MonomialIdeals,
    Poset,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
    Order,
    Cube,
}

struct Ctx {
    json: bool,
    out: Option<PathBuf>,
    seed: u64,
    field: Option<FieldSpec>,
    verify: VerifyOptions,
}

/// Text summary plus the machine-readable outcome of a command.
struct Outcome {
    exit: i32,
    text: String,
    value: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = command_name(&cli.command);
    let mut rep = RunReport::new(name);
    rep.seed = Some(cli.seed);
    let result = ctx_from(&cli).and_then(|ctx| {
        let o = run(&cli.command, &ctx, &mut rep)?;
        Ok((ctx, o))
    });
    match result {
        Ok((ctx, o)) => {
            rep.exit_code = o.exit;
            rep.outcome = o.value;
            rep.elapsed_ms = start.elapsed().as_millis() as u64;
            if ctx.json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", o.text);
            }
            if let Some(dir) = &ctx.out {
                if let Err(e) = rep.write(dir) {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
            ExitCode::from(o.exit as u8)
        }
        Err(e) => {
            let code = exit_code_of(&e);
            eprintln!("error: {e:#}");
            ExitCode::from(code as u8)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckPoset { .. } => "check-poset",
        Command::CheckRing { .. } => "check-ring",
        Command::RingInfo { .. } => "ring-info",
        Command::Hilbert { .. } => "hilbert",
        Command::Export { .. } => "export",
        Command::SearchOrder { .. } => "search-order",
    }
}

fn exit_code_of(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<macaulay_core::Error>() {
        Some(macaulay_core::Error::Resource(_)) => EXIT_RESOURCE,
        Some(macaulay_core::Error::Hypothesis(_)) => EXIT_HYPOTHESIS,
        _ => EXIT_USAGE,
    }
}

fn ctx_from(cli: &Cli) -> Result<Ctx> {
    let field = cli.field.as_deref().map(FieldSpec::parse).transpose()?;
    Ok(Ctx {
        json: cli.json,
        out: cli.out.clone(),
        seed: cli.seed,
        field,
        verify: VerifyOptions {
            max_subsets: cli.max_subsets,
            all_failures: cli.all_failures,
            parallelism: if cli.sequential {
                Parallelism::Sequential
            } else {
                Parallelism::default()
            },
        },
    })
}

fn run(cmd: &Command, ctx: &Ctx, rep: &mut RunReport) -> Result<Outcome> {
    match cmd {
        Command::CheckPoset {
            poset,
            order,
            direction,
            dual,
        } => check_poset(ctx, rep, poset, order, *direction, *dual),
        Command::CheckRing {
            ring,
            order,
            mode,
            degree,
            max_gen_degree,
        } => {
            let input = resolve_ring(ring, *degree)?;
            let args = RingArgs {
                order,
                mode: *mode,
                max_gen_degree: *max_gen_degree,
            };
            with_field(ctx, rep, input, |r, i, c, rep| check_ring(r, i, c, rep, &args))
        }
        Command::RingInfo {
            ring,
            degree,
            order,
        } => {
            let input = resolve_ring(ring, *degree)?;
            with_field(ctx, rep, input, |r, i, c, rep| ring_info(r, i, c, rep, order.as_deref()))
        }
        Command::Hilbert {
            ring,
            order,
            degree,
            ideal,
            random,
        } => {
            let input = resolve_ring(ring, *degree)?;
            let ideals = match (ideal, random, input.example) {
                (Some(s), _, _) => vec![resolve_ideal(s)?],
                (None, Some(n), _) => random_ideals(input.spec.d, input.spec.max_degree, *n, ctx.seed),
                (None, None, Some(ex)) => vec![ex.ideal()],
                (None, None, None) => bail!(macaulay_core::Error::Argument(
                    "give --ideal or --random".into()
                )),
            };
            with_field(ctx, rep, input, |r, i, c, rep| hilbert(r, i, c, rep, order, &ideals))
        }
        Command::Export {
            poset,
            format,
            order,
        } => export(ctx, rep, poset, *format, order.as_deref()),
        Command::SearchOrder { poset, budget } => search_order(ctx, rep, poset, *budget),
    }
}

fn fmt_label(l: &[u32]) -> String {
    let parts: Vec<String> = l.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn fmt_set(p: &RankedPoset, ids: &[usize]) -> String {
    let parts: Vec<String> = ids.iter().map(|&x| fmt_label(p.label(x))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_failure(p: &RankedPoset, f: &Failure) -> String {
    format!(
        "  level {}, q = {}, {:?}: witness {} with shadow {}; segment {} with shadow {}\n",
        f.level,
        f.q,
        f.reason,
        fmt_set(p, &f.witness),
        f.witness_shadow.len(),
        fmt_set(p, &f.segment),
        f.segment_shadow.len(),
    )
    .to_lowercase()
}

fn failure_json(p: &RankedPoset, f: &Failure) -> serde_json::Value {
    let labels = |ids: &[usize]| ids.iter().map(|&x| p.label(x).clone()).collect::<Vec<_>>();
    json!({
        "level": f.level,
        "q": f.q,
        "reason": f.reason,
        "witness": labels(&f.witness),
        "witness_shadow": labels(&f.witness_shadow),
        "segment": labels(&f.segment),
        "segment_shadow": labels(&f.segment_shadow),
    })
}

fn verdict_json(p: &RankedPoset, v: &MacaulayVerdict) -> serde_json::Value {
    json!({
        "holds": v.holds,
        "direction": v.direction,
        "failures": v.failures.iter().map(|f| failure_json(p, f)).collect::<Vec<_>>(),
        "stats": v.stats,
    })
}

fn verdict_text(p: &RankedPoset, v: &MacaulayVerdict) -> String {
    let mut s = format!(
        "Macaulay ({}): {} ({} levels, {} subsets)\n",
        serde_json::to_value(v.direction).unwrap().as_str().unwrap_or(""),
        if v.holds { "holds" } else { "fails" },
        v.stats.levels_checked,
        v.stats.subsets_examined
    );
    for f in &v.failures {
        s += &fmt_failure(p, f);
    }
    s
}

fn check_poset(
    ctx: &Ctx,
    rep: &mut RunReport,
    poset: &str,
    order: &str,
    direction: Direction,
    dual: bool,
) -> Result<Outcome> {
    let input = resolve_poset(poset)?;
    let choice = resolve_order(order, input.family.as_ref(), None)?;
    rep.inputs
        .push(InputRef::new("poset", &input.descriptor, &to_json_string(&input.poset)));
    let recipe_json = serde_json::to_string(&choice.recipe)?;
    rep.inputs.push(InputRef::new("order", order, &recipe_json));
    let mut p = input.poset;
    let mut o = OrderTable::build(&p, choice.recipe)?;
    if dual {
        p = p.dual()?;
        o = o.dual();
    }
    let v = is_macaulay_with(&p, &o, direction, &ctx.verify)?;
    let mut text = format!(
        "poset: {}{} ({} elements, level sizes {:?})\norder: {order}\n",
        input.descriptor,
        if dual { " (dual)" } else { "" },
        p.len(),
        p.level_sizes()
    );
    text += &verdict_text(&p, &v);
    Ok(Outcome {
        exit: if v.holds { 0 } else { EXIT_FAILS },
        text,
        value: json!({ "dual": dual, "verdict": verdict_json(&p, &v) }),
    })
}

/// Builds the ring over the requested field and hands it to `f`.
fn with_field(
    ctx: &Ctx,
    rep: &mut RunReport,
    mut input: RingInput,
    f: impl FnOnce(&dyn DynRing, &RingInput, &Ctx, &mut RunReport) -> Result<Outcome>,
) -> Result<Outcome> {
    if let Some(field) = ctx.field {
        input.spec.field = field;
    }
    rep.field = Some(input.spec.field.label());
    rep.inputs
        .push(InputRef::new("ring", &input.descriptor, &input.spec.to_json()));
    match input.spec.field {
        FieldSpec::Rationals => {
            let ring = RingModel::build(&input.spec, Rationals)?;
            f(&ring, &input, ctx, rep)
        }
        FieldSpec::Prime { p } => {
            let ring = RingModel::build(&input.spec, PrimeField::new(p)?)?;
            f(&ring, &input, ctx, rep)
        }
    }
}

/// Field-erased view of a ring, enough for the command bodies.
trait DynRing {
    fn check(&self, input: &RingInput, ctx: &Ctx, args: &RingArgs) -> Result<Outcome>;
    fn info(&self, input: &RingInput, order: Option<&str>) -> Result<Outcome>;
    fn hilbert(&self, input: &RingInput, order: &str, ideals: &[IdealSpec]) -> Result<Outcome>;
}

impl<F: Field> DynRing for RingModel<F> {
    fn check(&self, input: &RingInput, ctx: &Ctx, args: &RingArgs) -> Result<Outcome> {
        check_ring_impl(self, input, ctx, args)
    }
    fn info(&self, input: &RingInput, order: Option<&str>) -> Result<Outcome> {
        ring_info_impl(self, input, order)
    }
    fn hilbert(&self, input: &RingInput, order: &str, ideals: &[IdealSpec]) -> Result<Outcome> {
        hilbert_impl(self, input, order, ideals)
    }
}

struct RingArgs<'a> {
    order: &'a str,
    mode: ModeArg,
    max_gen_degree: Option<usize>,
}

fn check_ring(
    r: &dyn DynRing,
    input: &RingInput,
    ctx: &Ctx,
    rep: &mut RunReport,
    args: &RingArgs,
) -> Result<Outcome> {
    rep.inputs.push(InputRef::new("order", args.order, args.order));
    r.check(input, ctx, args)
}

fn ring_info(
    r: &dyn DynRing,
    input: &RingInput,
    _ctx: &Ctx,
    _rep: &mut RunReport,
    order: Option<&str>,
) -> Result<Outcome> {
    r.info(input, order)
}

fn hilbert(
    r: &dyn DynRing,
    input: &RingInput,
    _ctx: &Ctx,
    rep: &mut RunReport,
    order: &str,
    ideals: &[IdealSpec],
) -> Result<Outcome> {
    rep.inputs.push(InputRef::new(
        "ideals",
        &format!("{} ideal(s)", ideals.len()),
        &serde_json::to_string(ideals)?,
    ));
    r.hilbert(input, order, ideals)
}

/// The ring's poset labelled the way the order expects, plus the table.
fn ring_order<F: Field>(ring: &RingModel<F>, input: &RingInput, order: &str) -> Result<OrderTable> {
    let choice = resolve_order(order, input.family.as_ref(), input.example)?;
    if choice.family_labels {
        let fam: &Family = input.family.as_ref().expect("family-default needs a family");
        let labelled = fam.label_ring(ring)?;
        Ok(OrderTable::build(&labelled, choice.recipe)?)
    } else {
        Ok(OrderTable::build(ring.poset(), choice.recipe)?)
    }
}

fn monomial(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(i, &v)| {
            if v == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{v}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn class_names<F: Field>(ring: &RingModel<F>, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&c| monomial(&ring.class(c).rep)).collect()
}

fn check_ring_impl<F: Field>(
    ring: &RingModel<F>,
    input: &RingInput,
    ctx: &Ctx,
    args: &RingArgs,
) -> Result<Outcome> {
    let o = ring_order(ring, input, args.order)?;
    let hyp = check_hypotheses(ring, Some(&o))?;
    let given = ring.is_monomial_order(&o)?;
    let opts = RingCheckOptions {
        max_gen_degree: args.max_gen_degree,
        all_failures: ctx.verify.all_failures,
        verify: ctx.verify.clone(),
        ..RingCheckOptions::default()
    };
    let mut text = format!(
        "ring: {} ({} variables, D = {}, field {})\nHilbert function: {:?}\n",
        input.descriptor,
        ring.num_vars(),
        ring.max_degree(),
        ring.field().spec().label(),
        ring.hilbert_function()
    );
    text += &format!(
        "level linearly independent: {}\n",
        match hyp.lli_failure_degree {
            None => "yes".to_string(),
            Some(d) => format!("no (degree {d})"),
        }
    );
    text += &format!(
        "order {} is a monomial order: {}\n",
        args.order,
        if given.holds { "yes" } else { "no" }
    );
    if let Some(c) = &given.counterexample {
        text += &format!(
            "  {} < {} but {}*{} = {} is not below {}*{} = {}\n",
            monomial(&ring.class(c.smaller).rep),
            monomial(&ring.class(c.larger).rep),
            monomial(&ring.class(c.multiplier).rep),
            monomial(&ring.class(c.smaller).rep),
            monomial(&ring.class(c.smaller_product).rep),
            monomial(&ring.class(c.multiplier).rep),
            monomial(&ring.class(c.larger).rep),
            monomial(&ring.class(c.larger_product).rep),
        );
    }
    let mut value = json!({
        "hilbert_function": ring.hilbert_function(),
        "hypotheses": hyp,
        "order_is_monomial": given,
    });
    let mut exit = 0;
    let mono = if args.mode != ModeArg::Poset {
        let v = is_macaulay_ring(ring, &o, Mode::MonomialIdeals, &opts)?;
        text += &format!(
            "monomial ideals (generated in degree <= {}, {} checked{}): {}\n",
            v.max_gen_degree.unwrap_or(0),
            v.ideals_checked,
            if v.covers_all_ideals { "" } else { ", monomial ideals only" },
            if v.holds { "holds" } else { "fails" }
        );
        for f in &v.failures {
            text += &format!(
                "  ideal ({}) at degree {}: {:?}, segment {:?}, escaped {:?}\n",
                class_names(ring, &f.generators).join(", "),
                f.degree,
                f.reason,
                class_names(ring, &f.segment),
                class_names(ring, &f.escaped)
            );
        }
        if !v.holds {
            exit = EXIT_FAILS;
        }
        value["monomial_ideals"] = serde_json::to_value(&v)?;
        Some(v)
    } else {
        None
    };
    if args.mode != ModeArg::MonomialIdeals {
        if let Some(msg) = hyp.describe_failure() {
            text += &format!("poset mode: hypotheses fail: {msg}\n");
            value["poset"] = json!({ "error": msg });
            let report = Outcome {
                exit: EXIT_HYPOTHESIS,
                text,
                value,
            };
            return Ok(report);
        }
        let v = is_macaulay_ring(ring, &o, Mode::Poset, &opts)?;
        let pv = v.poset_verdict.as_ref().expect("poset mode sets the verdict");
        text += "poset of monomials, ";
        text += &verdict_text(ring.poset(), pv);
        if !v.holds {
            exit = EXIT_FAILS;
        }
        value["poset"] = verdict_json(ring.poset(), pv);
        if let Some(m) = &mono {
            // each side's witness must fail on the other side
            let ring_to_poset = match m.failures.first() {
                Some(f) => ring_witness_to_poset(ring, &o, f)?.recheck(ring.poset(), &o, Direction::Upper)?,
                None => true,
            };
            let poset_to_ring = match pv.failures.first() {
                Some(f) => poset_witness_to_ring(ring, &o, f).is_some(),
                None => true,
            };
            let agree = m.holds == v.holds && ring_to_poset && poset_to_ring;
            text += &format!("modes agree: {}\n", if agree { "yes" } else { "no" });
            value["modes_agree"] = json!(agree);
            if !agree {
                exit = EXIT_FAILS;
            }
        }
    }
    Ok(Outcome { exit, text, value })
}

fn ring_info_impl<F: Field>(
    ring: &RingModel<F>,
    input: &RingInput,
    order: Option<&str>,
) -> Result<Outcome> {
    let lli = ring.level_linear_independence();
    let tree = recognize_tree_ring(ring);
    let p = ring.poset();
    let mut text = format!(
        "ring: {} ({} variables, D = {}, field {})\n",
        input.descriptor,
        ring.num_vars(),
        ring.max_degree(),
        ring.field().spec().label()
    );
    text += &format!("Hilbert function: {:?}\n", ring.hilbert_function());
    text += &format!("monomial classes per degree: {:?}\n", ring.class_counts());
    text += &format!(
        "level linearly independent: {}\n",
        match &lli.failure {
            None => "yes".to_string(),
            Some(f) => format!("no (degree {}: {} classes span {})", f.degree, f.classes, f.dimension),
        }
    );
    text += &format!(
        "Hasse graph: tree {}, cycle {}\n",
        p.hasse_is_tree(),
        p.hasse_is_cycle()
    );
    if let Some(t) = &tree {
        text += &format!("tree ring legs (variable, length): {:?}\n", t.legs);
    }
    let mut value = json!({
        "hilbert_function": ring.hilbert_function(),
        "class_counts": ring.class_counts(),
        "classes": ring.classes(),
        "lli": lli,
        "hasse_tree": p.hasse_is_tree(),
        "hasse_cycle": p.hasse_is_cycle(),
        "tree_legs": tree,
    });
    let mut exit = 0;
    if let Some(order) = order {
        let o = ring_order(ring, input, order)?;
        let m = ring.is_monomial_order(&o)?;
        text += &format!("order {order} is a monomial order: {}\n", if m.holds { "yes" } else { "no" });
        if !m.holds {
            exit = EXIT_FAILS;
        }
        value["order_is_monomial"] = serde_json::to_value(&m)?;
    }
    Ok(Outcome { exit, text, value })
}

fn hilbert_impl<F: Field>(
    ring: &RingModel<F>,
    input: &RingInput,
    order: &str,
    ideals: &[IdealSpec],
) -> Result<Outcome> {
    let o = ring_order(ring, input, order)?;
    let basis = LeveledMonomialBasis::greedy(ring, &o);
    let mono = ring.is_monomial_order(&o)?;
    let mut text = format!(
        "ring: {} (D = {}, field {}), order {order} monomial: {}\n",
        input.descriptor,
        ring.max_degree(),
        ring.field().spec().label(),
        if mono.holds { "yes" } else { "no" }
    );
    let mut rows = Vec::new();
    let mut all_equal = true;
    for (k, spec) in ideals.iter().enumerate() {
        let ideal = Ideal::generate(ring, spec)?;
        let h = hilbert_function(ring, &ideal);
        let data = initial_monomial_data(ring, &ideal, &o, &basis)?;
        let seg = initial_segment_space(ring, &h, &o)?;
        let seg_ideal = segment_is_ideal(ring, &seg.classes);
        // a Macaulay ring keeps all four functions equal and the segment an ideal
        all_equal &= h == data.imv_dims && h == data.imi_dims && h == seg.dims && seg_ideal.holds;
        text += &format!(
            "ideal {k}: Hilb_I {:?}, Hilb_IMV {:?}, Hilb_IMI {:?}, segment space {:?} (ideal: {})\n",
            h,
            data.imv_dims,
            data.imi_dims,
            seg.dims,
            if seg_ideal.holds { "yes" } else { "no" }
        );
        rows.push(json!({
            "hilb_i": h,
            "hilb_imv": data.imv_dims,
            "hilb_imi": data.imi_dims,
            "ims": data.ims.iter().map(|s| class_names(ring, s)).collect::<Vec<_>>(),
            "segment_dims": seg.dims,
            "segment": seg.classes.iter().map(|s| class_names(ring, s)).collect::<Vec<_>>(),
            "segment_is_ideal": seg_ideal,
        }));
    }
    Ok(Outcome {
        exit: if all_equal { 0 } else { EXIT_FAILS },
        text,
        value: json!({ "order_is_monomial": mono, "ideals": rows }),
    })
}

fn export(
    ctx: &Ctx,
    rep: &mut RunReport,
    poset: &str,
    format: ExportFormat,
    order: Option<&str>,
) -> Result<Outcome> {
    let input = resolve_poset(poset)?;
    rep.inputs
        .push(InputRef::new("poset", &input.descriptor, &to_json_string(&input.poset)));
    let p = &input.poset;
    let o = order
        .map(|s| -> Result<OrderTable> {
            let c = resolve_order(s, input.family.as_ref(), None)?;
            Ok(OrderTable::build(p, c.recipe)?)
        })
        .transpose()?;
    let mut buf: Vec<u8> = Vec::new();
    let ext = match format {
        ExportFormat::Dot => {
            export_hasse(p, Format::Dot, &mut buf)?;
            "dot"
        }
        ExportFormat::Json => {
            export_hasse(p, Format::Json, &mut buf)?;
            "json"
        }
        ExportFormat::Order => {
            let Some(o) = &o else {
                bail!(macaulay_core::Error::Argument("order export needs --order".into()));
            };
            export_order(p, o, &mut buf)?;
            "tsv"
        }
        ExportFormat::Cube => {
            export_cube(p, o.as_ref(), &mut buf)?;
            "csv"
        }
    };
    let text = String::from_utf8(buf).expect("exports are UTF-8");
    let value = match &ctx.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("export.{ext}"));
            std::fs::File::create(&path)?.write_all(text.as_bytes())?;
            json!({ "file": path.file_name().and_then(|s| s.to_str()) })
        }
        None => json!({ "content": text }),
    };
    Ok(Outcome {
        exit: 0,
        text: if ctx.out.is_some() { String::new() } else { text },
        value,
    })
}

fn search_order(ctx: &Ctx, rep: &mut RunReport, poset: &str, budget: u64) -> Result<Outcome> {
    let input = resolve_poset(poset)?;
    rep.inputs
        .push(InputRef::new("poset", &input.descriptor, &to_json_string(&input.poset)));
    let p = &input.poset;
    match search_macaulay_order(p, budget, &ctx.verify)? {
        SearchOutcome::Found(o) => {
            let seq: Vec<_> = o.sequence().iter().map(|&x| p.label(x).clone()).collect();
            let mut text = String::from("Macaulay order found:\n");
            for r in 0..=p.max_rank() {
                let lvl = o.level_sequence(p, r);
                text += &format!("  level {r}: {}\n", fmt_set(p, &lvl));
            }
            Ok(Outcome {
                exit: 0,
                text,
                value: json!({ "found": true, "sequence": seq, "recipe": o.recipe() }),
            })
        }
        SearchOutcome::NoneExists => Ok(Outcome {
            exit: EXIT_FAILS,
            text: "no Macaulay order exists\n".into(),
            value: json!({ "found": false }),
        }),
        SearchOutcome::BudgetExhausted { nodes } => Err(macaulay_core::Error::Resource(format!(
            "search budget exhausted after {nodes} nodes"
        ))
        .into()),
    }
}
