//! Argument grammar and dispatch.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use smr_core::structural::{enumerate_diagonal_subrings, generated_subring, MAX_SET_BITS_CEILING};
use smr_core::verify::{census, Verifier};
use smr_core::{IdealMatrix, IdealOp, MatrixSpace, Relation, Report, RingCtx, Status};

use crate::error::CliError;
use crate::{axioms, json as js, text, timed, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "smr", version, about = "Structural matrix rings over Z_m: relations, ideals, subrings and exhaustive checks")]
pub struct Cli {
    /// Output format; only JSON is stable.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Explicit sets hold at most 2^bits matrices.
    #[arg(long, global = true, env = "SMR_MAX_SET_BITS", default_value_t = smr_core::structural::DEFAULT_MAX_SET_BITS,
          value_parser = clap::value_parser!(u32).range(1..=MAX_SET_BITS_CEILING as i64))]
    pub max_set_bits: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Binary relations on 1..n.
    Relation {
        #[command(subcommand)]
        action: RelationAction,
    },
    /// Ideals of Z_m.
    Ideal {
        #[command(subcommand)]
        action: IdealAction,
    },
    /// Matrices of ideals.
    Imat {
        #[command(subcommand)]
        action: ImatAction,
    },
    /// Check ring and semiring axioms exhaustively.
    Ring(RingArgs),
    /// Subrings of M_n(Z_m).
    Subrings {
        #[command(subcommand)]
        action: SubringsAction,
    },
    /// Run one of the verification suites.
    Verify(VerifyArgs),
    /// Count pre-orders, orders and linear orders.
    Census {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    /// Number of indices; optional when the pairs read `n; i,j ...`.
    #[arg(long)]
    pub n: Option<usize>,
    /// 1-based pairs such as "1,2 2,3".
    #[arg(long, allow_hyphen_values = true)]
    pub pairs: String,
}

#[derive(Debug, Subcommand)]
pub enum RelationAction {
    /// Reflexive, transitive, pre-order, order, linear; exit 1 unless a pre-order.
    Classify(RelationArgs),
    /// Reflexive-transitive closure.
    Closure(RelationArgs),
    /// Linear extensions of a partial order; exit 1 if not an order.
    Extensions(RelationArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Sum,
    Product,
    Intersection,
}

impl From<OpArg> for IdealOp {
    fn from(o: OpArg) -> Self {
        match o {
            OpArg::Sum => IdealOp::Sum,
            OpArg::Product => IdealOp::Product,
            OpArg::Intersection => IdealOp::Intersection,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum IdealAction {
    /// All ideals, by generator.
    List {
        #[arg(long)]
        modulus: u32,
    },
    /// Combine two ideals given as "(g)" or g.
    Combine {
        #[arg(long)]
        modulus: u32,
        #[arg(long, value_enum)]
        op: OpArg,
        a: String,
        b: String,
    },
    /// Inclusion a <= b; exit 1 if false.
    Leq {
        #[arg(long)]
        modulus: u32,
        a: String,
        b: String,
    },
    /// Ideal generated by a residue.
    Canonical {
        #[arg(long)]
        modulus: u32,
        x: u32,
    },
}

#[derive(Debug, Args)]
pub struct ImatArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub modulus: u32,
    /// Generator rows such as "1 2; 4 1".
    #[arg(long)]
    pub entries: String,
}

#[derive(Debug, Subcommand)]
pub enum ImatAction {
    /// Reflexive-transitive test; exit 1 if false.
    Check(ImatArgs),
    /// The set of matrices with entries in the given ideals; exit 1 unless a subring.
    Subring(ImatArgs),
    /// Least reflexive-transitive matrix above the input.
    Closure(ImatArgs),
}

#[derive(Debug, Args)]
pub struct RingArgs {
    #[arg(long)]
    pub modulus: u32,
    /// Also check M_n(Z_m) and, when small, M_n(I(Z_m)).
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum SubringsAction {
    /// All subrings containing the diagonal matrices.
    List {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        modulus: u32,
    },
    /// Subring generated by matrices given as rows "1 2; 0 1".
    Generate {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        modulus: u32,
        #[arg(long = "entries")]
        entries: Vec<String>,
    },
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("suite").required(true).args(["prop", "convexity", "sublattice"]))]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub prop: Option<u8>,
    /// Compare diagonal-containing subrings with structural rings.
    #[arg(long)]
    pub convexity: bool,
    /// Search for two reflexive-transitive matrices whose sum is not.
    #[arg(long)]
    pub sublattice: bool,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub modulus: u32,
}

fn ring(m: u32) -> Result<RingCtx, CliError> {
    Ok(RingCtx::new(m)?)
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Relation { action } => relation(action),
        Command::Ideal { action } => ideal(action),
        Command::Imat { action } => imat(action, cli.max_set_bits),
        Command::Ring(args) => ring_axioms(args),
        Command::Subrings { action } => subrings(action, cli.max_set_bits),
        Command::Verify(args) => verify(args, cli.max_set_bits),
        Command::Census { n } => report_output(timed(|| census(*n))),
    }
}

fn relation(action: &RelationAction) -> Result<Output, CliError> {
    match action {
        RelationAction::Classify(a) => {
            let r = text::parse_relation(a.n, &a.pairs)?;
            let c = r.classify();
            let flags = [
                ("reflexive", c.reflexive),
                ("transitive", c.transitive),
                ("preorder", c.preorder),
                ("order", c.order),
                ("linear", c.linear),
            ];
            let mut json = json!({ "relation": js::relation(&r) });
            let mut out = format!("relation: {}\n", text::relation(&r));
            for (k, v) in flags {
                json[k] = json!(v);
                let _ = writeln!(out, "{k}: {v}");
            }
            Ok(Output::new(json, out, c.preorder))
        }
        RelationAction::Closure(a) => {
            let r = text::parse_relation(a.n, &a.pairs)?;
            let c = r.rt_closure();
            Ok(Output::new(json!({ "relation": js::relation(&r), "closure": js::relation(&c) }), text::relation(&c), true))
        }
        RelationAction::Extensions(a) => {
            let r = text::parse_relation(a.n, &a.pairs)?;
            let exts = if r.is_order() { r.linear_extensions()? } else { Vec::new() };
            let mut out = String::new();
            if !r.is_order() {
                let _ = writeln!(out, "{} is not a partial order", text::relation(&r));
            }
            for l in &exts {
                let _ = writeln!(out, "{}", text::relation(l));
            }
            Ok(Output::new(json!({
                    "relation": js::relation(&r),
                    "order": r.is_order(),
                    "extensions": exts.iter().map(js::relation).collect::<Vec<_>>(),
                }), out, r.is_order()))
        }
    }
}

fn ideal(action: &IdealAction) -> Result<Output, CliError> {
    match action {
        IdealAction::List { modulus } => {
            let ideals = ring(*modulus)?.ideals();
            Ok(Output::new(json!({ "m": modulus, "ideals": ideals.iter().map(js::ideal).collect::<Vec<_>>() }), ideals.iter().map(text::ideal).collect::<Vec<_>>().join(" "), true))
        }
        IdealAction::Combine { modulus, op, a, b } => {
            let ctx = ring(*modulus)?;
            let (a, b) = (text::parse_ideal(ctx, a)?, text::parse_ideal(ctx, b)?);
            let c = a.combine((*op).into(), &b)?;
            let (name, sym) = match op {
                OpArg::Sum => ("sum", "+"),
                OpArg::Product => ("product", "*"),
                OpArg::Intersection => ("intersection", "&"),
            };
            Ok(Output::new(json!({ "m": modulus, "op": name, "a": js::ideal(&a), "b": js::ideal(&b), "result": js::ideal(&c) }), format!("{} {sym} {} = {}", text::ideal(&a), text::ideal(&b), text::ideal(&c)), true))
        }
        IdealAction::Leq { modulus, a, b } => {
            let ctx = ring(*modulus)?;
            let (a, b) = (text::parse_ideal(ctx, a)?, text::parse_ideal(ctx, b)?);
            let leq = a.leq(&b)?;
            Ok(Output::new(json!({ "m": modulus, "a": js::ideal(&a), "b": js::ideal(&b), "leq": leq }), format!("{} <= {}: {leq}", text::ideal(&a), text::ideal(&b)), leq))
        }
        IdealAction::Canonical { modulus, x } => {
            let i = ring(*modulus)?.canonical_ideal(*x)?;
            Ok(Output::new(json!({ "m": modulus, "x": x, "ideal": js::ideal(&i) }), text::ideal(&i), true))
        }
    }
}

fn imat(action: &ImatAction, max_set_bits: u32) -> Result<Output, CliError> {
    let (ImatAction::Check(a) | ImatAction::Subring(a) | ImatAction::Closure(a)) = action;
    let ctx = ring(a.modulus)?;
    let u = text::parse_imat(a.n, ctx, &a.entries)?;
    match action {
        ImatAction::Check(_) => {
            let rt = u.is_reflexive_transitive();
            Ok(Output::new(json!({ "imat": js::imat(&u), "reflexive_transitive": rt }), format!("imat: {}\nreflexive-transitive: {rt}", text::imat(&u)), rt))
        }
        ImatAction::Subring(_) => {
            let space = MatrixSpace::with_max_set_bits(u.n(), ctx, max_set_bits)?;
            let s = u.defined_subring(&space)?;
            let is = s.is_subring();
            Ok(Output::new(json!({ "imat": js::imat(&u), "is_subring": is, "subring": js::subring(&s) }), format!("imat: {}\nset: {}\nsubring: {is}", text::imat(&u), text::subring(&s)), is))
        }
        ImatAction::Closure(_) => {
            let c = u.rt_closure();
            Ok(Output::new(json!({ "imat": js::imat(&u), "closure": js::imat(&c) }), text::imat(&c), true))
        }
    }
}

fn ring_axioms(args: &RingArgs) -> Result<Output, CliError> {
    let ctx = ring(args.modulus)?;
    let mut checks = vec![axioms::residue_ring(ctx)?, axioms::ideal_semiring(ctx)];
    let mut skipped = Vec::new();
    if let Some(n) = args.n {
        checks.push(axioms::matrix_ring(n, ctx)?);
        match axioms::imat_semiring(n, ctx)? {
            Some(c) => checks.push(c),
            None => skipped.push("ideal matrix semiring"),
        }
    }
    let ok = checks.iter().all(|c| c.failure.is_none());
    let mut out = String::new();
    for c in &checks {
        match &c.failure {
            None => writeln!(out, "{}: holds ({} cases)", c.name, c.cases),
            Some(f) => writeln!(out, "{}: FAILS at {f} (after {} cases)", c.name, c.cases),
        }
        .expect("write to string");
    }
    for s in &skipped {
        let _ = writeln!(out, "{s}: skipped, too many elements");
    }
    let json = json!({
        "m": args.modulus,
        "n": args.n,
        "holds": ok,
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "cases": c.cases, "holds": c.failure.is_none(), "failure": c.failure }))
            .collect::<Vec<_>>(),
        "skipped": skipped,
    });
    Ok(Output::new(json, out, ok))
}

/// The pre-order behind a structural ring, if every entry is (0) or (1).
fn structural_relation(u: &IdealMatrix) -> Result<Option<Relation>, CliError> {
    let n = u.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = u.get(i, j);
            if e.is_unit() {
                pairs.push((i + 1, j + 1));
            } else if !e.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(Relation::from_pairs(n, &pairs)?))
}

fn subrings(action: &SubringsAction, max_set_bits: u32) -> Result<Output, CliError> {
    match action {
        SubringsAction::List { n, modulus } => {
            let space = MatrixSpace::with_max_set_bits(*n, ring(*modulus)?, max_set_bits)?;
            let all = enumerate_diagonal_subrings(&space)?;
            let mut items = Vec::new();
            let mut out = format!("{} subrings of M_{n}(Z_{modulus}) contain the diagonal\n", all.len());
            for s in &all {
                let u = IdealMatrix::extract(s)?;
                let theta = structural_relation(&u)?;
                items.push(json!({
                    "imat": js::imat(&u),
                    "structural": theta.as_ref().map(js::relation),
                    "subring": js::subring(s),
                }));
                let kind = theta.map_or("non-structural".to_string(), |t| format!("structural, {}", text::relation(&t)));
                let _ = writeln!(out, "[{}]  {} elements  {kind}", text::imat(&u), s.len());
            }
            Ok(Output::new(json!({ "n": n, "m": modulus, "count": all.len(), "subrings": items }), out, true))
        }
        SubringsAction::Generate { n, modulus, entries } => {
            let ctx = ring(*modulus)?;
            let gens = entries.iter().map(|e| text::parse_matrix(*n, ctx, e)).collect::<Result<Vec<_>, _>>()?;
            let size = match (n, gens.first()) {
                (Some(n), _) => *n,
                (None, Some(g)) => g.n(),
                (None, None) => return Err(CliError::Invalid("give --n or at least one --entries".into())),
            };
            let space = MatrixSpace::with_max_set_bits(size, ctx, max_set_bits)?;
            let s = generated_subring(&gens, &space)?;
            Ok(Output::new(json!({ "generators": gens.iter().map(js::matrix).collect::<Vec<_>>(), "subring": js::subring(&s) }), text::subring(&s), true))
        }
    }
}

fn verify(args: &VerifyArgs, max_set_bits: u32) -> Result<Output, CliError> {
    let ctx = ring(args.modulus)?;
    let v = Verifier { max_set_bits };
    let n = args.n;
    let report = timed(|| match (args.prop, args.convexity) {
        (Some(1), _) => v.prop1(n, ctx),
        (Some(2), _) => v.prop2(n, ctx),
        (Some(3), _) => v.prop3(n, ctx),
        (Some(_), _) => v.prop4(n, ctx),
        (None, true) => v.convexity(n, ctx),
        (None, false) => v.sublattice_witness(n, ctx),
    });
    report_output(report)
}

fn report_text(r: &Report) -> String {
    let mut out = format!("subject: {}\nn: {}\n", r.subject.as_str(), r.n);
    if let Some(m) = r.m {
        let _ = writeln!(out, "m: {m}");
    }
    let _ = writeln!(out, "status: {}\ncases checked: {}", r.status.as_str(), r.cases_checked);
    for (k, x) in &r.summary {
        let _ = writeln!(out, "{k}: {x}");
    }
    if let Some(cx) = &r.counterexample {
        let _ = writeln!(out, "counterexample: {cx:?}");
    }
    if let Some(d) = &r.detail {
        let _ = writeln!(out, "detail: {d}");
    }
    let _ = writeln!(out, "elapsed: {} ms", r.elapsed_ms);
    out
}

/// Infeasible reports are still printed, with the resource-cap exit code.
fn report_output(r: Report) -> Result<Output, CliError> {
    let mut out = Output::new(js::report(&r), report_text(&r), r.status == Status::Verified);
    if r.status == Status::Infeasible {
        out.code = 3;
        out.diagnostic = Some(format!("{} infeasible: {}", r.subject.as_str(), r.detail.as_deref().unwrap_or("cap exceeded")));
    }
    Ok(out)
}
