//! Command-line front end. [`run`] takes the argument vector and output
//! streams so it can be driven from tests.
//!
//! Exit status: 0 on success, 1 when a table disagrees with its published
//! values or a theorem audit fails, 2 on usage and domain errors.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use genus2_galois::decomp::{decompose, decompose_all_orders, decompose_by_order, verify_theorem1, verify_theorem2};
use genus2_galois::genus2::{AutGroupId, CurveContext, SubgroupId};
use genus2_galois::picard::{build_ledger, Certificate, Node, PicardLedger};
use genus2_galois::report::{
    diff_against_fixture, fixture_for, render, render_lattice_dot, CellStatus, DiffStatus, Format, ReportSet,
};

#[derive(Parser, Debug)]
#[command(name = "genus2-galois", version, about = "Galois-subspace decompositions for genus-2 curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The seven automorphism groups and their rational-quotient census.
    ListGroups,
    /// Every subgroup of a group, by enumeration index.
    Subgroups {
        #[arg(long)]
        group: AutGroupId,
    },
    /// Dimension histogram of G_{X,D_H}.
    Decompose(DecomposeArgs),
    /// Compare every table with the published one and audit both theorems.
    Verify {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        group: Option<AutGroupId>,
        #[arg(long)]
        all: bool,
    },
    /// The chain of linear equivalences behind ℓ(D_H - D_N).
    Certificate {
        #[arg(long)]
        group: AutGroupId,
        /// Subgroup indices `H:N`.
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
    },
    /// Subgroup lattice in Graphviz DOT, one node per conjugacy class.
    LatticeDot {
        #[arg(long)]
        group: AutGroupId,
        /// Highlight the certificate for subgroup indices `H:N`.
        #[arg(long, value_parser = parse_pair)]
        highlight: Option<(usize, usize)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    group: AutGroupId,
    /// Only subgroups of this order.
    #[arg(long, conflicts_with = "subgroup_index")]
    order: Option<usize>,
    /// A single subgroup, by enumeration index.
    #[arg(long)]
    subgroup_index: Option<usize>,
    #[arg(long, default_value = "md")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (h, n) = s.split_once(':').ok_or_else(|| format!("expected H:N, got {s:?}"))?;
    let index = |v: &str| v.trim().parse::<usize>().map_err(|_| format!("{v:?} is not a subgroup index"));
    Ok((index(h)?, index(n)?))
}

/// A failure carrying its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn domain(e: impl Display) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

fn io(e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("IoError: {e}") }
}

fn setup(group: AutGroupId) -> Result<(CurveContext, PicardLedger), Failure> {
    let ctx = CurveContext::from_catalog(group).map_err(Failure::domain)?;
    let ledger = build_ledger(&ctx).map_err(Failure::domain)?;
    Ok((ctx, ledger))
}

fn subgroup(ctx: &CurveContext, index: usize) -> Result<SubgroupId, Failure> {
    if index < ctx.subgroups().len() {
        Ok(SubgroupId(index))
    } else {
        Err(Failure::domain(format!(
            "NoSuchSubgroup: {} has {} subgroups, index {index} is out of range",
            ctx.id(),
            ctx.subgroups().len()
        )))
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::ListGroups => list_groups(out),
        Command::Subgroups { group } => subgroups(group, out),
        Command::Decompose(args) => decompose_cmd(args, out),
        Command::Verify { group, all } => {
            let groups = if all { AutGroupId::ALL.to_vec() } else { group.into_iter().collect() };
            verify(&groups, out)
        }
        Command::Certificate { group, pair } => certificate(group, pair, out),
        Command::LatticeDot { group, highlight, out: path } => lattice_dot(group, highlight, path, out),
    }
}

fn list_groups(out: &mut dyn Write) -> Outcome {
    writeln!(out, "{:<10} {:<8} {:>5} {:>9} {:>3}  very ample orders", "group", "type", "order", "subgroups", "P1")
        .map_err(io)?;
    for id in AutGroupId::ALL {
        let ctx = CurveContext::from_catalog(id).map_err(Failure::domain)?;
        let orders: Vec<String> = ctx.very_ample_orders().iter().map(|o| o.to_string()).collect();
        writeln!(
            out,
            "{:<10} {:<8} {:>5} {:>9} {:>3}  {}",
            id.name(),
            id.display_name(),
            id.order(),
            ctx.subgroups().len(),
            ctx.p1_subgroups().len(),
            if orders.is_empty() { "-".to_string() } else { orders.join(",") }
        )
        .map_err(io)?;
    }
    Ok(0)
}

fn subgroups(group: AutGroupId, out: &mut dyn Write) -> Outcome {
    let ctx = CurveContext::from_catalog(group).map_err(Failure::domain)?;
    writeln!(out, "{:>5} {:>5} {:<8} {:>5} {:<3} {:<6} {:<3}", "index", "order", "type", "class", "P1", "normal", "VA")
        .map_err(io)?;
    for i in 0..ctx.subgroups().len() {
        let h = SubgroupId(i);
        let flag = |b: bool| if b { "yes" } else { "-" };
        writeln!(
            out,
            "{:>5} {:>5} {:<8} {:>5} {:<3} {:<6} {:<3}",
            i,
            ctx.order_of(h),
            ctx.label(h).to_string(),
            ctx.lattice().orbit[i],
            flag(ctx.quotient_is_p1(h)),
            flag(ctx.lattice().normal[i]),
            flag(ctx.quotient_is_p1(h) && ctx.very_ample(h)),
        )
        .map_err(io)?;
    }
    Ok(0)
}

fn fixture_columns(group: AutGroupId) -> Result<Vec<i64>, Failure> {
    Ok(fixture_for(group).map_err(Failure::domain)?.map(|t| t.columns).unwrap_or_default())
}

fn decompose_cmd(args: DecomposeArgs, out: &mut dyn Write) -> Outcome {
    let (ctx, ledger) = setup(args.group)?;
    let reports = match (args.order, args.subgroup_index) {
        (Some(order), _) => {
            if order < 5 {
                return Err(Failure::domain(format!(
                    "NotVeryAmple: D_H has degree {order} < 5 for every H of order {order}"
                )));
            }
            vec![decompose_by_order(&ctx, &ledger, order).map_err(Failure::domain)?.0]
        }
        (None, Some(index)) => vec![decompose(&ctx, &ledger, subgroup(&ctx, index)?).map_err(Failure::domain)?],
        (None, None) => decompose_all_orders(&ctx, &ledger).map_err(Failure::domain)?,
    };
    let set = ReportSet::new(args.group, reports, &fixture_columns(args.group)?);
    emit(&render(&set, args.format), args.out.as_ref(), out)?;
    Ok(0)
}

fn verify(groups: &[AutGroupId], out: &mut dyn Write) -> Outcome {
    let mut failed = false;
    for &group in groups {
        let (ctx, ledger) = setup(group)?;
        let reports = decompose_all_orders(&ctx, &ledger).map_err(Failure::domain)?;
        match fixture_for(group).map_err(Failure::domain)? {
            Some(table) => {
                let diff = diff_against_fixture(&reports, &table);
                let status = diff.status();
                failed |= status == DiffStatus::Mismatch;
                writeln!(
                    out,
                    "{group}: table {:?} ({} match, {} mismatch, {} known erratum)",
                    status,
                    diff.matches(),
                    diff.mismatches(),
                    diff.known_errata()
                )
                .map_err(io)?;
                for c in diff.cells.iter().filter(|c| c.status != CellStatus::Match) {
                    writeln!(
                        out,
                        "  row {} {}: published {:?}, computed {:?} -> {:?}",
                        c.row, c.cell, c.expected, c.computed, c.status
                    )
                    .map_err(io)?;
                }
                for e in &table.errata {
                    writeln!(out, "  note: {}", e.note).map_err(io)?;
                }
            }
            None if reports.is_empty() => {
                writeln!(out, "{group}: decomposition is empty, no table to compare").map_err(io)?
            }
            None => writeln!(out, "{group}: no published table").map_err(io)?,
        }

        let t1 = verify_theorem1(&ctx, &ledger);
        match &t1.skipped {
            Some(note) => writeln!(out, "{group}: theorem 1 part 1 skipped ({note})").map_err(io)?,
            None => {
                failed |= !t1.passed();
                writeln!(
                    out,
                    "{group}: theorem 1 part 1 {} ({} pairs, {} failures)",
                    verdict(t1.passed()),
                    t1.pairs_checked,
                    t1.failures.len()
                )
                .map_err(io)?;
            }
        }
        let mut checked = 0;
        let mut t2_failures = 0;
        for &h in ctx.p1_subgroups().iter().filter(|&&h| ctx.very_ample(h)) {
            let audit = verify_theorem2(&ctx, &ledger, h).map_err(Failure::domain)?;
            checked += 1;
            if !audit.passed() {
                t2_failures += 1;
            }
        }
        failed |= t2_failures > 0;
        writeln!(
            out,
            "{group}: theorem 1 part 2 {} ({checked} subgroups, {t2_failures} failures)",
            verdict(t2_failures == 0)
        )
        .map_err(io)?;
    }
    Ok(if failed { 1 } else { 0 })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "passed"
    } else {
        "FAILED"
    }
}

fn describe(ctx: &CurveContext, node: Node) -> String {
    match node {
        Node::Class(h) => format!("D{h} ({})", ctx.label(h)),
        Node::Canonical => "K".to_string(),
    }
}

fn write_certificate(ctx: &CurveContext, cert: &Certificate, depth: usize, out: &mut dyn Write) -> Result<(), Failure> {
    let pad = "  ".repeat(depth);
    for step in &cert.steps {
        let via = step.relation.via();
        writeln!(
            out,
            "{pad}{} - {} ~ {}K  by {} via {via} ({})",
            describe(ctx, step.from),
            describe(ctx, step.to),
            step.shift,
            step.relation.kind(),
            ctx.label(via)
        )
        .map_err(io)?;
        if let Some(premise) = &step.premise {
            writeln!(out, "{pad}  where D{via} ~ {}K:", premise.total_shift() + 1).map_err(io)?;
            write_certificate(ctx, premise, depth + 2, out)?;
        }
    }
    Ok(())
}

fn certificate(group: AutGroupId, (h, n): (usize, usize), out: &mut dyn Write) -> Outcome {
    let (ctx, ledger) = setup(group)?;
    let (h, n) = (subgroup(&ctx, h)?, subgroup(&ctx, n)?);
    for x in [h, n] {
        if !ctx.quotient_is_p1(x) {
            return Err(Failure::domain(format!("NotInLedger: {x} has no rational quotient")));
        }
    }
    let cert = ledger.zigzag_certificate(h, n).map_err(Failure::domain)?;
    let l = ledger.ell(h, n);
    writeln!(out, "{group}: l(D{h} - D{n}) = {} [{}]", l.value, l.certainty).map_err(io)?;
    writeln!(out, "D{h} - D{n} ~ {}K", cert.total_shift()).map_err(io)?;
    write_certificate(&ctx, &cert, 0, out)?;
    Ok(0)
}

fn lattice_dot(
    group: AutGroupId,
    highlight: Option<(usize, usize)>,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Outcome {
    let (ctx, ledger) = setup(group)?;
    let cert = match highlight {
        Some((h, n)) => {
            let (h, n) = (subgroup(&ctx, h)?, subgroup(&ctx, n)?);
            Some(ledger.zigzag_certificate(h, n).map_err(Failure::domain)?)
        }
        None => None,
    };
    emit(&render_lattice_dot(&ctx, cert.as_ref()), path.as_ref(), out)?;
    Ok(0)
}
