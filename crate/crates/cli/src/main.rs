//! `qgr`: checks, searches, classifications, and payoff computations for
//! classical N-player two-strategy games played in quantum settings.
//!
//! Exit codes: 0 on success / PASS, 1 when a check fails or a setup is
//! refused, 2 on usage errors. `search` exits 0 whenever it completes; a
//! witness-free result is data, not a failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;

use qgr_core::criteria::{
    scr_check, symbolic_contradiction, wcr_check, CheckReport, Verdict, ORTHO_TOL,
};
use qgr_core::error::Error;
use qgr_core::games::{
    classify_group, payoff_partition, profile_of_outcome, GameN, GameSpec, Group, NativeParams,
    Partition,
};
use qgr_core::kernel::{inner, tensor_apply, LocalOp, StateVector};
use qgr_core::referee::{
    build_measurement_scr, build_measurement_wcr, mixed_profile_ops, output_states,
    parse_ops_arg, quantum_payoff, read_assignment_file, Measurement, OperatorAssignment,
    ThetaProfile,
};
use qgr_core::report::run_claim_suite;
use qgr_core::search::{feasibility_search, ConstraintSet, SearchConfig};
use qgr_core::states::{make_state, StateSpec};

#[derive(Parser)]
#[command(
    name = "qgr",
    version,
    about = "Reproducibility criteria for N-player two-strategy games in quantum settings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the strong or weak reproducibility criterion.
    Check(CheckArgs),
    /// Classify a game and print its payoff-equivalence partition.
    Classify(ClassifyArgs),
    /// Compute quantum expected payoffs under a reproducible setup.
    Payoff(PayoffArgs),
    /// Search numerically for operators meeting the orthogonality constraints.
    Search(SearchArgs),
    /// Run the built-in claim verification suite.
    #[command(name = "verify-paper")]
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    Scr,
    Wcr,
}

#[derive(Args)]
struct CheckArgs {
    /// Which criterion to check.
    #[arg(value_enum)]
    criterion: Criterion,
    /// State spec: ghz:N, w:N, dicke:N:m, bell, product:N, custom:@file.
    #[arg(long)]
    state: String,
    /// Operator pair "u1,u2" for all players, or per-player pairs joined
    /// by ';'. Named ops: I, X, Y, Z, iX, iY, iZ, H; also su2:t,p,l and
    /// mat:@file.
    #[arg(long, conflicts_with = "ops_file")]
    ops: Option<String>,
    /// Operator file: one line per player, "u1 u2".
    #[arg(long)]
    ops_file: Option<PathBuf>,
    /// Game supplying the payoff partition (wcr only).
    #[arg(long)]
    game: Option<String>,
    /// Explicit partition, e.g. "1,4;2,3" (wcr only).
    #[arg(long)]
    partition: Option<String>,
    #[command(flatten)]
    game_params: GameParamArgs,
    /// Orthogonality tolerance.
    #[arg(long, default_value_t = ORTHO_TOL)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GameParamArgs {
    /// First reward parameter (majority/coordination).
    #[arg(long)]
    l0: Option<f64>,
    /// Second reward parameter (majority/coordination).
    #[arg(long)]
    l1: Option<f64>,
    /// Stake parameter (minority/zerosum/mp_extension).
    #[arg(long)]
    lam: Option<f64>,
}

impl GameParamArgs {
    fn to_native(&self) -> NativeParams {
        NativeParams {
            lambda0: self.l0,
            lambda1: self.l1,
            lambda: self.lam,
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    /// Game: catalog name (pd, sh, ...), native name (minority, ...), or @file.
    #[arg(long)]
    game: String,
    /// Player count (ignored for @file games).
    #[arg(long)]
    players: Option<usize>,
    #[command(flatten)]
    game_params: GameParamArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MixModeArg {
    /// Apply the linear combinations w_k = u1 cos(t) + u2 sin(t).
    Combination,
    /// Randomize classically over the two pure operators.
    Randomized,
}

#[derive(Args)]
struct PayoffArgs {
    #[arg(long)]
    state: String,
    #[arg(long, conflicts_with = "ops_file")]
    ops: Option<String>,
    #[arg(long)]
    ops_file: Option<PathBuf>,
    #[arg(long)]
    game: String,
    #[command(flatten)]
    game_params: GameParamArgs,
    /// Mixing angles, comma separated (default: all zero = pure first strategies).
    #[arg(long)]
    thetas: Option<String>,
    /// Measurement mode: scr discriminates outcomes, wcr payoff classes.
    #[arg(long, value_enum, default_value = "scr")]
    criterion: Criterion,
    /// Strategy-mixing realization.
    #[arg(long, value_enum, default_value = "combination")]
    mix_mode: MixModeArg,
    /// Also print the classical expectation and the gap.
    #[arg(long)]
    compare_classical: bool,
    /// On a refused setup, print renormalized overlap weights instead.
    /// These are not comparable to classical payoffs.
    #[arg(long)]
    unsafe_distribution: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    state: String,
    /// Constrain all output pairs (full state discrimination).
    #[arg(long, conflicts_with_all = ["game", "partition"])]
    scr: bool,
    /// Game whose payoff partition supplies the constraints.
    #[arg(long)]
    game: Option<String>,
    /// Explicit partition, e.g. "1,4;2,3".
    #[arg(long, conflicts_with = "game")]
    partition: Option<String>,
    #[command(flatten)]
    game_params: GameParamArgs,
    #[arg(long, default_value_t = 100)]
    restarts: usize,
    #[arg(long, default_value_t = 500)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    threshold: f64,
    /// Residual at or above which a completed search counts as evidence of
    /// infeasibility.
    #[arg(long, default_value_t = qgr_core::search::INFEASIBILITY_FLOOR)]
    infeasibility_floor: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

enum Outcome {
    Pass,
    CheckFailed,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("QGR_THREADS") {
        if let Ok(k) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Payoff(args) => cmd_payoff(args),
        Command::Search(args) => cmd_search(args),
        Command::VerifyPaper(args) => cmd_verify_paper(args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

fn load_state(spec_str: &str) -> Result<(StateSpec, StateVector), Error> {
    let spec = StateSpec::parse(spec_str)?;
    let state = make_state(&spec)?;
    Ok((spec, state))
}

fn load_assignment(
    ops: &Option<String>,
    ops_file: &Option<PathBuf>,
    n: usize,
) -> Result<OperatorAssignment, Error> {
    let assignment = match (ops, ops_file) {
        (Some(arg), None) => parse_ops_arg(arg, n)?,
        (None, Some(path)) => read_assignment_file(path)?,
        _ => {
            return Err(Error::InvalidArgument(
                "exactly one of --ops or --ops-file is required".into(),
            ))
        }
    };
    if assignment.n_players() != n {
        return Err(Error::DimensionMismatch(format!(
            "operators cover {} players, state has {n}",
            assignment.n_players()
        )));
    }
    Ok(assignment)
}

fn parse_partition_arg(arg: &str, n_outcomes: usize) -> Result<Partition, Error> {
    let mut sets = Vec::new();
    for chunk in arg.split(';') {
        let set = chunk
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad outcome index '{t}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        sets.push(set);
    }
    Partition::new(sets, n_outcomes)
}

fn build_game(spec_str: &str, n: usize, params: &GameParamArgs) -> Result<(GameSpec, GameN), Error> {
    let spec = GameSpec::parse(spec_str)?;
    let game = spec.build(n, &params.to_native())?;
    Ok((spec, game))
}

fn ops_display(assignment: &OperatorAssignment) -> Vec<[String; 2]> {
    assignment
        .pairs()
        .iter()
        .map(|(u1, u2)| [format_op_inline(u1), format_op_inline(u2)])
        .collect()
}

fn format_c(z: C64) -> String {
    format!("{:+.6}{:+.6}i", z.re, z.im)
}

fn format_op_inline(op: &LocalOp) -> String {
    let e = op.entries();
    format!(
        "[[{}, {}], [{}, {}]]",
        format_c(e[0][0]),
        format_c(e[0][1]),
        format_c(e[1][0]),
        format_c(e[1][1])
    )
}

fn op_to_json(op: &LocalOp) -> serde_json::Value {
    let e = op.entries();
    serde_json::json!([
        [[e[0][0].re, e[0][0].im], [e[0][1].re, e[0][1].im]],
        [[e[1][0].re, e[1][0].im], [e[1][1].re, e[1][1].im]]
    ])
}

fn symbolic_for(spec: &StateSpec, partition: &Partition) -> Option<Verdict> {
    spec.dicke_class()
        .and_then(|_| symbolic_contradiction(spec, partition).ok())
}

fn render_partition(partition: &Partition) -> String {
    partition
        .sets()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let members: Vec<String> = s.iter().map(usize::to_string).collect();
            format!("S{} = {{{}}}", i + 1, members.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_verdict(verdict: &Verdict) -> String {
    match verdict {
        Verdict::NoRuleFired => "no contradiction rule fired (feasibility deferred to search)".into(),
        Verdict::Contradiction { certificate } => {
            let names: Vec<&str> = certificate.all_rules().map(|r| r.name()).collect();
            let mut line = format!("CONTRADICTION via {}", names.join(", "));
            if !certificate.triangles().is_empty() {
                let triples: Vec<String> = certificate
                    .triangles()
                    .iter()
                    .map(|t| format!("({},{},{})", t[0], t[1], t[2]))
                    .collect();
                line.push_str(&format!("; player triples {}", triples.join(" ")));
            }
            line
        }
    }
}

// ---------------------------------------------------------------------------
// check

#[derive(Serialize)]
struct CheckOutput<'a> {
    command: &'static str,
    criterion: &'static str,
    state: String,
    operators: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    game: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<&'a Partition>,
    passed: bool,
    max_violation: f64,
    worst_pair: Option<(usize, usize)>,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbolic: Option<&'a Verdict>,
}

fn cmd_check(args: CheckArgs) -> Result<Outcome, Error> {
    let (spec, state) = load_state(&args.state)?;
    let n = state.n_players();
    let assignment = load_assignment(&args.ops, &args.ops_file, n)?;

    let (report, partition, game_label): (CheckReport, Option<Partition>, Option<String>) =
        match args.criterion {
            Criterion::Scr => (scr_check(&state, &assignment, args.tol)?, None, None),
            Criterion::Wcr => {
                let (partition, label) = match (&args.game, &args.partition) {
                    (Some(g), None) => {
                        let (gspec, game) = build_game(g, n, &args.game_params)?;
                        (payoff_partition(&game), Some(gspec.to_string()))
                    }
                    (None, Some(p)) => (parse_partition_arg(p, 1 << n)?, None),
                    _ => {
                        return Err(Error::InvalidArgument(
                            "wcr needs exactly one of --game or --partition".into(),
                        ))
                    }
                };
                (
                    wcr_check(&state, &assignment, &partition, args.tol)?,
                    Some(partition),
                    label,
                )
            }
        };

    let symbolic = partition
        .as_ref()
        .map(|p| symbolic_for(&spec, p))
        .unwrap_or_else(|| symbolic_for(&spec, &Partition::singletons(1 << n)));

    if args.json {
        let out = CheckOutput {
            command: "check",
            criterion: match args.criterion {
                Criterion::Scr => "scr",
                Criterion::Wcr => "wcr",
            },
            state: spec.to_string(),
            operators: ops_display(&assignment),
            game: game_label,
            partition: partition.as_ref(),
            passed: report.passed,
            max_violation: report.max_violation,
            worst_pair: report.worst_pair,
            tolerance: report.tolerance,
            symbolic: symbolic.as_ref(),
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!(
            "criterion: {}",
            match args.criterion {
                Criterion::Scr => "scr (discriminate every outcome)",
                Criterion::Wcr => "wcr (discriminate payoff classes)",
            }
        );
        println!("state: {spec}");
        if let Some(label) = &game_label {
            println!("game: {label}");
        }
        if let Some(p) = &partition {
            println!("partition:\n{}", render_partition(p));
        }
        println!("result: {}", if report.passed { "PASS" } else { "FAIL" });
        println!(
            "max violation: {:.12e} (tolerance {:.1e})",
            report.max_violation, report.tolerance
        );
        if let Some((a, b)) = report.worst_pair {
            println!("worst pair: outcomes ({a}, {b})");
        }
        if let Some(v) = &symbolic {
            println!("symbolic: {}", render_verdict(v));
        }
    }
    Ok(if report.passed {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    })
}

// ---------------------------------------------------------------------------
// classify

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    command: &'static str,
    game: String,
    players: usize,
    group: Group,
    sets: usize,
    partition: &'a Partition,
}

fn cmd_classify(args: ClassifyArgs) -> Result<Outcome, Error> {
    let spec = GameSpec::parse(&args.game)?;
    let players = match (&spec, args.players) {
        (GameSpec::File(_), p) => p.unwrap_or(0),
        (_, Some(p)) => p,
        (_, None) => {
            return Err(Error::InvalidArgument(
                "--players is required for catalog and native games".into(),
            ))
        }
    };
    let game = spec.build(players, &args.game_params.to_native())?;
    let group = classify_group(&game);
    let partition = payoff_partition(&game);

    if args.json {
        let out = ClassifyOutput {
            command: "classify",
            game: spec.to_string(),
            players: game.n_players(),
            group,
            sets: partition.n_sets(),
            partition: &partition,
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("game: {spec} ({} players)", game.n_players());
        println!("group: {group}");
        println!(
            "payoff partition ({} sets):\n{}",
            partition.n_sets(),
            render_partition(&partition)
        );
    }
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------------------
// payoff

#[derive(Serialize)]
struct PayoffOutput {
    command: &'static str,
    state: String,
    game: String,
    criterion: &'static str,
    thetas: Vec<f64>,
    mix_mode: &'static str,
    quantum: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classical: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_gap: Option<f64>,
}

fn parse_thetas(arg: &Option<String>, n: usize) -> Result<ThetaProfile, Error> {
    match arg {
        None => Ok(ThetaProfile::zeros(n)),
        Some(text) => {
            let angles = text
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad angle '{t}'")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if angles.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{} angles for {n} players",
                    angles.len()
                )));
            }
            Ok(ThetaProfile::new(angles))
        }
    }
}

fn cmd_payoff(args: PayoffArgs) -> Result<Outcome, Error> {
    let (spec, state) = load_state(&args.state)?;
    let n = state.n_players();
    let assignment = load_assignment(&args.ops, &args.ops_file, n)?;
    let (game_spec, game) = build_game(&args.game, n, &args.game_params)?;
    let thetas = parse_thetas(&args.thetas, n)?;

    let outputs = output_states(&state, &assignment)?;
    let measurement: Result<Measurement, Error> = match args.criterion {
        Criterion::Scr => build_measurement_scr(&outputs),
        Criterion::Wcr => build_measurement_wcr(&outputs, &payoff_partition(&game)),
    };
    let measurement = match measurement {
        Ok(m) => m,
        Err(e) => {
            // The benchmark stance: without reproducibility there is no fair
            // comparison, so the payoff request is refused.
            eprintln!(
                "refused: this state and operator assignment do not satisfy the \
                 reproducibility criterion ({e}); classical comparison would not be fair"
            );
            if args.unsafe_distribution {
                let ops = mixed_profile_ops(&assignment, &thetas)?;
                let played = tensor_apply(&ops, &state)?;
                let mut weights: Vec<f64> = outputs
                    .iter()
                    .map(|phi| inner(phi, &played).map(|z| z.norm_sqr()))
                    .collect::<Result<_, _>>()?;
                let total: f64 = weights.iter().sum();
                if total > 0.0 {
                    weights.iter_mut().for_each(|w| *w /= total);
                }
                println!(
                    "overlap weights (NON-COMPARABLE: outputs are not mutually \
                     orthogonal; renormalized):"
                );
                for (k, w) in weights.iter().enumerate() {
                    if *w > 1e-12 {
                        let profile = profile_of_outcome(k + 1, n);
                        let profile: Vec<String> =
                            profile.iter().map(|s| s.to_string()).collect();
                        println!("  outcome {:>3} [{}]: {w:.6}", k + 1, profile.join(""));
                    }
                }
            }
            return Ok(Outcome::CheckFailed);
        }
    };

    let quantum = match args.mix_mode {
        MixModeArg::Combination => {
            let ops = mixed_profile_ops(&assignment, &thetas)?;
            quantum_payoff(&game, &measurement, &state, &ops)?
        }
        MixModeArg::Randomized => {
            let probs = thetas.to_mixed_profile();
            let mut acc = vec![0.0; n];
            for k in 1..=1usize << n {
                let pure = profile_of_outcome(k, n);
                let mut weight = 1.0;
                for (j, &s) in pure.iter().enumerate() {
                    let q = probs.probs()[j];
                    weight *= if s == 1 { q } else { 1.0 - q };
                }
                if weight == 0.0 {
                    continue;
                }
                let ops = assignment.ops_for_outcome(k);
                let p = quantum_payoff(&game, &measurement, &state, &ops)?;
                for (a, x) in acc.iter_mut().zip(&p) {
                    *a += weight * x;
                }
            }
            acc
        }
    };

    let (classical, max_gap) = if args.compare_classical {
        let c = qgr_core::games::classical_mixed_payoff(&game, &thetas.to_mixed_profile())?;
        let gap = quantum
            .iter()
            .zip(&c)
            .map(|(q, x)| (q - x).abs())
            .fold(0.0f64, f64::max);
        (Some(c), Some(gap))
    } else {
        (None, None)
    };

    if args.json {
        let out = PayoffOutput {
            command: "payoff",
            state: spec.to_string(),
            game: game_spec.to_string(),
            criterion: match args.criterion {
                Criterion::Scr => "scr",
                Criterion::Wcr => "wcr",
            },
            thetas: thetas.angles().to_vec(),
            mix_mode: match args.mix_mode {
                MixModeArg::Combination => "combination",
                MixModeArg::Randomized => "randomized",
            },
            quantum: quantum.clone(),
            classical: classical.clone(),
            max_gap,
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("state: {spec}, game: {game_spec}");
        let rendered: Vec<String> = quantum.iter().map(|x| format!("{x:.12}")).collect();
        println!("quantum payoff: [{}]", rendered.join(", "));
        if let Some(c) = &classical {
            let rendered: Vec<String> = c.iter().map(|x| format!("{x:.12}")).collect();
            println!("classical payoff: [{}]", rendered.join(", "));
            println!("max gap: {:.12e}", max_gap.unwrap_or(0.0));
        }
    }
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------------------
// search

#[derive(Serialize)]
struct SearchOutput<'a> {
    command: &'static str,
    state: String,
    constraints: String,
    pairs: usize,
    restarts: usize,
    max_iters: usize,
    seed: u64,
    threshold: f64,
    best_residual: f64,
    converged: bool,
    restarts_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbolic: Option<&'a Verdict>,
}

fn cmd_search(args: SearchArgs) -> Result<Outcome, Error> {
    let (spec, state) = load_state(&args.state)?;
    let n = state.n_players();

    let (constraints, label, partition) = if args.scr {
        (
            ConstraintSet::scr(n),
            "scr (all output pairs)".to_string(),
            Partition::singletons(1 << n),
        )
    } else if let Some(g) = &args.game {
        let (gspec, game) = build_game(g, n, &args.game_params)?;
        let partition = payoff_partition(&game);
        (
            ConstraintSet::from_partition(&partition)?,
            format!("payoff partition of {gspec}"),
            partition,
        )
    } else if let Some(p) = &args.partition {
        let partition = parse_partition_arg(p, 1 << n)?;
        (
            ConstraintSet::from_partition(&partition)?,
            "explicit partition".to_string(),
            partition,
        )
    } else {
        return Err(Error::InvalidArgument(
            "search needs one of --scr, --game, or --partition".into(),
        ));
    };

    let config = SearchConfig {
        restarts: args.restarts,
        max_iters: args.iters,
        threshold: args.threshold,
        rng_seed: args.seed,
    };
    let result = feasibility_search(&state, &constraints, &config)?;
    let symbolic = symbolic_for(&spec, &partition);

    if args.json {
        let out = SearchOutput {
            command: "search",
            state: spec.to_string(),
            constraints: label,
            pairs: constraints.len(),
            restarts: args.restarts,
            max_iters: args.iters,
            seed: args.seed,
            threshold: args.threshold,
            best_residual: result.best_residual,
            converged: result.converged,
            restarts_used: result.restarts_used,
            witness: result
                .converged
                .then(|| result.witness.iter().map(op_to_json).collect()),
            symbolic: symbolic.as_ref(),
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("state: {spec}");
        println!("constraints: {label} ({} pairs)", constraints.len());
        println!(
            "best residual: {:.12e} after {} restarts (threshold {:.1e})",
            result.best_residual, result.restarts_used, args.threshold
        );
        if result.converged {
            println!("converged: yes — witness operators (one per player):");
            for (i, op) in result.witness.iter().enumerate() {
                println!("  player {}: {}", i + 1, format_op_inline(op));
            }
        } else {
            println!(
                "converged: no — no witness found{}",
                if result.best_residual >= args.infeasibility_floor {
                    " (residual floor is strong evidence of infeasibility)"
                } else {
                    ""
                }
            );
        }
        if let Some(v) = &symbolic {
            println!("symbolic: {}", render_verdict(v));
        }
    }
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------------------
// verify-paper

fn cmd_verify_paper(args: VerifyArgs) -> Result<Outcome, Error> {
    let suite = run_claim_suite(args.seed)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&suite).expect("serializable"));
    } else {
        for c in &suite.claims {
            let status = match c.status {
                qgr_core::report::ClaimStatus::Pass => "PASS",
                qgr_core::report::ClaimStatus::Fail => "FAIL",
                qgr_core::report::ClaimStatus::Info => "INFO",
            };
            println!("{status}  {:<28}  {}", c.id, c.description);
            if let Some(d) = &c.detail {
                println!("      {d}");
            }
            if c.status == qgr_core::report::ClaimStatus::Fail {
                println!("      expected {} but observed {}", c.expected, c.observed);
            }
        }
        let failed = suite
            .claims
            .iter()
            .filter(|c| c.status == qgr_core::report::ClaimStatus::Fail)
            .count();
        if failed == 0 {
            println!("all graded claims passed (seed {})", suite.seed);
        } else {
            println!("{failed} claim(s) FAILED (seed {})", suite.seed);
        }
    }
    Ok(if suite.passed() {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    })
}
