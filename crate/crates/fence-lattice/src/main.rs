//! Thin command-line front end over the library: construction, rank
//! analysis, the four bijections (with step traces), conjecture sweeps,
//! chain-decomposition search, and rowmotion. All logic lives in the
//! library; this binary parses, dispatches, and formats.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use fence_lattice::bijection;
use fence_lattice::chains::{self, CdKind, SearchOutcome};
use fence_lattice::composition::{compositions, Composition};
use fence_lattice::encoding::{
    CircularFilterEncoding, CircularIdealEncoding, FenceFilterEncoding, FenceIdealEncoding,
    GateFilterSeq, GateIdealSeq,
};
use fence_lattice::poset::{CircularFencePoset, FencePoset, GatePoset};
use fence_lattice::rank::{
    self, classify_u64, predicted_shape, rank_sequence, rank_sequence_circular, PredictedShape,
    RankSequence, SequenceClassification,
};
use fence_lattice::rowmotion;

#[derive(Parser)]
#[command(
    name = "fence-lattice",
    about = "Fence, circular-fence, and gate posets: bijections, rank sequences, chains, rowmotion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a poset and export it (edge list, or a JSON document)
    Build(BuildArgs),
    /// Rank sequence of the ideal lattice, with shape classification
    Rank(RankArgs),
    /// Classify a sequence (or the rank sequence of a composition)
    Classify(ClassifyArgs),
    /// Apply one of the ideal/filter bijections
    Bijection(BijectionArgs),
    /// Sweep a family of compositions, one NDJSON finding per line
    Sweep(SweepArgs),
    /// Search linear extensions for a lexicographic chain decomposition
    Chains(ChainsArgs),
    /// Rowmotion orbits and orbit-average checks
    Rowmotion(RowmotionArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Fence composition, e.g. "2,4,1"
    #[arg(long)]
    beta: Option<String>,
    /// Gate composition
    #[arg(long, conflicts_with = "beta")]
    delta: Option<String>,
    /// Build the circular fence over --beta
    #[arg(long)]
    circular: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RankArgs {
    #[arg(long)]
    beta: String,
    #[arg(long)]
    circular: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// A literal sequence, e.g. "1,2,1,1"
    #[arg(long)]
    seq: Option<String>,
    /// Classify the rank sequence of this composition instead
    #[arg(long, conflicts_with = "seq")]
    beta: Option<String>,
    #[arg(long)]
    circular: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BijectionArgs {
    /// One of: phi, phi-inv, Phi, Phi-inv, phi-bar, phi-bar-inv, Phi-bar, Phi-bar-inv
    map: String,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    /// Ascending counts of an ideal encoding
    #[arg(long)]
    a: Option<String>,
    /// Descending counts of an ideal encoding
    #[arg(long)]
    d: Option<String>,
    /// Ascending counts of a filter encoding
    #[arg(long)]
    b: Option<String>,
    /// Descending counts of a filter encoding
    #[arg(long)]
    e: Option<String>,
    /// Assert that the input encodes this many elements
    #[arg(long)]
    k: Option<u32>,
    /// Require the input to satisfy the restriction conditions
    #[arg(long)]
    restricted: bool,
    /// Print the sequence after each numbered step
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// One of: heavy, fbsym, fbuni, partial-symmetry, logconcave
    mode: String,
    #[arg(long, default_value_t = 10)]
    max_total: u32,
    /// Worker threads (findings stay in canonical order)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Skip all compositions up to and including this one
    #[arg(long)]
    resume_after: Option<String>,
}

#[derive(Args)]
struct ChainsArgs {
    #[arg(long)]
    beta: String,
    /// Target kind: scd, bcd, tcd, or auto (the predicted shape's kind)
    #[arg(long, default_value = "auto")]
    search: String,
    /// Maximum number of linear extensions to test
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RowmotionArgs {
    #[arg(long)]
    beta: String,
    /// Check that ideal size averages to n/2 over every orbit
    #[arg(long)]
    check_mesic: bool,
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build(args) => build(args),
        Command::Rank(args) => rank_cmd(args),
        Command::Classify(args) => classify_cmd(args),
        Command::Bijection(args) => bijection_cmd(args),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Chains(args) => chains_cmd(args),
        Command::Rowmotion(args) => rowmotion_cmd(args),
    }
}

fn parse_composition(s: &str) -> Result<Composition> {
    Composition::from_str(s).with_context(|| format!("parsing composition {s:?}"))
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map_err(|_| anyhow!("bad sequence entry {tok:?}"))
        })
        .collect()
}

fn big_numbers(coeffs: &[BigUint]) -> Vec<Value> {
    coeffs
        .iter()
        .map(|c| {
            let n = serde_json::Number::from_str(&c.to_string())
                .expect("decimal integer parses as a JSON number");
            Value::Number(n)
        })
        .collect()
}

fn classification_json(c: &SequenceClassification) -> Value {
    fn witness(w: Option<usize>) -> Value {
        w.map_or(Value::Null, |i| json!(i))
    }
    json!({
        "symmetric": c.symmetric,
        "unimodal": c.unimodal,
        "top_heavy": c.top_heavy,
        "bottom_heavy": c.bottom_heavy,
        "top_interlacing": c.top_interlacing,
        "bottom_interlacing": c.bottom_interlacing,
        "log_concave": c.log_concave,
        "witnesses": {
            "symmetric": witness(c.witnesses.symmetric),
            "unimodal": witness(c.witnesses.unimodal),
            "top_heavy": witness(c.witnesses.top_heavy),
            "bottom_heavy": witness(c.witnesses.bottom_heavy),
            "top_interlacing": witness(c.witnesses.top_interlacing),
            "bottom_interlacing": witness(c.witnesses.bottom_interlacing),
            "log_concave": witness(c.witnesses.log_concave),
        },
    })
}

fn classification_text(c: &SequenceClassification) -> String {
    let flag = |name: &str, on: bool, w: Option<usize>| match (on, w) {
        (true, _) => name.to_string(),
        (false, Some(i)) => format!("not {name} (witness index {i})"),
        (false, None) => format!("not {name}"),
    };
    [
        flag("symmetric", c.symmetric, c.witnesses.symmetric),
        flag("unimodal", c.unimodal, c.witnesses.unimodal),
        flag("top-heavy", c.top_heavy, c.witnesses.top_heavy),
        flag("bottom-heavy", c.bottom_heavy, c.witnesses.bottom_heavy),
        flag(
            "top-interlacing",
            c.top_interlacing,
            c.witnesses.top_interlacing,
        ),
        flag(
            "bottom-interlacing",
            c.bottom_interlacing,
            c.witnesses.bottom_interlacing,
        ),
        flag("log-concave", c.log_concave, c.witnesses.log_concave),
    ]
    .join("\n")
}

fn build(args: BuildArgs) -> Result<()> {
    let (doc, edge_list, degenerate) = if let Some(delta) = &args.delta {
        let gate = GatePoset::new(&parse_composition(delta)?);
        (gate.to_json(), gate.poset().edge_list_text(), false)
    } else {
        let beta = parse_composition(
            args.beta
                .as_deref()
                .ok_or_else(|| anyhow!("--beta or --delta is required"))?,
        )?;
        if args.circular {
            let cf = CircularFencePoset::new(&beta)?;
            let deg = cf.is_degenerate();
            (cf.to_json(), cf.poset().edge_list_text(), deg)
        } else {
            let fence = FencePoset::new(&beta);
            (fence.to_json(), fence.poset().edge_list_text(), false)
        }
    };
    if degenerate {
        eprintln!("note: degenerate circular fence; parallel covers collapsed");
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{edge_list}");
    }
    Ok(())
}

fn rank_for(beta: &Composition, circular: bool) -> Result<RankSequence> {
    if circular {
        Ok(rank_sequence_circular(&CircularFencePoset::new(beta)?))
    } else {
        Ok(rank_sequence(&FencePoset::new(beta)))
    }
}

fn rank_cmd(args: RankArgs) -> Result<()> {
    let beta = parse_composition(&args.beta)?;
    let r = rank_for(&beta, args.circular)?;
    let c = r.classify();
    if args.json {
        let doc = json!({
            "beta": beta.parts(),
            "circular": args.circular,
            "r": big_numbers(r.coefficients()),
            "classification": classification_json(&c),
        });
        println!("{}", serde_json::to_string(&doc)?);
    } else {
        let tag = if args.circular { " circular" } else { "" };
        println!("r({beta}){tag}: {r}");
        println!("{}", classification_text(&c));
    }
    Ok(())
}

fn classify_cmd(args: ClassifyArgs) -> Result<()> {
    let (seq_desc, c) = if let Some(seq) = &args.seq {
        let values: Vec<u64> = seq
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u64>()
                    .map_err(|_| anyhow!("bad sequence entry {tok:?}"))
            })
            .collect::<Result<_>>()?;
        if values.is_empty() {
            bail!("empty sequence");
        }
        (seq.clone(), classify_u64(&values))
    } else if let Some(beta) = &args.beta {
        let beta = parse_composition(beta)?;
        let r = rank_for(&beta, args.circular)?;
        (r.to_string(), r.classify())
    } else {
        bail!("--seq or --beta is required");
    };
    if args.json {
        println!("{}", serde_json::to_string(&classification_json(&c))?);
    } else {
        println!("sequence: {seq_desc}");
        println!("{}", classification_text(&c));
    }
    Ok(())
}

fn require<T>(value: Option<T>, what: &str, map: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("{map} requires {what}"))
}

fn check_k(k: Option<u32>, size: u32) -> Result<()> {
    if let Some(k) = k {
        if k != size {
            bail!("input encodes {size} elements, but --k {k} was given");
        }
    }
    Ok(())
}

fn bijection_cmd(args: BijectionArgs) -> Result<()> {
    let trace = args.trace;
    let json = args.json;
    match args.map.as_str() {
        "phi" => {
            let delta = parse_composition(require(args.delta.as_deref(), "--delta", "phi")?)?;
            let d = parse_u32_list(require(args.d.as_deref(), "--d", "phi")?)?;
            let input = GateIdealSeq::new(&delta, d)?;
            check_k(args.k, input.size())?;
            let t = bijection::phi_traced(&input)?;
            if json {
                let mut doc = json!({
                    "map": "phi",
                    "input": input.to_json(),
                    "output": t.output.to_json(),
                });
                if trace {
                    doc["trace"] = json!({ "after_p1": t.after_p1 });
                }
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                println!("input:    {input}");
                if trace {
                    println!("after P1: {}", join_u32(&t.after_p1));
                }
                println!("output:   {}", t.output);
            }
        }
        "phi-inv" => {
            let delta = parse_composition(require(args.delta.as_deref(), "--delta", "phi-inv")?)?;
            let e = parse_u32_list(require(args.e.as_deref(), "--e", "phi-inv")?)?;
            let input = GateFilterSeq::new(&delta, e)?;
            check_k(args.k, input.size())?;
            let (out, inner) = bijection::phi_inverse_traced(&input)?;
            if json {
                let mut doc = json!({
                    "map": "phi-inv",
                    "input": input.to_json(),
                    "output": out.to_json(),
                });
                if trace {
                    doc["trace"] = json!({
                        "reversed_input": inner.input.d(),
                        "after_p1": inner.after_p1,
                    });
                }
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                println!("input:    {input}");
                if trace {
                    println!("on reversed input {}:", inner.input);
                    println!("after P1: {}", join_u32(&inner.after_p1));
                }
                println!("output:   {out}");
            }
        }
        "Phi" => {
            let beta = parse_composition(require(args.beta.as_deref(), "--beta", "Phi")?)?;
            let a = parse_u32_list(require(args.a.as_deref(), "--a", "Phi")?)?;
            let d = parse_u32_list(args.d.as_deref().unwrap_or(""))?;
            let input = FenceIdealEncoding::new(&beta, a, d)?;
            check_k(args.k, input.size())?;
            if args.restricted && !input.is_restricted() {
                input.validate(true).into_result()?;
            }
            let t = bijection::big_phi_traced(&input)?;
            if json {
                let mut doc = json!({
                    "map": "Phi",
                    "input": input.to_json(),
                    "output": t.output.to_json(),
                });
                if trace {
                    doc["trace"] = json!({
                        "after_ph1": { "a": t.after_ph1.0, "d": t.after_ph1.1 },
                        "splits": t.splits,
                        "after_ph2": { "b": t.after_ph2.0, "e": t.after_ph2.1 },
                    });
                }
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                println!("input:\n{}", input.interlaced());
                if trace {
                    println!("after PH1:\n{}", interlace(&t.after_ph1.0, &t.after_ph1.1));
                    println!("splits before i = {:?}", t.splits);
                    println!("after PH2:\n{}", interlace(&t.after_ph2.0, &t.after_ph2.1));
                }
                println!("output:\n{}", t.output.interlaced());
            }
        }
        "Phi-inv" => {
            let beta = parse_composition(require(args.beta.as_deref(), "--beta", "Phi-inv")?)?;
            let b = parse_u32_list(require(args.b.as_deref(), "--b", "Phi-inv")?)?;
            let e = parse_u32_list(args.e.as_deref().unwrap_or(""))?;
            let input = FenceFilterEncoding::new(&beta, b, e)?;
            check_k(args.k, input.size())?;
            if args.restricted && !input.is_restricted() {
                input.validate(true).into_result()?;
            }
            let (out, inner) = bijection::big_phi_inverse_traced(&input)?;
            if json {
                let mut doc = json!({
                    "map": "Phi-inv",
                    "input": input.to_json(),
                    "output": out.to_json(),
                });
                if trace {
                    doc["trace"] = json!({
                        "reversed_input": inner.input.to_json(),
                        "after_ph1": { "a": inner.after_ph1.0, "d": inner.after_ph1.1 },
                        "splits": inner.splits,
                        "after_ph2": { "b": inner.after_ph2.0, "e": inner.after_ph2.1 },
                    });
                }
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                println!("input:\n{}", input.interlaced());
                if trace {
                    println!("on reversed input:\n{}", inner.input.interlaced());
                    println!(
                        "after PH1:\n{}",
                        interlace(&inner.after_ph1.0, &inner.after_ph1.1)
                    );
                    println!("splits before i = {:?}", inner.splits);
                    println!(
                        "after PH2:\n{}",
                        interlace(&inner.after_ph2.0, &inner.after_ph2.1)
                    );
                }
                println!("output:\n{}", out.interlaced());
            }
        }
        "phi-bar" => {
            let delta = parse_composition(require(args.delta.as_deref(), "--delta", "phi-bar")?)?;
            let d = parse_u32_list(require(args.d.as_deref(), "--d", "phi-bar")?)?;
            check_k(args.k, d.iter().sum())?;
            let t = bijection::phi_bar_traced(&d, &delta)?;
            if json {
                let mut doc = json!({
                    "map": "phi-bar",
                    "input": { "d": t.input },
                    "output": { "e": t.output },
                });
                if trace {
                    doc["trace"] = json!({ "positive": t.positive, "after_p1": t.after_p1 });
                }
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                println!("input:    \u{230a}{}\u{230b}", join_u32(&t.input));
                if trace {
                    if t.positive {
                        println!("positive circular sequence: identity");
                    } else {
                        println!("after P1: \u{27e8}{}\u{27e9}", join_u32(&t.after_p1));
                    }
                }
                println!("output:   \u{2308}{}\u{2309}", join_u32(&t.output));
            }
        }
        "phi-bar-inv" => {
            let delta =
                parse_composition(require(args.delta.as_deref(), "--delta", "phi-bar-inv")?)?;
            let e = parse_u32_list(require(args.e.as_deref(), "--e", "phi-bar-inv")?)?;
            check_k(args.k, e.iter().sum())?;
            let out = bijection::phi_bar_inverse(&e, &delta)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&json!({
                        "map": "phi-bar-inv",
                        "input": { "e": e },
                        "output": { "d": out },
                    }))?
                );
            } else {
                println!("input:    \u{2308}{}\u{2309}", join_u32(&e));
                println!("output:   \u{230a}{}\u{230b}", join_u32(&out));
            }
        }
        "Phi-bar" => {
            let beta = parse_composition(require(args.beta.as_deref(), "--beta", "Phi-bar")?)?;
            let a = parse_u32_list(require(args.a.as_deref(), "--a", "Phi-bar")?)?;
            let d = parse_u32_list(require(args.d.as_deref(), "--d", "Phi-bar")?)?;
            let input = CircularIdealEncoding::new(&beta, a, d)?;
            check_k(args.k, input.size())?;
            let t = bijection::big_phi_bar_traced(&input)?;
            if json {
                let mut doc = json!({
                    "map": "Phi-bar",
                    "input": input.to_json(),
                    "output": t.output.to_json(),
                });
                if trace {
                    doc["trace"] = json!({
                        "after_phc1": { "a": t.after_phc1.0, "d": t.after_phc1.1 },
                        "mode": format!("{:?}", t.mode),
                        "after_phc2": { "b": t.after_phc2.0, "e": t.after_phc2.1 },
                    });
                }
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                println!("input:\n{}", input.interlaced());
                if trace {
                    println!(
                        "after PHC1:\n{}",
                        interlace_circ(&t.after_phc1.0, &t.after_phc1.1)
                    );
                    println!("PHC2 mode: {:?}", t.mode);
                    println!(
                        "after PHC2:\n{}",
                        interlace_circ(&t.after_phc2.0, &t.after_phc2.1)
                    );
                }
                println!("output:\n{}", t.output.interlaced());
            }
        }
        "Phi-bar-inv" => {
            let beta = parse_composition(require(args.beta.as_deref(), "--beta", "Phi-bar-inv")?)?;
            let b = parse_u32_list(require(args.b.as_deref(), "--b", "Phi-bar-inv")?)?;
            let e = parse_u32_list(require(args.e.as_deref(), "--e", "Phi-bar-inv")?)?;
            let input = CircularFilterEncoding::new(&beta, b, e)?;
            check_k(args.k, input.size())?;
            let out = bijection::big_phi_bar_inverse(&input)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&json!({
                        "map": "Phi-bar-inv",
                        "input": input.to_json(),
                        "output": out.to_json(),
                    }))?
                );
            } else {
                println!("input:\n{}", input.interlaced());
                println!("output:\n{}", out.interlaced());
            }
        }
        other => bail!(
            "unknown map {other:?}; expected one of phi, phi-inv, Phi, Phi-inv, \
             phi-bar, phi-bar-inv, Phi-bar, Phi-bar-inv"
        ),
    }
    Ok(())
}

fn join_u32(v: &[u32]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn interlace(top: &[u32], bottom: &[u32]) -> String {
    fence_lattice::encoding::interlaced(top, bottom)
}

fn interlace_circ(top: &[u32], bottom: &[u32]) -> String {
    let mut t = top.to_vec();
    if !t.is_empty() {
        t.push(t[0]);
    }
    fence_lattice::encoding::interlaced(&t, bottom)
}

fn predicted_kind(beta: &Composition) -> Result<CdKind> {
    Ok(match predicted_shape(beta) {
        PredictedShape::AllOnes | PredictedShape::Symmetric => CdKind::Scd,
        PredictedShape::TopInterlacing => CdKind::Tcd,
        PredictedShape::BottomInterlacing => CdKind::Bcd,
        PredictedShape::Undetermined => bail!("no predicted kind for {beta}"),
    })
}

fn sweep_cmd(args: SweepArgs) -> Result<()> {
    let mode = args.mode.as_str();
    if !matches!(
        mode,
        "heavy" | "fbsym" | "fbuni" | "partial-symmetry" | "logconcave"
    ) {
        bail!(
            "unknown sweep mode {mode:?}; expected heavy, fbsym, fbuni, \
             partial-symmetry, or logconcave"
        );
    }
    let all: Vec<Composition> = compositions(args.max_total).collect();
    let start = match &args.resume_after {
        None => 0,
        Some(s) => {
            let target = parse_composition(s)?;
            all.iter()
                .position(|c| *c == target)
                .map(|i| i + 1)
                .ok_or_else(|| anyhow!("--resume-after {target} is not in this sweep"))?
        }
    };
    let parity_even = |c: &Composition| c.num_parts() % 2 == 0;
    let selected: Vec<Composition> = all[start..]
        .iter()
        .filter(|c| match mode {
            "fbsym" | "fbuni" => parity_even(c),
            "partial-symmetry" => !parity_even(c),
            _ => true,
        })
        .cloned()
        .collect();

    let finding = |beta: &Composition| -> Result<Vec<String>> {
        let mut lines = Vec::new();
        match mode {
            "heavy" => {
                let report = rank::verify_shape_prediction(beta);
                let c = &report.classification;
                lines.push(serde_json::to_string(&json!({
                    "beta": beta.parts(),
                    "s": beta.num_parts(),
                    "predicted": report.predicted.to_string(),
                    "observed": {
                        "symmetric": c.symmetric,
                        "unimodal": c.unimodal,
                        "top_interlacing": c.top_interlacing,
                        "bottom_interlacing": c.bottom_interlacing,
                    },
                    "matches": report.matches,
                }))?);
            }
            "fbsym" => {
                let report = rank::verify_circular_symmetry(beta)?;
                lines.push(serde_json::to_string(&json!({
                    "beta": beta.parts(),
                    "symmetric": report.symmetric,
                    "witness": report.witness,
                }))?);
            }
            "fbuni" => {
                let report = rank::verify_circular_unimodality(beta)?;
                lines.push(serde_json::to_string(&json!({
                    "beta": beta.parts(),
                    "unimodal": report.unimodal,
                    "exceptional_shape": report.exceptional_shape,
                    "consistent": report.consistent,
                    "witness": report.witness,
                }))?);
            }
            "partial-symmetry" => {
                let report = rank::verify_partial_symmetry(beta)?;
                lines.push(serde_json::to_string(&json!({
                    "beta": beta.parts(),
                    "k_max": report.k_max,
                    "ok": report.ok,
                }))?);
            }
            "logconcave" => {
                let linear = rank::verify_log_concavity(beta, false)?;
                lines.push(serde_json::to_string(&json!({
                    "beta": beta.parts(),
                    "circular": false,
                    "log_concave": linear.log_concave,
                    "witness": linear.witness,
                }))?);
                if parity_even(beta) {
                    let circ = rank::verify_log_concavity(beta, true)?;
                    lines.push(serde_json::to_string(&json!({
                        "beta": beta.parts(),
                        "circular": true,
                        "log_concave": circ.log_concave,
                        "witness": circ.witness,
                    }))?);
                }
            }
            _ => unreachable!("mode validated above"),
        }
        Ok(lines)
    };

    let findings: Vec<Result<Vec<String>>> = if args.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .context("building worker pool")?;
        pool.install(|| {
            use rayon::prelude::*;
            selected.par_iter().map(finding).collect()
        })
    } else {
        selected.iter().map(finding).collect()
    };
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for lines in findings {
        for line in lines? {
            out.write_all(line.as_bytes())?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

fn chains_cmd(args: ChainsArgs) -> Result<()> {
    let beta = parse_composition(&args.beta)?;
    let fence = FencePoset::new(&beta);
    let target = match args.search.as_str() {
        "scd" => CdKind::Scd,
        "bcd" => CdKind::Bcd,
        "tcd" => CdKind::Tcd,
        "auto" => predicted_kind(&beta)?,
        other => bail!("unknown search target {other:?}; expected scd, bcd, tcd, or auto"),
    };
    let outcome = chains::search_extensions(fence.poset(), target, args.budget)?;
    match outcome {
        SearchOutcome::Witness {
            extension,
            decomposition,
            tried,
        } => {
            if args.json {
                let chains_json: Vec<Value> = decomposition
                    .chains
                    .iter()
                    .map(|c| {
                        json!({
                            "center2": c.center2(),
                            "ideals": c.ideals.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let doc = json!({
                    "beta": beta.parts(),
                    "target": target.as_str(),
                    "found": true,
                    "tried": tried,
                    "extension": extension,
                    "kind": decomposition.kind.as_str(),
                    "chains": chains_json,
                });
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                println!(
                    "witness extension after {tried} tried: {}",
                    extension
                        .iter()
                        .map(|x| format!("x{x}"))
                        .collect::<Vec<_>>()
                        .join(",")
                );
                println!(
                    "kind {} with {} chains",
                    decomposition.kind,
                    decomposition.chains.len()
                );
                for chain in &decomposition.chains {
                    let parts: Vec<String> = chain.ideals.iter().map(|s| s.to_string()).collect();
                    println!("  center {}: {}", chain.center(), parts.join(" < "));
                }
            }
        }
        SearchOutcome::Exhausted { tried } => {
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string(&json!({
                        "beta": beta.parts(),
                        "target": target.as_str(),
                        "found": false,
                        "exhausted": true,
                        "tried": tried,
                    }))?
                );
            } else {
                println!("no witness among all {tried} linear extensions");
            }
        }
        SearchOutcome::BudgetExhausted { tried } => {
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string(&json!({
                        "beta": beta.parts(),
                        "target": target.as_str(),
                        "found": false,
                        "exhausted": false,
                        "tried": tried,
                    }))?
                );
            } else {
                println!("budget exhausted after {tried} extensions, no witness found");
            }
        }
    }
    Ok(())
}

fn rowmotion_cmd(args: RowmotionArgs) -> Result<()> {
    let beta = parse_composition(&args.beta)?;
    let fence = FencePoset::new(&beta);
    let n = fence.n();
    if args.check_mesic {
        let report = rowmotion::check_size_mesic(fence.poset())?;
        if args.json {
            let orbits: Vec<Value> = report
                .orbits
                .iter()
                .map(|o| {
                    json!({
                        "length": o.length,
                        "total": o.total,
                        "average": o.average.to_string(),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string(&json!({
                    "beta": beta.parts(),
                    "n": n,
                    "c": report.constant.to_string(),
                    "orbits": orbits,
                    "mesic": report.pass,
                }))?
            );
        } else {
            for o in &report.orbits {
                println!(
                    "orbit length {:3}  total {:4}  average {}",
                    o.length, o.total, o.average
                );
            }
            println!(
                "size statistic is {}-mesic: {}",
                report.constant,
                if report.pass { "yes" } else { "NO" }
            );
        }
    } else {
        let orbits = rowmotion::orbits(fence.poset())?;
        if args.json {
            let rows: Vec<Value> = orbits
                .iter()
                .map(|o| {
                    json!({
                        "length": o.len(),
                        "representative": o.ideals()[0].to_vec(),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string(&json!({
                    "beta": beta.parts(),
                    "n": n,
                    "orbit_count": orbits.len(),
                    "orbits": rows,
                }))?
            );
        } else {
            println!("{} orbits on the ideals of F({beta})", orbits.len());
            for o in &orbits {
                println!("  length {:3} from {}", o.len(), o.ideals()[0]);
            }
        }
    }
    Ok(())
}
