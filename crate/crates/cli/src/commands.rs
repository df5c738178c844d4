use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use skewcode::capacity::{aas_sandwich, capacity_csv, fibonacci, CapacityReport};
use skewcode::channel::{
    enumerate_skews, transmit, ChannelTiming, ReceivedBlock, SkewMode, SkewPattern,
};
use skewcode::code::{from_ndjson, verify_adjacency_reducing, Codebook, Message, StreamRecord};
use skewcode::graph::{build_component, max_independent_set, oracle_component, WeightComponent};
use skewcode::words::from_offsets;

use crate::output::{emit, round12, sig12, to_json};
use crate::{Common, Failure, Format};

/// Largest block length `verify` and `roundtrip --exhaustive` accept.
const EXHAUSTIVE_MAX_W: usize = 8;
/// Largest block length `codebook` lists in full.
const LISTING_MAX_W: usize = 32;
/// Largest block length `graph` exports.
const GRAPH_MAX_W: usize = 16;
/// Random trials per mode when `roundtrip` gets neither flag and w > 8.
const DEFAULT_TRIALS: u64 = 10_000;

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn capacity(w_max: usize, common: &Common) -> CmdResult {
    let aas = (w_max >= 2).then(|| aas_sandwich(w_max));
    let summary = aas.as_ref().map(|a| a.summary());
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = capacity_csv(w_max);
            if let Some(summary) = &summary {
                let _ = writeln!(s, "# {summary}");
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = CapacityReport::table(w_max)
                .into_iter()
                .map(|r| {
                    json!({
                        "w": r.w,
                        "F_w": r.fib.to_string(),
                        "C_1w": round12(r.capacity),
                        "gap_to_log2phi": round12(r.limit_gap),
                        "binet_residual": r.binet_check.map(round12),
                    })
                })
                .collect();
            let aas = aas.map(|a| {
                json!({
                    "w_max": a.w_max,
                    "lower": round12(a.lower),
                    "upper": round12(a.upper),
                    "upper_at": a.upper_at,
                    "resolved": round12(a.resolved),
                })
            });
            to_json(&json!({ "rows": rows, "aas": aas, "summary": summary }))
        }
        Format::Text => {
            let mut s = format!(
                "{:>6}  {:>24}  {:>16}  {:>18}\n",
                "w", "F_w", "C_1w", "gap_to_log2phi"
            );
            for r in CapacityReport::table(w_max) {
                let _ = writeln!(
                    s,
                    "{:>6}  {:>24}  {:>16}  {:>18}",
                    r.w,
                    r.fib,
                    sig12(r.capacity),
                    sig12(r.limit_gap)
                );
            }
            if let Some(summary) = &summary {
                let _ = writeln!(s, "{summary}");
            }
            s
        }
    };
    Ok(emit(common, &text)?)
}

pub fn codebook(w: usize, common: &Common) -> CmdResult {
    if w > LISTING_MAX_W {
        return Err(usage(format!(
            "codebook listing needs w <= {LISTING_MAX_W}"
        )));
    }
    let cb = Codebook::new(w)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => cb.to_json() + "\n",
        Format::Csv | Format::Text => {
            let csv = common.format == Some(Format::Csv);
            let mut s = if csv {
                String::from("message,h,word,offsets\n")
            } else {
                format!("# w={w} size={}\n", cb.len())
            };
            for (m, x) in cb.codewords().enumerate() {
                let word = from_offsets(&x, w)?;
                if csv {
                    let _ = writeln!(s, "{m},{},{word},\"{x}\"", x.weight());
                } else {
                    let _ = writeln!(s, "{m}\t{}\t{word}\t{x}", x.weight());
                }
            }
            s
        }
    };
    Ok(emit(common, &text)?)
}

#[derive(Serialize)]
struct ComponentJson {
    w: usize,
    h: usize,
    vertices: Vec<Vec<u32>>,
    edges: Vec<(usize, usize)>,
}

impl From<&WeightComponent> for ComponentJson {
    fn from(c: &WeightComponent) -> Self {
        Self {
            w: c.w(),
            h: c.h(),
            vertices: c.vertices().iter().map(|x| x.offsets().to_vec()).collect(),
            edges: c.edges(),
        }
    }
}

pub fn graph(
    w: usize,
    h: Option<usize>,
    oracle: bool,
    mode: SkewMode,
    common: &Common,
) -> CmdResult {
    if w > GRAPH_MAX_W {
        return Err(usage(format!("graph export needs w <= {GRAPH_MAX_W}")));
    }
    if let Some(h) = h {
        if h > w {
            return Err(usage(format!("--h must be between 0 and {w}")));
        }
    }
    let classes: Vec<usize> = match h {
        Some(h) => vec![h],
        None => (0..=w).collect(),
    };
    let components = classes
        .into_iter()
        .map(|h| {
            if oracle {
                oracle_component(w, h, mode)
            } else {
                build_component(w, h)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let text = match common.format.unwrap_or(Format::Text) {
        Format::Text => components
            .iter()
            .map(WeightComponent::to_edge_list)
            .collect(),
        Format::Json => to_json(
            &components
                .iter()
                .map(ComponentJson::from)
                .collect::<Vec<_>>(),
        ),
        Format::Csv => return Err(usage("graph supports --format text or json")),
    };
    Ok(emit(common, &text)?)
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn verify_checks(w: usize) -> Result<Vec<Check>, Failure> {
    let mut checks = Vec::new();
    let analytic = (0..=w)
        .map(|h| build_component(w, h))
        .collect::<Result<Vec<_>, _>>()?;

    for mode in SkewMode::ALL {
        let mut mismatched = Vec::new();
        for (h, expected) in analytic.iter().enumerate() {
            if oracle_component(w, h, mode)?.edges() != expected.edges() {
                mismatched.push(h);
            }
        }
        let edges: usize = analytic.iter().map(WeightComponent::edge_count).sum();
        checks.push(Check {
            name: format!("oracle-equivalence[{mode}]"),
            pass: mismatched.is_empty(),
            detail: if mismatched.is_empty() {
                format!("{edges} edges agree across {} classes", w + 1)
            } else {
                format!("edge sets differ in classes {mismatched:?}")
            },
        });
    }

    let reducing = verify_adjacency_reducing(w)?;
    checks.push(Check {
        name: "adjacency-reducing".into(),
        pass: reducing,
        detail: "non-adjacent pairs stay non-adjacent; range independent".into(),
    });

    let cb = Codebook::new(w)?;
    let dependent: Vec<usize> = (0..=w)
        .filter(|&h| !analytic[h].is_independent(&cb.class(h).collect::<Vec<_>>()))
        .collect();
    checks.push(Check {
        name: "codebook-independent".into(),
        pass: dependent.is_empty(),
        detail: format!("{} codewords", cb.len()),
    });

    let mis_sizes = analytic
        .iter()
        .map(|c| max_independent_set(c).map(|s| s.len() as u128))
        .collect::<Result<Vec<_>, _>>()?;
    let total: u128 = mis_sizes.iter().sum();
    let fib = fibonacci(w);
    checks.push(Check {
        name: "mis-total".into(),
        pass: fib == total.into(),
        detail: format!("sum of independence numbers {total}, F_w {fib}"),
    });
    let classes_max = mis_sizes.as_slice() == cb.class_sizes();
    checks.push(Check {
        name: "classes-maximum".into(),
        pass: classes_max,
        detail: format!(
            "class sizes {:?}, independence numbers {mis_sizes:?}",
            cb.class_sizes()
        ),
    });
    Ok(checks)
}

pub fn verify(w: usize, common: &Common) -> CmdResult {
    if w > EXHAUSTIVE_MAX_W {
        return Err(usage(format!("verify needs w <= {EXHAUSTIVE_MAX_W}")));
    }
    let checks = verify_checks(w)?;
    let all_pass = checks.iter().all(|c| c.pass);
    let text = match common.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = format!("verify w={w}\n");
            for c in &checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status} {:<34} {}", c.name, c.detail);
            }
            let _ = writeln!(
                s,
                "{}",
                if all_pass {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            );
            s
        }
        Format::Json => {
            let list: Vec<_> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                .collect();
            to_json(&json!({ "w": w, "checks": list, "all_pass": all_pass }))
        }
        Format::Csv => {
            let mut s = String::from("check,pass\n");
            for c in &checks {
                let _ = writeln!(s, "{},{}", c.name, c.pass);
            }
            s
        }
    };
    emit(common, &text)?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}

fn random_skew(rng: &mut ChaCha8Rng, w: usize, mode: SkewMode) -> SkewPattern {
    SkewPattern::from_choices(w, mode, |_, c| c[rng.random_range(0..c.len())])
        .expect("choices are admissible")
}

#[derive(Serialize)]
struct SimRecord {
    #[serde(flatten)]
    record: StreamRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamps: Option<Vec<f64>>,
}

#[allow(clippy::too_many_arguments)]
pub fn simulate(
    w: usize,
    blocks: u64,
    seed: u64,
    mode: SkewMode,
    period: Option<f64>,
    delay: f64,
    common: &Common,
) -> CmdResult {
    let cb = Codebook::new(w)?;
    let timing = match period {
        Some(p) => Some(
            ChannelTiming::new(p, delay)
                .ok_or_else(|| usage("--period must be positive and --delay nonnegative"))?,
        ),
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    for block in 0..blocks {
        let m = Message(rng.random_range(0..cb.len()));
        let word = cb.encode(m)?;
        let skew = random_skew(&mut rng, w, mode);
        let rx = transmit(&word, &skew)?;
        let record = StreamRecord {
            block,
            message: m.0,
            word: word.to_string(),
            arrivals: rx.arrivals().to_vec(),
        };
        match common.format.unwrap_or(Format::Json) {
            Format::Json => {
                let rec = SimRecord {
                    record,
                    timestamps: timing
                        .map(|t| t.timestamps(&rx).into_iter().map(round12).collect()),
                };
                text.push_str(&serde_json::to_string(&rec).expect("record serializes"));
                text.push('\n');
            }
            Format::Text | Format::Csv => {
                if block == 0 {
                    let _ = writeln!(text, "# w={w} mode={mode} seed={seed}");
                }
                let arrivals: Vec<_> = record.arrivals.iter().map(u32::to_string).collect();
                let _ = writeln!(
                    text,
                    "{}\t{}\t{}\t{}\t[{}]",
                    record.block,
                    record.message,
                    record.word,
                    skew,
                    arrivals.join(",")
                );
            }
        }
    }
    Ok(emit(common, &text)?)
}

pub fn decode(w: usize, input: Option<PathBuf>, common: &Common) -> CmdResult {
    let cb = Codebook::new(w)?;
    let raw = match input {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let mut records = from_ndjson(&raw).map_err(|e| usage(format!("malformed stream: {e}")))?;
    records.sort_by_key(|r| r.block);
    let mut failures = 0usize;
    let mut text = String::new();
    for r in &records {
        let outcome = ReceivedBlock::new(r.arrivals.clone(), w).and_then(|rx| cb.decode(&rx));
        let line = match outcome {
            Ok(m) if m.0 == r.message => format!("{}\t{}\tok", r.block, m.0),
            Ok(m) => {
                failures += 1;
                format!("{}\t{}\tmismatch (expected {})", r.block, m.0, r.message)
            }
            Err(e) => {
                failures += 1;
                format!("{}\t-\terror: {e}", r.block)
            }
        };
        text.push_str(&line);
        text.push('\n');
    }
    let _ = writeln!(text, "# blocks={} failures={failures}", records.len());
    emit(common, &text)?;
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{failures} blocks failed to decode"
        )))
    }
}

struct ModeTally {
    mode: SkewMode,
    trials: u128,
    failures: u128,
}

fn roundtrip_exhaustive(cb: &Codebook, mode: SkewMode) -> Result<ModeTally, Failure> {
    let skews: Vec<_> = enumerate_skews(cb.w(), mode)?.collect();
    let mut tally = ModeTally {
        mode,
        trials: 0,
        failures: 0,
    };
    for m in 0..cb.len() {
        let word = cb.encode(Message(m))?;
        for s in &skews {
            tally.trials += 1;
            if cb.decode(&transmit(&word, s)?).ok() != Some(Message(m)) {
                tally.failures += 1;
            }
        }
    }
    Ok(tally)
}

fn roundtrip_random(
    cb: &Codebook,
    mode: SkewMode,
    trials: u64,
    rng: &mut ChaCha8Rng,
) -> Result<ModeTally, Failure> {
    let mut tally = ModeTally {
        mode,
        trials: 0,
        failures: 0,
    };
    for _ in 0..trials {
        let m = Message(rng.random_range(0..cb.len()));
        let word = cb.encode(m)?;
        let skew = random_skew(rng, cb.w(), mode);
        tally.trials += 1;
        if cb.decode(&transmit(&word, &skew)?).ok() != Some(m) {
            tally.failures += 1;
        }
    }
    Ok(tally)
}

pub fn roundtrip(
    w: usize,
    exhaustive: bool,
    trials: Option<u64>,
    seed: u64,
    mode: Option<SkewMode>,
    common: &Common,
) -> CmdResult {
    let exhaustive = exhaustive || (trials.is_none() && w <= EXHAUSTIVE_MAX_W);
    if exhaustive && w > EXHAUSTIVE_MAX_W {
        return Err(usage(format!("--exhaustive needs w <= {EXHAUSTIVE_MAX_W}")));
    }
    let cb = Codebook::new(w)?;
    let modes: Vec<SkewMode> = match mode {
        Some(m) => vec![m],
        None => SkewMode::ALL.to_vec(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tallies = modes
        .into_iter()
        .map(|mode| {
            if exhaustive {
                roundtrip_exhaustive(&cb, mode)
            } else {
                roundtrip_random(&cb, mode, trials.unwrap_or(DEFAULT_TRIALS), &mut rng)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let failures: u128 = tallies.iter().map(|t| t.failures).sum();
    let kind = if exhaustive { "exhaustive" } else { "random" };
    let text = match common.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = format!("roundtrip w={w} messages={} {kind} seed={seed}\n", cb.len());
            for t in &tallies {
                let _ = writeln!(
                    s,
                    "{}: {} trials, {} failures",
                    t.mode, t.trials, t.failures
                );
            }
            let _ = writeln!(
                s,
                "{}",
                if failures == 0 {
                    "zero errors"
                } else {
                    "DECODING ERRORS"
                }
            );
            s
        }
        Format::Json => {
            let modes: Vec<_> = tallies
                .iter()
                .map(|t| json!({ "mode": t.mode, "trials": t.trials, "failures": t.failures }))
                .collect();
            to_json(&json!({
                "w": w,
                "messages": cb.len(),
                "kind": kind,
                "seed": seed,
                "modes": modes,
                "failures": failures,
            }))
        }
        Format::Csv => {
            let mut s = String::from("mode,trials,failures,seed\n");
            for t in &tallies {
                let _ = writeln!(s, "{},{},{},{seed}", t.mode, t.trials, t.failures);
            }
            s
        }
    };
    emit(common, &text)?;
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failures} round trips failed")))
    }
}
