//! `knotdet`: colored Jones, Alexander and Kashaev invariants of braid
//! closures from the command line.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotdet::braid::{bundled_corpus, load_corpus};
use knotdet::exactpoly::cyclotomic_reduce;
use knotdet::kashaev::{self, KashaevMode};
use knotdet::{foxburau, mcmahon, parse_braid, verma_oracle, BraidWord, Error};

#[derive(Parser)]
#[command(name = "knotdet", version, about = "Quantum invariants of braid closures")]
struct Cli {
    /// Print a single JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Knot {
    /// Braid word as signed generator indices, e.g. "1 -2 1 -2".
    #[arg(long, allow_hyphen_values = true)]
    word: String,

    /// Number of strands; defaults to one more than the largest generator.
    #[arg(long)]
    strands: Option<usize>,
}

impl Knot {
    fn braid(&self) -> Result<BraidWord, Failure> {
        Ok(parse_braid(&self.word, self.strands)?)
    }

    fn input(&self) -> Value {
        json!({ "word": self.word, "strands": self.strands })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Colored Jones polynomial J'_K(N), ascending powers of q.
    Jones {
        #[command(flatten)]
        knot: Knot,
        #[arg(short = 'N', long = "N")]
        n: u32,
        #[arg(long, value_enum, default_value_t = JonesEngine::Mcmahon)]
        engine: JonesEngine,
    },
    /// Normalized Alexander polynomial in z.
    Alexander {
        #[command(flatten)]
        knot: Knot,
        #[arg(long, value_enum, default_value_t = AlexanderEngine::Mcmahon)]
        engine: AlexanderEngine,
    },
    /// Kashaev invariant at q = exp(2 pi i / N).
    Kashaev {
        #[command(flatten)]
        knot: Knot,
        #[arg(short = 'N', long = "N")]
        n: u32,
        /// Exact value in Z[zeta_N], printed as a polynomial in q = zeta_N.
        #[arg(long)]
        exact: bool,
    },
    /// CSV of v_N = 2 pi ln|<K>_N| / N over a range of N.
    Volume {
        #[command(flatten)]
        knot: Knot,
        /// `a:b:step`, `a:b` or a single value.
        #[arg(short = 'N', long = "N", value_parser = parse_range)]
        range: NRange,
    },
    /// Run the cross-engine checks on a corpus (the bundled one by default).
    Verify { corpus: Option<PathBuf> },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum JonesEngine {
    Mcmahon,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlexanderEngine {
    Mcmahon,
    Fox,
    Both,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidGenerator { .. } | Error::Corpus(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

struct Report {
    input: Value,
    result: Value,
    engine: &'static str,
    timings: Value,
    text: String,
    ok: bool,
}

#[derive(Clone)]
struct NRange(Vec<u32>);

fn parse_range(s: &str) -> Result<NRange, String> {
    let parts: Vec<u32> = s
        .split(':')
        .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad number {p:?} in {s:?}")))
        .collect::<Result<_, _>>()?;
    let (a, b, step) = match parts[..] {
        [a] => (a, a, 1),
        [a, b] => (a, b, 1),
        [a, b, c] => (a, b, c),
        _ => return Err(format!("expected a:b:step, got {s:?}")),
    };
    if step == 0 || a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(NRange((a..=b).step_by(step as usize).collect()))
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn threads() -> usize {
    std::env::var("KNOTDET_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn jones(knot: &Knot, n: u32, engine: JonesEngine) -> Result<Report, Failure> {
    let b = knot.braid()?;
    let mut input = knot.input();
    input["N"] = json!(n);
    let run = |f: fn(&BraidWord, u32) -> knotdet::Result<knotdet::LaurentPoly>| -> Result<_, Failure> {
        let t = Instant::now();
        let p = f(&b, n)?;
        Ok((p, millis(t)))
    };
    match engine {
        JonesEngine::Mcmahon | JonesEngine::Oracle => {
            let (name, f): (&'static str, fn(&BraidWord, u32) -> _) = if engine == JonesEngine::Mcmahon {
                ("mcmahon", mcmahon::colored_jones)
            } else {
                ("oracle", verma_oracle::state_sum_jones)
            };
            let (p, ms) = run(f)?;
            Ok(Report {
                input,
                result: json!(p.to_string()),
                engine: name,
                timings: json!({ name: ms }),
                text: p.to_string(),
                ok: true,
            })
        }
        JonesEngine::Both => {
            let (a, ta) = run(mcmahon::colored_jones)?;
            let (o, to) = run(verma_oracle::state_sum_jones)?;
            let verdict = if a == o { "EQUAL" } else { "MISMATCH" };
            Ok(Report {
                input,
                result: json!({ "mcmahon": a.to_string(), "oracle": o.to_string(), "verdict": verdict }),
                engine: "both",
                timings: json!({ "mcmahon": ta, "oracle": to }),
                text: format!("mcmahon: {a}\noracle:  {o}\n{verdict}"),
                ok: a == o,
            })
        }
    }
}

fn alexander(knot: &Knot, engine: AlexanderEngine) -> Result<Report, Failure> {
    let b = knot.braid()?;
    let t = Instant::now();
    let m = match engine {
        AlexanderEngine::Fox => None,
        _ => Some(mcmahon::alexander(&b)?),
    };
    let tm = millis(t);
    let t = Instant::now();
    let f = match engine {
        AlexanderEngine::Mcmahon => None,
        _ => Some(foxburau::abelianize_check(&b)?.1),
    };
    let tf = millis(t);
    let report =
        |result, engine, timings, text: String, ok| Report { input: knot.input(), result, engine, timings, text, ok };
    Ok(match (m, f) {
        (Some(m), None) => report(json!(m.to_string()), "mcmahon", json!({ "mcmahon": tm }), m.to_string(), true),
        (None, Some(f)) => report(json!(f.to_string()), "fox", json!({ "fox": tf }), f.to_string(), true),
        (Some(m), Some(f)) => {
            let verdict = if m == f { "EQUAL" } else { "MISMATCH" };
            report(
                json!({ "mcmahon": m.to_string(), "fox": f.to_string(), "verdict": verdict }),
                "both",
                json!({ "mcmahon": tm, "fox": tf }),
                format!("mcmahon: {m}\nfox:     {f}\n{verdict}"),
                m == f,
            )
        }
        (None, None) => unreachable!(),
    })
}

fn format_complex(re: f64, im: f64) -> String {
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re:.12} {sign} {:.12}i", im.abs())
}

fn kashaev_cmd(knot: &Knot, n: u32, exact: bool) -> Result<Report, Failure> {
    let b = knot.braid()?;
    let mut input = knot.input();
    input["N"] = json!(n);
    input["exact"] = json!(exact);
    let t = Instant::now();
    let mode = if exact { KashaevMode::Exact } else { KashaevMode::Float };
    let v = kashaev::kashaev_value(&b, n, mode)?;
    let ms = millis(t);
    let approx = json!({ "re": v.approx.re, "im": v.approx.im, "abs": v.approx.norm() });
    let (result, text, engine) = match &v.exact {
        Some(x) => (json!({ "exact": x.to_string(), "approx": approx }), x.to_string(), "mcmahon"),
        None => (
            approx,
            format!("{}  (|.| = {:.12})", format_complex(v.approx.re, v.approx.im), v.approx.norm()),
            "state-sum",
        ),
    };
    Ok(Report { input, result, engine, timings: json!({ engine: ms }), text, ok: true })
}

fn volume(knot: &Knot, range: &[u32]) -> Result<Report, Failure> {
    let b = knot.braid()?;
    let t = Instant::now();
    let samples = kashaev::volume_rate_with_threads(&b, range, threads())?;
    let ms = millis(t);
    let mut csv = csv::Writer::from_writer(Vec::new());
    let write = |csv: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
        csv.write_record(["N", "abs_value", "rate"])?;
        for s in &samples {
            let rate = s.rate.map(|r| r.to_string()).unwrap_or_default();
            csv.write_record([s.n.to_string(), s.abs_value.to_string(), rate])?;
        }
        csv.flush()?;
        Ok(())
    };
    write(&mut csv).map_err(|e| Failure::Domain(e.to_string()))?;
    let text =
        String::from_utf8(csv.into_inner().map_err(|e| Failure::Domain(e.to_string()))?).expect("csv output is utf-8");
    for s in samples.iter().filter(|s| !s.is_reliable()) {
        eprintln!("warning: N={} lost {:.1} digits to cancellation; value unreliable", s.n, s.digits_lost);
    }
    let rows: Vec<Value> = samples
        .iter()
        .map(|s| {
            json!({ "N": s.n, "abs_value": s.abs_value, "rate": s.rate, "digits_lost": s.digits_lost, "reliable": s.is_reliable() })
        })
        .collect();
    let mut input = knot.input();
    input["N"] = json!(range);
    Ok(Report {
        input,
        result: json!(rows),
        engine: "state-sum",
        timings: json!({ "state-sum": ms }),
        text: text.trim_end().to_string(),
        ok: true,
    })
}

struct Check {
    name: String,
    check: String,
    pass: bool,
    detail: String,
}

fn verify(path: Option<&PathBuf>) -> Result<Report, Failure> {
    let t = Instant::now();
    let corpus = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            load_corpus(&text)?
        }
        None => bundled_corpus(),
    };
    let mut checks = Vec::new();
    let mut record = |name: &str, check: String, outcome: knotdet::Result<(bool, String)>| {
        let (pass, detail) = outcome.unwrap_or_else(|e| (false, e.to_string()));
        checks.push(Check { name: name.to_string(), check, pass, detail });
    };
    for entry in &corpus {
        let b = entry.braid()?;
        let name = entry.name.as_str();
        if let Some(want) = &entry.alexander {
            let want: knotdet::LaurentPoly = want.parse()?;
            record(name, "alexander".into(), mcmahon::alexander(&b).map(|p| (p == want, p.to_string())));
            record(
                name,
                "alexander-fox".into(),
                foxburau::abelianize_check(&b).map(|(_, p)| (p == want, p.to_string())),
            );
        }
        for n in 1..=3 {
            let outcome = mcmahon::colored_jones(&b, n)
                .and_then(|a| verma_oracle::state_sum_jones(&b, n).map(|o| (a == o, a.to_string())));
            record(name, format!("jones N={n}"), outcome);
        }
        for n in 1..=4 {
            let outcome = kashaev::kashaev_value(&b, n, KashaevMode::Exact).and_then(|k| {
                let j = cyclotomic_reduce(&mcmahon::colored_jones(&b, n)?, n)?;
                Ok((k.exact.as_ref() == Some(&j), j.to_string()))
            });
            record(name, format!("kashaev N={n}"), outcome);
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for c in &checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!("{:width$}  {:14}  {verdict}\n", c.name, c.check));
    }
    text.push_str(&format!("{passed}/{} checks passed", checks.len()));
    let rows: Vec<Value> =
        checks.iter().map(|c| json!({ "name": c.name, "check": c.check, "pass": c.pass, "value": c.detail })).collect();
    Ok(Report {
        input: json!({ "corpus": path.map(|p| p.display().to_string()).unwrap_or_else(|| "bundled".into()) }),
        result: json!({ "checks": rows, "passed": passed, "total": checks.len() }),
        engine: "all",
        timings: json!({ "total": millis(t) }),
        text,
        ok: passed == checks.len(),
    })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Jones { knot, n, engine } => jones(knot, *n, *engine),
        Command::Alexander { knot, engine } => alexander(knot, *engine),
        Command::Kashaev { knot, n, exact } => kashaev_cmd(knot, *n, *exact),
        Command::Volume { knot, range } => volume(knot, &range.0),
        Command::Verify { corpus } => verify(corpus.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                let out = json!({ "input": r.input, "result": r.result, "engine": r.engine, "timings": r.timings });
                println!("{out}");
            } else {
                println!("{}", r.text);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
