//! Command-line front end. `run` parses, executes and renders; the binary
//! only prints what it returns.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::smallest_prime_mth_residue;
use crate::bounds::{self, ChebParams, FieldParams};
use crate::decomp::{self, FieldContext};
use crate::error::Result;
use crate::report::{Parameters, ReportEnvelope};
use crate::{gl_orders, quadfam, residues, weil};

#[derive(Debug, Parser)]
#[command(name = "torsieve", version, about = "Torsion-finiteness sieve toolkit")]
pub struct Cli {
    /// Emit the machine-readable report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Effective Chebotarev constant C3 (>= 1)
    #[arg(long, global = true, default_value_t = bounds::DEFAULT_C3)]
    pub c3: f64,
    /// Small-residue constant C1'
    #[arg(long = "c1prime", global = true, default_value_t = bounds::DEFAULT_C1_PRIME)]
    pub c1_prime: f64,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel scans
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write the JSON report here
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factorization of M'(n)
    Mprime { n: u64 },
    /// Run the decomposition sieve
    Decomp {
        #[arg(long)]
        g: u64,
        /// Degree of a general base field; omit for Q
        #[arg(long)]
        nk: Option<u64>,
        #[arg(long)]
        semistable: bool,
        #[arg(long)]
        delta: Option<u64>,
    },
    /// The g = 4 survivor table
    TableG4,
    /// The (A2) threshold on ell
    Threshold {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        q0: u64,
        #[arg(long)]
        elambda: u64,
    },
    /// Explicit constants
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// W_{-1}(x)
    Lambertw {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Largest root of x^{1/N} = log(cx)
    X0 {
        #[arg(long)]
        c: f64,
        #[arg(long = "N")]
        n: f64,
    },
    /// Least prime m-th power residue mod ell
    Residue {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Least prime m-th power residues over a range of ell
    ElliottScan {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 3)]
        from: u64,
        /// Upper end of the scan (at most 10^6)
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// Splitting conditions for a quadratic field
    Goldfeld(GoldfeldArgs),
    /// Weil numbers and Frobenius polynomials
    #[command(subcommand)]
    Weil(WeilCmd),
    /// The quadratic unit family
    Family {
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Exhaustive check of the condition chain
    Chain {
        #[arg(long, default_value_t = 60)]
        max_d: u64,
        #[arg(long, default_value_t = 200)]
        max_ell: u64,
        #[arg(long, default_value_t = 3)]
        max_nd: u64,
        #[arg(long, default_value_t = 3)]
        max_fl: u64,
    },
}

#[derive(Debug, Args)]
pub struct ChebArgs {
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = 1)]
    g: u64,
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[arg(long, default_value_t = 1)]
    nk: u64,
    /// log of the discriminant of the Galois closure
    #[arg(long, default_value_t = 0.0)]
    log_disc: f64,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    C4c5(ChebArgs),
    C1 {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        g: u64,
        #[arg(long)]
        eps: f64,
    },
    C6 {
        #[command(flatten)]
        cheb: ChebArgs,
        /// largest prime dividing the discriminant
        #[arg(long, default_value_t = 1)]
        ell_prime: u64,
    },
    C7 {
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 1)]
        nk: u64,
    },
    C8 {
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
    },
    Corollary(ChebArgs),
    NUniform {
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        nf: u64,
        #[arg(long, default_value_t = 0.0)]
        log_disc: f64,
        #[arg(long, default_value_t = 1)]
        ell_prime: u64,
    },
    Q0 {
        #[arg(long)]
        nk: u64,
        #[arg(long)]
        ell_is_2: bool,
    },
    /// Corollary bound against the true crossing on random parameters
    RandomCheck {
        #[arg(long, default_value_t = 100)]
        draws: u64,
    },
}

#[derive(Debug, Args)]
pub struct GoldfeldArgs {
    /// Discriminant of the quadratic field K
    #[arg(long, allow_negative_numbers = true)]
    disc: i64,
    /// Test membership of ell in N'(K)
    #[arg(long)]
    ell: Option<u64>,
    /// Test N directly
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    /// Excluded primes
    #[arg(long, value_delimiter = ',')]
    s: Vec<u64>,
    /// Count members of N'(K) up to this bound
    #[arg(long)]
    count_limit: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum WeilCmd {
    /// Characteristic polynomial of the e-th power (coefficients highest first)
    PowerCharpoly {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Vec<i64>,
        #[arg(long)]
        e: u64,
    },
    Forcing {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Vec<i64>,
        #[arg(long)]
        q0: u64,
        #[arg(long)]
        elambda: u64,
        #[arg(long)]
        ell: u64,
    },
    Mazur {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long)]
        ell: u64,
    },
    SixthRoot {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
    },
    Cubic {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u64,
    },
    Mq {
        #[arg(long)]
        ell: u64,
        #[arg(long, value_delimiter = ',')]
        i: Vec<u64>,
    },
    Trace {
        #[arg(long)]
        q: u64,
        /// 12 multiplicities, or 6 with --mu6
        #[arg(long, value_delimiter = ',')]
        kappa: Vec<u64>,
        #[arg(long)]
        mu6: bool,
        #[arg(long)]
        n: u64,
    },
    Degree {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        p: u64,
    },
}

/// Exit status and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    command: &'static str,
    inputs: Value,
    results: Value,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results always serialize")
}

fn as_map(v: Value) -> BTreeMap<String, Value> {
    match v {
        Value::Object(m) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let params = Parameters { c3: cli.c3, c1_prime: cli.c1_prime };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli, params)),
            Err(e) => {
                return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") }
            }
        },
        None => execute(&cli, params),
    };
    match result {
        Ok(out) => {
            let env = ReportEnvelope::new(out.command, as_map(out.inputs), out.results, params);
            let json = env.to_json();
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                    return Outcome {
                        code: 1,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    };
                }
            }
            let stdout = if cli.json { format!("{json}\n") } else { out.text };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn check_params(p: Parameters) -> Result<()> {
    if !(p.c3 >= 1.0 && p.c3.is_finite()) {
        return Err(crate::Error::Domain(format!("C3 = {} must be a finite real >= 1", p.c3)));
    }
    if !(p.c1_prime > 0.0 && p.c1_prime.is_finite()) {
        return Err(crate::Error::Domain(format!("C1' = {} must be positive", p.c1_prime)));
    }
    Ok(())
}

fn execute(cli: &Cli, params: Parameters) -> Result<Output> {
    check_params(params)?;
    match &cli.command {
        Command::Mprime { n } => {
            let m = gl_orders::m_prime(*n)?;
            Ok(Output {
                command: "mprime",
                inputs: json!({ "n": n }),
                results: json!({
                    "value": m.value.to_string(),
                    "factors": m.factors,
                    "factorization": m.factor_string(),
                    "largest_prime": m.largest_prime(),
                }),
                text: format!("{m}\n"),
            })
        }
        Command::Decomp { g, nk, semistable, delta } => {
            let mut ctx = match nk {
                Some(n) => FieldContext::general(*n)?,
                None => FieldContext::rational(),
            };
            ctx = ctx.with_semistable(*semistable);
            if let Some(d) = delta {
                ctx = ctx.with_delta(*d)?;
            }
            let a = decomp::analyze(*g, &ctx)?;
            Ok(Output {
                command: "decomp",
                inputs: json!({ "g": g, "nk": nk, "semistable": semistable, "delta": delta }),
                results: to_value(&a),
                text: a.render_text(),
            })
        }
        Command::TableG4 => {
            let rows = decomp::g4_table()?;
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "sum": r.profile.sum_string(),
                        "e": r.e,
                        "m_q": r.m_q,
                        "modulus": r.constraint.modulus(),
                        "residues": r.constraint.residues(),
                        "congruence": r.constraint.to_string(),
                    })
                })
                .collect();
            Ok(Output {
                command: "table-g4",
                inputs: json!({}),
                results: json!({ "rows": json_rows }),
                text: decomp::render_table(&rows),
            })
        }
        Command::Threshold { g, q0, elambda } => {
            let t = bounds::a2_threshold(*g, *q0, *elambda)?;
            Ok(Output {
                command: "threshold",
                inputs: json!({ "g": g, "q0": q0, "elambda": elambda }),
                results: json!({ "threshold": t.to_string() }),
                text: format!("(A2) requires ell > {t}\n"),
            })
        }
        Command::Bounds(b) => run_bounds(b, cli.seed, params),
        Command::Lambertw { x } => {
            let w = bounds::lambert_w_m1(*x)?;
            Ok(Output {
                command: "lambertw",
                inputs: json!({ "x": x }),
                results: json!({ "w": w, "residual": w * w.exp() - x }),
                text: format!("W_-1({x}) = {w:.15}\n"),
            })
        }
        Command::X0 { c, n } => {
            let v = bounds::x0(*c, *n)?;
            let bound = c * n.powf(2.0 * n);
            Ok(Output {
                command: "x0",
                inputs: json!({ "c": c, "N": n }),
                results: json!({ "x0": v, "upper_bound_c_N2N": bound }),
                text: format!("x0 = {v:.12}\nc·N^(2N) = {bound}\n"),
            })
        }
        Command::Residue { m, ell } => {
            let p = smallest_prime_mth_residue(*m, *ell)?;
            Ok(Output {
                command: "residue",
                inputs: json!({ "m": m, "ell": ell }),
                results: json!({ "p_min": p }),
                text: format!("least prime m-th power residue (m = {m}) mod {ell}: {p}\n"),
            })
        }
        Command::ElliottScan { m, from, limit, eps } => {
            let s = residues::elliott_scan(*m, *from, *limit, *eps)?;
            let text = format!(
                "primes scanned: {}\nmax p_min / ell^((m-1)/4 + eps) = {:.6} at ell = {}\n",
                s.rows.len(),
                s.max_ratio,
                s.argmax.map_or("-".to_string(), |e| e.to_string())
            );
            Ok(Output {
                command: "elliott-scan",
                inputs: json!({ "m": m, "from": from, "limit": limit, "eps": eps }),
                results: to_value(&s),
                text,
            })
        }
        Command::Goldfeld(a) => run_goldfeld(a),
        Command::Weil(w) => run_weil(w),
        Command::Family { count } => {
            let mut rows = Vec::new();
            let mut text = String::new();
            let n = (*count).min(quadfam::MAX_FAMILY);
            for i in 0..n {
                let u = quadfam::verify_unit_conditions(i)?;
                let c = quadfam::LegendreCurve::family(i)?;
                let j = quadfam::j_invariant(&c);
                writeln!(
                    text,
                    "i = {i}: ε = {}, unit = {}, ε-1 is a 2-unit = {}, j = {}",
                    c.lambda(),
                    u.eps_unit,
                    u.eps_minus_one_2unit,
                    j
                )
                .unwrap();
                rows.push(json!({ "i": i, "epsilon": c.lambda(), "units": u, "j": j }));
            }
            let distinct = quadfam::distinct_family_check(*count)?;
            writeln!(text, "pairwise distinct j-invariants: {distinct}").unwrap();
            Ok(Output {
                command: "family",
                inputs: json!({ "count": count }),
                results: json!({ "members": rows, "distinct": distinct }),
                text,
            })
        }
        Command::Chain { max_d, max_ell, max_nd, max_fl } => {
            if *max_d > 1000 || *max_ell > 10_000 || *max_nd > 10 || *max_fl > 10 {
                return Err(crate::Error::Range(
                    "scan limited to d <= 1000, ell <= 10^4, n_d <= 10, f <= 10".to_string(),
                ));
            }
            let bad = decomp::chain_violations(*max_d, *max_ell, *max_nd, *max_fl);
            Ok(Output {
                command: "chain",
                inputs: json!({ "max_d": max_d, "max_ell": max_ell, "max_nd": max_nd, "max_fl": max_fl }),
                results: json!({ "violations": bad.iter().map(|(s, c)| json!({"state": s, "conditions": c})).collect::<Vec<_>>() }),
                text: format!("violations: {}\n", bad.len()),
            })
        }
    }
}

fn cheb(a: &ChebArgs, c3: f64) -> ChebParams {
    ChebParams { c3, log_disc_ktilde: a.log_disc, m: a.m, g: a.g, n: a.n, n_k: a.nk }
}

fn cheb_inputs(a: &ChebArgs) -> Value {
    json!({ "m": a.m, "g": a.g, "n": a.n, "nk": a.nk, "log_disc": a.log_disc })
}

fn run_bounds(cmd: &BoundsCmd, seed: u64, params: Parameters) -> Result<Output> {
    Ok(match cmd {
        BoundsCmd::C4c5(a) => {
            let (c4, c5) = bounds::c4_c5(&cheb(a, params.c3))?;
            Output {
                command: "bounds c4c5",
                inputs: cheb_inputs(a),
                results: json!({ "C4": c4, "C5": c5 }),
                text: format!("C4 = {c4}\nC5 = {c5}\n"),
            }
        }
        BoundsCmd::C1 { m, g, eps } => {
            let v = bounds::c1(*m, *g, *eps, params.c1_prime)?;
            Output {
                command: "bounds c1",
                inputs: json!({ "m": m, "g": g, "eps": eps }),
                results: json!({ "C1": v }),
                text: format!("C1 = {v}\n"),
            }
        }
        BoundsCmd::C6 { cheb: a, ell_prime } => {
            let v = bounds::c6(&cheb(a, params.c3), *ell_prime)?;
            let mut inputs = cheb_inputs(a);
            inputs["ell_prime"] = json!(ell_prime);
            Output { command: "bounds c6", inputs, results: json!({ "C6": v }), text: format!("C6 = {v}\n") }
        }
        BoundsCmd::C7 { g, nk } => {
            let v = bounds::c7(*g, *nk)?;
            Output {
                command: "bounds c7",
                inputs: json!({ "g": g, "nk": nk }),
                results: json!({ "C7": v }),
                text: format!("C7 = {v} (log10 = {:.4})\n", v.log10()),
            }
        }
        BoundsCmd::C8 { g, eps } => {
            let r = bounds::c8(*g, *eps, params.c1_prime)?;
            Output {
                command: "bounds c8",
                inputs: json!({ "g": g, "eps": eps }),
                text: format!("C8 = {} (dominant term {})\n", r.value, r.dominant),
                results: to_value(&r),
            }
        }
        BoundsCmd::Corollary(a) => {
            let p = cheb(a, params.c3);
            let b = bounds::corollary_bound(&p)?;
            let lc = bounds::log_crossing(&p)?;
            let ok = bounds::corollary_dominates_crossing(&p)?;
            Output {
                command: "bounds corollary",
                inputs: cheb_inputs(a),
                results: json!({ "bound": b, "log_crossing": lc, "dominates": ok }),
                text: format!("bound = {b}\ncrossing = e^{lc:.6}\nbound >= crossing: {ok}\n"),
            }
        }
        BoundsCmd::NUniform { g, n, nf, log_disc, ell_prime } => {
            let field = FieldParams { c3: params.c3, log_disc_ktilde: *log_disc, n_k: *nf, ell_prime: *ell_prime };
            let u = bounds::n_uniform(*g, *n, &field)?;
            Output {
                command: "bounds n-uniform",
                inputs: json!({ "g": g, "n": n, "nf": nf, "log_disc": log_disc, "ell_prime": ell_prime }),
                text: format!(
                    "m ranges over {} divisors\nN1 = {}\nC7 = {}\nN = {}\n",
                    u.terms.len(),
                    u.n1,
                    u.c7,
                    u.value
                ),
                results: to_value(&u),
            }
        }
        BoundsCmd::Q0 { nk, ell_is_2 } => {
            let v = bounds::q0_bound(*nk, *ell_is_2)?;
            Output {
                command: "bounds q0",
                inputs: json!({ "nk": nk, "ell_is_2": ell_is_2 }),
                results: json!({ "q0_bound": v }),
                text: format!("q0 <= {v}\n"),
            }
        }
        BoundsCmd::RandomCheck { draws } => {
            if *draws > 100_000 {
                return Err(crate::Error::Range("at most 10^5 draws".to_string()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = Vec::new();
            for _ in 0..*draws {
                let c3: f64 = rng.gen_range(1.0..=10.0);
                let c4: f64 = rng.gen_range(0.0..=20.0);
                let c5 = rng.gen_range(1..=24u64) as f64;
                let n = rng.gen_range(1..=3u64);
                let g = rng.gen_range(1..=4u64);
                let b = bounds::corollary_bound_raw(g, n, c3, c4, c5)?;
                let lc = bounds::log_crossing_raw(g, n, c3, c4, c5)?;
                if lc > b.log_e() * (1.0 + crate::arith::LOG_GUARD) {
                    failures.push(json!({ "g": g, "n": n, "C3": c3, "C4": c4, "C5": c5 }));
                }
            }
            Output {
                command: "bounds random-check",
                inputs: json!({ "draws": draws, "seed": seed }),
                text: format!("draws: {draws}\nbound below crossing: {}\n", failures.len()),
                results: json!({ "failures": failures }),
            }
        }
    })
}

fn run_goldfeld(a: &GoldfeldArgs) -> Result<Output> {
    let k = residues::QuadraticField::new(a.disc)?;
    let mut results = serde_json::Map::new();
    let mut text = String::new();
    if let Some(ell) = a.ell {
        let member = residues::nprime_member(ell, &k)?;
        let n = -residues::ell_star(ell)?;
        let v = residues::goldfeld_check(n, &k, &[])?;
        writeln!(text, "ell = {ell}: in N'(K) = {member}; -ell* = {n}: go1 = {}, go2 = {}", v.go1, v.go2).unwrap();
        results.insert("nprime_member".into(), json!(member));
        results.insert("verdict".into(), to_value(&v));
    }
    if let Some(n) = a.n {
        let v = residues::goldfeld_check(n, &k, &a.s)?;
        writeln!(text, "N = {n}: go1 = {}, go2 = {}, witnesses = {:?}", v.go1, v.go2, v.witnesses).unwrap();
        results.insert("goldfeld".into(), to_value(&v));
    }
    if let Some(limit) = a.count_limit {
        let c = residues::nprime_count(&k, limit)?;
        writeln!(text, "primes ell <= {limit} in N'(K): {c}").unwrap();
        results.insert("count".into(), json!(c));
    }
    if results.is_empty() {
        return Err(crate::Error::Domain("give at least one of --ell, --n, --count-limit".into()));
    }
    Ok(Output {
        command: "goldfeld",
        inputs: json!({ "disc": a.disc, "ell": a.ell, "n": a.n, "s": a.s, "count_limit": a.count_limit }),
        results: Value::Object(results),
        text,
    })
}

fn certificate_output(command: &'static str, inputs: Value, c: weil::Certificate) -> Output {
    let text = format!("{}refutation: {}\n", c.render_text(), c.is_refutation());
    Output { command, inputs, results: json!({ "certificate": c, "refutation": c.is_refutation() }), text }
}

fn run_weil(cmd: &WeilCmd) -> Result<Output> {
    Ok(match cmd {
        WeilCmd::PowerCharpoly { coeffs, e } => {
            let p = weil::IntPolynomial::from_descending(coeffs)?;
            let pe = weil::power_charpoly(&p, *e)?;
            Output {
                command: "weil power-charpoly",
                inputs: json!({ "coeffs": coeffs, "e": e }),
                results: json!({ "polynomial": p.to_string(), "power": pe.to_string(), "coefficients": pe }),
                text: format!("{pe}\n"),
            }
        }
        WeilCmd::Forcing { coeffs, q0, elambda, ell } => {
            let p = weil::IntPolynomial::from_descending(coeffs)?;
            let v = weil::a2_forcing_check(&p, *q0, *elambda, *ell)?;
            let text = match &v {
                weil::ForcingVerdict::Forced { j, equal_in_z, all_half, charpoly } => format!(
                    "P_e = {charpoly}\nj = {j:?}\nequality in Z: {equal_in_z}\nall j = e/2: {all_half}\n"
                ),
                weil::ForcingVerdict::Refuted { charpoly, vectors_checked } => {
                    format!("P_e = {charpoly}\nno j-vector among {vectors_checked} satisfies the congruences\n")
                }
            };
            Output {
                command: "weil forcing",
                inputs: json!({ "coeffs": coeffs, "q0": q0, "elambda": elambda, "ell": ell }),
                results: to_value(&v),
                text,
            }
        }
        WeilCmd::Mazur { g, q, f, ell } => certificate_output(
            "weil mazur",
            json!({ "g": g, "q": q, "f": f, "ell": ell }),
            weil::mazur_contradiction(*g, *q, *f, *ell)?,
        ),
        WeilCmd::SixthRoot { g, p, ell } => certificate_output(
            "weil sixth-root",
            json!({ "g": g, "p": p, "ell": ell }),
            weil::sixth_root_analysis(*g, *p, *ell)?,
        ),
        WeilCmd::Cubic { q, ell } => certificate_output(
            "weil cubic",
            json!({ "q": q, "ell": ell }),
            weil::cubic_contradiction(*q, *ell)?,
        ),
        WeilCmd::Mq { ell, i } => {
            let v = weil::ExponentVector::new(*ell, i.iter().copied())?;
            let r = weil::mq_from_exponents(&v);
            Output {
                command: "weil mq",
                inputs: json!({ "ell": ell, "i": i }),
                results: to_value(&r),
                text: format!("m0 = {}\nm = {}\nv2(m) = v2(ell-1): {}\n", r.m0, r.m, r.two_adic_match),
            }
        }
        WeilCmd::Trace { q, kappa, mu6, n } => {
            let cfg = if *mu6 {
                let k: [u64; 6] = kappa.as_slice().try_into().map_err(|_| {
                    crate::Error::Domain(format!("--mu6 needs 6 multiplicities, got {}", kappa.len()))
                })?;
                weil::WeilConfig::mu6(*q, k)?
            } else {
                let k: [u64; 12] = kappa.as_slice().try_into().map_err(|_| {
                    crate::Error::Domain(format!("need 12 multiplicities, got {}", kappa.len()))
                })?;
                weil::WeilConfig::new(*q, k)?
            };
            let t = cfg.trace(*n);
            let stable = cfg.is_galois_stable();
            let rational = t.as_rational().map(|r| r.to_string());
            Output {
                command: "weil trace",
                inputs: json!({ "q": q, "kappa": kappa, "mu6": mu6, "n": n }),
                results: json!({ "trace": t, "text": t.to_string(), "rational": rational, "galois_stable": stable }),
                text: format!("a_{n} = {t}\nrational: {}\nGalois stable: {stable}\n", rational.is_some()),
            }
        }
        WeilCmd::Degree { t, p } => {
            let d = weil::min_poly_degree(*t, *p)?;
            Output {
                command: "weil degree",
                inputs: json!({ "t": t, "p": p }),
                results: json!({ "degree": d }),
                text: format!("[Q(ζ^{t}·√{p}) : Q] = {d}\n"),
            }
        }
    })
}
