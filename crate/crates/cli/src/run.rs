use std::path::Path;
use std::process::ExitCode;

use excprime_core::audit::{
    audit_ec_prime, audit_mult_prime, ec_order_profile, ec_rows_csv, mult_order_profile,
    mult_rows_csv, profile_csv, EcAuditSummary, MultAuditSummary, Verdict, EC_CSV_HEADER,
    MULT_CSV_HEADER,
};
use excprime_core::legendre::LegendreCurve;
use excprime_core::modp::primes_up_to;
use excprime_core::multdep::{mult_exceptional_primes, tuple_order, MultParams, RationalTuple};
use excprime_core::{
    ec_exceptional_primes, BigPoly, EcPipelineParams, Error, FqCtx, ResultantMode,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::*;

pub const VERSION: &str = concat!("excprime ", env!("CARGO_PKG_VERSION"));

pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

/// Everything that determines a report's content. Output paths and the
/// worker count are left out so reports compare byte for byte.
#[derive(Serialize)]
struct RunConfig<'a> {
    command: &'static str,
    #[serde(flatten)]
    args: &'a Command,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: &'static str,
    config: RunConfig<'a>,
    #[serde(flatten)]
    body: T,
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(cmd: &Command, body: T) -> String {
    let env = Envelope {
        version: VERSION,
        config: RunConfig {
            command: cmd.name(),
            args: cmd,
        },
        body,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

fn worker_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Failure::Usage(format!("{WORKERS_ENV} must be a positive integer"))),
        Err(_) => match flag {
            Some(0) => Err(Failure::Usage("--workers must be positive".into())),
            other => Ok(other),
        },
    }
}

pub fn dispatch(cli: Cli) -> Outcome {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = worker_count(cli.workers)? {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::Internal(format!("worker pool: {e}")))?;
    let cmd = &cli.command;
    pool.install(|| match cmd {
        Command::Divpoly(a) => divpoly(a),
        Command::EcCert(a) => ec_cert(cmd, a),
        Command::EcAudit(a) => ec_audit(cmd, a),
        Command::MultCert(a) => mult_cert(cmd, a),
        Command::MultAudit(a) => mult_audit(cmd, a),
        Command::TupleOrder(a) => tuple_order_cmd(a),
        Command::Profile(a) => profile(a),
    })
}

fn divpoly(a: &DivpolyArgs) -> Outcome {
    let e = LegendreCurve::over_integers(a.t)?;
    if a.psi {
        let psi = e.division_psi(a.n as i64)?;
        println!("x-part: {}", BigPoly::new(psi.even));
        println!("y-part: {}", BigPoly::new(psi.odd));
    } else {
        println!("{}", e.f_poly(a.n)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn ec_params(c: &CurvePair, cap: u64) -> EcPipelineParams {
    let mut p = EcPipelineParams::new(c.t1, c.t2, c.c, c.l, cap);
    p.mode = match c.resultant_mode {
        ModeArg::Pairwise => ResultantMode::Pairwise,
        ModeArg::FullProduct => ResultantMode::FullProduct,
    };
    p.checked = c.checked;
    p
}

fn ec_cert(cmd: &Command, a: &EcCertArgs) -> Outcome {
    let params = ec_params(&a.curves, a.prime_cap);
    let report = ec_exceptional_primes(&params)?;
    #[derive(Serialize)]
    struct Body<T> {
        certificate: T,
    }
    emit(
        a.out.as_deref(),
        &json(
            cmd,
            Body {
                certificate: &report,
            },
        ),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn check_range(r: &PrimeRange) -> Result<Vec<u64>, Failure> {
    if r.depth != 1 && r.depth != 2 {
        return Err(Failure::Usage("--depth must be 1 or 2".into()));
    }
    if r.from > r.to {
        return Ok(Vec::new());
    }
    Ok(primes_up_to(r.to)
        .into_iter()
        .filter(|&p| p >= r.from)
        .collect())
}

#[derive(Serialize)]
struct PrimeEntry<S> {
    p: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<Verdict>,
}

#[derive(Serialize)]
struct AuditBody<'a, C, S> {
    certificate: &'a C,
    depth: usize,
    primes: Vec<PrimeEntry<S>>,
    failures: Vec<u64>,
    pass: bool,
}

fn finish<C: Serialize, S: Serialize>(
    cmd: &Command,
    certificate: &C,
    depth: usize,
    entries: Vec<PrimeEntry<S>>,
    rows_csv: String,
    out: Option<&Path>,
    csv: Option<&Path>,
) -> Outcome {
    let failures: Vec<u64> = entries
        .iter()
        .filter(|e| e.verdict == Some(Verdict::Fail))
        .map(|e| e.p)
        .collect();
    let pass = failures.is_empty();
    let body = AuditBody {
        certificate,
        depth,
        primes: entries,
        failures,
        pass,
    };
    emit(out, &json(cmd, body))?;
    if let Some(path) = csv {
        emit(Some(path), &rows_csv)?;
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn ec_audit(cmd: &Command, a: &EcAuditArgs) -> Outcome {
    let primes = check_range(&a.range)?;
    let params = ec_params(&a.curves, a.prime_cap.unwrap_or(a.range.to));
    let report = ec_exceptional_primes(&params)?;
    let results = primes
        .par_iter()
        .map(|&p| {
            if p == 2 || params.is_bad(p) {
                return Ok((p, None));
            }
            audit_ec_prime(p, &params, a.range.depth).map(|r| (p, Some(r)))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut csv = String::from(EC_CSV_HEADER);
    csv.push('\n');
    let mut entries: Vec<PrimeEntry<EcAuditSummary>> = Vec::new();
    for (p, r) in results {
        match r {
            None => entries.push(PrimeEntry {
                p,
                status: "skipped-bad",
                summary: None,
                verdict: None,
            }),
            Some(r) => {
                csv.push_str(ec_rows_csv(&r.rows).split_once('\n').unwrap().1);
                let verdict = r.summary.verdict(&report);
                entries.push(PrimeEntry {
                    p,
                    status: "audited",
                    summary: Some(r.summary),
                    verdict: Some(verdict),
                });
            }
        }
    }
    finish(
        cmd,
        &report,
        a.range.depth,
        entries,
        csv,
        a.out.as_deref(),
        a.csv.as_deref(),
    )
}

fn parse_functions(f: &[String]) -> Result<RationalTuple, Failure> {
    let specs: Vec<&str> = f.iter().map(String::as_str).collect();
    Ok(RationalTuple::parse(&specs)?)
}

fn mult_cert(cmd: &Command, a: &MultCertArgs) -> Outcome {
    let fs = parse_functions(&a.functions.f)?;
    let mut params = MultParams::new(a.l, a.prime_cap);
    params.checked = a.checked;
    let report = mult_exceptional_primes(&fs, &params)?;
    #[derive(Serialize)]
    struct Body<T> {
        certificate: T,
    }
    emit(
        a.out.as_deref(),
        &json(
            cmd,
            Body {
                certificate: &report,
            },
        ),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn mult_audit(cmd: &Command, a: &MultAuditArgs) -> Outcome {
    let primes = check_range(&a.range)?;
    if a.b >= a.l {
        return Err(Failure::Usage("need B < L".into()));
    }
    let fs = parse_functions(&a.functions.f)?;
    let mut params = MultParams::new(a.l, a.prime_cap.unwrap_or(a.range.to));
    params.checked = a.checked;
    let report = mult_exceptional_primes(&fs, &params)?;
    let results = primes
        .par_iter()
        .map(|&p| {
            if p == 2 || report.degeneracy_primes.contains(&p) {
                return Ok((p, None));
            }
            audit_mult_prime(p, &fs, a.b, a.l, a.range.depth).map(|r| (p, Some(r)))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut csv = String::from(MULT_CSV_HEADER);
    csv.push('\n');
    let mut entries: Vec<PrimeEntry<MultAuditSummary>> = Vec::new();
    for (p, r) in results {
        match r {
            None => entries.push(PrimeEntry {
                p,
                status: "skipped-degenerate",
                summary: None,
                verdict: None,
            }),
            Some(r) => {
                csv.push_str(mult_rows_csv(&r.rows).split_once('\n').unwrap().1);
                let verdict = r.summary.verdict(&report);
                entries.push(PrimeEntry {
                    p,
                    status: "audited",
                    summary: Some(r.summary),
                    verdict: Some(verdict),
                });
            }
        }
    }
    finish(
        cmd,
        &report,
        a.range.depth,
        entries,
        csv,
        a.out.as_deref(),
        a.csv.as_deref(),
    )
}

fn tuple_order_cmd(a: &TupleOrderArgs) -> Outcome {
    let ctx = FqCtx::new(a.p, a.k)?;
    if let Some(v) = a.values.iter().find(|&&v| v >= ctx.size()) {
        return Err(Failure::Usage(format!(
            "{v} is not an index into F_{}",
            ctx.size()
        )));
    }
    let vals: Vec<_> = a.values.iter().map(|&v| ctx.from_index(v)).collect();
    let r = tuple_order(&ctx, &vals, a.radius_cap)?;
    match &r.witness {
        Some(w) if r.complete => println!("order {}, witness {w}", r.order),
        _ => println!(
            "order >= {} (no relation with sup-norm <= {})",
            r.order, a.radius_cap
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn profile(a: &ProfileArgs) -> Outcome {
    let rows = match a.kind {
        ProfileKind::Ec => {
            let (Some(t1), Some(t2)) = (a.t1, a.t2) else {
                return Err(Failure::Usage("--kind ec needs --t1 and --t2".into()));
            };
            ec_order_profile(t1, t2, a.from, a.to)?
        }
        ProfileKind::Mult => {
            if a.f.is_empty() {
                return Err(Failure::Usage("--kind mult needs at least one --f".into()));
            }
            mult_order_profile(&parse_functions(&a.f)?, a.from, a.to)?
        }
    };
    emit(a.csv.as_deref(), &profile_csv(&rows))?;
    Ok(ExitCode::SUCCESS)
}
