use std::fs;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use mw_core::chow::{
    chow_ring, kahler_report, reduced_char_coefficients_via_volumes, ChowError, ChowRing,
};
use mw_core::groebner::GbConfig;
use mw_core::invariants::{
    characteristic_polynomial, ingleton_violation, is_log_concave, reduced_characteristic_polynomial,
    tutte_polynomial, InvariantError,
};
use mw_core::io::{
    bundled_corpus, parse_corpus, parse_matroid, ChowReport, CorpusEntry, IngletonJson, InfoReport,
    InvariantsReport, IoError, MatroidJson, ProfileRow, RealizationReport, VerdictJson,
};
use mw_core::matroid::automorphism_group;
use mw_core::realization::{
    realizability_table, realization_space_with, RealizationError, RealizationOptions, Verdict,
    PROFILE_CHARACTERISTICS,
};
use mw_core::{catalog, CatalogName, Exec, Matroid, MatroidError};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::{render, Cli, Command, Ell, Format, Source};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Precondition(String),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::UnknownName(_) => CliError::Parse(e.to_string()),
            MatroidError::SearchBudgetExceeded => CliError::Budget(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<RealizationError> for CliError {
    fn from(e: RealizationError) -> Self {
        match e {
            RealizationError::SearchBudgetExceeded { .. } | RealizationError::Undecided(_) => {
                CliError::Budget(e.to_string())
            }
            RealizationError::Algebra(_) => CliError::Parse(e.to_string()),
            RealizationError::Matroid(m) => m.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::SearchBudgetExceeded { .. } => CliError::Budget(e.to_string()),
            InvariantError::Matroid(m) => m.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ChowError> for CliError {
    fn from(e: ChowError) -> Self {
        match e {
            ChowError::Matroid(m) => m.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(s)
}

fn load(source: &Source) -> Result<Matroid, CliError> {
    match (&source.name, &source.file) {
        (Some(name), _) => Ok(catalog(CatalogName::from_str(name)?)?),
        (None, Some(path)) => Ok(parse_matroid(&read_input(path)?)?),
        (None, None) => Err(CliError::Parse("give --name or --file".into())),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn options(cli: &Cli, simplify: bool) -> RealizationOptions {
    let mut gb = GbConfig::default();
    if let Some(b) = cli.budget_gb {
        gb.max_pair_reductions = b;
    }
    RealizationOptions {
        simplify,
        gb,
        basis: None,
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Info { source, aut } => info(cli, &load(source)?, *aut),
        Command::Realization {
            source,
            characteristic,
            profile,
            no_simplify,
        } => {
            let m = load(source)?;
            if *profile {
                realization_profile(cli, &m, !no_simplify)
            } else {
                realization(cli, &m, *characteristic, !no_simplify)
            }
        }
        Command::RealizableQ { source, qmax } => realizable_q(cli, &load(source)?, *qmax),
        Command::Invariants { source } => invariants(cli, &load(source)?),
        Command::Chow { source, k, ell } => chow(cli, &load(source)?, *k, *ell),
        Command::Corpus {
            file,
            filter,
            action,
            sample,
        } => corpus(cli, file.as_deref(), filter, action, *sample),
    }
}

fn info(cli: &Cli, m: &Matroid, aut: bool) -> Result<Output, CliError> {
    let order = if aut {
        Some(automorphism_group(m)?.order())
    } else {
        None
    };
    let report = InfoReport::new(m, order);
    Ok(Output::ok(match cli.format {
        Format::Json => json(&report),
        Format::Text => render::info(&report),
    }))
}

fn realization(cli: &Cli, m: &Matroid, char: u64, simplify: bool) -> Result<Output, CliError> {
    let space = realization_space_with(m, char, &options(cli, simplify))?;
    let report = RealizationReport::new(m, &space);
    let text = match cli.format {
        Format::Json => json(&report),
        Format::Text => render::realization(&report),
    };
    let code = if space.verdict() == Verdict::Undecided { 3 } else { 0 };
    Ok(Output { text, code })
}

#[derive(Serialize)]
struct ProfileReport {
    matroid: MatroidJson,
    profile: Vec<ProfileRow>,
}

fn realization_profile(cli: &Cli, m: &Matroid, simplify: bool) -> Result<Output, CliError> {
    let opts = options(cli, simplify);
    let rows = Exec::default()
        .map(&PROFILE_CHARACTERISTICS, |&c| {
            realization_space_with(m, c, &opts).map(|s| ProfileRow {
                characteristic: c,
                verdict: s.verdict().into(),
                free_variables: s.free_variables().len(),
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let code = if rows.iter().any(|r| r.verdict == VerdictJson::Undecided) { 3 } else { 0 };
    let report = ProfileReport {
        matroid: MatroidJson::from_matroid(m),
        profile: rows,
    };
    let text = match cli.format {
        Format::Json => json(&report),
        Format::Text => render::profile(&report.profile),
    };
    Ok(Output { text, code })
}

#[derive(Serialize)]
pub struct QRow {
    pub q: u64,
    pub realizable: Option<bool>,
    pub error: Option<String>,
}

#[derive(Serialize)]
struct QReport {
    matroid: MatroidJson,
    qmax: u64,
    table: Vec<QRow>,
}

fn realizable_q(cli: &Cli, m: &Matroid, qmax: u64) -> Result<Output, CliError> {
    let table = realizability_table(m, qmax, cli.budget_search, Exec::default())?;
    let mut rows = Vec::new();
    for (q, r) in table {
        rows.push(match r {
            Ok(b) => QRow {
                q,
                realizable: Some(b),
                error: None,
            },
            Err(e @ RealizationError::SearchBudgetExceeded { .. }) => QRow {
                q,
                realizable: None,
                error: Some(e.to_string()),
            },
            Err(e) => return Err(e.into()),
        });
    }
    let code = if rows.iter().any(|r| r.realizable.is_none()) { 3 } else { 0 };
    let text = match cli.format {
        Format::Json => json(&QReport {
            matroid: MatroidJson::from_matroid(m),
            qmax,
            table: rows,
        }),
        Format::Text => render::q_table(&rows),
    };
    Ok(Output { text, code })
}

fn invariants(cli: &Cli, m: &Matroid) -> Result<Output, CliError> {
    let chi = characteristic_polynomial(m)?;
    let reduced = match reduced_characteristic_polynomial(m) {
        Ok(p) => Some(p.to_string()),
        Err(InvariantError::LoopPresent) => None,
        Err(e) => return Err(e.into()),
    };
    let witness = ingleton_violation(m)?;
    let report = InvariantsReport {
        matroid: MatroidJson::from_matroid(m),
        tutte: tutte_polynomial(m).to_string(),
        characteristic: chi.to_string(),
        reduced_characteristic: reduced,
        log_concave: is_log_concave(&chi),
        ingleton_checked: true,
        ingleton_violation: witness.as_ref().map(IngletonJson::from),
    };
    Ok(Output::ok(match cli.format {
        Format::Json => json(&report),
        Format::Text => render::invariants(&report),
    }))
}

fn chow(cli: &Cli, m: &Matroid, k: Option<usize>, ell: Ell) -> Result<Output, CliError> {
    let ring: ChowRing = chow_ring(m)?;
    let k = k.unwrap_or(if ring.top_degree() >= 2 { 1 } else { 0 });
    let (name, element) = match ell {
        Ell::Alpha => ("alpha", ring.alpha()),
        Ell::Beta => ("beta", ring.beta()),
    };
    let report = kahler_report(&ring, k, &element, Exec::default())?;
    let omega = reduced_char_coefficients_via_volumes(&ring)?;
    let chi_bar = reduced_characteristic_polynomial(m)?;
    let out = ChowReport::new(&ring, name, &report, &omega);
    Ok(Output::ok(match cli.format {
        Format::Json => json(&out),
        Format::Text => render::chow(&out, &chi_bar.to_string()),
    }))
}

enum Filter {
    Simple,
    Rank(usize),
}

fn parse_filter(s: &str) -> Result<Filter, CliError> {
    if s == "simple" {
        return Ok(Filter::Simple);
    }
    s.strip_prefix("rank=")
        .and_then(|k| k.parse().ok())
        .map(Filter::Rank)
        .ok_or_else(|| CliError::Parse(format!("unknown filter '{s}' (use simple or rank=K)")))
}

fn parse_action(s: &str) -> Result<u64, CliError> {
    if s == "realizable-char0" {
        return Ok(0);
    }
    s.strip_prefix("realizable-char=")
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| {
            CliError::Parse(format!(
                "unknown action '{s}' (use realizable-char0 or realizable-char=P)"
            ))
        })
}

#[derive(Serialize)]
pub struct EntryResult {
    pub id: String,
    /// `realizable`, `not_realizable`, `undecided` or `error`.
    pub verdict: String,
    pub error: Option<String>,
}

#[derive(Serialize, Default)]
pub struct Summary {
    pub entries: usize,
    pub realizable: usize,
    pub not_realizable: usize,
    pub undecided: usize,
    pub errors: usize,
}

#[derive(Serialize)]
struct CorpusReport {
    action: String,
    characteristic: u64,
    entries: Vec<EntryResult>,
    summary: Summary,
}

fn corpus(
    cli: &Cli,
    file: Option<&Path>,
    filters: &[String],
    action: &str,
    sample_size: Option<usize>,
) -> Result<Output, CliError> {
    let char = parse_action(action)?;
    let filters = filters.iter().map(|f| parse_filter(f)).collect::<Result<Vec<_>, _>>()?;
    let all = match file {
        Some(p) => parse_corpus(&read_input(p)?)?,
        None => bundled_corpus(),
    };
    let mut entries: Vec<CorpusEntry> = all
        .into_iter()
        .filter(|e| {
            filters.iter().all(|f| match f {
                Filter::Simple => e.matroid.is_simple(),
                Filter::Rank(k) => e.matroid.rank() == *k,
            })
        })
        .collect();
    if let Some(k) = sample_size.filter(|&k| k < entries.len()) {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let mut picked = sample(&mut rng, entries.len(), k).into_vec();
        picked.sort_unstable();
        entries = picked.into_iter().map(|i| entries[i].clone()).collect();
    }
    let opts = options(cli, true);
    let results: Vec<EntryResult> = Exec::default().map(&entries, |e| {
        let (verdict, error) = match realization_space_with(&e.matroid, char, &opts) {
            Ok(s) => match s.verdict() {
                Verdict::NonEmpty => ("realizable", None),
                Verdict::Empty => ("not_realizable", None),
                Verdict::Undecided => ("undecided", s.budget_error().map(|b| b.to_string())),
            },
            Err(err) => ("error", Some(err.to_string())),
        };
        EntryResult {
            id: e.id.clone(),
            verdict: verdict.to_string(),
            error,
        }
    });
    let mut summary = Summary {
        entries: results.len(),
        ..Summary::default()
    };
    for r in &results {
        match r.verdict.as_str() {
            "realizable" => summary.realizable += 1,
            "not_realizable" => summary.not_realizable += 1,
            "undecided" => summary.undecided += 1,
            _ => summary.errors += 1,
        }
    }
    let text = match cli.format {
        Format::Json => json(&CorpusReport {
            action: action.to_string(),
            characteristic: char,
            entries: results,
            summary,
        }),
        Format::Text => render::corpus(char, &results, &summary),
    };
    Ok(Output::ok(text))
}
