use std::fs;
use std::io::{self, BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context as _};
use firedss::dss::{self, Alert, Assessment};
use firedss::ingest::{self, Quantity, WeatherObservation};
use firedss::rdf::ntriples;
use firedss::rules::{self, forward_chain, parse_rules, Indicator, RuleSet};
use firedss::sparql::{evaluate, parse_query, ResultTable};
use firedss::Graph;

use crate::output::{self, num};
use crate::{svg, Format};

const DEFAULT_RULES: &str = "rules/fwi.rules";

pub struct Context {
    rules: Option<PathBuf>,
    format: Option<Format>,
}

impl Context {
    pub fn new(rules: Option<PathBuf>, format: Option<Format>) -> Self {
        Context { rules, format }
    }

    fn format(&self, command: &str, default: Format, allowed: &[Format]) -> anyhow::Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!("`{command}` does not support --format {f:?}");
        }
        Ok(f)
    }

    fn rules(&self) -> anyhow::Result<RuleSet> {
        let path = self.rules.clone().or_else(|| {
            let p = PathBuf::from(DEFAULT_RULES);
            p.exists().then_some(p)
        });
        match path {
            Some(p) => {
                let text = fs::read_to_string(&p).with_context(|| format!("reading rules {}", p.display()))?;
                let rs = parse_rules(&text).with_context(|| format!("in {}", p.display()))?;
                log::info!("loaded {} rules from {}", rs.len(), p.display());
                Ok(rs)
            }
            None => {
                log::info!("using the built-in rule set");
                Ok(rules::fwi_rules())
            }
        }
    }
}

fn check_input(path: &Path) -> anyhow::Result<()> {
    if path.as_os_str() != "-" && !path.is_file() {
        bail!("{}: no such file", path.display());
    }
    Ok(())
}

fn read_rows(path: &Path) -> anyhow::Result<Vec<WeatherObservation>> {
    check_input(path)?;
    let rows = ingest::read_csv(&path.to_string_lossy()).with_context(|| format!("{}", path.display()))?;
    log::info!("read {} rows from {}", rows.len(), path.display());
    Ok(rows)
}

enum Store {
    Triples(Graph),
    Dataset(Graph, Vec<WeatherObservation>),
}

impl Store {
    fn graph(&self) -> &Graph {
        match self {
            Store::Triples(g) | Store::Dataset(g, _) => g,
        }
    }
}

fn load_store(path: &Path) -> anyhow::Result<Store> {
    check_input(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("nt") => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let g = ntriples::import(&text).with_context(|| format!("{}", path.display()))?;
            log::info!("loaded {} triples", g.len());
            Ok(Store::Triples(g))
        }
        Some("csv") => {
            let rows = read_rows(path)?;
            Ok(Store::Dataset(ingest::ingest(&rows), rows))
        }
        _ => bail!("{}: expected a .nt or .csv store", path.display()),
    }
}

pub fn ingest(ctx: &Context, input: &Path, out: &mut impl Write) -> anyhow::Result<bool> {
    ctx.format("ingest", Format::Ntriples, &[Format::Ntriples])?;
    let rows = read_rows(input)?;
    let g = ingest::ingest(&rows);
    log::info!("{} triples", g.len());
    out.write_all(ntriples::export(&g).as_bytes())?;
    Ok(true)
}

fn assessment_row(a: &Assessment) -> Vec<String> {
    let r = &a.record;
    vec![
        a.sensor.clone(),
        num(r.ffmc),
        num(r.dmc),
        num(r.dc),
        format!("{:.2}", r.isi),
        format!("{:.2}", r.bui),
        format!("{:.2}", r.fwi),
        num(a.rain),
        num(a.wind),
        a.verdict.to_string(),
        a.justification.join(" "),
    ]
}

const ASSESSMENT_HEADER: [&str; 11] = [
    "sensor", "ffmc", "dmc", "dc", "isi", "bui", "fwi", "rain", "wind", "verdict", "justification",
];

const ALERT_HEADER: [&str; 7] = ["sensor", "timestamp", "index", "value", "threshold", "verdict", "message"];

fn alert_row(a: &Alert) -> Vec<String> {
    vec![
        a.sensor.clone(),
        a.timestamp.clone(),
        a.index.clone(),
        format!("{:.2}", a.value),
        num(a.threshold),
        a.verdict.to_string(),
        a.message.clone(),
    ]
}

fn alerts_jsonl(alerts: &[Alert]) -> String {
    alerts.iter().map(|a| a.to_json_line() + "\n").collect()
}

pub fn assess(
    ctx: &Context,
    input: &Path,
    alerts_path: Option<&Path>,
    alerts_only: bool,
    out: &mut impl Write,
) -> anyhow::Result<bool> {
    let format = ctx.format("assess", Format::Jsonl, &[Format::Jsonl, Format::Table, Format::Csv])?;
    let rows = read_rows(input)?;
    let assessments = dss::assess_rows(&rows).map_err(|(n, e)| anyhow!("{}: row {}: {e}", input.display(), n + 1))?;
    let alerts = dss::alerts_for(&assessments);
    log::info!("{} assessments, {} alerts", assessments.len(), alerts.len());

    if let Some(p) = alerts_path {
        fs::write(p, alerts_jsonl(&alerts)).with_context(|| format!("writing {}", p.display()))?;
    }

    let text = if alerts_only {
        let rows: Vec<Vec<String>> = alerts.iter().map(alert_row).collect();
        match format {
            Format::Jsonl => alerts_jsonl(&alerts),
            Format::Table => output::table(&ALERT_HEADER, &rows),
            _ => output::csv(&ALERT_HEADER, &rows)?,
        }
    } else {
        let rows: Vec<Vec<String>> = assessments.iter().map(assessment_row).collect();
        match format {
            Format::Jsonl => assessments
                .iter()
                .map(|a| serde_json::to_string(a).map(|s| s + "\n"))
                .collect::<Result<String, _>>()?,
            Format::Table => output::table(&ASSESSMENT_HEADER, &rows),
            _ => output::csv(&ASSESSMENT_HEADER, &rows)?,
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(true)
}

#[derive(serde::Serialize)]
struct Classification {
    index: String,
    value: f64,
    band: String,
}

pub fn classify(ctx: &Context, index: &str, value: f64, out: &mut impl Write) -> anyhow::Result<bool> {
    let format = ctx.format("classify", Format::Table, &[Format::Table, Format::Csv, Format::Jsonl])?;
    let ind = Indicator::from_name(index)
        .ok_or_else(|| anyhow!("unknown index `{index}` (expected ffmc, dmc, bui, isi, fwi, rain or wind)"))?;
    if value.is_nan() || value < 0.0 {
        bail!("{ind} value {value} is out of range");
    }
    let band = match ind {
        Indicator::Rain => rules::rain_override(value).map_or("none", |_| rules::FireStop::LABEL),
        Indicator::Wind => rules::wind_risk(value).map_or("none", |_| rules::WindRisk::LABEL),
        _ => ind.bands().expect("banded index").classify(value)?.label,
    };
    let c = Classification {
        index: ind.to_string(),
        value,
        band: band.to_string(),
    };
    let text = match format {
        Format::Table => format!("{band}\n"),
        Format::Jsonl => serde_json::to_string(&c)? + "\n",
        _ => output::csv(&["index", "value", "band"], &[vec![c.index, num(value), c.band]])?,
    };
    out.write_all(text.as_bytes())?;
    Ok(true)
}

pub fn infer(ctx: &Context, input: &Path, out: &mut impl Write) -> anyhow::Result<bool> {
    let format = ctx.format("infer", Format::Ntriples, &[Format::Ntriples, Format::Jsonl, Format::Table])?;
    let rules = ctx.rules()?;
    let g = match load_store(input)? {
        Store::Triples(g) => g,
        Store::Dataset(mut g, rows) => {
            // Index values per sensor, in the shape the rule bodies read.
            for (i, obs) in rows.iter().enumerate() {
                let id = ingest::SensorId::new(i as u64 + 1).expect("positive");
                let rec = dss::record_of(obs).with_context(|| format!("row {}", i + 2))?;
                g.extend(dss::indicator_facts(&id.iri(), &rec, &dss::weather_of(obs), &rules));
            }
            g
        }
    };
    let facts = forward_chain(&g, &rules);
    log::info!("{} facts inferred from {} triples", facts.len(), g.len());
    let text = match format {
        Format::Ntriples => ntriples::export(&facts.iter().map(|f| f.triple.clone()).collect()),
        Format::Jsonl => facts
            .iter()
            .map(|f| serde_json::to_string(f).map(|s| s + "\n"))
            .collect::<Result<String, _>>()?,
        _ => {
            let rows: Vec<Vec<String>> = facts
                .iter()
                .map(|f| {
                    vec![
                        f.subject().lexical().to_string(),
                        f.property().lexical().to_string(),
                        f.label().lexical().to_string(),
                        (f.rule + 1).to_string(),
                    ]
                })
                .collect();
            output::table(&["subject", "property", "label", "rule"], &rows)
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(true)
}

fn render(format: Format, t: &ResultTable) -> String {
    match format {
        Format::Csv => t.render_csv(),
        _ => t.render_table(),
    }
}

pub fn query(
    ctx: &Context,
    store: &Path,
    query: Option<&Path>,
    view: Option<&str>,
    out: &mut impl Write,
) -> anyhow::Result<bool> {
    let format = ctx.format("query", Format::Table, &[Format::Table, Format::Csv])?;
    let view = view
        .map(|v| Quantity::from_name(v).ok_or_else(|| anyhow!("unknown quantity `{v}`")))
        .transpose()?;
    if let Some(q) = query {
        check_input(q)?;
    }
    let store = load_store(store)?;
    let g = match view {
        Some(q) => ingest::quantity_view(store.graph(), q),
        None => store.graph().clone(),
    };

    if let Some(path) = query {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let q = parse_query(&text).with_context(|| format!("{}", path.display()))?;
        out.write_all(render(format, &evaluate(&q, &g)).as_bytes())?;
        return Ok(true);
    }

    // One query per blank-line-terminated block.
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut ok = true;
    let mut block = String::new();
    let mut lines = stdin.lock().lines();
    loop {
        if interactive && block.is_empty() {
            eprint!("query> ");
        }
        let line = lines.next().transpose()?;
        let end = line.as_deref().map_or(true, |l| l.trim().is_empty());
        if let Some(l) = &line {
            if !end {
                block.push_str(l);
                block.push('\n');
            }
        }
        if end && !block.trim().is_empty() {
            match parse_query(&block) {
                Ok(q) => {
                    out.write_all(render(format, &evaluate(&q, &g)).as_bytes())?;
                    out.write_all(b"\n")?;
                    out.flush()?;
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ok = false;
                }
            }
            block.clear();
        }
        if line.is_none() {
            break;
        }
    }
    Ok(ok)
}

pub fn plot(ctx: &Context, input: &Path, days: usize, svg_path: Option<&Path>, out: &mut impl Write) -> anyhow::Result<bool> {
    ctx.format("plot", Format::Csv, &[Format::Csv])?;
    let rows = read_rows(input)?;
    let picked = ingest::largest_ffmc_changes(&rows, days)
        .ok_or_else(|| anyhow!("--days {days} exceeds the {} rows in {}", rows.len(), input.display()))?;

    // Values are copied from the source text unchanged.
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(input)
        .with_context(|| format!("{}", input.display()))?;
    let header = rdr.headers()?.clone();
    let col = |name: &str| header.iter().position(|h| h == name).ok_or_else(|| anyhow!("missing column {name}"));
    let (f, d, c) = (col("FFMC")?, col("DMC")?, col("DC")?);
    let raw: Vec<csv::StringRecord> = rdr.records().collect::<Result<_, _>>()?;

    let table: Vec<Vec<String>> = picked
        .iter()
        .map(|&i| vec![(i + 1).to_string(), raw[i][f].to_string(), raw[i][d].to_string(), raw[i][c].to_string()])
        .collect();
    out.write_all(output::csv(&["index", "ffmc", "dmc", "dc"], &table)?.as_bytes())?;

    if let Some(p) = svg_path {
        let series = |get: fn(&WeatherObservation) -> f64| picked.iter().map(|&i| get(&rows[i])).collect::<Vec<_>>();
        let chart = svg::line_chart(
            &format!("Fuel moisture codes, {days} days with the largest FFMC change"),
            &[("FFMC", series(|r| r.ffmc)), ("DMC", series(|r| r.dmc)), ("DC", series(|r| r.dc))],
        );
        fs::write(p, chart).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(true)
}
