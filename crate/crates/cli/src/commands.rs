//! The subcommands, generic over the modular system.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};
use vdecomp_core::{
    enumerate_lambda, enumerate_lambda_plus, enumerate_ssyt, enumerate_std, Engine, Error, ModularSystem,
    Multipartition, MurphyTransition, ProductContext, CONVENTION_TAG,
};

use crate::cache::{cache_key, Cache};
use crate::config::{RunConfig, SystemConfig};
use crate::error::CliError;
use crate::output::{matrix_json, Artifact, Cell, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Enumerate,
    Gram,
    Decomp,
    Vdecomp,
    VerifyProduct,
    SchurCheck,
}

/// What a command produced and whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub artifact: Artifact,
    pub pass: bool,
}

impl Outcome {
    fn ok(artifact: Artifact) -> Self {
        Outcome { artifact, pass: true }
    }
}

pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cmd == Command::Enumerate {
        return Ok(Outcome::ok(enumerate(cfg)));
    }
    match &cfg.system {
        SystemConfig::PLocal(ms) => execute_with(cmd, cfg, ms.clone()),
        SystemConfig::XAdic(ms) => execute_with(cmd, cfg, ms.clone()),
    }
}

fn execute_with<M: ModularSystem>(cmd: Command, cfg: &RunConfig, ms: M) -> Result<Outcome, CliError> {
    let engine = build_engine(cfg, ms)?;
    match cmd {
        Command::Enumerate => Ok(Outcome::ok(enumerate(cfg))),
        Command::Gram => gram(cfg, &engine).map(Outcome::ok),
        Command::Decomp => decomp(&engine).map(Outcome::ok),
        Command::Vdecomp => vdecomp(&engine).map(Outcome::ok),
        Command::VerifyProduct => verify_product(cfg, engine),
        Command::SchurCheck => schur_check(&engine),
    }
}

/// Builds the engine, taking the Murphy transition from the cache when one is configured.
pub fn build_engine<M: ModularSystem>(cfg: &RunConfig, ms: M) -> Result<Arc<Engine<M>>, CliError> {
    let key = cache_key(cfg.n, cfg.r, CONVENTION_TAG, &ms.fingerprint());
    let engine = Engine::new(cfg.n, &cfg.bounds, ms)?;
    if let Some(dir) = &cfg.cache_dir {
        let cache = Cache::new(dir);
        let cached = match cache.get(&key)? {
            Some(text) => {
                let value: Value = serde_json::from_str(&text)
                    .map_err(|e| CliError::Integrity(format!("{}: {e}", cache.path_for(&key).display())))?;
                MurphyTransition::from_payload(&value)
                    .map_err(|e| CliError::Integrity(format!("{}: {e}", cache.path_for(&key).display())))?
            }
            None => None,
        };
        match cached {
            Some(t) => engine.install_transition(t)?,
            None => {
                let payload = engine.murphy()?.transition().to_payload().to_string();
                cache.put(&key, &payload)?;
            }
        }
    }
    Ok(Arc::new(engine))
}

fn header(cfg_n: usize, bounds: &[usize]) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("n".into(), json!(cfg_n));
    m.insert("r".into(), json!(bounds.len()));
    m.insert("bounds".into(), json!(bounds));
    m
}

fn engine_header<M: ModularSystem>(e: &Engine<M>) -> serde_json::Map<String, Value> {
    let mut m = header(e.n(), e.bounds());
    m.insert("system".into(), e.modular_system().describe());
    m
}

fn shape_labels(shapes: &[Multipartition]) -> Vec<String> {
    shapes.iter().map(ToString::to_string).collect()
}

fn enumerate(cfg: &RunConfig) -> Artifact {
    let lambda = enumerate_lambda(cfg.n, &cfg.bounds);
    let plus = enumerate_lambda_plus(cfg.n, &cfg.bounds);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for l in &plus {
        let std = enumerate_std(l).len();
        let t0: Vec<usize> = lambda.iter().map(|mu| enumerate_ssyt(l, mu).len()).collect();
        let mut row = vec![Cell::Shape(l.to_string()), Cell::Int(std as u64)];
        row.extend(t0.iter().map(|&c| Cell::Int(c as u64)));
        rows.push(row);
        entries.push(json!({ "shape": l.to_string(), "standard": std, "semistandard": t0 }));
    }
    let mut json = header(cfg.n, &cfg.bounds);
    json.insert(
        "counts".into(),
        json!({ "compositions": lambda.len(), "multipartitions": plus.len() }),
    );
    json.insert("compositions".into(), json!(lambda.iter().map(ToString::to_string).collect::<Vec<_>>()));
    json.insert("multipartitions".into(), Value::Array(entries));
    let mut head = vec!["lambda".to_string(), "std".to_string()];
    head.extend(lambda.iter().map(ToString::to_string));
    Artifact {
        title: format!("Multipartitions and tableaux, n = {}", cfg.n),
        json: Value::Object(json),
        table: Table { header: head, rows },
    }
}

fn gram<M: ModularSystem>(cfg: &RunConfig, e: &Engine<M>) -> Result<Artifact, CliError> {
    let shapes: Vec<Multipartition> = match &cfg.lambda {
        Some(l) => vec![e.normalize_partition(l)?],
        None => e.lambda_plus().to_vec(),
    };
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for l in &shapes {
        let weyl = e.weyl_gram(l)?;
        let prof = e.jantzen_profile(l)?;
        let mut blocks = Vec::new();
        for (b, (_, p)) in weyl.blocks.iter().zip(&prof.blocks) {
            blocks.push(json!({
                "weight": b.weight.to_string(),
                "tableaux": b.tableaux.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "gram": matrix_json(&b.gram),
                "profile": p,
            }));
            rows.push(vec![
                Cell::Shape(l.to_string()),
                Cell::Shape(b.weight.to_string()),
                Cell::Int(b.tableaux.len() as u64),
                Cell::Text(p.to_string()),
            ]);
        }
        let specht = e.specht_gram(l)?;
        out.push(json!({
            "lambda": l.to_string(),
            "cut": prof.cut,
            "k_fiber_singular": prof.k_fiber_singular,
            "blocks": blocks,
            "specht_gram": matrix_json(&specht),
        }));
    }
    let mut json = engine_header(e);
    json.insert("grams".into(), Value::Array(out));
    Ok(Artifact {
        title: "Weyl module Gram blocks".into(),
        json: Value::Object(json),
        table: Table {
            header: vec!["lambda".into(), "weight".into(), "dim".into(), "valuations".into()],
            rows,
        },
    })
}

fn decomp<M: ModularSystem>(e: &Engine<M>) -> Result<Artifact, CliError> {
    let shapes = e.lambda_plus();
    let mut matrix = Vec::new();
    for l in shapes {
        let row: BTreeMap<Multipartition, usize> = e.decompose_character(&e.char_weyl(l)?)?;
        matrix.push(shapes.iter().map(|m| row.get(m).copied().unwrap_or(0)).collect::<Vec<_>>());
    }
    let labels = shape_labels(shapes);
    let rows = labels
        .iter()
        .zip(&matrix)
        .map(|(l, row)| {
            let mut cells = vec![Cell::Shape(l.clone())];
            cells.extend(row.iter().map(|&d| Cell::Int(d as u64)));
            cells
        })
        .collect();
    let mut json = engine_header(e);
    json.insert("labels".into(), json!(labels));
    json.insert("matrix".into(), json!(matrix));
    Ok(Artifact {
        title: "Decomposition matrix".into(),
        json: Value::Object(json),
        table: Table { header: std::iter::once("lambda".to_string()).chain(labels.iter().cloned()).collect(), rows },
    })
}

fn vdecomp<M: ModularSystem>(e: &Engine<M>) -> Result<Artifact, CliError> {
    let matrix = e.v_decomp_matrix()?;
    let labels = shape_labels(e.lambda_plus());
    let rows = labels
        .iter()
        .zip(&matrix)
        .map(|(l, row)| {
            let mut cells = vec![Cell::Shape(l.clone())];
            cells.extend(row.iter().cloned().map(Cell::Poly));
            cells
        })
        .collect();
    let mut json = engine_header(e);
    json.insert("labels".into(), json!(labels));
    json.insert("matrix".into(), serde_json::to_value(&matrix).expect("serialisable"));
    Ok(Artifact {
        title: "v-decomposition matrix".into(),
        json: Value::Object(json),
        table: Table { header: std::iter::once("lambda".to_string()).chain(labels.iter().cloned()).collect(), rows },
    })
}

fn verify_product<M: ModularSystem>(cfg: &RunConfig, e: Arc<Engine<M>>) -> Result<Outcome, CliError> {
    let split = cfg
        .split
        .clone()
        .ok_or_else(|| CliError::Usage("verify-product needs --p-split".into()))?;
    let report = ProductContext::new(e, split)?.verify()?;
    let mut rows: Vec<Vec<Cell>> = report
        .records
        .iter()
        .map(|r| {
            vec![
                Cell::Text(serde_json::to_value(r.side).expect("serialisable").as_str().unwrap_or_default().to_string()),
                Cell::Shape(r.lambda.clone()),
                Cell::Shape(r.mu.clone()),
                Cell::Poly(r.direct.clone()),
                Cell::Poly(r.product.clone()),
                Cell::Bool(r.pass),
            ]
        })
        .collect();
    for t in &report.tensor {
        rows.push(vec![
            Cell::Text("tensor".into()),
            Cell::Shape(t.lambda.clone()),
            Cell::Text(String::new()),
            Cell::Text(String::new()),
            Cell::Text(String::new()),
            Cell::Bool(t.pass),
        ]);
    }
    Ok(Outcome {
        pass: report.all_pass(),
        artifact: Artifact {
            title: format!("Product formula check, split {}", report.split),
            json: serde_json::to_value(&report).expect("serialisable"),
            table: Table {
                header: ["side", "lambda", "mu", "direct", "product", "pass"].map(String::from).to_vec(),
                rows,
            },
        },
    })
}

/// Compares the Specht side with the `ω`-weight space of the Weyl side, and
/// checks the transferred v-decomposition numbers against the Specht layers.
fn schur_check<M: ModularSystem>(e: &Engine<M>) -> Result<Outcome, CliError> {
    if e.omega().is_none() {
        return Err(CliError::Usage(format!(
            "the bounds {:?} exclude the weight (1^n), so there is nothing to compare",
            e.bounds()
        )));
    }
    let mut records = Vec::new();
    let mut rows = Vec::new();
    let mut all = true;
    let simples: Vec<&Multipartition> = e
        .lambda_plus()
        .iter()
        .filter_map(|m| match e.is_d_nonzero(m) {
            Ok(true) => Some(Ok(m)),
            Ok(false) => None,
            Err(err) => Some(Err(err)),
        })
        .collect::<Result<_, Error>>()?;
    for l in e.lambda_plus() {
        let gram_match = e.omega_block_matches_specht(l)?.unwrap_or(false);
        let (profile, profile_error) = match e.specht_jantzen_valuations(l) {
            Ok(p) => (Some(p), None),
            Err(Error::Inconsistency(msg)) => (None, Some(msg)),
            Err(err) => return Err(err.into()),
        };
        let mut transfer = Vec::new();
        let mut transfer_error = None;
        for m in &simples {
            match e.v_decomp_hecke(l, m) {
                Ok(d) => transfer.push(json!({ "mu": m.to_string(), "v_decomp": d })),
                Err(Error::Inconsistency(msg)) => {
                    transfer_error = Some(msg);
                    break;
                }
                Err(err) => return Err(err.into()),
            }
        }
        let pass = gram_match && profile_error.is_none() && transfer_error.is_none();
        all &= pass;
        rows.push(vec![
            Cell::Shape(l.to_string()),
            Cell::Bool(gram_match),
            Cell::Text(profile.as_ref().map(ToString::to_string).unwrap_or_default()),
            Cell::Bool(pass),
        ]);
        records.push(json!({
            "lambda": l.to_string(),
            "omega_block_matches_specht": gram_match,
            "specht_valuations": profile,
            "profile_error": profile_error,
            "hecke_v_decomp": transfer,
            "transfer_error": transfer_error,
            "pass": pass,
        }));
    }
    let mut json = engine_header(e);
    json.insert(
        "simple_hecke_labels".into(),
        json!(simples.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    json.insert("records".into(), Value::Array(records));
    json.insert("pass".into(), json!(all));
    Ok(Outcome {
        pass: all,
        artifact: Artifact {
            title: "Specht and Weyl comparison".into(),
            json: Value::Object(json),
            table: Table {
                header: ["lambda", "gram", "valuations", "pass"].map(String::from).to_vec(),
                rows,
            },
        },
    })
}
