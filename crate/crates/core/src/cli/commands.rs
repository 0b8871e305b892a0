use serde::{Deserialize, Serialize};

use super::artifacts::{self as art, CsvText, OutputDir};
use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::featmap::default_data_map;
use crate::metrics::{evaluate, MetricsReport};
use crate::prep::{load_csv, stratified_split, Dataset, EncodingSchema, Preprocessor, RawTable};
use crate::qkernel::kernel_matrix_with_ids;
use crate::spsa::{SeedsUsed, SpsaConfig, TrainingRun};
use crate::vqc::{Label, Readout, Vqc, VqcConfig};

/// Row assignment written by `prep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitManifest {
    pub seed: u64,
    pub test_fraction: f64,
    pub n_rows: usize,
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
    pub train_ids: Vec<String>,
    pub test_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingSummary {
    pub readout: Readout,
    pub spsa: SpsaConfig,
    pub seeds_used: SeedsUsed,
    pub iterations: usize,
    pub evaluations: usize,
    pub final_loss: Option<f64>,
}

/// Everything needed to score new rows: the fitted preprocessing, the
/// classifier configuration used for inference and the trained parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArtifact {
    pub preprocessor: Preprocessor,
    pub classifier: VqcConfig,
    pub params: Vec<f64>,
    pub training: TrainingSummary,
}

impl ModelArtifact {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::json("<model>", e))
    }

    /// Scores already-encoded feature rows (before PCA).
    pub fn predict_rows(&self, rows: &[Vec<f64>]) -> Result<Vec<crate::vqc::Prediction>> {
        let x = self.preprocessor.transform_rows(rows)?;
        Vqc::new(self.classifier.clone())?.predict_batch(&x, &self.params)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub artifacts: Vec<String>,
    pub n_train: usize,
    pub n_test: usize,
    pub final_loss: Option<f64>,
    pub mean_loss_first_window: Option<f64>,
    pub mean_loss_last_window: Option<f64>,
    pub loss_window: usize,
    pub test_accuracy: f64,
    pub test_auroc: Option<f64>,
}

/// Train and test rows after preprocessing.
pub struct PreparedData {
    pub preprocessor: Preprocessor,
    pub manifest: SplitManifest,
    pub train: Dataset,
    pub test: Dataset,
    /// Principal-component coordinates before min-max scaling.
    pub train_pcs: Vec<Vec<f64>>,
    pub test_pcs: Vec<Vec<f64>>,
}

fn load_table(cfg: &RunConfig) -> Result<RawTable> {
    let table = load_csv(
        cfg.data_path(),
        &cfg.data.label_column,
        &cfg.data.positive_label,
    )?;
    match &cfg.data.id_column {
        Some(c) => table.with_id_column(c),
        None => Ok(table),
    }
}

pub fn run_prep(cfg: &RunConfig, out: &OutputDir) -> Result<SplitManifest> {
    out.claim(&[art::PREP, art::SPLIT])?;
    let table = load_table(cfg)?;
    let schema = EncodingSchema::fit(&table)?;
    let full = schema.transform(&table)?;
    let split = stratified_split(&full, cfg.prep.test_fraction, cfg.prep.split_seed)?;
    let pre = Preprocessor::fit(schema, &split.train, cfg.prep.pca_k)?;
    let manifest = SplitManifest {
        seed: cfg.prep.split_seed,
        test_fraction: cfg.prep.test_fraction,
        n_rows: full.len(),
        train_ids: split.train.ids.clone(),
        test_ids: split.test.ids.clone(),
        train_indices: split.train_indices,
        test_indices: split.test_indices,
    };
    out.write_json(art::PREP, &pre)?;
    out.write_json(art::SPLIT, &manifest)?;
    Ok(manifest)
}

/// Reloads the input CSV and applies the stored split and preprocessing.
pub fn load_prepared(cfg: &RunConfig, out: &OutputDir) -> Result<PreparedData> {
    let preprocessor: Preprocessor = out.read_json(art::PREP)?;
    let manifest: SplitManifest = out.read_json(art::SPLIT)?;
    let full = preprocessor.schema.transform(&load_table(cfg)?)?;
    if full.len() != manifest.n_rows {
        return Err(Error::Data(format!(
            "{} has {} rows but the split was made on {}",
            cfg.data_path().display(),
            full.len(),
            manifest.n_rows
        )));
    }
    let train = full.subset(&manifest.train_indices);
    let test = full.subset(&manifest.test_indices);
    if train.ids != manifest.train_ids || test.ids != manifest.test_ids {
        return Err(Error::Data(format!(
            "sample ids in {} no longer match the stored split",
            cfg.data_path().display()
        )));
    }
    Ok(PreparedData {
        train_pcs: preprocessor.project(&train.features)?,
        test_pcs: preprocessor.project(&test.features)?,
        train: preprocessor.transform(&train)?,
        test: preprocessor.transform(&test)?,
        preprocessor,
        manifest,
    })
}

pub fn run_train(cfg: &RunConfig, out: &OutputDir) -> Result<TrainingRun> {
    out.claim(&[art::MODEL, art::LOSS_HISTORY])?;
    let data = load_prepared(cfg, out)?;
    let vqc = Vqc::new(cfg.vqc_config(cfg.classifier.train_readout))?;
    let run = vqc.train(&data.train, &cfg.spsa, cfg.classifier.init_seed)?;

    let mut csv = CsvText::new(&["iteration", "loss"])?;
    for (i, l) in run.loss_history.iter().enumerate() {
        csv.row([(i + 1).to_string(), l.to_string()])?;
    }
    let model = ModelArtifact {
        preprocessor: data.preprocessor,
        classifier: cfg.vqc_config(cfg.classifier.eval_readout),
        params: run.final_params.clone(),
        training: TrainingSummary {
            readout: cfg.classifier.train_readout,
            spsa: cfg.spsa,
            seeds_used: run.seeds_used,
            iterations: run.loss_history.len(),
            evaluations: run.evaluations,
            final_loss: run.loss_history.last().copied(),
        },
    };
    out.write(art::LOSS_HISTORY, &csv.finish()?)?;
    out.write_json(art::MODEL, &model)?;
    Ok(run)
}

pub fn run_eval(cfg: &RunConfig, out: &OutputDir) -> Result<MetricsReport> {
    out.claim(&[art::METRICS, art::PREDICTIONS, art::SCATTER])?;
    let model: ModelArtifact = out.read_json(art::MODEL)?;
    let data = load_prepared(cfg, out)?;
    let vqc = Vqc::new(model.classifier.clone())?;

    let test_pred = vqc.predict_batch(&data.test.features, &model.params)?;
    let offset = data.test.len() as u64;
    let train_pred = data
        .train
        .features
        .iter()
        .enumerate()
        .map(|(i, x)| vqc.forward_indexed(x, &model.params, offset + i as u64, 0))
        .collect::<Result<Vec<_>>>()?;

    let p_ad: Vec<f64> = test_pred.iter().map(|p| p.p_ad).collect();
    let report = evaluate(&data.test.labels, &p_ad)?;
    if let Some(msg) = &report.auroc_diagnostic {
        eprintln!("warning: AUROC reported as null: {msg}");
    }

    let mut preds = CsvText::new(&["sample_id", "p_ad", "predicted", "true"])?;
    for ((id, p), &y) in data.test.ids.iter().zip(&test_pred).zip(&data.test.labels) {
        preds.row([
            id.as_str(),
            &p.p_ad.to_string(),
            p.label.as_str(),
            Label::from_u8(y).as_str(),
        ])?;
    }

    let mut scatter = CsvText::new(&["sample_id", "split", "pc1", "pc2", "true", "predicted"])?;
    for (split, ds, raw, pred) in [
        ("train", &data.train, &data.train_pcs, &train_pred),
        ("test", &data.test, &data.test_pcs, &test_pred),
    ] {
        for (((id, pc), &y), p) in ds.ids.iter().zip(raw).zip(&ds.labels).zip(pred) {
            let pc2 = pc.get(1).map_or_else(String::new, f64::to_string);
            scatter.row([
                id.as_str(),
                split,
                &pc[0].to_string(),
                &pc2,
                Label::from_u8(y).as_str(),
                p.label.as_str(),
            ])?;
        }
    }

    out.write(art::PREDICTIONS, &preds.finish()?)?;
    out.write(art::SCATTER, &scatter.finish()?)?;
    out.write_json(art::METRICS, &report)?;
    Ok(report)
}

pub fn run_kernel(cfg: &RunConfig, out: &OutputDir) -> Result<()> {
    out.claim(&[art::KERNEL_TRAIN, art::KERNEL_TEST])?;
    let data = load_prepared(cfg, out)?;
    let (tr, te) = (&data.train, &data.test);
    let map = default_data_map();
    let k_train = kernel_matrix_with_ids(
        &tr.features,
        &tr.ids,
        &tr.features,
        &tr.ids,
        &cfg.feature_map,
        map,
    )?;
    let k_test = kernel_matrix_with_ids(
        &te.features,
        &te.ids,
        &tr.features,
        &tr.ids,
        &cfg.feature_map,
        map,
    )?;
    let mut buf = Vec::new();
    k_train.write_csv(&mut buf)?;
    out.write(art::KERNEL_TRAIN, &buf)?;
    buf.clear();
    k_test.write_csv(&mut buf)?;
    out.write(art::KERNEL_TEST, &buf)
}

/// Runs every stage whose outputs are missing, then writes the config echo
/// and a summary. With `--force` every stage is rerun.
pub fn run_report(cfg: &RunConfig, out: &OutputDir, force: bool) -> Result<ReportSummary> {
    out.claim(&[art::CONFIG_ECHO, art::REPORT])?;
    let missing = |names: &[&str]| force || names.iter().any(|n| !out.exists(n));
    if missing(&[art::PREP, art::SPLIT]) {
        run_prep(cfg, out)?;
    }
    if missing(&[art::MODEL, art::LOSS_HISTORY]) {
        run_train(cfg, out)?;
    }
    if missing(&[art::METRICS, art::PREDICTIONS, art::SCATTER]) {
        run_eval(cfg, out)?;
    }
    if missing(&[art::KERNEL_TRAIN, art::KERNEL_TEST]) {
        run_kernel(cfg, out)?;
    }

    let manifest: SplitManifest = out.read_json(art::SPLIT)?;
    let model: ModelArtifact = out.read_json(art::MODEL)?;
    let metrics: MetricsReport = out.read_json(art::METRICS)?;
    let losses = read_loss_history(out)?;
    let window = 50.min(losses.len());
    let mean = |xs: &[f64]| (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);

    let summary = ReportSummary {
        artifacts: [
            art::PREP,
            art::SPLIT,
            art::MODEL,
            art::LOSS_HISTORY,
            art::METRICS,
            art::PREDICTIONS,
            art::SCATTER,
            art::KERNEL_TRAIN,
            art::KERNEL_TEST,
            art::CONFIG_ECHO,
        ]
        .map(String::from)
        .to_vec(),
        n_train: manifest.train_indices.len(),
        n_test: manifest.test_indices.len(),
        final_loss: model.training.final_loss,
        mean_loss_first_window: mean(&losses[..window]),
        mean_loss_last_window: mean(&losses[losses.len() - window..]),
        loss_window: window,
        test_accuracy: metrics.ad.accuracy,
        test_auroc: metrics.ad.auroc,
    };
    out.write_json(art::CONFIG_ECHO, cfg)?;
    out.write_json(art::REPORT, &summary)?;
    Ok(summary)
}

pub fn read_loss_history(out: &OutputDir) -> Result<Vec<f64>> {
    let path = out.path(art::LOSS_HISTORY);
    let mut rdr = csv::Reader::from_path(&path)?;
    rdr.records()
        .map(|r| {
            let r = r?;
            r.get(1)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Data(format!("{}: malformed row", path.display())))
        })
        .collect()
}
