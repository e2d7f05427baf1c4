//! Sweep over (group, involution, subgroup) triples recording subgroup
//! code verdicts, and the JSONL/CSV report writers.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::{
    enumerate_involutory_automorphisms_bounded, AlphaContext, AlphaRef, DEFAULT_AUT_MAX_ORDER,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef, GroupSpec};
use crate::subgroup::{enumerate_subgroups_bounded, Subgroup, DEFAULT_SUBGROUP_MAX_ORDER};
use crate::subgroup_codes::{alpha_image, decide_subgroup_pc, decide_subgroup_tpc, CodeWitness};

pub const NO_INVOLUTION_NOTE: &str = "no involutory automorphism";

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub groups: Vec<GroupSpec>,
    /// Worker threads; 0 means the rayon default.
    pub workers: usize,
    pub include_identity: bool,
    pub timings: bool,
    pub aut_max_order: usize,
    pub subgroup_max_order: usize,
}

impl CensusConfig {
    pub fn new(groups: Vec<GroupSpec>) -> Self {
        CensusConfig {
            groups,
            workers: 0,
            include_identity: false,
            timings: false,
            aut_max_order: DEFAULT_AUT_MAX_ORDER,
            subgroup_max_order: DEFAULT_SUBGROUP_MAX_ORDER,
        }
    }
}

/// One (group, alpha, subgroup) verdict. Sets are ascending element lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub group: String,
    pub order: usize,
    pub alpha_index: Option<usize>,
    pub alpha: Option<Vec<usize>>,
    pub subgroup: Vec<usize>,
    pub alpha_preserves_h: Option<bool>,
    pub is_pc: Option<bool>,
    pub pc_witness: Option<Vec<usize>>,
    pub pc_witness_size: Option<usize>,
    pub pc_refutation: Option<String>,
    pub is_tpc: Option<bool>,
    pub tpc_witness: Option<Vec<usize>>,
    pub tpc_witness_size: Option<usize>,
    pub tpc_refutation: Option<String>,
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Column order of the CSV report.
pub const CSV_COLUMNS: [&str; 16] = [
    "group",
    "order",
    "alpha_index",
    "alpha",
    "subgroup",
    "alpha_preserves_h",
    "is_pc",
    "pc_witness",
    "pc_witness_size",
    "pc_refutation",
    "is_tpc",
    "tpc_witness",
    "tpc_witness_size",
    "tpc_refutation",
    "note",
    "timing_ms",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Jsonl,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(ReportFormat::Jsonl),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::UnsupportedSpec(format!(
                "unknown report format {s:?} (jsonl|csv)"
            ))),
        }
    }
}

fn witness_fields(w: &CodeWitness) -> (Option<Vec<usize>>, Option<usize>, Option<String>) {
    match w.subset() {
        Some(s) => (Some(s.elements().to_vec()), Some(s.len()), None),
        None => (None, None, w.refutation().map(|r| r.reason.to_string())),
    }
}

fn record_for(
    group: &FiniteGroup,
    index: usize,
    ctx: &AlphaRef,
    h: &Subgroup,
    timings: bool,
) -> CensusRecord {
    let start = Instant::now();
    let pc = decide_subgroup_pc(h, ctx);
    let tpc = decide_subgroup_tpc(h, ctx);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let (pc_witness, pc_witness_size, pc_refutation) = witness_fields(&pc);
    let (tpc_witness, tpc_witness_size, tpc_refutation) = witness_fields(&tpc);
    CensusRecord {
        group: group.id().to_string(),
        order: group.order(),
        alpha_index: Some(index),
        alpha: Some(ctx.alpha().perm().to_vec()),
        subgroup: h.elements().to_vec(),
        alpha_preserves_h: Some(alpha_image(h, ctx).elements() == h.elements()),
        is_pc: Some(pc.is_code()),
        pc_witness,
        pc_witness_size,
        pc_refutation,
        is_tpc: Some(tpc.is_code()),
        tpc_witness,
        tpc_witness_size,
        tpc_refutation,
        note: None,
        timing_ms: timings.then_some(elapsed),
    }
}

fn empty_record(group: &FiniteGroup) -> CensusRecord {
    CensusRecord {
        group: group.id().to_string(),
        order: group.order(),
        alpha_index: None,
        alpha: None,
        subgroup: Vec::new(),
        alpha_preserves_h: None,
        is_pc: None,
        pc_witness: None,
        pc_witness_size: None,
        pc_refutation: None,
        is_tpc: None,
        tpc_witness: None,
        tpc_witness_size: None,
        tpc_refutation: None,
        note: Some(NO_INVOLUTION_NOTE.to_string()),
        timing_ms: None,
    }
}

/// The (group, alpha) tasks of a census, in report order.
pub struct CensusTask {
    pub group: GroupRef,
    pub alpha_index: usize,
    pub ctx: AlphaRef,
    pub subgroups: Arc<Vec<Subgroup>>,
}

enum Slot {
    Empty(GroupRef),
    Task(CensusTask),
}

pub fn census_tasks(config: &CensusConfig) -> Result<Vec<CensusTask>> {
    Ok(plan(config)?
        .into_iter()
        .filter_map(|s| match s {
            Slot::Task(t) => Some(t),
            Slot::Empty(_) => None,
        })
        .collect())
}

fn plan(config: &CensusConfig) -> Result<Vec<Slot>> {
    let mut slots = Vec::new();
    for spec in &config.groups {
        let group = Arc::new(spec.build()?);
        let alphas = enumerate_involutory_automorphisms_bounded(
            &group,
            config.include_identity,
            config.aut_max_order,
        )?;
        if alphas.is_empty() {
            slots.push(Slot::Empty(group));
            continue;
        }
        let subgroups = Arc::new(enumerate_subgroups_bounded(
            &group,
            config.subgroup_max_order,
        )?);
        for (alpha_index, a) in alphas.into_iter().enumerate() {
            slots.push(Slot::Task(CensusTask {
                group: group.clone(),
                alpha_index,
                ctx: AlphaContext::shared(a)?,
                subgroups: subgroups.clone(),
            }));
        }
    }
    Ok(slots)
}

/// Runs `f` on a pool of `workers` threads (0 = rayon default).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Records ordered by catalog position (order, then id), alpha index and
/// subgroup (size, then elements), independent of the worker count.
pub fn run_census(config: &CensusConfig) -> Result<Vec<CensusRecord>> {
    let slots = plan(config)?;
    let timings = config.timings;
    let chunks: Vec<Vec<CensusRecord>> = with_workers(config.workers, || {
        slots
            .par_iter()
            .map(|slot| match slot {
                Slot::Empty(g) => vec![empty_record(g)],
                Slot::Task(t) => t
                    .subgroups
                    .iter()
                    .map(|h| record_for(&t.group, t.alpha_index, &t.ctx, h, timings))
                    .collect(),
            })
            .collect()
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

fn join(v: &Option<Vec<usize>>) -> String {
    v.as_ref()
        .map(|v| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the report. CSV set columns hold space-separated indices; absent
/// values are empty cells.
pub fn emit_report<W: Write>(records: &[CensusRecord], format: ReportFormat, out: W) -> Result<()> {
    match format {
        ReportFormat::Jsonl => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r).map_err(|e| Error::Io(e.into()))?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in records {
                w.write_record([
                    r.group.clone(),
                    r.order.to_string(),
                    opt(&r.alpha_index),
                    join(&r.alpha),
                    join(&Some(r.subgroup.clone())),
                    opt(&r.alpha_preserves_h),
                    opt(&r.is_pc),
                    join(&r.pc_witness),
                    opt(&r.pc_witness_size),
                    opt(&r.pc_refutation),
                    opt(&r.is_tpc),
                    join(&r.tpc_witness),
                    opt(&r.tpc_witness_size),
                    opt(&r.tpc_refutation),
                    opt(&r.note),
                    r.timing_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn report_string(records: &[CensusRecord], format: ReportFormat) -> Result<String> {
    let mut buf = Vec::new();
    emit_report(records, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("reports are UTF-8"))
}
