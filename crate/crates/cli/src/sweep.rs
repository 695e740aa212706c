//! Batch verification over parameter grids, streamed as JSON lines.
//!
//! Points are expanded in a fixed order (identity, q, n, family instance,
//! k, s) and evaluated concurrently; lines are written in plan order, so the
//! output depends only on the configuration.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qcube_core::{
    check_chu_vandermonde_generalized, check_evenweight_identity, check_vandermonde, corollary_s1, corollary_s2,
    corollary_s3, lemma_face_count, max_intersection, rank_bounds_report, verify_main, CubeParams, EvalOptions,
    EvenWeightForm, FamilyKind, FamilySpec, IdentityKind, IdentityReport, Limits, PointSet,
};

use crate::errata::{classify, Status};
use crate::report::{ReportJson, SummaryCounts, SummaryJson};

const CHUNK: usize = 64;
const DEFAULT_M: Span = Span { min: 1, max: 12 };
const DEFAULT_S: Span = Span { min: 1, max: 3 };

/// Inclusive integer range, written `{"min": a, "max": b}` in JSON and `a:b` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Span {
    pub min: usize,
    pub max: usize,
}

impl Span {
    pub fn new(min: usize, max: usize) -> Self {
        Span { min, max }
    }

    /// Intersection with `lo..=hi`.
    fn clip(self, lo: usize, hi: usize) -> RangeInclusive<usize> {
        self.min.max(lo)..=self.max.min(hi)
    }

    fn check(self, name: &str) -> Result<(), String> {
        if self.min > self.max {
            return Err(format!("empty {name} range {}:{}", self.min, self.max));
        }
        Ok(())
    }
}

impl std::str::FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad range bound {t:?}"));
        match s.split_once(':') {
            Some((a, b)) => Ok(Span::new(parse(a)?, parse(b)?)),
            None => parse(s).map(|v| Span::new(v, v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyTemplate {
    /// `random`, `even_weight`, `face` or `file`.
    pub kind: String,
    /// Subset sizes for `random`; one size is drawn per seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Span>,
    /// Point-set file for `file`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

impl Default for FamilyTemplate {
    fn default() -> Self {
        FamilyTemplate { kind: "random".into(), m: None, path: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: String,
}

fn default_format() -> String {
    "jsonl".into()
}

fn default_q() -> Vec<u32> {
    vec![2]
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

/// A sweep: which identities to check over which parameter grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub identities: Vec<String>,
    #[serde(default = "default_q")]
    pub q: Vec<u32>,
    pub n: Span,
    /// Face dimensions; defaults to `0..=n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Span>,
    /// Subset sizes for `main`; defaults to `1..=3`, clipped to `1..=p(k)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Span>,
    /// Face dimensions ν for the face family and the Vandermonde checks; defaults to `0..=n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Span>,
    #[serde(default)]
    pub family: FamilyTemplate,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid sweep config: {e}"))
    }

    fn identity_kinds(&self) -> Result<Vec<IdentityKind>, String> {
        if self.identities.is_empty() {
            return Err("sweep lists no identities".into());
        }
        self.identities.iter().map(|s| s.parse::<IdentityKind>().map_err(|e| e.to_string())).collect()
    }

    fn family_kind(&self) -> Result<FamilyKind, String> {
        self.family.kind.parse::<FamilyKind>().map_err(|e| e.to_string())
    }

    pub fn validate(&self) -> Result<(), String> {
        self.identity_kinds()?;
        if self.q.is_empty() {
            return Err("sweep lists no alphabet sizes".into());
        }
        if let Some(q) = self.q.iter().find(|&&q| q < 2) {
            return Err(format!("alphabet size q = {q} is below 2"));
        }
        self.n.check("n")?;
        for (name, span) in [("k", self.k), ("s", self.s), ("nu", self.nu), ("m", self.family.m)] {
            if let Some(span) = span {
                span.check(name)?;
            }
        }
        if self.family.m.is_some_and(|m| m.min == 0) {
            return Err("subset size m must be at least 1".into());
        }
        match self.family_kind()? {
            FamilyKind::Random if self.seeds.is_empty() => return Err("random family needs seeds".into()),
            FamilyKind::File if self.family.path.is_none() => return Err("file family needs a path".into()),
            _ => {}
        }
        if let Some(out) = &self.output {
            if out.format != "jsonl" {
                return Err(format!("unsupported output format {:?}", out.format));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSettings {
    pub jobs: usize,
    pub limits: Limits,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings { jobs: 1, limits: Limits::default() }
    }
}

/// Totals of a finished sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepOutcome {
    pub counts: SummaryCounts,
    pub guard_errors: u64,
}

impl SweepOutcome {
    /// 0 all good, 1 unexpected inequality, 3 resource guard hit, 2 other errors.
    pub fn exit_code(&self) -> u8 {
        if self.counts.failed > 0 {
            1
        } else if self.guard_errors > 0 {
            3
        } else if self.counts.errors > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Debug, Clone)]
struct FamilyLabel {
    kind: FamilyKind,
    seed: Option<u64>,
    m: Option<u64>,
    nu: Option<usize>,
}

#[derive(Debug, Clone)]
enum Job {
    Eval {
        identity: IdentityKind,
        params: CubeParams,
        k: Option<usize>,
        s: Option<usize>,
        nu: Option<usize>,
        set: Option<Arc<PointSet>>,
        family: Option<FamilyLabel>,
    },
    Failed {
        identity: IdentityKind,
        params: CubeParams,
        family: Option<FamilyLabel>,
        error: String,
        guard: bool,
    },
}

struct Instance {
    label: FamilyLabel,
    set: Result<Arc<PointSet>, qcube_core::Error>,
}

fn instances(config: &SweepConfig, kind: FamilyKind, params: CubeParams) -> Vec<Instance> {
    let n = params.n();
    let label = |seed, m, nu| FamilyLabel { kind, seed, m, nu };
    match kind {
        FamilyKind::Random => config
            .seeds
            .iter()
            .map(|&seed| {
                let span = config.family.m.unwrap_or(DEFAULT_M);
                let cap = params.point_count().unwrap_or(u64::MAX);
                let hi = (span.max as u64).min(cap);
                let lo = (span.min as u64).min(hi);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m = rng.random_range(lo..=hi);
                let set = FamilySpec::Random { m, seed }.generate(params).map(Arc::new);
                Instance { label: label(Some(seed), Some(m), None), set }
            })
            .collect(),
        FamilyKind::EvenWeight if params.q() == 2 && n >= 1 => {
            vec![Instance {
                label: label(None, None, None),
                set: FamilySpec::EvenWeight.generate(params).map(Arc::new),
            }]
        }
        FamilyKind::EvenWeight => Vec::new(),
        FamilyKind::Face => config
            .nu
            .unwrap_or(Span::new(0, n))
            .clip(0, n)
            .map(|nu| {
                let set = FamilySpec::leading_face(params, nu).generate(params).map(Arc::new);
                Instance { label: label(None, None, Some(nu)), set }
            })
            .collect(),
        FamilyKind::File => {
            let path = config.family.path.clone().unwrap_or_default();
            vec![Instance {
                label: label(None, None, None),
                set: FamilySpec::File { path }.generate(params).map(Arc::new),
            }]
        }
    }
}

fn plan(config: &SweepConfig) -> Result<Vec<Job>, String> {
    config.validate()?;
    let kinds = config.identity_kinds()?;
    let family = config.family_kind()?;
    let mut jobs = Vec::new();
    for identity in kinds {
        if matches!(identity, IdentityKind::EvenweightPrinted | IdentityKind::EvenweightCorrected) {
            for n in config.n.clip(1, usize::MAX) {
                let params = CubeParams::binary(n);
                for k in config.k.unwrap_or(Span::new(1, n)).clip(1, n) {
                    jobs.push(closed_job(identity, params, k, None));
                }
            }
            continue;
        }
        for &q in &config.q {
            for n in config.n.clip(0, usize::MAX) {
                let params = CubeParams::new(q, n).map_err(|e| e.to_string())?;
                let k_range = || config.k.unwrap_or(Span::new(0, n)).clip(0, n);
                match identity {
                    IdentityKind::Vandermonde | IdentityKind::ChuVandermondeGeneralized => {
                        let lo = usize::from(identity == IdentityKind::ChuVandermondeGeneralized);
                        for nu in config.nu.unwrap_or(Span::new(0, n)).clip(lo, n) {
                            for k in k_range() {
                                jobs.push(closed_job(identity, params, k, Some(nu)));
                            }
                        }
                    }
                    _ => {
                        for inst in instances(config, family, params) {
                            expand_set_jobs(&mut jobs, config, identity, params, inst, k_range());
                        }
                    }
                }
            }
        }
    }
    if jobs.is_empty() {
        return Err("sweep has no parameter points".into());
    }
    Ok(jobs)
}

fn closed_job(identity: IdentityKind, params: CubeParams, k: usize, nu: Option<usize>) -> Job {
    Job::Eval { identity, params, k: Some(k), s: None, nu, set: None, family: None }
}

fn expand_set_jobs(
    jobs: &mut Vec<Job>,
    config: &SweepConfig,
    identity: IdentityKind,
    params: CubeParams,
    inst: Instance,
    k_range: RangeInclusive<usize>,
) {
    let set = match inst.set {
        Ok(set) => set,
        Err(e) => {
            jobs.push(Job::Failed {
                identity,
                params,
                family: Some(inst.label),
                guard: e.is_guard(),
                error: e.to_string(),
            });
            return;
        }
    };
    let size = set.len();
    let eval = |k: Option<usize>, s: Option<usize>| Job::Eval {
        identity,
        params,
        k,
        s,
        nu: inst.label.nu,
        set: Some(set.clone()),
        family: Some(inst.label.clone()),
    };
    match identity {
        IdentityKind::Bounds => {
            if params.q() == 2 && size >= 1 {
                jobs.push(eval(None, None));
            }
        }
        IdentityKind::Main => {
            for k in k_range {
                let p = max_intersection(size, params.q(), k) as usize;
                for s in config.s.unwrap_or(DEFAULT_S).clip(1, p) {
                    jobs.push(eval(Some(k), Some(s)));
                }
            }
        }
        _ => {
            let min_size = match identity {
                IdentityKind::Corollary2 => 2,
                IdentityKind::Corollary3 => 3,
                _ => 1,
            };
            if size < min_size || (identity == IdentityKind::Corollary3 && params.q() != 2) {
                return;
            }
            for k in k_range {
                jobs.push(eval(Some(k), None));
            }
        }
    }
}

fn evaluate(job: &Job, limits: &Limits) -> Result<IdentityReport, qcube_core::Error> {
    let Job::Eval { identity, params, k, s, nu, set, .. } = job else { unreachable!("failed jobs are not evaluated") };
    let opts = EvalOptions { limits: *limits, breakdown: false };
    let k = k.unwrap_or(0);
    let a = || set.as_deref().expect("point-set identity planned without a set");
    match identity {
        IdentityKind::Main => verify_main(a(), k, s.unwrap_or(1), &opts),
        IdentityKind::Corollary1 => corollary_s1(a(), k, limits),
        IdentityKind::Corollary2 => corollary_s2(a(), k, &opts),
        IdentityKind::Corollary3 => corollary_s3(a(), k, &opts),
        IdentityKind::LemmaFaceCount => lemma_face_count(a(), k, limits),
        IdentityKind::Bounds => rank_bounds_report(a()),
        IdentityKind::Vandermonde => check_vandermonde(*params, nu.unwrap_or(0), k),
        IdentityKind::ChuVandermondeGeneralized => check_chu_vandermonde_generalized(*params, nu.unwrap_or(1), k),
        IdentityKind::EvenweightPrinted => check_evenweight_identity(params.n(), k, EvenWeightForm::Printed),
        IdentityKind::EvenweightCorrected => check_evenweight_identity(params.n(), k, EvenWeightForm::Corrected),
    }
}

fn family_params(record: &mut ReportJson, family: &Option<FamilyLabel>) {
    if let Some(f) = family {
        record.family = Some(f.kind.to_string());
        for (key, value) in [("seed", f.seed), ("m", f.m), ("nu", f.nu.map(|v| v as u64))] {
            if let Some(v) = value {
                record.params.entry(key.to_string()).or_insert(v);
            }
        }
    }
}

fn record(job: &Job, limits: &Limits) -> (ReportJson, Status, bool) {
    let (identity, params, family, result) = match job {
        Job::Eval { identity, params, family, .. } => (identity, params, family, evaluate(job, limits)),
        Job::Failed { identity, params, family, error, guard } => {
            let mut rec = error_record(*identity, *params, error.clone());
            family_params(&mut rec, family);
            return (rec, Status::Error, *guard);
        }
    };
    match result {
        Ok(report) => {
            let status = classify(&report);
            let mut rec = ReportJson::from_report(&report, false);
            family_params(&mut rec, family);
            rec.status = Some(status.as_str().to_string());
            (rec, status, false)
        }
        Err(e) => {
            let mut rec = error_record(*identity, *params, e.to_string());
            family_params(&mut rec, family);
            (rec, Status::Error, e.is_guard())
        }
    }
}

fn error_record(identity: IdentityKind, params: CubeParams, error: String) -> ReportJson {
    let mut map = indexmap::IndexMap::new();
    map.insert("q".to_string(), params.q() as u64);
    map.insert("n".to_string(), params.n() as u64);
    ReportJson {
        identity: identity.to_string(),
        params: map,
        family: None,
        lhs: None,
        rhs: None,
        equal: None,
        status: Some(Status::Error.as_str().to_string()),
        error: Some(error),
        terms: None,
    }
}

/// Number of parameter points a configuration expands to.
pub fn plan_len(config: &SweepConfig) -> Result<usize, String> {
    plan(config).map(|p| p.len())
}

/// Runs the sweep, writing one JSON line per point and a final summary line.
///
/// Configuration problems are returned as `Err`; failures of individual
/// points are recorded in the output and counted in the outcome.
pub fn run_sweep(config: &SweepConfig, settings: &SweepSettings, out: &mut dyn Write) -> Result<SweepOutcome, String> {
    let jobs = plan(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs.max(1))
        .build()
        .map_err(|e| format!("cannot start worker pool: {e}"))?;
    let mut outcome = SweepOutcome::default();
    let io_err = |e: std::io::Error| format!("cannot write sweep output: {e}");
    for chunk in jobs.chunks(CHUNK) {
        let records: Vec<_> = pool.install(|| chunk.par_iter().map(|job| record(job, &settings.limits)).collect());
        for (rec, status, guard) in records {
            outcome.counts.total += 1;
            match status {
                Status::Pass => outcome.counts.passed += 1,
                Status::Fail => outcome.counts.failed += 1,
                Status::KnownErratum => outcome.counts.known_errata += 1,
                Status::Error => outcome.counts.errors += 1,
            }
            outcome.guard_errors += u64::from(guard);
            serde_json::to_writer(&mut *out, &rec).map_err(|e| e.to_string())?;
            out.write_all(b"\n").map_err(io_err)?;
        }
    }
    serde_json::to_writer(&mut *out, &SummaryJson { summary: outcome.counts }).map_err(|e| e.to_string())?;
    out.write_all(b"\n").map_err(io_err)?;
    out.flush().map_err(io_err)?;
    Ok(outcome)
}
