use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::coloring::{canonicalize_colors, serialize_coloring, Coloring};
use crate::domain::{CellIndex, SearchBox};
use crate::engine::certificate::{Certificate, Evidence, Fingerprint, Verdict};
use crate::error::{Error, Result};
use crate::oracle::{
    exists_avoiding_coloring_with, find_witness_in, minimal_box_threshold, smallest_nonempty,
    Avoidance, Budget, CandidateTable, PointVerdict, SearchOptions, StructureKind, StructureSpec,
    ThresholdOutcome,
};
use crate::sat::{
    decode_model, encode_table, run_external_solver, EncodeOptions, SolverError, SolverOutcome,
};
use crate::tuple::SpaceTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Oracle,
    Sat,
    Both,
}

impl Engine {
    fn uses_oracle(self) -> bool {
        matches!(self, Engine::Oracle | Engine::Both)
    }

    fn uses_sat(self) -> bool {
        matches!(self, Engine::Sat | Engine::Both)
    }

    fn names(self) -> Vec<String> {
        match self {
            Engine::Oracle => vec!["oracle".into()],
            Engine::Sat => vec!["sat".into()],
            Engine::Both => vec!["oracle".into(), "sat".into()],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Engine::Oracle => "oracle",
            Engine::Sat => "sat",
            Engine::Both => "both",
        }
    }
}

/// A parameter grid plus the policies and budgets every instance shares.
#[derive(Clone, Debug)]
pub struct Campaign {
    pub ks: Vec<usize>,
    pub rs: Vec<u32>,
    /// Sum-side (or only-side) generator counts.
    pub ms: Vec<usize>,
    /// Product-side generator count for pair kinds.
    pub m_prod: usize,
    pub n_min: Option<u64>,
    pub n_max: u64,
    pub kind: StructureKind,
    pub distinct_values: bool,
    pub closure: bool,
    pub sum_generators_positive: bool,
    /// Box space; the kind's default when `None`.
    pub space: Option<SpaceTag>,
    pub engine: Engine,
    pub solver_command: Option<String>,
    pub node_budget: Option<u64>,
    pub instance_timeout: Option<Duration>,
    /// Worker threads across grid points.
    pub jobs: usize,
    /// Split each DFS across the pool as well.
    pub parallel_dfs: bool,
}

impl Campaign {
    pub fn new(kind: StructureKind) -> Campaign {
        Campaign {
            ks: vec![1],
            rs: vec![2],
            ms: vec![2],
            m_prod: if kind.is_pair() { 2 } else { 0 },
            n_min: None,
            n_max: 10,
            kind,
            distinct_values: false,
            closure: true,
            sum_generators_positive: false,
            space: None,
            engine: Engine::Oracle,
            solver_command: None,
            node_budget: None,
            instance_timeout: None,
            jobs: 1,
            parallel_dfs: false,
        }
    }

    fn spec(&self, m: usize) -> StructureSpec {
        StructureSpec {
            kind: self.kind,
            m_sum: m,
            m_prod: self.m_prod,
            distinct_values: self.distinct_values,
            closure: self.closure,
            sum_generators_positive: self.sum_generators_positive,
        }
    }

    fn space_for(&self, spec: &StructureSpec) -> SpaceTag {
        self.space.unwrap_or_else(|| spec.default_space())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidCampaign(m.to_string()));
        if self.ks.is_empty() || self.rs.is_empty() || self.ms.is_empty() {
            return bad("parameter grid is empty");
        }
        if self.ks.contains(&0) {
            return bad("k must be positive");
        }
        if self.rs.contains(&0) {
            return bad("r must be positive");
        }
        if self.jobs == 0 {
            return bad("jobs must be positive");
        }
        if self.node_budget == Some(0) || self.instance_timeout == Some(Duration::ZERO) {
            return bad("budgets must be positive");
        }
        if self.n_min.is_some_and(|n| n > self.n_max) {
            return bad("N range is empty");
        }
        for &m in &self.ms {
            self.spec(m).validate()?;
        }
        if self.engine.uses_sat() && self.solver_command.is_none() {
            return bad("the sat engine needs a solver command");
        }
        Ok(())
    }

    fn search_options(&self) -> SearchOptions {
        SearchOptions {
            budget: Budget {
                max_nodes: self.node_budget,
                wall: self.instance_timeout,
            },
            parallel_split_depth: self.parallel_dfs.then_some(8),
            ..SearchOptions::default()
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::InvalidCampaign(e.to_string()))
    }

    fn grid(&self) -> Vec<(usize, u32, usize)> {
        let mut points = Vec::new();
        for &k in &self.ks {
            for &r in &self.rs {
                for &m in &self.ms {
                    points.push((k, r, m));
                }
            }
        }
        points
    }
}

/// Result of one SAT avoidance query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatVerdict {
    Avoiding(Coloring),
    Unavoidable,
    TimedOut,
}

/// Encodes, solves and decodes one instance; the decoded model is re-checked
/// with the oracle's witness search.
pub fn sat_avoidance(
    bounds: &SearchBox,
    r: u32,
    spec: &StructureSpec,
    solver_command: &str,
    timeout: Option<Duration>,
) -> Result<SatVerdict> {
    let index = Arc::new(CellIndex::new(*bounds)?);
    let table = CandidateTable::build(index, spec, EncodeOptions::default().candidate_cap)?;
    let enc = encode_table(&table, r, &EncodeOptions::default())?;
    match run_external_solver(&enc.formula, solver_command, timeout) {
        Ok(SolverOutcome::Unsat) => Ok(SatVerdict::Unavoidable),
        Ok(SolverOutcome::Sat(model)) => {
            let c = canonicalize_colors(&decode_model(&model, &enc.vars)?);
            if let Some(w) = find_witness_in(&c, &table) {
                return Err(Error::Discrepancy {
                    instance: format!("{bounds} r={r} {}", spec.fingerprint()),
                    detail: format!(
                        "solver model contains a monochromatic target on {:?}",
                        w.generated_cells
                    ),
                });
            }
            Ok(SatVerdict::Avoiding(c))
        }
        Err(SolverError::Timeout { .. }) => Ok(SatVerdict::TimedOut),
        Err(e) => Err(e.into()),
    }
}

/// One scanned box size as seen by one engine.
type Scan = Vec<(u64, PointVerdict)>;

struct EngineRun {
    outcome: ThresholdOutcome,
    scanned: Scan,
    last_avoiding: Option<Coloring>,
}

fn sat_threshold(
    c: &Campaign,
    k: usize,
    r: u32,
    spec: &StructureSpec,
    space: SpaceTag,
    start: u64,
) -> Result<EngineRun> {
    let solver = c.solver_command.as_deref().expect("validated");
    let mut scanned = Vec::new();
    let mut last_avoiding = None;
    let mut lower = start;
    let mut stuck = false;
    for n in start..=c.n_max {
        match sat_avoidance(
            &SearchBox::new(k, n, space),
            r,
            spec,
            solver,
            c.instance_timeout,
        )? {
            SatVerdict::Avoiding(col) => {
                scanned.push((n, PointVerdict::Avoidable));
                last_avoiding = Some(col);
                lower = n + 1;
            }
            SatVerdict::Unavoidable => {
                scanned.push((n, PointVerdict::Unavoidable));
                let outcome = if stuck {
                    ThresholdOutcome::Unresolved {
                        lower,
                        upper: Some(n),
                    }
                } else {
                    ThresholdOutcome::Threshold(n)
                };
                return Ok(EngineRun {
                    outcome,
                    scanned,
                    last_avoiding,
                });
            }
            SatVerdict::TimedOut => {
                scanned.push((n, PointVerdict::BudgetExceeded));
                stuck = true;
            }
        }
    }
    Ok(EngineRun {
        outcome: ThresholdOutcome::Unresolved { lower, upper: None },
        scanned,
        last_avoiding,
    })
}

fn compare_scans(instance: &str, a: &Scan, b: &Scan) -> Result<()> {
    for (n, va) in a {
        if let Some((_, vb)) = b.iter().find(|(m, _)| m == n) {
            let decided = |v: &PointVerdict| *v != PointVerdict::BudgetExceeded;
            if decided(va) && decided(vb) && va != vb {
                return Err(Error::Discrepancy {
                    instance: instance.to_string(),
                    detail: format!("at N={n} the oracle says {va:?} and the solver says {vb:?}"),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Timing {
    pub key: String,
    pub wall_ms: u128,
}

#[derive(Clone, Debug)]
pub struct CampaignResult {
    pub certificates: Vec<Certificate>,
    /// Wall-clock time per certificate, same order.
    pub timings: Vec<Timing>,
}

fn evidence_of(c: Option<&Coloring>) -> Option<Evidence> {
    c.map(|col| Evidence {
        n: col.bounds().max_coord,
        coloring: serialize_coloring(col),
    })
}

fn threshold_point(c: &Campaign, k: usize, r: u32, m: usize) -> Result<Certificate> {
    let spec = c.spec(m);
    let space = c.space_for(&spec);
    let fingerprint = Fingerprint {
        k,
        r,
        space,
        spec,
        n: None,
        n_max: Some(c.n_max),
    };
    let instance = fingerprint.describe();
    let oracle = if c.engine.uses_oracle() {
        let rep = minimal_box_threshold(k, r, &spec, space, c.n_max, &c.search_options())?;
        Some(EngineRun {
            outcome: rep.outcome,
            scanned: rep.scanned,
            last_avoiding: rep.last_avoiding,
        })
    } else {
        None
    };
    let sat = if c.engine.uses_sat() {
        Some(sat_threshold(
            c,
            k,
            r,
            &spec,
            space,
            smallest_nonempty(space),
        )?)
    } else {
        None
    };
    let agreement = match (&oracle, &sat) {
        (Some(o), Some(s)) => {
            compare_scans(&instance, &o.scanned, &s.scanned)?;
            let resolved = |run: &EngineRun| matches!(run.outcome, ThresholdOutcome::Threshold(_));
            if resolved(o) && resolved(s) && o.outcome != s.outcome {
                return Err(Error::Discrepancy {
                    instance,
                    detail: format!("oracle {:?} vs solver {:?}", o.outcome, s.outcome),
                });
            }
            Some(o.outcome == s.outcome)
        }
        _ => None,
    };
    // oracle verdict first, solver verdict otherwise
    let primary = match (&oracle, &sat) {
        (Some(o), Some(s)) => {
            if matches!(o.outcome, ThresholdOutcome::Threshold(_))
                || !matches!(s.outcome, ThresholdOutcome::Threshold(_))
            {
                o
            } else {
                s
            }
        }
        (Some(o), None) => o,
        (None, Some(s)) => s,
        (None, None) => unreachable!("some engine runs"),
    };
    let verdict = match primary.outcome {
        ThresholdOutcome::Threshold(value) => Verdict::Threshold { value },
        ThresholdOutcome::Unresolved { lower, upper } => Verdict::Unresolved { lower, upper },
    };
    // evidence is the avoiding coloring right below the threshold / lower bound
    let below = match verdict {
        Verdict::Threshold { value } => value.checked_sub(1),
        Verdict::Unresolved { lower, .. } => lower.checked_sub(1),
        _ => None,
    };
    let evidence = primary
        .last_avoiding
        .as_ref()
        .filter(|col| Some(col.bounds().max_coord) == below);
    Ok(Certificate {
        fingerprint,
        verdict,
        evidence: evidence_of(evidence),
        engines: c.engine.names(),
        agreement,
    })
}

/// Threshold per grid point `(k, r, m)`.
///
/// With [`Engine::Both`], a verdict mismatch at any box size aborts the whole
/// run with [`Error::Discrepancy`].
pub fn run_threshold_table(c: &Campaign) -> Result<CampaignResult> {
    c.validate()?;
    let points = c.grid();
    let results: Vec<Result<(Certificate, Timing)>> = c.pool()?.install(|| {
        points
            .par_iter()
            .map(|&(k, r, m)| {
                let t = Instant::now();
                let cert = threshold_point(c, k, r, m)?;
                Ok((
                    cert,
                    Timing {
                        key: format!("{k},{r},{m}"),
                        wall_ms: t.elapsed().as_millis(),
                    },
                ))
            })
            .collect()
    });
    collect(results)
}

fn collect(results: Vec<Result<(Certificate, Timing)>>) -> Result<CampaignResult> {
    let mut certificates = Vec::with_capacity(results.len());
    let mut timings = Vec::with_capacity(results.len());
    for r in results {
        let (c, t) = r?;
        certificates.push(c);
        timings.push(t);
    }
    Ok(CampaignResult {
        certificates,
        timings,
    })
}

fn hunt_point(c: &Campaign, k: usize, r: u32, m: usize, n: u64) -> Result<Certificate> {
    let spec = c.spec(m);
    let space = c.space_for(&spec);
    let bounds = SearchBox::new(k, n, space);
    let fingerprint = Fingerprint {
        k,
        r,
        space,
        spec,
        n: Some(n),
        n_max: None,
    };
    let instance = fingerprint.describe();
    let oracle = if c.engine.uses_oracle() {
        Some(exists_avoiding_coloring_with(&bounds, r, &spec, &c.search_options())?.outcome)
    } else {
        None
    };
    let sat = if c.engine.uses_sat() {
        Some(sat_avoidance(
            &bounds,
            r,
            &spec,
            c.solver_command.as_deref().expect("validated"),
            c.instance_timeout,
        )?)
    } else {
        None
    };
    let agreement = match (&oracle, &sat) {
        (Some(o), Some(s)) => {
            let same = match (o, s) {
                (Avoidance::Avoiding(_), SatVerdict::Avoiding(_))
                | (Avoidance::Unavoidable, SatVerdict::Unavoidable) => Some(true),
                (Avoidance::Avoiding(_), SatVerdict::Unavoidable)
                | (Avoidance::Unavoidable, SatVerdict::Avoiding(_)) => Some(false),
                _ => None,
            };
            if same == Some(false) {
                return Err(Error::Discrepancy {
                    instance,
                    detail: format!("oracle {o:?} vs solver {s:?}"),
                });
            }
            Some(same.unwrap_or(false))
        }
        _ => None,
    };
    let from_oracle = match &oracle {
        Some(Avoidance::Avoiding(col)) => Some((Verdict::Avoiding, Some(col.clone()))),
        Some(Avoidance::Unavoidable) => Some((Verdict::Unavoidable, None)),
        _ => None,
    };
    let from_sat = match &sat {
        Some(SatVerdict::Avoiding(col)) => Some((Verdict::Avoiding, Some(col.clone()))),
        Some(SatVerdict::Unavoidable) => Some((Verdict::Unavoidable, None)),
        _ => None,
    };
    let (verdict, coloring) = from_oracle.or(from_sat).unwrap_or((
        Verdict::Unresolved {
            lower: smallest_nonempty(space),
            upper: None,
        },
        None,
    ));
    let verdict = match verdict {
        Verdict::Unresolved { .. } => Verdict::Unresolved {
            lower: n,
            upper: None,
        },
        v => v,
    };
    Ok(Certificate {
        fingerprint,
        verdict,
        evidence: evidence_of(coloring.as_ref()),
        engines: c.engine.names(),
        agreement,
    })
}

/// Avoidance verdict for every `(k, r, m, N)` with `N` in `n_min..=n_max`;
/// pair kinds only.
pub fn run_hunt(c: &Campaign) -> Result<CampaignResult> {
    c.validate()?;
    if !c.kind.is_pair() {
        return Err(Error::InvalidCampaign(format!(
            "hunts need a pair kind, got {}",
            c.kind
        )));
    }
    let mut points = Vec::new();
    for (k, r, m) in c.grid() {
        let spec = c.spec(m);
        let lo = c
            .n_min
            .unwrap_or(0)
            .max(smallest_nonempty(c.space_for(&spec)));
        for n in lo..=c.n_max {
            points.push((k, r, m, n));
        }
    }
    let results: Vec<Result<(Certificate, Timing)>> = c.pool()?.install(|| {
        points
            .par_iter()
            .map(|&(k, r, m, n)| {
                let t = Instant::now();
                let cert = hunt_point(c, k, r, m, n)?;
                Ok((
                    cert,
                    Timing {
                        key: format!("{k},{r},{m},{n}"),
                        wall_ms: t.elapsed().as_millis(),
                    },
                ))
            })
            .collect()
    });
    collect(results)
}

/// Per `(k, r, m_sum, m_prod)`: the largest `N` with a certified avoiding
/// coloring, and the smallest `N` shown unavoidable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub k: usize,
    pub r: u32,
    pub m_sum: usize,
    pub m_prod: usize,
    pub largest_avoiding: Option<u64>,
    pub least_unavoidable: Option<u64>,
}

pub fn hunt_ladders(result: &CampaignResult) -> Vec<Ladder> {
    let mut out: Vec<Ladder> = Vec::new();
    for cert in &result.certificates {
        let fp = &cert.fingerprint;
        let n = fp.n.unwrap_or(0);
        let pos = out.iter().position(|l| {
            (l.k, l.r, l.m_sum, l.m_prod) == (fp.k, fp.r, fp.spec.m_sum, fp.spec.m_prod)
        });
        let ladder = match pos {
            Some(p) => &mut out[p],
            None => {
                out.push(Ladder {
                    k: fp.k,
                    r: fp.r,
                    m_sum: fp.spec.m_sum,
                    m_prod: fp.spec.m_prod,
                    largest_avoiding: None,
                    least_unavoidable: None,
                });
                out.last_mut().expect("just pushed")
            }
        };
        match cert.verdict {
            Verdict::Avoiding => {
                ladder.largest_avoiding = Some(ladder.largest_avoiding.map_or(n, |a| a.max(n)))
            }
            Verdict::Unavoidable => {
                ladder.least_unavoidable = Some(ladder.least_unavoidable.map_or(n, |u| u.min(n)))
            }
            _ => {}
        }
    }
    out
}

/// File name of a certificate inside an output directory.
pub fn certificate_file_name(cert: &Certificate) -> String {
    let fp = &cert.fingerprint;
    let mut name = format!("cert_k{}_r{}_m{}", fp.k, fp.r, fp.spec.m_sum);
    if fp.spec.kind.is_pair() {
        name.push_str(&format!("_p{}", fp.spec.m_prod));
    }
    if let Some(n) = fp.n {
        name.push_str(&format!("_N{n}"));
    }
    name.push_str(".json");
    name
}

/// One deterministic CSV row per certificate.
pub fn summary_csv(certs: &[Certificate]) -> String {
    let mut out = String::from("k,r,m,m_prod,N,result,lower,upper,engine,agreement\n");
    for cert in certs {
        let fp = &cert.fingerprint;
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        let (result, lower, upper) = match cert.verdict {
            Verdict::Threshold { value } => ("threshold".to_string(), Some(value), Some(value)),
            Verdict::Unresolved { lower, upper } => ("unresolved".to_string(), Some(lower), upper),
            Verdict::Avoiding => ("avoiding".to_string(), None, None),
            Verdict::Unavoidable => ("unavoidable".to_string(), None, None),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            fp.k,
            fp.r,
            fp.spec.m_sum,
            fp.spec.m_prod,
            opt(fp.n),
            result,
            opt(lower),
            opt(upper),
            cert.engines.join("+"),
            cert.agreement.map(|a| a.to_string()).unwrap_or_default(),
        ));
    }
    out
}

fn timings_csv(result: &CampaignResult) -> String {
    let mut out = String::from("instance,wall_ms\n");
    for t in &result.timings {
        out.push_str(&format!("\"{}\",{}\n", t.key, t.wall_ms));
    }
    out
}

/// Writes every certificate as pretty JSON, `summary.csv` and `timings.csv`
/// into `dir`. Every certificate is re-validated before anything is written.
pub fn emit_certificates(result: &CampaignResult, dir: &Path) -> Result<Vec<PathBuf>> {
    for cert in &result.certificates {
        cert.validate()?;
    }
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(result.certificates.len() + 2);
    for cert in &result.certificates {
        let path = dir.join(certificate_file_name(cert));
        let mut json = serde_json::to_string_pretty(cert)?;
        json.push('\n');
        fs::write(&path, json)?;
        written.push(path);
    }
    let summary = dir.join("summary.csv");
    fs::write(&summary, summary_csv(&result.certificates))?;
    written.push(summary);
    let timings = dir.join("timings.csv");
    fs::write(&timings, timings_csv(result))?;
    written.push(timings);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_color_sum_table_with_oracle() {
        let mut c = Campaign::new(StructureKind::GowersSum);
        c.rs = vec![1, 2];
        c.n_max = 8;
        let res = run_threshold_table(&c).unwrap();
        let verdicts: Vec<&Verdict> = res.certificates.iter().map(|c| &c.verdict).collect();
        assert_eq!(
            verdicts,
            vec![
                &Verdict::Threshold { value: 2 },
                &Verdict::Threshold { value: 5 }
            ]
        );
        for cert in &res.certificates {
            cert.validate().unwrap();
        }
        assert_eq!(res.certificates[1].evidence.as_ref().unwrap().n, 4);
    }

    #[test]
    fn emit_is_deterministic_and_validates() {
        let mut c = Campaign::new(StructureKind::GowersSum);
        c.rs = vec![1, 2];
        c.n_max = 6;
        let res = run_threshold_table(&c).unwrap();
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let files = emit_certificates(&res, a.path()).unwrap();
        emit_certificates(&res, b.path()).unwrap();
        assert_eq!(files.len(), 4);
        for name in ["cert_k1_r1_m2.json", "cert_k1_r2_m2.json", "summary.csv"] {
            let x = fs::read(a.path().join(name)).unwrap();
            let y = fs::read(b.path().join(name)).unwrap();
            assert_eq!(x, y, "{name}");
        }
        let summary = fs::read_to_string(a.path().join("summary.csv")).unwrap();
        assert_eq!(summary.lines().count(), 3);
        assert!(summary.contains("1,2,2,0,,threshold,5,5,oracle,"));

        let mut bad = res.clone();
        bad.certificates[1].verdict = Verdict::Threshold { value: 7 };
        let d = tempfile::tempdir().unwrap();
        let err = emit_certificates(&bad, &d.path().join("out")).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }), "{err}");
        assert!(!d.path().join("out").exists());
    }

    #[test]
    fn campaign_validation() {
        let mut c = Campaign::new(StructureKind::GowersSum);
        c.engine = Engine::Sat;
        assert!(matches!(c.validate(), Err(Error::InvalidCampaign(_))));
        let mut c = Campaign::new(StructureKind::GowersSum);
        c.rs.clear();
        assert!(c.validate().is_err());
        let mut c = Campaign::new(StructureKind::GowersSum);
        c.jobs = 0;
        assert!(c.validate().is_err());
        let c = Campaign::new(StructureKind::GowersSum);
        assert!(matches!(run_hunt(&c), Err(Error::InvalidCampaign(_))));
    }

    #[test]
    fn one_color_hunt_is_unavoidable_once_room_exists() {
        let mut c = Campaign::new(StructureKind::SumProductPair);
        c.rs = vec![1];
        c.n_max = 5;
        let res = run_hunt(&c).unwrap();
        let ladders = hunt_ladders(&res);
        // FS{1,1} = {1,2} and the product subspace of {2,2} = {2,4}
        assert_eq!(ladders[0].largest_avoiding, Some(3));
        assert_eq!(ladders[0].least_unavoidable, Some(4));
    }

    #[test]
    fn unresolved_points_keep_bounds() {
        let mut c = Campaign::new(StructureKind::GowersSum);
        c.rs = vec![3];
        c.n_max = 20;
        c.node_budget = Some(1);
        let res = run_threshold_table(&c).unwrap();
        match res.certificates[0].verdict {
            Verdict::Unresolved { lower, .. } => assert!(lower > 1),
            ref v => panic!("{v:?}"),
        }
        res.certificates[0].validate().unwrap();
    }
}
