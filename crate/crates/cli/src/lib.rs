//! Command implementations behind the `dubreach` binary.
//!
//! Each command returns the text to print on success, or a [`CliError`]
//! carrying the process exit code.

pub mod instance;
pub mod svg;

use std::fmt;
use std::path::Path;
use std::time::Instant;

use dubreach::oracle::oracle_reach;
use dubreach::{
    reach, witness::witness_from, ArcGon, CurvaturePath, GridSpec, Membership, OracleAnswer, Point, ReachError,
    ReachResult,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use instance::{load_instance, parse_instance, Instance, LoadOptions};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_WITNESS: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

pub const COMPLEXITY_NOTE: &str = "complexity: medial axis by pairwise bisectors, O(n^3) worst case; \
     remaining stages O(n^2)";

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: String) -> Self {
        Self { code: EXIT_INPUT, message }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ReachError> for CliError {
    fn from(e: ReachError) -> Self {
        let code = match e {
            ReachError::NoWitnessFound => EXIT_WITNESS,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMetadata {
    pub n: usize,
    pub arc_count: usize,
    pub area: f64,
    pub bfil_size: usize,
    pub canonical_starts: usize,
    pub wall_time_ms: f64,
    pub complexity: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionFile {
    pub region: ArcGon,
    pub metadata: RegionMetadata,
}

impl RegionFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("region serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("ParseError: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("ReadError: {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("WriteError: {}: {e}", path.display())))
}

/// Reach result plus the region file describing it.
pub fn compute_region(inst: &Instance) -> Result<(ReachResult, RegionFile), CliError> {
    let t0 = Instant::now();
    let r = reach(&inst.polygon, &inst.start)?;
    let wall_time_ms = t0.elapsed().as_secs_f64() * 1e3;
    let metadata = RegionMetadata {
        n: inst.polygon.len(),
        arc_count: r.region.arc_count(),
        area: r.region.area(),
        bfil_size: r.bfil_size(),
        canonical_starts: r.canonical_starts.len(),
        wall_time_ms,
        complexity: COMPLEXITY_NOTE.to_string(),
    };
    let file = RegionFile { region: r.region.clone(), metadata };
    Ok((r, file))
}

pub fn cmd_reach(inst: &Instance, out: &Path) -> Result<String, CliError> {
    let (_, file) = compute_region(inst)?;
    write_file(out, &file.to_json())?;
    let m = &file.metadata;
    Ok(format!(
        "wrote {}\nn = {}\ncycles = {}\narc_count = {}\narea = {:.9}\nbfil_size = {}\ncanonical_starts = {}\nwall_time_ms = {:.3}\n{}\n",
        out.display(),
        m.n,
        file.region.cycles.len(),
        m.arc_count,
        m.area,
        m.bfil_size,
        m.canonical_starts,
        m.wall_time_ms,
        m.complexity,
    ))
}

pub fn membership_name(m: Membership) -> &'static str {
    match m {
        Membership::Inside => "inside",
        Membership::Outside => "outside",
        Membership::BoundaryBand => "boundary_band",
    }
}

#[derive(Debug, Clone)]
pub struct QueryOutcome {
    pub membership: Membership,
    pub witness: Option<CurvaturePath>,
}

pub fn query(inst: &Instance, t: Point, want_witness: bool) -> Result<QueryOutcome, CliError> {
    if !inst.polygon.contains_point(t) {
        return Err(ReachError::TargetOutsidePolygon.into());
    }
    let r = reach(&inst.polygon, &inst.start)?;
    let membership = r.contains(t, inst.tolerance().band);
    let mut witness = None;
    if want_witness {
        let found = if membership == Membership::Outside { None } else { witness_from(&r, t)? };
        match found {
            Some(p) => witness = Some(p.normalized(inst.tolerance().len)),
            None => {
                return Err(CliError {
                    code: EXIT_WITNESS,
                    message: format!("{}\nno witness: ({}, {}) is not reachable", membership_name(membership), t.x, t.y),
                })
            }
        }
    }
    Ok(QueryOutcome { membership, witness })
}

pub fn cmd_query(inst: &Instance, t: Point, want_witness: bool) -> Result<String, CliError> {
    let q = query(inst, t, want_witness)?;
    let mut out = format!("{}\n", membership_name(q.membership));
    if let Some(p) = q.witness {
        out.push_str(&serde_json::to_string_pretty(&p).expect("path serializes"));
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub samples: usize,
    pub grid: GridSpec,
    pub seed: u64,
    pub threshold: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { samples: 10_000, grid: GridSpec::default(), seed: 0, threshold: 0.98 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub compared: usize,
    pub agreed: usize,
    /// Samples within `2 (dx + band)` of the analytic boundary.
    pub excluded_band: usize,
    /// Samples the oracle could not decide at its resolution.
    pub excluded_uncertain: usize,
    pub agreement: f64,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "agreement = {:.6}\nsamples = {}\ncompared = {}\nagreed = {}\nexcluded_band = {}\nexcluded_uncertain = {}",
            self.agreement, self.samples, self.compared, self.agreed, self.excluded_band, self.excluded_uncertain
        )
    }
}

/// Uniform samples inside the polygon.
pub fn sample_polygon(poly: &dubreach::ConvexPolygon, n: usize, rng: &mut impl Rng) -> Vec<Point> {
    let (lo, hi) = poly.bounding_box();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if poly.contains_point(p) {
            out.push(p);
        }
    }
    out
}

pub fn verify(inst: &Instance, opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    opts.grid.validate()?;
    let r = reach(&inst.polygon, &inst.start)?;
    let grid = oracle_reach(&inst.polygon, &inst.start, &opts.grid)?;
    let band = 2.0 * (opts.grid.dx + inst.tolerance().band);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rep = VerifyReport {
        samples: opts.samples,
        compared: 0,
        agreed: 0,
        excluded_band: 0,
        excluded_uncertain: 0,
        agreement: 1.0,
    };
    for p in sample_polygon(&inst.polygon, opts.samples, &mut rng) {
        if r.region.boundary_distance(p) < band {
            rep.excluded_band += 1;
            continue;
        }
        let oracle = match grid.query(p) {
            OracleAnswer::Reachable => true,
            OracleAnswer::Unreachable => false,
            OracleAnswer::Uncertain => {
                rep.excluded_uncertain += 1;
                continue;
            }
        };
        rep.compared += 1;
        if r.region.contains_point(p) == oracle {
            rep.agreed += 1;
        }
    }
    if rep.compared > 0 {
        rep.agreement = rep.agreed as f64 / rep.compared as f64;
    }
    Ok(rep)
}

pub fn cmd_verify(inst: &Instance, opts: &VerifyOptions) -> Result<String, CliError> {
    let rep = verify(inst, opts)?;
    let text = format!("{rep}\nthreshold = {}\n", opts.threshold);
    if rep.agreement < opts.threshold {
        return Err(CliError { code: EXIT_VERIFY, message: format!("{text}agreement below threshold") });
    }
    Ok(text)
}

pub fn cmd_svg(inst: &Instance, out: &Path, witness_target: Option<Point>) -> Result<String, CliError> {
    let r = reach(&inst.polygon, &inst.start)?;
    let witness = match witness_target {
        Some(t) => Some(witness_from(&r, t)?.ok_or_else(|| CliError {
            code: EXIT_WITNESS,
            message: format!("no witness: ({}, {}) is not reachable", t.x, t.y),
        })?),
        None => None,
    };
    write_file(out, &svg::render(&r, witness.as_ref()))?;
    Ok(format!("wrote {}\n", out.display()))
}
