//! Structured verification reports and suite drivers.
//!
//! Every suite produces an ordered list of case records; a suite passes iff
//! no non-vacuous case fails. Reports serialize to JSON with a stable field
//! order so that identical configurations reproduce identical documents
//! (timing excluded).

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use serde::Serialize;

use crate::affine_weyl::AffineWeylGroup;
use crate::basic_rep::BasicRep;
use crate::coeff::{CoeffCtx, TauAssignment, Weight};
use crate::poly_rep::LevelledAction;
use crate::root_data::{build_root_system, cartan_determinant, parabolic_subsystem, RootSystemSpec};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Vacuous,
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseStatus::Pass => write!(f, "PASS"),
            CaseStatus::Fail => write!(f, "FAIL"),
            CaseStatus::Vacuous => write!(f, "VACUOUS"),
        }
    }
}

/// One verified relation instance.
#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub relation: String,
    pub params: String,
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CaseRecord {
    pub fn pass(id: impl Into<String>, relation: impl Into<String>, params: impl Into<String>) -> Self {
        CaseRecord {
            id: id.into(),
            relation: relation.into(),
            params: params.into(),
            status: CaseStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(
        id: impl Into<String>,
        relation: impl Into<String>,
        params: impl Into<String>,
        witness: String,
    ) -> Self {
        CaseRecord {
            id: id.into(),
            relation: relation.into(),
            params: params.into(),
            status: CaseStatus::Fail,
            witness: Some(witness),
        }
    }

    pub fn vacuous(
        id: impl Into<String>,
        relation: impl Into<String>,
        params: impl Into<String>,
        note: String,
    ) -> Self {
        CaseRecord {
            id: id.into(),
            relation: relation.into(),
            params: params.into(),
            status: CaseStatus::Vacuous,
            witness: Some(note),
        }
    }

    pub fn check(
        id: impl Into<String>,
        relation: impl Into<String>,
        params: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(id, relation, params)
        } else {
            Self::fail(id, relation, params, witness())
        }
    }
}

/// Root system descriptor echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct SpecDescriptor {
    pub family: String,
    pub rank: usize,
    pub twist: String,
}

impl SpecDescriptor {
    pub fn of(spec: &RootSystemSpec) -> Self {
        SpecDescriptor { family: spec.family.to_string(), rank: spec.rank, twist: spec.twist.to_string() }
    }
}

/// A full suite report: the JSON schema of the command line interface.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub spec: SpecDescriptor,
    pub seed: u64,
    pub cases: Vec<CaseRecord>,
    pub timing_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != CaseStatus::Fail)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} on {}{} ({}), seed {}\n",
            self.suite, self.spec.family, self.spec.rank, self.spec.twist, self.seed
        ));
        for c in &self.cases {
            out.push_str(&format!("  [{}] {} {} ({})\n", c.status, c.id, c.relation, c.params));
            if c.status == CaseStatus::Fail {
                if let Some(w) = &c.witness {
                    out.push_str(&format!("    witness: {}\n", w));
                }
            }
        }
        let (p, f, v) = self.tally();
        out.push_str(&format!("  {} pass, {} fail, {} vacuous, {} ms\n", p, f, v, self.timing_ms));
        out
    }

    pub fn tally(&self) -> (usize, usize, usize) {
        let mut p = 0;
        let mut f = 0;
        let mut v = 0;
        for c in &self.cases {
            match c.status {
                CaseStatus::Pass => p += 1,
                CaseStatus::Fail => f += 1,
                CaseStatus::Vacuous => v += 1,
            }
        }
        (p, f, v)
    }
}

/// Which verification suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Relations,
    Triangularity,
    Pbw,
    Polynomial,
    Parabolic,
    Omega,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "relations" => Some(Suite::Relations),
            "triangularity" => Some(Suite::Triangularity),
            "pbw" => Some(Suite::Pbw),
            "polynomial" => Some(Suite::Polynomial),
            "parabolic" => Some(Suite::Parabolic),
            "omega" => Some(Suite::Omega),
            _ => None,
        }
    }

    pub fn all() -> Vec<Suite> {
        vec![Suite::Relations, Suite::Triangularity, Suite::Pbw, Suite::Polynomial, Suite::Parabolic, Suite::Omega]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Triangularity => "triangularity",
            Suite::Pbw => "pbw",
            Suite::Polynomial => "polynomial",
            Suite::Parabolic => "parabolic",
            Suite::Omega => "omega",
        }
    }
}

/// Cross-relation test set selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSet {
    Generators,
    Extended,
}

impl CrossSet {
    pub fn parse(s: &str) -> Option<CrossSet> {
        match s {
            "generators" => Some(CrossSet::Generators),
            "extended" => Some(CrossSet::Extended),
            _ => None,
        }
    }
}

/// Full run configuration for the suite driver.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: RootSystemSpec,
    pub suites: Vec<Suite>,
    pub max_length: usize,
    pub cross_set: CrossSet,
    pub level: i64,
    pub box_bound: i64,
    pub seed: u64,
    /// Re-run each suite at a seeded random specialization and append a
    /// consistency case comparing outcomes.
    pub specialize_check: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !self.spec.admissible() {
            return Err(Error::InvalidConfig(format!("inadmissible root system {}", self.spec)));
        }
        if self.level <= 0 {
            return Err(Error::InvalidConfig("level must be positive".into()));
        }
        if self.box_bound < 0 {
            return Err(Error::InvalidConfig("box bound must be nonnegative".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::InvalidConfig("no suites selected".into()));
        }
        Ok(())
    }
}

/// Draws a random nonzero rational assignment away from -1, 0 and 1.
pub fn random_assignment(seed: u64) -> TauAssignment {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> BigRational {
        loop {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=9);
            if num == 0 || num.abs() == den {
                continue;
            }
            return BigRational::new(num.into(), den.into());
        }
    };
    TauAssignment::new(draw(), draw()).expect("sampler never draws zero")
}

/// Default cross-relation sample weights: +-omega_i, extended with pairwise
/// sums and differences.
pub fn cross_weights(rank: usize, set: CrossSet) -> Vec<Weight> {
    let mut out = Vec::new();
    for i in 0..rank {
        out.push(Weight::fundamental(rank, i, 1));
        out.push(Weight::fundamental(rank, i, -1));
    }
    if set == CrossSet::Extended {
        for i in 0..rank {
            for j in i..rank {
                out.push(Weight::fundamental(rank, i, 1).add(&Weight::fundamental(rank, j, 1)));
                if i != j {
                    out.push(Weight::fundamental(rank, i, 1).sub(&Weight::fundamental(rank, j, 1)));
                }
            }
        }
    }
    out
}

/// Structural checks on the vertex-avoiding finite subsystems.
pub fn parabolic_cases(group: &AffineWeylGroup) -> Vec<CaseRecord> {
    let rs = &group.rs;
    let mut cases = Vec::new();
    for k in 0..=rs.rank {
        let sub = parabolic_subsystem(rs, k);
        let params = format!("k={}, members={}, components={}", k, sub.members.len(), sub.components.len());
        cases.push(CaseRecord::check(
            format!("parabolic-closure-k{}", k),
            "parabolic-subsystem-closed",
            params.clone(),
            sub.is_reflection_closed(rs),
            || "orbit not closed under member reflections".to_string(),
        ));
        cases.push(CaseRecord::check(
            format!("parabolic-rank-k{}", k),
            "parabolic-subsystem-rank",
            params.clone(),
            sub.rank(rs) == rs.rank,
            || format!("rank {} instead of {}", sub.rank(rs), rs.rank),
        ));
        cases.push(CaseRecord::check(
            format!("parabolic-positivity-k{}", k),
            "parabolic-basis-generates",
            params.clone(),
            sub.basis_generates_positively(rs),
            || "a member is not a one-signed integer combination of the basis".to_string(),
        ));
        cases.push(CaseRecord::check(
            format!("parabolic-orthogonal-k{}", k),
            "parabolic-components-orthogonal",
            params,
            sub.components_orthogonal(rs),
            || "component decomposition is not orthogonal".to_string(),
        ));
    }
    cases
}

/// The dual lattice index, exposed for the omega suite.
pub fn lattice_index(group: &AffineWeylGroup) -> u64 {
    cartan_determinant(&group.rs)
}

/// Case list for one suite under one coefficient context.
fn suite_cases(suite: Suite, group: &Arc<AffineWeylGroup>, ctx: &CoeffCtx, config: &RunConfig) -> Vec<CaseRecord> {
    let rep = BasicRep::new(Arc::clone(group), ctx.clone());
    match suite {
        Suite::Relations => rep.relations_suite(config.cross_set),
        Suite::Triangularity => rep.triangularity_suite(config.max_length),
        Suite::Pbw => rep.pbw_suite(config.box_bound, config.max_length),
        Suite::Polynomial => {
            let act = LevelledAction::new(Arc::clone(&group.rs), config.level);
            crate::poly_rep::polynomial_suite(group, ctx, &act, config.box_bound)
        }
        Suite::Parabolic => rep.parabolic_suite(),
        Suite::Omega => rep.omega_suite(),
    }
}

/// Runs the configured suites, producing one report per suite.
pub fn run_suites(config: &RunConfig) -> Result<Vec<VerificationReport>, Error> {
    config.validate()?;
    let rs = Arc::new(build_root_system(config.spec)?);
    let group = Arc::new(AffineWeylGroup::new(Arc::clone(&rs)));
    let sym = CoeffCtx::symbolic(Arc::clone(&rs));
    let mut reports = Vec::new();
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    for suite in suites {
        let started = Instant::now();
        let mut cases = suite_cases(suite, &group, &sym, config);
        if config.specialize_check {
            let vals = random_assignment(config.seed);
            let spe = CoeffCtx::specialized(Arc::clone(&rs), vals.clone())
                .expect("sampler avoids degenerate assignments");
            let spe_cases = suite_cases(suite, &group, &spe, config);
            let same = cases.len() == spe_cases.len()
                && cases.iter().zip(&spe_cases).all(|(a, b)| a.id == b.id && a.status == b.status);
            let params = format!("ts={}, tl={}", vals.short, vals.long);
            let diffs: Vec<String> = cases
                .iter()
                .zip(&spe_cases)
                .filter(|(a, b)| a.id != b.id || a.status != b.status)
                .map(|(a, b)| format!("{}: {} vs {}", a.id, a.status, b.status))
                .collect();
            cases.push(CaseRecord::check(
                format!("{}-specialized-consistency", suite.name()),
                "specialization-consistency",
                params,
                same,
                || format!("diverging cases: {}", diffs.join("; ")),
            ));
        }
        reports.push(VerificationReport {
            suite: suite.name().to_string(),
            spec: SpecDescriptor::of(&config.spec),
            seed: config.seed,
            cases,
            timing_ms: started.elapsed().as_millis(),
        });
    }
    Ok(reports)
}
