//! Seeded verification suites.
//!
//! Every check belongs to a suite and is tagged with the acceptance criterion
//! it exercises. A check stops at its first failing case, which is the one
//! reported; failures are emitted sorted by case id.

mod artinhasse;
mod diagrams;
mod elem;
mod ghosts;
mod identities;
mod indres;
mod qpolys;
mod qrings;
mod rings;

use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::Serialize;
use witt_burnside::{BuildOptions, FiniteGroup, GroupContext, RingSpec, TruncationSet};

use crate::args::VerifyArgs;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Rings,
    Ghosts,
    Diagrams,
    Indres,
    Qpolys,
    Qrings,
    Artinhasse,
    CyclicIdentities,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Rings,
        Suite::Ghosts,
        Suite::Diagrams,
        Suite::Indres,
        Suite::Qpolys,
        Suite::Qrings,
        Suite::Artinhasse,
        Suite::CyclicIdentities,
    ];

    pub fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "rings" => Suite::Rings,
            "ghosts" => Suite::Ghosts,
            "diagrams" => Suite::Diagrams,
            "indres" => Suite::Indres,
            "qpolys" => Suite::Qpolys,
            "qrings" => Suite::Qrings,
            "artinhasse" => Suite::Artinhasse,
            "cyclic-identities" => Suite::CyclicIdentities,
            "all" => Suite::All,
            _ => return Err(CliError::Usage(format!("unknown suite '{s}'"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rings => "rings",
            Suite::Ghosts => "ghosts",
            Suite::Diagrams => "diagrams",
            Suite::Indres => "indres",
            Suite::Qpolys => "qpolys",
            Suite::Qrings => "qrings",
            Suite::Artinhasse => "artinhasse",
            Suite::CyclicIdentities => "cyclic-identities",
            Suite::All => "all",
        }
    }

    fn checks(self) -> Vec<Check> {
        match self {
            Suite::Rings => rings::checks(),
            Suite::Ghosts => ghosts::checks(),
            Suite::Diagrams => diagrams::checks(),
            Suite::Indres => indres::checks(),
            Suite::Qpolys => qpolys::checks(),
            Suite::Qrings => qrings::checks(),
            Suite::Artinhasse => artinhasse::checks(),
            Suite::CyclicIdentities => identities::checks(),
            Suite::All => Suite::ALL.iter().flat_map(|s| s.checks()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

/// The report document printed by `wb verify`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases_run: u64,
    pub failures: Vec<Failure>,
    pub seed: u64,
    pub runtime_ms: u64,
}

/// Result of one check family.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub criterion: u8,
    pub cases: u64,
    pub failure: Option<Failure>,
}

pub struct Run {
    pub suite: Suite,
    pub seed: u64,
    pub outcomes: Vec<CheckOutcome>,
    pub runtime_ms: u64,
}

impl Run {
    pub fn report(&self) -> Report {
        let mut failures: Vec<Failure> = self.outcomes.iter().filter_map(|o| o.failure.clone()).collect();
        failures.sort_by(|a, b| a.case.cmp(&b.case));
        Report {
            suite: self.suite.name().to_string(),
            cases_run: self.outcomes.iter().map(|o| o.cases).sum(),
            failures,
            seed: self.seed,
            runtime_ms: self.runtime_ms,
        }
    }

    /// Outcomes for one acceptance criterion.
    pub fn criterion(&self, c: u8) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(move |o| o.criterion == c)
    }
}

pub(crate) struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub criterion: u8,
    pub default_size: usize,
    pub run: fn(&Env, &mut Tally),
}

/// Shared state of a run: seed, sample count and memoized groups.
pub struct Env {
    pub seed: u64,
    pub size: Option<usize>,
    pub inject_fault: bool,
    groups: Mutex<HashMap<String, Arc<GroupContext>>>,
    truncs: Mutex<HashMap<Vec<u64>, Arc<TruncationSet>>>,
}

impl Env {
    pub fn new(seed: u64, size: Option<usize>, inject_fault: bool) -> Self {
        Env { seed, size, inject_fault, groups: Mutex::default(), truncs: Mutex::default() }
    }

    pub(crate) fn group(&self, name: &str) -> Arc<GroupContext> {
        let mut g = self.groups.lock().expect("group cache");
        g.entry(name.to_string())
            .or_insert_with(|| {
                let group = FiniteGroup::parse(name).expect("suite groups are valid");
                let ctx = GroupContext::with_options(group, BuildOptions { inject_fault: self.inject_fault });
                for op in [witt_burnside::Op::Add, witt_burnside::Op::Mul, witt_burnside::Op::Neg] {
                    crate::cache::preload(&ctx, op);
                }
                ctx
            })
            .clone()
    }

    /// Truncation sets are shared so derived polynomials are reused across checks.
    pub(crate) fn trunc(&self, members: &[u64]) -> Arc<TruncationSet> {
        let mut t = self.truncs.lock().expect("truncation cache");
        t.entry(members.to_vec()).or_insert_with(|| TruncationSet::new(members).expect("valid truncation")).clone()
    }

    pub(crate) fn div(&self, n: u64) -> Arc<TruncationSet> {
        self.trunc(&witt_burnside::divisors(n))
    }

    pub(crate) fn ring(&self, s: &str) -> Arc<RingSpec> {
        RingSpec::parse(s).expect("suite rings are valid").arc()
    }
}

/// Case counter and first-failure record for one check family.
pub struct Tally {
    prefix: String,
    size: usize,
    cases: u64,
    failure: Option<Failure>,
}

impl Tally {
    /// Samples per configuration.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn fail(&mut self, case: &str, lhs: String, rhs: String) {
        self.failure = Some(Failure { case: format!("{}/{case}", self.prefix), lhs, rhs });
    }

    /// Evaluates both sides and records the case; skipped once the family has failed.
    pub fn eval<T: PartialEq + Debug>(
        &mut self,
        case: impl FnOnce() -> String,
        sides: impl FnOnce() -> witt_burnside::Result<(T, T)>,
    ) {
        if self.failed() {
            return;
        }
        self.cases += 1;
        match sides() {
            Ok((l, r)) if l == r => {}
            Ok((l, r)) => self.fail(&case(), format!("{l:?}"), format!("{r:?}")),
            Err(e) => self.fail(&case(), format!("error: {e}"), "no error".into()),
        }
    }

    pub fn truth(&mut self, case: impl FnOnce() -> String, ok: bool, detail: impl FnOnce() -> (String, String)) {
        if self.failed() {
            return;
        }
        self.cases += 1;
        if !ok {
            let (l, r) = detail();
            self.fail(&case(), l, r);
        }
    }
}

fn run_checks(suite: Suite, checks: Vec<Check>, env: &Env) -> Run {
    let start = Instant::now();
    let outcomes = checks
        .into_iter()
        .map(|c| {
            let mut tally = Tally {
                prefix: format!("{}/{}", c.suite, c.name),
                size: env.size.unwrap_or(c.default_size),
                cases: 0,
                failure: None,
            };
            (c.run)(env, &mut tally);
            CheckOutcome { suite: c.suite, name: c.name, criterion: c.criterion, cases: tally.cases, failure: tally.failure }
        })
        .collect();
    Run { suite, seed: env.seed, outcomes, runtime_ms: start.elapsed().as_millis() as u64 }
}

/// `(suite, check, criterion)` for every registered check.
pub fn registry() -> Vec<(&'static str, &'static str, u8)> {
    Suite::All.checks().into_iter().map(|c| (c.suite, c.name, c.criterion)).collect()
}

/// The criterion of the check a failure case id belongs to.
pub fn criterion_of(case: &str) -> Option<u8> {
    registry().into_iter().find(|(s, n, _)| case.starts_with(&format!("{s}/{n}/"))).map(|(_, _, c)| c)
}

pub fn run(suite: Suite, env: &Env) -> Run {
    run_checks(suite, suite.checks(), env)
}

pub fn run_cli(args: &VerifyArgs) -> Result<Report, CliError> {
    let suite = Suite::parse(&args.suite)?;
    if args.size == Some(0) {
        return Err(CliError::Usage("--size must be positive".into()));
    }
    let env = Env::new(args.seed, args.size, args.inject_fault);
    Ok(run(suite, &env).report())
}
