//! Machine checks of the structural results on saddles, on single games and
//! on seeded random campaigns.
//!
//! Every check here verifies a universally quantified statement, so a single
//! failure is a counterexample, not noise. Campaigns never stop early; they
//! tally every trial and keep a replayable witness for the first failure of
//! each check.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dominance::DominanceMode;
use crate::equilibrium::{embed_strategy, game_value, is_nash, nash_equilibrium, MixedStrategyPair};
use crate::error::{Error, Result};
use crate::game::{ActionProduct, ZeroSumGame};
use crate::generate::{derive_seed, generate, GeneratorConfig, GeneratorKind};
use crate::rational::{format_rational, Rational};
use crate::saddle::{
    cross_products, enumerate_gsps, enumerate_saddles, is_gsp, local_subproducts,
    permutation_equivalent, EnumerationLimits, PermutationWitness, SaddleSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Claim {
    #[serde(rename = "interchangeability")]
    Interchangeability,
    #[serde(rename = "equivalence")]
    Equivalence,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Interchangeability => "interchangeability",
            Claim::Equivalence => "equivalence",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub claim: Claim,
    pub first: ActionProduct,
    pub second: ActionProduct,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub first: usize,
    pub second: usize,
    pub witness: PermutationWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub game_digest: String,
    pub saddles: SaddleSet,
    pub interchange_ok: bool,
    pub equivalence_ok: bool,
    /// Permutation witnesses for saddle pairs `first < second` (indices into
    /// `saddles`).
    pub witnesses: Vec<PairWitness>,
    pub violations: Vec<Violation>,
}

impl TheoremVerdict {
    pub fn passed(&self) -> bool {
        self.interchange_ok && self.equivalence_ok
    }
}

/// Interchangeability and equivalence of all saddles under `mode`.
///
/// For every pair of saddles both cross products must again be saddles, and
/// the two saddle subgames must coincide up to row and column permutations
/// (hence share dimensions and entry multisets). Under weak dominance this
/// always holds; under `WeakRequireStrict` it can fail and the failures are
/// reported, not raised.
pub fn check_theorem(game: &ZeroSumGame, mode: DominanceMode) -> Result<TheoremVerdict> {
    let saddles = enumerate_saddles(game, mode)?;
    let subgames: Vec<ZeroSumGame> =
        saddles.iter().map(|s| game.subgame(s)).collect::<Result<_>>()?;
    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    for (i, s1) in saddles.iter().enumerate() {
        for (j, s2) in saddles.iter().enumerate().skip(i + 1) {
            let (x, y) = cross_products(s1, s2);
            for cross in [&x, &y] {
                if !saddles.contains(cross) {
                    violations.push(Violation {
                        claim: Claim::Interchangeability,
                        first: s1.clone(),
                        second: s2.clone(),
                        detail: format!("cross product {cross} is not a saddle"),
                    });
                }
            }
            match permutation_equivalent(&subgames[i], &subgames[j]) {
                Some(witness) => witnesses.push(PairWitness { first: i, second: j, witness }),
                None => {
                    let (p1, p2) = (s1.shape(), s2.shape());
                    let detail = if p1 != p2 {
                        format!("shapes differ: {}x{} vs {}x{}", p1.0, p1.1, p2.0, p2.1)
                    } else if sorted_entries(&subgames[i]) != sorted_entries(&subgames[j]) {
                        "entry multisets differ".to_string()
                    } else {
                        "no row/column permutation maps one subgame onto the other".to_string()
                    };
                    violations.push(Violation {
                        claim: Claim::Equivalence,
                        first: s1.clone(),
                        second: s2.clone(),
                        detail,
                    });
                }
            }
        }
    }
    let interchange_ok = !violations.iter().any(|v| v.claim == Claim::Interchangeability);
    let equivalence_ok = !violations.iter().any(|v| v.claim == Claim::Equivalence);
    Ok(TheoremVerdict {
        game_digest: game.digest(),
        saddles,
        interchange_ok,
        equivalence_ok,
        witnesses,
        violations,
    })
}

fn sorted_entries(g: &ZeroSumGame) -> Vec<&Rational> {
    let mut v: Vec<&Rational> = g.entries().iter().collect();
    v.sort();
    v
}

/// Exactly one strict saddle.
pub fn check_strict_uniqueness(game: &ZeroSumGame) -> Result<bool> {
    Ok(enumerate_saddles(game, DominanceMode::Strict)?.len() == 1)
}

/// Exactly one weak saddle; only defined for confrontation games.
pub fn check_confrontation_uniqueness(game: &ZeroSumGame) -> Result<bool> {
    if !game.is_confrontation() {
        return Err(Error::input("not a confrontation game"));
    }
    Ok(enumerate_saddles(game, DominanceMode::Weak)?.len() == 1)
}

/// For games with pairwise-distinct payoffs: exactly one weak saddle, equal
/// to the strict saddle.
pub fn check_distinct_uniqueness(game: &ZeroSumGame) -> Result<bool> {
    let distinct: BTreeSet<&Rational> = game.entries().iter().collect();
    if distinct.len() != game.entries().len() {
        return Err(Error::input("payoffs are not pairwise distinct"));
    }
    let weak = enumerate_saddles(game, DominanceMode::Weak)?;
    let strict = enumerate_saddles(game, DominanceMode::Strict)?;
    Ok(weak.len() == 1 && weak.saddles == strict.saddles)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaddleEquilibrium {
    pub saddle: ActionProduct,
    pub subgame_value: Rational,
    pub value_matches: bool,
    /// Subgame equilibrium embedded into the full game.
    pub embedded: MixedStrategyPair,
    pub embedded_is_nash: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashVerdict {
    pub game_digest: String,
    pub value: Rational,
    pub saddles: Vec<SaddleEquilibrium>,
}

impl NashVerdict {
    pub fn passed(&self) -> bool {
        self.saddles.iter().all(|s| s.value_matches && s.embedded_is_nash)
    }
}

/// Each weak saddle's subgame has the game's value, and an equilibrium of the
/// subgame, padded with zeros, is an equilibrium of the whole game.
pub fn check_nash_consistency(game: &ZeroSumGame) -> Result<NashVerdict> {
    let value = game_value(game);
    let saddles = enumerate_saddles(game, DominanceMode::Weak)?
        .saddles
        .into_iter()
        .map(|saddle| {
            let sub = game.subgame(&saddle)?;
            let eq = nash_equilibrium(&sub);
            let embedded = embed_strategy(&eq, &saddle, game.rows(), game.cols())?;
            let embedded_is_nash = is_nash(game, &embedded)?;
            Ok(SaddleEquilibrium {
                value_matches: eq.value == value,
                subgame_value: eq.value,
                saddle,
                embedded,
                embedded_is_nash,
            })
        })
        .collect::<Result<_>>()?;
    Ok(NashVerdict { game_digest: game.digest(), value, saddles })
}

/// For a weak GSP `outer` containing `inner`: `inner` is a weak GSP of the
/// game iff it is one of the subgame on `outer`.
pub fn check_lemma1(game: &ZeroSumGame, outer: &ActionProduct, inner: &ActionProduct) -> Result<bool> {
    outer.validate_for(game)?;
    if !inner.is_subproduct_of(outer) {
        return Err(Error::input("inner product is not contained in the outer product"));
    }
    if !is_gsp(game, outer, DominanceMode::Weak)? {
        return Err(Error::input("outer product is not a weak GSP"));
    }
    let in_game = is_gsp(game, inner, DominanceMode::Weak)?;
    let sub = game.subgame(outer)?;
    let in_subgame = is_gsp(&sub, &outer.localize(inner)?, DominanceMode::Weak)?;
    Ok(in_game == in_subgame)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Check {
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "strict-unique")]
    StrictUnique,
    #[serde(rename = "confrontation-unique")]
    ConfrontationUnique,
    #[serde(rename = "distinct-unique")]
    DistinctUnique,
    #[serde(rename = "lemma1")]
    Lemma1,
    #[serde(rename = "nash-consistency")]
    NashConsistency,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Theorem1,
        Check::StrictUnique,
        Check::ConfrontationUnique,
        Check::DistinctUnique,
        Check::Lemma1,
        Check::NashConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::StrictUnique => "strict-unique",
            Check::ConfrontationUnique => "confrontation-unique",
            Check::DistinctUnique => "distinct-unique",
            Check::Lemma1 => "lemma1",
            Check::NashConsistency => "nash-consistency",
        }
    }

    /// Checks that make sense for a generator when none are requested.
    pub fn defaults_for(kind: GeneratorKind) -> Vec<Check> {
        let mut checks = vec![Check::Theorem1, Check::StrictUnique];
        match kind {
            GeneratorKind::Confrontation | GeneratorKind::Tournament => {
                checks.push(Check::ConfrontationUnique)
            }
            GeneratorKind::DistinctInt => checks.push(Check::DistinctUnique),
            GeneratorKind::UniformInt => {}
        }
        checks
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::input(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub trials: usize,
    /// Template; its seed is replaced per trial.
    pub generator: GeneratorConfig,
    pub checks: Vec<Check>,
    pub seed: u64,
}

impl TrialConfig {
    pub fn new(trials: usize, generator: GeneratorConfig, checks: Vec<Check>, seed: u64) -> Self {
        TrialConfig { trials, generator, checks, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::input("a campaign needs at least one trial"));
        }
        if self.checks.is_empty() {
            return Err(Error::input("a campaign needs at least one check"));
        }
        self.generator.validate()?;
        let limits = EnumerationLimits::default();
        if self.generator.rows > limits.max_rows || self.generator.cols > limits.max_cols {
            return Err(Error::Capacity {
                rows: self.generator.rows,
                cols: self.generator.cols,
                max_rows: limits.max_rows,
                max_cols: limits.max_cols,
            });
        }
        let kind = self.generator.kind;
        if self.checks.contains(&Check::ConfrontationUnique)
            && !matches!(kind, GeneratorKind::Confrontation | GeneratorKind::Tournament)
        {
            return Err(Error::input(
                "confrontation-unique needs a confrontation or tournament generator",
            ));
        }
        if self.checks.contains(&Check::DistinctUnique) && kind != GeneratorKind::DistinctInt {
            return Err(Error::input("distinct-unique needs the distinct generator"));
        }
        Ok(())
    }

    pub fn trial_seed(&self, trial: usize) -> u64 {
        derive_seed(self.seed, trial as u64)
    }

    /// The game of trial `trial`; replays any reported witness.
    pub fn trial_game(&self, trial: usize) -> Result<ZeroSumGame> {
        generate(&self.generator.with_seed(self.trial_seed(trial)))
    }

    fn checks_sorted(&self) -> Vec<Check> {
        let set: BTreeSet<Check> = self.checks.iter().copied().collect();
        set.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub trial: usize,
    pub trial_seed: u64,
    /// Row-major payoffs as canonical rational strings.
    pub game: Vec<Vec<String>>,
    pub products: Vec<ActionProduct>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub check: Check,
    pub passed: usize,
    pub failed: usize,
    pub failing_trials: Vec<usize>,
    pub first_failure: Option<FailureWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub trials: usize,
    pub generator: GeneratorConfig,
    pub checks: Vec<CheckSummary>,
    pub elapsed_ms: u64,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn summary(&self, check: Check) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.check == check)
    }
}

/// Outcome of one check on one trial: `None` on success.
pub type TrialOutcome = Vec<(Check, Option<FailureWitness>)>;

/// Runs every enabled check on trial `trial` of the campaign.
pub fn run_trial(config: &TrialConfig, trial: usize) -> TrialOutcome {
    let seed = config.trial_seed(trial);
    let game = config.trial_game(trial);
    config
        .checks_sorted()
        .into_iter()
        .map(|check| {
            let failure = match &game {
                Ok(game) => run_check(check, game, seed),
                Err(e) => Some(Failure::new(e.to_string())),
            };
            let witness = failure.map(|f| FailureWitness {
                trial,
                trial_seed: seed,
                game: game.as_ref().map(matrix_strings).unwrap_or_default(),
                products: f.products,
                detail: f.detail,
            });
            (check, witness)
        })
        .collect()
}

struct Failure {
    products: Vec<ActionProduct>,
    detail: String,
}

impl Failure {
    fn new(detail: impl Into<String>) -> Self {
        Failure { products: Vec::new(), detail: detail.into() }
    }

    fn with(products: Vec<ActionProduct>, detail: impl Into<String>) -> Self {
        Failure { products, detail: detail.into() }
    }
}

fn run_check(check: Check, game: &ZeroSumGame, trial_seed: u64) -> Option<Failure> {
    let result: Result<Option<Failure>> = (|| match check {
        Check::Theorem1 => {
            let v = check_theorem(game, DominanceMode::Weak)?;
            Ok(v.violations.first().map(|x| {
                Failure::with(vec![x.first.clone(), x.second.clone()], format!("{}: {}", x.claim, x.detail))
            }))
        }
        Check::StrictUnique => {
            let set = enumerate_saddles(game, DominanceMode::Strict)?;
            Ok((set.len() != 1)
                .then(|| Failure::with(set.saddles.clone(), format!("{} strict saddles", set.len()))))
        }
        Check::ConfrontationUnique => {
            if !game.is_confrontation() {
                return Ok(Some(Failure::new("generated game is not a confrontation game")));
            }
            let set = enumerate_saddles(game, DominanceMode::Weak)?;
            Ok((set.len() != 1)
                .then(|| Failure::with(set.saddles.clone(), format!("{} weak saddles", set.len()))))
        }
        Check::DistinctUnique => Ok((!check_distinct_uniqueness(game)?).then(|| {
            let weak = enumerate_saddles(game, DominanceMode::Weak).map(|s| s.saddles).unwrap_or_default();
            Failure::with(weak, "weak saddles differ from the unique strict saddle")
        })),
        Check::Lemma1 => {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(trial_seed, 1));
            let (outer, inner) = random_lemma1_pair(game, &mut rng)?;
            Ok((!check_lemma1(game, &outer, &inner)?)
                .then(|| Failure::with(vec![outer, inner], "biconditional fails")))
        }
        Check::NashConsistency => {
            let v = check_nash_consistency(game)?;
            Ok(v.saddles.iter().find(|s| !(s.value_matches && s.embedded_is_nash)).map(|s| {
                Failure::with(
                    vec![s.saddle.clone()],
                    format!(
                        "subgame value {} vs game value {}, embedded equilibrium is_nash = {}",
                        format_rational(&s.subgame_value),
                        format_rational(&v.value),
                        s.embedded_is_nash
                    ),
                )
            }))
        }
    })();
    result.unwrap_or_else(|e| Some(Failure::new(e.to_string())))
}

/// A uniformly chosen weak GSP and a product nested inside it: half the time
/// another weak GSP of the game, otherwise an arbitrary sub-product.
pub fn random_lemma1_pair(game: &ZeroSumGame, rng: &mut impl Rng) -> Result<(ActionProduct, ActionProduct)> {
    let gsps = enumerate_gsps(game, DominanceMode::Weak, EnumerationLimits::default())?;
    let outer = gsps[rng.random_range(0..gsps.len())].clone();
    let nested_gsps: Vec<&ActionProduct> = gsps.iter().filter(|g| g.is_subproduct_of(&outer)).collect();
    let inner = if rng.random::<bool>() {
        nested_gsps[rng.random_range(0..nested_gsps.len())].clone()
    } else {
        let candidates: Vec<ActionProduct> = local_subproducts(&outer).collect();
        candidates[rng.random_range(0..candidates.len())].clone()
    };
    Ok((outer, inner))
}

fn matrix_strings(game: &ZeroSumGame) -> Vec<Vec<String>> {
    (0..game.rows())
        .map(|r| game.row(r).iter().map(format_rational).collect())
        .collect()
}

/// Runs a campaign on the global thread pool.
pub fn run_trials(config: &TrialConfig) -> Result<CampaignReport> {
    run_trials_with_jobs(config, None)
}

/// Runs a campaign on `jobs` worker threads (global pool when `None`).
/// The report does not depend on the thread count, apart from `elapsed_ms`.
pub fn run_trials_with_jobs(config: &TrialConfig, jobs: Option<usize>) -> Result<CampaignReport> {
    config.validate()?;
    let start = Instant::now();
    let run = || -> Vec<TrialOutcome> {
        (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect()
    };
    let outcomes = match jobs {
        Some(0) => return Err(Error::input("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::input(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    };

    let mut checks: Vec<CheckSummary> = config
        .checks_sorted()
        .into_iter()
        .map(|check| CheckSummary { check, passed: 0, failed: 0, failing_trials: Vec::new(), first_failure: None })
        .collect();
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        for (summary, (check, failure)) in checks.iter_mut().zip(outcome) {
            debug_assert_eq!(summary.check, check);
            match failure {
                None => summary.passed += 1,
                Some(w) => {
                    summary.failed += 1;
                    summary.failing_trials.push(trial);
                    summary.first_failure.get_or_insert(w);
                }
            }
        }
    }
    Ok(CampaignReport {
        seed: config.seed,
        trials: config.trials,
        generator: config.generator.clone(),
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
