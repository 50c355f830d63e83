//! Verification of Ramanujan-type congruences for the colored families.
//!
//! Every check here is finite: a claim `family(m n + r) ≡ 0 (mod m)` is tested
//! for `0 <= n < N` and the report records `N`. Only the dissection identity
//! is compared as exact integers.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::etaq::{eval_eta, parse_eta, pochhammer_f, theta_series, EtaExpression, ThetaFamilyId};
use crate::fixtures::SEVEN_DISSECTION_A3;
use crate::partitions::{ColoredFamilySpec, Family};
use crate::series::{ModSeries, Modulus, TruncatedSeries};

/// `(k, r)` with `a_k(7n + r) ≡ 0 (mod 7)`.
pub const SEVEN_CONGRUENCES: [(u32, u64); 5] = [(1, 5), (3, 2), (4, 4), (5, 6), (7, 3)];

/// `(m, r)` with `p(m n + r) ≡ 0 (mod m)`.
pub const RAMANUJAN_CONGRUENCES: [(u64, u64); 3] = [(5, 4), (7, 5), (11, 6)];

/// Smallest `upto` accepted by [`scan`].
pub const MIN_SCAN_RANGE: u64 = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("residue {residue} is out of range for modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
    #[error("no proof recipe for a_{0}; supported: 1, 3, 4, 5, 7")]
    UnsupportedFamily(u32),
    #[error("scan range {upto} is below the minimum of {MIN_SCAN_RANGE}")]
    RangeTooSmall { upto: u64 },
    #[error("stated congruence refuted: {failed}")]
    StatedClaimRefuted { failed: Box<ClaimReport>, reports: Vec<ClaimReport> },
}

/// Where a claim comes from. Only `Candidate` claims may legitimately fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimSource {
    Theorem,
    Corollary,
    Candidate,
}

impl ClaimSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimSource::Theorem => "theorem",
            ClaimSource::Corollary => "corollary",
            ClaimSource::Candidate => "candidate",
        }
    }

    pub fn is_stated(self) -> bool {
        self != ClaimSource::Candidate
    }
}

/// The published source of `spec(m n + r) ≡ 0 (mod m)`, if any.
pub fn stated_source(spec: ColoredFamilySpec, modulus: Modulus, residue: u64) -> ClaimSource {
    if spec.family() != Family::OddColored {
        return ClaimSource::Candidate;
    }
    let k = spec.colors();
    let m = modulus.get();
    if k == 1 && RAMANUJAN_CONGRUENCES.contains(&(m, residue)) {
        return ClaimSource::Theorem;
    }
    if m == 7 {
        let base = (k - 1) % 7 + 1;
        if SEVEN_CONGRUENCES.contains(&(base, residue)) {
            return if k == base { ClaimSource::Theorem } else { ClaimSource::Corollary };
        }
    }
    ClaimSource::Candidate
}

/// `spec(m n + r) ≡ 0 (mod m)` for all `n >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CongruenceClaim {
    pub spec: ColoredFamilySpec,
    pub modulus: Modulus,
    pub residue: u64,
    pub source: ClaimSource,
}

impl CongruenceClaim {
    pub fn new(
        spec: ColoredFamilySpec,
        modulus: Modulus,
        residue: u64,
        source: ClaimSource,
    ) -> Result<Self, CongruenceError> {
        if residue >= modulus.get() {
            return Err(CongruenceError::ResidueOutOfRange { residue, modulus: modulus.get() });
        }
        Ok(CongruenceClaim { spec, modulus, residue, source })
    }

    /// A claim labelled with its [`stated_source`].
    pub fn classified(spec: ColoredFamilySpec, modulus: Modulus, residue: u64) -> Result<Self, CongruenceError> {
        Self::new(spec, modulus, residue, stated_source(spec, modulus, residue))
    }
}

impl fmt::Display for CongruenceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}n+{}) ≡ 0 (mod {})", self.spec, self.modulus, self.residue, self.modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Counterexample {
    pub n: u64,
    /// The exact coefficient `spec(m n + r)`.
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClaimReport {
    pub claim: CongruenceClaim,
    /// `n` was checked over `0..checked_up_to`.
    pub checked_up_to: u64,
    /// Smallest violating `n`, if any.
    pub counterexample: Option<Counterexample>,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_record(&self) -> ClaimRecord {
        ClaimRecord::from(self)
    }

    pub const CSV_HEADER: [&'static str; 7] = ["family", "k", "modulus", "residue", "checked_upto", "holds", "source"];

    pub fn csv_row(&self) -> [String; 7] {
        [
            self.claim.spec.family().letter().to_string(),
            self.claim.spec.colors().to_string(),
            self.claim.modulus.to_string(),
            self.claim.residue.to_string(),
            self.checked_up_to.to_string(),
            self.holds().to_string(),
            self.claim.source.as_str().to_string(),
        ]
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.claim)?;
        match &self.counterexample {
            None => write!(f, "holds for 0 <= n < {}", self.checked_up_to)?,
            Some(c) => write!(f, "FAILS at n={} (value {})", c.n, c.value)?,
        }
        write!(f, " [{}]", self.claim.source.as_str())
    }
}

/// Wire form of a [`ClaimReport`]. Coefficients travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub family: String,
    pub k: u32,
    pub modulus: u64,
    pub residue: u64,
    pub checked_up_to: u64,
    pub holds: bool,
    pub counterexample: Option<CounterexampleRecord>,
    pub source: ClaimSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub n: u64,
    pub value: String,
}

impl From<&ClaimReport> for ClaimRecord {
    fn from(r: &ClaimReport) -> Self {
        ClaimRecord {
            family: r.claim.spec.family().letter().to_string(),
            k: r.claim.spec.colors(),
            modulus: r.claim.modulus.get(),
            residue: r.claim.residue,
            checked_up_to: r.checked_up_to,
            holds: r.holds(),
            counterexample: r
                .counterexample
                .as_ref()
                .map(|c| CounterexampleRecord { n: c.n, value: c.value.to_string() }),
            source: r.claim.source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed claim record: {0}")]
pub struct RecordError(String);

impl TryFrom<ClaimRecord> for ClaimReport {
    type Error = RecordError;

    fn try_from(r: ClaimRecord) -> Result<Self, RecordError> {
        let family = Family::from_letter(&r.family).ok_or_else(|| RecordError(format!("family {:?}", r.family)))?;
        let spec = ColoredFamilySpec::new(family, r.k).map_err(|e| RecordError(e.to_string()))?;
        let modulus = Modulus::new(r.modulus).map_err(|e| RecordError(e.to_string()))?;
        let claim = CongruenceClaim::new(spec, modulus, r.residue, r.source).map_err(|e| RecordError(e.to_string()))?;
        let counterexample = r
            .counterexample
            .map(|c| {
                let value = c.value.parse::<BigInt>().map_err(|e| RecordError(e.to_string()))?;
                Ok(Counterexample { n: c.n, value })
            })
            .transpose()?;
        if r.holds != counterexample.is_none() {
            return Err(RecordError("holds disagrees with counterexample".into()));
        }
        Ok(ClaimReport { claim, checked_up_to: r.checked_up_to, counterexample })
    }
}

/// Generating function of `spec` through `order`.
pub fn family_series(spec: ColoredFamilySpec, order: usize) -> TruncatedSeries {
    eval_eta(&spec.generating_function(), order).expect("every f_k has constant term 1")
}

fn series_order(modulus: Modulus, residue: u64, upto: u64) -> usize {
    usize::try_from(modulus.get() * upto + residue + 1).expect("series order fits in usize")
}

fn check_progression(series: &TruncatedSeries, claim: CongruenceClaim, upto: u64) -> ClaimReport {
    let m = claim.modulus.get() as usize;
    let progression = series.dissect(m, claim.residue as usize);
    assert!(progression.order() as u64 >= upto, "series too short for the requested range");
    let counterexample = progression.coeffs()[..upto as usize]
        .iter()
        .enumerate()
        .find(|(_, c)| !claim.modulus.reduce(c).is_zero())
        .map(|(n, c)| Counterexample { n: n as u64, value: c.clone() });
    ClaimReport { claim, checked_up_to: upto, counterexample }
}

/// Checks `claim` for `0 <= n < upto`, expanding the generating function to
/// order `m * upto + r + 1`.
pub fn verify_claim(claim: CongruenceClaim, upto: u64) -> ClaimReport {
    let series = family_series(claim.spec, series_order(claim.modulus, claim.residue, upto));
    check_progression(&series, claim, upto)
}

fn seven() -> Modulus {
    Modulus::new(7).expect("7 >= 2")
}

/// The five mod-7 congruences for `a_1, a_3, a_4, a_5, a_7`.
pub fn verify_seven_congruences(upto: u64) -> Vec<ClaimReport> {
    lifted_claims(0).into_par_iter().map(|claim| verify_claim(claim, upto)).collect()
}

fn lifted_claims(j: u32) -> Vec<CongruenceClaim> {
    SEVEN_CONGRUENCES
        .iter()
        .map(|&(k, r)| {
            CongruenceClaim::classified(ColoredFamilySpec::odd_colored(7 * j + k), seven(), r).expect("residue below 7")
        })
        .collect()
}

/// The five congruences lifted to `a_{7j+k}` for `j = 0..=j_max`, ordered by
/// `j` and then by `k`.
pub fn verify_lifted_families(j_max: u32, upto: u64) -> Vec<ClaimReport> {
    (0..=j_max)
        .flat_map(lifted_claims)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|claim| verify_claim(claim, upto))
        .collect()
}

/// `f_2^(7j+k-1) / f_1^(7j+k) ≡ (f_14 / f_7)^j * f_2^(k-1) / f_1^k (mod 7)`
/// through `order`.
pub fn lifting_congruence_holds(j: u32, k: u32, order: usize) -> bool {
    let lifted = family_series(ColoredFamilySpec::odd_colored(7 * j + k), order);
    let j = i64::from(j);
    let factor = eval_eta(&EtaExpression::product(&[(14, j), (7, -j)]), order).expect("unit constant terms");
    let base = family_series(ColoredFamilySpec::odd_colored(k), order);
    lifted.reduce_mod(seven()) == factor.mul(&base).reduce_mod(seven())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissectionMismatch {
    pub n: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissectionReport {
    pub checked_up_to: usize,
    /// `sum_n a_3(7n + 2) q^n` computed by dissection.
    pub lhs: TruncatedSeries,
    /// The checked-in eight-term expression, evaluated directly.
    pub rhs: TruncatedSeries,
    pub first_mismatch: Option<DissectionMismatch>,
}

impl DissectionReport {
    pub fn equal(&self) -> bool {
        self.first_mismatch.is_none()
    }

    /// Whether every left-hand coefficient is divisible by `m`.
    pub fn lhs_divisible_by(&self, m: Modulus) -> bool {
        self.lhs.reduce_mod(m).is_zero()
    }
}

/// The parsed dissection fixture.
pub fn seven_dissection_expression() -> EtaExpression {
    parse_eta(SEVEN_DISSECTION_A3).expect("checked-in fixture parses")
}

/// Compares the residue-2 component of the 7-dissection of `f_2^2 / f_1^3`
/// with the checked-in eta-quotient expression, exactly, through `upto`.
pub fn verify_seven_dissection(upto: usize) -> DissectionReport {
    let full = family_series(ColoredFamilySpec::odd_colored(3), 7 * upto + 3);
    let lhs = full.dissect(7, 2).truncate(upto);
    let rhs = eval_eta(&seven_dissection_expression(), upto).expect("unit constant terms");
    let first_mismatch = lhs.first_mismatch(&rhs).map(|n| DissectionMismatch {
        n,
        lhs: lhs.coeff(n).clone(),
        rhs: rhs.coeff(n).clone(),
    });
    DissectionReport { checked_up_to: upto, lhs, rhs, first_mismatch }
}

/// Whether `f_a^(b p) ≡ f_(a p)^b (mod p)` through `order`. Meaningful for
/// prime `p`.
pub fn verify_frobenius(a: usize, b: u32, p: Modulus, order: usize) -> bool {
    let pu = p.get() as usize;
    let lhs = pochhammer_f(a, order).pow(i64::from(b) * p.get() as i64).expect("nonnegative power");
    let rhs = pochhammer_f(a * pu, order).pow(i64::from(b)).expect("nonnegative power");
    lhs.sub(&rhs).reduce_mod(p).is_zero()
}

/// Order used by [`replay_proof`], in the variable of the generating function.
pub const PROOF_ORDER: usize = 300;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub name: &'static str,
    pub statement: String,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTrace {
    pub k: u32,
    /// `r` in `a_k(7n + r)`.
    pub residue: u64,
    /// `q -> q^substitution` is applied to the generating function first.
    pub substitution: usize,
    /// The residue class mod 7 that must be unreachable after substitution.
    pub excluded_class: usize,
    /// Support residues mod 7 of each theta component, in product order.
    pub component_residues: Vec<BTreeSet<usize>>,
    pub sumset: BTreeSet<usize>,
    pub steps: Vec<ProofStep>,
}

impl ProofTrace {
    pub fn verified(&self) -> bool {
        self.steps.iter().all(|s| s.verified)
    }
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "a_{}(7n+{}) ≡ 0 (mod 7)", self.k, self.residue)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "  [{}] {}. {}: {}", if s.verified { "ok" } else { "FAIL" }, i + 1, s.name, s.statement)?;
        }
        write!(f, "  result: {}", if self.verified() { "verified" } else { "NOT verified" })
    }
}

struct ProofRecipe {
    residue: u64,
    substitution: usize,
    /// Eta-quotient left after the Frobenius step, divided by `f_(7 s)`.
    numerator: EtaExpression,
    /// Theta families whose product is `numerator`, each with its own `q -> q^s`.
    components: [(ThetaFamilyId, usize); 2],
}

fn recipe(k: u32) -> Result<ProofRecipe, CongruenceError> {
    use ThetaFamilyId::*;
    let r = match k {
        1 => ProofRecipe {
            residue: 5,
            substitution: 1,
            numerator: EtaExpression::product(&[(1, 6)]),
            components: [(JacobiCube, 1), (JacobiCube, 1)],
        },
        3 => ProofRecipe {
            residue: 2,
            substitution: 2,
            numerator: EtaExpression::product(&[(2, 4), (4, 2)]),
            components: [(HirschhornB, 1), (HirschhornC, 1)],
        },
        4 => ProofRecipe {
            residue: 4,
            substitution: 1,
            numerator: EtaExpression::product(&[(1, 3), (2, 3)]),
            components: [(HirschhornA, 1), (HirschhornC, 1)],
        },
        5 => ProofRecipe {
            residue: 6,
            substitution: 1,
            numerator: EtaExpression::product(&[(1, 2), (2, 4)]),
            components: [(HirschhornA, 2), (HirschhornB, 1)],
        },
        7 => ProofRecipe {
            residue: 3,
            substitution: 1,
            numerator: EtaExpression::product(&[(2, 6)]),
            components: [(JacobiCube, 2), (JacobiCube, 2)],
        },
        _ => return Err(CongruenceError::UnsupportedFamily(k)),
    };
    Ok(r)
}

fn describe(id: ThetaFamilyId, s: usize) -> String {
    if s == 1 {
        id.to_string()
    } else {
        format!("{id}(q^{s})")
    }
}

fn fmt_set(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// `{ (x + y) mod m : x in a, y in b }`.
pub fn residue_sumset(a: &BTreeSet<usize>, b: &BTreeSet<usize>, m: usize) -> BTreeSet<usize> {
    a.iter().flat_map(|x| b.iter().map(move |y| (x + y) % m)).collect()
}

/// Replays the mod-7 argument for `a_k`, `k in {1, 3, 4, 5, 7}`:
/// the Frobenius rewrite to `numerator / f_(7s)`, the factorization of the
/// numerator into theta series, and the residue-class exclusion.
pub fn replay_proof(k: u32) -> Result<ProofTrace, CongruenceError> {
    let recipe = recipe(k)?;
    let s = recipe.substitution;
    let order = PROOF_ORDER * s;
    let m7 = seven();

    let generating = family_series(ColoredFamilySpec::odd_colored(k), PROOF_ORDER).inflate(s);
    let numerator = eval_eta(&recipe.numerator, order).expect("unit constant terms");
    let denominator = pochhammer_f(7 * s, order);

    let gen_mod = ModSeries::from_exact(&generating, m7);
    let rewritten = ModSeries::from_exact(&numerator, m7)
        .mul(&ModSeries::from_exact(&denominator, m7).inverse().expect("f_k is a unit"));
    let frobenius = ProofStep {
        name: "frobenius rewrite",
        statement: format!("{} ≡ ({}) / f{} (mod 7)", generating_label(k, s), recipe.numerator, 7 * s),
        verified: gen_mod == rewritten,
    };

    let components: Vec<TruncatedSeries> = recipe
        .components
        .iter()
        .map(|&(id, sub)| theta_series(id, order.div_ceil(sub)).inflate(sub).truncate(order))
        .collect();
    let product = components[0].mul(&components[1]);
    let theta = ProofStep {
        name: "theta factorization",
        statement: format!(
            "{} = {} * {} exactly",
            recipe.numerator,
            describe(recipe.components[0].0, recipe.components[0].1),
            describe(recipe.components[1].0, recipe.components[1].1)
        ),
        verified: product == numerator,
    };

    let component_residues: Vec<BTreeSet<usize>> =
        components.iter().map(|c| ModSeries::from_exact(c, m7).support_residues(7)).collect();
    let sumset = residue_sumset(&component_residues[0], &component_residues[1], 7);
    let excluded_class = (s * recipe.residue as usize) % 7;
    let numerator_support = ModSeries::from_exact(&numerator, m7).support_residues(7);
    let generating_support = gen_mod.support_residues(7);
    let residues = ProofStep {
        name: "residue exclusion",
        statement: format!(
            "{} + {} = {} excludes {}; numerator support {} lies inside",
            fmt_set(&component_residues[0]),
            fmt_set(&component_residues[1]),
            fmt_set(&sumset),
            excluded_class,
            fmt_set(&numerator_support)
        ),
        verified: !sumset.contains(&excluded_class)
            && numerator_support.is_subset(&sumset)
            && !generating_support.contains(&excluded_class),
    };

    Ok(ProofTrace {
        k,
        residue: recipe.residue,
        substitution: s,
        excluded_class,
        component_residues,
        sumset,
        steps: vec![frobenius, theta, residues],
    })
}

fn generating_label(k: u32, s: usize) -> String {
    let k = i64::from(k);
    let gf = EtaExpression::product(&[(2 * s, k - 1), (s, -k)]);
    gf.to_string()
}

/// Checks every residue `0..m` for each `a_k` with `k` in `ks`, sorted by
/// `(k, r)`. Claims with a published source must hold; a failing one turns
/// the whole scan into [`CongruenceError::StatedClaimRefuted`].
pub fn scan(ks: RangeInclusive<u32>, modulus: Modulus, upto: u64) -> Result<Vec<ClaimReport>, CongruenceError> {
    if upto < MIN_SCAN_RANGE {
        return Err(CongruenceError::RangeTooSmall { upto });
    }
    let order = series_order(modulus, modulus.get() - 1, upto);
    let ks: Vec<u32> = ks.filter(|&k| k >= 1).collect();
    let reports: Vec<ClaimReport> = ks
        .into_par_iter()
        .flat_map_iter(|k| {
            let spec = ColoredFamilySpec::odd_colored(k);
            let series = family_series(spec, order);
            (0..modulus.get())
                .map(|r| {
                    let claim = CongruenceClaim::classified(spec, modulus, r).expect("r < m");
                    check_progression(&series, claim, upto)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    if let Some(failed) = reports.iter().find(|r| r.claim.source.is_stated() && !r.holds()) {
        return Err(CongruenceError::StatedClaimRefuted { failed: Box::new(failed.clone()), reports });
    }
    Ok(reports)
}
