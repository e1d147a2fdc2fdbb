//! The finite criterion: compare |Gal(k' * K_{alpha,N} / Q)| against
//! |G_N| * [k' : k_1] over the lattice of candidate k' hypotheses, fold in
//! the constant-field evidence, and produce a three-valued verdict.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arboreal::{
    constant_candidates_from_profiles, default_samples, gn_bracket_from_profiles,
    CandidateStatus, ConstantCandidates, GNBracket, GaloisProfile, LevelField,
    specialization_profile,
};
use crate::config::RunConfig;
use crate::dynamics::{critical_orbit, strictly_post_critical, UnicriticalMap};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A hypothesis for k': a subgroup of <-1, 2> inside Q*/(Q*)^2, named by a
/// canonical basis. Note -1 * 2 = -2 up to squares, so the full subgroup has
/// rank 2 and the lattice has five members, not eight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KPrimeHypothesis {
    pub basis: Vec<i64>,
}

impl KPrimeHypothesis {
    /// The five subgroups of <-1, 2>: trivial, the three order-2 subgroups,
    /// and the full Klein group.
    pub fn lattice() -> Vec<KPrimeHypothesis> {
        vec![
            KPrimeHypothesis { basis: vec![] },
            KPrimeHypothesis { basis: vec![-1] },
            KPrimeHypothesis { basis: vec![2] },
            KPrimeHypothesis { basis: vec![-2] },
            KPrimeHypothesis { basis: vec![-1, 2] },
        ]
    }

    pub fn rank(&self) -> u32 {
        self.basis.len() as u32
    }

    /// [k' : k_1] = 2^rank.
    pub fn index_over_k1(&self) -> u64 {
        1u64 << self.rank()
    }

    /// The nontrivial square classes in the subgroup.
    pub fn elements(&self) -> Vec<i64> {
        match self.basis.as_slice() {
            [] => vec![],
            [d] => vec![*d],
            _ => vec![-1, 2, -2],
        }
    }

    pub fn contains(&self, d: i64) -> bool {
        self.elements().contains(&d)
    }

    pub fn label(&self) -> String {
        if self.basis.is_empty() {
            "<>".into()
        } else {
            let parts: Vec<String> = self.basis.iter().map(|d| d.to_string()).collect();
            format!("<{}>", parts.join(","))
        }
    }
}

/// Verdict of one hypothesis row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum HypothesisVerdict {
    Equal,
    Unequal,
    /// Bracket uncertified: the comparison at each endpoint.
    Interval { lower_equal: bool, upper_equal: bool },
}

/// One evaluated hypothesis row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisRow {
    pub basis: Vec<i64>,
    pub rank: u32,
    pub lhs: u64,
    pub rhs_lower: u64,
    pub rhs_upper: u64,
    pub verdict: HypothesisVerdict,
}

/// Evaluate the criterion for one hypothesis: LHS is the degree of the
/// compositum k' * K_{alpha,N} (the splitting field of
/// (f^N - alpha) * prod (x^2 - d)), RHS is the bracket times 2^rank.
pub fn evaluate_criterion(
    map: &UnicriticalMap,
    alpha: &Rational,
    hyp: &KPrimeHypothesis,
    bracket: &GNBracket,
    config: &RunConfig,
) -> Result<HypothesisRow> {
    if map.degree() != 2 {
        return Err(Error::Unsupported(
            "the criterion is implemented for quadratic maps (k_1 = Q)".into(),
        ));
    }
    let profile = specialization_profile(map, alpha, bracket.n, config.seed, config.degree_cap)?;
    evaluate_with_profile(&profile, hyp, bracket, config)
}

/// Same, reusing a precomputed profile of depth >= N.
pub fn evaluate_with_profile(
    profile: &GaloisProfile,
    hyp: &KPrimeHypothesis,
    bracket: &GNBracket,
    config: &RunConfig,
) -> Result<HypothesisRow> {
    let level = profile
        .levels
        .get(bracket.n as usize - 1)
        .ok_or_else(|| Error::Parse("profile shallower than N".into()))?;
    let mut chain = match &level.field {
        LevelField::Chain(f) => f.clone(),
        LevelField::Tower(_) => {
            return Err(Error::Unsupported(
                "criterion evaluation needs the quadratic chain".into(),
            ))
        }
    };
    for &d in &hyp.basis {
        let gamma = chain.rational(Rational::from_integer(d.into()));
        if !chain.is_square(&gamma) {
            if chain.degree() * 2 > config.degree_cap {
                return Err(Error::DegreeCapExceeded {
                    cap: config.degree_cap,
                    needed: chain.degree() * 2,
                });
            }
            chain = chain.extend(gamma);
        }
    }
    let lhs = chain.degree() as u64;
    let factor = hyp.index_over_k1();
    let rhs_lower = bracket.lower * factor;
    let rhs_upper = bracket.upper * factor;
    let verdict = if bracket.certified {
        if lhs == rhs_lower {
            HypothesisVerdict::Equal
        } else {
            HypothesisVerdict::Unequal
        }
    } else {
        HypothesisVerdict::Interval {
            lower_equal: lhs == rhs_lower,
            upper_equal: lhs == rhs_upper,
        }
    };
    Ok(HypothesisRow {
        basis: hyp.basis.clone(),
        rank: hyp.rank(),
        lhs,
        rhs_lower,
        rhs_upper,
        verdict,
    })
}

/// Overall verdict of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum OverallVerdict {
    CertifiedEqual,
    CertifiedNotEqual,
    Conditional { open: Vec<String> },
}

/// The full evaluated report for one specialization.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub schema: String,
    pub map: MapDescriptor,
    pub alpha: String,
    #[serde(rename = "N")]
    pub n: u32,
    pub bracket: BracketJson,
    pub constants: BTreeMap<String, String>,
    pub hypotheses: Vec<HypothesisJson>,
    pub overall: OverallVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapDescriptor {
    pub p: u64,
    pub n: u32,
    pub c: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketJson {
    pub lower: u64,
    pub upper: u64,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisJson {
    pub basis: Vec<i64>,
    pub rank: u32,
    pub lhs: u64,
    pub rhs: RhsJson,
    pub verdict: String,
    pub surviving: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum RhsJson {
    Exact(u64),
    Interval([u64; 2]),
}

fn verdict_string(v: &HypothesisVerdict) -> String {
    match v {
        HypothesisVerdict::Equal => "equal".into(),
        HypothesisVerdict::Unequal => "unequal".into(),
        HypothesisVerdict::Interval {
            lower_equal,
            upper_equal,
        } => {
            let word = |b: bool| if b { "equal" } else { "unequal" };
            format!(
                "interval(lower={},upper={})",
                word(*lower_equal),
                word(*upper_equal)
            )
        }
    }
}

fn status_string(s: &CandidateStatus) -> String {
    match s {
        CandidateStatus::Supported { depth } => format!("supported(depth={depth})"),
        CandidateStatus::Excluded {
            witness_alpha,
            depth,
        } => format!("excluded(alpha={witness_alpha},depth={depth})"),
        CandidateStatus::Untested => "untested".into(),
    }
}

/// Run the whole pipeline: bracket, candidate ledger, all five hypotheses,
/// evidence filtering, aggregation.
///
/// A hypothesis is ruled out when one of its basis classes carries a
/// certified exclusion witness, or when it fails to contain a supported
/// class (support is evidence, not proof; the per-row table remains in the
/// report either way). The verdict is Certified* only when the bracket is
/// certified and all surviving hypotheses agree.
pub fn criterion_report(
    map: &UnicriticalMap,
    alpha: &Rational,
    config: &RunConfig,
) -> Result<CriterionReport> {
    if map.degree() != 2 {
        return Err(Error::Unsupported(
            "the criterion is implemented for quadratic maps (k_1 = Q); \
             for p^n > 2 the base change to k_1 = Q(zeta_{p^n}) is not supported"
                .into(),
        ));
    }
    let orbit = critical_orbit(map).map_err(|c| Error::NotPcf(format!("{c:?}")))?;
    let n = orbit.size() as u32;
    if strictly_post_critical(map, alpha)? {
        return Err(Error::StrictlyPostCritical {
            map: map.to_string(),
            alpha: alpha.to_string(),
        });
    }

    // samples: configured or default, always including alpha
    let mut samples = match &config.samples {
        Some(s) => s.clone(),
        None => default_samples(map)?,
    };
    if !samples.contains(alpha) {
        samples.push(alpha.clone());
    }
    samples.sort();
    samples.dedup();

    let depth = n.max(config.constant_depth);
    let mut profiles = Vec::with_capacity(samples.len());
    for a in &samples {
        if strictly_post_critical(map, a)? {
            return Err(Error::StrictlyPostCritical {
                map: map.to_string(),
                alpha: a.to_string(),
            });
        }
        profiles.push(specialization_profile(map, a, depth, config.seed, config.degree_cap)?);
    }
    let bracket = gn_bracket_from_profiles(map, &profiles, n)?;
    let candidates = constant_candidates_from_profiles(map, &profiles, depth, config.seed)?;

    let alpha_profile = profiles
        .iter()
        .find(|p| &p.alpha == alpha)
        .expect("alpha added to the samples");

    let excluded: Vec<i64> = candidates
        .statuses
        .iter()
        .filter(|(_, s)| matches!(s, CandidateStatus::Excluded { .. }))
        .map(|(&d, _)| d)
        .collect();
    let supported: Vec<i64> = candidates
        .statuses
        .iter()
        .filter(|(_, s)| matches!(s, CandidateStatus::Supported { .. }))
        .map(|(&d, _)| d)
        .collect();

    let mut rows = Vec::new();
    let mut surviving = Vec::new();
    for hyp in KPrimeHypothesis::lattice() {
        let row = evaluate_with_profile(alpha_profile, &hyp, &bracket, config)?;
        debug_assert!(row.lhs <= row.rhs_upper, "group-order inequality");
        let pruned = hyp.basis.iter().any(|d| excluded.contains(d));
        let consistent = supported.iter().all(|d| hyp.contains(*d));
        let survives = !pruned && consistent;
        if survives {
            surviving.push((hyp.clone(), row.verdict.clone()));
        }
        rows.push((hyp, row, survives));
    }

    let overall = if bracket.certified && !surviving.is_empty() {
        let all_equal = surviving
            .iter()
            .all(|(_, v)| matches!(v, HypothesisVerdict::Equal));
        let all_unequal = surviving
            .iter()
            .all(|(_, v)| matches!(v, HypothesisVerdict::Unequal));
        if all_equal {
            OverallVerdict::CertifiedEqual
        } else if all_unequal {
            OverallVerdict::CertifiedNotEqual
        } else {
            OverallVerdict::Conditional {
                open: surviving
                    .iter()
                    .map(|(h, v)| format!("{}:{}", h.label(), verdict_string(v)))
                    .collect(),
            }
        }
    } else {
        OverallVerdict::Conditional {
            open: surviving
                .iter()
                .map(|(h, v)| format!("{}:{}", h.label(), verdict_string(v)))
                .collect(),
        }
    };

    Ok(CriterionReport {
        schema: "arbor-kit/1".into(),
        map: MapDescriptor {
            p: map.p(),
            n: map.n(),
            c: map.c().to_string(),
        },
        alpha: alpha.to_string(),
        n,
        bracket: BracketJson {
            lower: bracket.lower,
            upper: bracket.upper,
            certified: bracket.certified,
        },
        constants: candidates
            .statuses
            .iter()
            .map(|(d, s)| (d.to_string(), status_string(s)))
            .collect(),
        hypotheses: rows
            .into_iter()
            .map(|(_, row, survives)| HypothesisJson {
                basis: row.basis.clone(),
                rank: row.rank,
                lhs: row.lhs,
                rhs: if row.rhs_lower == row.rhs_upper {
                    RhsJson::Exact(row.rhs_lower)
                } else {
                    RhsJson::Interval([row.rhs_lower, row.rhs_upper])
                },
                verdict: verdict_string(&row.verdict),
                surviving: survives,
            })
            .collect(),
        overall,
    })
}

/// How deep the finite check must go: the forward orbit size N for this
/// family. The `ExistsUnspecified` arm is the contract for PCF maps outside
/// x^(p^n) + c, which this library cannot represent; it is never produced
/// here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FrattiniDepth {
    Exact(u32),
    ExistsUnspecified,
}

pub fn frattini_depth(map: &UnicriticalMap) -> Result<FrattiniDepth> {
    let orbit = critical_orbit(map).map_err(|c| Error::NotPcf(format!("{c:?}")))?;
    Ok(FrattiniDepth::Exact(orbit.size() as u32))
}

/// Expose the constant ledger for the CLI.
pub fn constants_report(candidates: &ConstantCandidates) -> BTreeMap<String, String> {
    candidates
        .statuses
        .iter()
        .map(|(d, s)| (d.to_string(), status_string(s)))
        .collect()
}

/// Compositum degree sanity: chains must agree with a literal splitting
/// tower on small inputs (exercised in tests).
#[cfg(test)]
pub(crate) fn lhs_by_splitting_tower(
    map: &UnicriticalMap,
    alpha: &Rational,
    hyp: &KPrimeHypothesis,
    n: u32,
    seed: u64,
    cap: usize,
) -> Result<u64> {
    use crate::qpoly::QPoly;
    let mut poly = map
        .iterate_poly(n)
        .sub(&QPoly::constant(alpha.clone()));
    for &d in &hyp.basis {
        let quad = QPoly::new(vec![
            Rational::from_integer((-d).into()),
            Rational::from_integer(0.into()),
            Rational::from_integer(1.into()),
        ]);
        poly = poly.mul(&quad);
    }
    let (_, deg) = crate::tower::NumberTower::splitting_tower(&poly, seed, cap)?;
    Ok(deg as u64)
}
