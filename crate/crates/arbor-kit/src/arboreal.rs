//! Exact and sampled Galois data for specializations: per-level degrees of
//! the iterated preimage fields, square-class bookkeeping for quadratic maps,
//! Frobenius cycle-type samples, the |G_N| bracket, and the constant-field
//! candidate ledger.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::dynamics::{critical_orbit, strictly_post_critical, UnicriticalMap};
use crate::error::{Error, Result};
use crate::fppoly::{factor_degree_multiset, FpPoly};
use crate::qpoly::{discriminant, QPoly};
use crate::rational::Rational;
use crate::tower::{ChainField, NumberTower};
use crate::tree::{group_order, WreathDescriptor};
use crate::zassenhaus::is_prime_u64;

/// The field at one preimage level: quadratic maps live in a chain of
/// square-root adjunctions, everything else in an absolute tower.
#[derive(Clone, Debug)]
pub enum LevelField {
    Chain(ChainField),
    Tower(NumberTower),
}

impl LevelField {
    pub fn degree(&self) -> u64 {
        match self {
            LevelField::Chain(f) => f.degree() as u64,
            LevelField::Tower(t) => t.degree() as u64,
        }
    }

    /// Is the rational d a square in this level's field?
    pub fn is_square_rational(&self, d: &Rational, seed: u64) -> Result<bool> {
        match self {
            LevelField::Chain(f) => Ok(f.is_square(&f.rational(d.clone()))),
            LevelField::Tower(t) => t.is_square(&t.rational(d.clone()), seed),
        }
    }

    /// Materialize the absolute simple-extension form.
    pub fn to_tower(&self, degree_cap: usize) -> Result<NumberTower> {
        match self {
            LevelField::Chain(f) => f.to_tower(degree_cap),
            LevelField::Tower(t) => Ok(t.clone()),
        }
    }
}

/// Data for one preimage level of a specialization.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub level: u32,
    /// Absolute degree [K_{alpha,level} : Q].
    pub degree: u64,
    pub field: LevelField,
    /// For degree-2 maps: the square classes adjoined at this level,
    /// written over the chain generators.
    pub new_square_classes: Vec<String>,
}

/// Exact per-level Galois data for one specialization (f, alpha).
#[derive(Clone, Debug)]
pub struct GaloisProfile {
    pub map: UnicriticalMap,
    pub alpha: Rational,
    pub levels: Vec<LevelData>,
}

impl GaloisProfile {
    pub fn degrees(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.degree).collect()
    }

    pub fn final_field(&self) -> &LevelField {
        &self.levels.last().expect("depth >= 1").field
    }
}

/// Exact specialization profile to the given depth.
///
/// For quadratic maps each level adjoins sqrt(s - c) for every root s of the
/// previous level, detecting collapses exactly; for higher prime powers each
/// level is an independent splitting-tower computation.
pub fn specialization_profile(
    map: &UnicriticalMap,
    alpha: &Rational,
    depth: u32,
    seed: u64,
    degree_cap: usize,
) -> Result<GaloisProfile> {
    specialization_profile_cached(map, alpha, depth, seed, degree_cap, None)
}

/// Same, consulting a splitting-tower cache on the generic (non-quadratic)
/// path.
pub fn specialization_profile_cached(
    map: &UnicriticalMap,
    alpha: &Rational,
    depth: u32,
    seed: u64,
    degree_cap: usize,
    cache: Option<&mut crate::cache::FileCache>,
) -> Result<GaloisProfile> {
    if depth == 0 {
        return Err(Error::Parse("depth must be at least 1".into()));
    }
    if strictly_post_critical(map, alpha)? {
        return Err(Error::StrictlyPostCritical {
            map: map.to_string(),
            alpha: alpha.to_string(),
        });
    }
    let levels = if map.degree() == 2 {
        kummer_levels(map, alpha, depth, seed, degree_cap)?
    } else {
        generic_levels(map, alpha, depth, seed, degree_cap, cache)?
    };
    Ok(GaloisProfile {
        map: map.clone(),
        alpha: alpha.clone(),
        levels,
    })
}

fn kummer_levels(
    map: &UnicriticalMap,
    alpha: &Rational,
    depth: u32,
    _seed: u64,
    degree_cap: usize,
) -> Result<Vec<LevelData>> {
    let mut field = ChainField::rationals();
    let mut frontier = vec![field.rational(alpha.clone())];
    let mut levels = Vec::with_capacity(depth as usize);
    let c = map.c();
    for level in 1..=depth {
        let mut new_frontier = Vec::with_capacity(frontier.len() * 2);
        let mut new_classes = Vec::new();
        for idx in 0..frontier.len() {
            let s = frontier[idx].clone();
            let gamma = field.sub(&s, &field.rational(c.clone()));
            debug_assert!(
                !ChainField::is_zero_elt(&gamma),
                "gamma = 0 would make the level inseparable; alpha was screened"
            );
            match field.sqrt(&gamma) {
                Some(root) => {
                    new_frontier.push(field.neg(&root));
                    new_frontier.push(root);
                }
                None => {
                    if field.degree() * 2 > degree_cap {
                        return Err(Error::DegreeCapExceeded {
                            cap: degree_cap,
                            needed: field.degree() * 2,
                        });
                    }
                    new_classes.push(ChainField::elt_to_string(&gamma));
                    field = field.extend(gamma);
                    // carry everything already computed into the extension
                    for el in new_frontier.iter_mut() {
                        *el = ChainField::pad(el);
                    }
                    for el in frontier.iter_mut() {
                        *el = ChainField::pad(el);
                    }
                    let root = field.generator(field.levels() - 1);
                    new_frontier.push(field.neg(&root));
                    new_frontier.push(root);
                }
            }
        }
        levels.push(LevelData {
            level,
            degree: field.degree() as u64,
            field: LevelField::Chain(field.clone()),
            new_square_classes: new_classes,
        });
        frontier = new_frontier;
    }
    Ok(levels)
}

fn generic_levels(
    map: &UnicriticalMap,
    alpha: &Rational,
    depth: u32,
    seed: u64,
    degree_cap: usize,
    mut cache: Option<&mut crate::cache::FileCache>,
) -> Result<Vec<LevelData>> {
    let mut levels = Vec::with_capacity(depth as usize);
    for level in 1..=depth {
        let poly = map
            .iterate_poly(level)
            .sub(&QPoly::constant(alpha.clone()))
            .squarefree_part();
        let (tower, degree) =
            crate::cache::cached_splitting_tower(&poly, seed, degree_cap, cache.as_deref_mut())?;
        levels.push(LevelData {
            level,
            degree: degree as u64,
            field: LevelField::Tower(tower),
            new_square_classes: Vec::new(),
        });
    }
    Ok(levels)
}

/// One Frobenius cycle-type sample: the factor-degree multiset of
/// f^n(x) - alpha modulo a good prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusSample {
    pub prime: u64,
    pub degrees: Vec<usize>,
}

/// Factor f^n(x) - alpha modulo the first `budget` admissible primes.
///
/// A prime is inadmissible when it divides 2 * p * denom(c) * denom(alpha)
/// or the discriminant of f^n(x) - alpha.
pub fn frobenius_samples(
    map: &UnicriticalMap,
    alpha: &Rational,
    n: u32,
    budget: usize,
    seed: u64,
) -> Result<Vec<FrobeniusSample>> {
    const SIEVE_BOUND: u64 = 100_000;
    let target = map
        .iterate_poly(n)
        .sub(&QPoly::constant(alpha.clone()));
    let disc = discriminant(&target)?;
    if disc.is_zero() {
        return Err(Error::Parse(format!(
            "f^{n}(x) - {alpha} is inseparable"
        )));
    }
    let (_, ints) = target.to_integer_primitive();
    let disc_screen = disc.numer().abs() * disc.denom().abs() * ints.last().unwrap().abs();
    let small_screen: num_bigint::BigInt =
        num_bigint::BigInt::from(2 * map.p()) * map.c().denom() * alpha.denom();

    let mut out = Vec::with_capacity(budget);
    let mut q = 2u64;
    while out.len() < budget && q <= SIEVE_BOUND {
        if is_prime_u64(q) {
            let qb = num_bigint::BigInt::from(q);
            let bad = (&small_screen % &qb).is_zero() || (&disc_screen % &qb).is_zero();
            if !bad {
                let reduced = FpPoly::from_qpoly(&QPoly::from_bigint_coeffs(&ints), q)
                    .expect("screened prime divides no denominator");
                let degrees = factor_degree_multiset(&reduced, seed)?;
                debug_assert_eq!(
                    degrees.iter().sum::<usize>() as u64,
                    map.degree().pow(n)
                );
                out.push(FrobeniusSample { prime: q, degrees });
            }
        }
        q += 1;
    }
    if out.is_empty() {
        return Err(Error::NoAdmissiblePrimes { bound: SIEVE_BOUND });
    }
    Ok(out)
}

/// Bracket on |G_N|: measured lower bound (max sampled degree) against the
/// ambient upper bound |W_N| * [Q(zeta_{p^n}) : Q].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GNBracket {
    pub n: u32,
    pub lower: u64,
    pub upper: u64,
    pub certified: bool,
}

/// [Q(zeta_{p^n}) : Q] = p^(n-1) (p-1).
pub fn cyclotomic_degree(p: u64, n: u32) -> u64 {
    p.pow(n - 1) * (p - 1)
}

pub fn gn_bracket_upper(map: &UnicriticalMap, n: u32) -> Result<u64> {
    let w = WreathDescriptor::new(map.p(), map.n(), n);
    let order = group_order(&w);
    let base = order
        .to_u64()
        .ok_or(Error::Unsupported("wreath order exceeds u64".into()))?;
    base.checked_mul(cyclotomic_degree(map.p(), map.n()))
        .ok_or(Error::Unsupported("bracket upper bound exceeds u64".into()))
}

/// Bracket from precomputed profiles (each of depth >= N).
pub fn gn_bracket_from_profiles(
    map: &UnicriticalMap,
    profiles: &[GaloisProfile],
    n: u32,
) -> Result<GNBracket> {
    if profiles.is_empty() {
        return Err(Error::Parse("bracket needs at least one sample".into()));
    }
    let mut lower = 0u64;
    for prof in profiles {
        let level = prof
            .levels
            .get(n as usize - 1)
            .ok_or_else(|| Error::Parse("profile shallower than N".into()))?;
        lower = lower.max(level.degree);
    }
    let upper = gn_bracket_upper(map, n)?;
    Ok(GNBracket {
        n,
        lower,
        upper,
        certified: lower == upper,
    })
}

/// Bracket computed from scratch for the given samples.
pub fn gn_bracket(
    map: &UnicriticalMap,
    samples: &[Rational],
    n: u32,
    seed: u64,
    degree_cap: usize,
) -> Result<GNBracket> {
    let orbit = critical_orbit(map).map_err(|c| Error::NotPcf(format!("{c:?}")))?;
    let _ = orbit;
    let mut profiles = Vec::with_capacity(samples.len());
    for alpha in samples {
        profiles.push(specialization_profile(map, alpha, n, seed, degree_cap)?);
    }
    gn_bracket_from_profiles(map, &profiles, n)
}

/// Status of one squarefree candidate d for membership of sqrt(d) in the
/// constant field tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum CandidateStatus {
    /// sqrt(d) present in every sampled tower at this depth (evidence, not
    /// proof).
    Supported { depth: u32 },
    /// sqrt(d) absent from the witness sample's tower at this depth (a
    /// certified exclusion at that depth).
    Excluded { witness_alpha: String, depth: u32 },
    Untested,
}

/// Candidate ledger over {-1, 2, -2} for p = 2: the square classes available
/// inside the 2-power cyclotomic tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantCandidates {
    pub depth: u32,
    pub statuses: BTreeMap<i64, CandidateStatus>,
}

pub const CANDIDATE_UNIVERSE: [i64; 3] = [-1, 2, -2];

/// Evaluate the ledger from precomputed profiles (each of depth >= depth).
pub fn constant_candidates_from_profiles(
    map: &UnicriticalMap,
    profiles: &[GaloisProfile],
    depth: u32,
    seed: u64,
) -> Result<ConstantCandidates> {
    if map.degree() != 2 {
        return Err(Error::Unsupported(
            "constant-field candidates are only computed for quadratic maps".into(),
        ));
    }
    let mut statuses = BTreeMap::new();
    for &d in &CANDIDATE_UNIVERSE {
        if profiles.is_empty() {
            statuses.insert(d, CandidateStatus::Untested);
            continue;
        }
        let mut min_depths = Vec::with_capacity(profiles.len());
        let mut excluded: Option<&GaloisProfile> = None;
        for prof in profiles {
            let mut found = None;
            for level in prof.levels.iter().take(depth as usize) {
                let dq = Rational::from_integer(d.into());
                if level.field.is_square_rational(&dq, seed)? {
                    found = Some(level.level);
                    break;
                }
            }
            match found {
                Some(lv) => min_depths.push(lv),
                None => {
                    excluded = Some(prof);
                    break;
                }
            }
        }
        let status = match excluded {
            Some(prof) => CandidateStatus::Excluded {
                witness_alpha: prof.alpha.to_string(),
                depth,
            },
            None => CandidateStatus::Supported {
                depth: min_depths.into_iter().max().expect("nonempty samples"),
            },
        };
        statuses.insert(d, status);
    }
    Ok(ConstantCandidates { depth, statuses })
}

/// Candidate ledger computed from scratch.
pub fn constant_candidates(
    map: &UnicriticalMap,
    depth: u32,
    samples: &[Rational],
    seed: u64,
    degree_cap: usize,
) -> Result<ConstantCandidates> {
    if map.degree() != 2 {
        return Err(Error::Unsupported(
            "constant-field candidates are only computed for quadratic maps".into(),
        ));
    }
    let mut profiles = Vec::with_capacity(samples.len());
    for alpha in samples {
        profiles.push(specialization_profile(map, alpha, depth, seed, degree_cap)?);
    }
    constant_candidates_from_profiles(map, &profiles, depth, seed)
}

/// Default sample set {1, 2, 3, 5, 7} with strictly post-critical values
/// removed.
pub fn default_samples(map: &UnicriticalMap) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for v in [1i64, 2, 3, 5, 7] {
        let alpha = Rational::from_integer(v.into());
        if !strictly_post_critical(map, &alpha)? {
            out.push(alpha);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;
    use crate::tower::DEFAULT_DEGREE_CAP;

    const CAP: usize = DEFAULT_DEGREE_CAP;

    fn map(s: &str) -> UnicriticalMap {
        UnicriticalMap::parse(s).unwrap()
    }

    #[test]
    fn profile_basilica_alpha_one() {
        let prof = specialization_profile(&map("x^2-1"), &rat_i64(1), 2, 42, CAP).unwrap();
        assert_eq!(prof.degrees(), vec![2, 8]);
    }

    #[test]
    fn profile_basilica_alpha_three_depth_one() {
        let prof = specialization_profile(&map("x^2-1"), &rat_i64(3), 1, 42, CAP).unwrap();
        assert_eq!(prof.degrees(), vec![1]);
    }

    #[test]
    fn profile_x_squared_alpha_three() {
        let prof = specialization_profile(&map("x^2"), &rat_i64(3), 2, 42, CAP).unwrap();
        assert_eq!(prof.degrees(), vec![2, 8]);
    }

    #[test]
    fn profile_rejects_post_critical() {
        let err = specialization_profile(&map("x^2-1"), &rat_i64(-1), 2, 42, CAP).unwrap_err();
        assert!(matches!(err, Error::StrictlyPostCritical { .. }));
    }

    #[test]
    fn profile_degree_invariants() {
        for (m, alpha, depth) in [
            ("x^2-1", 1i64, 3u32),
            ("x^2-1", 2, 2),
            ("x^2", 3, 3),
            ("x^2-2", 1, 3),
        ] {
            let m = map(m);
            let prof = specialization_profile(&m, &rat_i64(alpha), depth, 42, CAP).unwrap();
            let degs = prof.degrees();
            for i in 1..degs.len() {
                assert!(degs[i - 1] <= degs[i]);
                assert_eq!(degs[i] % degs[i - 1], 0, "divisibility at level {i}");
                // quadratic maps: ratio is a power of 2
                let ratio = degs[i] / degs[i - 1];
                assert!(ratio.is_power_of_two() || ratio == 1);
            }
            // level-i degree divides |W_i| * [Q(zeta_2):Q]
            for (i, &d) in degs.iter().enumerate() {
                let bound = gn_bracket_upper(&m, i as u32 + 1).unwrap();
                assert_eq!(bound % d, 0, "level {} degree {d} bound {bound}", i + 1);
            }
        }
    }

    #[test]
    fn frobenius_basilica_level_one() {
        // f(x) - 1 = x^2 - 2: mod 7 it has a root (3^2 = 2), mod 5 it does not
        let samples = frobenius_samples(&map("x^2-1"), &rat_i64(1), 1, 6, 42).unwrap();
        let by_prime: BTreeMap<u64, Vec<usize>> = samples
            .iter()
            .map(|s| (s.prime, s.degrees.clone()))
            .collect();
        assert_eq!(by_prime[&7], vec![1, 1]);
        assert_eq!(by_prime[&5], vec![2]);
        for s in &samples {
            assert_eq!(s.degrees.iter().sum::<usize>(), 2);
        }
    }

    #[test]
    fn frobenius_lcm_divides_exact_degree() {
        let prof = specialization_profile(&map("x^2-1"), &rat_i64(1), 2, 42, CAP).unwrap();
        let exact = prof.degrees()[1];
        let samples = frobenius_samples(&map("x^2-1"), &rat_i64(1), 2, 25, 42).unwrap();
        assert_eq!(samples.len(), 25);
        for s in &samples {
            let mut lcm = 1u64;
            for &d in &s.degrees {
                lcm = num_integer::lcm(lcm, d as u64);
            }
            assert_eq!(exact % lcm, 0, "prime {}", s.prime);
            assert_eq!(s.degrees.iter().sum::<usize>(), 4);
        }
    }

    #[test]
    fn bracket_basilica_certified() {
        let b = gn_bracket(&map("x^2-1"), &[rat_i64(1), rat_i64(2)], 2, 42, CAP).unwrap();
        assert_eq!(
            b,
            GNBracket {
                n: 2,
                lower: 8,
                upper: 8,
                certified: true
            }
        );
    }

    #[test]
    fn bracket_x_squared_trivial() {
        let b = gn_bracket(&map("x^2"), &[rat_i64(3)], 1, 42, CAP).unwrap();
        assert_eq!((b.lower, b.upper, b.certified), (2, 2, true));
    }

    #[test]
    fn chebyshev_level_three_is_real_cyclotomic() {
        // x^2-2 at alpha = 1: level 3 lives in the real subfield of the
        // 48th cyclotomic field (degree 8), so sqrt(2), sqrt(3), sqrt(6) are
        // present and i is not.
        let prof = specialization_profile(&map("x^2-2"), &rat_i64(1), 3, 42, CAP).unwrap();
        assert_eq!(prof.degrees(), vec![2, 4, 8]);
        let field = &prof.levels[2].field;
        for d in [2i64, 3, 6] {
            assert!(field.is_square_rational(&rat_i64(d), 42).unwrap(), "{d}");
        }
        assert!(!field.is_square_rational(&rat_i64(-1), 42).unwrap());
    }

    #[test]
    fn bracket_chebyshev_uncertified() {
        let b = gn_bracket(
            &map("x^2-2"),
            &[rat_i64(1), rat_i64(3), rat_i64(5)],
            3,
            42,
            CAP,
        )
        .unwrap();
        assert_eq!(b.upper, 128);
        assert!(b.lower <= b.upper);
        assert!(!b.certified);
        // the bracket's lower bound is exactly the measured maximum
        let max_measured = [1i64, 3, 5]
            .iter()
            .map(|&a| {
                specialization_profile(&map("x^2-2"), &rat_i64(a), 3, 42, CAP)
                    .unwrap()
                    .degrees()[2]
            })
            .max()
            .unwrap();
        assert_eq!(b.lower, max_measured);
    }

    #[test]
    fn candidates_x_squared() {
        let samples = [rat_i64(3), rat_i64(5)];
        let ledger = constant_candidates(&map("x^2"), 3, &samples, 42, CAP).unwrap();
        assert_eq!(
            ledger.statuses[&-1],
            CandidateStatus::Supported { depth: 2 }
        );
        assert_eq!(ledger.statuses[&2], CandidateStatus::Supported { depth: 3 });
        assert_eq!(
            ledger.statuses[&-2],
            CandidateStatus::Supported { depth: 3 }
        );
    }

    #[test]
    fn candidates_basilica_corrected() {
        // with samples {1, 2}: -1 and 2 are excluded (witness alpha = 2), but
        // sqrt(-2) lies in BOTH depth-2 towers, so -2 is supported; alpha = 3
        // is what excludes it.
        let ledger = constant_candidates(
            &map("x^2-1"),
            2,
            &[rat_i64(1), rat_i64(2)],
            42,
            CAP,
        )
        .unwrap();
        assert_eq!(
            ledger.statuses[&-1],
            CandidateStatus::Excluded {
                witness_alpha: "2".into(),
                depth: 2
            }
        );
        assert_eq!(
            ledger.statuses[&2],
            CandidateStatus::Excluded {
                witness_alpha: "2".into(),
                depth: 2
            }
        );
        assert_eq!(
            ledger.statuses[&-2],
            CandidateStatus::Supported { depth: 2 }
        );

        let ledger = constant_candidates(
            &map("x^2-1"),
            2,
            &[rat_i64(1), rat_i64(2), rat_i64(3)],
            42,
            CAP,
        )
        .unwrap();
        assert_eq!(
            ledger.statuses[&-2],
            CandidateStatus::Excluded {
                witness_alpha: "3".into(),
                depth: 2
            }
        );
    }

    #[test]
    fn supported_candidates_verifiably_present() {
        // every supported candidate's square root is present in every sampled
        // tower at the supporting depth
        let samples = [rat_i64(3), rat_i64(5)];
        let m = map("x^2");
        let ledger = constant_candidates(&m, 3, &samples, 42, CAP).unwrap();
        for (&d, status) in &ledger.statuses {
            if let CandidateStatus::Supported { depth } = status {
                for alpha in &samples {
                    let prof = specialization_profile(&m, alpha, *depth, 42, CAP).unwrap();
                    let field = &prof.levels[*depth as usize - 1].field;
                    assert!(field.is_square_rational(&rat_i64(d), 42).unwrap());
                }
            }
        }
    }

    #[test]
    fn chain_level_materializes_to_matching_tower() {
        // the chain field and the absolute tower agree on degree and squares
        let prof = specialization_profile(&map("x^2-1"), &rat_i64(1), 2, 42, CAP).unwrap();
        let level = &prof.levels[1];
        let tower = level.field.to_tower(CAP).unwrap();
        assert_eq!(tower.degree() as u64, level.degree);
        // -1 is a square in K_{1,2} (i = sqrt(1+sqrt2) * sqrt(1-sqrt2))
        assert!(level.field.is_square_rational(&rat_i64(-1), 42).unwrap());
        assert!(tower
            .is_square(&tower.rational(rat_i64(-1)), 42)
            .unwrap());
        // and the splitting-tower route agrees on the degree
        let quartic = crate::qpoly::parse_poly("x^4-2*x^2-1").unwrap();
        let (_, deg) = NumberTower::splitting_tower(&quartic, 42, CAP).unwrap();
        assert_eq!(deg as u64, level.degree);
    }

    #[test]
    fn candidates_require_quadratic() {
        let err = constant_candidates(&map("x^4-1"), 2, &[rat_i64(3)], 42, CAP).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn default_samples_filter() {
        // x^2 - 2 has strictly post-critical {-2, 2}
        let s = default_samples(&map("x^2-2")).unwrap();
        assert_eq!(s, vec![rat_i64(1), rat_i64(3), rat_i64(5), rat_i64(7)]);
    }

    #[test]
    fn profiles_safe_across_threads() {
        // pure functions on immutable data: concurrent runs match sequential
        let sequential: Vec<Vec<u64>> = [1i64, 2, 3]
            .iter()
            .map(|&a| {
                specialization_profile(&map("x^2-1"), &rat_i64(a), 2, 42, CAP)
                    .unwrap()
                    .degrees()
            })
            .collect();
        let handles: Vec<_> = [1i64, 2, 3]
            .into_iter()
            .map(|a| {
                std::thread::spawn(move || {
                    specialization_profile(&map("x^2-1"), &rat_i64(a), 2, 42, CAP)
                        .unwrap()
                        .degrees()
                })
            })
            .collect();
        let concurrent: Vec<Vec<u64>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(concurrent, sequential);
    }
}
