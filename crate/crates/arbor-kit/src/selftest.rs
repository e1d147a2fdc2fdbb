//! The acceptance suite: eleven checks covering PCF classification, wreath
//! data, the Frattini and free-group oracles, splitting degrees, the
//! closed-form oracle for the x^2 family, the candidate ledger, the
//! criterion verdicts, anomaly handling, Frobenius consistency, and
//! determinism. The CLI `selftest` subcommand and the acceptance test target
//! both run it.

use num_bigint::BigUint;
use num_traits::Signed;
use serde::Serialize;

use crate::arboreal::{
    constant_candidates, frobenius_samples, gn_bracket, specialization_profile,
    CandidateStatus,
};
use crate::config::RunConfig;
use crate::criterion::{
    criterion_report, evaluate_criterion, HypothesisVerdict, KPrimeHypothesis, OverallVerdict,
};
use crate::dynamics::{
    collision_condition, critical_orbit, CollisionOutcome, NotPcfCertificate, UnicriticalMap,
};
use crate::error::Result;
use crate::rational::{rat_i64, Rational};
use crate::tower::NumberTower;
use crate::tree::{
    brute_force_frattini, enumerate, free_group_index_p_normal_count, group_order,
    maximal_subgroup_count, verify_free_group_count, WreathDescriptor,
};

/// Closed-form oracle for the x^2 family: [Q(alpha^(1/2^i), zeta_{2^i}) : Q]
/// = 2^i * 2^(max(i-1, 0)) for non-degenerate alpha (3 and 5 qualify).
/// Deliberately shares no code with the tower engine.
pub fn cyclotomic_kummer_degree(level: u32) -> u64 {
    2u64.pow(level) * 2u64.pow(level.saturating_sub(1))
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub schema: String,
    pub seed: u64,
    pub pass: bool,
    pub criteria: Vec<CriterionResult>,
}

struct Check {
    details: Vec<String>,
    pass: bool,
}

impl Check {
    fn new() -> Self {
        Check {
            details: Vec::new(),
            pass: true,
        }
    }

    fn expect(&mut self, label: &str, ok: bool) {
        self.details
            .push(format!("{}: {label}", if ok { "ok" } else { "FAIL" }));
        self.pass &= ok;
    }
}

fn map(s: &str) -> UnicriticalMap {
    UnicriticalMap::parse(s).expect("valid map literal")
}

/// Run the full acceptance suite.
pub fn run(config: &RunConfig) -> SelftestReport {
    let mut criteria = vec![
        run_criterion(1, "PCF classification", config, check_pcf),
        run_criterion(2, "wreath orders and enumeration", config, check_orders),
        run_criterion(3, "Frattini oracle vs formula", config, check_frattini),
        run_criterion(4, "free-group index-p counts", config, check_free_group),
        run_criterion(5, "splitting degrees", config, check_splitting),
        run_criterion(6, "x^2 family closed form", config, check_x2_family),
        run_criterion(7, "constant candidates", config, check_candidates),
        run_criterion(8, "criterion verdicts", config, check_criterion),
        run_criterion(9, "anomaly handling", config, check_anomalies),
        run_criterion(10, "Frobenius consistency", config, check_frobenius),
    ];
    criteria.push(check_determinism(config, &criteria));
    let pass = criteria.iter().all(|c| c.pass);
    SelftestReport {
        schema: "arbor-kit/1".into(),
        seed: config.seed,
        pass,
        criteria,
    }
}

fn run_criterion(
    id: u32,
    name: &str,
    config: &RunConfig,
    f: fn(&RunConfig, &mut Check) -> Result<()>,
) -> CriterionResult {
    let mut check = Check::new();
    if let Err(e) = f(config, &mut check) {
        check.expect(&format!("unexpected error: {e}"), false);
    }
    CriterionResult {
        id,
        name: name.into(),
        pass: check.pass,
        details: check.details,
    }
}

fn check_pcf(_config: &RunConfig, check: &mut Check) -> Result<()> {
    for (c, expected_n) in [(0i64, 1usize), (-1, 2), (-2, 3)] {
        let m = UnicriticalMap::new(2, 1, rat_i64(c))?;
        match critical_orbit(&m) {
            Ok(orbit) => check.expect(
                &format!("x^2{c:+} is PCF with N = {expected_n}"),
                orbit.size() == expected_n,
            ),
            Err(_) => check.expect(&format!("x^2{c:+} is PCF"), false),
        }
    }
    for c in [1i64, -3] {
        let m = UnicriticalMap::new(2, 1, rat_i64(c))?;
        match critical_orbit(&m) {
            Err(NotPcfCertificate::Escape { index, .. }) => {
                // validate: the escape bound holds at the index, not before
                let bound = {
                    let b = m.c().abs() + Rational::from_integer(1.into());
                    let two = Rational::from_integer(2.into());
                    if b > two {
                        b
                    } else {
                        two
                    }
                };
                let mut z = Rational::from_integer(0.into());
                let mut valid = true;
                for i in 0..index {
                    if z.abs() > bound {
                        valid = false;
                    }
                    let _ = i;
                    z = m.apply(&z);
                }
                valid &= z.abs() > bound;
                check.expect(&format!("x^2{c:+} escape certificate valid"), valid);
            }
            other => check.expect(
                &format!("x^2{c:+} yields an escape certificate, got {other:?}"),
                false,
            ),
        }
    }
    Ok(())
}

fn check_orders(config: &RunConfig, check: &mut Check) -> Result<()> {
    let expected = [2u64, 8, 128, 32768];
    for (depth, want) in (1u32..=4).zip(expected) {
        let w = WreathDescriptor::new(2, 1, depth);
        check.expect(
            &format!("group_order(2,1,{depth}) = {want}"),
            group_order(&w) == BigUint::from(want),
        );
        let count = enumerate(&w, config.closure_cap)?.len() as u64;
        check.expect(
            &format!("enumeration count at depth {depth} = {want}"),
            count == want,
        );
    }
    Ok(())
}

fn check_frattini(config: &RunConfig, check: &mut Check) -> Result<()> {
    let d2 = brute_force_frattini(&WreathDescriptor::new(2, 1, 2), config.closure_cap)?;
    check.expect("brute_force_frattini(2,1,2) = (2, 3)", d2 == (2, 3));
    let d3 = brute_force_frattini(&WreathDescriptor::new(2, 1, 3), config.closure_cap)?;
    check.expect("brute_force_frattini(2,1,3) = (3, 7)", d3 == (3, 7));
    for depth in [2u32, 3] {
        let formula = maximal_subgroup_count(2, 1, depth);
        let brute = if depth == 2 { d2.1 } else { d3.1 };
        check.expect(
            &format!("maximal count matches formula at depth {depth}"),
            BigUint::from(brute) == formula,
        );
    }
    Ok(())
}

fn check_free_group(config: &RunConfig, check: &mut Check) -> Result<()> {
    for (s, p) in [(1u32, 2u64), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3)] {
        let closed = free_group_index_p_normal_count(s, p);
        let brute = verify_free_group_count(s, p, config.hom_cap)?;
        check.expect(
            &format!("(s={s}, p={p}): closed form {closed} = enumeration {brute}"),
            BigUint::from(brute) == closed,
        );
    }
    Ok(())
}

fn check_splitting(config: &RunConfig, check: &mut Check) -> Result<()> {
    let quartic = crate::qpoly::parse_poly("x^4-2*x^2-1")?;
    let (_, deg) = NumberTower::splitting_tower(&quartic, config.seed, config.degree_cap)?;
    check.expect("splitting_tower(x^4-2x^2-1) has degree 8", deg == 8);

    let prof = specialization_profile(&map("x^2-1"), &rat_i64(1), 2, config.seed, config.degree_cap)?;
    check.expect(
        "profile(x^2-1, alpha=1, depth 2) = [2, 8]",
        prof.degrees() == vec![2, 8],
    );
    let prof = specialization_profile(&map("x^2-1"), &rat_i64(3), 1, config.seed, config.degree_cap)?;
    check.expect(
        "profile(x^2-1, alpha=3, depth 1) = [1]",
        prof.degrees() == vec![1],
    );
    Ok(())
}

fn check_x2_family(config: &RunConfig, check: &mut Check) -> Result<()> {
    let m = map("x^2");
    for alpha in [3i64, 5] {
        let prof = specialization_profile(&m, &rat_i64(alpha), 3, config.seed, config.degree_cap)?;
        let got = prof.degrees();
        let want: Vec<u64> = (1..=3).map(cyclotomic_kummer_degree).collect();
        check.expect(
            &format!("profile(x^2, alpha={alpha}) = {want:?} (closed form)"),
            got == want,
        );
    }
    Ok(())
}

fn check_candidates(config: &RunConfig, check: &mut Check) -> Result<()> {
    let m = map("x^2");
    let samples = [rat_i64(3), rat_i64(5)];
    let ledger = constant_candidates(&m, 3, &samples, config.seed, config.degree_cap)?;
    check.expect(
        "-1 supported at depth 2",
        ledger.statuses[&-1] == CandidateStatus::Supported { depth: 2 },
    );
    for d in [2i64, -2] {
        check.expect(
            &format!("{d} supported at depth 3"),
            ledger.statuses[&d] == CandidateStatus::Supported { depth: 3 },
        );
    }
    // every supported candidate's square root verifiably present in every
    // sampled tower at the supporting depth
    for (&d, status) in &ledger.statuses {
        if let CandidateStatus::Supported { depth } = status {
            for alpha in &samples {
                let prof =
                    specialization_profile(&m, alpha, *depth, config.seed, config.degree_cap)?;
                let present = prof.levels[*depth as usize - 1]
                    .field
                    .is_square_rational(&rat_i64(d), config.seed)?;
                check.expect(
                    &format!("sqrt({d}) present in K_({alpha},{depth})"),
                    present,
                );
            }
        }
    }
    Ok(())
}

fn check_criterion(config: &RunConfig, check: &mut Check) -> Result<()> {
    let report = criterion_report(&map("x^2"), &rat_i64(3), config)?;
    check.expect(
        "(x^2, alpha=3) overall CertifiedEqual",
        report.overall == OverallVerdict::CertifiedEqual,
    );
    let surviving: Vec<_> = report.hypotheses.iter().filter(|h| h.surviving).collect();
    check.expect(
        "(x^2, alpha=3) surviving row has LHS = RHS = 8",
        surviving.len() == 1 && surviving[0].lhs == 8,
    );

    let report = criterion_report(&map("x^2"), &rat_i64(2), config)?;
    check.expect(
        "(x^2, alpha=2) overall CertifiedNotEqual",
        report.overall == OverallVerdict::CertifiedNotEqual,
    );
    let surviving: Vec<_> = report.hypotheses.iter().filter(|h| h.surviving).collect();
    check.expect(
        "(x^2, alpha=2) surviving row has LHS = 4 < 8",
        surviving.len() == 1 && surviving[0].lhs == 4,
    );

    // (x^2-1, alpha=1, hypothesis empty): equal with LHS = 8
    let m = map("x^2-1");
    let bracket = gn_bracket(&m, &[rat_i64(1), rat_i64(2)], 2, config.seed, config.degree_cap)?;
    let row = evaluate_criterion(
        &m,
        &rat_i64(1),
        &KPrimeHypothesis { basis: vec![] },
        &bracket,
        config,
    )?;
    check.expect(
        "(x^2-1, alpha=1, hyp {}) equal with LHS = 8",
        row.lhs == 8 && row.rhs_lower == 8 && row.verdict == HypothesisVerdict::Equal,
    );
    Ok(())
}

fn check_anomalies(config: &RunConfig, check: &mut Check) -> Result<()> {
    for m in ["x^2-1", "x^2-2"] {
        let outcome = collision_condition(&map(m))?;
        check.expect(
            &format!("collision_condition({m}) returns a witness"),
            matches!(outcome, CollisionOutcome::Witness { .. }),
        );
    }
    let m = map("x^2-2");
    let samples = [rat_i64(1), rat_i64(3), rat_i64(5)];
    let bracket = gn_bracket(&m, &samples, 3, config.seed, config.degree_cap)?;
    check.expect("x^2-2 bracket upper = 128", bracket.upper == 128);
    check.expect("x^2-2 bracket uncertified", !bracket.certified);
    let max_measured = samples
        .iter()
        .map(|a| {
            specialization_profile(&m, a, 3, config.seed, config.degree_cap)
                .map(|p| p.degrees()[2])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap();
    check.expect(
        "bracket lower equals the measured maximum",
        bracket.lower == max_measured && bracket.lower <= bracket.upper,
    );
    let report = criterion_report(&m, &rat_i64(1), config)?;
    check.expect(
        "criterion report for x^2-2 is Conditional",
        matches!(report.overall, OverallVerdict::Conditional { .. }),
    );
    Ok(())
}

fn check_frobenius(config: &RunConfig, check: &mut Check) -> Result<()> {
    let m = map("x^2-1");
    let samples = frobenius_samples(&m, &rat_i64(1), 2, 25, config.seed)?;
    check.expect("25 good primes sampled", samples.len() == 25);
    let exact = specialization_profile(&m, &rat_i64(1), 2, config.seed, config.degree_cap)?
        .degrees()[1];
    let mut all_divide = true;
    let mut all_sum = true;
    for s in &samples {
        let mut lcm = 1u64;
        for &d in &s.degrees {
            lcm = num_integer::lcm(lcm, d as u64);
        }
        all_divide &= exact % lcm == 0;
        all_sum &= s.degrees.iter().sum::<usize>() == 4;
    }
    check.expect("every cycle-length lcm divides the exact degree 8", all_divide);
    check.expect("every degree multiset sums to 4", all_sum);
    Ok(())
}

/// Criterion 11: two runs of the suite produce byte-identical JSON.
fn check_determinism(config: &RunConfig, first_pass: &[CriterionResult]) -> CriterionResult {
    let mut check = Check::new();
    let rerun: Vec<CriterionResult> = vec![
        run_criterion(1, "PCF classification", config, check_pcf),
        run_criterion(2, "wreath orders and enumeration", config, check_orders),
        run_criterion(3, "Frattini oracle vs formula", config, check_frattini),
        run_criterion(4, "free-group index-p counts", config, check_free_group),
        run_criterion(5, "splitting degrees", config, check_splitting),
        run_criterion(6, "x^2 family closed form", config, check_x2_family),
        run_criterion(7, "constant candidates", config, check_candidates),
        run_criterion(8, "criterion verdicts", config, check_criterion),
        run_criterion(9, "anomaly handling", config, check_anomalies),
        run_criterion(10, "Frobenius consistency", config, check_frobenius),
    ];
    let a = serde_json::to_string(&first_pass).expect("serializable");
    let b = serde_json::to_string(&rerun).expect("serializable");
    check.expect("second run is byte-identical", a == b);
    CriterionResult {
        id: 11,
        name: "determinism".into(),
        pass: check.pass,
        details: check.details,
    }
}

/// One line per criterion, like the acceptance suite prints.
pub fn render_text(report: &SelftestReport) -> String {
    let mut out = String::new();
    for c in &report.criteria {
        out.push_str(&format!(
            "criterion {:2}: {} — {}\n",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.name
        ));
        if !c.pass {
            for d in &c.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
    }
    out.push_str(&format!(
        "selftest: {}\n",
        if report.pass { "PASS" } else { "FAIL" }
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_values() {
        assert_eq!(cyclotomic_kummer_degree(1), 2);
        assert_eq!(cyclotomic_kummer_degree(2), 8);
        assert_eq!(cyclotomic_kummer_degree(3), 32);
    }

    #[test]
    fn suite_passes() {
        let report = run(&RunConfig::default());
        for c in &report.criteria {
            assert!(c.pass, "criterion {} failed: {:?}", c.id, c.details);
        }
        assert!(report.pass);
    }
}
