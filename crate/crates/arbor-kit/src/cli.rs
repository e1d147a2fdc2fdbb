//! Command-line surface: thin subcommands over the library, with text or
//! JSON output. Exit codes: 0 success, 1 domain errors, 2 usage, 3 caps.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arboreal::{constant_candidates, frobenius_samples, specialization_profile_cached};
use crate::cache::FileCache;
use crate::config::RunConfig;
use crate::criterion::{criterion_report, frattini_depth, FrattiniDepth};
use crate::dynamics::{critical_orbit, UnicriticalMap};
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use crate::selftest;
use crate::tree::{
    brute_force_frattini, free_group_index_p_normal_count, group_order, maximal_subgroup_count,
    verify_free_group_count, WreathDescriptor,
};

#[derive(Parser, Debug)]
#[command(
    name = "arbor",
    about = "Finite-depth arboreal Galois data for x^(p^n) + c over Q",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for the deterministic random streams.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Absolute field-degree cap; deeper computations fail loudly.
    #[arg(long, default_value_t = 256)]
    degree_cap: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Critical orbit and PCF certificate of a map.
    Orbit {
        /// Map, e.g. "x^2-1" or "p=2,n=1,c=-1".
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[command(flatten)]
        common: Common,
    },
    /// Iterated wreath product data: order, maximal-subgroup count, and the
    /// brute-force Frattini oracle when the order is enumerable.
    Wreath {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        depth: u32,
        /// Run the Frattini oracle even for orders past 1024 (quadratic in
        /// the group order; the hard cap stays at 2^16 elements).
        #[arg(long)]
        brute: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Index-p normal subgroup counts of a free group: closed form and
    /// brute-force verification.
    Freegroup {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Exact per-level degrees of K_{alpha,i} up to a depth.
    Profile {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        depth: u32,
        /// Optional cache file for splitting towers (generic maps).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Frobenius cycle-type samples of f^n(x) - alpha at good primes.
    Frobenius {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        depth: u32,
        /// How many good primes to sample.
        #[arg(long, default_value_t = 25)]
        primes: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Constant-field candidate ledger over {-1, 2, -2} (quadratic maps).
    Constants {
        #[arg(long)]
        map: String,
        #[arg(long)]
        depth: u32,
        /// Comma-separated sample list, e.g. "1,2,3".
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Full criterion report for a specialization.
    Criterion {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Depth of the constant-candidate evidence (default 3).
        #[arg(long)]
        depth: Option<u32>,
        /// Comma-separated sample list overriding the default.
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

/// Parse arguments and run; returns (exit code, output).
pub fn dispatch<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return (e.exit_code(), e.render().to_string()),
    };
    match run_command(cli.command) {
        Ok(output) => (0, output),
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}

fn parse_samples(s: &Option<String>) -> Result<Option<Vec<Rational>>> {
    match s {
        None => Ok(None),
        Some(text) => {
            let mut out = Vec::new();
            for part in text.split(',') {
                out.push(parse_rational(part)?);
            }
            Ok(Some(out))
        }
    }
}

fn config_from(common: &Common) -> RunConfig {
    RunConfig {
        seed: common.seed,
        degree_cap: common.degree_cap,
        json: common.json,
        ..RunConfig::default()
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct OrbitJson {
    schema: String,
    map: String,
    pcf: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<String>>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    frattini_depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<crate::dynamics::NotPcfCertificate>,
}

fn run_command(command: Command) -> Result<String> {
    match command {
        Command::Orbit { map, common } => {
            let m = UnicriticalMap::parse(&map)?;
            let result = critical_orbit(&m);
            let json = match &result {
                Ok(orbit) => OrbitJson {
                    schema: "arbor-kit/1".into(),
                    map: m.to_string(),
                    pcf: true,
                    points: Some(orbit.points.iter().map(|p| p.to_string()).collect()),
                    n: Some(orbit.size()),
                    tail: Some(orbit.tail_length),
                    cycle: Some(orbit.cycle_length),
                    frattini_depth: match frattini_depth(&m)? {
                        FrattiniDepth::Exact(n) => Some(n),
                        FrattiniDepth::ExistsUnspecified => None,
                    },
                    certificate: None,
                },
                Err(cert) => OrbitJson {
                    schema: "arbor-kit/1".into(),
                    map: m.to_string(),
                    pcf: false,
                    points: None,
                    n: None,
                    tail: None,
                    cycle: None,
                    frattini_depth: None,
                    certificate: Some(cert.clone()),
                },
            };
            if common.json {
                return Ok(to_json(&json));
            }
            Ok(match result {
                Ok(orbit) => format!(
                    "{} is PCF: orbit {:?}, N = {}, tail {}, cycle {}\n",
                    m,
                    orbit.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    orbit.size(),
                    orbit.tail_length,
                    orbit.cycle_length
                ),
                Err(cert) => format!("{m} is not PCF: {cert:?}\n"),
            })
        }
        Command::Wreath {
            p,
            n,
            depth,
            brute,
            common,
        } => {
            let w = WreathDescriptor::new(p, n, depth);
            let order = group_order(&w);
            let maximal = maximal_subgroup_count(p, n, depth);
            let config = config_from(&common);
            let auto_limit = if brute { config.closure_cap } else { 1024 };
            let brute = if group_order(&w).to_u64().is_some_and(|o| o <= auto_limit) {
                Some(brute_force_frattini(&w, config.closure_cap)?)
            } else {
                None
            };
            #[derive(Serialize)]
            struct WreathJson {
                schema: String,
                p: u64,
                n: u32,
                depth: u32,
                order: String,
                maximal: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                bruteforce: Option<BruteJson>,
            }
            #[derive(Serialize)]
            struct BruteJson {
                rank: u32,
                maximal: u64,
            }
            let json = WreathJson {
                schema: "arbor-kit/1".into(),
                p,
                n,
                depth,
                order: order.to_string(),
                maximal: maximal.to_string(),
                bruteforce: brute.map(|(rank, maximal)| BruteJson { rank, maximal }),
            };
            if common.json {
                return Ok(to_json(&json));
            }
            let mut out = format!(
                "[C_{}^{}]^{depth}: order {order}, maximal subgroups {maximal}\n",
                p,
                n
            );
            if let Some(b) = &json.bruteforce {
                out.push_str(&format!(
                    "brute force: Frattini quotient rank {}, maximal count {}\n",
                    b.rank, b.maximal
                ));
            }
            Ok(out)
        }
        Command::Freegroup { s, p, common } => {
            let closed = free_group_index_p_normal_count(s, p);
            let config = config_from(&common);
            let verified = verify_free_group_count(s, p, config.hom_cap)?;
            #[derive(Serialize)]
            struct FreeJson {
                schema: String,
                s: u32,
                p: u64,
                closed_form: String,
                verified: u64,
            }
            let json = FreeJson {
                schema: "arbor-kit/1".into(),
                s,
                p,
                closed_form: closed.to_string(),
                verified,
            };
            if common.json {
                return Ok(to_json(&json));
            }
            Ok(format!(
                "free group rank {s}, p = {p}: closed form {closed}, enumeration {verified}\n"
            ))
        }
        Command::Profile {
            map,
            alpha,
            depth,
            cache,
            common,
        } => {
            let m = UnicriticalMap::parse(&map)?;
            let a = parse_rational(&alpha)?;
            let config = config_from(&common);
            let mut cache_file = match &cache {
                Some(path) => Some(FileCache::open(path)?),
                None => None,
            };
            let profile = specialization_profile_cached(
                &m,
                &a,
                depth,
                config.seed,
                config.degree_cap,
                cache_file.as_mut(),
            )?;
            #[derive(Serialize)]
            struct LevelJson {
                level: u32,
                degree: u64,
                new_square_classes: Vec<String>,
            }
            #[derive(Serialize)]
            struct ProfileJson {
                schema: String,
                map: String,
                alpha: String,
                levels: Vec<LevelJson>,
            }
            let json = ProfileJson {
                schema: "arbor-kit/1".into(),
                map: m.to_string(),
                alpha: a.to_string(),
                levels: profile
                    .levels
                    .iter()
                    .map(|l| LevelJson {
                        level: l.level,
                        degree: l.degree,
                        new_square_classes: l.new_square_classes.clone(),
                    })
                    .collect(),
            };
            if common.json {
                return Ok(to_json(&json));
            }
            let mut out = format!("profile of {m} at alpha = {a}\n");
            for l in &profile.levels {
                out.push_str(&format!(
                    "  level {}: [K_{} : Q] = {}{}\n",
                    l.level,
                    l.level,
                    l.degree,
                    if l.new_square_classes.is_empty() {
                        String::new()
                    } else {
                        format!("  (new square classes: {})", l.new_square_classes.join("; "))
                    }
                ));
            }
            Ok(out)
        }
        Command::Frobenius {
            map,
            alpha,
            depth,
            primes,
            common,
        } => {
            let m = UnicriticalMap::parse(&map)?;
            let a = parse_rational(&alpha)?;
            let config = config_from(&common);
            let samples = frobenius_samples(&m, &a, depth, primes, config.seed)?;
            #[derive(Serialize)]
            struct FrobJson {
                schema: String,
                map: String,
                alpha: String,
                depth: u32,
                samples: Vec<crate::arboreal::FrobeniusSample>,
            }
            let json = FrobJson {
                schema: "arbor-kit/1".into(),
                map: m.to_string(),
                alpha: a.to_string(),
                depth,
                samples: samples.clone(),
            };
            if common.json {
                return Ok(to_json(&json));
            }
            let mut out = format!("Frobenius samples for f^{depth}(x) - {a}, f = {m}\n");
            for s in &samples {
                out.push_str(&format!("  q = {:5}: degrees {:?}\n", s.prime, s.degrees));
            }
            Ok(out)
        }
        Command::Constants {
            map,
            depth,
            samples,
            common,
        } => {
            let m = UnicriticalMap::parse(&map)?;
            let config = config_from(&common);
            let sample_values = match parse_samples(&samples)? {
                Some(v) => v,
                None => crate::arboreal::default_samples(&m)?,
            };
            let ledger = constant_candidates(&m, depth, &sample_values, config.seed, config.degree_cap)?;
            #[derive(Serialize)]
            struct ConstJson {
                schema: String,
                map: String,
                depth: u32,
                samples: Vec<String>,
                constants: BTreeMap<String, String>,
            }
            let json = ConstJson {
                schema: "arbor-kit/1".into(),
                map: m.to_string(),
                depth,
                samples: sample_values.iter().map(|v| v.to_string()).collect(),
                constants: crate::criterion::constants_report(&ledger),
            };
            if common.json {
                return Ok(to_json(&json));
            }
            let mut out = format!("constant candidates for {m} at depth {depth}\n");
            for (d, status) in &json.constants {
                out.push_str(&format!("  {d}: {status}\n"));
            }
            Ok(out)
        }
        Command::Criterion {
            map,
            alpha,
            depth,
            samples,
            common,
        } => {
            let m = UnicriticalMap::parse(&map)?;
            let a = parse_rational(&alpha)?;
            let mut config = config_from(&common);
            if let Some(d) = depth {
                config.constant_depth = d;
            }
            config.samples = parse_samples(&samples)?;
            let report = criterion_report(&m, &a, &config)?;
            if common.json {
                return Ok(to_json(&report));
            }
            let mut out = format!(
                "criterion for {m} at alpha = {a} (N = {})\n",
                report.n
            );
            out.push_str(&format!(
                "  |G_N| bracket: [{}, {}]{}\n",
                report.bracket.lower,
                report.bracket.upper,
                if report.bracket.certified { " certified" } else { "" }
            ));
            out.push_str("  constants:\n");
            for (d, s) in &report.constants {
                out.push_str(&format!("    {d}: {s}\n"));
            }
            out.push_str("  hypotheses:\n");
            for h in &report.hypotheses {
                let rhs = match &h.rhs {
                    crate::criterion::RhsJson::Exact(v) => v.to_string(),
                    crate::criterion::RhsJson::Interval([lo, hi]) => format!("[{lo}, {hi}]"),
                };
                out.push_str(&format!(
                    "    basis {:?} (rank {}): LHS {} vs RHS {} -> {}{}\n",
                    h.basis,
                    h.rank,
                    h.lhs,
                    rhs,
                    h.verdict,
                    if h.surviving { "  [surviving]" } else { "" }
                ));
            }
            out.push_str(&format!("  overall: {:?}\n", report.overall));
            Ok(out)
        }
        Command::Selftest { common } => {
            let config = config_from(&common);
            let report = selftest::run(&config);
            let output = if common.json {
                to_json(&report)
            } else {
                selftest::render_text(&report)
            };
            if report.pass {
                Ok(output)
            } else {
                // failed suite still prints, but signals via the exit code
                Err(Error::SelftestFailed(output))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let mut full = vec!["arbor"];
        full.extend_from_slice(args);
        dispatch(full)
    }

    #[test]
    fn orbit_json_shape() {
        let (code, out) = run(&["orbit", "--map", "x^2-1", "--json"]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pcf"], true);
        assert_eq!(v["N"], 2);
        assert_eq!(v["points"][0], "0");
        assert_eq!(v["points"][1], "-1");
        assert_eq!(v["frattini_depth"], 2);
    }

    #[test]
    fn orbit_not_pcf() {
        let (code, out) = run(&["orbit", "--map", "x^2+1", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pcf"], false);
        assert!(v["certificate"]["Escape"]["index"].is_number());
    }

    #[test]
    fn wreath_depth_three() {
        let (code, out) = run(&["wreath", "--p", "2", "--n", "1", "--depth", "3", "--json"]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], "128");
        assert_eq!(v["maximal"], "7");
        assert_eq!(v["bruteforce"]["rank"], 3);
        assert_eq!(v["bruteforce"]["maximal"], 7);
    }

    #[test]
    fn freegroup_counts() {
        let (code, out) = run(&["freegroup", "--s", "3", "--p", "2", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["closed_form"], "7");
        assert_eq!(v["verified"], 7);
    }

    #[test]
    fn profile_command() {
        let (code, out) = run(&[
            "profile", "--map", "x^2-1", "--alpha", "1", "--depth", "2", "--json",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["levels"][0]["degree"], 2);
        assert_eq!(v["levels"][1]["degree"], 8);
    }

    #[test]
    fn criterion_command_verdicts() {
        let (code, out) = run(&["criterion", "--map", "x^2", "--alpha", "3", "--json"]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], "arbor-kit/1");
        assert_eq!(v["overall"]["kind"], "CertifiedEqual");
        let (code, out) = run(&["criterion", "--map", "x^2", "--alpha", "2", "--json"]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["overall"]["kind"], "CertifiedNotEqual");
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _) = run(&["orbit"]);
        assert_eq!(code, 2);
        let (code, _) = run(&["nonsense"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn cap_errors_exit_three() {
        let (code, out) = run(&[
            "profile", "--map", "x^2", "--alpha", "3", "--depth", "4", "--degree-cap", "16",
        ]);
        assert_eq!(code, 3, "{out}");
        let (code, _) = run(&["wreath", "--p", "2", "--n", "1", "--depth", "9", "--json"]);
        // depth 9 order exceeds the enumeration cap; brute force is skipped,
        // so the command still succeeds
        assert_eq!(code, 0);
    }

    #[test]
    fn post_critical_alpha_exit_one() {
        let (code, out) = run(&["profile", "--map", "x^2-1", "--alpha", "-1", "--depth", "2"]);
        assert_eq!(code, 1);
        assert!(out.contains("strictly post-critical"));
    }

    #[test]
    fn profile_cache_flag() {
        let path = std::env::temp_dir().join(format!("arbor-cli-cache-{}", std::process::id()));
        let _ = std::fs::remove_file(&path);
        let cache = path.to_str().unwrap();
        // generic (non-quadratic) path goes through the splitting cache
        let args = [
            "profile", "--map", "x^4-1", "--alpha", "3", "--depth", "1", "--cache", cache,
            "--json",
        ];
        let (code, first) = run(&args);
        assert_eq!(code, 0, "{first}");
        let lines = std::fs::read_to_string(&path).unwrap().lines().count();
        assert_eq!(lines, 1);
        let (code, second) = run(&args);
        assert_eq!(code, 0);
        assert_eq!(first, second);
        // append-only: the hit did not add lines
        let lines = std::fs::read_to_string(&path).unwrap().lines().count();
        assert_eq!(lines, 1);
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn constants_reject_higher_degree_maps() {
        let (code, out) = run(&["constants", "--map", "x^4-1", "--depth", "2"]);
        assert_eq!(code, 1);
        assert!(out.contains("quadratic"));
    }

    #[test]
    fn library_types_are_send_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::tower::NumberTower>();
        assert_send_sync::<crate::tower::FieldElement>();
        assert_send_sync::<crate::tower::ChainField>();
        assert_send_sync::<crate::tree::Portrait>();
        assert_send_sync::<crate::dynamics::UnicriticalMap>();
    }
}
