//! Structured algorithms against the brute-force oracle on generated profiles.

use std::io::Write;

use dichotomous::detection::StructureProperty as S;
use dichotomous::format::write_profile;
use dichotomous::generate::{generate, GenParams, GenSpec, Structure};
use dichotomous::profile::rational;
use dichotomous::rules::{brute_force, score, solve, Algorithm, Rule, Strategy, ORACLE_BUDGET};
use dichotomous::{Result, WeightScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Config {
    pub structure: Structure,
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_m: usize,
    pub max_k: usize,
}

pub struct Mismatch {
    pub report: String,
}

pub struct Summary {
    pub checks: usize,
    pub mismatch: Option<Mismatch>,
}

fn rule_name(rule: &Rule) -> String {
    match rule {
        Rule::Mav => "mav".into(),
        Rule::Wpav(s) if *s == WeightScheme::harmonic() => "pav".into(),
        Rule::Wpav(s) => {
            let w: Vec<String> = s.entries().iter().map(ToString::to_string).collect();
            format!("wpav --weights {}", w.join(","))
        }
    }
}

/// The algorithm and rule pairs exercised for a structure.
fn plan(structure: Structure) -> Vec<(Strategy, Rule)> {
    use Algorithm as A;
    let pav = Rule::pav();
    let cc = Rule::Wpav(WeightScheme::chamberlin_courant());
    let two = Rule::Wpav(
        WeightScheme::truncated(vec![rational(1, 1), rational(1, 1)]).expect("valid weights"),
    );
    let both = |a: A| {
        vec![
            (Strategy::Force(a), Rule::pav()),
            (Strategy::Force(a), Rule::Mav),
        ]
    };
    let Structure::Property(prop) = structure else {
        return vec![(Strategy::Auto, pav), (Strategy::Auto, Rule::Mav)];
    };
    match prop.canonical() {
        S::Vi => vec![
            (Strategy::Force(A::PavViBoundedS), pav.clone()),
            (Strategy::Force(A::PavViBoundedD), pav),
            (Strategy::Force(A::WpavTruncatedVi), cc),
            (Strategy::Force(A::WpavTruncatedVi), two),
        ],
        S::Ci => vec![
            (Strategy::Force(A::PavCiBoundedS), pav.clone()),
            (Strategy::Force(A::PavCiBoundedD), pav),
            (Strategy::Force(A::WpavTruncatedCi), cc),
            (Strategy::Force(A::WpavTruncatedCi), two),
        ],
        S::Vei => both(A::Vei),
        S::Cei => both(A::Cei),
        S::Wsc => both(A::Wsc),
        S::Part | S::TwoPart => both(A::Part),
        _ => vec![
            (Strategy::Auto, pav.clone()),
            (Strategy::Auto, Rule::Mav),
            (Strategy::Force(A::PavCiBoundedS), pav.clone()),
            (Strategy::Force(A::PavViBoundedS), pav),
        ],
    }
}

pub fn run(cfg: &Config) -> Result<Summary> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let plan = plan(cfg.structure);
    let params = GenParams {
        max_vote_size: Some(3),
        max_degree: Some(3),
        spread: None,
    };
    let mut checks = 0;
    for trial in 0..cfg.trials {
        let n = rng.gen_range(2..=cfg.max_n.max(2));
        let m = rng.gen_range(2..=cfg.max_m.max(2));
        let k = rng.gen_range(1..=cfg.max_k.clamp(1, m));
        let gen_seed: u64 = rng.gen();
        let p = generate(&GenSpec::new(cfg.structure, n, m, gen_seed).with_params(params))?;
        for (strategy, rule) in &plan {
            let got = solve(&p, k, rule, *strategy)?;
            let oracle = brute_force(&p, k, rule, ORACLE_BUDGET)?;
            let rescored = score(&p, rule, &got.committee)?;
            checks += 1;
            if got.score != oracle.score || rescored != got.score {
                let report = format!(
                    "trial {trial}: {} under {} with k={k}\nreported {}, recomputed {}, oracle {}\ncommittee: {}\n{}",
                    got.algorithm,
                    rule_name(rule),
                    got.score,
                    rescored,
                    oracle.score,
                    got.committee.labels(&p).join(","),
                    write_profile(&p)
                );
                return Ok(Summary {
                    checks,
                    mismatch: Some(Mismatch { report }),
                });
            }
        }
    }
    Ok(Summary {
        checks,
        mismatch: None,
    })
}

pub fn report(out: &mut dyn Write, cfg: &Config, s: &Summary) -> std::io::Result<()> {
    match &s.mismatch {
        None => writeln!(
            out,
            "crosscheck: {} trials, {} checks, 0 mismatches",
            cfg.trials, s.checks
        ),
        Some(m) => write!(
            out,
            "crosscheck: mismatch after {} checks\n{}",
            s.checks, m.report
        ),
    }
}
