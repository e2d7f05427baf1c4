//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always printed; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gencayley::automorphism::{inversion_automorphism, AlphaContext};
use gencayley::census::{report_string, run_census, CensusConfig, ReportFormat};
use gencayley::codes::{is_perfect_code, CodeMode};
use gencayley::gencayley::{build_graph, validate_elems};
use gencayley::group::{catalog_up_to, GroupSpec};
use gencayley::subgroup::Subgroup;
use gencayley::subgroup_codes::{decide_subgroup_pc, decide_subgroup_tpc, RefutationReason};
use gencayley::verify::{product_survey, run_suite, SuiteReport, VerifyConfig};
use gencayley::ElemSet;

const GOLDEN: &str = include_str!("golden/census_z4_z6.jsonl");

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(names: &[&str], cfg: &VerifyConfig) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for name in names {
        let r: SuiteReport = match run_suite(name, cfg) {
            Ok(r) => r,
            Err(e) => {
                return Outcome {
                    ok: false,
                    detail: format!("{name}: {e}"),
                }
            }
        };
        ok &= r.passed() && r.checked > 0;
        match r.minimized() {
            None => details.push(format!("{name} {} checks", r.checked)),
            Some(c) => details.push(format!(
                "{name} {} violations, e.g. {} alpha {:?} S {:?} X {:?}: {}",
                r.violations.len(),
                c.group,
                c.alpha,
                c.s,
                c.x,
                c.detail
            )),
        }
    }
    Outcome {
        ok,
        detail: details.join("; "),
    }
}

fn cfg() -> VerifyConfig {
    VerifyConfig::default()
}

fn graph_laws() -> Outcome {
    suites(
        &["graph-laws"],
        &VerifyConfig {
            max_order: 12,
            ..cfg()
        },
    )
}

fn mode_equivalence() -> Outcome {
    suites(
        &["modes"],
        &VerifyConfig {
            max_order: 12,
            samples: 1000,
            seed: 0,
            ..cfg()
        },
    )
}

fn pc_oracle() -> Outcome {
    suites(
        &["pc-oracle"],
        &VerifyConfig {
            max_order: 16,
            ..cfg()
        },
    )
}

fn abelian() -> Outcome {
    suites(
        &["abelian"],
        &VerifyConfig {
            max_order: 24,
            ..cfg()
        },
    )
}

fn census_audit() -> Outcome {
    suites(
        &["census-audit", "census-records"],
        &VerifyConfig {
            max_order: 24,
            ..cfg()
        },
    )
}

fn transport() -> Outcome {
    suites(
        &["transport"],
        &VerifyConfig {
            max_order: 12,
            ..cfg()
        },
    )
}

fn products() -> Outcome {
    let sets = suites(
        &["product-sets"],
        &VerifyConfig {
            max_order: 8,
            ..cfg()
        },
    );
    let cases = match product_survey(6) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                ok: false,
                detail: e.to_string(),
            }
        }
    };
    let perfect: Vec<_> = cases
        .iter()
        .filter(|c| c.report.t2_perfect.is_some())
        .collect();
    let t2_true = perfect
        .iter()
        .filter(|c| c.report.t2_perfect == Some(true))
        .count();
    let literal_false = perfect
        .iter()
        .filter(|c| {
            c.report.t1_counting_from_perfect == Some(false)
                && c.report.t1_total_from_perfect == Some(false)
        })
        .count();
    let amended: Vec<_> = cases
        .iter()
        .filter(|c| c.report.t1_total_from_total.is_some())
        .collect();
    let amended_true = amended
        .iter()
        .filter(|c| c.report.t1_total_from_total == Some(true))
        .count();
    let ok = sets.ok
        && t2_true == perfect.len()
        && t2_true >= 5
        && literal_false == perfect.len()
        && amended_true == amended.len()
        && amended_true >= 3;
    Outcome {
        ok,
        detail: format!(
            "{}; T2 perfect {t2_true}/{} pairs; T1 from perfect inputs false {literal_false}/{}; \
             T1 from total inputs true {amended_true}/{}",
            sets.detail,
            perfect.len(),
            perfect.len(),
            amended.len()
        ),
    }
}

fn tpc_oracle() -> Outcome {
    let mut o = suites(
        &["tpc-oracle"],
        &VerifyConfig {
            max_order: 16,
            ..cfg()
        },
    );
    match run_census(&CensusConfig::new(catalog_up_to(16))) {
        Ok(recs) => {
            let hits: Vec<_> = recs.iter().filter(|r| r.is_tpc == Some(true)).collect();
            let moved = hits
                .iter()
                .filter(|r| r.alpha_preserves_h == Some(false))
                .count();
            o.detail += &format!(
                "; {} total-code hits, {moved} with alpha(H) != H",
                hits.len()
            );
        }
        Err(e) => {
            o.ok = false;
            o.detail += &format!("; census: {e}");
        }
    }
    o
}

fn golden() -> Outcome {
    let mut problems = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            problems.push(what.to_string());
        }
    };
    let z6 = Arc::new(GroupSpec::Cyclic(6).build().unwrap());
    let ctx = AlphaContext::shared(inversion_automorphism(&z6).unwrap()).unwrap();
    expect(ctx.omega.to_vec() == vec![0, 2, 4], "Z6 omega");
    let g1 = build_graph(&validate_elems(&ctx, &[1]).unwrap());
    expect(
        g1.edges().collect::<Vec<_>>() == vec![(0, 1), (2, 5), (3, 4)],
        "Z6 S={1} matching",
    );
    expect(
        is_perfect_code(&g1, &ElemSet::from_elems(6, [0, 2, 4]), CodeMode::Graph),
        "Z6 H={0,2,4} perfect code",
    );
    let h = Subgroup::from_elems(&z6, &[0, 3]).unwrap();
    let pc = decide_subgroup_pc(&h, &ctx);
    expect(
        pc.subset().map(|s| s.elements().to_vec()) == Some(vec![1, 5]),
        "Z6 H={0,3} witness {1,5}",
    );
    let tpc = decide_subgroup_tpc(&h, &ctx);
    expect(
        tpc.subset().map(|s| s.elements().to_vec()) == Some(vec![1, 3, 5]),
        "Z6 H={0,3} total witness {1,3,5}",
    );
    let z4 = Arc::new(GroupSpec::Cyclic(4).build().unwrap());
    let c4 = AlphaContext::shared(inversion_automorphism(&z4).unwrap()).unwrap();
    let r = decide_subgroup_pc(&Subgroup::trivial(&z4), &c4);
    expect(
        r.refutation().is_some_and(|r| {
            r.reason == RefutationReason::CosetInsideOmega && r.witness == Some(2)
        }),
        "Z4 trivial subgroup refuted at 2",
    );
    let groups = vec![GroupSpec::Cyclic(4), GroupSpec::Cyclic(6)];
    let report =
        run_census(&CensusConfig::new(groups)).and_then(|r| report_string(&r, ReportFormat::Jsonl));
    expect(
        report.as_deref().ok() == Some(GOLDEN),
        "census report differs from golden bytes",
    );
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} golden bytes match", GOLDEN.len())
        } else {
            problems.join(", ")
        },
    }
}

fn determinism() -> Outcome {
    let run = |workers| {
        let mut c = CensusConfig::new(catalog_up_to(16));
        c.workers = workers;
        run_census(&c).and_then(|r| report_string(&r, ReportFormat::Jsonl))
    };
    match (run(1), run(4)) {
        (Ok(a), Ok(b)) => Outcome {
            ok: a == b,
            detail: format!("{} bytes, {} records", a.len(), a.lines().count()),
        },
        (Err(e), _) | (_, Err(e)) => Outcome {
            ok: false,
            detail: e.to_string(),
        },
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        (
            "1 graph laws, order <= 12",
            Duration::from_secs(60),
            graph_laws,
        ),
        (
            "2 equivalent conditions agree",
            Duration::from_secs(300),
            mode_equivalence,
        ),
        (
            "3 subgroup perfect codes vs brute force, order <= 16",
            Duration::from_secs(300),
            pc_oracle,
        ),
        (
            "4 abelian criterion and construction, order <= 24",
            Duration::from_secs(60),
            abelian,
        ),
        (
            "5 census witness audits",
            Duration::from_secs(300),
            census_audit,
        ),
        (
            "6 transport of codes, order <= 12",
            Duration::from_secs(300),
            transport,
        ),
        (
            "7 product constructions",
            Duration::from_secs(300),
            products,
        ),
        (
            "8 total perfect codes vs transversal search, order <= 16",
            Duration::from_secs(300),
            tpc_oracle,
        ),
        (
            "9 worked fixtures, golden report",
            Duration::from_secs(5),
            golden,
        ),
        (
            "10 census determinism across worker counts",
            Duration::from_secs(600),
            determinism,
        ),
    ];
    let mut all = true;
    for (name, budget, f) in criteria {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let ok = o.ok && took <= budget;
        all &= ok;
        println!(
            "{} [{name}] {:.2}s (budget {}s): {}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
