//! Acceptance criteria. Prints one PASS/FAIL line per criterion with its
//! timing against a pinned budget, then exits non-zero if any failed.
//!
//! Comparisons are exact throughout: polynomial and series equality up to
//! the stated truncation, exact rational equality at sample points, and
//! integer equality of counts. The only tolerances are the time budgets.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qplab::harness::{
    suite_instances, verify_all, IdentityInstance, Mode, RunOptions, Status, Suite,
};
use qplab::tables::{reproduce, TableName};

/// Grade through which truncated comparisons run.
const PRODUCT_CUTOFF: i64 = 30;
const UNRESTRICTED_CUTOFF: i64 = 20;
const FOUR_VAR_CUTOFF: i64 = 14;
const X_CUTOFF: i64 = 4;
const X_NORM: i64 = 12;

/// Rational-point settings.
const POINTS: u32 = 20;
const SEED: u64 = 0xB6;

/// Wall-clock budgets.
const TABLE_BUDGET: Duration = Duration::from_secs(1);
const DISTINCT_SWEEP_BUDGET: Duration = Duration::from_secs(10);
const RATIONAL_BUDGET: Duration = Duration::from_secs(5);
const BIJECTION_BUDGET: Duration = Duration::from_secs(60);
const GENERAL_BUDGET: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

struct Grid(Vec<IdentityInstance>);

impl Grid {
    fn new() -> Grid {
        Grid(Vec::new())
    }

    fn add(&mut self, id: &str, params: &[(&str, i64)]) {
        self.0.push(IdentityInstance::new(id, params));
    }

    fn add_mode(&mut self, id: &str, params: &[(&str, i64)], mode: Mode) {
        self.0
            .push(IdentityInstance::new(id, params).with_mode(mode));
    }

    /// Verifies every instance; all must pass.
    fn run(self) -> Outcome {
        let reports = verify_all(&self.0, 0, &RunOptions::default());
        let bad: Vec<String> = reports
            .iter()
            .filter(|r| r.status != Status::Pass)
            .take(3)
            .map(|r| format!("{} {}", r.instance(), r.status))
            .collect();
        if bad.is_empty() {
            let mut modes: Vec<String> = reports
                .iter()
                .map(|r| r.mode.to_string().split(':').next().unwrap_or_default().to_string())
                .collect();
            modes.sort_unstable();
            modes.dedup();
            Ok(format!("{} instances pass ({})", reports.len(), modes.join(", ")))
        } else {
            let n = reports.iter().filter(|r| r.status != Status::Pass).count();
            Err(format!(
                "{n} of {} instances not passing, e.g. {}",
                reports.len(),
                bad.join("; ")
            ))
        }
    }
}

fn tables() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut counts = Vec::new();
    for name in TableName::ALL {
        let t0 = Instant::now();
        let t = reproduce(name).map_err(|e| e.to_string())?;
        let dt = t0.elapsed();
        slowest = slowest.max(dt);
        if dt > TABLE_BUDGET {
            return Err(format!("{name} took {dt:?}"));
        }
        if !t.ok() {
            return Err(format!("{name} not reproduced:\n{t}"));
        }
        counts.extend(t.sets.iter().map(|s| s.count));
    }
    if counts != [10, 10, 9, 9, 4, 4] {
        return Err(format!("counts {counts:?}"));
    }
    let t8 = reproduce(TableName::Table8).map_err(|e| e.to_string())?;
    let polys: Vec<&str> = t8
        .polynomials
        .iter()
        .map(|r| r.closed_form.as_str())
        .collect();
    let want = [
        "q^9 + q^11 + q^13 + q^15",
        "q^5 + q^7 + 2*q^9 + q^11 + q^13",
        "q^6 + q^8 + q^10 + q^12",
    ];
    if polys != want {
        return Err(format!("table8 polynomials {polys:?}"));
    }
    Ok(format!(
        "counts 10/10, 9/9, 4/4 and three polynomials; slowest table {slowest:.2?}"
    ))
}

fn distinct_sweep() -> Outcome {
    let mut g = Grid::new();
    for b in 0..=9 {
        for i in 0..=4 {
            for j in 0..=4 {
                g.add("T2_1", &[("bound", b), ("i", i), ("j", j)]);
                if b >= 1 {
                    g.add("L2_2", &[("bound", b), ("i", i), ("j", j)]);
                }
            }
        }
    }
    g.run()
}

fn bg_rank() -> Outcome {
    let mut g = Grid::new();
    for b in 0..=8 {
        for k in -5..=6 {
            g.add("T3_1", &[("bound", b), ("k", k)]);
            g.add_mode(
                "T3_2",
                &[("bound", b), ("k", k)],
                Mode::Truncated(UNRESTRICTED_CUTOFF),
            );
        }
        g.add_mode(
            "C3_4",
            &[("bound", b)],
            Mode::Truncated(UNRESTRICTED_CUTOFF),
        );
    }
    for b in 0..=10 {
        g.add("T3_3", &[("bound", b)]);
    }
    g.run()
}

fn single_sums() -> Outcome {
    let mut g = Grid::new();
    for b in 0..=9 {
        g.add("T4_1", &[("bound", b)]);
        for i in 0..=4 {
            for j in 0..=4 {
                g.add("T4_2", &[("N", b / 2), ("nu", b % 2), ("i", i), ("j", j)]);
            }
        }
    }
    for n in 0..=6 {
        for nu in 0..=1 {
            g.add("C4_3a", &[("N", n), ("nu", nu)]);
            g.add("C4_3b", &[("N", n), ("nu", nu)]);
        }
        g.add("T4_4", &[("N", n)]);
        g.add("T4_5", &[("N", n)]);
    }
    g.run()
}

fn boulet_sums() -> Outcome {
    let mut g = Grid::new();
    let fc = Mode::Truncated(FOUR_VAR_CUTOFF);
    g.add_mode("T5_1a", &[], fc);
    g.add_mode("T5_1b", &[], fc);
    g.add_mode("E5_PSI2PHI", &[], fc);
    for b in 0..=6 {
        g.add_mode("T5_2a", &[("bound", b)], Mode::Exact);
        g.add_mode("T5_2b", &[("bound", b)], fc);
        g.add_mode("E5_PSI2PHI", &[("bound", b)], fc);
    }
    for nu in 0..=1 {
        g.add_mode(
            "T5_3",
            &[("nu", nu), ("x_cutoff", X_CUTOFF)],
            Mode::Truncated(X_NORM),
        );
    }
    g.run()
}

fn alternating_sums() -> Outcome {
    let mut g = Grid::new();
    for b in 0..=10 {
        g.add("T5_4", &[("bound", b)]);
        g.add("E5_RS2PSI", &[("bound", b)]);
        for k in 0..=b {
            g.add("E5_EXTRACT", &[("bound", b), ("k", k)]);
        }
    }
    for n in 0..=16 {
        for big_n in 0..=n + 1 {
            for k in 0..=n {
                g.add("T5_6", &[("N", big_n), ("n", n), ("k", k)]);
                g.add("T5_7", &[("N", big_n), ("n", n), ("k", k)]);
            }
        }
    }
    g.run()
}

fn finite_boulet() -> Outcome {
    let mut g = Grid::new();
    for b in 0..=5 {
        g.add_mode("T6_1a", &[("bound", b)], Mode::Truncated(FOUR_VAR_CUTOFF));
        g.add("T6_1b", &[("bound", b)]);
        for m in 0..=5 {
            g.add("E6_QBIN", &[("bound", b), ("parts", m)]);
            if b == 0 || m == 0 {
                continue;
            }
            if m % 2 == 0 {
                g.add("T6_2", &[("bound", b), ("parts", m)]);
            } else {
                g.add("E6_RESTPHI", &[("bound", b), ("parts", m)]);
            }
            // the Yee-type sum is stated for every parity but odd bound with even parts count
            if (b % 2, m % 2) != (1, 0) {
                g.add("T6_3", &[("bound", b), ("parts", m)]);
            }
        }
    }
    g.run()
}

fn rational_points() -> Outcome {
    let mut g = Grid::new();
    let mode = Mode::RationalPoints {
        count: POINTS,
        seed: SEED,
    };
    for n in 0..=4 {
        for nu in 0..=1 {
            g.add_mode("T6_4", &[("N", n), ("nu", nu)], mode);
            g.add_mode("E6_TRANSFORM", &[("N", n), ("nu", nu)], mode);
        }
    }
    g.run()
}

fn outlook() -> Outcome {
    let mut g = Grid::new();
    for b in 0..=6 {
        for m in 0..=6 {
            g.add("P7_1", &[("bound", b), ("parts", m)]);
            if m >= 1 {
                g.add("P7_2", &[("bound", b), ("parts", m)]);
            }
        }
        for x in 0..=3 {
            for m in 0..=4 {
                g.add("P7_4", &[("bound", b), ("i", 0), ("j", x), ("m", m)]);
                if x > 0 {
                    g.add("P7_4", &[("bound", b), ("i", x), ("j", 0), ("m", m)]);
                }
            }
        }
    }
    for b in 1..=5 {
        for m in 1..=5 {
            for n in 0..=14 {
                for k in 0..=n.min(b * m) {
                    g.add("P7_3", &[("bound", b), ("parts", m), ("n", n), ("k", k)]);
                }
            }
        }
    }
    g.run()
}

fn bijections() -> Outcome {
    let mut g = Grid::new();
    for n in 0..=18 {
        g.add("RHO_PROPS", &[("norm", n)]);
        g.add("RHOSTAR_PROPS", &[("norm", n)]);
    }
    g.run()
}

fn products() -> Outcome {
    let mut g = Grid::new();
    let pc = Mode::Truncated(PRODUCT_CUTOFF);
    for i in 0..=2 {
        for j in 0..=2 {
            g.add_mode("T1_1", &[("i", i), ("j", j)], pc);
        }
    }
    for k in 0..=3 {
        for mu in 0..=1 {
            g.add_mode("E1_GF13MOD4", &[("k", k), ("mu", mu)], pc);
        }
        for e in 1..=2 {
            g.add_mode("T2_3", &[("k", k), ("eq", e)], pc);
            g.add_mode("T2_4", &[("k", k), ("which", e)], pc);
        }
    }
    for e in 1..=2 {
        g.add_mode("E2_PRODSILLS", &[("eq", e)], pc);
        g.add_mode("T2_5", &[("variant", e)], pc);
        g.add_mode("T2_6", &[("variant", e)], pc);
    }
    g.run()
}

/// Injecting a sign error into each identity in turn must make that
/// identity's smoke instances fail with a located discrepancy, and only those.
fn mutation() -> Outcome {
    let smoke = suite_instances(Suite::Smoke);
    let mut ids: Vec<&str> = smoke.iter().map(|i| i.id.as_str()).collect();
    ids.sort_unstable();
    ids.dedup();
    for id in &ids {
        let opts = RunOptions {
            inject_fault: Some(id.to_string()),
        };
        let reports = verify_all(&smoke, 0, &opts);
        let mut failed = 0;
        for r in &reports {
            match (r.id == *id, r.status) {
                (true, Status::Fail) if r.first_discrepancy.is_some() => failed += 1,
                (false, Status::Pass) => {}
                _ => {
                    return Err(format!(
                        "fault in {id}: {} reported {}",
                        r.instance(),
                        r.status
                    ))
                }
            }
        }
        if failed == 0 {
            return Err(format!("fault in {id} went unnoticed"));
        }
    }
    Ok(format!(
        "{} identities, each sign flip caught with a discrepancy",
        ids.len()
    ))
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "table reproduction",
            budget: 4 * TABLE_BUDGET,
            run: tables,
        },
        Criterion {
            name: "bounded distinct parts sweep and recurrence",
            budget: DISTINCT_SWEEP_BUDGET,
            run: distinct_sweep,
        },
        Criterion {
            name: "BG-rank bounded, unrestricted and summed",
            budget: GENERAL_BUDGET,
            run: bg_rank,
        },
        Criterion {
            name: "single-sum forms and corollaries",
            budget: GENERAL_BUDGET,
            run: single_sums,
        },
        Criterion {
            name: "Boulet-Stanley sums, products and x-series",
            budget: GENERAL_BUDGET,
            run: boulet_sums,
        },
        Criterion {
            name: "alternating-sum forms and count identities",
            budget: GENERAL_BUDGET,
            run: alternating_sums,
        },
        Criterion {
            name: "finite Boulet-Stanley and box sums",
            budget: GENERAL_BUDGET,
            run: finite_boulet,
        },
        Criterion {
            name: "rational-point evaluations",
            budget: RATIONAL_BUDGET,
            run: rational_points,
        },
        Criterion {
            name: "box statistics and refined distinct parts",
            budget: GENERAL_BUDGET,
            run: outlook,
        },
        Criterion {
            name: "bijection round trips and invariants",
            budget: BIJECTION_BUDGET,
            run: bijections,
        },
        Criterion {
            name: "infinite products through q^30",
            budget: GENERAL_BUDGET,
            run: products,
        },
        Criterion {
            name: "mutation sensitivity",
            budget: GENERAL_BUDGET,
            run: mutation,
        },
    ];
    let mut failures = 0;
    for (k, c) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let result = (c.run)();
        let dt = t0.elapsed();
        let (verdict, detail) = match result {
            Ok(d) if dt <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(d) => ("FAIL", d),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!(
            "{verdict} {:>2} {:<46} {:>9.3}s / {:>5.0}s  {detail}",
            k + 1,
            c.name,
            dt.as_secs_f64(),
            c.budget.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
