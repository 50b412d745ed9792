use std::fmt;
use std::str::FromStr;

use super::{HarnessError, IdentityInstance, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Table reproductions plus one small instance per identity.
    Smoke,
    /// The acceptance grids.
    Default,
    /// Larger grids.
    Full,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Smoke => "smoke",
            Suite::Default => "default",
            Suite::Full => "full",
        })
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Suite, HarnessError> {
        match s {
            "smoke" => Ok(Suite::Smoke),
            "default" => Ok(Suite::Default),
            "full" => Ok(Suite::Full),
            _ => Err(HarnessError::InvalidParameters(format!(
                "unknown suite {s:?}; expected smoke, default or full"
            ))),
        }
    }
}

fn inst(id: &str, params: &[(&str, i64)]) -> IdentityInstance {
    IdentityInstance::new(id, params)
}

/// Table reproductions: counts and polynomials with known values.
pub fn table_instances() -> Vec<IdentityInstance> {
    vec![
        inst("T1_1", &[("n", 14), ("i", 1), ("j", 1)]),
        inst("T5_7", &[("N", 3), ("n", 10), ("k", 2)]),
        inst("P7_3", &[("bound", 3), ("parts", 5), ("n", 10), ("k", 2)]),
        inst("P7_4", &[("bound", 7), ("i", 0), ("j", 1), ("m", 2)]),
        inst("P7_4", &[("bound", 7), ("i", 1), ("j", 0), ("m", 1)]),
        inst("P7_4", &[("bound", 6), ("i", 2), ("j", 0), ("m", 1)]),
    ]
}

fn smoke() -> Vec<IdentityInstance> {
    let mut v = table_instances();
    let tiny: &[(&str, &[(&str, i64)])] = &[
        ("T1_1", &[("i", 1), ("j", 0)]),
        ("E1_GF13MOD4", &[("k", 1), ("mu", 1)]),
        ("T2_1", &[("bound", 3), ("i", 1), ("j", 0)]),
        ("L2_2", &[("bound", 4), ("i", 1), ("j", 1)]),
        ("T2_3", &[("k", 1), ("eq", 1)]),
        ("T2_4", &[("k", 1), ("which", 1)]),
        ("E2_PRODSILLS", &[("eq", 1)]),
        ("T2_5", &[("variant", 1)]),
        ("T2_6", &[("variant", 1)]),
        ("T3_1", &[("bound", 5), ("k", -1)]),
        ("T3_2", &[("bound", 3), ("k", 1)]),
        ("T3_3", &[("bound", 5)]),
        ("C3_4", &[("bound", 3)]),
        ("E3_CHB", &[("n", 2), ("m", 3)]),
        ("T4_1", &[("bound", 4)]),
        ("T4_2", &[("N", 2), ("nu", 1), ("i", 1), ("j", 1)]),
        ("C4_3a", &[("N", 2), ("nu", 1)]),
        ("C4_3b", &[("N", 2), ("nu", 1)]),
        ("T4_4", &[("N", 2)]),
        ("T4_5", &[("N", 3)]),
        ("T5_1a", &[]),
        ("T5_1b", &[]),
        ("T5_2a", &[("bound", 3)]),
        ("T5_2b", &[("bound", 2)]),
        ("T5_3", &[("nu", 1), ("x_cutoff", 2)]),
        ("E5_PSI2PHI", &[("bound", 3)]),
        ("T5_4", &[("bound", 4)]),
        ("E5_RS2PSI", &[("bound", 4)]),
        ("E5_EXTRACT", &[("bound", 4), ("k", 2)]),
        ("T5_6", &[("N", 4), ("n", 8), ("k", 2)]),
        ("E5_EXTRACTPHI", &[("bound", 3), ("k", 1)]),
        ("T5_7", &[("N", 2), ("n", 6), ("k", 1)]),
        ("T6_1a", &[("bound", 2)]),
        ("T6_1b", &[("bound", 3)]),
        ("E6_TRANSFORM", &[("N", 1), ("nu", 1)]),
        ("T6_2", &[("bound", 2), ("parts", 2)]),
        ("E6_QBIN", &[("bound", 2), ("parts", 2)]),
        ("E6_RESTPHI", &[("bound", 2), ("parts", 1)]),
        ("T6_3", &[("bound", 2), ("parts", 2)]),
        ("T6_4", &[("N", 1), ("nu", 0)]),
        ("P7_1", &[("bound", 2), ("parts", 2)]),
        ("P7_2", &[("bound", 1), ("parts", 2)]),
        ("P7_3", &[("bound", 2), ("parts", 2), ("n", 4), ("k", 0)]),
        ("P7_4", &[("bound", 3), ("i", 0), ("j", 1), ("m", 1)]),
        ("RHO_PROPS", &[("norm", 6)]),
        ("RHOSTAR_PROPS", &[("norm", 6)]),
    ];
    for (id, params) in tiny {
        let mut i = inst(id, params);
        // keep the smoke suite quick
        match i.mode {
            Mode::Truncated(c) => i.mode = Mode::Truncated(c.min(10)),
            Mode::RationalPoints { seed, .. } => i.mode = Mode::RationalPoints { count: 5, seed },
            Mode::Exact => {}
        }
        v.push(i);
    }
    v
}

/// Grid sizes; `Full` extends the acceptance grids.
struct Sizes {
    distinct_bound: i64,
    ij: i64,
    bg_bound: i64,
    bg_k: (i64, i64),
    sum_bound: i64,
    unrestricted_sum_bound: i64,
    single_sum_bound: i64,
    small_n: i64,
    boulet_bound: i64,
    four_var_cutoff: i64,
    alt_bound: i64,
    count_norm: i64,
    box_bound: i64,
    rational_n: i64,
    outlook_bound: i64,
    box_count_norm: i64,
    bijection_norm: i64,
    product_cutoff: i64,
    unrestricted_cutoff: i64,
    x_cutoff: i64,
    x_norm: i64,
}

const DEFAULT: Sizes = Sizes {
    distinct_bound: 9,
    ij: 4,
    bg_bound: 8,
    bg_k: (-5, 6),
    sum_bound: 10,
    unrestricted_sum_bound: 8,
    single_sum_bound: 9,
    small_n: 6,
    boulet_bound: 6,
    four_var_cutoff: 14,
    alt_bound: 10,
    count_norm: 16,
    box_bound: 5,
    rational_n: 4,
    outlook_bound: 6,
    box_count_norm: 14,
    bijection_norm: 18,
    product_cutoff: 30,
    unrestricted_cutoff: 20,
    x_cutoff: 4,
    x_norm: 12,
};

const FULL: Sizes = Sizes {
    distinct_bound: 12,
    ij: 5,
    bg_bound: 10,
    bg_k: (-6, 7),
    sum_bound: 14,
    unrestricted_sum_bound: 10,
    single_sum_bound: 12,
    small_n: 8,
    boulet_bound: 7,
    four_var_cutoff: 16,
    alt_bound: 14,
    count_norm: 20,
    box_bound: 6,
    rational_n: 6,
    outlook_bound: 8,
    box_count_norm: 16,
    bijection_norm: 22,
    product_cutoff: 40,
    unrestricted_cutoff: 24,
    x_cutoff: 5,
    x_norm: 14,
};

fn grid(s: &Sizes) -> Vec<IdentityInstance> {
    let mut v = Vec::new();
    let mut push = |id: &str, params: &[(&str, i64)], mode: Option<Mode>| {
        let i = inst(id, params);
        v.push(match mode {
            Some(m) => i.with_mode(m),
            None => i,
        });
    };
    let pc = Some(Mode::Truncated(s.product_cutoff));
    let uc = Some(Mode::Truncated(s.unrestricted_cutoff));
    let fc = Some(Mode::Truncated(s.four_var_cutoff));

    for i in 0..=2 {
        for j in 0..=2 {
            push("T1_1", &[("i", i), ("j", j)], pc);
        }
    }
    for k in 0..=3 {
        for mu in 0..=1 {
            push("E1_GF13MOD4", &[("k", k), ("mu", mu)], pc);
        }
    }
    for b in 0..=s.distinct_bound {
        for i in 0..=s.ij {
            for j in 0..=s.ij {
                push("T2_1", &[("bound", b), ("i", i), ("j", j)], None);
                if b >= 1 {
                    push("L2_2", &[("bound", b), ("i", i), ("j", j)], None);
                }
            }
        }
    }
    for k in 0..=3 {
        for e in 1..=2 {
            push("T2_3", &[("k", k), ("eq", e)], pc);
            push("T2_4", &[("k", k), ("which", e)], pc);
        }
    }
    for e in 1..=2 {
        push("E2_PRODSILLS", &[("eq", e)], pc);
        push("T2_5", &[("variant", e)], pc);
        push("T2_6", &[("variant", e)], pc);
    }
    for b in 0..=s.bg_bound {
        for k in s.bg_k.0..=s.bg_k.1 {
            push("T3_1", &[("bound", b), ("k", k)], None);
            push("T3_2", &[("bound", b), ("k", k)], uc);
        }
    }
    for b in 0..=s.sum_bound {
        push("T3_3", &[("bound", b)], None);
    }
    for b in 0..=s.unrestricted_sum_bound {
        push("C3_4", &[("bound", b)], uc);
    }
    for n in 0..=s.small_n {
        for m in 0..=s.small_n {
            push("E3_CHB", &[("n", n), ("m", m)], None);
        }
    }
    for b in 0..=s.single_sum_bound {
        push("T4_1", &[("bound", b)], None);
        let (n, nu) = (b / 2, b % 2);
        for i in 0..=s.ij {
            for j in 0..=s.ij {
                push("T4_2", &[("N", n), ("nu", nu), ("i", i), ("j", j)], None);
            }
        }
    }
    for n in 0..=s.small_n {
        for nu in 0..=1 {
            push("C4_3a", &[("N", n), ("nu", nu)], None);
            push("C4_3b", &[("N", n), ("nu", nu)], None);
        }
        push("T4_4", &[("N", n)], None);
        push("T4_5", &[("N", n)], None);
    }
    push("T5_1a", &[], fc);
    push("T5_1b", &[], fc);
    for b in 0..=s.boulet_bound {
        push("T5_2a", &[("bound", b)], None);
        push("T5_2b", &[("bound", b)], fc);
        push("E5_PSI2PHI", &[("bound", b)], fc);
        push("T6_1a", &[("bound", b)], fc);
        push("T6_1b", &[("bound", b)], None);
    }
    push("E5_PSI2PHI", &[], fc);
    for nu in 0..=1 {
        push(
            "T5_3",
            &[("nu", nu), ("x_cutoff", s.x_cutoff)],
            Some(Mode::Truncated(s.x_norm)),
        );
    }
    for b in 0..=s.alt_bound {
        push("T5_4", &[("bound", b)], None);
        push("E5_RS2PSI", &[("bound", b)], None);
        for k in 0..=b {
            push("E5_EXTRACT", &[("bound", b), ("k", k)], None);
        }
    }
    for b in 0..=s.unrestricted_sum_bound {
        for k in 0..=b {
            push("E5_EXTRACTPHI", &[("bound", b), ("k", k)], uc);
        }
    }
    for n in 0..=s.count_norm {
        for big_n in 0..=n {
            for k in 0..=n {
                push("T5_6", &[("N", big_n), ("n", n), ("k", k)], None);
                push("T5_7", &[("N", big_n), ("n", n), ("k", k)], None);
            }
        }
    }
    for b in 0..=s.box_bound {
        for m in 0..=s.box_bound {
            push("E6_QBIN", &[("bound", b), ("parts", m)], None);
            if b == 0 || m == 0 {
                continue;
            }
            if m % 2 == 0 {
                push("T6_2", &[("bound", b), ("parts", m)], None);
            } else {
                push("E6_RESTPHI", &[("bound", b), ("parts", m)], None);
            }
            if (b % 2, m % 2) != (1, 0) {
                push("T6_3", &[("bound", b), ("parts", m)], None);
            }
        }
    }
    for n in 0..=s.rational_n {
        for nu in 0..=1 {
            push("E6_TRANSFORM", &[("N", n), ("nu", nu)], None);
            push("T6_4", &[("N", n), ("nu", nu)], None);
        }
    }
    for b in 0..=s.outlook_bound {
        for m in 0..=s.outlook_bound {
            push("P7_1", &[("bound", b), ("parts", m)], None);
            if m >= 1 {
                push("P7_2", &[("bound", b), ("parts", m)], None);
            }
        }
        for x in 0..=3 {
            for m in 0..=4 {
                push("P7_4", &[("bound", b), ("i", 0), ("j", x), ("m", m)], None);
                if x > 0 {
                    push("P7_4", &[("bound", b), ("i", x), ("j", 0), ("m", m)], None);
                }
            }
        }
    }
    for b in 1..=s.box_bound {
        for m in 1..=s.box_bound {
            for n in 0..=s.box_count_norm {
                for k in 0..=n.min(b * m) {
                    push(
                        "P7_3",
                        &[("bound", b), ("parts", m), ("n", n), ("k", k)],
                        None,
                    );
                }
            }
        }
    }
    for n in 0..=s.bijection_norm {
        push("RHO_PROPS", &[("norm", n)], None);
        push("RHOSTAR_PROPS", &[("norm", n)], None);
    }
    v
}

/// The instances of a suite, in a fixed order.
pub fn suite_instances(suite: Suite) -> Vec<IdentityInstance> {
    match suite {
        Suite::Smoke => smoke(),
        Suite::Default => {
            let mut v = table_instances();
            v.extend(grid(&DEFAULT));
            v
        }
        Suite::Full => {
            let mut v = table_instances();
            v.extend(grid(&FULL));
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{list_identities, verify, Status};

    #[test]
    fn smoke_covers_every_identity() {
        let insts = suite_instances(Suite::Smoke);
        for e in list_identities() {
            assert!(insts.iter().any(|i| i.id == e.id), "{} missing", e.id);
        }
    }

    #[test]
    fn smoke_passes() {
        for i in suite_instances(Suite::Smoke) {
            let r = verify(&i);
            assert_eq!(r.status, Status::Pass, "{i}: {r:?}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Smoke, Suite::Default, Suite::Full] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
