//! The identity registry: parameters, legal modes and evaluation of each identity.

use num_bigint::BigInt;
use serde::Serialize;

use super::{
    Check, CheckKind, HarnessError, IdentityInstance, Mode, Params, RationalSampler, Result, Side,
};
use crate::bijections::{check_properties, BijectionKind};
use crate::closed_forms as cf;
use crate::closed_forms::{BouletPoint, LittleGollnitz, PTildeForm};
use crate::partition::{
    enumerate, gf_enumerated, gf_series, PartitionConstraints as C, Stat, WeightKind as W,
};
use crate::qpoly::{
    Assignment, Grading, LaurentPoly, Monomial, Rational, Substitution, TruncatedSeries, Var,
};

/// Kind of comparison an identity supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Exact,
    Truncated,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub min: i64,
    pub max: i64,
    pub optional: bool,
}

const fn req(name: &'static str, min: i64, max: i64) -> ParamSpec {
    ParamSpec {
        name,
        min,
        max,
        optional: false,
    }
}

const fn opt(name: &'static str, min: i64, max: i64) -> ParamSpec {
    ParamSpec {
        name,
        min,
        max,
        optional: true,
    }
}

type Eval = fn(&Ctx) -> Result<Vec<Check>>;

/// A registered identity.
#[derive(Clone, Copy, Serialize)]
pub struct Entry {
    pub id: &'static str,
    pub anchor: &'static str,
    pub params: &'static [ParamSpec],
    pub modes: &'static [ModeKind],
    /// Cutoff used when truncated mode is chosen without one.
    pub default_cutoff: Option<i64>,
    /// Exact mode needs this optional parameter; without it the default is truncated.
    #[serde(skip)]
    exact_needs: Option<&'static str>,
    #[serde(skip)]
    eval: Eval,
}

impl std::fmt::Debug for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Entry").field("id", &self.id).finish()
    }
}

impl Entry {
    pub fn default_mode(&self, params: &Params) -> Mode {
        let exact_ok = self.modes.contains(&ModeKind::Exact)
            && self.exact_needs.is_none_or(|p| params.contains_key(p));
        if exact_ok {
            Mode::Exact
        } else if self.modes.contains(&ModeKind::Truncated) {
            Mode::Truncated(self.default_cutoff.unwrap_or(14))
        } else if self.modes.contains(&ModeKind::Rational) {
            Mode::RationalPoints {
                count: super::DEFAULT_POINTS,
                seed: super::DEFAULT_SEED,
            }
        } else {
            Mode::Exact
        }
    }

    fn check_instance(&self, inst: &IdentityInstance) -> Result<()> {
        for k in inst.params.keys() {
            if !self.params.iter().any(|p| p.name == k) {
                return Err(HarnessError::UnknownParam(k.clone()));
            }
        }
        for p in self.params {
            match inst.params.get(p.name) {
                None if !p.optional => return Err(HarnessError::MissingParam(p.name.into())),
                Some(&v) if v < p.min || v > p.max => {
                    return Err(HarnessError::OutOfRange {
                        name: p.name.into(),
                        value: v,
                        min: p.min,
                        max: p.max,
                    })
                }
                _ => {}
            }
        }
        let kind = match inst.mode {
            Mode::Exact => ModeKind::Exact,
            Mode::Truncated(_) => ModeKind::Truncated,
            Mode::RationalPoints { .. } => ModeKind::Rational,
        };
        let legal = self.modes.contains(&kind)
            && !(kind == ModeKind::Exact
                && self
                    .exact_needs
                    .is_some_and(|p| !inst.params.contains_key(p)));
        if !legal {
            return Err(HarnessError::IllegalMode {
                id: self.id.into(),
                mode: inst.mode.to_string(),
            });
        }
        if let Mode::Truncated(c) = inst.mode {
            if !(0..=200).contains(&c) {
                return Err(HarnessError::InvalidParameters(format!(
                    "cutoff {c} outside 0..=200"
                )));
            }
        }
        Ok(())
    }

    pub(super) fn evaluate(&self, inst: &IdentityInstance) -> Result<Vec<Check>> {
        self.check_instance(inst)?;
        (self.eval)(&Ctx { inst })
    }
}

/// Parameter access for an evaluation.
pub(super) struct Ctx<'a> {
    inst: &'a IdentityInstance,
}

impl Ctx<'_> {
    fn i(&self, name: &str) -> Result<i64> {
        self.inst
            .params
            .get(name)
            .copied()
            .ok_or_else(|| HarnessError::MissingParam(name.into()))
    }

    fn u(&self, name: &str) -> Result<u32> {
        let v = self.i(name)?;
        u32::try_from(v)
            .map_err(|_| HarnessError::InvalidParameters(format!("{name} must be nonnegative")))
    }

    fn opt_u(&self, name: &str) -> Result<Option<u32>> {
        if self.inst.params.contains_key(name) {
            self.u(name).map(Some)
        } else {
            Ok(None)
        }
    }

    fn exact(&self) -> bool {
        self.inst.mode == Mode::Exact
    }

    fn cutoff(&self) -> i64 {
        match self.inst.mode {
            Mode::Truncated(c) => c,
            _ => 0,
        }
    }

    fn grading(&self) -> Grading {
        Grading::norm(self.cutoff())
    }

    fn sampler(&self) -> (u32, RationalSampler) {
        match self.inst.mode {
            Mode::RationalPoints { count, seed } => (count, RationalSampler::new(seed)),
            _ => (
                super::DEFAULT_POINTS,
                RationalSampler::new(super::DEFAULT_SEED),
            ),
        }
    }
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::InvalidParameters(msg.into())
}

fn check(name: &str, kind: CheckKind, lhs: impl Into<Side>, rhs: impl Into<Side>) -> Check {
    Check::new(name, kind, lhs, rhs)
}

fn oracle(c: &C, w: &W) -> Result<LaurentPoly> {
    Ok(gf_enumerated(c, w)?)
}

fn oracle_series(c: &C, w: &W, g: &Grading) -> Result<TruncatedSeries> {
    Ok(gf_series(c, w, g)?)
}

fn count(c: &C) -> Result<u64> {
    Ok(crate::partition::count(c)?)
}

fn distinct(bound: u32) -> C {
    C::new().max_part(bound).distinct()
}

fn norm_cap(g: &Grading) -> u32 {
    u32::try_from(g.cutoff().max(0)).unwrap_or(u32::MAX)
}

fn series(p: LaurentPoly, g: &Grading) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::new(p, g.clone())?)
}

fn q_coeff(p: &LaurentPoly, n: u32) -> BigInt {
    p.q_coeff(n as i32)
}

// ---------------------------------------------------------------------------
// Distinct partitions by odd-part positions

fn t1_1(c: &Ctx) -> Result<Vec<Check>> {
    let (i, j) = (c.u("i")?, c.u("j")?);
    let ij = |base: C| base.filter(Stat::I, i as i64).filter(Stat::J, j as i64);
    let mod4 = |base: C| {
        base.filter(Stat::C1Mod4, i as i64)
            .filter(Stat::C3Mod4, j as i64)
    };
    if c.exact() {
        let n = c.u("n")?;
        let base = C::new().distinct().fixed_norm(n);
        let lhs = count(&ij(base.clone()))?;
        let rhs = count(&mod4(base))?;
        let closed = cf::p_distinct_limit(i, j, &Grading::norm(n as i64))?;
        return Ok(vec![
            check("positions vs residues", CheckKind::Oracle, lhs, rhs),
            check(
                "product coefficient",
                CheckKind::Oracle,
                Side::Count(q_coeff(closed.body(), n)),
                lhs,
            ),
        ]);
    }
    let g = c.grading();
    let base = C::new().distinct();
    let lhs = oracle_series(&ij(base.clone()), &W::Norm, &g)?;
    let rhs = oracle_series(&mod4(base), &W::Norm, &g)?;
    Ok(vec![
        check("positions vs residues", CheckKind::Oracle, lhs.clone(), rhs),
        check(
            "product",
            CheckKind::Oracle,
            cf::p_distinct_limit(i, j, &g)?,
            lhs,
        ),
    ])
}

fn e1_gf13mod4(c: &Ctx) -> Result<Vec<Check>> {
    let (k, mu) = (c.u("k")?, c.u("mu")?);
    let g = c.grading();
    let residue = if mu == 0 { 3 } else { 1 };
    let o = C::new()
        .distinct()
        .residues(4, &[residue])
        .filter(Stat::NumParts, k as i64);
    Ok(vec![check(
        "product",
        CheckKind::Oracle,
        cf::gf_1or3mod4(k, mu, &g)?,
        oracle_series(&o, &W::Norm, &g)?,
    )])
}

fn t2_1(c: &Ctx) -> Result<Vec<Check>> {
    let (b, i, j) = (c.u("bound")?, c.u("i")?, c.u("j")?);
    let o = oracle(
        &distinct(b)
            .filter(Stat::I, i as i64)
            .filter(Stat::J, j as i64),
        &W::Norm,
    )?;
    Ok(vec![
        check(
            "closed form",
            CheckKind::Oracle,
            cf::p_distinct(b, i, j)?,
            o.clone(),
        ),
        check(
            "three-binomial sum",
            CheckKind::Cross,
            cf::p_distinct_via_sum(b, i, j),
            o,
        ),
    ])
}

fn l2_2(c: &Ctx) -> Result<Vec<Check>> {
    let (b, i, j) = (c.u("bound")?, c.u("i")?, c.u("j")?);
    let p = |b: u32, i: u32, j: u32| {
        oracle(
            &distinct(b)
                .filter(Stat::I, i as i64)
                .filter(Stat::J, j as i64),
            &W::Norm,
        )
    };
    let lhs = p(b, i, j)?;
    let nu = b % 2;
    let mut rec = p(b - 1, i, j)?;
    if i >= nu {
        rec += &p(b - 1, j, i - nu)?.mul_monomial(&Monomial::q(b as i32));
    }
    Ok(vec![
        check(
            "recurrence",
            CheckKind::Oracle,
            cf::p_distinct_recurrence(b, i, j)?,
            lhs.clone(),
        ),
        check("recurrence on enumerations", CheckKind::Oracle, rec, lhs),
    ])
}

fn t2_3(c: &Ctx) -> Result<Vec<Check>> {
    let (k, eq) = (c.u("k")?, c.u("eq")?);
    let g = c.grading();
    let stat = if eq == 1 { Stat::J } else { Stat::I };
    let o = oracle_series(&C::new().distinct().filter(stat, k as i64), &W::Norm, &g)?;
    Ok(vec![check(
        "product",
        CheckKind::Oracle,
        cf::savage_sills_product(k, eq, &g)?,
        o,
    )])
}

fn t2_4(c: &Ctx) -> Result<Vec<Check>> {
    let (k, which) = (c.u("k")?, c.u("which")?);
    let g = c.grading();
    let (pos, res, eq) = if which == 1 {
        (Stat::I, Stat::C1Mod4, 2)
    } else {
        (Stat::J, Stat::C3Mod4, 1)
    };
    let lhs = oracle_series(&C::new().distinct().filter(pos, k as i64), &W::Norm, &g)?;
    let rhs = oracle_series(&C::new().distinct().filter(res, k as i64), &W::Norm, &g)?;
    Ok(vec![
        check("positions vs residues", CheckKind::Oracle, lhs.clone(), rhs),
        check(
            "product",
            CheckKind::Oracle,
            cf::savage_sills_product(k, eq, &g)?,
            lhs,
        ),
    ])
}

fn mod8(eq: u32) -> &'static [u32] {
    if eq == 1 {
        &[1, 5, 6]
    } else {
        &[2, 3, 7]
    }
}

fn e2_prodsills(c: &Ctx) -> Result<Vec<Check>> {
    let eq = c.u("eq")?;
    let g = c.grading();
    let (lhs, rhs) = cf::prod_sills(eq, &g)?;
    let stat = if eq == 1 { Stat::J } else { Stat::I };
    let dist = oracle_series(&C::new().distinct().filter(stat, 0), &W::Norm, &g)?;
    let res = oracle_series(&C::new().residues(8, mod8(eq)), &W::Norm, &g)?;
    Ok(vec![
        check("products", CheckKind::Identity, lhs.clone(), rhs.clone()),
        check("left product", CheckKind::Oracle, lhs, dist),
        check("right product", CheckKind::Oracle, rhs, res),
    ])
}

fn t2_5(c: &Ctx) -> Result<Vec<Check>> {
    let variant = c.u("variant")?;
    let g = c.grading();
    let mut gap = C::new().gollnitz_gap();
    if variant == 2 {
        gap = gap.min_part(2);
    }
    let lhs = oracle_series(&gap, &W::Norm, &g)?;
    let rhs = oracle_series(&C::new().residues(8, mod8(variant)), &W::Norm, &g)?;
    Ok(vec![
        check(
            "gap condition vs residues",
            CheckKind::Oracle,
            lhs.clone(),
            rhs,
        ),
        check(
            "product",
            CheckKind::Oracle,
            cf::residue_class_product(8, mod8(variant), &g)?,
            lhs,
        ),
    ])
}

fn t2_6(c: &Ctx) -> Result<Vec<Check>> {
    let variant = c.u("variant")?;
    let g = c.grading();
    let (stat, eq) = if variant == 1 {
        (Stat::I, 2)
    } else {
        (Stat::J, 1)
    };
    let lhs = oracle_series(&C::new().distinct().filter(stat, 0), &W::Norm, &g)?;
    let rhs = oracle_series(&C::new().residues(8, mod8(eq)), &W::Norm, &g)?;
    Ok(vec![
        check(
            "even parts in place vs residues",
            CheckKind::Oracle,
            lhs.clone(),
            rhs,
        ),
        check(
            "product",
            CheckKind::Oracle,
            cf::residue_class_product(8, mod8(eq), &g)?,
            lhs,
        ),
    ])
}

// ---------------------------------------------------------------------------
// BG-rank

fn t3_1(c: &Ctx) -> Result<Vec<Check>> {
    let (b, k) = (c.u("bound")?, c.i("k")?);
    let o = oracle(&distinct(b).filter(Stat::Bg, k), &W::Norm)?;
    Ok(vec![check(
        "closed form",
        CheckKind::Oracle,
        cf::bg_distinct(b, k),
        o,
    )])
}

fn t3_2(c: &Ctx) -> Result<Vec<Check>> {
    let (b, k) = (c.u("bound")?, c.i("k")?);
    let g = c.grading();
    let o = oracle_series(&C::new().max_part(b).filter(Stat::Bg, k), &W::Norm, &g)?;
    Ok(vec![check(
        "closed form",
        CheckKind::Oracle,
        cf::bg_unrestricted(b, k, &g)?,
        o,
    )])
}

fn t3_3(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let sum: LaurentPoly = cf::bg_range(b).map(|k| cf::bg_distinct(b, k)).sum();
    let o = oracle(&distinct(b), &W::Norm)?;
    Ok(vec![
        check(
            "sum over ranks",
            CheckKind::Identity,
            sum.clone(),
            cf::distinct_product(b),
        ),
        check("enumeration", CheckKind::Oracle, sum, o),
    ])
}

fn c3_4(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let g = c.grading();
    let mut sum = TruncatedSeries::zero(g.clone());
    for k in cf::bg_range(b) {
        sum = sum.add(&cf::bg_unrestricted(b, k, &g)?)?;
    }
    let o = oracle_series(&C::new().max_part(b), &W::Norm, &g)?;
    Ok(vec![
        check(
            "sum over ranks",
            CheckKind::Identity,
            sum.clone(),
            cf::bounded_partitions_series(b, &g)?,
        ),
        check("enumeration", CheckKind::Oracle, sum, o),
    ])
}

fn e3_chb(c: &Ctx) -> Result<Vec<Check>> {
    let (n, m) = (c.u("n")?, c.u("m")?);
    let lhs = cf::change_of_base_lhs(n, m);
    let boxed = oracle(&C::new().max_part(n).max_parts(m), &W::Norm)?
        .mul_monomial(&Monomial::q(-((n * m) as i32)));
    Ok(vec![
        check(
            "inverted base",
            CheckKind::Identity,
            lhs.clone(),
            cf::change_of_base_rhs(n, m)?,
        ),
        check("box enumeration", CheckKind::Oracle, lhs, boxed),
    ])
}

// ---------------------------------------------------------------------------
// Single-fold sums

fn t4_1(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let lhs = cf::double_to_single(b);
    let o = oracle(&distinct(b), &W::NormIJ)?;
    let psi = cf::psi_bounded(b).substitute(&cf::sub_ij())?;
    Ok(vec![
        check("single sum", CheckKind::Oracle, lhs.clone(), o),
        check("four-variable specialization", CheckKind::Cross, lhs, psi),
    ])
}

fn t4_2(c: &Ctx) -> Result<Vec<Check>> {
    let (n, nu, i, j) = (c.u("N")?, c.u("nu")?, c.u("i")?, c.u("j")?);
    let q = Monomial::q(1);
    let lhs = cf::new52_lhs(n, nu, i, j, &q);
    let rhs = cf::new52_rhs(n, nu, i, j, &q)?;
    let (ii, jj) = (i as i64, j as i64);
    let lead = Monomial::q((2 * ii * ii - ii + 2 * jj * jj + jj) as i32);
    let at_q2 = cf::new52_rhs(n, nu, i, j, &Monomial::q(2))?.mul_monomial(&lead);
    let o = oracle(
        &distinct(2 * n + nu).filter(Stat::I, ii).filter(Stat::J, jj),
        &W::Norm,
    )?;
    Ok(vec![
        check("sum vs product", CheckKind::Identity, lhs, rhs),
        check("enumeration at q^2", CheckKind::Oracle, at_q2, o),
    ])
}

fn little_gollnitz(c: &Ctx, which: LittleGollnitz) -> Result<Vec<Check>> {
    let (n, nu) = (c.u("N")?, c.u("nu")?);
    let lhs = cf::little_gollnitz_lhs(which, n, nu)?;
    let rhs = cf::little_gollnitz_rhs(which, n, nu);
    let stat = match which {
        LittleGollnitz::First => Stat::I,
        LittleGollnitz::Second => Stat::J,
    };
    let o = oracle(&distinct(2 * n + nu).filter(stat, 0), &W::Norm)?;
    Ok(vec![
        check("sides", CheckKind::Identity, lhs, rhs.clone()),
        check("enumeration", CheckKind::Oracle, rhs, o),
    ])
}

fn c4_3a(c: &Ctx) -> Result<Vec<Check>> {
    little_gollnitz(c, LittleGollnitz::First)
}

fn c4_3b(c: &Ctx) -> Result<Vec<Check>> {
    little_gollnitz(c, LittleGollnitz::Second)
}

fn t4_4(c: &Ctx) -> Result<Vec<Check>> {
    let n = c.u("N")?;
    let lhs = cf::little_gollnitz_rhs(LittleGollnitz::First, n, 0);
    let o = oracle(&distinct(2 * n).filter(Stat::I, 0), &W::Norm)?;
    Ok(vec![
        check(
            "sides",
            CheckKind::Identity,
            lhs.clone(),
            cf::connect_rhs(n),
        ),
        check("enumeration", CheckKind::Oracle, lhs, o),
    ])
}

fn t4_5(c: &Ctx) -> Result<Vec<Check>> {
    let n = c.u("N")?;
    Ok(vec![check(
        "sides",
        CheckKind::Identity,
        cf::cigler_lhs(n),
        cf::cigler_rhs(n),
    )])
}

// ---------------------------------------------------------------------------
// Boulet-Stanley weights

fn t5_1a(c: &Ctx) -> Result<Vec<Check>> {
    let g = c.grading();
    let o = oracle_series(&C::new().distinct(), &W::Boulet, &g)?;
    Ok(vec![check(
        "product",
        CheckKind::Oracle,
        cf::psi_infinite(&g)?,
        o,
    )])
}

fn t5_1b(c: &Ctx) -> Result<Vec<Check>> {
    let g = c.grading();
    let o = oracle_series(&C::new(), &W::Boulet, &g)?;
    Ok(vec![check(
        "product",
        CheckKind::Oracle,
        cf::phi_infinite(&g)?,
        o,
    )])
}

fn t5_2a(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let o = oracle(&distinct(b), &W::Boulet)?;
    Ok(vec![
        check(
            "single sum",
            CheckKind::Oracle,
            cf::psi_bounded(b),
            o.clone(),
        ),
        check(
            "telescoped sum",
            CheckKind::Cross,
            cf::psi_bounded_telescoped(b),
            o,
        ),
    ])
}

fn t5_2b(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let g = c.grading();
    let o = oracle_series(&C::new().max_part(b), &W::Boulet, &g)?;
    Ok(vec![check(
        "single sum",
        CheckKind::Oracle,
        cf::phi_bounded(b, &g)?,
        o,
    )])
}

fn t5_3(c: &Ctx) -> Result<Vec<Check>> {
    let nu = c.u("nu")?;
    let xc = c.opt_u("x_cutoff")?.unwrap_or(4);
    let g = cf::x_grading(c.cutoff(), xc as i32);
    let cap = norm_cap(&g);
    let rhs = cf::x_series_rhs(nu, &g)?;
    let psis = (0..=xc)
        .map(|n| oracle(&distinct(2 * n + nu).max_norm(cap), &W::Boulet))
        .collect::<Result<Vec<_>>>()?;
    let lhs = cf::x_series_lhs(nu, &g, |b| Ok(psis[(b / 2) as usize].clone()))?;
    let closed = cf::psi_x_series(nu, false, &g)?;
    Ok(vec![
        check(
            "product vs enumerated sum",
            CheckKind::Oracle,
            rhs,
            lhs.clone(),
        ),
        check("closed-form sum", CheckKind::Cross, closed, lhs),
    ])
}

fn e5_psi2phi(c: &Ctx) -> Result<Vec<Check>> {
    let g = c.grading();
    let cap = norm_cap(&g);
    match c.opt_u("bound")? {
        Some(b) => {
            let psi = oracle(&distinct(b), &W::Boulet)?;
            let phi = oracle_series(&C::new().max_part(b), &W::Boulet, &g)?;
            Ok(vec![check(
                "bounded",
                CheckKind::Oracle,
                cf::psi_to_phi_bounded(&psi, b, &g)?,
                phi,
            )])
        }
        None => {
            let psi = series(oracle(&C::new().distinct().max_norm(cap), &W::Boulet)?, &g)?;
            let phi = oracle_series(&C::new(), &W::Boulet, &g)?;
            Ok(vec![check(
                "unbounded",
                CheckKind::Oracle,
                cf::psi_to_phi(&psi, &g)?,
                phi,
            )])
        }
    }
}

fn t5_4(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let lhs = cf::hermite_sum(b);
    let o = oracle(&distinct(b), &W::NormAlt)?;
    Ok(vec![
        check(
            "sum vs Rogers-Szego",
            CheckKind::Identity,
            lhs.clone(),
            cf::rogers_szego_zq(b),
        ),
        check("enumeration", CheckKind::Oracle, lhs, o),
    ])
}

fn e5_rs2psi(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let rs = cf::rogers_szego_zq(b);
    let psi = cf::psi_bounded(b).substitute(&cf::sub_alt())?;
    let o = oracle(&distinct(b), &W::BouletSubstituted(Box::new(cf::sub_alt())))?;
    Ok(vec![
        check("specialization", CheckKind::Identity, rs.clone(), psi),
        check("enumeration", CheckKind::Oracle, rs, o),
    ])
}

fn e5_extract(c: &Ctx) -> Result<Vec<Check>> {
    let (b, k) = (c.u("bound")?, c.u("k")?);
    let o = oracle(&distinct(b).filter(Stat::Alt, k as i64), &W::Norm)?;
    Ok(vec![check(
        "coefficient",
        CheckKind::Oracle,
        cf::alt_extraction(b, k),
        o,
    )])
}

fn t5_6(c: &Ctx) -> Result<Vec<Check>> {
    let (big_n, n, k) = (c.u("N")?, c.u("n")?, c.u("k")?);
    let top = (2 * big_n as i64 - 2 * k as i64 + 1).max(0) as u32;
    let odd = C::new()
        .residues(2, &[1])
        .max_part(top)
        .filter(Stat::NumParts, k as i64)
        .fixed_norm(n);
    let alt = distinct(big_n).filter(Stat::Alt, k as i64).fixed_norm(n);
    let rhs = count(&alt)?;
    Ok(vec![
        check(
            "odd parts vs alternating sum",
            CheckKind::Oracle,
            count(&odd)?,
            rhs,
        ),
        check(
            "closed coefficient",
            CheckKind::Oracle,
            Side::Count(q_coeff(&cf::alt_extraction(big_n, k), n)),
            rhs,
        ),
    ])
}

fn e5_extractphi(c: &Ctx) -> Result<Vec<Check>> {
    let (b, k) = (c.u("bound")?, c.u("k")?);
    let g = c.grading();
    let o = oracle_series(
        &C::new().max_part(b).filter(Stat::Alt, k as i64),
        &W::Norm,
        &g,
    )?;
    Ok(vec![check(
        "coefficient",
        CheckKind::Oracle,
        cf::alt_extraction_phi(b, k, &g)?,
        o,
    )])
}

fn t5_7(c: &Ctx) -> Result<Vec<Check>> {
    let (big_n, n, k) = (c.u("N")?, c.u("n")?, c.u("k")?);
    let lhs = count(
        &C::new()
            .max_parts(big_n)
            .filter(Stat::OddParts, k as i64)
            .fixed_norm(n),
    )?;
    let rhs = count(
        &C::new()
            .max_part(big_n)
            .filter(Stat::Alt, k as i64)
            .fixed_norm(n),
    )?;
    let closed = cf::alt_extraction_phi(big_n, k, &Grading::norm(n as i64))?;
    Ok(vec![
        check("odd parts vs alternating sum", CheckKind::Oracle, lhs, rhs),
        check(
            "closed coefficient",
            CheckKind::Oracle,
            Side::Count(q_coeff(closed.body(), n)),
            rhs,
        ),
    ])
}

// ---------------------------------------------------------------------------
// Finite and doubly bounded Boulet-Stanley sums

fn t6_1a(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let g = c.grading();
    let o = oracle_series(&C::new().max_part(b), &W::Boulet, &g)?;
    Ok(vec![check(
        "term-by-term sum",
        CheckKind::Oracle,
        cf::phi_bounded_direct(b, &g)?,
        o,
    )])
}

fn t6_1b(c: &Ctx) -> Result<Vec<Check>> {
    let b = c.u("bound")?;
    let o = oracle(&distinct(b), &W::Boulet)?;
    Ok(vec![check(
        "telescoped sum",
        CheckKind::Oracle,
        cf::psi_bounded_telescoped(b),
        o,
    )])
}

fn label(names: &[&str], p: &[Rational]) -> String {
    let items: Vec<String> = names
        .iter()
        .zip(p)
        .map(|(n, v)| format!("{n}={v}"))
        .collect();
    items.join(", ")
}

fn e6_transform(c: &Ctx) -> Result<Vec<Check>> {
    let (n, nu) = (c.u("N")?, c.u("nu")?);
    let (count, mut sampler) = c.sampler();
    let psi = oracle(&distinct(2 * n + nu), &W::Boulet)?;
    let points = sampler.collect(
        count,
        4,
        |p| {
            let bq = &p[0] * &p[1] * &p[2] * &p[3];
            bq.numer().magnitude() != bq.denom().magnitude()
        },
        |p| {
            let pt = BouletPoint {
                a: p[0].clone(),
                b: p[1].clone(),
                c: p[2].clone(),
                d: p[3].clone(),
            };
            let l = cf::transform_2phi1(n, nu, &pt)?;
            let r = cf::transform_3phi1(n, nu, &pt)?;
            let via = cf::psi_via_2phi1(n, nu, &pt)?;
            let via3 = cf::psi_via_3phi1(n, nu, &pt)?;
            let at = Assignment::new()
                .with(Var::A, pt.a.clone())
                .with(Var::B, pt.b.clone())
                .with(Var::C, pt.c.clone())
                .with(Var::D, pt.d.clone());
            let direct = psi.eval(&at)?;
            Ok((l, r, via, via3, direct))
        },
    )?;
    let names = ["a", "b", "c", "d"];
    type Row = (Rational, Rational, Rational, Rational, Rational);
    let col = |f: &dyn Fn(&Row) -> Rational| {
        Side::Values(
            points
                .iter()
                .map(|(p, v)| (label(&names, p), f(v)))
                .collect(),
        )
    };
    Ok(vec![
        check(
            "2phi1 vs 3phi1",
            CheckKind::Identity,
            col(&|v| v.0.clone()),
            col(&|v| v.1.clone()),
        ),
        check(
            "2phi1 form vs enumeration",
            CheckKind::Oracle,
            col(&|v| v.2.clone()),
            col(&|v| v.4.clone()),
        ),
        check(
            "3phi1 form vs enumeration",
            CheckKind::Oracle,
            col(&|v| v.3.clone()),
            col(&|v| v.4.clone()),
        ),
    ])
}

fn boxed(b: u32, m: u32, w: &W) -> Result<LaurentPoly> {
    oracle(&C::new().max_part(b).max_parts(m), w)
}

fn t6_2(c: &Ctx) -> Result<Vec<Check>> {
    let (b, m) = (c.u("bound")?, c.u("parts")?);
    if b == 0 || m == 0 || m % 2 == 1 {
        return Err(invalid("needs bound >= 1 and even parts >= 2"));
    }
    Ok(vec![check(
        "four-fold sum",
        CheckKind::Oracle,
        cf::phi_box_even(b, m)?,
        boxed(b, m, &W::Boulet)?,
    )])
}

fn e6_qbin(c: &Ctx) -> Result<Vec<Check>> {
    let (b, m) = (c.u("bound")?, c.u("parts")?);
    let spec = cf::phi_box(b, m)?.substitute(&cf::sub_q())?;
    let binom = cf::q_bin_coeff(b, m);
    Ok(vec![
        check("specialization", CheckKind::Identity, spec, binom.clone()),
        check(
            "box enumeration",
            CheckKind::Oracle,
            binom,
            boxed(b, m, &W::Norm)?,
        ),
    ])
}

fn e6_restphi(c: &Ctx) -> Result<Vec<Check>> {
    let (b, m) = (c.u("bound")?, c.u("parts")?);
    if b == 0 || m % 2 == 0 {
        return Err(invalid("needs bound >= 1 and odd parts"));
    }
    Ok(vec![check(
        "odd-parts relation",
        CheckKind::Oracle,
        cf::phi_box_odd(b, m)?,
        boxed(b, m, &W::Boulet)?,
    )])
}

fn t6_3(c: &Ctx) -> Result<Vec<Check>> {
    let (b, m) = (c.u("bound")?, c.u("parts")?);
    if b == 0 || m == 0 || (b % 2, m % 2) == (1, 0) {
        return Err(invalid(
            "needs positive bounds, not an odd bound with an even parts bound",
        ));
    }
    let yee = cf::phi_box_yee(b, m)?;
    let mut checks = vec![check(
        "Yee sum",
        CheckKind::Oracle,
        yee.clone(),
        boxed(b, m, &W::Boulet)?,
    )];
    if m % 2 == 0 {
        checks.push(check(
            "four-fold sum",
            CheckKind::Cross,
            yee,
            cf::phi_box_even(b, m)?,
        ));
    }
    Ok(checks)
}

fn t6_4(c: &Ctx) -> Result<Vec<Check>> {
    let (n, nu) = (c.u("N")?, c.u("nu")?);
    let (count, mut sampler) = c.sampler();
    let points = sampler.collect(
        count,
        2,
        |_| true,
        |p| {
            Ok((
                cf::odd_parts_phi(n, nu, &p[0], &p[1])?,
                cf::odd_parts_phi_product(n, nu, &p[0], &p[1])?,
            ))
        },
    )?;
    let names = ["a", "q"];
    let lhs = Side::Values(
        points
            .iter()
            .map(|(p, v)| (label(&names, p), v.0.clone()))
            .collect(),
    );
    let rhs = Side::Values(
        points
            .iter()
            .map(|(p, v)| (label(&names, p), v.1.clone()))
            .collect(),
    );
    let o = oracle(
        &distinct(2 * n + nu),
        &W::BouletSubstituted(Box::new(cf::sub_odd())),
    )?;
    Ok(vec![
        check("2phi1 vs product", CheckKind::Identity, lhs, rhs),
        check(
            "distinct-parts product",
            CheckKind::Oracle,
            cf::psi_odd_parts_product(2 * n + nu),
            o,
        ),
    ])
}

// ---------------------------------------------------------------------------
// Doubly bounded statistics

fn p7_1(c: &Ctx) -> Result<Vec<Check>> {
    let (b, m) = (c.u("bound")?, c.u("parts")?);
    Ok(vec![check(
        "double sum",
        CheckKind::Oracle,
        cf::bg_double_bounded(b, m),
        boxed(b, m, &W::NormBg)?,
    )])
}

fn p7_2(c: &Ctx) -> Result<Vec<Check>> {
    let (b, m) = (c.u("bound")?, c.u("parts")?);
    Ok(vec![check(
        "single sum",
        CheckKind::Oracle,
        cf::alt_double_bounded(b, m),
        boxed(b, m, &W::NormAlt)?,
    )])
}

fn p7_3(c: &Ctx) -> Result<Vec<Check>> {
    let (b, m, n, k) = (c.u("bound")?, c.u("parts")?, c.u("n")?, c.u("k")?);
    let lhs = count(
        &C::new()
            .max_part(m)
            .max_parts(b)
            .filter(Stat::OddParts, k as i64)
            .fixed_norm(n),
    )?;
    let rhs = count(
        &C::new()
            .max_part(b)
            .max_parts(m)
            .filter(Stat::Alt, k as i64)
            .fixed_norm(n),
    )?;
    let closed = cf::alt_double_bounded(b, m)
        .coeff_extract(Var::Z, k as i32)
        .q_coeff(n as i32);
    Ok(vec![
        check("odd parts vs alternating sum", CheckKind::Oracle, lhs, rhs),
        check(
            "closed coefficient",
            CheckKind::Oracle,
            Side::Count(closed),
            rhs,
        ),
    ])
}

fn p7_4(c: &Ctx) -> Result<Vec<Check>> {
    let (b, i, j, m) = (c.u("bound")?, c.u("i")?, c.u("j")?, c.u("m")?);
    if i != 0 && j != 0 {
        return Err(invalid("one of i, j must be 0"));
    }
    let o = oracle(
        &distinct(b)
            .filter(Stat::I, i as i64)
            .filter(Stat::J, j as i64)
            .filter(Stat::M, m as i64),
        &W::Norm,
    )?;
    let even_form = if b % 2 == 1 {
        PTildeForm::NoEvenIndexedOddBound
    } else {
        PTildeForm::NoEvenIndexedEvenBound
    };
    let mut checks = Vec::new();
    if i == 0 {
        checks.push(check(
            "no odd-indexed odd parts",
            CheckKind::Oracle,
            cf::p_tilde(b, PTildeForm::NoOddIndexed, j, m)?,
            o.clone(),
        ));
    }
    // the even-bound form needs bound >= 2 when both counts vanish
    if j == 0 && (i != 0 || b != 0) {
        let kind = if checks.is_empty() {
            CheckKind::Oracle
        } else {
            CheckKind::Cross
        };
        checks.push(check(
            "no even-indexed odd parts",
            kind,
            cf::p_tilde(b, even_form, i, m)?,
            o,
        ));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Bijections

fn property_check(name: &str, norm: u32, kind: BijectionKind) -> Result<Check> {
    let mut total = 0u64;
    let mut good = 0u64;
    let mut first_bad = None;
    for p in enumerate(&C::new().fixed_norm(norm))? {
        total += 1;
        match check_properties(&p, kind) {
            Ok(()) => good += 1,
            Err(v) => {
                first_bad.get_or_insert_with(|| format!("{p}: {v:?}"));
            }
        }
    }
    let mut c = check(name, CheckKind::Property, good, total);
    c.detail = first_bad;
    Ok(c)
}

fn rho_props(c: &Ctx) -> Result<Vec<Check>> {
    let n = c.u("norm")?;
    // partitions with parts <= N by BG-rank vs distinct cores times doubled remainders
    let z = |e: u32| Monomial::var(Var::Z, e as i32);
    let mut direct = LaurentPoly::zero();
    let mut split = LaurentPoly::zero();
    let square = Substitution::new().with(Var::Q, Monomial::q(2));
    let g = Grading::norm(n as i64);
    for big_n in 0..=n {
        let all = oracle(&C::new().max_part(big_n).fixed_norm(n), &W::NormBg)?;
        direct += &all.mul_monomial(&z(big_n));
        let cores = series(oracle(&distinct(big_n).max_norm(n), &W::NormBg)?, &g)?;
        let doubled = series(
            oracle(&C::new().max_part(big_n).max_norm(n / 2), &W::Norm)?.substitute(&square)?,
            &g,
        )?;
        let prod = cores
            .mul(&doubled)?
            .into_body()
            .coeff_extract(Var::Q, n as i32);
        split += &prod.mul_monomial(&z(big_n).mul(&Monomial::q(n as i32)));
    }
    Ok(vec![
        property_check("round trip, rank, bound and weight", n, BijectionKind::Rho)?,
        check("cardinality transport", CheckKind::Oracle, direct, split),
    ])
}

fn rhostar_props(c: &Ctx) -> Result<Vec<Check>> {
    let n = c.u("norm")?;
    Ok(vec![property_check(
        "round trip, core and weight",
        n,
        BijectionKind::RhoStar,
    )?])
}

// ---------------------------------------------------------------------------

const EXACT: &[ModeKind] = &[ModeKind::Exact];
const TRUNC: &[ModeKind] = &[ModeKind::Truncated];
const RATIONAL: &[ModeKind] = &[ModeKind::Rational];
const BOTH: &[ModeKind] = &[ModeKind::Exact, ModeKind::Truncated];

const BIG: i64 = 60;

macro_rules! entry {
    ($id:literal, $anchor:literal, [$($p:expr),*], $modes:expr, $cutoff:expr, $eval:ident) => {
        Entry {
            id: $id,
            anchor: $anchor,
            params: &[$($p),*],
            modes: $modes,
            default_cutoff: $cutoff,
            exact_needs: None,
            eval: $eval,
        }
    };
}

static REGISTRY: &[Entry] = &[
    Entry {
        id: "T1_1",
        anchor: "distinct parts: odd-indexed and even-indexed odd parts vs parts 1 and 3 mod 4",
        params: &[req("i", 0, 20), req("j", 0, 20), opt("n", 0, 200)],
        modes: BOTH,
        default_cutoff: Some(30),
        exact_needs: Some("n"),
        eval: t1_1,
    },
    entry!(
        "E1_GF13MOD4",
        "k distinct parts in one odd residue class mod 4",
        [req("k", 0, 20), req("mu", 0, 1)],
        TRUNC,
        Some(30),
        e1_gf13mod4
    ),
    entry!(
        "T2_1",
        "bounded distinct parts by odd-indexed and even-indexed odd parts",
        [req("bound", 0, BIG), req("i", 0, BIG), req("j", 0, BIG)],
        EXACT,
        None,
        t2_1
    ),
    entry!(
        "L2_2",
        "recurrence removing the largest possible part",
        [req("bound", 1, BIG), req("i", 0, BIG), req("j", 0, BIG)],
        EXACT,
        None,
        l2_2
    ),
    entry!(
        "T2_3",
        "one odd-position count fixed, the other summed: products",
        [req("k", 0, 20), req("eq", 1, 2)],
        TRUNC,
        Some(30),
        t2_3
    ),
    entry!(
        "T2_4",
        "one odd-position count vs parts in one residue class mod 4",
        [req("k", 0, 20), req("which", 1, 2)],
        TRUNC,
        Some(30),
        t2_4
    ),
    entry!(
        "E2_PRODSILLS",
        "mod 8 product identities",
        [req("eq", 1, 2)],
        TRUNC,
        Some(30),
        e2_prodsills
    ),
    entry!(
        "T2_5",
        "gap-condition partitions vs parts in residue classes mod 8",
        [req("variant", 1, 2)],
        TRUNC,
        Some(30),
        t2_5
    ),
    entry!(
        "T2_6",
        "distinct parts with even parts in alternate positions vs residue classes mod 8",
        [req("variant", 1, 2)],
        TRUNC,
        Some(30),
        t2_6
    ),
    entry!(
        "T3_1",
        "bounded distinct parts by BG-rank",
        [req("bound", 0, BIG), req("k", -BIG, BIG)],
        EXACT,
        None,
        t3_1
    ),
    entry!(
        "T3_2",
        "bounded partitions by BG-rank",
        [req("bound", 0, BIG), req("k", -BIG, BIG)],
        TRUNC,
        Some(20),
        t3_2
    ),
    entry!(
        "T3_3",
        "BG-rank refinement of the bounded distinct-part product",
        [req("bound", 0, BIG)],
        EXACT,
        None,
        t3_3
    ),
    entry!(
        "C3_4",
        "BG-rank refinement of bounded partitions",
        [req("bound", 0, BIG)],
        TRUNC,
        Some(20),
        c3_4
    ),
    entry!(
        "E3_CHB",
        "Gaussian binomial under inversion of the base",
        [req("n", 0, 30), req("m", 0, 30)],
        EXACT,
        None,
        e3_chb
    ),
    entry!(
        "T4_1",
        "double sum over odd-position counts as a single sum",
        [req("bound", 0, BIG)],
        EXACT,
        None,
        t4_1
    ),
    entry!(
        "T4_2",
        "three-binomial sum vs trinomial product",
        [
            req("N", 0, 30),
            req("nu", 0, 1),
            req("i", 0, BIG),
            req("j", 0, BIG)
        ],
        EXACT,
        None,
        t4_2
    ),
    entry!(
        "C4_3a",
        "bounded distinct parts with no odd-indexed odd parts: two sums",
        [req("N", 0, 30), req("nu", 0, 1)],
        EXACT,
        None,
        c4_3a
    ),
    entry!(
        "C4_3b",
        "bounded distinct parts with no even-indexed odd parts: two sums",
        [req("N", 0, 30), req("nu", 0, 1)],
        EXACT,
        None,
        c4_3b
    ),
    entry!(
        "T4_4",
        "two single sums for even bounds",
        [req("N", 0, 30)],
        EXACT,
        None,
        t4_4
    ),
    entry!(
        "T4_5",
        "Gaussian binomial sums with a Pochhammer weight",
        [req("N", 0, 30)],
        EXACT,
        None,
        t4_5
    ),
    entry!(
        "T5_1a",
        "distinct parts with Boulet-Stanley weights: product",
        [],
        TRUNC,
        Some(14),
        t5_1a
    ),
    entry!(
        "T5_1b",
        "all partitions with Boulet-Stanley weights: product",
        [],
        TRUNC,
        Some(14),
        t5_1b
    ),
    entry!(
        "T5_2a",
        "bounded distinct parts with Boulet-Stanley weights: single sum",
        [req("bound", 0, 30)],
        EXACT,
        None,
        t5_2a
    ),
    entry!(
        "T5_2b",
        "bounded partitions with Boulet-Stanley weights: single sum",
        [req("bound", 0, 30)],
        TRUNC,
        Some(14),
        t5_2b
    ),
    entry!(
        "T5_3",
        "generating series over bounds in x",
        [req("nu", 0, 1), opt("x_cutoff", 0, 10)],
        TRUNC,
        Some(12),
        t5_3
    ),
    entry!(
        "E5_PSI2PHI",
        "unrestricted from distinct Boulet-Stanley sums",
        [opt("bound", 0, 30)],
        TRUNC,
        Some(14),
        e5_psi2phi
    ),
    entry!(
        "T5_4",
        "distinct parts by alternating sum: Rogers-Szego single sum",
        [req("bound", 0, BIG)],
        EXACT,
        None,
        t5_4
    ),
    entry!(
        "E5_RS2PSI",
        "Rogers-Szego polynomial as a Boulet-Stanley specialization",
        [req("bound", 0, BIG)],
        EXACT,
        None,
        e5_rs2psi
    ),
    entry!(
        "E5_EXTRACT",
        "bounded distinct parts with fixed alternating sum",
        [req("bound", 0, BIG), req("k", 0, BIG)],
        EXACT,
        None,
        e5_extract
    ),
    entry!(
        "T5_6",
        "odd parts with a part bound vs distinct parts with fixed alternating sum",
        [req("N", 0, BIG), req("n", 0, 200), req("k", 0, BIG)],
        EXACT,
        None,
        t5_6
    ),
    entry!(
        "E5_EXTRACTPHI",
        "bounded partitions with fixed alternating sum",
        [req("bound", 0, BIG), req("k", 0, BIG)],
        TRUNC,
        Some(20),
        e5_extractphi
    ),
    entry!(
        "T5_7",
        "number of odd parts vs alternating sum under conjugation",
        [req("N", 0, BIG), req("n", 0, 200), req("k", 0, BIG)],
        EXACT,
        None,
        t5_7
    ),
    entry!(
        "T6_1a",
        "bounded partitions with Boulet-Stanley weights: term-by-term sum",
        [req("bound", 0, 30)],
        TRUNC,
        Some(14),
        t6_1a
    ),
    entry!(
        "T6_1b",
        "bounded distinct parts with Boulet-Stanley weights: telescoped sum",
        [req("bound", 0, 30)],
        EXACT,
        None,
        t6_1b
    ),
    entry!(
        "E6_TRANSFORM",
        "2phi1 to 3phi1 transformation at the Boulet-Stanley parameters",
        [req("N", 0, 12), req("nu", 0, 1)],
        RATIONAL,
        None,
        e6_transform
    ),
    entry!(
        "T6_2",
        "partitions in a box with Boulet-Stanley weights: four-fold sum",
        [req("bound", 1, 20), req("parts", 2, 20)],
        EXACT,
        None,
        t6_2
    ),
    entry!(
        "E6_QBIN",
        "box sum at a = b = c = d = q is a Gaussian binomial",
        [req("bound", 0, 20), req("parts", 0, 20)],
        EXACT,
        None,
        e6_qbin
    ),
    entry!(
        "E6_RESTPHI",
        "box sums with an odd parts bound from even ones",
        [req("bound", 1, 20), req("parts", 1, 19)],
        EXACT,
        None,
        e6_restphi
    ),
    entry!(
        "T6_3",
        "partitions in a box with Boulet-Stanley weights: Yee-type sum",
        [req("bound", 1, 20), req("parts", 1, 20)],
        EXACT,
        None,
        t6_3
    ),
    entry!(
        "T6_4",
        "distinct parts counted by odd parts: 2phi1 evaluation",
        [req("N", 0, 12), req("nu", 0, 1)],
        RATIONAL,
        None,
        t6_4
    ),
    entry!(
        "P7_1",
        "partitions in a box by BG-rank",
        [req("bound", 0, 30), req("parts", 0, 30)],
        EXACT,
        None,
        p7_1
    ),
    entry!(
        "P7_2",
        "partitions in a box by alternating sum",
        [req("bound", 0, 30), req("parts", 1, 30)],
        EXACT,
        None,
        p7_2
    ),
    entry!(
        "P7_3",
        "odd parts vs alternating sum in a box",
        [
            req("bound", 1, 30),
            req("parts", 1, 30),
            req("n", 0, 200),
            req("k", 0, 200)
        ],
        EXACT,
        None,
        p7_3
    ),
    entry!(
        "P7_4",
        "bounded distinct parts by odd-position counts and even parts",
        [
            req("bound", 0, BIG),
            req("i", 0, BIG),
            req("j", 0, BIG),
            req("m", 0, BIG)
        ],
        EXACT,
        None,
        p7_4
    ),
    entry!(
        "RHO_PROPS",
        "row-pair extraction: inverse, BG-rank, bounds and weights",
        [req("norm", 0, 40)],
        EXACT,
        None,
        rho_props
    ),
    entry!(
        "RHOSTAR_PROPS",
        "odd-height column-pair extraction: inverse, core and weights",
        [req("norm", 0, 40)],
        EXACT,
        None,
        rhostar_props
    ),
];

/// Every registered identity in stable order.
pub fn list_identities() -> &'static [Entry] {
    REGISTRY
}

pub fn lookup(id: &str) -> Option<&'static Entry> {
    REGISTRY.iter().find(|e| e.id == id)
}
