//! Registry of named verifications. Each entry builds both sides of one
//! identity through independent computations and compares them exactly to a
//! truncation order.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;

use crate::borel::borel_apply;
use crate::catalog::{self, bivariate_vars, mono, term};
use crate::lpi::LpiSpec;
use crate::multisum::{MatrixRelation, MultiSum, MultiSumSpec, RowFailure};
use crate::partitions::{
    distinct_4regular, enum_set, in_a, odd_mult_le3, quinvariate_vars, trivariate_vars, weighted_gf, PartStats, SetId,
    WeightMap,
};
use crate::products::{euler1, euler2, poch_inf, qbinom};
use crate::series::{Mismatch, Monomial, Series, VarSet};
use crate::Error;

type Result<T> = std::result::Result<T, Error>;

/// First point of disagreement between the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub monomial: String,
    pub exponents: Vec<u32>,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub note: Option<String>,
}

impl Witness {
    fn from_mismatch(vars: &VarSet, m: &Mismatch, note: Option<String>) -> Witness {
        Witness {
            monomial: vars.render(&m.monomial),
            exponents: m.monomial.exponents().to_vec(),
            lhs: m.left.clone(),
            rhs: m.right.clone(),
            note,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "monomial": self.monomial,
            "exponents": self.exponents,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "note": self.note,
        })
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: String,
    pub order: u32,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub elapsed: Duration,
}

impl IdentityReport {
    /// `{id, order, passed, witness, elapsed_ms}`; coefficients are decimal
    /// strings so that large values survive any JSON reader.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "id": self.id,
            "order": self.order,
            "passed": self.passed,
            "witness": self.witness.as_ref().map(Witness::to_json),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

impl std::fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} (order {}, {} ms)",
            self.id,
            self.order,
            self.elapsed.as_millis()
        )?;
        if let Some(w) = &self.witness {
            write!(f, ": at {} lhs={} rhs={}", w.monomial, w.lhs, w.rhs)?;
            if let Some(n) = &w.note {
                write!(f, " ({n})")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Overrides the entry's default order.
    pub order: Option<u32>,
    /// Replaces one side by a copy with a single exponent shifted by one.
    pub perturb: bool,
    /// Overrides the entry's order limit.
    pub max_order: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Rr(u32),
    AndrewsGordon(u32, u32),
    Euler1,
    Euler2,
    QBinom,
    TriSingle,
    QuadNew,
    Quad,
    BorelLhs,
    BorelRhs,
    HMatrix,
    LpiEqA,
    GSystem,
    FSystem,
    Thm51(usize),
    Thm15,
    ThmA1,
    ThmA2,
    AveeSplit,
}

/// One registry entry.
#[derive(Clone, Debug)]
pub struct Entry {
    pub id: String,
    pub summary: String,
    pub default_order: u32,
    pub max_order: u32,
    kind: Kind,
}

fn entry(id: impl Into<String>, summary: impl Into<String>, default_order: u32, max_order: u32, kind: Kind) -> Entry {
    Entry {
        id: id.into(),
        summary: summary.into(),
        default_order,
        max_order,
        kind,
    }
}

const THM51: [(&str, SetId, [i64; 4]); 4] = [
    ("thm51-a", SetId::A, [1, 1, 2, 4]),
    ("thm51-b", SetId::ANo1Bar, [1, 3, 2, 4]),
    ("thm51-c", SetId::ANo1And1Bar, [3, 3, 2, 4]),
    ("thm51-d", SetId::ANo1And1Bar2And3Bar, [3, 5, 6, 4]),
];

/// All entries in registry order.
pub fn registry() -> Vec<Entry> {
    let mut r = vec![
        entry(
            "rr1",
            "parts = +-1 mod 5  vs  sum q^(n^2)/(q;q)_n",
            50,
            400,
            Kind::Rr(1),
        ),
        entry(
            "rr2",
            "parts = +-2 mod 5  vs  sum q^(n^2+n)/(q;q)_n",
            50,
            400,
            Kind::Rr(2),
        ),
    ];
    for k in 2..=4 {
        for i in 1..=k {
            r.push(entry(
                format!("andrews-gordon-{k}-{i}"),
                format!(
                    "parts not = 0,+-{i} mod {}  vs  {}-fold Andrews-Gordon sum",
                    2 * k + 1,
                    k - 1
                ),
                30,
                200,
                Kind::AndrewsGordon(k, i),
            ));
        }
    }
    r.extend([
        entry(
            "euler1",
            "sum (xq)^n/(q^2;q^2)_n  vs  1/(xq;q^2)_inf",
            30,
            120,
            Kind::Euler1,
        ),
        entry(
            "euler2",
            "sum (xq)^n q^(n^2-n)/(q^2;q^2)_n  vs  (-xq;q^2)_inf",
            30,
            120,
            Kind::Euler2,
        ),
        entry(
            "qbinom",
            "sum (x^2q^2;q^4)_n (yq^2)^n/(q^4;q^4)_n  vs  (x^2yq^4;q^4)_inf/(yq^2;q^4)_inf",
            30,
            80,
            Kind::QBinom,
        ),
        entry(
            "tri-single",
            "trivariate single sum  vs  (-x;q)_inf (xy;q)_inf/(x^2yq^2;q^2)_inf",
            25,
            60,
            Kind::TriSingle,
        ),
        entry(
            "quad-new",
            "quadruple sum  vs  1/(xq;q^2)_inf (yq^2;q^4)_inf",
            20,
            50,
            Kind::QuadNew,
        ),
        entry(
            "quad",
            "quadruple sum  vs  (-xq;q^2)_inf (-yq^2;q^4)_inf",
            20,
            50,
            Kind::Quad,
        ),
        entry(
            "borel-bridge-lhs",
            "Borel image of 1/(xq;q^2)(yq^2;q^4)  vs  (-xq;q^2)(-yq^2;q^4)",
            20,
            50,
            Kind::BorelLhs,
        ),
        entry(
            "borel-bridge-rhs",
            "Borel image of the quad-new sum  vs  the quad sum",
            20,
            50,
            Kind::BorelRhs,
        ),
        entry(
            "h-matrix",
            "seven-row H relation: expansion-tree leaves and numeric values",
            24,
            40,
            Kind::HMatrix,
        ),
        entry(
            "lpi-eq-A",
            "linked partition ideal language  vs  gap-condition set A",
            30,
            45,
            Kind::LpiEqA,
        ),
        entry(
            "g-system",
            "G = W.A.G(x q^4) and sum of G_k = generating function of A",
            20,
            36,
            Kind::GSystem,
        ),
        entry("f-system", "F = A.W.F(x q^4) with F_k(0) = 1", 20, 36, Kind::FSystem),
    ]);
    for (i, (id, set, beta)) in THM51.iter().enumerate() {
        r.push(entry(
            *id,
            format!(
                "quinvariate generating function of {set}  vs  H({},{},{},{})",
                beta[0], beta[1], beta[2], beta[3]
            ),
            20,
            36,
            Kind::Thm51(i),
        ));
    }
    r.extend([
        entry(
            "thm15",
            "A(n,m,l) on Avee  vs  B(n,m,l) on 4-regular distinct partitions",
            25,
            40,
            Kind::Thm15,
        ),
        entry(
            "thmA1",
            "A1(n,m)  vs  B1(n,m) (distinct, none divisible by 4)",
            25,
            40,
            Kind::ThmA1,
        ),
        entry(
            "thmA2",
            "A2(n,m)  vs  B2(n,m) (odd parts, multiplicity at most 3)",
            25,
            40,
            Kind::ThmA2,
        ),
        entry(
            "avee-split",
            "Avee  =  A-no-1bar + x^2 z q^6 A-no-1bar(x q^8)",
            20,
            36,
            Kind::AveeSplit,
        ),
    ]);
    r
}

/// Resolves an id; `andrews-gordon(k,i)` is accepted as an alias.
pub fn find(id: &str) -> Result<Entry> {
    let normalized = id
        .strip_prefix("andrews-gordon(")
        .and_then(|s| s.strip_suffix(')'))
        .map(|args| format!("andrews-gordon-{}", args.replace(',', "-").replace(' ', "")))
        .unwrap_or_else(|| id.to_string());
    registry()
        .into_iter()
        .find(|e| e.id == normalized)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn verify(id: &str, opts: &VerifyOptions) -> Result<IdentityReport> {
    run_entry(&find(id)?, opts)
}

/// Runs every entry whose id starts with `prefix` (all when `None`), in
/// parallel, returning reports in registry order.
pub fn verify_all(prefix: Option<&str>, opts: &VerifyOptions) -> Result<Vec<IdentityReport>> {
    let entries: Vec<Entry> = registry()
        .into_iter()
        .filter(|e| prefix.is_none_or(|p| e.id.starts_with(p)))
        .collect();
    entries.par_iter().map(|e| run_entry(e, opts)).collect()
}

fn run_entry(e: &Entry, opts: &VerifyOptions) -> Result<IdentityReport> {
    let order = opts.order.unwrap_or(e.default_order);
    let max = opts.max_order.unwrap_or(e.max_order);
    if order > max {
        return Err(Error::OrderTooLarge {
            id: e.id.clone(),
            order,
            max,
        });
    }
    let start = Instant::now();
    let witness = check(e.kind, order, opts.perturb)?;
    Ok(IdentityReport {
        id: e.id.clone(),
        order,
        passed: witness.is_none(),
        witness,
        elapsed: start.elapsed(),
    })
}

fn compare(lhs: &Series, rhs: &Series, order: u32, note: Option<String>) -> Result<Option<Witness>> {
    Ok(lhs
        .first_mismatch(rhs, order)?
        .map(|m| Witness::from_mismatch(lhs.vars(), &m, note)))
}

/// Runs comparisons in sequence and stops at the first failure.
fn first_failure(checks: impl IntoIterator<Item = Result<Option<Witness>>>) -> Result<Option<Witness>> {
    for c in checks {
        if let Some(w) = c? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check(kind: Kind, n: u32, perturb: bool) -> Result<Option<Witness>> {
    match kind {
        Kind::Rr(1) => compare(
            &catalog::residue_product(&[1, 4], 5, n)?,
            &catalog::andrews_gordon_sum(2, 2, n, perturb)?,
            n,
            None,
        ),
        Kind::Rr(_) => compare(
            &catalog::residue_product(&[2, 3], 5, n)?,
            &catalog::andrews_gordon_sum(2, 1, n, perturb)?,
            n,
            None,
        ),
        Kind::AndrewsGordon(k, i) => compare(
            &catalog::andrews_gordon_product(k, i, n)?,
            &catalog::andrews_gordon_sum(k, i, n, perturb)?,
            n,
            None,
        ),
        Kind::Euler1 => {
            let v = bivariate_vars();
            let arg = if perturb { "x*q^2" } else { "x*q" };
            let sum = euler1(&term(&v, 1, "x*q"), 2, &v, n)?;
            compare(&sum, &poch_inf(&term(&v, 1, arg), 2, &v, n)?.invert()?, n, None)
        }
        Kind::Euler2 => {
            let v = bivariate_vars();
            let arg = if perturb { "x*q^2" } else { "x*q" };
            let sum = euler2(&term(&v, 1, "x*q"), 2, &v, n)?;
            compare(&sum, &poch_inf(&term(&v, -1, arg), 2, &v, n)?, n, None)
        }
        Kind::QBinom => {
            let v = trivariate_vars();
            let az = if perturb { "x^2*y*q^5" } else { "x^2*y*q^4" };
            let sum = qbinom(&term(&v, 1, "x^2*q^2"), &term(&v, 1, "y*q^2"), 4, &v, n)?;
            let prod = &poch_inf(&term(&v, 1, az), 4, &v, n)? * &poch_inf(&term(&v, 1, "y*q^2"), 4, &v, n)?.invert()?;
            compare(&sum, &prod, n, None)
        }
        Kind::TriSingle => compare(
            &catalog::tri_single_lhs(n)?,
            &catalog::tri_single_rhs(n, perturb)?,
            n,
            None,
        ),
        Kind::QuadNew => compare(&catalog::quad_new_lhs(n)?, &catalog::quad_new_rhs(n, perturb)?, n, None),
        Kind::Quad => compare(&catalog::quad_lhs(n)?, &catalog::quad_rhs(n, perturb)?, n, None),
        Kind::BorelLhs => {
            let v = trivariate_vars();
            let image = borel_apply(&catalog::quad_new_lhs(n)?)?;
            let y_arg = if perturb { "y*q^3" } else { "y*q^2" };
            let target = &poch_inf(&term(&v, -1, "x*q"), 2, &v, n)? * &poch_inf(&term(&v, -1, y_arg), 4, &v, n)?;
            compare(&image, &target, n, None)
        }
        Kind::BorelRhs => compare(
            &borel_apply(&catalog::quad_new_rhs(n, perturb)?)?,
            &catalog::quad_rhs(n, false)?,
            n,
            None,
        ),
        Kind::HMatrix => check_h_matrix(n, perturb),
        Kind::LpiEqA => check_lpi_language(n, perturb),
        Kind::GSystem => check_g_system(n, perturb),
        Kind::FSystem => check_f_system(n, perturb),
        Kind::Thm51(i) => {
            let (_, set, beta) = THM51[i];
            let mut beta = beta;
            if perturb {
                beta[0] += 1;
            }
            compare(
                &weighted_gf(set, n, &WeightMap::quinvariate()),
                &catalog::overpartition_sum(&beta, n)?,
                n,
                None,
            )
        }
        Kind::Thm15 => check_thm15(n, perturb),
        Kind::ThmA1 => check_weighted(n, perturb, 1),
        Kind::ThmA2 => check_weighted(n, perturb, 2),
        Kind::AveeSplit => check_avee_split(n, perturb),
    }
}

fn check_h_matrix(n: u32, perturb: bool) -> Result<Option<Witness>> {
    let vars = quinvariate_vars();
    let ms = MultiSum::bind(MultiSumSpec::overpartition(), &vars)?;
    let (a, w) = LpiSpec::paper_spec().matrices();
    let mut rel = MatrixRelation::overpartition(&ms, a, w);
    if perturb {
        rel.lhs[0].0[0] += 1;
    }
    if let Some(RowFailure::Symbolic { row, leaves, claimed }) = rel.verify_symbolic(&ms)? {
        return Ok(Some(symbolic_witness(&ms, row, &leaves, &claimed)));
    }
    Ok(rel.verify_numeric(&ms, n)?.map(|f| match f {
        RowFailure::Numeric { row, mismatch } => {
            Witness::from_mismatch(&vars, &mismatch, Some(format!("row {}", row + 1)))
        }
        RowFailure::Symbolic { .. } => unreachable!("numeric check reports numeric failures"),
    }))
}

/// Reports the first leaf whose multiplicity differs between the expansion
/// and the claimed row; the coefficients are the two multiplicities.
fn symbolic_witness(
    ms: &MultiSum,
    row: usize,
    leaves: &[crate::multisum::SumNode],
    claimed: &[crate::multisum::SumNode],
) -> Witness {
    let all: BTreeSet<_> = leaves.iter().chain(claimed).cloned().collect();
    let count = |xs: &[crate::multisum::SumNode], x| xs.iter().filter(|y| *y == x).count();
    let node = all
        .iter()
        .find(|x| count(leaves, *x) != count(claimed, *x))
        .expect("differing multisets have a differing element");
    Witness {
        monomial: ms.vars().render(&node.weight),
        exponents: node.weight.exponents().to_vec(),
        lhs: count(leaves, node).into(),
        rhs: count(claimed, node).into(),
        note: Some(format!("row {}: leaf {}", row + 1, ms.render_node(node))),
    }
}

fn perturbed_ideal() -> LpiSpec {
    let p = LpiSpec::paper_spec();
    let linking = (0..p.len()).map(|k| p.linking(k).to_vec()).collect();
    LpiSpec::new(p.blocks().to_vec(), linking, p.modulus() + 1).expect("a larger modulus stays valid")
}

fn size_witness(n: u32, lhs: usize, rhs: usize, note: String) -> Witness {
    Witness {
        monomial: format!("q^{n}"),
        exponents: vec![n],
        lhs: lhs.into(),
        rhs: rhs.into(),
        note: Some(note),
    }
}

fn check_lpi_language(n_max: u32, perturb: bool) -> Result<Option<Witness>> {
    let spec = if perturb {
        perturbed_ideal()
    } else {
        LpiSpec::paper_spec()
    };
    for n in 0..=n_max {
        let language: BTreeSet<_> = spec.members(n).into_iter().collect();
        let set: BTreeSet<_> = enum_set(SetId::A, n).into_iter().collect();
        if language != set {
            let odd = language.symmetric_difference(&set).next().expect("sets differ");
            return Ok(Some(size_witness(
                n,
                language.len(),
                set.len(),
                format!("`{odd}` is in only one of the two sets"),
            )));
        }
        for lambda in &set {
            let chain = spec.decompose_member(lambda, in_a)?;
            if spec.compose(&chain)? != *lambda {
                return Ok(Some(size_witness(n, 0, 1, format!("round trip fails for `{lambda}`"))));
            }
        }
    }
    for chain in spec.chains(n_max) {
        let lambda = spec.compose(&chain)?;
        if spec.decompose(&lambda)? != chain {
            return Ok(Some(size_witness(
                lambda.size(),
                0,
                1,
                format!("chain {:?} does not round trip", chain.0),
            )));
        }
    }
    Ok(None)
}

/// Block weights, with the last one carrying an extra `q` when perturbed.
fn system_weights(spec: &LpiSpec, perturb: bool) -> Vec<Monomial> {
    let (_, mut w) = spec.matrices();
    if perturb {
        let last = w.len() - 1;
        w[last] = w[last].with(0, w[last].get(0) + 1);
    }
    w
}

fn shift_x(s: &Series, by: u32) -> Result<Series> {
    let v = s.vars().clone();
    Ok(s.substitute("x", &mono(&v, "x").with(v.trunc_index(), by))?)
}

fn check_g_system(n: u32, perturb: bool) -> Result<Option<Witness>> {
    let spec = LpiSpec::paper_spec();
    let vars = quinvariate_vars();
    let g = spec.g_series(n);
    let w = system_weights(&spec, perturb);
    let shifted: Vec<Series> = g.iter().map(|s| shift_x(s, spec.modulus())).collect::<Result<_>>()?;
    for k in 0..spec.len() {
        let sum = spec
            .linking(k)
            .iter()
            .fold(Series::zero(&vars, n), |acc, &j| &acc + &shifted[j]);
        let rhs = sum.mul_monomial(&w[k])?;
        if let Some(wit) = compare(&g[k], &rhs, n, Some(format!("G_{}", k + 1)))? {
            return Ok(Some(wit));
        }
    }
    let total = g.iter().fold(Series::zero(&vars, n), |acc, s| &acc + s);
    compare(
        &total,
        &weighted_gf(SetId::A, n, &WeightMap::quinvariate()),
        n,
        Some("sum of G_k".into()),
    )
}

fn check_f_system(n: u32, perturb: bool) -> Result<Option<Witness>> {
    let spec = LpiSpec::paper_spec();
    let vars = quinvariate_vars();
    let f = spec.f_series(n);
    let w = system_weights(&spec, perturb);
    let weighted: Vec<Series> = f
        .iter()
        .zip(&w)
        .map(|(s, wj)| Ok(shift_x(s, spec.modulus())?.mul_monomial(wj)?))
        .collect::<Result<_>>()?;
    let ix = vars.index_of("x")?;
    for (k, fk) in f.iter().enumerate() {
        let rhs = spec
            .linking(k)
            .iter()
            .fold(Series::zero(&vars, n), |acc, &j| &acc + &weighted[j]);
        if let Some(wit) = compare(fk, &rhs, n, Some(format!("F_{}", k + 1)))? {
            return Ok(Some(wit));
        }
        let x_free = Series::make(
            &vars,
            n,
            f[k].iter()
                .filter(|(m, _)| m.get(ix) == 0)
                .map(|(m, c)| (*m, c.clone())),
        )?;
        if let Some(wit) = compare(&x_free, &Series::one(&vars, n), n, Some(format!("F_{}(0)", k + 1)))? {
            return Ok(Some(wit));
        }
    }
    Ok(None)
}

fn tally(vars: &Arc<VarSet>, order: u32, rows: impl Iterator<Item = (u32, u32, u32)>) -> Result<Series> {
    let (ix, iy) = (vars.index_of("x")?, vars.index_of("y")?);
    Ok(Series::make(
        vars,
        order,
        rows.map(|(n, m, l)| (vars.one().with(0, n).with(ix, m).with(iy, l), 1)),
    )?)
}

fn avee_stats(order: u32) -> Vec<PartStats> {
    (0..=order)
        .flat_map(|n| enum_set(SetId::Avee, n))
        .map(|l| l.stats())
        .collect()
}

/// `sum A(n,m,l) x^m y^l q^n` and `sum B(n,m,l) x^m y^l q^n`, each also
/// compared with the product `(-xq;q^2)_inf (-yq^2;q^4)_inf`.
fn check_thm15(n: u32, perturb: bool) -> Result<Option<Witness>> {
    let v = trivariate_vars();
    let r0_weight = if perturb { 1 } else { 2 };
    let a = tally(
        &v,
        n,
        avee_stats(n)
            .into_iter()
            .map(|s| (s.size, s.r1mod2 + r0_weight * s.r0mod4, s.r2mod4 + s.over)),
    )?;
    let b = tally(
        &v,
        n,
        (0..=n).flat_map(distinct_4regular).map(|p| {
            let odd = p.iter().filter(|x| *x % 2 == 1).count() as u32;
            (p.iter().sum(), odd, p.len() as u32 - odd)
        }),
    )?;
    let prod = &poch_inf(&term(&v, -1, "x*q"), 2, &v, n)? * &poch_inf(&term(&v, -1, "y*q^2"), 4, &v, n)?;
    first_failure([
        compare(&a, &b, n, Some("A vs B".into())),
        compare(&b, &prod, n, Some("B vs product".into())),
    ])
}

/// `which = 1`: overlined parts and multiples of 4 count twice, against
/// distinct 4-regular partitions. `which = 2`: overlined parts count three
/// times and even parts twice, against odd parts repeated at most 3 times.
/// Both are also matched with the `y -> x^which` specialization of the
/// refined count.
fn check_weighted(n: u32, perturb: bool, which: u32) -> Result<Option<Witness>> {
    let v = trivariate_vars();
    let stats = avee_stats(n);
    let weight = |s: &PartStats| -> u32 {
        match (which, perturb) {
            (1, false) => s.length + s.over + s.r0mod4,
            (1, true) => s.length + s.over,
            (_, false) => s.r1mod2 + 2 * s.over + 2 * s.r2mod4 + 2 * s.r0mod4,
            (_, true) => s.r1mod2 + s.over + 2 * s.r2mod4 + 2 * s.r0mod4,
        }
    };
    let a = tally(&v, n, stats.iter().map(|s| (s.size, weight(s), 0)))?;
    let (b, prod) = if which == 1 {
        let b = tally(
            &v,
            n,
            (0..=n)
                .flat_map(distinct_4regular)
                .map(|p| (p.iter().sum(), p.len() as u32, 0)),
        )?;
        let prod = &poch_inf(&term(&v, -1, "x*q"), 2, &v, n)? * &poch_inf(&term(&v, -1, "x*q^2"), 4, &v, n)?;
        (b, prod)
    } else {
        let b = tally(
            &v,
            n,
            (0..=n)
                .flat_map(odd_mult_le3)
                .map(|p| (p.iter().sum(), p.len() as u32, 0)),
        )?;
        let prod = &poch_inf(&term(&v, -1, "x*q"), 2, &v, n)? * &poch_inf(&term(&v, -1, "x^2*q^2"), 4, &v, n)?;
        (b, prod)
    };
    let refined = tally(
        &v,
        n,
        stats
            .iter()
            .map(|s| (s.size, s.r1mod2 + 2 * s.r0mod4, s.r2mod4 + s.over)),
    )?;
    let special = refined.substitute("y", &mono(&v, "x").pow(which))?;
    first_failure([
        compare(&a, &b, n, Some(format!("A{which} vs B{which}"))),
        compare(&a, &special, n, Some(format!("A{which} vs specialized A"))),
        compare(&b, &prod, n, Some(format!("B{which} vs product"))),
    ])
}

fn check_avee_split(n: u32, perturb: bool) -> Result<Option<Witness>> {
    let w = WeightMap::quinvariate();
    let v = w.vars().clone();
    let base = weighted_gf(SetId::ANo1Bar, n, &w);
    let lead = if perturb { "x^2*z*q^7" } else { "x^2*z*q^6" };
    let shifted = shift_x(&base, 8)?.mul_monomial(&mono(&v, lead))?;
    compare(&weighted_gf(SetId::Avee, n, &w), &(&base + &shifted), n, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(order: u32) -> VerifyOptions {
        VerifyOptions {
            order: Some(order),
            ..Default::default()
        }
    }

    fn perturbed(order: u32) -> VerifyOptions {
        VerifyOptions {
            order: Some(order),
            perturb: true,
            ..Default::default()
        }
    }

    #[test]
    fn registry_ids_are_unique() {
        let ids: Vec<String> = registry().into_iter().map(|e| e.id).collect();
        let set: BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
        assert!(ids.len() >= 30);
    }

    #[test]
    fn find_accepts_alias() {
        assert_eq!(find("andrews-gordon(3,2)").unwrap().id, "andrews-gordon-3-2");
        assert!(matches!(find("nope"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn every_entry_passes_at_low_order_and_fails_perturbed() {
        for e in registry() {
            let n = e.default_order.min(12);
            let ok = run_entry(&e, &opts(n)).unwrap();
            assert!(ok.passed, "{ok}");
            assert!(ok.witness.is_none());
            let bad = run_entry(&e, &perturbed(n)).unwrap();
            assert!(!bad.passed, "perturbed {} passed", e.id);
            assert!(bad.witness.is_some());
        }
    }

    #[test]
    fn order_guard() {
        let o = VerifyOptions {
            order: Some(500),
            ..Default::default()
        };
        assert!(matches!(verify("quad", &o), Err(Error::OrderTooLarge { .. })));
        let o = VerifyOptions {
            order: Some(12),
            max_order: Some(10),
            perturb: false,
        };
        assert!(matches!(verify("rr1", &o), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn filters() {
        let o = opts(8);
        assert_eq!(verify_all(Some("thm51"), &o).unwrap().len(), 4);
        assert!(verify_all(Some("zzz"), &o).unwrap().is_empty());
    }

    #[test]
    fn report_json_shape() {
        let r = verify("quad", &perturbed(8)).unwrap();
        let j = r.to_json();
        assert_eq!(j["id"], "quad");
        assert_eq!(j["passed"], false);
        assert!(j["witness"]["monomial"].is_string());
        assert!(j["witness"]["lhs"].is_string());
        assert!(j["elapsed_ms"].is_u64());
    }
}
