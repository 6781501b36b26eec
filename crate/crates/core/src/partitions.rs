//! Overpartitions, the gap-constrained families built from them, and the
//! weighted counts compared against 4-regular distinct partitions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{Monomial, Series, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive")]
    ZeroPart,
    #[error("value {0} is overlined more than once")]
    RepeatedOverline(u32),
    #[error("cannot parse part `{0}`")]
    BadPart(String),
    #[error("unknown set `{0}`")]
    UnknownSet(String),
}

/// One part; overlines carry no size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub value: u32,
    pub overlined: bool,
}

impl Part {
    pub fn plain(value: u32) -> Part {
        Part {
            value,
            overlined: false,
        }
    }

    pub fn over(value: u32) -> Part {
        Part { value, overlined: true }
    }

    pub fn shifted(self, by: u32) -> Part {
        Part {
            value: self.value + by,
            ..self
        }
    }
}

// Ascending by value; at equal value the overlined copy comes first.
impl Ord for Part {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value).then(other.overlined.cmp(&self.overlined))
    }
}

impl PartialOrd for Part {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overlined {
            write!(f, "{}~", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl FromStr for Part {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Part, PartitionError> {
        let (digits, overlined) = match s.strip_suffix('~') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let value = digits
            .parse::<u32>()
            .map_err(|_| PartitionError::BadPart(s.to_string()))?;
        Ok(Part { value, overlined })
    }
}

/// Overpartition in canonical (ascending) order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overpartition {
    parts: Vec<Part>,
}

impl Overpartition {
    pub fn new(mut parts: Vec<Part>) -> Result<Overpartition, PartitionError> {
        parts.sort();
        if parts.iter().any(|p| p.value == 0) {
            return Err(PartitionError::ZeroPart);
        }
        for w in parts.windows(2) {
            if w[0].overlined && w[1].overlined && w[0].value == w[1].value {
                return Err(PartitionError::RepeatedOverline(w[0].value));
            }
        }
        Ok(Overpartition { parts })
    }

    pub fn empty() -> Overpartition {
        Overpartition::default()
    }

    /// Ascending parts.
    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, p: Part) -> bool {
        self.parts.contains(&p)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().map(|p| p.value).sum()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.last().map(|p| p.value)
    }

    /// Adds `by` to every part, keeping overlines.
    pub fn shifted(&self, by: u32) -> Overpartition {
        Overpartition {
            parts: self.parts.iter().map(|p| p.shifted(by)).collect(),
        }
    }

    /// Union of the parts of two overpartitions.
    pub fn merge(&self, other: &Overpartition) -> Result<Overpartition, PartitionError> {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Overpartition::new(parts)
    }

    pub fn stats(&self) -> PartStats {
        let mut s = PartStats {
            size: 0,
            length: self.parts.len() as u32,
            r1mod2: 0,
            r2mod4: 0,
            r0mod4: 0,
            over: 0,
        };
        for p in &self.parts {
            s.size += p.value;
            match p.value % 4 {
                0 => s.r0mod4 += 1,
                2 => s.r2mod4 += 1,
                _ => s.r1mod2 += 1,
            }
            if p.overlined {
                s.over += 1;
            }
        }
        s
    }
}

/// Largest part first, overlines as a trailing `~`: `5~ 1`.
impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self.parts.iter().rev().map(|p| p.to_string()).collect();
        write!(f, "{}", rendered.join(" "))
    }
}

impl FromStr for Overpartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Overpartition, PartitionError> {
        let parts = s
            .split(|c: char| c == '+' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(Part::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Overpartition::new(parts)
    }
}

/// Size, length, residue counts and overline count of an overpartition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartStats {
    pub size: u32,
    pub length: u32,
    /// All odd parts (residues 1 and 3 mod 4).
    pub r1mod2: u32,
    pub r2mod4: u32,
    pub r0mod4: u32,
    pub over: u32,
}

impl std::ops::Add for PartStats {
    type Output = PartStats;
    fn add(self, o: PartStats) -> PartStats {
        PartStats {
            size: self.size + o.size,
            length: self.length + o.length,
            r1mod2: self.r1mod2 + o.r1mod2,
            r2mod4: self.r2mod4 + o.r2mod4,
            r0mod4: self.r0mod4 + o.r0mod4,
            over: self.over + o.over,
        }
    }
}

/// Gap rule shared by the families below: consecutive parts differ by at
/// least 4, strictly more when the larger one is overlined or divisible by 4.
fn gap_ok(smaller: Part, larger: Part) -> bool {
    let strict = larger.overlined || larger.value.is_multiple_of(4);
    let diff = larger.value.saturating_sub(smaller.value);
    if larger.value < smaller.value {
        return false;
    }
    if strict {
        diff > 4
    } else {
        diff >= 4
    }
}

fn is_avee_exception(smaller: Part, larger: Part) -> bool {
    smaller == Part::plain(1) && larger == Part::over(5)
}

pub fn in_a(lambda: &Overpartition) -> bool {
    lambda.parts.iter().all(|p| !p.overlined || p.value % 2 == 1) && lambda.parts.windows(2).all(|w| gap_ok(w[0], w[1]))
}

/// Membership in the family with the parts of `forbidden` excluded.
pub fn in_a_s(lambda: &Overpartition, forbidden: &[Part]) -> bool {
    in_a(lambda) && !forbidden.iter().any(|p| lambda.contains(*p))
}

/// Only odd parts above 1 may be overlined, and `5~` may sit directly above
/// a plain `1` despite the strict gap.
pub fn in_avee(lambda: &Overpartition) -> bool {
    lambda
        .parts
        .iter()
        .all(|p| !p.overlined || (p.value % 2 == 1 && p.value > 1))
        && lambda
            .parts
            .windows(2)
            .all(|w| gap_ok(w[0], w[1]) || is_avee_exception(w[0], w[1]))
}

/// Named subsets of the overpartition family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetId {
    A,
    ANo1Bar,
    ANo1And1Bar,
    ANo1And1Bar2And3Bar,
    Avee,
}

impl SetId {
    pub const ALL: [SetId; 5] = [
        SetId::A,
        SetId::ANo1Bar,
        SetId::ANo1And1Bar,
        SetId::ANo1And1Bar2And3Bar,
        SetId::Avee,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetId::A => "A",
            SetId::ANo1Bar => "A-no-1bar",
            SetId::ANo1And1Bar => "A-no-1-1bar",
            SetId::ANo1And1Bar2And3Bar => "A-no-1-1bar-2-3bar",
            SetId::Avee => "Avee",
        }
    }

    pub fn forbidden(self) -> Vec<Part> {
        match self {
            SetId::A | SetId::Avee => vec![],
            SetId::ANo1Bar => vec![Part::over(1)],
            SetId::ANo1And1Bar => vec![Part::plain(1), Part::over(1)],
            SetId::ANo1And1Bar2And3Bar => {
                vec![Part::plain(1), Part::over(1), Part::plain(2), Part::over(3)]
            }
        }
    }

    pub fn contains(self, lambda: &Overpartition) -> bool {
        match self {
            SetId::Avee => in_avee(lambda),
            _ => in_a_s(lambda, &self.forbidden()),
        }
    }

    fn allows_part(self, p: Part) -> bool {
        if p.overlined && p.value.is_multiple_of(2) {
            return false;
        }
        match self {
            SetId::Avee => !(p.overlined && p.value == 1),
            _ => !self.forbidden().contains(&p),
        }
    }

    fn allows_pair(self, smaller: Part, larger: Part) -> bool {
        gap_ok(smaller, larger) || (self == SetId::Avee && is_avee_exception(smaller, larger))
    }
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetId {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<SetId, PartitionError> {
        SetId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| PartitionError::UnknownSet(s.to_string()))
    }
}

/// Ordinary partitions of `n`, parts in descending order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All overpartitions of `n`: every partition with every choice of
/// overlines on its distinct values.
pub fn enum_overpartitions(n: u32) -> Vec<Overpartition> {
    let mut out = Vec::new();
    for p in partitions(n) {
        let mut distinct = p.clone();
        distinct.dedup();
        for mask in 0u64..(1u64 << distinct.len()) {
            let mut parts: Vec<Part> = p.iter().map(|&v| Part::plain(v)).collect();
            for (i, v) in distinct.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    let slot = parts.iter_mut().find(|q| q.value == *v).expect("value present");
                    slot.overlined = true;
                }
            }
            out.push(Overpartition::new(parts).expect("valid by construction"));
        }
    }
    out
}

/// Members of `set` of size `n`, generated directly from the gap rule,
/// largest part first.
pub fn enum_set(set: SetId, n: u32) -> Vec<Overpartition> {
    fn go(set: SetId, rest: u32, above: Option<Part>, cur: &mut Vec<Part>, out: &mut Vec<Overpartition>) {
        if rest == 0 {
            let mut parts = cur.clone();
            parts.reverse();
            out.push(Overpartition { parts });
            return;
        }
        let cap = match above {
            Some(p) => rest.min(p.value.saturating_sub(1)),
            None => rest,
        };
        for value in (1..=cap).rev() {
            for overlined in [true, false] {
                let p = Part { value, overlined };
                if !set.allows_part(p) {
                    continue;
                }
                if let Some(a) = above {
                    if !set.allows_pair(p, a) {
                        continue;
                    }
                }
                cur.push(p);
                go(set, rest - value, Some(p), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(set, n, None, &mut Vec::new(), &mut out);
    out
}

/// Linear combination of [`PartStats`] fields used as one variable's exponent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StatForm {
    pub length: u32,
    pub r1mod2: u32,
    pub r2mod4: u32,
    pub r0mod4: u32,
    pub over: u32,
}

impl StatForm {
    pub fn apply(&self, s: &PartStats) -> u32 {
        self.length * s.length
            + self.r1mod2 * s.r1mod2
            + self.r2mod4 * s.r2mod4
            + self.r0mod4 * s.r0mod4
            + self.over * s.over
    }
}

/// Assigns each non-`q` variable a [`StatForm`]; `q` always tracks size.
#[derive(Clone, Debug)]
pub struct WeightMap {
    vars: Arc<VarSet>,
    forms: Vec<(usize, StatForm)>,
}

impl WeightMap {
    pub fn new(vars: &Arc<VarSet>, forms: &[(&str, StatForm)]) -> Result<WeightMap, crate::series::SeriesError> {
        let forms = forms
            .iter()
            .map(|(n, f)| Ok((vars.index_of(n)?, *f)))
            .collect::<Result<Vec<_>, crate::series::SeriesError>>()?;
        Ok(WeightMap {
            vars: Arc::clone(vars),
            forms,
        })
    }

    /// `x^length y1^(parts = 2 mod 4) y2^(parts = 0 mod 4) z^overlines q^size`.
    pub fn quinvariate() -> WeightMap {
        let vars = quinvariate_vars();
        WeightMap::new(
            &vars,
            &[
                (
                    "x",
                    StatForm {
                        length: 1,
                        ..Default::default()
                    },
                ),
                (
                    "y1",
                    StatForm {
                        r2mod4: 1,
                        ..Default::default()
                    },
                ),
                (
                    "y2",
                    StatForm {
                        r0mod4: 1,
                        ..Default::default()
                    },
                ),
                (
                    "z",
                    StatForm {
                        over: 1,
                        ..Default::default()
                    },
                ),
            ],
        )
        .expect("static variables")
    }

    /// Trivariate refinement: `x^(odd + 2 r0mod4) y^(r2mod4 + over) q^size`.
    pub fn refinement() -> WeightMap {
        WeightMap::refinement_with(StatForm {
            r1mod2: 1,
            r0mod4: 2,
            ..Default::default()
        })
    }

    pub(crate) fn refinement_with(x_form: StatForm) -> WeightMap {
        let vars = trivariate_vars();
        WeightMap::new(
            &vars,
            &[
                ("x", x_form),
                (
                    "y",
                    StatForm {
                        r2mod4: 1,
                        over: 1,
                        ..Default::default()
                    },
                ),
            ],
        )
        .expect("static variables")
    }

    /// Single statistic `x^(form) q^size` over `{q, x}`.
    pub fn single(form: StatForm) -> WeightMap {
        let vars = VarSet::new(&["q", "x"]).expect("static variables");
        WeightMap::new(&vars, &[("x", form)]).expect("static variables")
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn monomial(&self, s: &PartStats) -> Monomial {
        let mut m = self.vars.one().with(self.vars.trunc_index(), s.size);
        for (i, f) in &self.forms {
            m = m.with(*i, m.get(*i) + f.apply(s));
        }
        m
    }
}

pub fn quinvariate_vars() -> Arc<VarSet> {
    VarSet::new(&["q", "x", "y1", "y2", "z"]).expect("static variables")
}

pub fn trivariate_vars() -> Arc<VarSet> {
    VarSet::new(&["q", "x", "y"]).expect("static variables")
}

/// Generating function of `set` truncated at `order`, weighted by `weights`.
pub fn weighted_gf(set: SetId, order: u32, weights: &WeightMap) -> Series {
    gf_from(
        (0..=order).flat_map(|n| enum_set(set, n)).map(|l| l.stats()),
        order,
        weights,
    )
}

/// Sums `weights` over a stream of statistics.
pub fn gf_from(stats: impl Iterator<Item = PartStats>, order: u32, weights: &WeightMap) -> Series {
    Series::make(weights.vars(), order, stats.map(|s| (weights.monomial(&s), 1)))
        .expect("weight monomials match their VarSet")
}

/// Distinct-part partitions of `n` with no part divisible by 4, descending.
pub fn distinct_4regular(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            if p % 4 == 0 {
                continue;
            }
            cur.push(p);
            go(rest - p, p - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` into odd parts, each appearing at most three times.
pub fn odd_mult_le3(n: u32) -> Vec<Vec<u32>> {
    partitions(n)
        .into_iter()
        .filter(|p| p.iter().all(|v| v % 2 == 1) && p.chunk_by(|a, b| a == b).all(|run| run.len() <= 3))
        .collect()
}

type Tally2 = FxHashMap<(u32, u32), u64>;
type Tally3 = FxHashMap<(u32, u32, u32), u64>;

/// `A(n, m, l)` for all `n <= max_n`: members of `Avee` with
/// `odd + 2 r0mod4 = m` and `r2mod4 + over = l`.
pub fn table_a(max_n: u32) -> Tally3 {
    let mut t = Tally3::default();
    for n in 0..=max_n {
        for l in enum_set(SetId::Avee, n) {
            let s = l.stats();
            *t.entry((n, s.r1mod2 + 2 * s.r0mod4, s.r2mod4 + s.over)).or_default() += 1;
        }
    }
    t
}

/// `B(n, m, l)`: 4-regular distinct partitions with `m` odd and `l` even parts.
pub fn table_b(max_n: u32) -> Tally3 {
    let mut t = Tally3::default();
    for n in 0..=max_n {
        for p in distinct_4regular(n) {
            let odd = p.iter().filter(|v| *v % 2 == 1).count() as u32;
            *t.entry((n, odd, p.len() as u32 - odd)).or_default() += 1;
        }
    }
    t
}

/// `A1(n, m)`: members of `Avee` with `length + over + r0mod4 = m`, i.e.
/// overlined parts and multiples of 4 count twice.
pub fn table_a1(max_n: u32) -> Tally2 {
    tally_avee(max_n, |s| s.length + s.over + s.r0mod4)
}

/// `A2(n, m)`: members of `Avee` with `odd + 2 over + 2 r2mod4 + 2 r0mod4 = m`,
/// i.e. overlined (odd) parts count three times and even parts twice.
pub fn table_a2(max_n: u32) -> Tally2 {
    tally_avee(max_n, |s| s.r1mod2 + 2 * s.over + 2 * s.r2mod4 + 2 * s.r0mod4)
}

fn tally_avee(max_n: u32, weight: impl Fn(&PartStats) -> u32) -> Tally2 {
    let mut t = Tally2::default();
    for n in 0..=max_n {
        for l in enum_set(SetId::Avee, n) {
            *t.entry((n, weight(&l.stats()))).or_default() += 1;
        }
    }
    t
}

/// `B1(n, m)`: 4-regular distinct partitions with `m` parts.
pub fn table_b1(max_n: u32) -> Tally2 {
    let mut t = Tally2::default();
    for n in 0..=max_n {
        for p in distinct_4regular(n) {
            *t.entry((n, p.len() as u32)).or_default() += 1;
        }
    }
    t
}

/// `B2(n, m)`: partitions into `m` odd parts, none repeated more than 3 times.
pub fn table_b2(max_n: u32) -> Tally2 {
    let mut t = Tally2::default();
    for n in 0..=max_n {
        for p in odd_mult_le3(n) {
            *t.entry((n, p.len() as u32)).or_default() += 1;
        }
    }
    t
}

pub fn count_a(n: u32, m: u32, l: u32) -> u64 {
    enum_set(SetId::Avee, n)
        .iter()
        .map(|x| x.stats())
        .filter(|s| s.r1mod2 + 2 * s.r0mod4 == m && s.r2mod4 + s.over == l)
        .count() as u64
}

pub fn count_b(n: u32, m: u32, l: u32) -> u64 {
    distinct_4regular(n)
        .iter()
        .filter(|p| {
            let odd = p.iter().filter(|v| *v % 2 == 1).count() as u32;
            odd == m && p.len() as u32 - odd == l
        })
        .count() as u64
}

pub fn count_a1(n: u32, m: u32) -> u64 {
    enum_set(SetId::Avee, n)
        .iter()
        .map(|x| x.stats())
        .filter(|s| s.length + s.over + s.r0mod4 == m)
        .count() as u64
}

pub fn count_a2(n: u32, m: u32) -> u64 {
    enum_set(SetId::Avee, n)
        .iter()
        .map(|x| x.stats())
        .filter(|s| s.r1mod2 + 2 * s.over + 2 * s.r2mod4 + 2 * s.r0mod4 == m)
        .count() as u64
}

pub fn count_b1(n: u32, m: u32) -> u64 {
    distinct_4regular(n).iter().filter(|p| p.len() as u32 == m).count() as u64
}

pub fn count_b2(n: u32, m: u32) -> u64 {
    odd_mult_le3(n).iter().filter(|p| p.len() as u32 == m).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn op(s: &str) -> Overpartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let l = op("27 23 19~ 14 8 1~");
        assert_eq!(l.to_string(), "27 23 19~ 14 8 1~");
        assert_eq!(op("1+5~"), op("5~ 1"));
        assert_eq!(op("").to_string(), "");
        assert!(matches!("0".parse::<Overpartition>(), Err(PartitionError::ZeroPart)));
        assert!(matches!(
            "3~ 3~".parse::<Overpartition>(),
            Err(PartitionError::RepeatedOverline(3))
        ));
        assert!("3^".parse::<Overpartition>().is_err());
    }

    #[test]
    fn canonical_order_puts_overline_first() {
        let l = op("2 2~ 1");
        assert_eq!(l.parts(), &[Part::plain(1), Part::over(2), Part::plain(2)]);
    }

    #[test]
    fn stats_examples() {
        let s = op("1~ 8 14 19~ 23 27").stats();
        assert_eq!(s.size, 92);
        assert_eq!(s.length, 6);
        assert_eq!(s.over, 2);
        assert_eq!(s.r2mod4, 1);
        assert_eq!(s.r0mod4, 1);
        assert_eq!(s.r1mod2, 4);
        assert_eq!(Overpartition::empty().stats(), PartStats::default());
        let four = op("4").stats();
        assert_eq!((four.size, four.length, four.r0mod4), (4, 1, 1));
    }

    #[test]
    fn membership_in_a() {
        assert!(in_a(&op("1~ 8 14 19~ 23 27")));
        assert!(!in_a(&op("5~ 1")));
        assert!(!in_a(&op("2~")));
        assert!(in_a(&op("5 1")));
        assert!(!in_a(&op("8 4")));
        assert!(in_a(&op("9 4")));
    }

    #[test]
    fn membership_with_forbidden_parts() {
        assert!(in_a_s(&op("1 5"), &[Part::over(1)]));
        assert!(!in_a_s(&op("1 6"), &[Part::plain(1), Part::over(1)]));
        let s = SetId::ANo1And1Bar2And3Bar.forbidden();
        assert!(in_a_s(&op("3 8"), &s));
        assert!(!in_a_s(&op("3~ 8"), &s));
    }

    #[test]
    fn membership_in_avee() {
        assert!(in_avee(&op("5~ 1")));
        assert!(!in_avee(&op("5~ 1 9~")));
        assert!(in_avee(&op("5~ 1 10")));
        assert!(in_avee(&op("5~ 1 9")));
        assert!(!in_avee(&op("1~")));
        assert!(!in_avee(&op("5~ 1~")));
    }

    #[test]
    fn overpartition_counts() {
        assert_eq!(enum_overpartitions(4).len(), 14);
        assert_eq!(enum_overpartitions(0), vec![Overpartition::empty()]);
        let ones: BTreeSet<_> = enum_overpartitions(1).into_iter().collect();
        assert_eq!(ones, [op("1"), op("1~")].into_iter().collect());
        // 1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232
        let counts: Vec<usize> = (0..=10).map(|n| enum_overpartitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]);
    }

    #[test]
    fn generators_match_filters() {
        for n in 0..=16 {
            let all = enum_overpartitions(n);
            for set in SetId::ALL {
                let fast: BTreeSet<_> = enum_set(set, n).into_iter().collect();
                let slow: BTreeSet<_> = all.iter().filter(|l| set.contains(l)).cloned().collect();
                assert_eq!(fast, slow, "{set} at {n}");
            }
        }
    }

    #[test]
    fn enum_set_examples() {
        assert_eq!(enum_set(SetId::A, 0), vec![Overpartition::empty()]);
        assert!(enum_set(SetId::Avee, 6).contains(&op("5~ 1")));
        let a5: BTreeSet<_> = enum_set(SetId::A, 5).into_iter().collect();
        assert_eq!(a5, [op("5"), op("5~")].into_iter().collect());
    }

    #[test]
    fn weighted_gf_small_orders() {
        let w = WeightMap::quinvariate();
        let v = w.vars().clone();
        let expect =
            |terms: &[&str], n| Series::make(&v, n, terms.iter().map(|t| (v.parse_monomial(t).unwrap(), 1))).unwrap();
        assert_eq!(
            weighted_gf(SetId::A, 2, &w),
            expect(&["1", "x*q", "x*z*q", "x*y1*q^2"], 2)
        );
        assert_eq!(weighted_gf(SetId::ANo1And1Bar, 2, &w), expect(&["1", "x*y1*q^2"], 2));
        assert_eq!(weighted_gf(SetId::A, 0, &w), Series::one(&v, 0));
    }

    #[test]
    fn refinement_counts() {
        assert!(count_a(6, 2, 1) >= 1);
        assert_eq!(count_a(0, 0, 0), 1);
        assert_eq!(count_a(1, 1, 0), 1);
        assert_eq!(count_b(3, 1, 1), 1);
        assert_eq!(count_b(3, 1, 0), 1);
        assert_eq!(count_b(3, 2, 0), 0);
        assert_eq!(count_b(4, 2, 0), 1);
        assert_eq!(count_b(4, 0, 1), 0);
        assert_eq!(count_b(0, 0, 0), 1);
    }

    #[test]
    fn weighted_counts() {
        assert_eq!(count_b1(3, 2), 1);
        assert_eq!(count_b1(3, 1), 1);
        assert_eq!(count_b2(3, 1), 1);
        assert_eq!(count_b2(3, 3), 1);
        assert_eq!(count_b2(3, 2), 0);
        assert_eq!(count_a1(0, 0), 1);
        assert_eq!(count_b1(0, 0), 1);
        assert_eq!(count_b2(4, 4), 0);
    }

    #[test]
    fn tables_agree_with_single_counts() {
        let ta = table_a(10);
        for ((n, m, l), c) in &ta {
            assert_eq!(count_a(*n, *m, *l), *c);
        }
        let tb2 = table_b2(10);
        for ((n, m), c) in &tb2 {
            assert_eq!(count_b2(*n, *m), *c);
        }
    }

    #[test]
    fn stats_add_over_disjoint_merge() {
        let a = op("9 1~");
        let b = op("14 6");
        let merged = a.merge(&b).unwrap();
        assert_eq!(merged.stats(), a.stats() + b.stats());
    }
}
