//! Truncated multivariate formal power series with exact integer coefficients.
//!
//! Every series lives over a [`VarSet`] with one distinguished truncation
//! variable `q`. A series of order `N` stores only monomials whose
//! `q`-exponent is at most `N`; everything above is treated as zero. Other
//! variables are not truncated, so callers must make sure each term of an
//! infinite expansion carries positive `q`-degree (see [`Series::invert`]).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use thiserror::Error;

/// Largest number of variables a [`VarSet`] may hold.
pub const MAX_VARS: usize = 6;

/// Name of the truncation variable.
pub const TRUNC_VAR: &str = "q";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("monomial has {got} exponents but the variable set has {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands live over different variable sets")]
    VarSetMismatch,
    #[error("too many variables ({0}); at most {MAX_VARS} are supported")]
    TooManyVariables(usize),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable set has no truncation variable `q`")]
    MissingTruncationVariable,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("cannot parse monomial `{0}`")]
    BadMonomial(String),
    #[error("query at q-degree {requested} is beyond the truncation order {order}")]
    BeyondOrder { requested: u32, order: u32 },
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(BigInt),
    #[error("non-constant monomial `{0}` has q-degree 0; inversion is not supported")]
    ZeroDegreeInversion(String),
    #[error("substituting `{var}` must not lower q-degrees")]
    DegreeLoweringSubstitution { var: String },
    #[error("argument `{0}` has q-degree 0; the infinite expansion does not terminate")]
    DivergentArgument(String),
    #[error("step must be at least 1")]
    InvalidStep,
    #[error("series must be over the variables {expected}")]
    UnsupportedVars { expected: String },
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Ordered list of variable names with `q` as the truncation variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    trunc: usize,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<VarSet>> {
        if names.len() > MAX_VARS {
            return Err(SeriesError::TooManyVariables(names.len()));
        }
        let mut owned: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if owned.iter().any(|o| o == n) {
                return Err(SeriesError::DuplicateVariable(n.to_string()));
            }
            owned.push(n.to_string());
        }
        let trunc = owned
            .iter()
            .position(|n| n == TRUNC_VAR)
            .ok_or(SeriesError::MissingTruncationVariable)?;
        Ok(Arc::new(VarSet { names: owned, trunc }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn trunc_index(&self) -> usize {
        self.trunc
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.arity())
    }

    /// Monomial consisting of a single variable raised to `exp`.
    pub fn var(&self, name: &str, exp: u32) -> Result<Monomial> {
        let i = self.index_of(name)?;
        Ok(self.one().with(i, exp))
    }

    /// Parses products such as `x*y2*q^4`, `x y2 q^4` or `1`.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let bad = || SeriesError::BadMonomial(text.to_string());
        let mut m = self.one();
        for factor in text.split(|c: char| c == '*' || c.is_whitespace()) {
            let factor = factor.trim();
            if factor.is_empty() || factor == "1" {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let i = self.index_of(name)?;
            m = m.with(i, m.get(i) + exp);
        }
        Ok(m)
    }

    pub fn render(&self, m: &Monomial) -> String {
        let factors: Vec<String> = self
            .names
            .iter()
            .zip(m.exponents())
            .filter(|(_, &e)| e > 0)
            .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

/// Exponent vector, one entry per variable of the owning [`VarSet`].
///
/// Ordering is lexicographic on the exponent vector, which is the canonical
/// order used for reporting.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    arity: u8,
}

impl Monomial {
    pub fn one(arity: usize) -> Monomial {
        assert!(arity <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            arity: arity as u8,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(SeriesError::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        Ok(m)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps[..self.arity as usize]
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exponents()[i]
    }

    pub fn with(mut self, i: usize, exp: u32) -> Monomial {
        assert!(i < self.arity());
        self.exps[i] = exp;
        self
    }

    pub fn is_one(&self) -> bool {
        self.exponents().iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents().iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = *self;
        for i in 0..self.arity() {
            out.exps[i] += other.exps[i];
        }
        out
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let mut out = *self;
        for x in out.exps.iter_mut() {
            *x *= e;
        }
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exponents()
            .cmp(other.exponents())
            .then(self.arity.cmp(&other.arity))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// A monomial with a small signed coefficient, e.g. the `-xq` in `(-xq;q^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i64,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: i64, mono: Monomial) -> Term {
        Term { coeff, mono }
    }

    pub fn monomial(mono: Monomial) -> Term {
        Term { coeff: 1, mono }
    }
}

impl std::ops::Neg for Term {
    type Output = Term;

    fn neg(self) -> Term {
        Term {
            coeff: -self.coeff,
            mono: self.mono,
        }
    }
}

/// Lexicographically first monomial on which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub monomial: Monomial,
    pub left: BigInt,
    pub right: BigInt,
}

/// Truncated formal power series over a [`VarSet`].
#[derive(Clone, Debug)]
pub struct Series {
    vars: Arc<VarSet>,
    order: u32,
    terms: FxHashMap<Monomial, BigInt>,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for Series {}

fn accumulate(map: &mut FxHashMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl Series {
    /// Builds a series from raw terms. Terms above `order` are dropped,
    /// duplicates are merged and zero coefficients removed.
    pub fn make<I, C>(vars: &Arc<VarSet>, order: u32, terms: I) -> Result<Series>
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut s = Series::zero(vars, order);
        for (m, c) in terms {
            if m.arity() != vars.arity() {
                return Err(SeriesError::ArityMismatch {
                    expected: vars.arity(),
                    got: m.arity(),
                });
            }
            if s.qdeg(&m) <= order {
                accumulate(&mut s.terms, m, c.into());
            }
        }
        Ok(s)
    }

    pub fn zero(vars: &Arc<VarSet>, order: u32) -> Series {
        Series {
            vars: Arc::clone(vars),
            order,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(vars: &Arc<VarSet>, order: u32) -> Series {
        Series::constant(vars, order, 1)
    }

    pub fn constant(vars: &Arc<VarSet>, order: u32, c: impl Into<BigInt>) -> Series {
        let mut s = Series::zero(vars, order);
        accumulate(&mut s.terms, vars.one(), c.into());
        s
    }

    /// Single-term series `coeff * mono` (zero when above the order).
    pub fn term(vars: &Arc<VarSet>, order: u32, t: Term) -> Result<Series> {
        Series::make(vars, order, [(t.mono, t.coeff)])
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in lexicographic order of their exponent vectors.
    pub fn sorted_terms(&self) -> Vec<(Monomial, BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|t| t.0);
        v
    }

    fn qdeg(&self, m: &Monomial) -> u32 {
        m.get(self.vars.trunc)
    }

    /// q-degree of a monomial over this series' variables.
    pub fn q_degree(&self, m: &Monomial) -> u32 {
        self.qdeg(m)
    }

    fn check_same(&self, other: &Series) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(SeriesError::VarSetMismatch)
        }
    }

    fn check_arity(&self, m: &Monomial) -> Result<()> {
        if m.arity() == self.vars.arity() {
            Ok(())
        } else {
            Err(SeriesError::ArityMismatch {
                expected: self.vars.arity(),
                got: m.arity(),
            })
        }
    }

    /// Restricts to a smaller order. Asking for a larger order is an error
    /// since the missing coefficients are unknown.
    pub fn truncate(&self, order: u32) -> Result<Series> {
        if order > self.order {
            return Err(SeriesError::BeyondOrder {
                requested: order,
                order: self.order,
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.qdeg(m) <= order)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Ok(Series {
            vars: Arc::clone(&self.vars),
            order,
            terms,
        })
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncate(order)?;
        for (m, c) in &other.terms {
            if other.qdeg(m) <= order {
                accumulate(&mut out.terms, *m, c.clone());
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Series) -> Result<Series> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            vars: Arc::clone(&self.vars),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Series {
        if k.is_zero() {
            return Series::zero(&self.vars, self.order);
        }
        Series {
            vars: Arc::clone(&self.vars),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Multiplies by `coeff * mono`, dropping terms pushed past the order.
    pub fn mul_term(&self, t: &Term) -> Result<Series> {
        self.check_arity(&t.mono)?;
        if t.coeff == 0 {
            return Ok(Series::zero(&self.vars, self.order));
        }
        let k = BigInt::from(t.coeff);
        let shift = self.qdeg(&t.mono);
        let mut out = Series::zero(&self.vars, self.order);
        for (m, c) in &self.terms {
            if self.qdeg(m) + shift <= self.order {
                out.terms.insert(m.mul(&t.mono), c * &k);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Series> {
        self.mul_term(&Term::monomial(*m))
    }

    /// Cauchy product; products above the shared order are never formed.
    pub fn checked_mul(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        let order = self.order.min(other.order);
        let mut rhs: Vec<(u32, &Monomial, &BigInt)> = other
            .terms
            .iter()
            .map(|(m, c)| (other.qdeg(m), m, c))
            .filter(|(d, _, _)| *d <= order)
            .collect();
        rhs.sort_by_key(|(d, _, _)| *d);
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            let da = self.qdeg(ma);
            if da > order {
                continue;
            }
            let budget = order - da;
            for (db, mb, cb) in &rhs {
                if *db > budget {
                    break;
                }
                let prod = ca * *cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Series {
            vars: Arc::clone(&self.vars),
            order,
            terms: acc,
        })
    }

    /// Splits the series into homogeneous layers by q-degree.
    fn layers(&self) -> Vec<Vec<(Monomial, BigInt)>> {
        let mut layers = vec![Vec::new(); self.order as usize + 1];
        for (m, c) in &self.terms {
            layers[self.qdeg(m) as usize].push((*m, c.clone()));
        }
        layers
    }

    /// Multiplicative inverse, computed layer by layer in q-degree.
    ///
    /// The constant term must be `±1` and every other monomial must carry
    /// positive q-degree.
    pub fn invert(&self) -> Result<Series> {
        let one = self.vars.one();
        let c0 = self.terms.get(&one).cloned().unwrap_or_else(BigInt::zero);
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NonUnitConstant(c0));
        }
        if let Some((m, _)) = self.terms.iter().find(|(m, _)| !m.is_one() && self.qdeg(m) == 0) {
            return Err(SeriesError::ZeroDegreeInversion(self.vars.render(m)));
        }
        let a = self.layers();
        let mut b: Vec<FxHashMap<Monomial, BigInt>> = Vec::with_capacity(a.len());
        let mut b0 = FxHashMap::default();
        b0.insert(one, c0.clone());
        b.push(b0);
        for d in 1..a.len() {
            let mut layer: FxHashMap<Monomial, BigInt> = FxHashMap::default();
            for k in 1..=d {
                for (ma, ca) in &a[k] {
                    for (mb, cb) in &b[d - k] {
                        accumulate(&mut layer, ma.mul(mb), ca * cb);
                    }
                }
            }
            // b_d = -c0 * sum, using 1/c0 = c0 for units.
            let neg_c0 = -&c0;
            for c in layer.values_mut() {
                *c *= &neg_c0;
            }
            b.push(layer);
        }
        Ok(Series {
            vars: Arc::clone(&self.vars),
            order: self.order,
            terms: b.into_iter().flatten().collect(),
        })
    }

    /// Multiplies by `1 / (1 - t)`, i.e. by the geometric series in `t`.
    pub fn div_one_minus(&self, t: &Term) -> Result<Series> {
        self.check_arity(&t.mono)?;
        if t.coeff == 0 {
            return Ok(self.clone());
        }
        let step = self.qdeg(&t.mono);
        if step == 0 {
            return Err(SeriesError::DivergentArgument(self.vars.render(&t.mono)));
        }
        let k = BigInt::from(t.coeff);
        let mut out = self.clone();
        let mut power = self.clone();
        loop {
            power = power.mul_term(&Term::new(1, t.mono))?.scale(&k);
            if power.is_zero() {
                break;
            }
            for (m, c) in &power.terms {
                accumulate(&mut out.terms, *m, c.clone());
            }
        }
        Ok(out)
    }

    /// Replaces every occurrence `var^e` by `m^e`.
    pub fn substitute(&self, var: &str, m: &Monomial) -> Result<Series> {
        let i = self.vars.index_of(var)?;
        self.check_arity(m)?;
        if i == self.vars.trunc && self.qdeg(m) == 0 {
            return Err(SeriesError::DegreeLoweringSubstitution { var: var.to_string() });
        }
        let mut out = Series::zero(&self.vars, self.order);
        for (mono, c) in &self.terms {
            let e = mono.get(i);
            let image = mono.with(i, 0).mul(&m.pow(e));
            if self.qdeg(&image) <= self.order {
                accumulate(&mut out.terms, image, c.clone());
            }
        }
        Ok(out)
    }

    pub fn coeff(&self, m: &Monomial) -> Result<BigInt> {
        self.check_arity(m)?;
        let d = self.qdeg(m);
        if d > self.order {
            return Err(SeriesError::BeyondOrder {
                requested: d,
                order: self.order,
            });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(BigInt::zero))
    }

    /// Lexicographically smallest monomial of q-degree at most `n` on which
    /// the two series differ, or `None` if they agree to order `n`.
    pub fn first_mismatch(&self, other: &Series, n: u32) -> Result<Option<Mismatch>> {
        self.check_same(other)?;
        let lim = self.order.min(other.order);
        if n > lim {
            return Err(SeriesError::BeyondOrder {
                requested: n,
                order: lim,
            });
        }
        let zero = BigInt::zero();
        let mut best: Option<Monomial> = None;
        let candidates = self.terms.keys().chain(other.terms.keys());
        for m in candidates {
            if self.qdeg(m) > n {
                continue;
            }
            let l = self.terms.get(m).unwrap_or(&zero);
            let r = other.terms.get(m).unwrap_or(&zero);
            if l != r && best.is_none_or(|b| *m < b) {
                best = Some(*m);
            }
        }
        Ok(best.map(|m| Mismatch {
            monomial: m,
            left: self.terms.get(&m).cloned().unwrap_or_default(),
            right: other.terms.get(&m).cloned().unwrap_or_default(),
        }))
    }

    pub fn equal_to_order(&self, other: &Series, n: u32) -> Result<bool> {
        Ok(self.first_mismatch(other, n)?.is_none())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(q^{})", self.order + 1);
        }
        let mut terms = self.sorted_terms();
        terms.sort_by(|a, b| self.qdeg(&a.0).cmp(&self.qdeg(&b.0)).then(a.0.cmp(&b.0)));
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", self.vars.render(m))?;
            } else {
                write!(f, "{mag}*{}", self.vars.render(m))?;
            }
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Series> for &Series {
            type Output = Series;
            /// Panics if the operands live over different variable sets.
            fn $method(self, rhs: &Series) -> Series {
                self.$checked(rhs).expect("series operands must share a VarSet")
            }
        }
        impl std::ops::$tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self)
                    .$checked(&rhs)
                    .expect("series operands must share a VarSet")
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}
