//! q-Pochhammer products and the classical Euler / q-binomial summations.
//!
//! Products are written `(A; q^m)_n = prod_{k<n} (1 - A q^{mk})`. A negated
//! argument such as `-xq` is carried as the sign of [`Term::coeff`].

use std::sync::Arc;

use crate::series::{Result, Series, SeriesError, Term, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(u32),
    Infinite,
}

/// `(argument; q^step)_length`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochSpec {
    pub argument: Term,
    pub step: u32,
    pub length: Length,
}

impl PochSpec {
    pub fn new(argument: Term, step: u32, length: Length) -> PochSpec {
        PochSpec { argument, step, length }
    }

    pub fn expand(&self, vars: &Arc<VarSet>, order: u32) -> Result<Series> {
        match self.length {
            Length::Finite(n) => poch_finite(&self.argument, self.step, n, vars, order),
            Length::Infinite => poch_inf(&self.argument, self.step, vars, order),
        }
    }
}

fn q_power(vars: &Arc<VarSet>, e: u32) -> crate::series::Monomial {
    vars.one().with(vars.trunc_index(), e)
}

fn qdeg(vars: &Arc<VarSet>, t: &Term) -> u32 {
    t.mono.get(vars.trunc_index())
}

fn check_term(vars: &Arc<VarSet>, t: &Term) -> Result<()> {
    if t.mono.arity() != vars.arity() {
        return Err(SeriesError::ArityMismatch {
            expected: vars.arity(),
            got: t.mono.arity(),
        });
    }
    Ok(())
}

/// Multiplies `s` by `(1 - t)`.
fn times_one_minus(s: &Series, t: &Term) -> Result<Series> {
    s.checked_sub(&s.mul_term(t)?)
}

/// `A * q^e` as a term.
fn shifted(vars: &Arc<VarSet>, a: &Term, e: u32) -> Term {
    Term::new(a.coeff, a.mono.mul(&q_power(vars, e)))
}

pub fn poch_finite(arg: &Term, step: u32, n: u32, vars: &Arc<VarSet>, order: u32) -> Result<Series> {
    check_term(vars, arg)?;
    if step == 0 {
        return Err(SeriesError::InvalidStep);
    }
    let mut out = Series::one(vars, order);
    for k in 0..n {
        out = times_one_minus(&out, &shifted(vars, arg, step * k))?;
    }
    Ok(out)
}

/// Exact truncation of `(arg; q^step)_inf`; factors whose q-degree exceeds
/// the order are identically 1 and are skipped.
pub fn poch_inf(arg: &Term, step: u32, vars: &Arc<VarSet>, order: u32) -> Result<Series> {
    check_term(vars, arg)?;
    if step == 0 {
        return Err(SeriesError::InvalidStep);
    }
    let d = qdeg(vars, arg);
    if arg.coeff != 0 && d == 0 {
        return Err(SeriesError::DivergentArgument(vars.render(&arg.mono)));
    }
    let mut out = Series::one(vars, order);
    if arg.coeff == 0 {
        return Ok(out);
    }
    let mut k = 0;
    while d + step * k <= order {
        out = times_one_minus(&out, &shifted(vars, arg, step * k))?;
        k += 1;
    }
    Ok(out)
}

fn require_convergent(vars: &Arc<VarSet>, z: &Term) -> Result<u32> {
    check_term(vars, z)?;
    let d = qdeg(vars, z);
    if d == 0 {
        return Err(SeriesError::DivergentArgument(vars.render(&z.mono)));
    }
    Ok(d)
}

/// `sum_n z^n / (q^m; q^m)_n`
pub fn euler1(z: &Term, step: u32, vars: &Arc<VarSet>, order: u32) -> Result<Series> {
    qbinom(&Term::new(0, vars.one()), z, step, vars, order)
}

/// `sum_n z^n q^{m binom(n,2)} / (q^m; q^m)_n`
pub fn euler2(z: &Term, step: u32, vars: &Arc<VarSet>, order: u32) -> Result<Series> {
    check_term(vars, z)?;
    if step == 0 {
        return Err(SeriesError::InvalidStep);
    }
    if z.coeff == 0 {
        return Ok(Series::one(vars, order));
    }
    let d = require_convergent(vars, z)?;
    let mut sum = Series::one(vars, order);
    let mut t = Series::one(vars, order);
    let mut n: u32 = 1;
    while n * d + step * n * (n - 1) / 2 <= order {
        t = t
            .mul_term(&shifted(vars, z, step * (n - 1)))?
            .div_one_minus(&Term::monomial(q_power(vars, step * n)))?;
        sum = &sum + &t;
        n += 1;
    }
    Ok(sum)
}

/// `sum_n (a; q^m)_n z^n / (q^m; q^m)_n`
pub fn qbinom(a: &Term, z: &Term, step: u32, vars: &Arc<VarSet>, order: u32) -> Result<Series> {
    check_term(vars, a)?;
    check_term(vars, z)?;
    if step == 0 {
        return Err(SeriesError::InvalidStep);
    }
    if z.coeff == 0 {
        return Ok(Series::one(vars, order));
    }
    let d = require_convergent(vars, z)?;
    let mut sum = Series::one(vars, order);
    let mut t = Series::one(vars, order);
    let mut n: u32 = 1;
    while n * d <= order {
        t = times_one_minus(&t, &shifted(vars, a, step * (n - 1)))?
            .mul_term(z)?
            .div_one_minus(&Term::monomial(q_power(vars, step * n)))?;
        sum = &sum + &t;
        n += 1;
    }
    Ok(sum)
}
