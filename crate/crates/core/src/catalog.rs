//! Named series: both sides of every identity, the multi-sum family and the
//! generating functions of the overpartition sets.

use std::sync::Arc;

use crate::lpi::LpiSpec;
use crate::multisum::{BetaVec, MultiSum, MultiSumSpec};
use crate::partitions::{trivariate_vars, weighted_gf, SetId, WeightMap};
use crate::products::poch_inf;
use crate::series::{Monomial, Series, Term, VarSet};
use crate::Error;

type Result<T> = std::result::Result<T, Error>;

pub fn univariate_vars() -> Arc<VarSet> {
    VarSet::new(&["q"]).expect("static variables")
}

pub fn bivariate_vars() -> Arc<VarSet> {
    VarSet::new(&["q", "x"]).expect("static variables")
}

pub(crate) fn term(vars: &Arc<VarSet>, coeff: i64, mono: &str) -> Term {
    Term::new(coeff, vars.parse_monomial(mono).expect("static monomial"))
}

pub(crate) fn mono(vars: &Arc<VarSet>, text: &str) -> Monomial {
    vars.parse_monomial(text).expect("static monomial")
}

/// `1 / prod_{a in residues} (q^a; q^modulus)_inf`.
pub fn residue_product(residues: &[u32], modulus: u32, order: u32) -> Result<Series> {
    let v = univariate_vars();
    let mut p = Series::one(&v, order);
    for &a in residues {
        let arg = Term::new(1, v.one().with(0, a));
        p = &p * &poch_inf(&arg, modulus, &v, order)?;
    }
    Ok(p.invert()?)
}

/// Product side of the Andrews–Gordon identity: parts not congruent to
/// `0, +-i` modulo `2k + 1`.
pub fn andrews_gordon_product(k: u32, i: u32, order: u32) -> Result<Series> {
    let m = 2 * k + 1;
    let residues: Vec<u32> = (1..m).filter(|&a| a != i && a != m - i).collect();
    residue_product(&residues, m, order)
}

/// The `(k - 1)`-fold sum with `N_j = n_j + ... + n_{k-1}` rewritten in the
/// `alpha`/`beta` form: `alpha_ab = 2 min(a, b)`, `beta_a = a + max(0, a - i + 1)`.
pub fn andrews_gordon_sum(k: u32, i: u32, order: u32, perturb: bool) -> Result<Series> {
    let r = (k - 1) as usize;
    let alpha = (1..=r)
        .map(|a| (1..=r).map(|b| 2 * a.min(b) as u32).collect())
        .collect();
    let spec = MultiSumSpec::new(alpha, vec![1; r], vec![], &[] as &[&str])?;
    let ms = MultiSum::bind(spec, &univariate_vars())?;
    let mut beta: Vec<i64> = (1..=r as i64).map(|a| a + (a - i as i64 + 1).max(0)).collect();
    if perturb {
        beta[0] += 1;
    }
    Ok(ms.eval(&BetaVec(beta), order)?)
}

/// `1 / (xq; q^2)_inf (yq^2; q^4)_inf`.
pub fn quad_new_lhs(order: u32) -> Result<Series> {
    let v = trivariate_vars();
    let p = &poch_inf(&term(&v, 1, "x*q"), 2, &v, order)? * &poch_inf(&term(&v, 1, "y*q^2"), 4, &v, order)?;
    Ok(p.invert()?)
}

fn quad_new_spec() -> MultiSumSpec {
    MultiSumSpec::new(
        vec![vec![2, 2, 4, 0], vec![2, 0, 0, 0], vec![4, 0, 0, 4], vec![0, 0, 4, 0]],
        vec![2, 2, 4, 4],
        vec![vec![1, 1, 0, 2], vec![0, 1, 1, 0]],
        &["x", "y"],
    )
    .expect("static data is well formed")
}

fn quad_spec() -> MultiSumSpec {
    MultiSumSpec::new(
        MultiSumSpec::overpartition().alpha().to_vec(),
        vec![2, 2, 4, 4],
        vec![vec![1, 1, 0, 2], vec![0, 1, 1, 0]],
        &["x", "y"],
    )
    .expect("static data is well formed")
}

/// `H(b) + x^2 y q^shift H(b')` for a two-term quadruple sum.
fn two_term_sum(spec: MultiSumSpec, first: [i64; 4], weight: &str, second: [i64; 4], order: u32) -> Result<Series> {
    let v = trivariate_vars();
    let ms = MultiSum::bind(spec, &v)?;
    let a = ms.eval(&BetaVec::new(&first), order)?;
    let b = ms
        .eval(&BetaVec::new(&second), order)?
        .mul_monomial(&mono(&v, weight))?;
    Ok(&a + &b)
}

pub fn quad_new_rhs(order: u32, perturb: bool) -> Result<Series> {
    let first = if perturb { [2, 3, 2, 2] } else { [1, 3, 2, 2] };
    two_term_sum(quad_new_spec(), first, "x^2*y*q^4", [5, 3, 6, 2], order)
}

/// `(-xq; q^2)_inf (-yq^2; q^4)_inf`.
pub fn quad_lhs(order: u32) -> Result<Series> {
    let v = trivariate_vars();
    Ok(&poch_inf(&term(&v, -1, "x*q"), 2, &v, order)? * &poch_inf(&term(&v, -1, "y*q^2"), 4, &v, order)?)
}

pub fn quad_rhs(order: u32, perturb: bool) -> Result<Series> {
    let first = if perturb { [2, 3, 2, 4] } else { [1, 3, 2, 4] };
    two_term_sum(quad_spec(), first, "x^2*y*q^6", [9, 11, 10, 12], order)
}

/// `(-x; q)_inf (xy; q)_inf / (x^2 y q^2; q^2)_inf`, with the `q`-free
/// leading factors split off as `(1 + x)(1 - xy)`.
pub fn tri_single_lhs(order: u32) -> Result<Series> {
    let v = trivariate_vars();
    let lead = Series::make(&v, order, [(mono(&v, "1"), 1), (mono(&v, "x"), 1)])?
        * Series::make(&v, order, [(mono(&v, "1"), 1), (mono(&v, "x*y"), -1)])?;
    let num = &poch_inf(&term(&v, -1, "x*q"), 1, &v, order)? * &poch_inf(&term(&v, 1, "x*y*q"), 1, &v, order)?;
    let den = poch_inf(&term(&v, 1, "x^2*y*q^2"), 2, &v, order)?.invert()?;
    Ok(&(&lead * &num) * &den)
}

/// `sum_n x^n q^C(n,2) (1 - x^2 y^2 q^4n) (xy;q)_n (y;q^2)_n / (q;q)_n (x^2 y q^2;q^2)_n`,
/// each summand obtained from the previous one by a ratio of monomial factors.
pub fn tri_single_rhs(order: u32, perturb: bool) -> Result<Series> {
    let v = trivariate_vars();
    let one = Series::one(&v, order);
    let tail_shift = if perturb { 1 } else { 0 };
    let tail = |n: u32| -> Result<Series> {
        let t = Term::new(
            -1,
            v.parse_monomial("x^2*y^2").expect("static").with(0, 4 * n + tail_shift),
        );
        Ok(&one + &Series::term(&v, order, t)?)
    };
    let mut total = tail(0)?;
    let mut summand = one.clone();
    let mut n = 1u32;
    while n * (n - 1) / 2 <= order {
        let k = n - 1;
        summand = summand.mul_monomial(&v.parse_monomial("x").expect("static").with(0, k))?;
        let f1 = &one + &Series::term(&v, order, Term::new(-1, mono(&v, "x*y").with(0, k)))?;
        let f2 = &one + &Series::term(&v, order, Term::new(-1, mono(&v, "y").with(0, 2 * k)))?;
        summand = &(&summand * &f1) * &f2;
        summand = summand.div_one_minus(&Term::new(1, v.one().with(0, n)))?;
        summand = summand.div_one_minus(&Term::new(1, mono(&v, "x^2*y").with(0, 2 * n)))?;
        total = &total + &(&summand * &tail(n)?);
        n += 1;
    }
    Ok(total)
}

/// The overpartition quadruple sum `H(beta)` in `q, x, y1, y2, z`.
pub fn overpartition_sum(beta: &[i64], order: u32) -> Result<Series> {
    let ms = MultiSum::bind(MultiSumSpec::overpartition(), &crate::partitions::quinvariate_vars())?;
    Ok(ms.eval(&BetaVec::new(beta), order)?)
}

/// Names accepted by [`series_by_name`], with `K` the number of blocks of
/// the active ideal.
pub fn series_names(blocks: usize) -> Vec<String> {
    let mut out: Vec<String> = [
        "rr1-lhs",
        "rr1-rhs",
        "rr2-lhs",
        "rr2-rhs",
        "quad-lhs",
        "quad-rhs",
        "quad-new-lhs",
        "quad-new-rhs",
        "tri-single-lhs",
        "tri-single-rhs",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for k in 2..=4 {
        for i in 1..=k {
            out.push(format!("ag-{k}-{i}-lhs"));
            out.push(format!("ag-{k}-{i}-rhs"));
        }
    }
    out.extend((1..=blocks).map(|k| format!("f{k}")));
    out.extend((1..=blocks).map(|k| format!("g{k}")));
    out.push("h:b1,b2,b3,b4".into());
    out.extend(SetId::ALL.iter().map(|s| format!("gf:{s}")));
    out
}

/// Looks up a named series. `f<k>`/`g<k>` (1-based) use `lpi` when given and
/// the built-in ideal otherwise.
pub fn series_by_name(name: &str, order: u32, lpi: Option<&LpiSpec>) -> Result<Series> {
    let unknown = || Error::UnknownSeries(name.to_string());
    match name {
        "rr1-lhs" => return residue_product(&[1, 4], 5, order),
        "rr2-lhs" => return residue_product(&[2, 3], 5, order),
        "rr1-rhs" => return andrews_gordon_sum(2, 2, order, false),
        "rr2-rhs" => return andrews_gordon_sum(2, 1, order, false),
        "quad-lhs" => return quad_lhs(order),
        "quad-rhs" => return quad_rhs(order, false),
        "quad-new-lhs" => return quad_new_lhs(order),
        "quad-new-rhs" => return quad_new_rhs(order, false),
        "tri-single-lhs" => return tri_single_lhs(order),
        "tri-single-rhs" => return tri_single_rhs(order, false),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("ag-") {
        let parts: Vec<&str> = rest.split('-').collect();
        if let [k, i, side] = parts[..] {
            let (k, i) = (
                k.parse::<u32>().map_err(|_| unknown())?,
                i.parse::<u32>().map_err(|_| unknown())?,
            );
            if k < 2 || i < 1 || i > k {
                return Err(unknown());
            }
            return match side {
                "lhs" => andrews_gordon_product(k, i, order),
                "rhs" => andrews_gordon_sum(k, i, order, false),
                _ => Err(unknown()),
            };
        }
        return Err(unknown());
    }
    if let Some(rest) = name.strip_prefix("h:") {
        let beta = rest
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| unknown())?;
        if beta.len() != 4 {
            return Err(unknown());
        }
        return overpartition_sum(&beta, order);
    }
    if let Some(set) = name.strip_prefix("gf:") {
        let set: SetId = set.parse().map_err(|_| unknown())?;
        return Ok(weighted_gf(set, order, &WeightMap::quinvariate()));
    }
    let indexed = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.parse::<usize>().ok() };
    let builtin;
    let spec = match lpi {
        Some(s) => s,
        None => {
            builtin = LpiSpec::paper_spec();
            &builtin
        }
    };
    if let Some(k) = indexed("f") {
        if (1..=spec.len()).contains(&k) {
            return Ok(spec.f_series(order).swap_remove(k - 1));
        }
    }
    if let Some(k) = indexed("g") {
        if (1..=spec.len()).contains(&k) {
            return Ok(spec.g_series(order).swap_remove(k - 1));
        }
    }
    Err(unknown())
}
