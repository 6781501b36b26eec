//! Andrews–Gordon type multi-sums
//!
//! ```text
//! H(beta) = sum_{n in N^R} x_1^{<gamma_1, n>} ... x_J^{<gamma_J, n>}
//!           q^{sum_r alpha_rr binom(n_r, 2) + sum_{i<j} alpha_ij n_i n_j + <beta, n>}
//!           / prod_r (q^{A_r}; q^{A_r})_{n_r}
//! ```
//!
//! together with the two-term recurrence that splits `H(beta)` along one
//! coordinate and the binary-tree expansions built from it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::series::{Monomial, Series, SeriesError, Term, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiSumError {
    #[error("quadratic form must be a symmetric {0}x{0} matrix")]
    BadAlpha(usize),
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("Pochhammer bases must be positive")]
    ZeroBase,
    #[error("coordinate {0} out of range")]
    IndexOutOfRange(usize),
    #[error("beta entry {index} is negative ({value})")]
    NegativeBeta { index: usize, value: i64 },
    #[error("index n_{0} can grow without raising the q-degree")]
    NonTerminating(usize),
    #[error("expansion plan is malformed: {0}")]
    MalformedPlan(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

type Result<T> = std::result::Result<T, MultiSumError>;

/// Data `(alpha, A, gamma_1..gamma_J)` of one multi-sum family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSumSpec {
    alpha: Vec<Vec<u32>>,
    bases: Vec<u32>,
    gammas: Vec<Vec<u32>>,
    var_names: Vec<String>,
}

impl MultiSumSpec {
    /// `gammas[j]` is the exponent vector of the variable named `var_names[j]`.
    pub fn new<S: AsRef<str>>(
        alpha: Vec<Vec<u32>>,
        bases: Vec<u32>,
        gammas: Vec<Vec<u32>>,
        var_names: &[S],
    ) -> Result<MultiSumSpec> {
        let r = bases.len();
        if alpha.len() != r || alpha.iter().any(|row| row.len() != r) {
            return Err(MultiSumError::BadAlpha(r));
        }
        if (0..r).any(|i| (0..i).any(|j| alpha[i][j] != alpha[j][i])) {
            return Err(MultiSumError::BadAlpha(r));
        }
        if bases.contains(&0) {
            return Err(MultiSumError::ZeroBase);
        }
        if gammas.len() != var_names.len() {
            return Err(MultiSumError::Length {
                expected: var_names.len(),
                got: gammas.len(),
            });
        }
        if let Some(g) = gammas.iter().find(|g| g.len() != r) {
            return Err(MultiSumError::Length {
                expected: r,
                got: g.len(),
            });
        }
        Ok(MultiSumSpec {
            alpha,
            bases,
            gammas,
            var_names: var_names.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    /// The quadruple sum whose values at the seven beta vectors give the
    /// refined generating functions of the overpartition family, in the
    /// variables `x, y1, y2, z`.
    pub fn overpartition() -> MultiSumSpec {
        MultiSumSpec::new(
            vec![vec![4, 4, 4, 4], vec![4, 6, 4, 4], vec![4, 4, 4, 4], vec![4, 4, 4, 8]],
            vec![2, 2, 4, 4],
            vec![vec![1, 1, 1, 1], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 1, 0, 0]],
            &["x", "y1", "y2", "z"],
        )
        .expect("static data is well formed")
    }

    pub fn rank(&self) -> usize {
        self.bases.len()
    }

    pub fn alpha(&self) -> &[Vec<u32>] {
        &self.alpha
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn gammas(&self) -> &[Vec<u32>] {
        &self.gammas
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaVec(pub Vec<i64>);

impl BetaVec {
    pub fn new(v: &[i64]) -> BetaVec {
        BetaVec(v.to_vec())
    }
}

impl std::fmt::Display for BetaVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "H({})", parts.join(","))
    }
}

/// `weight * H(beta)`, one node of an expansion tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumNode {
    pub weight: Monomial,
    pub beta: BetaVec,
}

/// Which coordinate to split at each internal node of an expansion tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Plan {
    Leaf,
    Split {
        coord: usize,
        first: Box<Plan>,
        second: Box<Plan>,
    },
}

impl Plan {
    /// Splits successively along `coords`, always descending into the first
    /// child (the one with `beta_r + A_r`); every second child is a leaf.
    pub fn chain(coords: &[usize]) -> Plan {
        coords.iter().rev().fold(Plan::Leaf, |acc, &coord| Plan::Split {
            coord,
            first: Box::new(acc),
            second: Box::new(Plan::Leaf),
        })
    }

    pub fn depth(&self) -> usize {
        match self {
            Plan::Leaf => 0,
            Plan::Split { first, second, .. } => 1 + first.depth().max(second.depth()),
        }
    }
}

/// A [`MultiSumSpec`] whose variables have been resolved in a [`VarSet`].
#[derive(Clone, Debug)]
pub struct MultiSum {
    spec: MultiSumSpec,
    vars: Arc<VarSet>,
    var_idx: Vec<usize>,
}

fn dense_div_one_minus_qpow(a: &mut [BigInt], k: usize) {
    for e in k..a.len() {
        let (lo, hi) = a.split_at_mut(e);
        hi[0] += &lo[e - k];
    }
}

fn dense_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

struct EvalState<'a> {
    ms: &'a MultiSum,
    beta: &'a [i64],
    order: usize,
    /// `inv[r][n]` = dense expansion of `1 / (q^{A_r}; q^{A_r})_n`.
    inv: Vec<Vec<Vec<BigInt>>>,
    n: Vec<u32>,
    acc: FxHashMap<Vec<u32>, Vec<BigInt>>,
}

impl EvalState<'_> {
    fn inv_poch(&mut self, r: usize, n: usize) -> &[BigInt] {
        while self.inv[r].len() <= n {
            let k = self.inv[r].len();
            let mut next = self.inv[r][k - 1].clone();
            dense_div_one_minus_qpow(&mut next, self.ms.spec.bases[r] as usize * k);
            self.inv[r].push(next);
        }
        &self.inv[r][n]
    }

    fn walk(&mut self, r: usize, exp: usize, poly: Vec<BigInt>) {
        let spec = &self.ms.spec;
        if r == spec.rank() {
            let xexp: Vec<u32> = spec
                .gammas
                .iter()
                .map(|g| g.iter().zip(&self.n).map(|(a, b)| a * b).sum())
                .collect();
            let slot = self
                .acc
                .entry(xexp)
                .or_insert_with(|| vec![BigInt::zero(); self.order + 1]);
            for (d, c) in poly.iter().enumerate() {
                if exp + d > self.order {
                    break;
                }
                slot[exp + d] += c;
            }
            return;
        }
        let mut e = exp;
        let mut k: u32 = 0;
        loop {
            if e > self.order {
                break;
            }
            self.n[r] = k;
            let len = self.order + 1 - e;
            let factor = self.inv_poch(r, k as usize).to_vec();
            let next = dense_mul(&poly, &factor, len);
            self.walk(r + 1, e, next);
            // Raising n_r from k to k + 1 adds alpha_rr k + sum_{i<r} alpha_ri n_i + beta_r.
            let cross: u64 = (0..r).map(|i| u64::from(spec.alpha[r][i]) * u64::from(self.n[i])).sum();
            let delta = u64::from(spec.alpha[r][r]) * u64::from(k) + cross + self.beta[r] as u64;
            e += delta as usize;
            k += 1;
        }
        self.n[r] = 0;
    }
}

impl MultiSum {
    pub fn bind(spec: MultiSumSpec, vars: &Arc<VarSet>) -> Result<MultiSum> {
        let var_idx = spec
            .var_names
            .iter()
            .map(|n| vars.index_of(n))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(MultiSum {
            spec,
            vars: Arc::clone(vars),
            var_idx,
        })
    }

    pub fn spec(&self) -> &MultiSumSpec {
        &self.spec
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    fn check_beta(&self, beta: &BetaVec) -> Result<()> {
        if beta.0.len() != self.spec.rank() {
            return Err(MultiSumError::Length {
                expected: self.spec.rank(),
                got: beta.0.len(),
            });
        }
        Ok(())
    }

    /// Truncated value of `H(beta)`. Partial index assignments whose q-degree
    /// already exceeds `order` are pruned; this is exact because every
    /// entry of alpha and beta is nonnegative.
    pub fn eval(&self, beta: &BetaVec, order: u32) -> Result<Series> {
        self.check_beta(beta)?;
        for (index, &value) in beta.0.iter().enumerate() {
            if value < 0 {
                return Err(MultiSumError::NegativeBeta { index, value });
            }
        }
        for r in 0..self.spec.rank() {
            if self.spec.alpha[r][r] == 0 && beta.0[r] == 0 {
                return Err(MultiSumError::NonTerminating(r));
            }
        }
        let order_us = order as usize;
        let mut unit = vec![BigInt::zero(); order_us + 1];
        unit[0] = BigInt::from(1);
        let mut state = EvalState {
            ms: self,
            beta: &beta.0,
            order: order_us,
            inv: vec![vec![unit.clone()]; self.spec.rank()],
            n: vec![0; self.spec.rank()],
            acc: FxHashMap::default(),
        };
        state.walk(0, 0, unit);

        let q = self.vars.trunc_index();
        let mut terms = Vec::new();
        for (xexp, coeffs) in state.acc {
            let mut base = self.vars.one();
            for (j, e) in xexp.iter().enumerate() {
                let i = self.var_idx[j];
                base = base.with(i, base.get(i) + e);
            }
            for (d, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    terms.push((base.with(q, base.get(q) + d as u32), c));
                }
            }
        }
        Ok(Series::make(&self.vars, order, terms)?)
    }

    /// `weight * H(beta)` for a node.
    pub fn eval_node(&self, node: &SumNode, order: u32) -> Result<Series> {
        Ok(self.eval(&node.beta, order)?.mul_monomial(&node.weight)?)
    }

    /// Monomial `x_1^{gamma_1,r} ... x_J^{gamma_J,r}` attached to coordinate `r`.
    pub fn coordinate_monomial(&self, r: usize) -> Monomial {
        let mut m = self.vars.one();
        for (j, g) in self.spec.gammas.iter().enumerate() {
            let i = self.var_idx[j];
            m = m.with(i, m.get(i) + g[r]);
        }
        m
    }

    /// Splits `weight * H(beta)` along coordinate `r` (0-based):
    /// `H(beta) = H(beta + A_r e_r) + x^{gamma_.,r} q^{beta_r} H(beta + alpha_r)`.
    pub fn rec_step(&self, node: &SumNode, r: usize) -> Result<(SumNode, SumNode)> {
        self.check_beta(&node.beta)?;
        if r >= self.spec.rank() {
            return Err(MultiSumError::IndexOutOfRange(r));
        }
        let br = node.beta.0[r];
        if br < 0 {
            return Err(MultiSumError::NegativeBeta { index: r, value: br });
        }
        let mut first = node.beta.clone();
        first.0[r] += i64::from(self.spec.bases[r]);
        let second: Vec<i64> = node
            .beta
            .0
            .iter()
            .zip(&self.spec.alpha[r])
            .map(|(b, a)| b + i64::from(*a))
            .collect();
        let q = self.vars.trunc_index();
        let edge = self.coordinate_monomial(r).with(q, br as u32);
        Ok((
            SumNode {
                weight: node.weight,
                beta: first,
            },
            SumNode {
                weight: node.weight.mul(&edge),
                beta: BetaVec(second),
            },
        ))
    }

    /// Leaves of the expansion tree of `root` under `plan`, first child
    /// before second child.
    pub fn expand_tree(&self, root: &BetaVec, plan: &Plan) -> Result<Vec<SumNode>> {
        self.check_beta(root)?;
        let mut leaves = Vec::new();
        let node = SumNode {
            weight: self.vars.one(),
            beta: root.clone(),
        };
        self.expand_into(node, plan, &mut leaves)?;
        Ok(leaves)
    }

    fn expand_into(&self, node: SumNode, plan: &Plan, out: &mut Vec<SumNode>) -> Result<()> {
        match plan {
            Plan::Leaf => out.push(node),
            Plan::Split { coord, first, second } => {
                if *coord >= self.spec.rank() {
                    return Err(MultiSumError::MalformedPlan(format!(
                        "coordinate {coord} but the sum has {} indices",
                        self.spec.rank()
                    )));
                }
                let (a, b) = self.rec_step(&node, *coord)?;
                self.expand_into(a, first, out)?;
                self.expand_into(b, second, out)?;
            }
        }
        Ok(())
    }

    /// Shift of beta realising the substitution `x_j -> x_j q^s`.
    pub fn shift_beta(&self, beta: &BetaVec, j: usize, s: u32) -> BetaVec {
        BetaVec(
            beta.0
                .iter()
                .zip(&self.spec.gammas[j])
                .map(|(b, g)| b + i64::from(s) * i64::from(*g))
                .collect(),
        )
    }

    /// Shift for the first variable `x_1`.
    pub fn shift_beta_for_x(&self, beta: &BetaVec, s: u32) -> BetaVec {
        self.shift_beta(beta, 0, s)
    }

    pub fn render_node(&self, node: &SumNode) -> String {
        if node.weight.is_one() {
            node.beta.to_string()
        } else {
            format!("{}*{}", self.vars.render(&node.weight), node.beta)
        }
    }
}

/// A linear system `H(lhs_k) = sum_j matrix[k][j] * weights[j] * H(rhs_j)`
/// with one expansion plan per row.
#[derive(Clone, Debug)]
pub struct MatrixRelation {
    pub lhs: Vec<BetaVec>,
    pub matrix: Vec<Vec<u8>>,
    pub weights: Vec<Monomial>,
    pub rhs: Vec<BetaVec>,
    pub plans: Vec<Plan>,
}

/// Outcome of checking one row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowFailure {
    /// Expansion leaves differ from the claimed right-hand side.
    Symbolic {
        row: usize,
        leaves: Vec<SumNode>,
        claimed: Vec<SumNode>,
    },
    /// Series disagree at the given monomial.
    Numeric {
        row: usize,
        mismatch: crate::series::Mismatch,
    },
}

impl MatrixRelation {
    /// Seven-row relation for the overpartition family: left betas, the
    /// linking matrix and block weights, right betas shifted by `x -> x q^4`,
    /// and the expansion plans for every row.
    pub fn overpartition(ms: &MultiSum, matrix: Vec<Vec<u8>>, weights: Vec<Monomial>) -> Self {
        let lhs: Vec<BetaVec> = [
            [1, 1, 2, 4],
            [1, 3, 2, 4],
            [1, 3, 2, 4],
            [3, 3, 2, 4],
            [3, 5, 6, 4],
            [3, 5, 6, 4],
            [5, 5, 6, 8],
        ]
        .iter()
        .map(|b| BetaVec::new(b))
        .collect();
        let rhs = lhs.iter().map(|b| ms.shift_beta_for_x(b, 4)).collect();
        // 0-based coordinates; row 1 is the full tree, the others are its
        // subtrees rooted at the successive first children.
        let full = [1, 0, 2, 1, 0, 3];
        let plans = vec![
            Plan::chain(&full),
            Plan::chain(&full[1..]),
            Plan::chain(&full[1..]),
            Plan::chain(&full[2..]),
            Plan::chain(&full[4..]),
            Plan::chain(&full[4..]),
            Plan::Leaf,
        ];
        MatrixRelation {
            lhs,
            matrix,
            weights,
            rhs,
            plans,
        }
    }

    fn claimed_row(&self, k: usize) -> Vec<SumNode> {
        self.matrix[k]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, _)| SumNode {
                weight: self.weights[j],
                beta: self.rhs[j].clone(),
            })
            .collect()
    }

    /// Compares leaf multisets row by row.
    pub fn verify_symbolic(&self, ms: &MultiSum) -> Result<Option<RowFailure>> {
        for k in 0..self.lhs.len() {
            let mut leaves = ms.expand_tree(&self.lhs[k], &self.plans[k])?;
            let mut claimed = self.claimed_row(k);
            leaves.sort();
            claimed.sort();
            if leaves != claimed {
                return Ok(Some(RowFailure::Symbolic {
                    row: k,
                    leaves,
                    claimed,
                }));
            }
        }
        Ok(None)
    }

    /// Evaluates both sides of every row to `order`.
    pub fn verify_numeric(&self, ms: &MultiSum, order: u32) -> Result<Option<RowFailure>> {
        let rhs_vals: Vec<Series> = self
            .rhs
            .iter()
            .zip(&self.weights)
            .map(|(b, w)| Ok(ms.eval(b, order)?.mul_term(&Term::monomial(*w))?))
            .collect::<Result<_>>()?;
        for k in 0..self.lhs.len() {
            let left = ms.eval(&self.lhs[k], order)?;
            let mut right = Series::zero(ms.vars(), order);
            for (j, &a) in self.matrix[k].iter().enumerate() {
                if a != 0 {
                    right = &right + &rhs_vals[j].scale(&BigInt::from(a));
                }
            }
            if let Some(mismatch) = left.first_mismatch(&right, order)? {
                return Ok(Some(RowFailure::Numeric { row: k, mismatch }));
            }
        }
        Ok(None)
    }
}
