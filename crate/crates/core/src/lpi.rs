//! Span-one linked partition ideals: a block alphabet, a linking map and a
//! modulus, together with block decomposition and the G/F generating
//! function systems.
//!
//! Block indices are 0-based throughout: block 0 is always the empty
//! overpartition.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{quinvariate_vars, Overpartition, Part, PartStats, PartitionError};
use crate::series::{Monomial, Series, SeriesError, VarSet};

#[derive(Debug, Error)]
pub enum LpiError {
    #[error("the alphabet must start with the empty block")]
    FirstBlockNotEmpty,
    #[error("block {0} appears twice in the alphabet")]
    DuplicateBlock(usize),
    #[error("linking map has {got} entries for {blocks} blocks")]
    LinkingLength { blocks: usize, got: usize },
    #[error("linking set of block {block} refers to unknown block {target}")]
    UnknownBlock { block: usize, target: usize },
    #[error("the empty block must link to every block")]
    EmptyBlockLinking,
    #[error("block {0} does not link back to the empty block")]
    MissingEmptyLink(usize),
    #[error("modulus {modulus} is smaller than the largest part {largest}")]
    ModulusTooSmall { modulus: u32, largest: u32 },
    #[error("{0} is not a member of the target set")]
    NotMember(String),
    #[error("window {window} holds `{block}`, which is not in the alphabet")]
    BlockNotInAlphabet { window: usize, block: String },
    #[error("block {next} may not follow block {prev} (position {position})")]
    LinkingViolation { position: usize, prev: usize, next: usize },
    #[error("a chain may not end with the empty block")]
    TrailingEmptyBlock,
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid ideal document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, LpiError>;

/// On-disk form of an [`LpiSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpiDoc {
    pub blocks: Vec<Vec<Part>>,
    pub linking: Vec<Vec<usize>>,
    pub modulus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpiSpec {
    blocks: Vec<Overpartition>,
    linking: Vec<Vec<usize>>,
    modulus: u32,
}

/// Block indices `k0 k1 ... kN` with `kN` non-empty; the empty chain is the
/// empty overpartition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockChain(pub Vec<usize>);

impl LpiSpec {
    pub fn new(blocks: Vec<Overpartition>, mut linking: Vec<Vec<usize>>, modulus: u32) -> Result<LpiSpec> {
        if blocks.first().is_none_or(|b| !b.is_empty()) {
            return Err(LpiError::FirstBlockNotEmpty);
        }
        for (i, b) in blocks.iter().enumerate() {
            if blocks[..i].contains(b) {
                return Err(LpiError::DuplicateBlock(i));
            }
        }
        if linking.len() != blocks.len() {
            return Err(LpiError::LinkingLength {
                blocks: blocks.len(),
                got: linking.len(),
            });
        }
        for (k, set) in linking.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if let Some(&t) = set.iter().find(|&&t| t >= blocks.len()) {
                return Err(LpiError::UnknownBlock { block: k, target: t });
            }
            if set.first() != Some(&0) {
                return Err(LpiError::MissingEmptyLink(k));
            }
        }
        if linking[0].len() != blocks.len() {
            return Err(LpiError::EmptyBlockLinking);
        }
        let largest = blocks.iter().filter_map(|b| b.largest()).max().unwrap_or(0);
        if modulus == 0 || modulus < largest {
            return Err(LpiError::ModulusTooSmall { modulus, largest });
        }
        Ok(LpiSpec {
            blocks,
            linking,
            modulus,
        })
    }

    /// The ideal whose members are exactly the overpartitions with odd-only
    /// overlines and gaps of at least 4 (strict above overlined parts and
    /// multiples of 4).
    pub fn paper_spec() -> LpiSpec {
        let b = |s: &str| s.parse::<Overpartition>().expect("static block");
        LpiSpec::new(
            vec![b(""), b("1"), b("1~"), b("2"), b("3"), b("3~"), b("4")],
            vec![
                vec![0, 1, 2, 3, 4, 5, 6],
                vec![0, 1, 3, 4, 5, 6],
                vec![0, 1, 3, 4, 5, 6],
                vec![0, 3, 4, 5, 6],
                vec![0, 4, 6],
                vec![0, 4, 6],
                vec![0],
            ],
            4,
        )
        .expect("static spec is valid")
    }

    pub fn from_doc(doc: LpiDoc) -> Result<LpiSpec> {
        let blocks = doc
            .blocks
            .into_iter()
            .map(Overpartition::new)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        LpiSpec::new(blocks, doc.linking, doc.modulus)
    }

    pub fn from_json(text: &str) -> Result<LpiSpec> {
        LpiSpec::from_doc(serde_json::from_str(text)?)
    }

    pub fn to_doc(&self) -> LpiDoc {
        LpiDoc {
            blocks: self.blocks.iter().map(|b| b.parts().to_vec()).collect(),
            linking: self.linking.clone(),
            modulus: self.modulus,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("plain data serializes")
    }

    pub fn blocks(&self) -> &[Overpartition] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn linking(&self, k: usize) -> &[usize] {
        &self.linking[k]
    }

    pub fn links(&self, from: usize, to: usize) -> bool {
        self.linking[from].binary_search(&to).is_ok()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Quinvariate weight of block `k` placed in window 0.
    pub fn weight(&self, k: usize) -> Monomial {
        crate::partitions::WeightMap::quinvariate().monomial(&self.blocks[k].stats())
    }

    /// The 0/1 linking matrix and the diagonal of block weights.
    pub fn matrices(&self) -> (Vec<Vec<u8>>, Vec<Monomial>) {
        let k = self.len();
        let a = (0..k)
            .map(|i| (0..k).map(|j| u8::from(self.links(i, j))).collect())
            .collect();
        let w = (0..k).map(|i| self.weight(i)).collect();
        (a, w)
    }

    pub fn check_chain(&self, chain: &BlockChain) -> Result<()> {
        for (i, &k) in chain.0.iter().enumerate() {
            if k >= self.len() {
                return Err(LpiError::UnknownBlock {
                    block: chain.0.get(i.wrapping_sub(1)).copied().unwrap_or(0),
                    target: k,
                });
            }
        }
        for (i, w) in chain.0.windows(2).enumerate() {
            if !self.links(w[0], w[1]) {
                return Err(LpiError::LinkingViolation {
                    position: i + 1,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        if chain.0.last() == Some(&0) {
            return Err(LpiError::TrailingEmptyBlock);
        }
        Ok(())
    }

    pub fn compose(&self, chain: &BlockChain) -> Result<Overpartition> {
        self.check_chain(chain)?;
        let parts = chain
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| {
                let shift = i as u32 * self.modulus;
                self.blocks[k].parts().iter().map(move |p| p.shifted(shift))
            })
            .collect();
        Ok(Overpartition::new(parts)?)
    }

    /// Splits `lambda` into windows `[iT + 1, (i + 1)T]` and names each
    /// shifted window by its block index.
    pub fn decompose(&self, lambda: &Overpartition) -> Result<BlockChain> {
        let t = self.modulus;
        let windows = lambda.largest().map_or(0, |m| ((m - 1) / t + 1) as usize);
        let mut grouped: Vec<Vec<Part>> = vec![Vec::new(); windows];
        for p in lambda.parts() {
            let i = ((p.value - 1) / t) as usize;
            grouped[i].push(Part {
                value: p.value - i as u32 * t,
                overlined: p.overlined,
            });
        }
        let mut chain = Vec::with_capacity(windows);
        for (window, parts) in grouped.into_iter().enumerate() {
            let block = Overpartition::new(parts)?;
            let k = self
                .blocks
                .iter()
                .position(|b| *b == block)
                .ok_or_else(|| LpiError::BlockNotInAlphabet {
                    window,
                    block: block.to_string(),
                })?;
            chain.push(k);
        }
        let chain = BlockChain(chain);
        self.check_chain(&chain)?;
        Ok(chain)
    }

    /// [`LpiSpec::decompose`] guarded by a membership predicate.
    pub fn decompose_member(
        &self,
        lambda: &Overpartition,
        member: impl Fn(&Overpartition) -> bool,
    ) -> Result<BlockChain> {
        if !member(lambda) {
            return Err(LpiError::NotMember(lambda.to_string()));
        }
        self.decompose(lambda)
    }

    /// Every chain whose composed overpartition has size at most `max_size`,
    /// the empty chain included.
    pub fn chains(&self, max_size: u32) -> Vec<BlockChain> {
        let sizes: Vec<(u32, u32)> = self.blocks.iter().map(|b| (b.size(), b.parts().len() as u32)).collect();
        let mut out = vec![BlockChain::default()];
        let mut cur = Vec::new();
        self.extend_chains(0, 0, max_size, &sizes, &mut cur, &mut out);
        out
    }

    fn extend_chains(
        &self,
        prev: usize,
        used: u32,
        max_size: u32,
        sizes: &[(u32, u32)],
        cur: &mut Vec<usize>,
        out: &mut Vec<BlockChain>,
    ) {
        let depth = cur.len() as u32;
        // The cheapest continuation places one part of size at least 1 in
        // some window at or beyond the current one.
        if used + depth * self.modulus + 1 > max_size {
            return;
        }
        for &k in &self.linking[prev] {
            let (size, len) = sizes[k];
            let cost = size + depth * self.modulus * len;
            if used + cost > max_size {
                continue;
            }
            cur.push(k);
            if k != 0 {
                out.push(BlockChain(cur.clone()));
            }
            self.extend_chains(k, used + cost, max_size, sizes, cur, out);
            cur.pop();
        }
    }

    /// Members of the ideal of size `n`.
    pub fn members(&self, n: u32) -> Vec<Overpartition> {
        let mut out: Vec<Overpartition> = self
            .chains(n)
            .iter()
            .map(|c| self.compose(c).expect("generated chains are valid"))
            .filter(|l| l.size() == n)
            .collect();
        out.sort();
        out
    }

    /// The series `G_0 .. G_{K-1}`: `G_k` sums the quinvariate weight over
    /// members whose window 0 holds block `k`. The empty overpartition is
    /// counted in `G_0`.
    pub fn g_series(&self, order: u32) -> Vec<Series> {
        let vars = quinvariate_vars();
        let mut memo = FxHashMap::default();
        (0..self.len())
            .map(|k| self.chain_gf(k, 0, order, &vars, &mut memo))
            .collect()
    }

    /// `F_k = sum_j A_kj G_j`.
    pub fn f_series(&self, order: u32) -> Vec<Series> {
        let g = self.g_series(order);
        let vars = quinvariate_vars();
        (0..self.len())
            .map(|k| {
                self.linking[k]
                    .iter()
                    .fold(Series::zero(&vars, order), |acc, &j| &acc + &g[j])
            })
            .collect()
    }

    /// Generating function of chains starting with block `k` in window `depth`.
    fn chain_gf(
        &self,
        k: usize,
        depth: u32,
        order: u32,
        vars: &Arc<VarSet>,
        memo: &mut FxHashMap<(usize, u32), Series>,
    ) -> Series {
        if let Some(s) = memo.get(&(k, depth)) {
            return s.clone();
        }
        let shift = depth * self.modulus;
        let stats = self.blocks[k].shifted(shift).stats();
        let result = if k != 0 && stats.size > order {
            Series::zero(vars, order)
        } else if (depth + 1) * self.modulus + 1 > order {
            // Nothing non-empty fits in later windows.
            Series::one(vars, order)
                .mul_monomial(&window_weight(&stats))
                .expect("same vars")
        } else {
            let tail = self.linking[k].iter().fold(Series::zero(vars, order), |acc, &j| {
                let next = self.chain_gf(j, depth + 1, order, vars, memo);
                &acc + &next
            });
            tail.mul_monomial(&window_weight(&stats)).expect("same vars")
        };
        memo.insert((k, depth), result.clone());
        result
    }
}

fn window_weight(stats: &PartStats) -> Monomial {
    crate::partitions::WeightMap::quinvariate().monomial(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enum_set, in_a, weighted_gf, SetId, WeightMap};
    use std::collections::BTreeSet;

    fn op(s: &str) -> Overpartition {
        s.parse().unwrap()
    }

    const EXAMPLE: &str = "1~ 8 14 19~ 23 27";

    #[test]
    fn builtin_ideal_shape() {
        let spec = LpiSpec::paper_spec();
        assert_eq!(spec.len(), 7);
        let v = quinvariate_vars();
        assert_eq!(spec.weight(6), v.parse_monomial("x*y2*q^4").unwrap());
        assert!(spec.weight(0).is_one());
        let (a, w) = spec.matrices();
        assert_eq!(a[6], vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(a[1], a[2]);
        let expected_w: Vec<Monomial> = ["1", "x*q", "x*z*q", "x*y1*q^2", "x*q^3", "x*z*q^3", "x*y2*q^4"]
            .iter()
            .map(|s| v.parse_monomial(s).unwrap())
            .collect();
        assert_eq!(w, expected_w);
    }

    #[test]
    fn compose_example() {
        let spec = LpiSpec::paper_spec();
        let chain = BlockChain(vec![2, 6, 0, 3, 5, 4, 4]);
        assert_eq!(spec.compose(&chain).unwrap(), op(EXAMPLE));
        assert_eq!(spec.compose(&BlockChain::default()).unwrap(), Overpartition::empty());
        assert_eq!(spec.compose(&BlockChain(vec![1])).unwrap(), op("1"));
    }

    #[test]
    fn decompose_example() {
        let spec = LpiSpec::paper_spec();
        assert_eq!(
            spec.decompose(&op(EXAMPLE)).unwrap(),
            BlockChain(vec![2, 6, 0, 3, 5, 4, 4])
        );
        assert_eq!(spec.decompose(&Overpartition::empty()).unwrap(), BlockChain::default());
    }

    #[test]
    fn decompose_errors_are_distinct() {
        let spec = LpiSpec::paper_spec();
        assert!(matches!(
            spec.decompose(&op("2 1")),
            Err(LpiError::BlockNotInAlphabet { window: 0, .. })
        ));
        assert!(matches!(
            spec.decompose(&op("5~ 1")),
            Err(LpiError::LinkingViolation {
                position: 1,
                prev: 1,
                next: 2
            })
        ));
        assert!(matches!(
            spec.decompose_member(&op("5~ 1"), in_a),
            Err(LpiError::NotMember(_))
        ));
        assert!(matches!(
            spec.compose(&BlockChain(vec![6, 6])),
            Err(LpiError::LinkingViolation { .. })
        ));
        assert!(matches!(
            spec.compose(&BlockChain(vec![1, 0])),
            Err(LpiError::TrailingEmptyBlock)
        ));
    }

    #[test]
    fn spec_validation() {
        let b = |s: &str| op(s);
        assert!(matches!(
            LpiSpec::new(vec![b("1")], vec![vec![0]], 4),
            Err(LpiError::FirstBlockNotEmpty)
        ));
        assert!(matches!(
            LpiSpec::new(vec![b(""), b("1")], vec![vec![0]], 4),
            Err(LpiError::LinkingLength { .. })
        ));
        assert!(matches!(
            LpiSpec::new(vec![b(""), b("1")], vec![vec![0], vec![0, 1]], 4),
            Err(LpiError::EmptyBlockLinking)
        ));
        assert!(matches!(
            LpiSpec::new(vec![b(""), b("1")], vec![vec![0, 1], vec![1]], 4),
            Err(LpiError::MissingEmptyLink(1))
        ));
        assert!(matches!(
            LpiSpec::new(vec![b(""), b("5")], vec![vec![0, 1], vec![0]], 4),
            Err(LpiError::ModulusTooSmall { .. })
        ));
        assert!(matches!(
            LpiSpec::new(vec![b(""), b("1"), b("1")], vec![vec![0, 1, 2], vec![0], vec![0]], 4),
            Err(LpiError::DuplicateBlock(2))
        ));
    }

    #[test]
    fn json_round_trip() {
        let spec = LpiSpec::paper_spec();
        let text = spec.to_json();
        assert_eq!(LpiSpec::from_json(&text).unwrap(), spec);
        assert!(LpiSpec::from_json("{\"blocks\": 3}").is_err());
    }

    #[test]
    fn members_match_gap_enumeration() {
        let spec = LpiSpec::paper_spec();
        for n in 0..=20 {
            let lhs: BTreeSet<_> = spec.members(n).into_iter().collect();
            let rhs: BTreeSet<_> = enum_set(SetId::A, n).into_iter().collect();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn g_series_sum_is_full_generating_function() {
        let spec = LpiSpec::paper_spec();
        let g = spec.g_series(16);
        let v = quinvariate_vars();
        let total = g.iter().fold(Series::zero(&v, 16), |acc, s| &acc + s);
        assert_eq!(total, weighted_gf(SetId::A, 16, &WeightMap::quinvariate()));
        // Only 4 itself and 4 + (parts >= 9) start in block (4).
        let lead: Vec<_> = g[6].sorted_terms().into_iter().filter(|(m, _)| m.get(0) <= 8).collect();
        assert_eq!(lead.len(), 1);
        assert_eq!(lead[0].0, v.parse_monomial("x*y2*q^4").unwrap());
    }

    #[test]
    fn f_series_match_restricted_sets() {
        let spec = LpiSpec::paper_spec();
        let f = spec.f_series(14);
        let w = WeightMap::quinvariate();
        assert_eq!(f[0], weighted_gf(SetId::A, 14, &w));
        assert_eq!(f[1], weighted_gf(SetId::ANo1Bar, 14, &w));
        assert_eq!(f[3], weighted_gf(SetId::ANo1And1Bar, 14, &w));
        assert_eq!(f[4], weighted_gf(SetId::ANo1And1Bar2And3Bar, 14, &w));
        assert_eq!(f[1], f[2]);
        assert_eq!(f[4], f[5]);
        assert_eq!(f[6], spec.g_series(14)[0]);
    }

    #[test]
    fn custom_spec_gap_two() {
        // Distinct parts with gaps of at least 2, as an ideal of modulus 2.
        let spec = LpiSpec::new(
            vec![op(""), op("1"), op("2")],
            vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 2]],
            2,
        )
        .unwrap();
        let counts: Vec<usize> = (0..=10).map(|n| spec.members(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]);
        let g = spec.g_series(10);
        let v = quinvariate_vars();
        let total = g.iter().fold(Series::zero(&v, 10), |acc, s| &acc + s);
        for (n, c) in counts.iter().enumerate() {
            let at_n = total
                .iter()
                .filter(|(m, _)| m.get(0) == n as u32)
                .map(|(_, c)| c.clone())
                .sum::<num_bigint::BigInt>();
            assert_eq!(at_n, num_bigint::BigInt::from(*c), "n = {n}");
        }
    }
}
