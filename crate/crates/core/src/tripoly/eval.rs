//! Bottom-up evaluation of `(T_F, T_flip(F))` over a formula tree.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigUint;
use rayon::prelude::*;

use super::{
    vee_combine, wedge_combine, Coefficient, Count, IntoCount, TriPolyError, TriPolynomial,
};
use crate::chain::{Formula, SumKind};
use crate::extnum::ExtNum;

/// Chains up to this many edges are evaluated exactly by default.
pub const EXACT_MODE_LIMIT: usize = 512;
/// Default cap on chain edges accepted by an [`Evaluator`].
pub const DEFAULT_EDGE_CAP: usize = 1 << 23;
/// Subtrees smaller than this are evaluated sequentially.
const PAR_SUBTREE: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    ExtFloat,
}

impl Mode {
    /// Exact up to [`EXACT_MODE_LIMIT`] edges, floating above.
    pub fn auto(edges: usize) -> Self {
        if edges <= EXACT_MODE_LIMIT {
            Mode::Exact
        } else {
            Mode::ExtFloat
        }
    }
}

/// `T_F` and `T_flip(F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyPair<C> {
    pub upper: TriPolynomial<C>,
    pub lower: TriPolynomial<C>,
}

/// Memo key identifying a formula up to flipping: `F` and `flip(F)` are
/// equal keys. The value is stored for the orientation of the key's formula.
#[derive(Clone)]
struct Key {
    f: Formula,
}

impl Key {
    fn norm_hash(&self) -> u64 {
        self.f.structural_hash().min(self.f.flip_hash())
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Key) -> bool {
        if self.f.ptr_eq(&other.f) {
            return true;
        }
        if self.f.edges() != other.f.edges() || self.norm_hash() != other.norm_hash() {
            return false;
        }
        self.f == other.f || self.f.is_flip_of(&other.f)
    }
}

impl Eq for Key {}

impl Hash for Key {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.norm_hash());
    }
}

/// A memo entry viewed from one orientation.
#[derive(Clone)]
struct View<C> {
    pair: Arc<PolyPair<C>>,
    swapped: bool,
}

impl<C> View<C> {
    fn upper(&self) -> &TriPolynomial<C> {
        if self.swapped {
            &self.pair.lower
        } else {
            &self.pair.upper
        }
    }

    fn lower(&self) -> &TriPolynomial<C> {
        if self.swapped {
            &self.pair.upper
        } else {
            &self.pair.lower
        }
    }
}

/// Memoizing evaluator. Structurally equal subformulas and flips of
/// already evaluated subformulas are looked up instead of recomputed.
pub struct Evaluator<C> {
    memo: DashMap<Key, Arc<PolyPair<C>>>,
    cap: usize,
}

impl<C: Coefficient> Default for Evaluator<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> Evaluator<C> {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_EDGE_CAP)
    }

    pub fn with_cap(cap: usize) -> Self {
        Evaluator {
            memo: DashMap::new(),
            cap,
        }
    }

    /// Number of distinct subformulas (modulo flip) evaluated so far.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn eval(&self, f: &Formula) -> Result<PolyPair<C>, TriPolyError> {
        if f.edges() > self.cap {
            return Err(TriPolyError::CapExceeded {
                edges: f.edges(),
                cap: self.cap,
            });
        }
        let v = self.view(f)?;
        Ok(PolyPair {
            upper: v.upper().clone(),
            lower: v.lower().clone(),
        })
    }

    fn view(&self, f: &Formula) -> Result<View<C>, TriPolyError> {
        if f.is_prim() {
            let unit = TriPolynomial::unit(1);
            return Ok(View {
                pair: Arc::new(PolyPair {
                    upper: unit.clone(),
                    lower: unit,
                }),
                swapped: false,
            });
        }
        let key = Key { f: f.clone() };
        if let Some(hit) = self.memo.get(&key) {
            // the stored entry belongs to either f or flip(f)
            let stored = &hit.key().f;
            let same = stored.ptr_eq(f)
                || (stored.structural_hash() == f.structural_hash() && stored == f);
            return Ok(View {
                pair: hit.value().clone(),
                swapped: !same,
            });
        }
        let pair = Arc::new(self.compute(f)?);
        self.memo.entry(key).or_insert_with(|| pair.clone());
        Ok(View {
            pair,
            swapped: false,
        })
    }

    fn compute(&self, f: &Formula) -> Result<PolyPair<C>, TriPolyError> {
        let kind = f.sum_kind().expect("sum node");
        let children = f.children();
        // evaluate distinct children once, in parallel for big subtrees
        let mut distinct: Vec<&Formula> = Vec::new();
        let mut slot = Vec::with_capacity(children.len());
        for c in children {
            let pos = distinct.iter().position(|d| {
                d.ptr_eq(c) || (d.structural_hash() == c.structural_hash() && *d == c)
            });
            match pos {
                Some(p) => slot.push(p),
                None => {
                    slot.push(distinct.len());
                    distinct.push(c);
                }
            }
        }
        let views: Vec<View<C>> = if f.edges() >= PAR_SUBTREE && distinct.len() > 1 {
            distinct
                .par_iter()
                .map(|c| self.view(c))
                .collect::<Result<_, _>>()?
        } else {
            distinct
                .iter()
                .map(|c| self.view(c))
                .collect::<Result<_, _>>()?
        };
        let mut upper = views[slot[0]].upper().clone();
        let mut lower = views[slot[0]].lower().clone();
        for &s in &slot[1..] {
            let v = &views[s];
            match kind {
                SumKind::Convex => {
                    upper = vee_combine(&upper, v.upper())?;
                    lower = wedge_combine(&lower, v.lower())?;
                }
                SumKind::Concave => {
                    upper = wedge_combine(&upper, v.upper())?;
                    lower = vee_combine(&lower, v.lower())?;
                }
            }
        }
        Ok(PolyPair { upper, lower })
    }
}

/// `(T_F, T_flip(F))` with a fresh evaluator.
pub fn tri_poly<C: Coefficient>(f: &Formula) -> Result<PolyPair<C>, TriPolyError> {
    Evaluator::new().eval(f)
}

/// Upper, lower and total triangulation counts with their `n`-th roots.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainCounts {
    pub n: usize,
    pub upper: Count,
    pub lower: Count,
    pub total: Count,
    pub root_upper: f64,
    pub root_lower: f64,
    pub root_total: f64,
}

impl ChainCounts {
    pub fn from_pair<C: Coefficient + IntoCount>(pair: &PolyPair<C>) -> Result<Self, TriPolyError> {
        let n = pair.upper.edges();
        let u = pair.upper.leading().clone();
        let l = pair.lower.leading().clone();
        let t = u.try_mul(&l)?;
        let root = |c: &C| -> Result<f64, TriPolyError> { Ok(c.to_ext()?.nth_root(n as u64)?) };
        Ok(ChainCounts {
            n,
            root_upper: root(&u)?,
            root_lower: root(&l)?,
            root_total: root(&t)?,
            upper: u.into_count(),
            lower: l.into_count(),
            total: t.into_count(),
        })
    }
}

pub fn counts(f: &Formula, mode: Mode) -> Result<ChainCounts, TriPolyError> {
    match mode {
        Mode::Exact => ChainCounts::from_pair(&tri_poly::<BigUint>(f)?),
        Mode::ExtFloat => ChainCounts::from_pair(&tri_poly::<ExtNum>(f)?),
    }
}
