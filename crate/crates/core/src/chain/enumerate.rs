//! Exhaustive generation of all chains with a given number of edges.
//!
//! Order: all upward chains first, then all downward chains. Within one
//! root kind, root compositions `(c_1, …, c_k)` of `n` (k >= 2) come in
//! lexicographic order, and for each composition the summands run through
//! the chains of sizes `c_1, …, c_k` odometer-style (last summand fastest).

use super::{ChainError, Formula, SumKind};

/// Largest `n` accepted by [`enumerate_chains`].
pub const ENUMERATION_CAP: usize = 12;

/// Chains of sizes `1..n` grouped by root kind; size 1 is `[E]` for both.
struct Tables {
    up: Vec<Vec<Formula>>,
    down: Vec<Vec<Formula>>,
}

impl Tables {
    fn new(limit: usize) -> Self {
        let mut t = Tables {
            up: vec![Vec::new(), vec![Formula::prim()]],
            down: vec![Vec::new(), vec![Formula::prim()]],
        };
        for k in 2..limit {
            let up: Vec<Formula> = SizeGen::new(k, SumKind::Convex).drain(&t).collect();
            let down: Vec<Formula> = SizeGen::new(k, SumKind::Concave).drain(&t).collect();
            t.up.push(up);
            t.down.push(down);
        }
        t
    }

    /// Allowed summands of size `c` under a root of the given kind.
    fn parts(&self, kind: SumKind, c: usize) -> &[Formula] {
        match kind {
            SumKind::Convex => &self.down[c],
            SumKind::Concave => &self.up[c],
        }
    }
}

/// Walks all chains of one size and root kind.
struct SizeGen {
    kind: SumKind,
    comp: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl SizeGen {
    fn new(n: usize, kind: SumKind) -> Self {
        SizeGen {
            kind,
            comp: vec![1; n],
            idx: vec![0; n],
            done: n < 2,
        }
    }

    fn next(&mut self, t: &Tables) -> Option<Formula> {
        if self.done {
            return None;
        }
        let parts = self
            .comp
            .iter()
            .zip(&self.idx)
            .map(|(&c, &i)| t.parts(self.kind, c)[i].clone());
        let f = Formula::sum(self.kind, parts);
        self.advance(t);
        Some(f)
    }

    fn advance(&mut self, t: &Tables) {
        for pos in (0..self.comp.len()).rev() {
            self.idx[pos] += 1;
            if self.idx[pos] < t.parts(self.kind, self.comp[pos]).len() {
                return;
            }
            self.idx[pos] = 0;
        }
        // lexicographic successor: drop the last part x, bump the new last
        // part, then append x - 1 ones
        let x = self.comp.pop().expect("composition has at least two parts");
        *self.comp.last_mut().unwrap() += 1;
        self.comp.extend(std::iter::repeat_n(1, x - 1));
        if self.comp.len() < 2 {
            self.done = true;
        }
        self.idx = vec![0; self.comp.len()];
    }

    fn drain<'a>(mut self, t: &'a Tables) -> impl Iterator<Item = Formula> + 'a {
        std::iter::from_fn(move || self.next(t))
    }
}

/// Streams every chain with `n` edges exactly once, in a fixed order.
pub struct ChainEnumerator {
    n: usize,
    tables: Tables,
    current: Option<SizeGen>,
    emitted_prim: bool,
}

impl Iterator for ChainEnumerator {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        if self.n == 1 {
            if self.emitted_prim {
                return None;
            }
            self.emitted_prim = true;
            return Some(Formula::prim());
        }
        loop {
            let gen = self.current.as_mut()?;
            if let Some(f) = gen.next(&self.tables) {
                return Some(f);
            }
            self.current = match gen.kind {
                SumKind::Convex => Some(SizeGen::new(self.n, SumKind::Concave)),
                SumKind::Concave => None,
            };
        }
    }
}

pub fn enumerate_chains(n: usize) -> Result<ChainEnumerator, ChainError> {
    enumerate_chains_with_cap(n, ENUMERATION_CAP)
}

pub fn enumerate_chains_with_cap(n: usize, cap: usize) -> Result<ChainEnumerator, ChainError> {
    if n == 0 {
        return Err(ChainError::InvalidParameter("n must be at least 1".into()));
    }
    if n > cap {
        return Err(ChainError::CapExceeded { edges: n, cap });
    }
    Ok(ChainEnumerator {
        n,
        tables: Tables::new(n),
        current: Some(SizeGen::new(n, SumKind::Convex)),
        emitted_prim: false,
    })
}

/// Large Schröder numbers `1, 2, 6, 22, 90, …` (index from 0), by the
/// convolution recurrence. Valid while the result fits in `u128`.
pub fn large_schroeder(k: usize) -> u128 {
    let mut s: Vec<u128> = vec![1];
    for m in 1..=k {
        let conv: u128 = (0..m).map(|i| s[i] * s[m - 1 - i]).sum();
        s.push(s[m - 1] + conv);
    }
    s[k]
}

/// Little Schröder numbers `1, 1, 3, 11, 45, …` (index from 1), by the
/// three-term recurrence `(m+1) s(m+1) = 3(2m-1) s(m) - (m-2) s(m-1)`.
pub fn little_schroeder(n: usize) -> u128 {
    assert!(n >= 1);
    let mut prev: u128 = 1;
    let mut cur: u128 = 1;
    if n <= 2 {
        return 1;
    }
    for m in 2..n {
        let m = m as u128;
        let next = (3 * (2 * m - 1) * cur - (m - 2) * prev) / (m + 1);
        prev = cur;
        cur = next;
    }
    cur
}
