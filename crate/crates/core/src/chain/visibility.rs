//! Visibility triangles: the sign pattern that fixes a chain's order type.

use std::fmt;

use super::{ChainError, Formula, SumKind};

/// Default cap on chain edges for dense triangles.
pub const VISIBILITY_CAP: usize = 4096;

/// `V(i, j)` for `0 <= i < j <= n`: `+1` if edge `p_i p_j` runs above the
/// chain curve, `-1` if below, `0` for chain edges (`j = i + 1`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VisibilityTriangle {
    n: usize,
    entries: Vec<i8>,
}

fn row_offset(n: usize, i: usize) -> usize {
    i * n - i * (i.saturating_sub(1)) / 2
}

impl VisibilityTriangle {
    /// Builds a triangle from a sign function on `i < j`; the result is not
    /// checked for realizability.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let mut entries = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i + 1..=n {
                entries.push(f(i, j).signum());
            }
        }
        VisibilityTriangle { n, entries }
    }

    /// Row `i` lists `V(i, i+1), …, V(i, n)`.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self, ChainError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n - i {
                return Err(ChainError::NotRealizable(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    n - i
                )));
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j - i - 1]))
    }

    /// Number of chain edges.
    pub fn edges(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        assert!(i < j && j <= self.n, "index ({i}, {j}) out of range");
        self.entries[row_offset(self.n, i) + (j - i - 1)]
    }

    fn set(&mut self, i: usize, j: usize, v: i8) {
        let n = self.n;
        self.entries[row_offset(n, i) + (j - i - 1)] = v;
    }

    pub fn negated(&self) -> Self {
        VisibilityTriangle {
            n: self.n,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        (0..self.n)
            .map(|i| (i + 1..=self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Chain edges zero, everything else nonzero.
    pub fn is_well_formed(&self) -> bool {
        (0..self.n).all(|i| (i + 1..=self.n).all(|j| (self.get(i, j) == 0) == (j == i + 1)))
    }
}

impl fmt::Display for VisibilityTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            let cells: Vec<&str> = row
                .iter()
                .map(|v| match v {
                    1 => "+",
                    -1 => "-",
                    _ => "0",
                })
                .collect();
            writeln!(f, "{}{}", "  ".repeat(i), cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for VisibilityTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VisibilityTriangle(n={}, {:?})", self.n, self.rows())
    }
}

pub fn visibility(f: &Formula) -> Result<VisibilityTriangle, ChainError> {
    visibility_with_cap(f, VISIBILITY_CAP)
}

pub fn visibility_with_cap(f: &Formula, cap: usize) -> Result<VisibilityTriangle, ChainError> {
    let n = f.edges();
    if n > cap {
        return Err(ChainError::CapExceeded { edges: n, cap });
    }
    let mut v = VisibilityTriangle {
        n,
        entries: vec![0; n * (n + 1) / 2],
    };
    fill(f, 0, &mut v);
    Ok(v)
}

fn fill(f: &Formula, base: usize, v: &mut VisibilityTriangle) {
    let Some(kind) = f.sum_kind() else { return };
    let end = base + f.edges();
    let sign = kind.sign();
    let mut start = base;
    for c in f.children() {
        let stop = start + c.edges();
        for i in start..stop {
            for j in stop + 1..=end {
                v.set(i, j, sign);
            }
        }
        fill(c, start, v);
        start = stop;
    }
}

/// Recovers the canonical formula of the chain with triangle `v`.
pub fn formula_from_visibility(v: &VisibilityTriangle) -> Result<Formula, ChainError> {
    if v.n == 0 {
        return Err(ChainError::NotRealizable(
            "a chain has at least one edge".into(),
        ));
    }
    if !v.is_well_formed() {
        return Err(ChainError::NotRealizable(
            "chain edges must be 0 and all other entries nonzero".into(),
        ));
    }
    let f = split(v, 0, v.n)?;
    if visibility(&f).map_or(true, |w| &w != v) {
        return Err(ChainError::NotRealizable(
            "reconstructed formula does not reproduce the triangle".into(),
        ));
    }
    Ok(f)
}

fn split(v: &VisibilityTriangle, a: usize, b: usize) -> Result<Formula, ChainError> {
    if b == a + 1 {
        return Ok(Formula::prim());
    }
    let sign = v.get(a, b);
    // m is a split point iff every edge jumping over it has the root's sign
    let cuts: Vec<usize> = (a + 1..b)
        .filter(|&m| (a..m).all(|x| (m + 1..=b).all(|y| v.get(x, y) == sign)))
        .collect();
    if cuts.is_empty() {
        return Err(ChainError::NotRealizable(format!(
            "no split point in range [{a}, {b}]"
        )));
    }
    let kind = if sign > 0 {
        SumKind::Convex
    } else {
        SumKind::Concave
    };
    let mut parts = Vec::with_capacity(cuts.len() + 1);
    let mut lo = a;
    for &m in cuts.iter().chain(std::iter::once(&b)) {
        parts.push(split(v, lo, m)?);
        lo = m;
    }
    Ok(Formula::sum(kind, parts))
}

#[cfg(test)]
mod tests {
    use super::super::{builders::*, enumerate_chains, vee, wedge};
    use super::*;

    #[test]
    fn primitive_triangle() {
        let v = visibility(&prim()).unwrap();
        assert_eq!(v.rows(), vec![vec![0]]);
        assert_eq!(formula_from_visibility(&v).unwrap(), prim());
    }

    #[test]
    fn mixed_sum_triangle() {
        let e = prim();
        let f = wedge(&e, &vee(&e, &e));
        let v = visibility(&f).unwrap();
        assert_eq!(v.rows(), vec![vec![0, -1, -1], vec![0, 1], vec![0]]);
        assert_eq!(formula_from_visibility(&v).unwrap(), f);
    }

    #[test]
    fn convex_triangle_is_all_plus() {
        let v = visibility(&vex(3).unwrap()).unwrap();
        assert_eq!(v.rows(), vec![vec![0, 1, 1], vec![0, 1], vec![0]]);
        let v = visibility(&vex(9).unwrap()).unwrap();
        for i in 0..9 {
            for j in i + 2..=9 {
                assert_eq!(v.get(i, j), 1);
            }
        }
    }

    #[test]
    fn zigzag_triangle_pattern() {
        // 2k = 8 edges; edges over a dent are below, everything else above
        let v = visibility(&zigzag(4).unwrap()).unwrap();
        for i in 0..8 {
            for j in i + 2..=8 {
                let want = if i % 2 == 0 && j == i + 2 { -1 } else { 1 };
                assert_eq!(v.get(i, j), want, "({i},{j})");
            }
        }
    }

    #[test]
    fn flip_negates() {
        for n in 1..=6 {
            for f in enumerate_chains(n).unwrap() {
                let v = visibility(&f).unwrap();
                assert_eq!(visibility(&f.flip()).unwrap(), v.negated());
                assert_eq!(f.flip().flip(), f);
            }
        }
    }

    #[test]
    fn round_trip_and_injectivity() {
        use std::collections::HashSet;
        for n in 1..=6 {
            let mut seen = HashSet::new();
            for f in enumerate_chains(n).unwrap() {
                let v = visibility(&f).unwrap();
                assert_eq!(formula_from_visibility(&v).unwrap(), f);
                assert!(seen.insert(v), "duplicate triangle for {f}");
            }
        }
    }

    #[test]
    fn unrealizable_triangles_are_rejected() {
        // V(0,3) = +1 but both inner long edges are below: no split point
        let v = VisibilityTriangle::from_rows(&[vec![0, -1, 1], vec![0, -1], vec![0]]).unwrap();
        assert!(matches!(
            formula_from_visibility(&v),
            Err(ChainError::NotRealizable(_))
        ));
        let bad = VisibilityTriangle::from_rows(&[vec![0, 0], vec![0]]).unwrap();
        assert!(formula_from_visibility(&bad).is_err());
        assert!(VisibilityTriangle::from_rows(&[vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let f = vex(20).unwrap();
        assert_eq!(
            visibility_with_cap(&f, 10),
            Err(ChainError::CapExceeded { edges: 20, cap: 10 })
        );
    }
}
