//! Independent checks for the polynomial engine.
//!
//! [`oracle_tripoly`] counts partial upper triangulations directly on a
//! visibility triangle in cubic time. [`realize`] builds exact rational
//! coordinates for a formula, and [`count_triangulations_points`] counts
//! triangulations of a small point set by brute force. None of these use
//! the sum rules of [`crate::tripoly`].

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chain::{visibility, ChainError, Formula, SumKind, VisibilityTriangle};
use crate::tripoly::TriPolynomial;

/// Largest chain accepted by [`oracle_tripoly`].
pub const ORACLE_CAP: usize = 64;
/// Largest chain accepted by [`realize`].
pub const REALIZE_CAP: usize = 32;
/// Largest point set accepted by [`count_triangulations_points`].
pub const POINT_COUNT_CAP: usize = 10;
/// Halvings of ε tried per sum node before giving up.
const MAX_HALVINGS: u32 = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("chain has {edges} edges, above the cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("invalid visibility triangle: {0}")]
    InvalidTriangle(String),
    #[error("degenerate point set: {0}")]
    Degenerate(String),
    #[error("realization failed: {0}")]
    RealizationFailed(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// `T_C` computed on the visibility triangle alone.
///
/// `N(i, k)` counts triangulations of the region between an upper edge
/// `p_i p_k` and the chain curve: some apex `j` forms a triangle with it,
/// and both `p_i p_j` and `p_j p_k` are upper or chain edges. A partial
/// upper triangulation is then a visible path `0 = a_0 < … < a_v = n` of
/// such edges, each contributing `N(a, b)` fillings of `b - a - 1`
/// triangles.
pub fn oracle_tripoly(v: &VisibilityTriangle) -> Result<TriPolynomial<BigUint>, OracleError> {
    let n = v.edges();
    if n > ORACLE_CAP {
        return Err(OracleError::CapExceeded {
            edges: n,
            cap: ORACLE_CAP,
        });
    }
    if n == 0 || !v.is_well_formed() {
        return Err(OracleError::InvalidTriangle(
            "chain edges must be 0 and all other entries nonzero".into(),
        ));
    }
    let up = |i: usize, k: usize| v.get(i, k) >= 0;
    let zero = BigUint::zero();
    // fill[i][k - i]
    let mut fill: Vec<Vec<BigUint>> = (0..=n).map(|i| vec![zero.clone(); n + 1 - i]).collect();
    for row in fill.iter_mut().take(n) {
        row[1] = BigUint::one();
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let k = i + len;
            if !up(i, k) {
                continue;
            }
            let mut acc = BigUint::zero();
            for j in i + 1..k {
                if up(i, j) && up(j, k) {
                    acc += &fill[i][j - i] * &fill[j][k - j];
                }
            }
            fill[i][len] = acc;
        }
    }
    let mut paths: Vec<Vec<BigUint>> = vec![Vec::new(); n + 1];
    paths[0] = vec![BigUint::one()];
    for b in 1..=n {
        let mut poly = vec![zero.clone(); b];
        for a in 0..b {
            if !up(a, b) || fill[a][b - a].is_zero() {
                continue;
            }
            let shift = b - a - 1;
            for (deg, c) in paths[a].iter().enumerate() {
                if !c.is_zero() {
                    poly[deg + shift] += c * &fill[a][b - a];
                }
            }
        }
        paths[b] = poly;
    }
    Ok(TriPolynomial::new(paths.pop().expect("n >= 1")))
}

/// Points with exact rational coordinates, sorted by x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPointSet {
    points: Vec<(BigRational, BigRational)>,
}

impl RationalPointSet {
    pub fn new(points: Vec<(BigRational, BigRational)>) -> Result<Self, OracleError> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(OracleError::Degenerate(
                "x coordinates must increase strictly".into(),
            ));
        }
        Ok(RationalPointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    /// Sign of the cross product: `+1` for a counter-clockwise triple.
    pub fn orientation(&self, i: usize, j: usize, k: usize) -> i8 {
        orient(&self.points[i], &self.points[j], &self.points[k])
    }

    /// Whether every triple `i < j < k` is counter-clockwise exactly when
    /// `V(i, k) = +1`.
    pub fn matches(&self, v: &VisibilityTriangle) -> bool {
        let n = v.edges();
        if self.len() != n + 1 {
            return false;
        }
        (0..=n).all(|i| {
            (i + 2..=n).all(|k| (i + 1..k).all(|j| self.orientation(i, j, k) == v.get(i, k)))
        })
    }

    /// Rows `(x_num, x_den, y_num, y_den)` in chain order.
    pub fn rows(&self) -> Vec<[BigInt; 4]> {
        self.points
            .iter()
            .map(|(x, y)| {
                [
                    x.numer().clone(),
                    x.denom().clone(),
                    y.numer().clone(),
                    y.denom().clone(),
                ]
            })
            .collect()
    }

    pub fn from_rows(rows: &[[BigInt; 4]]) -> Result<Self, OracleError> {
        let mut pts = Vec::with_capacity(rows.len());
        for r in rows {
            if r[1].is_zero() || r[3].is_zero() {
                return Err(OracleError::Degenerate("zero denominator".into()));
            }
            pts.push((
                BigRational::new(r[0].clone(), r[1].clone()),
                BigRational::new(r[2].clone(), r[3].clone()),
            ));
        }
        Self::new(pts)
    }
}

fn orient(
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
    c: &(BigRational, BigRational),
) -> i8 {
    let cross = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    if cross.is_positive() {
        1
    } else if cross.is_negative() {
        -1
    } else {
        0
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact coordinates for a chain with the order type of `f`.
///
/// Every realization has endpoints `(-1, 0)` and `(1, 0)`. A sum is built
/// by folding its summands pairwise: both parts are squeezed vertically by
/// `ε`, sheared into the two arms of a `∨` (or `∧`) meeting at `x = 0`,
/// and glued. `ε` starts at 1/4 and is halved until every triple that
/// spans the glue point has the orientation the sum requires.
pub fn realize(f: &Formula) -> Result<RationalPointSet, OracleError> {
    if f.edges() > REALIZE_CAP {
        return Err(OracleError::CapExceeded {
            edges: f.edges(),
            cap: REALIZE_CAP,
        });
    }
    let pts = realize_rec(f)?;
    let set = RationalPointSet::new(pts)?;
    if !set.matches(&visibility(f)?) {
        return Err(OracleError::RealizationFailed(format!(
            "orientation mismatch for {f}"
        )));
    }
    Ok(set)
}

type Pts = Vec<(BigRational, BigRational)>;

fn realize_rec(f: &Formula) -> Result<Pts, OracleError> {
    let Some(kind) = f.sum_kind() else {
        return Ok(vec![(rat(-1, 1), rat(0, 1)), (rat(1, 1), rat(0, 1))]);
    };
    let mut parts = f.children().iter();
    let mut acc = realize_rec(parts.next().expect("sum has children"))?;
    for c in parts {
        let right = realize_rec(c)?;
        acc = glue(kind, &acc, &right)?;
    }
    Ok(acc)
}

fn glue(kind: SumKind, left: &Pts, right: &Pts) -> Result<Pts, OracleError> {
    let half = rat(1, 2);
    let one = rat(1, 1);
    // Vee: left arm descends to the glue point, right arm rises
    let slope = match kind {
        SumKind::Convex => -one.clone(),
        SumKind::Concave => one.clone(),
    };
    let lift = -&slope;
    let mut eps = rat(1, 4);
    for _ in 0..MAX_HALVINGS {
        let mut out: Pts = Vec::with_capacity(left.len() + right.len() - 1);
        for (x, y) in left {
            let x2 = (x - &one) * &half;
            let y2 = &eps * y + &slope * &x2 + &slope;
            out.push((x2, y2));
        }
        for (x, y) in right.iter().skip(1) {
            let x2 = (x + &one) * &half;
            let y2 = &eps * y + &lift * &x2 + &slope;
            out.push((x2, y2));
        }
        let m = left.len() - 1;
        let want = kind.sign();
        let ok = (0..m).all(|i| {
            (m + 1..out.len())
                .all(|k| (i + 1..k).all(|j| orient(&out[i], &out[j], &out[k]) == want))
        });
        if ok {
            return Ok(out);
        }
        eps *= &half;
    }
    Err(OracleError::RealizationFailed(
        "ε search did not converge".into(),
    ))
}

/// Number of triangulations of a point set in general position, by
/// include/exclude backtracking over all segments in a fixed order.
pub fn count_triangulations_points(p: &RationalPointSet) -> Result<BigUint, OracleError> {
    let n = p.len();
    if n > POINT_COUNT_CAP {
        return Err(OracleError::CapExceeded {
            edges: n,
            cap: POINT_COUNT_CAP,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if p.orientation(i, j, k) == 0 {
                    return Err(OracleError::Degenerate(format!(
                        "points {i}, {j}, {k} are collinear"
                    )));
                }
            }
        }
    }
    if n < 3 {
        return Ok(BigUint::one());
    }
    let segs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let m = segs.len();
    let cross: Vec<u64> = (0..m)
        .map(|a| {
            (0..m).fold(0u64, |mask, b| {
                if crosses(p, segs[a], segs[b]) {
                    mask | (1 << b)
                } else {
                    mask
                }
            })
        })
        .collect();
    let mut search = Search {
        cross: &cross,
        m,
        count: 0,
    };
    search.go(0, 0, 0);
    Ok(BigUint::from(search.count))
}

fn crosses(p: &RationalPointSet, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    p.orientation(a, b, c) != p.orientation(a, b, d)
        && p.orientation(c, d, a) != p.orientation(c, d, b)
}

struct Search<'a> {
    cross: &'a [u64],
    m: usize,
    count: u64,
}

impl Search<'_> {
    fn go(&mut self, idx: usize, inc: u64, exc: u64) {
        if idx == self.m {
            // maximality: every excluded segment must cross a chosen one
            let mut rest = exc;
            while rest != 0 {
                let e = rest.trailing_zeros() as usize;
                if self.cross[e] & inc == 0 {
                    return;
                }
                rest &= rest - 1;
            }
            self.count += 1;
            return;
        }
        let bit = 1u64 << idx;
        if self.cross[idx] & inc != 0 {
            self.go(idx + 1, inc, exc | bit);
            return;
        }
        self.go(idx + 1, inc | bit, exc);
        // excluding an uncrossed segment needs some later segment to cross it
        let later = !((bit << 1) - 1);
        if self.cross[idx] & later != 0 {
            self.go(idx + 1, inc, exc | bit);
        }
    }
}
