//! Named chain families.

use super::{ChainError, Formula, SumKind};

/// Largest Koch level accepted by [`koch`]; the formula stays small thanks
/// to sharing, but `2^s` edges must fit comfortably in `usize`.
pub const KOCH_MAX_LEVEL: u32 = 40;

fn positive(name: &str, v: usize) -> Result<(), ChainError> {
    if v == 0 {
        Err(ChainError::InvalidParameter(format!(
            "{name} must be at least 1"
        )))
    } else {
        Ok(())
    }
}

/// `E`.
pub fn prim() -> Formula {
    Formula::prim()
}

fn repeat(kind: SumKind, part: Formula, copies: usize) -> Formula {
    if copies == 1 {
        part
    } else {
        Formula::sum(kind, std::iter::repeat_n(part, copies))
    }
}

/// The convex chain `E ∨ … ∨ E` with `n` edges.
pub fn vex(n: usize) -> Result<Formula, ChainError> {
    positive("vex(n): n", n)?;
    Ok(repeat(SumKind::Convex, prim(), n))
}

/// The concave chain `E ∧ … ∧ E` with `n` edges.
pub fn cave(n: usize) -> Result<Formula, ChainError> {
    positive("cave(n): n", n)?;
    Ok(repeat(SumKind::Concave, prim(), n))
}

/// Double chain `∧k ∨ E ∨ ∧k`, `2k + 1` edges.
pub fn double_chain(k: usize) -> Result<Formula, ChainError> {
    positive("dc(k): k", k)?;
    let side = cave(k)?;
    Ok(Formula::sum(SumKind::Convex, [side.clone(), prim(), side]))
}

/// Zig-zag chain: `k` copies of `∧2` joined by convex sums, `2k` edges.
pub fn zigzag(k: usize) -> Result<Formula, ChainError> {
    positive("zz(k): k", k)?;
    Ok(repeat(SumKind::Convex, cave(2)?, k))
}

/// Double zig-zag chain `flip(zz(k)) ∨ E ∨ flip(zz(k))`, `4k + 1` edges.
pub fn double_zigzag(k: usize) -> Result<Formula, ChainError> {
    positive("dzz(k): k", k)?;
    let side = zigzag(k)?.flip();
    Ok(Formula::sum(SumKind::Convex, [side.clone(), prim(), side]))
}

/// Koch chain: `K_0 = E`, `K_s = flip(K_{s-1}) ∨ flip(K_{s-1})`.
pub fn koch(s: u32) -> Result<Formula, ChainError> {
    Ok(koch_family(s)?.pop().expect("at least K_0"))
}

/// `[K_0, K_1, …, K_s]`, sharing structure between levels.
pub fn koch_family(s: u32) -> Result<Vec<Formula>, ChainError> {
    if s > KOCH_MAX_LEVEL {
        return Err(ChainError::InvalidParameter(format!(
            "koch(s): s must be at most {KOCH_MAX_LEVEL}"
        )));
    }
    let mut up = prim();
    let mut down = prim();
    let mut out = vec![up.clone()];
    for _ in 0..s {
        let next_up = Formula::sum(SumKind::Convex, [down.clone(), down.clone()]);
        let next_down = Formula::sum(SumKind::Concave, [up.clone(), up.clone()]);
        up = next_up;
        down = next_down;
        out.push(up.clone());
    }
    Ok(out)
}

/// Poly chain: `N` copies of `flip(C0)` joined by convex sums, `N·m` edges.
pub fn poly(c0: &Formula, copies: usize) -> Result<Formula, ChainError> {
    positive("poly(F, N): N", copies)?;
    Ok(repeat(SumKind::Convex, c0.flip(), copies))
}

/// Twin chain `flip(poly(C0, N)) ∨ E ∨ flip(poly(C0, N))`, `2Nm + 1` edges.
pub fn twin(c0: &Formula, copies: usize) -> Result<Formula, ChainError> {
    positive("twin(F, N): N", copies)?;
    let side = poly(c0, copies)?.flip();
    Ok(Formula::sum(SumKind::Convex, [side.clone(), prim(), side]))
}

/// Generalized double circle: `poly(vex(1), N1) ∨ … ∨ poly(vex(m), Nm)`,
/// skipping zero counts. `counts[k-1]` is `N_k`.
pub fn gdc(counts: &[usize]) -> Result<Formula, ChainError> {
    let mut parts = Vec::new();
    for (i, &nk) in counts.iter().enumerate() {
        if nk > 0 {
            parts.push(poly(&vex(i + 1)?, nk)?);
        }
    }
    match parts.len() {
        0 => Err(ChainError::InvalidParameter(
            "gdc(N1, ..., Nm): at least one count must be nonzero".into(),
        )),
        1 => Ok(parts.pop().unwrap()),
        _ => Ok(Formula::sum(SumKind::Convex, parts)),
    }
}
