//! Cross-checks between the engine, the oracles and the known identities.

use std::collections::HashSet;
use std::time::Instant;

use chainpoly_core::asymptotics::{
    copy_bounds, entropy_max, entropy_objective, gdc_upper_bound_exact, phi_from_poly,
    poly_upper_by_multinomial, twin_upper_by_gamma, GrowthReport, GrowthSums, PowerSeries,
};
use chainpoly_core::chain::{
    cave, enumerate_chains, formula_from_visibility, gdc, koch, koch_family, large_schroeder,
    little_schroeder, poly, prim, twin, vee, vex, visibility, wedge,
};
use chainpoly_core::oracle::{count_triangulations_points, oracle_tripoly, realize};
use chainpoly_core::tripoly::{
    closed_form_cave_vee_cave, tri_poly, vee_combine, wedge_combine, Evaluator,
};
use chainpoly_core::BigUint;
use chainpoly_core::{ExtNum, Formula, PolyPair, TriPolynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::Level;
use crate::error::CliError;

const MAX_REPORTED: usize = 5;

/// Sizes and sample counts for one verification run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Exhaustive suites cover every chain with at most this many edges.
    pub max_n: usize,
    /// Bound for the quadratic suites (pairs, realizations).
    pub small_n: usize,
    pub phi_pairs: usize,
    pub koch_max: u32,
    pub seed: u64,
    pub inject_fault: bool,
}

impl VerifyConfig {
    pub fn for_level(level: Level, seed: u64, inject_fault: bool) -> Self {
        match level {
            Level::Quick => VerifyConfig {
                max_n: 6,
                small_n: 5,
                phi_pairs: 50,
                koch_max: 8,
                seed,
                inject_fault,
            },
            Level::Full => VerifyConfig {
                max_n: 8,
                small_n: 6,
                phi_pairs: 200,
                koch_max: 10,
                seed,
                inject_fault,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub details: Vec<String>,
    pub millis: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

struct Tally {
    checks: usize,
    failures: usize,
    details: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: 0,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.details.len() < MAX_REPORTED {
                self.details.push(detail());
            }
        }
    }

    fn error(&mut self, e: impl std::fmt::Display) {
        self.check(false, || e.to_string());
    }
}

/// Runs the suites of one verification level.
pub struct Verifier {
    cfg: VerifyConfig,
    chains: Vec<Vec<Formula>>,
}

type SuiteFn = fn(&Verifier, &mut Tally) -> Result<(), CliError>;

pub const SUITE_NAMES: [&str; 14] = [
    "enumeration",
    "visibility",
    "oracle",
    "geometry",
    "flip-symmetry",
    "algebra",
    "closed-form",
    "one-sided-sum",
    "phi-identity",
    "phi-prefix",
    "numeric-agreement",
    "expansions",
    "anchors",
    "sandwich",
];

impl Verifier {
    pub fn new(cfg: VerifyConfig) -> Result<Self, CliError> {
        let mut chains = vec![Vec::new()];
        for n in 1..=cfg.max_n {
            chains.push(enumerate_chains(n)?.collect());
        }
        Ok(Verifier { cfg, chains })
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.cfg
    }

    fn chains(&self, n: usize) -> &[Formula] {
        &self.chains[n]
    }

    fn all_upto(&self, n: usize) -> impl Iterator<Item = &Formula> {
        self.chains[1..=n.min(self.cfg.max_n)].iter().flatten()
    }

    /// `(T_F, T_flip(F))`, corrupted when a fault is injected.
    fn engine(&self, f: &Formula) -> Result<PolyPair<BigUint>, CliError> {
        let mut pair = tri_poly::<BigUint>(f)?;
        if self.cfg.inject_fault && f.edges() >= 3 {
            let mut c = pair.upper.into_coeffs();
            let last = c.len() - 1;
            c[last] += 1u32;
            pair.upper = TriPolynomial::new(c);
        }
        Ok(pair)
    }

    pub fn run_suite(&self, name: &str) -> Result<SuiteResult, CliError> {
        let (name, f): (&'static str, SuiteFn) = match name {
            "enumeration" => ("enumeration", Verifier::enumeration),
            "visibility" => ("visibility", Verifier::visibility_round_trip),
            "oracle" => ("oracle", Verifier::oracle),
            "geometry" => ("geometry", Verifier::geometry),
            "flip-symmetry" => ("flip-symmetry", Verifier::flip_symmetry),
            "algebra" => ("algebra", Verifier::algebra),
            "closed-form" => ("closed-form", Verifier::closed_form),
            "one-sided-sum" => ("one-sided-sum", Verifier::one_sided_sum),
            "phi-identity" => ("phi-identity", Verifier::phi_identity),
            "phi-prefix" => ("phi-prefix", Verifier::phi_prefix),
            "numeric-agreement" => ("numeric-agreement", Verifier::numeric_agreement),
            "expansions" => ("expansions", Verifier::expansions),
            "anchors" => ("anchors", Verifier::anchors),
            "sandwich" => ("sandwich", Verifier::sandwich),
            other => return Err(CliError::Usage(format!("unknown suite {other}"))),
        };
        let start = Instant::now();
        let mut t = Tally::new();
        f(self, &mut t)?;
        Ok(SuiteResult {
            name,
            checks: t.checks,
            failures: t.failures,
            details: t.details,
            millis: start.elapsed().as_millis(),
        })
    }

    pub fn run_all(&self) -> Result<Vec<SuiteResult>, CliError> {
        SUITE_NAMES.iter().map(|s| self.run_suite(s)).collect()
    }

    fn enumeration(&self, t: &mut Tally) -> Result<(), CliError> {
        for n in 1..=self.cfg.max_n {
            let all = self.chains(n);
            let distinct: HashSet<String> = all.iter().map(|f| f.to_string()).collect();
            let upward = all.iter().filter(|f| f.is_upward()).count();
            t.check(all.len() as u128 == large_schroeder(n - 1), || {
                format!(
                    "n={n}: {} chains, expected {}",
                    all.len(),
                    large_schroeder(n - 1)
                )
            });
            t.check(upward as u128 == little_schroeder(n), || {
                format!("n={n}: {upward} upward, expected {}", little_schroeder(n))
            });
            t.check(distinct.len() == all.len(), || {
                format!("n={n}: duplicate formulas")
            });
            t.check(all.iter().all(|f| f.edges() == n), || {
                format!("n={n}: wrong sizes")
            });
        }
        Ok(())
    }

    fn visibility_round_trip(&self, t: &mut Tally) -> Result<(), CliError> {
        for n in 1..=self.cfg.max_n {
            let mut seen = HashSet::new();
            for f in self.chains(n) {
                let v = visibility(f)?;
                let back = formula_from_visibility(&v)?;
                t.check(&back == f, || {
                    format!("{f}: visibility round trip gave {back}")
                });
                t.check(visibility(&f.flip())? == v.negated(), || {
                    format!("{f}: flip does not negate the triangle")
                });
                t.check(v.is_well_formed() && seen.insert(v.rows()), || {
                    format!("{f}: triangle malformed or shared")
                });
            }
        }
        Ok(())
    }

    fn oracle(&self, t: &mut Tally) -> Result<(), CliError> {
        for f in self.all_upto(self.cfg.max_n) {
            let expect = oracle_tripoly(&visibility(f)?)?;
            let got = self.engine(f)?.upper;
            t.check(expect == got, || {
                format!("{f}: oracle {expect}, engine {got}")
            });
        }
        Ok(())
    }

    fn geometry(&self, t: &mut Tally) -> Result<(), CliError> {
        for f in self.all_upto(self.cfg.small_n.max(6).min(self.cfg.max_n)) {
            let pts = match realize(f) {
                Ok(p) => p,
                Err(e) => {
                    t.error(format!("{f}: {e}"));
                    continue;
                }
            };
            t.check(pts.matches(&visibility(f)?), || {
                format!("{f}: orientations differ")
            });
            let pair = self.engine(f)?;
            let tr = pair.upper.leading() * pair.lower.leading();
            let brute = count_triangulations_points(&pts)?;
            t.check(brute == tr, || {
                format!("{f}: point set has {brute} triangulations, engine {tr}")
            });
        }
        Ok(())
    }

    fn flip_symmetry(&self, t: &mut Tally) -> Result<(), CliError> {
        for f in self.all_upto(self.cfg.max_n) {
            let a = self.engine(f)?;
            let b = self.engine(&f.flip())?;
            t.check(a.upper == b.lower && a.lower == b.upper, || {
                format!("{f}: T and T_flip do not swap under flip")
            });
        }
        Ok(())
    }

    fn algebra(&self, t: &mut Tally) -> Result<(), CliError> {
        let lim = self.cfg.max_n.min(6);
        for f in self.all_upto(lim) {
            t.check(f.flip().flip() == *f, || {
                format!("{f}: flip is not an involution")
            });
        }
        let pool: Vec<&Formula> = self.all_upto(lim - 1).collect();
        for a in &pool {
            let ta = self.engine(a)?;
            for b in &pool {
                if a.edges() + b.edges() > lim {
                    continue;
                }
                let tb = self.engine(b)?;
                t.check(vee(a, b).flip() == wedge(&a.flip(), &b.flip()), || {
                    format!("{a}, {b}: De Morgan fails")
                });
                let v = self.engine(&vee(a, b))?.upper;
                let w = self.engine(&wedge(a, b))?.upper;
                t.check(v == vee_combine(&ta.upper, &tb.upper)?, || {
                    format!("{a} ∨ {b}: engine differs from the convex rule")
                });
                t.check(w == wedge_combine(&ta.upper, &tb.upper)?, || {
                    format!("{a} ∧ {b}: engine differs from the concave rule")
                });
                let vs = self.engine(&vee(b, a))?.upper;
                let ws = self.engine(&wedge(b, a))?.upper;
                t.check(v == vs && w == ws, || {
                    format!("{a}, {b}: sums do not commute")
                });
                let dominated = v.coeffs().iter().zip(w.coeffs()).all(|(x, y)| x >= y);
                t.check(dominated, || format!("{a}, {b}: ∨ does not dominate ∧"));
                for c in &pool {
                    if a.edges() + b.edges() + c.edges() > lim {
                        continue;
                    }
                    let tc = self.engine(c)?.upper;
                    t.check(vee(&vee(a, b), c) == vee(a, &vee(b, c)), || {
                        format!("{a}, {b}, {c}: ∨ is not associative")
                    });
                    t.check(wedge(&wedge(a, b), c) == wedge(a, &wedge(b, c)), || {
                        format!("{a}, {b}, {c}: ∧ is not associative")
                    });
                    let left = vee_combine(&vee_combine(&ta.upper, &tb.upper)?, &tc)?;
                    let right = vee_combine(&ta.upper, &vee_combine(&tb.upper, &tc)?)?;
                    t.check(left == right, || {
                        format!("{a}, {b}, {c}: convex rule not associative")
                    });
                }
            }
        }
        Ok(())
    }

    fn closed_form(&self, t: &mut Tally) -> Result<(), CliError> {
        for n1 in 1..=12 {
            for n2 in 1..=12 {
                let got = vee_combine(
                    &TriPolynomial::<BigUint>::unit(n1),
                    &TriPolynomial::<BigUint>::unit(n2),
                )?;
                let want = closed_form_cave_vee_cave(n1, n2);
                t.check(got == want, || format!("({n1}, {n2}): {got} vs {want}"));
            }
        }
        Ok(())
    }

    /// `T_{C1 ∨ cave(m)} = Σ_k t_k(C1) T_{cave(n1-k) ∨ cave(m)}`.
    fn one_sided_sum(&self, t: &mut Tally) -> Result<(), CliError> {
        let lim = self.cfg.max_n;
        for c1 in self.all_upto(lim) {
            let n1 = c1.edges();
            let t1 = self.engine(c1)?.upper;
            for m in 1..=lim {
                let got = self.engine(&vee(c1, &cave(m)?))?.upper;
                let mut want = vec![BigUint::from(0u32); n1 + m];
                for (k, tk) in t1.coeffs().iter().enumerate() {
                    for (d, c) in closed_form_cave_vee_cave(n1 - k, m)
                        .coeffs()
                        .iter()
                        .enumerate()
                    {
                        want[k + d] += tk * c;
                    }
                }
                let want = TriPolynomial::new(want);
                t.check(got == want, || format!("{c1} ∨ cave({m}): {got} vs {want}"));
            }
        }
        Ok(())
    }

    /// `φ_{C1 ∨ C2} = (1 - x)/(1 - 2x) φ_{C1} φ_{C2}` on random pairs.
    fn phi_identity(&self, t: &mut Tally) -> Result<(), CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        for _ in 0..self.cfg.phi_pairs {
            let pick = |rng: &mut ChaCha8Rng| {
                let n = rng.gen_range(1..=self.cfg.max_n);
                let pool = self.chains(n);
                pool[rng.gen_range(0..pool.len())].clone()
            };
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let order = a.edges() + b.edges() + 4;
            let pa = phi_from_poly(&self.engine(&a)?.upper, order);
            let pb = phi_from_poly(&self.engine(&b)?.upper, order);
            let lhs = phi_from_poly(&self.engine(&vee(&a, &b))?.upper, order);
            let rhs = &(&PowerSeries::vee_factor(order) * &pa) * &pb;
            t.check(lhs == rhs, || format!("{a} ∨ {b}: φ identity fails"));
        }
        Ok(())
    }

    /// `φ_F` agrees with `T_F` below degree `n`.
    fn phi_prefix(&self, t: &mut Tally) -> Result<(), CliError> {
        for f in self.all_upto(self.cfg.max_n) {
            let n = f.edges();
            let tp = self.engine(f)?.upper;
            let phi = phi_from_poly(&tp, n + 2);
            let prefix = PowerSeries::from_poly(n - 1, &tp);
            t.check(phi.truncate(n - 1) == prefix, || {
                format!("{f}: φ prefix differs from T")
            });
        }
        Ok(())
    }

    fn numeric_agreement(&self, t: &mut Tally) -> Result<(), CliError> {
        let exact = Evaluator::<BigUint>::new();
        let float = Evaluator::<ExtNum>::new();
        for (s, f) in koch_family(self.cfg.koch_max)?.iter().enumerate() {
            let mut e = exact.eval(f)?;
            if self.cfg.inject_fault && f.edges() >= 3 {
                e = self.engine(f)?;
            }
            let x = float.eval(f)?;
            let mut worst = 0f64;
            for (pe, px) in [(&e.upper, &x.upper), (&e.lower, &x.lower)] {
                for (a, b) in pe.coeffs().iter().zip(px.coeffs()) {
                    worst = worst.max(relative_deviation(a, b)?);
                }
            }
            t.check(worst <= 1e-12, || {
                format!("K_{s}: relative deviation {worst:e}")
            });
        }
        Ok(())
    }

    fn expansions(&self, t: &mut Tally) -> Result<(), CliError> {
        for c0 in [prim(), vex(2)?, cave(2)?, koch(2)?] {
            for copies in 1..=4 {
                let p = self.engine(&poly(&c0, copies)?)?.upper;
                let top = p.coeff(p.edges() - 1).clone();
                let got = poly_upper_by_multinomial(&c0, copies)?;
                t.check(got == top, || {
                    format!("poly({c0}, {copies}): multinomial {got}, engine {top}")
                });
            }
        }
        for c0 in [prim(), vex(2)?, cave(2)?] {
            for copies in 1..=3 {
                let u = self.engine(&twin(&c0, copies)?)?.upper.leading().clone();
                let got = twin_upper_by_gamma(&c0, copies)?;
                t.check(got == u, || {
                    format!("twin({c0}, {copies}): γ sum {got}, engine {u}")
                });
            }
        }
        for counts in [vec![3], vec![2, 1], vec![1, 0, 2], vec![2, 2, 1]] {
            let u = self.engine(&gdc(&counts)?)?.upper.leading().clone();
            let bound = gdc_upper_bound_exact(&counts);
            t.check(u <= bound, || {
                format!("gdc{counts:?}: U={u} above bound {bound}")
            });
        }
        for c0 in [koch(1)?, vex(2)?, cave(2)?, koch(2)?] {
            let built = [
                (2, vee(&c0, &c0)),
                (2, wedge(&c0, &c0)),
                (3, vee(&c0, &wedge(&c0, &c0))),
                (3, wedge(&vee(&c0, &c0), &c0)),
            ];
            for (copies, c) in built {
                let b = copy_bounds(&c0, copies, &c)?;
                let pair = self.engine(&c)?;
                let u = pair.upper.leading().clone();
                let tr = &u * pair.lower.leading();
                t.check(b.lower_u <= u && u <= b.upper_u, || {
                    format!("{c}: U={u} outside copy bounds")
                });
                t.check(b.lower_tr <= tr && tr <= b.upper_tr, || {
                    format!("{c}: tr={tr} outside copy bounds")
                });
            }
        }
        Ok(())
    }

    fn anchors(&self, t: &mut Tally) -> Result<(), CliError> {
        let v4 = self.engine(&vex(4)?)?.upper;
        t.check(v4 == TriPolynomial::from_u64s(&[1, 3, 5, 5]), || {
            format!("T_vex(4) = {v4}")
        });
        let pair = self.engine(&vex(4)?)?;
        let sums = GrowthSums::from_pair(&pair)?;
        t.check(sums.lambda_pow == BigUint::from(80u32), || {
            format!("λ^4 = {}", sums.lambda_pow)
        });
        t.check(sums.tau_pow == BigUint::from(70u32), || {
            format!("τ^4 = {}", sums.tau_pow)
        });
        let r = GrowthReport::from_sums(&sums)?;
        t.check((r.lambda_tau - 5600f64.powf(0.25)).abs() < 1e-9, || {
            format!("λτ = {}", r.lambda_tau)
        });
        let k3 = self.engine(&koch(3)?)?;
        let (u, l) = (k3.upper.leading().clone(), k3.lower.leading().clone());
        t.check(
            u == BigUint::from(106u32) && l == BigUint::from(4u32),
            || format!("koch(3): U={u}, L={l}"),
        );
        for n in 1..=12usize {
            let u = self.engine(&vex(n)?)?.upper.leading().clone();
            let catalan = catalan(n - 1);
            t.check(u == catalan, || {
                format!("vex({n}): U={u}, expected {catalan}")
            });
        }
        let u = [5.0, 1.0, 2.0];
        let em = entropy_max(&u)?;
        let at = entropy_objective(&u, &em.weights);
        t.check(
            (em.value - 8.0).abs() < 1e-12 && (at - 8.0).abs() < 1e-9,
            || format!("entropy maximum {} attained value {at}", em.value),
        );
        Ok(())
    }

    /// `U(poly(C0, N))^{1/(Nm)} / λ` stays at most 1 and does not decrease
    /// in `N`.
    fn sandwich(&self, t: &mut Tally) -> Result<(), CliError> {
        for c0 in [prim(), vex(2)?, koch(1)?, koch(2)?] {
            let m = c0.edges();
            let lambda =
                GrowthReport::from_sums(&GrowthSums::from_pair(&self.engine(&c0)?)?)?.lambda;
            let mut prev = 0f64;
            for copies in 1..=8 {
                let u = self.engine(&poly(&c0, copies)?)?.upper.leading().clone();
                let ratio = ExtNum::from_biguint(&u)?.nth_root((m * copies) as u64)? / lambda;
                t.check(ratio <= 1.0 + 1e-12 && ratio >= prev - 1e-12, || {
                    format!("poly({c0}, {copies}): ratio {ratio} after {prev}")
                });
                prev = ratio;
            }
        }
        Ok(())
    }
}

/// `|b - a| / a` for an exact `a` and its floating counterpart `b`.
fn relative_deviation(a: &BigUint, b: &ExtNum) -> Result<f64, CliError> {
    let zero = BigUint::from(0u32);
    if *a == zero {
        return Ok(if b.is_zero() { 0.0 } else { f64::INFINITY });
    }
    let bf = b.to_biguint_floor();
    let diff = if bf > *a { &bf - a } else { a - &bf };
    if diff == zero {
        return Ok(0.0);
    }
    let d = ExtNum::from_biguint(&diff)?;
    let base = ExtNum::from_biguint(a)?;
    Ok((d.ln() - base.ln()).exp())
}

fn catalan(k: usize) -> BigUint {
    let mut c = BigUint::from(1u32);
    for i in 0..k {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}
