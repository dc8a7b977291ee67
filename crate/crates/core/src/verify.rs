//! Property suites run against a single graph, one report per suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::divpl::{
    compare_reps, coset_representatives, interior_vertices, nabla, normalize_alpha, primitive_beta,
    shift_rep, Divisor,
};
use crate::error::Result;
use crate::graph::{Cycle, DecoratedGraph};
use crate::monoid::{
    build_gamma_over_r, build_xsr, integrality_witness, iso_gamma_classes, kummer_check,
    torsion_kernel_check, ExtendedMonoid, GammaComparison,
};
use crate::pixton::{class_series, p_w, shift_law_sides, SamplingPolicy};
use crate::tropjac::{residue_tuples, torsion_points};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub r: i64,
    pub seed: u64,
    /// Randomized trials per suite.
    pub trials: usize,
    /// Coordinate bound for exhaustive boxes.
    pub height: i64,
    /// Highest degree compared in the formula suites.
    pub d_max: usize,
    pub s_max: i64,
    pub policy: SamplingPolicy,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            r: 2,
            seed: 0x5eed,
            trials: 50,
            height: 2,
            d_max: 3,
            s_max: 7,
            policy: SamplingPolicy::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(suite: &'static str) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks,
            "failures": self.failures,
            "first_failure": self.first_failure,
        })
    }
}

/// Membership straight from the presentation: some `d ≤ 2r + 1` has
/// `d·(m, y)` equal to an element of `M` modulo the relations.
pub fn raw_saturation_member(ext: &ExtendedMonoid, m: &[i64], y: &[i64]) -> bool {
    let r = ext.r;
    (1..=2 * r + 1).any(|d| {
        if y.iter().any(|&yj| (d * yj) % r != 0) {
            return false;
        }
        (0..ext.rank).all(|i| {
            let mut v = d * m[i];
            for (j, &yj) in y.iter().enumerate() {
                v += (d * yj / r) * ext.pairings[j][i];
            }
            v >= 0
        })
    })
}

fn homology_suite(g: &DecoratedGraph) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("homology");
    let basis = g.homology_basis()?;
    rep.check(basis.len() == g.h1(), || {
        "basis size differs from h1".into()
    });
    for (i, c) in basis.iter().enumerate() {
        rep.check(g.is_cycle(c), || {
            format!("basis element {i} has nonzero boundary")
        });
        for d in &basis {
            let a = g.intersection_pairing(c, d)?;
            let b = g.intersection_pairing(d, c)?;
            rep.check(a == b, || "pairing is not symmetric".into());
        }
        rep.check(g.intersection_pairing(c, c)?.is_nonnegative(), || {
            format!("self-pairing of basis element {i} is negative")
        });
    }
    Ok(rep)
}

fn iso_suite(g: &DecoratedGraph, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("iso_classes");
    let basis = g.homology_basis()?;
    let r = cfg.r;
    let span = cfg.height + 1;
    let coords: Vec<Vec<i64>> = residue_tuples(basis.len(), span)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x - cfg.height / 2).collect())
        .take(64)
        .collect();
    for a in &coords {
        for b in &coords {
            let g1 = Cycle::combine(&basis, a, g.n_edges());
            let g2 = Cycle::combine(&basis, b, g.n_edges());
            let divisible = a.iter().zip(b).all(|(x, y)| (x - y) % r == 0);
            match iso_gamma_classes(g, &g1, &g2, r)? {
                GammaComparison::Isomorphic(iso) => {
                    rep.check(divisible, || format!("iso returned for {a:?} vs {b:?}"));
                    let m1 = build_gamma_over_r(g, &g1, r)?;
                    let m2 = build_gamma_over_r(g, &g2, r)?;
                    for j in 0..m1.slots() {
                        let x = m1.slot_generator(j);
                        rep.check(m1.value(&x) == m2.value(&iso.apply(&x)), || {
                            format!("iso does not preserve values for {a:?} vs {b:?}")
                        });
                    }
                }
                GammaComparison::Distinct { witness } => {
                    rep.check(!divisible, || format!("no iso for {a:?} vs {b:?}"));
                    if let Some(w) = witness {
                        let p = g.pairing_chart(&g1.sub(&g2), &w)?;
                        rep.check(p.iter().any(|x| x % r != 0), || {
                            "witness pairing is divisible".into()
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

fn random_member(ext: &ExtendedMonoid, rng: &mut ChaCha8Rng, h: i64) -> crate::monoid::ExtElement {
    loop {
        let m: Vec<i64> = (0..ext.rank).map(|_| rng.gen_range(-h..=h)).collect();
        let y: Vec<i64> = (0..ext.slots()).map(|_| rng.gen_range(0..ext.r)).collect();
        let x = ext.normal_form(&m, &y);
        if ext.contains(&x).unwrap_or(false) {
            return x;
        }
    }
}

fn integrality_suite(
    g: &DecoratedGraph,
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("integrality");
    let basis = g.homology_basis()?;
    for _ in 0..cfg.trials {
        let a: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(0..cfg.r)).collect();
        let ext = build_gamma_over_r(g, &Cycle::combine(&basis, &a, g.n_edges()), cfg.r)?;
        let n1 = random_member(&ext, rng, cfg.height + 2);
        let m1: Vec<i64> = (0..ext.rank)
            .map(|_| rng.gen_range(0..=cfg.height))
            .collect();
        // n2 = n1 + m1 − m2 with m2 ≤ m1 + α(n1) keeping n2 inside
        let m2: Vec<i64> = m1.iter().map(|&x| rng.gen_range(0..=x)).collect();
        let diff: Vec<i64> = m1.iter().zip(&m2).map(|(x, y)| x - y).collect();
        let n2 = ext.add(&n1, &ext.from_base(&diff));
        let w = integrality_witness(&ext, &m1, &m2, &n1, &n2)?;
        let ok1 = ext.add(&w.n_common, &ext.from_base(&w.m1)) == n1
            && ext.add(&w.n_common, &ext.from_base(&w.m2)) == n2;
        let ok2 = m1.iter().zip(&w.m1).map(|(a, b)| a + b).collect::<Vec<_>>()
            == m2.iter().zip(&w.m2).map(|(a, b)| a + b).collect::<Vec<_>>();
        let ok3 = ext.contains(&w.n_common)? && w.m1.iter().chain(&w.m2).all(|&x| x >= 0);
        rep.check(ok1 && ok2 && ok3, || {
            format!("witness fails for n1 = {n1:?}")
        });
    }
    Ok(rep)
}

fn extensions(g: &DecoratedGraph, r: i64) -> Result<Vec<ExtendedMonoid>> {
    let basis = g.homology_basis()?;
    let mut out = Vec::new();
    for a in residue_tuples(basis.len(), r) {
        out.push(build_gamma_over_r(
            g,
            &Cycle::combine(&basis, &a, g.n_edges()),
            r,
        )?);
    }
    out.push(build_xsr(g, r)?);
    Ok(out)
}

fn saturation_suite(g: &DecoratedGraph, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("saturation");
    let h = cfg.height;
    for ext in extensions(g, cfg.r)? {
        let ms = residue_tuples(ext.rank, 2 * h + 1);
        let ys = residue_tuples(ext.slots(), ext.r);
        for m in &ms {
            let m: Vec<i64> = m.iter().map(|x| x - h).collect();
            for y in &ys {
                let nf = ext.normal_form(&m, y);
                let fast = ext.contains(&nf)?;
                let slow = raw_saturation_member(&ext, &m, y);
                rep.check(fast == slow, || {
                    format!("membership differs at m = {m:?}, y = {y:?}")
                });
            }
        }
    }
    Ok(rep)
}

fn kummer_suite(g: &DecoratedGraph, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("kummer");
    for ext in extensions(g, cfg.r)? {
        rep.check(kummer_check(&ext.inclusion()), || {
            format!("{:?} fails", ext.kind)
        });
    }
    Ok(rep)
}

fn torsion_suite(g: &DecoratedGraph, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("torsion");
    let r = cfg.r;
    let pts = torsion_points(g, r, 1)?;
    rep.check(pts.len() as i64 == r.pow(g.h1() as u32), || {
        "wrong class count".into()
    });
    let div: Vec<&Vec<i64>> = pts
        .iter()
        .filter(|p| p.divisible)
        .map(|p| &p.residues)
        .collect();
    for a in &div {
        for b in &div {
            let s: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| (x + y) % r).collect();
            rep.check(div.contains(&&s), || {
                format!("{a:?} + {b:?} leaves the divisible locus")
            });
        }
    }
    for p in &pts {
        let gamma = Cycle::combine(&g.homology_basis()?, &p.residues, g.n_edges());
        rep.check(torsion_kernel_check(g, &gamma, r)?, || {
            format!("kernel not torsion for {:?}", p.residues)
        });
        if p.divisible {
            rep.check(p.chart.is_trivial(), || {
                format!("chart of {:?} is not M", p.residues)
            });
        }
    }
    let rooted = torsion_points(g, r, r)?;
    rep.check(rooted.iter().all(|p| p.divisible), || {
        "roots adjoined but class not divisible".into()
    });
    Ok(rep)
}

fn coset_suite(g_r: &DecoratedGraph, deg_l: &Divisor, r: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("cosets");
    let reps = coset_representatives(g_r, deg_l, r)?;
    rep.check(reps.len() as i64 == r.pow(g_r.h1() as u32), || {
        "class count is not r^h1".into()
    });
    for c in &reps {
        let lhs = c.d.scale(r);
        let rhs = deg_l.add(&nabla(g_r, &c.alpha)?);
        rep.check(lhs == rhs, || {
            format!("rD != degL + ∇α for {:?}", c.residues)
        });
        rep.check(c.alpha.vanishes_on_original(g_r), || {
            "α does not vanish on V".into()
        });
        let n = normalize_alpha(g_r, deg_l, &c.d, &c.alpha, r)?;
        rep.check(n == (c.d.clone(), c.alpha.clone()), || {
            "normalization is not idempotent".into()
        });
        for u in interior_vertices(g_r) {
            let beta = primitive_beta(g_r, u)?;
            let moved = shift_rep(g_r, c, &beta, r)?;
            rep.check(compare_reps(g_r, c, &moved, r)? == Some(beta), || {
                format!("compare_reps misses the shift at vertex {u}")
            });
        }
    }
    Ok(rep)
}

fn shift_law_suite(
    g_r: &DecoratedGraph,
    deg_l: &Divisor,
    cfg: &VerifyConfig,
) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("shift_law");
    for c in coset_representatives(g_r, deg_l, cfg.r)? {
        for u in interior_vertices(g_r) {
            for s in 1..=cfg.s_max {
                let (lhs, rhs) = shift_law_sides(g_r, &c.d, u, s, cfg.d_max)?;
                rep.check(lhs == rhs, || {
                    format!(
                        "class {:?}, vertex {u}, s = {s}: {lhs} vs {rhs}",
                        c.residues
                    )
                });
            }
        }
    }
    Ok(rep)
}

fn independence_suite(
    g_r: &DecoratedGraph,
    deg_l: &Divisor,
    cfg: &VerifyConfig,
) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("independence");
    let r = cfg.r;
    for c in coset_representatives(g_r, deg_l, r)? {
        let base = class_series(g_r, &c, r, cfg.d_max, cfg.policy)?;
        for u in interior_vertices(g_r) {
            let moved = shift_rep(g_r, &c, &primitive_beta(g_r, u)?, r)?;
            let other = class_series(g_r, &moved, r, cfg.d_max, cfg.policy)?;
            for d in 0..=cfg.d_max {
                rep.check(base.p_d(d) == other.p_d(d), || {
                    format!(
                        "class {:?}, vertex {u}, d = {d}: {} vs {}",
                        c.residues,
                        base.p_d(d),
                        other.p_d(d)
                    )
                });
            }
        }
    }
    Ok(rep)
}

fn interpolation_suite(
    g_r: &DecoratedGraph,
    deg_l: &Divisor,
    cfg: &VerifyConfig,
) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("interpolation");
    let wider = SamplingPolicy {
        extra_samples: cfg.policy.extra_samples + 3,
        ..cfg.policy
    };
    for c in coset_representatives(g_r, deg_l, cfg.r)? {
        let a = p_w(g_r, &c.d, cfg.d_max, cfg.policy);
        let b = p_w(g_r, &c.d, cfg.d_max, wider);
        rep.check(a.is_ok() && a == b, || {
            format!("unstable fit for class {:?}", c.residues)
        });
    }
    Ok(rep)
}

/// Runs every suite on `g` with `L` trivial.
pub fn run_all(g: &DecoratedGraph, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let g_r = g.subdivide(cfg.r as usize)?;
    let deg_l = Divisor::zero(g_r.n_vertices());
    Ok(vec![
        homology_suite(g)?,
        iso_suite(g, cfg)?,
        integrality_suite(g, cfg, &mut rng)?,
        saturation_suite(g, cfg)?,
        kummer_suite(g, cfg)?,
        torsion_suite(g, cfg)?,
        coset_suite(&g_r, &deg_l, cfg.r)?,
        shift_law_suite(&g_r, &deg_l, cfg)?,
        independence_suite(&g_r, &deg_l, cfg)?,
        interpolation_suite(&g_r, &deg_l, cfg)?,
    ])
}
