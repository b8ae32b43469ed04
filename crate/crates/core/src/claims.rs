//! The acceptance claims as executable checks, shared by the test suite
//! and `sx verify-paper`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certificate::lift_to_shelling;
use crate::certify::{
    certify_k_shelled, certify_k_stacked_sphere, certify_k_stellated, collapse, ear_scan, flip_scan, is_k_stacked_ball,
    is_one_stacked_ball, is_tight_exhaustive, tightness_required_beta, SearchBudget, Status,
};
use crate::complex::{binomial, Face};
use crate::constructions::{
    self, connected_sum, cross_polytope, klee_novik, klee_novik_bar, klee_novik_bar_facet_count, klee_novik_map,
    murai_nevo_bar_manifold, product_sphere_betti, subset_closure, vertex_ball, KleeNovikMap,
};
use crate::corpus;
use crate::homology::{betti, screen_homology_sphere, CoefficientField};
use crate::label::Label;
use crate::moves::{self, apply_bistellar, apply_shelling, bistellar_options};
use crate::random::{random_k_shelled_ball, random_k_stellated_sphere, random_stacked_sphere};
use crate::symmetry::{automorphism_group, is_isomorphic, DEFAULT_GUARD};

/// One sub-check of a claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Claim {
    /// Names of the failed sub-checks.
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ClaimOptions {
    /// Trials per randomized property.
    pub trials: usize,
    pub seed: u64,
    pub budget: SearchBudget,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        ClaimOptions { trials: 200, seed: 2024, budget: SearchBudget::default() }
    }
}

pub const TITLES: [&str; 10] = [
    "fixture f-vectors",
    "unflippable 3-sphere",
    "vertex balls are 2-stacked",
    "Ziegler suite",
    "Lutz suite",
    "Klee-Novik suite",
    "randomized property suites",
    "closure decisiveness on cross-polytopes",
    "tightness at desk scale",
    "double-suspension pipeline",
];

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    fn ok(&mut self, name: impl Into<String>, pass: bool) {
        self.add(name, pass, "");
    }

    /// Records an error as a failed check.
    fn run(&mut self, name: &str, f: impl FnOnce(&mut Checks) -> crate::Result<()>) {
        if let Err(e) = f(self) {
            self.add(name, false, e.to_string());
        }
    }
}

pub fn verify(id: u32, opts: &ClaimOptions) -> Claim {
    let mut c = Checks::default();
    match id {
        1 => claim_1(&mut c),
        2 => claim_2(&mut c),
        3 => claim_3(&mut c),
        4 => claim_4(&mut c, opts),
        5 => claim_5(&mut c, opts),
        6 => claim_6(&mut c),
        7 => claim_7(&mut c, opts),
        8 => claim_8(&mut c),
        9 => claim_9(&mut c),
        10 => claim_10(&mut c),
        _ => c.add("known claim", false, format!("no claim {id}")),
    }
    let title = TITLES.get(id as usize - 1).copied().unwrap_or("unknown");
    let pass = !c.0.is_empty() && c.0.iter().all(|x| x.pass);
    Claim { id, title, pass, checks: c.0 }
}

pub fn verify_all(opts: &ClaimOptions) -> Vec<Claim> {
    (1..=10).map(|i| verify(i, opts)).collect()
}

fn claim_1(c: &mut Checks) {
    for (name, want) in [("dfm_s3_16", vec![16, 120, 208, 104]), ("bl_sigma3_16", vec![16, 106, 180, 90])] {
        c.run(name, |c| {
            let got = corpus::complex(name)?.f_vector().0;
            c.add(name, got == want, format!("{got:?}"));
            Ok(())
        });
    }
}

fn claim_2(c: &mut Checks) {
    c.run("dfm_s3_16", |c| {
        let s = corpus::complex("dfm_s3_16")?;
        c.ok("2-neighborly", s.is_l_neighborly(2));
        let deg3 = s.faces_of_dim(1).into_iter().filter(|e| s.star(e).map(|x| x.facet_count() == 3).unwrap_or(false)).count();
        c.add("no edge in exactly 3 facets", deg3 == 0, format!("{deg3} such edges"));
        let moves = flip_scan(&s, 1, 3);
        c.add("no move of index 1..3", moves.is_empty(), format!("{} moves", moves.len()));
        Ok(())
    });
}

fn claim_3(c: &mut Checks) {
    c.run("dfm_s3_16", |c| {
        let s = corpus::complex("dfm_s3_16")?;
        for v in s.vertices() {
            let b = vertex_ball(&s, &v)?;
            let stacked = is_k_stacked_ball(&b, 2)?.status == Status::Proved;
            c.ok(format!("vertex {v}: 2-stacked ball bounding the sphere"), stacked && b.boundary()? == s);
        }
        Ok(())
    });
}

fn claim_4(c: &mut Checks, opts: &ClaimOptions) {
    c.run("ziegler", |c| {
        let b1 = corpus::complex("ziegler_b1")?;
        let b2 = corpus::complex("ziegler_b2")?;
        let s2 = corpus::complex("ziegler_s2_10")?;
        c.ok("boundaries agree", b1.boundary()? == s2 && b2.boundary()? == s2);
        c.ok("B1 1-stacked", is_one_stacked_ball(&b1)?.status == Status::Proved);
        c.ok("B2 has no ears", ear_scan(&b2)?.is_empty());
        let budget = SearchBudget { max_nodes: u64::MAX, ..opts.budget.clone() };
        let v = certify_k_shelled(&b2, 3, &budget);
        c.add("B2 not 3-shelled", v.status == Status::Refuted, format!("{} nodes", v.budget_spent.nodes));
        c.ok("B2 collapsible", collapse(&b2, &opts.budget).status == Status::Proved);
        Ok(())
    });
}

fn claim_5(c: &mut Checks, opts: &ClaimOptions) {
    c.run("lutz", |c| {
        let b1 = corpus::complex("lutz_b1")?;
        let b2 = corpus::complex("lutz_b2")?;
        let s2 = corpus::complex("lutz_s2_8")?;
        c.ok("boundaries agree", b1.boundary()? == s2 && b2.boundary()? == s2);
        let cert = corpus::certificate("lutz_b2_shelling_cert")?;
        let r = cert.replay()?;
        c.ok("printed shelling replays", r.result == b2);
        c.add("every move of index at most 1", cert.max_index() <= Some(1), format!("{:?}", cert.max_index()));
        let ears = ear_scan(&b2)?;
        c.add("unique ear 2457", ears == vec![Face::new([2, 4, 5, 7])], format!("{ears:?}"));
        c.ok("search also shells at k=2", certify_k_shelled(&b2, 2, &opts.budget).is_proved());
        Ok(())
    });
}

fn claim_6(c: &mut Checks) {
    for (k, d) in [(0, 1), (1, 2), (1, 3), (1, 4), (2, 4), (2, 5)] {
        c.run(&format!("({k},{d})"), |c| {
            let bar = klee_novik_bar(k, d)?;
            let m = klee_novik(k, d)?;
            c.ok(format!("({k},{d}) facet count"), bar.facet_count() as u64 == klee_novik_bar_facet_count(k, d));
            c.ok(format!("({k},{d}) f0 = 2d+4"), m.vertex_count() as i64 == 2 * d + 4);
            for w in [KleeNovikMap::D, KleeNovikMap::E, KleeNovikMap::R] {
                c.ok(format!("({k},{d}) {w:?} automorphism"), constructions::is_automorphism(&bar, &klee_novik_map(w, k, d)));
            }
            let b = betti(&m, CoefficientField::Rational).reduced_betti;
            c.add(format!("({k},{d}) rational Betti"), b == product_sphere_betti(k, d), format!("{b:?}"));
            if d > 2 * k {
                let order = automorphism_group(&m, DEFAULT_GUARD)?.order;
                c.add(format!("({k},{d}) |Aut| = 4d+8"), order == num_bigint::BigUint::from((4 * d + 8) as u64), format!("computed {order}"));
            }
            if d >= 2 * k + 2 {
                c.ok(format!("({k},{d}) closure recovers the bar"), murai_nevo_bar_manifold(&m, k as usize) == bar);
            }
            Ok(())
        });
    }
}

fn claim_7(c: &mut Checks, opts: &ClaimOptions) {
    let trials = opts.trials;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let budget = &opts.budget;
    let mut tally = |name: &str, c: &mut Checks, f: &mut dyn FnMut(&mut ChaCha8Rng) -> crate::Result<bool>| {
        let mut bad = Vec::new();
        for t in 0..trials {
            match f(&mut rng) {
                Ok(true) => {}
                Ok(false) => bad.push(format!("trial {t}")),
                Err(e) => bad.push(format!("trial {t}: {e}")),
            }
        }
        c.add(name, bad.is_empty(), format!("{trials} trials{}", if bad.is_empty() { String::new() } else { format!("; failed {}", bad.join(", ")) }));
    };

    tally("boundary commutes with moves", c, &mut |rng| {
        let d = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=d - 1);
        let (_, cert) = random_k_shelled_ball(d, k, rng.gen_range(1..8), rng)?;
        let mut y = cert.start.resolve()?;
        for m in &cert.moves {
            let next = apply_shelling(&y, m)?;
            if next.boundary()? != apply_bistellar(&y.boundary()?, m)? {
                return Ok(false);
            }
            y = next;
        }
        Ok(true)
    });

    tally("bistellar reversibility", c, &mut |rng| {
        let d = rng.gen_range(1..=4);
        let (s, _) = random_k_stellated_sphere(d, d + 1, rng.gen_range(0..6), rng)?;
        let opts = bistellar_options(&s, 0, d as i64);
        let Some(m) = opts.get(rng.gen_range(0..opts.len().max(1))) else { return Ok(true) };
        let t = apply_bistellar(&s, m)?;
        Ok(apply_bistellar(&t, &m.reverse())? == s)
    });

    tally("k-shelled balls are shellable and k-stacked", c, &mut |rng| {
        let dim = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=dim.min(2));
        let (b, _) = random_k_shelled_ball(dim, k, rng.gen_range(0..7), rng)?;
        Ok(is_k_stacked_ball(&b, k as i64)?.is_proved() && certify_k_shelled(&b, k as i64, budget).is_proved())
    });

    tally("stellated sphere to shelled ball round trip", c, &mut |rng| {
        let k = rng.gen_range(1..=2usize);
        let d = rng.gen_range(2 * k - 1..=2 * k + 1);
        let (s, cert) = random_k_stellated_sphere(d, k, rng.gen_range(1..7), rng)?;
        let ball = if d >= 2 * k {
            subset_closure(&s, k + 1)
        } else {
            lift_to_shelling(&cert)?.replay()?.result
        };
        Ok(ball.boundary()? == s && certify_k_shelled(&ball, k as i64, budget).is_proved())
    });

    tally("three 1-stackedness tests agree", c, &mut |rng| {
        let dim = rng.gen_range(1..=5);
        let (b, _) = random_k_shelled_ball(dim, 1, rng.gen_range(0..8), rng)?;
        Ok(is_one_stacked_ball(&b)?.is_proved()
            && is_k_stacked_ball(&b, 1)?.is_proved()
            && certify_k_shelled(&b, 1, budget).is_proved())
    });

    tally("stacked spheres have no middle flips", c, &mut |rng| {
        let d = rng.gen_range(3..=5);
        let s = random_stacked_sphere(d, rng.gen_range(1..8), rng)?;
        Ok(flip_scan(&s, 2, d as i64 - 1).is_empty())
    });

    tally("1-stellated spheres closed under connected sum", c, &mut |rng| {
        let d = rng.gen_range(2..=4);
        let s = random_stacked_sphere(d, rng.gen_range(0..5), rng)?;
        let t = random_stacked_sphere(d, rng.gen_range(0..5), rng)?;
        let rename = t.labels().iter().map(|l| (l.clone(), Label::name(&format!("{l}p")))).collect();
        let t = t.relabel(&rename)?;
        let fs = s.facets();
        let ft = t.facets();
        let f = &fs[rng.gen_range(0..fs.len())];
        let g = &ft[rng.gen_range(0..ft.len())];
        let matching: Vec<(Label, Label)> = f.labels().iter().cloned().zip(g.labels().iter().cloned()).collect();
        let sum = connected_sum(&s, &t, f, g, &matching)?;
        Ok(certify_k_stellated(&sum, 1, budget).is_proved())
    });
}

fn claim_8(c: &mut Checks) {
    for d in 2..=4 {
        c.run(&format!("d={d}"), |c| {
            let x = cross_polytope(d)?;
            let v = certify_k_stacked_sphere(&x, d - 1);
            c.add(format!("d={d}: not (d-1)-stacked"), v.status == Status::Refuted, v.status.to_string());
            Ok(())
        });
    }
}

fn claim_9(c: &mut Checks) {
    for field in [CoefficientField::Prime(2), CoefficientField::Rational] {
        for d in 0..=3 {
            c.run("ball", |c| {
                let b = moves::standard_ball(d, None)?;
                c.ok(format!("simplex d={d} over {field} tight"), is_tight_exhaustive(&b, field, 16)?.is_proved());
                Ok(())
            });
        }
        for k in 0..=3 {
            c.run("cone", |c| {
                let cone = moves::standard_sphere(k, None)?.cone(Label::name("apex"))?;
                let v = is_tight_exhaustive(&cone, field, 16)?;
                c.ok(format!("cone over sphere k={k} over {field} not tight"), v.status == Status::Refuted);
                Ok(())
            });
        }
    }
    let mut grid_ok = true;
    for k in 0..=3u64 {
        for n in 0..=30u64 {
            let num = if n >= k + 3 { binomial(n - k - 3, k + 1) } else { 0 };
            let den = binomial(2 * k + 3, k + 1);
            let want = (num % den == 0).then(|| num / den);
            grid_ok &= tightness_required_beta(k, n) == want;
        }
    }
    c.ok("closed form on k <= 3, n <= 30", grid_ok);
}

fn claim_10(c: &mut Checks) {
    c.run("pipeline", |c| {
        let sigma = corpus::complex("bl_sigma3_16")?;
        let p = constructions::double_suspension_pipeline(&sigma, &Label::name("6p"))?;
        c.ok("D6 2-stacked", is_k_stacked_ball(&p.d6_18, 2)?.is_proved());
        c.ok("boundary of D6 is S5", p.d6_18.boundary()? == p.s5_18);
        let link = p.s5_18.link(&Face::new([Label::name("a"), Label::name("b")]))?;
        c.ok("edge link isomorphic to the homology sphere", is_isomorphic(&link, &sigma, DEFAULT_GUARD)?.is_some());
        let fields = [CoefficientField::Rational, CoefficientField::Prime(2), CoefficientField::Prime(3)];
        c.ok("S5 screens as a 5-sphere", screen_homology_sphere(&p.s5_18, &fields).pass);
        c.ok("S5 has 18 vertices", p.s5_18.vertex_count() == 18);
        Ok(())
    });
}
