//! Named example complexes with self-validating expectations.
//!
//! Facet lists ship as embedded `.fac` files. The 16-vertex 2-neighbourly
//! sphere ships as orbit seeds and is expanded under `i ↦ i+1 (mod 16)` on
//! load. Derived complexes (vertex balls, the double-suspension pipeline,
//! the shelling certificate) are rebuilt from those. Every fixture checks
//! its expected record when it is first loaded.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::certificate::{self, MoveCertificate};
use crate::complex::{Complex, Face};
use crate::constructions;
use crate::error::{Error, Result};
use crate::io::parse_fac;
use crate::label::Label;

const DFM_SEEDS: &str = include_str!("data/dfm_s3_16_seeds.fac");
const BL_SIGMA: &str = include_str!("data/bl_sigma3_16.fac");
const ZIEGLER_S3: &str = include_str!("data/ziegler_s3_10.fac");
const ZIEGLER_S2: &str = include_str!("data/ziegler_s2_10.fac");
const LUTZ_S3: &str = include_str!("data/lutz_s3_8.fac");
const LUTZ_S2: &str = include_str!("data/lutz_s2_8.fac");
const LUTZ_SHELLING: &str = include_str!("data/lutz_b2_shelling.fac");

/// Every registered fixture name.
pub const NAMES: [&str; 17] = [
    "dfm_s3_16",
    "dfm_b4_16",
    "bl_sigma3_16",
    "d4_16",
    "s5_18",
    "d6_18",
    "d7_19",
    "s6_19",
    "ziegler_s3_10",
    "ziegler_s2_10",
    "ziegler_b1",
    "ziegler_b2",
    "lutz_s3_8",
    "lutz_s2_8",
    "lutz_b1",
    "lutz_b2",
    "lutz_b2_shelling_cert",
];

#[derive(Clone, Debug)]
pub enum FixtureData {
    Complex(Complex),
    Certificate(MoveCertificate),
}

/// Properties a fixture must have; unset fields are not checked.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_vector: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_lengths: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighborly: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed: Option<bool>,
    /// Name of the fixture equal to this complex's boundary.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ears: Option<Vec<Face>>,
    /// Replay length of a certificate fixture.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    /// Name of the fixture a certificate must replay to.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replays_to: Option<&'static str>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub provenance: &'static str,
    pub data: FixtureData,
    pub expected: Expected,
}

impl Fixture {
    pub fn complex(&self) -> Result<&Complex> {
        match &self.data {
            FixtureData::Complex(c) => Ok(c),
            FixtureData::Certificate(_) => Err(Error::BadParameters(format!("{} is a certificate", self.name))),
        }
    }

    pub fn certificate(&self) -> Result<&MoveCertificate> {
        match &self.data {
            FixtureData::Certificate(c) => Ok(c),
            FixtureData::Complex(_) => Err(Error::BadParameters(format!("{} is a complex", self.name))),
        }
    }

    /// Checks every set field of the expected record.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str, want: String, got: String| {
            Err(Error::Parse(format!("fixture {}: expected {what} {want}, got {got}", self.name)))
        };
        let e = &self.expected;
        match &self.data {
            FixtureData::Complex(c) => {
                if let Some(f) = &e.f_vector {
                    let got = c.f_vector().0;
                    if *f != got {
                        return fail("f-vector", format!("{f:?}"), format!("{got:?}"));
                    }
                }
                if let Some(n) = e.facet_count {
                    if c.facet_count() != n {
                        return fail("facet count", n.to_string(), c.facet_count().to_string());
                    }
                }
                if let Some(n) = e.vertex_count {
                    if c.vertex_count() != n {
                        return fail("vertex count", n.to_string(), c.vertex_count().to_string());
                    }
                }
                if let Some(l) = e.neighborly {
                    if !c.is_l_neighborly(l) {
                        return fail("neighbourliness", l.to_string(), "less".into());
                    }
                }
                if let Some(closed) = e.closed {
                    if c.classify().closed != closed {
                        return fail("closed", closed.to_string(), (!closed).to_string());
                    }
                }
                if let Some(b) = e.boundary {
                    let other = complex(b)?;
                    if c.boundary()? != other {
                        return fail("boundary", b.to_string(), "a different complex".into());
                    }
                }
                if let Some(ears) = &e.ears {
                    let got = crate::certify::ears::ear_scan(c)?;
                    if *ears != got {
                        return fail("ears", format!("{ears:?}"), format!("{got:?}"));
                    }
                }
            }
            FixtureData::Certificate(cert) => {
                let r = cert.replay()?;
                if let Some(n) = e.length {
                    if r.length != n {
                        return fail("length", n.to_string(), r.length.to_string());
                    }
                }
                if let Some(t) = e.replays_to {
                    if r.result != complex(t)? {
                        return fail("replay result", t.to_string(), "a different complex".into());
                    }
                }
            }
        }
        Ok(())
    }
}

/// Union of the orbits of `seeds` under the cyclic group generated by
/// `generator`; also returns each seed's orbit length.
pub fn expand_orbits(seeds: &[Face], generator: &HashMap<Label, Label>) -> Result<(Complex, Vec<usize>)> {
    let apply = |f: &Face| Face::new(f.labels().iter().map(|l| generator.get(l).cloned().unwrap_or_else(|| l.clone())));
    let mut all: Vec<Face> = Vec::new();
    let mut lengths = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let mut cur = seed.clone();
        let mut len = 0;
        loop {
            all.push(cur.clone());
            len += 1;
            cur = apply(&cur);
            if cur == *seed {
                break;
            }
            if len > 1 << 20 {
                return Err(Error::BadParameters("generator orbit does not close".into()));
            }
        }
        lengths.push(len);
    }
    Ok((Complex::from_faces(&all)?, lengths))
}

fn faces_of(text: &str) -> Vec<Face> {
    parse_fac_order(text)
}

/// Facets in file order (the canonical complex would reorder them).
fn parse_fac_order(text: &str) -> Vec<Face> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .filter(|l| !l.trim().is_empty())
        .map(|l| Face::new(l.split_whitespace().map(Label::name)))
        .collect()
}

fn fac(text: &str) -> Complex {
    parse_fac(text).expect("embedded fixture parses")
}

fn sub(text: &str, range: std::ops::Range<usize>) -> Complex {
    Complex::from_faces(&faces_of(text)[range]).expect("embedded fixture parses")
}

fn dfm_generator() -> HashMap<Label, Label> {
    (0..16).map(|i| (Label::Num(i), Label::Num((i + 1) % 16))).collect()
}

fn build(name: &str) -> Result<Fixture> {
    let ex = Expected::default;
    let cx = |name: &'static str, provenance: &'static str, c: Complex, expected: Expected| Fixture {
        name,
        provenance,
        data: FixtureData::Complex(c),
        expected,
    };
    let fx = match name {
        "dfm_s3_16" => {
            let (c, lengths) = expand_orbits(&faces_of(DFM_SEEDS), &dfm_generator())?;
            cx(
                "dfm_s3_16",
                "Dougherty-Faber-Murphy unflippable 3-sphere, orbit seeds under i -> i+1 mod 16",
                c,
                Expected {
                    f_vector: Some(vec![16, 120, 208, 104]),
                    orbit_lengths: Some(vec![16, 16, 16, 8, 16, 16, 16]),
                    neighborly: Some(2),
                    closed: Some(true),
                    ..ex()
                },
            )
            .with_orbits(lengths)?
        }
        "dfm_b4_16" => cx(
            "dfm_b4_16",
            "vertex ball over vertex 0 of dfm_s3_16",
            constructions::vertex_ball(&complex("dfm_s3_16")?, &Label::Num(0))?,
            Expected { vertex_count: Some(16), boundary: Some("dfm_s3_16"), ..ex() },
        ),
        "bl_sigma3_16" => cx(
            "bl_sigma3_16",
            "Bjorner-Lutz 16-vertex Poincare homology 3-sphere",
            fac(BL_SIGMA),
            Expected { f_vector: Some(vec![16, 106, 180, 90]), closed: Some(true), ..ex() },
        ),
        "d4_16" => cx(
            "d4_16",
            "facets of bl_sigma3_16 avoiding 6p, each coned with 6p",
            pipeline()?.d4_16,
            Expected { vertex_count: Some(16), boundary: Some("bl_sigma3_16"), ..ex() },
        ),
        "s5_18" => cx(
            "s5_18",
            "boundary of d4_16 joined with an edge ab",
            pipeline()?.s5_18,
            Expected { vertex_count: Some(18), closed: Some(true), ..ex() },
        ),
        "d6_18" => cx(
            "d6_18",
            "d4_16 joined with an edge ab",
            pipeline()?.d6_18,
            Expected { vertex_count: Some(18), boundary: Some("s5_18"), ..ex() },
        ),
        "d7_19" => cx(
            "d7_19",
            "d4_16 joined with a triangle abc",
            pipeline()?.d7_19,
            Expected { vertex_count: Some(19), boundary: Some("s6_19"), ..ex() },
        ),
        "s6_19" => cx(
            "s6_19",
            "boundary of d7_19",
            pipeline()?.s6_19,
            Expected { vertex_count: Some(19), closed: Some(true), ..ex() },
        ),
        "ziegler_s3_10" => cx(
            "ziegler_s3_10",
            "Ziegler 3-sphere on 10 vertices",
            fac(ZIEGLER_S3),
            Expected { facet_count: Some(28), closed: Some(true), ..ex() },
        ),
        "ziegler_s2_10" => cx(
            "ziegler_s2_10",
            "boundary 2-sphere shared by the Ziegler balls",
            fac(ZIEGLER_S2),
            Expected { facet_count: Some(16), closed: Some(true), ..ex() },
        ),
        "ziegler_b1" => cx(
            "ziegler_b1",
            "first seven facets of ziegler_s3_10",
            sub(ZIEGLER_S3, 0..7),
            Expected { facet_count: Some(7), boundary: Some("ziegler_s2_10"), ..ex() },
        ),
        "ziegler_b2" => cx(
            "ziegler_b2",
            "last twenty-one facets of ziegler_s3_10 (non-shellable ball)",
            sub(ZIEGLER_S3, 7..28),
            Expected { facet_count: Some(21), boundary: Some("ziegler_s2_10"), ears: Some(vec![]), ..ex() },
        ),
        "lutz_s3_8" => cx(
            "lutz_s3_8",
            "Lutz 2-neighbourly 3-sphere on 8 vertices",
            fac(LUTZ_S3),
            Expected { facet_count: Some(20), neighborly: Some(2), closed: Some(true), ..ex() },
        ),
        "lutz_s2_8" => cx(
            "lutz_s2_8",
            "boundary 2-sphere shared by the Lutz balls",
            fac(LUTZ_S2),
            Expected { facet_count: Some(12), closed: Some(true), ..ex() },
        ),
        "lutz_b1" => cx(
            "lutz_b1",
            "first five facets of lutz_s3_8",
            sub(LUTZ_S3, 0..5),
            Expected { facet_count: Some(5), boundary: Some("lutz_s2_8"), ..ex() },
        ),
        "lutz_b2" => cx(
            "lutz_b2",
            "last fifteen facets of lutz_s3_8 (shellable ball with a unique ear)",
            sub(LUTZ_S3, 5..20),
            Expected {
                facet_count: Some(15),
                boundary: Some("lutz_s2_8"),
                ears: Some(vec![Face::new([2, 4, 5, 7])]),
                ..ex()
            },
        ),
        "lutz_b2_shelling_cert" => Fixture {
            name: "lutz_b2_shelling_cert",
            provenance: "printed shelling order of lutz_b2 starting from 1357",
            data: FixtureData::Certificate(certificate::from_shelling_order(&faces_of(LUTZ_SHELLING))?),
            expected: Expected { length: Some(14), replays_to: Some("lutz_b2"), ..ex() },
        },
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(fx)
}

impl Fixture {
    fn with_orbits(self, lengths: Vec<usize>) -> Result<Fixture> {
        if let Some(want) = &self.expected.orbit_lengths {
            if *want != lengths {
                return Err(Error::Parse(format!("fixture {}: orbit lengths {lengths:?}", self.name)));
            }
        }
        Ok(self)
    }
}

fn pipeline() -> Result<constructions::DoubleSuspension> {
    constructions::double_suspension_pipeline(&complex("bl_sigma3_16")?, &Label::name("6p"))
}

fn cache() -> &'static Mutex<HashMap<String, Arc<Fixture>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Fixture>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Loads (once) and validates the named fixture.
pub fn fixture(name: &str) -> Result<Arc<Fixture>> {
    if let Some(f) = cache().lock().expect("fixture cache").get(name) {
        return Ok(f.clone());
    }
    let f = Arc::new(build(name)?);
    f.validate()?;
    cache().lock().expect("fixture cache").insert(name.to_string(), f.clone());
    Ok(f)
}

/// The complex of a named fixture.
pub fn complex(name: &str) -> Result<Complex> {
    fixture(name)?.complex().cloned()
}

/// The certificate of a named fixture.
pub fn certificate(name: &str) -> Result<MoveCertificate> {
    fixture(name)?.certificate().cloned()
}

pub fn list() -> &'static [&'static str] {
    &NAMES
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_validate() {
        for name in NAMES {
            fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_fixture() {
        assert_eq!(fixture("nope").unwrap_err(), Error::UnknownFixture("nope".into()));
    }

    #[test]
    fn orbit_lengths() {
        let g = dfm_generator();
        let (_, l) = expand_orbits(&[Face::new([0, 1, 8, 9])], &g).unwrap();
        assert_eq!(l, vec![8]);
        let fixed: HashMap<Label, Label> = HashMap::new();
        let (c, l) = expand_orbits(&[Face::new([1, 2, 3])], &fixed).unwrap();
        assert_eq!(l, vec![1]);
        assert_eq!(c.facet_count(), 1);
    }

    #[test]
    fn dfm_has_no_degree_three_edge() {
        let s = complex("dfm_s3_16").unwrap();
        for e in s.faces_of_dim(1) {
            let deg = s.facets().iter().filter(|f| e.is_subset(f)).count();
            assert_ne!(deg, 3, "edge {e}");
        }
    }

    #[test]
    fn sigma_apex_is_universal() {
        let s = complex("bl_sigma3_16").unwrap();
        let apex = Label::name("6p");
        let link = s.link(&Face::new([apex])).unwrap();
        assert_eq!(link.vertex_count(), 15);
    }
}
