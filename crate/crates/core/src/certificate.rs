//! Replayable move certificates.
//!
//! A certificate names its start by digest plus an optional descriptor:
//! a corpus fixture name, `standard-sphere:l1,l2,...` or
//! `standard-ball:l1,l2,...`. A start that is neither may carry its facets
//! inline. Replay validates every move and the final digest.

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Face, Mask};
use crate::error::{Error, Result};
use crate::label::Label;
use crate::moves::{self, apply_bistellar, apply_shelling, Move};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Bistellar,
    Shelling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartRef {
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub facets: Option<Vec<Vec<Label>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCertificate {
    pub kind: CertificateKind,
    pub start: StartRef,
    pub moves: Vec<Move>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result_digest: Option<String>,
}

/// Outcome of a successful replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub result: Complex,
    /// Number of moves applied.
    pub length: usize,
}

fn label_list(x: &Complex) -> String {
    x.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

impl StartRef {
    /// Describes `x` by the shortest self-contained form: a standard object
    /// descriptor when it is one, else inline facets.
    pub fn describe(x: &Complex) -> StartRef {
        let name = if moves::is_standard_ball(x) {
            Some(format!("standard-ball:{}", label_list(x)))
        } else if moves::is_standard_sphere(x) {
            Some(format!("standard-sphere:{}", label_list(x)))
        } else {
            None
        };
        let facets = name
            .is_none()
            .then(|| x.facets().into_iter().map(|f| f.labels().to_vec()).collect());
        StartRef { digest: x.digest(), name, facets }
    }

    /// Refers to a corpus fixture by name.
    pub fn fixture(name: &str, x: &Complex) -> StartRef {
        StartRef { digest: x.digest(), name: Some(name.to_string()), facets: None }
    }

    pub fn resolve(&self) -> Result<Complex> {
        let x = if let Some(f) = &self.facets {
            Complex::from_facets(f.clone())?
        } else if let Some(name) = &self.name {
            resolve_name(name)?
        } else {
            return Err(Error::Parse("certificate start has neither name nor facets".into()));
        };
        if x.digest() != self.digest {
            return Err(Error::ReplayFailure { step: 0, reason: "start digest mismatch".into() });
        }
        Ok(x)
    }
}

fn parse_labels(s: &str) -> Result<Vec<Label>> {
    s.split(',').map(|t| t.trim().parse::<Label>()).collect()
}

fn resolve_name(name: &str) -> Result<Complex> {
    if let Some(rest) = name.strip_prefix("standard-sphere:") {
        let ls = parse_labels(rest)?;
        return moves::standard_sphere(ls.len() as i64 - 2, Some(&ls));
    }
    if let Some(rest) = name.strip_prefix("standard-ball:") {
        let ls = parse_labels(rest)?;
        return moves::standard_ball(ls.len() as i64 - 1, Some(&ls));
    }
    crate::corpus::complex(name)
}

impl MoveCertificate {
    /// Builds a certificate from a start complex and moves, replaying them
    /// to fill in the result digest.
    pub fn build(kind: CertificateKind, start: StartRef, moves: Vec<Move>) -> Result<MoveCertificate> {
        let mut cert = MoveCertificate { kind, start, moves, result_digest: None };
        let r = cert.replay()?;
        cert.result_digest = Some(r.result.digest());
        Ok(cert)
    }

    /// Replays every move from the start. Step numbers in errors count
    /// moves from 1; step 0 is the start itself.
    pub fn replay(&self) -> Result<Replay> {
        let mut x = self.start.resolve()?;
        for (i, m) in self.moves.iter().enumerate() {
            let next = match self.kind {
                CertificateKind::Bistellar => apply_bistellar(&x, m),
                CertificateKind::Shelling => apply_shelling(&x, m),
            };
            x = next.map_err(|e| Error::ReplayFailure { step: i + 1, reason: e.to_string() })?;
        }
        if let Some(d) = &self.result_digest {
            if *d != x.digest() {
                return Err(Error::ReplayFailure {
                    step: self.moves.len(),
                    reason: "result digest mismatch".into(),
                });
            }
        }
        Ok(Replay { result: x, length: self.moves.len() })
    }

    pub fn max_index(&self) -> Option<i64> {
        self.moves.iter().map(Move::index).max()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<MoveCertificate> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Carries a shelling certificate to the boundary: each shelling move
/// `α ⇝ β` of index below the ball's dimension becomes the bistellar move
/// `α ↦ β` on the boundary.
pub fn boundary_transport(cert: &MoveCertificate) -> Result<MoveCertificate> {
    if cert.kind != CertificateKind::Shelling {
        return Err(Error::BadParameters("boundary transport needs a shelling certificate".into()));
    }
    let start = cert.start.resolve()?;
    if let Some(m) = cert.moves.iter().find(|m| m.index() >= start.dim()) {
        return Err(Error::BadParameters(format!("move {m} has index >= {}", start.dim())));
    }
    let bd = start.boundary()?;
    MoveCertificate::build(CertificateKind::Bistellar, StartRef::describe(&bd), cert.moves.clone())
}

/// Reads a bistellar certificate from a standard sphere as a shelling
/// certificate from the simplex it bounds.
pub fn lift_to_shelling(cert: &MoveCertificate) -> Result<MoveCertificate> {
    if cert.kind != CertificateKind::Bistellar {
        return Err(Error::BadParameters("lifting needs a bistellar certificate".into()));
    }
    let start = cert.start.resolve()?;
    if !moves::is_standard_sphere(&start) {
        return Err(Error::BadParameters("lifting needs a standard sphere start".into()));
    }
    let ball = moves::standard_ball(start.dim() + 1, Some(start.labels()))?;
    MoveCertificate::build(CertificateKind::Shelling, StartRef::describe(&ball), cert.moves.clone())
}

/// Turns a facet order into a shelling certificate from its first facet.
/// Fails at the first facet whose attachment is not a shelling move.
pub fn from_shelling_order(order: &[Face]) -> Result<MoveCertificate> {
    let first = order.first().ok_or(Error::EmptyInput)?;
    let all = Complex::from_faces(order)?;
    let masks: Vec<Mask> = order.iter().map(|f| all.mask_of(f)).collect::<Result<_>>()?;
    let mut current = vec![masks[0]];
    let mut moves = Vec::with_capacity(order.len() - 1);
    for (i, &s) in masks.iter().enumerate().skip(1) {
        let (a, b) = moves::shelling_split(&current, s).ok_or_else(|| Error::ReplayFailure {
            step: i,
            reason: format!("facet {} does not attach by a shelling move", order[i]),
        })?;
        moves.push(Move::new(all.face_of(a), all.face_of(b)));
        current.push(s);
    }
    let start = moves::standard_ball(first.dim(), Some(first.labels()))?;
    MoveCertificate::build(CertificateKind::Shelling, StartRef::describe(&start), moves)
}

/// Replays a certificate and returns the final complex and length.
pub fn replay(cert: &MoveCertificate) -> Result<Replay> {
    cert.replay()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(a: &[i64], b: &[i64]) -> Move {
        Move::new(Face::new(a.iter().copied()), Face::new(b.iter().copied()))
    }

    #[test]
    fn empty_certificate() {
        let s = moves::standard_sphere(3, None).unwrap();
        let cert = MoveCertificate::build(CertificateKind::Bistellar, StartRef::describe(&s), vec![]).unwrap();
        assert_eq!(cert.start.name.as_deref(), Some("standard-sphere:1,2,3,4,5"));
        let r = cert.replay().unwrap();
        assert_eq!(r.result, s);
        assert_eq!(r.length, 0);
    }

    #[test]
    fn json_round_trip_and_corruption() {
        let s = moves::standard_sphere(2, None).unwrap();
        let cert = MoveCertificate::build(
            CertificateKind::Bistellar,
            StartRef::describe(&s),
            vec![mv(&[1, 2, 3], &[5]), mv(&[1, 2], &[4, 5])],
        )
        .unwrap();
        let back = MoveCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.replay().unwrap().length, 2);
        assert!(cert.to_json().contains(r#""kind":"bistellar""#));

        let mut bad = cert.clone();
        bad.moves[1] = mv(&[1, 2], &[3, 4]);
        assert!(matches!(bad.replay(), Err(Error::ReplayFailure { step: 2, .. })));

        let mut wrong = cert;
        wrong.result_digest = Some("00".into());
        assert!(matches!(wrong.replay(), Err(Error::ReplayFailure { step: 2, .. })));
    }

    #[test]
    fn transport_and_lift() {
        let b = moves::standard_ball(3, None).unwrap();
        let shell = MoveCertificate::build(
            CertificateKind::Shelling,
            StartRef::describe(&b),
            vec![mv(&[2, 3, 4], &[5]), mv(&[3, 4], &[1, 5])],
        );
        // 1345 meets {1234, 2345} in 134 and 345: α = 34, β = 15
        let shell = shell.unwrap();
        let ball = shell.replay().unwrap().result;
        let bd = boundary_transport(&shell).unwrap();
        assert_eq!(bd.replay().unwrap().result, ball.boundary().unwrap());
        let lifted = lift_to_shelling(&bd).unwrap();
        assert_eq!(lifted.replay().unwrap().result, ball);
    }

    #[test]
    fn inline_start() {
        let x = Complex::from_facets([[1, 2, 3], [2, 3, 4]]).unwrap();
        let start = StartRef::describe(&x);
        assert!(start.name.is_none());
        assert_eq!(start.resolve().unwrap(), x);
    }
}
