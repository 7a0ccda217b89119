//! JSON encodings for posets, closed sets, ideals and minimal-point sets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{IdealZ, MinSet, Point, PosetSpec, PrimeList, PrimeZ, SpecClosedSet, SpecError, UpSet};
use crate::json::JsonU64;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetWire {
    pub points: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetWire {
    pub fn build(&self) -> Result<PosetSpec, SpecError> {
        PosetSpec::new(&self.points, &self.leq)
    }
}

impl From<&PosetSpec> for PosetWire {
    fn from(p: &PosetSpec) -> Self {
        let pts = p.points();
        PosetWire {
            points: pts.to_vec(),
            leq: p
                .strict_pairs()
                .into_iter()
                .map(|(q, r)| (pts[q].clone(), pts[r].clone()))
                .collect(),
        }
    }
}

/// Wire form of a [`SpecClosedSet`]. `backend` may be omitted when the
/// caller supplies it out of band.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedSetWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<JsonU64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
}

impl From<&SpecClosedSet> for ClosedSetWire {
    fn from(w: &SpecClosedSet) -> Self {
        let z = |kind: &str, primes: &[u64]| ClosedSetWire {
            backend: Some("z".into()),
            kind: Some(kind.into()),
            primes: Some(primes.iter().map(|&p| JsonU64(p)).collect()),
            members: None,
        };
        match w {
            SpecClosedSet::Poset(u) => ClosedSetWire {
                backend: Some("poset".into()),
                kind: None,
                primes: None,
                members: Some(u.members().into_iter().map(String::from).collect()),
            },
            SpecClosedSet::ZWhole => z("whole", &[]),
            SpecClosedSet::ZFiniteMax(l) => z("finite", l.as_slice()),
            SpecClosedSet::ZCofiniteMax(e) => z("cofinite", e.as_slice()),
        }
    }
}

impl ClosedSetWire {
    /// Decodes against an optional poset context. A missing `backend` field
    /// means poset when `members` is present, else `z`.
    pub fn decode(&self, poset: Option<&Arc<PosetSpec>>) -> Result<SpecClosedSet, SpecError> {
        let backend = match self.backend.as_deref() {
            Some(b) => b,
            None if self.members.is_some() => "poset",
            None => "z",
        };
        match backend {
            "z" => {
                if self.members.is_some() {
                    return Err(SpecError::Malformed(
                        "z sets carry primes, not members".into(),
                    ));
                }
                let primes: Vec<u64> = self.primes.iter().flatten().map(|p| p.0).collect();
                match self.kind.as_deref() {
                    Some("whole") if primes.is_empty() => Ok(SpecClosedSet::ZWhole),
                    Some("whole") => Err(SpecError::Malformed(
                        "whole spectrum takes no primes".into(),
                    )),
                    Some("finite") => SpecClosedSet::z_finite(primes),
                    Some("cofinite") => SpecClosedSet::z_cofinite(primes),
                    Some(k) => Err(SpecError::Malformed(format!("unknown kind {k:?}"))),
                    None => Err(SpecError::Malformed("missing kind".into())),
                }
            }
            "poset" => {
                let poset = poset.ok_or_else(|| {
                    SpecError::Malformed("poset set given without a poset".into())
                })?;
                if self.kind.is_some() || self.primes.is_some() {
                    return Err(SpecError::Malformed("poset sets carry members only".into()));
                }
                let members = self.members.clone().unwrap_or_default();
                Ok(SpecClosedSet::Poset(UpSet::from_members(
                    Arc::clone(poset),
                    &members,
                )?))
            }
            other => Err(SpecError::Malformed(format!("unknown backend {other:?}"))),
        }
    }
}

impl serde::Serialize for SpecClosedSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ClosedSetWire::from(self).serialize(s)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealWire {
    pub gen: JsonU64,
}

impl From<IdealWire> for IdealZ {
    fn from(w: IdealWire) -> Self {
        IdealZ::new(w.gen.0)
    }
}

impl From<IdealZ> for IdealWire {
    fn from(i: IdealZ) -> Self {
        IdealWire {
            gen: JsonU64(i.generator()),
        }
    }
}

/// Renders a point as its JSON identifier: `0` for the generic point of
/// `Spec Z`, the prime for a maximal ideal, the poset identifier otherwise.
pub fn point_json(point: Point, poset: Option<&PosetSpec>) -> serde_json::Value {
    match point {
        Point::Z(PrimeZ::Zero) => serde_json::json!(0),
        Point::Z(PrimeZ::Max(p)) => serde_json::to_value(JsonU64(p)).expect("u64 serializes"),
        Point::Poset(i) => match poset {
            Some(p) => serde_json::json!(p.points()[i]),
            None => serde_json::json!(i),
        },
    }
}

/// `{"finite": true, "elements": [...]}` or, for an infinite set,
/// `{"finite": false, "excluded": [...], "bound": b, "elements": [...]}` with
/// the elements truncated at the bound.
pub fn min_set_json(min: &MinSet, poset: Option<&PosetSpec>) -> serde_json::Value {
    match min {
        MinSet::Finite(pts) => serde_json::json!({
            "finite": true,
            "elements": pts.iter().map(|&p| point_json(p, poset)).collect::<Vec<_>>(),
        }),
        MinSet::Infinite(e) => serde_json::json!({
            "finite": false,
            "excluded": primes_json(e.excluded()),
            "bound": JsonU64(e.bound()),
            "elements": e.truncated().into_iter().map(JsonU64).collect::<Vec<_>>(),
        }),
    }
}

fn primes_json(l: &PrimeList) -> Vec<JsonU64> {
    l.iter().map(JsonU64).collect()
}
