//! JSON form:
//!
//! ```json
//! {"top": 3, "bottom": 3,
//!  "strands": [["T0", "T1", {"op": "U", "flavor": "dagger"}], ["T2", "B2"]],
//!  "loops": [],
//!  "scalar": {"coeff": [1.0, 0.0], "half_power": -2}}
//! ```

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DecoratedDiagram, Decoration, Endpoint, Flavor, ScalarFactor, Side, Strand};
use crate::error::{Error, Result};
use crate::numkernel::C64;

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Endpoint {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("endpoint `{text}` is not T<k> or B<k>"));
        let mut chars = text.chars();
        let side = match chars.next() {
            Some('T') => Side::Top,
            Some('B') => Side::Bottom,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index = rest.parse().map_err(|_| bad())?;
        Ok(Endpoint { side, index })
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FlavorName {
    Plain,
    Transpose,
    Dagger,
    Conjugate,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecorationRepr {
    op: String,
    flavor: FlavorName,
}

impl From<&Decoration> for DecorationRepr {
    fn from(x: &Decoration) -> Self {
        let flavor = match x.flavor {
            Flavor::Plain => FlavorName::Plain,
            Flavor::Transpose => FlavorName::Transpose,
            Flavor::Dagger => FlavorName::Dagger,
            Flavor::Conjugate => FlavorName::Conjugate,
        };
        DecorationRepr {
            op: x.op.clone(),
            flavor,
        }
    }
}

impl From<DecorationRepr> for Decoration {
    fn from(r: DecorationRepr) -> Self {
        let flavor = match r.flavor {
            FlavorName::Plain => Flavor::Plain,
            FlavorName::Transpose => Flavor::Transpose,
            FlavorName::Dagger => Flavor::Dagger,
            FlavorName::Conjugate => Flavor::Conjugate,
        };
        Decoration { op: r.op, flavor }
    }
}

impl Serialize for Decoration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecorationRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decoration {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        DecorationRepr::deserialize(de).map(Decoration::from)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum StrandItem {
    End(Endpoint),
    Decoration(Decoration),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarRepr {
    coeff: C64,
    half_power: i32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramRepr {
    top: usize,
    bottom: usize,
    strands: Vec<Vec<StrandItem>>,
    #[serde(default)]
    loops: Vec<Vec<Decoration>>,
    scalar: ScalarRepr,
}

impl Serialize for DecoratedDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strands = self
            .strands
            .iter()
            .map(|st| {
                let mut items = vec![StrandItem::End(st.start), StrandItem::End(st.end)];
                items.extend(st.decorations.iter().cloned().map(StrandItem::Decoration));
                items
            })
            .collect();
        DiagramRepr {
            top: self.top,
            bottom: self.bottom,
            strands,
            loops: self.loops.clone(),
            scalar: ScalarRepr {
                coeff: self.scalar.coeff,
                half_power: self.scalar.half_power,
            },
        }
        .serialize(s)
    }
}

fn strand_from(items: Vec<StrandItem>) -> Result<Strand> {
    let mut it = items.into_iter();
    let mut end = || match it.next() {
        Some(StrandItem::End(e)) => Ok(e),
        _ => Err(Error::Parse("a strand starts with two endpoints".into())),
    };
    let (a, b) = (end()?, end()?);
    let decorations = it
        .map(|item| match item {
            StrandItem::Decoration(x) => Ok(x),
            StrandItem::End(e) => Err(Error::Parse(format!("unexpected endpoint {e} among decorations"))),
        })
        .collect::<Result<_>>()?;
    Ok(Strand::new(a, b, decorations))
}

impl<'de> Deserialize<'de> for DecoratedDiagram {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DiagramRepr::deserialize(de)?;
        let strands = repr
            .strands
            .into_iter()
            .map(strand_from)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let scalar = ScalarFactor::new(repr.scalar.coeff, repr.scalar.half_power);
        DecoratedDiagram::new(repr.top, repr.bottom, strands, repr.loops, scalar).map_err(D::Error::custom)
    }
}

impl DecoratedDiagram {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }
}
