//! JSON fixture documents, one tagged object per file.
//!
//! ```json
//! {"type": "sset", "levels": [{"size": 3}, {"size": 3, "faces": [[1, 2, 2], [0, 0, 1]]}]}
//! ```
//!
//! `faces[i][s]` is the index of `d_i s` one level down. The other document
//! types are `simplicial`, `bisset`, `category`, `functor`, `nat-trans`,
//! `monoid`, `monoid-presentation`, `action` and `matrix`.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::category::{Composite, FinMonoid, FinNonUnitalCategory, FunctorData, MonoidAction, MonoidPresentation, NatTransData, Side};
use crate::error::{invalid, Error, Result};
use crate::homalg::IntMatrix;
use crate::sset::{BiSemiSimplicialSet, SemiSimplicialSet, SimplexRef, SimplicialSet};

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum Raw {
    Sset(RawSset),
    Simplicial(RawSimplicial),
    Bisset(RawBisset),
    Category(RawCategory),
    Functor(RawFunctor),
    NatTrans(RawNatTrans),
    Monoid(RawMonoid),
    MonoidPresentation(MonoidPresentation),
    Action(RawAction),
    Matrix(RawMatrix),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSset {
    levels: Vec<RawLevel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncated_at: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevel {
    size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    faces: Vec<Vec<usize>>,
}

/// `faces[g][i]` is `d_i` of generator `g`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimplicial {
    generators: Vec<RawGenerators>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncated_at: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerators {
    size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    faces: Vec<Vec<SimplexRef>>,
}

/// `levels[p][q]` with horizontal faces `h[i][s]` and vertical faces `v[j][s]`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBisset {
    levels: Vec<Vec<RawBiLevel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncated_h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncated_v: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBiLevel {
    size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    h: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    v: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    src: usize,
    tgt: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    objects: usize,
    morphisms: Vec<RawMorphism>,
    compose: Vec<Composite>,
    units: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunctor {
    source: RawCategory,
    target: RawCategory,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
    #[serde(default)]
    unital: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNatTrans {
    from: RawFunctor,
    to: RawFunctor,
    components: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonoid {
    table: Vec<Vec<usize>>,
    unit: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    monoid: RawMonoid,
    side: Side,
    size: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i64>>,
}

/// A validated fixture.
#[derive(Clone, Debug)]
pub enum FixtureDocument {
    SemiSimplicial(SemiSimplicialSet),
    Simplicial(SimplicialSet),
    BiSemiSimplicial(BiSemiSimplicialSet),
    Category(FinNonUnitalCategory),
    Functor(FunctorData),
    NatTrans(NatTransData),
    Monoid(FinMonoid),
    MonoidPresentation(MonoidPresentation),
    Action { monoid: FinMonoid, action: MonoidAction },
    Matrix(IntMatrix),
}

fn at<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Invalid(format!("{field}: {e}")))
}

fn category(raw: RawCategory, field: &str) -> Result<FinNonUnitalCategory> {
    let morphisms = raw.morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    at(field, FinNonUnitalCategory::new(raw.objects, morphisms, &raw.compose, raw.units))
}

fn functor(raw: RawFunctor, field: &str) -> Result<FunctorData> {
    let source = category(raw.source, &format!("{field}.source"))?;
    let target = category(raw.target, &format!("{field}.target"))?;
    at(field, FunctorData::new(source, target, raw.objects, raw.morphisms, raw.unital))
}

fn monoid(raw: RawMonoid, field: &str) -> Result<FinMonoid> {
    at(field, FinMonoid::new(raw.table, raw.unit))
}

fn raw_category(c: &FinNonUnitalCategory) -> RawCategory {
    RawCategory {
        objects: c.objects(),
        morphisms: c.morphisms().iter().map(|&(src, tgt)| RawMorphism { src, tgt }).collect(),
        compose: c.composites(),
        units: c.units().map(<[usize]>::to_vec),
    }
}

fn raw_functor(f: &FunctorData) -> RawFunctor {
    RawFunctor {
        source: raw_category(f.source()),
        target: raw_category(f.target()),
        objects: f.object_map().to_vec(),
        morphisms: f.morphism_map().to_vec(),
        unital: f.is_unital(),
    }
}

fn raw_monoid(m: &FinMonoid) -> RawMonoid {
    RawMonoid { table: m.table().to_vec(), unit: m.unit() }
}

impl FixtureDocument {
    /// Parses and validates; errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Schema(format!("not JSON: {e}")))?;
        let tag = match value.as_object_mut().map(|o| o.remove("type")) {
            Some(Some(serde_json::Value::String(t))) => t,
            Some(_) => return Err(Error::Schema("schema violation at type: missing or not a string".into())),
            None => return Err(Error::Schema("schema violation at .: expected an object".into())),
        };
        fn body<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T> {
            serde_path_to_error::deserialize(v).map_err(|e| Error::Schema(format!("schema violation at {}: {}", e.path(), e.inner())))
        }
        let raw = match tag.as_str() {
            "sset" => Raw::Sset(body(value)?),
            "simplicial" => Raw::Simplicial(body(value)?),
            "bisset" => Raw::Bisset(body(value)?),
            "category" => Raw::Category(body(value)?),
            "functor" => Raw::Functor(body(value)?),
            "nat-trans" => Raw::NatTrans(body(value)?),
            "monoid" => Raw::Monoid(body(value)?),
            "monoid-presentation" => Raw::MonoidPresentation(body(value)?),
            "action" => Raw::Action(body(value)?),
            "matrix" => Raw::Matrix(body(value)?),
            other => return Err(Error::Schema(format!("schema violation at type: unknown document type {other:?}"))),
        };
        Self::from_raw(raw)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Invalid(m) => Error::Invalid(format!("{}: {m}", path.display())),
            Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    fn from_raw(raw: Raw) -> Result<Self> {
        Ok(match raw {
            Raw::Sset(s) => {
                let sizes = s.levels.iter().map(|l| l.size).collect();
                let faces = s.levels.into_iter().map(|l| l.faces).collect();
                Self::SemiSimplicial(at("levels", SemiSimplicialSet::new(sizes, faces, s.truncated_at))?)
            }
            Raw::Simplicial(s) => {
                let counts = s.generators.iter().map(|g| g.size).collect();
                let faces = s.generators.into_iter().map(|g| g.faces).collect();
                Self::Simplicial(at("generators", SimplicialSet::new(counts, faces, s.truncated_at))?)
            }
            Raw::Bisset(b) => {
                let sizes = b.levels.iter().map(|row| row.iter().map(|l| l.size).collect()).collect();
                let dh = b.levels.iter().map(|row| row.iter().map(|l| l.h.clone()).collect()).collect();
                let dv = b.levels.into_iter().map(|row| row.into_iter().map(|l| l.v).collect()).collect();
                Self::BiSemiSimplicial(at("levels", BiSemiSimplicialSet::new(sizes, dh, dv, b.truncated_h, b.truncated_v))?)
            }
            Raw::Category(c) => Self::Category(category(c, "category")?),
            Raw::Functor(f) => Self::Functor(functor(f, "functor")?),
            Raw::NatTrans(n) => {
                let from = functor(n.from, "from")?;
                let to = functor(n.to, "to")?;
                Self::NatTrans(at("components", NatTransData::new(from, to, n.components))?)
            }
            Raw::Monoid(m) => Self::Monoid(monoid(m, "table")?),
            Raw::MonoidPresentation(p) => Self::MonoidPresentation(at("relations", MonoidPresentation::new(p.generators, p.relations))?),
            Raw::Action(a) => {
                let m = monoid(a.monoid, "monoid")?;
                let action = at("table", MonoidAction::new(&m, a.side, a.size, a.table))?;
                Self::Action { monoid: m, action }
            }
            Raw::Matrix(m) => {
                if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
                    return Err(Error::Schema(format!("schema violation at entries: expected {} rows of length {}", m.rows, m.cols)));
                }
                let triples =
                    m.entries.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, BigInt::from(v))));
                Self::Matrix(at("entries", IntMatrix::from_triples(m.rows, m.cols, triples))?)
            }
        })
    }

    fn to_raw(&self) -> Result<Raw> {
        Ok(match self {
            Self::SemiSimplicial(x) => Raw::Sset(RawSset {
                levels: (0..x.sizes().len())
                    .map(|p| RawLevel {
                        size: x.size(p),
                        faces: if p == 0 { Vec::new() } else { (0..=p).map(|i| x.face_table(p, i).to_vec()).collect() },
                    })
                    .collect(),
                truncated_at: x.truncated_at(),
            }),
            Self::Simplicial(y) => Raw::Simplicial(RawSimplicial {
                generators: y
                    .generator_counts()
                    .iter()
                    .enumerate()
                    .map(|(q, &size)| RawGenerators { size, faces: (0..size).map(|g| y.generator_faces(q, g).to_vec()).collect() })
                    .collect(),
                truncated_at: y.truncated_at(),
            }),
            Self::BiSemiSimplicial(b) => Raw::Bisset(RawBisset {
                levels: b
                    .sizes()
                    .iter()
                    .enumerate()
                    .map(|(p, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(q, &size)| RawBiLevel {
                                size,
                                h: if p == 0 { Vec::new() } else { (0..=p).map(|i| (0..size).map(|s| b.face_h(p, q, i, s)).collect()).collect() },
                                v: if q == 0 { Vec::new() } else { (0..=q).map(|j| (0..size).map(|s| b.face_v(p, q, j, s)).collect()).collect() },
                            })
                            .collect()
                    })
                    .collect(),
                truncated_h: b.truncated_h(),
                truncated_v: b.truncated_v(),
            }),
            Self::Category(c) => Raw::Category(raw_category(c)),
            Self::Functor(f) => Raw::Functor(raw_functor(f)),
            Self::NatTrans(n) => {
                Raw::NatTrans(RawNatTrans { from: raw_functor(n.from()), to: raw_functor(n.to()), components: n.components().to_vec() })
            }
            Self::Monoid(m) => Raw::Monoid(raw_monoid(m)),
            Self::MonoidPresentation(p) => Raw::MonoidPresentation(p.clone()),
            Self::Action { monoid, action } => Raw::Action(RawAction {
                monoid: raw_monoid(monoid),
                side: action.side(),
                size: action.size(),
                table: action.table().to_vec(),
            }),
            Self::Matrix(m) => {
                let entries = m.to_dense_i64().ok_or_else(|| invalid!("matrix entries exceed 64 bits"))?;
                Raw::Matrix(RawMatrix { rows: m.rows(), cols: m.cols(), entries })
            }
        })
    }

    /// Pretty-printed JSON; loading it gives back the same document.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_raw()?).expect("fixtures serialize"))
    }

    /// The `type` tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::SemiSimplicial(_) => "sset",
            Self::Simplicial(_) => "simplicial",
            Self::BiSemiSimplicial(_) => "bisset",
            Self::Category(_) => "category",
            Self::Functor(_) => "functor",
            Self::NatTrans(_) => "nat-trans",
            Self::Monoid(_) => "monoid",
            Self::MonoidPresentation(_) => "monoid-presentation",
            Self::Action { .. } => "action",
            Self::Matrix(_) => "matrix",
        }
    }
}
