//! JSON input documents: schema, canonical form and conversion into
//! library objects.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path as FsPath, PathBuf};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use quiverforge::algebra::{blow_up, realize_bound_quiver, BoundQuiverPresentation, RealizedAlgebra, SemisimpleSpec, SplitSemisimple};
use quiverforge::exactla::{format_scalar, int, parse_scalar, Matrix, Scalar};
use quiverforge::gpa::{gpa_build, GPAlgebra, GpaVertexAlgebra};
use quiverforge::modulation::{
    from_group_species, BimoduleData, ConcreteBimodule, GroupData, GroupSpeciesSpec, PseudoModulation,
    SpeciesBimodule, VertexAlgebra,
};
use quiverforge::quiver::Quiver;
use quiverforge::reps::{ModulationRep, RightModule};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {at}: {message}")]
    Semantic { path: String, at: String, message: String },
}

/// Error with a location inside the document, before the file path is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub at: String,
    pub message: String,
}

impl Located {
    fn new(at: impl Into<String>, message: impl fmt::Display) -> Self {
        Located {
            at: at.into(),
            message: message.to_string(),
        }
    }

    pub fn with_path(self, path: &str) -> InputError {
        InputError::Semantic {
            path: path.to_string(),
            at: self.at,
            message: self.message,
        }
    }
}

/// Exact rational written as `"p/q"` or `"p"`; bare JSON integers are accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sc(pub Scalar);

impl Serialize for Sc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for Sc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Sc;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Sc, E> {
                parse_scalar(v).map(Sc).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Sc, E> {
                Ok(Sc(Scalar::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Sc, E> {
                Ok(Sc(Scalar::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

pub type MatrixDoc = Vec<Vec<Sc>>;

fn to_matrix(rows: &MatrixDoc, cols: usize, at: &str) -> Result<Matrix, Located> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Located::new(at, format!("every row needs {cols} entries")));
    }
    Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect())
        .map_err(|e| Located::new(at, e))
}

pub fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.row_vecs()
        .into_iter()
        .map(|r| r.into_iter().map(Sc).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

fn build_quiver(vertices: &[String], arrows: &[ArrowDoc]) -> Result<Quiver, Located> {
    let mut q = Quiver::new(vertices, &[] as &[(String, String, String)]).map_err(|e| Located::new("vertices", e))?;
    for (k, a) in arrows.iter().enumerate() {
        q.add_arrow(&a.name, &a.from, &a.to)
            .map_err(|e| Located::new(format!("arrows[{k}]"), e))?;
    }
    Ok(q)
}

impl QuiverDoc {
    pub fn build(&self) -> Result<Quiver, Located> {
        build_quiver(&self.vertices, &self.arrows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coef: Sc,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundQuiverDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
    pub bound: usize,
}

impl BoundQuiverDoc {
    pub fn presentation(&self) -> Result<BoundQuiverPresentation, Located> {
        let q = build_quiver(&self.vertices, &self.arrows)?;
        let mut relations = Vec::new();
        for (r, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (t, term) in rel.iter().enumerate() {
                let at = format!("relations[{r}][{t}]");
                if term.path.is_empty() {
                    return Err(Located::new(at, "relation terms must have at least one arrow"));
                }
                let idx = term
                    .path
                    .iter()
                    .map(|a| q.arrow_index(a))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Located::new(at.as_str(), e))?;
                let p = q.path_from_indices(&idx).map_err(|e| Located::new(at.as_str(), e))?;
                terms.push((term.coef.0.clone(), p));
            }
            relations.push(terms);
        }
        BoundQuiverPresentation::new(q, relations, self.bound).map_err(|e| Located::new("relations", e))
    }

    pub fn realize(&self) -> Result<RealizedAlgebra, Located> {
        realize_bound_quiver(&self.presentation()?).map_err(|e| Located::new("bound", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowUpDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub base: BoundQuiverDoc,
    pub multiplicities: Vec<usize>,
}

impl BlowUpDoc {
    pub fn realize(&self) -> Result<RealizedAlgebra, Located> {
        let base = self.base.realize().map_err(|e| Located::new(format!("base.{}", e.at), e.message))?;
        blow_up(&base, &self.multiplicities).map_err(|e| Located::new("multiplicities", e))
    }
}

/// Vertex algebra of a generalized path algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GpaAlgebraDoc {
    /// `Π M_{n}(k)` over the listed block sizes.
    Split { blocks: Vec<usize> },
    /// `k⟨loops⟩` truncated at words of length `bound`.
    Loops { loops: Vec<String>, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GpaDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
    pub algebras: Vec<GpaAlgebraDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<usize>,
}

impl GpaDoc {
    pub fn build(&self, truncate: Option<usize>) -> Result<GPAlgebra, Located> {
        let q = build_quiver(&self.vertices, &self.arrows)?;
        if self.algebras.len() != self.vertices.len() {
            return Err(Located::new("algebras", "one algebra per vertex"));
        }
        let algebras = self
            .algebras
            .iter()
            .enumerate()
            .map(|(k, a)| match a {
                GpaAlgebraDoc::Split { blocks } => SplitSemisimple::new(blocks.clone())
                    .map(GpaVertexAlgebra::split)
                    .map_err(|e| Located::new(format!("algebras[{k}]"), e)),
                GpaAlgebraDoc::Loops { loops, bound } => Ok(GpaVertexAlgebra::loops(loops.clone(), *bound)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        gpa_build(&q, algebras, truncate.or(self.truncate)).map_err(|e| Located::new("truncate", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ModulationAlgebraDoc {
    /// Split semisimple `Π M_{n}(k)`.
    Split { blocks: Vec<usize> },
    /// `Π M_{n}(D)` with `dim_k D = ε`, given as `[n, ε]` pairs.
    Symbolic { symbolic: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RanksDoc {
    pub d_ij: u64,
    pub d_ji: u64,
    pub free: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom_duality: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionsDoc {
    pub dim: usize,
    pub left: Vec<MatrixDoc>,
    pub right: Vec<MatrixDoc>,
}

/// Exactly one of `free`, `multiplicities`, `ranks`, `actions`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<RanksDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<ActionsDoc>,
}

impl BimoduleDoc {
    fn given(&self) -> usize {
        [
            self.free.is_some(),
            self.multiplicities.is_some(),
            self.ranks.is_some(),
            self.actions.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count()
    }
}

fn vertex_index(vertices: &[String], name: &str, at: &str) -> Result<usize, Located> {
    vertices
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| Located::new(at, format!("unknown vertex {name:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub algebras: Vec<ModulationAlgebraDoc>,
    #[serde(default)]
    pub bimodules: Vec<BimoduleDoc>,
    #[serde(default)]
    pub algebraically_closed_char0: bool,
}

impl ModulationDoc {
    pub fn build(&self) -> Result<PseudoModulation, Located> {
        if self.algebras.len() != self.vertices.len() {
            return Err(Located::new("algebras", "one algebra per vertex"));
        }
        let algebras = self
            .algebras
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let at = format!("algebras[{k}]");
                match a {
                    ModulationAlgebraDoc::Split { blocks } => SplitSemisimple::new(blocks.clone())
                        .map(VertexAlgebra::Split)
                        .map_err(|e| Located::new(at, e)),
                    ModulationAlgebraDoc::Symbolic { symbolic } => SemisimpleSpec::new(symbolic.clone())
                        .map(VertexAlgebra::Symbolic)
                        .map_err(|e| Located::new(at, e)),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut bimodules = Vec::new();
        for (k, b) in self.bimodules.iter().enumerate() {
            let at = format!("bimodules[{k}]");
            let i = vertex_index(&self.vertices, &b.from, &at)?;
            let j = vertex_index(&self.vertices, &b.to, &at)?;
            if b.given() != 1 {
                return Err(Located::new(at, "give exactly one of free, multiplicities, ranks, actions"));
            }
            let split = |v: usize| match &algebras[v] {
                VertexAlgebra::Split(s) => Ok(s.clone()),
                VertexAlgebra::Symbolic(_) => Err(Located::new(
                    at.as_str(),
                    "concrete bimodule data needs split vertex algebras; use ranks",
                )),
            };
            let data = if let Some(t) = b.free {
                match (&algebras[i], &algebras[j]) {
                    (VertexAlgebra::Split(a), VertexAlgebra::Split(c)) => {
                        BimoduleData::Concrete(ConcreteBimodule::free(a.clone(), c.clone(), t))
                    }
                    (a, c) => BimoduleData::Symbolic {
                        d_ij: (t * a.dim()) as u64,
                        d_ji: (t * c.dim()) as u64,
                        free: true,
                        hom_duality: None,
                    },
                }
            } else if let Some(mult) = &b.multiplicities {
                BimoduleData::Concrete(
                    ConcreteBimodule::from_multiplicities(split(i)?, split(j)?, mult)
                        .map_err(|e| Located::new(at.as_str(), e))?,
                )
            } else if let Some(r) = &b.ranks {
                BimoduleData::Symbolic {
                    d_ij: r.d_ij,
                    d_ji: r.d_ji,
                    free: r.free,
                    hom_duality: r.hom_duality,
                }
            } else {
                let act = b.actions.as_ref().expect("one field given");
                let mats = |list: &[MatrixDoc], what: &str| -> Result<Vec<Matrix>, Located> {
                    list.iter()
                        .enumerate()
                        .map(|(n, m)| to_matrix(m, act.dim, &format!("{at}.actions.{what}[{n}]")))
                        .collect()
                };
                BimoduleData::Concrete(
                    ConcreteBimodule::new(
                        split(i)?,
                        split(j)?,
                        act.dim,
                        mats(&act.left, "left")?,
                        mats(&act.right, "right")?,
                    )
                    .map_err(|e| Located::new(at.as_str(), e))?,
                )
            };
            bimodules.push((i, j, data));
        }
        PseudoModulation::new(
            self.vertices.clone(),
            algebras,
            bimodules,
            self.algebraically_closed_char0,
        )
        .map_err(|e| Located::new("bimodules", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    #[serde(default)]
    pub cyclic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesBimoduleDoc {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<RanksDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpeciesDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub groups: Vec<GroupDoc>,
    #[serde(default)]
    pub bimodules: Vec<SpeciesBimoduleDoc>,
    #[serde(default)]
    pub algebraically_closed_char0: bool,
}

impl GroupSpeciesDoc {
    pub fn build(&self) -> Result<PseudoModulation, Located> {
        if self.groups.len() != self.vertices.len() {
            return Err(Located::new("groups", "one group per vertex"));
        }
        let groups = self
            .groups
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let blocks = g
                    .blocks
                    .clone()
                    .map(SemisimpleSpec::new)
                    .transpose()
                    .map_err(|e| Located::new(format!("groups[{k}]"), e))?;
                Ok(GroupData {
                    order: g.order,
                    blocks,
                    cyclic: g.cyclic,
                })
            })
            .collect::<Result<Vec<_>, Located>>()?;
        let mut bimodules = Vec::new();
        for (k, b) in self.bimodules.iter().enumerate() {
            let at = format!("bimodules[{k}]");
            let i = vertex_index(&self.vertices, &b.from, &at)?;
            let j = vertex_index(&self.vertices, &b.to, &at)?;
            let data = match (b.free, &b.multiplicities, &b.ranks) {
                (Some(t), None, None) => SpeciesBimodule::Free { t },
                (None, Some(m), None) => SpeciesBimodule::Multiplicities(m.clone()),
                (None, None, Some(r)) => SpeciesBimodule::Ranks {
                    d_ij: r.d_ij,
                    d_ji: r.d_ji,
                    free: r.free,
                },
                _ => return Err(Located::new(at, "give exactly one of free, multiplicities, ranks")),
            };
            bimodules.push((i, j, data));
        }
        from_group_species(&GroupSpeciesSpec {
            vertices: self.vertices.clone(),
            groups,
            bimodules,
            algebraically_closed_char0: self.algebraically_closed_char0,
        })
        .map_err(|e| Located::new("groups", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SpaceDoc {
    /// `copies` times the sum of the simple row modules of the vertex algebra.
    Copies { copies: usize },
    /// Right action matrices `v ↦ v·x` on column vectors, one per basis element.
    Explicit { dim: usize, actions: Vec<MatrixDoc> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub from: String,
    pub to: String,
    pub matrix: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub modulation: ModulationDoc,
    pub spaces: Vec<SpaceDoc>,
    #[serde(default)]
    pub maps: Vec<MapDoc>,
}

impl RepresentationDoc {
    pub fn build(&self) -> Result<ModulationRep, Located> {
        let m = self
            .modulation
            .build()
            .map_err(|e| Located::new(format!("modulation.{}", e.at), e.message))?;
        if self.spaces.len() != m.vertices().len() {
            return Err(Located::new("spaces", "one space per vertex"));
        }
        let mut spaces = Vec::new();
        for (k, (s, a)) in self.spaces.iter().zip(m.algebras()).enumerate() {
            let at = format!("spaces[{k}]");
            let VertexAlgebra::Split(a) = a else {
                return Err(Located::new(at, "representations need split vertex algebras"));
            };
            spaces.push(match s {
                SpaceDoc::Copies { copies } => {
                    let one = (0..a.blocks().len())
                        .map(|b| RightModule::simple(a, b))
                        .fold(RightModule::zero(a), |acc, s| acc.direct_sum(&s));
                    (0..*copies).fold(RightModule::zero(a), |acc, _| acc.direct_sum(&one))
                }
                SpaceDoc::Explicit { dim, actions } => RightModule {
                    dim: *dim,
                    actions: actions
                        .iter()
                        .enumerate()
                        .map(|(n, x)| to_matrix(x, *dim, &format!("{at}.actions[{n}]")))
                        .collect::<Result<_, _>>()?,
                },
            });
        }
        let mut maps = BTreeMap::new();
        for (k, map) in self.maps.iter().enumerate() {
            let at = format!("maps[{k}]");
            let i = vertex_index(&self.modulation.vertices, &map.from, &at)?;
            let j = vertex_index(&self.modulation.vertices, &map.to, &at)?;
            let cols = map.matrix.first().map_or(0, Vec::len);
            if map.matrix.len() != spaces[j].dim {
                return Err(Located::new(at, format!("matrix needs {} rows", spaces[j].dim)));
            }
            maps.insert((i, j), to_matrix(&map.matrix, cols, &at)?);
        }
        ModulationRep::new(m, spaces, maps).map_err(|e| Located::new("maps", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaDoc {
    /// A basis A-path, written as a literal.
    pub of: String,
    /// Its image, written as a literal.
    pub is: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub gpa: GpaDoc,
    /// Images of basis A-paths; unlisted ones map to zero.
    #[serde(default)]
    pub delta: Vec<DeltaDoc>,
}

impl DifferentialDoc {
    pub fn build(&self, truncate: Option<usize>) -> Result<(GPAlgebra, Matrix), Located> {
        let g = self
            .gpa
            .build(truncate)
            .map_err(|e| Located::new(format!("gpa.{}", e.at), e.message))?;
        let n = g.dim();
        let mut delta = Matrix::zeros(n, n);
        for (k, d) in self.delta.iter().enumerate() {
            let at = format!("delta[{k}]");
            let src = g.parse(&d.of).map_err(|e| Located::new(at.as_str(), e))?;
            let coords = g.coords(&src);
            let nonzero: Vec<usize> = (0..n).filter(|&c| coords[c] != int(0)).collect();
            if nonzero.len() != 1 || coords[nonzero[0]] != int(1) {
                return Err(Located::new(at, format!("{:?} is not a single basis A-path", d.of)));
            }
            let img = g.coords(&g.parse(&d.is).map_err(|e| Located::new(at.as_str(), e))?);
            for (r, c) in img.into_iter().enumerate() {
                delta.set(r, nonzero[0], c);
            }
        }
        Ok((g, delta))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Quiver(QuiverDoc),
    BoundQuiverAlgebra(BoundQuiverDoc),
    BlowUp(BlowUpDoc),
    Gpa(GpaDoc),
    Modulation(ModulationDoc),
    GroupSpecies(GroupSpeciesDoc),
    Representation(RepresentationDoc),
    Differential(DifferentialDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Quiver(_) => "quiver",
            Document::BoundQuiverAlgebra(_) => "bound-quiver-algebra",
            Document::BlowUp(_) => "blow-up",
            Document::Gpa(_) => "gpa",
            Document::Modulation(_) => "modulation",
            Document::GroupSpecies(_) => "group-species",
            Document::Representation(_) => "representation",
            Document::Differential(_) => "differential",
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Document::Quiver(d) => d.name.as_deref(),
            Document::BoundQuiverAlgebra(d) => d.name.as_deref(),
            Document::BlowUp(d) => d.name.as_deref(),
            Document::Gpa(d) => d.name.as_deref(),
            Document::Modulation(d) => d.name.as_deref(),
            Document::GroupSpecies(d) => d.name.as_deref(),
            Document::Representation(d) => d.name.as_deref(),
            Document::Differential(d) => d.name.as_deref(),
        }
    }

    /// Malformed JSON is a syntax error with its position; JSON that does not
    /// fit the schema of its `kind` is a semantic error.
    pub fn parse(text: &str, path: &str) -> Result<Document, InputError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::Syntax {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let at = match value.get("kind").and_then(|k| k.as_str()) {
            Some(kind) => format!("{kind} document"),
            None => "document".to_string(),
        };
        serde_json::from_value(value).map_err(|e| InputError::Semantic {
            path: path.to_string(),
            at,
            message: e.to_string(),
        })
    }

    /// Pretty JSON with normalized scalars; parsing it back gives the same document.
    pub fn canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// The finite-dimensional algebra a document describes, if any.
    pub fn algebra(&self) -> Option<Result<RealizedAlgebra, Located>> {
        match self {
            Document::BoundQuiverAlgebra(d) => Some(d.realize()),
            Document::BlowUp(d) => Some(d.realize()),
            _ => None,
        }
    }

    /// The pseudo-modulation a document describes, if any.
    pub fn modulation(&self) -> Option<Result<PseudoModulation, Located>> {
        match self {
            Document::Modulation(d) => Some(d.build()),
            Document::GroupSpecies(d) => Some(d.build()),
            Document::Representation(d) => Some(
                d.modulation
                    .build()
                    .map_err(|e| Located::new(format!("modulation.{}", e.at), e.message)),
            ),
            _ => None,
        }
    }
}

/// A parsed document together with its source path.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: PathBuf,
    pub document: Document,
}

impl Loaded {
    pub fn label(&self) -> String {
        self.document.name().map(str::to_string).unwrap_or_else(|| {
            self.path
                .file_stem()
                .map_or_else(|| self.path.display().to_string(), |s| s.to_string_lossy().into_owned())
        })
    }

    pub fn located(&self, e: Located) -> InputError {
        e.with_path(&self.path.display().to_string())
    }
}

pub fn load(path: &FsPath) -> Result<Loaded, InputError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    Ok(Loaded {
        path: path.to_path_buf(),
        document: Document::parse(&text, &shown)?,
    })
}

/// Every `*.json` file in `dir`, sorted by file name.
pub fn load_dir(dir: &FsPath) -> Result<Vec<Loaded>, InputError> {
    let io = |e: std::io::Error| InputError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    paths.iter().map(|p| load(p)).collect()
}

/// `QUIVERFORGE_CORPUS` when set, otherwise the bundled `corpus/` directory.
pub fn corpus_dir() -> PathBuf {
    std::env::var_os("QUIVERFORGE_CORPUS")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus")))
}
