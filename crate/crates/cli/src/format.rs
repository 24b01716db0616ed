//! Set-description files.
//!
//! A file is TOML with a top-level `dim` and an array of `[[set]]` tables,
//! each tagged by `kind`. See the README for the full grammar.

use polarcone::{ConvexSet, GeomError, PolyhedralCone, Subspace, Vector};
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    ConeRays {
        rays: Vec<Vec<f64>>,
        #[serde(default)]
        lineality: Vec<Vec<f64>>,
    },
    ConeHalfspaces {
        normals: Vec<Vec<f64>>,
        #[serde(default)]
        equalities: Vec<Vec<f64>>,
    },
    Plane {
        point: Vec<f64>,
        #[serde(default)]
        directions: Vec<Vec<f64>>,
    },
    Halfspace {
        normal: Vec<f64>,
        offset: f64,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Polytope {
        vertices: Vec<Vec<f64>>,
    },
    Segment {
        a: Vec<f64>,
        b: Vec<f64>,
    },
    ShiftedCone {
        translation: Vec<f64>,
        #[serde(default)]
        rays: Vec<Vec<f64>>,
        #[serde(default)]
        lineality: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub dim: usize,
    #[serde(rename = "set", default)]
    pub sets: Vec<SetSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    dim: Spanned<usize>,
    #[serde(rename = "set", default)]
    sets: Vec<Spanned<toml::Table>>,
}

/// A parsed file: the document and the sets it describes.
#[derive(Debug, Clone)]
pub struct ParsedFile {
    pub document: Document,
    pub sets: Vec<ConvexSet>,
}

/// 1-based line and column of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

fn located(text: &str, offset: usize, err: GeomError) -> CliError {
    let (line, col) = line_col(text, offset);
    CliError::Located {
        line,
        col,
        source: err,
    }
}

pub fn parse_document(text: &str) -> Result<ParsedFile, CliError> {
    let raw: RawDocument = toml::from_str(text).map_err(|e| {
        let (line, col) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        CliError::Parse {
            line,
            col,
            message: e.message().trim().to_string(),
        }
    })?;
    let dim = *raw.dim.get_ref();
    if dim == 0 {
        return Err(located(
            text,
            raw.dim.span().start,
            GeomError::ZeroDimension,
        ));
    }
    // each table is decoded on its own so that errors point at it
    let mut specs = Vec::with_capacity(raw.sets.len());
    let mut sets = Vec::with_capacity(raw.sets.len());
    for table in raw.sets {
        let start = table.span().start;
        let spec = SetSpec::deserialize(toml::Value::Table(table.into_inner())).map_err(|e| {
            let (line, col) = line_col(text, start);
            CliError::Parse {
                line,
                col,
                message: e.message().trim().to_string(),
            }
        })?;
        sets.push(spec.build(dim).map_err(|e| located(text, start, e))?);
        specs.push(spec);
    }
    let document = Document { dim, sets: specs };
    Ok(ParsedFile { document, sets })
}

pub fn to_toml(doc: &Document) -> String {
    toml::to_string(doc).expect("documents always serialize")
}

fn vector(dim: usize, coords: &[f64]) -> Result<Vector, GeomError> {
    if coords.len() != dim {
        return Err(GeomError::DimensionMismatch {
            expected: dim,
            found: coords.len(),
        });
    }
    Vector::new(coords.to_vec())
}

fn vectors(dim: usize, list: &[Vec<f64>]) -> Result<Vec<Vector>, GeomError> {
    list.iter().map(|c| vector(dim, c)).collect()
}

fn coords(v: &Vector) -> Vec<f64> {
    // adding 0.0 turns -0.0 into 0.0
    v.coords().iter().map(|x| x + 0.0).collect()
}

fn all_coords(list: &[Vector]) -> Vec<Vec<f64>> {
    list.iter().map(coords).collect()
}

impl SetSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            SetSpec::ConeRays { .. } => "cone_rays",
            SetSpec::ConeHalfspaces { .. } => "cone_halfspaces",
            SetSpec::Plane { .. } => "plane",
            SetSpec::Halfspace { .. } => "halfspace",
            SetSpec::Ball { .. } => "ball",
            SetSpec::Polytope { .. } => "polytope",
            SetSpec::Segment { .. } => "segment",
            SetSpec::ShiftedCone { .. } => "shifted_cone",
        }
    }

    pub fn build(&self, dim: usize) -> Result<ConvexSet, GeomError> {
        match self {
            SetSpec::ConeRays { rays, lineality } => {
                Ok(ConvexSet::cone(PolyhedralCone::from_generators(
                    dim,
                    &vectors(dim, rays)?,
                    &vectors(dim, lineality)?,
                )?))
            }
            SetSpec::ConeHalfspaces {
                normals,
                equalities,
            } => Ok(ConvexSet::cone(PolyhedralCone::from_constraints(
                dim,
                &vectors(dim, normals)?,
                &vectors(dim, equalities)?,
            )?)),
            SetSpec::Plane { point, directions } => ConvexSet::plane(
                vector(dim, point)?,
                Subspace::span(dim, &vectors(dim, directions)?)?,
            ),
            SetSpec::Halfspace { normal, offset } => {
                ConvexSet::halfspace(vector(dim, normal)?, *offset)
            }
            SetSpec::Ball { center, radius } => ConvexSet::ball(vector(dim, center)?, *radius),
            SetSpec::Polytope { vertices } => ConvexSet::polytope(vectors(dim, vertices)?),
            SetSpec::Segment { a, b } => ConvexSet::segment(vector(dim, a)?, vector(dim, b)?),
            SetSpec::ShiftedCone {
                translation,
                rays,
                lineality,
            } => ConvexSet::shifted_cone(
                PolyhedralCone::from_generators(
                    dim,
                    &vectors(dim, rays)?,
                    &vectors(dim, lineality)?,
                )?,
                vector(dim, translation)?,
            ),
        }
    }

    /// Describes an existing set. Cones are written through their generators.
    pub fn from_set(set: &ConvexSet) -> Self {
        match set {
            ConvexSet::Cone(c) => SetSpec::ConeRays {
                rays: all_coords(c.rays()),
                lineality: all_coords(c.lineality().basis()),
            },
            ConvexSet::Plane { point, directions } => SetSpec::Plane {
                point: coords(point),
                directions: all_coords(directions.basis()),
            },
            ConvexSet::Halfspace { normal, offset } => SetSpec::Halfspace {
                normal: coords(normal),
                offset: *offset,
            },
            ConvexSet::Ball { center, radius } => SetSpec::Ball {
                center: coords(center),
                radius: *radius,
            },
            ConvexSet::Polytope { vertices } => SetSpec::Polytope {
                vertices: all_coords(vertices),
            },
            ConvexSet::Segment { a, b } => SetSpec::Segment {
                a: coords(a),
                b: coords(b),
            },
            ConvexSet::ShiftedCone { cone, translation } => SetSpec::ShiftedCone {
                translation: coords(translation),
                rays: all_coords(cone.rays()),
                lineality: all_coords(cone.lineality().basis()),
            },
        }
    }
}

impl Document {
    pub fn from_sets(sets: &[&ConvexSet]) -> Option<Self> {
        let dim = sets.first()?.ambient_dim();
        Some(Document {
            dim,
            sets: sets.iter().map(|s| SetSpec::from_set(s)).collect(),
        })
    }
}
