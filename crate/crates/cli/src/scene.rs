//! Scene files: a norm descriptor, named bodies and per-command options.

use std::collections::BTreeMap;
use std::path::Path;

use minkplane::radon::QuadrantArc;
use minkplane::{ConvexPolygon, NormSpec, Point2, SymmetricPolygon, Triangle};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum NormDescriptor {
    /// Half of the vertex list; the other half is the point reflection.
    Polygon { vertices: Vec<[f64; 2]> },
    Lp { p: f64 },
    Mixed { p: f64 },
    Euclidean,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Body {
    Polygon { vertices: Vec<[f64; 2]> },
    Triangle { vertices: [[f64; 2]; 3] },
    Points { points: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ArcDescriptor {
    pub a: [f64; 2],
    pub b: [f64; 2],
    #[serde(default)]
    pub interior: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Body the command works on; defaults to the only body of the right kind.
    pub body: Option<String>,
    pub trials: Option<usize>,
    /// Side count for `zenodorus`, partition count for `angles`.
    pub k: Option<usize>,
    /// Vertex budget when analytic norms are drawn or polygonized.
    pub budget: Option<usize>,
    pub from: Option<[f64; 2]>,
    pub to: Option<[f64; 2]>,
    pub arc: Option<ArcDescriptor>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub tol: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub norm: NormDescriptor,
    #[serde(default)]
    pub bodies: BTreeMap<String, Body>,
    #[serde(default)]
    pub options: Options,
}

pub fn point(p: [f64; 2]) -> Point2 {
    Point2::new(p[0], p[1])
}

pub fn coords(p: Point2) -> [f64; 2] {
    [p.x1, p.x2]
}

fn finite(values: impl IntoIterator<Item = f64>, what: &str) -> Result<(), CliError> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{what}: non-finite number")))
    }
}

impl NormDescriptor {
    pub fn build(&self) -> Result<NormSpec, CliError> {
        let n = match self {
            NormDescriptor::Polygon { vertices } => {
                finite(vertices.iter().flatten().copied(), "norm vertices")?;
                let pts: Vec<Point2> = vertices.iter().map(|&v| point(v)).collect();
                NormSpec::polygon(SymmetricPolygon::from_points(&pts)?)
            }
            NormDescriptor::Lp { p } => NormSpec::lp(*p)?,
            NormDescriptor::Mixed { p } => NormSpec::mixed(*p)?,
            NormDescriptor::Euclidean => NormSpec::euclidean(),
        };
        Ok(n)
    }
}

impl ArcDescriptor {
    pub fn build(&self) -> Result<QuadrantArc, CliError> {
        finite(self.a.iter().chain(&self.b).chain(self.interior.iter().flatten()).copied(), "arc")?;
        Ok(QuadrantArc::new(point(self.a), point(self.b), self.interior.iter().map(|&p| point(p)).collect())?)
    }
}

impl Scene {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let scene: Scene = serde_json::from_str(text).map_err(|e| CliError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        for (name, body) in &scene.bodies {
            let values: Vec<f64> = match body {
                Body::Polygon { vertices } => vertices.iter().flatten().copied().collect(),
                Body::Triangle { vertices } => vertices.iter().flatten().copied().collect(),
                Body::Points { points } => points.iter().flatten().copied().collect(),
            };
            finite(values, &format!("body {name}"))?;
        }
        Ok(scene)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn pick(&self, accept: impl Fn(&Body) -> bool, what: &str) -> Result<(&str, &Body), CliError> {
        if let Some(name) = &self.options.body {
            let body = self
                .bodies
                .get(name)
                .ok_or_else(|| CliError::Validation(format!("unknown body {name:?}")))?;
            if !accept(body) {
                return Err(CliError::Validation(format!("body {name:?} is not a {what}")));
            }
            return Ok((name, body));
        }
        let mut matching = self.bodies.iter().filter(|(_, b)| accept(b));
        match (matching.next(), matching.next()) {
            (Some((name, body)), None) => Ok((name, body)),
            (None, _) => Err(CliError::Validation(format!("scene has no {what}"))),
            (Some(_), Some(_)) => Err(CliError::Validation(format!("several bodies fit; set options.body to pick a {what}"))),
        }
    }

    pub fn triangle(&self) -> Result<(String, Triangle), CliError> {
        let (name, body) = self.pick(|b| matches!(b, Body::Triangle { .. }), "triangle")?;
        let Body::Triangle { vertices: v } = body else { unreachable!() };
        Ok((name.to_string(), Triangle::new(point(v[0]), point(v[1]), point(v[2]))?))
    }

    /// A polygon body, or a triangle read as a polygon.
    pub fn polygon(&self) -> Result<(String, ConvexPolygon), CliError> {
        let (name, body) = self.pick(|b| !matches!(b, Body::Points { .. }), "polygon")?;
        let poly = match body {
            Body::Polygon { vertices } => ConvexPolygon::new(vertices.iter().map(|&v| point(v)).collect())?,
            Body::Triangle { vertices } => ConvexPolygon::new(vertices.iter().map(|&v| point(v)).collect())?,
            Body::Points { .. } => unreachable!(),
        };
        Ok((name.to_string(), poly))
    }

    pub fn optional_polygon(&self) -> Result<Option<(String, ConvexPolygon)>, CliError> {
        if self.bodies.values().all(|b| matches!(b, Body::Points { .. })) && self.options.body.is_none() {
            return Ok(None);
        }
        self.polygon().map(Some)
    }

    pub fn points(&self) -> Result<(String, Vec<Point2>), CliError> {
        let (name, body) = self.pick(|b| matches!(b, Body::Points { .. }), "point set")?;
        let Body::Points { points } = body else { unreachable!() };
        Ok((name.to_string(), points.iter().map(|&p| point(p)).collect()))
    }

    pub fn optional_points(&self) -> Result<Option<(String, Vec<Point2>)>, CliError> {
        if !self.bodies.values().any(|b| matches!(b, Body::Points { .. })) {
            return Ok(None);
        }
        self.points().map(Some)
    }
}
