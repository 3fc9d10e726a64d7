//! JSON curve files.
//!
//! ```json
//! {"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]], "closed": true}
//! {"space": "sphere", "vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "closed": true}
//! ```
//!
//! A trailing vertex equal to the first is dropped.

use serde::{Deserialize, Serialize};

use crate::curves::ClosedCurve;
use crate::error::{Error, Result};
use crate::point::{Point2, Point3};
use crate::spaces::{HyperbolicCurve, SphericalCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveSpace {
    #[default]
    Euclidean,
    Sphere,
    Hyperbolic,
}

impl CurveSpace {
    pub fn dimension(self) -> usize {
        match self {
            CurveSpace::Euclidean => 2,
            CurveSpace::Sphere | CurveSpace::Hyperbolic => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    #[serde(default)]
    pub space: CurveSpace,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default = "closed_default")]
    pub closed: bool,
}

fn closed_default() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedCurve {
    Euclidean(ClosedCurve<f64>),
    Sphere(SphericalCurve<f64>),
    Hyperbolic(HyperbolicCurve<f64>),
}

impl LoadedCurve {
    pub fn space(&self) -> CurveSpace {
        match self {
            LoadedCurve::Euclidean(_) => CurveSpace::Euclidean,
            LoadedCurve::Sphere(_) => CurveSpace::Sphere,
            LoadedCurve::Hyperbolic(_) => CurveSpace::Hyperbolic,
        }
    }
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("malformed curve file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("curve files always serialize")
    }

    pub fn from_planar(curve: &ClosedCurve<f64>) -> Self {
        Self {
            space: CurveSpace::Euclidean,
            vertices: curve.vertices().iter().map(|p| p.to_array().to_vec()).collect(),
            closed: true,
        }
    }

    pub fn from_sphere(curve: &SphericalCurve<f64>) -> Self {
        Self {
            space: CurveSpace::Sphere,
            vertices: curve.vertices().iter().map(|p| p.to_array().to_vec()).collect(),
            closed: true,
        }
    }

    pub fn from_hyperbolic(curve: &HyperbolicCurve<f64>) -> Self {
        Self {
            space: CurveSpace::Hyperbolic,
            vertices: curve.vertices().iter().map(|p| p.to_array().to_vec()).collect(),
            closed: true,
        }
    }

    /// Validates and builds the curve for the declared space.
    pub fn into_curve(self) -> Result<LoadedCurve> {
        if !self.closed {
            return Err(Error::InvalidArgument("only closed curves are supported".into()));
        }
        let dim = self.space.dimension();
        if let Some((i, v)) = self.vertices.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(Error::InvalidArgument(format!(
                "vertex {i} has {} coordinates, expected {dim}",
                v.len()
            )));
        }
        let mut vertices = self.vertices;
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        Ok(match self.space {
            CurveSpace::Euclidean => {
                LoadedCurve::Euclidean(ClosedCurve::new(vertices.iter().map(|v| Point2::new(v[0], v[1])).collect())?)
            }
            CurveSpace::Sphere => LoadedCurve::Sphere(SphericalCurve::new(
                vertices.iter().map(|v| Point3::new(v[0], v[1], v[2])).collect(),
            )?),
            CurveSpace::Hyperbolic => LoadedCurve::Hyperbolic(HyperbolicCurve::new(
                vertices.iter().map(|v| Point3::new(v[0], v[1], v[2])).collect(),
            )?),
        })
    }
}

/// Parses and validates a curve file.
pub fn load_curve(text: &str) -> Result<LoadedCurve> {
    CurveFile::parse(text)?.into_curve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{geodesic_cap, hyperbolic_circle};

    #[test]
    fn planar_square() {
        let c = load_curve(r#"{"vertices": [[0,0],[1,0],[1,1],[0,1],[0,0]], "closed": true}"#).unwrap();
        match c {
            LoadedCurve::Euclidean(c) => {
                assert_eq!(c.len(), 4);
                assert_eq!(c.signed_area(), 1.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn roundtrips() {
        let cap = geodesic_cap(1.0, 32).unwrap();
        let back = load_curve(&CurveFile::from_sphere(&cap).to_json()).unwrap();
        assert_eq!(back, LoadedCurve::Sphere(cap));
        let circle = hyperbolic_circle(0.5, 32).unwrap();
        let back = load_curve(&CurveFile::from_hyperbolic(&circle).to_json()).unwrap();
        assert_eq!(back, LoadedCurve::Hyperbolic(circle));
        let square = ClosedCurve::rectangle(2.0, 1.0).unwrap();
        let back = load_curve(&CurveFile::from_planar(&square).to_json()).unwrap();
        assert_eq!(back, LoadedCurve::Euclidean(square));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(load_curve("{").is_err());
        assert!(load_curve(r#"{"vertices": [[0,0],[1,0],[1,1]], "closed": false}"#).is_err());
        assert!(load_curve(r#"{"vertices": [[0,0],[1,0,3],[1,1]]}"#).is_err());
        assert!(load_curve(r#"{"vertices": [[0,0],[1,0],[1,1]], "colour": 1}"#).is_err());
        assert!(matches!(
            load_curve(r#"{"space": "sphere", "vertices": [[1,0,0],[0,2,0],[0,0,1]]}"#),
            Err(Error::OffManifold { .. })
        ));
        assert!(load_curve(r#"{"space": "torus", "vertices": []}"#).is_err());
    }
}
