//! JSON forms of the library's values. Rationals are always `"p/q"`
//! strings and terms use the concrete syntax, so every emitted document
//! parses back to an equal value.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::algebra::{FiniteMVAlgebra, Spectrum};
use crate::duality::HomSpec;
use crate::geometry::{ConvexCell, Point, Polyhedron, Simplex};
use crate::mcnaughton::{AffinePiece, PlFunction, ZMap};
use crate::rational::{self, Rational};
use crate::tangents::{CurveGerm, OutgoingWitness, TangentTuple};
use crate::terms::{parse_term, Presentation};
use crate::{Error, Result};

/// Conversion to and from `serde_json::Value`.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serialisable")
    }

    fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))?;
        Self::from_json(&v)
    }
}

fn decode<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Input(format!("schema mismatch: {e}")))
}

fn encode<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serialisable")
}

fn rats_out(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::to_text).collect()
}

fn rats_in(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| rational::parse(s)).collect()
}

fn point_in(v: &[String]) -> Result<Point> {
    Ok(Point::new(rats_in(v)?))
}

// Integers of any size stay exact: serde_json keeps the digits verbatim.
fn int_out(n: &BigInt) -> Number {
    n.to_string().parse().expect("an integer literal is a JSON number")
}

fn int_in(n: &Number) -> Result<BigInt> {
    n.to_string().parse().map_err(|_| Error::Input(format!("coefficient {n} is not an integer")))
}

#[derive(Serialize, Deserialize)]
struct PolyhedronDto {
    dim: usize,
    simplices: Vec<Vec<Vec<String>>>,
}

impl From<&Polyhedron> for PolyhedronDto {
    fn from(p: &Polyhedron) -> Self {
        PolyhedronDto {
            dim: p.dim(),
            simplices: p
                .simplices()
                .iter()
                .map(|s| s.vertices().iter().map(|v| rats_out(v.coords())).collect())
                .collect(),
        }
    }
}

impl PolyhedronDto {
    fn build(&self) -> Result<Polyhedron> {
        let simplices = self
            .simplices
            .iter()
            .map(|s| Simplex::new(s.iter().map(|v| point_in(v)).collect::<Result<_>>()?))
            .collect::<Result<Vec<_>>>()?;
        Polyhedron::new(self.dim, simplices)
    }
}

impl Json for Polyhedron {
    fn to_json(&self) -> Value {
        encode(&PolyhedronDto::from(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        decode::<PolyhedronDto>(v)?.build()
    }
}

#[derive(Serialize, Deserialize)]
struct CellDto {
    vertices: Vec<Vec<String>>,
    coeffs: Vec<Number>,
    #[serde(rename = "const")]
    constant: Number,
}

#[derive(Serialize, Deserialize)]
struct PlFunctionDto {
    arity: usize,
    cells: Vec<CellDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<PolyhedronDto>,
}

impl PlFunctionDto {
    fn from_fn(f: &PlFunction) -> Self {
        let cells = f
            .cells()
            .iter()
            .map(|(c, p)| CellDto {
                vertices: c.vertices().iter().map(|v| rats_out(v.coords())).collect(),
                coeffs: p.coeffs().iter().map(int_out).collect(),
                constant: int_out(p.constant()),
            })
            .collect();
        PlFunctionDto { arity: f.arity(), cells, domain: f.domain().map(PolyhedronDto::from) }
    }

    fn build(&self) -> Result<PlFunction> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let pts = c.vertices.iter().map(|v| point_in(v)).collect::<Result<Vec<_>>>()?;
                let cell = ConvexCell::hull(self.arity, &pts)?;
                let coeffs = c.coeffs.iter().map(int_in).collect::<Result<Vec<_>>>()?;
                let piece = AffinePiece::new(coeffs, int_in(&c.constant)?);
                Ok((cell, piece))
            })
            .collect::<Result<Vec<_>>>()?;
        let domain = self.domain.as_ref().map(PolyhedronDto::build).transpose()?;
        PlFunction::new(self.arity, cells, domain)
    }
}

impl Json for PlFunction {
    fn to_json(&self) -> Value {
        encode(&PlFunctionDto::from_fn(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        decode::<PlFunctionDto>(v)?.build()
    }
}

#[derive(Serialize, Deserialize)]
struct ZMapDto {
    source_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<PolyhedronDto>,
    components: Vec<PlFunctionDto>,
}

impl Json for ZMap {
    fn to_json(&self) -> Value {
        encode(&ZMapDto {
            source_dim: self.source_dim(),
            domain: self.domain().map(PolyhedronDto::from),
            components: self.components().iter().map(PlFunctionDto::from_fn).collect(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dto: ZMapDto = decode(v)?;
        let domain = dto.domain.as_ref().map(PolyhedronDto::build).transpose()?;
        let components = dto.components.iter().map(PlFunctionDto::build).collect::<Result<Vec<_>>>()?;
        ZMap::new(dto.source_dim, domain, components)
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationDto {
    arity: usize,
    relations: Vec<[String; 2]>,
}

impl From<&Presentation> for PresentationDto {
    fn from(p: &Presentation) -> Self {
        PresentationDto {
            arity: p.arity(),
            relations: p.relations().iter().map(|(s, t)| [s.to_string(), t.to_string()]).collect(),
        }
    }
}

impl PresentationDto {
    fn build(&self) -> Result<Presentation> {
        let rels = self
            .relations
            .iter()
            .map(|[s, t]| Ok((parse_term(s)?, parse_term(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(self.arity, rels)
    }
}

impl Json for Presentation {
    fn to_json(&self) -> Value {
        encode(&PresentationDto::from(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        decode::<PresentationDto>(v)?.build()
    }
}

#[derive(Serialize, Deserialize)]
struct HomSpecDto {
    source: PresentationDto,
    target: PresentationDto,
    images: Vec<String>,
}

impl Json for HomSpec {
    fn to_json(&self) -> Value {
        encode(&HomSpecDto {
            source: self.source().into(),
            target: self.target().into(),
            images: self.images().iter().map(ToString::to_string).collect(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dto: HomSpecDto = decode(v)?;
        let images = dto.images.iter().map(|s| parse_term(s)).collect::<Result<Vec<_>>>()?;
        HomSpec::new(dto.source.build()?, dto.target.build()?, images)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraDto {
    ambient: usize,
    elements: Vec<Vec<String>>,
}

impl Json for FiniteMVAlgebra {
    fn to_json(&self) -> Value {
        encode(&AlgebraDto {
            ambient: self.ambient(),
            elements: self.elements().iter().map(|e| rats_out(e.coords())).collect(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dto: AlgebraDto = decode(v)?;
        let elements = dto.elements.iter().map(|e| point_in(e)).collect::<Result<Vec<_>>>()?;
        FiniteMVAlgebra::new(dto.ambient, elements)
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumDto {
    labels: Vec<String>,
    points: Vec<Vec<String>>,
}

impl Json for Spectrum {
    fn to_json(&self) -> Value {
        encode(&SpectrumDto {
            labels: self.labels().to_vec(),
            points: self.points().iter().map(|p| rats_out(p.coords())).collect(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dto: SpectrumDto = decode(v)?;
        let points = dto.points.iter().map(|p| point_in(p)).collect::<Result<Vec<_>>>()?;
        Spectrum::new(dto.labels, points)
    }
}

#[derive(Serialize, Deserialize)]
struct GermDto {
    base: Vec<String>,
    coeffs: Vec<Vec<String>>,
    i0: u64,
}

impl Json for CurveGerm {
    fn to_json(&self) -> Value {
        encode(&GermDto {
            base: rats_out(self.base().coords()),
            coeffs: self.coeffs().iter().map(|c| rats_out(c)).collect(),
            i0: self.i0(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dto: GermDto = decode(v)?;
        let coeffs = dto.coeffs.iter().map(|c| rats_in(c)).collect::<Result<Vec<_>>>()?;
        CurveGerm::new(point_in(&dto.base)?, coeffs, dto.i0)
    }
}

#[derive(Serialize, Deserialize)]
struct TangentDto {
    base: Vec<String>,
    directions: Vec<Vec<String>>,
}

impl Json for TangentTuple {
    fn to_json(&self) -> Value {
        encode(&TangentDto {
            base: rats_out(self.base().coords()),
            directions: self.directions().iter().map(|d| rats_out(d)).collect(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dto: TangentDto = decode(v)?;
        let directions = dto.directions.iter().map(|d| rats_in(d)).collect::<Result<Vec<_>>>()?;
        TangentTuple::new(point_in(&dto.base)?, directions)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessDto {
    #[serde(rename = "S")]
    simplex: Vec<Vec<String>>,
    #[serde(rename = "F")]
    face: Vec<usize>,
    lambda: Vec<String>,
}

impl Json for OutgoingWitness {
    fn to_json(&self) -> Value {
        // Vertices are emitted in the simplex's canonical order; face
        // indices are translated to match.
        let verts = self.simplex().vertices();
        let face = self
            .face_points()
            .iter()
            .map(|p| verts.iter().position(|v| v == p).expect("face vertex"))
            .collect();
        encode(&WitnessDto {
            simplex: verts.iter().map(|v| rats_out(v.coords())).collect(),
            face,
            lambda: rats_out(self.lambda()),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dto: WitnessDto = decode(v)?;
        let verts = dto.simplex.iter().map(|p| point_in(p)).collect::<Result<Vec<_>>>()?;
        OutgoingWitness::new(verts, dto.face, rats_in(&dto.lambda)?)
    }
}

impl Json for Point {
    fn to_json(&self) -> Value {
        encode(&rats_out(self.coords()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        point_in(&decode::<Vec<String>>(v)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcnaughton::compile;

    fn round_trip<T: Json>(x: &T) {
        let text = x.to_json_string();
        let back = T::from_json_str(&text).unwrap();
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn polyhedra() {
        let v = serde_json::json!({"dim": 1, "simplices": [[["1/2"], ["1/1"]]]});
        let p = Polyhedron::from_json(&v).unwrap();
        assert_eq!(p.to_json(), v);
        round_trip(&Polyhedron::cube(2));
        round_trip(&Polyhedron::empty(3));
    }

    #[test]
    fn functions_and_presentations() {
        let f = compile(&parse_term("x0 (+) x1").unwrap(), 2).unwrap();
        round_trip(&f);
        round_trip(&Presentation::parse(2, &["x0 & x1 = 0", "x0 -> x1 = 1"]).unwrap());
        round_trip(&ZMap::from_terms(1, None, &[parse_term("~x0").unwrap()]).unwrap());
    }

    #[test]
    fn large_coefficients_stay_exact() {
        // min(N·x, 1) with N = 2^70.
        let n = "1180591620717411303424";
        let text = format!(
            r#"{{"arity": 1, "cells": [
                {{"vertices": [["0"], ["1/{n}"]], "coeffs": [{n}], "const": 0}},
                {{"vertices": [["1/{n}"], ["1"]], "coeffs": [0], "const": 1}}]}}"#
        );
        let f = PlFunction::from_json_str(&text).unwrap();
        assert_eq!(f.cells()[0].1.coeffs()[0].to_string(), n);
        round_trip(&f);
        assert!(PlFunction::from_json_str(&text.replace("[0]", "[0.5]")).unwrap_err().is_input_error());
    }

    #[test]
    fn errors_are_input_errors() {
        assert!(Polyhedron::from_json_str("{\"dim\": 1,").unwrap_err().is_input_error());
        assert!(Polyhedron::from_json_str("{\"dim\": 1}").unwrap_err().is_input_error());
        let bad = r#"{"dim": 1, "simplices": [[["1/0"]]]}"#;
        assert!(Polyhedron::from_json_str(bad).unwrap_err().is_input_error());
    }

    #[test]
    fn witness_indices_follow_canonical_order() {
        let w = OutgoingWitness::new(
            vec![Point::from_ratios(&[(1, 1)]), Point::from_ratios(&[(0, 1)])],
            vec![0],
            vec![rational::rat(1, 2)],
        )
        .unwrap();
        let v = w.to_json();
        assert_eq!(v["F"], serde_json::json!([1]));
        round_trip(&w);
    }
}
