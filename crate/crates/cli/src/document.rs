//! The JSON problem document: a ring, a potential, named objects and the
//! arguments of one command.

use std::collections::BTreeMap;
use std::sync::Arc;

use mfcat_core::functors::{BaseModule, BigradedLabel, KoszulData, ReesChart};
use mfcat_core::mfcore::{potential_degree, GradedMatrix, MFMorphism, MatrixFactorization, Parity, ShiftList};
use mfcat_core::ring::{GradeVector, GradedRing, Polynomial};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;
use mfcat_core::Error;

/// A degree written either as a bare integer (single channel) or a list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Degree {
    Scalar(i64),
    Vector(Vec<i64>),
}

impl Degree {
    pub fn to_vector(&self) -> GradeVector {
        match self {
            Degree::Scalar(k) => GradeVector::new(vec![*k]),
            Degree::Vector(v) => GradeVector::new(v.clone()),
        }
    }

    pub fn from_vector(g: &GradeVector) -> Self {
        match g.entries() {
            [k] => Degree::Scalar(*k),
            v => Degree::Vector(v.to_vec()),
        }
    }
}

fn default_slicing() -> Option<usize> {
    Some(0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableSpec {
    pub name: String,
    pub degree: Degree,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub variables: Vec<VariableSpec>,
    /// Channel used to slice Hom complexes; `null` for an ungraded ring.
    #[serde(default = "default_slicing")]
    pub slicing_channel: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationSpec {
    /// Defaults to the document potential.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<String>,
    pub shifts0: Vec<Degree>,
    pub shifts1: Vec<Degree>,
    pub alpha: Vec<Vec<String>>,
    pub beta: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoszulSpec {
    pub s: Vec<String>,
    pub s_y: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<String>,
    /// Degrees of the `s_Y` slots; read off `s_Y` when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot_degrees: Option<Vec<Degree>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Degree>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    pub parity: String,
    pub weight: Degree,
    pub block0: Vec<Vec<String>>,
    pub block1: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelSpec {
    pub a: i64,
    pub b: i64,
    pub n: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub weights: Vec<u64>,
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_orders: Option<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseModuleSpec {
    pub base_variables: Vec<String>,
    pub shifts: Vec<Degree>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub args: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<String>,
    /// Degree of the potential; needed only when it is zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Degree>,
    #[serde(default)]
    pub factorizations: BTreeMap<String, FactorizationSpec>,
    #[serde(default)]
    pub koszul: BTreeMap<String, KoszulSpec>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default)]
    pub labels: BTreeMap<String, LabelSpec>,
    #[serde(default)]
    pub charts: BTreeMap<String, ChartSpec>,
    #[serde(default)]
    pub base_modules: BTreeMap<String, BaseModuleSpec>,
    #[serde(default)]
    pub command: CommandSpec,
}

/// A parsed document with its ring built.
pub struct Context {
    pub doc: ProblemDocument,
    pub ring: Arc<GradedRing>,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn at(path: impl Into<String>) -> impl FnOnce(Error) -> CliError {
    let path = path.into();
    move |error| CliError::Core { at: path, error }
}

impl Context {
    pub fn new(doc: ProblemDocument) -> Result<Self, CliError> {
        let vars: Vec<(String, GradeVector)> =
            doc.ring.variables.iter().map(|v| (v.name.clone(), v.degree.to_vector())).collect();
        let channels = vars.first().map_or(1, |(_, d)| d.len());
        let ring = GradedRing::new(vars, channels, doc.ring.slicing_channel).map_err(at("ring"))?;
        let ctx = Context { doc, ring };
        ctx.check_references()?;
        Ok(ctx)
    }

    fn check_references(&self) -> Result<(), CliError> {
        for (name, m) in &self.doc.morphisms {
            for end in [&m.source, &m.target] {
                if !self.doc.factorizations.contains_key(end) && !self.doc.koszul.contains_key(end) {
                    return Err(schema(format!("morphism `{name}` refers to unknown factorization `{end}`")));
                }
            }
        }
        Ok(())
    }

    pub fn poly(&self, text: &str, what: &str) -> Result<Polynomial, CliError> {
        Polynomial::parse(&self.ring, text).map_err(at(what))
    }

    fn matrix(&self, rows: &[Vec<String>], what: &str) -> Result<Vec<Vec<Polynomial>>, CliError> {
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, p)| self.poly(p, &format!("{what}[{i}][{j}]")))
                    .collect()
            })
            .collect()
    }

    fn channels_ok(&self, d: &GradeVector, what: &str) -> Result<(), CliError> {
        if d.len() != self.ring.channels() {
            return Err(schema(format!("{what}: degree {d} has the wrong number of channels")));
        }
        Ok(())
    }

    fn shifts(&self, v: &[Degree], what: &str) -> Result<ShiftList, CliError> {
        let s: Vec<GradeVector> = v.iter().map(Degree::to_vector).collect();
        for d in &s {
            self.channels_ok(d, what)?;
        }
        Ok(ShiftList::new(s))
    }

    pub fn potential(&self) -> Result<Polynomial, CliError> {
        match &self.doc.potential {
            Some(p) => self.poly(p, "potential"),
            None => Err(schema("document has no potential")),
        }
    }

    /// The degree of `w`: read off `w` itself, else the declared `w`.
    pub fn degree_of(&self, w: &Polynomial, what: &str) -> Result<GradeVector, CliError> {
        let declared = self.doc.w.as_ref().map(Degree::to_vector);
        if let Some(d) = &declared {
            self.channels_ok(d, "w")?;
        }
        match (potential_degree(w).map_err(at(what))?, declared) {
            (Some(d), Some(g)) if d != g => Err(CliError::Core {
                at: what.into(),
                error: Error::DegreeMismatch(format!("potential has degree {d}, declared {g}")),
            }),
            (Some(d), _) => Ok(d),
            (None, g) => Ok(g.unwrap_or_else(|| self.ring.zero_degree())),
        }
    }

    fn spec(&self, name: &str) -> Result<&FactorizationSpec, CliError> {
        self.doc
            .factorizations
            .get(name)
            .ok_or_else(|| schema(format!("unknown factorization `{name}`")))
    }

    /// Raw parts of a named factorization, without any verification.
    pub fn raw_factorization(&self, name: &str) -> Result<(Polynomial, GradeVector, GradedMatrix, GradedMatrix), CliError> {
        let f = self.spec(name)?;
        let w = match &f.potential {
            Some(p) => self.poly(p, &format!("factorizations.{name}.potential"))?,
            None => self.potential()?,
        };
        let deg = self.degree_of(&w, &format!("factorizations.{name}.potential"))?;
        let s0 = self.shifts(&f.shifts0, &format!("factorizations.{name}.shifts0"))?;
        let s1 = self.shifts(&f.shifts1, &format!("factorizations.{name}.shifts1"))?;
        let a = self.matrix(&f.alpha, &format!("factorizations.{name}.alpha"))?;
        let b = self.matrix(&f.beta, &format!("factorizations.{name}.beta"))?;
        let alpha = GradedMatrix::new(&self.ring, s1.clone(), s0.clone(), self.ring.zero_degree(), a)
            .map_err(at(format!("factorizations.{name}.alpha")))?;
        let beta = GradedMatrix::new(&self.ring, s0, s1, deg.clone(), b).map_err(at(format!("factorizations.{name}.beta")))?;
        Ok((w, deg, alpha, beta))
    }

    /// A named factorization or Koszul brane, verified.
    pub fn factorization(&self, name: &str) -> Result<MatrixFactorization, CliError> {
        if self.doc.koszul.contains_key(name) && !self.doc.factorizations.contains_key(name) {
            let data = self.koszul(name)?;
            return mfcat_core::functors::koszul_brane(&data).map_err(at(format!("koszul.{name}")));
        }
        let (w, deg, alpha, beta) = self.raw_factorization(name)?;
        let mf = MatrixFactorization::from_parts_unchecked(&self.ring, w, deg, alpha, beta);
        mf.verify().map_err(at(format!("factorizations.{name}")))?;
        Ok(mf)
    }

    pub fn koszul(&self, name: &str) -> Result<KoszulData, CliError> {
        let k = self
            .doc
            .koszul
            .get(name)
            .ok_or_else(|| schema(format!("unknown Koszul data `{name}`")))?;
        let list = |v: &[String], field: &str| -> Result<Vec<Polynomial>, CliError> {
            v.iter()
                .enumerate()
                .map(|(i, p)| self.poly(p, &format!("koszul.{name}.{field}[{i}]")))
                .collect()
        };
        let s = list(&k.s, "s")?;
        let s_y = list(&k.s_y, "s_y")?;
        let w = match &k.potential {
            Some(p) => self.poly(p, &format!("koszul.{name}.potential"))?,
            None => self.potential()?,
        };
        let data = match &k.slot_degrees {
            None => KoszulData::new(&self.ring, s, s_y, &w),
            Some(slots) => {
                let slots = self.shifts(slots, &format!("koszul.{name}.slot_degrees"))?.0;
                let deg = self.degree_of(&w, &format!("koszul.{name}.potential"))?;
                KoszulData::with_degrees(&self.ring, s, s_y, &w, Some(deg), slots, self.ring.zero_degree())
            }
        }
        .map_err(at(format!("koszul.{name}")))?;
        Ok(match &k.base {
            Some(b) => {
                let b = b.to_vector();
                self.channels_ok(&b, &format!("koszul.{name}.base"))?;
                data.with_base(b)
            }
            None => data,
        })
    }

    pub fn morphism(&self, name: &str) -> Result<MFMorphism, CliError> {
        let m = self
            .doc
            .morphisms
            .get(name)
            .ok_or_else(|| schema(format!("unknown morphism `{name}`")))?;
        let source = self.factorization(&m.source)?;
        let target = self.factorization(&m.target)?;
        let parity = parse_parity(&m.parity)?;
        let weight = m.weight.to_vector();
        self.channels_ok(&weight, &format!("morphisms.{name}.weight"))?;
        let b0 = self.matrix(&m.block0, &format!("morphisms.{name}.block0"))?;
        let b1 = self.matrix(&m.block1, &format!("morphisms.{name}.block1"))?;
        MFMorphism::new(&source, &target, parity, weight, b0, b1).map_err(at(format!("morphisms.{name}")))
    }

    pub fn label(&self, name: &str) -> Result<BigradedLabel, CliError> {
        let l = self
            .doc
            .labels
            .get(name)
            .ok_or_else(|| schema(format!("unknown label `{name}`")))?;
        Ok(BigradedLabel::new(l.a, l.b, l.n))
    }

    pub fn chart(&self, name: &str) -> Result<ReesChart, CliError> {
        let c = self
            .doc
            .charts
            .get(name)
            .ok_or_else(|| schema(format!("unknown chart `{name}`")))?;
        Ok(ReesChart {
            weights: c.weights.clone(),
            order: c.order,
            block_orders: c.block_orders,
        })
    }

    pub fn base_module(&self, name: &str) -> Result<BaseModule, CliError> {
        let b = self
            .doc
            .base_modules
            .get(name)
            .ok_or_else(|| schema(format!("unknown base module `{name}`")))?;
        Ok(BaseModule {
            base_variables: b.base_variables.clone(),
            shifts: self.shifts(&b.shifts, &format!("base_modules.{name}.shifts"))?,
        })
    }
}

pub fn parse_parity(s: &str) -> Result<Parity, CliError> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => Err(schema(format!("parity must be `even` or `odd`, got `{other}`"))),
    }
}

fn strings(m: &GradedMatrix) -> Vec<Vec<String>> {
    m.entries().iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect()
}

/// The document form of a factorization; parses back to an equal value.
pub fn emit_factorization(mf: &MatrixFactorization) -> FactorizationSpec {
    FactorizationSpec {
        potential: Some(mf.potential().to_string()),
        shifts0: mf.shifts0().iter().map(Degree::from_vector).collect(),
        shifts1: mf.shifts1().iter().map(Degree::from_vector).collect(),
        alpha: strings(mf.alpha()),
        beta: strings(mf.beta()),
    }
}

pub fn emit_ring(ring: &GradedRing) -> RingSpec {
    RingSpec {
        variables: ring
            .variables()
            .iter()
            .map(|v| VariableSpec {
                name: v.name.clone(),
                degree: Degree::from_vector(&v.degree),
            })
            .collect(),
        slicing_channel: ring.slicing_channel(),
    }
}

pub fn emit_morphism(phi: &MFMorphism, source: &str, target: &str) -> MorphismSpec {
    MorphismSpec {
        source: source.into(),
        target: target.into(),
        parity: phi.parity().to_string(),
        weight: Degree::from_vector(phi.weight()),
        block0: strings(phi.block0()),
        block1: strings(phi.block1()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> Result<Context, CliError> {
        Context::new(serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?)
    }

    #[test]
    fn degrees_accept_scalars_and_vectors() {
        let d: Degree = serde_json::from_str("3").unwrap();
        assert_eq!(d.to_vector(), GradeVector::new(vec![3]));
        let d: Degree = serde_json::from_str("[1, -2]").unwrap();
        assert_eq!(Degree::from_vector(&d.to_vector()), d);
        assert_eq!(serde_json::to_string(&Degree::from_vector(&GradeVector::new(vec![4]))).unwrap(), "4");
    }

    #[test]
    fn slicing_channel_defaults_to_zero() {
        let c = doc(r#"{ "ring": { "variables": [{ "name": "x", "degree": 2 }] } }"#).unwrap();
        assert_eq!(c.ring.slicing_channel(), Some(0));
        let c = doc(r#"{ "ring": { "variables": [{ "name": "x", "degree": 0 }], "slicing_channel": null } }"#).unwrap();
        assert_eq!(c.ring.slicing_channel(), None);
        // degree 0 cannot be sliced
        let e = doc(r#"{ "ring": { "variables": [{ "name": "x", "degree": 0 }] } }"#).err().unwrap();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn multigraded_ring() {
        let c = doc(
            r#"{ "ring": { "variables": [{ "name": "x", "degree": [1, 0] }, { "name": "p", "degree": [1, 2] }] },
                 "potential": "x*p",
                 "factorizations": { "E": { "shifts0": [[0, 0]], "shifts1": [[1, 0]], "alpha": [["x"]], "beta": [["p"]] } } }"#,
        )
        .unwrap();
        let e = c.factorization("E").unwrap();
        assert_eq!(e.w(), &GradeVector::new(vec![2, 2]));
        let spec = emit_factorization(&e);
        assert_eq!(spec.shifts1, vec![Degree::Vector(vec![1, 0])]);
    }

    #[test]
    fn dangling_morphism_is_a_schema_error() {
        let e = doc(
            r#"{ "ring": { "variables": [{ "name": "x", "degree": 1 }] },
                 "morphisms": { "m": { "source": "A", "target": "A", "parity": "even", "weight": 0, "block0": [], "block1": [] } } }"#,
        )
        .err()
        .unwrap();
        assert!(matches!(e, CliError::Schema(_)));
    }

    #[test]
    fn declared_degree_must_match_potential() {
        let c = doc(r#"{ "ring": { "variables": [{ "name": "x", "degree": 1 }] }, "potential": "x^2", "w": 3 }"#).unwrap();
        let w = c.potential().unwrap();
        assert!(matches!(c.degree_of(&w, "potential"), Err(CliError::Core { error: Error::DegreeMismatch(_), .. })));
        let c = doc(r#"{ "ring": { "variables": [{ "name": "x", "degree": 1 }] }, "potential": "0", "w": 3 }"#).unwrap();
        let w = c.potential().unwrap();
        assert_eq!(c.degree_of(&w, "potential").unwrap(), GradeVector::new(vec![3]));
    }
}
