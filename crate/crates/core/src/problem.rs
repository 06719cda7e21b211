//! TOML problem files.
//!
//! ```toml
//! [ring]
//! field = "Fp"        # or "Q"
//! p = 2
//! vars = ["x", "y"]
//! quotient = []       # generators of a
//! dim = 2             # optional; computed for monomial a
//!
//! [map]
//! x = "x^2"
//! y = "y^2"
//!
//! [options]           # all optional
//! n_max = 6
//! N_budget = 512
//! term_budget = 2000000
//! q = ["x^2", "xy", "y^2"]
//! s_max = 12
//! k = 2
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::Ideal;
use crate::local::{Endomorphism, LocalRingPresentation};
use crate::parser::{parse_polynomial_budgeted, ParseError};
use crate::poly::{Polynomial, VariableContext};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    ring: RawRing,
    map: BTreeMap<String, String>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    field: String,
    p: Option<u64>,
    vars: Vec<String>,
    #[serde(default)]
    quotient: Vec<String>,
    dim: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    n_max: Option<u32>,
    #[serde(rename = "N_budget")]
    n_budget: Option<u32>,
    term_budget: Option<usize>,
    q: Option<Vec<String>>,
    s_max: Option<u32>,
    k: Option<u32>,
}

/// Run options from the `[options]` table, with defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub n_max: u32,
    pub budget: Budget,
    /// Generators of an m-primary ideal for the `hk` and `multiplicity` commands.
    pub q: Option<Vec<String>>,
    pub s_max: u32,
    /// Power used by the power-rule check.
    pub k: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            n_max: 6,
            budget: Budget::default(),
            q: None,
            s_max: 12,
            k: 2,
        }
    }
}

/// A parsed problem. The map is kept as raw images: validation happens
/// separately so that a syntactically fine file with a bad map can still be
/// reported on.
#[derive(Debug, Clone)]
pub struct Problem {
    pub ring: Arc<LocalRingPresentation>,
    pub images: Vec<Polynomial>,
    pub options: Options,
}

impl Problem {
    pub fn ctx(&self) -> &Arc<VariableContext> {
        self.ring.ctx()
    }

    /// Certify the map (locality and well-definedness).
    pub fn endomorphism(&self) -> Result<Endomorphism> {
        Endomorphism::validate(self.ring.clone(), self.images.clone(), &self.options.budget)
    }

    /// The ideal given by `options.q`, if any.
    pub fn q_ideal(&self) -> Result<Option<Ideal>> {
        match &self.options.q {
            None => Ok(None),
            Some(gens) => {
                let polys = gens
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_at(s, self.ctx(), &format!("options.q[{i}]"), &self.options.budget))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Some(Ideal::new(self.ctx(), polys)?))
            }
        }
    }
}

fn parse_at(src: &str, ctx: &Arc<VariableContext>, key: &str, budget: &Budget) -> Result<Polynomial> {
    parse_polynomial_budgeted(src, ctx, budget).map_err(|pe| {
        Error::Parse(ParseError {
            message: format!("{key}: {}", pe.message),
            ..pe
        })
    })
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Parse a problem file. Expression errors carry positions inside the
/// offending string and name the key they came from.
pub fn parse_problem(src: &str) -> Result<Problem> {
    let raw: RawProblem = toml::from_str(src).map_err(|e| schema(e.message().to_string()))?;
    let field = match (raw.ring.field.as_str(), raw.ring.p) {
        ("Q", None) => FieldSpec::Rationals,
        ("Q", Some(_)) => return Err(schema("ring.p is only allowed with field = \"Fp\"")),
        ("Fp", Some(p)) => FieldSpec::prime(p).map_err(|e| schema(format!("ring.p: {e}")))?,
        ("Fp", None) => return Err(schema("field = \"Fp\" requires ring.p")),
        (f, _) => return Err(schema(format!("ring.field must be \"Q\" or \"Fp\", got {f:?}"))),
    };
    let ctx = VariableContext::new(&raw.ring.vars, field).map_err(|e| schema(format!("ring.vars: {e}")))?;

    let mut options = Options::default();
    let o = raw.options;
    if let Some(n) = o.n_max {
        if n == 0 {
            return Err(schema("options.n_max must be at least 1"));
        }
        options.n_max = n;
    }
    if let Some(b) = o.n_budget {
        options.budget.max_truncation = b;
    }
    if let Some(t) = o.term_budget {
        options.budget.max_terms = t;
    }
    options.q = o.q;
    if let Some(s) = o.s_max {
        options.s_max = s;
    }
    if let Some(k) = o.k {
        if k == 0 {
            return Err(schema("options.k must be at least 1"));
        }
        options.k = k;
    }

    let budget = options.budget;
    let quotient = raw
        .ring
        .quotient
        .iter()
        .enumerate()
        .map(|(i, s)| parse_at(s, &ctx, &format!("ring.quotient[{i}]"), &budget))
        .collect::<Result<Vec<_>>>()?;
    let ring = LocalRingPresentation::new(&ctx, Ideal::new(&ctx, quotient)?, raw.ring.dim)?;

    for key in raw.map.keys() {
        if ctx.index_of(key).is_none() {
            return Err(schema(format!("map.{key}: not a ring variable")));
        }
    }
    let images = ctx
        .names()
        .iter()
        .map(|v| match raw.map.get(v) {
            Some(s) => parse_at(s, &ctx, &format!("map.{v}"), &budget),
            None => Err(schema(format!("map: missing image for {v}"))),
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Problem {
        ring: Arc::new(ring),
        images,
        options,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::ParseErrorKind;

    const FROB: &str = r#"
[ring]
field = "Fp"
p = 2
vars = ["x", "y"]

[map]
x = "x^2"
y = "y^2"
"#;

    #[test]
    fn frobenius_file() {
        let p = parse_problem(FROB).unwrap();
        assert_eq!(p.ctx().field(), FieldSpec::PrimeField(2));
        assert_eq!(p.ring.dim(), Some(2));
        let phi = p.endomorphism().unwrap();
        assert_eq!(phi.lambda_n(3, &p.options.budget).unwrap(), 64);
        assert_eq!(p.options, Options::default());
    }

    #[test]
    fn non_local_image_parses() {
        let p = parse_problem(&FROB.replace("\"x^2\"", "\"x + 1\"")).unwrap();
        assert!(matches!(p.endomorphism(), Err(Error::NotLocal { .. })));
    }

    #[test]
    fn schema_errors() {
        for bad in [
            FROB.replace("p = 2", "p = 6"),
            FROB.replace("p = 2\n", ""),
            FROB.replace("\"Fp\"", "\"GF\""),
            FROB.replace("y = \"y^2\"", ""),
            FROB.replace("y = \"y^2\"", "y = \"y^2\"\nz = \"z\""),
            FROB.replace("y = \"y^2\"", "y = \"y^2\"\ny = \"y^3\""),
            FROB.replace("[map]", "colour = 1\n[map]"),
            FROB.replace("vars = [\"x\", \"y\"]", "vars = [\"x\", \"x\"]"),
            format!("{FROB}\n[options]\nn_max = 0\n"),
        ] {
            assert!(matches!(parse_problem(&bad), Err(Error::Schema(_))), "{bad}");
        }
    }

    #[test]
    fn expression_errors_name_their_key() {
        match parse_problem(&FROB.replace("\"y^2\"", "\"y + z\"")) {
            Err(Error::Parse(pe)) => {
                assert_eq!((pe.line, pe.column), (1, 5));
                assert_eq!(pe.kind, ParseErrorKind::UnknownVariable("z".into()));
                assert!(pe.message.starts_with("map.y:"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn options_and_quotient() {
        let src = r#"
[ring]
field = "Q"
vars = ["x", "y"]
quotient = ["xy"]

[map]
x = "x^2"
y = "y^3"

[options]
n_max = 8
N_budget = 64
term_budget = 1000
q = ["x^2", "y^3"]
s_max = 10
k = 3
"#;
        let p = parse_problem(src).unwrap();
        assert_eq!(p.options.n_max, 8);
        assert_eq!(p.options.budget.max_truncation, 64);
        assert_eq!(p.options.budget.max_terms, 1000);
        assert_eq!((p.options.s_max, p.options.k), (10, 3));
        assert_eq!(p.q_ideal().unwrap().unwrap().generators().len(), 2);
        assert_eq!(p.ring.dim(), Some(1));
    }

    #[test]
    fn declared_dimension_must_match_monomial_quotient() {
        let src = FROB.replace("vars = [\"x\", \"y\"]", "vars = [\"x\", \"y\"]\ndim = 1");
        assert!(matches!(parse_problem(&src), Err(Error::DimensionMismatch { .. })));
    }
}
