//! The small JSON expression language of the `chow` subcommand.
//!
//! ```json
//! {"space": [1, 1, 1, 1], "expr": {"op": "deg", "of": {"op": "pow", "base": "alpha", "n": 4}}}
//! ```
//!
//! Classes are `"alpha"`, `"one"`, or an object with an `op` of `pow`, `mul`,
//! `add`, `scale`, `newton`, `cf` or `deg`. Bundles are a multiple of the
//! tangent bundle plus signed line bundles `O(twist)`.

use anyhow::{bail, Result};
use cobcalc::chow::{
    alpha, cf_chern, newton_class, tangent_bundle, ChowClass, ProjProduct, VirtualBundle,
};
use cobcalc::Partition;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChowRequest {
    pub space: Vec<u32>,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expr {
    Named(Named),
    Op(Box<Op>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Named {
    Alpha,
    One,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum Op {
    Deg { of: Expr },
    Pow { base: Expr, n: u32 },
    Mul { of: Vec<Expr> },
    Add { of: Vec<Expr> },
    Scale { by: String, of: Expr },
    Newton { bundle: Bundle, n: u32 },
    Cf { bundle: Bundle, index: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    /// Copies of the tangent bundle; negative for the stable normal bundle.
    #[serde(default)]
    pub tangent: i64,
    #[serde(default)]
    pub lines: Vec<Line>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Line {
    #[serde(default = "plus")]
    pub sign: i8,
    pub twist: Vec<i64>,
}

fn plus() -> i8 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowResponse {
    pub space: Vec<u32>,
    pub expr: Expr,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<Vec<ClassTerm>>,
}

impl Bundle {
    fn build(&self, x: &ProjProduct) -> Result<VirtualBundle> {
        let mut v = VirtualBundle::zero(x);
        let t = tangent_bundle(x);
        for _ in 0..self.tangent.unsigned_abs() {
            v = v.concat(&if self.tangent > 0 {
                t.clone()
            } else {
                t.negate()
            })?;
        }
        for line in &self.lines {
            if line.sign != 1 && line.sign != -1 {
                bail!("line sign must be 1 or -1, got {}", line.sign);
            }
            v.push(line.sign, line.twist.clone())?;
        }
        Ok(v)
    }
}

fn eval(x: &ProjProduct, e: &Expr) -> Result<ChowClass> {
    Ok(match e {
        Expr::Named(Named::Alpha) => alpha(x),
        Expr::Named(Named::One) => ChowClass::one(x),
        Expr::Op(op) => match &**op {
            Op::Deg { of } => ChowClass::constant(x, eval(x, of)?.deg()),
            Op::Pow { base, n } => eval(x, base)?.pow(*n),
            Op::Mul { of } => {
                let mut acc = ChowClass::one(x);
                for f in of {
                    acc = acc.mul(&eval(x, f)?)?;
                }
                acc
            }
            Op::Add { of } => {
                let mut acc = ChowClass::zero(x);
                for f in of {
                    acc = acc.add(&eval(x, f)?)?;
                }
                acc
            }
            Op::Scale { by, of } => {
                let c: BigInt = by
                    .parse()
                    .map_err(|_| anyhow::anyhow!("bad integer {by:?}"))?;
                eval(x, of)?.scale(&c)
            }
            Op::Newton { bundle, n } => newton_class(&bundle.build(x)?, *n)?,
            Op::Cf { bundle, index } => {
                let i = Partition::from_multiset(index.iter().copied());
                cf_chern(&bundle.build(x)?, &i)?
            }
        },
    })
}

pub fn evaluate(req: &ChowRequest) -> Result<ChowResponse> {
    let x = ProjProduct::new(req.space.clone())?;
    let top_deg = match &req.expr {
        Expr::Op(op) => match &**op {
            Op::Deg { of } => Some(of),
            _ => None,
        },
        Expr::Named(_) => None,
    };
    let (degree, class) = match top_deg {
        Some(of) => (Some(eval(&x, of)?.deg().to_string()), None),
        None => {
            let terms = eval(&x, &req.expr)?
                .terms()
                .iter()
                .map(|(e, c)| ClassTerm {
                    exponents: e.clone(),
                    coeff: c.to_string(),
                })
                .collect();
            (None, Some(terms))
        }
    };
    Ok(ChowResponse {
        space: req.space.clone(),
        expr: req.expr.clone(),
        degree,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> ChowResponse {
        evaluate(&serde_json::from_str(text).unwrap()).unwrap()
    }

    #[test]
    fn documented_example() {
        let r = run(
            r#"{"space":[1,1,1,1],"expr":{"op":"deg","of":{"op":"pow","base":"alpha","n":4}}}"#,
        );
        assert_eq!(r.degree.as_deref(), Some("24"));
    }

    #[test]
    fn newton_number_of_projective_space() {
        let r = run(
            r#"{"space":[3],"expr":{"op":"deg","of":{"op":"newton","bundle":{"tangent":1},"n":3}}}"#,
        );
        assert_eq!(r.degree.as_deref(), Some("4"));
    }

    #[test]
    fn stong_number_through_expressions() {
        // s_2 of the zero locus in ℙ¹×ℙ¹×ℙ¹×ℙ¹ is deg(α² · c_(2)(2ξ − T))
        let r = run(
            r#"{"space":[1,1,1,1],"expr":{"op":"deg","of":{"op":"mul","of":[
                {"op":"pow","base":"alpha","n":2},
                {"op":"newton","n":2,"bundle":{"tangent":-1,"lines":[{"twist":[1,1,1,1]},{"twist":[1,1,1,1]}]}}
            ]}}}"#,
        );
        assert_eq!(r.degree.as_deref(), Some("48"));
    }

    #[test]
    fn class_output_round_trips_the_request() {
        let text = r#"{"space":[2],"expr":{"op":"cf","bundle":{"lines":[{"sign":-1,"twist":[1]}]},"index":[2]}}"#;
        let req: ChowRequest = serde_json::from_str(text).unwrap();
        let r = evaluate(&req).unwrap();
        assert_eq!(r.expr, req.expr);
        let echoed: ChowRequest =
            serde_json::from_value(serde_json::json!({"space": r.space, "expr": r.expr})).unwrap();
        assert_eq!(echoed, req);
        let class = r.class.unwrap();
        assert_eq!(
            class,
            vec![ClassTerm {
                exponents: vec![2],
                coeff: "-1".into()
            }]
        );
    }

    #[test]
    fn rejects_unknown_ops() {
        let bad = r#"{"space":[1],"expr":{"op":"exp","of":"alpha"}}"#;
        assert!(serde_json::from_str::<ChowRequest>(bad).is_err());
        let bad = r#"{"space":[1],"expr":"beta"}"#;
        assert!(serde_json::from_str::<ChowRequest>(bad).is_err());
    }
}
