//! Textual instance files.
//!
//! Line-oriented key/value format with nested lists; `#` starts a comment.
//! Exact rationals are written as `p/q`; plain decimals are accepted in both
//! arithmetic modes.
//!
//! ```text
//! truncation: 3
//! kind: truncated
//! weights: geometric(1/2)
//! constraint: id=1 coeffs=[1:1] bound=1
//! constraint: id=-1 coeffs=[1:-1] bound=0
//! objective: coeffs=[1:-1/4, 2:-1/16] constant=0 tail=1/48
//! ```
//!
//! `weights` may also be `explicit(w1, w2, ...)` or omitted for unit weights.

use crate::error::Error;
use crate::scalar::Scalar;
use crate::system::{Coeffs, Constraint, ConstraintSystem, Objective, SystemKind, WeightRule};

pub struct ParsedInstance<S> {
    pub system: ConstraintSystem<S>,
    pub objective: Option<Objective<S>>,
}

fn split_fields(rest: &str) -> Result<Vec<(String, String)>, Error> {
    // Fields are whitespace-separated `key=value` tokens; bracketed list
    // values may contain whitespace of their own.
    let mut tokens: Vec<String> = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in rest.chars() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
            }
            c => current.push(c),
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
        .into_iter()
        .map(|t| {
            t.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {t:?}")))
        })
        .collect()
}

fn parse_coeff_list<S: Scalar>(value: &str, truncation: usize) -> Result<Coeffs<S>, Error> {
    let inner = value
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [index:value, ...], got {value:?}")))?;
    let mut pairs = Vec::new();
    for item in inner.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (index, coeff) = item
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected index:value, got {item:?}")))?;
        let index: usize = index
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad coordinate index {index:?}")))?;
        pairs.push((index, S::parse_literal(coeff)?));
    }
    Coeffs::from_pairs(&pairs, truncation)
}

/// Parses an instance document.
pub fn parse_instance<S: Scalar>(text: &str) -> Result<ParsedInstance<S>, Error> {
    let mut truncation: Option<usize> = None;
    let mut kind = SystemKind::Finite;
    let mut weight_spec: Option<(String, String)> = None;
    let mut constraint_lines: Vec<String> = Vec::new();
    let mut objective_line: Option<String> = None;

    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected key: value, got {line:?}")))?;
        let rest = rest.trim();
        match key.trim() {
            "truncation" => {
                truncation = Some(
                    rest.parse()
                        .map_err(|_| Error::Parse(format!("bad truncation level {rest:?}")))?,
                );
            }
            "kind" => {
                kind = match rest {
                    "finite" => SystemKind::Finite,
                    "truncated" => SystemKind::Truncated,
                    other => {
                        return Err(Error::Parse(format!(
                            "kind must be finite or truncated, got {other:?}"
                        )))
                    }
                };
            }
            "weights" => {
                let (name, args) = rest
                    .split_once('(')
                    .and_then(|(n, a)| a.strip_suffix(')').map(|a| (n, a)))
                    .ok_or_else(|| {
                        Error::Parse(format!("expected weights: name(args), got {rest:?}"))
                    })?;
                weight_spec = Some((name.trim().to_string(), args.to_string()));
            }
            "constraint" => constraint_lines.push(rest.to_string()),
            "objective" => objective_line = Some(rest.to_string()),
            other => return Err(Error::Parse(format!("unknown key {other:?}"))),
        }
    }

    let truncation = truncation.ok_or_else(|| Error::Parse("missing truncation line".into()))?;

    let (weights, weight_rule) = match weight_spec {
        None => (vec![S::one(); truncation], WeightRule::Explicit),
        Some((name, args)) => match name.as_str() {
            "geometric" => {
                let ratio = S::parse_literal(&args)?;
                let mut w = S::one();
                let weights = (0..truncation)
                    .map(|_| {
                        w = w.clone() * ratio.clone();
                        w.clone()
                    })
                    .collect();
                (weights, WeightRule::Geometric { ratio })
            }
            "explicit" => {
                let weights: Result<Vec<S>, Error> =
                    args.split(',').map(|a| S::parse_literal(a)).collect();
                (weights?, WeightRule::Explicit)
            }
            other => return Err(Error::Parse(format!("unknown weight rule {other:?}"))),
        },
    };

    let mut constraints = Vec::with_capacity(constraint_lines.len());
    for line in &constraint_lines {
        let mut id: Option<i64> = None;
        let mut coeffs: Option<Coeffs<S>> = None;
        let mut bound: Option<S> = None;
        for (key, value) in split_fields(line)? {
            match key.as_str() {
                "id" => {
                    id = Some(
                        value
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad constraint id {value:?}")))?,
                    )
                }
                "coeffs" => coeffs = Some(parse_coeff_list(&value, truncation)?),
                "bound" => bound = Some(S::parse_literal(&value)?),
                other => return Err(Error::Parse(format!("unknown constraint field {other:?}"))),
            }
        }
        let id = id.ok_or_else(|| Error::Parse(format!("constraint missing id: {line:?}")))?;
        let coeffs =
            coeffs.ok_or_else(|| Error::Parse(format!("constraint {id} missing coeffs")))?;
        let bound = bound.ok_or_else(|| Error::Parse(format!("constraint {id} missing bound")))?;
        constraints.push(Constraint::new(id, coeffs, bound)?);
    }

    let objective = match objective_line {
        None => None,
        Some(line) => {
            let mut coeffs: Option<Coeffs<S>> = None;
            let mut constant = S::zero();
            let mut tail: Option<S> = None;
            for (key, value) in split_fields(&line)? {
                match key.as_str() {
                    "coeffs" => coeffs = Some(parse_coeff_list(&value, truncation)?),
                    "constant" => constant = S::parse_literal(&value)?,
                    "tail" => tail = Some(S::parse_literal(&value)?),
                    other => {
                        return Err(Error::Parse(format!("unknown objective field {other:?}")))
                    }
                }
            }
            let coeffs = coeffs.ok_or_else(|| Error::Parse("objective missing coeffs".into()))?;
            Some(Objective::new(coeffs, constant, tail)?)
        }
    };

    let system = ConstraintSystem::new(constraints, weights, weight_rule, truncation, kind)?;
    Ok(ParsedInstance { system, objective })
}

/// Renders a system (and optional objective) in the instance-file format.
pub fn write_instance<S: Scalar>(
    sys: &ConstraintSystem<S>,
    objective: Option<&Objective<S>>,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("truncation: {}\n", sys.truncation()));
    out.push_str(&format!(
        "kind: {}\n",
        match sys.kind() {
            SystemKind::Finite => "finite",
            SystemKind::Truncated => "truncated",
        }
    ));
    match sys.weight_rule() {
        WeightRule::Geometric { ratio } => {
            out.push_str(&format!("weights: geometric({})\n", ratio.literal()));
        }
        WeightRule::Explicit => {
            let ws: Vec<String> = sys.weights().iter().map(|w| w.literal()).collect();
            out.push_str(&format!("weights: explicit({})\n", ws.join(", ")));
        }
    }
    for c in sys.constraints() {
        let coeffs: Vec<String> = c
            .functional()
            .iter()
            .map(|(i, v)| format!("{}:{}", i, v.literal()))
            .collect();
        out.push_str(&format!(
            "constraint: id={} coeffs=[{}] bound={}\n",
            c.id(),
            coeffs.join(", "),
            c.bound().literal()
        ));
    }
    if let Some(obj) = objective {
        let coeffs: Vec<String> = obj
            .linear()
            .iter()
            .map(|(i, v)| format!("{}:{}", i, v.literal()))
            .collect();
        out.push_str(&format!(
            "objective: coeffs=[{}] constant={}",
            coeffs.join(", "),
            obj.constant().literal()
        ));
        if let Some(tail) = obj.tail_bound() {
            out.push_str(&format!(" tail={}", tail.literal()));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn parse_hilbert_cube_document() {
        let text = "\
# two-coordinate cube slice
truncation: 2
kind: truncated
weights: geometric(1/2)
constraint: id=1 coeffs=[1:1] bound=1
constraint: id=-1 coeffs=[1:-1] bound=0
constraint: id=2 coeffs=[2:1] bound=1
constraint: id=-2 coeffs=[2:-1] bound=0
objective: coeffs=[1:-1/4, 2:-1/16] constant=0 tail=1/48
";
        let parsed = parse_instance::<Q>(text).unwrap();
        assert_eq!(parsed.system.truncation(), 2);
        assert_eq!(parsed.system.len(), 4);
        assert_eq!(parsed.system.kind(), SystemKind::Truncated);
        let obj = parsed.objective.unwrap();
        assert_eq!(obj.linear().coefficient(1), Q::from_ratio(-1, 4));
        assert_eq!(obj.tail_bound().unwrap(), &Q::from_ratio(1, 48));
    }

    #[test]
    fn roundtrip_through_writer() {
        let sys = instances::hilbert_cube::<Q>(&Q::from_ratio(1, 2), 3).unwrap();
        let obj = instances::riesz_objective(&sys, &Q::from_ratio(-1, 1)).unwrap();
        let text = write_instance(&sys, Some(&obj));
        let parsed = parse_instance::<Q>(&text).unwrap();
        assert_eq!(parsed.system, sys);
        assert_eq!(parsed.objective.unwrap(), obj);
    }

    #[test]
    fn roundtrip_float_mode() {
        let sys = instances::cube::<f64>(3).unwrap();
        let text = write_instance(&sys, None);
        let parsed = parse_instance::<f64>(&text).unwrap();
        assert_eq!(parsed.system, sys);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!(
            parse_instance::<f64>("constraint: id=1 coeffs=[1:1] bound=1\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_instance::<f64>("truncation: 2\nconstraint: id=1 coeffs=[3:1] bound=1\n"),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_instance::<f64>("truncation: 2\nnonsense: 5\n"),
            Err(Error::Parse(_))
        ));
    }
}
