//! Model specifications: the weights and evaluation points of a tensor
//! product of two-dimensional evaluation modules, plus the text file format
//! that describes one.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use num::Zero as _;

/// A gl(1|1) weight (alpha, beta) of a two-dimensional module factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl Weight {
    pub fn new(alpha: Scalar, beta: Scalar) -> Self {
        Weight { alpha, beta }
    }

    pub fn from_ints(alpha: i64, beta: i64) -> Self {
        Weight::new(Scalar::from_int(alpha), Scalar::from_int(beta))
    }

    /// alpha + beta; the factor is nondegenerate iff this is nonzero.
    pub fn sum(&self) -> Scalar {
        &self.alpha + &self.beta
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub field: Field,
    pub weights: Vec<Weight>,
    pub points: Vec<Scalar>,
    pub sector: Option<usize>,
}

impl ModelSpec {
    pub fn new(field: Field, weights: Vec<Weight>, points: Vec<Scalar>) -> Result<Self> {
        let m = ModelSpec {
            field,
            weights,
            points,
            sector: None,
        };
        m.validate()?;
        Ok(m)
    }

    /// Number of module factors.
    pub fn k(&self) -> usize {
        self.weights.len()
    }

    /// n = sum over factors of (alpha + beta).
    pub fn n(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for w in &self.weights {
            acc += &w.sum();
        }
        acc
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.is_empty() {
            return Err(Error::InvalidModel("no weights given".into()));
        }
        if self.weights.len() != self.points.len() {
            return Err(Error::InvalidModel(format!(
                "{} weights but {} points",
                self.weights.len(),
                self.points.len()
            )));
        }
        for (s, w) in self.weights.iter().enumerate() {
            if w.sum().is_zero() {
                return Err(Error::DegenerateWeight(s + 1));
            }
            if !self.field.contains(&w.alpha) || !self.field.contains(&w.beta) {
                return Err(Error::InvalidModel(format!(
                    "weight {} not in field {}",
                    s + 1,
                    self.field
                )));
            }
        }
        for (s, b) in self.points.iter().enumerate() {
            if !self.field.contains(b) {
                return Err(Error::InvalidModel(format!(
                    "point {b} not in field {}",
                    self.field
                )));
            }
            for other in &self.points[..s] {
                if other == b {
                    return Err(Error::InvalidModel(format!("repeated point {b}")));
                }
            }
        }
        if let Some(l) = self.sector {
            if l >= self.weights.len() {
                return Err(Error::InvalidModel(format!(
                    "sector {l} out of range 0..{}",
                    self.weights.len() - 1
                )));
            }
        }
        Ok(())
    }

    /// Parses the model-spec text format: `key = value` lines, `#` comments.
    ///
    /// ```text
    /// field = Qi
    /// weights = (1,0) (1,0) (1,0) (1,0)
    /// points = 1 -1 i -i
    /// sector = 1
    /// ```
    pub fn parse(text: &str) -> Result<ModelSpec> {
        let mut field = None;
        let mut weights = None;
        let mut points = None;
        let mut sector = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "field" => {
                    field = Some(match value {
                        "Q" => Field::Q,
                        "Qi" => Field::Qi,
                        _ => return Err(Error::Parse(format!("unknown field `{value}`"))),
                    })
                }
                "weights" => weights = Some(parse_weights(value)?),
                "points" => {
                    let mut ps = Vec::new();
                    for tok in value.split_whitespace() {
                        ps.push(Scalar::parse(tok)?);
                    }
                    points = Some(ps);
                }
                "sector" => {
                    sector = Some(value.parse::<usize>().map_err(|_| {
                        Error::Parse(format!("invalid sector `{value}`"))
                    })?)
                }
                _ => return Err(Error::Parse(format!("unknown key `{key}`"))),
            }
        }
        let mut m = ModelSpec {
            field: field.ok_or_else(|| Error::Parse("missing `field`".into()))?,
            weights: weights.ok_or_else(|| Error::Parse("missing `weights`".into()))?,
            points: points.ok_or_else(|| Error::Parse("missing `points`".into()))?,
            sector: None,
        };
        m.sector = sector;
        m.validate()?;
        Ok(m)
    }
}

fn parse_weights(value: &str) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for tok in value.split_whitespace() {
        let inner = tok
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("weight `{tok}` is not `(a,b)`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("weight `{tok}` is not `(a,b)`")))?;
        out.push(Weight::new(Scalar::parse(a)?, Scalar::parse(b)?));
    }
    Ok(out)
}

/// k=2, weights (1,0) twice, points 0 and 1; the smallest worked model.
pub fn model_a() -> ModelSpec {
    ModelSpec::new(
        Field::Q,
        vec![Weight::from_ints(1, 0), Weight::from_ints(1, 0)],
        vec![Scalar::from_int(0), Scalar::from_int(1)],
    )
    .unwrap()
}

/// k=4 over Q(i): all weights (1,0), points at the fourth roots of unity.
pub fn model_b() -> ModelSpec {
    ModelSpec::new(
        Field::Qi,
        vec![Weight::from_ints(1, 0); 4],
        vec![
            Scalar::from_int(1),
            Scalar::from_int(-1),
            Scalar::i(),
            -Scalar::i(),
        ],
    )
    .unwrap()
}

/// k=3 over Q whose master polynomial does not split (discriminant 73).
pub fn model_c() -> ModelSpec {
    ModelSpec::new(
        Field::Q,
        vec![
            Weight::from_ints(1, 0),
            Weight::from_ints(2, 0),
            Weight::from_ints(1, 0),
        ],
        vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(3)],
    )
    .unwrap()
}

/// k=3 with split simple master polynomial 8(x-1/2)(x-3/2).
pub fn model_d() -> ModelSpec {
    ModelSpec::new(
        Field::Q,
        vec![
            Weight::from_ints(3, 0),
            Weight::from_ints(2, 0),
            Weight::from_ints(3, 0),
        ],
        vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(2)],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_full_model() {
        let m = ModelSpec::parse(
            "# four points over Qi\nfield = Qi\nweights = (1,0) (1,0) (1,0) (1,0)\npoints = 1 -1 i -i\nsector = 1\n",
        )
        .unwrap();
        assert_eq!(m, ModelSpec { sector: Some(1), ..model_b() });
    }

    #[test]
    fn parse_errors_name_tokens() {
        let e = ModelSpec::parse("field = R\nweights = (1,0)\npoints = 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse(ref s) if s.contains("`R`")));
        let e = ModelSpec::parse("field = Q\nweights = 1,0\npoints = 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse(ref s) if s.contains("`1,0`")));
        let e = ModelSpec::parse("field = Q\nweights = (1,0)\npoints = 0\nflavor = up\n")
            .unwrap_err();
        assert!(matches!(e, Error::Parse(ref s) if s.contains("`flavor`")));
    }

    #[test]
    fn degenerate_weight_rejected() {
        let e = ModelSpec::new(
            Field::Q,
            vec![Weight::from_ints(1, 0), Weight::from_ints(1, -1)],
            vec![Scalar::from_int(0), Scalar::from_int(1)],
        )
        .unwrap_err();
        assert_eq!(e, Error::DegenerateWeight(2));
    }

    #[test]
    fn repeated_points_rejected() {
        let e = ModelSpec::new(
            Field::Q,
            vec![Weight::from_ints(1, 0), Weight::from_ints(1, 0)],
            vec![Scalar::from_int(1), Scalar::from_int(1)],
        )
        .unwrap_err();
        assert!(matches!(e, Error::InvalidModel(_)));
    }

    #[test]
    fn gaussian_scalars_need_qi() {
        let e = ModelSpec::new(
            Field::Q,
            vec![Weight::from_ints(1, 0)],
            vec![Scalar::i()],
        )
        .unwrap_err();
        assert!(matches!(e, Error::InvalidModel(_)));
    }

    #[test]
    fn n_sums_weights() {
        assert_eq!(model_d().n(), Scalar::from_int(8));
        assert_eq!(model_a().n(), Scalar::from_int(2));
    }
}
