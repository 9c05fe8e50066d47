//! Boundary-value expressions in `x`, `y`, `r` and `theta`.
//!
//! Expressions use `+ - * / ^`, parentheses, the constants `pi` and `e`, and the
//! functions `log` (natural), `ln`, `exp`, `sqrt`, `abs`, `sin`, `cos`, `tan`,
//! `atan`, `atan2`, `min`, `max`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use meval::Context;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("cannot parse expression {expr:?}: {message}")]
    Parse { expr: String, message: String },
    #[error("cannot evaluate expression {expr:?}: {message}")]
    Eval { expr: String, message: String },
}

/// Where an expression is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    pub r: f64,
    pub theta: f64,
}

impl Sample {
    /// Cartesian point with `theta = atan2(y, x)` taken in `[0, 2π)`.
    pub fn planar(x: f64, y: f64) -> Self {
        let theta = y.atan2(x).rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π
        let theta = if theta >= TAU { 0.0 } else { theta };
        Self {
            x,
            y,
            r: x.hypot(y),
            theta,
        }
    }

    /// Polar point that keeps `theta` as given, so seam copies stay apart.
    pub fn polar(r: f64, theta: f64) -> Self {
        Self {
            x: r * theta.cos(),
            y: r * theta.sin(),
            r,
            theta,
        }
    }
}

/// A parsed expression, checked once at parse time.
#[derive(Debug, Clone)]
pub struct BoundaryExpr {
    source: String,
    expr: meval::Expr,
}

fn context() -> Context<'static> {
    let mut ctx = Context::new();
    ctx.func("log", f64::ln);
    ctx
}

impl BoundaryExpr {
    pub fn parse(source: &str) -> Result<Self, ExprError> {
        let expr: meval::Expr = source.parse().map_err(|e: meval::Error| ExprError::Parse {
            expr: source.to_string(),
            message: e.to_string(),
        })?;
        let parsed = Self {
            source: source.to_string(),
            expr,
        };
        // unknown names and wrong arities only show up on evaluation
        parsed.eval_in(&context(), Sample::planar(0.5, 0.25))?;
        Ok(parsed)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, at: Sample) -> Result<f64, ExprError> {
        self.eval_in(&context(), at)
    }

    /// Evaluates at many samples with a single context.
    pub fn eval_all(&self, at: impl IntoIterator<Item = Sample>) -> Result<Vec<f64>, ExprError> {
        let ctx = context();
        at.into_iter().map(|s| self.eval_in(&ctx, s)).collect()
    }

    fn eval_in(&self, ctx: &Context, at: Sample) -> Result<f64, ExprError> {
        let vars = [("x", at.x), ("y", at.y), ("r", at.r), ("theta", at.theta)];
        self.expr
            .eval_with_context((vars, ctx))
            .map_err(|e| ExprError::Eval {
                expr: self.source.clone(),
                message: e.to_string(),
            })
    }
}

impl FromStr for BoundaryExpr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for BoundaryExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}
