//! The universal cover `W` as a chart atlas with monomial transitions.
//!
//! `W` is covered by charts `U(k) = C^2(x_k, y_k)` for `k` in `Z` together
//! with one chart `V = C^*(w) x C(x)`.  Every map that matters here --
//! transitions, the two-torus action, the covering generator -- is a
//! Laurent-monomial map between charts, stored as a 2x2 integer exponent
//! matrix plus a pair of exact [`Scalar`] coefficients.  Composition is
//! matrix multiplication on exponents, so identities between maps are
//! decidable exactly; a complex-arithmetic evaluator cross-checks the
//! algebra at random points.

use std::fmt;

use num::complex::Complex64;
use thiserror::Error;

use crate::scalar::{Assignment, Scalar, ScalarContext, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("charts {0} and {1} are not adjacent in the atlas")]
    NonAdjacent(Chart, Chart),
    #[error("cannot compose: first map targets {0} but second starts at {1}")]
    ChartMismatch(Chart, Chart),
    #[error("exponent matrix has determinant {0}, not +-1; map is not invertible")]
    NotUnimodular(i64),
    #[error("map does not send coordinate divisors to coordinate divisors")]
    DivisorIncompatible,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A chart of the atlas: `U(k)` with coordinates `(x_k, y_k)`, or the
/// boundary chart `V` with coordinates `(w, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    U(i64),
    V,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::U(k) => write!(f, "U({k})"),
            Chart::V => write!(f, "V"),
        }
    }
}

/// Label of one of the distinguished curves on `W`: the compact rational
/// curve `C~(k)` (cut out by `x_{k-1} = 0` on `U(k-1)` and `y_k = 0` on
/// `U(k)`) or the curve `E~ = {x = 0}` in `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveLabel {
    C(i64),
    E,
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveLabel::C(k) => write!(f, "C({k})"),
            CurveLabel::E => write!(f, "E"),
        }
    }
}

/// A Laurent-monomial map between two named charts:
/// `(z1, z2) -> (c1 * z1^{a11} z2^{a12}, c2 * z1^{a21} z2^{a22})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartMap {
    pub source: Chart,
    pub target: Chart,
    pub exponents: [[i64; 2]; 2],
    pub coefficients: [Scalar; 2],
}

impl ChartMap {
    pub fn new(
        source: Chart,
        target: Chart,
        exponents: [[i64; 2]; 2],
        coefficients: [Scalar; 2],
    ) -> Self {
        Self {
            source,
            target,
            exponents,
            coefficients,
        }
    }

    pub fn identity(ctx: ScalarContext, chart: Chart) -> Self {
        Self::diagonal(chart, chart, ctx.one(), ctx.one())
    }

    /// Map with identity exponent matrix and the given coefficients.
    pub fn diagonal(source: Chart, target: Chart, c1: Scalar, c2: Scalar) -> Self {
        Self::new(source, target, [[1, 0], [0, 1]], [c1, c2])
    }

    pub fn det(&self) -> i64 {
        self.exponents[0][0] * self.exponents[1][1] - self.exponents[0][1] * self.exponents[1][0]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.exponents == [[1, 0], [0, 1]]
            && self.coefficients[0].is_one()
            && self.coefficients[1].is_one()
    }

    /// `self` followed by `other`; exponent matrices multiply as
    /// `other.A * self.A` and coefficients push through `other`'s exponents.
    pub fn compose(&self, other: &ChartMap) -> Result<ChartMap, MapError> {
        if self.target != other.source {
            return Err(MapError::ChartMismatch(self.target, other.source));
        }
        let a = &self.exponents;
        let b = &other.exponents;
        let mut exponents = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                exponents[i][j] = b[i][0] * a[0][j] + b[i][1] * a[1][j];
            }
        }
        let push = |i: usize| -> Result<Scalar, ScalarError> {
            other.coefficients[i]
                .mul(&self.coefficients[0].pow(b[i][0]))?
                .mul(&self.coefficients[1].pow(b[i][1]))
        };
        Ok(ChartMap::new(
            self.source,
            other.target,
            exponents,
            [push(0)?, push(1)?],
        ))
    }

    pub fn inverse(&self) -> Result<ChartMap, MapError> {
        let det = self.det();
        if det != 1 && det != -1 {
            return Err(MapError::NotUnimodular(det));
        }
        let a = &self.exponents;
        let inv = [
            [a[1][1] / det, -a[0][1] / det],
            [-a[1][0] / det, a[0][0] / det],
        ];
        // z = (c^{-A^{-1}}) . w^{A^{-1}} inverts w = c . z^A.
        let c0 = self.coefficients[0]
            .pow(inv[0][0])
            .mul(&self.coefficients[1].pow(inv[0][1]))?
            .inv();
        let c1 = self.coefficients[0]
            .pow(inv[1][0])
            .mul(&self.coefficients[1].pow(inv[1][1]))?
            .inv();
        Ok(ChartMap::new(self.target, self.source, inv, [c0, c1]))
    }

    /// Numeric evaluation at a point of the source chart.
    pub fn eval(
        &self,
        z: [Complex64; 2],
        assignment: &Assignment,
    ) -> Result<[Complex64; 2], MapError> {
        let mut out = [Complex64::new(0.0, 0.0); 2];
        for i in 0..2 {
            out[i] = self.coefficients[i].eval(assignment)?
                * z[0].powi(self.exponents[i][0] as i32)
                * z[1].powi(self.exponents[i][1] as i32);
        }
        Ok(out)
    }
}

/// The transition map of the atlas between two adjacent charts:
/// `U(k) -> U(k+1)` is `x_{k+1} = y_k^{-1}, y_{k+1} = x_k y_k^2` and
/// `U(k) -> V` is `w = x_k y_k, x = x_k^{k+1} y_k^k`; the reverse
/// directions are the exact monomial inverses.
pub fn transition(ctx: ScalarContext, from: Chart, to: Chart) -> Result<ChartMap, MapError> {
    let one = ctx.one();
    match (from, to) {
        (Chart::U(k), Chart::U(k1)) if k1 == k + 1 => Ok(ChartMap::new(
            from,
            to,
            [[0, -1], [1, 2]],
            [one, one],
        )),
        (Chart::U(k), Chart::U(k1)) if k1 == k - 1 => {
            transition(ctx, to, from)?.inverse()
        }
        (Chart::U(k), Chart::V) => Ok(ChartMap::new(
            from,
            to,
            [[1, 1], [k + 1, k]],
            [one, one],
        )),
        (Chart::V, Chart::U(_)) => transition(ctx, to, from)?.inverse(),
        _ => Err(MapError::NonAdjacent(from, to)),
    }
}

/// The action of the torus element `(s, t)` on a chart:
/// `(x_k, y_k) -> (s^{-k} t x_k, s^{k+1} t^{-1} y_k)` on `U(k)` and
/// `(w, x) -> (s w, t x)` on `V`.
pub fn torus_action(s_val: &Scalar, t_val: &Scalar, chart: Chart) -> Result<ChartMap, MapError> {
    match chart {
        Chart::U(k) => {
            let c1 = s_val.pow(-k).mul(t_val)?;
            let c2 = s_val.pow(k + 1).mul(&t_val.inv())?;
            Ok(ChartMap::diagonal(chart, chart, c1, c2))
        }
        Chart::V => Ok(ChartMap::diagonal(chart, chart, *s_val, *t_val)),
    }
}

/// The chart realization of `gamma_{shift, alpha}` for an arbitrary exact
/// parameter: on `U(k - shift)` it is
/// `(x_{k-shift}, y_{k-shift}) -> (alpha^{-k} x, alpha^{k+1} y)` landing in
/// `U(k)`, and on `V` it is `(w, x) -> (alpha w, w^shift x)`.
pub fn gamma_map(alpha: &Scalar, shift: i64, source: Chart) -> Result<ChartMap, MapError> {
    match source {
        Chart::U(j) => {
            let k = j + shift;
            let c1 = alpha.pow(-k);
            let c2 = alpha.pow(k + 1);
            Ok(ChartMap::diagonal(source, Chart::U(k), c1, c2))
        }
        Chart::V => Ok(ChartMap::new(
            source,
            source,
            [[1, 0], [shift, 1]],
            [*alpha, alpha.context().one()],
        )),
    }
}

/// The covering generator `gamma_{m, alpha}` of `S(m, alpha)` on the given
/// source chart, with `alpha = delta^{2m}` from the context.  For
/// `shift = 0` this coincides with the torus action at `s = alpha, t = 1`.
pub fn gamma_chart(ctx: ScalarContext, shift: i64, source: Chart) -> Result<ChartMap, MapError> {
    gamma_map(&ctx.alpha(), shift, source)
}

/// Image of a labelled curve under an automorphism given by its chart
/// realizations.  The divisor is tracked through the chart where it is a
/// coordinate axis; maps that do not send coordinate divisors to
/// coordinate divisors are rejected.
pub fn curve_image<F>(realize: F, curve: CurveLabel) -> Result<CurveLabel, MapError>
where
    F: Fn(Chart) -> Result<ChartMap, MapError>,
{
    match curve {
        CurveLabel::C(k) => {
            // C~(k) is {y_k = 0} on U(k); a divisor-compatible automorphism
            // acts diagonally there, shifting the chart index.
            let map = realize(Chart::U(k))?;
            if map.exponents != [[1, 0], [0, 1]] {
                return Err(MapError::DivisorIncompatible);
            }
            let Chart::U(target) = map.target else {
                return Err(MapError::DivisorIncompatible);
            };
            // Cross-check on the other chart carrying the curve:
            // C~(k) is {x_{k-1} = 0} on U(k-1).
            let other = realize(Chart::U(k - 1))?;
            if other.exponents != [[1, 0], [0, 1]] || other.target != Chart::U(target - 1) {
                return Err(MapError::DivisorIncompatible);
            }
            Ok(CurveLabel::C(target))
        }
        CurveLabel::E => {
            // E~ is {x = 0} on V; compatibility needs the x-row to be
            // (j, 1) so that {x = 0} maps onto {x = 0}.
            let map = realize(Chart::V)?;
            if map.target != Chart::V
                || map.exponents[0] != [1, 0]
                || map.exponents[1][1] != 1
            {
                return Err(MapError::DivisorIncompatible);
            }
            Ok(CurveLabel::E)
        }
    }
}
