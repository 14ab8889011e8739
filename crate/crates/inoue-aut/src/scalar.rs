//! Exact arithmetic in the multiplicative group of coefficients.
//!
//! Every coefficient that appears in the chart formulas for a parabolic
//! Inoue surface `S(m, alpha)` lives in one finitely generated abelian
//! group: the free part is generated by a fundamental root `delta`
//! (with `alpha = delta^{2m}` and `beta = delta^2`) and the two torus
//! parameters `s`, `t`; the torsion part is the cyclic group of `N`-th
//! roots of unity generated by `zeta_N`.  A [`Scalar`] stores the
//! exponent vector in a unique normal form, so equality is exact and
//! decidable.  Complex evaluation is provided only as a cross-check
//! oracle, never as the source of truth.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("scalars belong to different contexts: {0} vs {1}")]
    ContextMismatch(ScalarContext, ScalarContext),
    #[error("torsion modulus {n} is not a positive multiple of 2m = {two_m}")]
    BadModulus { n: i64, two_m: i64 },
    #[error("no root of unity of order {order} in mu_{n}")]
    NoSuchRoot { order: i64, n: i64 },
    #[error("cannot bind defined abbreviation {0:?}; only free generators may be substituted")]
    BindsAbbreviation(Symbol),
    #[error("evaluation is missing an assignment for {0:?}")]
    MissingAssignment(Symbol),
    #[error("evaluation assigns zero to {0:?}")]
    ZeroAssignment(Symbol),
    #[error("no exact {degree}-th root of {value} in the coefficient group")]
    NoExactRoot { degree: i64, value: String },
}

/// Fixes the shape of the coefficient group: the Betti number `m` of the
/// surface under study and the torsion modulus `N` (a multiple of `2m`,
/// so that `rho = zeta_N^{N/m}` and half powers of `rho` exist).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ScalarContext {
    m: i64,
    n: i64,
}

impl fmt::Display for ScalarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, N={})", self.m, self.n)
    }
}

impl ScalarContext {
    /// Context with the smallest torsion modulus `N = 2m` that makes every
    /// coefficient of the chart formulas expressible.
    pub fn new(m: i64) -> Self {
        Self::with_modulus(m, 2 * m).expect("2m is always a valid modulus")
    }

    /// Context with an enlarged torsion modulus, e.g. for quotients by a
    /// cyclic group whose order does not divide `2m`.
    pub fn with_modulus(m: i64, n: i64) -> Result<Self, ScalarError> {
        if m < 1 || n < 1 || n % (2 * m) != 0 {
            return Err(ScalarError::BadModulus { n, two_m: 2 * m });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Torsion modulus `N`.
    pub fn modulus(&self) -> i64 {
        self.n
    }

    pub fn one(&self) -> Scalar {
        Scalar {
            ctx: *self,
            delta: 0,
            s: 0,
            t: 0,
            zeta: 0,
        }
    }

    /// The fundamental free generator; `delta^2 = beta`, `delta^{2m} = alpha`.
    pub fn delta(&self) -> Scalar {
        Scalar {
            delta: 1,
            ..self.one()
        }
    }

    /// Free torus parameter `s`.
    pub fn s(&self) -> Scalar {
        Scalar { s: 1, ..self.one() }
    }

    /// Free torus parameter `t`.
    pub fn t(&self) -> Scalar {
        Scalar { t: 1, ..self.one() }
    }

    /// `alpha = delta^{2m}`, the surface parameter.
    pub fn alpha(&self) -> Scalar {
        Scalar {
            delta: 2 * self.m,
            ..self.one()
        }
    }

    /// `beta = delta^2`, the fixed `m`-th root of `alpha`.
    pub fn beta(&self) -> Scalar {
        Scalar {
            delta: 2,
            ..self.one()
        }
    }

    /// The primitive `N`-th root of unity generating the torsion part.
    pub fn zeta(&self) -> Scalar {
        self.zeta_pow(1)
    }

    pub fn zeta_pow(&self, a: i64) -> Scalar {
        Scalar {
            zeta: a.rem_euclid(self.n),
            ..self.one()
        }
    }

    /// `rho = zeta_N^{N/m}`, the primitive `m`-th root of unity.
    pub fn rho(&self) -> Scalar {
        self.zeta_pow(self.n / self.m)
    }

    /// The primitive root of unity of the given order, if `order | N`.
    pub fn root_of_unity(&self, order: i64) -> Result<Scalar, ScalarError> {
        if order < 1 || self.n % order != 0 {
            return Err(ScalarError::NoSuchRoot { order, n: self.n });
        }
        Ok(self.zeta_pow(self.n / order))
    }
}

/// Names usable as substitution keys.  `Alpha` and `Beta` are defined
/// abbreviations of powers of `Delta`, so binding them is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Symbol {
    Delta,
    S,
    T,
    Alpha,
    Beta,
}

/// Complex values for the free generators, used by the numeric oracle.
#[derive(Debug, Clone, Copy, Default)]
pub struct Assignment {
    pub delta: Option<Complex64>,
    pub s: Option<Complex64>,
    pub t: Option<Complex64>,
}

impl Assignment {
    pub fn new(delta: Complex64, s: Complex64, t: Complex64) -> Self {
        Self {
            delta: Some(delta),
            s: Some(s),
            t: Some(t),
        }
    }

    fn get(&self, sym: Symbol) -> Option<Complex64> {
        match sym {
            Symbol::Delta => self.delta,
            Symbol::S => self.s,
            Symbol::T => self.t,
            _ => None,
        }
    }
}

/// An element of the coefficient group in normal form.
///
/// The free exponents are over the ordered generator list `(delta, s, t)`;
/// the torsion exponent is reduced modulo `N`.  Two scalars are equal if
/// and only if their reduced exponent vectors agree, which matches
/// numerical equality for every admissible assignment of the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    ctx: ScalarContext,
    delta: i64,
    s: i64,
    t: i64,
    zeta: i64,
}

impl Scalar {
    pub fn context(&self) -> ScalarContext {
        self.ctx
    }

    pub fn delta_exp(&self) -> i64 {
        self.delta
    }

    pub fn s_exp(&self) -> i64 {
        self.s
    }

    pub fn t_exp(&self) -> i64 {
        self.t
    }

    /// Exponent of `zeta_N`, reduced into `[0, N)`.
    pub fn zeta_exp(&self) -> i64 {
        self.zeta
    }

    pub fn is_one(&self) -> bool {
        self.delta == 0 && self.s == 0 && self.t == 0 && self.zeta == 0
    }

    /// True when the element lies in the torsion subgroup `mu_N`.
    pub fn is_torsion(&self) -> bool {
        self.delta == 0 && self.s == 0 && self.t == 0
    }

    /// Multiplicative order, when finite.
    pub fn order(&self) -> Option<i64> {
        if !self.is_torsion() {
            return None;
        }
        let n = self.ctx.n;
        Some(n / num::integer::gcd(self.zeta, n))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if self.ctx != other.ctx {
            return Err(ScalarError::ContextMismatch(self.ctx, other.ctx));
        }
        Ok(Scalar {
            ctx: self.ctx,
            delta: self.delta + other.delta,
            s: self.s + other.s,
            t: self.t + other.t,
            zeta: (self.zeta + other.zeta).rem_euclid(self.ctx.n),
        })
    }

    pub fn pow(&self, k: i64) -> Scalar {
        Scalar {
            ctx: self.ctx,
            delta: self.delta * k,
            s: self.s * k,
            t: self.t * k,
            zeta: (self.zeta * k).rem_euclid(self.ctx.n),
        }
    }

    pub fn inv(&self) -> Scalar {
        self.pow(-1)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.mul(&other.inv())
    }

    /// Homomorphic image under a partial substitution of free generators.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Scalar>) -> Result<Scalar, ScalarError> {
        for key in bindings.keys() {
            if matches!(key, Symbol::Alpha | Symbol::Beta) {
                return Err(ScalarError::BindsAbbreviation(*key));
            }
        }
        let mut out = self.ctx.one();
        out.zeta = self.zeta;
        for (sym, exp) in [
            (Symbol::Delta, self.delta),
            (Symbol::S, self.s),
            (Symbol::T, self.t),
        ] {
            match bindings.get(&sym) {
                Some(value) => out = out.mul(&value.pow(exp))?,
                None => match sym {
                    Symbol::Delta => out.delta += exp,
                    Symbol::S => out.s += exp,
                    Symbol::T => out.t += exp,
                    _ => unreachable!(),
                },
            }
        }
        Ok(out)
    }

    /// Numeric value under an assignment of the free generators, with
    /// `zeta_N` mapped to the principal root `exp(2 pi i / N)`.
    pub fn eval(&self, assignment: &Assignment) -> Result<Complex64, ScalarError> {
        let mut value = Complex64::new(1.0, 0.0);
        for (sym, exp) in [
            (Symbol::Delta, self.delta),
            (Symbol::S, self.s),
            (Symbol::T, self.t),
        ] {
            if exp == 0 {
                continue;
            }
            let base = assignment
                .get(sym)
                .ok_or(ScalarError::MissingAssignment(sym))?;
            if base.norm() == 0.0 {
                return Err(ScalarError::ZeroAssignment(sym));
            }
            value *= base.powi(exp as i32);
        }
        let angle = 2.0 * std::f64::consts::PI * (self.zeta as f64) / (self.ctx.n as f64);
        value *= Complex64::from_polar(1.0, angle);
        Ok(value)
    }

    /// Exact `degree`-th root, picking the branch with smallest nonnegative
    /// torsion exponent.  Fails when the free exponents are not divisible
    /// or the torsion congruence has no solution.
    pub fn nth_root(&self, degree: i64) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::NoExactRoot {
            degree,
            value: self.to_string(),
        };
        if degree < 1 {
            return Err(err());
        }
        if self.delta % degree != 0 || self.s % degree != 0 || self.t % degree != 0 {
            return Err(err());
        }
        let n = self.ctx.n;
        let zeta = (0..n)
            .find(|b| (b * degree).rem_euclid(n) == self.zeta)
            .ok_or_else(err)?;
        Ok(Scalar {
            ctx: self.ctx,
            delta: self.delta / degree,
            s: self.s / degree,
            t: self.t / degree,
            zeta,
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.zeta != 0 {
            if self.zeta == 1 {
                parts.push(format!("zeta_{}", self.ctx.n));
            } else {
                parts.push(format!("zeta_{}^{}", self.ctx.n, self.zeta));
            }
        }
        for (name, exp) in [("delta", self.delta), ("s", self.s), ("t", self.t)] {
            match exp {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{exp}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S>(&self, serializer: S) -> Result<S::Ok, S::Error>
    where
        S: serde::Serializer,
    {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Scalar", 5)?;
        st.serialize_field("delta_exp", &self.delta)?;
        st.serialize_field("s_exp", &self.s)?;
        st.serialize_field("t_exp", &self.t)?;
        st.serialize_field("zeta_exp", &self.zeta)?;
        st.serialize_field("zeta_order", &self.ctx.n)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(m: i64) -> ScalarContext {
        ScalarContext::new(m)
    }

    #[test]
    fn beta_times_beta_power_is_alpha() {
        for m in 1..=8 {
            let c = ctx(m);
            let lhs = c.beta().mul(&c.beta().pow(m - 1)).unwrap();
            assert_eq!(lhs, c.alpha());
        }
    }

    #[test]
    fn rho_has_order_m() {
        for m in 1..=8 {
            let c = ctx(m);
            assert!(c.rho().pow(m).is_one());
            assert_eq!(c.rho().order(), Some(m));
        }
    }

    #[test]
    fn abelian_cancellation() {
        let c = ctx(3);
        let st = c.s().mul(&c.t()).unwrap();
        let s_inv_t = c.s().inv().mul(&c.t()).unwrap();
        assert_eq!(st.mul(&s_inv_t).unwrap(), c.t().pow(2));
    }

    #[test]
    fn pow_examples() {
        for m in 1..=8 {
            let c = ctx(m);
            assert_eq!(c.delta().pow(2 * m), c.alpha());
            assert!(c.rho().pow(m).is_one());
        }
        // s = beta^{(m-1)/2} is taken as delta^{m-1}; its square is beta^{m-1}.
        for m in [2, 4, 6, 8] {
            let c = ctx(m);
            let s = c.delta().pow(m - 1);
            assert_eq!(s.pow(2), c.beta().pow(m - 1));
        }
    }

    #[test]
    fn substitute_examples() {
        let c = ctx(4);
        let mut bind = BTreeMap::new();
        bind.insert(Symbol::S, c.delta().pow(3));
        let st = c.s().mul(&c.t()).unwrap();
        let expected = c.delta().pow(3).mul(&c.t()).unwrap();
        assert_eq!(st.substitute(&bind).unwrap(), expected);

        assert_eq!(c.t().substitute(&BTreeMap::new()).unwrap(), c.t());

        let mut bind_rho = BTreeMap::new();
        bind_rho.insert(Symbol::S, c.rho());
        assert!(c.s().pow(4).substitute(&bind_rho).unwrap().is_one());

        let mut bad = BTreeMap::new();
        bad.insert(Symbol::Alpha, c.one());
        assert!(matches!(
            c.s().substitute(&bad),
            Err(ScalarError::BindsAbbreviation(Symbol::Alpha))
        ));
    }

    #[test]
    fn eval_examples() {
        let c = ctx(1);
        let a = Assignment {
            delta: Some(Complex64::new(0.9, 0.0)),
            ..Default::default()
        };
        let v = c.alpha().eval(&a).unwrap();
        assert!((v - Complex64::new(0.81, 0.0)).norm() < 1e-12);

        let c = ScalarContext::with_modulus(4, 8).unwrap();
        let rho = c.rho();
        let v = rho.eval(&Assignment::default()).unwrap();
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-12);

        assert!(matches!(
            c.s().eval(&Assignment::default()),
            Err(ScalarError::MissingAssignment(Symbol::S))
        ));
        let zero = Assignment {
            s: Some(Complex64::new(0.0, 0.0)),
            ..Default::default()
        };
        assert!(matches!(
            c.s().eval(&zero),
            Err(ScalarError::ZeroAssignment(Symbol::S))
        ));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = ctx(2).delta();
        let b = ctx(3).delta();
        assert!(matches!(a.mul(&b), Err(ScalarError::ContextMismatch(_, _))));
    }

    #[test]
    fn torsion_group_axioms_exhaustive() {
        // Exhaustive associativity and inverse law on the torsion part for
        // every modulus N <= 24 reachable from some (m, N).
        for n in (2..=24).step_by(2) {
            let c = ScalarContext::with_modulus(1, n).unwrap();
            for a in 0..n {
                let x = c.zeta_pow(a);
                assert!(x.mul(&x.inv()).unwrap().is_one());
                for b in 0..n {
                    let y = c.zeta_pow(b);
                    for cc in 0..n {
                        let z = c.zeta_pow(cc);
                        let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
                        let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn nth_root_picks_exact_branch() {
        let c = ScalarContext::with_modulus(6, 12).unwrap();
        let alpha = c.alpha();
        let r = alpha.nth_root(3).unwrap();
        assert_eq!(r.pow(3), alpha);
        // zeta_12^2 has cube roots in mu_12 (e.g. zeta_12^6 * ... pick smallest).
        let z = c.zeta_pow(3);
        let r = z.nth_root(3).unwrap();
        assert_eq!(r.pow(3), z);
        assert!(c.delta().nth_root(2).is_err());
    }

    fn arb_scalar(m: i64) -> impl Strategy<Value = Scalar> {
        let n = 2 * m;
        (-6i64..=6, -6i64..=6, -6i64..=6, 0..n).prop_map(move |(d, s, t, z)| Scalar {
            ctx: ScalarContext::new(m),
            delta: d,
            s,
            t,
            zeta: z,
        })
    }

    proptest! {
        // Normal forms are unique: symbolic equality must match numeric
        // agreement at a generic assignment, and group laws hold exactly.
        #[test]
        fn normal_form_matches_numeric_oracle(a in arb_scalar(3), b in arb_scalar(3)) {
            let assign = Assignment::new(
                Complex64::new(0.83, 0.21),
                Complex64::new(1.07, -0.33),
                Complex64::new(0.64, 0.52),
            );
            let va = a.eval(&assign).unwrap();
            let vb = b.eval(&assign).unwrap();
            let numeric_equal = (va - vb).norm() <= 1e-9 * va.norm().max(vb.norm()).max(1.0);
            prop_assert_eq!(a == b, numeric_equal);

            let prod = a.mul(&b).unwrap();
            let vp = prod.eval(&assign).unwrap();
            prop_assert!((vp - va * vb).norm() <= 1e-9 * vp.norm().max(1.0));
        }

        #[test]
        fn pow_is_repeated_mul(a in arb_scalar(2), k in 0i64..6) {
            let mut acc = a.context().one();
            for _ in 0..k {
                acc = acc.mul(&a).unwrap();
            }
            prop_assert_eq!(a.pow(k), acc);
        }
    }
}
