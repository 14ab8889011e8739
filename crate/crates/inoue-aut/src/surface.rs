//! The surface `S(m, alpha) = W / <gamma_{m, alpha}>` and its
//! automorphisms.
//!
//! A cover automorphism descends to `S` exactly when it commutes with the
//! covering generator; the descending elements form the group studied
//! here.  A [`SurfaceAut`] is the coset of a [`CoverAut`] modulo
//! `<gamma>`, stored through a canonical representative (chart shift
//! reduced into `[0, m)`), so equality on the surface is decidable.  On
//! top of that the module builds the explicit group
//! `H = <nu_bar> x| (<rho> x C*(t))` and mechanically verifies the
//! structure statements about it: centrality of the torus, the twist of
//! the semidirect action, the `m` cyclic subgroups and their conjugacy,
//! the quotient tables, the action on homology, and fixed loci with their
//! local weights.

use serde::Serialize;
use thiserror::Error;

use crate::autgroup::{AutContext, AutError, CoverAut};
use crate::cover::{Chart, CurveLabel, MapError};
use crate::report::CheckSet;
use crate::scalar::{Scalar, ScalarContext, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("element does not descend to the surface (it fails to commute with gamma)")]
    NotDescending,
    #[error("element has infinite order on the surface")]
    InfiniteOrder,
    #[error("surfaces differ: S({0}) vs S({1})")]
    SurfaceMismatch(i64, i64),
    #[error("invalid surface data: {0}")]
    BadSurface(String),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `S(m, alpha)`, with `alpha` an exact scalar whose distinguished
/// expression is `delta^{2m}` for the standard surface of the context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surface {
    actx: AutContext,
    m: i64,
    alpha: Scalar,
}

impl Surface {
    /// The standard `S(m, alpha)` with the smallest torsion modulus `2m`.
    pub fn standard(m: i64) -> Result<Self, SurfaceError> {
        Self::with_modulus(m, 2 * m)
    }

    /// Standard surface in a context with an enlarged torsion modulus
    /// (needed when quotienting by roots of unity of order not dividing `2m`).
    pub fn with_modulus(m: i64, n: i64) -> Result<Self, SurfaceError> {
        let sctx = ScalarContext::with_modulus(m, n)?;
        let actx = AutContext::new(sctx)?;
        Ok(Self {
            actx,
            m,
            alpha: sctx.alpha(),
        })
    }

    /// A surface `S(m, alpha)` embedded in an ambient coefficient context,
    /// e.g. a quotient or covering partner of the context's standard
    /// surface.  Requires `m | N` (so the rotation root exists) and a
    /// parameter with positive `delta`-exponent (so reduction mod
    /// `<alpha>` is well defined).
    pub fn in_context(actx: AutContext, m: i64, alpha: Scalar) -> Result<Self, SurfaceError> {
        if m < 1 {
            return Err(SurfaceError::BadSurface(format!("m = {m}")));
        }
        if actx.scalars().modulus() % m != 0 {
            return Err(SurfaceError::BadSurface(format!(
                "m = {m} does not divide the torsion modulus {}",
                actx.scalars().modulus()
            )));
        }
        if alpha.delta_exp() <= 0 {
            return Err(SurfaceError::BadSurface(format!(
                "parameter {alpha} has no positive delta part"
            )));
        }
        Ok(Self { actx, m, alpha })
    }

    pub fn context(&self) -> AutContext {
        self.actx
    }

    pub fn scalars(&self) -> ScalarContext {
        self.actx.scalars()
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn alpha(&self) -> Scalar {
        self.alpha
    }

    /// Euler number; equals the second Betti number for these surfaces.
    pub fn euler_number(&self) -> i64 {
        self.m
    }

    pub fn default_window(&self) -> i64 {
        3 * self.m
    }

    /// The covering generator `gamma_{m, alpha}` in normal form.
    pub fn gamma(&self) -> Result<CoverAut, SurfaceError> {
        Ok(CoverAut::gamma_general(self.actx, &self.alpha, self.m)?)
    }

    /// The primitive `m`-th root of unity for this surface.
    pub fn rho(&self) -> Scalar {
        self.scalars()
            .root_of_unity(self.m)
            .expect("constructors guarantee m | N")
    }

    /// True iff the cover automorphism commutes with the covering
    /// generator, i.e. induces an automorphism of `S`.
    pub fn descends(&self, g: &CoverAut) -> Result<bool, SurfaceError> {
        Ok(g.commutes_with(&self.gamma()?)?)
    }

    /// The induced surface automorphism, with canonical coset representative.
    pub fn aut(&self, g: CoverAut) -> Result<SurfaceAut, SurfaceError> {
        if !self.descends(&g)? {
            return Err(SurfaceError::NotDescending);
        }
        let rep = self.canonicalize(g)?;
        Ok(SurfaceAut {
            surface: *self,
            rep,
        })
    }

    fn canonicalize(&self, g: CoverAut) -> Result<CoverAut, SurfaceError> {
        let q = g.shift().div_euclid(self.m);
        let correction = self.gamma()?.pow(q)?.inverse()?;
        Ok(g.compose(&correction)?)
    }

    pub fn identity_aut(&self) -> Result<SurfaceAut, SurfaceError> {
        self.aut(CoverAut::identity(self.actx))
    }

    /// `nu_bar`, the induced cyclic rotation of order `m`.
    pub fn nu_bar(&self) -> Result<SurfaceAut, SurfaceError> {
        self.aut(CoverAut::nu(self.actx)?)
    }

    /// The torus element `(u, v)` on the surface.
    pub fn torus_aut(&self, u: Scalar, v: Scalar) -> Result<SurfaceAut, SurfaceError> {
        self.aut(CoverAut::torus(self.actx, u, v))
    }

    /// The curve configuration: the length-`m` cycle of rational curves
    /// plus the elliptic curve `E` with `E^2 = -m`.
    pub fn curve_config(&self) -> CurveConfig {
        CurveConfig::cycle_with_elliptic(self.m)
    }
}

/// Translation class on `E = C^* / <alpha>`: the coefficient `c` of
/// `w -> c w` on the cover curve, reduced modulo the covering translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ETranslation {
    alpha: Scalar,
    rep: Scalar,
}

impl ETranslation {
    pub fn new(alpha: Scalar, c: Scalar) -> Self {
        let q = c.delta_exp().div_euclid(alpha.delta_exp());
        let rep = c
            .mul(&alpha.pow(-q))
            .expect("class representative stays in context");
        Self { alpha, rep }
    }

    pub fn representative(&self) -> Scalar {
        self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_one()
    }

    pub fn mul(&self, other: &ETranslation) -> Result<ETranslation, ScalarError> {
        Ok(Self::new(self.alpha, self.rep.mul(&other.rep)?))
    }

    pub fn pow(&self, k: i64) -> ETranslation {
        Self::new(self.alpha, self.rep.pow(k))
    }

    /// Order of the translation class, when finite.
    pub fn order(&self) -> Option<i64> {
        if self.rep.s_exp() != 0 || self.rep.t_exp() != 0 {
            return None;
        }
        let cap = self.alpha.delta_exp().abs().max(1) * self.rep.context().modulus() + 1;
        (1..=cap).find(|k| self.pow(*k).is_identity())
    }
}

impl std::fmt::Display for ETranslation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// Whether the restriction to `E` fixes it pointwise or translates it
/// freely (a nontrivial translation of an elliptic curve has no fixed
/// points).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EStatus {
    PointwiseFixed,
    FreeTranslation { order: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixedNode {
    /// Node `p_k = C_k . C_{k+1}`, the origin of chart `U(k)`.
    pub index: i64,
    /// Exponents of the primitive root of unity of the element's order on
    /// the two local coordinates `(x_k, y_k)`.
    pub weights: (i64, i64),
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedLocusReport {
    pub order: i64,
    pub rotation: i64,
    pub nodes: Vec<FixedNode>,
    pub pointwise_components: Vec<i64>,
    pub e_status: EStatus,
}

/// An automorphism of `S`, stored by its canonical coset representative:
/// the chart shift is reduced into `[0, m)` by absorbing powers of the
/// covering generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceAut {
    surface: Surface,
    rep: CoverAut,
}

impl SurfaceAut {
    pub fn surface(&self) -> Surface {
        self.surface
    }

    /// The canonical cover representative.
    pub fn representative(&self) -> CoverAut {
        self.rep
    }

    pub fn compose(&self, other: &SurfaceAut) -> Result<SurfaceAut, SurfaceError> {
        if self.surface != other.surface {
            return Err(SurfaceError::SurfaceMismatch(
                self.surface.m,
                other.surface.m,
            ));
        }
        self.surface.aut(self.rep.compose(&other.rep)?)
    }

    pub fn inverse(&self) -> Result<SurfaceAut, SurfaceError> {
        self.surface.aut(self.rep.inverse()?)
    }

    pub fn pow(&self, k: i64) -> Result<SurfaceAut, SurfaceError> {
        self.surface.aut(self.rep.pow(k)?)
    }

    pub fn conjugated_by(&self, g: &SurfaceAut) -> Result<SurfaceAut, SurfaceError> {
        g.inverse()?.compose(self)?.compose(g)
    }

    pub fn is_identity(&self) -> bool {
        self.rep.shift() == 0 && self.rep.u().is_one() && self.rep.v().is_one()
    }

    /// Order in `Aut S`, when finite.
    pub fn order(&self) -> Option<i64> {
        let cap = self.surface.m * self.surface.scalars().modulus() + 1;
        let mut acc = *self;
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self).ok()?;
        }
        None
    }

    /// Rotation index on the cycle of rational curves: `C_i -> C_{i+j}`.
    pub fn cycle_rotation(&self) -> i64 {
        self.rep.shift().rem_euclid(self.surface.m)
    }

    /// Rotation recomputed from curve images over a chart window; agrees
    /// with [`Self::cycle_rotation`] and additionally certifies that the
    /// element permutes the curve labels consistently.
    pub fn verified_cycle_rotation(&self, window: i64) -> Result<i64, SurfaceError> {
        let shift = self.rep.shift();
        for k in -window..=window {
            let image = self.rep.curve_image(CurveLabel::C(k))?;
            if image != CurveLabel::C(k + shift) {
                return Err(SurfaceError::BadSurface(format!(
                    "curve C({k}) maps to {image}, expected C({})",
                    k + shift
                )));
            }
        }
        if self.rep.curve_image(CurveLabel::E)? != CurveLabel::E {
            return Err(SurfaceError::BadSurface("E is not preserved".into()));
        }
        Ok(shift.rem_euclid(self.surface.m))
    }

    /// The translation class induced on `E`: the coefficient `c` of
    /// `w -> c w` on `E~`, taken modulo `<alpha>`.
    pub fn induced_on_e(&self) -> Result<ETranslation, SurfaceError> {
        let on_v = self.rep.realize(Chart::V)?;
        // Sanity: the realization fixes {x = 0} so the restriction is w -> c w.
        if on_v.exponents[0] != [1, 0] || on_v.exponents[1][1] != 1 {
            return Err(SurfaceError::BadSurface(
                "realization on V does not restrict to E~".into(),
            ));
        }
        Ok(ETranslation::new(
            self.surface.alpha,
            on_v.coefficients[0],
        ))
    }

    /// Permutation matrix on the homology classes `[E], [C_0], ..,
    /// [C_{m-1}]` (columns are images); the identity exactly on `Aut_1`.
    pub fn h2_action(&self) -> Vec<Vec<i64>> {
        let m = self.surface.m as usize;
        let rot = self.cycle_rotation() as usize;
        let size = m + 1;
        let mut matrix = vec![vec![0i64; size]; size];
        matrix[0][0] = 1;
        for i in 0..m {
            matrix[1 + (i + rot) % m][1 + i] = 1;
        }
        matrix
    }

    /// Fixed points on `S` with local rotation weights.  Requires finite
    /// order; elements with nonzero rotation act freely on the cycle, and
    /// the `E`-side is reported through the translation class.
    pub fn fixed_locus(&self) -> Result<FixedLocusReport, SurfaceError> {
        let order = self.order().ok_or(SurfaceError::InfiniteOrder)?;
        let rotation = self.cycle_rotation();
        let n = self.surface.scalars().modulus();
        let mut nodes = Vec::new();
        let mut pointwise_components = Vec::new();
        if rotation == 0 {
            let u = self.rep.u();
            let v = self.rep.v();
            for k in 0..self.surface.m {
                let c1 = u.pow(-k).mul(&v)?;
                let c2 = u.pow(k + 1).mul(&v.inv())?;
                debug_assert!(c1.is_torsion() && c2.is_torsion());
                let w1 = (c1.zeta_exp() * order / n).rem_euclid(order);
                let w2 = (c2.zeta_exp() * order / n).rem_euclid(order);
                nodes.push(FixedNode {
                    index: k,
                    weights: (w1, w2),
                });
                if c1.is_one() {
                    pointwise_components.push(k);
                }
            }
        }
        let class = self.induced_on_e()?;
        let e_status = if class.is_identity() {
            EStatus::PointwiseFixed
        } else {
            EStatus::FreeTranslation {
                order: class.order().ok_or(SurfaceError::InfiniteOrder)?,
            }
        };
        Ok(FixedLocusReport {
            order,
            rotation,
            nodes,
            pointwise_components,
            e_status,
        })
    }

    /// True when the element fixes no point of `S` at all: it must move
    /// every curve label and translate `E` (equivalently the generic
    /// `w`-coordinate class) nontrivially.
    pub fn is_fixed_point_free(&self) -> Result<bool, SurfaceError> {
        Ok(self.cycle_rotation() != 0 && !self.induced_on_e()?.is_identity())
    }
}

/// Cycle of rational curves plus the elliptic curve, as dual-graph data.
/// For `m = 1` the single component is nodal with self-intersection `0`
/// and a self-loop in the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveConfig {
    pub components: Vec<(String, i64)>,
    pub adjacency: Vec<(usize, usize)>,
    pub elliptic: (String, i64),
}

impl CurveConfig {
    pub fn cycle_with_elliptic(m: i64) -> Self {
        let self_int = if m == 1 { 0 } else { -2 };
        let components = (0..m).map(|i| (format!("C{i}"), self_int)).collect();
        let adjacency = (0..m as usize)
            .map(|i| (i, (i + 1) % m as usize))
            .collect();
        Self {
            components,
            adjacency,
            elliptic: ("E".into(), -m),
        }
    }

    /// Configuration from an explicit cycle of self-intersections (in the
    /// plain chain normalization; a length-1 cycle is displayed nodal,
    /// with the `+2` self-gluing correction).
    pub fn from_cycle(self_ints: &[i64], elliptic_self_int: i64) -> Self {
        let m = self_ints.len();
        let components = self_ints
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("C{i}"), if m == 1 { s + 2 } else { *s }))
            .collect();
        let adjacency = (0..m).map(|i| (i, (i + 1) % m)).collect();
        Self {
            components,
            adjacency,
            elliptic: ("E".into(), elliptic_self_int),
        }
    }

    /// DOT rendering of the dual graph (nodes labelled with
    /// self-intersections; edges are intersection points).
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        out.push_str(&format!(
            "  E [label=\"{} ({})\"];\n",
            self.elliptic.0, self.elliptic.1
        ));
        for (label, self_int) in &self.components {
            out.push_str(&format!("  {label} [label=\"{label} ({self_int})\"];\n"));
        }
        for (a, b) in &self.adjacency {
            out.push_str(&format!(
                "  {} -- {};\n",
                self.components[*a].0, self.components[*b].0
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// The explicitly constructed group
/// `H = <nu_bar> x| (<rho> x C*(t))` inside `Aut S`.
pub struct HStructure {
    pub surface: Surface,
    pub nu_bar: SurfaceAut,
    pub rho_gen: SurfaceAut,
}

impl HStructure {
    /// Element `nu_bar^c . (rho^a, rho^b t^{t_exp})`.
    pub fn element(&self, c: i64, a: i64, b: i64, t_exp: i64) -> Result<SurfaceAut, SurfaceError> {
        let sctx = self.surface.scalars();
        let rho = self.surface.rho();
        let torus = self.surface.torus_aut(
            rho.pow(a),
            rho.pow(b).mul(&sctx.t().pow(t_exp))?,
        )?;
        self.nu_bar.pow(c)?.compose(&torus)
    }

    /// Coset representative of `(c, a)` in `H / C*(t)`.
    pub fn coset_rep(&self, c: i64, a: i64) -> Result<SurfaceAut, SurfaceError> {
        self.element(c, a, 0, 0)
    }

    /// Projection `H -> Z_m x Z_m`: rotation index and `rho`-exponent.
    pub fn project(&self, g: &SurfaceAut) -> Result<(i64, i64), SurfaceError> {
        let m = self.surface.m;
        let u = g.representative().u();
        if !u.is_torsion() {
            return Err(SurfaceError::BadSurface(format!(
                "u-coordinate {u} is not torsion"
            )));
        }
        let n = self.surface.scalars().modulus();
        let step = n / m;
        if u.zeta_exp() % step != 0 {
            return Err(SurfaceError::BadSurface(format!(
                "u-coordinate {u} is not in <rho>"
            )));
        }
        Ok((g.cycle_rotation(), (u.zeta_exp() / step).rem_euclid(m)))
    }
}

/// Constructs `H` from its generators and verifies the defining
/// relations: descent of the generators, the order of `nu_bar`, trivial
/// intersection with `Aut_1`, closure of the coset grid, and the
/// abelianness and order of `H / C*(t)`.
pub fn build_h(surface: &Surface) -> Result<(HStructure, CheckSet), SurfaceError> {
    let mut checks = CheckSet::new();
    let m = surface.m();
    let sctx = surface.scalars();
    let nu_cover = CoverAut::nu(surface.context())?;
    checks.push(
        "nu descends to S",
        "(sdn)",
        surface.descends(&nu_cover)?,
        String::new(),
    );
    let rho_cover = CoverAut::torus(surface.context(), surface.rho(), sctx.one());
    checks.push(
        "(rho, 1) descends to S",
        "(sdr)",
        surface.descends(&rho_cover)?,
        String::new(),
    );
    checks.push(
        "symbolic (1, t) descends to S",
        "(sdr)",
        surface.descends(&CoverAut::torus(surface.context(), sctx.one(), sctx.t()))?,
        String::new(),
    );

    let h = HStructure {
        surface: *surface,
        nu_bar: surface.nu_bar()?,
        rho_gen: surface.aut(rho_cover)?,
    };

    checks.push(
        "nu_bar has order exactly m",
        "Lemma 2.1",
        h.nu_bar.order() == Some(m),
        format!("order = {:?}", h.nu_bar.order()),
    );

    let mut trivial_intersection = true;
    for c in 1..m {
        if h.nu_bar.pow(c)?.cycle_rotation() == 0 {
            trivial_intersection = false;
        }
    }
    checks.push(
        "<nu_bar> meets Aut_1 S trivially",
        "Lemma 2.1",
        trivial_intersection,
        String::new(),
    );

    let mut fixed_point_free = true;
    for c in 1..m {
        if !h.nu_bar.pow(c)?.is_fixed_point_free()? {
            fixed_point_free = false;
        }
    }
    checks.push(
        "nontrivial powers of nu_bar act freely",
        "Lemma 2.1",
        fixed_point_free,
        String::new(),
    );

    // Closure of the coset grid under composition, and uniqueness of the
    // m^2 representatives.
    let mut closure = true;
    let mut distinct = true;
    let mut reps = Vec::new();
    for c in 0..m {
        for a in 0..m {
            let rep = h.coset_rep(c, a)?;
            if reps.iter().any(|(_, _, r)| *r == rep) {
                distinct = false;
            }
            reps.push((c, a, rep));
        }
    }
    for (c1, a1, r1) in &reps {
        for (c2, a2, r2) in &reps {
            let product = r1.compose(r2)?;
            let projected = h.project(&product)?;
            if projected != ((c1 + c2).rem_euclid(m), (a1 + a2).rem_euclid(m)) {
                closure = false;
            }
        }
    }
    checks.push(
        "H is closed and projects onto Z_m x Z_m",
        "Lemma 2.1",
        closure,
        String::new(),
    );
    checks.push(
        "the m^2 coset representatives are distinct",
        "Cor 1.2(2)",
        distinct,
        String::new(),
    );

    Ok((h, checks))
}

/// Structure checks for the main theorem, within the explicit group `H`:
/// the `t`-torus is exactly the center, the rotation-trivial part is the
/// commutative `mu_m x C*`, and conjugation by `nu_bar` twists
/// `(rho^a, t)` to `(rho^a, rho^a t)`.
pub fn verify_theorem_1_1(surface: &Surface) -> Result<CheckSet, SurfaceError> {
    let (h, mut checks) = build_h(surface)?;
    let m = surface.m();
    let n = surface.scalars().modulus();
    let sctx = surface.scalars();

    // (1) Every t-torus element (including a symbolic one) is central.
    let mut torus_central = true;
    for b in 0..n {
        for t_exp in [0, 1] {
            let center_candidate = surface.torus_aut(
                sctx.one(),
                sctx.zeta_pow(b).mul(&sctx.t().pow(t_exp))?,
            )?;
            for generator in [&h.nu_bar, &h.rho_gen] {
                if center_candidate.compose(generator)? != generator.compose(&center_candidate)? {
                    torus_central = false;
                }
            }
        }
    }
    checks.push(
        "C*(t) is central in H",
        "Thm 1.1(1)",
        torus_central,
        String::new(),
    );

    // (1) Nothing outside the t-torus is central.
    let mut nothing_else_central = true;
    let mut witness = String::new();
    for c in 0..m {
        for a in 0..m {
            if (c, a) == (0, 0) {
                continue;
            }
            let g = h.element(c, a, 1, 1)?;
            let commutes_with_all = g.compose(&h.nu_bar)? == h.nu_bar.compose(&g)?
                && g.compose(&h.rho_gen)? == h.rho_gen.compose(&g)?;
            if commutes_with_all {
                nothing_else_central = false;
                witness = format!("nu_bar^{c} (rho^{a}, ..) is central");
            }
        }
    }
    checks.push(
        "no element of H outside C*(t) is central",
        "Thm 1.1(1)",
        nothing_else_central,
        witness,
    );

    // (2) The rotation-trivial subgroup is commutative, isomorphic to
    // mu_m x C*: multiplication is componentwise on (rho^a, v).
    let mut aut1_commutative = true;
    let mut aut1_componentwise = true;
    for a1 in 0..m {
        for b1 in 0..n {
            let g1 = h.element(0, a1, b1, 1)?;
            for a2 in 0..m {
                for b2 in 0..n {
                    let g2 = h.element(0, a2, b2, 0)?;
                    let p12 = g1.compose(&g2)?;
                    if p12 != g2.compose(&g1)? {
                        aut1_commutative = false;
                    }
                    let expected = h.element(0, a1 + a2, b1 + b2, 1)?;
                    if p12 != expected {
                        aut1_componentwise = false;
                    }
                }
            }
        }
    }
    checks.push(
        "Aut_1 S (within H) is commutative",
        "Thm 1.1(2)",
        aut1_commutative,
        String::new(),
    );
    checks.push(
        "Aut_1 S multiplies componentwise as mu_m x C*",
        "Thm 1.1(2)",
        aut1_componentwise,
        String::new(),
    );

    // (3) Conjugation by nu_bar maps (rho^a, t) to (rho^a, rho^a t).
    let mut twist_ok = true;
    for a in 0..m {
        for b in 0..n {
            let g = h.element(0, a, b, 1)?;
            let conj = g.conjugated_by(&h.nu_bar)?;
            let expected = h.element(0, a, b + a, 1)?;
            if conj != expected {
                twist_ok = false;
            }
        }
    }
    checks.push(
        "nu_bar (rho^a, t) nu_bar^-1 = (rho^a, rho^a t)",
        "Thm 1.1(3)",
        twist_ok,
        String::new(),
    );

    Ok(checks)
}

/// The `m` cyclic subgroups `M_j` of `Aut_1`, their conjugacy under
/// `nu_bar`, the `mu_m x mu_m` quotient table, and the `m` sections
/// `<nu_bar_{beta'}>` of `H / Aut_1`.
pub fn verify_corollary_1_2(surface: &Surface) -> Result<CheckSet, SurfaceError> {
    let (h, _) = build_h(surface)?;
    let mut checks = CheckSet::new();
    let m = surface.m();
    let n = surface.scalars().modulus();
    let rho = surface.rho();

    // (1) Enumerate all cyclic subgroups of order m in Aut_1 with trivial
    // intersection with Aut_0 = C*(t).  Candidate generators are the
    // torsion pairs (rho^x, xi) with xi^m = 1, i.e. xi in <rho>.
    let mut subgroups: Vec<Vec<(i64, i64)>> = Vec::new();
    for x in 0..m {
        for y in 0..m {
            let gen = surface.torus_aut(rho.pow(x), rho.pow(y))?;
            if gen.order() != Some(m) {
                continue;
            }
            let mut elements: Vec<(i64, i64)> = (0..m)
                .map(|k| ((x * k).rem_euclid(m), (y * k).rem_euclid(m)))
                .collect();
            elements.sort_unstable();
            elements.dedup();
            // Trivial intersection with the torus: only the identity has
            // trivial rho-part.
            if elements.iter().any(|(a, b)| *a == 0 && *b != 0) {
                continue;
            }
            if !subgroups.contains(&elements) {
                subgroups.push(elements);
            }
        }
    }
    checks.push(
        format!("exactly m = {m} cyclic subgroups of order m in Aut_1"),
        "Cor 1.2(1)",
        subgroups.len() as i64 == m,
        format!("found {}", subgroups.len()),
    );

    // They are the M_j = <(rho, rho^j)> and nu_bar conjugates M_j to M_{j+1}.
    let m_j = |j: i64| -> Vec<(i64, i64)> {
        let mut elements: Vec<(i64, i64)> = (0..m)
            .map(|k| (k.rem_euclid(m), (j * k).rem_euclid(m)))
            .collect();
        elements.sort_unstable();
        elements.dedup();
        elements
    };
    let all_are_mj = (0..m).all(|j| subgroups.contains(&m_j(j)));
    checks.push(
        "the subgroups are M_j = <(rho, rho^j)>, j = 0..m-1",
        "Cor 1.2(1)",
        all_are_mj,
        String::new(),
    );

    let mut conjugation_cycles = true;
    for j in 0..m {
        let gen = surface.torus_aut(rho, rho.pow(j))?;
        let conj = gen.conjugated_by(&h.nu_bar)?;
        let expected = surface.torus_aut(rho, rho.pow(j + 1))?;
        if conj != expected {
            conjugation_cycles = false;
        }
    }
    checks.push(
        "nu_bar M_j nu_bar^-1 = M_{j+1 mod m}",
        "Cor 1.2(1)",
        conjugation_cycles,
        String::new(),
    );

    // (2) H / C*(t) is abelian of order m^2 with the mu_m x mu_m table.
    let mut table_ok = true;
    for c1 in 0..m {
        for a1 in 0..m {
            let g1 = h.coset_rep(c1, a1)?;
            for c2 in 0..m {
                for a2 in 0..m {
                    let g2 = h.coset_rep(c2, a2)?;
                    let p = h.project(&g1.compose(&g2)?)?;
                    let q = h.project(&g2.compose(&g1)?)?;
                    let expected = ((c1 + c2).rem_euclid(m), (a1 + a2).rem_euclid(m));
                    if p != expected || q != expected {
                        table_ok = false;
                    }
                }
            }
        }
    }
    checks.push(
        "H / C*(t) has the Cayley table of mu_m x mu_m",
        "Cor 1.2(2)",
        table_ok,
        format!("{} products checked", m * m * m * m),
    );

    // (3) The m subgroups <nu_bar_{beta'}>, beta' an m-th root of alpha,
    // each map isomorphically onto H / Aut_1 = mu_m and act freely.
    let mut sections_ok = true;
    let mut distinct_sections: Vec<Vec<CoverAut>> = Vec::new();
    let gamma = surface.gamma()?;
    for i in 0..m {
        let nu_i_cover = CoverAut::nu_for_root(surface.context(), i)?;
        if nu_i_cover.pow(m)? != gamma {
            sections_ok = false;
        }
        let nu_i = surface.aut(nu_i_cover)?;
        if nu_i.order() != Some(m) {
            sections_ok = false;
        }
        let mut elements = Vec::new();
        for k in 0..m {
            let p = nu_i.pow(k)?;
            // The rotation homomorphism restricted to the section is the
            // isomorphism onto mu_m.
            if p.cycle_rotation() != k.rem_euclid(m) {
                sections_ok = false;
            }
            if k != 0 && !p.is_fixed_point_free()? {
                sections_ok = false;
            }
            elements.push(p.representative());
        }
        elements.sort_by_key(|r| (r.shift(), r.u().zeta_exp(), r.v().zeta_exp()));
        if !distinct_sections.contains(&elements) {
            distinct_sections.push(elements);
        }
    }
    checks.push(
        "each <nu_bar_{beta'}> is a free order-m section of H/Aut_1",
        "Cor 1.2(3)",
        sections_ok,
        String::new(),
    );
    checks.push(
        format!("the {m} sections are pairwise distinct"),
        "Cor 1.2(3)",
        distinct_sections.len() as i64 == m,
        format!("found {}", distinct_sections.len()),
    );
    let _ = n;

    Ok(checks)
}

/// Homomorphism properties of the three invariants attached to a surface
/// automorphism, plus the dihedral-image statement: the action on the
/// dual cycle graph is by rotations only, and every rotation occurs.
pub fn verify_homomorphisms(surface: &Surface, window: i64) -> Result<CheckSet, SurfaceError> {
    let (h, _) = build_h(surface)?;
    let mut checks = CheckSet::new();
    let m = surface.m();

    let mut elements = Vec::new();
    for c in 0..m {
        for a in 0..m {
            for (b, t_exp) in [(0, 0), (1, 1)] {
                elements.push(h.element(c, a, b, t_exp)?);
            }
        }
    }

    let mut rotation_hom = true;
    let mut e_hom = true;
    let mut h2_hom = true;
    for g1 in &elements {
        for g2 in &elements {
            let p = g1.compose(g2)?;
            if p.cycle_rotation() != (g1.cycle_rotation() + g2.cycle_rotation()).rem_euclid(m) {
                rotation_hom = false;
            }
            if p.induced_on_e()? != g1.induced_on_e()?.mul(&g2.induced_on_e()?)? {
                e_hom = false;
            }
            let m1 = g1.h2_action();
            let m2 = g2.h2_action();
            let mp = p.h2_action();
            let size = m as usize + 1;
            let mut product = vec![vec![0i64; size]; size];
            for i in 0..size {
                for j in 0..size {
                    product[i][j] = (0..size).map(|k| m2[i][k] * m1[k][j]).sum();
                }
            }
            if mp != product {
                h2_hom = false;
            }
        }
    }
    checks.push(
        "cycle_rotation is a homomorphism to Z_m",
        "Remark 2",
        rotation_hom,
        String::new(),
    );
    checks.push(
        "induced_on_E is a homomorphism to C*/<alpha>",
        "Lemma 2.2",
        e_hom,
        String::new(),
    );
    checks.push(
        "h2_action is a homomorphism",
        "Remark 4",
        h2_hom,
        String::new(),
    );

    // Every descending element translates E (the monomial-level
    // restatement of the finite-order translation lemma).
    let all_translate = elements.iter().all(|g| g.induced_on_e().is_ok());
    checks.push(
        "every element of H restricts to a translation of E",
        "Lemma 2.2",
        all_translate,
        String::new(),
    );

    // h2_action is trivial exactly on Aut_1.
    let identity_matrix = surface.identity_aut()?.h2_action();
    let h2_kernel_ok = elements
        .iter()
        .all(|g| (g.h2_action() == identity_matrix) == (g.cycle_rotation() == 0));
    checks.push(
        "h2_action is trivial exactly on Aut_1",
        "Remark 4",
        h2_kernel_ok,
        String::new(),
    );

    // The dihedral image: all elements act on the cycle graph as
    // rotations (successor-preserving label permutations), and the
    // rotation subgroup is exactly attained.
    let mut rotations_only = true;
    for g in &elements {
        let rot = g.verified_cycle_rotation(window)?;
        // Successor preservation: adjacency (C_k, C_{k+1}) maps to
        // (C_{k+rot}, C_{k+rot+1}); verified_cycle_rotation already
        // certifies the label shift, so a reflection cannot occur.
        if rot != g.cycle_rotation() {
            rotations_only = false;
        }
    }
    let mut image: Vec<i64> = elements.iter().map(|g| g.cycle_rotation()).collect();
    image.sort_unstable();
    image.dedup();
    checks.push(
        "the image in D_m is exactly the rotation subgroup",
        "Remark 2",
        rotations_only && image == (0..m).collect::<Vec<_>>(),
        format!("rotations attained: {image:?}"),
    );

    // Descent closure: descending torsion elements form a subgroup.
    let sctx = surface.scalars();
    let n = sctx.modulus();
    let mut descending = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let g = CoverAut::torus(surface.context(), sctx.zeta_pow(x), sctx.zeta_pow(y));
            if surface.descends(&g)? {
                descending.push(g);
            }
        }
    }
    let mut closure_ok = true;
    for g1 in &descending {
        if !surface.descends(&g1.inverse()?)? {
            closure_ok = false;
        }
        for g2 in &descending {
            if !surface.descends(&g1.compose(g2)?)? {
                closure_ok = false;
            }
        }
    }
    checks.push(
        "descending elements are closed under composition and inverse",
        "§2 commutation criterion",
        closure_ok,
        format!("{} torsion elements descend", descending.len()),
    );

    Ok(checks)
}
