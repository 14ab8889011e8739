//! Toric model of the cover and its finite quotients.
//!
//! With the normalization `v_0 = (1,0), v_1 = (1,1)` the rays of `W` are
//! `v_k = (1, k)`; the cone spanned by `(v_k, v_{k+1})` is the chart
//! `U(k)` and the ray `v_k` is the curve `C~(k)`.  Quotients by finite
//! subgroups of the torus are lattice refinements; singular cones are
//! resolved by inserting the primitive lattice points on the boundary of
//! the convex hull, and self-intersection numbers come out of the ray
//! recurrence `v_{i-1} + v_{i+1} = -C_i^2 . v_i`.  A [`FanCycle`] holds
//! one fundamental domain of rays together with the monodromy matrix, so
//! the infinite periodic fan never has to be materialized.

use num::integer::gcd;
use num::rational::Ratio;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("cone is degenerate (determinant {0})")]
    Degenerate(i64),
    #[error("adjacent rays span a cone of determinant {0}; resolve with hj_resolve first")]
    NonUnimodular(i64),
    #[error("refinement parameters are invalid: {0}")]
    BadRefinement(String),
    #[error("matrix does not preserve the lattice")]
    NotPreserved,
    #[error("cannot contract: {0}")]
    BadContraction(String),
}

pub type Vec2 = (i64, i64);
pub type Mat2 = [[i64; 2]; 2];

pub fn det2(u: Vec2, v: Vec2) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

pub fn mat_apply(a: Mat2, v: Vec2) -> Vec2 {
    (a[0][0] * v.0 + a[0][1] * v.1, a[1][0] * v.0 + a[1][1] * v.1)
}

pub fn mat_mul(a: Mat2, b: Mat2) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_inv_unimodular(a: Mat2) -> Result<Mat2, FanError> {
    let d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if d != 1 && d != -1 {
        return Err(FanError::NotPreserved);
    }
    Ok([
        [a[1][1] / d, -a[0][1] / d],
        [-a[1][0] / d, a[0][0] / d],
    ])
}

/// A rank-2 lattice `L` with `Z^2 <= L <= (1/den) Z^2`, stored through an
/// integer basis of `den . L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    den: i64,
    /// Basis vectors of `den . L` (lower-triangular by construction).
    basis: [Vec2; 2],
}

/// The finite torus subgroups of the quotient constructions, identified
/// by their character data: the `t`-cyclic group of order `l`, or the
/// order-`l` subgroup of `M_j` acting with weights
/// `(rho_l^{j-k}, rho_l^{k-j+1})` on `U(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TorusSubgroup {
    TCyclic { l: i64 },
    Mixed { l: i64, j: i64 },
}

impl TorusSubgroup {
    pub fn order(&self) -> i64 {
        match self {
            TorusSubgroup::TCyclic { l } | TorusSubgroup::Mixed { l, .. } => *l,
        }
    }

    /// One-parameter-subgroup vector `n` with the subgroup generated by
    /// `exp(2 pi i n / l)`: pairing `n` with the dual basis of `U(0)`
    /// reproduces the weights of the generator on `(x_0, y_0)`.
    pub fn refinement_vector(&self) -> Vec2 {
        match self {
            TorusSubgroup::TCyclic { .. } => (0, 1),
            TorusSubgroup::Mixed { j, .. } => (1, *j),
        }
    }
}

/// Lattice basis of the span of the given generators (must be of full
/// rank), lower triangular: `((g1, y), (0, g2))`.
fn basis_from_generators(gens: &[Vec2]) -> Result<[Vec2; 2], FanError> {
    let mut primary: Option<Vec2> = None;
    let mut seconds: Vec<i64> = Vec::new();
    for &g in gens {
        let mut g = g;
        if let Some(p) = primary {
            // Euclid on first coordinates.
            let (mut a, mut b) = (p, g);
            while b.0 != 0 {
                let q = a.0.div_euclid(b.0);
                a = (a.0 - q * b.0, a.1 - q * b.1);
                std::mem::swap(&mut a, &mut b);
            }
            // a has first coordinate gcd, b has first coordinate 0.
            primary = Some(a);
            seconds.push(b.1);
        } else if g.0 != 0 {
            if g.0 < 0 {
                g = (-g.0, -g.1);
            }
            primary = Some(g);
        } else {
            seconds.push(g.1);
        }
    }
    let p = primary.ok_or_else(|| FanError::BadRefinement("rank-deficient".into()))?;
    let g2 = seconds.iter().fold(0i64, |acc, y| gcd(acc, y.abs()));
    if g2 == 0 {
        return Err(FanError::BadRefinement("rank-deficient".into()));
    }
    Ok([p, (0, g2)])
}

impl Lattice {
    pub fn standard() -> Self {
        Self {
            den: 1,
            basis: [(1, 0), (0, 1)],
        }
    }

    pub fn is_standard(&self) -> bool {
        self.index_over_standard() == 1
    }

    /// The refinement `Z^2 + Z . (vec / l)`, of index exactly `l` over the
    /// standard lattice.
    pub fn refine(vec: Vec2, l: i64) -> Result<Self, FanError> {
        if l < 1 {
            return Err(FanError::BadRefinement(format!("l = {l}")));
        }
        let basis = basis_from_generators(&[(l, 0), (0, l), vec])?;
        let lattice = Self { den: l, basis };
        if lattice.index_over_standard() != l {
            return Err(FanError::BadRefinement(format!(
                "refinement by {vec:?}/{l} has index {} instead of {l}",
                lattice.index_over_standard()
            )));
        }
        Ok(lattice)
    }

    fn det(&self) -> i64 {
        det2(self.basis[0], self.basis[1]).abs()
    }

    /// `[L : Z^2]`.
    pub fn index_over_standard(&self) -> i64 {
        self.den * self.den / self.det()
    }

    /// Coordinates of a vector of `den . L` in the basis.
    fn coords_raw(&self, w: Vec2) -> Result<Vec2, FanError> {
        // x . basis[0] + y . basis[1] = w with basis[1] = (0, g2).
        let (b1, b2) = (self.basis[0], self.basis[1]);
        if w.0 % b1.0 != 0 {
            return Err(FanError::NotPreserved);
        }
        let x = w.0 / b1.0;
        let rem = w.1 - x * b1.1;
        if rem % b2.1 != 0 {
            return Err(FanError::NotPreserved);
        }
        Ok((x, rem / b2.1))
    }

    /// `L`-coordinates of an ambient integer vector.
    pub fn coords(&self, v: Vec2) -> Vec2 {
        self.coords_raw((self.den * v.0, self.den * v.1))
            .expect("Z^2 is contained in every refinement")
    }

    /// Primitive `L`-coordinates and the divisibility multiplicity: a ray
    /// that was primitive upstairs becomes divisible exactly when its
    /// divisor lies in the branch locus of the quotient.
    pub fn primitive(&self, v: Vec2) -> (Vec2, i64) {
        let c = self.coords(v);
        let g = gcd(c.0.abs(), c.1.abs()).max(1);
        ((c.0 / g, c.1 / g), g)
    }

    /// The matrix of an ambient lattice automorphism in `L`-coordinates;
    /// fails when the automorphism does not preserve `L`.
    pub fn matrix_in_coords(&self, a: Mat2) -> Result<Mat2, FanError> {
        let col = |b: Vec2| self.coords_raw(mat_apply(a, b));
        let c1 = col(self.basis[0])?;
        let c2 = col(self.basis[1])?;
        Ok([[c1.0, c2.0], [c1.1, c2.1]])
    }
}

/// Refinement realizing the quotient by a finite torus subgroup.
pub fn quotient_lattice(base: &Lattice, subgroup: TorusSubgroup) -> Result<Lattice, FanError> {
    if !base.is_standard() {
        return Err(FanError::BadRefinement(
            "refinements are taken over the standard lattice of W".into(),
        ));
    }
    let l = subgroup.order();
    if let TorusSubgroup::Mixed { l, j } = subgroup {
        if j < 0 || j >= l.max(1) {
            return Err(FanError::BadRefinement(format!("j = {j} not in [0, {l})")));
        }
    }
    Lattice::refine(subgroup.refinement_vector(), l)
}

/// The ray family of `W`: `v_k = (1, k)` in the normalization fixed by
/// `v_0 = (1,0), v_1 = (1,1)`.
#[derive(Debug, Clone, Copy)]
pub struct RaySequence {
    pub lo: i64,
    pub hi: i64,
}

pub fn rays_of_w(lo: i64, hi: i64) -> RaySequence {
    RaySequence { lo, hi }
}

impl RaySequence {
    pub fn ray(&self, k: i64) -> Vec2 {
        (1, k)
    }

    pub fn rays(&self) -> Vec<Vec2> {
        (self.lo..=self.hi).map(|k| self.ray(k)).collect()
    }

    /// Dual basis `(a_k, b_k)` of the cone `(v_k, v_{k+1})`, i.e. the
    /// exponents of the chart coordinates `(x_k, y_k)`:
    /// `<a_k, v_k> = 0, <a_k, v_{k+1}> = 1, <b_k, v_k> = 1, <b_k, v_{k+1}> = 0`.
    pub fn dual_basis(&self, k: i64) -> (Vec2, Vec2) {
        ((-k, 1), (k + 1, -1))
    }

    /// Change of dual bases between adjacent cones, as the exponent
    /// matrix expressing `(a_{k+1}, b_{k+1})` in terms of `(a_k, b_k)`.
    pub fn transition_exponents(&self, k: i64) -> Mat2 {
        let (a0, b0) = self.dual_basis(k);
        let (a1, b1) = self.dual_basis(k + 1);
        let solve = |m: Vec2| -> Vec2 {
            // m = p . a0 + q . b0; (a0, b0) is unimodular.
            let d = det2(a0, b0);
            let p = det2(m, b0) / d;
            let q = det2(a0, m) / d;
            (p, q)
        };
        let r1 = solve(a1);
        let r2 = solve(b1);
        [[r1.0, r1.1], [r2.0, r2.1]]
    }
}

/// Primitive lattice points on the compact boundary of the convex hull of
/// `cone(u1, u2) . (L - 0)`, exclusive of the generators: the exceptional
/// rays of the minimal resolution, ordered from the `u1` side.
pub fn hull_chain(u1: Vec2, u2: Vec2) -> Result<Vec<Vec2>, FanError> {
    let d = det2(u1, u2);
    if d <= 0 {
        return Err(FanError::Degenerate(d));
    }
    let mut chain = Vec::new();
    let mut current = u1;
    loop {
        let d_cur = det2(current, u2);
        if d_cur == 1 {
            break;
        }
        // The unique primitive u with det(current, u) = 1 lying on the
        // hull: solve the unimodularity equation, then translate by
        // multiples of `current` to land in the cone next to it.
        let (a, b) = current;
        let (x0, y0) = extended_unimodular(a, b)?;
        let base = (x0, y0);
        let t = -det2(base, u2).div_euclid(d_cur);
        let u = (base.0 + t * current.0, base.1 + t * current.1);
        debug_assert_eq!(det2(current, u), 1);
        debug_assert!(det2(u, u2) > 0 && det2(u, u2) < d_cur);
        chain.push(u);
        current = u;
    }
    Ok(chain)
}

/// Some `(x, y)` with `a y - b x = 1`; exists iff `gcd(a, b) = 1`.
fn extended_unimodular(a: i64, b: i64) -> Result<Vec2, FanError> {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 && r0 != -1 {
        return Err(FanError::Degenerate(r0));
    }
    // a s0 + b t0 = r0; want a y - b x = 1.
    let (s, t) = (s0 / r0, t0 / r0);
    // a s + b t = 1  =>  choose y = s, x = -t.
    Ok((-t, s))
}

/// One exceptional curve of a resolution chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainRay {
    pub ray: Vec2,
    pub self_int: i64,
}

/// Minimal resolution of the two-dimensional cone `(u1, u2)` (primitive
/// generators in lattice coordinates, positively oriented): the inserted
/// rays with their self-intersections `-a_i`, where
/// `u_{i-1} + u_{i+1} = a_i u_i`.
pub fn hj_resolve(u1: Vec2, u2: Vec2) -> Result<Vec<ChainRay>, FanError> {
    let chain = hull_chain(u1, u2)?;
    let mut full = vec![u1];
    full.extend(chain.iter().copied());
    full.push(u2);
    let mut out = Vec::new();
    for i in 1..full.len() - 1 {
        let a = det2(full[i - 1], full[i + 1]);
        debug_assert_eq!(
            (full[i - 1].0 + full[i + 1].0, full[i - 1].1 + full[i + 1].1),
            (a * full[i].0, a * full[i].1)
        );
        out.push(ChainRay {
            ray: full[i],
            self_int: -a,
        });
    }
    Ok(out)
}

/// Self-intersections along an open chain of rays spanning unimodular
/// consecutive cones; values for the interior rays.
pub fn cycle_self_intersections(rays: &[Vec2]) -> Result<Vec<i64>, FanError> {
    for pair in rays.windows(2) {
        let d = det2(pair[0], pair[1]);
        if d != 1 {
            return Err(FanError::NonUnimodular(d));
        }
    }
    Ok((1..rays.len() - 1)
        .map(|i| -det2(rays[i - 1], rays[i + 1]))
        .collect())
}

/// Normal form `(d, q)` of a cyclic quotient singularity `1/d (1, q)`
/// from its resolution chain, through the negative continued fraction
/// `d/q = a_1 - 1/(a_2 - ...)`; the empty chain is the smooth point
/// `(1, 0)`.
pub fn sing_type_from_chain(chain: &[i64]) -> (i64, i64) {
    let mut value: Option<Ratio<i64>> = None;
    for a in chain.iter().rev() {
        let a = Ratio::from_integer(-a);
        value = Some(match value {
            None => a,
            Some(v) => a - v.recip(),
        });
    }
    match value {
        None => (1, 0),
        Some(v) => (*v.numer(), *v.denom()),
    }
}

/// Conventional name of the singularity type.
pub fn sing_type_label(d: i64, q: i64) -> String {
    if d <= 1 {
        "smooth".into()
    } else if q == d - 1 {
        format!("A_{}", d - 1)
    } else {
        format!("1/{d}(1,{q})")
    }
}

/// One fundamental domain of a periodic fan: the cyclically ordered rays
/// of the quotient surface's curve cycle, together with the monodromy
/// matrix carrying the domain to the next copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCycle {
    pub rays: Vec<Vec2>,
    pub monodromy: Mat2,
}

impl FanCycle {
    pub fn new(rays: Vec<Vec2>, monodromy: Mat2) -> Self {
        Self { rays, monodromy }
    }

    /// The fan cycle of the standard surface `S(m, alpha)`: rays
    /// `(1, 0) .. (1, m-1)` with monodromy `[[1,0],[m,1]]`.
    pub fn of_surface(m: i64) -> Self {
        Self::new((0..m).map(|k| (1, k)).collect(), [[1, 0], [m, 1]])
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    fn neighbor_before_first(&self) -> Result<Vec2, FanError> {
        let inv = mat_inv_unimodular(self.monodromy)?;
        Ok(mat_apply(inv, *self.rays.last().expect("nonempty cycle")))
    }

    fn neighbor_after_last(&self) -> Result<Vec2, FanError> {
        Ok(mat_apply(self.monodromy, self.rays[0]))
    }

    /// Consecutive ray pairs including the wrap-around through the
    /// monodromy.
    fn pairs(&self) -> Result<Vec<(Vec2, Vec2)>, FanError> {
        let mut out = Vec::new();
        for i in 0..self.rays.len() - 1 {
            out.push((self.rays[i], self.rays[i + 1]));
        }
        out.push((*self.rays.last().unwrap(), self.neighbor_after_last()?));
        Ok(out)
    }

    /// Determinants of the consecutive cones (`1` means smooth).
    pub fn cone_determinants(&self) -> Result<Vec<i64>, FanError> {
        Ok(self.pairs()?.iter().map(|(a, b)| det2(*a, *b)).collect())
    }

    /// Insert the minimal-resolution chains into every singular cone.
    /// Returns the resolved cycle and, per original cone index, the chain
    /// self-intersections that were inserted there.
    pub fn resolve(&self) -> Result<(FanCycle, Vec<Vec<i64>>), FanError> {
        let mut rays = Vec::new();
        let mut chains = Vec::new();
        for (a, b) in self.pairs()? {
            rays.push(a);
            let chain = hj_resolve(a, b)?;
            chains.push(chain.iter().map(|c| c.self_int).collect());
            rays.extend(chain.iter().map(|c| c.ray));
        }
        Ok((FanCycle::new(rays, self.monodromy), chains))
    }

    /// Self-intersections of the cycle components, in order.  For a
    /// length-1 cycle this is the plain recurrence value (the nodal curve
    /// itself has self-intersection `value + 2` after the self-gluing).
    pub fn self_ints(&self) -> Result<Vec<i64>, FanError> {
        if self.rays.is_empty() {
            return Err(FanError::Degenerate(0));
        }
        for (a, b) in self.pairs()? {
            let d = det2(a, b);
            if d != 1 {
                return Err(FanError::NonUnimodular(d));
            }
        }
        let n = self.rays.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let prev = if i == 0 {
                self.neighbor_before_first()?
            } else {
                self.rays[i - 1]
            };
            let next = if i + 1 == n {
                self.neighbor_after_last()?
            } else {
                self.rays[i + 1]
            };
            out.push(-det2(prev, next));
        }
        Ok(out)
    }

    /// Blow down one `(-1)`-ray; the fan stays unimodular because
    /// `det(prev, next) = 1` exactly for a `(-1)`-curve.
    pub fn contract(&self, index: usize) -> Result<FanCycle, FanError> {
        let self_ints = self.self_ints()?;
        if self_ints.get(index) != Some(&-1) {
            return Err(FanError::BadContraction(format!(
                "ray {index} has self-intersection {:?}, not -1",
                self_ints.get(index)
            )));
        }
        if self.rays.len() == 1 {
            return Err(FanError::BadContraction(
                "cannot contract the last cycle component".into(),
            ));
        }
        let mut rays = self.rays.clone();
        rays.remove(index);
        Ok(FanCycle::new(rays, self.monodromy))
    }

    /// Contract `(-1)`-rays until none remain; returns the final cycle
    /// and the cycle positions contracted, in order.
    pub fn contract_all(&self) -> Result<(FanCycle, Vec<usize>), FanError> {
        let mut cycle = self.clone();
        let mut log = Vec::new();
        loop {
            let ints = cycle.self_ints()?;
            match ints.iter().position(|s| *s == -1) {
                Some(i) => {
                    cycle = cycle.contract(i)?;
                    log.push(i);
                }
                None => return Ok((cycle, log)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_rays_satisfy_the_minus_two_recurrence() {
        let seq = rays_of_w(-5, 5);
        for k in -4..4 {
            let (a, b, c) = (seq.ray(k - 1), seq.ray(k), seq.ray(k + 1));
            assert_eq!((a.0 + c.0, a.1 + c.1), (2 * b.0, 2 * b.1));
        }
        let cycle = FanCycle::of_surface(4);
        assert_eq!(cycle.self_ints().unwrap(), vec![-2; 4]);
    }

    #[test]
    fn dual_basis_change_reproduces_the_transition_matrix() {
        let seq = rays_of_w(-6, 6);
        for k in -5..5 {
            assert_eq!(seq.transition_exponents(k), [[0, -1], [1, 2]]);
        }
    }

    #[test]
    fn gamma_lattice_action_shifts_rays() {
        for m in 1..=6 {
            let a: Mat2 = [[1, 0], [m, 1]];
            let seq = rays_of_w(-6, 6);
            for k in -5..5 {
                assert_eq!(mat_apply(a, seq.ray(k)), seq.ray(k + m));
            }
        }
    }

    #[test]
    fn refinement_indices_and_errors() {
        let l = Lattice::refine((0, 1), 3).unwrap();
        assert_eq!(l.index_over_standard(), 3);
        assert!(quotient_lattice(&Lattice::standard(), TorusSubgroup::Mixed { l: 4, j: 5 }).is_err());
        // l = 1 is the identity refinement.
        let id = quotient_lattice(&Lattice::standard(), TorusSubgroup::TCyclic { l: 1 }).unwrap();
        assert!(id.is_standard());
    }

    #[test]
    fn t_cyclic_refinement_gives_a_type_cones() {
        // Delta_l: every cone (v_k, v_{k+1}) becomes A_{l-1}.
        for l in 2..=5 {
            let lat = quotient_lattice(&Lattice::standard(), TorusSubgroup::TCyclic { l }).unwrap();
            for k in -3..3 {
                let (u1, m1) = lat.primitive((1, k));
                let (u2, m2) = lat.primitive((1, k + 1));
                assert_eq!((m1, m2), (1, 1), "no branched components");
                let chain = hj_resolve(u1, u2).unwrap();
                assert_eq!(chain.len() as i64, l - 1);
                assert!(chain.iter().all(|c| c.self_int == -2));
                let (d, q) = sing_type_from_chain(
                    &chain.iter().map(|c| c.self_int).collect::<Vec<_>>(),
                );
                assert_eq!((d, q), (l, l - 1));
                assert_eq!(sing_type_label(d, q), format!("A_{}", l - 1));
            }
        }
    }

    #[test]
    fn mixed_refinement_branches_fixed_rays() {
        // H_l in M_j: the ray of C~(k) becomes divisible by the order of
        // the subgroup fixing that component pointwise, gcd(k - j, l);
        // in particular divisible by l exactly on the fixed components.
        for (l, j) in [(2, 0), (2, 1), (3, 0), (3, 2), (4, 1)] {
            let lat =
                quotient_lattice(&Lattice::standard(), TorusSubgroup::Mixed { l, j }).unwrap();
            for k in -6..6 {
                let (_, mult) = lat.primitive((1, k));
                assert_eq!(mult, gcd(k - j, l), "l={l} j={j} k={k}");
            }
        }
    }

    #[test]
    fn explicit_one_third_resolutions() {
        // 1/3(1,2) = A_2: two (-2)-curves.
        let chain = hj_resolve((1, 0), (1, 3)).unwrap();
        assert_eq!(
            chain.iter().map(|c| c.self_int).collect::<Vec<_>>(),
            vec![-2, -2]
        );
        // 1/3(1,1): a single (-3)-curve (the mixed-case interior node).
        let lat = quotient_lattice(&Lattice::standard(), TorusSubgroup::Mixed { l: 3, j: 0 })
            .unwrap();
        let (u1, _) = lat.primitive((1, 1));
        let (u2, _) = lat.primitive((1, 2));
        let chain = hj_resolve(u1, u2).unwrap();
        assert_eq!(
            chain.iter().map(|c| c.self_int).collect::<Vec<_>>(),
            vec![-3]
        );
        let (d, q) = sing_type_from_chain(&[-3]);
        assert_eq!((d, q), (3, 1));
        assert_eq!(sing_type_label(3, 1), "1/3(1,1)");
    }

    #[test]
    fn smooth_cone_resolves_to_nothing() {
        assert!(hj_resolve((1, 0), (1, 1)).unwrap().is_empty());
        assert!(hj_resolve((1, 0), (0, 1)).unwrap().is_empty());
    }

    #[test]
    fn open_chain_self_intersections() {
        // (1,0), (1,1), (0,1): middle ray is a (-1)-curve.
        assert_eq!(
            cycle_self_intersections(&[(1, 0), (1, 1), (0, 1)]).unwrap(),
            vec![-1]
        );
        assert!(matches!(
            cycle_self_intersections(&[(1, 0), (1, 3)]),
            Err(FanError::NonUnimodular(3))
        ));
    }

    #[test]
    fn unimodularity_after_resolution() {
        for (l, j) in [(2, 0), (3, 1), (4, 3), (5, 2), (6, 1)] {
            let lat =
                quotient_lattice(&Lattice::standard(), TorusSubgroup::Mixed { l, j }).unwrap();
            for k in -3..3 {
                let (u1, _) = lat.primitive((1, k));
                let (u2, _) = lat.primitive((1, k + 1));
                let chain = hj_resolve(u1, u2).unwrap();
                let mut rays = vec![u1];
                rays.extend(chain.iter().map(|c| c.ray));
                rays.push(u2);
                for pair in rays.windows(2) {
                    assert_eq!(det2(pair[0], pair[1]), 1);
                }
            }
        }
    }

    #[test]
    fn lattice_index_times_covolume_is_preserved() {
        for (vec, l) in [((0, 1), 4), ((1, 2), 5), ((1, 0), 2)] {
            let lat = Lattice::refine(vec, l).unwrap();
            // covolume of L = 1/index; det of the stored basis accounts
            // for the denominator: det(den . L) = den^2 / index.
            assert_eq!(lat.det() * lat.index_over_standard(), lat.den * lat.den);
        }
    }

    #[test]
    fn shift_equivariance_of_refinements() {
        // The gamma action preserves the refined lattices of the quotient
        // subgroups (l | m in the mixed case) and commutes with
        // primitivization.
        for (m, sub) in [
            (2, TorusSubgroup::TCyclic { l: 3 }),
            (6, TorusSubgroup::Mixed { l: 3, j: 1 }),
            (4, TorusSubgroup::Mixed { l: 2, j: 0 }),
        ] {
            let lat = quotient_lattice(&Lattice::standard(), sub).unwrap();
            let a: Mat2 = [[1, 0], [m, 1]];
            let a_coords = lat.matrix_in_coords(a).unwrap();
            for k in -4..4 {
                let (p, mult) = lat.primitive((1, k));
                let (p_shift, mult_shift) = lat.primitive((1, k + m));
                assert_eq!(mat_apply(a_coords, p), p_shift);
                assert_eq!(mult, mult_shift);
            }
        }
    }

    #[test]
    fn fan_cycle_contraction() {
        // The (-4, -1, -4, -1) pattern contracts to a 2-cycle of (-2)s.
        let lat = quotient_lattice(&Lattice::standard(), TorusSubgroup::Mixed { l: 2, j: 0 })
            .unwrap();
        let rays: Vec<Vec2> = (0..4).map(|k| lat.primitive((1, k)).0).collect();
        let monodromy = lat.matrix_in_coords([[1, 0], [4, 1]]).unwrap();
        let cycle = FanCycle::new(rays, monodromy);
        assert_eq!(cycle.self_ints().unwrap(), vec![-4, -1, -4, -1]);
        let (minimal, contracted) = cycle.contract_all().unwrap();
        assert_eq!(contracted.len(), 2);
        assert_eq!(minimal.self_ints().unwrap(), vec![-2, -2]);
    }

    #[test]
    fn length_one_cycle_self_int() {
        // Quotient of W by the shift-by-one: a single ray with monodromy
        // [[1,0],[1,1]] has recurrence value -2 (the nodal curve).
        let cycle = FanCycle::new(vec![(1, 0)], [[1, 0], [1, 1]]);
        assert_eq!(cycle.self_ints().unwrap(), vec![-2]);
    }
}
