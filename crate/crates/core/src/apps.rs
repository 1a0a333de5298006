//! Worked applications on top of the kernel: planar forward kinematics in
//! PGA, spatial inverse kinematics in CGA, and unbalanced three-phase nodal
//! analysis with rational-function geometric impedances.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::algebra::{Algebra, Signature};
use crate::analytic::{inverse, rotor_exp_bivector, sandwich};
use crate::cga::CgaModel;
use crate::error::{GaError, Result};
use crate::multivector::Multivector;
use crate::mvmatrix::MvMatrix;
use crate::pga::PgaModel;
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::scalar::{rational_from_text, Rational};

// ---------------------------------------------------------------------------
// Forward kinematics of a 3R planar arm in [2,0,1]
// ---------------------------------------------------------------------------

/// Link lengths and joint angles of a 3R planar arm.
#[derive(Clone, Copy, Debug)]
pub struct RobotParams3R {
    pub lengths: [f64; 3],
    pub angles: [f64; 3],
}

/// End-effector pose (x, y, φ) from the PGA rotor chain
/// R₁D₁R₂D₂R₃D₃ acting on the origin point, with Rᵢ = exp(−θᵢ/2·e12) and
/// Dᵢ = exp(ℓᵢ/2·e13) the translator along the link.
pub fn fk3r(params: &RobotParams3R) -> Result<(f64, f64, f64)> {
    if params.lengths.iter().any(|l| !(*l > 0.0)) {
        return Err(GaError::Config("link lengths must be positive".into()));
    }
    let m = PgaModel::new(2)?;
    let e12 = Multivector::<f64>::basis(m.algebra(), "e12")?;
    let mut chain = Multivector::one(m.algebra());
    for i in 0..3 {
        let r = rotor_exp_bivector(params.angles[i], &e12)?;
        let d = m.translator(&m.euclidean(&[params.lengths[i], 0.0])?);
        chain = chain.geometric_product(&r).geometric_product(&d);
    }
    let p0 = m.point2(0.0, 0.0)?;
    let (x, y) = m.point2_coords(&sandwich(&chain, &p0))?;
    Ok((x, y, params.angles.iter().sum()))
}

/// The textbook closed form of the same pose:
/// x = Σ ℓᵢ·cos(θ₁+…+θᵢ), y = Σ ℓᵢ·sin(θ₁+…+θᵢ), φ = θ₁+θ₂+θ₃.
pub fn fk3r_closed_form(params: &RobotParams3R) -> (f64, f64, f64) {
    let mut acc = 0.0;
    let (mut x, mut y) = (0.0, 0.0);
    for i in 0..3 {
        acc += params.angles[i];
        x += params.lengths[i] * acc.cos();
        y += params.lengths[i] * acc.sin();
    }
    (x, y, acc)
}

// ---------------------------------------------------------------------------
// Inverse position kinematics of a 6R arm in the conformal model of 3D
// ---------------------------------------------------------------------------

/// Link lengths (Denavit-Hartenberg d₁, a₃, d₄) and the target position of
/// the wrist center.
#[derive(Clone, Copy, Debug)]
pub struct RobotParams6R {
    pub d1: f64,
    pub a3: f64,
    pub d4: f64,
    pub target: [f64; 3],
}

/// Joint solutions and the intersection scene that produced them.
#[derive(Clone, Debug)]
pub struct Ik6rResult {
    /// Both elbow configurations as (θ₁, θ₂, θ₃).
    pub solutions: Vec<[f64; 3]>,
    /// Classified geometry of [sphere₁, sphere₂, vertical plane, meet circle,
    /// elbow point pair], ready for JSON output.
    pub geometry: serde_json::Value,
}

/// Inverse position problem: the elbow lies on the meet of the sphere around
/// the shoulder (radius a₃), the sphere around the target (radius d₄) and the
/// vertical plane through the base and the target. The meet is a point pair;
/// each extracted point gives one elbow configuration, with the joint angles
/// read off as angles between the joint-to-joint lines.
pub fn ik6r(params: &RobotParams6R) -> Result<Ik6rResult> {
    let RobotParams6R { d1, a3, d4, target } = *params;
    if !(d1 > 0.0) || !(a3 > 0.0) || !(d4 > 0.0) {
        return Err(GaError::Config("link lengths must be positive".into()));
    }
    let m = CgaModel::<f64>::new(3, 0)?;
    let p0 = m.push(&[0.0, 0.0, 0.0])?;
    let p1 = sandwich(&m.translator(&[0.0, 0.0, d1])?, &p0);
    let pos_d = m.push(&target)?;

    // Inner (dual) spheres: center − ½r²·n∞.
    let s1 = p1.sub(&m.ninf().scalar_mul(&(a3 * a3 / 2.0)));
    let s2 = pos_d.sub(&m.ninf().scalar_mul(&(d4 * d4 / 2.0)));

    // Vertical plane through base, shoulder and target (outer representation).
    let plane = p0
        .outer_product(&p1)
        .outer_product(&pos_d)
        .outer_product(m.ninf());
    let scale = pos_d
        .coeffs()
        .iter()
        .chain(p1.coeffs())
        .fold(1.0f64, |acc, c| acc.max(c.abs()));
    if plane.is_zero_tol(1e-9 * scale * scale) {
        return Err(GaError::Unreachable(
            "target lies on the first joint axis; the vertical plane through \
             base and target is undefined"
            .into(),
        ));
    }
    let plane_dual = plane.dual_pseudoscalar()?;

    // Meet of the two spheres with the plane: a point pair for the elbow.
    let pair = m.intersect(&s1, &s2, Some(&plane_dual))?;
    let (b1, b2) = m.extract_point_pair(&pair)?;

    // θ₁ from the plane normal per acos(n·x̂) − π/2. That formula reads the
    // reference direction u = (√(1−n_x²), −n_x) off the normal, and u lies
    // in the arm plane only when n_y ≥ 0, so orient the normal that way
    // (targets behind the x = 0 plane then get a negative in-plane reach,
    // which the elbow solutions absorb).
    let mut normal = match m.classify(&plane_dual)? {
        crate::cga::GeometricEntity::Plane { normal, .. } => normal,
        _ => return Err(GaError::NotConformalEntity),
    };
    if normal[1] < 0.0 || (normal[1] == 0.0 && -normal[0] * target[1] < 0.0) {
        for c in normal.iter_mut() {
            *c = -*c;
        }
    }
    let theta1 = normal[0].clamp(-1.0, 1.0).acos() - std::f64::consts::FRAC_PI_2;

    // θ₂, θ₃ as angles between consecutive joint lines for each elbow.
    let l1 = p0.outer_product(&p1).outer_product(m.ninf());
    let mut solutions = Vec::new();
    for p2 in [&b1, &b2] {
        let l2 = p1.outer_product(p2).outer_product(m.ninf());
        let l3 = p2.outer_product(&pos_d).outer_product(m.ninf());
        let theta2 = m.angle_between(&l1, &l2)?;
        let theta3 = m.angle_between(&l2, &l3)?;
        solutions.push([theta1, theta2, theta3]);
    }

    let circle = m.intersect(&s1, &s2, None)?;
    let geometry = m.emit_geometry(&[s1, s2, plane, circle, pair]);
    Ok(Ik6rResult { solutions, geometry })
}

/// Forward-model check for a returned joint triple: smallest distance from
/// the target over the four elbow/bend sign conventions. The arm is planar
/// within the vertical plane at azimuth θ₁: link 1 rises to (0, d₁) in
/// (ρ, z) coordinates, link 2 leaves at angle θ₂ from vertical, link 3 bends
/// by θ₃ from link 2.
pub fn fk6r_best_error(params: &RobotParams6R, joints: &[f64; 3]) -> f64 {
    let [t1, t2, t3] = *joints;
    let u = (t1.cos(), t1.sin());
    let mut best = f64::INFINITY;
    for s2 in [1.0f64, -1.0] {
        let dir2 = (s2 * t2.sin(), t2.cos());
        let p2 = (params.a3 * dir2.0, params.d1 + params.a3 * dir2.1);
        for s3 in [1.0f64, -1.0] {
            let (c, s) = ((s3 * t3).cos(), (s3 * t3).sin());
            let dir3 = (c * dir2.0 - s * dir2.1, s * dir2.0 + c * dir2.1);
            let p = (p2.0 + params.d4 * dir3.0, p2.1 + params.d4 * dir3.1);
            let cart = [p.0 * u.0, p.0 * u.1, p.1];
            let err = cart
                .iter()
                .zip(params.target.iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            best = best.min(err);
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Unbalanced three-phase nodal analysis over rational functions in s
// ---------------------------------------------------------------------------

/// Geometric impedance z_av·e0 + z_unI·e1 + z_unR·e2 in G(2,0,0) over the
/// rational-function field.
#[derive(Clone, Debug)]
pub struct GeometricImpedance {
    pub av: RationalFunction,
    pub un_i: RationalFunction,
    pub un_r: RationalFunction,
}

impl GeometricImpedance {
    pub fn balanced(av: RationalFunction) -> Self {
        GeometricImpedance {
            av,
            un_i: RationalFunction::from_poly(Poly::zero()),
            un_r: RationalFunction::from_poly(Poly::zero()),
        }
    }

    fn multivector(&self, alg: &Arc<Algebra>) -> Result<Multivector<RationalFunction>> {
        Multivector::from_coeffs(
            alg,
            vec![
                self.av.clone(),
                self.un_i.clone(),
                self.un_r.clone(),
                RationalFunction::from_poly(Poly::zero()),
            ],
        )
    }
}

/// Three-node network: lines 1-2, 1-3, 2-3 and loads at nodes 2 and 3, with
/// the two-component source v_s = v_α·(e0+e2) + v_β·(e1+e12) at node 1.
#[derive(Clone, Debug)]
pub struct PowerNetwork {
    pub z12: GeometricImpedance,
    pub z13: GeometricImpedance,
    pub z23: GeometricImpedance,
    pub zl2: GeometricImpedance,
    pub zl3: GeometricImpedance,
}

/// One multivector slot of a node quantity as a pair of transfer functions:
/// slot(s) = α(s)·v_α + β(s)·v_β. `num_a`, `num_b` and `den` are the same
/// fractions over a common denominator with integer-cleared coefficients.
#[derive(Clone, Debug)]
pub struct SlotTransfer {
    pub alpha: RationalFunction,
    pub beta: RationalFunction,
    pub num_a: Poly,
    pub num_b: Poly,
    pub den: Poly,
}

/// Transfer functions of one node quantity, one entry per blade slot in the
/// order e0, e1, e2, e12.
#[derive(Clone, Debug)]
pub struct NodeTransfer {
    pub slots: Vec<SlotTransfer>,
}

/// Blade slot names matching `NodeTransfer::slots`.
pub const SLOT_NAMES: [&str; 4] = ["e0", "e1", "e2", "e12"];

/// Node voltages v1, v2, v3 and the source current i_s.
#[derive(Clone, Debug)]
pub struct PowerSolution {
    pub v1: NodeTransfer,
    pub v2: NodeTransfer,
    pub v3: NodeTransfer,
    pub is: NodeTransfer,
}

impl PowerNetwork {
    /// The worked example: z12 = z23 = 0.01+0.02s, z13 = 0.02+0.04s,
    /// zL2 = 0.5 − 0.03·e1 + 0.05·e2, zL3 = 0.4 − 0.1·e1 − 0.1·e2. These are
    /// the unbalance values that reproduce the published v2 transfer
    /// polynomials exactly (solved for from the printed output, which the
    /// nearby −0.0289/−0.1155 figures do not generate).
    pub fn example() -> Self {
        let line = |a: &str, b: &str| {
            RationalFunction::from_poly(Poly::new(vec![
                rational_from_text(a).expect("literal"),
                rational_from_text(b).expect("literal"),
            ]))
        };
        let c = |t: &str| RationalFunction::constant(rational_from_text(t).expect("literal"));
        PowerNetwork {
            z12: GeometricImpedance::balanced(line("0.01", "0.02")),
            z13: GeometricImpedance::balanced(line("0.02", "0.04")),
            z23: GeometricImpedance::balanced(line("0.01", "0.02")),
            zl2: GeometricImpedance { av: c("0.5"), un_i: c("-0.03"), un_r: c("0.05") },
            zl3: GeometricImpedance { av: c("0.4"), un_i: c("-0.1"), un_r: c("-0.1") },
        }
    }

    /// Network from the JSON config schema: an object with keys z12, z13,
    /// z23, zL2, zL3, each {"av": rf, "unI": rf, "unR": rf} where rf is
    /// {"num": [c0, c1, …], "den": [c0, c1, …]}. Coefficients ascend in
    /// powers of s and may be numbers or decimal/fraction strings; "den"
    /// defaults to 1, and "unI"/"unR" default to 0.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| GaError::Config("network config must be a JSON object".into()))?;
        let imp = |key: &str| -> Result<GeometricImpedance> {
            let entry = obj
                .get(key)
                .ok_or_else(|| GaError::Config(format!("missing impedance \"{key}\"")))?;
            let entry = entry.as_object().ok_or_else(|| {
                GaError::Config(format!("impedance \"{key}\" must be an object"))
            })?;
            let av = entry
                .get("av")
                .ok_or_else(|| GaError::Config(format!("impedance \"{key}\" needs \"av\"")))?;
            Ok(GeometricImpedance {
                av: ratfun_from_json(av, key)?,
                un_i: match entry.get("unI") {
                    Some(x) => ratfun_from_json(x, key)?,
                    None => RationalFunction::from_poly(Poly::zero()),
                },
                un_r: match entry.get("unR") {
                    Some(x) => ratfun_from_json(x, key)?,
                    None => RationalFunction::from_poly(Poly::zero()),
                },
            })
        };
        Ok(PowerNetwork {
            z12: imp("z12")?,
            z13: imp("z13")?,
            z23: imp("z23")?,
            zl2: imp("zL2")?,
            zl3: imp("zL3")?,
        })
    }

    /// Nodal analysis: assemble the 4×4 admittance system
    ///   [y12+y13   −y12          −y13          1] [v1]   [0 ]
    ///   [−y12      y12+y23+yL2   −y23          0] [v2] = [0 ]
    ///   [−y13      −y23          y13+y23+yL3   0] [v3]   [0 ]
    ///   [1         0             0             0] [is]   [vs]
    /// and solve it twice with the unit sources vs = e0+e2 (the v_α
    /// component) and vs = e1+e12 (the v_β component); the actual node
    /// quantities follow by superposition.
    pub fn solve(&self) -> Result<PowerSolution> {
        let alg = Algebra::get(Signature::new(2, 0, 0)?);
        let y12 = inverse(&self.z12.multivector(&alg)?)?;
        let y13 = inverse(&self.z13.multivector(&alg)?)?;
        let y23 = inverse(&self.z23.multivector(&alg)?)?;
        let yl2 = inverse(&self.zl2.multivector(&alg)?)?;
        let yl3 = inverse(&self.zl3.multivector(&alg)?)?;
        let zero = Multivector::<RationalFunction>::zero(&alg);
        let one = Multivector::<RationalFunction>::one(&alg);
        let y = MvMatrix::new(
            4,
            4,
            vec![
                y12.add(&y13),
                y12.neg(),
                y13.neg(),
                one.clone(),
                y12.neg(),
                y12.add(&y23).add(&yl2),
                y23.neg(),
                zero.clone(),
                y13.neg(),
                y23.neg(),
                y13.add(&y23).add(&yl3),
                zero.clone(),
                one.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
            ],
        )?;
        let basis = |name: &str| Multivector::<RationalFunction>::basis(&alg, name);
        let src_a = one.add(&basis("e2")?);
        let src_b = basis("e1")?.add(&basis("e12")?);
        let rhs = |src: Multivector<RationalFunction>| {
            MvMatrix::new(4, 1, vec![zero.clone(), zero.clone(), zero.clone(), src])
        };
        let xa = y.solve(&rhs(src_a)?)?;
        let xb = y.solve(&rhs(src_b)?)?;
        let node = |r: usize| -> Result<NodeTransfer> {
            let slots = (0..4)
                .map(|k| {
                    slot_transfer(&xa.at(r, 0).coeffs()[k], &xb.at(r, 0).coeffs()[k])
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(NodeTransfer { slots })
        };
        Ok(PowerSolution { v1: node(0)?, v2: node(1)?, v3: node(2)?, is: node(3)? })
    }
}

fn ratfun_from_json(v: &serde_json::Value, key: &str) -> Result<RationalFunction> {
    let poly_of = |v: &serde_json::Value| -> Result<Poly> {
        let arr = v.as_array().ok_or_else(|| {
            GaError::Config(format!("impedance \"{key}\": coefficients must be an array"))
        })?;
        let coeffs = arr
            .iter()
            .map(|c| match c {
                serde_json::Value::String(s) => rational_from_text(s),
                serde_json::Value::Number(n) => rational_from_text(&n.to_string()),
                _ => Err(GaError::Config(format!(
                    "impedance \"{key}\": coefficients must be numbers or strings"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    };
    match v {
        serde_json::Value::Object(m) => {
            let num = m.get("num").ok_or_else(|| {
                GaError::Config(format!("impedance \"{key}\": rational function needs \"num\""))
            })?;
            let num = poly_of(num)?;
            let den = match m.get("den") {
                Some(d) => poly_of(d)?,
                None => Poly::one(),
            };
            RationalFunction::new(num, den)
        }
        other => Err(GaError::Config(format!(
            "impedance \"{key}\": expected {{\"num\": …}}, got {other}"
        ))),
    }
}

/// Put α and β over their least common denominator and clear all coefficient
/// denominators to integers by the lcm, so exact results print as integer
/// polynomials.
fn slot_transfer(alpha: &RationalFunction, beta: &RationalFunction) -> Result<SlotTransfer> {
    let g = alpha.den().gcd(beta.den())?;
    let (db_red, _) = beta.den().div_rem(&g)?;
    let (da_red, _) = alpha.den().div_rem(&g)?;
    let den = alpha.den().mul(&db_red);
    let num_a = alpha.num().mul(&db_red);
    let num_b = beta.num().mul(&da_red);
    let mut l = BigInt::one();
    for c in den.coeffs().iter().chain(num_a.coeffs()).chain(num_b.coeffs()) {
        l = l.lcm(c.denom());
    }
    let factor = Rational::from_integer(l);
    Ok(SlotTransfer {
        alpha: alpha.clone(),
        beta: beta.clone(),
        num_a: num_a.scale(&factor),
        num_b: num_b.scale(&factor),
        den: den.scale(&factor),
    })
}
