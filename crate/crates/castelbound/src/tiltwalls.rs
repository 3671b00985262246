//! Tilt-stability numerics on the (b, a²) half-plane.

use std::cmp::Ordering;
use std::ops::{Add, Sub};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Rat, Surd};

/// A polarized threefold, numerically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    /// Degree H³.
    pub n: i64,
    /// Least s with |sH| nonempty.
    pub s: i64,
    /// Multiple of H that is very ample.
    pub m_h: i64,
    pub label: String,
}

impl Polarization {
    pub fn new(n: i64, s: i64, m_h: i64, label: impl Into<String>) -> Result<Polarization> {
        if n < 1 || s < 1 || m_h < 1 {
            return Err(Error::InvalidArgument(format!("polarization needs n, s, m_H >= 1 (got {n}, {s}, {m_h})")));
        }
        Ok(Polarization { n, s, m_h, label: label.into() })
    }

    /// `s * m_H² * H³`, the value of n_H for factorial Picard-rank-one threefolds.
    pub fn derived_n_h(&self) -> i64 {
        self.s * self.m_h * self.m_h * self.n
    }
}

/// H-normalized Chern character `(ch_0, ch_1, ch_2, ch_3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernH {
    pub c0: Rat,
    pub c1: Rat,
    pub c2: Rat,
    pub c3: Rat,
    pub c3_known: bool,
}

impl ChernH {
    pub fn new(c0: Rat, c1: Rat, c2: Rat, c3: Rat) -> ChernH {
        ChernH { c0, c1, c2, c3, c3_known: true }
    }

    /// A class whose ch_3 is not specified.
    pub fn truncated(c0: Rat, c1: Rat, c2: Rat) -> ChernH {
        ChernH { c0, c1, c2, c3: Rat::zero(), c3_known: false }
    }

    pub fn ints(c0: i64, c1: i64, c2: i64, c3: i64) -> ChernH {
        ChernH::new(c0.into(), c1.into(), c2.into(), c3.into())
    }

    /// `ch(O(-k))` on a threefold of normalized degree one.
    pub fn line_bundle(k: &Rat) -> ChernH {
        twist(&ChernH::ints(1, 0, 0, 0), k)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero() && (!self.c3_known || self.c3.is_zero())
    }

    pub fn scale(&self, r: &Rat) -> ChernH {
        ChernH { c0: &self.c0 * r, c1: &self.c1 * r, c2: &self.c2 * r, c3: &self.c3 * r, c3_known: self.c3_known }
    }

    /// Parses `"c0,c1,c2,c3"`; a `*` in the last slot leaves ch_3 unknown.
    pub fn parse(s: &str) -> Result<ChernH> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let err = || Error::Parse { what: "Chern character", input: s.to_string() };
        if parts.len() != 3 && parts.len() != 4 {
            return Err(err());
        }
        let c0 = parts[0].parse().map_err(|_| err())?;
        let c1 = parts[1].parse().map_err(|_| err())?;
        let c2 = parts[2].parse().map_err(|_| err())?;
        match parts.get(3) {
            None | Some(&"*") => Ok(ChernH::truncated(c0, c1, c2)),
            Some(c3) => Ok(ChernH::new(c0, c1, c2, c3.parse().map_err(|_| err())?)),
        }
    }
}

impl Add for &ChernH {
    type Output = ChernH;
    fn add(self, o: &ChernH) -> ChernH {
        ChernH {
            c0: &self.c0 + &o.c0,
            c1: &self.c1 + &o.c1,
            c2: &self.c2 + &o.c2,
            c3: &self.c3 + &o.c3,
            c3_known: self.c3_known && o.c3_known,
        }
    }
}

impl Sub for &ChernH {
    type Output = ChernH;
    fn sub(self, o: &ChernH) -> ChernH {
        self + &o.scale(&Rat::int(-1))
    }
}

/// A point of the upper half-plane, stored as `(b, a²)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltPoint {
    pub b: Rat,
    pub a_sq: Rat,
    pub boundary: bool,
}

impl TiltPoint {
    pub fn new(b: Rat, a_sq: Rat) -> Result<TiltPoint> {
        if !a_sq.is_positive() {
            return Err(Error::InvalidTiltPoint(a_sq.to_string()));
        }
        Ok(TiltPoint { b, a_sq, boundary: false })
    }

    /// The limit point `(b, a = 0)`.
    pub fn boundary(b: Rat) -> TiltPoint {
        TiltPoint { b, a_sq: Rat::zero(), boundary: true }
    }
}

/// A numerical wall in the (b, a) plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WallGeometry {
    Vertical { b: Rat },
    Semicircle { center: Rat, radius_sq: Rat },
}

/// Tilt slope: a rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slope {
    Finite(Rat),
    PosInfinity,
}

/// `exp(-bH)·ch`.
pub fn twist(ch: &ChernH, b: &Rat) -> ChernH {
    let b2 = b.pow(2) / Rat::int(2);
    let b3 = b.pow(3) / Rat::int(6);
    ChernH {
        c0: ch.c0.clone(),
        c1: &ch.c1 - b * &ch.c0,
        c2: &ch.c2 - b * &ch.c1 + &b2 * &ch.c0,
        c3: &ch.c3 - b * &ch.c2 + &b2 * &ch.c1 - &b3 * &ch.c0,
        c3_known: ch.c3_known,
    }
}

/// Ideal sheaf of a degree-d, genus-g curve in ℙ³.
pub fn ideal_class_p3(d: i64, g: i64) -> ChernH {
    ChernH::ints(1, 0, -d, g + 2 * d - 1)
}

/// `I_{C/D}` for a curve of degree d and genus g on a surface of degree `n_surf` in ℙ³.
pub fn quotient_class_in_surface(d: i64, g: i64, n_surf: i64) -> ChernH {
    let ns = Rat::int(n_surf);
    ChernH::new(
        Rat::zero(),
        ns.clone(),
        Rat::int(-d) - ns.pow(2) / Rat::int(2),
        ns.pow(3) / Rat::int(6) + Rat::int(g + 2 * d - 1),
    )
}

/// Normalized Bogomolov discriminant `c1² - 2 c0 c2`.
pub fn discriminant(ch: &ChernH) -> Rat {
    ch.c1.pow(2) - Rat::int(2) * &ch.c0 * &ch.c2
}

/// `(Re Z, Im Z)` at the given point.
pub fn central_charge(ch: &ChernH, pt: &TiltPoint) -> (Rat, Rat) {
    let t = twist(ch, &pt.b);
    let re = &pt.a_sq / Rat::int(2) * &t.c0 - &t.c2;
    (re, t.c1)
}

pub fn slope(ch: &ChernH, pt: &TiltPoint) -> Slope {
    let (re, im) = central_charge(ch, pt);
    if im.is_zero() {
        Slope::PosInfinity
    } else {
        Slope::Finite(-(re / im))
    }
}

/// Locus where `v` and `w` have equal tilt slope.
///
/// Cross-multiplying the slopes gives `X/2·(a² + b²) + Y·b + Z = 0` with
/// `X = v0 w1 - w0 v1`, `Y = v2 w0 - w2 v0`, `Z = w2 v1 - v2 w1`.
pub fn numerical_wall(v: &ChernH, w: &ChernH) -> Result<Option<WallGeometry>> {
    if v.is_zero() && w.is_zero() {
        return Err(Error::DegenerateClass);
    }
    let dv = discriminant(v);
    if dv.is_negative() {
        return Err(Error::NegativeDiscriminant(dv.to_string()));
    }
    let x = &v.c0 * &w.c1 - &w.c0 * &v.c1;
    let y = &v.c2 * &w.c0 - &w.c2 * &v.c0;
    let z = &w.c2 * &v.c1 - &v.c2 * &w.c1;
    if x.is_zero() {
        if y.is_zero() {
            return Ok(None);
        }
        // equals μ_H(v) = c1/c0 whenever v has positive rank
        return Ok(Some(WallGeometry::Vertical { b: -(&z / &y) }));
    }
    let center = -(&y / &x);
    let radius_sq = center.pow(2) - Rat::int(2) * (&z / &x);
    if !radius_sq.is_positive() {
        return Ok(None);
    }
    Ok(Some(WallGeometry::Semicircle { center, radius_sq }))
}

/// Right endpoint `center + sqrt(radius_sq)` of a semicircular wall.
pub fn wall_rightmost(wall: &WallGeometry) -> Result<Surd> {
    match wall {
        WallGeometry::Semicircle { center, radius_sq } => Ok(Surd::sqrt_rat(radius_sq)?.add_rat(center)),
        WallGeometry::Vertical { .. } => Err(Error::NotASemicircle),
    }
}

/// Left endpoint `center - sqrt(radius_sq)`.
pub fn wall_leftmost(wall: &WallGeometry) -> Result<Surd> {
    match wall {
        WallGeometry::Semicircle { center, radius_sq } => Ok((-Surd::sqrt_rat(radius_sq)?).add_rat(center)),
        WallGeometry::Vertical { .. } => Err(Error::NotASemicircle),
    }
}

/// BMT quadratic form on ℙ³: `a²Δ + 4(c2ᵇ)² - 6 c1ᵇ c3ᵇ`.
pub fn bmt_q(ch: &ChernH, pt: &TiltPoint) -> Result<Rat> {
    if !ch.c3_known {
        return Err(Error::UnknownCh3);
    }
    let t = twist(ch, &pt.b);
    Ok(&pt.a_sq * discriminant(ch) + Rat::int(4) * t.c2.pow(2) - Rat::int(6) * &t.c1 * &t.c3)
}

/// The genus at which `bmt_q(ideal_class_p3(d, g), (b0, 0))` vanishes.
///
/// Q is affine in g, so two evaluations determine the root.
pub fn bmt_genus_threshold(d: i64, b0: &Rat) -> Result<Rat> {
    if !b0.is_negative() {
        return Err(Error::NonNegativeB0(b0.to_string()));
    }
    let pt = TiltPoint::boundary(b0.clone());
    let q0 = bmt_q(&ideal_class_p3(d, 0), &pt)?;
    let q1 = bmt_q(&ideal_class_p3(d, 1), &pt)?;
    (-&q0).checked_div(&(q1 - &q0))
}

/// `b_d = -sqrt(d/n)`.
pub fn b_d(d: i64, n: i64) -> Surd {
    -Surd::sqrt_rat(&Rat::new(d, n)).expect("d/n >= 0")
}

/// `ρ_d = sqrt(d/(4n))`.
pub fn rho_d(d: i64, n: i64) -> Surd {
    Surd::sqrt_rat(&Rat::new(d, 4 * n)).expect("d/n >= 0")
}

/// Both caps on the degree of the destabilizing subcurve, as exact surds:
/// `d - k²n/2` and `d + k²n/2 - k sqrt(2nd)`.
pub fn d1_caps(d: i64, n: i64, k: i64) -> (Rat, Surd) {
    let half = Rat::new(k * k * n, 2);
    let first = Rat::int(d) - &half;
    let root = Surd::sqrt_rat(&Rat::int(2 * n * d)).expect("2nd >= 0").scale(&Rat::int(-k));
    (first, root.add_rat(&(Rat::int(d) + half)))
}

/// Whether a wall `W(I_{C1}(-k), I_C)` with `deg C1 = d1` is numerically allowed.
pub fn admissible_d1(d: i64, n: i64, k: i64, d1: i64) -> bool {
    let (first, second) = d1_caps(d, n, k);
    let x = Rat::int(d1);
    x < first && second.cmp_rat(&x) == Ordering::Greater
}

/// Largest admissible `d1 >= 0`, or -1 when none is.
pub fn max_admissible_d1(d: i64, n: i64, k: i64) -> i64 {
    let (first, second) = d1_caps(d, n, k);
    // largest integer strictly below x is ceil(x) - 1
    let cap: num_bigint::BigInt = (first.ceil() - 1i32).min(second.ceil() - 1i32);
    let cap = cap.to_i64().unwrap_or(i64::MIN);
    if cap < 0 {
        -1
    } else {
        cap
    }
}

/// Whether a curve meeting a degree-k surface in a subcurve of degree `deg_cd`
/// forces the wall `W(O(-k), I_C)`.
pub fn divisor_wall_exists(d: i64, n: i64, k: i64, deg_cd: i64) -> Result<bool> {
    if k < 1 || b_d(d, n).cmp_rat(&Rat::int(-k)) == Ordering::Greater {
        return Err(Error::KOutOfRange { k, d, n });
    }
    Ok(admissible_d1(d, n, k, d - deg_cd))
}

/// Genus of a curve glued from two pieces along a wall of type k.
pub fn genus_decomposition(g1: i64, g2: i64, k: i64, d1: i64) -> i64 {
    g1 + g2 + k * d1 - 1
}

/// Center of `W(I_{C1}(-k), I_C)` on ℙ³ for `deg C = d`, `deg C1 = d1`.
pub fn curve_wall_center(d: i64, k: i64, d1: i64) -> Rat {
    -(Rat::new(d - d1, k) + Rat::new(k, 2))
}

/// Whether the curve wall's right endpoint reaches `b_d` (n = 1).
///
/// With center c < 0 and radius² = c² - 2d, `c + sqrt(c² - 2d) >= -sqrt(d)`
/// squares to `4c² >= 9d`.
pub fn curve_wall_reaches_bd(d: i64, k: i64, d1: i64) -> bool {
    let c = curve_wall_center(d, k, d1);
    Rat::int(4) * c.pow(2) >= Rat::int(9 * d)
}

/// `floor(sqrt(d/n))`, the largest k with `-k >= b_d`.
pub fn k_max(d: i64, n: i64) -> i64 {
    if d < n {
        return 0;
    }
    ((d / n) as u64).isqrt() as i64
}
