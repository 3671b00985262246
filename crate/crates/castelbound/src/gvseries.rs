//! GV ↔ PT conversion through truncated Laurent series in q, graded by degree t^d.
//!
//! `log PT = Σ_{g,d,r} GV_{g,d} (-1)^{g-1}/r · ((-q)^{r/2} - (-q)^{-r/2})^{2g-2} t^{rd}`.
//! The genus-0 block is the ascending expansion `Σ_k k (-q)^{rk}`.

use std::collections::BTreeMap;
use std::io::Read;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::{epsilon, planar_bound};
use crate::constants::gv_vanish;
use crate::error::{Error, Result};
use crate::numerics::Rat;

/// Inclusive range of q-exponents kept in output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QWindow {
    pub lo: i64,
    pub hi: i64,
}

impl QWindow {
    pub fn new(lo: i64, hi: i64) -> Result<QWindow> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty window {lo}..{hi}")));
        }
        Ok(QWindow { lo, hi })
    }

    pub fn contains(&self, e: i64) -> bool {
        (self.lo..=self.hi).contains(&e)
    }
}

impl std::str::FromStr for QWindow {
    type Err = Error;
    fn from_str(s: &str) -> Result<QWindow> {
        let bad = || Error::Parse { what: "window", input: s.to_string() };
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        QWindow::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    }
}

/// Series in q exact for every exponent below `prec`; `None` means an exact Laurent polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Trunc {
    c: BTreeMap<i64, Rat>,
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Trunc {
    fn exact(c: BTreeMap<i64, Rat>) -> Trunc {
        let mut t = Trunc { c, prec: None };
        t.trim();
        t
    }

    fn trim(&mut self) {
        let p = self.prec;
        self.c.retain(|&e, v| !v.is_zero() && p.is_none_or(|p| e < p));
    }

    /// Lowest exponent that can be nonzero; `None` for the exact zero series.
    fn low(&self) -> Option<i64> {
        self.c.keys().next().copied().or(self.prec)
    }

    fn coeff(&self, e: i64) -> Rat {
        self.c.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_scaled(&mut self, o: &Trunc, k: &Rat) {
        self.prec = min_prec(self.prec, o.prec);
        for (e, v) in &o.c {
            let slot = self.c.entry(*e).or_insert_with(Rat::zero);
            *slot = &*slot + k * v;
        }
        self.trim();
    }

    fn scaled(&self, k: &Rat) -> Trunc {
        let mut t = Trunc { c: self.c.iter().map(|(e, v)| (*e, k * v)).collect(), prec: self.prec };
        t.trim();
        t
    }

    fn mul(&self, o: &Trunc) -> Trunc {
        let (la, lb) = match (self.low(), o.low()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Trunc::default(),
        };
        let prec = min_prec(self.prec.map(|p| p + lb), o.prec.map(|p| p + la));
        let mut c: BTreeMap<i64, Rat> = BTreeMap::new();
        for (ea, va) in &self.c {
            for (eb, vb) in &o.c {
                let e = ea + eb;
                if prec.is_some_and(|p| e >= p) {
                    continue;
                }
                let slot = c.entry(e).or_insert_with(Rat::zero);
                *slot = &*slot + va * vb;
            }
        }
        let mut t = Trunc { c, prec };
        t.trim();
        t
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn into_laurent(self, w: QWindow, mut clipped: bool) -> LaurentQ {
        if self.prec.is_some_and(|p| p <= w.hi) {
            clipped = true;
        }
        if self.c.keys().any(|e| !w.contains(*e)) {
            clipped = true;
        }
        let coeffs = self.c.into_iter().filter(|(e, _)| w.contains(*e)).collect();
        LaurentQ { coeffs, window: w, clipped }
    }
}

fn binom(n: i64, k: i64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn neg_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `((-q)^{r/2} - (-q)^{-r/2})^{2g-2}`, exact below `prec` for g = 0.
fn block(g: i64, r: i64, prec: i64) -> Trunc {
    let mut c = BTreeMap::new();
    if g == 0 {
        // w/(1-w)² with w = (-q)^r
        let mut k = 1;
        while r * k < prec {
            c.insert(r * k, Rat::int(k * neg_one_pow(r * k)));
            k += 1;
        }
        let mut t = Trunc { c, prec: Some(prec) };
        t.trim();
        return t;
    }
    // Σ_j C(2g-2, j) (-1)^j (-q)^{r(g-1-j)}
    for j in 0..=2 * g - 2 {
        let e = r * (g - 1 - j);
        let v = binom(2 * g - 2, j) * neg_one_pow(j) * neg_one_pow(e);
        c.insert(e, Rat::int(v));
    }
    Trunc::exact(c)
}

/// Laurent series in q restricted to a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentQ {
    pub coeffs: BTreeMap<i64, Rat>,
    pub window: QWindow,
    /// Terms outside the window were dropped.
    pub clipped: bool,
}

impl LaurentQ {
    pub fn zero(window: QWindow) -> LaurentQ {
        LaurentQ { coeffs: BTreeMap::new(), window, clipped: false }
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Rat::is_zero)
    }

    /// Coefficients are unchanged under `q ↦ 1/q`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(e, v)| self.coeff(-e) == *v)
    }

    pub fn add(&self, o: &LaurentQ) -> LaurentQ {
        let w = QWindow { lo: self.window.lo.max(o.window.lo), hi: self.window.hi.min(o.window.hi) };
        let mut coeffs = BTreeMap::new();
        for (e, v) in self.coeffs.iter().chain(&o.coeffs) {
            let slot = coeffs.entry(*e).or_insert_with(Rat::zero);
            *slot = &*slot + v;
        }
        let dropped = coeffs.keys().any(|e| !w.contains(*e));
        coeffs.retain(|e, v: &mut Rat| w.contains(*e) && !v.is_zero());
        LaurentQ { coeffs, window: w, clipped: self.clipped || o.clipped || dropped }
    }

    pub fn scale(&self, k: &Rat) -> LaurentQ {
        let mut coeffs: BTreeMap<i64, Rat> = self.coeffs.iter().map(|(e, v)| (*e, k * v)).collect();
        coeffs.retain(|_, v| !v.is_zero());
        LaurentQ { coeffs, window: self.window, clipped: self.clipped }
    }

    /// Product clipped to this series' window.
    pub fn mul(&self, o: &LaurentQ) -> LaurentQ {
        let w = self.window;
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        let mut dropped = false;
        for (ea, va) in &self.coeffs {
            for (eb, vb) in &o.coeffs {
                let e = ea + eb;
                if !w.contains(e) {
                    dropped = true;
                    continue;
                }
                let slot = coeffs.entry(e).or_insert_with(Rat::zero);
                *slot = &*slot + va * vb;
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        LaurentQ { coeffs, window: w, clipped: self.clipped || o.clipped || dropped }
    }
}

/// The genus-g block for an r-fold cover.
pub fn g_block(g: i64, r: i64, window: QWindow) -> Result<LaurentQ> {
    if g < 0 || r < 1 {
        return Err(Error::InvalidArgument(format!("g_block needs g >= 0, r >= 1 (got {g}, {r})")));
    }
    Ok(block(g, r, window.hi + 1).into_laurent(window, g == 0))
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvEntry {
    pub g: i64,
    pub d: i64,
    #[serde(serialize_with = "ser_big")]
    pub value: BigInt,
}

/// Finitely supported GV invariants with an explicit window of known entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVTable {
    pub entries: BTreeMap<(i64, i64), BigInt>,
    pub d_max: i64,
    /// Largest genus with a known value, per degree.
    pub g_max_per_d: BTreeMap<i64, i64>,
}

impl Serialize for GVTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GVTable", 3)?;
        st.serialize_field("d_max", &self.d_max)?;
        st.serialize_field("entries", &self.list())?;
        st.serialize_field("g_max_per_d", &self.g_max_per_d)?;
        st.end()
    }
}

impl GVTable {
    /// Table whose window is `1..=d_max` with genera up to the largest listed per degree.
    pub fn from_entries(entries: BTreeMap<(i64, i64), BigInt>, d_max: Option<i64>) -> Result<GVTable> {
        let mut g_max_per_d = BTreeMap::new();
        for &(g, d) in entries.keys() {
            if g < 0 || d < 1 {
                return Err(Error::InvalidArgument(format!("GV index (g={g}, d={d}) needs g >= 0, d >= 1")));
            }
            let slot = g_max_per_d.entry(d).or_insert(0);
            *slot = (*slot).max(g);
        }
        let d_max = d_max.unwrap_or_else(|| entries.keys().map(|k| k.1).max().unwrap_or(0));
        if entries.keys().any(|k| k.1 > d_max) {
            return Err(Error::InvalidArgument(format!("entries exceed d_max = {d_max}")));
        }
        for d in 1..=d_max {
            g_max_per_d.entry(d).or_insert(0);
        }
        let mut entries = entries;
        entries.retain(|_, v| !v.is_zero());
        Ok(GVTable { entries, d_max, g_max_per_d })
    }

    pub fn empty(d_max: i64) -> GVTable {
        GVTable::from_entries(BTreeMap::new(), Some(d_max)).expect("empty table is valid")
    }

    pub fn get(&self, g: i64, d: i64) -> Result<BigInt> {
        let inside = d >= 1 && d <= self.d_max && g >= 0 && self.g_max_per_d.get(&d).is_some_and(|&m| g <= m);
        if !inside {
            return Err(Error::OutsideWindow(format!("GV(g={g}, d={d})")));
        }
        Ok(self.entries.get(&(g, d)).cloned().unwrap_or_default())
    }

    fn g_top(&self) -> i64 {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn list(&self) -> Vec<GvEntry> {
        self.entries.iter().map(|(&(g, d), v)| GvEntry { g, d, value: v.clone() }).collect()
    }

    /// Same nonzero entries.
    pub fn same_entries(&self, o: &GVTable) -> bool {
        self.entries == o.entries
    }

    pub fn from_csv(reader: impl Read) -> Result<GVTable> {
        let mut entries = BTreeMap::new();
        for (g, d, v) in read_triples(reader, "g")? {
            let v = v.parse::<BigInt>().map_err(|_| Error::Parse { what: "GV value", input: v.clone() })?;
            entries.insert((g, d), v);
        }
        GVTable::from_entries(entries, None)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("g,d,value\n");
        for ((g, d), v) in &self.entries {
            out.push_str(&format!("{g},{d},{v}\n"));
        }
        out
    }
}

fn read_triples(reader: impl Read, first: &str) -> Result<Vec<(i64, i64, String)>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse { what: "csv", input: e.to_string() })?;
        if rec.len() != 3 {
            return Err(Error::Parse { what: "csv row", input: rec.iter().collect::<Vec<_>>().join(",") });
        }
        if rec[0].eq_ignore_ascii_case(first) {
            continue;
        }
        let a = rec[0].parse().map_err(|_| Error::Parse { what: "csv index", input: rec[0].to_string() })?;
        let b = rec[1].parse().map_err(|_| Error::Parse { what: "csv index", input: rec[1].to_string() })?;
        out.push((a, b, rec[2].to_string()));
    }
    Ok(out)
}

/// PT invariants `PT_{s,d}` for `s` in a window and `1 <= d <= d_max`; missing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PTTable {
    #[serde(with = "pt_entries")]
    pub entries: BTreeMap<(i64, i64), Rat>,
    pub window: QWindow,
    pub d_max: i64,
    #[serde(default)]
    pub clipped: bool,
}

mod pt_entries {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row {
        s: i64,
        d: i64,
        value: Rat,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(i64, i64), Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row> = m.iter().map(|(&(s, d), v)| Row { s, d, value: v.clone() }).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<(i64, i64), Rat>, D::Error> {
        let rows = Vec::<Row>::deserialize(d)?;
        Ok(rows.into_iter().map(|r| ((r.s, r.d), r.value)).collect())
    }
}

impl PTTable {
    pub fn get(&self, s: i64, d: i64) -> Result<Rat> {
        if !self.window.contains(s) || d < 1 || d > self.d_max {
            return Err(Error::OutsideWindow(format!("PT(s={s}, d={d})")));
        }
        Ok(self.entries.get(&(s, d)).cloned().unwrap_or_else(Rat::zero))
    }

    /// Reads `s,d,value` rows; the window defaults to the span of the listed exponents.
    pub fn from_csv(reader: impl Read, window: Option<QWindow>) -> Result<PTTable> {
        let mut entries = BTreeMap::new();
        for (s, d, v) in read_triples(reader, "s")? {
            if d < 1 {
                return Err(Error::InvalidArgument(format!("PT degree must be positive, got {d}")));
            }
            entries.insert((s, d), v.parse::<Rat>()?);
        }
        let window = match window {
            Some(w) => w,
            None => {
                let lo = entries.keys().map(|k| k.0).min().unwrap_or(0);
                let hi = entries.keys().map(|k| k.0).max().unwrap_or(0);
                QWindow::new(lo, hi)?
            }
        };
        let d_max = entries.keys().map(|k| k.1).max().unwrap_or(0);
        entries.retain(|k, v| window.contains(k.0) && !v.is_zero());
        Ok(PTTable { entries, window, d_max, clipped: false })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,d,value\n");
        for ((s, d), v) in &self.entries {
            out.push_str(&format!("{s},{d},{v}\n"));
        }
        out
    }
}

fn cover_sign(g: i64, r: i64) -> Rat {
    Rat::new(neg_one_pow(g - 1), r)
}

/// Degree-d coefficient of log PT, exact below `prec`.
fn log_coeffs(gv: &GVTable, prec: i64) -> BTreeMap<i64, Trunc> {
    let mut out = BTreeMap::new();
    for d in 1..=gv.d_max {
        let mut f = Trunc::default();
        for r in (1..=d).filter(|r| d % r == 0) {
            for g in 0..=gv.g_top() {
                if let Some(v) = gv.entries.get(&(g, d / r)) {
                    f.add_scaled(&block(g, r, prec), &(cover_sign(g, r) * Rat::int(v.clone())));
                }
            }
        }
        out.insert(d, f);
    }
    out
}

fn has_genus_zero(gv: &GVTable) -> bool {
    gv.entries.keys().any(|k| k.0 == 0)
}

/// `log PT` graded by degree and clipped to the window.
pub fn gv_to_logpt(gv: &GVTable, window: QWindow) -> BTreeMap<i64, LaurentQ> {
    let clip = has_genus_zero(gv);
    log_coeffs(gv, window.hi + 1).into_iter().map(|(d, f)| (d, f.into_laurent(window, clip))).collect()
}

fn exp_series(f: &BTreeMap<i64, Trunc>, d_max: i64) -> BTreeMap<i64, Trunc> {
    // d·P_d = Σ_{k=1}^{d} k F_k P_{d-k}, P_0 = 1
    let mut p: BTreeMap<i64, Trunc> = BTreeMap::new();
    p.insert(0, Trunc::exact(BTreeMap::from([(0, Rat::one())])));
    for d in 1..=d_max {
        let mut acc = Trunc::default();
        for k in 1..=d {
            acc.add_scaled(&f[&k].mul(&p[&(d - k)]), &Rat::int(k));
        }
        p.insert(d, acc.scaled(&Rat::new(1, d)));
    }
    p
}

fn log_series(p: &BTreeMap<i64, Trunc>, d_max: i64) -> BTreeMap<i64, Trunc> {
    // F_d = P_d - (1/d) Σ_{k=1}^{d-1} k F_k P_{d-k}
    let mut f: BTreeMap<i64, Trunc> = BTreeMap::new();
    for d in 1..=d_max {
        let mut acc = Trunc::default();
        for k in 1..d {
            acc.add_scaled(&f[&k].mul(&p[&(d - k)]), &Rat::int(k));
        }
        let mut fd = p[&d].clone();
        fd.add_scaled(&acc, &Rat::new(-1, d));
        f.insert(d, fd);
    }
    f
}

/// Exponentiates the GV series into PT invariants on the window.
pub fn pt_from_gv(gv: &GVTable, window: QWindow) -> PTTable {
    let spread = (gv.g_top() - 1).max(0);
    let mut extra = gv.d_max * spread;
    loop {
        let f = log_coeffs(gv, window.hi + 1 + extra);
        let p = exp_series(&f, gv.d_max);
        let ok = (1..=gv.d_max).all(|d| p[&d].prec.is_none_or(|q| q > window.hi));
        if !ok {
            extra = 2 * extra + 1;
            continue;
        }
        let mut entries = BTreeMap::new();
        let mut clipped = has_genus_zero(gv);
        for d in 1..=gv.d_max {
            for (e, v) in &p[&d].c {
                if window.contains(*e) {
                    entries.insert((*e, d), v.clone());
                } else if *e < window.lo {
                    clipped = true;
                }
            }
        }
        return PTTable { entries, window, d_max: gv.d_max, clipped };
    }
}

/// Recovers GV invariants from PT invariants; entries below the window are taken as zero.
pub fn gv_from_pt(pt: &PTTable) -> Result<GVTable> {
    let w = pt.window;
    let mut p = BTreeMap::new();
    p.insert(0, Trunc::exact(BTreeMap::from([(0, Rat::one())])));
    for d in 1..=pt.d_max {
        let c = pt.entries.iter().filter(|(k, _)| k.1 == d).map(|(k, v)| (k.0, v.clone())).collect();
        let mut t = Trunc { c, prec: Some(w.hi + 1) };
        t.trim();
        p.insert(d, t);
    }
    let f = log_series(&p, pt.d_max);
    let mut gv: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
    let mut g_max_per_d = BTreeMap::new();
    for d in 1..=pt.d_max {
        let mut rest = f[&d].clone();
        let prec = rest.prec.unwrap_or(i64::MAX);
        if prec <= 1 {
            return Err(Error::WindowTooNarrow(format!(
                "degree {d} is only known below q^{prec}; widen the window's upper end"
            )));
        }
        // multiple covers of lower degrees
        for r in (2..=d).filter(|r| d % r == 0) {
            let base = d / r;
            let known: Vec<(i64, BigInt)> = gv.iter().filter(|(k, _)| k.1 == base).map(|(k, v)| (k.0, v.clone())).collect();
            for (g, v) in known {
                rest.add_scaled(&block(g, r, prec), &(-(cover_sign(g, r) * Rat::int(v))));
            }
        }
        let int_of = |v: &Rat| -> Result<BigInt> {
            if v.is_integer() {
                Ok(v.numer().clone())
            } else {
                Err(Error::InconsistentSeries { d })
            }
        };
        // genus >= 2 from the most negative exponent upward
        while let Some((&e, v)) = rest.c.iter().next() {
            if e > -1 {
                break;
            }
            let g = 1 - e;
            let value = int_of(v)?;
            rest.add_scaled(&block(g, 1, prec), &(-(cover_sign(g, 1) * Rat::int(value.clone()))));
            gv.insert((g, d), value);
        }
        let g1 = int_of(&rest.coeff(0))?;
        rest.add_scaled(&block(1, 1, prec), &-Rat::int(g1.clone()));
        let g0 = int_of(&rest.coeff(1))?;
        rest.add_scaled(&block(0, 1, prec), &(-(cover_sign(0, 1) * Rat::int(g0.clone()))));
        if !rest.is_zero() {
            return Err(Error::InconsistentSeries { d });
        }
        gv.insert((1, d), g1);
        gv.insert((0, d), g0);
        g_max_per_d.insert(d, (1 - w.lo).max(1));
    }
    gv.retain(|_, v| !v.is_zero());
    Ok(GVTable { entries: gv, d_max: pt.d_max, g_max_per_d })
}

/// Degree-d partial log of a PT table, for checking against [`gv_to_logpt`].
pub fn log_pt(pt: &PTTable) -> BTreeMap<i64, LaurentQ> {
    let mut p = BTreeMap::new();
    p.insert(0, Trunc::exact(BTreeMap::from([(0, Rat::one())])));
    for d in 1..=pt.d_max {
        let c = pt.entries.iter().filter(|(k, _)| k.1 == d).map(|(k, v)| (k.0, v.clone())).collect();
        let mut t = Trunc { c, prec: Some(pt.window.hi + 1) };
        t.trim();
        p.insert(d, t);
    }
    log_series(&p, pt.d_max).into_iter().map(|(d, f)| (d, f.into_laurent(pt.window, pt.clipped))).collect()
}

/// `f(x)`: the quadratic bound from degree N on, the plane-curve genus below it.
pub fn lemgv_f(x: i64, big_n: i64, n: i64) -> Result<Rat> {
    if big_n * big_n < n - 1 {
        return Err(Error::PreconditionViolated(format!("need N² >= n - 1, got N = {big_n}, n = {n}")));
    }
    if x >= big_n {
        let xr = Rat::int(x);
        Ok(xr.pow(2) / Rat::int(2 * n) + Rat::new(n - 4, 2) * &xr + Rat::one() - epsilon(x, n))
    } else {
        Ok(Rat::int(planar_bound(x)))
    }
}

/// `(n³ - n²)/4 + n(N² - n + 1)`.
pub fn lemgv_threshold(n: i64, big_n: i64) -> Rat {
    Rat::new(n * n * n - n * n, 4) + Rat::int(n * (big_n * big_n - n + 1))
}

pub const PARTITION_CAP: i64 = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub x: i64,
    pub holds: bool,
    /// `f(x) - 1`.
    pub lhs: Rat,
    /// Largest `Σ (f(x_i) - 1)` over partitions of x.
    pub max_rhs: Rat,
    /// A partition with `Σ (f(x_i) - 1) > f(x) - 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
}

/// Whether `f(x) - 1 >= Σ (f(x_i) - 1)` for every partition of x.
pub fn partition_check(n: i64, big_n: i64, x: i64) -> Result<PartitionCheck> {
    partition_check_capped(n, big_n, x, PARTITION_CAP)
}

pub fn partition_check_capped(n: i64, big_n: i64, x: i64, cap: i64) -> Result<PartitionCheck> {
    if x > cap {
        return Err(Error::TooLarge { x, cap });
    }
    if x < 1 {
        return Err(Error::InvalidArgument(format!("x must be positive, got {x}")));
    }
    let mut val = vec![Rat::zero()];
    for y in 1..=x {
        val.push(lemgv_f(y, big_n, n)? - Rat::one());
    }
    // best[y] = max over partitions of y, with the part used last
    let mut best: Vec<Option<(Rat, i64)>> = vec![None; (x + 1) as usize];
    best[0] = Some((Rat::zero(), 0));
    for y in 1..=x as usize {
        for part in 1..=y {
            if let Some((b, _)) = &best[y - part] {
                let cand = b + &val[part];
                if best[y].as_ref().is_none_or(|(cur, _)| cand > *cur) {
                    best[y] = Some((cand, part as i64));
                }
            }
        }
    }
    let (max_rhs, _) = best[x as usize].clone().expect("every y has a partition");
    let lhs = val[x as usize].clone();
    let holds = lhs >= max_rhs;
    let witness = (!holds).then(|| {
        let mut parts = Vec::new();
        let mut y = x as usize;
        while y > 0 {
            let p = best[y].as_ref().expect("filled").1;
            parts.push(p);
            y -= p as usize;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    });
    Ok(PartitionCheck { x, holds, lhs, max_rhs, witness })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub checked: usize,
    pub violations: Vec<GvEntry>,
}

/// Nonzero entries that the vanishing theorem says must be zero.
pub fn vanishing_consistency(gv: &GVTable, n: i64, m: i64, n_h: &BigInt) -> VanishingReport {
    let violations = gv
        .entries
        .iter()
        .filter(|(&(g, d), _)| gv_vanish(&BigInt::from(g), &BigInt::from(d), n, m, n_h))
        .map(|(&(g, d), v)| GvEntry { g, d, value: v.clone() })
        .collect();
    VanishingReport { checked: gv.entries.len(), violations }
}

/// Integer value of a rational PT entry, if integral.
pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}
