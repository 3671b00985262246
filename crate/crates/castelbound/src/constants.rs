//! Smallest-integer constants behind the asymptotic genus bound, and the
//! vanishing predicates they feed.
//!
//! Every constant is the least integer satisfying a list of inequalities. Each
//! report keeps the per-inequality thresholds and a concrete failing check at
//! `value - 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::bounds::{asymptotic_main_bound, cy4_ch3_bound, epsilon};
use crate::error::{Error, Result};
use crate::numerics::Rat;
use crate::tiltwalls::Polarization;

fn ser_big<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// How an inequality is decided for a candidate N.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Check {
    /// `N >= bound`.
    AtLeast(Rat),
    /// `sqrt(c·N) >= r`.
    Sqrt { c: Rat, r: Rat },
    /// Dominance holds for every degree `>= N`; `last_failure` is the largest degree where it fails.
    Tail { last_failure: Option<i64> },
}

impl Check {
    fn holds(&self, n: &BigInt) -> bool {
        let nr = Rat::int(n.clone());
        match self {
            Check::AtLeast(b) => nr >= *b,
            Check::Sqrt { c, r } => !r.is_positive() || (!nr.is_negative() && c * &nr >= r.pow(2)),
            Check::Tail { last_failure } => last_failure.is_none_or(|f| *n > BigInt::from(f)),
        }
    }

    fn threshold(&self) -> (BigInt, Option<Rat>) {
        match self {
            Check::AtLeast(b) => (b.ceil(), Some(b.clone())),
            Check::Sqrt { c, r } => {
                if !r.is_positive() {
                    (BigInt::zero(), None)
                } else {
                    let exact = r.pow(2) / c;
                    (exact.ceil(), Some(exact))
                }
            }
            Check::Tail { last_failure } => (BigInt::from(last_failure.map_or(1, |f| f + 1)), None),
        }
    }

    fn describe_failure(&self, n: &BigInt) -> String {
        match self {
            Check::AtLeast(b) => format!("{n} < {b}"),
            Check::Sqrt { c, r } => format!("{c}·{n} < ({r})^2"),
            Check::Tail { last_failure } => match last_failure {
                Some(f) => format!("fails at degree {f}"),
                None => "no failing degree".into(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub statement: String,
    /// Least integer N for which this inequality alone holds.
    #[serde(serialize_with = "ser_big")]
    pub threshold: BigInt,
    /// The exact rational bound, when the threshold is its ceiling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Rat>,
    pub holds: bool,
    pub binding: bool,
    #[serde(skip)]
    check: Check,
}

impl Inequality {
    /// Re-evaluates the inequality at a given N.
    pub fn holds_at(&self, n: &BigInt) -> bool {
        self.check.holds(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityWitness {
    pub id: String,
    #[serde(serialize_with = "ser_big")]
    pub at: BigInt,
    pub params: BTreeMap<String, String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantReport {
    pub name: String,
    #[serde(serialize_with = "ser_big")]
    pub value: BigInt,
    pub inequalities: Vec<Inequality>,
    pub minimality_witness: Option<MinimalityWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConstantReport {
    pub fn value_i64(&self) -> Option<i64> {
        i64::try_from(&self.value).ok()
    }

    /// Every inequality holds at `value` and one fails at `value - 1`.
    pub fn is_minimal(&self) -> bool {
        let below = &self.value - 1;
        self.inequalities.iter().all(|q| q.holds_at(&self.value)) && self.inequalities.iter().any(|q| !q.holds_at(&below))
    }
}

struct Builder {
    name: String,
    items: Vec<(String, BTreeMap<String, String>, String, Check)>,
    notes: Vec<String>,
}

impl Builder {
    fn new(name: &str) -> Builder {
        Builder { name: name.to_string(), items: Vec::new(), notes: Vec::new() }
    }

    fn push(&mut self, id: &str, params: &[(&str, String)], statement: String, check: Check) {
        let params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.items.push((id.to_string(), params, statement, check));
    }

    fn finish(self) -> ConstantReport {
        let value = self.items.iter().map(|(.., c)| c.threshold().0).max().unwrap_or_else(BigInt::zero);
        let below = &value - 1;
        let mut witness = None;
        let mut inequalities = Vec::with_capacity(self.items.len());
        for (id, params, statement, check) in self.items {
            let (threshold, exact) = check.threshold();
            let binding = threshold == value;
            if witness.is_none() && !check.holds(&below) {
                witness = Some(MinimalityWitness {
                    id: id.clone(),
                    at: below.clone(),
                    params: params.clone(),
                    detail: check.describe_failure(&below),
                });
            }
            inequalities.push(Inequality { holds: check.holds(&value), id, params, statement, threshold, exact, binding, check });
        }
        ConstantReport { name: self.name, value, inequalities, minimality_witness: witness, notes: self.notes }
    }
}

// Dominance of one ε-corrected quadratic over another. Multiplying
// `y²/(2s) + s·y/2 - ε(y,s) <= y²/(2n) + n·y/2 - ε(y,n)` by 2ns gives
// G(y) = (s-n)y² - (s-n)ns·y - s·E_n(y) + n·E_s(y) >= 0 with E_x(y) = 2x·ε(y,x).

fn e_scaled(x: i128, f: i128) -> i128 {
    f * (x * (x - f - 1) + f)
}

/// G(y) given the residues of y mod n and mod s.
fn dominance_g(n: i128, s: i128, y: i128, fn_: i128, fs: i128) -> i128 {
    (s - n) * y * (y - n * s) - s * e_scaled(n, fn_) + n * e_scaled(s, fs)
}

/// Smallest y with G(y') >= 0 guaranteed for all y' >= y:
/// the quadratic part beats the ε band `ns(n²-n)/4` from there on.
fn tail_start(n: i128, s: i128) -> i128 {
    let ns = n * s;
    if s == n {
        return 0;
    }
    let need = ns * (n * n - n);
    let ok = |y: i128| 4 * (s - n) * y * (y - ns) >= need;
    let (mut lo, mut hi) = (ns, ns + 1);
    while !ok(hi) {
        hi = ns + 2 * (hi - ns);
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Largest degree `d >= 1` where the s-bound at `m·d` exceeds the n-bound.
fn last_dominance_failure(n: i64, s: i64, m: i64) -> Option<i64> {
    assert!(n <= s, "dominance needs n <= s");
    let (n, s, m) = (n as i128, s as i128, m as i128);
    let mut d = ((tail_start(n, s) + m - 1) / m).max(1);
    let mut y = m * d;
    let (mut fn_, mut fs) = (y % n, y % s);
    // walk down one degree at a time, updating residues without division
    while d >= 1 {
        if dominance_g(n, s, y, fn_, fs) < 0 {
            return Some(d as i64);
        }
        d -= 1;
        y -= m;
        fn_ -= m;
        while fn_ < 0 {
            fn_ += n;
        }
        fs -= m;
        while fs < 0 {
            fs += s;
        }
    }
    None
}

fn dominance_statement(n: i64, s: i64, m: i64) -> String {
    let y = if m == 1 { "d".to_string() } else { format!("{m}d") };
    format!("y²/(2·{s}) + {s}y/2 - ε(y,{s}) <= y²/(2·{n}) + {n}y/2 - ε(y,{n}) for all d >= N, y = {y}")
}

fn four_thirds(n: i64) -> i64 {
    4 * n / 3
}

/// Caches N0 and N_{n,l} across a chain computation.
#[derive(Default)]
pub struct Solver {
    n0: HashMap<i64, ConstantReport>,
    n1: HashMap<(i64, i64), ConstantReport>,
    nnl: HashMap<(i64, i64), ConstantReport>,
    n1_fixed: HashMap<i64, BigInt>,
    tail: HashMap<(i64, i64, i64), Option<i64>>,
}

impl Solver {
    pub fn new() -> Solver {
        Solver::default()
    }

    pub fn n0(&mut self, n: i64) -> Result<ConstantReport> {
        if n < 1 {
            return Err(Error::InvalidArgument(format!("n must be positive, got {n}")));
        }
        if let Some(r) = self.n0.get(&n) {
            return Ok(r.clone());
        }
        let mut b = Builder::new("N0");
        b.push("n0_positive", &[], "N >= 1".into(), Check::AtLeast(Rat::one()));
        for s in n..=four_thirds(n) {
            b.push(
                "n0_dominance",
                &[("s", s.to_string())],
                dominance_statement(n, s, 1),
                Check::Tail { last_failure: last_dominance_failure(n, s, 1) },
            );
        }
        let r = b.finish();
        self.n0.insert(n, r.clone());
        Ok(r)
    }

    pub fn n1(&mut self, n: i64, l: i64) -> Result<ConstantReport> {
        if l < 1 {
            return Err(Error::InvalidArgument(format!("l must be positive, got {l}")));
        }
        if let Some(r) = self.n1.get(&(n, l)) {
            return Ok(r.clone());
        }
        let n0 = self.n0(n)?.value;
        let mut b = Builder::new("N1");
        b.push("n1_above_n0", &[], format!("N >= N0 = {n0}"), Check::AtLeast(Rat::int(n0.clone())));
        b.push("n1_neutral_range", &[], format!("N >= 16·{n}²/9"), Check::AtLeast(Rat::new(16 * n * n, 9)));
        b.push("n1_line_count", &[], format!("N >= ({n}-1)·{l} + 1"), Check::AtLeast(Rat::int((n - 1) * l + 1)));
        let eps_max = (1..=n).map(|d| epsilon(d, n)).max().unwrap_or_else(Rat::zero);
        b.push(
            "n1_eps_band",
            &[],
            format!("N >= 18/{n}·ε(d,{n}) for 0 < d <= {n}"),
            Check::AtLeast(Rat::int(18) * eps_max / Rat::int(n)),
        );
        let two = Rat::int(2);
        for k in 1..n {
            // k·sqrt(2N) - k²/2 >= k·l
            let r = Rat::int(l) + Rat::new(k, 2);
            b.push("n1_no_wall", &[("k", k.to_string())], format!("{k}·sqrt(2N) - {k}²/2 >= {k}·{l}"), Check::Sqrt { c: two.clone(), r });
        }
        let cross_rhs = Rat::new(4 * n * n, 3) - Rat::one();
        for k in n..=four_thirds(n) {
            let half = Rat::new(k * k, 2);
            let r = (Rat::int(n0.clone() - 1) + &half) / Rat::int(k);
            b.push(
                "n1_high_degree",
                &[("k", k.to_string())],
                format!("{k}·sqrt(2N) - {k}²/2 >= N0 - 1"),
                Check::Sqrt { c: two.clone(), r },
            );
            let r = (&cross_rhs + &half) / Rat::int(k);
            b.push(
                "n1_cross",
                &[("k", k.to_string())],
                format!("{k}·sqrt(2N) - {k}²/2 >= 4·{n}²/3 - 1"),
                Check::Sqrt { c: two.clone(), r },
            );
        }
        let mut r = b.finish();
        r.notes.push("the ε condition is read as N >= max over 0 < d <= n of 18ε(d,n)/n".into());
        self.n1.insert((n, l), r.clone());
        Ok(r)
    }

    pub fn n_nl(&mut self, n: i64, l: i64) -> Result<ConstantReport> {
        if let Some(r) = self.nnl.get(&(n, l)) {
            return Ok(r.clone());
        }
        let n1 = self.n1(n, l)?.value;
        let mut b = Builder::new("N_nl");
        b.push("nnl_above_n1", &[], format!("N >= N1 = {n1}"), Check::AtLeast(Rat::int(n1.clone())));
        let tail = Rat::new(n * n - n, 8) + Rat::int(&n1 * &n1) / Rat::int(2);
        for k in n..=four_thirds(n) {
            // (k/n)·sqrt(2N) >= k + k²/(2n) + (n²-n)/8 + N1²/2
            let rk = Rat::int(k) + Rat::new(k * k, 2 * n) + &tail;
            let r = Rat::new(n, k) * rk;
            b.push(
                "nnl_sum",
                &[("k", k.to_string())],
                format!("{k} + {k}²/(2·{n}) - {k}/{n}·sqrt(2N) + ({n}²-{n})/8 <= -N1²/2"),
                Check::Sqrt { c: Rat::int(2), r },
            );
        }
        let r = b.finish();
        self.nnl.insert((n, l), r.clone());
        Ok(r)
    }

    /// N1 without the report. Rows that ignore `l` are taken once per n; the
    /// no-wall rows grow with k, so only `k = n - 1` can bind.
    fn n1_value(&mut self, n: i64, l: i64) -> Result<BigInt> {
        if !self.n1_fixed.contains_key(&n) {
            let full = self.n1(n, 1)?;
            let fixed = full
                .inequalities
                .iter()
                .filter(|q| q.id != "n1_line_count" && q.id != "n1_no_wall")
                .map(|q| q.threshold.clone())
                .max()
                .unwrap_or_else(BigInt::zero);
            self.n1_fixed.insert(n, fixed);
        }
        let mut v = self.n1_fixed[&n].clone().max(BigInt::from((n - 1) * l + 1));
        if n > 1 {
            let r = Rat::int(l) + Rat::new(n - 1, 2);
            v = v.max((r.pow(2) / Rat::int(2)).ceil());
        }
        Ok(v)
    }

    /// N_nl without the report. Each row's radius is `a + k/2 + C/k` with
    /// `C > 0`, convex in k, so the largest sits at an end of the k range.
    fn n_nl_value(&mut self, n: i64, l: i64) -> Result<BigInt> {
        if let Some(r) = self.nnl.get(&(n, l)) {
            return Ok(r.value.clone());
        }
        let n1 = self.n1_value(n, l)?;
        let tail = Rat::new(n * n - n, 8) + Rat::int(&n1 * &n1) / Rat::int(2);
        let mut v = n1;
        for k in [n, four_thirds(n).max(n)] {
            let r = Rat::new(n, k) * (Rat::int(k) + Rat::new(k * k, 2 * n) + &tail);
            v = v.max((r.pow(2) / Rat::int(2)).ceil());
        }
        Ok(v)
    }

    fn last_failure(&mut self, n: i64, s: i64, m: i64) -> Option<i64> {
        *self.tail.entry((n, s, m)).or_insert_with(|| last_dominance_failure(n, s, m))
    }

    fn cor_in_divisor_value(&mut self, n_target: i64, n_d: i64, m: i64, l: i64) -> Result<BigInt> {
        let nnl = self.n_nl_value(n_d, l)?;
        let projected = Rat::new(nnl, m).ceil();
        let tail = BigInt::from(self.last_failure(n_target, n_d, m).map_or(1, |f| f + 1));
        Ok(projected.max(tail))
    }

    /// Least degree beyond which curves in a divisor with invariant `n_d` obey
    /// the bound with the smaller invariant `n_target`.
    pub fn cor_in_divisor(&mut self, n_target: i64, n_d: i64, m: i64, l: i64) -> Result<ConstantReport> {
        if n_target < 1 || m < 1 || n_target > n_d {
            return Err(Error::InvalidArgument(format!("need 1 <= n_target <= n_D and m >= 1, got {n_target}, {n_d}, {m}")));
        }
        let nnl = self.n_nl(n_d, l)?.value;
        let mut b = Builder::new("N_divisor");
        b.push(
            "div_projected",
            &[],
            format!("N >= N_nl({n_d},{l})/{m} = {nnl}/{m}"),
            Check::AtLeast(Rat::new(nnl, m)),
        );
        b.push(
            "div_dominance",
            &[("n_D", n_d.to_string()), ("n_target", n_target.to_string())],
            dominance_statement(n_target, n_d, m),
            Check::Tail { last_failure: last_dominance_failure(n_target, n_d, m) },
        );
        let mut r = b.finish();
        r.notes.push("the least integer satisfying the displayed comparison; any larger value also works".into());
        Ok(r)
    }
}

pub fn solve_n0(n: i64) -> Result<ConstantReport> {
    Solver::new().n0(n)
}

pub fn solve_n1(n: i64, l: i64) -> Result<ConstantReport> {
    Solver::new().n1(n, l)
}

pub fn solve_n_nl(n: i64, l: i64) -> Result<ConstantReport> {
    Solver::new().n_nl(n, l)
}

/// Value of the divisor comparison threshold.
pub fn cor_in_divisor_threshold(n_target: i64, n_d: i64, m: i64, l: i64) -> Result<BigInt> {
    Ok(Solver::new().cor_in_divisor(n_target, n_d, m, l)?.value)
}

/// Only the `k·sqrt(2N) - k²/2 >= k·l` family, for `1 <= k <= n-1`.
pub fn solve_no_wall(n: i64, l: i64) -> Result<ConstantReport> {
    let full = solve_n1(n, l)?;
    let mut b = Builder::new("N_no_wall");
    for q in full.inequalities.into_iter().filter(|q| q.id == "n1_no_wall") {
        let params: Vec<(&str, String)> = q.params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        b.push(&q.id, &params, q.statement, q.check);
    }
    Ok(b.finish())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremChain {
    pub n_h: i64,
    pub m_h: i64,
    /// Largest divisor invariant over the map's `k <= 4n_H/3`.
    pub s_max: i64,
    #[serde(rename = "N2")]
    pub n2: ConstantReport,
    #[serde(rename = "N3")]
    pub n3: ConstantReport,
    #[serde(rename = "N4")]
    pub n4: ConstantReport,
    #[serde(rename = "N_H")]
    pub n_h_report: ConstantReport,
}

/// Default divisor invariant map: `k ↦ s·n·m²` for every k.
pub fn default_nh_map(pol: &Polarization) -> BTreeMap<i64, i64> {
    let v = pol.derived_n_h();
    (1..=map_range(pol)).map(|k| (k, v)).collect()
}

fn map_range(pol: &Polarization) -> i64 {
    4 * pol.m_h.pow(3) * pol.n / 3
}

/// N2, N3, N4 and N_H for a polarized threefold.
pub fn solve_theorem_chain(pol: &Polarization, nh_by_k: Option<&BTreeMap<i64, i64>>) -> Result<TheoremChain> {
    let owned;
    let map = match nh_by_k {
        Some(m) => m,
        None => {
            owned = default_nh_map(pol);
            &owned
        }
    };
    let m = pol.m_h;
    let mut values = Vec::new();
    for k in 1..=map_range(pol) {
        match map.get(&k) {
            Some(&v) if v >= 1 => values.push(v),
            _ => return Err(Error::IncompleteMap(k)),
        }
    }
    let n = *values.iter().min().ok_or(Error::IncompleteMap(1))?;
    let kr = four_thirds(n).max(1);
    let s_max = map.range(1..=kr).map(|(_, v)| *v).max().unwrap_or(n);
    let mut solver = Solver::new();

    // N2: the divisor thresholds. The divisor D in |k m H| has degree k·m³·n_H³
    // in the embedding, and its own invariant lies between map[k] and j·m²·n for D in |jH|.
    let mut b = Builder::new("N2");
    b.push("n2_positive", &[], "N >= 1".into(), Check::AtLeast(Rat::one()));
    for k in 1..=kr {
        let nk = map[&k];
        let l = k * m.pow(3) * pol.n;
        let mut cands = vec![nk];
        for j in pol.s..=k * m {
            let c = j * m * m * pol.n;
            if c > nk {
                cands.push(c);
            }
        }
        cands.sort_unstable();
        cands.dedup();
        for n_d in cands {
            let t = solver.cor_in_divisor_value(nk, n_d, m, l)?;
            b.push(
                "n2_divisor",
                &[("k", k.to_string()), ("n_D", n_d.to_string()), ("l", l.to_string())],
                format!("N >= divisor threshold for |{k}·{m}H| with n_D = {n_d}"),
                Check::AtLeast(Rat::int(t)),
            );
        }
    }
    let mut n2 = b.finish();
    n2.notes.push("each divisor class is taken at every invariant it can have, from the map value up to its full degree".into());

    // N3
    let mut b = Builder::new("N3");
    b.push("n3_above_n2", &[], format!("N >= N2 = {}", n2.value), Check::AtLeast(Rat::int(n2.value.clone())));
    for s in n..=s_max {
        b.push(
            "n3_dominance",
            &[("s", s.to_string())],
            dominance_statement(n, s, m),
            Check::Tail { last_failure: last_dominance_failure(n, s, m) },
        );
    }
    let n3 = b.finish();

    // N4
    let mut b = Builder::new("N4");
    b.push("n4_above_n3", &[], format!("N >= N3 = {}", n3.value), Check::AtLeast(Rat::int(n3.value.clone())));
    b.push("n4_neutral_range", &[], format!("N >= 16·{n}²/9"), Check::AtLeast(Rat::new(16 * n * n, 9)));
    let eps_max = (1..=n).map(|d| epsilon(m * d, n)).max().unwrap_or_else(Rat::zero);
    b.push(
        "n4_eps_band",
        &[],
        format!("N >= 18/{n}·ε({m}d,{n}) for 0 < d <= {n}"),
        Check::AtLeast(Rat::int(18) * eps_max / Rat::int(n)),
    );
    let c = Rat::int(2 * m);
    for k in 1..=kr {
        let half = Rat::new(k * k, 2);
        let r = (Rat::int(m) * Rat::int(&n3.value - 1) + &half) / Rat::int(k);
        b.push(
            "n4_high_degree",
            &[("k", k.to_string())],
            format!("{k}·sqrt(2·{m}·N) - {k}²/2 >= {m}(N3 - 1)"),
            Check::Sqrt { c: c.clone(), r },
        );
        let r = (Rat::int(k * n - 1) + &half) / Rat::int(k);
        b.push(
            "n4_cross",
            &[("k", k.to_string())],
            format!("{k}·sqrt(2·{m}·N) - {k}²/2 >= {k}·{n} - 1"),
            Check::Sqrt { c: c.clone(), r },
        );
    }
    let n4 = b.finish();

    // N_H
    let mut b = Builder::new("N_H");
    b.push("nh_above_n4", &[], format!("N >= N4 = {}", n4.value), Check::AtLeast(Rat::int(n4.value.clone())));
    let tail = Rat::new(n * n - n, 8 * m) + Rat::int(m) * Rat::int(&n4.value * &n4.value) / Rat::int(2);
    for k in 1..=kr {
        let rk = Rat::int(k) + Rat::new(k * k, 2 * n) + &tail;
        let r = Rat::new(n, k) * rk;
        b.push(
            "nh_sum",
            &[("k", k.to_string())],
            format!("{k} + {k}²/(2·{n}) - {k}/{n}·sqrt(2·{m}·N) + ({n}²-{n})/(8·{m}) <= -{m}·N4²/2"),
            Check::Sqrt { c: c.clone(), r },
        );
    }
    let n_h_report = b.finish();

    Ok(TheoremChain { n_h: n, m_h: m, s_max, n2, n3, n4, n_h_report })
}

/// Degree threshold for GV vanishing: `(n³m⁵ - n²m³)/4 + n·m·(m²N_H² - n + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvThreshold {
    pub exact: Rat,
    #[serde(serialize_with = "ser_big")]
    pub value: BigInt,
    /// The exact expression was not an integer and has been rounded up.
    pub fractional: bool,
}

pub fn gv_degree_threshold(n: i64, m: i64, n_h: &BigInt) -> GvThreshold {
    let (nb, mb) = (BigInt::from(n), BigInt::from(m));
    let first = Rat::new(nb.pow(3) * mb.pow(5) - nb.pow(2) * mb.pow(3), 4);
    let second = Rat::int(&nb * &mb * (&mb * &mb * n_h * n_h - &nb + 1));
    let exact = first + second;
    GvThreshold { value: exact.ceil(), fractional: !exact.is_integer(), exact }
}

/// Right side of the genus bound without the `+1`.
fn chi_bound(d: &BigInt, n: i64, m: i64) -> Rat {
    asymptotic_main_bound(d.clone(), n, m, 1) - Rat::one()
}

/// `DT_{s,d} = PT_{s,d} = 0` is guaranteed.
pub fn pt_dt_vanish(s: &BigInt, d: &BigInt, n: i64, m: i64, n_h: &BigInt) -> bool {
    d >= n_h && Rat::int(s.clone()) < -chi_bound(d, n, m)
}

/// `GV_{g,d} = 0` is guaranteed.
pub fn gv_vanish(g: &BigInt, d: &BigInt, n: i64, m: i64, n_h: &BigInt) -> bool {
    *d >= gv_degree_threshold(n, m, n_h).value && Rat::int(g.clone()) > asymptotic_main_bound(d.clone(), n, m, 1)
}

/// The moduli space on a CY4 is empty.
pub fn cy4_empty(d: &BigInt, beta_h: &Rat, n: i64, n_h: &BigInt) -> bool {
    d >= n_h && *beta_h < -cy4_ch3_bound(d.clone(), n)
}

fn fmt_linear(c: &Rat) -> String {
    let (p, q) = (c.numer().abs(), c.denom().clone());
    let body = match (p.is_one(), q.is_one()) {
        (true, true) => "d".to_string(),
        (true, false) => format!("d/{q}"),
        (false, true) => format!("{p}d"),
        (false, false) => format!("{p}d/{q}"),
    };
    let sign = if c.is_negative() { "\u{2212}" } else { "+" };
    format!(" {sign} {body}")
}

/// The GV vanishing condition as text, e.g. `g > d²/10 + d/2 + 1 − ε(d,5)` for the quintic.
pub fn gv_vanish_inequality(n: i64, m: i64) -> String {
    let mut out = format!("g > d²/{}", 2 * n);
    let lin = Rat::new(n * m.pow(3) - 4 * m, 2);
    if !lin.is_zero() {
        out.push_str(&fmt_linear(&lin));
    }
    let arg = if m == 1 { "d".to_string() } else { format!("{m}d") };
    let _ = write!(out, " + 1 \u{2212} ε({arg},{})", n * m * m);
    out
}
