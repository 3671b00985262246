//! Closed-form genus bounds and the periodic ε corrections.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Rat, Surd};
use crate::targets::TargetThreefold;

/// `ε(d, n) = f/2·(n - f - 1 + f/n)` with `f = d mod n`.
pub fn epsilon(d: impl Into<BigInt>, n: impl Into<BigInt>) -> Rat {
    let n: BigInt = n.into();
    let f = d.into().mod_floor(&n);
    let fr = Rat::int(f.clone());
    let nr = Rat::int(n.clone());
    &fr / Rat::int(2) * (&nr - &fr - Rat::one() + &fr / &nr)
}

/// `(d-1)(d-2)/2`, the genus of a plane curve of degree d.
pub fn planar_bound(d: i64) -> i64 {
    (d - 1) * (d - 2) / 2
}

/// Bound for curves on an integral surface of degree `n_surf` in ℙ³.
pub fn surface_bound(d: impl Into<BigInt>, n_surf: i64) -> Rat {
    let d: BigInt = d.into();
    let dr = Rat::int(d.clone());
    dr.pow(2) / Rat::int(2 * n_surf) + Rat::new(n_surf - 4, 2) * &dr + Rat::one() - epsilon(d, n_surf)
}

/// Bound from the BMT inequality at the boundary point `(0, b0)`.
pub fn bmt_bound(d: impl Into<BigInt>, b0: &Rat) -> Result<Rat> {
    if !b0.is_negative() {
        return Err(Error::NonNegativeB0(b0.to_string()));
    }
    let d = Rat::int(d.into());
    let first = Rat::int(2) * d.pow(2) / (Rat::int(-3) * b0);
    Ok(first + (-(b0 / Rat::int(3)) - Rat::int(2)) * &d + Rat::one())
}

/// Same bound at an irrational `b0` such as `b_d`.
pub fn bmt_bound_surd(d: impl Into<BigInt>, b0: &Surd) -> Result<Surd> {
    if b0.cmp_rat(&Rat::zero()) != std::cmp::Ordering::Less {
        return Err(Error::NonNegativeB0(b0.to_string()));
    }
    let d = Rat::int(d.into());
    let first = b0.scale(&Rat::int(-3)).recip()?.scale(&(Rat::int(2) * d.pow(2)));
    let linear = b0.scale(&Rat::new(-1, 3)).add_rat(&Rat::int(-2)).scale(&d);
    Ok(first.try_add(&linear)?.add_rat(&Rat::one()))
}

/// `d²/(2sn) + (s·n·m³ - 4m)/2·d + 1 - ε(m·d, s·n·m²)`.
pub fn asymptotic_main_bound(d: impl Into<BigInt>, n: i64, m: i64, s: i64) -> Rat {
    let d: BigInt = d.into();
    let dr = Rat::int(d.clone());
    let lin = Rat::new(s * n * m * m * m - 4 * m, 2);
    dr.pow(2) / Rat::int(2 * s * n) + lin * &dr + Rat::one() - epsilon(d * m, s * n * m * m)
}

/// `d²/(2n) + d/2 + 1`.
pub fn castelnuovo_conjecture_bound(d: impl Into<BigInt>, n: i64) -> Rat {
    let dr = Rat::int(d.into());
    dr.pow(2) / Rat::int(2 * n) + &dr / Rat::int(2) + Rat::one()
}

/// `d²/(2n) + d/2 + 1 - ε_X(d)` from the target's table.
pub fn optimal_bound(target: &TargetThreefold, d: impl Into<BigInt>) -> Result<Rat> {
    let table = target.epsilon_table.as_ref().ok_or_else(|| Error::MissingTable(target.name.clone()))?;
    let d: BigInt = d.into();
    Ok(castelnuovo_conjecture_bound(d.clone(), target.n) - table.lookup(&d))
}

/// Upper bound for `ch_3(I_Z)·H` on a Calabi-Yau fourfold.
pub fn cy4_ch3_bound(d: impl Into<BigInt>, n: i64) -> Rat {
    let d: BigInt = d.into();
    let dr = Rat::int(d.clone());
    dr.pow(2) / Rat::int(2 * n) + Rat::new(n - 5, 2) * &dr - epsilon(d, n)
}

/// Periodic correction ε_X, indexed by `f` in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonTable {
    pub n: i64,
    pub values: BTreeMap<i64, Rat>,
}

impl EpsilonTable {
    /// Builds a full table from entries keyed by residue. Keys may use either
    /// `0..n` or `1..=n`; missing entries are filled by the symmetry `f ↔ n - f`.
    pub fn from_entries(n: i64, entries: &BTreeMap<i64, Rat>) -> Result<EpsilonTable> {
        if n < 1 {
            return Err(Error::Config(format!("epsilon table period must be positive, got {n}")));
        }
        let mut values = BTreeMap::new();
        for (&f, v) in entries {
            if !(0..=n).contains(&f) {
                return Err(Error::Config(format!("epsilon key {f} outside 0..={n}")));
            }
            let key = if f == 0 { n } else { f };
            if let Some(prev) = values.insert(key, v.clone()) {
                if prev != *v {
                    return Err(Error::Config(format!("conflicting epsilon values for f = {key}")));
                }
            }
        }
        values.entry(n).or_insert_with(Rat::zero);
        for f in 1..n {
            if !values.contains_key(&f) {
                let mirror = values.get(&(n - f)).cloned().ok_or_else(|| Error::Config(format!("epsilon value for f = {f} missing")))?;
                values.insert(f, mirror);
            }
        }
        let table = EpsilonTable { n, values };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.get(&self.n).is_none_or(|v| !v.is_zero()) {
            return Err(Error::Config("epsilon table must have value 0 at f = n".into()));
        }
        for f in 1..self.n {
            if self.values.get(&f) != self.values.get(&(self.n - f)) {
                return Err(Error::Config(format!("epsilon table not symmetric at f = {f}")));
            }
        }
        Ok(())
    }

    pub fn lookup(&self, d: &BigInt) -> Rat {
        let f = d.mod_floor(&BigInt::from(self.n)).to_i64().expect("residue fits");
        let key = if f == 0 { self.n } else { f };
        self.values[&key].clone()
    }
}

/// Floor of a rational as `i64`; the bounds used by the certifier are small.
pub fn floor_i64(r: &Rat) -> i64 {
    let f = r.floor();
    f.to_i64().unwrap_or(if f.is_negative() { i64::MIN } else { i64::MAX })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(5, 5), Rat::zero());
        assert_eq!(epsilon(1, 5), r("8/5"));
        assert_eq!(epsilon(2, 5), r("12/5"));
        assert_eq!(epsilon(1, 6), r("25/12"));
    }

    #[test]
    fn planar_examples() {
        assert_eq!(planar_bound(1), 0);
        assert_eq!(planar_bound(3), 1);
        assert_eq!(planar_bound(5), 6);
    }

    #[test]
    fn surface_examples() {
        assert_eq!(surface_bound(10, 5), Rat::int(16));
        assert_eq!(surface_bound(7, 2), Rat::int(6));
        for n in 1..12 {
            assert_eq!(surface_bound(n, n), Rat::new(n, 2) + Rat::new((n - 4) * n, 2) + Rat::one());
        }
    }

    #[test]
    fn bmt_examples() {
        assert_eq!(bmt_bound(7, &r("-2")).unwrap(), Rat::int(8));
        for n in 1..6 {
            let d = Rat::int(11);
            let b0 = Rat::new(-4 * n, 3);
            let want = d.pow(2) / Rat::int(2 * n) + (Rat::new(4 * n, 9) - Rat::int(2)) * &d + Rat::one();
            assert_eq!(bmt_bound(11, &b0).unwrap(), want);
        }
        assert!(bmt_bound(3, &Rat::zero()).is_err());
    }

    #[test]
    fn bmt_surd_at_b_d() {
        // d√d - 2d + 1 at b_d = -√d
        for d in 1..40i64 {
            let v = bmt_bound_surd(d, &crate::tiltwalls::b_d(d, 1)).unwrap();
            let want = Surd::new(Rat::int(1 - 2 * d), Rat::int(d), d);
            assert_eq!(v, want);
        }
        let v = bmt_bound_surd(4, &Surd::from_rat(r("-2"))).unwrap();
        assert_eq!(v.as_rat(), Some(&bmt_bound(4, &r("-2")).unwrap()));
    }

    #[test]
    fn asymptotic_examples() {
        // 64/16 + 2·8 + 1
        assert_eq!(asymptotic_main_bound(8, 8, 1, 1), Rat::int(21));
        for d in 1..30 {
            assert_eq!(asymptotic_main_bound(d, 5, 1, 1), Rat::new(d * d, 10) + Rat::new(d, 2) + Rat::one() - epsilon(d, 5));
            assert_eq!(asymptotic_main_bound(d, 7, 1, 1), surface_bound(d, 7));
        }
    }

    #[test]
    fn conjecture_and_cy4() {
        assert_eq!(castelnuovo_conjecture_bound(5, 5), Rat::int(6));
        assert_eq!(castelnuovo_conjecture_bound(10, 5), Rat::int(16));
        assert_eq!(cy4_ch3_bound(6, 6), Rat::int(6));
        // 1/12 + 1/2 - 25/12
        assert_eq!(cy4_ch3_bound(1, 6), r("-3/2"));
        for n in 1..10 {
            assert_eq!(cy4_ch3_bound(n, n), Rat::new(n, 2) + Rat::new((n - 5) * n, 2));
        }
    }

    #[test]
    fn table_conventions() {
        let mut half = BTreeMap::new();
        half.insert(1, r("8/5"));
        half.insert(2, r("12/5"));
        let t = EpsilonTable::from_entries(5, &half).unwrap();
        let mut zero_based = half.clone();
        zero_based.insert(0, Rat::zero());
        assert_eq!(EpsilonTable::from_entries(5, &zero_based).unwrap(), t);
        assert_eq!(t.lookup(&BigInt::from(9)), r("8/5"));
        assert_eq!(t.lookup(&BigInt::from(10)), Rat::zero());
        let mut bad = half.clone();
        bad.insert(3, r("1"));
        assert!(EpsilonTable::from_entries(5, &bad).is_err());
    }
}
