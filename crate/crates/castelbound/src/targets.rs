//! Named threefolds, their geometric axioms and per-degree rule scripts.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::EpsilonTable;
use crate::error::{Error, Result};
use crate::numerics::Rat;

/// Geometric facts about the target that the certifier may rely on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomSet {
    #[serde(default)]
    pub no_planes: bool,
    /// Degree of a plane curve containing `X ∩ plane`.
    pub plane_section_cap: Option<i64>,
    #[serde(default)]
    pub no_quadric_surfaces: bool,
    /// Degree bound for `S ∩ X` with S a quadric surface.
    pub quadric_intersection_degree: Option<i64>,
    /// Degree of a curve containing `X ∩ ℙ³`.
    pub p3_section_cap: Option<i64>,
    /// Curves spanning a ℙ⁴ lie on a degree-2 surface or a (2,2,2) complete intersection curve.
    #[serde(default)]
    pub p4_ci222_available: bool,
    /// Justification for each enabled axiom, keyed by field name.
    #[serde(default)]
    pub anchors: BTreeMap<String, String>,
}

impl AxiomSet {
    fn enabled(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.no_planes {
            out.push("no_planes");
        }
        if self.plane_section_cap.is_some() {
            out.push("plane_section_cap");
        }
        if self.no_quadric_surfaces {
            out.push("no_quadric_surfaces");
        }
        if self.quadric_intersection_degree.is_some() {
            out.push("quadric_intersection_degree");
        }
        if self.p3_section_cap.is_some() {
            out.push("p3_section_cap");
        }
        if self.p4_ci222_available {
            out.push("p4_ci222_available");
        }
        out
    }

    pub fn anchor(&self, axiom: &str) -> String {
        self.anchors.get(axiom).cloned().unwrap_or_default()
    }

    /// Every enabled axiom must carry an anchor string.
    pub fn validate(&self) -> Result<()> {
        for a in self.enabled() {
            if self.anchors.get(a).is_none_or(|s| s.trim().is_empty()) {
                return Err(Error::Config(format!("axiom {a} is enabled but has no anchor")));
            }
        }
        Ok(())
    }
}

/// Which case values a genus drop applies to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropScope {
    /// The neutral case and every line-bundle wall: `g(C) <= g(π(C)) - t`.
    Projection,
    /// Only the line-bundle wall `W(O(-k), I_C)`.
    LineBundleWall,
}

/// One degree-specific refinement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScriptRule {
    /// Removes the wall `W(O(-k), I_C)` at the listed degrees.
    ThreeProjectionExclusion { k: i64, degrees: Vec<i64>, anchor: String },
    /// Lowers case values by `t`.
    GenusDrop {
        scope: DropScope,
        #[serde(default)]
        k: Option<i64>,
        t: i64,
        degrees: Vec<i64>,
        anchor: String,
    },
    /// Extra leaf for curves equal to or linked inside a (2,2,2) complete intersection.
    CompleteIntersectionBranch { degrees: Vec<i64>, value: i64, anchor: String },
}

/// Per-target refinement script.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleScript {
    /// Degrees up to this use the plane-curve bound directly.
    #[serde(default)]
    pub base_max_d: i64,
    /// Use `no_planes`: start line-bundle walls at k = 2 and lower planar base cases.
    #[serde(default)]
    pub use_no_planes: bool,
    /// Drop a piece's planar genus by one when its plane would give a higher wall.
    #[serde(default)]
    pub planar_pruning: bool,
    #[serde(default)]
    pub rules: Vec<ScriptRule>,
}

impl RuleScript {
    /// All walls, no exclusions.
    pub fn conservative() -> RuleScript {
        RuleScript::default()
    }
}

/// Which script to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScriptChoice {
    Default,
    /// The target's own rule script; spelled `paper` on the command line.
    #[serde(rename = "paper")]
    Target,
}

impl std::str::FromStr for ScriptChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<ScriptChoice> {
        match s {
            "default" => Ok(ScriptChoice::Default),
            "paper" => Ok(ScriptChoice::Target),
            _ => Err(Error::Parse { what: "script", input: s.to_string() }),
        }
    }
}

/// On-disk form of a target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub name: String,
    #[serde(default)]
    pub label: String,
    pub n: i64,
    pub ambient_dim: i64,
    #[serde(default = "one")]
    pub s: i64,
    #[serde(default = "one")]
    pub m_h: i64,
    /// Largest certified degree.
    pub d1: i64,
    /// ε_X values keyed by residue; omitted for targets without a conjectured table.
    #[serde(default)]
    pub epsilon: Option<BTreeMap<String, Rat>>,
    #[serde(default)]
    pub axioms: AxiomSet,
    #[serde(default)]
    pub script: RuleScript,
}

fn one() -> i64 {
    1
}

/// A validated target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetThreefold {
    pub name: String,
    pub label: String,
    pub n: i64,
    pub ambient_dim: i64,
    pub s: i64,
    pub m_h: i64,
    #[serde(rename = "D1")]
    pub d1: i64,
    pub epsilon_table: Option<EpsilonTable>,
    pub axioms: AxiomSet,
    pub target_script: RuleScript,
}

impl TargetThreefold {
    pub fn from_config(cfg: TargetConfig) -> Result<TargetThreefold> {
        if cfg.n < 1 || cfg.s < 1 || cfg.m_h < 1 || cfg.d1 < 1 {
            return Err(Error::Config(format!("target {}: n, s, m_h, d1 must be positive", cfg.name)));
        }
        cfg.axioms.validate()?;
        let epsilon_table = match &cfg.epsilon {
            None => None,
            Some(raw) => {
                let mut entries = BTreeMap::new();
                for (k, v) in raw {
                    let f: i64 = k.trim().parse().map_err(|_| Error::Config(format!("bad epsilon key {k:?}")))?;
                    entries.insert(f, v.clone());
                }
                Some(EpsilonTable::from_entries(cfg.n, &entries)?)
            }
        };
        Ok(TargetThreefold {
            name: cfg.name,
            label: cfg.label,
            n: cfg.n,
            ambient_dim: cfg.ambient_dim,
            s: cfg.s,
            m_h: cfg.m_h,
            d1: cfg.d1,
            epsilon_table,
            axioms: cfg.axioms,
            target_script: cfg.script,
        })
    }

    pub fn from_toml(text: &str) -> Result<TargetThreefold> {
        let cfg: TargetConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        TargetThreefold::from_config(cfg)
    }

    pub fn from_json(text: &str) -> Result<TargetThreefold> {
        let cfg: TargetConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        TargetThreefold::from_config(cfg)
    }

    pub fn from_path(path: &Path) -> Result<TargetThreefold> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            TargetThreefold::from_json(&text)
        } else {
            TargetThreefold::from_toml(&text)
        }
    }

    pub fn script(&self, choice: ScriptChoice) -> RuleScript {
        match choice {
            ScriptChoice::Default => RuleScript::conservative(),
            ScriptChoice::Target => self.target_script.clone(),
        }
    }

    /// Built-in target by name.
    pub fn builtin(name: &str) -> Result<TargetThreefold> {
        let text = BUILTIN_TARGETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::Config(format!("unknown target {name:?}")))?;
        TargetThreefold::from_toml(text)
    }

    /// Resolves a name or path: an existing file wins, then `$CASTELBOUND_CONFIG_DIR/<name>.toml`,
    /// then the built-ins.
    pub fn resolve(spec: &str) -> Result<TargetThreefold> {
        let p = Path::new(spec);
        if p.is_file() {
            return TargetThreefold::from_path(p);
        }
        if let Ok(dir) = std::env::var("CASTELBOUND_CONFIG_DIR") {
            for ext in ["toml", "json"] {
                let candidate = Path::new(&dir).join(format!("{spec}.{ext}"));
                if candidate.is_file() {
                    return TargetThreefold::from_path(&candidate);
                }
            }
        }
        TargetThreefold::builtin(spec)
    }
}

/// Embedded target configs.
pub const BUILTIN_TARGETS: &[(&str, &str)] = &[
    ("x5", include_str!("../targets/x5.toml")),
    ("x24", include_str!("../targets/x24.toml")),
    ("x33", include_str!("../targets/x33.toml")),
    ("x223", include_str!("../targets/x223.toml")),
    ("x2222", include_str!("../targets/x2222.toml")),
    ("pfaff-gr27-x", include_str!("../targets/pfaff-gr27-x.toml")),
    ("pfaff-gr27-y", include_str!("../targets/pfaff-gr27-y.toml")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN_TARGETS.iter().map(|(n, _)| *n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in builtin_names() {
            let t = TargetThreefold::builtin(name).unwrap();
            assert_eq!(t.name, name);
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = include_str!("../targets/x24.toml").to_string() + "\nsurprise = 1\n";
        assert!(matches!(TargetThreefold::from_toml(&text), Err(Error::Config(_))));
    }

    #[test]
    fn axiom_without_anchor_rejected() {
        let ax = AxiomSet { no_planes: true, ..Default::default() };
        assert!(ax.validate().is_err());
    }
}
