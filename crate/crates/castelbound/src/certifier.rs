//! Branch-and-bound certification of low-degree genus bounds.
//!
//! Wall arithmetic happens on ℙ³ (n = 1) after a good projection; the target's
//! geometry enters only through its axioms and rule script. For a curve of
//! degree d the certified bound is the maximum over:
//!
//! * the neutral case, bounded by BMT at `b_d`;
//! * line-bundle walls `W(O(-k), I_C)`, bounded by the surface bound;
//! * curve walls `W(I_{C1}(-k), I_C)`, bounded by the genus of the two pieces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{bmt_bound_surd, floor_i64, planar_bound, surface_bound};
use crate::error::{Error, Result};
use crate::numerics::Rat;
use crate::targets::{DropScope, RuleScript, ScriptChoice, ScriptRule, TargetThreefold};
use crate::tiltwalls::{
    admissible_d1, b_d, curve_wall_center, curve_wall_reaches_bd, divisor_wall_exists, genus_decomposition, k_max,
    max_admissible_d1,
};

/// Rule applied at a node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Rule {
    /// Root: the bound is the maximum over its unpruned children.
    Certify,
    BaseSmall,
    NeutralBd,
    LineBundleWall { k: i64 },
    CurveWall { k: i64, d1: i64 },
    PlanarExclusion,
    P3SectionExclusion,
    ThreeProjectionExclusion,
    GenusDropRefinement { t: i64 },
    CompleteIntersectionBranch,
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rule::LineBundleWall { k } => write!(f, "LineBundleWall(k={k})"),
            Rule::CurveWall { k, d1 } => write!(f, "CurveWall(k={k}, d1={d1})"),
            Rule::GenusDropRefinement { t } => write!(f, "GenusDropRefinement(t={t})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseNode {
    pub rule: Rule,
    pub value: Rat,
    pub anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Set when the case is ruled out; its value then does not count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pruned: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CaseNode>,
}

impl CaseNode {
    fn new(rule: Rule, value: i64, anchor: &str) -> CaseNode {
        CaseNode { rule, value: Rat::int(value), anchor: anchor.to_string(), note: None, pruned: None, children: Vec::new() }
    }

    fn note(mut self, s: impl Into<String>) -> CaseNode {
        self.note = Some(s.into());
        self
    }

    /// Cases that count toward the bound.
    pub fn live_cases(&self) -> impl Iterator<Item = &CaseNode> {
        self.children.iter().filter(|c| c.pruned.is_none())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub target: String,
    pub d: i64,
    pub script: ScriptChoice,
    pub bound: Rat,
    pub tree: CaseNode,
}

impl Certificate {
    pub fn bound_i64(&self) -> i64 {
        floor_i64(&self.bound)
    }
}

const ANCHOR_BASE: &str = "a curve of degree d has genus at most (d-1)(d-2)/2, with equality only for plane curves";
const ANCHOR_PLANAR: &str = "X has no plane, so a plane curve on X lies in the plane section curve";
const ANCHOR_NEUTRAL: &str = "BMT inequality for the projected ideal sheaf at (a, b) = (0, b_d)";
const ANCHOR_LBW: &str = "curve on an integral surface of degree k in P^3";
const ANCHOR_CW: &str = "g(C) = g(C1) + g(C cap S) + k*d1 - 1 along the wall W(I_C1(-k), I_C)";
const ANCHOR_PIECE: &str = "a planar piece would put the plane wall W(O(-1), I_C) above this one";
const ANCHOR_REACH: &str = "the wall must reach b_d, i.e. 4c^2 >= 9d for its center c";
const ANCHOR_NO_PLANE_WALL: &str = "X has no plane, so W(O(-1), I_pi(C)) is not an actual wall";

/// Memoizing certifier for one target and script.
pub struct Certifier<'a> {
    target: &'a TargetThreefold,
    choice: ScriptChoice,
    script: RuleScript,
    memo: BTreeMap<i64, Certificate>,
}

impl<'a> Certifier<'a> {
    pub fn new(target: &'a TargetThreefold, choice: ScriptChoice) -> Certifier<'a> {
        Certifier { target, choice, script: target.script(choice), memo: BTreeMap::new() }
    }

    /// Runs an explicit script, e.g. with some rules removed.
    pub fn with_script(target: &'a TargetThreefold, choice: ScriptChoice, script: RuleScript) -> Certifier<'a> {
        Certifier { target, choice, script, memo: BTreeMap::new() }
    }

    pub fn certify(&mut self, d: i64) -> Result<Certificate> {
        if d < 1 || d > self.target.d1 {
            return Err(Error::OutOfCertifiedRange { d, max: self.target.d1 });
        }
        for e in 1..=d {
            if !self.memo.contains_key(&e) {
                let cert = self.build(e)?;
                self.memo.insert(e, cert);
            }
        }
        Ok(self.memo[&d].clone())
    }

    pub fn table(&mut self) -> Result<Vec<Certificate>> {
        (1..=self.target.d1).map(|d| self.certify(d)).collect()
    }

    fn bound_of(&self, e: i64) -> i64 {
        self.memo[&e].bound_i64()
    }

    fn missing(&self, rule: &str, d: i64, axiom: &str) -> Error {
        Error::MissingAxiom { rule: rule.to_string(), d, axiom: axiom.to_string() }
    }

    fn build(&self, d: i64) -> Result<Certificate> {
        let ax = &self.target.axioms;
        let sc = &self.script;
        if sc.use_no_planes && !ax.no_planes {
            return Err(self.missing("use_no_planes", d, "no_planes"));
        }
        let mut root = CaseNode::new(Rule::Certify, 0, "maximum over the cases below");
        root.note = Some(format!("target {}, degree {d}", self.target.name));

        if d <= sc.base_max_d {
            let mut node = CaseNode::new(Rule::BaseSmall, planar_bound(d), ANCHOR_BASE);
            if sc.use_no_planes {
                let cap = ax.plane_section_cap.ok_or_else(|| self.missing("PlanarExclusion", d, "plane_section_cap"))?;
                if d > cap {
                    let v = planar_bound(d) - 1;
                    node.children.push(
                        CaseNode::new(Rule::PlanarExclusion, v, ANCHOR_PLANAR)
                            .note(format!("a plane meets X in degree {cap} < {d}, so C is not planar")),
                    );
                    node.value = Rat::int(v);
                }
            }
            root.children.push(node);
            return Ok(self.finish(d, root));
        }

        // Genus drops valid in the projection scope (neutral case and all line-bundle walls).
        let mut proj_drop = 0;
        let mut proj_nodes = Vec::new();
        for rule in &sc.rules {
            if let ScriptRule::GenusDrop { scope: DropScope::Projection, t, degrees, anchor, .. } = rule {
                if degrees.contains(&d) {
                    let cap = ax.p3_section_cap.ok_or_else(|| self.missing("GenusDropRefinement", d, "p3_section_cap"))?;
                    if *t != 1 || d <= cap {
                        return Err(self.missing("GenusDropRefinement", d, "p3_section_cap below d"));
                    }
                    proj_drop = proj_drop.max(*t);
                    proj_nodes.push(
                        CaseNode::new(Rule::P3SectionExclusion, -*t, &ax.anchor("p3_section_cap"))
                            .note(format!("X cap P^3 lies in degree {cap} < {d}: {anchor}")),
                    );
                }
            }
        }

        // Neutral case.
        let neutral = bmt_bound_surd(d, &b_d(d, 1))?;
        let raw = neutral.floor();
        let raw = i64::try_from(raw).map_err(|_| Error::InvalidArgument("degree too large".into()))?;
        let mut node = CaseNode::new(Rule::NeutralBd, raw, ANCHOR_NEUTRAL).note(format!("floor({neutral}) = {raw}"));
        apply_drop(&mut node, proj_drop, &proj_nodes);
        root.children.push(node);

        // Line-bundle walls.
        let kmax = k_max(d, 1);
        let k_min = if sc.use_no_planes { 2 } else { 1 };
        if sc.use_no_planes && kmax >= 1 {
            let mut skipped = CaseNode::new(Rule::LineBundleWall { k: 1 }, planar_bound(d), ANCHOR_LBW);
            skipped.pruned = Some(ANCHOR_NO_PLANE_WALL.to_string());
            root.children.push(skipped);
        }
        for k in k_min..=kmax {
            let raw = floor_i64(&surface_bound(d, k));
            let mut node = CaseNode::new(Rule::LineBundleWall { k }, raw, ANCHOR_LBW);
            let mut excluded = None;
            let mut drop = proj_drop;
            let mut drop_nodes = proj_nodes.clone();
            for rule in &sc.rules {
                match rule {
                    ScriptRule::ThreeProjectionExclusion { k: rk, degrees, anchor } if *rk == k && degrees.contains(&d) => {
                        let q = ax.quadric_intersection_degree.ok_or_else(|| self.missing("ThreeProjectionExclusion", d, "quadric_intersection_degree"))?;
                        if !ax.p4_ci222_available || !ax.no_quadric_surfaces {
                            return Err(self.missing("ThreeProjectionExclusion", d, "p4_ci222_available and no_quadric_surfaces"));
                        }
                        if d <= q.max(8) {
                            return Err(self.missing("ThreeProjectionExclusion", d, "degree above the quadric section and 8"));
                        }
                        excluded = Some(CaseNode::new(Rule::ThreeProjectionExclusion, raw, &ax.anchor("p4_ci222_available")).note(anchor.clone()));
                    }
                    ScriptRule::GenusDrop { scope: DropScope::LineBundleWall, k: rk, t, degrees, anchor }
                        if rk.unwrap_or(2) == k && degrees.contains(&d) =>
                    {
                        self.check_lbw_drop(d, *t)?;
                        drop = drop.max(*t);
                        drop_nodes.push(CaseNode::new(Rule::GenusDropRefinement { t: *t }, -*t, &ax.anchor("quadric_intersection_degree")).note(anchor.clone()));
                    }
                    _ => {}
                }
            }
            if let Some(ex) = excluded {
                node.pruned = Some("excluded by the three-projection argument".into());
                node.children.push(ex);
            } else {
                apply_drop(&mut node, drop, &drop_nodes);
            }
            root.children.push(node);
        }

        for rule in &sc.rules {
            if let ScriptRule::CompleteIntersectionBranch { degrees, value, anchor } = rule {
                if degrees.contains(&d) {
                    if !ax.p4_ci222_available || d > 8 {
                        return Err(self.missing("CompleteIntersectionBranch", d, "p4_ci222_available"));
                    }
                    root.children.push(CaseNode::new(Rule::CompleteIntersectionBranch, *value, &ax.anchor("p4_ci222_available")).note(anchor.clone()));
                }
            }
        }

        // Curve walls; d1 = 0 is the line-bundle case above.
        for k in 1..=kmax {
            for d1 in 1..=max_admissible_d1(d, 1, k) {
                root.children.push(self.curve_wall(d, k, d1));
            }
        }

        Ok(self.finish(d, root))
    }

    fn check_lbw_drop(&self, d: i64, t: i64) -> Result<()> {
        let ax = &self.target.axioms;
        let q = ax.quadric_intersection_degree.ok_or_else(|| self.missing("GenusDropRefinement", d, "quadric_intersection_degree"))?;
        if !ax.no_quadric_surfaces || d <= q {
            return Err(self.missing("GenusDropRefinement", d, "no_quadric_surfaces with quadric section below d"));
        }
        if t >= 2 && !ax.p4_ci222_available {
            return Err(self.missing("GenusDropRefinement", d, "p4_ci222_available"));
        }
        if !(1..=2).contains(&t) {
            return Err(self.missing("GenusDropRefinement", d, "t in 1..=2"));
        }
        Ok(())
    }

    fn curve_wall(&self, d: i64, k: i64, d1: i64) -> CaseNode {
        debug_assert!(admissible_d1(d, 1, k, d1));
        let center = curve_wall_center(d, k, d1);
        let mut node = CaseNode::new(Rule::CurveWall { k, d1 }, 0, ANCHOR_CW);
        let mut pieces = Vec::new();
        for e in [d1, d - d1] {
            let mut g = self.bound_of(e);
            if self.script.planar_pruning && g == planar_bound(e) && divisor_wall_exists(d, 1, 1, e).unwrap_or(false) {
                let plane_center = -(Rat::int(e) + Rat::new(1, 2));
                if plane_center < center || (plane_center == center && k != 1) {
                    g -= 1;
                    node.children.push(
                        CaseNode::new(Rule::PlanarExclusion, g, ANCHOR_PIECE)
                            .note(format!("piece of degree {e}: plane wall center {plane_center} vs {center}")),
                    );
                }
            }
            pieces.push(g);
        }
        let value = genus_decomposition(pieces[0], pieces[1], k, d1);
        node.value = Rat::int(value);
        node.note = Some(format!("wall center {center}; pieces deg {d1} -> {}, deg {} -> {}", pieces[0], d - d1, pieces[1]));
        if !curve_wall_reaches_bd(d, k, d1) {
            node.pruned = Some(ANCHOR_REACH.to_string());
        }
        node
    }

    fn finish(&self, d: i64, mut root: CaseNode) -> Certificate {
        let bound = root.live_cases().map(|c| c.value.clone()).max().unwrap_or_else(Rat::zero);
        root.value = bound.clone();
        Certificate { target: self.target.name.clone(), d, script: self.choice, bound, tree: root }
    }
}

fn apply_drop(node: &mut CaseNode, t: i64, reasons: &[CaseNode]) {
    if t == 0 {
        return;
    }
    node.children.extend(reasons.iter().cloned());
    node.value = &node.value - Rat::int(t);
}

/// Certificate for one degree.
pub fn certify(target: &TargetThreefold, d: i64, choice: ScriptChoice) -> Result<Certificate> {
    Certifier::new(target, choice).certify(d)
}

/// Certificates for `d = 1..=D1`.
pub fn certify_table(target: &TargetThreefold, choice: ScriptChoice) -> Result<Vec<Certificate>> {
    Certifier::new(target, choice).table()
}

/// Indented text rendering of the case tree.
pub fn explain(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} d={} script={:?}: g <= {}", cert.target, cert.d, cert.script, cert.bound);
    for c in &cert.tree.children {
        render(&mut out, c, 1);
    }
    out
}

fn render(out: &mut String, node: &CaseNode, depth: usize) {
    let pad = "  ".repeat(depth);
    let _ = write!(out, "{pad}{}: {}", node.rule, node.value);
    if let Some(p) = &node.pruned {
        let _ = write!(out, "  [pruned: {p}]");
    }
    let _ = writeln!(out);
    if let Some(n) = &node.note {
        let _ = writeln!(out, "{pad}    {n}");
    }
    if !node.anchor.is_empty() {
        let _ = writeln!(out, "{pad}    because: {}", node.anchor);
    }
    for c in &node.children {
        render(out, c, depth + 1);
    }
}
