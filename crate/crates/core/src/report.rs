//! Machine-readable report emitted by the command-line tool.
//!
//! Field order is the declaration order below, and every section type
//! deserializes back into itself, so JSON reports round-trip.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::census::CensusReport;
use crate::frame::open_lattice;
use crate::rclass::{Exclusion, HofmannMisloveReport, RClassReport};
use crate::sobrification::{SobrificationReport, SobrificationResult};
use crate::space::{Properties, Space};
use crate::subset::Subset;
use crate::symbolic::{
    ChainRecord, DescendingChain, Family, Predicate, RMembership, SymbolicRClassSummary, SymbolicSubset, Verdict,
};

pub const TOOL: &str = "soberlab";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::Violation => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Violation => "VIOLATION",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub sections: Sections,
}

impl Report {
    pub fn new(command: impl Into<String>, input_digest: impl Into<String>) -> Self {
        Report {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input_digest: input_digest.into(),
            status: Status::Ok,
            error: None,
            sections: Sections::default(),
        }
    }

    pub fn fail(mut self, status: Status, error: impl Into<String>) -> Self {
        self.status = status;
        self.error = Some(error.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sections {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub properties: Option<PropertiesSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sobrification: Option<SobrificationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rclass: Option<RClassSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hm: Option<HofmannMisloveReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<Vec<CensusReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<SymbolicSection>,
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

type Labels = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSection {
    pub name: String,
    pub points: Labels,
    pub opens: Vec<Labels>,
    pub closed: Vec<Labels>,
}

impl SpaceSection {
    pub fn of(space: &Space) -> Self {
        SpaceSection {
            name: space.name().into(),
            points: space.points().to_vec(),
            opens: space.opens().iter().map(|g| space.labels_of(*g)).collect(),
            closed: space.closed_sets().iter().map(|f| space.labels_of(*f)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleEntry {
    pub set: Labels,
    pub generic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertiesSection {
    pub t0: bool,
    pub quasisober: bool,
    pub sober: bool,
    /// Pairs `[x, y]` with `x ∈ cl{y}` and `x ≠ y`.
    pub specialization: Vec<[String; 2]>,
    pub irreducible_closed: Vec<IrreducibleEntry>,
    /// Equivalence classes of the T0 quotient.
    pub t0_classes: Vec<Labels>,
}

impl PropertiesSection {
    pub fn of(space: &Space) -> Self {
        let Properties { t0, quasisober, sober } = space.properties();
        let order = space.specialization_preorder();
        let n = space.len();
        let p = space.points();
        let specialization = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && order.leq(x, y))
            .map(|(x, y)| [p[x].clone(), p[y].clone()])
            .collect();
        let irreducible_closed = space
            .irreducible_closed_subsets()
            .iter()
            .map(|c| IrreducibleEntry { set: space.labels_of(c.set), generic: c.generic().map(|g| p[g].clone()) })
            .collect();
        let t0_classes = space.t0_quotient().classes.iter().map(|c| space.labels_of(*c)).collect();
        PropertiesSection { t0, quasisober, sober, specialization, irreducible_closed, t0_classes }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub from: Labels,
    pub to: Labels,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SobrificationSection {
    /// Points of `S`, each labelled by its prime open of `X`.
    pub points: Labels,
    pub opens: Vec<Labels>,
    /// `[x, ξ(x)]`
    pub xi: Vec<[String; 2]>,
    pub sigma: Vec<MapEntry>,
    pub tau: Vec<MapEntry>,
    pub image: Labels,
    /// Hasse diagram of `O(X)` as index pairs into `opens` of the space.
    pub open_lattice_edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<SobrificationReport>,
}

impl SobrificationSection {
    pub fn of(space: &Space, r: &SobrificationResult, verification: Option<SobrificationReport>) -> Self {
        let s = &r.s;
        SobrificationSection {
            points: s.points().to_vec(),
            opens: s.opens().iter().map(|u| s.labels_of(*u)).collect(),
            xi: (0..space.len()).map(|x| [space.points()[x].clone(), s.points()[r.xi[x]].clone()]).collect(),
            sigma: space
                .opens()
                .iter()
                .zip(&r.sigma)
                .map(|(g, u)| MapEntry { from: space.labels_of(*g), to: s.labels_of(*u) })
                .collect(),
            tau: space
                .closed_sets()
                .iter()
                .zip(&r.tau)
                .map(|(f, k)| MapEntry { from: space.labels_of(*f), to: s.labels_of(*k) })
                .collect(),
            image: s.labels_of(r.image),
            open_lattice_edges: open_lattice(space).hasse_edges(),
            verification,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionEntry {
    pub set: Labels,
    pub reason: Exclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RClassSection {
    pub q: Vec<Labels>,
    pub r: Vec<Labels>,
    pub quasisober: bool,
    pub covers: bool,
    pub equal: bool,
    pub r_within_q: bool,
    pub equivalence_holds: bool,
    pub closed_under_unions: bool,
    pub exclusions: Vec<ExclusionEntry>,
}

impl RClassSection {
    pub fn of(space: &Space, rep: &RClassReport) -> Self {
        let labels = |v: &[Subset]| v.iter().map(|a| space.labels_of(*a)).collect();
        RClassSection {
            q: labels(&rep.q),
            r: labels(&rep.r),
            quasisober: rep.quasisober,
            covers: rep.covers,
            equal: rep.equal,
            r_within_q: rep.r_within_q(),
            equivalence_holds: rep.equivalence_holds(),
            closed_under_unions: rep.union_violation().is_none(),
            exclusions: rep
                .exclusions
                .iter()
                .map(|(a, why)| ExclusionEntry { set: space.labels_of(*a), reason: *why })
                .collect(),
        }
    }

    pub fn consistent(&self) -> bool {
        self.r_within_q && self.equivalence_holds && self.closed_under_unions
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuerySection {
    pub predicate: Predicate,
    pub input: SymbolicSubset,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipSection {
    pub input: SymbolicSubset,
    pub membership: RMembership,
    pub summary: SymbolicRClassSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleSection {
    pub chain: DescendingChain,
    /// First few members, for display.
    pub sample: Vec<SymbolicSubset>,
    pub record: ChainRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicSection {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QuerySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rclass: Option<MembershipSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleSection>,
}

/// Plain-text rendering.
pub fn render_text(r: &Report) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let set = |l: &Labels| if l.is_empty() { "∅".to_string() } else { format!("{{{}}}", l.join(",")) };
    let sets = |v: &[Labels]| v.iter().map(set).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "{} {} {} [{}]", r.tool, r.version, r.command, r.status.as_str());
    let _ = writeln!(out, "input digest: {}", r.input_digest);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error: {e}");
    }
    let s = &r.sections;
    if let Some(sp) = &s.space {
        let _ = writeln!(out, "space {:?}: points {}", sp.name, set(&sp.points));
        let _ = writeln!(out, "  opens:  {}", sets(&sp.opens));
        let _ = writeln!(out, "  closed: {}", sets(&sp.closed));
    }
    if let Some(p) = &s.properties {
        let _ = writeln!(out, "T0: {}  quasisober: {}  sober: {}", p.t0, p.quasisober, p.sober);
        for c in &p.irreducible_closed {
            let _ = writeln!(
                out,
                "  irreducible closed {} generic {}",
                set(&c.set),
                c.generic.as_deref().unwrap_or("NONE")
            );
        }
        let _ = writeln!(out, "  T0 classes: {}", sets(&p.t0_classes));
    }
    if let Some(sb) = &s.sobrification {
        let _ = writeln!(out, "sobrification: {} points, image {}", sb.points.len(), set(&sb.image));
        for [x, p] in &sb.xi {
            let _ = writeln!(out, "  ξ({x}) = {p}");
        }
        for m in &sb.sigma {
            let _ = writeln!(out, "  σ({}) = {}", set(&m.from), set(&m.to));
        }
        if let Some(v) = &sb.verification {
            let _ = writeln!(out, "  verification: {} (S sober: {})", if v.pass { "PASS" } else { "FAIL" }, v.s_sober);
            for c in &v.clauses {
                let _ = write!(out, "    [{}] {:<46} {}", c.clause, c.name, if c.pass { "PASS" } else { "FAIL" });
                if let Some(sides) = &c.sides {
                    let _ = write!(out, " {sides:?}");
                }
                if let Some(w) = &c.witness {
                    let _ = write!(out, ": {w}");
                }
                out.push('\n');
            }
        }
    }
    if let Some(rc) = &s.rclass {
        let _ = writeln!(out, "Q(X): {}", sets(&rc.q));
        let _ = writeln!(out, "R(X): {}", sets(&rc.r));
        let _ = writeln!(out, "quasisober: {}  R covers X: {}  R = Q: {}", rc.quasisober, rc.covers, rc.equal);
        for e in &rc.exclusions {
            let _ = writeln!(out, "  {} ∉ R(X): {}", set(&e.set), e.reason);
        }
    }
    if let Some(hm) = &s.hm {
        let _ = writeln!(
            out,
            "Hofmann–Mislove: {} filters ↔ {} compact saturated, bijection {} (sober {}) {}",
            hm.filters,
            hm.compact_saturated,
            hm.bijection,
            hm.sober,
            if hm.sober { "" } else { "[informational]" }
        );
    }
    if let Some(cs) = &s.census {
        for c in cs {
            let _ = writeln!(
                out,
                "census n={}: {} topologies, {} violations, {} filtered families, {} ms (seed {})",
                c.n,
                c.topology_count,
                c.violations.len(),
                c.tally.filtered_families,
                c.elapsed_ms,
                c.seed
            );
            for v in &c.violations {
                let _ = writeln!(out, "  {:?} {}: {}", v.suite, v.digest, v.witness);
            }
        }
    }
    if let Some(sy) = &s.symbolic {
        let _ = writeln!(out, "family {}", sy.family);
        if let Some(q) = &sy.query {
            let _ = writeln!(out, "  {:?}({}) = {}", q.predicate, q.input, verdict_text(&q.verdict));
            let _ = writeln!(out, "  certificate: {}", q.verdict.certificate);
        }
        if let Some(m) = &sy.rclass {
            let _ = writeln!(
                out,
                "  {} ∈ R(X): {}{}",
                m.input,
                m.membership.member,
                m.membership.reason.as_ref().map(|r| format!(" ({r})")).unwrap_or_default()
            );
            let _ = writeln!(
                out,
                "  quasisober: {}  R covers X: {}  R = Q: {}",
                m.summary.quasisober, m.summary.covers, m.summary.equal
            );
        }
        if let Some(c) = &sy.counterexample {
            let sample: Vec<String> = c.sample.iter().map(|q| q.to_string()).collect();
            let _ = writeln!(out, "  chain {}: {} ...", c.chain.rule, sample.join(" ⊇ "));
            let _ = writeln!(out, "  intersection: {}", c.chain.symbolic_intersection);
            let _ = writeln!(
                out,
                "  escape property fails for G = ∅: {} (checked j ≤ {}, verified {})",
                c.record.escape_fails, c.record.checked_up_to, c.record.verified
            );
        }
    }
    out
}

fn verdict_text(v: &Verdict) -> String {
    use crate::symbolic::Answer;
    match &v.answer {
        Answer::Bool { value } => value.to_string(),
        Answer::Set { value } => value.to_string(),
        Answer::Irreducible { irreducible, generic, reducing_pair } => {
            let mut s =
                format!("irreducible={irreducible} generic={}", generic.map_or("NONE".into(), |g| g.to_string()));
            if let Some((f, g)) = reducing_pair {
                s.push_str(&format!(" reducing pair ({f}, {g})"));
            }
            s
        }
    }
}
