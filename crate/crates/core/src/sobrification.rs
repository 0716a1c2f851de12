//! The sobrification `S = Spec O(X)` with the hull-kernel topology, the point
//! map `ξ`, and the lattice isomorphisms `σ : O(X) → O(S)`, `τ : F(X) → F(S)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::open_lattice;
use crate::space::{dedupe_labels, Space};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SobrificationError {
    #[error("sobrification result does not belong to space `{0}`")]
    ResultMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SobrificationResult {
    /// The sober space; its points are the prime opens of `X`.
    pub s: Space,
    /// The prime open of `X` behind each point of `S`.
    pub primes: Vec<Subset>,
    /// `xi[x]` is the point `X ∖ cl{x}` of `S`.
    pub xi: Vec<usize>,
    /// `sigma[i]` is the image of `X.opens()[i]`.
    pub sigma: Vec<Subset>,
    /// `tau[i]` is the image of `X.closed_sets()[i]`.
    pub tau: Vec<Subset>,
    /// `im ξ` as a subset of `S`.
    pub image: Subset,
}

impl SobrificationResult {
    /// `ξ(A)`.
    pub fn image_of(&self, a: Subset) -> Subset {
        Subset::from_indices(self.s.len(), a.iter().map(|x| self.xi[x]))
    }

    /// `ξ⁻¹(B)`.
    pub fn preimage_of(&self, b: Subset) -> Subset {
        Subset::from_indices(self.xi.len(), (0..self.xi.len()).filter(|&x| b.contains(self.xi[x])))
    }

    pub fn sigma_of(&self, space: &Space, g: Subset) -> Option<Subset> {
        space.open_index(g).map(|i| self.sigma[i])
    }

    pub fn tau_of(&self, space: &Space, f: Subset) -> Option<Subset> {
        space.closed_index(f).map(|i| self.tau[i])
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.s.len()];
        self.xi.iter().all(|&p| !std::mem::replace(&mut seen[p], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.image.is_full()
    }
}

/// Builds `S`, `ξ`, `σ` and `τ` for a finite space.
pub fn sobrify(space: &Space) -> SobrificationResult {
    let n = space.len();
    let lattice = open_lattice(space);
    let primes: Vec<Subset> = lattice.prime_elements().into_iter().map(|p| lattice.element(p)).collect();
    let m = primes.len();

    // hull-kernel opens: σ(G) = {P : G ⊄ P}
    let sigma_raw = |g: Subset| Subset::from_indices(m, (0..m).filter(|&k| !g.is_subset(primes[k])));
    let sigma: Vec<Subset> = space.opens().iter().map(|g| sigma_raw(*g)).collect();

    let mut labels: Vec<String> = primes.iter().map(|p| space.show(*p)).collect();
    dedupe_labels(&mut labels);
    let s = Space::new(format!("Spec O({})", space.name()), labels, sigma.clone())
        .expect("hull-kernel opens form a topology");

    let full = space.full_set();
    let xi: Vec<usize> = (0..n)
        .map(|x| {
            let p = full.difference(space.point_closure(x));
            primes.iter().position(|q| *q == p).expect("complement of a point closure is prime")
        })
        .collect();

    // τ(F) = {P : X ∖ F ⊆ P}
    let tau = space
        .closed_sets()
        .iter()
        .map(|f| Subset::from_indices(m, (0..m).filter(|&k| f.complement().is_subset(primes[k]))))
        .collect();

    let image = Subset::from_indices(m, xi.iter().copied());
    SobrificationResult { s, primes, xi, sigma, tau, image }
}

/// Outcome of one clause of the sobrification checks.
///
/// Clause 0 is continuity of `ξ`; clauses 1 to 8 follow the list of
/// properties of the sobrification map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub clause: u8,
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    /// For clauses 7 and 8, the truth values of the three equivalent statements.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sides: Option<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SobrificationReport {
    pub pass: bool,
    /// Whether `S` itself passed the sobriety check.
    pub s_sober: bool,
    pub clauses: Vec<ClauseReport>,
}

impl SobrificationReport {
    pub fn clause(&self, k: u8) -> &ClauseReport {
        self.clauses.iter().find(|c| c.clause == k).expect("clause exists")
    }
}

fn clause(k: u8, name: &str, witness: Option<String>) -> ClauseReport {
    ClauseReport { clause: k, name: name.into(), pass: witness.is_none(), witness, sides: None }
}

/// Checks every property of the sobrification map on `space`, exhaustively.
pub fn verify_sobrification(space: &Space, r: &SobrificationResult) -> Result<SobrificationReport, SobrificationError> {
    if *r != sobrify(space) {
        return Err(SobrificationError::ResultMismatch(space.name().to_string()));
    }
    let s = &r.s;
    let im = r.image;
    let show_x = |a: Subset| space.show(a);
    let show_s = |b: Subset| s.show(b);

    let continuity = s
        .opens()
        .iter()
        .find(|u| !space.is_open(r.preimage_of(**u)))
        .map(|u| format!("ξ⁻¹({}) = {} is not open", show_s(*u), show_x(r.preimage_of(*u))));

    let relatively = |target: Subset, family: &[Subset]| family.iter().any(|u| u.intersection(im) == target);
    let open_onto_image = space
        .opens()
        .iter()
        .find(|g| !relatively(r.image_of(**g), s.opens()))
        .map(|g| format!("ξ({}) is not open in im ξ", show_x(*g)));
    let closed_onto_image = space
        .closed_sets()
        .iter()
        .find(|f| !relatively(r.image_of(**f), s.closed_sets()))
        .map(|f| format!("ξ({}) is not closed in im ξ", show_x(*f)));

    let sigma_iso = lattice_iso_violation(space.opens(), &r.sigma, s.opens(), &show_x).or_else(|| {
        space.opens().iter().zip(&r.sigma).find_map(|(g, sg)| {
            if r.image_of(*g) != sg.intersection(im) {
                Some(format!("ξ({}) ≠ σ({}) ∩ im ξ", show_x(*g), show_x(*g)))
            } else if r.preimage_of(*sg) != *g {
                Some(format!("ξ⁻¹(σ({})) ≠ {}", show_x(*g), show_x(*g)))
            } else {
                None
            }
        })
    });
    let tau_iso = lattice_iso_violation(space.closed_sets(), &r.tau, s.closed_sets(), &show_x).or_else(|| {
        space.closed_sets().iter().zip(&r.tau).find_map(|(f, tf)| {
            if r.image_of(*f) != tf.intersection(im) {
                Some(format!("ξ({}) ≠ τ({}) ∩ im ξ", show_x(*f), show_x(*f)))
            } else if r.preimage_of(*tf) != *f {
                Some(format!("ξ⁻¹(τ({})) ≠ {}", show_x(*f), show_x(*f)))
            } else {
                None
            }
        })
    });

    let zero_closed: Vec<Subset> = Subset::all(space.len()).filter(|a| space.is_zero_closed(*a)).collect();
    let saturated_preimage = zero_closed
        .iter()
        .find(|a| r.preimage_of(r.image_of(**a)) != **a)
        .map(|a| format!("ξ⁻¹(ξ({})) ≠ {}", show_x(*a), show_x(*a)));

    let meets = {
        let mut bad = None;
        'pairs: for (i, &a) in zero_closed.iter().enumerate() {
            for &b in &zero_closed[i..] {
                if r.image_of(a.intersection(b)) != r.image_of(a).intersection(r.image_of(b)) {
                    bad = Some(format!("ξ({} ∩ {}) ≠ ξ({}) ∩ ξ({})", show_x(a), show_x(b), show_x(a), show_x(b)));
                    break 'pairs;
                }
            }
        }
        bad.or_else(|| {
            let all = zero_closed.iter().fold(space.full_set(), |acc, a| acc.intersection(*a));
            let images = zero_closed.iter().fold(s.full_set(), |acc, a| acc.intersection(r.image_of(*a)));
            (r.image_of(all) != images).then(|| "ξ does not commute with the intersection of all 0-closed sets".into())
        })
    };

    let props = space.properties();

    let injective = r.is_injective();
    let embedding = injective && continuity.is_none() && open_onto_image.is_none();
    let mut c7 = clause(
        7,
        "injective iff embedding iff T0",
        (!(injective == embedding && embedding == props.t0))
            .then(|| format!("injective={injective} embedding={embedding} T0={}", props.t0)),
    );
    c7.sides = Some(vec![injective, embedding, props.t0]);

    let surjective = r.is_surjective();
    let quotient = surjective
        && continuity.is_none()
        && Subset::all(s.len()).all(|b| s.is_open(b) == space.is_open(r.preimage_of(b)));
    let mut c8 = clause(
        8,
        "surjective iff quotient map iff quasisober",
        (!(surjective == quotient && quotient == props.quasisober))
            .then(|| format!("surjective={surjective} quotient={quotient} quasisober={}", props.quasisober)),
    );
    c8.sides = Some(vec![surjective, quotient, props.quasisober]);

    let clauses = vec![
        clause(0, "continuous", continuity),
        clause(1, "open onto its image", open_onto_image),
        clause(2, "closed onto its image", closed_onto_image),
        clause(3, "sigma is a lattice isomorphism of opens", sigma_iso),
        clause(4, "tau is a lattice isomorphism of closed sets", tau_iso),
        clause(5, "0-closed sets are xi-saturated", saturated_preimage),
        clause(6, "xi preserves intersections of 0-closed sets", meets),
        c7,
        c8,
    ];
    let s_sober = s.properties().sober;
    let pass = s_sober && clauses.iter().all(|c| c.pass);
    Ok(SobrificationReport { pass, s_sober, clauses })
}

/// Checks that `image[i]` defines an order isomorphism from `domain` onto
/// `codomain` preserving binary meets and joins.
fn lattice_iso_violation(
    domain: &[Subset],
    image: &[Subset],
    codomain: &[Subset],
    show: &dyn Fn(Subset) -> String,
) -> Option<String> {
    if domain.len() != image.len() || domain.len() != codomain.len() {
        return Some(format!("sizes differ: {} elements vs {} targets", domain.len(), codomain.len()));
    }
    let mut hit = vec![false; codomain.len()];
    for (a, ia) in domain.iter().zip(image) {
        match codomain.iter().position(|c| c == ia) {
            Some(k) if !hit[k] => hit[k] = true,
            _ => return Some(format!("image of {} is not a new element of the target lattice", show(*a))),
        }
    }
    let find = |s: Subset| domain.iter().position(|d| *d == s);
    for (i, &a) in domain.iter().enumerate() {
        for (j, &b) in domain.iter().enumerate() {
            if a.is_subset(b) != image[i].is_subset(image[j]) {
                return Some(format!("order not preserved between {} and {}", show(a), show(b)));
            }
            let meet = find(a.intersection(b)).map(|k| image[k]);
            let join = find(a.union(b)).map(|k| image[k]);
            if meet != Some(image[i].intersection(image[j])) || join != Some(image[i].union(image[j])) {
                return Some(format!("meet or join not preserved for {} and {}", show(a), show(b)));
            }
        }
    }
    None
}
