//! Fidelity triples and the admissible region.
//!
//! In square-root coordinates x = (sqrt F12, sqrt F13, sqrt F23) a triple of
//! pairwise fidelities is realizable by three states if and only if
//!
//!   slack(x) = 1 + 2 x1 x2 x3 - x1^2 - x2^2 - x3^2 >= 0,
//!
//! equivalently the Bures angles arccos(x_i) satisfy the triangle
//! inequality. The region is the same for classical measures, for pure
//! states, and for density matrices; the witness constructors below realize
//! any admissible triple explicitly in both models.

use crate::error::{Error, Result};
use crate::fidelity::{fidelity_classical, fidelity_pure};
use crate::linalg::C64;
use crate::state::{ProbabilityMeasure, PureState};

/// Default classification tolerance on the slack.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// Pairwise fidelities (F12, F13, F23), each in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityTriple {
    f12: f64,
    f13: f64,
    f23: f64,
}

impl FidelityTriple {
    /// Accepts values in [0, 1]; excursions up to 1e-12 outside are clamped.
    pub fn new(f12: f64, f13: f64, f23: f64) -> Result<Self> {
        let clamp = |v: f64| -> Result<f64> {
            if !v.is_finite() || v < -1e-12 || v > 1.0 + 1e-12 {
                return Err(Error::OutOfRange { what: "fidelity" });
            }
            Ok(v.clamp(0.0, 1.0))
        };
        Ok(FidelityTriple { f12: clamp(f12)?, f13: clamp(f13)?, f23: clamp(f23)? })
    }

    pub fn f12(&self) -> f64 {
        self.f12
    }

    pub fn f13(&self) -> f64 {
        self.f13
    }

    pub fn f23(&self) -> f64 {
        self.f23
    }

    /// Square-root coordinates (x1, x2, x3).
    pub fn sqrts(&self) -> [f64; 3] {
        [self.f12.sqrt(), self.f13.sqrt(), self.f23.sqrt()]
    }
}

/// slack(x) in square-root coordinates.
pub fn sqrt_slack(x1: f64, x2: f64, x3: f64) -> f64 {
    1.0 + 2.0 * x1 * x2 * x3 - x1 * x1 - x2 * x2 - x3 * x3
}

/// Slack of a fidelity triple; nonnegative exactly on the admissible region.
pub fn triple_slack(f: &FidelityTriple) -> f64 {
    let [x1, x2, x3] = f.sqrts();
    sqrt_slack(x1, x2, x3)
}

/// Where a triple sits relative to the admissible region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleVerdict {
    Inside,
    BoundarySurface,
    ExtremeCorner,
    Outside,
}

impl TripleVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            TripleVerdict::Inside => "inside",
            TripleVerdict::BoundarySurface => "boundary",
            TripleVerdict::ExtremeCorner => "corner",
            TripleVerdict::Outside => "outside",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleClassification {
    pub verdict: TripleVerdict,
    pub slack: f64,
}

/// The five extreme points of the region in square-root coordinates.
pub const EXTREME_CORNERS: [[f64; 3]; 5] = [
    [0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0],
    [1.0, 1.0, 1.0],
];

/// Classifies a triple against the admissible region with the given slack
/// tolerance. Corner detection wins over the boundary label so the extreme
/// points (where the boundary surface is not smooth) are reported as such.
pub fn classify_triple(f: &FidelityTriple, tol: f64) -> TripleClassification {
    let [x1, x2, x3] = f.sqrts();
    let slack = sqrt_slack(x1, x2, x3);
    if slack < -tol {
        return TripleClassification { verdict: TripleVerdict::Outside, slack };
    }
    for corner in EXTREME_CORNERS {
        let dist = (x1 - corner[0])
            .abs()
            .max((x2 - corner[1]).abs())
            .max((x3 - corner[2]).abs());
        if dist <= tol {
            return TripleClassification { verdict: TripleVerdict::ExtremeCorner, slack };
        }
    }
    if slack.abs() <= tol {
        return TripleClassification { verdict: TripleVerdict::BoundarySurface, slack };
    }
    TripleClassification { verdict: TripleVerdict::Inside, slack }
}

/// Largest admissible x3 given x1 <= x2: the boundary section
/// x1 x2 + sqrt((1 - x1^2)(1 - x2^2)) = cos(arccos x2 - arccos x1).
pub fn boundary_x3(x1: f64, x2: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x1) || !(0.0..=1.0).contains(&x2) {
        return Err(Error::OutOfRange { what: "square-root fidelity" });
    }
    if x1 > x2 {
        return Err(Error::OrderViolation { what: "boundary section expects x1 <= x2" });
    }
    Ok((x1 * x2 + ((1.0 - x1 * x1) * (1.0 - x2 * x2)).sqrt()).min(1.0))
}

/// Witness realizing a fidelity triple with three probability measures.
#[derive(Debug, Clone)]
pub struct ClassicalWitness {
    pub measures: [ProbabilityMeasure; 3],
    pub achieved: FidelityTriple,
    pub space_size: usize,
    pub verdict: TripleVerdict,
}

/// Builds probability measures on at most three points whose pairwise
/// fidelities reproduce the triple.
///
/// The construction sorts the square-root values ascending into (y0, y1, y2)
/// and realizes them on the support {0, 1, 2}:
///
///   nu0 = (1, 0, 0)
///   nu1 = (y0^2, 1 - y0^2, 0)
///   nu2 = (y1^2, b^2, g^2),  b = (y2 - y0 y1) / sqrt(1 - y0^2)
///
/// so that A(nu0, nu1) = y0, A(nu0, nu2) = y1, A(nu1, nu2) = y2, and
/// g^2 = slack / (1 - y0^2) is nonnegative exactly on the admissible region.
/// Unused support points are dropped, so boundary triples need two points
/// and the all-ones corner needs one.
pub fn classical_witness(f: &FidelityTriple, tol: f64) -> Result<ClassicalWitness> {
    let cls = classify_triple(f, tol);
    if cls.verdict == TripleVerdict::Outside {
        return Err(Error::NotAdmissible { slack: cls.slack });
    }
    let x = f.sqrts();
    let mut y = x;
    y.sort_by(|a, b| a.partial_cmp(b).expect("fidelities are finite"));

    let nu: [Vec<f64>; 3] = if y[0] >= 1.0 {
        // every pair has fidelity 1, so one shared point mass suffices
        [vec![1.0], vec![1.0], vec![1.0]]
    } else {
        let root = (1.0 - y[0] * y[0]).sqrt();
        let beta = ((y[2] - y[0] * y[1]) / root).max(0.0);
        let mut gamma2 = 1.0 - y[1] * y[1] - beta * beta;
        if gamma2 < 0.0 {
            if gamma2 < -1e-9 {
                return Err(Error::NotAdmissible { slack: cls.slack });
            }
            gamma2 = 0.0;
        }
        let mut third = vec![y[1] * y[1], beta * beta, gamma2];
        let sum: f64 = third.iter().sum();
        for w in &mut third {
            *w /= sum;
        }
        [vec![1.0, 0.0, 0.0], vec![y[0] * y[0], 1.0 - y[0] * y[0], 0.0], third]
    };

    // Pair values are unlabeled after sorting. Matching is by complements:
    // the value not involving state a must equal the value not involving
    // nu_r, and the complements of (nu0, nu1, nu2) are (y2, y1, y0). So the
    // state with the r-th largest complement receives nu_r.
    let compl = [x[2], x[1], x[0]];
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| {
        compl[j].partial_cmp(&compl[i]).expect("fidelities are finite").then(i.cmp(&j))
    });
    let mut per_state: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (r, &state) in order.iter().enumerate() {
        per_state[state] = nu[r].clone();
    }

    let keep: Vec<usize> = (0..per_state[0].len())
        .filter(|&col| per_state.iter().any(|m| m[col] != 0.0))
        .collect();
    let measures: Vec<ProbabilityMeasure> = per_state
        .iter()
        .map(|m| ProbabilityMeasure::new(keep.iter().map(|&col| m[col]).collect()))
        .collect::<Result<_>>()?;
    let achieved = FidelityTriple::new(
        fidelity_classical(&measures[0], &measures[1])?,
        fidelity_classical(&measures[0], &measures[2])?,
        fidelity_classical(&measures[1], &measures[2])?,
    )?;
    let measures: [ProbabilityMeasure; 3] = measures.try_into().expect("three measures");
    Ok(ClassicalWitness { measures, achieved, space_size: keep.len(), verdict: cls.verdict })
}

/// Witness realizing a fidelity triple with three pure states in C^3.
#[derive(Debug, Clone)]
pub struct QuantumWitness {
    pub states: [PureState; 3],
    pub achieved: FidelityTriple,
    pub verdict: TripleVerdict,
}

/// Builds three pure states in C^3 with the given pairwise fidelities and
/// real nonnegative mutual overlaps:
///
///   phi1 = e1
///   phi2 = x1 e1 + sqrt(1 - x1^2) e2
///   phi3 = x2 e1 + b e2 + g e3,  b = (x3 - x1 x2) / sqrt(1 - x1^2)
///
/// with g^2 = slack / (1 - x1^2). No sorting is needed: b may come out
/// negative, which is still a valid amplitude. The degenerate case x1 = 1
/// forces phi2 = phi1 and therefore F13 = F23; conflicting inputs there are
/// rejected rather than averaged.
pub fn quantum_witness(f: &FidelityTriple, tol: f64) -> Result<QuantumWitness> {
    let cls = classify_triple(f, tol);
    if cls.verdict == TripleVerdict::Outside {
        return Err(Error::NotAdmissible { slack: cls.slack });
    }
    let [x1, x2, x3] = f.sqrts();
    let real3 = |a: f64, b: f64, c: f64| {
        PureState::normalized(vec![C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0)])
    };
    let phi1 = PureState::basis(3, 0).expect("dimension 3");
    let (phi2, phi3) = if x1 >= 1.0 {
        if (x2 - x3).abs() > 1e-12 {
            return Err(Error::DegenerateSpread);
        }
        (phi1.clone(), real3(x2, (1.0 - x2 * x2).max(0.0).sqrt(), 0.0))
    } else {
        let root = (1.0 - x1 * x1).sqrt();
        let beta = (x3 - x1 * x2) / root;
        let mut gamma2 = 1.0 - x2 * x2 - beta * beta;
        if gamma2 < 0.0 {
            if gamma2 < -1e-9 {
                return Err(Error::NotAdmissible { slack: cls.slack });
            }
            gamma2 = 0.0;
        }
        (real3(x1, root, 0.0), real3(x2, beta, gamma2.sqrt()))
    };
    let achieved = FidelityTriple::new(
        fidelity_pure(&phi1, &phi2)?,
        fidelity_pure(&phi1, &phi3)?,
        fidelity_pure(&phi2, &phi3)?,
    )?;
    Ok(QuantumWitness { states: [phi1, phi2, phi3], achieved, verdict: cls.verdict })
}

/// Supremum of |<f,h>|^2 + |<g,h>|^2 - 2a |<f,h>| |<g,h>| over unit vectors
/// h = lam (f + e^{i chi} g) weighting both states equally, in closed form:
/// (1 - a)(1 + t) with t = |<f,g>|. Requires 0 <= t <= a <= 1; for a below t
/// the unrestricted supremum separates from this family.
pub fn overlap_functional_bound(t: f64, a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&a) {
        return Err(Error::OutOfRange { what: "overlap parameter" });
    }
    if t > a {
        return Err(Error::OrderViolation { what: "penalty weight must dominate the overlap" });
    }
    Ok((1.0 - a) * (1.0 + t))
}

/// Numerically maximizes the same functional over the equal-weight family by
/// scanning the relative phase chi on a grid of the given resolution and
/// refining the best cell by golden-section search. Serves as an independent
/// check of `overlap_functional_bound`.
pub fn overlap_functional_search(
    f: &PureState,
    g: &PureState,
    a: f64,
    resolution: usize,
) -> Result<f64> {
    let overlap = f.inner(g)?;
    let t = overlap.norm();
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::OutOfRange { what: "penalty weight" });
    }
    if t > a + 1e-12 {
        return Err(Error::OrderViolation { what: "penalty weight must dominate the overlap" });
    }
    let steps = resolution.max(8);

    let eval = |chi: f64| -> Option<f64> {
        let phase = C64::from_polar(1.0, chi);
        let norm_sqr = 2.0 + 2.0 * (phase * overlap).re;
        if norm_sqr < 1e-12 {
            return None;
        }
        let lam = 1.0 / norm_sqr.sqrt();
        let h: Vec<C64> = f
            .amplitudes()
            .iter()
            .zip(g.amplitudes())
            .map(|(fa, ga)| (fa + phase * ga) * lam)
            .collect();
        let fh: C64 = f.amplitudes().iter().zip(&h).map(|(x, y)| x.conj() * y).sum();
        let gh: C64 = g.amplitudes().iter().zip(&h).map(|(x, y)| x.conj() * y).sum();
        let p = fh.norm();
        let q = gh.norm();
        Some(p * p + q * q - 2.0 * a * p * q)
    };

    let tau = 2.0 * std::f64::consts::PI;
    let mut best_chi = 0.0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..steps {
        let chi = tau * k as f64 / steps as f64;
        if let Some(v) = eval(chi) {
            if v > best {
                best = v;
                best_chi = chi;
            }
        }
    }
    if best == f64::NEG_INFINITY {
        return Err(Error::OptimizerFailed);
    }

    // golden-section refinement around the best grid cell
    let golden = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut lo = best_chi - tau / steps as f64;
    let mut hi = best_chi + tau / steps as f64;
    let score = |chi: f64| eval(chi).unwrap_or(f64::NEG_INFINITY);
    let mut c = hi - golden * (hi - lo);
    let mut d = lo + golden * (hi - lo);
    let mut fc = score(c);
    let mut fd = score(d);
    for _ in 0..80 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - golden * (hi - lo);
            fc = score(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + golden * (hi - lo);
            fd = score(d);
        }
    }
    Ok(best.max(fc).max(fd))
}
