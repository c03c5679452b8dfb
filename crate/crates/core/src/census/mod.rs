//! The classification engine: octuple validation, construction of each
//! covering group from its presentation, predicted versus computed type and
//! genus, symmetry and branch profiles, and the census sweep itself.

mod covering;
mod metacyclic;
mod octuple;

pub use covering::{
    branch_profile, build_covering, computed_smoothness, covering_presentation, gcd_criterion, k_is_cyclic,
    k_model, predicted_type_genus, symmetry_profile_congruence, symmetry_profile_group, u_word, v_word,
    BranchProfile, Covering, Prediction, SymmetryProfile,
};
pub use metacyclic::{
    invariant_collisions, metacyclic_group, metacyclic_presentation, nilpotency_audit, InvariantCollision,
    InvariantVector, MetacyclicParams, MetacyclicReport, NilpotencyReport,
};
pub use octuple::{
    lemma_num_check, valid_octuples, valid_octuples_for, validate_octuple, Condition, ConditionFailure,
    CoveringOctuple, Validity,
};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fpgroup::{GroupError, DEFAULT_MAX_COSETS};
use crate::hypermap::{walsh_fingerprint, AlgebraicHypermap, HypermapError, HypermapType};
use crate::intlattice::LatticeError;
use crate::library;
use crate::operations::{self, is_invariant, OpError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("octuple {octuple} is invalid: {}", failures.join("; "))]
    Invalid {
        octuple: CoveringOctuple,
        failures: Vec<String>,
    },
    #[error("classification bug at {octuple}: {detail}")]
    ClassificationBug { octuple: CoveringOctuple, detail: String },
    #[error("part {index} does not generate a normal subgroup")]
    NotNormal { index: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hypermap(#[from] HypermapError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Operation(#[from] OpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusConfig {
    pub max_cosets: usize,
    pub jobs: usize,
    /// Also decide the symmetry flags by applying operations to each group.
    pub group_profiles: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self {
            max_cosets: DEFAULT_MAX_COSETS,
            jobs: 1,
            group_profiles: true,
        }
    }
}

/// Everything computed for one octuple. Fields that depend on the built
/// group are `None` when construction failed, and `error` says why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub octuple: CoveringOctuple,
    pub group_order: usize,
    pub computed_type: Option<HypermapType>,
    pub computed_genus: Option<u64>,
    pub prediction: Option<Prediction>,
    pub congruence_profile: SymmetryProfile,
    pub group_profile: Option<SymmetryProfile>,
    pub branch: Option<BranchProfile>,
    /// smoothness of the covering onto the quaternion hypermap, from orders
    pub computed_smooth: Option<[bool; 3]>,
    pub k_invariant_factors: Vec<i64>,
    pub k_cyclic: Option<bool>,
    pub fingerprint: Option<[u64; 5]>,
    pub lemma_num: bool,
    pub error: Option<String>,
    pub consistent: bool,
}

impl CensusRecord {
    pub fn is_smooth(&self) -> bool {
        self.computed_smooth == Some([true; 3])
    }
}

/// Builds and cross-checks the covering for one valid octuple.
pub fn census_record(o: &CoveringOctuple, config: &CensusConfig, quaternion: &AlgebraicHypermap) -> CensusRecord {
    let congruence_profile = symmetry_profile_congruence(o);
    let mut rec = CensusRecord {
        octuple: *o,
        group_order: 0,
        computed_type: None,
        computed_genus: None,
        prediction: None,
        congruence_profile,
        group_profile: None,
        branch: None,
        computed_smooth: None,
        k_invariant_factors: k_model(o).invariant_factors().to_vec(),
        k_cyclic: None,
        fingerprint: None,
        lemma_num: lemma_num_check(o),
        error: None,
        consistent: false,
    };
    if let Err(e) = fill_record(&mut rec, config, quaternion) {
        rec.error = Some(e.to_string());
        return rec;
    }
    let pred = rec.prediction.expect("filled");
    let branch = rec.branch.expect("filled");
    rec.consistent = rec.computed_type == Some(pred.ty)
        && rec.computed_genus == Some(pred.genus)
        && rec.group_profile.is_none_or(|g| g.base() == congruence_profile.base())
        && rec.computed_smooth == Some([branch.smooth_v, branch.smooth_e, branch.smooth_f])
        && rec.k_cyclic == Some(gcd_criterion(o))
        && rec.lemma_num;
    rec
}

fn fill_record(rec: &mut CensusRecord, config: &CensusConfig, quaternion: &AlgebraicHypermap) -> Result<(), CensusError> {
    let o = rec.octuple;
    rec.prediction = Some(predicted_type_genus(&o)?);
    rec.branch = Some(branch_profile(&o)?);
    let c = build_covering(&o, config.max_cosets)?;
    rec.group_order = c.order();
    rec.computed_type = Some(c.hypermap.hypermap_type());
    rec.computed_genus = Some(c.hypermap.genus()?);
    rec.computed_smooth = Some(computed_smoothness(&c, quaternion)?);
    rec.k_cyclic = Some(k_is_cyclic(&c));
    rec.fingerprint = Some(walsh_fingerprint(&c.hypermap).summary());
    if config.group_profiles {
        rec.group_profile = Some(symmetry_profile_group(&c)?);
    }
    Ok(())
}

pub fn quaternion_hypermap() -> AlgebraicHypermap {
    AlgebraicHypermap::from_presentation(&library::quaternion(), DEFAULT_MAX_COSETS)
        .expect("the quaternion group enumerates")
}

/// Records for every valid octuple with `mnd <= max_mnd`, in lexicographic
/// order regardless of how many workers run.
pub fn enumerate_census(max_mnd: i64, config: &CensusConfig) -> Result<Vec<CensusRecord>, CensusError> {
    if max_mnd < 1 {
        return Err(CensusError::BadParameters("max_mnd must be at least 1".into()));
    }
    let octuples = valid_octuples(max_mnd);
    let quaternion = quaternion_hypermap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| CensusError::Pool(e.to_string()))?;
    Ok(pool.install(|| {
        octuples
            .par_iter()
            .map(|o| census_record(o, config, &quaternion))
            .collect()
    }))
}

/// Records whose covering is unbranched everywhere, trivial covering included.
pub fn smooth_covers(records: &[CensusRecord]) -> Vec<&CensusRecord> {
    records
        .iter()
        .filter(|r| r.is_smooth() && r.prediction.is_some_and(|p| (p.p, p.q, p.r) == (1, 1, 1)))
        .collect()
}

/// One census line with fixed field order; flags as 0/1.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub m: i64,
    pub n: i64,
    pub d: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub epsilon: i64,
    pub group_order: usize,
    #[serde(rename = "type")]
    pub ty: [u64; 3],
    pub genus: u64,
    pub predicted_type: [u64; 3],
    pub predicted_genus: u64,
    pub reflexible: u8,
    pub symmetric: u8,
    pub self_petrie: u8,
    pub triply_self_dual: u8,
    pub smooth_v: u8,
    pub smooth_e: u8,
    pub smooth_f: u8,
    pub k_invariant_factors: Vec<i64>,
    pub fingerprint: [u64; 5],
    pub consistent: u8,
}

pub const ROW_KEYS: [&str; 23] = [
    "m",
    "n",
    "d",
    "alpha",
    "beta",
    "gamma",
    "delta",
    "epsilon",
    "group_order",
    "type",
    "genus",
    "predicted_type",
    "predicted_genus",
    "reflexible",
    "symmetric",
    "self_petrie",
    "triply_self_dual",
    "smooth_v",
    "smooth_e",
    "smooth_f",
    "k_invariant_factors",
    "fingerprint",
    "consistent",
];

fn triple(t: Option<HypermapType>) -> [u64; 3] {
    t.map_or([0; 3], |t| [t.ox, t.oy, t.oxy])
}

impl From<&CensusRecord> for CensusRow {
    fn from(r: &CensusRecord) -> Self {
        let o = r.octuple;
        // group-decided flags when available, else the congruences
        let sym = r.group_profile.unwrap_or(r.congruence_profile);
        let smooth = r.computed_smooth.unwrap_or([false; 3]);
        CensusRow {
            m: o.m,
            n: o.n,
            d: o.d,
            alpha: o.alpha,
            beta: o.beta,
            gamma: o.gamma,
            delta: o.delta,
            epsilon: o.epsilon,
            group_order: r.group_order,
            ty: triple(r.computed_type),
            genus: r.computed_genus.unwrap_or(0),
            predicted_type: triple(r.prediction.map(|p| p.ty)),
            predicted_genus: r.prediction.map_or(0, |p| p.genus),
            reflexible: sym.reflexible.into(),
            symmetric: sym.symmetric.into(),
            self_petrie: sym.self_petrie.into(),
            triply_self_dual: sym.triply_self_dual.into(),
            smooth_v: smooth[0].into(),
            smooth_e: smooth[1].into(),
            smooth_f: smooth[2].into(),
            k_invariant_factors: r.k_invariant_factors.clone(),
            fingerprint: r.fingerprint.unwrap_or([0; 5]),
            consistent: r.consistent.into(),
        }
    }
}

pub fn to_jsonl(records: &[CensusRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(&CensusRow::from(r)).expect("plain integers serialize"));
        out.push('\n');
    }
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Tab-separated with a header line; list-valued fields are comma-joined.
pub fn to_tsv(records: &[CensusRecord]) -> String {
    let mut out = ROW_KEYS.join("\t");
    out.push('\n');
    for r in records {
        let w = CensusRow::from(r);
        let cells: Vec<String> = vec![
            w.m.to_string(),
            w.n.to_string(),
            w.d.to_string(),
            w.alpha.to_string(),
            w.beta.to_string(),
            w.gamma.to_string(),
            w.delta.to_string(),
            w.epsilon.to_string(),
            w.group_order.to_string(),
            join(&w.ty),
            w.genus.to_string(),
            join(&w.predicted_type),
            w.predicted_genus.to_string(),
            w.reflexible.to_string(),
            w.symmetric.to_string(),
            w.self_petrie.to_string(),
            w.triply_self_dual.to_string(),
            w.smooth_v.to_string(),
            w.smooth_e.to_string(),
            w.smooth_f.to_string(),
            join(&w.k_invariant_factors),
            join(&w.fingerprint),
            w.consistent.to_string(),
        ];
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

/// Largest `d` searched when checking the conditions for invariance under
/// duality and Petrie duality together.
pub const OMEGA1_MAX_D: i64 = 6;

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub covering: Covering,
    pub congruence_profile: SymmetryProfile,
    pub group_profile: SymmetryProfile,
}

#[derive(Debug, Clone)]
pub struct SpecialFamilies {
    pub m: i64,
    /// `(m, m, 1; 1, 1, 1, 1, 1)`, with `K = Z_m x Z_m`
    pub k1: FamilyMember,
    /// whether `x -> y^-1, y -> yx` extends to an automorphism for `k1`
    pub k1_varsigma_invariant: bool,
    /// `(m, m, 3; 1, 1, 1, 1, 1)`
    pub k2: FamilyMember,
    /// `Z_3 x Z_3m` in invariant-factor form, as stated for `k2`
    pub k2_stated_factors: Vec<i64>,
    /// octuples with `n = m`, `d <= OMEGA1_MAX_D` invariant under duality and
    /// Petrie duality, each with whether it meets the stated condition list
    pub omega1: Vec<(CoveringOctuple, bool)>,
}

impl SpecialFamilies {
    pub fn k2_matches_stated(&self) -> bool {
        self.k2.covering.k_model.invariant_factors() == self.k2_stated_factors.as_slice()
    }
}

fn member(o: CoveringOctuple, max_cosets: usize) -> Result<FamilyMember, CensusError> {
    let covering = build_covering(&o, max_cosets)?;
    Ok(FamilyMember {
        group_profile: symmetry_profile_group(&covering)?,
        congruence_profile: symmetry_profile_congruence(&o),
        covering,
    })
}

/// The conditions claimed for coverings that are both symmetric and
/// self-Petrie-dual, where necessarily `n = m`, `gamma = beta`, `delta = alpha`.
pub fn omega1_conditions(o: &CoveringOctuple) -> bool {
    let (md, m, d) = (o.md(), o.m, o.d);
    let c = |a: i64, b: i64, k: i64| (a - b).rem_euclid(k) == 0;
    let (a, b, e) = (o.alpha, o.beta, o.epsilon);
    o.n == m
        && c(o.gamma, b, md)
        && c(o.delta, a, md)
        && c(a * a, 1, md)
        && c(b * b, 1, md)
        && c((b - 1) * (e + 1), 0, md)
        && c(b, 1, m)
        && c(b, -1, d)
        && c(a, b, d)
        && c(e * e, 1, d)
}

fn invariant_factors_of(factors: &[i64]) -> Vec<i64> {
    let rows: Vec<Vec<i64>> = (0..factors.len())
        .map(|i| (0..factors.len()).map(|j| if i == j { factors[i] } else { 0 }).collect())
        .collect();
    crate::intlattice::FinAbGroup::from_relations(factors.len(), &rows)
        .expect("diagonal of positive entries")
        .invariant_factors()
        .to_vec()
}

pub fn special_families(m: i64, max_cosets: usize) -> Result<SpecialFamilies, CensusError> {
    if m < 1 {
        return Err(CensusError::BadParameters("m must be positive".into()));
    }
    let k1 = member(CoveringOctuple::new(m, m, 1, 1, 1, 1, 1, 1), max_cosets)?;
    let k1_varsigma_invariant = is_invariant(&k1.covering.hypermap, &operations::varsigma())?;
    let k2 = member(CoveringOctuple::new(m, m, 3, 1, 1, 1, 1, 1), max_cosets)?;
    let omega1 = (1..=OMEGA1_MAX_D)
        .flat_map(|d| valid_octuples_for(m, m, d))
        .filter(|o| symmetry_profile_congruence(o).omega1_invariant)
        .map(|o| (o, omega1_conditions(&o)))
        .collect();
    Ok(SpecialFamilies {
        m,
        k1,
        k1_varsigma_invariant,
        k2,
        k2_stated_factors: invariant_factors_of(&[3, 3 * m]),
        omega1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_census() {
        let cfg = CensusConfig::default();
        let one = enumerate_census(1, &cfg).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].consistent);
        assert_eq!(one[0].group_order, 8);
        let four = enumerate_census(4, &cfg).unwrap();
        assert!(four.iter().all(|r| r.consistent), "{:?}", four.iter().find(|r| !r.consistent));
        let smooth: Vec<String> = smooth_covers(&four).iter().map(|r| r.octuple.to_string()).collect();
        assert_eq!(
            smooth,
            ["(1,1,1;0,0,0,0,0)", "(1,1,2;1,1,1,1,1)", "(1,2,1;0,0,1,1,0)", "(2,1,1;1,1,0,0,0)", "(2,2,1;1,1,1,1,0)"]
        );
        assert!(enumerate_census(0, &cfg).is_err());
    }

    #[test]
    fn serialization_layout() {
        let recs = enumerate_census(1, &CensusConfig::default()).unwrap();
        let line = to_jsonl(&recs);
        assert_eq!(
            line,
            "{\"m\":1,\"n\":1,\"d\":1,\"alpha\":0,\"beta\":0,\"gamma\":0,\"delta\":0,\"epsilon\":0,\
             \"group_order\":8,\"type\":[4,4,4],\"genus\":2,\"predicted_type\":[4,4,4],\"predicted_genus\":2,\
             \"reflexible\":1,\"symmetric\":1,\"self_petrie\":1,\"triply_self_dual\":1,\
             \"smooth_v\":1,\"smooth_e\":1,\"smooth_f\":1,\"k_invariant_factors\":[],\
             \"fingerprint\":[2,2,4,2,2],\"consistent\":1}\n"
        );
        let value: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        let mut sorted_expected = ROW_KEYS.to_vec();
        sorted_expected.sort_unstable();
        let mut sorted_keys = keys.clone();
        sorted_keys.sort_unstable();
        assert_eq!(sorted_keys, sorted_expected);
        let tsv = to_tsv(&recs);
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0].split('\t').count(), 23);
        assert_eq!(lines[1].split('\t').nth(9), Some("4,4,4"));
    }

    #[test]
    fn families() {
        let f = special_families(2, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(f.k1.covering.order(), 32);
        assert!(f.k1.group_profile.mho_invariant);
        assert!(f.k1_varsigma_invariant);
        assert!(f.k2.group_profile.completely_self_dual);
        assert_eq!(f.k2.covering.k_model.invariant_factors(), &[2, 6]);
        assert!(!f.k2_matches_stated());
        assert!(f.omega1.iter().all(|(_, ok)| *ok));
        let f = special_families(1, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(f.k1.covering.order(), 8);
        assert_eq!(f.k2.covering.order(), 24);
        assert!(f.k2.congruence_profile.completely_self_dual);
        let f = special_families(3, DEFAULT_MAX_COSETS).unwrap();
        assert!(f.k2_matches_stated());
    }
}
