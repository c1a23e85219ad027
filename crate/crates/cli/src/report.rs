//! Serialized reports. Exact rationals are strings like `"8/3"`; binary64
//! values are strings with 17 significant digits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use tvasym::{BigRat, Dominance, RhsValue};

pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn fmt_rat(x: &BigRat) -> String {
    x.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub schema: u32,
    pub trunc: u32,
    pub curves: Vec<CurveZeta>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveZeta {
    pub name: String,
    pub q: u64,
    pub genus: u32,
    pub model: String,
    /// Counts up to this `m` were enumerated; later ones come from `P(T)`.
    pub enumerated_up_to: u32,
    /// `N_m` for `m = 1..=trunc`.
    pub counts: Vec<String>,
    /// `B_m` for `m = 1..=trunc`.
    pub degree_counts: Vec<String>,
    /// `a_0, ..., a_{2g}`.
    pub numerator: Vec<String>,
    pub class_number: String,
    pub quasi_residue: String,
    /// `zeta_X(s)` for `s = 2, 3, 4`.
    pub zeta_values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassReport {
    pub schema: u32,
    pub entries: Vec<MassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassEntry {
    pub curve: String,
    pub group: String,
    pub q: u64,
    pub genus: u32,
    pub mass: String,
    pub log_q_mass: String,
    pub semistable: Vec<SemistableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemistableEntry {
    pub d: i64,
    pub zagier: String,
    pub hn: String,
    pub agree: bool,
    /// `None` when the mass is zero.
    pub log_q: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoteReport {
    pub schema: u32,
    pub trunc: u32,
    pub tv: Option<TvSection>,
    pub families: Vec<FamilyReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TvSection {
    pub q: u64,
    pub beta: BTreeMap<String, String>,
    /// Upper end of the certified enclosure of `sum_m m beta_m / (q^{m/2} - 1)`.
    pub tv_bound: String,
    pub tv_bound_f64: String,
    pub feasible: bool,
    pub groups: Vec<GroupRhs>,
    pub general: Option<GeneralSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRhs {
    pub group: String,
    pub dim: u32,
    pub rhs: RhsOut,
    pub dominance: Option<DominanceOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhsOut {
    pub value: String,
    pub sum: String,
    pub tail: String,
}

impl From<&RhsValue> for RhsOut {
    fn from(r: &RhsValue) -> Self {
        RhsOut { value: fmt_f64(r.value), sum: fmt_f64(r.sum), tail: fmt_f64(r.tail) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceOut {
    pub n: u32,
    pub dominant: bool,
    pub rows: Vec<DominanceRowOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceRowOut {
    pub composition: Vec<u32>,
    pub exponent: String,
}

impl From<&Dominance> for DominanceOut {
    fn from(d: &Dominance) -> Self {
        DominanceOut {
            n: d.n,
            dominant: d.dominant,
            rows: d
                .rows
                .iter()
                .map(|r| DominanceRowOut {
                    composition: r.composition.clone(),
                    exponent: fmt_f64(r.exponent),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralSection {
    pub d_bound: u32,
    pub value: String,
    pub within_envelope: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub group: String,
    pub members: Vec<String>,
    pub beta: BTreeMap<String, String>,
    pub tv_bound: String,
    pub feasible: bool,
    pub rhs: RhsOut,
    pub rows: Vec<FamilyRow>,
    pub dominance: Option<DominanceOut>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub index: usize,
    pub curve: String,
    pub genus: u32,
    pub mass: String,
    pub lhs: String,
    pub gap: String,
    pub ss_gap: Option<String>,
    pub beta_quotients: Vec<String>,
}

pub fn beta_strings(beta: &BTreeMap<u32, BigRat>) -> BTreeMap<String, String> {
    beta.iter().map(|(m, b)| (m.to_string(), fmt_rat(b))).collect()
}
