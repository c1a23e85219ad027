//! Run configuration: JSON schema 1 (see `docs/config.md`).

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use tvasym::arith::parse_rat;
use tvasym::arith::DEFAULT_BUDGET;
use tvasym::curves::{CountOptions, CurveModel, PlaneTerm};
use tvasym::{builtin_group, BigRat, Family, GroupSpec, PointCounts, TVData, TvGroup};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_TRUNC: u32 = 6;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub schema: u32,
    #[serde(default)]
    pub curves: Vec<RawCurve>,
    #[serde(default)]
    pub groups: Vec<RawGroup>,
    pub tv: Option<RawTv>,
    pub trunc: Option<u32>,
    pub budget: Option<u64>,
    pub family: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCurve {
    pub name: Option<String>,
    pub q: u64,
    pub model: RawModel,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawModel {
    ProjectiveLine,
    Hyperelliptic {
        #[serde(default)]
        h: Vec<u64>,
        f: Vec<u64>,
    },
    Plane {
        degree: u32,
        terms: Vec<RawTerm>,
    },
    Counts {
        genus: u32,
        counts: Vec<String>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    pub coeff: u64,
    pub exps: [u32; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroup {
    pub family: Option<String>,
    pub n: Option<u32>,
    pub name: Option<String>,
    pub dim: Option<u32>,
    pub degrees: Option<Vec<u32>>,
    pub tamagawa: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTv {
    pub q: u64,
    #[serde(default)]
    pub beta: BTreeMap<String, String>,
    #[serde(default)]
    pub groups: Vec<RawTvGroup>,
    pub d_bound: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTvGroup {
    pub deg: u32,
    pub gamma: String,
    #[serde(rename = "L")]
    pub local: String,
}

#[derive(Clone, Debug)]
pub enum CurveSource {
    Model(CurveModel),
    Counts(PointCounts),
}

#[derive(Clone, Debug)]
pub struct CurveEntry {
    pub name: String,
    pub q: u64,
    pub genus: u32,
    pub source: CurveSource,
}

impl CurveEntry {
    pub fn describe(&self) -> String {
        match &self.source {
            CurveSource::Model(m) => m.to_string(),
            CurveSource::Counts(c) => format!("point counts N_1..N_{} over F_{}", c.counts.len(), c.q),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TvConfig {
    pub data: TVData,
    pub d_bound: u32,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub curves: Vec<CurveEntry>,
    pub groups: Vec<GroupSpec>,
    pub tv: Option<TvConfig>,
    pub trunc: u32,
    pub budget: u64,
    /// Indices into `curves`, when the config names a family explicitly.
    pub family: Option<Vec<usize>>,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub trunc: Option<u32>,
    pub budget: Option<u64>,
}

impl Config {
    pub fn load(path: &Path, overrides: Overrides) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text, overrides).with_context(|| format!("in config {}", path.display()))
    }

    pub fn parse(text: &str, overrides: Overrides) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).context("malformed config JSON")?;
        if raw.schema != SCHEMA {
            bail!("schema: unsupported version {} (expected {SCHEMA})", raw.schema);
        }
        let trunc = overrides.trunc.or(raw.trunc).unwrap_or(DEFAULT_TRUNC);
        if trunc == 0 {
            bail!("trunc: must be at least 1");
        }
        let budget = overrides.budget.or(raw.budget).unwrap_or(DEFAULT_BUDGET);
        let opts = CountOptions { budget, ..CountOptions::default() };

        let mut seen = HashSet::new();
        let mut curves = Vec::with_capacity(raw.curves.len());
        for (i, c) in raw.curves.into_iter().enumerate() {
            let name = c.name.clone().unwrap_or_else(|| format!("curve{i}"));
            let label = format!("curves[{i}] ({name:?})");
            if !seen.insert(name.clone()) {
                bail!("{label}: duplicate curve name");
            }
            if budget < c.q {
                bail!("{label}: budget {budget} is smaller than q = {}", c.q);
            }
            curves.push(resolve_curve(name, c, &opts).with_context(|| label)?);
        }

        let groups = raw
            .groups
            .into_iter()
            .enumerate()
            .map(|(i, g)| resolve_group(g).with_context(|| format!("groups[{i}]")))
            .collect::<Result<Vec<_>>>()?;

        let tv = raw.tv.map(resolve_tv).transpose().context("tv")?;

        let family = raw
            .family
            .map(|names| {
                names
                    .iter()
                    .enumerate()
                    .map(|(i, n)| {
                        curves
                            .iter()
                            .position(|c| &c.name == n)
                            .ok_or_else(|| anyhow!("family[{i}]: no curve named {n:?}"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;

        Ok(Config { curves, groups, tv, trunc, budget, family })
    }

    pub fn count_options(&self) -> CountOptions {
        CountOptions { budget: self.budget, ..CountOptions::default() }
    }
}

fn resolve_curve(name: String, c: RawCurve, opts: &CountOptions) -> Result<CurveEntry> {
    let q = c.q;
    let source = match c.model {
        RawModel::ProjectiveLine => CurveSource::Model(CurveModel::projective_line(q)?),
        RawModel::Hyperelliptic { h, f } => CurveSource::Model(CurveModel::hyperelliptic(q, h, f, opts)?),
        RawModel::Plane { degree, terms } => {
            let terms = terms.into_iter().map(|t| PlaneTerm { coeff: t.coeff, exps: t.exps }).collect();
            CurveSource::Model(CurveModel::plane(q, degree, terms, opts)?)
        }
        RawModel::Counts { genus, counts } => {
            let counts = counts
                .iter()
                .enumerate()
                .map(|(m, s)| s.trim().parse().map_err(|_| anyhow!("counts[{m}]: {s:?} is not an integer")))
                .collect::<Result<Vec<_>>>()?;
            if (counts.len() as u32) < genus {
                bail!("need at least genus = {genus} point counts, got {}", counts.len());
            }
            CurveSource::Counts(PointCounts { q, g: genus, counts })
        }
    };
    let genus = match &source {
        CurveSource::Model(m) => m.genus(),
        CurveSource::Counts(c) => c.g,
    };
    Ok(CurveEntry { name, q, genus, source })
}

fn resolve_group(g: RawGroup) -> Result<GroupSpec> {
    let tamagawa = g.tamagawa.as_deref().map(parse_rat).transpose().context("tamagawa")?;
    match (&g.family, &g.dim) {
        (Some(fam), None) => {
            if g.degrees.is_some() {
                bail!("give either family and n, or name, dim and degrees");
            }
            let n = g.n.unwrap_or(1);
            let mut spec = builtin_group(Family::parse(fam)?, n)?;
            if let Some(t) = tamagawa {
                if t <= BigRat::from_integer(0.into()) {
                    bail!("tamagawa: must be positive");
                }
                spec.tamagawa = t;
            }
            if let Some(name) = g.name {
                spec.name = name;
            }
            Ok(spec)
        }
        (None, Some(dim)) => {
            let dim = *dim;
            let name = g.name.ok_or_else(|| anyhow!("name: required for a user-defined group"))?;
            let degrees = g.degrees.ok_or_else(|| anyhow!("degrees: required for a user-defined group"))?;
            let tamagawa = tamagawa.unwrap_or_else(|| BigRat::from_integer(1.into()));
            Ok(GroupSpec::new(&name, dim, degrees, tamagawa)?)
        }
        _ => bail!("give either family and n, or name, dim and degrees"),
    }
}

fn resolve_tv(raw: RawTv) -> Result<TvConfig> {
    let mut beta = BTreeMap::new();
    for (k, v) in &raw.beta {
        let m: u32 = k.parse().map_err(|_| anyhow!("beta: key {k:?} is not a positive integer"))?;
        beta.insert(m, parse_rat(v).with_context(|| format!("beta[{k:?}]"))?);
    }
    let groups = raw
        .groups
        .iter()
        .enumerate()
        .map(|(i, g)| -> Result<TvGroup> {
            Ok(TvGroup {
                deg: g.deg,
                gamma: parse_rat(&g.gamma).with_context(|| format!("groups[{i}].gamma"))?,
                local: parse_rat(&g.local).with_context(|| format!("groups[{i}].L"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let d_bound = raw.d_bound.unwrap_or(1);
    if d_bound == 0 {
        bail!("d_bound: must be at least 1");
    }
    Ok(TvConfig { data: TVData::new(raw.q, beta, groups)?, d_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Config> {
        Config::parse(s, Overrides::default())
    }

    #[test]
    fn minimal() {
        let c =
            parse(r#"{"schema": 1, "curves": [{"q": 2, "model": {"type": "projective_line"}}]}"#).unwrap();
        assert_eq!(c.curves[0].name, "curve0");
        assert_eq!(c.trunc, DEFAULT_TRUNC);
        assert!(c.groups.is_empty() && c.tv.is_none());
    }

    #[test]
    fn errors_name_the_element() {
        let e = parse(r#"{"schema": 2}"#).unwrap_err();
        assert!(format!("{e:#}").contains("schema"));
        let e = parse(
            r#"{"schema": 1, "curves": [{"q": 2, "model": {"type": "projective_line"}},
                {"name": "node", "q": 3, "model": {"type": "hyperelliptic", "f": [0, 0, 1, 1]}}]}"#,
        )
        .unwrap_err();
        let msg = format!("{e:#}");
        assert!(msg.contains("curves[1]") && msg.contains("node") && msg.contains("singular"), "{msg}");
        let e = parse(r#"{"schema": 1, "groups": [{"family": "E8", "n": 1}]}"#).unwrap_err();
        assert!(format!("{e:#}").contains("groups[0]"));
        let e = parse(r#"{"schema": 1, "tv": {"q": 6}}"#).unwrap_err();
        assert!(format!("{e:#}").contains("tv"));
        let e = parse(r#"{"schema": 1, "family": ["x"]}"#).unwrap_err();
        assert!(format!("{e:#}").contains("family[0]"));
        assert!(parse(r#"{"schema": 1, "trunc": 0}"#).is_err());
        assert!(parse(r#"{"schema": 1, "bogus": 0}"#).is_err());
    }

    #[test]
    fn overrides_win() {
        let c = Config::parse(
            r#"{"schema": 1, "trunc": 3, "budget": 100}"#,
            Overrides { trunc: Some(9), budget: None },
        )
        .unwrap();
        assert_eq!((c.trunc, c.budget), (9, 100));
    }

    #[test]
    fn groups_and_tv() {
        let c = parse(
            r#"{"schema": 1,
                "groups": [{"family": "GL", "n": 2}, {"family": "Gm"},
                           {"name": "G2", "dim": 14, "degrees": [6, 2]}],
                "tv": {"q": 4, "beta": {"1": "1"}, "groups": [{"deg": 1, "gamma": "1/2", "L": "3/4"}]}}"#,
        )
        .unwrap();
        assert_eq!(c.groups[0].gl_rank, Some(2));
        assert_eq!(c.groups[1].name, "Gm");
        assert_eq!(c.groups[2].degrees, vec![2, 6]);
        let tv = c.tv.unwrap();
        assert!(tv.data.is_feasible());
        assert_eq!(tv.data.groups().len(), 1);
    }
}
