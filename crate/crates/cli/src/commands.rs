//! The `zeta`, `mass` and `asymptote` subcommands.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use num::Zero;
use rayon::prelude::*;
use serde::Serialize;
use tvasym::arith::rational::{log_q_rat, to_f64};
use tvasym::curves::CountOptions;
use tvasym::mass::{hn_ss_mass, mass_bun, zagier_ss_mass};
use tvasym::{
    class_number, convergence_report, count_series_within_budget, degree_spectrum, dominance_check,
    quasi_residue, rhs_general, rhs_group, special_value, tv_bound, zeta_from_series, Strategy, ZetaData,
};

use crate::config::{Config, CurveEntry, CurveSource, Overrides, SCHEMA};
use crate::report::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Zeta,
    Mass,
    Asymptote,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunArgs {
    pub command: Command,
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub trunc: Option<u32>,
    pub budget: Option<u64>,
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
}

pub fn run(args: &RunArgs) -> Result<()> {
    let cfg = Config::load(&args.config, Overrides { trunc: args.trunc, budget: args.budget })?;
    if args.format == Format::Csv && args.command == Command::Zeta && args.out.is_none() {
        bail!("--format csv for zeta writes a JSON sidecar next to the CSV and needs --out");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .context("starting worker pool")?;
    let (body, sidecar) = pool.install(|| -> Result<(String, Option<String>)> {
        Ok(match (args.command, args.format) {
            (Command::Zeta, Format::Json) => (to_json(&zeta_report(&cfg)?)?, None),
            (Command::Zeta, Format::Csv) => {
                let r = zeta_report(&cfg)?;
                (zeta_csv(&r)?, Some(to_json(&r)?))
            }
            (Command::Mass, Format::Json) => (to_json(&mass_report(&cfg)?)?, None),
            (Command::Mass, Format::Csv) => (mass_csv(&mass_report(&cfg)?)?, None),
            (Command::Asymptote, Format::Json) => (to_json(&asymptote_report(&cfg)?)?, None),
            (Command::Asymptote, Format::Csv) => (asymptote_csv(&asymptote_report(&cfg)?)?, None),
        })
    })?;
    match &args.out {
        Some(path) => {
            write_file(path, &body)?;
            if let Some(s) = sidecar {
                write_file(&sidecar_path(path), &s)?;
            }
        }
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

/// `zeta.csv` -> `zeta.sidecar.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("sidecar.json")
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn to_json<T: Serialize>(r: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(r)? + "\n")
}

fn label(i: usize, c: &CurveEntry) -> String {
    format!("curves[{i}] ({:?})", c.name)
}

/// Zeta function of a configured curve, enumerating at least `N_1..N_g` and
/// at most `N_1..N_want` within the budget. Returns the number of enumerated counts.
fn curve_zeta(c: &CurveEntry, want: u32, opts: &CountOptions) -> Result<(ZetaData, u32)> {
    let counts = match &c.source {
        CurveSource::Model(m) => count_series_within_budget(m, m.genus(), want, opts)?,
        CurveSource::Counts(pc) => pc.clone(),
    };
    let z = zeta_from_series(&counts)?;
    Ok((z, counts.counts.len() as u32))
}

fn zetas(cfg: &Config, want: u32) -> Result<Vec<(ZetaData, u32)>> {
    let opts = cfg.count_options();
    cfg.curves
        .par_iter()
        .enumerate()
        .map(|(i, c)| curve_zeta(c, want, &opts).with_context(|| label(i, c)))
        .collect()
}

pub fn zeta_report(cfg: &Config) -> Result<ZetaReport> {
    if cfg.curves.is_empty() {
        bail!("curves: the zeta command needs at least one curve");
    }
    let zs = zetas(cfg, cfg.trunc)?;
    let mut curves = Vec::with_capacity(zs.len());
    for (i, (c, (z, enumerated))) in cfg.curves.iter().zip(zs).enumerate() {
        let series = z.point_counts(cfg.trunc);
        let spectrum = degree_spectrum(&series).with_context(|| label(i, c))?;
        let zeta_values = (2..=4u32)
            .map(|s| Ok((s.to_string(), fmt_rat(&special_value(&z, s)?))))
            .collect::<Result<BTreeMap<_, _>>>()?;
        curves.push(CurveZeta {
            name: c.name.clone(),
            q: c.q,
            genus: c.genus,
            model: c.describe(),
            enumerated_up_to: enumerated.min(cfg.trunc),
            counts: series.counts.iter().map(|n| n.to_string()).collect(),
            degree_counts: spectrum.b.iter().map(|b| b.to_string()).collect(),
            numerator: z.coefficients().iter().map(|a| a.to_string()).collect(),
            class_number: class_number(&z).to_string(),
            quasi_residue: fmt_rat(&quasi_residue(&z)),
            zeta_values,
        });
    }
    Ok(ZetaReport { schema: SCHEMA, trunc: cfg.trunc, curves })
}

pub fn mass_report(cfg: &Config) -> Result<MassReport> {
    if cfg.curves.is_empty() {
        bail!("curves: the mass command needs at least one curve");
    }
    if cfg.groups.is_empty() {
        bail!("groups: the mass command needs at least one group");
    }
    let zs = zetas(cfg, 0)?;
    let pairs: Vec<(usize, usize)> =
        (0..cfg.curves.len()).flat_map(|i| (0..cfg.groups.len()).map(move |j| (i, j))).collect();
    let entries = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<MassEntry> {
            let (c, spec, z) = (&cfg.curves[i], &cfg.groups[j], &zs[i].0);
            let ctx = || format!("{} with groups[{j}] ({:?})", label(i, c), spec.name);
            let mass = mass_bun(spec, z).value;
            let mut semistable = Vec::new();
            if let Some(n) = spec.gl_rank {
                for d in 0..n as i64 {
                    let a = zagier_ss_mass(n, d, z).with_context(ctx)?.value;
                    let b = hn_ss_mass(n, d, z).with_context(ctx)?.value;
                    semistable.push(SemistableEntry {
                        d,
                        log_q: (!a.is_zero()).then(|| fmt_f64(log_q_rat(&a, z.q()))),
                        agree: a == b,
                        zagier: fmt_rat(&a),
                        hn: fmt_rat(&b),
                    });
                }
            }
            Ok(MassEntry {
                curve: c.name.clone(),
                group: spec.name.clone(),
                q: c.q,
                genus: c.genus,
                log_q_mass: fmt_f64(log_q_rat(&mass, z.q())),
                mass: fmt_rat(&mass),
                semistable,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MassReport { schema: SCHEMA, entries })
}

pub fn asymptote_report(cfg: &Config) -> Result<AsymptoteReport> {
    if cfg.groups.is_empty() {
        bail!("groups: the asymptote command needs at least one group");
    }
    let members: Vec<usize> = match &cfg.family {
        Some(idx) => {
            for (k, &i) in idx.iter().enumerate() {
                if cfg.curves[i].genus == 0 {
                    bail!("family[{k}] ({:?}): genus 0 members are not allowed", cfg.curves[i].name);
                }
            }
            idx.clone()
        }
        None => (0..cfg.curves.len()).filter(|&i| cfg.curves[i].genus >= 1).collect(),
    };
    if cfg.tv.is_none() && members.is_empty() {
        bail!("tv: the asymptote command needs tv data or a family of curves of positive genus");
    }

    let tv = match &cfg.tv {
        None => None,
        Some(t) => {
            let groups = cfg
                .groups
                .iter()
                .enumerate()
                .map(|(j, spec)| -> Result<GroupRhs> {
                    let dominance = match spec.gl_rank {
                        Some(n) if n <= 6 => Some(
                            dominance_check(&t.data, n, cfg.trunc).with_context(|| format!("groups[{j}]"))?,
                        ),
                        _ => None,
                    };
                    Ok(GroupRhs {
                        group: spec.name.clone(),
                        dim: spec.dim,
                        rhs: (&rhs_group(&t.data, spec, cfg.trunc)).into(),
                        dominance: dominance.as_ref().map(Into::into),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let general = if t.data.groups().is_empty() {
                None
            } else {
                let g = rhs_general(t.data.groups(), t.data.q(), t.d_bound).context("tv.groups")?;
                Some(GeneralSection {
                    d_bound: t.d_bound,
                    value: fmt_f64(g.value),
                    within_envelope: g.within_envelope,
                })
            };
            let bound = tv_bound(&t.data);
            Some(TvSection {
                q: t.data.q(),
                beta: beta_strings(t.data.beta_map()),
                tv_bound_f64: fmt_f64(to_f64(&bound)),
                tv_bound: fmt_rat(&bound),
                feasible: t.data.is_feasible(),
                groups,
                general,
            })
        }
    };

    let mut families = Vec::new();
    if !members.is_empty() {
        let opts = cfg.count_options();
        let mut family: Vec<(usize, ZetaData)> = members
            .par_iter()
            .map(|&i| {
                Ok((i, curve_zeta(&cfg.curves[i], 0, &opts).with_context(|| label(i, &cfg.curves[i]))?.0))
            })
            .collect::<Result<Vec<_>>>()?;
        family.sort_by_key(|(_, z)| z.genus());
        let names: Vec<String> = family.iter().map(|(i, _)| cfg.curves[*i].name.clone()).collect();
        let zs: Vec<ZetaData> = family.into_iter().map(|(_, z)| z).collect();
        for (j, spec) in cfg.groups.iter().enumerate() {
            let r = convergence_report(&zs, spec, cfg.trunc, Strategy::Parallel)
                .with_context(|| format!("family with groups[{j}] ({:?})", spec.name))?;
            families.push(FamilyReport {
                group: spec.name.clone(),
                members: names.clone(),
                beta: beta_strings(r.tv.beta_map()),
                tv_bound: fmt_rat(&r.tv_bound),
                feasible: r.tv.is_feasible(),
                rhs: (&r.rhs).into(),
                rows: r
                    .rows
                    .iter()
                    .map(|row| FamilyRow {
                        index: row.index,
                        curve: names[row.index].clone(),
                        genus: row.genus,
                        mass: fmt_rat(&row.mass),
                        lhs: fmt_f64(row.lhs),
                        gap: fmt_f64(row.gap),
                        ss_gap: row.ss_gap.map(fmt_f64),
                        beta_quotients: row.beta_quotients.iter().map(fmt_rat).collect(),
                    })
                    .collect(),
                dominance: r.dominance.as_ref().map(Into::into),
                note: "finite-genus terms against the right-hand side from the last member's \
                       degree spectrum; convergence of the limit is not certified"
                    .into(),
            });
        }
    }
    Ok(AsymptoteReport { schema: SCHEMA, trunc: cfg.trunc, tv, families })
}

fn csv_string<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Serialize)]
struct ZetaRow<'a> {
    curve: &'a str,
    m: usize,
    #[serde(rename = "N_m")]
    n_m: &'a str,
    #[serde(rename = "B_m")]
    b_m: &'a str,
}

pub fn zeta_csv(r: &ZetaReport) -> Result<String> {
    csv_string(r.curves.iter().flat_map(|c| {
        c.counts.iter().zip(&c.degree_counts).enumerate().map(|(k, (n, b))| ZetaRow {
            curve: &c.name,
            m: k + 1,
            n_m: n,
            b_m: b,
        })
    }))
}

#[derive(Serialize)]
struct MassRow<'a> {
    curve: &'a str,
    group: &'a str,
    kind: &'a str,
    d: Option<i64>,
    value: &'a str,
    log_q: Option<&'a str>,
    agree: Option<bool>,
}

pub fn mass_csv(r: &MassReport) -> Result<String> {
    let mut rows = Vec::new();
    for e in &r.entries {
        rows.push(MassRow {
            curve: &e.curve,
            group: &e.group,
            kind: "total",
            d: None,
            value: &e.mass,
            log_q: Some(&e.log_q_mass),
            agree: None,
        });
        for s in &e.semistable {
            rows.push(MassRow {
                curve: &e.curve,
                group: &e.group,
                kind: "semistable",
                d: Some(s.d),
                value: &s.zagier,
                log_q: s.log_q.as_deref(),
                agree: Some(s.agree),
            });
        }
    }
    csv_string(rows)
}

#[derive(Serialize)]
struct AsymptoteRow<'a> {
    section: &'a str,
    group: &'a str,
    curve: Option<&'a str>,
    genus: Option<u32>,
    lhs: Option<&'a str>,
    rhs: &'a str,
    tail: &'a str,
    gap: Option<&'a str>,
    ss_gap: Option<&'a str>,
}

pub fn asymptote_csv(r: &AsymptoteReport) -> Result<String> {
    let mut rows = Vec::new();
    if let Some(tv) = &r.tv {
        for g in &tv.groups {
            rows.push(AsymptoteRow {
                section: "tv",
                group: &g.group,
                curve: None,
                genus: None,
                lhs: None,
                rhs: &g.rhs.value,
                tail: &g.rhs.tail,
                gap: None,
                ss_gap: None,
            });
        }
    }
    for f in &r.families {
        for row in &f.rows {
            rows.push(AsymptoteRow {
                section: "family",
                group: &f.group,
                curve: Some(&row.curve),
                genus: Some(row.genus),
                lhs: Some(&row.lhs),
                rhs: &f.rhs.value,
                tail: &f.rhs.tail,
                gap: Some(&row.gap),
                ss_gap: row.ss_gap.as_deref(),
            });
        }
    }
    csv_string(rows)
}
