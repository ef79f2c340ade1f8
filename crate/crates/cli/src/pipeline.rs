//! Cached computations shared by the subcommands.

use std::collections::BTreeMap;

use anyhow::{bail, Context as _, Result};
use log::info;
use serde::Serialize;

use crate::cache::{KRecord, WorkspaceCache};
use polycell::automata::{Fsa, Languages, DEFAULT_STATE_CAP};
use polycell::cells::{
    CellLabel, ConjecturalPartition, DihedralData, OneSidedCellSpec, OneSidedCells,
};
use polycell::kl::KlTable;
use polycell::{CoxeterGroup, ElementBall, GenSet};

/// Ball radius on which the fellow-traveller constant is validated.
pub const K_VALIDATION_RADIUS: usize = 12;
pub const MAX_K: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KArg {
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for KArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            Ok(KArg::Auto)
        } else {
            s.parse()
                .map(KArg::Fixed)
                .map_err(|_| format!("expected a number or \"auto\", got {s:?}"))
        }
    }
}

/// Result of a verification run that found disagreements.
#[derive(Debug, thiserror::Error)]
#[error("verification failed: {0}")]
pub struct Disagreement(pub String);

pub struct Context {
    pub group: CoxeterGroup,
    pub cache: WorkspaceCache,
    pub cap: Option<usize>,
    pub k_arg: KArg,
}

pub fn ball_name(radius: usize) -> String {
    format!("ball.r{radius}.tsv")
}

pub fn kl_name(radius: usize) -> String {
    format!("kl.r{radius}.tsv")
}

pub fn pattern_name(i: usize) -> String {
    format!("fsa/pattern.{i}.fsa")
}

pub fn label_name(l: CellLabel) -> String {
    format!("fsa/{}.fsa", l.name())
}

fn pair_tag(group: &CoxeterGroup, t: GenSet) -> String {
    let names = group.presentation().generator_names();
    let v: Vec<&str> = t.iter().map(|s| names[s].as_str()).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join("-")
    }
}

pub fn descent_name(group: &CoxeterGroup, t: GenSet) -> String {
    format!("fsa/descent.{}.fsa", pair_tag(group, t))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

impl Context {
    pub fn automaton_cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_STATE_CAP)
    }

    pub fn ball(&mut self, radius: usize) -> Result<ElementBall> {
        let rel = ball_name(radius);
        if let Some(text) = self.cache.load(&rel, Some(radius), None, &[])? {
            return ElementBall::from_tsv(&self.group, radius, &text)
                .map_err(|e| self.cache.corrupt(&rel, e).into());
        }
        info!("computing ball of radius {radius}");
        let ball = ElementBall::new(&self.group, radius, self.cap)?;
        self.cache
            .store(&rel, Some(radius), None, &[], &ball.to_tsv())?;
        Ok(ball)
    }

    pub fn kl(&mut self, radius: usize) -> Result<KlTable> {
        let ball = self.ball(radius)?;
        let rel = kl_name(radius);
        let deps = [ball_name(radius)];
        let deps: Vec<&str> = deps.iter().map(String::as_str).collect();
        if let Some(text) = self.cache.load(&rel, Some(radius), None, &deps)? {
            return KlTable::from_tsv(&ball, &text).map_err(|e| self.cache.corrupt(&rel, e).into());
        }
        info!("computing KL polynomials on the ball of radius {radius}");
        let table = KlTable::new(&ball, self.cap)?;
        self.cache
            .store(&rel, Some(radius), None, &deps, &table.to_tsv())?;
        Ok(table)
    }

    /// Languages with a validated fellow-traveller constant.
    pub fn languages(&mut self) -> Result<(Languages, usize)> {
        let mut langs = Languages::new(&self.group).with_cap(self.automaton_cap());
        let k = match self.k_arg {
            KArg::Auto => match self.cache.meta().k_auto.clone() {
                Some(r) => r.k,
                None => {
                    info!("choosing k on the ball of radius {K_VALIDATION_RADIUS}");
                    let ball = self.ball(K_VALIDATION_RADIUS)?;
                    let data = DihedralData::new(self.group.presentation())?;
                    let patterns: Vec<_> =
                        data.entries().iter().map(|e| e.longest.clone()).collect();
                    let k = langs.choose_k(&ball, &patterns, MAX_K)?;
                    self.cache.set_k_auto(KRecord {
                        k,
                        validation_radius: K_VALIDATION_RADIUS,
                    })?;
                    k
                }
            },
            KArg::Fixed(k) => {
                let ok = match self.cache.meta().k_checked.get(&k) {
                    Some(&ok) => ok,
                    None => {
                        let ball = self.ball(K_VALIDATION_RADIUS)?;
                        let ok = langs.validate_k(k, &ball)?;
                        self.cache.set_k_checked(k, ok)?;
                        ok
                    }
                };
                if !ok {
                    bail!("k = {k} fails fellow-traveller validation on the ball of radius {K_VALIDATION_RADIUS}");
                }
                k
            }
        };
        langs.set_validated_k(k);
        Ok((langs, k))
    }

    pub fn partition(&mut self) -> Result<(Languages, ConjecturalPartition)> {
        let (langs, k) = self.languages()?;
        let data = DihedralData::new(self.group.presentation())?;
        let pattern_names: Vec<String> = (0..data.entries().len()).map(pattern_name).collect();
        let label_names: Vec<(CellLabel, String)> = data
            .labels()
            .into_iter()
            .map(|l| (l, label_name(l)))
            .collect();
        let mut patterns = Vec::new();
        let mut labels = BTreeMap::new();
        let mut complete = true;
        for rel in &pattern_names {
            match self.cache.load(rel, None, Some(k), &[])? {
                Some(t) => {
                    patterns.push(Fsa::from_text(&t).map_err(|e| self.cache.corrupt(rel, e))?)
                }
                None => complete = false,
            }
        }
        for (l, rel) in &label_names {
            match self.cache.load(rel, None, Some(k), &[])? {
                Some(t) => {
                    labels.insert(
                        *l,
                        Fsa::from_text(&t).map_err(|e| self.cache.corrupt(rel, e))?,
                    );
                }
                None => complete = false,
            }
        }
        if complete {
            let part = ConjecturalPartition::from_fsas(&langs, k, patterns, labels)?;
            return Ok((langs, part));
        }
        info!("building partition automata with k = {k}");
        let part = ConjecturalPartition::new(&langs, k)?;
        for (i, rel) in pattern_names.iter().enumerate() {
            self.cache
                .store(rel, None, Some(k), &[], &part.pattern_fsa(i).to_text())?;
        }
        for (l, rel) in &label_names {
            self.cache.store(
                rel,
                None,
                Some(k),
                &[],
                &part.label_fsa(*l).unwrap().to_text(),
            )?;
        }
        Ok((langs, part))
    }

    /// Names of the stored partition automata, as cache dependencies.
    pub fn partition_deps(&self) -> Vec<String> {
        let data = DihedralData::new(self.group.presentation()).unwrap();
        let mut v: Vec<String> = (0..data.entries().len()).map(pattern_name).collect();
        v.extend(data.labels().into_iter().map(label_name));
        v
    }

    pub fn descent_fsas(&mut self, langs: &Languages) -> Result<Vec<(GenSet, Fsa)>> {
        let mut out = Vec::new();
        for t in polycell::verify::descent_types(langs) {
            let rel = descent_name(&self.group, t);
            let fsa = match self.cache.load(&rel, None, None, &[])? {
                Some(text) => Fsa::from_text(&text).map_err(|e| self.cache.corrupt(&rel, e))?,
                None => {
                    let f = langs.descent_class_fsa(t)?;
                    self.cache.store(&rel, None, None, &[], &f.to_text())?;
                    f
                }
            };
            out.push((t, fsa));
        }
        Ok(out)
    }

    fn onesided_prefix(level: usize, radius: usize) -> String {
        format!("fsa/onesided.l{level}.r{radius}")
    }

    /// One-sided cells at `level` with translators from the ball of `radius`.
    pub fn onesided(
        &mut self,
        level: usize,
        radius: usize,
    ) -> Result<(OneSidedCells, OneSidedSummary)> {
        let (langs, part) = self.partition()?;
        let k = part.k();
        let index_rel = format!("{}.index.json", Self::onesided_prefix(level, radius));
        let deps_owned = self.partition_deps();
        let deps: Vec<&str> = deps_owned.iter().map(String::as_str).collect();
        if let Some(text) = self.cache.load(&index_rel, Some(radius), Some(k), &deps)? {
            let index: OneSidedIndex =
                serde_json::from_str(&text).map_err(|e| self.cache.corrupt(&index_rel, e))?;
            let load = |rel: &str| -> Result<Fsa> {
                let text = self
                    .cache
                    .load(rel, Some(radius), Some(k), &deps)?
                    .with_context(|| format!("missing {rel}"))?;
                Ok(Fsa::from_text(&text).map_err(|e| self.cache.corrupt(rel, e))?)
            };
            let mut regions = Vec::new();
            for (t, rel) in &index.regions {
                regions.push((GenSet::parse(self.group.presentation(), t)?, load(rel)?));
            }
            let mut specs = Vec::new();
            for s in &index.specs {
                specs.push(OneSidedCellSpec {
                    level,
                    pair: GenSet::parse(self.group.presentation(), &s.pair)?,
                    translator: self.group.element(&s.translator)?,
                    fsa: load(&s.fsa)?,
                });
            }
            return Ok((
                OneSidedCells::from_specs(level, radius, k, regions, specs),
                index.summary,
            ));
        }
        let ball = self.ball(radius)?;
        info!("computing one-sided cells at level {level}, radius {radius}");
        let os = OneSidedCells::new(&langs, &part, &ball, level, radius, k)?;
        let prefix = Self::onesided_prefix(level, radius);
        let p = self.group.presentation().clone();
        let mut index = OneSidedIndex::default();
        for (t, f) in &os.regions {
            let rel = format!("{prefix}.U.{}.fsa", pair_tag(&self.group, *t));
            self.cache
                .store(&rel, Some(radius), Some(k), &deps, &f.to_text())?;
            index.regions.push((t.format(&p), rel));
        }
        for (j, s) in os.specs().enumerate() {
            let rel = format!("{prefix}.{j}.fsa");
            self.cache
                .store(&rel, Some(radius), Some(k), &deps, &s.fsa.to_text())?;
            index.specs.push(SpecRecord {
                pair: s.pair.format(&p),
                translator: self.group.format(&s.translator.word),
                fsa: rel,
                states: s.fsa.num_states(),
            });
        }
        index.summary = OneSidedSummary {
            discovered: os
                .discovered
                .iter()
                .map(|s| self.group.format(&s.translator.word))
                .collect(),
            cross_pair_containments: os.cross_pair_containments,
        };
        self.cache
            .store(&index_rel, Some(radius), Some(k), &deps, &to_json(&index))?;
        Ok((os, index.summary))
    }
}

#[derive(Debug, Clone, Default, Serialize, serde::Deserialize)]
pub struct SpecRecord {
    pub pair: String,
    pub translator: String,
    pub fsa: String,
    pub states: usize,
}

#[derive(Debug, Clone, Default, Serialize, serde::Deserialize)]
struct OneSidedIndex {
    regions: Vec<(String, String)>,
    specs: Vec<SpecRecord>,
    summary: OneSidedSummary,
}

#[derive(Debug, Clone, Default, Serialize, serde::Deserialize)]
pub struct OneSidedSummary {
    pub discovered: Vec<String>,
    pub cross_pair_containments: usize,
}
