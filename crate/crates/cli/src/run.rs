//! Executes a validated configuration.

use std::collections::BTreeMap;
use std::time::Instant;

use rswan_core::extensions::{
    conductor_change, curve_ratio_experiment, thmb_canned, thmb_ratio_experiment, ExtensionMap,
    RatioReport, Status,
};
use rswan_core::logdiff::{duality_matrix, matrix_rank, minimal_b};
use rswan_core::reciprocity::{check_exp_congruences, verify_rsw_characterization};
use rswan_core::rsw::{is_closed, rsw_char_p, rsw_decompose, rsw_leading_term, sw_from_rsw};
use rswan_core::witt::{swan_conductor, Character};
use rswan_core::FieldTower;
use serde_json::{json, Value};

use crate::config::{ConfigError, RunConfig, Task, TowerSpec};
use crate::report::{Record, Report, TaskStatus};

/// Options given on the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub precision: Option<i64>,
}

/// Resolved towers, characters and extensions.
struct Context {
    towers: BTreeMap<String, FieldTower>,
    characters: BTreeMap<String, Character>,
    extensions: BTreeMap<String, ExtensionMap>,
}

const MAIN: &str = "";

fn build_tower(name: &str, spec: &TowerSpec, precision: Option<i64>) -> Result<FieldTower, ConfigError> {
    FieldTower::from_names(spec.p, spec.k, spec.s, spec.variables.clone(), precision.unwrap_or(spec.precision))
        .map_err(|source| ConfigError::Invalid {
            context: if name.is_empty() { "tower".into() } else { format!("tower `{name}`") },
            source,
        })
}

impl Context {
    fn tower(&self, name: Option<&str>) -> Result<&FieldTower, ConfigError> {
        let key = name.unwrap_or(MAIN);
        self.towers.get(key).ok_or_else(|| ConfigError::Undefined {
            kind: "tower",
            name: key.to_string(),
        })
    }

    fn character(&self, name: &str) -> Result<&Character, ConfigError> {
        self.characters.get(name).ok_or_else(|| ConfigError::Undefined {
            kind: "character",
            name: name.to_string(),
        })
    }

    fn extension(&self, name: &str) -> Result<&ExtensionMap, ConfigError> {
        self.extensions.get(name).ok_or_else(|| ConfigError::Undefined {
            kind: "extension",
            name: name.to_string(),
        })
    }

    fn build(cfg: &RunConfig, precision: Option<i64>) -> Result<Self, ConfigError> {
        let mut towers = BTreeMap::new();
        towers.insert(MAIN.to_string(), build_tower(MAIN, &cfg.tower, precision)?);
        for (name, spec) in &cfg.towers {
            towers.insert(name.clone(), build_tower(name, spec, precision)?);
        }
        let mut ctx = Context {
            towers,
            characters: BTreeMap::new(),
            extensions: BTreeMap::new(),
        };
        for (name, spec) in &cfg.characters {
            let tower = ctx.tower(spec.tower())?;
            let comps: Vec<&str> = spec.components().iter().map(String::as_str).collect();
            let chi = Character::parse(tower, &comps).map_err(|source| ConfigError::Invalid {
                context: format!("character `{name}`"),
                source,
            })?;
            ctx.characters.insert(name.clone(), chi);
        }
        for (name, spec) in &cfg.extensions {
            let source = ctx.tower(spec.source.as_deref())?;
            let target = ctx.tower(Some(&spec.target))?;
            let invalid = |source| ConfigError::Invalid {
                context: format!("extension `{name}`"),
                source,
            };
            for var in spec.images.keys() {
                source.var_index(var).map_err(invalid)?;
            }
            let mut images = Vec::new();
            for var in source.variables() {
                let text = spec.images.get(var).ok_or_else(|| ConfigError::Undefined {
                    kind: "image of variable",
                    name: var.clone(),
                })?;
                images.push(target.parse(text).map_err(invalid)?);
            }
            let phi = ExtensionMap::new(source, target, images).map_err(invalid)?;
            ctx.extensions.insert(name.clone(), phi);
        }
        for task in &cfg.tasks {
            ctx.validate(task)?;
        }
        Ok(ctx)
    }

    fn validate(&self, task: &Task) -> Result<(), ConfigError> {
        match task {
            Task::Swan { character } | Task::Rsw { character } | Task::Reciprocity { character, .. } => {
                self.character(character)?;
            }
            Task::Duality { tower, .. } => {
                self.tower(tower.as_deref())?;
            }
            Task::ConductorChange { character, extension } => {
                self.character(character)?;
                self.extension(extension)?;
            }
            Task::ThmB {
                character,
                extensions,
                ..
            } => {
                self.character(character)?;
                for e in extensions {
                    self.extension(e)?;
                }
            }
            Task::ThmC { tower, f, .. } => {
                let t = self.tower(tower.as_deref())?;
                t.parse(f).map_err(|source| ConfigError::Invalid {
                    context: "thmC datum".into(),
                    source,
                })?;
            }
            Task::ExpCongruences { .. } => {}
        }
        Ok(())
    }
}

type Outcome = rswan_core::Result<(TaskStatus, Value)>;

fn ratio_values(rep: &RatioReport) -> Value {
    let samples: Vec<Value> = rep
        .samples
        .iter()
        .map(|s| {
            json!({
                "param": s.param,
                "e": s.e,
                "sw": s.sw,
                "ratio": s.ratio.to_string(),
                "expected": s.expected.map(|x| x.to_string()),
            })
        })
        .collect();
    json!({
        "sw": rep.sw,
        "samples": samples,
        "max_ratio": rep.max_ratio.map(|x| x.to_string()),
        "monotone": rep.monotone(),
    })
}

fn status(s: Status) -> TaskStatus {
    match s {
        Status::Pass => TaskStatus::Pass,
        Status::Fail => TaskStatus::Fail,
        Status::NotApplicable => TaskStatus::NotApplicable,
    }
}

fn execute(ctx: &Context, task: &Task, seed: u64) -> Outcome {
    match task {
        Task::Swan { character } => {
            let chi = &ctx.characters[character];
            Ok((
                TaskStatus::Pass,
                json!({ "sw": swan_conductor(chi)?, "reduced": chi.vector().render() }),
            ))
        }
        Task::Rsw { character } => {
            let chi = &ctx.characters[character];
            let tower = chi.tower();
            let sw = swan_conductor(chi)?;
            if sw == 0 {
                return Ok((TaskStatus::NotApplicable, json!({ "sw": 0 })));
            }
            let v = rsw_char_p(chi)?;
            let recovered = sw_from_rsw(&v)?;
            let closed = is_closed(&v)?;
            let mut values = json!({
                "sw": sw,
                "n": v.n(),
                "m": v.m(),
                "rsw": v.value().render(tower),
                "leading": rsw_leading_term(&v)?.render(tower),
                "sw_from_rsw": recovered,
                "closed": closed,
            });
            if tower.depth() >= 2 {
                let dec = rsw_decompose(&v)?;
                let residual: BTreeMap<String, String> =
                    dec.residual.iter().map(|(k, a)| (k.clone(), tower.render(a))).collect();
                values["decomposition"] = json!({
                    "residual": residual,
                    "c": tower.render(&dec.c),
                    "c_is_unit": dec.c_is_unit,
                });
            }
            Ok((TaskStatus::from(closed && recovered == sw), values))
        }
        Task::Duality { tower, n, m, degree } => {
            let tower = ctx.tower(tower.as_deref()).expect("validated");
            let depth = tower.depth();
            let j = degree.unwrap_or(1);
            if j > depth {
                return Err(rswan_core::Error::DegreeMismatch(format!("degree {j} exceeds {depth}")));
            }
            let b = minimal_b(tower.p(), n - m);
            let (mat, rows, cols) = duality_matrix(tower, *n, *m, b, depth - j, j)?;
            let rank = matrix_rank(&mat, &tower.field().with_depth(depth - 1))?;
            let full = rows.len() == cols.len() && rank == rows.len();
            Ok((
                TaskStatus::from(full),
                json!({ "b": b, "rows": rows.len(), "cols": cols.len(), "rank": rank }),
            ))
        }
        Task::Reciprocity { character, samples } => {
            let chi = &ctx.characters[character];
            let rep = verify_rsw_characterization(chi, *samples, seed)?;
            let passed = rep.samples.iter().filter(|s| s.pass).count();
            let failures: Vec<Value> = rep
                .samples
                .iter()
                .filter(|s| !s.pass)
                .take(5)
                .map(|s| json!({ "alpha": s.alpha, "lhs": s.lhs, "rhs": s.rhs, "oracle": s.oracle }))
                .collect();
            Ok((
                TaskStatus::from(rep.all_pass()),
                json!({
                    "n": rep.n,
                    "m": rep.m,
                    "b": rep.b,
                    "orientation": rep.orientation,
                    "samples": rep.samples.len(),
                    "passed": passed,
                    "oracle_checked": rep.samples.iter().filter(|s| s.oracle.is_some()).count(),
                    "failures": failures,
                }),
            ))
        }
        Task::ConductorChange { character, extension } => {
            let rep = conductor_change(&ctx.characters[character], &ctx.extensions[extension])?;
            Ok((
                status(rep.status),
                json!({
                    "sw": rep.sw_k,
                    "e": rep.e,
                    "delta_tor": rep.delta,
                    "hypothesis": rep.hypothesis,
                    "predicted": rep.predicted,
                    "direct": rep.direct,
                }),
            ))
        }
        Task::ThmB {
            character,
            family,
            extensions,
        } => {
            let chi = &ctx.characters[character];
            let rep = if family.is_empty() {
                let maps: Vec<ExtensionMap> = extensions.iter().map(|e| ctx.extensions[e].clone()).collect();
                thmb_ratio_experiment(chi, &maps)?
            } else {
                thmb_canned(chi, family)?
            };
            Ok((status(rep.status), ratio_values(&rep)))
        }
        Task::ThmC { tower, f, x0, e } => {
            let tower = ctx.tower(tower.as_deref()).expect("validated");
            let f = tower.parse(f)?;
            let rep = curve_ratio_experiment(tower, &f, *x0, e)?;
            Ok((status(rep.status), ratio_values(&rep)))
        }
        Task::ExpCongruences { p, degree } => {
            if !rswan_core::algebra::tower::SUPPORTED_PRIMES.contains(p) {
                return Err(rswan_core::Error::Unsupported(format!("p = {p}")));
            }
            let rep = check_exp_congruences(*p, degree.unwrap_or(*p as usize + 2));
            let word = |b: bool| TaskStatus::from(b).to_string();
            Ok((
                TaskStatus::from(rep.all_pass()),
                json!({
                    "additive": word(rep.additive),
                    "product": word(rep.product),
                    "logarithmic": word(rep.logarithmic),
                }),
            ))
        }
    }
}

fn inputs(cfg: &RunConfig, task: &Task) -> Value {
    let mut v = serde_json::to_value(task).expect("tasks serialize");
    let echo = |name: &String| cfg.characters.get(name).map(|c| c.components().to_vec());
    match task {
        Task::Swan { character }
        | Task::Rsw { character }
        | Task::Reciprocity { character, .. }
        | Task::ConductorChange { character, .. }
        | Task::ThmB { character, .. } => {
            v["components"] = json!(echo(character));
        }
        _ => {}
    }
    if let Task::ConductorChange { extension, .. } = task {
        v["images"] = json!(cfg.extensions.get(extension).map(|e| &e.images));
    }
    v
}

fn precision_of(ctx: &Context, task: &Task) -> i64 {
    let tower = match task {
        Task::Swan { character }
        | Task::Rsw { character }
        | Task::Reciprocity { character, .. }
        | Task::ConductorChange { character, .. }
        | Task::ThmB { character, .. } => Some(ctx.characters[character].tower()),
        Task::Duality { tower, .. } | Task::ThmC { tower, .. } => ctx.tower(tower.as_deref()).ok(),
        Task::ExpCongruences { .. } => None,
    };
    tower.map_or(0, |t| t.precision())
}

/// Validates `cfg` and runs its tasks in order.
pub fn run(cfg: &RunConfig, overrides: Overrides) -> Result<Report, ConfigError> {
    let started = Instant::now();
    let ctx = Context::build(cfg, overrides.precision)?;
    let seed = overrides.seed.or(cfg.seed).unwrap_or(0);
    let mut records = Vec::with_capacity(cfg.tasks.len());
    let mut times = Vec::with_capacity(cfg.tasks.len());
    for (index, task) in cfg.tasks.iter().enumerate() {
        let t0 = Instant::now();
        let task_seed = seed.wrapping_add(index as u64);
        let outcome = execute(&ctx, task, task_seed);
        let (status, values, error) = match outcome {
            Ok((s, v)) => (s, v, None),
            Err(e) => (TaskStatus::Error, Value::Null, Some(e.to_string())),
        };
        records.push(Record {
            index,
            kind: task.kind().to_string(),
            inputs: inputs(cfg, task),
            status,
            values,
            precision: precision_of(&ctx, task),
            error,
        });
        times.push(t0.elapsed().as_secs_f64() * 1e3);
    }
    Ok(Report::new(seed, records, times, started.elapsed().as_secs_f64() * 1e3))
}
