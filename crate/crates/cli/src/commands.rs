use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use lightsum_core::serde_util;
use lightsum_core::{
    cable_lengths, compile, detect, epsilon_false_positive_demo, feasibility, normalize,
    parse_instance_document, perturb_and_classify_with_offset, propagate, slow_light_rescale,
    DetectionReport, FeasibilityReport, Instance, OracleChoice, OracleConfig, OracleResult, PhysicalParams,
    Quanta,
};
use num_rational::BigRational;
use serde::Serialize;

use crate::{Cli, Command, Failure, GlobalOpts, EXIT_DISAGREEMENT};

#[derive(Debug, Serialize)]
struct RunReport {
    instance_echo: Instance,
    simulator: DetectionReport,
    oracle: OracleResult,
    agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    feasibility: Option<FeasibilityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<BTreeMap<&'static str, f64>>,
}

#[derive(Debug, Serialize)]
struct StageRow {
    stage: usize,
    a_i: u64,
    skip_quanta: Quanta,
    take_quanta: Quanta,
    #[serde(serialize_with = "serde_util::rational")]
    skip_m: BigRational,
    #[serde(serialize_with = "serde_util::rational")]
    take_m: BigRational,
}

#[derive(Debug, Serialize)]
struct LayoutListing {
    instance_echo: Instance,
    offset_k_quanta: u64,
    node_count: usize,
    #[serde(serialize_with = "serde_util::rational")]
    quantum_length_m: BigRational,
    stages: Vec<StageRow>,
}

/// Phase timer; records nothing unless `--timing` was given.
struct Timings {
    enabled: bool,
    phases: BTreeMap<&'static str, f64>,
}

impl Timings {
    fn new(enabled: bool) -> Self {
        Timings {
            enabled,
            phases: BTreeMap::new(),
        }
    }

    fn time<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.phases.insert(phase, start.elapsed().as_secs_f64());
        }
        out
    }

    fn into_report(self) -> Option<BTreeMap<&'static str, f64>> {
        self.enabled.then_some(self.phases)
    }
}

fn load(path: &Path, global: &GlobalOpts) -> Result<(Instance, PhysicalParams), Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_instance_document(&text)?;
    let mut params = doc.params;
    if let Some(k) = global.k {
        params.offset_k_quanta = k;
    }
    if let Some(q) = &global.quantum_s {
        params.delay_quantum_s = q.clone();
    }
    if let Some(v) = &global.velocity_factor {
        params.velocity_factor = v.clone();
    }
    params.validate()?;
    if let Some(f) = &global.slow_light {
        params = slow_light_rescale(&params, f)?;
    }
    let instance = normalize(&doc.raw)?;
    Ok((instance, params))
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| Failure::Io(e.to_string()))
}

pub fn run(cli: &Cli) -> Result<u8, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Solve {
            instance,
            max_cable_m,
        } => solve(instance, max_cable_m.as_ref(), g),
        Command::Compile { instance } => compile_listing(instance, g),
        Command::Analyze {
            instance,
            max_cable_m,
        } => {
            let (inst, params) = load(instance, g)?;
            let report = feasibility(&inst, max_cable_m, &params)?;
            if g.verbose {
                eprintln!("quantum length   {} m", report.quantum_length_m);
                eprintln!("max encodable    {}", report.max_encodable_value);
                eprintln!("max detectable n {}", report.max_detectable_n);
            }
            emit(&report)?;
            Ok(0)
        }
        Command::DemoEpsilon { instance, epsilon } => {
            let (inst, params) = load(instance, g)?;
            let demo = epsilon_false_positive_demo(&inst, *epsilon, &params)?;
            if g.verbose {
                eprintln!(
                    "epsilon device: {}  offset device: {}  {}: {}",
                    demo.epsilon_verdict, demo.offset_verdict, demo.oracle_solver, demo.oracle_verdict
                );
            }
            emit(&demo)?;
            Ok(if demo.offset_agrees_with_oracle {
                0
            } else {
                EXIT_DISAGREEMENT
            })
        }
        Command::Perturb {
            instance,
            max_error_m,
            offset_m,
            trials,
        } => {
            let (inst, params) = load(instance, g)?;
            let layout = compile(&inst, &params)?;
            let report = perturb_and_classify_with_offset(
                &layout,
                &inst,
                &params,
                max_error_m,
                offset_m,
                *trials,
                g.seed,
            )?;
            if g.verbose {
                eprintln!(
                    "{} of {} trials misclassified ({} false positive, {} false negative)",
                    report.misclassified, report.trials, report.false_positives, report.false_negatives
                );
            }
            emit(&report)?;
            Ok(0)
        }
    }
}

fn solve(path: &Path, max_cable_m: Option<&BigRational>, g: &GlobalOpts) -> Result<u8, Failure> {
    let mut timings = Timings::new(g.timing);
    let (inst, params) = timings.time("load", || load(path, g))?;
    let layout = timings.time("compile", || compile(&inst, &params))?;
    let profile = timings.time("propagate", || propagate(&layout));
    let simulator = timings.time("detect", || detect(&profile, &inst, &params))?;

    if let Some(dump) = &g.dump_profile {
        let file = fs::File::create(dump)
            .map_err(|e| Failure::Io(format!("cannot create {}: {e}", dump.display())))?;
        profile
            .write_dump(std::io::BufWriter::new(file))
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", dump.display())))?;
    }

    let config = OracleConfig::default();
    let choice = match g.oracle {
        OracleChoice::Auto => config.pick(&inst),
        other => other,
    };
    let oracle = timings.time("oracle", || {
        config.solve_with(choice, &inst, choice == OracleChoice::Dp)
    })?;
    let feasibility = max_cable_m.map(|m| feasibility(&inst, m, &params)).transpose()?;
    let agreement = simulator.verdict == oracle.verdict;

    if g.verbose {
        eprintln!(
            "n = {}, B = {}, k = {}",
            inst.len(),
            inst.target(),
            params.offset_k_quanta
        );
        eprintln!("distinct arrival moments: {}", profile.len());
        eprintln!(
            "moment {}: {} ray(s) -> {}",
            simulator.checked_moment, simulator.ray_count_at_moment, simulator.verdict
        );
        eprintln!("{} oracle: {}", oracle.solver_name, oracle.verdict);
    }

    let code = if !agreement {
        EXIT_DISAGREEMENT
    } else if simulator.verdict.is_yes() {
        0
    } else {
        1
    };
    emit(&RunReport {
        instance_echo: inst,
        simulator,
        oracle,
        agreement,
        feasibility,
        timing: timings.into_report(),
    })?;
    Ok(code)
}

fn compile_listing(path: &Path, g: &GlobalOpts) -> Result<u8, Failure> {
    let (inst, params) = load(path, g)?;
    let layout = compile(&inst, &params)?;
    let lengths = cable_lengths(&layout, &params);
    let stages: Vec<StageRow> = layout
        .stages()
        .iter()
        .zip(lengths.chunks(2))
        .enumerate()
        .map(|(i, (s, m))| StageRow {
            stage: i + 1,
            a_i: s.value,
            skip_quanta: s.skip_delay,
            take_quanta: s.take_delay,
            skip_m: m[0].clone(),
            take_m: m[1].clone(),
        })
        .collect();

    if g.verbose {
        eprintln!(
            "{:>5} {:>12} {:>12} {:>12} {:>14} {:>14}",
            "stage", "a_i", "skip_quanta", "take_quanta", "skip_m", "take_m"
        );
        for r in &stages {
            eprintln!(
                "{:>5} {:>12} {:>12} {:>12} {:>14} {:>14}",
                r.stage,
                r.a_i,
                r.skip_quanta,
                r.take_quanta,
                decimal_text(&r.skip_m),
                decimal_text(&r.take_m)
            );
        }
    }

    emit(&LayoutListing {
        instance_echo: inst,
        offset_k_quanta: layout.offset_k(),
        node_count: layout.node_count(),
        quantum_length_m: params.quantum_length_m(),
        stages,
    })?;
    Ok(0)
}

fn decimal_text(r: &BigRational) -> String {
    lightsum_core::decimal::rational_to_decimal(r).map_or_else(|| r.to_string(), |d| d.to_string())
}
