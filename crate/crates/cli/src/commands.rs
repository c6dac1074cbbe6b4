use std::fmt::Write;
use std::path::Path;

use serde_json::{json, Value};
use spslab::decomposition::{self, TotallyClassical};
use spslab::format::{parse_instance, serialize_space, serialize_sps};
use spslab::oracle::{self, Instance, TheoremReport};
use spslab::{FiniteClosureSpace, Partition, SetFamily, StatePropertySystem, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
    Usage,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Failure => 1,
            Outcome::Usage => 2,
        }
    }
}

pub struct Output {
    pub outcome: Outcome,
    pub text: String,
    pub structured: Value,
}

type CmdResult = Result<Output, Output>;

impl Output {
    fn new(ok: bool, command: &str, text: String, result: Value) -> Self {
        Output {
            outcome: if ok {
                Outcome::Success
            } else {
                Outcome::Failure
            },
            text,
            structured: json!({ "command": command, "ok": ok, "result": result }),
        }
    }

    fn error(outcome: Outcome, command: &str, code: &str, message: String) -> Self {
        Output {
            outcome,
            text: format!("error ({code}): {message}\n"),
            structured: json!({
                "command": command,
                "ok": false,
                "error": { "code": code, "message": message },
            }),
        }
    }
}

fn lib_error(command: &str, e: spslab::Error) -> Output {
    Output::error(Outcome::Failure, command, "library", e.to_string())
}

fn load(command: &str, path: &Path) -> Result<Instance, Output> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Output::error(
            Outcome::Usage,
            command,
            "io",
            format!("{}: {e}", path.display()),
        )
    })?;
    parse_instance(&text).map_err(|e| {
        let mut out = Output::error(Outcome::Failure, command, e.code(), e.to_string());
        if let spslab::format::ParseError::Axiom(report) = &e {
            out.structured["error"]["violations"] = json!(report.violations);
        }
        out
    })
}

fn load_space(command: &str, path: &Path) -> Result<FiniteClosureSpace, Output> {
    Ok(load(command, path)?.to_space())
}

fn load_sps(command: &str, path: &Path) -> Result<StatePropertySystem, Output> {
    Ok(load(command, path)?.to_sps())
}

fn subset_labels(space: &FiniteClosureSpace, s: Subset) -> Value {
    json!(space.universe().labels_of(s))
}

fn family_output(
    command: &str,
    space: &FiniteClosureSpace,
    sets: &[Subset],
    heading: &str,
) -> Output {
    let mut text = format!("{heading}: {}\n", sets.len());
    for &s in sets {
        writeln!(text, "  {}", space.format_subset(s)).unwrap();
    }
    let result: Vec<Value> = sets.iter().map(|&s| subset_labels(space, s)).collect();
    Output::new(true, command, text, json!(result))
}

pub fn validate(path: &Path) -> CmdResult {
    let instance = load("validate", path)?;
    let (kind, detail) = match &instance {
        Instance::Space(s) => (
            "closure-space",
            format!("{} points, {} closed sets", s.len(), s.closed().len()),
        ),
        Instance::Sps(s) => (
            "sps",
            format!(
                "{} states, {} properties",
                s.state_count(),
                s.property_count()
            ),
        ),
    };
    Ok(Output::new(
        true,
        "validate",
        format!("valid {kind}: {detail}\n"),
        json!({ "kind": kind }),
    ))
}

fn document(command: &str, text: String) -> Output {
    let value: Value = serde_json::from_str(&text).expect("canonical text is json");
    Output::new(true, command, text, value)
}

pub fn to_closure(path: &Path) -> CmdResult {
    let space = load_space("to-closure", path)?;
    Ok(document("to-closure", serialize_space(&space)))
}

pub fn to_sps(path: &Path) -> CmdResult {
    let sps = load_sps("to-sps", path)?;
    Ok(document("to-sps", serialize_sps(&sps)))
}

fn partition_output(
    command: &str,
    space: &FiniteClosureSpace,
    p: &Partition,
    heading: &str,
) -> Output {
    family_output(command, space, p.blocks(), heading)
}

pub fn components(path: &Path) -> CmdResult {
    let space = load_space("components", path)?;
    Ok(partition_output(
        "components",
        &space,
        &space.components(),
        "components",
    ))
}

pub fn quasi_components(path: &Path) -> CmdResult {
    let space = load_space("quasi-components", path)?;
    let q = oracle::quasi_components(&space);
    Ok(partition_output(
        "quasi-components",
        &space,
        &q,
        "quasi-components",
    ))
}

pub fn clopens(path: &Path) -> CmdResult {
    let space = load_space("clopens", path)?;
    let c: SetFamily = space.clopen_sets();
    Ok(family_output("clopens", &space, c.members(), "clopen sets"))
}

fn yes_no(command: &str, answer: bool) -> Output {
    Output::new(true, command, format!("{answer}\n"), json!(answer))
}

pub fn is_topological(path: &Path) -> CmdResult {
    let space = load_space("is-topological", path)?;
    Ok(yes_no("is-topological", space.is_topological()))
}

pub fn is_connected(path: &Path) -> CmdResult {
    let space = load_space("is-connected", path)?;
    Ok(yes_no("is-connected", space.is_connected()))
}

pub fn ssr_table(path: &Path) -> CmdResult {
    let sps = load_sps("ssr-table", path)?;
    let l = sps.lattice();
    let n = l.len();
    let table: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| sps.ssr(a, b)).collect())
        .collect();
    let width = l
        .names()
        .iter()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let mut text = String::new();
    for (a, row) in table.iter().enumerate() {
        let cells: String = row.iter().map(|&t| if t { " 1" } else { " ." }).collect();
        writeln!(text, "{:>width$}{cells}", l.name(a)).unwrap();
    }
    Ok(Output::new(
        true,
        "ssr-table",
        text,
        json!({ "properties": l.names(), "ssr": table }),
    ))
}

pub fn classical_props(path: &Path) -> CmdResult {
    let sps = load_sps("classical-props", path)?;
    let l = sps.lattice();
    let mut text = String::new();
    let mut rows = Vec::new();
    for a in sps.classical_properties() {
        let c = sps
            .classical_complement(a)
            .expect("classical properties have complements");
        writeln!(text, "{}  (complement {})", l.name(a), l.name(c)).unwrap();
        rows.push(json!({ "property": l.name(a), "complement": l.name(c) }));
    }
    Ok(Output::new(true, "classical-props", text, json!(rows)))
}

pub fn classical_part(path: &Path) -> CmdResult {
    let sps = load_sps("classical-part", path)?;
    let cp = decomposition::classical_part(&sps).map_err(|e| lib_error("classical-part", e))?;
    Ok(document("classical-part", serialize_sps(&cp)))
}

pub fn totally_classical(path: &Path) -> CmdResult {
    let sps = load_sps("totally-classical", path)?;
    match decomposition::totally_classical_system(&sps)
        .map_err(|e| lib_error("totally-classical", e))?
    {
        TotallyClassical::System(tc) => Ok(document("totally-classical", serialize_sps(&tc))),
        TotallyClassical::Counterexample(cx) => Ok(Output::new(
            false,
            "totally-classical",
            format!("counterexample: {cx}\n"),
            json!({ "counterexample": cx }),
        )),
    }
}

pub fn segment(path: &Path, property: &str) -> CmdResult {
    let sps = load_sps("segment", path)?;
    let c = sps
        .property(property)
        .map_err(|e| Output::error(Outcome::Usage, "segment", "input", e.to_string()))?;
    let seg = decomposition::segment_system(&sps, c).map_err(|e| match e {
        spslab::Error::Input(m) => Output::error(Outcome::Usage, "segment", "input", m),
        other => lib_error("segment", other),
    })?;
    Ok(document("segment", serialize_sps(&seg)))
}

pub fn decompose(path: &Path) -> CmdResult {
    let sps = load_sps("decompose", path)?;
    let d = decomposition::decompose(&sps).map_err(|e| lib_error("decompose", e))?;
    let st = sps.states();
    let l = sps.lattice();
    let mut text = String::new();
    writeln!(text, "components: {}", d.components.len()).unwrap();
    let mut comps = Vec::new();
    for cs in &d.components {
        let pure = cs.sps.is_pure_nonclassical();
        writeln!(
            text,
            "  {}  s(ω) = {}  |L_ω| = {}  {}",
            st.format_subset(cs.omega),
            l.name(cs.s_omega),
            cs.sps.property_count(),
            if pure {
                "pure nonclassical"
            } else {
                "NOT pure nonclassical"
            }
        )
        .unwrap();
        comps.push(json!({
            "omega": st.labels_of(cs.omega),
            "s_omega": l.name(cs.s_omega),
            "properties": cs.sps.lattice().names(),
            "pure_nonclassical": pure,
        }));
    }
    let tc = match &d.totally_classical {
        TotallyClassical::System(tc) => {
            writeln!(
                text,
                "totally classical: {} states, properties {:?}",
                tc.state_count(),
                tc.lattice().names()
            )
            .unwrap();
            json!({ "states": tc.states().labels(), "properties": tc.lattice().names() })
        }
        TotallyClassical::Counterexample(cx) => {
            writeln!(text, "totally classical: counterexample {cx}").unwrap();
            json!({ "counterexample": cx })
        }
    };
    writeln!(
        text,
        "classical part: properties {:?}",
        d.classical_part.lattice().names()
    )
    .unwrap();
    writeln!(text, "evidence:").unwrap();
    for c in &d.evidence.checks {
        writeln!(text, "  {:<48} {}", c.name, c.verdict).unwrap();
    }
    let ok = d.evidence.all_passed();
    Ok(Output::new(
        ok,
        "decompose",
        text,
        json!({
            "components": comps,
            "totally_classical": tc,
            "classical_part": d.classical_part.lattice().names(),
            "evidence": d.evidence,
        }),
    ))
}

pub fn enumerate(n: usize, threads: usize) -> CmdResult {
    let spaces = oracle::enumerate_closure_spaces_par(n, threads)
        .map_err(|e| Output::error(Outcome::Usage, "enumerate", "input", e.to_string()))?;
    let mut text = format!("closure spaces on {n} points: {}\n", spaces.len());
    let mut docs = Vec::new();
    for s in &spaces {
        writeln!(text, "  {s}").unwrap();
        docs.push(
            serde_json::from_str::<Value>(&serialize_space(s)).expect("canonical text is json"),
        );
    }
    Ok(Output::new(
        true,
        "enumerate",
        text,
        json!({ "n": n, "count": spaces.len(), "spaces": docs }),
    ))
}

pub fn random(n: usize, density: f64, seed: u64) -> CmdResult {
    let space = oracle::random_closure_space(n, density, seed)
        .map_err(|e| Output::error(Outcome::Usage, "random", "input", e.to_string()))?;
    Ok(document("random", serialize_space(&space)))
}

pub fn check_theorems(
    file: Option<&Path>,
    enumerate: Option<usize>,
    random: Option<(usize, usize, f64, u64)>,
    threads: usize,
) -> CmdResult {
    const CMD: &str = "check-theorems";
    let usage = |m: String| Output::error(Outcome::Usage, CMD, "input", m);
    let mut corpus: Vec<(String, Instance)> = Vec::new();
    if let Some(path) = file {
        corpus.push((path.display().to_string(), load(CMD, path)?));
    }
    if let Some(n) = enumerate {
        for (i, s) in oracle::enumerate_closure_spaces(n)
            .map_err(|e| usage(e.to_string()))?
            .enumerate()
        {
            corpus.push((format!("enum-n{n}-{i}"), Instance::Space(s)));
        }
    }
    if let Some((count, max_n, density, seed)) = random {
        if max_n == 0 {
            return Err(usage("--max-n must be at least 1".into()));
        }
        for k in 0..count as u64 {
            let n = 1 + (k % max_n as u64) as usize;
            let s = oracle::random_closure_space(n, density, seed.wrapping_add(k))
                .map_err(|e| usage(e.to_string()))?;
            corpus.push((
                format!("random-n{n}-seed{}", seed.wrapping_add(k)),
                Instance::Space(s),
            ));
        }
    }
    if corpus.is_empty() {
        return Err(usage("give a file, --enumerate N or --random COUNT".into()));
    }
    let reports: Vec<TheoremReport> =
        oracle::run_corpus(&corpus, threads).map_err(|e| lib_error(CMD, e))?;
    // a refuted construction counts as a theorem counterexample
    let ok = reports
        .iter()
        .all(|r| r.passed() && r.counterexamples.is_empty());
    let mut text = String::new();
    for r in &reports {
        let failures: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        if failures.is_empty() {
            write!(text, "{}: pass ({} checks)", r.instance, r.checks.len()).unwrap();
        } else {
            write!(text, "{}: FAIL {}", r.instance, failures.join(", ")).unwrap();
        }
        if !r.counterexamples.is_empty() {
            write!(text, "; {} counterexample(s)", r.counterexamples.len()).unwrap();
        }
        text.push('\n');
        for f in &r.findings {
            writeln!(text, "  finding: {f}").unwrap();
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let refuted: usize = reports.iter().map(|r| r.counterexamples.len()).sum();
    writeln!(
        text,
        "{passed}/{} instances pass, {refuted} counterexample(s)",
        reports.len()
    )
    .unwrap();
    Ok(Output::new(ok, CMD, text, json!(reports)))
}
