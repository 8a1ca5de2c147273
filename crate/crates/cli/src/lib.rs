//! Command implementations behind the `qpart` binary. Every command builds a
//! [`RunReport`]; the binary decides how to print it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use qpart::bailey::{derive_si, run_pipeline, StepKind};
use qpart::bijection::{in_a_double_prime, t_inv, t_map_traced, ForwardBranch};
use qpart::classes::{classify_transition, durfee_dissection, member};
use qpart::dissection::{bottom_dissect, dissect, BlockKind};
use qpart::ideal::{block_decompose, generator_divides, greedy_blocks, in_basis};
use qpart::qseries::{Identity, IdentityKind};
use qpart::{partitions, ClassId, ClassKind, Partition};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

/// Worker count for the parallel commands; unset or 0 means one per core.
pub const WORKERS_ENV: &str = "QPART_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "qpart", version, about = "Exact checks for Andrews-Gordon partition classes and q-series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the report as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Print the report's table as CSV.
    #[arg(long, global = true)]
    pub csv: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count class members for n = 0..=N and compare the classes.
    Count(CountArgs),
    /// Compare the sum and product sides of an identity.
    Verify(VerifyArgs),
    /// Dissect a partition with a plan of block letters.
    Dissect(DissectArgs),
    /// Run the bijection between A''_r and A_{r,r-1}.
    Bijection(BijectionArgs),
    /// Block decomposition of a partition, or a check of all transitions up to a weight.
    Blocks(BlocksArgs),
    /// Run a Bailey chain/lattice schedule from the unit pair.
    Bailey(BaileyArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Comma-separated class letters (T, E, A, B, C, D) or `all`.
    #[arg(long, default_value = "all")]
    pub class: String,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub i: u32,
    /// Largest weight.
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity name (AG, AGP, BR33, BR35, EVEN_B, AGPB, JTP, RR1, RR2,
    /// GEN_A, GEN_B, GEN_D) or `all` for every identity with r up to --r.
    #[arg(long)]
    pub identity: String,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub i: Option<u32>,
    /// JTP: exponent of z.
    #[arg(long)]
    pub z: Option<u32>,
    /// JTP: q is replaced by q^step.
    #[arg(long)]
    pub step: Option<u32>,
    #[arg(long, default_value_t = 60)]
    pub order: usize,
    /// BR33 only: shift the product residues by one.
    #[arg(long)]
    pub uncorrected: bool,
}

#[derive(Debug, Args)]
pub struct DissectArgs {
    /// Parts largest first, e.g. 6,5,5,4,3; `-` for the empty partition.
    pub partition: String,
    /// Block letters: S square, V vertical rectangle, H horizontal
    /// rectangle, b bottom square, B bottom rectangle.
    #[arg(long)]
    pub plan: String,
}

#[derive(Debug, Args)]
pub struct BijectionArgs {
    #[arg(long)]
    pub r: u32,
    /// Weight to list, or the largest weight checked with --check.
    #[arg(long)]
    pub n: u32,
    /// Check round trips and the class equalities for every weight up to n.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct BlocksArgs {
    /// Partition to decompose; omit and pass --n to check every transition.
    pub partition: Option<String>,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub i: u32,
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct BaileyArgs {
    #[arg(long)]
    pub r: u32,
    /// Number of chain steps after the lattice step is i-1; 0 means chain steps only.
    #[arg(long)]
    pub i: u32,
    /// a = q^e; defaults to 1 when a lattice step is needed, else 0.
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long, default_value_t = 40)]
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// First differing coefficient.
    Coefficient {
        power: usize,
        expected: String,
        actual: String,
    },
    Partition {
        partition: String,
        detail: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CaseReport {
    fn check(case: impl Into<String>, witness: Option<Witness>) -> Self {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        CaseReport { case: case.into(), status, witness }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Everything a run produced. Numbers that may outgrow 64 bits are decimal
/// strings; wall time is deliberately absent so identical runs serialize
/// identically.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub cases: Vec<CaseReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    /// Human-readable rendering for the plain-text mode.
    #[serde(skip)]
    pub text: String,
}

impl RunReport {
    fn new(command: &str, params: BTreeMap<String, Value>, cases: Vec<CaseReport>) -> Self {
        let status = if cases.iter().all(|c| c.status == Status::Pass) { Status::Pass } else { Status::Fail };
        RunReport {
            command: command.into(),
            params,
            status,
            cases,
            table: None,
            data: None,
            text: String::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> Result<String, UsageError> {
        let table =
            self.table.as_ref().ok_or_else(|| usage(format!("{} has no table for --csv", self.command)))?;
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&table.columns).map_err(|e| usage(e.to_string()))?;
        for row in &table.rows {
            w.write_record(row).map_err(|e| usage(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    /// Plain text: the command's own rendering, then one line per case.
    pub fn to_text(&self) -> String {
        let mut out = self.text.clone();
        for c in &self.cases {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = write!(out, "{tag} {}", c.case);
            match &c.witness {
                Some(Witness::Coefficient { power, expected, actual }) => {
                    let _ = write!(out, ": q^{power} expected {expected}, got {actual}");
                }
                Some(Witness::Partition { partition, detail }) => {
                    let _ = write!(out, ": {partition} ({detail})");
                }
                None => {}
            }
            out.push('\n');
        }
        out
    }
}

/// Bad arguments; the binary exits with code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

impl From<qpart::Error> for UsageError {
    fn from(e: qpart::Error) -> Self {
        UsageError(e.to_string())
    }
}

pub fn run(cli: &Cli) -> Result<RunReport, UsageError> {
    match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Dissect(a) => cmd_dissect(a),
        Command::Bijection(a) => cmd_bijection(a),
        Command::Blocks(a) => cmd_blocks(a),
        Command::Bailey(a) => cmd_bailey(a),
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn parse_partition(s: &str) -> Result<Partition, UsageError> {
    s.parse().map_err(|e: qpart::Error| usage(e.to_string()))
}

fn parse_classes(s: &str) -> Result<Vec<ClassKind>, UsageError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(ClassKind::ALL.to_vec());
    }
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim) {
        let k: ClassKind = tok.parse()?;
        if !out.contains(&k) {
            out.push(k);
        }
    }
    if out.is_empty() {
        return Err(usage("no classes given"));
    }
    Ok(out)
}

fn coefficient_witness((power, expected, actual): (usize, impl ToString, impl ToString)) -> Witness {
    Witness::Coefficient { power, expected: expected.to_string(), actual: actual.to_string() }
}

pub fn cmd_count(a: &CountArgs) -> Result<RunReport, UsageError> {
    let kinds = parse_classes(&a.class)?;
    let ids: Vec<ClassId> = kinds.iter().map(|&k| ClassId::new(k, a.r, a.i)).collect::<qpart::Result<_>>()?;
    let rows: Vec<Vec<u64>> = (0..=a.n)
        .into_par_iter()
        .map(|n| {
            let all: Vec<Partition> = partitions(n).collect();
            ids.iter().map(|&id| all.iter().filter(|l| id.contains(l)).count() as u64).collect()
        })
        .collect();
    let mut cases = Vec::new();
    if ids.len() > 1 {
        for (n, counts) in rows.iter().enumerate() {
            let witness = counts
                .iter()
                .position(|&c| c != counts[0])
                .map(|k| coefficient_witness((n, counts[0], counts[k])));
            let names: Vec<String> = ids.iter().map(|id| id.to_string()).collect();
            cases.push(CaseReport::check(format!("{} agree at n={n}", names.join(" = ")), witness));
        }
    }
    let mut columns = vec!["n".to_string()];
    columns.extend(ids.iter().map(|id| id.to_string()));
    let table = Table {
        columns,
        rows: rows
            .iter()
            .enumerate()
            .map(|(n, counts)| {
                std::iter::once(n.to_string()).chain(counts.iter().map(|c| c.to_string())).collect()
            })
            .collect(),
    };
    let names: Vec<String> = kinds.iter().map(|k| k.to_string()).collect();
    let mut report = RunReport::new(
        "count",
        params(&[("class", json!(names)), ("r", json!(a.r)), ("i", json!(a.i)), ("n", json!(a.n))]),
        cases,
    );
    report.text = render_table(&table);
    report.table = Some(table);
    Ok(report)
}

fn render_table(t: &Table) -> String {
    let widths: Vec<usize> = (0..t.columns.len())
        .map(|c| t.rows.iter().map(|r| r[c].len()).chain([t.columns[c].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in std::iter::once(&t.columns).chain(&t.rows) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn identities_for(a: &VerifyArgs) -> Result<Vec<Identity>, UsageError> {
    if a.identity.eq_ignore_ascii_case("all") {
        if a.uncorrected {
            return Err(usage("--uncorrected applies to a single BR33 identity"));
        }
        let r_max = a.r.ok_or_else(|| usage("--identity all needs --r"))?;
        let mut out = vec![Identity::Rr1, Identity::Rr2];
        for kind in IdentityKind::ALL {
            for (r, i) in kind.grid(r_max) {
                out.push(Identity::new(kind, r, i)?);
            }
        }
        out.push(Identity::Jtp { z: 1, step: 5 });
        out.push(Identity::Jtp { z: 2, step: 5 });
        out.extend((1..=r_max).map(|r| Identity::Jtp { z: r, step: 2 * r + 1 }));
        return Ok(out);
    }
    let kind: IdentityKind = a.identity.parse()?;
    if a.uncorrected && kind != IdentityKind::Br33 {
        return Err(usage("--uncorrected applies only to BR33"));
    }
    let id = match kind {
        IdentityKind::Rr1 | IdentityKind::Rr2 => Identity::new(kind, 0, 0)?,
        IdentityKind::Jtp => {
            let step = a.step.or(a.r).ok_or_else(|| usage("JTP needs --step"))?;
            let z = a.z.or(a.i).ok_or_else(|| usage("JTP needs --z"))?;
            Identity::new(kind, step, z)?
        }
        _ => {
            let r = a.r.ok_or_else(|| usage(format!("{kind} needs --r")))?;
            let i = a.i.ok_or_else(|| usage(format!("{kind} needs --i")))?;
            match Identity::new(kind, r, i)? {
                Identity::Br33 { r, i, .. } => Identity::Br33 { r, i, uncorrected: a.uncorrected },
                other => other,
            }
        }
    };
    Ok(vec![id])
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<RunReport, UsageError> {
    let ids = identities_for(a)?;
    let cases = ids
        .par_iter()
        .map(|id| {
            let mismatch = id.first_mismatch(a.order)?;
            // expected is the product side, actual the sum side
            Ok(CaseReport::check(
                format!("{id} to q^{}", a.order),
                mismatch.map(|(k, sum, prod)| coefficient_witness((k, prod, sum))),
            ))
        })
        .collect::<Result<Vec<_>, UsageError>>()?;
    let mut p = vec![("identity", json!(a.identity.to_uppercase())), ("order", json!(a.order))];
    for (name, v) in [("r", a.r), ("i", a.i), ("z", a.z), ("step", a.step)] {
        if let Some(v) = v {
            p.push((name, json!(v)));
        }
    }
    if a.uncorrected {
        p.push(("uncorrected", json!(true)));
    }
    Ok(RunReport::new("verify", params(&p), cases))
}

pub fn cmd_dissect(a: &DissectArgs) -> Result<RunReport, UsageError> {
    let lambda = parse_partition(&a.partition)?;
    let plan = BlockKind::parse_plan(&a.plan)?;
    let bottom = plan.first().is_some_and(|k| k.is_bottom());
    let d = if bottom { bottom_dissect(&lambda, &plan)? } else { dissect(&lambda, &plan)? };
    let mut cases = Vec::new();
    let back = d.reconstruct();
    cases.push(CaseReport::check(
        "blocks, side partitions and residual rows rebuild the partition",
        (back != lambda)
            .then(|| Witness::Partition { partition: back.to_string(), detail: "rebuilt".into() }),
    ));
    let mut report = RunReport::new(
        "dissect",
        params(&[("partition", json!(lambda.to_string())), ("plan", json!(a.plan))]),
        cases,
    );
    report.text = d.render(&lambda);
    report.data = Some(json!({ "dissection": d }));
    Ok(report)
}

pub fn cmd_bijection(a: &BijectionArgs) -> Result<RunReport, UsageError> {
    ClassId::new(ClassKind::A, a.r, a.r)?;
    let r = a.r;
    let p = params(&[("r", json!(r)), ("n", json!(a.n)), ("check", json!(a.check))]);
    if !a.check {
        let mut rows = Vec::new();
        for lam in partitions(a.n).filter(|l| in_a_double_prime(l, r).unwrap_or(false)) {
            let (mu, branch) = t_map_traced(&lam, r)?;
            let tag = match branch {
                ForwardBranch::Identity => "identity".to_string(),
                ForwardBranch::Rotate { m } => format!("rotate square {m}"),
            };
            rows.push(vec![lam.to_string(), mu.to_string(), tag]);
        }
        let table = Table { columns: vec!["lambda".into(), "T(lambda)".into(), "rule".into()], rows };
        let mut report = RunReport::new("bijection", p, Vec::new());
        report.text = render_table(&table);
        report.table = Some(table);
        return Ok(report);
    }
    let cases = (0..=a.n)
        .into_par_iter()
        .map(|n| CaseReport::check(format!("T and T' are inverse on weight {n}"), bijection_witness(r, n)))
        .collect();
    Ok(RunReport::new("bijection", p, cases))
}

fn bijection_witness(r: u32, n: u32) -> Option<Witness> {
    let fail =
        |lam: &Partition, detail: String| Some(Witness::Partition { partition: lam.to_string(), detail });
    let target = ClassId::new(ClassKind::A, r, r - 1).ok()?;
    let durfee = ClassId::new(ClassKind::D, r, r - 1).ok()?;
    let mut image = BTreeSet::new();
    let mut size = 0;
    for lam in partitions(n) {
        let dp = in_a_double_prime(&lam, r).ok()?;
        if dp != member(durfee, &lam) {
            return fail(&lam, format!("A'' membership {dp} disagrees with {durfee}"));
        }
        if member(target, &lam) {
            size += 1;
        }
        if !dp {
            continue;
        }
        let mu = match t_map_traced(&lam, r) {
            Ok((mu, _)) => mu,
            Err(e) => return fail(&lam, e.to_string()),
        };
        if !member(target, &mu) || mu.weight() != n as u64 {
            return fail(&lam, format!("T gives {mu}, outside {target}"));
        }
        match t_inv(&mu, r) {
            Ok(back) if back == lam => {}
            Ok(back) => return fail(&lam, format!("T' undoes T to {back}")),
            Err(e) => return fail(&lam, e.to_string()),
        }
        image.insert(mu);
    }
    if image.len() != size {
        let missing = partitions(n).find(|m| member(target, m) && !image.contains(m))?;
        return fail(&missing, "not in the image of T".into());
    }
    None
}

pub fn cmd_blocks(a: &BlocksArgs) -> Result<RunReport, UsageError> {
    ClassId::new(ClassKind::D, a.r, a.i)?;
    let (r, i) = (a.r, a.i);
    match (&a.partition, a.n) {
        (Some(s), _) => {
            let lambda = parse_partition(s)?;
            let divides = generator_divides(&lambda, r, i)?;
            let transition = classify_transition(&lambda, r, i)?;
            let dec = block_decompose(&lambda, r, i).ok();
            let mut text = format!(
                "{lambda}: {transition:?}, {}\n",
                if divides { "in the ideal" } else { "in the quotient basis" }
            );
            if let Some(d) = &dec {
                let blocks: Vec<String> = d.blocks.iter().map(|b| format!("{b:?}")).collect();
                let _ = writeln!(text, "blocks {} f {:?} ell {}", blocks.join(" "), d.f, d.ell);
            }
            let mut report = RunReport::new(
                "blocks",
                params(&[("partition", json!(lambda.to_string())), ("r", json!(r)), ("i", json!(i))]),
                Vec::new(),
            );
            report.text = text;
            report.data = Some(json!({
                "in_ideal": divides,
                "transition": transition,
                "decomposition": dec,
            }));
            Ok(report)
        }
        (None, Some(n_max)) => {
            let cases = (0..=n_max)
                .into_par_iter()
                .map(|n| {
                    CaseReport::check(
                        format!("blocks, star and quotient basis at weight {n}"),
                        blocks_witness(r, i, n),
                    )
                })
                .collect();
            Ok(RunReport::new(
                "blocks",
                params(&[("r", json!(r)), ("i", json!(i)), ("n", json!(n_max))]),
                cases,
            ))
        }
        (None, None) => Err(usage("blocks needs a partition or --n")),
    }
}

fn blocks_witness(r: u32, i: u32, n: u32) -> Option<Witness> {
    let fail =
        |lam: &Partition, detail: String| Some(Witness::Partition { partition: lam.to_string(), detail });
    let c = ClassId::new(ClassKind::C, r, i).ok()?;
    let d = ClassId::new(ClassKind::D, r, i).ok()?;
    for lam in partitions(n) {
        let basis = in_basis(&lam, r, i).ok()?;
        if basis != member(c, &lam) || basis != member(d, &lam) {
            return fail(
                &lam,
                format!("quotient basis {basis}, {c} {}, {d} {}", member(c, &lam), member(d, &lam)),
            );
        }
        if lam.is_empty() || !classify_transition(&lam, r, i).ok()?.is_transition() {
            continue;
        }
        let dec = match block_decompose(&lam, r, i) {
            Ok(dec) => dec,
            Err(e) => return fail(&lam, e.to_string()),
        };
        if greedy_blocks(&lam, r, i).ok()? != Some(dec.clone()) {
            return fail(&lam, "peeling and greedy reading disagree".into());
        }
        let top = durfee_dissection(&lam, r, i).blocks[0].rows;
        let f_prev = dec.f[r as usize - 2] as usize;
        if !(dec.ell < top && top <= f_prev + dec.ell) {
            return fail(&lam, format!("star fails: ell {} first block {top} rows, f {f_prev}", dec.ell));
        }
    }
    None
}

pub fn cmd_bailey(a: &BaileyArgs) -> Result<RunReport, UsageError> {
    let e = a.e.unwrap_or(u32::from(a.i >= 1));
    let p = run_pipeline(a.r, a.i, e, a.order)?;
    let mut cases = vec![CaseReport::check(
        "unit pair satisfies the pair relation",
        (!p.unit_verified).then(|| Witness::Partition { partition: "-".into(), detail: "unit pair".into() }),
    )];
    for (k, s) in p.steps.iter().enumerate() {
        let name = match s.kind {
            StepKind::Chain => "chain",
            StepKind::Lattice => "lattice",
        };
        cases.push(CaseReport::check(
            format!("step {} ({name}, e={}) keeps the pair relation", k + 1, s.e_before),
            (!s.verified)
                .then(|| Witness::Partition { partition: "-".into(), detail: format!("step {}", k + 1) }),
        ));
    }
    for (label, s) in
        [("alpha side", &p.alpha_limit), ("multi-sum", &p.multisum), ("closed form", &p.closed_form)]
    {
        cases.push(CaseReport::check(
            format!("limit matches the {label} to q^{}", a.order),
            p.beta_limit.first_difference(s).map(|(k, beta, other)| coefficient_witness((k, other, beta))),
        ));
    }
    if a.i < a.r {
        let si = derive_si(a.r, a.i, a.order)?;
        let product = Identity::Br33 { r: a.r, i: a.i, uncorrected: false }.product_side(a.order)?;
        cases.push(CaseReport::check(
            format!("S_{} from the unit pair matches the BR33 product to q^{}", a.i, a.order),
            si.first_difference(&product).map(|(k, s, prod)| coefficient_witness((k, prod, s))),
        ));
    }
    let schedule: Vec<&str> = p
        .steps
        .iter()
        .map(|s| match s.kind {
            StepKind::Chain => "chain",
            StepKind::Lattice => "lattice",
        })
        .collect();
    let mut report = RunReport::new(
        "bailey",
        params(&[("r", json!(a.r)), ("i", json!(a.i)), ("e", json!(e)), ("order", json!(a.order))]),
        cases,
    );
    report.data = Some(json!({
        "limit_index": p.limit_index,
        "schedule": schedule,
        "limit": p.beta_limit,
    }));
    Ok(report)
}
