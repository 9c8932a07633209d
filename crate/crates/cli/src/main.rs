//! `minorbit` command-line front end.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use minorbit::chevalley::{build_chevalley, Form};
use minorbit::hamiltonian::{self, classical_counterpart, classical_matrix, sample_family, MMethod};
use minorbit::heisenberg::{heisenberg_table, kostant_roots};
use minorbit::polyring::Poly;
use minorbit::quantize::{heisenberg_quantize, quantization_report, travkin_quantize, Pbw};
use minorbit::repbuild::{self, DEFAULT_DIM_CAP};
use minorbit::rootsys::{build_root_system, dynkin_ascii, RootSystem, SimpleType};
use minorbit::tables::published_marks;
use minorbit::verify::{self, Context};
use minorbit::{Error, Q};

#[derive(Parser)]
#[command(name = "minorbit", version, about = "Integrable system on the minimal nilpotent orbit")]
struct Cli {
    /// Emit JSON on standard output instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest representation dimension that may be constructed.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Types are written `<family><rank>`: A1.., B2.., C2.., D3.., E6-E8, F4, G2
/// (D3 is accepted so the so(6) table can be reproduced).
#[derive(Subcommand)]
enum Cmd {
    /// Cartan matrix, positive roots, highest root and comarks.
    Roots {
        #[arg(value_parser = parse_type)]
        ty: SimpleType,
    },
    /// Structure constants of the Chevalley basis.
    Chevalley {
        #[arg(value_parser = parse_type)]
        ty: SimpleType,
    },
    /// Number of Hamiltonians m_k attached to each node.
    Mnumbers {
        #[arg(value_parser = parse_type)]
        ty: SimpleType,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// The Hamiltonian f_{n,k} = <v^k, x^n v_k>.
    Hamiltonian {
        #[arg(value_parser = parse_type)]
        ty: SimpleType,
        /// Node k, 1-based in Bourbaki order.
        #[arg(long)]
        node: usize,
        /// Order n.
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = BasisArg::Chevalley)]
        basis: BasisArg,
    },
    /// Hamiltonians in the coordinates of Kostant's Heisenberg subalgebra.
    HeisenbergTables {
        #[arg(value_parser = parse_type)]
        ty: SimpleType,
    },
    /// Proposed quantizations in the universal enveloping algebra.
    Quantize {
        #[arg(value_parser = parse_type)]
        ty: SimpleType,
        /// Node, 1-based; all nodes when omitted.
        #[arg(long)]
        node: Option<usize>,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = FormArg::Killing)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = ProposalArg::Casimir)]
        proposal: ProposalArg,
        /// Run the degree-1 and degree-2 commutator checks.
        #[arg(long)]
        check: bool,
    },
    /// Verify a claim; exit status 1 on failure.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Pairwise Poisson brackets vanish at sampled orbit points.
    Commute(SampleArgs),
    /// Jacobian rank h - 1 and vanishing above m_k.
    Independence(SampleArgs),
    /// Chevalley, Heisenberg-chart and matrix realizations agree.
    Cross(SampleArgs),
    /// Regenerated Heisenberg tables against the transcribed ones.
    Tables {
        /// One type; all tabulated types when omitted.
        #[arg(value_parser = parse_type)]
        ty: Option<SimpleType>,
    },
    /// Node labels by every method against the published figure.
    Mnumbers {
        #[arg(value_parser = parse_type)]
        ty: SimpleType,
    },
    /// Heisenberg dimension, sum of m_k and two-step nilpotency.
    Structure {
        #[arg(value_parser = parse_type)]
        ty: SimpleType,
    },
}

#[derive(clap::Args)]
struct SampleArgs {
    #[arg(value_parser = parse_type)]
    ty: SimpleType,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Sl2,
    Dominance,
    Rep,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Chevalley,
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Killing,
    Normalized,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProposalArg {
    Casimir,
    Heisenberg,
}

fn parse_type(s: &str) -> Result<SimpleType, String> {
    s.parse::<SimpleType>().map_err(|e| e.to_string())
}

/// JSON envelope of `verify` subcommands.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct VerifyEnvelope {
    claim: String,
    params: Value,
    status: String,
    counterexample: Option<Value>,
    details: Value,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::BasisMismatch => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, value: &Value, text: &str) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

fn root_system(ty: SimpleType) -> Result<Arc<RootSystem>, Failure> {
    Ok(Arc::new(build_root_system(ty)?))
}

fn check_node(rs: &RootSystem, node: usize) -> Result<usize, Failure> {
    if node == 0 || node > rs.rank() {
        return Err(Error::BadNode { node, rank: rs.rank() }.into());
    }
    Ok(node - 1)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Roots { ty } => roots(cli, *ty),
        Cmd::Chevalley { ty } => chevalley(cli, *ty),
        Cmd::Mnumbers { ty, method } => mnumbers(cli, *ty, *method),
        Cmd::Hamiltonian { ty, node, order, basis } => hamiltonian_cmd(cli, *ty, *node, *order, *basis),
        Cmd::HeisenbergTables { ty } => heisenberg_tables(cli, *ty),
        Cmd::Quantize { ty, node, degree, form, proposal, check } => {
            quantize(cli, *ty, *node, *degree, *form, *proposal, *check)
        }
        Cmd::Verify { what } => verify_cmd(cli, what),
    }
}

fn root_label(r: &[i64]) -> String {
    minorbit::heisenberg::root_label(r)
}

fn roots(cli: &Cli, ty: SimpleType) -> Outcome {
    let rs = root_system(ty)?;
    let mut t = format!("{ty}: rank {}, dual Coxeter number {}\n", rs.rank(), rs.dual_coxeter);
    t.push_str("Cartan matrix <a_i, a_j^vee>:\n");
    for row in &rs.cartan {
        t.push_str(&format!("  {}\n", row.iter().map(|c| format!("{c:>2}")).collect::<Vec<_>>().join(" ")));
    }
    t.push_str(&format!("highest root: {}\n", root_label(&rs.highest_root)));
    t.push_str(&format!("comarks:\n{}\n", dynkin_ascii(ty, &rs.comarks)));
    t.push_str(&format!("positive roots ({}):\n", rs.num_positive()));
    for (i, r) in rs.positive_roots.iter().enumerate() {
        t.push_str(&format!("  e{:<3} {}\n", i + 1, root_label(r)));
    }
    emit(cli, &serde_json::to_value(rs.summary()).unwrap(), &t);
    Ok(true)
}

/// Two flat basis indices.
type Pair = (usize, usize);

fn chevalley(cli: &Cli, ty: SimpleType) -> Outcome {
    let rs = root_system(ty)?;
    let cb = build_chevalley(&rs)?;
    let triples = cb.structure_triples();
    let mut t = String::new();
    let mut by_pair: Vec<(Pair, Vec<(usize, i64)>)> = Vec::new();
    for &(i, j, k, c) in &triples {
        match by_pair.last_mut() {
            Some((p, v)) if *p == (i, j) => v.push((k, c)),
            _ => by_pair.push(((i, j), vec![(k, c)])),
        }
    }
    for ((i, j), v) in &by_pair {
        let rhs: Vec<String> = v
            .iter()
            .map(|(k, c)| match c {
                1 => cb.name(*k),
                -1 => format!("-{}", cb.name(*k)),
                _ => format!("{c}*{}", cb.name(*k)),
            })
            .collect();
        t.push_str(&format!("[{}, {}] = {}\n", cb.name(*i), cb.name(*j), rhs.join(" + ").replace("+ -", "- ")));
    }
    let names: Vec<String> = (0..cb.dim()).map(|k| cb.name(k)).collect();
    let value = json!({
        "type": ty.to_string(),
        "basis": names,
        "brackets": triples.iter().map(|&(i, j, k, c)| json!([i, j, k, c])).collect::<Vec<_>>(),
    });
    emit(cli, &value, &t);
    Ok(true)
}

fn mnumbers(cli: &Cli, ty: SimpleType, method: MethodArg) -> Outcome {
    let rs = root_system(ty)?;
    let single = |m: MMethod| -> Result<Vec<i64>, Failure> {
        (0..rs.rank()).map(|k| hamiltonian::m_number(&rs, k, m, cli.dim_cap).map_err(Failure::from)).collect()
    };
    let (labels, value) = match method {
        MethodArg::Sl2 => {
            let v = single(MMethod::Sl2)?;
            (v.clone(), json!({"type": ty.to_string(), "method": "sl2", "m": v}))
        }
        MethodArg::Dominance => {
            let v = single(MMethod::Dominance)?;
            (v.clone(), json!({"type": ty.to_string(), "method": "dominance", "m": v}))
        }
        MethodArg::Rep => {
            let v = single(MMethod::Rep)?;
            (v.clone(), json!({"type": ty.to_string(), "method": "rep", "m": v}))
        }
        MethodArg::All => {
            let n = hamiltonian::m_numbers(&rs, cli.dim_cap, true);
            let mut v = serde_json::to_value(&n).unwrap();
            v["m"] = json!(n.sl2);
            v["agree"] = json!(n.agree());
            v["sum_is_dual_coxeter_minus_one"] = json!(n.sum_ok());
            (n.sl2.clone(), v)
        }
    };
    let mut t = labels.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
    t.push('\n');
    t.push_str(&dynkin_ascii(ty, &labels));
    t.push('\n');
    t.push_str(&format!("sum = {} (h^vee - 1 = {})\n", labels.iter().sum::<i64>(), rs.dual_coxeter - 1));
    if let MethodArg::All = method {
        t.push_str(&format!("methods agree: {}\n", value["agree"]));
        if let Some(p) = published_marks(ty) {
            t.push_str(&format!("published: {}\n", if p == labels { "match" } else { "MISMATCH" }));
        }
    }
    emit(cli, &value, &t);
    Ok(true)
}

fn hamiltonian_cmd(cli: &Cli, ty: SimpleType, node: usize, order: u32, basis: BasisArg) -> Outcome {
    let rs = root_system(ty)?;
    let k = check_node(&rs, node)?;
    if order == 0 {
        return Err(Failure::Usage("order must be at least 1".into()));
    }
    let cb = build_chevalley(&rs)?;
    let rep = repbuild::build_irrep(&rs, &rs.fundamental_weight(k), cli.dim_cap)?;
    let f = hamiltonian::hamiltonian_poly(&cb, k, order, &rep)?;
    let in_range = order as i64 <= rs.comarks[k];
    match basis {
        BasisArg::Chevalley => {
            let text = f.render_with(&|v| cb.name(v));
            let value = json!({
                "type": ty.to_string(),
                "node": node,
                "order": order,
                "basis": "chevalley",
                "variables": (0..cb.dim()).map(|v| cb.name(v)).collect::<Vec<_>>(),
                "polynomial": text,
                "terms": f.to_json(),
                "in_range": in_range,
            });
            emit(cli, &value, &format!("f_{{{order},{node}}} = {text}\n"));
        }
        BasisArg::Matrix => {
            let Some(block) =
                (1..=rs.rank()).find(|&b| classical_counterpart(ty, b, order) == Some(vec![(k, Q::one())]))
            else {
                return Err(Failure::Usage(format!(
                    "no trace formula for node {node}, order {order} of {ty}; see `verify cross`"
                )));
            };
            // the scalar relating the trace function to f, fitted on generic samples
            let vrep = repbuild::build_irrep(&rs, &rs.fundamental_weight(0), cli.dim_cap)?;
            let mut scalar: Option<Q> = None;
            for p in sample_family(&cb, 7, 30).iter().skip(hamiltonian::SHORT_SAMPLES) {
                let a = classical_matrix(&vrep, &p.coeffs);
                let tr = hamiltonian::classical_trace_hamiltonian(ty, block, order, &a)?;
                let fv = f.evaluate(&p.dense(cb.dim()))?;
                if !fv.is_zero() {
                    scalar = Some(tr / fv);
                    break;
                }
            }
            let trace = trace_poly(vrep.dim, block, order);
            let name = |v: usize| format!("a{}_{}", v / vrep.dim + 1, v % vrep.dim + 1);
            let text = trace.render_with(&name);
            let func = if order == 1 { "Tr" } else { "Tr wedge^2" };
            let s = scalar.map_or("undetermined".to_string(), |s| s.to_string());
            let value = json!({
                "type": ty.to_string(),
                "node": node,
                "order": order,
                "basis": "matrix",
                "block": block,
                "trace_polynomial": text,
                "scalar": s,
            });
            emit(
                cli,
                &value,
                &format!("{func}(A_{block}{block}) = {text}\n{func}(A_{block}{block}) = {s} * f_{{{order},{node}}} on the orbit\n"),
            );
        }
    }
    Ok(true)
}

/// `Tr(A_kk)` or `e_2(A_kk)` as a polynomial in the entries `a_ij`, variable
/// `i * n + j`.
fn trace_poly(n: usize, k: usize, r: u32) -> Poly {
    let nv = n * n;
    let a = |i: usize, j: usize| Poly::var(nv, i * n + j);
    let mut p = Poly::zero(nv);
    if r == 1 {
        for i in 0..k {
            p.add_scaled(&a(i, i), &Q::one());
        }
    } else {
        for i in 0..k {
            for j in i + 1..k {
                p.add_scaled(&a(i, i).mul(&a(j, j)), &Q::one());
                p.add_scaled(&a(i, j).mul(&a(j, i)), &-Q::one());
            }
        }
    }
    p
}

fn heisenberg_tables(cli: &Cli, ty: SimpleType) -> Outcome {
    let rs = root_system(ty)?;
    let hb = kostant_roots(&rs).with_table_order()?;
    let reps = hamiltonian::fundamental_reps(&rs, cli.dim_cap)?;
    let table = heisenberg_table(&hb, &reps)?;
    emit(cli, &table.to_json(), &table.render());
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn quantize(
    cli: &Cli,
    ty: SimpleType,
    node: Option<usize>,
    degree: u32,
    form: FormArg,
    proposal: ProposalArg,
    check: bool,
) -> Outcome {
    let rs = root_system(ty)?;
    let cb = build_chevalley(&rs)?;
    let form = match form {
        FormArg::Killing => Form::Killing,
        FormArg::Normalized => Form::Normalized,
    };
    let reps = hamiltonian::fundamental_reps(&rs, cli.dim_cap)?;
    let nodes: Vec<usize> = match node {
        Some(n) => vec![check_node(&rs, n)?],
        None => (0..rs.rank()).collect(),
    };
    let pbw = Pbw::new(&cb);
    let hb = kostant_roots(&rs);
    let mut t = String::new();
    let mut elements = Vec::new();
    let mut quantized = Vec::new();
    for &k in &nodes {
        let e = match proposal {
            ProposalArg::Casimir => travkin_quantize(&pbw, &reps[k], k, degree, form)?,
            ProposalArg::Heisenberg => heisenberg_quantize(&pbw, &hb, &reps[k], k, degree, form)?,
        };
        let r = e.render(&cb);
        t.push_str(&format!("Q_{{{degree},{}}} = {r}\n", k + 1));
        elements.push(json!({"node": k + 1, "degree": degree, "element": r}));
        quantized.push(e);
    }
    let mut value = json!({"type": ty.to_string(), "form": format!("{form:?}"), "elements": elements});
    let mut ok = true;
    if check && matches!(proposal, ProposalArg::Heisenberg) {
        // a proposal only: commutators are reported, never asserted
        let mut report = Vec::new();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let c = pbw.commutator(&quantized[i], &quantized[j]);
                t.push_str(&format!(
                    "[Q_{{{degree},{}}}, Q_{{{degree},{}}}] has {} PBW terms (reported only)\n",
                    nodes[i] + 1,
                    nodes[j] + 1,
                    c.len()
                ));
                report.push(json!({"first": nodes[i] + 1, "second": nodes[j] + 1, "terms": c.len()}));
            }
        }
        value["commutators"] = json!(report);
    } else if check {
        let rep = quantization_report(&cb, &reps, form)?;
        ok = rep.passed();
        t.push_str(&format!(
            "[H_i, H_j] = 0: {}\n[H_j, Q_2k] = 0: {}\n[H_beta, e_alpha f_alpha] = 0: {}\n",
            rep.degree1_commute, rep.degree1_degree2_commute, rep.cartan_pairs_commute
        ));
        for (i, j, n) in &rep.degree2_commutators {
            t.push_str(&format!("[Q_2,{}, Q_2,{}] has {n} PBW terms (reported only)\n", i + 1, j + 1));
        }
        value["check"] = serde_json::to_value(&rep).unwrap();
    }
    emit(cli, &value, &t);
    Ok(ok)
}

fn envelope(claim: &str, params: Value, passed: bool, counterexample: Option<Value>, details: Value) -> VerifyEnvelope {
    VerifyEnvelope {
        claim: claim.to_string(),
        params,
        status: if passed { "pass" } else { "fail" }.to_string(),
        counterexample,
        details,
    }
}

fn verify_cmd(cli: &Cli, what: &VerifyCmd) -> Outcome {
    let (env, text) = match what {
        VerifyCmd::Commute(a) => {
            let ctx = Context::new(a.ty, cli.dim_cap)?;
            let set = verify::hamiltonians(&ctx)?;
            let r = verify::verify_commutativity(&ctx, &set, a.samples, a.seed);
            let text = format!(
                "{}: {} pairs x {} samples, {} nonzero brackets\n",
                a.ty,
                r.pairs.len(),
                r.samples,
                r.failures.len()
            );
            let cx = r.failures.first().map(|f| json!({"first": [f.0, f.1], "second": [f.2, f.3], "sample": f.4}));
            (envelope("commute", sample_params(a), r.passed(), cx, serde_json::to_value(&r).unwrap()), text)
        }
        VerifyCmd::Independence(a) => {
            let ctx = Context::new(a.ty, cli.dim_cap)?;
            let set = verify::hamiltonians(&ctx)?;
            let r = verify::verify_independence(&ctx, &set, a.samples, a.seed);
            let text = format!(
                "{}: Jacobian ranks {:?} (need {}), {} nonzero values above m_k\n",
                a.ty,
                r.ranks,
                r.expected_rank,
                r.nonvanishing_above_m.len()
            );
            let cx = r.nonvanishing_above_m.first().map(|f| json!({"node": f.0, "order": f.1, "sample": f.2}));
            (envelope("independence", sample_params(a), r.passed(), cx, serde_json::to_value(&r).unwrap()), text)
        }
        VerifyCmd::Cross(a) => {
            let ctx = Context::new(a.ty, cli.dim_cap)?;
            let r = verify::verify_cross_basis(&ctx, a.samples, a.seed)?;
            let mut text = format!(
                "{}: chart identity failures {}, exp-det failures {}\n",
                a.ty,
                r.chart_failures.len(),
                r.exp_det_failures.len()
            );
            for f in &r.classical {
                let func = if f.order == 1 { "Tr" } else { "Tr wedge^2" };
                text.push_str(&format!(
                    "  {func}(A_{0}{0}) = {1} * f  [{2}]\n",
                    f.block,
                    f.scalar.as_deref().unwrap_or("?"),
                    if f.consistent { "consistent" } else { "INCONSISTENT" }
                ));
            }
            let cx = r.chart_failures.first().map(|f| json!({"node": f.0, "order": f.1, "point": f.2}));
            (envelope("cross", sample_params(a), r.passed(), cx, serde_json::to_value(&r).unwrap()), text)
        }
        VerifyCmd::Tables { ty } => {
            let types = match ty {
                Some(t) => vec![*t],
                None => verify::table_types(),
            };
            let r = verify::verify_tables(&types)?;
            let mut text = String::new();
            for c in &r.comparisons {
                text.push_str(&format!(
                    "{}: {} (signs {:?})\n",
                    c.r#type,
                    if c.passed() { "pass" } else { "FAIL" },
                    c.signs
                ));
                for cell in &c.cells {
                    if cell.status != minorbit::tables::CellStatus::Match {
                        text.push_str(&format!(
                            "  order {} node {}: {:?}\n    printed:  {}\n    computed: {}\n",
                            cell.order, cell.node, cell.status, cell.expected, cell.computed
                        ));
                    }
                }
            }
            for t in &r.labels_only {
                text.push_str(&format!("{t}: labels resolve (no printed cells)\n"));
            }
            text.push_str(&format!("warnings: {}\n", r.warnings()));
            let cx = r
                .comparisons
                .iter()
                .flat_map(|c| c.cells.iter().map(move |x| (c, x)))
                .find(|(_, x)| x.status == minorbit::tables::CellStatus::Mismatch)
                .map(|(c, x)| json!({"type": c.r#type, "order": x.order, "node": x.node}));
            let params = json!({"types": types.iter().map(|t| t.to_string()).collect::<Vec<_>>()});
            (envelope("tables", params, r.passed(), cx, serde_json::to_value(&r).unwrap()), text)
        }
        VerifyCmd::Mnumbers { ty } => {
            let r = verify::verify_mnumbers(*ty, cli.dim_cap)?;
            let text = format!(
                "{ty}: sl2 {:?}, dominance {:?}, rep {:?}, published {:?}\n",
                r.numbers.sl2, r.numbers.dominance, r.numbers.rep, r.published
            );
            let params = json!({"type": ty.to_string(), "dim_cap": cli.dim_cap});
            (envelope("mnumbers", params, r.passed(), None, serde_json::to_value(&r).unwrap()), text)
        }
        VerifyCmd::Structure { ty } => {
            let r = verify::verify_structure(*ty, 4)?;
            let text = format!(
                "{ty}: dim n* = {} (2h-3 = {}), sum m_k = {} (h-1 = {}), two-step: {:?}\n",
                r.heisenberg_dim,
                2 * r.dual_coxeter - 3,
                r.sum_m,
                r.dual_coxeter - 1,
                r.two_step
            );
            let params = json!({"type": ty.to_string()});
            (envelope("structure", params, r.passed(), None, serde_json::to_value(&r).unwrap()), text)
        }
    };
    let passed = env.status == "pass";
    let text = format!("{text}{}\n", if passed { "PASS" } else { "FAIL" });
    emit(cli, &serde_json::to_value(&env).unwrap(), &text);
    Ok(passed)
}

fn sample_params(a: &SampleArgs) -> Value {
    json!({"type": a.ty.to_string(), "samples": a.samples, "seed": a.seed})
}

#[cfg(test)]
mod tests {
    use super::*;
    use minorbit::hamiltonian::classical_range;
    use minorbit::polyring::Mono;
    use minorbit::rootsys::Family;

    #[test]
    fn envelope_round_trips() {
        let e = envelope("commute", json!({"type": "G2"}), true, None, json!({"pairs": []}));
        let s = serde_json::to_string(&e).unwrap();
        let back: VerifyEnvelope = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn trace_polynomials() {
        let p = trace_poly(3, 2, 2);
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Mono::from_pairs(&[(1, 1), (3, 1)])), -Q::one());
        assert_eq!(trace_poly(3, 3, 1).len(), 3);
    }

    #[test]
    fn range_matches_library() {
        let b3: SimpleType = "B3".parse().unwrap();
        assert!(classical_range(b3, 2, 2));
        assert_eq!(b3.family, Family::B);
    }
}
