use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use effint_core::census::census_range;
use effint_core::constraints::{self, analyze};
use effint_core::genus1::{build_genus1_with, genus1_invariant, genus1_reduce, ModelReport};
use effint_core::rational::{fmt_q, parse_q, RationalJson};
use effint_core::recursion::{pushforward_min_check, root_factor, Insertion, Reducer, Status, Token};
use effint_core::target::{lift_contacts, normalize_target, presets, push_contacts, Sector};
use effint_core::{default_order, DiscreteData, Error, GradedElement, TargetSpec, Q};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "effint", version, about = "Effective invariants of punctured R-maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Series truncation order (overrides EFFINT_TRUNCATION).
    #[arg(long, global = true)]
    order: Option<usize>,
    /// λ-weight of the genus-one degree functional, e.g. `1/24`.
    #[arg(long, global = true)]
    normalization: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct TargetArg {
    /// Target JSON file, `-` for stdin, or `preset:NAME`.
    #[arg(long)]
    target: String,
}

#[derive(Args)]
struct DataArgs {
    #[arg(long)]
    genus: u32,
    /// Curve class, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Vec<i64>,
    /// `∫_β c₁(L_log)`; derived from β when rk E = 1.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<i64>,
    /// Contact orders, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    contacts: Vec<i64>,
    /// ψ_min power.
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// One insertion per marking, e.g. `1,h,h^2*L`; missing ones are `1`.
    #[arg(long, value_delimiter = ',')]
    insertions: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    PnHypersurface,
    PnCompleteIntersection,
    Product,
    Grassmann,
}

#[derive(Subcommand)]
enum Command {
    /// Balancing, dimensions and vanishing verdict.
    Analyze {
        #[command(flatten)]
        target: TargetArg,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Basic effective invariants per genus.
    Census {
        #[command(flatten)]
        target: TargetArg,
        /// Inclusive range `a..b`.
        #[arg(long)]
        genus_range: String,
    },
    /// Genus-one invariants from the closed formula.
    Genus1 {
        #[command(flatten)]
        target: TargetArg,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, value_delimiter = ',')]
        insertions: Vec<String>,
        /// Number of markings; insertions go to the first ones.
        #[arg(long, default_value_t = 1)]
        markings: usize,
    },
    /// String/divisor reduction to basic invariants.
    Reduce {
        #[command(flatten)]
        target: TargetArg,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Root-change translation of contacts and rescaling factors.
    Roots {
        #[arg(long)]
        ell: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        contacts: Vec<i64>,
        /// Gerbe orders of the markings on `∞`, default 1.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Target whose `(r, d)` are normalized along with `ℓ`.
        #[arg(long)]
        target: Option<String>,
    },
    /// Vanishing threshold tables.
    Thresholds {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        max_n: Option<i64>,
        #[arg(long)]
        max_d: Option<i64>,
    },
    /// Verifies the ψ_min push-forward identity over (P¹)^m.
    CheckPushforward {
        #[arg(long)]
        m: usize,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RingMismatch | Error::TruncationExhausted => Failure::Internal(e.to_string()),
            Error::ReductionNotGuaranteed { ref trace, .. } => {
                let mut msg = e.to_string();
                for line in trace {
                    msg.push_str("\n  ");
                    msg.push_str(line);
                }
                Failure::Input(msg)
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, String), Failure>;

fn qjson(x: &Q) -> Value {
    serde_json::to_value(RationalJson(x.clone())).expect("rational serializes")
}

fn load_target(spec: &str) -> Result<TargetSpec, Failure> {
    if let Some(name) = spec.strip_prefix("preset:") {
        return presets::by_name(name).ok_or_else(|| {
            Failure::Input(format!("unknown preset `{name}`; known: {}", presets::NAMES.join(", ")))
        });
    }
    let text = if spec == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Internal(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(spec).map_err(|e| Failure::Input(format!("reading {spec}: {e}")))?
    };
    Ok(TargetSpec::from_json_str(&text)?)
}

fn parse_insertions(t: &TargetSpec, given: &[String], n: usize) -> Result<Vec<Insertion>, Failure> {
    if given.len() > n {
        return Err(Failure::Input(format!("{} insertions for {n} markings", given.len())));
    }
    (0..n)
        .map(|i| match given.get(i) {
            Some(s) => Ok(Insertion::parse(t, s)?),
            None => Ok(Insertion::one(t)),
        })
        .collect()
}

fn default_beta(t: &TargetSpec, beta: &[i64]) -> Vec<i64> {
    if beta.is_empty() {
        vec![0; t.curve_rank()]
    } else {
        beta.to_vec()
    }
}

fn cmd_analyze(t: &TargetSpec, a: &DataArgs) -> Outcome {
    let data = DiscreteData::new(t, a.genus, default_beta(t, &a.beta), a.t, &a.contacts)?;
    let ins = parse_insertions(t, &a.insertions, a.contacts.len())?;
    let degrees: Vec<u32> = ins.iter().map(|i| 2 * i.codim()).collect();
    let report = analyze(&data, t, &degrees, a.k);
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["data"] = serde_json::to_value(&data).expect("data serializes");
    let table = format!(
        "target          {}\ng, β, t         {}, {:?}, {}\ncontacts        {:?}\nbalancing       {} (defect {})\nci vdim         {}\nreduced vdim    {}\nverdict         {}\nrules           {}",
        t.name,
        data.g,
        data.beta,
        data.t,
        data.contacts(),
        if report.feasible { "satisfied" } else { "violated" },
        fmt_q(&report.balancing_defect),
        report.ci_vdim,
        report.red_vdim,
        report.vanish.as_str(),
        if report.reasons.is_empty() { "-".to_string() } else { report.reasons.join(", ") }
    );
    if !report.feasible {
        return Err(Failure::Input(format!("infeasible discrete data: balancing defect {}\n{table}", fmt_q(&report.balancing_defect))));
    }
    Ok((value, table))
}

fn parse_range(s: &str) -> Result<(u32, u32), Failure> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Failure::Input(format!("genus range `{s}` is not of the form a..b")))?;
    let a: u32 = a.trim().parse().map_err(|_| Failure::Input(format!("bad genus `{a}`")))?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| Failure::Input(format!("bad genus `{b}`")))?;
    if a > b {
        return Err(Failure::Input(format!("empty genus range {a}..{b}")));
    }
    Ok((a, b))
}

fn cmd_census(t: &TargetSpec, range: &str) -> Outcome {
    let (lo, hi) = parse_range(range)?;
    let rows = census_range(t, lo, hi)?;
    let mut table = format!("{:>4} {:>6}  classes (β, t, n)\n", "g", "count");
    let mut genera = Vec::new();
    for (g, idx) in &rows {
        let classes: Vec<String> = idx
            .iter()
            .map(|b| format!("({:?}, {}, {}{})", b.beta, b.t, b.n, if b.further_constraints_possible { "*" } else { "" }))
            .collect();
        table.push_str(&format!("{g:>4} {:>6}  {}\n", idx.len(), classes.join(" ")));
        genera.push(json!({ "g": g, "count": idx.len(), "basic": idx }));
    }
    if rows.iter().flat_map(|(_, v)| v).any(|b| b.further_constraints_possible) {
        table.push_str("* further constraints on the fiber class are possible\n");
    }
    Ok((json!({ "target": t.name, "genera": genera }), table.trim_end().to_string()))
}

fn normalization(cli: &Cli) -> Result<Option<Q>, Failure> {
    cli.normalization.as_deref().map(|s| parse_q(s).map_err(Failure::from)).transpose()
}

fn cmd_genus1(cli: &Cli, t: &TargetSpec, k: u32, insertions: &[String], markings: usize) -> Outcome {
    let nz = normalization(cli)?.unwrap_or_else(effint_core::ring::default_normalization);
    let model = build_genus1_with(t, nz.clone())?;
    let report = ModelReport::from(&model);
    let (value, class) = if markings == 1 {
        let classes: Vec<GradedElement> = insertions
            .iter()
            .map(|s| model.parse_insertion(&s.replace('L', "zeta")))
            .collect::<Result<_, _>>()?;
        let mut cls = &model.psi_min.pow(k) * &model.red_cycle;
        for c in &classes {
            cls = &cls * c;
        }
        (genus1_invariant(&model, k, &classes)?, Some(cls.to_string()))
    } else {
        (genus1_reduce(t, markings, k, insertions, Some(nz.clone()))?, None)
    };
    let json = json!({
        "target": t.name,
        "k": k,
        "markings": markings,
        "insertions": insertions,
        "normalization": qjson(&nz),
        "value": qjson(&value),
        "class": class,
        "model": report,
    });
    let mut table = format!(
        "value           {}\nnormalization   {}\nψ_min           {}\nred cycle       {}\nvir cycle       {}\nconsistency     {}",
        fmt_q(&value),
        fmt_q(&nz),
        report.psi_min,
        report.red_cycle,
        report.vir_cycle,
        report.consistency
    );
    if let Some(c) = class {
        table.push_str(&format!("\nintegrand       {c}"));
    }
    Ok((json, table))
}

fn cmd_reduce(cli: &Cli, t: &TargetSpec, a: &DataArgs) -> Outcome {
    let ins = parse_insertions(t, &a.insertions, a.contacts.len())?;
    let marks = a.contacts.iter().copied().zip(ins).collect();
    let token = Token::new(t, a.genus, default_beta(t, &a.beta), a.t, marks, a.k)?;
    let mut reducer = Reducer::new(t.clone())?;
    if let Some(nz) = normalization(cli)? {
        reducer = reducer.with_normalization(nz)?;
    }
    let res = reducer.reduce(&token)?;
    let status = match &res.status {
        Status::Symbolic { .. } => "symbolic".to_string(),
        Status::Value { .. } => "value".to_string(),
        Status::Zero { rule } => format!("zero ({rule})"),
    };
    let json = json!({
        "token": token,
        "result": res.result,
        "status": res.status,
        "trace": res.trace,
    });
    let table = format!(
        "token    {token}\nresult   {}\nstatus   {status}\ntrace\n  {}",
        res.result,
        res.trace.join("\n  ")
    );
    Ok((json, table))
}

fn cmd_roots(ell: u64, contacts: &[i64], orders: &[u64], k: u32, target: Option<&TargetSpec>) -> Outcome {
    if !orders.is_empty() && orders.len() != contacts.len() {
        return Err(Failure::Input("one order per contact is required".into()));
    }
    let base: Vec<Sector> = contacts
        .iter()
        .enumerate()
        .map(|(i, c)| Sector::new(*c, orders.get(i).copied().unwrap_or(1)))
        .collect::<Result<_, _>>()?;
    let lifted = lift_contacts(&base, ell)?;
    let base_orders: Vec<u64> = base.iter().map(|s| s.order).collect();
    let pushed = push_contacts(&lifted, &base_orders, ell)?;
    let factor = root_factor(k, ell);
    let norm = match target {
        Some(t) => Some(normalize_target(t.r, t.d, t.ell)?),
        None => None,
    };
    let json = json!({
        "ell": ell,
        "k": k,
        "base": base,
        "lifted": lifted,
        "pushed_back": pushed,
        "round_trip": pushed == base,
        "factor_to_base": qjson(&factor),
        "factor_to_root": qjson(&(Q::from_integer(1.into()) / &factor)),
        "normalization": norm,
    });
    let fmt = |s: &[Sector]| {
        s.iter()
            .map(|x| format!("({}, r={}, age {})", x.contact, x.order, fmt_q(&x.age)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut table = format!(
        "on ∞           {}\non ∞^(1/{ell})    {}\npushed back    {}\nround trip     {}\nfactor ℓ^(1+k) {}",
        fmt(&base),
        fmt(&lifted),
        fmt(&pushed),
        pushed == base,
        fmt_q(&factor)
    );
    if let Some(n) = norm {
        table.push_str(&format!(
            "\nnormalized     r̂ = {}, d̂ = {}, a = {}, b = {}, r' = {}, d' = {}",
            n.r_hat, n.d_hat, n.a, n.b, n.r_prime, n.d_prime
        ));
    }
    Ok((json, table))
}

fn grouped(pairs: &[(i64, i64)]) -> String {
    constraints::group_by_degree(pairs)
        .iter()
        .map(|(d, ns)| format!("d = {d}: N = {}", compress(ns)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn compress(ns: &[i64]) -> String {
    let mut out = Vec::new();
    let mut i = 0;
    while i < ns.len() {
        let mut j = i;
        while j + 1 < ns.len() && ns[j + 1] == ns[j] + 1 {
            j += 1;
        }
        out.push(if i == j { ns[i].to_string() } else { format!("{}..{}", ns[i], ns[j]) });
        i = j + 1;
    }
    out.join(", ")
}

fn cmd_thresholds(family: Family, max_n: Option<i64>, max_d: Option<i64>) -> Outcome {
    match family {
        Family::PnHypersurface => {
            let (n, d) = (max_n.unwrap_or(100), max_d.unwrap_or(max_n.unwrap_or(100)));
            let t = constraints::hypersurface_table(n, d);
            let table = format!(
                "Fano hypersurfaces in P^N without vanishing (3 ≤ d ≤ {d}, N ≤ {n})\nexceptions (N ≥ 5)\n{}\nout of regime (N < 5)\n{}",
                grouped(&t.exceptions),
                grouped(&t.out_of_regime)
            );
            Ok((serde_json::to_value(&t).expect("table serializes"), table))
        }
        Family::PnCompleteIntersection => {
            let n = max_n.unwrap_or(60);
            let scan = constraints::ci_exception_scan(n, 2);
            let mut table = format!("Fano complete intersections, R ≥ 2, dim ≥ 4, N ≤ {n}\n");
            for e in &scan {
                table.push_str(&format!("{:?}: N = {}\n", e.degrees, compress(&e.failing_n)));
            }
            Ok((json!({ "family": "pn-complete-intersection", "max_n": n, "exceptions": scan }), table.trim_end().to_string()))
        }
        Family::Product => {
            let n = max_n.unwrap_or(40);
            let k = max_d.unwrap_or(6);
            let rows = constraints::product_table(k, n);
            let mut table = format!("(P^N)^k with all degrees d, N ≤ {n}\n{:>3} {:>3}  vanishing for\n", "k", "d");
            for r in &rows {
                let v = r.min_n.map(|m| format!("N ≥ {m}")).unwrap_or_else(|| "none in range".into());
                table.push_str(&format!("{:>3} {:>3}  {v}\n", r.factors, r.degree));
            }
            Ok((json!({ "family": "product", "max_n": n, "rows": rows }), table.trim_end().to_string()))
        }
        Family::Grassmann => {
            let n = max_n.unwrap_or(60);
            let t = constraints::grassmann_table(n);
            let table = format!(
                "Grassmannian hypersurfaces in Gr(2, N), N ≤ {n}\nexceptions\n{}\nout of regime\n{}",
                grouped(&t.exceptions),
                grouped(&t.out_of_regime)
            );
            Ok((serde_json::to_value(&t).expect("table serializes"), table))
        }
    }
}

fn cmd_pushforward(m: usize, order: usize) -> Outcome {
    let ok = pushforward_min_check(m, order)?;
    if !ok {
        return Err(Failure::Internal(format!("push-forward identity fails for m = {m} at order {order}")));
    }
    Ok((
        json!({ "m": m, "order": order, "holds": ok }),
        format!("push-forward identity over (P¹)^{m} to order {order}: holds"),
    ))
}

fn execute(cli: &Cli) -> Outcome {
    let order = cli.order.unwrap_or_else(default_order);
    match &cli.command {
        Command::Analyze { target, data } => cmd_analyze(&load_target(&target.target)?, data),
        Command::Census { target, genus_range } => cmd_census(&load_target(&target.target)?, genus_range),
        Command::Genus1 { target, k, insertions, markings } => {
            cmd_genus1(cli, &load_target(&target.target)?, *k, insertions, *markings)
        }
        Command::Reduce { target, data } => cmd_reduce(cli, &load_target(&target.target)?, data),
        Command::Roots { ell, contacts, orders, k, target } => {
            let t = target.as_deref().map(load_target).transpose()?;
            cmd_roots(*ell, contacts, orders, *k, t.as_ref())
        }
        Command::Thresholds { family, max_n, max_d } => cmd_thresholds(*family, *max_n, *max_d),
        Command::CheckPushforward { m } => cmd_pushforward(*m, order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((json, table)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("json")),
                Format::Table => println!("{table}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
