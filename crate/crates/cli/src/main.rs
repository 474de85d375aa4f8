//! `torsorlab`: computations, enumerations, tables and law suites from the
//! command line.
//!
//! Exit codes: 0 success, 1 a law was violated, 2 usage or input error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use torsorlab::gamma::{gamma_by_difference, gamma_global, gamma_oracle, gamma_restricted, Sampling};
use torsorlab::grassmann::enumerate_subspaces;
use torsorlab::homotopes::{prop41_bridge, theorem37_roundtrip, thm33_bridge, ClassicalFamily, FamilyKind, Star};
use torsorlab::involutions::{fixed_point_census, ortho_involution, torsor_g};
use torsorlab::scalars::FieldVisitor;
use torsorlab::suites::{run_suite, SuiteConfig, SUITES};
use torsorlab::{Error, Field, FieldSpec, Form, Matrix, Report, Result, StandardForm, Subspace};

#[derive(Parser, Debug)]
#[command(name = "torsorlab", version, about = "Exact associative geometry over finite fields, ℚ and ℚ(i)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Γ(x, a, y, b, z) of five subspaces given by spanning rows.
    Gamma(GammaArgs),
    /// Run a law suite and print its report.
    Check(CheckArgs),
    /// List or count the fixed points of ⊥ for a standard form on K²ⁿ.
    Lagrangian(LagrangianArgs),
    /// Cayley table of the group G(⊥; a) for a standard form.
    Gtable(GtableArgs),
    /// Members, table or hull check of a classical homotope family.
    Homotope(HomotopeArgs),
    /// Compare a projective torsor with its affine homotope family.
    Bridge(BridgeArgs),
    /// List or count the subspaces of Kⁿ.
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// (1 − P_a^x P_y^b)(z)
    Global,
    /// (P_x^a − P_b^z)(y)
    Difference,
    /// solution set of the defining linear system
    Oracle,
    /// M_{xabz}(y), needs x, y, z transversal to a and b
    Restricted,
}

#[derive(Args, Debug)]
struct GammaArgs {
    #[arg(long, default_value = "rat")]
    field: String,
    /// Ambient dimension; needed for the zero subspace literal "".
    #[arg(long)]
    ambient: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, value_enum, default_value_t = Method::Global)]
    method: Method,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Suite name; see --list.
    #[arg(long, required_unless_present = "list")]
    suite: Option<String>,
    /// List the suites and the module each one checks.
    #[arg(long)]
    list: bool,
    #[arg(long, default_value = "f2")]
    field: String,
    #[arg(long, default_value_t = 2)]
    ambient: usize,
    /// Check every case instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Symplectic,
    Split,
    Diag,
}

impl FormArg {
    fn standard(self) -> StandardForm {
        match self {
            FormArg::Symplectic => StandardForm::Symplectic,
            FormArg::Split => StandardForm::Split,
            FormArg::Diag => StandardForm::Diagonal,
        }
    }
}

#[derive(Args, Debug)]
struct LagrangianArgs {
    #[arg(long, value_enum, default_value_t = FormArg::Symplectic)]
    form: FormArg,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value = "f2")]
    field: String,
    /// Print only the number of fixed points.
    #[arg(long)]
    count: bool,
}

#[derive(Args, Debug)]
struct GtableArgs {
    #[arg(long, value_enum, default_value_t = FormArg::Symplectic)]
    form: FormArg,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value = "f3")]
    field: String,
    /// The base point a, a subspace of K²ⁿ.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Unit of the table; defaults to the first element of G(⊥; a).
    #[arg(long, allow_hyphen_values = true)]
    unit: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Gl,
    O,
    Sp,
    U,
}

impl FamilyArg {
    fn kind(self) -> FamilyKind {
        match self {
            FamilyArg::Gl => FamilyKind::GL,
            FamilyArg::O => FamilyKind::O,
            FamilyArg::Sp => FamilyKind::Sp,
            FamilyArg::U => FamilyKind::U,
        }
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["members", "table", "hull_check"])))]
struct HomotopeArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value = "f3")]
    field: String,
    /// The parameter A as "r1c1,r1c2;r2c1,..."; defaults to the zero matrix.
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<String>,
    /// List the members of the family.
    #[arg(long)]
    members: bool,
    /// Print the Cayley table of the family under ·_A.
    #[arg(long)]
    table: bool,
    /// Check that the hull is closed under ·_A with unit 0.
    #[arg(long)]
    hull_check: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BridgeCheck {
    Prop41,
    Thm33,
    Thm37,
}

#[derive(Args, Debug)]
struct BridgeArgs {
    #[arg(long, value_enum)]
    check: BridgeCheck,
    #[arg(long, value_enum, default_value_t = FamilyArg::O)]
    family: FamilyArg,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value = "f5")]
    field: String,
    /// The parameter A; defaults to the identity (O, U) or the standard
    /// symplectic matrix (Sp, even n; zero for odd n).
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<String>,
    /// Adjoint used by thm37: transpose or conj; defaults to the field's.
    #[arg(long)]
    star: Option<String>,
    /// thm37 over every matrix instead of a sample.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, default_value = "f2")]
    field: String,
    #[arg(long, default_value_t = 2)]
    ambient: usize,
    /// Only subspaces of this dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Print only the number of subspaces.
    #[arg(long)]
    count: bool,
}

/// Printed text and whether a law was violated.
struct Outcome {
    text: String,
    violation: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, violation: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                Ok(()) if out.violation => ExitCode::from(1),
                Ok(()) => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    if let Command::Check(args) = &cli.command {
        if args.list {
            return Ok(Outcome::ok(list_suites(cli.format)));
        }
    }
    let field_text = match &cli.command {
        Command::Gamma(a) => &a.field,
        Command::Check(a) => &a.field,
        Command::Lagrangian(a) => &a.field,
        Command::Gtable(a) => &a.field,
        Command::Homotope(a) => &a.field,
        Command::Bridge(a) => &a.field,
        Command::Enumerate(a) => &a.field,
    };
    let field: FieldSpec = field_text.parse()?;
    field.dispatch(Run { cli })
}

struct Run<'a> {
    cli: &'a Cli,
}

impl FieldVisitor for Run<'_> {
    type Output = Result<Outcome>;

    fn visit<F: Field>(self, field: FieldSpec) -> Result<Outcome> {
        let fmt = self.cli.format;
        match &self.cli.command {
            Command::Gamma(a) => gamma::<F>(a, &field, fmt),
            Command::Check(a) => check(a, &field, fmt),
            Command::Lagrangian(a) => lagrangian::<F>(a, &field, fmt),
            Command::Gtable(a) => gtable::<F>(a, &field, fmt),
            Command::Homotope(a) => homotope::<F>(a, &field, fmt),
            Command::Bridge(a) => bridge::<F>(a, &field, fmt),
            Command::Enumerate(a) => enumerate::<F>(a, &field, fmt),
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn subspace_value<F: Field>(s: &Subspace<F>) -> Value {
    serde_json::to_value(s.to_json()).expect("json")
}

/// `dim<TAB>basis literal`, the literal empty for the zero subspace.
fn subspace_tsv<F: Field>(s: &Subspace<F>) -> String {
    let basis = if s.dim() == 0 { String::new() } else { s.basis().to_string() };
    format!("{}\t{}", s.dim(), basis)
}

fn subspace_list<F: Field>(items: &[Subspace<F>], fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(&Value::Array(items.iter().map(subspace_value).collect())),
        Format::Tsv => {
            let mut s = String::from("index\tdim\tbasis\n");
            for (i, x) in items.iter().enumerate() {
                writeln!(s, "{i}\t{}", subspace_tsv(x)).unwrap();
            }
            s
        }
    }
}

fn report_text(report: &Report, fmt: Format) -> String {
    match fmt {
        Format::Json => report.to_json(),
        Format::Tsv => {
            let mut s = String::from("suite\tlaw\tdomain\tcases\tfailures\tfirst_counterexample\tnote\n");
            for r in &report.results {
                let ce = r.first_counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default();
                let note = r.note.clone().unwrap_or_default();
                writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}\t{}", r.suite, r.law, r.domain, r.cases, r.failures, ce, note).unwrap();
            }
            s
        }
    }
}

fn report_outcome(report: &Report, fmt: Format) -> Outcome {
    Outcome { text: report_text(report, fmt), violation: !report.passed() }
}

fn list_suites(fmt: Format) -> String {
    match fmt {
        Format::Json => pretty(&Value::Array(
            SUITES
                .iter()
                .map(|s| json!({"suite": s.name, "module": s.module, "checks": s.checks}))
                .collect(),
        )),
        Format::Tsv => {
            let mut s = String::from("suite\tmodule\tchecks\n");
            for i in SUITES {
                writeln!(s, "{}\t{}\t{}", i.name, i.module, i.checks).unwrap();
            }
            s
        }
    }
}

fn gamma<F: Field>(args: &GammaArgs, field: &FieldSpec, fmt: Format) -> Result<Outcome> {
    let parse = |t: &str| Subspace::<F>::parse(t, args.ambient, field);
    let (x, a, y, b, z) = (parse(&args.x)?, parse(&args.a)?, parse(&args.y)?, parse(&args.b)?, parse(&args.z)?);
    let g = match args.method {
        Method::Global => gamma_global(&x, &a, &y, &b, &z)?,
        Method::Difference => gamma_by_difference(&x, &a, &y, &b, &z)?,
        Method::Oracle => gamma_oracle(&x, &a, &y, &b, &z)?,
        Method::Restricted => gamma_restricted(&x, &a, &y, &b, &z)?,
    };
    Ok(Outcome::ok(match fmt {
        Format::Json => pretty(&json!({
            "field": field.to_string(),
            "method": format!("{:?}", args.method).to_lowercase(),
            "gamma": subspace_value(&g),
        })),
        Format::Tsv => format!("dim\tbasis\n{}\n", subspace_tsv(&g)),
    }))
}

fn check(args: &CheckArgs, field: &FieldSpec, fmt: Format) -> Result<Outcome> {
    let name = args.suite.as_deref().expect("clap requires --suite without --list");
    let cfg = SuiteConfig {
        field: *field,
        ambient: args.ambient,
        exhaustive: args.exhaustive,
        trials: args.trials,
        seed: args.seed,
    };
    Ok(report_outcome(&run_suite(name, &cfg)?, fmt))
}

fn standard_form<F: Field>(form: FormArg, n: usize, field: &FieldSpec) -> Result<Form<F>> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    Form::standard(form.standard(), n, field)
}

fn lagrangian<F: Field>(args: &LagrangianArgs, field: &FieldSpec, fmt: Format) -> Result<Outcome> {
    let inv = ortho_involution(&standard_form::<F>(args.form, args.n, field)?)?;
    let points = fixed_point_census(&inv)?;
    Ok(Outcome::ok(if args.count { points.len().to_string() } else { subspace_list(&points, fmt) }))
}

fn gtable<F: Field>(args: &GtableArgs, field: &FieldSpec, fmt: Format) -> Result<Outcome> {
    let inv = ortho_involution(&standard_form::<F>(args.form, args.n, field)?)?;
    let a = Subspace::<F>::parse(&args.a, Some(2 * args.n), field)?;
    let group = torsor_g(&inv, &a)?;
    let carrier = group.carrier().expect("finite field");
    let unit = match &args.unit {
        Some(u) => Subspace::<F>::parse(u, Some(2 * args.n), field)?,
        None => carrier
            .first()
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("G(⊥; {a}) is empty")))?,
    };
    let table = group.cayley_table(&unit)?;
    Ok(Outcome::ok(match fmt {
        Format::Json => pretty(&table.to_json()),
        Format::Tsv => table.to_tsv(),
    }))
}

fn parameter<F: Field>(text: Option<&str>, n: usize, field: &FieldSpec, default: impl FnOnce() -> Matrix<F>) -> Result<Matrix<F>> {
    let a = match text {
        Some(t) => Matrix::<F>::parse(t, field)?,
        None => default(),
    };
    if (a.rows(), a.cols()) != (n, n) {
        return Err(Error::Shape(format!("A must be {n}x{n}, got {}x{}", a.rows(), a.cols())));
    }
    Ok(a)
}

fn homotope<F: Field>(args: &HomotopeArgs, field: &FieldSpec, fmt: Format) -> Result<Outcome> {
    let n = args.n;
    let a = parameter::<F>(args.a.as_deref(), n, field, || Matrix::zeros(n, n, field))?;
    let fam = ClassicalFamily::new(args.family.kind(), a)?;
    if args.hull_check {
        let law = fam.check_hull_closure()?;
        return Ok(report_outcome(&Report { results: vec![law] }, fmt));
    }
    let members = fam.members()?;
    if args.members {
        return Ok(Outcome::ok(match fmt {
            Format::Json => {
                let mut v = fam.to_json();
                v["members"] = Value::Array(members.iter().map(|m| Value::String(m.to_string())).collect());
                pretty(&v)
            }
            Format::Tsv => {
                let mut s = String::from("index\tmatrix\n");
                for (i, m) in members.iter().enumerate() {
                    writeln!(s, "{i}\t{m}").unwrap();
                }
                s
            }
        }));
    }
    let mut table = Vec::with_capacity(members.len());
    for x in &members {
        let mut row = Vec::with_capacity(members.len());
        for y in &members {
            let p = fam.product(x, y)?;
            let k = members
                .iter()
                .position(|m| *m == p)
                .ok_or_else(|| Error::Precondition(format!("{x} · {y} = {p} left the family")))?;
            row.push(k);
        }
        table.push(row);
    }
    Ok(Outcome::ok(match fmt {
        Format::Json => {
            let mut v = fam.to_json();
            v["elements"] = Value::Array(members.iter().map(|m| Value::String(m.to_string())).collect());
            v["table"] = json!(table);
            pretty(&v)
        }
        Format::Tsv => {
            let mut s = String::from("·");
            for j in 0..members.len() {
                write!(s, "\t{j}").unwrap();
            }
            s.push('\n');
            for (i, row) in table.iter().enumerate() {
                write!(s, "{i}").unwrap();
                for k in row {
                    write!(s, "\t{k}").unwrap();
                }
                s.push('\n');
            }
            s.push('\n');
            for (i, m) in members.iter().enumerate() {
                writeln!(s, "{i}\t{m}").unwrap();
            }
            s
        }
    }))
}

fn bridge<F: Field>(args: &BridgeArgs, field: &FieldSpec, fmt: Format) -> Result<Outcome> {
    let n = args.n;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let report = match args.check {
        BridgeCheck::Thm37 => {
            let star = match &args.star {
                Some(s) => Star::from_name(s)?,
                None if field.has_conjugation() => Star::ConjTranspose,
                None => Star::Transpose,
            };
            let sampling = if args.exhaustive {
                Sampling::Exhaustive
            } else {
                Sampling::Random { trials: args.trials, seed: args.seed }
            };
            theorem37_roundtrip::<F>(n, field, star, sampling)?
        }
        check => {
            let kind = args.family.kind();
            let a = parameter::<F>(args.a.as_deref(), n, field, || default_bridge_parameter(kind, n, field))?;
            if check == BridgeCheck::Prop41 {
                prop41_bridge(kind, &a)?
            } else {
                thm33_bridge(kind, &a)?
            }
        }
    };
    Ok(report_outcome(&report, fmt))
}

fn default_bridge_parameter<F: Field>(kind: FamilyKind, n: usize, field: &FieldSpec) -> Matrix<F> {
    match kind {
        FamilyKind::Sp if n % 2 == 0 => {
            let h = n / 2;
            let one = Matrix::identity(h, field);
            let zero = Matrix::zeros(h, h, field);
            Matrix::block2(&zero, &one, &-&one, &zero).expect("square blocks")
        }
        FamilyKind::Sp => Matrix::zeros(n, n, field),
        _ => Matrix::identity(n, field),
    }
}

fn enumerate<F: Field>(args: &EnumerateArgs, field: &FieldSpec, fmt: Format) -> Result<Outcome> {
    let all = enumerate_subspaces::<F>(field, args.ambient, args.dim)?;
    Ok(Outcome::ok(if args.count { all.len().to_string() } else { subspace_list(&all, fmt) }))
}
