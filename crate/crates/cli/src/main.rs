use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twistcross::action::{check_derived_identities, verify_action};
use twistcross::criteria::{check_criteria, matrix_amplify, CriteriaConfig, Route, Verdict};
use twistcross::crossed::build_crossed_product;
use twistcross::dsl::{self, Document};
use twistcross::report::{emit_report, ActionVerification, CriteriaOutput, Format, GradingCheck, IdentitiesOutput};
use twistcross::search::SearchBudget;
use twistcross::{Error, Field};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "twistcross",
    version,
    about = "Exact toolkit for twisted partial actions and their crossed products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Psi,
    Uv,
}

#[derive(Args)]
struct Common {
    /// Input document.
    file: PathBuf,
    /// Object to use; may be omitted when the document has only one.
    #[arg(long)]
    name: Option<String>,
    /// Override the declared field: `Q` or a prime such as `F5` or `7`.
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Check the postulates of a twisted partial action.
    VerifyAction(Common),
    /// Check the derived identities of a twisted partial action.
    Identities(Common),
    /// Print the crossed product of an action with its canonical grading.
    BuildCrossed(Common),
    /// Check condition (i) and homogeneous non-degeneracy of a grading.
    CheckGrading(Common),
    /// Decide whether a grading is a crossed product, with a certificate.
    CheckCriteria {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = SearchBudget::default().trials)]
        trials: usize,
        #[arg(long, default_value_t = SearchBudget::default().enum_budget)]
        enum_budget: u64,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
    },
    /// Print the grading of `M_n` over a graded algebra.
    Amplify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let digits = t.trim_start_matches(['F', 'f']).trim_start_matches(['_', ' ']);
    let p: u64 = digits
        .parse()
        .map_err(|_| format!("'{s}' is not a field (use Q or F<p>)"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

struct Loaded {
    doc: Document,
    field: Field,
    format: Format,
}

fn load(c: &Common) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(&c.file).map_err(|e| Failure::Input(format!("{}: {e}", c.file.display())))?;
    let doc = dsl::parse_with_field(&text, c.field).map_err(|e| Failure::Input(format!("{}:{e}", c.file.display())))?;
    let field = doc.field(c.field)?;
    let format = match c.format {
        FormatArg::Human => Format::Human,
        FormatArg::Json => Format::Json,
    };
    Ok(Loaded { doc, field, format })
}

fn pick<V>(map: &std::collections::BTreeMap<String, V>, name: &Option<String>, what: &str) -> Result<String, Failure> {
    match name {
        Some(n) if map.contains_key(n) => Ok(n.clone()),
        Some(n) => Err(Failure::Input(format!("no {what} named '{n}'"))),
        None if map.len() == 1 => Ok(map.keys().next().unwrap().clone()),
        None if map.is_empty() => Err(Failure::Input(format!("the document declares no {what}"))),
        None => Err(Failure::Input(format!(
            "several {what}s declared ({}); choose one with --name",
            map.keys().cloned().collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn pass_fail(ok: bool) -> u8 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::VerifyAction(c) => {
            let l = load(&c)?;
            let name = pick(&l.doc.actions, &c.name, "action")?;
            let th = dsl::build_action(&l.doc, &name, l.field)?;
            let out = ActionVerification::new(&name, &th, verify_action(&th));
            print!("{}", emit_report(&out, l.format));
            Ok(pass_fail(out.report.passed()))
        }
        Command::Identities(c) => {
            let l = load(&c)?;
            let name = pick(&l.doc.actions, &c.name, "action")?;
            let th = dsl::build_action(&l.doc, &name, l.field)?;
            let ver = verify_action(&th);
            let ids = if ver.passed() {
                Some(check_derived_identities(&th)?)
            } else {
                None
            };
            let out = IdentitiesOutput::new(&name, ver, ids);
            print!("{}", emit_report(&out, l.format));
            Ok(pass_fail(out.verdict == "pass"))
        }
        Command::BuildCrossed(c) => {
            let l = load(&c)?;
            let name = pick(&l.doc.actions, &c.name, "action")?;
            let th = dsl::build_action(&l.doc, &name, l.field)?;
            let cp = match build_crossed_product(&th) {
                Ok(cp) => cp,
                Err(Error::UnverifiedAction(msg)) => {
                    eprintln!("action {name} is not a twisted partial action: {msg}");
                    return Ok(EXIT_FAIL);
                }
                Err(e) => return Err(e.into()),
            };
            let gb = cp.canonical_grading()?;
            let decl = &l.doc.actions[&name];
            let grp_name = l.doc.action_group(decl).unwrap_or("G").to_string();
            let alg_name = format!("{name}_crossed");
            let mut doc = Document {
                field: Some(l.field.into()),
                ..Default::default()
            };
            doc.groups.insert(grp_name.clone(), dsl::group_decl(gb.group()));
            doc.algebras.insert(alg_name.clone(), dsl::algebra_decl(gb.ambient()));
            doc.gradings
                .insert(format!("{name}_grading"), dsl::grading_decl(&gb, &alg_name, &grp_name));
            print!("{}", dsl::print(&doc));
            Ok(EXIT_PASS)
        }
        Command::CheckGrading(c) => {
            let l = load(&c)?;
            let name = pick(&l.doc.gradings, &c.name, "grading")?;
            let gb = dsl::build_grading(&l.doc, &name, l.field)?;
            let out = GradingCheck::new(&name, &gb);
            print!("{}", emit_report(&out, l.format));
            Ok(pass_fail(out.verdict == "pass"))
        }
        Command::CheckCriteria {
            common: c,
            seed,
            trials,
            enum_budget,
            route,
        } => {
            let l = load(&c)?;
            let name = pick(&l.doc.gradings, &c.name, "grading")?;
            let gb = dsl::build_grading(&l.doc, &name, l.field)?;
            let config = CriteriaConfig {
                route: match route {
                    RouteArg::Auto => Route::Auto,
                    RouteArg::Psi => Route::Psi,
                    RouteArg::Uv => Route::Uv,
                },
                budget: SearchBudget {
                    seed,
                    trials,
                    enum_budget,
                },
            };
            let report = check_criteria(&gb, &config)?;
            let out = CriteriaOutput::new(&name, &gb, &report);
            print!("{}", emit_report(&out, l.format));
            Ok(match report.verdict {
                Verdict::Certificate => EXIT_PASS,
                Verdict::Rejected => EXIT_FAIL,
                Verdict::Undecided => EXIT_UNDECIDED,
            })
        }
        Command::Amplify { common: c, n } => {
            let l = load(&c)?;
            if n == 0 {
                return Err(Failure::Input("--n must be at least 1".into()));
            }
            let name = pick(&l.doc.gradings, &c.name, "grading")?;
            let gb = dsl::build_grading(&l.doc, &name, l.field)?;
            let amp = matrix_amplify(&gb, n)?;
            let src = &l.doc.gradings[&name];
            let alg_name = format!("M{n}_{}", src.algebra);
            let mut doc = Document {
                field: Some(l.field.into()),
                ..Default::default()
            };
            doc.groups.insert(src.group.clone(), l.doc.groups[&src.group].clone());
            doc.algebras.insert(alg_name.clone(), dsl::algebra_decl(amp.ambient()));
            doc.gradings
                .insert(format!("M{n}_{name}"), dsl::grading_decl(&amp, &alg_name, &src.group));
            print!("{}", dsl::print(&doc));
            Ok(EXIT_PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
