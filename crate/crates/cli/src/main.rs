use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cobordism_schubert::fgl::build_fgl;
use cobordism_schubert::flagring::{c1_weight, FlagContext, FlagElem, Weight};
use cobordism_schubert::oracle;
use cobordism_schubert::par::ExecMode;
use cobordism_schubert::ringcore::{common_denominator, CoeffPoly, Rational, TruncSeries};
use cobordism_schubert::schubert::{
    basis_words, bs_class, c1_times_bs, chow_schubert, expand_in_bs_basis, pieri_exponents,
    product_bs, BSExpansion,
};
use cobordism_schubert::selftest::{self, CheckReport, Status};
use cobordism_schubert::theory::Theory;
use cobordism_schubert::weylops::{is_reduced, Permutation, Word};
use cobordism_schubert::Error;

const MAX_RANK: usize = 5;
const MAX_WORD: usize = 16;

#[derive(Parser)]
#[command(
    name = "omega-schubert",
    version,
    about = "Schubert calculus in algebraic cobordism of flag varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Theory the answer is reported in.
    #[arg(long, global = true, value_enum, default_value_t = TheoryName::Cobordism)]
    theory: TheoryName,
    /// K-theory parameter, a rational such as `1` or `-1/2`.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    beta: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cross-check the result by an independent route.
    #[arg(long, global = true)]
    verify: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryName {
    Cobordism,
    Chow,
    Ktheory,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Class of a Bott-Samelson resolution.
    Bsclass {
        #[arg(long)]
        n: usize,
        /// Comma-separated letters, first letter acting first.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Product of two Bott-Samelson classes in the subword basis.
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// First Chern class of a line bundle times a Bott-Samelson class.
    Chevalley {
        #[arg(long)]
        n: usize,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Coefficients of the formal group law.
    Fgl {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// A Bott-Samelson class written in the reduced-word basis.
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Chow-theoretic Chevalley exponents.
    Pieri {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Run the built-in acceptance checks.
    Selftest {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 20_090_301)]
        seed: u64,
    },
}

enum Failure {
    Engine(Error),
    Verify(String),
    Selftest,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = std::result::Result<(Value, String), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match run(cli) {
        Ok((json, text)) => {
            emit(format, &json, &text);
            ExitCode::SUCCESS
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Usage(_) | Error::MissingAssignment(_) => 2,
                Error::ResourceCap(_) => 3,
                _ => 1,
            })
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Selftest) => ExitCode::from(1),
    }
}

fn emit(format: Format, json: &Value, text: &str) {
    match format {
        Format::Json => println!("{json}"),
        Format::Text => println!("{text}"),
    }
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    let theory = theory(g)?;
    let mode = if g.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::default()
    };
    match &cli.command {
        Command::Bsclass { n, word } => {
            let (ctx, word) = (context(*n, mode)?, parse_word(word, *n)?);
            let class = bs_class(&ctx, &word)?;
            let mut json = json!({"n": n, "word": word.letters(), "theory": theory.to_string()});
            if g.verify {
                verify_chow_class(&ctx, &word, &class)?;
                json["verified"] = json!(true);
            }
            let class = class.specialize(&theory);
            json["class"] = elem_json(&class);
            json["denominator"] = json!(common_denominator(class.terms().map(|t| t.1)).to_string());
            Ok((json, format!("R{word} = {class}")))
        }
        Command::Product { n, left, right } => {
            let ctx = context(*n, mode)?;
            let (l, r) = (parse_word(left, *n)?, parse_word(right, *n)?);
            let exp = product_bs(&ctx, &l, &r)?;
            let mut json = json!({"n": n, "left": l.letters(), "right": r.letters(), "theory": theory.to_string()});
            if g.verify {
                let direct = &bs_class(&ctx, &l)? * &bs_class(&ctx, &r)?;
                if exp.evaluate(&ctx)? != direct {
                    return Err(Failure::Verify(
                        "expansion does not evaluate to the product".into(),
                    ));
                }
                json["verified"] = json!(true);
            }
            let exp = exp.specialize(&theory);
            json["expansion"] = expansion_json(&exp);
            Ok((json, format!("Z{l} * Z{r} = {exp}")))
        }
        Command::Chevalley { n, weight, word } => {
            let ctx = context(*n, mode)?;
            let (lam, word) = (parse_weight(weight)?, parse_word(word, *n)?);
            let exp = c1_times_bs(&ctx, &lam, &word)?;
            let mut json = json!({"n": n, "weight": lam.coords(), "word": word.letters(), "theory": theory.to_string()});
            if g.verify {
                let direct = &c1_weight(&ctx, &lam)? * &bs_class(&ctx, &word)?;
                if exp.evaluate(&ctx)? != direct {
                    return Err(Failure::Verify(
                        "expansion does not evaluate to the product".into(),
                    ));
                }
                json["verified"] = json!(true);
            }
            let exp = exp.specialize(&theory);
            json["expansion"] = expansion_json(&exp);
            Ok((json, format!("c1(L{lam}) * Z{word} = {exp}")))
        }
        Command::Fgl { max_degree } => {
            if *max_degree > 12 {
                return Err(
                    Error::ResourceCap(format!("max degree {max_degree} exceeds 12")).into(),
                );
            }
            let fgl = build_fgl(*max_degree, &theory)?;
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for total in 2..=*max_degree {
                for i in 1..total {
                    let c = fgl.a(i, total - i);
                    text.push(format!("a{i}{} = {c}", total - i));
                    rows.push(json!({"i": i, "j": total - i, "coeff": coeff_json(&c)}));
                }
            }
            for (name, s) in [("F", fgl.law()), ("chi", fgl.chi()), ("q", fgl.q())] {
                text.push(format!("{name} = {}", s.render()));
            }
            let json = json!({
                "max_degree": max_degree,
                "theory": theory.to_string(),
                "coefficients": rows,
                "law": series_json(fgl.law()),
                "chi": series_json(fgl.chi()),
                "q": series_json(fgl.q()),
                "denominator": common_denominator(fgl.law().terms().map(|t| t.1)).to_string(),
            });
            Ok((json, text.join("\n")))
        }
        Command::Expand { n, word } => {
            let (ctx, word) = (context(*n, mode)?, parse_word(word, *n)?);
            let class = bs_class(&ctx, &word)?;
            let coeffs = expand_in_bs_basis(&ctx, &class)?;
            let mut json = json!({"n": n, "word": word.letters(), "theory": theory.to_string()});
            if g.verify {
                let mut back = FlagElem::zero(&ctx);
                for (w, basis_word) in basis_words(*n) {
                    if let Some(c) = coeffs.get(&w) {
                        back = &back + &bs_class(&ctx, &basis_word)?.scale(c);
                    }
                }
                if back != class {
                    return Err(Failure::Verify("basis expansion does not recombine".into()));
                }
                json["verified"] = json!(true);
            }
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for (w, basis_word) in basis_words(*n) {
                let Some(c) = coeffs
                    .get(&w)
                    .map(|c| theory.specialize(c))
                    .filter(|c| !c.is_zero())
                else {
                    continue;
                };
                text.push(format!("({c}) R{basis_word}"));
                rows.push(json!({"permutation": w.one_line(), "word": basis_word.letters(), "coeff": coeff_json(&c)}));
            }
            json["expansion"] = json!(rows);
            let text = if text.is_empty() {
                "0".to_string()
            } else {
                text.join(" + ")
            };
            Ok((json, format!("R{word} = {text}")))
        }
        Command::Pieri { n, weight, word } => {
            check_rank(*n)?;
            let (lam, word) = (parse_weight(weight)?, parse_word(word, *n)?);
            let terms = pieri_exponents(*n, &word, &lam)?;
            let rows: Vec<Value> = terms
                .iter()
                .map(|(w, k)| json!({"word": w.letters(), "pairing": k}))
                .collect();
            let text: Vec<String> = terms.iter().map(|(w, k)| format!("{k} Z{w}")).collect();
            let json =
                json!({"n": n, "weight": lam.coords(), "word": word.letters(), "terms": rows});
            Ok((json, text.join("\n")))
        }
        Command::Selftest { n, seed } => {
            check_rank(*n)?;
            let cfg = selftest::Config {
                n: *n,
                theory: theory.clone(),
                seed: *seed,
                mode,
            };
            let reports = selftest::run_all(&cfg);
            let ok = reports.iter().all(CheckReport::ok);
            let json = json!({
                "n": n,
                "theory": theory.to_string(),
                "ok": ok,
                "checks": reports.iter().map(report_json).collect::<Vec<_>>(),
            });
            let text = reports
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n");
            if ok {
                Ok((json, text))
            } else {
                emit(g.format, &json, &text);
                Err(Failure::Selftest)
            }
        }
    }
}

fn theory(g: &Global) -> Result<Theory, Failure> {
    Ok(match g.theory {
        TheoryName::Cobordism => Theory::Cobordism,
        TheoryName::Chow => Theory::Chow,
        TheoryName::Ktheory => Theory::KTheory(
            g.beta
                .parse::<Rational>()
                .map_err(|_| Error::Usage(format!("bad beta '{}'", g.beta)))?,
        ),
    })
}

fn check_rank(n: usize) -> Result<(), Failure> {
    if n < 2 {
        return Err(Error::Usage(format!("rank must be at least 2, got {n}")).into());
    }
    if n > MAX_RANK {
        return Err(Error::ResourceCap(format!("rank {n} exceeds {MAX_RANK}")).into());
    }
    Ok(())
}

fn context(n: usize, mode: ExecMode) -> Result<FlagContext, Failure> {
    check_rank(n)?;
    Ok(FlagContext::with_mode(n, mode)?)
}

fn parse_word(s: &str, n: usize) -> Result<Word, Failure> {
    let word: Word = s.parse()?;
    word.validate(n)?;
    if word.len() > MAX_WORD {
        return Err(
            Error::ResourceCap(format!("word length {} exceeds {MAX_WORD}", word.len())).into(),
        );
    }
    Ok(word)
}

fn parse_weight(s: &str) -> Result<Weight, Failure> {
    Ok(s.parse()?)
}

/// For a reduced word, the Chow class must be the classical Schubert class.
fn verify_chow_class(ctx: &FlagContext, word: &Word, class: &FlagElem) -> Result<(), Failure> {
    if !is_reduced(word) {
        return Ok(());
    }
    let w = Permutation::from_word(ctx.n(), word)?;
    let chow = class.specialize(&Theory::Chow);
    if chow != chow_schubert(ctx, &w)? {
        return Err(Failure::Verify(
            "class depends on the reduced word in Chow".into(),
        ));
    }
    let expected = oracle::schubert_class(w.one_line());
    let matches = chow.len() == expected.len()
        && chow.terms().all(|(e, c)| {
            let want = expected.get(e).copied().unwrap_or(0);
            c.as_rational()
                .is_some_and(|r| r == Rational::from_integer(want.into()))
        });
    if !matches {
        return Err(Failure::Verify(format!(
            "Chow class differs from the classical class of {w}"
        )));
    }
    Ok(())
}

fn rational_json(r: &Rational) -> (Value, Value) {
    (json!(r.numer().to_string()), json!(r.denom().to_string()))
}

fn coeff_json(c: &CoeffPoly) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(m, r)| {
            let (num, den) = rational_json(r);
            json!({"b": m.pairs(), "num": num, "den": den})
        })
        .collect();
    json!(terms)
}

fn elem_json(a: &FlagElem) -> Value {
    json!(a
        .terms()
        .map(|(e, c)| json!({"x": e, "coeff": coeff_json(c)}))
        .collect::<Vec<_>>())
}

fn series_json(s: &TruncSeries) -> Value {
    json!(s
        .terms()
        .map(|(e, c)| json!({"e": e, "coeff": coeff_json(c)}))
        .collect::<Vec<_>>())
}

fn expansion_json(exp: &BSExpansion) -> Value {
    json!(exp
        .by_word()
        .iter()
        .map(|(w, c)| json!({"word": w.letters(), "coeff": coeff_json(c)}))
        .collect::<Vec<_>>())
}

fn report_json(r: &CheckReport) -> Value {
    let status = match r.status {
        Status::Pass if r.within_limit() => "pass",
        Status::Pass => "slow",
        Status::Fail => "fail",
        Status::Skip => "skip",
    };
    json!({
        "id": r.id,
        "name": r.name,
        "status": status,
        "detail": r.detail,
        "elapsed_ms": r.elapsed.as_millis() as u64,
        "limit_ms": r.limit.as_millis() as u64,
    })
}
