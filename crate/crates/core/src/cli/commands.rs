use std::fs;
use std::io::Read;
use std::path::Path;

use crate::cli::{
    Cli, Command, GlobalOpts, Outcome, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_RANK, EXIT_USAGE, EXIT_VERIFY,
};
use crate::corpus::generate;
use crate::error::{Error, Result};
use crate::golden;
use crate::io::{CertificateDoc, MatrixDoc, ReportDoc};
use crate::lift::kapranov_upper;
use crate::obstruct::{certify_lower_bound_with, default_budget, CertifyOptions, Gauge, Verdict};
use crate::par::Exec;
use crate::scalars::FieldSpec;
use crate::tropical::trop_rank_with_cap;

const BUILTIN: &str = "builtin:";

fn builtin_doc(name: &str) -> Option<MatrixDoc> {
    let b = golden::by_name(name)?;
    let field = if name == "B" { FieldSpec::Fp(3) } else { FieldSpec::Fp(2) };
    Some(MatrixDoc::new(&b, field).with_name(name).with_provenance("built-in"))
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_matrix(input: &str) -> Result<MatrixDoc> {
    if let Some(name) = input.strip_prefix(BUILTIN) {
        return builtin_doc(name).ok_or_else(|| Error::Parse(format!("unknown built-in matrix {name:?}")));
    }
    MatrixDoc::from_json(&read_text(Path::new(input))?)
}

fn field_of(doc: &MatrixDoc, flag: &Option<String>) -> Result<FieldSpec> {
    match flag {
        Some(f) => f.parse(),
        None => doc.field(),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_gauge(spec: &str, rows: usize, cols: usize) -> Result<Gauge> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [r, c] = parts.as_slice() else {
        return Err(Error::Parse(format!("gauge {spec:?} is not of the form ROW,COL")));
    };
    let r = r.parse().map_err(|_| Error::Parse(format!("bad gauge row {r:?}")))?;
    let c = c.parse().map_err(|_| Error::Parse(format!("bad gauge column {c:?}")))?;
    Gauge::star(rows, cols, r, c)
}

pub(super) fn dispatch(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let result = match &cli.command {
        Command::Troprank { input } => troprank(g, input),
        Command::Lift { input, field, out } => lift(g, input, field, out.as_deref()),
        Command::Verify { certificate } => verify(certificate),
        Command::Certify { input, rank, field, gauge, out, json } => {
            certify(g, input, *rank, field, gauge.as_deref(), out.as_deref(), *json)
        }
        Command::Gen { n, seed, entry_bound, field } => gen(*n, *seed, *entry_bound, field),
        Command::Examples { name } => match builtin_doc(name) {
            Some(doc) => doc.to_json().map(Outcome::ok),
            None => Ok(Outcome::fail(EXIT_USAGE, format!("error: unknown example {name:?} (expected B or D)"))),
        },
    };
    result.unwrap_or_else(Outcome::from)
}

fn troprank(g: &GlobalOpts, input: &str) -> Result<Outcome> {
    let b = load_matrix(input)?.matrix()?;
    Ok(Outcome::ok(format!("{}\n", trop_rank_with_cap(&b, g.cap)?)))
}

fn lift(g: &GlobalOpts, input: &str, field: &Option<String>, out: Option<&Path>) -> Result<Outcome> {
    let doc = load_matrix(input)?;
    let f = field_of(&doc, field)?;
    let b = doc.matrix()?;
    let r = trop_rank_with_cap(&b, g.cap)?;
    if r > 3 {
        return Ok(Outcome::fail(EXIT_RANK, format!("error: tropical rank {r} exceeds 3")));
    }
    let cert = kapranov_upper(&b, f)?;
    let cdoc = CertificateDoc::from_certificate(&cert);
    let text = cdoc.to_json()?;
    let check = CertificateDoc::from_json(&text)?.check()?;
    if !check.passed() {
        return Err(Error::Invariant(format!("certificate fails its own check: {check}")));
    }
    let summary = format!("lift over {f} by {}: {check}\n", cert.method);
    Ok(match out {
        Some(path) => {
            write_file(path, &text)?;
            Outcome::ok(summary)
        }
        None => Outcome { code: EXIT_OK, stdout: text, stderr: summary },
    })
}

fn verify(path: &Path) -> Result<Outcome> {
    let doc = CertificateDoc::from_json(&read_text(path)?)?;
    let check = match doc.check() {
        Ok(c) => c,
        Err(e @ Error::Parse(_)) => return Err(e),
        Err(e) => return Ok(Outcome::fail(EXIT_VERIFY, format!("verification failed: {e}"))),
    };
    Ok(if check.passed() {
        Outcome::ok(format!("{check}\n"))
    } else {
        Outcome::fail(EXIT_VERIFY, format!("verification failed: {check}"))
    })
}

fn certify(
    g: &GlobalOpts,
    input: &str,
    rank: usize,
    field: &Option<String>,
    gauge: Option<&str>,
    out: Option<&Path>,
    json: bool,
) -> Result<Outcome> {
    let doc = load_matrix(input)?;
    let f = field_of(&doc, field)?;
    let b = doc.matrix()?;
    let gauge = gauge.map(|s| parse_gauge(s, b.rows(), b.cols())).transpose()?;
    let opts = CertifyOptions { budget: g.budget.unwrap_or_else(default_budget), gauge, exec: Exec::default(), perm_cap: g.cap };
    let rep = certify_lower_bound_with(&b, rank, f, &opts)?;
    let text = ReportDoc::from_report(&rep).to_json()?;
    if let Some(path) = out {
        write_file(path, &text)?;
    }
    let code = if rep.verdict == Verdict::Certified { EXIT_OK } else { EXIT_INCONCLUSIVE };
    let stdout = if json {
        text
    } else {
        match rep.verdict {
            Verdict::Certified => format!(
                "CERTIFIED: K_{f} >= {} ({} assignments covered, {} nodes)\n",
                rank + 1,
                rep.searched_count,
                rep.nodes_visited
            ),
            Verdict::Inconclusive => format!(
                "INCONCLUSIVE: assignment {} survives every {}-minor ({} nodes)\n",
                rep.searched_count,
                rank + 1,
                rep.nodes_visited
            ),
        }
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn gen(n: usize, seed: u64, entry_bound: i64, field: &str) -> Result<Outcome> {
    let f: FieldSpec = field.parse()?;
    let b = generate(n, seed, entry_bound)?;
    let doc = MatrixDoc::new(&b, f)
        .with_name(format!("gen-n{n}-s{seed}"))
        .with_provenance(format!("min-plus product of seeded 5x3 and 3x{n} factors, seed {seed}, entry bound {entry_bound}"));
    doc.to_json().map(Outcome::ok)
}
