use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use bundles::{build_canonical_flag_with, BundleError, FlagOptions};
use canonical_enum::{
    canonical_set, enumerate_i_canonical, enumerate_symmetric_canonical, quotient_by_symmetry, CanonicalSet, EnumError,
    Mode,
};
use extsol::{s1_invariant_model, verify, Check, ExtsolError, GradedModel, VerificationReport, VerifyOptions, Witness};
use lattice_core::{
    eigenspace_dims, flag_type, grassmannian_target, h_to_e, in_lattice, leq, leq_root_oracle, loop_exponents,
    symmetric_leq, FlagType, LatticeElement, LatticeError, Target,
};

use crate::golden::{check_table, table1, table2};
use crate::{CliError, Command};

pub(crate) fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<bool, CliError> {
    match cmd {
        Command::Info { n, xi, json } => info(out, n, &xi, json),
        Command::Canonical { n, support, symmetric, raw, json } => {
            canonical(out, n, support.as_deref(), symmetric, raw, json)
        }
        Command::Order { n, xi, eta, symmetric, json } => order(out, n, &xi, &eta, symmetric, json),
        Command::Construct { n, xi, seed, degree, json } => construct(out, n, &xi, seed, degree, json.as_deref()),
        Command::Verify { input, involution, json } => verify_file(out, &input, involution, json),
        Command::Tables { which, json } => tables(out, which, json),
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_xi(n: usize, s: &str) -> Result<LatticeElement, CliError> {
    LatticeElement::parse_csv(n, s).map_err(usage)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Two-column `key  value` block.
fn write_pairs(out: &mut dyn Write, rows: &[(&str, String)]) -> std::io::Result<()> {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<w$}  {v}")?;
    }
    Ok(())
}

/// Left-aligned table with a header row.
fn write_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.iter().map(|h| h.to_string()).collect()))?;
    for r in rows {
        writeln!(out, "{}", line(r.clone()))?;
    }
    Ok(())
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

#[derive(Serialize)]
struct InfoReport {
    n: usize,
    xi: Vec<i64>,
    name: String,
    zero: bool,
    in_lattice: bool,
    e_coords: Vec<String>,
    loop_exponents: Option<Vec<i64>>,
    flag_type: Option<FlagType>,
    eigenspace_dims: BTreeMap<i64, usize>,
    r_xi: i64,
    target: Option<Target>,
    symmetric_trivial: bool,
}

fn info(out: &mut dyn Write, n: usize, xi: &str, json: bool) -> Result<bool, CliError> {
    let xi = parse_xi(n, xi)?;
    let member = in_lattice(&xi);
    let eig = eigenspace_dims(&xi);
    let (exps, ft, target) = if member {
        let ft = match flag_type(&xi) {
            Ok(f) => f,
            Err(LatticeError::ZeroElement) => FlagType::trivial(n),
            Err(e) => return Err(usage(e)),
        };
        (Some(loop_exponents(&xi).map_err(usage)?.c), Some(ft), Some(grassmannian_target(&xi).map_err(usage)?))
    } else {
        (None, None, None)
    };
    let report = InfoReport {
        n,
        xi: xi.coeffs().to_vec(),
        name: if xi.is_zero() { "0".into() } else { xi.to_string() },
        zero: xi.is_zero(),
        in_lattice: member,
        e_coords: h_to_e(&xi).e_coeffs.iter().map(|c| c.to_string()).collect(),
        loop_exponents: exps,
        flag_type: ft,
        eigenspace_dims: eig.dims,
        r_xi: eig.r_xi,
        target,
        symmetric_trivial: xi.is_symmetric_trivial(),
    };
    if json {
        json_line(out, &report)?;
        return Ok(true);
    }
    let list = |v: &[String]| format!("[{}]", v.join(", "));
    let mut rows = vec![
        ("xi", format!("{} ({})", report.name, xi.to_csv())),
        ("in lattice", yes(member).to_string()),
        ("e-coords", list(&report.e_coords)),
    ];
    if !member {
        write_pairs(out, &rows)?;
        writeln!(out, "not in lattice")?;
        return Ok(true);
    }
    if report.zero {
        rows.push(("zero element", "yes".into()));
    }
    let exps: Vec<String> = report.loop_exponents.iter().flatten().map(|c| c.to_string()).collect();
    rows.push(("loop exponents", list(&exps)));
    rows.push(("flag type", report.flag_type.as_ref().map(|f| f.to_string()).unwrap_or_default()));
    let eig: Vec<String> = report.eigenspace_dims.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    rows.push(("eigenspace dims", eig.join(" ")));
    rows.push(("r(xi)", report.r_xi.to_string()));
    rows.push(("target", report.target.map(|t| t.to_string()).unwrap_or_default()));
    rows.push(("symmetric-trivial", yes(report.symmetric_trivial).to_string()));
    write_pairs(out, &rows)?;
    Ok(true)
}

fn parse_support(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad support index {t:?}"))))
        .collect()
}

fn canonical_elements(n: usize, support: Option<&[usize]>, mode: Mode) -> Result<CanonicalSet, EnumError> {
    let elements = match (mode, support) {
        (_, None) => return canonical_set(n, mode),
        (Mode::Plain, Some(s)) => enumerate_i_canonical(n, s)?,
        (Mode::Symmetric, Some(s)) => {
            // validates the support the same way as plain mode
            enumerate_i_canonical(n, s)?;
            let mut want = s.to_vec();
            want.sort_unstable();
            want.dedup();
            enumerate_symmetric_canonical(n)?.into_iter().filter(|x| x.support() == want).collect()
        }
    };
    quotient_by_symmetry(n, mode, &elements)
}

#[derive(Serialize)]
struct RawRow {
    coeffs: Vec<i64>,
    name: String,
    support: Vec<usize>,
    target: Target,
    flag_type: FlagType,
}

fn canonical(
    out: &mut dyn Write,
    n: usize,
    support: Option<&str>,
    symmetric: bool,
    raw: bool,
    json: bool,
) -> Result<bool, CliError> {
    let mode = if symmetric { Mode::Symmetric } else { Mode::Plain };
    let support = support.map(parse_support).transpose()?;
    let set = canonical_elements(n, support.as_deref(), mode).map_err(usage)?;
    let csv = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    if raw {
        let rows = set
            .elements
            .iter()
            .map(|x| {
                Ok(RawRow {
                    coeffs: x.coeffs().to_vec(),
                    name: x.to_string(),
                    support: x.support(),
                    target: grassmannian_target(x).map_err(usage)?,
                    flag_type: flag_type(x).map_err(usage)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        if json {
            json_line(out, &rows)?;
        } else if !rows.is_empty() {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.name.clone(), csv_i64(&r.coeffs), csv(&r.support)];
                    if symmetric {
                        row.push(r.target.to_string());
                    }
                    row.push(r.flag_type.to_string());
                    row
                })
                .collect();
            write_table(out, &header(symmetric, false), &table)?;
        }
        return Ok(true);
    }
    if json {
        json_line(out, &set)?;
        return Ok(true);
    }
    if set.orbits.is_empty() {
        return Ok(true);
    }
    let table: Vec<Vec<String>> = set
        .orbits
        .iter()
        .map(|o| {
            let mut row = vec![o.representative.to_string(), o.representative.to_csv(), csv(&o.support)];
            if symmetric {
                row.push(o.target.to_string());
            }
            row.push(o.flag_type.to_string());
            row.push(o.members.len().to_string());
            row
        })
        .collect();
    write_table(out, &header(symmetric, true), &table)?;
    Ok(true)
}

fn csv_i64(v: &[i64]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn header(symmetric: bool, orbits: bool) -> Vec<&'static str> {
    let mut h = vec!["element", "coefficients", "support"];
    if symmetric {
        h.push("target");
    }
    h.push("flag type");
    if orbits {
        h.push("orbit size");
    }
    h
}

#[derive(Serialize)]
struct OrderReport {
    symmetric: bool,
    xi_leq_eta: bool,
    eta_leq_xi: bool,
    /// Root-system check of the plain order (absent in symmetric mode).
    oracle_agrees: Option<bool>,
}

fn order(out: &mut dyn Write, n: usize, xi: &str, eta: &str, symmetric: bool, json: bool) -> Result<bool, CliError> {
    let xi = parse_xi(n, xi)?;
    let eta = parse_xi(n, eta)?;
    let cmp = |a: &LatticeElement, b: &LatticeElement| -> Result<bool, CliError> {
        if symmetric {
            symmetric_leq(a, b).map_err(usage)
        } else {
            leq(a, b).map_err(usage)
        }
    };
    let (ab, ba) = (cmp(&xi, &eta)?, cmp(&eta, &xi)?);
    let oracle_agrees = if symmetric {
        None
    } else {
        let ob = leq_root_oracle(&xi, &eta).map_err(usage)?;
        let oa = leq_root_oracle(&eta, &xi).map_err(usage)?;
        Some(ob == ab && oa == ba)
    };
    let report = OrderReport { symmetric, xi_leq_eta: ab, eta_leq_xi: ba, oracle_agrees };
    if json {
        json_line(out, &report)?;
        return Ok(true);
    }
    let (le, ge) = if symmetric { ("xi <=_I eta", "eta <=_I xi") } else { ("xi <= eta", "eta <= xi") };
    let mut rows = vec![
        ("order", if symmetric { "symmetric".to_string() } else { "dominance".to_string() }),
        ("xi", xi.to_string()),
        ("eta", eta.to_string()),
        (le, yes(ab).to_string()),
        (ge, yes(ba).to_string()),
    ];
    if let Some(ok) = oracle_agrees {
        rows.push(("root oracle agrees", yes(ok).to_string()));
    }
    write_pairs(out, &rows)?;
    Ok(oracle_agrees.unwrap_or(true))
}

fn bundle_error(e: BundleError) -> CliError {
    match e {
        BundleError::Lattice(e) => usage(e),
        e => CliError::Resource(e.to_string()),
    }
}

fn extsol_error(e: ExtsolError) -> CliError {
    match e {
        ExtsolError::Poly(_) | ExtsolError::Bundle(_) => CliError::Resource(e.to_string()),
        e => usage(e),
    }
}

fn check_word(c: &Check) -> &'static str {
    if c.passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Membership { generator, tested, .. } => {
            format!("from generator {generator}: {tested} is not in W")
        }
        Witness::Dimensions { dims, reason } => format!("{reason} ({dims})"),
    }
}

fn report_rows(w: &GradedModel, rep: &VerificationReport) -> Vec<(&'static str, String)> {
    let mut rows = vec![("model", format!("n={} s={} k={}, {} generators", w.n(), w.s(), w.k(), w.generators().len()))];
    let mut checks: Vec<(&'static str, &Check)> = vec![
        ("lambda_module", &rep.lambda_module),
        ("pseudo_horizontal", &rep.pseudo_horizontal),
        ("su_condition", &rep.su_condition),
    ];
    if let Some(c) = &rep.involution {
        checks.push(("involution", c));
    }
    for (name, c) in checks {
        let mut s = check_word(c).to_string();
        if let Some(wit) = &c.witness {
            s.push_str("  ");
            s.push_str(&witness_text(wit));
        }
        rows.push((name, s));
    }
    rows.push(("graded dims", rep.graded_dims.to_string()));
    rows.push(("graded type", rep.graded_type.as_ref().map(|t| t.to_string()).unwrap_or_else(|| "none".into())));
    rows
}

fn construct(
    out: &mut dyn Write,
    n: usize,
    xi: &str,
    seed: u64,
    degree: usize,
    json: Option<&Path>,
) -> Result<bool, CliError> {
    let xi = parse_xi(n, xi)?;
    if xi.is_zero() {
        return Err(CliError::Usage("the zero element has no canonical flag".into()));
    }
    if !xi.is_dominant() {
        return Err(usage(LatticeError::NotDominant(xi.to_string())));
    }
    let ft = flag_type(&xi).map_err(usage)?;
    let flag = build_canonical_flag_with(&xi, seed, &FlagOptions { degree }).map_err(bundle_error)?;
    let w = s1_invariant_model(&flag, &ft).map_err(extsol_error)?;
    let rep = verify(&w, &VerifyOptions { involution: true }).map_err(extsol_error)?;
    let type_ok = rep.graded_type.as_ref() == Some(&ft);
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&w).map_err(usage)?;
        std::fs::write(path, format!("{text}\n"))?;
    }
    let ranks: Vec<String> = flag.ranks().iter().map(|r| r.to_string()).collect();
    let mut rows = vec![
        ("xi", xi.to_string()),
        ("seed", seed.to_string()),
        ("flag type", ft.to_string()),
        ("flag ranks", format!("{} (A_{}..A_{})", ranks.join(","), flag.lo, flag.hi())),
    ];
    rows.extend(report_rows(&w, &rep));
    rows.push(("type matches", yes(type_ok).to_string()));
    if let Some(path) = json {
        rows.push(("written", path.display().to_string()));
    }
    write_pairs(out, &rows)?;
    Ok(rep.passed() && type_ok)
}

fn verify_file(out: &mut dyn Write, input: &Path, involution: bool, json: bool) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(input)?;
    let w: GradedModel =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", input.display())))?;
    let rep = verify(&w, &VerifyOptions { involution }).map_err(extsol_error)?;
    if json {
        json_line(out, &rep)?;
    } else {
        write_pairs(out, &report_rows(&w, &rep))?;
    }
    Ok(rep.passed())
}

fn tables(out: &mut dyn Write, which: u8, json: bool) -> Result<bool, CliError> {
    let table = if which == 1 { table1() } else { table2() };
    let report = check_table(&table)?;
    if json {
        json_line(out, &report)?;
        return Ok(report.passed());
    }
    let w = report.cells.iter().map(|c| c.label.len()).max().unwrap_or(0);
    for c in &report.cells {
        writeln!(out, "{:<w$}  {}", c.label, if c.passed { "PASS" } else { "FAIL" })?;
        for p in &c.problems {
            writeln!(out, "    {p}")?;
        }
    }
    writeln!(out, "table {which}: {}", if report.passed() { "PASS" } else { "FAIL" })?;
    Ok(report.passed())
}
