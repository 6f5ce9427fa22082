//! One function per subcommand, each returning a finished [`RunReport`].

use std::fs;
use std::path::{Path, PathBuf};

use bettilab::algebra::{
    eliminate_linear, hilbert, invariants, is_regular_sequence, loewy_bound_check, monomials_of_degree,
    parse_ring_specs_with_prime, quotient_ideal_series, Algebra, HomogPoly, InvariantReport, Monomial, ProbeOptions,
    RingSpec,
};
use bettilab::constructions::{golod_quotient_ideal, minors_ideal, optimal_family, sample_regular_point, AdequateMatrix};
use bettilab::formulas::{
    adequate_ideal_series, det_ideal_series, det_power_series, golod_pk, golod_residue_series, graded_ci_pk,
    granularity_bound, gring_granularity, koszul_pk, tate_series, GringParams,
};
use bettilab::linalg::Prime;
use bettilab::resolution::{
    default_jmax, ideal_series_over_polynomial_ring, is_golod_truncated, is_koszul_truncated, koszul_violation,
    minimal_betti_table, BettiTable, ColumnStatus,
};
use bettilab::rng::SplitMix64;
use bettilab::series::{betti_polynomials, BiPoly, RationalSeries};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{Row, RunReport};

/// Usage and parse problems exit with 2, everything else with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Run(m) => f.write_str(m),
        }
    }
}

impl From<bettilab::Error> for CliError {
    fn from(e: bettilab::Error) -> Self {
        use bettilab::Error::*;
        match e {
            Syntax { .. } | NonHomogeneous { .. } | NotPrime(_) | BadRing(_) | BadParameters(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Run(other.to_string()),
        }
    }
}

pub type CmdResult = Result<RunReport, CliError>;

/// Flags shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Common {
    pub prime: Prime,
    pub seed: u64,
    pub imax: Option<usize>,
    pub jmax: Option<u32>,
    pub trials: usize,
    pub cap: Option<u32>,
}

impl Common {
    fn opts(&self) -> ProbeOptions {
        ProbeOptions { trials: self.trials, cap: self.cap, seed: self.seed }
    }

    fn report(&self, command: &str) -> RunReport {
        let mut r = RunReport::new(command, self.prime.value());
        r.inputs.seed = Some(self.seed);
        r
    }
}

fn load(path: &Path, prime: Prime) -> Result<Vec<RingSpec>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_ring_specs_with_prime(&text, prime).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn pick(rings: &[RingSpec], name: Option<&str>) -> Result<RingSpec, CliError> {
    match name {
        None => rings.first().cloned().ok_or_else(|| CliError::Usage("file holds no ring".into())),
        Some(n) => rings
            .iter()
            .find(|r| r.name() == n)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("no ring named {n}"))),
    }
}

/// Generators of the module `R/J'`: `k` for the maximal ideal, otherwise the
/// ideal of another ring over the same variables.
fn module_gens(r: &RingSpec, rings: &[RingSpec], module: &str) -> Result<Vec<HomogPoly>, CliError> {
    if module == "k" {
        return Ok(r.variables());
    }
    let s = pick(rings, Some(module))?;
    if s.vars() != r.vars() || s.prime() != r.prime() {
        return Err(CliError::Usage(format!("{module} and {} use different variables or primes", r.name())));
    }
    Ok(s.gens().to_vec())
}

fn all_proven(t: &BettiTable) -> bool {
    (0..=t.imax()).all(|i| t.column_status(i) == ColumnStatus::Proven)
}

fn statuses(t: &BettiTable) -> Vec<String> {
    (0..=t.imax()).map(|i| format!("{:?}", t.column_status(i))).collect()
}

fn plus_minus_one(s: &RationalSeries) -> Option<(u32, u32)> {
    s.specialize_y().ok()?.pole_orders().ok()
}

// ---- construct ---------------------------------------------------------

fn write_files(dir: &Path, specs: &[&RingSpec], manifest: &mut serde_json::Value) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Run(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for s in specs {
        let name = format!("{}.ring", s.name());
        fs::write(dir.join(&name), format!("{s}\n")).map_err(|e| CliError::Run(e.to_string()))?;
        files.push(name);
    }
    manifest["files"] = json!(files);
    let text = serde_json::to_string_pretty(manifest).expect("serializable") + "\n";
    fs::write(dir.join("manifest.json"), text).map_err(|e| CliError::Run(e.to_string()))?;
    Ok(())
}

pub fn construct_optimal(c: &Common, d: usize, cc: usize, q: usize, a: usize, dir: Option<&Path>) -> CmdResult {
    let mut rep = c.report("construct optimal");
    for (k, v) in [("d", d), ("c", cc), ("q", q), ("a", a)] {
        rep.param(k, v);
    }
    let f = rep.timed("construct", || optimal_family(d, cc, q, a, c.prime))?;
    let mut manifest = json!({ "params": f.params, "predictedGn": f.predicted_gn, "files": [] });
    if let Some(dir) = dir {
        write_files(dir, &[&f.r, &f.s_tilde], &mut manifest)?;
    }
    rep.text.push(format!("{}\n{}", f.r, f.s_tilde));
    if let Some(u) = &f.u {
        let names: Vec<String> = f.s_tilde.vars()[d - f.e..].to_vec();
        rep.text.push(format!("staircase in the u variables:\n{}", u.fmt_with(&names)));
        rep.result("staircase", u);
    }
    rep.text.push(format!("predicted gn = {}", f.predicted_gn));
    rep.result("manifest", manifest);
    rep.result("r", &f.r);
    rep.result("s", &f.s_tilde);
    rep.finish();
    Ok(rep)
}

pub fn construct_staircase(c: &Common, s: usize, h: usize, e: usize, dir: Option<&Path>) -> CmdResult {
    let mut rep = c.report("construct staircase");
    for (k, v) in [("s", s), ("h", h), ("e", e)] {
        rep.param(k, v);
    }
    let u = AdequateMatrix::staircase(s, h, e)?;
    let minors = RingSpec::new("I", c.prime, RingSpec::numbered_vars("x", e), minors_ideal(&u, c.prime))?;
    let golod = golod_quotient_ideal(&u, e, c.prime)?;
    let mut manifest = json!({ "params": { "s": s, "h": h, "e": e }, "files": [] });
    if let Some(dir) = dir {
        write_files(dir, &[&minors, &golod], &mut manifest)?;
    }
    rep.text.push(u.fmt_with(minors.vars()));
    rep.text.push(format!("{minors}\n{golod}"));
    rep.result("matrix", &u);
    rep.result("manifest", manifest);
    rep.result("minors", &minors);
    rep.result("golodQuotient", &golod);
    rep.finish();
    Ok(rep)
}

// ---- series ------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum SeriesKind {
    Tate { dim: u32, codim: u32 },
    Ci { e: u32, degrees: Vec<u32> },
    Adequate { s: u32, h: u32, e: u32 },
    Det { s: u32, h: u32, e: u32 },
    DetIdeal { s: u32, h: u32, e: u32 },
    Gring { c: u32, d: u32, e: u32, a: u32, h: u32 },
    Bound { c: u32, q: u32 },
}

fn describe_series(rep: &mut RunReport, s: &RationalSeries, order: u32) {
    rep.text.push(format!("series: {s}"));
    rep.result("series", s.to_string());
    rep.result("seriesTerms", s);
    if let Ok(u) = s.specialize_y() {
        if let Ok(coeffs) = u.expand_univariate(order) {
            let shown: Vec<String> = coeffs.iter().map(BigInt::to_string).collect();
            rep.text.push(format!("beta_0..{order}: {}", shown.join(" ")));
            rep.result("expansion", shown);
        }
        if let Ok((cx, gn)) = u.pole_orders() {
            rep.text.push(format!("cx = {cx}, gn = {gn}"));
            rep.result("cx", cx);
            rep.result("gn", gn);
        }
        if let Ok(pair) = betti_polynomials(&u) {
            rep.text.push(format!("beta_even = {}, beta_odd = {} (from i = {})", pair.beta_even, pair.beta_odd, pair.valid_from));
            rep.result("quasiPolynomials", pair);
        }
    }
}

fn describe_poly(rep: &mut RunReport, p: &BiPoly) {
    rep.text.push(format!("series: {p}"));
    rep.result("series", p.to_string());
    rep.result("seriesTerms", bettilab::series::bipoly_to_json(p));
}

pub fn series(c: &Common, kind: &SeriesKind) -> CmdResult {
    let order = c.imax.unwrap_or(10) as u32;
    let mut rep;
    match kind {
        SeriesKind::Tate { dim, codim } => {
            rep = c.report("series tate");
            rep.param("dim", dim);
            rep.param("codim", codim);
            describe_series(&mut rep, &tate_series(*dim, *codim), order);
        }
        SeriesKind::Ci { e, degrees } => {
            rep = c.report("series ci");
            rep.param("e", e);
            rep.param("degrees", degrees);
            describe_series(&mut rep, &graded_ci_pk(*e, degrees), order);
        }
        SeriesKind::Adequate { s, h, e } => {
            rep = c.report("series adequate");
            shape_params(&mut rep, *s, *h, *e);
            if *h > *e || *h == 0 || *s == 0 {
                return Err(CliError::Usage(format!("need s >= 1 and 1 <= h <= e (got s={s}, h={h}, e={e})")));
            }
            describe_poly(&mut rep, &adequate_ideal_series(*s, *h, *e));
        }
        SeriesKind::Det { s, h, e } => {
            rep = c.report("series det");
            shape_params(&mut rep, *s, *h, *e);
            describe_poly(&mut rep, &det_power_series(*s, *h, *e)?);
        }
        SeriesKind::DetIdeal { s, h, e } => {
            rep = c.report("series det-ideal");
            shape_params(&mut rep, *s, *h, *e);
            describe_poly(&mut rep, &det_ideal_series(*s, *h, *e)?);
        }
        SeriesKind::Gring { c: cc, d, e, a, h } => {
            rep = c.report("series gring");
            for (k, v) in [("c", cc), ("d", d), ("e", e), ("a", a), ("h", h)] {
                rep.param(k, v);
            }
            let row = gring_row(*cc, *d, *e, *a, *h, c.prime)?;
            let pqj = det_ideal_series(2, *h, *e)?;
            describe_series(&mut rep, &golod_residue_series(*a, *cc, *d, *e, &pqj)?, order);
            rep.rows.push(row);
        }
        SeriesKind::Bound { c: cc, q } => {
            rep = c.report("series bound");
            rep.param("c", cc);
            rep.param("q", q);
            let gn = granularity_bound(*cc, *q)?;
            rep.text.push(format!("max(c - q - 1, 0) = {gn}"));
            rep.result("gn", gn);
        }
    }
    rep.finish();
    Ok(rep)
}

fn shape_params(rep: &mut RunReport, s: u32, h: u32, e: u32) {
    rep.param("s", s);
    rep.param("h", h);
    rep.param("e", e);
}

/// Pole order of the Golod residue series with the determinantal input
/// against the case formula.
fn gring_row(c: u32, d: u32, e: u32, a: u32, h: u32, p: Prime) -> Result<Row, CliError> {
    let params = GringParams::new(c, d, e, a, h)?;
    let want = gring_granularity(&params);
    let pqj = det_ideal_series(2, h, e)?;
    let (_, gn) = golod_residue_series(a, c, d, e, &pqj)?.pole_orders()?;
    let key = [c, d, e, a, h].map(i64::from).to_vec();
    let mut row = Row::new(format!("c={c} d={d} e={e} a={a} h={h}"), key, gn == want, true)
        .with("gn", gn)
        .with("formula", want)
        .with("case", format!("{:?}", params.case_tag));
    row.repro = Some(format!("bettilab --prime {} series gring --c {c} --d {d} --e {e} --a {a} --h {h}", p.value()));
    Ok(row)
}

// ---- hilbert / resolve -------------------------------------------------

pub fn hilbert_cmd(c: &Common, file: &Path, ring: Option<&str>) -> CmdResult {
    let mut rep = c.report("hilbert");
    rep.inputs.files.push(file.display().to_string());
    let r = pick(&load(file, c.prime)?, ring)?;
    rep.param("ring", r.name());
    let jmax = c.jmax.unwrap_or(10);
    rep.param("jmax", jmax);
    let a = Algebra::new(r.clone());
    let h = rep.timed("hilbert", || hilbert(&a, jmax, &c.opts()));
    let shown: Vec<String> = h.values.iter().map(u64::to_string).collect();
    rep.text.push(format!("H_0..{jmax}: {}", shown.join(" ")));
    if let Some(k) = h.krull_dim {
        rep.text.push(format!("dim = {} ({})", k.value(), if k.is_exact() { "exact" } else { "heuristic" }));
    }
    if let (Some(num), Some(k)) = (h.numerator_poly(), h.krull_dim) {
        rep.text.push(format!("series: ({num}) / (1 - z)^{}", k.value()));
    }
    if let Some(m) = h.multiplicity {
        rep.text.push(format!("multiplicity = {m}"));
    }
    rep.result("hilbert", &h);
    rep.finish();
    Ok(rep)
}

fn oracle(c: &Common, rep: &mut RunReport, a: &Algebra, gens: &[HomogPoly], imax_default: usize) -> Result<BettiTable, CliError> {
    let imax = c.imax.unwrap_or(imax_default);
    let jmax = c.jmax.unwrap_or_else(|| default_jmax(a, gens, imax));
    rep.param("imax", imax);
    rep.param("jmax", jmax);
    let t = rep.timed("resolve", || minimal_betti_table(a, gens, imax, jmax))?;
    rep.text.push(t.to_string());
    rep.result("table", &t);
    rep.result("totals", t.totals());
    Ok(t)
}

pub fn resolve_cmd(c: &Common, file: &Path, ring: Option<&str>, module: &str) -> CmdResult {
    let mut rep = c.report("resolve");
    rep.inputs.files.push(file.display().to_string());
    let rings = load(file, c.prime)?;
    let r = pick(&rings, ring)?;
    rep.param("ring", r.name());
    rep.param("module", module);
    let gens = module_gens(&r, &rings, module)?;
    oracle(c, &mut rep, &Algebra::new(r), &gens, 6)?;
    rep.finish();
    Ok(rep)
}

// ---- compare -----------------------------------------------------------

/// Coefficient-wise comparison of a bigraded formula with the oracle table
/// over the complete columns.
fn bigraded_row(id: &str, t: &BettiTable, formula: &RationalSeries, exact: bool) -> Row {
    let expanded = formula.expand(t.imax() as u32);
    let mut diffs = Vec::new();
    for (i, coeffs) in expanded.iter().enumerate() {
        if !t.column_status(i).is_complete() {
            continue;
        }
        for j in 0..=t.jmax() {
            let want = coeffs.coeff(j, 0);
            let got = BigInt::from(t.get(i, j));
            if want != got {
                diffs.push(json!({ "i": i, "j": j, "oracle": got.to_string(), "formula": want.to_string() }));
            }
        }
    }
    let ok = diffs.is_empty() && t.is_complete();
    let mut row = Row::new(id, vec![], ok, exact && all_proven(t)).with("series", formula.to_string());
    if let Some((cx, gn)) = plus_minus_one(formula) {
        row = row.with("cx", cx).with("gn", gn);
    }
    diffs.truncate(10);
    row.with("diffs", diffs).with("columns", statuses(t))
}

fn totals_row(id: &str, t: &BettiTable, formula: &RationalSeries, exact: bool) -> Result<Row, CliError> {
    let want = formula.specialize_y()?.expand_univariate(t.imax() as u32)?;
    let mut diffs = Vec::new();
    for (i, w) in want.iter().enumerate() {
        let got = BigInt::from(t.total(i));
        if t.column_status(i).is_complete() && *w != got {
            diffs.push(json!({ "i": i, "oracle": got.to_string(), "formula": w.to_string() }));
        }
    }
    let ok = diffs.is_empty() && t.is_complete();
    let mut row = Row::new(id, vec![], ok, exact && all_proven(t)).with("series", formula.to_string());
    if let Some((cx, gn)) = plus_minus_one(formula) {
        row = row.with("cx", cx).with("gn", gn);
    }
    Ok(row.with("diffs", diffs).with("columns", statuses(t)))
}

pub fn compare(c: &Common, file: &Path, ring: Option<&str>, module: &str) -> CmdResult {
    let mut rep = c.report("compare");
    rep.inputs.files.push(file.display().to_string());
    let rings = load(file, c.prime)?;
    let r = pick(&rings, ring)?;
    rep.param("ring", r.name());
    rep.param("module", module);
    let gens = module_gens(&r, &rings, module)?;
    let a = Algebra::new(r.clone());
    let t = oracle(c, &mut rep, &a, &gens, 8)?;
    let (imax, jmax) = (t.imax(), t.jmax());
    let e = r.nvars();
    let opts = c.opts();
    let ci = rep.timed("regular sequence", || is_regular_sequence(e, r.gens(), &opts));
    rep.result("completeIntersection", ci);
    let mut notes = Vec::new();
    if module == "k" {
        if ci.value() {
            let degrees: Vec<u32> = r.gens().iter().map(HomogPoly::degree).collect();
            let f = graded_ci_pk(e as u32, &degrees);
            rep.rows.push(bigraded_row("complete intersection", &t, &f, ci.is_exact()));
        }
        match rep.timed("golod test", || is_golod_truncated(&a, imax, jmax)) {
            Ok(true) => {
                let pbi = ideal_series_over_polynomial_ring(&r, jmax)?;
                rep.rows.push(bigraded_row("golod", &t, &golod_pk(e, &pbi)?, true));
                rep.result("golod", "verified through the truncation");
            }
            Ok(false) => rep.result("golod", false),
            Err(err) => rep.result("golod", format!("unverified: {err}")),
        }
        if r.gens().iter().all(|g| g.degree() == 2) && koszul_violation(&t).is_none() {
            let h = hilbert(&a, jmax, &opts);
            if let (Some(num), Some(dim)) = (h.numerator_poly(), h.krull_dim) {
                let hs = RationalSeries::new(num, BiPoly::from_z_coeffs(&[1, -1]).pow(dim.value() as u32), 0)?;
                rep.rows.push(bigraded_row("koszul", &t, &koszul_pk(&hs)?, dim.is_exact() && h.exact));
            }
            rep.result("koszul", "linear through the truncation");
        }
    } else {
        let s = pick(&rings, Some(module))?;
        let inv = rep.timed("invariants", || invariants(&r, Some(&s), &opts))?;
        rep.result("invariants", &inv);
        let golod = rep.timed("golod test", || {
            let sq = eliminate_linear(&s)?;
            is_golod_truncated(&Algebra::new(sq), imax, jmax)
        });
        let golod_ok = match golod {
            Ok(g) => {
                rep.result("golod", g);
                g
            }
            Err(err) => {
                rep.result("golod", format!("unverified: {err}"));
                false
            }
        };
        if ci.value() && golod_ok {
            let (pqj, _) = quotient_ideal_series(&s)?;
            let f = residue_formula(&inv, &pqj)?;
            let exact = ci.is_exact() && tags_exact(&inv);
            rep.rows.push(totals_row("golod residue", &t, &f, exact)?);
        } else {
            notes.push("R must be a complete intersection and S Golod for the residue formula");
        }
    }
    if !notes.is_empty() {
        rep.result("notes", &notes);
    }
    rep.finish();
    Ok(rep)
}

fn tags_exact(inv: &InvariantReport) -> bool {
    [Some(inv.d), Some(inv.c), Some(inv.q), inv.e_s, inv.m_s, inv.a_phi].iter().flatten().all(|t| t.is_exact())
}

fn residue_formula(inv: &InvariantReport, pqj: &BiPoly) -> Result<RationalSeries, CliError> {
    let val = |t: Option<bettilab::algebra::Tagged<i64>>| t.map_or(0, |t| t.value()) as u32;
    Ok(golod_residue_series(val(inv.a_phi), inv.c.value() as u32, inv.d.value() as u32, val(inv.e_s), pqj)?)
}

// ---- verify ------------------------------------------------------------

/// Optional single-point restriction of a grid.
#[derive(Clone, Copy, Debug, Default)]
pub struct Only {
    pub d: Option<usize>,
    pub c: Option<usize>,
    pub q: Option<usize>,
    pub a: Option<usize>,
}

impl Only {
    fn record(&self, rep: &mut RunReport) {
        for (k, v) in [("d", self.d), ("c", self.c), ("q", self.q), ("a", self.a)] {
            if let Some(v) = v {
                rep.param(k, v);
            }
        }
    }
}

fn optimal_grid(dmax: usize, only: Only) -> Vec<(usize, usize, usize, usize)> {
    let keep = |v: usize, f: Option<usize>| f.is_none_or(|x| x == v);
    let mut out = Vec::new();
    for d in 1..=dmax {
        for c in 0..=d {
            for q in 0..=c {
                for a in 0..=c {
                    if keep(d, only.d) && keep(c, only.c) && keep(q, only.q) && keep(a, only.a) {
                        out.push((d, c, q, a));
                    }
                }
            }
        }
    }
    out
}

struct Measured {
    inv: InvariantReport,
    gn: u32,
    series: RationalSeries,
}

fn measure(d: usize, c: usize, q: usize, a: usize, opts: &ProbeOptions, p: Prime) -> Result<Measured, String> {
    let f = optimal_family(d, c, q, a, p).map_err(|e| e.to_string())?;
    let inv = invariants(&f.r, Some(&f.s_tilde), opts).map_err(|e| e.to_string())?;
    let (pqj, _) = quotient_ideal_series(&f.s_tilde).map_err(|e| e.to_string())?;
    let series = residue_formula(&inv, &pqj).map_err(|e| e.to_string())?;
    let (_, gn) = series.pole_orders().map_err(|e| e.to_string())?;
    Ok(Measured { inv, gn, series })
}

fn error_row(id: String, key: Vec<i64>, err: String, repro: String) -> Row {
    let mut row = Row::new(id, key, false, true).with("error", err);
    row.repro = Some(repro);
    row
}

pub fn verify_optimal(c: &Common, dmax: usize, only: Only) -> CmdResult {
    let mut rep = c.report("verify optimal");
    let imax = c.imax.unwrap_or(12);
    rep.param("dmax", dmax);
    rep.param("imax", imax);
    only.record(&mut rep);
    let opts = c.opts();
    let p = c.prime;
    let jmax = c.jmax.unwrap_or(2 * imax as u32 + 6);
    rep.param("jmax", jmax);
    let grid = optimal_grid(dmax, only);
    let rows: Vec<Row> = rep.timed("grid", || {
        grid.par_iter()
            .map(|&(d, cc, q, a)| {
                let id = format!("d={d} c={cc} q={q} a={a}");
                let key = [d, cc, q, a].map(|v| v as i64).to_vec();
                let repro = format!(
                    "bettilab --prime {} --imax {imax} --jmax {jmax} verify optimal --d {d} --c {cc} --q {q} --a {a}",
                    p.value()
                );
                let m = match measure(d, cc, q, a, &opts, p) {
                    Ok(m) => m,
                    Err(err) => return error_row(id, key, err, repro),
                };
                let got = [m.inv.d.value(), m.inv.c.value(), m.inv.q.value(), m.inv.a_phi.map_or(-1, |t| t.value())];
                let want = [d, cc, q, a].map(|v| v as i64);
                let predicted = cc.saturating_sub(q + 1) as u32;
                let mut exact = tags_exact(&m.inv);
                let mut ok = got == want && m.gn == predicted;
                let mut row_detail = Vec::new();
                if imax > 0 {
                    let f = optimal_family(d, cc, q, a, p).expect("built above");
                    let table = minimal_betti_table(&Algebra::new(f.r.clone()), f.s_tilde.gens(), imax, jmax);
                    match (table, m.series.expand_univariate(imax as u32)) {
                        (Ok(t), Ok(want)) => {
                            let totals: Vec<BigInt> = t.totals().into_iter().map(BigInt::from).collect();
                            ok &= totals == want && t.is_complete();
                            exact &= all_proven(&t);
                            row_detail.push(("oracleMatches", json!(totals == want)));
                            row_detail.push(("columns", json!(statuses(&t))));
                        }
                        (Err(err), _) | (_, Err(err)) => {
                            ok = false;
                            row_detail.push(("error", json!(err.to_string())));
                        }
                    }
                }
                let mut row = Row::new(id, key, ok, exact)
                    .with("invariants", got)
                    .with("gn", m.gn)
                    .with("predictedGn", predicted);
                for (k, v) in row_detail {
                    row = row.with(k, v);
                }
                row.repro = Some(repro);
                row
            })
            .collect()
    });
    rep.rows = rows;
    rep.finish();
    Ok(rep)
}

pub fn verify_gring(c: &Common, cmax: usize, dmax: usize, emax: usize, amax: usize) -> CmdResult {
    let mut rep = c.report("verify gring");
    rep.param("cmax", cmax);
    rep.param("dmax", dmax);
    rep.param("emax", emax);
    rep.param("amax", amax);
    let mut grid = Vec::new();
    for d in 0..=dmax as u32 {
        for cc in 0..=d.min(cmax as u32) {
            for e in 1..=emax as u32 {
                for h in 1..=e {
                    for a in 0..=amax as u32 {
                        grid.push((cc, d, e, a, h));
                    }
                }
            }
        }
    }
    let p = c.prime;
    let rows: Result<Vec<Row>, CliError> =
        rep.timed("grid", || grid.par_iter().map(|&(cc, d, e, a, h)| gring_row(cc, d, e, a, h, p)).collect());
    rep.rows = rows?;
    rep.finish();
    Ok(rep)
}

fn random_quadric(rng: &mut SplitMix64, e: usize, p: Prime) -> HomogPoly {
    let mut f = HomogPoly::zero(p, e, 2);
    for m in monomials_of_degree(e, 2) {
        f.add_term(m, rng.next_fp(p));
    }
    f
}

pub fn verify_minmult(c: &Common, emax: usize) -> CmdResult {
    let mut rep = c.report("verify minmult");
    let imax = c.imax.unwrap_or(8);
    rep.param("emax", emax);
    rep.param("imax", imax);
    rep.param("trials", c.trials);
    let p = c.prime;
    let mut jobs = Vec::new();
    for e in 1..=emax {
        for q in 1..=e {
            for t in 0..c.trials {
                jobs.push((e, q, t));
            }
        }
    }
    let base = c.seed;
    let trials = c.trials;
    let rows: Result<Vec<Row>, CliError> = rep.timed("samples", || {
        jobs.par_iter()
            .enumerate()
            .map(|(k, &(e, q, t))| {
                let seed = base.wrapping_add(k as u64);
                let mut rng = SplitMix64::new(seed);
                let forms: Vec<HomogPoly> = (0..q).map(|_| random_quadric(&mut rng, e, p)).collect();
                let opts = ProbeOptions { trials, cap: None, seed };
                let reg = is_regular_sequence(e, &forms, &opts);
                let id = format!("e={e} q={q} trial={t}");
                let key = [e, q, t].map(|v| v as i64).to_vec();
                let spec = RingSpec::new("A", p, RingSpec::numbered_vars("x", e), forms.clone())?;
                let a = Algebra::new(spec.clone());
                let koszul = is_koszul_truncated(&a, imax)?;
                let mult = hilbert(&a, 2 * e as u32 + 2, &opts).multiplicity;
                let minimal = mult == Some(1 << q);
                // the equivalence only speaks about complete intersections
                let ok = !reg.value() || koszul == minimal;
                let mut row = Row::new(id, key, ok, reg.is_exact())
                    .with("regular", reg.value())
                    .with("koszul", koszul)
                    .with("multiplicity", mult)
                    .with("ring", spec.to_string());
                row.repro = Some(format!(
                    "bettilab --prime {} --seed {seed} --imax {imax} --trials 1 verify minmult --emax {e}",
                    p.value()
                ));
                Ok(row)
            })
            .collect()
    });
    rep.rows = rows?;
    let cube = RingSpec::new("A", p, vec!["x".into()], vec![HomogPoly::monomial(p, Monomial::from_exps(&[3]))])?;
    let a = Algebra::new(cube.clone());
    let t = minimal_betti_table(&a, &cube.variables(), 3, 10)?;
    let violation = koszul_violation(&t);
    let mult = hilbert(&a, 4, &c.opts()).multiplicity;
    let ok = violation.is_some() && mult != Some(2);
    rep.rows.push(
        Row::new("fixture x^3", vec![i64::MAX], ok, true)
            .with("firstNonlinear", violation.map(|(i, j)| json!({ "i": i, "j": j })))
            .with("multiplicity", mult)
            .with("ring", cube.to_string()),
    );
    rep.finish();
    Ok(rep)
}

pub fn verify_family(c: &Common, file: Option<&Path>, ring: Option<&str>, q: usize) -> CmdResult {
    let mut rep = c.report("verify family");
    let r = match file {
        Some(f) => {
            rep.inputs.files.push(f.display().to_string());
            pick(&load(f, c.prime)?, ring)?
        }
        None => RingSpec::new(
            "F",
            c.prime,
            vec!["x".into(), "y".into()],
            vec![
                HomogPoly::monomial(c.prime, Monomial::from_exps(&[2, 0])),
                HomogPoly::monomial(c.prime, Monomial::from_exps(&[0, 2])),
                HomogPoly::monomial(c.prime, Monomial::from_exps(&[1, 1])),
            ],
        )?,
    };
    rep.param("forms", r.to_string());
    rep.param("q", q);
    rep.param("trials", c.trials);
    let e = r.nvars();
    let report = rep.timed("samples", || sample_regular_point(e, r.gens(), q, c.seed, c.trials))?;
    let ok = report.pass_ratio >= 0.5;
    rep.text.push(format!("pass ratio {:.3} over {} samples", report.pass_ratio, report.samples.len()));
    rep.rows.push(
        Row::new("generic point", vec![], ok, q == e)
            .with("passRatio", report.pass_ratio)
            .with("passes", report.samples.iter().filter(|s| s.passed).count()),
    );
    rep.result("samples", &report.samples);
    rep.finish();
    Ok(rep)
}

pub fn verify_loewy(c: &Common, dmax: usize, only: Only) -> CmdResult {
    let mut rep = c.report("verify loewy");
    rep.param("dmax", dmax);
    only.record(&mut rep);
    let opts = c.opts();
    let p = c.prime;
    let grid = optimal_grid(dmax, only);
    let rows: Vec<Option<Row>> = rep.timed("grid", || {
        grid.par_iter()
            .map(|&(d, cc, q, a)| {
                let id = format!("d={d} c={cc} q={q} a={a}");
                let key = [d, cc, q, a].map(|v| v as i64).to_vec();
                let repro = format!("bettilab --prime {} verify loewy --d {d} --c {cc} --q {q} --a {a}", p.value());
                let m = match measure(d, cc, q, a, &opts, p) {
                    Ok(m) => m,
                    Err(err) => return Some(error_row(id, key, err, repro)),
                };
                if m.gn != 0 {
                    return None;
                }
                let f = optimal_family(d, cc, q, a, p).expect("built above");
                let row = match loewy_bound_check(&f.r, &[], &opts) {
                    Ok(chk) => Row::new(id, key, chk.holds, chk.exact).with("lhs", chk.lhs).with("rhs", chk.rhs),
                    Err(err) => error_row(id, key, err.to_string(), repro.clone()),
                };
                Some(Row { repro: Some(repro), ..row })
            })
            .collect()
    });
    rep.rows = rows.into_iter().flatten().collect();
    rep.finish();
    Ok(rep)
}

/// `<out>.timings.json`, where phase timings go when `-o` is given.
pub fn timings_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".timings.json");
    out.with_file_name(name)
}
