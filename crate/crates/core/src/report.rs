//! Deterministic run reports: the verification suites behind the command
//! line, serialized as stable plain-text records suitable for golden-file
//! comparison. Identical (config, seed) pairs render byte-identical output.

use crate::bethe;
use crate::error::{Error, Result};
use crate::gaudin;
use crate::matrix::Matrix;
use crate::model::ModelSpec;
use crate::psdo;
use crate::repr::{build_tensor_module, TensorModule};
use crate::scalar::Scalar;
use crate::spectral::{self, SectorReport};
use crate::weyl;
use num::{One as _, Zero as _};
use std::fmt;
use std::fmt::Write as _;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Bae,
    Spectrum,
    Oper,
    Character,
    Weyl,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Bae => "bae",
            Command::Spectrum => "spectrum",
            Command::Oper => "oper",
            Command::Character => "character",
            Command::Weyl => "weyl",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub spec: ModelSpec,
    /// None analyzes every sector.
    pub sector: Option<usize>,
    /// Expansion truncation for the operator identities.
    pub order: i64,
    /// q-expansion degree for the character tables.
    pub qdegree: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
            Status::Skip => write!(f, "SKIP"),
        }
    }
}

/// One named check with a stable anchor identifying the claim it verifies.
#[derive(Debug, Clone)]
pub struct Record {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub payload: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: Command,
    /// Config echo, rendered in insertion order.
    pub config: Vec<(String, String)>,
    pub records: Vec<Record>,
}

impl Report {
    fn new(cfg: &RunConfig) -> Report {
        let spec = &cfg.spec;
        let weights = spec
            .weights
            .iter()
            .map(|w| format!("({},{})", w.alpha, w.beta))
            .collect::<Vec<_>>()
            .join(" ");
        let points = spec
            .points
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let sector = match cfg.sector {
            Some(l) => l.to_string(),
            None => "all".into(),
        };
        Report {
            command: cfg.command,
            config: vec![
                ("field".into(), spec.field.to_string()),
                ("weights".into(), weights),
                ("points".into(), points),
                ("sector".into(), sector),
                ("order".into(), cfg.order.to_string()),
                ("qdegree".into(), cfg.qdegree.to_string()),
                ("seed".into(), cfg.seed.to_string()),
            ],
            records: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, anchor: &str, status: Status, payload: String) {
        self.records.push(Record {
            name: name.into(),
            anchor: anchor.into(),
            status,
            payload,
        });
    }

    fn check(&mut self, name: &str, anchor: &str, ok: bool, payload: String) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.record(name, anchor, status, payload);
    }

    pub fn failures(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.status == Status::Fail)
            .count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tool = gaudin-gl11 {TOOL_VERSION}");
        let _ = writeln!(out, "command = {}", self.command.name());
        for (k, v) in &self.config {
            let _ = writeln!(out, "{k} = {v}");
        }
        for r in &self.records {
            if r.payload.is_empty() {
                let _ = writeln!(out, "{} {} [{}]", r.status, r.name, r.anchor);
            } else {
                let _ = writeln!(out, "{} {} [{}] {}", r.status, r.name, r.anchor, r.payload);
            }
        }
        let fails = self.failures();
        let verdict = if fails == 0 { "ok" } else { "fail" };
        let _ = writeln!(
            out,
            "result = {verdict} ({} checks, {fails} failures)",
            self.records.len()
        );
        out
    }
}

fn sectors_of(cfg: &RunConfig, k: usize) -> Result<Vec<usize>> {
    match cfg.sector {
        Some(l) if l >= k => Err(Error::InvalidModel(format!(
            "sector {l} out of range 0..{}",
            k - 1
        ))),
        Some(l) => Ok(vec![l]),
        None => Ok((0..k).collect()),
    }
}

/// Dispatches the configured suite. An `Err` means the input was rejected
/// before any claim could be checked; failed claims are FAIL records.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut rep = Report::new(cfg);
    match cfg.command {
        Command::Verify => {
            let m = build_tensor_module(&cfg.spec)?;
            let sectors = sectors_of(cfg, m.k())?;
            structural_checks(&m, &sectors, &mut rep);
            bae_checks(&m, &sectors, &mut rep)?;
            spectrum_checks(cfg, &mut rep)?;
            oper_checks(&m, cfg.order, &mut rep)?;
        }
        Command::Bae => {
            let m = build_tensor_module(&cfg.spec)?;
            let sectors = sectors_of(cfg, m.k())?;
            bae_checks(&m, &sectors, &mut rep)?;
        }
        Command::Spectrum => spectrum_checks(cfg, &mut rep)?,
        Command::Oper => {
            let m = build_tensor_module(&cfg.spec)?;
            oper_checks(&m, cfg.order, &mut rep)?;
        }
        Command::Character => character_checks(cfg, &mut rep)?,
        Command::Weyl => weyl_checks(cfg, &mut rep)?,
    }
    Ok(rep)
}

fn structural_checks(m: &TensorModule, sectors: &[usize], rep: &mut Report) {
    let hams = gaudin::hamiltonians(m);
    let mut commute = true;
    for a in &hams {
        for b in &hams {
            commute &= a.commutator(b).is_zero();
        }
        for i in 1..=2 {
            for j in 1..=2 {
                commute &= a.commutator(&m.generator_matrix(i, j, 0)).is_zero();
            }
        }
    }
    rep.check(
        "hamiltonians-commute",
        "structure/commuting-family",
        commute,
        format!("{} operators", hams.len()),
    );
    rep.check(
        "pole-expansion",
        "structure/hamiltonian-generating-series",
        gaudin::transfer_h(m) == gaudin::transfer_h_pole_expansion(m),
        String::new(),
    );
    let (g1, g2) = gaudin::transfer_g12(m);
    rep.check(
        "second-transfer-is-g2",
        "structure/transfer-relations",
        gaudin::transfer_t(m) == g2,
        String::new(),
    );
    let zeta = gaudin::zeta(m);
    rep.check(
        "central-series-scalar",
        "structure/central-action",
        g1.is_scalar_multiple_of_identity() == Some(zeta.clone()),
        format!("zeta = {zeta}"),
    );
    let fam = [gaudin::transfer_h(m), gaudin::transfer_t(m), g1, g2];
    let mut preserved = true;
    for &l in sectors {
        let sector: Vec<Vec<Scalar>> = m
            .sector_indices(l)
            .into_iter()
            .map(|i| {
                let mut v = vec![Scalar::zero(); m.dim()];
                v[i] = Scalar::one();
                v
            })
            .collect();
        let sing = m.singular_weight_basis(l);
        for op in &fam {
            preserved &= gaudin::preserves_span(op, &sector);
            preserved &= gaudin::preserves_span(op, &sing);
        }
    }
    rep.check(
        "transfer-preserves-sectors",
        "structure/weight-and-singular-invariance",
        preserved,
        format!("sectors {sectors:?}"),
    );
}

fn bae_checks(m: &TensorModule, sectors: &[usize], rep: &mut Report) -> Result<()> {
    let (_, phi) = bethe::phi_poly(&m.spec);
    rep.record(
        "master-polynomial",
        "bethe/divisibility-condition",
        Status::Pass,
        format!("phi = {phi}"),
    );
    for &l in sectors {
        let sols = bethe::enumerate_divisors(&m.spec, l)?;
        rep.record(
            "divisor-count",
            "bethe/solution-enumeration",
            Status::Pass,
            format!("l = {l}: {} divisors", sols.len()),
        );
        for sol in &sols {
            let shell = bethe::verify_onshell(m, sol);
            let name = "on-shell";
            let anchor = "bethe/eigenvector-construction";
            if shell.multiple_root {
                rep.record(
                    name,
                    anchor,
                    Status::Skip,
                    format!("l = {l}, y = {}: repeated root, vector vanishes", sol.y),
                );
                continue;
            }
            rep.check(
                name,
                anchor,
                shell.all_good(),
                format!(
                    "l = {l}, y = {}, H-eigenvalue = {}, T-eigenvalue = {}",
                    sol.y, shell.expected_h, shell.expected_t
                ),
            );
        }
    }
    Ok(())
}

fn sector_records(s: &SectorReport, rep: &mut Report) {
    rep.check(
        "sector-summary",
        "spectrum/bethe-algebra",
        s.all_good(),
        format!(
            "l = {}: dim {}, algebra dim {}, commutant dim {}, cyclic {}, regular {}, frobenius {}",
            s.l,
            s.sector_dim,
            s.algebra_dim,
            s.commutant_dim,
            s.cyclic,
            s.regular_representation,
            s.frobenius
        ),
    );
    for e in &s.entries {
        rep.check(
            "divisor-spectrum",
            "spectrum/divisor-bijection",
            e.eigen_dim == 1 && e.generalized_dim == e.predicted_generalized_dim,
            format!(
                "l = {}, y = {}, eigen dim {}, generalized dim {} (predicted {}), eigenvalue = {}",
                s.l, e.y, e.eigen_dim, e.generalized_dim, e.predicted_generalized_dim, e.eigenvalue
            ),
        );
    }
    for f in &s.failures {
        rep.record(
            "spectral-claim",
            "spectrum/violation",
            Status::Fail,
            format!("l = {}: {f}", s.l),
        );
    }
}

fn spectrum_checks(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let full = spectral::spectral_report(&cfg.spec, cfg.seed)?;
    let sectors = sectors_of(cfg, full.sectors.len())?;
    for s in &full.sectors {
        if sectors.contains(&s.l) {
            sector_records(s, rep);
        }
    }
    Ok(())
}

fn oper_checks(m: &TensorModule, order: i64, rep: &mut Report) -> Result<()> {
    let ber = psdo::berezinian(m, order)?;
    let (g1, g2) = gaudin::transfer_g12(m);
    let low = ber.coeff(0) == Matrix::identity(m.dim())
        && ber.coeff(1) == g1.scalar_mul(&-crate::ratfunc::RatFunc::one())
        && ber.coeff(2) == g2
        && ber.keys().iter().all(|&k| k >= 0);
    rep.check(
        "berezinian-low-coefficients",
        "oper/expansion-coefficients",
        low,
        String::new(),
    );
    rep.check(
        "universal-oper",
        "oper/closed-form-factorization",
        psdo::universal_oper_form(m, order)? == ber,
        format!("order {order}"),
    );
    let mut checked = 0usize;
    let mut ok = true;
    for l in 0..m.k() {
        for sol in bethe::enumerate_divisors(&m.spec, l)? {
            let (v, multiple) = match bethe::bethe_vector(m, &sol.root_list()) {
                Ok(pair) => pair,
                Err(_) => continue,
            };
            if multiple || v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let dy = psdo::oper_dy(&m.spec, &sol.y, order)?;
            let applied = ber.apply(&v);
            for key in -1..=order {
                let scalar = dy.coeff(key).at(0, 0).clone();
                let got = applied
                    .get(&key)
                    .cloned()
                    .unwrap_or_else(|| vec![crate::ratfunc::RatFunc::zero(); m.dim()]);
                ok &= got.iter().zip(&v).all(|(g, c)| *g == scalar.scale(c));
            }
            checked += 1;
        }
    }
    rep.check(
        "oper-eigenvalue",
        "oper/scalar-action-on-eigenvectors",
        ok,
        format!("{checked} simple-rooted vectors, order {order}"),
    );
    rep.check(
        "truncation-stability",
        "oper/expansion-independence",
        psdo::berezinian(m, order + 2)?.truncate(order) == ber,
        format!("orders {order} and {}", order + 2),
    );
    Ok(())
}

fn character_checks(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let n = cfg.spec.k();
    for l in 0..=n {
        for singular in [false, true] {
            let series = weyl::character_series(n, l, cfg.qdegree, singular);
            let kind = if singular { "singular" } else { "plain" };
            rep.record(
                "character-series",
                "character/graded-dimensions",
                Status::Pass,
                format!("n = {n}, l = {l}, {kind}: {series}"),
            );
        }
    }
    // Cross-check coefficients against the explicit construction where the
    // symbolic computation stays cheap.
    if n <= 3 {
        let dmax = cfg.qdegree.min(4);
        let mut ok = true;
        for l in 0..=n {
            let plain = weyl::character_series(n, l, cfg.qdegree, false);
            let sing = weyl::character_series(n, l, cfg.qdegree, true);
            for d in 0..=dmax {
                let c = weyl::vs_component(n, l, d)?;
                ok &= Scalar::from_int(c.basis.len() as i64) == *plain.coeff(d);
                ok &= Scalar::from_int(weyl::singular_slice(&c).len() as i64) == *sing.coeff(d);
            }
        }
        rep.check(
            "character-matches-construction",
            "character/explicit-basis",
            ok,
            format!("n = {n}, degrees 0..={dmax}"),
        );
    }
    Ok(())
}

/// Reads the highest-weight multiplicities for a Weyl module off the alpha
/// components, which must be positive integers.
fn nparts_of(spec: &ModelSpec) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (s, w) in spec.weights.iter().enumerate() {
        let a = &w.alpha;
        let integral = a.is_rational() && a.re.denom().is_one() && a.re > num::BigRational::zero();
        if !integral || !w.beta.is_zero() {
            return Err(Error::InvalidModel(format!(
                "weight {} is ({},{}); cyclic module construction needs (m,0) with integer m >= 1",
                s + 1,
                w.alpha,
                w.beta
            )));
        }
        let m: usize = a.re.numer().to_string().parse().map_err(|_| {
            Error::InvalidModel(format!("multiplicity {} too large", a.re.numer()))
        })?;
        out.push(m);
    }
    Ok(out)
}

fn weyl_checks(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let nparts = nparts_of(&cfg.spec)?;
    let m = weyl::weyl_module(&nparts, &cfg.spec.points)?;
    let n = m.n();
    rep.check(
        "module-dimension",
        "weyl/dimension",
        m.dim() == 1usize << n,
        format!("n = {n}, dim = {}", m.dim()),
    );
    let psi = m.master_poly();
    rep.record(
        "master-polynomial",
        "weyl/divisibility-condition",
        Status::Pass,
        format!("psi = {psi}"),
    );
    let (bs, cs) = weyl::extract_bc(&m)?;
    let c_text = cs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    rep.record(
        "central-values",
        "weyl/elementary-symmetric-action",
        Status::Pass,
        format!("a = {c_text}"),
    );
    // B_2 acts by n*l on the l-th singular sector.
    let mut b2_ok = true;
    for l in 0..=n {
        let basis = m.singular_weight_basis(l);
        if basis.is_empty() {
            continue;
        }
        let want = Scalar::from_int((n * l) as i64);
        for v in &basis {
            b2_ok &= bs[0].apply(v) == v.iter().map(|c| &want * c).collect::<Vec<_>>();
        }
    }
    rep.check(
        "b2-counts-lowering-operators",
        "weyl/quadratic-coefficient",
        b2_ok,
        format!("n = {n}"),
    );
    let full = spectral::weyl_spectral_report(&m, cfg.spec.field, cfg.seed)?;
    let sectors = sectors_of(cfg, full.sectors.len())?;
    for s in &full.sectors {
        if sectors.contains(&s.l) {
            sector_records(s, rep);
        }
    }
    Ok(())
}
