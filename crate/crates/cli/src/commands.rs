use num_complex::Complex64;
use serde_json::{json, Value};

use ppb_core::eigenstates::{
    build_state, classify_flow, degeneracy, energy, superpose, PhysParams, StateLabel, Wavefunction,
};
use ppb_core::hydrodynamics::{
    extract_potentials, fit_corner_potential, ExtractOptions, FitOptions, NodeFloor, Region,
    StateFlow, VelocityField,
};
use ppb_core::numgrid::{integrate_streamline, GridSpec};
use ppb_core::verify::{faulty_basis, run_suite, Bound, SuiteConfig};
use ppb_core::Error;

use crate::args::{GlobalOpts, Quantity, StateArgs};
use crate::output::{complex_json, num, Document};

/// Ways a command can end other than success.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    /// The computation ran and the answer is negative; the document is still
    /// written.
    Physics(Box<Document>, String),
    Verification(Box<Document>, String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(..) => 1,
            Failure::Usage(_) => 2,
            Failure::Physics(..) => 3,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn params(g: &GlobalOpts) -> Result<PhysParams, Failure> {
    PhysParams::new(g.hbar, g.mass, g.gamma, g.v0).map_err(usage)
}

pub fn grid(g: &GlobalOpts) -> Result<GridSpec, Failure> {
    let [x0, x1, y0, y1] = g.bounds;
    GridSpec::new(x0, x1, y0, y1, g.res.0, g.res.1).map_err(usage)
}

pub fn energies(p: &PhysParams, state_type: u8, n_max: usize) -> Result<Document, Failure> {
    let mut doc = Document::new(vec![
        "nx",
        "ny",
        "energy_re",
        "energy_im",
        "flow_class",
        "degeneracy",
    ]);
    let mut data = Vec::new();
    for level in 0..=n_max {
        for nx in (0..=level).rev() {
            let ny = level - nx;
            let label = StateLabel::from_type(state_type, nx, ny).map_err(usage)?;
            let e = energy(label, p).value();
            let class = classify_flow(label);
            let deg = degeneracy(state_type, level as i64).map_err(usage)?;
            doc.rows.push(vec![
                nx.to_string(),
                ny.to_string(),
                num(e.re),
                num(e.im),
                class.to_string(),
                deg.to_string(),
            ]);
            data.push(json!({
                "nx": nx,
                "ny": ny,
                "energy": complex_json(e),
                "flow_class": class.name(),
                "degeneracy": deg.to_string(),
            }));
        }
    }
    doc.data = Value::Array(data);
    Ok(doc)
}

fn label(state_type: u8, nx: usize, ny: usize) -> Result<StateLabel, Failure> {
    StateLabel::from_type(state_type, nx, ny).map_err(usage)
}

/// The wavefunction selected on the command line.
pub fn wavefunction(p: &PhysParams, s: &StateArgs) -> Result<Wavefunction, Failure> {
    if s.terms.is_empty() {
        let t = s
            .state_type
            .ok_or_else(|| usage("either --type or --term is required"))?;
        return Ok(build_state(label(t, s.nx, s.ny)?, p));
    }
    let terms = s
        .terms
        .iter()
        .map(|t| Ok((t.coeff, label(t.state_type, t.nx, t.ny)?)))
        .collect::<Result<Vec<(Complex64, StateLabel)>, Failure>>()?;
    let sup = superpose(&terms, p).map_err(usage)?;
    if !sup.is_energy_eigenstate() {
        eprintln!("warning: superposed terms have different energies; the sum is not an energy eigenstate");
    }
    Ok(sup.wavefunction)
}

fn nodal_or(v: Result<Vec<String>, Error>, width: usize) -> Result<Vec<String>, Failure> {
    match v {
        Ok(cells) => Ok(cells),
        Err(Error::NodalRegion { .. }) => Ok(vec!["nodal".to_string(); width]),
        Err(e) => Err(usage(e)),
    }
}

pub fn field(
    p: &PhysParams,
    w: &Wavefunction,
    spec: &GridSpec,
    which: Quantity,
) -> Result<Document, Failure> {
    let points: Vec<(f64, f64)> = spec.points().collect();
    let floor = NodeFloor::over_points(w, &points);
    let flow = StateFlow::new(w, p).with_floor(floor);
    let header = match which {
        Quantity::Psi => vec!["x", "y", "value_re", "value_im"],
        Quantity::Current | Quantity::Velocity => vec!["x", "y", "value_x", "value_y"],
        Quantity::Density | Quantity::Divergence | Quantity::Vorticity => vec!["x", "y", "value"],
    };
    let width = header.len() - 2;
    let mut doc = Document::new(header);
    let mut data = Vec::with_capacity(points.len());
    for (x, y) in points {
        let (cells, value) = match which {
            Quantity::Psi => {
                let z = w.eval(x, y);
                (vec![num(z.re), num(z.im)], complex_json(z))
            }
            Quantity::Density => {
                let d = w.density(x, y);
                (vec![num(d)], json!(d))
            }
            Quantity::Current => {
                let j = flow.current(x, y);
                (vec![num(j[0]), num(j[1])], json!(j))
            }
            Quantity::Velocity => {
                let v = flow.velocity(x, y);
                let value = v.as_ref().map_or(json!("nodal"), |v| json!(v));
                (
                    nodal_or(v.map(|v| vec![num(v[0]), num(v[1])]), width)?,
                    value,
                )
            }
            Quantity::Divergence | Quantity::Vorticity => {
                let s = if which == Quantity::Divergence {
                    flow.divergence(x, y)
                } else {
                    flow.vorticity(x, y)
                };
                let value = s.as_ref().map_or(json!("nodal"), |s| json!(s));
                (nodal_or(s.map(|s| vec![num(s)]), width)?, value)
            }
        };
        let mut row = vec![num(x), num(y)];
        row.extend(cells);
        doc.rows.push(row);
        data.push(json!({ "x": x, "y": y, "value": value }));
    }
    doc.data = Value::Array(data);
    Ok(doc)
}

pub fn streamlines(
    p: &PhysParams,
    w: &Wavefunction,
    bounds: &GridSpec,
    seeds: &[(f64, f64)],
    step: f64,
    max_steps: usize,
) -> Result<Document, Failure> {
    if seeds.is_empty() {
        return Err(usage("at least one --from x,y seed is required"));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(usage(format!("--step must be positive, got {step}")));
    }
    if let Some(&(x, y)) = seeds.iter().find(|&&(x, y)| !bounds.contains(x, y)) {
        return Err(usage(Error::SeedOutOfBounds { x, y }));
    }
    let points: Vec<(f64, f64)> = bounds.points().collect();
    let flow = StateFlow::new(w, p).with_floor(NodeFloor::over_points(w, &points));

    let mut doc = Document::new(vec!["streamline_id", "point_index", "x", "y"]);
    let mut data = Vec::new();
    let mut produced = 0;
    for (id, &seed) in seeds.iter().enumerate() {
        let (reason, pts) =
            match integrate_streamline(|x, y| flow.velocity(x, y), seed, step, max_steps, bounds) {
                Ok(line) => {
                    produced += 1;
                    (line.terminated_by.name(), line.points)
                }
                Err(Error::NodalRegion { .. }) => ("seed_nodal", Vec::new()),
                Err(e) => return Err(usage(e)),
            };
        for (k, &(x, y)) in pts.iter().enumerate() {
            doc.rows
                .push(vec![id.to_string(), k.to_string(), num(x), num(y)]);
        }
        doc.trailer.push(format!(
            "streamline_id={id} seed={},{} points={} terminated_by={reason}",
            num(seed.0),
            num(seed.1),
            pts.len()
        ));
        data.push(json!({
            "streamline_id": id,
            "seed": [seed.0, seed.1],
            "terminated_by": reason,
            "points": pts.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        }));
    }
    doc.data = Value::Array(data);
    if produced == 0 {
        return Err(Failure::Physics(
            Box::new(doc),
            "every seed lies in a nodal region".into(),
        ));
    }
    Ok(doc)
}

fn diagnosis(kind: &'static str, violation: f64) -> Document {
    let mut doc = Document::new(vec!["status", "violation"]);
    doc.rows.push(vec![kind.to_string(), num(violation)]);
    doc.data = json!({ "status": kind, "violation": violation });
    doc
}

pub fn potentials(
    p: &PhysParams,
    w: &Wavefunction,
    spec: &GridSpec,
    tol: f64,
) -> Result<Document, Failure> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(usage(format!("--tol must be positive, got {tol}")));
    }
    let g = p.gamma();
    let region = Region::new(*spec);
    let d = spec.diameter();
    let opts = ExtractOptions {
        premise_tol: tol * g,
        path_tol: tol * g * d * d,
        ..ExtractOptions::for_rate(g, &region)
    };
    let points: Vec<(f64, f64)> = spec.points().collect();
    let flow = StateFlow::new(w, p).with_floor(NodeFloor::over_points(w, &points));
    let pair = match extract_potentials(&flow, &region, &opts) {
        Ok(pair) => pair,
        Err(Error::NotIrrotational { violation }) => {
            return Err(Failure::Physics(
                Box::new(diagnosis("not_irrotational", violation)),
                format!("no velocity potential: max |vorticity| = {violation:e}"),
            ))
        }
        Err(Error::NotSolenoidal { violation }) => {
            return Err(Failure::Physics(
                Box::new(diagnosis("not_solenoidal", violation)),
                format!("no stream function: max |divergence| = {violation:e}"),
            ))
        }
        Err(Error::PathDependent { mismatch }) => {
            return Err(Failure::Physics(
                Box::new(diagnosis("path_dependent", mismatch)),
                format!("line integrals depend on the path: mismatch {mismatch:e}"),
            ))
        }
        Err(Error::NodalRegion { x, y }) => {
            return Err(usage(format!(
                "the region touches a node of the wavefunction at ({x}, {y}); choose --bounds avoiding nodes"
            )))
        }
        Err(e) => return Err(usage(e)),
    };

    let mut doc = Document::new(vec!["x", "y", "phi", "psi"]);
    for s in &pair.samples {
        doc.rows
            .push(vec![num(s.x), num(s.y), num(s.phi), num(s.psi)]);
    }
    let samples: Vec<Value> = pair
        .samples
        .iter()
        .map(|s| json!({ "x": s.x, "y": s.y, "phi": s.phi, "psi": s.psi }))
        .collect();
    let anchor = pair.anchor();
    doc.trailer.push(format!(
        "anchor={},{} path_mismatch={} max_vorticity={} max_divergence={}",
        num(anchor.0),
        num(anchor.1),
        num(pair.path_mismatch),
        num(pair.max_vorticity),
        num(pair.max_divergence)
    ));
    let mut data = json!({
        "status": "ok",
        "anchor": [anchor.0, anchor.1],
        "path_mismatch": pair.path_mismatch,
        "max_vorticity": pair.max_vorticity,
        "max_divergence": pair.max_divergence,
        "samples": samples,
    });

    let fit_opts = FitOptions {
        tol,
        ..FitOptions::default()
    };
    match fit_corner_potential(&pair, &fit_opts) {
        Ok(fit) => {
            let cp = fit.potential;
            doc.trailer.push(format!(
                "fit amplitude={},{} exponent={} residual={}",
                num(cp.amplitude.re),
                num(cp.amplitude.im),
                cp.exponent,
                num(fit.residual)
            ));
            data["fit"] = json!({
                "amplitude": complex_json(cp.amplitude),
                "exponent": cp.exponent,
                "residual": fit.residual,
            });
            doc.data = data;
            Ok(doc)
        }
        Err(Error::NoMonomialFit { best_residual }) => {
            doc.trailer
                .push(format!("fit none best_residual={}", num(best_residual)));
            data["status"] = json!("no_monomial_fit");
            data["fit"] = Value::Null;
            doc.data = data;
            Err(Failure::Physics(
                Box::new(doc),
                format!("no W = A z^a fits (best relative residual {best_residual:e})"),
            ))
        }
        Err(e) => Err(usage(e)),
    }
}

pub fn verify(
    p: &PhysParams,
    n_max: usize,
    seed: u64,
    inject_fault: bool,
) -> Result<Document, Failure> {
    let mut cfg = SuiteConfig::new(*p, n_max, seed);
    if inject_fault {
        cfg = cfg.with_basis(faulty_basis);
    }
    let report = run_suite(&cfg);
    let mut doc = Document::new(vec![
        "criterion",
        "status",
        "measured",
        "bound",
        "limit",
        "check",
        "detail",
    ]);
    let mut data = Vec::new();
    for c in &report.checks {
        let status = if c.passed { "pass" } else { "fail" };
        let (bound, limit) = match c.bound {
            Bound::AtMost(l) => ("at_most", Some(l)),
            Bound::AtLeast(l) => ("at_least", Some(l)),
            Bound::Holds => ("holds", None),
        };
        doc.rows.push(vec![
            c.criterion.to_string(),
            status.to_string(),
            num(c.measured),
            bound.to_string(),
            limit.map_or_else(String::new, num),
            c.name.clone(),
            c.detail.clone(),
        ]);
        data.push(json!({
            "criterion": c.criterion,
            "status": status,
            "measured": c.measured,
            "bound": bound,
            "limit": limit,
            "check": c.name,
            "detail": c.detail,
        }));
        eprintln!("{c}");
    }
    let summary = format!(
        "checks={} failed={} n_max={n_max} seed={seed}",
        report.checks.len(),
        report.failures()
    );
    doc.trailer.push(summary.clone());
    doc.data = Value::Array(data);
    if report.all_passed() {
        eprintln!("verify: {summary}");
        Ok(doc)
    } else {
        Err(Failure::Verification(
            Box::new(doc),
            format!("verification failed: {summary}"),
        ))
    }
}
