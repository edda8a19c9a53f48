use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use iso_core::families::{self, Family};
use iso_core::functionals::{evaluate, FunctionalsReport};
use iso_core::optimality::{eqop1, eqop1_root, eqop2, eqop2_root, optimality_residual, OptimalityReport};
use iso_core::output::{scan_csv, svg_line_plot, svg_shape, Series};
use iso_core::variational::fixed_point::cos2_pattern;
use iso_core::variational::{
    kernel_h, opepl_solve_fixedpoint, opepl_solve_fourier, Barrier, FixedPointOptions, FourierOptions,
    VariationalSolution,
};
use iso_core::{Shape, Stadium};

use crate::args::*;

pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn load_shape(path: &Path) -> Result<Shape<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Shape::from_json(&text)?)
}

pub fn shape(cmd: ShapeCmd) -> Result<()> {
    match cmd {
        ShapeCmd::Eval { file, json } => {
            let s = load_shape(&file)?;
            let r = evaluate(&s)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                println!("{}", FunctionalsReport::<f64>::CSV_HEADER);
                println!("{}", r.csv_row());
            }
            Ok(())
        }
        ShapeCmd::Emit { kind, param, out, svg } => {
            let s = emitted_shape(kind, param)?;
            emit(out.as_deref(), &(s.to_json() + "\n"))?;
            if let Some(p) = svg {
                write_file(&p, &svg_shape(&s))?;
            }
            Ok(())
        }
    }
}

pub fn emitted_shape(kind: EmitKind, param: Option<f64>) -> Result<Shape<f64>> {
    Ok(match kind {
        EmitKind::Disk => Shape::unit_disk(),
        EmitKind::Stadium => {
            let t = match param {
                Some(t) => t,
                None => eqop1_root()?,
            };
            Stadium::new(t)?.into()
        }
        EmitKind::Dumbbell => families::dumbbell(),
        EmitKind::Counterexample => {
            let n = param.unwrap_or(4.0);
            if n.fract() != 0.0 || n < 2.0 {
                bail!("the counterexample needs an integer n >= 2, got {n}");
            }
            families::fuglede_counterexample::<f64>(n as u64)?.0
        }
        EmitKind::NearSphere => families::nearly_spherical_mode(param.unwrap_or(0.05), 2, 4096)?.into(),
    })
}

pub fn family(cmd: FamilyCmd) -> Result<()> {
    match cmd {
        FamilyCmd::Scan { family, lo, hi, steps, out, svg } => {
            let fam = match family {
                FamilyKind::Stadium => Family::Stadium,
                FamilyKind::Counterexample => Family::Counterexample,
                FamilyKind::NearSphere => Family::NearSphere,
            };
            let rows = families::scan(fam, lo, hi, steps)?;
            emit(out.as_deref(), &scan_csv(&rows))?;
            if let Some(p) = svg {
                let pts = rows.iter().map(|r| (r.param, r.ratio)).collect();
                let plot = svg_line_plot(
                    &format!("{family:?} family"),
                    "parameter",
                    "δ/λ₀²",
                    &[Series { name: "δ/λ₀²".into(), points: pts }],
                );
                write_file(&p, &plot)?;
            }
            Ok(())
        }
        FamilyCmd::Dumbbell => {
            let r = families::dumbbell_report::<f64>()?;
            println!("{}", scan_csv(&[r]).trim_end());
            println!("# closed form (√2 − 1)/4 + 1/(2π) = {:.12}", families::dumbbell_ratio::<f64>());
            Ok(())
        }
    }
}

fn solution_csv(sol: &VariationalSolution<f64>) -> String {
    let n = sol.u0.len();
    let mut s = String::from("theta,u0,sign\n");
    for (i, (u, sg)) in sol.u0.iter().zip(&sol.sign_pattern).enumerate() {
        let t = std::f64::consts::TAU * i as f64 / n as f64;
        let _ = writeln!(s, "{t:.15e},{u:.15e},{sg}");
    }
    s
}

fn describe(name: &str, sol: &VariationalSolution<f64>) {
    println!(
        "{name}: m = {:.10}  iterations = {}  converged = {}  sign changes = {}  residual = {:.3e}",
        sol.m,
        sol.iterations,
        sol.converged,
        sol.sign_changes(),
        sol.residuals.max()
    );
}

pub fn opepl(cmd: OpeplCmd) -> Result<()> {
    let OpeplCmd::Solve(a) = cmd;
    let mut sols = Vec::new();
    if matches!(a.method, MethodArg::Fourier | MethodArg::Both) {
        let opts = FourierOptions {
            harmonics: a.harmonics,
            grid: a.grid,
            restarts: a.restarts,
            seed: a.seed,
            ..Default::default()
        };
        let (sol, _) = opepl_solve_fourier::<f64>(opts)?;
        describe("fourier", &sol);
        sols.push(("fourier", sol));
    }
    if matches!(a.method, MethodArg::Fixedpoint | MethodArg::Both) {
        if a.grid % 8 != 0 {
            bail!("the fixed-point start sgn cos 2θ needs a grid divisible by 8, got {}", a.grid);
        }
        let sol = opepl_solve_fixedpoint::<f64>(&cos2_pattern(a.grid), FixedPointOptions::default())?;
        describe("fixedpoint", &sol);
        sols.push(("fixedpoint", sol));
    }
    if sols.len() == 2 {
        println!("difference: {:.3e}", (sols[0].1.m - sols[1].1.m).abs());
    }
    if let Some(p) = &a.out {
        if sols.len() == 1 {
            write_file(p, &solution_csv(&sols[0].1))?;
        } else {
            for (name, sol) in &sols {
                write_file(&suffixed(p, name), &solution_csv(sol))?;
            }
        }
    }
    if let Some(p) = &a.svg {
        let series: Vec<Series> = sols
            .iter()
            .map(|(name, sol)| {
                let n = sol.u0.len();
                Series {
                    name: name.to_string(),
                    points: sol
                        .u0
                        .iter()
                        .enumerate()
                        .map(|(i, &u)| (std::f64::consts::TAU * i as f64 / n as f64, u))
                        .collect(),
                }
            })
            .collect();
        write_file(p, &svg_line_plot("minimizer u₀", "θ", "u₀", &series))?;
    }
    Ok(())
}

fn suffixed(p: &Path, tag: &str) -> std::path::PathBuf {
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = p.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    p.with_file_name(format!("{stem}_{tag}.{ext}"))
}

pub fn bound(cmd: BoundCmd) -> Result<()> {
    let BoundCmd::MLower { repair, out } = cmd;
    let b = match repair {
        RepairArg::Continuous => Barrier::continuous(),
        RepairArg::Literal => Barrier::literal(),
    };
    let moment = b.star_moment();
    let m = b.m_lower_bound();
    println!("c5,star_moment,m_lower,quarter_pi_m_lower");
    println!("{:.15e},{:.15e},{:.15e},{:.15e}", b.c5, moment, m, std::f64::consts::FRAC_PI_4 * m);
    if let Some(p) = out {
        let n = 2000;
        let mut s = String::from("x,H,M,M_star\n");
        for i in 0..=n {
            let x = std::f64::consts::PI * i as f64 / n as f64;
            let _ = writeln!(s, "{x:.15e},{:.15e},{:.15e},{:.15e}", kernel_h(x), b.eval(x), b.star(x));
        }
        write_file(&p, &s)?;
    }
    Ok(())
}

pub fn stadium(cmd: StadiumCmd) -> Result<()> {
    let StadiumCmd::Roots = cmd;
    let a = eqop1_root::<f64>()?;
    let b = eqop2_root::<f64>()?;
    let rec = families::stadium_profile(a)?;
    println!("equation,root,residual");
    println!("eqop1,{a:.12},{:.3e}", eqop1(a));
    println!("eqop2,{b:.12},{:.3e}", eqop2(b));
    println!("# |difference| = {:.3e}", (a - b).abs());
    println!(
        "# at the root: delta = {:.10}, lambda0 = {:.10}, delta/lambda0^2 = {:.10}",
        rec.delta, rec.lambda0, rec.ratio
    );
    Ok(())
}

pub fn optimality(cmd: OptimalityCmd) -> Result<()> {
    let OptimalityCmd::Residual { file, out } = cmd;
    let s = load_shape(&file)?.normalize()?;
    let r: OptimalityReport<f64> = optimality_residual(&s)?;
    println!("delta,lambda0,mu1,mu2,len_in,len_out,samples,skipped,max_abs_residual");
    println!(
        "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{},{},{:.12e}",
        r.delta,
        r.lambda0,
        r.mu1,
        r.mu2,
        r.partition.len_in,
        r.partition.len_out,
        r.samples.len(),
        r.skipped,
        r.max_abs_residual
    );
    if let Some(p) = out {
        let mut s = String::from(OptimalityReport::<f64>::CSV_HEADER);
        s.push('\n');
        for row in r.csv_rows() {
            s.push_str(&row);
            s.push('\n');
        }
        write_file(&p, &s)?;
    }
    Ok(())
}
