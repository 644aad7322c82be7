//! End-to-end showcase on the roots-of-unity family: the degree-3 and
//! degree-6 paraorthogonal polynomials from all-zero parameters, whose
//! matrices are permutations and whose zeros are roots of unity. Every
//! printed quantity is recomputed and checked against its closed form; any
//! mismatch fails the run.

use num_complex::Complex64;
use popuc_core::circle::{angular_distance, TAU};
use popuc_core::interlace::{verify_refined_interlacing, Verdict};
use popuc_core::linalg::ZERO;
use popuc_core::{build_cmv, zeros, CirclePoint, ParameterArray};

use crate::report::{verdict_str, Formats, OutputDir};
use crate::svg::{render_svg, Annotations};
use crate::CliError;

const ANGLE_TOL: f64 = 1e-10;

pub fn run_demo(out: &OutputDir, formats: Formats) -> Result<(), CliError> {
    let one = Complex64::new(1.0, 0.0);
    let p3 = ParameterArray::new(vec![ZERO; 2], one).expect("valid");
    let p6 = ParameterArray::new(vec![ZERO; 5], one).expect("valid");

    println!("roots-of-unity demo: C(0,0,1) against C(0,0,0,0,0,1)");

    // Both matrices are permutations; check the nonzero pattern exactly.
    let c3 = build_cmv(&p3);
    let c6 = build_cmv(&p6);
    expect(
        c3.matrix()[(0, 2)] == one && c3.matrix()[(1, 0)] == one && c3.matrix()[(2, 1)] == one,
        "C(0,0,1) is the 3-cycle permutation",
    )?;
    let sixes = [(0usize, 2usize), (1, 0), (2, 4), (3, 1), (4, 5), (5, 3)];
    expect(
        sixes.iter().all(|&(i, j)| c6.matrix()[(i, j)] == one),
        "C(0,0,0,0,0,1) is the expected 6-point permutation",
    )?;

    // Spectra: cube roots and sixth roots of unity.
    let dec3 = zeros(&p3).map_err(CliError::from)?;
    let dec6 = zeros(&p6).map_err(CliError::from)?;
    let want3: Vec<f64> = (0..3).map(|k| TAU * k as f64 / 3.0).collect();
    let want6: Vec<f64> = (0..6).map(|k| TAU * k as f64 / 6.0).collect();
    expect_angles(&dec3.angles(), &want3, "sigma(C(0,0,1))")?;
    expect_angles(&dec6.angles(), &want6, "sigma(C(0,0,0,0,0,1))")?;
    println!("  sigma(C(0,0,1))       = {}", angle_list(&dec3.angles()));
    println!("  sigma(C(0,0,0,0,0,1)) = {}", angle_list(&dec6.angles()));

    // Pseudo-reflection closed form b_j(zeta) = zeta^(5-j).
    let mut worst = 0.0f64;
    for k in 0..16 {
        let zeta = CirclePoint::from_angle(TAU * (k as f64 + 0.37) / 16.0);
        for j in 0..=5usize {
            let got = popuc_core::pseudo_reflection(&p6, zeta, j).map_err(CliError::from)?;
            let want = zeta.to_complex().powu((5 - j) as u32);
            worst = worst.max((got - want).norm());
        }
    }
    expect(
        worst <= 1e-12,
        &format!("pseudo-reflection matches zeta^(5-j), worst deviation {worst:.3e}"),
    )?;
    println!("  b_j(zeta) = zeta^(5-j) verified at 16 sample points (worst {worst:.3e})");

    // The refined interlacing report at m = 2, b_m = 1.
    let report = verify_refined_interlacing(&p6, 2, one).map_err(CliError::from)?;
    expect(report.set_a.len() == 3, "A has the three cube roots of unity")?;
    for (k, point) in report.set_a.points().iter().enumerate() {
        expect(
            angular_distance(point.angle(), TAU * k as f64 / 3.0) <= ANGLE_TOL,
            "A matches the cube roots of unity",
        )?;
    }
    expect(report.set_b.is_empty(), "B is empty")?;
    expect(report.common_agrees, "A equals the directly matched common eigenvalues")?;
    expect(report.alt_expression_agrees, "A equals sigma(N) ∩ sigma(C_m)")?;
    expect(report.bound_ok, "|A| within the min{m+1, n-m} bound")?;
    expect(
        report.interlacing.verdict == Verdict::Strict,
        "strict interlacing of sigma(C_6)\\A against sigma(C_3)",
    )?;
    println!(
        "  A = C = sigma(C(0,0,1)): |A| = {} = min{{m+1, n-m}} = {}",
        report.set_a.len(),
        3
    );
    println!("  B = {{}} (empty)");
    println!(
        "  interlacing sigma(C_6)\\A vs sigma(C_3) ∪ B: {}",
        verdict_str(report.interlacing.verdict)
    );

    if formats.svg {
        let ann = Annotations {
            common: report.set_a.points().to_vec(),
            padding: vec![],
        };
        let svg = render_svg(&[&report.spectrum_full, &report.spectrum_head], &ann);
        if let Some(path) = out.write("demo.svg", &svg)? {
            println!("  wrote {}", path.display());
        }
    }
    if formats.json {
        let payload = crate::report::to_json_pretty(&report);
        if let Some(path) = out.write("demo.json", &payload)? {
            println!("  wrote {}", path.display());
        }
    }
    if formats.csv {
        let csv = crate::report::zeros_csv(&dec6);
        if let Some(path) = out.write("demo_zeros.csv", &csv)? {
            println!("  wrote {}", path.display());
        }
    }

    println!("demo: PASS");
    Ok(())
}

fn expect(ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Verification(format!("demo mismatch: {what}")))
    }
}

fn expect_angles(got: &[f64], want: &[f64], label: &str) -> Result<(), CliError> {
    if got.len() != want.len() {
        return Err(CliError::Verification(format!(
            "{label}: expected {} zeros, found {}",
            want.len(),
            got.len()
        )));
    }
    // Both lists are sorted; compare as circular multisets.
    for w in want {
        let nearest = got
            .iter()
            .map(|g| angular_distance(*g, *w))
            .fold(f64::INFINITY, f64::min);
        if nearest > ANGLE_TOL {
            return Err(CliError::Verification(format!(
                "{label}: angle {w:.12} missing (nearest {nearest:.3e})"
            )));
        }
    }
    Ok(())
}

fn angle_list(angles: &[f64]) -> String {
    let parts: Vec<String> = angles.iter().map(|a| format!("{a:.6}")).collect();
    format!("[{}]", parts.join(", "))
}
