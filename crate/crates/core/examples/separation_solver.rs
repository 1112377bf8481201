//! Solve a small separation-constrained least-squares problem and check it
//! against exhaustive search.

use orthogrid::solver::{brute_force_solve, dump, solve, SeparationProblem, DEFAULT_TOLERANCE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Four unit-width boxes in a row; 0 and 3 are connected, and so are 1 and 2.
    let mut p = SeparationProblem::new(vec![0.0, 3.0, 7.0, 12.0], vec![0.5; 4])?;
    for (l, r) in [(0, 1), (1, 2), (2, 3)] {
        p.add_constraint(l, r, 1.0)?;
    }
    p.add_pair(0, 3)?;
    p.add_pair(1, 2)?;

    let z = solve(&p, DEFAULT_TOLERANCE)?;
    let exact = brute_force_solve(&p)?;
    println!("start      {:?}  objective {:.3}", p.initial(), p.objective(p.initial()));
    println!("solve      {:?}  objective {:.3}", rounded(&z), p.objective(&z));
    println!("exhaustive {:?}  objective {:.3}", rounded(&exact), p.objective(&exact));
    println!("feasible: {}", p.is_feasible(&z));
    println!("\n{}", dump::write(&p));
    Ok(())
}

fn rounded(z: &[f64]) -> Vec<f64> {
    z.iter().map(|v| (v * 1000.0).round() / 1000.0).collect()
}
