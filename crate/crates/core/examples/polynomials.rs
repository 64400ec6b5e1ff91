//! Jacobi, Legendre and Chebyshev polynomials: values, derivatives through
//! jets, and orthogonality under Gauss quadrature.
//!
//! ```sh
//! cargo run --example polynomials
//! ```

use jdnn::autodiff::Jet2;
use jdnn::orthopoly::{eval_basis, eval_jacobi, gauss_jacobi, orthogonality_defect, PolyFamily};

fn main() -> jdnn::Result<()> {
    let families = [PolyFamily::Legendre, PolyFamily::Chebyshev1, PolyFamily::jacobi(0.5, -0.5)?];

    println!("first-layer basis at x = 0.3 (degrees 1..=5)");
    for fam in families {
        let vals: Vec<String> = eval_basis(fam, &[1, 2, 3, 4, 5], 0.3)?.iter().map(|v| format!("{v:+.6}")).collect();
        println!("  {:<20} {}", fam.to_string(), vals.join(" "));
    }

    // one forward pass of a jet gives P, P' and P''
    let p = eval_jacobi(PolyFamily::Legendre, 4, Jet2::seed(0.3))?;
    println!("\nP4(0.3) = {:.10}, P4' = {:.10}, P4'' = {:.10}", p.v, p.d1, p.d2);

    println!("\nmax |<P_n, P_m>| for n != m, n, m <= 6");
    for fam in families {
        let mut worst: f64 = 0.0;
        for n in 0..=6 {
            for m in 0..n {
                worst = worst.max(orthogonality_defect(fam, n, m, 32)?.abs());
            }
        }
        println!("  {:<20} {worst:.3e}", fam.to_string());
    }

    let (nodes, weights) = gauss_jacobi(5, 0.5, -0.5);
    println!("\n5-point Gauss-Jacobi(0.5, -0.5)");
    for (x, w) in nodes.iter().zip(&weights) {
        println!("  x = {x:+.12}  w = {w:.12}");
    }
    Ok(())
}
