use hardy_dirichlet::polytorus::{hp_norm, QuadratureConfig};
use hardy_dirichlet::series::{DirichletPolynomial, HpIndex};
use num_complex::Complex;

fn main() -> hardy_dirichlet::Result<()> {
    let d = DirichletPolynomial::<f64>::from_terms(vec![
        (1, Complex::new(1.0, 0.0)),
        (6, Complex::new(0.5, 0.0)),
    ])?;
    let f = d.lift()?;
    let norm = hp_norm(&f, HpIndex::new(4.0)?, &QuadratureConfig::default())?;
    println!("{} ({:?})", norm.value, norm.method);
    Ok(())
}
