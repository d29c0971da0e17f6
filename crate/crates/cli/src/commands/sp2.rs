use clap::Args;
use dqho::sp2::{defect_poly_with_cap, dominance_radius, lowest_degree, DEFAULT_DEGREE_CAP};

use crate::report::{num, AtRecord, CliError, Table};

#[derive(Debug, Args)]
pub struct Sp2DefectArgs {
    /// Product-formula order p (1 to 3)
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Degree cap for the coefficient arrays
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    cap: usize,
    /// Relative tolerance for the lowest nonzero degree
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
}

/// Columns `degree,re_a,im_a,re_b,im_b,re_c,im_c` for
/// `f_p(s) = Σ s^d (a_d x² + b_d p² + c_d {x,p})`.
pub fn sp2_defect(args: &Sp2DefectArgs) -> Result<Table, CliError> {
    let record = || format!("p={}", args.order);
    let poly = defect_poly_with_cap(args.order, args.cap).at(record)?;
    let mut table = Table::new(&["degree", "re_a", "im_a", "re_b", "im_b", "re_c", "im_c"]);
    for (d, v) in poly.coeffs().iter().enumerate() {
        table.row(vec![
            d.to_string(),
            num(v.a.re),
            num(v.a.im),
            num(v.b.re),
            num(v.b.im),
            num(v.c.re),
            num(v.c.im),
        ]);
    }
    let low = lowest_degree(&poly, args.rel_tol).at(record)?;
    let radius = dominance_radius(&poly, args.rel_tol).at(record)?;
    table.note(format!(
        "lowest_degree={low} dominance_radius={}",
        num(radius)
    ));
    Ok(table)
}
