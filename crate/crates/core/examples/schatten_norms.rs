//! Schatten norms of a few small matrices, including the quasi-norm range
//! `p < 1` and the operator norm.

use clarkson_lab::matcore::{from_real_rows, singular_values};
use clarkson_lab::schatten::{dual_exponent, holder_check, schatten_norm};
use clarkson_lab::SchattenExponent;

fn main() -> clarkson_lab::Result<()> {
    let x = from_real_rows(2, &[3.0, 0.0, 4.0, 5.0]);
    let y = from_real_rows(2, &[1.0, 2.0, 0.5, 1.0]);
    println!("singular values of X: {:?}", singular_values(&x)?.values());

    for p in [0.5, 1.0, 1.5, 2.0, 3.0] {
        let v = schatten_norm(&x, SchattenExponent::new(p)?)?;
        let kind = if v.is_quasi { "quasi-norm" } else { "norm" };
        println!("p = {p:<4} ‖X‖_p = {:.6} ({kind})", v.value);
    }
    println!("p = inf  ‖X‖_p = {:.6}", schatten_norm(&x, SchattenExponent::infinity())?.value);

    let p = 1.5;
    let h = holder_check(&x, &y, p)?;
    println!("Hölder at p = {p}, q = {}: |tr(XY)| = {:.6} <= {:.6}", dual_exponent(p)?, h.lhs, h.rhs);
    Ok(())
}
