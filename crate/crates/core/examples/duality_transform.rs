//! Transfer of the small-exponent inequality to `q >= 2` through norming
//! functionals, printing each link of the chain.

use clarkson_lab::ensembles::{generate, EnsembleKind, EnsembleSpec};
use clarkson_lab::proofs::ak_via_duality;

fn main() -> clarkson_lab::Result<()> {
    let phis = generate(&EnsembleSpec::new(EnsembleKind::Psd, 3, 4, 5))?;
    for q in [2.0, 2.5, 3.0, 4.0] {
        let r = ak_via_duality(&phis, q)?;
        println!("q = {q} (p = {:.4})", r.p);
        println!("  Σ‖x_i‖_p^p          = {:.12}", r.normalization);
        println!("  (Σ‖φ_i‖_q^q)^(1/q)  = {:.10}", r.target);
        println!("  Σ tr(x_i φ_i)        = {:.10}", r.pairing_sum);
        println!("  polarized            = {:.10}", r.polarized);
        println!("  triangle bound       = {:.10}", r.triangle);
        println!("  Hölder bound         = {:.10}", r.holder);
        println!("  dual inequality      : {:.6} <= {:.6} (margin {:+.2e})", r.report.lhs, r.report.rhs, r.report.margin);
    }
    Ok(())
}
