//! Step-by-step replay of the dual-witness argument for a random triple.

use clarkson_lab::campaign::witness_tuple;
use clarkson_lab::ensembles::{generate, EnsembleKind, EnsembleSpec};
use clarkson_lab::Tolerances;

fn main() -> clarkson_lab::Result<()> {
    let t = generate(&EnsembleSpec::new(EnsembleKind::Ginibre, 3, 3, 7))?;
    let run = witness_tuple(&t, 1.5, &Tolerances::DEFAULT)?;
    let r = &run.replay;
    println!("p = {}, q = {}", r.p, r.q);
    for d in &run.defects {
        println!("  witness for {:<4} ‖B‖_p = {:.6}  pairing defect {:.1e}  norm defect {:.1e}", d.target, d.norm_p, d.pairing_defect, d.norm_defect);
    }
    println!("Σ‖B‖_p^q               = {:.10}", r.combo_mass);
    println!("Re tr(YB + ΣY_ij B_ij) = {:.10}", r.pairing_re);
    println!("Σ‖Y‖_q^p               = {:.10}", r.dual_mass);
    println!("pairing bound          : {:.6} <= {:.6}", r.pairing_bound.lhs, r.pairing_bound.rhs);
    println!("after cancellation     : {:.6} <= {:.6}", r.cancelled.lhs, r.cancelled.rhs);
    println!("direct evaluation      : {:.6} <= {:.6}", r.direct.lhs, r.direct.rhs);
    println!("relative disagreement  : {:.1e}", r.disagreement());
    println!("all checks pass: {}", run.ok);
    Ok(())
}
