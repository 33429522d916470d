//! Unitary-orbit certificates: the two-operator case, where unitaries are
//! known to exist, and a triple, where existence is open.

use clarkson_lab::conjecture::{
    bl_two_check, necessary_conditions, unitary_search, verify_certificate, ConjectureInstance, SearchBudget,
};
use clarkson_lab::ensembles::{generate, EnsembleKind, EnsembleSpec};

fn main() -> clarkson_lab::Result<()> {
    let pair = generate(&EnsembleSpec::new(EnsembleKind::Hermitian, 2, 3, 4))?;
    let cert = bl_two_check(pair.get(0), pair.get(1), 2.5, SearchBudget::default(), 1)?;
    println!(
        "pair, p = 2.5: {:?} with residual {:.3e} after {} iterations (restart {})",
        cert.status, cert.residual, cert.iterations, cert.restart
    );

    let triple = generate(&EnsembleSpec::new(EnsembleKind::Ginibre, 3, 3, 4))?;
    for p in [1.5, 3.0] {
        let inst = ConjectureInstance::new(triple.clone(), p)?;
        let nec = necessary_conditions(&inst)?;
        let cert = unitary_search(&inst, SearchBudget::default(), 1)?;
        let check = verify_certificate(&inst, &cert, 1e-7)?;
        println!(
            "triple, p = {p} ({:?}): traces {:.4} vs {:.4}; {:?}, residual {:.3e}, re-verified min eigenvalue {:.3e}",
            inst.direction, nec.trace_lhs, nec.trace_rhs, cert.status, cert.residual, check.min_eigenvalue
        );
    }
    Ok(())
}
