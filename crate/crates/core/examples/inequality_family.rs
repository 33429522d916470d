//! Margins of the Clarkson-McCarthy family on one random pair and one random
//! 4-tuple. Positive margins mean the inequality holds with room to spare.

use clarkson_lab::ensembles::{generate, EnsembleKind, EnsembleSpec};
use clarkson_lab::inequalities::{ak, bcl, clarkson_pair, cm, hk_ntuple, mccarthy, parallelogram};
use clarkson_lab::InequalityReport;

fn show(r: &InequalityReport) {
    println!("  {:<22} p={:<4} lhs={:<12.6} rhs={:<12.6} margin={:+.3e}", r.tag.name(), r.p, r.lhs, r.rhs, r.margin);
}

fn main() -> clarkson_lab::Result<()> {
    let pair = generate(&EnsembleSpec::new(EnsembleKind::Ginibre, 2, 4, 1))?;
    let (a, b) = (pair.get(0), pair.get(1));
    println!("pair, d = 4");
    show(&parallelogram(a, b)?);
    for p in [0.5, 1.5, 3.0] {
        clarkson_pair(a, b, p)?.iter().for_each(show);
    }
    for p in [1.5, 3.0] {
        show(&bcl(a, b, p)?);
        show(&mccarthy(a, b, p)?);
    }

    let tuple = generate(&EnsembleSpec::new(EnsembleKind::Hermitian, 4, 3, 2))?;
    println!("4-tuple, d = 3");
    for p in [1.5, 3.0] {
        show(&hk_ntuple(&tuple, p)?);
        show(&ak(&tuple, p)?);
        show(&cm(&tuple, p)?);
    }

    let equal = generate(&EnsembleSpec::new(EnsembleKind::EqualTuple, 3, 3, 3))?;
    println!("equal 3-tuple: the n-tuple inequality is an equality");
    show(&ak(&equal, 1.5)?);
    Ok(())
}
