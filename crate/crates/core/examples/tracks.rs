//! Components, simple paths, overlap refinement and saddle collation.

use tveg::exgraph::{build_series, Threshold};
use tveg::field::Gauss8;
use tveg::temporal::{temporal_arcs, ScoreWeights};
use tveg::tracks::{collate_by_saddle, components, refine_by_overlap, simple_paths};

fn main() -> tveg::Result<()> {
    let series = Gauss8::new([24; 3], 20).generate()?;
    let tv = temporal_arcs(build_series(&series, Threshold::Fraction(0.05))?, &ScoreWeights::EQUAL)?;

    for c in components(&tv) {
        println!("component {}: {} maxima, t {}..{}", c.id, c.nodes.len(), c.t_start, c.t_end);
    }
    let paths = simple_paths(&tv);
    println!("{} simple paths, longest {}", paths.len(), paths.iter().map(|t| t.len()).max().unwrap_or(0));

    let (lo, hi) = series.range();
    let refined = refine_by_overlap(&tv, &series, lo + 0.1 * (hi - lo), 5)?;
    println!("{} refined tracks of length >= 5", refined.len());
    for group in collate_by_saddle(&refined, &tv) {
        println!("  collated {group:?}");
    }
    Ok(())
}
