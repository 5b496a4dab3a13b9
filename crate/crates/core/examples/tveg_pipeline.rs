//! Full series to time-varying extremum graph, with per-pair statistics.

use tveg::exgraph::{build_series, Threshold};
use tveg::field::Gauss8;
use tveg::temporal::{temporal_arcs, ScoreWeights};

fn main() -> tveg::Result<()> {
    let series = Gauss8::new([24; 3], 20).generate()?;
    let graphs = build_series(&series, Threshold::Fraction(0.05))?;
    let tv = temporal_arcs(graphs, &ScoreWeights::EQUAL)?;
    for p in &tv.pairs {
        let tau = p.filter.map_or(f64::NAN, |f| f.threshold);
        println!("{:>2} -> {:<2} {:>2} arcs  tau={tau:.3}", p.t, p.t + 1, p.arcs.len());
    }
    let ev = &tv.events;
    println!(
        "merges {} splits {} deletions {} generations {}",
        ev.merges.len(),
        ev.splits.len(),
        ev.deletions.len(),
        ev.generations.len()
    );
    Ok(())
}
