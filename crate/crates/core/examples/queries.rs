//! Length, deviation, region, window and neighborhood queries.

use tveg::exgraph::{build_series, Threshold};
use tveg::field::Gauss8;
use tveg::query::{events_in_window, least_deviation, select_in_region, track_neighborhood, tracks_longer_than, Region};
use tveg::temporal::{temporal_arcs, ScoreWeights};
use tveg::tracks::simple_paths;

fn main() -> tveg::Result<()> {
    let series = Gauss8::new([24; 3], 20).generate()?;
    let tv = temporal_arcs(build_series(&series, Threshold::Fraction(0.05))?, &ScoreWeights::EQUAL)?;
    let tracks = simple_paths(&tv);

    println!("tracks with >= 8 nodes: {}", tracks_longer_than(&tracks, 8).len());
    for (t, d) in least_deviation(&tracks, &tv, 3)? {
        println!("track {} len {} mean step {d:.4}", t.id, t.len());
    }
    let upper = Region::new([-1.0, 0.0, 0.0], [1.0, 1.0, 1.0])?;
    let sel = select_in_region(&tv, &upper, 1, 5)?;
    println!("upper quadrant, t 1..5: {} maxima, {} temporal arcs", sel.maxima.len(), sel.temporal_arcs.len());
    println!("events in 8..12: {}", events_in_window(&tv, 8, 12)?.len());
    if let Some(t) = tracks.first() {
        let hood = track_neighborhood(&tv, t, 2)?;
        println!("track {} two-hop neighborhood sizes {:?}", t.id, hood.values().map(Vec::len).collect::<Vec<_>>());
    }
    Ok(())
}
