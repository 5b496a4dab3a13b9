//! Canonical JSON, stacked VTK tracks and label volumes.

use tveg::exgraph::{build_series, build_with_segmentation, Threshold};
use tveg::export::{export_segmentation, export_tracks_geometry, export_tveg_json, read_tveg_json, Stacking};
use tveg::field::Gauss8;
use tveg::temporal::{temporal_arcs, ScoreWeights};
use tveg::tracks::simple_paths;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let series = Gauss8::new([16; 3], 12).generate()?;
    let threshold = Threshold::Fraction(0.05);
    let tv = temporal_arcs(build_series(&series, threshold)?, &ScoreWeights::EQUAL)?;
    let dir = std::env::temp_dir().join("tveg-example-export");
    std::fs::create_dir_all(&dir)?;

    let json = dir.join("tveg.json");
    export_tveg_json(&tv, &json)?;
    assert_eq!(read_tveg_json(&json)?.pairs, tv.pairs);

    let stacking = Stacking { spatial_arcs: true, ..Stacking::default() };
    export_tracks_geometry(&simple_paths(&tv), &tv, &stacking, &dir.join("tracks.vtk"))?;

    let (g, seg) = build_with_segmentation(&series.fields()[0], threshold.resolve(series.range()));
    export_segmentation(&seg, &g, &dir.join("seg_0001"))?;
    println!("wrote tveg.json, tracks.vtk and seg_0001.* to {}", dir.display());
    Ok(())
}
