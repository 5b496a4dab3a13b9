//! One extremum graph: maxima, saddles and their attributes.

use tveg::exgraph::{build_extremum_graph, neighborhood_contribution, Threshold};
use tveg::field::Gauss8;

fn main() -> tveg::Result<()> {
    let field = Gauss8::new([32; 3], 50).field(1)?;
    let theta = Threshold::Fraction(0.05).resolve(field.range());
    let g = build_extremum_graph(&field, theta)?;
    println!("t={} theta={theta:.4}: {} maxima, {} saddles", g.t, g.maxima.len(), g.saddles.len());
    for m in &g.maxima {
        println!(
            "  {} at {:?} f={:.3} pers={:.3} eta={:.3} cells={}",
            m.id,
            m.position.map(|x| (x * 1000.0).round() / 1000.0),
            m.value,
            m.pers,
            neighborhood_contribution(&g, m.id)?,
            m.dscmfold.len()
        );
    }
    Ok(())
}
