//! Reading and writing space files. A file may list only vertices, in
//! which case the facets are computed; loading always validates.

use normgeo::geometry;
use normgeo::{Error, PolySpace};

const VERTEX_ONLY: &str = r#"{
  "label": "stretched hexagon",
  "dim": 2,
  "vertices": [["2","0"], ["-2","0"], ["1","1"], ["-1","-1"], ["-1","1"], ["1","-1"]]
}"#;

const ASYMMETRIC: &str =
    r#"{"label": "broken", "dim": 2, "vertices": [["1","1"], ["1","-1"], ["-1","1"]]}"#;

fn main() -> normgeo::Result<()> {
    let s = PolySpace::from_json_str(VERTEX_ONLY)?;
    println!("{}", s.to_json());
    println!(
        "dual ball vertices: {:?}",
        s.dual()
            .vertices()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!("validation: {:?}", geometry::validate(&s).verdict);

    match PolySpace::from_json_str(ASYMMETRIC) {
        Err(Error::Invalid(cert)) => println!("broken: {}", cert.note.unwrap_or_default()),
        other => println!("unexpected: {other:?}"),
    }
    match PolySpace::from_json_str(r#"{"label": "x", "dim": 2, "vertices": [["1", "1/0"]]}"#) {
        Err(e) => println!("bad rational: {e}"),
        Ok(_) => unreachable!(),
    }

    let dir = std::env::temp_dir().join("normgeo-example.json");
    s.save(&dir)?;
    assert_eq!(PolySpace::load(&dir)?, s);
    println!("round trip through {} ok", dir.display());
    Ok(())
}
