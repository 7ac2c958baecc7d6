fn main() {
    let text = "\
surface S2k0
curve a
curve b
cross x a b
cross y b a
seq a: x y
seq b: x y
";
    // parse without regions to count faces
    let partial = format!("{text}");
    match crosscap_core::parse_config(&partial) {
        Ok(cfg) => {
            let map = crosscap_core::Map::of_config(&cfg).unwrap();
            let faces = crosscap_core::faces::trace_faces(&map);
            println!("faces: {}", faces.faces.len());
            for (i, f) in faces.faces.iter().enumerate() {
                println!("f{i}: degree {} walk {:?}", f.degree(), f.walk.iter().map(|s| (s.arc, s.side)).collect::<Vec<_>>());
            }
        }
        Err(e) => println!("parse error: {e}"),
    }
}
