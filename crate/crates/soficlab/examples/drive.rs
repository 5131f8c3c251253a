//! End-to-end smoke drive: parse user-style JSON presentations, compute the
//! census, period data, Fischer cover, entropy, and a decision, printing
//! machine-readable output.

use soficlab::format::parse_presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let even = parse_presentation(
        r#"{
            "type": "edge-labeled",
            "alphabet": ["0", "1"],
            "vertices": ["A", "B"],
            "edges": [
                {"src": "A", "dst": "A", "label": "1"},
                {"src": "A", "dst": "B", "label": "0"},
                {"src": "B", "dst": "A", "label": "0"}
            ]
        }"#,
    )?;
    let orbit = parse_presentation(
        r#"{
            "type": "edge-labeled",
            "alphabet": ["0", "1"],
            "vertices": ["c0", "c1", "c2"],
            "edges": [
                {"src": "c0", "dst": "c1", "label": "1"},
                {"src": "c1", "dst": "c2", "label": "0"},
                {"src": "c2", "dst": "c0", "label": "0"}
            ]
        }"#,
    )?;

    let census = soficlab::census::census(&even, 6)?;
    println!("census(even, 6) = {}", serde_json::to_string(&census)?);

    let report = soficlab::period::period_of(&even, 6)?;
    println!("period(even) = {}", serde_json::to_string(&report)?);

    let fischer = even.fischer()?;
    println!(
        "fischer(even): {} vertices, magic word nonempty: {}",
        fischer.graph().vertex_count(),
        !fischer.magic_word().0.is_empty()
    );

    let verdict = soficlab::decide::decide_s_factorizable(&orbit, &even, 6)?;
    println!(
        "decide s-fact(orbit100 -> even) = {}",
        serde_json::to_string(&verdict)?
    );

    let entropy = soficlab::entropy::entropy(&even)?;
    println!("entropy(even) = {}", serde_json::to_string(&entropy)?);

    let one = soficlab::word::PrimitiveWord::new(soficlab::word::Word::parse(
        "1",
        even.alphabet(),
    )?)?;
    let ai = soficlab::forge::ai_sft_cover(&even, &one)?;
    let cover = ai.cover_graph();
    let degree = soficlab::verify::degree(&ai)?;
    println!(
        "forge ai-sft-cover(even, 1): {} vertices, {} edges, degree {}",
        cover.vertex_count(),
        cover.edge_count(),
        degree
    );

    let pi = soficlab::shift::CoverSpec::new(even.graph().clone(), even.clone())?;
    let grown = soficlab::forge::grow_periodic_support(&pi, 0.3, 3)?;
    let sub = grown.sub_sft.as_ref().expect("growth returns a subshift");
    println!(
        "forge grow(even, 0.3, 3): {} edges, validations passed: {}",
        sub.graph().edge_count(),
        grown.validation.all_passed()
    );
    Ok(())
}
