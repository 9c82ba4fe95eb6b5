//! The canned acceptance catalog behind `rswan check-all`.

use serde_json::json;

use crate::config::RunConfig;

struct Data {
    line: [&'static str; 2],
    witt: [&'static str; 2],
    plane: [&'static str; 3],
    tame: &'static str,
    family: [i64; 3],
    curve: &'static str,
    curve_e: [i64; 3],
    duality: &'static [(i64, i64)],
}

fn data(p: u32) -> Option<Data> {
    Some(match p {
        2 => Data {
            line: ["t^-3", "t^-5 + t^-1"],
            witt: ["t^-1", "t^-3"],
            plane: ["u*t^-2", "u*t^-3 + t^-1", "t^-3"],
            tame: "u^3",
            family: [3, 5, 7],
            curve: "x*t^-3",
            curve_e: [2, 4, 8],
            duality: &[(2, 1), (3, 1), (4, 2)],
        },
        3 => Data {
            line: ["t^-2", "t^-4 + 2*t^-1"],
            witt: ["t^-1", "t^-2"],
            plane: ["u*t^-3", "u*t^-2", "t^-4"],
            tame: "u^2 + u^3",
            family: [2, 4, 5],
            curve: "x*t^-4",
            curve_e: [3, 6, 9],
            duality: &[(2, 1), (3, 1)],
        },
        5 => Data {
            line: ["t^-3", "t^-6 + t^-2"],
            witt: ["t^-1", "t^-3"],
            plane: ["u*t^-5", "u*t^-2", "t^-6"],
            tame: "u^2",
            family: [2, 3, 4],
            curve: "x*t^-6",
            curve_e: [5, 10, 25],
            duality: &[(2, 1), (3, 1)],
        },
        _ => return None,
    })
}

/// The catalog for `p` in `{2, 3, 5}`.
pub fn catalog(p: u32) -> Option<RunConfig> {
    let d = data(p)?;
    let wild = format!("u^{p} + u^{}", p + 1);
    let mut tasks = vec![json!({ "kind": "exp-congruences", "p": p })];
    let chars = ["X1", "X2", "Y", "Z1", "Z2", "Z3"];
    for c in chars {
        tasks.push(json!({ "kind": "swan", "character": c }));
        tasks.push(json!({ "kind": "rsw", "character": c }));
    }
    for c in chars {
        tasks.push(json!({ "kind": "reciprocity", "character": c, "samples": 50 }));
    }
    for (n, m) in d.duality {
        tasks.push(json!({ "kind": "duality", "tower": "K2", "n": n, "m": m }));
    }
    for (c, e) in [("X1", "wild"), ("X2", "wild"), ("X1", "tame"), ("X2", "tame"), ("R", "tame"), ("X0", "wild"), ("Y", "wild2")] {
        tasks.push(json!({ "kind": "conductor-change", "character": c, "extension": e }));
    }
    tasks.push(json!({ "kind": "thmB", "character": "Z1", "family": d.family }));
    tasks.push(json!({ "kind": "thmB", "character": "Z3", "extensions": ["unramified"] }));
    tasks.push(json!({ "kind": "thmC", "tower": "plane", "f": d.curve, "e": d.curve_e }));
    tasks.push(json!({ "kind": "thmC", "tower": "plane", "f": format!("t^-{}", p + 1), "e": d.curve_e }));

    let cfg = json!({
        "version": crate::config::SCHEMA_VERSION,
        "tower": { "p": p, "variables": ["t"] },
        "towers": {
            "W2": { "p": p, "s": 2, "variables": ["t"] },
            "K2": { "p": p, "variables": ["u", "t"] },
            "L": { "p": p, "variables": ["u"] },
            "L2": { "p": p, "s": 2, "variables": ["u"] },
            "M2": { "p": p, "variables": ["v", "w"] },
            "plane": { "p": p, "variables": ["x", "t"] },
        },
        "characters": {
            "X0": ["t^-1"],
            "X1": [d.line[0]],
            "X2": [d.line[1]],
            "R": ["t^-2"],
            "Y": { "tower": "W2", "components": d.witt },
            "Z1": { "tower": "K2", "components": [d.plane[0]] },
            "Z2": { "tower": "K2", "components": [d.plane[1]] },
            "Z3": { "tower": "K2", "components": [d.plane[2]] },
        },
        "extensions": {
            "wild": { "target": "L", "images": { "t": wild } },
            "tame": { "target": "L", "images": { "t": d.tame } },
            "wild2": { "source": "W2", "target": "L2", "images": { "t": wild } },
            "unramified": { "source": "K2", "target": "M2", "images": { "u": "v", "t": "w" } },
        },
        "tasks": tasks,
    });
    Some(serde_json::from_value(cfg).expect("catalog is well formed"))
}
