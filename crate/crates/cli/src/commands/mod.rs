pub mod cocycle;
pub mod couple;
pub mod simulate;
pub mod verify;

use rikitake_core::systems::catalog;

/// Catalog ids, parameters with defaults, and anchors.
pub fn list() -> String {
    let mut lines = Vec::new();
    for s in catalog() {
        let params: Vec<String> = s
            .params
            .iter()
            .map(|p| format!("{}={}", p.name, p.default))
            .collect();
        lines.push(format!(
            "{:<20} {:<15} [{}]",
            s.id,
            format!("{:?}", s.kind).to_lowercase(),
            params.join(", ")
        ));
        lines.push(format!("    {}", s.anchor));
    }
    lines.join("\n")
}
