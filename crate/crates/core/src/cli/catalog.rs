//! Built-in example configs, each with its expected-results block.

use super::config::AnalysisConfig;

const SOURCES: [(&str, &str); 13] = [
    ("example-3.1-n2", include_str!("../../configs/example-3.1-n2.json")),
    ("example-3.1-n3", include_str!("../../configs/example-3.1-n3.json")),
    ("example-3.2", include_str!("../../configs/example-3.2.json")),
    ("example-3.3-n2", include_str!("../../configs/example-3.3-n2.json")),
    ("lemma-2.11-case1", include_str!("../../configs/lemma-2.11-case1.json")),
    ("lemma-2.11-case2", include_str!("../../configs/lemma-2.11-case2.json")),
    ("lemma-2.11-case3", include_str!("../../configs/lemma-2.11-case3.json")),
    ("lemma-2.11-case4", include_str!("../../configs/lemma-2.11-case4.json")),
    ("lemma-2.11-case5", include_str!("../../configs/lemma-2.11-case5.json")),
    ("lemma-2.11-case6", include_str!("../../configs/lemma-2.11-case6.json")),
    ("lemma-2.16-F-D6", include_str!("../../configs/lemma-2.16-F-D6.json")),
    ("case1-D4", include_str!("../../configs/case1-D4.json")),
    ("B-lemma-2.7", include_str!("../../configs/B-lemma-2.7.json")),
];

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: String,
    pub config: AnalysisConfig,
}

fn parse(name: &str, text: &str) -> AnalysisConfig {
    AnalysisConfig::from_json(text).unwrap_or_else(|e| panic!("built-in config {name} is malformed: {e}"))
}

pub fn list_examples() -> Vec<CatalogEntry> {
    SOURCES
        .iter()
        .map(|&(name, text)| {
            let config = parse(name, text);
            CatalogEntry { name, description: config.description.clone().unwrap_or_default(), config }
        })
        .collect()
}

pub fn example(name: &str) -> Option<AnalysisConfig> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|&(n, text)| parse(n, text))
}

/// The raw JSON of a built-in config.
pub fn example_source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}
