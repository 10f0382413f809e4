//! The built-in example corpus, embedded at compile time.

use super::{parse_spec, run_job, JobError, Report, RunOptions};

const CORPUS: &[(&str, &str)] = &[
    ("rank1", include_str!("../../examples/rank1.json")),
    ("rank2", include_str!("../../examples/rank2.json")),
    ("pidex", include_str!("../../examples/pidex.json")),
    ("ufdex", include_str!("../../examples/ufdex.json")),
    ("dd", include_str!("../../examples/dd.json")),
    ("2var", include_str!("../../examples/2var.json")),
    ("1var", include_str!("../../examples/1var.json")),
    ("wang-nice", include_str!("../../examples/wang-nice.json")),
];

pub fn corpus_names() -> Vec<&'static str> {
    CORPUS.iter().map(|(n, _)| *n).collect()
}

/// The JSON source of a corpus job.
pub fn corpus_source(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Runs the whole corpus, or the single job `filter`. Check names are
/// prefixed with the job name.
pub fn run_corpus(filter: Option<&str>, opts: RunOptions) -> Result<Report, JobError> {
    let selected: Vec<&(&str, &str)> = match filter {
        None => CORPUS.iter().collect(),
        Some(f) => {
            let hit: Vec<_> = CORPUS.iter().filter(|(n, _)| *n == f).collect();
            if hit.is_empty() {
                return Err(JobError::UnknownCorpusJob(f.to_string()));
            }
            hit
        }
    };
    let mut checks = Vec::new();
    for (name, src) in selected {
        let job = parse_spec(src, name)?;
        let report = run_job(&job, opts);
        for mut c in report.checks {
            c.name = format!("{name}/{}", c.name);
            checks.push(c);
        }
    }
    let title = filter.map_or_else(|| "corpus".to_string(), |f| f.to_string());
    Ok(Report::new(title, checks))
}
