//! Batch classification of a directory of documents with a fixed worker
//! count and deterministic, order-independent output.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use corank2::num::set_float_tolerance;

use crate::document::parse_document;
use crate::error::CliError;
use crate::report::{classify_exact, classify_float, Format};

pub struct BatchConfig {
    pub workers: usize,
    pub order: usize,
    pub format: Format,
}

struct Entry {
    name: String,
    verdict: Option<String>,
    report: Option<String>,
    error: Option<String>,
}

/// Runs the batch and returns the rendered summary. Per-file failures are
/// collected, not fatal.
pub fn run_batch(dir: &Path, cfg: &BatchConfig) -> Result<String, CliError> {
    let _ = set_float_tolerance; // tolerance is set once by main
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .map(|ext| ext == "germ")
                    .unwrap_or(false)
        })
        .collect();
    files.sort();

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Entry>>> =
        Mutex::new((0..files.len()).map(|_| None).collect());
    let workers = cfg.workers.max(1).min(files.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= files.len() {
                    break;
                }
                let path = &files[idx];
                let name = path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                let entry = process_file(path, &name, cfg);
                results.lock().unwrap()[idx] = Some(entry);
            });
        }
    });

    let entries: Vec<Entry> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|e| e.expect("every file processed"))
        .collect();

    let mut out = String::new();
    if cfg.format == Format::Machine {
        out.push_str("corank2 batch 1\n");
        for e in &entries {
            if let Some(report) = &e.report {
                out.push_str(report);
                out.push('\n');
            }
        }
    }
    for e in &entries {
        match (&e.verdict, &e.error) {
            (Some(v), _) => out.push_str(&format!("file {} verdict {}\n", e.name, v)),
            (None, Some(err)) => out.push_str(&format!("file {} error {}\n", e.name, err)),
            _ => unreachable!(),
        }
    }
    let verdicts = [
        "Sharksfin",
        "Deltoid",
        "DegenerateHessian",
        "NotRecognized",
        "NotRankZero",
    ];
    for v in verdicts {
        let count = entries
            .iter()
            .filter(|e| e.verdict.as_deref() == Some(v))
            .count();
        out.push_str(&format!("histogram {} {}\n", v, count));
    }
    let errors = entries.iter().filter(|e| e.error.is_some()).count();
    out.push_str(&format!("total {}\n", entries.len()));
    out.push_str(&format!("errors {}\n", errors));
    Ok(out)
}

fn process_file(path: &Path, name: &str, cfg: &BatchConfig) -> Entry {
    let run = || -> Result<(String, String), CliError> {
        let text = std::fs::read_to_string(path)?;
        let doc = parse_document(&text)?;
        let report = if doc.has_float() {
            classify_float(&doc, name, cfg.order)?
        } else {
            classify_exact(&doc, name, cfg.order)?
        };
        let verdict = report
            .get("verdict")
            .unwrap_or("NotRecognized")
            .to_string();
        Ok((verdict, report.render(Format::Machine)))
    };
    match run() {
        Ok((verdict, report)) => Entry {
            name: name.to_string(),
            verdict: Some(verdict),
            report: Some(report),
            error: None,
        },
        Err(e) => Entry {
            name: name.to_string(),
            verdict: None,
            report: None,
            error: Some(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_corpus(dir: &Path) {
        let docs = [
            (
                "a-sharksfin.germ",
                "corank2 input 1\nmode germ\nterm 1 1 1 1\nterm 2 2 0 1\nterm 2 0 2 1\nterm 2 3 0 1\n",
            ),
            (
                "b-deltoid.germ",
                "corank2 input 1\nmode germ\nterm 1 1 1 1\nterm 2 2 0 -1\nterm 2 0 2 1\nterm 2 3 0 1\n",
            ),
            (
                "c-degenerate.germ",
                "corank2 input 1\nmode germ\nterm 1 1 1 1\nterm 2 2 0 1\n",
            ),
            ("d-broken.germ", "not a document\n"),
        ];
        for (name, text) in docs {
            std::fs::write(dir.join(name), text).unwrap();
        }
        std::fs::write(dir.join("ignored.txt"), "not picked up").unwrap();
    }

    #[test]
    fn histogram_and_error_collection() {
        let dir = std::env::temp_dir().join("corank2-batch-test");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        write_corpus(&dir);
        let cfg = BatchConfig {
            workers: 2,
            order: 4,
            format: Format::Text,
        };
        let out = run_batch(&dir, &cfg).unwrap();
        assert!(out.contains("histogram Sharksfin 1"));
        assert!(out.contains("histogram Deltoid 1"));
        assert!(out.contains("histogram DegenerateHessian 1"));
        assert!(out.contains("file d-broken.germ error"));
        assert!(out.contains("total 4"));
        assert!(out.contains("errors 1"));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let dir = std::env::temp_dir().join("corank2-batch-det");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        write_corpus(&dir);
        let mk = |workers| BatchConfig {
            workers,
            order: 4,
            format: Format::Machine,
        };
        let one = run_batch(&dir, &mk(1)).unwrap();
        let eight = run_batch(&dir, &mk(8)).unwrap();
        assert_eq!(one, eight);
    }

    #[test]
    fn empty_directory_gives_empty_summary() {
        let dir = std::env::temp_dir().join("corank2-batch-empty");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = BatchConfig {
            workers: 4,
            order: 4,
            format: Format::Text,
        };
        let out = run_batch(&dir, &cfg).unwrap();
        assert!(out.contains("total 0"));
        assert!(out.contains("errors 0"));
    }
}
