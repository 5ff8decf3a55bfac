//! The plain-text profile file format.
//!
//! ```text
//! # comment
//! candidates: a, b, c
//! vote: a, b
//! vote:
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Labels match
//! `[A-Za-z0-9_]+`; whitespace around separators is ignored.

use crate::error::{Error, Result};
use crate::profile::ApprovalProfile;

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_list(body: &str, line: usize) -> Result<Vec<String>> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if valid_label(tok) {
                Ok(tok.to_string())
            } else {
                Err(Error::Parse {
                    line,
                    message: format!("invalid label `{tok}`"),
                })
            }
        })
        .collect()
}

/// Parses a profile file.
pub fn parse_profile(text: &str) -> Result<ApprovalProfile> {
    let mut labels: Option<Vec<String>> = None;
    let mut votes: Vec<(usize, Vec<String>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, body) = trimmed.split_once(':').ok_or_else(|| Error::Parse {
            line,
            message: "expected `candidates:` or `vote:`".into(),
        })?;
        match key.trim() {
            "candidates" => {
                if labels.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "second `candidates:` line".into(),
                    });
                }
                if !votes.is_empty() {
                    return Err(Error::Parse {
                        line,
                        message: "`candidates:` must precede all votes".into(),
                    });
                }
                let ls = parse_list(body, line)?;
                if ls.is_empty() {
                    return Err(Error::Parse {
                        line,
                        message: "no candidates".into(),
                    });
                }
                labels = Some(ls);
            }
            "vote" => {
                if labels.is_none() {
                    return Err(Error::Parse {
                        line,
                        message: "vote before `candidates:` line".into(),
                    });
                }
                votes.push((line, parse_list(body, line)?));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }
    let labels = labels.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `candidates:` line".into(),
    })?;
    if votes.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "no vote lines".into(),
        });
    }
    let lines: Vec<usize> = votes.iter().map(|(l, _)| *l).collect();
    ApprovalProfile::build(&labels, votes.into_iter().map(|(_, v)| v)).map_err(|e| match e {
        Error::UnknownLabel { vote, label } => Error::Parse {
            line: lines[vote],
            message: format!("unknown candidate `{label}`"),
        },
        Error::DuplicateLabel(l) => Error::Parse {
            line: 1,
            message: format!("duplicate candidate `{l}`"),
        },
        other => other,
    })
}

/// Serializes a profile; `parse_profile` inverts this exactly.
pub fn write_profile(p: &ApprovalProfile) -> String {
    let mut out = String::new();
    out.push_str("candidates: ");
    out.push_str(&p.labels().join(","));
    out.push('\n');
    for v in p.votes() {
        out.push_str("vote:");
        let names: Vec<&str> = v.iter().map(|c| p.label(c)).collect();
        if !names.is_empty() {
            out.push(' ');
            out.push_str(&names.join(","));
        }
        out.push('\n');
    }
    out
}
