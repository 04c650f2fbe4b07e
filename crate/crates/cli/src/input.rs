use std::path::Path;

use sdrw::cases::theories::{ba_rules, ba_signature, fs_rules, fs_signature};
use sdrw::dpo::RewriteRule;
use sdrw::io::{read_cospan, read_signature, RulesetJson};
use sdrw::term::parse;
use sdrw::{InterfacedCospan, Signature};

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_signature(arg: &str) -> Result<Signature, CliError> {
    match arg {
        "fs" => Ok(fs_signature()),
        "ba" => Ok(ba_signature()),
        path => read_signature(&read_text(Path::new(path))?).map_err(|e| CliError::Input(format!("{path}: {e}"))),
    }
}

pub fn load_ruleset(arg: &str) -> Result<(Signature, Vec<RewriteRule>), CliError> {
    match arg {
        "fs" => Ok((fs_signature(), fs_rules())),
        "ba" => Ok((ba_signature(), ba_rules())),
        path => {
            let text = read_text(Path::new(path))?;
            let file: RulesetJson = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            file.load().map_err(|e| CliError::Input(format!("{path}: {e}")))
        }
    }
}

pub struct Diagram {
    pub cospan: InterfacedCospan,
    pub from_term: bool,
}

/// A JSON object is read as a graph, anything else as a term. Lines starting
/// with `#` are comments in term files.
pub fn read_diagram(text: &str, sig: &Signature) -> Result<Diagram, CliError> {
    if text.trim_start().starts_with('{') {
        let cospan = read_cospan(text).map_err(|e| CliError::Input(e.to_string()))?;
        return Ok(Diagram {
            cospan,
            from_term: false,
        });
    }
    let body: String = text
        .lines()
        .map(|l| if l.trim_start().starts_with('#') { "" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    let cospan = parse(&body, sig)
        .and_then(|t| t.interpret(sig))
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Diagram {
        cospan,
        from_term: true,
    })
}
