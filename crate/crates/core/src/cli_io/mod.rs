//! File formats and the command-line front end.

mod alist;
mod cli;

pub use alist::{read_alist, write_alist, AlistDocument};
pub use cli::{run, Cli};

use std::path::{Path, PathBuf};

use crate::analysis::StructureReport;
use crate::bch::BchSpec;
use crate::construct::{build_type1, build_type2, CodeKind, LdpcCode};
use crate::galois::cyclotomic_coset;
use crate::Result;

pub fn report_to_json(report: &StructureReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

/// Path of the metadata file written next to a constructed matrix.
pub fn metadata_path(matrix: &Path) -> PathBuf {
    let mut p = matrix.as_os_str().to_owned();
    p.push(".meta.json");
    PathBuf::from(p)
}

pub fn save_code(code: &LdpcCode, path: &Path) -> Result<()> {
    std::fs::write(path, write_alist(&code.h))?;
    std::fs::write(metadata_path(path), serde_json::to_string_pretty(&code.kind)? + "\n")?;
    Ok(())
}

/// Reads an alist file. When a metadata file sits next to it and rebuilding
/// from that metadata reproduces the same matrix, the construction details are
/// restored; otherwise the code is marked imported.
pub fn load_code(path: &Path) -> Result<LdpcCode> {
    let h = read_alist(&std::fs::read_to_string(path)?)?;
    let meta = metadata_path(path);
    let mut code = LdpcCode::from_matrix(h);
    if let Ok(text) = std::fs::read_to_string(&meta) {
        match serde_json::from_str::<CodeKind>(&text)
            .map_err(Into::into)
            .and_then(|k| rebuild(&k))
        {
            Ok(Some(rebuilt)) if rebuilt.h == code.h => return Ok(rebuilt),
            Ok(_) => code
                .warnings
                .push(format!("{} does not match the matrix; ignored", meta.display())),
            Err(e) => code.warnings.push(format!("{}: {e}; ignored", meta.display())),
        }
    }
    Ok(code)
}

fn rebuild(kind: &CodeKind) -> Result<Option<LdpcCode>> {
    Ok(match kind {
        CodeKind::TypeI { spec } => {
            let spec = BchSpec::from_values(spec.params.q, spec.params.m, spec.params.n, spec.delta)?;
            Some(build_type1(&spec))
        }
        CodeKind::TypeII { n, q, leaders, .. } => {
            let cosets = leaders
                .iter()
                .map(|&x| cyclotomic_coset(x, *n, *q))
                .collect::<Result<Vec<_>>>()?;
            Some(build_type2(*n, *q, &cosets)?)
        }
        CodeKind::Imported => None,
    })
}
