pub mod codec;
pub mod label;
pub mod machine;
pub mod ncd;
pub mod overlap;

use std::fs;
use std::path::Path;

use infodist::machine::MachineConfig;
use infodist::BitString;

use crate::Globals;

/// Usage and I/O failures; reported with exit code 1.
pub type CmdResult<T> = Result<T, String>;

pub fn read_to_string(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_config(g: &Globals) -> CmdResult<MachineConfig> {
    let path = g
        .config
        .as_deref()
        .ok_or("this command needs --config PATH (machine configuration JSON)")?;
    MachineConfig::from_json(&read_to_string(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_bits(s: &str) -> CmdResult<BitString> {
    s.parse().map_err(|e| format!("{s:?}: {e}"))
}
