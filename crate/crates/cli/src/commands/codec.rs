use std::collections::BTreeSet;

use clap::Subcommand;
use serde_json::json;

use infodist::codec::{self, floor_log2, label_length, Format, Label};
use infodist::machine::{self, Program};
use infodist::BitString;

use super::{load_config, parse_bits, CmdResult};
use crate::report::Outcome;
use crate::Globals;

#[derive(Subcommand)]
pub enum CodecCmd {
    /// Encode the label (p, m) for given k and n.
    Encode {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Program bits.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "fixed")]
        format: String,
    },
    /// Decode label bits given n.
    Decode {
        /// Label as a binary string.
        #[arg(long, conflicts_with = "hex")]
        bits: Option<String>,
        /// Label as hex bytes (needs --bit-len).
        #[arg(long, requires = "bit_len")]
        hex: Option<String>,
        #[arg(long)]
        bit_len: Option<usize>,
        #[arg(long)]
        n: usize,
        /// Comma-separated program set; defaults to P(k) of --config.
        #[arg(long, value_delimiter = ',')]
        programs: Option<Vec<String>>,
        #[arg(long, default_value = "fixed")]
        format: String,
    },
    /// Exhaustive round trip over P(k) x {1..n} for k <= K_MAX, n <= N_MAX.
    Roundtrip {
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value = "fixed")]
        format: String,
    },
}

fn parse_format(s: &str) -> CmdResult<Format> {
    s.parse().map_err(|e: infodist::Error| e.to_string())
}

fn to_hex(bits: &BitString) -> String {
    bits.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
}

fn from_hex(hex: &str, bit_len: usize) -> CmdResult<BitString> {
    if !hex.len().is_multiple_of(2) {
        return Err("hex input needs an even number of digits".into());
    }
    let bytes = (0..hex.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|e| format!("{hex:?}: {e}")))
        .collect::<CmdResult<Vec<u8>>>()?;
    let bits = BitString::from_bytes(&bytes);
    if bit_len > bits.len() {
        return Err(format!(
            "--bit-len {bit_len} exceeds the {} bits supplied",
            bits.len()
        ));
    }
    Ok(bits.slice(0, bit_len))
}

pub fn run(cmd: CodecCmd, g: &Globals) -> CmdResult<Outcome> {
    match cmd {
        CodecCmd::Encode { k, n, p, m, format } => {
            let format = parse_format(&format)?;
            let q =
                Label::new(Program::new(parse_bits(&p)?), m, k, n).map_err(|e| e.to_string())?;
            let bits = codec::encode(&q, format).map_err(|e| e.to_string())?;
            Ok(Outcome::new(
                "codec encode",
                json!({
                    "format": format,
                    "bits": bits,
                    "hex": to_hex(&bits),
                    "length": bits.len(),
                    "expected_length": label_length(k, n),
                }),
            )
            .with_table(format!("{bits}\n")))
        }
        CodecCmd::Decode {
            bits,
            hex,
            bit_len,
            n,
            programs,
            format,
        } => {
            let format = parse_format(&format)?;
            let bits = match (bits, hex) {
                (Some(b), _) => parse_bits(&b)?,
                (None, Some(h)) => from_hex(&h, bit_len.unwrap_or(0))?,
                (None, None) => return Err("give --bits or --hex".into()),
            };
            let set: BTreeSet<BitString> = match programs {
                Some(list) => list
                    .iter()
                    .map(|s| parse_bits(s))
                    .collect::<CmdResult<_>>()?,
                None => {
                    let cfg = load_config(g)?;
                    if n < 2 {
                        return Err("n must be at least 2".into());
                    }
                    let k = bits
                        .len()
                        .checked_sub(floor_log2(n) + 1)
                        .ok_or("label shorter than its index field")?;
                    machine::enumerate_halting(k, &cfg)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .map(|p| p.code)
                        .collect()
                }
            };
            let decoded = codec::decode(&bits, n, &set, format).map_err(|e| e.to_string())?;
            Ok(Outcome::new(
                "codec decode",
                json!({ "format": format, "decoded": decoded }),
            ))
        }
        CodecCmd::Roundtrip {
            k_max,
            n_max,
            format,
        } => {
            let format = parse_format(&format)?;
            let cfg = load_config(g)?;
            let mut checked = 0usize;
            let mut ambiguous = 0usize;
            let mut mismatches = Vec::new();
            for k in 0..=k_max {
                let programs = machine::enumerate_halting(k, &cfg).map_err(|e| e.to_string())?;
                let set: BTreeSet<BitString> = programs.iter().map(|p| p.code.clone()).collect();
                for n in 2..=n_max {
                    for q in codec::label_space(&programs, k, n) {
                        checked += 1;
                        let bits = codec::encode(&q, format).map_err(|e| e.to_string())?;
                        let ok = bits.len() == label_length(k, n)
                            && match codec::decode(&bits, n, &set, format) {
                                Ok(d) => {
                                    ambiguous += d.ambiguous as usize;
                                    let same_bits =
                                        codec::encode(&d.label, format).ok() == Some(bits.clone());
                                    same_bits
                                        && (d.label == q
                                            || (d.ambiguous && d.candidates.contains(&q.m)))
                                }
                                Err(_) => false,
                            };
                        if !ok && mismatches.len() < 20 {
                            mismatches.push(json!({ "k": k, "n": n, "p": q.p, "m": q.m }));
                        }
                    }
                }
            }
            let violated = !mismatches.is_empty();
            Ok(Outcome::new(
                "codec roundtrip",
                json!({
                    "format": format,
                    "checked": checked,
                    "ambiguous_decodes": ambiguous,
                    "mismatches": mismatches,
                }),
            )
            .violated_if(violated))
        }
    }
}
