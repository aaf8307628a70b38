use std::io::Write;

use flate2::write::DeflateEncoder;
use flate2::Compression;

/// Anything that reports a compressed size.
pub trait Compressor: Sync {
    fn name(&self) -> &str;

    fn compressed_size(&self, data: &[u8]) -> usize;

    fn is_deterministic(&self) -> bool {
        true
    }

    /// `false` asks callers to invoke this compressor from one thread only.
    fn supports_concurrency(&self) -> bool {
        true
    }
}

/// Raw DEFLATE (LZ77 + Huffman) via `flate2`, 32 KiB window.
#[derive(Debug, Clone, Copy)]
pub struct Deflate {
    level: u32,
}

impl Deflate {
    pub fn new(level: u32) -> Self {
        Self {
            level: level.min(9),
        }
    }
}

impl Default for Deflate {
    fn default() -> Self {
        Self::new(9)
    }
}

impl Compressor for Deflate {
    fn name(&self) -> &str {
        "deflate"
    }

    fn compressed_size(&self, data: &[u8]) -> usize {
        let mut enc = DeflateEncoder::new(
            Vec::with_capacity(data.len() / 2 + 64),
            Compression::new(self.level),
        );
        enc.write_all(data).expect("writing to a Vec cannot fail");
        enc.finish().expect("writing to a Vec cannot fail").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_finite() {
        let c = Deflate::default();
        let data: Vec<u8> = (0..5000u32).map(|i| (i * 7 % 251) as u8).collect();
        assert_eq!(c.compressed_size(&data), c.compressed_size(&data));
        assert!(c.compressed_size(&[]) <= 8);
        assert!(c.compressed_size(&vec![0u8; 10_000]) < 100);
    }
}
