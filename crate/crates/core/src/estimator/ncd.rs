use serde::Serialize;
use sha2::{Digest, Sha256};

use super::Compressor;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NcdReport {
    pub value: f64,
    pub numerator: i64,
    pub denominator: u64,
    /// Short SHA-256 digests of the inputs, in canonical order.
    pub inputs: Vec<String>,
    pub compressor: String,
}

pub(crate) fn digest(data: &[u8]) -> String {
    Sha256::digest(data)[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn canonical<'a>(items: &[&'a [u8]]) -> Vec<&'a [u8]> {
    let mut v = items.to_vec();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

fn concat(items: &[&[u8]]) -> Vec<u8> {
    items.concat()
}

fn non_empty(items: &[&[u8]]) -> Result<()> {
    if let Some(i) = items.iter().position(|x| x.is_empty()) {
        return Err(Error::Domain(format!("input {i} is empty")));
    }
    Ok(())
}

fn report(
    numerator: i64,
    denominator: usize,
    items: &[&[u8]],
    c: &dyn Compressor,
) -> Result<NcdReport> {
    if denominator == 0 {
        return Err(Error::DegenerateCompressor(format!(
            "{} reported zero size for non-empty input",
            c.name()
        )));
    }
    Ok(NcdReport {
        value: numerator as f64 / denominator as f64,
        numerator,
        denominator: denominator as u64,
        inputs: canonical(items).into_iter().map(digest).collect(),
        compressor: c.name().to_string(),
    })
}

/// `(C(xy) − min(C(x), C(y))) / max(C(x), C(y))`.
pub fn ncd_pair(x: &[u8], y: &[u8], c: &dyn Compressor) -> Result<NcdReport> {
    non_empty(&[x, y])?;
    let (cx, cy) = (c.compressed_size(x), c.compressed_size(y));
    let cxy = c.compressed_size(&concat(&canonical(&[x, y])));
    report(cxy as i64 - cx.min(cy) as i64, cx.max(cy), &[x, y], c)
}

/// `(C(X) − min_x C(x)) / max_x C(X minus one x)`, where `C(X)` compresses
/// the canonical concatenation of all members.
pub fn ncd_multiset(items: &[&[u8]], c: &dyn Compressor) -> Result<NcdReport> {
    if items.len() < 2 {
        return Err(Error::Cardinality(items.len()));
    }
    non_empty(items)?;
    let sorted = canonical(items);
    let whole = c.compressed_size(&concat(&sorted));
    let min_single = sorted.iter().map(|x| c.compressed_size(x)).min().unwrap();
    let mut max_rest = 0;
    for i in 0..sorted.len() {
        // equal members give equal leave-one-out sets
        if i > 0 && sorted[i] == sorted[i - 1] {
            continue;
        }
        let rest: Vec<&[u8]> = sorted
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| *x)
            .collect();
        max_rest = max_rest.max(c.compressed_size(&concat(&rest)));
    }
    report(whole as i64 - min_single as i64, max_rest, items, c)
}

/// `C(x) + C(y) − C(xy)`, unclamped.
pub fn mutual_information_est(x: &[u8], y: &[u8], c: &dyn Compressor) -> Result<i64> {
    non_empty(&[x, y])?;
    let cxy = c.compressed_size(&concat(&canonical(&[x, y])));
    Ok(c.compressed_size(x) as i64 + c.compressed_size(y) as i64 - cxy as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::Deflate;

    struct Zero;
    impl Compressor for Zero {
        fn name(&self) -> &str {
            "zero"
        }
        fn compressed_size(&self, _: &[u8]) -> usize {
            0
        }
    }

    /// Size = length; makes every formula easy to evaluate by hand.
    struct Identity;
    impl Compressor for Identity {
        fn name(&self) -> &str {
            "identity"
        }
        fn compressed_size(&self, data: &[u8]) -> usize {
            data.len()
        }
    }

    #[test]
    fn errors() {
        let c = Deflate::default();
        assert!(matches!(ncd_pair(b"", b"x", &c), Err(Error::Domain(_))));
        assert!(matches!(
            ncd_pair(b"a", b"b", &Zero),
            Err(Error::DegenerateCompressor(_))
        ));
        assert!(matches!(
            ncd_multiset(&[b"a"], &c),
            Err(Error::Cardinality(1))
        ));
        assert!(matches!(
            ncd_multiset(&[b"a", b""], &c),
            Err(Error::Domain(_))
        ));
        assert!(mutual_information_est(b"", b"a", &c).is_err());
    }

    #[test]
    fn formulas_with_identity_compressor() {
        let r = ncd_pair(b"abc", b"de", &Identity).unwrap();
        assert_eq!((r.numerator, r.denominator), (5 - 2, 3));
        let r = ncd_multiset(&[b"abc", b"de", b"f"], &Identity).unwrap();
        // C(all)=6, min=1, leave-one-out max = C(abc,de) = 5
        assert_eq!((r.numerator, r.denominator), (5, 5));
        assert_eq!(mutual_information_est(b"abc", b"de", &Identity).unwrap(), 0);
    }

    #[test]
    fn pair_is_exactly_symmetric() {
        let c = Deflate::default();
        let x = b"the quick brown fox jumps over the lazy dog".as_slice();
        let y = b"pack my box with five dozen liquor jugs".as_slice();
        assert_eq!(ncd_pair(x, y, &c).unwrap(), ncd_pair(y, x, &c).unwrap());
        assert_eq!(
            mutual_information_est(x, y, &c).unwrap(),
            mutual_information_est(y, x, &c).unwrap()
        );
    }

    #[test]
    fn multiset_is_order_free() {
        let c = Deflate::default();
        let a = ncd_multiset(&[b"aaaa", b"bcbc", b"aaaa"], &c).unwrap();
        let b = ncd_multiset(&[b"aaaa", b"aaaa", b"bcbc"], &c).unwrap();
        assert_eq!(a, b);
    }
}
