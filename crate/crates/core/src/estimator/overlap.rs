use serde::Serialize;

use crate::bits::BitString;
use crate::error::Result;

/// `p = x ⊕ y` with both recovery checks: one program converts either way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XorOverlap {
    pub p: BitString,
    pub recovers_y: bool,
    pub recovers_x: bool,
}

impl XorOverlap {
    pub fn passed(&self) -> bool {
        self.recovers_x && self.recovers_y
    }
}

pub fn xor_overlap(x: &BitString, y: &BitString) -> Result<XorOverlap> {
    let p = x.xor(y)?;
    let recovers_y = &x.xor(&p)? == y;
    let recovers_x = &y.xor(&p)? == x;
    Ok(XorOverlap {
        p,
        recovers_y,
        recovers_x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bs;
    use crate::error::Error;

    #[test]
    fn worked_example() {
        let r = xor_overlap(&bs("1010"), &bs("0110")).unwrap();
        assert_eq!(r.p, bs("1100"));
        assert!(r.passed());
    }

    #[test]
    fn self_overlap_is_zero() {
        let x = bs("110100111");
        assert!(xor_overlap(&x, &x).unwrap().p.is_all_zero());
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            xor_overlap(&bs("1"), &bs("10")),
            Err(Error::Domain(_))
        ));
    }
}
