use std::fmt;

use crate::forest::LabeledForest;

/// On-line ranking number of a single forest where it is at most 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StvClass {
    One,
    Two,
    Three,
    FourOrMore,
}

impl StvClass {
    /// 4 for [`StvClass::FourOrMore`].
    pub fn lower_value(self) -> u32 {
        match self {
            StvClass::One => 1,
            StvClass::Two => 2,
            StvClass::Three => 3,
            StvClass::FourOrMore => 4,
        }
    }
}

impl fmt::Display for StvClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StvClass::FourOrMore => f.write_str("4+"),
            c => write!(f, "{}", c.lower_value()),
        }
    }
}

pub fn stv_class(f: &LabeledForest) -> StvClass {
    let comps = f.components();
    let edges = |c: &Vec<usize>| c.len() - 1;
    let max_deg = (0..f.len()).map(|v| f.degree(v)).max().unwrap_or(0);
    if f.edge_count() == 0 {
        return StvClass::One;
    }
    if comps.iter().all(|c| edges(c) <= 1) {
        return StvClass::Two;
    }
    let diam = |c: &Vec<usize>| f.diameter(c[0]).expect("nonempty");
    let star_forest = comps.iter().all(|c| diam(c) <= 2);
    let linear = max_deg <= 2;
    let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
    if (star_forest && max_deg >= 2) || (linear && largest == 4) {
        StvClass::Three
    } else {
        StvClass::FourOrMore
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(stv_class(&LabeledForest::isolated(3)), StvClass::One);
        let k2k1 = LabeledForest::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(stv_class(&k2k1), StvClass::Two);
        assert_eq!(stv_class(&LabeledForest::path(4)), StvClass::Three);
        assert_eq!(stv_class(&LabeledForest::star(4)), StvClass::Three);
        assert_eq!(stv_class(&LabeledForest::path(5)), StvClass::FourOrMore);
        assert_eq!(StvClass::FourOrMore.to_string(), "4+");
    }
}
