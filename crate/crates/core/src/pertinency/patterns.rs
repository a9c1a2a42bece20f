//! Word shapes whose presence in `J` bounds the growth of `A/J` by a
//! linear function, one pair of shapes per algebra family.

use crate::freealg::{Alphabet, Word};

/// A block repeated between `min` and `max` times.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub letters: Vec<u8>,
    pub min: usize,
    pub max: usize,
}

impl Block {
    fn any(letters: Vec<u8>) -> Block {
        Block { letters, min: 0, max: usize::MAX }
    }

    fn once(letters: Vec<u8>) -> Block {
        Block { letters, min: 1, max: 1 }
    }
}

/// Exponents `e` with `w = b_1^(e_1) ... b_k^(e_k)`, if any.
pub(crate) fn match_blocks(w: &[u8], blocks: &[Block]) -> Option<Vec<usize>> {
    let Some((first, rest)) = blocks.split_first() else {
        return w.is_empty().then(Vec::new);
    };
    let len = first.letters.len();
    let mut pos = 0;
    let mut e = 0;
    loop {
        if e >= first.min {
            if let Some(mut tail) = match_blocks(&w[pos..], rest) {
                tail.insert(0, e);
                return Some(tail);
            }
        }
        if e == first.max || !w[pos..].starts_with(&first.letters) {
            return None;
        }
        pos += len;
        e += 1;
    }
}

/// Which family rule a certificate relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    /// Leading words `d^s (ud)^i` and `u^t` in any down-up algebra.
    DownUpLeading,
    /// Leading words `d^(2s) (du)^i` and `(ud)^j u^(2t)` when `alpha = 0`.
    DownUpSquares,
    /// Monomials `(yx^3)^a (y^2x^2)^b` and `(yx^3)^a' (yx^2) (y^2x^2)^b'` in `J`.
    FMonomials,
    /// Monomials `x^(2s) (yx)^i` and `(xy)^j z^t` in `J`.
    BMonomials,
    /// Growth of the words avoiding all known leading words.
    ObstructionGraph,
}

impl PatternKind {
    pub fn name(&self) -> &'static str {
        match self {
            PatternKind::DownUpLeading => "downup-leading-words",
            PatternKind::DownUpSquares => "downup-normal-squares",
            PatternKind::FMonomials => "F-monomials",
            PatternKind::BMonomials => "B-monomials",
            PatternKind::ObstructionGraph => "obstruction-graph",
        }
    }

    /// Whether the shapes must be leading words (true) or monomials in `J`.
    pub fn uses_leading_words(&self) -> bool {
        matches!(self, PatternKind::DownUpLeading | PatternKind::DownUpSquares)
    }

    pub fn statement(&self) -> &'static str {
        match self {
            PatternKind::DownUpLeading => {
                "J has elements with leading words d^s(ud)^i and u^t, so A/J has a basis of words d^a(ud)^b u^c with two exponents bounded"
            }
            PatternKind::DownUpSquares => {
                "J has elements with leading words d^(2s)(du)^i and (ud)^j u^(2t); d^2 and u^2 are normal, so A/J has bounded dimension in each degree"
            }
            PatternKind::FMonomials => {
                "J contains (yx^3)^a(y^2x^2)^b and (yx^3)^a'(yx^2)(y^2x^2)^b'; with x^4 central this bounds two exponents of every basis word of A/J"
            }
            PatternKind::BMonomials => {
                "J contains x^(2s)(yx)^i and (xy)^j z^t; x^2 and z skew-commute with the generators, bounding two exponents of every basis word of B/J"
            }
            PatternKind::ObstructionGraph => {
                "words avoiding the leading words of J and of the relations span A/J, and their number grows at most polynomially of the stated degree"
            }
        }
    }
}

/// The two shapes of a family rule over a concrete alphabet.
pub(crate) fn shapes(kind: PatternKind, alphabet: &Alphabet) -> Option<[Vec<Block>; 2]> {
    let l = |name: &str| alphabet.index_of(name);
    let w = |s: &[Option<u8>]| s.iter().copied().collect::<Option<Vec<u8>>>();
    Some(match kind {
        PatternKind::DownUpLeading => {
            let (d, u) = (l("d")?, l("u")?);
            [vec![Block::any(vec![d]), Block::any(vec![u, d])], vec![Block::any(vec![u])]]
        }
        PatternKind::DownUpSquares => {
            let (d, u) = (l("d")?, l("u")?);
            [
                vec![Block::any(vec![d, d]), Block::any(vec![d, u])],
                vec![Block::any(vec![u, d]), Block::any(vec![u, u])],
            ]
        }
        PatternKind::FMonomials => {
            let (x, y) = (l("x"), l("y"));
            let yx3 = w(&[y, x, x, x])?;
            let y2x2 = w(&[y, y, x, x])?;
            let yx2 = w(&[y, x, x])?;
            [
                vec![Block::any(yx3.clone()), Block::any(y2x2.clone())],
                vec![Block::any(yx3), Block::once(yx2), Block::any(y2x2)],
            ]
        }
        PatternKind::BMonomials => {
            let (x, y, z) = (l("x")?, l("y")?, l("z")?);
            [
                vec![Block::any(vec![x, x]), Block::any(vec![y, x])],
                vec![Block::any(vec![x, y]), Block::any(vec![z])],
            ]
        }
        PatternKind::ObstructionGraph => return None,
    })
}

/// Index of the first shape `w` matches, ignoring the empty word.
pub(crate) fn classify(w: &Word, shapes: &[Vec<Block>; 2]) -> Option<usize> {
    if w.is_empty() {
        return None;
    }
    shapes.iter().position(|s| match_blocks(w.letters(), s).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(names: &[&str]) -> std::sync::Arc<Alphabet> {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn block_matching_backtracks() {
        let a = alpha(&["d", "u"]);
        let sq = shapes(PatternKind::DownUpSquares, &a).unwrap();
        let word = |s: &str| a.parse_word(s).unwrap();
        // d^3 u = d^2 (du): the greedy d-run must give back one d.
        assert_eq!(classify(&word("d^3*u"), &sq), Some(0));
        assert_eq!(classify(&word("d^3"), &sq), None);
        assert_eq!(classify(&word("u*d*u^2"), &sq), Some(1));
        assert_eq!(match_blocks(word("d^2*d*u*d*u").letters(), &sq[0]), Some(vec![1, 2]));
        let lead = shapes(PatternKind::DownUpLeading, &a).unwrap();
        assert_eq!(classify(&word("d^3*u*d"), &lead), Some(0));
        assert_eq!(classify(&word("u^5"), &lead), Some(1));
        assert_eq!(classify(&word("d*u"), &lead), None);
    }

    #[test]
    fn f_shapes_need_exactly_one_middle_block() {
        let a = alpha(&["x", "y"]);
        let f = shapes(PatternKind::FMonomials, &a).unwrap();
        let word = |s: &str| a.parse_word(s).unwrap();
        assert_eq!(classify(&word("y*x^3*y^2*x^2"), &f), Some(0));
        assert_eq!(classify(&word("y*x^3*y*x^2*y^2*x^2"), &f), Some(1));
        assert_eq!(classify(&word("y*x^2*y*x^2"), &f), None);
        assert!(shapes(PatternKind::BMonomials, &a).is_none());
    }
}
