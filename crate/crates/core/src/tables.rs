//! Built-in knot groups and the published torsion tables for the
//! Kinoshita-Terasaka and Conway knots.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactalg::{NfElem, NumberField, Rational};
use crate::freegroup::{Presentation, Word};
use crate::replift::LiftSign;

/// Coefficients of the trace field's defining polynomial, leading first.
pub const FIELD_POLY: [i64; 12] = [1, -1, 3, -4, 5, -8, 8, -5, 6, -5, 2, -1];

pub fn trace_field() -> NumberField {
    NumberField::from_descending_ints(&FIELD_POLY).expect("monic")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Knot {
    KinoshitaTerasaka,
    Conway,
}

impl Knot {
    pub const ALL: [Knot; 2] = [Knot::KinoshitaTerasaka, Knot::Conway];

    pub fn short_name(self) -> &'static str {
        match self {
            Knot::KinoshitaTerasaka => "KT",
            Knot::Conway => "C",
        }
    }

    pub fn relators(self) -> [&'static str; 2] {
        match self {
            Knot::KinoshitaTerasaka => ["aBCbABBCbaBcbbcABcbbaB", "abcACaB"],
            Knot::Conway => ["abACbcbacBCABaBc", "aBcBCABacbCbAbacbc"],
        }
    }

    pub fn presentation(self) -> Presentation {
        Presentation::from_strs("abc", &self.relators()).expect("valid presentation")
    }

    /// A word in the generators that is a meridian of the knot.
    ///
    /// For KT, `b` only agrees with a meridian in homology; `cb` is one.
    pub fn meridian(self) -> Word {
        match self {
            Knot::KinoshitaTerasaka => Word::parse("cb").expect("letters"),
            Knot::Conway => Word::parse("b").expect("letters"),
        }
    }

    /// File stem used for the shipped data.
    pub fn file_stem(self) -> &'static str {
        match self {
            Knot::KinoshitaTerasaka => "kinoshita_terasaka",
            Knot::Conway => "conway",
        }
    }
}

impl fmt::Display for Knot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// `<a, b | bAbaBAbABa>`; every generator is a meridian.
pub fn figure_eight() -> Presentation {
    Presentation::from_strs("ab", &["bAbaBAbABa"]).expect("valid presentation")
}

// Rows as printed, top (labelled w^10) to bottom (labelled 1).
const PLUS: [(Knot, usize, [i64; 11]); 6] = [
    (Knot::KinoshitaTerasaka, 2, [356, -620, 636, -864, 1228, -1080, 780, -628, 428, -188, 124]),
    (Knot::Conway, 2, [356, -620, 636, -864, 1228, -1080, 780, -628, 428, -188, 124]),
    (
        Knot::KinoshitaTerasaka,
        4,
        [
            11112880, -38963592, 36107416, -31579196, 60889040, -58195768, 36555000, -31740272,
            21313180, -8829332, 7476160,
        ],
    ),
    (
        Knot::Conway,
        4,
        [
            11112880, -38963592, 36107416, -31579196, 60889040, -58195768, 36555000, -31740272,
            21313180, -8829332, 7476160,
        ],
    ),
    (
        Knot::KinoshitaTerasaka,
        6,
        [
            676803770859632,
            -640579476284656,
            212555254795952,
            -990061444305088,
            1004678681648016,
            -444238765345264,
            482101712163904,
            -371824600930944,
            51168266257072,
            -165869512283168,
            -37602419304496,
        ],
    ),
    (
        Knot::Conway,
        6,
        [
            662357458754672,
            -579216259622896,
            153724448856752,
            -943617945204928,
            908722528184976,
            -349679698188784,
            424247992815424,
            -320894530449024,
            15655188602032,
            -152117462516768,
            -50452054740016,
        ],
    ),
];

const MINUS: [(Knot, usize, [i64; 11]); 6] = [
    (
        Knot::KinoshitaTerasaka,
        2,
        [7352, 12100, -18868, -16, -19124, 29448, -14272, 13576, -13352, 2780, -5812],
    ),
    (Knot::Conway, 2, [7352, 12100, -18868, -16, -19124, 29448, -14272, 13576, -13352, 2780, -5812]),
    (
        Knot::KinoshitaTerasaka,
        4,
        [
            -106244812, -40892392, 135740632, 81031412, 70025564, -188927128, 71097428, -71628932,
            98553148, -4562444, 48068144,
        ],
    ),
    (
        Knot::Conway,
        4,
        [
            -84923788, -98464552, 176373400, 30483572, 154082012, -264857368, 118825172, -116091140,
            124139068, -18136844, 56560304,
        ],
    ),
    (
        Knot::KinoshitaTerasaka,
        6,
        [
            -5089618734386048,
            26333637242897408,
            -26132678464882128,
            18961525460403712,
            -41268295304316624,
            41815776250571680,
            -25207995553964480,
            22311420427155024,
            -15990083236426320,
            5898804809613840,
            -5891958922292320,
        ],
    ),
    (
        Knot::Conway,
        6,
        [
            -5181970358958464,
            26767528167113984,
            -26556943437149136,
            19282331500463872,
            -41948393922548432,
            42495766908786848,
            -25621419777084608,
            22676270315709264,
            -16248280122238544,
            5996288593045520,
            -5986195442605152,
        ],
    ),
];

/// Published column for `(knot, dim, lift)`, top row first.
pub fn expected_column(knot: Knot, dim: usize, lift: LiftSign) -> Option<Vec<Rational>> {
    let table = match lift {
        LiftSign::Plus => &PLUS,
        LiftSign::Minus => &MINUS,
    };
    table
        .iter()
        .find(|(k, d, _)| *k == knot && *d == dim)
        .map(|(_, _, col)| col.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
}

/// Dimensions covered by the published tables.
pub const TABLE_DIMS: [usize; 3] = [2, 4, 6];

/// How a computed torsion relates to a published column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnMatch {
    /// Display vector (`w^10` down to `1`) equals the column entry by entry.
    pub literal: bool,
    /// `s` with `s * coords[k] == column[k]` for every `k`, reading the
    /// internal ascending coordinates (`1, w, ..., w^10`) against the column
    /// top to bottom.
    pub ascending_scale: Option<Rational>,
}

impl ColumnMatch {
    pub fn new(value: &NfElem, column: &[Rational]) -> Self {
        let display = value.display_coords();
        let literal = display.as_slice() == column;
        let asc = value.coords();
        ColumnMatch {
            literal,
            ascending_scale: common_scale(&asc, column),
        }
    }
}

fn common_scale(v: &[Rational], w: &[Rational]) -> Option<Rational> {
    if v.len() != w.len() {
        return None;
    }
    let k = v.iter().position(|x| !x.is_zero())?;
    let s = &w[k] / &v[k];
    if s.is_zero() {
        return None;
    }
    v.iter().zip(w).all(|(x, y)| &(x * &s) == y).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn columns_present_for_every_cell() {
        for knot in Knot::ALL {
            for d in TABLE_DIMS {
                for l in [LiftSign::Plus, LiftSign::Minus] {
                    assert_eq!(expected_column(knot, d, l).unwrap().len(), 11);
                }
            }
        }
        assert!(expected_column(Knot::Conway, 8, LiftSign::Plus).is_none());
    }

    #[test]
    fn column_match_modes() {
        let k = trace_field();
        let x = k.gen();
        let mut col = vec![rat(0); 11];
        col[9] = rat(1);
        let m = ColumnMatch::new(&x, &col);
        assert!(m.literal);
        assert!(m.ascending_scale.is_none());
        let mut col = vec![rat(0); 11];
        col[1] = rat(3);
        let m = ColumnMatch::new(&x, &col);
        assert!(!m.literal);
        assert_eq!(m.ascending_scale, Some(rat(3)));
    }

    #[test]
    fn built_in_meridians_have_unit_abelian_image() {
        use crate::freegroup::abelianization;
        for knot in Knot::ALL {
            let p = knot.presentation();
            let alpha = abelianization(&p).unwrap();
            assert_eq!(alpha.of_word(&knot.meridian()).abs(), 1);
        }
        assert!(abelianization(&figure_eight()).is_ok());
    }
}
