//! Reference NNW5 coefficients for K = 4 on LGL flux points, used to
//! cross-check the tables derived at setup.
//!
//! Entries are `(d, c)` for the targets 1L, 1R, 2L, 2R, 3L; the remaining
//! five targets follow from the mirror relations.

#![allow(clippy::excessive_precision)]

pub(crate) type ReferenceTarget = ([f64; 3], [[f64; 3]; 3]);

pub(crate) const REFERENCE: [ReferenceTarget; 5] = [
    (
        [
            0.34210708229202832129514593919672,
            0.6308070429239803035449279980960,
            0.027085874783991375159926062707238,
        ],
        [
            [
                -0.043104119062505851129386949103353,
                0.62757338302641182681128438378820,
                0.41553073603609402431810256531515,
            ],
            [
                0.41553073603609402431810256531515,
                0.62757338302641182681128438378820,
                -0.043104119062505851129386949103353,
            ],
            [
                1.3850967572035142771188790865197,
                -0.47383715518113200994718334103294,
                0.088740397977617732828304254513256,
            ],
        ],
    ),
    (
        [
            0.12849535271459107836474476379591,
            0.7282735720676514895919532282452,
            0.14323107521775743204330200795893,
        ],
        [
            [
                0.22720313860956266078248678148547,
                -1.4245445419469326647976617868947,
                2.1973414033373700040151750054092,
            ],
            [
                -0.30686122157984679047945926834897,
                1.0796580829702841296969724868635,
                0.22720313860956266078248678148547,
            ],
            [
                0.52024206914481960337059414500993,
                0.54529095781405304293936341037295,
                -0.065533026958872646309957555382876,
            ],
        ],
    ),
    (
        [
            0.5585589126271906359535502604210,
            0.421765474422970721147577236989,
            0.019675612949838642898872502590336,
        ],
        [
            [
                -0.30686122157984679047945926834897,
                1.0796580829702841296969724868635,
                0.22720313860956266078248678148547,
            ],
            [
                0.52024206914481960337059414500993,
                0.54529095781405304293936341037295,
                -0.065533026958872646309957555382876,
            ],
            [
                1.7197296427724247141318458677543,
                -1.0186627618222429820572260495517,
                0.29893311904981826792538018179744,
            ],
        ],
    ),
    (
        [
            0.13159031124797584071088104105971,
            0.6554862204946998473379356400573,
            0.21292346825732431195118331888295,
        ],
        [
            [
                1.5090040675292501024133653209020,
                -2.9677269746646236620838843129099,
                2.4587229071353735596705189920079,
            ],
            [
                -0.21677318533425579686895436642487,
                0.89451153321243085774192320462416,
                0.32226165212182493912703116180071,
            ],
            [
                0.40514931162836377750297939141122,
                0.71940940490306471718773980440933,
                -0.12455871653142849469071919582055,
            ],
        ],
    ),
    (
        [
            0.37482146743990888513676931020257,
            0.5651196564082159925965654892928,
            0.06005887615187512226666520050463,
        ],
        [
            [
                -0.21677318533425579686895436642487,
                0.89451153321243085774192320462416,
                0.32226165212182493912703116180071,
            ],
            [
                0.40514931162836377750297939141122,
                0.71940940490306471718773980440933,
                -0.12455871653142849469071919582055,
            ],
            [
                2.0112028910174770092546365556601,
                -1.7162961134215585397544348429330,
                0.70509322240408153049979828727285,
            ],
        ],
    ),
];

/// Mirror a target: `d` reversed, `c_{m,j} -> c_{r+1-m, r+1-j}`.
pub(crate) fn mirror(t: &ReferenceTarget) -> ReferenceTarget {
    let (d, c) = t;
    let mut cm = [[0.0; 3]; 3];
    for m in 0..3 {
        for j in 0..3 {
            cm[m][j] = c[2 - m][2 - j];
        }
    }
    ([d[2], d[1], d[0]], cm)
}

/// All ten reference targets in order 1L, 1R, …, 5L, 5R.
pub(crate) fn expanded() -> Vec<ReferenceTarget> {
    let mut out: Vec<ReferenceTarget> = REFERENCE.to_vec();
    // 3R mirrors 3L, 4L mirrors 2R, 4R mirrors 2L, 5L mirrors 1R, 5R mirrors 1L
    out.push(mirror(&REFERENCE[4]));
    out.push(mirror(&REFERENCE[3]));
    out.push(mirror(&REFERENCE[2]));
    out.push(mirror(&REFERENCE[1]));
    out.push(mirror(&REFERENCE[0]));
    out
}
