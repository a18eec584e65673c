//! Reference tables transcribed in factored form, `a{j}` for the variables.

#![allow(dead_code)]

use padexp::IntPoly;

pub struct MinorRow {
    pub l: &'static [usize],
    pub gcd: &'static str,
    /// Empty when the printed table omits the quotients.
    pub quotients: &'static [&'static str],
}

pub const TABLE1_B: [&str; 5] = [
    "24",
    "-6*(a1 + 3*a2)",
    "6*a2*(a1 + a2)",
    "-a2^2*(3*a1 + a2)",
    "a1*a2^3",
];

pub const TABLE1_TAU: [&str; 5] = [
    "24*35*(5*a1^2 - 5*a1*a2 + a2^2)",
    "-24*5*(7*a1^3 + 7*a1^2*a2 - 13*a1*a2^2 + 3*a2^3)",
    "12*5*a2*(7*a1^3 - 3*a1^2*a2 - 3*a1*a2^2 + a2^3)",
    "-4*a2^2*(3*a1 - a2)*(7*a1^2 - 4*a1*a2 - a2^2)",
    "a1*a2^3*(7*a1^2 - 8*a1*a2 + 2*a2^2)",
];

pub const TABLE2: [MinorRow; 7] = [
    MinorRow {
        l: &[1, 1],
        gcd: "3*(a1 - a2)",
        quotients: &["6", "2*(a1 + a2)", "a1*a2"],
    },
    MinorRow {
        l: &[1, 2],
        gcd: "2*a2*(a1 - a2)",
        quotients: &[
            "20*(2*a1 - a2)",
            "2*(5*a1^2 + 5*a1*a2 - 4*a2^2)",
            "2*a2*(5*a1^2 - a1*a2 - a2^2)",
            "a1*a2^2*(5*a1 - 3*a2)",
        ],
    },
    MinorRow {
        l: &[2, 2],
        gcd: "25*a1*a2*(a1 - a2)^4",
        quotients: &[
            "30",
            "10*(a1 + a2)",
            "2*(a1^2 + 4*a1*a2 + a2^2)",
            "3*a1*a2*(a1 + a2)",
            "2*a1^2*a2^2",
        ],
    },
    MinorRow {
        l: &[1, 3],
        gcd: "5*a2^3*(a1 - a2)",
        quotients: &[
            "35*(5*a1^2 - 5*a1*a2 + a2^2)",
            "5*(7*a1^3 + 7*a1^2*a2 - 13*a1*a2^2 + 3*a2^3)",
            "5*a2*(7*a1^3 - 3*a1^2*a2 - 3*a1*a2^2 + a2^3)",
            "a2^2*(3*a1 - a2)*(7*a1^2 - 4*a1*a2 - a2^2)",
            "a1*a2^3*(7*a1^2 - 8*a1*a2 + 2*a2^2)",
        ],
    },
    MinorRow {
        l: &[1, 4],
        gcd: "3*a2^6*(a1 - a2)",
        quotients: &[
            "252*(2*a1 - a2)*(7*a1^2 - 7*a1*a2 + a2^2)",
            "14*(42*a1^4 + 42*a1^3*a2 - 133*a1^2*a2^2 + 67*a1*a2^3 - 8*a2^4)",
            "14*a2*(42*a1^4 - 28*a1^3*a2 + 22*a1*a2^3 - 3*a2^4)",
            "3*a2^2*(126*a1^4 - 154*a1^3*a2 + 21*a1^2*a2^2 + 21*a1*a2^3 - 4*a2^4)",
            "2*a2^3*(84*a1^4 - 126*a1^3*a2 + 49*a1^2*a2^2 - a1*a2^3 - a2^4)",
            "a1*a2^4*(42*a1^3 - 70*a1^2*a2 + 35*a1*a2^2 - 5*a2^3)",
        ],
    },
    MinorRow {
        l: &[2, 3],
        gcd: "7*a1*a2^3*(a1 - a2)^4",
        quotients: &[
            "420*(7*a1^2 - 7*a1*a2 + 2*a2^2)",
            "105*(8*a1^3 + 2*a1^2*a2 - 8*a1*a2^2 + 3*a2^3)",
            "10*(14*a1^4 + 56*a1^3*a2 - 40*a1^2*a2^2 - 9*a1*a2^3 + 9*a2^4)",
            "15*a2*(14*a1^4 + 8*a1^3*a2 - 17*a1^2*a2^2 + 4*a1*a2^3 + a2^4)",
            "6*a1*a2^2*(28*a1^3 - 16*a1^2*a2 - 7*a1*a2^2 + 5*a2^3)",
            "5*a1^2*a2^3*(14*a1^2 - 16*a1*a2 + 5*a2^2)",
        ],
    },
    MinorRow {
        l: &[3, 3],
        gcd: "4116*a1^3*a2^3*(a1 - a2)^9",
        quotients: &[
            "84",
            "28*(a1 + a2)",
            "7*(a1^2 + 3*a1*a2 + a2^2)",
            "(a1 + a2)*(a1^2 + 8*a1*a2 + a2^2)",
            "2*a1*a2*(a1^2 + 3*a1*a2 + a2^2)",
            "2*a1^2*a2^2*(a1 + a2)",
            "a1^3*a2^3",
        ],
    },
];

pub const TABLE3: [MinorRow; 3] = [
    MinorRow {
        l: &[1, 1, 1],
        gcd: "8*(a1 - a2)*(a1 - a3)*(a2 - a3)",
        quotients: &[
            "12",
            "3*(a1 + a2 + a3)",
            "2*(a1*a2 + a1*a3 + a2*a3)",
            "3*a1*a2*a3",
        ],
    },
    MinorRow {
        l: &[1, 1, 2],
        gcd: "25*a3*(a1 - a2)*(a1 - a3)*(a2 - a3)",
        quotients: &[
            "10*(10*a1*a2 - 5*a1*a3 - 5*a2*a3 + 3*a3^2)",
            "10*(2*a1^2*a2 + 2*a1*a2^2 - a1^2*a3 + a1*a2*a3 - a2^2*a3 - a1*a3^2 - a2*a3^2 + a3^3)",
            "2*(5*a1^2*a2^2 + 5*a1^2*a2*a3 + 5*a1*a2^2*a3 - 4*a1^2*a3^2 - 4*a1*a2*a3^2 - 4*a2^2*a3^2 + a1*a3^3 + a2*a3^3 + a3^4)",
            "a3*(15*a1^2*a2^2 - 3*a1^2*a2*a3 - 3*a1*a2^2*a3 - 3*a1^2*a3^2 - a1*a2*a3^2 - 3*a2^2*a3^2 + 2*a1*a3^3 + 2*a2*a3^3)",
            "2*a1*a2*a3^2*(5*a1*a2 - 3*a1*a3 - 3*a2*a3 + 2*a3^2)",
        ],
    },
    MinorRow {
        l: &[2, 2, 2],
        gcd: "19208*a1*a2*a3*(a1 - a2)^4*(a1 - a3)^4*(a2 - a3)^4",
        quotients: &[],
    },
];

pub fn parse(s: &str) -> IntPoly {
    s.parse()
        .unwrap_or_else(|e| panic!("golden entry {s:?}: {e}"))
}

pub fn parse_all(v: &[&str]) -> Vec<IntPoly> {
    v.iter().map(|s| parse(s)).collect()
}
