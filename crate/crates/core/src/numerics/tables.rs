//! Gauss-Legendre tables (positive half of the symmetric node set).

#![allow(clippy::excessive_precision, clippy::unreadable_literal)]

pub(crate) const GL8_X: [f64; 4] = [0.96028985649753623168, 0.79666647741362673959, 0.52553240991632898582, 0.18343464249564980494];
pub(crate) const GL8_W: [f64; 4] = [0.10122853629037625915, 0.22238103445337447054, 0.31370664587788728734, 0.36268378337836198297];
pub(crate) const GL16_X: [f64; 8] = [
    0.98940093499164993260,
    0.94457502307323257608,
    0.86563120238783174388,
    0.75540440835500303390,
    0.61787624440264374845,
    0.45801677765722738634,
    0.28160355077925891323,
    0.095012509837637440185,
];
pub(crate) const GL16_W: [f64; 8] = [
    0.027152459411754094852,
    0.062253523938647892863,
    0.095158511682492784810,
    0.12462897125553387205,
    0.14959598881657673208,
    0.16915651939500253819,
    0.18260341504492358887,
    0.18945061045506849629,
];
pub(crate) const GL32_X: [f64; 16] = [
    0.99726386184948156354,
    0.98561151154526833540,
    0.96476225558750643077,
    0.93490607593773968917,
    0.89632115576605212397,
    0.84936761373256997013,
    0.79448379596794240696,
    0.73218211874028968039,
    0.66304426693021520098,
    0.58771575724076232904,
    0.50689990893222939002,
    0.42135127613063534536,
    0.33186860228212764978,
    0.23928736225213707454,
    0.14447196158279649349,
    0.048307665687738316235,
];
pub(crate) const GL32_W: [f64; 16] = [
    0.0070186100094700966004,
    0.016274394730905670605,
    0.025392065309262059456,
    0.034273862913021433103,
    0.042835898022226680657,
    0.050998059262376176196,
    0.058684093478535547145,
    0.065822222776361846838,
    0.072345794108848506225,
    0.078193895787070306472,
    0.083311924226946755222,
    0.087652093004403811143,
    0.091173878695763884713,
    0.093844399080804565639,
    0.095638720079274859419,
    0.096540088514727800567,
];
