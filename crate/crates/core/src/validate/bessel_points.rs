//! Frozen `(m, x, J_m(x), Y_m(x))` samples from a 60-digit ascending-series
//! evaluation, `m ≤ 20`, `0.05 ≤ x ≤ 50`.

pub const BESSEL_POINTS: [(u32, f64, f64, f64); 50] = [
    (4, 36.425503, -0.03560837718944965, -0.12772586267247035),
    (16, 33.21373, 0.03338283324354846, -0.14404061718763667),
    (13, 27.410478, -0.16181207615075383, 0.013430203623652357),
    (14, 8.750815, 0.00285033799393436, -10.276944844561202),
    (18, 47.680074, -0.11981347384715839, -0.007849800369726607),
    (16, 11.570303, 0.009260941518567812, -3.1521994824450936),
    (8, 2.700864, 0.00022353529327607554, -189.36300640892085),
    (20, 37.245898, -0.061387591807468625, -0.1283821659172749),
    (20, 32.176564, 0.15756019240100605, 0.019976149756440766),
    (1, 34.357961, 0.11261286580722668, 0.07650657692797137),
    (19, 23.631206, 0.08936946410383657, 0.19152465207394317),
    (18, 20.521244, 0.24785718260075892, -0.0025231925404270235),
    (20, 47.627431, 0.08125363902102749, 0.090130661203417),
    (11, 29.615906, 0.07609551470056507, 0.13173312016026356),
    (14, 6.069352, 3.44468641405807e-05, -733.1596301766995),
    (20, 21.061044, 0.21706138659877616, -0.17828401303079364),
    (1, 25.067771, -0.1182138406580926, -0.10694188729440755),
    (7, 33.061119, -0.14029712525073879, -0.004025962976066366),
    (0, 23.772884, -0.0896313667299415, -0.13689248645684252),
    (17, 25.501796, -0.13147821347654048, -0.1269094706966387),
    (4, 38.22153, 0.12919925427861373, -0.007350312528313627),
    (8, 38.564539, 0.07979908894843643, 0.10249489222475631),
    (16, 26.98979, 0.16214685767443227, -0.054354113432713805),
    (2, 44.409584, -0.11385940311965892, 0.037213744913745836),
    (12, 22.348386, 0.17677869946470348, -0.049671383547756985),
    (2, 14.272901, -0.10513243530343076, -0.1842924643233799),
    (4, 43.103362, 0.010854406511473954, -0.12130433814881114),
    (5, 38.130017, -0.003840174525276972, -0.12971150769570106),
    (20, 17.127867, 0.039425074875833264, -0.8122999934410803),
    (3, 23.269534, 0.10456748684556423, -0.12902433183367995),
    (19, 30.288526, 0.1475974336812001, -0.0718545894665292),
    (1, 44.16224, -0.06749900443053136, -0.0993082687437659),
    (10, 49.005105, -0.05982739628966772, 0.09843719210824443),
    (11, 3.194276, 3.4875652212843653e-06, -8675.007930280062),
    (2, 19.325282, -0.1778564302571367, 0.038410730693175583),
    (2, 39.807414, -0.02523760370150089, -0.1239939295142324),
    (4, 20.425829, 0.06836500431811454, 0.16461085179403143),
    (16, 5.819068, 7.606610771851975e-07, -28088.39640229805),
    (5, 15.523716, 0.034646176891477205, 0.20512013106881136),
    (7, 15.888332, 0.17187493542554516, -0.12255708378463787),
    (14, 3.204293, 7.090899719747421e-09, -3294386.453200247),
    (16, 36.771213, -0.034300548809431654, 0.1343368161361911),
    (19, 22.072657, 0.226604218066755, 0.05803033986345175),
    (10, 10.435987, 0.24289412297387783, -0.29045352486069564),
    (15, 45.733697, 0.0362913783177886, -0.11582931418523622),
    (0, 22.551565, -0.16355200198098635, 0.03838415499338001),
    (2, 19.743832, -0.17627378274829095, -0.03643002661715863),
    (13, 2.06271, 2.2230285463410387e-10, -111566570.96602379),
    (9, 34.556128, -0.05222977697214777, 0.12786799927828907),
    (20, 49.888372, -0.11456734550221341, 0.028312481333254407),
];
