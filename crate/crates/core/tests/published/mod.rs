//! Published amplitude tables for λ = 10, μ = 1, θ = 1.
#![allow(dead_code, clippy::approx_constant)]

/// (Δ, fixed point, linear, quadratic), N = 2.
pub const TABLE_N2: [(f64, f64, f64, f64); 13] = [
    (0.60, 1.2253, 1.4555, 1.4522),
    (0.80, 1.7984, 1.8985, 1.8952),
    (1.00, 2.2609, 2.3092, 2.3062),
    (1.20, 2.6590, 2.6839, 2.6813),
    (1.40, 3.0071, 3.0205, 3.0183),
    (1.60, 3.3114, 3.3189, 3.3172),
    (1.80, 3.5759, 3.5802, 3.5789),
    (2.00, 3.8042, 3.8068, 3.8058),
    (2.20, 3.9998, 4.0014, 4.0007),
    (2.40, 4.1663, 4.1673, 4.1667),
    (2.60, 4.3071, 4.3077, 4.3073),
    (2.80, 4.4255, 4.4259, 4.4256),
    (3.00, 4.5247, 4.5249, 4.5248),
];

pub const TABLE_N4: [(f64, f64, f64, f64); 13] = [
    (0.90, 0.4075, 0.9973, 0.9263),
    (1.10, 0.8904, 1.1898, 1.1251),
    (1.30, 1.1847, 1.3658, 1.3102),
    (1.50, 1.4088, 1.5243, 1.4786),
    (1.70, 1.5896, 1.6651, 1.6288),
    (1.90, 1.7386, 1.7888, 1.7606),
    (2.10, 1.8625, 1.8961, 1.8748),
    (2.30, 1.9657, 1.9885, 1.9725),
    (2.50, 2.0518, 2.0673, 2.0555),
    (2.70, 2.1235, 2.1340, 2.1254),
    (2.90, 2.1831, 2.1903, 2.1840),
    (3.10, 2.2325, 2.2375, 2.2329),
    (3.30, 2.2734, 2.2769, 2.2736),
];

pub const TABLE_N6: [(f64, f64, f64, f64); 13] = [
    (1.40, 0.1479, 0.8050, 0.6458),
    (1.60, 0.5719, 0.9007, 0.7603),
    (1.80, 0.7775, 0.9875, 0.8679),
    (2.00, 0.9235, 1.0650, 0.9657),
    (2.20, 1.0354, 1.1333, 1.0521),
    (2.40, 1.1240, 1.1930, 1.1270),
    (2.60, 1.1952, 1.2445, 1.1910),
    (2.80, 1.2529, 1.2885, 1.2451),
    (3.00, 1.3000, 1.3260, 1.2904),
    (3.20, 1.3384, 1.3576, 1.3281),
    (3.40, 1.3698, 1.3842, 1.3594),
    (3.60, 1.3956, 1.4065, 1.3853),
    (3.80, 1.4167, 1.4250, 1.4067),
];

pub const TABLE_N8: [(f64, f64, f64, f64); 13] = [
    (2.20, 0.0433, 0.5980, 0.0555),
    (2.40, 0.3568, 0.6393, 0.1327),
    (2.60, 0.4848, 0.6760, 0.1934),
    (2.80, 0.5718, 0.7083, 0.2416),
    (3.00, 0.6363, 0.7363, 0.2799),
    (3.20, 0.6858, 0.7605, 0.3107),
    (3.40, 0.7248, 0.7811, 0.3355),
    (3.60, 0.7557, 0.7985, 0.3555),
    (3.80, 0.7806, 0.8132, 0.4367),
    (4.00, 0.8006, 0.8256, 0.5038),
    (4.20, 0.8168, 0.8359, 0.5454),
    (4.40, 0.8299, 0.8445, 0.5757),
    (4.60, 0.8406, 0.8516, 0.5989),
];

/// (Δ, nonlinear 1, linear 1, nonlinear 2, linear 2), N = 3.
pub const TABLE_N3: [(f64, f64, f64, f64, f64); 13] = [
    (1.50, 1.3793, 1.4267, 2.7587, 2.8534),
    (1.70, 1.5553, 1.5805, 3.1107, 3.1609),
    (1.90, 1.7081, 1.7192, 3.4162, 3.4385),
    (2.10, 1.8381, 1.8427, 3.6762, 3.6854),
    (2.30, 1.9473, 1.9491, 3.8946, 3.8983),
    (2.50, 2.0383, 2.0391, 4.0766, 4.0781),
    (2.70, 2.1138, 2.1141, 4.2276, 4.2282),
    (2.90, 2.1763, 2.1764, 4.3525, 4.3528),
    (3.10, 2.2279, 2.2279, 4.4557, 4.4559),
    (3.30, 2.2704, 2.2705, 4.5409, 4.5409),
    (3.50, 2.3055, 2.3055, 4.6110, 4.6110),
    (3.70, 2.3344, 2.3344, 4.6687, 4.6687),
    (3.90, 2.3581, 2.3581, 4.7162, 4.7162),
];

pub const TABLE_N5: [(f64, f64, f64, f64, f64); 13] = [
    (1.90, 1.0046, 1.0304, 1.5068, 1.5456),
    (2.10, 1.1030, 1.1184, 1.6545, 1.6777),
    (2.30, 1.1841, 1.1938, 1.7761, 1.7906),
    (2.50, 1.2511, 1.2575, 1.8766, 1.8862),
    (2.70, 1.3065, 1.3109, 1.9597, 1.9664),
    (2.90, 1.3523, 1.3555, 2.0285, 2.0333),
    (3.10, 1.3902, 1.3926, 2.0853, 2.0889),
    (3.30, 1.4214, 1.4233, 2.1322, 2.1349),
    (3.50, 1.4472, 1.4487, 2.1708, 2.1730),
    (3.70, 1.4684, 1.4696, 2.2026, 2.2044),
    (3.90, 1.4858, 1.4869, 2.2287, 2.2303),
    (4.10, 1.5002, 1.5010, 2.2503, 2.2516),
    (4.30, 1.5119, 1.5127, 2.2679, 2.2691),
];

pub const TABLE_N7: [(f64, f64, f64, f64, f64); 13] = [
    (2.60, 0.7299, 0.7887, 0.9732, 1.0517),
    (2.80, 0.7847, 0.8303, 1.0463, 1.1071),
    (3.00, 0.8285, 0.8651, 1.1046, 1.1535),
    (3.20, 0.8638, 0.8941, 1.1517, 1.1921),
    (3.40, 0.8923, 0.9181, 1.1898, 1.2241),
    (3.60, 0.9155, 0.9380, 1.2207, 1.2507),
    (3.80, 0.9345, 0.9544, 1.2459, 1.2726),
    (4.00, 0.9499, 0.9680, 1.2665, 1.2906),
    (4.20, 0.9625, 0.9791, 1.2833, 1.3055),
    (4.40, 0.9728, 0.9883, 1.2970, 1.3177),
    (4.60, 0.9812, 0.9958, 1.3083, 1.3277),
    (4.80, 0.9881, 1.0020, 1.3174, 1.3360),
    (5.00, 0.9937, 1.0071, 1.3249, 1.3427),
];

pub const TABLE_N9: [(f64, f64, f64, f64, f64); 13] = [
    (3.80, 0.3872, 0.5646, 0.4840, 0.7057),
    (4.00, 0.4136, 0.5758, 0.5170, 0.7197),
    (4.20, 0.4342, 0.5850, 0.5427, 0.7313),
    (4.40, 0.4505, 0.5927, 0.5631, 0.7409),
    (4.60, 0.4635, 0.5990, 0.5794, 0.7488),
    (4.80, 0.4740, 0.6042, 0.5925, 0.7553),
    (5.00, 0.4824, 0.6085, 0.6030, 0.7606),
    (5.20, 0.4892, 0.6120, 0.6115, 0.7650),
    (5.40, 0.4948, 0.6149, 0.6185, 0.7686),
    (5.60, 0.4993, 0.6173, 0.6241, 0.7716),
    (5.80, 0.5029, 0.6192, 0.6287, 0.7740),
    (6.00, 0.5059, 0.6208, 0.6324, 0.7760),
    (6.20, 0.5084, 0.6221, 0.6355, 0.7776),
];
