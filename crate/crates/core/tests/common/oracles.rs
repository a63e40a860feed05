//! Extended-precision reference values produced by `oracles/mp_oracles.py`
//! (mpmath, 40 to 50 significant digits). Each pair is `(re, im)`.

pub const LN_GAMMA_1_3I: (f64, f64) = (-3.2441442995897561916, 1.0533507710686132003);
pub const LN_GAMMA_HALF_3I: (f64, f64) = (-3.7934504504362231734, 0.30981927108643916606);
pub const LN_GAMMA_35_M2I: (f64, f64) = (0.58073321208126816934, -2.3353168419161627716);
pub const LN_GAMMA_NEG: (f64, f64) = (-0.93508562129827747868, -8.8709628852474591986);
pub const LN_GAMMA_BIG: (f64, f64) = (99.178819623083928666, 93.407639085306891227);
pub const J_3I_0P1: (f64, f64) = (-20.93635187397313654, 14.789793463865951678);
pub const J_3I_2P5: (f64, f64) = (22.495750525734519104, 1.5956948572179434967);
pub const J_3I_19: (f64, f64) = (6.4703834724916982202, -7.7865835971411255342);
pub const J_3I_25: (f64, f64) = (3.9925246672633314957, -7.8970810409994566033);
pub const J_HALF_I_10: (f64, f64) = (-0.32462748000922271364, 0.050980762694456645681);
pub const J_5I_7: (f64, f64) = (-77.706859581640554991, -341.79235632858492038);
pub const AH_3_20: (f64, f64) = (0.17579660995743303273, 0.023791223720169757187);
pub const AH_3_30: (f64, f64) = (-0.10264943993301877937, -0.10283826697567314004);
pub const AH_5_40: (f64, f64) = (0.045491535411894494779, 0.11714098282311249722);
pub const AH_HALF_5: (f64, f64) = (-0.18466832096567172697, -0.30336236415481542533);
pub const CHI_MU2_NU3_X10: (f64, f64) = (0.78618634015767334385, 0.10639758701241002306);
pub const HYP2F1_LEGENDRE: (f64, f64) = (-0.27140382482361227185, 0.87703215192486463136);
pub const HYP2F1_GENERIC: (f64, f64) = (0.84799281781523976164, -0.36746537761115886463);
pub const HYP1F1_A: (f64, f64) = (6.3352207663694432487, 1.5361721437386046572);
pub const HYP1F1_B: (f64, f64) = (0.18832942327801632258, 2.0183957565141631549);
pub const LEGENDRE_P_M3I_1P5: (f64, f64) = (5.0903482574363245441, -22.982007976985104534);
pub const LAG_F0_PLUS: (f64, f64) = (0.00046335201933245214365, 0.0045726204339858736023);
pub const LAG_F1_PLUS: (f64, f64) = (0.0045090954450783374466, 0.0093033011244974199253);
pub const LAG_F2_PLUS: (f64, f64) = (0.012903069965530406716, 0.012587432767357053744);
pub const LAG_F3_PLUS: (f64, f64) = (0.025176223463861554497, 0.011578879441912205563);
pub const OSC_F0_PLUS: (f64, f64) = (-0.069075813044278982259, 0.10527898264051124577);
pub const OSC_F1_PLUS: (f64, f64) = (0.14856754064997300045, 0.24579502372432434754);
pub const OSC_F2_PLUS: (f64, f64) = (0.38557459801118879934, -0.042375350952469612394);
pub const OSC_F3_PLUS: (f64, f64) = (0.11045978233742067337, -0.28734287402420138497);
pub const LAG_F100_PLUS: (f64, f64) = (-0.051404757284548395853, 0.0016030568626945190315);
pub const LAG_F1000_PLUS: (f64, f64) = (-0.017138849003615134371, 0.0080718212524325721445);
pub const LAG_F10000_PLUS: (f64, f64) = (-0.0031419541245876506803, 0.0057723828489502584269);
pub const OSC_F100_PLUS: (f64, f64) = (0.033062005772267806241, 0.039431691581925666341);
pub const OSC_F1000_PLUS: (f64, f64) = (-0.011443127926062113763, -0.0046785552407358561193);
pub const OSC_F10000_PLUS: (f64, f64) = (0.0042168429835069719796, 0.000079685121650733197324);
