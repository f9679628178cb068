// Generated by tests/oracles/generate.py; do not edit by hand.
#pragma once

namespace oracle {

inline constexpr double kLogGamma86_5 = 297.9923215187034;  // ln Gamma(0.5) + sum ln(0.5 + k)
inline constexpr double kLogGamma_1em3 = 6.907178885383853;
inline constexpr double kLogGamma_3_7 = 1.4280723266653879;
inline constexpr double kLogGamma_14_99 = 25.164481163825506;
inline constexpr double kLogGamma_15_01 = 25.217968095475186;
inline constexpr double kLogGamma_171_6 = 709.6573587630563;
inline constexpr double kLogGamma_1e5 = 1051287.7089736569;
inline constexpr double kLog1F1_2_5_0_5_10 = 15.160969175396813;  // 200-term series
inline constexpr double kLog1F1_86_5_0_5_50 = 158.71932085479676;
inline constexpr double kLog1F1_87_1_5_50 = 153.84153504321208;
inline constexpr double kLog1F1_500_5_0_5_2000 = 3295.1614720720777;
inline constexpr double kLog1F1_3_1_5_2e4 = 20014.041451901234;
inline constexpr double kLog1F1_1000_5_1_5_1_2e4 = 15551.57753998255;
inline constexpr double kTLogPdf_0_5 = 0.19622600810802765;  // t(0.35, 0.102, 3) at 0.5
inline constexpr double kInvGammaLogPdf = -0.7257913526447274;  // IG(1/2, 1/4) at g = 1/2
inline constexpr double kTCdf_0_2 = 0.11888178722000418;
inline constexpr double kTSf_0_6 = 0.04579972912739189;
inline constexpr double kTCdfFarTail = 7.097817145246691e-05;  // cdf(-40; 0, 1, 2.5)
inline constexpr double kTQuantile975 = 0.6746095231389948;
inline constexpr double kTQuantile025 = 0.025390476861005096;
inline constexpr double kTQuantileTiny = -156.8255927088943;  // standard t5 at 1e-10
inline constexpr double kLogSmoothIntegral = 0.8461787751955272;  // exp(sin 3x - x^2/2) (1+x)^0.3 on [0, 3]
inline constexpr double kLogAB_t2_n20 = 15.30077884264238;
inline constexpr double kLogCD_t6_22_n173 = 337.0591914802364;
inline constexpr double kLogCD_negative = 579.8600119248684;  // cancelling branch
inline constexpr double kLogBfNormal_t0_n30 = -1.3862943611198906;
inline constexpr double kLogBfNormal_two_sample = 1.5506448904208483;
inline constexpr double kLogBfNormal_t2_n20 = 1.5330636178375674;
inline constexpr double kLogBf_replication = 6.804243335984287;
inline constexpr double kLogBfPlus_two_sample = 0.8463072821552512;
inline constexpr double kLogBf01_n50_default = 1.556815272727296;
inline constexpr double kLogPosteriorAt0_4 = 1.9044455794180897;
inline constexpr double kPosteriorCiLower = 0.2918180999813583;
inline constexpr double kPosteriorMedian = 0.40896721201269304;
inline constexpr double kPosteriorCiUpper = 0.5230285959551548;
inline constexpr double kCauchyPosteriorCiLower = 0.308992545623286;  // t = 6.22, n = 173, default prior
inline constexpr double kCauchyPosteriorMedian = 0.46530057447602624;
inline constexpr double kCauchyPosteriorCiUpper = 0.6221182785512704;
inline constexpr double kBatchInformed_t2 = 1.7511837885542743;
inline constexpr double kBatchDefault_t2 = 0.9174716767313995;
inline constexpr double kBatchInformed_t3_5 = 4.274120438222509;
inline constexpr double kBatchDefault_t3_5 = 4.324155826805846;
inline constexpr double kBatchInformed_t5 = 7.201375784744047;
inline constexpr double kBatchDefault_t5 = 9.101095930565092;
inline constexpr double kQuantileScale_symmetric = 0.21220685808576284;
inline constexpr double kQuantileScale_skewed = 0.22246358825372856;
inline constexpr double kImpliedScale66 = 0.2197667612742129;  // 0.10 / q66 of t3
inline constexpr double kImpliedScale33 = 0.20559079625679874;  // 0.10 / |q33| of t3
inline constexpr double kPriorCiLower = 0.025390476861005096;
inline constexpr double kPriorCiUpper = 0.6746095231389948;
inline constexpr long kRoundTripChips[20] = {1, 1, 2, 2, 4, 6, 9, 12, 14, 14, 11, 8, 5, 3, 2, 1, 1, 1, 0, 0};

}  // namespace oracle
