#pragma once

// Soft-margin linear SVM reference (C = 1) produced by
// tools/oracles/svm_reference.py with cvxopt. Labels: +1 at even rows,
// -1 at odd rows.

namespace riemdr::fixtures {

inline constexpr int kSvmN = 40;
inline constexpr double kSvmC = 1.0;

inline constexpr double kSvmX[kSvmN][3] = {
    {0.901, 0.749, -0.499},
    {-1.791, -0.905, -0.767},
    {0.960, 1.790, -0.717},
    {-1.520, 0.040, 0.582},
    {1.005, -0.480, -0.254},
    {-0.205, -1.794, -0.233},
    {-1.001, -0.840, -2.067},
    {-1.135, -1.717, 0.496},
    {1.057, 0.263, -2.742},
    {-1.439, -0.499, 0.338},
    {-0.630, -0.028, -1.204},
    {-1.709, 0.611, -0.583},
    {0.867, 1.334, -0.809},
    {-1.012, -0.340, 0.289},
    {-0.325, 0.526, 1.134},
    {-2.447, 0.409, 0.344},
    {0.259, 2.450, 0.537},
    {-2.099, -0.375, 0.802},
    {0.711, 1.133, -0.292},
    {-0.233, 0.989, -0.451},
    {1.103, -0.013, -0.098},
    {-2.087, -1.029, 0.029},
    {1.799, 1.595, -1.549},
    {-1.695, 0.197, -1.767},
    {0.437, 0.353, 1.032},
    {-0.211, -0.777, -0.144},
    {0.650, 1.974, -0.653},
    {-1.204, -0.097, 0.104},
    {0.703, -0.664, -0.237},
    {-1.344, 0.716, 0.878},
    {0.876, 1.118, -0.565},
    {0.152, -0.455, 0.808},
    {-0.391, 0.797, -1.913},
    {-2.935, -0.754, -0.675},
    {1.064, 2.695, -1.057},
    {-1.524, -0.245, 0.718},
    {0.724, 0.244, 0.477},
    {-0.380, -1.484, 0.146},
    {0.935, -0.604, 0.035},
    {-1.758, 0.522, 0.418},
};

inline constexpr double kSvmW[3] = {1.2960019663027844, 0.7274082778539358, -0.31471515553061269};
inline constexpr double kSvmB = 0.49732222232340095;

inline constexpr double kSvmDecision[kSvmN] = {
    2.3668916566845835, -2.2407352664907179,
    3.2691956938480682, -1.6266686558614905,
    1.5305858745925858, -0.99999999999999789,
    -0.76048247286121573, -2.3786987396486512,
    2.9214536342459692, -1.8369750604047668,
    0.039390599031594253, -1.0896197446449558,
    2.8459231305893313, -1.1525032619937021,
    0.10185135105445148, -2.4847466170797836,
    2.446134973818026, -2.7481655638769213,
    2.3348300245881286, 1.0566970861167011,
    1.9481981687852707, -2.965063738772598,
    4.4765397387960562, -1.0000000000000009,
    0.99566416317256479, -0.29601144206258645,
    2.9811364374653704, -1.1663531242321672,
    1.0000000000000002, -1.0000000000000013,
    2.6236764623201365, 0.10905390910914831,
    1.1723799434786613, -3.6424766602939753,
    4.1692875426817784, -1.8819652840672365,
    1.4629961365348749, -1.1205808219143671,
    1.2587144305491558, -1.5328930484089356,
};

}  // namespace riemdr::fixtures
