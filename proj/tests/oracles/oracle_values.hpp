// Generated by gen_oracles.py (mpmath, 30 digits). Do not edit.
#pragma once

namespace oracle {

struct X1 { double x, value; };
struct NS { int N; double s, value; };
struct NST { int N; double s, theta, value; };
struct NSP { int N; double s, p, value; };
struct Kernel { int N; double s, r, value; };
struct BumpFraclap { int N; double s, beta, R, rho, value; };
struct SP { double s, p, value; };

inline constexpr X1 kGamma[] = {
    {0.1, 9.5135076986687318363},
    {0.5, 1.7724538509055160273},
    {1, 1.0},
    {1.5, 0.88622692545275801365},
    {2.75, 1.6083594219855456592},
    {7.3, 1271.4236336639092731},
    {-0.5, -3.5449077018110320546},
    {-1.25, 3.9213334478885684644},
    {-2.6, -0.88868571464650970475},
    {33.5, 1.5058569756267018925e+36},
};

inline constexpr X1 kLogGamma[] = {
    {0.001, 6.9071788853838536825},
    {3.5, 1.2009736023470742248},
    {60, 184.5338288614494905},
    {171.5, 709.14316303092824227},
    {400, 1994.5092334361334071},
};

inline constexpr NS kCns[] = {
    {1, 0.1, 0.090313982871455613452},
    {1, 0.5, 0.31830988618379067154},
    {1, 0.75, 0.29920671030107450845},
    {1, 0.99, 0.019632596687581782421},
    {2, 0.1, 0.032551422029941055115},
    {2, 0.5, 0.15915494309189533577},
    {2, 0.75, 0.17116712969055234293},
    {2, 0.99, 0.01245013003777174899},
    {3, 0.1, 0.01724870016517071392},
    {3, 0.5, 0.10132118364233777144},
    {3, 0.75, 0.11905056737670181835},
    {3, 0.99, 0.009311381929503470132},
    {5, 0.1, 0.0087846908582301140879},
    {5, 0.5, 0.064503068866398978369},
    {5, 0.75, 0.085263688241535731804},
    {5, 0.99, 0.0073801232562631963327},
};

inline constexpr NST kLambda[] = {
    {1, 0.25, 0.1, 0.093155575103745686229},
    {1, 0.25, 0.25, 0.13999967745248263087},
    {1, 0.25, 0.4, 0.093155575103745686229},
    {1, 0.5, -0.1, -0.015838444032453629384},
    {1, 0.75, -0.6, -0.076930589618334077238},
    {2, 0.25, 0.1, 0.17266429392239455401},
    {2, 0.25, 0.75, 0.51792989522583891799},
    {2, 0.25, 1.4, 0.17266429392239455401},
    {2, 0.5, 0.1, 0.087002408689886963817},
    {2, 0.5, 0.5, 0.22847329052223181269},
    {2, 0.5, 0.9, 0.087002408689886963817},
    {2, 0.75, 0.1, 0.037999062941090512784},
    {2, 0.75, 0.25, 0.059166573711041089316},
    {2, 0.75, 0.4, 0.037999062941090512784},
    {3, 0.25, 0.1, 0.20960004398342779402},
    {3, 0.25, 1.25, 0.81597791751976735986},
    {3, 0.25, 2.4, 0.20960004398342779402},
    {3, 0.5, 0.1, 0.14254599629208266445},
    {3, 0.5, 1.0, 0.63661977236758134308},
    {3, 0.5, 1.9, 0.14254599629208266445},
    {3, 0.75, 0.1, 0.11539588442750111586},
    {3, 0.75, 0.75, 0.44642959996256534301},
    {3, 0.75, 1.4, 0.11539588442750111586},
    {5, 0.25, 0.1, 0.25326671981330858444},
    {5, 0.25, 2.25, 1.2599970970723436778},
    {5, 0.25, 4.4, 0.25326671981330858444},
    {5, 0.5, 0.1, 0.21757020486686301417},
    {5, 0.5, 2.0, 1.5707963267948966192},
    {5, 0.5, 3.9, 0.21757020486686301417},
    {5, 0.75, 0.1, 0.23903433202839516856},
    {5, 0.75, 1.75, 1.9148802515996370367},
    {5, 0.75, 3.4, 0.23903433202839516856},
};

inline constexpr NSP kHerbst[] = {
    {3, 0.5, 2.0, 1.2533141373155002512},
    {4, 0.75, 2.0, 0.95956461907433268365},
    {2, 0.3, 3.0, 1.8032002026189655825},
    {5, 0.9, 1.5, 0.68031862000388880855},
};

inline constexpr NS kFsClosed[] = {
    {1, 0.25, 1.4037085997664524833},
    {1, 0.4, 0.12619540784472830236},
    {3, 0.5, 12.566370614359172954},
    {2, 0.7, 0.94527478412851975806},
};

inline constexpr SP kFsConstant1d[] = {
    {0.25, 3.0, 0.02488097882196064183},
    {0.3, 1.5, 3.3982533035797336197},
    {0.2, 2.0, 2.6635967461357851228},
};

inline constexpr Kernel kPsi[] = {
    {1, 0.25, 0.05, 4.0188117072491595401},
    {1, 0.25, 0.5, 6.7455163573960149055},
    {1, 0.25, 0.9, 64.009212414009704189},
    {1, 0.25, 0.999, 63246.260840810508839},
    {1, 0.75, 0.05, 4.0439765056951824868},
    {1, 0.75, 0.5, 12.039483237587183531},
    {1, 0.75, 0.9, 632.857457934013823},
    {1, 0.75, 0.999, 63245553.557363305961},
    {2, 0.25, 0.05, 12.615613772116100189},
    {2, 0.25, 0.5, 19.661149630929260936},
    {2, 0.25, 0.9, 160.7159385076854073},
    {2, 0.25, 0.999, 151631.11749516939223},
    {2, 0.75, 0.05, 12.66303842062480527},
    {2, 0.75, 0.5, 29.438696231650806163},
    {2, 0.75, 0.9, 1167.9736303333377292},
    {2, 0.75, 0.999, 110611000.19251067488},
    {3, 0.25, 0.05, 25.224655319007607695},
    {3, 0.25, 0.5, 38.2703969925382064},
    {3, 0.25, 0.9, 290.80393948136676703},
    {3, 0.25, 0.999, 265184.57418395720419},
    {3, 0.75, 0.05, 25.298414696669930983},
    {3, 0.75, 0.5, 53.220759869300007868},
    {3, 0.75, 0.9, 1765.026636180827608},
    {3, 0.75, 0.999, 159112523.88693627505},
    {4, 0.25, 0.05, 39.617633016310043295},
    {4, 0.25, 0.5, 59.269543465969571479},
    {4, 0.25, 0.9, 430.15388252340848675},
    {4, 0.25, 0.999, 381453.73651330515216},
    {4, 0.75, 0.05, 39.716929213550581574},
    {4, 0.75, 0.5, 79.115596122932598827},
    {4, 0.75, 0.9, 2308.0087161317491783},
    {4, 0.75, 0.999, 198766974.46083742083},
    {5, 0.25, 0.05, 52.819379701182680843},
    {5, 0.25, 0.5, 78.337562034293704051},
    {5, 0.25, 0.9, 550.40875052315703591},
    {5, 0.25, 0.999, 476503.73186422957395},
    {5, 0.75, 0.05, 52.938522346541911587},
    {5, 0.75, 0.5, 101.87533588351934922},
    {5, 0.75, 0.9, 2694.8313553147720339},
    {5, 0.75, 0.999, 222384946.4493306858},
};

inline constexpr BumpFraclap kBumpFraclap[] = {
    {1, 0.3, 2.0, 1.0, 0.0, 1.2890553595609641717},
    {1, 0.6, 2.0, 1.0, 0.3, 1.4492490461375844143},
    {2, 0.25, 2.5, 0.8, 0.4, 0.78008068010024968878},
    {3, 0.5, 2.0, 1.0, 0.5, 1.8317737825877700577},
    {3, 0.75, 3.0, 1.0, 0.95, -0.74608210465352978843},
    {5, 0.4, 4.0, 0.5, 0.1, 6.2961407035327940893},
    {4, 0.9, 2.0, 1.0, 0.7, 3.0365788070106262877},
};

inline constexpr SP kGagliardoBump2[] = {
    {0.3, 2, 8.0002177281333574694},
    {0.1, 2, 18.149515032598154141},
};

}  // namespace oracle
