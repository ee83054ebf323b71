#pragma once

#include "toric/engine.hpp"

namespace toric {

// The minimal-vector test function of the relative trace formula:
// f = conj(Phi) / Vol(Z \ Z B^1) restricted to Z B^1, where Phi is the
// matrix coefficient of the chi^{-1}-aligned test vector. Matrix side only
// (the trace-formula settings keep B split at the working place).
struct TestFunction {
    PeriodProblem problem;  // the chi^{-1}-oriented problem
    AlignedTorus at;
    Rat norm_vol;           // Vol(Z \ Z B^1)
    LineChoice line = LineChoice::jcommon;
    MultChar chi;           // the original chi (the orbital integrals use chi^{-1})
};

TestFunction make_test_function(const PeriodProblem& pr, LineChoice line = LineChoice::jcommon);

// I(0,f) = int f(t) chi^{-1}(t) dt over F^x \ E^x
std::complex<double> orbital_zero(const TestFunction& tf, int depth);

struct OrbitalResult {
    Padic xi;                     // -Nm(j x)
    std::complex<double> value;   // normalized by 1/Vol(Z\ZB^1)
    std::complex<double> raw;     // the bare (e,e')-volume-weighted phase sum
    int depth = 0;
};

// I(xi,f) as the double sum over F^x\E^x x E^1 with xi = -Nm(j x)
OrbitalResult orbital_xi(const TestFunction& tf, const QuadElem& x, int depth);

// solve for x in E^x with -Nm(j_common x) = xi; nothing when xi is not of
// that form
std::optional<QuadElem> orbit_representative(const TestFunction& tf, const Padic& xi);

// the closed form at a real place (weight k discrete series, character
// parameter m, xi < 0, volumes normalized to 1)
Rat archimedean_orbital(int k, int m, const Rat& xi);

}  // namespace toric
