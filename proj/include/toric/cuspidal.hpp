#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "toric/quat.hpp"

namespace toric {

enum class PolarizationKind { canonical_j, appendix };

// The compact-induction datum attached to (L, theta, algebra side):
// numerical invariants i <= i', the case index of the six-entry table,
// dim Lambda, c(pi), and the chosen polarization line when i' = i + 1.
// theta must be minimal with an imaginary wild part (the constructors in
// chars.hpp produce exactly these; a general minimal character is a
// base-field twist away).
struct CuspidalDatum {
    const QuadAlgebra* L = nullptr;
    MultChar theta;    // the GL2-side character
    MultChar theta_B;  // division twist: theta_B(pi_L) = -theta(pi_L) when e_L = 2
    // held behind a shared pointer so copies of the datum keep every stored
    // QuatElem's algebra reference stable
    std::shared_ptr<QuatAlgebra> Bp;
    QuadElem alpha_theta;
    int c_theta = 0;
    int c_pi = 0;
    int case_idx = 0;   // 1..6
    int dim_lambda = 1; // 1 or q
    int n = 0;          // floor(c_theta / 2)
    i64 i2 = 0, i2p = 0;  // 2i and 2i'
    PolarizationKind pol = PolarizationKind::canonical_j;
    QuadElem line_m;    // t0 = line_m * j spans B^1/H^1 (dim_lambda == q)

    const Context& ctx() const { return L->ctx(); }
    const QuatAlgebra& B() const { return *Bp; }
    QuatElem alpha_quat() const { return B().from_L(alpha_theta); }
};

CuspidalDatum build_datum(const QuadAlgebra& L, const MultChar& theta, int side,
                          PolarizationKind pol = PolarizationKind::canonical_j);

// g = z l (1 + t) with z central, l in U_L(1), t in L^perp; inside == false
// when no such factorization lands in the Z B^1 domain.
struct Zb1Parts {
    bool inside = false;
    Padic z;
    QuadElem l;
    QuatElem t;
};
Zb1Parts zb1_membership(const CuspidalDatum& d, const QuatElem& g);

// theta-tilde on the factored element l (1 + t); throws OutsideDomain when
// (l, t) is not in the B^1 domain.
Phase simple_char_eval(const CuspidalDatum& d, const QuadElem& l, const QuatElem& t);

// type-1 minimal-vector matrix coefficient, normalized Phi(1) = 1:
// nullopt off the support (J when dim Lambda = 1, Z B^1 when dim Lambda = q).
std::optional<Phase> matrix_coefficient(const CuspidalDatum& d, const QuatElem& g);

// does g intertwine theta-tilde? checked two ways (J-membership and direct
// conjugation on H^1 generators); disagreement is an internal error.
bool intertwine_check(const CuspidalDatum& d, const QuatElem& g);

// finite orbit sum over G_alpha \ J at cell depth R:
// int e^{<g^-1 alpha g, x>} dg, normalized to total mass dim Lambda.
// Requires x in g_+ (positive trace and norm valuation).
std::complex<double> orbit_trace(const CuspidalDatum& d, const QuatElem& x, int depth);

// the B^1 variant: int over U_L(1) \ B^1, total mass 1
std::complex<double> b1_orbit_sum(const CuspidalDatum& d, const QuatElem& x, int depth);

// residue representatives of O_L mod pi_L^R
std::vector<QuadElem> enumerate_OL(const QuadAlgebra& L, int R);

// exact volumes under Vol(Z \ Z K) = 1 (matrix side only)
Rat vol_Z_ZKL(const CuspidalDatum& d, int m);  // Vol(Z \ Z K_L(m))
Rat vol_Z_ZB1(const CuspidalDatum& d);         // Vol(Z \ Z B^1)
// L^2 mass of the type-1 matrix coefficient: Vol(Z \ Supp Phi)
Rat formal_degree_mass(const CuspidalDatum& d);
// the same mass by brute-force coset counting in PGL_2(O / p^depth)
Rat formal_degree_brute(const CuspidalDatum& d, int depth);

}  // namespace toric
