#pragma once

#include <memory>

#include "toric/cuspidal.hpp"

namespace toric {

// One local period-integral instance: the cuspidal datum, the second torus E
// with its fixed embedding, and the character chi of E^x with
// chi|_{F^x} = w_pi.
struct PeriodProblem {
    CuspidalDatum datum;
    const QuadAlgebra* E = nullptr;
    MultChar chi;
    QuadElem alpha_chi;                  // imaginary convention representative
    std::optional<TorusEmbedding> emb;   // absent only for split E on the division side
    std::optional<QuadIso> isoEL;        // E -> L identification when isomorphic
    MultChar chi_L, chibar_L;            // transported chi and its Galois twist
    int c_tc = -1, c_tcbar = -1;         // c(theta chi^-1), c(theta conj(chi)^-1)
    bool whole_torus_gate = false;       // E ~ L with a twisted-conductor <= 1
};

PeriodProblem make_problem(const CuspidalDatum& d, const QuadAlgebra& E, const MultChar& chi);

// c(pi) = -v(Nm(alpha_theta)); cross-checked against the case table
int conductor_pi(const CuspidalDatum& d);

struct RsConductor {
    int c_rs;  // c(pi x pi_{chi^-1})
    int l;     // c_rs - c(pi)
};
// the norm route -2 v(Nm alpha_theta - Nm alpha_chi); requires (*) when E ~ L
RsConductor conductor_rs(const PeriodProblem& pr);
// the case route: 2 max of conductors (E not ~ L) or the sum of twisted
// conductors (E ~ L)
int rs_conductor_case_formula(const PeriodProblem& pr);

// epsilon(pi_E x chi^-1) from the explicit tables (trivial central character,
// c(pi) >= c(pi_{chi^-1}))
int tunnell_epsilon(const PeriodProblem& pr);

// the Langlands lambda for a ramified quadratic extension as a normalized
// Gauss-sum phase; lambda^2 = eta(-1) is asserted
Phase langlands_lambda(const QuadAlgebra& L);
// the level-<=1 character Delta_theta of the Langlands parametrization
MultChar delta_theta(const CuspidalDatum& d);

// does the coadjoint orbit meet alpha_chi + E^perp on the given side?
bool geometric_existence(const PeriodProblem& pr, int side);

// the aligned torus: alpha = alpha_chi + e j_E in O_pi, the abstract
// presentation L' = F[alpha], and the common perpendicular direction
struct AlignedTorus {
    QuatElem alpha;
    std::shared_ptr<QuadAlgebra> Lp;
    QuatElem alpha_hat;  // alpha scaled so v(alpha_hat^2) in {0,1}; sqrt(Dp) = alpha_hat
    Padic Dp;
    QuatElem beta_perp;  // L'-perp component of the embedded sqrt(D_E)
    QuatElem j_common;   // in E^perp and L'^perp, v(j^2) in {0,1}
};
std::optional<AlignedTorus> align_torus(const PeriodProblem& pr);

enum class LineChoice { jcommon, beta_perp };

struct IntegralReport {
    Rat predicted{0};
    std::optional<Rat> predicted_alt;
    std::complex<double> brute{};
    int depth = 0;
    bool all_phases_zero = false;
    Rat support_measure{0};
    bool match = false;
    bool existence = true;
    bool whole_torus = false;
};

// Prop 4.1 route: E ~ L and c(theta chi^-1) or c(theta conj(chi)^-1) <= 1.
// nullopt when the gate does not apply.
std::optional<IntegralReport> whole_torus_case(const PeriodProblem& pr, int depth);

// the full brute-force period integral at coset depth M
IntegralReport brute_force_integral(const PeriodProblem& pr, int depth,
                                    LineChoice line = LineChoice::jcommon);

struct Prediction {
    Rat main;                 // the maximal (aligned-polarization) value
    std::optional<Rat> alt;   // the generic-line value when i' = i + 1
};
Prediction predicted_integral(const PeriodProblem& pr);

// the aligned type-1 matrix coefficient on B restricted to Z B^1 (nullopt off
// the support); shared with the orbital-integral module
std::optional<Phase> aligned_phi(const PeriodProblem& pr, const AlignedTorus& at,
                                 const QuatElem& g, LineChoice line);
// same, reporting when the nu-lattice membership held but the L'-part was
// outside Z U(1) (the Lie-range dichotomy forbids this on E^x)
std::optional<Phase> aligned_phi_checked(const PeriodProblem& pr, const AlignedTorus& at,
                                         const QuatElem& g, LineChoice line, bool& teich_hit);

// theta in the presentation D' = 1/(alpha_theta^2 pi_L^{2c}):
// alpha = pi_L^{-c} / sqrt(D')
MultChar make_dprime_theta(const QuadAlgebra& L, int c, i64 tame, Phase unif);

// solve Nm_E(e) = want over a field E (throws NoSolution when the class is
// not a norm)
QuadElem solve_norm_equation(const QuadAlgebra& E, const Padic& want);

struct AppendixSolution {
    Padic u, v;
    std::complex<double> brute{};
    bool phases_zero = false;
    Rat value{0};
};
struct AppendixReport {
    bool solutions_exist = false;
    bool discriminant_square = false;
    int epsilon = 0;
    int parity_obstruction = 0;  // nonzero when c(theta chi^-1) has the wrong parity
    std::vector<AppendixSolution> solutions;
};
// Appendix-B (u,v)-search on the GL2 side with the standard embeddings;
// every solution re-verified by brute force through the 2x2 model
AppendixReport appendix_test_vector_search(const PeriodProblem& pr);

struct WhittakerCell {
    int va;
    i64 unit_class;
    std::complex<double> value;
};
struct WhittakerReport {
    std::vector<WhittakerCell> support;
    bool support_matches = false;
    bool constant_modulus = false;
    double off_support_max = 0;
    double modulus = 0;
};
// Kirillov-model spot check of W_phi(diag(a,1)) for matrix-side cases 1 and 3
WhittakerReport whittaker_check(const CuspidalDatum& d);

}  // namespace toric
