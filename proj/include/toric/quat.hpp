#pragma once

#include <array>
#include <optional>

#include "toric/chars.hpp"

namespace toric {

class QuatElem;

// B = L + Lj in the pair model: j^2 = gamma in F^*, l j = j conj(l).
// gamma is normalized so v(gamma) = eps_{B,L} (0 on the matrix side; on the
// division side 1 for inert L, and a non-norm unit for ramified L).
class QuatAlgebra {
  public:
    QuatAlgebra() : L_(nullptr), eps_(0), epsBL_(0) {}  // empty sentinel
    QuatAlgebra(const QuadAlgebra& L, Padic gamma);

    static QuatAlgebra matrix_side(const QuadAlgebra& L);    // gamma = 1
    static QuatAlgebra division_side(const QuadAlgebra& L);  // gamma = p or non-norm unit

    const QuadAlgebra& L() const { return *L_; }
    const Context& ctx() const { return L_->ctx(); }
    const Padic& gamma() const { return gamma_; }
    int eps() const { return eps_; }       // +1 matrix, -1 division
    int eps_BL() const { return epsBL_; }  // v(gamma) mod 2 as in the chain-order setup

    QuatElem elem(QuadElem x, QuadElem y) const;
    QuatElem from_L(QuadElem x) const;
    QuatElem scalar(Padic a) const;
    QuatElem zero() const;
    QuatElem one() const;
    QuatElem j() const;

  private:
    const QuadAlgebra* L_;
    Padic gamma_;
    int eps_, epsBL_;
};

// x + y j with x, y in L
class QuatElem {
  public:
    QuatElem() : B_(nullptr) {}
    QuatElem(const QuatAlgebra& B, QuadElem x, QuadElem y) : B_(&B), x_(x), y_(y) {}

    const QuatAlgebra& algebra() const { return *B_; }
    const QuadElem& x() const { return x_; }
    const QuadElem& y() const { return y_; }
    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

    QuatElem operator+(const QuatElem& o) const;
    QuatElem operator-(const QuatElem& o) const;
    QuatElem operator*(const QuatElem& o) const;
    QuatElem operator-() const;
    QuatElem conj() const;   // x + yj -> conj(x) - yj
    QuatElem inv() const;
    bool operator==(const QuatElem& o) const { return x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const QuatElem& o) const { return !(*this == o); }

    Padic norm() const;   // Nm(x) - gamma Nm(y)
    Padic trace() const;  // Tr_L(x)

    std::string str() const;

  private:
    const QuatAlgebra* B_;
    QuadElem x_, y_;
};

QuatElem commutator(const QuatElem& a, const QuatElem& b);

// exponential series on the positive part of the chain order (2 nu >= 1)
QuatElem quat_exp(const QuatElem& x);

// the trace pairing phase e^{<a,b>} = psi(Tr(ab))
Phase pairing_phase(const QuatElem& a, const QuatElem& b);

// The semi-valuation of the chain order attached to L: values in (1/2)Z,
// returned doubled so they stay integral. nu(l) = v_L(l), nu(yj) doubles to
// 2 v_L(y) + v_L(gamma).
i64 semi_valuation2(const QuatElem& g);

// g in B^n (2n = n2) resp. g in K_A(n) = 1 + B^n
bool lattice_membership2(const QuatElem& g, i64 n2);
bool subgroup_membership2(const QuatElem& g, i64 n2);

// components of g along L and L^perp (exact; the model is already split)
std::pair<QuadElem, QuadElem> orthogonal_decompose(const QuatElem& g);

// A second torus F[beta] inside B: beta = image of sqrt(D_E) (trace 0,
// beta^2 = D_E) together with a generator j_E of E^perp and gamma_E = j_E^2.
struct TorusEmbedding {
    const QuadAlgebra* E = nullptr;
    QuatElem beta;
    QuatElem jE;
    Padic gammaE;
    bool in_torus = false;  // E identified with L inside B (beta in L)

    QuatElem embed(const QuadElem& e) const;  // a + b sqrt(D_E) -> a + b beta
};

// projections of g onto F[beta] (coordinates u + w beta) and the residual,
// which is trace-orthogonal to the torus
struct RelativeParts {
    Padic u, w;
    QuatElem residual;
};
RelativeParts decompose_relative(const QuatElem& g, const QuatElem& beta, const Padic& beta_sq);

// find beta with beta^2 = D_E by Hensel-solving the norm equation
// s^2 D_L + gamma Nm(l1) = D_E; returns nothing when E does not embed
// (split E into the division algebra).
std::optional<TorusEmbedding> embed_second_torus(const QuadAlgebra& E, const QuatAlgebra& B);

// 2x2 model on the matrix side via a + b sqrt(D') -> [[a, b], [b D', a]],
// j -> diag(-1, 1); entries row-major.
using Mat2 = std::array<Padic, 4>;
Mat2 matrix_model(const QuatElem& g);
QuatElem from_matrix(const QuatAlgebra& B, const Mat2& m);
Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_inv(const Mat2& a);
Padic mat_det(const Mat2& a);

}  // namespace toric
