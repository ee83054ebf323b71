#pragma once

#include <memory>
#include <vector>

#include "toric/padic.hpp"

namespace toric {

enum class QuadKind { split, inert, ramified };

class QuadElem;

// A quadratic etale algebra E = F(sqrt(D)) (inert: D a non-square unit;
// ramified: D a uniformizer times a unit) or F x F (split; elements are
// coordinate pairs and D is ignored).
class QuadAlgebra {
  public:
    QuadAlgebra(const Context& ctx, QuadKind kind, Padic D);

    static QuadAlgebra inert(const Context& ctx);                 // F(sqrt(nonresidue))
    static QuadAlgebra ramified(const Context& ctx, bool twist);  // D = p or p*nonresidue
    static QuadAlgebra split(const Context& ctx);

    const Context& ctx() const { return *ctx_; }
    QuadKind kind() const { return kind_; }
    const Padic& D() const { return D_; }
    int e() const { return kind_ == QuadKind::ramified ? 2 : 1; }
    bool is_field() const { return kind_ != QuadKind::split; }
    bool eta_unramified() const { return kind_ != QuadKind::ramified; }
    // residue field size q_E
    i64 qres() const { return kind_ == QuadKind::inert ? ctx_->q() * ctx_->q() : ctx_->q(); }
    // conductor of psi_E = psi o Tr: -e + 1
    int c_psi() const { return -e() + 1; }
    bool same(const QuadAlgebra& o) const;  // identical presentation (same D)

    QuadElem elem(Padic a, Padic b) const;
    QuadElem from_base(Padic a) const;  // image of F
    QuadElem of(i64 a, i64 b) const;
    QuadElem zero() const;
    QuadElem one() const;
    QuadElem sqrtD() const;   // sqrt(D) (split: (1,-1))
    QuadElem unif() const;    // a uniformizer (inert/split: p; ramified: sqrt(D))

    // multiplicative order of the residue field (q_E - 1)
    i64 tame_order() const { return qres() - 1; }
    // discrete log of the Teichmuller class of a unit x in k_E^* w.r.t. a
    // fixed generator; x must be a unit (v_E = 0)
    i64 residue_dlog(const QuadElem& x) const;
    // dlog of a base-field unit residue in k_F^* (split coordinates, w_pi)
    i64 residue_dlog_base(i64 r) const;
    // Teichmuller lift in E of the residue class of a unit
    QuadElem teich(const QuadElem& x) const;
    QuadElem teich_generator() const;

    // L(eta_{E/F}, 1) as an exact rational
    Rat l_eta_one() const;
    // Vol(F^x \ F^x U_E(e m + e - 1)) = q^{-m} L(eta,1), m >= 1
    Rat filtration_volume(int m) const;
    // total Haar mass enumerated by coset_reps (1 inert, 2 ramified, 1 split)
    Rat total_volume() const;

  private:
    const Context* ctx_;
    QuadKind kind_;
    Padic D_;
    mutable std::shared_ptr<std::vector<i64>> dlog_;  // lazily built residue dlog table
    void build_dlog() const;
    i64 residue_index(i64 a, i64 b) const;
};

// a + b*sqrt(D) for field kinds; the ordered pair (a, b) for split.
class QuadElem {
  public:
    QuadElem() : A_(nullptr) {}
    QuadElem(const QuadAlgebra& A, Padic a, Padic b) : A_(&A), a_(a), b_(b) {}

    const QuadAlgebra& algebra() const { return *A_; }
    const Padic& a() const { return a_; }
    const Padic& b() const { return b_; }
    bool is_zero() const;

    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem operator/(const QuadElem& o) const;
    QuadElem operator-() const;
    QuadElem conj() const;
    QuadElem inv() const;
    QuadElem pow(i64 e) const;
    bool operator==(const QuadElem& o) const;
    bool operator!=(const QuadElem& o) const { return !(*this == o); }

    Padic norm() const;
    Padic trace() const;
    // x - Tr(x)/2
    QuadElem imaginary_part() const;
    bool is_imaginary() const;

    // v_E; the valuation comes from the integral basis, so no cancellation.
    // Split elements must have both coordinates nonzero (else NonInvertible
    // territory); their "valuation" is min of the coordinate valuations.
    int vE() const;
    bool is_unit_elem() const { return !is_zero() && vE() == 0; }
    // membership in U_E(n) (n >= 0)
    bool in_unit_filtration(int n) const;

    std::string str() const;

  private:
    const QuadAlgebra* A_;
    Padic a_, b_;
};

// v_E(x) = v_E(x_0): the test behind minimal characters. Field kinds only.
bool is_minimal_element(const QuadElem& x);

// Hilbert 90 map t -> t / conj(t) onto the norm-one subgroup
QuadElem norm_one_map(const QuadElem& t);

struct CosetRep {
    QuadElem t;
    Rat weight;
};

// Representatives of F^x \ E^x modulo U_E(e M + e - 1), indexed by the
// projective line over O/p^M, with exact Haar weights. For split E only the
// finite-volume window (value-ratio valuation 0) is enumerated; every
// integrand in this project is supported there.
std::vector<CosetRep> coset_reps(const QuadAlgebra& E, int M);

}  // namespace toric
