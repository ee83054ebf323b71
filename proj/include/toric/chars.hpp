#pragma once

#include <optional>

#include "toric/quad.hpp"

namespace toric {

// The fixed unramified additive character: phase = p-adic fractional part.
Phase psi_eval(const Padic& x);
// psi_K = psi o Tr for a quadratic algebra element
Phase psi_K_eval(const QuadElem& x);

// log/exp on U_E(1) resp. pi_E O_E, entrywise series (convergent for p >= 5)
QuadElem qlog(const QuadElem& x);
QuadElem qexp(const QuadElem& y);

// A multiplicative character of K^* given by wild part alpha (the dual-Lie
// element: chi(1+u) = psi_K(alpha*log(1+u)) on U_K(1)), a tame exponent on
// Teichmuller lifts, and the value at the uniformizer. Split algebras carry
// one (tame, unif) pair per coordinate and a split alpha.
struct MultChar {
    const QuadAlgebra* K = nullptr;
    std::optional<QuadElem> alpha;
    i64 tame = 0;
    Phase unif;
    i64 tame2 = 0;   // split only
    Phase unif2;     // split only

    const QuadAlgebra& algebra() const { return *K; }
};

MultChar trivial_char(const QuadAlgebra& K);

Phase char_eval(const MultChar& chi, const QuadElem& x);

// conductor read from the data (alpha valuation vs tame part)
int conductor_of(const MultChar& chi);
// independent route: direct triviality scan on filtration generators
int conductor_by_scan(const MultChar& chi);

bool char_is_minimal(const MultChar& theta);

MultChar char_mul(const MultChar& a, const MultChar& b);
MultChar char_inv(const MultChar& a);
MultChar char_conj(const MultChar& a);

// central restriction chi|_{F^x}, evaluated at an element of the base field
Phase central_value(const MultChar& chi, const Padic& z);
// do two characters restrict identically to F^x?
bool central_match(const MultChar& a, const MultChar& b);

// An isomorphism E -> L of quadratic field algebras in the same square
// class: sqrt(D_E) |-> s * sqrt(D_L) with s^2 = D_E / D_L.
struct QuadIso {
    const QuadAlgebra* from = nullptr;  // E
    const QuadAlgebra* to = nullptr;    // L
    Padic s;

    QuadElem map(const QuadElem& x) const;    // E -> L
    QuadElem unmap(const QuadElem& y) const;  // L -> E
};

std::optional<QuadIso> make_iso(const QuadAlgebra& E, const QuadAlgebra& L);

// transport chi (over E) to an explicit character spec over L via iso
MultChar transport_char(const MultChar& chi, const QuadIso& iso);

// imaginary alpha-representative for a character of conductor <= 1
// (v_E as close to -c(chi)+c(psi_E) as the imaginary constraint allows)
QuadElem low_conductor_alpha(const QuadAlgebra& E, int c_chi);

// character with imaginary wild part alpha = s * sqrt(D) scaled so that
// v_E(alpha) = -c + c(psi_E); s a unit (conductor c >= 2; c even if ramified)
MultChar make_imaginary_char(const QuadAlgebra& K, int c, const Padic& s, i64 tame, Phase unif);

// is chi|_{F^x} trivial?
bool trivial_on_base(const MultChar& chi);

}  // namespace toric
