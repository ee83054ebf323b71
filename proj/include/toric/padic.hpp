#pragma once

#include "toric/base.hpp"

namespace toric {

// A base-field element p^val * unit at fixed relative precision.
//
// unit lives in (Z/p^N)^*; prec <= N tracks how many relative digits are
// still known after cancellation, so the represented value is exact modulo
// p^{val+prec}. Freshly constructed values carry the full N digits.
// Subtraction that cancels every known digit yields the distinguished zero.
class Padic {
  public:
    Padic() : ctx_(nullptr), val_(0), unit_(0), prec_(0), zero_(true) {}

    static Padic zero(const Context& ctx);
    static Padic of(const Context& ctx, i64 value);
    static Padic rational(const Context& ctx, i64 num, i64 den);
    // p^val * unit, unit given as an integer prime to p
    static Padic make(const Context& ctx, int val, i64 unit);

    const Context& ctx() const { return *ctx_; }
    bool is_zero() const { return zero_; }
    int val() const {
        require(!zero_, errc::zero_input, "valuation of zero");
        return val_;
    }
    u64 unit() const {
        require(!zero_, errc::zero_input, "unit part of zero");
        return unit_;
    }
    int prec() const { return prec_; }
    // residue of the unit part mod p^k (k <= prec)
    i64 unit_mod(int k) const;

    Padic operator+(const Padic& o) const;
    Padic operator-(const Padic& o) const;
    Padic operator*(const Padic& o) const;
    Padic operator/(const Padic& o) const;
    Padic operator-() const;
    Padic inv() const;
    Padic pow(i64 e) const;          // e may be negative
    Padic shift(int k) const;        // multiply by p^k
    Padic with_prec(int k) const;    // clamp the known relative precision
    bool operator==(const Padic& o) const;  // equal at the shared known precision
    bool operator!=(const Padic& o) const { return !(*this == o); }

    std::string str() const;

  private:
    const Context* ctx_;
    int val_;
    u64 unit_;
    int prec_;
    bool zero_;
};

// true iff x is a square in Q_p^* (val even, unit a residue; Hensel is
// automatic for odd p). Rejects zero.
bool is_square(const Padic& x);

// Hilbert symbol (a,b)_p in {+1,-1} via the odd-p valuation/Legendre formula.
int hilbert_symbol(const Padic& a, const Padic& b);

// the (p-1)-th root of unity congruent to r mod p
Padic teichmuller(const Context& ctx, i64 r);

// square root of a square unit-times-even-power element (Hensel lift)
Padic padic_sqrt(const Padic& x);

// Iwasawa log on 1 + pO and exp on pO; mutually inverse for p >= 5.
Padic plog(const Padic& x);
Padic pexp(const Padic& y);

}  // namespace toric
