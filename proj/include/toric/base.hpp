#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace toric {

// Every failure mode carries one of these tags so callers (and the CLI)
// can react without string-matching.
enum class errc {
    division_by_zero,
    precision_exhausted,
    zero_input,
    zero_residue,
    domain_violation,
    non_invertible,
    split_kind_unsupported,
    depth_exceeds_precision,
    central_mismatch,
    conductor_too_small,
    not_minimal,
    precision_too_low,
    outside_domain,
    depth_insufficient,
    depth_unstable,
    star_violated,
    no_solution,
    existence_fails,
    out_of_table_range,
    weight_violation,
    degenerate_gram,
    division_side_unsupported,
    no_embedding,
    config_error,
    internal,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;

// Base field parameters: the p-adic rationals at an odd prime p >= 5,
// worked at fixed relative precision N (all units live in (Z/p^N)^*).
class Context {
  public:
    Context(i64 p, int N);

    i64 p() const { return p_; }
    i64 q() const { return p_; }  // residue field size; base field is Q_p
    int N() const { return N_; }
    u64 pN() const { return pN_; }
    u64 ppow(int k) const;  // p^k for 0 <= k <= N

    // Legendre symbol of a residue class, +1/-1 (0 input rejected).
    int legendre(i64 r) const;
    // a quadratic non-residue mod p
    i64 nonresidue() const { return nonres_; }

    bool operator==(const Context& o) const { return p_ == o.p_ && N_ == o.N_; }

  private:
    i64 p_;
    int N_;
    u64 pN_;
    i64 nonres_;
};

// Exact rational numbers. Everything the spec calls an "exact rational"
// (volumes, predicted integral sizes) flows through this type; magnitudes
// stay tiny so 64-bit components with 128-bit intermediates suffice.
class Rat {
  public:
    Rat() : n_(0), d_(1) {}
    Rat(i64 n) : n_(n), d_(1) {}
    Rat(i64 n, i64 d) { assign((i128)n, (i128)d); }

    i64 num() const { return n_; }
    i64 den() const { return d_; }

    Rat operator+(const Rat& o) const { return make((i128)n_ * o.d_ + (i128)o.n_ * d_, (i128)d_ * o.d_); }
    Rat operator-(const Rat& o) const { return make((i128)n_ * o.d_ - (i128)o.n_ * d_, (i128)d_ * o.d_); }
    Rat operator*(const Rat& o) const { return make((i128)n_ * o.n_, (i128)d_ * o.d_); }
    Rat operator/(const Rat& o) const {
        require(o.n_ != 0, errc::division_by_zero, "rational division by zero");
        return make((i128)n_ * o.d_, (i128)d_ * o.n_);
    }
    Rat operator-() const { return make(-(i128)n_, (i128)d_); }
    bool operator==(const Rat& o) const { return n_ == o.n_ && d_ == o.d_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return (i128)n_ * o.d_ < (i128)o.n_ * d_; }

    double to_double() const { return (double)n_ / (double)d_; }
    std::string str() const;

    static Rat pow(i64 base, int e);  // base^e, e may be negative

  private:
    static Rat make(i128 n, i128 d) {
        Rat r;
        r.assign(n, d);
        return r;
    }
    void assign(i128 n, i128 d);
    i64 n_, d_;
};

// An exact character value: the rational t in [0,1) standing for e^{2*pi*i*t}.
// The group law is addition mod 1; sums of distinct phases leave the type and
// are accumulated in complex doubles by the integral evaluators.
class Phase {
  public:
    Phase() : num_(0), den_(1) {}
    static Phase of(i64 num, i64 den);

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Phase operator+(const Phase& o) const;
    Phase operator-(const Phase& o) const { return *this + o.negate(); }
    Phase negate() const { return num_ == 0 ? *this : of(den_ - num_, den_); }
    Phase times(i64 k) const;
    bool operator==(const Phase& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Phase& o) const { return !(*this == o); }

    std::complex<double> value() const;
    std::string str() const;

  private:
    i64 num_, den_;  // reduced, 0 <= num < den
};

}  // namespace toric
