#include "toric/base.hpp"

#include <cmath>

namespace toric {

namespace {

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

i128 igcd(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Context::Context(i64 p, int N) : p_(p), N_(N) {
    require(p >= 5 && is_prime(p), errc::domain_violation, "p must be a prime >= 5");
    require(N >= 1, errc::domain_violation, "precision N must be >= 1");
    // units are stored in [0, p^N); keep p^N * p^N representable in 128 bits
    // and p^N itself well inside 63 bits.
    long double cap = std::pow((long double)p, (long double)N);
    require(cap < 4.0e18L, errc::precision_too_low, "p^N exceeds the 64-bit working range");
    pN_ = 1;
    for (int i = 0; i < N; ++i) pN_ *= (u64)p;
    nonres_ = 0;
    for (i64 r = 2; r < p; ++r) {
        if (legendre(r) == -1) {
            nonres_ = r;
            break;
        }
    }
}

u64 Context::ppow(int k) const {
    require(k >= 0 && k <= N_, errc::precision_exhausted, "p-power outside working precision");
    u64 r = 1;
    for (int i = 0; i < k; ++i) r *= (u64)p_;
    return r;
}

int Context::legendre(i64 r) const {
    r %= p_;
    if (r < 0) r += p_;
    require(r != 0, errc::zero_residue, "Legendre symbol of zero residue");
    // Euler's criterion
    i64 e = (p_ - 1) / 2;
    i64 base = r, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

void Rat::assign(i128 n, i128 d) {
    require(d != 0, errc::division_by_zero, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = igcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    require(n <= (i128)INT64_MAX && n >= -(i128)INT64_MAX && d <= (i128)INT64_MAX, errc::internal,
            "rational overflow");
    n_ = (i64)n;
    d_ = (i64)d;
}

std::string Rat::str() const {
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Rat Rat::pow(i64 base, int e) {
    Rat r(1);
    Rat b = e >= 0 ? Rat(base) : Rat(1, base);
    int k = e >= 0 ? e : -e;
    for (int i = 0; i < k; ++i) r = r * b;
    return r;
}

Phase Phase::of(i64 num, i64 den) {
    require(den != 0, errc::division_by_zero, "phase with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    i128 g = igcd(num, den);
    Phase ph;
    ph.num_ = (i64)(num / (i64)g);
    ph.den_ = (i64)(den / (i64)g);
    return ph;
}

Phase Phase::operator+(const Phase& o) const {
    i128 d = (i128)den_ * o.den_;
    i128 n = (i128)num_ * o.den_ + (i128)o.num_ * den_;
    i128 g = igcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    require(d <= (i128)INT64_MAX, errc::internal, "phase denominator overflow");
    return of((i64)(n % d), (i64)d);
}

Phase Phase::times(i64 k) const {
    i128 n = (i128)num_ * k;
    i128 m = n % den_;
    if (m < 0) m += den_;
    return of((i64)m, den_);
}

std::complex<double> Phase::value() const {
    double t = 2.0 * M_PI * (double)num_ / (double)den_;
    return {std::cos(t), std::sin(t)};
}

std::string Phase::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace toric
