#include "toric/padic.hpp"

namespace toric {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((unsigned __int128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// inverse of a unit mod p^N via Euler (the group order is p^{N-1}(p-1))
u64 invmod_unit(u64 a, const Context& ctx) {
    u64 order = ctx.pN() / (u64)ctx.p() * (u64)(ctx.p() - 1);
    return powmod(a, order - 1, ctx.pN());
}

}  // namespace

Padic Padic::zero(const Context& ctx) {
    Padic z;
    z.ctx_ = &ctx;
    return z;
}

Padic Padic::make(const Context& ctx, int val, i64 unit) {
    i64 p = ctx.p();
    i64 u = unit % (i64)ctx.pN();
    if (u < 0) u += (i64)ctx.pN();
    require(u % p != 0, errc::domain_violation, "unit part divisible by p");
    Padic x;
    x.ctx_ = &ctx;
    x.val_ = val;
    x.unit_ = (u64)u;
    x.prec_ = ctx.N();
    x.zero_ = false;
    return x;
}

Padic Padic::of(const Context& ctx, i64 value) {
    if (value == 0) return zero(ctx);
    int v = 0;
    while (value % ctx.p() == 0) {
        value /= ctx.p();
        ++v;
    }
    return make(ctx, v, value);
}

Padic Padic::rational(const Context& ctx, i64 num, i64 den) {
    require(den != 0, errc::division_by_zero, "p-adic rational with zero denominator");
    return of(ctx, num) / of(ctx, den);
}

i64 Padic::unit_mod(int k) const {
    require(!zero_, errc::zero_input, "unit of zero");
    require(k >= 1 && k <= prec_, errc::precision_exhausted, "requested digits beyond known precision");
    return (i64)(unit_ % ctx_->ppow(k));
}

Padic Padic::operator*(const Padic& o) const {
    require(ctx_ == o.ctx_ || (ctx_ && o.ctx_ && *ctx_ == *o.ctx_), errc::domain_violation,
            "mixed contexts");
    if (zero_ || o.zero_) return zero(*ctx_);
    Padic r;
    r.ctx_ = ctx_;
    r.val_ = val_ + o.val_;
    r.unit_ = mulmod(unit_, o.unit_, ctx_->pN());
    r.prec_ = std::min(prec_, o.prec_);
    r.zero_ = false;
    return r;
}

Padic Padic::inv() const {
    require(!zero_, errc::division_by_zero, "inverse of zero");
    Padic r = *this;
    r.val_ = -val_;
    r.unit_ = invmod_unit(unit_, *ctx_);
    return r;
}

Padic Padic::operator/(const Padic& o) const {
    require(!o.zero_, errc::division_by_zero, "p-adic division by zero");
    return *this * o.inv();
}

Padic Padic::operator-() const {
    if (zero_) return *this;
    Padic r = *this;
    r.unit_ = ctx_->pN() - unit_;
    return r;
}

Padic Padic::operator+(const Padic& o) const {
    require(ctx_ == o.ctx_ || (ctx_ && o.ctx_ && *ctx_ == *o.ctx_), errc::domain_violation,
            "mixed contexts");
    if (zero_) return o;
    if (o.zero_) return *this;
    const Padic& lo = val_ <= o.val_ ? *this : o;
    const Padic& hi = val_ <= o.val_ ? o : *this;
    int dv = hi.val_ - lo.val_;
    // absolute depth to which the sum is known
    int known = std::min(lo.val_ + lo.prec_, hi.val_ + hi.prec_);
    u64 pN = ctx_->pN();
    u64 s = lo.unit_;
    if (dv < ctx_->N()) s = (s + mulmod(hi.unit_, ctx_->ppow(dv), pN)) % pN;
    // digits of s beyond (known - lo.val_) are garbage; mask them off
    int kd = known - lo.val_;
    if (kd <= 0) fail(errc::precision_exhausted, "addition lost all precision");
    if (kd < ctx_->N()) s %= ctx_->ppow(kd);
    if (s == 0) return zero(*ctx_);  // zero at the available precision
    int k = 0;
    while (s % (u64)ctx_->p() == 0) {
        s /= (u64)ctx_->p();
        ++k;
    }
    Padic r;
    r.ctx_ = ctx_;
    r.val_ = lo.val_ + k;
    r.prec_ = known - r.val_;
    if (r.prec_ <= 0) fail(errc::precision_exhausted, "cancellation exhausted precision");
    r.unit_ = s % ctx_->ppow(std::min(r.prec_, ctx_->N()));
    // keep the stored unit a full-width representative (congruent mod p^prec)
    if (r.unit_ % (u64)ctx_->p() == 0) fail(errc::internal, "normalization failure");
    r.zero_ = false;
    return r;
}

Padic Padic::operator-(const Padic& o) const { return *this + (-o); }

Padic Padic::shift(int k) const {
    if (zero_) return *this;
    Padic r = *this;
    r.val_ += k;
    return r;
}

Padic Padic::with_prec(int k) const {
    if (zero_) return *this;
    require(k >= 1, errc::precision_exhausted, "empty precision");
    Padic r = *this;
    r.prec_ = std::min(prec_, k);
    return r;
}

Padic Padic::pow(i64 e) const {
    if (e == 0) return of(*ctx_, 1);
    Padic b = e > 0 ? *this : inv();
    i64 k = e > 0 ? e : -e;
    Padic r = of(*ctx_, 1);
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

bool Padic::operator==(const Padic& o) const {
    if (zero_ && o.zero_) return true;
    if (zero_ != o.zero_) return false;
    if (val_ != o.val_) return false;
    int k = std::min(prec_, o.prec_);
    u64 m = ctx_->ppow(std::min(k, ctx_->N()));
    return unit_ % m == o.unit_ % m;
}

std::string Padic::str() const {
    if (zero_) return "0";
    return std::to_string(unit_) + "*p^" + std::to_string(val_) + " (prec " + std::to_string(prec_) +
           ")";
}

bool is_square(const Padic& x) {
    require(!x.is_zero(), errc::zero_input, "square test of zero");
    if (x.val() % 2 != 0) return false;
    return x.ctx().legendre((i64)(x.unit() % (u64)x.ctx().p())) == 1;
}

int hilbert_symbol(const Padic& a, const Padic& b) {
    require(!a.is_zero() && !b.is_zero(), errc::zero_input, "Hilbert symbol of zero");
    const Context& ctx = a.ctx();
    int va = a.val(), vb = b.val();
    int la = ctx.legendre((i64)(a.unit() % (u64)ctx.p()));
    int lb = ctx.legendre((i64)(b.unit() % (u64)ctx.p()));
    int sign = 1;
    if ((va & 1) && (vb & 1) && ((ctx.p() - 1) / 2) % 2 == 1) sign = -sign;
    if (vb & 1) sign *= la;
    if (va & 1) sign *= lb;
    return sign;
}

Padic teichmuller(const Context& ctx, i64 r) {
    r %= ctx.p();
    if (r < 0) r += ctx.p();
    require(r != 0, errc::zero_residue, "Teichmuller lift of zero residue");
    // Frobenius iteration: t -> t^p stabilizes at the root of unity
    u64 t = (u64)r;
    for (int i = 0; i < ctx.N(); ++i) {
        u64 nt = 1, b = t;
        i64 e = ctx.p();
        while (e) {
            if (e & 1) nt = (u64)((unsigned __int128)nt * b % ctx.pN());
            b = (u64)((unsigned __int128)b * b % ctx.pN());
            e >>= 1;
        }
        if (nt == t) break;
        t = nt;
    }
    return Padic::make(ctx, 0, (i64)t);
}

Padic padic_sqrt(const Padic& x) {
    require(is_square(x), errc::domain_violation, "p-adic sqrt of a non-square");
    const Context& ctx = x.ctx();
    i64 p = ctx.p();
    i64 u0 = x.unit_mod(1);
    i64 r0 = 0;
    for (i64 r = 1; r < p; ++r)
        if (r * r % p == u0) {
            r0 = r;
            break;
        }
    Padic y = Padic::make(ctx, 0, r0);
    Padic u = Padic::make(ctx, 0, (i64)(x.unit() % ctx.pN()));
    Padic half = Padic::rational(ctx, 1, 2);
    for (int i = 0; i < ctx.N() + 2; ++i) {
        Padic yn = (y + u / y) * half;
        if (yn == y) break;
        y = yn;
    }
    return y.shift(x.val() / 2).with_prec(x.prec());
}

Padic plog(const Padic& x) {
    const Context& ctx = x.ctx();
    Padic u = x - Padic::of(ctx, 1);
    if (u.is_zero()) return Padic::zero(ctx);
    require(u.val() >= 1, errc::domain_violation, "plog requires x in 1 + pO");
    Padic acc = Padic::zero(ctx);
    Padic term = Padic::of(ctx, 1);
    int vu = u.val();
    // stop once u^k/k is beyond every digit we can still see
    int kmax = (ctx.N() + vu) / vu + 4;
    for (int k = 1; k <= kmax; ++k) {
        term = term * u;
        Padic t = term / Padic::of(ctx, k);
        if (k % 2 == 0) t = -t;
        acc = acc + t;
    }
    return acc;
}

Padic pexp(const Padic& y) {
    const Context& ctx = y.ctx();
    if (y.is_zero()) return Padic::of(ctx, 1);
    require(y.val() >= 1, errc::domain_violation, "pexp requires val >= 1");
    Padic acc = Padic::of(ctx, 1);
    Padic term = Padic::of(ctx, 1);
    int vy = y.val();
    int kmax = (ctx.N() + vy) / vy + 6;
    for (int k = 1; k <= kmax; ++k) {
        term = term * y / Padic::of(ctx, k);
        acc = acc + term;
    }
    return acc;
}

}  // namespace toric
