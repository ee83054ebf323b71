#include "toric/quad.hpp"

namespace toric {

QuadAlgebra::QuadAlgebra(const Context& ctx, QuadKind kind, Padic D)
    : ctx_(&ctx), kind_(kind), D_(D) {
    if (kind == QuadKind::inert) {
        require(!D.is_zero() && D.val() % 2 == 0 && !is_square(D), errc::domain_violation,
                "inert algebra needs a non-square unit discriminant");
        require(D.val() == 0, errc::domain_violation, "normalize inert D to a unit");
    } else if (kind == QuadKind::ramified) {
        require(!D.is_zero() && D.val() == 1, errc::domain_violation,
                "ramified algebra needs a uniformizer discriminant");
    }
}

QuadAlgebra QuadAlgebra::inert(const Context& ctx) {
    return QuadAlgebra(ctx, QuadKind::inert, Padic::of(ctx, ctx.nonresidue()));
}

QuadAlgebra QuadAlgebra::ramified(const Context& ctx, bool twist) {
    i64 u = twist ? ctx.nonresidue() : 1;
    return QuadAlgebra(ctx, QuadKind::ramified, Padic::make(ctx, 1, u));
}

QuadAlgebra QuadAlgebra::split(const Context& ctx) {
    return QuadAlgebra(ctx, QuadKind::split, Padic::of(ctx, 1));
}

bool QuadAlgebra::same(const QuadAlgebra& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == QuadKind::split) return true;
    return D_ == o.D_;
}

QuadElem QuadAlgebra::elem(Padic a, Padic b) const { return QuadElem(*this, a, b); }
QuadElem QuadAlgebra::from_base(Padic a) const {
    if (kind_ == QuadKind::split) return QuadElem(*this, a, a);
    return QuadElem(*this, a, Padic::zero(*ctx_));
}
QuadElem QuadAlgebra::of(i64 a, i64 b) const {
    if (kind_ == QuadKind::split) return elem(Padic::of(*ctx_, a), Padic::of(*ctx_, b));
    return elem(Padic::of(*ctx_, a), Padic::of(*ctx_, b));
}
QuadElem QuadAlgebra::zero() const { return from_base(Padic::zero(*ctx_)); }
QuadElem QuadAlgebra::one() const { return from_base(Padic::of(*ctx_, 1)); }
QuadElem QuadAlgebra::sqrtD() const {
    if (kind_ == QuadKind::split) return elem(Padic::of(*ctx_, 1), Padic::of(*ctx_, -1));
    return elem(Padic::zero(*ctx_), Padic::of(*ctx_, 1));
}
QuadElem QuadAlgebra::unif() const {
    if (kind_ == QuadKind::ramified) return sqrtD();
    return from_base(Padic::of(*ctx_, ctx_->p()));
}

bool QuadElem::is_zero() const {
    if (A_->kind() == QuadKind::split) return a_.is_zero() && b_.is_zero();
    return a_.is_zero() && b_.is_zero();
}

QuadElem QuadElem::operator+(const QuadElem& o) const { return QuadElem(*A_, a_ + o.a_, b_ + o.b_); }
QuadElem QuadElem::operator-(const QuadElem& o) const { return QuadElem(*A_, a_ - o.a_, b_ - o.b_); }
QuadElem QuadElem::operator-() const { return QuadElem(*A_, -a_, -b_); }

QuadElem QuadElem::operator*(const QuadElem& o) const {
    require(A_->same(o.algebra()), errc::domain_violation, "mixed quadratic algebras");
    if (A_->kind() == QuadKind::split) return QuadElem(*A_, a_ * o.a_, b_ * o.b_);
    return QuadElem(*A_, a_ * o.a_ + b_ * o.b_ * A_->D(), a_ * o.b_ + b_ * o.a_);
}

QuadElem QuadElem::conj() const {
    if (A_->kind() == QuadKind::split) return QuadElem(*A_, b_, a_);
    return QuadElem(*A_, a_, -b_);
}

Padic QuadElem::norm() const {
    if (A_->kind() == QuadKind::split) return a_ * b_;
    return a_ * a_ - b_ * b_ * A_->D();
}

Padic QuadElem::trace() const {
    if (A_->kind() == QuadKind::split) return a_ + b_;
    return a_ + a_;
}

QuadElem QuadElem::inv() const {
    if (A_->kind() == QuadKind::split) {
        require(!a_.is_zero() && !b_.is_zero(), errc::non_invertible, "split element with a zero coordinate");
        return QuadElem(*A_, a_.inv(), b_.inv());
    }
    Padic n = norm();
    require(!n.is_zero(), errc::non_invertible, "non-invertible element");
    return QuadElem(*A_, a_ / n, -(b_ / n));
}

QuadElem QuadElem::operator/(const QuadElem& o) const { return *this * o.inv(); }

QuadElem QuadElem::pow(i64 e) const {
    QuadElem b = e >= 0 ? *this : inv();
    i64 k = e >= 0 ? e : -e;
    QuadElem r = A_->one();
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

bool QuadElem::operator==(const QuadElem& o) const { return a_ == o.a_ && b_ == o.b_; }

QuadElem QuadElem::imaginary_part() const {
    QuadElem half_tr = A_->from_base(trace() / Padic::of(A_->ctx(), 2));
    return *this - half_tr;
}

bool QuadElem::is_imaginary() const { return (*this + conj()).is_zero(); }

int QuadElem::vE() const {
    require(!is_zero(), errc::zero_input, "valuation of zero");
    switch (A_->kind()) {
        case QuadKind::split: {
            require(!a_.is_zero() && !b_.is_zero(), errc::non_invertible,
                    "valuation of a zero-divisor");
            return std::min(a_.val(), b_.val());
        }
        case QuadKind::inert: {
            int va = a_.is_zero() ? INT32_MAX : a_.val();
            int vb = b_.is_zero() ? INT32_MAX : b_.val();
            return std::min(va, vb);
        }
        case QuadKind::ramified: {
            int va = a_.is_zero() ? INT32_MAX : 2 * a_.val();
            int vb = b_.is_zero() ? INT32_MAX : 2 * b_.val() + 1;
            return std::min(va, vb);
        }
    }
    return 0;
}

bool QuadElem::in_unit_filtration(int n) const {
    if (n == 0) return !is_zero() && vE() == 0;
    QuadElem d = *this - A_->one();
    if (d.is_zero()) return true;
    if (A_->kind() == QuadKind::split) {
        int va = d.a_.is_zero() ? INT32_MAX : d.a_.val();
        int vb = d.b_.is_zero() ? INT32_MAX : d.b_.val();
        return va >= n && vb >= n;
    }
    return d.vE() >= n;
}

std::string QuadElem::str() const {
    return "(" + a_.str() + ", " + b_.str() + ")";
}

bool is_minimal_element(const QuadElem& x) {
    require(x.algebra().is_field(), errc::split_kind_unsupported,
            "minimality is defined over field kinds");
    require(!x.is_zero(), errc::zero_input, "minimality of zero");
    QuadElem x0 = x.imaginary_part();
    if (x0.is_zero()) return false;
    return x0.vE() == x.vE();
}

QuadElem norm_one_map(const QuadElem& t) { return t / t.conj(); }

Rat QuadAlgebra::l_eta_one() const {
    i64 q = ctx_->q();
    switch (kind_) {
        case QuadKind::split: return Rat(q, q - 1);
        case QuadKind::inert: return Rat(q, q + 1);
        case QuadKind::ramified: return Rat(1);
    }
    return Rat(1);
}

Rat QuadAlgebra::filtration_volume(int m) const {
    require(m >= 1, errc::domain_violation, "filtration depth must be >= 1");
    return Rat::pow(ctx_->q(), -m) * l_eta_one();
}

Rat QuadAlgebra::total_volume() const {
    switch (kind_) {
        case QuadKind::split: return Rat(1);
        case QuadKind::inert: return Rat(1);
        case QuadKind::ramified: return Rat(2);
    }
    return Rat(1);
}

void QuadAlgebra::build_dlog() const {
    if (dlog_) return;
    i64 p = ctx_->p();
    i64 order = tame_order();
    auto table = std::make_shared<std::vector<i64>>();
    if (kind_ == QuadKind::inert) {
        i64 Dbar = D_.unit_mod(1);
        table->assign((size_t)(p * p), -1);
        // find a generator of k_{q^2}^* = F_p(sqrt(Dbar))^*
        auto mul = [&](std::pair<i64, i64> x, std::pair<i64, i64> y) {
            return std::make_pair((x.first * y.first + x.second * y.second % p * Dbar) % p,
                                  (x.first * y.second + x.second * y.first) % p);
        };
        for (i64 ga = 0; ga < p; ++ga) {
            for (i64 gb = 0; gb < p; ++gb) {
                if (ga == 0 && gb == 0) continue;
                std::pair<i64, i64> g{ga, gb}, x{1, 0};
                i64 k = 0;
                bool gen = true;
                std::vector<std::pair<i64, i64>> seen;
                do {
                    x = mul(x, g);
                    seen.push_back(x);
                    ++k;
                } while (!(x.first == 1 && x.second == 0) && k <= order);
                if (k != order) continue;
                (void)gen;
                for (i64 idx = 0; idx < order; ++idx)
                    (*table)[(size_t)(seen[(size_t)idx].first * p + seen[(size_t)idx].second)] =
                        idx + 1 == order ? 0 : idx + 1;
                dlog_ = table;
                return;
            }
        }
        fail(errc::internal, "no generator found for the residue field");
    }
    // ramified / split coordinate: residue field is k_F
    table->assign((size_t)p, -1);
    for (i64 g = 2; g < p; ++g) {
        i64 x = 1, k = 0;
        std::vector<i64> seen;
        do {
            x = x * g % p;
            seen.push_back(x);
            ++k;
        } while (x != 1 && k <= order);
        if (k != order) continue;
        for (i64 idx = 0; idx < order; ++idx)
            (*table)[(size_t)seen[(size_t)idx]] = idx + 1 == order ? 0 : idx + 1;
        dlog_ = table;
        return;
    }
    fail(errc::internal, "no generator found mod p");
}

i64 QuadAlgebra::residue_dlog(const QuadElem& x) const {
    require(kind_ != QuadKind::split, errc::split_kind_unsupported,
            "use coordinatewise dlog for split algebras");
    require(!x.is_zero() && x.vE() == 0, errc::domain_violation, "dlog needs a unit");
    build_dlog();
    i64 p = ctx_->p();
    if (kind_ == QuadKind::inert) {
        i64 ra = x.a().is_zero() ? 0 : (x.a().val() > 0 ? 0 : x.a().unit_mod(1));
        i64 rb = x.b().is_zero() ? 0 : (x.b().val() > 0 ? 0 : x.b().unit_mod(1));
        i64 v = (*dlog_)[(size_t)(ra * p + rb)];
        require(v >= 0, errc::internal, "dlog table miss");
        return v;
    }
    // ramified: the unit part sits in the a-coordinate
    require(!x.a().is_zero() && x.a().val() == 0, errc::domain_violation, "not a unit");
    i64 v = (*dlog_)[(size_t)x.a().unit_mod(1)];
    require(v >= 0, errc::internal, "dlog table miss");
    return v;
}

i64 QuadAlgebra::residue_dlog_base(i64 r) const {
    require(kind_ != QuadKind::inert, errc::domain_violation,
            "base-coordinate dlog is for split/ramified tables");
    build_dlog();
    r %= ctx_->p();
    if (r < 0) r += ctx_->p();
    require(r != 0, errc::zero_residue, "dlog of zero residue");
    i64 v = (*dlog_)[(size_t)r];
    require(v >= 0, errc::internal, "dlog table miss");
    return v;
}

QuadElem QuadAlgebra::teich(const QuadElem& x) const {
    require(kind_ != QuadKind::split, errc::split_kind_unsupported,
            "split Teichmuller is coordinatewise");
    require(!x.is_zero() && x.vE() == 0, errc::domain_violation, "Teichmuller lift needs a unit");
    if (kind_ == QuadKind::ramified) {
        // residue field k_F: lift the a-coordinate
        return from_base(teichmuller(*ctx_, x.a().unit_mod(1)));
    }
    // Frobenius iteration x -> x^{q^2}
    QuadElem t = x;
    i64 q2 = ctx_->q() * ctx_->q();
    for (int i = 0; i < ctx_->N(); ++i) {
        QuadElem nt = t.pow(q2);
        if (nt == t) break;
        t = nt;
    }
    return t;
}

QuadElem QuadAlgebra::teich_generator() const {
    build_dlog();
    i64 p = ctx_->p();
    if (kind_ == QuadKind::inert) {
        for (i64 a = 0; a < p; ++a)
            for (i64 b = 0; b < p; ++b) {
                if (a == 0 && b == 0) continue;
                if ((*dlog_)[(size_t)(a * p + b)] == 1)
                    return teich(elem(Padic::of(*ctx_, a), Padic::of(*ctx_, b)));
            }
    } else {
        for (i64 a = 1; a < p; ++a)
            if ((*dlog_)[(size_t)a] == 1) return from_base(teichmuller(*ctx_, a));
    }
    fail(errc::internal, "generator lookup failed");
}

std::vector<CosetRep> coset_reps(const QuadAlgebra& E, int M) {
    const Context& ctx = E.ctx();
    require(M >= 1, errc::domain_violation, "depth must be >= 1");
    require(M <= ctx.N() - 2, errc::depth_exceeds_precision, "depth exceeds working precision");
    std::vector<CosetRep> reps;
    i64 q = ctx.q();
    u64 pM = ctx.ppow(M);
    QuadElem beta = E.sqrtD();
    if (E.kind() == QuadKind::inert) {
        Rat w = E.filtration_volume(M);
        for (u64 c = 0; c < pM; ++c)
            reps.push_back({E.one() + E.from_base(Padic::of(ctx, (i64)c)) * beta, w});
        for (u64 c = 0; c < pM / (u64)q; ++c)
            reps.push_back({E.from_base(Padic::of(ctx, (i64)c * ctx.p())) + beta, w});
        return reps;
    }
    if (E.kind() == QuadKind::ramified) {
        // classes 1 + c*pi_E (weight q^-M) and pi_E(1 + c'*pi_E) (weight q^-(M-1))
        Rat w0 = E.filtration_volume(M);
        for (u64 c = 0; c < pM; ++c)
            reps.push_back({E.one() + E.from_base(Padic::of(ctx, (i64)c)) * beta, w0});
        Rat w1 = M >= 2 ? E.filtration_volume(M - 1) : Rat(1);
        for (u64 c = 0; c < pM / (u64)q; ++c)
            reps.push_back(
                {beta * (E.one() + E.from_base(Padic::of(ctx, (i64)c)) * beta), w1});
        return reps;
    }
    // split: enumerate the coordinate-ratio-valuation-zero window; the deep
    // classes [1:+-1 mod p^M] have unbounded volume and never meet a support.
    Rat w = E.filtration_volume(M);
    for (u64 c = 0; c < pM; ++c) {
        i64 cc = (i64)c;
        if ((cc - 1) % q == 0 || (cc + 1) % q == 0) {
            bool bad1 = ((cc - 1) % (i64)pM + (i64)pM) % (i64)pM == 0;
            bool bad2 = ((cc + 1) % (i64)pM + (i64)pM) % (i64)pM == 0;
            if (bad1 || bad2) continue;  // infinite-volume tail
            // classes with a coordinate of positive valuation live in other
            // value-ratio shells; skip them under the window convention
            continue;
        }
        reps.push_back({E.one() + E.from_base(Padic::of(ctx, cc)) * beta, w});
    }
    for (u64 c = 0; c < pM / (u64)q; ++c)
        reps.push_back({E.from_base(Padic::of(ctx, (i64)c * ctx.p())) + beta, w});
    return reps;
}

}  // namespace toric
