#include "toric/chars.hpp"

namespace toric {

Phase psi_eval(const Padic& x) {
    if (x.is_zero() || x.val() >= 0) return Phase();
    int k = -x.val();
    i64 num = x.unit_mod(k);
    return Phase::of(num, (i64)x.ctx().ppow(k));
}

Phase psi_K_eval(const QuadElem& x) { return psi_eval(x.trace()); }

QuadElem qlog(const QuadElem& x) {
    const QuadAlgebra& A = x.algebra();
    QuadElem u = x - A.one();
    if (u.is_zero()) return A.zero();
    require(x.in_unit_filtration(1), errc::domain_violation, "qlog requires x in U_E(1)");
    QuadElem acc = A.zero();
    QuadElem term = A.one();
    int N = A.ctx().N();
    int vu = std::max(1, A.is_field() ? (u.vE() + A.e() - 1) / A.e() : 1);
    int kmax = (N + vu) / vu + 4;
    for (int k = 1; k <= kmax; ++k) {
        term = term * u;
        QuadElem t = term / A.from_base(Padic::of(A.ctx(), k));
        if (k % 2 == 0) t = -t;
        acc = acc + t;
    }
    return acc;
}

QuadElem qexp(const QuadElem& y) {
    const QuadAlgebra& A = y.algebra();
    if (y.is_zero()) return A.one();
    QuadElem acc = A.one();
    QuadElem term = A.one();
    int N = A.ctx().N();
    int kmax = N + 8;
    for (int k = 1; k <= kmax; ++k) {
        term = term * y / A.from_base(Padic::of(A.ctx(), k));
        acc = acc + term;
    }
    return acc;
}

MultChar trivial_char(const QuadAlgebra& K) {
    MultChar c;
    c.K = &K;
    return c;
}

namespace {

// evaluation of a one-coordinate (base field) character against the
// algebra's k_F dlog table
Phase eval_base(const QuadAlgebra& K, const std::optional<Padic>& alpha, i64 tame,
                const Phase& unif, const Padic& x) {
    require(!x.is_zero(), errc::non_invertible, "character at zero");
    const Context& ctx = K.ctx();
    Phase out = unif.times(x.val());
    i64 r = x.unit_mod(1);
    if (r != 1 && tame != 0) out = out + Phase::of(tame * K.residue_dlog_base(r), ctx.p() - 1);
    if (alpha) {
        Padic zeta = teichmuller(ctx, r);
        Padic u = x.shift(-x.val()) / zeta;
        Padic lg = plog(u);
        if (!lg.is_zero()) out = out + psi_eval(*alpha * lg);
    }
    return out;
}

}  // namespace

Phase char_eval(const MultChar& chi, const QuadElem& x) {
    const QuadAlgebra& K = chi.algebra();
    require(!x.is_zero(), errc::non_invertible, "character at zero");
    if (K.kind() == QuadKind::split) {
        require(!x.a().is_zero() && !x.b().is_zero(), errc::non_invertible,
                "character at a zero-divisor");
        std::optional<Padic> a1, a2;
        if (chi.alpha) {
            a1 = chi.alpha->a();
            a2 = chi.alpha->b();
        }
        return eval_base(K, a1, chi.tame, chi.unif, x.a()) +
               eval_base(K, a2, chi.tame2, chi.unif2, x.b());
    }
    int m = x.vE();
    QuadElem x0 = x / K.unif().pow(m);
    Phase out = chi.unif.times(m);
    QuadElem zeta = K.teich(x0);
    if (chi.tame != 0 && !(zeta == K.one()))
        out = out + Phase::of(chi.tame * K.residue_dlog(zeta), K.tame_order());
    if (chi.alpha) {
        QuadElem u = x0 / zeta;
        QuadElem lg = qlog(u);
        if (!lg.is_zero()) out = out + psi_K_eval(*chi.alpha * lg);
    }
    return out;
}

int conductor_of(const MultChar& chi) {
    const QuadAlgebra& K = chi.algebra();
    if (K.kind() == QuadKind::split) {
        auto level = [&](const std::optional<Padic>& a, i64 tame) {
            int c = tame % (K.ctx().p() - 1) != 0 ? 1 : 0;
            if (a && !a->is_zero()) {
                int lw = -a->val();  // c(psi)=0
                if (lw >= 2) c = std::max(c, lw);
            }
            return c;
        };
        std::optional<Padic> a1, a2;
        if (chi.alpha) {
            a1 = chi.alpha->a();
            a2 = chi.alpha->b();
        }
        return std::max(level(a1, chi.tame), level(a2, chi.tame2));
    }
    int c = chi.tame % K.tame_order() != 0 ? 1 : 0;
    if (chi.alpha && !chi.alpha->is_zero()) {
        int lw = -chi.alpha->vE() + K.c_psi();
        if (lw >= 2) c = std::max(c, lw);
    }
    return c;
}

int conductor_by_scan(const MultChar& chi) {
    const QuadAlgebra& K = chi.algebra();
    require(K.is_field(), errc::split_kind_unsupported, "scan over field kinds");
    const Context& ctx = K.ctx();
    int top = conductor_of(chi) + 2;
    require(top + 2 <= ctx.N(), errc::precision_exhausted, "scan beyond working precision");
    // level(c) = is chi nontrivial on U_K(c)?  c(chi) = 1 + max{c : nontrivial}
    auto nontrivial_at = [&](int k) {
        // generators of U_K(k)/U_K(k+1)
        std::vector<QuadElem> gens;
        if (K.kind() == QuadKind::inert) {
            for (i64 t = 1; t < ctx.p(); ++t) {
                gens.push_back(K.one() + K.from_base(Padic::of(ctx, t).shift(k)));
                gens.push_back(K.one() + K.elem(Padic::zero(ctx), Padic::of(ctx, t).shift(k)));
            }
        } else {
            QuadElem pik = K.unif().pow(k);
            for (i64 t = 1; t < ctx.p(); ++t)
                gens.push_back(K.one() + K.from_base(Padic::of(ctx, t)) * pik);
        }
        for (const auto& g : gens)
            if (!char_eval(chi, g).is_zero()) return true;
        return false;
    };
    for (int k = top; k >= 1; --k)
        if (nontrivial_at(k)) return k + 1;
    // trivial on U(1); tame part decides between 0 and 1
    QuadElem g = K.teich_generator();
    return char_eval(chi, g).is_zero() ? 0 : 1;
}

bool char_is_minimal(const MultChar& theta) {
    require(conductor_of(theta) >= 2, errc::conductor_too_small,
            "minimality test needs conductor >= 2");
    require(theta.alpha.has_value(), errc::domain_violation, "no wild part present");
    return is_minimal_element(*theta.alpha);
}

MultChar char_mul(const MultChar& a, const MultChar& b) {
    require(a.algebra().same(b.algebra()), errc::domain_violation, "characters over different algebras");
    MultChar r;
    r.K = a.K;
    if (a.alpha && b.alpha) {
        QuadElem s = *a.alpha + *b.alpha;
        if (!s.is_zero()) r.alpha = s;
    } else if (a.alpha)
        r.alpha = a.alpha;
    else if (b.alpha)
        r.alpha = b.alpha;
    i64 ord = a.algebra().kind() == QuadKind::split ? a.algebra().ctx().p() - 1 : a.algebra().tame_order();
    r.tame = (a.tame + b.tame) % ord;
    r.unif = a.unif + b.unif;
    r.tame2 = (a.tame2 + b.tame2) % ord;
    r.unif2 = a.unif2 + b.unif2;
    return r;
}

MultChar char_inv(const MultChar& a) {
    MultChar r;
    r.K = a.K;
    if (a.alpha) r.alpha = -*a.alpha;
    i64 ord = a.algebra().kind() == QuadKind::split ? a.algebra().ctx().p() - 1 : a.algebra().tame_order();
    r.tame = (ord - a.tame % ord) % ord;
    r.unif = a.unif.negate();
    r.tame2 = (ord - a.tame2 % ord) % ord;
    r.unif2 = a.unif2.negate();
    return r;
}

MultChar char_conj(const MultChar& a) {
    const QuadAlgebra& K = a.algebra();
    MultChar r;
    r.K = a.K;
    if (a.alpha) r.alpha = a.alpha->conj();
    if (K.kind() == QuadKind::split) {
        r.tame = a.tame2;
        r.unif = a.unif2;
        r.tame2 = a.tame;
        r.unif2 = a.unif;
        return r;
    }
    if (K.kind() == QuadKind::inert) {
        r.tame = a.tame * K.ctx().q() % K.tame_order();
        r.unif = a.unif;  // conj fixes the uniformizer
        return r;
    }
    // ramified: conj(pi_E) = -pi_E, and conj fixes u_F
    r.tame = a.tame;
    r.unif = a.unif + Phase::of(a.tame * (K.tame_order() / 2), K.tame_order());
    return r;
}

Phase central_value(const MultChar& chi, const Padic& z) {
    return char_eval(chi, chi.algebra().from_base(z));
}

bool central_match(const MultChar& a, const MultChar& b) {
    const Context& ctx = a.algebra().ctx();
    Padic pi = Padic::of(ctx, ctx.p());
    Padic g = teichmuller(ctx, 2 % ctx.p() == 0 ? 3 : 2);
    // generators of F^x modulo U_F(1): a uniformizer and a Teichmuller unit;
    // wild behavior on U_F(1) is compared through the alpha traces
    for (i64 r = 2; r < ctx.p(); ++r) {
        Padic t = teichmuller(ctx, r);
        if (central_value(a, t) != central_value(b, t)) return false;
    }
    (void)g;
    if (central_value(a, pi) != central_value(b, pi)) return false;
    // wild parts on U_F(1) are driven by Tr(alpha); psi(d*log u) is trivial
    // on all of U_F(1) exactly when v(d) >= -1
    auto wild = [&](const MultChar& c) {
        if (!c.alpha) return Padic::zero(ctx);
        if (c.algebra().kind() == QuadKind::split) return c.alpha->a() + c.alpha->b();
        return c.alpha->trace();
    };
    Padic d = wild(a) - wild(b);
    return d.is_zero() || d.val() >= -1;
}

QuadElem QuadIso::map(const QuadElem& x) const {
    return to->elem(x.a(), x.b() * s);
}

QuadElem QuadIso::unmap(const QuadElem& y) const {
    return from->elem(y.a(), y.b() / s);
}

std::optional<QuadIso> make_iso(const QuadAlgebra& E, const QuadAlgebra& L) {
    if (!E.is_field() || !L.is_field() || E.kind() != L.kind()) return std::nullopt;
    Padic ratio = E.D() / L.D();
    if (!is_square(ratio)) return std::nullopt;
    QuadIso iso;
    iso.from = &E;
    iso.to = &L;
    iso.s = padic_sqrt(ratio);
    return iso;
}

MultChar transport_char(const MultChar& chi, const QuadIso& iso) {
    require(chi.K == iso.from || chi.algebra().same(*iso.from), errc::domain_violation,
            "character not over the source algebra");
    const QuadAlgebra& L = *iso.to;
    MultChar r;
    r.K = &L;
    if (chi.alpha) r.alpha = iso.map(*chi.alpha);
    // tame exponent: solve chi_L(g) = chi(unmap(g)) on a Teichmuller generator
    QuadElem g = L.teich_generator();
    QuadElem pre = iso.from->teich(iso.unmap(g));
    Phase val = chi.tame == 0 ? Phase() : Phase::of(chi.tame * iso.from->residue_dlog(pre),
                                                    iso.from->tame_order());
    // val = tame_L / ord
    i64 ord = L.tame_order();
    require((i128)val.num() * ord % val.den() == 0, errc::internal, "tame transport not integral");
    r.tame = (i64)((i128)val.num() * ord / val.den() % ord);
    // uniformizer value: full evaluation at the preimage
    r.unif = char_eval(chi, iso.unmap(L.unif()));
    return r;
}

MultChar make_imaginary_char(const QuadAlgebra& K, int c, const Padic& s, i64 tame, Phase unif) {
    require(K.is_field(), errc::split_kind_unsupported, "imaginary construction needs a field");
    require(c >= 2, errc::conductor_too_small, "wild construction needs conductor >= 2");
    require(!s.is_zero() && s.val() == 0, errc::domain_violation, "s must be a unit");
    const Context& ctx = K.ctx();
    MultChar chi;
    chi.K = &K;
    chi.tame = ((tame % K.tame_order()) + K.tame_order()) % K.tame_order();
    chi.unif = unif;
    if (K.kind() == QuadKind::inert) {
        chi.alpha = K.elem(Padic::zero(ctx), s.shift(-c));
    } else {
        require(c % 2 == 0, errc::domain_violation,
                "minimal characters over ramified fields have even conductor");
        // v_E(s p^k sqrt(D)) = 2k + 1 = -c - 1
        chi.alpha = K.elem(Padic::zero(ctx), s.shift((-c - 2) / 2));
    }
    require(conductor_of(chi) == c, errc::internal, "conductor construction failed");
    return chi;
}

bool trivial_on_base(const MultChar& chi) {
    const Context& ctx = chi.algebra().ctx();
    MultChar triv = trivial_char(chi.algebra());
    MultChar probe = triv;
    (void)probe;
    for (i64 r = 2; r < ctx.p(); ++r)
        if (!central_value(chi, teichmuller(ctx, r)).is_zero()) return false;
    if (!central_value(chi, Padic::of(ctx, ctx.p())).is_zero()) return false;
    if (chi.alpha) {
        Padic tr = chi.algebra().kind() == QuadKind::split ? chi.alpha->a() + chi.alpha->b()
                                                           : chi.alpha->trace();
        if (!tr.is_zero() && tr.val() < -1) return false;
    }
    return true;
}

QuadElem low_conductor_alpha(const QuadAlgebra& E, int c_chi) {
    require(c_chi <= 1, errc::domain_violation, "convention applies to conductor <= 1");
    const Context& ctx = E.ctx();
    require(E.is_field(), errc::split_kind_unsupported, "field kinds only");
    if (E.kind() == QuadKind::inert) {
        // v_E = -c(chi); imaginary elements exist at every valuation
        return E.elem(Padic::zero(ctx), Padic::of(ctx, 1).shift(-c_chi));
    }
    // ramified: imaginary elements F*sqrt(D) have odd v_E; use -1
    return E.elem(Padic::zero(ctx), Padic::rational(ctx, 1, ctx.p()));
}

}  // namespace toric
