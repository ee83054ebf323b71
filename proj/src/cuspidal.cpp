#include "toric/cuspidal.hpp"

namespace toric {

namespace {

// x = z * l with z in F^x and l in U_L(1), or nothing
struct CentralSplit {
    bool ok = false;
    Padic z;
    QuadElem l;
};

CentralSplit central_unit_split(const QuadElem& x) {
    CentralSplit out;
    if (x.is_zero() || x.a().is_zero()) return out;
    QuadElem rest = x - x.algebra().from_base(x.a());
    if (!rest.is_zero() && rest.vE() <= x.a().val() * x.algebra().e()) return out;
    out.ok = true;
    out.z = x.a();
    out.l = x / x.algebra().from_base(x.a());
    return out;
}

bool on_polarization_line(const CuspidalDatum& d, const QuadElem& m) {
    // m j lies in pr(B^1) iff m is congruent to an O_F-multiple of line_m
    // one level below pr(H^1)
    const Context& ctx = d.ctx();
    int vm0 = d.line_m.vE();
    for (i64 r = 0; r < ctx.p(); ++r) {
        QuadElem diff = m - d.L->from_base(Padic::of(ctx, r)) * d.line_m;
        if (diff.is_zero() || diff.vE() >= vm0 + 1) return true;
    }
    return false;
}

bool perp_in_B1(const CuspidalDatum& d, const QuadElem& m) {
    // is m j in the B^1 perp-lattice?
    if (m.is_zero()) return true;
    i64 vj2 = (i64)d.B().gamma().val() * d.L->e();
    i64 t2 = 2 * m.vE() + vj2;
    if (t2 >= d.i2p) return true;
    if (d.dim_lambda == 1) return false;
    return t2 >= d.i2 && on_polarization_line(d, m);
}

}  // namespace

CuspidalDatum build_datum(const QuadAlgebra& L, const MultChar& theta, int side,
                          PolarizationKind pol) {
    const Context& ctx = L.ctx();
    require(L.is_field(), errc::domain_violation, "theta lives on a field extension");
    int c = conductor_of(theta);
    require(c >= 2, errc::conductor_too_small,
            "depth-zero types (c(theta) <= 1) are out of scope");
    require(char_is_minimal(theta), errc::not_minimal, "theta must be minimal");
    require(theta.alpha->is_imaginary(), errc::domain_violation,
            "construct theta with an imaginary wild part (twist by a base character)");

    CuspidalDatum d;
    d.L = &L;
    d.theta = theta;
    d.Bp = std::make_shared<QuatAlgebra>(side > 0 ? QuatAlgebra::matrix_side(L)
                                                  : QuatAlgebra::division_side(L));
    d.alpha_theta = *theta.alpha;
    d.c_theta = c;
    d.n = c / 2;
    int eps = d.B().eps_BL();
    d.i2 = 2 * (i64)((c - eps) / 2) + eps;
    d.i2p = 2 * (i64)((c - eps + 1) / 2) + eps;
    if (side > 0) {
        if (L.e() == 1)
            d.case_idx = c % 2 == 0 ? 1 : 2;
        else
            d.case_idx = 3;
    } else {
        if (L.e() == 1)
            d.case_idx = c % 2 == 0 ? 4 : 5;
        else
            d.case_idx = 6;
    }
    d.c_pi = L.e() == 1 ? 2 * c : c + 1;
    d.dim_lambda = (d.case_idx == 2 || d.case_idx == 4) ? (int)ctx.q() : 1;
    require(ctx.N() >= d.c_pi + 4, errc::precision_too_low,
            "working precision must cover c(pi) + 4");
    require(d.alpha_theta.vE() == -c + L.c_psi(), errc::domain_violation,
            "alpha_theta valuation violates the conductor relation");

    d.theta_B = theta;
    if (side < 0 && L.e() == 2) d.theta_B.unif = theta.unif + Phase::of(1, 2);

    d.pol = pol;
    if (d.dim_lambda > 1) {
        // t0 = line_m * j at nu-level exactly i
        i64 vj2 = (i64)d.B().gamma().val() * L.e();
        int lo = (int)((d.i2 - vj2) / 2);
        if (pol == PolarizationKind::appendix) {
            require(d.case_idx == 2, errc::domain_violation,
                    "the appendix polarization is the matrix-side c(pi)=4n+2 subgroup");
            d.line_m = L.sqrtD() * L.from_base(Padic::of(ctx, 1).shift(lo));
        } else {
            d.line_m = L.from_base(Padic::of(ctx, 1).shift(lo));
        }
    }
    return d;
}

Zb1Parts zb1_membership(const CuspidalDatum& d, const QuatElem& g) {
    Zb1Parts out;
    auto [x, y] = orthogonal_decompose(g);
    if (x.is_zero() || x.norm().is_zero()) return out;
    auto split = central_unit_split(x);
    if (!split.ok) return out;
    QuadElem m = y / x;  // g = x (1 + m j)
    if (!m.is_zero() && !perp_in_B1(d, m)) return out;
    out.inside = true;
    out.z = split.z;
    out.l = split.l;
    out.t = d.B().elem(d.L->zero(), m);
    return out;
}

Phase simple_char_eval(const CuspidalDatum& d, const QuadElem& l, const QuatElem& t) {
    // domain: l (1 + t) with t in the B^1 lattice (L-part at depth >= 1)
    auto [tL, tP] = orthogonal_decompose(t);
    bool ok;
    if (t.is_zero())
        ok = true;
    else if (semi_valuation2(t) >= d.i2p)
        ok = true;
    else
        ok = (tL.is_zero() || 2 * tL.vE() >= std::max<i64>(2, d.i2p)) && perp_in_B1(d, tP);
    require(ok, errc::outside_domain, "element outside the simple-character domain");
    require(!l.is_zero() && !l.norm().is_zero(), errc::outside_domain, "l must be invertible");
    Phase val = char_eval(d.theta_B, l);
    Phase wild = psi_eval((d.alpha_theta * tL).trace());
    return val + wild;
}

std::optional<Phase> matrix_coefficient(const CuspidalDatum& d, const QuatElem& g) {
    auto [x, y] = orthogonal_decompose(g);
    if (x.is_zero() || x.norm().is_zero()) return std::nullopt;
    QuadElem m = y / x;
    i64 vj2 = (i64)d.B().gamma().val() * d.L->e();
    if (d.dim_lambda == 1) {
        // support J = L^x K_A(i)
        if (!m.is_zero() && 2 * m.vE() + vj2 < d.i2) return std::nullopt;
        return char_eval(d.theta_B, x);
    }
    // support Z B^1
    if (!central_unit_split(x).ok) return std::nullopt;
    if (!m.is_zero() && !perp_in_B1(d, m)) return std::nullopt;
    return char_eval(d.theta_B, x);
}

bool intertwine_check(const CuspidalDatum& d, const QuatElem& g) {
    require(!g.norm().is_zero(), errc::non_invertible, "g must be invertible");
    const QuadAlgebra& L = *d.L;
    // route 1: membership g in J = L^x K_A(i)
    auto [x, y] = orthogonal_decompose(g);
    bool in_J = false;
    if (!x.is_zero() && !x.norm().is_zero()) {
        QuadElem m = y / x;
        i64 vj2 = (i64)d.B().gamma().val() * L.e();
        in_J = m.is_zero() || 2 * m.vE() + vj2 >= d.i2;
    }
    // route 2: conjugation on H^1 generators: theta(g^-1 h g) == theta(h)
    // whenever both sides are in the domain
    i64 vj2 = (i64)d.B().gamma().val() * L.e();
    int lop = (int)((d.i2p - vj2 + 1) / 2);
    if (2 * lop + vj2 < d.i2p) ++lop;
    std::vector<QuatElem> gens;
    for (int k = 1; k <= d.c_theta + 1; ++k) {
        for (const QuadElem& u : {L.one(), L.sqrtD()}) {
            QuadElem lk = L.one() + u * L.unif().pow(k);
            gens.push_back(d.B().from_L(lk));
        }
    }
    for (int extra = 0; extra <= d.c_theta; ++extra)
        for (const QuadElem& u : {L.one(), L.sqrtD()}) {
            QuadElem m = u * L.unif().pow(lop + extra);
            gens.push_back(d.B().one() + d.B().elem(L.zero(), m));
        }
    QuatElem gi = g.inv();
    bool conj_ok = true;
    for (const auto& h : gens) {
        QuatElem hc = gi * h * g;
        Phase lhs, rhs;
        bool lhs_ok = true, rhs_ok = true;
        try {
            auto [hx, hy] = orthogonal_decompose(h);
            rhs = simple_char_eval(d, hx, d.B().elem(L.zero(), hy / hx));
        } catch (const error&) {
            rhs_ok = false;
        }
        try {
            auto [cx, cy] = orthogonal_decompose(hc);
            if (cx.is_zero() || cx.norm().is_zero()) throw error(errc::outside_domain, "");
            lhs = simple_char_eval(d, cx, d.B().elem(L.zero(), cy / cx));
        } catch (const error&) {
            lhs_ok = false;
        }
        if (!rhs_ok) continue;
        if (!lhs_ok || lhs != rhs) {
            conj_ok = false;
            break;
        }
    }
    require(in_J == conj_ok, errc::internal, "intertwining routes disagree");
    return in_J;
}

std::vector<QuadElem> enumerate_OL(const QuadAlgebra& L, int R) {
    const Context& ctx = L.ctx();
    std::vector<QuadElem> out;
    int ra = L.e() == 1 ? R : (R + 1) / 2;
    int rb = L.e() == 1 ? R : R / 2;
    u64 na = ctx.ppow(ra), nb = ctx.ppow(rb);
    out.reserve((size_t)(na * nb));
    for (u64 a = 0; a < na; ++a)
        for (u64 b = 0; b < nb; ++b) out.push_back(L.of((i64)a, (i64)b));
    return out;
}

namespace {

std::complex<double> orbit_sum_over(const CuspidalDatum& d, const QuatElem& x, int depth,
                                    bool b1_lattice, double total_mass) {
    const QuadAlgebra& L = *d.L;
    const Context& ctx = d.ctx();
    if (x.is_zero()) return total_mass;  // all phases are 1
    require(x.trace().is_zero() || x.trace().val() >= 1, errc::domain_violation,
            "orbit sums need x in g_+");
    require(x.norm().is_zero() || x.norm().val() >= 1, errc::domain_violation,
            "orbit sums need x in g_+");
    i64 vj2 = (i64)d.B().gamma().val() * L.e();
    i64 base2 = b1_lattice ? d.i2p : d.i2;
    // perp lattice level in v_L units; half-integer thresholds round up
    int lo = (int)((base2 - vj2 + 1) / 2);
    if (2 * lo + vj2 < base2) ++lo;
    QuatElem alpha = d.alpha_quat();
    std::vector<QuadElem> cells = enumerate_OL(L, depth);
    std::complex<double> acc = 0.0;
    size_t count = 0;
    bool line = b1_lattice && d.dim_lambda > 1;
    i64 rmax = line ? ctx.p() : 1;
    for (i64 r = 0; r < rmax; ++r) {
        QuadElem rm = line ? d.L->from_base(Padic::of(ctx, r)) * d.line_m : L.zero();
        for (const auto& mhat : cells) {
            QuadElem m = rm + mhat * L.unif().pow(lo);
            QuatElem t = d.B().elem(L.zero(), m);
            QuatElem g = d.B().one() + t;
            QuatElem ag = g.inv() * alpha * g;
            acc += pairing_phase(ag, x).value();
            ++count;
        }
    }
    return acc * (total_mass / (double)count);
}

}  // namespace

std::complex<double> orbit_trace(const CuspidalDatum& d, const QuatElem& x, int depth) {
    return orbit_sum_over(d, x, depth, false, (double)d.dim_lambda);
}

std::complex<double> b1_orbit_sum(const CuspidalDatum& d, const QuatElem& x, int depth) {
    return orbit_sum_over(d, x, depth, true, 1.0);
}

Rat vol_Z_ZKL(const CuspidalDatum& d, int m) {
    require(d.B().eps() == 1, errc::division_side_unsupported,
            "volumes are normalized against Vol(Z\\ZK) = 1 on the matrix side");
    i64 q = d.ctx().q();
    if (d.L->e() == 1) {
        // [ZK : ZK_L(1)] = q^2 - q, each deeper step q^2
        return Rat(1) / (Rat(q * q - q) * Rat::pow(q, 2 * (m - 1)));
    }
    // [ZK : ZK^1_L(1)] = q^2 - 1 with deeper steps q, and [K_L : K^1_L] = 2
    return Rat(2) / (Rat(q * q - 1) * Rat::pow(q, m - 1));
}

Rat vol_Z_ZB1(const CuspidalDatum& d) {
    i64 q = d.ctx().q();
    Rat volKL = vol_Z_ZKL(d, d.n);
    if (d.L->e() == 1) {
        Rat v = volKL / Rat(q + 1);            // [Z K_L(n) : Z K^1_L(n)] = q + 1
        if (d.dim_lambda > 1) v = v / Rat(q);  // [J^1 : B^1] = q
        return v;
    }
    return volKL / Rat(2);
}

Rat formal_degree_mass(const CuspidalDatum& d) {
    if (d.dim_lambda == 1) return vol_Z_ZKL(d, d.n);
    return vol_Z_ZB1(d);
}

Rat formal_degree_brute(const CuspidalDatum& d, int depth) {
    require(d.B().eps() == 1, errc::division_side_unsupported, "matrix side only");
    const Context& ctx = d.ctx();
    u64 pd = ctx.ppow(depth);
    u64 p = (u64)ctx.p();
    i64 total = 0, inside = 0;
    // one representative per unit-scalar class: the first entry that is a
    // unit mod p is normalized to 1
    for (u64 a = 0; a < pd; ++a)
        for (u64 b = 0; b < pd; ++b)
            for (u64 c = 0; c < pd; ++c)
                for (u64 e = 0; e < pd; ++e) {
                    if (a % p != 0) {
                        if (a != 1) continue;
                    } else if (b % p != 0) {
                        if (b != 1) continue;
                    } else if (c % p != 0) {
                        if (c != 1) continue;
                    } else if (e != 1) {
                        continue;
                    }
                    u64 det = (u64)(((unsigned __int128)a * e + (unsigned __int128)pd * pd -
                                     (unsigned __int128)b * c) %
                                    pd);
                    if (det % p == 0) continue;
                    ++total;
                    Mat2 mat = {Padic::of(ctx, (i64)a), Padic::of(ctx, (i64)b),
                                Padic::of(ctx, (i64)c), Padic::of(ctx, (i64)e)};
                    QuatElem g = from_matrix(d.B(), mat);
                    if (matrix_coefficient(d, g).has_value()) ++inside;
                }
    Rat frac(inside, total);
    // the pi_L-component of L^x doubles the support mod Z for ramified L
    // (dim-1 support J only)
    if (d.L->e() == 2 && d.dim_lambda == 1) frac = frac * Rat(2);
    return frac;
}

}  // namespace toric
