#include "toric/orbital.hpp"

namespace toric {

TestFunction make_test_function(const PeriodProblem& pr, LineChoice line) {
    require(pr.datum.B().eps() == 1, errc::division_side_unsupported,
            "the trace-formula settings keep B split at the working place");
    TestFunction tf;
    tf.chi = pr.chi;
    tf.line = line;
    // f is built from the test vector whose integral pairs against chi:
    // Phi = chi^{-1} on the common support, so align for chi^{-1}
    tf.problem = make_problem(pr.datum, *pr.E, char_inv(pr.chi));
    require(!tf.problem.whole_torus_gate, errc::star_violated,
            "(*) fails: the orbital setting assumes the Lie-range regime");
    auto at = align_torus(tf.problem);
    require(at.has_value(), errc::existence_fails, "no test vector on the matrix side");
    tf.at = *at;
    tf.norm_vol = vol_Z_ZB1(pr.datum);
    return tf;
}

std::complex<double> orbital_zero(const TestFunction& tf, int depth) {
    const PeriodProblem& pr = tf.problem;
    std::complex<double> acc = 0.0;
    for (const auto& ct : coset_reps(*pr.E, depth)) {
        auto phi = aligned_phi(pr, tf.at, pr.emb->embed(ct.t), tf.line);
        if (!phi.has_value()) continue;
        // f(t) chi^{-1}(t) = conj(Phi(t)) chi^{-1}(t) / Vol
        Phase total = phi->negate() + char_eval(tf.chi, ct.t).negate();
        acc += ct.weight.to_double() * total.value();
    }
    return acc / tf.norm_vol.to_double();
}

OrbitalResult orbital_xi(const TestFunction& tf, const QuadElem& x, int depth) {
    const PeriodProblem& pr = tf.problem;
    const QuadAlgebra& E = *pr.E;
    const CuspidalDatum& d = pr.datum;
    const QuatElem& j = tf.at.j_common;
    OrbitalResult out;
    out.depth = depth;
    Padic j2 = (j * j).trace() / Padic::of(E.ctx(), 2);
    out.xi = j2 * x.norm();
    QuatElem jx = j * pr.emb->embed(x);
    auto reps = coset_reps(E, depth);
    // inner factors 1 + j x e' and outer data, precomputed once
    std::vector<QuatElem> eimg, hb;
    std::vector<Phase> chiphase;
    std::vector<double> wts;
    std::vector<int> vnm_e;
    eimg.reserve(reps.size());
    for (const auto& ct : reps) {
        QuatElem img = pr.emb->embed(ct.t);
        eimg.push_back(img);
        chiphase.push_back(char_eval(tf.chi, ct.t).negate());
        wts.push_back(ct.weight.to_double());
        hb.push_back(j.algebra().one() + jx * pr.emb->embed(norm_one_map(ct.t)));
        vnm_e.push_back(img.norm().val());
    }
    // Nm(1 + j x e') = 1 - xi exactly, so v(Nm g) = v(Nm e) + v(1 - xi);
    // the support sits in Z U(1) (1 + lattice), forcing v(Nm g) even and
    // v(Tr g)^2-level equal to it
    Padic one_minus_xi = Padic::of(E.ctx(), 1) - out.xi;
    int dshift = one_minus_xi.is_zero() ? (int)E.ctx().N() : one_minus_xi.val();
    int eL = d.L->e();
    std::complex<double> acc = 0.0;
    for (size_t a = 0; a < reps.size(); ++a) {
        if (eL == 1 && ((vnm_e[a] + dshift) & 1)) continue;  // odd central norm
        const QuatElem& outer = eimg[a];
        i64 vg2 = (i64)eL * (vnm_e[a] + dshift);  // 2 nu of the central part
        for (size_t b = 0; b < reps.size(); ++b) {
            // trace filter: Tr(g) = 2 z unit needs v_L(Tr g) = nu(g) exactly
            Padic tr = (outer.x() * hb[b].x() +
                        outer.algebra().L().from_base(outer.algebra().gamma()) *
                            (outer.y() * hb[b].y().conj()))
                           .trace();
            if (tr.is_zero() || 2 * (i64)eL * tr.val() != vg2) continue;
            QuatElem g = outer * hb[b];
            auto phi = aligned_phi(pr, tf.at, g, tf.line);
            if (!phi.has_value()) continue;
            Phase total = phi->negate() + chiphase[a];
            acc += wts[a] * wts[b] * total.value();
        }
    }
    out.raw = acc;
    out.value = acc / tf.norm_vol.to_double();
    return out;
}

std::optional<QuadElem> orbit_representative(const TestFunction& tf, const Padic& xi) {
    const QuadAlgebra& E = *tf.problem.E;
    const QuatElem& j = tf.at.j_common;
    Padic j2 = (j * j).trace() / Padic::of(E.ctx(), 2);
    Padic want = xi / j2;  // Nm_E(x) = xi / j^2
    if (E.is_field() && hilbert_symbol(want, E.D()) != 1) return std::nullopt;
    try {
        return solve_norm_equation(E, want);
    } catch (const error&) {
        return std::nullopt;
    }
}

Rat archimedean_orbital(int k, int m, const Rat& xi) {
    int am = m < 0 ? -m : m;
    require(k > am && am >= 1, errc::weight_violation, "need k > |m| >= 1");
    require(xi < Rat(0), errc::domain_violation, "xi must be negative");
    auto binom = [](int nn, int kk) {
        Rat r(1);
        for (int i = 0; i < kk; ++i) r = r * Rat(nn - i) / Rat(i + 1);
        return r;
    };
    Rat sum(0);
    Rat neg_xi_pow(1);
    for (int i = 0; i <= k - am - 1; ++i) {
        sum = sum + binom(k + m - 1, i) * binom(k - m - 1, i) * neg_xi_pow;
        neg_xi_pow = neg_xi_pow * (-xi);
    }
    Rat denom(1);
    for (int i = 0; i < k - 1; ++i) denom = denom * (Rat(1) - xi);
    return sum / denom;
}

}  // namespace toric
