#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "toric/chars.hpp"

using namespace toric;

TEST_CASE("psi") {
    Context ctx(5, 8);
    CHECK(psi_eval(Padic::of(ctx, 1)) == Phase());
    CHECK(psi_eval(Padic::rational(ctx, 1, 5)) == Phase::of(1, 5));
    CHECK(psi_eval(Padic::rational(ctx, 7, 25)) == Phase::of(7, 25));
    // digit-expansion oracle: frac(u/p^k) = (u mod p^k)/p^k
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        i64 u = 1 + (i64)(rng() % 10000);
        while (u % 5 == 0) ++u;
        int k = 1 + (int)(rng() % 4);
        i64 pk = 1;
        for (int j = 0; j < k; ++j) pk *= 5;
        CHECK(psi_eval(Padic::make(ctx, -k, u)) == Phase::of(u % pk, pk));
    }
}

TEST_CASE("psi_K and conductor of psi_K") {
    Context ctx(5, 8);
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    CHECK(psi_K_eval(E.sqrtD()) == Phase());  // imaginary: trace 0
    // x = a/5 in F: Tr = 2x
    CHECK(psi_K_eval(E.from_base(Padic::rational(ctx, 3, 5))) == Phase::of(6, 5));

    // conductor check: psi_K trivial on pi_K^{-e+1} O_K, nontrivial one lower
    auto cond_ok = [&](const QuadAlgebra& K) {
        int c = K.c_psi();
        QuadElem unif = K.unif();
        bool trivial_at_c = true, nontrivial_below = false;
        for (i64 a = 0; a < 5; ++a)
            for (i64 b = 0; b < 5; ++b) {
                if (a == 0 && b == 0) continue;
                QuadElem x = K.of(a, b);
                trivial_at_c &= psi_K_eval(x * unif.pow(c)).is_zero();
                if (!psi_K_eval(x * unif.pow(c - 1)).is_zero()) nontrivial_below = true;
            }
        return trivial_at_c && nontrivial_below;
    };
    CHECK(E.c_psi() == 0);
    CHECK(cond_ok(E));
    QuadAlgebra R = QuadAlgebra::ramified(ctx, false);
    CHECK(R.c_psi() == -1);
    CHECK(cond_ok(R));
}

TEST_CASE("char_eval with the D'-convention") {
    Context ctx(5, 10);
    QuadAlgebra L = QuadAlgebra::inert(ctx);  // D' = 2
    // alpha_theta = pi^{-2} / sqrt(D'): b-coordinate pi^{-2}/D'
    MultChar theta = trivial_char(L);
    theta.alpha = L.elem(Padic::zero(ctx), Padic::rational(ctx, 1, 2).shift(-2));
    CHECK(conductor_of(theta) == 2);
    QuadElem x = L.one() + L.sqrtD() * L.from_base(Padic::of(ctx, 5));  // 1 + pi sqrt(D')
    CHECK(char_eval(theta, x) == Phase::of(2, 5));

    MultChar triv = trivial_char(L);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        QuadElem t = L.of(1 + (i64)(rng() % 20), (i64)(rng() % 20));
        if (t.norm().is_zero()) continue;
        CHECK(char_eval(triv, t) == Phase());
    }
}

TEST_CASE("homomorphism property") {
    Context ctx(5, 12);
    std::mt19937_64 rng(13);
    for (const QuadAlgebra& K : {QuadAlgebra::inert(ctx), QuadAlgebra::ramified(ctx, false)}) {
        MultChar chi = make_imaginary_char(K, K.kind() == QuadKind::inert ? 3 : 4,
                                           Padic::of(ctx, 2), 5, Phase::of(1, 3));
        for (int i = 0; i < 1000; ++i) {
            i64 a1 = (i64)(rng() % 50), b1 = (i64)(rng() % 50);
            i64 a2 = (i64)(rng() % 50), b2 = (i64)(rng() % 50);
            QuadElem x = K.of(a1, b1), y = K.of(a2, b2);
            if (x.is_zero() || y.is_zero() || x.norm().is_zero() || y.norm().is_zero()) continue;
            CHECK(char_eval(chi, x * y) == char_eval(chi, x) + char_eval(chi, y));
        }
    }
    // split algebra homomorphism
    QuadAlgebra S = QuadAlgebra::split(ctx);
    MultChar chi = trivial_char(S);
    chi.alpha = S.elem(Padic::rational(ctx, 1, 25), Padic::rational(ctx, 2, 5));
    chi.tame = 1;
    chi.tame2 = 3;
    chi.unif = Phase::of(1, 7);
    for (int i = 0; i < 500; ++i) {
        QuadElem x = S.of(1 + (i64)(rng() % 99), 1 + (i64)(rng() % 99));
        QuadElem y = S.of(1 + (i64)(rng() % 99), 1 + (i64)(rng() % 99));
        if (x.norm().is_zero() || y.norm().is_zero()) continue;
        CHECK(char_eval(chi, x * y) == char_eval(chi, x) + char_eval(chi, y));
    }
}

TEST_CASE("conductor two ways") {
    Context ctx(5, 12);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar triv = trivial_char(L);
    CHECK(conductor_of(triv) == 0);
    CHECK(conductor_by_scan(triv) == 0);

    MultChar tame_only = trivial_char(L);
    tame_only.tame = 7;
    CHECK(conductor_of(tame_only) == 1);
    CHECK(conductor_by_scan(tame_only) == 1);

    for (int c = 2; c <= 5; ++c) {
        MultChar chi = make_imaginary_char(L, c, Padic::of(ctx, 3), 2, Phase());
        CHECK(conductor_of(chi) == c);
        CHECK(conductor_by_scan(chi) == c);
        CHECK(-chi.alpha->vE() + L.c_psi() == c);
    }
    QuadAlgebra R = QuadAlgebra::ramified(ctx, true);
    for (int c = 2; c <= 6; c += 2) {
        MultChar chi = make_imaginary_char(R, c, Padic::of(ctx, 2), 1, Phase::of(1, 2));
        CHECK(conductor_of(chi) == c);
        CHECK(conductor_by_scan(chi) == c);
    }
}

TEST_CASE("char minimality") {
    Context ctx(5, 10);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar theta = make_imaginary_char(L, 2, Padic::of(ctx, 1), 0, Phase());
    CHECK(char_is_minimal(theta));

    // dominant F-part: alpha = pi^{-2}(1 + pi sqrt(D'))
    MultChar bad = trivial_char(L);
    bad.alpha = L.elem(Padic::make(ctx, -2, 1), Padic::make(ctx, -1, 1));
    CHECK_FALSE(char_is_minimal(bad));

    // twisting by mu_L adds alpha_mu in F: minimality matches the alpha-sum
    std::mt19937_64 rng(19);
    for (int i = 0; i < 50; ++i) {
        MultChar muL = trivial_char(L);
        int vmu = -3 - (int)(rng() % 2);  // v(alpha_mu) < v(alpha_theta) = -2
        i64 u = 1 + (i64)(rng() % 99);
        while (u % 5 == 0) ++u;
        muL.alpha = L.from_base(Padic::make(ctx, vmu, u));
        MultChar prod = char_mul(theta, muL);
        CHECK(prod.alpha.has_value());
        CHECK(char_is_minimal(prod) == is_minimal_element(*theta.alpha + *muL.alpha));
        CHECK_FALSE(char_is_minimal(prod));  // dominant F-part after the twist
    }
}

TEST_CASE("galois twist") {
    Context ctx(5, 10);
    std::mt19937_64 rng(29);
    for (const QuadAlgebra& K : {QuadAlgebra::inert(ctx), QuadAlgebra::ramified(ctx, false)}) {
        MultChar chi = make_imaginary_char(K, 4, Padic::of(ctx, 3), 5, Phase::of(2, 7));
        MultChar bar = char_conj(chi);
        for (int i = 0; i < 300; ++i) {
            QuadElem x = K.of(1 + (i64)(rng() % 99), (i64)(rng() % 99));
            if (x.is_zero() || x.norm().is_zero()) continue;
            CHECK(char_eval(bar, x) == char_eval(chi, x.conj()));
        }
    }
}

TEST_CASE("char transport along an isomorphism") {
    Context ctx(5, 10);
    QuadAlgebra E(ctx, QuadKind::inert, Padic::of(ctx, 8));  // 8 = 2 * 4: same class as 2
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    auto iso = make_iso(E, L);
    REQUIRE(iso.has_value());
    MultChar chi = make_imaginary_char(E, 3, Padic::of(ctx, 2), 4, Phase::of(1, 8));
    MultChar chiL = transport_char(chi, *iso);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 300; ++i) {
        QuadElem y = L.of(1 + (i64)(rng() % 99), (i64)(rng() % 99));
        if (y.is_zero() || y.norm().is_zero()) continue;
        CHECK(char_eval(chiL, y) == char_eval(chi, iso->unmap(y)));
    }
}

TEST_CASE("central restriction") {
    Context ctx(5, 10);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar w1 = make_imaginary_char(L, 2, Padic::of(ctx, 1), 0, Phase());
    CHECK(trivial_on_base(w1));
    MultChar w2 = make_imaginary_char(L, 2, Padic::of(ctx, 1), 1, Phase());
    CHECK_FALSE(trivial_on_base(w2));
    MultChar w3 = make_imaginary_char(L, 2, Padic::of(ctx, 1), 0, Phase::of(1, 2));
    CHECK_FALSE(trivial_on_base(w3));
    CHECK(central_match(w1, w1));
    CHECK_FALSE(central_match(w1, w2));
}
