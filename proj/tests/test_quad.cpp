#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "toric/quad.hpp"

using namespace toric;

namespace {

QuadElem random_elem(const QuadAlgebra& A, std::mt19937_64& rng, int spread = 2) {
    auto part = [&]() {
        i64 u = 1 + (i64)(rng() % 400);
        while (u % A.ctx().p() == 0) ++u;
        int v = (int)(rng() % (2 * spread + 1)) - spread;
        return Padic::make(A.ctx(), v, u);
    };
    return A.elem(part(), part());
}

}  // namespace

TEST_CASE("algebra arithmetic") {
    Context ctx(5, 8);
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    REQUIRE(E.D() == Padic::of(ctx, 2));  // nonresidue at p=5 is 2
    QuadElem x = E.of(1, 1);              // 1 + sqrt(2)
    CHECK(x.norm() == Padic::of(ctx, -1));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        QuadElem a = random_elem(E, rng);
        CHECK(a.conj().conj() == a);
        CHECK(a * a.inv() == E.one());
        CHECK((a * a.conj()).b().is_zero());
    }

    QuadAlgebra S = QuadAlgebra::split(ctx);
    QuadElem u = S.of(1, 2) * S.of(3, 4);
    CHECK(u == S.of(3, 8));
    CHECK_THROWS_AS(S.of(1, 0).inv(), error);
}

TEST_CASE("imaginary part") {
    Context ctx(5, 8);
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    QuadElem x = E.of(3, 4);
    CHECK(x.imaginary_part() == E.of(0, 4));
    CHECK(E.from_base(Padic::of(ctx, 7)).imaginary_part().is_zero());

    std::mt19937_64 rng(5);
    for (const QuadAlgebra& A : {E, QuadAlgebra::ramified(ctx, false), QuadAlgebra::split(ctx)}) {
        for (int i = 0; i < 60; ++i) {
            QuadElem a = random_elem(A, rng);
            QuadElem a0 = a.imaginary_part();
            // Nm(x) = Tr(x)^2/4 + Nm(x0)   (x0^2 = -Nm(x0) for imaginary x0)
            Padic lhs = a.norm();
            Padic tr = a.trace();
            Padic rhs = tr * tr / Padic::of(ctx, 4) + a0.norm();
            CHECK((lhs - rhs).is_zero());
        }
    }
}

TEST_CASE("minimal elements") {
    Context ctx(5, 8);
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    CHECK(is_minimal_element(E.sqrtD()));
    CHECK_FALSE(is_minimal_element(E.of(1, 5)));  // v(x)=0, v(x0)=1
    CHECK(is_minimal_element(E.of(5, 1)));        // v(x)=v(x0)=0
    CHECK_THROWS_AS(is_minimal_element(QuadAlgebra::split(ctx).of(1, 2)), error);

    // minimal-element valuation law: v(a+bx) = min(v(a), v(bx))
    std::mt19937_64 rng(17);
    for (const QuadAlgebra& A :
         {E, QuadAlgebra::ramified(ctx, false), QuadAlgebra::ramified(ctx, true)}) {
        for (int i = 0; i < 200; ++i) {
            QuadElem x = random_elem(A, rng);
            if (!is_minimal_element(x)) continue;
            i64 ua = 1 + (i64)(rng() % 100), ub = 1 + (i64)(rng() % 100);
            while (ua % 5 == 0) ++ua;
            while (ub % 5 == 0) ++ub;
            int va = (int)(rng() % 5) - 2, vb = (int)(rng() % 5) - 2;
            QuadElem a = A.from_base(Padic::make(ctx, va, ua));
            QuadElem bx = A.from_base(Padic::make(ctx, vb, ub)) * x;
            CHECK((a + bx).vE() == std::min(a.vE(), bx.vE()));
        }
    }
}

TEST_CASE("two-algebra norm separation") {
    Context ctx(5, 8);
    std::vector<QuadAlgebra> algs = {QuadAlgebra::split(ctx), QuadAlgebra::inert(ctx),
                                     QuadAlgebra::ramified(ctx, false),
                                     QuadAlgebra::ramified(ctx, true)};
    std::mt19937_64 rng(23);
    for (size_t i = 0; i < algs.size(); ++i) {
        for (size_t j = 0; j < algs.size(); ++j) {
            if (i == j) continue;
            for (int k = 0; k < 60; ++k) {
                QuadElem x = random_elem(algs[i], rng).imaginary_part();
                QuadElem y = random_elem(algs[j], rng).imaginary_part();
                if (x.is_zero() || y.is_zero()) continue;
                Padic nx = x.norm(), ny = y.norm();
                if (nx.is_zero() || ny.is_zero()) continue;  // split zero-divisors
                Padic d = nx - ny;
                CHECK(d.val() == std::min(nx.val(), ny.val()));
            }
        }
    }
}

TEST_CASE("filtration volumes") {
    Context ctx(5, 8);
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    CHECK(E.filtration_volume(1) == Rat(1, 6));
    CHECK(E.filtration_volume(2) == Rat(1, 30));
    QuadAlgebra R = QuadAlgebra::ramified(ctx, false);
    CHECK(R.filtration_volume(2) == Rat(1, 25));
}

TEST_CASE("coset reps") {
    Context ctx(5, 8);
    for (const QuadAlgebra& A : {QuadAlgebra::inert(ctx), QuadAlgebra::ramified(ctx, false),
                                 QuadAlgebra::ramified(ctx, true), QuadAlgebra::split(ctx)}) {
        for (int M = 1; M <= 3; ++M) {
            auto reps = coset_reps(A, M);
            Rat total(0);
            for (const auto& r : reps) total = total + r.weight;
            CHECK(total == A.total_volume());
            for (const auto& r : reps) CHECK_FALSE(r.t.norm().is_zero());
        }
    }
    auto reps = coset_reps(QuadAlgebra::inert(ctx), 2);
    CHECK(reps.size() == 30);
    for (const auto& r : reps) CHECK(r.weight == Rat(1, 30));
    CHECK(coset_reps(QuadAlgebra::inert(ctx), 1).size() == 6);

    // distinctness at depth M: no two reps in the same F^x U_E(M) coset
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    auto reps1 = coset_reps(E, 2);
    for (size_t i = 0; i < reps1.size(); ++i)
        for (size_t j = i + 1; j < reps1.size(); ++j) {
            QuadElem q = reps1[i].t / reps1[j].t;
            QuadElem img = q.imaginary_part();
            if (img.is_zero()) continue;
            if (q.trace().is_zero()) continue;  // imaginary ratio: distinct
            bool same_coset = (img / E.from_base(q.trace())).vE() >= 2;
            CHECK_FALSE(same_coset);
        }
}

TEST_CASE("coset refinement") {
    Context ctx(5, 9);
    for (const QuadAlgebra& A : {QuadAlgebra::inert(ctx), QuadAlgebra::ramified(ctx, false)}) {
        auto coarse = coset_reps(A, 2);
        auto fine = coset_reps(A, 3);
        i64 q = ctx.q();
        CHECK((i64)fine.size() == q * (i64)coarse.size());
        // every fine class refines exactly one coarse class with weight/q
        for (const auto& f : fine) {
            int hits = 0;
            for (const auto& c : coarse) {
                QuadElem r = f.t / c.t;
                QuadElem img = r.imaginary_part();
                // the class's own modulus U_E(e m + e - 1) is encoded by its weight
                int m = 0;
                for (int k = 1; k <= 6 && m == 0; ++k)
                    if (c.weight == A.filtration_volume(k)) m = k;
                REQUIRE(m > 0);
                int depth = A.e() * m + A.e() - 1;
                bool same = img.is_zero() ||
                            (!r.trace().is_zero() &&
                             (img / A.from_base(r.trace())).vE() >= depth);
                if (same) {
                    ++hits;
                    CHECK(f.weight == c.weight / Rat(q));
                }
            }
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("norm one map") {
    Context ctx(5, 8);
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    CHECK(norm_one_map(E.from_base(Padic::of(ctx, 7))) == E.one());
    CHECK(norm_one_map(E.sqrtD()) == -E.one());
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        QuadElem t = random_elem(E, rng);
        QuadElem g = norm_one_map(t);
        CHECK(g.norm() == Padic::of(ctx, 1));
    }
}
