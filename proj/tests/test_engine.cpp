#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toric/engine.hpp"

using namespace toric;

TEST_CASE("conductor identities") {
    Context ctx(5, 18);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    QuadAlgebra R = QuadAlgebra::ramified(ctx, false);

    MultChar th2 = make_dprime_theta(L, 2, 0, Phase());
    CuspidalDatum d1 = build_datum(L, th2, +1);
    CHECK(conductor_pi(d1) == 4);
    MultChar thR = make_dprime_theta(R, 2, 0, Phase());
    CuspidalDatum d3 = build_datum(R, thR, +1);
    CHECK(conductor_pi(d3) == 3);

    // E = L inert, c(theta chi^-1) = c(theta chibar^-1) = 2: c_rs = 8, l = 4
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    MultChar chi = make_imaginary_char(E, 2, Padic::of(ctx, 1), 0, Phase());
    PeriodProblem pr = make_problem(d1, E, chi);
    CHECK(pr.c_tc == 2);
    CHECK(pr.c_tcbar == 2);
    auto rs = conductor_rs(pr);
    CHECK(rs.c_rs == 8);
    CHECK(rs.l == 4);
    CHECK(rs_conductor_case_formula(pr) == 8);

    // E not isomorphic to L: 2 max
    QuadAlgebra E2 = QuadAlgebra::ramified(ctx, false);
    MultChar chi2 = make_imaginary_char(E2, 2, Padic::of(ctx, 1), 0, Phase());
    PeriodProblem pr2 = make_problem(d1, E2, chi2);
    auto rs2 = conductor_rs(pr2);
    CHECK(rs2.c_rs == 2 * std::max(4, 3));
    CHECK(rs_conductor_case_formula(pr2) == rs2.c_rs);
}

TEST_CASE("conductor norm route vs case route exhaustively") {
    Context ctx(5, 20);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    QuadAlgebra LR = QuadAlgebra::ramified(ctx, false);
    std::vector<QuadAlgebra> Es;
    Es.push_back(QuadAlgebra::inert(ctx));
    Es.push_back(QuadAlgebra::ramified(ctx, false));
    Es.push_back(QuadAlgebra::ramified(ctx, true));
    Es.push_back(QuadAlgebra::split(ctx));
    int checked = 0;
    for (int ctheta = 2; ctheta <= 6; ++ctheta) {
        for (const QuadAlgebra* Lptr : {&L, &LR}) {
            if (Lptr->e() == 2 && ctheta % 2 != 0) continue;
            MultChar theta = make_dprime_theta(*Lptr, ctheta, 0, Phase());
            CuspidalDatum d = build_datum(*Lptr, theta, +1);
            for (const auto& E : Es) {
                for (int cchi = 0; cchi <= 6; ++cchi) {
                    if (E.kind() == QuadKind::ramified && cchi % 2 != 0) continue;
                    for (i64 s : {1, 2, 3}) {
                        MultChar chi;
                        if (E.kind() == QuadKind::split) {
                            chi = trivial_char(E);
                            if (cchi >= 2)
                                chi.alpha = E.elem(Padic::of(ctx, s).shift(-cchi),
                                                   Padic::of(ctx, -s).shift(-cchi));
                            else if (cchi == 1) {
                                chi.tame = 1;
                                chi.tame2 = ctx.p() - 2;
                            }
                        } else if (cchi >= 2) {
                            chi = make_imaginary_char(E, cchi, Padic::of(ctx, s), 0, Phase());
                        } else {
                            chi = trivial_char(E);
                            if (cchi == 1 && E.kind() == QuadKind::inert)
                                chi.tame = (i64)ctx.p() - 1;
                            if (cchi == 1 && E.kind() == QuadKind::ramified) continue;
                        }
                        PeriodProblem pr = make_problem(d, E, chi);
                        if (pr.whole_torus_gate) continue;
                        auto rs = conductor_rs(pr);
                        CHECK(rs.c_rs == rs_conductor_case_formula(pr));
                        // (*) regime bound: c_rs >= c(pi_chi) + 3
                        if (pr.isoEL) {
                            int cpc = E.kind() == QuadKind::inert ? 2 * cchi : cchi + 1;
                            CHECK(rs.c_rs >= cpc + 3);
                        }
                        ++checked;
                        if (cchi < 2) break;  // s plays no role below level 2
                    }
                }
            }
        }
    }
    CHECK(checked > 150);
}

TEST_CASE("epsilon table entries") {
    Context ctx(5, 18);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar th = make_dprime_theta(L, 2, 0, Phase());
    CuspidalDatum d = build_datum(L, th, +1);

    // L inert, E ramified: always -1
    for (bool tw : {false, true}) {
        QuadAlgebra E = QuadAlgebra::ramified(ctx, tw);
        MultChar chi = make_imaginary_char(E, 2, Padic::of(ctx, 1), 0, Phase());
        PeriodProblem pr = make_problem(d, E, chi);
        CHECK(tunnell_epsilon(pr) == -1);
        CHECK_FALSE(geometric_existence(pr, +1));
        CHECK(geometric_existence(pr, -1));
    }
    // both inert, both twisted conductors even: +1
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    MultChar chi = make_imaginary_char(E, 2, Padic::of(ctx, 1), 0, Phase());
    PeriodProblem pr = make_problem(d, E, chi);
    CHECK(pr.c_tc % 2 == 0);
    CHECK(pr.c_tcbar % 2 == 0);
    CHECK(tunnell_epsilon(pr) == 1);
    CHECK(geometric_existence(pr, +1));

    // L ramified, E inert: always -1
    QuadAlgebra R = QuadAlgebra::ramified(ctx, false);
    MultChar thR = make_dprime_theta(R, 2, 0, Phase());
    CuspidalDatum dR = build_datum(R, thR, +1);
    MultChar chiI = trivial_char(E);
    chiI.tame = ctx.p() - 1;  // level 1, trivial on F^x: c(pi_chi) = 2 <= 3
    PeriodProblem prRI = make_problem(dR, E, chiI);
    CHECK(tunnell_epsilon(prRI) == -1);

    // E split on the matrix side: always exists
    QuadAlgebra S = QuadAlgebra::split(ctx);
    MultChar chiS = trivial_char(S);
    PeriodProblem prS = make_problem(d, S, chiS);
    CHECK(tunnell_epsilon(prS) == 1);
    CHECK(geometric_existence(prS, +1));
    CHECK_FALSE(geometric_existence(prS, -1));
}

TEST_CASE("dichotomy and epsilon consistency sample") {
    Context ctx(5, 20);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    QuadAlgebra LR = QuadAlgebra::ramified(ctx, false);
    std::vector<QuadAlgebra> Es;
    Es.push_back(QuadAlgebra::inert(ctx));
    Es.push_back(QuadAlgebra::ramified(ctx, false));
    Es.push_back(QuadAlgebra::ramified(ctx, true));
    Es.push_back(QuadAlgebra::split(ctx));
    int count = 0;
    for (int ctheta = 2; ctheta <= 4; ++ctheta) {
        for (const QuadAlgebra* Lp : {&L, &LR}) {
            if (Lp->e() == 2 && ctheta % 2 != 0) continue;
            for (i64 sth : {1, 2}) {
                MultChar theta = make_imaginary_char(*Lp, ctheta, Padic::of(ctx, sth), 0, Phase());
                CuspidalDatum d = build_datum(*Lp, theta, +1);
                for (const auto& E : Es) {
                    for (int cchi = 0; cchi <= ctheta; ++cchi) {
                        if (E.kind() == QuadKind::ramified && cchi % 2 != 0) continue;
                        if (E.kind() == QuadKind::split && cchi != 0) continue;
                        for (i64 s : {1, 2, 3, 4}) {
                            MultChar chi;
                            if (E.kind() == QuadKind::split)
                                chi = trivial_char(E);
                            else if (cchi >= 2)
                                chi = make_imaginary_char(E, cchi, Padic::of(ctx, s), 0, Phase());
                            else {
                                chi = trivial_char(E);
                                if (cchi == 1 && E.kind() == QuadKind::inert) chi.tame = ctx.p() - 1;
                            }
                            PeriodProblem pr = make_problem(d, E, chi);
                            if (pr.whole_torus_gate) continue;
                            int cpc = 0;
                            if (E.kind() == QuadKind::inert) cpc = 2 * cchi;
                            if (E.kind() == QuadKind::ramified) cpc = cchi + 1;
                            if (d.c_pi < cpc) continue;
                            bool m = geometric_existence(pr, +1);
                            bool dv = geometric_existence(pr, -1);
                            CHECK(m != dv);  // exactly one side
                            CHECK((tunnell_epsilon(pr) == 1) == m);
                            ++count;
                            if (cchi < 2) break;
                        }
                    }
                }
            }
        }
    }
    CHECK(count >= 100);
}

TEST_CASE("reference integral: case 1, q=5, l=4") {
    Context ctx(5, 16);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar theta = make_dprime_theta(L, 2, 0, Phase());
    CuspidalDatum d = build_datum(L, theta, +1);
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    MultChar chi = make_imaginary_char(E, 2, Padic::of(ctx, 1), 0, Phase());
    PeriodProblem pr = make_problem(d, E, chi);
    auto rs = conductor_rs(pr);
    REQUIRE(rs.l == 4);

    Prediction pred = predicted_integral(pr);
    CHECK(pred.main == Rat(1, 6));
    CHECK_FALSE(pred.alt.has_value());

    IntegralReport rep = brute_force_integral(pr, 6);
    CHECK(rep.all_phases_zero);
    CHECK(rep.support_measure == Rat(1, 6));
    CHECK(rep.match);
    CHECK(std::abs(rep.brute - std::complex<double>(1.0 / 6.0)) < 1e-9);

    // the division side carries nothing
    CuspidalDatum dd = build_datum(L, theta, -1);
    PeriodProblem prd = make_problem(dd, E, chi);
    IntegralReport repd = brute_force_integral(prd, 6);
    CHECK_FALSE(repd.existence);
    CHECK(std::abs(repd.brute) < 1e-9);
    CHECK(repd.match);
}

TEST_CASE("whole torus case") {
    Context ctx(5, 16);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar theta = make_dprime_theta(L, 2, 0, Phase());
    CuspidalDatum d = build_datum(L, theta, +1);
    QuadAlgebra E = QuadAlgebra::inert(ctx);

    // chi = theta: I = Vol(F^x \ E^x) = 1
    MultChar chi = theta;
    chi.K = &E;
    PeriodProblem pr = make_problem(d, E, chi);
    REQUIRE(pr.whole_torus_gate);
    auto rep = whole_torus_case(pr, 5);
    REQUIRE(rep.has_value());
    CHECK(rep->predicted == Rat(1));
    CHECK(rep->all_phases_zero);
    CHECK(rep->match);
    CHECK(std::abs(rep->brute - std::complex<double>(1.0)) < 1e-9);

    // chi = conj(theta) via the other orientation
    MultChar chib = char_conj(theta);
    chib.K = &E;
    PeriodProblem prb = make_problem(d, E, chib);
    REQUIRE(prb.whole_torus_gate);
    auto repb = whole_torus_case(prb, 5);
    REQUIRE(repb.has_value());
    CHECK(repb->predicted == Rat(1));
    CHECK(repb->match);

    // whole-torus gate with a mismatched tame part: the integral vanishes
    MultChar chim = theta;
    chim.K = &E;
    chim.tame = theta.tame + (ctx.p() - 1);  // level-1 twist, trivial on F^x
    PeriodProblem prm = make_problem(d, E, chim);
    REQUIRE(prm.whole_torus_gate);  // c(theta chi^-1) = 1
    auto repm = whole_torus_case(prm, 5);
    REQUIRE(repm.has_value());
    CHECK(repm->predicted == Rat(0));  // dim Lambda = 1: only theta itself matches
    CHECK(std::abs(repm->brute) < 1e-9);
    CHECK(repm->match);

    // a level-2 change of wild part leaves the gate: routed to the Lie range
    MultChar chi2 = make_imaginary_char(E, 2, Padic::of(ctx, 4), 0, Phase());
    PeriodProblem pr2 = make_problem(d, E, chi2);
    CHECK_FALSE(pr2.whole_torus_gate);
    CHECK_FALSE(whole_torus_case(pr2, 5).has_value());
}

TEST_CASE("division side integral: case 5") {
    // L inert, c(theta) = 3 (c_pi = 6), E ramified: epsilon = -1, the division
    // side carries the period; l = 6 and the case-5 prediction is 1/q
    Context ctx(5, 16);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar theta = make_dprime_theta(L, 3, 0, Phase());
    CuspidalDatum d = build_datum(L, theta, -1);
    REQUIRE(d.case_idx == 5);
    QuadAlgebra E = QuadAlgebra::ramified(ctx, false);
    MultChar chi = make_imaginary_char(E, 2, Padic::of(ctx, 1), 0, Phase());
    PeriodProblem pr = make_problem(d, E, chi);
    auto rs = conductor_rs(pr);
    CHECK(rs.l == 6);
    REQUIRE(geometric_existence(pr, -1));
    Prediction pred = predicted_integral(pr);
    CHECK(pred.main == Rat(1, 5));
    IntegralReport rep = brute_force_integral(pr, 7);
    CHECK(rep.all_phases_zero);
    CHECK(rep.match);
    CHECK(rep.support_measure == Rat(1, 5));
}

TEST_CASE("appendix search: case 1 reference") {
    Context ctx(5, 16);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar theta = make_dprime_theta(L, 2, 0, Phase());
    CuspidalDatum d = build_datum(L, theta, +1);
    QuadAlgebra E = QuadAlgebra::inert(ctx);
    MultChar chi = make_imaginary_char(E, 2, Padic::of(ctx, 1), 0, Phase());
    PeriodProblem pr = make_problem(d, E, chi);
    AppendixReport rep = appendix_test_vector_search(pr);
    CHECK(rep.epsilon == 1);
    CHECK(rep.solutions_exist);
    CHECK(rep.discriminant_square);
    REQUIRE(!rep.solutions.empty());
    for (const auto& sol : rep.solutions) {
        CHECK(sol.phases_zero);
        CHECK(sol.value == Rat(1, 6));
    }

    // distinct-ramified with epsilon = +1 on the GL2 side has solutions,
    // epsilon = -1 has none
    QuadAlgebra R0 = QuadAlgebra::ramified(ctx, false);
    QuadAlgebra R1 = QuadAlgebra::ramified(ctx, true);
    MultChar thR = make_dprime_theta(R0, 2, 0, Phase());
    CuspidalDatum dR = build_datum(R0, thR, +1);
    for (i64 s : {1, 2, 3, 4}) {
        MultChar chiR = make_imaginary_char(R1, 2, Padic::of(ctx, s), 0, Phase());
        PeriodProblem prR = make_problem(dR, R1, chiR);
        AppendixReport repR = appendix_test_vector_search(prR);
        CHECK(repR.solutions_exist == (repR.epsilon == 1));
        CHECK(repR.discriminant_square == (repR.epsilon == 1));
        for (const auto& sol : repR.solutions) CHECK(sol.phases_zero);
    }
}

TEST_CASE("whittaker spot check") {
    Context ctx(5, 16);
    QuadAlgebra L = QuadAlgebra::inert(ctx);
    MultChar theta = make_dprime_theta(L, 2, 0, Phase());
    CuspidalDatum d = build_datum(L, theta, +1);
    WhittakerReport rep = whittaker_check(d);
    CHECK(rep.support_matches);
    CHECK(rep.constant_modulus);
    CHECK(rep.off_support_max < 1e-9);
    CHECK(rep.modulus > 0.1);
    for (const auto& cell : rep.support) {
        CHECK(cell.va == -2);
        CHECK((cell.unit_class - 1) % 5 == 0);
    }
}
