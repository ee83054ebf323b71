#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toric/config.hpp"

using namespace toric;

TEST_CASE("config parsing") {
    RunConfig cfg = parse_config_text(R"(
# comment
[context]
p = 5
precision = 16

[L]
kind = inert

[theta]
c = 2
dprime = true
unif = 1/2

[E]
kind = ramified

[chi]
c = 2
s = 3

[run]
side = division
depth = 7
)");
    CHECK(cfg.get("L.kind") == "inert");
    CHECK(cfg.get_int("context.p", 0) == 5);
    CHECK(cfg.get_phase("theta.unif") == Phase::of(1, 2));
    Instance inst = build_instance(cfg);
    CHECK(inst.ctx->p() == 5);
    CHECK(inst.side == -1);
    CHECK(inst.depth == 7);
    CHECK(conductor_of(inst.theta) == 2);
    CHECK(conductor_of(inst.chi) == 2);
    CHECK(inst.E->kind() == QuadKind::ramified);
    CuspidalDatum d = inst.datum();
    CHECK(d.case_idx == 4);

    CHECK_THROWS_AS(parse_config_text("[context\np=5\n"), error);
    CHECK_THROWS_AS(parse_config_text("p = 5\n"), error);
    RunConfig bad = parse_config_text("[context]\np = 4\n");
    CHECK_THROWS_AS(build_instance(bad), error);
    RunConfig badside = parse_config_text("[theta]\nc = 2\n[run]\nside = other\n");
    CHECK_THROWS_AS(build_instance(badside), error);
}

TEST_CASE("instance reproducibility") {
    RunConfig cfg = parse_config_text(R"(
[context]
p = 5
[L]
kind = inert
[theta]
c = 2
dprime = true
[E]
kind = inert
[chi]
c = 2
s = 1
[run]
side = matrix
)");
    Instance a = build_instance(cfg);
    Instance b = build_instance(cfg);
    PeriodProblem pa = a.problem(), pb = b.problem();
    IntegralReport ra = brute_force_integral(pa, a.default_depth());
    IntegralReport rb = brute_force_integral(pb, b.default_depth());
    CHECK(ra.support_measure == rb.support_measure);
    CHECK(ra.brute == rb.brute);  // bitwise determinism of the fixed-order sum
    CHECK(ra.all_phases_zero == rb.all_phases_zero);
}
