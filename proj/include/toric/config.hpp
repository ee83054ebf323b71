#pragma once

#include <map>
#include <memory>
#include <string>

#include "toric/engine.hpp"

namespace toric {

// Flat sectioned key-value config: [context], [L], [theta], [E], [chi], [run].
struct RunConfig {
    std::map<std::string, std::string> kv;  // "section.key" -> value

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get(const std::string& key, const std::string& dflt = "") const;
    i64 get_int(const std::string& key, i64 dflt) const;
    Phase get_phase(const std::string& key) const;  // "num/den"
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// A fully built problem instance; the shared_ptr members keep every
// referenced algebra alive.
struct Instance {
    std::shared_ptr<Context> ctx;
    std::shared_ptr<QuadAlgebra> L;
    std::shared_ptr<QuadAlgebra> E;
    MultChar theta;
    MultChar chi;
    int side = +1;
    int depth = 0;  // 0: choose the minimal admissible depth
    PolarizationKind pol = PolarizationKind::canonical_j;

    CuspidalDatum datum() const { return build_datum(*L, theta, side, pol); }
    PeriodProblem problem() const { return make_problem(datum(), *E, chi); }
    int default_depth() const {
        return depth > 0 ? depth : conductor_of(theta) + conductor_of(chi) + 2;
    }
};

Instance build_instance(const RunConfig& cfg);

std::shared_ptr<QuadAlgebra> make_algebra(const Context& ctx, const std::string& kind);

}  // namespace toric
