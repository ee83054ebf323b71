#include "toric/config.hpp"

#include <fstream>
#include <sstream>

namespace toric {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::string RunConfig::get(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
}

i64 RunConfig::get_int(const std::string& key, i64 dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
        return std::stoll(it->second);
    } catch (...) {
        fail(errc::config_error, "integer expected for " + key);
    }
}

Phase RunConfig::get_phase(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) return Phase();
    const std::string& v = it->second;
    size_t slash = v.find('/');
    try {
        if (slash == std::string::npos) return Phase::of(std::stoll(v), 1);
        return Phase::of(std::stoll(v.substr(0, slash)), std::stoll(v.substr(slash + 1)));
    } catch (const std::exception&) {
        fail(errc::config_error, "phase num/den expected for " + key);
    }
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            require(line.back() == ']', errc::config_error,
                    "bad section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        require(eq != std::string::npos, errc::config_error,
                "expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        require(!key.empty() && !section.empty(), errc::config_error,
                "key outside a section at line " + std::to_string(lineno));
        cfg.kv[section + "." + key] = val;
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::config_error, "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::shared_ptr<QuadAlgebra> make_algebra(const Context& ctx, const std::string& kind) {
    if (kind == "inert") return std::make_shared<QuadAlgebra>(QuadAlgebra::inert(ctx));
    if (kind == "ramified") return std::make_shared<QuadAlgebra>(QuadAlgebra::ramified(ctx, false));
    if (kind == "ramified2") return std::make_shared<QuadAlgebra>(QuadAlgebra::ramified(ctx, true));
    if (kind == "split") return std::make_shared<QuadAlgebra>(QuadAlgebra::split(ctx));
    fail(errc::config_error, "unknown algebra kind '" + kind + "'");
}

namespace {

MultChar build_char(const RunConfig& cfg, const std::string& sec, const QuadAlgebra& K) {
    const Context& ctx = K.ctx();
    int c = (int)cfg.get_int(sec + ".c", 0);
    i64 tame = cfg.get_int(sec + ".tame", 0);
    Phase unif = cfg.get_phase(sec + ".unif");
    if (K.kind() == QuadKind::split) {
        MultChar chi = trivial_char(K);
        chi.tame = tame;
        chi.tame2 = cfg.get_int(sec + ".tame2", 0);
        chi.unif = unif;
        chi.unif2 = cfg.get_phase(sec + ".unif2");
        int c1 = (int)cfg.get_int(sec + ".c1", c);
        int c2 = (int)cfg.get_int(sec + ".c2", c);
        i64 s1 = cfg.get_int(sec + ".s1", 1);
        i64 s2 = cfg.get_int(sec + ".s2", -1);
        if (c1 >= 2 || c2 >= 2)
            chi.alpha = K.elem(Padic::of(ctx, s1).shift(-c1), Padic::of(ctx, s2).shift(-c2));
        return chi;
    }
    if (c >= 2) {
        if (cfg.get(sec + ".dprime", "false") == "true") {
            require(cfg.get_int(sec + ".s", 1) == 1, errc::config_error,
                    "the D'-presentation fixes the unit s");
            return make_dprime_theta(K, c, tame, unif);
        }
        i64 s = cfg.get_int(sec + ".s", 1);
        require(s % ctx.p() != 0, errc::config_error, sec + ".s must be a unit");
        return make_imaginary_char(K, c, Padic::of(ctx, s), tame, unif);
    }
    MultChar chi = trivial_char(K);
    chi.tame = tame;
    chi.unif = unif;
    return chi;
}

}  // namespace

Instance build_instance(const RunConfig& cfg) {
    Instance inst;
    i64 p = cfg.get_int("context.p", 5);
    i64 N = cfg.get_int("context.precision", 0);
    if (N == 0) {
        // generous default: covers c(pi) + c(chi) + slack for the configured data
        i64 ct = cfg.get_int("theta.c", 2), cc = cfg.get_int("chi.c", 0);
        N = 2 * ct + cc + 10;
    }
    try {
        inst.ctx = std::make_shared<Context>(p, (int)N);
    } catch (const error& e) {
        fail(errc::config_error, std::string("bad context: ") + e.what());
    }
    inst.L = make_algebra(*inst.ctx, cfg.get("L.kind", "inert"));
    require(inst.L->is_field(), errc::config_error, "L must be a field extension");
    inst.E = make_algebra(*inst.ctx, cfg.get("E.kind", "inert"));
    inst.theta = build_char(cfg, "theta", *inst.L);
    require(conductor_of(inst.theta) >= 2, errc::config_error, "theta needs conductor >= 2");
    inst.chi = build_char(cfg, "chi", *inst.E);
    std::string side = cfg.get("run.side", "matrix");
    if (side == "matrix")
        inst.side = +1;
    else if (side == "division")
        inst.side = -1;
    else
        fail(errc::config_error, "run.side must be matrix or division");
    inst.depth = (int)cfg.get_int("run.depth", 0);
    std::string pol = cfg.get("run.polarization", "default");
    if (pol == "appendix")
        inst.pol = PolarizationKind::appendix;
    else
        require(pol == "default", errc::config_error, "run.polarization: default or appendix");
    return inst;
}

}  // namespace toric
