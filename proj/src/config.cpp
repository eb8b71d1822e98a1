#include "lvbif/config.hpp"

#include "lvbif/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <regex>

namespace lvbif {

namespace {

CoefficientPoly field_or_zero(const json& j, const char* name, int degree) {
    return j.contains(name) ? poly_from_json(j.at(name), degree) : CoefficientPoly(degree);
}

} // namespace

CoefficientPoly poly_from_json(const json& j, int degree) {
    if (!j.is_object()) throw ConfigError("coefficient must be an object of \"(i,j)\" keys");
    static const std::regex key(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
    CoefficientPoly p(degree);
    for (const auto& [k, v] : j.items()) {
        std::smatch m;
        if (!std::regex_match(k, m, key)) throw ConfigError("bad exponent key '" + k + "'");
        if (!v.is_number()) throw ConfigError("coefficient " + k + " is not a number");
        p.set(std::stoi(m[1]), std::stoi(m[2]), v.get<double>());
    }
    return p;
}

json poly_to_json(const CoefficientPoly& p) {
    json out = json::object();
    for (int t = 0; t <= p.degree(); ++t)
        for (int j = 0; j <= t; ++j) {
            const int i = t - j;
            const double c = p.coeff(i, j);
            if (c != 0.0) out["(" + std::to_string(i) + "," + std::to_string(j) + ")"] = c;
        }
    return out;
}

ReducedSystem system_from_json(const json& j) {
    try {
        if (!j.is_object()) throw ConfigError("system config must be an object");
        const std::string form = j.value("form", std::string("reduced"));
        const int degree = j.value("degree", 2);
        if (degree < 0 || degree > 16) throw ConfigError("degree must lie in [0, 16]");
        if (form == "raw") {
            std::array<CoefficientPoly, 5> first, second;
            for (int k = 0; k < 5; ++k) {
                first[k] = field_or_zero(j, ("p1" + std::to_string(k + 1)).c_str(), degree);
                second[k] = field_or_zero(j, ("p2" + std::to_string(k + 1)).c_str(), degree);
            }
            RawSystem raw(first, second);
            if (raw.p(1, 2).at_origin() < 0.0 && raw.p(2, 1).at_origin() < 0.0) return reduce_negative(raw, degree);
            return reduce(raw, degree);
        }
        if (form != "reduced") throw ConfigError("form must be \"raw\" or \"reduced\"");
        std::array<CoefficientPoly, 9> f;
        const auto& names = ReducedSystem::field_names();
        for (std::size_t k = 0; k < names.size(); ++k) f[k] = field_or_zero(j, names[k], degree);
        return ReducedSystem::make(f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7], f[8]);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

json system_to_json(const ReducedSystem& sys) {
    json out;
    out["form"] = "reduced";
    out["degree"] = sys.theta.degree();
    for (const char* name : ReducedSystem::field_names()) out[name] = poly_to_json(sys.field_by_name(name));
    return out;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

ReducedSystem load_system(const std::filesystem::path& path) { return system_from_json(read_json(path)); }

Degeneracy parse_family(const std::string& s) {
    for (Degeneracy d : {Degeneracy::NonDegenerate, Degeneracy::DeltaZero, Degeneracy::ThetaZero,
                         Degeneracy::DoublyDegenerate})
        if (to_string(d) == s) return d;
    throw ConfigError("unknown family '" + s + "'");
}

Fixture fixture_from_json(const json& j) {
    Fixture f;
    f.sys = system_from_json(j);
    f.name = j.value("name", std::string());
    if (j.contains("declared")) {
        f.declared_family = j.at("declared").value("family", std::string());
        f.declared_signs = j.at("declared").value("signs", std::string());
    }
    return f;
}

std::vector<Fixture> load_fixtures(const std::filesystem::path& dir, Degeneracy family) {
    const auto sub = dir / to_string(family);
    if (!std::filesystem::is_directory(sub)) throw ConfigError("no fixture directory " + sub.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(sub))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Fixture> out;
    for (const auto& p : files) {
        Fixture f = fixture_from_json(read_json(p));
        if (f.name.empty()) f.name = p.stem().string();
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace lvbif
