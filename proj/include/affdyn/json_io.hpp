#pragma once

#include <affdyn/gp_expr.hpp>
#include <affdyn/nil_affine.hpp>
#include <affdyn/nilgroup.hpp>
#include <affdyn/return_times.hpp>
#include <affdyn/torus.hpp>
#include <affdyn/tower.hpp>
#include <affdyn/unipoly.hpp>

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace affdyn {

using json = nlohmann::json;

/// Thrown on malformed input; the message carries the JSON path of the
/// offending field.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what) {}
};

// ---- rationals ----------------------------------------------------------

inline Rat rat_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rat(Int(j.get<std::int64_t>()));
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where, e.what());
    }
    throw ParseError(where, "expected an integer or a \"p/q\" string");
}

inline json rat_to_json(const Rat& q) {
    if (is_integer(q)) {
        Int n = rat_num(q);
        if (n >= std::numeric_limits<std::int64_t>::min() &&
            n <= std::numeric_limits<std::int64_t>::max())
            return json(static_cast<std::int64_t>(n));
        return json(n.str());
    }
    return json(format_rational(q));
}

// ---- matrices and polynomials -------------------------------------------

inline IntMatrix int_matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where, "expected a nonempty array of rows");
    std::size_t rows = j.size();
    std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ParseError(where, "expected array-of-array rows");
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError(where + "[" + std::to_string(r) + "]", "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) {
            Rat q = rat_from_json(j[r][c], where + "[" + std::to_string(r) + "][" +
                                               std::to_string(c) + "]");
            if (!is_integer(q))
                throw ParseError(where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                                 "expected an integer entry");
            m(r, c) = rat_num(q);
        }
    }
    return m;
}

inline json int_matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_to_json(Rat(m(r, c))));
        rows.push_back(row);
    }
    return rows;
}

inline json rat_matrix_to_json(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline RatMatrix rat_matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where, "expected a nonempty array of rows");
    std::size_t rows = j.size();
    std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ParseError(where, "expected array-of-array rows");
    RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rat_from_json(j[r][c], where + "[" + std::to_string(r) + "][" +
                                                 std::to_string(c) + "]");
    return m;
}

/// Coefficient array, constant term first.
inline json unipoly_to_json(const UniPoly& p) {
    json out = json::array();
    if (p.is_zero()) {
        out.push_back(rat_to_json(Rat(0)));
        return out;
    }
    for (const Rat& c : p.coeffs()) out.push_back(rat_to_json(c));
    return out;
}

inline std::vector<Rat> rat_vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array");
    std::vector<Rat> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline json rat_vector_to_json(const std::vector<Rat>& v) {
    json out = json::array();
    for (const Rat& q : v) out.push_back(rat_to_json(q));
    return out;
}

// ---- unipotent matrices ---------------------------------------------------

inline std::pair<std::size_t, std::size_t> parse_entry_key(const std::string& key,
                                                           const std::string& where) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw ParseError(where, "entry key must look like \"i,j\"");
    try {
        std::size_t i = std::stoul(key.substr(0, comma));
        std::size_t j = std::stoul(key.substr(comma + 1));
        return {i, j};
    } catch (const std::exception&) {
        throw ParseError(where, "entry key must look like \"i,j\"");
    }
}

inline UnipotentMatrix unipotent_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("k"))
        throw ParseError(where, "expected an object with \"k\" and \"entries\"");
    std::size_t k = j.at("k").get<std::size_t>();
    UnipotentMatrix g(k);
    if (j.contains("entries")) {
        const json& entries = j.at("entries");
        if (!entries.is_object()) throw ParseError(where + ".entries", "expected an object");
        for (auto it = entries.begin(); it != entries.end(); ++it) {
            auto [lvl, pos] = parse_entry_key(it.key(), where + ".entries");
            if (lvl < 1 || lvl > k || pos < 1 || pos > k + 1 - lvl)
                throw ParseError(where + ".entries." + it.key(), "index out of range");
            g.set_entry(lvl, pos, rat_from_json(it.value(), where + ".entries." + it.key()));
        }
    }
    return g;
}

inline json unipotent_to_json(const UnipotentMatrix& g) {
    json entries = json::object();
    for (std::size_t i = 1; i <= g.k(); ++i)
        for (std::size_t j = 1; j <= g.k() + 1 - i; ++j)
            entries[std::to_string(i) + "," + std::to_string(j)] = rat_to_json(g.entry(i, j));
    return json{{"k", g.k()}, {"entries", entries}};
}

// ---- coordinate maps -------------------------------------------------------

inline MultiPoly multipoly_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected a monomial list");
    MultiPoly p;
    for (std::size_t t = 0; t < j.size(); ++t) {
        const json& mono = j[t];
        std::string mwhere = where + "[" + std::to_string(t) + "]";
        if (!mono.is_object() || !mono.contains("coeff"))
            throw ParseError(mwhere, "monomial needs a \"coeff\"");
        MultiPoly term(rat_from_json(mono.at("coeff"), mwhere + ".coeff"));
        if (mono.contains("vars")) {
            for (auto it = mono.at("vars").begin(); it != mono.at("vars").end(); ++it) {
                auto [lvl, pos] = parse_entry_key(it.key(), mwhere + ".vars");
                std::uint32_t exp = it.value().get<std::uint32_t>();
                MultiPoly v = MultiPoly::variable(
                    Var{0, static_cast<std::uint8_t>(lvl), static_cast<std::uint8_t>(pos)});
                for (std::uint32_t e = 0; e < exp; ++e) term = term * v;
            }
        }
        p += term;
    }
    return p;
}

inline json multipoly_to_json(const MultiPoly& p) {
    json out = json::array();
    for (const auto& [mono, coeff] : p.terms()) {
        json vars = json::object();
        for (const auto& [key, exp] : mono) {
            Var v = Var::from_key(key);
            vars[std::to_string(v.level) + "," + std::to_string(v.pos)] = exp;
        }
        json term{{"coeff", rat_to_json(coeff)}};
        if (!vars.empty()) term["vars"] = vars;
        out.push_back(term);
    }
    return out;
}

inline CoordinateMap coordinate_map_from_json(const json& j, std::size_t k,
                                              const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError(where, "expected {\"kind\": ...}");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return CoordinateMap::identity(k);
    if (kind == "inner") {
        RatMatrix u;
        if (j.contains("u"))
            u = unipotent_from_json(j.at("u"), where + ".u").to_full();
        else if (j.contains("matrix"))
            u = rat_matrix_from_json(j.at("matrix"), where + ".matrix");
        else
            throw ParseError(where, "inner automorphism needs \"u\" or \"matrix\"");
        try {
            return inner_automorphism(u, k);
        } catch (const std::exception& e) {
            throw ParseError(where, e.what());
        }
    }
    if (kind == "map") {
        if (!j.contains("phi")) throw ParseError(where, "map kind needs \"phi\"");
        CoordinateMap m = CoordinateMap::identity(k);
        const json& phi = j.at("phi");
        for (std::size_t i = 1; i <= k; ++i)
            for (std::size_t pos = 1; pos <= k + 1 - i; ++pos) {
                std::string key = std::to_string(i) + "," + std::to_string(pos);
                if (!phi.contains(key))
                    throw ParseError(where + ".phi", "missing coordinate \"" + key + "\"");
                m.phi[i - 1][pos - 1] = multipoly_from_json(phi.at(key), where + ".phi." + key);
            }
        return m;
    }
    if (kind == "compose") {
        if (!j.contains("of") || !j.at("of").is_array() || j.at("of").empty())
            throw ParseError(where, "compose kind needs a nonempty \"of\" array");
        CoordinateMap m = CoordinateMap::identity(k);
        for (std::size_t t = 0; t < j.at("of").size(); ++t)
            m = m.compose(coordinate_map_from_json(j.at("of")[t], k,
                                                   where + ".of[" + std::to_string(t) + "]"));
        return m;
    }
    throw ParseError(where + ".kind", "unknown automorphism kind \"" + kind + "\"");
}

inline json coordinate_map_to_json(const CoordinateMap& m) {
    json phi = json::object();
    for (std::size_t i = 1; i <= m.k; ++i)
        for (std::size_t j = 1; j <= m.k + 1 - i; ++j)
            phi[std::to_string(i) + "," + std::to_string(j)] = multipoly_to_json(m.at(i, j));
    return json{{"kind", "map"}, {"phi", phi}};
}

// ---- generalized polynomial expressions -----------------------------------

inline json gp_expr_to_json(const GPExpr& e) {
    switch (e.kind()) {
        case GPExpr::Kind::Constant: return json{{"const", rat_to_json(e.value())}};
        case GPExpr::Kind::VarN: return json("n");
        case GPExpr::Kind::Add: {
            // flatten nested sums for readability
            json list = json::array();
            auto emit = [&](auto&& self, const GPExpr& x) -> void {
                if (x.kind() == GPExpr::Kind::Add) {
                    self(self, x.children()[0]);
                    self(self, x.children()[1]);
                } else {
                    list.push_back(gp_expr_to_json(x));
                }
            };
            emit(emit, e);
            return json{{"add", list}};
        }
        case GPExpr::Kind::Mul: {
            json list = json::array();
            auto emit = [&](auto&& self, const GPExpr& x) -> void {
                if (x.kind() == GPExpr::Kind::Mul) {
                    self(self, x.children()[0]);
                    self(self, x.children()[1]);
                } else {
                    list.push_back(gp_expr_to_json(x));
                }
            };
            emit(emit, e);
            return json{{"mul", list}};
        }
        case GPExpr::Kind::Floor: return json{{"floor", gp_expr_to_json(e.children()[0])}};
        case GPExpr::Kind::Frac: return json{{"frac", gp_expr_to_json(e.children()[0])}};
    }
    throw std::logic_error("unreachable expression kind");
}

inline GPExpr gp_expr_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "n") return GPExpr::var_n();
        return GPExpr::constant(rat_from_json(j, where));
    }
    if (j.is_number_integer()) return GPExpr::constant(rat_from_json(j, where));
    if (!j.is_object() || j.size() != 1) throw ParseError(where, "expected one-key expression node");
    const auto it = j.begin();
    const std::string& key = it.key();
    if (key == "const") return GPExpr::constant(rat_from_json(it.value(), where + ".const"));
    if (key == "add" || key == "mul") {
        if (!it.value().is_array() || it.value().empty())
            throw ParseError(where, "\"" + key + "\" needs a nonempty array");
        GPExpr acc = gp_expr_from_json(it.value()[0], where + "." + key + "[0]");
        for (std::size_t t = 1; t < it.value().size(); ++t) {
            GPExpr next = gp_expr_from_json(it.value()[t],
                                            where + "." + key + "[" + std::to_string(t) + "]");
            acc = (key == "add") ? acc + next : acc * next;
        }
        return acc;
    }
    if (key == "floor") return GPExpr::floor_of(gp_expr_from_json(it.value(), where + ".floor"));
    if (key == "frac") return GPExpr::frac_of(gp_expr_from_json(it.value(), where + ".frac"));
    throw ParseError(where, "unknown expression node \"" + key + "\"");
}

// ---- systems ---------------------------------------------------------------

inline TorusAffineMap torus_from_json(const json& j, const std::string& where) {
    if (!j.contains("A")) throw ParseError(where, "torus system needs \"A\"");
    if (!j.contains("alpha")) throw ParseError(where, "torus system needs \"alpha\"");
    IntMatrix a = int_matrix_from_json(j.at("A"), where + ".A");
    std::vector<Rat> alpha = rat_vector_from_json(j.at("alpha"), where + ".alpha");
    try {
        return TorusAffineMap(std::move(a), std::move(alpha));
    } catch (const std::exception& e) {
        throw ParseError(where, e.what());
    }
}

inline NilAffineMap nil_from_json(const json& j, const std::string& where) {
    if (!j.contains("k")) throw ParseError(where, "nil system needs \"k\"");
    std::size_t k = j.at("k").get<std::size_t>();
    UnipotentMatrix g0 = j.contains("g0") ? unipotent_from_json(j.at("g0"), where + ".g0")
                                          : UnipotentMatrix::identity(k);
    if (g0.k() != k) throw ParseError(where + ".g0", "step mismatch with \"k\"");
    CoordinateMap phi = j.contains("phi")
                            ? coordinate_map_from_json(j.at("phi"), k, where + ".phi")
                            : CoordinateMap::identity(k);
    try {
        return NilAffineMap(std::move(g0), std::move(phi));
    } catch (const std::exception& e) {
        throw ParseError(where, e.what());
    }
}

inline json torus_to_json(const TorusAffineMap& m) {
    return json{{"type", "torus"}, {"A", int_matrix_to_json(m.A())},
                {"alpha", rat_vector_to_json(m.alpha())}};
}

inline json nil_to_json(const NilAffineMap& m) {
    return json{{"type", "nil"},
                {"k", m.k()},
                {"g0", unipotent_to_json(m.g0())},
                {"phi", coordinate_map_to_json(m.phi())}};
}

inline FactorMap factor_map_from_json(const json& j, const std::string& where) {
    FactorMap f;
    if (j.contains("matrix")) {
        f.kind = FactorMap::Kind::Matrix;
        f.matrix = int_matrix_from_json(j.at("matrix"), where + ".matrix");
        return f;
    }
    if (!j.contains("kind")) throw ParseError(where, "factor map needs \"matrix\" or \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "project") {
        f.kind = FactorMap::Kind::Project;
        if (!j.contains("coords")) throw ParseError(where, "projection needs \"coords\"");
        for (const auto& c : j.at("coords")) f.coords.push_back(c.get<std::size_t>());
        return f;
    }
    if (kind == "corner") {
        f.kind = FactorMap::Kind::Corner;
        if (!j.contains("k")) throw ParseError(where, "corner needs \"k\"");
        f.corner_k = j.at("k").get<std::size_t>();
        return f;
    }
    throw ParseError(where + ".kind", "unknown factor map kind \"" + kind + "\"");
}

inline json factor_map_to_json(const FactorMap& f) {
    switch (f.kind) {
        case FactorMap::Kind::Matrix: return json{{"matrix", int_matrix_to_json(f.matrix)}};
        case FactorMap::Kind::Project: {
            json coords = json::array();
            for (std::size_t c : f.coords) coords.push_back(c);
            return json{{"kind", "project"}, {"coords", coords}};
        }
        case FactorMap::Kind::Corner: return json{{"kind", "corner"}, {"k", f.corner_k}};
    }
    throw std::logic_error("unreachable factor map kind");
}

struct SystemDescriptor {
    std::variant<TorusAffineMap, NilAffineMap, Tower> system;
};

inline SystemDescriptor system_from_json(const json& j, const std::string& where = "system") {
    if (!j.is_object() || !j.contains("type"))
        throw ParseError(where, "expected an object with a \"type\" field");
    std::string type = j.at("type").get<std::string>();
    if (type == "torus") return SystemDescriptor{torus_from_json(j, where)};
    if (type == "nil") return SystemDescriptor{nil_from_json(j, where)};
    if (type == "tower") {
        if (!j.contains("levels") || !j.at("levels").is_array() || j.at("levels").empty())
            throw ParseError(where + ".levels", "tower needs a nonempty \"levels\" array");
        Tower t;
        for (std::size_t i = 0; i < j.at("levels").size(); ++i) {
            const json& lv = j.at("levels")[i];
            std::string lwhere = where + ".levels[" + std::to_string(i) + "]";
            if (!lv.contains("type")) throw ParseError(lwhere, "level needs \"type\"");
            std::string lt = lv.at("type").get<std::string>();
            if (lt == "torus")
                t.levels.emplace_back(torus_from_json(lv, lwhere));
            else if (lt == "nil")
                t.levels.emplace_back(nil_from_json(lv, lwhere));
            else
                throw ParseError(lwhere, "tower levels must be torus or nil systems");
        }
        if (j.contains("factor_maps"))
            for (std::size_t i = 0; i < j.at("factor_maps").size(); ++i)
                t.maps.push_back(factor_map_from_json(
                    j.at("factor_maps")[i], where + ".factor_maps[" + std::to_string(i) + "]"));
        if (t.maps.size() + 1 != t.levels.size())
            throw ParseError(where + ".factor_maps", "need exactly one factor map per adjacent pair");
        return SystemDescriptor{std::move(t)};
    }
    throw ParseError(where + ".type", "unknown system type \"" + type + "\"");
}

inline json return_time_set_to_json(const ReturnTimeSet& s) {
    json times = json::array();
    for (std::int64_t n : s.times) times.push_back(n);
    return json{{"window", s.window}, {"times", times}};
}

}  // namespace affdyn
