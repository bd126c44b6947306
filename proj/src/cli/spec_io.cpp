#include "filippov/cli/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace filippov::cli {

using nlohmann::json;

namespace {

double number_at(const json& v, const std::string& what) {
    if (!v.is_number()) throw SpecError(what + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SpecError(what + " must be finite");
    return x;
}

Mat3 matrix_at(const json& v, const std::string& what) {
    if (!v.is_array() || v.size() != 3) throw SpecError(what + " must be an array of 3 rows");
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i) {
        const json& row = v[i];
        if (!row.is_array() || row.size() != 3)
            throw SpecError(fmt::format("{} row {} must be an array of 3 numbers", what, i + 1));
        for (std::size_t j = 0; j < 3; ++j)
            m(i, j) = number_at(row[j], fmt::format("{}[{}][{}]", what, i + 1, j + 1));
    }
    return m;
}

json matrix_json(const Mat3& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
    return rows;
}

}  // namespace

SystemSpec parse_spec(const json& doc) {
    if (!doc.is_object()) throw SpecError("spec must be a JSON object");
    for (const auto& item : doc.items()) {
        const std::string& k = item.key();
        if (k != "manifold" && k != "A" && k != "B" && k != "b21" && k != "b31" && k != "b32")
            throw SpecError("unknown spec key \"" + k + "\"");
    }

    SystemSpec spec;
    if (!doc.contains("manifold") || !doc["manifold"].is_string())
        throw SpecError("\"manifold\" must be \"sphere\" or \"torus\"");
    const std::string m = doc["manifold"].get<std::string>();
    if (m == "sphere") spec.kind = ManifoldKind::Sphere;
    else if (m == "torus") spec.kind = ManifoldKind::Torus;
    else throw SpecError("\"manifold\" must be \"sphere\" or \"torus\", got \"" + m + "\"");

    if (!doc.contains("A")) throw SpecError("missing \"A\"");
    spec.a = matrix_at(doc["A"], "A");
    if (doc.contains("B")) spec.b = matrix_at(doc["B"], "B");

    if (spec.kind == ManifoldKind::Torus && (doc.contains("b31") || doc.contains("b32")))
        throw SpecError("the torus companion has only the free parameter b21");
    if (spec.b) spec.free = free_parameters_of(spec.kind, *spec.b);
    if (doc.contains("b21")) spec.free.b21 = number_at(doc["b21"], "b21");
    if (doc.contains("b31")) spec.free.b31 = number_at(doc["b31"], "b31");
    if (doc.contains("b32")) spec.free.b32 = number_at(doc["b32"], "b32");
    return spec;
}

SystemSpec parse_spec_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("invalid JSON: ") + e.what());
    }
    return parse_spec(doc);
}

SystemSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot read spec file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

nlohmann::ordered_json to_json(const SystemSpec& spec) {
    nlohmann::ordered_json doc;
    doc["manifold"] = std::string(to_string(spec.kind));
    doc["A"] = matrix_json(spec.a);
    doc["b21"] = spec.free.b21;
    if (spec.kind == ManifoldKind::Sphere) {
        doc["b31"] = spec.free.b31;
        doc["b32"] = spec.free.b32;
    }
    if (spec.b) doc["B"] = matrix_json(*spec.b);
    return doc;
}

InelasticPair build_pair(const SystemSpec& spec) {
    if (spec.b) {
        auto bad = companion_mismatches(spec.kind, spec.a, *spec.b, kPatternTolerance);
        // Free parameters given explicitly must agree with the ones stored in B.
        const FreeParameters stored = free_parameters_of(spec.kind, *spec.b);
        const auto check_free = [&](int row, int col, double given, double in_b) {
            if (std::abs(given - in_b) > kPatternTolerance) bad.push_back({row, col, given, in_b});
        };
        check_free(2, 1, spec.free.b21, stored.b21);
        if (spec.kind == ManifoldKind::Sphere) {
            check_free(3, 1, spec.free.b31, stored.b31);
            check_free(3, 2, spec.free.b32, stored.b32);
        }
        if (!bad.empty()) {
            std::string msg = "B does not follow the inelastic companion pattern:";
            for (const auto& p : bad)
                msg += fmt::format(" b{}{} expected {:.17g} got {:.17g};", p.row, p.col, p.expected, p.actual);
            msg.pop_back();
            throw PatternError(msg, std::move(bad));
        }
    }
    return InelasticPair(spec.kind, spec.a, spec.free);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string spec_digest(const SystemSpec& spec) {
    std::string canon(to_string(spec.kind));
    const auto put = [&](double x) { canon += fmt::format(",{:.17g}", x); };
    for (double x : spec.a.a) put(x);
    put(spec.free.b21);
    put(spec.free.b31);
    put(spec.free.b32);
    if (spec.b)
        for (double x : spec.b->a) put(x);
    return fmt::format("{:016x}", fnv1a64(canon));
}

Vec3 parse_point(const std::string& text) {
    Vec3 x;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t end = text.find(',', pos);
        if ((i < 2) != (end != std::string::npos)) throw SpecError("point must be given as a,b,c");
        const std::string part = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        std::size_t used = 0;
        try {
            x[i] = std::stod(part, &used);
        } catch (const std::exception&) {
            throw SpecError("invalid coordinate \"" + part + "\"");
        }
        if (used != part.size() || !std::isfinite(x[i])) throw SpecError("invalid coordinate \"" + part + "\"");
        pos = end + 1;
    }
    return x;
}

}  // namespace filippov::cli
