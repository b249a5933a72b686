#include "pi1/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace pi1::io {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, "cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ordered_json parse_json(const std::string& text, const std::string& what)
{
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parse, "invalid JSON for " + what + ": " + e.what());
    }
}

Vec2 to_vec2(const ordered_json& j, const std::string& what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorKind::Parse, what + " must be a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json from_vec2(const Vec2& p)
{
    return ordered_json::array({p.x, p.y});
}

} // namespace

// ---------------------------------------------------------------------------
// Groupoid tables

FiniteGroupoid parse_groupoid_table(std::istream& in)
{
    std::map<std::string, int> ids;
    std::vector<std::string> names;
    auto intern = [&](const std::string& token) {
        const auto [it, inserted] = ids.emplace(token, static_cast<int>(names.size()));
        if (inserted)
            names.push_back(token);
        return it->second;
    };

    std::map<std::pair<int, int>, int> table;
    std::map<int, int> inverse;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream tokens(line);
        std::vector<std::string> parts;
        std::string token;
        while (tokens >> token)
            parts.push_back(token);
        if (parts.empty())
            continue;
        const std::string where = " (line " + std::to_string(line_no) + ")";
        if (parts.size() == 4 && parts[0] == "inv" && parts[2] == "->") {
            const int a = intern(parts[1]);
            const int b = intern(parts[3]);
            const auto [it, inserted] = inverse.emplace(a, b);
            if (!inserted && it->second != b)
                fail(ErrorKind::Parse, "conflicting inverse for " + parts[1] + where);
        } else if (parts.size() == 4 && parts[2] == "->") {
            const int a = intern(parts[0]);
            const int b = intern(parts[1]);
            const int c = intern(parts[3]);
            const auto [it, inserted] = table.emplace(std::make_pair(a, b), c);
            if (!inserted && it->second != c)
                fail(ErrorKind::Parse,
                     "conflicting composition " + parts[0] + " " + parts[1] + where);
        } else {
            fail(ErrorKind::Parse, "expected 'a b -> c' or 'inv a -> b'" + where);
        }
    }

    std::vector<int> inverses(names.size(), -1);
    for (const auto& [a, b] : inverse)
        inverses[a] = b;
    return FiniteGroupoid(std::move(names), std::move(table), std::move(inverses));
}

FiniteGroupoid load_groupoid_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, "cannot open file: " + path);
    return parse_groupoid_table(in);
}

void write_groupoid_table(std::ostream& out, const FiniteGroupoid& g)
{
    for (const auto& [key, value] : g.entries())
        out << g.name(key.first) << ' ' << g.name(key.second) << " -> " << g.name(value)
            << '\n';
    for (int a = 0; a < g.size(); ++a)
        if (g.inverse_of(a) >= 0)
            out << "inv " << g.name(a) << " -> " << g.name(g.inverse_of(a)) << '\n';
}

std::string axiom_report_json(const AxiomReport& report)
{
    ordered_json j;
    j["passed"] = report.passed;
    j["checked_triples"] = report.checked_triples;
    j["violations"] = ordered_json::array();
    for (const AxiomViolation& v : report.violations) {
        ordered_json item;
        item["axiom"] = v.axiom;
        item["witness"] = v.witness;
        j["violations"].push_back(item);
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Plane geometry

PuncturedPlane parse_space(const std::string& text)
{
    const ordered_json j = parse_json(text, "a punctured plane");
    if (!j.is_object() || !j.contains("punctures") || !j.contains("clearance"))
        fail(ErrorKind::Parse, "a space needs \"punctures\" and \"clearance\"");
    std::vector<Vec2> punctures;
    for (const auto& p : j.at("punctures"))
        punctures.push_back(to_vec2(p, "puncture"));
    return PuncturedPlane(std::move(punctures), j.at("clearance").get<double>());
}

PuncturedPlane load_space(const std::string& path)
{
    return parse_space(read_file(path));
}

std::string space_json(const PuncturedPlane& space)
{
    ordered_json j;
    j["punctures"] = ordered_json::array();
    for (const Vec2& p : space.punctures)
        j["punctures"].push_back(from_vec2(p));
    j["clearance"] = space.clearance;
    return j.dump(2);
}

Polyline parse_polyline(const std::string& text)
{
    const ordered_json j = parse_json(text, "a polyline");
    if (!j.is_array())
        fail(ErrorKind::Parse, "a polyline is a JSON array of [x, y] pairs");
    std::vector<Vec2> vertices;
    for (const auto& p : j)
        vertices.push_back(to_vec2(p, "vertex"));
    return Polyline(std::move(vertices));
}

Polyline load_polyline(const std::string& path)
{
    return parse_polyline(read_file(path));
}

std::string polyline_json(const Polyline& path)
{
    ordered_json j = ordered_json::array();
    for (const Vec2& p : path.vertices())
        j.push_back(from_vec2(p));
    return j.dump();
}

std::string homotopy_class_json(const HomotopyClass& cls)
{
    ordered_json j;
    j["source"] = from_vec2(cls.source);
    j["target"] = from_vec2(cls.target);
    j["swept"] = cls.swept;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Representation configs

RepConfig parse_rep_config(const std::string& text)
{
    const ordered_json j = parse_json(text, "a representation config");
    if (!j.is_object())
        fail(ErrorKind::Parse, "a representation config is a JSON object");
    RepConfig config;
    if (j.contains("space"))
        config.space = parse_space(j.at("space").dump());
    if (j.contains("basepoint"))
        config.basepoint = to_vec2(j.at("basepoint"), "basepoint");
    if (j.contains("mesh_kind"))
        config.mesh_kind = j.at("mesh_kind").get<std::string>();
    if (j.contains("mesh_table"))
        for (const auto& path : j.at("mesh_table"))
            config.mesh_table.push_back(parse_polyline(path.dump()));
    if (j.contains("phi"))
        config.phi = j.at("phi").get<double>();
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (w.is_string()) {
            config.weights_kind = w.get<std::string>();
        } else if (w.is_array()) {
            config.weights_kind = "table";
            for (const auto& entry : w) {
                if (!entry.is_object() || !entry.contains("point") ||
                    !entry.contains("phase"))
                    fail(ErrorKind::Parse,
                         "weight table entries need \"point\" and \"phase\"");
                config.weight_table.emplace_back(to_vec2(entry.at("point"), "point"),
                                                 entry.at("phase").get<double>());
            }
        } else {
            fail(ErrorKind::Parse, "\"weights\" must be a string or a table");
        }
    }
    return config;
}

RepConfig load_rep_config(const std::string& path)
{
    return parse_rep_config(read_file(path));
}

GroupoidRep build_rep(const RepConfig& config)
{
    if (config.space.punctures.empty())
        fail(ErrorKind::Parse, "a representation config needs at least one puncture");
    const Vec2 center = config.space.punctures.front();
    const Vec2 base = config.basepoint.value_or(center + Vec2{1.0, 0.0});

    std::shared_ptr<const Mesh> mesh;
    if (config.mesh_kind == "spiral") {
        mesh = std::make_shared<SpiralMesh>(config.space, base);
    } else if (config.mesh_kind == "straight") {
        mesh = std::make_shared<StraightMesh>(config.space, base);
    } else if (config.mesh_kind == "table") {
        mesh = std::make_shared<TableMesh>(base, config.mesh_table);
    } else {
        fail(ErrorKind::Parse, "unknown mesh_kind: " + config.mesh_kind);
    }

    MeshWeights weights = MeshWeights::unity();
    if (config.weights_kind == "unity") {
        // keep
    } else if (config.weights_kind == "symmetric") {
        weights = MeshWeights::symmetric(config.phi, center);
    } else if (config.weights_kind == "table") {
        std::vector<std::pair<Vec2, Complex>> entries;
        entries.reserve(config.weight_table.size());
        for (const auto& [point, phase] : config.weight_table)
            entries.emplace_back(point, std::polar(1.0, phase));
        weights = MeshWeights::from_table(std::move(entries));
    } else {
        fail(ErrorKind::Parse, "unknown weights kind: " + config.weights_kind);
    }

    return GroupoidRep(config.space, std::move(mesh), std::move(weights), config.phi);
}

// ---------------------------------------------------------------------------
// Sweep configs

SweepConfig parse_sweep_config(const std::string& text)
{
    const ordered_json j = parse_json(text, "a sweep config");
    if (!j.is_object())
        fail(ErrorKind::Parse, "a sweep config is a JSON object");
    SweepConfig config;
    if (j.contains("lattice")) {
        const auto& l = j.at("lattice");
        if (l.contains("spacing"))
            config.lattice.spacing = l.at("spacing").get<double>();
        if (l.contains("extent"))
            config.lattice.extent = l.at("extent").get<int>();
        if (l.contains("puncture_offset"))
            config.lattice.puncture_offset = to_vec2(l.at("puncture_offset"), "puncture_offset");
        if (l.contains("mass"))
            config.lattice.mass = l.at("mass").get<double>();
        if (l.contains("hbar"))
            config.lattice.hbar = l.at("hbar").get<double>();
        if (l.contains("dt"))
            config.lattice.dt = l.at("dt").get<double>();
    }
    config.lattice.validate();
    if (!j.contains("endpoints") || !j.at("endpoints").is_object())
        fail(ErrorKind::Parse, "a sweep config needs \"endpoints\": {\"a\": .., \"b\": ..}");
    auto to_site = [](const ordered_json& s, const char* what) {
        if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() ||
            !s[1].is_number_integer())
            fail(ErrorKind::Parse, std::string(what) + " must be an [i, j] site");
        return Site{s[0].get<int>(), s[1].get<int>()};
    };
    config.a = to_site(j.at("endpoints").at("a"), "endpoints.a");
    config.b = to_site(j.at("endpoints").at("b"), "endpoints.b");
    if (j.contains("steps"))
        config.steps = j.at("steps").get<int>();
    if (j.contains("phis"))
        config.phis = j.at("phis").get<std::vector<double>>();
    if (j.contains("phi"))
        config.phi = j.at("phi").get<double>();
    if (j.contains("budget")) {
        const auto& b = j.at("budget");
        if (b.contains("max_steps"))
            config.budget.max_steps = b.at("max_steps").get<int>();
        if (b.contains("max_nodes"))
            config.budget.max_nodes = b.at("max_nodes").get<std::uint64_t>();
        if (b.contains("max_walks"))
            config.budget.max_walks = b.at("max_walks").get<std::size_t>();
    }
    return config;
}

SweepConfig load_sweep_config(const std::string& path)
{
    return parse_sweep_config(read_file(path));
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> sweep,
                     std::span<const std::string> header_comments)
{
    for (const std::string& comment : header_comments)
        out << "# " << comment << '\n';
    out << "phi,abs_k,re_k,im_k\n";
    char row[160];
    for (const SweepPoint& p : sweep) {
        std::snprintf(row, sizeof(row), "%.17g,%.17g,%.17g,%.17g\n", p.phi, p.abs_k,
                      p.k.real(), p.k.imag());
        out << row;
    }
}

} // namespace pi1::io
