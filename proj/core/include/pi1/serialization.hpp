#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "pi1/groupoid.hpp"
#include "pi1/propagator.hpp"
#include "pi1/representation.hpp"

namespace pi1::io {

// --- groupoid composition tables -------------------------------------------
// Text format, one statement per line:
//   a b -> c     composition entry
//   inv a -> b   inverse entry
// Ids are whitespace-free ASCII tokens; '#' starts a comment.
FiniteGroupoid parse_groupoid_table(std::istream& in);
FiniteGroupoid load_groupoid_table(const std::string& path);
void write_groupoid_table(std::ostream& out, const FiniteGroupoid& g);

std::string axiom_report_json(const AxiomReport& report);

// --- plane geometry ---------------------------------------------------------
// Spaces: {"punctures": [[x, y], ...], "clearance": c}
// Polylines: [[x, y], ...]
PuncturedPlane parse_space(const std::string& text);
PuncturedPlane load_space(const std::string& path);
std::string space_json(const PuncturedPlane& space);

Polyline parse_polyline(const std::string& text);
Polyline load_polyline(const std::string& path);
std::string polyline_json(const Polyline& path);

std::string homotopy_class_json(const HomotopyClass& cls);

// --- representation configs -------------------------------------------------
// {"space": {...}?, "basepoint": [x, y]?, "mesh_kind": "spiral"|"straight"|"table",
//  "mesh_table": [[[x, y], ...], ...]?, "phi": f,
//  "weights": "unity"|"symmetric"|[{"point": [x, y], "phase": t}, ...]}
// Defaults: the origin-punctured plane, the spiral mesh, unity weights.
struct RepConfig {
    PuncturedPlane space = origin_punctured_plane();
    std::optional<Vec2> basepoint;
    std::string mesh_kind = "spiral";
    std::vector<Polyline> mesh_table;
    double phi = 0.0;
    std::string weights_kind = "unity";
    std::vector<std::pair<Vec2, double>> weight_table; // point -> phase
};

RepConfig parse_rep_config(const std::string& text);
RepConfig load_rep_config(const std::string& path);
GroupoidRep build_rep(const RepConfig& config);

// --- lattice sweep configs ---------------------------------------------------
// {"lattice": {"spacing": s, "extent": e, "puncture_offset": [x, y],
//              "mass": m, "hbar": h, "dt": t},
//  "endpoints": {"a": [i, j], "b": [i, j]}, "steps": n, "phis": [...],
//  "phi": f?, "budget": {"max_steps": n, "max_nodes": n, "max_walks": n}?}
struct SweepConfig {
    LatticeSpec lattice;
    Site a, b;
    int steps = 8;
    std::vector<double> phis;
    double phi = 1.0; // used by single-flux commands
    EnumerationBudget budget;
};

SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> sweep,
                     std::span<const std::string> header_comments);

} // namespace pi1::io
