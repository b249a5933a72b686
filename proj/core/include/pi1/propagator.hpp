#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pi1/representation.hpp"

namespace pi1 {

struct Site {
    int i = 0;
    int j = 0;
    friend bool operator==(Site a, Site b) { return a.i == b.i && a.j == b.j; }
};

// A square lattice of sites (i, j) * spacing with |i|, |j| <= extent, a
// puncture pinned to a plaquette center, and the free-particle discretization
// parameters.
struct LatticeSpec {
    double spacing = 1.0;
    int extent = 4;
    // Puncture position in units of the spacing; must sit at a plaquette
    // center so every lattice edge keeps spacing/2 clearance.
    Vec2 puncture_offset{0.5, 0.5};
    double mass = 1.0;
    double hbar = 1.0;
    double dt = 0.1;

    void validate() const;
    Vec2 puncture_point() const { return puncture_offset * spacing; }
    Vec2 site_point(Site s) const
    {
        return {s.i * spacing, s.j * spacing};
    }
    bool on_lattice(Site s) const
    {
        return std::abs(s.i) <= extent && std::abs(s.j) <= extent;
    }
    PuncturedPlane space() const;
};

struct EnumerationBudget {
    int max_steps = 14;
    std::uint64_t max_nodes = 50'000'000;
    std::size_t max_walks = 2'000'000;
};

// A nearest-neighbor lattice walk: a start site plus a step string over
// {E, N, S, W}. The empty walk stands for the identity class at its start and
// has no polyline form.
class Walk {
  public:
    Walk(Site start, std::string steps);

    Site start() const { return start_; }
    Site end() const;
    int step_count() const { return static_cast<int>(steps_.size()); }
    const std::string& steps() const { return steps_; }

    Polyline polyline(const LatticeSpec& spec) const; // throws for the empty walk

  private:
    Site start_;
    std::string steps_;
};

// Number of worker threads for walk enumeration, from the PI1_THREADS
// environment variable (default 1). Results are identical for any value.
int enumeration_threads();

// All N-step nearest-neighbor walks from a to b that stay on the lattice, in
// canonical order (lexicographic step strings, E < N < S < W).
std::vector<Walk> enumerate_walks(const LatticeSpec& spec, Site a, Site b, int n_steps,
                                  const EnumerationBudget& budget = {},
                                  int threads = enumeration_threads());

// Walk indices partitioned by the winding of the mesh-closed loop. The
// partition itself is mesh-independent; the integer labels are not.
std::map<int, std::vector<std::uint32_t>> sector_decompose(const PuncturedPlane& space,
                                                           const Mesh& mesh,
                                                           const LatticeSpec& spec,
                                                           std::span<const Walk> walks);

// Free-particle action of one walk: each moving step contributes
// (m/2) (spacing/dt)^2 dt.
double discrete_action(const LatticeSpec& spec, const Walk& walk);

// Sum of e^{i S/hbar} over one sector, normalized by the total walk count.
Complex partial_amplitude(const LatticeSpec& spec, std::span<const Walk> walks,
                          std::span<const std::uint32_t> sector,
                          std::size_t total_walks);

struct SectorAmplitudes {
    std::map<int, Complex> amplitudes;
    std::map<int, std::size_t> counts;
    Site a, b;
    int steps = 0;
    std::size_t total_walks = 0;
};

// Enumerates, decomposes and accumulates in one pass.
SectorAmplitudes sector_amplitudes(const LatticeSpec& spec, const PuncturedPlane& space,
                                   const Mesh& mesh, Site a, Site b, int n_steps,
                                   const EnumerationBudget& budget = {},
                                   int threads = enumeration_threads());

struct TotalPropagator {
    Complex value;
    double flux = 0.0;
    Site a, b;
    int steps = 0;
};

// K = sum_n chi(class from a to b with winding n) * K^n. The representation
// must share the lattice's space and the mesh used for the decomposition.
TotalPropagator total_propagator(const LatticeSpec& spec, const SectorAmplitudes& sectors,
                                 const GroupoidRep& rep);

struct SweepPoint {
    double phi = 0.0;
    double abs_k = 0.0;
    Complex k;
};

// |K(phi)| over a list of fluxes, under the symmetric representation about
// the lattice puncture. The enumeration and decomposition are shared across
// fluxes.
std::vector<SweepPoint> flux_sweep(const LatticeSpec& spec, Site a, Site b, int n_steps,
                                   std::span<const double> phis,
                                   const EnumerationBudget& budget = {},
                                   int threads = enumeration_threads());

} // namespace pi1
