#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pi1/propagator.hpp"
#include "pi1/sampling.hpp"

using namespace pi1;

namespace {

const LatticeSpec kLattice{}; // spacing 1, extent 4, puncture (0.5, 0.5)

std::vector<std::string> step_strings(const std::vector<Walk>& walks)
{
    std::vector<std::string> out;
    out.reserve(walks.size());
    for (const Walk& w : walks)
        out.push_back(w.steps());
    return out;
}

GroupoidRep lattice_rep(double phi, const LatticeSpec& spec = kLattice)
{
    const PuncturedPlane space = spec.space();
    const Vec2 center = spec.puncture_point();
    auto mesh = std::make_shared<SpiralMesh>(space, center + Vec2{spec.spacing, 0.0});
    return GroupoidRep(space, mesh, MeshWeights::symmetric(phi, center), phi);
}

} // namespace

TEST_CASE("lattice validation")
{
    CHECK_NOTHROW(kLattice.validate());

    LatticeSpec on_edge = kLattice;
    on_edge.puncture_offset = {0.5, 0.0};
    CHECK_THROWS_AS(on_edge.validate(), Error);

    LatticeSpec on_site = kLattice;
    on_site.puncture_offset = {1.0, 1.0};
    CHECK_THROWS_AS(on_site.validate(), Error);

    LatticeSpec bad_dt = kLattice;
    bad_dt.dt = 0.0;
    CHECK_THROWS_AS(bad_dt.validate(), Error);
}

TEST_CASE("walk enumeration counts")
{
    SUBCASE("zero steps")
    {
        const auto walks = enumerate_walks(kLattice, {0, 0}, {0, 0}, 0);
        REQUIRE(walks.size() == 1);
        CHECK(walks[0].step_count() == 0);
        CHECK(enumerate_walks(kLattice, {0, 0}, {1, 0}, 0).empty());
    }
    SUBCASE("one step between neighbors")
    {
        const auto walks = enumerate_walks(kLattice, {0, 0}, {1, 0}, 1);
        REQUIRE(walks.size() == 1);
        CHECK(walks[0].steps() == "E");
    }
    SUBCASE("two-step returns in the interior")
    {
        const auto walks = enumerate_walks(kLattice, {0, 0}, {0, 0}, 2);
        CHECK(step_strings(walks) == std::vector<std::string>{"EW", "NS", "SN", "WE"});
    }
    SUBCASE("the boundary prunes moves")
    {
        const auto walks = enumerate_walks(kLattice, {4, 4}, {4, 4}, 2);
        CHECK(step_strings(walks) == std::vector<std::string>{"SN", "WE"});
    }
    SUBCASE("parity mismatch yields nothing")
    {
        CHECK(enumerate_walks(kLattice, {0, 0}, {1, 0}, 2).empty());
    }
}

TEST_CASE("enumeration is canonical and thread-count independent")
{
    const auto serial = enumerate_walks(kLattice, {1, 0}, {0, 1}, 6, {}, 1);
    CHECK(std::is_sorted(serial.begin(), serial.end(),
                         [](const Walk& a, const Walk& b) { return a.steps() < b.steps(); }));
    for (int threads : {2, 4, 7}) {
        const auto parallel = enumerate_walks(kLattice, {1, 0}, {0, 1}, 6, {}, threads);
        CHECK(step_strings(parallel) == step_strings(serial));
    }
}

TEST_CASE("enumeration budgets")
{
    CHECK_THROWS_AS(enumerate_walks(kLattice, {0, 0}, {0, 0}, 20), Error);

    EnumerationBudget tiny;
    tiny.max_walks = 3;
    CHECK_THROWS_AS(enumerate_walks(kLattice, {0, 0}, {0, 0}, 4, tiny), Error);

    EnumerationBudget few_nodes;
    few_nodes.max_nodes = 10;
    bool threw = false;
    try {
        enumerate_walks(kLattice, {0, 0}, {0, 0}, 8, few_nodes);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
    CHECK(threw);
}

TEST_CASE("walk polylines")
{
    const Walk loop({0, 0}, "ENWS");
    const Polyline path = loop.polyline(kLattice);
    REQUIRE(path.size() == 5);
    CHECK(path.vertices()[2] == Vec2{1.0, 1.0});
    CHECK(close(path.source(), path.target()));

    CHECK_THROWS_AS(Walk({0, 0}, "").polyline(kLattice), Error);
    CHECK_THROWS_AS(Walk({0, 0}, "EXIT"), Error);
}

TEST_CASE("sector decomposition")
{
    const PuncturedPlane space = kLattice.space();
    const GroupoidRep rep = lattice_rep(1.0);

    SUBCASE("far from the puncture everything is contractible")
    {
        const auto walks = enumerate_walks(kLattice, {3, 3}, {3, 3}, 4);
        const auto sectors = sector_decompose(space, rep.mesh(), kLattice, walks);
        REQUIRE(sectors.size() == 1);
        CHECK(sectors.begin()->first == 0);
        CHECK(sectors.begin()->second.size() == walks.size());
    }
    SUBCASE("next to the puncture the plaquette loops appear")
    {
        const auto walks = enumerate_walks(kLattice, {0, 0}, {0, 0}, 4);
        const auto sectors = sector_decompose(space, rep.mesh(), kLattice, walks);
        REQUIRE(sectors.count(1) == 1);
        REQUIRE(sectors.count(-1) == 1);
        REQUIRE(sectors.count(0) == 1);
        // exactly one plaquette cycle in each direction passes around the hole
        CHECK(sectors.at(1).size() == 1);
        CHECK(sectors.at(-1).size() == 1);
        CHECK(walks[sectors.at(1).front()].steps() == "ENWS");
        CHECK(walks[sectors.at(-1).front()].steps() == "NESW");
        // partition
        std::size_t total = 0;
        for (const auto& [n, members] : sectors)
            total += members.size();
        CHECK(total == walks.size());
    }
    SUBCASE("eight steps populate five sectors around the hole")
    {
        const auto walks = enumerate_walks(kLattice, {0, 0}, {0, 0}, 8);
        const auto sectors = sector_decompose(space, rep.mesh(), kLattice, walks);
        for (int n : {-2, -1, 0, 1, 2})
            CHECK(sectors.count(n) == 1);
    }
    SUBCASE("mixed endpoints are rejected")
    {
        std::vector<Walk> walks{Walk({0, 0}, "E"), Walk({0, 0}, "N")};
        CHECK_THROWS_AS(sector_decompose(space, rep.mesh(), kLattice, walks), Error);
    }
}

TEST_CASE("discrete action")
{
    CHECK(discrete_action(kLattice, Walk({0, 0}, "")) == 0.0);
    const double per_step = 0.5 * kLattice.mass *
                            (kLattice.spacing / kLattice.dt) * (kLattice.spacing / kLattice.dt) *
                            kLattice.dt;
    CHECK(discrete_action(kLattice, Walk({0, 0}, "ENWS")) == doctest::Approx(4 * per_step));
    CHECK(discrete_action(kLattice, Walk({0, 0}, "ENWS")) ==
          discrete_action(kLattice, Walk({1, 1}, "SSNN")));
}

TEST_CASE("partial amplitudes sum to the unrestricted propagator")
{
    const PuncturedPlane space = kLattice.space();
    const GroupoidRep rep = lattice_rep(0.7);
    const auto walks = enumerate_walks(kLattice, {0, 0}, {0, 0}, 6);
    const auto sectors = sector_decompose(space, rep.mesh(), kLattice, walks);

    Complex by_sector{0.0, 0.0};
    std::size_t counted = 0;
    for (const auto& [n, members] : sectors) {
        by_sector += partial_amplitude(kLattice, walks, members, walks.size());
        counted += members.size();
    }
    CHECK(counted == walks.size()); // exact partition

    // independent flat sum over all enumerated walks, no decomposition
    Complex flat{0.0, 0.0};
    for (const Walk& w : walks)
        flat += std::polar(1.0, discrete_action(kLattice, w) / kLattice.hbar);
    flat /= static_cast<double>(walks.size());
    CHECK(std::abs(by_sector - flat) < 1e-12);

    CHECK_THROWS_AS(partial_amplitude(kLattice, walks, {}, walks.size()), Error);
}

TEST_CASE("single-walk sector amplitude")
{
    const auto walks = enumerate_walks(kLattice, {0, 0}, {1, 0}, 1);
    const std::vector<std::uint32_t> sector{0};
    const Complex k = partial_amplitude(kLattice, walks, sector, 7);
    const Complex expected =
        std::polar(1.0, discrete_action(kLattice, walks[0]) / kLattice.hbar) / 7.0;
    CHECK(std::abs(k - expected) == 0.0);
}

TEST_CASE("total propagator")
{
    const PuncturedPlane space = kLattice.space();

    SUBCASE("zero flux reproduces the plain sum")
    {
        const GroupoidRep rep = lattice_rep(0.0);
        const SectorAmplitudes sectors =
            sector_amplitudes(kLattice, space, rep.mesh(), {0, 0}, {0, 0}, 6);
        Complex plain{0.0, 0.0};
        for (const auto& [n, k] : sectors.amplitudes)
            plain += k;
        const TotalPropagator total = total_propagator(kLattice, sectors, rep);
        CHECK(std::abs(total.value - plain) < 1e-12);
    }
    SUBCASE("a single populated sector makes |K| flux-independent")
    {
        const GroupoidRep rep = lattice_rep(0.0);
        const SectorAmplitudes sectors =
            sector_amplitudes(kLattice, space, rep.mesh(), {3, 3}, {3, 3}, 4);
        REQUIRE(sectors.amplitudes.size() == 1);
        const double k0 = std::abs(total_propagator(kLattice, sectors, rep).value);
        const double k1 =
            std::abs(total_propagator(kLattice, sectors, lattice_rep(1.3)).value);
        CHECK(std::fabs(k0 - k1) < 1e-12);
    }
}

TEST_CASE("|K| is gauge invariant, also between distinct endpoints")
{
    const PuncturedPlane space = kLattice.space();
    const GroupoidRep rep = lattice_rep(1.0);
    const SectorAmplitudes sectors =
        sector_amplitudes(kLattice, space, rep.mesh(), {1, 0}, {0, 1}, 6);
    REQUIRE(sectors.amplitudes.size() >= 2);

    const double base = std::abs(total_propagator(kLattice, sectors, rep).value);
    Rng rng(13579);
    for (int trial = 0; trial < 20; ++trial) {
        const GroupoidRep gauged = gauge_transform(rep, random_smooth_weights(rng));
        const double k = std::abs(total_propagator(kLattice, sectors, gauged).value);
        CHECK(std::fabs(k - base) < 1e-9);
        // the complex value itself moves by a phase for distinct endpoints
    }
}

TEST_CASE("|K| does not depend on the base-point or the mesh")
{
    const PuncturedPlane space = kLattice.space();
    const double phi = 1.0;

    const GroupoidRep spiral = lattice_rep(phi);
    const GroupoidRep straight(space,
                               std::make_shared<StraightMesh>(space, Vec2{1.5, 1.5}),
                               MeshWeights::unity(), phi);

    for (const auto& [a, b] : std::vector<std::pair<Site, Site>>{
             {{1, 0}, {1, 0}}, {{1, 0}, {0, 1}}, {{2, 0}, {1, 2}}}) {
        const int steps = (std::abs(a.i - b.i) + std::abs(a.j - b.j)) % 2 == 0 ? 6 : 7;
        const SectorAmplitudes s1 =
            sector_amplitudes(kLattice, space, spiral.mesh(), a, b, steps);
        const SectorAmplitudes s2 =
            sector_amplitudes(kLattice, space, straight.mesh(), a, b, steps);

        // the partition is identical even if the labels shift
        std::vector<std::size_t> c1, c2;
        for (const auto& [n, c] : s1.counts)
            c1.push_back(c);
        for (const auto& [n, c] : s2.counts)
            c2.push_back(c);
        CHECK(c1 == c2);

        const double k1 = std::abs(total_propagator(kLattice, s1, spiral).value);
        const double k2 = std::abs(total_propagator(kLattice, s2, straight).value);
        CHECK(std::fabs(k1 - k2) < 1e-9);
    }
}

TEST_CASE("flux sweeps")
{
    SUBCASE("single-sector geometry sweeps flat")
    {
        std::vector<double> phis{0.0, 1.0, 2.0, 3.0};
        const auto sweep = flux_sweep(kLattice, {3, 3}, {3, 3}, 4, phis);
        for (const SweepPoint& p : sweep)
            CHECK(std::fabs(p.abs_k - sweep.front().abs_k) < 1e-12);
    }
    SUBCASE("next to the puncture the sweep is 2pi-periodic and even")
    {
        std::vector<double> phis;
        for (int i = 0; i <= 8; ++i)
            phis.push_back(kTwoPi * i / 8.0);
        for (int i = 1; i <= 8; ++i)
            phis.push_back(-kTwoPi * i / 8.0);
        for (int i = 0; i <= 8; ++i)
            phis.push_back(kTwoPi * i / 8.0 + kTwoPi);

        const auto sweep = flux_sweep(kLattice, {0, 0}, {0, 0}, 8, phis);
        for (int i = 0; i <= 8; ++i) {
            CHECK(std::fabs(sweep[i].abs_k - sweep[17 + i].abs_k) < 1e-9); // phi + 2pi
            if (i >= 1)
                CHECK(std::fabs(sweep[i].abs_k - sweep[8 + i].abs_k) < 1e-9); // -phi
        }
        double lo = sweep[0].abs_k, hi = sweep[0].abs_k;
        for (int i = 0; i <= 8; ++i) {
            lo = std::min(lo, sweep[i].abs_k);
            hi = std::max(hi, sweep[i].abs_k);
        }
        CHECK(hi - lo > 1e-3);
    }
}
