#include "pi1/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <string>

namespace pi1 {

namespace {

constexpr const char* kThreadsEnvVar = "PI1_THREADS";

// Canonical step order: lexicographic over the step letters.
constexpr char kStepLetters[4] = {'E', 'N', 'S', 'W'};

Site step_site(Site s, char c)
{
    switch (c) {
        case 'E': return {s.i + 1, s.j};
        case 'N': return {s.i, s.j + 1};
        case 'S': return {s.i, s.j - 1};
        case 'W': return {s.i - 1, s.j};
        default: fail(ErrorKind::Parse, std::string("unknown step letter '") + c + "'");
    }
}

int manhattan(Site a, Site b)
{
    return std::abs(a.i - b.i) + std::abs(a.j - b.j);
}

} // namespace

void LatticeSpec::validate() const
{
    if (!(spacing > 0.0) || !(mass > 0.0) || !(hbar > 0.0) || !(dt > 0.0))
        fail(ErrorKind::Parse, "spacing, mass, hbar and dt must all be positive");
    if (extent < 0)
        fail(ErrorKind::Parse, "lattice extent must be non-negative");
    // Plaquette-center check: the puncture must keep at least half a spacing
    // from every grid line, which is only possible at a plaquette center.
    const Vec2 p = puncture_point();
    const double dx = std::fabs(p.x / spacing - std::round(p.x / spacing)) * spacing;
    const double dy = std::fabs(p.y / spacing - std::round(p.y / spacing)) * spacing;
    if (std::min(dx, dy) < 0.5 * spacing * (1.0 - 1e-9))
        fail(ErrorKind::Parse,
             "puncture_offset must place the puncture at a plaquette center");
}

PuncturedPlane LatticeSpec::space() const
{
    validate();
    return PuncturedPlane({puncture_point()}, 0.5 * spacing * (1.0 - 1e-6));
}

Walk::Walk(Site start, std::string steps) : start_(start), steps_(std::move(steps))
{
    for (char c : steps_)
        if (c != 'E' && c != 'N' && c != 'S' && c != 'W')
            fail(ErrorKind::Parse, std::string("unknown step letter '") + c + "'");
}

Site Walk::end() const
{
    Site s = start_;
    for (char c : steps_)
        s = step_site(s, c);
    return s;
}

Polyline Walk::polyline(const LatticeSpec& spec) const
{
    if (steps_.empty())
        fail(ErrorKind::Domain,
             "the zero-step walk is the identity class and has no polyline");
    std::vector<Vec2> v;
    v.reserve(steps_.size() + 1);
    Site s = start_;
    v.push_back(spec.site_point(s));
    for (char c : steps_) {
        s = step_site(s, c);
        v.push_back(spec.site_point(s));
    }
    return Polyline(std::move(v));
}

int enumeration_threads()
{
    const char* raw = std::getenv(kThreadsEnvVar);
    if (raw == nullptr)
        return 1;
    const int n = std::atoi(raw);
    return std::clamp(n, 1, 64);
}

namespace {

struct EnumerationState {
    const LatticeSpec& spec;
    Site target;
    int n_steps;
    const EnumerationBudget& budget;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::size_t> walk_count{0};
};

void dfs(EnumerationState& st, Site current, std::string& steps, int depth,
         std::vector<Walk>& out)
{
    if (st.nodes.fetch_add(1, std::memory_order_relaxed) >= st.budget.max_nodes)
        fail(ErrorKind::BudgetExceeded, "walk enumeration exceeded the node cap");
    const int remaining = static_cast<int>(steps.size()) - depth;
    const int dist = manhattan(current, st.target);
    if (dist > remaining || (remaining - dist) % 2 != 0)
        return;
    if (remaining == 0) {
        if (st.walk_count.fetch_add(1, std::memory_order_relaxed) >= st.budget.max_walks)
            fail(ErrorKind::BudgetExceeded, "walk enumeration exceeded the walk cap");
        out.emplace_back(Site{}, steps); // start patched by the caller
        return;
    }
    for (char c : kStepLetters) {
        const Site next = step_site(current, c);
        if (!st.spec.on_lattice(next))
            continue;
        steps[depth] = c;
        dfs(st, next, steps, depth + 1, out);
    }
}

} // namespace

std::vector<Walk> enumerate_walks(const LatticeSpec& spec, Site a, Site b, int n_steps,
                                  const EnumerationBudget& budget, int threads)
{
    spec.validate();
    if (!spec.on_lattice(a) || !spec.on_lattice(b))
        fail(ErrorKind::Parse, "walk endpoints must be lattice sites");
    if (n_steps < 0)
        fail(ErrorKind::Parse, "step count must be non-negative");
    if (n_steps > budget.max_steps)
        fail(ErrorKind::BudgetExceeded,
             "step count " + std::to_string(n_steps) + " exceeds the cap " +
                 std::to_string(budget.max_steps));

    EnumerationState st{spec, b, n_steps, budget};

    if (n_steps == 0) {
        if (a == b)
            return {Walk(a, "")};
        return {};
    }

    // Split the tree by fixed step prefixes; shards concatenated in prefix
    // order reproduce the canonical order of a single DFS.
    const int prefix_len = (threads > 1) ? std::min(2, n_steps) : 0;
    struct Shard {
        std::string prefix;
        Site start_of_suffix;
    };
    std::vector<Shard> shards;
    if (prefix_len == 0) {
        shards.push_back({"", a});
    } else {
        std::vector<Shard> frontier{{"", a}};
        for (int level = 0; level < prefix_len; ++level) {
            std::vector<Shard> next;
            for (const Shard& sh : frontier)
                for (char c : kStepLetters) {
                    const Site n = step_site(sh.start_of_suffix, c);
                    if (spec.on_lattice(n))
                        next.push_back({sh.prefix + c, n});
                }
            frontier = std::move(next);
        }
        shards = std::move(frontier);
    }

    auto run_shard = [&](const Shard& sh) {
        std::vector<Walk> out;
        const int suffix_len = n_steps - static_cast<int>(sh.prefix.size());
        std::string steps(suffix_len, 'E');
        dfs(st, sh.start_of_suffix, steps, 0, out);
        std::vector<Walk> patched;
        patched.reserve(out.size());
        for (const Walk& w : out)
            patched.emplace_back(a, sh.prefix + w.steps());
        return patched;
    };

    std::vector<Walk> walks;
    if (threads <= 1 || shards.size() <= 1) {
        for (const Shard& sh : shards) {
            std::vector<Walk> part = run_shard(sh);
            walks.insert(walks.end(), std::make_move_iterator(part.begin()),
                         std::make_move_iterator(part.end()));
        }
    } else {
        std::vector<std::future<std::vector<Walk>>> futures;
        futures.reserve(shards.size());
        for (const Shard& sh : shards)
            futures.push_back(std::async(std::launch::async, run_shard, sh));
        for (auto& f : futures) {
            std::vector<Walk> part = f.get();
            walks.insert(walks.end(), std::make_move_iterator(part.begin()),
                         std::make_move_iterator(part.end()));
        }
    }
    return walks;
}

std::map<int, std::vector<std::uint32_t>> sector_decompose(const PuncturedPlane& space,
                                                           const Mesh& mesh,
                                                           const LatticeSpec& spec,
                                                           std::span<const Walk> walks)
{
    std::map<int, std::vector<std::uint32_t>> sectors;
    if (walks.empty())
        return sectors;
    if (space.puncture_count() != 1)
        fail(ErrorKind::Domain, "sector decomposition needs a single puncture");

    const Site a = walks.front().start();
    const Site b = walks.front().end();
    for (const Walk& w : walks)
        if (!(w.start() == a) || !(w.end() == b))
            fail(ErrorKind::Parse, "all walks in a decomposition must share endpoints");

    const double lift_a = mesh_lifts(space, mesh, spec.site_point(a))[0];
    const double lift_b = mesh_lifts(space, mesh, spec.site_point(b))[0];

    for (std::uint32_t idx = 0; idx < walks.size(); ++idx) {
        const Walk& w = walks[idx];
        const double lift =
            w.step_count() == 0 ? 0.0 : angle_lift(space, w.polyline(spec), 0);
        sectors[closed_lift_winding(lift_a + lift - lift_b)].push_back(idx);
    }
    return sectors;
}

double discrete_action(const LatticeSpec& spec, const Walk& walk)
{
    const double v = spec.spacing / spec.dt;
    return walk.step_count() * 0.5 * spec.mass * v * v * spec.dt;
}

Complex partial_amplitude(const LatticeSpec& spec, std::span<const Walk> walks,
                          std::span<const std::uint32_t> sector,
                          std::size_t total_walks)
{
    if (sector.empty())
        fail(ErrorKind::EmptySector, "cannot integrate over an empty sector");
    Complex sum{0.0, 0.0};
    for (std::uint32_t idx : sector)
        sum += std::polar(1.0, discrete_action(spec, walks[idx]) / spec.hbar);
    return sum / static_cast<double>(total_walks);
}

SectorAmplitudes sector_amplitudes(const LatticeSpec& spec, const PuncturedPlane& space,
                                   const Mesh& mesh, Site a, Site b, int n_steps,
                                   const EnumerationBudget& budget, int threads)
{
    const std::vector<Walk> walks = enumerate_walks(spec, a, b, n_steps, budget, threads);
    SectorAmplitudes result;
    result.a = a;
    result.b = b;
    result.steps = n_steps;
    result.total_walks = walks.size();
    if (walks.empty())
        return result;
    const auto sectors = sector_decompose(space, mesh, spec, walks);
    for (const auto& [winding, members] : sectors) {
        result.amplitudes[winding] = partial_amplitude(spec, walks, members, walks.size());
        result.counts[winding] = members.size();
    }
    return result;
}

TotalPropagator total_propagator(const LatticeSpec& spec, const SectorAmplitudes& sectors,
                                 const GroupoidRep& rep)
{
    if (rep.space().puncture_count() != 1 ||
        distance(rep.space().punctures.front(), spec.puncture_point()) > kCoincidenceTol)
        fail(ErrorKind::Domain,
             "the representation must live on the lattice's punctured plane");

    const Vec2 a = spec.site_point(sectors.a);
    const Vec2 b = spec.site_point(sectors.b);
    Complex k{0.0, 0.0};
    for (const auto& [winding, amplitude] : sectors.amplitudes)
        k += rep.chi(rep.class_transport(a, b, winding)) * amplitude;
    return TotalPropagator{k, rep.phi(), sectors.a, sectors.b, sectors.steps};
}

std::vector<SweepPoint> flux_sweep(const LatticeSpec& spec, Site a, Site b, int n_steps,
                                   std::span<const double> phis,
                                   const EnumerationBudget& budget, int threads)
{
    const PuncturedPlane space = spec.space();
    const Vec2 center = spec.puncture_point();
    auto mesh = std::make_shared<SpiralMesh>(space, center + Vec2{spec.spacing, 0.0});
    const SectorAmplitudes sectors =
        sector_amplitudes(spec, space, *mesh, a, b, n_steps, budget, threads);

    std::vector<SweepPoint> sweep;
    sweep.reserve(phis.size());
    for (double phi : phis) {
        GroupoidRep rep(space, mesh, MeshWeights::symmetric(phi, center), phi);
        const TotalPropagator k = total_propagator(spec, sectors, rep);
        sweep.push_back({phi, std::abs(k.value), k.value});
    }
    return sweep;
}

} // namespace pi1
