#include "pi1/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace pi1 {

namespace {

std::string describe(const std::vector<std::string>& names, int id)
{
    if (id < 0 || id >= static_cast<int>(names.size()))
        return "<none>";
    return names[id];
}

} // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> names,
                               std::map<std::pair<int, int>, int> table,
                               std::vector<int> inverse)
    : names_(std::move(names))
{
    const int n = static_cast<int>(names_.size());
    table_.assign(static_cast<std::size_t>(n) * n, -1);
    for (const auto& [key, value] : table) {
        const auto [a, b] = key;
        if (a < 0 || a >= n || b < 0 || b >= n || value < 0 || value >= n)
            fail(ErrorKind::Parse, "composition table references an unknown element id");
        table_[static_cast<std::size_t>(a) * n + b] = value;
    }
    inverse_.assign(n, -1);
    for (int a = 0; a < n && a < static_cast<int>(inverse.size()); ++a) {
        const int i = inverse[a];
        if (i < -1 || i >= n)
            fail(ErrorKind::Parse, "inverse map references an unknown element id");
        inverse_[a] = i;
    }
}

void FiniteGroupoid::require_element(int a) const
{
    if (a < 0 || a >= size())
        fail(ErrorKind::UnknownElement,
             "element id " + std::to_string(a) + " is not in the groupoid");
}

const std::string& FiniteGroupoid::name(int id) const
{
    require_element(id);
    return names_[id];
}

std::optional<int> FiniteGroupoid::find(const std::string& name) const
{
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

bool FiniteGroupoid::defined(int a, int b) const
{
    require_element(a);
    require_element(b);
    return table_[static_cast<std::size_t>(a) * size() + b] >= 0;
}

int FiniteGroupoid::compose(int a, int b) const
{
    require_element(a);
    require_element(b);
    const int c = table_[static_cast<std::size_t>(a) * size() + b];
    if (c < 0)
        fail(ErrorKind::UndefinedComposition,
             "composition " + names_[a] + " * " + names_[b] +
                 " is undefined (target/source mismatch)");
    return c;
}

int FiniteGroupoid::inverse_of(int a) const
{
    require_element(a);
    return inverse_[a];
}

std::vector<int> FiniteGroupoid::target_set(int a) const
{
    require_element(a);
    std::vector<int> out;
    for (int b = 0; b < size(); ++b)
        if (table_[static_cast<std::size_t>(a) * size() + b] >= 0)
            out.push_back(b);
    return out;
}

std::vector<int> FiniteGroupoid::source_set(int b) const
{
    require_element(b);
    const int i = inverse_[b];
    if (i < 0)
        fail(ErrorKind::UnknownElement,
             "source set of " + names_[b] + " needs an inverse entry");
    return target_set(i);
}

std::map<std::pair<int, int>, int> FiniteGroupoid::entries() const
{
    std::map<std::pair<int, int>, int> out;
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b) {
            const int c = table_[static_cast<std::size_t>(a) * size() + b];
            if (c >= 0)
                out[{a, b}] = c;
        }
    return out;
}

namespace {

class ViolationSink {
  public:
    ViolationSink(AxiomReport& report, std::size_t cap) : report_(report), cap_(cap) {}

    void add(const std::string& axiom, std::vector<std::string> witness)
    {
        report_.passed = false;
        if (report_.violations.size() < cap_)
            report_.violations.push_back({axiom, std::move(witness)});
    }

  private:
    AxiomReport& report_;
    std::size_t cap_;
};

// Bitset rows of the "ab is defined" relation, used for the Target/Source
// characterization without materializing n^2 sets.
std::vector<std::uint64_t> definedness_rows(const FiniteGroupoid& g, int words)
{
    const int n = g.size();
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * words, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.defined(a, b))
                rows[static_cast<std::size_t>(a) * words + b / 64] |= std::uint64_t{1} << (b % 64);
    return rows;
}

} // namespace

AxiomReport FiniteGroupoid::verify_axioms(const VerifyOptions& options) const
{
    const int n = size();
    if (n > options.max_elements)
        fail(ErrorKind::BudgetExceeded,
             "groupoid has " + std::to_string(n) + " elements, verification cap is " +
                 std::to_string(options.max_elements));

    AxiomReport report;
    ViolationSink sink(report, options.max_violations);

    // Associativity in both bracketings on every defined triple.
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (!defined(a, b))
                continue;
            const int ab = compose(a, b);
            for (int c = 0; c < n; ++c) {
                const bool left = defined(ab, c);
                const bool right = defined(b, c) && defined(a, compose(b, c));
                if (left || right)
                    ++report.checked_triples;
                if (left != right) {
                    sink.add("associativity-domain", {names_[a], names_[b], names_[c]});
                    continue;
                }
                if (left && compose(ab, c) != compose(a, compose(b, c)))
                    sink.add("associativity", {names_[a], names_[b], names_[c]});
            }
        }
    }

    // Two-sided inverses and the four identity laws.
    for (int a = 0; a < n; ++a) {
        const int i = inverse_[a];
        if (i < 0 || !defined(a, i) || !defined(i, a)) {
            sink.add("inverse-defined", {names_[a]});
            continue;
        }
        const int ia = compose(i, a); // acts as the identity at Target(a)
        const int ai = compose(a, i); // acts as the identity at Source(a)
        for (int b = 0; b < n; ++b) {
            if (defined(a, b) && (!defined(ia, b) || compose(ia, b) != b))
                sink.add("left-inverse-law", {names_[a], names_[b]});
            if (defined(i, b) && (!defined(ai, b) || compose(ai, b) != b))
                sink.add("left-double-inverse-law", {names_[a], names_[b]});
            if (defined(b, a) && (!defined(b, ai) || compose(b, ai) != b))
                sink.add("right-inverse-law", {names_[a], names_[b]});
            if (defined(b, i) && (!defined(b, ia) || compose(b, ia) != b))
                sink.add("right-double-inverse-law", {names_[a], names_[b]});
        }
    }

    // Target(a) = Source(b) iff ab is defined. Source(b) = Target(b^{-1}).
    const int words = (n + 63) / 64;
    const auto rows = definedness_rows(*this, words);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const int ib = inverse_[b];
            if (ib < 0)
                continue; // already reported above
            const bool same =
                std::equal(rows.begin() + static_cast<std::size_t>(a) * words,
                           rows.begin() + static_cast<std::size_t>(a + 1) * words,
                           rows.begin() + static_cast<std::size_t>(ib) * words);
            if (same != defined(a, b))
                sink.add("target-source-characterization", {names_[a], names_[b]});
        }
    }

    return report;
}

WeakGroupoidTable weak_form(const FiniteGroupoid& g)
{
    WeakGroupoidTable weak;
    weak.names = g.names();
    weak.table = g.entries();
    weak.left_inverse = g.inverses();
    weak.right_inverse = g.inverses();
    return weak;
}

AxiomReport derive_strong_inverses(const WeakGroupoidTable& weak)
{
    FiniteGroupoid g(weak.names, weak.table, weak.left_inverse);
    const int n = g.size();
    if (static_cast<int>(weak.left_inverse.size()) != n ||
        static_cast<int>(weak.right_inverse.size()) != n)
        fail(ErrorKind::Parse, "weak table needs one left and one right inverse per element");

    auto bad = [&](const std::string& what, int a, int b = -1) {
        std::string msg = "weak axiom " + what + " fails at " + describe(weak.names, a);
        if (b >= 0)
            msg += ", " + describe(weak.names, b);
        fail(ErrorKind::WeakAxiomViolation, msg);
    };

    // Axiom 1: associativity with matching domains on every defined triple.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!g.defined(a, b))
                continue;
            const int ab = g.compose(a, b);
            for (int c = 0; c < n; ++c) {
                const bool left = g.defined(ab, c);
                const bool right = g.defined(b, c) && g.defined(a, g.compose(b, c));
                if (left != right)
                    bad("1 (domains)", a, b);
                if (left && g.compose(ab, c) != g.compose(a, g.compose(b, c)))
                    bad("1 (associativity)", a, b);
            }
        }

    // Axioms 2'a and 2'b.
    for (int a = 0; a < n; ++a) {
        const int la = weak.left_inverse[a];
        const int ra = weak.right_inverse[a];
        if (la < 0 || la >= n || !g.defined(la, a))
            bad("2' (left inverse composable)", a);
        if (ra < 0 || ra >= n || !g.defined(a, ra))
            bad("2' (right inverse composable)", a);
        const int laa = g.compose(la, a);
        const int ara = g.compose(a, ra);
        for (int b = 0; b < n; ++b) {
            if (g.defined(a, b) && (!g.defined(laa, b) || g.compose(laa, b) != b))
                bad("2'a", a, b);
            if (g.defined(b, a) && (!g.defined(b, ara) || g.compose(b, ara) != b))
                bad("2'b", a, b);
        }
    }

    // The appendix conclusions, checked instance by instance.
    AxiomReport report;
    ViolationSink sink(report, 1000);
    for (int a = 0; a < n; ++a) {
        if (weak.left_inverse[a] != weak.right_inverse[a])
            sink.add("left-right-inverse-coincide", {weak.names[a]});
    }
    if (report.passed) {
        for (int a = 0; a < n; ++a) {
            const int i = weak.left_inverse[a];
            if (weak.left_inverse[i] != a)
                sink.add("inverse-involution", {weak.names[a]});
        }
    }
    return report;
}

FiniteGroupoid pair_groupoid(int n_objects)
{
    if (n_objects < 0)
        fail(ErrorKind::Parse, "pair groupoid needs a non-negative object count");
    const int n = n_objects * n_objects;
    std::vector<std::string> names(n);
    auto id = [n_objects](int i, int j) { return i * n_objects + j; };
    for (int i = 0; i < n_objects; ++i)
        for (int j = 0; j < n_objects; ++j)
            names[id(i, j)] = std::to_string(i) + "." + std::to_string(j);

    std::map<std::pair<int, int>, int> table;
    std::vector<int> inverse(n);
    for (int i = 0; i < n_objects; ++i)
        for (int j = 0; j < n_objects; ++j) {
            inverse[id(i, j)] = id(j, i);
            for (int k = 0; k < n_objects; ++k)
                table[{id(i, j), id(j, k)}] = id(i, k);
        }
    return FiniteGroupoid(std::move(names), std::move(table), std::move(inverse));
}

FiniteGroupoid cyclic_group(int order)
{
    if (order <= 0)
        fail(ErrorKind::Parse, "cyclic group needs a positive order");
    std::vector<std::string> names(order);
    std::map<std::pair<int, int>, int> table;
    std::vector<int> inverse(order);
    for (int a = 0; a < order; ++a) {
        names[a] = "g" + std::to_string(a);
        inverse[a] = (order - a) % order;
        for (int b = 0; b < order; ++b)
            table[{a, b}] = (a + b) % order;
    }
    return FiniteGroupoid(std::move(names), std::move(table), std::move(inverse));
}

FiniteGroupoid dihedral_group(int n)
{
    if (n <= 0)
        fail(ErrorKind::Parse, "dihedral group needs a positive n");
    // Elements r^i (ids 0..n-1) and s r^i (ids n..2n-1), with s r^i s = r^{-i}.
    const int order = 2 * n;
    std::vector<std::string> names(order);
    for (int i = 0; i < n; ++i) {
        names[i] = "r" + std::to_string(i);
        names[n + i] = "sr" + std::to_string(i);
    }
    auto mul = [n](int a, int b) {
        const bool fa = a >= n, fb = b >= n;
        const int ia = fa ? a - n : a, ib = fb ? b - n : b;
        // (s^e r^i)(s^f r^j) = s^{e xor f} r^{(-1)^f i + j}
        const int i = fb ? (n - ia) % n : ia;
        const int k = (i + ib) % n;
        return (fa != fb) ? n + k : k;
    };
    std::map<std::pair<int, int>, int> table;
    std::vector<int> inverse(order);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            table[{a, b}] = mul(a, b);
            if (mul(a, b) == 0)
                inverse[a] = b;
        }
    return FiniteGroupoid(std::move(names), std::move(table), std::move(inverse));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b,
                              const std::string& tag_a, const std::string& tag_b)
{
    std::vector<std::string> names;
    names.reserve(a.size() + b.size());
    for (const auto& name : a.names())
        names.push_back(tag_a + "." + name);
    for (const auto& name : b.names())
        names.push_back(tag_b + "." + name);

    std::map<std::pair<int, int>, int> table;
    for (const auto& [key, value] : a.entries())
        table[key] = value;
    const int shift = a.size();
    for (const auto& [key, value] : b.entries())
        table[{key.first + shift, key.second + shift}] = value + shift;

    std::vector<int> inverse;
    inverse.reserve(names.size());
    for (int x : a.inverses())
        inverse.push_back(x);
    for (int x : b.inverses())
        inverse.push_back(x < 0 ? -1 : x + shift);
    return FiniteGroupoid(std::move(names), std::move(table), std::move(inverse));
}

FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<int>& perm)
{
    const int n = g.size();
    if (static_cast<int>(perm.size()) != n)
        fail(ErrorKind::Parse, "relabel permutation has the wrong size");
    std::vector<std::string> names(n);
    for (int a = 0; a < n; ++a)
        names[perm[a]] = g.names()[a];
    std::map<std::pair<int, int>, int> table;
    for (const auto& [key, value] : g.entries())
        table[{perm[key.first], perm[key.second]}] = perm[value];
    std::vector<int> inverse(n, -1);
    for (int a = 0; a < n; ++a) {
        const int i = g.inverses()[a];
        if (i >= 0)
            inverse[perm[a]] = perm[i];
    }
    return FiniteGroupoid(std::move(names), std::move(table), std::move(inverse));
}

} // namespace pi1
