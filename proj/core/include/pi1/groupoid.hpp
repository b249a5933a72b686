#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pi1/error.hpp"

namespace pi1 {

// A single axiom failure with the elements that witness it.
struct AxiomViolation {
    std::string axiom;
    std::vector<std::string> witness;
};

struct AxiomReport {
    bool passed = true;
    std::vector<AxiomViolation> violations;
    // Number of defined triples the associativity pass visited.
    std::uint64_t checked_triples = 0;
};

struct VerifyOptions {
    // Exhaustive verification is cubic in the element count; refuse beyond
    // this many elements.
    int max_elements = 512;
    std::size_t max_violations = 1000;
};

// A finite groupoid given by an explicit partial composition table over
// opaque element ids 0..n-1, plus an inverse map. Source and target are
// derived from the table, never stored.
class FiniteGroupoid {
  public:
    FiniteGroupoid(std::vector<std::string> names,
                   std::map<std::pair<int, int>, int> table,
                   std::vector<int> inverse);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int id) const;
    std::optional<int> find(const std::string& name) const;

    bool defined(int a, int b) const;
    int compose(int a, int b) const; // throws UndefinedComposition
    int inverse_of(int a) const;     // -1 when no inverse was supplied

    // Target(a) = { b : ab is defined }.
    std::vector<int> target_set(int a) const;
    // Source(b) = Target(b^{-1}).
    std::vector<int> source_set(int b) const;

    AxiomReport verify_axioms(const VerifyOptions& options = {}) const;

    // Raw views used by the serializers and by table surgery in tests.
    const std::vector<std::string>& names() const { return names_; }
    std::map<std::pair<int, int>, int> entries() const;
    const std::vector<int>& inverses() const { return inverse_; }

  private:
    void require_element(int a) const;

    std::vector<std::string> names_;
    std::vector<std::int32_t> table_; // dense n*n, -1 = undefined
    std::vector<int> inverse_;
};

// Composition table with separately supplied left and right inverse maps,
// the input shape for derive_strong_inverses.
struct WeakGroupoidTable {
    std::vector<std::string> names;
    std::map<std::pair<int, int>, int> table;
    std::vector<int> left_inverse;
    std::vector<int> right_inverse;
};

// Checks the weak axioms (associativity plus one-sided identity laws) and
// then confirms that left and right inverses coincide and that the combined
// inverse is an involution. Throws WeakAxiomViolation when the input does
// not satisfy the weak axioms in the first place.
AxiomReport derive_strong_inverses(const WeakGroupoidTable& weak);

WeakGroupoidTable weak_form(const FiniteGroupoid& g);

// Canonical constructions used throughout the tests.
FiniteGroupoid pair_groupoid(int n_objects);
FiniteGroupoid cyclic_group(int order);
FiniteGroupoid dihedral_group(int n); // order 2n
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b,
                              const std::string& tag_a = "a",
                              const std::string& tag_b = "b");
// Same groupoid with elements renamed and re-indexed by `perm`, where
// perm[old] = new.
FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<int>& perm);

} // namespace pi1
