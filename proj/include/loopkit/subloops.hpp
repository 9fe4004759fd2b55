#pragma once

#include <loopkit/identities.hpp>
#include <loopkit/table.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace loopkit {

/// A subset of a loop containing the neutral and closed under multiplication and both divisions.
class Subloop {
public:
    /// Throws PreconditionFailed if members is not a subloop of parent.
    Subloop(LoopTable parent, ElementSet members);

    const LoopTable & parent() const noexcept { return _parent; }
    const ElementSet & members() const noexcept { return _members; }
    std::size_t size() const noexcept { return _members.size(); }

    /// The subloop as a table of its own; labels are kept, elements in increasing parent index.
    LoopTable as_loop() const;
    /// Parent index of each element of as_loop().
    std::vector<Element> embedding() const { return _members.members(); }

private:
    LoopTable _parent;
    ElementSet _members;
};

/// Least subloop containing seed.
Subloop generated_subloop(const LoopTable & loop, const ElementSet & seed);

struct InnerGenerator {
    enum class Family { RinvL, LinvLL, RinvRR };
    PermutationMap map;
    Family family;
    Element x;
    Element y;

    std::string describe(const CayleyTable & table) const;
};

/// R_x^-1 L_x, L_xy^-1 L_x L_y and R_yx^-1 R_x R_y for all x, y, deduplicated (first occurrence
/// in that order is kept).
std::vector<InnerGenerator> inner_generators(const LoopTable & loop);

/// Invariance under every inner generator. Witness variables x, y (the generator) and a (the
/// member mapped outside), lhs = image.
CheckResult is_normal(const LoopTable & loop, const Subloop & sub);
CheckResult is_normal(const LoopTable & loop, const Subloop & sub, std::span<const InnerGenerator> generators);

struct Quotient {
    LoopTable table;
    /// element -> coset index
    std::vector<Element> projection;
};

/// Loop of cosets xS, labels are the member lists "{a,b}". Throws NotNormal when cosets do not
/// partition the loop or coset multiplication is not well defined.
Quotient quotient(const LoopTable & loop, const Subloop & sub);

CayleyTable direct_product(std::span<const CayleyTable> factors);
/// Componentwise product, labels "(a,b,...)", first factor most significant in the index order.
LoopTable direct_product(std::span<const LoopTable> factors);

struct InternalProductReport {
    bool holds = false;
    /// "i", "ii" or "iii" when a condition fails.
    std::string failed_condition;
    std::string detail;
    std::optional<LoopTable> external;
    /// external product index -> loop element
    std::optional<PermutationMap> isomorphism;
};

InternalProductReport is_internal_direct_product(const LoopTable & loop, std::span<const Subloop> parts);

} // namespace loopkit
