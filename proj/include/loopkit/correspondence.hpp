#pragma once

#include <loopkit/identities.hpp>
#include <loopkit/table.hpp>

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace loopkit {

/// A quasigroup with a distinguished idempotent.
class PointedQuasigroup {
public:
    /// Throws BadBase when base is not idempotent.
    PointedQuasigroup(CayleyTable table, Element base);

    const CayleyTable & table() const noexcept { return _table; }
    Element base() const noexcept { return _base; }

    bool operator==(const PointedQuasigroup & other) const = default;

private:
    CayleyTable _table;
    Element _base;
};

/// x . y = (-x) + (-y); the base is the neutral element. Needs a commutative loop with two-sided
/// inverses (PreconditionFailed otherwise); the weak inverse property is not enforced.
PointedQuasigroup quasi(const LoopTable & loop);

/// x + y = (0 x)(0 y) with 0 the base. Throws NotTS (with witness) unless the table is totally
/// symmetric and the base idempotent.
LoopTable deloop(const CayleyTable & table, Element base);
LoopTable deloop(const PointedQuasigroup & q);

/// Least idempotent, if any.
std::optional<Element> least_idempotent(const CayleyTable & table);

struct TsReport {
    std::vector<ClassifyEntry> entries;
    ElementSet idempotents;
    ElementSet unipotent_fiber;
    /// Squaring is an endomorphism onto the idempotents; only evaluated when Q1 and Q2 hold.
    std::optional<bool> squaring_onto_idempotents;

    bool holds(std::string_view key) const;
};

/// ts, q1, q2, dist (both sides), unipotent, idempotent; Idem(q) and the fiber over the base.
TsReport ts_report(const PointedQuasigroup & q);

/// Subquasigroup on a closed subset, labels kept. Throws PreconditionFailed if not closed.
CayleyTable restrict_table(const CayleyTable & table, const ElementSet & subset);

struct TsDecomposition {
    PointedQuasigroup idempotent_part;
    LoopTable steiner_part;
    ElementSet idempotents;
    ElementSet unipotent_fiber;
    CayleyTable product;
    /// q element -> product index
    PermutationMap isomorphism;
};

/// Splits a TS quasigroup satisfying Q1 and Q2 into its idempotents and the Steiner loop over the
/// base, computed through the associated loop. Throws PreconditionFailed.
TsDecomposition ts_decompose(const PointedQuasigroup & q);

/// Adjoins a neutral element (label "1" when free, else "e") at index 0 and sets every square to it.
/// Needs an idempotent TS quasigroup; throws NotSteiner.
LoopTable steiner_adjoin(const CayleyTable & q);
/// Drops the neutral, sets x x = x. Needs IP and exponent 2; throws NotSteiner.
CayleyTable steiner_delete(const LoopTable & loop);

struct TripleSystem {
    std::vector<std::string> points;
    std::vector<std::array<Element, 3>> blocks;
};

/// Blocks {x, y, xy}, x != y, of a Steiner quasigroup; validates one block per pair.
TripleSystem sts_extract(const CayleyTable & q);
/// The Steiner quasigroup of a triple system: x x = x, x y = third point of the block on {x, y}.
CayleyTable steiner_quasigroup(const TripleSystem & system);

/// One block per line as three labels.
std::string serialize_triple_system(const TripleSystem & system);
/// Points in order of first appearance.
TripleSystem parse_triple_system(std::string_view text);

} // namespace loopkit
