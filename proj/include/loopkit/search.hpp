#pragma once

#include <loopkit/identities.hpp>
#include <loopkit/table.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loopkit {

enum class SearchMode { Enumerate, Count, Exists };

std::string_view to_string(SearchMode mode);

struct SearchSpec {
    std::size_t n = 1;
    std::vector<IdentityId> require;
    std::vector<IdentityId> forbid;
    bool has_neutral = true;
    bool commutative = false;
    /// Maximum number of results; 0 exhausts the space.
    std::size_t limit = 0;
    SearchMode mode = SearchMode::Enumerate;
    /// 0 uses LOOPKIT_WORKERS or the OpenMP default.
    int workers = 0;
};

/// Throws SpecInvalid.
void validate(const SearchSpec & spec);

/// "n=7 require=flex,ip forbid=lalt mode=exists limit=1"; also commutative=, neutral=, workers=.
/// Throws SpecInvalid.
SearchSpec parse_search_spec(std::string_view line);
std::string format_search_spec(const SearchSpec & spec);

struct SearchResult {
    /// Canonical order: row-major cells, ascending values. Empty in count mode.
    std::vector<CayleyTable> tables;
    std::uint64_t nodes = 0;
    /// The whole space was explored.
    bool exhaustive = false;
    /// Number of tables found (capped by the limit).
    std::uint64_t count = 0;
};

/// Depth-first fill of the table with Latin and ground-instance propagation. With a neutral
/// element it is index 0 and its row and column are fixed. Emitted tables are re-verified.
SearchResult search_serial(const SearchSpec & spec);
/// Same result, with the tree split at a fixed depth across OpenMP workers.
SearchResult search(const SearchSpec & spec);

/// True when the table satisfies the spec's flags and every require tag and violates every forbid
/// tag. A table without two-sided inverses satisfies no identity that uses inverses.
bool satisfies_spec(const CayleyTable & table, const SearchSpec & spec);

struct OrderSweep {
    std::size_t n;
    std::uint64_t nodes;
    bool exhaustive;
    bool found;
};

struct MinOrderResult {
    std::optional<std::size_t> order;
    std::optional<CayleyTable> table;
    std::vector<OrderSweep> sweeps;
};

/// Runs exists-mode searches for n = 1..n_max. A contradictory spec is exhausted without searching.
MinOrderResult min_order_witness(std::span<const IdentityId> require, std::span<const IdentityId> forbid,
    std::size_t n_max, bool commutative = false, int workers = 0);

/// Keeps the first table of each isomorphism class.
std::vector<CayleyTable> isomorphism_classes(std::span<const CayleyTable> tables);

int resolve_workers(int requested);

} // namespace loopkit
