#pragma once

#include <loopkit/table.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loopkit {

enum class IdentityId {
    LIP,
    RIP,
    AAIP,
    IP,
    LALT,
    RALT,
    FLEX,
    C,
    MFG1,
    MFG2,
    MFG3,
    MFG4,
    RIF1,
    RIF2,
    ARIF1,
    ARIF2,
    CRIF,
    TS,
    WIP,
    DIST_L,
    DIST_R,
    COMM,
    UNIPOTENT,
    IDEMPOTENT,
    Q1,
    Q2,
    ASSOC,
};

std::span<const IdentityId> all_identities();

/// Stable lowercase tag ("lip", "crif", "dist_l", ...).
std::string_view tag(IdentityId id);
std::optional<IdentityId> parse_identity_tag(std::string_view tag);

/// Compiled term: postfix program over variables, multiplication, inverse and the neutral element.
struct Term {
    enum class Op : std::uint8_t { Var, Mul, Inv, Neutral };
    struct Instr {
        Op op;
        std::uint8_t var = 0;
    };
    std::vector<Instr> code;

    bool uses_inverse() const;
    bool uses_neutral() const;
};

/// Terms are written with explicit '*', postfix ' for inverse, 'e' for the neutral element,
/// single lowercase letters for variables, and left-associative '*'.
Term parse_term(std::string_view text, std::string_view variables);

struct Equation {
    std::string text;
    Term lhs;
    Term rhs;
};

/// One universally quantified identity, possibly a conjunction of equations over shared variables.
struct IdentityDef {
    IdentityId id;
    std::string variables;
    std::vector<Equation> equations;
    bool needs_inverses = false;
    bool needs_neutral = false;
};

const IdentityDef & definition(IdentityId id);

/// Builds a definition from "lhs = rhs" strings.
IdentityDef make_identity(IdentityId id, std::string variables, std::initializer_list<std::string_view> equations);

/// Evaluates a term. Magma must provide mul(x, y), inverse(x) and neutral(), each returning an
/// Element or a negative value when the result is not (yet) known.
template <typename Magma>
Element evaluate(const Term & term, std::span<const Element> vars, Magma & magma)
{
    std::array<Element, 32> stack;
    std::size_t top = 0;
    for (auto & ins : term.code) {
        switch (ins.op) {
            case Term::Op::Var: stack[top++] = vars[ins.var]; break;
            case Term::Op::Neutral: {
                auto v = magma.neutral();
                if (v < 0)
                    return v;
                stack[top++] = v;
                break;
            }
            case Term::Op::Inv: {
                auto v = magma.inverse(stack[top - 1]);
                if (v < 0)
                    return v;
                stack[top - 1] = v;
                break;
            }
            case Term::Op::Mul: {
                auto v = magma.mul(stack[top - 2], stack[top - 1]);
                if (v < 0)
                    return v;
                --top;
                stack[top - 1] = v;
                break;
            }
        }
    }
    return stack[0];
}

struct Witness {
    /// variable name -> element
    std::vector<std::pair<std::string, Element>> assignment;
    Element lhs = -1;
    Element rhs = -1;
    std::string equation;
};

struct CheckResult {
    bool holds = true;
    std::optional<Witness> witness;
    /// Number of failing assignments; only exact when counting was requested.
    std::size_t violations = 0;

    explicit operator bool() const noexcept { return holds; }
};

struct CheckOptions {
    bool count_all = false;
    bool parallel = false;
};

/// "x=5 y=6: 7 ≠ 2" using the table's labels.
std::string format_witness(const CayleyTable & table, const Witness & witness);

/// Exhaustive check over all assignments; the witness is the lexicographically least failing
/// assignment (first variable most significant). Throws RequirementMissing when the identity needs
/// a neutral element or two-sided inverses the table does not have.
CheckResult check_identity(const CayleyTable & table, IdentityId id, CheckOptions options = {});
CheckResult check_identity(const LoopTable & loop, IdentityId id, CheckOptions options = {});
CheckResult check_definition(const LoopTable & loop, const IdentityDef & def, CheckOptions options = {});

/// Serial reference kernel, kept for testing the parallel one.
CheckResult check_identity_serial(const CayleyTable & table, std::optional<Element> neutral,
    const std::vector<Element> * inverses, const IdentityDef & def, bool count_all);
/// OpenMP kernel partitioned over the first variable; same result as the serial one.
CheckResult check_identity_parallel(const CayleyTable & table, std::optional<Element> neutral,
    const std::vector<Element> * inverses, const IdentityDef & def, bool count_all);

/// Evaluates both sides of an identity at one assignment; returns nullopt if the identity holds there.
std::optional<Witness> evaluate_instance(const LoopTable & loop, IdentityId id, std::span<const Element> assignment);

/// Least set containing seed and closed under multiplication.
ElementSet multiplicative_closure(const CayleyTable & table, const ElementSet & seed);

/// Associativity inside a closed subset; witness variables x, y, z.
CheckResult check_associative_on(const CayleyTable & table, const ElementSet & subset);

/// Every single element generates an associative subloop. Witness adds variable g.
CheckResult is_power_associative(const LoopTable & loop);
/// Every pair generates an associative subloop. Witness adds variables g, h.
CheckResult is_diassociative(const LoopTable & loop);

struct ClassifyEntry {
    std::string key;
    bool holds;
    std::optional<Witness> witness;
    std::string note;
};

struct ClassifyReport {
    std::vector<ClassifyEntry> entries;

    const ClassifyEntry * find(std::string_view key) const;
    bool holds(std::string_view key) const;
    bool holds(IdentityId id) const { return holds(tag(id)); }
};

/// Every identity tag plus "power-associative" and "diassociative".
ClassifyReport classify(const LoopTable & loop);

} // namespace loopkit
