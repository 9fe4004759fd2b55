#include <loopkit/identities.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace loopkit {

namespace {
    constexpr std::array identity_tags{
        std::pair{IdentityId::LIP, "lip"},
        std::pair{IdentityId::RIP, "rip"},
        std::pair{IdentityId::AAIP, "aaip"},
        std::pair{IdentityId::IP, "ip"},
        std::pair{IdentityId::LALT, "lalt"},
        std::pair{IdentityId::RALT, "ralt"},
        std::pair{IdentityId::FLEX, "flex"},
        std::pair{IdentityId::C, "c"},
        std::pair{IdentityId::MFG1, "mfg1"},
        std::pair{IdentityId::MFG2, "mfg2"},
        std::pair{IdentityId::MFG3, "mfg3"},
        std::pair{IdentityId::MFG4, "mfg4"},
        std::pair{IdentityId::RIF1, "rif1"},
        std::pair{IdentityId::RIF2, "rif2"},
        std::pair{IdentityId::ARIF1, "arif1"},
        std::pair{IdentityId::ARIF2, "arif2"},
        std::pair{IdentityId::CRIF, "crif"},
        std::pair{IdentityId::TS, "ts"},
        std::pair{IdentityId::WIP, "wip"},
        std::pair{IdentityId::DIST_L, "dist_l"},
        std::pair{IdentityId::DIST_R, "dist_r"},
        std::pair{IdentityId::COMM, "comm"},
        std::pair{IdentityId::UNIPOTENT, "unipotent"},
        std::pair{IdentityId::IDEMPOTENT, "idempotent"},
        std::pair{IdentityId::Q1, "q1"},
        std::pair{IdentityId::Q2, "q2"},
        std::pair{IdentityId::ASSOC, "assoc"},
    };

    constexpr auto all_ids = [] {
        std::array<IdentityId, identity_tags.size()> result{};
        for (std::size_t i = 0; i < identity_tags.size(); ++i)
            result[i] = identity_tags[i].first;
        return result;
    }();

    struct TermParser {
        std::string_view text;
        std::string_view variables;
        std::size_t pos = 0;
        Term out{};

        [[noreturn]] void fail(const std::string & what)
        {
            throw LoopError(ErrorKind::MalformedInput,
                "term '" + std::string(text) + "' at " + std::to_string(pos) + ": " + what);
        }

        void skip()
        {
            while (pos < text.size() && text[pos] == ' ')
                ++pos;
        }

        void primary()
        {
            skip();
            if (pos >= text.size())
                fail("unexpected end");
            char c = text[pos];
            if (c == '(') {
                ++pos;
                expr();
                skip();
                if (pos >= text.size() || text[pos] != ')')
                    fail("expected ')'");
                ++pos;
            }
            else if (c == 'e') {
                ++pos;
                out.code.push_back({Term::Op::Neutral});
            }
            else if (auto v = variables.find(c); v != std::string_view::npos) {
                ++pos;
                out.code.push_back({Term::Op::Var, static_cast<std::uint8_t>(v)});
            }
            else
                fail(std::string("unexpected '") + c + "'");
        }

        void factor()
        {
            primary();
            skip();
            while (pos < text.size() && text[pos] == '\'') {
                ++pos;
                out.code.push_back({Term::Op::Inv});
                skip();
            }
        }

        void expr()
        {
            factor();
            skip();
            while (pos < text.size() && text[pos] == '*') {
                ++pos;
                factor();
                out.code.push_back({Term::Op::Mul});
                skip();
            }
        }
    };

    std::map<IdentityId, IdentityDef> build_definitions()
    {
        std::map<IdentityId, IdentityDef> d;
        auto add = [&](IdentityId id, std::string vars, std::initializer_list<std::string_view> eqs) {
            d.emplace(id, make_identity(id, std::move(vars), eqs));
        };
        constexpr std::string_view lip = "x'*(x*y) = y";
        constexpr std::string_view rip = "(x*y)*y' = x";
        constexpr std::string_view comm = "x*y = y*x";
        constexpr std::string_view crif = "x*((y*y)*(x*z)) = ((x*y)*(x*y))*z";
        add(IdentityId::LIP, "xy", {lip});
        add(IdentityId::RIP, "xy", {rip});
        add(IdentityId::AAIP, "xy", {"(x*y)' = y'*x'"});
        add(IdentityId::IP, "xy", {lip, rip});
        add(IdentityId::LALT, "xy", {"x*(x*y) = (x*x)*y"});
        add(IdentityId::RALT, "xy", {"(x*y)*y = x*(y*y)"});
        add(IdentityId::FLEX, "xy", {"x*(y*x) = (x*y)*x"});
        add(IdentityId::C, "xyz", {"x*(y*(y*z)) = ((x*y)*y)*z"});
        add(IdentityId::MFG1, "xyz", {"x*((y*z)*x) = (x*y)*(z*x)"});
        add(IdentityId::MFG2, "xyz", {"(x*(y*z))*x = (x*y)*(z*x)"});
        add(IdentityId::MFG3, "xyz", {"x*(y*(x*z)) = ((x*y)*x)*z"});
        add(IdentityId::MFG4, "xyz", {"((z*x)*y)*x = z*(x*(y*x))"});
        add(IdentityId::RIF1, "xyz", {"((x*y)*z)*(x*y) = x*(y*((z*x)*y))"});
        add(IdentityId::RIF2, "xyz", {"(x*y)*(z*(x*y)) = ((x*(y*z))*x)*y"});
        add(IdentityId::ARIF1, "xyz", {"x*(((y*x)*y)*z) = ((x*y)*x)*(y*z)"});
        add(IdentityId::ARIF2, "xyz", {"(z*((y*x)*y))*x = (z*y)*((x*y)*x)"});
        add(IdentityId::CRIF, "xyz", {crif});
        add(IdentityId::TS, "xy", {comm, "x*(x*y) = y"});
        add(IdentityId::WIP, "xy", {"x*(y*x)' = y'"});
        add(IdentityId::DIST_L, "xyz", {"x*(y*z) = (x*y)*(x*z)"});
        add(IdentityId::DIST_R, "xyz", {"(x*y)*z = (x*z)*(y*z)"});
        add(IdentityId::COMM, "xy", {comm});
        add(IdentityId::UNIPOTENT, "xy", {"x*x = y*y"});
        add(IdentityId::IDEMPOTENT, "x", {"x*x = x"});
        add(IdentityId::Q1, "x", {"(x*x)*(x*x) = x*x"});
        add(IdentityId::Q2, "xyz", {crif});
        add(IdentityId::ASSOC, "xyz", {"x*(y*z) = (x*y)*z"});
        return d;
    }

    struct FullMagma {
        const CayleyTable & table;
        Element e;
        const std::vector<Element> * inv;

        Element mul(Element x, Element y) const { return table.mul(x, y); }
        Element inverse(Element x) const { return (*inv)[static_cast<std::size_t>(x)]; }
        Element neutral() const { return e; }
    };

    void check_requirements(const IdentityDef & def, std::optional<Element> neutral, const std::vector<Element> * inverses)
    {
        if (def.needs_neutral && ! neutral)
            throw LoopError(ErrorKind::RequirementMissing, std::string(tag(def.id)) + " needs a neutral element");
        if (def.needs_inverses && ! inverses)
            throw LoopError(ErrorKind::RequirementMissing, std::string(tag(def.id)) + " needs two-sided inverses");
    }

    Witness make_witness(const IdentityDef & def, std::span<const Element> vars, const Equation & eq, Element lhs, Element rhs)
    {
        Witness w;
        for (std::size_t i = 0; i < def.variables.size(); ++i)
            w.assignment.emplace_back(std::string(1, def.variables[i]), vars[i]);
        w.lhs = lhs;
        w.rhs = rhs;
        w.equation = eq.text;
        return w;
    }

    // Scans assignments whose first variable equals first (or all assignments if first < 0) in
    // lexicographic order. Returns the first witness and the number of failures seen.
    std::pair<std::optional<Witness>, std::size_t> scan(const CayleyTable & table, const FullMagma & magma,
        const IdentityDef & def, Element first, bool count_all)
    {
        auto n = static_cast<Element>(table.order());
        auto v = def.variables.size();
        std::array<Element, 8> vars{};
        std::size_t fixed = 0;
        if (first >= 0 && v > 0) {
            vars[0] = first;
            fixed = 1;
        }
        std::optional<Witness> witness;
        std::size_t count = 0;
        while (true) {
            for (auto & eq : def.equations) {
                auto l = evaluate(eq.lhs, vars, magma);
                auto r = evaluate(eq.rhs, vars, magma);
                if (l != r) {
                    ++count;
                    if (! witness)
                        witness = make_witness(def, vars, eq, l, r);
                    break;
                }
            }
            if (witness && ! count_all)
                break;
            // odometer, last variable fastest
            bool done = true;
            for (std::size_t i = v; i > fixed;) {
                --i;
                if (++vars[i] < n) {
                    done = false;
                    break;
                }
                vars[i] = 0;
            }
            if (done)
                break;
        }
        return {std::move(witness), count};
    }
}

std::span<const IdentityId> all_identities()
{
    return all_ids;
}

std::string_view tag(IdentityId id)
{
    for (auto & [i, t] : identity_tags)
        if (i == id)
            return t;
    return "?";
}

std::optional<IdentityId> parse_identity_tag(std::string_view t)
{
    for (auto & [i, s] : identity_tags)
        if (s == t)
            return i;
    return std::nullopt;
}

bool Term::uses_inverse() const
{
    return std::any_of(code.begin(), code.end(), [](auto & i) { return i.op == Op::Inv; });
}

bool Term::uses_neutral() const
{
    return std::any_of(code.begin(), code.end(), [](auto & i) { return i.op == Op::Neutral; });
}

Term parse_term(std::string_view text, std::string_view variables)
{
    TermParser p{text, variables};
    p.expr();
    p.skip();
    if (p.pos != text.size())
        p.fail("trailing input");
    return std::move(p.out);
}

IdentityDef make_identity(IdentityId id, std::string variables, std::initializer_list<std::string_view> equations)
{
    IdentityDef def{id, std::move(variables), {}};
    for (auto text : equations) {
        auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw LoopError(ErrorKind::MalformedInput, "equation without '='");
        Equation e{std::string(text), parse_term(text.substr(0, eq), def.variables),
            parse_term(text.substr(eq + 1), def.variables)};
        def.needs_inverses = def.needs_inverses || e.lhs.uses_inverse() || e.rhs.uses_inverse();
        def.needs_neutral = def.needs_neutral || e.lhs.uses_neutral() || e.rhs.uses_neutral() || def.needs_inverses;
        def.equations.push_back(std::move(e));
    }
    return def;
}

const IdentityDef & definition(IdentityId id)
{
    static const auto defs = build_definitions();
    return defs.at(id);
}

std::string format_witness(const CayleyTable & table, const Witness & w)
{
    std::string out;
    for (auto & [name, value] : w.assignment) {
        if (! out.empty())
            out += ' ';
        out += name + "=" + table.label(value);
    }
    out += ": ";
    out += w.lhs >= 0 ? table.label(w.lhs) : "?";
    out += " ≠ ";
    out += w.rhs >= 0 ? table.label(w.rhs) : "?";
    return out;
}

CheckResult check_identity_serial(const CayleyTable & table, std::optional<Element> neutral,
    const std::vector<Element> * inverses, const IdentityDef & def, bool count_all)
{
    check_requirements(def, neutral, inverses);
    FullMagma magma{table, neutral.value_or(-1), inverses};
    auto [witness, count] = scan(table, magma, def, -1, count_all);
    CheckResult result;
    result.holds = ! witness;
    result.witness = std::move(witness);
    result.violations = count;
    return result;
}

CheckResult check_identity_parallel(const CayleyTable & table, std::optional<Element> neutral,
    const std::vector<Element> * inverses, const IdentityDef & def, bool count_all)
{
    check_requirements(def, neutral, inverses);
    if (def.variables.empty())
        return check_identity_serial(table, neutral, inverses, def, count_all);
    FullMagma magma{table, neutral.value_or(-1), inverses};
    auto n = static_cast<long>(table.order());
    std::vector<std::optional<Witness>> witnesses(static_cast<std::size_t>(n));
    std::vector<std::size_t> counts(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(dynamic)
    for (long x = 0; x < n; ++x) {
        auto [w, c] = scan(table, magma, def, static_cast<Element>(x), count_all);
        witnesses[static_cast<std::size_t>(x)] = std::move(w);
        counts[static_cast<std::size_t>(x)] = c;
    }
    CheckResult result;
    for (std::size_t x = 0; x < witnesses.size(); ++x) {
        if (witnesses[x] && ! result.witness)
            result.witness = std::move(witnesses[x]);
        result.violations += counts[x];
    }
    if (! count_all)
        result.violations = result.witness ? 1 : 0;
    result.holds = ! result.witness;
    return result;
}

namespace {
    CheckResult run_check(const CayleyTable & table, std::optional<Element> neutral,
        const std::vector<Element> * inverses, const IdentityDef & def, CheckOptions options)
    {
        if (options.parallel)
            return check_identity_parallel(table, neutral, inverses, def, options.count_all);
        return check_identity_serial(table, neutral, inverses, def, options.count_all);
    }
}

CheckResult check_identity(const CayleyTable & table, IdentityId id, CheckOptions options)
{
    return run_check(table, std::nullopt, nullptr, definition(id), options);
}

CheckResult check_identity(const LoopTable & loop, IdentityId id, CheckOptions options)
{
    return check_definition(loop, definition(id), options);
}

CheckResult check_definition(const LoopTable & loop, const IdentityDef & def, CheckOptions options)
{
    const std::vector<Element> * inv = loop.inverses() ? &*loop.inverses() : nullptr;
    return run_check(loop.table(), loop.neutral(), inv, def, options);
}

std::optional<Witness> evaluate_instance(const LoopTable & loop, IdentityId id, std::span<const Element> assignment)
{
    auto & def = definition(id);
    const std::vector<Element> * inv = loop.inverses() ? &*loop.inverses() : nullptr;
    check_requirements(def, loop.neutral(), inv);
    if (assignment.size() != def.variables.size())
        throw LoopError(ErrorKind::MalformedInput, "identity " + std::string(tag(id)) + " takes "
                + std::to_string(def.variables.size()) + " variables");
    FullMagma magma{loop.table(), loop.neutral(), inv};
    for (auto & eq : def.equations) {
        auto l = evaluate(eq.lhs, assignment, magma);
        auto r = evaluate(eq.rhs, assignment, magma);
        if (l != r)
            return make_witness(def, assignment, eq, l, r);
    }
    return std::nullopt;
}

ElementSet multiplicative_closure(const CayleyTable & table, const ElementSet & seed)
{
    ElementSet result = seed;
    auto members = seed.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
        auto u = members[i];
        for (std::size_t j = 0; j <= i; ++j) {
            auto v = members[j];
            for (auto p : {table.mul(u, v), table.mul(v, u)}) {
                if (! result.contains(p)) {
                    result.insert(p);
                    members.push_back(p);
                }
            }
        }
    }
    return result;
}

CheckResult check_associative_on(const CayleyTable & table, const ElementSet & subset)
{
    auto m = subset.members();
    for (auto x : m)
        for (auto y : m)
            for (auto z : m) {
                auto l = table.mul(x, table.mul(y, z));
                auto r = table.mul(table.mul(x, y), z);
                if (l != r) {
                    Witness w{{{"x", x}, {"y", y}, {"z", z}}, l, r, "x*(y*z) = (x*y)*z"};
                    return CheckResult{false, std::move(w), 1};
                }
            }
    return CheckResult{};
}

CheckResult is_power_associative(const LoopTable & loop)
{
    auto n = loop.order();
    for (std::size_t g = 0; g < n; ++g) {
        auto closure = multiplicative_closure(loop.table(), ElementSet(n, {static_cast<Element>(g)}));
        auto r = check_associative_on(loop.table(), closure);
        if (! r.holds) {
            r.witness->assignment.insert(r.witness->assignment.begin(), {"g", static_cast<Element>(g)});
            return r;
        }
    }
    return CheckResult{};
}

CheckResult is_diassociative(const LoopTable & loop)
{
    auto n = loop.order();
    std::set<std::vector<Element>> verified;
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = g; h < n; ++h) {
            auto closure = multiplicative_closure(loop.table(),
                ElementSet(n, {static_cast<Element>(g), static_cast<Element>(h)}));
            auto key = closure.members();
            if (verified.contains(key))
                continue;
            auto r = check_associative_on(loop.table(), closure);
            if (! r.holds) {
                r.witness->assignment.insert(r.witness->assignment.begin(),
                    {{"g", static_cast<Element>(g)}, {"h", static_cast<Element>(h)}});
                return r;
            }
            verified.insert(std::move(key));
        }
    return CheckResult{};
}

const ClassifyEntry * ClassifyReport::find(std::string_view key) const
{
    for (auto & e : entries)
        if (e.key == key)
            return &e;
    return nullptr;
}

bool ClassifyReport::holds(std::string_view key) const
{
    auto e = find(key);
    if (! e)
        throw LoopError(ErrorKind::MalformedInput, "no report entry " + std::string(key));
    return e->holds;
}

ClassifyReport classify(const LoopTable & loop)
{
    ClassifyReport report;
    for (auto id : all_identities()) {
        try {
            auto r = check_identity(loop, id);
            report.entries.push_back({std::string(tag(id)), r.holds, std::move(r.witness), {}});
        }
        catch (const LoopError & e) {
            if (e.kind() != ErrorKind::RequirementMissing)
                throw;
            report.entries.push_back({std::string(tag(id)), false, std::nullopt, "no two-sided inverses"});
        }
    }
    auto pa = is_power_associative(loop);
    report.entries.push_back({"power-associative", pa.holds, std::move(pa.witness), {}});
    auto da = is_diassociative(loop);
    report.entries.push_back({"diassociative", da.holds, std::move(da.witness), {}});
    return report;
}

} // namespace loopkit
