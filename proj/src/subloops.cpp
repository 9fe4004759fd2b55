#include <loopkit/subloops.hpp>

#include <algorithm>
#include <map>

namespace loopkit {

namespace {
    bool is_closed(const LoopTable & loop, const ElementSet & s)
    {
        if (! s.contains(loop.neutral()))
            return false;
        auto m = s.members();
        for (auto a : m)
            for (auto b : m)
                if (! s.contains(loop.mul(a, b)) || ! s.contains(loop.ldiv(a, b)) || ! s.contains(loop.rdiv(a, b)))
                    return false;
        return true;
    }
}

Subloop::Subloop(LoopTable parent, ElementSet members) :
    _parent(std::move(parent)),
    _members(std::move(members))
{
    if (_members.universe() != _parent.order() || ! is_closed(_parent, _members))
        throw LoopError(ErrorKind::PreconditionFailed, format_labels(_parent.table(), _members) + " is not a subloop");
}

LoopTable Subloop::as_loop() const
{
    auto m = _members.members();
    auto k = m.size();
    std::vector<Element> position(_parent.order(), -1);
    for (std::size_t i = 0; i < k; ++i)
        position[static_cast<std::size_t>(m[i])] = static_cast<Element>(i);
    std::vector<Element> entries(k * k);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) {
        labels.push_back(_parent.label(m[i]));
        for (std::size_t j = 0; j < k; ++j)
            entries[i * k + j] = position[static_cast<std::size_t>(_parent.mul(m[i], m[j]))];
    }
    return LoopTable(CayleyTable(k, std::move(entries), std::move(labels)));
}

Subloop generated_subloop(const LoopTable & loop, const ElementSet & seed)
{
    ElementSet closure = seed;
    closure.insert(loop.neutral());
    auto members = closure.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
        auto u = members[i];
        for (std::size_t j = 0; j <= i; ++j) {
            auto v = members[j];
            for (auto p : {loop.mul(u, v), loop.mul(v, u), loop.ldiv(u, v), loop.ldiv(v, u), loop.rdiv(u, v),
                     loop.rdiv(v, u)}) {
                if (! closure.contains(p)) {
                    closure.insert(p);
                    members.push_back(p);
                }
            }
        }
    }
    return Subloop(loop, std::move(closure));
}

std::string InnerGenerator::describe(const CayleyTable & table) const
{
    switch (family) {
        case Family::RinvL: return "R_x^-1 L_x with x=" + table.label(x);
        case Family::LinvLL: return "L_xy^-1 L_x L_y with x=" + table.label(x) + " y=" + table.label(y);
        case Family::RinvRR: return "R_yx^-1 R_x R_y with x=" + table.label(x) + " y=" + table.label(y);
    }
    return {};
}

std::vector<InnerGenerator> inner_generators(const LoopTable & loop)
{
    auto n = static_cast<Element>(loop.order());
    std::vector<InnerGenerator> all;
    all.reserve(static_cast<std::size_t>(n + 2 * n * n));
    std::vector<Element> image(static_cast<std::size_t>(n));
    using F = InnerGenerator::Family;
    for (Element x = 0; x < n; ++x) {
        for (Element z = 0; z < n; ++z)
            image[static_cast<std::size_t>(z)] = loop.rdiv(loop.mul(x, z), x);
        all.push_back({PermutationMap(image), F::RinvL, x, -1});
    }
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
            auto xy = loop.mul(x, y);
            for (Element z = 0; z < n; ++z)
                image[static_cast<std::size_t>(z)] = loop.ldiv(xy, loop.mul(x, loop.mul(y, z)));
            all.push_back({PermutationMap(image), F::LinvLL, x, y});
        }
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
            auto yx = loop.mul(y, x);
            for (Element z = 0; z < n; ++z)
                image[static_cast<std::size_t>(z)] = loop.rdiv(loop.mul(loop.mul(z, y), x), yx);
            all.push_back({PermutationMap(image), F::RinvRR, x, y});
        }

    std::vector<InnerGenerator> result;
    std::map<std::vector<Element>, bool> seen;
    for (auto & g : all) {
        if (g.map(loop.neutral()) != loop.neutral())
            throw LoopError(ErrorKind::PreconditionFailed, "inner generator moves the neutral element");
        std::vector<Element> key(g.map.image().begin(), g.map.image().end());
        if (seen.emplace(std::move(key), true).second)
            result.push_back(std::move(g));
    }
    return result;
}

CheckResult is_normal(const LoopTable & loop, const Subloop & sub)
{
    return is_normal(loop, sub, inner_generators(loop));
}

CheckResult is_normal(const LoopTable & loop, const Subloop & sub, std::span<const InnerGenerator> generators)
{
    auto members = sub.members().members();
    for (auto & g : generators)
        for (auto a : members) {
            auto image = g.map(a);
            if (! sub.members().contains(image)) {
                Witness w;
                w.assignment = {{"x", g.x}};
                if (g.y >= 0)
                    w.assignment.emplace_back("y", g.y);
                w.assignment.emplace_back("a", a);
                w.lhs = image;
                w.rhs = -1;
                w.equation = g.describe(loop.table()) + " maps " + loop.label(a) + " to " + loop.label(image)
                    + " outside the subloop";
                return CheckResult{false, std::move(w), 1};
            }
        }
    return CheckResult{};
}

Quotient quotient(const LoopTable & loop, const Subloop & sub)
{
    auto n = loop.order();
    auto members = sub.members().members();
    std::vector<Element> coset_of(n, -1);
    std::vector<ElementSet> cosets;
    for (std::size_t x = 0; x < n; ++x) {
        if (coset_of[x] >= 0)
            continue;
        ElementSet c(n);
        for (auto a : members)
            c.insert(loop.mul(static_cast<Element>(x), a));
        auto id = static_cast<Element>(cosets.size());
        for (auto y : c.members()) {
            if (coset_of[static_cast<std::size_t>(y)] >= 0)
                throw LoopError(ErrorKind::NotNormal, "cosets of " + format_labels(loop.table(), sub.members())
                        + " overlap: " + loop.label(y) + " lies in two distinct cosets");
            coset_of[static_cast<std::size_t>(y)] = id;
        }
        cosets.push_back(std::move(c));
    }
    // every coset yS must equal the coset of y
    for (std::size_t y = 0; y < n; ++y)
        for (auto a : members)
            if (coset_of[static_cast<std::size_t>(loop.mul(static_cast<Element>(y), a))] != coset_of[y])
                throw LoopError(ErrorKind::NotNormal, "coset of " + loop.label(static_cast<Element>(y))
                        + " is not a block of the partition");

    auto k = cosets.size();
    std::vector<Element> entries(k * k, -1);
    std::vector<Element> witness_x(k * k, -1), witness_y(k * k, -1);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto cx = static_cast<std::size_t>(coset_of[x]), cy = static_cast<std::size_t>(coset_of[y]);
            auto value = coset_of[static_cast<std::size_t>(loop.mul(static_cast<Element>(x), static_cast<Element>(y)))];
            auto & slot = entries[cx * k + cy];
            if (slot < 0) {
                slot = value;
                witness_x[cx * k + cy] = static_cast<Element>(x);
                witness_y[cx * k + cy] = static_cast<Element>(y);
            }
            else if (slot != value)
                throw LoopError(ErrorKind::NotNormal,
                    "coset product not well defined: " + loop.label(witness_x[cx * k + cy]) + "*"
                        + loop.label(witness_y[cx * k + cy]) + " and " + loop.label(static_cast<Element>(x)) + "*"
                        + loop.label(static_cast<Element>(y)) + " lie in different cosets");
        }

    std::vector<std::string> labels;
    for (auto & c : cosets)
        labels.push_back(format_labels(loop.table(), c));
    return Quotient{LoopTable(CayleyTable(k, std::move(entries), std::move(labels))), std::move(coset_of)};
}

CayleyTable direct_product(std::span<const CayleyTable> factors)
{
    if (factors.empty())
        throw LoopError(ErrorKind::PreconditionFailed, "direct product of no factors");
    std::size_t n = 1;
    for (auto & f : factors)
        n *= f.order();

    auto digits = [&](std::size_t index) {
        std::vector<Element> d(factors.size());
        for (std::size_t i = factors.size(); i-- > 0;) {
            d[i] = static_cast<Element>(index % factors[i].order());
            index /= factors[i].order();
        }
        return d;
    };
    auto compose = [&](const std::vector<Element> & d) {
        std::size_t index = 0;
        for (std::size_t i = 0; i < factors.size(); ++i)
            index = index * factors[i].order() + static_cast<std::size_t>(d[i]);
        return static_cast<Element>(index);
    };

    std::vector<std::vector<Element>> tuples(n);
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        tuples[i] = digits(i);
        std::string l = "(";
        for (std::size_t j = 0; j < factors.size(); ++j) {
            if (j)
                l += ',';
            l += factors[j].label(tuples[i][j]);
        }
        labels[i] = l + ")";
    }
    std::vector<Element> entries(n * n);
    std::vector<Element> d(factors.size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t j = 0; j < factors.size(); ++j)
                d[j] = factors[j].mul(tuples[a][j], tuples[b][j]);
            entries[a * n + b] = compose(d);
        }
    return CayleyTable(n, std::move(entries), std::move(labels));
}

LoopTable direct_product(std::span<const LoopTable> factors)
{
    std::vector<CayleyTable> tables;
    for (auto & f : factors)
        tables.push_back(f.table());
    return LoopTable(direct_product(std::span<const CayleyTable>(tables)));
}

InternalProductReport is_internal_direct_product(const LoopTable & loop, std::span<const Subloop> parts)
{
    InternalProductReport report;
    auto n = loop.order();
    if (parts.empty()) {
        report.failed_condition = "iii";
        report.detail = "no parts";
        return report;
    }
    auto generators = inner_generators(loop);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto r = is_normal(loop, parts[i], generators);
        if (! r.holds) {
            report.failed_condition = "i";
            report.detail = "part " + std::to_string(i + 1) + ": " + r.witness->equation;
            return report;
        }
    }
    ElementSet trivial(n, {loop.neutral()});
    for (std::size_t i = 0; i < parts.size(); ++i) {
        ElementSet others(n);
        for (std::size_t j = 0; j < parts.size(); ++j)
            if (j != i)
                others = others | parts[j].members();
        auto generated = generated_subloop(loop, others);
        auto meet = parts[i].members() & generated.members();
        if (! (meet == trivial)) {
            report.failed_condition = "ii";
            report.detail = "part " + std::to_string(i + 1) + " meets the others in "
                + format_labels(loop.table(), meet);
            return report;
        }
    }
    ElementSet all(n);
    for (auto & p : parts)
        all = all | p.members();
    if (! (generated_subloop(loop, all).members() == ElementSet::full(n))) {
        report.failed_condition = "iii";
        report.detail = "parts generate a proper subloop";
        return report;
    }

    std::vector<LoopTable> factors;
    std::vector<std::vector<Element>> embeddings;
    for (auto & p : parts) {
        factors.push_back(p.as_loop());
        embeddings.push_back(p.embedding());
    }
    auto external = direct_product(std::span<const LoopTable>(factors));
    if (external.order() != n) {
        report.failed_condition = "iii";
        report.detail = "order of the external product differs";
        return report;
    }

    // (a1, ..., ak) -> ((a1 a2) a3) ...
    std::vector<Element> phi(n);
    std::vector<bool> hit(n, false);
    bool bijective = true;
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t rest = idx;
        std::vector<Element> d(parts.size());
        for (std::size_t j = parts.size(); j-- > 0;) {
            d[j] = static_cast<Element>(rest % factors[j].order());
            rest /= factors[j].order();
        }
        Element value = embeddings[0][static_cast<std::size_t>(d[0])];
        for (std::size_t j = 1; j < parts.size(); ++j)
            value = loop.mul(value, embeddings[j][static_cast<std::size_t>(d[j])]);
        phi[idx] = value;
        if (hit[static_cast<std::size_t>(value)])
            bijective = false;
        hit[static_cast<std::size_t>(value)] = true;
    }
    if (bijective && is_homomorphism(external.table(), loop.table(), phi))
        report.isomorphism = PermutationMap(std::move(phi));
    else
        report.isomorphism = is_isomorphic(external, loop);
    if (! report.isomorphism) {
        report.failed_condition = "iso";
        report.detail = "external product is not isomorphic to the loop";
        return report;
    }
    report.external = std::move(external);
    report.holds = true;
    return report;
}

} // namespace loopkit
