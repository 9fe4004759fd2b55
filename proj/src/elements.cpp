#include <loopkit/elements.hpp>
#include <loopkit/identities.hpp>

#include <algorithm>
#include <map>

namespace loopkit {

namespace {
    constexpr std::array class_tags{
        std::pair{ElementClassId::M0, "m0"},
        std::pair{ElementClassId::M1, "m1"},
        std::pair{ElementClassId::M2, "m2"},
        std::pair{ElementClassId::M3, "m3"},
        std::pair{ElementClassId::C0, "c0"},
        std::pair{ElementClassId::NUCLEUS, "nucleus"},
        std::pair{ElementClassId::CENTER, "center"},
        std::pair{ElementClassId::IDEM, "idem"},
        std::pair{ElementClassId::UNI0, "uni0"},
    };

    constexpr auto all_ids = [] {
        std::array<ElementClassId, class_tags.size()> result{};
        for (std::size_t i = 0; i < class_tags.size(); ++i)
            result[i] = class_tags[i].first;
        return result;
    }();

    // The base element of UNI0 is passed as the variable b.
    const std::map<ElementClassId, std::vector<std::string>> & equation_texts()
    {
        static const std::map<ElementClassId, std::vector<std::string>> texts{
            {ElementClassId::M0, {"(c*(x*y))*c = (c*x)*(y*c)", "c*(x*(c*y)) = ((c*x)*c)*y", "((y*c)*x)*c = y*((c*x)*c)"}},
            {ElementClassId::M1, {"x*(c*(x*y)) = ((x*c)*x)*y", "((y*x)*c)*x = y*((x*c)*x)"}},
            {ElementClassId::M2, {"(x*c)*(y*x) = (x*(c*y))*x", "((x*y)*x)*c = x*(y*(x*c))"}},
            {ElementClassId::M3, {"(x*y)*(c*x) = (x*(y*c))*x", "c*((x*y)*x) = ((c*x)*y)*x"}},
            {ElementClassId::C0, {"x*(c*(c*y)) = ((x*c)*c)*y"}},
            {ElementClassId::NUCLEUS, {"c*(x*y) = (c*x)*y", "x*(c*y) = (x*c)*y", "x*(y*c) = (x*y)*c"}},
            {ElementClassId::CENTER,
                {"c*(x*y) = (c*x)*y", "x*(c*y) = (x*c)*y", "x*(y*c) = (x*y)*c", "c*x = x*c"}},
            {ElementClassId::IDEM, {"c*c = c"}},
            {ElementClassId::UNI0, {"c*c = b"}},
        };
        return texts;
    }

    struct CompiledEquation {
        Term lhs, rhs;
        bool uses_xy;
    };

    const std::vector<CompiledEquation> & compiled(ElementClassId id)
    {
        static const auto table = [] {
            std::map<ElementClassId, std::vector<CompiledEquation>> result;
            for (auto & [cls, eqs] : equation_texts())
                for (auto & text : eqs) {
                    auto eq = text.find('=');
                    auto lhs = std::string_view(text).substr(0, eq);
                    auto rhs = std::string_view(text).substr(eq + 1);
                    bool uses = text.find('x') != std::string::npos || text.find('y') != std::string::npos;
                    result[cls].push_back({parse_term(lhs, "cxyb"), parse_term(rhs, "cxyb"), uses});
                }
            return result;
        }();
        return table.at(id);
    }

    struct Magma {
        const CayleyTable & t;
        Element mul(Element x, Element y) const { return t.mul(x, y); }
        Element inverse(Element) const { return -1; }
        Element neutral() const { return -1; }
    };

    bool satisfies(const CayleyTable & table, const CompiledEquation & eq, Element c, Element base)
    {
        Magma m{table};
        auto n = static_cast<Element>(table.order());
        std::array<Element, 4> vars{c, 0, 0, base};
        Element limit = eq.uses_xy ? n : 1;
        for (Element x = 0; x < limit; ++x)
            for (Element y = 0; y < limit; ++y) {
                vars[1] = x;
                vars[2] = y;
                if (evaluate(eq.lhs, vars, m) != evaluate(eq.rhs, vars, m))
                    return false;
            }
        return true;
    }

    ElementSet collect(const CayleyTable & table, std::span<const CompiledEquation> eqs, Element base)
    {
        auto n = static_cast<long>(table.order());
        std::vector<char> member(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(dynamic) if (n >= 24)
        for (long c = 0; c < n; ++c) {
            bool ok = true;
            for (auto & eq : eqs)
                if (! (ok = satisfies(table, eq, static_cast<Element>(c), base)))
                    break;
            member[static_cast<std::size_t>(c)] = ok;
        }
        ElementSet result(table.order());
        for (long c = 0; c < n; ++c)
            if (member[static_cast<std::size_t>(c)])
                result.insert(static_cast<Element>(c));
        return result;
    }
}

std::span<const ElementClassId> all_element_classes()
{
    return all_ids;
}

std::string_view tag(ElementClassId id)
{
    for (auto & [i, t] : class_tags)
        if (i == id)
            return t;
    return "?";
}

std::optional<ElementClassId> parse_class_tag(std::string_view t)
{
    for (auto & [i, s] : class_tags)
        if (s == t)
            return i;
    return std::nullopt;
}

std::span<const std::string> class_equations(ElementClassId id)
{
    return equation_texts().at(id);
}

ElementSet element_class(const CayleyTable & table, ElementClassId id, std::optional<Element> base)
{
    Element b = -1;
    if (id == ElementClassId::UNI0) {
        if (! base)
            throw LoopError(ErrorKind::BadBase, "uni0 needs a base idempotent");
        b = *base;
        if (b < 0 || static_cast<std::size_t>(b) >= table.order() || table.mul(b, b) != b)
            throw LoopError(ErrorKind::BadBase, "base is not idempotent");
    }
    return collect(table, compiled(id), b);
}

ElementSet element_class(const LoopTable & loop, ElementClassId id, std::optional<Element> base)
{
    if (id == ElementClassId::UNI0 && ! base)
        base = loop.neutral();
    return element_class(loop.table(), id, base);
}

ElementSet equation_solutions(const CayleyTable & table, ElementClassId id, std::size_t index)
{
    auto & eqs = compiled(id);
    if (index >= eqs.size() || id == ElementClassId::UNI0)
        throw LoopError(ErrorKind::MalformedInput, "no such equation");
    return collect(table, std::span(eqs).subspan(index, 1), -1);
}

ElementSet commutant(const CayleyTable & table)
{
    ElementSet result(table.order());
    auto n = static_cast<Element>(table.order());
    for (Element a = 0; a < n; ++a) {
        bool ok = true;
        for (Element x = 0; x < n && ok; ++x)
            ok = table.mul(a, x) == table.mul(x, a);
        if (ok)
            result.insert(a);
    }
    return result;
}

ElementClasses::ElementClasses(const LoopTable & loop) :
    _loop(loop)
{
}

const ElementSet & ElementClasses::operator[](ElementClassId id) const
{
    auto i = static_cast<std::size_t>(id);
    std::call_once(_once[i], [&] { _sets[i] = element_class(_loop, id); });
    return _sets[i];
}

std::vector<ClassRelation> class_equalities(const LoopTable & loop)
{
    return class_equalities(ElementClasses(loop));
}

std::vector<ClassRelation> class_equalities(const ElementClasses & classes)
{
    using enum ElementClassId;
    constexpr std::array compared{M0, M1, M2, M3, C0, NUCLEUS, CENTER};
    std::vector<ClassRelation> result;
    for (std::size_t i = 0; i < compared.size(); ++i)
        for (std::size_t j = i + 1; j < compared.size(); ++j) {
            auto & a = classes[compared[i]];
            auto & b = classes[compared[j]];
            auto ta = std::string(tag(compared[i])), tb = std::string(tag(compared[j]));
            result.push_back({ta + " = " + tb, a == b});
            result.push_back({ta + " ⊆ " + tb, a.subset_of(b)});
            result.push_back({tb + " ⊆ " + ta, b.subset_of(a)});
        }
    result.push_back({"m0∩m2 = m0∩m3", (classes[M0] & classes[M2]) == (classes[M0] & classes[M3])});
    result.push_back({"m0∩c0 = center", (classes[M0] & classes[C0]) == classes[CENTER]});
    return result;
}

} // namespace loopkit
