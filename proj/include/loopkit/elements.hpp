#pragma once

#include <loopkit/table.hpp>

#include <array>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loopkit {

enum class ElementClassId { M0, M1, M2, M3, C0, NUCLEUS, CENTER, IDEM, UNI0 };

std::span<const ElementClassId> all_element_classes();
std::string_view tag(ElementClassId id);
std::optional<ElementClassId> parse_class_tag(std::string_view tag);

/// Defining equations in the variables c (the element under test), x and y.
std::span<const std::string> class_equations(ElementClassId id);

/// Elements c for which every defining equation of the class holds for all x, y.
/// UNI0 needs an idempotent base (throws BadBase otherwise); for a loop it defaults to the neutral.
ElementSet element_class(const CayleyTable & table, ElementClassId id, std::optional<Element> base = std::nullopt);
ElementSet element_class(const LoopTable & loop, ElementClassId id, std::optional<Element> base = std::nullopt);

/// Elements satisfying only the index-th defining equation of the class.
ElementSet equation_solutions(const CayleyTable & table, ElementClassId id, std::size_t index);

/// {a | a x = x a for all x}.
ElementSet commutant(const CayleyTable & table);

/// Thread-safe memo of the element classes of one loop.
class ElementClasses {
public:
    explicit ElementClasses(const LoopTable & loop);

    const ElementSet & operator[](ElementClassId id) const;
    const LoopTable & loop() const noexcept { return _loop; }

private:
    const LoopTable & _loop;
    mutable std::array<std::once_flag, 9> _once;
    mutable std::array<ElementSet, 9> _sets;
};

struct ClassRelation {
    std::string statement;
    bool holds;
};

/// Pairwise equality and inclusion among M0..M3, C0, nucleus and center, plus the intersection
/// relations M0∩M2 = M0∩M3 and M0∩C0 = center.
std::vector<ClassRelation> class_equalities(const LoopTable & loop);
std::vector<ClassRelation> class_equalities(const ElementClasses & classes);

} // namespace loopkit
