#pragma once

#include <loopkit/error.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loopkit {

/// Index of an element of a finite magma, 0..n-1.
using Element = std::int32_t;

/// Subset of {0..n-1}, stored as a bitset.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::size_t universe);
    ElementSet(std::size_t universe, std::initializer_list<Element> members);
    ElementSet(std::size_t universe, std::span<const Element> members);

    static ElementSet full(std::size_t universe);

    std::size_t universe() const noexcept { return _universe; }
    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    bool contains(Element x) const;
    void insert(Element x);
    void erase(Element x);

    std::vector<Element> members() const;

    bool subset_of(const ElementSet & other) const;
    ElementSet operator&(const ElementSet & other) const;
    ElementSet operator|(const ElementSet & other) const;
    bool operator==(const ElementSet & other) const = default;

private:
    std::size_t _universe = 0;
    std::vector<std::uint64_t> _words;
};

/// A bijection of {0..n-1}.
class PermutationMap {
public:
    PermutationMap() = default;
    explicit PermutationMap(std::vector<Element> image);

    static PermutationMap identity(std::size_t n);

    std::size_t size() const noexcept { return _image.size(); }
    Element operator()(Element x) const { return _image[static_cast<std::size_t>(x)]; }
    std::span<const Element> image() const noexcept { return _image; }

    bool is_identity() const;
    PermutationMap inverse() const;

    /// (a * b)(x) = a(b(x)).
    friend PermutationMap operator*(const PermutationMap & a, const PermutationMap & b);
    bool operator==(const PermutationMap & other) const = default;
    auto operator<=>(const PermutationMap & other) const = default;

private:
    std::vector<Element> _image;
};

/// Row/column indices are 1-based, as they appear in a table file.
class NotLatinError : public LoopError {
public:
    NotLatinError(std::optional<std::size_t> row, std::optional<std::size_t> column, const std::string & message) :
        LoopError(ErrorKind::NotLatin, message),
        row(row),
        column(column)
    {
    }

    std::optional<std::size_t> row;
    std::optional<std::size_t> column;
};

/// Immutable n x n Latin square with display labels. Division tables are cached at construction.
class CayleyTable {
public:
    /// entries are row-major; throws NotLatinError or MalformedInput.
    CayleyTable(std::size_t n, std::vector<Element> entries, std::vector<std::string> labels = {});

    std::size_t order() const noexcept { return _n; }

    Element mul(Element x, Element y) const { return _entries[index(x, y)]; }
    /// The unique z with x z = b.
    Element ldiv(Element x, Element b) const { return _ldiv[index(x, b)]; }
    /// The unique z with z y = b.
    Element rdiv(Element b, Element y) const { return _rdiv[index(b, y)]; }

    std::span<const Element> entries() const noexcept { return _entries; }
    std::span<const Element> row(Element x) const
    {
        return std::span<const Element>(_entries).subspan(static_cast<std::size_t>(x) * _n, _n);
    }

    const std::string & label(Element x) const { return (*_labels)[static_cast<std::size_t>(x)]; }
    const std::vector<std::string> & labels() const noexcept { return *_labels; }
    std::optional<Element> find_label(std::string_view token) const;

    /// Same entries, new labels.
    CayleyTable relabeled(std::vector<std::string> labels) const;

    bool operator==(const CayleyTable & other) const;

private:
    std::size_t index(Element x, Element y) const
    {
        return static_cast<std::size_t>(x) * _n + static_cast<std::size_t>(y);
    }

    std::size_t _n;
    std::vector<Element> _entries;
    std::vector<Element> _ldiv;
    std::vector<Element> _rdiv;
    std::shared_ptr<const std::vector<std::string>> _labels;
};

/// A Cayley table together with its neutral element and, when every left inverse equals the
/// corresponding right inverse, the two-sided inverse map.
class LoopTable {
public:
    /// Locates the neutral element; throws NoNeutral.
    explicit LoopTable(CayleyTable table);

    const CayleyTable & table() const noexcept { return _table; }
    std::size_t order() const noexcept { return _table.order(); }
    Element neutral() const noexcept { return _neutral; }

    Element mul(Element x, Element y) const { return _table.mul(x, y); }
    Element ldiv(Element x, Element b) const { return _table.ldiv(x, b); }
    Element rdiv(Element b, Element y) const { return _table.rdiv(b, y); }
    const std::string & label(Element x) const { return _table.label(x); }

    bool has_inverses() const noexcept { return _inverses.has_value(); }
    /// Throws NoInverse when left and right inverses differ somewhere.
    Element inverse(Element x) const;
    const std::optional<std::vector<Element>> & inverses() const noexcept { return _inverses; }

    bool operator==(const LoopTable & other) const { return _table == other._table; }

private:
    CayleyTable _table;
    Element _neutral;
    std::optional<std::vector<Element>> _inverses;
};

LoopTable find_neutral(const CayleyTable & table);

enum class Side { Left, Right };

/// Left: y -> x y (row x). Right: y -> y x (column x).
PermutationMap translation(const CayleyTable & table, Element x, Side side);

/// x^k as x (x (... x)); x^0 is the neutral element, negative k goes through the inverse.
Element power(const LoopTable & loop, Element x, long k);

/// Lexicographically least isomorphism a -> b, if any.
std::optional<PermutationMap> is_isomorphic(const LoopTable & a, const LoopTable & b);
/// Quasigroup version without a fixed neutral element.
std::optional<PermutationMap> is_isomorphic(const CayleyTable & a, const CayleyTable & b);

/// Checks that phi is a bijective homomorphism a -> b.
bool is_homomorphism(const CayleyTable & a, const CayleyTable & b, std::span<const Element> phi);

CayleyTable parse_table(std::string_view text);
std::string serialize_table(const CayleyTable & table, std::optional<Element> base = std::nullopt);

/// Value of a "# base: <label>" annotation, if present.
std::optional<std::string> parse_base_annotation(std::string_view text);

CayleyTable read_table_file(const std::string & path);
std::string read_text_file(const std::string & path);

/// Z_n under addition mod n, labels "0".."n-1".
CayleyTable cyclic_table(std::size_t n);

std::vector<std::string> default_labels(std::size_t n);

std::string format_labels(const CayleyTable & table, const ElementSet & set);

} // namespace loopkit
