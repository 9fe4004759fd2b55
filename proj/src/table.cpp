#include <loopkit/table.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace loopkit {

const char * to_string(ErrorKind kind)
{
    switch (kind) {
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::NotLatin: return "NotLatin";
        case ErrorKind::NoNeutral: return "NoNeutral";
        case ErrorKind::NoInverse: return "NoInverse";
        case ErrorKind::RequirementMissing: return "RequirementMissing";
        case ErrorKind::NotPowerAssociative: return "NotPowerAssociative";
        case ErrorKind::PreconditionFailed: return "PreconditionFailed";
        case ErrorKind::NotNormal: return "NotNormal";
        case ErrorKind::NotTS: return "NotTS";
        case ErrorKind::NotSteiner: return "NotSteiner";
        case ErrorKind::BadBase: return "BadBase";
        case ErrorKind::SpecInvalid: return "SpecInvalid";
    }
    return "Unknown";
}

// ElementSet

ElementSet::ElementSet(std::size_t universe) :
    _universe(universe),
    _words((universe + 63) / 64, 0)
{
}

ElementSet::ElementSet(std::size_t universe, std::initializer_list<Element> members) :
    ElementSet(universe, std::span<const Element>(members.begin(), members.size()))
{
}

ElementSet::ElementSet(std::size_t universe, std::span<const Element> members) :
    ElementSet(universe)
{
    for (auto x : members)
        insert(x);
}

ElementSet ElementSet::full(std::size_t universe)
{
    ElementSet result(universe);
    for (std::size_t i = 0; i < universe; ++i)
        result.insert(static_cast<Element>(i));
    return result;
}

std::size_t ElementSet::size() const noexcept
{
    std::size_t result = 0;
    for (auto w : _words)
        result += static_cast<std::size_t>(std::popcount(w));
    return result;
}

bool ElementSet::contains(Element x) const
{
    if (x < 0 || static_cast<std::size_t>(x) >= _universe)
        return false;
    return (_words[static_cast<std::size_t>(x) / 64] >> (static_cast<std::size_t>(x) % 64)) & 1U;
}

void ElementSet::insert(Element x)
{
    if (x < 0 || static_cast<std::size_t>(x) >= _universe)
        throw LoopError(ErrorKind::MalformedInput, "element " + std::to_string(x) + " outside universe");
    _words[static_cast<std::size_t>(x) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(x) % 64);
}

void ElementSet::erase(Element x)
{
    if (x < 0 || static_cast<std::size_t>(x) >= _universe)
        return;
    _words[static_cast<std::size_t>(x) / 64] &= ~(std::uint64_t{1} << (static_cast<std::size_t>(x) % 64));
}

std::vector<Element> ElementSet::members() const
{
    std::vector<Element> result;
    for (std::size_t i = 0; i < _universe; ++i)
        if (contains(static_cast<Element>(i)))
            result.push_back(static_cast<Element>(i));
    return result;
}

bool ElementSet::subset_of(const ElementSet & other) const
{
    if (_universe != other._universe)
        return false;
    for (std::size_t i = 0; i < _words.size(); ++i)
        if (_words[i] & ~other._words[i])
            return false;
    return true;
}

ElementSet ElementSet::operator&(const ElementSet & other) const
{
    ElementSet result(_universe);
    for (std::size_t i = 0; i < _words.size() && i < other._words.size(); ++i)
        result._words[i] = _words[i] & other._words[i];
    return result;
}

ElementSet ElementSet::operator|(const ElementSet & other) const
{
    ElementSet result(_universe);
    for (std::size_t i = 0; i < _words.size() && i < other._words.size(); ++i)
        result._words[i] = _words[i] | other._words[i];
    return result;
}

// PermutationMap

PermutationMap::PermutationMap(std::vector<Element> image) :
    _image(std::move(image))
{
    std::vector<bool> seen(_image.size(), false);
    for (auto x : _image) {
        if (x < 0 || static_cast<std::size_t>(x) >= _image.size() || seen[static_cast<std::size_t>(x)])
            throw LoopError(ErrorKind::MalformedInput, "permutation image is not a bijection");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

PermutationMap PermutationMap::identity(std::size_t n)
{
    std::vector<Element> image(n);
    std::iota(image.begin(), image.end(), 0);
    return PermutationMap(std::move(image));
}

bool PermutationMap::is_identity() const
{
    for (std::size_t i = 0; i < _image.size(); ++i)
        if (_image[i] != static_cast<Element>(i))
            return false;
    return true;
}

PermutationMap PermutationMap::inverse() const
{
    std::vector<Element> image(_image.size());
    for (std::size_t i = 0; i < _image.size(); ++i)
        image[static_cast<std::size_t>(_image[i])] = static_cast<Element>(i);
    return PermutationMap(std::move(image));
}

PermutationMap operator*(const PermutationMap & a, const PermutationMap & b)
{
    std::vector<Element> image(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        image[i] = a(b(static_cast<Element>(i)));
    return PermutationMap(std::move(image));
}

// CayleyTable

std::vector<std::string> default_labels(std::size_t n)
{
    std::vector<std::string> result;
    result.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        result.push_back(std::to_string(i));
    return result;
}

CayleyTable::CayleyTable(std::size_t n, std::vector<Element> entries, std::vector<std::string> labels) :
    _n(n),
    _entries(std::move(entries))
{
    if (n == 0)
        throw LoopError(ErrorKind::MalformedInput, "order must be positive");
    if (_entries.size() != n * n)
        throw LoopError(ErrorKind::MalformedInput, "expected " + std::to_string(n * n) + " entries");
    if (labels.empty())
        labels = default_labels(n);
    if (labels.size() != n)
        throw LoopError(ErrorKind::MalformedInput, "expected " + std::to_string(n) + " labels");
    {
        auto sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw LoopError(ErrorKind::MalformedInput, "duplicate label");
        for (auto & l : sorted)
            if (l.empty() || l.find_first_of(" \t\r\n") != std::string::npos)
                throw LoopError(ErrorKind::MalformedInput, "labels must be nonempty tokens without whitespace");
    }
    _labels = std::make_shared<const std::vector<std::string>>(std::move(labels));

    _ldiv.assign(n * n, -1);
    _rdiv.assign(n * n, -1);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            auto v = _entries[x * n + y];
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw LoopError(ErrorKind::MalformedInput, "entry out of range");
            auto & l = _ldiv[x * n + static_cast<std::size_t>(v)];
            if (l != -1)
                throw NotLatinError(x + 1, std::nullopt,
                    "row " + std::to_string(x + 1) + " repeats " + label(v));
            l = static_cast<Element>(y);
        }
    }
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            auto v = static_cast<std::size_t>(_entries[x * n + y]);
            auto & r = _rdiv[v * n + y];
            if (r != -1)
                throw NotLatinError(std::nullopt, y + 1,
                    "column " + std::to_string(y + 1) + " repeats " + label(static_cast<Element>(v)));
            r = static_cast<Element>(x);
        }
    }
}

std::optional<Element> CayleyTable::find_label(std::string_view token) const
{
    for (std::size_t i = 0; i < _n; ++i)
        if ((*_labels)[i] == token)
            return static_cast<Element>(i);
    return std::nullopt;
}

CayleyTable CayleyTable::relabeled(std::vector<std::string> labels) const
{
    return CayleyTable(_n, _entries, std::move(labels));
}

bool CayleyTable::operator==(const CayleyTable & other) const
{
    return _n == other._n && _entries == other._entries && *_labels == *other._labels;
}

CayleyTable cyclic_table(std::size_t n)
{
    std::vector<Element> entries(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            entries[x * n + y] = static_cast<Element>((x + y) % n);
    return CayleyTable(n, std::move(entries));
}

// LoopTable

LoopTable::LoopTable(CayleyTable table) :
    _table(std::move(table)),
    _neutral(-1)
{
    auto n = _table.order();
    for (std::size_t e = 0; e < n && _neutral < 0; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) {
            auto ex = static_cast<Element>(x);
            ok = _table.mul(static_cast<Element>(e), ex) == ex && _table.mul(ex, static_cast<Element>(e)) == ex;
        }
        if (ok)
            _neutral = static_cast<Element>(e);
    }
    if (_neutral < 0)
        throw LoopError(ErrorKind::NoNeutral, "no element is both a left and a right identity");

    std::vector<Element> inv(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto ex = static_cast<Element>(x);
        auto right = _table.ldiv(ex, _neutral);
        auto left = _table.rdiv(_neutral, ex);
        if (left != right)
            return;
        inv[x] = right;
    }
    _inverses = std::move(inv);
}

Element LoopTable::inverse(Element x) const
{
    if (! _inverses)
        throw LoopError(ErrorKind::NoInverse, "left and right inverses differ");
    return (*_inverses)[static_cast<std::size_t>(x)];
}

LoopTable find_neutral(const CayleyTable & table)
{
    return LoopTable(table);
}

PermutationMap translation(const CayleyTable & table, Element x, Side side)
{
    std::vector<Element> image(table.order());
    for (std::size_t y = 0; y < table.order(); ++y)
        image[y] = side == Side::Left ? table.mul(x, static_cast<Element>(y)) : table.mul(static_cast<Element>(y), x);
    return PermutationMap(std::move(image));
}

Element power(const LoopTable & loop, Element x, long k)
{
    if (k < 0) {
        x = loop.inverse(x);
        k = -k;
    }
    Element result = loop.neutral();
    for (long i = 0; i < k; ++i)
        result = loop.mul(x, result);
    return result;
}

// Isomorphism

namespace {
    // Period of the sequence x, x x, x (x x), ... back to the neutral, or 0 if it never returns.
    std::vector<int> left_power_periods(const LoopTable & l)
    {
        auto n = l.order();
        std::vector<int> result(n, 0);
        for (std::size_t x = 0; x < n; ++x) {
            Element p = static_cast<Element>(x);
            for (std::size_t k = 1; k <= n; ++k) {
                if (p == l.neutral()) {
                    result[x] = static_cast<int>(k);
                    break;
                }
                p = l.mul(static_cast<Element>(x), p);
            }
        }
        return result;
    }

    std::vector<int> squares_fixed(const CayleyTable & t)
    {
        // number of y with y*y == x, a relabeling invariant
        std::vector<int> result(t.order(), 0);
        for (std::size_t y = 0; y < t.order(); ++y)
            ++result[static_cast<std::size_t>(t.mul(static_cast<Element>(y), static_cast<Element>(y)))];
        return result;
    }

    struct IsoSearch {
        const CayleyTable & a;
        const CayleyTable & b;
        std::vector<long> inv_a, inv_b;
        std::vector<Element> phi;
        std::vector<bool> used;
        std::size_t n;

        bool assign(Element x, Element y, std::vector<Element> & trail)
        {
            if (phi[x] == y)
                return true;
            if (phi[x] != -1 || used[y] || inv_a[x] != inv_b[y])
                return false;
            phi[x] = y;
            used[y] = true;
            trail.push_back(x);
            return true;
        }

        bool propagate(std::vector<Element> & trail)
        {
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t u = 0; u < n; ++u) {
                    if (phi[u] < 0)
                        continue;
                    for (std::size_t v = 0; v < n; ++v) {
                        if (phi[v] < 0)
                            continue;
                        auto uv = a.mul(static_cast<Element>(u), static_cast<Element>(v));
                        auto target = b.mul(phi[u], phi[v]);
                        if (phi[uv] == target)
                            continue;
                        if (! assign(uv, target, trail))
                            return false;
                        changed = true;
                    }
                }
            }
            return true;
        }

        void undo(std::vector<Element> & trail)
        {
            for (auto x : trail) {
                used[phi[x]] = false;
                phi[x] = -1;
            }
            trail.clear();
        }

        bool search()
        {
            auto next = std::find(phi.begin(), phi.end(), -1);
            if (next == phi.end())
                return true;
            auto x = static_cast<Element>(next - phi.begin());
            for (std::size_t y = 0; y < n; ++y) {
                std::vector<Element> trail;
                if (assign(x, static_cast<Element>(y), trail) && propagate(trail) && search())
                    return true;
                undo(trail);
            }
            return false;
        }
    };
}

bool is_homomorphism(const CayleyTable & a, const CayleyTable & b, std::span<const Element> phi)
{
    if (a.order() != b.order() || phi.size() != a.order())
        return false;
    auto n = a.order();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (phi[static_cast<std::size_t>(a.mul(static_cast<Element>(x), static_cast<Element>(y)))]
                != b.mul(phi[x], phi[y]))
                return false;
    return true;
}

namespace {
    std::optional<PermutationMap> iso_search(const CayleyTable & a, const CayleyTable & b, std::vector<long> inv_a,
        std::vector<long> inv_b, std::optional<std::pair<Element, Element>> seed)
    {
        auto n = a.order();
        {
            auto sorted_a = inv_a, sorted_b = inv_b;
            std::sort(sorted_a.begin(), sorted_a.end());
            std::sort(sorted_b.begin(), sorted_b.end());
            if (sorted_a != sorted_b)
                return std::nullopt;
        }
        IsoSearch s{a, b, std::move(inv_a), std::move(inv_b), std::vector<Element>(n, -1), std::vector<bool>(n, false), n};
        std::vector<Element> trail;
        if (seed && ! s.assign(seed->first, seed->second, trail))
            return std::nullopt;
        if (! s.propagate(trail) || ! s.search())
            return std::nullopt;
        if (! is_homomorphism(a, b, s.phi))
            return std::nullopt;
        return PermutationMap(std::move(s.phi));
    }
}

std::optional<PermutationMap> is_isomorphic(const LoopTable & a, const LoopTable & b)
{
    auto n = a.order();
    if (n != b.order())
        return std::nullopt;
    auto pa = left_power_periods(a), pb = left_power_periods(b);
    auto sa = squares_fixed(a.table()), sb = squares_fixed(b.table());
    std::vector<long> inv_a(n), inv_b(n);
    for (std::size_t x = 0; x < n; ++x) {
        inv_a[x] = pa[x] * 64L + sa[x];
        inv_b[x] = pb[x] * 64L + sb[x];
    }
    return iso_search(a.table(), b.table(), std::move(inv_a), std::move(inv_b), std::pair{a.neutral(), b.neutral()});
}

std::optional<PermutationMap> is_isomorphic(const CayleyTable & a, const CayleyTable & b)
{
    auto n = a.order();
    if (n != b.order())
        return std::nullopt;
    auto sa = squares_fixed(a), sb = squares_fixed(b);
    std::vector<long> inv_a(n), inv_b(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto ex = static_cast<Element>(x);
        inv_a[x] = sa[x] * 2L + (a.mul(ex, ex) == ex);
        inv_b[x] = sb[x] * 2L + (b.mul(ex, ex) == ex);
    }
    return iso_search(a, b, std::move(inv_a), std::move(inv_b), std::nullopt);
}

// Text format

namespace {
    std::string_view trim(std::string_view s)
    {
        auto b = s.find_first_not_of(" \t\r");
        if (b == std::string_view::npos)
            return {};
        auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::vector<std::string> split_tokens(std::string_view s)
    {
        std::vector<std::string> result;
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
                ++i;
            auto j = i;
            while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
                ++j;
            if (j > i)
                result.emplace_back(s.substr(i, j - i));
            i = j;
        }
        return result;
    }

    std::optional<std::string_view> directive(std::string_view line, std::string_view key)
    {
        // "# key: value"
        auto body = trim(line.substr(1));
        if (body.substr(0, key.size()) != key)
            return std::nullopt;
        body = body.substr(key.size());
        if (body.empty() || body.front() != ':')
            return std::nullopt;
        return trim(body.substr(1));
    }

    template <typename F>
    void for_each_line(std::string_view text, F && f)
    {
        std::size_t pos = 0;
        std::size_t line_no = 0;
        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            f(text.substr(pos, end - pos), ++line_no);
            pos = end + 1;
        }
    }
}

CayleyTable parse_table(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string_view>> significant;
    std::optional<std::vector<std::string>> alphabet;
    for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
        auto line = trim(raw);
        if (line.empty())
            return;
        if (line.front() == '#') {
            if (auto v = directive(line, "labels"))
                alphabet = split_tokens(*v);
            return;
        }
        significant.emplace_back(line_no, line);
    });

    if (significant.empty())
        throw LoopError(ErrorKind::MalformedInput, "missing order line");
    std::size_t n = 0;
    {
        auto s = significant.front().second;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0)
            throw LoopError(ErrorKind::MalformedInput, "first line must be a positive integer order");
    }
    if (significant.size() != n + 1)
        throw LoopError(ErrorKind::MalformedInput,
            "expected " + std::to_string(n) + " rows, found " + std::to_string(significant.size() - 1));

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 1; i <= n; ++i) {
        auto tokens = split_tokens(significant[i].second);
        if (tokens.size() != n)
            throw LoopError(ErrorKind::MalformedInput, "line " + std::to_string(significant[i].first) + ": expected "
                    + std::to_string(n) + " tokens, found " + std::to_string(tokens.size()));
        rows.push_back(std::move(tokens));
    }

    auto labels = alphabet ? *alphabet : rows.front();
    if (labels.size() != n)
        throw LoopError(ErrorKind::MalformedInput, "labels directive must list " + std::to_string(n) + " tokens");
    std::unordered_map<std::string, Element> index;
    for (std::size_t i = 0; i < n; ++i)
        if (! index.emplace(labels[i], static_cast<Element>(i)).second)
            throw LoopError(ErrorKind::MalformedInput, "duplicate label '" + labels[i] + "'");

    std::vector<Element> entries;
    entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto & tok : rows[i]) {
            auto it = index.find(tok);
            if (it == index.end())
                throw LoopError(ErrorKind::MalformedInput,
                    "line " + std::to_string(significant[i + 1].first) + ": unknown token '" + tok + "'");
            entries.push_back(it->second);
        }
    }
    return CayleyTable(n, std::move(entries), std::move(labels));
}

std::optional<std::string> parse_base_annotation(std::string_view text)
{
    std::optional<std::string> result;
    for_each_line(text, [&](std::string_view raw, std::size_t) {
        auto line = trim(raw);
        if (! line.empty() && line.front() == '#')
            if (auto v = directive(line, "base"))
                result = std::string(*v);
    });
    return result;
}

std::string serialize_table(const CayleyTable & table, std::optional<Element> base)
{
    std::ostringstream out;
    auto n = table.order();
    bool first_row_is_alphabet = true;
    for (std::size_t j = 0; j < n; ++j)
        first_row_is_alphabet = first_row_is_alphabet && table.mul(0, static_cast<Element>(j)) == static_cast<Element>(j);
    if (! first_row_is_alphabet) {
        out << "# labels:";
        for (auto & l : table.labels())
            out << ' ' << l;
        out << '\n';
    }
    if (base)
        out << "# base: " << table.label(*base) << '\n';
    out << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j)
                out << ' ';
            out << table.label(table.mul(static_cast<Element>(i), static_cast<Element>(j)));
        }
        out << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw LoopError(ErrorKind::MalformedInput, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CayleyTable read_table_file(const std::string & path)
{
    return parse_table(read_text_file(path));
}

std::string format_labels(const CayleyTable & table, const ElementSet & set)
{
    std::string out = "{";
    bool first = true;
    for (auto x : set.members()) {
        if (! first)
            out += ',';
        out += table.label(x);
        first = false;
    }
    return out + "}";
}

} // namespace loopkit
