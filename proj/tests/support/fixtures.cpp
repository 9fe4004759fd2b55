#include "fixtures.hpp"

#include <loopkit/subloops.hpp>

#include <algorithm>
#include <numeric>

namespace fixtures {

using namespace loopkit;

const char * const example7_text = R"(7
1 2 3 4 5 6 7
2 3 1 6 7 5 4
3 1 2 7 6 4 5
4 7 6 5 1 2 3
5 6 7 1 4 3 2
6 4 5 3 2 7 1
7 5 4 2 3 1 6
)";

CayleyTable example7()
{
    return parse_table(example7_text);
}

LoopTable example7_loop()
{
    return LoopTable(example7());
}

LoopTable cyclic(std::size_t n)
{
    return LoopTable(cyclic_table(n));
}

LoopTable product(std::initializer_list<LoopTable> factors)
{
    std::vector<LoopTable> list(factors);
    return direct_product(std::span<const LoopTable>(list));
}

LoopTable klein()
{
    return product({cyclic(2), cyclic(2)});
}

LoopTable elementary_abelian3(int k)
{
    std::vector<LoopTable> list(static_cast<std::size_t>(k), cyclic(3));
    return direct_product(std::span<const LoopTable>(list));
}

CayleyTable affine_sts9_quasigroup()
{
    std::vector<Element> entries(81);
    for (int x = 0; x < 9; ++x)
        for (int y = 0; y < 9; ++y) {
            int a = (6 - x / 3 - y / 3) % 3, b = (6 - x % 3 - y % 3) % 3;
            entries[static_cast<std::size_t>(x * 9 + y)] = a * 3 + b;
        }
    return CayleyTable(9, entries, {"a", "b", "c", "d", "f", "g", "h", "i", "j"});
}

LoopTable steiner10()
{
    return steiner_adjoin(affine_sts9_quasigroup());
}

TripleSystem fano()
{
    return parse_triple_system("1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n");
}

LoopTable cml81()
{
    auto digits = [](int v) { return std::array<int, 4>{v / 27, v / 9 % 3, v / 3 % 3, v % 3}; };
    std::vector<Element> entries(81 * 81);
    for (int x = 0; x < 81; ++x)
        for (int y = 0; y < 81; ++y) {
            auto a = digits(x), b = digits(y);
            int twist = ((a[3] - b[3] + 3) * (a[1] * b[2] - a[2] * b[1] + 9)) % 3;
            int z0 = (a[0] + b[0] + twist) % 3;
            int z = z0 * 27 + (a[1] + b[1]) % 3 * 9 + (a[2] + b[2]) % 3 * 3 + (a[3] + b[3]) % 3;
            entries[static_cast<std::size_t>(x * 81 + y)] = z;
        }
    return LoopTable(CayleyTable(81, entries));
}

CayleyTable relabel(const CayleyTable & t, const std::vector<Element> & p)
{
    auto n = t.order();
    std::vector<Element> entries(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            entries[static_cast<std::size_t>(p[x]) * n + static_cast<std::size_t>(p[y])]
                = p[static_cast<std::size_t>(t.mul(static_cast<Element>(x), static_cast<Element>(y)))];
    std::vector<std::string> labels(n);
    for (std::size_t x = 0; x < n; ++x)
        labels[static_cast<std::size_t>(p[x])] = t.label(static_cast<Element>(x));
    return CayleyTable(n, entries, labels);
}

std::vector<Element> random_permutation(std::size_t n, std::mt19937 & rng, bool fix_zero)
{
    std::vector<Element> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin() + (fix_zero ? 1 : 0), p.end(), rng);
    return p;
}

Grid grid(const CayleyTable & t)
{
    auto n = t.order();
    Grid g(n, std::vector<int>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            g[x][y] = t.mul(static_cast<Element>(x), static_cast<Element>(y));
    return g;
}

std::optional<int> naive_neutral(const Grid & g)
{
    int n = static_cast<int>(g.size());
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = g[e][x] == x && g[x][e] == x;
        if (ok)
            return e;
    }
    return std::nullopt;
}

bool naive_latin(const Grid & g)
{
    int n = static_cast<int>(g.size());
    for (int i = 0; i < n; ++i) {
        std::vector<bool> row(n, false), col(n, false);
        for (int j = 0; j < n; ++j) {
            int r = g[i][j], c = g[j][i];
            if (r < 0 || r >= n || c < 0 || c >= n || row[r] || col[c])
                return false;
            row[r] = col[c] = true;
        }
    }
    return true;
}

bool naive_identity(const Grid & g, IdentityId id)
{
    int n = static_cast<int>(g.size());
    auto m = [&](int a, int b) { return g[a][b]; };
    auto e = naive_neutral(g);
    std::vector<int> inv(n, -1);
    bool inverses = false;
    if (e) {
        inverses = true;
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y)
                if (g[x][y] == *e)
                    inv[x] = y;
            if (g[inv[x]][x] != *e)
                inverses = false;
        }
    }
    auto i = [&](int a) { return inv[a]; };
    auto all2 = [&](auto f) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (! f(x, y))
                    return false;
        return true;
    };
    auto all3 = [&](auto f) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (! f(x, y, z))
                        return false;
        return true;
    };
    switch (id) {
        case IdentityId::LIP: return inverses && all2([&](int x, int y) { return m(i(x), m(x, y)) == y; });
        case IdentityId::RIP: return inverses && all2([&](int x, int y) { return m(m(x, y), i(y)) == x; });
        case IdentityId::AAIP: return inverses && all2([&](int x, int y) { return i(m(x, y)) == m(i(y), i(x)); });
        case IdentityId::IP:
            return naive_identity(g, IdentityId::LIP) && naive_identity(g, IdentityId::RIP);
        case IdentityId::LALT: return all2([&](int x, int y) { return m(x, m(x, y)) == m(m(x, x), y); });
        case IdentityId::RALT: return all2([&](int x, int y) { return m(m(x, y), y) == m(x, m(y, y)); });
        case IdentityId::FLEX: return all2([&](int x, int y) { return m(x, m(y, x)) == m(m(x, y), x); });
        case IdentityId::C:
            return all3([&](int x, int y, int z) { return m(x, m(y, m(y, z))) == m(m(m(x, y), y), z); });
        case IdentityId::MFG1:
            return all3([&](int x, int y, int z) { return m(x, m(m(y, z), x)) == m(m(x, y), m(z, x)); });
        case IdentityId::MFG2:
            return all3([&](int x, int y, int z) { return m(m(x, m(y, z)), x) == m(m(x, y), m(z, x)); });
        case IdentityId::MFG3:
            return all3([&](int x, int y, int z) { return m(x, m(y, m(x, z))) == m(m(m(x, y), x), z); });
        case IdentityId::MFG4:
            return all3([&](int x, int y, int z) { return m(m(m(z, x), y), x) == m(z, m(x, m(y, x))); });
        case IdentityId::RIF1:
            return all3([&](int x, int y, int z) { return m(m(m(x, y), z), m(x, y)) == m(x, m(y, m(m(z, x), y))); });
        case IdentityId::RIF2:
            return all3([&](int x, int y, int z) { return m(m(x, y), m(z, m(x, y))) == m(m(m(x, m(y, z)), x), y); });
        case IdentityId::ARIF1:
            return all3([&](int x, int y, int z) { return m(x, m(m(m(y, x), y), z)) == m(m(m(x, y), x), m(y, z)); });
        case IdentityId::ARIF2:
            return all3([&](int x, int y, int z) { return m(m(z, m(m(y, x), y)), x) == m(m(z, y), m(m(x, y), x)); });
        case IdentityId::CRIF:
        case IdentityId::Q2:
            return all3([&](int x, int y, int z) {
                auto xy = m(x, y);
                return m(x, m(m(y, y), m(x, z))) == m(m(xy, xy), z);
            });
        case IdentityId::TS: return all2([&](int x, int y) { return m(x, y) == m(y, x) && m(x, m(x, y)) == y; });
        case IdentityId::WIP: return inverses && all2([&](int x, int y) { return m(x, i(m(y, x))) == i(y); });
        case IdentityId::DIST_L:
            return all3([&](int x, int y, int z) { return m(x, m(y, z)) == m(m(x, y), m(x, z)); });
        case IdentityId::DIST_R:
            return all3([&](int x, int y, int z) { return m(m(x, y), z) == m(m(x, z), m(y, z)); });
        case IdentityId::COMM: return all2([&](int x, int y) { return m(x, y) == m(y, x); });
        case IdentityId::UNIPOTENT: return all2([&](int x, int y) { return m(x, x) == m(y, y); });
        case IdentityId::IDEMPOTENT: return all2([&](int x, int) { return m(x, x) == x; });
        case IdentityId::Q1: return all2([&](int x, int) { return m(m(x, x), m(x, x)) == m(x, x); });
        case IdentityId::ASSOC:
            return all3([&](int x, int y, int z) { return m(x, m(y, z)) == m(m(x, y), z); });
    }
    return false;
}

std::uint64_t naive_reduced_latin_count(int n)
{
    // rows are permutations; row r starts with r; columns must stay Latin
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<int>> rows{perms.front()};
    std::uint64_t count = 0;
    auto rec = [&](auto & self, int r) -> void {
        if (r == n) {
            ++count;
            return;
        }
        for (auto & q : perms) {
            if (q[0] != r)
                continue;
            bool ok = true;
            for (auto & prev : rows)
                for (int c = 0; c < n && ok; ++c)
                    ok = prev[static_cast<std::size_t>(c)] != q[static_cast<std::size_t>(c)];
            if (! ok)
                continue;
            rows.push_back(q);
            self(self, r + 1);
            rows.pop_back();
        }
    };
    rec(rec, 1);
    return count;
}

std::vector<int> naive_orders(const Grid & g)
{
    int n = static_cast<int>(g.size());
    auto e = naive_neutral(g);
    std::vector<int> orders(n, 0);
    for (int x = 0; x < n; ++x) {
        int p = x;
        for (int k = 1; k <= n; ++k) {
            if (p == *e) {
                orders[x] = k;
                break;
            }
            p = g[x][p];
        }
    }
    return orders;
}

std::vector<bool> naive_generated(const Grid & g, const std::vector<bool> & seed)
{
    int n = static_cast<int>(g.size());
    auto s = seed;
    s[static_cast<std::size_t>(*naive_neutral(g))] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (! s[a] || ! s[b])
                    continue;
                // a b, and the solutions of a z = b and z a = b
                std::vector<int> found{g[a][b]};
                for (int z = 0; z < n; ++z)
                    if (g[a][z] == b || g[z][a] == b)
                        found.push_back(z);
                for (int f : found)
                    if (! s[f]) {
                        s[f] = true;
                        changed = true;
                    }
            }
    }
    return s;
}

bool naive_normal(const Grid & g, const std::vector<bool> & members)
{
    int n = static_cast<int>(g.size());
    std::vector<int> s;
    for (int a = 0; a < n; ++a)
        if (members[a])
            s.push_back(a);
    auto set_of = [&](auto f) {
        std::vector<bool> r(n, false);
        for (int a : s)
            r[f(a)] = true;
        return r;
    };
    for (int x = 0; x < n; ++x) {
        if (set_of([&](int a) { return g[x][a]; }) != set_of([&](int a) { return g[a][x]; }))
            return false;
        for (int y = 0; y < n; ++y) {
            if (set_of([&](int a) { return g[g[x][a]][y]; }) != set_of([&](int a) { return g[x][g[a][y]]; }))
                return false;
            if (set_of([&](int a) { return g[x][g[y][a]]; }) != set_of([&](int a) { return g[g[x][y]][a]; }))
                return false;
        }
    }
    return true;
}

namespace {
    std::vector<LoopTable> loops_of(const SearchSpec & spec)
    {
        std::vector<LoopTable> result;
        for (auto & t : search(spec).tables)
            result.emplace_back(t);
        return result;
    }
}

const std::vector<LoopTable> & small_loops()
{
    static const auto loops = [] {
        std::vector<LoopTable> all;
        for (std::size_t n = 1; n <= 6; ++n) {
            SearchSpec spec;
            spec.n = n;
            auto part = loops_of(spec);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }();
    return loops;
}

const std::vector<LoopTable> & flex_ip7()
{
    static const auto loops = loops_of(parse_search_spec("n=7 require=flex,ip"));
    return loops;
}

const std::vector<LoopTable> & crif8()
{
    static const auto loops = loops_of(parse_search_spec("n=8 require=ip,crif commutative=true"));
    return loops;
}

const std::vector<LoopTable> & rif10()
{
    static const auto loops = loops_of(parse_search_spec("n=10 require=ip,crif forbid=assoc commutative=true limit=40"));
    return loops;
}

const std::vector<NamedLoop> & constructed()
{
    static const auto loops = [] {
        std::vector<NamedLoop> list;
        for (std::size_t n : {2, 3, 4, 5, 6, 8, 9, 12})
            list.push_back({"Z" + std::to_string(n), cyclic(n)});
        list.push_back({"Z2xZ9", product({cyclic(2), cyclic(9)})});
        list.push_back({"Klein", klein()});
        list.push_back({"Z3^2", elementary_abelian3(2)});
        list.push_back({"Z3^3", elementary_abelian3(3)});
        list.push_back({"KleinxZ3", product({klein(), cyclic(3)})});
        list.push_back({"Fano loop", steiner_adjoin(steiner_quasigroup(fano()))});
        list.push_back({"Steiner10", steiner10()});
        list.push_back({"Steiner10xZ3", product({steiner10(), cyclic(3)})});
        list.push_back({"Steiner10xZ5", product({steiner10(), cyclic(5)})});
        list.push_back({"CML81", cml81()});
        list.push_back({"example7", example7_loop()});
        list.push_back({"example7xZ2", product({example7_loop(), cyclic(2)})});
        return list;
    }();
    return loops;
}

const std::vector<CayleyTable> & ts_quasigroups()
{
    static const auto tables = [] {
        std::vector<CayleyTable> all;
        for (std::size_t n = 1; n <= 7; ++n) {
            SearchSpec spec;
            spec.n = n;
            spec.has_neutral = false;
            spec.require = {IdentityId::TS};
            auto r = search(spec);
            all.insert(all.end(), r.tables.begin(), r.tables.end());
        }
        return all;
    }();
    return tables;
}

} // namespace fixtures
