#include <loopkit/correspondence.hpp>
#include <loopkit/elements.hpp>
#include <loopkit/structure.hpp>
#include <loopkit/subloops.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace loopkit {

PointedQuasigroup::PointedQuasigroup(CayleyTable table, Element base) :
    _table(std::move(table)),
    _base(base)
{
    if (base < 0 || static_cast<std::size_t>(base) >= _table.order() || _table.mul(base, base) != base)
        throw LoopError(ErrorKind::BadBase, "base is not an idempotent");
}

PointedQuasigroup quasi(const LoopTable & loop)
{
    auto comm = check_identity(loop, IdentityId::COMM);
    if (! comm.holds)
        throw LoopError(ErrorKind::PreconditionFailed,
            "loop is not commutative (" + format_witness(loop.table(), *comm.witness) + ")");
    if (! loop.has_inverses())
        throw LoopError(ErrorKind::PreconditionFailed, "loop has no two-sided inverses");
    auto n = loop.order();
    std::vector<Element> entries(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            entries[x * n + y] = loop.mul(loop.inverse(static_cast<Element>(x)), loop.inverse(static_cast<Element>(y)));
    return PointedQuasigroup(CayleyTable(n, std::move(entries), loop.table().labels()), loop.neutral());
}

LoopTable deloop(const CayleyTable & table, Element base)
{
    auto ts = check_identity(table, IdentityId::TS);
    if (! ts.holds)
        throw LoopError(ErrorKind::NotTS, "not totally symmetric: " + format_witness(table, *ts.witness));
    if (base < 0 || static_cast<std::size_t>(base) >= table.order() || table.mul(base, base) != base)
        throw LoopError(ErrorKind::NotTS, "base is not an idempotent");
    auto n = table.order();
    std::vector<Element> entries(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            entries[x * n + y] = table.mul(table.mul(base, static_cast<Element>(x)), table.mul(base, static_cast<Element>(y)));
    return LoopTable(CayleyTable(n, std::move(entries), table.labels()));
}

LoopTable deloop(const PointedQuasigroup & q)
{
    return deloop(q.table(), q.base());
}

std::optional<Element> least_idempotent(const CayleyTable & table)
{
    for (std::size_t x = 0; x < table.order(); ++x)
        if (table.mul(static_cast<Element>(x), static_cast<Element>(x)) == static_cast<Element>(x))
            return static_cast<Element>(x);
    return std::nullopt;
}

bool TsReport::holds(std::string_view key) const
{
    for (auto & e : entries)
        if (e.key == key)
            return e.holds;
    throw LoopError(ErrorKind::MalformedInput, "no report entry " + std::string(key));
}

TsReport ts_report(const PointedQuasigroup & q)
{
    auto & t = q.table();
    TsReport report;
    for (auto id : {IdentityId::TS, IdentityId::Q1, IdentityId::Q2, IdentityId::DIST_L, IdentityId::DIST_R,
             IdentityId::UNIPOTENT, IdentityId::IDEMPOTENT}) {
        auto r = check_identity(t, id);
        report.entries.push_back({std::string(tag(id)), r.holds, std::move(r.witness), {}});
    }
    report.entries.push_back({"dist", report.holds("dist_l") && report.holds("dist_r"), std::nullopt, {}});
    report.idempotents = element_class(t, ElementClassId::IDEM);
    report.unipotent_fiber = element_class(t, ElementClassId::UNI0, q.base());

    if (report.holds("q1") && report.holds("q2")) {
        auto n = static_cast<Element>(t.order());
        bool ok = true;
        ElementSet image(t.order());
        for (Element x = 0; x < n && ok; ++x) {
            image.insert(t.mul(x, x));
            for (Element y = 0; y < n && ok; ++y) {
                auto xy = t.mul(x, y);
                ok = t.mul(xy, xy) == t.mul(t.mul(x, x), t.mul(y, y));
            }
        }
        report.squaring_onto_idempotents = ok && image == report.idempotents;
    }
    return report;
}

CayleyTable restrict_table(const CayleyTable & table, const ElementSet & subset)
{
    auto m = subset.members();
    auto k = m.size();
    if (k == 0)
        throw LoopError(ErrorKind::PreconditionFailed, "empty subset");
    std::vector<Element> position(table.order(), -1);
    for (std::size_t i = 0; i < k; ++i)
        position[static_cast<std::size_t>(m[i])] = static_cast<Element>(i);
    std::vector<Element> entries(k * k);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) {
        labels.push_back(table.label(m[i]));
        for (std::size_t j = 0; j < k; ++j) {
            auto p = position[static_cast<std::size_t>(table.mul(m[i], m[j]))];
            if (p < 0)
                throw LoopError(ErrorKind::PreconditionFailed, format_labels(table, subset) + " is not closed");
            entries[i * k + j] = p;
        }
    }
    return CayleyTable(k, std::move(entries), std::move(labels));
}

TsDecomposition ts_decompose(const PointedQuasigroup & q)
{
    auto & t = q.table();
    for (auto id : {IdentityId::TS, IdentityId::Q1, IdentityId::Q2}) {
        auto r = check_identity(t, id);
        if (! r.holds)
            throw LoopError(ErrorKind::PreconditionFailed,
                std::string(tag(id)) + " fails: " + format_witness(t, *r.witness));
    }
    auto loop = deloop(q);
    auto d = rif_decomposition(loop);
    auto & steiner_members = d.parts[0].part.members();
    auto & moufang_members = d.parts[1].part.members();
    if (d.parts[2].part.size() != 1)
        throw LoopError(ErrorKind::PreconditionFailed, "associated loop does not have exponent dividing 6");

    auto idem = element_class(t, ElementClassId::IDEM);
    auto uni = element_class(t, ElementClassId::UNI0, q.base());
    if (! (idem == moufang_members))
        throw LoopError(ErrorKind::PreconditionFailed, "idempotents differ from the Moufang component");
    if (! (uni == steiner_members))
        throw LoopError(ErrorKind::PreconditionFailed, "unipotent fiber differs from the Steiner component");

    auto idem_table = restrict_table(t, idem);
    auto uni_table = restrict_table(t, uni);
    auto base_in_idem = idem_table.find_label(t.label(q.base()));
    PointedQuasigroup idem_part(idem_table, *base_in_idem);
    LoopTable steiner(uni_table);

    std::array<CayleyTable, 2> factors{idem_table, uni_table};
    auto product = direct_product(std::span<const CayleyTable>(factors));

    auto n = t.order();
    auto idem_members = idem.members(), uni_members = uni.members();
    std::vector<Element> idem_pos(n, -1), uni_pos(n, -1);
    for (std::size_t i = 0; i < idem_members.size(); ++i)
        idem_pos[static_cast<std::size_t>(idem_members[i])] = static_cast<Element>(i);
    for (std::size_t i = 0; i < uni_members.size(); ++i)
        uni_pos[static_cast<std::size_t>(uni_members[i])] = static_cast<Element>(i);

    auto e_idem = d.projection_exponents[1];
    auto e_uni = d.projection_exponents[0];
    std::vector<Element> phi(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto a = idem_pos[static_cast<std::size_t>(power(loop, static_cast<Element>(x), e_idem))];
        auto b = uni_pos[static_cast<std::size_t>(power(loop, static_cast<Element>(x), e_uni))];
        phi[x] = a * static_cast<Element>(uni_members.size()) + b;
    }
    if (! is_homomorphism(t, product, phi))
        throw LoopError(ErrorKind::PreconditionFailed, "component map is not a quasigroup isomorphism");
    PermutationMap iso(std::move(phi));
    return TsDecomposition{std::move(idem_part), std::move(steiner), std::move(idem), std::move(uni),
        std::move(product), std::move(iso)};
}

namespace {
    void require_steiner_quasigroup(const CayleyTable & q)
    {
        auto idem = check_identity(q, IdentityId::IDEMPOTENT);
        if (! idem.holds)
            throw LoopError(ErrorKind::NotSteiner, "not idempotent: " + format_witness(q, *idem.witness));
        auto ts = check_identity(q, IdentityId::TS);
        if (! ts.holds)
            throw LoopError(ErrorKind::NotSteiner, "not totally symmetric: " + format_witness(q, *ts.witness));
    }
}

LoopTable steiner_adjoin(const CayleyTable & q)
{
    require_steiner_quasigroup(q);
    auto n = q.order() + 1;
    std::string neutral = "1";
    for (auto candidate : {"1", "e", "e0", "one"})
        if (! q.find_label(candidate)) {
            neutral = candidate;
            break;
        }
    std::vector<std::string> labels{neutral};
    labels.insert(labels.end(), q.labels().begin(), q.labels().end());
    std::vector<Element> entries(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Element v;
            if (x == 0)
                v = static_cast<Element>(y);
            else if (y == 0)
                v = static_cast<Element>(x);
            else if (x == y)
                v = 0;
            else
                v = q.mul(static_cast<Element>(x - 1), static_cast<Element>(y - 1)) + 1;
            entries[x * n + y] = v;
        }
    return LoopTable(CayleyTable(n, std::move(entries), std::move(labels)));
}

CayleyTable steiner_delete(const LoopTable & loop)
{
    if (! loop.has_inverses())
        throw LoopError(ErrorKind::NotSteiner, "no two-sided inverses");
    auto ip = check_identity(loop, IdentityId::IP);
    if (! ip.holds)
        throw LoopError(ErrorKind::NotSteiner, "not IP: " + format_witness(loop.table(), *ip.witness));
    auto e = loop.neutral();
    for (std::size_t x = 0; x < loop.order(); ++x)
        if (loop.mul(static_cast<Element>(x), static_cast<Element>(x)) != e)
            throw LoopError(ErrorKind::NotSteiner, "exponent is not 2 at " + loop.label(static_cast<Element>(x)));
    if (loop.order() < 2)
        throw LoopError(ErrorKind::NotSteiner, "trivial loop has no Steiner quasigroup");

    std::vector<Element> keep;
    std::vector<Element> position(loop.order(), -1);
    for (std::size_t x = 0; x < loop.order(); ++x)
        if (static_cast<Element>(x) != e) {
            position[x] = static_cast<Element>(keep.size());
            keep.push_back(static_cast<Element>(x));
        }
    auto k = keep.size();
    std::vector<Element> entries(k * k);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) {
        labels.push_back(loop.label(keep[i]));
        for (std::size_t j = 0; j < k; ++j)
            entries[i * k + j] = i == j ? static_cast<Element>(i)
                                        : position[static_cast<std::size_t>(loop.mul(keep[i], keep[j]))];
    }
    return CayleyTable(k, std::move(entries), std::move(labels));
}

namespace {
    void validate_blocks(const TripleSystem & s)
    {
        auto v = s.points.size();
        std::vector<int> cover(v * v, 0);
        for (auto & b : s.blocks) {
            if (b[0] == b[1] || b[1] == b[2] || b[0] == b[2])
                throw LoopError(ErrorKind::NotSteiner, "block with repeated point");
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (i != j)
                        ++cover[static_cast<std::size_t>(b[i]) * v + static_cast<std::size_t>(b[j])];
        }
        for (std::size_t a = 0; a < v; ++a)
            for (std::size_t b = a + 1; b < v; ++b)
                if (cover[a * v + b] != 1)
                    throw LoopError(ErrorKind::NotSteiner, "pair {" + s.points[a] + "," + s.points[b] + "} lies in "
                            + std::to_string(cover[a * v + b]) + " blocks");
    }
}

TripleSystem sts_extract(const CayleyTable & q)
{
    require_steiner_quasigroup(q);
    TripleSystem s{q.labels(), {}};
    std::set<std::array<Element, 3>> blocks;
    auto n = static_cast<Element>(q.order());
    for (Element x = 0; x < n; ++x)
        for (Element y = x + 1; y < n; ++y) {
            std::array<Element, 3> b{x, y, q.mul(x, y)};
            std::sort(b.begin(), b.end());
            blocks.insert(b);
        }
    s.blocks.assign(blocks.begin(), blocks.end());
    validate_blocks(s);
    return s;
}

CayleyTable steiner_quasigroup(const TripleSystem & system)
{
    validate_blocks(system);
    auto v = system.points.size();
    std::vector<Element> entries(v * v, -1);
    for (std::size_t x = 0; x < v; ++x)
        entries[x * v + x] = static_cast<Element>(x);
    for (auto & b : system.blocks)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j)
                    entries[static_cast<std::size_t>(b[i]) * v + static_cast<std::size_t>(b[j])] = b[3 - i - j];
    return CayleyTable(v, std::move(entries), system.points);
}

std::string serialize_triple_system(const TripleSystem & system)
{
    std::ostringstream out;
    for (auto & b : system.blocks)
        out << system.points[static_cast<std::size_t>(b[0])] << ' ' << system.points[static_cast<std::size_t>(b[1])]
            << ' ' << system.points[static_cast<std::size_t>(b[2])] << '\n';
    return out.str();
}

TripleSystem parse_triple_system(std::string_view text)
{
    TripleSystem s;
    std::map<std::string, Element> index;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream words(line);
        std::vector<std::string> tokens;
        for (std::string w; words >> w;)
            tokens.push_back(w);
        if (tokens.size() != 3)
            throw LoopError(ErrorKind::MalformedInput, "block line must hold three labels: " + line);
        std::array<Element, 3> b{};
        for (int i = 0; i < 3; ++i) {
            auto [it, inserted] = index.emplace(tokens[static_cast<std::size_t>(i)], static_cast<Element>(s.points.size()));
            if (inserted)
                s.points.push_back(tokens[static_cast<std::size_t>(i)]);
            b[static_cast<std::size_t>(i)] = it->second;
        }
        s.blocks.push_back(b);
    }
    validate_blocks(s);
    return s;
}

} // namespace loopkit
