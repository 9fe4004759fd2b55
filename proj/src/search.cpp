#include <loopkit/search.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace loopkit {

namespace {
    constexpr std::size_t max_order = 63;

    // One ground instance of a required equation.
    struct Instance {
        const Equation * eq;
        std::array<Element, 8> vars;
    };

    // Partial table seen by evaluate(): unknown cells yield -1 and record the blocking cell.
    struct PartialMagma {
        const Element * cells;
        std::size_t n;
        int blocked = -1;

        Element mul(Element x, Element y)
        {
            auto c = static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y);
            auto v = cells[c];
            if (v < 0)
                blocked = static_cast<int>(c);
            return v;
        }

        // right inverse: the column holding the neutral element in row x
        Element inverse(Element x)
        {
            auto row = static_cast<std::size_t>(x) * n;
            int first_unknown = -1;
            for (std::size_t c = 0; c < n; ++c) {
                if (cells[row + c] == 0)
                    return static_cast<Element>(c);
                if (cells[row + c] < 0 && first_unknown < 0)
                    first_unknown = static_cast<int>(row + c);
            }
            blocked = first_unknown;
            return -1;
        }

        Element neutral() const { return 0; }
    };

    enum class Eval { Holds, Fails, Blocked };

    class Engine {
    public:
        Engine(const SearchSpec & spec, const std::vector<Instance> & instances) :
            _spec(spec),
            _n(spec.n),
            _cells(_n * _n, -1),
            _rows(_n, 0),
            _cols(_n, 0),
            _watch(_n * _n)
        {
            if (spec.has_neutral)
                for (std::size_t i = 0; i < _n; ++i) {
                    place(i, static_cast<Element>(i));
                    place(i * _n, static_cast<Element>(i));
                }
            for (std::size_t c = 0; c < _n * _n; ++c)
                if (_cells[c] < 0)
                    _steps.push_back(c);
            for (auto & inst : instances) {
                int cell;
                auto r = evaluate_instance(inst, cell);
                if (r == Eval::Fails)
                    _dead = true;
                else if (r == Eval::Blocked)
                    _watch[static_cast<std::size_t>(cell)].push_back(&inst);
            }
        }

        std::size_t steps() const { return _steps.size(); }
        bool dead() const { return _dead; }
        std::uint64_t nodes() const { return _nodes; }

        // Candidate values for a step, ascending.
        template <typename F>
        bool for_each_candidate(std::size_t step, F && f)
        {
            auto cell = _steps[step];
            auto r = cell / _n, c = cell % _n;
            if (_spec.commutative && c < r) {
                auto v = _cells[c * _n + r];
                if (allowed(r, c, v))
                    return f(v);
                return true;
            }
            for (Element v = 0; v < static_cast<Element>(_n); ++v)
                if (allowed(r, c, v))
                    if (! f(v))
                        return false;
            return true;
        }

        // Assigns and propagates; on conflict the assignment stays and must be undone.
        bool assign(std::size_t step, Element v)
        {
            ++_nodes;
            auto cell = _steps[step];
            place(cell, v);
            _trail_marks.push_back(_trail.size());
            auto & list = _watch[cell];
            for (std::size_t i = 0; i < list.size(); ++i) {
                int next;
                auto r = evaluate_instance(*list[i], next);
                if (r == Eval::Fails)
                    return false;
                if (r == Eval::Blocked) {
                    _watch[static_cast<std::size_t>(next)].push_back(list[i]);
                    _trail.push_back(static_cast<std::size_t>(next));
                }
            }
            return true;
        }

        void unassign(std::size_t step)
        {
            auto mark = _trail_marks.back();
            _trail_marks.pop_back();
            while (_trail.size() > mark) {
                _watch[_trail.back()].pop_back();
                _trail.pop_back();
            }
            auto cell = _steps[step];
            auto v = _cells[cell];
            _rows[cell / _n] &= ~(std::uint64_t{1} << v);
            _cols[cell % _n] &= ~(std::uint64_t{1} << v);
            _cells[cell] = -1;
        }

        const std::vector<Element> & cells() const { return _cells; }

    private:
        bool allowed(std::size_t r, std::size_t c, Element v) const
        {
            auto bit = std::uint64_t{1} << v;
            return ! (_rows[r] & bit) && ! (_cols[c] & bit);
        }

        void place(std::size_t cell, Element v)
        {
            _cells[cell] = v;
            _rows[cell / _n] |= std::uint64_t{1} << v;
            _cols[cell % _n] |= std::uint64_t{1} << v;
        }

        Eval evaluate_instance(const Instance & inst, int & blocked)
        {
            PartialMagma m{_cells.data(), _n};
            auto l = evaluate(inst.eq->lhs, inst.vars, m);
            if (l < 0) {
                blocked = m.blocked;
                return blocked < 0 ? Eval::Fails : Eval::Blocked;
            }
            auto r = evaluate(inst.eq->rhs, inst.vars, m);
            if (r < 0) {
                blocked = m.blocked;
                return blocked < 0 ? Eval::Fails : Eval::Blocked;
            }
            return l == r ? Eval::Holds : Eval::Fails;
        }

        const SearchSpec & _spec;
        std::size_t _n;
        std::vector<Element> _cells;
        std::vector<std::uint64_t> _rows;
        std::vector<std::uint64_t> _cols;
        std::vector<std::vector<const Instance *>> _watch;
        std::vector<std::size_t> _trail;
        std::vector<std::size_t> _trail_marks;
        std::vector<std::size_t> _steps;
        std::uint64_t _nodes = 0;
        bool _dead = false;
    };

    std::vector<Instance> ground_instances(const SearchSpec & spec)
    {
        std::vector<Instance> result;
        auto n = static_cast<Element>(spec.n);
        for (auto id : spec.require) {
            auto & def = definition(id);
            auto v = def.variables.size();
            for (auto & eq : def.equations) {
                std::array<Element, 8> vars{};
                while (true) {
                    result.push_back({&eq, vars});
                    bool done = true;
                    for (std::size_t i = v; i > 0;) {
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
            }
        }
        return result;
    }

    // Shared by the parallel workers when results are capped: the least prefix index whose
    // running total reaches the cap. Later prefixes cannot contribute and stop early.
    struct Frontier {
        std::mutex mutex;
        std::vector<std::uint64_t> counts;
        std::uint64_t cap;
        std::atomic<long> cutoff;

        Frontier(std::size_t prefixes, std::uint64_t cap) :
            counts(prefixes, 0),
            cap(cap),
            cutoff(static_cast<long>(prefixes))
        {
        }

        void found(long index)
        {
            std::lock_guard lock(mutex);
            ++counts[static_cast<std::size_t>(index)];
            std::uint64_t sum = 0;
            auto limit = cutoff.load();
            for (long j = 0; j < limit; ++j) {
                sum += counts[static_cast<std::size_t>(j)];
                if (sum >= cap) {
                    cutoff.store(j);
                    break;
                }
            }
        }
    };

    // Collects solutions below a given depth. Returns false when the limit stopped the search.
    struct Collector {
        const SearchSpec & spec;
        std::size_t cap;
        std::vector<CayleyTable> tables{};
        std::uint64_t count = 0;
        Frontier * frontier = nullptr;
        long index = 0;

        bool full() const
        {
            return (cap != 0 && count >= cap) || (frontier && frontier->cutoff.load(std::memory_order_relaxed) < index);
        }

        void offer(const std::vector<Element> & cells)
        {
            CayleyTable t(spec.n, cells);
            if (! satisfies_spec(t, spec))
                return;
            ++count;
            if (spec.mode != SearchMode::Count)
                tables.push_back(std::move(t));
            if (frontier)
                frontier->found(index);
        }
    };

    bool dfs(Engine & engine, std::size_t step, Collector & out)
    {
        if (step == engine.steps()) {
            out.offer(engine.cells());
            return ! out.full();
        }
        return engine.for_each_candidate(step, [&](Element v) {
            bool ok = engine.assign(step, v);
            bool go_on = true;
            if (ok)
                go_on = dfs(engine, step + 1, out);
            engine.unassign(step);
            return go_on;
        });
    }

    // All consistent assignments of the first depth steps, in canonical order.
    void prefixes(Engine & engine, std::size_t step, std::size_t depth, std::vector<Element> & current,
        std::vector<std::vector<Element>> & out)
    {
        if (step == depth) {
            out.push_back(current);
            return;
        }
        engine.for_each_candidate(step, [&](Element v) {
            if (engine.assign(step, v)) {
                current.push_back(v);
                prefixes(engine, step + 1, depth, current, out);
                current.pop_back();
            }
            engine.unassign(step);
            return true;
        });
    }

    std::size_t effective_limit(const SearchSpec & spec)
    {
        return spec.mode == SearchMode::Exists ? 1 : spec.limit;
    }

    SearchResult finish(Collector & out, std::uint64_t nodes, bool stopped)
    {
        SearchResult r;
        r.nodes = nodes;
        r.count = out.count;
        r.tables = std::move(out.tables);
        r.exhaustive = ! stopped;
        return r;
    }

    void split_list(std::string_view text, std::vector<IdentityId> & out)
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find(',', start);
            if (end == std::string_view::npos)
                end = text.size();
            auto item = text.substr(start, end - start);
            if (! item.empty()) {
                auto id = parse_identity_tag(item);
                if (! id)
                    throw LoopError(ErrorKind::SpecInvalid, "unknown identity tag '" + std::string(item) + "'");
                out.push_back(*id);
            }
            start = end + 1;
        }
    }

    bool parse_bool(std::string_view key, std::string_view v)
    {
        if (v == "true" || v == "yes" || v == "1")
            return true;
        if (v == "false" || v == "no" || v == "0")
            return false;
        throw LoopError(ErrorKind::SpecInvalid, std::string(key) + " expects true or false");
    }

    std::size_t parse_count(std::string_view key, std::string_view v)
    {
        std::size_t value = 0;
        if (v.empty())
            throw LoopError(ErrorKind::SpecInvalid, std::string(key) + " expects a number");
        for (char c : v) {
            if (c < '0' || c > '9')
                throw LoopError(ErrorKind::SpecInvalid, std::string(key) + " expects a number");
            value = value * 10 + static_cast<std::size_t>(c - '0');
        }
        return value;
    }
}

std::string_view to_string(SearchMode mode)
{
    switch (mode) {
        case SearchMode::Enumerate: return "enumerate";
        case SearchMode::Count: return "count";
        case SearchMode::Exists: return "exists";
    }
    return "?";
}

void validate(const SearchSpec & spec)
{
    if (spec.n < 1)
        throw LoopError(ErrorKind::SpecInvalid, "order must be at least 1");
    if (spec.n > max_order)
        throw LoopError(ErrorKind::SpecInvalid, "order above " + std::to_string(max_order));
    for (auto a : spec.require)
        for (auto b : spec.forbid)
            if (a == b)
                throw LoopError(ErrorKind::SpecInvalid, std::string(tag(a)) + " is both required and forbidden");
    if (! spec.has_neutral) {
        for (auto lists : {&spec.require, &spec.forbid})
            for (auto id : *lists)
                if (definition(id).needs_neutral)
                    throw LoopError(ErrorKind::SpecInvalid, std::string(tag(id)) + " needs a neutral element");
    }
}

SearchSpec parse_search_spec(std::string_view line)
{
    SearchSpec spec;
    bool have_n = false;
    std::set<std::string, std::less<>> seen;
    std::istringstream words{std::string(line)};
    for (std::string word; words >> word;) {
        auto eq = word.find('=');
        if (eq == std::string::npos)
            throw LoopError(ErrorKind::SpecInvalid, "expected key=value, got '" + word + "'");
        auto key = std::string_view(word).substr(0, eq);
        auto value = std::string_view(word).substr(eq + 1);
        if (! seen.emplace(key).second)
            throw LoopError(ErrorKind::SpecInvalid, "repeated key '" + std::string(key) + "'");
        if (key == "n") {
            spec.n = parse_count(key, value);
            have_n = true;
        } else if (key == "require")
            split_list(value, spec.require);
        else if (key == "forbid")
            split_list(value, spec.forbid);
        else if (key == "mode") {
            if (value == "enumerate")
                spec.mode = SearchMode::Enumerate;
            else if (value == "count")
                spec.mode = SearchMode::Count;
            else if (value == "exists")
                spec.mode = SearchMode::Exists;
            else
                throw LoopError(ErrorKind::SpecInvalid, "unknown mode '" + std::string(value) + "'");
        } else if (key == "limit")
            spec.limit = parse_count(key, value);
        else if (key == "commutative")
            spec.commutative = parse_bool(key, value);
        else if (key == "neutral")
            spec.has_neutral = parse_bool(key, value);
        else if (key == "workers")
            spec.workers = static_cast<int>(parse_count(key, value));
        else
            throw LoopError(ErrorKind::SpecInvalid, "unknown key '" + std::string(key) + "'");
    }
    if (! have_n)
        throw LoopError(ErrorKind::SpecInvalid, "missing n=");
    validate(spec);
    return spec;
}

std::string format_search_spec(const SearchSpec & spec)
{
    std::ostringstream out;
    out << "n=" << spec.n;
    auto list = [&](const char * key, const std::vector<IdentityId> & ids) {
        if (ids.empty())
            return;
        out << ' ' << key << '=';
        for (std::size_t i = 0; i < ids.size(); ++i)
            out << (i ? "," : "") << tag(ids[i]);
    };
    list("require", spec.require);
    list("forbid", spec.forbid);
    out << " mode=" << to_string(spec.mode);
    if (spec.limit)
        out << " limit=" << spec.limit;
    if (spec.commutative)
        out << " commutative=true";
    if (! spec.has_neutral)
        out << " neutral=false";
    return out.str();
}

bool satisfies_spec(const CayleyTable & table, const SearchSpec & spec)
{
    std::optional<LoopTable> loop;
    if (spec.has_neutral) {
        try {
            loop.emplace(table);
        } catch (const LoopError &) {
            return false;
        }
    }
    auto holds = [&](IdentityId id) {
        if (loop) {
            auto & def = definition(id);
            if (def.needs_inverses && ! loop->has_inverses())
                return false;
            return check_identity(*loop, id).holds;
        }
        return check_identity(table, id).holds;
    };
    if (spec.commutative && ! holds(IdentityId::COMM))
        return false;
    for (auto id : spec.require)
        if (! holds(id))
            return false;
    for (auto id : spec.forbid)
        if (holds(id))
            return false;
    return true;
}

int resolve_workers(int requested)
{
    if (requested > 0)
        return requested;
    if (auto env = std::getenv("LOOPKIT_WORKERS")) {
        auto v = std::atoi(env);
        if (v > 0)
            return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

SearchResult search_serial(const SearchSpec & spec)
{
    validate(spec);
    auto instances = ground_instances(spec);
    Engine engine(spec, instances);
    Collector out{spec, effective_limit(spec)};
    bool stopped = false;
    if (! engine.dead())
        stopped = ! dfs(engine, 0, out);
    return finish(out, engine.nodes(), stopped);
}

SearchResult search(const SearchSpec & spec)
{
    validate(spec);
    auto instances = ground_instances(spec);
    Engine root(spec, instances);
    auto cap = effective_limit(spec);
    if (root.dead()) {
        Collector none{spec, cap};
        return finish(none, 0, false);
    }
    auto depth = std::min<std::size_t>(3, root.steps());
    std::vector<std::vector<Element>> starts;
    std::vector<Element> current;
    prefixes(root, 0, depth, current, starts);

    std::vector<Collector> results;
    results.reserve(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i)
        results.push_back(Collector{spec, cap});
    std::vector<std::uint64_t> nodes(starts.size(), 0);
    std::vector<char> stopped(starts.size(), 0);

    std::optional<Frontier> frontier;
    if (cap != 0) {
        frontier.emplace(starts.size(), cap);
        for (std::size_t i = 0; i < starts.size(); ++i) {
            results[i].frontier = &*frontier;
            results[i].index = static_cast<long>(i);
        }
    }

    auto workers = resolve_workers(spec.workers);
    auto total = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long i = 0; i < total; ++i) {
        auto k = static_cast<std::size_t>(i);
        Engine engine(spec, instances);
        bool ok = true;
        for (std::size_t s = 0; s < depth && ok; ++s)
            ok = engine.assign(s, starts[k][s]);
        if (ok && ! results[k].full())
            stopped[k] = ! dfs(engine, depth, results[k]);
        nodes[k] = engine.nodes() - depth;
    }

    // merge in prefix order, which is the serial order
    Collector out{spec, cap};
    std::uint64_t total_nodes = root.nodes();
    bool any_stop = false;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        total_nodes += nodes[k];
        auto room = cap == 0 ? results[k].count : std::min<std::uint64_t>(results[k].count, cap - out.count);
        for (std::size_t j = 0; j < results[k].tables.size() && j < room; ++j)
            out.tables.push_back(std::move(results[k].tables[j]));
        out.count += room;
        if (room < results[k].count || stopped[k] || (out.full() && k + 1 < starts.size())) {
            any_stop = true;
            break;
        }
    }
    return finish(out, total_nodes, any_stop);
}

MinOrderResult min_order_witness(std::span<const IdentityId> require, std::span<const IdentityId> forbid,
    std::size_t n_max, bool commutative, int workers)
{
    MinOrderResult result;
    for (auto a : require)
        for (auto b : forbid)
            if (a == b)
                return result;
    for (std::size_t n = 1; n <= n_max; ++n) {
        SearchSpec spec;
        spec.n = n;
        spec.require.assign(require.begin(), require.end());
        spec.forbid.assign(forbid.begin(), forbid.end());
        spec.commutative = commutative;
        spec.mode = SearchMode::Exists;
        spec.workers = workers;
        auto r = search(spec);
        bool found = ! r.tables.empty();
        result.sweeps.push_back({n, r.nodes, r.exhaustive, found});
        if (found) {
            result.order = n;
            result.table = std::move(r.tables.front());
            break;
        }
    }
    return result;
}

std::vector<CayleyTable> isomorphism_classes(std::span<const CayleyTable> tables)
{
    std::vector<CayleyTable> kept;
    for (auto & t : tables) {
        bool seen = false;
        for (auto & k : kept)
            if (is_isomorphic(k, t)) {
                seen = true;
                break;
            }
        if (! seen)
            kept.push_back(t);
    }
    return kept;
}

} // namespace loopkit
