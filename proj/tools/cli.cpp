#include "cli.hpp"

#include <loopkit/correspondence.hpp>
#include <loopkit/elements.hpp>
#include <loopkit/identities.hpp>
#include <loopkit/search.hpp>
#include <loopkit/structure.hpp>
#include <loopkit/subloops.hpp>
#include <loopkit/table.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace loopkit::cli {

namespace {
    std::vector<std::string> split(const std::string & text, char sep)
    {
        std::vector<std::string> parts;
        std::string item;
        std::istringstream in(text);
        while (std::getline(in, item, sep))
            if (! item.empty())
                parts.push_back(item);
        return parts;
    }

    std::vector<IdentityId> parse_tags(const std::string & text)
    {
        std::vector<IdentityId> ids;
        for (auto & t : split(text, ',')) {
            auto id = parse_identity_tag(t);
            if (! id)
                throw LoopError(ErrorKind::SpecInvalid, "unknown identity tag '" + t + "'");
            ids.push_back(*id);
        }
        return ids;
    }

    Element find_element(const CayleyTable & t, const std::string & label)
    {
        auto e = t.find_label(label);
        if (! e)
            throw LoopError(ErrorKind::MalformedInput, "unknown element '" + label + "'");
        return *e;
    }

    ElementSet parse_members(const CayleyTable & t, const std::string & text)
    {
        ElementSet set(t.order());
        for (auto & label : split(text, ','))
            set.insert(find_element(t, label));
        return set;
    }

    const char * yes_no(bool b) { return b ? "yes" : "no"; }

    void print_entry(std::ostream & out, const CayleyTable & t, const std::string & key, bool holds,
        const std::optional<Witness> & witness, const std::string & note = {})
    {
        out << key << ": " << yes_no(holds);
        if (! note.empty())
            out << " (" << note << ")";
        out << '\n';
        if (! holds && witness)
            out << key << "-witness: " << format_witness(t, *witness) << '\n';
    }

    std::optional<LoopTable> as_loop(const CayleyTable & t)
    {
        try {
            return LoopTable(t);
        } catch (const LoopError & e) {
            if (e.kind() == ErrorKind::NoNeutral)
                return std::nullopt;
            throw;
        }
    }

    void analyze(const std::string & path, std::ostream & out)
    {
        auto table = read_table_file(path);
        out << "order: " << table.order() << '\n';
        auto loop = as_loop(table);
        if (loop) {
            out << "neutral: " << loop->label(loop->neutral()) << '\n';
            out << "inverses: " << (loop->has_inverses() ? "two-sided" : "one-sided") << '\n';
            auto report = classify(*loop);
            for (auto & e : report.entries)
                print_entry(out, table, e.key, e.holds, e.witness, e.note);
            ElementClasses classes(*loop);
            for (auto id : all_element_classes())
                out << tag(id) << ": " << format_labels(table, classes[id]) << '\n';
            return;
        }
        out << "neutral: none\n";
        for (auto id : all_identities()) {
            if (definition(id).needs_neutral) {
                out << tag(id) << ": n/a (no neutral element)\n";
                continue;
            }
            auto r = check_identity(table, id);
            print_entry(out, table, std::string(tag(id)), r.holds, r.witness);
        }
        auto base = least_idempotent(table);
        for (auto id : all_element_classes()) {
            if (id == ElementClassId::UNI0 && ! base) {
                out << "uni0: n/a (no idempotent)\n";
                continue;
            }
            out << tag(id) << ": " << format_labels(table, element_class(table, id, base)) << '\n';
        }
    }

    void elements(const std::string & path, const std::string & cls, const std::string & base_label, std::ostream & out)
    {
        auto table = read_table_file(path);
        auto loop = as_loop(table);
        std::optional<Element> base;
        if (! base_label.empty())
            base = find_element(table, base_label);
        else if (! loop)
            base = least_idempotent(table);
        std::vector<ElementClassId> ids;
        if (cls.empty())
            ids.assign(all_element_classes().begin(), all_element_classes().end());
        else
            for (auto & t : split(cls, ',')) {
                auto id = parse_class_tag(t);
                if (! id)
                    throw LoopError(ErrorKind::MalformedInput, "unknown class tag '" + t + "'");
                ids.push_back(*id);
            }
        for (auto id : ids) {
            if (id == ElementClassId::UNI0 && ! loop && ! base) {
                out << "uni0: n/a (no idempotent)\n";
                continue;
            }
            auto set = loop ? element_class(*loop, id, base) : element_class(table, id, base);
            out << tag(id) << ": " << format_labels(table, set) << '\n';
        }
        if (loop && cls.empty())
            for (auto & r : class_equalities(*loop))
                out << "relation: " << r.statement << ": " << yes_no(r.holds) << '\n';
    }

    int identity(const std::string & path, const std::string & id_text, const std::string & at, std::ostream & out)
    {
        auto table = read_table_file(path);
        auto ids = parse_tags(id_text);
        if (ids.empty())
            throw LoopError(ErrorKind::SpecInvalid, "--id is required");
        auto loop = as_loop(table);
        bool all = true;
        for (auto id : ids) {
            if (! at.empty()) {
                if (! loop)
                    throw LoopError(ErrorKind::NoNeutral, "--at needs a loop");
                auto & def = definition(id);
                std::vector<Element> assignment(def.variables.size(), -1);
                for (auto & kv : split(at, ',')) {
                    auto eq = kv.find('=');
                    auto var = eq == std::string::npos ? std::string::npos : def.variables.find(kv.substr(0, eq));
                    if (eq == std::string::npos || eq != 1 || var == std::string::npos)
                        throw LoopError(ErrorKind::MalformedInput, "bad assignment '" + kv + "'");
                    assignment[var] = find_element(table, kv.substr(eq + 1));
                }
                if (std::count(assignment.begin(), assignment.end(), -1))
                    throw LoopError(ErrorKind::MalformedInput, "--at must assign " + def.variables);
                auto w = evaluate_instance(*loop, id, assignment);
                out << tag(id) << "-at: " << (w ? "fails" : "holds") << '\n';
                if (w)
                    out << tag(id) << "-instance: " << format_witness(table, *w) << '\n';
                all = all && ! w;
                continue;
            }
            auto r = loop ? check_identity(*loop, id) : check_identity(table, id);
            print_entry(out, table, std::string(tag(id)), r.holds, r.witness);
            all = all && r.holds;
        }
        return all ? 0 : 1;
    }

    int quotient_cmd(const std::string & path, const std::string & members, std::ostream & out)
    {
        LoopTable loop(read_table_file(path));
        auto set = parse_members(loop.table(), members);
        Subloop sub(loop, set);
        auto normal = is_normal(loop, sub);
        out << "subloop: " << format_labels(loop.table(), sub.members()) << '\n';
        out << "normal: " << yes_no(normal.holds) << '\n';
        if (! normal.holds) {
            auto & w = *normal.witness;
            out << "normal-witness: ";
            for (auto & [k, v] : w.assignment)
                out << k << '=' << loop.label(v) << ' ';
            out << "-> " << loop.label(w.lhs) << '\n';
            return 1;
        }
        auto q = quotient(loop, sub);
        out << "quotient-order: " << q.table.order() << '\n';
        out << serialize_table(q.table.table());
        return 0;
    }

    void product(const std::vector<std::string> & paths, std::ostream & out)
    {
        std::vector<CayleyTable> factors;
        for (auto & p : paths)
            factors.push_back(read_table_file(p));
        out << serialize_table(direct_product(std::span<const CayleyTable>(factors)));
    }

    int decompose(const std::string & path, const std::string & mode, std::ostream & out)
    {
        LoopTable loop(read_table_file(path));
        if (mode == "primary") {
            out << format_decomposition(loop, primary_decomposition(loop));
            return 0;
        }
        if (mode == "rif") {
            out << format_decomposition(loop, rif_decomposition(loop));
            return 0;
        }
        if (mode.rfind("central:", 0) == 0) {
            long n = 0;
            try {
                n = std::stol(mode.substr(8));
            } catch (const std::exception &) {
                throw LoopError(ErrorKind::SpecInvalid, "bad mode '" + mode + "'");
            }
            auto r = central_power_report(loop, n);
            auto key = "central-" + std::to_string(n);
            out << key << ": " << yes_no(r.holds) << '\n';
            if (! r.holds)
                out << key << "-witness: x=" << loop.label(r.witness->assignment[0].second) << " x^" << n << "="
                    << loop.label(r.witness->lhs) << " not central\n";
            return r.holds ? 0 : 1;
        }
        throw LoopError(ErrorKind::SpecInvalid, "unknown mode '" + mode + "'");
    }

    void convert(const std::string & path, const std::string & to, const std::string & idempotent, std::ostream & out)
    {
        if (to == "quasigroup") {
            LoopTable loop(read_table_file(path));
            auto q = quasi(loop);
            auto wip = check_identity(loop, IdentityId::WIP);
            out << "# wip: " << yes_no(wip.holds) << '\n';
            out << serialize_table(q.table(), q.base());
            return;
        }
        if (to == "loop") {
            auto text = read_text_file(path);
            auto table = parse_table(text);
            std::optional<Element> base;
            if (! idempotent.empty())
                base = find_element(table, idempotent);
            else if (auto annotated = parse_base_annotation(text))
                base = find_element(table, *annotated);
            else
                base = least_idempotent(table);
            if (! base)
                throw LoopError(ErrorKind::NotTS, "no idempotent to use as the base");
            out << serialize_table(deloop(table, *base).table());
            return;
        }
        throw LoopError(ErrorKind::SpecInvalid, "--to must be quasigroup or loop");
    }

    struct SearchFlags {
        std::size_t order = 0;
        std::string require, forbid, spec_line, spec_file, mode;
        std::size_t limit = 0;
        std::size_t up_to = 0;
        bool count_only = false;
        bool commutative = false;
        bool no_neutral = false;
        bool dedup = false;
        bool relations = false;
        int workers = 0;
    };

    void print_tables(std::ostream & out, const std::vector<CayleyTable> & tables, bool relations = false)
    {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            out << "table: " << i + 1 << '\n';
            if (relations) {
                // only the relations that fail, so hunts can grep for them
                LoopTable loop(tables[i]);
                out << "diassociative: " << yes_no(is_diassociative(loop).holds) << '\n';
                for (auto & r : class_equalities(loop))
                    if (! r.holds)
                        out << "relation-fails: " << r.statement << '\n';
            }
            out << serialize_table(tables[i]);
        }
    }

    int search_cmd(const SearchFlags & f, std::ostream & out)
    {
        SearchSpec spec;
        if (! f.spec_line.empty() || ! f.spec_file.empty()) {
            std::string line = f.spec_line;
            if (! f.spec_file.empty()) {
                std::istringstream in(read_text_file(f.spec_file));
                for (std::string l; std::getline(in, l);)
                    if (! l.empty() && l[0] != '#') {
                        line = l;
                        break;
                    }
            }
            spec = parse_search_spec(line);
        } else {
            if (f.order == 0 && f.up_to == 0)
                throw LoopError(ErrorKind::SpecInvalid, "--order, --up-to or --spec is required");
            spec.n = f.order ? f.order : 1;
            spec.require = parse_tags(f.require);
            spec.forbid = parse_tags(f.forbid);
            spec.limit = f.limit;
            spec.commutative = f.commutative;
            spec.has_neutral = ! f.no_neutral;
            if (f.mode == "exists")
                spec.mode = SearchMode::Exists;
            else if (f.mode == "count")
                spec.mode = SearchMode::Count;
            else if (! f.mode.empty() && f.mode != "enumerate")
                throw LoopError(ErrorKind::SpecInvalid, "unknown search mode '" + f.mode + "'");
        }
        if (f.count_only)
            spec.mode = SearchMode::Count;
        if (f.workers)
            spec.workers = f.workers;

        if (f.up_to) {
            auto r = min_order_witness(spec.require, spec.forbid, f.up_to, spec.commutative, spec.workers);
            for (auto & s : r.sweeps)
                out << "sweep: n=" << s.n << " found=" << yes_no(s.found) << " exhaustive=" << yes_no(s.exhaustive)
                    << " nodes=" << s.nodes << '\n';
            if (! r.order) {
                out << "min-order: exhausted\n";
                return 1;
            }
            out << "min-order: " << *r.order << '\n';
            out << serialize_table(*r.table);
            return 0;
        }

        validate(spec);
        out << "spec: " << format_search_spec(spec) << '\n';
        auto r = search(spec);
        out << "count: " << r.count << '\n';
        out << "nodes: " << r.nodes << '\n';
        out << "exhaustive: " << yes_no(r.exhaustive) << '\n';
        if (spec.mode == SearchMode::Count)
            return 0;
        auto tables = r.tables;
        if (f.dedup) {
            tables = isomorphism_classes(tables);
            out << "classes: " << tables.size() << '\n';
        }
        print_tables(out, tables, f.relations && spec.has_neutral);
        return spec.mode == SearchMode::Exists && tables.empty() ? 1 : 0;
    }

    void print_blocks(std::ostream & out, const TripleSystem & s)
    {
        out << "points: " << s.points.size() << '\n';
        out << "blocks: " << s.blocks.size() << '\n';
        out << serialize_triple_system(s);
    }

    void sts(const std::string & path, bool from_blocks, const std::string & to, std::ostream & out)
    {
        if (from_blocks) {
            auto system = parse_triple_system(read_text_file(path));
            auto q = steiner_quasigroup(system);
            if (to == "loop")
                out << serialize_table(steiner_adjoin(q).table());
            else if (to.empty() || to == "quasigroup")
                out << serialize_table(q);
            else
                throw LoopError(ErrorKind::SpecInvalid, "--to must be quasigroup or loop");
            return;
        }
        auto table = read_table_file(path);
        auto loop = as_loop(table);
        if (loop && table.order() > 1) {
            auto q = steiner_delete(*loop);
            if (to == "quasigroup") {
                out << serialize_table(q);
                return;
            }
            print_blocks(out, sts_extract(q));
            return;
        }
        if (to == "loop") {
            out << serialize_table(steiner_adjoin(table).table());
            return;
        }
        print_blocks(out, sts_extract(table));
    }

    int exit_code(ErrorKind kind)
    {
        switch (kind) {
            case ErrorKind::MalformedInput:
            case ErrorKind::NotLatin:
            case ErrorKind::NoNeutral:
            case ErrorKind::SpecInvalid:
            case ErrorKind::BadBase: return 2;
            default: return 1;
        }
    }
}

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Finite loop and quasigroup toolkit", "loopkit"};
    app.require_subcommand(1, 1);

    std::string input, cls, base, id, at, members, mode = "primary", to, idempotent;
    std::vector<std::string> inputs;
    bool from_blocks = false;
    SearchFlags sf;

    auto add_input = [&](CLI::App * cmd) { cmd->add_option("table", input, "table file")->required(); };

    auto analyze_cmd = app.add_subcommand("analyze", "classify a table by every identity and element class");
    add_input(analyze_cmd);

    auto elements_cmd = app.add_subcommand("elements", "element classes and their relations");
    add_input(elements_cmd);
    elements_cmd->add_option("--class", cls, "comma-separated class tags");
    elements_cmd->add_option("--idempotent", base, "base for uni0");

    auto identity_cmd = app.add_subcommand("identity", "check identities");
    add_input(identity_cmd);
    identity_cmd->add_option("--id", id, "comma-separated identity tags")->required();
    identity_cmd->add_option("--at", at, "evaluate one instance, e.g. x=5,y=6");

    auto quotient_sub = app.add_subcommand("quotient", "normality test and quotient table");
    add_input(quotient_sub);
    quotient_sub->add_option("--subloop", members, "comma-separated labels")->required();

    auto product_cmd = app.add_subcommand("product", "external direct product");
    product_cmd->add_option("tables", inputs, "table files")->required();

    auto decompose_cmd = app.add_subcommand("decompose", "primary, RIF or central-power analysis");
    add_input(decompose_cmd);
    decompose_cmd->add_option("--mode", mode, "primary | rif | central:<n>");

    auto convert_cmd = app.add_subcommand("convert", "loop <-> totally symmetric quasigroup");
    add_input(convert_cmd);
    convert_cmd->add_option("--to", to, "quasigroup | loop")->required();
    convert_cmd->add_option("--idempotent", idempotent, "base idempotent label");

    auto search_sub = app.add_subcommand("search", "exhaustive model search");
    search_sub->add_option("--order", sf.order, "table order");
    search_sub->add_option("--require", sf.require, "comma-separated identity tags");
    search_sub->add_option("--forbid", sf.forbid, "comma-separated identity tags");
    search_sub->add_option("--limit", sf.limit, "maximum number of tables (0 = all)");
    search_sub->add_option("--mode", sf.mode, "enumerate | count | exists");
    search_sub->add_flag("--count-only", sf.count_only, "only count");
    search_sub->add_flag("--commutative", sf.commutative, "commutative tables only");
    search_sub->add_flag("--no-neutral", sf.no_neutral, "quasigroups without a fixed neutral element");
    search_sub->add_flag("--dedup", sf.dedup, "keep one table per isomorphism class");
    search_sub->add_flag("--relations", sf.relations, "print the failing element-class relations of each table");
    search_sub->add_option("--workers", sf.workers, "worker threads");
    search_sub->add_option("--spec", sf.spec_line, "one-line spec");
    search_sub->add_option("--spec-file", sf.spec_file, "file whose first line is a spec");
    search_sub->add_option("--up-to", sf.up_to, "least order with a model, searching n = 1..N");

    auto sts_cmd = app.add_subcommand("sts", "Steiner triple systems, quasigroups and loops");
    add_input(sts_cmd);
    sts_cmd->add_flag("--blocks", from_blocks, "input is a list of blocks");
    sts_cmd->add_option("--to", to, "quasigroup | loop");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp & e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError & e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*analyze_cmd)
            analyze(input, out);
        else if (*elements_cmd)
            elements(input, cls, base, out);
        else if (*identity_cmd)
            return identity(input, id, at, out);
        else if (*quotient_sub)
            return quotient_cmd(input, members, out);
        else if (*product_cmd)
            product(inputs, out);
        else if (*decompose_cmd)
            return decompose(input, mode, out);
        else if (*convert_cmd)
            convert(input, to, idempotent, out);
        else if (*search_sub)
            return search_cmd(sf, out);
        else if (*sts_cmd)
            sts(input, from_blocks, to, out);
    } catch (const LoopError & e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace loopkit::cli
