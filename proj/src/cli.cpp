#include "linkmorse/cli.hpp"

#include "linkmorse/cell_complex.hpp"
#include "linkmorse/error.hpp"
#include "linkmorse/gradient_paths.hpp"
#include "linkmorse/homology.hpp"
#include "linkmorse/linkage.hpp"
#include "linkmorse/morse_matching.hpp"
#include "linkmorse/path_reversal.hpp"
#include "linkmorse/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace linkmorse {

namespace {

using nlohmann::json;

constexpr int kDotMaxN = 5;

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

json labels_by_dim(const Complex& cx, const std::vector<std::vector<Complex::CellId>>& cells)
{
    json out = json::array();
    for (const auto& dim : cells) {
        json row = json::array();
        for (auto c : dim)
            row.push_back(cx.label(c).to_string());
        out.push_back(row);
    }
    return out;
}

json linkage_json(const Linkage& L)
{
    json sorted = json::array();
    for (const auto& l : L.lengths())
        sorted.push_back(format_rational(l));
    return {{"input", L.to_string()}, {"sorted", sorted}, {"permutation", L.input_permutation()}};
}

std::string permutation_note(const Linkage& L)
{
    std::string s = "edge order (user -> internal):";
    for (std::size_t u = 0; u < L.input_permutation().size(); ++u)
        s += " " + std::to_string(u + 1) + "->" + std::to_string(L.input_permutation()[u]);
    return s;
}

ComplexOptions complex_options(const RunConfig& cfg)
{
    return {cfg.max_n, cfg.force};
}

VerifyOptions verify_options(const RunConfig& cfg)
{
    VerifyOptions o;
    o.complex = complex_options(cfg);
    o.path_cap = cfg.path_cap;
    o.seed = cfg.seed;
    return o;
}

std::string hasse_dot(const Complex& cx, const VectorField& f)
{
    std::ostringstream os;
    os << "digraph hasse {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (Complex::CellId c = 0; c < cx.size(); ++c) {
        os << "  c" << c << " [label=\"" << cx.label(c).to_string() << "\"";
        if (f.is_critical(c))
            os << ", peripheries=2";
        os << "];\n";
    }
    for (Complex::CellId c = 0; c < cx.size(); ++c)
        for (auto g : cx.facets(c)) {
            if (f.partner(g) == c)
                os << "  c" << g << " -> c" << c << " [style=bold, penwidth=2.5];\n";
            else
                os << "  c" << c << " -> c" << g << ";\n";
        }
    os << "}\n";
    return os.str();
}

void require_dot_size(const RunConfig& cfg, const Linkage& L)
{
    if (L.n() > kDotMaxN && !cfg.force)
        throw Error(ErrorKind::SizeGuard,
                    "DOT output is limited to n <= " + std::to_string(kDotMaxN) + " (use --force to override)");
}

// Builds the field and the reversed field; failures surface as Error.
struct Fields {
    Complex cx;
    VectorField initial;
    ReversalPlan plan;
    VectorField reversed;
};

Fields build_fields(const RunConfig& cfg, const Linkage& L)
{
    Complex cx = Complex::enumerate(L, complex_options(cfg));
    VectorField f = build_field(cx);
    if (auto cycle = find_closed_path(cx, f))
        throw Error(ErrorKind::PredictionMismatch, "initial field has a closed V-path through " +
                                                       cx.label(cycle->front()).to_string());
    ReversalPlan plan = plan_reversals(cx, f, PlanOptions{true, cfg.path_cap});
    VectorField f2 = apply_reversals(cx, f, plan);
    return {std::move(cx), std::move(f), std::move(plan), std::move(f2)};
}

json plan_json(const Complex& cx, const ReversalPlan& plan)
{
    json triples = json::array();
    for (const auto& t : plan.triples) {
        json path = json::array();
        for (auto c : t.path.cells)
            path.push_back(cx.label(c).to_string());
        triples.push_back(
            {{"beta", cx.label(t.beta).to_string()}, {"alpha", cx.label(t.alpha).to_string()}, {"path", path}, {"j", t.j}});
    }
    return triples;
}

json field_pairs_json(const Complex& cx, const VectorField& f)
{
    const Linkage& L = cx.linkage();
    json pairs = json::array();
    for (auto [lo, hi] : f.pairs()) {
        auto found = pair_search(L, cx.label(lo));
        json row = {cx.label(lo).to_string(), cx.label(hi).to_string()};
        if (found && found->partner == cx.label(hi)) {
            row.push_back(found->report.entry);
            row.push_back(std::string(to_string(found->report.kind)));
        } else {
            row.push_back(nullptr);
            row.push_back("reversed");
        }
        pairs.push_back(row);
    }
    return pairs;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_cells(const RunConfig& cfg, const Linkage& L, std::ostream& out)
{
    const Complex cx = Complex::enumerate(L, complex_options(cfg));
    if (cfg.format == OutputFormat::Json) {
        std::vector<std::vector<Complex::CellId>> all(static_cast<std::size_t>(cx.top_dimension()) + 1);
        for (Complex::CellId c = 0; c < cx.size(); ++c)
            all[cx.dimension(c)].push_back(c);
        json j = {{"linkage", linkage_json(L)},
                  {"n", L.n()},
                  {"cells_per_dim", cx.counts_per_dim()},
                  {"euler", euler_characteristic(cx)},
                  {"cells", labels_by_dim(cx, all)}};
        out << j.dump(2) << "\n";
    } else if (cfg.format == OutputFormat::Dot) {
        require_dot_size(cfg, L);
        out << hasse_dot(cx, VectorField(cx.size()));
    } else {
        std::string line;
        for (int d = 0; d <= cx.top_dimension(); ++d)
            line += "dim " + std::to_string(d) + ": " + std::to_string(cx.count(d)) + "; ";
        out << line << "chi = " << euler_characteristic(cx) << "\n";
    }
    return 0;
}

int cmd_field(const RunConfig& cfg, const Linkage& L, std::ostream& out)
{
    const Complex cx = Complex::enumerate(L, complex_options(cfg));
    const VectorField f = build_field(cx);
    const bool acyclic = verify_acyclic(cx, f);
    const auto crit = critical_cells(cx, f);
    if (cfg.format == OutputFormat::Json) {
        json j = {{"linkage", linkage_json(L)},
                  {"n", L.n()},
                  {"pairs", field_pairs_json(cx, f)},
                  {"critical", labels_by_dim(cx, crit)},
                  {"acyclic", acyclic}};
        out << j.dump(2) << "\n";
    } else if (cfg.format == OutputFormat::Dot) {
        require_dot_size(cfg, L);
        out << hasse_dot(cx, f);
    } else {
        out << "pairs: " << f.pairs().size() << "\n";
        out << "critical per dim: " << join(sizes_per_dim(crit)) << "\n";
        out << "acyclic: " << (acyclic ? "yes" : "no") << "\n";
    }
    return acyclic ? 0 : 1;
}

int cmd_critical(const RunConfig& cfg, const Linkage& L, std::ostream& out)
{
    if (cfg.stage != "initial" && cfg.stage != "final")
        throw Error(ErrorKind::ParseError, "--stage must be 'initial' or 'final'");
    std::vector<std::vector<Complex::CellId>> crit;
    std::optional<Fields> fields;
    std::optional<Complex> cx_only;
    const Complex* cx = nullptr;
    if (cfg.stage == "final") {
        fields.emplace(build_fields(cfg, L));
        cx = &fields->cx;
        crit = final_critical_cells(fields->cx, fields->initial, fields->reversed);
    } else {
        cx_only.emplace(Complex::enumerate(L, complex_options(cfg)));
        cx = &*cx_only;
        crit = critical_cells(*cx, build_field(*cx));
    }

    std::size_t total = 0;
    for (const auto& d : crit)
        total += d.size();
    if (cfg.format == OutputFormat::Json) {
        json cells = json::array();
        for (const auto& dim : crit) {
            json row = json::array();
            for (auto c : dim)
                row.push_back({{"label", cx->label(c).to_string()},
                               {"class", classify_critical(L, cx->label(c)).to_string()}});
            cells.push_back(row);
        }
        json j = {{"linkage", linkage_json(L)},
                  {"n", L.n()},
                  {"stage", cfg.stage},
                  {"total", total},
                  {"critical_per_dim", sizes_per_dim(crit)},
                  {"critical", cells}};
        out << j.dump(2) << "\n";
    } else {
        out << cfg.stage << " critical cells: " << total << " (per dim " << join(sizes_per_dim(crit)) << ")\n";
        for (std::size_t d = 0; d < crit.size(); ++d) {
            out << "dim " << d << ":\n";
            for (auto c : crit[d])
                out << "  " << cx->label(c).to_string() << "  " << classify_critical(L, cx->label(c)).to_string() << "\n";
        }
    }
    return 0;
}

int cmd_reverse(const RunConfig& cfg, const Linkage& L, std::ostream& out)
{
    const Fields fs = build_fields(cfg, L);
    const bool acyclic = verify_final_morse(fs.cx, fs.reversed);
    if (cfg.format == OutputFormat::Json) {
        json j = {{"linkage", linkage_json(L)}, {"n", L.n()}, {"plan", plan_json(fs.cx, fs.plan)}, {"acyclic", acyclic}};
        out << j.dump(2) << "\n";
    } else if (cfg.format == OutputFormat::Dot) {
        std::vector<GradientPath> paths;
        for (const auto& t : fs.plan.triples)
            paths.push_back(t.path);
        out << paths_to_dot(fs.cx, fs.initial, paths);
    } else {
        out << "reversed paths: " << fs.plan.triples.size() << "\n";
        for (const auto& t : fs.plan.triples) {
            out << "  j=" << t.j << ":";
            for (auto c : t.path.cells)
                out << " " << fs.cx.label(c).to_string();
            out << "\n";
        }
        out << "acyclic after reversal: " << (acyclic ? "yes" : "no") << "\n";
    }
    return acyclic ? 0 : 1;
}

int cmd_betti(const RunConfig& cfg, const Linkage& L, std::ostream& out)
{
    const Complex cx = Complex::enumerate(L, complex_options(cfg));
    const auto cellular = betti_mod2(cx);
    const auto shortsets = betti_from_short_sets(L);
    if (cfg.format == OutputFormat::Json) {
        json j = {{"linkage", linkage_json(L)},
                  {"n", L.n()},
                  {"betti_cellular", cellular.values},
                  {"betti_shortsets", shortsets.values},
                  {"short_set_profile", L.short_set_profile()}};
        out << j.dump(2) << "\n";
    } else {
        out << "betti_cellular: " << cellular.to_string() << "\n";
        out << "betti_shortsets: " << shortsets.to_string() << "\n";
    }
    return cellular == shortsets ? 0 : 1;
}

void print_report_text(const VerificationReport& r, std::ostream& out)
{
    out << "linkage " << r.linkage << " (n = " << r.n << ")\n";
    out << "cells per dim: " << join(r.cells_per_dim) << "; chi = " << r.euler << "\n";
    out << "critical (initial): " << join(r.critical_initial_per_dim) << "\n";
    out << "critical (final):   " << join(r.critical_final_per_dim) << "\n";
    out << "betti (cellular):   " << r.betti_cellular.to_string() << "\n";
    out << "betti (short sets): " << r.betti_shortsets.to_string() << "\n";
    for (const auto& c : r.checks)
        out << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    out << (r.perfect ? "perfect" : "not perfect") << "\n";
}

int cmd_verify(const RunConfig& cfg, const Linkage& L, std::ostream& out, std::ostream& err)
{
    const auto report = verify_linkage(L, verify_options(cfg));
    if (cfg.format == OutputFormat::Json)
        out << report.to_json().dump(2) << "\n";
    else
        print_report_text(report, out);
    if (const auto* failed = report.first_failure()) {
        err << "verification failed: " << failed->name << ": " << failed->detail << "\n";
        return 1;
    }
    return 0;
}

int cmd_bijection(const RunConfig& cfg, const Linkage& L, std::ostream& out, std::ostream& err)
{
    const Fields fs = build_fields(cfg, L);
    const auto crit = critical_cells(fs.cx, fs.reversed);
    const auto rows = bijection_table(L);
    std::set<Complex::CellId> hit;
    json jrows = json::array();
    std::ostringstream text;
    for (const auto& row : rows) {
        for (const auto* label : {&row.type1, &row.type2})
            if (auto id = fs.cx.find(*label); id && fs.reversed.is_critical(*id))
                hit.insert(*id);
        jrows.push_back({{"J", row.J.to_string()},
                         {"type1", row.type1.to_string()},
                         {"type1_dim", row.type1.dimension()},
                         {"type2", row.type2.to_string()},
                         {"type2_dim", row.type2.dimension()}});
        text << row.J.to_string() << "  ->  " << row.type1.to_string() << " (dim " << row.type1.dimension() << ")  "
             << row.type2.to_string() << " (dim " << row.type2.dimension() << ")\n";
    }
    std::vector<std::string> missed;
    for (const auto& dim : crit)
        for (auto c : dim)
            if (!hit.count(c))
                missed.push_back(fs.cx.label(c).to_string());

    if (cfg.format == OutputFormat::Json) {
        out << json{{"linkage", linkage_json(L)}, {"n", L.n()}, {"rows", jrows}, {"unhit", missed}}.dump(2) << "\n";
    } else {
        out << text.str();
        out << "rows: " << rows.size() << "\n";
        for (const auto& m : missed)
            out << "not hit: " << m << "\n";
    }
    const bool onto = missed.empty() && hit.size() == 2 * rows.size();
    if (!onto) {
        err << "[claim falsified] bijection is not onto the final critical cells\n";
        return 1;
    }
    return 0;
}

int cmd_fuzz(const RunConfig& cfg, std::ostream& out)
{
    std::mt19937_64 rng(cfg.seed);
    const int lo = std::min(4, cfg.max_n);
    const int hi = std::max(3, cfg.max_n);
    std::size_t rejected = 0, passed = 0, failed = 0;
    json cases = json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < cfg.cases; ++i) {
        std::optional<Linkage> L;
        const int n = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
        while (!L) {
            std::vector<Rational> lengths;
            for (int e = 0; e < n; ++e)
                lengths.emplace_back(1 + static_cast<int>(rng() % 12));
            try {
                L = Linkage::create(lengths);
            } catch (const Error&) {
                ++rejected;
            }
        }
        VerifyOptions options = verify_options(cfg);
        options.seed = cfg.seed + i;
        options.complex.max_n = std::max(cfg.max_n, 3);
        const auto r = verify_linkage(*L, options);
        const bool ok = r.passed();
        (ok ? passed : failed)++;
        const auto* first = r.first_failure();
        cases.push_back({{"case", i}, {"linkage", r.linkage}, {"n", r.n}, {"pass", ok},
                         {"failure", first ? first->name + ": " + first->detail : ""}});
        text << "case " << i << ": " << r.linkage << " " << (ok ? "PASS" : "FAIL");
        if (first)
            text << "  " << first->name << ": " << first->detail;
        text << "\n";
    }
    if (cfg.format == OutputFormat::Json)
        out << json{{"seed", cfg.seed}, {"passed", passed}, {"failed", failed}, {"rejected", rejected}, {"cases", cases}}.dump(2)
            << "\n";
    else
        out << text.str() << "fuzz: " << passed << " passed, " << failed << " failed, " << rejected
            << " degenerate draws rejected\n";
    return failed == 0 ? 0 : 1;
}

int cmd_export(const RunConfig& cfg, const Linkage& L, std::ostream& out)
{
    std::optional<PipelineState> state;
    const auto report = verify_linkage(L, verify_options(cfg), &state);
    if (cfg.format == OutputFormat::Dot) {
        require_dot_size(cfg, L);
        if (!state)
            throw Error(ErrorKind::PredictionMismatch, "pipeline did not produce a reversed field");
        out << hasse_dot(state->complex, state->reversed);
        return report.passed() ? 0 : 1;
    }
    json j = report.to_json();
    if (state) {
        const Complex& cx = state->complex;
        json cells = json::array();
        for (Complex::CellId c = 0; c < cx.size(); ++c) {
            json facets = json::array();
            for (auto g : cx.facets(c))
                facets.push_back(g);
            cells.push_back({{"id", c}, {"label", cx.label(c).to_string()}, {"dim", cx.dimension(c)}, {"facets", facets}});
        }
        j["complex"] = cells;
        j["field"] = field_pairs_json(cx, state->initial);
        j["critical_initial"] = labels_by_dim(cx, critical_cells(cx, state->initial));
        j["plan"] = plan_json(cx, state->plan);
        j["final_field"] = field_pairs_json(cx, state->reversed);
        j["critical_final"] = labels_by_dim(cx, critical_cells(cx, state->reversed));
    }
    out << j.dump(2) << "\n";
    return report.passed() ? 0 : 1;
}

} // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.max_n < 3)
            throw Error(ErrorKind::ParseError, "--max-n must be at least 3");

        std::ostringstream buffer;
        int code = 0;
        if (cfg.command == "fuzz") {
            code = cmd_fuzz(cfg, buffer);
        } else {
            if (cfg.lengths.empty())
                throw Error(ErrorKind::ParseError, "--lengths is required for '" + cfg.command + "'");
            const Linkage L = Linkage::parse(cfg.lengths);
            if (cfg.format == OutputFormat::Text && L.input_permutation().size() > 0) {
                bool identity = true;
                for (std::size_t u = 0; u < L.input_permutation().size(); ++u)
                    identity = identity && L.input_permutation()[u] == static_cast<int>(u + 1);
                if (!identity)
                    buffer << permutation_note(L) << "\n";
            }
            if (cfg.command == "cells")
                code = cmd_cells(cfg, L, buffer);
            else if (cfg.command == "field")
                code = cmd_field(cfg, L, buffer);
            else if (cfg.command == "critical")
                code = cmd_critical(cfg, L, buffer);
            else if (cfg.command == "reverse")
                code = cmd_reverse(cfg, L, buffer);
            else if (cfg.command == "betti")
                code = cmd_betti(cfg, L, buffer);
            else if (cfg.command == "verify")
                code = cmd_verify(cfg, L, buffer, err);
            else if (cfg.command == "bijection")
                code = cmd_bijection(cfg, L, buffer, err);
            else if (cfg.command == "export")
                code = cmd_export(cfg, L, buffer);
            else
                throw Error(ErrorKind::ParseError, "unknown command '" + cfg.command + "'");
        }

        if (cfg.out.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(cfg.out);
            if (!file) {
                err << "cannot write " << cfg.out << "\n";
                return 2;
            }
            file << buffer.str();
        }
        return code;
    } catch (const Error& e) {
        switch (e.category()) {
        case ErrorCategory::Input:
        case ErrorCategory::Precondition:
            err << e.what() << "\n";
            return 2;
        case ErrorCategory::Bug:
            err << "[implementation bug] " << to_string(e.kind()) << ": " << e.what() << "\n";
            return 1;
        case ErrorCategory::Falsification:
            err << "[claim falsified] " << to_string(e.kind()) << ": " << e.what() << "\n";
            return 1;
        }
        return 1;
    }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Perfect discrete Morse functions on planar polygon spaces"};
    RunConfig cfg;
    std::string format = "text";
    app.add_option("command", cfg.command, "cells | field | critical | reverse | betti | verify | bijection | fuzz | export")
        ->required()
        ->check(CLI::IsMember({"cells", "field", "critical", "reverse", "betti", "verify", "bijection", "fuzz", "export"}));
    app.add_option("--lengths", cfg.lengths, "comma-separated edge lengths, e.g. 1,1,1,3/2");
    app.add_option("--stage", cfg.stage, "initial | final (critical)")->check(CLI::IsMember({"initial", "final"}));
    app.add_option("--format", format, "text | json | dot")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--max-n", cfg.max_n, "refuse larger linkages unless --force");
    app.add_flag("--force", cfg.force, "override the size guards");
    app.add_option("--seed", cfg.seed, "seed for fuzzing and path sampling");
    app.add_option("--path-cap", cfg.path_cap, "maximum number of explicitly listed gradient paths");
    app.add_option("--out", cfg.out, "write output to FILE");
    app.add_option("--cases", cfg.cases, "number of fuzz cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }
    cfg.format = format == "json" ? OutputFormat::Json : format == "dot" ? OutputFormat::Dot : OutputFormat::Text;
    return run_command(cfg, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("linkmorse");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace linkmorse
