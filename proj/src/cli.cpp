#include "cuspedkit/cli.hpp"

#include "cuspedkit/blowup.hpp"
#include "cuspedkit/chhs.hpp"
#include "cuspedkit/cusped.hpp"
#include "cuspedkit/errors.hpp"
#include "cuspedkit/generators.hpp"
#include "cuspedkit/graph_io.hpp"
#include "cuspedkit/horoball.hpp"
#include "cuspedkit/hyperbolicity.hpp"
#include "cuspedkit/xw_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace cuspedkit {

namespace {

struct Io {
    std::istream& in;
    std::ostream& out;
};

// Reads a whole input (file path, or standard input for "" and "-").
std::vector<Directive> load(const std::string& path, Io io) {
    if (path.empty() || path == "-") return read_directives(io.in);
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open '" + path + "'");
    return read_directives(f);
}

void emit(const std::string& path, const std::string& text, Io io) {
    if (path.empty() || path == "-") {
        io.out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write '" + path + "'");
    f << text;
}

std::optional<std::uint32_t> parse_depth(const std::string& s) {
    if (s == "auto") return std::nullopt;
    const auto v = parse_unsigned(s, 0);
    if (v > kMaxHoroballCap) throw InvalidInput("depth above " + std::to_string(kMaxHoroballCap));
    return static_cast<std::uint32_t>(v);
}

std::string check_line(const std::string& name, const CheckResult& r) {
    std::string line = "CHECK " + name + " " + to_string(r.verdict);
    if (!r.detail.empty()) line += " " + r.detail;
    return line + "\n";
}

int depth_from_label(const std::string& label) {
    const auto at = label.rfind('@');
    if (at == std::string::npos || at + 1 == label.size()) return 0;
    const std::string tail = label.substr(at + 1);
    if (!std::all_of(tail.begin(), tail.end(), [](char c) { return c >= '0' && c <= '9'; })) return 0;
    return std::stoi(tail);
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combinatorial horoballs, blowups, CHHS pairs and cusped spaces"};
    app.require_subcommand(1);

    std::string input, output, depth = "auto", sub_list;
    unsigned jobs = 1;
    std::size_t budget = default_cusped_budget();
    bool allow_empty = false, relative = false;
    std::optional<double> delta_claim;
    std::optional<std::uint32_t> complexity_claim;
    std::size_t max_simplices = 1'000'000;

    auto* horoball = app.add_subcommand("horoball", "Build a truncated combinatorial horoball over a graph");
    horoball->add_option("--input", input, "Base graph (default: standard input)");
    horoball->add_option("--depth", depth, "Truncation depth or 'auto'");
    horoball->add_option("--out", output, "Output graph");

    auto* blowup = app.add_subcommand("blowup", "Build a blowup graph from support data");
    blowup->add_option("--input", input, "Blowup data (default: standard input)");
    blowup->add_flag("--allow-empty", allow_empty, "Permit empty base sets");
    blowup->add_option("--out", output, "Output pair with no W-edges");

    auto* cusp = app.add_subcommand("cusp", "Build the cusped space of an (X, W) pair over a blowup");
    cusp->add_option("--xw", input, "Source pair (default: standard input)");
    cusp->add_option("--depth", depth, "Truncation depth or 'auto'");
    cusp->add_option("--budget", budget, "Maximal simplex budget");
    cusp->add_option("--out", output, "Output bundle");

    auto* delta = app.add_subcommand("delta", "Four-point hyperbolicity constant");
    delta->add_option("--input", input, "Graph (default: standard input)");
    delta->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* distort = app.add_subcommand("distort", "Distortion of an induced subgraph");
    distort->add_option("--input", input, "Ambient graph (default: standard input)");
    distort->add_option("--sub", sub_list, "Comma separated vertex ids")->required();

    auto* check = app.add_subcommand("check", "Run checkers");
    check->require_subcommand(1);
    auto* check_chhs = check->add_subcommand("chhs", "Check the five axioms of an (X, W) pair");
    check_chhs->add_option("--xw", input, "Pair or cusped bundle (default: standard input)");
    check_chhs->add_option("--delta", delta_claim, "Claimed constant");
    check_chhs->add_option("--complexity", complexity_claim, "Claimed complexity");
    check_chhs->add_flag("--relative", relative, "Exempt cone-type classes from hyperbolicity");
    check_chhs->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    auto* check_cusped = check->add_subcommand("cusped", "Check the cusped-space lemmas");
    check_cusped->add_option("--xw", input, "Cusped bundle or source pair (default: standard input)");
    check_cusped->add_option("--depth", depth, "Truncation depth for a source pair, or 'auto'");
    check_cusped->add_option("--budget", budget, "Maximal simplex budget");
    check_cusped->add_option("--max-simplices", max_simplices, "Simplex enumeration limit");
    auto* check_horoball = check->add_subcommand("horoball", "Check the horoball distance lower bound");
    check_horoball->add_option("--base", input, "Base graph (default: standard input)");
    check_horoball->add_option("--depth", depth, "Truncation depth or 'auto'");

    std::uint32_t radius = 2, margin = 1;
    std::uint64_t seed = 0;
    std::size_t support_size = 5, base_max = 2, size = 8;
    double density = 1.0, prob = 0.15;
    std::string kind = "path";
    auto* gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    auto* gen_relhyp_cmd = gen->add_subcommand("relhyp", "F2 relative to <a> on a Cayley ball");
    gen_relhyp_cmd->add_option("--radius", radius, "Ball radius");
    gen_relhyp_cmd->add_option("--margin", margin, "Boundary margin for inner vertices");
    gen_relhyp_cmd->add_option("--out", output, "Output pair");
    auto* gen_blowup_cmd = gen->add_subcommand("blowup", "Random blowup over a girth-5 support");
    gen_blowup_cmd->add_option("--seed", seed, "Random seed");
    gen_blowup_cmd->add_option("--support", support_size, "Support vertices");
    gen_blowup_cmd->add_option("--base-max", base_max, "Largest base size");
    gen_blowup_cmd->add_option("--density", density, "W-edge probability");
    gen_blowup_cmd->add_option("--out", output, "Output pair");
    auto* gen_family_cmd = gen->add_subcommand("family", "Structured graph families");
    gen_family_cmd->add_option("--kind", kind, "path, cycle, grid or quasiline");
    gen_family_cmd->add_option("--size", size, "Size parameter");
    gen_family_cmd->add_option("--out", output, "Output graph");
    auto* gen_gnp_cmd = gen->add_subcommand("gnp", "Erdős–Rényi random graph");
    gen_gnp_cmd->add_option("--n", size, "Vertices");
    gen_gnp_cmd->add_option("--p", prob, "Edge probability");
    gen_gnp_cmd->add_option("--seed", seed, "Random seed");
    gen_gnp_cmd->add_option("--out", output, "Output graph");

    auto* export_dot = app.add_subcommand("export-dot", "Render a graph or pair in dot, ranked by depth");
    export_dot->add_option("--input", input, "Graph or pair (default: standard input)");
    export_dot->add_option("--out", output, "Output file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    const Io io{in, out};
    std::ostringstream echo;
    echo << "# cuspedkit";
    for (const auto& a : args) echo << ' ' << a;
    echo << '\n';
    out << echo.str();

    try {
        std::ostringstream text;
        if (horoball->parsed()) {
            const Graph base = graph_from_directives(load(input, io));
            const auto cap = parse_depth(depth).value_or(default_cap(base));
            write_graph(text, build_horoball(base, cap).graph());
            emit(output, text.str(), io);
            return 0;
        }
        if (blowup->parsed()) {
            std::vector<Directive> ds = load(input, io);
            std::ostringstream raw;
            for (const auto& d : ds) raw << d.keyword << ' ' << d.rest << '\n';
            std::istringstream again(raw.str());
            const BlowupData data = read_blowup_data(again);
            write_xw(text, XWPair(build_blowup(data, allow_empty), {}));
            emit(output, text.str(), io);
            return 0;
        }
        if (cusp->parsed()) {
            CuspedOptions opts;
            opts.cap = parse_depth(depth);
            opts.budget = budget;
            write_cusped_bundle(text, build_cusped(xw_from_directives(load(input, io)), opts));
            emit(output, text.str(), io);
            return 0;
        }
        if (delta->parsed()) {
            const DeltaReport r = four_point_delta(graph_from_directives(load(input, io)), jobs);
            out << "DELTA " << format_half(r.twice_delta) << '\n';
            if (r.witness)
                out << "# witness " << (*r.witness)[0] << ' ' << (*r.witness)[1] << ' ' << (*r.witness)[2] << ' '
                    << (*r.witness)[3] << '\n';
            return 0;
        }
        if (distort->parsed()) {
            const Graph amb = graph_from_directives(load(input, io));
            std::vector<VertexId> ids;
            std::stringstream ss(sub_list);
            for (std::string tok; std::getline(ss, tok, ',');)
                if (!tok.empty()) ids.push_back(parse_vertex_id(tok, 0));
            const DistortionReport r = distortion(amb, sets::make(ids));
            out << "DISTORT " << r.to_string() << '\n';
            if (r.witness) out << "# witness " << r.witness->first << ' ' << r.witness->second << '\n';
            return 0;
        }
        if (check_chhs->parsed()) {
            const auto ds = load(input, io);
            const XWPair p = is_cusped_bundle(ds) ? cusped_from_directives(ds, budget).what() : xw_from_directives(ds);
            AxiomOptions opts;
            opts.delta_claim = delta_claim;
            opts.complexity_claim = complexity_claim;
            opts.relative = relative;
            opts.jobs = jobs;
            const AxiomReport r = check_axioms(p, opts);
            out << "CONST complexity " << r.complexity_n << '\n';
            out << "CONST delta " << r.delta << '\n';
            out << "CONST classes " << r.per_domain_distortion.size() << '\n';
            for (std::size_t i = 0; i < r.axioms.size(); ++i) {
                out << "AXIOM " << i + 1 << ' ' << to_string(r.axioms[i].verdict);
                if (!r.axioms[i].detail.empty()) out << ' ' << r.axioms[i].detail;
                out << '\n';
            }
            return r.ok() ? 0 : 1;
        }
        if (check_cusped->parsed()) {
            const auto ds = load(input, io);
            CuspedOptions opts;
            opts.cap = parse_depth(depth);
            opts.budget = budget;
            const CuspedPair c = is_cusped_bundle(ds) ? cusped_from_directives(ds, budget)
                                                      : build_cusped(xw_from_directives(ds), opts);
            out << "CONST cap " << c.cap() << '\n';
            std::vector<std::pair<std::string, CheckResult>> results;
            results.emplace_back("links_lemma", check_links_lemma(c, max_simplices));
            results.emplace_back("nesting_correspondence", check_nesting_correspondence(c, max_simplices));
            results.emplace_back("cone_link_is_horoball", check_cone_link_is_horoball(c).overall);
            results.emplace_back("duaug_embedding", check_duaug_embedding(c));
            results.emplace_back("w_coarse_embedding", check_w_coarse_embedding(c));
            results.emplace_back("depth_difference", check_depth_difference(c));
            results.emplace_back("blowup_type_2qi", check_blowup_type_2qi(c).overall);
            bool ok = true;
            for (const auto& [name, r] : results) {
                out << check_line(name, r);
                ok = ok && r.passed();
            }
            return ok ? 0 : 1;
        }
        if (check_horoball->parsed()) {
            const Graph base = graph_from_directives(load(input, io));
            const auto cap = parse_depth(depth).value_or(default_cap(base));
            const HoroballBoundCheck r = check_horoball_lower_bound(build_horoball(base, cap));
            CheckResult cr;
            if (!r.ok) {
                cr.verdict = Verdict::Fail;
                cr.detail = "pair " + std::to_string(r.counterexample->first) + " " +
                            std::to_string(r.counterexample->second);
            }
            out << "CONST cap " << cap << '\n';
            out << "CONST pairs " << r.pairs_checked << '\n';
            out << "CONST top_layer_pairs " << r.top_layer_pairs << '\n';
            out << check_line("lower_bound", cr);
            return r.ok ? 0 : 1;
        }
        if (gen_relhyp_cmd->parsed()) {
            write_xw(text, gen_relhyp(radius, margin).xw);
            emit(output, text.str(), io);
            return 0;
        }
        if (gen_blowup_cmd->parsed()) {
            if (density < 0 || density > 1) throw InvalidInput("density must lie in [0, 1]");
            write_xw(text, gen_random_blowup(seed, support_size, base_max, density));
            emit(output, text.str(), io);
            return 0;
        }
        if (gen_family_cmd->parsed()) {
            write_graph(text, gen_family(parse_family_kind(kind), size));
            emit(output, text.str(), io);
            return 0;
        }
        if (gen_gnp_cmd->parsed()) {
            if (prob < 0 || prob > 1) throw InvalidInput("p must lie in [0, 1]");
            write_graph(text, gen_gnp(size, prob, seed));
            emit(output, text.str(), io);
            return 0;
        }
        if (export_dot->parsed()) {
            std::vector<Directive> rest;
            const Graph g = graph_from_directives(load(input, io), &rest);
            std::map<int, std::vector<VertexId>> ranks;
            text << "graph cuspedkit {\n";
            for (VertexId v : g.vertices()) {
                text << "  n" << v << " [label=\"" << dot_escape(g.label(v).empty() ? std::to_string(v) : g.label(v))
                     << "\"];\n";
                ranks[depth_from_label(g.label(v))].push_back(v);
            }
            for (const auto& [d, vs] : ranks) {
                text << "  { rank=same;";
                for (VertexId v : vs) text << " n" << v << ';';
                text << " }  // depth " << d << '\n';
            }
            for (const auto& [a, b] : g.edges()) text << "  n" << a << " -- n" << b << ";\n";
            text << "}\n";
            emit(output, text.str(), io);
            return 0;
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const SizeGuardExceeded& e) {
        err << "error: size guard: " << e.what() << '\n';
        return 2;
    } catch (const LemmaViolation& e) {
        err << "lemma violation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

}  // namespace cuspedkit
