// mkz: construct lattices, reduce them, compute minima and run verification suites.
//
// Exit codes: 0 pass, 1 a verdict failed, 2 usage, parse or budget error.

#include "mkz/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace mkz;

struct GlobalFlags {
    std::uint64_t node_budget = 100'000'000;
    unsigned parallel = 1;
    std::string out;

    EnumOptions enumeration() const { return EnumOptions{node_budget, std::max(1u, parallel)}; }
};

void emit(const GlobalFlags& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f)
        throw Error("cannot write " + g.out);
    f << text;
}

long parse_param(const std::vector<std::string>& params, std::size_t i, const std::string& name) {
    if (params.size() <= i)
        throw BadParams(name + " needs a parameter");
    try {
        std::size_t used = 0;
        const long v = std::stol(params[i], &used);
        if (used != params[i].size())
            throw BadParams("bad parameter '" + params[i] + "'");
        return v;
    } catch (const std::logic_error&) {
        throw BadParams("bad parameter '" + params[i] + "'");
    }
}

Lattice construct(const std::string& name, const std::vector<std::string>& params) {
    auto expect = [&](std::size_t n) {
        if (params.size() != n)
            throw BadParams(name + " takes " + std::to_string(n) + " parameter(s)");
    };
    auto positive = [&](long lo) {
        expect(1);
        const long v = parse_param(params, 0, name);
        if (v < lo || v > 200)
            throw BadParams(name + " parameter out of range");
        return static_cast<std::size_t>(v);
    };
    if (name == "zn")
        return hypercubic(positive(1));
    if (name == "dn")
        return root_d(positive(2));
    if (name == "dnstar")
        return dual_root_d(positive(2));
    if (name == "glued") {
        const auto k = positive(1);
        if (k > 4)
            throw BadParams("glued supports k <= 4");
        return glued_prime_lattice(k);
    }
    if (name == "l2_small") {
        expect(0);
        return l2_small();
    }
    if (name == "lproj") {
        expect(0);
        return l_proj().lattice;
    }
    if (name == "attempt21") {
        expect(0);
        return attempt21().lattice;
    }
    if (name == "lattice42") {
        expect(0);
        return lattice42().lattice;
    }
    if (name == "perturbed43") {
        if (params.size() > 1)
            throw BadParams("perturbed43 takes at most 1 parameter");
        const long scale = params.empty() ? 10'000 : parse_param(params, 0, name);
        if (scale <= 0)
            throw BadParams("height scale must be positive");
        return perturbed43(scale).lattice;
    }
    throw UnknownConstruction("unknown construction '" + name + "'");
}

std::string lattice_id(const std::string& path) { return std::filesystem::path(path).filename().string(); }

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t parse_size(const std::string& s, const std::string& what) {
    std::vector<std::string> p{s};
    const long v = parse_param(p, 0, what);
    if (v < 1)
        throw BadParams(what + " must be positive");
    return static_cast<std::size_t>(v);
}

int run_verify(const GlobalFlags& g, const std::string& suite, const std::vector<std::string>& args) {
    auto arg = [&](const std::string& what) {
        if (args.size() != 1)
            throw BadParams("verify " + suite + " takes one argument (" + what + ")");
        return args[0];
    };
    const auto opts = g.enumeration();
    if (suite == "appendix42" || suite == "attempt21") {
        if (!args.empty())
            throw BadParams("verify " + suite + " takes no arguments");
        const auto rep = suite == "appendix42" ? check_shortest_vectors_42(g.parallel) : check_attempt21(g.parallel);
        emit(g, report_appendix(rep).dump());
        return rep.success() ? 0 : 1;
    }
    TheoremReport rep;
    std::string op = "verify " + suite;
    if (suite == "gap") {
        const auto k = parse_size(arg("k"), "k");
        if (k > 3)
            throw BadParams("gap supports k <= 3");
        rep = verify_theorem_gap(k, opts);
    } else if (suite == "kz-structure") {
        const auto k = parse_size(arg("k"), "k");
        if (k > 3)
            throw BadParams("kz-structure supports k <= 3");
        rep = verify_kz_structure(k, opts);
    } else if (suite == "minkowski-bounds") {
        const auto path = arg("lattice file");
        rep = verify_minkowski_bounds(read_lattice_file(path), lattice_id(path), opts);
    } else if (suite == "delta-table") {
        const auto k = parse_size(arg("K"), "K");
        if (k > 1000)
            throw BadParams("delta-table supports K <= 1000");
        rep = verify_delta_table(k);
    } else if (suite == "lift43") {
        if (!args.empty())
            throw BadParams("verify lift43 takes no arguments");
        rep = verify_perturbed_lift(perturbed43(), check_shortest_vectors_42(g.parallel));
    } else {
        throw BadParams("unknown suite '" + suite + "'");
    }
    emit(g, report_theorem(rep, op).dump());
    return rep.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice reduction and verification toolkit"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_option("--node-budget", g.node_budget, "Enumeration node budget")->capture_default_str();
    app.add_option("--parallel", g.parallel, "Worker threads")->capture_default_str();
    app.add_option("--out", g.out, "Write the result here instead of stdout");

    std::string name;
    std::vector<std::string> params;
    auto* construct_cmd = app.add_subcommand("construct", "Write a lattice file");
    construct_cmd->add_option("name", name, "zn dn dnstar glued l2_small lproj attempt21 lattice42 perturbed43")
        ->required();
    construct_cmd->add_option("params", params, "Construction parameters");

    std::string alg;
    std::string input;
    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a lattice");
    reduce_cmd->add_option("--alg", alg, "minkowski, kz or lll")
        ->required()
        ->check(CLI::IsMember({"minkowski", "kz", "lll"}));
    reduce_cmd->add_option("input", input, "Lattice file")->required();

    bool with_basis = false;
    auto* minima_cmd = app.add_subcommand("minima", "Successive minima");
    minima_cmd->add_flag("--shortest-basis", with_basis, "Also compute the primitive minimum");
    minima_cmd->add_option("input", input, "Lattice file")->required();

    std::string suite;
    std::vector<std::string> suite_args;
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    verify_cmd->add_option("suite", suite, "appendix42 attempt21 lift43 gap kz-structure minkowski-bounds delta-table")
        ->required();
    verify_cmd->add_option("args", suite_args, "Suite arguments");

    for (auto* sub : {construct_cmd, reduce_cmd, minima_cmd, verify_cmd}) {
        sub->add_option("--node-budget", g.node_budget, "Enumeration node budget");
        sub->add_option("--parallel", g.parallel, "Worker threads");
        sub->add_option("--out", g.out, "Write the result here instead of stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        if (*construct_cmd) {
            emit(g, serialize_lattice(construct(name, params)));
            return 0;
        }
        if (*reduce_cmd) {
            const Lattice lat = read_lattice_file(input);
            ReductionResult res;
            if (alg == "minkowski")
                res = minkowski_reduce(lat, g.enumeration());
            else if (alg == "kz")
                res = kz_reduce(lat, g.enumeration());
            else
                res = lll(lat);
            emit(g, report_reduction(lattice_id(input), res, ms_since(t0)).dump());
            return 0;
        }
        if (*minima_cmd) {
            const Lattice lat = read_lattice_file(input);
            const auto mr = successive_minima(lat, g.enumeration());
            if (with_basis) {
                ShortestBasisOptions sbo;
                sbo.enumeration = g.enumeration();
                const auto sb = shortest_basis(lat, sbo);
                emit(g, report_minima(lattice_id(input), mr, &sb, ms_since(t0)).dump());
            } else {
                emit(g, report_minima(lattice_id(input), mr, nullptr, ms_since(t0)).dump());
            }
            return 0;
        }
        return run_verify(g, suite, suite_args);
    } catch (const mkz::Error& e) {
        ReportDocument doc("", "error");
        doc.set_text("verdict", "error");
        doc.set_text("error", e.what());
        try {
            emit(g, doc.dump());
        } catch (const mkz::Error&) {
        }
        std::cerr << "mkz: " << e.what() << '\n';
        return 2;
    }
}
