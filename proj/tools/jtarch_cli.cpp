// Command-line harness: compile, infer, verify, bench, report.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jtarch/bench.hpp"
#include "jtarch/engines.hpp"
#include "jtarch/network_io.hpp"
#include "jtarch/storage.hpp"

using namespace jtarch;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Common {
    std::string format = "text";
    std::string elimination = "min-fill";
    std::size_t oracle_cap = kDefaultOracleCap;
};

Heuristic heuristic(const std::string& name) {
    if (name == "min-fill") return Heuristic::MinFill;
    throw CLI::ValidationError("--elimination", "unsupported heuristic " + name);
}

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", x);
    return buf;
}

int cmd_compile(const std::string& path, const Common& c) {
    NetworkFile f = load_network(path);
    InputSet in = input_potentials(f.net, f.evidence);
    Compiled comp = compile(f.net, in, all_variables(f.net), heuristic(c.elimination));
    std::cout << "# elimination order:";
    for (int v : comp.order) std::cout << " " << f.net.vars[std::size_t(v)].name;
    std::cout << "\n# junction tree\n" << dump_tree(comp.junction, f.net, &in);
    auto jr = verify_join_tree(comp.junction);
    std::cout << "# verify: " << (jr.empty() ? "clean" : jr.front()) << "\n";
    std::cout << "# binary join tree\n" << dump_tree(comp.binary, f.net, &in);
    auto br = verify_join_tree(comp.binary, true);
    std::cout << "# verify: " << (br.empty() ? "clean" : br.front()) << "\n";
    return jr.empty() && br.empty() ? kOk : kVerifyFailed;
}

int cmd_infer(const std::string& path, const std::string& arch, const Common& c) {
    NetworkFile f = load_network(path);
    Format fmt = parse_format(c.format);
    AllResults all = run_all(f.net, f.evidence);
    std::vector<std::pair<std::string, const EngineResult*>> runs;
    if (arch == "ls" || arch == "all") runs.emplace_back("ls", &all.ls);
    if (arch == "hugin" || arch == "all") runs.emplace_back("hugin", &all.hugin);
    if (arch == "ss" || arch == "all") runs.emplace_back("ss", &all.ss);
    if (fmt == Format::Csv) std::cout << "arch,variable,state,probability\n";
    for (const auto& [name, r] : runs) {
        if (fmt != Format::Csv) std::cout << "[" << name << "]\n";
        for (const auto& [v, m] : r->singleton_marginals) {
            const auto& var = f.net.vars[std::size_t(v)];
            if (fmt == Format::Csv) {
                for (int s = 0; s < var.card; ++s)
                    std::cout << name << "," << var.name << "," << var.states[std::size_t(s)] << ","
                              << fmt_double(m.values()[std::size_t(s)]) << "\n";
            } else {
                std::cout << var.name << ":";
                for (int s = 0; s < var.card; ++s)
                    std::cout << " " << var.states[std::size_t(s)] << "=" << fmt_double(m.values()[std::size_t(s)]);
                std::cout << "\n";
            }
        }
        const OpCounter& k = r->counter;
        if (fmt == Format::Csv)
            std::cout << name << ",#ops,adds=" << k.adds << " mults=" << k.mults << " divs=" << k.divs << ","
                      << k.total() << "\n";
        else
            std::cout << "ops: adds=" << k.adds << " mults=" << k.mults << " divs=" << k.divs << " total=" << k.total()
                      << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& path, double tolerance, bool corrupt, const Common& c) {
    NetworkFile f = load_network(path);
    std::size_t size = joint_size(f.net);
    if (size > c.oracle_cap) {
        std::cerr << "refusing to verify: joint has " << size << " configurations, oracle cap is " << c.oracle_cap
                  << "\n";
        return kUsage;
    }
    EngineOptions opt;
    if (corrupt) opt.corrupt_factor = 1.01;
    AllResults all = run_all(f.net, f.evidence, opt);
    auto oracle = oracle_marginals(f.net, f.evidence, c.oracle_cap);
    double worst = 0;
    for (const auto& [name, r] : {std::pair<const char*, const EngineResult*>{"ls", &all.ls},
                                  {"hugin", &all.hugin},
                                  {"ss", &all.ss}}) {
        double e = max_marginal_error(*r, oracle);
        worst = std::max(worst, e);
        std::printf("%-6s max deviation %.3e\n", name, e);
    }
    bool ok = worst <= tolerance;
    std::printf("%s (tolerance %.1e)\n", ok ? "PASS" : "FAIL", tolerance);
    return ok ? kOk : kVerifyFailed;
}

GenParams parse_params(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
    if (v.size() != 5) throw CLI::ValidationError("--params", "expected n,c1,c2,m,p");
    GenParams g;
    g.n = v[0];
    g.c1 = v[1];
    g.c2 = v[2];
    g.m = v[3];
    g.p = v[4];
    check_params(g);
    return g;
}

int cmd_bench(const std::string& params, int trials, std::uint64_t seed, const std::string& out, bool verify,
              double div_weight, const Common& c) {
    GenParams g = parse_params(params);
    auto rows = run_batch(g, trials, seed, verify, c.oracle_cap);
    std::string csv = to_csv(rows);
    if (out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << csv;
    }
    for (const auto& r : rows) {
        if (r.ls.ops.mults != r.hugin.ops.mults || r.hugin.ops.adds > r.ls.ops.adds || r.hugin.ops.divs > r.ls.ops.divs ||
            r.ss.ops.divs != 0) {
            std::cerr << "invariant violated in trial " << r.trial << "\n";
            return kVerifyFailed;
        }
        if (verify && r.oracle_error > 1e-9) {
            std::cerr << "oracle mismatch in trial " << r.trial << "\n";
            return kVerifyFailed;
        }
    }
    if (!out.empty()) std::cout << render_report({summarize(rows, div_weight)}, parse_format(c.format));
    return kOk;
}

int cmd_report(const std::vector<std::string>& files, double div_weight, const Common& c) {
    if (files.empty()) throw CLI::ValidationError("report", "at least one CSV file is required");
    std::vector<BatchSummary> batches;
    for (const auto& path : files) {
        std::ifstream f(path);
        if (!f) throw ParseError("cannot open " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        auto rows = parse_csv(ss.str());
        if (rows.empty()) throw ParseError(path + " holds no trials");
        batches.push_back(summarize(rows, div_weight));
    }
    std::cout << render_report(batches, parse_format(c.format));
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact inference with the LS, Hugin and Shenoy-Shafer architectures"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--format", common.format, "text, csv or markdown")
        ->check(CLI::IsMember({"text", "csv", "markdown"}));
    app.add_option("--elimination", common.elimination, "triangulation heuristic")->check(CLI::IsMember({"min-fill"}));
    app.add_option("--oracle-cap", common.oracle_cap, "largest joint the brute-force oracle will build");

    std::string net_path, arch = "all", params, out;
    double tolerance = 1e-9, div_weight = 1.0;
    int trials = 1000;
    std::uint64_t seed = 1;
    bool corrupt = false, verify = false;
    std::vector<std::string> files;

    auto* compile_cmd = app.add_subcommand("compile", "print the junction tree and binary join tree");
    compile_cmd->add_option("network", net_path, "network JSON file")->required();

    auto* infer_cmd = app.add_subcommand("infer", "print singleton marginals and operation counts");
    infer_cmd->add_option("network", net_path, "network JSON file")->required();
    infer_cmd->add_option("--arch", arch, "ls, hugin, ss or all")->check(CLI::IsMember({"ls", "hugin", "ss", "all"}));

    auto* verify_cmd = app.add_subcommand("verify", "compare every architecture with the brute-force joint");
    verify_cmd->add_option("network", net_path, "network JSON file")->required();
    verify_cmd->add_option("--tolerance", tolerance, "maximum allowed deviation");
    verify_cmd->add_flag("--corrupt-engine", corrupt, "perturb engine output (harness self-test)");

    auto* bench_cmd = app.add_subcommand("bench", "run a batch of random networks");
    bench_cmd->add_option("--params", params, "n,c1,c2,m,p")->required();
    bench_cmd->add_option("--trials", trials, "number of random networks");
    bench_cmd->add_option("--seed", seed, "batch seed");
    bench_cmd->add_option("--out", out, "CSV output file (stdout when omitted)");
    bench_cmd->add_flag("--verify", verify, "check each trial against the oracle when under the cap");
    bench_cmd->add_option("--div-weight", div_weight, "cost of one division in the summary totals");

    auto* report_cmd = app.add_subcommand("report", "summarize benchmark CSV files");
    report_cmd->add_option("files", files, "CSV files written by bench");
    report_cmd->add_option("--div-weight", div_weight, "cost of one division in the totals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*compile_cmd) return cmd_compile(net_path, common);
        if (*infer_cmd) return cmd_infer(net_path, arch, common);
        if (*verify_cmd) return cmd_verify(net_path, tolerance, corrupt, common);
        if (*bench_cmd) return cmd_bench(params, trials, seed, out, verify, div_weight, common);
        if (*report_cmd) return cmd_report(files, div_weight, common);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return kUsage;
}
