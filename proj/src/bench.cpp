#include "jtarch/bench.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "jtarch/engines.hpp"

namespace jtarch {

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "csv") return Format::Csv;
    if (s == "markdown") return Format::Markdown;
    throw std::invalid_argument("unknown format " + s);
}

const std::vector<Preset>& table_presets() {
    static const std::vector<Preset> p = {
        {6, 3, 2}, {6, 6, 4}, {8, 3, 2}, {8, 6, 5}, {10, 3, 2}, {12, 3, 2}, {12, 6, 2}, {14, 6, 2}, {16, 6, 2}, {20, 3, 2},
    };
    return p;
}

ComparisonRow run_trial(const GenParams& base, std::uint64_t batch_seed, int trial, bool verify, std::size_t oracle_cap) {
    ComparisonRow row;
    row.trial = trial;
    row.seed = trial_seed(batch_seed, std::uint64_t(trial));
    row.params = base;
    row.params.seed = row.seed;
    BayesNet net = random_net(row.params);
    Rng rng(splitmix64(row.seed ^ 0x5EEDEF1DE11CEULL));
    Evidence ev = random_evidence(net, row.params, rng);
    row.evidence_count = int(ev.items.size());
    AllResults all = run_all(net, ev);
    auto targets = all_variables(net);
    row.jt_nodes = all.compiled.junction.size();
    row.bjt_nodes = all.compiled.binary.size();
    row.ls = {all.ls.counter, storage_report(Arch::LS, all.compiled.junction, all.inputs, targets, all.ls)};
    row.hugin = {all.hugin.counter, storage_report(Arch::Hugin, all.compiled.junction, all.inputs, targets, all.hugin)};
    row.ss = {all.ss.counter, storage_report(Arch::SS, all.compiled.binary, all.inputs, targets, all.ss)};
    if (verify && joint_size(net) <= oracle_cap) {
        auto oracle = oracle_marginals(net, ev, oracle_cap);
        row.oracle_error = std::max({max_marginal_error(all.ls, oracle), max_marginal_error(all.hugin, oracle),
                                     max_marginal_error(all.ss, oracle)});
    }
    return row;
}

std::vector<ComparisonRow> run_batch(const GenParams& base, int trials, std::uint64_t seed, bool verify,
                                     std::size_t oracle_cap) {
    if (trials <= 0) throw std::invalid_argument("trials must be positive");
    check_params(base);
    std::vector<ComparisonRow> rows;
    rows.reserve(std::size_t(trials));
    for (int t = 0; t < trials; ++t) rows.push_back(run_trial(base, seed, t, verify, oracle_cap));
    return rows;
}

BatchSummary summarize(const std::vector<ComparisonRow>& rows, double div_weight) {
    if (rows.empty()) throw std::invalid_argument("cannot summarize an empty batch");
    BatchSummary s;
    s.params = rows.front().params;
    s.trials = int(rows.size());
    for (const auto& r : rows) {
        s.mean_ls += r.ls.ops.weighted_total(div_weight);
        s.mean_hugin += r.hugin.ops.weighted_total(div_weight);
        s.mean_ss += r.ss.ops.weighted_total(div_weight);
        s.mean_storage_ls += double(r.ls.storage.total_fpn());
        s.mean_storage_hugin += double(r.hugin.storage.total_fpn());
        s.mean_storage_ss += double(r.ss.storage.total_fpn());
    }
    double k = double(rows.size());
    for (double* x : {&s.mean_ls, &s.mean_hugin, &s.mean_ss, &s.mean_storage_ls, &s.mean_storage_hugin,
                      &s.mean_storage_ss})
        *x /= k;
    return s;
}

std::string csv_header() {
    std::string h = "schema,trial,seed,n,c1,c2,m,p,evidence,jt_nodes,bjt_nodes";
    for (const char* a : {"ls", "hugin", "ss"}) {
        std::string p(a);
        h += "," + p + "_adds," + p + "_mults," + p + "_divs," + p + "_total," + p + "_storage";
    }
    return h + ",oracle_error\n";
}

std::string csv_row(const ComparisonRow& r) {
    std::ostringstream os;
    os << kCsvSchema << ',' << r.trial << ',' << r.seed << ',' << r.params.n << ',' << r.params.c1 << ','
       << r.params.c2 << ',' << r.params.m << ',' << r.params.p << ',' << r.evidence_count << ',' << r.jt_nodes << ','
       << r.bjt_nodes;
    for (const ArchRow* a : {&r.ls, &r.hugin, &r.ss})
        os << ',' << a->ops.adds << ',' << a->ops.mults << ',' << a->ops.divs << ',' << a->ops.total() << ','
           << a->storage.total_fpn();
    os << ',';
    if (r.oracle_error >= 0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", r.oracle_error);
        os << buf;
    }
    os << '\n';
    return os.str();
}

std::string to_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = csv_header();
    for (const auto& r : rows) out += csv_row(r);
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::vector<ComparisonRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line + "\n" != csv_header())
        throw std::invalid_argument("CSV header does not match schema " + std::to_string(kCsvSchema));
    std::vector<ComparisonRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split(line);
        if (f.size() != 27 || f[0] != std::to_string(kCsvSchema))
            throw std::invalid_argument("CSV line " + std::to_string(lineno) + " does not match the schema");
        try {
            ComparisonRow r;
            r.trial = std::stoi(f[1]);
            r.seed = std::stoull(f[2]);
            r.params = {std::stoi(f[3]), std::stoi(f[4]), std::stoi(f[5]), std::stoi(f[6]), std::stoi(f[7]), r.seed};
            r.evidence_count = std::stoi(f[8]);
            r.jt_nodes = std::stoul(f[9]);
            r.bjt_nodes = std::stoul(f[10]);
            ArchRow* arch[] = {&r.ls, &r.hugin, &r.ss};
            for (int a = 0; a < 3; ++a) {
                std::size_t b = 11 + std::size_t(a) * 5;
                arch[a]->ops = {std::stoull(f[b]), std::stoull(f[b + 1]), std::stoull(f[b + 2])};
                if (arch[a]->ops.total() != std::stoull(f[b + 3]))
                    throw std::invalid_argument("total does not equal the component sum");
                // only the storage total is serialized
                arch[a]->storage.input_fpn = std::stoul(f[b + 4]);
            }
            r.oracle_error = f[26].empty() ? -1.0 : std::stod(f[26]);
            rows.push_back(r);
        } catch (const std::logic_error& e) {
            throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

std::string render_report(const std::vector<BatchSummary>& batches, Format f) {
    if (batches.empty()) throw std::invalid_argument("report needs at least one batch");
    std::ostringstream os;
    char buf[256];
    auto label = [](const BatchSummary& b) {
        return "n=" + std::to_string(b.params.n) + " m=" + std::to_string(b.params.m) + " c2=" +
               std::to_string(b.params.c2) + " p=" + std::to_string(b.params.p) + " c1=" + std::to_string(b.params.c1);
    };
    switch (f) {
    case Format::Csv:
        os << "params,trials,ls,hugin,ss,hugin_over_ss\n";
        for (const auto& b : batches) {
            std::snprintf(buf, sizeof buf, "%s,%d,%.2f,%.2f,%.2f,%.4f\n", label(b).c_str(), b.trials, b.mean_ls,
                          b.mean_hugin, b.mean_ss, b.overhead());
            os << buf;
        }
        break;
    case Format::Markdown:
        os << "| params | trials | LS | Hugin | SS | Hugin/SS - 1 |\n|---|---:|---:|---:|---:|---:|\n";
        for (const auto& b : batches) {
            std::snprintf(buf, sizeof buf, "| %s | %d | %.1f | %.1f | %.1f | %.1f%% |\n", label(b).c_str(), b.trials,
                          b.mean_ls, b.mean_hugin, b.mean_ss, 100.0 * b.overhead());
            os << buf;
        }
        break;
    case Format::Text:
        std::snprintf(buf, sizeof buf, "%-36s %7s %12s %12s %12s %9s\n", "params", "trials", "LS", "Hugin", "SS",
                      "Hugin/SS");
        os << buf;
        for (const auto& b : batches) {
            std::snprintf(buf, sizeof buf, "%-36s %7d %12.1f %12.1f %12.1f %+8.1f%%\n", label(b).c_str(), b.trials,
                          b.mean_ls, b.mean_hugin, b.mean_ss, 100.0 * b.overhead());
            os << buf;
        }
        break;
    }
    return os.str();
}

} // namespace jtarch
