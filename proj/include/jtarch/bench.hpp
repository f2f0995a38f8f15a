#ifndef JTARCH_BENCH_HPP
#define JTARCH_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jtarch/netgen.hpp"
#include "jtarch/storage.hpp"

namespace jtarch {

constexpr int kCsvSchema = 1;

struct ArchRow {
    OpCounter ops;
    StorageReport storage;
};

struct ComparisonRow {
    int trial = 0;
    std::uint64_t seed = 0;
    GenParams params;
    int evidence_count = 0;
    std::size_t jt_nodes = 0;
    std::size_t bjt_nodes = 0;
    ArchRow ls, hugin, ss;
    double oracle_error = -1.0;  // negative when not verified
};

struct BatchSummary {
    GenParams params;
    int trials = 0;
    double mean_ls = 0, mean_hugin = 0, mean_ss = 0;
    double mean_storage_ls = 0, mean_storage_hugin = 0, mean_storage_ss = 0;

    double overhead() const { return mean_hugin / mean_ss - 1.0; }
};

enum class Format { Text, Csv, Markdown };
Format parse_format(const std::string& s);

// Network-size presets for batch comparisons.
struct Preset {
    int n, m, c2;
};
const std::vector<Preset>& table_presets();

ComparisonRow run_trial(const GenParams& base, std::uint64_t batch_seed, int trial, bool verify,
                        std::size_t oracle_cap = kDefaultOracleCap);
std::vector<ComparisonRow> run_batch(const GenParams& base, int trials, std::uint64_t seed, bool verify = false,
                                     std::size_t oracle_cap = kDefaultOracleCap);

BatchSummary summarize(const std::vector<ComparisonRow>& rows, double div_weight = 1.0);

std::string csv_header();
std::string csv_row(const ComparisonRow& r);
std::string to_csv(const std::vector<ComparisonRow>& rows);
std::vector<ComparisonRow> parse_csv(const std::string& text);

std::string render_report(const std::vector<BatchSummary>& batches, Format f);

} // namespace jtarch

#endif
