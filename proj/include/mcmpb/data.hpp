// Frequency-table data: the (value, frequency) representation used by every
// fitter, a small CSV reader for it, sufficient statistics, and the bundled
// example datasets.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mcmpb {

struct frequency_row {
    int value = 0;
    long long frequency = 0;
    bool operator==(const frequency_row&) const = default;
};

struct frequency_data {
    std::vector<frequency_row> rows;      // values strictly increasing
    bool truncated_at_zero = false;       // law conditioned on X >= 1

    long long total() const;              // N = sum of frequencies
    int max_value() const;
    double mean() const;
    double variance() const;              // population variance of the sample
    void validate() const;                // throws std::invalid_argument
    bool operator==(const frequency_data&) const = default;
};

// Positional parse failure for the CSV reader; line and column are 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string source, int line, int column, const std::string& what_arg);
    const std::string& source() const { return source_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string source_;
    int line_ = 0;
    int column_ = 0;
};

// Parses the dataset format: optional '#' comment lines (the metadata line
// "# truncated_at_zero=true" flags zero truncation), a "count,frequency"
// header, then one "value,frequency" row per line.
frequency_data parse_dataset(const std::string& text, const std::string& source_name = "<string>");
frequency_data load_dataset_file(const std::string& path);

// Minimal sufficient statistics for the bounded law on {0, ..., n}:
//   s1 = sum_i i f_i / N,  s2 = -sum_i f_i log i! / N,
//   s3 = -sum_i f_i log (n-i)! / N.
struct sufficient_stats {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    int n = 0;
};

sufficient_stats compute_sufficient_stats(const frequency_data& data, int n);

// Bundled datasets (classical published count tables):
//   bacterial - bacterial clumps per microscope field, N=400
//   saxony    - males among 12 siblings in Saxony families, N=6115
//   linnet    - linnet clutch sizes, zero-truncated, N=5414
//   trip      - daily trips per Dutch household, N=1839
std::vector<std::string> fixture_names();
bool is_fixture(const std::string& name);
const std::string& fixture_csv(const std::string& name);
frequency_data load_fixture(const std::string& name);

}  // namespace mcmpb
