#include "mcmpb/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace mcmpb {

long long frequency_data::total() const {
    long long n = 0;
    for (const auto& r : rows) n += r.frequency;
    return n;
}

int frequency_data::max_value() const {
    return rows.empty() ? 0 : rows.back().value;
}

double frequency_data::mean() const {
    const double n = static_cast<double>(total());
    double s = 0.0;
    for (const auto& r : rows) s += static_cast<double>(r.value) * static_cast<double>(r.frequency);
    return s / n;
}

double frequency_data::variance() const {
    const double m = mean();
    const double n = static_cast<double>(total());
    double s = 0.0;
    for (const auto& r : rows) {
        const double d = static_cast<double>(r.value) - m;
        s += d * d * static_cast<double>(r.frequency);
    }
    return s / n;
}

void frequency_data::validate() const {
    if (rows.empty()) throw std::invalid_argument("frequency_data: no rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].value < 0)
            throw std::invalid_argument("frequency_data: values must be >= 0");
        if (rows[i].frequency < 0)
            throw std::invalid_argument("frequency_data: frequencies must be >= 0");
        if (i > 0 && rows[i].value <= rows[i - 1].value)
            throw std::invalid_argument("frequency_data: values must be strictly increasing");
    }
    if (total() <= 0) throw std::invalid_argument("frequency_data: total frequency must be > 0");
    if (truncated_at_zero && rows.front().value < 1)
        throw std::invalid_argument(
            "frequency_data: zero-truncated data cannot contain the value 0");
}

parse_error::parse_error(std::string source, int line, int column,
                         const std::string& what_arg)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + what_arg),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

long long parse_integer(std::string_view field, const std::string& source, int line,
                        int column, const char* what) {
    const std::string_view t = trim(field);
    if (t.empty()) throw parse_error(source, line, column, std::string("missing ") + what);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw parse_error(source, line, column,
                          std::string("invalid ") + what + " '" + std::string(t) + "'");
    return out;
}

}  // namespace

frequency_data parse_dataset(const std::string& text, const std::string& source_name) {
    frequency_data data;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string_view body = trim(line.substr(1));
            if (body == "truncated_at_zero=true") data.truncated_at_zero = true;
            else if (body == "truncated_at_zero=false") data.truncated_at_zero = false;
            continue;  // other comments ignored
        }
        if (!header_seen) {
            if (line != "count,frequency")
                throw parse_error(source_name, line_no, 1,
                                  "expected header 'count,frequency'");
            header_seen = true;
            continue;
        }
        const std::size_t comma = raw.find(',');
        if (comma == std::string::npos)
            throw parse_error(source_name, line_no, static_cast<int>(raw.size()) + 1,
                              "expected 'value,frequency' row");
        const long long value =
            parse_integer(std::string_view(raw).substr(0, comma), source_name, line_no, 1,
                          "count value");
        const long long freq =
            parse_integer(std::string_view(raw).substr(comma + 1), source_name, line_no,
                          static_cast<int>(comma) + 2, "frequency");
        if (value < 0)
            throw parse_error(source_name, line_no, 1, "count value must be >= 0");
        if (freq < 0)
            throw parse_error(source_name, line_no, static_cast<int>(comma) + 2,
                              "frequency must be >= 0");
        if (!data.rows.empty() && value <= data.rows.back().value)
            throw parse_error(source_name, line_no, 1,
                              "count values must be strictly increasing");
        data.rows.push_back({static_cast<int>(value), freq});
    }
    if (!header_seen)
        throw parse_error(source_name, std::max(line_no, 1), 1,
                          "empty dataset: missing 'count,frequency' header");
    data.validate();
    return data;
}

frequency_data load_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 1, 1, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), path);
}

sufficient_stats compute_sufficient_stats(const frequency_data& data, int n) {
    data.validate();
    if (data.max_value() > n)
        throw std::invalid_argument("compute_sufficient_stats: max observed value exceeds n");
    const double total = static_cast<double>(data.total());
    sufficient_stats s;
    s.n = n;
    for (const auto& r : data.rows) {
        const double f = static_cast<double>(r.frequency);
        const double v = static_cast<double>(r.value);
        s.s1 += f * v;
        s.s2 -= f * std::lgamma(v + 1.0);
        s.s3 -= f * std::lgamma(static_cast<double>(n) - v + 1.0);
    }
    s.s1 /= total;
    s.s2 /= total;
    s.s3 /= total;
    return s;
}

namespace {

const std::map<std::string, std::string>& fixture_map() {
    static const std::map<std::string, std::string> fixtures = {
        {"bacterial",
         "# bacterial clumps per microscope field (N=400)\n"
         "count,frequency\n"
         "0,56\n1,104\n2,80\n3,62\n4,42\n5,27\n6,9\n7,9\n8,5\n9,3\n"
         "10,2\n11,0\n12,0\n13,0\n14,0\n15,0\n16,0\n17,0\n18,0\n19,1\n"},
        {"saxony",
         "# males among the first 12 children in Saxony families (N=6115)\n"
         "count,frequency\n"
         "0,3\n1,24\n2,104\n3,286\n4,670\n5,1033\n6,1343\n7,1112\n"
         "8,829\n9,478\n10,181\n11,45\n12,7\n"},
        {"linnet",
         "# linnet clutch sizes (N=5414)\n"
         "# truncated_at_zero=true\n"
         "count,frequency\n"
         "1,18\n2,35\n3,210\n4,1355\n5,3492\n6,299\n7,5\n"},
        {"trip",
         "# daily trips per Dutch household (N=1839)\n"
         "count,frequency\n"
         "0,75\n1,312\n2,384\n3,421\n4,307\n5,183\n6,77\n7,47\n8,15\n"
         "9,9\n10,5\n11,0\n12,0\n13,1\n14,2\n15,0\n16,0\n17,1\n"},
    };
    return fixtures;
}

}  // namespace

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : fixture_map()) names.push_back(name);
    return names;
}

bool is_fixture(const std::string& name) { return fixture_map().count(name) > 0; }

const std::string& fixture_csv(const std::string& name) {
    const auto it = fixture_map().find(name);
    if (it == fixture_map().end())
        throw std::invalid_argument("unknown fixture '" + name + "'");
    return it->second;
}

frequency_data load_fixture(const std::string& name) {
    return parse_dataset(fixture_csv(name), "fixture:" + name);
}

}  // namespace mcmpb
