#include "predistill/design_io.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace predistill {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<double> parse_numbers(std::string_view line, int line_no) {
    std::vector<double> values;
    while (!(line = trim(line)).empty()) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t'))
            throw std::invalid_argument(fmt::format("design line {}: malformed number", line_no));
        values.push_back(v);
        line.remove_prefix(static_cast<std::size_t>(ptr - line.data()));
    }
    return values;
}

}  // namespace

std::string format_design(const CouplerDesign& design, std::string_view header) {
    std::string out;
    if (!header.empty()) {
        std::istringstream lines{std::string(header)};
        for (std::string l; std::getline(lines, l);) out += fmt::format("# {}\n", l);
    }
    out += "# w1_nm w2_nm z_um\n";
    for (const CouplerSegment& s : design.segments)
        out += fmt::format("{:.17g} {:.17g} {:.17g}\n", s.w1_nm, s.w2_nm, s.z_um);
    return out;
}

CouplerDesign parse_design(std::string_view text) {
    CouplerDesign design;
    int line_no = 0;
    while (!text.empty()) {
        const auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        const auto v = parse_numbers(line, line_no);
        if (v.size() != 3) throw std::invalid_argument(fmt::format("design line {}: expected 3 values", line_no));
        if (!(v[2] >= 0.0)) throw std::invalid_argument(fmt::format("design line {}: negative length", line_no));
        design.segments.push_back({v[0], v[1], v[2]});
    }
    return design;
}

CouplerDesign read_design_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open design file {}", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_design(buf.str());
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw std::runtime_error(fmt::format("write to {} failed", tmp.string()));
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace predistill
