#pragma once

// Dataset files.
//
//   labeled.csv    id,L,U,X,delta,Xstar_1..Xstar_q,deltastar_1..deltastar_q,Z_1..Z_p1
//   unlabeled.csv  id,L,U,Xstar_1..Xstar_q,deltastar_1..deltastar_q,Z_1..Z_p1
//   process.csv    id,event_time   (one row per event)
//
// Status codes are written as 1 (event observed), 2 (right censored) and
// 3 (left censored). Doubles are written in shortest round-trip form.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "seeds/core_types.hpp"
#include "seeds/error.hpp"

namespace seeds {

inline std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace csv {

inline std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        std::string_view field = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
        out.push_back(field);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

struct Table {
    std::string file;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<long> line_numbers;
};

inline Table read(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    Table t;
    t.file = path.string();
    std::string line;
    long lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string> fields;
        for (auto f : split(line)) fields.emplace_back(f);
        if (!have_header) {
            t.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw ParseFailure(t.file, lineno, static_cast<long>(std::min(fields.size(), t.header.size())) + 1,
                               "expected " + std::to_string(t.header.size()) + " fields, found " +
                                   std::to_string(fields.size()));
        }
        t.rows.push_back(std::move(fields));
        t.line_numbers.push_back(lineno);
    }
    if (!have_header) throw ParseFailure(t.file, 1, 1, "missing header");
    return t;
}

inline double parse_double(const Table& t, std::size_t row, std::size_t col)
{
    const std::string& s = t.rows[row][col];
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, value);
    if (s.empty() || res.ec != std::errc{} || res.ptr != last || !std::isfinite(value)) {
        throw ParseFailure(t.file, t.line_numbers[row], static_cast<long>(col) + 1,
                           "column '" + t.header[col] + "': not a finite number: '" + s + "'");
    }
    return value;
}

inline CensorCode parse_status(const Table& t, std::size_t row, std::size_t col)
{
    const std::string& s = t.rows[row][col];
    if (s == "1") return CensorCode::Exact;
    if (s == "2") return CensorCode::RightCensored;
    if (s == "3") return CensorCode::LeftCensored;
    throw ParseFailure(t.file, t.line_numbers[row], static_cast<long>(col) + 1,
                       "column '" + t.header[col] + "': status must be 1, 2 or 3, got '" + s + "'");
}

} // namespace csv

struct Layout {
    std::size_t q = 0;
    std::size_t p1 = 0;
};

namespace detail {

inline std::vector<std::string> expected_header(bool labeled, const Layout& layout)
{
    std::vector<std::string> h{"id", "L", "U"};
    if (labeled) {
        h.emplace_back("X");
        h.emplace_back("delta");
    }
    for (std::size_t k = 1; k <= layout.q; ++k) h.push_back("Xstar_" + std::to_string(k));
    for (std::size_t k = 1; k <= layout.q; ++k) h.push_back("deltastar_" + std::to_string(k));
    for (std::size_t k = 1; k <= layout.p1; ++k) h.push_back("Z_" + std::to_string(k));
    return h;
}

inline Layout layout_of(const csv::Table& t, bool labeled)
{
    Layout layout;
    for (const auto& name : t.header) {
        if (name.rfind("Xstar_", 0) == 0) ++layout.q;
        if (name.rfind("Z_", 0) == 0) ++layout.p1;
    }
    const auto expected = expected_header(labeled, layout);
    for (std::size_t c = 0; c < std::max(expected.size(), t.header.size()); ++c) {
        const std::string got = c < t.header.size() ? t.header[c] : "";
        const std::string want = c < expected.size() ? expected[c] : "";
        if (got != want) {
            throw ParseFailure(t.file, 1, static_cast<long>(c) + 1,
                               "header column '" + got + "', expected '" + want + "'");
        }
    }
    return layout;
}

inline std::vector<SubjectRecord> parse_records(const csv::Table& t, bool labeled, const Layout& layout)
{
    std::vector<SubjectRecord> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        SubjectRecord rec;
        std::size_t c = 0;
        rec.id = t.rows[r][c++];
        if (rec.id.empty()) throw ParseFailure(t.file, t.line_numbers[r], 1, "empty id");
        rec.left = csv::parse_double(t, r, c++);
        rec.right = csv::parse_double(t, r, c++);
        if (labeled) {
            rec.observed_time = csv::parse_double(t, r, c++);
            rec.status = csv::parse_status(t, r, c++);
        }
        for (std::size_t k = 0; k < layout.q; ++k) rec.surrogate_times.push_back(csv::parse_double(t, r, c++));
        for (std::size_t k = 0; k < layout.q; ++k) rec.surrogate_statuses.push_back(csv::parse_status(t, r, c++));
        for (std::size_t k = 0; k < layout.p1; ++k) rec.baseline.push_back(csv::parse_double(t, r, c++));
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace detail

// Loads and validates a dataset. Surrogate statuses are checked only for
// L <= Xstar <= U, not for agreement with Xstar.
inline Dataset load_dataset(const std::filesystem::path& labeled_path, const std::filesystem::path& unlabeled_path,
                            const std::optional<std::filesystem::path>& process_path = std::nullopt)
{
    const csv::Table lt = csv::read(labeled_path);
    const Layout layout = detail::layout_of(lt, true);
    Dataset data;
    data.labeled = detail::parse_records(lt, true, layout);

    const csv::Table ut = csv::read(unlabeled_path);
    const Layout ulayout = detail::layout_of(ut, false);
    if (ulayout.q != layout.q || ulayout.p1 != layout.p1) {
        throw ParseFailure(ut.file, 1, 1, "surrogate/covariate columns differ from the labeled file");
    }
    data.unlabeled = detail::parse_records(ut, false, layout);

    std::map<std::string, std::pair<bool, std::size_t>> index;
    auto add_ids = [&](const std::vector<SubjectRecord>& rs, bool lab, const csv::Table& t) {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (!index.emplace(rs[i].id, std::make_pair(lab, i)).second) {
                throw InvariantFailure("unique id", "duplicate id '" + rs[i].id + "' in " + t.file,
                                       static_cast<long>(i) + 1);
            }
        }
    };
    add_ids(data.labeled, true, lt);
    add_ids(data.unlabeled, false, ut);

    if (process_path) {
        const csv::Table pt = csv::read(*process_path);
        if (pt.header != std::vector<std::string>{"id", "event_time"}) {
            throw ParseFailure(pt.file, 1, 1, "header must be 'id,event_time'");
        }
        for (std::size_t r = 0; r < pt.rows.size(); ++r) {
            const double s = csv::parse_double(pt, r, 1);
            const auto it = index.find(pt.rows[r][0]);
            if (it == index.end()) {
                throw InvariantFailure("process id known", pt.file + ": unknown id '" + pt.rows[r][0] + "'",
                                       static_cast<long>(r) + 1);
            }
            auto& rec = it->second.first ? data.labeled[it->second.second] : data.unlabeled[it->second.second];
            rec.process_events.push_back(s);
        }
        for (auto* rs : {&data.labeled, &data.unlabeled}) {
            for (auto& rec : *rs) std::sort(rec.process_events.begin(), rec.process_events.end());
        }
    }

    if (data.labeled.empty()) throw Error(ErrorCode::EmptyData, lt.file + ": no labeled records");
    auto check = [](const std::vector<SubjectRecord>& rs, const csv::Table& t) {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            try {
                validate(rs[i], SurrogateCheck::Bounds);
            } catch (const InvariantFailure& e) {
                throw InvariantFailure(e.rule(), t.file + " row " + std::to_string(i + 1) + ": " + e.rule(),
                                       static_cast<long>(i) + 1);
            }
        }
    };
    check(data.labeled, lt);
    check(data.unlabeled, ut);
    return data;
}

namespace detail {

inline void write_records(std::ostream& os, const std::vector<SubjectRecord>& rs, bool labeled, const Layout& layout)
{
    const auto header = expected_header(labeled, layout);
    for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
    os << '\n';
    for (const auto& r : rs) {
        os << r.id << ',' << format_double(r.left) << ',' << format_double(r.right);
        if (labeled) {
            if (!r.labeled()) throw Error(ErrorCode::MissingLabel, "record '" + r.id + "' has no (X, delta)");
            os << ',' << format_double(*r.observed_time) << ',' << to_int(*r.status);
        }
        for (double x : r.surrogate_times) os << ',' << format_double(x);
        for (CensorCode c : r.surrogate_statuses) os << ',' << to_int(c);
        for (double z : r.baseline) os << ',' << format_double(z);
        os << '\n';
    }
}

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

} // namespace detail

struct DatasetFiles {
    std::filesystem::path labeled;
    std::filesystem::path unlabeled;
    std::optional<std::filesystem::path> process;
};

// Writes <prefix>labeled.csv, <prefix>unlabeled.csv and, when any record has
// process events, <prefix>process.csv.
inline DatasetFiles write_dataset(const Dataset& data, const std::string& prefix)
{
    const Layout layout{data.q(), data.p1()};
    DatasetFiles files{prefix + "labeled.csv", prefix + "unlabeled.csv", std::nullopt};
    std::ostringstream lab, unl;
    detail::write_records(lab, data.labeled, true, layout);
    detail::write_records(unl, data.unlabeled, false, layout);
    detail::write_file(files.labeled, lab.str());
    detail::write_file(files.unlabeled, unl.str());
    if (data.has_process()) {
        std::ostringstream proc;
        proc << "id,event_time\n";
        for (const auto* rs : {&data.labeled, &data.unlabeled}) {
            for (const auto& r : *rs) {
                for (double s : r.process_events) proc << r.id << ',' << format_double(s) << '\n';
            }
        }
        files.process = prefix + "process.csv";
        detail::write_file(*files.process, proc.str());
    }
    return files;
}

} // namespace seeds
