#include "taylor/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "taylor/error.hpp"

namespace taylor {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool to_int(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size() && !s.empty();
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

// Header text to series name.
std::string column_role(std::string_view header) {
    const std::string h = lower(trim(header));
    if (h.find("gdp") != std::string::npos) return "real_gdp";
    if (h.find("cpi") != std::string::npos) return "cpi";
    if (h.find("interest") != std::string::npos || h == "it" || h == "rate") return "interest_rate";
    if (h.find("s&p") != std::string::npos || h.find("sp500") != std::string::npos ||
        h.find("ftse") != std::string::npos || h.find("stock") != std::string::npos)
        return "stock_index";
    return Dataset::canonical_name(h);
}

}  // namespace

Country parse_country(std::string_view text) {
    const std::string t = lower(trim(text));
    if (t == "us" || t == "usa") return Country::us;
    if (t == "uk" || t == "gb") return Country::uk;
    fail(ErrorKind::config, fmt::format("unknown country '{}' (expected us or uk)", text));
}

std::string_view to_string(Country c) { return c == Country::us ? "us" : "uk"; }

Quarter parse_quarter_date(std::string_view text) {
    const auto t = trim(text);
    const auto bad = [&]() -> Quarter { fail(ErrorKind::parse, fmt::format("cannot parse date '{}'", text)); };
    if (t.find_first_of("Qq") != std::string_view::npos) return Quarter::parse(t);

    int y = 0, m = 0, d = 0;
    if (t.find('/') != std::string_view::npos) {
        // M/D/YY or M/D/YYYY
        const auto a = t.find('/');
        const auto b = t.find('/', a + 1);
        if (b == std::string_view::npos || !to_int(t.substr(0, a), m) || !to_int(t.substr(a + 1, b - a - 1), d) ||
            !to_int(t.substr(b + 1), y))
            return bad();
        if (t.size() - b - 1 <= 2) y += y >= 50 ? 1900 : 2000;
    } else {
        const auto a = t.find('-');
        const auto b = a == std::string_view::npos ? a : t.find('-', a + 1);
        if (b == std::string_view::npos || !to_int(t.substr(0, a), y) || !to_int(t.substr(a + 1, b - a - 1), m) ||
            !to_int(t.substr(b + 1), d))
            return bad();
    }
    if (m < 1 || m > 12 || d < 1 || d > 31) return bad();
    if ((m - 1) % 3 != 0 || d != 1)
        fail(ErrorKind::parse, fmt::format("date '{}' is not the first day of a quarter", text));
    return Quarter(y, (m - 1) / 3 + 1);
}

Dataset parse_quarterly_csv(std::string_view text, std::string country) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    std::size_t h = 0;
    while (h < lines.size() && trim(lines[h]).empty()) ++h;
    if (h == lines.size()) fail(ErrorKind::parse, "CSV has no header row");
    const auto header = split_csv_line(lines[h]);
    if (header.size() < 2) fail(ErrorKind::parse, "CSV header needs a date column and at least one series");

    std::vector<std::string> names;
    for (std::size_t c = 1; c < header.size(); ++c) {
        std::string name = column_role(header[c]);
        if (name.empty()) fail(ErrorKind::parse, fmt::format("CSV column {} has an empty header", c + 1));
        if (std::find(names.begin(), names.end(), name) != names.end())
            fail(ErrorKind::parse, fmt::format("CSV columns map to the same series '{}'", name));
        names.push_back(std::move(name));
    }

    std::optional<Quarter> first;
    std::optional<Quarter> prev;
    std::vector<std::vector<double>> columns(names.size());
    for (std::size_t r = h + 1; r < lines.size(); ++r) {
        if (trim(lines[r]).empty()) continue;
        const std::size_t line_no = r + 1;
        const auto cells = split_csv_line(lines[r]);
        if (cells.size() != header.size())
            fail(ErrorKind::parse, fmt::format("row {}: expected {} cells, found {}", line_no, header.size(), cells.size()));
        Quarter q;
        try {
            q = parse_quarter_date(cells[0]);
        } catch (const Error& e) {
            fail(ErrorKind::parse, fmt::format("row {} column 1: {}", line_no, e.what()));
        }
        if (prev) {
            if (q == *prev) fail(ErrorKind::parse, fmt::format("row {}: duplicate quarter {}", line_no, q.str()));
            if (q != prev->next())
                fail(ErrorKind::parse, fmt::format("row {}: quarters not contiguous ({} follows {}, expected {})", line_no,
                                                   q.str(), prev->str(), prev->next().str()));
        } else {
            first = q;
        }
        prev = q;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const auto cell = trim(cells[c]);
            double v = 0.0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc{} || p != cell.data() + cell.size())
                fail(ErrorKind::parse, fmt::format("row {} column {} ('{}'): cannot parse '{}'", line_no, c + 1,
                                                   trim(header[c]), cell));
            columns[c - 1].push_back(v);
        }
    }
    if (!first) fail(ErrorKind::parse, "CSV has no data rows");
    std::vector<Series> series;
    for (std::size_t c = 0; c < names.size(); ++c) series.emplace_back(names[c], *first, std::move(columns[c]));
    return Dataset(std::move(country), std::move(series));
}

std::string write_quarterly_csv(const Dataset& d) {
    const QuarterRange span = d.span();
    std::string out = "date";
    for (const auto& [name, _] : d.series()) out += "," + name;
    out += "\n";
    for (std::size_t i = 0; i < span.size(); ++i) {
        const Quarter q = span.first.advanced(static_cast<long>(i));
        out += fmt::format("{}-Q{}", q.year(), q.q());
        for (const auto& [_, s] : d.series()) out += fmt::format(",{}", s.at(q));
        out += "\n";
    }
    return out;
}

Dataset load_dataset(const SourceDescriptor& desc, const RemoteConfig& cfg) {
    switch (desc.kind) {
        case SourceKind::embedded:
            return embedded_dataset(parse_country(desc.country));
        case SourceKind::csv_path: {
            std::ifstream in(desc.csv_path, std::ios::binary);
            if (!in) fail(ErrorKind::config, fmt::format("cannot open CSV '{}'", desc.csv_path.string()));
            std::ostringstream ss;
            ss << in.rdbuf();
            return parse_quarterly_csv(ss.str(), desc.country);
        }
        case SourceKind::remote: {
            auto transport = make_http_transport(cfg.timeout_seconds);
            return fetch_series(desc, cfg, *transport);
        }
    }
    fail(ErrorKind::config, "unknown source kind");
}

}  // namespace taylor
