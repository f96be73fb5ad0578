#include "taylor/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "taylor/error.hpp"

namespace taylor {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_int(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

// ---- Quarter -------------------------------------------------------------

Quarter::Quarter(int year, int q) : year_(year), q_(q) {
    if (q < 1 || q > 4) fail(ErrorKind::domain, fmt::format("quarter index {} outside 1..4", q));
}

Quarter Quarter::advanced(long k) const {
    const long o = ordinal() + k;
    const long y = o >= 0 ? o / 4 : (o - 3) / 4;
    return Quarter(static_cast<int>(y), static_cast<int>(o - y * 4) + 1);
}

long Quarter::minus(const Quarter& other) const noexcept { return ordinal() - other.ordinal(); }

std::string Quarter::str() const { return fmt::format("{}Q{}", year_, q_); }

Quarter Quarter::parse(std::string_view text) {
    const auto t = trim(text);
    std::size_t pos = t.find_first_of("Qq");
    if (pos == std::string_view::npos || pos == 0)
        fail(ErrorKind::parse, fmt::format("cannot parse quarter '{}'", text));
    std::string_view ys = t.substr(0, pos);
    if (!ys.empty() && ys.back() == '-') ys.remove_suffix(1);
    const std::string_view qs = t.substr(pos + 1);
    int y = 0;
    int q = 0;
    if (!parse_int(ys, y) || !parse_int(qs, q) || q < 1 || q > 4)
        fail(ErrorKind::parse, fmt::format("cannot parse quarter '{}'", text));
    return Quarter(y, q);
}

// ---- QuarterRange --------------------------------------------------------

std::size_t QuarterRange::size() const noexcept {
    return empty() ? 0 : static_cast<std::size_t>(last.minus(first) + 1);
}

QuarterRange QuarterRange::intersect(const QuarterRange& other) const noexcept {
    return {std::max(first, other.first), std::min(last, other.last)};
}

std::string QuarterRange::str() const { return fmt::format("{} {}", first.str(), last.str()); }

QuarterRange QuarterRange::parse(std::string_view text) {
    const auto t = trim(text);
    std::size_t sep = t.find_first_of(": ,");
    // "1991Q1-2020Q1": the dash after a quarter digit separates the endpoints.
    if (sep == std::string_view::npos) {
        for (std::size_t i = 2; i < t.size(); ++i)
            if (t[i] == '-' && std::isdigit(static_cast<unsigned char>(t[i - 1])) &&
                (t[i - 2] == 'Q' || t[i - 2] == 'q')) {
                sep = i;
                break;
            }
    }
    if (sep == std::string_view::npos)
        fail(ErrorKind::parse, fmt::format("cannot parse quarter range '{}'", text));
    return {Quarter::parse(t.substr(0, sep)), Quarter::parse(t.substr(sep + 1))};
}

// ---- Series --------------------------------------------------------------

Series::Series(std::string name, Quarter start, std::vector<double> values)
    : name_(std::move(name)), start_(start), values_(std::move(values)) {
    if (values_.empty()) fail(ErrorKind::sample, fmt::format("series '{}' is empty", name_));
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            fail(ErrorKind::domain, fmt::format("series '{}' has a non-finite value at {}", name_,
                                                start_.advanced(static_cast<long>(i)).str()));
}

double Series::at(const Quarter& q) const {
    const long i = q.minus(start_);
    if (i < 0 || i >= static_cast<long>(values_.size()))
        fail(ErrorKind::sample, fmt::format("series '{}' has no observation at {}", name_, q.str()));
    return values_[static_cast<std::size_t>(i)];
}

Series Series::renamed(std::string name) const { return Series(std::move(name), start_, values_); }

Series lag(const Series& s, int k) {
    if (k < 0) fail(ErrorKind::domain, fmt::format("negative lag {} for '{}'", k, s.name()));
    if (k == 0) return s;
    if (static_cast<std::size_t>(k) >= s.size())
        fail(ErrorKind::sample, fmt::format("lag {} leaves no observations of '{}' ({} obs)", k, s.name(), s.size()));
    const auto v = s.values();
    return Series(fmt::format("{}(-{})", s.name(), k), s.start().advanced(k),
                  std::vector<double>(v.begin(), v.end() - k));
}

Series natural_log(const Series& s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0))
            fail(ErrorKind::domain, fmt::format("log of non-positive value {} in '{}' at {}", s[i], s.name(),
                                                s.start().advanced(static_cast<long>(i)).str()));
        out.push_back(std::log(s[i]));
    }
    return Series(s.name(), s.start(), std::move(out));
}

// ---- Term ----------------------------------------------------------------

Term Term::parse(std::string_view text) {
    const auto t = trim(text);
    const auto open = t.find('(');
    if (open == std::string_view::npos) {
        if (t.empty()) fail(ErrorKind::parse, "empty term");
        return {std::string(t), 0};
    }
    if (t.back() != ')' || open == 0) fail(ErrorKind::parse, fmt::format("cannot parse term '{}'", text));
    auto inner = trim(t.substr(open + 1, t.size() - open - 2));
    int shift = 0;
    if (!inner.empty() && inner.front() == '+') inner.remove_prefix(1);
    if (!parse_int(inner, shift)) fail(ErrorKind::parse, fmt::format("cannot parse lag in '{}'", text));
    if (shift > 0) fail(ErrorKind::parse, fmt::format("leads are not supported: '{}'", text));
    return {std::string(trim(t.substr(0, open))), -shift};
}

std::string Term::label() const {
    return lag == 0 ? upper(name) : fmt::format("{}(-{})", upper(name), lag);
}

// ---- Dataset -------------------------------------------------------------

std::string Dataset::canonical_name(std::string_view name) {
    const std::string n = lower(trim(name));
    if (n == "it" || n == "rate" || n == "interest_rate_it") return "interest_rate";
    if (n == "sp500" || n == "s&p500" || n == "ftse100" || n == "index") return "stock_index";
    if (n == "gdp") return "real_gdp";
    return n;
}

Dataset::Dataset(std::string country, std::vector<Series> series) : country_(std::move(country)) {
    for (auto& s : series) {
        std::string key = canonical_name(s.name());
        if (series_.count(key)) fail(ErrorKind::parse, fmt::format("duplicate series '{}'", key));
        series_.emplace(key, s.renamed(key));
    }
}

bool Dataset::has(std::string_view name) const { return series_.count(canonical_name(name)) != 0; }

const Series& Dataset::get(std::string_view name) const {
    const auto it = series_.find(canonical_name(name));
    if (it == series_.end())
        fail(ErrorKind::config, fmt::format("unknown series '{}' in {} dataset", name, country_));
    return it->second;
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : series_) out.push_back(k);
    return out;
}

QuarterRange Dataset::span() const {
    if (series_.empty()) fail(ErrorKind::sample, "dataset has no series");
    QuarterRange r = series_.begin()->second.range();
    for (const auto& [_, s] : series_) r = r.intersect(s.range());
    return r;
}

Dataset Dataset::with(Series s) const {
    Dataset out = *this;
    std::string key = canonical_name(s.name());
    out.series_.insert_or_assign(key, s.renamed(key));
    return out;
}

Dataset Dataset::with_adjusted_sample(QuarterRange r) const {
    Dataset out = *this;
    out.adjusted_ = r;
    return out;
}

void require_raw_series(const Dataset& d) {
    for (const char* name : kRequiredSeries)
        if (!d.has(name))
            fail(ErrorKind::config, fmt::format("{} dataset is missing required series '{}'", d.country(), name));
}

// ---- alignment -----------------------------------------------------------

QuarterRange term_range(const Dataset& d, const Term& t) {
    const auto r = d.get(t.name).range();
    return {r.first.advanced(t.lag), r.last.advanced(t.lag)};
}

QuarterRange feasible_range(const Dataset& d, std::span<const Term> terms) {
    if (terms.empty()) fail(ErrorKind::sample, "no terms to align");
    QuarterRange r = term_range(d, terms.front());
    for (const auto& t : terms.subspan(1)) r = r.intersect(term_range(d, t));
    return r;
}

ObservationMatrix align_sample(const Dataset& d, std::span<const Term> terms, std::optional<QuarterRange> range) {
    const QuarterRange feasible = feasible_range(d, terms);
    const QuarterRange sample = range.value_or(feasible);
    if (sample.empty()) fail(ErrorKind::sample, fmt::format("empty sample {}", sample.str()));
    if (!feasible.contains(sample))
        fail(ErrorKind::sample, fmt::format("sample {} is not covered; maximal feasible range is {}", sample.str(),
                                            feasible.empty() ? std::string("empty") : feasible.str()));
    ObservationMatrix m{sample, std::vector<Term>(terms.begin(), terms.end()),
                        Eigen::MatrixXd(static_cast<Eigen::Index>(sample.size()), static_cast<Eigen::Index>(terms.size()))};
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const Series& s = d.get(terms[j].name);
        for (std::size_t i = 0; i < sample.size(); ++i)
            m.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                s.at(sample.first.advanced(static_cast<long>(i) - terms[j].lag));
    }
    return m;
}

}  // namespace taylor
