#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace taylor {

/// A calendar quarter. Ordering is lexicographic on (year, q).
class Quarter {
public:
    constexpr Quarter() = default;
    Quarter(int year, int q);

    [[nodiscard]] constexpr int year() const noexcept { return year_; }
    [[nodiscard]] constexpr int q() const noexcept { return q_; }

    /// Shift by k quarters (k may be negative).
    [[nodiscard]] Quarter advanced(long k) const;
    [[nodiscard]] Quarter next() const { return advanced(1); }

    /// Signed number of quarters from `other` to this.
    [[nodiscard]] long minus(const Quarter& other) const noexcept;

    /// "1991Q1"
    [[nodiscard]] std::string str() const;

    /// Accepts "1991Q1", "1991-Q1" and lower-case q.
    static Quarter parse(std::string_view text);

    friend constexpr auto operator<=>(const Quarter&, const Quarter&) = default;

private:
    long ordinal() const noexcept { return static_cast<long>(year_) * 4 + (q_ - 1); }

    int year_ = 1970;
    int q_ = 1;
};

/// Inclusive quarter range [first, last].
struct QuarterRange {
    Quarter first;
    Quarter last;

    [[nodiscard]] bool empty() const noexcept { return last < first; }
    [[nodiscard]] std::size_t size() const noexcept;
    [[nodiscard]] bool contains(const Quarter& q) const noexcept { return first <= q && q <= last; }
    [[nodiscard]] bool contains(const QuarterRange& r) const noexcept {
        return r.empty() || (contains(r.first) && contains(r.last));
    }
    [[nodiscard]] QuarterRange intersect(const QuarterRange& other) const noexcept;
    [[nodiscard]] std::string str() const;

    /// "1991Q1:2020Q1" (also accepts a space or "-" separator between two "YYYYQN" tokens)
    static QuarterRange parse(std::string_view text);

    friend bool operator==(const QuarterRange&, const QuarterRange&) = default;
};

/// Contiguous quarterly observations. Immutable once built.
class Series {
public:
    Series(std::string name, Quarter start, std::vector<double> values);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] Quarter start() const noexcept { return start_; }
    [[nodiscard]] Quarter end() const noexcept { return start_.advanced(static_cast<long>(values_.size()) - 1); }
    [[nodiscard]] QuarterRange range() const noexcept { return {start(), end()}; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Value at a calendar quarter; throws a sample error outside the span.
    [[nodiscard]] double at(const Quarter& q) const;
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

    [[nodiscard]] Series renamed(std::string name) const;

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::string name_;
    Quarter start_;
    std::vector<double> values_;
};

/// Series shifted so that the value at t is s(t-k); the first k quarters are dropped.
Series lag(const Series& s, int k);

/// Elementwise natural logarithm; rejects non-positive values, naming the quarter.
Series natural_log(const Series& s);

/// A reference to a dataset column at a given lag, e.g. "inflation_gap(-1)".
struct Term {
    std::string name;
    int lag = 0;

    /// Parses "name" or "name(-k)". A positive shift "(+k)" is rejected.
    static Term parse(std::string_view text);
    /// Upper-case display label as used in the tables: "S(-1)".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Country dataset: named series plus resolution of common aliases.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::string country, std::vector<Series> series);

    [[nodiscard]] const std::string& country() const noexcept { return country_; }
    [[nodiscard]] bool has(std::string_view name) const;
    /// Case-insensitive lookup; "it", "sp500", "ftse100" resolve to their canonical names.
    [[nodiscard]] const Series& get(std::string_view name) const;
    [[nodiscard]] std::vector<std::string> names() const;
    [[nodiscard]] const std::map<std::string, Series>& series() const noexcept { return series_; }

    /// Intersection of every member series' span.
    [[nodiscard]] QuarterRange span() const;

    /// Common sample of the model variables, set by build_taylor_dataset.
    [[nodiscard]] const std::optional<QuarterRange>& adjusted_sample() const noexcept { return adjusted_; }

    /// Copy with one series added (or replaced).
    [[nodiscard]] Dataset with(Series s) const;
    [[nodiscard]] Dataset with_adjusted_sample(QuarterRange r) const;

    static std::string canonical_name(std::string_view name);

private:
    std::string country_;
    std::map<std::string, Series> series_;
    std::optional<QuarterRange> adjusted_;
};

inline constexpr const char* kRequiredSeries[] = {"real_gdp", "cpi", "interest_rate", "stock_index"};

/// Throws naming the first missing required raw series.
void require_raw_series(const Dataset& d);

/// Rectangular observation block: rows are quarters, columns are terms.
struct ObservationMatrix {
    QuarterRange sample;
    std::vector<Term> columns;
    Eigen::MatrixXd data;

    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(data.rows()); }
};

/// Quarters over which a term is observable.
QuarterRange term_range(const Dataset& d, const Term& t);

/// Largest range on which every term is observable.
QuarterRange feasible_range(const Dataset& d, std::span<const Term> terms);

/// Aligns terms over `range`, or over the maximal feasible range when none is given.
ObservationMatrix align_sample(const Dataset& d, std::span<const Term> terms,
                               std::optional<QuarterRange> range = std::nullopt);

}  // namespace taylor
