#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taylor/series.hpp"

namespace taylor {

enum class Country { us, uk };

Country parse_country(std::string_view text);
std::string_view to_string(Country c);

/// The bundled quarterly datasets, 1990Q1..2020Q1 (121 observations each).
Dataset embedded_dataset(Country country);

/// Date cell to quarter: "1990-Q1", "1990Q1", "1990-01-01" (first month of a quarter) or "1/1/90".
Quarter parse_quarter_date(std::string_view text);

/// Quarterly CSV: header row, date column first, one numeric column per series.
/// Headers such as "Real GDP" or "S&P500 Index" map onto the canonical series names.
Dataset parse_quarterly_csv(std::string_view text, std::string country = "custom");

/// Inverse of parse_quarterly_csv: "date" column in YYYY-QN form, values at round-trip precision.
std::string write_quarterly_csv(const Dataset& d);

// ---- remote sources ---------------------------------------------------------

enum class SourceKind { embedded, csv_path, remote };

struct SourceDescriptor {
    SourceKind kind = SourceKind::embedded;
    std::string country = "us";
    /// role (real_gdp, cpi, interest_rate, stock_index) -> external series id
    std::map<std::string, std::string> series_ids;
    std::filesystem::path cache_dir = ".taylor-cache";
    std::filesystem::path csv_path;
};

struct RemoteConfig {
    std::string base_url = "https://api.stlouisfed.org/fred/series/observations";
    std::string id_param = "series_id";
    std::string api_key_param = "api_key";
    std::string api_key_env = "FRED_API_KEY";
    std::map<std::string, std::string> extra_params{{"file_type", "json"}};
    std::optional<Quarter> observation_start;
    std::optional<Quarter> observation_end;
    bool allow_network = true;
    int timeout_seconds = 30;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

using QueryParams = std::vector<std::pair<std::string, std::string>>;

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    /// Throws on transport failure; non-2xx statuses are returned, not thrown.
    virtual HttpResponse get(const std::string& url, const QueryParams& params) = 0;
};

/// Default transport backed by cpp-httplib.
std::unique_ptr<HttpTransport> make_http_transport(int timeout_seconds = 30);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
std::optional<std::string> process_env(const std::string& name);

/// Decodes an observations document {"observations": [{"date", "value"}, ...]} into a quarterly series.
Series decode_observations(std::string_view body, const std::string& name,
                           std::optional<Quarter> first = std::nullopt, std::optional<Quarter> last = std::nullopt);

/// Cache file stem for a request, content-addressed by (base URL, id, date range).
std::string cache_key(const RemoteConfig& cfg, const std::string& series_id);

/// Retrieves each role's series, caching raw and normalised responses; falls back to the cache when
/// the network is unavailable.
Dataset fetch_series(const SourceDescriptor& desc, const RemoteConfig& cfg, HttpTransport& transport,
                     const EnvLookup& env = process_env);

/// Embedded, CSV file or remote, per the descriptor.
Dataset load_dataset(const SourceDescriptor& desc, const RemoteConfig& cfg = {});

}  // namespace taylor
