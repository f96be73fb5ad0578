#include "taylor/ingest.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "taylor/error.hpp"

namespace taylor {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class HttplibTransport final : public HttpTransport {
public:
    explicit HttplibTransport(int timeout) : timeout_(timeout) {}

    HttpResponse get(const std::string& url, const QueryParams& params) override {
        // Split "scheme://host[:port]/path".
        const auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos) fail(ErrorKind::config, fmt::format("malformed URL '{}'", url));
        const auto path_start = url.find('/', scheme_end + 3);
        const std::string origin = url.substr(0, path_start);
        const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

        httplib::Client client(origin);
        client.set_connection_timeout(timeout_, 0);
        client.set_read_timeout(timeout_, 0);
        client.set_follow_location(true);
        httplib::Params p;
        for (const auto& [k, v] : params) p.emplace(k, v);
        auto res = client.Get(path, p, httplib::Headers{});
        if (!res)
            fail(ErrorKind::fetch, fmt::format("GET {} failed: {}", url, httplib::to_string(res.error())));
        return {res->status, res->body};
    }

private:
    int timeout_;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const fs::path& target, const std::string& content) {
    fs::create_directories(target.parent_path());
    thread_local std::mt19937_64 rng{std::random_device{}()};
    const fs::path tmp = target.string() + fmt::format(".tmp{:016x}", rng());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::fetch, fmt::format("cannot write cache file '{}'", tmp.string()));
        out << content;
    }
    fs::rename(tmp, target);
}

Quarter observation_quarter(const std::string& date) {
    try {
        return parse_quarter_date(date);
    } catch (const Error& e) {
        fail(ErrorKind::decode, e.what());
    }
}

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport(int timeout_seconds) {
    return std::make_unique<HttplibTransport>(timeout_seconds);
}

std::optional<std::string> process_env(const std::string& name) {
    if (const char* v = std::getenv(name.c_str()); v && *v) return std::string(v);
    return std::nullopt;
}

Series decode_observations(std::string_view body, const std::string& name, std::optional<Quarter> first,
                           std::optional<Quarter> last) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::decode, fmt::format("{}: response is not JSON ({})", name, e.what()));
    }
    if (!doc.is_object() || !doc.contains("observations") || !doc["observations"].is_array())
        fail(ErrorKind::decode, fmt::format("{}: response lacks an observations array", name));

    std::optional<Quarter> start;
    std::optional<Quarter> prev;
    std::vector<double> values;
    for (const auto& ob : doc["observations"]) {
        if (!ob.is_object() || !ob.contains("date") || !ob["date"].is_string() || !ob.contains("value"))
            fail(ErrorKind::decode, fmt::format("{}: observation without date/value", name));
        const std::string date = ob["date"].get<std::string>();
        const Quarter q = observation_quarter(date);
        if ((first && q < *first) || (last && *last < q)) continue;

        double v = 0.0;
        const auto& jv = ob["value"];
        if (jv.is_number()) {
            v = jv.get<double>();
        } else if (jv.is_string()) {
            const std::string s = jv.get<std::string>();
            std::size_t used = 0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != s.size())
                fail(ErrorKind::decode, fmt::format("{}: missing or non-numeric value '{}' at {}", name, s, date));
        } else {
            fail(ErrorKind::decode, fmt::format("{}: value at {} has unexpected type", name, date));
        }
        if (prev && q != prev->next())
            fail(ErrorKind::decode, fmt::format("{}: observations not consecutive quarters ({} after {})", name,
                                                q.str(), prev->str()));
        if (!start) start = q;
        prev = q;
        values.push_back(v);
    }
    if (!start) fail(ErrorKind::decode, fmt::format("{}: no observations in range", name));
    return Series(name, *start, std::move(values));
}

std::string cache_key(const RemoteConfig& cfg, const std::string& series_id) {
    const std::string material =
        fmt::format("{}\n{}\n{}\n{}", cfg.base_url, series_id, cfg.observation_start ? cfg.observation_start->str() : "",
                    cfg.observation_end ? cfg.observation_end->str() : "");
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : material) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::string safe;
    for (char c : series_id) safe += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return fmt::format("{}-{:016x}", safe, h);
}

Dataset fetch_series(const SourceDescriptor& desc, const RemoteConfig& cfg, HttpTransport& transport,
                     const EnvLookup& env) {
    for (const char* role : kRequiredSeries)
        if (!desc.series_ids.count(role))
            fail(ErrorKind::config, fmt::format("remote source needs a series id for '{}'", role));
    std::optional<std::string> key;
    if (!cfg.api_key_param.empty()) {
        key = env(cfg.api_key_env);
        if (!key) fail(ErrorKind::config, fmt::format("API key not set (environment variable {})", cfg.api_key_env));
    }

    auto fetch_one = [&](const std::string& role, const std::string& id) -> Series {
        const fs::path stem = desc.cache_dir / cache_key(cfg, id);
        const fs::path raw_path = stem.string() + ".json";
        const fs::path csv_path = stem.string() + ".csv";

        std::optional<std::string> body;
        std::string failure;
        if (cfg.allow_network) {
            QueryParams params{{cfg.id_param, id}};
            if (key) params.emplace_back(cfg.api_key_param, *key);
            for (const auto& [k, v] : cfg.extra_params) params.emplace_back(k, v);
            if (cfg.observation_start)
                params.emplace_back("observation_start", fmt::format("{}-{:02}-01", cfg.observation_start->year(),
                                                                     3 * cfg.observation_start->q() - 2));
            if (cfg.observation_end)
                params.emplace_back("observation_end", fmt::format("{}-{:02}-01", cfg.observation_end->year(),
                                                                   3 * cfg.observation_end->q() - 2));
            try {
                const HttpResponse res = transport.get(cfg.base_url, params);
                if (res.status >= 200 && res.status < 300)
                    body = res.body;
                else
                    failure = fmt::format("HTTP status {}", res.status);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::fetch) throw;
                failure = e.what();
            }
        } else {
            failure = "network disabled";
        }

        if (body) {
            Series s = decode_observations(*body, role, cfg.observation_start, cfg.observation_end);
            write_atomic(raw_path, *body);
            write_atomic(csv_path, write_quarterly_csv(Dataset("cache", {s})));
            return s;
        }
        if (fs::exists(csv_path)) {
            const Dataset cached = parse_quarterly_csv(read_file(csv_path));
            return cached.get(role).renamed(role);
        }
        if (fs::exists(raw_path)) return decode_observations(read_file(raw_path), role, cfg.observation_start,
                                                             cfg.observation_end);
        fail(ErrorKind::fetch, fmt::format("could not retrieve '{}' ({}) and no cached copy exists", id, failure));
    };

    std::vector<std::future<Series>> pending;
    for (const char* role : kRequiredSeries)
        pending.push_back(std::async(std::launch::async, fetch_one, std::string(role), desc.series_ids.at(role)));
    std::vector<Series> series;
    for (auto& f : pending) series.push_back(f.get());
    return Dataset(desc.country, std::move(series));
}

}  // namespace taylor
