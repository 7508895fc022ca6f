#include "newsgram/feed/fetch.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include <curl/curl.h>
#include <fmt/format.h>

#include "newsgram/errors.hpp"

namespace newsgram::feed {

namespace {

void ensure_curl_initialized() {
    static std::once_flag once;
    std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

std::size_t collect(char* data, std::size_t size, std::size_t count, void* user) {
    static_cast<std::string*>(user)->append(data, size * count);
    return size * count;
}

std::string percent_decode(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            unsigned value = 0;
            if (std::sscanf(std::string(s.substr(i + 1, 2)).c_str(), "%2x", &value) == 1) {
                out.push_back(static_cast<char>(value));
                i += 2;
                continue;
            }
        }
        out.push_back(s[i]);
    }
    return out;
}

std::string read_local(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NetworkError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CurlHandle {
    CURL* handle = curl_easy_init();
    ~CurlHandle() {
        if (handle) curl_easy_cleanup(handle);
    }
};

}  // namespace

std::string fetch_document(const std::string& url, std::chrono::seconds timeout) {
    if (!url.empty() && url.front() == '/') return read_local(url);
    if (url.rfind("file://", 0) == 0) return read_local(percent_decode(url.substr(7)));

    ensure_curl_initialized();
    CurlHandle curl;
    if (!curl.handle) throw NetworkError("curl_easy_init failed");
    std::string body;
    char error[CURL_ERROR_SIZE] = {0};
    curl_easy_setopt(curl.handle, CURLOPT_URL, url.c_str());
    curl_easy_setopt(curl.handle, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(curl.handle, CURLOPT_MAXREDIRS, 5L);
    curl_easy_setopt(curl.handle, CURLOPT_TIMEOUT, static_cast<long>(timeout.count()));
    curl_easy_setopt(curl.handle, CURLOPT_NOSIGNAL, 1L);
    curl_easy_setopt(curl.handle, CURLOPT_ACCEPT_ENCODING, "");
    curl_easy_setopt(curl.handle, CURLOPT_USERAGENT, "newsgram-harvester/1.0");
    curl_easy_setopt(curl.handle, CURLOPT_WRITEFUNCTION, collect);
    curl_easy_setopt(curl.handle, CURLOPT_WRITEDATA, &body);
    curl_easy_setopt(curl.handle, CURLOPT_ERRORBUFFER, error);

    const CURLcode rc = curl_easy_perform(curl.handle);
    if (rc != CURLE_OK)
        throw NetworkError(fmt::format("{}: {}", url, error[0] ? error : curl_easy_strerror(rc)));
    long status = 0;
    curl_easy_getinfo(curl.handle, CURLINFO_RESPONSE_CODE, &status);
    if (status >= 400) throw NetworkError(fmt::format("{}: HTTP {}", url, status));
    return body;
}

std::vector<RawFeedItem> fetch_feed(const FeedSource& source, std::chrono::seconds timeout) {
    const auto fetched_at = std::chrono::system_clock::now();
    return parse_feed(fetch_document(source.url, timeout), source.id, fetched_at);
}

}  // namespace newsgram::feed
