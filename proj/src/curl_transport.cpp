#include <curl/curl.h>

#include <mutex>

#include "wii/fetch.hpp"
#include "wii/text.hpp"

namespace wii {

namespace {

struct Exchange {
    HttpResponse response;
    std::size_t max_body = 0;
};

std::size_t on_header(char* data, std::size_t size, std::size_t n, void* user) {
    auto* ex = static_cast<Exchange*>(user);
    std::string_view line(data, size * n);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    if (line.substr(0, 5) == "HTTP/") {
        // a new status line (after 1xx) starts a fresh header block
        ex->response.headers.clear();
        return size * n;
    }
    auto colon = line.find(':');
    if (colon != std::string_view::npos) {
        ex->response.headers.push_back({std::string(line.substr(0, colon)), std::string(trim(line.substr(colon + 1)))});
    }
    return size * n;
}

std::size_t on_body(char* data, std::size_t size, std::size_t n, void* user) {
    auto* ex = static_cast<Exchange*>(user);
    auto bytes = size * n;
    auto room = ex->max_body - ex->response.body.size();
    if (bytes > room) {
        ex->response.body.append(data, room);
        ex->response.body_truncated = true;
        return 0;  // aborts the transfer
    }
    ex->response.body.append(data, bytes);
    return bytes;
}

class CurlTransport : public HttpTransport {
public:
    CurlTransport() {
        static std::once_flag once;
        std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
    }

    HttpResponse get(const std::string& url, const std::string& user_agent, std::size_t max_body_bytes,
                     int timeout_ms) override {
        std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
        if (!curl) throw TransportError("curl_easy_init failed");
        Exchange ex;
        ex.max_body = max_body_bytes;
        char errbuf[CURL_ERROR_SIZE] = {0};
        auto* h = curl.get();
        curl_easy_setopt(h, CURLOPT_URL, url.c_str());
        curl_easy_setopt(h, CURLOPT_USERAGENT, user_agent.c_str());
        curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 0L);
        curl_easy_setopt(h, CURLOPT_TIMEOUT_MS, static_cast<long>(timeout_ms));
        curl_easy_setopt(h, CURLOPT_NOSIGNAL, 1L);
        curl_easy_setopt(h, CURLOPT_PROTOCOLS, CURLPROTO_HTTP | CURLPROTO_HTTPS);
        curl_easy_setopt(h, CURLOPT_ERRORBUFFER, errbuf);
        curl_easy_setopt(h, CURLOPT_HEADERFUNCTION, on_header);
        curl_easy_setopt(h, CURLOPT_HEADERDATA, &ex);
        curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, on_body);
        curl_easy_setopt(h, CURLOPT_WRITEDATA, &ex);
        auto rc = curl_easy_perform(h);
        if (rc != CURLE_OK && !(rc == CURLE_WRITE_ERROR && ex.response.body_truncated)) {
            std::string cause = errbuf[0] ? errbuf : curl_easy_strerror(rc);
            if (rc == CURLE_COULDNT_RESOLVE_HOST) cause = "DNS failure: " + cause;
            throw TransportError(cause);
        }
        long status = 0;
        curl_easy_getinfo(h, CURLINFO_RESPONSE_CODE, &status);
        ex.response.status = static_cast<int>(status);
        return std::move(ex.response);
    }
};

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport() { return std::make_unique<CurlTransport>(); }

}  // namespace wii
