#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wii/snapshot.hpp"

namespace wii::testing {

/// Builds in-memory snapshots for checker and merge tests.
class SiteBuilder {
public:
    explicit SiteBuilder(std::string root_url, std::string root_body,
                         std::string media_type = "text/html; charset=utf-8",
                         std::vector<Header> extra_headers = {}) {
        snap_.root_url = root_url;
        snap_.requested_url = root_url;
        snap_.fetched_at = "2015-04-10T00:00:00Z";
        add(std::move(root_url), DiscoveredVia::Root, std::move(media_type), std::move(root_body), 200,
            std::move(extra_headers));
    }

    SiteBuilder& add(std::string url, DiscoveredVia via, std::string media_type, std::string body,
                     int status = 200, std::vector<Header> extra_headers = {}) {
        ResourceRecord r;
        r.url = std::move(url);
        r.status = status;
        r.media_type = media_type;
        r.discovered_via = via;
        if (!media_type.empty()) r.headers.push_back({"Content-Type", media_type});
        for (auto& h : extra_headers) r.headers.push_back(std::move(h));
        snap_.add(std::move(r), std::move(body));
        return *this;
    }

    SiteSnapshot build() {
        snap_.seal();
        return snap_;
    }

private:
    SiteSnapshot snap_;
};

}  // namespace wii::testing
