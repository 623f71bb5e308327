#include <doctest.h>

#include "wii/html.hpp"

using namespace wii;
using K = HtmlToken::Kind;

TEST_CASE("tokenizer basics") {
    std::string_view src =
        "<!DOCTYPE html><html lang=\"si\"><head><title>A &amp; B</title>"
        "<script>if (a < b) { x = '</div>'; }</script></head>"
        "<body><p class=x id='y' hidden>Hi&nbsp;<b>there</b><br/></body></html>";
    auto tokens = tokenize_html(src);
    REQUIRE(tokens.size() > 5);
    CHECK(tokens[0].kind == K::Doctype);
    CHECK(tokens[0].text == "html");
    CHECK(tokens[1].is_start("html"));
    CHECK(tokens[1].attr("lang")->value == "si");

    std::string title;
    bool in_title = false;
    std::string script;
    bool in_script = false;
    for (const auto& t : tokens) {
        if (t.is_start("title")) in_title = true;
        else if (t.is_end("title")) in_title = false;
        else if (in_title && t.kind == K::Text) title += t.text;
        if (t.is_start("script")) in_script = true;
        else if (t.is_end("script")) in_script = false;
        else if (in_script && t.kind == K::Text) script += t.text;
        if (t.is_start("p")) {
            CHECK(t.attr("class")->value == "x");
            CHECK(t.attr("id")->value == "y");
            CHECK(t.attr("hidden") != nullptr);
        }
        if (t.is_start("br")) CHECK(t.self_closing);
    }
    CHECK(title == "A & B");
    CHECK(script == "if (a < b) { x = '</div>'; }");

    // offsets point at the source bytes
    for (const auto& t : tokens) {
        CHECK(t.offset + t.length <= src.size());
        if (t.kind == K::StartTag) CHECK(src.substr(t.offset, 1 + t.name.size()).size() > 0);
        if (t.kind == K::StartTag) CHECK(src[t.offset] == '<');
    }
}

TEST_CASE("tokenizer tolerates garbage") {
    for (std::string_view src : {"<", "<<>>", "a < b", "<div", "<a href='x", "<!--", "</", "<!doctype",
                                 "<p =x>", "<script>never closed"}) {
        auto tokens = tokenize_html(src);
        std::size_t covered = 0;
        for (const auto& t : tokens) {
            CHECK(t.offset == covered);
            covered += t.length;
        }
        CHECK(covered == src.size());
    }
}

TEST_CASE("entities") {
    CHECK(decode_entities("&lt;a&gt; &#65;&#x42; &unknown; &amp") == "<a> AB &unknown; &amp");
    CHECK(decode_entities("&#x20AC;") == "\xE2\x82\xAC");
}

TEST_CASE("extract_links classifies references") {
    std::string_view page =
        "<html><head>"
        "<link rel=\"alternate\" type=\"application/rss+xml\" href=\"/news.rss\">"
        "<link rel=\"alternate\" type=\"application/rdf+xml\" href=\"meta.rdf\">"
        "<link rel=stylesheet href=\"s.css\">"
        "</head><body>"
        "<a href=\"about.html#team\">About</a>"
        "<a href=\"mailto:info@example.lk\">mail</a>"
        "<a href=\"/feed/\">feed</a>"
        "<img src=\"img/logo.png\">"
        "<script src=\"//cdn.example.org/x.js\"></script>"
        "</body></html>";
    auto links = extract_links(page, "http://example.lk/dir/index.html");
    REQUIRE(links.size() == 7);
    CHECK(links[0].url == "http://example.lk/news.rss");
    CHECK(links[0].via == DiscoveredVia::FeedLink);
    CHECK(links[1].url == "http://example.lk/dir/meta.rdf");
    CHECK(links[1].via == DiscoveredVia::AlternateLink);
    CHECK(links[2].via == DiscoveredVia::EmbeddedResource);
    CHECK(links[3].url == "http://example.lk/dir/about.html");
    CHECK(links[3].via == DiscoveredVia::Hyperlink);
    CHECK(links[4].url == "http://example.lk/feed/");
    CHECK(links[4].via == DiscoveredVia::FeedLink);
    CHECK(links[5].url == "http://example.lk/dir/img/logo.png");
    CHECK(links[6].url == "http://cdn.example.org/x.js");
    CHECK(page.substr(links[5].offset, 3) == "src");
}

TEST_CASE("base href") {
    auto links = extract_links("<base href=\"http://other.lk/root/\"><a href=x>x</a>", "http://a.lk/");
    REQUIRE(links.size() == 1);
    CHECK(links[0].url == "http://other.lk/root/x");
}

TEST_CASE("media type helpers") {
    CHECK(essence("Text/HTML; charset=UTF-8") == "text/html");
    CHECK(charset_param("text/html; Charset=\"UTF-8\"") == "utf-8");
    CHECK_FALSE(charset_param("text/html").has_value());
    CHECK(looks_like_feed_url("http://a.lk/rss.xml"));
    CHECK(looks_like_feed_url("http://a.lk/feed"));
    CHECK_FALSE(looks_like_feed_url("http://a.lk/feedback.html"));
}
