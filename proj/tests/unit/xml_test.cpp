#include <doctest.h>

#include "wii/xml.hpp"

using namespace wii;

TEST_CASE("namespaced parse with offsets") {
    std::string_view src =
        "<?xml version=\"1.0\"?>\n"
        "<r:root xmlns:r=\"urn:r\" xmlns=\"urn:d\" a=\"1\" r:b=\"2\">"
        "<item>one</item><empty/><item>t<i>w</i>o</item></r:root>";
    auto res = parse_xml(src);
    REQUIRE(res.document);
    const auto& root = res.document->root;
    CHECK(root.is("urn:r", "root"));
    CHECK(root.qname() == "r:root");
    CHECK(root.attr("a")->value == "1");
    CHECK(root.attr("urn:r", "b")->value == "2");
    CHECK(src.substr(root.offset, 7) == "<r:root");
    auto items = root.children_named("urn:d", "item");
    REQUIRE(items.size() == 2);
    CHECK(items[0]->text == "one");
    CHECK(items[1]->text == "to");
    CHECK(src.substr(items[1]->inner_begin, items[1]->inner_end - items[1]->inner_begin) == "t<i>w</i>o");
    const auto* empty = root.first_child("urn:d", "empty");
    REQUIRE(empty);
    CHECK(empty->inner_begin == empty->inner_end);
    CHECK(src.substr(empty->offset, 8) == "<empty/>");
}

TEST_CASE("well-formedness errors carry offsets") {
    std::string_view src = "<a><b>text</c></a>";
    auto res = parse_xml(src);
    REQUIRE(res.error);
    CHECK_FALSE(res.document);
    CHECK(src.substr(res.error->offset, 4) == "</c>");
    CHECK(res.error->message == "mismatched tag");

    CHECK(parse_xml("").error);
    CHECK(parse_xml("<a>").error);
    CHECK(parse_xml("<a/><b/>").error);
}
