#include "wii/xml.hpp"

#include <expat.h>

#include <memory>

namespace wii {

namespace {

constexpr char kSep = '\x01';

void split_name(const XML_Char* raw, std::string& ns, std::string& local, std::string& prefix) {
    std::string_view s(raw);
    auto a = s.find(kSep);
    if (a == std::string_view::npos) {
        ns.clear();
        local = s;
        prefix.clear();
        return;
    }
    ns = s.substr(0, a);
    auto rest = s.substr(a + 1);
    auto b = rest.find(kSep);
    if (b == std::string_view::npos) {
        local = rest;
        prefix.clear();
    } else {
        local = rest.substr(0, b);
        prefix = rest.substr(b + 1);
    }
}

struct BuildState {
    XML_Parser parser = nullptr;
    std::vector<XmlElement> stack;
    std::optional<XmlElement> root;
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* st = static_cast<BuildState*>(data);
    XmlElement e;
    split_name(name, e.ns, e.local, e.prefix);
    for (std::size_t i = 0; atts[i]; i += 2) {
        XmlAttribute a;
        split_name(atts[i], a.ns, a.local, a.prefix);
        a.value = atts[i + 1];
        e.attrs.push_back(std::move(a));
    }
    auto index = XML_GetCurrentByteIndex(st->parser);
    auto count = XML_GetCurrentByteCount(st->parser);
    e.offset = static_cast<std::size_t>(index);
    e.inner_begin = static_cast<std::size_t>(index + count);
    e.inner_end = e.inner_begin;
    e.line = static_cast<int>(XML_GetCurrentLineNumber(st->parser));
    st->stack.push_back(std::move(e));
}

void XMLCALL on_end(void* data, const XML_Char*) {
    auto* st = static_cast<BuildState*>(data);
    auto e = std::move(st->stack.back());
    st->stack.pop_back();
    auto count = XML_GetCurrentByteCount(st->parser);
    // count is 0 for the synthetic end event of an empty-element tag
    if (count > 0) e.inner_end = static_cast<std::size_t>(XML_GetCurrentByteIndex(st->parser));
    if (st->stack.empty()) {
        st->root = std::move(e);
    } else {
        st->stack.back().children.push_back(std::move(e));
    }
}

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
    auto* st = static_cast<BuildState*>(data);
    if (!st->stack.empty()) st->stack.back().text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

const XmlAttribute* XmlElement::attr(std::string_view ns_uri, std::string_view local_name) const {
    for (const auto& a : attrs) {
        if (a.ns == ns_uri && a.local == local_name) return &a;
    }
    return nullptr;
}

std::vector<const XmlElement*> XmlElement::children_named(std::string_view ns_uri,
                                                          std::string_view local_name) const {
    std::vector<const XmlElement*> out;
    for (const auto& c : children) {
        if (c.is(ns_uri, local_name)) out.push_back(&c);
    }
    return out;
}

const XmlElement* XmlElement::first_child(std::string_view ns_uri, std::string_view local_name) const {
    for (const auto& c : children) {
        if (c.is(ns_uri, local_name)) return &c;
    }
    return nullptr;
}

std::string XmlElement::qname() const { return prefix.empty() ? local : prefix + ":" + local; }

XmlParseResult parse_xml(std::string_view bytes) {
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreateNS(nullptr, kSep), XML_ParserFree);
    XmlParseResult result;
    if (!parser) {
        result.error = XmlError{"cannot create XML parser", 0, 0, 0};
        return result;
    }
    XML_SetReturnNSTriplet(parser.get(), 1);
    BuildState st;
    st.parser = parser.get();
    XML_SetUserData(parser.get(), &st);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);

    auto status = XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
    if (status != XML_STATUS_OK || !st.root) {
        XmlError err;
        err.message = status != XML_STATUS_OK ? XML_ErrorString(XML_GetErrorCode(parser.get()))
                                              : "no root element";
        auto idx = XML_GetCurrentByteIndex(parser.get());
        err.offset = idx < 0 ? 0 : static_cast<std::size_t>(idx);
        // expat reports a mismatched end tag at its name; point at the '<'
        if (status != XML_STATUS_OK && XML_GetErrorCode(parser.get()) == XML_ERROR_TAG_MISMATCH) {
            auto lt = bytes.rfind('<', err.offset);
            if (lt != std::string_view::npos) err.offset = lt;
        }
        err.line = static_cast<int>(XML_GetCurrentLineNumber(parser.get()));
        err.column = static_cast<int>(XML_GetCurrentColumnNumber(parser.get()));
        result.error = std::move(err);
        return result;
    }
    result.document = XmlDocument{std::move(*st.root)};
    return result;
}

}  // namespace wii
