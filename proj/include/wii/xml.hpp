#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wii {

inline constexpr std::string_view kXmlNamespace = "http://www.w3.org/XML/1998/namespace";

struct XmlAttribute {
    std::string ns;
    std::string local;
    std::string prefix;
    std::string value;
};

/// Namespace-resolved element with byte positions into the source document.
struct XmlElement {
    std::string ns;
    std::string local;
    std::string prefix;
    std::vector<XmlAttribute> attrs;
    std::vector<XmlElement> children;
    std::string text;  // direct character data, concatenated
    std::size_t offset = 0;       // '<' of the start tag
    std::size_t inner_begin = 0;  // first byte after the start tag
    std::size_t inner_end = 0;    // '<' of the end tag (== inner_begin when empty)
    int line = 0;

    bool is(std::string_view ns_uri, std::string_view local_name) const {
        return ns == ns_uri && local == local_name;
    }
    const XmlAttribute* attr(std::string_view ns_uri, std::string_view local_name) const;
    /// Attribute with no namespace.
    const XmlAttribute* attr(std::string_view local_name) const { return attr("", local_name); }

    /// Direct children matching (ns, local).
    std::vector<const XmlElement*> children_named(std::string_view ns_uri,
                                                  std::string_view local_name) const;
    const XmlElement* first_child(std::string_view ns_uri, std::string_view local_name) const;

    /// prefix:local or local.
    std::string qname() const;
};

struct XmlError {
    std::string message;
    std::size_t offset = 0;
    int line = 0;
    int column = 0;
};

struct XmlDocument {
    XmlElement root;
};

/// Well-formedness parse (expat, namespace aware). Exactly one of the two
/// members is set.
struct XmlParseResult {
    std::optional<XmlDocument> document;
    std::optional<XmlError> error;
};

XmlParseResult parse_xml(std::string_view bytes);

}  // namespace wii
