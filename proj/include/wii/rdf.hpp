#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wii/xml.hpp"

namespace wii {

inline constexpr std::string_view kRdfNamespace = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";

/// Terms are written N-Triples style: <iri>, _:blank, "literal".
struct Triple {
    std::string subject;
    std::string predicate;
    std::string object;
    bool operator==(const Triple&) const = default;
};

/// Structurally invalid RDF/XML; offset is the element where it was found.
class RdfSyntaxError : public std::runtime_error {
public:
    RdfSyntaxError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// True when the root is rdf:RDF, or a lone node element that carries
/// rdf:about / rdf:ID / rdf:nodeID or is rdf:Description.
bool looks_like_rdf_xml(const XmlElement& root);

/// Triples of an RDF/XML document. `source` is the document text the
/// element offsets refer to (needed for rdf:parseType="Literal").
/// Throws RdfSyntaxError.
std::vector<Triple> parse_rdf_xml(const XmlElement& root, std::string_view source,
                                  std::string_view base_iri = {});

}  // namespace wii
