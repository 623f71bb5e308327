#include "wii/rdf.hpp"

#include "wii/text.hpp"
#include "wii/url.hpp"

namespace wii {

namespace {

const std::string kRdf(kRdfNamespace);

bool is_rdf(const XmlElement& e, std::string_view local) { return e.is(kRdfNamespace, local); }

bool is_syntax_attr(const XmlAttribute& a) {
    if (a.ns == kXmlNamespace) return true;
    if (a.ns.empty()) return true;  // unqualified attributes are not properties
    if (a.ns == kRdfNamespace) {
        return a.local == "about" || a.local == "ID" || a.local == "nodeID" ||
               a.local == "resource" || a.local == "parseType" || a.local == "datatype" ||
               a.local == "bagID" || a.local == "aboutEach" || a.local == "aboutEachPrefix";
    }
    return false;
}

std::string quote_literal(std::string_view text, std::string_view lang, std::string_view datatype) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
    if (!datatype.empty()) {
        out += "^^<" + std::string(datatype) + ">";
    } else if (!lang.empty()) {
        out += "@" + std::string(lang);
    }
    return out;
}

bool blank_text(std::string_view s) { return trim(s).empty(); }

class RdfReader {
public:
    RdfReader(std::string_view source, std::string_view base) : source_(source), base_(base) {}

    std::vector<Triple> read(const XmlElement& root) {
        if (is_rdf(root, "RDF")) {
            if (!blank_text(root.text)) throw RdfSyntaxError("text content directly inside rdf:RDF", root.offset);
            auto base = scoped_base(root, base_);
            for (const auto& child : root.children) node_element(child, base, lang_of(root, ""));
        } else {
            node_element(root, scoped_base(root, base_), lang_of(root, ""));
        }
        return std::move(triples_);
    }

private:
    static std::string lang_of(const XmlElement& e, const std::string& inherited) {
        auto a = e.attr(kXmlNamespace, "lang");
        return a ? a->value : inherited;
    }

    static std::string scoped_base(const XmlElement& e, const std::string& inherited) {
        auto a = e.attr(kXmlNamespace, "base");
        if (!a) return inherited;
        if (inherited.empty()) return a->value;
        return resolve_url(inherited, a->value).value_or(a->value);
    }

    std::string iri(std::string_view ref, const std::string& base) const {
        if (auto u = parse_url(ref); u && u->absolute()) return "<" + std::string(ref) + ">";
        if (!base.empty()) {
            if (auto r = resolve_url(base, ref)) return "<" + *r + ">";
            return "<" + base + std::string(ref) + ">";
        }
        return "<" + std::string(ref) + ">";
    }

    std::string id_iri(std::string_view id, const std::string& base) const {
        return "<" + base + "#" + std::string(id) + ">";
    }

    std::string fresh_blank() { return "_:b" + std::to_string(++blank_counter_); }

    void emit(std::string s, std::string p, std::string o) {
        triples_.push_back({std::move(s), std::move(p), std::move(o)});
    }

    static std::string predicate_of(const XmlElement& e) { return "<" + e.ns + e.local + ">"; }

    std::string subject_of(const XmlElement& e, const std::string& base) {
        auto about = e.attr(kRdfNamespace, "about");
        auto id = e.attr(kRdfNamespace, "ID");
        auto node_id = e.attr(kRdfNamespace, "nodeID");
        if ((about != nullptr) + (id != nullptr) + (node_id != nullptr) > 1) {
            throw RdfSyntaxError("node element " + e.qname() +
                                     " has more than one of rdf:about, rdf:ID, rdf:nodeID",
                                 e.offset);
        }
        if (about) return iri(about->value, base);
        if (id) return id_iri(id->value, base);
        if (node_id) return "_:" + node_id->value;
        return fresh_blank();
    }

    void property_attributes(const XmlElement& e, const std::string& subject, const std::string& lang) {
        for (const auto& a : e.attrs) {
            if (is_syntax_attr(a)) continue;
            if (a.ns == kRdfNamespace && a.local == "type") {
                emit(subject, "<" + kRdf + "type>", "<" + a.value + ">");
                continue;
            }
            emit(subject, "<" + a.ns + a.local + ">", quote_literal(a.value, lang, ""));
        }
    }

    std::string node_element(const XmlElement& e, const std::string& inherited_base,
                             const std::string& inherited_lang) {
        if (e.ns.empty()) throw RdfSyntaxError("node element " + e.local + " has no namespace", e.offset);
        if (is_rdf(e, "RDF") || is_rdf(e, "li") || is_rdf(e, "resource")) {
            throw RdfSyntaxError("rdf:" + e.local + " is not allowed as a node element", e.offset);
        }
        if (!blank_text(e.text)) {
            throw RdfSyntaxError("node element " + e.qname() + " contains text", e.offset);
        }
        auto base = scoped_base(e, inherited_base);
        auto lang = lang_of(e, inherited_lang);
        auto subject = subject_of(e, base);
        if (!is_rdf(e, "Description")) emit(subject, "<" + kRdf + "type>", "<" + e.ns + e.local + ">");
        property_attributes(e, subject, lang);
        int li = 0;
        for (const auto& child : e.children) property_element(child, subject, base, lang, li);
        return subject;
    }

    void property_element(const XmlElement& p, const std::string& subject,
                          const std::string& inherited_base, const std::string& inherited_lang, int& li) {
        if (p.ns.empty()) throw RdfSyntaxError("property element " + p.local + " has no namespace", p.offset);
        auto base = scoped_base(p, inherited_base);
        auto lang = lang_of(p, inherited_lang);
        auto predicate = is_rdf(p, "li") ? "<" + kRdf + "_" + std::to_string(++li) + ">" : predicate_of(p);

        std::string object;
        auto parse_type = p.attr(kRdfNamespace, "parseType");
        auto resource = p.attr(kRdfNamespace, "resource");
        auto node_id = p.attr(kRdfNamespace, "nodeID");
        auto datatype = p.attr(kRdfNamespace, "datatype");
        bool has_prop_attrs = false;
        for (const auto& a : p.attrs) has_prop_attrs = has_prop_attrs || !is_syntax_attr(a);

        if (parse_type && parse_type->value == "Literal") {
            auto inner = source_.substr(p.inner_begin, p.inner_end - p.inner_begin);
            object = quote_literal(inner, "", kRdf + "XMLLiteral");
        } else if (parse_type && parse_type->value == "Collection") {
            if (!blank_text(p.text)) throw RdfSyntaxError("text inside a collection", p.offset);
            std::vector<std::string> items;
            for (const auto& child : p.children) items.push_back(node_element(child, base, lang));
            if (items.empty()) {
                object = "<" + kRdf + "nil>";
            } else {
                std::vector<std::string> cells;
                for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(fresh_blank());
                for (std::size_t i = 0; i < items.size(); ++i) {
                    emit(cells[i], "<" + kRdf + "first>", items[i]);
                    emit(cells[i], "<" + kRdf + "rest>", i + 1 < items.size() ? cells[i + 1] : "<" + kRdf + "nil>");
                }
                object = cells.front();
            }
        } else if (parse_type) {  // "Resource" and unknown values
            if (!blank_text(p.text)) throw RdfSyntaxError("text inside parseType=Resource", p.offset);
            object = fresh_blank();
            int inner_li = 0;
            for (const auto& child : p.children) property_element(child, object, base, lang, inner_li);
        } else if (!p.children.empty()) {
            if (p.children.size() != 1) {
                throw RdfSyntaxError("property element " + p.qname() + " has more than one node element",
                                     p.children[1].offset);
            }
            if (!blank_text(p.text)) {
                throw RdfSyntaxError("property element " + p.qname() + " mixes text and elements", p.offset);
            }
            if (resource || node_id) {
                throw RdfSyntaxError("property element " + p.qname() + " has both an object reference and content",
                                     p.offset);
            }
            object = node_element(p.children.front(), base, lang);
        } else if (resource || node_id || (has_prop_attrs && p.text.empty())) {
            if (resource && node_id) {
                throw RdfSyntaxError("property element " + p.qname() + " has rdf:resource and rdf:nodeID",
                                     p.offset);
            }
            if (!p.text.empty() && !blank_text(p.text)) {
                throw RdfSyntaxError("property element " + p.qname() + " has an object reference and text",
                                     p.offset);
            }
            object = resource ? iri(resource->value, base) : node_id ? "_:" + node_id->value : fresh_blank();
            property_attributes(p, object, lang);
        } else {
            object = quote_literal(p.text, datatype ? "" : lang, datatype ? datatype->value : "");
        }

        emit(subject, predicate, object);
        if (auto id = p.attr(kRdfNamespace, "ID")) {
            auto stmt = id_iri(id->value, base);
            emit(stmt, "<" + kRdf + "type>", "<" + kRdf + "Statement>");
            emit(stmt, "<" + kRdf + "subject>", subject);
            emit(stmt, "<" + kRdf + "predicate>", predicate);
            emit(stmt, "<" + kRdf + "object>", object);
        }
    }

    std::string_view source_;
    std::string base_;
    std::vector<Triple> triples_;
    int blank_counter_ = 0;
};

}  // namespace

bool looks_like_rdf_xml(const XmlElement& root) {
    if (is_rdf(root, "RDF") || is_rdf(root, "Description")) return true;
    return root.attr(kRdfNamespace, "about") || root.attr(kRdfNamespace, "ID") ||
           root.attr(kRdfNamespace, "nodeID");
}

std::vector<Triple> parse_rdf_xml(const XmlElement& root, std::string_view source, std::string_view base_iri) {
    if (!looks_like_rdf_xml(root)) {
        throw RdfSyntaxError("root element " + root.qname() + " is not RDF/XML", root.offset);
    }
    return RdfReader(source, base_iri).read(root);
}

}  // namespace wii
