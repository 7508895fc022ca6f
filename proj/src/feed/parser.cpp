#include "newsgram/feed/item.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "newsgram/errors.hpp"
#include "newsgram/utf8.hpp"

namespace newsgram::feed {

namespace pt = boost::property_tree;

namespace {

std::string_view local_name(std::string_view qualified) {
    auto colon = qualified.rfind(':');
    return colon == std::string_view::npos ? qualified : qualified.substr(colon + 1);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_meta_key(std::string_view key) { return !key.empty() && key.front() == '<'; }

void append_text(const pt::ptree& node, std::string& out) {
    out += node.data();
    for (const auto& [key, child] : node)
        if (!is_meta_key(key)) append_text(child, out);
}

std::string text_of(const pt::ptree& node) {
    std::string out;
    append_text(node, out);
    return out;
}

/// First child whose qualified or local name equals one of `names`.
const pt::ptree* child(const pt::ptree& node, std::initializer_list<std::string_view> names) {
    for (auto wanted : names)
        for (const auto& [key, c] : node)
            if (key == wanted) return &c;
    for (auto wanted : names)
        for (const auto& [key, c] : node)
            if (!is_meta_key(key) && local_name(key) == wanted) return &c;
    return nullptr;
}

std::string child_text(const pt::ptree& node, std::initializer_list<std::string_view> names) {
    const auto* c = child(node, names);
    return c ? text_of(*c) : std::string{};
}

std::string attribute(const pt::ptree& node, const std::string& name) {
    return node.get<std::string>("<xmlattr>." + name, "");
}

std::string atom_link(const pt::ptree& entry) {
    std::string fallback;
    for (const auto& [key, c] : entry) {
        if (is_meta_key(key) || local_name(key) != "link") continue;
        auto rel = attribute(c, "rel");
        auto href = attribute(c, "href");
        if (rel.empty() || rel == "alternate") return href;
        if (fallback.empty()) fallback = href;
    }
    return fallback;
}

std::string declared_encoding(std::string_view doc) {
    if (doc.substr(0, 5) != "<?xml") return {};
    auto end = doc.find("?>");
    auto decl = doc.substr(0, end);
    auto pos = decl.find("encoding");
    if (pos == std::string_view::npos) return {};
    auto quote = decl.find_first_of("\"'", pos);
    if (quote == std::string_view::npos) return {};
    auto close = decl.find(decl[quote], quote + 1);
    std::string enc(decl.substr(quote + 1, close - quote - 1));
    for (char& c : enc) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return enc;
}

std::string to_utf8(std::string_view doc) {
    if (doc.substr(0, 3) == "\xEF\xBB\xBF") doc.remove_prefix(3);
    const auto enc = declared_encoding(doc);
    if (enc == "iso-8859-1" || enc == "latin1" || enc == "iso-8859-15")
        return utf8::from_latin1(doc, false);
    if (enc == "windows-1252" || enc == "cp1252") return utf8::from_latin1(doc, true);
    return std::string(doc);
}

RawFeedItem make_item(std::string_view source_id, std::chrono::system_clock::time_point fetched_at) {
    RawFeedItem item;
    item.source_id = source_id;
    item.fetched_at = fetched_at;
    return item;
}

}  // namespace

std::vector<RawFeedItem> parse_feed(std::string_view document, std::string_view source_id,
                                    std::chrono::system_clock::time_point fetched_at) {
    pt::ptree tree;
    try {
        std::istringstream in(to_utf8(document));
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw FeedParseError(std::string("malformed feed XML: ") + e.what());
    }

    std::vector<RawFeedItem> items;
    for (const auto& [key, root] : tree) {
        if (is_meta_key(key)) continue;
        const auto name = local_name(key);
        if (name == "rss" || name == "RDF") {
            // RSS 2.0 nests items in <channel>; RSS 1.0 puts them beside it.
            std::vector<const pt::ptree*> containers{&root};
            if (const auto* channel = child(root, {"channel"})) containers.push_back(channel);
            for (const auto* container : containers) {
                for (const auto& [k, node] : *container) {
                    if (is_meta_key(k) || local_name(k) != "item") continue;
                    auto item = make_item(source_id, fetched_at);
                    item.title = child_text(node, {"title"});
                    item.description = child_text(node, {"description"});
                    item.link = trim(child_text(node, {"link"}));
                    item.published_raw = child_text(node, {"pubDate", "dc:date", "date", "published", "updated"});
                    items.push_back(std::move(item));
                }
            }
            return items;
        }
        if (name == "feed") {
            for (const auto& [k, node] : root) {
                if (is_meta_key(k) || local_name(k) != "entry") continue;
                auto item = make_item(source_id, fetched_at);
                item.title = child_text(node, {"title"});
                item.description = child_text(node, {"summary"});
                if (item.description.empty()) item.description = child_text(node, {"content"});
                item.link = trim(atom_link(node));
                item.published_raw = child_text(node, {"published", "updated"});
                items.push_back(std::move(item));
            }
            return items;
        }
        throw FeedParseError("unrecognized feed root element <" + key + ">");
    }
    throw FeedParseError("document has no root element");
}

}  // namespace newsgram::feed
