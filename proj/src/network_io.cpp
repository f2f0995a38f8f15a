#include "jtarch/network_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace jtarch {

using nlohmann::json;

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Line of the first occurrence of a quoted key, for schema errors.
std::string where(const std::string& text, const std::string& key) {
    auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return "";
    return " (" + line_col(text, pos) + ")";
}

} // namespace

NetworkFile parse_network(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed network file at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    NetworkFile out;
    BayesNet& net = out.net;
    try {
        if (!doc.is_object() || !doc.contains("variables"))
            throw ParseError("network file needs a \"variables\" list");
        for (const auto& v : doc.at("variables")) {
            Variable var;
            var.id = int(net.vars.size());
            var.name = v.at("name").get<std::string>();
            var.states = v.at("states").get<std::vector<std::string>>();
            var.card = int(var.states.size());
            if (var.card < 2) throw ParseError("variable " + var.name + " needs at least two states" + where(text, var.name));
            if (net.find(var.name) >= 0) throw ParseError("duplicate variable " + var.name + where(text, var.name));
            net.vars.push_back(var);
        }
        net.parents.assign(net.size(), {});
        if (doc.contains("arcs")) {
            for (const auto& a : doc.at("arcs")) {
                auto pair = a.get<std::vector<std::string>>();
                if (pair.size() != 2) throw ParseError("each arc is a [parent, child] pair" + where(text, "arcs"));
                int p = net.find(pair[0]), c = net.find(pair[1]);
                if (p < 0 || c < 0)
                    throw ParseError("arc " + pair[0] + " -> " + pair[1] + " names an unknown variable" + where(text, "arcs"));
                net.parents[std::size_t(c)].push_back(p);
            }
        }
        const json& cpts = doc.contains("cpts") ? doc.at("cpts") : json::object();
        for (std::size_t v = 0; v < net.size(); ++v) {
            const auto& name = net.vars[v].name;
            if (!cpts.contains(name)) throw ParseError("missing cpt for " + name + where(text, "cpts"));
            Domain dom = net.parents[v];
            dom.push_back(int(v));
            std::vector<int> cards;
            for (int x : dom) cards.push_back(net.vars[std::size_t(x)].card);
            auto vals = cpts.at(name).get<std::vector<double>>();
            try {
                net.cpts.push_back(make_potential(dom, cards, vals));
            } catch (const std::invalid_argument& e) {
                throw ParseError("cpt for " + name + ": " + e.what() + where(text, name));
            }
        }
        if (doc.contains("evidence")) {
            for (const auto& [name, vec] : doc.at("evidence").items()) {
                int id = net.find(name);
                if (id < 0) throw ParseError("evidence names unknown variable " + name + where(text, "evidence"));
                out.evidence.items[id] = vec.get<std::vector<double>>();
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("network file schema error: ") + e.what());
    }
    auto problems = validate(net);
    if (!problems.empty()) throw ParseError("invalid network: " + problems.front());
    try {
        validate_evidence(net, out.evidence);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid evidence: ") + e.what() + where(text, "evidence"));
    }
    return out;
}

NetworkFile load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_network(ss.str());
}

std::string write_network(const BayesNet& net, const Evidence& ev) {
    json doc;
    doc["variables"] = json::array();
    for (const auto& v : net.vars) {
        std::vector<std::string> states = v.states;
        if (states.empty())
            for (int s = 0; s < v.card; ++s) states.push_back("s" + std::to_string(s));
        doc["variables"].push_back({{"name", v.name}, {"states", states}});
    }
    doc["arcs"] = json::array();
    for (std::size_t v = 0; v < net.size(); ++v)
        for (int p : net.parents[v]) doc["arcs"].push_back({net.vars[std::size_t(p)].name, net.vars[v].name});
    doc["cpts"] = json::object();
    for (std::size_t v = 0; v < net.size(); ++v) {
        Domain dom = net.parents[v];
        dom.push_back(int(v));
        doc["cpts"][net.vars[v].name] = reorder(net.cpts[v], dom).values();
    }
    if (!ev.items.empty()) {
        doc["evidence"] = json::object();
        for (const auto& [id, vec] : ev.items) doc["evidence"][net.vars[std::size_t(id)].name] = vec;
    }
    return doc.dump(2) + "\n";
}

} // namespace jtarch
