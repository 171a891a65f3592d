#include "hyperlag/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hyperlag {

Hypergraph read_hypergraph_text(std::istream& in) {
    std::vector<Edge> edges;
    int n = 0;
    int r = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        Edge e;
        int v;
        while (ls >> v) e.push_back(v);
        if (!ls.eof())
            throw ParseError("line " + std::to_string(lineno) + ": not an integer");
        if (e.empty()) continue;
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw ParseError("line " + std::to_string(lineno) + ": repeated vertex in edge");
        if (e.front() < 1)
            throw ParseError("line " + std::to_string(lineno) + ": vertex index < 1");
        if (r < 0) r = static_cast<int>(e.size());
        if (static_cast<int>(e.size()) != r)
            throw ParseError("line " + std::to_string(lineno) + ": mixed edge sizes");
        n = std::max(n, e.back());
        edges.push_back(std::move(e));
    }
    if (r < 0) throw ParseError("no edges in text hypergraph");
    try {
        return Hypergraph(n, r, std::move(edges));
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
}

void write_hypergraph_text(std::ostream& out, const Hypergraph& h) {
    out << "# n=" << h.vertex_count() << " r=" << h.arity()
        << " m=" << h.edge_count() << "\n";
    for (auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            out << (i ? " " : "") << e[i];
        out << "\n";
    }
}

Hypergraph hypergraph_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad JSON: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("r") || !j.contains("edges"))
        throw ParseError("JSON hypergraph needs keys n, r, edges");
    try {
        int n = j.at("n").get<int>();
        int r = j.at("r").get<int>();
        std::vector<Edge> edges;
        for (auto& je : j.at("edges")) {
            Edge e = je.get<Edge>();
            std::sort(e.begin(), e.end());
            edges.push_back(std::move(e));
        }
        return Hypergraph(n, r, std::move(edges));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad JSON hypergraph: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
}

std::string hypergraph_to_json_string(const Hypergraph& h) {
    nlohmann::json j;
    j["n"] = h.vertex_count();
    j["r"] = h.arity();
    j["edges"] = h.edges();
    return j.dump();
}

Hypergraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return hypergraph_from_json_string(text);
    std::istringstream ts(text);
    return read_hypergraph_text(ts);
}

}  // namespace hyperlag
