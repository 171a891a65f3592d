#ifndef HYPERLAG_IO_HPP
#define HYPERLAG_IO_HPP

#include <iosfwd>
#include <string>

#include "hyperlag/hypergraph.hpp"

namespace hyperlag {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text format: one edge per line as space-separated 1-based vertex
/// indices; `#` starts a comment; blank lines ignored. n is the largest
/// vertex mentioned, r the common edge size.
Hypergraph read_hypergraph_text(std::istream& in);
void write_hypergraph_text(std::ostream& out, const Hypergraph& h);

/// JSON form {"n":..., "r":..., "edges":[[...],...]}, edges in colex order.
Hypergraph hypergraph_from_json_string(const std::string& text);
std::string hypergraph_to_json_string(const Hypergraph& h);

/// Reads either format: JSON when the first non-space byte is '{'.
Hypergraph read_hypergraph_file(const std::string& path);

}  // namespace hyperlag

#endif
