#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latcount/hypergraph.hpp"
#include "latcount/polyhedron.hpp"

namespace latcount {

// One parsed instance file.  A `mult` line on a canonical system has already
// been folded into cap rows; on a standard system it became the u vector.
struct InstanceFile {
    std::variant<CanonicalSystem, StandardSystem, HypergraphInstance> payload;
    std::optional<std::vector<Int>> objective;
};

// Line-oriented text, '#' starts a comment.  Headers:
//   canonical m n        m coefficient rows, then `rhs r1 .. rm`
//   standard k n [with-mult]
//   hypergraph nv ne     ne edge lines of 1-based vertex indices
// Optional trailers: `mult`, `objective` (systems); `edgebounds lo hi` per
// edge, `vertexbounds lo hi` per vertex, `weights`, `mult` (hypergraphs),
// with inf / -inf as the absent-bound sentinels.
InstanceFile parse_instance(const std::string& text);

InstanceFile load_instance(const std::string& path);

// Normalized form: parse(write(x)) writes back byte-identically.
std::string write_instance(const InstanceFile& inst);

}  // namespace latcount
