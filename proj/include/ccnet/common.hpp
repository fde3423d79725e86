#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccnet {

using Vertex = int;
// Undirected edge, always stored with first() < second().
using Edge = std::pair<Vertex, Vertex>;
// Directed arc.
using Arc = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex u, Vertex v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file. Carries file name and line number in the message.
struct ParseError : Error {
    ParseError(const std::string& file, int line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what) {}
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Instance cannot be solved (disconnected safe set, unsatisfiable demand, ...).
struct InfeasibleError : Error {
    using Error::Error;
};

// A documented resource or budget limit was hit.
struct BudgetError : Error {
    using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

// Which objective a solver minimizes: total edge count, or maximum degree.
enum class Variant { Sum, Degree };

inline std::string variant_name(Variant v) { return v == Variant::Sum ? "sum" : "degree"; }

}  // namespace ccnet
