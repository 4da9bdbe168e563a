#ifndef LATGAL_TUPLE_IO_HPP
#define LATGAL_TUPLE_IO_HPP

#include <string>

#include "latgal/lattice.hpp"

// JSON reading and writing of lattice tuples:
//   { "n": 2, "name": "square pair", "sets": [ [[0,0],[1,0]], ... ] }
namespace latgal {

struct TupleParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedTuple {
    LatticeTuple tuple;
    std::string name;
    std::vector<std::string> warnings;  // e.g. duplicate points, which are dropped
};

LoadedTuple parse_tuple_json(const std::string& text);
LoadedTuple load_tuple_file(const std::string& path);
std::string serialize_tuple(const LatticeTuple& t, const std::string& name = "");

}  // namespace latgal

#endif
