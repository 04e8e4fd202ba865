#pragma once

#include "orbivfc/bundle.hpp"
#include "orbivfc/dgs.hpp"
#include "orbivfc/graph.hpp"
#include "orbivfc/multisection.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace orbivfc::io {

inline constexpr std::string_view kHeader = "#orbivfc v1";

/// Syntax, version or semantic error with a 1-based position.
struct ParseError : InvalidInput {
  ParseError(int line, int column, const std::string& message);
  int line;
  int column;
};

using Instance = std::variant<graph::LabeledDualGraph, SimplicialComplex, EquivariantBundle, Multisection, DGS>;

/// Parses any instance; the first keyword after the header selects the type.
Instance parse(std::string_view text);
Instance parse_file(const std::string& path);

graph::LabeledDualGraph parse_graph(std::string_view text);
SimplicialComplex parse_complex(std::string_view text);
EquivariantBundle parse_bundle(std::string_view text);
Multisection parse_multisection(std::string_view text);
DGS parse_dgs(std::string_view text);

std::string serialize(const graph::LabeledDualGraph& g);
std::string serialize(const SimplicialComplex& k);
std::string serialize(const EquivariantBundle& e);
std::string serialize(const Multisection& m);
std::string serialize(const DGS& d);

/// One-line description used in listings.
std::string summary(const graph::LabeledDualGraph& g);

std::string read_file(const std::string& path);

}  // namespace orbivfc::io
