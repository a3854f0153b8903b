#pragma once

#include <cstdint>

#include "skelcut/graph.hpp"

namespace skelcut {

struct GenSpec {
    int nodes = 0;
    int edges = 0;
    uint64_t seed = 0;
};

/// Random connected planar graph with unit-square coordinates. Vertices are
/// laid out on a jittered ceil(sqrt(n))-column grid; the edge pool is the
/// grid lattice, one randomly oriented diagonal per complete cell, and a few
/// boundary chords, and random non-bridge edges are deleted until the
/// requested count remains. Planar and connected by construction.
Graph generate(const GenSpec& spec);

/// Density feature t = log|E| / log|V|.
double density_feature(const Graph& g);

}  // namespace skelcut
