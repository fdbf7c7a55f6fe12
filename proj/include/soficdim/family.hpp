#pragma once

#include "soficdim/bigmatrix.hpp"
#include "soficdim/digraph.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace soficdim {

// Restricted adjacency matrices A_s of a labeled digraph, one n x n matrix
// per key s (projection of labels to the first d-1 coordinates):
// (A_s)_{ij} = number of edges i -> j whose label projects to s.
struct AdjacencyFamily {
    AlphabetSpec alphabet;
    int n = 0;                       // vertex count
    std::vector<IntMatrix> by_key;   // size alphabet.key_count()

    const IntMatrix& matrix(int key) const {
        return by_key[static_cast<size_t>(key)];
    }
    std::vector<int> nonzero_keys() const;
    IntMatrix key_sum() const;       // sum over all keys

    bool operator==(const AdjacencyFamily& o) const = default;
};

AdjacencyFamily build_adjacency_family(const LabeledDigraph& g);

// Matrix text format: the same dim/m header, an 'n' line, then one
// 'matrix <key symbols>' block per nonzero key followed by n rows of n
// non-negative integers. Keys without a block are zero matrices.
AdjacencyFamily parse_matrix_family(std::istream& in);
AdjacencyFamily parse_matrix_family(const std::string& text);
std::string serialize_matrix_family(const AdjacencyFamily& fam);

// Reads either text format from a file, deciding by content: a 'vertices'
// line makes it a graph (which is then compiled), an 'n' line a matrix
// family. Throws ParseError on anything else.
struct LoadedFamily {
    AdjacencyFamily family;
    bool from_graph = false;
    LabeledDigraph graph;  // populated only when from_graph
};
LoadedFamily load_family_file(const std::string& path);

}  // namespace soficdim
